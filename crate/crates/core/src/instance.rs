//! Instances (labeled paths/cycles with node identifiers) and labelings.

use crate::error::{Error, Result};
use crate::problem::LclProblem;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Path,
    Cycle,
}

/// A concrete network: nodes `0..n` arranged on a path or cycle, each with an
/// input label and a unique identifier. On cycles the successor of node `i`
/// is node `(i + 1) % n`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub topology: Topology,
    pub inputs: Vec<u16>,
    pub ids: Vec<u64>,
}

/// A full output assignment for an instance.
pub type Labeling = Vec<u16>;

impl Instance {
    pub fn n(&self) -> usize {
        self.inputs.len()
    }

    /// Validates shape and label ranges against a problem.
    pub fn validate(&self, problem: &LclProblem) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::validation("inputs: instance is empty"));
        }
        if self.ids.len() != n {
            return Err(Error::validation(format!(
                "ids: {} identifiers for {n} nodes",
                self.ids.len()
            )));
        }
        if self.topology == Topology::Cycle && n < 2 * problem.radius + 1 {
            return Err(Error::validation(format!(
                "inputs: cycle of {n} nodes is below the minimum 2r+1 = {}",
                2 * problem.radius + 1
            )));
        }
        for (i, &x) in self.inputs.iter().enumerate() {
            if x as usize >= problem.sigma_in.len() {
                return Err(Error::validation(format!("inputs[{i}]: label out of range")));
            }
        }
        let mut sorted = self.ids.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::validation(format!("ids: duplicate identifier {}", w[0])));
            }
        }
        if let Some(&0) = sorted.first() {
            return Err(Error::validation("ids: identifiers must be positive"));
        }
        Ok(())
    }

    /// The identifier space bound for this instance: ids are drawn from
    /// `[1, 4n]` by the generator and algorithms may assume this bound.
    pub fn id_bound(&self) -> u64 {
        self.ids.iter().copied().max().unwrap_or(1).max(4 * self.n() as u64)
    }

    /// Deterministic seeded instance generation: uniform inputs and distinct
    /// ids drawn from `[1, 4n]`.
    pub fn generate(problem: &LclProblem, topology: Topology, n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::precondition("cannot generate an empty instance"));
        }
        if topology == Topology::Cycle && n < 2 * problem.radius + 1 {
            return Err(Error::precondition(format!(
                "cycle of {n} nodes is below the minimum 2r+1 = {}",
                2 * problem.radius + 1
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inputs: Vec<u16> = (0..n)
            .map(|_| {
                use rand::Rng;
                rng.gen_range(0..problem.sigma_in.len() as u16)
            })
            .collect();
        let mut pool: Vec<u64> = (1..=4 * n as u64).collect();
        pool.shuffle(&mut rng);
        let ids = pool[..n].to_vec();
        Ok(Instance { topology, inputs, ids })
    }
}

// ---------------------------------------------------------------------------
// JSON codec
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    topology: Topology,
    inputs: Vec<String>,
    ids: Vec<u64>,
}

impl Instance {
    pub fn to_json(&self, problem: &LclProblem) -> String {
        let file = InstanceFile {
            topology: self.topology,
            inputs: self.inputs.iter().map(|&i| problem.sigma_in.name(i).to_string()).collect(),
            ids: self.ids.clone(),
        };
        serde_json::to_string_pretty(&file).expect("instance serialization cannot fail")
    }

    pub fn from_json(text: &str, problem: &LclProblem) -> Result<Self> {
        let file: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Codec(e.to_string()))?;
        let mut inputs = Vec::with_capacity(file.inputs.len());
        for (i, lab) in file.inputs.iter().enumerate() {
            inputs.push(problem.sigma_in.resolve(lab, &format!("inputs[{i}]"))?);
        }
        let inst = Instance { topology: file.topology, inputs, ids: file.ids };
        inst.validate(problem)?;
        Ok(inst)
    }
}

//! Reference verifiers: the ground truth every algorithm output is checked
//! against.

use crate::error::{Error, Result};
use crate::instance::{Instance, Topology};
use crate::problem::{LclProblem, NormalizedLcl};

/// Returns the indices of all inconsistent nodes (empty = legal labeling).
pub fn verify_labeling(
    problem: &LclProblem,
    instance: &Instance,
    outputs: &[u16],
) -> Result<Vec<usize>> {
    instance.validate(problem)?;
    let n = instance.n();
    if outputs.len() != n {
        return Err(Error::precondition(format!(
            "labeling has {} entries for {n} nodes",
            outputs.len()
        )));
    }
    for (i, &o) in outputs.iter().enumerate() {
        if o as usize >= problem.sigma_out.len() {
            return Err(Error::precondition(format!("outputs[{i}]: label out of range")));
        }
    }
    let mut bad = Vec::new();
    for i in 0..n {
        let ok = match instance.topology {
            Topology::Path => problem.consistent_on_path(&instance.inputs, outputs, i),
            Topology::Cycle => problem.consistent_on_cycle(&instance.inputs, outputs, i),
        };
        if !ok {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// Verifies a labeling of a directed path against a normalized problem:
/// node `i` is violating iff its (input, output) pair is not allowed, or
/// `i > 0` and the (output, predecessor-output) pair is not allowed.
pub fn verify_normalized(
    problem: &NormalizedLcl,
    inputs: &[u16],
    outputs: &[u16],
) -> Result<Vec<usize>> {
    problem.validate()?;
    if inputs.len() != outputs.len() {
        return Err(Error::precondition(format!(
            "{} inputs but {} outputs",
            inputs.len(),
            outputs.len()
        )));
    }
    let mut bad = Vec::new();
    for i in 0..inputs.len() {
        let mut ok = problem.c_in_out.contains(&(inputs[i], outputs[i]));
        if ok && i > 0 {
            ok = problem.c_out_out.contains(&(outputs[i], outputs[i - 1]));
        }
        if !ok {
            bad.push(i);
        }
    }
    Ok(bad)
}

//! Normalization transforms.
//!
//! Two reductions bring a predecessor-window LCL into binary-input normal
//! form while preserving its time complexity up to a constant factor:
//!
//! 1. [`normalize_stage1`] splits a verifier that reads both inputs and both
//!    outputs of an edge into two verifiers — one reading only a node's own
//!    (input, output) pair, one reading only the two outputs — by making every
//!    output carry a copy of the node's input.
//! 2. [`normalize_stage2`] re-encodes each node as a block of `gamma`
//!    binary-input nodes (a run of ones marking the block start, then the
//!    input bits, with zero delimiters) and lifts the two verifiers to the
//!    blocks.  Outputs carry the claimed window of the next `gamma` input
//!    bits, forced truthful by a shift rule, so block starts can locally
//!    decode the original input; non-encoding inputs may instead be labeled
//!    with a pointer chain `R.. R X L.. L` toward a node holding a local
//!    proof `X` that the encoding is broken.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::problem::{Alphabet, NormalizedLcl};

/// An LCL on directed paths whose verifier reads the inputs and outputs of a
/// node and of its predecessor.  Labels are dense indices; the first node of
/// the path (no predecessor) is unconstrained.
#[derive(Debug, Clone)]
pub struct PredecessorLcl {
    pub name: String,
    /// Number of input labels.
    pub alpha: usize,
    /// Number of output labels.
    pub beta: usize,
    /// Accepted windows `(pred_in, pred_out, in, out)`.
    pub allowed: HashSet<(u16, u16, u16, u16)>,
}

impl PredecessorLcl {
    pub fn validate(&self) -> Result<()> {
        if self.alpha == 0 || self.beta == 0 {
            return Err(Error::validation("empty alphabet"));
        }
        for &(pi, po, i, o) in &self.allowed {
            if pi as usize >= self.alpha
                || i as usize >= self.alpha
                || po as usize >= self.beta
                || o as usize >= self.beta
            {
                return Err(Error::validation("window label out of range"));
            }
        }
        Ok(())
    }

    /// Positions whose window is rejected.
    pub fn verify(&self, inputs: &[u16], outputs: &[u16]) -> Vec<usize> {
        (1..inputs.len())
            .filter(|&i| {
                !self
                    .allowed
                    .contains(&(inputs[i - 1], outputs[i - 1], inputs[i], outputs[i]))
            })
            .collect()
    }

    /// Finds any valid output sequence by a forward sweep over reachable
    /// output labels, or `None` if the instance is unsolvable.
    pub fn solve(&self, inputs: &[u16]) -> Option<Vec<u16>> {
        let n = inputs.len();
        if n == 0 {
            return Some(Vec::new());
        }
        let beta = self.beta as u16;
        // choice[i][o] = a predecessor output from which o is reachable.
        let mut choice: Vec<Vec<Option<u16>>> = vec![vec![None; self.beta]; n];
        let mut reach: Vec<bool> = (0..beta).map(|_| true).collect();
        for i in 1..n {
            let mut next = vec![false; self.beta];
            for o in 0..beta {
                for po in 0..beta {
                    if reach[po as usize]
                        && self.allowed.contains(&(inputs[i - 1], po, inputs[i], o))
                    {
                        next[o as usize] = true;
                        choice[i][o as usize] = Some(po);
                        break;
                    }
                }
            }
            reach = next;
        }
        let mut out = vec![0u16; n];
        out[n - 1] = (0..beta).find(|&o| reach[o as usize])?;
        for i in (1..n).rev() {
            out[i - 1] = choice[i][out[i] as usize]?;
        }
        Some(out)
    }
}

/// The split form produced by [`normalize_stage1`]: one per-node verifier and
/// one output-pair verifier.  Output labels are (input, output) pairs of the
/// source problem, indexed as `input * beta + output`.
#[derive(Debug, Clone)]
pub struct Stage1Lcl {
    pub name: String,
    pub alpha: usize,
    /// Number of output labels: `alpha * beta` of the source problem.
    pub beta: usize,
    /// Source output count (pair decomposition: `label = in * source_beta + out`).
    pub source_beta: usize,
    /// Accepted (input, output) pairs.
    pub in_out: HashSet<(u16, u16)>,
    /// Accepted (pred_output, output) pairs.
    pub out_out: HashSet<(u16, u16)>,
}

impl Stage1Lcl {
    pub fn verify(&self, inputs: &[u16], outputs: &[u16]) -> Vec<usize> {
        (0..inputs.len())
            .filter(|&i| {
                !self.in_out.contains(&(inputs[i], outputs[i]))
                    || (i > 0 && !self.out_out.contains(&(outputs[i - 1], outputs[i])))
            })
            .collect()
    }
}

/// Splits a predecessor-window verifier into an (input, output) check and an
/// (output, output) check by pairing every output with a copy of the node's
/// input.  The output alphabet grows from `beta` to `alpha * beta`.
pub fn normalize_stage1(p: &PredecessorLcl) -> Result<Stage1Lcl> {
    p.validate()?;
    let pair = |i: u16, o: u16| i * p.beta as u16 + o;
    let mut in_out = HashSet::new();
    for i in 0..p.alpha as u16 {
        for o in 0..p.beta as u16 {
            // The carried input component must match the real input.
            in_out.insert((i, pair(i, o)));
        }
    }
    let mut out_out = HashSet::new();
    for &(pi, po, i, o) in &p.allowed {
        // The pair verifier replays the source verifier on the carried pairs.
        out_out.insert((pair(pi, po), pair(i, o)));
    }
    Ok(Stage1Lcl {
        name: format!("{}-split", p.name),
        alpha: p.alpha,
        beta: p.alpha * p.beta,
        source_beta: p.beta,
        in_out,
        out_out,
    })
}

/// Solves the split problem: solve the source problem and pair each output
/// with the node's input.
pub fn solve_stage1(p: &PredecessorLcl, inputs: &[u16]) -> Option<Vec<u16>> {
    let out = p.solve(inputs)?;
    Some(
        inputs
            .iter()
            .zip(&out)
            .map(|(&i, &o)| i * p.beta as u16 + o)
            .collect(),
    )
}

/// Block geometry of the binary encoding for an `alpha`-symbol input
/// alphabet: `a = ceil(log2 alpha)` payload bits and `gamma = 2a + 3` cells
/// per source node.
pub fn block_geometry(alpha: usize) -> (usize, usize) {
    let a = usize::max(1, alpha.next_power_of_two().trailing_zeros() as usize);
    // ceil(log2(alpha)) with a minimum of one payload bit.
    let a = if alpha <= 2 { 1 } else { a };
    (a, 2 * a + 3)
}

/// Number of output labels of the stage-2 problem: every label carries a
/// claimed window of `gamma` bits and one of `beta + 3` verdicts.
pub fn stage2_output_count(alpha: usize, beta: usize) -> usize {
    let (_, gamma) = block_geometry(alpha);
    (1 << gamma) * (beta + 3)
}

/// The three non-simulation verdicts appended after the `beta` source
/// outputs.
const V_RIGHT: usize = 0; // points right toward a proof
const V_PROOF: usize = 1; // holds a local proof of a broken encoding
const V_LEFT: usize = 2; // points left toward a proof

/// Encodes one label index of the stage-2 problem.
pub fn stage2_label(alpha: usize, beta: usize, bits: &[u16], verdict: usize) -> u16 {
    let (_, gamma) = block_geometry(alpha);
    assert_eq!(bits.len(), gamma);
    assert!(verdict < beta + 3);
    let mut word = 0usize;
    for (j, &b) in bits.iter().enumerate() {
        word |= (b as usize & 1) << j;
    }
    (word * (beta + 3) + verdict) as u16
}

fn label_bits(alpha: usize, beta: usize, label: u16) -> (Vec<u16>, usize) {
    let (_, gamma) = block_geometry(alpha);
    let word = label as usize / (beta + 3);
    let verdict = label as usize % (beta + 3);
    let bits = (0..gamma).map(|j| ((word >> j) & 1) as u16).collect();
    (bits, verdict)
}

/// Encodes a source input string as binary blocks: `a + 1` ones, a zero,
/// the `a` input bits (most significant first), a zero.
pub fn encode_stage2_input(alpha: usize, inputs: &[u16]) -> Vec<u16> {
    let (a, gamma) = block_geometry(alpha);
    let mut out = Vec::with_capacity(inputs.len() * gamma);
    for &x in inputs {
        out.extend(std::iter::repeat_n(1u16, a + 1));
        out.push(0);
        out.extend((0..a).rev().map(|k| (x >> k) & 1));
        out.push(0);
    }
    out
}

fn decode_block(a: usize, bits: &[u16]) -> Option<u16> {
    let gamma = 2 * a + 3;
    if bits.len() < gamma {
        return None;
    }
    if bits[..=a].iter().any(|&b| b != 1) || bits[a + 1] != 0 || bits[gamma - 1] != 0 {
        return None;
    }
    let mut x = 0u16;
    for &b in &bits[a + 2..2 * a + 2] {
        x = (x << 1) | b;
    }
    Some(x)
}

/// Whether a claimed window locally proves that the input is not a block
/// encoding: either the window straddles two partial runs of ones that are
/// both too short to be a block start (no run of `a + 1` ones anywhere), or
/// it starts like a block whose mandatory zero slots are wrong.
fn proof_witness(a: usize, bits: &[u16]) -> bool {
    let gamma = 2 * a + 3;
    let misaligned = (0..=a).any(|x| {
        (0..=a - x).any(|y| {
            bits[..x].iter().all(|&b| b == 1)
                && bits[x] == 0
                && bits[gamma - 1 - y] == 0
                && bits[gamma - y..].iter().all(|&b| b == 1)
                && !bits.windows(a + 1).any(|w| w.iter().all(|&b| b == 1))
        })
    });
    let bad_block = bits[..=a].iter().all(|&b| b == 1)
        && (bits[a + 1] != 0 || bits[gamma - 1] != 0);
    misaligned || bad_block
}

/// Lifts a split problem to binary inputs.  Every output label carries the
/// claimed window of the next `gamma` input bits plus a verdict: a source
/// output (simulated at block starts, copied elsewhere) or one of the three
/// error pointers.
pub fn normalize_stage2(s1: &Stage1Lcl) -> Result<NormalizedLcl> {
    let alpha = s1.alpha;
    let beta = s1.beta;
    let (a, gamma) = block_geometry(alpha);
    let total = stage2_output_count(alpha, beta);
    if total > u16::MAX as usize {
        return Err(Error::precondition("stage-2 output alphabet too large"));
    }
    let sigma_in = Alphabet::new(&["0", "1"], "sigma_in")?;
    let out_names: Vec<String> = (0..total)
        .map(|l| {
            let (bits, verdict) = label_bits(alpha, beta, l as u16);
            let word: String = bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
            let v = if verdict < beta {
                format!("o{verdict}")
            } else {
                ["R", "X", "L"][verdict - beta].to_string()
            };
            format!("{word}/{v}")
        })
        .collect();
    let sigma_out = Alphabet::new(&out_names, "sigma_out")?;

    let mut c_in_out = HashSet::new();
    let mut c_out_out = HashSet::new();
    for l in 0..total as u16 {
        let (bits, verdict) = label_bits(alpha, beta, l);
        // Own-pair verifier: the first claimed bit is the node's input.
        let inp = bits[0];
        let ok = if verdict < beta {
            // At a block start the source per-node verifier must accept the
            // decoded input; elsewhere there is nothing to check.
            match decode_block(a, &bits) {
                Some(x) => s1.in_out.contains(&(x, verdict as u16)),
                None => {
                    if bits[..=a].iter().all(|&b| b == 1) {
                        false // claims a block start but the block is broken
                    } else {
                        true
                    }
                }
            }
        } else if verdict == beta + V_PROOF {
            proof_witness(a, &bits)
        } else {
            true // pointers carry no per-node condition
        };
        if ok {
            c_in_out.insert((inp, l));
        }

        // Pair verifier: shift-consistency plus the lifted source pair check.
        for lp in 0..total as u16 {
            let (pbits, pverdict) = label_bits(alpha, beta, lp);
            if (0..gamma - 1).any(|j| bits[j] != pbits[j + 1]) {
                continue;
            }
            let ok = if verdict < beta && pverdict < beta {
                if bits[..=a].iter().all(|&b| b == 1) {
                    // Block boundary: the source pair verifier decides.
                    s1.out_out.contains(&(pverdict as u16, verdict as u16))
                } else {
                    // Inside a block the verdict may not change.
                    verdict == pverdict
                }
            } else if verdict == beta + V_LEFT {
                // A left pointer continues a proof or another left pointer.
                pverdict == beta + V_PROOF || pverdict == beta + V_LEFT
            } else if verdict < beta {
                // Source outputs may not follow a right pointer.
                pverdict != beta + V_RIGHT
            } else {
                true
            };
            if ok {
                c_out_out.insert((l, lp));
            }
        }
    }
    let norm = NormalizedLcl {
        name: format!("{}-binary", s1.name),
        sigma_in,
        sigma_out,
        c_in_out,
        c_out_out,
    };
    norm.validate()?;
    Ok(norm)
}

/// Solves a stage-2 instance that is a valid block encoding: decode the
/// blocks, solve the split problem on the decoded string, and give every
/// node of block `i` the block's output together with its truthful window
/// (padded with zeros past the end of the path).
pub fn solve_stage2(s1: &Stage1Lcl, p: &PredecessorLcl, bits: &[u16]) -> Result<Vec<u16>> {
    let alpha = s1.alpha;
    let beta = s1.beta;
    let (a, gamma) = block_geometry(alpha);
    if bits.len() % gamma != 0 {
        return Err(Error::precondition("input length is not a whole number of blocks"));
    }
    let decoded: Vec<u16> = bits
        .chunks(gamma)
        .map(|blk| {
            decode_block(a, blk)
                .ok_or_else(|| Error::precondition("input is not a block encoding"))
        })
        .collect::<Result<Vec<_>>>()?;
    let outs = solve_stage1(p, &decoded)
        .ok_or_else(|| Error::precondition("decoded instance is unsolvable"))?;
    let window = |pos: usize| -> Vec<u16> {
        (pos..pos + gamma)
            .map(|q| bits.get(q).copied().unwrap_or(0))
            .collect()
    };
    Ok((0..bits.len())
        .map(|pos| stage2_label(alpha, beta, &window(pos), outs[pos / gamma] as usize))
        .collect())
}

/// Labels a broken encoding: node `at` carries the proof verdict, everyone
/// to its left points right, everyone to its right points left; all windows
/// are truthful.
pub fn stage2_error_labeling(
    s1: &Stage1Lcl,
    bits: &[u16],
    at: usize,
) -> Vec<u16> {
    let alpha = s1.alpha;
    let beta = s1.beta;
    let (_, gamma) = block_geometry(alpha);
    (0..bits.len())
        .map(|pos| {
            let window: Vec<u16> = (pos..pos + gamma)
                .map(|q| bits.get(q).copied().unwrap_or(0))
                .collect();
            let verdict = beta
                + if pos < at {
                    V_RIGHT
                } else if pos == at {
                    V_PROOF
                } else {
                    V_LEFT
                };
            stage2_label(alpha, beta, &window, verdict)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// JSON codec
// ---------------------------------------------------------------------------

#[derive(serde::Serialize, serde::Deserialize)]
struct PredecessorFile {
    name: String,
    alpha: usize,
    beta: usize,
    /// Accepted windows as (pred_in, pred_out, in, out) index quadruples.
    allowed: Vec<(u16, u16, u16, u16)>,
}

impl PredecessorLcl {
    pub fn to_json(&self) -> String {
        let mut allowed: Vec<_> = self.allowed.iter().copied().collect();
        allowed.sort_unstable();
        let file = PredecessorFile {
            name: self.name.clone(),
            alpha: self.alpha,
            beta: self.beta,
            allowed,
        };
        serde_json::to_string_pretty(&file).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PredecessorFile =
            serde_json::from_str(text).map_err(|e| crate::error::Error::Codec(e.to_string()))?;
        let p = PredecessorLcl {
            name: file.name,
            alpha: file.alpha,
            beta: file.beta,
            allowed: file.allowed.into_iter().collect(),
        };
        p.validate()?;
        Ok(p)
    }
}

//! Exact global solving: lexicographically-least completions of partially
//! labeled paths/cycles under per-node consistency constraints.
//!
//! The completion routines are the workhorse shared by the solver, the
//! extendibility tables, the feasibility checks, and the gap-filling steps of
//! the synthesized algorithms. They run a DFS over output choices with
//! memoized dead states, so the cost is `O(n * |Sigma_out|^(2r+1))` rather
//! than exponential.

use crate::error::{Error, Result};
use crate::instance::{Instance, Labeling, Topology};
use crate::problem::LclProblem;
use std::collections::HashSet;

/// Completes a **path**: fills every `None` position of `fixed` so that all
/// positions with `check[p] == true` are locally consistent. Returns the
/// lexicographically least completion (fixed cells included verbatim), or
/// `None` if no completion exists.
pub fn complete_path_lex(
    problem: &LclProblem,
    inputs: &[u16],
    fixed: &[Option<u16>],
    check: &[bool],
) -> Option<Vec<u16>> {
    let n = inputs.len();
    assert_eq!(fixed.len(), n);
    assert_eq!(check.len(), n);
    let mut ctx = Dfs::new(problem, inputs, fixed, check, Topology::Path);
    let mut out = vec![0u16; n];
    if ctx.assign(0, &mut out) {
        Some(out)
    } else {
        None
    }
}

/// Completes a **cycle** (`n >= 2r + 1`), same contract as
/// [`complete_path_lex`]. Consistency uses wrap-around windows.
pub fn complete_cycle_lex(
    problem: &LclProblem,
    inputs: &[u16],
    fixed: &[Option<u16>],
    check: &[bool],
) -> Option<Vec<u16>> {
    let n = inputs.len();
    assert_eq!(fixed.len(), n);
    assert_eq!(check.len(), n);
    assert!(n >= 2 * problem.radius + 1, "cycle below 2r+1 nodes");
    let prefix_len = (2 * problem.radius).min(n - 1);
    let mut out = vec![0u16; n];
    // The first 2r outputs participate in wrap-around windows, so the DFS
    // memo is only sound once they are pinned: enumerate them lexicographically
    // in an outer loop and run the memoized scan on the rest.
    fn outer(
        problem: &LclProblem,
        inputs: &[u16],
        fixed: &[Option<u16>],
        check: &[bool],
        prefix_len: usize,
        at: usize,
        out: &mut Vec<u16>,
    ) -> bool {
        if at == prefix_len {
            let mut ctx = Dfs::new(problem, inputs, fixed, check, Topology::Cycle);
            ctx.prefix_len = prefix_len;
            return ctx.assign(prefix_len, out);
        }
        let choices: Vec<u16> = match fixed[at] {
            Some(v) => vec![v],
            None => (0..problem.sigma_out.len() as u16).collect(),
        };
        for v in choices {
            out[at] = v;
            if outer(problem, inputs, fixed, check, prefix_len, at + 1, out) {
                return true;
            }
        }
        false
    }
    if outer(problem, inputs, fixed, check, prefix_len, 0, &mut out) {
        Some(out)
    } else {
        None
    }
}

struct Dfs<'a> {
    problem: &'a LclProblem,
    inputs: &'a [u16],
    fixed: &'a [Option<u16>],
    check: &'a [bool],
    topology: Topology,
    prefix_len: usize,
    dead: HashSet<(usize, u64)>,
}

impl<'a> Dfs<'a> {
    fn new(
        problem: &'a LclProblem,
        inputs: &'a [u16],
        fixed: &'a [Option<u16>],
        check: &'a [bool],
        topology: Topology,
    ) -> Self {
        Dfs { problem, inputs, fixed, check, topology, prefix_len: 0, dead: HashSet::new() }
    }

    fn state_key(&self, q: usize, out: &[u16]) -> (usize, u64) {
        let r2 = 2 * self.problem.radius;
        let lo = q.saturating_sub(r2).max(self.prefix_len);
        let mut key = 0u64;
        // Base n_out + 1 with offset digits so that states of different
        // lengths cannot collide.
        for &v in &out[lo..q] {
            key = key * (self.problem.sigma_out.len() as u64 + 1) + v as u64 + 1;
        }
        (q, key)
    }

    fn consistent(&self, out: &[u16], p: usize) -> bool {
        match self.topology {
            Topology::Path => self.problem.consistent_on_path(self.inputs, out, p),
            Topology::Cycle => self.problem.consistent_on_cycle(self.inputs, out, p),
        }
    }

    /// Positions whose window becomes fully assigned when position `q` is,
    /// given a left-to-right scan.
    fn checks_at(&self, q: usize) -> Vec<usize> {
        let n = self.inputs.len();
        let r = self.problem.radius;
        let mut ps = Vec::new();
        if q >= r && (self.topology == Topology::Cycle || q.saturating_sub(r) + r == q) {
            ps.push(q - r);
        }
        if q == n - 1 {
            match self.topology {
                Topology::Path => {
                    // Right-truncated windows complete only at the end.
                    for p in (n.saturating_sub(r))..n {
                        if !ps.contains(&p) {
                            ps.push(p);
                        }
                    }
                }
                Topology::Cycle => {
                    // Wrap-around windows complete only at the end.
                    for p in 0..r.min(n) {
                        ps.push(p);
                    }
                    for p in (n.saturating_sub(r))..n {
                        if !ps.contains(&p) {
                            ps.push(p);
                        }
                    }
                }
            }
        }
        ps.retain(|&p| self.check[p]);
        ps
    }

    /// Iterative DFS (an explicit stack keeps deep instances off the call
    /// stack). Each frame records the next output value to try at its
    /// position.
    fn assign(&mut self, start: usize, out: &mut Vec<u16>) -> bool {
        let n = self.inputs.len();
        let n_out = self.problem.sigma_out.len() as u16;
        if start == n {
            return true;
        }
        let mut next_try: Vec<u16> = vec![0; n + 1 - start];
        let mut q = start;
        loop {
            if q == n {
                return true;
            }
            let depth = q - start;
            if next_try[depth] == 0 {
                let key = self.state_key(q, out);
                if self.dead.contains(&key) {
                    if q == start {
                        return false;
                    }
                    next_try[depth] = n_out; // force backtrack
                }
            }
            let mut advanced = false;
            'next: while next_try[depth] < n_out {
                let v = match self.fixed[q] {
                    Some(f) => {
                        if next_try[depth] > 0 {
                            break;
                        }
                        next_try[depth] = n_out;
                        f
                    }
                    None => {
                        let v = next_try[depth];
                        next_try[depth] += 1;
                        v
                    }
                };
                out[q] = v;
                for p in self.checks_at(q) {
                    if !self.consistent(out, p) {
                        continue 'next;
                    }
                }
                advanced = true;
                break;
            }
            if advanced {
                q += 1;
                next_try[q - start] = 0;
            } else {
                let key = self.state_key(q, out);
                self.dead.insert(key);
                if q == start {
                    return false;
                }
                q -= 1;
            }
        }
    }
}

/// Returns the lexicographically least legal labeling of the instance, or
/// `None` when the instance is unsolvable.
pub fn solve_instance(problem: &LclProblem, instance: &Instance) -> Result<Option<Labeling>> {
    instance.validate(problem)?;
    let n = instance.n();
    let fixed = vec![None; n];
    let check = vec![true; n];
    Ok(match instance.topology {
        Topology::Path => complete_path_lex(problem, &instance.inputs, &fixed, &check),
        Topology::Cycle => complete_cycle_lex(problem, &instance.inputs, &fixed, &check),
    })
}

/// An unsolvable instance found by the exhaustive small-size sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsolvableInstance {
    pub topology: Topology,
    pub n: usize,
    pub inputs: Vec<u16>,
}

/// Enumerates every input assignment on paths of size `1..=max_n` and cycles
/// of size `2r+1..=max_n` and reports the unsolvable ones in deterministic
/// order. Intended for small `max_n`; errors out if the sweep would exceed
/// ~10^6 instances.
pub fn check_solvable_up_to(problem: &LclProblem, max_n: usize) -> Result<Vec<UnsolvableInstance>> {
    let mut total: u64 = 0;
    for n in 1..=max_n {
        total = total
            .saturating_add((problem.sigma_in.len() as u64).saturating_pow(n as u32))
            .saturating_mul(2);
        if total > 2_000_000 {
            return Err(Error::precondition(format!(
                "solvability sweep up to n={max_n} exceeds the instance budget"
            )));
        }
    }
    let mut report = Vec::new();
    for topology in [Topology::Path, Topology::Cycle] {
        let min_n = match topology {
            Topology::Path => 1,
            Topology::Cycle => 2 * problem.radius + 1,
        };
        for n in min_n..=max_n {
            let mut inputs = vec![0u16; n];
            loop {
                let instance = Instance {
                    topology,
                    inputs: inputs.clone(),
                    ids: (1..=n as u64).collect(),
                };
                if solve_instance(problem, &instance)?.is_none() {
                    report.push(UnsolvableInstance { topology, n, inputs: inputs.clone() });
                }
                // Odometer step over Sigma_in^n.
                let mut k = n;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    if (inputs[k] as usize) + 1 < problem.sigma_in.len() {
                        inputs[k] += 1;
                        for x in &mut inputs[k + 1..] {
                            *x = 0;
                        }
                        break;
                    }
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
        }
    }
    Ok(report)
}

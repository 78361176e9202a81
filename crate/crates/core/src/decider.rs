//! The three-way classifier: constant / iterated-log / global.
//!
//! Both searches look for a finite certificate:
//!
//! * A **periodic labeling function** `f` assigns an output string to every
//!   input string of length up to `ell_pump + 1`. It certifies constant-round
//!   solvability: long periodic stretches get labeled `f(w)`-periodically and
//!   everything between is patched by bounded completions.
//! * An **anchor labeling function** `g` assigns outputs to every `2r`-cell
//!   anchor given the `ell_pump`/`ell_pump+1`-cell blocks on both sides. It
//!   certifies `O(log* n)` solvability: a ruling decomposition places anchors,
//!   `g` labels them, and the blocks in between are completed independently.
//!
//! Absence of an anchor function implies a global (`Theta(n)`) lower bound;
//! absence of a periodic function (given an anchor function) pins the
//! complexity at `Theta(log* n)`. Searches are exhaustive over the finite
//! certificate space, with explicit budgets so that oversized problems report
//! `Exhausted` instead of running forever.

use crate::error::{Error, Result};
use crate::problem::LclProblem;
use crate::solve::{check_solvable_up_to, complete_path_lex, UnsolvableInstance};
use crate::types::TypeAutomaton;
use std::collections::BTreeMap;

/// Budgets for the certificate searches.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Max number of strings in the domain of the periodic labeling function.
    pub max_const_domain: usize,
    /// Max number of distinct block strings for the anchor function search.
    pub max_logstar_words: usize,
    /// Max number of completion checks across a search.
    pub max_checks: u64,
    /// Exhaustive solvability sweep bound (paths and cycles up to this size).
    pub solvable_max_n: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_const_domain: 4096,
            max_logstar_words: 8,
            max_checks: 5_000_000,
            solvable_max_n: 6,
        }
    }
}

/// Result of one certificate search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Infeasible,
    /// The search space or check budget exceeded the configured limits.
    Exhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Certificate for constant-round solvability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstCertificate {
    /// Domain bound: all input strings of length `1..=dmax`.
    pub dmax: usize,
    /// `f(w)`: the periodic output pattern for runs of `w`.
    pub f: BTreeMap<Vec<u16>, Vec<u16>>,
}

/// Certificate for `O(log* n)` solvability. Keys are `(w1, s, w2)` where
/// `s` is the `2r`-cell anchor input and `w1`/`w2` are the adjacent block
/// inputs (lengths `ell` or `ell + 1`); values are the anchor outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogstarCertificate {
    pub ell: usize,
    pub g: BTreeMap<(Vec<u16>, Vec<u16>, Vec<u16>), Vec<u16>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Constant,
    Logstar,
    Global,
    Unknown,
}

/// Full classification report.
#[derive(Debug, Clone)]
pub struct Classification {
    pub class: Class,
    pub ell_pump: usize,
    pub const_outcome: SearchOutcome<ConstCertificate>,
    pub logstar_outcome: Option<SearchOutcome<LogstarCertificate>>,
    /// Small unsolvable instances, if any (classification is about asymptotic
    /// complexity on solvable instances; these are reported as a caveat).
    pub unsolvable: Vec<UnsolvableInstance>,
}

struct Checker<'a> {
    problem: &'a LclProblem,
    budget: u64,
}

impl<'a> Checker<'a> {
    fn spend(&mut self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::Budget("check budget exhausted".into()));
        }
        self.budget -= 1;
        Ok(())
    }

    /// Whether a string with the given `fixed` cells admits a completion that
    /// is consistent exactly at the positions marked in `mask`.
    fn fill_ok(&mut self, inputs: &[u16], fixed: &[Option<u16>], mask: &[bool]) -> Result<bool> {
        self.spend()?;
        Ok(complete_path_lex(self.problem, inputs, fixed, mask).is_some())
    }
}

fn rev(w: &[u16]) -> Vec<u16> {
    let mut v = w.to_vec();
    v.reverse();
    v
}

fn repeat(w: &[u16], times: usize) -> Vec<u16> {
    let mut v = Vec::with_capacity(w.len() * times);
    for _ in 0..times {
        v.extend_from_slice(w);
    }
    v
}

/// All strings over `0..n_in` of length `1..=dmax`, ordered by length then
/// lexicographically.
fn domain_strings(n_in: u16, dmax: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..dmax {
        let mut next = Vec::new();
        for w in &level {
            for a in 0..n_in {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

fn strings_of_length(n_in: u16, len: usize) -> Vec<Vec<u16>> {
    let mut level: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &level {
            for a in 0..n_in {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        level = next;
    }
    level
}

/// Whether `w` is primitive (not a proper power).
pub fn is_primitive(w: &[u16]) -> bool {
    let q = w.len();
    for p in 1..q {
        if q % p == 0 && (0..q).all(|i| w[i] == w[i % p]) {
            return false;
        }
    }
    true
}

/// Lexicographically least rotation of `w`.
pub fn min_rotation(w: &[u16]) -> Vec<u16> {
    let q = w.len();
    let mut best = w.to_vec();
    for s in 1..q {
        let cand: Vec<u16> = (0..q).map(|i| w[(s + i) % q]).collect();
        if cand < best {
            best = cand;
        }
    }
    best
}

/// Offsets `o` such that reading `u` backwards from position `o` spells `u`
/// again, i.e. `u[(o - i) mod q] == u[i]` for all `i`. Nonempty exactly when
/// the reversal of `u` is one of its rotations.
fn reversal_offsets(u: &[u16]) -> Vec<usize> {
    let q = u.len();
    (0..q)
        .filter(|&o| (0..q).all(|i| u[(o + q - i % q) % q] == u[i]))
        .collect()
}

/// Condition on `f(w)` so that labeling a `w`-periodic stretch by repeating
/// `f(u)` at the pattern-aligned phase is well-defined even when the stretch
/// reads as `u`-periodic in both directions.
fn alignment_ok(u: &[u16], fu: &[u16]) -> bool {
    let q = u.len();
    reversal_offsets(u)
        .into_iter()
        .all(|o| (0..q).all(|c| fu[c] == fu[(o + q - c % q) % q]))
}

/// Periodic self-consistency: `w^(2r+1)` labeled `f(w)^(2r+1)` must be
/// consistent at every cell of the middle copy.
fn cond_periodic(problem: &LclProblem, w: &[u16], fw: &[u16]) -> bool {
    let r = problem.radius;
    let inputs = repeat(w, 2 * r + 1);
    let outputs = repeat(fw, 2 * r + 1);
    (r * w.len()..(r + 1) * w.len()).all(|p| problem.consistent_on_path(&inputs, &outputs, p))
}

/// Junction condition: two pinned periodic wings with an arbitrary-typed
/// separator in between must admit a completion consistent everywhere except
/// the outermost `r` copies of each wing.
fn cond_junction(
    ck: &mut Checker,
    dmax: usize,
    w1: &[u16],
    f1: &[u16],
    w2: &[u16],
    f2: &[u16],
    sep: &[u16],
) -> Result<bool> {
    let r = ck.problem.radius;
    let wing = dmax + 2 * r;
    let mut inputs = repeat(w1, wing);
    inputs.extend_from_slice(sep);
    inputs.extend(repeat(w2, wing));
    let len = inputs.len();
    let mut fixed: Vec<Option<u16>> = vec![None; len];
    let pin1 = repeat(f1, 2 * r);
    let pin2 = repeat(f2, 2 * r);
    for (i, &v) in pin1.iter().enumerate() {
        fixed[i] = Some(v);
    }
    for (i, &v) in pin2.iter().enumerate() {
        fixed[len - pin2.len() + i] = Some(v);
    }
    let mut mask = vec![false; len];
    for p in r * w1.len()..len - r * w2.len() {
        mask[p] = true;
    }
    ck.fill_ok(&inputs, &fixed, &mask)
}

/// Path-end condition: an arbitrary-typed prefix (suffix) followed by a
/// pinned periodic wing must admit a completion consistent everywhere up to
/// the innermost `r` copies of the wing, including the truncated windows at
/// the physical path end.
fn cond_path_end(
    ck: &mut Checker,
    dmax: usize,
    w: &[u16],
    fw: &[u16],
    sep: &[u16],
    left_end: bool,
) -> Result<bool> {
    let r = ck.problem.radius;
    let wing = dmax + 2 * r;
    let pin = repeat(fw, 2 * r);
    let (inputs, fixed, mask): (Vec<u16>, Vec<Option<u16>>, Vec<bool>) = if left_end {
        let mut inputs = sep.to_vec();
        inputs.extend(repeat(w, wing));
        let len = inputs.len();
        let mut fixed = vec![None; len];
        for (i, &v) in pin.iter().enumerate() {
            fixed[len - pin.len() + i] = Some(v);
        }
        let mut mask = vec![false; len];
        for p in 0..len - r * w.len() {
            mask[p] = true;
        }
        (inputs, fixed, mask)
    } else {
        let mut inputs = repeat(w, wing);
        inputs.extend_from_slice(sep);
        let len = inputs.len();
        let mut fixed = vec![None; len];
        for (i, &v) in pin.iter().enumerate() {
            fixed[i] = Some(v);
        }
        let mut mask = vec![false; len];
        for p in r * w.len()..len {
            mask[p] = true;
        }
        (inputs, fixed, mask)
    };
    ck.fill_ok(&inputs, &fixed, &mask)
}

/// Search for a periodic labeling function by backtracking over the domain.
pub fn find_const_certificate(
    problem: &LclProblem,
    automaton: &TypeAutomaton,
    limits: &SearchLimits,
) -> Result<SearchOutcome<ConstCertificate>> {
    let n_in = problem.sigma_in.len() as u16;
    let dmax = automaton.ell_pump + 1;
    // Domain size guard before materializing anything.
    let mut size: usize = 0;
    for k in 1..=dmax {
        match (n_in as usize).checked_pow(k as u32) {
            Some(c) if size + c <= limits.max_const_domain => size += c,
            _ => return Ok(SearchOutcome::Exhausted),
        }
    }
    let domain = domain_strings(n_in, dmax);
    let mut seps: Vec<Vec<u16>> = vec![vec![]];
    seps.extend(automaton.states.iter().map(|s| s.rep.clone()));

    let mut ck = Checker { problem, budget: limits.max_checks };
    let n_out = problem.sigma_out.len() as u16;
    let mut f: BTreeMap<Vec<u16>, Vec<u16>> = BTreeMap::new();

    fn backtrack(
        i: usize,
        domain: &[Vec<u16>],
        seps: &[Vec<u16>],
        dmax: usize,
        n_out: u16,
        ck: &mut Checker,
        f: &mut BTreeMap<Vec<u16>, Vec<u16>>,
    ) -> Result<bool> {
        if i == domain.len() {
            return Ok(true);
        }
        let w = &domain[i];
        let undirected = !ck.problem.oriented;
        // If the reversed string is already assigned, the value is forced.
        let forced: Option<Vec<u16>> =
            if undirected { f.get(&rev(w)).map(|v| rev(v)) } else { None };
        let candidates: Vec<Vec<u16>> = match forced {
            Some(v) => vec![v],
            None => strings_of_length(n_out, w.len()),
        };
        'cand: for fw in candidates {
            if !cond_periodic(ck.problem, w, &fw) {
                continue;
            }
            if undirected
                && is_primitive(w)
                && *w == min_rotation(w)
                && !alignment_ok(w, &fw)
            {
                continue;
            }
            // Junction checks against everything assigned so far (and w with
            // itself), in both orders, across one separator per type.
            f.insert(w.clone(), fw.clone());
            for (w2, f2) in f.iter() {
                for sep in seps {
                    if !cond_junction(ck, dmax, w, &fw, w2, f2, sep)?
                        || !cond_junction(ck, dmax, w2, f2, w, &fw, sep)?
                    {
                        f.remove(w);
                        continue 'cand;
                    }
                }
            }
            for sep in seps {
                if !cond_path_end(ck, dmax, w, &fw, sep, true)?
                    || !cond_path_end(ck, dmax, w, &fw, sep, false)?
                {
                    f.remove(w);
                    continue 'cand;
                }
            }
            if backtrack(i + 1, domain, seps, dmax, n_out, ck, f)? {
                return Ok(true);
            }
            f.remove(w);
        }
        Ok(false)
    }

    match backtrack(0, &domain, &seps, dmax, n_out, &mut ck, &mut f) {
        Ok(true) => Ok(SearchOutcome::Found(ConstCertificate { dmax, f })),
        Ok(false) => Ok(SearchOutcome::Infeasible),
        Err(Error::Budget(_)) => Ok(SearchOutcome::Exhausted),
        Err(e) => Err(e),
    }
}

/// The four ways an adjacent pair of anchors can be oriented. The anchor
/// value used for `(w1, s, w2)` read forward is `g(w1, s, w2)`; read
/// backward it is the reversal of `g(rev w2, rev s, rev w1)`.
fn oriented_value(
    g: &BTreeMap<(Vec<u16>, Vec<u16>, Vec<u16>), Vec<u16>>,
    w1: &[u16],
    s: &[u16],
    w2: &[u16],
    forward: bool,
) -> Option<Vec<u16>> {
    if forward {
        g.get(&(w1.to_vec(), s.to_vec(), w2.to_vec())).cloned()
    } else {
        g.get(&(rev(w2), rev(s), rev(w1))).map(|v| rev(v))
    }
}

/// One anchor-pair condition: anchors labeled, blocks in between completable.
#[allow(clippy::too_many_arguments)]
fn cond_anchor_pair(
    ck: &mut Checker,
    s1: &[u16],
    v1: &[u16],
    wb: &[u16],
    wc: &[u16],
    s2: &[u16],
    v2: &[u16],
) -> Result<bool> {
    let r = ck.problem.radius;
    let mut inputs = s1.to_vec();
    inputs.extend_from_slice(wb);
    inputs.extend_from_slice(wc);
    inputs.extend_from_slice(s2);
    let len = inputs.len();
    let mut fixed: Vec<Option<u16>> = vec![None; len];
    for (i, &v) in v1.iter().enumerate() {
        fixed[i] = Some(v);
    }
    for (i, &v) in v2.iter().enumerate() {
        fixed[len - v2.len() + i] = Some(v);
    }
    let mut mask = vec![false; len];
    for p in r..len - r {
        mask[p] = true;
    }
    ck.fill_ok(&inputs, &fixed, &mask)
}

/// Path-end condition for anchors: the stretch from the physical path end
/// through the first anchor must be completable with the anchor pinned.
fn cond_anchor_end(
    ck: &mut Checker,
    sep: &[u16],
    w: &[u16],
    s: &[u16],
    v: &[u16],
    left_end: bool,
) -> Result<bool> {
    let r = ck.problem.radius;
    let (inputs, pin_at): (Vec<u16>, usize) = if left_end {
        let mut inputs = sep.to_vec();
        inputs.extend_from_slice(w);
        let at = inputs.len();
        inputs.extend_from_slice(s);
        (inputs, at)
    } else {
        let mut inputs = s.to_vec();
        inputs.extend_from_slice(w);
        inputs.extend_from_slice(sep);
        (inputs, 0)
    };
    let len = inputs.len();
    let mut fixed: Vec<Option<u16>> = vec![None; len];
    for (i, &val) in v.iter().enumerate() {
        fixed[pin_at + i] = Some(val);
    }
    let mut mask = vec![false; len];
    if left_end {
        for p in 0..pin_at + r {
            mask[p] = true;
        }
    } else {
        for p in r..len {
            mask[p] = true;
        }
    }
    ck.fill_ok(&inputs, &fixed, &mask)
}

/// Search for an anchor labeling function by backtracking over the keys.
pub fn find_logstar_certificate(
    problem: &LclProblem,
    automaton: &TypeAutomaton,
    limits: &SearchLimits,
) -> Result<SearchOutcome<LogstarCertificate>> {
    let n_in = problem.sigma_in.len() as u16;
    let ell = automaton.ell_pump;
    let word_count = (n_in as usize)
        .checked_pow(ell as u32)
        .and_then(|c| c.checked_mul(1 + n_in as usize));
    match word_count {
        Some(c) if c <= limits.max_logstar_words => {}
        _ => return Ok(SearchOutcome::Exhausted),
    }
    let mut words = strings_of_length(n_in, ell);
    words.extend(strings_of_length(n_in, ell + 1));
    let anchors = strings_of_length(n_in, 2 * problem.radius);

    let mut keys: Vec<(Vec<u16>, Vec<u16>, Vec<u16>)> = Vec::new();
    for w1 in &words {
        for s in &anchors {
            for w2 in &words {
                keys.push((w1.clone(), s.clone(), w2.clone()));
            }
        }
    }
    let value_space = strings_of_length(problem.sigma_out.len() as u16, 2 * problem.radius);
    let mut seps: Vec<Vec<u16>> = vec![vec![]];
    seps.extend(automaton.states.iter().map(|s| s.rep.clone()));
    let mut ck = Checker { problem, budget: limits.max_checks };
    let mut g: BTreeMap<(Vec<u16>, Vec<u16>, Vec<u16>), Vec<u16>> = BTreeMap::new();

    // Check every anchor-pair condition in which all referenced keys are
    // already assigned, and every end condition for assigned keys.
    #[allow(clippy::too_many_arguments)]
    fn consistent_so_far(
        ck: &mut Checker,
        words: &[Vec<u16>],
        anchors: &[Vec<u16>],
        seps: &[Vec<u16>],
        g: &BTreeMap<(Vec<u16>, Vec<u16>, Vec<u16>), Vec<u16>>,
    ) -> Result<bool> {
        let orientations: &[bool] = if ck.problem.oriented { &[true] } else { &[true, false] };
        for wa in words {
            for s1 in anchors {
                for wb in words {
                    for o1 in orientations {
                        let v1 = match oriented_value(g, wa, s1, wb, *o1) {
                            Some(v) => v,
                            None => continue,
                        };
                        for wc in words {
                            for s2 in anchors {
                                for wd in words {
                                    for o2 in orientations {
                                        let v2 = match oriented_value(g, wc, s2, wd, *o2) {
                                            Some(v) => v,
                                            None => continue,
                                        };
                                        if !cond_anchor_pair(ck, s1, &v1, wb, wc, s2, &v2)? {
                                            return Ok(false);
                                        }
                                    }
                                }
                            }
                        }
                        // End conditions: the same anchor can also sit next
                        // to a path end on either side.
                        for sep in seps {
                            if !cond_anchor_end(ck, sep, wa, s1, &v1, true)?
                                || !cond_anchor_end(ck, sep, wb, s1, &v1, false)?
                            {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        i: usize,
        keys: &[(Vec<u16>, Vec<u16>, Vec<u16>)],
        value_space: &[Vec<u16>],
        words: &[Vec<u16>],
        anchors: &[Vec<u16>],
        seps: &[Vec<u16>],
        ck: &mut Checker,
        g: &mut BTreeMap<(Vec<u16>, Vec<u16>, Vec<u16>), Vec<u16>>,
    ) -> Result<bool> {
        if i == keys.len() {
            return Ok(true);
        }
        for v in value_space {
            g.insert(keys[i].clone(), v.clone());
            if consistent_so_far(ck, words, anchors, seps, g)?
                && backtrack(i + 1, keys, value_space, words, anchors, seps, ck, g)?
            {
                return Ok(true);
            }
            g.remove(&keys[i]);
        }
        Ok(false)
    }

    match backtrack(0, &keys, &value_space, &words, &anchors, &seps, &mut ck, &mut g) {
        Ok(true) => Ok(SearchOutcome::Found(LogstarCertificate { ell, g })),
        Ok(false) => Ok(SearchOutcome::Infeasible),
        Err(Error::Budget(_)) => Ok(SearchOutcome::Exhausted),
        Err(e) => Err(e),
    }
}

/// Classify the problem. The decision logic: a periodic labeling function
/// certifies constant; otherwise an anchor function certifies `Theta(log* n)`
/// (constant was refuted); absence of an anchor function is a global lower
/// bound. Budget exhaustion yields `Unknown`.
pub fn classify(problem: &LclProblem, limits: &SearchLimits) -> Result<Classification> {
    let automaton = TypeAutomaton::build(problem)?;
    let unsolvable = match check_solvable_up_to(problem, limits.solvable_max_n) {
        Ok(list) => list,
        Err(Error::Precondition(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    let const_outcome = find_const_certificate(problem, &automaton, limits)?;
    if let SearchOutcome::Found(_) = const_outcome {
        return Ok(Classification {
            class: Class::Constant,
            ell_pump: automaton.ell_pump,
            const_outcome,
            logstar_outcome: None,
            unsolvable,
        });
    }
    let logstar_outcome = find_logstar_certificate(problem, &automaton, limits)?;
    let class = match (&const_outcome, &logstar_outcome) {
        (SearchOutcome::Infeasible, SearchOutcome::Found(_)) => Class::Logstar,
        (_, SearchOutcome::Infeasible) => Class::Global,
        _ => Class::Unknown,
    };
    Ok(Classification {
        class,
        ell_pump: automaton.ell_pump,
        const_outcome,
        logstar_outcome: Some(logstar_outcome),
        unsolvable,
    })
}

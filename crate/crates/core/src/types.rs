//! Segment-type machinery for labeled paths.
//!
//! Two input strings are *interchangeable* as internal segments of a longer
//! path when they admit exactly the same boundary-output completions. The
//! [`TypeSignature`] captures this: short strings (length below `4r`) are
//! their own type, longer strings are summarized by their boundary inputs
//! plus an extendibility table over all boundary-output assignments.
//!
//! The [`TypeAutomaton`] is the canonical DFA over input symbols whose states
//! are the reachable type signatures. Its state count bounds how quickly
//! types stabilize under extension and drives both pumping operations and the
//! constant/iterated-log classification machinery.

use crate::error::{Error, Result};
use crate::problem::LclProblem;
use std::collections::{HashMap, HashSet, VecDeque};

/// Largest extendibility table we are willing to materialize
/// (`|Sigma_out|^(4r)` entries).
const MAX_TABLE: usize = 1 << 22;

/// Hard cap on automaton states, to keep exploration of adversarial
/// problems from running away.
const MAX_STATES: usize = 200_000;

/// Index partition of a length-`k` string relative to radius `r`:
/// `d1` is the outermost `r` cells on each side, `d2` the next `r` cells on
/// each side, `d3` everything else. For short strings where the regions
/// would overlap, the outer region wins, then `d2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tripartition {
    pub d1: Vec<usize>,
    pub d2: Vec<usize>,
    pub d3: Vec<usize>,
}

impl Tripartition {
    pub fn new(k: usize, r: usize) -> Tripartition {
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        let mut d3 = Vec::new();
        for i in 0..k {
            let from_left = i;
            let from_right = k - 1 - i;
            let d = from_left.min(from_right);
            if d < r {
                d1.push(i);
            } else if d < 2 * r {
                d2.push(i);
            } else {
                d3.push(i);
            }
        }
        Tripartition { d1, d2, d3 }
    }
}

/// Type signature of an input string. `Short` carries the string verbatim;
/// `Long` carries the first and last `2r` input symbols plus a bit per
/// boundary-output assignment recording whether the interior can be
/// completed consistently.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TypeSignature {
    Short(Vec<u16>),
    Long {
        /// First `2r` then last `2r` input symbols.
        boundary_in: Vec<u16>,
        /// Indexed by the mixed-radix encoding of (first `2r` outputs,
        /// last `2r` outputs), most significant digit first, base
        /// `|Sigma_out|`.
        table: Vec<bool>,
    },
}

/// Complete outputs on `inputs` so that every *full* window centered at
/// positions `[r, k-r)` is consistent, honoring `fixed` cells. Windows
/// centered closer to the ends are deliberately not checked: the string is
/// treated as an internal segment of a longer path. Returns the
/// lexicographically least completion, or `None`.
pub fn complete_internal(
    problem: &LclProblem,
    inputs: &[u16],
    fixed: &[Option<u16>],
) -> Option<Vec<u16>> {
    assert_eq!(inputs.len(), fixed.len());
    let k = inputs.len();
    let r = problem.radius;
    let n_out = problem.sigma_out.len() as u16;
    let mut out = vec![0u16; k];
    let mut dead: HashSet<(usize, u64)> = HashSet::new();

    // Consistency of the full window centered at p, available once
    // positions 0..=p+r are assigned.
    let window_ok = |out: &[u16], p: usize| -> bool {
        let cells: Vec<(u16, u16)> = (p - r..=p + r).map(|i| (inputs[i], out[i])).collect();
        problem.check_window(&crate::problem::Window { cells, center: r })
    };

    fn state_key(out: &[u16], q: usize, r: usize, n_out: u16) -> (usize, u64) {
        let lo = q.saturating_sub(2 * r);
        let mut key = 0u64;
        for &v in &out[lo..q] {
            key = key * (n_out as u64 + 1) + v as u64 + 1;
        }
        (q, key)
    }

    fn rec(
        q: usize,
        k: usize,
        r: usize,
        n_out: u16,
        problem: &LclProblem,
        inputs: &[u16],
        fixed: &[Option<u16>],
        out: &mut Vec<u16>,
        dead: &mut HashSet<(usize, u64)>,
        window_ok: &dyn Fn(&[u16], usize) -> bool,
    ) -> bool {
        if q == k {
            return true;
        }
        let key = state_key(out, q, r, n_out);
        if dead.contains(&key) {
            return false;
        }
        let choices: Vec<u16> = match fixed[q] {
            Some(v) => vec![v],
            None => (0..n_out).collect(),
        };
        for v in choices {
            out[q] = v;
            // Once q is placed, the window centered at q - r is complete.
            let ok = if q >= r && q >= 2 * r && q - r < k.saturating_sub(r) {
                window_ok(out, q - r)
            } else if q >= 2 * r && q - r >= k.saturating_sub(r) {
                true
            } else if q >= r && q < 2 * r {
                // Center q - r < r: end window, not checked here.
                true
            } else {
                true
            };
            // Windows whose right edge is q but center is in range: only the
            // one centered q - r; for q == k - 1 also centers in
            // (k-1-r, k-r) -- empty. So the single check above suffices.
            if ok
                && rec(
                    q + 1,
                    k,
                    r,
                    n_out,
                    problem,
                    inputs,
                    fixed,
                    out,
                    dead,
                    window_ok,
                )
            {
                return true;
            }
        }
        dead.insert(key);
        false
    }

    if rec(
        0, k, r, n_out, problem, inputs, fixed, &mut out, &mut dead, &window_ok,
    ) {
        Some(out)
    } else {
        None
    }
}

/// Whether `inputs` admits an interior completion when its boundary outputs
/// are pinned to `boundary_out` (first `min(2r, k)` cells, then the last
/// `2r` cells; overlapping pins must agree).
pub fn extendible(problem: &LclProblem, inputs: &[u16], boundary_out: &[u16]) -> bool {
    let k = inputs.len();
    let r = problem.radius;
    let head = (2 * r).min(k);
    let tail = (2 * r).min(k);
    assert_eq!(boundary_out.len(), head + tail);
    let mut fixed: Vec<Option<u16>> = vec![None; k];
    for i in 0..head {
        fixed[i] = Some(boundary_out[i]);
    }
    for j in 0..tail {
        let pos = k - tail + j;
        let v = boundary_out[head + j];
        match fixed[pos] {
            Some(existing) if existing != v => return false,
            _ => fixed[pos] = Some(v),
        }
    }
    complete_internal(problem, inputs, &fixed).is_some()
}

/// Compute the type signature of `inputs`.
pub fn type_of(problem: &LclProblem, inputs: &[u16]) -> Result<TypeSignature> {
    let r = problem.radius;
    let k = inputs.len();
    if k < 4 * r {
        return Ok(TypeSignature::Short(inputs.to_vec()));
    }
    let n_out = problem.sigma_out.len();
    let table_size = n_out
        .checked_pow(4 * r as u32)
        .filter(|&s| s <= MAX_TABLE)
        .ok_or_else(|| {
            Error::precondition(format!(
                "extendibility table |Sigma_out|^(4r) = {}^{} exceeds limit",
                n_out,
                4 * r
            ))
        })?;
    let mut boundary_in = Vec::with_capacity(4 * r);
    boundary_in.extend_from_slice(&inputs[..2 * r]);
    boundary_in.extend_from_slice(&inputs[k - 2 * r..]);
    let mut table = vec![false; table_size];
    let mut boundary_out = vec![0u16; 4 * r];
    for (idx, slot) in table.iter_mut().enumerate() {
        // Decode mixed-radix index, most significant digit first.
        let mut rem = idx;
        for d in (0..4 * r).rev() {
            boundary_out[d] = (rem % n_out) as u16;
            rem /= n_out;
        }
        *slot = extendible(problem, inputs, &boundary_out);
    }
    Ok(TypeSignature::Long { boundary_in, table })
}

/// One automaton state: a canonical representative string and its signature.
#[derive(Debug, Clone)]
pub struct TypeState {
    pub rep: Vec<u16>,
    pub sig: TypeSignature,
}

/// DFA over input symbols whose states are reachable type signatures.
/// Transitions append one symbol on the right. Built by breadth-first search
/// from the single-symbol strings, so every representative has minimal
/// length (at most the state count).
#[derive(Debug, Clone)]
pub struct TypeAutomaton {
    pub problem: LclProblem,
    pub states: Vec<TypeState>,
    sig_index: HashMap<TypeSignature, usize>,
    /// `start[a]` = state of the single-symbol string `a`.
    pub start: Vec<usize>,
    /// `transitions[s][a]` = state of `rep(s) . a`.
    pub transitions: Vec<Vec<usize>>,
    /// For undirected problems: state of the reversed representative.
    pub reversal: Option<Vec<usize>>,
    /// State count; the pumping threshold derives from it.
    pub ell_pump: usize,
}

impl TypeAutomaton {
    pub fn build(problem: &LclProblem) -> Result<TypeAutomaton> {
        let n_in = problem.sigma_in.len() as u16;
        let mut states: Vec<TypeState> = Vec::new();
        let mut sig_index: HashMap<TypeSignature, usize> = HashMap::new();
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut queue: VecDeque<usize> = VecDeque::new();

        let intern = |w: Vec<u16>,
                          states: &mut Vec<TypeState>,
                          sig_index: &mut HashMap<TypeSignature, usize>,
                          queue: &mut VecDeque<usize>|
         -> Result<usize> {
            let sig = type_of(problem, &w)?;
            if let Some(&s) = sig_index.get(&sig) {
                return Ok(s);
            }
            if states.len() >= MAX_STATES {
                return Err(Error::Budget(format!(
                    "type automaton exceeded {} states",
                    MAX_STATES
                )));
            }
            let s = states.len();
            sig_index.insert(sig.clone(), s);
            states.push(TypeState { rep: w, sig });
            queue.push_back(s);
            Ok(s)
        };

        let mut start = Vec::with_capacity(n_in as usize);
        for a in 0..n_in {
            start.push(intern(vec![a], &mut states, &mut sig_index, &mut queue)?);
        }
        while let Some(s) = queue.pop_front() {
            let mut row = Vec::with_capacity(n_in as usize);
            for a in 0..n_in {
                let mut w = states[s].rep.clone();
                w.push(a);
                let t = intern(w, &mut states, &mut sig_index, &mut queue)?;
                row.push(t);
            }
            debug_assert_eq!(transitions.len(), s);
            transitions.push(row);
        }

        let ell_pump = states.len();
        let mut automaton = TypeAutomaton {
            problem: problem.clone(),
            states,
            sig_index,
            start,
            transitions,
            reversal: None,
            ell_pump,
        };
        if !problem.oriented {
            let mut rev = Vec::with_capacity(automaton.states.len());
            for s in 0..automaton.states.len() {
                let mut w = automaton.states[s].rep.clone();
                w.reverse();
                rev.push(automaton.state_of(&w));
            }
            automaton.reversal = Some(rev);
        }
        Ok(automaton)
    }

    /// State reached by running `w` through the automaton. `w` must be
    /// nonempty.
    pub fn state_of(&self, w: &[u16]) -> usize {
        assert!(!w.is_empty());
        let mut s = self.start[w[0] as usize];
        for &a in &w[1..] {
            s = self.transitions[s][a as usize];
        }
        s
    }

    /// Index of a known signature, if present.
    pub fn index_of(&self, sig: &TypeSignature) -> Option<usize> {
        self.sig_index.get(sig).copied()
    }

    /// States reachable by strings of exactly `len` symbols, with one
    /// representative of that exact length each, in first-seen order.
    pub fn reps_of_length(&self, len: usize) -> Vec<(usize, Vec<u16>)> {
        assert!(len >= 1);
        let n_in = self.problem.sigma_in.len();
        let mut cur: Vec<(usize, Vec<u16>)> = (0..n_in)
            .map(|a| (self.start[a], vec![a as u16]))
            .collect();
        // Single symbols of equal type collapse to one state.
        let mut seen: HashSet<usize> = HashSet::new();
        cur.retain(|(s, _)| seen.insert(*s));
        for _ in 1..len {
            let mut next: Vec<(usize, Vec<u16>)> = Vec::new();
            let mut seen: HashSet<usize> = HashSet::new();
            for (s, w) in &cur {
                for a in 0..n_in {
                    let t = self.transitions[*s][a];
                    if seen.insert(t) {
                        let mut w2 = w.clone();
                        w2.push(a as u16);
                        next.push((t, w2));
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// Extend `w` to length at least `target` without changing its type, by
    /// repeating the segment between the first repeated prefix state.
    /// Fails when no prefix state repeats (possible up to length equal to
    /// the state count).
    pub fn pump_to_length(&self, w: &[u16], target: usize) -> Result<Vec<u16>> {
        if w.is_empty() {
            return Err(Error::precondition("cannot pump the empty string"));
        }
        if w.len() >= target {
            return Ok(w.to_vec());
        }
        // prefix_state[i] = state of w[..=i]
        let mut prefix_state = Vec::with_capacity(w.len());
        let mut s = self.start[w[0] as usize];
        prefix_state.push(s);
        for &a in &w[1..] {
            s = self.transitions[s][a as usize];
            prefix_state.push(s);
        }
        let mut first_seen: HashMap<usize, usize> = HashMap::new();
        let mut repeat: Option<(usize, usize)> = None;
        for (i, &st) in prefix_state.iter().enumerate() {
            if let Some(&j) = first_seen.get(&st) {
                repeat = Some((j, i));
                break;
            }
            first_seen.insert(st, i);
        }
        let (j, i) = repeat.ok_or_else(|| {
            Error::precondition(format!(
                "no repeated prefix state in a string of length {}; \
                 strings of length at least {} always have one",
                w.len(),
                self.ell_pump + 1
            ))
        })?;
        let period = &w[j + 1..=i];
        let mut out = Vec::with_capacity(target + period.len());
        out.extend_from_slice(&w[..=i]);
        let deficit = target - w.len();
        let copies = deficit.div_ceil(period.len());
        for _ in 0..copies {
            out.extend_from_slice(period);
        }
        out.extend_from_slice(&w[i + 1..]);
        debug_assert_eq!(self.state_of(&out), self.state_of(w));
        Ok(out)
    }

    /// Split `w = x . y . z` (with `y` nonempty) so that `x . y^m . z` has
    /// the same type as `w` for every `m >= 1`, using the first repeated
    /// prefix state. Fails when no prefix state repeats, which cannot happen
    /// for strings of length at least `ell_pump + 1`.
    pub fn pump_decompose(&self, w: &[u16]) -> Result<(Vec<u16>, Vec<u16>, Vec<u16>)> {
        if w.is_empty() {
            return Err(Error::precondition("cannot pump the empty string"));
        }
        let mut prefix_state = Vec::with_capacity(w.len());
        let mut s = self.start[w[0] as usize];
        prefix_state.push(s);
        for &a in &w[1..] {
            s = self.transitions[s][a as usize];
            prefix_state.push(s);
        }
        let mut first_seen: HashMap<usize, usize> = HashMap::new();
        let mut repeat: Option<(usize, usize)> = None;
        for (i, &st) in prefix_state.iter().enumerate() {
            if let Some(&j) = first_seen.get(&st) {
                repeat = Some((j, i));
                break;
            }
            first_seen.insert(st, i);
        }
        let (j, i) = repeat.ok_or_else(|| {
            Error::precondition(format!(
                "no repeated prefix state in a string of length {}; \
                 strings of length at least {} always have one",
                w.len(),
                self.ell_pump + 1
            ))
        })?;
        Ok((w[..=j].to_vec(), w[j + 1..=i].to_vec(), w[i + 1..].to_vec()))
    }

    /// Smallest `(m1, m2)` with `m1 < m2` such that `w^(m1)` and `w^(m2)`
    /// have the same type; then all `w^(m1 + c(m2-m1))` share it.
    pub fn periodic_pump_params(&self, w: &[u16]) -> Result<(usize, usize)> {
        if w.is_empty() {
            return Err(Error::precondition("empty period"));
        }
        let mut first_seen: HashMap<usize, usize> = HashMap::new();
        let mut s = self.state_of(w);
        let mut m = 1usize;
        loop {
            if let Some(&m1) = first_seen.get(&s) {
                return Ok((m1, m));
            }
            first_seen.insert(s, m);
            for &a in w {
                s = self.transitions[s][a as usize];
            }
            m += 1;
            if m > self.ell_pump + 2 {
                return Err(Error::internal(
                    "power types failed to repeat within the state-count bound",
                ));
            }
        }
    }
}

/// Given two input strings of equal type and a consistent output labeling
/// of `new`, produce outputs for `old` that keep the same boundary outputs
/// (first and last `2r` cells) and satisfy all full windows centered at
/// least `r` from either end. Substituting `old` back in place of `new`
/// inside a larger labeled path then stays consistent everywhere.
pub fn relabel_after_replace(
    problem: &LclProblem,
    old: &[u16],
    new: &[u16],
    new_outputs: &[u16],
) -> Result<Vec<u16>> {
    let r = problem.radius;
    assert_eq!(new.len(), new_outputs.len());
    let t_old = type_of(problem, old)?;
    let t_new = type_of(problem, new)?;
    if t_old != t_new {
        return Err(Error::precondition(
            "replacement strings have different types",
        ));
    }
    match t_old {
        TypeSignature::Short(_) => {
            // Equal short strings: outputs carry over verbatim.
            Ok(new_outputs.to_vec())
        }
        TypeSignature::Long { .. } => {
            let k = old.len();
            let m = new.len();
            let mut fixed: Vec<Option<u16>> = vec![None; k];
            for i in 0..2 * r {
                fixed[i] = Some(new_outputs[i]);
                fixed[k - 2 * r + i] = Some(new_outputs[m - 2 * r + i]);
            }
            complete_internal(problem, old, &fixed).ok_or_else(|| {
                Error::internal(
                    "equal types promised an interior completion that does not exist",
                )
            })
        }
    }
}

//! LOCAL-model simulation and algorithm synthesis.
//!
//! A [`ViewAlgorithm`] is a distributed algorithm presented in a centralized
//! form: `run` computes all outputs at once, and `radius` declares how far
//! each node's output may depend on the instance. The declared radius is a
//! function of the instance's size parameters only (`n`, identifier bound),
//! never of its contents, and [`locality_fuzz`] empirically checks the claim
//! by re-randomizing everything outside a node's ball.
//!
//! Synthesis turns a classifier certificate into an algorithm of matching
//! round complexity:
//!
//! * [`synth_const`]: constant radius. Long periodic stretches of the input
//!   are labeled by repeating the certificate pattern `f`; aperiodic leftovers
//!   are chopped into bounded pieces, each piece is pumped to contain a long
//!   periodic stretch whose middle gets pinned, and the bounded gaps between
//!   pinned zones are filled by exact completion.
//! * [`synth_logstar`]: `O(log* n)` radius. A ruling set (iterated
//!   color-reduction plus maximal-independent-set steps, doubling the spacing
//!   per level) places anchors with controlled spacing; anchors are labeled by
//!   the certificate `g` and the blocks between them are filled by exact
//!   completion.
//! * [`global_algorithm`]: radius `n`, exact global solving, for problems with
//!   a global lower bound.

use crate::decider::{Class, Classification, ConstCertificate, LogstarCertificate, min_rotation};
use crate::error::{Error, Result};
use crate::instance::{Instance, Labeling, Topology};
use crate::problem::LclProblem;
use crate::solve::{complete_path_lex, solve_instance};
use crate::types::{relabel_after_replace, TypeAutomaton};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// A distributed algorithm in centralized form.
pub struct ViewAlgorithm {
    pub name: String,
    radius_fn: Box<dyn Fn(&Instance) -> usize + Send + Sync>,
    run_fn: Box<dyn Fn(&Instance) -> Result<Labeling> + Send + Sync>,
}

impl ViewAlgorithm {
    /// Declared locality radius for this instance (data-independent: depends
    /// only on `n` and the identifier bound).
    pub fn radius(&self, instance: &Instance) -> usize {
        (self.radius_fn)(instance)
    }

    pub fn run(&self, instance: &Instance) -> Result<Labeling> {
        (self.run_fn)(instance)
    }
}

impl std::fmt::Debug for ViewAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ViewAlgorithm({})", self.name)
    }
}

/// Outcome of one simulated execution.
#[derive(Debug, Clone)]
pub struct SimReport {
    pub outputs: Labeling,
    pub radius: usize,
    /// Positions whose window constraint is violated (empty on success).
    pub violations: Vec<usize>,
}

/// Runs the algorithm and verifies its output against the problem.
pub fn simulate(
    problem: &LclProblem,
    algorithm: &ViewAlgorithm,
    instance: &Instance,
) -> Result<SimReport> {
    instance.validate(problem)?;
    let outputs = algorithm.run(instance)?;
    let violations = crate::verify::verify_labeling(problem, instance, &outputs)?;
    Ok(SimReport {
        radius: algorithm.radius(instance),
        outputs,
        violations,
    })
}

/// Distance between positions on the instance topology.
fn dist(topology: Topology, n: usize, a: usize, b: usize) -> usize {
    let d = a.abs_diff(b);
    match topology {
        Topology::Path => d,
        Topology::Cycle => d.min(n - d),
    }
}

/// Empirical check of the declared radius: everything outside the ball of the
/// declared radius around `node` is re-randomized (inputs and identifiers),
/// and the node's output must not change. Returns `false` on a locality
/// violation.
pub fn locality_fuzz(
    problem: &LclProblem,
    algorithm: &ViewAlgorithm,
    instance: &Instance,
    node: usize,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    let n = instance.n();
    let radius = algorithm.radius(instance);
    let baseline = algorithm.run(instance)?[node];
    let outside: Vec<usize> = (0..n)
        .filter(|&i| dist(instance.topology, n, node, i) > radius)
        .collect();
    if outside.is_empty() {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_in = problem.sigma_in.len() as u16;
    let id_bound = instance.id_bound();
    for _ in 0..trials {
        let mut other = instance.clone();
        let mut used: HashSet<u64> = (0..n)
            .filter(|i| !outside.contains(i))
            .map(|i| instance.ids[i])
            .collect();
        for &i in &outside {
            other.inputs[i] = rng.gen_range(0..n_in);
            loop {
                let id = rng.gen_range(0..id_bound);
                if used.insert(id) {
                    other.ids[i] = id;
                    break;
                }
            }
        }
        if algorithm.run(&other)?[node] != baseline {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact global algorithm: radius `n`, lexicographically-least solution.
pub fn global_algorithm(problem: &LclProblem) -> ViewAlgorithm {
    let p = problem.clone();
    ViewAlgorithm {
        name: format!("{}/global", problem.name),
        radius_fn: Box::new(|inst| inst.n()),
        run_fn: Box::new(move |inst| {
            solve_instance(&p, inst)?
                .ok_or_else(|| Error::precondition("instance admits no consistent labeling"))
        }),
    }
}

/// Synthesizes the asymptotically optimal algorithm for a classified problem.
pub fn synthesize(problem: &LclProblem, classification: &Classification) -> Result<ViewAlgorithm> {
    match classification.class {
        Class::Constant => {
            let cert = classification
                .const_outcome
                .found()
                .ok_or_else(|| Error::internal("constant class without certificate"))?;
            synth_const(problem, cert)
        }
        Class::Logstar => {
            let cert = classification
                .logstar_outcome
                .as_ref()
                .and_then(|o| o.found())
                .ok_or_else(|| Error::internal("logstar class without certificate"))?;
            synth_logstar(problem, cert)
        }
        Class::Global => Ok(global_algorithm(problem)),
        Class::Unknown => Err(Error::precondition(
            "cannot synthesize for an unresolved classification",
        )),
    }
}

// ---------------------------------------------------------------------------
// Constant-round synthesis
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
struct ConstParams {
    /// Pattern-length bound: the certificate covers all strings up to this.
    l: usize,
    /// Margin trimmed from each end of a periodic run, in period copies.
    lw: usize,
    /// Copy count pumped into each aperiodic piece.
    lc: usize,
    radius: usize,
    n0: usize,
}

fn const_params(problem: &LclProblem, cert: &ConstCertificate) -> ConstParams {
    let r = problem.radius;
    let l = cert.dmax;
    let lw = l;
    let lc = 2 * l + 2 * r;
    let radius = if r == 0 {
        0
    } else {
        // Generous data-independent bound on how far any decision reaches:
        // run detection, margins, piece chopping, pumping, and gap filling
        // all happen within this many cells.
        (lc + 2 * lw + 4) * l + 4 * (lc + 4) * l + 64
    };
    ConstParams { l, lw, lc, radius, n0: 2 * radius + 16 }
}

/// Builds the constant-radius algorithm from a periodic labeling certificate.
pub fn synth_const(problem: &LclProblem, cert: &ConstCertificate) -> Result<ViewAlgorithm> {
    let automaton = TypeAutomaton::build(problem)?;
    let params = const_params(problem, cert);
    let p = problem.clone();
    let c = cert.clone();
    Ok(ViewAlgorithm {
        name: format!("{}/const", problem.name),
        radius_fn: Box::new(move |_inst| {
            if problem_radius_zero(&params) {
                0
            } else {
                // Declared radius is a constant: below n0 the run falls back
                // to an exact solve, and 2*(radius + 8) + 1 >= n0 guarantees
                // the ball covers the whole graph there.
                params.radius + 8
            }
        }),
        run_fn: Box::new(move |inst| const_run(&p, &automaton, &c, &params, inst)),
    })
}

fn problem_radius_zero(params: &ConstParams) -> bool {
    params.radius == 0
}

/// A maximal periodic run claimed during extraction.
#[derive(Debug, Clone)]
struct Run {
    start: usize,
    len: usize,
    period: usize,
}

/// A pinned stretch of already-labeled cells, used as completion context.
#[derive(Debug, Clone)]
struct Zone {
    start: usize,
    len: usize,
    /// Cell count of one period copy of the zone's pattern.
    period: usize,
}

fn circ(i: usize, n: usize) -> usize {
    i % n
}

fn circ_word(inputs: &[u16], start: usize, len: usize) -> Vec<u16> {
    let n = inputs.len();
    (0..len).map(|j| inputs[circ(start + j, n)]).collect()
}

/// Maximal stretches of `true` in `mark`; circular when `is_cycle`. Returns
/// `(start, len)` pairs with `len < mark.len()`, or a single full stretch.
fn true_stretches(mark: &[bool], is_cycle: bool) -> Vec<(usize, usize)> {
    let n = mark.len();
    if mark.iter().all(|&m| m) {
        return vec![(0, n)];
    }
    let mut out = Vec::new();
    if is_cycle {
        // Start scanning just past some false position so stretches never
        // straddle the scan origin.
        let origin = mark.iter().position(|&m| !m).unwrap() + 1;
        let mut i = 0;
        while i < n {
            if mark[circ(origin + i, n)] {
                let s = i;
                while i < n && mark[circ(origin + i, n)] {
                    i += 1;
                }
                out.push((circ(origin + s, n), i - s));
            } else {
                i += 1;
            }
        }
    } else {
        let mut i = 0;
        while i < n {
            if mark[i] {
                let s = i;
                while i < n && mark[i] {
                    i += 1;
                }
                out.push((s, i - s));
            } else {
                i += 1;
            }
        }
    }
    out
}

fn const_run(
    problem: &LclProblem,
    automaton: &TypeAutomaton,
    cert: &ConstCertificate,
    params: &ConstParams,
    inst: &Instance,
) -> Result<Labeling> {
    let n = inst.n();
    let r = problem.radius;
    let inputs = &inst.inputs;

    // Radius-0 problems: every cell picks the certified single-cell value.
    if r == 0 {
        let mut out = Vec::with_capacity(n);
        for &a in inputs {
            let fw = cert
                .f
                .get(&vec![a])
                .ok_or_else(|| Error::internal("certificate misses a single-cell pattern"))?;
            out.push(fw[0]);
        }
        return Ok(out);
    }
    if n < params.n0 {
        return solve_instance(problem, inst)?
            .ok_or_else(|| Error::precondition("instance admits no consistent labeling"));
    }
    let is_cycle = inst.topology == Topology::Cycle;
    let (l, lw, lc) = (params.l, params.lw, params.lc);

    // -- Step 1: extract maximal periodic runs, shortest period first.
    let mut claimed = vec![false; n];
    let mut runs: Vec<Run> = Vec::new();
    for p in 1..=l {
        let threshold = (lc + 2 * lw) * p;
        let mark: Vec<bool> = (0..n)
            .map(|i| {
                if is_cycle {
                    inputs[i] == inputs[circ(i + p, n)]
                } else {
                    i + p < n && inputs[i] == inputs[i + p]
                }
            })
            .collect();
        if is_cycle && mark.iter().all(|&m| m) {
            // Fully periodic cycle: handled wholesale below.
            if runs.is_empty() && !claimed.iter().any(|&c| c) {
                return label_full_cycle(cert, inputs, p);
            }
            continue;
        }
        for (ms, mlen) in true_stretches(&mark, is_cycle) {
            let total = (mlen + p).min(n);
            // Split the periodic interval by already-claimed cells.
            let mut j = 0;
            while j < total {
                let cell = circ(ms + j, n);
                if claimed[cell] {
                    j += 1;
                    continue;
                }
                let cs = j;
                while j < total && !claimed[circ(ms + j, n)] {
                    j += 1;
                }
                let clen = j - cs;
                if clen < threshold {
                    continue;
                }
                let word = circ_word(inputs, ms + cs, p);
                if !crate::decider::is_primitive(&word) {
                    continue;
                }
                for t in 0..clen {
                    claimed[circ(ms + cs + t, n)] = true;
                }
                runs.push(Run { start: circ(ms + cs, n), len: clen, period: p });
            }
        }
    }

    if runs.is_empty() && is_cycle {
        // An aperiodic cycle has no intrinsic starting point for the
        // deterministic chop below; fall back to exact solving.
        return solve_instance(problem, inst)?
            .ok_or_else(|| Error::precondition("instance admits no consistent labeling"));
    }

    // -- Step 2: label the middle of every run with the pattern for the
    // lexicographically-least rotation of its period word, aligned to where
    // that rotation occurs in the input.
    let mut out: Vec<Option<u16>> = vec![None; n];
    let mut zones: Vec<Zone> = Vec::new();
    for run in &runs {
        let p = run.period;
        let ustar = min_rotation(&circ_word(inputs, run.start, p));
        let fu = cert
            .f
            .get(&ustar)
            .ok_or_else(|| Error::internal("certificate misses a run pattern"))?;
        let matches_at = |off: usize| -> bool {
            off + p <= run.len
                && (0..p).all(|j| inputs[circ(run.start + off + j, n)] == ustar[j])
        };
        let zs = (lw * p..run.len)
            .find(|&off| matches_at(off))
            .ok_or_else(|| Error::internal("period rotation not found inside its run"))?;
        let mut ze = zs;
        while ze + p <= run.len - lw * p {
            ze += p;
        }
        debug_assert!(ze - zs >= (2 * r + 1) * p, "zone shorter than its pins");
        for off in zs..ze {
            out[circ(run.start + off, n)] = Some(fu[(off - zs) % p]);
        }
        zones.push(Zone { start: circ(run.start + zs, n), len: ze - zs, period: p });
    }

    // -- Step 3: fill the gaps between zones (or path ends).
    if zones.is_empty() {
        // Aperiodic path: one gap covering everything.
        fill_gap(problem, automaton, cert, params, inst, &mut out, None, None, 0, n)?;
    } else {
        zones.sort_by_key(|z| z.start);
        if is_cycle {
            for i in 0..zones.len() {
                let a = &zones[i];
                let b = &zones[(i + 1) % zones.len()];
                let gs = circ(a.start + a.len, n);
                let glen = (b.start + n - gs) % n;
                if glen == 0 && zones.len() == 1 {
                    continue; // zone covers the whole cycle
                }
                fill_gap(problem, automaton, cert, params, inst, &mut out, Some(a), Some(b), gs, glen)?;
            }
        } else {
            let first = &zones[0];
            fill_gap(problem, automaton, cert, params, inst, &mut out, None, Some(first), 0, first.start)?;
            for i in 0..zones.len() - 1 {
                let a = &zones[i];
                let b = &zones[i + 1];
                let gs = a.start + a.len;
                fill_gap(problem, automaton, cert, params, inst, &mut out, Some(a), Some(b), gs, b.start - gs)?;
            }
            let last = &zones[zones.len() - 1];
            let gs = last.start + last.len;
            fill_gap(problem, automaton, cert, params, inst, &mut out, Some(last), None, gs, n - gs)?;
        }
    }

    out.into_iter()
        .map(|o| o.ok_or_else(|| Error::internal("synthesis left a cell unlabeled")))
        .collect()
}

fn label_full_cycle(
    cert: &ConstCertificate,
    inputs: &[u16],
    p: usize,
) -> Result<Labeling> {
    let n = inputs.len();
    let word = inputs[..p].to_vec();
    if !crate::decider::is_primitive(&word) {
        return Err(Error::internal("full-cycle period word is not primitive"));
    }
    let ustar = min_rotation(&word);
    let fu = cert
        .f
        .get(&ustar)
        .ok_or_else(|| Error::internal("certificate misses the cycle pattern"))?;
    debug_assert_eq!(n % p, 0);
    let s0 = (0..n)
        .find(|&i| (0..p).all(|j| inputs[circ(i + j, n)] == ustar[j]))
        .ok_or_else(|| Error::internal("period rotation not found on the cycle"))?;
    Ok((0..n).map(|c| fu[(c + n - s0 % n) % p]).collect())
}

/// Fills one gap between two pinned zones (either may be a path end instead).
/// Long aperiodic stretches inside the gap are chopped into pieces of size
/// `[l, 2l]`; each piece is pumped so it contains a long repetition whose
/// middle is pinned with the certificate pattern, the pinned-to-pinned
/// sub-gaps are completed exactly, and the pumped pieces are mapped back to
/// their originals by a type-preserving relabeling.
#[allow(clippy::too_many_arguments)]
fn fill_gap(
    problem: &LclProblem,
    automaton: &TypeAutomaton,
    cert: &ConstCertificate,
    params: &ConstParams,
    inst: &Instance,
    out: &mut [Option<u16>],
    left: Option<&Zone>,
    right: Option<&Zone>,
    gap_start: usize,
    gap_len: usize,
) -> Result<()> {
    let n = inst.n();
    let r = problem.radius;
    let inputs = &inst.inputs;
    let l = params.l;

    // Virtual cell sequence: real cell index, or a pumped-in cell.
    #[derive(Clone, Copy)]
    enum VCell {
        Real(usize),
        Pumped(u16),
    }
    let mut cells: Vec<VCell> = Vec::new();
    let mut vfixed: Vec<Option<u16>> = Vec::new();
    // Pinned segments as (virtual start, virtual len, mask margin cells).
    let mut pins: Vec<(usize, usize, usize)> = Vec::new();
    // Pumped pieces: (virtual start, virtual len, real start, real len).
    let mut pieces: Vec<(usize, usize, usize, usize)> = Vec::new();

    if let Some(z) = left {
        let pin_cells = 2 * r * z.period;
        let from = z.start + z.len - pin_cells; // offsets within zone, no wrap issues via circ
        for j in 0..pin_cells {
            let cell = circ(from + j, n);
            cells.push(VCell::Real(cell));
            vfixed.push(Some(out[cell].expect("zone cell labeled")));
        }
        pins.push((0, pin_cells, r * z.period));
    }

    for j in 0..gap_len {
        if out[circ(gap_start + j, n)].is_some() {
            return Err(Error::internal("gap overlaps a labeled zone"));
        }
    }
    // The gap is margin + (possibly long aperiodic) stretch + margin, where
    // the margins are bounded periodic continuations of the adjacent zones.
    // Keep a conservative margin untouched on each side and chop the middle
    // into pieces of size [l, 2l] whenever it is long enough to need it.
    let keep = 2 * (params.lw + 1) * l;
    let push_real = |cells: &mut Vec<VCell>, vfixed: &mut Vec<Option<u16>>, from: usize, len: usize| {
        for t in 0..len {
            cells.push(VCell::Real(circ(gap_start + from + t, n)));
            vfixed.push(None);
        }
    };
    if gap_len > 2 * keep + 2 * l {
        let stretch_start = keep;
        let stretch_len = gap_len - 2 * keep;
        let m = stretch_len.div_ceil(2 * l);
        let base = stretch_len / m;
        let rem = stretch_len % m;
        debug_assert!(base >= l && base + 1 <= 2 * l + 1);
        let mut off = stretch_start;
        push_real(&mut cells, &mut vfixed, 0, stretch_start);
        for i in 0..m {
            let plen = if i < rem { base + 1 } else { base };
            let real_start = circ(gap_start + off, n);
            let word = circ_word(inputs, gap_start + off, plen);
            let (x, y, z) = automaton.pump_decompose(&word)?;
            let fy = cert
                .f
                .get(&y)
                .ok_or_else(|| Error::internal("certificate misses a pump pattern"))?;
            let copies = 2 * l + 2 * r;
            let vstart = cells.len();
            let mut pumped: Vec<u16> = Vec::new();
            pumped.extend_from_slice(&x);
            for _ in 0..copies {
                pumped.extend_from_slice(&y);
            }
            pumped.extend_from_slice(&z);
            for (t, &a) in pumped.iter().enumerate() {
                cells.push(VCell::Pumped(a));
                // Pin the middle 2r copies of y with the pattern.
                let lo = x.len() + l * y.len();
                let hi = lo + 2 * r * y.len();
                vfixed.push(if t >= lo && t < hi {
                    Some(fy[(t - lo) % y.len()])
                } else {
                    None
                });
            }
            pins.push((vstart + x.len() + l * y.len(), 2 * r * y.len(), r * y.len()));
            pieces.push((vstart, pumped.len(), real_start, plen));
            off += plen;
        }
        push_real(&mut cells, &mut vfixed, off, gap_len - off);
    } else {
        push_real(&mut cells, &mut vfixed, 0, gap_len);
    }

    if let Some(z) = right {
        let pin_cells = 2 * r * z.period;
        let vstart = cells.len();
        for k in 0..pin_cells {
            let cell = circ(z.start + k, n);
            cells.push(VCell::Real(cell));
            vfixed.push(Some(out[cell].expect("zone cell labeled")));
        }
        pins.push((vstart, pin_cells, r * z.period));
    }

    // Sort pins by virtual position and fill each sub-gap between them.
    pins.sort_by_key(|p| p.0);
    let vlen = cells.len();
    let vinputs: Vec<u16> = cells
        .iter()
        .map(|c| match c {
            VCell::Real(i) => inputs[*i],
            VCell::Pumped(a) => *a,
        })
        .collect();
    let mut voutputs: Vec<Option<u16>> = vfixed.clone();

    // Sub-fill boundaries `(lo, hi, mask_lo, mask_hi)`: between consecutive
    // pinned segments the consistency mask reaches `margin` cells into each
    // pin; at a physical path end it reaches the end itself (covering the
    // truncated windows there).
    let mut boundaries: Vec<(usize, usize, usize, usize)> = Vec::new();
    if pins.is_empty() {
        boundaries.push((0, vlen, 0, vlen));
    } else {
        let (fs, flen, fm) = pins[0];
        if fs > 0 || left.is_none() {
            boundaries.push((0, fs + flen, 0, fs + flen - fm));
        }
        for w in pins.windows(2) {
            let (qs, _qlen, qm) = w[0];
            let (ps, plen, pm) = w[1];
            boundaries.push((qs, ps + plen, qs + qm, ps + plen - pm));
        }
        let (ls, llen, lm) = *pins.last().unwrap();
        if ls + llen < vlen || right.is_none() {
            boundaries.push((ls, vlen, ls + lm, vlen));
        }
    }

    for (lo, hi, mask_lo, mask_hi) in boundaries {
        if mask_lo >= mask_hi {
            continue;
        }
        let seg_inputs = &vinputs[lo..hi];
        let seg_fixed: Vec<Option<u16>> = voutputs[lo..hi].to_vec();
        let mask: Vec<bool> = (lo..hi).map(|p| p >= mask_lo && p < mask_hi).collect();
        let filled = complete_path_lex(problem, seg_inputs, &seg_fixed, &mask).ok_or_else(|| {
            Error::internal("certified gap completion does not exist")
        })?;
        for (t, v) in filled.into_iter().enumerate() {
            voutputs[lo + t] = Some(v);
        }
    }

    // Map pumped pieces back to the real cells via type-preserving
    // relabeling, and copy everything else through.
    let piece_ranges: Vec<(usize, usize)> = pieces.iter().map(|&(vs, vl, _, _)| (vs, vl)).collect();
    for (vi, cell) in cells.iter().enumerate() {
        if let VCell::Real(i) = cell {
            if out[*i].is_none() {
                if piece_ranges.iter().any(|&(vs, vl)| vi >= vs && vi < vs + vl) {
                    continue; // handled by relabeling below
                }
                out[*i] = Some(
                    voutputs[vi].ok_or_else(|| Error::internal("sub-fill left a cell open"))?,
                );
            }
        }
    }
    for &(vs, vl, real_start, real_len) in &pieces {
        let old = circ_word(inputs, real_start, real_len);
        let new: Vec<u16> = vinputs[vs..vs + vl].to_vec();
        let new_out: Vec<u16> = voutputs[vs..vs + vl]
            .iter()
            .map(|o| o.expect("pumped piece labeled"))
            .collect();
        let mapped = relabel_after_replace(problem, &old, &new, &new_out)?;
        for (t, v) in mapped.into_iter().enumerate() {
            out[circ(real_start + t, n)] = Some(v);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Log*-round synthesis
// ---------------------------------------------------------------------------

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Iterations of one-step color reduction (`new = 2 * first-diff-index + own
/// bit`) needed to go from `id_bound` distinct colors to fewer than 6.
pub fn color_reduction_steps(id_bound: u64) -> usize {
    let mut c = id_bound.max(7);
    let mut t = 0;
    loop {
        let next = 2 * ceil_log2(c) as u64;
        if next >= c {
            return t;
        }
        c = next;
        t += 1;
    }
}

/// Same schedule for an abstract identifier width in bits, used to exhibit
/// the iterated-logarithm growth beyond what 64-bit identifiers can realize.
pub fn color_reduction_steps_for_bits(bits: u64) -> usize {
    // colors < 2^bits; after one step colors < 2*bits.
    if bits <= 2 {
        return color_reduction_steps(1 << bits.max(1));
    }
    1 + color_reduction_steps(2 * bits)
}

#[derive(Debug, Clone)]
struct LogstarParams {
    ell: usize,
    s: usize,
    n0: usize,
}

fn logstar_params(problem: &LclProblem, cert: &LogstarCertificate) -> LogstarParams {
    let s = 2 * problem.radius;
    let ell = cert.ell;
    let big_l = ruling_spacing(ell, s);
    LogstarParams { ell, s, n0: 8 * big_l + 64 }
}

/// Final ruling-set spacing: large enough that every stretch of at least
/// `big_l - s + 1` cells admits an alternating anchor/block layout with block
/// sizes in `{2*ell, 2*ell + 1}`.
fn ruling_spacing(ell: usize, s: usize) -> usize {
    let k = 2 * ell;
    (s + k) * (s + k) + 4
}

fn spacing_levels(big_l: usize) -> Vec<usize> {
    let mut levels = vec![big_l];
    while *levels.last().unwrap() > 1 {
        let last = *levels.last().unwrap();
        levels.push(last / 2);
    }
    levels.reverse();
    levels
}

fn schedule_from_steps(ell: usize, s: usize, t: usize) -> usize {
    let big_l = ruling_spacing(ell, s);
    let per_level = t + 8;
    let mut radius = per_level; // base level, hop length 1
    let mut prev = 1usize;
    for &lv in &spacing_levels(big_l)[1..] {
        radius += per_level * (2 * prev + 1) + 8 * lv + 8;
        prev = lv;
    }
    radius + 6 * big_l + 4 * (ell + 1) + 4 * s + 32
}

/// Declared radius for the log*-round algorithm: the full ruling-set
/// schedule, a function of the identifier bound only (never of `n` or the
/// instance contents).
pub fn logstar_schedule(ell: usize, s: usize, id_bound: u64) -> usize {
    schedule_from_steps(ell, s, color_reduction_steps(id_bound))
}

/// Abstract-width variant of [`logstar_schedule`], used to exhibit the
/// iterated-logarithm growth beyond what 64-bit identifiers can realize.
pub fn logstar_schedule_for_bits(ell: usize, s: usize, bits: u64) -> usize {
    schedule_from_steps(ell, s, color_reduction_steps_for_bits(bits))
}

/// Builds the `O(log* n)`-radius algorithm from an anchor certificate.
pub fn synth_logstar(problem: &LclProblem, cert: &LogstarCertificate) -> Result<ViewAlgorithm> {
    if problem.radius == 0 {
        return Err(Error::precondition(
            "radius-0 problems are never in the iterated-log class",
        ));
    }
    let params = logstar_params(problem, cert);
    let p = problem.clone();
    let c = cert.clone();
    let (ell, s) = (params.ell, params.s);
    Ok(ViewAlgorithm {
        name: format!("{}/logstar", problem.name),
        // Declared radius depends only on the identifier bound, never on n:
        // the schedule always exceeds n0 / 2, so on instances below n0 (where
        // the run falls back to an exact solve) the ball covers the graph.
        radius_fn: Box::new(move |inst| logstar_schedule(ell, s, inst.id_bound())),
        run_fn: Box::new(move |inst| logstar_run(&p, &c, &params, inst)),
    })
}

/// One-step color reduction along the chain orientation; endpoints of a path
/// compare against their only neighbor instead.
fn reduce_colors(colors: &mut Vec<u64>, is_cycle: bool) {
    let m = colors.len();
    if m <= 1 {
        return;
    }
    let next: Vec<u64> = (0..m)
        .map(|i| {
            let other = if is_cycle {
                colors[(i + 1) % m]
            } else if i + 1 < m {
                colors[i + 1]
            } else {
                colors[i - 1]
            };
            let own = colors[i];
            debug_assert_ne!(own, other, "color reduction needs proper colors");
            let j = (own ^ other).trailing_zeros() as u64;
            2 * j + ((own >> j) & 1)
        })
        .collect();
    *colors = next;
}

/// Maximal independent set of a chain from distinct identifiers, using the
/// fixed color-reduction schedule followed by per-color-class selection.
fn chain_mis(ids: &[u64], is_cycle: bool, steps: usize) -> Vec<bool> {
    let m = ids.len();
    if m == 0 {
        return vec![];
    }
    if m == 1 {
        return vec![true];
    }
    let mut colors: Vec<u64> = ids.to_vec();
    for _ in 0..steps {
        reduce_colors(&mut colors, is_cycle);
    }
    let cmax = *colors.iter().max().unwrap();
    debug_assert!(cmax < 64, "color reduction did not converge");
    let mut selected = vec![false; m];
    for c in 0..=cmax {
        for i in 0..m {
            if colors[i] != c || selected[i] {
                continue;
            }
            let left_sel = if is_cycle {
                selected[(i + m - 1) % m]
            } else if i > 0 {
                selected[i - 1]
            } else {
                false
            };
            let right_sel = if is_cycle {
                selected[(i + 1) % m]
            } else if i + 1 < m {
                selected[i + 1]
            } else {
                false
            };
            if !left_sel && !right_sel {
                selected[i] = true;
            }
        }
    }
    selected
}

/// Gap sizes between consecutive ruling positions (cells strictly between).
fn ruling_gaps(positions: &[usize], n: usize, is_cycle: bool) -> Vec<usize> {
    let m = positions.len();
    let mut gaps = Vec::with_capacity(m);
    for i in 0..m {
        if is_cycle {
            let next = positions[(i + 1) % m];
            gaps.push((next + n - positions[i] - 1) % n);
        } else if i + 1 < m {
            gaps.push(positions[i + 1] - positions[i] - 1);
        }
    }
    gaps
}

/// Splits an oversized stretch of `z` cells into pieces within `[lv, 2lv]`
/// separated by newly selected cut cells; returns the piece sizes.
fn cut_sizes(z: usize, lv: usize) -> Vec<usize> {
    if z <= 2 * lv {
        return vec![z];
    }
    let m = (z + 1).div_ceil(2 * lv + 1);
    let total = z - (m - 1);
    let base = total / m;
    let rem = total % m;
    let sizes: Vec<usize> = (0..m).map(|i| if i < rem { base + 1 } else { base }).collect();
    debug_assert!(sizes.iter().all(|&s| s >= lv && s <= 2 * lv), "cut arithmetic broken");
    sizes
}

/// Computes a ruling set: selected positions pairwise non-adjacent with all
/// gaps (and, on paths, both end stretches) within `[big_l, 2*big_l]`.
fn ruling_set_levels(inst: &Instance, levels: &[usize], steps: usize) -> Result<Vec<usize>> {
    let n = inst.n();
    let is_cycle = inst.topology == Topology::Cycle;
    // Base level: MIS over the raw chain (gaps in [1, 2]).
    let base = chain_mis(&inst.ids, is_cycle, steps);
    let mut positions: Vec<usize> = (0..n).filter(|&i| base[i]).collect();


    for &lv in &levels[1..] {
        // MIS over the contracted chain, then drop the selected positions to
        // merge neighboring gaps.
        // Keep the MIS of the contracted chain: consecutive kept positions
        // are separated by one or two dropped ones, so gaps grow to
        // [2*prev + 1, 6*prev + 2] before trimming.
        let ids: Vec<u64> = positions.iter().map(|&p| inst.ids[p]).collect();
        let sel = chain_mis(&ids, is_cycle, steps);
        positions = positions
            .iter()
            .zip(&sel)
            .filter(|(_, &s)| s)
            .map(|(&p, _)| p)
            .collect();
        if positions.is_empty() {
            return Err(Error::internal("ruling set collapsed"));
        }
        // Trim oversized gaps by re-selecting cut cells.
        let mut augmented: Vec<usize> = Vec::new();
        let m = positions.len();
        for i in 0..m {
            augmented.push(positions[i]);
            let (gap, anchor) = if is_cycle {
                let next = positions[(i + 1) % m];
                (((next + n - positions[i]) % n).saturating_sub(1), positions[i])
            } else if i + 1 < m {
                (positions[i + 1] - positions[i] - 1, positions[i])
            } else {
                continue;
            };
            if gap > 2 * lv {
                let mut at = anchor;
                let sizes = cut_sizes(gap, lv);
                for &sz in &sizes[..sizes.len() - 1] {
                    at += sz + 1;
                    augmented.push(at % n);
                }
            }
        }
        positions = augmented;
        positions.sort_unstable();
        // Path ends: keep the end stretches within [lv, 2*lv] too.
        if !is_cycle {
            fix_path_ends(&mut positions, n, lv);
        }
        if cfg!(debug_assertions) {
            for g in ruling_gaps(&positions, n, is_cycle) {
                debug_assert!(g >= lv && g <= 2 * lv, "gap {g} outside [{lv}, {}]", 2 * lv);
            }
        }

    }

    Ok(positions)
}

fn fix_path_ends(positions: &mut Vec<usize>, n: usize, lv: usize) {
    // Left end: cells before the first selected position.
    loop {
        match positions.first() {
            Some(&p0) if p0 < lv => {
                positions.remove(0);
            }
            _ => break,
        }
    }
    if let Some(&p0) = positions.first() {
        if p0 > 2 * lv {
            let sizes = cut_sizes(p0, lv);
            let mut at: isize = -1;
            let mut inserted = Vec::new();
            for &sz in &sizes[..sizes.len() - 1] {
                at += sz as isize + 1;
                inserted.push(at as usize);
            }
            for (i, p) in inserted.into_iter().enumerate() {
                positions.insert(i, p);
            }
        }
    }
    // Right end, mirrored.
    loop {
        match positions.last() {
            Some(&pl) if n - 1 - pl < lv => {
                positions.pop();
            }
            _ => break,
        }
    }
    if let Some(&pl) = positions.last() {
        let tail = n - 1 - pl;
        if tail > 2 * lv {
            let sizes = cut_sizes(tail, lv);
            let mut at = pl;
            for &sz in &sizes[..sizes.len() - 1] {
                at += sz + 1;
                positions.push(at);
            }
        }
    }
}

/// An anchor: `s` consecutive cells labeled directly by the certificate.
#[derive(Debug, Clone, Copy)]
struct Anchor {
    start: usize,
}

/// Decomposes the chain into alternating anchors (exactly `s` cells each) and
/// blocks (`k` or `k + 1` cells each) using the identifier-driven ruling set.
/// Returns anchor start positions and `(start, len)` blocks in construction
/// order: the block following `anchors[i]` is `blocks[i]` (modulo wrap on
/// cycles; on paths the stretches before the first and after the last anchor
/// are not covered).
pub fn anchor_block_layout(
    inst: &Instance,
    s: usize,
    k: usize,
) -> Result<(Vec<usize>, Vec<(usize, usize)>)> {
    let n = inst.n();
    let is_cycle = inst.topology == Topology::Cycle;
    let big_l = (s + k) * (s + k) + 4;
    let levels = spacing_levels(big_l);
    if n < 8 * big_l + 64 {
        return Err(Error::precondition("instance too small for an anchor/block layout"));
    }
    let steps = color_reduction_steps(inst.id_bound());
    let ruling = ruling_set_levels(inst, &levels, steps)?;

    // Every ruling position starts an anchor of `s` cells; the stretch to the
    // next anchor is split into alternating blocks and interior anchors.
    let mut anchors: Vec<usize> = Vec::new();
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let m = ruling.len();
    let segments: Vec<(usize, usize)> = if is_cycle {
        (0..m)
            .map(|i| {
                let from = circ(ruling[i] + s, n);
                let to = ruling[(i + 1) % m];
                (from, (to + n - from) % n)
            })
            .collect()
    } else {
        (0..m - 1)
            .map(|i| {
                let from = ruling[i] + s;
                (from, ruling[i + 1] - from)
            })
            .collect()
    };
    for (i, &(seg_start, z)) in segments.iter().enumerate() {
        anchors.push(ruling[i]);
        let mut chosen: Option<usize> = None;
        for a in 0..=z / (k + s) + 1 {
            if let Some(rest) = z.checked_sub(a * s) {
                if (a + 1) * k <= rest && rest <= (a + 1) * (k + 1) {
                    chosen = Some(a);
                    break;
                }
            }
        }
        let a = chosen.ok_or_else(|| Error::internal("segment admits no block layout"))?;
        let total = z - a * s;
        let base = total / (a + 1);
        let rem = total % (a + 1);
        let mut at = seg_start;
        for b in 0..=a {
            let blen = if b < rem { base + 1 } else { base };
            debug_assert!(blen == k || blen == k + 1);
            blocks.push((at, blen));
            at = circ(at + blen, n);
            if b < a {
                anchors.push(at);
                at = circ(at + s, n);
            }
        }
    }
    if !is_cycle {
        anchors.push(ruling[m - 1]);
    }
    Ok((anchors, blocks))
}

fn logstar_run(
    problem: &LclProblem,
    cert: &LogstarCertificate,
    params: &LogstarParams,
    inst: &Instance,
) -> Result<Labeling> {
    let n = inst.n();
    let r = problem.radius;
    let inputs = &inst.inputs;
    let is_cycle = inst.topology == Topology::Cycle;
    let (ell, s) = (params.ell, params.s);
    if n < params.n0 {
        return solve_instance(problem, inst)?
            .ok_or_else(|| Error::precondition("instance admits no consistent labeling"));
    }
    let (anchor_starts, blocks) = anchor_block_layout(inst, s, 2 * ell)?;
    let anchors: Vec<Anchor> = anchor_starts.into_iter().map(|start| Anchor { start }).collect();
    // Construction order is already circularly aligned: the block following
    // `anchors[i]` is `blocks[i]` (modulo wrap on cycles).

    // Label anchors: key = (second half of preceding block, anchor cells,
    // first half of following block), all read in array order.
    let mut out: Vec<Option<u16>> = vec![None; n];
    let na = anchors.len();
    let nb = blocks.len();
    debug_assert_eq!(nb, if is_cycle { na } else { na - 1 });
    let half = |b: (usize, usize)| -> ((usize, usize), (usize, usize)) {
        let first = b.1 / 2;
        ((b.0, first), (circ(b.0 + first, n), b.1 - first))
    };
    for (i, anc) in anchors.iter().enumerate() {
        let (w1s, w1l);
        let (w2s, w2l);
        if is_cycle {
            let prev_block = blocks[(i + nb - 1) % nb];
            let next_block = blocks[i % nb];
            let (_, second) = half(prev_block);
            let (first, _) = half(next_block);
            (w1s, w1l) = second;
            (w2s, w2l) = first;
        } else {
            // On a path the first anchor takes its left context from the end
            // stretch and the last takes its right context likewise.
            if i == 0 {
                (w1s, w1l) = (anc.start - ell, ell);
            } else {
                let (_, second) = half(blocks[i - 1]);
                (w1s, w1l) = second;
            }
            if i == na - 1 {
                (w2s, w2l) = (circ(anc.start + s, n), ell);
            } else {
                let (first, _) = half(blocks[i]);
                (w2s, w2l) = first;
            }
        }
        let key = (
            circ_word(inputs, w1s, w1l),
            circ_word(inputs, anc.start, s),
            circ_word(inputs, w2s, w2l),
        );
        let v = cert
            .g
            .get(&key)
            .ok_or_else(|| Error::internal("anchor certificate misses a key"))?;
        for (t, &o) in v.iter().enumerate() {
            out[circ(anc.start + t, n)] = Some(o);
        }
    }

    // Fill between consecutive anchors: [anchor][block][anchor].
    for i in 0..na {
        if !is_cycle && i + 1 == na {
            break;
        }
        let a = anchors[i];
        let b = anchors[(i + 1) % na];
        let lo = a.start;
        let len = s + ((b.start + n - circ(a.start + s, n)) % n) + s;
        let idx: Vec<usize> = (0..len).map(|t| circ(lo + t, n)).collect();
        let seg_inputs: Vec<u16> = idx.iter().map(|&c| inputs[c]).collect();
        let seg_fixed: Vec<Option<u16>> = idx
            .iter()
            .enumerate()
            .map(|(t, &c)| if t < s || t >= len - s { Some(out[c].expect("anchor labeled")) } else { None })
            .collect();
        let mask: Vec<bool> = (0..len).map(|t| t >= r && t < len - r).collect();
        let filled = complete_path_lex(problem, &seg_inputs, &seg_fixed, &mask)
            .ok_or_else(|| Error::internal("certified block completion does not exist"))?;
        for (t, v) in filled.into_iter().enumerate() {
            out[idx[t]] = Some(v);
        }
    }

    // Path ends: one exact completion from the physical end through the
    // nearest anchor.
    if !is_cycle {
        let first = anchors[0];
        let hi = first.start + s;
        let seg_inputs: Vec<u16> = inputs[..hi].to_vec();
        let seg_fixed: Vec<Option<u16>> = (0..hi)
            .map(|t| if t >= first.start { out[t] } else { None })
            .collect();
        let mask: Vec<bool> = (0..hi).map(|t| t < first.start + r).collect();
        let filled = complete_path_lex(problem, &seg_inputs, &seg_fixed, &mask)
            .ok_or_else(|| Error::internal("certified end completion does not exist"))?;
        for (t, v) in filled.into_iter().enumerate() {
            if out[t].is_none() {
                out[t] = Some(v);
            }
        }
        let last = anchors[na - 1];
        let lo = last.start;
        let seg_inputs: Vec<u16> = inputs[lo..].to_vec();
        let seg_fixed: Vec<Option<u16>> = (lo..n)
            .map(|t| if t < lo + s { out[t] } else { None })
            .collect();
        let mask: Vec<bool> = (lo..n).map(|t| t >= lo + r).collect();
        let filled = complete_path_lex(problem, &seg_inputs, &seg_fixed, &mask)
            .ok_or_else(|| Error::internal("certified end completion does not exist"))?;
        for (t, v) in filled.into_iter().enumerate() {
            if out[lo + t].is_none() {
                out[lo + t] = Some(v);
            }
        }
    }

    out.into_iter()
        .map(|o| o.ok_or_else(|| Error::internal("synthesis left a cell unlabeled")))
        .collect()
}

// ---------------------------------------------------------------------------
// Structural subroutines exposed for direct testing
// ---------------------------------------------------------------------------

/// Per-node orientation of a chain: `true` points toward the successor in
/// array order, `false` toward the predecessor. Every maximal run of equally
/// oriented nodes has at least `ell` nodes, and the construction radius
/// depends only on the identifier bound, never on `n`.
///
/// Nodes orient toward the nearest position of a ruling set with spacing in
/// `[2*ell, 4*ell]`, so both half-gaps form runs of at least `ell` nodes.
pub fn ell_orientation(inst: &Instance, ell: usize) -> Result<(Vec<bool>, usize)> {
    let n = inst.n();
    let is_cycle = inst.topology == Topology::Cycle;
    let lv = 2 * ell.max(1);
    let levels = spacing_levels(lv);
    let radius = orientation_radius(ell, inst.id_bound());
    if n < 8 * lv + 64 {
        // Small graphs: a single uniform run (covered by the declared radius,
        // which always exceeds n / 2 here).
        return Ok((vec![true; n], radius));
    }
    let steps = color_reduction_steps(inst.id_bound());
    let positions = ruling_set_levels(inst, &levels, steps)?;
    let mut orient = vec![true; n];
    let m = positions.len();
    if !is_cycle {
        // End stretches point toward their only adjacent ruling position.
        for i in 0..positions[0] {
            orient[i] = true;
        }
        for i in positions[m - 1]..n {
            orient[i] = false;
        }
    }
    let pairs = if is_cycle { m } else { m - 1 };
    for i in 0..pairs {
        let a = positions[i];
        let b = positions[(i + 1) % m];
        let gap = if is_cycle { (b + n - a) % n } else { b - a };
        for t in 0..gap {
            // Nearer anchor wins; ties point back at `a`.
            orient[circ(a + t, n)] = t > gap / 2;
        }
    }
    Ok((orient, radius))
}

/// Declared radius for [`ell_orientation`]: a function of `ell` and the
/// identifier bound only.
pub fn orientation_radius(ell: usize, id_bound: u64) -> usize {
    let lv = 2 * ell.max(1);
    let per_level = color_reduction_steps(id_bound) + 8;
    let mut radius = per_level;
    let mut prev = 1usize;
    for &l in &spacing_levels(lv)[1..] {
        radius += per_level * (2 * prev + 1) + 8 * l + 8;
        prev = l;
    }
    radius + 4 * lv + 64
}

/// One piece of an input-pattern partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartKind {
    /// At most `2 * l_width` nodes; every node knows its rank in the piece.
    Short,
    /// Input labels are `pattern^count` for a primitive pattern.
    Long { pattern: Vec<u16>, count: usize },
}

/// A contiguous piece of the chain (circular on cycles: `start + len` may
/// wrap).
#[derive(Debug, Clone)]
pub struct Part {
    pub start: usize,
    pub len: usize,
    pub kind: PartKind,
}

/// Partitions the chain by its input labels into long periodic pieces (a
/// primitive pattern of length at most `l_pattern` repeated at least
/// `l_count` times) and short irregular pieces of `l_width..=2*l_width`
/// nodes. Requires `l_pattern >= l_width >= 1` and more than `2 * l_width`
/// nodes.
pub fn pattern_partition(
    inputs: &[u16],
    is_cycle: bool,
    l_width: usize,
    l_count: usize,
    l_pattern: usize,
) -> Result<Vec<Part>> {
    let n = inputs.len();
    if l_width == 0 || l_pattern < l_width || n <= 2 * l_width {
        return Err(Error::precondition("partition parameters out of range"));
    }
    // Fully periodic cycle: one long cyclic piece.
    if is_cycle {
        for p in 1..=l_pattern {
            if n % p == 0
                && n / p >= l_count
                && (0..n).all(|i| inputs[i] == inputs[circ(i + p, n)])
            {
                let pattern = inputs[..p].to_vec();
                if is_primitive(&pattern) {
                    return Ok(vec![Part {
                        start: 0,
                        len: n,
                        kind: PartKind::Long { pattern, count: n / p },
                    }]);
                }
            }
        }
    }
    let mut claimed = vec![false; n];
    let mut parts: Vec<Part> = Vec::new();
    for p in 1..=l_pattern {
        let threshold = (l_count + 2 * l_width) * p;
        let mark: Vec<bool> = (0..n)
            .map(|i| {
                let ok = if is_cycle {
                    inputs[i] == inputs[circ(i + p, n)]
                } else {
                    i + p < n && inputs[i] == inputs[i + p]
                };
                ok && !claimed[i] && !claimed[circ(i + p, n)]
            })
            .collect();
        for (ms, mlen) in true_stretches(&mark, is_cycle) {
            let total = mlen + p; // cells covered by the matching stretch
            if total < threshold || total > n {
                continue;
            }
            let word = circ_word(inputs, ms, p);
            if !is_primitive(&word) {
                continue;
            }
            // Trim a full margin of l_width copies from each side and keep a
            // whole number of copies.
            let count = (total - 2 * l_width * p) / p;
            if count < l_count {
                continue;
            }
            let start = circ(ms + l_width * p, n);
            let len = count * p;
            for t in 0..len {
                claimed[circ(start + t, n)] = true;
            }
            parts.push(Part {
                start,
                len,
                kind: PartKind::Long { pattern: word, count },
            });
        }
    }
    // Remaining components become short pieces of l_width..=2*l_width nodes.
    let unclaimed: Vec<bool> = claimed.iter().map(|&c| !c).collect();
    for (cs, clen) in true_stretches(&unclaimed, is_cycle) {
        if clen < l_width {
            return Err(Error::internal(
                "irregular component shorter than the width bound",
            ));
        }
        let pieces = clen.div_ceil(2 * l_width);
        let base = clen / pieces;
        let rem = clen % pieces;
        let mut at = cs;
        for i in 0..pieces {
            let len = if i < rem { base + 1 } else { base };
            parts.push(Part { start: at, len, kind: PartKind::Short });
            at = circ(at + len, n);
        }
    }
    Ok(parts)
}

/// A word is primitive if it is not a whole-number power of a shorter word.
fn is_primitive(word: &[u16]) -> bool {
    let p = word.len();
    for d in 1..p {
        if p % d == 0 && (0..p).all(|i| word[i] == word[i % d]) {
            return false;
        }
    }
    true
}

/// Selects a set of positions whose removal leaves only runs of between
/// `gamma` and `2 * gamma` unselected nodes (including path-end runs), using
/// only identifier comparisons within a radius that depends on `gamma` and
/// the identifier bound, never on `n`.  Requires `n >= 8 * gamma + 64`.
pub fn independent_spacing_set(inst: &Instance, gamma: usize) -> Result<Vec<usize>> {
    if gamma == 0 {
        return Err(Error::precondition("spacing must be positive"));
    }
    if inst.n() < 8 * gamma + 64 {
        return Err(Error::precondition("graph too small for the spacing bound"));
    }
    let steps = color_reduction_steps(inst.id_bound());
    ruling_set_levels(inst, &spacing_levels(gamma), steps)
}

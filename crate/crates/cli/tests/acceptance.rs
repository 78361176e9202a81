//! End-to-end acceptance gate. Each test covers one release criterion and
//! prints a single PASS line; a failing criterion fails its test.
//!
//! 1. Classification triple with an independent impossibility oracle.
//! 2. Gap witnesses: constant radii are n-independent, log-star radii flat.
//! 3. Type engine against direct computation and brute-force enumeration.
//! 4. Structural subroutine contracts (layouts, orientations, partitions).
//! 5. Machine-compilation pipeline: radii, corruptions, forcing probe.
//! 6. Normalization formulas and encoded-instance round trips.
//! 7. CLI determinism: byte-identical reports modulo the timestamp.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::Command;

use lcl_core::decider::{classify, Class, SearchLimits};
use lcl_core::fixtures;
use lcl_core::instance::{Instance, Topology};
use lcl_core::lba::{
    binary_counter, canonical_radius, canonical_solve, compile_pi, encode_good_input, lba_run,
    pi_lower_bound_probe, unary_counter, LbaMachine, Phi, PiInput, RunResult,
};
use lcl_core::normalize::{
    block_geometry, encode_stage2_input, normalize_stage1, normalize_stage2, solve_stage2,
    stage2_error_labeling, stage2_output_count, PredecessorLcl,
};
use lcl_core::problem::LclProblem;
use lcl_core::sim::{
    anchor_block_layout, ell_orientation, independent_spacing_set, pattern_partition, simulate,
    synthesize, PartKind,
};
use lcl_core::types::{extendible, type_of, TypeAutomaton};
use lcl_core::verify::verify_normalized;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Small deterministic generator for test parameters (keeps the suite free
/// of RNG dependencies).
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }
    fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next() as usize) % (hi - lo + 1)
    }
}

// ---------------------------------------------------------------------------
// Criterion 1: classification triple + independent impossibility oracle.
// ---------------------------------------------------------------------------

/// True iff no radius-`t` view rule 2-colors every labeled cycle with
/// n ∈ {6, 7} over identifier space {1..8}: the graph whose vertices are
/// views and whose edges join adjacent positions must be non-bipartite,
/// because a correct rule is exactly a proper 2-coloring of that graph.
fn no_two_coloring_view_rule(t: usize) -> bool {
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    let mut intern = |v: Vec<u64>, adj: &mut Vec<Vec<usize>>| -> usize {
        let next = index.len();
        *index.entry(v).or_insert_with(|| {
            adj.push(Vec::new());
            next
        })
    };
    for n in [6usize, 7] {
        // Every arrangement of n distinct identifiers from {1..8}.
        let mut ids = [0u64; 7];
        let mut used = [false; 9];
        fn rec(
            pos: usize,
            n: usize,
            ids: &mut [u64; 7],
            used: &mut [bool; 9],
            emit: &mut dyn FnMut(&[u64]),
        ) {
            if pos == n {
                emit(&ids[..n]);
                return;
            }
            for id in 1..=8u64 {
                if !used[id as usize] {
                    used[id as usize] = true;
                    ids[pos] = id;
                    rec(pos + 1, n, ids, used, emit);
                    used[id as usize] = false;
                }
            }
        }
        rec(0, n, &mut ids, &mut used, &mut |cyc: &[u64]| {
            let view = |i: usize| -> Vec<u64> {
                (0..2 * t + 1).map(|d| cyc[(i + n + d - t) % n]).collect()
            };
            let vs: Vec<usize> = (0..n).map(|i| intern(view(i), &mut adj)).collect();
            for i in 0..n {
                let (a, b) = (vs[i], vs[(i + 1) % n]);
                adj[a].push(b);
                adj[b].push(a);
            }
        });
    }
    // Bipartiteness by BFS 2-coloring.
    let mut color: Vec<i8> = vec![-1; adj.len()];
    for s in 0..adj.len() {
        if color[s] >= 0 {
            continue;
        }
        color[s] = 0;
        let mut queue = vec![s];
        while let Some(u) = queue.pop() {
            for &v in &adj[u] {
                if color[v] < 0 {
                    color[v] = 1 - color[u];
                    queue.push(v);
                } else if color[v] == color[u] {
                    return true; // odd cycle: no rule exists
                }
            }
        }
    }
    false
}

#[test]
fn criterion_1_classification_triple() {
    let limits = SearchLimits::default();
    let copy = classify(&fixtures::copy_r0().unwrap(), &limits).unwrap();
    assert_eq!(copy.class, Class::Constant, "copy fixture must be CONSTANT");
    let col3 = classify(&fixtures::three_coloring().unwrap(), &limits).unwrap();
    assert_eq!(col3.class, Class::Logstar, "3-coloring must be LOGSTAR");
    let col2 = classify(&fixtures::two_coloring().unwrap(), &limits).unwrap();
    assert_eq!(col2.class, Class::Global, "2-coloring must be GLOBAL");
    for t in 0..=2 {
        assert!(
            no_two_coloring_view_rule(t),
            "independent oracle: a radius-{t} rule for 2-coloring exists"
        );
    }
    println!("criterion 1 PASS: copy=CONSTANT 3col=LOGSTAR 2col=GLOBAL, no radius<=2 rule");
}

// ---------------------------------------------------------------------------
// Criterion 2: constant radii are n-independent; log-star radii barely grow.
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_gap_witness_execution() {
    let limits = SearchLimits::default();
    let mut constants = 0;
    let mut logstars = 0;
    for problem in fixtures::classifier_fixtures().unwrap() {
        let c = classify(&problem, &limits).unwrap();
        match c.class {
            Class::Constant => {
                constants += 1;
                let alg = synthesize(&problem, &c).unwrap();
                let mut radii = Vec::new();
                for n in [64usize, 256, 1024] {
                    for seed in 0..100u64 {
                        let inst =
                            Instance::generate(&problem, Topology::Cycle, n, seed).unwrap();
                        let rep = simulate(&problem, &alg, &inst).unwrap();
                        assert!(
                            rep.violations.is_empty(),
                            "{} n={n} seed={seed}: violations at {:?}",
                            problem.name,
                            rep.violations
                        );
                        radii.push(rep.radius);
                    }
                }
                assert!(
                    radii.windows(2).all(|w| w[0] == w[1]),
                    "{}: constant radius varies with n",
                    problem.name
                );
            }
            Class::Logstar => {
                logstars += 1;
                let alg = synthesize(&problem, &c).unwrap();
                let mut by_n = Vec::new();
                for n in [1usize << 8, 1 << 16] {
                    let inst = Instance::generate(&problem, Topology::Cycle, n, 5).unwrap();
                    let rep = simulate(&problem, &alg, &inst).unwrap();
                    assert!(
                        rep.violations.is_empty(),
                        "{} n={n}: violations at {:?}",
                        problem.name,
                        rep.violations
                    );
                    by_n.push(rep.radius);
                }
                assert!(
                    by_n[1] <= by_n[0] + 2,
                    "{}: radius grew from {} to {} between n=2^8 and n=2^16",
                    problem.name,
                    by_n[0],
                    by_n[1]
                );
            }
            _ => {}
        }
    }
    assert!(constants >= 2 && logstars >= 2, "fixture coverage too thin");
    println!(
        "criterion 2 PASS: {constants} constant fixtures n-independent, \
         {logstars} log-star fixtures flat between 2^8 and 2^16"
    );
}

// ---------------------------------------------------------------------------
// Criterion 3: type engine vs direct computation and brute force.
// ---------------------------------------------------------------------------

fn all_strings(radix: u16, n: usize) -> Vec<Vec<u16>> {
    let mut acc = vec![vec![]];
    for _ in 0..n {
        acc = acc
            .into_iter()
            .flat_map(|v| {
                (0..radix).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    acc
}

/// Brute-force extendibility: try every completion matching the boundary
/// pins and test all interior windows directly.
fn oracle_extendible(
    problem: &LclProblem,
    inputs: &[u16],
    boundary_out: &[u16],
    candidates: &[Vec<u16>],
) -> bool {
    let k = inputs.len();
    let r = problem.radius;
    let head = (2 * r).min(k);
    candidates.iter().any(|out| {
        out[..head] == boundary_out[..head]
            && out[k - head..] == boundary_out[head..]
            && (r..k.saturating_sub(r)).all(|p| problem.consistent_on_path(inputs, out, p))
    })
}

#[test]
fn criterion_3_type_engine_oracles() {
    // (a) Automaton state signatures equal direct type computation, all
    // strings of length <= 8, every fixture.
    for problem in fixtures::classifier_fixtures().unwrap() {
        let automaton = TypeAutomaton::build(&problem).unwrap();
        for len in 1..=8 {
            for w in all_strings(problem.sigma_in.len() as u16, len) {
                let s = automaton.state_of(&w);
                assert_eq!(
                    automaton.states[s].sig,
                    type_of(&problem, &w).unwrap(),
                    "{} w={w:?}",
                    problem.name
                );
            }
        }
    }

    // (b) Extendibility DP vs brute-force completion, paths up to length 10,
    // all boundary assignments, radius-1 fixtures with <= 3 outputs.
    for problem in [
        fixtures::copy_r1().unwrap(),
        fixtures::two_coloring().unwrap(),
        fixtures::three_coloring().unwrap(),
    ] {
        let r = problem.radius;
        assert_eq!(r, 1);
        let n_in = problem.sigma_in.len() as u16;
        let n_out = problem.sigma_out.len() as u16;
        assert!(n_out <= 3);
        let boundaries = all_strings(n_out, 4 * r);
        for k in 4 * r..=10 {
            let candidates = all_strings(n_out, k);
            for inputs in all_strings(n_in, k) {
                for boundary in &boundaries {
                    assert_eq!(
                        extendible(&problem, &inputs, boundary),
                        oracle_extendible(&problem, &inputs, boundary, &candidates),
                        "{} inputs={inputs:?} boundary={boundary:?}",
                        problem.name
                    );
                }
            }
        }
    }

    // (c) Pumping invariance: the type of x . y^i . z is constant for
    // i in [0, 4], on 50 pseudo-random strings per fixture.
    let mut rng = Lcg(0x5eed_cafe);
    for problem in [
        fixtures::copy_r1().unwrap(),
        fixtures::three_coloring().unwrap(),
        fixtures::no_triple_repeat().unwrap(),
    ] {
        let automaton = TypeAutomaton::build(&problem).unwrap();
        let radix = problem.sigma_in.len() as u16;
        let len = automaton.states.len() + 5;
        for _ in 0..50 {
            let w: Vec<u16> = (0..len).map(|_| (rng.next() % radix as u64) as u16).collect();
            let (x, y, z) = automaton.pump_decompose(&w).unwrap();
            assert!(!y.is_empty(), "{}: empty pump segment", problem.name);
            let base = automaton.state_of(&w);
            for i in 0..=4usize {
                let mut pumped = x.clone();
                for _ in 0..i {
                    pumped.extend_from_slice(&y);
                }
                pumped.extend_from_slice(&z);
                assert_eq!(
                    automaton.state_of(&pumped),
                    base,
                    "{} w={w:?} i={i}",
                    problem.name
                );
            }
        }
    }
    println!("criterion 3 PASS: automaton=direct (len<=8), DP=brute force (len<=10), pumping invariant");
}

// ---------------------------------------------------------------------------
// Criterion 4: structural subroutine contracts.
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_structural_subroutines() {
    let problem = fixtures::copy_r0().unwrap();

    // (a) Anchor/block layout: anchors of exactly s cells and blocks of k or
    // k+1 cells alternate and tile the whole cycle, 100 random (n, s, k).
    let mut rng = Lcg(0xab5);
    for case in 0..100 {
        let s = rng.range(1, 4);
        let k = rng.range(2, 6);
        let min_n = 8 * ((s + k) * (s + k) + 4) + 64;
        let n = rng.range(min_n, min_n + 3000);
        let inst = Instance::generate(&problem, Topology::Cycle, n, case).unwrap();
        let (anchors, blocks) = anchor_block_layout(&inst, s, k).unwrap();
        assert_eq!(anchors.len(), blocks.len(), "case {case}: counts differ on a cycle");
        let mut covered = vec![0u8; n];
        for &a in &anchors {
            for d in 0..s {
                covered[(a + d) % n] += 1;
            }
        }
        for &(b, len) in &blocks {
            assert!(len == k || len == k + 1, "case {case}: block of {len} cells");
            for d in 0..len {
                covered[(b + d) % n] += 1;
            }
        }
        assert!(
            covered.iter().all(|&c| c == 1),
            "case {case} (n={n} s={s} k={k}): layout does not tile the cycle"
        );
        // Alternation: block i starts right after anchor i and ends at the
        // next anchor.
        for i in 0..anchors.len() {
            assert_eq!(blocks[i].0, (anchors[i] + s) % n, "case {case}: gap after anchor {i}");
            assert_eq!(
                (blocks[i].0 + blocks[i].1) % n,
                anchors[(i + 1) % anchors.len()],
                "case {case}: gap after block {i}"
            );
        }
    }

    // (b) Orientation: every maximal same-direction run has >= ell nodes and
    // the declared radius does not depend on n (identifier scale pinned).
    for ell in [3usize, 5] {
        let mut radii = Vec::new();
        for n in [128usize, 1024, 8192] {
            let mut inst = Instance::generate(&problem, Topology::Cycle, n, 11).unwrap();
            inst.ids[0] = 1 << 20;
            let (orient, radius) = ell_orientation(&inst, ell).unwrap();
            radii.push(radius);
            // Run lengths around the cycle.
            if orient.iter().all(|&o| o == orient[0]) {
                continue; // a single run covers everything
            }
            let mut start = 0;
            while orient[(start + n - 1) % n] == orient[start] {
                start += 1;
            }
            let mut i = start;
            loop {
                let mut len = 1;
                while orient[(i + len) % n] == orient[i % n] {
                    len += 1;
                }
                assert!(len >= ell, "n={n} ell={ell}: run of {len} nodes at {}", i % n);
                i += len;
                if i >= start + n {
                    break;
                }
            }
        }
        assert!(
            radii.windows(2).all(|w| w[0] == w[1]),
            "ell={ell}: orientation radius varies with n: {radii:?}"
        );
    }

    // (c) Pattern partition invariants on periodic, aperiodic, and mixed
    // inputs: parts tile the chain, short parts span w..=2w nodes, long
    // parts are >= l_count repetitions of a primitive pattern.
    let (w, count, pat) = (3usize, 4usize, 3usize);
    let thue_morse: Vec<u16> =
        (0..200u32).map(|i| (i.count_ones() % 2) as u16).collect();
    let periodic: Vec<u16> = (0..100).map(|i| (i % 2) as u16).collect();
    let mut mixed = thue_morse[..80].to_vec();
    mixed.extend((0..60).map(|i| (i % 2) as u16));
    mixed.extend_from_slice(&thue_morse[..80]);
    let cases: Vec<(&str, Vec<u16>, bool)> = vec![
        ("periodic", periodic, true),
        ("aperiodic", thue_morse.clone(), false),
        ("mixed", mixed, false),
    ];
    for (name, inputs, is_cycle) in &cases {
        let n = inputs.len();
        let parts = pattern_partition(inputs, *is_cycle, w, count, pat).unwrap();
        let mut covered = vec![0u8; n];
        let mut long_parts = 0;
        for part in &parts {
            for d in 0..part.len {
                covered[(part.start + d) % n] += 1;
            }
            match &part.kind {
                PartKind::Short => {
                    assert!(
                        part.len >= w && part.len <= 2 * w,
                        "{name}: short part of {} nodes",
                        part.len
                    );
                }
                PartKind::Long { pattern, count: c } => {
                    long_parts += 1;
                    assert!(!pattern.is_empty() && pattern.len() <= pat);
                    assert!(*c >= count, "{name}: only {c} repetitions");
                    assert_eq!(part.len, c * pattern.len());
                    // Primitive: no strict period divides the pattern.
                    let p = pattern.len();
                    for q in 1..p {
                        assert!(
                            p % q != 0 || (0..p).any(|i| pattern[i] != pattern[i % q]),
                            "{name}: pattern {pattern:?} is a power"
                        );
                    }
                    for d in 0..part.len {
                        assert_eq!(
                            inputs[(part.start + d) % n],
                            pattern[d % p],
                            "{name}: long part deviates from its pattern"
                        );
                    }
                }
            }
        }
        assert!(covered.iter().all(|&c| c == 1), "{name}: parts do not tile the chain");
        match *name {
            "periodic" => assert!(long_parts >= 1 && parts.len() == 1),
            "aperiodic" => assert_eq!(long_parts, 0),
            "mixed" => assert!(long_parts >= 1 && parts.len() >= 2),
            _ => unreachable!(),
        }
    }

    // (d) Independent spacing set: unselected stretches span γ..=2γ nodes.
    for gamma in [5usize, 9] {
        for n in [1024usize, 4096] {
            let inst = Instance::generate(&problem, Topology::Cycle, n, 23).unwrap();
            let set = independent_spacing_set(&inst, gamma).unwrap();
            assert!(!set.is_empty());
            let m = set.len();
            for i in 0..m {
                let gap = (set[(i + 1) % m] + n - set[i]) % n - 1;
                assert!(
                    gap >= gamma && gap <= 2 * gamma,
                    "gamma={gamma} n={n}: complement component of {gap} nodes"
                );
            }
        }
    }
    println!("criterion 4 PASS: layouts tile, runs >= ell with fixed radius, partitions valid, complement in [gamma, 2*gamma]");
}

// ---------------------------------------------------------------------------
// Criterion 5: machine-compilation pipeline.
// ---------------------------------------------------------------------------

/// The eight corruption classes applied to a good encoding of `m`.
fn corruptions(m: &LbaMachine, b: usize) -> Vec<(&'static str, Vec<PiInput>)> {
    let base = encode_good_input(m, Phi::A, b + 4).unwrap();
    let block = |i: usize| (i - 1) * (b + 1) + 1;
    let mut out = Vec::new();

    let mut v = base.clone();
    v[block(2)] = PiInput::Start(Phi::B);
    out.push(("spurious start", v));

    let mut v = base.clone();
    v[block(1) + 1] = PiInput::Tape { c: m.syml, s: m.q0, h: false };
    out.push(("bad initialization", v));

    let mut v = base.clone();
    v[block(2)] = PiInput::Tape { c: m.sym0, s: m.q0, h: false };
    out.push(("tape too long", v));

    let mut v = base.clone();
    v[block(2) + 2] = PiInput::Separator;
    out.push(("tape too short", v));

    let mut v = base.clone();
    let PiInput::Tape { s, h, .. } = v[block(2) + b] else { panic!() };
    v[block(2) + b] = PiInput::Tape { c: m.sym1, s, h };
    out.push(("copy mismatch", v));

    let mut v = base.clone();
    let PiInput::Tape { c, h, .. } = v[block(2) + 1] else { panic!() };
    let foreign = (0..m.state_names.len() as u8)
        .find(|&q| matches!(v[block(2) + 1], PiInput::Tape { s, .. } if s != q))
        .unwrap();
    v[block(2) + 1] = PiInput::Tape { c, s: foreign, h };
    out.push(("inconsistent states", v));

    let mut v = base.clone();
    let PiInput::Tape { c, s, .. } = v[block(2) + 2] else { panic!() };
    v[block(2) + 2] = PiInput::Tape { c, s, h: false };
    out.push(("broken transition", v));

    let mut v = base.clone();
    let head_pos = (block(2) + 1..=block(2) + b)
        .find(|&p| matches!(v[p], PiInput::Tape { h: true, .. }))
        .unwrap();
    let other = if head_pos == block(2) + 1 { head_pos + 1 } else { head_pos - 1 };
    let PiInput::Tape { c, s, .. } = v[other] else { panic!() };
    v[other] = PiInput::Tape { c, s, h: true };
    out.push(("two heads", v));

    out
}

#[test]
fn criterion_5_machine_pipeline() {
    // (a) Solver radius is exactly 2 + (B+1)·T for both machine families,
    // and the binary counter's trace grows at least 1.5x per tape cell.
    let mut binary_t = Vec::new();
    for b in [2usize, 3, 4] {
        for m in [unary_counter(b), binary_counter(b)] {
            let RunResult::Halted(trace) = lba_run(&m, 1 << 22).unwrap() else {
                panic!("B={b}: counter machine must halt");
            };
            assert_eq!(canonical_radius(&m).unwrap(), 2 + (b + 1) * trace.len());
        }
        let RunResult::Halted(trace) = lba_run(&binary_counter(b), 1 << 22).unwrap() else {
            unreachable!()
        };
        binary_t.push(trace.len());
    }
    for w in binary_t.windows(2) {
        assert!(w[1] as f64 >= 1.5 * w[0] as f64, "trace growth too slow: {binary_t:?}");
    }

    // (b) The verifier accepts the canonical solver's output on good inputs
    // and on one fixture from each corruption class.
    for b in [2usize, 3, 4] {
        for m in [unary_counter(b), binary_counter(b)] {
            let pi = compile_pi(&m).unwrap();
            let good = encode_good_input(&m, Phi::A, b + 4).unwrap();
            let out = canonical_solve(&pi, &good).unwrap();
            assert!(pi.verify(&good, &out).is_empty(), "B={b}: good input rejected");
            for (name, bad) in corruptions(&m, b) {
                let out = canonical_solve(&pi, &bad).unwrap();
                let viol = pi.verify(&bad, &out);
                assert!(viol.is_empty(), "B={b} {name}: violations at {viol:?}");
            }
        }
    }

    // (c) The forcing probe: on good inputs of up to 14 nodes the start flag
    // is forced everywhere; each corruption class breaks the forcing.
    let m = unary_counter(2);
    let pi = compile_pi(&m).unwrap();
    for padding in 1..=4 {
        let good = encode_good_input(&m, Phi::A, padding).unwrap();
        assert!(good.len() <= 14);
        assert!(pi_lower_bound_probe(&pi, &good), "padding={padding}: probe rejected a good input");
    }
    for (name, bad) in corruptions(&m, 2) {
        let bad = &bad[..14];
        assert!(!pi_lower_bound_probe(&pi, bad), "{name}: probe still forced after corruption");
    }
    println!("criterion 5 PASS: radius = 2+(B+1)T, 8 corruption classes verified, probe exact at n<=14");
}

// ---------------------------------------------------------------------------
// Criterion 6: normalization formulas and round trips.
// ---------------------------------------------------------------------------

fn alternation() -> PredecessorLcl {
    let mut allowed = std::collections::HashSet::new();
    for pi in 0..2u16 {
        for i in 0..2u16 {
            for po in 0..2u16 {
                for o in 0..2u16 {
                    if po != o {
                        allowed.insert((pi, po, i, o));
                    }
                }
            }
        }
    }
    PredecessorLcl { name: "alternation".into(), alpha: 2, beta: 2, allowed }
}

fn mod3_follow() -> PredecessorLcl {
    let mut allowed = std::collections::HashSet::new();
    for pi in 0..4u16 {
        for i in 0..4u16 {
            for po in 0..3u16 {
                for o in 0..3u16 {
                    if o == i % 3 || o == po {
                        allowed.insert((pi, po, i, o));
                    }
                }
            }
        }
    }
    PredecessorLcl { name: "mod3-follow".into(), alpha: 4, beta: 3, allowed }
}

#[test]
fn criterion_6_normalization() {
    for p in [alternation(), mod3_follow()] {
        // Alphabet-size formulas, exactly.
        let s1 = normalize_stage1(&p).unwrap();
        assert_eq!(s1.beta, p.alpha * p.beta, "stage-1 output count");
        let (a, gamma) = block_geometry(p.alpha);
        let want_a = (usize::BITS - (p.alpha - 1).leading_zeros()).max(1) as usize;
        assert_eq!(a, want_a, "payload bits");
        assert_eq!(gamma, 2 * a + 3, "block length");
        let norm = normalize_stage2(&s1).unwrap();
        assert_eq!(
            stage2_output_count(p.alpha, s1.beta),
            (1usize << gamma) * (s1.beta + 3),
            "stage-2 output count"
        );
        assert_eq!(norm.sigma_out.len(), stage2_output_count(p.alpha, s1.beta));
        assert_eq!(norm.sigma_in.len(), 2, "normalized inputs are binary");

        // A tiny encoded instance (8 blocks, n = 8γ) solves and verifies.
        let src: Vec<u16> = (0..8u16).map(|i| (i * 5 + 1) % p.alpha as u16).collect();
        let bits = encode_stage2_input(p.alpha, &src);
        assert_eq!(bits.len(), 8 * gamma);
        let out = solve_stage2(&s1, &p, &bits).unwrap();
        let bad = verify_normalized(&norm, &bits, &out).unwrap();
        assert!(bad.is_empty(), "{}: violations at {bad:?}", p.name);

        // A corrupted encoding gets an accepted pointer labeling...
        let mut broken = bits.clone();
        broken[3 * gamma + a + 1] = 1; // the block's mandatory zero slot
        let out = stage2_error_labeling(&s1, &broken, 3 * gamma);
        let bad = verify_normalized(&norm, &broken, &out).unwrap();
        assert!(bad.is_empty(), "{}: pointer labeling rejected at {bad:?}", p.name);

        // ...while claiming a flaw in a valid encoding is rejected wherever
        // the claim is made (interior positions; a window must fit).
        for at in 0..bits.len() - gamma {
            let out = stage2_error_labeling(&s1, &bits, at);
            let bad = verify_normalized(&norm, &bits, &out).unwrap();
            assert!(!bad.is_empty(), "{}: injected proof at {at} accepted", p.name);
        }
    }
    println!("criterion 6 PASS: alphabet formulas exact, 8-block instance round-trips, injected proofs rejected");
}

// ---------------------------------------------------------------------------
// Criterion 7: CLI determinism.
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_cli_determinism() {
    let fx = fixtures_dir();
    let path = |p: &str| fx.join(p).to_str().unwrap().to_string();
    let commands: Vec<Vec<String>> = vec![
        vec!["classify".into(), path("copy.lcl.json")],
        vec!["solve".into(), path("no-triple.lcl.json"), "--n".into(), "12".into()],
        vec![
            "simulate".into(),
            path("3col.lcl.json"),
            "--n".into(),
            "64".into(),
            "--seed".into(),
            "7".into(),
        ],
        vec!["types".into(), path("allwin.lcl.json")],
        vec![
            "pump".into(),
            path("copy.lcl.json"),
            "--word".into(),
            "0,1,0".into(),
            "--target".into(),
            "9".into(),
        ],
        vec!["compile-lba".into(), path("lba/unary_counter_b3.json")],
        vec![
            "encode-good-input".into(),
            path("lba/unary_counter_b2.json"),
            "--padding".into(),
            "4".into(),
        ],
        vec!["normalize".into(), path("alternation.pred.json")],
    ];
    let run = |args: &[String]| -> (Vec<u8>, Vec<u8>, i32) {
        let out = Command::new(env!("CARGO_BIN_EXE_lcl"))
            .args(args)
            .output()
            .expect("binary runs");
        // Drop the single volatile field: the timestamp line.
        let stdout: Vec<u8> = String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .filter(|l| !l.contains("\"timestamp\""))
            .collect::<Vec<_>>()
            .join("\n")
            .into_bytes();
        (stdout, out.stderr, out.status.code().unwrap())
    };
    for args in &commands {
        let first = run(args);
        let second = run(args);
        assert_eq!(first, second, "non-deterministic output for {args:?}");
        assert!(!first.0.is_empty(), "{args:?}: no JSON report");
    }
    // Exit codes encode the classification verdict.
    for (fixture, want) in [("copy.lcl.json", 0), ("3col.lcl.json", 1), ("2col.lcl.json", 2)] {
        let (_, _, code) = run(&["classify".into(), path(fixture)]);
        assert_eq!(code, want, "{fixture}: wrong exit code");
    }
    println!("criterion 7 PASS: all 8 subcommands byte-identical across reruns (timestamp excluded)");
}

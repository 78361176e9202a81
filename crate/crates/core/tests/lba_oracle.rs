//! Oracle tests for the bounded-tape machine pipeline: execution traces,
//! path encoding round-trips, the compiled verifier, the canonical solver on
//! good and corrupted encodings, and the exhaustive forcing probe.

use lcl_core::lba::{
    binary_counter, canonical_radius, canonical_solve, compile_pi, decode_good_input,
    encode_good_input, lba_run, pi_lower_bound_probe, spinning_machine, unary_counter,
    LbaMachine, Move, Phi, PiInput, PiOutput, RunResult,
};

fn trace_len(m: &LbaMachine) -> usize {
    match lba_run(m, 1 << 22).unwrap() {
        RunResult::Halted(t) => t.len(),
        RunResult::Looping(_) => panic!("expected halt"),
    }
}

#[test]
fn unary_counter_trace_lengths() {
    // One configuration per head position 1..=B, plus the halting one.
    for b in 2..=6 {
        assert_eq!(trace_len(&unary_counter(b)), b + 1);
    }
}

#[test]
fn binary_counter_grows_exponentially() {
    let t: Vec<usize> = (2..=5).map(|b| trace_len(&binary_counter(b))).collect();
    for w in t.windows(2) {
        assert!(w[1] as f64 >= 1.5 * w[0] as f64, "growth too slow: {t:?}");
    }
}

#[test]
fn immediate_halt_and_loop_detection() {
    let m = LbaMachine::from_json(
        r#"{"states":["h"],"q0":"h","qf":"h","gamma":["0","1","L","R"],"delta":[],"B":3}"#,
    )
    .unwrap();
    match lba_run(&m, 1 << 20).unwrap() {
        RunResult::Halted(t) => assert_eq!(t.len(), 1),
        _ => panic!("a machine whose initial state is final halts at once"),
    }
    match lba_run(&spinning_machine(3), 1 << 20).unwrap() {
        RunResult::Looping(_) => {}
        _ => panic!("the spinning machine must be reported as looping"),
    }
}

#[test]
fn json_round_trip() {
    let m = binary_counter(4);
    let text = m.to_json().unwrap();
    let m2 = LbaMachine::from_json(&text).unwrap();
    assert_eq!(m.b, m2.b);
    assert_eq!(trace_len(&m), trace_len(&m2));
    assert_eq!(m2.delta[&(m2.q0, m2.syml)].2, Move::Right);
}

#[test]
fn encoding_round_trips_and_has_the_documented_shape() {
    for b in 2..=4 {
        let m = unary_counter(b);
        let t = trace_len(&m);
        let enc = encode_good_input(&m, Phi::A, 3).unwrap();
        assert_eq!(enc.len(), 1 + t * (b + 1) + 3);
        assert_eq!(enc[0], PiInput::Start(Phi::A));
        for i in 1..=t {
            assert_eq!(enc[(i - 1) * (b + 1) + 1], PiInput::Separator);
        }
        // First block encodes the initial configuration: head on cell 1.
        assert_eq!(enc[2], PiInput::Tape { c: m.syml, s: m.q0, h: true });
        assert_eq!(enc[1 + b], PiInput::Tape { c: m.symr, s: m.q0, h: false });
        let decoded = decode_good_input(&m, &enc).unwrap();
        match lba_run(&m, 1 << 20).unwrap() {
            RunResult::Halted(trace) => assert_eq!(decoded, trace),
            _ => unreachable!(),
        }
    }
    assert!(encode_good_input(&spinning_machine(3), Phi::A, 0).is_err());
}

/// The eight corruption classes, each as (name, corrupted input path).
/// Positions are derived from the block layout: block `i` (1-based) starts
/// at `(i-1)(B+1)+1` with its separator, cells at offsets `1..=B`.
fn corruptions(m: &LbaMachine, b: usize) -> Vec<(&'static str, Vec<PiInput>)> {
    let base = encode_good_input(m, Phi::A, b + 4).unwrap();
    let block = |i: usize| (i - 1) * (b + 1) + 1;
    let mut out = Vec::new();

    // 1. A second start label in the middle of the path.
    let mut v = base.clone();
    v[block(2)] = PiInput::Start(Phi::B);
    out.push(("spurious start", v));

    // 2. Broken initial configuration: the head flag is missing in block 1.
    let mut v = base.clone();
    v[block(1) + 1] = PiInput::Tape { c: m.syml, s: m.q0, h: false };
    out.push(("bad initialization", v));

    // 3. Tape too long: the second separator becomes a tape cell.
    let mut v = base.clone();
    v[block(2)] = PiInput::Tape { c: m.sym0, s: m.q0, h: false };
    out.push(("tape too long", v));

    // 4. Tape too short: an extra separator inside block 2.
    let mut v = base.clone();
    v[block(2) + 2] = PiInput::Separator;
    out.push(("tape too short", v));

    // 5. A cell far from the head changed content: flip the right endpoint
    //    of block 2 (its block-1 counterpart has no head).
    let mut v = base.clone();
    let PiInput::Tape { s, h, .. } = v[block(2) + b] else { panic!() };
    v[block(2) + b] = PiInput::Tape { c: m.sym1, s, h };
    out.push(("copy mismatch", v));

    // 6. The first cell of block 2 carries a foreign state.
    let mut v = base.clone();
    let PiInput::Tape { c, h, .. } = v[block(2) + 1] else { panic!() };
    let foreign = (0..m.state_names.len() as u8)
        .find(|&q| matches!(v[block(2) + 1], PiInput::Tape { s, .. } if s != q))
        .unwrap();
    v[block(2) + 1] = PiInput::Tape { c, s: foreign, h };
    out.push(("inconsistent states", v));

    // 7. The head flag is cleared where the transition put it (block 2,
    //    cell 2 for a right-moving first step).
    let mut v = base.clone();
    let PiInput::Tape { c, s, .. } = v[block(2) + 2] else { panic!() };
    v[block(2) + 2] = PiInput::Tape { c, s, h: false };
    out.push(("broken transition", v));

    // 8. A second head inside block 2, adjacent to the real one (its block-1
    //    counterpart content matches, so the copy-mismatch case stays quiet).
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
fn verifier_accepts_solver_output_on_good_and_corrupted_paths() {
    for b in [3usize, 4] {
        let m = unary_counter(b);
        let pi = compile_pi(&m).unwrap();
        let good = encode_good_input(&m, Phi::B, b + 4).unwrap();
        let out = canonical_solve(&pi, &good).unwrap();
        assert!(pi.verify(&good, &out).is_empty());
        // Non-empty nodes all repeat the flag on a good input.
        for (i, &inp) in good.iter().enumerate() {
            let want = if inp == PiInput::Empty { PiOutput::Empty } else { PiOutput::Start(Phi::B) };
            assert_eq!(out[i], want, "node {i}");
        }
        for (name, bad) in corruptions(&m, b) {
            let out = canonical_solve(&pi, &bad).unwrap();
            let viol = pi.verify(&bad, &out);
            assert!(viol.is_empty(), "{name} (B={b}): violations at {viol:?}");
        }
    }
}

#[test]
fn solver_emits_the_matching_error_chains() {
    let b = 3;
    let m = unary_counter(b);
    let pi = compile_pi(&m).unwrap();
    let expect_kind = |inputs: &[PiInput], probe: fn(&PiOutput) -> bool, name: &str| {
        let out = canonical_solve(&pi, inputs).unwrap();
        assert!(out.iter().any(probe), "{name}: expected chain missing: {out:?}");
    };
    let cs = corruptions(&m, b);
    expect_kind(&cs[1].1, |o| matches!(o, PiOutput::Error0(_)), cs[1].0);
    expect_kind(&cs[2].1, |o| matches!(o, PiOutput::Error1(_)), cs[2].0);
    expect_kind(&cs[3].1, |o| matches!(o, PiOutput::Error1(_)), cs[3].0);
    expect_kind(&cs[4].1, |o| matches!(o, PiOutput::Error2(_, _)), cs[4].0);
    expect_kind(&cs[5].1, |o| matches!(o, PiOutput::Error3), cs[5].0);
    expect_kind(&cs[6].1, |o| matches!(o, PiOutput::Error4(_, _, _)), cs[6].0);
    expect_kind(&cs[7].1, |o| matches!(o, PiOutput::Error5(_)), cs[7].0);
    // The copy-mismatch chain spans exactly one block width.
    let out = canonical_solve(&pi, &cs[4].1).unwrap();
    let payloads: Vec<usize> = out
        .iter()
        .filter_map(|o| match o {
            PiOutput::Error2(_, j) => Some(*j),
            _ => None,
        })
        .collect();
    assert_eq!(payloads, (0..=b + 1).collect::<Vec<_>>());
}

#[test]
fn measured_radius_matches_the_formula() {
    for b in 2..=4 {
        let m = unary_counter(b);
        assert_eq!(canonical_radius(&m).unwrap(), 2 + (b + 1) * (b + 1));
        let m = binary_counter(b);
        assert_eq!(canonical_radius(&m).unwrap(), 2 + (b + 1) * trace_len(&m));
    }
}

#[test]
fn forcing_probe_holds_on_good_inputs_and_fails_on_corrupted_ones() {
    // A two-step machine keeps the exhaustive probe small: B=2, trace
    // length 3, encoded length 10, a couple of empty nodes of padding.
    let m = unary_counter(2);
    let pi = compile_pi(&m).unwrap();
    let good = encode_good_input(&m, Phi::A, 4).unwrap();
    assert!(good.len() <= 14);
    assert!(pi_lower_bound_probe(&pi, &good));
    // Every corruption opens up at least one non-flag labeling.
    for (name, bad) in corruptions(&m, 2) {
        let bad: Vec<PiInput> = bad[..14.min(bad.len())].to_vec();
        assert!(!pi_lower_bound_probe(&pi, &bad), "{name}: probe should fail");
    }
}

#[test]
fn probe_rejects_mismatched_start_claims() {
    // A labeling claiming the wrong flag at the first node is never accepted.
    let m = unary_counter(2);
    let pi = compile_pi(&m).unwrap();
    let good = encode_good_input(&m, Phi::A, 2).unwrap();
    let mut out = canonical_solve(&pi, &good).unwrap();
    for o in &mut out {
        if *o == PiOutput::Start(Phi::A) {
            *o = PiOutput::Start(Phi::B);
        }
    }
    assert_eq!(pi.verify(&good, &out), vec![0]);
}

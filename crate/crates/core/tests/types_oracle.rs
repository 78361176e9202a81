//! The type engine against brute-force oracles: extendibility by full
//! enumeration, automaton transitions against direct signature computation,
//! and the pumping operations' type-preservation contracts.

use lcl_core::fixtures;
use lcl_core::problem::LclProblem;
use lcl_core::types::{
    complete_internal, extendible, relabel_after_replace, type_of, Tripartition, TypeAutomaton,
    TypeSignature,
};

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

/// Brute-force extendibility: enumerate every full output string, keep only
/// those matching the boundary pins, and test all interior windows directly.
fn oracle_extendible(problem: &LclProblem, inputs: &[u16], boundary_out: &[u16]) -> bool {
    let k = inputs.len();
    let r = problem.radius;
    let head = (2 * r).min(k);
    for out in all_strings(problem.sigma_out.len() as u16, k) {
        if out[..head] != boundary_out[..head] {
            continue;
        }
        if out[k - head..] != boundary_out[head..] {
            continue;
        }
        let interior_ok = (r..k.saturating_sub(r)).all(|p| {
            // Full (untruncated) window centered at p, inside the string.
            problem.consistent_on_path(inputs, &out, p)
                && p >= r
                && p + r < k
        });
        if interior_ok {
            return true;
        }
    }
    false
}

#[test]
fn extendibility_matches_brute_force() {
    for problem in [
        fixtures::copy_r1().unwrap(),
        fixtures::two_coloring().unwrap(),
        fixtures::three_coloring().unwrap(),
    ] {
        let r = problem.radius;
        let n_in = problem.sigma_in.len() as u16;
        let n_out = problem.sigma_out.len() as u16;
        for k in 4 * r..=4 * r + 2 {
            for inputs in all_strings(n_in, k) {
                for boundary in all_strings(n_out, 4 * r) {
                    assert_eq!(
                        extendible(&problem, &inputs, &boundary),
                        oracle_extendible(&problem, &inputs, &boundary),
                        "{} inputs={inputs:?} boundary={boundary:?}",
                        problem.name
                    );
                }
            }
        }
    }
}

#[test]
fn automaton_state_signature_matches_direct_computation() {
    for problem in [
        fixtures::copy_r0().unwrap(),
        fixtures::copy_r1().unwrap(),
        fixtures::two_coloring().unwrap(),
        fixtures::three_coloring().unwrap(),
        fixtures::all_windows().unwrap(),
    ] {
        let automaton = TypeAutomaton::build(&problem).unwrap();
        for len in 1..=6 {
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
}

#[test]
fn reversal_map_matches_reversed_strings() {
    for problem in [fixtures::copy_r1().unwrap(), fixtures::three_coloring().unwrap()] {
        let automaton = TypeAutomaton::build(&problem).unwrap();
        let rev = automaton.reversal.as_ref().expect("undirected problems get a reversal map");
        for len in 1..=6 {
            for w in all_strings(problem.sigma_in.len() as u16, len) {
                let s = automaton.state_of(&w);
                let mut back = w.clone();
                back.reverse();
                assert_eq!(rev[s], automaton.state_of(&back), "{} w={w:?}", problem.name);
            }
        }
    }
}

#[test]
fn exact_length_representatives_are_exact_and_complete() {
    let problem = fixtures::copy_r1().unwrap();
    let automaton = TypeAutomaton::build(&problem).unwrap();
    for len in 1..=6 {
        let reps = automaton.reps_of_length(len);
        // Each representative really has that length and that state.
        for (s, w) in &reps {
            assert_eq!(w.len(), len);
            assert_eq!(automaton.state_of(w), *s);
        }
        // The state set equals the brute-force reachable set at that length.
        let mut want: Vec<usize> =
            all_strings(2, len).iter().map(|w| automaton.state_of(w)).collect();
        want.sort_unstable();
        want.dedup();
        let mut got: Vec<usize> = reps.iter().map(|(s, _)| *s).collect();
        got.sort_unstable();
        assert_eq!(got, want, "len={len}");
    }
}

#[test]
fn pumping_preserves_type() {
    for problem in [fixtures::copy_r1().unwrap(), fixtures::two_coloring().unwrap()] {
        let automaton = TypeAutomaton::build(&problem).unwrap();
        let len = automaton.ell_pump + 1;
        for (_, w) in automaton.reps_of_length(len) {
            for target in [len, len + 1, len + 7, 3 * len] {
                let pumped = automaton.pump_to_length(&w, target).unwrap();
                assert!(pumped.len() >= target);
                assert_eq!(
                    type_of(&problem, &pumped).unwrap(),
                    type_of(&problem, &w).unwrap(),
                    "{} w={w:?} target={target}",
                    problem.name
                );
            }
        }
    }
}

#[test]
fn periodic_pump_parameters_give_equal_power_types() {
    for problem in [
        fixtures::copy_r1().unwrap(),
        fixtures::two_coloring().unwrap(),
        fixtures::all_windows().unwrap(),
    ] {
        let automaton = TypeAutomaton::build(&problem).unwrap();
        for w in all_strings(problem.sigma_in.len() as u16, 2) {
            let (m1, m2) = automaton.periodic_pump_params(&w).unwrap();
            assert!(m1 < m2);
            assert!(m2 <= automaton.ell_pump + 1, "{}: m2={m2}", problem.name);
            let pow = |m: usize| w.repeat(m);
            assert_eq!(
                type_of(&problem, &pow(m1)).unwrap(),
                type_of(&problem, &pow(m2)).unwrap()
            );
            // And the repetition really continues: m1 + 2(m2-m1) as well.
            assert_eq!(
                type_of(&problem, &pow(m1)).unwrap(),
                type_of(&problem, &pow(m1 + 2 * (m2 - m1))).unwrap()
            );
        }
    }
}

/// A unary radius-1 problem where strings of length up to 4 all have
/// distinct types: a prefix-state repeat is only guaranteed from length
/// (state count + 1) on.
#[test]
fn prefix_repeat_needs_state_count_plus_one() {
    let problem = fixtures::all_windows().unwrap();
    let automaton = TypeAutomaton::build(&problem).unwrap();
    assert_eq!(automaton.ell_pump, 4);
    // Length 4 = state count: all four prefixes have distinct states, so
    // pumping to a longer length must fail.
    let w = vec![0u16; 4];
    assert!(automaton.pump_to_length(&w, 10).is_err());
    // Length 5 pumps fine.
    let w = vec![0u16; 5];
    let pumped = automaton.pump_to_length(&w, 12).unwrap();
    assert_eq!(type_of(&problem, &pumped).unwrap(), type_of(&problem, &w).unwrap());
}

#[test]
fn relabeling_after_replacement_keeps_boundary_and_interior_consistency() {
    let problem = fixtures::three_coloring().unwrap();
    let r = problem.radius;
    let old = vec![0u16; 6];
    let new = vec![0u16; 10];
    assert_eq!(type_of(&problem, &old).unwrap(), type_of(&problem, &new).unwrap());
    // Any interior-consistent labeling of `new` maps back to `old`.
    let new_out = complete_internal(&problem, &new, &vec![None; 10]).unwrap();
    let old_out = relabel_after_replace(&problem, &old, &new, &new_out).unwrap();
    assert_eq!(old_out.len(), old.len());
    assert_eq!(&old_out[..2 * r], &new_out[..2 * r]);
    assert_eq!(&old_out[old.len() - 2 * r..], &new_out[new.len() - 2 * r..]);
    for p in r..old.len() - r {
        assert!(problem.consistent_on_path(&old, &old_out, p));
    }
}

#[test]
fn tripartition_regions() {
    // Long string: clean split.
    let t = Tripartition::new(10, 2);
    assert_eq!(t.d1, vec![0, 1, 8, 9]);
    assert_eq!(t.d2, vec![2, 3, 6, 7]);
    assert_eq!(t.d3, vec![4, 5]);
    // Short string: outer region wins, then the middle one.
    let t = Tripartition::new(5, 2);
    assert_eq!(t.d1, vec![0, 1, 3, 4]);
    assert_eq!(t.d2, vec![2]);
    assert!(t.d3.is_empty());
}

#[test]
fn short_strings_are_their_own_type() {
    let problem = fixtures::copy_r1().unwrap();
    let w = vec![0u16, 1, 0];
    assert_eq!(type_of(&problem, &w).unwrap(), TypeSignature::Short(w));
}

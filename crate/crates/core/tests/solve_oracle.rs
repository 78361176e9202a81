//! The completion DFS against a brute-force enumeration oracle.

use lcl_core::fixtures;
use lcl_core::instance::{Instance, Topology};
use lcl_core::problem::LclProblem;
use lcl_core::solve::{check_solvable_up_to, complete_cycle_lex, complete_path_lex, solve_instance};
use lcl_core::verify::verify_labeling;

/// Enumerates all outputs in lexicographic order and returns the first legal
/// one, honoring fixed cells and the per-node check mask.
fn oracle_lex_least(
    problem: &LclProblem,
    topology: Topology,
    inputs: &[u16],
    fixed: &[Option<u16>],
    check: &[bool],
) -> Option<Vec<u16>> {
    let n = inputs.len();
    let n_out = problem.sigma_out.len() as u16;
    let mut out = vec![0u16; n];
    loop {
        let respects_fixed = fixed
            .iter()
            .zip(&out)
            .all(|(f, &o)| f.map_or(true, |v| v == o));
        if respects_fixed {
            let legal = (0..n).all(|p| {
                !check[p]
                    || match topology {
                        Topology::Path => problem.consistent_on_path(inputs, &out, p),
                        Topology::Cycle => problem.consistent_on_cycle(inputs, &out, p),
                    }
            });
            if legal {
                return Some(out);
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if out[k] + 1 < n_out {
                out[k] += 1;
                for x in &mut out[k + 1..] {
                    *x = 0;
                }
                break;
            }
            out[k] = 0;
            if k == 0 {
                return None;
            }
        }
    }
}

fn all_inputs(n_in: u16, n: usize) -> Vec<Vec<u16>> {
    let mut acc = vec![vec![]];
    for _ in 0..n {
        acc = acc
            .into_iter()
            .flat_map(|v| {
                (0..n_in).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    acc
}

#[test]
fn path_completion_matches_oracle() {
    for problem in [
        fixtures::copy_r0().unwrap(),
        fixtures::copy_r1().unwrap(),
        fixtures::two_coloring().unwrap(),
        fixtures::three_coloring().unwrap(),
    ] {
        for n in 1..=5 {
            for inputs in all_inputs(problem.sigma_in.len() as u16, n) {
                // Free completion, all nodes checked.
                let fixed = vec![None; n];
                let check = vec![true; n];
                let got = complete_path_lex(&problem, &inputs, &fixed, &check);
                let want = oracle_lex_least(&problem, Topology::Path, &inputs, &fixed, &check);
                assert_eq!(got, want, "{} path n={n} inputs={inputs:?}", problem.name);

                // A pinned first cell and an unchecked last node.
                if n >= 2 {
                    let mut fixed = vec![None; n];
                    fixed[0] = Some((problem.sigma_out.len() as u16) - 1);
                    let mut check = vec![true; n];
                    check[n - 1] = false;
                    let got = complete_path_lex(&problem, &inputs, &fixed, &check);
                    let want =
                        oracle_lex_least(&problem, Topology::Path, &inputs, &fixed, &check);
                    assert_eq!(got, want, "{} pinned n={n} inputs={inputs:?}", problem.name);
                }
            }
        }
    }
}

#[test]
fn cycle_completion_matches_oracle() {
    for problem in [
        fixtures::copy_r0().unwrap(),
        fixtures::copy_r1().unwrap(),
        fixtures::two_coloring().unwrap(),
        fixtures::three_coloring().unwrap(),
    ] {
        let min_n = 2 * problem.radius + 1;
        for n in min_n..=min_n + 3 {
            for inputs in all_inputs(problem.sigma_in.len() as u16, n) {
                let fixed = vec![None; n];
                let check = vec![true; n];
                let got = complete_cycle_lex(&problem, &inputs, &fixed, &check);
                let want = oracle_lex_least(&problem, Topology::Cycle, &inputs, &fixed, &check);
                assert_eq!(got, want, "{} cycle n={n} inputs={inputs:?}", problem.name);
            }
        }
    }
}

#[test]
fn solve_instance_output_verifies() {
    let problem = fixtures::three_coloring().unwrap();
    for (topology, n) in [(Topology::Path, 7), (Topology::Cycle, 8), (Topology::Cycle, 7)] {
        let instance = Instance::generate(&problem, topology, n, 42).unwrap();
        let labeling = solve_instance(&problem, &instance).unwrap().unwrap();
        assert!(verify_labeling(&problem, &instance, &labeling).unwrap().is_empty());
    }
}

#[test]
fn two_coloring_unsolvable_exactly_on_odd_cycles() {
    let problem = fixtures::two_coloring().unwrap();
    let report = check_solvable_up_to(&problem, 7).unwrap();
    let got: Vec<(Topology, usize)> = report.iter().map(|u| (u.topology, u.n)).collect();
    assert_eq!(got, vec![(Topology::Cycle, 3), (Topology::Cycle, 5), (Topology::Cycle, 7)]);
}

#[test]
fn copy_and_three_coloring_always_solvable() {
    for problem in [fixtures::copy_r0().unwrap(), fixtures::three_coloring().unwrap()] {
        assert!(check_solvable_up_to(&problem, 6).unwrap().is_empty(), "{}", problem.name);
    }
}

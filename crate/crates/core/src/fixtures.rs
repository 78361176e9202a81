//! Built-in example problems used by tests and the command-line tool.

use crate::error::Result;
use crate::problem::{Alphabet, LclProblem};

/// Radius-0 copy: each node must output its own input bit. Solvable in zero
/// rounds, so it classifies as constant-time.
pub fn copy_r0() -> Result<LclProblem> {
    LclProblem::from_predicate(
        "copy",
        Alphabet::new(&["0", "1"], "sigma_in")?,
        Alphabet::new(&["0", "1"], "sigma_out")?,
        0,
        false,
        |cells, center| cells[center].1 == cells[center].0,
    )
}

/// Radius-1 copy used only to exercise the type engine on a binary-input,
/// radius-1 problem (its constant-time search space is far too large to
/// enumerate, so it is never fed to the classifier).
pub fn copy_r1() -> Result<LclProblem> {
    LclProblem::from_predicate(
        "copy-r1",
        Alphabet::new(&["0", "1"], "sigma_in")?,
        Alphabet::new(&["0", "1"], "sigma_out")?,
        1,
        false,
        |cells, center| cells[center].1 == cells[center].0,
    )
}

/// Proper 2-coloring (unlabeled input): adjacent nodes get distinct colors.
/// Requires global coordination on cycles.
pub fn two_coloring() -> Result<LclProblem> {
    LclProblem::from_predicate(
        "2col",
        Alphabet::new(&["a"], "sigma_in")?,
        Alphabet::new(&["W", "B"], "sigma_out")?,
        1,
        false,
        |cells, _| cells.windows(2).all(|p| p[0].1 != p[1].1),
    )
}

/// Proper 3-coloring (unlabeled input): adjacent nodes get distinct colors.
/// Solvable in Theta(log* n) rounds.
pub fn three_coloring() -> Result<LclProblem> {
    LclProblem::from_predicate(
        "3col",
        Alphabet::new(&["a"], "sigma_in")?,
        Alphabet::new(&["R", "G", "B"], "sigma_out")?,
        1,
        false,
        |cells, _| cells.windows(2).all(|p| p[0].1 != p[1].1),
    )
}

/// The trivial problem at radius 1: every window is allowed.
pub fn all_windows() -> Result<LclProblem> {
    LclProblem::from_predicate(
        "allwin",
        Alphabet::new(&["a"], "sigma_in")?,
        Alphabet::new(&["x"], "sigma_out")?,
        1,
        false,
        |_, _| true,
    )
}

/// Forbid three consecutive equal outputs (unlabeled input, binary output).
/// Any fixed periodic pattern would need an orientation to lay down `0110`-
/// style phases consistently, so constant time is impossible; a ruling
/// decomposition breaks symmetry in Theta(log* n).
pub fn no_triple_repeat() -> Result<LclProblem> {
    LclProblem::from_predicate(
        "no-triple",
        Alphabet::new(&["a"], "sigma_in")?,
        Alphabet::new(&["0", "1"], "sigma_out")?,
        1,
        false,
        |cells, _| cells.len() < 3 || !(cells[0].1 == cells[1].1 && cells[1].1 == cells[2].1),
    )
}

/// Every built-in problem that the classifier is expected to handle,
/// paired with nothing the caller has to know in advance.
pub fn classifier_fixtures() -> Result<Vec<LclProblem>> {
    Ok(vec![
        copy_r0()?,
        two_coloring()?,
        three_coloring()?,
        all_windows()?,
        no_triple_repeat()?,
    ])
}

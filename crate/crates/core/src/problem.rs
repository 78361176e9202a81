//! Problem model: label alphabets, radius-r window constraints, and the
//! binary-input normalized form, plus their JSON codecs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// An ordered label alphabet with O(1) name -> index lookup.
///
/// Labels are interned as `u16` indices; all engine code works on indices and
/// only codecs touch the label strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
    index: HashMap<String, u16>,
}

impl Alphabet {
    pub fn new(labels: &[impl AsRef<str>], field: &str) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::validation(format!("{field}: alphabet is empty")));
        }
        if labels.len() > u16::MAX as usize {
            return Err(Error::validation(format!("{field}: more than {} labels", u16::MAX)));
        }
        let mut index = HashMap::new();
        let mut owned = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let l = l.as_ref();
            if l.is_empty() {
                return Err(Error::validation(format!("{field}[{i}]: empty label")));
            }
            if index.insert(l.to_string(), i as u16).is_some() {
                return Err(Error::validation(format!("{field}[{i}]: duplicate label {l:?}")));
            }
            owned.push(l.to_string());
        }
        Ok(Alphabet { labels: owned, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn name(&self, i: u16) -> &str {
        &self.labels[i as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.labels
    }

    pub fn lookup(&self, name: &str) -> Option<u16> {
        self.index.get(name).copied()
    }

    /// Resolves a label name, reporting `context` in the error path.
    pub fn resolve(&self, name: &str, context: &str) -> Result<u16> {
        self.lookup(name)
            .ok_or_else(|| Error::validation(format!("{context}: unknown label {name:?}")))
    }

    pub fn indices(&self) -> impl Iterator<Item = u16> + Clone {
        0..self.labels.len() as u16
    }
}

/// A constraint window: the (input, output) pairs of a contiguous stretch of
/// up to `2r+1` nodes, with `center` marking which cell is the node under
/// evaluation. Truncated windows (length < 2r+1) describe nodes near path
/// endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    pub cells: Vec<(u16, u16)>,
    pub center: usize,
}

impl Window {
    pub fn mirrored(&self) -> Window {
        let mut cells = self.cells.clone();
        cells.reverse();
        Window { center: self.cells.len() - 1 - self.center, cells }
    }
}

/// An LCL problem on labeled paths/cycles: input/output alphabets, a checking
/// radius, and the set of allowed windows. A full labeling is legal iff every
/// node's window (truncated at path endpoints) is in the set.
#[derive(Debug, Clone)]
pub struct LclProblem {
    pub name: String,
    pub sigma_in: Alphabet,
    pub sigma_out: Alphabet,
    pub radius: usize,
    /// When false the problem is undirected: the window set is closed under
    /// reversal and matching is direction-insensitive.
    pub oriented: bool,
    windows: Vec<Window>,
    keys: HashSet<u128>,
    /// Mixed radix for one (input, output) cell in the window key.
    cell_radix: u128,
}

impl LclProblem {
    pub fn new(
        name: impl Into<String>,
        sigma_in: Alphabet,
        sigma_out: Alphabet,
        radius: usize,
        oriented: bool,
        windows: Vec<Window>,
    ) -> Result<Self> {
        let cell_radix = (sigma_in.len() as u128) * (sigma_out.len() as u128);
        // Keys must fit in u128: (len, center) header plus one digit per cell.
        let width = 2 * radius + 1;
        let mut max_key: u128 = (width as u128 + 1) * (width as u128 + 1);
        for _ in 0..width {
            max_key = max_key
                .checked_mul(cell_radix)
                .ok_or_else(|| Error::validation("alphabets too large for window indexing"))?;
        }
        let mut p = LclProblem {
            name: name.into(),
            sigma_in,
            sigma_out,
            radius,
            oriented,
            windows: Vec::new(),
            keys: HashSet::new(),
            cell_radix,
        };
        for (i, w) in windows.iter().enumerate() {
            p.validate_window(w, &format!("windows[{i}]"))?;
        }
        if !oriented {
            for (i, w) in windows.iter().enumerate() {
                let m = w.mirrored();
                if !windows.contains(&m) {
                    return Err(Error::validation(format!(
                        "windows[{i}]: undirected problem but mirrored window missing"
                    )));
                }
            }
        }
        for w in &windows {
            let key = p.window_key(&w.cells, w.center);
            p.keys.insert(key);
        }
        p.windows = windows;
        Ok(p)
    }

    fn validate_window(&self, w: &Window, path: &str) -> Result<()> {
        let width = 2 * self.radius + 1;
        if w.cells.is_empty() || w.cells.len() > width {
            return Err(Error::validation(format!(
                "{path}: window length {} outside [1, {width}]",
                w.cells.len()
            )));
        }
        if w.center >= w.cells.len() {
            return Err(Error::validation(format!(
                "{path}: center {} outside window of length {}",
                w.center,
                w.cells.len()
            )));
        }
        for (j, (i_lab, o_lab)) in w.cells.iter().enumerate() {
            if *i_lab as usize >= self.sigma_in.len() {
                return Err(Error::validation(format!("{path}.cells[{j}]: input label out of range")));
            }
            if *o_lab as usize >= self.sigma_out.len() {
                return Err(Error::validation(format!("{path}.cells[{j}]: output label out of range")));
            }
        }
        Ok(())
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    fn window_key(&self, cells: &[(u16, u16)], center: usize) -> u128 {
        let width = 2 * self.radius + 2;
        let mut key = (cells.len() as u128) * (width as u128) + center as u128;
        for &(i, o) in cells {
            key = key * self.cell_radix + (i as u128) * (self.sigma_out.len() as u128) + o as u128;
        }
        key
    }

    fn contains_exact(&self, cells: &[(u16, u16)], center: usize) -> bool {
        self.keys.contains(&self.window_key(cells, center))
    }

    /// Window membership test; for undirected problems a mirrored match also
    /// counts (the window set is closed under reversal, so this is equivalent
    /// to a direct lookup).
    pub fn check_window(&self, w: &Window) -> bool {
        if self.contains_exact(&w.cells, w.center) {
            return true;
        }
        if !self.oriented {
            let m = w.mirrored();
            return self.contains_exact(&m.cells, m.center);
        }
        false
    }

    /// Checks the node at `pos` of a fully labeled **path**.
    pub fn consistent_on_path(&self, inputs: &[u16], outputs: &[u16], pos: usize) -> bool {
        let n = inputs.len();
        let lo = pos.saturating_sub(self.radius);
        let hi = (pos + self.radius).min(n - 1);
        let cells: Vec<(u16, u16)> = (lo..=hi).map(|j| (inputs[j], outputs[j])).collect();
        self.contains_exact(&cells, pos - lo)
    }

    /// Checks the node at `pos` of a fully labeled **cycle** (requires
    /// `n >= 2r + 1`).
    pub fn consistent_on_cycle(&self, inputs: &[u16], outputs: &[u16], pos: usize) -> bool {
        let n = inputs.len();
        debug_assert!(n >= 2 * self.radius + 1);
        let cells: Vec<(u16, u16)> = (0..2 * self.radius + 1)
            .map(|d| {
                let j = (pos + n + d - self.radius) % n;
                (inputs[j], outputs[j])
            })
            .collect();
        self.contains_exact(&cells, self.radius)
    }

    /// Builds a problem from a predicate over candidate windows: every shape
    /// `(len, center)` with `len <= 2r+1` is enumerated and kept iff
    /// `pred(cells, center)` holds.
    pub fn from_predicate(
        name: impl Into<String>,
        sigma_in: Alphabet,
        sigma_out: Alphabet,
        radius: usize,
        oriented: bool,
        pred: impl Fn(&[(u16, u16)], usize) -> bool,
    ) -> Result<Self> {
        let width = 2 * radius + 1;
        let mut windows = Vec::new();
        let n_cells = sigma_in.len() * sigma_out.len();
        for len in 1..=width {
            // Skip shapes that cannot occur: a window of length `len` has its
            // center within `radius` of each end it is truncated at; every
            // (len, center) with center < len can occur for some n, so keep all.
            if n_cells.checked_pow(len as u32).is_none() {
                return Err(Error::validation("alphabets too large for window enumeration"));
            }
            for center in 0..len {
                let mut cells = vec![(0u16, 0u16); len];
                enumerate_cells(&sigma_in, &sigma_out, &mut cells, 0, &mut |cells| {
                    if pred(cells, center) {
                        windows.push(Window { cells: cells.to_vec(), center });
                    }
                });
            }
        }
        LclProblem::new(name, sigma_in, sigma_out, radius, oriented, windows)
    }
}

fn enumerate_cells(
    sigma_in: &Alphabet,
    sigma_out: &Alphabet,
    cells: &mut Vec<(u16, u16)>,
    at: usize,
    f: &mut impl FnMut(&[(u16, u16)]),
) {
    if at == cells.len() {
        f(cells);
        return;
    }
    for i in sigma_in.indices() {
        for o in sigma_out.indices() {
            cells[at] = (i, o);
            enumerate_cells(sigma_in, sigma_out, cells, at + 1, f);
        }
    }
}

// ---------------------------------------------------------------------------
// Normalized form
// ---------------------------------------------------------------------------

/// A normalized LCL: binary inputs, radius 1, verified on directed paths by
/// per-node (input, output) membership plus (output, predecessor-output)
/// membership.
#[derive(Debug, Clone)]
pub struct NormalizedLcl {
    pub name: String,
    pub sigma_in: Alphabet,
    pub sigma_out: Alphabet,
    /// Allowed (input, output) pairs, checked at every node.
    pub c_in_out: HashSet<(u16, u16)>,
    /// Allowed (output, predecessor-output) pairs, checked at every node with
    /// a predecessor.
    pub c_out_out: HashSet<(u16, u16)>,
}

impl NormalizedLcl {
    pub fn validate(&self) -> Result<()> {
        if self.sigma_in.len() != 2 {
            return Err(Error::validation(format!(
                "sigma_in: normalized problems have exactly 2 input labels, got {}",
                self.sigma_in.len()
            )));
        }
        for (k, &(i, o)) in self.c_in_out.iter().enumerate() {
            if i as usize >= self.sigma_in.len() || o as usize >= self.sigma_out.len() {
                return Err(Error::validation(format!("c_in_out[{k}]: label out of range")));
            }
        }
        for (k, &(o, p)) in self.c_out_out.iter().enumerate() {
            if o as usize >= self.sigma_out.len() || p as usize >= self.sigma_out.len() {
                return Err(Error::validation(format!("c_out_out[{k}]: label out of range")));
            }
        }
        Ok(())
    }

    /// Expresses the normalized problem as a general radius-1 window problem
    /// on directed paths, preserving the per-node violation set.
    ///
    /// A node is consistent iff its own (input, output) pair is allowed and,
    /// when a predecessor cell is visible, the (output, predecessor-output)
    /// pair is allowed; successor cells are unconstrained (the successor
    /// itself checks that pair).
    pub fn to_lcl_problem(&self) -> Result<LclProblem> {
        let ok_node = |i: u16, o: u16| self.c_in_out.contains(&(i, o));
        let ok_pair = |o: u16, prev: u16| self.c_out_out.contains(&(o, prev));
        LclProblem::from_predicate(
            format!("{}-as-windows", self.name),
            self.sigma_in.clone(),
            self.sigma_out.clone(),
            1,
            true,
            |cells, center| {
                let (i, o) = cells[center];
                if !ok_node(i, o) {
                    return false;
                }
                if center > 0 {
                    let (_, prev) = cells[center - 1];
                    if !ok_pair(o, prev) {
                        return false;
                    }
                }
                true
            },
        )
    }
}

// ---------------------------------------------------------------------------
// JSON codec
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct WindowFile {
    cells: Vec<(String, String)>,
    center: usize,
}

#[derive(Serialize, Deserialize)]
struct ProblemFile {
    name: String,
    sigma_in: Vec<String>,
    sigma_out: Vec<String>,
    radius: usize,
    oriented: bool,
    windows: Vec<WindowFile>,
}

impl LclProblem {
    pub fn to_json(&self) -> String {
        let file = ProblemFile {
            name: self.name.clone(),
            sigma_in: self.sigma_in.names().to_vec(),
            sigma_out: self.sigma_out.names().to_vec(),
            radius: self.radius,
            oriented: self.oriented,
            windows: self
                .windows
                .iter()
                .map(|w| WindowFile {
                    cells: w
                        .cells
                        .iter()
                        .map(|&(i, o)| {
                            (self.sigma_in.name(i).to_string(), self.sigma_out.name(o).to_string())
                        })
                        .collect(),
                    center: w.center,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("problem serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProblemFile =
            serde_json::from_str(text).map_err(|e| Error::Codec(e.to_string()))?;
        let sigma_in = Alphabet::new(&file.sigma_in, "sigma_in")?;
        let sigma_out = Alphabet::new(&file.sigma_out, "sigma_out")?;
        let mut windows = Vec::with_capacity(file.windows.len());
        for (k, w) in file.windows.iter().enumerate() {
            let mut cells = Vec::with_capacity(w.cells.len());
            for (j, (i_lab, o_lab)) in w.cells.iter().enumerate() {
                let i = sigma_in.resolve(i_lab, &format!("windows[{k}].cells[{j}].0"))?;
                let o = sigma_out.resolve(o_lab, &format!("windows[{k}].cells[{j}].1"))?;
                cells.push((i, o));
            }
            windows.push(Window { cells, center: w.center });
        }
        LclProblem::new(file.name, sigma_in, sigma_out, file.radius, file.oriented, windows)
    }
}

#[derive(Serialize, Deserialize)]
struct NormalizedFile {
    name: String,
    sigma_in: Vec<String>,
    sigma_out: Vec<String>,
    c_in_out: Vec<(String, String)>,
    c_out_out: Vec<(String, String)>,
}

impl NormalizedLcl {
    pub fn to_json(&self) -> String {
        let mut c_io: Vec<_> = self
            .c_in_out
            .iter()
            .map(|&(i, o)| (self.sigma_in.name(i).to_string(), self.sigma_out.name(o).to_string()))
            .collect();
        c_io.sort();
        let mut c_oo: Vec<_> = self
            .c_out_out
            .iter()
            .map(|&(o, p)| (self.sigma_out.name(o).to_string(), self.sigma_out.name(p).to_string()))
            .collect();
        c_oo.sort();
        let file = NormalizedFile {
            name: self.name.clone(),
            sigma_in: self.sigma_in.names().to_vec(),
            sigma_out: self.sigma_out.names().to_vec(),
            c_in_out: c_io,
            c_out_out: c_oo,
        };
        serde_json::to_string_pretty(&file).expect("normalized serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: NormalizedFile =
            serde_json::from_str(text).map_err(|e| Error::Codec(e.to_string()))?;
        let sigma_in = Alphabet::new(&file.sigma_in, "sigma_in")?;
        let sigma_out = Alphabet::new(&file.sigma_out, "sigma_out")?;
        let mut c_in_out = HashSet::new();
        for (k, (i, o)) in file.c_in_out.iter().enumerate() {
            c_in_out.insert((
                sigma_in.resolve(i, &format!("c_in_out[{k}].0"))?,
                sigma_out.resolve(o, &format!("c_in_out[{k}].1"))?,
            ));
        }
        let mut c_out_out = HashSet::new();
        for (k, (o, p)) in file.c_out_out.iter().enumerate() {
            c_out_out.insert((
                sigma_out.resolve(o, &format!("c_out_out[{k}].0"))?,
                sigma_out.resolve(p, &format!("c_out_out[{k}].1"))?,
            ));
        }
        let p = NormalizedLcl { name: file.name, sigma_in, sigma_out, c_in_out, c_out_out };
        p.validate()?;
        Ok(p)
    }
}

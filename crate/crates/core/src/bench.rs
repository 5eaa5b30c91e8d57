//! Benchmark grids: max pairwise LCS against the matching bound over a grid of
//! `(construction, n, k)` cells.
//!
//! A grid spec is `[kind:]key=v1,v2,…;key=v1,…` and expands to the cartesian
//! product of its value lists:
//!
//! | kind        | keys             | cell                                 |
//! |-------------|------------------|--------------------------------------|
//! | `algebraic` | `k` and `n`/`s1` | general build; `s1` gives `n = k²s1³` |
//! | `hadamard`  | `k` and `s`/`n`  | Hadamard build                       |
//! | `random`    | `k` and `n`      | one uniform random set               |
//!
//! `kind` defaults to `algebraic`.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::algebraic::build_general;
use crate::bounds::{random_set, trial_rng};
use crate::error::{Error, Result};
use crate::hadamard::{build_hadamard_for_n, build_hadamard_set, lcs_bound};
use crate::numeric::{cube_root_threshold, two_e_sqrt, within_cube_root_bound};
use crate::subseq::lcs_all_pairs;

pub const CSV_HEADER: &str = "construction,n,k,max_lcs,bound,elapsed_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Algebraic { n: u64, k: u64 },
    Hadamard { k: usize, s: Option<u64>, n: Option<u64> },
    Random { n: u64, k: u64 },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn parse_values(key: &str, list: &str) -> Result<Vec<u64>> {
    let values = list
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|e| bad(format!("bad value `{t}` for `{key}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(bad(format!("empty value list for `{key}`")));
    }
    Ok(values)
}

/// Expands one grid spec into cells, in key order (outer loop over `k`).
pub fn parse_grid(spec: &str) -> Result<Vec<Cell>> {
    let (kind, body) = match spec.split_once(':') {
        Some((kind, body)) => (kind.trim(), body),
        None => ("algebraic", spec),
    };
    let mut keys: BTreeMap<&str, Vec<u64>> = BTreeMap::new();
    for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, list) = part.split_once('=').ok_or_else(|| bad(format!("expected key=values, got `{part}`")))?;
        let key = key.trim();
        if keys.insert(key, parse_values(key, list)?).is_some() {
            return Err(bad(format!("duplicate key `{key}`")));
        }
    }
    let ks = keys.remove("k").ok_or_else(|| bad("grid needs a `k` list"))?;
    let allowed: &[&str] = match kind {
        "algebraic" => &["n", "s1"],
        "hadamard" => &["s", "n"],
        "random" => &["n"],
        other => return Err(bad(format!("unknown grid kind `{other}`"))),
    };
    if keys.len() != 1 || !allowed.contains(keys.keys().next().unwrap()) {
        return Err(bad(format!("`{kind}` grid needs `k` and exactly one of {allowed:?}")));
    }
    let (&size_key, sizes) = keys.iter().next().unwrap();
    let mut cells = Vec::with_capacity(ks.len() * sizes.len());
    for &k in &ks {
        for &v in sizes {
            cells.push(match (kind, size_key) {
                ("algebraic", "n") => Cell::Algebraic { n: v, k },
                ("algebraic", _) => {
                    let n = k.checked_mul(k).and_then(|k2| v.checked_pow(3).and_then(|c| c.checked_mul(k2)));
                    Cell::Algebraic { n: n.ok_or_else(|| bad("grid size overflows"))?, k }
                }
                ("hadamard", "s") => Cell::Hadamard { k: k as usize, s: Some(v), n: None },
                ("hadamard", _) => Cell::Hadamard { k: k as usize, s: None, n: Some(v) },
                _ => Cell::Random { n: v, k },
            });
        }
    }
    Ok(cells)
}

/// One evaluated grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub construction: &'static str,
    pub n: usize,
    pub k: usize,
    pub max_lcs: usize,
    /// Bound rendered for the CSV (rounded up where irrational).
    pub bound: String,
    pub holds: bool,
    pub elapsed_ms: u128,
}

impl Row {
    pub fn to_csv(&self, with_timing: bool) -> String {
        let ms = if with_timing { self.elapsed_ms } else { 0 };
        format!("{},{},{},{},{},{}", self.construction, self.n, self.k, self.max_lcs, self.bound, ms)
    }
}

fn round_up_3(x: f64) -> String {
    format!("{:.3}", (x * 1000.0).ceil() / 1000.0)
}

/// Evaluates one cell; `index` selects the random stream for random cells.
pub fn run_cell(cell: Cell, index: u64, seed: u64, max_size: u64) -> Result<Row> {
    let start = Instant::now();
    let (construction, set) = match cell {
        Cell::Algebraic { n, k } => ("algebraic", build_general(n, k)?),
        Cell::Hadamard { k, s: Some(s), .. } => ("hadamard", build_hadamard_set(k, s, max_size)?),
        Cell::Hadamard { k, n, .. } => ("hadamard", build_hadamard_for_n(k, n.unwrap_or(0), max_size)?),
        Cell::Random { n, k } => ("random", random_set(n as usize, k as usize, seed, &mut trial_rng(seed, index))?),
    };
    let max_lcs = lcs_all_pairs(&set)?.max_lcs();
    let (n, k) = (set.n(), set.k());
    let (bound, holds) = match cell {
        Cell::Algebraic { .. } => {
            let nk = n as u128 * k as u128;
            (round_up_3(cube_root_threshold(32.0, nk)), within_cube_root_bound(max_lcs as u64, 32, nk))
        }
        Cell::Hadamard { .. } => {
            let s = match set.provenance() {
                crate::perm::Provenance::Hadamard { s, .. } => *s,
                _ => unreachable!(),
            };
            let b = lcs_bound(k, s);
            (b.to_string(), max_lcs as u128 <= b)
        }
        Cell::Random { .. } => {
            let t = two_e_sqrt(n as u64);
            (round_up_3(t), (max_lcs as f64) < t)
        }
    };
    Ok(Row { construction, n, k, max_lcs, bound, holds, elapsed_ms: start.elapsed().as_millis() })
}

/// Evaluates all cells in parallel; rows come back in grid order.
pub fn run_grid(cells: &[Cell], seed: u64, max_size: u64) -> Result<Vec<Row>> {
    if cells.is_empty() {
        return Err(bad("empty grid"));
    }
    cells.par_iter().enumerate().map(|(i, &c)| run_cell(c, i as u64, seed, max_size)).collect()
}

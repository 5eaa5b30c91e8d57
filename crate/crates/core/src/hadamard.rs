//! Hadamard matrices and the digit-wise outer-product construction.
//!
//! Element `x` of `[s^(k-1)]` is written as `k - 1` base-`s` digits (most
//! significant first). Permutation `i` keeps digit `ℓ` when `H[i][ℓ] = +1` and
//! reverses it when `H[i][ℓ] = -1`, using columns `1..k` of a normalized
//! Hadamard matrix. Two rows agree on exactly `k/2 - 1` of those columns, which
//! caps every pairwise LCS at `s^(k/2 - 1)`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::ceil_root;
use crate::perm::{PermSet, Permutation, Provenance};
use crate::prime::{is_prime, legendre};

/// Default cap on `s^(k-1)`.
pub const DEFAULT_MAX_SIZE: u64 = 1 << 24;

/// A square `±1` matrix whose distinct rows differ in exactly half their entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl HadamardMatrix {
    /// Validates a row-major `±1` matrix.
    pub fn new(order: usize, entries: Vec<i8>) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotHadamard("order must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(Error::NotHadamard(format!("expected {} entries, got {}", order * order, entries.len())));
        }
        if entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::NotHadamard("entries must be +1 or -1".into()));
        }
        if order > 1 && order % 2 == 1 {
            return Err(Error::NotHadamard(format!("odd order {order}")));
        }
        let h = Self { order, entries };
        for i in 0..order {
            for j in i + 1..order {
                let differ = (0..order).filter(|&c| h.get(i, c) != h.get(j, c)).count();
                if differ * 2 != order {
                    return Err(Error::NotHadamard(format!("rows {i} and {j} differ in {differ} entries")));
                }
            }
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.order).all(|t| self.get(0, t) == 1 && self.get(t, 0) == 1)
    }

    /// Negates rows, then columns, so the first row and column are all `+1`.
    pub fn normalize(&self) -> HadamardMatrix {
        let k = self.order;
        let mut entries = self.entries.clone();
        for r in 0..k {
            if entries[r * k] == -1 {
                entries[r * k..(r + 1) * k].iter_mut().for_each(|e| *e = -*e);
            }
        }
        for c in 0..k {
            if entries[c] == -1 {
                (0..k).for_each(|r| entries[r * k + c] = -entries[r * k + c]);
            }
        }
        Self { order: k, entries }
    }

    pub fn negate_row(&self, row: usize) -> HadamardMatrix {
        let mut out = self.clone();
        let k = self.order;
        out.entries[row * k..(row + 1) * k].iter_mut().for_each(|e| *e = -*e);
        out
    }

    pub fn negate_col(&self, col: usize) -> HadamardMatrix {
        let mut out = self.clone();
        let k = self.order;
        (0..k).for_each(|r| out.entries[r * k + col] = -out.entries[r * k + col]);
        out
    }

    /// Parses the `+`/`-` text block written by `Display`.
    pub fn parse(text: &str) -> Result<HadamardMatrix> {
        let rows: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let mut entries = Vec::with_capacity(rows.len() * rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.chars().count() != rows.len() {
                return Err(Error::Format { line: i + 1, msg: format!("expected {} entries", rows.len()) });
            }
            for ch in row.chars() {
                entries.push(match ch {
                    '+' => 1,
                    '-' => -1,
                    other => return Err(Error::Format { line: i + 1, msg: format!("unexpected `{other}`") }),
                });
            }
        }
        HadamardMatrix::new(rows.len(), entries)
    }
}

impl fmt::Display for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.order {
            for &e in self.row(r) {
                f.write_str(if e == 1 { "+" } else { "-" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Sylvester doubling `H -> [[H, H], [H, -H]]` from `[[1]]`.
pub fn sylvester(order: usize) -> Result<HadamardMatrix> {
    if order == 0 || !order.is_power_of_two() {
        return Err(Error::UnsupportedOrder(order));
    }
    let entries = (0..order * order)
        .map(|t| {
            let (r, c) = (t / order, t % order);
            if (r & c).count_ones() % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok(HadamardMatrix { order, entries })
}

/// Paley type I for `order = q + 1` with `q` a prime `≡ 3 (mod 4)`, normalized.
pub fn paley(order: usize) -> Result<HadamardMatrix> {
    let q = order.checked_sub(1).filter(|&q| q % 4 == 3 && is_prime(q as u64)).ok_or(Error::UnsupportedOrder(order))?;
    let chi = |d: usize| legendre(d as u64, q as u64);
    // H = I + S with S = [[0, 1^T], [-1, Q]] and Q the Jacobsthal matrix
    let mut entries = vec![0i8; order * order];
    for r in 0..order {
        for c in 0..order {
            let s = match (r, c) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => -1,
                _ => chi((c + q - r) % q),
            };
            entries[r * order + c] = s + if r == c { 1 } else { 0 };
        }
    }
    Ok(HadamardMatrix::new(order, entries)?.normalize())
}

/// A normalized Hadamard matrix of the given order from whichever constructor applies.
pub fn hadamard_of_order(order: usize) -> Result<HadamardMatrix> {
    if order.is_power_of_two() {
        sylvester(order)
    } else {
        paley(order)
    }
}

/// Columns among `1..k` where rows `i` and `j` agree.
pub fn agreement_columns(h: &HadamardMatrix, i: usize, j: usize) -> Result<Vec<usize>> {
    if i == j {
        return Err(Error::OutOfRange(format!("rows must differ, got {i} twice")));
    }
    if i >= h.order || j >= h.order {
        return Err(Error::OutOfRange(format!("row index outside 0..{}", h.order)));
    }
    Ok((1..h.order).filter(|&c| h.get(i, c) == h.get(j, c)).collect())
}

/// Base-`s` digits of `x - 1`, most significant first, presented 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitVector {
    pub base: u64,
    pub digits: Vec<u64>,
}

impl DigitVector {
    pub fn of(x: u64, base: u64, len: usize) -> DigitVector {
        let mut r = x - 1;
        let mut digits = vec![0; len];
        for d in digits.iter_mut().rev() {
            *d = r % base + 1;
            r /= base;
        }
        debug_assert_eq!(r, 0, "{x} does not fit in {len} base-{base} digits");
        DigitVector { base, digits }
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().fold(0, |acc, &d| acc * self.base + (d - 1)) + 1
    }
}

/// `k` permutations on `[s^(k-1)]` from a normalized Hadamard matrix of order `k`.
pub fn build_hadamard_set(k: usize, s: u64, max_size: u64) -> Result<PermSet> {
    if k < 4 {
        return Err(Error::InvalidParams(format!("k = {k} must be at least 4")));
    }
    if s == 0 {
        return Err(Error::InvalidParams("s must be positive".into()));
    }
    let size = (s as u128).checked_pow(k as u32 - 1).unwrap_or(u128::MAX);
    if size > max_size as u128 {
        return Err(Error::TooLarge { size, cap: max_size });
    }
    let n = size as usize;
    let h = hadamard_of_order(k)?;
    debug_assert!(h.is_normalized());

    let perms = (0..k)
        .into_par_iter()
        .map(|i| {
            let reversed: Vec<bool> = (1..k).map(|c| h.get(i, c) == -1).collect();
            let images = (0..n as u64)
                .map(|x| {
                    let mut rest = x;
                    let mut place = 1u64;
                    let mut image = 0u64;
                    // least significant digit is column k-1
                    for &rev in reversed.iter().rev() {
                        let d = rest % s;
                        rest /= s;
                        image += place * if rev { s - 1 - d } else { d };
                        place *= s;
                    }
                    image as usize
                })
                .collect();
            Permutation::from_zero_based_unchecked(images)
        })
        .collect();
    PermSet::new(perms, Provenance::Hadamard { order: k, s, n_full: n as u64, matrix: h.to_string() })
}

/// Hadamard set for arbitrary `n`: `s = ⌈n^(1/(k-1))⌉`, then restrict to `[n]`.
pub fn build_hadamard_for_n(k: usize, n: u64, max_size: u64) -> Result<PermSet> {
    if k < 4 {
        return Err(Error::InvalidParams(format!("k = {k} must be at least 4")));
    }
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    let s = ceil_root(n as u128, k as u32 - 1);
    let full = build_hadamard_set(k, s, max_size)?;
    if full.n() as u64 == n {
        return Ok(full);
    }
    full.restrict(n as usize)
}

/// `s^(k/2 - 1)`: the pairwise LCS bound of a Hadamard set with digit base `s`.
pub fn lcs_bound(k: usize, s: u64) -> u128 {
    (s as u128).pow((k / 2 - 1) as u32)
}

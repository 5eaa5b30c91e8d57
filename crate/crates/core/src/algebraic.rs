//! The modular lattice construction.
//!
//! For `n = k^2 s1^3` the ground set `[n]` is identified with the lattice
//! `[s1] x [s2] x [s3]` (`s2 = s3 = k s1`, `x` least significant). Permutation
//! `j` sorts the elements by the key
//!
//! ```text
//! h3 = j^2 x + 2 j y + 2 z  (mod p),   h2 = j x + y,   h1 = x
//! ```
//!
//! compared with `h3` most significant, where `p` is the smallest prime above
//! `4 s3`. Two elements that agree on `h3` for two different `j` are ordered
//! oppositely by those two permutations, so a common subsequence of any pair
//! takes distinct `(h3_i, h3_j)` pairs in increasing order: at most `2p - 1`.
//! Other `n >= k^2` are handled by building the next exact size and restricting.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{ceil_cbrt, exact_cbrt};
use crate::perm::{PermSet, Permutation, Provenance};
use crate::prime::next_prime_above;

const NK_LIMIT: u128 = 1 << 60;

/// Derived quantities of an exact-size construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    pub n: u64,
    pub k: u64,
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
    pub p: u64,
}

impl ConstructionParams {
    /// `2p - 1`: the bound on any pairwise LCS.
    pub fn pair_bound(&self) -> u64 {
        2 * self.p - 1
    }

    /// `16 (nk)^(1/3) = 16 s3`, exact because `nk = s3^3`.
    pub fn cube_root_bound(&self) -> u64 {
        16 * self.s3
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::Algebraic { n_exact: self.n, s1: self.s1, s2: self.s2, s3: self.s3, p: self.p }
    }
}

/// A point of `[s1] x [s2] x [s3]`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

/// The sort key of one element under permutation `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HTriple {
    pub h1: u64,
    pub h2: u64,
    pub h3: u64,
}

impl HTriple {
    /// Lexicographic key with `h3` most significant.
    pub fn order_key(&self) -> (u64, u64, u64) {
        (self.h3, self.h2, self.h1)
    }
}

fn check_k(n: u64, k: u64) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParams(format!("k = {k} must be at least 3")));
    }
    if (k as u128) * (k as u128) > n as u128 {
        return Err(Error::InvalidParams(format!("n = {n} must be at least k^2 = {}", k as u128 * k as u128)));
    }
    if n as u128 * k as u128 >= NK_LIMIT {
        return Err(Error::InvalidParams(format!("n * k must stay below 2^60 (n = {n}, k = {k})")));
    }
    Ok(())
}

/// Parameters for an exact size `n = k^2 s1^3`.
pub fn params_from(n: u64, k: u64) -> Result<ConstructionParams> {
    check_k(n, k)?;
    let k2 = k * k;
    let s1 = n
        .is_multiple_of(k2)
        .then(|| exact_cbrt((n / k2) as u128))
        .flatten()
        .ok_or_else(|| Error::InvalidParams(format!("n = {n} is not of the form k^2 s1^3 for k = {k}")))?;
    let s3 = s1 * k;
    let p = next_prime_above(4 * s3);
    // nk = s3^3, so p < 8 (nk)^(1/3) is p < 8 s3
    assert!(p < 8 * s3, "prime {p} not below 8 s3 = {}", 8 * s3);
    Ok(ConstructionParams { n, k, s1, s2: s3, s3, p })
}

impl ConstructionParams {
    fn in_lattice(&self, pt: LatticePoint) -> bool {
        (1..=self.s1).contains(&pt.x) && (1..=self.s2).contains(&pt.y) && (1..=self.s3).contains(&pt.z)
    }

    fn phi_unchecked(&self, a: u64) -> LatticePoint {
        let r = a - 1;
        LatticePoint { x: r % self.s1 + 1, y: (r / self.s1) % self.s2 + 1, z: r / (self.s1 * self.s2) + 1 }
    }

    fn h_unchecked(&self, j: u64, pt: LatticePoint) -> HTriple {
        let p = self.p;
        let h3 = ((j * j % p) * pt.x + (2 * j % p) * pt.y + 2 * pt.z) % p;
        let h2 = j * pt.x + pt.y;
        assert!(h2 >= 1 && h2 <= self.k * self.s1 + self.s2);
        HTriple { h1: pt.x, h2, h3 }
    }
}

/// `x + s1 (y - 1) + s1 s2 (z - 1)`.
pub fn phi_inv(pt: LatticePoint, params: &ConstructionParams) -> Result<u64> {
    if !params.in_lattice(pt) {
        return Err(Error::OutOfRange(format!("{pt:?} outside [{}]x[{}]x[{}]", params.s1, params.s2, params.s3)));
    }
    Ok(pt.x + params.s1 * (pt.y - 1) + params.s1 * params.s2 * (pt.z - 1))
}

/// Mixed-radix decomposition of `a` with `x` least significant.
pub fn phi(a: u64, params: &ConstructionParams) -> Result<LatticePoint> {
    if a == 0 || a > params.n {
        return Err(Error::OutOfRange(format!("element {a} outside [1, {}]", params.n)));
    }
    Ok(params.phi_unchecked(a))
}

pub fn h_eval(j: u64, pt: LatticePoint, params: &ConstructionParams) -> Result<HTriple> {
    if j == 0 || j > params.k {
        return Err(Error::OutOfRange(format!("j = {j} outside [1, {}]", params.k)));
    }
    if !params.in_lattice(pt) {
        return Err(Error::OutOfRange(format!("{pt:?} outside the lattice")));
    }
    Ok(params.h_unchecked(j, pt))
}

fn build_one(params: &ConstructionParams, j: u64) -> Result<Permutation> {
    let mut keyed: Vec<((u64, u64, u64), usize)> = (0..params.n as usize)
        .map(|r| (params.h_unchecked(j, params.phi_unchecked(r as u64 + 1)).order_key(), r))
        .collect();
    keyed.sort_unstable();
    if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateKey { j, a: w[0].1 + 1, b: w[1].1 + 1 });
    }
    Ok(Permutation::from_zero_based_unchecked(keyed.into_iter().map(|(_, r)| r).collect()))
}

/// The `k` permutations for an exact size `n = k^2 s1^3`.
pub fn build_exact(n: u64, k: u64) -> Result<PermSet> {
    let params = params_from(n, k)?;
    build_from_params(&params)
}

pub fn build_from_params(params: &ConstructionParams) -> Result<PermSet> {
    let perms = (1..=params.k).into_par_iter().map(|j| build_one(params, j)).collect::<Result<Vec<_>>>()?;
    PermSet::new(perms, params.provenance())
}

/// Exact parameters used for an arbitrary `n >= k^2`: `s1 = ⌈(n/k^2)^(1/3)⌉`,
/// `n' = s1^3 k^2 <= 8n`.
pub fn general_params(n: u64, k: u64) -> Result<ConstructionParams> {
    check_k(n, k)?;
    let k2 = k * k;
    let s1 = ceil_cbrt(n.div_ceil(k2) as u128);
    let n_exact = s1
        .checked_pow(3)
        .and_then(|c| c.checked_mul(k2))
        .ok_or_else(|| Error::InvalidParams(format!("rounded size for n = {n}, k = {k} overflows")))?;
    debug_assert!(n_exact >= n && n_exact <= 8 * n);
    params_from(n_exact, k)
}

/// The `k` permutations for any `n >= k^2`, restricted from the next exact size.
pub fn build_general(n: u64, k: u64) -> Result<PermSet> {
    let params = general_params(n, k)?;
    let full = build_from_params(&params)?;
    if params.n == n {
        return Ok(full);
    }
    full.restrict(n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subseq::{lcs_all_pairs, lcs_pair_dp};

    #[test]
    fn params_examples() {
        let p = params_from(9, 3).unwrap();
        assert_eq!((p.s1, p.s2, p.s3, p.p), (1, 3, 3, 13));
        let p = params_from(72, 3).unwrap();
        assert_eq!((p.s1, p.s2, p.s3, p.p), (2, 6, 6, 29));
        assert!(params_from(9, 2).is_err());
        assert!(params_from(10, 3).is_err());
        assert!(params_from(4, 3).is_err());
    }

    #[test]
    fn phi_examples() {
        let params = params_from(72, 3).unwrap();
        let pt = |x, y, z| LatticePoint { x, y, z };
        assert_eq!(phi_inv(pt(1, 1, 1), &params).unwrap(), 1);
        assert_eq!(phi_inv(pt(2, 6, 6), &params).unwrap(), 72);
        assert_eq!(phi_inv(pt(2, 3, 4), &params).unwrap(), 42);
        assert_eq!(phi(1, &params).unwrap(), pt(1, 1, 1));
        assert_eq!(phi(72, &params).unwrap(), pt(2, 6, 6));
        assert!(phi_inv(pt(3, 1, 1), &params).is_err());
        assert!(phi(0, &params).is_err());
        assert!(phi(73, &params).is_err());
        for a in 1..=72 {
            assert_eq!(phi_inv(phi(a, &params).unwrap(), &params).unwrap(), a);
        }
    }

    #[test]
    fn h_examples() {
        let params = params_from(9, 3).unwrap();
        let origin = LatticePoint { x: 1, y: 1, z: 1 };
        assert_eq!(h_eval(1, origin, &params).unwrap(), HTriple { h1: 1, h2: 2, h3: 5 });
        assert_eq!(h_eval(3, origin, &params).unwrap(), HTriple { h1: 1, h2: 4, h3: 4 });
        assert!(h_eval(0, origin, &params).is_err());
        assert!(h_eval(4, origin, &params).is_err());
    }

    #[test]
    fn h_is_injective_on_small_lattice() {
        let params = params_from(9, 3).unwrap();
        let triples: Vec<HTriple> = (1..=9).map(|a| h_eval(2, phi(a, &params).unwrap(), &params).unwrap()).collect();
        for a in 0..9 {
            for b in a + 1..9 {
                assert_ne!(triples[a], triples[b]);
            }
        }
    }

    #[test]
    fn exact_sets_respect_bracket() {
        for (n, k) in [(9u64, 3u64), (72, 3)] {
            let s = build_exact(n, k).unwrap();
            let params = params_from(n, k).unwrap();
            assert_eq!(s.k(), k as usize);
            let perms = s.perms();
            for i in 0..perms.len() {
                for j in i + 1..perms.len() {
                    let l = lcs_pair_dp(&perms[i], &perms[j]).unwrap() as u64;
                    assert!(l <= params.pair_bound());
                }
            }
            let max = lcs_all_pairs(&s).unwrap().max_lcs() as u64;
            assert!(max >= ceil_cbrt(n as u128));
        }
    }

    #[test]
    fn general_rounding() {
        let params = general_params(10, 3).unwrap();
        assert_eq!((params.s1, params.n), (2, 72));
        let s = build_general(10, 3).unwrap();
        assert_eq!(s.n(), 10);
        let full = build_exact(72, 3).unwrap();
        assert_eq!(s, full.restrict(10).unwrap());
        assert_eq!(build_general(72, 3).unwrap(), full);
        assert!(build_general(8, 3).is_err());
    }
}

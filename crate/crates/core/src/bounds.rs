//! Random baselines and lower-bound checkers.
//!
//! Randomness is ChaCha8 seeded with the user seed; trial `t` draws from
//! stream `t` of that generator, so serial and parallel runs agree.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{ceil_cbrt, two_e_sqrt};
use crate::perm::{PermSet, Permutation, Provenance};
use crate::subseq::{lcs_all_pairs, lds, lis, relabel_by_positions};

/// Largest `n` for which [`verify_cube_root_lower_bound`] builds the start-length table.
pub const PHI_TABLE_MAX_N: usize = 2000;

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniformly random permutation of `[n]` (Fisher–Yates).
pub fn random_perm<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Ok(Permutation::from_zero_based_unchecked(images))
}

/// `k` independent uniform permutations of `[n]`.
pub fn random_set<R: Rng + ?Sized>(n: usize, k: usize, seed: u64, rng: &mut R) -> Result<PermSet> {
    let perms = (0..k).map(|_| random_perm(n, rng)).collect::<Result<Vec<_>>>()?;
    PermSet::new(perms, Provenance::Random { seed })
}

/// LIS (and LDS) lengths of independent random permutations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LisSample {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub lengths: Vec<usize>,
    pub lds_lengths: Vec<usize>,
}

impl LisSample {
    pub fn mean(&self) -> f64 {
        self.lengths.iter().sum::<usize>() as f64 / self.trials as f64
    }

    /// Number of trials with `LIS >= threshold`.
    pub fn count_at_least(&self, threshold: f64) -> usize {
        self.lengths.iter().filter(|&&l| l as f64 >= threshold).count()
    }

    /// `trial,length` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,length\n");
        for (t, l) in self.lengths.iter().enumerate() {
            out.push_str(&format!("{t},{l}\n"));
        }
        out
    }
}

pub fn sample_lis(n: usize, trials: usize, seed: u64) -> Result<LisSample> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let pairs = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let p = random_perm(n, &mut trial_rng(seed, t))?;
            Ok((lis(p.as_slice()), lds(p.as_slice())))
        })
        .collect::<Result<Vec<_>>>()?;
    let (lengths, lds_lengths) = pairs.into_iter().unzip();
    Ok(LisSample { n, trials, seed, lengths, lds_lengths })
}

/// Outcome of sampling random `k`-sets against the `2e sqrt(n)` ceiling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilisticVerdict {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    /// `2e sqrt(n)`, rounded up one ulp.
    pub threshold: f64,
    /// Max pairwise LCS of each sampled set.
    pub max_pair_lcs: Vec<usize>,
    pub below_count: usize,
    pub violations: usize,
    pub fraction_below: f64,
    /// Smallest max pairwise LCS seen: an empirical upper estimate of `f_k(n)`.
    pub min_over_sets: usize,
    pub max_over_sets: usize,
    pub mean: f64,
}

pub fn check_probabilistic_bound(n: usize, k: usize, trials: usize, seed: u64) -> Result<ProbabilisticVerdict> {
    if k < 2 {
        return Err(Error::TooFewPermutations { k, min: 2 });
    }
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let max_pair_lcs = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let set = random_set(n, k, seed, &mut trial_rng(seed, t))?;
            Ok(lcs_all_pairs(&set)?.max_lcs())
        })
        .collect::<Result<Vec<_>>>()?;
    let threshold = two_e_sqrt(n as u64);
    let below_count = max_pair_lcs.iter().filter(|&&l| (l as f64) < threshold).count();
    Ok(ProbabilisticVerdict {
        n,
        k,
        trials,
        seed,
        threshold,
        below_count,
        violations: trials - below_count,
        fraction_below: below_count as f64 / trials as f64,
        min_over_sets: *max_pair_lcs.iter().min().unwrap(),
        max_over_sets: *max_pair_lcs.iter().max().unwrap(),
        mean: max_pair_lcs.iter().sum::<usize>() as f64 / trials as f64,
        max_pair_lcs,
    })
}

/// Two permutations inducing the same ordering on `{1, …, m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PigeonholeWitness {
    pub m: usize,
    pub i: usize,
    pub j: usize,
}

/// Largest `m` with `m! < k` and `m <= n`.
pub fn pigeonhole_m(k: usize, n: usize) -> usize {
    let mut m = 0usize;
    let mut next_factorial = 1u128; // (m + 1)!
    while m < n && next_factorial < k as u128 {
        m += 1;
        next_factorial = next_factorial.saturating_mul(m as u128 + 1);
    }
    m
}

/// Finds the first pair `i < j` whose restrictions to `[m]` coincide.
pub fn pigeonhole_pair(s: &PermSet) -> Result<PigeonholeWitness> {
    s.require_k(2)?;
    let m = pigeonhole_m(s.k(), s.n());
    if m == 0 {
        return Err(Error::InvalidParams("no nonempty prefix to compare".into()));
    }
    let mut seen: HashMap<Permutation, usize> = HashMap::new();
    for (j, p) in s.perms().iter().enumerate() {
        let pattern = p.restrict(m)?;
        if let Some(&i) = seen.get(&pattern) {
            return Ok(PigeonholeWitness { m, i, j });
        }
        seen.insert(pattern, j);
    }
    unreachable!("{} permutations but only {m}! < k orderings of [{m}]", s.k())
}

/// Lengths of the longest common subsequences starting with each value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiTable {
    /// Pairs `(i, j)` among the first three permutations, in the order `(0,1), (0,2), (1,2)`.
    pub pairs: Vec<(usize, usize)>,
    /// `values[ℓ - 1][p]` is the start length for value `ℓ` under pair `p`.
    pub values: Vec<[usize; 3]>,
    /// Whether the triples are pairwise distinct (they always are; this is the counting argument).
    pub triples_distinct: bool,
}

/// Longest common subsequence of `a` and `b` starting with each value, `O(n^2)`.
pub fn lcs_start_lengths(a: &Permutation, b: &Permutation) -> Result<Vec<usize>> {
    crate::perm::check_same_n(a, b)?;
    let c = relabel_by_positions(a, b);
    let n = c.len();
    let mut from = vec![1usize; n];
    for t in (0..n).rev() {
        from[t] = 1 + (t + 1..n).filter(|&u| c[u] > c[t]).map(|u| from[u]).max().unwrap_or(0);
    }
    let mut by_value = vec![0; n];
    for (t, &v) in a.as_slice().iter().enumerate() {
        by_value[v] = from[t];
    }
    Ok(by_value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub n: usize,
    pub k: usize,
    pub max_pair_lcs: usize,
    /// `⌈n^(1/3)⌉`.
    pub cube_root_bound: usize,
    pub cube_root_holds: bool,
    pub pigeonhole_m: usize,
    pub pigeonhole_pair: Option<PigeonholeWitness>,
    /// `max_pair_lcs >= max(⌈n^(1/3)⌉, m)`.
    pub holds: bool,
    pub phi_table: Option<PhiTable>,
}

/// Checks that the set has a common subsequence of length at least `⌈n^(1/3)⌉`
/// (and at least `m`), and tabulates start lengths for the first three members.
pub fn verify_cube_root_lower_bound(s: &PermSet) -> Result<LowerBoundReport> {
    s.require_k(3)?;
    let matrix = lcs_all_pairs(s)?;
    let max_pair_lcs = matrix.max_lcs();
    let cube_root_bound = ceil_cbrt(s.n() as u128) as usize;
    let witness = pigeonhole_pair(s)?;

    let phi_table = (s.n() <= PHI_TABLE_MAX_N)
        .then(|| -> Result<PhiTable> {
            let pairs = vec![(0, 1), (0, 2), (1, 2)];
            let p = s.perms();
            let cols = pairs.iter().map(|&(i, j)| lcs_start_lengths(&p[i], &p[j])).collect::<Result<Vec<_>>>()?;
            let values: Vec<[usize; 3]> = (0..s.n()).map(|l| [cols[0][l], cols[1][l], cols[2][l]]).collect();
            let mut sorted = values.clone();
            sorted.sort_unstable();
            let triples_distinct = sorted.windows(2).all(|w| w[0] != w[1]);
            Ok(PhiTable { pairs, values, triples_distinct })
        })
        .transpose()?;

    let cube_root_holds = max_pair_lcs >= cube_root_bound;
    Ok(LowerBoundReport {
        n: s.n(),
        k: s.k(),
        max_pair_lcs,
        cube_root_bound,
        cube_root_holds,
        pigeonhole_m: witness.m,
        pigeonhole_pair: Some(witness),
        holds: cube_root_holds && max_pair_lcs >= witness.m,
        phi_table,
    })
}

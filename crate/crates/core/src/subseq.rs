//! Longest increasing/decreasing subsequences and pairwise LCS of permutations.
//!
//! The fast path reduces `LCS(a, b)` to an LIS: relabel every value of `a` by its
//! position in `b`; common subsequences of `a` and `b` are exactly the increasing
//! subsequences of the relabeled sequence. [`lcs_pair_dp`] is the independent
//! quadratic oracle.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{check_same_n, PermSet, Permutation};

/// Largest `n` accepted by [`lcs_pair_dp`].
pub const DP_MAX_N: usize = 8192;

/// Length of the longest strictly increasing subsequence (patience sorting).
pub fn lis<T: Ord>(seq: &[T]) -> usize {
    // tops[i] is the smallest tail of an increasing subsequence of length i + 1
    let mut tops: Vec<&T> = Vec::new();
    for x in seq {
        let pile = tops.partition_point(|&top| top < x);
        debug_assert!(pile == tops.len() || tops[pile] != x, "lis input must be distinct");
        if pile == tops.len() {
            tops.push(x);
        } else {
            tops[pile] = x;
        }
    }
    tops.len()
}

/// Length of the longest strictly decreasing subsequence.
pub fn lds<T: Ord>(seq: &[T]) -> usize {
    let mut tops: Vec<&T> = Vec::new();
    for x in seq {
        let pile = tops.partition_point(|&top| top > x);
        debug_assert!(pile == tops.len() || tops[pile] != x, "lds input must be distinct");
        if pile == tops.len() {
            tops.push(x);
        } else {
            tops[pile] = x;
        }
    }
    tops.len()
}

/// Relabels `a`'s one-line sequence by positions in `b`.
pub(crate) fn relabel_by_positions(a: &Permutation, b: &Permutation) -> Vec<usize> {
    let pos_in_b = b.positions();
    a.as_slice().iter().map(|&v| pos_in_b[v]).collect()
}

/// Exact LCS length of two permutations on the same `[n]`, in `O(n log n)`.
pub fn lcs_pair(a: &Permutation, b: &Permutation) -> Result<usize> {
    check_same_n(a, b)?;
    Ok(lis(&relabel_by_positions(a, b)))
}

/// Exact LCS length by the classic quadratic DP, for `n <= DP_MAX_N`.
pub fn lcs_pair_dp(a: &Permutation, b: &Permutation) -> Result<usize> {
    check_same_n(a, b)?;
    if a.n() > DP_MAX_N {
        return Err(Error::TooLarge { size: a.n() as u128, cap: DP_MAX_N as u64 });
    }
    Ok(lcs_dp(a.as_slice(), b.as_slice()))
}

fn lcs_dp<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0u32; b.len() + 1];
    let mut cur = vec![0u32; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()] as usize
}

/// Symmetric table of pairwise LCS lengths of a permutation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsMatrix {
    n: usize,
    k: usize,
    entries: Vec<usize>,
}

impl LcsMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.k + j]
    }

    /// `(i, j, lcs)` for every `i < j`, in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.k).flat_map(move |i| (i + 1..self.k).map(move |j| (i, j, self.get(i, j))))
    }

    /// The first pair attaining the maximum off-diagonal entry.
    pub fn max_pair(&self) -> (usize, usize, usize) {
        self.pairs().fold((0, 1, 0), |best, cur| if cur.2 > best.2 { cur } else { best })
    }

    /// The first pair attaining the minimum off-diagonal entry.
    pub fn min_pair(&self) -> (usize, usize, usize) {
        self.pairs().fold((0, 1, usize::MAX), |best, cur| if cur.2 < best.2 { cur } else { best })
    }

    /// Length of the longest common subsequence of the set.
    pub fn max_lcs(&self) -> usize {
        self.max_pair().2
    }

    pub fn min_lcs(&self) -> usize {
        self.min_pair().2
    }
}

/// Pairwise LCS of every pair in the set; pairs are evaluated in parallel.
pub fn lcs_all_pairs(s: &PermSet) -> Result<LcsMatrix> {
    s.require_k(2)?;
    let k = s.k();
    let perms = s.perms();
    let positions: Vec<Vec<usize>> = perms.par_iter().map(|p| p.positions()).collect();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let values: Vec<usize> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let relabeled: Vec<usize> = perms[i].as_slice().iter().map(|&v| positions[j][v]).collect();
            lis(&relabeled)
        })
        .collect();
    let mut entries = vec![0; k * k];
    for d in 0..k {
        entries[d * k + d] = s.n();
    }
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        entries[i * k + j] = v;
        entries[j * k + i] = v;
    }
    Ok(LcsMatrix { n: s.n(), k, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Provenance;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    // O(2^n) enumeration of subsets; the oracle for the small hand examples.
    fn brute_force_monotone(seq: &[usize], increasing: bool) -> usize {
        let n = seq.len();
        (0u32..1 << n)
            .filter(|mask| {
                let picked: Vec<usize> = (0..n).filter(|t| mask >> t & 1 == 1).map(|t| seq[t]).collect();
                picked.windows(2).all(|w| if increasing { w[0] < w[1] } else { w[0] > w[1] })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn lis_examples() {
        let seq = [3, 1, 4, 2, 5];
        assert_eq!(brute_force_monotone(&seq, true), 3);
        assert_eq!(lis(&seq), 3);
        assert_eq!(lis(Permutation::identity(9).unwrap().as_slice()), 9);
        assert_eq!(lis(Permutation::reversal(9).unwrap().as_slice()), 1);
        assert_eq!(lis::<u32>(&[]), 0);
    }

    #[test]
    fn lds_examples() {
        let seq = [3, 1, 4, 2, 5];
        assert_eq!(brute_force_monotone(&seq, false), 2);
        assert_eq!(lds(&seq), 2);
        assert_eq!(lds(Permutation::reversal(9).unwrap().as_slice()), 9);
        assert_eq!(lds(Permutation::identity(9).unwrap().as_slice()), 1);
    }

    #[test]
    fn lcs_pair_examples() {
        let pi = p(&[4, 2, 5, 1, 3]);
        assert_eq!(lcs_pair(&pi, &pi).unwrap(), 5);
        let id = Permutation::identity(6).unwrap();
        let rev = Permutation::reversal(6).unwrap();
        assert_eq!(lcs_pair(&id, &rev).unwrap(), 1);
        assert_eq!(lcs_pair_dp(&id, &rev).unwrap(), 1);
        let id3 = Permutation::identity(3).unwrap();
        assert_eq!(lcs_pair_dp(&id3, &id3).unwrap(), 3);
        let a = p(&[2, 1, 4, 3]);
        let b = Permutation::identity(4).unwrap();
        assert_eq!(lcs_pair_dp(&a, &b).unwrap(), 2);
        assert_eq!(lcs_pair(&a, &b).unwrap(), 2);
        assert!(lcs_pair(&a, &id3).is_err());
        assert!(lcs_pair_dp(&a, &id3).is_err());
    }

    #[test]
    fn dp_is_size_guarded() {
        let big = Permutation::identity(DP_MAX_N + 1).unwrap();
        assert!(matches!(lcs_pair_dp(&big, &big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn all_pairs_examples() {
        let pi = p(&[2, 4, 1, 3]);
        let s = PermSet::new(vec![pi.clone(), pi], Provenance::Imported).unwrap();
        assert_eq!(lcs_all_pairs(&s).unwrap().max_lcs(), 4);

        let id = Permutation::identity(5).unwrap();
        let rev = Permutation::reversal(5).unwrap();
        let s = PermSet::new(vec![id.clone(), rev, id], Provenance::Imported).unwrap();
        let m = lcs_all_pairs(&s).unwrap();
        assert_eq!(m.max_pair(), (0, 2, 5));
        assert_eq!(m.min_pair(), (0, 1, 1));
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(1, 1), 5);

        let single = PermSet::new(vec![p(&[1, 2])], Provenance::Imported).unwrap();
        assert!(matches!(lcs_all_pairs(&single), Err(Error::TooFewPermutations { .. })));
    }
}

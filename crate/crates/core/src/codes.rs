//! Permutation sets viewed as codes under deletion distance.
//!
//! For two permutations of the same `[n]`, half the number of insertions plus
//! deletions turning one into the other is `n - LCS`.

use serde::Serialize;

use crate::error::Result;
use crate::perm::{PermSet, Permutation};
use crate::subseq::{lcs_all_pairs, lcs_pair};

pub fn d_del(a: &Permutation, b: &Permutation) -> Result<usize> {
    Ok(a.n() - lcs_pair(a, b)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinDistance {
    pub distance: usize,
    /// Set when two codewords coincide (the distance is then 0).
    pub duplicate: bool,
}

pub fn min_distance(s: &PermSet) -> Result<MinDistance> {
    let max_lcs = lcs_all_pairs(s)?.max_lcs();
    let distance = s.n() - max_lcs;
    Ok(MinDistance { distance, duplicate: has_duplicate(s) })
}

fn has_duplicate(s: &PermSet) -> bool {
    let p = s.perms();
    (0..p.len()).any(|i| (i + 1..p.len()).any(|j| p[i] == p[j]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub min_distance: usize,
    pub max_pair_lcs: usize,
    pub provenance: String,
    pub duplicate_codewords: bool,
}

pub fn code_report(s: &PermSet) -> Result<CodeReport> {
    let max_pair_lcs = lcs_all_pairs(s)?.max_lcs();
    let min_distance = s.n() - max_pair_lcs;
    assert_eq!(min_distance + max_pair_lcs, s.n());
    Ok(CodeReport {
        n: s.n(),
        k: s.k(),
        min_distance,
        max_pair_lcs,
        provenance: s.provenance().tag().to_string(),
        duplicate_codewords: has_duplicate(s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::build_exact;
    use crate::hadamard::{build_hadamard_set, DEFAULT_MAX_SIZE};
    use crate::numeric::within_cube_root_bound;
    use crate::perm::Provenance;
    use crate::subseq::lcs_pair_dp;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn d_del_examples() {
        let pi = p(&[2, 5, 1, 4, 3]);
        assert_eq!(d_del(&pi, &pi).unwrap(), 0);
        let (id, rev) = (Permutation::identity(9).unwrap(), Permutation::reversal(9).unwrap());
        assert_eq!(d_del(&id, &rev).unwrap(), 8);
        let a = p(&[2, 1, 4, 3]);
        let b = Permutation::identity(4).unwrap();
        assert_eq!(4 - lcs_pair_dp(&a, &b).unwrap(), 2);
        assert_eq!(d_del(&a, &b).unwrap(), 2);
        assert!(d_del(&a, &id).is_err());
    }

    #[test]
    fn min_distance_examples() {
        let s = build_exact(72, 3).unwrap();
        let md = min_distance(&s).unwrap();
        assert!(!md.duplicate);
        let lcs = 72 - md.distance as u64;
        assert!(within_cube_root_bound(lcs, 32, 72 * 3));

        let pair = PermSet::new(
            vec![Permutation::identity(6).unwrap(), Permutation::reversal(6).unwrap()],
            Provenance::Imported,
        )
        .unwrap();
        assert_eq!(min_distance(&pair).unwrap(), MinDistance { distance: 5, duplicate: false });

        let dup = PermSet::new(vec![p(&[2, 1, 3]), p(&[1, 3, 2]), p(&[2, 1, 3])], Provenance::Imported).unwrap();
        assert_eq!(min_distance(&dup).unwrap(), MinDistance { distance: 0, duplicate: true });
    }

    #[test]
    fn report_examples() {
        let r = code_report(&build_exact(72, 3).unwrap()).unwrap();
        assert_eq!(r.min_distance, 72 - r.max_pair_lcs);
        assert_eq!(r.provenance, "algebraic");

        let r = code_report(&build_hadamard_set(4, 2, DEFAULT_MAX_SIZE).unwrap()).unwrap();
        assert_eq!(r.n, 8);
        assert!(r.min_distance >= 6);

        let pi = p(&[3, 1, 2]);
        let r = code_report(&PermSet::new(vec![pi.clone(), pi], Provenance::Imported).unwrap()).unwrap();
        assert_eq!(r.min_distance, 0);
        assert!(r.duplicate_codewords);
    }
}

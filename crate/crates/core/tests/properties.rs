use proptest::prelude::*;

use permlcs::algebraic::{build_general, general_params, h_eval, params_from, phi};
use permlcs::codes::d_del;
use permlcs::hadamard::{build_hadamard_set, DigitVector, DEFAULT_MAX_SIZE};
use permlcs::numeric::{ceil_sqrt, within_cube_root_bound};
use permlcs::{lcs_all_pairs, lcs_pair, lcs_pair_dp, lds, lis, Permutation};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

fn perm_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| (perm(n), perm(n)))
}

fn perm_triple(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

// O(n^2) LIS by "longest ending here"; independent of patience sorting.
fn lis_quadratic(seq: &[usize], increasing: bool) -> usize {
    let mut best = vec![1usize; seq.len()];
    for t in 0..seq.len() {
        for u in 0..t {
            let ok = if increasing { seq[u] < seq[t] } else { seq[u] > seq[t] };
            if ok {
                best[t] = best[t].max(best[u] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn compose_is_associative((a, b, c) in perm_triple(64)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn invert_is_an_involution(a in (1usize..64).prop_flat_map(perm)) {
        prop_assert_eq!(a.invert().invert(), a.clone());
        prop_assert_eq!(a.compose(&a.invert()).unwrap(), Permutation::identity(a.n()).unwrap());
    }

    #[test]
    fn restrict_composes(a in (1usize..64).prop_flat_map(perm), m1 in 1usize..64, m2 in 1usize..64) {
        let (m1, m2) = (m1.min(a.n()), m2.min(a.n()));
        let (hi, lo) = (m1.max(m2), m1.min(m2));
        prop_assert_eq!(a.restrict(hi).unwrap().restrict(lo).unwrap(), a.restrict(lo).unwrap());
    }

    #[test]
    fn restrict_never_lengthens_lcs((a, b) in perm_pair(64), m in 1usize..64) {
        let m = m.min(a.n());
        let small = lcs_pair(&a.restrict(m).unwrap(), &b.restrict(m).unwrap()).unwrap();
        prop_assert!(small <= lcs_pair(&a, &b).unwrap());
    }

    #[test]
    fn patience_matches_quadratic(a in (1usize..80).prop_flat_map(perm)) {
        let seq = a.one_line();
        prop_assert_eq!(lis(&seq), lis_quadratic(&seq, true));
        prop_assert_eq!(lds(&seq), lis_quadratic(&seq, false));
    }

    #[test]
    fn lcs_matches_dp((a, b) in perm_pair(128)) {
        prop_assert_eq!(lcs_pair(&a, &b).unwrap(), lcs_pair_dp(&a, &b).unwrap());
    }

    #[test]
    fn lcs_is_symmetric_and_bounded((a, b) in perm_pair(128)) {
        let l = lcs_pair(&a, &b).unwrap();
        prop_assert_eq!(l, lcs_pair(&b, &a).unwrap());
        prop_assert!(l >= 1 && l <= a.n());
    }

    #[test]
    fn lcs_invariant_under_relabeling((a, b, sigma) in perm_triple(96)) {
        let ra = sigma.compose(&a).unwrap();
        let rb = sigma.compose(&b).unwrap();
        prop_assert_eq!(lcs_pair(&ra, &rb).unwrap(), lcs_pair(&a, &b).unwrap());
    }

    #[test]
    fn erdos_szekeres(a in (1usize..300).prop_flat_map(perm)) {
        let s = a.as_slice();
        prop_assert!(lis(s).max(lds(s)) as u64 >= ceil_sqrt(a.n() as u128));
    }

    #[test]
    fn deletion_distance_is_a_metric((a, b, c) in perm_triple(50)) {
        let ab = d_del(&a, &b).unwrap();
        prop_assert_eq!(ab, d_del(&b, &a).unwrap());
        prop_assert_eq!(ab == 0, a == b);
        prop_assert!(d_del(&a, &c).unwrap() <= ab + d_del(&b, &c).unwrap());
    }

    #[test]
    fn digit_round_trip(s in 2u64..7, len in 1usize..6, x in 1u64..10_000) {
        let n = s.pow(len as u32);
        let x = (x - 1) % n + 1;
        let d = DigitVector::of(x, s, len);
        prop_assert!(d.digits.iter().all(|&v| (1..=s).contains(&v)));
        prop_assert_eq!(d.value(), x);
    }

    #[test]
    fn general_build_meets_theorem2(k in 3u64..7, extra in 0u64..3000) {
        let n = k * k + extra;
        let set = build_general(n, k).unwrap();
        prop_assert_eq!(set.n() as u64, n);
        let max = lcs_all_pairs(&set).unwrap().max_lcs() as u64;
        prop_assert!(within_cube_root_bound(max, 32, n as u128 * k as u128));
        prop_assert!(max < 2 * general_params(n, k).unwrap().p);
    }
}

#[test]
fn h_injective_on_sampled_large_instance() {
    use rand::{Rng, SeedableRng};
    let (k, s1) = (7u64, 12u64);
    let params = params_from(k * k * s1 * s1 * s1, k).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20_000 {
        let a = rng.gen_range(1..=params.n);
        let b = rng.gen_range(1..=params.n);
        let j = rng.gen_range(1..=k);
        if a != b {
            let ha = h_eval(j, phi(a, &params).unwrap(), &params).unwrap();
            let hb = h_eval(j, phi(b, &params).unwrap(), &params).unwrap();
            assert_ne!(ha, hb, "j = {j}, a = {a}, b = {b}");
        }
    }
}

#[test]
fn all_plus_row_orders_lexicographically() {
    for (k, s) in [(4, 3), (8, 2), (12, 2)] {
        let set = build_hadamard_set(k, s, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(set.perms()[0], Permutation::identity(set.n()).unwrap());
    }
}

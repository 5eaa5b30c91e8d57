//! Integer roots and bound thresholds.
//!
//! Bounds of the form `len <= c * x^(1/3)` are decided exactly by cubing both
//! sides in `u128`. The float thresholds returned here are for display; they are
//! rounded one ulp upward so a printed threshold never sits below the true one.

/// Smallest `s` with `s^r >= n`.
pub fn ceil_root(n: u128, r: u32) -> u64 {
    assert!(r >= 1);
    if n <= 1 {
        return n as u64;
    }
    let mut s = (n as f64).powf(1.0 / r as f64).round() as u64;
    let pow_ge = |s: u64| match (s as u128).checked_pow(r) {
        Some(v) => v >= n,
        None => true,
    };
    while s > 0 && pow_ge(s - 1) {
        s -= 1;
    }
    while !pow_ge(s) {
        s += 1;
    }
    s
}

/// `⌈n^(1/3)⌉`.
pub fn ceil_cbrt(n: u128) -> u64 {
    ceil_root(n, 3)
}

/// `⌈n^(1/2)⌉`.
pub fn ceil_sqrt(n: u128) -> u64 {
    ceil_root(n, 2)
}

/// Exact `x` with `x^3 = n`, if one exists.
pub fn exact_cbrt(n: u128) -> Option<u64> {
    let s = ceil_cbrt(n);
    ((s as u128).pow(3) == n).then_some(s)
}

/// Decides `len <= coef * nk^(1/3)` exactly.
pub fn within_cube_root_bound(len: u64, coef: u64, nk: u128) -> bool {
    let lhs = (len as u128).pow(3);
    match (coef as u128).pow(3).checked_mul(nk) {
        Some(rhs) => lhs <= rhs,
        None => true,
    }
}

/// `coef * nk^(1/3)` rounded up by one ulp.
pub fn cube_root_threshold(coef: f64, nk: u128) -> f64 {
    (coef * (nk as f64).cbrt()).next_up()
}

/// `2e * sqrt(n)` rounded up by one ulp.
pub fn two_e_sqrt(n: u64) -> f64 {
    (2.0 * std::f64::consts::E * (n as f64).sqrt()).next_up()
}

//! Bound checks and the JSON run report shared by the CLI subcommands.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::numeric::{ceil_cbrt, ceil_root, cube_root_threshold, within_cube_root_bound};

/// One inequality evaluated against an observed LCS length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    /// `"<="` for upper bounds, `">="` for lower bounds.
    pub relation: &'static str,
    pub observed: u64,
    /// The threshold as a number (cube-root thresholds rounded up one ulp).
    pub threshold: f64,
    /// Closed form of the threshold.
    pub formula: String,
    /// Whether the theorem's hypotheses hold for this `(n, k)`.
    pub hypotheses_hold: bool,
    pub holds: bool,
}

/// `max LCS <= 32 (nk)^(1/3)`, decided exactly by cubing.
pub fn theorem2_check(n: u64, k: u64, observed: u64) -> BoundCheck {
    let nk = n as u128 * k as u128;
    BoundCheck {
        name: "theorem2".into(),
        relation: "<=",
        observed,
        threshold: cube_root_threshold(32.0, nk),
        formula: format!("32*({n}*{k})^(1/3)"),
        hypotheses_hold: k >= 3 && (k as u128 * k as u128) <= n as u128,
        holds: within_cube_root_bound(observed, 32, nk),
    }
}

/// `max LCS <= 16 (nk)^(1/3)` for the exact sizes.
pub fn exact_size_check(n: u64, k: u64, observed: u64) -> BoundCheck {
    let nk = n as u128 * k as u128;
    BoundCheck {
        name: "cube_root_16".into(),
        relation: "<=",
        observed,
        threshold: cube_root_threshold(16.0, nk),
        formula: format!("16*({n}*{k})^(1/3)"),
        hypotheses_hold: k >= 3 && (k as u128 * k as u128) <= n as u128,
        holds: within_cube_root_bound(observed, 16, nk),
    }
}

/// `max LCS <= 2p - 1`.
pub fn pair_bound_check(p: u64, observed: u64) -> BoundCheck {
    BoundCheck {
        name: "two_p_minus_1".into(),
        relation: "<=",
        observed,
        threshold: (2 * p - 1) as f64,
        formula: format!("2*{p}-1"),
        hypotheses_hold: true,
        holds: observed < 2 * p,
    }
}

/// `max LCS <= ⌈n^(1/(k-1))⌉^(k/2-1)`; `None` when `k` is odd or below 2.
pub fn theorem1_check(n: u64, k: u64, observed: u64) -> Option<BoundCheck> {
    if k < 2 || k % 2 == 1 {
        return None;
    }
    let s = ceil_root(n as u128, k as u32 - 1);
    let threshold = (s as u128).saturating_pow((k / 2 - 1) as u32);
    Some(BoundCheck {
        name: "theorem1".into(),
        relation: "<=",
        observed,
        threshold: threshold as f64,
        formula: format!("{s}^{}", k / 2 - 1),
        hypotheses_hold: k >= 4 && k.is_multiple_of(4),
        holds: observed as u128 <= threshold,
    })
}

/// `max LCS >= ⌈n^(1/3)⌉`.
pub fn lower_check(n: u64, k: u64, observed: u64) -> BoundCheck {
    let bound = ceil_cbrt(n as u128);
    BoundCheck {
        name: "lower".into(),
        relation: ">=",
        observed,
        threshold: bound as f64,
        formula: format!("ceil({n}^(1/3))"),
        hypotheses_hold: k >= 3,
        holds: observed >= bound,
    }
}

/// The JSON document every subcommand except `bench` prints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Map<String, Value>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), params: Map::new(), results: Map::new(), pass: true }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    /// Records the checks under `bounds` and folds their verdicts into `pass`.
    pub fn bounds(&mut self, checks: &[BoundCheck]) -> &mut Self {
        self.pass &= checks.iter().all(|c| c.holds);
        self.result("bounds", checks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

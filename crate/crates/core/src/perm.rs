//! Permutations on `[n]` and ordered sets of them.
//!
//! Storage is 0-based (`images[t] = π(t+1) - 1`). Everything that faces a user,
//! the one-line accessors and the text formats, is 1-based.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// A bijection on `[n]` in one-line form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its 1-based one-line form `π(1) … π(n)`.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        let mut images = Vec::with_capacity(n);
        for &v in values {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation { n, reason: format!("value {v} not in 1..={n}") });
            }
            images.push(v - 1);
        }
        Self::from_zero_based(images)
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::NotAPermutation { n, reason: format!("value {} not in 1..={n}", v + 1) });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation { n, reason: format!("value {} repeated", v + 1) });
            }
        }
        Ok(Self { images })
    }

    // Callers guarantee bijectivity.
    pub(crate) fn from_zero_based_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_zero_based(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Ok(Self { images: (0..n).collect() })
    }

    pub fn reversal(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Ok(Self { images: (0..n).rev().collect() })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 0-based images.
    pub fn as_slice(&self) -> &[usize] {
        &self.images
    }

    /// 1-based one-line form.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    /// `π(t)` for 1-based `t`.
    pub fn apply(&self, t: usize) -> usize {
        self.images[t - 1] + 1
    }

    /// `(a ∘ b)(t) = a(b(t))`.
    pub fn compose(&self, b: &Permutation) -> Result<Permutation> {
        check_same_n(self, b)?;
        let images = b.images.iter().map(|&t| self.images[t]).collect();
        Ok(Self { images })
    }

    pub fn invert(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (t, &v) in self.images.iter().enumerate() {
            images[v] = t;
        }
        Self { images }
    }

    /// Deletes every value above `m` from the one-line form; the surviving
    /// subsequence is a permutation on `[m]`.
    pub fn restrict(&self, m: usize) -> Result<Permutation> {
        if m == 0 || m > self.n() {
            return Err(Error::BadRestriction { m, n: self.n() });
        }
        let images = self.images.iter().copied().filter(|&v| v < m).collect();
        Ok(Self { images })
    }

    /// Position (0-based) of each value (0-based); the inverse as a plain vector.
    pub(crate) fn positions(&self) -> Vec<usize> {
        self.invert().images
    }

    pub fn to_permline(&self) -> String {
        let mut out = format!("permline 1 {}\n", self.n());
        write_values(&mut out, self);
        out
    }

    pub fn parse_permline(text: &str) -> Result<Permutation> {
        let mut lines = Lines::new(text);
        let header = lines.next_required("header")?;
        let n = parse_header(&header, "permline", 1)?[0];
        let body = lines.next_required("values")?;
        let perm = parse_values(&body, n)?;
        lines.expect_end()?;
        Ok(perm)
    }
}

pub(crate) fn check_same_n(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch { left: a.n(), right: b.n() });
    }
    Ok(())
}

/// Where a [`PermSet`] came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Algebraic {
        /// Size of the exact lattice construction before restriction.
        n_exact: u64,
        s1: u64,
        s2: u64,
        s3: u64,
        p: u64,
    },
    Hadamard {
        /// Hadamard order (number of permutations).
        order: usize,
        s: u64,
        /// `s^(k-1)`, the size before restriction.
        n_full: u64,
        matrix: String,
    },
    Random {
        seed: u64,
    },
    Imported,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Algebraic { .. } => "algebraic",
            Provenance::Hadamard { .. } => "hadamard",
            Provenance::Random { .. } => "random",
            Provenance::Imported => "imported",
        }
    }
}

/// An ordered collection of permutations on a common `[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermSet {
    n: usize,
    perms: Vec<Permutation>,
    provenance: Provenance,
}

impl PermSet {
    pub fn new(perms: Vec<Permutation>, provenance: Provenance) -> Result<Self> {
        let first = perms.first().ok_or(Error::TooFewPermutations { k: 0, min: 1 })?;
        let n = first.n();
        for p in &perms[1..] {
            check_same_n(first, p)?;
        }
        Ok(Self { n, perms, provenance })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn into_perms(self) -> Vec<Permutation> {
        self.perms
    }

    /// Restricts every member to `[m]`, keeping the provenance.
    pub fn restrict(&self, m: usize) -> Result<PermSet> {
        let perms = self.perms.iter().map(|p| p.restrict(m)).collect::<Result<_>>()?;
        Ok(Self { n: m, perms, provenance: self.provenance.clone() })
    }

    pub(crate) fn require_k(&self, min: usize) -> Result<()> {
        if self.k() < min {
            return Err(Error::TooFewPermutations { k: self.k(), min });
        }
        Ok(())
    }

    pub fn to_permset(&self) -> String {
        let mut out = format!("permset 1 {} {}\n", self.k(), self.n);
        for p in &self.perms {
            write_values(&mut out, p);
        }
        out
    }

    /// Parses PERMSET v1. The result is tagged [`Provenance::Imported`].
    pub fn parse_permset(text: &str) -> Result<PermSet> {
        let mut lines = Lines::new(text);
        let header = lines.next_required("header")?;
        let fields = parse_header(&header, "permset", 2)?;
        let (k, n) = (fields[0], fields[1]);
        if k == 0 {
            return Err(Error::Format { line: 1, msg: "k must be positive".into() });
        }
        let mut perms = Vec::with_capacity(k);
        for _ in 0..k {
            let body = lines.next_required("values")?;
            perms.push(parse_values(&body, n)?);
        }
        lines.expect_end()?;
        PermSet::new(perms, Provenance::Imported)
    }
}

fn write_values(out: &mut String, p: &Permutation) {
    for (t, v) in p.images.iter().enumerate() {
        if t > 0 {
            out.push(' ');
        }
        write!(out, "{}", v + 1).unwrap();
    }
    out.push('\n');
}

struct Line {
    number: usize,
    text: String,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate() }
    }

    fn next_required(&mut self, what: &str) -> Result<Line> {
        match self.inner.next() {
            Some((i, text)) => Ok(Line { number: i + 1, text: text.to_string() }),
            None => Err(Error::Format { line: 0, msg: format!("unexpected end of input, expected {what}") }),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        for (i, text) in self.inner.by_ref() {
            if !text.trim().is_empty() {
                return Err(Error::Format { line: i + 1, msg: "trailing content".into() });
            }
        }
        Ok(())
    }
}

fn parse_header(line: &Line, magic: &str, fields: usize) -> Result<Vec<usize>> {
    let err = |msg: String| Error::Format { line: line.number, msg };
    let mut tokens = line.text.split_ascii_whitespace();
    if tokens.next() != Some(magic) {
        return Err(err(format!("expected `{magic}` header")));
    }
    if tokens.next() != Some("1") {
        return Err(err("unsupported format version".into()));
    }
    let values = tokens
        .map(|t| t.parse::<usize>().map_err(|e| err(format!("bad header field `{t}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != fields {
        return Err(err(format!("expected {fields} header fields, got {}", values.len())));
    }
    Ok(values)
}

fn parse_values(line: &Line, n: usize) -> Result<Permutation> {
    let err = |msg: String| Error::Format { line: line.number, msg };
    let values = line
        .text
        .split_ascii_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| err(format!("bad value `{t}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != n {
        return Err(err(format!("expected {n} values, got {}", values.len())));
    }
    Permutation::from_one_line(&values).map_err(|e| err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn identity_and_reversal() {
        assert_eq!(Permutation::identity(1).unwrap().one_line(), vec![1]);
        assert_eq!(Permutation::identity(4).unwrap().one_line(), vec![1, 2, 3, 4]);
        assert_eq!(Permutation::reversal(1).unwrap().one_line(), vec![1]);
        assert_eq!(Permutation::reversal(4).unwrap().one_line(), vec![4, 3, 2, 1]);
        assert_eq!(Permutation::identity(0), Err(Error::EmptyGroundSet));
        assert_eq!(Permutation::reversal(0), Err(Error::EmptyGroundSet));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
        assert!(Permutation::from_one_line(&[1, 3]).is_err());
        assert!(Permutation::from_one_line(&[]).is_err());
    }

    #[test]
    fn compose_examples() {
        let pi = p(&[3, 1, 4, 2]);
        let id = Permutation::identity(4).unwrap();
        assert_eq!(pi.compose(&id).unwrap(), pi);
        assert_eq!(id.compose(&pi).unwrap(), pi);
        assert_eq!(p(&[2, 3, 1]).compose(&p(&[3, 1, 2])).unwrap(), Permutation::identity(3).unwrap());
        assert!(matches!(pi.compose(&Permutation::identity(3).unwrap()), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(p(&[2, 3, 1]).invert(), p(&[3, 1, 2]));
        let id = Permutation::identity(7).unwrap();
        assert_eq!(id.invert(), id);
        let rev = Permutation::reversal(7).unwrap();
        assert_eq!(rev.invert(), rev);
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(Permutation::identity(8).unwrap().restrict(5).unwrap().one_line(), vec![1, 2, 3, 4, 5]);
        assert_eq!(Permutation::reversal(8).unwrap().restrict(3).unwrap().one_line(), vec![3, 2, 1]);
        assert_eq!(p(&[3, 1, 4, 2]).restrict(2).unwrap().one_line(), vec![1, 2]);
        assert!(p(&[3, 1, 4, 2]).restrict(0).is_err());
        assert!(p(&[3, 1, 4, 2]).restrict(5).is_err());
    }

    #[test]
    fn permline_text() {
        let pi = p(&[3, 1, 4, 2]);
        let text = pi.to_permline();
        assert_eq!(text, "permline 1 4\n3 1 4 2\n");
        assert_eq!(Permutation::parse_permline(&text).unwrap(), pi);
        assert!(Permutation::parse_permline("permline 1 3\n1 2\n").is_err());
        assert!(Permutation::parse_permline("permline 2 2\n1 2\n").is_err());
        assert!(Permutation::parse_permline("permset 1 2\n1 2\n").is_err());
    }

    #[test]
    fn permset_text() {
        let set = PermSet::new(vec![p(&[1, 2, 3]), p(&[3, 2, 1])], Provenance::Imported).unwrap();
        let text = set.to_permset();
        assert_eq!(text, "permset 1 2 3\n1 2 3\n3 2 1\n");
        assert_eq!(PermSet::parse_permset(&text).unwrap(), set);
        assert!(PermSet::parse_permset("permset 1 2 3\n1 2 3\n").is_err());
        assert!(PermSet::parse_permset("permset 1 1 3\n1 2 3\n1 2 3\n").is_err());
        assert!(PermSet::parse_permset("permset 1 1 3\n1 2 2\n").is_err());
    }

    #[test]
    fn permset_requires_common_n() {
        let err = PermSet::new(vec![p(&[1, 2]), p(&[1, 2, 3])], Provenance::Imported);
        assert!(matches!(err, Err(Error::SizeMismatch { .. })));
    }
}

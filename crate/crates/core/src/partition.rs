//! Partitions, Young diagrams and sl_n dominant weights.
//!
//! A [`Partition`] is stored in canonical form: weakly decreasing parts with
//! trailing zeros stripped, so `[2,1,0,0]` and `[2,1]` are the same value.
//! An [`SlnWeight`] is a vector of fundamental-weight coefficients; its
//! partition has `λ_j = Σ_{t ≥ j} c_t`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Part = u32;

type Parts = SmallVec<[Part; 8]>;

/// A weakly decreasing sequence of nonnegative integers, zero-stripped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Parts,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition, rejecting sequences that are not weakly decreasing.
    pub fn new(parts: &[Part]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts.to_vec()));
        }
        Ok(Self::from_sorted(parts.iter().copied()))
    }

    /// Builds a partition from parts already known to be weakly decreasing.
    pub(crate) fn from_sorted(parts: impl IntoIterator<Item = Part>) -> Self {
        let mut parts: Parts = parts.into_iter().collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self { parts }
    }

    /// The rectangle with `rows` rows of length `width`.
    pub fn rectangle(rows: usize, width: Part) -> Self {
        if width == 0 {
            return Self::empty();
        }
        Self {
            parts: std::iter::repeat_n(width, rows).collect(),
        }
    }

    /// The one-row partition `(p)`.
    pub fn row(p: Part) -> Self {
        Self::rectangle(1, p)
    }

    /// The one-column partition `(1^h)`, i.e. the fundamental weight ω_h.
    pub fn column(h: usize) -> Self {
        Self::rectangle(h, 1)
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> Part {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn first(&self) -> Part {
        self.part(0)
    }

    /// Number of boxes `|λ|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// True iff the diagram fits in the `k × (N − k)` box of `ctx`.
    pub fn fits_in_box(&self, ctx: GrassmannianContext) -> bool {
        self.len() <= ctx.k() && self.first() <= ctx.width()
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Self {
        let width = self.first() as usize;
        let mut out = Parts::with_capacity(width);
        for col in 0..width {
            let col = col as Part;
            out.push(self.parts.iter().take_while(|&&p| p > col).count() as Part);
        }
        Self { parts: out }
    }

    /// The complement of `λ` in the `k × (N − k)` box, rotated by 180°.
    ///
    /// This is the Poincaré dual index: `σ_λ · σ_{λ^∨}` contains the point
    /// class with coefficient one.
    pub fn complement(&self, ctx: GrassmannianContext) -> Result<Self> {
        if !self.fits_in_box(ctx) {
            return Err(Error::OutsideBox {
                partition: self.clone(),
                ctx,
            });
        }
        let w = ctx.width();
        Ok(Self::from_sorted(
            (0..ctx.k()).rev().map(|i| w - self.part(i)),
        ))
    }

    /// True iff `other ⊆ self` as diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Subtracts full columns of height `n`, giving the canonical sl_n
    /// representative with at most `n − 1` nonzero parts.
    pub fn normalize_sln(&self, n: usize) -> Result<Self> {
        if self.len() > n {
            return Err(Error::TooManyParts {
                partition: self.clone(),
                max: n,
            });
        }
        let shift = if self.len() == n { self.part(n - 1) } else { 0 };
        Ok(Self::from_sorted(self.parts.iter().map(|&p| p - shift)))
    }

    /// The sl_n weight with this partition; requires at most `n − 1` parts.
    pub fn to_weight(&self, n: usize) -> Result<SlnWeight> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        if self.len() > n - 1 {
            return Err(Error::TooManyParts {
                partition: self.clone(),
                max: n - 1,
            });
        }
        let coeffs = (0..n - 1)
            .map(|i| self.part(i) - self.part(i + 1))
            .collect();
        Ok(SlnWeight { n, coeffs })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"[2,2,1]"`; brackets are optional, `"[]"` is empty.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Ok(Self::empty());
        }
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Part>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<Part>::deserialize(d)?;
        Partition::new(&parts).map_err(serde::de::Error::custom)
    }
}

/// A dominant integral weight of sl_n in the fundamental-weight basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SlnWeight {
    n: usize,
    coeffs: Vec<Part>,
}

impl SlnWeight {
    /// `coeffs` are `c_1, …, c_{n−1}`; shorter vectors are zero-padded.
    pub fn new(n: usize, coeffs: &[Part]) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        if coeffs.len() > n - 1 {
            return Err(Error::Parse(format!(
                "sl_{n} weight takes at most {} coefficients, got {}",
                n - 1,
                coeffs.len()
            )));
        }
        let mut c = coeffs.to_vec();
        c.resize(n - 1, 0);
        Ok(Self { n, coeffs: c })
    }

    /// Coefficients from signed input, rejecting negatives.
    pub fn from_signed(n: usize, coeffs: &[i64]) -> Result<Self> {
        let c = coeffs
            .iter()
            .map(|&x| Part::try_from(x).map_err(|_| Error::NegativeCoefficient(x)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &c)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    /// The fundamental weight ω_i; ω_0 and ω_n are the zero weight.
    pub fn fundamental(n: usize, i: usize) -> Result<Self> {
        let mut w = Self::zero(n)?;
        if i > n {
            return Err(Error::Parse(format!("ω_{i} is not a weight of sl_{n}")));
        }
        if (1..n).contains(&i) {
            w.coeffs[i - 1] = 1;
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Part] {
        &self.coeffs
    }

    /// Coefficient of ω_i (1-based); zero outside `1..n`.
    pub fn coeff(&self, i: usize) -> Part {
        if i == 0 {
            return 0;
        }
        self.coeffs.get(i - 1).copied().unwrap_or(0)
    }

    /// `Σ c_i`, which equals the first part of the partition.
    pub fn level(&self) -> Part {
        self.coeffs.iter().sum()
    }

    pub fn to_partition(&self) -> Partition {
        let mut acc = 0;
        let mut parts: Vec<Part> = self
            .coeffs
            .iter()
            .rev()
            .map(|&c| {
                acc += c;
                acc
            })
            .collect();
        parts.reverse();
        Partition::from_sorted(parts)
    }

    /// Parses either a coefficient tuple `"(0,2,1)"` or a sum such as
    /// `"2*w_1+w_3"`.  A bracketed partition `"[2,1]"` is also accepted.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            return t.parse::<Partition>()?.normalize_sln(n)?.to_weight(n);
        }
        if let Some(body) = t.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            if body.trim().is_empty() {
                return Self::zero(n);
            }
            let c = body
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient {x:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::from_signed(n, &c);
        }
        let mut w = Self::zero(n)?;
        if t == "0" {
            return Ok(w);
        }
        for term in t.split('+') {
            let term = term.trim();
            let (coef, name) = match term.split_once('*') {
                Some((c, name)) => {
                    let c = c
                        .trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?;
                    (c, name.trim())
                }
                None => (1, term),
            };
            let idx = name
                .strip_prefix("w_")
                .or_else(|| name.strip_prefix('w'))
                .or_else(|| name.strip_prefix("ω_"))
                .or_else(|| name.strip_prefix('ω'))
                .and_then(|i| i.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("expected w_i in {term:?}")))?;
            let coef = Part::try_from(coef).map_err(|_| Error::NegativeCoefficient(coef))?;
            if idx > n {
                return Err(Error::Parse(format!("ω_{idx} is not a weight of sl_{n}")));
            }
            if (1..n).contains(&idx) {
                w.coeffs[idx - 1] += coef;
            }
        }
        Ok(w)
    }
}

impl fmt::Display for SlnWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SlnWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl{}{}", self.n, self)
    }
}

/// The Grassmannian `Gr(k, N)` of k-planes in an N-dimensional space.
///
/// Schubert classes are indexed by partitions in the `k × (N − k)` box.
/// `k = N` is allowed: it is the one-point Grassmannian whose only class is
/// the empty partition, needed for the zero weight in the rank dictionary.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassmannianContext {
    k: usize,
    n: usize,
}

impl GrassmannianContext {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::BadGrassmannian { k, n });
        }
        Ok(Self { k, n })
    }

    /// Number of rows of the box.
    pub fn k(self) -> usize {
        self.k
    }

    /// Ambient dimension N; also the degree of `q`.
    pub fn ambient(self) -> usize {
        self.n
    }

    /// Box width `N − k`.
    pub fn width(self) -> Part {
        (self.n - self.k) as Part
    }

    /// `Gr(N − k, N)`, related to this one by transposing diagrams.
    pub fn dual(self) -> Option<Self> {
        Self::new(self.n - self.k, self.n).ok()
    }

    /// The point class `(N−k, …, N−k)`.
    pub fn point(self) -> Partition {
        Partition::rectangle(self.k, self.width())
    }

    /// Complex dimension `k (N − k)`.
    pub fn dimension(self) -> u64 {
        self.k as u64 * u64::from(self.width())
    }

    /// Every partition in the box, in lexicographic order.
    pub fn partitions(self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.k);
        box_rec(self.k, self.width(), &mut cur, &mut out);
        out
    }
}

fn box_rec(rows: usize, max: Part, cur: &mut Vec<Part>, out: &mut Vec<Partition>) {
    if cur.len() == rows {
        out.push(Partition::from_sorted(cur.iter().copied()));
        return;
    }
    for p in 0..=max {
        cur.push(p);
        box_rec(rows, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for GrassmannianContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.k, self.n)
    }
}

impl fmt::Debug for GrassmannianContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GrassmannianContext {
    type Err = Error;

    /// Parses `"k,N"`.
    fn from_str(s: &str) -> Result<Self> {
        let (k, n) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected k,N, got {s:?}")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad Grassmannian {s:?}")))
        };
        Self::new(parse(k)?, parse(n)?)
    }
}

/// Every dominant weight of sl_n of level at most `level`, each exactly once.
///
/// These are the partitions in the `(n − 1) × level` box; there are
/// `binomial(n − 1 + level, level)` of them.  Order is lexicographic in the
/// coefficient vector.
pub fn enumerate_weights(n: usize, level: Part) -> impl Iterator<Item = SlnWeight> {
    assert!(n >= 2, "sl_n needs n >= 2");
    let mut coeffs = vec![0; n - 1];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = SlnWeight {
            n,
            coeffs: coeffs.clone(),
        };
        // Odometer over coefficient vectors with sum <= level.
        let mut i = coeffs.len();
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            let sum: Part = coeffs.iter().sum();
            if sum < level {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = 0;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
    }

    #[test]
    fn size_examples() {
        assert_eq!(p("[2,1,1]").size(), 4);
        assert_eq!(Partition::empty().size(), 0);
        assert_eq!(Partition::rectangle(5, 3).size(), 15);
    }

    #[test]
    fn canonical_form_strips_zeros() {
        assert_eq!(Partition::new(&[2, 1, 0, 0]).unwrap(), p("[2,1]"));
        assert_eq!(p("[0]"), Partition::empty());
        assert!(Partition::new(&[1, 2]).is_err());
    }

    #[test]
    fn fits_in_box_examples() {
        let g = |k, n| GrassmannianContext::new(k, n).unwrap();
        assert!(p("[2,2]").fits_in_box(g(2, 4)));
        assert!(!p("[3]").fits_in_box(g(2, 4)));
        assert!(!p("[1,1,1]").fits_in_box(g(2, 5)));
    }

    #[test]
    fn weight_partition_examples() {
        let w2 = SlnWeight::fundamental(4, 2).unwrap();
        assert_eq!(w2.to_partition(), p("[1,1]"));
        // (ℓ−m)ω_i + mω_{i+1} with ℓ=3, m=1, i=2 in sl_5
        let w = SlnWeight::new(5, &[0, 2, 1, 0]).unwrap();
        assert_eq!(w.to_partition(), p("[3,3,1]"));
        assert_eq!(w.level(), 3);
        assert_eq!(SlnWeight::new(3, &[1, 0]).unwrap().to_partition(), p("[1]"));
        assert!(SlnWeight::from_signed(3, &[1, -1]).is_err());
    }

    #[test]
    fn weight_parsing() {
        let a = SlnWeight::parse(5, "2*w_2+w_3").unwrap();
        assert_eq!(a.coeffs(), &[0, 2, 1, 0]);
        assert_eq!(SlnWeight::parse(5, "(0,2,1,0)").unwrap(), a);
        assert_eq!(SlnWeight::parse(5, "[3,3,1]").unwrap(), a);
        assert_eq!(
            SlnWeight::parse(7, "w_3").unwrap().to_partition(),
            p("[1,1,1]")
        );
        assert_eq!(
            SlnWeight::parse(4, "w_4").unwrap(),
            SlnWeight::zero(4).unwrap()
        );
        assert!(SlnWeight::parse(4, "-1*w_2").is_err());
        assert!(SlnWeight::parse(4, "w_9").is_err());
        assert!(SlnWeight::parse(4, "(1,2,3,4)").is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p("[3,2,2,2]").normalize_sln(4).unwrap(), p("[1]"));
        assert_eq!(p("[1,1]").normalize_sln(4).unwrap(), p("[1,1]"));
        assert_eq!(
            Partition::rectangle(4, 3).normalize_sln(4).unwrap(),
            Partition::empty()
        );
        assert!(p("[1,1,1,1,1]").normalize_sln(4).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let got: Vec<_> = enumerate_weights(3, 1).map(|w| w.to_partition()).collect();
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, vec![p("[]"), p("[1]"), p("[1,1]")]);
        let got: Vec<_> = enumerate_weights(2, 2).map(|w| w.to_partition()).collect();
        assert_eq!(got.len(), 3);
        assert!(got.contains(&p("[2]")));
        assert_eq!(enumerate_weights(4, 2).count(), 10);
    }

    #[test]
    fn enumerate_counts_match_binomial() {
        for n in 2..=8usize {
            for l in 1..=5 {
                let ws: Vec<_> = enumerate_weights(n, l).collect();
                assert_eq!(ws.len() as u64, binomial(n as u64 - 1 + l as u64, l as u64));
                let set: std::collections::HashSet<_> = ws.iter().collect();
                assert_eq!(set.len(), ws.len());
                assert!(ws.iter().all(|w| w.level() <= l));
            }
        }
    }

    #[test]
    fn box_enumeration_count() {
        let ctx = GrassmannianContext::new(3, 7).unwrap();
        assert_eq!(ctx.partitions().len() as u64, binomial(7, 3));
        assert!(ctx.partitions().iter().all(|l| l.fits_in_box(ctx)));
    }

    #[test]
    fn complement_and_conjugate() {
        let ctx = GrassmannianContext::new(3, 6).unwrap();
        assert_eq!(p("[2,1]").complement(ctx).unwrap(), p("[3,2,1]"));
        assert_eq!(p("[]").complement(ctx).unwrap(), ctx.point());
        assert_eq!(p("[3,1]").conjugate(), p("[2,1,1]"));
        assert!(p("[4]").complement(ctx).is_err());
    }

    #[test]
    fn display_round_trip() {
        assert_eq!(p("[2, 2, 1]").to_string(), "[2,2,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!("4,6".parse::<GrassmannianContext>().unwrap().width(), 2);
        assert!("0,3".parse::<GrassmannianContext>().is_err());
        assert!(GrassmannianContext::new(4, 4).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn partition() -> impl Strategy<Value = Partition> {
            prop::collection::vec(0u32..7, 0..7).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Partition::new(&v).unwrap()
            })
        }

        proptest! {
            #[test]
            fn conjugation_is_involution(l in partition()) {
                prop_assert_eq!(l.conjugate().conjugate(), l.clone());
                prop_assert_eq!(l.conjugate().size(), l.size());
            }

            #[test]
            fn weight_round_trip(l in partition(), extra in 1usize..4) {
                let n = (l.len() + extra).max(2);
                let w = l.to_weight(n).unwrap();
                prop_assert_eq!(w.to_partition(), l.clone());
                prop_assert_eq!(w.level(), l.first());
            }

            #[test]
            fn normalize_is_idempotent(l in partition(), extra in 0usize..3) {
                let n = (l.len() + extra).max(2);
                let once = l.normalize_sln(n).unwrap();
                prop_assert_eq!(once.normalize_sln(n).unwrap(), once.clone());
                prop_assert!(once.len() < n);
                prop_assert_eq!(once.size() % n as u64, l.size() % n as u64);
            }
        }
    }
}

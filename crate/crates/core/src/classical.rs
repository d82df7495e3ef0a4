//! The cohomology ring `H*(Gr(k, N))` in the Schubert basis.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::engine::{self, Terms};
use crate::error::{Error, Result};
use crate::partition::{GrassmannianContext, Part, Partition};

/// A sparse integer combination of Schubert classes.
///
/// Keys always fit the `k × (N − k)` box and no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct CohomologyElement {
    ctx: GrassmannianContext,
    terms: BTreeMap<Partition, BigInt>,
}

impl CohomologyElement {
    pub fn zero(ctx: GrassmannianContext) -> Self {
        Self {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `σ_∅ = 1`.
    pub fn one(ctx: GrassmannianContext) -> Self {
        Self::from_terms(ctx, [(Partition::empty(), BigInt::from(1))])
    }

    /// The Schubert class `σ_λ`; errors if `λ` leaves the box.
    pub fn schubert(ctx: GrassmannianContext, lambda: Partition) -> Result<Self> {
        if !lambda.fits_in_box(ctx) {
            return Err(Error::OutsideBox {
                partition: lambda,
                ctx,
            });
        }
        Ok(Self::from_terms(ctx, [(lambda, BigInt::from(1))]))
    }

    /// The special class `σ_p`.
    pub fn special(ctx: GrassmannianContext, p: Part) -> Result<Self> {
        if p > ctx.width() {
            return Err(Error::InvalidSpecialClass { p, ctx });
        }
        Self::schubert(ctx, Partition::row(p))
    }

    /// Sums the given terms; classes outside the box are dropped.
    pub fn from_terms(
        ctx: GrassmannianContext,
        terms: impl IntoIterator<Item = (Partition, BigInt)>,
    ) -> Self {
        let mut out = BTreeMap::new();
        for (l, c) in terms {
            if l.fits_in_box(ctx) {
                *out.entry(l).or_insert_with(BigInt::zero) += c;
            }
        }
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        Self { ctx, terms: out }
    }

    pub(crate) fn from_engine(ctx: GrassmannianContext, t: Terms) -> Self {
        Self::from_terms(
            ctx,
            t.into_iter().map(|((d, l), c)| {
                debug_assert_eq!(d, 0);
                (l, c)
            }),
        )
    }

    pub(crate) fn to_engine(&self) -> Terms {
        self.terms
            .iter()
            .map(|(l, c)| ((0, l.clone()), c.clone()))
            .collect()
    }

    pub fn ctx(&self) -> GrassmannianContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of partitions.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    /// Stored coefficient of `σ_λ`, zero if absent (including outside the box).
    pub fn coefficient_of(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    /// `x · σ_p` by the Pieri rule: add `p` boxes, no two in one column.
    pub fn pieri_mul(&self, p: Part) -> Result<Self> {
        let t = engine::pieri(&self.to_engine(), p, self.ctx, false)?;
        Ok(Self::from_engine(self.ctx, t))
    }

    /// The cup product, via Giambelli expansion and iterated Pieri.
    pub fn giambelli_mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx,
                right: other.ctx,
            });
        }
        let t = engine::mul(&self.to_engine(), &other.to_engine(), self.ctx, false)?;
        Ok(Self::from_engine(self.ctx, t))
    }

    /// `x^e`, with `x^0 = 1`.
    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = acc.giambelli_mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.ctx, self.terms.iter().map(|(l, v)| (l.clone(), v * c)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx,
                right: other.ctx,
            });
        }
        Ok(Self::from_terms(
            self.ctx,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(l, c)| (l.clone(), c.clone())),
        ))
    }
}

impl fmt::Debug for CohomologyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.ctx)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CohomologyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lr::lr_coefficient;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn gr(k: usize, n: usize) -> GrassmannianContext {
        GrassmannianContext::new(k, n).unwrap()
    }

    fn sigma(ctx: GrassmannianContext, s: &str) -> CohomologyElement {
        CohomologyElement::schubert(ctx, p(s)).unwrap()
    }

    fn elem(ctx: GrassmannianContext, terms: &[(&str, i64)]) -> CohomologyElement {
        CohomologyElement::from_terms(ctx, terms.iter().map(|(s, c)| (p(s), BigInt::from(*c))))
    }

    #[test]
    fn pieri_examples() {
        let ctx = gr(4, 6);
        assert_eq!(
            sigma(ctx, "[1,1]").pieri_mul(2).unwrap(),
            elem(ctx, &[("[2,1,1]", 1)])
        );
        // (3,1) appears once the box is wide enough; (2,2) never does
        assert_eq!(
            sigma(gr(4, 7), "[1,1]").pieri_mul(2).unwrap(),
            elem(gr(4, 7), &[("[3,1]", 1), ("[2,1,1]", 1)])
        );
        assert_eq!(
            sigma(ctx, "[2,1]").pieri_mul(0).unwrap(),
            sigma(ctx, "[2,1]")
        );
        assert!(matches!(
            sigma(ctx, "[]").pieri_mul(3),
            Err(Error::InvalidSpecialClass { .. })
        ));
    }

    #[test]
    fn row_power_is_rectangle() {
        for n in 1..=5usize {
            for m in 1..=4u32 {
                let ctx = gr(n, n + m as usize);
                let mut x = CohomologyElement::one(ctx);
                for _ in 0..n {
                    x = x.pieri_mul(m).unwrap();
                }
                assert_eq!(x, sigma(ctx, &Partition::rectangle(n, m).to_string()));
                assert_eq!(x.coefficient_of(&ctx.point()), BigInt::from(1));
            }
        }
    }

    #[test]
    fn giambelli_examples() {
        let ctx = gr(4, 6);
        let a = sigma(ctx, "[1,1]");
        assert_eq!(
            a.giambelli_mul(&a).unwrap(),
            elem(ctx, &[("[1,1,1,1]", 1), ("[2,1,1]", 1), ("[2,2]", 1)])
        );
        assert_eq!(a.giambelli_mul(&CohomologyElement::one(ctx)).unwrap(), a);
        let ctx = gr(2, 4);
        let b = sigma(ctx, "[1]");
        assert_eq!(
            b.giambelli_mul(&b).unwrap(),
            elem(ctx, &[("[2]", 1), ("[1,1]", 1)])
        );
        // k ≥ 4 with wider box: same three terms
        let ctx = gr(5, 8);
        let a = sigma(ctx, "[1,1]");
        assert_eq!(
            a.giambelli_mul(&a).unwrap(),
            elem(ctx, &[("[1,1,1,1]", 1), ("[2,1,1]", 1), ("[2,2]", 1)])
        );
    }

    #[test]
    fn context_mismatch() {
        let a = sigma(gr(2, 4), "[1]");
        let b = sigma(gr(2, 5), "[1]");
        assert!(matches!(
            a.giambelli_mul(&b),
            Err(Error::ContextMismatch { .. })
        ));
    }

    #[test]
    fn coefficient_lookup() {
        let ctx = gr(4, 6);
        let x = elem(ctx, &[("[2,2]", 1), ("[2,1,1]", 3)]);
        assert_eq!(x.coefficient_of(&p("[2,1,1]")), BigInt::from(3));
        assert_eq!(x.coefficient_of(&p("[3]")), BigInt::zero());
        assert!(CohomologyElement::schubert(ctx, p("[3]")).is_err());
    }

    #[test]
    fn poincare_duality() {
        let ctx = gr(3, 7);
        for l in ctx.partitions() {
            let dual = l.complement(ctx).unwrap();
            let prod = sigma(ctx, &l.to_string())
                .giambelli_mul(&sigma(ctx, &dual.to_string()))
                .unwrap();
            assert_eq!(prod.coefficient_of(&ctx.point()), BigInt::from(1), "{l}");
            for m in ctx.partitions() {
                if m.size() == l.size() && m != l {
                    let other = sigma(ctx, &l.to_string())
                        .giambelli_mul(&sigma(ctx, &m.complement(ctx).unwrap().to_string()))
                        .unwrap();
                    assert!(other.coefficient_of(&ctx.point()).is_zero());
                }
            }
        }
    }

    #[test]
    fn matches_lr_in_three_by_three() {
        let ctx = gr(3, 6);
        let parts = ctx.partitions();
        for a in &parts {
            for b in &parts {
                let prod = sigma(ctx, &a.to_string())
                    .giambelli_mul(&sigma(ctx, &b.to_string()))
                    .unwrap();
                for nu in &parts {
                    if nu.size() == a.size() + b.size() {
                        assert_eq!(
                            prod.coefficient_of(nu),
                            BigInt::from(lr_coefficient(a, b, nu)),
                            "c^{nu}_{a},{b}"
                        );
                    }
                }
                for (nu, _) in prod.terms() {
                    assert_eq!(nu.size(), a.size() + b.size());
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn in_box(k: usize, w: u32) -> impl Strategy<Value = Partition> {
            prop::collection::vec(0..=w, k).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Partition::new(&v).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn commutative_and_associative(
                a in in_box(4, 4), b in in_box(4, 4), c in in_box(4, 4)
            ) {
                let ctx = gr(4, 8);
                let (a, b, c) = (
                    CohomologyElement::schubert(ctx, a).unwrap(),
                    CohomologyElement::schubert(ctx, b).unwrap(),
                    CohomologyElement::schubert(ctx, c).unwrap(),
                );
                let ab = a.giambelli_mul(&b).unwrap();
                prop_assert_eq!(&ab, &b.giambelli_mul(&a).unwrap());
                prop_assert_eq!(
                    ab.giambelli_mul(&c).unwrap(),
                    a.giambelli_mul(&b.giambelli_mul(&c).unwrap()).unwrap()
                );
            }
        }
    }
}

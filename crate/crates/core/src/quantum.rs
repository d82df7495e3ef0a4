//! The small quantum cohomology ring `QH*(Gr(k, N))`.
//!
//! As a `ℤ[q]`-module this is `H*(Gr(k, N)) ⊗ ℤ[q]`, with `q` of degree `N`.
//! Products follow the quantum Pieri rule (see [`QuantumElement::qpieri_mul`])
//! and the quantum Giambelli determinant, which has the same shape as the
//! classical one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classical::CohomologyElement;
use crate::engine::{self, Terms};
use crate::error::{Error, Result};
use crate::partition::{GrassmannianContext, Part, Partition};

/// A sparse integer combination of `q^d σ_λ`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuantumElement {
    ctx: GrassmannianContext,
    terms: BTreeMap<(u32, Partition), BigInt>,
}

impl QuantumElement {
    pub fn zero(ctx: GrassmannianContext) -> Self {
        Self {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: GrassmannianContext) -> Self {
        Self::q_schubert(ctx, 0, Partition::empty()).expect("empty partition fits")
    }

    pub fn schubert(ctx: GrassmannianContext, lambda: Partition) -> Result<Self> {
        Self::q_schubert(ctx, 0, lambda)
    }

    /// `q^d σ_λ`.
    pub fn q_schubert(ctx: GrassmannianContext, d: u32, lambda: Partition) -> Result<Self> {
        if !lambda.fits_in_box(ctx) {
            return Err(Error::OutsideBox {
                partition: lambda,
                ctx,
            });
        }
        Ok(Self::from_terms(ctx, [((d, lambda), BigInt::from(1))]))
    }

    pub fn special(ctx: GrassmannianContext, p: Part) -> Result<Self> {
        if p > ctx.width() {
            return Err(Error::InvalidSpecialClass { p, ctx });
        }
        Self::schubert(ctx, Partition::row(p))
    }

    /// Sums the given terms, dropping classes outside the box.
    pub fn from_terms(
        ctx: GrassmannianContext,
        terms: impl IntoIterator<Item = ((u32, Partition), BigInt)>,
    ) -> Self {
        let mut out = BTreeMap::new();
        for (key, c) in terms {
            if key.1.fits_in_box(ctx) {
                *out.entry(key).or_insert_with(BigInt::zero) += c;
            }
        }
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        Self { ctx, terms: out }
    }

    pub(crate) fn from_engine(ctx: GrassmannianContext, t: Terms) -> Self {
        Self::from_terms(ctx, t)
    }

    pub(crate) fn to_engine(&self) -> Terms {
        self.terms
            .iter()
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect()
    }

    /// Embeds a classical element with q-degree zero.
    pub fn from_classical(x: &CohomologyElement) -> Self {
        Self::from_terms(x.ctx(), x.terms().map(|(l, c)| ((0, l.clone()), c.clone())))
    }

    pub fn ctx(&self) -> GrassmannianContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted by `(q-degree, partition)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Partition, &BigInt)> {
        self.terms.iter().map(|((d, l), c)| (*d, l, c))
    }

    /// Coefficient of `q^s σ_λ`, zero if absent.
    pub fn qcoefficient_of(&self, s: u32, lambda: &Partition) -> BigInt {
        // BTreeMap lookups need an owned key
        self.terms
            .get(&(s, lambda.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// `x ⋆ σ_p` by the quantum Pieri rule.
    ///
    /// The classical part adds a horizontal `p`-strip inside the box.  The
    /// `q`-part is nonzero only on classes `σ_λ` with exactly `k` rows and
    /// contributes `q σ_ν` for each `ν` interlacing `λ` shifted down by one,
    /// `λ_i − 1 ≥ ν_i ≥ λ_{i+1} − 1`, with `|ν| = |λ| + p − N`.  In diagram
    /// terms every row of `λ` loses at least one box.
    pub fn qpieri_mul(&self, p: Part) -> Result<Self> {
        let t = engine::pieri(&self.to_engine(), p, self.ctx, true)?;
        Ok(Self::from_engine(self.ctx, t))
    }

    /// The quantum product.
    pub fn qmul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx,
                right: other.ctx,
            });
        }
        let t = engine::mul(&self.to_engine(), &other.to_engine(), self.ctx, true)?;
        Ok(Self::from_engine(self.ctx, t))
    }

    /// `x^{⋆e}`, with `x^{⋆0} = 1`.
    pub fn qpower(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = acc.qmul(self)?;
        }
        Ok(acc)
    }

    /// Sets `q = 0`.
    pub fn classical_limit(&self) -> CohomologyElement {
        CohomologyElement::from_terms(
            self.ctx,
            self.terms
                .iter()
                .filter(|((d, _), _)| *d == 0)
                .map(|((_, l), c)| (l.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.ctx, self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    /// Multiplies by `q^d`.
    pub fn shift_q(&self, d: u32) -> Self {
        Self::from_terms(
            self.ctx,
            self.terms
                .iter()
                .map(|((e, l), c)| ((e + d, l.clone()), c.clone())),
        )
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
                .map(|(k, c)| (k.clone(), c.clone())),
        ))
    }
}

impl fmt::Debug for QuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.ctx)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuantumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((d, l), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*q^{d}*{l}")?;
        }
        Ok(())
    }
}

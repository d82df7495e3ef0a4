//! Shared multiplication machinery for the classical and quantum rings.
//!
//! Elements are sparse maps `(q-degree, partition) → integer`.  Classical
//! arithmetic is the same code with the q-terms of the Pieri rule switched
//! off, so every classical element has all q-degrees zero.
//!
//! A product with a Schubert class `σ_λ` is computed by expanding `σ_λ` as the
//! Jacobi–Trudi determinant `det(σ_{λ_i + j − i})` into a signed polynomial in
//! the special classes `σ_p` (with `σ_0 = 1` and `σ_p = 0` for `p < 0` or
//! `p > N − k`) and applying the Pieri rule once per factor.  When `λ` has more
//! rows than columns the product is taken in `Gr(N − k, N)` on transposed
//! diagrams, which is a ring isomorphism fixing `q` and gives a smaller
//! determinant.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rustc_hash::{FxBuildHasher, FxHashMap};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::partition::{GrassmannianContext, Part, Partition};

pub(crate) type Key = (u32, Partition);
pub(crate) type Terms = FxHashMap<Key, BigInt>;

/// A monomial `σ_{p_1} ⋯ σ_{p_r}` with positive parts, largest first.
type Monomial = SmallVec<[Part; 8]>;

/// Signed special-class expansion of a Schubert class.
type Expansion = Arc<Vec<(Monomial, i64)>>;

type ProductKey = (GrassmannianContext, bool, Partition, Partition);

fn expansion_cache() -> &'static DashMap<(Partition, Part), Expansion, FxBuildHasher> {
    static CACHE: OnceLock<DashMap<(Partition, Part), Expansion, FxBuildHasher>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn product_cache() -> &'static DashMap<ProductKey, Arc<Terms>, FxBuildHasher> {
    static CACHE: OnceLock<DashMap<ProductKey, Arc<Terms>, FxBuildHasher>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Drops all memoized expansions and basis products.
pub fn clear_caches() {
    expansion_cache().clear();
    product_cache().clear();
}

pub(crate) fn add_term(out: &mut Terms, key: Key, coeff: &BigInt) {
    if coeff.is_zero() {
        return;
    }
    match out.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(coeff.clone());
        }
    }
}

/// Enumerates integer vectors `v` with `lo[i] ≤ v[i] ≤ hi[i]` and `Σ v = target`.
fn bounded_compositions(lo: &[Part], hi: &[Part], target: u64, mut emit: impl FnMut(&[Part])) {
    let len = lo.len();
    // suffix sums of the bounds for pruning
    let mut lo_suffix = vec![0u64; len + 1];
    let mut hi_suffix = vec![0u64; len + 1];
    for i in (0..len).rev() {
        lo_suffix[i] = lo_suffix[i + 1] + u64::from(lo[i]);
        hi_suffix[i] = hi_suffix[i + 1] + u64::from(hi[i]);
    }
    if target < lo_suffix[0] || target > hi_suffix[0] {
        return;
    }
    let mut cur = vec![0 as Part; len];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        remaining: u64,
        lo: &[Part],
        hi: &[Part],
        lo_suffix: &[u64],
        hi_suffix: &[u64],
        cur: &mut [Part],
        emit: &mut dyn FnMut(&[Part]),
    ) {
        if i == cur.len() {
            if remaining == 0 {
                emit(cur);
            }
            return;
        }
        let rest_lo = lo_suffix[i + 1];
        let rest_hi = hi_suffix[i + 1];
        let min = u64::from(lo[i]).max(remaining.saturating_sub(rest_hi));
        let max = u64::from(hi[i]).min(remaining.saturating_sub(rest_lo));
        if remaining < rest_lo {
            return;
        }
        for v in min..=max {
            cur[i] = v as Part;
            rec(
                i + 1,
                remaining - v,
                lo,
                hi,
                lo_suffix,
                hi_suffix,
                cur,
                emit,
            );
        }
    }
    rec(
        0, target, lo, hi, &lo_suffix, &hi_suffix, &mut cur, &mut emit,
    );
}

/// Partitions obtained from `lambda` by adding a horizontal strip of `p`
/// boxes inside the box of `ctx`.
pub(crate) fn horizontal_strips(
    lambda: &Partition,
    p: Part,
    ctx: GrassmannianContext,
    mut emit: impl FnMut(Partition),
) {
    let rows = ctx.k().min(lambda.len() + 1);
    let lo: SmallVec<[Part; 16]> = (0..rows).map(|i| lambda.part(i)).collect();
    let hi: SmallVec<[Part; 16]> = (0..rows)
        .map(|i| {
            if i == 0 {
                ctx.width()
            } else {
                lambda.part(i - 1)
            }
        })
        .collect();
    bounded_compositions(&lo, &hi, lambda.size() + u64::from(p), |v| {
        emit(Partition::from_sorted(v.iter().copied()))
    });
}

/// The `q`-terms of the quantum Pieri rule for `σ_λ ⋆ σ_p` in `QH*(Gr(k, N))`.
///
/// `σ_ν` appears (with coefficient one) iff `λ` has exactly `k` nonzero rows,
/// `λ_i − 1 ≥ ν_i ≥ λ_{i+1} − 1` for every row (`λ_{k+1} = 0`), and
/// `|ν| = |λ| + p − N`.  This is the row-interlacing form of the rule: each row
/// of `λ` loses at least one box.  A literal "one box from each column"
/// reading would admit extra terms, e.g. `ν = (2)` in
/// `σ_{(2,2,1,1,1,1,1)} ⋆ σ_2` on `Gr(7, 9)`, where the only q-term is
/// `σ_{(1,1)}`; it would also break `σ_ℓ^{⋆(k+ℓ)} = q^ℓ`.
pub(crate) fn quantum_strips(
    lambda: &Partition,
    p: Part,
    ctx: GrassmannianContext,
    mut emit: impl FnMut(Partition),
) {
    let k = ctx.k();
    if lambda.len() != k {
        return;
    }
    let total = lambda.size() + u64::from(p);
    let Some(target) = total.checked_sub(ctx.ambient() as u64) else {
        return;
    };
    let lo: SmallVec<[Part; 16]> = (0..k)
        .map(|i| lambda.part(i + 1).saturating_sub(1))
        .collect();
    let hi: SmallVec<[Part; 16]> = (0..k).map(|i| lambda.part(i) - 1).collect();
    bounded_compositions(&lo, &hi, target, |v| {
        emit(Partition::from_sorted(v.iter().copied()))
    });
}

/// `x · σ_p`, with quantum corrections when `quantum` is set.
pub(crate) fn pieri(x: &Terms, p: Part, ctx: GrassmannianContext, quantum: bool) -> Result<Terms> {
    if p > ctx.width() {
        return Err(Error::InvalidSpecialClass { p, ctx });
    }
    if p == 0 {
        return Ok(x.clone());
    }
    let mut out = Terms::with_capacity_and_hasher(x.len() * 2, Default::default());
    for ((d, lambda), c) in x {
        horizontal_strips(lambda, p, ctx, |nu| add_term(&mut out, (*d, nu), c));
        if quantum {
            quantum_strips(lambda, p, ctx, |nu| add_term(&mut out, (*d + 1, nu), c));
        }
    }
    Ok(out)
}

/// Jacobi–Trudi expansion of `σ_λ` in special classes `σ_1, …, σ_width`.
pub(crate) fn jacobi_trudi(lambda: &Partition, width: Part) -> Expansion {
    let key = (lambda.clone(), width);
    if let Some(e) = expansion_cache().get(&key) {
        return e.clone();
    }
    let e = Arc::new(expand_determinant(lambda, width));
    expansion_cache().insert(key, e.clone());
    e
}

/// Expands `det(h_{λ_i + j − i})` over row-by-row column choices, sharing
/// work between permutations with the same set of used columns.
fn expand_determinant(lambda: &Partition, width: Part) -> Vec<(Monomial, i64)> {
    let r = lambda.len();
    if r == 0 {
        return vec![(Monomial::new(), 1)];
    }
    assert!(r < 31, "Jacobi–Trudi determinant of size {r} is too large");
    let mut layer: FxHashMap<u32, FxHashMap<Monomial, i64>> = FxHashMap::default();
    layer.entry(0).or_default().insert(Monomial::new(), 1);
    for i in 0..r {
        let mut next: FxHashMap<u32, FxHashMap<Monomial, i64>> = FxHashMap::default();
        for (mask, poly) in &layer {
            for j in 0..r {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let idx = i64::from(lambda.part(i)) + j as i64 - i as i64;
                if idx < 0 || idx > i64::from(width) {
                    continue;
                }
                // sign of inserting column j after the columns already used
                let inversions = (mask >> j).count_ones();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                let target = next.entry(mask | (1 << j)).or_default();
                for (mono, c) in poly {
                    let mut m = mono.clone();
                    if idx > 0 {
                        let pos = m.partition_point(|&x| x >= idx as Part);
                        m.insert(pos, idx as Part);
                    }
                    let v = target.entry(m).or_insert(0);
                    *v = v
                        .checked_add(sign * c)
                        .expect("Jacobi–Trudi coefficient overflow");
                }
            }
        }
        for poly in next.values_mut() {
            poly.retain(|_, c| *c != 0);
        }
        next.retain(|_, poly| !poly.is_empty());
        layer = next;
    }
    let mut out: Vec<(Monomial, i64)> = layer.into_values().flatten().collect();
    out.sort();
    out
}

/// Applies a sorted list of monomials to `x`, reusing Pieri products along
/// shared prefixes.
fn apply_monomials(
    x: &Terms,
    monos: &[(Monomial, i64)],
    depth: usize,
    ctx: GrassmannianContext,
    quantum: bool,
    out: &mut Terms,
) -> Result<()> {
    let mut i = 0;
    while i < monos.len() {
        let (m, c) = &monos[i];
        if m.len() == depth {
            let c = BigInt::from(*c);
            for (key, v) in x {
                add_term(out, key.clone(), &(v * &c));
            }
            i += 1;
            continue;
        }
        let p = m[depth];
        let end = i + monos[i..]
            .iter()
            .take_while(|(m2, _)| m2.len() > depth && m2[depth] == p)
            .count();
        let y = pieri(x, p, ctx, quantum)?;
        if !y.is_empty() {
            apply_monomials(&y, &monos[i..end], depth + 1, ctx, quantum, out)?;
        }
        i = end;
    }
    Ok(())
}

fn transpose_terms(x: &Terms) -> Terms {
    x.iter()
        .map(|((d, l), c)| ((*d, l.conjugate()), c.clone()))
        .collect()
}

/// `x · σ_λ` (or `x ⋆ σ_λ`), checked for negative coefficients.
pub(crate) fn mul_class(
    x: &Terms,
    lambda: &Partition,
    ctx: GrassmannianContext,
    quantum: bool,
) -> Result<Terms> {
    if !lambda.fits_in_box(ctx) {
        return Err(Error::OutsideBox {
            partition: lambda.clone(),
            ctx,
        });
    }
    if lambda.is_empty() {
        return Ok(x.clone());
    }
    let out = if (lambda.first() as usize) < lambda.len() {
        let dual = ctx
            .dual()
            .expect("nonempty partition implies positive width");
        let t = transpose_terms(x);
        let lt = lambda.conjugate();
        let e = jacobi_trudi(&lt, dual.width());
        let mut out = Terms::default();
        apply_monomials(&t, &e, 0, dual, quantum, &mut out)?;
        transpose_terms(&out)
    } else {
        let e = jacobi_trudi(lambda, ctx.width());
        let mut out = Terms::default();
        apply_monomials(x, &e, 0, ctx, quantum, &mut out)?;
        out
    };
    check_nonnegative(&out, ctx)?;
    Ok(out)
}

pub(crate) fn check_nonnegative(x: &Terms, ctx: GrassmannianContext) -> Result<()> {
    if let Some(((d, l), c)) = x.iter().find(|(_, c)| c.is_negative()) {
        return Err(Error::Inconsistent(format!(
            "coefficient {c} of q^{d}·σ{l} in {ctx} is negative"
        )));
    }
    Ok(())
}

/// Memoized `σ_λ · σ_μ` for basis classes.
pub(crate) fn basis_product(
    lambda: &Partition,
    mu: &Partition,
    ctx: GrassmannianContext,
    quantum: bool,
) -> Result<Arc<Terms>> {
    let (a, b) = if lambda <= mu {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let key = (ctx, quantum, a.clone(), b.clone());
    if let Some(t) = product_cache().get(&key) {
        return Ok(t.clone());
    }
    // expand the factor with the smaller determinant
    let cost = |l: &Partition| l.len().min(l.first() as usize);
    let (expand, keep) = if cost(a) <= cost(b) { (a, b) } else { (b, a) };
    let mut x = Terms::default();
    x.insert((0, keep.clone()), BigInt::from(1));
    let t = Arc::new(mul_class(&x, expand, ctx, quantum)?);
    product_cache().insert(key, t.clone());
    Ok(t)
}

/// Bilinear product of two elements.
pub(crate) fn mul(x: &Terms, y: &Terms, ctx: GrassmannianContext, quantum: bool) -> Result<Terms> {
    let (x, y) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    if y.len() == 1 {
        let ((d, l), c) = y.iter().next().expect("one term");
        let prod = mul_class(x, l, ctx, quantum)?;
        return Ok(prod
            .into_iter()
            .map(|((e, nu), v)| ((e + d, nu), v * c))
            .collect());
    }
    let mut out = Terms::default();
    for ((d1, a), c1) in x {
        for ((d2, b), c2) in y {
            let c = c1 * c2;
            for ((e, nu), v) in basis_product(a, b, ctx, quantum)?.iter() {
                add_term(&mut out, (d1 + d2 + e, nu.clone()), &(v * &c));
            }
        }
    }
    check_nonnegative(&out, ctx)?;
    Ok(out)
}

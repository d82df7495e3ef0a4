//! Ranks of sl_n conformal-blocks bundles `𝕍(sl_n, λ⃗, ℓ)` via Witten's
//! dictionary, and the checks built on them.
//!
//! For weights `λ_1, …, λ_m` (as partitions with at most `n − 1` rows) let
//! `T = Σ |λ_i|`.  If `n ∤ T` the rank is zero.  Otherwise put `k = T / n` and
//! `s = k − ℓ`:
//!
//! * `s ≤ 0`: the rank is the coefficient of the point class `σ_{(k^n)}` in
//!   `Π σ_{λ_i}` in `H*(Gr(n, n + k))`;
//! * `s > 0`: the rank is the coefficient of `q^s σ_{(ℓ^n)}` in
//!   `Π σ_{λ_i} ⋆ σ_ℓ^{⋆s}` in `QH*(Gr(n, n + ℓ))`.
//!
//! The coefficient is extracted by splitting the product into two halves `A`
//! and `B` and pairing them: the coefficient of `q^d [pt]` in `σ_a ⋆ σ_b` is
//! `1` when `d = 0` and `b` is the box complement of `a`, and `0` otherwise.
//! [`rank_by_full_product`] computes the full product instead and is kept as
//! an independent route.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize, Serializer};

use crate::engine::{self, Terms};
use crate::error::{Error, Result};
use crate::partition::{enumerate_weights, GrassmannianContext, Part, Partition, SlnWeight};

/// Which branch of the dictionary produced a rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DictionaryCase {
    /// `s ≤ 0`: classical product in `Gr(n, n + k)`.
    Classical,
    /// `s > 0`: quantum product in `Gr(n, n + ℓ)`.
    Quantum,
    /// `Σ |λ_i|` is not divisible by `n`.
    ZeroByCongruence,
}

impl fmt::Display for DictionaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Classical => "classical",
            Self::Quantum => "quantum",
            Self::ZeroByCongruence => "zero-by-congruence",
        })
    }
}

/// A level-`ℓ` tuple of sl_n weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankQuery {
    n: usize,
    level: Part,
    weights: Vec<SlnWeight>,
}

impl RankQuery {
    pub fn new(n: usize, level: Part, weights: Vec<SlnWeight>) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        if level == 0 {
            return Err(Error::InvalidQuery("level must be at least 1".into()));
        }
        if weights.is_empty() {
            return Err(Error::InvalidQuery("no weights given".into()));
        }
        for w in &weights {
            if w.n() != n {
                return Err(Error::InvalidQuery(format!(
                    "weight {w} belongs to sl_{}, not sl_{n}",
                    w.n()
                )));
            }
            if w.level() > level {
                return Err(Error::LevelExceeded {
                    weight: w.to_string(),
                    weight_level: w.level(),
                    level,
                });
            }
        }
        Ok(Self { n, level, weights })
    }

    /// The `S_n`-invariant query `𝕍(sl_n, λ^n, ℓ)`.
    pub fn symmetric(weight: SlnWeight, level: Part) -> Result<Self> {
        let n = weight.n();
        Self::new(n, level, vec![weight; n])
    }

    /// `weight` repeated `count` times.
    pub fn repeated(weight: SlnWeight, count: usize, level: Part) -> Result<Self> {
        let n = weight.n();
        Self::new(n, level, vec![weight; count])
    }

    /// Builds a query from partitions, normalizing full columns away first.
    pub fn from_partitions(n: usize, level: Part, partitions: &[Partition]) -> Result<Self> {
        let weights = partitions
            .iter()
            .map(|p| p.normalize_sln(n)?.to_weight(n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, level, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> Part {
        self.level
    }

    pub fn weights(&self) -> &[SlnWeight] {
        &self.weights
    }

    fn canonical(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.sort();
        Self {
            n: self.n,
            level: self.level,
            weights,
        }
    }
}

/// A computed rank together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankResult {
    /// The rank, or a lower bound when `exact` is false.
    #[serde(rename = "rank_or_bound", serialize_with = "serialize_bigint")]
    pub rank: BigInt,
    /// False only when an early-exit limit stopped the computation.
    pub exact: bool,
    pub dictionary_case: DictionaryCase,
    /// `k − ℓ` where `k = Σ|λ_i| / n`; zero for the congruence case.
    pub s: i64,
    /// The Grassmannian the product was taken in.
    pub context_used: Option<GrassmannianContext>,
}

impl RankResult {
    /// True iff the rank is known to be exactly one.
    pub fn is_one(&self) -> bool {
        self.exact && self.rank.is_one()
    }

    /// True iff the rank is known to exceed one.
    pub fn exceeds_one(&self) -> bool {
        self.rank > BigInt::one()
    }
}

pub(crate) fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn rank_cache() -> &'static DashMap<RankQuery, RankResult, FxBuildHasher> {
    static CACHE: OnceLock<DashMap<RankQuery, RankResult, FxBuildHasher>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Drops memoized ranks together with the ring caches.
pub fn clear_caches() {
    rank_cache().clear();
    engine::clear_caches();
}

/// The Schubert problem a query reduces to.
struct Problem {
    ctx: GrassmannianContext,
    quantum: bool,
    s: i64,
    factors: Vec<Partition>,
    /// number of extra `σ_ℓ` factors in the quantum case
    rows: u32,
}

enum Setup {
    Zero(RankResult),
    Solve(Problem),
}

fn setup(q: &RankQuery) -> Result<Setup> {
    let n = q.n;
    let mut factors: Vec<Partition> = q
        .weights
        .iter()
        .map(|w| w.to_partition().normalize_sln(n))
        .collect::<Result<_>>()?;
    factors.sort();
    let total: u64 = factors.iter().map(Partition::size).sum();
    if !total.is_multiple_of(n as u64) {
        return Ok(Setup::Zero(RankResult {
            rank: BigInt::zero(),
            exact: true,
            dictionary_case: DictionaryCase::ZeroByCongruence,
            s: 0,
            context_used: None,
        }));
    }
    let k = total / n as u64;
    let s = k as i64 - i64::from(q.level);
    if s <= 0 {
        let ctx = GrassmannianContext::new(n, n + k as usize)?;
        if factors.iter().any(|f| !f.fits_in_box(ctx)) {
            return Ok(Setup::Zero(RankResult {
                rank: BigInt::zero(),
                exact: true,
                dictionary_case: DictionaryCase::Classical,
                s,
                context_used: Some(ctx),
            }));
        }
        Ok(Setup::Solve(Problem {
            ctx,
            quantum: false,
            s,
            factors,
            rows: 0,
        }))
    } else {
        let ctx = GrassmannianContext::new(n, n + q.level as usize)?;
        Ok(Setup::Solve(Problem {
            ctx,
            quantum: true,
            s,
            factors,
            rows: s as u32,
        }))
    }
}

impl Problem {
    fn case(&self) -> DictionaryCase {
        if self.quantum {
            DictionaryCase::Quantum
        } else {
            DictionaryCase::Classical
        }
    }

    fn q_target(&self) -> u32 {
        self.s.max(0) as u32
    }

    fn product_from(&self, mut acc: Terms, factors: &[Partition]) -> Result<Terms> {
        for f in factors {
            acc = engine::mul_class(&acc, f, self.ctx, self.quantum)?;
        }
        Ok(acc)
    }

    fn with_rows(&self, mut acc: Terms) -> Result<Terms> {
        let width = self.ctx.width();
        for _ in 0..self.rows {
            acc = engine::pieri(&acc, width, self.ctx, self.quantum)?;
        }
        Ok(acc)
    }

    fn unit(&self) -> Terms {
        let mut t = Terms::default();
        t.insert((0, Partition::empty()), BigInt::one());
        t
    }

    /// Coefficient of `q^s [pt]` by pairing two half products.
    fn paired(&self, limit: Option<u64>) -> Result<(BigInt, bool)> {
        let m = self.factors.len();
        let half = m / 2;
        let a = self.product_from(self.unit(), &self.factors[..half])?;
        let b = if self.factors[..half] == self.factors[half..2 * half] {
            self.product_from(a.clone(), &self.factors[2 * half..])?
        } else {
            self.product_from(self.unit(), &self.factors[half..])?
        };
        let b = self.with_rows(b)?;
        let target = self.q_target();
        let mut keys: Vec<_> = a.keys().filter(|(d, _)| *d <= target).collect();
        keys.sort();
        let mut acc = BigInt::zero();
        for key in keys {
            let (d, lambda) = key;
            let dual = (target - d, lambda.complement(self.ctx)?);
            if let Some(cb) = b.get(&dual) {
                acc += &a[key] * cb;
                if let Some(limit) = limit {
                    if acc > BigInt::from(limit) {
                        return Ok((acc, false));
                    }
                }
            }
        }
        Ok((acc, true))
    }

    fn full(&self) -> Result<BigInt> {
        let prod = self.with_rows(self.product_from(self.unit(), &self.factors)?)?;
        Ok(prod
            .get(&(self.q_target(), self.ctx.point()))
            .cloned()
            .unwrap_or_default())
    }
}

/// The rank of `𝕍(sl_n, λ⃗, ℓ)`.
pub fn rank(q: &RankQuery) -> Result<RankResult> {
    rank_with_limit(q, None)
}

/// Like [`rank`], but stops once the rank is known to exceed `limit`.
///
/// The target coefficient is a sum of products of nonnegative structure
/// constants, so partial sums are lower bounds; a stopped result has
/// `exact = false` and a `rank` strictly above `limit`.
pub fn rank_with_limit(q: &RankQuery, limit: Option<u64>) -> Result<RankResult> {
    let key = q.canonical();
    if let Some(r) = rank_cache().get(&key) {
        return Ok(r.clone());
    }
    let problem = match setup(&key)? {
        Setup::Zero(r) => return Ok(r),
        Setup::Solve(p) => p,
    };
    let (rank, exact) = problem.paired(limit)?;
    let result = RankResult {
        rank,
        exact,
        dictionary_case: problem.case(),
        s: problem.s,
        context_used: Some(problem.ctx),
    };
    if exact {
        rank_cache().insert(key, result.clone());
    }
    Ok(result)
}

/// The rank read off the fully expanded product, without pairing or caching.
pub fn rank_by_full_product(q: &RankQuery) -> Result<RankResult> {
    let problem = match setup(&q.canonical())? {
        Setup::Zero(r) => return Ok(r),
        Setup::Solve(p) => p,
    };
    Ok(RankResult {
        rank: problem.full()?,
        exact: true,
        dictionary_case: problem.case(),
        s: problem.s,
        context_used: Some(problem.ctx),
    })
}

/// Membership witness `(i, m)` for `(ℓ − m) ω_i + m ω_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaWitness {
    pub i: usize,
    pub m: Part,
}

/// Decides whether `w ∈ Λ = {(ℓ − m) ω_i + m ω_{i+1} : 0 ≤ m ≤ ℓ, 0 ≤ i ≤ n − 1}`.
///
/// Here `ω_0 = ω_n = 0`, so besides the weights supported on two adjacent
/// fundamental weights with coefficient sum `ℓ`, the set contains every
/// `m ω_1` (from `i = 0`) and every `b ω_{n−1}` (from `i = n − 1`).
pub fn in_lambda(w: &SlnWeight, level: Part) -> Option<LambdaWitness> {
    let n = w.n();
    let support: Vec<usize> = (1..n).filter(|&i| w.coeff(i) > 0).collect();
    match support.as_slice() {
        [] => Some(LambdaWitness { i: 0, m: 0 }),
        &[j] if w.coeff(j) == level => Some(LambdaWitness { i: j, m: 0 }),
        &[1] => Some(LambdaWitness {
            i: 0,
            m: w.coeff(1),
        }),
        &[j] if j == n - 1 => Some(LambdaWitness {
            i: n - 1,
            m: level - w.coeff(j),
        }),
        &[i, j] if j == i + 1 && w.coeff(i) + w.coeff(j) == level => {
            Some(LambdaWitness { i, m: w.coeff(j) })
        }
        _ => None,
    }
}

/// One line of a classification sweep.
#[derive(Clone, Debug, Serialize)]
pub struct WeightRecord {
    pub n: usize,
    pub level: Part,
    pub weight: SlnWeight,
    pub partition: Partition,
    #[serde(serialize_with = "serialize_bigint")]
    pub rank_or_bound: BigInt,
    pub exact: bool,
    pub in_lambda: bool,
    pub witness: Option<LambdaWitness>,
    pub dictionary_case: DictionaryCase,
    pub s: i64,
    /// Whether `rank = 1 ⇔ λ ∈ Λ` holds for this weight.
    pub consistent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
        })
    }
}

/// Outcome of checking the rank-one classification for one `(n, ℓ)`.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub level: Part,
    pub verdict: Verdict,
    pub records: Vec<WeightRecord>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Stop each rank computation once it is known to exceed one.
    pub early_exit: bool,
    /// Compute weights on the rayon pool.
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            early_exit: true,
            parallel: true,
        }
    }
}

/// Checks `rk 𝕍(sl_n, λ^n, ℓ) = 1 ⇔ λ ∈ Λ` for every weight of level ≤ ℓ.
pub fn verify_theorem(n: usize, level: Part, opts: VerifyOptions) -> Result<TheoremReport> {
    if n < 2 || level == 0 {
        return Err(Error::InvalidQuery(format!(
            "need n >= 2 and level >= 1, got n = {n}, level = {level}"
        )));
    }
    let weights: Vec<SlnWeight> = enumerate_weights(n, level).collect();
    let check = |w: &SlnWeight| -> Result<WeightRecord> {
        let q = RankQuery::symmetric(w.clone(), level)?;
        let r = rank_with_limit(&q, opts.early_exit.then_some(1))?;
        let witness = in_lambda(w, level);
        let consistent = r.is_one() == witness.is_some();
        Ok(WeightRecord {
            n,
            level,
            weight: w.clone(),
            partition: w.to_partition(),
            rank_or_bound: r.rank,
            exact: r.exact,
            in_lambda: witness.is_some(),
            witness,
            dictionary_case: r.dictionary_case,
            s: r.s,
            consistent,
        })
    };
    let mut records: Vec<WeightRecord> = if opts.parallel {
        weights.par_iter().map(check).collect::<Result<_>>()?
    } else {
        weights.iter().map(check).collect::<Result<_>>()?
    };
    records.sort_by(|a, b| a.weight.cmp(&b.weight));
    let verdict = if records.iter().all(|r| r.consistent) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(TheoremReport {
        n,
        level,
        verdict,
        records,
    })
}

fn symmetric_rank(lambda: &Partition, n: usize, level: Part) -> Result<BigInt> {
    if level == 0 {
        // level-zero bundles are trivial of rank one
        return Ok(BigInt::one());
    }
    let q = RankQuery::from_partitions(n, level, &vec![lambda.clone(); n])?;
    Ok(rank(&q)?.rank)
}

/// Result of comparing `λ = (ℓ^i, μ)` with its tail `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationCheck {
    pub tail: Partition,
    pub rank_full: BigInt,
    pub rank_tail: BigInt,
}

impl FactorizationCheck {
    pub fn holds(&self) -> bool {
        self.rank_full == self.rank_tail
    }
}

/// Compares `rk 𝕍(sl_n, λ^n, ℓ)` with `rk 𝕍(sl_n, μ^n, ℓ)`, where `λ` starts
/// with `i ≥ 1` rows equal to `ℓ` and `μ` is what remains below them.
pub fn check_factorization(
    lambda: &Partition,
    n: usize,
    level: Part,
) -> Result<FactorizationCheck> {
    let lambda = lambda.normalize_sln(n)?;
    let i = lambda.parts().iter().take_while(|&&p| p == level).count();
    if i == 0 || lambda.first() != level {
        return Err(Error::Precondition(format!(
            "{lambda} does not start with a row of length {level}"
        )));
    }
    let tail = Partition::from_sorted(lambda.parts()[i..].iter().copied());
    Ok(FactorizationCheck {
        rank_full: symmetric_rank(&lambda, n, level)?,
        rank_tail: symmetric_rank(&tail, n, level)?,
        tail,
    })
}

/// Returns whether `rk 𝕍(sl_n, μ^n, ℓ) ≤ rk 𝕍(sl_n, μ^n, ℓ + c)`.
pub fn check_monotonicity(mu: &Partition, n: usize, level: Part, c: Part) -> Result<bool> {
    if c == 0 {
        return Err(Error::Precondition(
            "level increment must be positive".into(),
        ));
    }
    let mu = mu.normalize_sln(n)?;
    if mu.first() > level {
        return Err(Error::LevelExceeded {
            weight: mu.to_string(),
            weight_level: mu.first(),
            level,
        });
    }
    let low = symmetric_rank(&mu, n, level)?;
    let high = symmetric_rank(&mu, n, level + c)?;
    Ok(low.cmp(&high) != Ordering::Greater)
}

/// The three ranks behind splitting `(ℓ − m) ω_i + m ω_{i+1}` at level `ℓ`
/// into `(ℓ − m) ω_i` at level `ℓ − m` and `m ω_{i+1}` at level `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub combined: BigInt,
    pub first: BigInt,
    pub second: BigInt,
}

impl DecompositionWitness {
    pub fn holds(&self) -> bool {
        self.combined.is_one() && self.first.is_one() && self.second.is_one()
    }
}

pub fn decomposition_witness(
    n: usize,
    level: Part,
    m: Part,
    i: usize,
) -> Result<DecompositionWitness> {
    if m > level || i == 0 || i >= n {
        return Err(Error::Precondition(format!(
            "need 0 <= m <= level and 1 <= i <= n - 1, got m = {m}, i = {i}"
        )));
    }
    let combined = Partition::from_sorted(std::iter::repeat_n(level, i).chain(std::iter::once(m)))
        .normalize_sln(n)?;
    let first = Partition::rectangle(i, level - m).normalize_sln(n)?;
    let second = Partition::rectangle(i + 1, m).normalize_sln(n)?;
    Ok(DecompositionWitness {
        combined: symmetric_rank(&combined, n, level)?,
        first: symmetric_rank(&first, n, level - m)?,
        second: symmetric_rank(&second, n, m)?,
    })
}

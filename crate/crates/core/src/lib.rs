//! Exact Schubert calculus on Grassmannians and ranks of sl_n
//! conformal-blocks bundles.
//!
//! * [`partition`]: partitions, sl_n weights, Grassmannian boxes.
//! * [`classical`]: `H*(Gr(k, N))` with Pieri and Giambelli products.
//! * [`quantum`]: `QH*(Gr(k, N))` with quantum Pieri and Giambelli.
//! * [`lr`]: Littlewood–Richardson coefficients by tableau enumeration.
//! * [`conformal_blocks`]: Witten's dictionary, the rank-one classification
//!   and related rank checks.

pub mod classical;
pub mod conformal_blocks;
mod engine;
pub mod error;
pub mod lr;
pub mod partition;
pub mod quantum;

pub use classical::CohomologyElement;
pub use conformal_blocks::{
    check_factorization, check_monotonicity, clear_caches, decomposition_witness, in_lambda, rank,
    rank_by_full_product, rank_with_limit, verify_theorem, DecompositionWitness, DictionaryCase,
    FactorizationCheck, LambdaWitness, RankQuery, RankResult, TheoremReport, Verdict,
    VerifyOptions, WeightRecord,
};
pub use error::{Error, Result};
pub use lr::lr_coefficient;
pub use partition::{enumerate_weights, GrassmannianContext, Part, Partition, SlnWeight};
pub use quantum::QuantumElement;

use thiserror::Error;

use crate::partition::{GrassmannianContext, Part, Partition};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parts {0:?} are not weakly decreasing")]
    NotDecreasing(Vec<Part>),

    #[error("negative weight coefficient {0}")]
    NegativeCoefficient(i64),

    #[error("sl_n needs n >= 2, got n = {0}")]
    RankTooSmall(usize),

    #[error("partition {partition} has more than {max} nonzero parts")]
    TooManyParts { partition: Partition, max: usize },

    #[error("Gr({k},{n}) is not a Grassmannian (need 0 < k <= N)")]
    BadGrassmannian { k: usize, n: usize },

    #[error("partition {partition} does not fit the box of {ctx}")]
    OutsideBox {
        partition: Partition,
        ctx: GrassmannianContext,
    },

    #[error("special class sigma_{p} does not exist in {ctx}")]
    InvalidSpecialClass { p: Part, ctx: GrassmannianContext },

    #[error("cannot combine elements of {left} and {right}")]
    ContextMismatch {
        left: GrassmannianContext,
        right: GrassmannianContext,
    },

    #[error("weight {weight} has level {weight_level}, above the level {level}")]
    LevelExceeded {
        weight: String,
        weight_level: Part,
        level: Part,
    },

    #[error("invalid rank query: {0}")]
    InvalidQuery(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A Schubert structure constant came out negative.  Structure constants
    /// of (quantum) Grassmannian cohomology are nonnegative, so this is a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

//! Combinatorial certificates for Heegaard diagrams given as signed
//! intersection words.
//!
//! * [`signs`]: the sign semiring `{0, +, -, *}`, sign matrices, and the
//!   classification of their formal determinant.
//! * [`presentation`]: group presentations and their ε-matrix.
//! * [`orderability`]: non-left-orderability criteria on ε-matrices.
//! * [`heegaard`]: diagrams, intersection matrices, Floer generators and
//!   gradings, and the strong-diagram test.
//! * [`matchings`]: the intersection graph, perfect matchings, leaf pruning
//!   and S³ recognition.
//! * [`report`]: the combined analysis emitted by the command-line tool.
//!
//! Integer linear algebra in [`intmatrix`] is generic over the scalar; the
//! aliases below fix the common choices.

pub mod error;
pub mod heegaard;
pub mod intmatrix;
pub mod matchings;
pub mod orderability;
pub mod permutation;
pub mod presentation;
pub mod report;
pub mod signs;

pub use error::{Error, Result};
pub use heegaard::{gen_lens, Generator, H1Order, HeegaardDiagram, IntersectionPoint, StrongReport};
pub use intmatrix::{ExactInt, IntMatrix};
pub use matchings::{graph_of, recognize_s3, MatchGraph, Matching, S3Outcome, S3Verdict};
pub use orderability::{
    check_lemma_matrix, check_notlo_bruteforce, OrderabilityVerdict, RowScaling,
};
pub use permutation::Permutation;
pub use presentation::{Letter, Presentation};
pub use signs::{classify_formal_det, DetClassification, Polarity, Sign, SignMatrix};

/// Intersection-count and algebraic-intersection matrices.
pub type CountMatrix = IntMatrix<i64>;
/// Wide scalar used for determinants of algebraic intersection matrices.
pub type WideMatrix = IntMatrix<i128>;

/// Caps on the super-polynomial enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    pub max_generators: usize,
    pub max_perm_n: usize,
    pub max_bruteforce_rows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generators: heegaard::DEFAULT_MAX_GENERATORS,
            max_perm_n: signs::DEFAULT_MAX_PERM_N,
            max_bruteforce_rows: orderability::DEFAULT_MAX_BRUTEFORCE_ROWS,
        }
    }
}

//! Typed errors shared by every layer of the kernel.

use thiserror::Error;

/// Errors raised by the scalar and geometric operations.
///
/// Degenerate inputs (mixed parity, mismatched chart signatures) are rejected
/// eagerly with one of these variants; they are never coerced.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chart signature mismatch: ({0}|{1}) vs ({2}|{3})")]
    SignatureMismatch(usize, usize, usize, usize),

    #[error("operands live on different charts")]
    ChartMismatch,

    #[error("superfunction has zero body and is not invertible")]
    NotInvertible,

    #[error("denominator vanishes at the evaluation point")]
    Pole,

    #[error("expected a homogeneous {role}, found mixed parity")]
    MixedParity { role: &'static str },

    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("duplicate coordinate name `{0}`")]
    DuplicateCoordinate(String),

    #[error("entry ({i},{j}) has the wrong parity for a form of parity {form_parity:?}")]
    EntryParity {
        i: usize,
        j: usize,
        form_parity: crate::parity::Parity,
    },

    #[error("form is not graded antisymmetric at entry ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("form is not closed: residual at coordinate triple ({i},{j},{k})")]
    NotClosed { i: usize, j: usize, k: usize },

    #[error("form is degenerate: no invertible-body pivot at elimination step {step}")]
    DegenerateForm { step: usize },

    #[error("Christoffel entry ({i},{j},{k}) violates the parity-even connection rule")]
    ChristoffelParity { i: usize, j: usize, k: usize },

    #[error("connection is not symmetric at Christoffel entry ({i},{j},{k})")]
    NotSymmetric { i: usize, j: usize, k: usize },

    #[error("tensor entry ({i},{j},{k}) has the wrong parity")]
    TensorParity { i: usize, j: usize, k: usize },

    #[error("cochain violates graded symmetry at ({i},{j},{k})")]
    CochainNotSymmetric { i: usize, j: usize, k: usize },

    #[error("component list has length {found}, expected {expected}")]
    ComponentCount { expected: usize, found: usize },

    #[error("could not sample a nondegenerate form after {attempts} attempts")]
    CorpusExhausted { attempts: usize },

    #[error("unsupported Darboux block structure: p={p}, q={q}, omega parity {parity:?}")]
    DarbouxShape {
        p: usize,
        q: usize,
        parity: crate::parity::Parity,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

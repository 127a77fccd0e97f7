use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::exactlin::Q;

/// Which half of the `Z(A) ⊕ [A, A] = A` check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitFailure {
    /// `Z(A) ∩ [A, A]` is nonzero; carries a witness in algebra coordinates.
    IntersectionNonzero { witness: Vec<Q> },
    /// `Z(A) + [A, A]` is a proper subspace; carries an element of `A` outside it.
    SumDeficient { missing: Vec<Q> },
}

impl core::fmt::Display for SplitFailure {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::IntersectionNonzero { witness } => {
                write!(f, "Z ∩ [A,A] ≠ 0 (witness {})", fmt_vec(witness))
            }
            Self::SumDeficient { missing } => {
                write!(f, "Z + [A,A] ≠ A (missing {})", fmt_vec(missing))
            }
        }
    }
}

pub(crate) fn fmt_vec(v: &[Q]) -> String {
    use core::fmt::Write;
    let mut s = String::from("(");
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{x}");
    }
    s.push(')');
    s
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("generator {index} is not invertible")]
    SingularGenerator { index: usize },
    #[error("generator {index} is not square of size {dim}")]
    BadGeneratorShape { index: usize, dim: usize },
    #[error("group not finite under cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("Lie generators are not closed under bracket: [ξ{i}, ξ{j}] leaves their span")]
    NotLieClosed { i: usize, j: usize },
    #[error("torus weight matrix is malformed: {0}")]
    BadWeights(String),
    #[error("action has nonzero fixed vector {}", fmt_vec(.vector))]
    FixedVector { vector: Vec<Q> },
    #[error("basis is not closed under multiplication: b{i}·b{j} leaves the span")]
    NotMultiplicativelyClosed { i: usize, j: usize },
    #[error("structure constants are not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("Jacobi identity fails for (e{i}, e{j}, e{k})")]
    JacobiFailure { i: usize, j: usize, k: usize },
    #[error("automorphism {index} does not preserve brackets")]
    NotAutomorphism { index: usize },
    #[error("derivation {index} violates the Leibniz rule")]
    NotDerivation { index: usize },
    #[error("subspace is not a subalgebra: bracket of basis vectors {i} and {j} leaves it")]
    NotSubalgebra { i: usize, j: usize },
    #[error("subalgebra is not stable under the isotropy action")]
    NotStable,
    #[error("fixed points are not bracket-closed (invalid action data)")]
    FixedNotClosed,
    #[error("quotient undefined: fixed subalgebra is not contained in the ambient one")]
    NotContained,
    #[error("quotient undefined: bracket {} leaves the ideal", fmt_vec(.bracket))]
    NotIdeal { bracket: Vec<Q> },
    #[error("non-generic central elements after {retries} retries")]
    NonGenericCenter { retries: usize },
    #[error("Z ⊕ [A,A] = A check failed: {0}")]
    Split(SplitFailure),
    #[error("ill-conditioned split ({0}); re-randomize the seed")]
    IllConditioned(&'static str),
    #[error("degree bound too large: {monomials} monomials exceed cap {cap}")]
    DegreeTooLarge { monomials: usize, cap: usize },
    #[error("degree bound must be at least 1")]
    ZeroDegree,
    #[error("center is not part of the commutant of this action")]
    CenterMismatch,
    #[error("inconsistent quotient dimensions")]
    InconsistentDims,
    #[error("{0}")]
    Invalid(String),
    #[error("orbit `{label}`: {source}")]
    Orbit {
        label: String,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_orbit(self, label: &str) -> Self {
        Error::Orbit {
            label: label.into(),
            source: alloc::boxed::Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

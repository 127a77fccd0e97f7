//! The commutant `End(V)^H`, its center, its commutator ideal, and the
//! `(m, l)` classification that determines its abelianization.
//!
//! For a compact group the commutant is semisimple, `End(V)^H ≅ ⊕_j gl(n_j, F_j)`
//! with `F_j ∈ {ℝ, ℂ, ℍ}`, so its abelianization is isomorphic to its center
//! `ℝ^{m−l} ⊕ ℂ^l`. The exact route here never decomposes `V`: `m` and `l`
//! are read off the minimal polynomial of a generic central element.

mod oracle;

pub use oracle::{schur_split_oracle, OracleOptions, SchurBlock};

use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, SplitFailure};
use crate::exactlin::{count_real_roots, minimal_polynomial, q, QMatrix, Subspace, Q};
use crate::liealg::LieAlgebraSC;
use crate::symmetry::{invariance_constraints, GroupAction};

/// A unital associative subalgebra of `End(V)`, `V = Qⁿ`.
///
/// The basis is the canonical (RREF) basis of the span of the row-major
/// matrix coordinates, so algebra coordinates are exact and unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra {
    n: usize,
    span: Subspace,
    contains_identity: bool,
}

impl MatrixAlgebra {
    /// Checks independence and closure under multiplication.
    pub fn new(n: usize, basis: Vec<QMatrix>) -> Result<Self> {
        for (index, b) in basis.iter().enumerate() {
            if b.rows() != n || b.cols() != n {
                return Err(Error::BadGeneratorShape { index, dim: n });
            }
        }
        let count = basis.len();
        let span = Subspace::from_vectors(n * n, basis.into_iter().map(QMatrix::into_vec));
        if span.dim() != count {
            return Err(Error::LinearlyDependent);
        }
        Self::from_span(n, span)
    }

    fn from_span(n: usize, span: Subspace) -> Result<Self> {
        let algebra = Self {
            n,
            contains_identity: span.contains(QMatrix::identity(n).as_slice()),
            span,
        };
        let basis = algebra.basis();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if !algebra.span.contains(a.matmul(b).as_slice()) {
                    return Err(Error::NotMultiplicativelyClosed { i, j });
                }
            }
        }
        Ok(algebra)
    }

    /// `n` with `V = Qⁿ`.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn basis(&self) -> Vec<QMatrix> {
        self.span
            .basis()
            .iter()
            .map(|v| QMatrix::from_vec(self.n, self.n, v.clone()).expect("n² coordinates"))
            .collect()
    }

    /// The matrix with the given algebra coordinates.
    pub fn element(&self, coords: &[Q]) -> QMatrix {
        QMatrix::from_vec(self.n, self.n, self.span.element(coords)).expect("n² coordinates")
    }

    pub fn coordinates(&self, x: &QMatrix) -> Option<Vec<Q>> {
        self.span.coordinates(x.as_slice())
    }

    /// `A` as a Lie algebra under the commutator, in algebra coordinates.
    pub fn lie_algebra(&self) -> LieAlgebraSC {
        let basis = self.basis();
        let d = basis.len();
        let mut sc = alloc::vec![alloc::vec![Q::from_integer(0.into()); d]; d * d];
        for i in 0..d {
            for j in i + 1..d {
                let c = self
                    .coordinates(&basis[i].commutator(&basis[j]))
                    .expect("closed algebra contains its commutators");
                sc[j * d + i] = c.iter().map(|x| -x).collect();
                sc[i * d + j] = c;
            }
        }
        LieAlgebraSC::from_trusted(d, sc)
    }
}

/// `End(V)^H` as the common kernel of the equivariance constraints.
pub fn compute_commutant(action: &GroupAction) -> Result<MatrixAlgebra> {
    let span = invariance_constraints(action).invariant_subspace();
    MatrixAlgebra::from_span(action.dim(), span)
}

/// Center and commutator ideal of an algebra, computed once.
#[derive(Clone, Debug)]
pub struct AlgebraStructure {
    pub lie: LieAlgebraSC,
    pub center: Subspace,
    pub commutator: Subspace,
}

impl AlgebraStructure {
    pub fn new(a: &MatrixAlgebra) -> Self {
        let lie = a.lie_algebra();
        Self {
            center: lie.center(),
            commutator: lie.derived_algebra(),
            lie,
        }
    }
}

/// `Z(A)` in algebra coordinates.
pub fn center(a: &MatrixAlgebra) -> Subspace {
    a.lie_algebra().center()
}

/// `[A, A]` in algebra coordinates, spanned by brackets of basis pairs.
pub fn commutator_ideal(a: &MatrixAlgebra) -> Subspace {
    a.lie_algebra().derived_algebra()
}

/// `A / [A, A]`: dimension and representatives (algebra coordinates).
pub fn abelianization(a: &MatrixAlgebra) -> (usize, Vec<Vec<Q>>) {
    crate::liealg::lie_abelianization(&a.lie_algebra())
}

/// Outcome of checking `Z(A) ∩ [A, A] = 0` and `Z(A) + [A, A] = A`.
#[derive(Clone, Debug)]
pub struct SplitCheck {
    pub algebra_dim: usize,
    pub center: Subspace,
    pub commutator: Subspace,
    pub intersection: Subspace,
    pub sum: Subspace,
}

impl SplitCheck {
    pub fn passed(&self) -> bool {
        self.failure().is_none()
    }

    /// The first failing inclusion, with a witness.
    pub fn failure(&self) -> Option<SplitFailure> {
        if let Some(w) = self.intersection.basis().first() {
            return Some(SplitFailure::IntersectionNonzero { witness: w.clone() });
        }
        if self.sum.dim() < self.algebra_dim {
            let missing = Subspace::full(self.algebra_dim)
                .quotient_basis(&self.sum)
                .expect("same ambient")
                .swap_remove(0);
            return Some(SplitFailure::SumDeficient { missing });
        }
        None
    }

    pub fn into_result(self) -> Result<Self> {
        match self.failure() {
            Some(f) => Err(Error::Split(f)),
            None => Ok(self),
        }
    }
}

/// Verify that the center maps isomorphically onto the abelianization.
pub fn verify_split(a: &MatrixAlgebra) -> SplitCheck {
    verify_with(&AlgebraStructure::new(a))
}

pub fn verify_with(s: &AlgebraStructure) -> SplitCheck {
    SplitCheck {
        algebra_dim: s.lie.dim(),
        intersection: s.center.intersection(&s.commutator).expect("same ambient"),
        sum: s.center.sum(&s.commutator).expect("same ambient"),
        center: s.center.clone(),
        commutator: s.commutator.clone(),
    }
}

/// Division algebra `End(V_j)^H` of an irreducible real representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchurType {
    Real,
    Complex,
    Quaternionic,
}

impl SchurType {
    /// Real dimension of the division algebra.
    pub fn dim(self) -> usize {
        match self {
            Self::Real => 1,
            Self::Complex => 2,
            Self::Quaternionic => 4,
        }
    }

    pub fn from_dim(d: usize) -> Option<Self> {
        match d {
            1 => Some(Self::Real),
            2 => Some(Self::Complex),
            4 => Some(Self::Quaternionic),
            _ => None,
        }
    }
}

impl fmt::Display for SchurType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Real => "R",
            Self::Complex => "C",
            Self::Quaternionic => "H",
        })
    }
}

/// `m` simple factors, `l` of complex type; `ℋ(A) ≅ ℝ^{m−l} ⊕ ℂ^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MLClassification {
    pub m: usize,
    pub l: usize,
    pub center_dim: usize,
    pub abelianization_dim: usize,
    /// Per-block types, when a decomposition oracle supplied them.
    pub schur_types: Option<Vec<SchurType>>,
}

impl MLClassification {
    /// Real rank `m − l` of the abelianization.
    pub fn real_rank(&self) -> usize {
        self.m - self.l
    }

    /// Complex rank `l` of the abelianization.
    pub fn complex_rank(&self) -> usize {
        self.l
    }
}

/// Random coefficient range and retry policy for [`classify_ml`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub seed: u64,
    pub initial_range: i64,
    pub retries: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            initial_range: 10,
            retries: 20,
        }
    }
}

/// `(m, l)` from a generic central element.
///
/// On a block of type ℝ or ℍ a central element acts by a real scalar, on a
/// block of type ℂ by a complex one. For generic `z` the squarefree minimal
/// polynomial therefore has one real root per ℝ/ℍ block and one conjugate
/// pair per ℂ block, and degree `dim Z(A)`.
pub fn classify_ml(a: &MatrixAlgebra, opts: ClassifyOptions) -> Result<MLClassification> {
    classify_with(a, &AlgebraStructure::new(a), opts)
}

pub fn classify_with(
    a: &MatrixAlgebra,
    s: &AlgebraStructure,
    opts: ClassifyOptions,
) -> Result<MLClassification> {
    let zdim = s.center.dim();
    let abelianization_dim = s.lie.dim() - s.commutator.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut range = opts.initial_range.max(1);
    for _ in 0..opts.retries {
        let coords: Vec<Q> = (0..zdim).map(|_| q(rng.gen_range(-range..=range))).collect();
        let z = a.element(&s.center.element(&coords));
        let p = minimal_polynomial(&z).squarefree_part();
        if p.degree() == Some(zdim) {
            let rc = count_real_roots(&p)?;
            let (m, l) = (rc.real_roots + rc.conjugate_pairs, rc.conjugate_pairs);
            debug_assert_eq!(rc.real_roots + 2 * rc.conjugate_pairs, zdim);
            return Ok(MLClassification {
                m,
                l,
                center_dim: zdim,
                abelianization_dim,
                schur_types: None,
            });
        }
        range = range.saturating_mul(2);
    }
    Err(Error::NonGenericCenter {
        retries: opts.retries,
    })
}

/// Real matrix algebras `gl(n, F)` as subalgebras of `End(ℝ^{n·dim F})`.
pub mod standard {
    use super::*;

    /// Left multiplication by `1, i, j, k` on `ℍ = ℝ⁴` in the basis `(1, i, j, k)`.
    pub fn quaternion_units() -> [QMatrix; 4] {
        [
            QMatrix::identity(4),
            QMatrix::from_i64(&[[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
            QMatrix::from_i64(&[[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]),
            QMatrix::from_i64(&[[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
        ]
    }

    /// Right multiplication by `1, i, j, k`; commutes with every left multiplication.
    pub fn quaternion_right_units() -> [QMatrix; 4] {
        [
            QMatrix::identity(4),
            QMatrix::from_i64(&[[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
            QMatrix::from_i64(&[[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]),
            QMatrix::from_i64(&[[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]),
        ]
    }

    fn unit(n: usize, i: usize, j: usize) -> QMatrix {
        let mut e = QMatrix::zeros(n, n);
        e[(i, j)] = q(1);
        e
    }

    fn gl_over(n: usize, units: &[QMatrix]) -> MatrixAlgebra {
        let basis = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .flat_map(|(i, j)| units.iter().map(move |u| unit(n, i, j).kron(u)))
            .collect();
        let size = n * units[0].rows();
        MatrixAlgebra::new(size, basis).expect("gl(n, F) is an algebra")
    }

    /// `gl(n, ℝ)`, dimension `n²`.
    pub fn gl_real(n: usize) -> MatrixAlgebra {
        gl_over(n, &[QMatrix::identity(1)])
    }

    /// `gl(n, ℂ)` on `ℝ^{2n}`, dimension `2n²`.
    pub fn gl_complex(n: usize) -> MatrixAlgebra {
        gl_over(n, &[QMatrix::identity(2), QMatrix::from_i64(&[[0, -1], [1, 0]])])
    }

    /// `gl(n, ℍ)` on `ℝ^{4n}` (quaternion scalars acting on the right), dimension `4n²`.
    pub fn gl_quaternion(n: usize) -> MatrixAlgebra {
        gl_over(n, &quaternion_right_units())
    }

    /// Upper-triangular `2 × 2` matrices: not semisimple.
    pub fn upper_triangular_2() -> MatrixAlgebra {
        MatrixAlgebra::new(2, alloc::vec![unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 1)])
            .expect("closed")
    }
}

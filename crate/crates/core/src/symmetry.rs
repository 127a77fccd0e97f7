//! Descriptors for a compact group `H` acting linearly on `V = Qⁿ`.
//!
//! Three presentations are supported: a finite matrix group given by
//! generators, a torus given by an integer weight matrix on complex
//! coordinates, and a connected group given by Lie-algebra generators.
//! Each reduces invariance to a finite list of exact linear constraints.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{common_kernel, q, QMatrix, Subspace, Q};

/// Default cap on the number of elements enumerated for a finite group.
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// A group element together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: QMatrix,
    pub inverse: QMatrix,
}

/// A finite group of invertible rational matrices, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    dim: usize,
    generators: Vec<GroupElement>,
}

impl FiniteGroup {
    pub fn new(dim: usize, generators: Vec<QMatrix>) -> Result<Self> {
        let generators = generators
            .into_iter()
            .enumerate()
            .map(|(index, g)| {
                if g.rows() != dim || g.cols() != dim {
                    return Err(Error::BadGeneratorShape { index, dim });
                }
                let inverse = g.inverse().ok_or(Error::SingularGenerator { index })?;
                Ok(GroupElement { matrix: g, inverse })
            })
            .collect::<Result<_>>()?;
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// All group elements by breadth-first closure over the generators,
    /// starting from the identity. The order is deterministic.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<GroupElement>> {
        let id = QMatrix::identity(self.dim);
        let mut seen: BTreeSet<QMatrix> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(GroupElement {
            matrix: id.clone(),
            inverse: id,
        });
        while let Some(h) = queue.pop_front() {
            for g in &self.generators {
                let next = h.matrix.matmul(&g.matrix);
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                seen.insert(next.clone());
                queue.push_back(GroupElement {
                    matrix: next,
                    inverse: g.inverse.matmul(&h.inverse),
                });
            }
            out.push(h);
        }
        Ok(out)
    }
}

/// A torus `T^k` acting on `ℂ^m ≅ Q^{2m}`.
///
/// Complex coordinate `c` is `z_c = x_c + i·y_c` with real coordinates at
/// indices `2c` and `2c + 1`. One-parameter subgroup `r` acts on `z_c` by
/// `e^{i·w[r][c]·t}`, so its generator is `w[r][c]·J` on that block with
/// `J = [[0, −1], [1, 0]]` (counterclockwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAction {
    weights: Vec<Vec<i64>>,
}

impl TorusAction {
    pub fn new(weights: Vec<Vec<i64>>) -> Result<Self> {
        let m = weights.first().map(Vec::len).ok_or_else(|| {
            Error::BadWeights("weight matrix needs at least one row".into())
        })?;
        if m == 0 {
            return Err(Error::BadWeights("weight matrix has no columns".into()));
        }
        if let Some(r) = weights.iter().position(|row| row.len() != m) {
            return Err(Error::BadWeights(format!("row {r} has the wrong length")));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// Dimension `k` of the torus.
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// Number `m` of complex coordinates.
    pub fn complex_dim(&self) -> usize {
        self.weights[0].len()
    }

    pub fn dim(&self) -> usize {
        2 * self.complex_dim()
    }

    /// Weight column of complex coordinate `c`.
    pub fn column(&self, c: usize) -> Vec<i64> {
        self.weights.iter().map(|row| row[c]).collect()
    }

    /// Infinitesimal generators, one per row of the weight matrix.
    pub fn generators(&self) -> Vec<QMatrix> {
        let n = self.dim();
        self.weights
            .iter()
            .map(|row| {
                let mut g = QMatrix::zeros(n, n);
                for (c, &w) in row.iter().enumerate() {
                    g[(2 * c, 2 * c + 1)] = q(-w);
                    g[(2 * c + 1, 2 * c)] = q(w);
                }
                g
            })
            .collect()
    }
}

/// A connected group given by generators of its Lie algebra inside `End(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedAction {
    dim: usize,
    generators: Vec<QMatrix>,
}

impl ConnectedAction {
    /// Verifies that the span of the generators is closed under the bracket.
    pub fn new(dim: usize, generators: Vec<QMatrix>) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::BadGeneratorShape { index, dim });
            }
        }
        let span = Subspace::from_vectors(
            dim * dim,
            generators.iter().map(|g| g.as_slice().to_vec()),
        );
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                let b = generators[i].commutator(&generators[j]);
                if !span.contains(b.as_slice()) {
                    return Err(Error::NotLieClosed { i, j });
                }
            }
        }
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[QMatrix] {
        &self.generators
    }
}

/// A compact group acting on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupAction {
    Finite(FiniteGroup),
    Torus(TorusAction),
    Connected(ConnectedAction),
}

impl GroupAction {
    pub fn dim(&self) -> usize {
        match self {
            Self::Finite(g) => g.dim(),
            Self::Torus(t) => t.dim(),
            Self::Connected(c) => c.dim(),
        }
    }

    /// Lie-algebra generators for the connected variants; `None` for finite groups.
    pub fn infinitesimal_generators(&self) -> Option<Vec<QMatrix>> {
        match self {
            Self::Finite(_) => None,
            Self::Torus(t) => Some(t.generators()),
            Self::Connected(c) => Some(c.generators().to_vec()),
        }
    }

    /// Maps whose common kernel on `V` is the fixed subspace `V^H`.
    fn vector_constraints(&self) -> Vec<QMatrix> {
        match self {
            Self::Finite(g) => {
                let id = QMatrix::identity(g.dim());
                g.generators().iter().map(|e| &e.matrix - &id).collect()
            }
            _ => self.infinitesimal_generators().unwrap_or_default(),
        }
    }

    /// The fixed subspace `V^H`.
    pub fn fixed_vectors(&self) -> Subspace {
        let maps = self.vector_constraints();
        common_kernel(self.dim(), maps.iter().map(|m| move |v: &[Q]| m.apply(v)))
    }
}

/// Whether `V^H = 0`.
pub fn check_no_trivial_summand(action: &GroupAction) -> bool {
    action.fixed_vectors().is_zero()
}

/// One linear operator on `End(V)` whose kernel contains the invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `X ↦ g X g⁻¹ − X`.
    Conjugation(GroupElement),
    /// `X ↦ ξ X − X ξ`.
    Commutator(QMatrix),
}

impl Constraint {
    pub fn apply(&self, x: &QMatrix) -> QMatrix {
        match self {
            Self::Conjugation(g) => &g.matrix.matmul(x).matmul(&g.inverse) - x,
            Self::Commutator(xi) => xi.commutator(x),
        }
    }

    /// The operator as an `n² × n²` matrix on row-major coordinates.
    pub fn matrix(&self, n: usize) -> QMatrix {
        let mut out = QMatrix::zeros(n * n, n * n);
        for col in 0..n * n {
            let mut e = QMatrix::zeros(n, n);
            e[(col / n, col % n)] = q(1);
            let img = self.apply(&e);
            for (row, x) in img.as_slice().iter().enumerate() {
                if !x.is_zero() {
                    out[(row, col)] = x.clone();
                }
            }
        }
        out
    }
}

/// The constraint family whose common kernel is `End(V)^H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixednessConstraint {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl FixednessConstraint {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// The common kernel as a subspace of `Q^{n²}` (row-major matrices).
    pub fn invariant_subspace(&self) -> Subspace {
        let n = self.dim;
        common_kernel(
            n * n,
            self.constraints.iter().map(|c| {
                move |v: &[Q]| {
                    let x = QMatrix::from_vec(n, n, v.to_vec()).expect("n² coordinates");
                    c.apply(&x).into_vec()
                }
            }),
        )
    }
}

/// Equivariance constraints on `End(V)`: conjugation by each generator for
/// finite groups, brackets with each Lie generator for connected groups
/// (invariance under a connected group equals invariance under its Lie algebra).
pub fn invariance_constraints(action: &GroupAction) -> FixednessConstraint {
    let constraints = match action {
        GroupAction::Finite(g) => g
            .generators()
            .iter()
            .filter(|e| !e.matrix.is_identity())
            .cloned()
            .map(Constraint::Conjugation)
            .collect(),
        _ => action
            .infinitesimal_generators()
            .unwrap_or_default()
            .into_iter()
            .filter(|xi| !xi.is_zero())
            .map(Constraint::Commutator)
            .collect(),
    };
    FixednessConstraint {
        dim: action.dim(),
        constraints,
    }
}

/// Anything that can be averaged over a group.
pub trait Averageable: Sized {
    fn zero_like(&self) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn scale(&mut self, s: &Q);
}

impl Averageable for QMatrix {
    fn zero_like(&self) -> Self {
        QMatrix::zeros(self.rows(), self.cols())
    }

    fn add_assign(&mut self, other: &Self) {
        *self = &*self + other;
    }

    fn scale(&mut self, s: &Q) {
        *self = QMatrix::scale(self, s);
    }
}

/// `(1/|G|) Σ_g act(g, x)` over an enumerated group.
pub fn reynolds_with<T, F>(elements: &[GroupElement], x: &T, act: F) -> T
where
    T: Averageable,
    F: Fn(&GroupElement, &T) -> T,
{
    let mut acc = x.zero_like();
    for g in elements {
        acc.add_assign(&act(g, x));
    }
    acc.scale(&Q::new(1.into(), (elements.len() as i64).into()));
    acc
}

/// Reynolds projection of an operator on `V`: `(1/|G|) Σ_g g T g⁻¹`.
pub fn reynolds(elements: &[GroupElement], t: &QMatrix) -> QMatrix {
    reynolds_with(elements, t, |g, t| g.matrix.matmul(t).matmul(&g.inverse))
}

/// Standard actions used as examples.
pub mod standard {
    use alloc::vec::Vec;

    use super::ConnectedAction;
    use num_traits::Zero;

    use crate::exactlin::{q, QMatrix, Q};

    /// Complex `n × n` matrix as a real `2n × 2n` matrix, coordinate `c`
    /// becoming the real pair `(2c, 2c + 1)`.
    pub fn realify(re: &QMatrix, im: &QMatrix) -> QMatrix {
        let n = re.rows();
        let mut out = QMatrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                let (a, b) = (&re[(r, c)], &im[(r, c)]);
                out[(2 * r, 2 * c)] = a.clone();
                out[(2 * r, 2 * c + 1)] = -b.clone();
                out[(2 * r + 1, 2 * c)] = b.clone();
                out[(2 * r + 1, 2 * c + 1)] = a.clone();
            }
        }
        out
    }

    /// Basis of `su(n)` as pairs (real part, imaginary part).
    pub fn su_basis(n: usize) -> Vec<(QMatrix, QMatrix)> {
        let mut out = Vec::new();
        let unit = |r: usize, c: usize, x: i64| {
            let mut m = QMatrix::zeros(n, n);
            m[(r, c)] = q(x);
            m
        };
        for j in 0..n {
            for k in j + 1..n {
                out.push((&unit(j, k, 1) - &unit(k, j, 1), QMatrix::zeros(n, n)));
                out.push((QMatrix::zeros(n, n), &unit(j, k, 1) + &unit(k, j, 1)));
            }
        }
        for j in 0..n.saturating_sub(1) {
            out.push((QMatrix::zeros(n, n), &unit(j, j, 1) - &unit(j + 1, j + 1, 1)));
        }
        out
    }

    /// Induced action of a complex matrix on `Λ²C^n`, basis `e_a ∧ e_b` for `a < b`
    /// in lexicographic order.
    fn wedge2(x: &QMatrix) -> QMatrix {
        let n = x.rows();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let index = |a: usize, b: usize| -> (usize, Q) {
            if a < b {
                (pairs.iter().position(|&p| p == (a, b)).unwrap(), q(1))
            } else {
                (pairs.iter().position(|&p| p == (b, a)).unwrap(), q(-1))
            }
        };
        let mut out = QMatrix::zeros(pairs.len(), pairs.len());
        for (col, &(a, b)) in pairs.iter().enumerate() {
            for r in 0..n {
                if r != b && !x[(r, a)].is_zero() {
                    let (row, s) = index(r, b);
                    out[(row, col)] += &x[(r, a)] * s;
                }
                if r != a && !x[(r, b)].is_zero() {
                    let (row, s) = index(a, r);
                    out[(row, col)] += &x[(r, b)] * s;
                }
            }
        }
        out
    }

    /// `su(n)` acting on `C^n ⊕ Λ²C^n`, as a real representation.
    pub fn su_vector_plus_wedge2(n: usize) -> ConnectedAction {
        let gens: Vec<QMatrix> = su_basis(n)
            .iter()
            .map(|(re, im)| {
                let v = realify(re, im);
                let w = realify(&wedge2(re), &wedge2(im));
                QMatrix::block_diag(&[v, w])
            })
            .collect();
        let dim = gens[0].rows();
        ConnectedAction::new(dim, gens).expect("su(n) is closed under brackets")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> FiniteGroup {
        FiniteGroup::new(2, alloc::vec![QMatrix::from_i64(&[[0, -1], [1, -1]])]).unwrap()
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let els = c3().enumerate(DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(els.len(), 3);
        assert!(els[0].matrix.is_identity());
        for e in &els {
            assert!(e.matrix.matmul(&e.inverse).is_identity());
        }
    }

    #[test]
    fn empty_generators_give_identity() {
        let g = FiniteGroup::new(3, Vec::new()).unwrap();
        let els = g.enumerate(DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(els.len(), 1);
        assert!(els[0].matrix.is_identity());
        assert!(invariance_constraints(&GroupAction::Finite(g)).is_empty());
    }

    #[test]
    fn infinite_generator_hits_cap() {
        let g = FiniteGroup::new(2, alloc::vec![QMatrix::from_i64(&[[1, 1], [0, 1]])]).unwrap();
        assert_eq!(g.enumerate(50), Err(Error::GroupTooLarge { cap: 50 }));
    }

    #[test]
    fn singular_generator_rejected() {
        let err = FiniteGroup::new(2, alloc::vec![QMatrix::from_i64(&[[1, 1], [1, 1]])]);
        assert_eq!(err, Err(Error::SingularGenerator { index: 0 }));
    }

    #[test]
    fn reynolds_is_invariant_and_idempotent() {
        let els = c3().enumerate(DEFAULT_GROUP_CAP).unwrap();
        let t = QMatrix::from_i64(&[[3, -7], [2, 5]]);
        let r = reynolds(&els, &t);
        for e in &els {
            assert_eq!(e.matrix.matmul(&r), r.matmul(&e.matrix));
        }
        assert_eq!(reynolds(&els, &r), r);
    }

    #[test]
    fn torus_weight_one_commutant_is_complex_line() {
        let t = GroupAction::Torus(TorusAction::new(alloc::vec![alloc::vec![1]]).unwrap());
        let cons = invariance_constraints(&t);
        assert_eq!(cons.constraints().len(), 1);
        let inv = cons.invariant_subspace();
        let id = QMatrix::identity(2);
        let j = QMatrix::from_i64(&[[0, -1], [1, 0]]);
        assert_eq!(inv, Subspace::from_vectors(4, [id, j].map(|m| m.into_vec())));
    }

    #[test]
    fn connected_closure_is_checked() {
        let e = QMatrix::from_i64(&[[0, 1], [0, 0]]);
        let f = QMatrix::from_i64(&[[0, 0], [1, 0]]);
        assert_eq!(
            ConnectedAction::new(2, alloc::vec![e.clone(), f.clone()]),
            Err(Error::NotLieClosed { i: 0, j: 1 })
        );
        let h = e.commutator(&f);
        assert!(ConnectedAction::new(2, alloc::vec![e, f, h]).is_ok());
    }

    #[test]
    fn fixed_vectors() {
        let sign = FiniteGroup::new(1, alloc::vec![QMatrix::from_i64(&[[-1]])]).unwrap();
        assert!(check_no_trivial_summand(&GroupAction::Finite(sign)));
        let trivial = FiniteGroup::new(1, Vec::new()).unwrap();
        assert!(!check_no_trivial_summand(&GroupAction::Finite(trivial)));
    }

    #[test]
    fn constraint_matrix_agrees_with_apply() {
        let g = c3().generators()[0].clone();
        let c = Constraint::Conjugation(g);
        let x = QMatrix::from_i64(&[[1, 2], [3, 4]]);
        assert_eq!(c.matrix(2).apply(x.as_slice()), c.apply(&x).into_vec());
    }
}

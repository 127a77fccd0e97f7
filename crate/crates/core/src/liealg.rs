//! Finite-dimensional real Lie algebras by exact structure constants, and the
//! `𝔨^H / 𝔥^H` summand built from isotropy data.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{axpy, common_kernel, is_zero_vec, Basis, QMatrix, Subspace, Q};

/// A Lie algebra with basis `e_0, …, e_{n−1}` and `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSC {
    dim: usize,
    /// `sc[i * dim + j]` holds the coordinates of `[e_i, e_j]`.
    sc: Vec<Vec<Q>>,
}

impl LieAlgebraSC {
    /// Validates antisymmetry and the Jacobi identity exactly.
    pub fn new(dim: usize, sc: Vec<Vec<Q>>) -> Result<Self> {
        if sc.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: sc.len(),
            });
        }
        if let Some(bad) = sc.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let g = Self { dim, sc };
        g.check_antisymmetry()?;
        g.check_jacobi()?;
        Ok(g)
    }

    /// Build from sparse entries `(i, j, k, c)` meaning `c^k_{ij} = c`.
    /// The entry for `(j, i)` is filled in by antisymmetry; explicitly given
    /// values must agree with it.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Q)]) -> Result<Self> {
        let mut sc = vec![vec![Q::zero(); dim]; dim * dim];
        let mut set = vec![vec![false; dim]; dim * dim];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Invalid(alloc::format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if i == j && !c.is_zero() {
                return Err(Error::NotAntisymmetric { i, j });
            }
            for (a, b, val) in [(i, j, c.clone()), (j, i, -c)] {
                let slot = &mut sc[a * dim + b][k];
                if set[a * dim + b][k] && *slot != val {
                    return Err(Error::NotAntisymmetric { i, j });
                }
                *slot = val;
                set[a * dim + b][k] = true;
            }
        }
        Self::new(dim, sc)
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            sc: vec![vec![Q::zero(); dim]; dim * dim],
        }
    }

    /// The Lie algebra spanned by independent matrices under the commutator.
    pub fn from_matrices(basis: &[QMatrix]) -> Result<Self> {
        let n = basis.first().map_or(0, QMatrix::rows);
        let b = Basis::new(n * n, basis.iter().map(|m| m.as_slice().to_vec()).collect())?;
        let dim = basis.len();
        let mut sc = vec![vec![Q::zero(); dim]; dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let br = basis[i].commutator(&basis[j]);
                let c = b
                    .coordinates(br.as_slice())
                    .ok_or(Error::NotLieClosed { i, j })?;
                sc[j * dim + i] = c.iter().map(|x| -x).collect();
                sc[i * dim + j] = c;
            }
        }
        Ok(Self { dim, sc })
    }

    /// Structure constants already known to satisfy antisymmetry and Jacobi
    /// (e.g. computed from matrix commutators).
    pub(crate) fn from_trusted(dim: usize, sc: Vec<Vec<Q>>) -> Self {
        Self { dim, sc }
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i..self.dim {
                let ok = self.sc[i * self.dim + j]
                    .iter()
                    .zip(&self.sc[j * self.dim + i])
                    .all(|(a, b)| (a + b).is_zero());
                if !ok {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        let e = |i: usize| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = self.bracket(&e(i), self.structure(j, k));
                    let t = self.bracket(&e(j), self.structure(k, i));
                    let u = self.bracket(&e(k), self.structure(i, j));
                    axpy(&Q::one(), &t, &mut s);
                    axpy(&Q::one(), &u, &mut s);
                    if !is_zero_vec(&s) {
                        return Err(Error::JacobiFailure { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[Q] {
        &self.sc[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if i != j {
                    axpy(&(xi * yj), self.structure(i, j), &mut out);
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)` acting on coordinate columns.
    pub fn ad(&self, x: &[Q]) -> QMatrix {
        let n = self.dim;
        let mut m = QMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            for (i, v) in self.bracket(x, &e).into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.iter().all(|v| is_zero_vec(v))
    }

    /// The derived ideal `[𝔤, 𝔤]`.
    pub fn derived_algebra(&self) -> Subspace {
        let n = self.dim;
        Subspace::from_vectors(
            n,
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| self.structure(i, j))
                .filter(|v| !is_zero_vec(v))
                .map(<[Q]>::to_vec),
        )
    }

    /// The center `{z : [z, e_i] = 0 for all i}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        common_kernel(
            n,
            (0..n).map(|i| {
                move |z: &[Q]| {
                    let mut e = vec![Q::zero(); n];
                    e[i] = Q::one();
                    self.bracket(z, &e)
                }
            }),
        )
    }

    /// Checks closure under the bracket.
    pub fn check_subalgebra(&self, s: &Subspace) -> Result<()> {
        let b = s.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !s.contains(&self.bracket(&b[i], &b[j])) {
                    return Err(Error::NotSubalgebra { i, j });
                }
            }
        }
        Ok(())
    }

    /// Structure constants of a subalgebra in its canonical basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebraSC> {
        let b = s.basis();
        let d = b.len();
        let mut sc = vec![vec![Q::zero(); d]; d * d];
        for i in 0..d {
            for j in i + 1..d {
                let c = s
                    .coordinates(&self.bracket(&b[i], &b[j]))
                    .ok_or(Error::NotSubalgebra { i, j })?;
                sc[j * d + i] = c.iter().map(|x| -x).collect();
                sc[i * d + j] = c;
            }
        }
        Ok(Self { dim: d, sc })
    }

    /// Killing form `B(x, y) = tr(ad x ad y)` in the standard basis.
    pub fn killing_form(&self) -> QMatrix {
        let n = self.dim;
        let ads: Vec<QMatrix> = (0..n)
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = Q::one();
                self.ad(&e)
            })
            .collect();
        let mut k = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].matmul(&ads[j]).trace();
                k[(j, i)] = t.clone();
                k[(i, j)] = t;
            }
        }
        k
    }

    /// Diagnostic for compact type: the Killing form is negative
    /// semidefinite and its radical is exactly the center.
    pub fn is_compact_type(&self) -> bool {
        let k = self.killing_form();
        let radical = crate::exactlin::nullspace(&k);
        is_positive_semidefinite(&(-&k)) && radical == self.center()
    }
}

/// Exact positive-semidefiniteness test for a symmetric matrix by symmetric
/// elimination on diagonal pivots.
pub fn is_positive_semidefinite(m: &QMatrix) -> bool {
    let n = m.rows();
    let mut a = m.row_vecs();
    let mut done = vec![false; n];
    for _ in 0..n {
        let Some(p) = (0..n).find(|&i| !done[i] && !a[i][i].is_zero()) else {
            // Remaining diagonal is zero; semidefinite iff the rest vanishes.
            return (0..n)
                .filter(|&i| !done[i])
                .all(|i| (0..n).filter(|&j| !done[j]).all(|j| a[i][j].is_zero()));
        };
        if a[p][p] < Q::zero() {
            return false;
        }
        done[p] = true;
        let prow = a[p].clone();
        for i in (0..n).filter(|&i| !done[i]) {
            if !a[i][p].is_zero() {
                let f = -(&a[i][p] / &prow[p]);
                axpy(&f, &prow, &mut a[i]);
            }
        }
    }
    true
}

/// The Lie algebra `𝔨`, a subalgebra `𝔥`, and the isotropy action on `𝔨`.
///
/// Automorphisms (images of finite generators under `Ad`) and derivations
/// (`ad` of generators of a connected isotropy group) act on coordinate
/// columns of `𝔨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyData {
    k: LieAlgebraSC,
    h: Subspace,
    automorphisms: Vec<QMatrix>,
    derivations: Vec<QMatrix>,
}

impl IsotropyData {
    pub fn new(
        k: LieAlgebraSC,
        h: Subspace,
        automorphisms: Vec<QMatrix>,
        derivations: Vec<QMatrix>,
    ) -> Result<Self> {
        let n = k.dim();
        if h.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: h.ambient_dim(),
            });
        }
        k.check_subalgebra(&h)?;
        let basis: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = Q::one();
                e
            })
            .collect();
        for (index, a) in automorphisms.iter().enumerate() {
            if a.rows() != n || a.cols() != n || a.inverse().is_none() {
                return Err(Error::NotAutomorphism { index });
            }
            for i in 0..n {
                for j in i + 1..n {
                    let lhs = a.apply(k.structure(i, j));
                    let rhs = k.bracket(&a.apply(&basis[i]), &a.apply(&basis[j]));
                    if lhs != rhs {
                        return Err(Error::NotAutomorphism { index });
                    }
                }
            }
        }
        for (index, d) in derivations.iter().enumerate() {
            if d.rows() != n || d.cols() != n {
                return Err(Error::NotDerivation { index });
            }
            for i in 0..n {
                for j in i + 1..n {
                    let lhs = d.apply(k.structure(i, j));
                    let mut rhs = k.bracket(&d.apply(&basis[i]), &basis[j]);
                    axpy(&Q::one(), &k.bracket(&basis[i], &d.apply(&basis[j])), &mut rhs);
                    if lhs != rhs {
                        return Err(Error::NotDerivation { index });
                    }
                }
            }
        }
        let stable = automorphisms
            .iter()
            .chain(&derivations)
            .all(|m| h.basis().iter().all(|v| h.contains(&m.apply(v))));
        if !stable {
            return Err(Error::NotStable);
        }
        Ok(Self {
            k,
            h,
            automorphisms,
            derivations,
        })
    }

    pub fn k(&self) -> &LieAlgebraSC {
        &self.k
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn automorphisms(&self) -> &[QMatrix] {
        &self.automorphisms
    }

    pub fn derivations(&self) -> &[QMatrix] {
        &self.derivations
    }
}

/// `𝔨^H`: common kernel of `Ad(g) − I` and of the derivations.
pub fn fixed_subalgebra(d: &IsotropyData) -> Result<Subspace> {
    let n = d.k.dim();
    let id = QMatrix::identity(n);
    let maps: Vec<QMatrix> = d
        .automorphisms
        .iter()
        .map(|a| a - &id)
        .chain(d.derivations.iter().cloned())
        .collect();
    let fixed = common_kernel(n, maps.iter().map(|m| move |v: &[Q]| m.apply(v)));
    d.k.check_subalgebra(&fixed).map_err(|_| Error::FixedNotClosed)?;
    Ok(fixed)
}

/// Structure constants of `k_fixed / h_fixed` on a complement basis.
///
/// The ideal property `[k_fixed, h_fixed] ⊆ h_fixed` is checked, not assumed.
pub fn quotient_lie_algebra(
    k_fixed: &Subspace,
    h_fixed: &Subspace,
    amb: &LieAlgebraSC,
) -> Result<LieAlgebraSC> {
    if !k_fixed.contains_subspace(h_fixed) {
        return Err(Error::NotContained);
    }
    amb.check_subalgebra(k_fixed)?;
    for x in k_fixed.basis() {
        for y in h_fixed.basis() {
            let b = amb.bracket(x, y);
            if !h_fixed.contains(&b) {
                return Err(Error::NotIdeal { bracket: b });
            }
        }
    }
    let complement = k_fixed.quotient_basis(h_fixed)?;
    let d = complement.len();
    let mut all = complement.clone();
    all.extend(h_fixed.basis().iter().cloned());
    let basis = Basis::new(amb.dim(), all)?;
    let mut sc = vec![vec![Q::zero(); d]; d * d];
    for i in 0..d {
        for j in i + 1..d {
            let mut c = basis
                .coordinates(&amb.bracket(&complement[i], &complement[j]))
                .ok_or(Error::NotSubalgebra { i, j })?;
            c.truncate(d);
            sc[j * d + i] = c.iter().map(|x| -x).collect();
            sc[i * d + j] = c;
        }
    }
    Ok(LieAlgebraSC::from_trusted(d, sc))
}

/// `𝔤 / [𝔤, 𝔤]`: its dimension and a basis of representatives.
pub fn lie_abelianization(g: &LieAlgebraSC) -> (usize, Vec<Vec<Q>>) {
    let derived = g.derived_algebra();
    let reps = Subspace::full(g.dim())
        .quotient_basis(&derived)
        .expect("same ambient dimension");
    (reps.len(), reps)
}

/// `dim ℋ(𝔨^H / 𝔥^H)` for one isotropy record, with `𝔥^H = 𝔥 ∩ 𝔨^H`.
pub fn isotropy_summand(d: &IsotropyData) -> Result<LieSummand> {
    let k_fixed = fixed_subalgebra(d)?;
    let h_fixed = d.h.intersection(&k_fixed)?;
    let quotient = quotient_lie_algebra(&k_fixed, &h_fixed, &d.k)?;
    let (abelianization_dim, _) = lie_abelianization(&quotient);
    Ok(LieSummand {
        k_fixed_dim: k_fixed.dim(),
        h_fixed_dim: h_fixed.dim(),
        quotient_dim: quotient.dim(),
        abelianization_dim,
    })
}

/// Dimensions along the way to `ℋ(𝔨^H / 𝔥^H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LieSummand {
    pub k_fixed_dim: usize,
    pub h_fixed_dim: usize,
    pub quotient_dim: usize,
    pub abelianization_dim: usize,
}

/// Standard Lie algebras used as inputs and in tests.
pub mod standard {
    use super::*;
    use crate::exactlin::q;

    /// `so(3)` with `[L_x, L_y] = L_z` and cyclic permutations.
    pub fn so3() -> LieAlgebraSC {
        LieAlgebraSC::from_entries(3, &[(0, 1, 2, q(1)), (1, 2, 0, q(1)), (2, 0, 1, q(1))])
            .expect("so(3) is a Lie algebra")
    }

    /// `sl(2)` with basis `(h, e, f)`.
    pub fn sl2() -> LieAlgebraSC {
        LieAlgebraSC::from_entries(3, &[(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1))])
            .expect("sl(2) is a Lie algebra")
    }

    /// The two-dimensional nonabelian algebra `[e_0, e_1] = e_1`.
    pub fn affine_line() -> LieAlgebraSC {
        LieAlgebraSC::from_entries(2, &[(0, 1, 1, q(1))]).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::exactlin::q;

    fn e(n: usize, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::one();
        v
    }

    #[test]
    fn jacobi_violation_rejected() {
        let bad = LieAlgebraSC::from_entries(3, &[(0, 1, 0, q(1)), (1, 2, 1, q(1)), (0, 2, 0, q(1))]);
        assert!(matches!(bad, Err(Error::JacobiFailure { .. })));
        let asym = LieAlgebraSC::from_entries(2, &[(0, 1, 1, q(1)), (1, 0, 1, q(1))]);
        assert!(matches!(asym, Err(Error::NotAntisymmetric { .. })));
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(lie_abelianization(&LieAlgebraSC::abelian(4)).0, 4);
        assert_eq!(lie_abelianization(&so3()).0, 0);
        assert_eq!(lie_abelianization(&sl2()).0, 0);
        let (d, reps) = lie_abelianization(&affine_line());
        assert_eq!(d, 1);
        assert_eq!(reps, vec![e(2, 0)]);
    }

    #[test]
    fn so3_fixed_by_half_turn_about_z() {
        let ad_rz = QMatrix::from_i64(&[[-1, 0, 0], [0, -1, 0], [0, 0, 1]]);
        let d = IsotropyData::new(so3(), Subspace::zero(3), vec![ad_rz], vec![]).unwrap();
        let fixed = fixed_subalgebra(&d).unwrap();
        assert_eq!(fixed, Subspace::from_vectors(3, [e(3, 2)]));
    }

    #[test]
    fn three_cycle_on_abelian() {
        let p = QMatrix::from_i64(&[[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
        let d = IsotropyData::new(LieAlgebraSC::abelian(3), Subspace::zero(3), vec![p], vec![])
            .unwrap();
        let fixed = fixed_subalgebra(&d).unwrap();
        assert_eq!(fixed, Subspace::from_vectors(3, [vec![q(1), q(1), q(1)]]));
    }

    #[test]
    fn quotient_examples() {
        let k = LieAlgebraSC::abelian(2);
        let h = Subspace::from_vectors(2, [e(2, 0)]);
        let quo = quotient_lie_algebra(&Subspace::full(2), &h, &k).unwrap();
        assert_eq!(quo.dim(), 1);
        assert!(quo.is_abelian());

        let so = so3();
        let lz = e(3, 2);
        let d = IsotropyData::new(
            so.clone(),
            Subspace::from_vectors(3, [lz.clone()]),
            vec![],
            vec![so.ad(&lz)],
        )
        .unwrap();
        let s = isotropy_summand(&d).unwrap();
        assert_eq!((s.k_fixed_dim, s.h_fixed_dim, s.quotient_dim), (1, 1, 0));

        let trivial = IsotropyData::new(so.clone(), Subspace::zero(3), vec![], vec![]).unwrap();
        let kf = fixed_subalgebra(&trivial).unwrap();
        assert_eq!(kf, Subspace::full(3));
        let quo = quotient_lie_algebra(&kf, &Subspace::zero(3), &so).unwrap();
        assert_eq!(quo, so);
    }

    #[test]
    fn non_ideal_is_reported() {
        let so = so3();
        let h = Subspace::from_vectors(3, [e(3, 2)]);
        let err = quotient_lie_algebra(&Subspace::full(3), &h, &so).unwrap_err();
        assert!(matches!(err, Error::NotIdeal { .. }));
    }

    #[test]
    fn invalid_isotropy_data() {
        let bad_aut = QMatrix::from_i64(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(
            IsotropyData::new(so3(), Subspace::zero(3), vec![bad_aut], vec![]),
            Err(Error::NotAutomorphism { index: 0 })
        );
        let not_sub = Subspace::from_vectors(3, [e(3, 0), e(3, 1)]);
        assert!(matches!(
            IsotropyData::new(so3(), not_sub, vec![], vec![]),
            Err(Error::NotSubalgebra { .. })
        ));
    }

    #[test]
    fn matrix_algebra_and_compactness() {
        let lx = QMatrix::from_i64(&[[0, 0, 0], [0, 0, -1], [0, 1, 0]]);
        let ly = QMatrix::from_i64(&[[0, 0, 1], [0, 0, 0], [-1, 0, 0]]);
        let lz = QMatrix::from_i64(&[[0, -1, 0], [1, 0, 0], [0, 0, 0]]);
        let g = LieAlgebraSC::from_matrices(&[lx, ly, lz]).unwrap();
        assert_eq!(g, so3());
        assert!(so3().is_compact_type());
        assert!(!sl2().is_compact_type());
        assert!(LieAlgebraSC::abelian(2).is_compact_type());
        assert_eq!(so3().center().dim(), 0);
    }
}

use super::*;
use crate::commutant::{center, classify_ml, compute_commutant, ClassifyOptions, MatrixAlgebra};
use crate::exactlin::q;
use crate::symmetry::{ConnectedAction, FiniteGroup};

fn finite(dim: usize, gens: &[&[&[i64]]]) -> GroupAction {
    let gens = gens
        .iter()
        .map(|g| {
            let rows: Vec<Vec<Q>> = g.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            QMatrix::from_rows(rows).unwrap()
        })
        .collect();
    GroupAction::Finite(FiniteGroup::new(dim, gens).unwrap())
}

fn c3() -> GroupAction {
    finite(2, &[&[&[0, -1], &[1, -1]]])
}

fn torus(w: Vec<Vec<i64>>) -> GroupAction {
    GroupAction::Torus(TorusAction::new(w).unwrap())
}

fn center_data(action: &GroupAction) -> (Vec<QMatrix>, MLClassification) {
    let a: MatrixAlgebra = compute_commutant(action).unwrap();
    let z = center(&a);
    let mats = z.basis().iter().map(|c| a.element(c)).collect();
    let ml = classify_ml(&a, ClassifyOptions::default()).unwrap();
    (mats, ml)
}

/// Dimension of `Sym^e(V*)^G` as the common fixed space of the generators,
/// each acting by substitution.
fn fixed_dim_by_generators(gens: &[QMatrix], n: usize, e: u32) -> usize {
    let basis = MonomialBasis::new(n, e);
    common_kernel(
        basis.len(),
        gens.iter().map(|g| {
            let basis = &basis;
            move |v: &[Q]| {
                let f = basis.to_polynomial(v);
                basis.to_vector(&f.compose_linear(g).sub(&f))
            }
        }),
    )
    .dim()
}

fn re_im_z3() -> (Polynomial, Polynomial) {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let x2 = x.mul(&x);
    let y2 = y.mul(&y);
    let re = x2.mul(&x).sub(&x.mul(&y2).scaled(&q(3)));
    let im = x2.mul(&y).scaled(&q(3)).sub(&y2.mul(&y));
    (re, im)
}

#[test]
fn sign_action_on_line() {
    let inv = invariants_up_to_degree(&finite(1, &[&[&[-1]]]), 2).unwrap();
    assert!(inv.degree(1).is_empty());
    assert_eq!(inv.degree(2), &[Polynomial::monomial(vec![2], q(1))]);
}

#[test]
fn c3_invariants() {
    let g = c3();
    let inv = invariants_up_to_degree(&g, 3).unwrap();
    assert_eq!(inv.dims(), vec![0, 1, 2]);
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    // The rational generator is a rotation in the basis where x² − xy + y² is the norm.
    let norm = x.mul(&x).sub(&x.mul(&y)).add(&y.mul(&y));
    assert_eq!(inv.degree(2), &[norm]);

    let GroupAction::Finite(fg) = &g else { unreachable!() };
    let gens: Vec<QMatrix> = fg.generators().iter().map(|e| e.matrix.clone()).collect();
    for e in 1..=6 {
        let inv = invariants_up_to_degree(&g, e).unwrap();
        assert_eq!(inv.degree(e).len(), fixed_dim_by_generators(&gens, 2, e), "degree {e}");
    }
}

#[test]
fn square_rotation_invariants() {
    let c4 = finite(2, &[&[&[0, -1], &[1, 0]]]);
    let inv = invariants_up_to_degree(&c4, 4).unwrap();
    assert_eq!(inv.dims(), vec![0, 1, 0, 3]);
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    assert_eq!(inv.degree(2), &[x.mul(&x).add(&y.mul(&y))]);
    // Re z⁴ and Im z⁴ are invariant under the quarter turn.
    let (re3, im3) = re_im_z3();
    let re4 = re3.mul(&x).sub(&im3.mul(&y));
    let im4 = re3.mul(&y).add(&im3.mul(&x));
    let deg4 = MonomialBasis::new(2, 4);
    let span = Subspace::from_vectors(5, inv.degree(4).iter().map(|p| deg4.to_vector(p)));
    assert!(span.contains(&deg4.to_vector(&re4)));
    assert!(span.contains(&deg4.to_vector(&im4)));
}

#[test]
fn invariants_are_fixed() {
    let q8 = {
        let [_, i, j, _] = crate::commutant::standard::quaternion_units();
        let gens = vec![i, j];
        GroupAction::Finite(FiniteGroup::new(4, gens).unwrap())
    };
    let inv = invariants_up_to_degree(&q8, 4).unwrap();
    let GroupAction::Finite(fg) = &q8 else { unreachable!() };
    for f in inv.iter() {
        for g in fg.generators() {
            assert_eq!(&f.compose_linear(&g.matrix), f);
        }
    }
    let gens: Vec<QMatrix> = fg.generators().iter().map(|e| e.matrix.clone()).collect();
    for e in 1..=4 {
        assert_eq!(inv.degree(e).len(), fixed_dim_by_generators(&gens, 4, e));
    }
}

#[test]
fn torus_invariants_match_nullspace() {
    let t = torus(vec![vec![1, 1]]);
    let inv = invariants_up_to_degree(&t, 2).unwrap();
    assert_eq!(inv.dims(), vec![0, 4]);

    for w in [vec![vec![1, 1]], vec![vec![1, 2, -1]], vec![vec![1, 0], vec![0, 1]]] {
        let t = torus(w);
        let GroupAction::Torus(ta) = &t else { unreachable!() };
        let c = GroupAction::Connected(ConnectedAction::new(ta.dim(), ta.generators()).unwrap());
        let a = invariants_up_to_degree(&t, 4).unwrap();
        let b = invariants_up_to_degree(&c, 4).unwrap();
        assert_eq!(a, b);
        for f in a.iter() {
            for xi in ta.generators() {
                assert!(derivation_action(&xi, f).is_zero());
            }
        }
    }
}

#[test]
fn degree_errors() {
    assert_eq!(invariants_up_to_degree(&c3(), 0), Err(Error::ZeroDegree));
    let opts = InvariantOptions {
        monomial_cap: 5,
        ..Default::default()
    };
    assert!(matches!(
        invariants_with(&c3(), 6, &opts),
        Err(Error::DegreeTooLarge { monomials: 6, cap: 5 })
    ));
}

#[test]
fn derivation_examples() {
    let id = QMatrix::identity(2);
    let j = QMatrix::from_i64(&[[0, -1], [1, 0]]);
    let (re, im) = re_im_z3();
    assert_eq!(derivation_action(&id, &re), re.scaled(&q(3)));
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    assert!(derivation_action(&j, &x.mul(&x).add(&y.mul(&y))).is_zero());
    assert_eq!(derivation_action(&j, &re), im.scaled(&q(-3)));
    assert_eq!(derivation_action(&j, &im), re.scaled(&q(3)));
}

#[test]
fn leibniz_rule() {
    let d = QMatrix::from_i64(&[[1, 2, 0], [-3, 0, 5], [0, 1, -1]]);
    let f = Polynomial::var(3, 0).mul(&Polynomial::var(3, 1)).add(&Polynomial::var(3, 2));
    let g = Polynomial::var(3, 2).mul(&Polynomial::var(3, 2)).sub(&Polynomial::var(3, 0));
    let lhs = derivation_action(&d, &f.mul(&g));
    let rhs = derivation_action(&d, &f).mul(&g).add(&f.mul(&derivation_action(&d, &g)));
    assert_eq!(lhs, rhs);
}

#[test]
fn finite_kernel_vanishes() {
    let g = c3();
    let (z, ml) = center_data(&g);
    assert_eq!((ml.m, ml.l), (1, 1));
    let k = kernel_s(&g, &z, &ml, 3).unwrap();
    assert_eq!(k.dim_s, 0);
    assert_eq!(k.exactness, Exactness::Certified);
    assert_eq!(k.dim_t, 1);
    let k2 = kernel_s(&g, &z, &ml, 2).unwrap();
    assert_eq!(k2.exactness, Exactness::DegreeBounded);
    let r = quotient_abelianization(z.len(), &k, &ml, k.dim_s).unwrap();
    assert_eq!((r.dim, r.real_rank, r.complex_rank), (2, 0, 1));
}

#[test]
fn diagonal_torus_kernel() {
    let t = torus(vec![vec![1, 1]]);
    let (z, ml) = center_data(&t);
    let k = kernel_s(&t, &z, &ml, 2).unwrap();
    assert_eq!(k.dim_s, 1);
    assert_eq!(k.exactness, Exactness::Certified);
    let GroupAction::Torus(ta) = &t else { unreachable!() };
    let xi = &ta.generators()[0];
    let s = Subspace::from_vectors(16, k.s_matrices.iter().map(|m| m.as_slice().to_vec()));
    assert!(s.contains(xi.as_slice()));
    let r = quotient_abelianization(z.len(), &k, &ml, 1).unwrap();
    assert_eq!((r.real_rank, r.complex_rank), (1, 0));
}

#[test]
fn torus_lattice_agrees_with_degree_route() {
    for w in [
        vec![vec![1, 2]],
        vec![vec![1, 2, -1]],
        vec![vec![1, 0, 1], vec![0, 1, 1]],
        vec![vec![2, 3]],
    ] {
        let t = torus(w);
        let (z, ml) = center_data(&t);
        let exact = kernel_s(&t, &z, &ml, 1).unwrap();
        let GroupAction::Torus(ta) = &t else { unreachable!() };
        let c = GroupAction::Connected(ConnectedAction::new(ta.dim(), ta.generators()).unwrap());
        let bounded = kernel_s(&c, &z, &ml, 5).unwrap();
        assert_eq!(bounded.exactness, Exactness::DegreeBounded);
        assert_eq!(exact.s_basis, bounded.s_basis);
        assert_eq!(exact.dim_s, ta.rank());
    }
}

#[test]
fn kernel_is_monotone() {
    let t = torus(vec![vec![2, 3]]);
    let GroupAction::Torus(ta) = &t else { unreachable!() };
    let c = GroupAction::Connected(ConnectedAction::new(ta.dim(), ta.generators()).unwrap());
    let (z, ml) = center_data(&t);
    let mut prev = Subspace::full(z.len());
    for d in 1..=5 {
        let k = kernel_s(&c, &z, &ml, d).unwrap();
        assert!(prev.contains_subspace(&k.s_basis));
        prev = k.s_basis;
    }
    assert_eq!(prev.dim(), 1);
}

#[test]
fn rejects_foreign_center() {
    let g = c3();
    let (_, ml) = center_data(&g);
    let bogus = vec![QMatrix::from_i64(&[[1, 0], [0, 0]])];
    assert_eq!(kernel_s(&g, &bogus, &ml, 3), Err(Error::CenterMismatch));
    assert_eq!(kernel_s(&g, &[], &ml, 3), Err(Error::CenterMismatch));
}

#[test]
fn quotient_checks_dims() {
    let g = c3();
    let (z, ml) = center_data(&g);
    let k = kernel_s(&g, &z, &ml, 3).unwrap();
    assert_eq!(
        quotient_abelianization(z.len(), &k, &ml, 1),
        Err(Error::InconsistentDims)
    );
}

#[test]
fn su_vector_plus_wedge2_small_n() {
    use crate::symmetry::standard::su_vector_plus_wedge2;
    // n = 3: the wedge summand is the conjugate of the vector one, so the
    // commutant is gl(2, C). n = 4: the wedge summand is of real type.
    for (n, dim_a, m, l) in [(3, 8, 1, 1), (4, 6, 2, 1)] {
        let act = GroupAction::Connected(su_vector_plus_wedge2(n));
        let a = compute_commutant(&act).unwrap();
        assert_eq!(a.dim(), dim_a);
        let (z, ml) = center_data(&act);
        assert_eq!((ml.m, ml.l), (m, l));
        for d in 2..=3 {
            let k = kernel_s(&act, &z, &ml, d).unwrap();
            assert_eq!((k.dim_t, k.dim_s), (l, 1), "n = {n}, d = {d}");
            assert_eq!(k.exactness, Exactness::DegreeBounded);
        }
    }
}

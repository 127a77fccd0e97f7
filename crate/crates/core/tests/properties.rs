use equiab_core::exactlin::{
    count_real_roots, integer_kernel_saturated, maximal_minor_gcd, minimal_polynomial, nullspace,
    q, qr, rref, Basis, QMatrix, QPolynomial, Subspace, Q,
};
use equiab_core::strata::{derivation_action, Polynomial};
use equiab_core::symmetry::{reynolds_with, FiniteGroup};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    prop_oneof![
        2 => Just(q(0)),
        5 => (-6i64..=6, 1i64..=4).prop_map(|(a, b)| qr(a, b)),
    ]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(rational(), r * c)
            .prop_map(move |data| QMatrix::from_vec(r, c, data).unwrap())
    })
}

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(prop::collection::vec(rational(), n), 0..=max)
}

fn polynomial(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nvars), rational()), 0..6).prop_map(
        move |terms| {
            let mut p = Polynomial::zero(nvars);
            for (m, c) in terms {
                p.add_term(m, c);
            }
            p
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent_and_keeps_row_space(a in matrix(5, 6)) {
        let (e, rank) = rref(&a);
        prop_assert_eq!(rref(&e), (e.clone(), rank));
        let rows = Subspace::from_vectors(a.cols(), a.row_vecs());
        let erows = Subspace::from_vectors(a.cols(), e.row_vecs());
        prop_assert_eq!(rows.dim(), rank);
        prop_assert_eq!(rows, erows);
    }

    #[test]
    fn rank_plus_nullity(a in matrix(5, 6)) {
        let (_, rank) = rref(&a);
        let ns = nullspace(&a);
        prop_assert_eq!(rank + ns.dim(), a.cols());
        for v in ns.basis() {
            prop_assert!(a.apply(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(u in vectors(4, 4), w in vectors(4, 4)) {
        let u = Subspace::from_vectors(4, u);
        let w = Subspace::from_vectors(4, w);
        let s = u.sum(&w).unwrap();
        let i = u.intersection(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&w));
        prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
    }

    #[test]
    fn basis_coordinates_round_trip(vs in vectors(4, 4), c in prop::collection::vec(rational(), 4)) {
        let span = Subspace::from_vectors(4, vs);
        let b = Basis::new(4, span.basis().to_vec()).unwrap();
        let coords = &c[..b.len()];
        prop_assert_eq!(b.coordinates(&b.element(coords)), Some(coords.to_vec()));
    }

    #[test]
    fn inverse_and_determinant(a in matrix(4, 4)) {
        prop_assume!(a.is_square());
        let det = a.determinant();
        match a.inverse() {
            Some(inv) => {
                prop_assert!(det != q(0));
                prop_assert!(a.matmul(&inv).is_identity());
                prop_assert_eq!(inv.determinant() * det, q(1));
            }
            None => prop_assert_eq!(det, q(0)),
        }
    }

    #[test]
    fn minimal_polynomial_annihilates(a in matrix(4, 4)) {
        prop_assume!(a.is_square());
        let p = minimal_polynomial(&a);
        prop_assert!(p.eval_matrix(&a).is_zero());
        prop_assert!(p.degree().unwrap() <= a.rows());
    }

    #[test]
    fn sturm_matches_sampling(
        roots in prop::collection::btree_set((-12i64..=12, 1i64..=3), 1..5),
        quads in prop::collection::vec((-3i64..=3, 1i64..=4), 0..3),
    ) {
        let mut roots: Vec<Q> = roots.into_iter().map(|(a, b)| qr(a, b)).collect();
        roots.sort();
        roots.dedup();
        let mut p = QPolynomial::constant(q(1));
        for r in &roots {
            p = &p * &QPolynomial::linear(r.clone());
        }
        for (s, c) in quads {
            let s = q(s);
            p = &p * &QPolynomial::new(vec![&s * &s + q(c), -q(2) * &s, q(1)]);
        }
        let p = p.squarefree_part();
        let count = count_real_roots(&p).unwrap();
        // Sign changes at points separating the known roots.
        let mut pts = vec![&roots[0] - q(1)];
        for w in roots.windows(2) {
            pts.push((&w[0] + &w[1]) / q(2));
        }
        pts.push(roots.last().unwrap() + q(1));
        let signs: Vec<i8> = pts.iter().map(|x| p.sign_at(x)).collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        prop_assert_eq!(count.real_roots, roots.len());
        prop_assert_eq!(changes, roots.len());
        prop_assert_eq!(count.real_roots + 2 * count.conjugate_pairs, p.degree().unwrap());
    }

    #[test]
    fn integer_kernel_is_saturated(
        w in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..=3),
    ) {
        let wb: Vec<Vec<BigInt>> = w.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        let ker = integer_kernel_saturated(&wb, 5);
        let wq = QMatrix::from_i64(&w);
        let (_, rank) = rref(&wq);
        prop_assert_eq!(ker.len(), 5 - rank);
        for v in &ker {
            for row in &w {
                let s: BigInt = row.iter().zip(v).map(|(a, b)| BigInt::from(*a) * b).sum();
                prop_assert_eq!(s, BigInt::from(0));
            }
        }
        prop_assert_eq!(maximal_minor_gcd(&ker), BigInt::from(1));
    }

    #[test]
    fn derivation_is_leibniz(f in polynomial(3), g in polynomial(3), d in matrix(3, 3)) {
        prop_assume!(d.is_square() && d.rows() == 3);
        let lhs = derivation_action(&d, &f.mul(&g));
        let rhs = derivation_action(&d, &f).mul(&g).add(&f.mul(&derivation_action(&d, &g)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn averaged_polynomials_are_invariant(f in polynomial(2)) {
        let j = QMatrix::from_i64(&[[0, -1], [1, 0]]);
        let flip = QMatrix::from_i64(&[[1, 0], [0, -1]]);
        let g = FiniteGroup::new(2, vec![j.clone(), flip.clone()]).unwrap();
        let els = g.enumerate(100).unwrap();
        let avg = reynolds_with(&els, &f, |e, p| p.compose_linear(&e.matrix));
        prop_assert_eq!(&avg.compose_linear(&j), &avg);
        prop_assert_eq!(&avg.compose_linear(&flip), &avg);
    }
}

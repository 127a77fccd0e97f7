//! Invariant polynomials, the kernel `𝔰 ⊂ Z(End(V)^H)` of the action on
//! the orbit space, and the quotient `Z/𝔰`.
//!
//! Conventions: `V = R^n` with coordinates `x_0..x_{n−1}`. For torus
//! actions complex coordinate `c` is `z_c = x_{2c} + i·x_{2c+1}` and the
//! generator acts counterclockwise, so `J = [[0, −1], [1, 0]]` sends
//! `Re z³` to `−3·Im z³` under [`derivation_action`].

mod poly;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::commutant::MLClassification;
use crate::error::{Error, Result};
use crate::exactlin::{
    axpy, common_kernel, integer_kernel_saturated, Basis, QMatrix, RowReducer, Subspace, Q,
};
use crate::symmetry::{
    invariance_constraints, GroupAction, GroupElement, TorusAction, DEFAULT_GROUP_CAP,
};

pub use poly::{monomial_count, Monomial, MonomialBasis, Polynomial};

/// Default cap on the number of monomials of a single degree.
pub const DEFAULT_MONOMIAL_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantOptions {
    pub monomial_cap: usize,
    pub group_cap: usize,
}

impl Default for InvariantOptions {
    fn default() -> Self {
        Self {
            monomial_cap: DEFAULT_MONOMIAL_CAP,
            group_cap: DEFAULT_GROUP_CAP,
        }
    }
}

/// Invariant polynomials of each degree `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSpace {
    degree_bound: u32,
    per_degree: Vec<Vec<Polynomial>>,
}

impl InvariantSpace {
    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// RREF basis of the homogeneous invariants of degree `e` (`1 ≤ e ≤ d`).
    pub fn degree(&self, e: u32) -> &[Polynomial] {
        &self.per_degree[e as usize - 1]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.per_degree.iter().map(Vec::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Polynomial> {
        self.per_degree.iter().flatten()
    }
}

/// Produces homogeneous invariants one degree at a time.
enum Engine<'a> {
    Finite {
        elements: Vec<GroupElement>,
        forms: Vec<Vec<Polynomial>>,
        images: Vec<BTreeMap<Monomial, Polynomial>>,
    },
    Torus(&'a TorusAction),
    Connected(Vec<QMatrix>),
}

impl<'a> Engine<'a> {
    fn new(action: &'a GroupAction, opts: &InvariantOptions) -> Result<Self> {
        Ok(match action {
            GroupAction::Finite(g) => {
                let elements = g.enumerate(opts.group_cap)?;
                let forms = elements
                    .iter()
                    .map(|e| (0..g.dim()).map(|i| Polynomial::linear(e.matrix.row(i))).collect())
                    .collect();
                let n = g.dim();
                let one = BTreeMap::from([(vec![0; n], Polynomial::constant(n, Q::one()))]);
                Engine::Finite {
                    images: vec![one; elements.len()],
                    elements,
                    forms,
                }
            }
            GroupAction::Torus(t) => Engine::Torus(t),
            GroupAction::Connected(c) => Engine::Connected(c.generators().to_vec()),
        })
    }

    /// Invariants of degree `e`; for finite groups degrees must be requested in order.
    fn degree(&mut self, n: usize, e: u32) -> Vec<Polynomial> {
        let basis = MonomialBasis::new(n, e);
        match self {
            Engine::Finite {
                elements,
                forms,
                images,
            } => {
                let order = Q::new(BigInt::one(), BigInt::from(elements.len()));
                let mut red = RowReducer::new(basis.len());
                for (g, img) in images.iter_mut().enumerate() {
                    let mut next = BTreeMap::new();
                    for m in basis.monomials() {
                        let i = m.iter().position(|&a| a > 0).expect("degree ≥ 1");
                        let mut prev = m.clone();
                        prev[i] -= 1;
                        next.insert(m.clone(), img[&prev].mul(&forms[g][i]));
                    }
                    *img = next;
                }
                for m in basis.monomials() {
                    if red.rank() == basis.len() {
                        break;
                    }
                    let mut v = vec![Q::zero(); basis.len()];
                    for img in images.iter() {
                        axpy(&order, &basis.to_vector(&img[m]), &mut v);
                    }
                    red.insert(v);
                }
                red.into_rows().iter().map(|v| basis.to_polynomial(v)).collect()
            }
            Engine::Torus(t) => torus_invariants(t, &basis),
            Engine::Connected(gens) => {
                let ker = common_kernel(
                    basis.len(),
                    gens.iter().map(|xi| {
                        let basis = &basis;
                        move |v: &[Q]| {
                            basis.to_vector(&derivation_action(xi, &basis.to_polynomial(v)))
                        }
                    }),
                );
                ker.basis().iter().map(|v| basis.to_polynomial(v)).collect()
            }
        }
    }
}

/// Real and imaginary parts of weight-zero monomials `z^a z̄^b` of one degree.
fn torus_invariants(t: &TorusAction, real: &MonomialBasis) -> Vec<Polynomial> {
    let m = t.complex_dim();
    let n = 2 * m;
    let complex = MonomialBasis::new(n, real.degree());
    let vectors = complex.monomials().iter().filter_map(|ab| {
        let balanced = t.weights().iter().all(|row| {
            row.iter()
                .enumerate()
                .map(|(c, &w)| w * (i64::from(ab[c]) - i64::from(ab[m + c])))
                .sum::<i64>()
                == 0
        });
        balanced.then(|| conjugate_monomial(ab, m))
    });
    let mut red = RowReducer::new(real.len());
    for (re, im) in vectors {
        for p in [re, im] {
            if !p.is_zero() {
                red.insert(real.to_vector(&p));
            }
        }
    }
    red.into_rows().iter().map(|v| real.to_polynomial(v)).collect()
}

/// `Π z_c^{a_c} z̄_c^{b_c}` split into real and imaginary parts.
fn conjugate_monomial(ab: &[u32], m: usize) -> (Polynomial, Polynomial) {
    let n = 2 * m;
    let mut re = Polynomial::constant(n, Q::one());
    let mut im = Polynomial::zero(n);
    for c in 0..m {
        let x = Polynomial::var(n, 2 * c);
        let y = Polynomial::var(n, 2 * c + 1);
        let ny = y.scaled(&-Q::one());
        for (count, yy) in [(ab[c], &y), (ab[m + c], &ny)] {
            for _ in 0..count {
                let r = re.mul(&x).sub(&im.mul(yy));
                let i = im.mul(&x).add(&re.mul(yy));
                re = r;
                im = i;
            }
        }
    }
    (re, im)
}

fn check_degree(n: usize, e: u32, opts: &InvariantOptions) -> Result<()> {
    let monomials = monomial_count(n, e as usize);
    if monomials > opts.monomial_cap {
        return Err(Error::DegreeTooLarge {
            monomials,
            cap: opts.monomial_cap,
        });
    }
    Ok(())
}

/// Homogeneous invariant polynomials of every degree `1..=d`.
pub fn invariants_up_to_degree(action: &GroupAction, d: u32) -> Result<InvariantSpace> {
    invariants_with(action, d, &InvariantOptions::default())
}

pub fn invariants_with(
    action: &GroupAction,
    d: u32,
    opts: &InvariantOptions,
) -> Result<InvariantSpace> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let n = action.dim();
    for e in 1..=d {
        check_degree(n, e, opts)?;
    }
    let mut engine = Engine::new(action, opts)?;
    let per_degree = (1..=d).map(|e| engine.degree(n, e)).collect();
    Ok(InvariantSpace {
        degree_bound: d,
        per_degree,
    })
}

/// The linear vector field `x ↦ Dx` acting on `f` as a derivation:
/// `(Df)(x) = Σ_{i,j} D_ji x_i ∂f/∂x_j`.
pub fn derivation_action(d: &QMatrix, f: &Polynomial) -> Polynomial {
    let n = f.nvars();
    let mut out = Polynomial::zero(n);
    for j in 0..n {
        let df = f.partial(j);
        if df.is_zero() {
            continue;
        }
        let field = Polynomial::linear(d.row(j));
        out = out.add(&field.mul(&df));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    /// `𝔰` is exact.
    Certified,
    /// `𝔰` is only known to contain the true kernel.
    DegreeBounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelResult {
    /// `𝔰` in coordinates of the supplied center basis.
    pub s_basis: Subspace,
    /// `𝔰` as operators on `V`.
    pub s_matrices: Vec<QMatrix>,
    pub dim_t: usize,
    pub dim_s: usize,
    pub exactness: Exactness,
    /// Highest invariant degree actually examined.
    pub degree_reached: u32,
}

/// `𝔰 = {D ∈ Z : D·f = 0 for every invariant f of degree ≤ d}`.
///
/// `center` is a basis of `Z(End(V)^H)` as operators on `V`. Faithful-type
/// torus actions are handled through the saturated exponent lattice and are
/// exact at any `d`; finite groups are exact once `d ≥ |G|`.
pub fn kernel_s(
    action: &GroupAction,
    center: &[QMatrix],
    ml: &MLClassification,
    d: u32,
) -> Result<KernelResult> {
    kernel_s_with(action, center, ml, d, &InvariantOptions::default())
}

pub fn kernel_s_with(
    action: &GroupAction,
    center: &[QMatrix],
    ml: &MLClassification,
    d: u32,
    opts: &InvariantOptions,
) -> Result<KernelResult> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let n = action.dim();
    check_center(action, center)?;
    if ml.center_dim != center.len() {
        return Err(Error::CenterMismatch);
    }
    let z = center.len();

    if let GroupAction::Torus(t) = action {
        if let Some(s) = torus_kernel(t, center) {
            return Ok(finish(s, center, ml, Exactness::Certified, d));
        }
    }

    let mut engine = Engine::new(action, opts)?;
    let certified = match action {
        GroupAction::Finite(g) => {
            let order = g.enumerate(opts.group_cap)?.len();
            u32::try_from(order).is_ok_and(|o| d >= o)
        }
        _ => false,
    };
    let mut s = Subspace::full(z);
    let mut reached = 0;
    for e in 1..=d {
        if s.is_zero() {
            break;
        }
        check_degree(n, e, opts)?;
        reached = e;
        let basis = MonomialBasis::new(n, e);
        let invariants = engine.degree(n, e);
        // Images D_i·f for every center element and invariant.
        let images: Vec<Vec<Vec<Q>>> = invariants
            .iter()
            .map(|f| {
                center
                    .iter()
                    .map(|dm| basis.to_vector(&derivation_action(dm, f)))
                    .collect()
            })
            .collect();
        let current: Vec<Vec<Q>> = s.basis().to_vec();
        let cut = common_kernel(
            current.len(),
            images.iter().map(|per_center| {
                let current = &current;
                let len = basis.len();
                move |t: &[Q]| {
                    let mut out = vec![Q::zero(); len];
                    for (tj, sj) in t.iter().zip(current) {
                        if tj.is_zero() {
                            continue;
                        }
                        for (ci, img) in sj.iter().zip(per_center) {
                            if !ci.is_zero() {
                                axpy(&(tj * ci), img, &mut out);
                            }
                        }
                    }
                    out
                }
            }),
        );
        s = Subspace::from_vectors(
            z,
            cut.basis().iter().map(|t| {
                let mut v = vec![Q::zero(); z];
                for (tj, sj) in t.iter().zip(&current) {
                    axpy(tj, sj, &mut v);
                }
                v
            }),
        );
    }
    let exactness = if certified {
        Exactness::Certified
    } else {
        Exactness::DegreeBounded
    };
    let mut out = finish(s, center, ml, exactness, d);
    out.degree_reached = reached;
    Ok(out)
}

fn finish(
    s: Subspace,
    center: &[QMatrix],
    ml: &MLClassification,
    exactness: Exactness,
    d: u32,
) -> KernelResult {
    let s_matrices = s.basis().iter().map(|c| combine(center, c)).collect();
    KernelResult {
        dim_s: s.dim(),
        s_basis: s,
        s_matrices,
        dim_t: ml.l,
        exactness,
        degree_reached: d,
    }
}

fn combine(mats: &[QMatrix], coords: &[Q]) -> QMatrix {
    let (r, c) = (mats[0].rows(), mats[0].cols());
    let mut acc = vec![Q::zero(); r * c];
    for (x, m) in coords.iter().zip(mats) {
        if !x.is_zero() {
            axpy(x, m.as_slice(), &mut acc);
        }
    }
    QMatrix::from_vec(r, c, acc).expect("shape")
}

/// The center must be a linearly independent family inside `End(V)^H`.
fn check_center(action: &GroupAction, center: &[QMatrix]) -> Result<()> {
    let n = action.dim();
    if center.is_empty() {
        return Err(Error::CenterMismatch);
    }
    if center.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::CenterMismatch);
    }
    let constraints = invariance_constraints(action);
    for m in center {
        if constraints.constraints().iter().any(|c| !c.apply(m).is_zero()) {
            return Err(Error::CenterMismatch);
        }
    }
    Basis::new(n * n, center.iter().map(|m| m.as_slice().to_vec()).collect())
        .map_err(|_| Error::CenterMismatch)?;
    Ok(())
}

/// Exact `𝔰` for a torus whose center acts by a complex scalar `λ_c` on
/// every coordinate `z_c`. Each generator `(a, b)` of the saturated lattice
/// `ker [W | −W]` gives the condition `Σ a_c λ_c + b_c λ̄_c = 0`, since
/// `D·(z^a z̄^b) = (Σ a_c λ_c + b_c λ̄_c)·z^a z̄^b` and these monomials span
/// the invariants. Returns `None` when the center is not of that form.
fn torus_kernel(t: &TorusAction, center: &[QMatrix]) -> Option<Subspace> {
    let m = t.complex_dim();
    let mut lambdas: Vec<Vec<(Q, Q)>> = Vec::with_capacity(center.len());
    for d in center {
        let mut per = Vec::with_capacity(m);
        for r in 0..2 * m {
            for c in 0..2 * m {
                if r / 2 != c / 2 && !d[(r, c)].is_zero() {
                    return None;
                }
            }
        }
        for c in 0..m {
            let (a, b) = (2 * c, 2 * c + 1);
            if d[(a, a)] != d[(b, b)] || d[(a, b)] != -d[(b, a)].clone() {
                return None;
            }
            per.push((d[(a, a)].clone(), d[(b, a)].clone()));
        }
        lambdas.push(per);
    }
    let w: Vec<Vec<BigInt>> = t
        .weights()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigInt::from(x))
                .chain(row.iter().map(|&x| BigInt::from(-x)))
                .collect()
        })
        .collect();
    let lattice = integer_kernel_saturated(&w, 2 * m);
    let z = center.len();
    let mut rows = Vec::with_capacity(2 * lattice.len());
    for v in &lattice {
        let mut re = vec![Q::zero(); z];
        let mut im = vec![Q::zero(); z];
        for (i, per) in lambdas.iter().enumerate() {
            for (c, (lr, li)) in per.iter().enumerate() {
                let a = Q::from_integer(v[c].clone());
                let b = Q::from_integer(v[m + c].clone());
                re[i] += (&a + &b) * lr;
                im[i] += (&a - &b) * li;
            }
        }
        rows.push(re);
        rows.push(im);
    }
    Some(common_kernel(
        z,
        core::iter::once(move |x: &[Q]| {
            rows.iter()
                .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect::<Vec<Q>>()
        }),
    ))
}

/// `Z/𝔰 ≅ R^{m−l+k} ⊕ C^{l−k}` with `k = dim 𝔰`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuotientReport {
    pub dim: usize,
    pub real_rank: usize,
    pub complex_rank: usize,
    pub k: usize,
}

pub fn quotient_abelianization(
    center_dim: usize,
    s: &KernelResult,
    ml: &MLClassification,
    k_dim: usize,
) -> Result<QuotientReport> {
    if k_dim != s.dim_s
        || s.s_basis.ambient_dim() != center_dim
        || center_dim != ml.m + ml.l
        || ml.l > ml.m
        || k_dim > ml.l
    {
        return Err(Error::InconsistentDims);
    }
    let dim = center_dim - k_dim;
    let real_rank = ml.m - ml.l + k_dim;
    let complex_rank = ml.l - k_dim;
    if dim != real_rank + 2 * complex_rank {
        return Err(Error::InconsistentDims);
    }
    Ok(QuotientReport {
        dim,
        real_rank,
        complex_rank,
        k: k_dim,
    })
}

#[cfg(test)]
mod tests;

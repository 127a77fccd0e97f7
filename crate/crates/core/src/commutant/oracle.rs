//! Floating-point isotypic splitting, used only to cross-check the exact
//! `(m, l)` classification and to tell ℝ-type blocks from ℍ-type ones.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SchurType;
use crate::error::{Error, Result};
use crate::exactlin::QMatrix;
use crate::symmetry::GroupElement;

/// One isotypic block `n_j V_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchurBlock {
    pub multiplicity: usize,
    pub irrep_dim: usize,
    pub schur_type: SchurType,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptions {
    pub seed: u64,
    /// Relative gap below which eigenvalues are merged.
    pub cluster_tol: f64,
    /// Relative threshold for rank and nonzero decisions.
    pub rank_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            cluster_tol: 1e-8,
            rank_tol: 1e-9,
        }
    }
}

/// Dense row-major `f64` matrix.
#[derive(Clone, Debug)]
struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
}

impl Mat {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            a: vec![0.0; rows * cols],
        }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.a[i * n + i] = 1.0;
        }
        m
    }

    fn from_q(m: &QMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            a: m.as_slice()
                .iter()
                .map(|x| x.to_f64().unwrap_or(f64::NAN))
                .collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.cols + j] = v;
    }

    fn mul(&self, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.at(i, k);
                if x == 0.0 {
                    continue;
                }
                for j in 0..o.cols {
                    out.a[i * o.cols + j] += x * o.at(k, j);
                }
            }
        }
        out
    }

    fn t(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    fn add_assign(&mut self, o: &Mat) {
        for (x, y) in self.a.iter_mut().zip(&o.a) {
            *x += y;
        }
    }

    fn scale(&mut self, s: f64) {
        for x in &mut self.a {
            *x *= s;
        }
    }

    fn norm(&self) -> f64 {
        libm::sqrt(self.a.iter().map(|x| x * x).sum())
    }

    fn trace(&self) -> f64 {
        (0..self.rows).map(|i| self.at(i, i)).sum()
    }

    fn columns(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out.set(i, c, self.at(i, j));
            }
        }
        out
    }
}

/// Lower-triangular `L` with `P = L Lᵀ`.
fn cholesky(p: &Mat) -> Result<Mat> {
    let n = p.rows;
    let mut l = Mat::zeros(n, n);
    for j in 0..n {
        let mut d = p.at(j, j);
        for k in 0..j {
            d -= l.at(j, k) * l.at(j, k);
        }
        if d <= 0.0 {
            return Err(Error::IllConditioned("invariant form not positive definite"));
        }
        let d = libm::sqrt(d);
        l.set(j, j, d);
        for i in j + 1..n {
            let mut s = p.at(i, j);
            for k in 0..j {
                s -= l.at(i, k) * l.at(j, k);
            }
            l.set(i, j, s / d);
        }
    }
    Ok(l)
}

/// Inverse of a lower-triangular matrix by forward substitution.
fn lower_inverse(l: &Mat) -> Mat {
    let n = l.rows;
    let mut inv = Mat::zeros(n, n);
    for col in 0..n {
        for i in 0..n {
            let mut s = if i == col { 1.0 } else { 0.0 };
            for k in 0..i {
                s -= l.at(i, k) * inv.at(k, col);
            }
            inv.set(i, col, s / l.at(i, i));
        }
    }
    inv
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix: eigenvalues and
/// eigenvectors as columns.
fn symmetric_eigen(s: &Mat) -> (Vec<f64>, Mat) {
    let n = s.rows;
    let mut a = s.clone();
    let mut v = Mat::identity(n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.at(i, j) * a.at(i, j))
            .sum();
        if off < 1e-30 * (1.0 + a.norm() * a.norm()) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.at(p, q);
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let sn = t * c;
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    a.set(k, p, c * akp - sn * akq);
                    a.set(k, q, sn * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    a.set(p, k, c * apk - sn * aqk);
                    a.set(q, k, sn * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.at(k, p);
                    let vkq = v.at(k, q);
                    v.set(k, p, c * vkp - sn * vkq);
                    v.set(k, q, sn * vkp + c * vkq);
                }
            }
        }
    }
    ((0..n).map(|i| a.at(i, i)).collect(), v)
}

struct Splitter<'a> {
    /// Orthogonal group elements in an invariant orthonormal frame.
    elements: &'a [Mat],
    opts: OracleOptions,
    rng: ChaCha8Rng,
}

impl Splitter<'_> {
    fn restrict(&self, u: &Mat) -> Vec<Mat> {
        let ut = u.t();
        self.elements.iter().map(|g| ut.mul(&g.mul(u))).collect()
    }

    fn random(&mut self, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for x in &mut m.a {
            *x = self.rng.gen_range(-1.0..1.0);
        }
        m
    }

    /// `(1/|G|) Σ g_b X g_aᵀ`: an equivariant map from block `a` to block `b`.
    fn average(ga: &[Mat], gb: &[Mat], x: &Mat) -> Mat {
        let mut acc = Mat::zeros(x.rows, x.cols);
        for (a, b) in ga.iter().zip(gb) {
            acc.add_assign(&b.mul(x).mul(&a.t()));
        }
        acc.scale(1.0 / ga.len() as f64);
        acc
    }

    /// Split the span of the orthonormal columns of `u` into irreducibles.
    fn split(&mut self, u: Mat, out: &mut Vec<(Mat, SchurType)>) -> Result<()> {
        let d = u.cols;
        let restricted = self.restrict(&u);
        for _attempt in 0..2 {
            let mut s = self.random(d, d);
            s.add_assign(&s.t());
            let r = Self::average(&restricted, &restricted, &s);
            let (vals, vecs) = symmetric_eigen(&r);
            let mut order: Vec<usize> = (0..d).collect();
            order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
            let scale = vals.iter().fold(1e-300f64, |m, v| m.max(v.abs()));
            let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
            for w in order.windows(2) {
                let gap = (vals[w[1]] - vals[w[0]]) / scale;
                if gap < self.opts.cluster_tol {
                    clusters.last_mut().expect("nonempty").push(w[1]);
                } else if gap < self.opts.cluster_tol * 1e3 {
                    return Err(Error::IllConditioned("eigenvalue gap inside tolerance band"));
                } else {
                    clusters.push(vec![w[1]]);
                }
            }
            if clusters.len() > 1 {
                for c in clusters {
                    let sub = u.mul(&vecs.columns(&c));
                    self.split(sub, out)?;
                }
                return Ok(());
            }
        }
        // Only scalar symmetric equivariants: irreducible. Its commutant has
        // dimension ⟨χ, χ⟩ = (1/|G|) Σ tr(g)².
        let cdim = restricted.iter().map(|g| g.trace() * g.trace()).sum::<f64>()
            / restricted.len() as f64;
        let rounded = libm::round(cdim);
        if (cdim - rounded).abs() > 1e-6 {
            return Err(Error::IllConditioned("commutant dimension not integral"));
        }
        let ty = SchurType::from_dim(rounded as usize)
            .ok_or(Error::IllConditioned("commutant dimension not 1, 2 or 4"))?;
        out.push((u, ty));
        Ok(())
    }

    fn isomorphic(&mut self, a: &Mat, b: &Mat) -> bool {
        if a.cols != b.cols {
            return false;
        }
        let ga = self.restrict(a);
        let gb = self.restrict(b);
        let x = self.random(b.cols, a.cols);
        Self::average(&ga, &gb, &x).norm() > self.opts.rank_tol * x.norm()
    }
}

/// Isotypic blocks `(n_j, dim V_j, type)` of a finite group's action, by
/// numerical splitting. Independent of the exact classification path.
pub fn schur_split_oracle(elements: &[GroupElement], opts: OracleOptions) -> Result<Vec<SchurBlock>> {
    let Some(first) = elements.first() else {
        return Ok(Vec::new());
    };
    let n = first.matrix.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let gs: Vec<Mat> = elements.iter().map(|e| Mat::from_q(&e.matrix)).collect();
    // Invariant inner product P = Σ gᵀg, then change frame to make the action orthogonal.
    let mut p = Mat::zeros(n, n);
    for g in &gs {
        p.add_assign(&g.t().mul(g));
    }
    let l = cholesky(&p)?;
    let lt = l.t();
    let lt_inv = lower_inverse(&l).t();
    let orth: Vec<Mat> = gs.iter().map(|g| lt.mul(g).mul(&lt_inv)).collect();

    let mut splitter = Splitter {
        elements: &orth,
        opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
    };
    let mut irreducibles = Vec::new();
    splitter.split(Mat::identity(n), &mut irreducibles)?;

    let mut blocks: Vec<(Mat, SchurBlock)> = Vec::new();
    'next: for (u, ty) in irreducibles {
        for (rep, block) in &mut blocks {
            if block.schur_type == ty && splitter.isomorphic(rep, &u) {
                block.multiplicity += 1;
                continue 'next;
            }
        }
        let irrep_dim = u.cols;
        blocks.push((
            u,
            SchurBlock {
                multiplicity: 1,
                irrep_dim,
                schur_type: ty,
            },
        ));
    }
    Ok(blocks.into_iter().map(|(_, b)| b).collect())
}

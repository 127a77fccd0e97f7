use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{axpy, is_zero_vec, QMatrix, Q};
use crate::error::{Error, Result};

/// Incrementally maintained reduced row-echelon form.
///
/// Rows are kept sorted by pivot column, every pivot entry is one and every
/// pivot column is zero outside its own row.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Q>> {
        self.rows
    }

    /// Subtract the span of the current rows from `v` in place.
    pub fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = -v[p].clone();
                axpy(&f, row, v);
            }
        }
    }

    /// Add `v` to the row space. Returns whether it was independent.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        if !inv.is_one() {
            for x in v.iter_mut().filter(|x| !x.is_zero()) {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(&f, &v, row);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Whether `v` lies in the current row space.
    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vec(&w)
    }
}

/// Reduced row-echelon form of `m` and its rank. Zero rows come last.
pub fn rref(m: &QMatrix) -> (QMatrix, usize) {
    let mut red = RowReducer::new(m.cols());
    for i in 0..m.rows() {
        red.insert(m.row(i).to_vec());
    }
    let rank = red.rank();
    let mut data: Vec<Q> = red.into_rows().into_iter().flatten().collect();
    data.resize(m.rows() * m.cols(), Q::zero());
    (
        QMatrix::from_vec(m.rows(), m.cols(), data).expect("shape preserved"),
        rank,
    )
}

fn kernel_from_reducer(red: &RowReducer) -> Subspace {
    let cols = red.cols();
    let mut is_pivot = vec![false; cols];
    for &p in red.pivots() {
        is_pivot[p] = true;
    }
    let mut out = RowReducer::new(cols);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &p) in red.rows().iter().zip(red.pivots()) {
            v[p] = -row[free].clone();
        }
        out.insert(v);
    }
    Subspace {
        ambient: cols,
        basis: out.into_rows(),
    }
}

/// `{v : Mv = 0}` with canonical basis.
pub fn nullspace(m: &QMatrix) -> Subspace {
    let mut red = RowReducer::new(m.cols());
    for i in 0..m.rows() {
        if red.rank() == m.cols() {
            break;
        }
        red.insert(m.row(i).to_vec());
    }
    kernel_from_reducer(&red)
}

/// Common kernel of a family of linear maps on `Q^dim`, each given as a
/// function on coordinate vectors.
///
/// The kernel is cut down one map at a time, so every later map is only
/// evaluated on the kernel found so far.
pub fn common_kernel<I, F>(dim: usize, ops: I) -> Subspace
where
    I: IntoIterator<Item = F>,
    F: Fn(&[Q]) -> Vec<Q>,
{
    let mut basis: Vec<Vec<Q>> = (0..dim)
        .map(|i| {
            let mut e = vec![Q::zero(); dim];
            e[i] = Q::one();
            e
        })
        .collect();
    for op in ops {
        if basis.is_empty() {
            break;
        }
        let images: Vec<Vec<Q>> = basis.iter().map(|b| op(b)).collect();
        let len = images.first().map_or(0, Vec::len);
        let k = basis.len();
        let mut red = RowReducer::new(k);
        for r in 0..len {
            if red.rank() == k {
                break;
            }
            let row: Vec<Q> = images.iter().map(|img| img[r].clone()).collect();
            if !is_zero_vec(&row) {
                red.insert(row);
            }
        }
        let ker = kernel_from_reducer(&red);
        basis = ker
            .basis()
            .iter()
            .map(|c| {
                let mut v = vec![Q::zero(); dim];
                for (ci, b) in c.iter().zip(&basis) {
                    if !ci.is_zero() {
                        axpy(ci, b, &mut v);
                    }
                }
                v
            })
            .collect();
    }
    Subspace::from_vectors(dim, basis)
}

/// A linear subspace of `Q^n`, stored by its unique RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: (0..ambient)
                .map(|i| {
                    let mut e = vec![Q::zero(); ambient];
                    e[i] = Q::one();
                    e
                })
                .collect(),
        }
    }

    /// Span of the given vectors. Panics if a vector has the wrong length.
    pub fn from_vectors<I: IntoIterator<Item = Vec<Q>>>(ambient: usize, vectors: I) -> Self {
        let mut red = RowReducer::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            if red.rank() == ambient {
                break;
            }
            red.insert(v);
        }
        Self {
            ambient,
            basis: red.into_rows(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis
            .iter()
            .map(|b| b.iter().position(|x| !x.is_zero()).expect("nonzero basis"))
    }

    fn reducer(&self) -> RowReducer {
        RowReducer {
            cols: self.ambient,
            rows: self.basis.clone(),
            pivots: self.pivots().collect(),
        }
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<Q> = self.pivots().map(|p| v[p].clone()).collect();
        (self.element(&coords) == v).then_some(coords)
    }

    /// The vector with the given canonical coordinates.
    pub fn element(&self, coords: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                axpy(c, b, &mut v);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        v.len() == self.ambient && self.reducer().contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && {
            let red = self.reducer();
            other.basis.iter().all(|b| red.contains(b))
        }
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut red = self.reducer();
        for b in &other.basis {
            red.insert(b.clone());
        }
        Ok(Subspace {
            ambient: self.ambient,
            basis: red.into_rows(),
        })
    }

    /// `U ∩ W`, from the kernel of `(a, b) ↦ Σ aᵢuᵢ − Σ bⱼwⱼ`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let k = self.dim();
        let cols = k + other.dim();
        let mut m = QMatrix::zeros(self.ambient, cols);
        for (j, u) in self.basis.iter().enumerate() {
            for (i, x) in u.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for (i, x) in w.iter().enumerate() {
                m[(i, k + j)] = -x;
            }
        }
        let ker = nullspace(&m);
        Ok(Subspace::from_vectors(
            self.ambient,
            ker.basis().iter().map(|c| self.element(&c[..k])),
        ))
    }

    /// Basis vectors of `self` that extend a basis of `modulo`: together they
    /// span `(self + modulo) / modulo`. Empty when `self ⊆ modulo`.
    pub fn quotient_basis(&self, modulo: &Subspace) -> Result<Vec<Vec<Q>>> {
        self.check_same(modulo)?;
        let mut red = modulo.reducer();
        Ok(self
            .basis
            .iter()
            .filter(|b| red.insert((*b).clone()))
            .cloned()
            .collect())
    }

    /// Image of the subspace under `f`, as a subspace of `Q^target`.
    pub fn map<F: Fn(&[Q]) -> Vec<Q>>(&self, target: usize, f: F) -> Subspace {
        Subspace::from_vectors(target, self.basis.iter().map(|b| f(b)))
    }
}

/// An ordered basis that is not necessarily canonical, with exact coordinates.
#[derive(Clone, Debug)]
pub struct Basis {
    vectors: Vec<Vec<Q>>,
    span: Subspace,
    /// Row `i` expresses canonical basis vector `i` in terms of `vectors`.
    to_given: Vec<Vec<Q>>,
}

impl Basis {
    /// Fails with [`Error::LinearlyDependent`] unless the vectors are independent.
    pub fn new(ambient: usize, vectors: Vec<Vec<Q>>) -> Result<Self> {
        let k = vectors.len();
        let mut red = RowReducer::new(ambient + k);
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            let mut row = v.clone();
            row.extend((0..k).map(|j| if i == j { Q::one() } else { Q::zero() }));
            red.insert(row);
        }
        if red.pivots().iter().any(|&p| p >= ambient) {
            return Err(Error::LinearlyDependent);
        }
        let mut canon = Vec::with_capacity(k);
        let mut to_given = Vec::with_capacity(k);
        for mut row in red.into_rows() {
            to_given.push(row.split_off(ambient));
            canon.push(row);
        }
        Ok(Self {
            vectors,
            span: Subspace {
                ambient,
                basis: canon,
            },
            to_given,
        })
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Coordinates of `v` with respect to the given vectors.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let c = self.span.coordinates(v)?;
        let mut out = vec![Q::zero(); self.len()];
        for (ci, row) in c.iter().zip(&self.to_given) {
            if !ci.is_zero() {
                axpy(ci, row, &mut out);
            }
        }
        Some(out)
    }

    pub fn element(&self, coords: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.span.ambient_dim()];
        for (c, b) in coords.iter().zip(&self.vectors) {
            if !c.is_zero() {
                axpy(c, b, &mut v);
            }
        }
        v
    }
}

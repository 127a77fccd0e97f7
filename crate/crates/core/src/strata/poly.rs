use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exactlin::{QMatrix, Q};
use crate::symmetry::Averageable;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over `Q` in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, Q::one())
    }

    pub fn monomial(exponents: Monomial, c: Q) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// The linear form `Σ_j row[j]·x_j`.
    pub fn linear(row: &[Q]) -> Self {
        let n = row.len();
        let mut p = Self::zero(n);
        for (j, c) in row.iter().enumerate() {
            let mut m = vec![0; n];
            m[j] = 1;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-Q::one()))
    }

    pub fn scaled(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut d = m.clone();
                d[i] -= 1;
                out.add_term(d, c * Q::from_integer(m[i].into()));
            }
        }
        out
    }

    /// `f(g·x)`: substitute `x_i ↦ Σ_j g_ij x_j`.
    pub fn compose_linear(&self, g: &QMatrix) -> Self {
        let forms: Vec<Polynomial> = (0..self.nvars).map(|i| Self::linear(g.row(i))).collect();
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.nvars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&forms[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(m) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            acc + t
        })
    }
}

impl Averageable for Polynomial {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }

    fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn scale(&mut self, s: &Q) {
        *self = self.scaled(s);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{i}")?,
                    _ => write!(f, "·x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// `C(n + d − 1, d)`, saturating.
pub fn monomial_count(nvars: usize, degree: usize) -> usize {
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    let mut acc: u128 = 1;
    for i in 0..degree as u128 {
        acc = acc * (nvars as u128 + i) / (i + 1);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All monomials of a fixed degree, in a fixed order, with an index.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill(&mut cur, 0, degree, &mut monomials);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Coefficient vector of a homogeneous polynomial of this degree.
    pub fn to_vector(&self, p: &Polynomial) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.len()];
        for (m, c) in p.terms() {
            let i = *self
                .index
                .get(m)
                .expect("polynomial is homogeneous of the basis degree");
            v[i] = c.clone();
        }
        v
    }

    pub fn to_polynomial(&self, v: &[Q]) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in self.monomials.iter().zip(v) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

fn fill(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    if cur.is_empty() {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;

    #[test]
    fn monomial_counts() {
        assert_eq!(MonomialBasis::new(3, 2).len(), 6);
        assert_eq!(monomial_count(3, 2), 6);
        assert_eq!(monomial_count(12, 3), 364);
        assert_eq!(MonomialBasis::new(12, 3).len(), 364);
        assert_eq!(MonomialBasis::new(1, 0).len(), 1);
    }

    #[test]
    fn compose_and_partial() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let f = x.mul(&x).sub(&y.mul(&y)); // x² − y²
        let swap = QMatrix::from_i64(&[[0, 1], [1, 0]]);
        assert_eq!(f.compose_linear(&swap), f.scaled(&q(-1)));
        assert_eq!(f.partial(0), x.scaled(&q(2)));
        assert_eq!(f.eval(&[q(3), q(1)]), q(8));
        let b = MonomialBasis::new(2, 2);
        assert_eq!(b.to_polynomial(&b.to_vector(&f)), f);
    }
}

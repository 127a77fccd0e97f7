use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{axpy, is_zero_vec, q, QMatrix, Q};
use crate::error::{Error, Result};

/// Univariate polynomial over `Q`, coefficients in increasing degree.
///
/// The coefficient list never ends in a zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<Q>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `t − root`.
    pub fn linear(root: Q) -> Self {
        Self::new(vec![-root, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self {
                    coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
                }
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Evaluate at a square matrix.
    pub fn eval_matrix(&self, m: &QMatrix) -> QMatrix {
        let n = m.rows();
        self.coeffs.iter().rev().fold(QMatrix::zeros(n, n), |acc, c| {
            let mut next = acc.matmul(m);
            for i in 0..n {
                next[(i, i)] += c;
            }
            next
        })
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") * &lc_inv;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &c * d;
                }
                quot[shift] = c;
            }
            rem.pop();
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p′)`, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().is_none_or(|d| d == 0) {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    fn sign_at_pos_infinity(&self) -> i8 {
        self.leading().map_or(0, |c| if c.is_positive() { 1 } else { -1 })
    }

    fn sign_at_neg_infinity(&self) -> i8 {
        let s = self.sign_at_pos_infinity();
        if self.degree().is_some_and(|d| d % 2 == 1) {
            -s
        } else {
            s
        }
    }

    /// Sign of `p(x)` as −1, 0 or 1.
    pub fn sign_at(&self, x: &Q) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// The Sturm chain `p, p′, −rem(p, p′), …`.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(-&r);
        }
        chain.pop();
        chain
    }
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Q::zero(); n];
        axpy(&Q::one(), &self.coeffs, &mut out[..self.coeffs.len()]);
        axpy(&Q::one(), &rhs.coeffs, &mut out[..rhs.coeffs.len()]);
        QPolynomial::new(out)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                axpy(a, &rhs.coeffs, &mut out[i..]);
            }
        }
        QPolynomial::new(out)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Real roots and complex-conjugate root pairs of a squarefree polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootCount {
    pub real_roots: usize,
    pub conjugate_pairs: usize,
}

/// Count real roots by Sturm's theorem on `(−∞, ∞)`.
pub fn count_real_roots(p: &QPolynomial) -> Result<RootCount> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg > 0 && !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let chain = p.sturm_chain();
    let at_neg = sign_changes(chain.iter().map(QPolynomial::sign_at_neg_infinity));
    let at_pos = sign_changes(chain.iter().map(QPolynomial::sign_at_pos_infinity));
    let real_roots = at_neg - at_pos;
    debug_assert_eq!((deg - real_roots) % 2, 0);
    Ok(RootCount {
        real_roots,
        conjugate_pairs: (deg - real_roots) / 2,
    })
}

/// Monic polynomial of least degree annihilating the square matrix `m`.
///
/// Powers `I, M, M², …` are reduced against each other until the first linear
/// dependency; its coefficients are the minimal polynomial.
pub fn minimal_polynomial(m: &QMatrix) -> QPolynomial {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    let len = n * n;
    // Each entry: (reduced vec(M^k) part, combination of powers producing it).
    let mut rows: Vec<(Vec<Q>, Vec<Q>, usize)> = Vec::new();
    let mut power = QMatrix::identity(n);
    for k in 0..=n {
        let mut vecp = power.as_slice().to_vec();
        let mut comb = vec![Q::zero(); n + 1];
        comb[k] = Q::one();
        for (rv, rc, p) in &rows {
            if !vecp[*p].is_zero() {
                let f = -(&vecp[*p] / &rv[*p]);
                axpy(&f, rv, &mut vecp);
                axpy(&f, rc, &mut comb);
            }
        }
        if is_zero_vec(&vecp) {
            return QPolynomial::new(comb).monic();
        }
        let p = vecp.iter().position(|x| !x.is_zero()).expect("nonzero");
        debug_assert!(p < len);
        rows.push((vecp, comb, p));
        power = power.matmul(m);
    }
    unreachable!("Cayley–Hamilton bounds the degree by n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qr;

    #[test]
    fn minimal_polynomials_of_simple_matrices() {
        assert_eq!(
            minimal_polynomial(&QMatrix::identity(4)),
            QPolynomial::from_i64(&[-1, 1])
        );
        let j = QMatrix::from_i64(&[[0, -1], [1, 0]]);
        assert_eq!(minimal_polynomial(&j), QPolynomial::from_i64(&[1, 0, 1]));
        let nil = QMatrix::from_i64(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        assert_eq!(minimal_polynomial(&nil), QPolynomial::from_i64(&[0, 0, 0, 1]));
        assert!(minimal_polynomial(&QMatrix::zeros(2, 2)) == QPolynomial::from_i64(&[0, 1]));
    }

    #[test]
    fn root_counts() {
        let rc = count_real_roots(&QPolynomial::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!((rc.real_roots, rc.conjugate_pairs), (0, 1));
        // t(t−1)(t²+1) = t⁴ − t³ + t² − t
        let p = QPolynomial::from_i64(&[0, -1, 1, -1, 1]);
        let rc = count_real_roots(&p).unwrap();
        assert_eq!((rc.real_roots, rc.conjugate_pairs), (2, 1));
        assert_eq!(count_real_roots(&QPolynomial::constant(q(3))).unwrap().real_roots, 0);
        assert_eq!(
            count_real_roots(&QPolynomial::from_i64(&[1, -2, 1])),
            Err(Error::NotSquarefree)
        );
        assert_eq!(count_real_roots(&QPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_part_drops_repeats() {
        // (t−1)²(t²+1)
        let p = &(&QPolynomial::from_i64(&[-1, 1]) * &QPolynomial::from_i64(&[-1, 1]))
            * &QPolynomial::from_i64(&[1, 0, 1]);
        let s = p.squarefree_part();
        assert_eq!(s, &QPolynomial::from_i64(&[-1, 1]) * &QPolynomial::from_i64(&[1, 0, 1]));
    }

    #[test]
    fn division_identity() {
        let a = QPolynomial::new(vec![qr(1, 2), q(3), q(0), q(-2), q(5)]);
        let b = QPolynomial::from_i64(&[1, 1, 3]);
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(&(&quo * &b) + &rem, a);
        assert!(rem.degree().unwrap() < 2);
    }

    #[test]
    fn display() {
        assert_eq!(
            alloc::format!("{}", QPolynomial::from_i64(&[1, -1, 0, 2])),
            "2t^3 - t + 1"
        );
    }
}

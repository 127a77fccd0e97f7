use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Basis of the saturated integer kernel `{a ∈ ℤⁿ : W a = 0}`.
///
/// Unimodular column operations bring `W` to column echelon form while the
/// same operations are applied to the identity; the columns of the transform
/// beyond the echelon pivots form the kernel basis. Because the transform is
/// unimodular the resulting lattice is saturated.
pub fn integer_kernel_saturated(w: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // Column-major working copies.
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|c| w.iter().map(|row| row[c].clone()).collect())
        .collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|c| {
            let mut e = vec![BigInt::zero(); n];
            e[c] = BigInt::one();
            e
        })
        .collect();

    let mut pivot = 0;
    for r in 0..w.len() {
        if pivot == n {
            break;
        }
        for c in pivot + 1..n {
            if a[c][r].is_zero() {
                continue;
            }
            let x = a[pivot][r].clone();
            let y = a[c][r].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (xg, yg) = (&x / &g, &y / &g);
            combine(&mut a, pivot, c, &s, &t, &xg, &yg);
            combine(&mut u, pivot, c, &s, &t, &xg, &yg);
        }
        if !a[pivot][r].is_zero() {
            pivot += 1;
        }
    }
    let mut basis: Vec<Vec<BigInt>> = u.split_off(pivot);
    for b in &mut basis {
        if b.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            for x in b.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
    }
    basis
}

/// `(col_p, col_c) ← (s·col_p + t·col_c, −(y/g)·col_p + (x/g)·col_c)`, which has
/// determinant `(s·x + t·y)/g = 1`.
fn combine(
    cols: &mut [Vec<BigInt>],
    p: usize,
    c: usize,
    s: &BigInt,
    t: &BigInt,
    xg: &BigInt,
    yg: &BigInt,
) {
    let (lo, hi) = cols.split_at_mut(c);
    let (cp, cc) = (&mut lo[p], &mut hi[0]);
    for (vp, vc) in cp.iter_mut().zip(cc.iter_mut()) {
        let np = s * &*vp + t * &*vc;
        let nc = xg * &*vc - yg * &*vp;
        *vp = np;
        *vc = nc;
    }
}

/// gcd of all maximal minors of an `n × k` integer matrix given by its `k`
/// columns. Equals one exactly when the columns span a saturated lattice.
pub fn maximal_minor_gcd(columns: &[Vec<BigInt>]) -> BigInt {
    let k = columns.len();
    let n = columns.first().map_or(0, Vec::len);
    if k == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    let mut rows = Vec::with_capacity(k);
    subsets(n, k, 0, &mut rows, &mut |chosen| {
        let m: Vec<Vec<BigInt>> = chosen
            .iter()
            .map(|&r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        g = g.gcd(&bareiss_det(m));
    });
    g
}

fn subsets(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for i in start..n {
        if n - i < k - acc.len() {
            break;
        }
        acc.push(i);
        subsets(n, k, i + 1, acc, f);
        acc.pop();
    }
}

/// Fraction-free determinant.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn unit_weights() {
        let k = integer_kernel_saturated(&bi(&[&[1, 1]]), 2);
        assert_eq!(k, bi(&[&[1, -1]]));
    }

    #[test]
    fn saturation_divides_out_content() {
        let k = integer_kernel_saturated(&bi(&[&[2, 4]]), 2);
        assert_eq!(k, bi(&[&[2, -1]]));
        assert_eq!(maximal_minor_gcd(&k), BigInt::one());
        assert_eq!(maximal_minor_gcd(&bi(&[&[4, -2]])), BigInt::from(2));
    }

    #[test]
    fn zero_rows_give_full_lattice() {
        let k = integer_kernel_saturated(&bi(&[&[0, 0, 0]]), 3);
        assert_eq!(k.len(), 3);
        assert!(integer_kernel_saturated(&[], 0).is_empty());
    }

    #[test]
    fn bareiss_matches_expansion() {
        let m = bi(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
        // 2(−8−2) + 1(0−5) + 3(0−20) = −85
        assert_eq!(bareiss_det(m), BigInt::from(-85));
    }
}

//! Exact linear algebra over the rationals.
//!
//! Everything in this module is exact: there are no tolerances anywhere, and
//! subspaces carry a canonical reduced row-echelon basis so that structural
//! equality is subspace equality.

mod echelon;
mod lattice;
mod matrix;
mod poly;

pub use echelon::{common_kernel, nullspace, rref, Basis, RowReducer, Subspace};
pub use lattice::{integer_kernel_saturated, maximal_minor_gcd};
pub use matrix::QMatrix;
pub use poly::{count_real_roots, minimal_polynomial, QPolynomial, RootCount};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics on a zero denominator.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a rational written as `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&den) {
                return None;
            }
            Some(Q::new(num, den))
        }
        None => Some(Q::from_integer(text.parse().ok()?)),
    }
}

/// `a·x + y` over dense rational vectors, skipping zero entries of `x`.
pub fn axpy(a: &Q, x: &[Q], y: &mut [Q]) {
    use num_traits::Zero;
    for (xi, yi) in x.iter().zip(y.iter_mut()) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    use num_traits::Zero;
    v.iter().all(Zero::is_zero)
}

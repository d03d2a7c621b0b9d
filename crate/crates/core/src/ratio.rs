//! Exact rational scalars.
//!
//! Every Laplacian factorization in this crate is a ratio of small integers,
//! so the construction layer works over [`Rat`] ([`num_rational::Rational64`])
//! and converts to `f64` only where genuinely numerical work starts
//! (eigensolves, linear solves, simulation). This keeps structural identities
//! — row sums, entrywise matrix equalities, transposition relations — exact
//! rather than approximate.

use nalgebra::{DMatrix, DVector};
use num_rational::Rational64;
use num_traits::ToPrimitive;

/// Exact rational scalar used by the factorization layer.
pub type Rat = Rational64;

/// Shorthand for `n / d` (panics if `d == 0`, like `Rational64::new`).
pub fn rat(n: i64, d: i64) -> Rat {
    Rational64::new(n, d)
}

/// Shorthand for the integer `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rational64::from_integer(n)
}

/// Correctly rounded conversion to `f64`.
pub fn to_f64(r: Rat) -> f64 {
    // Rational64 -> f64 never fails; values here are tiny.
    r.to_f64().expect("rational converts to f64")
}

/// Render a rational in lowest terms: `"3/2"`, `"-1/3"`, `"2"`, `"0"`.
pub fn format_rat(r: Rat) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Entrywise conversion of a rational matrix to floating point.
pub fn matrix_to_f64(m: &DMatrix<Rat>) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| to_f64(m[(i, j)]))
}

/// Entrywise conversion of a rational vector to floating point.
pub fn vector_to_f64(v: &DVector<Rat>) -> DVector<f64> {
    DVector::from_fn(v.len(), |i, _| to_f64(v[i]))
}

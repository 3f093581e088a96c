//! Exact integer polynomial and rational-function arithmetic, integer
//! matrices, Kronecker products, characteristic polynomials and root
//! extraction. Everything upstream of the numeric layer is exact.

mod matrix;
mod poly;
mod rational;
mod roots;

pub use matrix::{IntMatrix, Matrix, RationalMatrix};
pub use poly::{cyclotomic_product, IntPolynomial};
pub use rational::RationalFunction;
pub use roots::{smallest_positive_root, spectral_radius};

use crate::error::{KneadError, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Tensor product of polynomials in the `det(I - tA)` convention: the
/// result is the polynomial of degree `deg f * deg g`, constant term 1,
/// whose roots are all pairwise products of the roots of `f` and `g`.
///
/// Realized through companion matrices: the reversal of `f` is monic with
/// the reciprocal roots of `f` as eigenvalues, so the Kronecker product of
/// the two companion matrices realizes every product of reciprocals, and
/// `det(I - t(C_f (x) C_g))` is the desired polynomial.
pub fn poly_tensor(f: &IntPolynomial, g: &IntPolynomial) -> Result<IntPolynomial> {
    let f = unit_constant(f)?;
    let g = unit_constant(g)?;
    if f.degree() == Some(0) || g.degree() == Some(0) {
        return Ok(IntPolynomial::one());
    }
    let k = companion_of_reversal(&f).kron(&companion_of_reversal(&g));
    Ok(k.char_poly())
}

fn unit_constant(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() {
        return Err(KneadError::Unsupported(
            "poly_tensor of the zero polynomial".into(),
        ));
    }
    let c = p.constant_term();
    if c.is_zero() {
        return Err(KneadError::Unsupported(
            "poly_tensor requires a nonzero constant term".into(),
        ));
    }
    if c.is_one() {
        Ok(p.clone())
    } else if (-&c).is_one() {
        Ok(-p)
    } else {
        Err(KneadError::Unsupported(format!(
            "poly_tensor requires a unit constant term, got {c}"
        )))
    }
}

/// Companion matrix of the monic reversal `x^d f(1/x)`; its eigenvalues are
/// the reciprocals of the roots of `f`. Requires constant term 1.
fn companion_of_reversal(f: &IntPolynomial) -> IntMatrix {
    let d = f.degree().expect("nonzero polynomial");
    debug_assert!(f.constant_term().is_one());
    // monic poly x^d + f_1 x^{d-1} + ... + f_d: a_k = f_{d-k}
    IntMatrix::from_fn(d, d, |i, j| {
        if j + 1 == d {
            // last column holds -a_i = -f_{d-i}
            -f.coeff(d - i)
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

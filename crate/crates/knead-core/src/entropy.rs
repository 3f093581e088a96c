//! Topological entropy via both routes: the smallest positive root of the
//! kneading d-polynomial and the spectral radius of the transition matrix.

use crate::algebra::{smallest_positive_root, spectral_radius, IntPolynomial};
use crate::error::Result;
use crate::kneading::{d_poly, KneadingDeterminant};
use crate::markov::TransitionMatrix;
use serde::Serialize;

/// Both entropy routes side by side, with the component entropies and the
/// Bowen-bound verdict.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub h_kneading: f64,
    pub h_spectral: f64,
    pub t_star: Option<f64>,
    pub lambda: f64,
    pub h_basis: f64,
    pub h_fiber: f64,
    pub bowen_ok: bool,
}

/// Entropy from the kneading route: `h = log(1/t*)` for the smallest
/// positive root `t*` of `D(t) * P_cyc(t)`, zero when no root lies in
/// (0, 1).
pub fn entropy_from_kneading(
    d: &KneadingDeterminant,
    periods: &[usize],
    precision: f64,
) -> Result<(Option<f64>, f64)> {
    let poly = d_poly(d, periods)?;
    Ok(entropy_from_polynomial(&poly, precision))
}

/// Same, starting from an already-cleared d-polynomial.
pub fn entropy_from_polynomial(poly: &IntPolynomial, precision: f64) -> (Option<f64>, f64) {
    match smallest_positive_root(poly, precision) {
        Some(t) if t < 1.0 => (Some(t), (1.0 / t).ln()),
        other => (other, 0.0),
    }
}

/// Entropy from the subshift route: `h = log(spectral radius)`, floored at
/// zero.
pub fn entropy_from_transition(a: &TransitionMatrix, precision: f64) -> (f64, f64) {
    if a.size() == 0 {
        return (0.0, 0.0);
    }
    let lambda = spectral_radius(a.matrix(), precision);
    let h = if lambda > 1.0 { lambda.ln() } else { 0.0 };
    (lambda, h)
}

/// Bowen's bounds: `max(h_f, h_fib) <= h_T <= h_f + h_fib`, to tolerance.
pub fn bowen_check(h_basis: f64, h_fiber: f64, h_total: f64, tol: f64) -> bool {
    h_basis.max(h_fiber) - tol <= h_total && h_total <= h_basis + h_fiber + tol
}

//! The chain-complex matrices of an m-modal kneading system, their
//! commutative diagrams, and the tensor-lifted identity
//! `D_T * P_cyc = P_A = P_Theta`.
//!
//! Matrix encoding is row-to-column throughout: an entry
//! `(i, j)` of a dynamical matrix says basis element i maps across basis
//! element j, and the diagram identities take the forms `eta * omega =
//! alpha * eta` and `Theta^T * boundary = boundary * A^T` with `boundary =
//! eta^T`.

use crate::algebra::{IntMatrix, IntPolynomial, Matrix};
use crate::error::{KneadError, Result};
use crate::kneading::{kneading_matrix, triangular_kneading};
use crate::markov::{region_symbols, transition_matrix_symbolic};
use crate::symbols::{compare, KneadingData, Side, Symbol};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// The full bundle of diagram matrices for one kneading system on
/// `n = p_1 + ... + p_m` points and `n - 1` intervals.
#[derive(Debug, Clone)]
pub struct DiagramMatrices {
    /// Permutation sorting the points spatially: `pi(i, j) = 1` iff the
    /// i-th smallest point is point j in time order.
    pub pi: IntMatrix,
    /// The 0-to-1 chain map `eta = phi * pi`, shape `(n-1) x n`.
    pub eta: IntMatrix,
    /// `partial = eta^T`, shape `n x (n-1)`.
    pub boundary: IntMatrix,
    /// Shift rotation: one cycle per kneading block, `n x n`.
    pub omega: IntMatrix,
    /// Signed interval endomorphism solved from `eta * omega = alpha * eta`.
    pub alpha: IntMatrix,
    /// Diagonal lap-orientation signs per interval.
    pub beta: IntMatrix,
    /// First-symbol sign matrix with the critical-column corrections.
    pub gamma: IntMatrix,
    /// `Theta = gamma * omega`.
    pub theta: IntMatrix,
    /// The nonnegative transition matrix `A = beta * alpha`.
    pub a_matrix: IntMatrix,
    /// Unitriangular factor with last row `(-1, ..., -1, 1)`.
    pub b_factor: IntMatrix,
    /// `boundary` with its last row removed; integrally invertible.
    pub d_factor: IntMatrix,
    /// `(|C_0|, |C_1|) = (n, n - 1)`.
    pub dims: (usize, usize),
}

/// Exact-equality certificate for the two commuting squares and the
/// characteristic-polynomial identity.
#[derive(Debug, Clone)]
pub struct DiagramCertificate {
    pub commutes_0: bool,
    pub commutes_1: bool,
    pub charpoly_equal: bool,
    pub residual_0: IntMatrix,
    pub residual_1: IntMatrix,
    pub p_theta: IntPolynomial,
    pub p_a: IntPolynomial,
}

impl DiagramCertificate {
    pub fn all_pass(&self) -> bool {
        self.commutes_0 && self.commutes_1 && self.charpoly_equal
    }
}

/// Assembles every diagram matrix for admissible kneading data with
/// pairwise distinct symbolic points.
pub fn build_diagram(data: &KneadingData) -> Result<DiagramMatrices> {
    // the orientation-consistency check lives in the transition matrix;
    // data failing it is unrealizable and the diagrams are meaningless
    let _ = transition_matrix_symbolic(data)?;
    let (order, _pos) = data.sorted_points()?;
    let n = order.len();
    let m = data.modality();
    let pts = data.orbit_points();

    let pi = IntMatrix::from_fn(n, n, |i, j| {
        if order[i] == j {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let phi = IntMatrix::from_fn(n.saturating_sub(1), n, |i, j| {
        if j == i {
            -BigInt::one()
        } else if j == i + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let eta = phi.mul_mat(&pi);
    let boundary = eta.transpose();

    let omega = IntMatrix::from_fn(n, n, |i, j| {
        if data.successor(i) == j {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });

    // D = boundary without its last row; invertible over Z by the theory
    let d_factor = if n == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        boundary.drop_row(n - 1)
    };
    let det_d = d_factor.det();
    if !det_d.clone().abs().is_one() {
        return Err(KneadError::InternalConvention(format!(
            "the truncated boundary factor has determinant {det_d}, expected a unit"
        )));
    }
    let b_factor = IntMatrix::from_fn(n, n, |i, j| {
        if i + 1 == n {
            if j + 1 == n {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        } else if i == j {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });

    // alpha is induced by the commuting square eta * omega = alpha * eta;
    // the first n-1 columns of eta form D^T, which pins it down uniquely
    let eta_omega = eta.mul_mat(&omega);
    let alpha = if n <= 1 {
        IntMatrix::zeros(0, 0)
    } else {
        let lhs = eta_omega.drop_col(n - 1);
        let dt_inv = unimodular_inverse(&d_factor.transpose(), &det_d);
        lhs.mul_mat(&dt_inv)
    };
    if eta_omega != alpha.mul_mat(&eta) {
        return Err(KneadError::InternalConvention(
            "the alpha square does not close over the integers".into(),
        ));
    }

    let regions = region_symbols(data, &order)?;
    let beta = IntMatrix::from_fn(n.saturating_sub(1), n.saturating_sub(1), |i, j| {
        if i == j {
            BigInt::from(regions[i].eps())
        } else {
            BigInt::zero()
        }
    });

    let gamma = build_gamma(&pts, m, n)?;
    let theta = gamma.mul_mat(&omega);
    let a_matrix = beta.mul_mat(&alpha);

    Ok(DiagramMatrices {
        pi,
        eta,
        boundary,
        omega,
        alpha,
        beta,
        gamma,
        theta,
        a_matrix,
        b_factor,
        d_factor,
        dims: (n, n.saturating_sub(1)),
    })
}

/// The gamma matrix: diagonal entries carry the first-symbol sign of each
/// point (zero at critical points). The column of each critical point
/// `c_k` is filled so that `eta * gamma = beta * eta`: every point below
/// `c_k` gets minus the sign of the lap left of `c_k`, every point above
/// gets minus the sign of the lap right of it.
fn build_gamma(pts: &[crate::symbols::SymbolicSequence], m: usize, n: usize) -> Result<IntMatrix> {
    let mut gamma = IntMatrix::zeros(n, n);
    for j in 0..n {
        let first = pts[j].block()[0];
        match first {
            Symbol::C(k) => {
                let left = Symbol::neighbor_of_critical(k, Side::Left, m).eps();
                let right = Symbol::neighbor_of_critical(k, Side::Right, m).eps();
                for i in 0..n {
                    if i == j {
                        continue;
                    }
                    let value = match compare(&pts[i], &pts[j])? {
                        Ordering::Less => -left,
                        Ordering::Greater => -right,
                        Ordering::Equal => {
                            return Err(KneadError::DegeneratePartition(format!(
                                "point {i} coincides with critical point column {j}"
                            )))
                        }
                    };
                    gamma.set(i, j, BigInt::from(value));
                }
            }
            s => gamma.set(j, j, BigInt::from(s.eps())),
        }
    }
    Ok(gamma)
}

/// Exact inverse of an integer matrix with determinant +-1, via the
/// adjugate.
fn unimodular_inverse(m: &IntMatrix, det: &BigInt) -> IntMatrix {
    let n = m.rows();
    if n == 0 {
        return IntMatrix::zeros(0, 0);
    }
    if n == 1 {
        return IntMatrix::from_rows(vec![vec![det.clone()]]);
    }
    IntMatrix::from_fn(n, n, |i, j| {
        // adj(i, j) = (-1)^{i+j} * minor(j, i)
        let minor = m.drop_row(j).drop_col(i).det();
        let signed = if (i + j) % 2 == 0 { minor } else { -minor };
        if det.is_one() {
            signed
        } else {
            -signed
        }
    })
}

/// Exact verification of both commuting squares and `P_Theta = P_A`.
pub fn verify_diagram(dm: &DiagramMatrices) -> DiagramCertificate {
    let residual_0 = sub(
        &dm.omega.transpose().mul_mat(&dm.boundary),
        &dm.boundary.mul_mat(&dm.alpha.transpose()),
    );
    let residual_1 = sub(
        &dm.theta.transpose().mul_mat(&dm.boundary),
        &dm.boundary.mul_mat(&dm.a_matrix.transpose()),
    );
    let p_theta = dm.theta.char_poly();
    let p_a = dm.a_matrix.char_poly();
    DiagramCertificate {
        commutes_0: residual_0.is_zero(),
        commutes_1: residual_1.is_zero(),
        charpoly_equal: p_theta == p_a,
        residual_0,
        residual_1,
        p_theta,
        p_a,
    }
}

fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) - b.get(i, j))
}

impl DiagramMatrices {
    /// Testing hook: flips the sign of one nonzero gamma entry and rebuilds
    /// Theta, so the certificate must fail. Demonstrates that the exact
    /// identities detect convention corruption.
    pub fn corrupt_gamma_sign(&self) -> DiagramMatrices {
        let mut out = self.clone();
        let n = out.gamma.rows();
        'search: for i in 0..n {
            for j in 0..n {
                if !out.gamma.get(i, j).is_zero() {
                    let flipped = -out.gamma.get(i, j).clone();
                    out.gamma.set(i, j, flipped);
                    break 'search;
                }
            }
        }
        out.theta = out.gamma.mul_mat(&out.omega);
        out
    }

    /// Checks the factorization `boundary = B * i * D` with `i` the
    /// coordinate inclusion.
    pub fn factorization_holds(&self) -> bool {
        let (n, n1) = self.dims;
        if n == 0 {
            return true;
        }
        let inclusion = IntMatrix::from_fn(n, n1, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        let product = self.b_factor.mul_mat(&inclusion).mul_mat(&self.d_factor);
        product == self.boundary
    }
}

/// Everything the tensor-lifted theorem asserts, with exact residues.
#[derive(Debug, Clone)]
pub struct TensorLiftReport {
    pub commutes_alpha: bool,
    pub commutes_theta: bool,
    pub p_a: IntPolynomial,
    pub p_theta: IntPolynomial,
    pub d_times_cyclotomic: IntPolynomial,
    pub residual_alpha: IntMatrix,
    pub residual_theta: IntMatrix,
}

impl TensorLiftReport {
    pub fn holds(&self) -> bool {
        self.commutes_alpha
            && self.commutes_theta
            && self.p_a == self.p_theta
            && self.p_a == self.d_times_cyclotomic
    }
}

/// Verifies the lifted diagrams `(omega_y (x) omega_x)^T (partial_y (x)
/// partial_x) = (partial_y (x) partial_x)(alpha_y (x) alpha_x)^T`, the
/// Theta/A analogue, and the three-way polynomial identity with the lifted
/// kneading determinant. The basis data must be unimodal.
pub fn verify_tensor_lift(
    data_x: &KneadingData,
    data_y: &KneadingData,
) -> Result<TensorLiftReport> {
    if data_x.modality() != 1 {
        return Err(KneadError::Unsupported(
            "the tensor lift requires a unimodal basis".into(),
        ));
    }
    let dx = build_diagram(data_x)?;
    let dy = build_diagram(data_y)?;

    let boundary = dy.boundary.kron(&dx.boundary);
    let omega = dy.omega.kron(&dx.omega);
    let alpha = dy.alpha.kron(&dx.alpha);
    let theta = dy.theta.kron(&dx.theta);
    let a_matrix = dy.a_matrix.kron(&dx.a_matrix);

    let residual_alpha = sub(
        &omega.transpose().mul_mat(&boundary),
        &boundary.mul_mat(&alpha.transpose()),
    );
    let residual_theta = sub(
        &theta.transpose().mul_mat(&boundary),
        &boundary.mul_mat(&a_matrix.transpose()),
    );

    let n_f = kneading_matrix(data_x)?;
    let n_g = kneading_matrix(data_y)?;
    let lift = triangular_kneading(Some(&n_g), &n_f)?;

    Ok(TensorLiftReport {
        commutes_alpha: residual_alpha.is_zero(),
        commutes_theta: residual_theta.is_zero(),
        p_a: a_matrix.char_poly(),
        p_theta: theta.char_poly(),
        d_times_cyclotomic: lift.d_polynomial,
        residual_alpha,
        residual_theta,
    })
}

//! Numeric extraction: smallest positive polynomial roots and spectral
//! radii. Root location runs on exact arithmetic (Sturm sequences with
//! integer sign evaluation at dyadic points), so multiple or clustered
//! roots cannot fool it; only the final interval midpoint is a float.

use super::matrix::IntMatrix;
use super::poly::{bigint_to_f64, IntPolynomial};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Least `t > 0` with `p(t) = 0`, bracketed to `precision`, or `None` when
/// no positive root exists below the Cauchy bound. The root count in an
/// interval comes from a Sturm sequence of the square-free part, with all
/// signs computed exactly over the integers, so even-multiplicity and
/// tightly clustered roots are located correctly.
pub fn smallest_positive_root(p: &IntPolynomial, precision: f64) -> Option<f64> {
    if p.is_zero() {
        return None;
    }
    // roots at 0 are not positive; strip them
    let mut q = p.clone();
    while q.constant_term().is_zero() {
        q = IntPolynomial::new(q.coeffs()[1..].to_vec());
    }
    if q.degree()? == 0 {
        return None;
    }
    let square_free = {
        let g = q.gcd(&q.derivative());
        match g.degree() {
            Some(d) if d > 0 => q.div_exact(&g),
            _ => q.clone(),
        }
    };
    let lead = bigint_to_f64(&square_free.leading()).abs();
    let mut bound = (1.0
        + square_free
            .coeffs()
            .iter()
            .map(|c| bigint_to_f64(c).abs() / lead)
            .fold(0.0, f64::max))
        * (1.0 + 1e-9);
    if !bound.is_finite() {
        // coefficient ratios beyond f64 range; roots past this cap are
        // outside anything the pipelines produce
        bound = 1e300;
    }

    let chain = sturm_chain(&square_free);
    let precision = precision.max(1e-15);
    let v_lo = variations(&chain, 0.0);
    let v_hi = variations(&chain, bound);
    if v_lo == v_hi {
        return None;
    }
    let (mut lo, mut hi) = (0.0f64, bound);
    let mut v_at_lo = v_lo;
    for _ in 0..200 {
        if hi - lo <= precision {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if sign_at(&square_free, mid) == 0 {
            return Some(mid);
        }
        let v_mid = variations(&chain, mid);
        if v_at_lo > v_mid {
            // at least one root in (lo, mid]
            hi = mid;
        } else {
            lo = mid;
            v_at_lo = v_mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Sturm sequence of a square-free polynomial: `s_0 = p`, `s_1 = p'`,
/// `s_{k+1} = -(s_{k-1} mod s_k)`, realized with sign-corrected
/// pseudo-remainders and content stripping.
fn sturm_chain(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        let (a, b) = (&chain[k - 2], &chain[k - 1]);
        if b.is_zero() {
            chain.pop();
            break;
        }
        if b.degree() == Some(0) {
            break;
        }
        let (rem, scale_negative) = signed_pseudo_rem(a, b);
        if rem.is_zero() {
            break;
        }
        let next = if scale_negative { rem } else { -&rem };
        chain.push(next.primitive_part());
    }
    chain
}

/// Pseudo-remainder of `a` by `b` together with the sign of the scalar it
/// was multiplied by: the result equals `scalar * (a mod b)` with
/// `scalar < 0` iff the flag is set.
fn signed_pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> (IntPolynomial, bool) {
    let da = a.degree().unwrap();
    let db = b.degree().unwrap();
    let lead = b.leading();
    let lead_negative = lead.is_negative();
    let mut negative = false;
    let mut rem = a.coeffs().to_vec();
    for k in (db..=da).rev() {
        let top = rem[k].clone();
        if top.is_zero() {
            continue;
        }
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        if lead_negative {
            negative = !negative;
        }
        for (j, bc) in b.coeffs().iter().enumerate() {
            rem[k - db + j] -= &top * bc;
        }
    }
    rem.truncate(db);
    (IntPolynomial::new(rem), negative)
}

/// Exact sign of `p(x)` for a nonnegative finite dyadic `x` (every f64 is
/// one): decompose `x = m * 2^e` and evaluate the integer
/// `p(m/2^-e) * 2^{-e*deg}` by Horner.
pub(crate) fn sign_at(p: &IntPolynomial, x: f64) -> i8 {
    assert!(x.is_finite() && x >= 0.0);
    if p.is_zero() {
        return 0;
    }
    let (mantissa, exp) = dyadic(x);
    let value = if exp >= 0 {
        let xi = mantissa << exp;
        let mut acc = BigInt::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc * &xi + c;
        }
        acc
    } else {
        // p(m / 2^s) * 2^{s*d} = sum_k c_k m^k 2^{s(d-k)}
        let s = (-exp) as usize;
        let d = p.degree().unwrap();
        let mut acc = BigInt::zero();
        let mut m_pow = BigInt::from(1);
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc += (c * &m_pow) << (s * (d - k));
            }
            if k < d {
                m_pow *= &mantissa;
            }
        }
        acc
    };
    match value.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Exact decomposition of a finite nonnegative f64 into `m * 2^e`.
fn dyadic(x: f64) -> (BigInt, i32) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    if raw_exp == 0 {
        (BigInt::from(frac), -1074)
    } else {
        (BigInt::from(frac | (1u64 << 52)), raw_exp - 1075)
    }
}

/// Sign variations of the Sturm chain at `x` (zero entries skipped).
fn variations(chain: &[IntPolynomial], x: f64) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in chain {
        let sign = sign_at(s, x);
        if sign == 0 {
            continue;
        }
        if last != 0 && sign != last {
            count += 1;
        }
        last = sign;
    }
    count
}

/// Largest-magnitude eigenvalue of a nonnegative integer matrix.
///
/// Power iteration with trailing-window means of the log growth rates,
/// refined by Richardson extrapolation over doubling checkpoints: that
/// kills the `O(1/k)` bias of defective (Jordan-block) dominant structure.
/// When the extrapolants fail to certify within the budget - periodic or
/// heavily defective spectra - the exact route takes over: the radius is
/// `1 / (smallest positive root of det(I - tA))`, with the root isolated
/// by the Sturm machinery above.
pub fn spectral_radius(a: &IntMatrix, precision: f64) -> f64 {
    assert!(a.is_square(), "spectral radius of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return 0.0;
    }
    let af: Vec<Vec<f64>> = (0..n)
        .map(|i| a.row(i).iter().map(bigint_to_f64).collect())
        .collect();
    let precision = precision.max(1e-14);
    let mut v = vec![1.0 / n as f64; n];
    let mut log_sum = 0.0f64;
    let mut checkpoints: Vec<f64> = Vec::new(); // window means m_j over (2^j/2, 2^j]
    let mut prev_log_sum = 0.0f64;
    let mut extrapolants: Vec<f64> = Vec::new();
    let mut next_checkpoint = 64usize;
    for k in 1..=16384usize {
        let mut w = vec![0.0; n];
        for (i, row) in af.iter().enumerate() {
            let mut acc = 0.0;
            for (j, &x) in row.iter().enumerate() {
                acc += x * v[j];
            }
            w[i] = acc;
        }
        let norm: f64 = w.iter().map(|x| x.abs()).sum();
        if norm == 0.0 {
            return 0.0; // nilpotent
        }
        log_sum += norm.ln();
        for x in &mut w {
            *x /= norm;
        }
        v = w;
        if k == next_checkpoint {
            let window = (k / 2) as f64;
            checkpoints.push((log_sum - prev_log_sum) / window);
            prev_log_sum = log_sum;
            next_checkpoint *= 2;
            let c = checkpoints.len();
            if c >= 2 {
                extrapolants.push(2.0 * checkpoints[c - 1] - checkpoints[c - 2]);
            }
            let e = extrapolants.len();
            if e >= 3 {
                let (e0, e1, e2) = (
                    extrapolants[e - 3],
                    extrapolants[e - 2],
                    extrapolants[e - 1],
                );
                if (e2 - e1).abs() <= 0.25 * precision && (e1 - e0).abs() <= 0.25 * precision {
                    return e2.exp();
                }
            }
        }
    }
    // exact fallback
    match smallest_positive_root(&a.char_poly(), precision.min(1e-13)) {
        Some(t) => 1.0 / t,
        None => 0.0,
    }
}

//! Rational functions in `t` with integer-polynomial numerator and denominator.

use super::poly::IntPolynomial;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A ratio of integer polynomials, kept in canonical form: the polynomial
/// gcd is divided out and the denominator's lowest nonzero coefficient is
/// positive. Equality is therefore structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = Self { num, den };
        rf.canonicalize();
        rf
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        Self {
            num: p,
            den: IntPolynomial::one(),
        }
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Self {
        Self::new(IntPolynomial::from_i64(num), IntPolynomial::from_i64(den))
    }

    pub fn zero() -> Self {
        Self::from_poly(IntPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(IntPolynomial::one())
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = IntPolynomial::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if let Some(d) = g.degree() {
            if d > 0 || !g.coeff(0).is_one() {
                self.num = self.num.div_exact(&g);
                self.den = self.den.div_exact(&g);
            }
        }
        let c = self.num.content().gcd(&self.den.content());
        if !c.is_one() {
            self.num = IntPolynomial::new(self.num.coeffs().iter().map(|a| a / &c).collect());
            self.den = IntPolynomial::new(self.den.coeffs().iter().map(|a| a / &c).collect());
        }
        if self.den.lowest_nonzero().is_negative() {
            self.num = -&self.num;
            self.den = -&self.den;
        }
    }

    /// Returns the underlying polynomial when the denominator is a unit.
    pub fn as_polynomial(&self) -> Option<IntPolynomial> {
        if self.den == IntPolynomial::one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Power-series coefficients up to (excluding) `order`. Requires a
    /// nonzero constant term in the denominator.
    pub fn series(&self, order: usize) -> Vec<num_bigint::BigInt> {
        let d0 = self.den.coeff(0);
        assert!(!d0.is_zero(), "series expansion at a pole of {self}");
        let mut out = Vec::with_capacity(order);
        for k in 0..order {
            // d0 * a_k = num_k - sum_{j=1..=k} den_j * a_{k-j}
            let mut acc = self.num.coeff(k);
            for j in 1..=k {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc -= &dj * &out[k - j];
                }
            }
            let (q, r) = num_integer::Integer::div_rem(&acc, &d0);
            assert!(r.is_zero(), "series of {self} is not integral at order {k}");
            out.push(q);
        }
        out
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    fn add_impl(&self, rhs: &Self, sub: bool) -> Self {
        let rn = if sub { -&rhs.num } else { rhs.num.clone() };
        Self::new(
            &(&self.num * &rhs.den) + &(&rn * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: Self) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        &self + &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        &self * &rhs
    }
}

impl num_traits::Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl num_traits::One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPolynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

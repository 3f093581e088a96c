//! Dense matrices over an arbitrary commutative ring, with the Kronecker
//! product and exact characteristic polynomials.

use super::poly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A rectangular matrix with row-major storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RationalMatrix = Matrix<super::rational::RationalFunction>;

impl<T> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Copy with one row removed.
    pub fn drop_row(&self, i: usize) -> Self {
        let rows = (0..self.rows)
            .filter(|&r| r != i)
            .map(|r| self.row(r).to_vec())
            .collect();
        Self::from_rows(rows)
    }

    /// Copy with one column removed.
    pub fn drop_col(&self, j: usize) -> Self {
        Self::from_fn(self.rows, self.cols - 1, |r, c| {
            self.get(r, if c < j { c } else { c + 1 }).clone()
        })
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |i, j| f(self.get(i, j)))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + PartialEq,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| *v == T::zero())
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One,
{
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Mul<Output = T>,
{
    /// Kronecker (tensor) product: the block matrix `[a_ij * B]`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.get(i / other.rows, j / other.cols).clone();
            let b = other.get(i % other.rows, j % other.cols).clone();
            a * b
        })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + Mul<Output = T> + Add<Output = T>,
{
    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
            }
            acc
        })
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| i64::try_from(v).ok()).collect())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        bareiss_det(
            self.clone(),
            |x| x.is_zero(),
            |a, b| a * b,
            num_integer::Integer::div_rem,
        )
    }

    /// The characteristic polynomial `det(I - tA)`, computed exactly by the
    /// Faddeev-LeVerrier recursion: `M_k = A M_{k-1} + c_{k-1} I`,
    /// `c_k = -tr(A M_k) / k`, with every division exact over the integers.
    /// The coefficient of `t^k` in `det(I - tA)` is `c_k`.
    pub fn char_poly(&self) -> IntPolynomial {
        assert!(
            self.is_square(),
            "characteristic polynomial of a non-square matrix"
        );
        let n = self.rows;
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(BigInt::one());
        let mut m = IntMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{k-1} * I
            let mut am = self.mul_mat(&m);
            for i in 0..n {
                let v = am.get(i, i) + &coeffs[k - 1];
                am.set(i, i, v);
            }
            m = am;
            let mut trace = BigInt::zero();
            for i in 0..n {
                let mut acc = BigInt::zero();
                for j in 0..n {
                    acc += self.get(i, j) * m.get(j, i);
                }
                trace += acc;
            }
            let (c, rem) = num_integer::Integer::div_rem(&(-trace), &BigInt::from(k));
            debug_assert!(rem.is_zero(), "Faddeev-LeVerrier division left a remainder");
            coeffs.push(c);
        }
        IntPolynomial::new(coeffs)
    }

    pub fn abs(&self) -> Self {
        self.map(num_traits::Signed::abs)
    }
}

impl Matrix<IntPolynomial> {
    /// Exact determinant over `Z[t]` by fraction-free elimination.
    pub fn det(&self) -> IntPolynomial {
        assert!(self.is_square(), "determinant of a non-square matrix");
        bareiss_det(
            self.clone(),
            IntPolynomial::is_zero,
            |a, b| a * b,
            |a, b| (a.div_exact(b), IntPolynomial::zero()),
        )
    }
}

/// Bareiss fraction-free determinant over any integral domain, parameterized
/// by zero test, multiplication and exact division with remainder.
fn bareiss_det<T>(
    mut m: Matrix<T>,
    is_zero: impl Fn(&T) -> bool,
    mul: impl Fn(&T, &T) -> T,
    div_rem: impl Fn(&T, &T) -> (T, T),
) -> T
where
    T: Clone + Sub<Output = T> + Neg<Output = T> + Zero + One,
{
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if is_zero(m.get(k, k)) {
            match (k + 1..n).find(|&r| !is_zero(m.get(r, k))) {
                Some(r) => {
                    for j in 0..n {
                        let a = m.get(k, j).clone();
                        let b = m.get(r, j).clone();
                        m.set(k, j, b);
                        m.set(r, j, a);
                    }
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = mul(m.get(k, k), m.get(i, j)) - mul(m.get(i, k), m.get(k, j));
                let (q, r) = div_rem(&num, &prev);
                debug_assert!(is_zero(&r), "Bareiss division left a remainder");
                m.set(i, j, q);
            }
            m.set(i, k, T::zero());
        }
        prev = m.get(k, k).clone();
    }
    let d = m.get(n - 1, n - 1).clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_identity() {
        let i2 = IntMatrix::identity(2);
        assert_eq!(i2.kron(&i2), IntMatrix::identity(4));
    }

    #[test]
    fn kron_reproduces_block_structure() {
        let a = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]);
        let b = IntMatrix::from_i64_rows(&[&[2]]);
        let k = b.kron(&a);
        assert_eq!(k, IntMatrix::from_i64_rows(&[&[0, 2], &[2, 2]]));
    }

    #[test]
    fn char_poly_golden_values() {
        let ax = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(ax.char_poly(), IntPolynomial::from_i64(&[1, -1, -1]));
        let ay =
            IntMatrix::from_i64_rows(&[&[0, 0, 1, 1], &[0, 0, 0, 1], &[0, 1, 1, 0], &[1, 0, 0, 0]]);
        assert_eq!(ay.char_poly(), IntPolynomial::from_i64(&[1, -1, -1, 1, -1]));
        let z = IntMatrix::zeros(3, 3);
        assert_eq!(z.char_poly(), IntPolynomial::one());
    }

    #[test]
    fn det_with_pivoting() {
        let m = IntMatrix::from_i64_rows(&[&[0, 2], &[3, 1]]);
        assert_eq!(m.det(), BigInt::from(-6));
        let s = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.det(), BigInt::from(0));
    }
}

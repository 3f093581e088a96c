//! Kneading increments, matrices and determinants, the d-polynomial, and
//! the tensor lift to triangular maps.

use crate::algebra::{
    cyclotomic_product, poly_tensor, IntPolynomial, Matrix, RationalFunction, RationalMatrix,
};
use crate::error::{KneadError, Result};
use crate::symbols::{
    one_sided_coordinate, validate_kneading_data, InvariantCoordinate, KneadingData, Side,
    Strictness, Symbol,
};

/// The m x (m+1) kneading matrix: row i decomposes the increment
/// `nu_i = theta_{c_i^+} - theta_{c_i^-}` over the basis
/// `(L, M_1, ..., M_{m-1}, R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneadingMatrix {
    modality: usize,
    entries: RationalMatrix,
    periods: Vec<usize>,
}

impl KneadingMatrix {
    pub fn modality(&self) -> usize {
        self.modality
    }

    pub fn entries(&self) -> &RationalMatrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        self.entries.get(i, j)
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }
}

/// The kneading determinant together with the m+1 column-eliminated
/// expressions that must all agree with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneadingDeterminant {
    pub value: RationalFunction,
    pub column_witnesses: Vec<RationalFunction>,
}

/// Kneading increments of admissible data, one per critical point.
pub fn kneading_increments(data: &KneadingData) -> Result<Vec<InvariantCoordinate>> {
    let report = validate_kneading_data(data, Strictness::Strict)?;
    if let Some(v) = report.violation {
        return Err(KneadError::Inadmissible {
            rule: v.rule,
            block: v.block,
            shift: v.shift,
        });
    }
    let m = data.modality();
    Ok((1..=m)
        .map(|k| {
            let plus = one_sided_coordinate(data, k, Side::Right);
            let minus = one_sided_coordinate(data, k, Side::Left);
            plus.sub(&minus)
        })
        .collect())
}

/// Assembles the increments into the kneading matrix.
pub fn kneading_matrix(data: &KneadingData) -> Result<KneadingMatrix> {
    let increments = kneading_increments(data)?;
    let m = data.modality();
    let entries = Matrix::from_fn(m, m + 1, |i, j| increments[i].coeff(j).clone());
    Ok(KneadingMatrix {
        modality: m,
        entries,
        periods: data.periods(),
    })
}

/// The kneading determinant: eliminating column i and weighting by
/// `(-1)^i / (1 - eps_i t)`, where `eps_i` is the orientation of the lap
/// named by the basis symbol of column i, gives the same rational function
/// for every column. For odd modality the lap signs alternate and this is
/// the alternating chain `D_1/(1-t) = -D_2/(1+t) = ...` exactly as the
/// classical theory states it.
pub fn kneading_determinant(n: &KneadingMatrix) -> Result<KneadingDeterminant> {
    let m = n.modality;
    let mut witnesses = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let minor = n.entries.drop_col(i);
        let det = rational_det(&minor);
        let lap = Symbol::from_basis_index(i, m);
        let eps = i64::from(lap.eps());
        let denom = IntPolynomial::from_i64(&[1, -eps]);
        let signed = if i % 2 == 0 { det } else { -&det };
        witnesses.push(&signed / &RationalFunction::from_poly(denom));
    }
    for (i, w) in witnesses.iter().enumerate().skip(1) {
        if w != &witnesses[0] {
            return Err(KneadError::WitnessMismatch {
                col: i + 1,
                got: w.to_string(),
                want: witnesses[0].to_string(),
            });
        }
    }
    Ok(KneadingDeterminant {
        value: witnesses[0].clone(),
        column_witnesses: witnesses,
    })
}

/// Exact determinant of a square rational-function matrix, by clearing each
/// row to a common polynomial denominator and running fraction-free
/// elimination on the numerators.
fn rational_det(m: &RationalMatrix) -> RationalFunction {
    let n = m.rows();
    if n == 0 {
        return RationalFunction::one();
    }
    let mut denom = IntPolynomial::one();
    let cleared = Matrix::from_rows(
        (0..n)
            .map(|i| {
                let row_lcm = (0..n).fold(IntPolynomial::one(), |acc, j| {
                    poly_lcm(&acc, m.get(i, j).denominator())
                });
                denom = &denom * &row_lcm;
                (0..n)
                    .map(|j| {
                        let scale = row_lcm.div_exact(m.get(i, j).denominator());
                        m.get(i, j).numerator() * &scale
                    })
                    .collect()
            })
            .collect(),
    );
    RationalFunction::new(cleared.det(), denom)
}

fn poly_lcm(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    (a * b).div_exact(&a.gcd(b))
}

/// `d_F(t) = D_F(t) * (1 - t^{p_1}) ... (1 - t^{p_m})`: an exact integer
/// polynomial whenever the determinant came from admissible data.
pub fn d_poly(d: &KneadingDeterminant, periods: &[usize]) -> Result<IntPolynomial> {
    let cyc = RationalFunction::from_poly(cyclotomic_product(periods));
    let product = &d.value * &cyc;
    product
        .as_polynomial()
        .ok_or_else(|| KneadError::NotPolynomial(product.to_string()))
}

/// The kneading data of a triangular map: the tensor product of the fiber
/// and basis kneading matrices, entrywise as formal pairs, plus the lifted
/// determinant. A monotone fiber carries no kneading data of its own and
/// contributes the trivial determinant 1.
#[derive(Debug, Clone)]
pub struct TriangularKneading {
    /// Formal tensor entries (fiber factor, basis factor), shape
    /// m x 2(m+1).
    pub matrix: Vec<Vec<(RationalFunction, RationalFunction)>>,
    /// The lifted determinant `D_T`.
    pub determinant: RationalFunction,
    /// The cleared-denominator witness `D_T * P_cyc`, an exact polynomial.
    pub d_polynomial: IntPolynomial,
    /// All periods entering `P_cyc` (fiber blocks, then the basis block).
    pub periods: Vec<usize>,
}

/// Tensor lift: `N_T = N_g (x) N_f` and `D_T = D_g (x) D_f`, computed at
/// the polynomial level as `poly_tensor(d_g, d_f) / P_cyc`. The basis must
/// be unimodal; `None` for the fiber means every fiber map is monotone.
pub fn triangular_kneading(
    n_g: Option<&KneadingMatrix>,
    n_f: &KneadingMatrix,
) -> Result<TriangularKneading> {
    if n_f.modality != 1 {
        return Err(KneadError::Unsupported(format!(
            "the basis map must be unimodal, got modality {}",
            n_f.modality
        )));
    }
    let d_f = kneading_determinant(n_f)?;
    let df_poly = d_poly(&d_f, &n_f.periods)?;
    match n_g {
        None => {
            let matrix = vec![(0..2)
                .map(|j| (RationalFunction::one(), n_f.entry(0, j).clone()))
                .collect()];
            Ok(TriangularKneading {
                matrix,
                determinant: d_f.value,
                d_polynomial: df_poly,
                periods: n_f.periods.clone(),
            })
        }
        Some(n_g) => {
            let m = n_g.modality;
            let d_g = kneading_determinant(n_g)?;
            let dg_poly = d_poly(&d_g, &n_g.periods)?;
            let lifted = poly_tensor(&dg_poly, &df_poly)?;
            let mut periods = n_g.periods.clone();
            periods.extend_from_slice(&n_f.periods);
            let p_cyc = cyclotomic_product(&periods);
            let determinant = RationalFunction::new(lifted.clone(), p_cyc);
            let matrix = (0..m)
                .map(|i| {
                    (0..2 * (m + 1))
                        .map(|j| (n_g.entry(i, j / 2).clone(), n_f.entry(0, j % 2).clone()))
                        .collect()
                })
                .collect();
            Ok(TriangularKneading {
                matrix,
                determinant,
                d_polynomial: lifted,
                periods,
            })
        }
    }
}

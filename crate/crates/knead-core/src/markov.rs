//! Markov partitions from critical orbits, 0/1 transition matrices, and the
//! Kronecker product construction for triangular maps.

use crate::algebra::IntMatrix;
use crate::error::{KneadError, Result};
use crate::interval_map::{IntervalMap, Orbit};
use crate::symbols::{KneadingData, Side, Symbol};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Default geometric snap for endpoint classification in the numeric
/// transition matrix. Reference parameters are decimal roundings of
/// superstable values, so orbit-derived breakpoints close exactly while the
/// critical value may overshoot the partition support by a few 1e-4.
pub const DEFAULT_SNAP: f64 = 1e-6;
/// Points closer than this collapse when building a partition.
const DEDUPE_TOL: f64 = 1e-7;

/// Intervals between consecutive orbit points on one coordinate line.
#[derive(Debug, Clone)]
pub struct MarkovPartition1D {
    breakpoints: Vec<f64>,
    warnings: Vec<String>,
}

impl MarkovPartition1D {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Number of intervals (one less than the breakpoints, zero when the
    /// partition is empty or a single point).
    pub fn len(&self) -> usize {
        self.breakpoints.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn interval(&self, i: usize) -> (f64, f64) {
        (self.breakpoints[i], self.breakpoints[i + 1])
    }

    pub fn label(&self, i: usize) -> String {
        format!("X{}", i + 1)
    }

    fn support(&self) -> (f64, f64) {
        (
            self.breakpoints[0],
            self.breakpoints[self.breakpoints.len() - 1],
        )
    }
}

/// Sorted union of the orbit points, duplicates collapsed with a warning.
pub fn partition_from_orbit(_map: &IntervalMap, orbits: &[Orbit]) -> MarkovPartition1D {
    let mut points: Vec<f64> = orbits
        .iter()
        .flat_map(|o| o.points.iter().copied())
        .collect();
    points.sort_by(f64::total_cmp);
    let mut breakpoints: Vec<f64> = Vec::with_capacity(points.len());
    let mut warnings = Vec::new();
    for p in points {
        match breakpoints.last() {
            Some(&last) if (p - last).abs() <= DEDUPE_TOL => {
                warnings.push(format!("collapsed duplicate breakpoint {p} onto {last}"));
            }
            _ => breakpoints.push(p),
        }
    }
    MarkovPartition1D {
        breakpoints,
        warnings,
    }
}

/// The cartesian grid of two 1D partitions; rectangles are numbered
/// row-major with the fiber (y) index major, matching `A = A_y (x) A_x`.
#[derive(Debug, Clone)]
pub struct MarkovPartition2D {
    pub x: MarkovPartition1D,
    pub y: MarkovPartition1D,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    pub label: String,
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl MarkovPartition2D {
    pub fn new(x: MarkovPartition1D, y: MarkovPartition1D) -> Self {
        Self { x, y }
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rectangles(&self) -> Vec<Rectangle> {
        let mut out = Vec::with_capacity(self.len());
        for j in 0..self.y.len() {
            for i in 0..self.x.len() {
                out.push(Rectangle {
                    label: format!("R{}", j * self.x.len() + i + 1),
                    x: self.x.interval(i),
                    y: self.y.interval(j),
                });
            }
        }
        out
    }
}

/// A square 0/1 transition matrix over a labeled partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    matrix: IntMatrix,
    labels: Vec<String>,
}

impl TransitionMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

/// Numeric transition matrix: each interval's image is spanned by its
/// endpoint and interior-critical-value images; an image endpoint must land
/// on a breakpoint (within `snap`) or overshoot the partition support, and
/// `a_ij = 1` iff the open image meets the interior of piece j.
pub fn transition_matrix(
    map: &IntervalMap,
    part: &MarkovPartition1D,
    snap: f64,
) -> Result<TransitionMatrix> {
    if part.is_empty() {
        return Err(KneadError::DegeneratePartition(
            "cannot build a transition matrix over an empty partition".into(),
        ));
    }
    let n = part.len();
    let (support_lo, support_hi) = part.support();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = part.interval(i);
        let mut values = vec![map.evaluate(a)?, map.evaluate(b)?];
        for &c in map.critical_points() {
            if c > a && c < b {
                values.push(map.evaluate(c)?);
            }
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for e in [lo, hi] {
            let overshoots = e < support_lo - snap || e > support_hi + snap;
            let on_breakpoint = part.breakpoints().iter().any(|&z| (z - e).abs() <= snap);
            if !overshoots && !on_breakpoint {
                let piece = (0..n)
                    .find(|&j| {
                        let (zj, zj1) = part.interval(j);
                        e > zj + snap && e < zj1 - snap
                    })
                    .unwrap_or(i);
                return Err(KneadError::NotMarkov(e, piece + 1));
            }
        }
        let row: Vec<BigInt> = (0..n)
            .map(|j| {
                let (zj, zj1) = part.interval(j);
                if lo.max(zj) + snap < hi.min(zj1) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        rows.push(row);
    }
    Ok(TransitionMatrix {
        matrix: IntMatrix::from_rows(rows),
        labels: (0..n).map(|i| part.label(i)).collect(),
    })
}

/// Lap symbol of each interval of the symbolically-sorted partition: read
/// off the flanking point sequences, using the critical neighbors where a
/// breakpoint is a critical point.
pub fn region_symbols(data: &KneadingData, order: &[usize]) -> Result<Vec<Symbol>> {
    let pts = data.orbit_points();
    let m = data.modality();
    let n = pts.len();
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        let sl = pts[order[k]].block()[0];
        let sr = pts[order[k + 1]].block()[0];
        let sym = match (sl, sr) {
            (Symbol::C(i), _) => Symbol::neighbor_of_critical(i, Side::Right, m),
            (_, Symbol::C(j)) => Symbol::neighbor_of_critical(j, Side::Left, m),
            _ if sl == sr => sl,
            _ => {
                return Err(KneadError::InternalConvention(format!(
                    "consecutive points at {k} lie in different laps {sl} and {sr}"
                )))
            }
        };
        out.push(sym);
    }
    Ok(out)
}

/// Fully combinatorial transition matrix from the kneading data: the orbit
/// points sort in theta-order, the shift moves interval endpoints, and the
/// image of an interval spans every interval between its endpoint images.
/// Serves as the exact oracle for the numeric route. Rejects data whose
/// shift action contradicts the lap orientations, since such data is not
/// realizable by a piecewise-monotone map.
pub fn transition_matrix_symbolic(data: &KneadingData) -> Result<TransitionMatrix> {
    let (order, pos) = data.sorted_points()?;
    let n = order.len();
    if n <= 1 {
        return Ok(TransitionMatrix {
            matrix: IntMatrix::zeros(0, 0),
            labels: Vec::new(),
        });
    }
    let regions = region_symbols(data, &order)?;
    let mut rows = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let a = pos[data.successor(order[k])];
        let b = pos[data.successor(order[k + 1])];
        let consistent = match regions[k].eps() {
            1 => a < b,
            -1 => a > b,
            _ => false,
        };
        if !consistent {
            return Err(KneadError::OrientationInconsistent(k + 1));
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let row: Vec<BigInt> = (0..n - 1)
            .map(|j| {
                if j >= lo && j < hi {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        rows.push(row);
    }
    Ok(TransitionMatrix {
        matrix: IntMatrix::from_rows(rows),
        labels: (0..n - 1).map(|i| format!("X{}", i + 1)).collect(),
    })
}

/// The 2D transition matrix `A = A_y (x) A_x`, in the fiber-major rectangle
/// numbering of [`MarkovPartition2D`].
pub fn product_transition(
    a_y: &TransitionMatrix,
    a_x: &TransitionMatrix,
) -> Result<TransitionMatrix> {
    if !a_y.matrix.is_square() || !a_x.matrix.is_square() {
        return Err(KneadError::DimensionMismatch(
            "transition matrices must be square".into(),
        ));
    }
    let matrix = a_y.matrix.kron(&a_x.matrix);
    let labels = (0..matrix.rows()).map(|k| format!("R{}", k + 1)).collect();
    Ok(TransitionMatrix { matrix, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_map::DEFAULT_ORBIT_TOL;

    fn detect(map: &IntervalMap, x0: f64) -> Orbit {
        map.detect_periodic_orbit(x0, 10, DEFAULT_ORBIT_TOL)
            .unwrap()
            .unwrap()
    }

    #[test]
    fn quadratic_partition_and_matrix() {
        let f = IntervalMap::quadratic(1.76).unwrap();
        let orbit = detect(&f, 0.0);
        let part = partition_from_orbit(&f, &[orbit]);
        assert_eq!(part.len(), 2);
        let a = transition_matrix(&f, &part, DEFAULT_SNAP).unwrap();
        assert_eq!(
            a.matrix().to_i64_rows().unwrap(),
            vec![vec![0, 1], vec![1, 1]]
        );
    }

    #[test]
    fn fiber_partition_and_matrix() {
        let t = crate::interval_map::TriangularMap::quadratic(1.76, 0.823).unwrap();
        let basis = detect(t.basis(), 0.0).rotated(2);
        let g_p = t.compose_fiber(&basis).unwrap();
        let q = detect(&g_p, g_p.critical_points()[0]);
        let part = partition_from_orbit(&g_p, &[q]);
        assert_eq!(part.len(), 4);
        let a = transition_matrix(&g_p, &part, DEFAULT_SNAP).unwrap();
        assert_eq!(
            a.matrix().to_i64_rows().unwrap(),
            vec![
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1],
                vec![0, 1, 1, 0],
                vec![1, 0, 0, 0],
            ]
        );
    }

    #[test]
    fn identity_map_partition_is_identity_matrix() {
        let f = IntervalMap::polynomial((0.0, 1.0), vec![0.0, 1.0]).unwrap();
        let part = MarkovPartition1D {
            breakpoints: vec![0.1, 0.4, 0.9],
            warnings: Vec::new(),
        };
        let a = transition_matrix(&f, &part, DEFAULT_SNAP).unwrap();
        assert_eq!(
            a.matrix().to_i64_rows().unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
    }

    #[test]
    fn duplicate_points_collapse_with_a_warning() {
        let f = IntervalMap::quadratic(1.76).unwrap();
        let a = Orbit {
            points: vec![0.1, 0.5],
            period: 2,
            residual: 0.0,
        };
        let b = Orbit {
            points: vec![0.5 + 1e-9, 0.9],
            period: 2,
            residual: 0.0,
        };
        let part = partition_from_orbit(&f, &[a, b]);
        assert_eq!(part.breakpoints().len(), 3);
        assert_eq!(part.warnings().len(), 1);
    }

    #[test]
    fn period_one_gives_empty_partition() {
        let f = IntervalMap::quadratic(1.0).unwrap();
        let orbit = Orbit {
            points: vec![0.5],
            period: 1,
            residual: 0.0,
        };
        let part = partition_from_orbit(&f, &[orbit]);
        assert!(part.is_empty());
        assert!(transition_matrix(&f, &part, DEFAULT_SNAP).is_err());
    }

    #[test]
    fn non_markov_partition_is_rejected() {
        // tent map with a non-orbit breakpoint: image endpoints fall inside
        // pieces
        let tent = IntervalMap::piecewise(
            (0.0, 1.0),
            vec![0.5],
            vec![vec![0.0, 2.0], vec![2.0, -2.0]],
            1e-9,
        )
        .unwrap();
        let part = MarkovPartition1D {
            breakpoints: vec![0.0, 0.3, 1.0],
            warnings: Vec::new(),
        };
        assert!(matches!(
            transition_matrix(&tent, &part, DEFAULT_SNAP),
            Err(KneadError::NotMarkov(..))
        ));
    }

    #[test]
    fn symbolic_matrices_match_golden_ones() {
        let rlc = KneadingData::unimodal("RLC").unwrap();
        let a = transition_matrix_symbolic(&rlc).unwrap();
        assert_eq!(
            a.matrix().to_i64_rows().unwrap(),
            vec![vec![0, 1], vec![1, 1]]
        );

        let rlrrc = KneadingData::unimodal("RLRRC").unwrap();
        let a = transition_matrix_symbolic(&rlrrc).unwrap();
        assert_eq!(
            a.matrix().to_i64_rows().unwrap(),
            vec![
                vec![0, 0, 1, 1],
                vec![0, 0, 0, 1],
                vec![0, 1, 1, 0],
                vec![1, 0, 0, 0],
            ]
        );

        let rc = KneadingData::unimodal("RC").unwrap();
        let a = transition_matrix_symbolic(&rc).unwrap();
        assert_eq!(a.matrix().to_i64_rows().unwrap(), vec![vec![1]]);
    }

    #[test]
    fn product_transition_reproduces_golden_8x8() {
        let a_x = transition_matrix_symbolic(&KneadingData::unimodal("RLC").unwrap()).unwrap();
        let a_y = transition_matrix_symbolic(&KneadingData::unimodal("RLRRC").unwrap()).unwrap();
        let a = product_transition(&a_y, &a_x).unwrap();
        let expect = vec![
            vec![0, 0, 0, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 0, 1, 1, 1, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 0, 1, 0, 0],
            vec![0, 0, 1, 1, 1, 1, 0, 0],
            vec![0, 1, 0, 0, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0, 0, 0],
        ];
        assert_eq!(a.matrix().to_i64_rows().unwrap(), expect);
        assert_eq!(a.labels()[0], "R1");
        assert_eq!(a.labels()[7], "R8");
    }

    #[test]
    fn kron_of_swaps_is_permutation() {
        let swap = TransitionMatrix {
            matrix: IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
            labels: vec!["X1".into(), "X2".into()],
        };
        let p = product_transition(&swap, &swap).unwrap();
        let expect = vec![
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
        ];
        assert_eq!(p.matrix().to_i64_rows().unwrap(), expect);
    }

    #[test]
    fn unimodal_rows_are_contiguous_with_sum_at_most_two() {
        for block in ["RLC", "RLRRC", "RLRC", "RC"] {
            let data = KneadingData::unimodal(block).unwrap();
            let a = transition_matrix_symbolic(&data).unwrap();
            let rows = a.matrix().to_i64_rows().unwrap();
            for row in rows {
                let sum: i64 = row.iter().sum();
                assert!(sum <= 2, "row sum {sum} exceeds 2 in {block}");
                let ones: Vec<usize> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v == 1)
                    .map(|(j, _)| j)
                    .collect();
                if let (Some(&first), Some(&last)) = (ones.first(), ones.last()) {
                    assert_eq!(last - first + 1, ones.len(), "gap in row of {block}");
                }
            }
        }
    }
}

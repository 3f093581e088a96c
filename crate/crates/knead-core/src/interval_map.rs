//! Piecewise-monotone interval maps, triangular maps, periodic-orbit
//! detection, fiber composition and product orbits.

use crate::error::{KneadError, Result};

/// Default numeric orbit tolerance. Closure is re-verified at
/// [`CLOSURE_TOL`] after one full cycle, since reference parameter
/// values are rounded to a few decimals.
pub const DEFAULT_ORBIT_TOL: f64 = 1e-9;
pub const CLOSURE_TOL: f64 = 1e-7;
/// Iteration budget for the transient before giving up on detection.
const MAX_TRANSIENT: usize = 100_000;
/// Grid used to locate critical points of composed maps.
const CRITICAL_GRID: usize = 2048;
const CRITICAL_REFINE: f64 = 1e-12;
/// Slack allowed on domain membership checks.
const DOMAIN_SLACK: f64 = 1e-9;

/// Orientation of the first monotone branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone)]
enum Kernel {
    /// Single polynomial, coefficients ascending.
    Polynomial(Vec<f64>),
    /// Pieces between consecutive breakpoints, each a polynomial.
    Piecewise {
        breakpoints: Vec<f64>,
        pieces: Vec<Vec<f64>>,
    },
    /// y -> g(x_{p-1}, ... g(x_0, y)) with g(x, y) = x - b y^2.
    ComposedQuadraticFiber { xs: Vec<f64>, b: f64 },
}

impl Kernel {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Kernel::Polynomial(c) => horner(c, x),
            Kernel::Piecewise {
                breakpoints,
                pieces,
            } => {
                let i = piece_index(breakpoints, x, pieces.len());
                horner(&pieces[i], x)
            }
            Kernel::ComposedQuadraticFiber { xs, b } => {
                let mut y = x;
                for &xv in xs {
                    y = xv - b * y * y;
                }
                y
            }
        }
    }

    fn derivative(&self, x: f64) -> f64 {
        match self {
            Kernel::Polynomial(c) => horner(&derive(c), x),
            Kernel::Piecewise {
                breakpoints,
                pieces,
            } => {
                let i = piece_index(breakpoints, x, pieces.len());
                horner(&derive(&pieces[i]), x)
            }
            Kernel::ComposedQuadraticFiber { xs, b } => {
                let mut y = x;
                let mut dy = 1.0;
                for &xv in xs {
                    dy *= -2.0 * b * y;
                    y = xv - b * y * y;
                }
                dy
            }
        }
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derive(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

fn piece_index(breakpoints: &[f64], x: f64, npieces: usize) -> usize {
    breakpoints
        .iter()
        .position(|&b| x < b)
        .unwrap_or(npieces - 1)
        .min(npieces - 1)
}

/// A piecewise-monotone map of a compact interval, with its turning points.
#[derive(Debug, Clone)]
pub struct IntervalMap {
    domain: (f64, f64),
    kernel: Kernel,
    critical_points: Vec<f64>,
    shape: Shape,
}

impl IntervalMap {
    /// The quadratic family `x -> 1 - a x^2` on `[-1, 1]`.
    pub fn quadratic(a: f64) -> Result<Self> {
        if !(a > 0.0 && a <= 2.0) {
            return Err(KneadError::Unsupported(format!(
                "quadratic family needs 0 < a <= 2 for an invariant interval, got {a}"
            )));
        }
        Self::from_kernel((-1.0, 1.0), Kernel::Polynomial(vec![1.0, 0.0, -a]))
    }

    /// A single-polynomial map on the given domain.
    pub fn polynomial(domain: (f64, f64), coeffs: Vec<f64>) -> Result<Self> {
        Self::from_kernel(domain, Kernel::Polynomial(coeffs))
    }

    /// A continuous piecewise-polynomial map. `breakpoints` are the interior
    /// piece boundaries (strictly increasing, strictly inside the domain),
    /// `pieces` the per-piece ascending coefficients, one more than the
    /// breakpoints. Continuity at every breakpoint is checked to `tol`.
    pub fn piecewise(
        domain: (f64, f64),
        breakpoints: Vec<f64>,
        pieces: Vec<Vec<f64>>,
        tol: f64,
    ) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(KneadError::DimensionMismatch(format!(
                "{} pieces for {} breakpoints",
                pieces.len(),
                breakpoints.len()
            )));
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(KneadError::Unsupported(format!(
                    "breakpoints must increase strictly (index {i})"
                )));
            }
        }
        if let (Some(&first), Some(&last)) = (breakpoints.first(), breakpoints.last()) {
            if first <= domain.0 || last >= domain.1 {
                return Err(KneadError::Unsupported(
                    "breakpoints must lie strictly inside the domain".into(),
                ));
            }
        }
        for (i, &bp) in breakpoints.iter().enumerate() {
            let left = horner(&pieces[i], bp);
            let right = horner(&pieces[i + 1], bp);
            if (left - right).abs() > tol {
                return Err(KneadError::Unsupported(format!(
                    "pieces {i} and {} disagree at breakpoint {bp}: {left} vs {right}",
                    i + 1
                )));
            }
        }
        Self::from_kernel(
            domain,
            Kernel::Piecewise {
                breakpoints,
                pieces,
            },
        )
    }

    fn from_kernel(domain: (f64, f64), kernel: Kernel) -> Result<Self> {
        let critical_points = find_critical_points(&kernel, domain);
        let shape = validate_monotone_alternation(&kernel, domain, &critical_points)?;
        Ok(Self {
            domain,
            kernel,
            critical_points,
            shape,
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn critical_points(&self) -> &[f64] {
        &self.critical_points
    }

    pub fn modality(&self) -> usize {
        self.critical_points.len()
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Checks the standing convention required by the kneading machinery:
    /// the first branch increases and the modality is odd, so that the
    /// first and last critical points are maxima.
    pub fn kneading_ready(&self) -> Result<()> {
        if self.shape != Shape::Increasing {
            return Err(KneadError::ShapeMismatch(
                "first branch decreases; the first critical point is not a maximum".into(),
            ));
        }
        if self.modality().is_multiple_of(2) {
            return Err(KneadError::ShapeMismatch(format!(
                "modality {} is even, so the last critical point is not a maximum",
                self.modality()
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.domain;
        if x < lo - DOMAIN_SLACK || x > hi + DOMAIN_SLACK {
            return Err(KneadError::OutsideDomain(x, lo, hi));
        }
        Ok(self.kernel.eval(x.clamp(lo, hi)))
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.kernel.derivative(x)
    }

    /// Detects an attracting periodic orbit by forward iteration: the
    /// transient runs until some iterate returns within `tol` of the value
    /// `p` steps earlier, for the smallest `p <= max_period`. The returned
    /// cycle starts at the point closest to `x0`, so orbits launched from a
    /// critical point come back anchored to it.
    pub fn detect_periodic_orbit(
        &self,
        x0: f64,
        max_period: usize,
        tol: f64,
    ) -> Result<Option<Orbit>> {
        assert!(max_period >= 1, "max_period must be at least 1");
        assert!(tol > 0.0, "tolerance must be positive");
        let mut history: Vec<f64> = Vec::with_capacity(max_period + 1);
        let mut z = x0;
        history.push(z);
        for n in 1..=MAX_TRANSIENT {
            z = self
                .evaluate(z)
                .map_err(|_| KneadError::Escape { index: n, value: z })?;
            if !z.is_finite() {
                return Err(KneadError::Escape { index: n, value: z });
            }
            history.push(z);
            if history.len() > max_period + 1 {
                history.remove(0);
            }
            let len = history.len();
            for p in 1..len {
                if (history[len - 1] - history[len - 1 - p]).abs() < tol {
                    let window = history[len - 1 - p..len - 1].to_vec();
                    return Ok(Some(self.finish_orbit(window, x0, tol)?));
                }
            }
        }
        Ok(None)
    }

    fn finish_orbit(&self, mut points: Vec<f64>, x0: f64, tol: f64) -> Result<Orbit> {
        // divide out proper divisors so period 15 is never reported as 3 or 5
        let mut p = points.len();
        'outer: for d in 1..p {
            if !p.is_multiple_of(d) {
                continue;
            }
            for i in 0..p {
                if (points[i] - points[(i + d) % p]).abs() >= 10.0 * tol {
                    continue 'outer;
                }
            }
            points.truncate(d);
            p = d;
            break;
        }
        // anchor at the point nearest the start
        let anchor = (0..p)
            .min_by(|&i, &j| (points[i] - x0).abs().total_cmp(&(points[j] - x0).abs()))
            .unwrap();
        points.rotate_left(anchor);
        // closure re-verification around one full cycle
        let mut residual: f64 = 0.0;
        let mut z = points[0];
        for i in 1..=p {
            z = self.evaluate(z)?;
            let target = points[i % p];
            residual = residual.max((z - target).abs());
        }
        if residual > CLOSURE_TOL.max(10.0 * tol) {
            return Err(KneadError::InconsistentOrbit(residual, p));
        }
        Ok(Orbit {
            points,
            period: p,
            residual,
        })
    }
}

/// A detected periodic orbit: `points[i+1] = F(points[i])`, cyclically.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub points: Vec<f64>,
    pub period: usize,
    pub residual: f64,
}

impl Orbit {
    pub fn rotated(&self, k: usize) -> Orbit {
        let mut points = self.points.clone();
        points.rotate_left(k % self.period);
        Orbit {
            points,
            period: self.period,
            residual: self.residual,
        }
    }
}

/// Fiber map of a triangular system.
#[derive(Debug, Clone, Copy)]
pub enum Fiber {
    /// `g(x, y) = x - b y^2` (the quadratic triangular family).
    Quadratic { b: f64 },
    /// `g(x, y) = y`: every fiber map is the identity, entropy lives in the
    /// basis alone.
    Projection,
}

impl Fiber {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Fiber::Quadratic { b } => x - b * y * y,
            Fiber::Projection => y,
        }
    }
}

/// A triangular (skew-product) map `T(x, y) = (f(x), g(x, y))`.
#[derive(Debug, Clone)]
pub struct TriangularMap {
    basis: IntervalMap,
    fiber: Fiber,
    domain_y: (f64, f64),
}

impl TriangularMap {
    /// The quadratic triangular family `T(x, y) = (1 - a x^2, x - b y^2)`
    /// on `[-1, 1] x [-2, 2]`.
    pub fn quadratic(a: f64, b: f64) -> Result<Self> {
        Ok(Self {
            basis: IntervalMap::quadratic(a)?,
            fiber: Fiber::Quadratic { b },
            domain_y: (-2.0, 2.0),
        })
    }

    pub fn new(basis: IntervalMap, fiber: Fiber, domain_y: (f64, f64)) -> Self {
        Self {
            basis,
            fiber,
            domain_y,
        }
    }

    pub fn basis(&self) -> &IntervalMap {
        &self.basis
    }

    pub fn fiber(&self) -> Fiber {
        self.fiber
    }

    pub fn domain_y(&self) -> (f64, f64) {
        self.domain_y
    }

    pub fn apply(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        let fx = self.basis.evaluate(x)?;
        let gy = self.fiber.eval(x, y);
        let (lo, hi) = self.domain_y;
        if gy < lo - DOMAIN_SLACK || gy > hi + DOMAIN_SLACK {
            return Err(KneadError::OutsideDomain(gy, lo, hi));
        }
        Ok((fx, gy))
    }

    /// The one-variable first-return fiber map
    /// `g_P(y) = g(x_{p-1}, g(x_{p-2}, ..., g(x_0, y)...))` along a periodic
    /// orbit `P` of the basis map, with `x_0 = P.points[0]`.
    pub fn compose_fiber(&self, orbit: &Orbit) -> Result<IntervalMap> {
        // P must be closed under the basis map
        let p = orbit.period;
        for i in 0..p {
            let img = self.basis.evaluate(orbit.points[i])?;
            let gap = (img - orbit.points[(i + 1) % p]).abs();
            if gap > CLOSURE_TOL {
                return Err(KneadError::InconsistentOrbit(gap, i));
            }
        }
        match self.fiber {
            Fiber::Quadratic { b } => IntervalMap::from_kernel(
                self.domain_y,
                Kernel::ComposedQuadraticFiber {
                    xs: orbit.points.clone(),
                    b,
                },
            ),
            Fiber::Projection => IntervalMap::polynomial(self.domain_y, vec![0.0, 1.0]),
        }
    }
}

/// The product orbit `P . Q`: `p*q` points of the plane obtained by running
/// the fiber map along `P` starting from each point of `Q`.
#[derive(Debug, Clone)]
pub struct ProductOrbit {
    pub pairs: Vec<(f64, f64)>,
    pub basis_period: usize,
    pub fiber_period: usize,
}

/// Builds the product orbit per the recursion `t_{ip+j} = y_i` if `j = 0`,
/// else `g(x_{j-1}, t_{ip+j-1})`. `Q` must be a periodic orbit of
/// `compose_fiber(T, P)`.
pub fn product_orbit(
    map: &TriangularMap,
    p_orbit: &Orbit,
    q_orbit: &Orbit,
) -> Result<ProductOrbit> {
    let g_p = map.compose_fiber(p_orbit)?;
    for (i, &y) in q_orbit.points.iter().enumerate() {
        let img = g_p.evaluate(y)?;
        let gap = (img - q_orbit.points[(i + 1) % q_orbit.period]).abs();
        if gap > CLOSURE_TOL {
            return Err(KneadError::InconsistentOrbit(gap, i));
        }
    }
    let (p, q) = (p_orbit.period, q_orbit.period);
    let mut pairs = Vec::with_capacity(p * q);
    for i in 0..q {
        let mut t = q_orbit.points[i];
        pairs.push((p_orbit.points[0], t));
        for j in 1..p {
            t = map.fiber.eval(p_orbit.points[j - 1], t);
            pairs.push((p_orbit.points[j], t));
        }
    }
    Ok(ProductOrbit {
        pairs,
        basis_period: p,
        fiber_period: q,
    })
}

fn find_critical_points(kernel: &Kernel, domain: (f64, f64)) -> Vec<f64> {
    let (lo, hi) = domain;
    let mut grid: Vec<f64> = (0..=CRITICAL_GRID)
        .map(|i| lo + (hi - lo) * i as f64 / CRITICAL_GRID as f64)
        .collect();
    // piece boundaries are potential turning points; make them grid nodes
    if let Kernel::Piecewise { breakpoints, .. } = kernel {
        grid.extend_from_slice(breakpoints);
        grid.sort_by(f64::total_cmp);
    }
    let mut criticals = Vec::new();
    let mut push = |c: f64| {
        if c > lo && c < hi && criticals.iter().all(|&x: &f64| (x - c).abs() > 1e-9) {
            criticals.push(c);
        }
    };
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (da, db) = (kernel.derivative(a), kernel.derivative(b));
        if da == 0.0 {
            push(a);
        } else if da.signum() != db.signum() && db != 0.0 {
            push(bisect_derivative(kernel, a, b));
        }
    }
    if kernel.derivative(hi) == 0.0 {
        // boundary critical values are not turning points; ignore
    }
    criticals.sort_by(f64::total_cmp);
    criticals
}

fn bisect_derivative(kernel: &Kernel, mut a: f64, mut b: f64) -> f64 {
    let mut da = kernel.derivative(a);
    for _ in 0..200 {
        if b - a < CRITICAL_REFINE {
            break;
        }
        let mid = 0.5 * (a + b);
        let dm = kernel.derivative(mid);
        if dm == 0.0 {
            return mid;
        }
        if dm.signum() == da.signum() {
            a = mid;
            da = dm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn validate_monotone_alternation(
    kernel: &Kernel,
    domain: (f64, f64),
    criticals: &[f64],
) -> Result<Shape> {
    let (lo, hi) = domain;
    let mut bounds = vec![lo];
    bounds.extend_from_slice(criticals);
    bounds.push(hi);
    let mut signs = Vec::new();
    for w in bounds.windows(2) {
        let (a, b) = (w[0], w[1]);
        // sample away from the turning points
        let mut sign = 0.0;
        for k in 1..8 {
            let x = a + (b - a) * k as f64 / 8.0;
            let d = kernel.derivative(x);
            if d.abs() > 1e-13 {
                sign = d.signum();
                break;
            }
        }
        if sign == 0.0 {
            return Err(KneadError::ShapeMismatch(format!(
                "branch on [{a}, {b}] has no detectable monotone direction"
            )));
        }
        signs.push(sign);
    }
    for w in signs.windows(2) {
        if w[0] == w[1] {
            return Err(KneadError::ShapeMismatch(
                "adjacent branches do not alternate monotonicity".into(),
            ));
        }
    }
    Ok(if signs[0] > 0.0 {
        Shape::Increasing
    } else {
        Shape::Decreasing
    })
}

/// Two-dimensional iterate-only families. These fall outside the continuous
/// piecewise-monotone hypothesis (the Baker map is discontinuous, the
/// Kaplan-Yorke basis is a circle map), so they support iteration only.
#[derive(Debug, Clone, Copy)]
pub enum PlanarMap {
    /// Generalized Baker transformation on the unit square.
    Baker { a: f64, b: f64 },
    /// Twisted horseshoe map on the unit square.
    TwistedHorseshoe { a: f64, b: f64 },
    /// Kaplan-Yorke type map: `((a x + b) mod 1, -c y + cos(2 pi x))`.
    KaplanYorke { a: f64, b: f64, c: f64 },
}

impl PlanarMap {
    pub fn step(&self, x: f64, y: f64) -> (f64, f64) {
        match *self {
            PlanarMap::Baker { a, b } => {
                if x <= 1.0 / b {
                    (b * x, a * y)
                } else {
                    (b * x - 1.0, a * y + (1.0 - a))
                }
            }
            PlanarMap::TwistedHorseshoe { a, b } => {
                let g = x / a + y / b + 0.5;
                if x <= 1.0 / a {
                    (a * x, g)
                } else {
                    (a * (1.0 - x), g)
                }
            }
            PlanarMap::KaplanYorke { a, b, c } => (
                (a * x + b).rem_euclid(1.0),
                -c * y + (2.0 * std::f64::consts::PI * x).cos(),
            ),
        }
    }

    pub fn trajectory(&self, start: (f64, f64), n: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(n + 1);
        let (mut x, mut y) = start;
        out.push((x, y));
        for _ in 0..n {
            let (nx, ny) = self.step(x, y);
            x = nx;
            y = ny;
            out.push((x, y));
        }
        out
    }
}

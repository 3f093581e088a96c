//! End-to-end orchestration: numeric orbit detection feeding the exact
//! symbolic pipeline, and the assembled invariant bundles the CLI reports.

use crate::algebra::IntPolynomial;
use crate::entropy::{
    bowen_check, entropy_from_polynomial, entropy_from_transition, EntropyReport,
};
use crate::error::{KneadError, Result};
use crate::interval_map::{IntervalMap, Orbit, TriangularMap};
use crate::kneading::{
    d_poly, kneading_determinant, kneading_matrix, triangular_kneading, KneadingDeterminant,
    KneadingMatrix, TriangularKneading,
};
use crate::markov::{product_transition, transition_matrix_symbolic, TransitionMatrix};
use crate::symbols::{critical_block, KneadingData};

/// Knobs for the numeric stage.
#[derive(Debug, Clone, Copy)]
pub struct DetectionConfig {
    pub max_period: usize,
    /// Orbit closure tolerance.
    pub tol: f64,
    /// How far a detected cycle may sit from the critical point and still
    /// count as the critical orbit. Reference parameter values are rounded
    /// to a few decimals, which displaces the superstable cycle by up to a
    /// few 1e-2.
    pub snap: f64,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            max_period: 64,
            tol: crate::interval_map::DEFAULT_ORBIT_TOL,
            snap: 0.05,
        }
    }
}

/// Critical orbits and derived kneading data of one interval map.
#[derive(Debug, Clone)]
pub struct MapAnalysis {
    /// One orbit per critical point, each anchored at the point nearest
    /// its critical point.
    pub orbits: Vec<Orbit>,
    pub data: KneadingData,
}

/// Detects the critical orbit of every critical point and reads off the
/// kneading data. All critical orbits must be periodic within the budget.
pub fn analyze_interval_map(map: &IntervalMap, cfg: &DetectionConfig) -> Result<MapAnalysis> {
    map.kneading_ready()?;
    let mut orbits = Vec::with_capacity(map.modality());
    let mut blocks = Vec::with_capacity(map.modality());
    for (i, &c) in map.critical_points().iter().enumerate() {
        let orbit = map
            .detect_periodic_orbit(c, cfg.max_period, cfg.tol)?
            .ok_or(KneadError::NoOrbit(cfg.max_period, c))?;
        blocks.push(critical_block(map, &orbit, i, cfg.snap)?);
        orbits.push(orbit);
    }
    let data = KneadingData::new(blocks)?;
    Ok(MapAnalysis { orbits, data })
}

/// The numeric analysis of a triangular map: basis critical orbit, the
/// rotation of it along which the fiber composition has periodic critical
/// orbits, and the fiber analysis (absent when the fiber maps are
/// monotone).
#[derive(Debug, Clone)]
pub struct TriangularAnalysis {
    pub basis: MapAnalysis,
    /// Basis cycle in composition order: `g_P` runs through these points
    /// starting at index 0.
    pub composition_orbit: Orbit,
    pub rotation: usize,
    pub fiber_map: IntervalMap,
    pub fiber: Option<MapAnalysis>,
    pub product_period: usize,
}

pub fn analyze_triangular(
    map: &TriangularMap,
    cfg: &DetectionConfig,
) -> Result<TriangularAnalysis> {
    let basis = analyze_interval_map(map.basis(), cfg)?;
    if basis.data.modality() != 1 {
        return Err(KneadError::Unsupported(format!(
            "the basis map must be unimodal, got modality {}",
            basis.data.modality()
        )));
    }
    let (rotation, fiber_map, fiber) = analyze_fiber(map, &basis.orbits[0], cfg)?;
    let p = basis.orbits[0].period;
    let q: usize = fiber
        .as_ref()
        .map(|f| f.data.periods().iter().sum())
        .unwrap_or(1);
    Ok(TriangularAnalysis {
        composition_orbit: basis.orbits[0].rotated(rotation),
        basis,
        rotation,
        fiber_map,
        fiber,
        product_period: p * q,
    })
}

/// Finds the rotation of the basis cycle whose fiber composition has all
/// critical orbits periodic and inside the fiber domain. The rotation is a
/// genuine degree of freedom: the return maps over different base points
/// are related but their critical orbits differ, and generically exactly
/// one section carries the superstable fiber cycle.
pub fn analyze_fiber(
    map: &TriangularMap,
    basis_orbit: &Orbit,
    cfg: &DetectionConfig,
) -> Result<(usize, IntervalMap, Option<MapAnalysis>)> {
    let mut last_err: Option<KneadError> = None;
    for r in 0..basis_orbit.period {
        let rotated = basis_orbit.rotated(r);
        let g_p = match map.compose_fiber(&rotated) {
            Ok(g) => g,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        if g_p.modality() == 0 {
            return Ok((r, g_p, None));
        }
        match analyze_interval_map(&g_p, cfg) {
            Ok(analysis) => return Ok((r, g_p, Some(analysis))),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| {
        KneadError::Unsupported("no rotation yields periodic fiber critical orbits".into())
    }))
}

/// The exact invariants of one kneading system.
#[derive(Debug, Clone)]
pub struct SystemInvariants {
    pub data: KneadingData,
    pub matrix: KneadingMatrix,
    pub determinant: KneadingDeterminant,
    pub d_polynomial: IntPolynomial,
    pub transition: TransitionMatrix,
    pub char_polynomial: IntPolynomial,
}

pub fn system_invariants(data: &KneadingData) -> Result<SystemInvariants> {
    let matrix = kneading_matrix(data)?;
    let determinant = kneading_determinant(&matrix)?;
    let d_polynomial = d_poly(&determinant, &data.periods())?;
    let transition = transition_matrix_symbolic(data)?;
    let char_polynomial = transition.matrix().char_poly();
    Ok(SystemInvariants {
        data: data.clone(),
        matrix,
        determinant,
        d_polynomial,
        transition,
        char_polynomial,
    })
}

/// Invariants of the lifted (triangular) system.
#[derive(Debug, Clone)]
pub struct TriangularInvariants {
    pub basis: SystemInvariants,
    pub fiber: Option<SystemInvariants>,
    pub lift: TriangularKneading,
    /// `A = A_y (x) A_x`; equals the basis transition matrix when the
    /// fiber is monotone.
    pub product_transition: TransitionMatrix,
    pub product_char: IntPolynomial,
}

pub fn triangular_invariants(
    basis_data: &KneadingData,
    fiber_data: Option<&KneadingData>,
) -> Result<TriangularInvariants> {
    let basis = system_invariants(basis_data)?;
    let fiber = fiber_data.map(system_invariants).transpose()?;
    // a factor consisting of a single fixed critical point spans no
    // intervals: its partition is empty and it carries no subshift, so it
    // reduces out of the lift exactly like a monotone fiber
    let basis_active = basis.data.total_points() > 1;
    let fiber_active = fiber.as_ref().is_some_and(|f| f.data.total_points() > 1);
    let (lift, product) = match (basis_active, fiber_active) {
        (_, false) => (
            lift_of_single(&basis, PairSlot::Basis),
            basis.transition.clone(),
        ),
        (false, true) => {
            let f = fiber.as_ref().unwrap();
            (lift_of_single(f, PairSlot::Fiber), f.transition.clone())
        }
        (true, true) => {
            let f = fiber.as_ref().unwrap();
            (
                triangular_kneading(Some(&f.matrix), &basis.matrix)?,
                product_transition(&f.transition, &basis.transition)?,
            )
        }
    };
    let product_char = product.matrix().char_poly();
    Ok(TriangularInvariants {
        basis,
        fiber,
        lift,
        product_transition: product,
        product_char,
    })
}

enum PairSlot {
    Basis,
    Fiber,
}

/// Lift in which only one factor survives: its invariants stand alone,
/// paired with the trivial factor in the other slot.
fn lift_of_single(sys: &SystemInvariants, slot: PairSlot) -> TriangularKneading {
    use crate::algebra::RationalFunction;
    let m = sys.matrix.modality();
    let matrix = (0..m)
        .map(|i| {
            (0..=m)
                .map(|j| {
                    let entry = sys.matrix.entry(i, j).clone();
                    match slot {
                        PairSlot::Basis => (RationalFunction::one(), entry),
                        PairSlot::Fiber => (entry, RationalFunction::one()),
                    }
                })
                .collect()
        })
        .collect();
    TriangularKneading {
        matrix,
        determinant: sys.determinant.value.clone(),
        d_polynomial: sys.d_polynomial.clone(),
        periods: sys.data.periods(),
    }
}

/// Assembles the two-route entropy report for a lifted system.
pub fn entropy_report(inv: &TriangularInvariants, precision: f64) -> EntropyReport {
    let (t_star, h_kneading) = entropy_from_polynomial(&inv.lift.d_polynomial, precision);
    let (lambda, h_spectral) = entropy_from_transition(&inv.product_transition, precision);
    let (_, h_basis) = entropy_from_polynomial(&inv.basis.d_polynomial, precision);
    let h_fiber = inv
        .fiber
        .as_ref()
        .map(|f| entropy_from_polynomial(&f.d_polynomial, precision).1)
        .unwrap_or(0.0);
    let bowen_ok = bowen_check(h_basis, h_fiber, h_kneading, 1e-8);
    EntropyReport {
        h_kneading,
        h_spectral,
        t_star,
        lambda,
        h_basis,
        h_fiber,
        bowen_ok,
    }
}

//! Acceptance suite. Each test covers one criterion end to end, enforces
//! its runtime budget, and prints one PASS line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use knead_core::algebra::{
    cyclotomic_product, poly_tensor, spectral_radius, IntMatrix, IntPolynomial, RationalFunction,
};
use knead_core::entropy::{bowen_check, entropy_from_polynomial, entropy_from_transition};
use knead_core::homology::{build_diagram, verify_diagram, verify_tensor_lift};
use knead_core::interval_map::{IntervalMap, TriangularMap};
use knead_core::markov::{partition_from_orbit, transition_matrix_symbolic};
use knead_core::pipeline::{
    analyze_triangular, entropy_report, system_invariants, triangular_invariants, DetectionConfig,
};
use knead_core::symbols::{
    validate_kneading_data, KneadingData, Strictness, Symbol, SymbolicSequence,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use std::time::{Duration, Instant};

fn finish(name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{name} exceeded its runtime budget: {elapsed:?} > {budget:?}"
    );
    println!("ACCEPTANCE {name}: PASS ({elapsed:?})");
}

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::from_i64(num, den)
}

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

const A_X: [[i64; 2]; 2] = [[0, 1], [1, 1]];
const A_Y: [[i64; 4]; 4] = [[0, 0, 1, 1], [0, 0, 0, 1], [0, 1, 1, 0], [1, 0, 0, 0]];
const A_8X8: [[i64; 8]; 8] = [
    [0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 1, 1, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
];
const D_T: [i64; 9] = [1, -1, -4, 3, -3, -5, 2, 1, 1];

fn assert_matrix(m: &IntMatrix, expect: &[&[i64]], label: &str) {
    let got = m.to_i64_rows().expect("matrix entries exceed i64");
    assert_eq!(got.len(), expect.len(), "{label}: row count");
    for (i, row) in expect.iter().enumerate() {
        assert_eq!(got[i].as_slice(), *row, "{label}: row {i}");
    }
}

fn rows8(a: &[[i64; 8]; 8]) -> Vec<&[i64]> {
    a.iter().map(|r| r.as_slice()).collect()
}

#[test]
fn criterion_1_symbolic_golden_reproduction() {
    let start = Instant::now();
    let basis = KneadingData::unimodal("RLC").unwrap();
    let fiber = KneadingData::unimodal("RLRRC").unwrap();
    let inv = triangular_invariants(&basis, Some(&fiber)).unwrap();

    // kneading matrices match the reference closed forms exactly
    let n_f = &inv.basis.matrix;
    assert_eq!(*n_f.entry(0, 0), rf(&[-1, 0, 2, 1], &[1, 0, 0, -1]));
    assert_eq!(*n_f.entry(0, 1), rf(&[1, -2, 0, 1], &[1, 0, 0, -1]));
    let n_g = &inv.fiber.as_ref().unwrap().matrix;
    assert_eq!(
        *n_g.entry(0, 0),
        rf(&[-1, 0, 2, 0, 0, 1], &[1, 0, 0, 0, 0, -1])
    );
    assert_eq!(
        *n_g.entry(0, 1),
        rf(&[1, -2, 0, 2, -2, 1], &[1, 0, 0, 0, 0, -1])
    );

    // d-polynomials, exactly
    assert_eq!(inv.basis.d_polynomial, poly(&[1, -1, -1]));
    assert_eq!(
        inv.fiber.as_ref().unwrap().d_polynomial,
        poly(&[1, -1, -1, 1, -1])
    );

    // the lifted determinant, exactly
    assert_eq!(inv.lift.d_polynomial, poly(&D_T));
    assert_eq!(
        inv.lift.determinant,
        RationalFunction::new(poly(&D_T), cyclotomic_product(&[5, 3]))
    );

    // transition matrices entry for entry
    let ax: Vec<&[i64]> = A_X.iter().map(|r| r.as_slice()).collect();
    let ay: Vec<&[i64]> = A_Y.iter().map(|r| r.as_slice()).collect();
    assert_matrix(inv.basis.transition.matrix(), &ax, "A_x");
    assert_matrix(inv.fiber.as_ref().unwrap().transition.matrix(), &ay, "A_y");
    assert_matrix(inv.product_transition.matrix(), &rows8(&A_8X8), "A");

    finish(
        "criterion 1 (symbolic golden reproduction)",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_numeric_golden_reproduction() {
    let start = Instant::now();
    let map = TriangularMap::quadratic(1.76, 0.823).unwrap();
    let analysis = analyze_triangular(&map, &DetectionConfig::default()).unwrap();

    assert_eq!(analysis.basis.orbits[0].period, 3);
    let fiber = analysis.fiber.as_ref().unwrap();
    assert_eq!(fiber.orbits[0].period, 5);

    // orbit points match the reference values within 5e-4
    let reference_x = [-0.7589, -0.0135, 0.9997];
    for (got, want) in analysis.composition_orbit.points.iter().zip(&reference_x) {
        assert!((got - want).abs() < 5e-4, "basis point {got} vs {want}");
    }
    let reference_y = [-0.0018, 0.8041, -0.5795, 0.3396, 0.6899];
    for (got, want) in fiber.orbits[0].points.iter().zip(&reference_y) {
        assert!((got - want).abs() < 5e-4, "fiber point {got} vs {want}");
    }

    // the derived kneading data are exact
    assert_eq!(analysis.basis.data.blocks()[0].to_string(), "RLC");
    assert_eq!(fiber.data.blocks()[0].to_string(), "RLRRC");

    finish(
        "criterion 2 (numeric golden reproduction)",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_3_entropy_both_routes() {
    let start = Instant::now();
    let basis = KneadingData::unimodal("RLC").unwrap();
    let fiber = KneadingData::unimodal("RLRRC").unwrap();
    let inv = triangular_invariants(&basis, Some(&fiber)).unwrap();
    let report = entropy_report(&inv, 1e-12);

    let t_star = report.t_star.expect("t* exists");
    assert!((t_star - 0.408515).abs() <= 1e-5, "t* = {t_star}");
    assert!(
        (report.lambda - 2.4478).abs() <= 1e-3,
        "lambda = {}",
        report.lambda
    );
    assert!(
        (report.h_kneading - 0.8952).abs() <= 1e-3,
        "h_kneading = {}",
        report.h_kneading
    );
    assert!(
        (report.h_spectral - 0.8952).abs() <= 1e-3,
        "h_spectral = {}",
        report.h_spectral
    );
    // additivity: h(T) = h(f) + h(g_P)
    assert!(
        (report.h_kneading - report.h_basis - report.h_fiber).abs() < 1e-8,
        "additivity violated"
    );
    assert!(
        (report.h_spectral - report.h_basis - report.h_fiber).abs() < 1e-8,
        "additivity violated (spectral)"
    );
    // component entropies: log of the golden-ratio and quartic radii
    assert!(
        (report.h_basis - 0.4812).abs() < 1e-3,
        "h_basis = {}",
        report.h_basis
    );
    assert!(
        (report.h_fiber - 0.4140).abs() < 1e-3,
        "h_fiber = {}",
        report.h_fiber
    );

    finish("criterion 3 (entropy)", start, Duration::from_secs(1));
}

const BOUNDARY_15X8: [[i64; 8]; 15] = [
    [1, -1, -1, 1, 0, 0, 0, 0],
    [0, 1, 0, -1, 0, 0, 0, 0],
    [-1, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, -1],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, -1, 0],
    [-1, 1, 0, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, -1, -1, 1, 0, 0],
    [0, 0, 0, 1, 0, -1, 0, 0],
    [0, 0, -1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, -1, -1, 1],
    [0, 0, 0, 0, 0, 1, 0, -1],
    [0, 0, 0, 0, -1, 0, 1, 0],
];
const ALPHA_8X8: [[i64; 8]; 8] = [
    [0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 0, -1, -1, -1, -1],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, -1, 0, -1, 0, 0],
    [0, 0, 1, 1, 1, 1, 0, 0],
    [0, -1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0],
];
const BETA_8X8: [[i64; 8]; 8] = [
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, 1],
];
const OMEGA_15X15: [[i64; 15]; 15] = [
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
];
const GAMMA_15X15: [[i64; 15]; 15] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, -1, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 0, 1, 1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, -1, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, -1, 0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0],
    [-1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1, 0],
    [-1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1],
];
const A_T_8X8: [[i64; 8]; 8] = [
    [0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0],
    [1, 1, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0, 0],
];
const THETA_T_15X15: [[i64; 15]; 15] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, -1, 0, -1, 1, 0, 1, -1, 0, 1, -1],
    [0, 0, 0, 0, -1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
];

#[test]
fn criterion_4_homology_golden_and_identities() {
    let start = Instant::now();
    let basis = KneadingData::unimodal("RLC").unwrap();
    let fiber = KneadingData::unimodal("RLRRC").unwrap();
    let dx = build_diagram(&basis).unwrap();
    let dy = build_diagram(&fiber).unwrap();

    let boundary = dy.boundary.kron(&dx.boundary);
    let alpha = dy.alpha.kron(&dx.alpha);
    let beta = dy.beta.kron(&dx.beta);
    let omega = dy.omega.kron(&dx.omega);
    let gamma = dy.gamma.kron(&dx.gamma);
    let a_matrix = dy.a_matrix.kron(&dx.a_matrix);
    let theta = dy.theta.kron(&dx.theta);

    let b15: Vec<&[i64]> = BOUNDARY_15X8.iter().map(|r| r.as_slice()).collect();
    let o15: Vec<&[i64]> = OMEGA_15X15.iter().map(|r| r.as_slice()).collect();
    let g15: Vec<&[i64]> = GAMMA_15X15.iter().map(|r| r.as_slice()).collect();
    let tt15: Vec<&[i64]> = THETA_T_15X15.iter().map(|r| r.as_slice()).collect();
    assert_matrix(&boundary, &b15, "boundary");
    assert_matrix(&alpha, &rows8(&ALPHA_8X8), "alpha");
    assert_matrix(&beta, &rows8(&BETA_8X8), "beta");
    assert_matrix(&omega, &o15, "omega");
    assert_matrix(&gamma, &g15, "gamma");
    assert_matrix(&a_matrix.transpose(), &rows8(&A_T_8X8), "A^T");
    assert_matrix(&theta.transpose(), &tt15, "Theta^T");

    // Theta^T * boundary = boundary * A^T, exactly
    let lhs = theta.transpose().mul_mat(&boundary);
    let rhs = boundary.mul_mat(&a_matrix.transpose());
    assert_eq!(lhs, rhs, "Theta^T d != d A^T");

    // P_Theta = P_A = D_T * (1 - t^5)(1 - t^3), exactly
    let report = verify_tensor_lift(&basis, &fiber).unwrap();
    assert!(report.holds());
    assert_eq!(report.p_a, poly(&D_T));
    assert_eq!(report.p_theta, poly(&D_T));
    assert_eq!(report.d_times_cyclotomic, poly(&D_T));

    finish(
        "criterion 4 (homology golden + identities)",
        start,
        Duration::from_secs(1),
    );
}

fn enumerate_admissible(pmax: usize) -> Vec<KneadingData> {
    let mut out = Vec::new();
    for p in 1..=pmax {
        for bits in 0..(1u32 << (p - 1)) {
            let mut block: Vec<Symbol> = (0..p - 1)
                .map(|i| {
                    if bits >> i & 1 == 0 {
                        Symbol::L
                    } else {
                        Symbol::R
                    }
                })
                .collect();
            block.push(Symbol::C(1));
            let seq = SymbolicSequence::periodic(1, block).unwrap();
            let data = KneadingData::new(vec![seq]).unwrap();
            if validate_kneading_data(&data, Strictness::Strict)
                .unwrap()
                .valid
            {
                out.push(data);
            }
        }
    }
    out
}

#[test]
fn criterion_5_property_suite() {
    let start = Instant::now();

    // every admissible unimodal kneading sequence of period <= 8:
    // d-polynomial equals the transition char polynomial exactly
    let all = enumerate_admissible(8);
    assert!(all.len() >= 30, "enumeration too small: {}", all.len());
    for data in &all {
        let inv = system_invariants(data).unwrap();
        assert_eq!(
            inv.d_polynomial,
            inv.char_polynomial,
            "routes disagree on {}",
            data.blocks()[0]
        );
    }

    // 200 random admissible pairs: char_poly(A_y (x) A_x) equals
    // poly_tensor of the factors exactly; entropies agree between routes
    // and respect the Bowen bounds
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let dx = &all[rng.gen_range(0..all.len())];
        let dy = &all[rng.gen_range(0..all.len())];
        let inv = triangular_invariants(dx, Some(dy)).unwrap();
        // the Kronecker characteristic-polynomial identity on the raw
        // product (the lift reduces away degenerate single-point factors,
        // so rebuild the raw product for those)
        let both_active = dx.total_points() > 1 && dy.total_points() > 1;
        let (direct, tensored) = if both_active {
            let f = inv.fiber.as_ref().unwrap();
            (
                inv.product_char.clone(),
                poly_tensor(&f.char_polynomial, &inv.basis.char_polynomial).unwrap(),
            )
        } else {
            let sx = system_invariants(dx).unwrap();
            let sy = system_invariants(dy).unwrap();
            let raw =
                knead_core::markov::product_transition(&sy.transition, &sx.transition).unwrap();
            (
                raw.matrix().char_poly(),
                poly_tensor(&sy.char_polynomial, &sx.char_polynomial).unwrap(),
            )
        };
        assert_eq!(direct, tensored, "{} x {}", dx.blocks()[0], dy.blocks()[0]);
        assert_eq!(inv.product_char, inv.lift.d_polynomial, "lift mismatch");
        let report = entropy_report(&inv, 1e-12);
        assert!(
            (report.h_kneading - report.h_spectral).abs() < 1e-8,
            "route disagreement on {} x {}",
            dx.blocks()[0],
            dy.blocks()[0]
        );
        assert!(
            bowen_check(report.h_basis, report.h_fiber, report.h_kneading, 1e-8),
            "Bowen bounds violated on {} x {}",
            dx.blocks()[0],
            dy.blocks()[0]
        );
        assert!(
            (report.h_kneading - report.h_basis - report.h_fiber).abs() < 1e-8,
            "additivity violated on {} x {}",
            dx.blocks()[0],
            dy.blocks()[0]
        );
    }

    // Kronecker identities on 200 random integer matrices up to 4x4
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let a = IntMatrix::from_fn(n, n, |_, _| rng.gen_range(-4i64..=4).into());
        let b = IntMatrix::from_fn(m, m, |_, _| rng.gen_range(-4i64..=4).into());
        let k = a.kron(&b);
        assert_eq!(k.transpose(), a.transpose().kron(&b.transpose()));
        assert_eq!(k.trace(), a.trace() * b.trace());
        let det = num_traits::pow::pow(a.det(), m) * num_traits::pow::pow(b.det(), n);
        assert_eq!(k.det(), det);
    }

    // spectral radius is multiplicative under Kronecker products
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let a = IntMatrix::from_fn(n, n, |_, _| rng.gen_range(0i64..=2).into());
        let b = IntMatrix::from_fn(m, m, |_, _| rng.gen_range(0i64..=2).into());
        let (ra, rb) = (spectral_radius(&a, 1e-11), spectral_radius(&b, 1e-11));
        let rk = spectral_radius(&a.kron(&b), 1e-11);
        assert!((rk - ra * rb).abs() < 1e-8, "{rk} vs {}", ra * rb);
    }

    finish(
        "criterion 5 (property suite)",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_6_degenerate_and_robustness() {
    let start = Instant::now();

    // monotone fiber: h(T) = h(f) within 1e-10, symbolically and numerically
    let basis = KneadingData::unimodal("RLC").unwrap();
    let inv = triangular_invariants(&basis, None).unwrap();
    let report = entropy_report(&inv, 1e-12);
    assert!((report.h_kneading - report.h_basis).abs() < 1e-10);
    assert_eq!(report.h_fiber, 0.0);
    let t = TriangularMap::new(
        IntervalMap::quadratic(1.76).unwrap(),
        knead_core::interval_map::Fiber::Projection,
        (-1.0, 1.0),
    );
    let analysis = analyze_triangular(&t, &DetectionConfig::default()).unwrap();
    assert!(analysis.fiber.is_none());
    let inv = triangular_invariants(&analysis.basis.data, None).unwrap();
    let numeric_report = entropy_report(&inv, 1e-12);
    assert!((numeric_report.h_kneading - numeric_report.h_basis).abs() < 1e-10);

    // period-1 systems: empty partitions, zero entropy, no errors
    let fixed = KneadingData::unimodal("C").unwrap();
    let inv = system_invariants(&fixed).unwrap();
    assert_eq!(inv.transition.size(), 0);
    assert_eq!(inv.d_polynomial, IntPolynomial::from_i64(&[1]));
    let (t_star, h) = entropy_from_polynomial(&inv.d_polynomial, 1e-12);
    assert_eq!((t_star, h), (None, 0.0));
    let (lambda, h) = entropy_from_transition(&inv.transition, 1e-12);
    assert_eq!((lambda, h), (0.0, 0.0));
    // numerically: a map whose critical point is a fixed point
    let peak_fixed = IntervalMap::piecewise(
        (0.0, 1.0),
        vec![0.5],
        vec![vec![0.25, 0.5], vec![0.75, -0.5]],
        1e-9,
    )
    .unwrap();
    let orbit = peak_fixed
        .detect_periodic_orbit(0.5, 8, 1e-9)
        .unwrap()
        .unwrap();
    assert_eq!(orbit.period, 1);
    let part = partition_from_orbit(&peak_fixed, &[orbit]);
    assert!(part.is_empty());
    // and clean through the whole numeric pipeline
    let analysis =
        knead_core::pipeline::analyze_interval_map(&peak_fixed, &DetectionConfig::default())
            .unwrap();
    assert_eq!(analysis.data.blocks()[0].to_string(), "C");
    let inv = triangular_invariants(&analysis.data, None).unwrap();
    let rep = entropy_report(&inv, 1e-12);
    assert_eq!((rep.h_kneading, rep.h_spectral), (0.0, 0.0));

    // a corrupted gamma sign is caught by the certificate
    let dm = build_diagram(&KneadingData::unimodal("RLRRC").unwrap()).unwrap();
    let corrupted = dm.corrupt_gamma_sign();
    assert!(!verify_diagram(&corrupted).all_pass());

    // and surfaces as exit code 4 through the CLI
    let status = Command::new(env!("CARGO_BIN_EXE_knead"))
        .args([
            "verify",
            "--kneading-data",
            "RLC",
            "--fiber-kneading-data",
            "RLRRC",
            "--corrupt-gamma",
        ])
        .output()
        .expect("running knead");
    assert_eq!(status.status.code(), Some(4), "corrupted gamma must exit 4");

    finish(
        "criterion 6 (degenerate and robustness)",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn transition_matrix_symbolic_agrees_on_golden_pair() {
    // tie the acceptance goldens to the combinatorial oracle as well
    let a_x = transition_matrix_symbolic(&KneadingData::unimodal("RLC").unwrap()).unwrap();
    let ax: Vec<&[i64]> = A_X.iter().map(|r| r.as_slice()).collect();
    assert_matrix(a_x.matrix(), &ax, "oracle A_x");
}

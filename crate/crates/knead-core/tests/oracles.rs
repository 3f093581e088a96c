//! Oracle tests: the closed-form invariant coordinates, kneading matrices
//! and determinants are checked against independent brute-force expansions,
//! and against the actual dynamics of a superstable quadratic map.

mod common;

use common::{admissible_unimodal_up_to, oracle_one_sided_stream, oracle_theta_terms};
use knead_core::interval_map::IntervalMap;
use knead_core::kneading::{d_poly, kneading_determinant, kneading_matrix};
use knead_core::symbols::{address, itinerary, one_sided_coordinate, KneadingData, Side, Symbol};
use num_bigint::BigInt;

fn series_matches_stream(data: &KneadingData, k: usize, side: Side, order: usize) {
    let closed = one_sided_coordinate(data, k, side);
    let got = closed.series(order);
    let stream = oracle_one_sided_stream(data, k, side, order);
    let want = oracle_theta_terms(&stream, data.modality());
    assert_eq!(
        got, want,
        "one-sided series mismatch for {:?} side {:?}",
        data, side
    );
}

#[test]
fn one_sided_series_match_direct_expansion() {
    for block in ["C", "RC", "RLC", "RLRRC", "RLRC", "RLLRRC"] {
        let data = KneadingData::unimodal(block).unwrap();
        for side in [Side::Left, Side::Right] {
            series_matches_stream(&data, 1, side, 3 * data.periods()[0] + 5);
        }
    }
}

#[test]
fn one_sided_series_match_for_all_enumerated_data() {
    for data in admissible_unimodal_up_to(7) {
        for side in [Side::Left, Side::Right] {
            series_matches_stream(&data, 1, side, 2 * data.periods()[0] + 4);
        }
    }
}

#[test]
fn bimodal_increments_match_series_oracle() {
    // an admissible bimodal system of periods (2, 2)
    let data = KneadingData::from_block_strings(&["RC1", "M1C2"]).unwrap();
    let n = kneading_matrix(&data).unwrap();
    assert_eq!(n.entries().dims(), (2, 3));
    for k in 1..=2 {
        for side in [Side::Left, Side::Right] {
            series_matches_stream(&data, k, side, 8);
        }
        // row k-1 of the matrix is theta(+) - theta(-) termwise
        let plus = one_sided_coordinate(&data, k, Side::Right);
        let minus = one_sided_coordinate(&data, k, Side::Left);
        for j in 0..3 {
            let direct = plus.coeff(j) - minus.coeff(j);
            assert_eq!(*n.entry(k - 1, j), direct);
        }
    }
}

#[test]
fn increments_of_rc_match_series_to_order_eight() {
    let data = KneadingData::unimodal("RC").unwrap();
    let n = kneading_matrix(&data).unwrap();
    let got: Vec<Vec<BigInt>> = (0..2).map(|j| n.entry(0, j).series(8)).collect();
    let stream_plus = oracle_theta_terms(&oracle_one_sided_stream(&data, 1, Side::Right, 8), 1);
    let stream_minus = oracle_theta_terms(&oracle_one_sided_stream(&data, 1, Side::Left, 8), 1);
    for j in 0..2 {
        for order in 0..8 {
            let want = &stream_plus[order][j] - &stream_minus[order][j];
            assert_eq!(got[j][order], want, "entry {j} order {order}");
        }
    }
}

#[test]
fn kneading_matrix_entries_expand_to_accumulated_differences() {
    // every matrix entry's series equals the termwise theta difference,
    // to order 3p
    for data in admissible_unimodal_up_to(6) {
        let p = data.periods()[0];
        let n = kneading_matrix(&data).unwrap();
        let plus = oracle_theta_terms(&oracle_one_sided_stream(&data, 1, Side::Right, 3 * p), 1);
        let minus = oracle_theta_terms(&oracle_one_sided_stream(&data, 1, Side::Left, 3 * p), 1);
        for j in 0..2 {
            let series = n.entry(0, j).series(3 * p);
            for order in 0..3 * p {
                assert_eq!(series[order], &plus[order][j] - &minus[order][j]);
            }
        }
    }
}

/// Parameter of the quadratic family whose critical point is exactly
/// 3-periodic, found by bisection on `a -> f_a^3(0)`.
fn superstable_period_three() -> f64 {
    let f3 = |a: f64| {
        let f = |x: f64| 1.0 - a * x * x;
        f(f(f(0.0)))
    };
    let (mut lo, mut hi) = (1.7, 1.8);
    assert!(f3(lo) > 0.0 && f3(hi) < 0.0);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if f3(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn one_sided_streams_match_true_dynamics_at_superstable_parameter() {
    // at the superstable parameter the return map is a genuine fold, so the
    // itinerary of c +- delta follows the ideal one-sided stream until the
    // quadratic contraction collapses the offset to zero
    let a = superstable_period_three();
    let f = IntervalMap::polynomial((-1.0, 1.0), vec![1.0, 0.0, -a]).unwrap();
    let data = KneadingData::unimodal("RLC").unwrap();
    // the fold contracts the offset quadratically on every period-3 return,
    // so the offset collapses below any tolerance after a few returns; ten
    // symbols stay clear of the collapse at this starting distance
    let delta = 1e-2;
    for (side, x0) in [(Side::Right, delta), (Side::Left, -delta)] {
        let ideal = oracle_one_sided_stream(&data, 1, side, 10);
        let got0 = address(&f, x0, 1e-13).unwrap();
        assert_eq!(got0, ideal[0], "address of c{side:?}");
        let tail = itinerary(&f, x0, 9, 1e-13).unwrap();
        assert_eq!(tail.block(), &ideal[1..10], "side {side:?}");
    }
}

#[test]
fn superstable_itinerary_has_single_terminal_critical_symbol() {
    let a = superstable_period_three();
    let f = IntervalMap::polynomial((-1.0, 1.0), vec![1.0, 0.0, -a]).unwrap();
    let it = itinerary(&f, 0.0, 3, 1e-9).unwrap();
    assert_eq!(it.block(), &[Symbol::R, Symbol::L, Symbol::C(1)]);
    let longer = itinerary(&f, 0.0, 9, 1e-9).unwrap();
    let c_count = longer.block().iter().filter(|s| s.is_critical()).count();
    assert_eq!(c_count, 3); // one per period
    assert!(longer.block()[2].is_critical());
}

#[test]
fn rounded_parameter_itinerary_needs_matching_tolerance() {
    // a = 1.76 rounds the superstable value, so the third iterate misses
    // the critical point by about 1.7e-2; a tolerance above that reads the
    // reference kneading sequence directly off the critical orbit
    let f = IntervalMap::quadratic(1.76).unwrap();
    let it = itinerary(&f, 0.0, 3, 0.02).unwrap();
    assert_eq!(it.to_string(), "RLC");
}

#[test]
fn determinant_matches_polynomial_division_oracle() {
    // the R-entry over the common denominator (1 - t^p) has numerator
    // 1 - 2t + t^3; dividing it by (1 - t) must reproduce d = D * (1 - t^3)
    use knead_core::algebra::{cyclotomic_product, IntPolynomial, RationalFunction};
    let data = KneadingData::unimodal("RLC").unwrap();
    let n = kneading_matrix(&data).unwrap();
    let d = kneading_determinant(&n).unwrap();
    let cyc = RationalFunction::from_poly(cyclotomic_product(&[3]));
    let unreduced = (n.entry(0, 1) * &cyc).as_polynomial().unwrap();
    assert_eq!(unreduced, IntPolynomial::from_i64(&[1, -2, 0, 1]));
    let one_minus_t = IntPolynomial::from_i64(&[1, -1]);
    let divided = unreduced.try_div_exact(&one_minus_t).unwrap();
    assert_eq!(divided, IntPolynomial::from_i64(&[1, -1, -1]));
    assert_eq!(d_poly(&d, &[3]).unwrap(), divided);

    // same oracle for RLRRC: (1 - 2t + 2t^3 - 2t^4 + t^5) / (1 - t)
    let data = KneadingData::unimodal("RLRRC").unwrap();
    let n = kneading_matrix(&data).unwrap();
    let d = kneading_determinant(&n).unwrap();
    let cyc = RationalFunction::from_poly(cyclotomic_product(&[5]));
    let unreduced = (n.entry(0, 1) * &cyc).as_polynomial().unwrap();
    assert_eq!(unreduced, IntPolynomial::from_i64(&[1, -2, 0, 2, -2, 1]));
    let divided = unreduced.try_div_exact(&one_minus_t).unwrap();
    assert_eq!(divided, IntPolynomial::from_i64(&[1, -1, -1, 1, -1]));
    assert_eq!(d_poly(&d, &[5]).unwrap(), divided);
}

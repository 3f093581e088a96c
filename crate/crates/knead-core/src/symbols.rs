//! Symbolic itineraries, kneading data, admissibility, the signed invariant
//! coordinate and symbolic products for triangular orbits.
//!
//! The alphabet of an m-modal map is `L < C_1 < M_1 < C_2 < ... < C_m < R`,
//! with signs `eps(L) = eps(M_even) = +1`, `eps(R) = eps(M_odd) = -1` and
//! `eps(C_i) = 0`. Sequences compare in the signed lexicographic order: the
//! order at the first differing position is reversed iff the product of the
//! signs over the common prefix is negative.

use crate::algebra::{IntPolynomial, RationalFunction};
use crate::error::{KneadError, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// One letter of the m-modal alphabet. Indices are 1-based: `M(1)` is the
/// lap between the first and second critical points, `C(1)` the first
/// critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    L,
    M(usize),
    C(usize),
    R,
}

impl Symbol {
    /// Orientation sign of the lap the symbol names; zero for critical points.
    pub fn eps(self) -> i8 {
        match self {
            Symbol::L => 1,
            Symbol::M(i) => {
                if i % 2 == 1 {
                    -1
                } else {
                    1
                }
            }
            Symbol::C(_) => 0,
            Symbol::R => -1,
        }
    }

    pub fn is_critical(self) -> bool {
        matches!(self, Symbol::C(_))
    }

    /// Position in the linear order `L < C_1 < M_1 < ... < C_m < R` for
    /// modality `m`.
    pub fn rank(self, m: usize) -> usize {
        match self {
            Symbol::L => 0,
            Symbol::C(i) => 2 * i - 1,
            Symbol::M(i) => 2 * i,
            Symbol::R => 2 * m,
        }
    }

    /// Index of the symbol in the basis `(L, M_1, ..., M_{m-1}, R)`, when it
    /// is a basis symbol.
    pub fn basis_index(self, m: usize) -> Option<usize> {
        match self {
            Symbol::L => Some(0),
            Symbol::M(i) => Some(i),
            Symbol::R => Some(m),
            Symbol::C(_) => None,
        }
    }

    /// The basis symbol with the given index.
    pub fn from_basis_index(idx: usize, m: usize) -> Symbol {
        if idx == 0 {
            Symbol::L
        } else if idx == m {
            Symbol::R
        } else {
            Symbol::M(idx)
        }
    }

    /// The lap symbol immediately left (side < 0) or right (side > 0) of the
    /// critical point `C_k`.
    pub fn neighbor_of_critical(k: usize, side: Side, m: usize) -> Symbol {
        match side {
            Side::Left => {
                if k == 1 {
                    Symbol::L
                } else {
                    Symbol::M(k - 1)
                }
            }
            Side::Right => {
                if k == m {
                    Symbol::R
                } else {
                    Symbol::M(k)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A finite symbol block, optionally repeating forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSequence {
    modality: usize,
    block: Vec<Symbol>,
    periodic: bool,
}

impl SymbolicSequence {
    pub fn periodic(modality: usize, block: Vec<Symbol>) -> Result<Self> {
        let seq = Self {
            modality,
            block,
            periodic: true,
        };
        seq.check_alphabet()?;
        Ok(seq)
    }

    pub fn finite(modality: usize, block: Vec<Symbol>) -> Result<Self> {
        let seq = Self {
            modality,
            block,
            periodic: false,
        };
        seq.check_alphabet()?;
        Ok(seq)
    }

    fn check_alphabet(&self) -> Result<()> {
        for &s in &self.block {
            let ok = match s {
                Symbol::M(i) => i >= 1 && i < self.modality,
                Symbol::C(i) => i >= 1 && i <= self.modality,
                _ => true,
            };
            if !ok {
                return Err(KneadError::Unsupported(format!(
                    "symbol {s} is outside the alphabet of a {}-modal map",
                    self.modality
                )));
            }
        }
        Ok(())
    }

    pub fn modality(&self) -> usize {
        self.modality
    }

    pub fn block(&self) -> &[Symbol] {
        &self.block
    }

    pub fn period(&self) -> usize {
        self.block.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn symbol_at(&self, j: usize) -> Option<Symbol> {
        if self.periodic {
            Some(self.block[j % self.block.len()])
        } else {
            self.block.get(j).copied()
        }
    }

    /// The shifted sequence sigma^k.
    pub fn shift(&self, k: usize) -> Self {
        assert!(self.periodic, "shift of a finite word");
        let p = self.block.len();
        let k = k % p;
        let mut block = Vec::with_capacity(p);
        block.extend_from_slice(&self.block[k..]);
        block.extend_from_slice(&self.block[..k]);
        Self {
            modality: self.modality,
            block,
            periodic: true,
        }
    }

    /// A periodic critical block: exactly one `C`, in final position.
    pub fn is_critical_block(&self) -> bool {
        self.periodic
            && !self.block.is_empty()
            && self.block.last().is_some_and(|s| s.is_critical())
            && self.block[..self.block.len() - 1]
                .iter()
                .all(|s| !s.is_critical())
    }
}

/// Signed lexicographic comparison of two sequences over the same alphabet.
///
/// Expands to order `2(p_a + p_b) + 2`, which by Fine and Wilf separates any
/// two distinct signed periodic sequences of these periods. Sequences that
/// agree up to and through a critical symbol compare equal: both denote the
/// same preimage of the critical point.
pub fn compare(a: &SymbolicSequence, b: &SymbolicSequence) -> Result<Ordering> {
    if a.modality != b.modality {
        return Err(KneadError::ModalityMismatch(a.modality, b.modality));
    }
    let m = a.modality;
    let horizon = 2 * (a.period() + b.period()) + 2;
    let mut sign: i8 = 1;
    for j in 0..horizon {
        let (sa, sb) = match (a.symbol_at(j), b.symbol_at(j)) {
            (Some(x), Some(y)) => (x, y),
            (None, None) => return Ok(Ordering::Equal),
            (Some(_), None) => return Ok(Ordering::Greater),
            (None, Some(_)) => return Ok(Ordering::Less),
        };
        if sa != sb {
            let ord = sa.rank(m).cmp(&sb.rank(m));
            return Ok(if sign > 0 { ord } else { ord.reverse() });
        }
        sign *= sa.eps();
        if sign == 0 {
            return Ok(Ordering::Equal);
        }
    }
    Ok(Ordering::Equal)
}

/// The m-tuple of periodic critical blocks (block i terminates in `C_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneadingData {
    blocks: Vec<SymbolicSequence>,
}

impl KneadingData {
    pub fn new(blocks: Vec<SymbolicSequence>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(KneadError::Unsupported(
                "kneading data needs at least one block".into(),
            ));
        }
        let m = blocks.len();
        for (i, b) in blocks.iter().enumerate() {
            if b.modality() != m {
                return Err(KneadError::ModalityMismatch(b.modality(), m));
            }
            if !b.is_critical_block() {
                return Err(KneadError::Unsupported(format!(
                    "block {} is not a periodic critical block",
                    i + 1
                )));
            }
            if b.block().last() != Some(&Symbol::C(i + 1)) {
                return Err(KneadError::Unsupported(format!(
                    "block {} must terminate in C{}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(Self { blocks })
    }

    /// Unimodal kneading data from a single block string such as "RLC".
    pub fn unimodal(block: &str) -> Result<Self> {
        Self::new(vec![parse_block(block, 1)?])
    }

    /// Multimodal data from per-block strings; modality is the block count.
    pub fn from_block_strings(blocks: &[&str]) -> Result<Self> {
        let m = blocks.len();
        let parsed: Result<Vec<_>> = blocks.iter().map(|s| parse_block(s, m)).collect();
        Self::new(parsed?)
    }

    pub fn modality(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[SymbolicSequence] {
        &self.blocks
    }

    pub fn periods(&self) -> Vec<usize> {
        self.blocks.iter().map(SymbolicSequence::period).collect()
    }

    pub fn total_points(&self) -> usize {
        self.periods().iter().sum()
    }

    /// All orbit points as symbol sequences, block by block, each block in
    /// time order starting at the critical point itself: the point with
    /// itinerary `(C_k S_1 ... S_{p-1})` comes first, then its forward
    /// images.
    pub fn orbit_points(&self) -> Vec<SymbolicSequence> {
        let mut points = Vec::with_capacity(self.total_points());
        for b in &self.blocks {
            let p = b.period();
            let c_first = b.shift(p - 1);
            for j in 0..p {
                points.push(c_first.shift(j));
            }
        }
        points
    }

    /// Index of the successor of point `i` under the map, in the time order
    /// of `orbit_points` (each block is one cycle).
    pub fn successor(&self, i: usize) -> usize {
        let mut off = 0;
        for b in &self.blocks {
            let p = b.period();
            if i < off + p {
                return off + (i - off + 1) % p;
            }
            off += p;
        }
        panic!("point index {i} out of range");
    }

    /// Spatial (theta-) order of the orbit points: returns `order` with
    /// `order[k]` = time index of the k-th smallest point, and `pos`, its
    /// inverse. Errors if two points coincide symbolically.
    pub fn sorted_points(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let pts = self.orbit_points();
        let n = pts.len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut err = None;
        order.sort_by(|&i, &j| match compare(&pts[i], &pts[j]) {
            Ok(o) => o,
            Err(e) => {
                err = Some(e);
                Ordering::Equal
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        for w in order.windows(2) {
            if compare(&pts[w[0]], &pts[w[1]])? == Ordering::Equal {
                return Err(KneadError::DegeneratePartition(format!(
                    "orbit points {} and {} coincide in theta-order",
                    w[0], w[1]
                )));
            }
        }
        let mut pos = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        Ok((order, pos))
    }
}

/// Strictness of the admissibility comparisons: `Strict` uses strict inequalities as
/// written; `AllowEquality` relaxes every `<` to `<=`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    #[default]
    Strict,
    AllowEquality,
}

/// Outcome of the admissibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub valid: bool,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which of the four shift-comparison rules failed (1..=4).
    pub rule: u8,
    /// 1-based block index.
    pub block: usize,
    /// Shift index i with the offending sigma^i.
    pub shift: usize,
}

/// Checks the four shift-comparison admissibility rules: for every block
/// `u` and every shift starting at a lap symbol, the shifted sequence must
/// sit on the correct side of the kneading blocks bounding that lap.
pub fn validate_kneading_data(
    data: &KneadingData,
    strictness: Strictness,
) -> Result<ValidityReport> {
    let m = data.modality();
    let le = |o: Ordering| match strictness {
        Strictness::Strict => o == Ordering::Less,
        Strictness::AllowEquality => o != Ordering::Greater,
    };
    for (bi, u) in data.blocks().iter().enumerate() {
        let p = u.period();
        for i in 1..=p {
            let lead = u.block()[i - 1];
            let shifted = u.shift(i % p);
            let violation = |rule: u8| Violation {
                rule,
                block: bi + 1,
                shift: i,
            };
            match lead {
                Symbol::C(_) => {}
                Symbol::L => {
                    if !le(compare(&shifted, &data.blocks()[0])?) {
                        return Ok(ValidityReport {
                            valid: false,
                            violation: Some(violation(1)),
                        });
                    }
                }
                Symbol::R => {
                    if !le(compare(&shifted, &data.blocks()[m - 1])?) {
                        return Ok(ValidityReport {
                            valid: false,
                            violation: Some(violation(4)),
                        });
                    }
                }
                Symbol::M(j) => {
                    // odd j: s_{j+1} < sigma^i(u) < s_j; even j: reversed
                    let (lower, upper, rule) = if j % 2 == 1 {
                        (&data.blocks()[j], &data.blocks()[j - 1], 2)
                    } else {
                        (&data.blocks()[j - 1], &data.blocks()[j], 3)
                    };
                    if !le(compare(lower, &shifted)?) || !le(compare(&shifted, upper)?) {
                        return Ok(ValidityReport {
                            valid: false,
                            violation: Some(violation(rule)),
                        });
                    }
                }
            }
        }
    }
    Ok(ValidityReport {
        valid: true,
        violation: None,
    })
}

/// The invariant coordinate of a sequence: one rational function per basis
/// symbol, whose joint power series reproduces `theta_j = prod eps(S_i) S_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCoordinate {
    modality: usize,
    coeffs: Vec<RationalFunction>,
}

impl InvariantCoordinate {
    pub fn zero(modality: usize) -> Self {
        Self {
            modality,
            coeffs: vec![RationalFunction::zero(); modality + 1],
        }
    }

    pub fn modality(&self) -> usize {
        self.modality
    }

    /// Coefficient of the basis symbol with the given index.
    pub fn coeff(&self, basis_index: usize) -> &RationalFunction {
        &self.coeffs[basis_index]
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.modality, rhs.modality);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            modality: self.modality,
            coeffs,
        }
    }

    /// Term-by-term series expansion: entry `j` is the signed basis vector
    /// at order `t^j`, as integer coordinates over `(L, M_1, ..., R)`.
    pub fn series(&self, order: usize) -> Vec<Vec<BigInt>> {
        let per_basis: Vec<Vec<BigInt>> = self.coeffs.iter().map(|rf| rf.series(order)).collect();
        (0..order)
            .map(|j| per_basis.iter().map(|s| s[j].clone()).collect())
            .collect()
    }
}

/// Signed lexicographic comparison of two invariant coordinates through
/// their power series, expanded to the given order. Each term of a genuine
/// coordinate is a signed basis vector; the order places
/// `-R < ... < -L < 0 < L < ... < R`.
pub fn compare_coordinates(
    a: &InvariantCoordinate,
    b: &InvariantCoordinate,
    order: usize,
) -> Result<Ordering> {
    if a.modality() != b.modality() {
        return Err(KneadError::ModalityMismatch(a.modality(), b.modality()));
    }
    let term_key = |term: &[BigInt]| -> Result<i64> {
        let mut key = 0i64;
        let mut seen = 0;
        for (i, c) in term.iter().enumerate() {
            if !c.is_zero() {
                seen += 1;
                let sign = if c > &BigInt::from(0) { 1 } else { -1 };
                key = sign * (i as i64 + 1);
            }
        }
        if seen > 1 {
            return Err(KneadError::Unsupported(
                "coordinate comparison needs single-symbol terms".into(),
            ));
        }
        Ok(key)
    };
    let (sa, sb) = (a.series(order), b.series(order));
    for (ta, tb) in sa.iter().zip(&sb) {
        let (ka, kb) = (term_key(ta)?, term_key(tb)?);
        match ka.cmp(&kb) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

/// Closed form of the invariant coordinate of a periodic sequence. A block
/// containing a critical symbol truncates there (the sign product dies), so
/// the result is a polynomial; otherwise the denominator is
/// `1 - (prod eps) t^p`.
pub fn invariant_coordinate(seq: &SymbolicSequence) -> Result<InvariantCoordinate> {
    let m = seq.modality();
    if !seq.is_periodic() {
        return Err(KneadError::Unsupported(
            "invariant coordinate of a non-periodic word".into(),
        ));
    }
    let p = seq.period();
    let mut sign = BigInt::one();
    let mut numerators = vec![IntPolynomial::zero(); m + 1];
    let mut truncated = false;
    for j in 0..p {
        let s = seq.block()[j];
        if let Some(b) = s.basis_index(m) {
            numerators[b] = &numerators[b] + &IntPolynomial::monomial(sign.clone(), j);
        }
        let e = s.eps();
        if e == 0 {
            truncated = true;
            break;
        }
        if e < 0 {
            sign = -sign;
        }
    }
    let coeffs = if truncated {
        numerators
            .into_iter()
            .map(RationalFunction::from_poly)
            .collect()
    } else {
        // denominator 1 - sign * t^p, sign = product of eps over the period
        let den = &IntPolynomial::one() - &IntPolynomial::monomial(sign, p);
        numerators
            .into_iter()
            .map(|n| RationalFunction::new(n, den.clone()))
            .collect()
    };
    Ok(InvariantCoordinate {
        modality: m,
        coeffs,
    })
}

/// One period of the one-sided symbol stream at `c_k`: the neighbor lap
/// symbol followed by the block body. Returns the emitted symbols, the
/// orientation of the first-return map on that side, and the side the
/// orbit lands on next.
fn one_sided_period(data: &KneadingData, k: usize, side: Side) -> (Vec<Symbol>, i8, Side) {
    let block = &data.blocks()[k - 1];
    let p = block.period();
    let mut symbols = Vec::with_capacity(p);
    symbols.push(Symbol::neighbor_of_critical(k, side, data.modality()));
    symbols.extend_from_slice(&block.block()[..p - 1]);
    let mut d: i8 = 1;
    for s in &symbols {
        d *= s.eps();
    }
    debug_assert!(d != 0);
    let next = if d > 0 { side } else { side.flip() };
    (symbols, d, next)
}

/// The one-sided limit coordinate `theta_{c_k^side}`: the invariant
/// coordinate of points approaching the critical point `c_k` from the given
/// side. The stream substitutes the neighbor lap symbol for the critical
/// symbol and recurses through the side the return map sends it to, so it
/// is eventually periodic and the closed form has denominator dividing
/// `1 - t^{2 p_k}`.
pub fn one_sided_coordinate(data: &KneadingData, k: usize, side: Side) -> InvariantCoordinate {
    let m = data.modality();
    let p = data.blocks()[k - 1].period();
    let (sym0, d0, s1) = one_sided_period(data, k, side);
    let q0 = partial_theta(&sym0, m);
    let coeffs = if s1 == side {
        // purely periodic with positive multiplier
        debug_assert_eq!(d0, 1);
        let den = &IntPolynomial::one() - &IntPolynomial::monomial(BigInt::one(), p);
        q0.into_iter()
            .map(|n| RationalFunction::new(n, den.clone()))
            .collect()
    } else {
        let (sym1, d1, s2) = one_sided_period(data, k, s1);
        let q1 = partial_theta(&sym1, m);
        if s2 == s1 {
            // one alien period, then the stabilized side repeats
            debug_assert_eq!(d1, 1);
            let den = &IntPolynomial::one() - &IntPolynomial::monomial(BigInt::one(), p);
            let tp = IntPolynomial::monomial(BigInt::from(d0), p);
            q0.iter()
                .zip(&q1)
                .map(|(a, b)| {
                    &RationalFunction::from_poly(a.clone())
                        + &RationalFunction::new(&tp * b, den.clone())
                })
                .collect()
        } else {
            // the two sides alternate forever (possible only when the
            // flanking laps share a sign, i.e. even modality at c_m)
            let den =
                &IntPolynomial::one() - &IntPolynomial::monomial(BigInt::from(d0 * d1), 2 * p);
            let tp = IntPolynomial::monomial(BigInt::from(d0), p);
            q0.iter()
                .zip(&q1)
                .map(|(a, b)| RationalFunction::new(a + &(&tp * b), den.clone()))
                .collect()
        }
    };
    InvariantCoordinate {
        modality: m,
        coeffs,
    }
}

/// Signed partial theta sum of a finite symbol word, per basis symbol.
fn partial_theta(symbols: &[Symbol], m: usize) -> Vec<IntPolynomial> {
    let mut out = vec![IntPolynomial::zero(); m + 1];
    let mut sign = BigInt::one();
    for (j, s) in symbols.iter().enumerate() {
        if let Some(b) = s.basis_index(m) {
            out[b] = &out[b] + &IntPolynomial::monomial(sign.clone(), j);
        }
        match s.eps() {
            0 => return out,
            -1 => sign = -sign,
            _ => {}
        }
    }
    out
}

/// Symbolic label of the k-th periodic point of the product orbit: the pair
/// `(sigma^k(s_x), sigma^{k+p}(s_y))` when the periods differ, and the
/// `(k, i)`-indexed variant when they coincide.
pub fn product_itinerary(
    s_x: &SymbolicSequence,
    s_y: &SymbolicSequence,
    k: usize,
) -> Result<(SymbolicSequence, SymbolicSequence)> {
    let (p, q) = (s_x.period(), s_y.period());
    if k >= p * q {
        return Err(KneadError::DimensionMismatch(format!(
            "index {k} out of range for a period-{} product orbit",
            p * q
        )));
    }
    if p != q {
        Ok((s_x.shift(k % p), s_y.shift((k + p) % q)))
    } else {
        // enumerate pairs (k', i) with 0 <= k', i <= p-1 as k = k'*p + i
        let (kp, i) = (k / p, k % p);
        Ok((s_x.shift(kp), s_y.shift((kp + p + i) % q)))
    }
}

/// All `p*q` symbolic periodic-point labels of the product orbit.
pub fn product_itineraries(
    s_x: &SymbolicSequence,
    s_y: &SymbolicSequence,
) -> Result<Vec<(SymbolicSequence, SymbolicSequence)>> {
    (0..s_x.period() * s_y.period())
        .map(|k| product_itinerary(s_x, s_y, k))
        .collect()
}

/// Symbolic address of a point relative to the map's critical points.
/// Ties within `tol` of a critical point resolve to the critical symbol,
/// since itineraries of critical orbits must be exact.
pub fn address(map: &crate::interval_map::IntervalMap, x: f64, tol: f64) -> Result<Symbol> {
    let m = map.modality();
    if m == 0 {
        return Err(KneadError::Unsupported(
            "a monotone map has no symbolic addresses".into(),
        ));
    }
    let (lo, hi) = map.domain();
    if x < lo - tol || x > hi + tol {
        return Err(KneadError::OutsideDomain(x, lo, hi));
    }
    let criticals = map.critical_points();
    let near: Vec<usize> = (0..m)
        .filter(|&i| (x - criticals[i]).abs() <= tol)
        .collect();
    match near.len() {
        0 => {}
        1 => return Ok(Symbol::C(near[0] + 1)),
        _ => return Err(KneadError::AmbiguousAddress { x, tol }),
    }
    if x < criticals[0] {
        return Ok(Symbol::L);
    }
    if x > criticals[m - 1] {
        return Ok(Symbol::R);
    }
    let i = (1..m).find(|&i| x < criticals[i]).unwrap();
    Ok(Symbol::M(i))
}

/// Addresses of `F(x0), F^2(x0), ..., F^length(x0)` — the kneading
/// convention indexes from the image of the starting point.
pub fn itinerary(
    map: &crate::interval_map::IntervalMap,
    x0: f64,
    length: usize,
    tol: f64,
) -> Result<SymbolicSequence> {
    assert!(length >= 1, "itinerary length must be at least 1");
    let mut symbols = Vec::with_capacity(length);
    let mut z = x0;
    for n in 1..=length {
        z = map
            .evaluate(z)
            .map_err(|_| KneadError::Escape { index: n, value: z })?;
        symbols.push(address(map, z, tol)?);
    }
    SymbolicSequence::finite(map.modality(), symbols)
}

/// Kneading block of a detected critical orbit, read off the converged
/// cycle. The cycle must be anchored at the point nearest the critical
/// point `c_{which+1}`; that anchor stands in for the critical point itself
/// (rounded reference parameters displace the superstable cycle, so it is
/// only approximated), its images supply the lap symbols, and the terminal
/// symbol is the critical one by construction. `snap` bounds how far the
/// anchor may sit from the critical point; every other cycle point must
/// stay clear of all critical points by the same margin.
pub fn critical_block(
    map: &crate::interval_map::IntervalMap,
    orbit: &crate::interval_map::Orbit,
    which: usize,
    snap: f64,
) -> Result<SymbolicSequence> {
    let m = map.modality();
    let c = map.critical_points()[which];
    let gap = (orbit.points[0] - c).abs();
    if gap > snap {
        return Err(KneadError::Unsupported(format!(
            "orbit anchor {} is {gap} away from critical point {c}; not a critical orbit at snap {snap}",
            orbit.points[0]
        )));
    }
    let mut symbols = Vec::with_capacity(orbit.period);
    for &x in &orbit.points[1..] {
        if map
            .critical_points()
            .iter()
            .any(|&ck| (x - ck).abs() <= snap)
        {
            return Err(KneadError::AmbiguousAddress { x, tol: snap });
        }
        let s = address(map, x, snap)?;
        debug_assert!(!s.is_critical());
        symbols.push(s);
    }
    symbols.push(Symbol::C(which + 1));
    SymbolicSequence::periodic(m, symbols)
}

fn parse_block(s: &str, modality: usize) -> Result<SymbolicSequence> {
    let bad = |msg: String| KneadError::Unsupported(msg);
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        let mut index = 0usize;
        let mut digits = false;
        while i < chars.len() && chars[i].is_ascii_digit() {
            digits = true;
            index = index * 10 + chars[i].to_digit(10).unwrap() as usize;
            i += 1;
        }
        let sym = match (c, digits) {
            ('L', false) => Symbol::L,
            ('R', false) => Symbol::R,
            ('C', false) if modality == 1 => Symbol::C(1),
            ('C', true) => Symbol::C(index),
            ('M', true) => Symbol::M(index),
            ('C', false) => {
                return Err(bad(format!(
                    "bare C needs an index for a {modality}-modal map"
                )))
            }
            _ => return Err(bad(format!("unexpected symbol '{c}' in block \"{s}\""))),
        };
        out.push(sym);
    }
    if out.is_empty() {
        return Err(bad("empty symbol block".into()));
    }
    SymbolicSequence::periodic(modality, out)
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::L => write!(f, "L"),
            Symbol::R => write!(f, "R"),
            Symbol::M(i) => write!(f, "M{i}"),
            Symbol::C(i) => write!(f, "C{i}"),
        }
    }
}

impl fmt::Display for SymbolicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.block {
            match (s, self.modality) {
                (Symbol::C(1), 1) => write!(f, "C")?,
                _ => write!(f, "{s}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for SymbolicSequence {
    type Err = KneadError;
    fn from_str(s: &str) -> Result<Self> {
        // Modality inferred from the highest index present.
        let max_c = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|d| d.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        parse_block(s, max_c.max(1))
    }
}

#![allow(dead_code)] // helpers are shared across several test binaries

//! Shared test utilities: enumeration of admissible kneading data and the
//! independent brute-force oracles the closed forms are checked against.

use knead_core::symbols::{
    validate_kneading_data, KneadingData, Side, Strictness, Symbol, SymbolicSequence,
};
use num_bigint::BigInt;

/// All admissible unimodal kneading blocks of the exact period `p`.
pub fn admissible_unimodal(p: usize) -> Vec<KneadingData> {
    let mut out = Vec::new();
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
    out
}

pub fn admissible_unimodal_up_to(pmax: usize) -> Vec<KneadingData> {
    (1..=pmax).flat_map(admissible_unimodal).collect()
}

/// Independent one-sided symbol stream: unfolds the textual rule step by
/// step (substitute the neighbor lap symbol, follow the block, land on the
/// side the accumulated orientation dictates) without any closed forms.
pub fn oracle_one_sided_stream(
    data: &KneadingData,
    k: usize,
    side: Side,
    len: usize,
) -> Vec<Symbol> {
    let m = data.modality();
    let block = data.blocks()[k - 1].block();
    let p = block.len();
    let mut out = Vec::with_capacity(len);
    let mut side = side;
    while out.len() < len {
        let mut d: i8 = 1;
        let first = Symbol::neighbor_of_critical(k, side, m);
        out.push(first);
        d *= first.eps();
        for &s in &block[..p - 1] {
            out.push(s);
            d *= s.eps();
        }
        if d < 0 {
            side = match side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            };
        }
    }
    out.truncate(len);
    out
}

/// Direct theta expansion of a symbol stream: term j is the signed basis
/// vector `prod_{i<j} eps(S_i) * S_j` over `(L, M_1, ..., R)`.
pub fn oracle_theta_terms(stream: &[Symbol], m: usize) -> Vec<Vec<BigInt>> {
    let mut sign = 1i64;
    let mut out = Vec::with_capacity(stream.len());
    for &s in stream {
        let mut term = vec![BigInt::from(0); m + 1];
        if let Some(b) = s.basis_index(m) {
            term[b] = BigInt::from(sign);
        }
        out.push(term);
        sign *= i64::from(s.eps());
    }
    out
}

/// Brute-force signed lexicographic comparator on explicit theta terms,
/// expanded to `3 * max(p_a, p_b)` orders. A term compares by its signed
/// position in the refined order that keeps each critical symbol between
/// its neighbor laps.
pub fn oracle_compare(a: &SymbolicSequence, b: &SymbolicSequence) -> std::cmp::Ordering {
    let m = a.modality();
    let horizon = 3 * a.period().max(b.period()) + 3;
    let key = |seq: &SymbolicSequence| -> Vec<i64> {
        let mut sign = 1i64;
        let mut out = Vec::with_capacity(horizon);
        for j in 0..horizon {
            let s = seq.symbol_at(j).unwrap();
            // refined rank keeps C_i strictly between M_{i-1} and M_i
            out.push(sign * (s.rank(m) as i64 + 1));
            sign *= i64::from(s.eps());
        }
        out
    };
    key(a).cmp(&key(b))
}

#![allow(dead_code)]

//! Random mass generation and brute-force oracles shared by the integration
//! tests. The oracles work on raw bitmasks over the full powerset and do not
//! call into the combination code they check.

use overmass::{Frame, MassFunction, MassRange, Validation};
use rand::seq::index::sample;
use rand::Rng;

pub fn frame(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("t{i}"))).unwrap()
}

/// Nonnegative mass with 1..=max_focal distinct nonempty focal sets. Weights
/// are drawn from [0, 1.5) so totals land on both sides of 1; the range is
/// `[0, max(1, largest weight)]`.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &Frame, max_focal: usize) -> MassFunction {
    let subsets = (1usize << frame.len()) - 1;
    let count = rng.gen_range(1..=max_focal.min(subsets));
    let picks = sample(rng, subsets, count);
    let pairs: Vec<_> = picks
        .iter()
        .map(|i| {
            let set = frame.focal_from_bits(i as u32 + 1).unwrap();
            (set, rng.gen_range(0.0..1.5))
        })
        .collect();
    let hi = pairs.iter().map(|p| p.1).fold(1.0, f64::max);
    MassFunction::new(
        frame.clone(),
        pairs,
        MassRange::new(0.0, hi).unwrap(),
        Validation::Lenient,
    )
    .unwrap()
}

/// Classical mass (Σ = 1) with the same focal structure as `random_mass`.
pub fn random_classical<R: Rng>(rng: &mut R, frame: &Frame, max_focal: usize) -> MassFunction {
    loop {
        let m = random_mass(rng, frame, max_focal);
        let total = m.total();
        if total <= 1e-6 {
            continue;
        }
        let pairs: Vec<_> = m.entries().map(|(s, w)| (s, w / total)).collect();
        return MassFunction::new(
            frame.clone(),
            pairs,
            MassRange::CLASSICAL,
            Validation::Lenient,
        )
        .unwrap();
    }
}

/// Dense weight vector indexed by bitmask.
pub fn dense(m: &MassFunction) -> Vec<f64> {
    let n = m.frame().len();
    (0..1u32 << n)
        .map(|bits| m.weight(m.frame().focal_from_bits(bits).unwrap()))
        .collect()
}

/// m12(A) = Σ_{x ∩ y = A} m1(x) m2(y), over every pair of the powerset.
pub fn conjunctive_oracle(m1: &[f64], m2: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; m1.len()];
    for (x, a) in m1.iter().enumerate() {
        for (y, b) in m2.iter().enumerate() {
            out[x & y] += a * b;
        }
    }
    out
}

/// PCR5 written per target set A, summing over every X with X ∩ A = ∅:
/// m12(A) + Σ [ m1(A)² m2(X) / (m1(A) + m2(X)) + m2(A)² m1(X) / (m2(A) + m1(X)) ].
/// Fractions with a zero denominator are dropped; ∅ gets 0.
pub fn pcr5_oracle(m1: &[f64], m2: &[f64]) -> Vec<f64> {
    let conj = conjunctive_oracle(m1, m2);
    let mut out = vec![0.0; m1.len()];
    for a in 1..m1.len() {
        let mut v = conj[a];
        for x in 0..m1.len() {
            if x == a || x & a != 0 {
                continue;
            }
            let d1 = m1[a] + m2[x];
            if d1 != 0.0 {
                v += m1[a] * m1[a] * m2[x] / d1;
            }
            let d2 = m2[a] + m1[x];
            if d2 != 0.0 {
                v += m2[a] * m2[a] * m1[x] / d2;
            }
        }
        out[a] = v;
    }
    out
}

/// Bel(A) = Σ over nonempty X ⊆ A; Pl(A) = Σ over X with X ∩ A ≠ ∅.
pub fn belpl_oracle(m: &[f64], a: usize) -> (f64, f64) {
    let mut bel = 0.0;
    let mut pl = 0.0;
    for (x, w) in m.iter().enumerate() {
        if x != 0 && x & !a == 0 {
            bel += w;
        }
        if x & a != 0 {
            pl += w;
        }
    }
    (bel, pl)
}

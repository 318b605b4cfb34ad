#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_bn::fan::{Fan, Preset};
use toric_bn::lattice::LatticeVector;
use toric_bn::newton::LaurentCurve;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

/// A smooth fan: a minimal surface blown up `depth` times at random cones.
pub fn random_smooth_fan(rng: &mut impl Rng, depth: usize) -> Fan {
    let base = match rng.gen_range(0..3) {
        0 => Preset::P2,
        1 => Preset::P1xP1,
        _ => Preset::Hirzebruch(rng.gen_range(0..4)),
    };
    let mut fan = Fan::preset(base).unwrap();
    for _ in 0..depth {
        let i = rng.gen_range(0..fan.len());
        fan = fan.blow_up(i).unwrap();
    }
    fan
}

/// Between 2 and 7 distinct exponents in `[-r, r]^2`, coefficients in ±1..5.
pub fn random_curve(rng: &mut impl Rng, r: i64) -> LaurentCurve {
    loop {
        let n = rng.gen_range(2..=7);
        let mut pts: Vec<LatticeVector> = (0..n)
            .map(|_| v(rng.gen_range(-r..=r), rng.gen_range(-r..=r)))
            .collect();
        pts.sort();
        pts.dedup();
        if pts.len() < 2 {
            continue;
        }
        let terms: Vec<(LatticeVector, i64)> = pts
            .into_iter()
            .map(|m| {
                let a: i64 = rng.gen_range(1..=5);
                (m, if rng.gen_bool(0.5) { a } else { -a })
            })
            .collect();
        return LaurentCurve::from_integer_terms(terms).unwrap();
    }
}

/// A 2x2 integer matrix `[[a, b], [c, d]]`.
pub type Mat = [[i64; 2]; 2];

pub fn apply(a: &Mat, n: LatticeVector) -> LatticeVector {
    v(a[0][0] * n.x + a[0][1] * n.y, a[1][0] * n.x + a[1][1] * n.y)
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `(A^T)^{-1}` for `det A = ±1`.
pub fn inverse_transpose(a: &Mat) -> Mat {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    assert!(det == 1 || det == -1);
    [[det * a[1][1], -det * a[1][0]], [-det * a[0][1], det * a[0][0]]]
}

/// A random element of GL2(Z) with small entries, as a word in S, T and
/// the reflection swapping the coordinates.
pub fn random_gl2(rng: &mut impl Rng) -> Mat {
    let s: Mat = [[0, -1], [1, 0]];
    let t: Mat = [[1, 1], [0, 1]];
    let t_inv: Mat = [[1, -1], [0, 1]];
    let swap: Mat = [[0, 1], [1, 0]];
    let gens = [s, t, t_inv, swap];
    let mut m: Mat = [[1, 0], [0, 1]];
    for _ in 0..rng.gen_range(0..6) {
        m = mul(&m, gens.choose(rng).unwrap());
    }
    m
}

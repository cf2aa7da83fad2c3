#![allow(dead_code)]

use std::sync::Arc;

use mspotty::{ByteLayout, Code, Codeword, FiniteRing, Limits, RingElement};
use rand::rngs::StdRng;
use rand::Rng;

/// Rings exercised by the exhaustive property checks.
pub const RING_GRID: &[&str] = &[
    "Z2",
    "Z3",
    "Z4",
    "Z5",
    "Z6",
    "Z7",
    "Z8",
    "F(2,2;1,1,1)",
    "F(2,3;1,1,0,1)",
    "F(3,2;1,0,1)",
    "chain(2,1,2;0,1)",
    "chain(2,1,3;0,1)",
    "chain(3,1,2;0,1)",
    "Rk(1)",
    "Rk(2)",
    "GR(2,2,2;1,1,1)",
    "prod(Z2,Z3)",
];

pub fn ring(spec: &str) -> Arc<FiniteRing> {
    Arc::new(FiniteRing::parse(spec).unwrap_or_else(|e| panic!("{spec}: {e}")))
}

pub fn cw(v: &[u32]) -> Codeword {
    Codeword::from_indices(v)
}

pub fn ternary_code() -> Code {
    let layout = ByteLayout::new(3, 3, 2).unwrap();
    let rows = vec![vec![1, 0, 2, 2, 2, 0, 1, 0, 0], vec![0, 1, 1, 0, 1, 0, 0, 0, 0]];
    Code::from_indices(ring("Z3"), layout, &rows, &Limits::default()).unwrap()
}

pub fn senary_code() -> Code {
    let layout = ByteLayout::new(2, 3, 2).unwrap();
    let rows = vec![vec![1, 1, 1, 5, 4, 2], vec![0, 3, 0, 3, 3, 3], vec![0, 0, 3, 3, 0, 3]];
    Code::from_indices(ring("Z6"), layout, &rows, &Limits::default()).unwrap()
}

pub fn random_vector(rng: &mut StdRng, order: usize, len: usize) -> Vec<RingElement> {
    (0..len).map(|_| RingElement(rng.gen_range(0..order as u32))).collect()
}

/// Random code over `spec` with `1..=3` random rows and a random layout
/// whose ambient space has at most `max_space` vectors.
pub fn random_code(rng: &mut StdRng, spec: &str, max_space: u64) -> Code {
    let r = ring(spec);
    let order = r.order() as u64;
    let mut shapes = Vec::new();
    for b in 1..=4usize {
        for n in 1..=20usize {
            let space = order.checked_pow((n * b) as u32);
            if n * b >= 2 && space.is_some_and(|s| s <= max_space) {
                shapes.push((n, b));
            }
        }
    }
    assert!(!shapes.is_empty(), "{spec} admits no layout below {max_space}");
    let (n, b) = shapes[rng.gen_range(0..shapes.len())];
    let t = rng.gen_range(1..=b);
    let layout = ByteLayout::new(n, b, t).unwrap();
    let rows = rng.gen_range(1..=3);
    let generator = (0..rows)
        .map(|_| Codeword::new(random_vector(rng, r.order(), layout.len())))
        .collect();
    Code::span(r, layout, generator, &Limits::default()).unwrap()
}

pub fn pow(base: usize, exp: usize) -> u128 {
    (base as u128).pow(exp as u32)
}

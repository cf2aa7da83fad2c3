mod common;

use std::collections::BTreeSet;

use common::{pow, random_code, ring, senary_code, ternary_code};
use mspotty::codes::reverse_bytes;
use mspotty::{inner_product, ByteLayout, Code, FiniteRing, Limits, RingElement};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Dual under the ordinary coordinate-wise product, by direct enumeration.
fn standard_dual(code: &Code) -> BTreeSet<Vec<RingElement>> {
    let r: &FiniteRing = code.ring();
    let len = code.layout().len();
    let total = pow(r.order(), len) as u64;
    let mut out = BTreeSet::new();
    for idx in 0..total {
        let mut v = vec![RingElement::ZERO; len];
        let mut rest = idx;
        for slot in v.iter_mut().rev() {
            *slot = RingElement((rest % r.order() as u64) as u32);
            rest /= r.order() as u64;
        }
        let orthogonal = code.words().all(|c| {
            c.iter()
                .zip(&v)
                .fold(RingElement::ZERO, |acc, (&x, &y)| r.add(acc, r.mul(x, y)))
                .is_zero()
        });
        if orthogonal {
            out.insert(v);
        }
    }
    out
}

#[test]
fn worked_code_sizes() {
    let limits = Limits::default();
    let c = ternary_code();
    assert_eq!(c.len(), 9);
    assert_eq!(c.dual(&limits).unwrap().len(), 2187);
    let c = senary_code();
    assert_eq!(c.len(), 24);
    assert_eq!(c.dual(&limits).unwrap().len(), 1944);
}

#[test]
fn sample_word_is_in_the_ternary_code() {
    let c = ternary_code();
    assert!(c.contains(&common::cw(&[0, 1, 1, 0, 1, 0, 0, 0, 0])));
}

#[test]
fn dual_words_are_orthogonal_to_every_codeword() {
    let c = senary_code();
    let d = c.dual(&Limits::default()).unwrap();
    let r = c.ring();
    for v in d.words().step_by(37) {
        for w in c.words() {
            assert!(inner_product(r, c.layout(), w, v).unwrap().is_zero());
        }
    }
}

#[test]
fn duality_invariants_on_random_codes() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let limits = Limits::default();
    for spec in ["Z2", "Z4", "Z6", "F(2,2;1,1,1)", "chain(2,1,2;0,1)", "prod(Z2,Z3)", "GR(2,2,2;1,1,1)", "Rk(1)"] {
        for _ in 0..4 {
            let c = random_code(&mut rng, spec, 5000);
            let d = c.dual(&limits).unwrap();
            let space = pow(c.ring().order(), c.layout().len());
            assert_eq!((c.len() * d.len()) as u128, space, "{spec}");
            let dd = d.dual(&limits).unwrap();
            assert!(dd.same_words(&c), "(C⊥)⊥ != C over {spec}");
        }
    }
}

#[test]
fn reversed_dual_is_the_permuted_standard_dual() {
    let mut rng = StdRng::seed_from_u64(7);
    for spec in ["Z3", "Z4", "prod(Z2,Z3)"] {
        for _ in 0..3 {
            let c = random_code(&mut rng, spec, 800);
            let reversed: BTreeSet<Vec<RingElement>> =
                c.dual(&Limits::default()).unwrap().words().map(|w| w.to_vec()).collect();
            let permuted: BTreeSet<Vec<RingElement>> = standard_dual(&c)
                .into_iter()
                .map(|w| reverse_bytes(&w, c.layout()).into_inner())
                .collect();
            assert_eq!(reversed, permuted, "{spec}");
        }
    }
}

#[test]
fn spans_are_closed_submodules() {
    let mut rng = StdRng::seed_from_u64(11);
    for spec in ["Z6", "Z8", "F(3,2;1,0,1)", "Rk(2)"] {
        let c = random_code(&mut rng, spec, 20_000);
        let r = c.ring();
        let words: Vec<Vec<RingElement>> = c.words().map(|w| w.to_vec()).collect();
        assert!(c.contains(&vec![RingElement::ZERO; c.layout().len()]));
        for (i, a) in words.iter().enumerate().step_by(3) {
            for b in words.iter().skip(i).step_by(5) {
                let sum: Vec<RingElement> = a.iter().zip(b).map(|(&x, &y)| r.add(x, y)).collect();
                assert!(c.contains(&sum), "{spec}");
            }
            for s in r.elements() {
                let scaled: Vec<RingElement> = a.iter().map(|&x| r.mul(s, x)).collect();
                assert!(c.contains(&scaled), "{spec}");
            }
        }
    }
}

#[test]
fn span_is_deterministic_and_independent_of_row_order() {
    let r = ring("Z6");
    let layout = ByteLayout::new(2, 3, 2).unwrap();
    let rows = vec![vec![1, 1, 1, 5, 4, 2], vec![0, 3, 0, 3, 3, 3], vec![0, 0, 3, 3, 0, 3]];
    let mut reversed = rows.clone();
    reversed.reverse();
    let a = Code::from_indices(r.clone(), layout, &rows, &Limits::default()).unwrap();
    let b = Code::from_indices(r, layout, &reversed, &Limits::default()).unwrap();
    assert!(a.same_words(&b));
}

#[test]
fn parallel_dual_matches_a_sequential_sweep() {
    // 3^9 = 19683 vectors spans several sweep chunks
    let c = ternary_code();
    let d = c.dual(&Limits::default()).unwrap();
    let r = c.ring();
    let mut expected = Vec::new();
    let len = c.layout().len();
    for idx in 0..pow(3, len) as u64 {
        let mut v = vec![RingElement::ZERO; len];
        let mut rest = idx;
        for slot in v.iter_mut().rev() {
            *slot = RingElement((rest % 3) as u32);
            rest /= 3;
        }
        if c.generator().iter().all(|g| inner_product(r, c.layout(), g, &v).unwrap().is_zero()) {
            expected.push(v);
        }
    }
    let got: Vec<Vec<RingElement>> = d.words().map(|w| w.to_vec()).collect();
    assert_eq!(got, expected);
}

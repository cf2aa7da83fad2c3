mod common;

use common::{pow, random_code, ring, senary_code, ternary_code, RING_GRID};
use mspotty::macwilliams::{bytes_of_rt_weight, dual_enumerator, s_values_for_witness};
use mspotty::{
    distribution, enumerator, fourier_oracle, rt_weight, s_value, s_value_oracle, transform, v_table,
    verify_identity, weight_vector, ByteLayout, Code, EnumeratorPoly, FiniteRing, Limits, RingElement,
};
use num_bigint::{BigInt, BigUint};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Floating-point character sum, independent of the cyclotomic arithmetic.
fn float_sum(ring: &FiniteRing, witness: &[RingElement], k: usize) -> f64 {
    let b = witness.len();
    let m = ring.char_modulus() as f64;
    let mut total = 0.0;
    for idx in 0..pow(ring.order(), b) as u64 {
        let mut v = vec![RingElement::ZERO; b];
        let mut rest = idx;
        for slot in v.iter_mut() {
            *slot = RingElement((rest % ring.order() as u64) as u32);
            rest /= ring.order() as u64;
        }
        if rt_weight(&v) != k {
            continue;
        }
        let ip = (0..b).fold(RingElement::ZERO, |acc, i| ring.add(acc, ring.mul(witness[i], v[b - 1 - i])));
        total += (std::f64::consts::TAU * ring.char_exp(ip) as f64 / m).cos();
    }
    total
}

#[test]
fn closed_form_matches_every_witness() {
    let limits = Limits::default();
    for spec in RING_GRID {
        let r = ring(spec);
        for b in 1..=3 {
            if pow(r.order(), b) > 1 << 16 {
                continue;
            }
            for j in 0..=b {
                for witness in bytes_of_rt_weight(&r, b, j, &limits).unwrap() {
                    let sums = s_values_for_witness(&r, &witness, &limits).unwrap();
                    for (k, s) in sums.iter().enumerate() {
                        assert_eq!(s, &s_value(r.order() as u64, b, k, j).unwrap(), "{spec} b={b} k={k} j={j}");
                    }
                }
            }
        }
    }
}

#[test]
fn cyclotomic_oracle_agrees_with_floating_point() {
    for spec in ["Z6", "F(3,2;1,0,1)", "prod(Z2,Z3)", "GR(2,2,2;1,1,1)"] {
        let r = ring(spec);
        for j in 0..=2 {
            let w = mspotty::macwilliams::canonical_witness(&r, 2, j);
            for k in 0..=2 {
                let exact = s_value_oracle(&r, 2, k, j, &Limits::default()).unwrap();
                let approx = float_sum(&r, &w, k);
                assert!((approx - exact.to_string().parse::<f64>().unwrap()).abs() < 1e-6, "{spec}");
            }
        }
    }
}

#[test]
fn kernel_row_sums() {
    for l in 2..=9u64 {
        for b in 1..=5 {
            for t in 1..=b {
                let vt = v_table(l, b, t).unwrap();
                assert_eq!(vt.get(0).eval_at_one(), BigInt::from(l).pow(b as u32));
                for j in 1..=b {
                    assert!(vt.get(j).eval_at_one() == BigInt::from(0), "l={l} b={b} t={t} j={j}");
                }
            }
        }
    }
}

#[test]
fn fourier_sweep_matches_kernel_product() {
    let limits = Limits::default();
    let mut codes = vec![ternary_code(), senary_code()];
    let mut rng = StdRng::seed_from_u64(99);
    for spec in ["Z2", "Z4", "Z5", "F(2,2;1,1,1)", "chain(2,1,2;0,1)", "prod(Z2,Z3)"] {
        codes.push(random_code(&mut rng, spec, 46_656));
    }
    for code in &codes {
        let layout = code.layout();
        let vt = v_table(code.ring().order() as u64, layout.b(), layout.t()).unwrap();
        for c in code.words().step_by(code.len().div_ceil(12)) {
            let oracle = fourier_oracle(code.ring(), layout, c, &limits).unwrap();
            assert_eq!(oracle, vt.kernel_product(c, layout).unwrap(), "{}", code.ring().spec());
        }
    }
}

#[test]
fn senary_word_factorises() {
    let code = senary_code();
    let layout = code.layout();
    let c: Vec<RingElement> = [3, 0, 0, 0, 0, 3].iter().map(|&x| RingElement(x)).collect();
    assert_eq!(weight_vector(&c, layout).unwrap().alphas(), &[0, 1, 0, 1]);
    let vt = v_table(6, 3, 2).unwrap();
    let expected = vt.get(1).mul(vt.get(3));
    assert_eq!(fourier_oracle(code.ring(), layout, &c, &Limits::default()).unwrap(), expected);
}

#[test]
fn worked_dual_enumerators() {
    let w = dual_enumerator(&ternary_code()).unwrap();
    assert_eq!(w, EnumeratorPoly::from_i64(&[1, 10, 24, 116, 542, 846, 648]));
    let w = dual_enumerator(&senary_code()).unwrap();
    assert_eq!(w, EnumeratorPoly::from_i64(&[1, 4, 61, 528, 1350]));
}

#[test]
fn identity_and_involution_on_random_codes() {
    let limits = Limits::default();
    let mut rng = StdRng::seed_from_u64(2024);
    for spec in ["Z2", "Z3", "Z4", "Z6", "F(2,2;1,1,1)", "chain(2,1,2;0,1)", "Rk(1)", "GR(2,2,2;1,1,1)"] {
        for _ in 0..3 {
            let code = random_code(&mut rng, spec, 20_000);
            let report = verify_identity(&code, &limits).unwrap();
            assert!(report.holds(), "{spec}: {} vs {}", report.via_transform, report.via_dual);
            let space = BigInt::from(pow(code.ring().order(), code.layout().len()));
            assert_eq!(report.via_transform.eval_at_one(), space / BigInt::from(code.len()));
            assert!(report.via_transform.coeffs().iter().all(|c| c >= &BigInt::from(0)));

            let dual = code.dual(&limits).unwrap();
            let layout = code.layout();
            let vt = v_table(code.ring().order() as u64, layout.b(), layout.t()).unwrap();
            let back = transform(&distribution(&dual), &BigUint::from(dual.len()), &vt).unwrap();
            assert_eq!(back, report.weight_enumerator, "{spec}");
        }
    }
}

#[test]
fn t_equal_one_is_the_plain_rt_identity() {
    // with t = 1 every RT weight counts in full
    let limits = Limits::default();
    let code = ternary_code().with_t(1).unwrap();
    let report = verify_identity(&code, &limits).unwrap();
    assert!(report.holds());
    let vt = v_table(3, 3, 1).unwrap();
    for j in 0..=3 {
        let mut expected = EnumeratorPoly::zero();
        for k in 0..=3 {
            expected.add_term(&s_value(3, 3, k, j).unwrap(), k);
        }
        assert_eq!(vt.get(j), &expected);
    }
}

#[test]
fn trivial_codes() {
    let limits = Limits::default();
    let r = ring("Z4");
    let layout = ByteLayout::new(2, 2, 1).unwrap();
    let zero = Code::from_indices(r.clone(), layout, &[vec![0; 4]], &limits).unwrap();
    let report = verify_identity(&zero, &limits).unwrap();
    assert!(report.holds());
    assert_eq!(report.dual_card, BigUint::from(256u32));
    let full = Code::full_space(r, layout, &limits).unwrap();
    let report = verify_identity(&full, &limits).unwrap();
    assert!(report.holds());
    assert_eq!(report.via_transform, EnumeratorPoly::one());
    assert_eq!(enumerator(&distribution(&full)).eval_at_one(), BigInt::from(256));
}

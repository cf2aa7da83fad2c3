use mspotty::CycInt;
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_cyc(m: usize) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-20i64..20, m)
        .prop_map(|c| CycInt::from_coeffs(c.into_iter().map(BigInt::from).collect()))
}

fn arb_triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
    (1usize..13).prop_flat_map(|m| (arb_cyc(m), arb_cyc(m), arb_cyc(m)))
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative((a, b, c) in arb_triple()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn as_integer_is_additive(m in 1usize..13, x in -50i64..50, y in -50i64..50, e in 0i64..12) {
        // n + (1 + ζ + … + ζ^{M-1})·ζ^e is still the integer n for M > 1
        let full = (0..m as i64).fold(CycInt::zero(m), |acc, j| acc.add(&CycInt::root(m, j + e)).unwrap());
        let a = CycInt::from_integer(m, x).add(&full).unwrap();
        let b = CycInt::from_integer(m, y);
        let sum = a.add(&b).unwrap();
        if let (Some(ia), Some(ib)) = (a.as_integer(), b.as_integer()) {
            prop_assert_eq!(sum.as_integer(), Some(ia + ib));
        }
        if m > 1 {
            prop_assert_eq!(a.as_integer(), Some(BigInt::from(x)));
        }
    }

    #[test]
    fn single_roots_are_never_integers_beyond_order_two(m in 3usize..40, e in 1i64..40) {
        prop_assume!(e % m as i64 != 0);
        let z = CycInt::root(m, e);
        // ζ^e is rational only when it equals -1
        let is_minus_one = m % 2 == 0 && (e.rem_euclid(m as i64) as usize) == m / 2;
        prop_assert_eq!(z.as_integer().is_some(), is_minus_one);
    }
}

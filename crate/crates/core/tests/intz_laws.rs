use hilbert_core::arith::{binom, TruncSeries};
use hilbert_core::intz::{
    pair, pair_tensor, series_coproduct, IntZElement, SeriesTensor, TensorElement,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn element() -> impl Strategy<Value = IntZElement> {
    prop::collection::vec(-6i64..=6, 1..=5).prop_map(|cs| {
        IntZElement::from_coeffs(
            cs.into_iter()
                .enumerate()
                .map(|(n, c)| (n, BigInt::from(c))),
        )
    })
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(-5i64..=5, order).prop_map(move |cs| {
        let cs: Vec<BigInt> = cs.into_iter().map(BigInt::from).collect();
        TruncSeries::from_coeffs("u", order, &cs)
    })
}

proptest! {
    #[test]
    fn eval_is_a_ring_map(f in element(), g in element(), a in -5i64..=5) {
        let a = BigInt::from(a);
        prop_assert_eq!(f.mult(&g).unwrap().eval(&a), f.eval(&a) * g.eval(&a));
    }

    #[test]
    fn comult_is_substitution(f in element(), a in -5i64..=5, b in -5i64..=5) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        prop_assert_eq!(f.comult().eval(&a, &b), f.eval(&(&a + &b)));
    }

    #[test]
    fn antipode_negates_the_argument(f in element(), a in -5i64..=5) {
        let a = BigInt::from(a);
        prop_assert_eq!(f.antipode().unwrap().eval(&a), f.eval(&-a));
    }

    #[test]
    fn pairing_dualizes_the_product(f in element(), g in element(), s in series(11)) {
        let lhs = pair(&f.mult(&g).unwrap(), &s).unwrap();
        let rhs = pair_tensor(&TensorElement::pure(&f, &g), &series_coproduct(&s)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_dualizes_the_coproduct(f in element(), s in series(9), t in series(9)) {
        let lhs = pair_tensor(&f.comult(), &SeriesTensor::pure(&s, &t).unwrap()).unwrap();
        prop_assert_eq!(lhs, pair(&f, &s.mul(&t).unwrap()).unwrap());
    }

    #[test]
    fn frobenius_identity_on_combinations(f in element(), p in prop::sample::select(vec![2u32, 3, 5])) {
        prop_assert!(f.frobenius_mod_p_identity(p).unwrap());
    }
}

#[test]
fn filtration_is_a_bialgebra_filtration() {
    for m in 0..=10 {
        for n in 0..=10 - m {
            let p = IntZElement::basis(m).mult(&IntZElement::basis(n)).unwrap();
            assert!(p.fil_member(m + n));
            assert!(m + n == 0 || !p.fil_member(m + n - 1));
        }
        for (i, j) in IntZElement::basis(m).comult().coeffs().keys() {
            assert_eq!(i + j, m);
        }
    }
}

#[test]
fn group_likes() {
    let base = TruncSeries::from_coeffs("u", 9, &[BigInt::from(1), BigInt::from(1)]);
    for a in -4i64..=4 {
        let s = base.pow(a).unwrap();
        for n in 0..=8 {
            assert_eq!(
                pair(&IntZElement::basis(n), &s).unwrap(),
                binom(&BigInt::from(a), n)
            );
        }
    }
}

#[test]
fn pairing_rejects_short_series() {
    let s = TruncSeries::one("u", 3);
    assert!(pair(&IntZElement::basis(3), &s).is_err());
    assert_eq!(pair(&IntZElement::one(), &s).unwrap(), BigInt::from(1));
}

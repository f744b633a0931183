use hilbert_core::witt::kernel::check_subgroup;
use hilbert_core::witt::{
    kernel_enumerate, teichmuller, twisted_frobenius, CoeffRing, FrobeniusModel, KernelOptions,
    TruncationSet, WittVector,
};
use hilbert_core::Error;
use proptest::prelude::*;

fn zmod(m: i64) -> CoeffRing {
    CoeffRing::integers_mod(m.into()).unwrap()
}

fn vector(trunc: TruncationSet, ring: CoeffRing) -> impl Strategy<Value = WittVector> {
    let q: u64 = ring.cardinality().map_or(41, |c| c.try_into().unwrap());
    prop::collection::vec(0..q, trunc.len()).prop_map(move |digits| {
        let cs = digits
            .iter()
            .map(|&d| ring.from_i64(d as i64 - if q == 41 { 20 } else { 0 }))
            .collect();
        WittVector::new(trunc.clone(), ring.clone(), cs).unwrap()
    })
}

fn div6() -> TruncationSet {
    TruncationSet::divisors_of(6)
}

proptest! {
    #[test]
    fn ghost_is_a_ring_map_over_z(a in vector(div6(), CoeffRing::Integers), b in vector(div6(), CoeffRing::Integers)) {
        let r = CoeffRing::Integers;
        let sum: Vec<_> = a.ghost().iter().zip(b.ghost()).map(|(x, y)| r.add(x, &y)).collect();
        let prod: Vec<_> = a.ghost().iter().zip(b.ghost()).map(|(x, y)| r.mul(x, &y)).collect();
        prop_assert_eq!(a.add(&b).unwrap().ghost(), sum);
        prop_assert_eq!(a.mul(&b).unwrap().ghost(), prod);
    }

    #[test]
    fn additive_inverse(a in vector(div6(), zmod(9))) {
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn frobenius_is_a_ring_map(a in vector(div6(), zmod(8)), b in vector(div6(), zmod(8)), n in prop::sample::select(vec![2u64, 3, 6])) {
        let lhs = a.mul(&b).unwrap().frobenius(n).unwrap();
        prop_assert_eq!(lhs, a.frobenius(n).unwrap().mul(&b.frobenius(n).unwrap()).unwrap());
        let lhs = a.add(&b).unwrap().frobenius(n).unwrap();
        prop_assert_eq!(lhs, a.frobenius(n).unwrap().add(&b.frobenius(n).unwrap()).unwrap());
    }

    #[test]
    fn verschiebung_is_additive(a in vector(TruncationSet::divisors_of(3), zmod(9)), b in vector(TruncationSet::divisors_of(3), zmod(9))) {
        let s = div6();
        let lhs = a.add(&b).unwrap().verschiebung(2, &s).unwrap();
        prop_assert_eq!(lhs, a.verschiebung(2, &s).unwrap().add(&b.verschiebung(2, &s).unwrap()).unwrap());
    }

    #[test]
    fn teichmuller_is_multiplicative(r in 0u64..9, s in 0u64..9) {
        let ring = CoeffRing::finite_field(3, 2).unwrap();
        let t = div6();
        let (x, y) = (ring.element(r), ring.element(s));
        let lhs = teichmuller(x.clone(), &t, &ring).mul(&teichmuller(y.clone(), &t, &ring)).unwrap();
        prop_assert_eq!(lhs, teichmuller(ring.mul(&x, &y), &t, &ring));
    }

    #[test]
    fn twisted_specializations(a in vector(div6(), CoeffRing::finite_field(3, 2).unwrap())) {
        let ring = a.ring().clone();
        for n in [2u64, 3] {
            let f = a.frobenius(n).unwrap();
            let res = a.restrict(f.trunc()).unwrap();
            prop_assert_eq!(twisted_frobenius(n, &a, &ring.one(), FrobeniusModel::Truncating).unwrap(), f.sub(&res).unwrap());
            prop_assert_eq!(twisted_frobenius(n, &a, &ring.zero(), FrobeniusModel::Truncating).unwrap(), f);
        }
    }
}

#[test]
fn examples() {
    let z = CoeffRing::Integers;
    let s12 = TruncationSet::new([1, 2]).unwrap();
    let a = WittVector::from_ints(&s12, &z, &[1, 0]).unwrap();
    assert_eq!(
        a.add(&a).unwrap(),
        WittVector::from_ints(&s12, &z, &[2, -1]).unwrap()
    );
    let t = |r| teichmuller(z.from_i64(r), &s12, &z);
    assert_eq!(
        t(2).add(&t(3)).unwrap(),
        WittVector::from_ints(&s12, &z, &[5, -6]).unwrap()
    );
    let b = WittVector::from_ints(&s12, &z, &[0, 1]).unwrap();
    assert_eq!(b.frobenius(2).unwrap().fmt_coeffs(), "[2]");
    let one = TruncationSet::new([1]).unwrap();
    let x = WittVector::from_ints(&one, &z, &[7]).unwrap();
    assert_eq!(x.verschiebung(2, &s12).unwrap().fmt_coeffs(), "[0,7]");
    assert_eq!(
        x.verschiebung(2, &s12).unwrap().frobenius(2).unwrap(),
        x.add(&x).unwrap()
    );
}

#[test]
fn truncating_kernels() {
    let f2 = CoeffRing::finite_field(2, 1).unwrap();
    let s = TruncationSet::p_typical(2, 2);
    let k = |t: u64| {
        let t = f2.element(t);
        kernel_enumerate(
            &s,
            &f2,
            |a| twisted_frobenius(2, a, &t, FrobeniusModel::Truncating),
            true,
            &KernelOptions::default(),
        )
        .unwrap()
    };
    assert_eq!(k(1).len(), 4);
    let k0: Vec<String> = k(0).iter().map(WittVector::fmt_coeffs).collect();
    assert_eq!(k0, ["[0,0]", "[0,1]"]);
    let f4 = CoeffRing::finite_field(2, 2).unwrap();
    let one = f4.one();
    let k4 = kernel_enumerate(
        &s,
        &f4,
        |a| twisted_frobenius(2, a, &one, FrobeniusModel::Truncating),
        true,
        &KernelOptions::default(),
    )
    .unwrap();
    assert_eq!(k4.len(), 8);
    check_subgroup(&k4).unwrap();
}

#[test]
fn enumeration_order_is_schedule_independent() {
    let ring = zmod(4);
    let s = div6();
    let op = |a: &WittVector| a.frobenius(2);
    let seq = kernel_enumerate(
        &s,
        &ring,
        op,
        true,
        &KernelOptions {
            jobs: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let par = kernel_enumerate(
        &s,
        &ring,
        op,
        true,
        &KernelOptions {
            jobs: 4,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(seq, par);
    let small = KernelOptions { bound: 10, jobs: 1 };
    assert!(matches!(
        kernel_enumerate(&s, &ring, op, true, &small),
        Err(Error::BoundExceeded { .. })
    ));
}

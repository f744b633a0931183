use hilbert_core::filtration::drinfeld::{additive_law_holds, group_law_holds};
use hilbert_core::filtration::{
    divided_power_presentation, drinfeld_presentation, rees_weight_rank, swap_permutation,
    FilteredModule, FilteredRing,
};
use hilbert_core::linalg::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// A direct sum of trivial filtrations `L_p Z`, for `p` in `ps`.
fn sum_of_trivials(ps: &[i64]) -> FilteredModule {
    let rank = ps.len();
    let lo = *ps.iter().min().unwrap();
    let hi = *ps.iter().max().unwrap();
    let pieces = (lo..=hi)
        .map(|n| {
            let cols: Vec<Vec<BigInt>> = ps
                .iter()
                .enumerate()
                .filter(|(_, &p)| p >= n)
                .map(|(i, _)| (0..rank).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect();
            IntMatrix::from_columns(rank, &cols)
        })
        .collect();
    FilteredModule::from_pieces(rank, lo, pieces).unwrap()
}

fn module() -> impl Strategy<Value = FilteredModule> {
    prop::collection::vec(-3i64..=3, 1..=3).prop_map(|ps| sum_of_trivials(&ps))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn day_tensor_is_unital(x in module()) {
        prop_assert!(FilteredModule::unit().day_tensor(&x).same_filtration(&x, None));
        prop_assert!(x.day_tensor(&FilteredModule::unit()).same_filtration(&x, None));
    }

    #[test]
    fn day_tensor_is_commutative(x in module(), y in module()) {
        let perm = swap_permutation(x.rank(), y.rank());
        prop_assert!(x.day_tensor(&y).same_filtration(&y.day_tensor(&x), Some(&perm)));
    }

    #[test]
    fn day_tensor_is_associative(x in module(), y in module(), z in module()) {
        let l = x.day_tensor(&y).day_tensor(&z);
        let r = x.day_tensor(&y.day_tensor(&z));
        prop_assert!(l.same_filtration(&r, None));
    }

    #[test]
    fn shifts_add(x in module(), y in module(), k in -2i64..=2, l in -2i64..=2) {
        let lhs = x.shift(k).day_tensor(&y.shift(l));
        prop_assert!(lhs.same_filtration(&x.day_tensor(&y).shift(k + l), None));
    }

    #[test]
    fn graded_ranks_sum_to_rank(x in module(), y in module()) {
        let t = x.day_tensor(&y);
        let gr = t.associated_graded().unwrap();
        prop_assert_eq!(gr.values().sum::<usize>(), t.rank());
    }
}

#[test]
fn rees_specializations_through_weight_10() {
    let ring = FilteredRing::int_z(10).unwrap();
    let rees = ring.rees().unwrap();
    rees.check_homogeneous().unwrap();
    rees.check_associative().unwrap();
    assert_eq!(rees.specialize(&BigInt::from(1)), ring.underlying());
    assert_eq!(
        rees.specialize(&BigInt::from(0)),
        ring.associated_graded().unwrap()
    );
    assert_eq!(
        ring.associated_graded().unwrap(),
        divided_power_presentation(10).unwrap()
    );
    for n in 0..=10 {
        assert_eq!(rees_weight_rank(&ring, n), n as usize + 1);
    }
}

#[test]
fn drinfeld_matches_rees_through_weight_8() {
    assert_eq!(
        drinfeld_presentation(8).unwrap(),
        FilteredRing::int_z(8).unwrap().rees().unwrap()
    );
}

#[test]
fn degree_filtration_graded_ranks() {
    let gr = FilteredModule::degree_filtration(5)
        .associated_graded()
        .unwrap();
    assert!(gr.values().all(|&r| r == 1));
    assert_eq!(gr.len(), 6);
}

#[test]
fn group_law_samples() {
    let q = |n: i64| BigRational::from_integer(BigInt::from(n));
    for a in -3..=3 {
        for t in -3..=3 {
            assert!(group_law_holds(&q(a), &q(t), 7));
            for b in -3..=3 {
                for n in 0..=6 {
                    assert!(additive_law_holds(n, &q(a), &q(b), &q(t)));
                }
            }
        }
    }
}

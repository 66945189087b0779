use nbk_core::scalar::{rat, Cyclotomic, CyclotomicField, PhasedScalar};
use proptest::prelude::*;

fn field() -> CyclotomicField {
    CyclotomicField::new(24).unwrap()
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0i64..24, -4i64..=4, 1i64..=3), 1..4).prop_map(|terms| {
        let f = field();
        terms.into_iter().fold(f.zero(), |acc, (k, n, d)| &acc + &f.zeta_pow(k).scale(&rat(n, d)))
    })
}

fn phased() -> impl Strategy<Value = PhasedScalar> {
    prop::collection::vec((-6i64..=6, 1i64..=6, cyclotomic()), 1..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(PhasedScalar::zero(), |acc, (n, d, c)| &acc + &PhasedScalar::phased(rat(n, d), c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(x in phased(), y in phased(), z in phased()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    }

    #[test]
    fn conjugation(x in phased(), y in phased()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn zero_difference_means_equal_representation(x in phased(), y in phased()) {
        prop_assert_eq!((&x - &y).is_zero(), x == y);
        prop_assert!((&x - &x).is_empty());
    }

    #[test]
    fn cyclotomic_field_laws(x in cyclotomic(), y in cyclotomic()) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!((&x - &y).is_zero(), x == y);
    }
}

#[test]
fn roots_pair_to_one() {
    let f = field();
    for m in [1u32, 2, 3, 4, 6, 8, 12, 24] {
        for k in 0..m as i64 {
            let a = f.root(m, k).unwrap();
            let b = f.root(m, m as i64 - k).unwrap();
            assert!((&a * &b).is_one(), "root({m},{k})");
        }
    }
}

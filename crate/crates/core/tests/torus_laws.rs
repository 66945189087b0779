use nbk_core::nctorus::{Monomial, ThetaEntry, ThetaMatrix, Torus};
use nbk_core::sampling::Sampler;
use nbk_core::scalar::{rat, CyclotomicField};
use proptest::prelude::*;

fn mixed() -> Torus {
    let theta = ThetaMatrix::zero(3)
        .with(0, 1, ThetaEntry::constant(rat(1, 2)))
        .with(0, 2, ThetaEntry::free())
        .with(1, 2, ThetaEntry::new(rat(1, 3), rat(-1, 1)));
    Torus::new(theta, CyclotomicField::new(24).unwrap()).unwrap()
}

fn tori() -> Vec<Torus> {
    let f = CyclotomicField::new(24).unwrap();
    vec![Torus::new(ThetaMatrix::paper_3d(), f).unwrap(), mixed(), Torus::new(ThetaMatrix::paper_2d(), f).unwrap()]
}

fn monomial(dim: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-2i64..=2, dim).prop_map(Monomial)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associativity(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for t in tori() {
            let (x, y, z) = (s.torus_element(&t, 2, 3), s.torus_element(&t, 2, 3), s.torus_element(&t, 2, 3));
            let lhs = t.mul(&t.mul(&x, &y).unwrap(), &z).unwrap();
            let rhs = t.mul(&x, &t.mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn star_laws(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        for t in tori() {
            let (x, y) = (s.torus_element(&t, 2, 3), s.torus_element(&t, 2, 3));
            prop_assert_eq!(t.star(&t.star(&x)), x.clone());
            prop_assert_eq!(t.star(&t.mul(&x, &y).unwrap()), t.mul(&t.star(&y), &t.star(&x)).unwrap());
            let m = s.monomial(t.dim(), 2);
            let u = t.monomial(&m.0).unwrap();
            prop_assert_eq!(t.mul(&u, &t.star(&u)).unwrap(), t.one());
        }
    }

    #[test]
    fn bicharacter(m in monomial(3), m2 in monomial(3), n in monomial(3), n2 in monomial(3)) {
        let theta = mixed().theta().clone();
        let sum_m = &m + &m2;
        let sum_n = &n + &n2;
        prop_assert_eq!(theta.bicharacter(&sum_m, &n), theta.bicharacter(&m, &n).mul(&theta.bicharacter(&m2, &n)));
        prop_assert_eq!(theta.bicharacter(&m, &sum_n), theta.bicharacter(&m, &n).mul(&theta.bicharacter(&m, &n2)));
        prop_assert!(theta.bicharacter(&m, &n).mul(&theta.bicharacter(&n, &m)).is_one());
    }
}

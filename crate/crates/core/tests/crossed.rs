use nbk_core::actions::Family;
use nbk_core::crossed::*;
use nbk_core::sampling::Sampler;
use nbk_core::scalar::{rat, CyclotomicField, Phase};

fn field() -> CyclotomicField {
    CyclotomicField::new(24).unwrap()
}

fn products(family: Family) -> [CrossedProduct; 2] {
    [
        rotation_crossed_product(family, field(), None).unwrap(),
        torus3_crossed_product(family, field(), None).unwrap(),
    ]
}

#[test]
fn algebra_laws() {
    for f in Family::CYCLIC_ORIENTABLE {
        for cp in products(f) {
            let mut s = Sampler::new(0xc0ffee);
            assert_eq!(cp.pow(&cp.p(), cp.order()).unwrap(), cp.one(), "{f}");
            for _ in 0..30 {
                let (x, y, z) = (s.crossed_element(&cp, 2, 3), s.crossed_element(&cp, 2, 3), s.crossed_element(&cp, 2, 3));
                let xy = cp.mul(&x, &y).unwrap();
                assert_eq!(cp.mul(&xy, &z).unwrap(), cp.mul(&x, &cp.mul(&y, &z).unwrap()).unwrap(), "{f}");
                assert_eq!(cp.star(&cp.star(&x).unwrap()).unwrap(), x, "{f}");
                let rhs = cp.mul(&cp.star(&y).unwrap(), &cp.star(&x).unwrap()).unwrap();
                assert_eq!(cp.star(&xy).unwrap(), rhs, "{f}");
            }
        }
    }
}

#[test]
fn beta_hat_is_an_automorphism_of_order_n() {
    for f in Family::CYCLIC_ORIENTABLE {
        for cp in products(f) {
            let mut s = Sampler::new(99);
            for _ in 0..30 {
                let (x, y) = (s.crossed_element(&cp, 2, 3), s.crossed_element(&cp, 2, 3));
                let lhs = cp.beta_hat(&cp.mul(&x, &y).unwrap()).unwrap();
                let rhs = cp.mul(&cp.beta_hat(&x).unwrap(), &cp.beta_hat(&y).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{f}");
                let mut z = x.clone();
                for _ in 0..cp.order() {
                    z = cp.beta_hat(&z).unwrap();
                }
                assert_eq!(z, x, "{f}");
            }
        }
    }
}

#[test]
fn k0_projections() {
    for f in Family::CYCLIC_ORIENTABLE {
        let k0 = K0Generators::new(f, field(), None).unwrap();
        let cp = &k0.product;
        for i in 0..k0.rank() {
            if let Some(e) = k0.element(i).unwrap() {
                assert!(is_projection(cp, &e).unwrap(), "{f} {}", k0.labels[i]);
            }
        }
        for (name, qs) in k0.all_projectors().unwrap() {
            assert!(qs.iter().all(|q| is_projection(cp, q).unwrap()), "{f} {name}");
            assert!(spectral_completeness(cp, &qs).unwrap(), "{f} {name}");
        }
    }
}

#[test]
fn beta_hat_shifts_spectral_projections() {
    for f in Family::CYCLIC_ORIENTABLE {
        let k0 = K0Generators::new(f, field(), None).unwrap();
        let cp = &k0.product;
        let n = cp.order() as i64;
        for g in &k0.spectral {
            let j = g.element.terms().next().unwrap().0 .1 as i64;
            for m in 0..n {
                let image = cp.beta_hat(&q_projector(cp, m, &g.element).unwrap()).unwrap();
                assert_eq!(image, q_projector(cp, m - j, &g.element).unwrap(), "{f} {} Q{m}", g.name);
            }
        }
    }
}

#[test]
fn order_two_projections_flip() {
    let k0 = K0Generators::new(Family::B2, field(), None).unwrap();
    let cp = &k0.product;
    for i in 1..5 {
        let e = k0.element(i).unwrap().unwrap();
        assert_eq!(cp.beta_hat(&e).unwrap(), &cp.one() - &e, "{}", k0.labels[i]);
    }
}

#[test]
fn printed_generators_with_phase_defects() {
    let b3 = K0Generators::new(Family::B3, field(), None).unwrap();
    let b6 = K0Generators::new(Family::B6, field(), None).unwrap();
    let defect = |k0: &K0Generators, name: &str| k0.spectral.iter().find(|g| g.name == name).unwrap().check.clone();
    assert_eq!(
        defect(&b3, "Y"),
        RootCheck::PhaseDefect { residual: Phase::theta_power(rat(-2, 1)), correction: Phase::theta_power(rat(2, 3)) }
    );
    assert_eq!(
        defect(&b6, "exp(pi i/3) Vp^2"),
        RootCheck::PhaseDefect { residual: Phase::new(rat(1, 1), rat(-1, 1)), correction: Phase::new(rat(5, 3), rat(1, 3)) }
    );
    assert_eq!(b3.root_anomalies().len(), 1);
    assert_eq!(b6.root_anomalies().len(), 1);
    assert!(K0Generators::new(Family::B4, field(), None).unwrap().root_anomalies().is_empty());
}

#[test]
fn hex_readings() {
    let cp = rotation_crossed_product(Family::B6, field(), None).unwrap();
    assert_eq!(hex_reading_laws(&cp, HexReading::Sixth).unwrap(), (true, true, true));
    assert_eq!(hex_reading_laws(&cp, HexReading::Third).unwrap(), (true, false, false));
}

#[test]
fn morita_small_families() {
    for f in [Family::B2, Family::B3] {
        let cp = torus3_crossed_product(f, field(), None).unwrap();
        for c in verify_morita(&cp, 3, 10, 20, 2).unwrap() {
            assert!(c.passed(), "{c}");
        }
    }
}

#[test]
fn exchange_rules() {
    for f in Family::CYCLIC_ORIENTABLE {
        for c in verify_exchange_iso(f, field(), 2).unwrap() {
            assert!(c.passed(), "{c}");
        }
    }
}

#[test]
fn traces() {
    let b2 = rotation_crossed_product(Family::B2, field(), None).unwrap();
    for t in TraceFunctional::tau_all() {
        for c in verify_trace_laws(&b2, &t, 5, 40, 2).unwrap() {
            assert!(c.passed(), "{c}");
        }
    }
    for f in Family::CYCLIC_ORIENTABLE {
        let cp = rotation_crossed_product(f, field(), None).unwrap();
        for c in verify_trace_laws(&cp, &TraceFunctional::canonical(cp.order()), 5, 40, 2).unwrap() {
            assert!(c.passed(), "{c}");
        }
    }
}

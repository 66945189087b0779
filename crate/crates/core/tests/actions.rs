use nbk_core::actions::{candidate_matrix, scan_cocycles, Family, GroupAction};
use nbk_core::nctorus::{ThetaMatrix, Torus, TorusElement};
use nbk_core::sampling::Sampler;
use nbk_core::scalar::{rat, CyclotomicField, Phase};

/// The twisted action where the family has one, else the classical action at
/// the first admissible pattern.
fn action(family: Family) -> GroupAction {
    let field = CyclotomicField::new(24).unwrap();
    match family.twisted_spec() {
        Ok(spec) => GroupAction::from_spec(&spec, &Torus::new(ThetaMatrix::paper_3d(), field).unwrap()).unwrap(),
        Err(_) => {
            let scan = scan_cocycles(family, 6).unwrap();
            let values = scan.admissible.iter().next().unwrap();
            let torus = Torus::new(candidate_matrix(family, values), field).unwrap();
            GroupAction::from_spec(&family.classical_spec(), &torus).unwrap()
        }
    }
}

#[test]
fn admissible_patterns_are_actions() {
    for f in Family::ALL {
        let scan = scan_cocycles(f, 6).unwrap();
        assert!(!scan.admissible.is_empty(), "{f}");
        for values in &scan.admissible {
            let torus = Torus::new(candidate_matrix(f, values), CyclotomicField::new(24).unwrap()).unwrap();
            let a = GroupAction::from_spec(&f.classical_spec(), &torus).unwrap();
            assert!(a.check_order().is_ok(), "{f} {values:?}");
            assert!(a.check_compatibility(3).is_ok(), "{f} {values:?}");
        }
    }
}

#[test]
fn b4_and_n1_patterns() {
    let b4 = scan_cocycles(Family::B4, 6).unwrap();
    assert!(b4.matches_published(), "{}", b4.pattern());
    let halves = [rat(0, 1), rat(1, 2)];
    assert!(b4.admissible.iter().all(|v| v[0] == v[1] && halves.contains(&v[0])));
    let n1 = scan_cocycles(Family::N1, 6).unwrap();
    assert!(n1.matches_published(), "{}", n1.pattern());
    assert_eq!(n1.admissible.len(), 4);
}

#[test]
fn coarse_grid_is_a_restriction() {
    let fine = scan_cocycles(Family::B2, 6).unwrap();
    let coarse = scan_cocycles(Family::B2, 2).unwrap();
    let halves: Vec<_> = fine
        .admissible
        .iter()
        .filter(|v| v.iter().all(|q| *q.denom() <= 2.into()))
        .cloned()
        .collect();
    assert_eq!(coarse.admissible.into_iter().collect::<Vec<_>>(), halves);
}

#[test]
fn homogeneous_decomposition() {
    for f in Family::ALL {
        let a = action(f);
        let mut s = Sampler::new(0x5eed ^ f.order() as u64);
        for g in a.generators() {
            let lambda = a.generators()[0].torus().scalar(&g.lambda()).unwrap();
            for _ in 0..100 / a.generators().len() {
                let x = s.torus_element(g.torus(), 2, 3);
                let parts = g.homogeneous_components(&x).unwrap();
                let sum = parts.iter().fold(TorusElement::zero(x.dim()), |acc, p| &acc + p);
                assert_eq!(sum, x, "{f}");
                let mut power = g.torus().scalar(&Phase::one()).unwrap();
                for p in &parts {
                    assert_eq!(g.apply(p).unwrap(), p.scale(&power), "{f}");
                    power = &power * &lambda;
                }
            }
        }
    }
}

#[test]
fn action_respects_the_involution() {
    for f in Family::ALL {
        let a = action(f);
        let mut s = Sampler::new(17);
        for g in a.generators() {
            let t = g.torus();
            for _ in 0..20 {
                let x = s.torus_element(t, 2, 3);
                assert_eq!(g.apply(&t.star(&x)).unwrap(), t.star(&g.apply(&x).unwrap()), "{f}");
            }
        }
    }
}

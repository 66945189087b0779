use nbk_core::actions::Family;
use nbk_core::check::Status;
use nbk_core::ktheory::*;
use nbk_core::scalar::{rat, CyclotomicField, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-5i64..=5, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

fn group(free: usize, torsion: &[i64]) -> AbelianGroup {
    AbelianGroup::from_cyclic(free, torsion)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_agrees_with_determinantal_divisors(m in matrix()) {
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.diagonal(), divisor_chain_by_minors(&m));
        prop_assert!(f.u.is_unimodular());
        prop_assert!(f.v.is_unimodular());
        let prod = f.u.checked_mul(&m).unwrap().checked_mul(&f.v).unwrap();
        prop_assert_eq!(&prod, &f.s);
        let (ker, coker) = kernel_cokernel(&m);
        prop_assert_eq!(ker.free_rank + f.rank(), m.cols());
        prop_assert_eq!(coker.free_rank + f.rank(), m.rows());
    }

    #[test]
    fn snf_is_deterministic(m in matrix()) {
        prop_assert_eq!(smith_normal_form(&m), smith_normal_form(&m.clone()));
    }
}

#[test]
fn snf_examples() {
    let id = IntMatrix::identity(4);
    assert_eq!(smith_normal_form(&id).s, id);
    let d = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
    assert_eq!(smith_normal_form(&d).diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    let b2 = beta_star_matrix(Family::B2, 1).unwrap();
    let chain: Vec<i64> = smith_normal_form(&b2.matrix).diagonal().iter().map(|v| i64::try_from(v).unwrap()).collect();
    assert_eq!(chain, vec![1, 1, 2, 2, 0, 0]);
}

#[test]
fn kernel_cokernel_examples() {
    assert_eq!(kernel_cokernel(&IntMatrix::zero(2, 2)), (AbelianGroup::free(2), AbelianGroup::free(2)));
    let three = IntMatrix::from_rows(&[vec![3]]).unwrap();
    assert_eq!(kernel_cokernel(&three), (AbelianGroup::trivial(), group(0, &[3])));
    let b2 = beta_star_matrix(Family::B2, 1).unwrap();
    assert_eq!(kernel_cokernel(&b2.matrix), (AbelianGroup::free(2), group(2, &[2, 2])));
}

#[test]
fn k_groups() {
    let expected = [
        (Family::B2, group(2, &[2, 2])),
        (Family::B3, group(2, &[3])),
        (Family::B4, group(2, &[2])),
        (Family::B6, group(2, &[])),
    ];
    for (f, k0) in expected {
        let (a, b) = pv_solve(&beta_star_matrix(f, 1).unwrap()).unwrap();
        assert_eq!((a, b), (k0, AbelianGroup::free(2)), "{f}");
    }
    assert_eq!(
        pv_solve(&beta_star_matrix(Family::B2, 1).unwrap()).unwrap(),
        pv_solve(&beta_star_matrix(Family::B2, -1).unwrap()).unwrap()
    );
}

#[test]
fn beta_star_layers() {
    for f in Family::CYCLIC_ORIENTABLE {
        for eps in [1, -1] {
            let checks = verify_beta_star(f, eps, CyclotomicField::new(24).unwrap()).unwrap();
            for c in &checks {
                assert_ne!(c.status, Status::Fail, "{c}");
            }
            let anomalies = checks.iter().filter(|c| c.status == Status::Anomaly).count();
            assert_eq!(anomalies, if f == Family::B2 { 3 } else { 0 }, "{f}");
        }
    }
}

#[test]
fn b2_table_example() {
    let data = beta_star_matrix(Family::B2, 1).unwrap();
    let table = TraceTable::published(1);
    let tau00: Rational =
        data.beta_star().column(5).iter().zip(&table.tau_jk[0]).map(|(b, t)| t * b.clone()).sum();
    assert_eq!(tau00, rat(-1, 1));
    assert_eq!(table.tau_jk[0][5], rat(1, 1));
}

#[test]
fn implied_column_under_the_closed_formula() {
    let data = beta_star_matrix(Family::B2, 1).unwrap();
    let k0 = nbk_core::crossed::K0Generators::new(Family::B2, CyclotomicField::new(24).unwrap(), None).unwrap();
    let (_, taus) = element_trace_rows(&k0).unwrap();
    let mut table = TraceTable::published(1);
    for (r, row) in table.tau_jk.iter_mut().enumerate() {
        row[..5].clone_from_slice(&taus[r][..5]);
    }
    let column = implied_exotic_column(&data, &table).unwrap();
    assert_eq!(column, [0, -1, -1, 1, 1, 1].map(|v| rat(v, 1)).to_vec());
    let lemma: Vec<_> = data.beta_star().column(5).iter().map(|v| Rational::from_integer(v.clone())).collect();
    assert_eq!(implied_exotic_column(&data, &TraceTable::published(1)).unwrap(), lemma);
}

#[test]
fn fixtures() {
    for f in Family::CYCLIC_ORIENTABLE {
        let data = beta_star_matrix(f, 1).unwrap();
        let expected = if f == Family::B2 { FixtureComparison::BasisTransposition(2, 3) } else { FixtureComparison::Identical };
        assert_eq!(compare_with_fixture(&data).unwrap(), expected, "{f}");
        assert_eq!(fixture_labels(fixture_source(f).unwrap()), data.labels);
    }
}

#[test]
fn homology() {
    let expected = [
        (Family::B2, group(1, &[2, 2])),
        (Family::B3, group(1, &[3])),
        (Family::B4, group(1, &[2])),
        (Family::B6, group(1, &[])),
    ];
    for (f, h1) in expected {
        assert_eq!(bieberbach_h1(f).unwrap(), h1, "{f}");
        assert!(compare_with_k0(f).unwrap().0, "{f}");
    }
    let a = holonomy(Family::B2).unwrap();
    assert_eq!(a, IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]).unwrap());
    assert!(bieberbach_h1(Family::N1).is_err());
}

#[test]
fn folded_theta_reproduces_the_groups() {
    let theta = rat(1, 5);
    for f in Family::CYCLIC_ORIENTABLE {
        let sym = k_groups_from_elements(f, 1, CyclotomicField::new(24).unwrap(), None).unwrap();
        let fold = k_groups_from_elements(f, 1, CyclotomicField::new(120).unwrap(), Some(&theta)).unwrap();
        assert!(sym.projections && fold.projections, "{f}");
        assert_eq!(sym.data.matrix, fold.data.matrix, "{f}");
        assert_eq!((sym.k0, sym.k1), (fold.k0, fold.k1), "{f}");
    }
}

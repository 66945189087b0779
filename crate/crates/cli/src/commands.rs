use nbk_core::actions::{scan_cocycles, slot_name, Family};
use nbk_core::check::{Check, Counterexample};
use nbk_core::ktheory::{
    beta_star_matrix, k_groups_from_elements, pv_solve, smith_normal_form, structural_checks, divisor_chain_by_minors,
};
use nbk_core::scalar::{CyclotomicField, Rational};
use num_integer::Integer;
use serde_json::{json, Value};

use crate::report::{group_json, small, matrix_json, matrix_rows, Config, Report, Table};
use crate::suites::{expected_rows, run, scan_check, scan_notes, Params, Suite};
use crate::Common;

pub type CommandResult = std::result::Result<Report, String>;

const ORDER_VAR: &str = "NBK_CYCLOTOMIC_ORDER";
const DEFAULT_ORDER: u32 = 24;

/// Base order from the environment, enlarged so a fixed θ = a/d folds exactly.
fn cyclotomic_order(theta: Option<&Rational>) -> std::result::Result<u32, String> {
    let base = match std::env::var(ORDER_VAR) {
        Ok(v) => v.trim().parse::<u32>().map_err(|_| format!("{ORDER_VAR} must be a positive integer, got `{v}`"))?,
        Err(_) => DEFAULT_ORDER,
    };
    if base == 0 {
        return Err(format!("{ORDER_VAR} must be positive"));
    }
    match theta {
        None => Ok(base),
        Some(q) => {
            let d = u32::try_from(q.denom().clone()).map_err(|_| format!("theta denominator {} is too large", q.denom()))?;
            d.checked_mul(12).map(|m| base.lcm(&m)).ok_or_else(|| "theta denominator is too large".to_string())
        }
    }
}

fn field(c: &Common) -> std::result::Result<CyclotomicField, String> {
    CyclotomicField::new(cyclotomic_order(c.theta.as_ref())?).map_err(|e| e.to_string())
}

fn new_report(command: String, c: &Common, f: &CyclotomicField) -> Report {
    Report::new(
        command,
        Config {
            seed: c.seed,
            samples: c.samples,
            degree: c.degree,
            cyclotomic_order: f.order(),
            theta: c.theta.as_ref().map_or_else(|| "symbolic".to_string(), ToString::to_string),
        },
    )
}

fn row_strings(rows: impl IntoIterator<Item = Vec<Rational>>) -> Vec<Value> {
    rows.into_iter()
        .map(|r| Value::from(r.iter().map(ToString::to_string).collect::<Vec<_>>()))
        .collect()
}

pub fn scan(c: &Common, family: Option<Family>, denominator: u32) -> CommandResult {
    if denominator == 0 {
        return Err("denominator must be positive".into());
    }
    let families: Vec<Family> = family.map_or_else(|| Family::ALL.to_vec(), |f| vec![f]);
    let f = field(c)?;
    let target = family.map_or_else(String::new, |f| format!(" --family {f}"));
    let mut report = new_report(format!("scan{target} --denominator {denominator}"), c, &f);
    let mut out = serde_json::Map::new();
    for fam in &families {
        let r = scan_cocycles(*fam, denominator).map_err(|e| e.to_string())?;
        report.push(scan_check(&r));
        let expected = expected_rows(*fam, denominator);
        report.tables.push(Table::Rows {
            title: format!("{fam}: {}", r.pattern()),
            header: r.fixed_slots.iter().map(|s| slot_name(*s)).collect(),
            rows: r.admissible.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect(),
        });
        out.insert(
            fam.to_string(),
            json!({
                "pattern": r.pattern(),
                "admissible": row_strings(r.admissible.iter().cloned()),
                "expected": row_strings(expected),
            }),
        );
    }
    scan_notes(&mut report, &families);
    report.payload = Value::Object(out);
    Ok(report)
}

pub fn ktheory(c: &Common, family: Family, epsilon: Option<i64>) -> CommandResult {
    if !Family::CYCLIC_ORIENTABLE.contains(&family) {
        return Err(format!("{family} has no cyclic crossed product; choose one of B2, B3, B4, B6"));
    }
    let eps = epsilon.unwrap_or(1);
    let f = field(c)?;
    let mut command = format!("ktheory {family}");
    if family == Family::B2 {
        command.push_str(&format!(" --epsilon {eps:+}"));
    }
    let mut report = new_report(command, c, &f);
    let data = beta_star_matrix(family, eps).map_err(|e| e.to_string())?;
    let (k0, k1) = pv_solve(&data).map_err(|e| e.to_string())?;
    report.extend(structural_checks(&data).map_err(|e| e.to_string())?);

    let m = data.matrix.clone();
    let snf = smith_normal_form(&m);
    let certified = snf.u.is_unimodular()
        && snf.v.is_unimodular()
        && snf.u.checked_mul(&m).and_then(|x| x.checked_mul(&snf.v)).is_ok_and(|p| p == snf.s)
        && snf.diagonal() == divisor_chain_by_minors(&m);
    let name = "Smith form of 1 - beta_* is certified";
    report.push(if certified {
        Check::pass(name)
    } else {
        Check::fail(name, Counterexample::new("U M V, divisor chain", "mismatch", "S"))
    });

    let element = k_groups_from_elements(family, eps, f, c.theta.as_ref()).map_err(|e| e.to_string())?;
    let mode = if c.theta.is_some() { "folded" } else { "symbolic" };
    let name = format!("element-level {mode} images give the same K-groups");
    report.push(if (element.k0.clone(), element.k1.clone()) == (k0.clone(), k1.clone()) {
        Check::pass(name)
    } else {
        Check::fail(name, Counterexample::new(family.to_string(), format!("{} / {}", element.k0, element.k1), format!("{k0} / {k1}")))
    });
    let name = format!("{mode} basis elements are projections");
    report.push(if element.projections {
        Check::pass(name)
    } else {
        Check::fail(name, Counterexample::new(family.to_string(), "not a projection", "p = p* = p^2"))
    });

    report.tables.push(Table::Rows {
        title: format!("1 - beta_* on K0 of C(T3) x Z{}", family.order()),
        header: data.labels.clone(),
        rows: matrix_rows(&m),
    });
    report.tables.push(Table::Rows {
        title: "K-groups".into(),
        header: vec!["group".into(), "value".into()],
        rows: vec![vec!["K0".into(), k0.to_string()], vec!["K1".into(), k1.to_string()]],
    });
    report.payload = json!({
        "family": family.to_string(),
        "epsilon": eps,
        "basis": data.labels,
        "matrix": matrix_json(&m),
        "snf": snf.diagonal().iter().map(small).collect::<Vec<_>>(),
        "K0": group_json(&k0),
        "K1": group_json(&k1),
    });
    Ok(report)
}

pub fn verify(c: &Common, suite: Suite, family: Option<Family>, epsilon: Option<i64>) -> CommandResult {
    let f = field(c)?;
    let mut report = new_report(format!("verify --suite {}", suite.name()), c, &f);
    let params = Params {
        seed: c.seed,
        samples: c.samples,
        degree: c.degree,
        field: f,
        theta: c.theta.clone(),
        epsilon,
        families: family.map_or_else(|| Family::ALL.to_vec(), |f| vec![f]),
    };
    let mut payload = serde_json::Map::new();
    for s in suite.expand() {
        let v = run(s, &params, &mut report);
        if !v.is_null() {
            payload.insert(s.name().to_string(), v);
        }
    }
    report.payload = Value::Object(payload);
    Ok(report)
}

pub fn homology(c: &Common, family: Option<Family>) -> CommandResult {
    if let Some(fam) = family {
        if !Family::CYCLIC_ORIENTABLE.contains(&fam) {
            return Err(format!("{fam} is not an orientable cyclic family; choose one of B2, B3, B4, B6"));
        }
    }
    let f = field(c)?;
    let mut report = new_report("homology".into(), c, &f);
    let params = Params {
        seed: c.seed,
        samples: c.samples,
        degree: c.degree,
        field: f,
        theta: c.theta.clone(),
        epsilon: None,
        families: family.map_or_else(|| Family::CYCLIC_ORIENTABLE.to_vec(), |f| vec![f]),
    };
    report.payload = run(Suite::Homology, &params, &mut report);
    Ok(report)
}

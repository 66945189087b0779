use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::actions::Family;
use crate::check::{Check, Counterexample};
use crate::crossed::{
    beta_hat_transport, is_projection, q_projector, spectral_completeness, trace_eval, BasisEntry, K0Generators,
    TraceFunctional, TransportImage,
};
use crate::error::{Error, Result};
use crate::ktheory::fixture::{compare_with_fixture, FixtureComparison};
use crate::ktheory::group::AbelianGroup;
use crate::ktheory::matrix::IntMatrix;
use crate::ktheory::pv::{beta_star_matrix, pv_solve, BetaStarData};
use crate::linalg::solve;
use crate::scalar::{rat, CyclotomicField, Rational};

fn int(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Layer (i): `(I − M)^N = I` and `[1]` fixed.
pub fn structural_checks(data: &BetaStarData) -> Result<Vec<Check>> {
    let n = data.order();
    let power = data.beta_star().pow(n)?;
    let order = if power == IntMatrix::identity(power.rows()) {
        Check::pass(format!("{}: (I - M)^{n} = I", data.family))
    } else {
        Check::fail(
            format!("{}: (I - M)^{n} = I", data.family),
            Counterexample::new(format!("M = {}", data.matrix), power, "I"),
        )
    };
    let unit = match data.unit_index() {
        Some(_) if data.fixes_unit() => Check::pass(format!("{}: [1] is fixed", data.family)),
        Some(u) => Check::fail(
            format!("{}: [1] is fixed", data.family),
            Counterexample::new(
                "column of [1]",
                show(&data.beta_star().column(u).iter().map(int).collect::<Vec<_>>()),
                "e_[1]",
            ),
        ),
        None => Check::fail(
            format!("{}: [1] is fixed", data.family),
            Counterexample::new("basis", data.labels.join(" "), "contains [1]"),
        ),
    };
    Ok(vec![order, unit])
}

/// Layer (ii): non-exotic columns of `β̂_*` against the element-level images.
pub fn transport_checks(data: &BetaStarData, k0: &K0Generators) -> Result<Vec<Check>> {
    if k0.labels != data.labels {
        return Err(Error::InconsistentData(format!("basis {:?} differs from {:?}", k0.labels, data.labels)));
    }
    let images = beta_hat_transport(k0)?;
    let b = data.beta_star();
    let mut checks = Vec::new();
    for (j, image) in images.iter().enumerate() {
        let name = format!("{}: beta-hat {} matches its column", data.family, data.labels[j]);
        let expected: Vec<Rational> = b.column(j).iter().map(int).collect();
        checks.push(match image {
            TransportImage::Exotic => continue,
            TransportImage::Combination(c) if *c == expected => Check::pass(name),
            TransportImage::Combination(c) => {
                Check::fail(name, Counterexample::new(format!("beta-hat {}", data.labels[j]), show(c), show(&expected)))
            }
            TransportImage::NotInSpan => Check::fail(
                name,
                Counterexample::new(format!("beta-hat {}", data.labels[j]), "outside the basis span", show(&expected)),
            ),
        });
    }
    Ok(checks)
}

/// Displayed matrix against the assembled one.
pub fn fixture_check(data: &BetaStarData) -> Result<Check> {
    let name = format!("{}: displayed matrix", data.family);
    Ok(match compare_with_fixture(data)? {
        FixtureComparison::Identical => Check::pass(name),
        FixtureComparison::BasisTransposition(a, b) => Check::anomaly(
            name,
            format!(
                "equal to the lemma matrix once {} and {} trade places in the displayed basis",
                data.labels[a], data.labels[b]
            ),
        ),
        other => Check::fail(name, Counterexample::new("displayed vs lemma", other.to_string(), "identical")),
    })
}

/// Rows of the `N = 2` trace table, read positionally over
/// `[1], [e00], [e01], [e10], [e11], [M2]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceTable {
    pub tau_constant: Vec<Rational>,
    pub tau_theta: Vec<Rational>,
    /// `τ_00, τ_01, τ_10, τ_11`.
    pub tau_jk: [Vec<Rational>; 4],
    pub cocycle: Vec<Rational>,
}

impl TraceTable {
    pub fn published(epsilon: i64) -> TraceTable {
        let r = |v: [i64; 6]| v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>();
        let h = rat(1, 2);
        TraceTable {
            tau_constant: vec![rat(1, 1), h.clone(), h.clone(), h.clone(), h, rat(0, 1)],
            tau_theta: vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 2)],
            tau_jk: [
                r([0, 2, 0, 0, 0, 1]),
                r([0, 0, 2, 0, 0, -epsilon]),
                r([0, 0, 0, 2, 0, epsilon]),
                r([0, 0, 0, 0, 2, -1]),
            ],
            cocycle: r([0, 0, 0, 0, 0, 1]),
        }
    }

    /// `(name, row, sign)` with `f ∘ β̂_* = sign · f`.
    fn constraints(&self) -> Vec<(String, &Vec<Rational>, i64)> {
        let mut out = vec![
            ("tau (constant part)".to_string(), &self.tau_constant, 1),
            ("tau (theta part)".to_string(), &self.tau_theta, 1),
            ("C".to_string(), &self.cocycle, 1),
        ];
        for (t, row) in TraceFunctional::tau_all().iter().zip(&self.tau_jk) {
            out.push((t.to_string(), row, -1));
        }
        out
    }
}

fn row_times(row: &[Rational], b: &IntMatrix) -> Vec<Rational> {
    (0..b.cols()).map(|j| (0..b.rows()).map(|i| &row[i] * int(b.get(i, j))).sum()).collect()
}

/// Layer (iii) for `N = 2`: `τ ∘ β̂_* = τ`, `C ∘ β̂_* = C`, `τ_jk ∘ β̂_* = −τ_jk`.
pub fn trace_row_checks(data: &BetaStarData, table: &TraceTable) -> Vec<Check> {
    let b = data.beta_star();
    table
        .constraints()
        .into_iter()
        .map(|(name, row, sign)| {
            let lhs = row_times(row, &b);
            let rhs: Vec<Rational> = row.iter().map(|v| v * rat(sign, 1)).collect();
            let name = format!("{}: {name} o beta_* = {}{name}", data.family, if sign < 0 { "-" } else { "" });
            if lhs == rhs {
                Check::pass(name)
            } else {
                Check::fail(name, Counterexample::new("row times beta_*", show(&lhs), show(&rhs)))
            }
        })
        .collect()
}

/// Trace values of the explicit projections, from the closed formulas.
pub fn element_trace_rows(k0: &K0Generators) -> Result<(Vec<Rational>, [Vec<Rational>; 4])> {
    let cp = &k0.product;
    let value = |t: &TraceFunctional, i: usize| -> Result<Option<Rational>> {
        let Some(e) = k0.element(i)? else {
            return Ok(None);
        };
        let s = trace_eval(cp, t, &e)?;
        if s.is_zero() {
            return Ok(Some(Rational::zero()));
        }
        s.as_constant()
            .and_then(|c| c.as_rational())
            .map(Some)
            .ok_or_else(|| Error::InconsistentData(format!("{t} of {} is not rational: {s}", k0.labels[i])))
    };
    let row = |t: &TraceFunctional| -> Result<Vec<Rational>> {
        (0..k0.rank()).map(|i| Ok(value(t, i)?.unwrap_or_default())).collect()
    };
    let tau = row(&TraceFunctional::canonical(cp.order()))?;
    let taus = TraceFunctional::tau_all();
    Ok((tau, [row(&taus[0])?, row(&taus[1])?, row(&taus[2])?, row(&taus[3])?]))
}

/// The `[M2]` column forced by the trace constraints, with the other columns fixed.
pub fn implied_exotic_column(data: &BetaStarData, table: &TraceTable) -> Option<Vec<Rational>> {
    let m = data.labels.len() - 1;
    let constraints = table.constraints();
    let a: Vec<Vec<Rational>> = constraints.iter().map(|(_, row, _)| (*row).clone()).collect();
    let b: Vec<Rational> = constraints.iter().map(|(_, row, sign)| &row[m] * rat(*sign, 1)).collect();
    solve(&a, &b).filter(|s| s.unique).map(|s| s.x)
}

fn trace_table_checks(data: &BetaStarData, k0: &K0Generators) -> Result<Vec<Check>> {
    let eps = data.epsilon.unwrap_or(1);
    let table = TraceTable::published(eps);
    let mut checks = trace_row_checks(data, &table);
    let (tau, taus) = element_trace_rows(k0)?;
    let exotic = k0.exotic_index();
    let name = "B2: tau of the explicit projections equals the table";
    let expected: Vec<Rational> =
        table.tau_constant.iter().enumerate().map(|(i, v)| if i == exotic { Rational::zero() } else { v.clone() }).collect();
    checks.push(if tau == expected {
        Check::pass(name)
    } else {
        Check::fail(name, Counterexample::new("tau row", show(&tau), show(&expected)))
    });
    checks.push(Check::anomaly(
        "B2: trace table row labels",
        "the table labels its generator rows [e01], [e10], [e01], [e10]; rows are read in basis order [e00], [e01], [e10], [e11]",
    ));
    let mut formula = table.clone();
    for (r, row) in formula.tau_jk.iter_mut().enumerate() {
        for (i, v) in row.iter_mut().enumerate() {
            if i != exotic {
                *v = taus[r][i].clone();
            }
        }
    }
    if formula.tau_jk != table.tau_jk {
        let diffs: Vec<String> = TraceFunctional::tau_all()
            .iter()
            .enumerate()
            .flat_map(|(r, t)| {
                let (f, p) = (&formula.tau_jk[r], &table.tau_jk[r]);
                (0..f.len())
                    .filter(move |&i| f[i] != p[i])
                    .map(move |i| format!("{t}({}) = {}", data.labels[i], f[i]))
                    .collect::<Vec<_>>()
            })
            .collect();
        let failing: Vec<String> = trace_row_checks(data, &formula)
            .into_iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect();
        let implied = implied_exotic_column(data, &formula)
            .map(|c| lincomb(&c, &data.labels))
            .unwrap_or_else(|| "no unique solution".into());
        checks.push(Check::anomaly(
            "B2: closed-form tau_jk on the explicit projections",
            format!(
                "formula gives {}; with these rows {} fail{}; the constraints force beta_*[M2] = {implied}",
                diffs.join(", "),
                if failing.is_empty() { "no constraints".to_string() } else { failing.join("; ") },
                if failing.len() == 1 { "s" } else { "" },
            ),
        ));
    }
    Ok(checks)
}

fn lincomb(c: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (v, l) in c.iter().zip(labels) {
        if v.is_zero() {
            continue;
        }
        let sign = if *v < Rational::zero() { "-" } else { "+" };
        let mag = v.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag} ") };
        if out.is_empty() {
            out = format!("{}{coeff}{l}", if sign == "-" { "-" } else { "" });
        } else {
            out.push_str(&format!(" {sign} {coeff}{l}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// All three layers for one family; anomalies are reported, not raised.
pub fn verify_beta_star(family: Family, epsilon: i64, field: CyclotomicField) -> Result<Vec<Check>> {
    let data = beta_star_matrix(family, epsilon)?;
    let k0 = K0Generators::new(family, field, None)?;
    let mut checks = structural_checks(&data)?;
    checks.extend(transport_checks(&data, &k0)?);
    checks.push(fixture_check(&data)?);
    if family.order() == 2 {
        checks.extend(trace_table_checks(&data, &k0)?);
    }
    Ok(checks)
}

/// K-groups with every non-exotic column of `β̂_*` taken from the element-level
/// images in the given θ mode; the exotic column comes from the lemma.
#[derive(Clone, Debug)]
pub struct ElementKTheory {
    pub data: BetaStarData,
    pub k0: AbelianGroup,
    pub k1: AbelianGroup,
    /// Every basis projection is a projection and each spectral family sums to 1.
    pub projections: bool,
}

pub fn k_groups_from_elements(
    family: Family,
    epsilon: i64,
    field: CyclotomicField,
    theta: Option<&Rational>,
) -> Result<ElementKTheory> {
    let lemma = beta_star_matrix(family, epsilon)?;
    let k0 = K0Generators::new(family, field, theta)?;
    let cp = &k0.product;
    let mut projections = true;
    for i in 0..k0.rank() {
        if let Some(e) = k0.element(i)? {
            projections &= is_projection(cp, &e)?;
        }
    }
    let n = cp.order() as i64;
    for g in &k0.spectral {
        let qs = (0..n).map(|k| q_projector(cp, k, &g.element)).collect::<Result<Vec<_>>>()?;
        projections &= spectral_completeness(cp, &qs)?;
    }
    let images = beta_hat_transport(&k0)?;
    let size = k0.rank();
    let mut b = lemma.beta_star();
    for (j, image) in images.iter().enumerate() {
        match (image, &k0.entries[j]) {
            (_, BasisEntry::Exotic) => {}
            (TransportImage::Combination(c), _) => {
                for (i, v) in c.iter().enumerate() {
                    if !v.is_integer() {
                        return Err(Error::InconsistentData(format!(
                            "beta-hat {} has a non-integral coefficient {v}",
                            k0.labels[j]
                        )));
                    }
                    b.set(i, j, v.to_integer());
                }
            }
            _ => {
                return Err(Error::InconsistentData(format!("beta-hat {} is outside the basis span", k0.labels[j])))
            }
        }
    }
    let matrix = &IntMatrix::identity(size) - &b;
    let data = BetaStarData { matrix, ..lemma };
    let (k0_group, k1_group) = pv_solve(&data)?;
    Ok(ElementKTheory { data, k0: k0_group, k1: k1_group, projections })
}

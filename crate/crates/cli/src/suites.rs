use std::collections::BTreeSet;

use clap::ValueEnum;
use nbk_core::actions::{candidate_matrix, published_table, on_grid, scan_cocycles, Family, GroupAction, ScanResult};
use nbk_core::check::{Check, Counterexample, Outcome};
use nbk_core::crossed::*;
use nbk_core::ktheory::{bieberbach_h1, compare_with_k0, holonomy, verify_beta_star};
use nbk_core::nctorus::{generators, ThetaMatrix, Torus, TorusElement};
use nbk_core::sampling::Sampler;
use nbk_core::scalar::{CyclotomicField, Phase, Rational};
use nbk_core::Result;
use serde_json::{json, Value};

use crate::report::Report;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, ValueEnum)]
pub enum Suite {
    Algebra,
    Actions,
    Crossed,
    Traces,
    Morita,
    Betastar,
    Homology,
    All,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Algebra, Actions, Crossed, Traces, Morita, Betastar, Homology],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Actions => "actions",
            Suite::Crossed => "crossed",
            Suite::Traces => "traces",
            Suite::Morita => "morita",
            Suite::Betastar => "betastar",
            Suite::Homology => "homology",
            Suite::All => "all",
        }
    }
}

/// Parameters shared by every suite.
#[derive(Clone, Debug)]
pub struct Params {
    pub seed: u64,
    pub samples: usize,
    pub degree: i64,
    pub field: CyclotomicField,
    pub theta: Option<Rational>,
    pub epsilon: Option<i64>,
    pub families: Vec<Family>,
}

impl Params {
    fn cyclic(&self) -> Vec<Family> {
        self.families.iter().copied().filter(|f| Family::CYCLIC_ORIENTABLE.contains(f)).collect()
    }

    fn rotation(&self, family: Family) -> Result<CrossedProduct> {
        rotation_crossed_product(family, self.field, self.theta.as_ref())
    }

    fn torus3(&self, family: Family) -> Result<CrossedProduct> {
        torus3_crossed_product(family, self.field, self.theta.as_ref())
    }

    fn torus(&self, theta: ThetaMatrix) -> Result<Torus> {
        match &self.theta {
            Some(q) => Torus::with_theta_value(theta, self.field, q.clone()),
            None => Torus::new(theta, self.field),
        }
    }
}

/// Run `law` on `samples` draws and keep the first counterexample.
fn sampled(name: impl Into<String>, samples: usize, mut law: impl FnMut(usize) -> Result<Outcome>) -> Check {
    let name = name.into();
    for i in 0..samples {
        match law(i) {
            Ok(Ok(())) => {}
            Ok(Err(cx)) => return Check::fail(name, cx),
            Err(e) => return Check::fail(name, Counterexample::new(format!("sample {i}"), e, "-")),
        }
    }
    Check::pass(name)
}

fn equal<T: PartialEq + std::fmt::Display>(input: impl Into<String>, lhs: T, rhs: T) -> Outcome {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Counterexample::new(input, lhs, rhs))
    }
}

fn guarded(name: impl Into<String>, r: Result<Vec<Check>>) -> Vec<Check> {
    match r {
        Ok(c) => c,
        Err(e) => vec![Check::fail(name, Counterexample::new("error", e, "-"))],
    }
}

fn prefixed(family: Family, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            if !c.name.starts_with(family.name()) {
                c.name = format!("{family}: {}", c.name);
            }
            c
        })
        .collect()
}

pub fn run(suite: Suite, p: &Params, report: &mut Report) -> Value {
    match suite {
        Suite::Algebra => algebra(p, report),
        Suite::Actions => actions(p, report),
        Suite::Crossed => crossed(p, report),
        Suite::Traces => traces(p, report),
        Suite::Morita => morita(p, report),
        Suite::Betastar => betastar(p, report),
        Suite::Homology => homology(p, report),
        Suite::All => Value::Null,
    }
}

fn algebra(p: &Params, report: &mut Report) -> Value {
    let torus = match p.torus(ThetaMatrix::paper_3d()) {
        Ok(t) => t,
        Err(e) => {
            report.push(Check::fail("paper-3d torus", Counterexample::new("construction", e, "-")));
            return Value::Null;
        }
    };
    let mut s = Sampler::new(p.seed);
    report.push(sampled("scalar ring axioms", p.samples, |i| {
        let (x, y, z) = (s.scalar(&torus), s.scalar(&torus), s.scalar(&torus));
        let input = format!("triple {i}: x = {x}, y = {y}, z = {z}");
        Ok(equal(input.clone(), &(&x * &y) * &z, &x * &(&y * &z))
            .and_then(|_| equal(input.clone(), &x * &(&y + &z), &(&x * &y) + &(&x * &z)))
            .and_then(|_| equal(input, &x * &y, &y * &x)))
    }));
    report.push(sampled("conjugation is an involutive ring map", p.samples, |i| {
        let (x, y) = (s.scalar(&torus), s.scalar(&torus));
        let input = format!("pair {i}: x = {x}, y = {y}");
        Ok(equal(input.clone(), x.conj().conj(), x.clone()).and_then(|_| equal(input, (&x * &y).conj(), &x.conj() * &y.conj())))
    }));
    let field = p.field;
    let m = field.order();
    report.push(sampled("root(M, k) root(M, M - k) = 1", m as usize, |k| {
        let k = k as i64;
        let prod = &field.root(m, k)? * &field.root(m, m as i64 - k)?;
        Ok(equal(format!("k = {k}"), prod, field.one()))
    }));
    report.push(sampled("torus multiplication is associative", p.samples, |i| {
        let (x, y, z) = (s.torus_element(&torus, 2, 3), s.torus_element(&torus, 2, 3), s.torus_element(&torus, 2, 3));
        let lhs = torus.mul(&torus.mul(&x, &y)?, &z)?;
        let rhs = torus.mul(&x, &torus.mul(&y, &z)?)?;
        Ok(equal(format!("triple {i}: x = {x}, y = {y}, z = {z}"), lhs, rhs))
    }));
    report.push(sampled("star is an anti-multiplicative involution", p.samples, |i| {
        let (x, y) = (s.torus_element(&torus, 2, 3), s.torus_element(&torus, 2, 3));
        let input = format!("pair {i}: x = {x}, y = {y}");
        let lhs = torus.star(&torus.mul(&x, &y)?);
        let rhs = torus.mul(&torus.star(&y), &torus.star(&x))?;
        Ok(equal(input.clone(), lhs, rhs).and_then(|_| equal(input, torus.star(&torus.star(&x)), x.clone())))
    }));
    report.push(sampled("monomials are unitary", p.samples, |_| {
        let m = s.monomial(torus.dim(), 2);
        let u = torus.monomial(&m.0)?;
        Ok(equal(format!("d{:?}", m.0), torus.mul(&u, &torus.star(&u))?, torus.one()))
    }));
    let theta = torus.theta().clone();
    report.push(sampled("bicharacter laws", p.samples, |_| {
        let (a, b, n) = (s.monomial(3, 2), s.monomial(3, 2), s.monomial(3, 2));
        let input = format!("m = {:?}, m' = {:?}, n = {:?}", a.0, b.0, n.0);
        let sum = &a + &b;
        Ok(equal(input.clone(), theta.bicharacter(&sum, &n), theta.bicharacter(&a, &n).mul(&theta.bicharacter(&b, &n)))
            .and_then(|_| equal(input, theta.bicharacter(&a, &n).mul(&theta.bicharacter(&n, &a)), Phase::one())))
    }));
    for preset in ["paper-3d", "paper-2d"] {
        report.push(match generators(preset, p.field) {
            Ok(_) => Check::pass(format!("{preset} preset relations")),
            Err(e) => Check::fail(format!("{preset} preset relations"), Counterexample::new(preset, e, "-")),
        });
    }
    Value::Null
}

/// Published rows that lie on the grid.
pub fn expected_rows(family: Family, denominator: u32) -> BTreeSet<Vec<Rational>> {
    published_table(family).into_iter().filter(|r| on_grid(r, denominator)).collect()
}

pub fn scan_check(r: &ScanResult) -> Check {
    let expected = expected_rows(r.family, r.denominator);
    let name = format!("{}: scan at denominator {} equals the published table", r.family, r.denominator);
    if r.admissible == expected {
        Check::pass(name)
    } else {
        let show = |s: &BTreeSet<Vec<Rational>>| {
            let rows: Vec<String> = s
                .iter()
                .map(|r| format!("({})", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
                .collect();
            format!("{{{}}}", rows.join(", "))
        };
        Check::fail(name, Counterexample::new(format!("{} scan", r.family), show(&r.admissible), show(&expected)))
    }
}

pub fn scan_notes(report: &mut Report, families: &[Family]) {
    if families.contains(&Family::N2) {
        report.note("the N2 action table writes e1 for the third image of an e-generated action; it is read as e");
    }
    if families.iter().any(|f| matches!(f, Family::N1 | Family::N2 | Family::N3 | Family::N4)) {
        report.note("the published cocycle table repeats its Z2 rows (N1, N2) and its Z2 x Z2 rows (N3, N4); each family is compared against its own row");
    }
}

fn actions(p: &Params, report: &mut Report) -> Value {
    let mut patterns = serde_json::Map::new();
    for &f in &p.families {
        let scan = match scan_cocycles(f, 6) {
            Ok(s) => s,
            Err(e) => {
                report.push(Check::fail(format!("{f}: scan"), Counterexample::new("scan", e, "-")));
                continue;
            }
        };
        report.push(scan_check(&scan));
        patterns.insert(f.to_string(), Value::from(scan.pattern()));
        let spec = f.classical_spec();
        for values in &scan.admissible {
            let name = format!(
                "{f}: classical action at ({}) has order {} and is compatible to degree 3",
                values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                f.order()
            );
            let outcome = Torus::new(candidate_matrix(f, values), p.field)
                .and_then(|t| GroupAction::from_spec(&spec, &t))
                .map(|a| a.check_order().and_then(|_| a.check_compatibility(3)));
            report.push(Check::from_result(name, outcome));
        }
        let action = match f.twisted_spec() {
            Ok(spec) => {
                let a = p.torus(ThetaMatrix::paper_3d()).and_then(|t| GroupAction::from_spec(&spec, &t));
                let outcome = a.as_ref().map_err(Clone::clone).map(|a| a.check_order().and_then(|_| a.check_compatibility(3)));
                report.push(Check::from_result(format!("{f}: twisted action has order {} and is compatible", f.order()), outcome));
                a.ok()
            }
            Err(_) => scan.admissible.iter().next().and_then(|v| {
                let t = Torus::new(candidate_matrix(f, v), p.field).ok()?;
                GroupAction::from_spec(&spec, &t).ok()
            }),
        };
        let Some(action) = action else { continue };
        let mut s = Sampler::new(p.seed ^ f.order() as u64);
        for g in action.generators() {
            let t = g.torus().clone();
            let lambda = match t.scalar(&g.lambda()) {
                Ok(l) => l,
                Err(e) => {
                    report.push(Check::fail(format!("{f}: lambda"), Counterexample::new("lambda", e, "-")));
                    continue;
                }
            };
            report.push(sampled(format!("{f}: homogeneous decomposition under {}", g.label()), p.samples, |i| {
                let x = s.torus_element(&t, p.degree, 3);
                let parts = g.homogeneous_components(&x)?;
                let sum = parts.iter().fold(TorusElement::zero(x.dim()), |acc, q| &acc + q);
                if sum != x {
                    return Ok(Err(Counterexample::new(format!("sample {i}: x = {x}"), sum, &x)));
                }
                let mut power = t.scalar(&Phase::one())?;
                for (k, q) in parts.iter().enumerate() {
                    let image = g.apply(q)?;
                    if image != q.scale(&power) {
                        return Ok(Err(Counterexample::new(format!("sample {i}: x_{k} of {x}"), image, q.scale(&power))));
                    }
                    power = &power * &lambda;
                }
                Ok(Ok(()))
            }));
            report.push(sampled(format!("{f}: {} commutes with the involution", g.label()), p.samples, |i| {
                let x = s.torus_element(&t, p.degree, 3);
                Ok(equal(format!("sample {i}: x = {x}"), g.apply(&t.star(&x))?, t.star(&g.apply(&x)?)))
            }));
        }
    }
    scan_notes(report, &p.families);
    json!({ "patterns": patterns })
}

fn crossed(p: &Params, report: &mut Report) -> Value {
    for f in p.cyclic() {
        report.extend(guarded(format!("{f}: crossed product"), crossed_family(f, p)));
    }
    Value::Null
}

fn crossed_family(f: Family, p: &Params) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for cp in [p.rotation(f)?, p.torus3(f)?] {
        let which = if cp.dim() == 2 { "C(T2) x Z" } else { "C(T3) x Z" };
        let n = cp.order();
        let mut s = Sampler::new(p.seed);
        out.push(Check::from_outcome(format!("{f} {which}{n}: p^N = 1"), equal("p^N", cp.pow(&cp.p(), n)?, cp.one())));
        out.push(sampled(format!("{f} {which}{n}: multiplication is associative"), p.samples, |i| {
            let (x, y, z) = (s.crossed_element(&cp, p.degree, 3), s.crossed_element(&cp, p.degree, 3), s.crossed_element(&cp, p.degree, 3));
            let lhs = cp.mul(&cp.mul(&x, &y)?, &z)?;
            let rhs = cp.mul(&x, &cp.mul(&y, &z)?)?;
            Ok(equal(format!("triple {i}: x = {x}, y = {y}, z = {z}"), lhs, rhs))
        }));
        out.push(sampled(format!("{f} {which}{n}: involution laws"), p.samples, |i| {
            let (x, y) = (s.crossed_element(&cp, p.degree, 3), s.crossed_element(&cp, p.degree, 3));
            let input = format!("pair {i}: x = {x}, y = {y}");
            let lhs = cp.star(&cp.mul(&x, &y)?)?;
            let rhs = cp.mul(&cp.star(&y)?, &cp.star(&x)?)?;
            let back = cp.star(&cp.star(&x)?)?;
            Ok(equal(input.clone(), lhs, rhs).and_then(|_| equal(input, back, x)))
        }));
        out.push(sampled(format!("{f} {which}{n}: beta-hat is an automorphism of order N"), p.samples, |i| {
            let (x, y) = (s.crossed_element(&cp, p.degree, 3), s.crossed_element(&cp, p.degree, 3));
            let input = format!("pair {i}: x = {x}, y = {y}");
            let lhs = cp.beta_hat(&cp.mul(&x, &y)?)?;
            let rhs = cp.mul(&cp.beta_hat(&x)?, &cp.beta_hat(&y)?)?;
            let mut z = x.clone();
            for _ in 0..n {
                z = cp.beta_hat(&z)?;
            }
            Ok(equal(input.clone(), lhs, rhs).and_then(|_| equal(input, z, x)))
        }));
    }
    let k0 = K0Generators::new(f, p.field, p.theta.as_ref())?;
    let cp = &k0.product;
    let n = cp.order() as i64;
    for g in &k0.spectral {
        let j = g.element.terms().next().map_or(0, |t| t.0 .1 as i64);
        let qs = (0..n).map(|k| q_projector(cp, k, &g.element)).collect::<Result<Vec<_>>>()?;
        let mut bad = None;
        for (k, q) in qs.iter().enumerate() {
            if !is_projection(cp, q)? {
                bad = Some(Counterexample::new(format!("Q_{k}({})", g.name), "q^2 or q* differs from q", q));
                break;
            }
        }
        out.push(Check::from_outcome(format!("{f}: Q_n({}) are projections", g.name), bad.map_or(Ok(()), Err)));
        out.push(Check::from_outcome(
            format!("{f}: Q_n({}) sum to 1 and are orthogonal", g.name),
            if spectral_completeness(cp, &qs)? { Ok(()) } else { Err(Counterexample::new(g.name.clone(), "incomplete", "1")) },
        ));
        let mut shift = Ok(());
        for (k, q) in qs.iter().enumerate() {
            let image = cp.beta_hat(q)?;
            let expected = q_projector(cp, k as i64 - j, &g.element)?;
            if image != expected {
                shift = Err(Counterexample::new(format!("beta-hat Q_{k}({})", g.name), image, expected));
                break;
            }
        }
        out.push(Check::from_outcome(format!("{f}: beta-hat Q_n({}) = Q_(n-{j})", g.name), shift));
    }
    out.extend(k0.root_anomalies());
    if f == Family::B6 {
        for (reading, label) in [(HexReading::Sixth, "exp(2 pi i n k/6)"), (HexReading::Third, "exp(2 pi i n k/3)")] {
            let (proj, complete, distinct) = hex_reading_laws(cp, reading)?;
            let name = format!("B6: Q_n(p) with {label}");
            out.push(if proj && complete && distinct {
                Check::pass(name)
            } else {
                Check::anomaly(name, format!("projections {proj}, complete {complete}, distinct {distinct}"))
            });
        }
    }
    out.extend(prefixed(f, verify_exchange_iso(f, p.field, p.degree)?));
    Ok(out)
}

fn traces(p: &Params, report: &mut Report) -> Value {
    for f in p.cyclic() {
        let checks = p.rotation(f).and_then(|cp| {
            let mut out = Vec::new();
            if cp.order() == 2 {
                for t in TraceFunctional::tau_all() {
                    out.extend(verify_trace_laws(&cp, &t, p.seed, p.samples, p.degree)?);
                }
            }
            out.extend(verify_trace_laws(&cp, &TraceFunctional::canonical(cp.order()), p.seed, p.samples, p.degree)?);
            Ok(prefixed(f, out))
        });
        report.extend(guarded(format!("{f}: traces"), checks));
    }
    Value::Null
}

fn morita(p: &Params, report: &mut Report) -> Value {
    for f in p.cyclic() {
        let checks = p.torus3(f).and_then(|cp| verify_morita(&cp, p.seed, p.samples, 2 * p.samples, p.degree));
        report.extend(guarded(format!("{f}: Morita"), checks.map(|c| prefixed(f, c))));
    }
    Value::Null
}

fn betastar(p: &Params, report: &mut Report) -> Value {
    for f in p.cyclic() {
        let signs = match (f, p.epsilon) {
            (Family::B2, None) => vec![1, -1],
            (_, e) => vec![e.unwrap_or(1)],
        };
        for eps in signs {
            let mut checks = guarded(format!("{f}: beta_*"), verify_beta_star(f, eps, p.field));
            if f == Family::B2 {
                for c in &mut checks {
                    c.name = format!("{} [eps {eps:+}]", c.name);
                }
            }
            report.extend(checks);
        }
    }
    Value::Null
}

fn homology(p: &Params, report: &mut Report) -> Value {
    let mut out = serde_json::Map::new();
    for f in p.cyclic() {
        match (compare_with_k0(f), bieberbach_h1(f), holonomy(f)) {
            (Ok((ok, k0, rhs)), Ok(h1), Ok(a)) => {
                let name = format!("{f}: K0 = Z + H1");
                report.push(if ok {
                    Check::pass(name).with_detail(format!("K0 = {k0}, H1 = {h1}"))
                } else {
                    Check::fail(name, Counterexample::new(format!("{f}"), k0, rhs))
                });
                out.insert(
                    f.to_string(),
                    json!({ "H1": crate::report::group_json(&h1), "holonomy": crate::report::matrix_json(&a) }),
                );
            }
            (a, b, c) => {
                let e = a.err().or(b.err()).or(c.err()).map(|e| e.to_string()).unwrap_or_default();
                report.push(Check::fail(format!("{f}: homology"), Counterexample::new("error", e, "-")));
            }
        }
    }
    Value::Object(out)
}

//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use nbk_core::actions::{scan_cocycles, Family};
use nbk_core::check::{Check, Status};
use nbk_core::crossed::*;
use nbk_core::ktheory::*;
use nbk_core::sampling::Sampler;
use nbk_core::scalar::{rat, CyclotomicField};
use rand::Rng;

type Verdict = Result<String, String>;

const SEED: u64 = 20_240_601;

fn field() -> CyclotomicField {
    CyclotomicField::new(24).unwrap()
}

fn failures(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| c.status == Status::Fail).map(ToString::to_string).collect()
}

fn expected_k0(family: Family) -> AbelianGroup {
    match family {
        Family::B2 => AbelianGroup::from_cyclic(2, &[2, 2]),
        Family::B3 => AbelianGroup::from_cyclic(2, &[3]),
        Family::B4 => AbelianGroup::from_cyclic(2, &[2]),
        _ => AbelianGroup::free(2),
    }
}

fn k_groups() -> Verdict {
    let mut seen = Vec::new();
    for f in Family::CYCLIC_ORIENTABLE {
        let signs: &[i64] = if f == Family::B2 { &[1, -1] } else { &[1] };
        for &eps in signs {
            let (k0, k1) = pv_solve(&beta_star_matrix(f, eps).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            if k0 != expected_k0(f) || k1 != AbelianGroup::free(2) {
                return Err(format!("{f} (eps {eps}): K0 = {k0}, K1 = {k1}"));
            }
            if eps == 1 {
                seen.push(format!("{f}: K0 = {k0}"));
            }
        }
    }
    Ok(seen.join("; "))
}

fn cocycle_scan() -> Verdict {
    let mut bad = Vec::new();
    for f in Family::ALL {
        let r = scan_cocycles(f, 6).map_err(|e| e.to_string())?;
        if !r.matches_published() {
            let (missing, extra) = r.published_difference();
            bad.push(format!(
                "{f} scans to {} (table rows absent: {}; extra rows: {})",
                r.pattern(),
                rows(&missing),
                rows(&extra)
            ));
        }
    }
    if bad.is_empty() {
        Ok("all nine families equal the published tables".into())
    } else {
        Err(bad.join("; "))
    }
}

fn rows(rows: &[Vec<nbk_core::scalar::Rational>]) -> String {
    if rows.is_empty() {
        return "none".into();
    }
    let shown: Vec<String> = rows
        .iter()
        .map(|r| format!("({})", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    shown.join(" ")
}

fn projections() -> Verdict {
    let mut count = 0;
    let mut notes = Vec::new();
    for f in Family::CYCLIC_ORIENTABLE {
        let k0 = K0Generators::new(f, field(), None).map_err(|e| e.to_string())?;
        let cp = &k0.product;
        for (name, qs) in k0.all_projectors().map_err(|e| e.to_string())? {
            for q in &qs {
                if !is_projection(cp, q).map_err(|e| e.to_string())? {
                    return Err(format!("{f}: a projector of {name} is not a projection"));
                }
                count += 1;
            }
            if !spectral_completeness(cp, &qs).map_err(|e| e.to_string())? {
                return Err(format!("{f}: spectral family of {name} is incomplete"));
            }
        }
        notes.extend(k0.root_anomalies().into_iter().map(|c| c.name));
    }
    Ok(format!("{count} projectors exact; phase-corrected: {}", notes.join(", ")))
}

fn morita() -> Verdict {
    for f in Family::CYCLIC_ORIENTABLE {
        let cp = torus3_crossed_product(f, field(), None).map_err(|e| e.to_string())?;
        let bad = failures(&verify_morita(&cp, SEED, 50, 100, 2).map_err(|e| e.to_string())?);
        if !bad.is_empty() {
            return Err(bad.join("; "));
        }
    }
    Ok("N = 2, 3, 4, 6 with 50 pairs and 100 decompositions each".into())
}

fn traces() -> Verdict {
    let b2 = rotation_crossed_product(Family::B2, field(), None).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for t in TraceFunctional::tau_all() {
        bad.extend(failures(&verify_trace_laws(&b2, &t, SEED, 200, 2).map_err(|e| e.to_string())?));
    }
    for f in Family::CYCLIC_ORIENTABLE {
        let cp = rotation_crossed_product(f, field(), None).map_err(|e| e.to_string())?;
        let t = TraceFunctional::canonical(cp.order());
        bad.extend(failures(&verify_trace_laws(&cp, &t, SEED, 200, 2).map_err(|e| e.to_string())?));
    }
    if bad.is_empty() {
        Ok("tau_jk on 200 pairs for N = 2; canonical tau for all four".into())
    } else {
        Err(bad.join("; "))
    }
}

fn beta_star() -> Verdict {
    let mut anomalies = 0;
    for f in Family::CYCLIC_ORIENTABLE {
        for eps in [1, -1] {
            let checks = verify_beta_star(f, eps, field()).map_err(|e| e.to_string())?;
            let bad = failures(&checks);
            if !bad.is_empty() {
                return Err(bad.join("; "));
            }
            anomalies += checks.iter().filter(|c| c.status == Status::Anomaly).count();
        }
    }
    Ok(format!("layers (i)-(iii) hold; {anomalies} anomalies reported"))
}

fn snf_oracle() -> Verdict {
    let mut s = Sampler::new(SEED);
    for case in 0..500 {
        let (r, c) = (s.rng().gen_range(1..=6), s.rng().gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| s.rng().gen_range(-5..=5)).collect()).collect();
        let m = IntMatrix::from_rows(&rows).map_err(|e| e.to_string())?;
        let f = smith_normal_form(&m);
        let oracle = divisor_chain_by_minors(&m);
        if f.diagonal() != oracle {
            return Err(format!("case {case}: {m} gives {:?}, oracle {oracle:?}", f.diagonal()));
        }
        if !f.u.is_unimodular() || !f.v.is_unimodular() {
            return Err(format!("case {case}: transforms are not unimodular"));
        }
        let prod = f.u.checked_mul(&m).and_then(|x| x.checked_mul(&f.v)).map_err(|e| e.to_string())?;
        if prod != f.s {
            return Err(format!("case {case}: U M V differs from S"));
        }
        let (ker, coker) = kernel_cokernel(&m);
        if ker.free_rank + f.rank() != c || coker.free_rank + f.rank() != r {
            return Err(format!("case {case}: rank-nullity fails"));
        }
    }
    Ok("500 matrices agree with the determinantal-divisor oracle".into())
}

fn homology() -> Verdict {
    let mut out = Vec::new();
    for f in Family::CYCLIC_ORIENTABLE {
        let (ok, k0, rhs) = compare_with_k0(f).map_err(|e| e.to_string())?;
        if !ok {
            return Err(format!("{f}: K0 = {k0} but Z + H1 = {rhs}"));
        }
        out.push(format!("{f}: H1 = {}", bieberbach_h1(f).map_err(|e| e.to_string())?));
    }
    Ok(out.join("; "))
}

fn folded_theta() -> Verdict {
    let theta = rat(1, 5);
    let f120 = CyclotomicField::new(120).map_err(|e| e.to_string())?;
    for f in Family::CYCLIC_ORIENTABLE {
        let sym = k_groups_from_elements(f, 1, field(), None).map_err(|e| e.to_string())?;
        let fold = k_groups_from_elements(f, 1, f120, Some(&theta)).map_err(|e| e.to_string())?;
        if !fold.projections {
            return Err(format!("{f}: folded projections fail"));
        }
        if (sym.k0.clone(), sym.k1.clone()) != (fold.k0.clone(), fold.k1.clone()) {
            return Err(format!("{f}: symbolic {} / {}, folded {} / {}", sym.k0, sym.k1, fold.k0, fold.k1));
        }
        if fold.k0 != expected_k0(f) {
            return Err(format!("{f}: folded K0 = {}", fold.k0));
        }
    }
    Ok("theta = 1/5 over Q(zeta_120) gives the symbolic groups".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("K-group reproduction", k_groups),
        ("cocycle scan reproduction", cocycle_scan),
        ("projection suite", projections),
        ("Morita identities", morita),
        ("trace laws", traces),
        ("beta_* consistency", beta_star),
        ("SNF oracle equivalence", snf_oracle),
        ("homology relation", homology),
        ("theta independence", folded_theta),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS criterion {} {name} [{secs:.2}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name} [{secs:.2}s]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/9 passed in {:.1}s", 9 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

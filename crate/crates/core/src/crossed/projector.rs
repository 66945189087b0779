use std::fmt;

use crate::crossed::product::{CrossedElement, CrossedProduct};
use crate::error::{Error, Result};
use crate::nctorus::Monomial;
use crate::scalar::{rat, Phase, PhasedScalar, Rational};

/// Read a single-term scalar back as a unit phase, if it is one.
pub fn phase_of_scalar(s: &PhasedScalar) -> Option<Phase> {
    let mut terms = s.terms();
    let (b, c) = terms.next()?;
    if terms.next().is_some() {
        return None;
    }
    let field = c.field();
    let order = field.order();
    (0..order).find(|&k| field.zeta_pow(k as i64) == *c).map(|k| Phase::new(rat(2 * k as i64, order as i64), b.clone()))
}

/// If `x` is a scalar multiple of the unit, that scalar.
pub fn as_scalar(cp: &CrossedProduct, x: &CrossedElement) -> Option<PhasedScalar> {
    match x.len() {
        0 => Some(PhasedScalar::zero()),
        1 => {
            let c = x.coefficient(&Monomial::zero(cp.dim()), 0);
            (!c.is_zero()).then_some(c)
        }
        _ => None,
    }
}

/// `Q_n(x) = (1/N) Σ_{k<N} (e^{2πin/N} x)^k` for `x^N = 1`.
pub fn q_projector(cp: &CrossedProduct, n: i64, x: &CrossedElement) -> Result<CrossedElement> {
    q_projector_with_period(cp, n, cp.order(), x)
}

/// The same sum with `e^{2πink/R}` in place of `e^{2πink/N}`.
pub fn q_projector_with_period(cp: &CrossedProduct, n: i64, period: u32, x: &CrossedElement) -> Result<CrossedElement> {
    let big_n = cp.order();
    let xn = cp.pow(x, big_n)?;
    if xn != cp.one() {
        return Err(Error::NotRootOfUnity { order: big_n, residual: (&xn - &cp.one()).to_string() });
    }
    let field = cp.field();
    let mut out = cp.zero();
    let mut xk = cp.one();
    for k in 0..big_n as i64 {
        let mu = PhasedScalar::from_phase(field, &Phase::root_of_unity(period, n * k))?;
        out = &out + &xk.scale(&mu);
        xk = cp.mul(&xk, x)?;
    }
    Ok(out.scale_rational(&rat(1, big_n as i64)))
}

/// How a candidate unitary meets the order it is supposed to have.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootCheck {
    /// `x^n = 1` exactly.
    Exact,
    /// `x^n = c` for a unit phase `c ≠ 1`; `correction^n = c̄`.
    PhaseDefect { residual: Phase, correction: Phase },
    /// `x^n` is not a scalar.
    NotScalar(String),
}

impl fmt::Display for RootCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootCheck::Exact => write!(f, "exact"),
            RootCheck::PhaseDefect { residual, correction } => {
                write!(f, "power equals {residual}; multiplying by {correction} restores it")
            }
            RootCheck::NotScalar(r) => write!(f, "power is not scalar: {r}"),
        }
    }
}

/// Compare `x^n` with the unit.
pub fn root_check(cp: &CrossedProduct, x: &CrossedElement, n: u32) -> Result<RootCheck> {
    let xn = cp.pow(x, n)?;
    if xn == cp.one() {
        return Ok(RootCheck::Exact);
    }
    let residual = as_scalar(cp, &xn)
        .and_then(|s| phase_of_scalar(&s))
        .map(|p| cp.torus().fold_phase(&p));
    Ok(match residual {
        Some(residual) => {
            let correction = residual.principal_root(n).conj();
            RootCheck::PhaseDefect { residual, correction }
        }
        None => RootCheck::NotScalar(xn.to_string()),
    })
}

/// Idempotent and self-adjoint.
pub fn is_projection(cp: &CrossedProduct, q: &CrossedElement) -> Result<bool> {
    Ok(cp.mul(q, q)? == *q && cp.star(q)? == *q)
}

/// `Σ_n Q_n = 1` and `Q_n Q_m = 0` for `n ≠ m`.
pub fn spectral_completeness(cp: &CrossedProduct, qs: &[CrossedElement]) -> Result<bool> {
    let mut sum = cp.zero();
    for q in qs {
        sum = &sum + q;
    }
    if sum != cp.one() {
        return Ok(false);
    }
    for (i, a) in qs.iter().enumerate() {
        for (j, b) in qs.iter().enumerate() {
            if i != j && !cp.mul(a, b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(1/N)` as a rational, for callers building projectors by hand.
pub fn inverse_order(cp: &CrossedProduct) -> Rational {
    rat(1, cp.order() as i64)
}

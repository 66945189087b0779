use std::fmt;

use crate::check::{Check, Counterexample};
use crate::crossed::product::{CrossedElement, CrossedProduct};
use crate::error::{Error, Result};
use crate::nctorus::{Monomial, TorusElement};
use crate::sampling::Sampler;
use crate::scalar::{rat, Phase, PhasedScalar};

/// A functional `Φ_s` on the torus, given by a finite rule on basis elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseFunctional {
    /// Coefficient of `δ_0`.
    Canonical,
    /// `V^ι W^κ ↦ 4 e^{-πiθικ}` when `ι ≡ j`, `κ ≡ k` mod 2, else 0.
    ParityClass { j: u8, k: u8 },
}

/// `Φ̃_s(Σ a_k p^k) = Φ_s(a_{N-s})`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TraceFunctional {
    pub twist: u32,
    pub base: BaseFunctional,
}

impl TraceFunctional {
    /// The canonical trace `τ`: twist `s = N`, reading the `p^0` part.
    pub fn canonical(order: u32) -> Self {
        TraceFunctional { twist: order, base: BaseFunctional::Canonical }
    }

    /// One of the four unbounded traces on `T²_θ ⋊ Z_2`.
    pub fn tau(j: u8, k: u8) -> Self {
        TraceFunctional { twist: 1, base: BaseFunctional::ParityClass { j, k } }
    }

    pub fn tau_all() -> [TraceFunctional; 4] {
        [Self::tau(0, 0), Self::tau(0, 1), Self::tau(1, 0), Self::tau(1, 1)]
    }
}

impl fmt::Display for TraceFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseFunctional::Canonical => write!(f, "tau"),
            BaseFunctional::ParityClass { j, k } => write!(f, "tau_{j}{k}"),
        }
    }
}

/// Evaluate a base functional on a torus element.
pub fn base_eval(cp: &CrossedProduct, base: BaseFunctional, a: &TorusElement) -> Result<PhasedScalar> {
    let torus = cp.torus();
    match base {
        BaseFunctional::Canonical => Ok(a.coefficient(&Monomial::zero(torus.dim()))),
        BaseFunctional::ParityClass { j, k } => {
            if torus.dim() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, found: torus.dim() });
            }
            let mut total = PhasedScalar::zero();
            for (m, c) in a.terms() {
                let (iota, kappa) = (m.0[0], m.0[1]);
                if iota.rem_euclid(2) != j as i64 || kappa.rem_euclid(2) != k as i64 {
                    continue;
                }
                // δ_(ι,κ) = conj(ω(ιe1, κe2)) V^ι W^κ
                let order_phase = torus.cocycle_phase(&Monomial(vec![iota, 0]), &Monomial(vec![0, kappa]))?;
                let formula = Phase::theta_power(rat(-iota * kappa, 1));
                let value = torus.scalar(&order_phase.conj().mul(&formula))?.scale(&rat(4, 1));
                total = &total + &(c * &value);
            }
            Ok(total)
        }
    }
}

pub fn trace_eval(cp: &CrossedProduct, t: &TraceFunctional, x: &CrossedElement) -> Result<PhasedScalar> {
    let n = cp.order();
    let k = (n - t.twist % n) % n;
    base_eval(cp, t.base, &cp.component(x, k))
}

/// Sampled checks of the twisted-trace axioms on the torus and of the
/// tracial and `β̂`-scaling laws on the crossed product.
pub fn verify_trace_laws(
    cp: &CrossedProduct,
    t: &TraceFunctional,
    seed: u64,
    samples: usize,
    degree: i64,
) -> Result<Vec<Check>> {
    let mut rng = Sampler::new(seed);
    let torus = cp.torus();
    let action = cp.action();
    let s = t.twist;
    let scale = torus.scalar(&Phase::root_of_unity(cp.order(), s as i64))?;
    let mut invariance = Ok(());
    let mut twisted = Ok(());
    let mut tracial = Ok(());
    let mut scaling = Ok(());
    for i in 0..samples {
        let a = rng.torus_element(torus, degree, 3);
        let b = rng.torus_element(torus, degree, 3);
        if invariance.is_ok() {
            let lhs = base_eval(cp, t.base, &action.apply(&a)?)?;
            let rhs = base_eval(cp, t.base, &a)?;
            if lhs != rhs {
                invariance = Err(Counterexample::new(format!("sample {i}: a = {a}"), lhs, rhs));
            }
        }
        if twisted.is_ok() {
            let lhs = base_eval(cp, t.base, &torus.mul(&a, &b)?)?;
            let sb = action.apply_power(&b, s)?;
            let rhs = base_eval(cp, t.base, &torus.mul(&sb, &a)?)?;
            if lhs != rhs {
                twisted = Err(Counterexample::new(format!("sample {i}: a = {a}, b = {b}"), lhs, rhs));
            }
        }
        let x = rng.crossed_element(cp, degree, 3);
        let y = rng.crossed_element(cp, degree, 3);
        if tracial.is_ok() {
            let lhs = trace_eval(cp, t, &cp.mul(&x, &y)?)?;
            let rhs = trace_eval(cp, t, &cp.mul(&y, &x)?)?;
            if lhs != rhs {
                tracial = Err(Counterexample::new(format!("sample {i}: x = {x}, y = {y}"), lhs, rhs));
            }
        }
        if scaling.is_ok() {
            let lhs = trace_eval(cp, t, &cp.beta_hat(&x)?)?;
            let rhs = &scale * &trace_eval(cp, t, &x)?;
            if lhs != rhs {
                scaling = Err(Counterexample::new(format!("sample {i}: x = {x}"), lhs, rhs));
            }
        }
    }
    Ok(vec![
        Check::from_outcome(format!("{t}: base functional is invariant"), invariance),
        Check::from_outcome(format!("{t}: base functional is twisted by sigma^{s}"), twisted),
        Check::from_outcome(format!("{t}: tracial on the crossed product"), tracial),
        Check::from_outcome(format!("{t}: beta-hat scales by exp(2 pi i {s}/{})", cp.order()), scaling),
    ])
}

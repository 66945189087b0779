//! The two iterated crossed products `(A ⋊_β Z) ⋊_α Z_N` and `(A ⋊_α Z_N) ⋊_β̂ Z`,
//! with `A = C(T²_θ)` spanned by `V, W` and `U` implementing `β`.

use rayon::prelude::*;

use crate::actions::Family;
use crate::check::{Check, Counterexample, Outcome};
use crate::crossed::k0::torus3_crossed_product;
use crate::crossed::product::{CrossedElement, CrossedProduct};
use crate::error::{Error, Result};
use crate::nctorus::Monomial;
use crate::scalar::{CyclotomicField, Phase};

/// `phase · a U^j e^k` (first ordering) or `phase · a e^k U^j` (second ordering).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExchangeTerm {
    pub phase: Phase,
    pub a: Monomial,
    pub j: i64,
    pub k: u32,
}

pub struct ExchangeAlgebra {
    product: CrossedProduct,
}

impl ExchangeAlgebra {
    pub fn new(family: Family, field: CyclotomicField) -> Result<Self> {
        if !Family::CYCLIC_ORIENTABLE.contains(&family) {
            return Err(Error::InvalidAction(format!("{family} is not an orientable cyclic family")));
        }
        Ok(ExchangeAlgebra { product: torus3_crossed_product(family, field, None)? })
    }

    pub fn product(&self) -> &CrossedProduct {
        &self.product
    }

    fn n(&self) -> u32 {
        self.product.order()
    }

    fn lambda(&self) -> Phase {
        self.product.action().lambda()
    }

    fn u(&self, j: i64) -> Monomial {
        Monomial(vec![j, 0, 0])
    }

    /// `β^j(δ_b) = U^j δ_b U^{-j}`.
    fn beta(&self, b: &Monomial, j: i64) -> (Phase, Monomial) {
        let torus = self.product.torus();
        let (p1, m1) = torus.mul_monomials(&self.u(j), b);
        let (p2, m2) = torus.mul_monomials(&m1, &self.u(-j));
        (p1.mul(&p2), m2)
    }

    fn alpha(&self, b: &Monomial, k: u32) -> (Phase, Monomial) {
        self.product.alpha_power(b, k)
    }

    fn times_a(&self, phase: Phase, a: &Monomial, b: &Monomial) -> (Phase, Monomial) {
        let (w, m) = self.product.torus().mul_monomials(a, b);
        (self.product.torus().fold_phase(&phase.mul(&w)), m)
    }

    /// `(aU^je^k)(bU^le^m) = a β^j(α^k b) λ^{kl} U^{j+l} e^{k+m}`.
    pub fn mul_first(&self, x: &ExchangeTerm, y: &ExchangeTerm) -> ExchangeTerm {
        let (q1, b1) = self.alpha(&y.a, x.k);
        let (q2, b2) = self.beta(&b1, x.j);
        let twist = self.lambda().pow(x.k as i64 * y.j);
        let phase = x.phase.mul(&y.phase).mul(&q1).mul(&q2).mul(&twist);
        let (phase, a) = self.times_a(phase, &x.a, &b2);
        ExchangeTerm { phase, a, j: x.j + y.j, k: (x.k + y.k) % self.n() }
    }

    /// `(ae^kU^j)(be^mU^l) = a α^k(β^j b) λ̄^{jm} e^{k+m} U^{j+l}`.
    pub fn mul_second(&self, x: &ExchangeTerm, y: &ExchangeTerm) -> ExchangeTerm {
        let (q1, b1) = self.beta(&y.a, x.j);
        let (q2, b2) = self.alpha(&b1, x.k);
        let twist = self.lambda().conj().pow(x.j * y.k as i64);
        let phase = x.phase.mul(&y.phase).mul(&q1).mul(&q2).mul(&twist);
        let (phase, a) = self.times_a(phase, &x.a, &b2);
        ExchangeTerm { phase, a, j: x.j + y.j, k: (x.k + y.k) % self.n() }
    }

    /// `φ(aU^je^k) = λ̄^{jk} a e^k U^j`.
    pub fn phi(&self, x: &ExchangeTerm) -> ExchangeTerm {
        let phase = self.product.torus().fold_phase(&x.phase.mul(&self.lambda().conj().pow(x.j * x.k as i64)));
        ExchangeTerm { phase, ..x.clone() }
    }

    /// The first ordering read inside the concrete `C(T³_θ) ⋊ Z_N`.
    pub fn concrete(&self, x: &ExchangeTerm) -> Result<CrossedElement> {
        let (w, m) = self.product.torus().mul_monomials(&x.a, &self.u(x.j));
        let c = self.product.torus().scalar(&x.phase.mul(&w))?;
        Ok(self.product.term(m, x.k as i64, c))
    }

    /// Basis terms `V^a W^b U^j e^k` with `|a| + |b| + |j| ≤ degree`.
    pub fn basis(&self, degree: i64) -> Vec<ExchangeTerm> {
        let mut out = Vec::new();
        for j in -degree..=degree {
            for a in -degree..=degree {
                for b in -degree..=degree {
                    if a.abs() + b.abs() + j.abs() > degree {
                        continue;
                    }
                    for k in 0..self.n() {
                        out.push(ExchangeTerm { phase: Phase::one(), a: Monomial(vec![0, a, b]), j, k });
                    }
                }
            }
        }
        out
    }
}

fn render(t: &ExchangeTerm, second: bool) -> String {
    let a = format!("V^{} W^{}", t.a.0[1], t.a.0[2]);
    if second {
        format!("{} {a} e^{} U^{}", t.phase, t.k, t.j)
    } else {
        format!("{} {a} U^{} e^{}", t.phase, t.j, t.k)
    }
}

/// `φ` intertwines the two multiplication rules on all basis pairs up to `degree`,
/// and the first rule agrees with the concrete three-torus crossed product.
pub fn verify_exchange_iso(family: Family, field: CyclotomicField, degree: i64) -> Result<Vec<Check>> {
    let alg = ExchangeAlgebra::new(family, field)?;
    let basis = alg.basis(degree);
    let pairs = basis.len() * basis.len();

    let relations = basis
        .par_iter()
        .map(|x| -> Outcome {
            for y in &basis {
                let lhs = alg.phi(&alg.mul_first(x, y));
                let rhs = alg.mul_second(&alg.phi(x), &alg.phi(y));
                if lhs != rhs {
                    return Err(Counterexample::new(
                        format!("x = {}, y = {}", render(x, false), render(y, false)),
                        render(&lhs, true),
                        render(&rhs, true),
                    ));
                }
            }
            Ok(())
        })
        .find_any(|r| r.is_err())
        .unwrap_or(Ok(()));

    let concrete = basis
        .par_iter()
        .map(|x| -> Result<Outcome> {
            let cx = alg.concrete(x)?;
            for y in &basis {
                let lhs = alg.concrete(&alg.mul_first(x, y))?;
                let rhs = alg.product.mul(&cx, &alg.concrete(y)?)?;
                if lhs != rhs {
                    return Ok(Err(Counterexample::new(
                        format!("x = {}, y = {}", render(x, false), render(y, false)),
                        lhs,
                        rhs,
                    )));
                }
            }
            Ok(Ok(()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|r| r.is_err())
        .unwrap_or(Ok(()));

    let e = ExchangeTerm { phase: Phase::one(), a: Monomial::zero(3), j: 0, k: 1 };
    let u = ExchangeTerm { phase: Phase::one(), a: Monomial::zero(3), j: 1, k: 0 };
    let lam = alg.lambda();
    let first = (alg.mul_first(&e, &u), alg.mul_first(&u, &e));
    let second = (alg.mul_second(&e, &u), alg.mul_second(&u, &e));
    let swap = if first.0.phase != alg.product.torus().fold_phase(&first.1.phase.mul(&lam)) {
        Err(Counterexample::new("e U against lambda U e, first ordering", render(&first.0, false), render(&first.1, false)))
    } else if second.0.phase != alg.product.torus().fold_phase(&second.1.phase.mul(&lam)) {
        Err(Counterexample::new("e U against lambda U e, second ordering", render(&second.0, true), render(&second.1, true)))
    } else {
        Ok(())
    };

    Ok(vec![
        Check::from_outcome(format!("{family}: e U = lambda U e with lambda = {}", alg.lambda()), swap),
        Check::from_outcome(format!("{family}: phi carries one rule set to the other on {pairs} pairs"), relations),
        Check::from_outcome(format!("{family}: first rule set matches C(T^3) x Z_{}", alg.n()), concrete),
    ])
}

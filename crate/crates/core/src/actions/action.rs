use std::collections::HashMap;
use std::fmt;

use crate::actions::spec::ActionSpec;
use crate::actions::word::Word;
use crate::check::{Counterexample, Outcome};
use crate::error::{Error, Result};
use crate::nctorus::{Monomial, Torus, TorusElement};
use crate::scalar::{rat, Phase, PhasedScalar};

/// `g ▷ δ_{e_i} = coeff · δ_target`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GeneratorImage {
    pub coeff: Phase,
    pub target: Monomial,
}

impl fmt::Display for GeneratorImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} d{:?}", self.coeff, self.target.0)
    }
}

/// Every exponent vector with entries in `[-bound, bound]`.
pub fn box_monomials(dim: usize, bound: i64) -> Vec<Monomial> {
    let mut out = vec![Monomial(Vec::with_capacity(dim))];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|m| {
                (-bound..=bound).map(move |e| {
                    let mut v = m.0.clone();
                    v.push(e);
                    Monomial(v)
                })
            })
            .collect();
    }
    out
}

/// One generator of a finite cyclic group acting on a twisted torus by
/// phased monomials, extended multiplicatively in ascending generator order.
#[derive(Clone, Debug)]
pub struct FiniteAction {
    label: String,
    order: u32,
    torus: Torus,
    images: Vec<GeneratorImage>,
}

impl FiniteAction {
    pub fn new(label: impl Into<String>, order: u32, torus: Torus, words: &[Word]) -> Result<Self> {
        if words.len() != torus.dim() {
            return Err(Error::DimensionMismatch { expected: torus.dim(), found: words.len() });
        }
        let images = words
            .iter()
            .map(|w| w.evaluate(&torus).map(|(coeff, target)| GeneratorImage { coeff, target }))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteAction { label: label.into(), order, torus, images })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn torus(&self) -> &Torus {
        &self.torus
    }

    pub fn images(&self) -> &[GeneratorImage] {
        &self.images
    }

    /// `g ▷ δ_m = conj(corr(m)) · Π_i (g ▷ δ_{e_i})^{m_i}` where
    /// `δ_{m_1 e_1} δ_{m_2 e_2} ... = corr(m) δ_m`.
    pub fn image_of_monomial(&self, m: &Monomial) -> (Phase, Monomial) {
        let d = self.torus.dim();
        let mut phase = Phase::one();
        let mut acc = Monomial::zero(d);
        let mut prefix = Monomial::zero(d);
        for (i, &mi) in m.0.iter().enumerate() {
            if mi == 0 {
                continue;
            }
            let mut step = Monomial::zero(d);
            step.0[i] = mi;
            let (corr, next_prefix) = self.torus.mul_monomials(&prefix, &step);
            phase = phase.mul(&corr.conj());
            prefix = next_prefix;

            let img = &self.images[i];
            let power = img.target.scaled(mi);
            let (w, next) = self.torus.mul_monomials(&acc, &power);
            phase = phase.mul(&img.coeff.pow(mi)).mul(&w);
            acc = next;
        }
        (self.torus.fold_phase(&phase), acc)
    }

    /// Image of the phased basis element `phase · δ_m`.
    fn image_of_term(&self, phase: &Phase, m: &Monomial) -> (Phase, Monomial) {
        let (p, t) = self.image_of_monomial(m);
        (phase.mul(&p), t)
    }

    pub fn apply(&self, x: &TorusElement) -> Result<TorusElement> {
        if x.dim() != self.torus.dim() {
            return Err(Error::DimensionMismatch { expected: self.torus.dim(), found: x.dim() });
        }
        let mut out = TorusElement::zero(x.dim());
        for (m, c) in x.terms() {
            let (p, t) = self.image_of_monomial(m);
            out.add_term(t, c.mul_phase(&p)?);
        }
        Ok(out)
    }

    pub fn apply_power(&self, x: &TorusElement, k: u32) -> Result<TorusElement> {
        let mut y = x.clone();
        for _ in 0..k % self.order.max(1) {
            y = self.apply(&y)?;
        }
        Ok(y)
    }

    /// `g^N ▷ δ_{e_i} = δ_{e_i}` for every generator, checked exactly.
    pub fn check_order(&self) -> Outcome {
        let d = self.torus.dim();
        for i in 0..d {
            let e = Monomial::unit(d, i);
            let (mut p, mut m) = (Phase::one(), e.clone());
            for _ in 0..self.order {
                (p, m) = self.image_of_term(&p, &m);
            }
            if !p.is_one() || m != e {
                return Err(Counterexample::new(
                    format!("{}^{} on generator {}", self.label, self.order, i + 1),
                    format!("{} d{:?}", p, m.0),
                    format!("d{:?}", e.0),
                ));
            }
        }
        Ok(())
    }

    /// `g ▷ (δ_m δ_n) = (g ▷ δ_m)(g ▷ δ_n)` for `|m|, |n| ≤ bound`, identically in θ.
    ///
    /// Boxes are scanned in increasing size so the first violation reported
    /// is of the smallest degree.
    pub fn check_compatibility(&self, bound: i64) -> Outcome {
        let d = self.torus.dim();
        let form = IntForm::new(&self.torus, &self.images);
        let mut cache: HashMap<Monomial, (IntPhase, Monomial)> = HashMap::new();
        let mut image = |m: &Monomial| -> (IntPhase, Monomial) {
            cache
                .entry(m.clone())
                .or_insert_with(|| {
                    let (p, t) = self.image_of_monomial(m);
                    (form.scaled(&p), t)
                })
                .clone()
        };
        for b in 1..=bound.max(1) {
            let ms = box_monomials(d, b);
            for m in &ms {
                for n in &ms {
                    if m.max_abs() < b && n.max_abs() < b {
                        continue;
                    }
                    let sum = m + n;
                    let (ps, ts) = image(&sum);
                    let lhs = form.norm(form.bilinear(m, n).add(ps));
                    let (pm, tm) = image(m);
                    let (pn, tn) = image(n);
                    let rhs = form.norm(pm.add(pn).add(form.bilinear(&tm, &tn)));
                    let t = &tm + &tn;
                    if lhs != rhs || ts != t {
                        let (w, _) = self.torus.mul_monomials(m, n);
                        let (w2, _) = self.torus.mul_monomials(&tm, &tn);
                        let (pm, _) = self.image_of_monomial(m);
                        let (pn, _) = self.image_of_monomial(n);
                        let (ps, _) = self.image_of_monomial(&sum);
                        let lhs = self.torus.fold_phase(&w).mul(&ps);
                        let rhs = pm.mul(&pn).mul(&self.torus.fold_phase(&w2));
                        return Err(Counterexample::new(
                            format!("{} on d{:?} * d{:?}", self.label, m.0, n.0),
                            format!("{} d{:?}", lhs, ts.0),
                            format!("{} d{:?}", rhs, t.0),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `λ = e^{2πi/N}`.
    pub fn lambda(&self) -> Phase {
        Phase::root_of_unity(self.order, 1)
    }

    /// `x_k = (1/N) Σ_j λ̄^{kj} (g^j ▷ x)`, so that `Σ x_k = x` and `g ▷ x_k = λ^k x_k`.
    pub fn homogeneous_components(&self, x: &TorusElement) -> Result<Vec<TorusElement>> {
        let n = self.order;
        let mut orbit = Vec::with_capacity(n as usize);
        let mut y = x.clone();
        for _ in 0..n {
            orbit.push(y.clone());
            y = self.apply(&y)?;
        }
        let field = self.torus.field();
        let inv = rat(1, n as i64);
        let mut out = Vec::with_capacity(n as usize);
        for k in 0..n {
            let mut xk = TorusElement::zero(x.dim());
            for (j, gx) in orbit.iter().enumerate() {
                let w = Phase::root_of_unity(n, -((k as i64) * j as i64));
                let c = PhasedScalar::from_phase(field, &w)?.scale(&inv);
                xk = &xk + &gx.scale(&c);
            }
            out.push(xk);
        }
        Ok(out)
    }

    /// A generator `u` with `g ▷ u = λ u` for `λ` of order exactly `N`.
    pub fn witness_generator(&self) -> Option<usize> {
        self.images.iter().enumerate().find_map(|(i, img)| {
            let fixed = img.target == Monomial::unit(self.torus.dim(), i);
            (fixed && img.coeff.root_order() == Some(self.order as u64)).then_some(i)
        })
    }

    pub fn freeness_witness(&self) -> bool {
        self.order == 1 || self.witness_generator().is_some()
    }
}

/// An action of `Z_N × ... × Z_N` given by commuting generators.
#[derive(Clone, Debug)]
pub struct GroupAction {
    name: String,
    generator_names: Vec<String>,
    generators: Vec<FiniteAction>,
}

impl GroupAction {
    pub fn from_spec(spec: &ActionSpec, torus: &Torus) -> Result<Self> {
        if spec.dim() != torus.dim() {
            return Err(Error::DimensionMismatch { expected: torus.dim(), found: spec.dim() });
        }
        let generators = spec
            .group
            .iter()
            .map(|(label, words)| FiniteAction::new(label.clone(), spec.order, torus.clone(), words))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAction { name: spec.name.clone(), generator_names: spec.generator_names.clone(), generators })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generators(&self) -> &[FiniteAction] {
        &self.generators
    }

    /// The single generator of a cyclic action.
    pub fn cyclic(&self) -> Result<&FiniteAction> {
        match self.generators.as_slice() {
            [g] => Ok(g),
            _ => Err(Error::InvalidAction(format!("{} is not cyclic", self.name))),
        }
    }

    pub fn check_order(&self) -> Outcome {
        self.generators.iter().try_for_each(FiniteAction::check_order)
    }

    pub fn check_compatibility(&self, bound: i64) -> Outcome {
        self.generators.iter().try_for_each(|g| g.check_compatibility(bound))
    }

    /// Pairwise commutation of the group generators on monomials up to `bound`.
    pub fn check_commute(&self, bound: i64) -> Outcome {
        let d = self.generator_names.len();
        for (a, g) in self.generators.iter().enumerate() {
            for h in &self.generators[a + 1..] {
                for m in box_monomials(d, bound) {
                    let (p1, t1) = h.image_of_monomial(&m);
                    let (q1, s1) = g.image_of_term(&p1, &t1);
                    let (p2, t2) = g.image_of_monomial(&m);
                    let (q2, s2) = h.image_of_term(&p2, &t2);
                    if q1 != q2 || s1 != s2 {
                        return Err(Counterexample::new(
                            format!("{}{} vs {}{} on d{:?}", g.label, h.label, h.label, g.label, m.0),
                            format!("{} d{:?}", q1, s1.0),
                            format!("{} d{:?}", q2, s2.0),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn freeness_witness(&self) -> bool {
        self.generators.iter().all(FiniteAction::freeness_witness)
    }
}

/// A phase `e^{πi(t + bθ)/L}` with integer `t` (mod `2L`) and `b`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct IntPhase(i64, i64);

impl IntPhase {
    fn add(self, o: IntPhase) -> IntPhase {
        IntPhase(self.0 + o.0, self.1 + o.1)
    }
}

/// Integer scaling of every phase met during a compatibility check.
struct IntForm {
    l: i64,
    dim: usize,
    turn: Vec<i64>,
    theta: Vec<i64>,
}

impl IntForm {
    fn new(torus: &Torus, images: &[GeneratorImage]) -> Self {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let d = torus.dim();
        let mut l: i64 = 1;
        let mut absorb = |q: &crate::scalar::Rational| {
            l = l.lcm(&q.denom().to_i64().expect("small denominator"));
        };
        for j in 0..d {
            for k in 0..d {
                let e = torus.theta().get(j, k);
                absorb(&e.constant);
                absorb(&e.theta);
            }
        }
        for img in images {
            absorb(img.coeff.turn());
            absorb(img.coeff.theta());
        }
        let scale = |q: &crate::scalar::Rational| -> i64 {
            (q * rat(l, 1)).to_integer().to_i64().expect("scaled phase fits in i64")
        };
        let mut turn = vec![0; d * d];
        let mut theta = vec![0; d * d];
        for j in 0..d {
            for k in 0..d {
                let e = torus.theta().get(j, k);
                turn[j * d + k] = scale(&e.constant);
                theta[j * d + k] = scale(&e.theta);
            }
        }
        IntForm { l, dim: d, turn, theta }
    }

    fn scaled(&self, p: &Phase) -> IntPhase {
        use num_traits::ToPrimitive;
        let t = p.turn() * rat(self.l, 1);
        let b = p.theta() * rat(self.l, 1);
        assert!(t.is_integer() && b.is_integer(), "phase denominator exceeds common scale");
        IntPhase(t.to_integer().to_i64().unwrap(), b.to_integer().to_i64().unwrap())
    }

    fn bilinear(&self, m: &Monomial, n: &Monomial) -> IntPhase {
        let (mut t, mut b) = (0, 0);
        for j in 0..self.dim {
            if m.0[j] == 0 {
                continue;
            }
            for k in 0..self.dim {
                let w = m.0[j] * n.0[k];
                t += self.turn[j * self.dim + k] * w;
                b += self.theta[j * self.dim + k] * w;
            }
        }
        IntPhase(t, b)
    }

    fn norm(&self, p: IntPhase) -> IntPhase {
        IntPhase(p.0.rem_euclid(2 * self.l), p.1)
    }
}

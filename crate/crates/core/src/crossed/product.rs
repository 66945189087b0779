use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use crate::actions::{FiniteAction, Word};
use crate::error::{Error, Result};
use crate::nctorus::{Monomial, Torus, TorusElement};
use crate::scalar::{CyclotomicField, Phase, PhasedScalar, Rational};

/// `A ⋊_α Z_N` for a twisted torus `A` and an order-`N` action `α`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    action: FiniteAction,
    context: u64,
}

/// `Σ a_{m,k} δ_m p^k` with `k ∈ [0, N)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CrossedElement {
    context: u64,
    order: u32,
    dim: usize,
    terms: BTreeMap<(Monomial, u32), PhasedScalar>,
}

impl CrossedProduct {
    pub fn new(action: FiniteAction) -> Self {
        let mut h = DefaultHasher::new();
        action.torus().theta().hash(&mut h);
        action.torus().field().order().hash(&mut h);
        action.torus().theta_value().hash(&mut h);
        action.order().hash(&mut h);
        action.images().hash(&mut h);
        CrossedProduct { action, context: h.finish() }
    }

    pub fn action(&self) -> &FiniteAction {
        &self.action
    }

    pub fn torus(&self) -> &Torus {
        self.action.torus()
    }

    pub fn field(&self) -> CyclotomicField {
        self.torus().field()
    }

    pub fn order(&self) -> u32 {
        self.action.order()
    }

    pub fn dim(&self) -> usize {
        self.torus().dim()
    }

    pub fn zero(&self) -> CrossedElement {
        CrossedElement { context: self.context, order: self.order(), dim: self.dim(), terms: BTreeMap::new() }
    }

    pub fn term(&self, m: Monomial, k: i64, c: PhasedScalar) -> CrossedElement {
        let mut x = self.zero();
        x.add_term(m, k, c);
        x
    }

    pub fn one(&self) -> CrossedElement {
        self.term(Monomial::zero(self.dim()), 0, PhasedScalar::one(self.field()))
    }

    pub fn scalar(&self, c: PhasedScalar) -> CrossedElement {
        self.term(Monomial::zero(self.dim()), 0, c)
    }

    pub fn rational(&self, q: Rational) -> CrossedElement {
        self.scalar(PhasedScalar::rational(self.field(), q))
    }

    /// The implementing unitary `p`.
    pub fn p(&self) -> CrossedElement {
        self.term(Monomial::zero(self.dim()), 1, PhasedScalar::one(self.field()))
    }

    /// `a ↦ a p^0`.
    pub fn embed(&self, a: &TorusElement) -> Result<CrossedElement> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: a.dim() });
        }
        let mut x = self.zero();
        for (m, c) in a.terms() {
            x.add_term(m.clone(), 0, c.clone());
        }
        Ok(x)
    }

    /// `phase · word · p^k` built from generator powers.
    pub fn word(&self, word: &Word, k: i64) -> Result<CrossedElement> {
        let (phase, m) = word.evaluate(self.torus())?;
        Ok(self.term(m, k, self.torus().scalar(&phase)?))
    }

    fn check(&self, x: &CrossedElement) -> Result<()> {
        if x.context != self.context {
            return Err(Error::ContextMismatch(format!(
                "element of order {} and dimension {} used in a different crossed product",
                x.order, x.dim
            )));
        }
        Ok(())
    }

    /// `α^k(δ_n)` as a single phased basis element.
    pub fn alpha_power(&self, n: &Monomial, k: u32) -> (Phase, Monomial) {
        let mut p = Phase::one();
        let mut m = n.clone();
        for _ in 0..k % self.order() {
            let (q, t) = self.action.image_of_monomial(&m);
            p = p.mul(&q);
            m = t;
        }
        (p, m)
    }

    /// `(a p^k)(b p^j) = a α^k(b) p^{k+j}`.
    pub fn mul(&self, x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        let mut alpha_cache: BTreeMap<(Monomial, u32), (Phase, Monomial)> = BTreeMap::new();
        for ((m, k), a) in &x.terms {
            for ((n, j), b) in &y.terms {
                let (q, t) = alpha_cache
                    .entry((n.clone(), *k))
                    .or_insert_with(|| self.alpha_power(n, *k))
                    .clone();
                let (w, sum) = self.torus().mul_monomials(m, &t);
                let phase = self.torus().fold_phase(&q.mul(&w));
                out.add_term(sum, (*k + *j) as i64, (a * b).mul_phase(&phase)?);
            }
        }
        Ok(out)
    }

    /// `(a p^k)* = α^{-k}(a*) p^{-k}`.
    pub fn star(&self, x: &CrossedElement) -> Result<CrossedElement> {
        self.check(x)?;
        let n = self.order();
        let mut out = self.zero();
        for ((m, k), c) in &x.terms {
            let back = (n - k) % n;
            let (q, t) = self.alpha_power(&-m, back);
            out.add_term(t, back as i64, c.conj().mul_phase(&q)?);
        }
        Ok(out)
    }

    /// `β̂(a p^k) = λ̄^k a p^k`.
    pub fn beta_hat(&self, x: &CrossedElement) -> Result<CrossedElement> {
        self.check(x)?;
        let mut out = self.zero();
        for ((m, k), c) in &x.terms {
            let l = Phase::root_of_unity(self.order(), -(*k as i64));
            out.add_term(m.clone(), *k as i64, c.mul_phase(&l)?);
        }
        Ok(out)
    }

    pub fn pow(&self, x: &CrossedElement, k: u32) -> Result<CrossedElement> {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Coefficient `a_k` of `p^k` as a torus element.
    pub fn component(&self, x: &CrossedElement, k: u32) -> TorusElement {
        let mut a = TorusElement::zero(self.dim());
        for ((m, j), c) in &x.terms {
            if *j == k % self.order() {
                a.add_term(m.clone(), c.clone());
            }
        }
        a
    }

    pub fn fold(&self, x: &CrossedElement, theta: &Rational) -> Result<CrossedElement> {
        let mut out = self.zero();
        for ((m, k), c) in &x.terms {
            out.add_term(m.clone(), *k as i64, c.fold(theta)?);
        }
        Ok(out)
    }
}

impl CrossedElement {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, u32), &PhasedScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial, k: u32) -> PhasedScalar {
        self.terms.get(&(m.clone(), k % self.order)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, k: i64, c: PhasedScalar) {
        assert_eq!(m.dim(), self.dim, "monomial dimension");
        if c.is_zero() {
            return;
        }
        let k = k.rem_euclid(self.order as i64) as u32;
        use std::collections::btree_map::Entry;
        match self.terms.entry((m, k)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn scale(&self, c: &PhasedScalar) -> CrossedElement {
        let mut out = CrossedElement { terms: BTreeMap::new(), ..self.clone() };
        for ((m, k), a) in &self.terms {
            out.add_term(m.clone(), *k as i64, a * c);
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> CrossedElement {
        let mut out = CrossedElement { terms: BTreeMap::new(), ..self.clone() };
        for ((m, k), a) in &self.terms {
            out.add_term(m.clone(), *k as i64, a.scale(q));
        }
        out
    }

    fn same_context(&self, other: &CrossedElement) {
        assert_eq!(self.context, other.context, "crossed elements from different products");
    }
}

impl<'a> Add<&'a CrossedElement> for &'a CrossedElement {
    type Output = CrossedElement;
    fn add(self, rhs: &CrossedElement) -> CrossedElement {
        self.same_context(rhs);
        let mut out = self.clone();
        for ((m, k), c) in &rhs.terms {
            out.add_term(m.clone(), *k as i64, c.clone());
        }
        out
    }
}

impl Neg for &CrossedElement {
    type Output = CrossedElement;
    fn neg(self) -> CrossedElement {
        CrossedElement {
            terms: self.terms.iter().map(|(key, c)| (key.clone(), -c)).collect(),
            ..self.clone()
        }
    }
}

impl<'a> Sub<&'a CrossedElement> for &'a CrossedElement {
    type Output = CrossedElement;
    fn sub(self, rhs: &CrossedElement) -> CrossedElement {
        self + &(-rhs)
    }
}

impl fmt::Debug for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((m, k), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}] d{:?}", m.0)?;
            if *k > 0 {
                write!(f, " p^{k}")?;
            }
        }
        Ok(())
    }
}

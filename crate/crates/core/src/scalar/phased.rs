use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Result;
use crate::scalar::{Cyclotomic, CyclotomicField, Phase, Rational};

/// `Σ_b c_b · e^{πi bθ}` with cyclotomic `c_b`, θ kept formal.
///
/// Distinct `b` are treated as linearly independent, which is the irrational-θ
/// regime. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PhasedScalar {
    terms: BTreeMap<Rational, Cyclotomic>,
}

impl PhasedScalar {
    pub fn zero() -> Self {
        PhasedScalar::default()
    }

    pub fn one(field: CyclotomicField) -> Self {
        PhasedScalar::constant(field.one())
    }

    pub fn rational(field: CyclotomicField, q: Rational) -> Self {
        PhasedScalar::constant(field.rational(q))
    }

    pub fn constant(c: Cyclotomic) -> Self {
        PhasedScalar::phased(Rational::zero(), c)
    }

    /// `c · e^{πi bθ}`.
    pub fn phased(b: Rational, c: Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(b, c);
        }
        PhasedScalar { terms }
    }

    pub fn from_phase(field: CyclotomicField, phase: &Phase) -> Result<Self> {
        Ok(PhasedScalar::phased(phase.theta().clone(), field.half_turn(phase.turn())?))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Cyclotomic)> {
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Rational::zero()).is_some_and(Cyclotomic::is_one)
    }

    /// The coefficient of `e^{0}`, if the scalar is θ-free.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Rational::zero()).cloned(),
            _ => None,
        }
    }

    fn field(&self) -> Option<CyclotomicField> {
        self.terms.values().next().map(Cyclotomic::field)
    }

    fn insert_add(terms: &mut BTreeMap<Rational, Cyclotomic>, b: Rational, c: Cyclotomic) {
        use std::collections::btree_map::Entry;
        match terms.entry(b) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> PhasedScalar {
        if q.is_zero() {
            return PhasedScalar::zero();
        }
        PhasedScalar { terms: self.terms.iter().map(|(b, c)| (b.clone(), c.scale(q))).collect() }
    }

    pub fn mul_cyclotomic(&self, z: &Cyclotomic) -> PhasedScalar {
        let mut out = BTreeMap::new();
        for (b, c) in &self.terms {
            PhasedScalar::insert_add(&mut out, b.clone(), c * z);
        }
        PhasedScalar { terms: out }
    }

    /// Multiply by a unit phase; the root of unity must exist in the field.
    pub fn mul_phase(&self, phase: &Phase) -> Result<PhasedScalar> {
        let Some(field) = self.field() else {
            return Ok(PhasedScalar::zero());
        };
        let root = field.half_turn(phase.turn())?;
        Ok(PhasedScalar {
            terms: self.terms.iter().map(|(b, c)| (b + phase.theta(), c * &root)).collect(),
        })
    }

    /// Complex conjugation: `(b, c) ↦ (-b, conj c)`.
    pub fn conj(&self) -> PhasedScalar {
        PhasedScalar { terms: self.terms.iter().map(|(b, c)| (-b, c.conj())).collect() }
    }

    pub fn pow(&self, exp: u32) -> PhasedScalar {
        let Some(field) = self.field() else {
            return if exp == 0 { PhasedScalar::zero() } else { self.clone() };
        };
        let mut acc = PhasedScalar::one(field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute the rational value `theta` for θ, folding every phase into
    /// the cyclotomic coefficient.
    pub fn fold(&self, theta: &Rational) -> Result<PhasedScalar> {
        let mut out = BTreeMap::new();
        for (b, c) in &self.terms {
            let root = c.field().half_turn(&(b * theta))?;
            PhasedScalar::insert_add(&mut out, Rational::zero(), c * &root);
        }
        Ok(PhasedScalar { terms: out })
    }
}

/// Substitute a rational θ into `s`.
pub fn rational_theta_fold(s: &PhasedScalar, theta: &Rational) -> Result<PhasedScalar> {
    s.fold(theta)
}

impl<'a> Add<&'a PhasedScalar> for &'a PhasedScalar {
    type Output = PhasedScalar;
    fn add(self, rhs: &PhasedScalar) -> PhasedScalar {
        let mut terms = self.terms.clone();
        for (b, c) in &rhs.terms {
            PhasedScalar::insert_add(&mut terms, b.clone(), c.clone());
        }
        PhasedScalar { terms }
    }
}

impl Neg for &PhasedScalar {
    type Output = PhasedScalar;
    fn neg(self) -> PhasedScalar {
        PhasedScalar { terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect() }
    }
}

impl<'a> Sub<&'a PhasedScalar> for &'a PhasedScalar {
    type Output = PhasedScalar;
    fn sub(self, rhs: &PhasedScalar) -> PhasedScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a PhasedScalar> for &'a PhasedScalar {
    type Output = PhasedScalar;
    fn mul(self, rhs: &PhasedScalar) -> PhasedScalar {
        let mut terms = BTreeMap::new();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &rhs.terms {
                PhasedScalar::insert_add(&mut terms, b1 + b2, c1 * c2);
            }
        }
        PhasedScalar { terms }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<PhasedScalar> for PhasedScalar {
            type Output = PhasedScalar;
            fn $method(self, rhs: PhasedScalar) -> PhasedScalar { (&self).$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for PhasedScalar {
    type Output = PhasedScalar;
    fn neg(self) -> PhasedScalar {
        -&self
    }
}

impl fmt::Debug for PhasedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PhasedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if b.is_zero() {
                write!(f, "({c})")?;
            } else if b.is_one() {
                write!(f, "({c})*exp(pi i theta)")?;
            } else {
                write!(f, "({c})*exp({b} pi i theta)")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn field() -> CyclotomicField {
        CyclotomicField::new(24).unwrap()
    }

    #[test]
    fn opposite_phases_cancel() {
        let f = field();
        let a = PhasedScalar::phased(rat(1, 1), f.one());
        let b = PhasedScalar::phased(rat(-1, 1), f.one());
        assert!((&a * &b).is_one());
    }

    #[test]
    fn cube_of_third_phase() {
        let f = field();
        let a = PhasedScalar::phased(rat(1, 3), f.one());
        assert_eq!(a.pow(3), PhasedScalar::phased(rat(1, 1), f.one()));
    }

    #[test]
    fn conjugate_of_i_phase() {
        let f = field();
        let i = f.root(4, 1).unwrap();
        let a = PhasedScalar::phased(rat(1, 1), i.clone());
        assert_eq!(a.conj(), PhasedScalar::phased(rat(-1, 1), -&i));
    }

    #[test]
    fn fold_examples() {
        let f = field();
        let one = PhasedScalar::phased(rat(1, 1), f.one());
        assert_eq!(one.fold(&rat(1, 2)).unwrap(), PhasedScalar::constant(f.root(4, 1).unwrap()));
        let c = PhasedScalar::constant(f.root(8, 3).unwrap());
        assert_eq!(c.fold(&rat(7, 11)).unwrap(), c);
        let two = PhasedScalar::phased(rat(2, 1), f.one());
        assert_eq!(two.fold(&rat(1, 3)).unwrap(), PhasedScalar::constant(f.root(3, 1).unwrap()));
    }

    #[test]
    fn fold_outside_field_fails() {
        let one = PhasedScalar::phased(rat(1, 1), field().one());
        assert!(one.fold(&rat(1, 5)).is_err());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let f = field();
        let a = PhasedScalar::phased(rat(1, 2), f.one());
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
    }
}

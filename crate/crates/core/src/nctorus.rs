//! Twisted group algebras `C*(Z^d, ω_θ)` at the polynomial level.
//!
//! Basis elements are `δ_m` for `m ∈ Z^d`, multiplied by
//! `δ_m * δ_n = ω(m, n) δ_{m+n}` with the bicharacter
//! `ω(m, n) = exp(πi Σ_{jk} θ_jk m_j n_k)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat, CyclotomicField, Phase, PhasedScalar, Rational};

/// The real number `constant + theta·θ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ThetaEntry {
    pub constant: Rational,
    pub theta: Rational,
}

impl ThetaEntry {
    pub fn zero() -> Self {
        ThetaEntry { constant: Rational::zero(), theta: Rational::zero() }
    }

    pub fn constant(q: Rational) -> Self {
        ThetaEntry { constant: q, theta: Rational::zero() }
    }

    /// The symbolic parameter θ itself.
    pub fn free() -> Self {
        ThetaEntry { constant: Rational::zero(), theta: Rational::one() }
    }

    pub fn new(constant: Rational, theta: Rational) -> Self {
        ThetaEntry { constant, theta }
    }

    fn neg(&self) -> Self {
        ThetaEntry { constant: -&self.constant, theta: -&self.theta }
    }

    pub fn fold(&self, theta: &Rational) -> Self {
        ThetaEntry::constant(&self.constant + &self.theta * theta)
    }

    /// Equality of the phases `e^{πi·}` these entries produce on integer pairs.
    pub fn same_phase(&self, other: &ThetaEntry) -> bool {
        self.theta == other.theta
            && Phase::half_turns(self.constant.clone()) == Phase::half_turns(other.constant.clone())
    }
}

impl fmt::Display for ThetaEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant.is_zero(), self.theta.is_zero()) {
            (_, true) => write!(f, "{}", self.constant),
            (true, false) if self.theta.is_one() => write!(f, "theta"),
            (true, false) if (-&self.theta).is_one() => write!(f, "-theta"),
            (true, false) => write!(f, "{} theta", self.theta),
            (false, false) => write!(f, "{} + {} theta", self.constant, self.theta),
        }
    }
}

/// Antisymmetric `d × d` matrix of [`ThetaEntry`] values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ThetaMatrix {
    dim: usize,
    entries: Vec<ThetaEntry>,
}

impl ThetaMatrix {
    pub fn zero(dim: usize) -> Self {
        ThetaMatrix { dim, entries: vec![ThetaEntry::zero(); dim * dim] }
    }

    /// Set `θ_jk` (zero-based `j < k`) and `θ_kj = -θ_jk`.
    pub fn with(mut self, j: usize, k: usize, value: ThetaEntry) -> Self {
        self.set(j, k, value);
        self
    }

    pub fn set(&mut self, j: usize, k: usize, value: ThetaEntry) {
        assert!(j != k && j < self.dim && k < self.dim, "off-diagonal index required");
        self.entries[k * self.dim + j] = value.neg();
        self.entries[j * self.dim + k] = value;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> &ThetaEntry {
        &self.entries[j * self.dim + k]
    }

    /// `θ_23 = -θ` and all other entries zero: the relations `UV = VU`,
    /// `UW = WU`, `WV = e^{2πiθ} VW`.
    pub fn paper_3d() -> Self {
        ThetaMatrix::zero(3).with(1, 2, ThetaEntry::new(Rational::zero(), rat(-1, 1)))
    }

    /// The rotation subalgebra on `V, W` alone.
    pub fn paper_2d() -> Self {
        ThetaMatrix::zero(2).with(0, 1, ThetaEntry::new(Rational::zero(), rat(-1, 1)))
    }

    pub fn fold(&self, theta: &Rational) -> Self {
        ThetaMatrix { dim: self.dim, entries: self.entries.iter().map(|e| e.fold(theta)).collect() }
    }

    /// Antisymmetry with diagonal zero, constants compared modulo 2.
    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|j| {
            (0..self.dim).all(|k| self.get(j, k).same_phase(&self.get(k, j).neg()))
        })
    }

    /// `exp(πi Σ θ_jk m_j n_k)`.
    pub fn bicharacter(&self, m: &Monomial, n: &Monomial) -> Phase {
        let mut turn = SmallSum::default();
        let mut theta = SmallSum::default();
        for (j, &mj) in m.0.iter().enumerate() {
            if mj == 0 {
                continue;
            }
            for (k, &nk) in n.0.iter().enumerate() {
                if nk == 0 || j == k {
                    continue;
                }
                let e = self.get(j, k);
                turn.add(&e.constant, mj * nk);
                theta.add(&e.theta, mj * nk);
            }
        }
        Phase::new(turn.finish(), theta.finish())
    }
}

/// `Σ q_i w_i` kept in machine integers while it fits.
#[derive(Default)]
struct SmallSum {
    num: i128,
    den: i128,
    big: Option<Rational>,
}

impl SmallSum {
    fn add(&mut self, q: &Rational, w: i64) {
        if q.is_zero() {
            return;
        }
        if self.big.is_none() {
            if let (Some(qn), Some(qd)) = (q.numer().to_i64(), q.denom().to_i64()) {
                let (qn, qd) = (qn as i128 * w as i128, qd as i128);
                if self.den == 0 {
                    (self.num, self.den) = (qn, qd);
                    return;
                }
                let g = num_integer::gcd(self.den, qd);
                let num = self.num.checked_mul(qd / g).zip(qn.checked_mul(self.den / g));
                if let (Some((a, b)), Some(den)) = (num, self.den.checked_mul(qd / g)) {
                    if let Some(sum) = a.checked_add(b) {
                        (self.num, self.den) = (sum, den);
                        return;
                    }
                }
            }
            self.big = Some(self.small_value());
        }
        let acc = self.big.take().expect("promoted");
        self.big = Some(acc + q * rat(w, 1));
    }

    fn small_value(&self) -> Rational {
        if self.den == 0 {
            Rational::zero()
        } else {
            Rational::new(self.num.into(), self.den.into())
        }
    }

    fn finish(self) -> Rational {
        match self.big {
            Some(q) => q,
            None => self.small_value(),
        }
    }
}

impl fmt::Display for ThetaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for j in 0..self.dim {
            for k in j + 1..self.dim {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "theta_{}{} = {}", j + 1, k + 1, self.get(j, k))?;
            }
        }
        Ok(())
    }
}

/// Exponent vector of a basis element `δ_m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn zero(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        Monomial(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn scaled(&self, k: i64) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|e| e.abs()).max().unwrap_or(0)
    }
}

impl Add for &Monomial {
    type Output = Monomial;
    fn add(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for &Monomial {
    type Output = Monomial;
    fn neg(self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Finite linear combination of basis elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusElement {
    dim: usize,
    terms: BTreeMap<Monomial, PhasedScalar>,
}

impl TorusElement {
    pub fn zero(dim: usize) -> Self {
        TorusElement { dim, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PhasedScalar)> {
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

    pub fn coefficient(&self, m: &Monomial) -> PhasedScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Add `c · δ_m` in place.
    pub fn add_term(&mut self, m: Monomial, c: PhasedScalar) {
        assert_eq!(m.dim(), self.dim, "monomial dimension");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn scale(&self, c: &PhasedScalar) -> TorusElement {
        let mut out = TorusElement::zero(self.dim);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> TorusElement {
        TorusElement {
            dim: self.dim,
            terms: if q.is_zero() {
                BTreeMap::new()
            } else {
                self.terms.iter().map(|(m, c)| (m.clone(), c.scale(q))).collect()
            },
        }
    }

    /// Largest absolute exponent appearing in the support.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(Monomial::max_abs).max().unwrap_or(0)
    }

    pub fn fold(&self, theta: &Rational) -> Result<TorusElement> {
        let mut out = TorusElement::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.fold(theta)?);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        assert_eq!(self.dim, rhs.dim, "adding torus elements of different dimension");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        TorusElement { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl<'a> Sub<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self + &(-rhs)
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}] d{:?}", m.0)?;
        }
        Ok(())
    }
}

/// A twisted torus: a θ-matrix together with the scalar field it lives over.
///
/// When a rational value for θ is fixed the matrix is stored already folded and
/// every phase handed to the context is folded the same way.
#[derive(Clone, Debug)]
pub struct Torus {
    theta: ThetaMatrix,
    field: CyclotomicField,
    theta_value: Option<Rational>,
}

impl Torus {
    pub fn new(theta: ThetaMatrix, field: CyclotomicField) -> Result<Self> {
        if !theta.is_antisymmetric() {
            return Err(Error::InconsistentData("theta matrix is not antisymmetric".into()));
        }
        for e in &theta.entries {
            // every ω value is e^{πi Σ a m n}; the constants must have roots in the field
            field.half_turn(&e.constant)?;
        }
        Ok(Torus { theta, field, theta_value: None })
    }

    /// Specialise θ to a rational value.
    pub fn with_theta_value(theta: ThetaMatrix, field: CyclotomicField, value: Rational) -> Result<Self> {
        let mut torus = Torus::new(theta.fold(&value), field)?;
        torus.theta_value = Some(value);
        Ok(torus)
    }

    pub fn dim(&self) -> usize {
        self.theta.dim
    }

    pub fn theta(&self) -> &ThetaMatrix {
        &self.theta
    }

    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    pub fn theta_value(&self) -> Option<&Rational> {
        self.theta_value.as_ref()
    }

    /// Apply the context's θ specialisation (if any) to an external phase.
    pub fn fold_phase(&self, p: &Phase) -> Phase {
        match &self.theta_value {
            Some(q) => p.fold(q),
            None => p.clone(),
        }
    }

    pub fn scalar(&self, p: &Phase) -> Result<PhasedScalar> {
        PhasedScalar::from_phase(self.field, &self.fold_phase(p))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found });
        }
        Ok(())
    }

    pub fn cocycle_phase(&self, m: &Monomial, n: &Monomial) -> Result<Phase> {
        self.check_dim(m.dim())?;
        self.check_dim(n.dim())?;
        Ok(self.theta.bicharacter(m, n))
    }

    /// `ω_θ(m, n)` as a scalar.
    pub fn cocycle(&self, m: &Monomial, n: &Monomial) -> Result<PhasedScalar> {
        let p = self.cocycle_phase(m, n)?;
        PhasedScalar::from_phase(self.field, &p)
    }

    pub fn one(&self) -> TorusElement {
        self.term(Monomial::zero(self.dim()), PhasedScalar::one(self.field))
    }

    pub fn zero(&self) -> TorusElement {
        TorusElement::zero(self.dim())
    }

    pub fn term(&self, m: Monomial, c: PhasedScalar) -> TorusElement {
        let mut x = TorusElement::zero(self.dim());
        x.add_term(m, c);
        x
    }

    pub fn monomial(&self, exps: &[i64]) -> Result<TorusElement> {
        self.check_dim(exps.len())?;
        Ok(self.term(Monomial(exps.to_vec()), PhasedScalar::one(self.field)))
    }

    /// The unitary `δ_{e_i}`.
    pub fn generator(&self, i: usize) -> TorusElement {
        self.term(Monomial::unit(self.dim(), i), PhasedScalar::one(self.field))
    }

    pub fn rational(&self, q: Rational) -> TorusElement {
        self.term(Monomial::zero(self.dim()), PhasedScalar::rational(self.field, q))
    }

    /// Twisted convolution.
    pub fn mul(&self, x: &TorusElement, y: &TorusElement) -> Result<TorusElement> {
        self.check_dim(x.dim)?;
        self.check_dim(y.dim)?;
        let mut out = TorusElement::zero(self.dim());
        for (m, a) in &x.terms {
            for (n, b) in &y.terms {
                let w = self.theta.bicharacter(m, n);
                out.add_term(m + n, (a * b).mul_phase(&w)?);
            }
        }
        Ok(out)
    }

    /// `(c δ_m)* = c̄ δ_{-m}`; no cocycle correction since `ω(m, -m) = 1`.
    pub fn star(&self, x: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero(x.dim);
        for (m, c) in &x.terms {
            out.add_term(-m, c.conj());
        }
        out
    }

    pub fn pow(&self, x: &TorusElement, k: u32) -> Result<TorusElement> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// `xy - yx`.
    pub fn commutator(&self, x: &TorusElement, y: &TorusElement) -> Result<TorusElement> {
        Ok(&self.mul(x, y)? - &self.mul(y, x)?)
    }

    /// Product `δ_m δ_n` of two basis elements, as `(phase, monomial)`.
    pub fn mul_monomials(&self, m: &Monomial, n: &Monomial) -> (Phase, Monomial) {
        (self.theta.bicharacter(m, n), m + n)
    }
}

/// Named presets of the noncommutative torus with their unitary generators.
pub fn generators(preset: &str, field: CyclotomicField) -> Result<(Torus, Vec<TorusElement>)> {
    let theta = match preset {
        "paper-3d" => ThetaMatrix::paper_3d(),
        "paper-2d" => ThetaMatrix::paper_2d(),
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    let torus = Torus::new(theta, field)?;
    let gens: Vec<_> = (0..torus.dim()).map(|i| torus.generator(i)).collect();
    check_rotation_relation(&torus, &gens[gens.len() - 2], &gens[gens.len() - 1])?;
    if torus.dim() == 3 {
        for i in 1..3 {
            if !torus.commutator(&gens[0], &gens[i])?.is_zero() {
                return Err(Error::InconsistentData("U is not central in the 3d preset".into()));
            }
        }
    }
    Ok((torus, gens))
}

/// The sign convention guard: `WV = e^{2πiθ} VW` must hold verbatim.
fn check_rotation_relation(torus: &Torus, v: &TorusElement, w: &TorusElement) -> Result<()> {
    let wv = torus.mul(w, v)?;
    let vw = torus.mul(v, w)?;
    let phase = torus.scalar(&Phase::theta_power(rat(2, 1)))?;
    if wv != vw.scale(&phase) {
        return Err(Error::InconsistentData(format!(
            "cocycle convention broken: WV = {wv}, VW = {vw}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn preset3d() -> (Torus, Vec<TorusElement>) {
        generators("paper-3d", CyclotomicField::default()).unwrap()
    }

    #[test]
    fn preset_relations_hold() {
        let (t, g) = preset3d();
        let (u, v, w) = (&g[0], &g[1], &g[2]);
        assert_eq!(t.mul(u, v).unwrap(), t.mul(v, u).unwrap());
        assert_eq!(t.mul(u, w).unwrap(), t.mul(w, u).unwrap());
        let e2 = t.scalar(&Phase::theta_power(rat(2, 1))).unwrap();
        assert_eq!(t.mul(w, v).unwrap(), t.mul(v, w).unwrap().scale(&e2));
    }

    #[test]
    fn two_dimensional_preset() {
        let (t, g) = generators("paper-2d", CyclotomicField::default()).unwrap();
        let e2 = t.scalar(&Phase::theta_power(rat(2, 1))).unwrap();
        assert_eq!(t.mul(&g[1], &g[0]).unwrap(), t.mul(&g[0], &g[1]).unwrap().scale(&e2));
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(
            generators("paper-4d", CyclotomicField::default()),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn cocycle_trivial_cases() {
        let (t, _) = preset3d();
        let m = Monomial(vec![1, -2, 3]);
        assert!(t.cocycle(&m, &Monomial::zero(3)).unwrap().is_one());
        assert!(t.cocycle(&m, &m).unwrap().is_one());
    }

    #[test]
    fn cocycle_dimension_mismatch() {
        let (t, _) = preset3d();
        let r = t.cocycle(&Monomial(vec![1, 0]), &Monomial(vec![1, 0, 0]));
        assert_eq!(r, Err(Error::DimensionMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn vw_squared_against_v2w2() {
        // (VW)(VW) = ω(e2,e3) δ_{e2+e3} ω(e2,e3) δ_{e2+e3} = ω(e2,e3)^2 ω(e2+e3,e2+e3) δ_{2e2+2e3}
        // V^2 W^2 = ω(2e2, 2e3) δ_{2e2+2e3}; with θ_23 = -θ: ω(e2,e3) = e^{-πiθ}, ω(2e2,2e3) = e^{-4πiθ}
        // so (VW)^2 = e^{-2πiθ} δ and V^2W^2 = e^{-4πiθ} δ, i.e. (VW)^2 = e^{2πiθ} V^2 W^2.
        let (t, g) = preset3d();
        let vw = t.mul(&g[1], &g[2]).unwrap();
        let lhs = t.mul(&vw, &vw).unwrap();
        let v2 = t.pow(&g[1], 2).unwrap();
        let w2 = t.pow(&g[2], 2).unwrap();
        let rhs = t.mul(&v2, &w2).unwrap();
        assert_ne!(lhs, rhs);
        let corr = t.scalar(&Phase::theta_power(rat(2, 1))).unwrap();
        assert_eq!(lhs, rhs.scale(&corr));
        assert_eq!(lhs, t.monomial(&[0, 2, 2]).unwrap().scale(&t.scalar(&Phase::theta_power(rat(-2, 1))).unwrap()));
    }

    #[test]
    fn monomials_are_unitary() {
        let (t, g) = preset3d();
        let x = t.monomial(&[2, -1, 3]).unwrap();
        assert_eq!(t.mul(&x, &t.star(&x)).unwrap(), t.one());
        assert_eq!(t.mul(&t.star(&g[0]), &g[0]).unwrap(), t.one());
    }

    #[test]
    fn star_is_antimultiplicative_on_uv() {
        let (t, g) = preset3d();
        let uv = t.mul(&g[0], &g[1]).unwrap();
        assert_eq!(t.star(&uv), t.mul(&t.star(&g[1]), &t.star(&g[0])).unwrap());
    }

    #[test]
    fn folded_torus_uses_roots() {
        let f = CyclotomicField::new(24).unwrap();
        let t = Torus::with_theta_value(ThetaMatrix::paper_2d(), f, rat(1, 4)).unwrap();
        let v = t.generator(0);
        let w = t.generator(1);
        // WV = e^{2πi/4} VW = i VW
        let i = PhasedScalar::constant(f.root(4, 1).unwrap());
        assert_eq!(t.mul(&w, &v).unwrap(), t.mul(&v, &w).unwrap().scale(&i));
    }

    #[test]
    fn theta_constants_need_roots() {
        let f = CyclotomicField::new(24).unwrap();
        let bad = ThetaMatrix::zero(2).with(0, 1, ThetaEntry::constant(rat(1, 5)));
        assert!(Torus::new(bad, f).is_err());
    }
}

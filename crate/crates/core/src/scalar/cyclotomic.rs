//! Exact arithmetic in the cyclotomic field `Q(ζ_M)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(M)-1}` and every
//! operation reduces modulo the `M`-th cyclotomic polynomial, so two values are
//! equal exactly when their coefficient vectors are.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Order used when nothing else is configured; covers every `e^{πik/12}`.
pub const DEFAULT_ORDER: u32 = 24;

/// Reduced forms of `ζ^k` for `k = 0..M`.
struct PowerTable {
    degree: usize,
    powers: Vec<Vec<i64>>,
}

impl PowerTable {
    fn build(order: u32) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..order {
            powers.push(current.clone());
            // multiply by ζ: shift up, then fold the overflow with the monic relation
            let top = current[degree - 1];
            for i in (1..degree).rev() {
                current[i] = current[i - 1];
            }
            current[0] = 0;
            if top != 0 {
                for (c, p) in current.iter_mut().zip(&phi) {
                    *c -= top * p;
                }
            }
        }
        PowerTable { degree, powers }
    }
}

/// Integer coefficients (low degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    // x^n - 1
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = divide_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

fn table_for(order: u32) -> &'static PowerTable {
    static TABLES: OnceLock<Mutex<HashMap<u32, &'static PowerTable>>> = OnceLock::new();
    let mut tables = TABLES.get_or_init(Default::default).lock().unwrap();
    tables
        .entry(order)
        .or_insert_with(|| Box::leak(Box::new(PowerTable::build(order))))
}

/// Handle on `Q(ζ_M)`. Cheap to copy; the reduction table is built once per order.
#[derive(Clone, Copy)]
pub struct CyclotomicField {
    order: u32,
    table: &'static PowerTable,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::OrderMismatch { needed: "0".into(), order });
        }
        Ok(CyclotomicField { order, table: table_for(order) })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(M)`, the dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.table.degree
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic { field: *self, repr: Coeffs::Small(vec![0; self.degree()], 1) }
    }

    pub fn one(&self) -> Cyclotomic {
        self.integer(1)
    }

    pub fn rational(&self, q: Rational) -> Cyclotomic {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = q.numer().clone();
        Cyclotomic::from_big(*self, num, q.denom().clone())
    }

    pub fn integer(&self, n: i64) -> Cyclotomic {
        let mut num = vec![0; self.degree()];
        num[0] = n;
        Cyclotomic { field: *self, repr: Coeffs::Small(num, 1) }
    }

    /// `ζ_M^k` for the session order `M`.
    pub fn zeta_pow(&self, k: i64) -> Cyclotomic {
        let idx = k.rem_euclid(self.order as i64) as usize;
        Cyclotomic { field: *self, repr: Coeffs::Small(self.table.powers[idx].clone(), 1) }
    }

    /// `e^{2πik/m}`; fails unless `m` divides the session order.
    pub fn root(&self, m: u32, k: i64) -> Result<Cyclotomic> {
        if m == 0 || !self.order.is_multiple_of(m) {
            return Err(Error::OrderMismatch { needed: m.to_string(), order: self.order });
        }
        Ok(self.zeta_pow(k * (self.order / m) as i64))
    }

    /// `e^{πi t}` for rational `t`; requires `t·M/2` to be an integer.
    pub fn half_turn(&self, t: &Rational) -> Result<Cyclotomic> {
        if let (Some(n), Some(d)) = (t.numer().to_i64(), t.denom().to_i64()) {
            let scaled = n as i128 * self.order as i128;
            let d2 = 2 * d as i128;
            if scaled % d2 != 0 {
                return Err(Error::OrderMismatch { needed: d2.to_string(), order: self.order });
            }
            return Ok(self.zeta_pow((scaled / d2).rem_euclid(self.order as i128) as i64));
        }
        let scaled = t * Rational::from_integer(BigInt::from(self.order)) / Rational::from_integer(2.into());
        if !scaled.is_integer() {
            return Err(Error::OrderMismatch { needed: (t.denom() * 2u32).to_string(), order: self.order });
        }
        let k = scaled.to_integer().mod_floor(&BigInt::from(self.order));
        let k: i64 = k.try_into().expect("reduced exponent fits in i64");
        Ok(self.zeta_pow(k))
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CyclotomicField {}

impl Hash for CyclotomicField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ{})", self.order)
    }
}

impl Default for CyclotomicField {
    fn default() -> Self {
        CyclotomicField::new(DEFAULT_ORDER).expect("default order is valid")
    }
}

/// Integer numerators over one positive denominator, coprime as a whole.
/// `Small` is used exactly when everything fits in `i64`, so the derived
/// equality and hash agree with value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Coeffs {
    Small(Vec<i64>, i64),
    Big(Vec<BigInt>, BigInt),
}

/// An element of `Q(ζ_M)` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    field: CyclotomicField,
    repr: Coeffs,
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Cyclotomic {
    fn from_i128(field: CyclotomicField, mut num: Vec<i128>, mut den: i128) -> Cyclotomic {
        debug_assert!(den != 0);
        let mut g = den;
        for &n in &num {
            if g == 1 {
                break;
            }
            g = gcd_i128(g, n);
        }
        if den < 0 {
            g = -g.abs();
        } else {
            g = g.abs();
        }
        if g != 1 {
            num.iter_mut().for_each(|n| *n /= g);
            den /= g;
        }
        let small: Option<Vec<i64>> = num.iter().map(|&n| i64::try_from(n).ok()).collect();
        match (small, i64::try_from(den)) {
            (Some(num), Ok(den)) => Cyclotomic { field, repr: Coeffs::Small(num, den) },
            _ => Cyclotomic {
                field,
                repr: Coeffs::Big(num.into_iter().map(BigInt::from).collect(), BigInt::from(den)),
            },
        }
    }

    fn from_big(field: CyclotomicField, mut num: Vec<BigInt>, mut den: BigInt) -> Cyclotomic {
        let mut g = den.clone();
        for n in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            num.iter_mut().for_each(|n| *n = &*n / &g);
            den = &den / &g;
        }
        let small: Option<Vec<i64>> = num.iter().map(ToPrimitive::to_i64).collect();
        match (small, den.to_i64()) {
            (Some(num), Some(den)) => Cyclotomic { field, repr: Coeffs::Small(num, den) },
            _ => Cyclotomic { field, repr: Coeffs::Big(num, den) },
        }
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Coeffs::Small(n, d) => (n.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*d)),
            Coeffs::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    pub fn field(&self) -> CyclotomicField {
        self.field
    }

    /// Power-basis coefficients as rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        let (num, den) = self.big_parts();
        num.into_iter().map(|n| Rational::new(n, den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Coeffs::Small(n, _) => n.iter().all(|&x| x == 0),
            Coeffs::Big(n, _) => n.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Coeffs::Small(n, d) => *d == 1 && n[0] == 1 && n[1..].iter().all(|&x| x == 0),
            Coeffs::Big(..) => false,
        }
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        let (num, den) = self.big_parts();
        num[1..].iter().all(Zero::is_zero).then(|| Rational::new(num[0].clone(), den))
    }

    fn check_field(&self, other: &Cyclotomic) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixing cyclotomic fields of different orders"
        );
    }

    pub fn scale(&self, q: &Rational) -> Cyclotomic {
        if q.is_zero() {
            return self.field.zero();
        }
        if let (Coeffs::Small(n, d), Some(qn), Some(qd)) = (&self.repr, q.numer().to_i64(), q.denom().to_i64()) {
            let num = n.iter().map(|&x| x as i128 * qn as i128).collect();
            return Cyclotomic::from_i128(self.field, num, *d as i128 * qd as i128);
        }
        let (num, den) = self.big_parts();
        let num = num.into_iter().map(|x| x * q.numer()).collect();
        Cyclotomic::from_big(self.field, num, den * q.denom())
    }

    /// `Σ_j c_j ζ^{σ(j)}` for an index map `σ`, reduced.
    fn permute_powers(&self, index: impl Fn(usize) -> usize) -> Cyclotomic {
        let deg = self.field.degree();
        let powers = &self.field.table.powers;
        if let Coeffs::Small(n, d) = &self.repr {
            let mut out = vec![0i128; deg];
            let mut ok = true;
            'outer: for (j, &c) in n.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (o, &p) in out.iter_mut().zip(&powers[index(j)]) {
                    match (c as i128).checked_mul(p as i128).and_then(|v| o.checked_add(v)) {
                        Some(v) => *o = v,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                return Cyclotomic::from_i128(self.field, out, *d as i128);
            }
        }
        let (num, den) = self.big_parts();
        let mut out = vec![BigInt::zero(); deg];
        for (j, c) in num.iter().enumerate() {
            if !c.is_zero() {
                accumulate(&mut out, &powers[index(j)], c);
            }
        }
        Cyclotomic::from_big(self.field, out, den)
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        let m = self.field.order as usize;
        self.permute_powers(|j| (m - j) % m)
    }

    /// Multiply by `ζ_M^k`.
    pub fn mul_zeta(&self, k: i64) -> Cyclotomic {
        let m = self.field.order as i64;
        self.permute_powers(|j| (j as i64 + k).rem_euclid(m) as usize)
    }

    pub fn pow(&self, exp: u32) -> Cyclotomic {
        let mut acc = self.field.one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Approximate value, for display only.
    pub fn approx(&self) -> (f64, f64) {
        let m = self.field.order as f64;
        self.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * j as f64 / m;
            (re + v * angle.cos(), im + v * angle.sin())
        })
    }

    fn mul_small(&self, rhs: &Cyclotomic) -> Option<Cyclotomic> {
        let (Coeffs::Small(a, da), Coeffs::Small(b, db)) = (&self.repr, &rhs.repr) else {
            return None;
        };
        let deg = self.field.degree();
        let m = self.field.order as usize;
        let mut wide = vec![0i128; 2 * deg - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    wide[i + j] = wide[i + j].checked_add(x as i128 * y as i128)?;
                }
            }
        }
        let mut out: Vec<i128> = wide[..deg].to_vec();
        for (k, &c) in wide.iter().enumerate().skip(deg) {
            if c != 0 {
                for (o, &p) in out.iter_mut().zip(&self.field.table.powers[k % m]) {
                    *o = o.checked_add(c.checked_mul(p as i128)?)?;
                }
            }
        }
        Some(Cyclotomic::from_i128(self.field, out, *da as i128 * *db as i128))
    }

    fn add_small(&self, rhs: &Cyclotomic, sign: i128) -> Option<Cyclotomic> {
        let (Coeffs::Small(a, da), Coeffs::Small(b, db)) = (&self.repr, &rhs.repr) else {
            return None;
        };
        let (da, db) = (*da as i128, *db as i128);
        let g = gcd_i128(da, db);
        let (fa, fb) = (db / g, da / g);
        let num = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| (x as i128 * fa).checked_add(sign * y as i128 * fb))
            .collect::<Option<Vec<_>>>()?;
        Some(Cyclotomic::from_i128(self.field, num, da * fa))
    }

    fn add_big(&self, rhs: &Cyclotomic, sign: i64) -> Cyclotomic {
        let (a, da) = self.big_parts();
        let (b, db) = rhs.big_parts();
        let sign = BigInt::from(sign);
        let num = a.iter().zip(&b).map(|(x, y)| x * &db + &sign * y * &da).collect();
        Cyclotomic::from_big(self.field, num, da * db)
    }
}

fn accumulate(out: &mut [BigInt], power: &[i64], c: &BigInt) {
    for (o, &p) in out.iter_mut().zip(power) {
        match p {
            0 => {}
            1 => *o += c,
            -1 => *o -= c,
            _ => *o += c * BigInt::from(p),
        }
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_field(rhs);
        self.add_small(rhs, 1).unwrap_or_else(|| self.add_big(rhs, 1))
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_field(rhs);
        self.add_small(rhs, -1).unwrap_or_else(|| self.add_big(rhs, -1))
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let repr = match &self.repr {
            Coeffs::Small(n, d) if n.iter().all(|&x| x != i64::MIN) => Coeffs::Small(n.iter().map(|x| -x).collect(), *d),
            _ => {
                let (n, d) = self.big_parts();
                return Cyclotomic::from_big(self.field, n.into_iter().map(|x| -x).collect(), d);
            }
        };
        Cyclotomic { field: self.field, repr }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_field(rhs);
        if let Some(out) = self.mul_small(rhs) {
            return out;
        }
        let deg = self.field.degree();
        let m = self.field.order as usize;
        let (a, da) = self.big_parts();
        let (b, db) = rhs.big_parts();
        let mut wide = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    wide[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = wide[..deg].to_vec();
        for (k, c) in wide.iter().enumerate().skip(deg) {
            if !c.is_zero() {
                accumulate(&mut out, &self.field.table.powers[k % m], c);
            }
        }
        Cyclotomic::from_big(self.field, out, da * db)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{}", self.field.order, j)?,
                (_, false) => write!(f, "{mag}*z{}^{}", self.field.order, j)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> CyclotomicField {
        CyclotomicField::new(24).unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
        assert_eq!(field().degree(), 8);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = field().root(4, 1).unwrap();
        assert_eq!(&i * &i, field().integer(-1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let f = field();
        let s = &(&f.root(3, 0).unwrap() + &f.root(3, 1).unwrap()) + &f.root(3, 2).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn half_turn_is_minus_one() {
        assert_eq!(field().root(24, 12).unwrap(), field().integer(-1));
        assert!(field().root(3, 0).unwrap().is_one());
    }

    #[test]
    fn zeta_to_the_order_is_one() {
        let f = field();
        let z = f.zeta_pow(1);
        assert!(z.pow(24).is_one());
        assert!(!z.pow(12).is_one());
    }

    #[test]
    fn root_outside_field_is_an_error() {
        assert!(matches!(field().root(5, 1), Err(Error::OrderMismatch { .. })));
        assert!(field().half_turn(&Rational::new(1.into(), 5.into())).is_err());
    }

    #[test]
    fn conjugation_inverts_roots() {
        let f = field();
        for k in 0..24 {
            let z = f.zeta_pow(k);
            assert!((&z * &z.conj()).is_one());
        }
    }

    #[test]
    fn prime_order_field_reduces_wide_products() {
        let f = CyclotomicField::new(5).unwrap();
        let z = f.zeta_pow(1);
        let s = (0..5).fold(f.zero(), |acc, k| &acc + &f.zeta_pow(k));
        assert!(s.is_zero());
        assert!((&z.pow(3) * &z.pow(3)).eq(&f.zeta_pow(1)));
    }

    #[test]
    fn overflow_moves_to_big_and_back() {
        let f = field();
        let z = f.zeta_pow(5);
        let x = f.integer(i64::MAX).scale(&Rational::new(1.into(), 3.into()));
        let y = &(&x * &x) * &z;
        let expected = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        assert_eq!(y.scale(&Rational::from_integer(9.into())).coeffs()[5], Rational::from_integer(expected));
        let back = &(&y + &f.one()) - &y;
        assert!(back.is_one());
        assert_eq!(&(&x * &z) * &x, y);
        assert_eq!(y.conj().mul_zeta(5).mul_zeta(5), y.conj().mul_zeta(10));
    }
}

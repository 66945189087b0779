use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{rat, Rational};

/// A unit-modulus scalar `e^{πi(t + bθ)}` with rational `t` (kept modulo 2)
/// and rational `b`. Products of these are exact and never touch the
/// cyclotomic field, which keeps monomial bookkeeping cheap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    turn: Rational,
    theta: Rational,
}

fn mod_two(t: Rational) -> Rational {
    if let (Some(n), Some(d)) = (t.numer().to_i64(), t.denom().to_i64()) {
        let r = (n as i128).rem_euclid(2 * d as i128);
        if r == n as i128 {
            return t;
        }
        return Rational::new_raw((r as i64).into(), d.into());
    }
    let two = rat(2, 1);
    let q = (&t / &two).floor();
    t - q * two
}

impl Phase {
    pub fn one() -> Self {
        Phase { turn: Rational::zero(), theta: Rational::zero() }
    }

    pub fn new(turn: Rational, theta: Rational) -> Self {
        Phase { turn: mod_two(turn), theta }
    }

    /// `e^{πi t}`.
    pub fn half_turns(t: Rational) -> Self {
        Phase::new(t, Rational::zero())
    }

    /// `e^{2πik/n}`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        Phase::half_turns(rat(2 * k, n as i64))
    }

    /// `e^{πi bθ}`.
    pub fn theta_power(b: Rational) -> Self {
        Phase::new(Rational::zero(), b)
    }

    pub fn minus_one() -> Self {
        Phase::half_turns(Rational::one())
    }

    pub fn turn(&self) -> &Rational {
        &self.turn
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn is_one(&self) -> bool {
        self.turn.is_zero() && self.theta.is_zero()
    }

    pub fn mul(&self, other: &Phase) -> Phase {
        Phase::new(&self.turn + &other.turn, &self.theta + &other.theta)
    }

    /// Inverse, which is also the complex conjugate.
    pub fn conj(&self) -> Phase {
        Phase::new(-&self.turn, -&self.theta)
    }

    pub fn pow(&self, k: i64) -> Phase {
        let k = rat(k, 1);
        Phase::new(&self.turn * &k, &self.theta * &k)
    }

    /// Substitute a rational value for θ.
    pub fn fold(&self, theta: &Rational) -> Phase {
        Phase::half_turns(&self.turn + &self.theta * theta)
    }

    /// The `n`-th root `e^{πi(t + bθ)/n}` using the representative `t ∈ (-1, 1]`.
    pub fn principal_root(&self, n: u32) -> Phase {
        let t = if self.turn > Rational::one() { &self.turn - rat(2, 1) } else { self.turn.clone() };
        let n = rat(n as i64, 1);
        Phase::new(t / &n, &self.theta / &n)
    }

    /// Smallest `n ≥ 1` with `self^n = 1`, if the phase is a root of unity.
    pub fn root_order(&self) -> Option<u64> {
        if !self.theta.is_zero() {
            return None;
        }
        // e^{πi p/q} has order 2q / gcd(p, 2q)
        let p = self.turn.numer().clone();
        let q = self.turn.denom() * 2u32;
        let g = p.gcd(&q);
        u64::try_from(q / g).ok()
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.theta.is_zero() {
            if self.turn.is_zero() {
                return write!(f, "1");
            }
            if self.turn.is_one() {
                return write!(f, "-1");
            }
            return write!(f, "exp({} pi i)", self.turn);
        }
        let theta = if self.theta.is_one() {
            "theta".to_string()
        } else if (-&self.theta).is_one() {
            "-theta".to_string()
        } else {
            format!("{} theta", self.theta)
        };
        if self.turn.is_zero() {
            write!(f, "exp({theta} pi i)")
        } else {
            let sign = if self.theta.is_negative() { "" } else { "+" };
            write!(f, "exp(({} {sign}{theta}) pi i)", self.turn)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turns_reduce_modulo_two() {
        assert_eq!(Phase::half_turns(rat(5, 2)), Phase::half_turns(rat(1, 2)));
        assert_eq!(Phase::half_turns(rat(-1, 2)), Phase::half_turns(rat(3, 2)));
        assert!(Phase::root_of_unity(3, 3).is_one());
    }

    #[test]
    fn theta_exponents_add() {
        let p = Phase::theta_power(rat(1, 3));
        assert_eq!(p.pow(3), Phase::theta_power(rat(1, 1)));
        assert!(p.mul(&p.conj()).is_one());
    }

    #[test]
    fn principal_root_inverts_power() {
        let r = Phase::new(rat(1, 1), rat(-1, 1));
        let root = r.principal_root(3);
        assert_eq!(root.pow(3), r);
        assert_eq!(root, Phase::new(rat(1, 3), rat(-1, 3)));
    }

    #[test]
    fn root_orders() {
        assert_eq!(Phase::root_of_unity(6, 1).root_order(), Some(6));
        assert_eq!(Phase::root_of_unity(6, 2).root_order(), Some(3));
        assert_eq!(Phase::one().root_order(), Some(1));
        assert_eq!(Phase::theta_power(rat(1, 1)).root_order(), None);
    }
}

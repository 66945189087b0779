use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::nctorus::{Monomial, Torus};
use crate::scalar::{parse_rational, Phase, Rational};

/// An ordered product `phase · g_{i1}^{k1} g_{i2}^{k2} ...` of generator powers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    pub phase: Phase,
    pub factors: Vec<(usize, i64)>,
}

impl Word {
    pub fn generator(i: usize) -> Self {
        Word { phase: Phase::one(), factors: vec![(i, 1)] }
    }

    /// Evaluate in the twisted torus, returning the single basis term it equals.
    pub fn evaluate(&self, torus: &Torus) -> Result<(Phase, Monomial)> {
        let d = torus.dim();
        let mut phase = self.phase.clone();
        let mut m = Monomial::zero(d);
        for &(i, k) in &self.factors {
            if i >= d {
                return Err(Error::DimensionMismatch { expected: d, found: i + 1 });
            }
            let mut step = Monomial::zero(d);
            step.0[i] = k;
            let (w, next) = torus.mul_monomials(&m, &step);
            phase = phase.mul(&w);
            m = next;
        }
        Ok((torus.fold_phase(&phase), m))
    }

    /// Integer exponent part: the image vector of the underlying lattice map.
    pub fn exponents(&self, dim: usize) -> Vec<i64> {
        let mut v = vec![0; dim];
        for &(i, k) in &self.factors {
            v[i] += k;
        }
        v
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        if !self.phase.is_one() {
            parts.push(phase_source(&self.phase));
        }
        for &(i, k) in &self.factors {
            let n = &names[i];
            parts.push(match k {
                1 => n.clone(),
                -1 => format!("{n}*"),
                _ => format!("{n}^{k}"),
            });
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Render a phase in the form accepted by [`parse_word`].
pub fn phase_source(p: &Phase) -> String {
    if p.is_one() {
        return "1".into();
    }
    if p.theta().is_zero() && p.turn().is_one() {
        return "-".into();
    }
    let mut terms = Vec::new();
    if !p.turn().is_zero() {
        terms.push(format!("{} pi i", p.turn()));
    }
    if !p.theta().is_zero() {
        terms.push(format!("{} pi i theta", p.theta()));
    }
    format!("exp({})", terms.join(" + "))
}

/// Parse the phase expression inside `exp( ... )`: a signed sum of terms
/// `[q] pi i [theta]`.
pub(crate) fn parse_exp_body(body: &str) -> std::result::Result<Phase, String> {
    let mut turn = Rational::zero();
    let mut theta = Rational::zero();
    let spaced = body.replace('+', " + ").replace('-', " - ");
    let mut sign = Rational::one();
    let mut coeff: Option<Rational> = None;
    let (mut pi, mut i, mut th) = (false, false, false);
    let mut flush = |sign: &Rational,
                     coeff: &mut Option<Rational>,
                     pi: &mut bool,
                     i: &mut bool,
                     th: &mut bool|
     -> std::result::Result<(), String> {
        if coeff.is_none() && !*pi && !*i && !*th {
            return Ok(());
        }
        if !*pi || !*i {
            return Err(format!("term in '{body}' must contain 'pi i'"));
        }
        let c = sign * coeff.take().unwrap_or_else(Rational::one);
        if *th {
            theta += c;
        } else {
            turn += c;
        }
        *pi = false;
        *i = false;
        *th = false;
        Ok(())
    };
    for tok in spaced.split_whitespace() {
        match tok {
            "+" | "-" => {
                flush(&sign, &mut coeff, &mut pi, &mut i, &mut th)?;
                sign = if tok == "-" { -Rational::one() } else { Rational::one() };
            }
            "pi" => pi = true,
            "i" => i = true,
            "theta" => th = true,
            "*" => {}
            t => {
                let q = parse_rational(t).ok_or_else(|| format!("bad number '{t}' in exp()"))?;
                if coeff.replace(q).is_some() {
                    return Err(format!("two coefficients in one term of '{body}'"));
                }
            }
        }
    }
    flush(&sign, &mut coeff, &mut pi, &mut i, &mut th)?;
    Ok(Phase::new(turn, theta))
}

/// Parse a word such as `exp(-pi i theta) V* W`, `-W^2`, `i U` or `1`.
pub fn parse_word(src: &str, names: &[String]) -> std::result::Result<Word, String> {
    let mut phase = Phase::one();
    let mut factors: Vec<(usize, i64)> = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() || c == '*' || c == '.' {
            pos += 1;
            continue;
        }
        if c == '-' {
            phase = phase.mul(&Phase::minus_one());
            pos += 1;
            continue;
        }
        if c == '1' && chars.get(pos + 1).is_none_or(|n| !n.is_alphanumeric() && *n != '/') {
            pos += 1;
            continue;
        }
        if c == '(' {
            return Err("parentheses are only allowed inside exp()".into());
        }
        if !c.is_alphabetic() {
            return Err(format!("unexpected '{c}' in '{src}'"));
        }
        let start = pos;
        while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
            pos += 1;
        }
        let ident: String = chars[start..pos].iter().collect();
        if ident == "exp" {
            if chars.get(pos) != Some(&'(') {
                return Err("expected '(' after exp".into());
            }
            let close = chars[pos..]
                .iter()
                .position(|&c| c == ')')
                .ok_or_else(|| "unclosed exp(".to_string())?;
            let body: String = chars[pos + 1..pos + close].iter().collect();
            phase = phase.mul(&parse_exp_body(&body)?);
            pos += close + 1;
            continue;
        }
        if ident == "i" {
            phase = phase.mul(&Phase::root_of_unity(4, 1));
            continue;
        }
        let g = names
            .iter()
            .position(|n| *n == ident)
            .ok_or_else(|| format!("unknown generator '{ident}'"))?;
        let mut k: i64 = 1;
        if chars.get(pos) == Some(&'^') {
            pos += 1;
            if chars.get(pos) == Some(&'*') {
                k = -k;
                pos += 1;
            } else {
                let s = pos;
                if chars.get(pos) == Some(&'-') {
                    pos += 1;
                }
                let t = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if t == pos {
                    return Err(format!("expected exponent after '{ident}^'"));
                }
                let e: String = chars[s..pos].iter().collect();
                k = e.parse().map_err(|_| format!("bad exponent '{e}'"))?;
            }
        }
        // a `*` attached to the generator is the adjoint; a free-standing one is a product sign
        if chars.get(pos) == Some(&'*') {
            k = -k;
            pos += 1;
        }
        if k != 0 {
            factors.push((g, k));
        }
    }
    Ok(Word { phase, factors })
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = ["U", "V", "W"].iter().map(|s| s.to_string()).collect();
        if self.factors.iter().all(|&(i, _)| i < 3) {
            f.write_str(&self.render(&names))
        } else {
            write!(f, "{:?}", self)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn uvw() -> Vec<String> {
        vec!["U".into(), "V".into(), "W".into()]
    }

    #[test]
    fn parses_table_entries() {
        let w = parse_word("exp(-pi i theta) V* W", &uvw()).unwrap();
        assert_eq!(w.phase, Phase::theta_power(rat(-1, 1)));
        assert_eq!(w.factors, vec![(1, -1), (2, 1)]);
        let w = parse_word("exp(2/3 pi i) U", &uvw()).unwrap();
        assert_eq!(w.phase, Phase::half_turns(rat(2, 3)));
        let w = parse_word("-W*", &uvw()).unwrap();
        assert_eq!(w.phase, Phase::minus_one());
        assert_eq!(w.factors, vec![(2, -1)]);
        let w = parse_word("i U", &uvw()).unwrap();
        assert_eq!(w.phase, Phase::half_turns(rat(1, 2)));
    }

    #[test]
    fn powers_and_products() {
        let w = parse_word("V^2 * W^-1 U^*", &uvw()).unwrap();
        assert_eq!(w.factors, vec![(1, 2), (2, -1), (0, -1)]);
        let w = parse_word("1", &uvw()).unwrap();
        assert!(w.factors.is_empty() && w.phase.is_one());
    }

    #[test]
    fn mixed_exp_terms() {
        let p = parse_exp_body("1/3 pi i - 1/2 pi i theta").unwrap();
        assert_eq!(p, Phase::new(rat(1, 3), rat(-1, 2)));
        assert!(parse_exp_body("2/3").is_err());
    }

    #[test]
    fn rejects_unknown_generator() {
        assert!(parse_word("X", &uvw()).is_err());
    }

    #[test]
    fn render_roundtrip() {
        let w = parse_word("exp(-pi i theta) V* W", &uvw()).unwrap();
        assert_eq!(parse_word(&w.render(&uvw()), &uvw()).unwrap(), w);
    }
}

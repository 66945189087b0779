use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::actions::Family;
use crate::error::{Error, Result};
use crate::ktheory::group::{kernel_cokernel, AbelianGroup};
use crate::ktheory::matrix::IntMatrix;

/// Images of the `K_0` generators under `β̂_*`, one generator per line.
/// `eps` is the sign parameter of the order-two case.
pub const IMAGES_B2: &str = "\
[1] -> [1]
[e00] -> [1] - [e00]
[e01] -> [1] - [e01]
[e10] -> [1] - [e10]
[e11] -> [1] - [e11]
[M2] -> [M2] - [e00] + [e11] - eps [e10] + eps [e01]
";

pub const IMAGES_B3: &str = "\
[1] -> [1]
[Q1(p)] -> [Q0(p)]
[Q0(p)] -> [1] - [Q0(p)] - [Q1(p)]
[Q1(X)] -> [Q0(X)]
[Q0(X)] -> [1] - [Q0(X)] - [Q1(X)]
[Q1(Y)] -> [Q0(Y)]
[Q0(Y)] -> [1] - [Q0(Y)] - [Q1(Y)]
[M3] -> [M3] - [Q0(p)] - [Q0(X)] - [Q0(Y)] + [1]
";

pub const IMAGES_B4: &str = "\
[1] -> [1]
[Q2(p)] -> [Q1(p)]
[Q1(p)] -> [Q0(p)]
[Q0(p)] -> [1] - [Q0(p)] - [Q1(p)] - [Q2(p)]
[Q2(x)] -> [Q1(x)]
[Q1(x)] -> [Q0(x)]
[Q0(x)] -> [1] - [Q0(x)] - [Q1(x)] - [Q2(x)]
[Q0(Vp^2)] -> [1] - [Q0(Vp^2)]
[M4] -> [M4] - [Q0(Vp^2)] - [Q0(p)] - [Q0(x)] + [1]
";

pub const IMAGES_B6: &str = "\
[1] -> [1]
[Q4(p)] -> [Q3(p)]
[Q3(p)] -> [Q2(p)]
[Q2(p)] -> [Q1(p)]
[Q1(p)] -> [Q0(p)]
[Q0(p)] -> [1] - [Q0(p)] - [Q1(p)] - [Q2(p)] - [Q3(p)] - [Q4(p)]
[Q2(y)] -> [Q0(y)]
[Q0(y)] -> [1] - [Q0(y)] - [Q2(y)]
[Q0(Vp^3)] -> [1] - [Q0(Vp^3)]
[M6] -> [M6] - [Q0(p)] - [Q0(y)] - [Q0(Vp^3)] + [1]
";

/// `M = id − β̂_*` on `K_0(C(T²_θ) ⋊ Z_N)` in a fixed basis order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BetaStarData {
    pub family: Family,
    pub labels: Vec<String>,
    pub matrix: IntMatrix,
    pub epsilon: Option<i64>,
}

impl BetaStarData {
    /// `β̂_* = I − M`; column `j` is the image of generator `j`.
    pub fn beta_star(&self) -> IntMatrix {
        &IntMatrix::identity(self.matrix.rows()) - &self.matrix
    }

    pub fn order(&self) -> u32 {
        self.family.order()
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.labels.iter().position(|l| l == "[1]")
    }

    /// `(I − M)^N = I`.
    pub fn has_order(&self) -> Result<bool> {
        Ok(self.beta_star().pow(self.order())? == IntMatrix::identity(self.matrix.rows()))
    }

    /// `(I − M)[1] = [1]`.
    pub fn fixes_unit(&self) -> bool {
        let Some(u) = self.unit_index() else {
            return false;
        };
        let b = self.beta_star();
        (0..b.rows()).all(|i| *b.get(i, u) == if i == u { BigInt::one() } else { BigInt::zero() })
    }
}

pub fn images_source(family: Family) -> Result<&'static str> {
    match family {
        Family::B2 => Ok(IMAGES_B2),
        Family::B3 => Ok(IMAGES_B3),
        Family::B4 => Ok(IMAGES_B4),
        Family::B6 => Ok(IMAGES_B6),
        other => Err(Error::UnknownFamily(format!("{other} has no cyclic K-theory data"))),
    }
}

fn parse_term(tok: &str, epsilon: i64, lineno: usize) -> Result<(i64, String)> {
    let bad = |m: String| Error::Parse { line: lineno, message: m };
    let open = tok.find('[').ok_or_else(|| bad(format!("expected a [generator] in '{tok}'")))?;
    let (coeff, label) = tok.split_at(open);
    let coeff = match coeff.trim() {
        "" => 1,
        "eps" => epsilon,
        c => c.parse().map_err(|_| bad(format!("bad coefficient '{c}'")))?,
    };
    if !label.ends_with(']') {
        return Err(bad(format!("unterminated generator '{label}'")));
    }
    Ok((coeff, label.to_string()))
}

/// Parse `[g] -> a [h] - b [k] …` lines into the `β̂_*` columns.
pub fn parse_images(src: &str, epsilon: i64) -> Result<(Vec<String>, IntMatrix)> {
    let mut labels = Vec::new();
    let mut images = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| Error::Parse { line: lineno, message: "expected '->'".into() })?;
        labels.push(lhs.trim().to_string());
        let mut terms = Vec::new();
        let mut sign = 1;
        let mut current = String::new();
        for ch in rhs.chars() {
            match ch {
                '+' | '-' if current.trim().is_empty() || current.trim_end().ends_with(']') => {
                    if !current.trim().is_empty() {
                        let (c, l) = parse_term(current.trim(), epsilon, lineno)?;
                        terms.push((sign * c, l));
                        current.clear();
                    }
                    sign = if ch == '-' { -1 } else { 1 };
                }
                _ => current.push(ch),
            }
        }
        if !current.trim().is_empty() {
            let (c, l) = parse_term(current.trim(), epsilon, lineno)?;
            terms.push((sign * c, l));
        }
        images.push((lineno, terms));
    }
    let n = labels.len();
    let mut b = IntMatrix::zero(n, n);
    for (j, (lineno, terms)) in images.into_iter().enumerate() {
        for (c, l) in terms {
            let i = labels
                .iter()
                .position(|x| *x == l)
                .ok_or_else(|| Error::Parse { line: lineno, message: format!("unknown generator {l}") })?;
            let v = b.get(i, j) + BigInt::from(c);
            b.set(i, j, v);
        }
    }
    Ok((labels, b))
}

/// `id − β̂_*` assembled from the generator images.
pub fn beta_star_matrix(family: Family, epsilon: i64) -> Result<BetaStarData> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::InconsistentData(format!("epsilon must be +1 or -1, got {epsilon}")));
    }
    let (labels, b) = parse_images(images_source(family)?, epsilon)?;
    let matrix = &IntMatrix::identity(b.rows()) - &b;
    let epsilon = (family == Family::B2).then_some(epsilon);
    Ok(BetaStarData { family, labels, matrix, epsilon })
}

/// `K_1 = ker M`, `K_0 = coker M`.
pub fn pv_solve(data: &BetaStarData) -> Result<(AbelianGroup, AbelianGroup)> {
    if !data.has_order()? {
        return Err(Error::InconsistentData(format!(
            "{}: (I - M)^{} is not the identity",
            data.family,
            data.order()
        )));
    }
    if !data.fixes_unit() {
        return Err(Error::InconsistentData(format!("{}: [1] is not fixed", data.family)));
    }
    let (ker, coker) = kernel_cokernel(&data.matrix);
    Ok((coker, ker))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b3_exotic_column() {
        let d = beta_star_matrix(Family::B3, 1).unwrap();
        let col: Vec<i64> = d.matrix.column(7).iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(col, vec![-1, 0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn b2_epsilon_entries() {
        for eps in [1, -1] {
            let d = beta_star_matrix(Family::B2, eps).unwrap();
            let col: Vec<i64> = d.matrix.column(5).iter().map(|v| i64::try_from(v).unwrap()).collect();
            assert_eq!(col, vec![0, 1, -eps, eps, -1, 0]);
        }
    }

    #[test]
    fn bad_data_is_rejected() {
        let labels = vec!["[1]".to_string(), "[a]".to_string()];
        let data = BetaStarData {
            family: Family::B2,
            labels,
            matrix: IntMatrix::from_rows(&[vec![0, 0], vec![0, 3]]).unwrap(),
            epsilon: None,
        };
        assert!(matches!(pv_solve(&data), Err(Error::InconsistentData(_))));
        assert!(parse_images("[1] -> [2]\n", 1).is_err());
        assert!(beta_star_matrix(Family::B5, 1).is_err());
    }
}

//! Exact Gaussian elimination over `Q`.

use num_traits::Zero;

use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solution {
    /// One solution, with free variables set to zero.
    pub x: Vec<Rational>,
    pub unique: bool,
}

/// Solve `A x = b` for a dense `rows × cols` matrix given row by row.
/// `None` when the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Solution> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().cloned().chain(std::iter::once(rhs.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::from_integer(1.into()) / &m[r][c];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let d = &m[r][j] * &f;
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(Solution { x, unique: pivots.len() == cols })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn unique_and_inconsistent() {
        let a = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let s = solve(&a, &[rat(3, 1), rat(0, 1)]).unwrap();
        assert_eq!(s.x, vec![rat(1, 1), rat(1, 1)]);
        assert!(s.unique);
        let a = vec![vec![rat(1, 1)], vec![rat(2, 1)]];
        assert!(solve(&a, &[rat(1, 1), rat(3, 1)]).is_none());
        let a = vec![vec![rat(1, 1), rat(1, 1)]];
        assert!(!solve(&a, &[rat(1, 2)]).unwrap().unique);
    }
}

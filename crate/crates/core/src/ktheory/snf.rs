use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::ktheory::matrix::{bareiss_det, IntMatrix};

/// `U · M · V = S` with `U, V` unimodular and `S` diagonal in divisor-chain order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | …`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smallest nonzero `|a_ij|` with `i, j ≥ t`, ties broken by `(i, j)`.
fn pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let a = m.get(i, j);
            if a.is_zero() {
                continue;
            }
            let abs = a.abs();
            if best.as_ref().is_none_or(|(b, _, _)| abs < *b) {
                best = Some((abs, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let steps = m.rows().min(m.cols());
    for t in 0..steps {
        loop {
            let Some((pi, pj)) = pivot(&s, t) else {
                return finish(s, u, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = s.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..s.rows() {
                let q = s.get(i, t).div_floor(&p);
                s.sub_row(i, t, &q);
                u.sub_row(i, t, &q);
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..s.cols() {
                let q = s.get(t, j).div_floor(&p);
                s.sub_col(j, t, &q);
                v.sub_col(j, t, &q);
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into row t and go again
            let offender = (t + 1..s.rows())
                .find(|&i| (t + 1..s.cols()).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    s.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(s, u, v)
}

fn finish(s: IntMatrix, u: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { s, u, v }
}

/// Divisor chain from determinantal divisors: `d_k = D_k / D_{k-1}` with `D_k` the
/// gcd of all `k × k` minors. Exponential, but independent of the elimination above.
pub fn divisor_chain_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.rows().min(m.cols());
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::from(1);
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                g = g.gcd(&bareiss_det(minor));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), n - out.len()));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m).diagonal().iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn classic_examples() {
        assert_eq!(diag(&IntMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(diag(&IntMatrix::diagonal(&[2, 3])), vec![1, 6]);
        assert_eq!(diag(&IntMatrix::diagonal(&[4, 6])), vec![2, 12]);
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        assert_eq!(diag(&m), vec![2, 6, 12]);
    }

    #[test]
    fn transforms_reproduce_the_form() {
        let m = IntMatrix::from_rows(&[vec![0, 3, -1], vec![4, 0, 2], vec![6, 9, 1], vec![2, 2, 2]]).unwrap();
        let f = smith_normal_form(&m);
        assert_eq!(&(&f.u * &m) * &f.v, f.s);
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        assert_eq!(f.diagonal(), divisor_chain_by_minors(&m));
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(diag(&IntMatrix::zero(2, 3)), vec![0, 0]);
        assert!(smith_normal_form(&IntMatrix::zero(0, 0)).diagonal().is_empty());
        assert_eq!(divisor_chain_by_minors(&IntMatrix::zero(2, 2)), vec![BigInt::zero(), BigInt::zero()]);
    }
}

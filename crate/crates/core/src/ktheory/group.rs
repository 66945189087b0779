use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ktheory::matrix::IntMatrix;
use crate::ktheory::snf::smith_normal_form;

/// `Z^r ⊕ Z_{d_1} ⊕ … ⊕ Z_{d_k}` with `1 < d_1 | d_2 | … | d_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form of `Z^r ⊕ ⊕_i Z_{n_i}` for arbitrary cyclic orders; `n_i = 0`
    /// counts as a free summand and `±1` is dropped.
    pub fn from_cyclic<T: Into<BigInt> + Clone>(free_rank: usize, orders: &[T]) -> Self {
        let mut free_rank = free_rank;
        // split every order into prime powers, then regroup into the chain
        let mut by_prime: std::collections::BTreeMap<BigInt, Vec<BigInt>> = Default::default();
        for n in orders {
            let n: BigInt = n.clone().into();
            if n.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, q) in prime_power_parts(n.abs()) {
                by_prime.entry(p).or_default().push(q);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut chain = vec![BigInt::one(); len];
        for powers in by_prime.values_mut() {
            powers.sort();
            let offset = len - powers.len();
            for (i, q) in powers.iter().enumerate() {
                chain[offset + i] *= q;
            }
        }
        AbelianGroup { free_rank, torsion: chain.into_iter().filter(|d| !d.is_one()).collect() }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        AbelianGroup::from_cyclic(self.free_rank + other.free_rank, &orders)
    }
}

fn prime_power_parts(mut n: BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            let mut q = BigInt::one();
            while n.is_multiple_of(&p) {
                n /= &p;
                q *= &p;
            }
            out.push((p.clone(), q));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n.clone(), n));
    }
    out
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|e| *e == d).count();
            parts.push(if run == 1 { format!("Z_{d}") } else { format!("(Z_{d})^{run}") });
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Kernel and cokernel of `M : Z^cols → Z^rows`.
pub fn kernel_cokernel(m: &IntMatrix) -> (AbelianGroup, AbelianGroup) {
    let f = smith_normal_form(m);
    let diag = f.diagonal();
    let rank = f.rank();
    let ker = AbelianGroup::free(m.cols() - rank);
    let torsion: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
    let coker = AbelianGroup { free_rank: m.rows() - rank, torsion };
    (ker, coker)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(AbelianGroup::from_cyclic(0, &[2, 3]), AbelianGroup::from_cyclic(0, &[6]));
        assert_ne!(AbelianGroup::from_cyclic(0, &[2, 2]), AbelianGroup::from_cyclic(0, &[4]));
        assert_eq!(AbelianGroup::from_cyclic(1, &[4, 6]).torsion, vec![BigInt::from(2), BigInt::from(12)]);
        assert_eq!(AbelianGroup::from_cyclic(0, &[1, 0, -3]).to_string(), "Z + Z_3");
        assert_eq!(AbelianGroup::from_cyclic(2, &[2, 2]).to_string(), "Z^2 + (Z_2)^2");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn kernels_and_cokernels() {
        let (k, c) = kernel_cokernel(&IntMatrix::zero(2, 2));
        assert_eq!((k, c), (AbelianGroup::free(2), AbelianGroup::free(2)));
        let (k, c) = kernel_cokernel(&IntMatrix::from_rows(&[vec![3]]).unwrap());
        assert_eq!((k, c), (AbelianGroup::trivial(), AbelianGroup::from_cyclic(0, &[3])));
    }
}

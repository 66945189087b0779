//! First homology of the Bieberbach groups `G_N`, by abelianizing
//! `⟨t1, t2, t3, γ | [t_i, t_j], γ t γ^{-1} = A t, γ t1 γ^{-1} = t1, γ^N = t1⟩`.

use num_bigint::BigInt;

use crate::actions::Family;
use crate::error::{Error, Result};
use crate::ktheory::group::{kernel_cokernel, AbelianGroup};
use crate::ktheory::matrix::IntMatrix;
use crate::ktheory::pv::{beta_star_matrix, pv_solve};

/// Integer part of the classical action on `(V, W)`; column `j` is the image of generator `j`.
pub fn holonomy(family: Family) -> Result<IntMatrix> {
    if !Family::CYCLIC_ORIENTABLE.contains(&family) {
        return Err(Error::UnknownFamily(format!("{family} is not an orientable cyclic family")));
    }
    let spec = family.classical_spec();
    let (_, words) = &spec.group[0];
    let u = words[0].exponents(3);
    if u != [1, 0, 0] {
        return Err(Error::InvalidAction(format!("{family}: U is not sent to a multiple of itself")));
    }
    let mut a = IntMatrix::zero(2, 2);
    for j in 0..2 {
        let e = words[j + 1].exponents(3);
        if e[0] != 0 {
            return Err(Error::InvalidAction(format!("{family}: image of generator {} involves U", j + 2)));
        }
        a.set(0, j, e[1].into());
        a.set(1, j, e[2].into());
    }
    Ok(a)
}

/// Relation vectors over `(t1, t2, t3, γ)` as the columns of a `4 × r` matrix.
pub fn relation_matrix(family: Family) -> Result<IntMatrix> {
    let a = holonomy(family)?;
    let mut columns: Vec<[BigInt; 4]> = Vec::new();
    for j in 0..2 {
        let mut v: [BigInt; 4] = Default::default();
        for i in 0..2 {
            let d = if i == j { 1 } else { 0 };
            v[i + 1] = a.get(i, j) - BigInt::from(d);
        }
        columns.push(v);
    }
    let mut power: [BigInt; 4] = Default::default();
    power[0] = BigInt::from(-1);
    power[3] = BigInt::from(family.order());
    columns.push(power);
    let mut m = IntMatrix::zero(4, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    Ok(m)
}

pub fn bieberbach_h1(family: Family) -> Result<AbelianGroup> {
    Ok(kernel_cokernel(&relation_matrix(family)?).1)
}

/// `K_0 = Z ⊕ H_1(G_N)`, with both sides in canonical form.
pub fn compare_with_k0(family: Family) -> Result<(bool, AbelianGroup, AbelianGroup)> {
    let (k0, _) = pv_solve(&beta_star_matrix(family, 1)?)?;
    let rhs = AbelianGroup::free(1).direct_sum(&bieberbach_h1(family)?);
    Ok((k0 == rhs, k0, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holonomy_has_the_group_order() {
        for f in Family::CYCLIC_ORIENTABLE {
            let a = holonomy(f).unwrap();
            assert_eq!(a.pow(f.order()).unwrap(), IntMatrix::identity(2), "{f}");
            assert!(f.order() == 1 || a.pow(f.order() / 2).unwrap() != IntMatrix::identity(2));
        }
    }

    #[test]
    fn b2_homology() {
        assert_eq!(bieberbach_h1(Family::B2).unwrap(), AbelianGroup::from_cyclic(1, &[2, 2]));
    }
}

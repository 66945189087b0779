use crate::check::{Check, Counterexample};
use crate::crossed::product::{CrossedElement, CrossedProduct};
use crate::crossed::projector::q_projector;
use crate::error::{Error, Result};
use crate::nctorus::{Monomial, TorusElement};
use crate::sampling::Sampler;
use crate::scalar::{rat, Phase};

/// `N × N` matrix over the torus, used for `M_N(A^G)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockMatrix {
    pub size: usize,
    pub entries: Vec<TorusElement>,
}

impl BlockMatrix {
    pub fn zero(size: usize, dim: usize) -> Self {
        BlockMatrix { size, entries: vec![TorusElement::zero(dim); size * size] }
    }

    pub fn get(&self, i: usize, j: usize) -> &TorusElement {
        &self.entries[i * self.size + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut TorusElement {
        &mut self.entries[i * self.size + j]
    }
}

/// The central unitary `U` must be rescaled by `λ = e^{2πi/N}` and commute with everything.
fn central_generator(cp: &CrossedProduct) -> Result<()> {
    let torus = cp.torus();
    if torus.dim() != 3 {
        return Err(Error::ContextMismatch("the Morita data needs the three-torus".into()));
    }
    let u = torus.generator(0);
    for i in 1..3 {
        if !torus.commutator(&u, &torus.generator(i))?.is_zero() {
            return Err(Error::NotCentral(format!("U does not commute with generator {}", i + 1)));
        }
    }
    let img = &cp.action().images()[0];
    if img.target != Monomial::unit(3, 0) || cp.torus().fold_phase(&img.coeff) != cp.action().lambda() {
        return Err(Error::NotCentral(format!("action sends U to {img}, not lambda U")));
    }
    Ok(())
}

fn u_power(cp: &CrossedProduct, k: i64) -> Result<TorusElement> {
    cp.torus().monomial(&[k, 0, 0])
}

/// `E = (1/N) Σ_{k=1}^{N} p^k`.
pub fn average_p(cp: &CrossedProduct) -> Result<CrossedElement> {
    let mut e = cp.zero();
    let p = cp.p();
    let mut pk = cp.one();
    for _ in 0..cp.order() {
        pk = cp.mul(&pk, &p)?;
        e = &e + &pk;
    }
    Ok(e.scale_rational(&rat(1, cp.order() as i64)))
}

/// `p̂ = U + E (U^{1-N} − U)`.
pub fn phat(cp: &CrossedProduct) -> Result<CrossedElement> {
    central_generator(cp)?;
    let n = cp.order() as i64;
    let u = cp.embed(&u_power(cp, 1)?)?;
    let u1n = cp.embed(&u_power(cp, 1 - n)?)?;
    let e = average_p(cp)?;
    Ok(&u + &cp.mul(&e, &(&u1n - &u))?)
}

/// `P_j`, the spectral projection of `p` for the eigenvalue `λ^j`.
pub fn p_projection(cp: &CrossedProduct, j: i64) -> Result<CrossedElement> {
    q_projector(cp, -j, &cp.p())
}

/// `e_ij = p̂^{i-j} P_j`.
pub fn matrix_units(cp: &CrossedProduct) -> Result<Vec<Vec<CrossedElement>>> {
    let n = cp.order() as usize;
    let ph = phat(cp)?;
    let mut powers = vec![cp.one()];
    for k in 1..n {
        powers.push(cp.mul(&powers[k - 1], &ph)?);
    }
    let projections = (0..n as i64).map(|j| p_projection(cp, j)).collect::<Result<Vec<_>>>()?;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| cp.mul(&powers[(i + n - j) % n], &projections[j]))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// `Ψ(U)`: ones below the diagonal and `U^N` in the corner.
pub fn psi_u(cp: &CrossedProduct) -> Result<BlockMatrix> {
    let n = cp.order() as usize;
    let mut s = BlockMatrix::zero(n, 3);
    for j in 0..n - 1 {
        *s.get_mut(j + 1, j) = cp.torus().one();
    }
    *s.get_mut(0, n - 1) = u_power(cp, n as i64)?;
    Ok(s)
}

pub fn block_mul(cp: &CrossedProduct, a: &BlockMatrix, b: &BlockMatrix) -> Result<BlockMatrix> {
    let n = a.size;
    let torus = cp.torus();
    let mut c = BlockMatrix::zero(n, torus.dim());
    for i in 0..n {
        for k in 0..n {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = b.get(k, j);
                if bkj.is_zero() {
                    continue;
                }
                let prod = torus.mul(aik, bkj)?;
                let entry = c.get_mut(i, j);
                *entry = &*entry + &prod;
            }
        }
    }
    Ok(c)
}

/// `Ψ(x) = Σ_k (x_k U^{-k}) Ψ(U)^k` for a torus element `x`; `Ψ(U)^k` has its
/// ones on the `k`-th subdiagonal and `U^N` where the shift wraps.
pub fn psi(cp: &CrossedProduct, x: &TorusElement) -> Result<BlockMatrix> {
    let n = cp.order() as usize;
    let torus = cp.torus();
    let comps = cp.action().homogeneous_components(x)?;
    let wrap = u_power(cp, n as i64)?;
    let mut out = BlockMatrix::zero(n, 3);
    for (k, xk) in comps.iter().enumerate() {
        if xk.is_zero() {
            continue;
        }
        let coeff = torus.mul(xk, &u_power(cp, -(k as i64))?)?;
        let wrapped = torus.mul(&coeff, &wrap)?;
        for j in 0..n {
            let i = (j + k) % n;
            *out.get_mut(i, j) = if j + k >= n { wrapped.clone() } else { coeff.clone() };
        }
    }
    Ok(out)
}

/// `Ψ(p) = diag(λ^j)`.
pub fn psi_p(cp: &CrossedProduct) -> Result<BlockMatrix> {
    let n = cp.order() as usize;
    let mut d = BlockMatrix::zero(n, 3);
    for j in 0..n {
        let l = cp.torus().scalar(&Phase::root_of_unity(n as u32, j as i64))?;
        *d.get_mut(j, j) = cp.torus().one().scale(&l);
    }
    Ok(d)
}

/// `Σ_ij M_ij e_ij` back in the crossed product.
pub fn unpsi(cp: &CrossedProduct, m: &BlockMatrix, units: &[Vec<CrossedElement>]) -> Result<CrossedElement> {
    let mut out = cp.zero();
    for i in 0..m.size {
        for j in 0..m.size {
            let a = m.get(i, j);
            if !a.is_zero() {
                out = &out + &cp.mul(&cp.embed(a)?, &units[i][j])?;
            }
        }
    }
    Ok(out)
}

/// The exact identities for `p̂` and the sampled properties of `Ψ`.
pub fn verify_morita(cp: &CrossedProduct, seed: u64, pairs: usize, decompositions: usize, degree: i64) -> Result<Vec<Check>> {
    let n = cp.order();
    let ph = phat(cp)?;
    let p = cp.p();
    let lambda = cp.torus().scalar(&cp.action().lambda())?;
    let mut checks = Vec::new();

    let phn = cp.pow(&ph, n)?;
    checks.push(Check::from_outcome(
        "phat^N = 1",
        if phn == cp.one() { Ok(()) } else { Err(Counterexample::new("phat^N", &phn, "1")) },
    ));
    let lhs = cp.mul(&p, &ph)?;
    let rhs = cp.mul(&ph, &p)?.scale(&lambda);
    checks.push(Check::from_outcome(
        "p phat = lambda phat p",
        if lhs == rhs { Ok(()) } else { Err(Counterexample::new("p phat", &lhs, &rhs)) },
    ));
    // U = p̂ + E p̂ (U^N − 1)
    let e = average_p(cp)?;
    let un = cp.embed(&u_power(cp, n as i64)?)?;
    let inv = &ph + &cp.mul(&cp.mul(&e, &ph)?, &(&un - &cp.one()))?;
    let u = cp.embed(&u_power(cp, 1)?)?;
    checks.push(Check::from_outcome(
        "U = phat + E phat (U^N - 1)",
        if inv == u { Ok(()) } else { Err(Counterexample::new("inverse formula", &inv, &u)) },
    ));

    let torus = cp.torus();
    let shift = psi(cp, &u_power(cp, 1)?)?;
    let su = psi_u(cp)?;
    checks.push(Check::from_outcome(
        "Psi(U) is the wrapped shift",
        if shift == su {
            Ok(())
        } else {
            Err(Counterexample::new("Psi(U)", format!("{:?}", shift.entries), format!("{:?}", su.entries)))
        },
    ));

    let units = matrix_units(cp)?;
    let mut rng = Sampler::new(seed);
    let mut multiplicative = Ok(());
    let mut reconstruct = Ok(());
    let mut intertwines = Ok(());
    let psi_p = psi_p(cp)?;
    for i in 0..pairs {
        let x = rng.torus_element(torus, degree, 3);
        let y = rng.torus_element(torus, degree, 3);
        if multiplicative.is_ok() {
            let lhs = psi(cp, &torus.mul(&x, &y)?)?;
            let rhs = block_mul(cp, &psi(cp, &x)?, &psi(cp, &y)?)?;
            if lhs != rhs {
                multiplicative = Err(Counterexample::new(
                    format!("pair {i}: x = {x}, y = {y}"),
                    format!("{:?}", lhs.entries),
                    format!("{:?}", rhs.entries),
                ));
            }
        }
        if reconstruct.is_ok() {
            let back = unpsi(cp, &psi(cp, &x)?, &units)?;
            let ex = cp.embed(&x)?;
            if back != ex {
                reconstruct = Err(Counterexample::new(format!("pair {i}: x = {x}"), &back, &ex));
            }
        }
        if intertwines.is_ok() {
            let lhs = block_mul(cp, &psi_p, &psi(cp, &x)?)?;
            let rhs = block_mul(cp, &psi(cp, &cp.action().apply(&x)?)?, &psi_p)?;
            if lhs != rhs {
                intertwines = Err(Counterexample::new(
                    format!("pair {i}: x = {x}"),
                    format!("{:?}", lhs.entries),
                    format!("{:?}", rhs.entries),
                ));
            }
        }
    }
    checks.push(Check::from_outcome(format!("Psi(xy) = Psi(x) Psi(y) on {pairs} pairs"), multiplicative));
    checks.push(Check::from_outcome(format!("sum Psi(x)_ij e_ij = x on {pairs} samples"), reconstruct));
    checks.push(Check::from_outcome(format!("Psi(p) Psi(x) = Psi(p > x) Psi(p) on {pairs} samples"), intertwines));

    let mut decomposition = Ok(());
    let mut invariant = Ok(());
    let action = cp.action();
    for i in 0..decompositions {
        let x = rng.torus_element(torus, degree, 4);
        let comps = action.homogeneous_components(&x)?;
        let mut sum = torus.zero();
        for (k, xk) in comps.iter().enumerate() {
            sum = &sum + xk;
            if decomposition.is_ok() {
                let lk = torus.scalar(&action.lambda().pow(k as i64))?;
                let lhs = action.apply(xk)?;
                let rhs = xk.scale(&lk);
                if lhs != rhs {
                    decomposition = Err(Counterexample::new(format!("sample {i}, component {k}: x = {x}"), &lhs, &rhs));
                }
            }
            if invariant.is_ok() {
                let inv = torus.mul(xk, &u_power(cp, -(k as i64))?)?;
                let moved = action.apply(&inv)?;
                if moved != inv {
                    invariant = Err(Counterexample::new(format!("sample {i}, x_{k} U^-{k}: x = {x}"), &moved, &inv));
                }
            }
        }
        if decomposition.is_ok() && sum != x {
            decomposition = Err(Counterexample::new(format!("sample {i}: sum of components"), &sum, &x));
        }
    }
    checks.push(Check::from_outcome(
        format!("homogeneous decomposition on {decompositions} samples"),
        decomposition,
    ));
    checks.push(Check::from_outcome(format!("x_k U^-k invariant on {decompositions} samples"), invariant));
    Ok(checks)
}

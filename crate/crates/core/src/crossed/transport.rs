use std::collections::BTreeMap;

use crate::crossed::k0::{BasisEntry, K0Generators};
use crate::crossed::product::CrossedElement;
use crate::error::Result;
use crate::linalg::solve;
use crate::nctorus::Monomial;
use crate::scalar::Rational;

/// Where `β̂` sends a basis projection, read off at the element level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TransportImage {
    /// No projection is built for this class.
    Exotic,
    /// `β̂(e_i) = Σ_j c_j e_j` over the non-exotic basis, exotic coefficient zero.
    Combination(Vec<Rational>),
    /// `β̂(e_i)` is not a combination of the basis projections.
    NotInSpan,
}

type Coordinate = (Monomial, u32, Rational, usize);

fn coordinates(x: &CrossedElement) -> BTreeMap<Coordinate, Rational> {
    let mut out = BTreeMap::new();
    for ((m, k), c) in x.terms() {
        for (b, z) in c.terms() {
            for (i, q) in z.coeffs().into_iter().enumerate() {
                if q != Rational::default() {
                    out.insert((m.clone(), *k, b.clone(), i), q);
                }
            }
        }
    }
    out
}

/// Solve `β̂(e_i) = Σ_j c_j e_j` exactly for every basis entry.
pub fn beta_hat_transport(k0: &K0Generators) -> Result<Vec<TransportImage>> {
    let cp = &k0.product;
    let elements: Vec<Option<CrossedElement>> = (0..k0.rank()).map(|i| k0.element(i)).collect::<Result<_>>()?;
    let columns: Vec<(usize, BTreeMap<Coordinate, Rational>)> = elements
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.as_ref().map(|e| (i, coordinates(e))))
        .collect();
    let mut out = Vec::with_capacity(k0.rank());
    for (i, entry) in k0.entries.iter().enumerate() {
        if *entry == BasisEntry::Exotic {
            out.push(TransportImage::Exotic);
            continue;
        }
        let image = coordinates(&cp.beta_hat(elements[i].as_ref().expect("non-exotic"))?);
        let mut keys: Vec<&Coordinate> = image.keys().collect();
        for (_, col) in &columns {
            keys.extend(col.keys());
        }
        keys.sort();
        keys.dedup();
        let a: Vec<Vec<Rational>> = keys
            .iter()
            .map(|key| columns.iter().map(|(_, col)| col.get(*key).cloned().unwrap_or_default()).collect())
            .collect();
        let b: Vec<Rational> = keys.iter().map(|key| image.get(*key).cloned().unwrap_or_default()).collect();
        out.push(match solve(&a, &b) {
            Some(sol) if sol.unique => {
                let mut full = vec![Rational::default(); k0.rank()];
                for ((j, _), c) in columns.iter().zip(sol.x) {
                    full[*j] = c;
                }
                TransportImage::Combination(full)
            }
            _ => TransportImage::NotInSpan,
        });
    }
    Ok(out)
}

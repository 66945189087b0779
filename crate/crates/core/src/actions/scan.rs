use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::actions::action::GroupAction;
use crate::actions::families::Family;
use crate::error::{Error, Result};
use crate::nctorus::{ThetaEntry, ThetaMatrix, Torus};
use crate::scalar::{rat, CyclotomicField, Rational};

/// Upper-triangle slots of a 3×3 θ-matrix, zero-based.
pub const SLOTS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Degree bound used to certify compatibility during a scan.
pub const SCAN_DEGREE: i64 = 2;

/// The slot carrying the symbolic θ in the compatibility tables.
pub fn free_slot(family: Family) -> Option<(usize, usize)> {
    match family {
        Family::B2 | Family::B3 | Family::B4 | Family::B6 => Some((1, 2)),
        Family::N1 | Family::N2 => Some((0, 1)),
        Family::B5 | Family::N3 | Family::N4 => None,
    }
}

pub fn fixed_slots(family: Family) -> Vec<(usize, usize)> {
    let free = free_slot(family);
    SLOTS.into_iter().filter(|s| Some(*s) != free).collect()
}

/// Published admissible values of the fixed slots, reduced modulo 1.
pub fn published_table(family: Family) -> BTreeSet<Vec<Rational>> {
    let halves = [rat(0, 1), rat(1, 2)];
    let mut out = BTreeSet::new();
    match family {
        Family::B2 | Family::N1 | Family::N2 => {
            for a in &halves {
                for b in &halves {
                    out.insert(vec![a.clone(), b.clone()]);
                }
            }
        }
        Family::B3 | Family::B6 => {
            for k in 0..3 {
                out.insert(vec![mod_one(rat(k, 3)), mod_one(rat(3 - k, 3))]);
            }
        }
        Family::B4 => {
            for k in 0..2 {
                out.insert(vec![rat(k, 2), rat(k, 2)]);
            }
        }
        Family::B5 | Family::N3 | Family::N4 => {
            for a in &halves {
                for b in &halves {
                    for c in &halves {
                        out.insert(vec![a.clone(), b.clone(), c.clone()]);
                    }
                }
            }
        }
    }
    out
}

fn mod_one(q: Rational) -> Rational {
    let f = q.floor();
    q - f
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScanResult {
    pub family: Family,
    pub denominator: u32,
    pub free_slot: Option<(usize, usize)>,
    pub fixed_slots: Vec<(usize, usize)>,
    pub admissible: BTreeSet<Vec<Rational>>,
}

impl ScanResult {
    pub fn matches_published(&self) -> bool {
        self.admissible == published_table(self.family)
    }

    /// Published rows missing from the scan, and scanned rows missing from the table.
    pub fn published_difference(&self) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let published = published_table(self.family);
        let missing = published.difference(&self.admissible).cloned().collect();
        let extra = self.admissible.difference(&published).cloned().collect();
        (missing, extra)
    }

    /// `theta_12 in {0, 1/2}, theta_13 in {0, 1/2}, theta_23 free` style summary.
    pub fn pattern(&self) -> String {
        render_pattern(&self.fixed_slots, self.free_slot, &self.admissible)
    }
}

pub fn slot_name((j, k): (usize, usize)) -> String {
    format!("theta_{}{}", j + 1, k + 1)
}

fn render_set<'a>(vals: impl IntoIterator<Item = &'a Rational>) -> String {
    let v: Vec<String> = vals.into_iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn render_pattern(
    fixed: &[(usize, usize)],
    free: Option<(usize, usize)>,
    admissible: &BTreeSet<Vec<Rational>>,
) -> String {
    let mut parts = Vec::new();
    if admissible.is_empty() {
        parts.push("no admissible values".to_string());
    } else {
        let projections: Vec<BTreeSet<Rational>> = (0..fixed.len())
            .map(|i| admissible.iter().map(|row| row[i].clone()).collect())
            .collect();
        let product: usize = projections.iter().map(BTreeSet::len).product();
        if product == admissible.len() {
            for (slot, vals) in fixed.iter().zip(&projections) {
                if vals.len() == 1 {
                    parts.push(format!("{} = {}", slot_name(*slot), vals.iter().next().unwrap()));
                } else {
                    parts.push(format!("{} in {}", slot_name(*slot), render_set(vals)));
                }
            }
        } else {
            let names: Vec<String> = fixed.iter().map(|s| slot_name(*s)).collect();
            let rows: Vec<String> = admissible
                .iter()
                .map(|r| format!("({})", r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")))
                .collect();
            parts.push(format!("({}) in {{{}}}", names.join(", "), rows.join(", ")));
        }
    }
    if let Some(s) = free {
        parts.push(format!("{} free", slot_name(s)));
    }
    parts.join(", ")
}

/// θ-matrix with the given fixed-slot values and symbolic θ in the free slot.
pub fn candidate_matrix(family: Family, values: &[Rational]) -> ThetaMatrix {
    let mut m = ThetaMatrix::zero(3);
    for (slot, v) in fixed_slots(family).into_iter().zip(values) {
        m.set(slot.0, slot.1, ThetaEntry::constant(v.clone()));
    }
    if let Some((j, k)) = free_slot(family) {
        m.set(j, k, ThetaEntry::free());
    }
    m
}

/// Field large enough to hold `e^{πi k/D}`.
pub fn scan_field(denominator: u32) -> Result<CyclotomicField> {
    CyclotomicField::new(24u32.lcm(&(2 * denominator)))
}

/// Enumerate fixed-slot values in `{k/D : 0 ≤ k < D}` and keep those whose
/// cocycle is compatible with the classical action up to [`SCAN_DEGREE`].
pub fn scan_cocycles(family: Family, denominator: u32) -> Result<ScanResult> {
    if denominator == 0 || denominator > 12 {
        return Err(Error::InvalidAction(format!("grid denominator {denominator} outside 1..=12")));
    }
    let spec = family.classical_spec();
    let field = scan_field(denominator)?;
    let fixed = fixed_slots(family);
    let grid: Vec<Rational> = (0..denominator as i64).map(|k| rat(k, denominator as i64)).collect();
    let mut candidates: Vec<Vec<Rational>> = vec![vec![]];
    for _ in &fixed {
        candidates = candidates
            .into_iter()
            .flat_map(|c| {
                grid.iter().map(move |g| {
                    let mut c = c.clone();
                    c.push(g.clone());
                    c
                })
            })
            .collect();
    }
    let admissible = candidates
        .into_par_iter()
        .map(|values| -> Result<Option<Vec<Rational>>> {
            let torus = Torus::new(candidate_matrix(family, &values), field)?;
            let action = GroupAction::from_spec(&spec, &torus)?;
            Ok(action.check_compatibility(SCAN_DEGREE).is_ok().then_some(values))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ScanResult { family, denominator, free_slot: free_slot(family), fixed_slots: fixed, admissible })
}

/// True when every value is one of the grid points `k/D`.
pub fn on_grid(values: &[Rational], denominator: u32) -> bool {
    values.iter().all(|v| (v * rat(denominator as i64, 1)).fract().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_matches_halves() {
        let r = scan_cocycles(Family::B2, 6).unwrap();
        assert!(r.matches_published(), "{}", r.pattern());
        assert_eq!(r.pattern(), "theta_12 in {0, 1/2}, theta_13 in {0, 1/2}, theta_23 free");
    }

    #[test]
    fn b3_pattern_is_not_a_product() {
        let r = scan_cocycles(Family::B3, 6).unwrap();
        assert!(r.matches_published());
        assert_eq!(
            r.pattern(),
            "(theta_12, theta_13) in {(0, 0), (1/3, 2/3), (2/3, 1/3)}, theta_23 free"
        );
    }

    #[test]
    fn sub_grid_restricts() {
        let full = scan_cocycles(Family::B2, 6).unwrap();
        let half = scan_cocycles(Family::B2, 2).unwrap();
        let restricted: BTreeSet<_> = full.admissible.into_iter().filter(|v| on_grid(v, 2)).collect();
        assert_eq!(half.admissible, restricted);
    }

    #[test]
    fn bad_denominator() {
        assert!(scan_cocycles(Family::B2, 13).is_err());
        assert!(scan_cocycles(Family::B2, 0).is_err());
    }
}

use num_integer::Integer;

use crate::actions::{Family, FiniteAction, GroupAction, Word};
use crate::check::Check;
use crate::crossed::product::{CrossedElement, CrossedProduct};
use crate::crossed::projector::{q_projector, q_projector_with_period, root_check, RootCheck};
use crate::error::{Error, Result};
use crate::nctorus::{ThetaMatrix, Torus};
use crate::scalar::{rat, CyclotomicField, Phase, Rational};

/// `C(T²_θ) ⋊ Z_N` for one of the orientable cyclic families, with the
/// action restricted to `V, W` and `λ` taken from the image of `U`.
pub fn rotation_crossed_product(family: Family, field: CyclotomicField, theta: Option<&Rational>) -> Result<CrossedProduct> {
    if !Family::CYCLIC_ORIENTABLE.contains(&family) {
        return Err(Error::InvalidAction(format!("{family} has no cyclic rotation-algebra action")));
    }
    let spec = family.twisted_spec()?.restrict(&[1, 2])?;
    let torus = match theta {
        Some(q) => Torus::with_theta_value(ThetaMatrix::paper_2d(), field, q.clone())?,
        None => Torus::new(ThetaMatrix::paper_2d(), field)?,
    };
    let action = GroupAction::from_spec(&spec, &torus)?;
    Ok(CrossedProduct::new(action.cyclic()?.clone()))
}

/// `C(T³_θ) ⋊ Z_N` with the full three-generator action.
pub fn torus3_crossed_product(family: Family, field: CyclotomicField, theta: Option<&Rational>) -> Result<CrossedProduct> {
    let spec = family.twisted_spec()?;
    let torus = match theta {
        Some(q) => Torus::with_theta_value(ThetaMatrix::paper_3d(), field, q.clone())?,
        None => Torus::new(ThetaMatrix::paper_3d(), field)?,
    };
    let action = GroupAction::from_spec(&spec, &torus)?;
    let g: FiniteAction = action.cyclic()?.clone();
    Ok(CrossedProduct::new(g))
}

/// A unitary `phase · V^a W^b p^j` whose spectral projections generate `K_0`.
#[derive(Clone, Debug)]
pub struct SpectralGenerator {
    pub name: String,
    pub printed: CrossedElement,
    /// `N / gcd(j, N)`.
    pub natural_order: u32,
    pub check: RootCheck,
    /// The printed element, or its phase-corrected version when the printed
    /// one misses its order by a scalar.
    pub element: CrossedElement,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisEntry {
    Unit,
    /// `Q_index` of the spectral generator at `generator`.
    Projector { generator: usize, index: i64 },
    /// The module class with no projection built here.
    Exotic,
}

/// The `K_0` generators of `C(T²_θ) ⋊ Z_N` in the basis order used for `id − β̂_*`.
#[derive(Clone, Debug)]
pub struct K0Generators {
    pub family: Family,
    pub product: CrossedProduct,
    pub spectral: Vec<SpectralGenerator>,
    pub labels: Vec<String>,
    pub entries: Vec<BasisEntry>,
}

struct GeneratorSpec {
    name: &'static str,
    phase: Phase,
    v: i64,
    w: i64,
    p: i64,
}

fn gen(name: &'static str, phase: Phase, v: i64, w: i64, p: i64) -> GeneratorSpec {
    GeneratorSpec { name, phase, v, w, p }
}

fn layout(family: Family) -> (Vec<GeneratorSpec>, Vec<(&'static str, BasisEntry)>) {
    use BasisEntry::{Exotic, Projector as P, Unit};
    let one = Phase::one;
    match family {
        Family::B2 => (
            vec![
                gen("p", one(), 0, 0, 1),
                gen("Vp", one(), 1, 0, 1),
                gen("Wp", one(), 0, 1, 1),
                gen("exp(pi i theta) VWp", Phase::theta_power(rat(1, 1)), 1, 1, 1),
            ],
            vec![
                ("[1]", Unit),
                ("[e00]", P { generator: 0, index: 0 }),
                ("[e01]", P { generator: 1, index: 0 }),
                ("[e10]", P { generator: 2, index: 0 }),
                ("[e11]", P { generator: 3, index: 0 }),
                ("[M2]", Exotic),
            ],
        ),
        Family::B3 => (
            vec![
                gen("p", one(), 0, 0, 1),
                gen("X", Phase::theta_power(rat(1, 3)), 1, 0, 1),
                gen("Y", Phase::theta_power(rat(2, 3)), 2, 0, 1),
            ],
            vec![
                ("[1]", Unit),
                ("[Q1(p)]", P { generator: 0, index: 1 }),
                ("[Q0(p)]", P { generator: 0, index: 0 }),
                ("[Q1(X)]", P { generator: 1, index: 1 }),
                ("[Q0(X)]", P { generator: 1, index: 0 }),
                ("[Q1(Y)]", P { generator: 2, index: 1 }),
                ("[Q0(Y)]", P { generator: 2, index: 0 }),
                ("[M3]", Exotic),
            ],
        ),
        Family::B4 => (
            vec![
                gen("p", one(), 0, 0, 1),
                gen("exp(pi i theta/2) Vp", Phase::theta_power(rat(1, 2)), 1, 0, 1),
                gen("Vp^2", one(), 1, 0, 2),
            ],
            vec![
                ("[1]", Unit),
                ("[Q2(p)]", P { generator: 0, index: 2 }),
                ("[Q1(p)]", P { generator: 0, index: 1 }),
                ("[Q0(p)]", P { generator: 0, index: 0 }),
                ("[Q2(x)]", P { generator: 1, index: 2 }),
                ("[Q1(x)]", P { generator: 1, index: 1 }),
                ("[Q0(x)]", P { generator: 1, index: 0 }),
                ("[Q0(Vp^2)]", P { generator: 2, index: 0 }),
                ("[M4]", Exotic),
            ],
        ),
        Family::B6 => (
            vec![
                gen("p", one(), 0, 0, 1),
                gen("exp(pi i/3) Vp^2", Phase::half_turns(rat(1, 3)), 1, 0, 2),
                gen("Vp^3", one(), 1, 0, 3),
            ],
            vec![
                ("[1]", Unit),
                ("[Q4(p)]", P { generator: 0, index: 4 }),
                ("[Q3(p)]", P { generator: 0, index: 3 }),
                ("[Q2(p)]", P { generator: 0, index: 2 }),
                ("[Q1(p)]", P { generator: 0, index: 1 }),
                ("[Q0(p)]", P { generator: 0, index: 0 }),
                ("[Q2(y)]", P { generator: 1, index: 2 }),
                ("[Q0(y)]", P { generator: 1, index: 0 }),
                ("[Q0(Vp^3)]", P { generator: 2, index: 0 }),
                ("[M6]", Exotic),
            ],
        ),
        _ => (vec![], vec![]),
    }
}

impl K0Generators {
    pub fn new(family: Family, field: CyclotomicField, theta: Option<&Rational>) -> Result<Self> {
        let product = rotation_crossed_product(family, field, theta)?;
        let n = product.order();
        let (gens, basis) = layout(family);
        let mut spectral = Vec::new();
        for g in gens {
            let word = Word { phase: g.phase, factors: vec![(0, g.v), (1, g.w)] };
            let printed = product.word(&word, g.p)?;
            let natural_order = n / (g.p.unsigned_abs() as u32).gcd(&n);
            let check = root_check(&product, &printed, natural_order)?;
            let element = match &check {
                RootCheck::Exact => printed.clone(),
                RootCheck::PhaseDefect { correction, .. } => {
                    printed.scale(&product.torus().scalar(correction)?)
                }
                RootCheck::NotScalar(r) => {
                    return Err(Error::NotRootOfUnity { order: natural_order, residual: r.clone() })
                }
            };
            spectral.push(SpectralGenerator { name: g.name.to_string(), printed, natural_order, check, element });
        }
        let (labels, entries) = basis.into_iter().map(|(l, e)| (l.to_string(), e)).unzip();
        Ok(K0Generators { family, product, spectral, labels, entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// The projection representing basis entry `i`; `None` for the exotic class.
    pub fn element(&self, i: usize) -> Result<Option<CrossedElement>> {
        match &self.entries[i] {
            BasisEntry::Unit => Ok(Some(self.product.one())),
            BasisEntry::Projector { generator, index } => {
                Ok(Some(q_projector(&self.product, *index, &self.spectral[*generator].element)?))
            }
            BasisEntry::Exotic => Ok(None),
        }
    }

    pub fn exotic_index(&self) -> usize {
        self.entries.iter().position(|e| *e == BasisEntry::Exotic).expect("exotic class present")
    }

    /// Every `Q_n` for `n ∈ [0, N)` of every spectral generator.
    pub fn all_projectors(&self) -> Result<Vec<(String, Vec<CrossedElement>)>> {
        let n = self.product.order() as i64;
        self.spectral
            .iter()
            .map(|g| {
                let qs = (0..n).map(|k| q_projector(&self.product, k, &g.element)).collect::<Result<Vec<_>>>()?;
                Ok((g.name.clone(), qs))
            })
            .collect()
    }

    /// Anomaly records for generators whose printed phase misses their order.
    pub fn root_anomalies(&self) -> Vec<Check> {
        self.spectral
            .iter()
            .filter_map(|g| match &g.check {
                RootCheck::Exact => None,
                other => Some(Check::anomaly(
                    format!("{} {}: order {} as printed", self.family, g.name, g.natural_order),
                    other.to_string(),
                )),
            })
            .collect()
    }
}

/// Which root of unity the `Z_6` projector sum uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HexReading {
    /// `e^{2πink/6}`.
    Sixth,
    /// `e^{2πink/3}` as printed.
    Third,
}

/// Projector laws for `Q_n(p)`, `n = 0..5`, in `C(T²_θ) ⋊ Z_6` under a reading.
/// Returns (all idempotent and self-adjoint, spectral completeness, distinct).
pub fn hex_reading_laws(product: &CrossedProduct, reading: HexReading) -> Result<(bool, bool, bool)> {
    let period = match reading {
        HexReading::Sixth => 6,
        HexReading::Third => 3,
    };
    let p = product.p();
    let qs = (0..6)
        .map(|n| q_projector_with_period(product, n, period, &p))
        .collect::<Result<Vec<_>>>()?;
    let mut projections = true;
    for q in &qs {
        projections &= crate::crossed::projector::is_projection(product, q)?;
    }
    let complete = crate::crossed::projector::spectral_completeness(product, &qs)?;
    let distinct = (0..qs.len()).all(|i| (i + 1..qs.len()).all(|j| qs[i] != qs[j]));
    Ok((projections, complete, distinct))
}

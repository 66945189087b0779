use std::fmt;

use crate::actions::Family;
use crate::error::{Error, Result};
use crate::ktheory::matrix::IntMatrix;
use crate::ktheory::pv::BetaStarData;

const B2: &str = include_str!("../../fixtures/b2.txt");
const B3: &str = include_str!("../../fixtures/b3.txt");
const B4: &str = include_str!("../../fixtures/b4.txt");
const B6: &str = include_str!("../../fixtures/b6.txt");

pub fn fixture_source(family: Family) -> Result<&'static str> {
    match family {
        Family::B2 => Ok(B2),
        Family::B3 => Ok(B3),
        Family::B4 => Ok(B4),
        Family::B6 => Ok(B6),
        other => Err(Error::UnknownFamily(format!("no displayed matrix for {other}"))),
    }
}

/// Basis labels from the `# basis:` header line.
pub fn fixture_labels(src: &str) -> Vec<String> {
    src.lines()
        .find_map(|l| l.trim().strip_prefix("# basis:"))
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .unwrap_or_default()
}

pub fn displayed_matrix(family: Family, epsilon: i64) -> Result<IntMatrix> {
    IntMatrix::parse_grid(fixture_source(family)?, &[("eps", epsilon)])
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FixtureComparison {
    Identical,
    /// Equal after exchanging basis vectors `a` and `b` of the displayed matrix.
    BasisTransposition(usize, usize),
    Different(Vec<(usize, usize)>),
}

impl fmt::Display for FixtureComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureComparison::Identical => write!(f, "identical"),
            FixtureComparison::BasisTransposition(a, b) => {
                write!(f, "identical after exchanging basis vectors {} and {}", a + 1, b + 1)
            }
            FixtureComparison::Different(cells) => {
                let cells: Vec<String> = cells.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
                write!(f, "entries differ at {}", cells.join(" "))
            }
        }
    }
}

pub fn compare_with_fixture(data: &BetaStarData) -> Result<FixtureComparison> {
    let shown = displayed_matrix(data.family, data.epsilon.unwrap_or(1))?;
    let labels = fixture_labels(fixture_source(data.family)?);
    if labels != data.labels {
        return Err(Error::InconsistentData(format!(
            "fixture basis {labels:?} differs from {:?}",
            data.labels
        )));
    }
    let ours = &data.matrix;
    if shown.rows() != ours.rows() || shown.cols() != ours.cols() {
        return Err(Error::DimensionMismatch { expected: ours.rows(), found: shown.rows() });
    }
    if shown == *ours {
        return Ok(FixtureComparison::Identical);
    }
    let n = ours.rows();
    for a in 0..n {
        for b in a + 1..n {
            let mut relabelled = shown.clone();
            relabelled.swap_rows(a, b);
            relabelled.swap_cols(a, b);
            if relabelled == *ours {
                return Ok(FixtureComparison::BasisTransposition(a, b));
            }
        }
    }
    let cells = (0..n)
        .flat_map(|i| (0..ours.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| shown.get(i, j) != ours.get(i, j))
        .collect();
    Ok(FixtureComparison::Different(cells))
}

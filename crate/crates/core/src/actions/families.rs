use std::fmt;
use std::str::FromStr;

use crate::actions::spec::ActionSpec;
use crate::error::{Error, Result};

/// The ten flat three-manifolds minus the torus itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    B2,
    B3,
    B4,
    B5,
    B6,
    N1,
    N2,
    N3,
    N4,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::B2,
        Family::B3,
        Family::B4,
        Family::B5,
        Family::B6,
        Family::N1,
        Family::N2,
        Family::N3,
        Family::N4,
    ];

    /// Families with a cyclic action on the noncommutative torus whose
    /// crossed products are computed.
    pub const CYCLIC_ORIENTABLE: [Family; 4] = [Family::B2, Family::B3, Family::B4, Family::B6];

    pub fn name(self) -> &'static str {
        match self {
            Family::B2 => "B2",
            Family::B3 => "B3",
            Family::B4 => "B4",
            Family::B5 => "B5",
            Family::B6 => "B6",
            Family::N1 => "N1",
            Family::N2 => "N2",
            Family::N3 => "N3",
            Family::N4 => "N4",
        }
    }

    pub fn order(self) -> u32 {
        match self {
            Family::B3 => 3,
            Family::B4 => 4,
            Family::B6 => 6,
            _ => 2,
        }
    }

    /// Action on the commutative three-torus.
    pub fn classical_source(self) -> &'static str {
        match self {
            Family::B2 => CLASSICAL_B2,
            Family::B3 => CLASSICAL_B3,
            Family::B4 => CLASSICAL_B4,
            Family::B5 => CLASSICAL_B5,
            Family::B6 => CLASSICAL_B6,
            Family::N1 => CLASSICAL_N1,
            Family::N2 => CLASSICAL_N2,
            Family::N3 => CLASSICAL_N3,
            Family::N4 => CLASSICAL_N4,
        }
    }

    /// Action on the noncommutative torus with `WV = e^{2πiθ} VW`, where defined.
    pub fn twisted_source(self) -> Option<&'static str> {
        match self {
            Family::B2 => Some(TWISTED_B2),
            Family::B3 => Some(TWISTED_B3),
            Family::B4 => Some(TWISTED_B4),
            Family::B6 => Some(TWISTED_B6),
            Family::N1 => Some(TWISTED_N1),
            Family::N2 => Some(TWISTED_N2),
            _ => None,
        }
    }

    pub fn classical_spec(self) -> ActionSpec {
        ActionSpec::parse(self.classical_source()).expect("built-in table parses")
    }

    pub fn twisted_spec(self) -> Result<ActionSpec> {
        let src = self
            .twisted_source()
            .ok_or_else(|| Error::InvalidAction(format!("{} has no noncommutative action", self.name())))?;
        ActionSpec::parse(src)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_end_matches("_theta");
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

pub const CLASSICAL_B2: &str = "\
name: B2
order: 2
e: U -> -U
e: V -> V*
e: W -> W*
";

pub const CLASSICAL_B3: &str = "\
name: B3
order: 3
e: U -> exp(2/3 pi i) U
e: V -> W*
e: W -> W* V
";

pub const CLASSICAL_B4: &str = "\
name: B4
order: 4
e: U -> i U
e: V -> W
e: W -> V*
";

pub const CLASSICAL_B5: &str = "\
name: B5
order: 2
e1: U -> -U
e1: V -> V*
e1: W -> W*
e2: U -> U*
e2: V -> -V
e2: W -> -W*
";

pub const CLASSICAL_B6: &str = "\
name: B6
order: 6
e: U -> exp(1/3 pi i) U
e: V -> W
e: W -> W V*
";

pub const CLASSICAL_N1: &str = "\
name: N1
order: 2
e: U -> -U
e: V -> V
e: W -> W*
";

// the third image is printed with the label e1; the group has the single generator e
pub const CLASSICAL_N2: &str = "\
name: N2
order: 2
e: U -> -U
e: V -> V W
e: W -> W*
";

pub const CLASSICAL_N3: &str = "\
name: N3
order: 2
e1: U -> -U
e1: V -> V*
e1: W -> W*
e2: U -> U
e2: V -> -V
e2: W -> W*
";

pub const CLASSICAL_N4: &str = "\
name: N4
order: 2
e1: U -> -U
e1: V -> V*
e1: W -> W*
e2: U -> U
e2: V -> -V
e2: W -> -W*
";

pub const TWISTED_B2: &str = "\
name: B2_theta
order: 2
e: U -> -U
e: V -> V*
e: W -> W*
";

pub const TWISTED_B3: &str = "\
name: B3_theta
order: 3
e: U -> exp(2/3 pi i) U
e: V -> exp(-pi i theta) V* W
e: W -> V*
";

pub const TWISTED_B4: &str = "\
name: B4_theta
order: 4
e: U -> i U
e: V -> W
e: W -> V*
";

pub const TWISTED_B6: &str = "\
name: B6_theta
order: 6
e: U -> exp(1/3 pi i) U
e: V -> W
e: W -> exp(-pi i theta) V* W
";

pub const TWISTED_N1: &str = "\
name: N1_theta
order: 2
e: U -> U*
e: V -> -V
e: W -> W
";

pub const TWISTED_N2: &str = "\
name: N2_theta
order: 2
e: U -> U*
e: V -> -V
e: W -> W U*
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        for f in Family::ALL {
            let s = f.classical_spec();
            assert_eq!(s.order, f.order(), "{f}");
            assert_eq!(s.dim(), 3);
            if let Some(t) = f.twisted_source() {
                assert_eq!(ActionSpec::parse(t).unwrap().order, f.order());
            }
        }
        assert_eq!(Family::B5.classical_spec().group.len(), 2);
    }

    #[test]
    fn family_names() {
        assert_eq!("b3".parse::<Family>().unwrap(), Family::B3);
        assert_eq!("B6_theta".parse::<Family>().unwrap(), Family::B6);
        assert!(matches!("B7".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }
}

use crate::actions::word::{parse_word, Word};
use crate::error::{Error, Result};

/// Declarative description of a finite group action on generator unitaries.
///
/// Each group generator carries one [`Word`] per torus generator. Several
/// group generators describe a product of cyclic groups of the same order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ActionSpec {
    pub name: String,
    pub order: u32,
    pub generator_names: Vec<String>,
    pub group: Vec<(String, Vec<Word>)>,
}

impl ActionSpec {
    pub fn dim(&self) -> usize {
        self.generator_names.len()
    }

    /// Parse the line-oriented format:
    ///
    /// ```text
    /// # comment
    /// name: B3_theta
    /// order: 3
    /// generators: U V W
    /// e: U -> exp(2/3 pi i) U
    /// e: V -> exp(-pi i theta) V* W
    /// e: W -> V*
    /// ```
    pub fn parse(src: &str) -> Result<ActionSpec> {
        let mut name = String::from("custom");
        let mut order: Option<u32> = None;
        let mut names: Vec<String> = vec!["U".into(), "V".into(), "W".into()];
        let mut rows: Vec<(usize, String, String, String)> = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Parse { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| err(format!("expected 'key: value', got '{line}'")))?;
            let (key, rest) = (key.trim(), rest.trim());
            match key {
                "name" => name = rest.to_string(),
                "order" => {
                    let n: u32 = rest.parse().map_err(|_| err(format!("bad order '{rest}'")))?;
                    if n == 0 {
                        return Err(err("order must be positive".into()));
                    }
                    order = Some(n);
                }
                "generators" => {
                    names = rest.split_whitespace().map(str::to_string).collect();
                    if names.is_empty() {
                        return Err(err("empty generator list".into()));
                    }
                }
                label => {
                    let (lhs, rhs) = rest
                        .split_once("->")
                        .ok_or_else(|| err(format!("expected 'GEN -> word', got '{rest}'")))?;
                    rows.push((line_no, label.to_string(), lhs.trim().to_string(), rhs.trim().to_string()));
                }
            }
        }
        let order = order.ok_or(Error::Parse { line: 0, message: "missing 'order:' line".into() })?;
        let mut group: Vec<(String, Vec<Option<Word>>)> = Vec::new();
        for (line, label, lhs, rhs) in rows {
            let err = |message: String| Error::Parse { line, message };
            let gi = names
                .iter()
                .position(|n| *n == lhs)
                .ok_or_else(|| err(format!("unknown generator '{lhs}'")))?;
            let word = parse_word(&rhs, &names).map_err(err)?;
            let slot = match group.iter().position(|(l, _)| *l == label) {
                Some(p) => p,
                None => {
                    group.push((label.clone(), vec![None; names.len()]));
                    group.len() - 1
                }
            };
            if group[slot].1[gi].replace(word).is_some() {
                return Err(err(format!("image of {lhs} under {label} given twice")));
            }
        }
        if group.is_empty() {
            return Err(Error::Parse { line: 0, message: "no images given".into() });
        }
        let mut out = Vec::new();
        for (label, images) in group {
            let mut ws = Vec::new();
            for (i, w) in images.into_iter().enumerate() {
                ws.push(w.ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!("missing image of {} under {label}", names[i]),
                })?);
            }
            out.push((label, ws));
        }
        Ok(ActionSpec { name, order, generator_names: names, group: out })
    }

    /// Render back to the text format.
    pub fn to_source(&self) -> String {
        let mut s = format!(
            "name: {}\norder: {}\ngenerators: {}\n",
            self.name,
            self.order,
            self.generator_names.join(" ")
        );
        for (label, words) in &self.group {
            for (i, w) in words.iter().enumerate() {
                s.push_str(&format!("{label}: {} -> {}\n", self.generator_names[i], w.render(&self.generator_names)));
            }
        }
        s
    }

    /// Keep only the listed torus generators. Fails when an image leaves the
    /// subalgebra they generate.
    pub fn restrict(&self, keep: &[usize]) -> Result<ActionSpec> {
        let mut group = Vec::new();
        for (label, words) in &self.group {
            let mut ws = Vec::new();
            for &i in keep {
                let w = &words[i];
                let mut factors = Vec::new();
                for &(g, k) in &w.factors {
                    let ng = keep.iter().position(|&j| j == g).ok_or_else(|| {
                        Error::InvalidAction(format!(
                            "image of {} under {label} involves {}",
                            self.generator_names[i], self.generator_names[g]
                        ))
                    })?;
                    factors.push((ng, k));
                }
                ws.push(Word { phase: w.phase.clone(), factors });
            }
            group.push((label.clone(), ws));
        }
        Ok(ActionSpec {
            name: self.name.clone(),
            order: self.order,
            generator_names: keep.iter().map(|&i| self.generator_names[i].clone()).collect(),
            group,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B3: &str = "
# twisted Z3 action
name: B3_theta
order: 3
e: U -> exp(2/3 pi i) U
e: V -> exp(-pi i theta) V* W
e: W -> V*
";

    #[test]
    fn parse_and_roundtrip() {
        let s = ActionSpec::parse(B3).unwrap();
        assert_eq!(s.order, 3);
        assert_eq!(s.group.len(), 1);
        assert_eq!(s.group[0].1[2].factors, vec![(1, -1)]);
        assert_eq!(ActionSpec::parse(&s.to_source()).unwrap(), s);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = ActionSpec::parse("order: 2\ne: U -> X\ne: V -> V\ne: W -> W").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        assert!(ActionSpec::parse("e: U -> U").is_err());
        let e = ActionSpec::parse("order: 2\ne: U -> U\ne: V -> V").unwrap_err();
        assert!(e.to_string().contains("missing image of W"));
    }

    #[test]
    fn restriction_to_rotation_subalgebra() {
        let s = ActionSpec::parse(B3).unwrap().restrict(&[1, 2]).unwrap();
        assert_eq!(s.generator_names, vec!["V", "W"]);
        assert_eq!(s.group[0].1[0].factors, vec![(0, -1), (1, 1)]);
        let n2 = ActionSpec::parse("order: 2\ne: U -> U*\ne: V -> -V\ne: W -> W U*").unwrap();
        assert!(n2.restrict(&[1, 2]).is_err());
    }
}

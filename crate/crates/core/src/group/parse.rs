//! Cycle-notation parsing and the plain-text group file format.
//!
//! A group file has a `degree: n` header followed by one generator per line
//! in 1-based cycle notation, e.g. `(1 2 3)(4 5)`. Blank lines and lines
//! starting with `#` are ignored. Named subgroups may be declared as
//! `subgroup NAME: (1 2)(3 4); (1 3)(2 4)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Group, Perm, DEFAULT_ORDER_BOUND};
use crate::error::{Error, Result};

/// Parses a single generator such as `(1 2 3)(4 5)` on `degree` points.
pub fn parse_perm(text: &str, degree: usize) -> Result<Perm> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::MalformedCycle(format!("expected '(' in {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::MalformedCycle(format!("unbalanced parentheses in {text:?}")))?;
        let body = &open[..close];
        if body.contains('(') {
            return Err(Error::MalformedCycle(format!("nested '(' in {text:?}")));
        }
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let point: usize = tok
                .parse()
                .map_err(|_| Error::MalformedCycle(format!("bad point {tok:?} in {text:?}")))?;
            if point == 0 || point > degree {
                return Err(Error::PointOutOfRange { point, degree });
            }
            cycle.push(point - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Perm::from_cycles(degree, &cycles)
}

/// Parses a `;`- or newline-separated generator list.
pub fn parse_generators(text: &str, degree: usize) -> Result<Vec<Perm>> {
    text.split([';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_perm(s, degree))
        .collect()
}

/// Builds the group generated by a cycle-notation generator list.
///
/// `parse_group("(1 2 3); (1 2)", 3)` is the symmetric group on three points.
pub fn parse_group(text: &str, degree: usize) -> Result<Arc<Group>> {
    parse_group_bounded(text, degree, DEFAULT_ORDER_BOUND)
}

pub fn parse_group_bounded(text: &str, degree: usize, bound: usize) -> Result<Arc<Group>> {
    if degree == 0 {
        return Err(Error::MalformedCycle("degree must be positive".into()));
    }
    Group::with_bound(degree, parse_generators(text, degree)?, bound)
}

/// Contents of a group file.
#[derive(Debug, Clone)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
    /// Declared subgroups by name, as generator lists.
    pub subgroups: BTreeMap<String, Vec<Perm>>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut gen_lines = Vec::new();
        let mut named = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("degree:") {
                let d: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::MalformedCycle(format!("bad degree header {line:?}")))?;
                if d == 0 {
                    return Err(Error::MalformedCycle("degree must be positive".into()));
                }
                degree = Some(d);
            } else if let Some(v) = line.strip_prefix("subgroup ") {
                let (name, gens) = v
                    .split_once(':')
                    .ok_or_else(|| Error::MalformedCycle(format!("bad subgroup line {line:?}")))?;
                named.push((name.trim().to_string(), gens.to_string()));
            } else {
                gen_lines.push(line.to_string());
            }
        }
        let degree =
            degree.ok_or_else(|| Error::MalformedCycle("missing `degree: n` header".into()))?;
        let generators = gen_lines
            .iter()
            .map(|l| parse_perm(l, degree))
            .collect::<Result<Vec<_>>>()?;
        let mut subgroups = BTreeMap::new();
        for (name, gens) in named {
            subgroups.insert(name, parse_generators(&gens, degree)?);
        }
        Ok(GroupFile { degree, generators, subgroups })
    }

    pub fn group(&self, bound: usize) -> Result<Arc<Group>> {
        Group::with_bound(self.degree, self.generators.clone(), bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format_examples() {
        assert_eq!(parse_group("(1 2 3); (1 2)", 3).unwrap().order(), 6);
        assert_eq!(parse_group("", 1).unwrap().order(), 1);
        assert_eq!(parse_group("(1 2 3 4); (1 3)", 4).unwrap().order(), 8);
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(matches!(parse_group("(1 2", 3), Err(Error::MalformedCycle(_))));
        assert!(matches!(parse_group("1 2)", 3), Err(Error::MalformedCycle(_))));
        assert!(matches!(parse_group("(1 x)", 3), Err(Error::MalformedCycle(_))));
        assert!(matches!(
            parse_group("(1 4)", 3),
            Err(Error::PointOutOfRange { point: 4, degree: 3 })
        ));
        assert!(matches!(parse_group("(0 1)", 3), Err(Error::PointOutOfRange { .. })));
    }

    #[test]
    fn group_file_with_named_subgroup() {
        let text = "# S4\ndegree: 4\n(1 2 3 4)\n(1 2)\nsubgroup V4: (1 2)(3 4); (1 3)(2 4)\n";
        let f = GroupFile::parse(text).unwrap();
        assert_eq!(f.group(2000).unwrap().order(), 24);
        assert_eq!(f.subgroups["V4"].len(), 2);
        assert!(GroupFile::parse("(1 2)\n").is_err());
    }
}

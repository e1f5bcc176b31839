use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A group element in canonical form.
///
/// Two elements are equal iff their stored forms are identical: torsion
/// coordinates are kept in `[0, order)` and lamp supports are sorted and
/// duplicate-free. Construct elements through [`crate::Group`] helpers
/// when the input may not be canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Free coordinates followed by torsion coordinates.
    Abelian(Vec<i64>),
    /// `(v, q)` with `v` in the lattice and `q` an index of the finite quotient.
    Extension { v: Vec<i64>, q: usize },
    /// Index into a multiplication table.
    Finite(usize),
    /// Finitely supported lamp configuration and the lamplighter position.
    Lamp { support: Vec<i64>, shift: i64 },
}

impl Element {
    pub fn family_name(&self) -> &'static str {
        match self {
            Element::Abelian(_) => "abelian",
            Element::Extension { .. } => "extension",
            Element::Finite(_) => "finite",
            Element::Lamp { .. } => "lamplighter",
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[i64]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Canonical text form: `(3,1)`, `(3,1|2)`, `[5]`, `({0,1};2)`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Abelian(v) => {
                f.write_str("(")?;
                write_list(f, v)?;
                f.write_str(")")
            }
            Element::Extension { v, q } => {
                f.write_str("(")?;
                write_list(f, v)?;
                write!(f, "|{q})")
            }
            Element::Finite(i) => write!(f, "[{i}]"),
            Element::Lamp { support, shift } => {
                f.write_str("({")?;
                write_list(f, support)?;
                write!(f, "}};{shift})")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse element `{text}`: {reason}")]
pub struct ParseElementError {
    pub text: String,
    pub reason: String,
}

fn parse_ints(text: &str, s: &str) -> Result<Vec<i64>, ParseElementError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim().parse::<i64>().map_err(|e| ParseElementError {
                text: text.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

impl FromStr for Element {
    type Err = ParseElementError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseElementError {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let s = text.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let idx = inner
                .trim()
                .parse::<usize>()
                .map_err(|e| err(&e.to_string()))?;
            return Ok(Element::Finite(idx));
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err("expected `(...)` or `[...]`"))?;
        if let Some(rest) = inner.trim_start().strip_prefix('{') {
            let (set, tail) = rest.split_once('}').ok_or_else(|| err("unclosed `{`"))?;
            let shift = tail
                .trim()
                .strip_prefix(';')
                .ok_or_else(|| err("expected `;shift` after support"))?
                .trim()
                .parse::<i64>()
                .map_err(|e| err(&e.to_string()))?;
            let support = parse_ints(text, set)?;
            if support.windows(2).any(|w| w[0] >= w[1]) {
                return Err(err("support must be strictly increasing"));
            }
            return Ok(Element::Lamp { support, shift });
        }
        if let Some((v, q)) = inner.split_once('|') {
            let q = q.trim().parse::<usize>().map_err(|e| err(&e.to_string()))?;
            return Ok(Element::Extension {
                v: parse_ints(text, v)?,
                q,
            });
        }
        Ok(Element::Abelian(parse_ints(text, inner)?))
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Element::Abelian(vec![3, 1]).to_string(), "(3,1)");
        assert_eq!(Element::Abelian(vec![]).to_string(), "()");
        assert_eq!(
            Element::Extension { v: vec![-1, 2], q: 3 }.to_string(),
            "(-1,2|3)"
        );
        assert_eq!(Element::Finite(5).to_string(), "[5]");
        assert_eq!(
            Element::Lamp { support: vec![0, 1], shift: 2 }.to_string(),
            "({0,1};2)"
        );
        assert_eq!(
            Element::Lamp { support: vec![], shift: -1 }.to_string(),
            "({};-1)"
        );
    }

    #[test]
    fn parse_rejects_noncanonical_support() {
        assert!("({1,0};0)".parse::<Element>().is_err());
        assert!("({1,1};0)".parse::<Element>().is_err());
        assert!("3,1".parse::<Element>().is_err());
    }

    #[test]
    fn parse_each_family() {
        assert_eq!("( 4 , -1 )".parse(), Ok(Element::Abelian(vec![4, -1])));
        assert_eq!("[0]".parse(), Ok(Element::Finite(0)));
        assert_eq!(
            "(2|1)".parse(),
            Ok(Element::Extension { v: vec![2], q: 1 })
        );
        assert_eq!(
            "({-1};-2)".parse(),
            Ok(Element::Lamp { support: vec![-1], shift: -2 })
        );
    }
}

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Exponent;

/// A finite set of lattice points, e.g. the support of a polynomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Shape(BTreeSet<Exponent>);

impl Shape {
    pub fn from_points<I: IntoIterator<Item = Exponent>>(points: I) -> Self {
        Shape(points.into_iter().collect())
    }

    pub fn points(&self) -> impl Iterator<Item = &Exponent> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.0.contains(e)
    }

    pub fn is_subset(&self, other: &Shape) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn dim(&self) -> Option<usize> {
        self.0.first().map(Exponent::dim)
    }

    pub fn translate(&self, by: &Exponent) -> Shape {
        Shape(self.0.iter().map(|e| e.add(by)).collect())
    }

    pub fn scale(&self, k: i64) -> Shape {
        Shape(self.0.iter().map(|e| e.scale(k)).collect())
    }

    pub fn neg(&self) -> Shape {
        Shape(self.0.iter().map(Exponent::neg).collect())
    }

    pub fn union(&self, other: &Shape) -> Shape {
        Shape(self.0.union(&other.0).cloned().collect())
    }

    /// Translates the shape so that its lexicographically smallest point
    /// becomes the origin. Returns the translated shape and that point.
    pub fn primitive_translate(&self) -> Result<(Shape, Exponent)> {
        let origin = self
            .0
            .first()
            .ok_or(Error::Invalid("empty shape".into()))?
            .clone();
        Ok((self.translate(&origin.neg()), origin))
    }
}

impl FromIterator<Exponent> for Shape {
    fn from_iter<I: IntoIterator<Item = Exponent>>(iter: I) -> Self {
        Shape::from_points(iter)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Parses a point list `"(a,b);(c,d);..."`, keeping the given order.
/// All points must share one dimension.
pub fn parse_points(text: &str) -> Result<Vec<Exponent>> {
    let mut out: Vec<Exponent> = Vec::new();
    let mut offset = 0;
    for chunk in text.split(';') {
        let pos = offset + chunk.len() - chunk.trim_start().len();
        offset += chunk.len() + 1;
        let item = chunk.trim();
        if item.is_empty() {
            continue;
        }
        let inner = item
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Syntax {
                pos,
                msg: format!("expected '(..)', found '{item}'"),
            })?;
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim().parse::<i64>().map_err(|_| Error::Syntax {
                    pos,
                    msg: format!("bad coordinate '{}'", c.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = out.first() {
            if first.dim() != coords.len() {
                return Err(Error::Syntax {
                    pos,
                    msg: "points of different dimensions".into(),
                });
            }
        }
        out.push(Exponent::from(coords));
    }
    if out.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty point list".into(),
        });
    }
    Ok(out)
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_points(s).map(Shape::from_points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_translate_uses_lex_smallest_point() {
        let s: Shape = "(1,1);(2,1)".parse().unwrap();
        let (t, origin) = s.primitive_translate().unwrap();
        assert_eq!(origin, Exponent::from([1, 1]));
        assert_eq!(t, "(0,0);(1,0)".parse().unwrap());
    }

    #[test]
    fn literal_parsing() {
        let pts = parse_points(" (0,0); (-1, 2) ;").unwrap();
        assert_eq!(pts, vec![Exponent::from([0, 0]), Exponent::from([-1, 2])]);
        assert!(parse_points("(0,0);(1)").is_err());
        assert!(parse_points("0,0").is_err());
        assert!(parse_points("").is_err());
        let s: Shape = "(0,1);(0,0)".parse().unwrap();
        assert_eq!(s.to_string(), "(0,0);(0,1)");
    }
}

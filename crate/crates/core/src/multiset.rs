//! Coefficient multisets `A = {a_1, ..., a_n}` in one or two dimensions.

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};

/// A point in the plane with exact rational coordinates, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn norm_sq(&self) -> Rational {
        &self.x * &self.x + &self.y * &self.y
    }

    pub fn scale(&self, c: &Rational) -> Point2 {
        Point2::new(&self.x * c, &self.y * c)
    }
}

impl std::fmt::Display for Point2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entries {
    Scalar(Vec<Rational>),
    Planar(Vec<Point2>),
}

/// Multiset of coefficients, stored sorted so equal multisets compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMultiset {
    entries: Entries,
    unit_norm_floor: bool,
}

impl CoefficientMultiset {
    pub fn scalars(entries: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let mut v: Vec<Rational> = entries.into_iter().collect();
        if v.is_empty() {
            return Err(Error::invalid("coefficient multiset must be non-empty"));
        }
        v.sort();
        Ok(CoefficientMultiset {
            entries: Entries::Scalar(v),
            unit_norm_floor: false,
        })
    }

    pub fn integers(entries: impl IntoIterator<Item = i64>) -> Result<Self> {
        Self::scalars(entries.into_iter().map(crate::rational::int))
    }

    pub fn planar(entries: impl IntoIterator<Item = Point2>) -> Result<Self> {
        let mut v: Vec<Point2> = entries.into_iter().collect();
        if v.is_empty() {
            return Err(Error::invalid("coefficient multiset must be non-empty"));
        }
        v.sort();
        Ok(CoefficientMultiset {
            entries: Entries::Planar(v),
            unit_norm_floor: false,
        })
    }

    /// Marks the multiset as satisfying `|a_i| >= 1` for every entry, checking it.
    pub fn with_unit_norm_floor(mut self) -> Result<Self> {
        let ok = match &self.entries {
            Entries::Scalar(v) => v.iter().all(|a| a.abs() >= Rational::one()),
            Entries::Planar(v) => v.iter().all(|a| a.norm_sq() >= Rational::one()),
        };
        if !ok {
            return Err(Error::invalid("an entry has norm below 1"));
        }
        self.unit_norm_floor = true;
        Ok(self)
    }

    pub fn has_unit_norm_floor(&self) -> bool {
        self.unit_norm_floor
    }

    pub fn dim(&self) -> usize {
        match self.entries {
            Entries::Scalar(_) => 1,
            Entries::Planar(_) => 2,
        }
    }

    pub fn len(&self) -> usize {
        match &self.entries {
            Entries::Scalar(v) => v.len(),
            Entries::Planar(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn as_scalars(&self) -> Result<&[Rational]> {
        match &self.entries {
            Entries::Scalar(v) => Ok(v),
            Entries::Planar(_) => Err(Error::invalid("expected a one-dimensional multiset")),
        }
    }

    pub fn as_planar(&self) -> Result<&[Point2]> {
        match &self.entries {
            Entries::Planar(v) => Ok(v),
            Entries::Scalar(_) => Err(Error::invalid("expected a two-dimensional multiset")),
        }
    }

    /// Multiplies every entry by `c`.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        match &self.entries {
            Entries::Scalar(v) => Self::scalars(v.iter().map(|a| a * c)),
            Entries::Planar(v) => Self::planar(v.iter().map(|a| a.scale(c))),
        }
    }

    /// Parses `1, 2/3 -4` (scalars) or `(1,0) (0,1/2)` (pairs).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.contains('(') {
            let mut points = Vec::new();
            let mut rest = t;
            while let Some(open) = rest.find('(') {
                let close = rest[open..]
                    .find(')')
                    .ok_or_else(|| Error::Parse("unbalanced parenthesis".into()))?
                    + open;
                let inner = &rest[open + 1..close];
                let (x, y) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("expected x,y in ({inner})")))?;
                points.push(Point2::new(parse_rational(x)?, parse_rational(y)?));
                rest = &rest[close + 1..];
            }
            if !rest.trim().trim_matches(|c: char| c == ',' || c == ';').trim().is_empty() {
                return Err(Error::Parse(format!("trailing text {rest:?}")));
            }
            return Self::planar(points);
        }
        let values = t
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::scalars(values)
    }

    /// `Σ a_i²` for scalars or `Σ |a_i|²` for pairs.
    pub fn sum_of_squares(&self) -> Rational {
        match &self.entries {
            Entries::Scalar(v) => v.iter().map(|a| a * a).sum(),
            Entries::Planar(v) => v.iter().map(Point2::norm_sq).sum(),
        }
    }

    pub fn all_nonzero(&self) -> bool {
        match &self.entries {
            Entries::Scalar(v) => v.iter().all(|a| !a.is_zero()),
            Entries::Planar(v) => v.iter().all(|a| !a.norm_sq().is_zero()),
        }
    }
}

impl std::fmt::Display for CoefficientMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.entries {
            Entries::Scalar(v) => {
                let parts: Vec<String> = v.iter().map(format_rational).collect();
                write!(f, "{}", parts.join(","))
            }
            Entries::Planar(v) => {
                let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn parse_scalars_sorts_and_keeps_multiplicity() {
        let a = CoefficientMultiset::parse("3, 1 1/2,1").unwrap();
        assert_eq!(a.as_scalars().unwrap(), &[rat(1, 2), int(1), int(1), int(3)]);
        let b = CoefficientMultiset::parse("1,1,1,1").unwrap();
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn parse_pairs() {
        let a = CoefficientMultiset::parse("(0,1) (1,0), (1/2,-3)").unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.as_planar().unwrap()[0], Point2::new(int(0), int(1)));
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn empty_is_rejected() {
        assert!(CoefficientMultiset::parse("").is_err());
        assert!(CoefficientMultiset::parse(" , ").is_err());
    }

    #[test]
    fn unit_norm_floor_is_checked() {
        assert!(CoefficientMultiset::parse("1,-2").unwrap().with_unit_norm_floor().is_ok());
        assert!(CoefficientMultiset::parse("1,1/2").unwrap().with_unit_norm_floor().is_err());
        let p = CoefficientMultiset::parse("(3/5,4/5)").unwrap();
        assert!(p.with_unit_norm_floor().is_ok());
    }
}

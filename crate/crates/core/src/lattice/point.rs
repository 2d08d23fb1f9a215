use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A lattice point of `Z^n`.
///
/// Points order lexicographically by coordinates; every set and report in
/// this crate is emitted in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<i64>,
}

impl Point {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self {
            coords: coords.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Zero-based coordinate accessor (`p_{axis+1}` in the usual notation).
    pub fn coord(&self, axis: usize) -> i64 {
        self.coords[axis]
    }

    /// The point moved by `delta` along a single axis.
    pub fn shifted(&self, axis: usize, delta: i64) -> Point {
        let mut coords = self.coords.clone();
        coords[axis] += delta;
        Point { coords }
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(coords: [i64; N]) -> Self {
        Point::new(coords.to_vec())
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point { coords }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Parses `(x,y,...)`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Syntax(format!("expected a parenthesized tuple, got {s:?}")))?;
        let coords = inner
            .split(',')
            .map(|c| {
                c.parse::<i64>()
                    .map_err(|_| Error::Syntax(format!("bad coordinate {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Point::new(coords))
    }
}

/// Parses `(x,y);(x,y);...`. An empty or all-blank string is the empty list.
pub fn parse_point_list(s: &str) -> Result<Vec<Point>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// Formats points as `(x,y);(x,y);...`.
pub fn format_point_list<'a>(points: impl IntoIterator<Item = &'a Point>) -> String {
    points.into_iter().map(Point::to_string).collect::<Vec<_>>().join(";")
}

/// `c_u` adjacency on raw coordinate slices of equal length.
pub(crate) fn cu_adjacent(a: &[i64], b: &[i64], u: usize) -> bool {
    let mut differing = 0;
    for (x, y) in a.iter().zip(b) {
        match (x - y).abs() {
            0 => {}
            1 => differing += 1,
            _ => return false,
        }
    }
    differing >= 1 && differing <= u
}

/// Whether `p` and `q` are `c_u`-adjacent: distinct, differing in at most `u`
/// coordinates, each by exactly one.
pub fn adjacent(p: &Point, q: &Point, u: usize) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    if u == 0 || u > p.dim() {
        return Err(Error::AdjacencyOutOfRange { u, dim: p.dim() });
    }
    Ok(cu_adjacent(p.coords(), q.coords(), u))
}

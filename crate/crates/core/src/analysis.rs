//! Structural point classes that force or forbid membership in freezing sets,
//! and the cardinality bounds they give.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Maximum,
    Minimum,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Maximum => "max",
            Direction::Minimum => "min",
        })
    }
}

/// A 1-coordinate local extremum: `point` is strictly above (or below) all
/// its neighbors in coordinate `index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremumRecord {
    pub point: Point,
    /// One-based coordinate index.
    pub index: usize,
    pub direction: Direction,
    /// `point` stepped once toward its neighbors along `index`.
    pub justifying_neighbor: Point,
    /// Whether the justifying neighbor lies in the image.
    pub justified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentType {
    Horizontal,
    Vertical,
    Slanted,
    NotASegment,
}

/// Why an [`AnalysisReport`] carries no upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBoundOmitted {
    NoArticulationPoints,
    AllArticulationPoints,
    OneDimensional,
}

impl fmt::Display for UpperBoundOmitted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpperBoundOmitted::NoArticulationPoints => "no articulation points",
            UpperBoundOmitted::AllArticulationPoints => "every point is an articulation point",
            UpperBoundOmitted::OneDimensional => "articulation points need not lie on the boundary when n = 1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    /// Degree-one points.
    pub d1: PointSet,
    /// Articulation points.
    pub w: PointSet,
    pub extrema: Vec<ExtremumRecord>,
    /// Points with at least one justified extremum record.
    pub t: PointSet,
    pub bd: PointSet,
    /// `#(D1 ∪ T)`.
    pub lower_bound: usize,
    /// `#Bd(X) - #W`, when defined. The formula presumes `W ⊆ Bd(X)`; when
    /// `w_interior` is nonempty it may undercut the true minimum.
    pub upper_bound: Option<usize>,
    pub upper_bound_omitted: Option<UpperBoundOmitted>,
    /// Articulation points off the boundary.
    pub w_interior: PointSet,
}

impl AnalysisReport {
    /// Points every freezing set must contain.
    pub fn required(&self) -> PointSet {
        self.d1.union(&self.t)
    }
}

/// Points of degree exactly one.
pub fn degree_one_points(image: &DigitalImage) -> Result<PointSet> {
    image.require_connected()?;
    Ok(PointSet::from_indices(
        image.len(),
        (0..image.len()).filter(|&i| image.degree(i) == 1),
    ))
}

/// All 1-coordinate local extrema, one record per (point, index, direction).
/// Isolated points yield no records.
pub fn local_extrema(image: &DigitalImage) -> Vec<ExtremumRecord> {
    let mut out = Vec::new();
    for (x, p) in image.points().iter().enumerate() {
        let nbrs = image.neighbors(x);
        if nbrs.is_empty() {
            continue;
        }
        for axis in 0..image.dim() {
            let c = p.coord(axis);
            let candidates = [
                (Direction::Maximum, nbrs.iter().all(|&y| image.point(y).coord(axis) < c), -1),
                (Direction::Minimum, nbrs.iter().all(|&y| image.point(y).coord(axis) > c), 1),
            ];
            for (direction, holds, step) in candidates {
                if holds {
                    let justifying_neighbor = p.shifted(axis, step);
                    out.push(ExtremumRecord {
                        point: p.clone(),
                        index: axis + 1,
                        direction,
                        justified: image.contains(&justifying_neighbor),
                        justifying_neighbor,
                    });
                }
            }
        }
    }
    out
}

/// Classifies an ordered planar point list as a digital line segment: a
/// constant unit step along an axis or a diagonal.
pub fn segment_type(points: &[Point]) -> Result<SegmentType> {
    if let Some(p) = points.iter().find(|p| p.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    if points.len() < 2 {
        return Ok(SegmentType::NotASegment);
    }
    let step = |a: &Point, b: &Point| (b.coord(0) - a.coord(0), b.coord(1) - a.coord(1));
    let first = step(&points[0], &points[1]);
    if points.windows(2).any(|w| step(&w[0], &w[1]) != first) {
        return Ok(SegmentType::NotASegment);
    }
    Ok(match first {
        (1 | -1, 0) => SegmentType::Horizontal,
        (0, 1 | -1) => SegmentType::Vertical,
        (1 | -1, 1 | -1) => SegmentType::Slanted,
        _ => SegmentType::NotASegment,
    })
}

/// Gathers `D1`, `W`, the extrema, `T`, `Bd(X)` and the cardinality bounds.
pub fn analyze(image: &DigitalImage) -> Result<AnalysisReport> {
    let d1 = degree_one_points(image)?;
    let w = image.articulation_points()?;
    let extrema = local_extrema(image);
    let t = PointSet::from_indices(
        image.len(),
        extrema
            .iter()
            .filter(|r| r.justified)
            .map(|r| image.index_of(&r.point).unwrap()),
    );
    let bd = image.boundary();
    let lower_bound = d1.union(&t).len();
    let omitted = if image.dim() == 1 {
        Some(UpperBoundOmitted::OneDimensional)
    } else if w.is_empty() {
        Some(UpperBoundOmitted::NoArticulationPoints)
    } else if w.len() == image.len() {
        Some(UpperBoundOmitted::AllArticulationPoints)
    } else {
        None
    };
    let upper_bound = omitted.is_none().then(|| bd.len().saturating_sub(w.len()));
    let w_interior = w.difference(&bd);
    Ok(AnalysisReport {
        d1,
        w,
        extrema,
        t,
        bd,
        lower_bound,
        upper_bound,
        upper_bound_omitted: omitted,
        w_interior,
    })
}

use std::collections::{HashMap, VecDeque};

use super::point::cu_adjacent;
use super::{Point, PointSet};
use crate::error::{Error, Result};

/// A finite digital image `(X, c_u)` with `X ⊂ Z^n`.
///
/// Points are stored in canonical lexicographic order; the position of a
/// point in that order is its index, and all index-based APIs
/// ([`PointSet`], [`SelfMap`](crate::SelfMap), paths) refer to it.
#[derive(Debug, Clone)]
pub struct DigitalImage {
    dim: usize,
    adjacency: usize,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    neighbors: Vec<Vec<usize>>,
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.adjacency == other.adjacency && self.points == other.points
    }
}

impl Eq for DigitalImage {}

impl DigitalImage {
    /// Builds `(X, c_u)` from a point list in any order.
    pub fn new(dim: usize, adjacency: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if adjacency == 0 || adjacency > dim {
            return Err(Error::AdjacencyOutOfRange { u: adjacency, dim });
        }
        let mut points: Vec<Point> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptyImage);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].clone()));
        }
        let index: HashMap<Point, usize> =
            points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let neighbors = build_neighbors(&points, &index, dim, adjacency);
        Ok(Self {
            dim,
            adjacency,
            points,
            index,
            neighbors,
        })
    }

    /// Shorthand for 2-D images given as coordinate pairs.
    pub fn planar(adjacency: usize, points: &[(i64, i64)]) -> Result<Self> {
        Self::new(2, adjacency, points.iter().map(|&(x, y)| Point::from([x, y])))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The adjacency parameter `u` of `c_u`.
    pub fn adjacency(&self) -> usize {
        self.adjacency
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn require(&self, p: &Point) -> Result<usize> {
        self.index_of(p).ok_or_else(|| Error::NotInImage(p.clone()))
    }

    /// Resolves a list of points into a set, failing on the first point not in
    /// the image. Repeated points are accepted.
    pub fn point_set<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> Result<PointSet> {
        let mut set = self.empty_set();
        for p in points {
            set.insert(self.require(p)?);
        }
        Ok(set)
    }

    /// The members of `set` as points, in canonical order.
    pub fn points_of(&self, set: &PointSet) -> Vec<Point> {
        set.iter().map(|i| self.points[i].clone()).collect()
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Neighbor indices of `index`, ascending.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.neighbors[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.neighbors[index].len()
    }

    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// `a <->= b` on indices.
    pub fn adjacent_or_equal(&self, a: usize, b: usize) -> bool {
        a == b || self.are_adjacent(a, b)
    }

    /// `N(X, x, c_u)`.
    pub fn neighborhood(&self, x: &Point) -> Result<PointSet> {
        let i = self.require(x)?;
        Ok(PointSet::from_indices(self.len(), self.neighbors[i].iter().copied()))
    }

    /// Component label of every point, skipping points in `removed`.
    /// Labels are assigned in order of each component's smallest member.
    pub fn component_labels(&self, removed: &PointSet) -> (Vec<Option<usize>>, usize) {
        let mut labels = vec![None; self.len()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.len() {
            if labels[start].is_some() || removed.contains(start) {
                continue;
            }
            labels[start] = Some(count);
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.neighbors[v] {
                    if labels[w].is_none() && !removed.contains(w) {
                        labels[w] = Some(count);
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (labels, count)
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<PointSet> {
        self.components_without(&self.empty_set())
    }

    /// Components of the image with `removed` deleted.
    pub fn components_without(&self, removed: &PointSet) -> Vec<PointSet> {
        let (labels, count) = self.component_labels(removed);
        let mut comps = vec![self.empty_set(); count];
        for (i, label) in labels.into_iter().enumerate() {
            if let Some(c) = label {
                comps[c].insert(i);
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels(&self.empty_set()).1 == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Whether the points of `set` induce a connected subgraph. The empty set
    /// counts as connected.
    pub fn is_connected_subset(&self, set: &PointSet) -> bool {
        let Some(start) = set.first() else {
            return true;
        };
        let mut seen = self.empty_set();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if set.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// `Bd(X)`: points with a `c_1`-neighbor in `Z^n \ X`. Only the `2n` axis
    /// neighbors of each point are probed.
    pub fn boundary(&self) -> PointSet {
        let mut bd = self.empty_set();
        for (i, p) in self.points.iter().enumerate() {
            let exposed = (0..self.dim)
                .any(|axis| [-1, 1].iter().any(|&d| !self.contains(&p.shifted(axis, d))));
            if exposed {
                bd.insert(i);
            }
        }
        bd
    }
}

fn build_neighbors(
    points: &[Point],
    index: &HashMap<Point, usize>,
    dim: usize,
    u: usize,
) -> Vec<Vec<usize>> {
    let offsets = offset_count(dim, u);
    let mut neighbors = vec![Vec::new(); points.len()];
    if offsets.is_none_or(|k| k > points.len()) {
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if cu_adjacent(points[i].coords(), points[j].coords(), u) {
                    neighbors[i].push(j);
                    neighbors[j].push(i);
                }
            }
        }
        return neighbors;
    }
    let deltas = unit_offsets(dim, u);
    for (i, p) in points.iter().enumerate() {
        let list = &mut neighbors[i];
        for delta in &deltas {
            let q: Vec<i64> = p.coords().iter().zip(delta).map(|(a, d)| a + d).collect();
            if let Some(&j) = index.get(&Point::from(q)) {
                list.push(j);
            }
        }
        list.sort_unstable();
    }
    neighbors
}

/// Number of `c_u` offsets in `Z^n`, if it fits in a usize.
fn offset_count(dim: usize, u: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut binom: usize = 1;
    for k in 1..=u {
        binom = binom.checked_mul(dim - k + 1)? / k;
        total = total.checked_add(binom.checked_mul(1usize.checked_shl(k as u32)?)?)?;
    }
    Some(total)
}

fn unit_offsets(dim: usize, u: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![0i64; dim];
    fn rec(axis: usize, nonzero: usize, u: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if axis == current.len() {
            if nonzero > 0 {
                out.push(current.clone());
            }
            return;
        }
        for d in [-1i64, 0, 1] {
            if d != 0 && nonzero == u {
                continue;
            }
            current[axis] = d;
            rec(axis + 1, nonzero + usize::from(d != 0), u, current, out);
        }
        current[axis] = 0;
    }
    rec(0, 0, u, &mut current, &mut out);
    out
}

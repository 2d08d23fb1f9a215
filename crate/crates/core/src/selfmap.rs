//! Self-maps of a digital image and digital continuity.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, Point, PointSet};

/// Default point cap for [`is_continuous_by_definition`].
pub const DEFINITION_CHECK_CAP: usize = 12;

/// A total function `X -> X`, stored densely over the canonical point order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SelfMap {
    images: Vec<usize>,
}

impl SelfMap {
    pub fn identity(len: usize) -> Self {
        Self {
            images: (0..len).collect(),
        }
    }

    pub fn constant(len: usize, target: usize) -> Self {
        assert!(target < len);
        Self {
            images: vec![target; len],
        }
    }

    pub(crate) fn from_raw(images: Vec<usize>) -> Self {
        Self { images }
    }

    /// Builds a map from the image index of every point, validating totality.
    pub fn from_indices(image: &DigitalImage, images: Vec<usize>) -> Result<Self> {
        if images.len() != image.len() {
            return Err(Error::MapSize {
                expected: image.len(),
                found: images.len(),
            });
        }
        if images.iter().any(|&v| v >= image.len()) {
            return Err(Error::MapSize {
                expected: image.len(),
                found: images.iter().copied().max().unwrap_or(0) + 1,
            });
        }
        Ok(Self { images })
    }

    /// The identity on `X` except at the listed points.
    pub fn with_overrides(image: &DigitalImage, overrides: &[(Point, Point)]) -> Result<Self> {
        let mut images: Vec<usize> = (0..image.len()).collect();
        for (from, to) in overrides {
            images[image.require(from)?] = image.require(to)?;
        }
        Ok(Self { images })
    }

    /// Builds a map from a point function; every value must lie in `X`.
    pub fn from_fn(image: &DigitalImage, mut f: impl FnMut(&Point) -> Point) -> Result<Self> {
        let images = image
            .points()
            .iter()
            .map(|p| image.require(&f(p)))
            .collect::<Result<_>>()?;
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn get(&self, index: usize) -> usize {
        self.images[index]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `Fix(f)`.
    pub fn fixed_points(&self) -> PointSet {
        PointSet::from_indices(
            self.len(),
            self.images.iter().enumerate().filter(|(i, v)| i == *v).map(|(i, _)| i),
        )
    }

    /// `f(X)` as a set.
    pub fn range(&self) -> PointSet {
        PointSet::from_indices(self.len(), self.images.iter().copied())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SelfMap) -> SelfMap {
        assert_eq!(self.len(), inner.len());
        SelfMap {
            images: inner.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    /// Whether `f` restricts to the identity on its own range.
    pub fn is_retraction(&self) -> bool {
        self.range().iter().all(|v| self.images[v] == v)
    }

    pub fn display<'a>(&'a self, image: &'a DigitalImage) -> impl fmt::Display + 'a {
        MapDisplay { map: self, image }
    }
}

struct MapDisplay<'a> {
    map: &'a SelfMap,
    image: &'a DigitalImage,
}

impl fmt::Display for MapDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.map.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}->{}", self.image.point(i), self.image.point(v))?;
        }
        Ok(())
    }
}

fn check_size(image: &DigitalImage, f: &SelfMap) -> Result<()> {
    if f.len() != image.len() {
        return Err(Error::MapSize {
            expected: image.len(),
            found: f.len(),
        });
    }
    Ok(())
}

/// Adjacency criterion: `x <-> x'` implies `f(x) <->= f(x')`.
pub fn is_continuous(image: &DigitalImage, f: &SelfMap) -> Result<bool> {
    check_size(image, f)?;
    Ok(continuous_unchecked(image, f))
}

pub(crate) fn continuous_unchecked(image: &DigitalImage, f: &SelfMap) -> bool {
    (0..image.len()).all(|x| {
        image
            .neighbors(x)
            .iter()
            .filter(|&&y| y > x)
            .all(|&y| image.adjacent_or_equal(f.get(x), f.get(y)))
    })
}

/// Definitional criterion: the image of every connected subset is connected.
///
/// Enumerates all connected subsets, so it refuses images above `cap` points.
pub fn is_continuous_by_definition(image: &DigitalImage, f: &SelfMap, cap: usize) -> Result<bool> {
    check_size(image, f)?;
    if image.len() > cap {
        return Err(Error::CapExceeded {
            what: "connected-subset enumeration",
            cap,
            size: image.len(),
        });
    }
    let mut ok = true;
    for_each_connected_subset(image, |set| {
        let mapped = PointSet::from_indices(image.len(), set.iter().map(|i| f.get(i)));
        ok = image.is_connected_subset(&mapped);
        ok
    });
    Ok(ok)
}

/// Visits every nonempty connected subset exactly once. Each subset is grown
/// from its smallest member, adding only larger points drawn from the
/// exclusive neighborhood of the last addition. Stops early when `visit`
/// returns false.
pub fn for_each_connected_subset(image: &DigitalImage, mut visit: impl FnMut(&PointSet) -> bool) {
    fn extend(
        image: &DigitalImage,
        root: usize,
        subset: &mut PointSet,
        closed: &mut PointSet,
        extension: Vec<usize>,
        visit: &mut dyn FnMut(&PointSet) -> bool,
    ) -> bool {
        if !visit(subset) {
            return false;
        }
        let mut ext = extension;
        while let Some(w) = ext.pop() {
            // exclusive neighbors of w: larger than root, not in or adjacent to the subset
            let fresh: Vec<usize> = image
                .neighbors(w)
                .iter()
                .copied()
                .filter(|&z| z > root && !closed.contains(z))
                .collect();
            let mut next = ext.clone();
            next.extend(fresh.iter().copied());
            subset.insert(w);
            let mut newly_closed = Vec::new();
            for &z in &fresh {
                if closed.insert(z) {
                    newly_closed.push(z);
                }
            }
            let keep_going = extend(image, root, subset, closed, next, visit);
            for z in newly_closed {
                closed.remove(z);
            }
            subset.remove(w);
            if !keep_going {
                return false;
            }
        }
        true
    }

    for root in 0..image.len() {
        let mut subset = PointSet::from_indices(image.len(), [root]);
        // `closed` holds the subset plus every point already adjacent to it.
        let mut closed = subset.clone();
        let ext: Vec<usize> = image.neighbors(root).iter().copied().filter(|&z| z > root).collect();
        for &z in &ext {
            closed.insert(z);
        }
        if !extend(image, root, &mut subset, &mut closed, ext, &mut visit) {
            return;
        }
    }
}

/// Checks both pulling implications on every adjacent pair and coordinate,
/// and the monotone-path extension along every strictly monotone path.
///
/// Every continuous map passes; the check exists to exercise that claim.
pub fn check_pulling_consistency(image: &DigitalImage, f: &SelfMap) -> Result<bool> {
    if !is_continuous(image, f)? {
        return Err(Error::NotContinuous);
    }
    let coord = |i: usize, axis: usize| image.point(i).coord(axis);
    for axis in 0..image.dim() {
        for q in 0..image.len() {
            let (fq, pq) = (coord(f.get(q), axis), coord(q, axis));
            for &q2 in image.neighbors(q) {
                let (fq2, pq2) = (coord(f.get(q2), axis), coord(q2, axis));
                if fq < pq && pq < pq2 && fq2 >= pq2 {
                    return Ok(false);
                }
                if fq > pq && pq > pq2 && fq2 <= pq2 {
                    return Ok(false);
                }
            }
        }
        for q in 0..image.len() {
            let (fq, pq) = (coord(f.get(q), axis), coord(q, axis));
            if fq < pq && !monotone_reach_pulled(image, f, q, axis, true) {
                return Ok(false);
            }
            if fq > pq && !monotone_reach_pulled(image, f, q, axis, false) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every point reachable from `start` by a path strictly increasing (or
/// decreasing) in `axis` is pulled the same way by `f`.
fn monotone_reach_pulled(image: &DigitalImage, f: &SelfMap, start: usize, axis: usize, increasing: bool) -> bool {
    let coord = |i: usize| image.point(i).coord(axis);
    let pulled = |i: usize| {
        let (fi, pi) = (image.point(f.get(i)).coord(axis), coord(i));
        if increasing {
            fi < pi
        } else {
            fi > pi
        }
    };
    let mut seen = PointSet::from_indices(image.len(), [start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if !pulled(v) {
            return false;
        }
        for &w in image.neighbors(v) {
            let step = if increasing { coord(w) > coord(v) } else { coord(w) < coord(v) };
            if step && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    true
}

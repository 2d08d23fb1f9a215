//! Backtracking with arc consistency over the constraint `x <-> y  =>
//! f(x) <->= f(y)`, one variable per image point.

use std::collections::VecDeque;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;

use crate::lattice::{DigitalImage, PointSet};
use crate::selfmap::SelfMap;

pub(crate) type Domains = Vec<FixedBitSet>;

/// Why a search stopped before finishing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Halt {
    Budget,
    Cancelled,
}

/// Static constraint data shared by all searches on one image.
pub(crate) struct Constraints<'a> {
    pub image: &'a DigitalImage,
    /// `N[v]`: v together with its neighbors.
    closed: Vec<FixedBitSet>,
    pub pulling: bool,
}

/// Per-query node accounting, shareable across workers.
pub(crate) struct Counter {
    nodes: AtomicU64,
    limit: Option<u64>,
    /// Smallest subproblem index that has produced a map.
    pub found_at: AtomicUsize,
}

impl Counter {
    pub fn new(limit: Option<u64>) -> Self {
        Self {
            nodes: AtomicU64::new(0),
            limit,
            found_at: AtomicUsize::new(usize::MAX),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn tick(&self) -> Result<(), Halt> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.limit {
            Some(limit) if n > limit => Err(Halt::Budget),
            _ => Ok(()),
        }
    }
}

impl<'a> Constraints<'a> {
    pub fn new(image: &'a DigitalImage, pulling: bool) -> Self {
        let n = image.len();
        let closed = (0..n)
            .map(|v| {
                let mut b = FixedBitSet::with_capacity(n);
                b.insert(v);
                b.extend(image.neighbors(v).iter().copied());
                b
            })
            .collect();
        Self {
            image,
            closed,
            pulling,
        }
    }

    pub fn full_domains(&self) -> Domains {
        let n = self.image.len();
        let mut all = FixedBitSet::with_capacity(n);
        all.insert_range(..);
        vec![all; n]
    }

    pub fn pin(domains: &mut Domains, var: usize, value: usize) {
        domains[var].clear();
        domains[var].insert(value);
    }

    /// Runs arc consistency (and the pulling filter, if enabled) from the
    /// given changed variables. Returns false on a wipe-out.
    pub fn propagate(&self, domains: &mut Domains, changed: impl IntoIterator<Item = usize>) -> bool {
        let n = self.image.len();
        let mut queued = FixedBitSet::with_capacity(n);
        let mut queue = VecDeque::new();
        for v in changed {
            if domains[v].is_clear() {
                return false;
            }
            if !queued.put(v) {
                queue.push_back(v);
            }
        }
        let mut support = FixedBitSet::with_capacity(n);
        while let Some(y) = queue.pop_front() {
            queued.set(y, false);
            support.clear();
            for w in domains[y].ones() {
                support.union_with(&self.closed[w]);
            }
            for &x in self.image.neighbors(y) {
                let before = domains[x].count_ones(..);
                domains[x].intersect_with(&support);
                let after = domains[x].count_ones(..);
                if after == 0 {
                    return false;
                }
                if after < before && !queued.put(x) {
                    queue.push_back(x);
                }
            }
            if self.pulling {
                match self.pull_from(domains, y) {
                    None => return false,
                    Some(touched) => {
                        for x in touched {
                            if !queued.put(x) {
                                queue.push_back(x);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Pulling filter: when every candidate for `f(q)` lies strictly below `q`
    /// in some coordinate, a neighbor `q'` above `q` must map strictly below
    /// `q'` in that coordinate (and symmetrically upward).
    fn pull_from(&self, domains: &mut Domains, q: usize) -> Option<Vec<usize>> {
        let image = self.image;
        let mut touched = Vec::new();
        for axis in 0..image.dim() {
            let c = |i: usize| image.point(i).coord(axis);
            let (lo, hi) = domains[q]
                .ones()
                .fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(c(v)), hi.max(c(v))));
            let cq = c(q);
            for &q2 in image.neighbors(q) {
                let c2 = c(q2);
                let cut: Option<Box<dyn Fn(i64) -> bool>> = if hi < cq && cq < c2 {
                    Some(Box::new(move |w| w >= c2))
                } else if lo > cq && cq > c2 {
                    Some(Box::new(move |w| w <= c2))
                } else {
                    None
                };
                if let Some(cut) = cut {
                    let doomed: Vec<usize> = domains[q2].ones().filter(|&w| cut(c(w))).collect();
                    if !doomed.is_empty() {
                        for w in doomed {
                            domains[q2].set(w, false);
                        }
                        if domains[q2].is_clear() {
                            return None;
                        }
                        touched.push(q2);
                    }
                }
            }
        }
        Some(touched)
    }

    fn to_map(domains: &Domains) -> SelfMap {
        SelfMap::from_raw(domains.iter().map(|d| d.minimum().unwrap()).collect())
    }

    /// Depth-first search for one complete assignment. Variables are taken in
    /// `order`; values other than the variable itself are tried first.
    pub fn find_one(
        &self,
        domains: Domains,
        order: &[usize],
        counter: &Counter,
        ticket: usize,
    ) -> Result<Option<SelfMap>, Halt> {
        if counter.found_at.load(Ordering::Relaxed) < ticket {
            return Err(Halt::Cancelled);
        }
        let Some(var) = order.iter().copied().find(|&v| domains[v].count_ones(..) > 1) else {
            return Ok(Some(Self::to_map(&domains)));
        };
        let values: Vec<usize> = domains[var]
            .ones()
            .filter(|&v| v != var)
            .chain(domains[var].contains(var).then_some(var))
            .collect();
        for value in values {
            counter.tick()?;
            let mut next = domains.clone();
            Self::pin(&mut next, var, value);
            if self.propagate(&mut next, [var]) {
                if let Some(map) = self.find_one(next, order, counter, ticket)? {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }

    /// Visits every complete assignment in lexicographic order of the image
    /// vector.
    pub fn for_each(
        &self,
        domains: Domains,
        counter: &Counter,
        visit: &mut dyn FnMut(&SelfMap) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, Halt> {
        let Some(var) = (0..domains.len()).find(|&v| domains[v].count_ones(..) > 1) else {
            return Ok(visit(&Self::to_map(&domains)));
        };
        for value in domains[var].ones() {
            counter.tick()?;
            let mut next = domains.clone();
            Self::pin(&mut next, var, value);
            if self.propagate(&mut next, [var]) && self.for_each(next, counter, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Free variables in breadth-first order from the fixed set (from point 0
/// when nothing is fixed).
pub(crate) fn bfs_order(image: &DigitalImage, fixed: &PointSet) -> Vec<usize> {
    let mut seen = fixed.clone();
    let mut queue: VecDeque<usize> = fixed.iter().collect();
    let mut order = Vec::new();
    let mut next_root = 0;
    loop {
        while let Some(v) = queue.pop_front() {
            for &w in image.neighbors(v) {
                if seen.insert(w) {
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        while next_root < image.len() && seen.contains(next_root) {
            next_root += 1;
        }
        if next_root == image.len() {
            return order;
        }
        seen.insert(next_root);
        order.push(next_root);
        queue.push_back(next_root);
    }
}

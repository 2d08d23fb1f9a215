//! Exhaustive ground truth for freezing questions.
//!
//! Every verdict here comes from a complete search of the continuous
//! self-maps fixing a set, so `Frozen` is never a heuristic answer. The search
//! is split by the first moved point: for each free point `x` (in
//! breadth-first order from the fixed set), look for a continuous map that
//! fixes the set and every earlier free point but moves `x`. These cases are
//! disjoint and cover every non-identity map.

mod engine;
mod exclude;
mod minimize;

use std::ops::ControlFlow;
use std::sync::atomic::Ordering;
use std::sync::Arc;

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, PointSet};
use crate::selfmap::SelfMap;
use engine::{bfs_order, Constraints, Counter, Halt};

pub use exclude::{FreezingTable, EXCLUDABLE_CAP};
pub use minimize::{MinimizeOptions, MinimumFreezingSets, DEFAULT_MAX_POOL};

/// Default node budget per query.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Upper bound on search nodes for one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    max_nodes: Option<u64>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self { max_nodes: None }
    }

    pub fn nodes(max_nodes: u64) -> Result<Self> {
        if max_nodes == 0 {
            return Err(Error::ZeroBudget);
        }
        Ok(Self {
            max_nodes: Some(max_nodes),
        })
    }

    pub fn max_nodes(&self) -> Option<u64> {
        self.max_nodes
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: Some(DEFAULT_NODE_BUDGET),
        }
    }
}

/// Result of looking for a non-identity continuous map that fixes a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// No such map exists.
    NoMap,
    Found(SelfMap),
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Frozen,
    /// The witness is continuous, fixes the queried set, and is not the
    /// identity.
    Refuted(SelfMap),
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub nodes_explored: u64,
}

impl Verdict {
    pub fn is_frozen(&self) -> bool {
        matches!(self.outcome, Outcome::Frozen)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.outcome, Outcome::Refuted(_))
    }

    pub fn witness(&self) -> Option<&SelfMap> {
        match &self.outcome {
            Outcome::Refuted(f) => Some(f),
            _ => None,
        }
    }

    /// `Some(true)` for frozen, `Some(false)` for refuted.
    pub fn decided(&self) -> Option<bool> {
        match self.outcome {
            Outcome::Frozen => Some(true),
            Outcome::Refuted(_) => Some(false),
            Outcome::BudgetExhausted => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Apply the pulling filter on top of arc consistency.
    pub pulling_pruning: bool,
    /// Worker threads for the first-moved-point split; 1 runs inline.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            pulling_pruning: true,
            threads: 1,
        }
    }
}

/// Continuous self-maps fixing a set, possibly truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEnumeration {
    pub maps: Vec<SelfMap>,
    pub truncated: bool,
}

/// Exact search over `C(X, c_u)` for one connected image.
pub struct Oracle<'a> {
    constraints: Constraints<'a>,
    pool: Option<Arc<ThreadPool>>,
}

impl<'a> Oracle<'a> {
    pub fn new(image: &'a DigitalImage) -> Result<Self> {
        Self::with_options(image, SearchOptions::default())
    }

    pub fn with_options(image: &'a DigitalImage, options: SearchOptions) -> Result<Self> {
        image.require_connected()?;
        let pool = if options.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(options.threads)
                .build()
                .expect("thread pool");
            Some(Arc::new(pool))
        } else {
            None
        };
        Ok(Self {
            constraints: Constraints::new(image, options.pulling_pruning),
            pool,
        })
    }

    pub fn image(&self) -> &'a DigitalImage {
        self.constraints.image
    }

    fn check_set(&self, set: &PointSet) -> Result<()> {
        if set.capacity() != self.image().len() {
            return Err(Error::MapSize {
                expected: self.image().len(),
                found: set.capacity(),
            });
        }
        Ok(())
    }

    /// Looks for a continuous `f != id` with `fixed ⊆ Fix(f)`.
    ///
    /// The witness is the first map found in the sequential order, whatever
    /// the thread count.
    pub fn search_nonidentity_map(&self, fixed: &PointSet, budget: SearchBudget) -> Result<SearchResult> {
        self.check_set(fixed)?;
        let image = self.image();
        let order = bfs_order(image, fixed);
        let counter = Counter::new(budget.max_nodes());
        let solve = |k: usize| -> Result<Option<SelfMap>, Halt> {
            let c = &self.constraints;
            let mut domains = c.full_domains();
            for a in fixed.iter() {
                Constraints::pin(&mut domains, a, a);
            }
            for &v in &order[..k] {
                Constraints::pin(&mut domains, v, v);
            }
            let moved = order[k];
            domains[moved].set(moved, false);
            if !c.propagate(&mut domains, 0..image.len()) {
                return Ok(None);
            }
            let found = c.find_one(domains, &order[k + 1..], &counter, k)?;
            if found.is_some() {
                counter.found_at.fetch_min(k, Ordering::Relaxed);
            }
            Ok(found)
        };

        let results: Vec<Result<Option<SelfMap>, Halt>> = match &self.pool {
            None => {
                let mut out = Vec::new();
                for k in 0..order.len() {
                    let r = solve(k);
                    let stop = !matches!(r, Ok(None));
                    out.push(r);
                    if stop {
                        break;
                    }
                }
                out
            }
            Some(pool) => pool.install(|| (0..order.len()).into_par_iter().map(solve).collect()),
        };

        let mut outcome = SearchOutcome::NoMap;
        for r in results {
            match r {
                Ok(None) | Err(Halt::Cancelled) => continue,
                Ok(Some(map)) => {
                    outcome = SearchOutcome::Found(map);
                    break;
                }
                Err(Halt::Budget) => {
                    outcome = SearchOutcome::BudgetExhausted;
                    break;
                }
            }
        }
        Ok(SearchResult {
            outcome,
            nodes_explored: counter.nodes(),
        })
    }

    /// Decides whether `set` is a freezing set.
    pub fn verify_freezing(&self, set: &PointSet, budget: SearchBudget) -> Result<Verdict> {
        let r = self.search_nonidentity_map(set, budget)?;
        let outcome = match r.outcome {
            SearchOutcome::NoMap => Outcome::Frozen,
            SearchOutcome::Found(f) => Outcome::Refuted(f),
            SearchOutcome::BudgetExhausted => Outcome::BudgetExhausted,
        };
        Ok(Verdict {
            outcome,
            nodes_explored: r.nodes_explored,
        })
    }

    pub(crate) fn decide(&self, set: &PointSet, budget: SearchBudget) -> Result<Verdict> {
        let v = self.verify_freezing(set, budget)?;
        if v.outcome == Outcome::BudgetExhausted {
            return Err(Error::BudgetExhausted(v.nodes_explored));
        }
        Ok(v)
    }

    /// Whether a freezing set has no freezing proper subset. Single-point
    /// deletions suffice because supersets of freezing sets freeze.
    pub fn is_minimal_freezing(&self, set: &PointSet, budget: SearchBudget) -> Result<bool> {
        if !self.decide(set, budget)?.is_frozen() {
            return Err(Error::NotFreezing);
        }
        for a in set.iter() {
            let mut smaller = set.clone();
            smaller.remove(a);
            if self.decide(&smaller, budget)?.is_frozen() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Visits the continuous self-maps fixing `fixed` in lexicographic order of
    /// their image vectors. Returns the number of search nodes used.
    pub fn for_each_continuous_map(
        &self,
        fixed: &PointSet,
        budget: SearchBudget,
        mut visit: impl FnMut(&SelfMap) -> ControlFlow<()>,
    ) -> Result<u64> {
        self.check_set(fixed)?;
        let c = &self.constraints;
        let counter = Counter::new(budget.max_nodes());
        let mut domains = c.full_domains();
        for a in fixed.iter() {
            Constraints::pin(&mut domains, a, a);
        }
        if c.propagate(&mut domains, 0..self.image().len()) {
            let _ = c
                .for_each(domains, &counter, &mut visit)
                .map_err(|_| Error::BudgetExhausted(counter.nodes()))?;
        }
        Ok(counter.nodes())
    }

    /// The first `limit` continuous maps fixing `fixed`.
    pub fn enumerate_continuous_maps(&self, fixed: &PointSet, limit: usize) -> Result<MapEnumeration> {
        let mut maps = Vec::new();
        let mut truncated = false;
        self.for_each_continuous_map(fixed, SearchBudget::unlimited(), |f| {
            if maps.len() == limit {
                truncated = true;
                return ControlFlow::Break(());
            }
            maps.push(f.clone());
            ControlFlow::Continue(())
        })?;
        Ok(MapEnumeration { maps, truncated })
    }

    pub fn count_continuous_maps(&self, fixed: &PointSet, budget: SearchBudget) -> Result<u64> {
        let mut count = 0u64;
        self.for_each_continuous_map(fixed, budget, |_| {
            count += 1;
            ControlFlow::Continue(())
        })?;
        Ok(count)
    }
}

/// One-shot form of [`Oracle::verify_freezing`].
pub fn verify_freezing(image: &DigitalImage, set: &PointSet, budget: SearchBudget) -> Result<Verdict> {
    Oracle::new(image)?.verify_freezing(set, budget)
}

/// One-shot form of [`Oracle::search_nonidentity_map`].
pub fn search_nonidentity_map(image: &DigitalImage, set: &PointSet, budget: SearchBudget) -> Result<SearchResult> {
    Oracle::new(image)?.search_nonidentity_map(set, budget)
}

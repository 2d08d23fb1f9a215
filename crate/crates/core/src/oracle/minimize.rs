use itertools::Itertools;

use super::{Oracle, SearchBudget};
use crate::analysis::analyze;
use crate::error::{Error, Result};
use crate::lattice::PointSet;

/// Largest candidate pool the minimizer accepts by default.
pub const DEFAULT_MAX_POOL: usize = 20;

/// Candidate restrictions for [`Oracle::minimum_freezing_sets`].
///
/// `None` for `must_include` means `D1 ∪ T` (points every freezing set
/// contains); `None` for `must_exclude` means the articulation points when
/// they form a nonempty proper subset (they can be dropped from any freezing
/// set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizeOptions {
    pub restrict_to_boundary: bool,
    pub must_include: Option<PointSet>,
    pub must_exclude: Option<PointSet>,
    pub max_pool: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            restrict_to_boundary: false,
            must_include: None,
            must_exclude: None,
            max_pool: DEFAULT_MAX_POOL,
        }
    }
}

impl MinimizeOptions {
    pub fn boundary_only(mut self) -> Self {
        self.restrict_to_boundary = true;
        self
    }

    /// Drops the structural defaults: nothing forced in or out.
    pub fn without_theorem_pruning(mut self, capacity: usize) -> Self {
        self.must_include = Some(PointSet::empty(capacity));
        self.must_exclude = Some(PointSet::empty(capacity));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimumFreezingSets {
    /// Every freezing set of minimum cardinality within the search space, in
    /// lexicographic order of their canonical index lists.
    pub sets: Vec<PointSet>,
    pub include: PointSet,
    pub exclude: PointSet,
    pub pool: PointSet,
    pub queries: usize,
    pub nodes_explored: u64,
}

impl MinimumFreezingSets {
    pub fn cardinality(&self) -> Option<usize> {
        self.sets.first().map(PointSet::len)
    }
}

impl Oracle<'_> {
    /// All minimum-cardinality freezing sets of the form `include ∪ S` with
    /// `S` drawn from the candidate pool, by increasing `#S`.
    pub fn minimum_freezing_sets(&self, opts: &MinimizeOptions, budget: SearchBudget) -> Result<MinimumFreezingSets> {
        let image = self.image();
        let n = image.len();
        let report = analyze(image)?;
        let include = match &opts.must_include {
            Some(s) => s.clone(),
            None => report.required(),
        };
        let exclude = match &opts.must_exclude {
            Some(s) => s.clone(),
            None if !report.w.is_empty() && report.w.len() < n => report.w.clone(),
            None => PointSet::empty(n),
        };
        for s in [&include, &exclude] {
            self.check_set(s)?;
        }
        let space = if opts.restrict_to_boundary {
            report.bd.clone()
        } else {
            image.full_set()
        };
        let pool = space.difference(&exclude).difference(&include);
        if pool.len() > opts.max_pool {
            return Err(Error::CapExceeded {
                what: "minimizer candidate pool",
                cap: opts.max_pool,
                size: pool.len(),
            });
        }
        let candidates = pool.to_vec();
        let mut result = MinimumFreezingSets {
            sets: Vec::new(),
            include: include.clone(),
            exclude,
            pool,
            queries: 0,
            nodes_explored: 0,
        };
        // fixed-point sets of refuting witnesses: any subset is refuted too
        let mut refuted: Vec<PointSet> = Vec::new();
        for k in 0..=candidates.len() {
            for combo in candidates.iter().copied().combinations(k) {
                let mut set = include.clone();
                for v in combo {
                    set.insert(v);
                }
                if refuted.iter().any(|fix| set.is_subset(fix)) {
                    continue;
                }
                result.queries += 1;
                let v = self.decide(&set, budget)?;
                result.nodes_explored += v.nodes_explored;
                match v.witness() {
                    Some(f) => refuted.push(f.fixed_points()),
                    None => result.sets.push(set),
                }
            }
            if !result.sets.is_empty() {
                break;
            }
        }
        Ok(result)
    }
}

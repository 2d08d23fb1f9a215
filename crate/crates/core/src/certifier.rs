//! Freezing certificates by fixed-point propagation.
//!
//! Starting from a seed `F` of points assumed fixed by every continuous map,
//! each rule adds points that every such map must also fix. If the closure
//! is all of `X`, the seed freezes. The rules are sound but not complete: an
//! inconclusive result says nothing about whether the seed freezes.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::{format_point_list, parse_point_list, DigitalImage, PathTree, PointSet};

/// A forcing rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Two fixed points joined by a unique shortest path fix the whole path.
    UniqueShortestPath,
    /// `c_1` in the plane: a horizontal or vertical segment in `X` with
    /// fixed endpoints is fixed.
    C1AxisSegment,
    /// `c_2` in the plane: a slanted segment in `X` with fixed endpoints is
    /// fixed.
    C2SlantedSegment,
    /// An articulation point separating two fixed points is fixed.
    Articulation,
    /// Once the boundary is fixed, everything is.
    BoundaryFreezes,
}

impl Rule {
    pub const ALL: [Rule; 5] = [
        Rule::UniqueShortestPath,
        Rule::C1AxisSegment,
        Rule::C2SlantedSegment,
        Rule::Articulation,
        Rule::BoundaryFreezes,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::UniqueShortestPath => "unique-shortest-path",
            Rule::C1AxisSegment => "c1-axis-segment",
            Rule::C2SlantedSegment => "c2-slanted-segment",
            Rule::Articulation => "articulation",
            Rule::BoundaryFreezes => "boundary-freezes",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::Syntax(format!("unknown rule {s:?}")))
    }
}

/// Default schedule: cheap geometric rules first, the boundary rule last.
pub const DEFAULT_RULE_ORDER: [Rule; 5] = [
    Rule::C1AxisSegment,
    Rule::C2SlantedSegment,
    Rule::UniqueShortestPath,
    Rule::Articulation,
    Rule::BoundaryFreezes,
];

/// One rule application. Indices refer to the canonical point order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub premises: Vec<usize>,
    pub forced: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropagationTrace {
    pub steps: Vec<Step>,
}

impl PropagationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Rules used, deduplicated, in order of first use.
    pub fn rules_used(&self) -> Vec<Rule> {
        let mut out: Vec<Rule> = Vec::new();
        for s in &self.steps {
            if !out.contains(&s.rule) {
                out.push(s.rule);
            }
        }
        out
    }

    /// One line per step: `rule-id <premises> -> <forced>`, with point lists
    /// in `(x,y);(x,y)` syntax.
    pub fn to_text(&self, image: &DigitalImage) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let pts = |v: &[usize]| format_point_list(v.iter().map(|&i| image.point(i)));
            out.push_str(&format!("{} {} -> {}\n", s.rule, pts(&s.premises), pts(&s.forced)));
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text). Blank lines and lines starting
    /// with `#` are skipped. Points must belong to `image`.
    pub fn parse(text: &str, image: &DigitalImage) -> Result<Self> {
        let mut steps = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Syntax(format!("line {}: expected `rule premises -> forced`", lineno + 1));
            let (rule, rest) = line.split_once(char::is_whitespace).ok_or_else(bad)?;
            let (premises, forced) = rest.split_once("->").ok_or_else(bad)?;
            let indices = |s: &str| -> Result<Vec<usize>> {
                parse_point_list(s)?.iter().map(|p| image.require(p)).collect()
            };
            steps.push(Step {
                rule: rule.parse()?,
                premises: indices(premises)?,
                forced: indices(forced)?,
            });
        }
        Ok(Self { steps })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Certified { trace: PropagationTrace },
    Inconclusive { closure: PointSet, trace: PropagationTrace },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified { .. })
    }

    pub fn trace(&self) -> &PropagationTrace {
        match self {
            Certificate::Certified { trace } | Certificate::Inconclusive { trace, .. } => trace,
        }
    }
}

/// Closure engine with per-image caches (path trees, articulation
/// components, boundary).
pub struct Propagator<'a> {
    image: &'a DigitalImage,
    rules: Vec<Rule>,
    trees: Vec<Option<PathTree>>,
    /// For each articulation point, component labels of `X \ {x0}`.
    cuts: Vec<(usize, Vec<Option<usize>>)>,
    boundary: PointSet,
}

impl<'a> Propagator<'a> {
    pub fn new(image: &'a DigitalImage) -> Result<Self> {
        Self::with_rule_order(image, &DEFAULT_RULE_ORDER)
    }

    /// A propagator trying rules in the given order; rules left out are
    /// never applied.
    pub fn with_rule_order(image: &'a DigitalImage, rules: &[Rule]) -> Result<Self> {
        let cuts = image
            .articulation_points()?
            .iter()
            .map(|x0| {
                let removed = PointSet::from_indices(image.len(), [x0]);
                (x0, image.component_labels(&removed).0)
            })
            .collect();
        Ok(Self {
            image,
            rules: rules.to_vec(),
            trees: vec![None; image.len()],
            cuts,
            boundary: image.boundary(),
        })
    }

    pub fn image(&self) -> &'a DigitalImage {
        self.image
    }

    /// Least set containing `seed` closed under the enabled rules, with the
    /// steps that built it.
    pub fn propagate(&mut self, seed: &PointSet) -> Result<(PointSet, PropagationTrace)> {
        let n = self.image.len();
        if seed.capacity() != n {
            return Err(Error::MapSize {
                expected: n,
                found: seed.capacity(),
            });
        }
        let mut closed = seed.clone();
        let mut trace = PropagationTrace::default();
        // pairs already examined per pair rule; their verdicts never change
        let mut examined: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n * n); Rule::ALL.len()];
        loop {
            let mut step = None;
            for k in 0..self.rules.len() {
                let rule = self.rules[k];
                step = match rule {
                    Rule::Articulation => self.articulation_step(&closed),
                    Rule::BoundaryFreezes => self.boundary_step(&closed),
                    _ => self.pair_step(rule, &closed, &mut examined[rule as usize]),
                };
                if step.is_some() {
                    break;
                }
            }
            let Some(step) = step else { break };
            for &v in &step.forced {
                closed.insert(v);
            }
            trace.steps.push(step);
        }
        Ok((closed, trace))
    }

    fn pair_step(&mut self, rule: Rule, closed: &PointSet, examined: &mut FixedBitSet) -> Option<Step> {
        let n = self.image.len();
        let members = closed.to_vec();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if examined.put(a * n + b) {
                    continue;
                }
                let path = match rule {
                    Rule::UniqueShortestPath => self.unique_path(a, b),
                    Rule::C1AxisSegment => segment_between(self.image, a, b, 1),
                    Rule::C2SlantedSegment => segment_between(self.image, a, b, 2),
                    _ => unreachable!(),
                };
                let forced: Vec<usize> = path.into_iter().flatten().filter(|&v| !closed.contains(v)).collect();
                if !forced.is_empty() {
                    return Some(Step {
                        rule,
                        premises: vec![a, b],
                        forced: sorted(forced),
                    });
                }
            }
        }
        None
    }

    fn unique_path(&mut self, a: usize, b: usize) -> Option<Vec<usize>> {
        let image = self.image;
        self.trees[a].get_or_insert_with(|| PathTree::new(image, a)).unique_path(b)
    }

    fn articulation_step(&self, closed: &PointSet) -> Option<Step> {
        for (x0, labels) in &self.cuts {
            if closed.contains(*x0) {
                continue;
            }
            let mut first: Option<(usize, usize)> = None;
            for v in closed.iter() {
                let Some(l) = labels[v] else { continue };
                match first {
                    None => first = Some((v, l)),
                    Some((w, l0)) if l0 != l => {
                        return Some(Step {
                            rule: Rule::Articulation,
                            premises: vec![w, v],
                            forced: vec![*x0],
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        None
    }

    fn boundary_step(&self, closed: &PointSet) -> Option<Step> {
        if closed.len() == self.image.len() || !self.boundary.is_subset(closed) {
            return None;
        }
        Some(Step {
            rule: Rule::BoundaryFreezes,
            premises: self.boundary.to_vec(),
            forced: closed.complement().to_vec(),
        })
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// The planar digital segment from `a` to `b`, if it lies in `X` and has the
/// shape the given adjacency's segment rule covers (axis-parallel for `c_1`,
/// slope ±1 for `c_2`). Requires `n = 2` and matching adjacency.
fn segment_between(image: &DigitalImage, a: usize, b: usize, u: usize) -> Option<Vec<usize>> {
    if image.dim() != 2 || image.adjacency() != u {
        return None;
    }
    let (p, q) = (image.point(a), image.point(b));
    let dx = q.coord(0) - p.coord(0);
    let dy = q.coord(1) - p.coord(1);
    let shape_ok = match u {
        1 => (dx == 0) != (dy == 0),
        _ => dx != 0 && dx.abs() == dy.abs(),
    };
    if !shape_ok {
        return None;
    }
    let steps = dx.abs().max(dy.abs());
    (0..=steps)
        .map(|k| {
            let pt = crate::lattice::Point::from([p.coord(0) + dx.signum() * k, p.coord(1) + dy.signum() * k]);
            image.index_of(&pt)
        })
        .collect()
}

/// Closure of `seed` under the default rules.
pub fn propagate_fixed(image: &DigitalImage, seed: &PointSet) -> Result<(PointSet, PropagationTrace)> {
    image.require_connected()?;
    Propagator::new(image)?.propagate(seed)
}

/// Certified iff the closure of `a` is all of `X`.
pub fn certify_freezing(image: &DigitalImage, a: &PointSet) -> Result<Certificate> {
    let (closure, trace) = propagate_fixed(image, a)?;
    Ok(if closure.len() == image.len() {
        Certificate::Certified { trace }
    } else {
        Certificate::Inconclusive { closure, trace }
    })
}

/// Why a replayed step was rejected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step}: {reason}")]
pub struct ReplayError {
    pub step: usize,
    pub reason: String,
}

/// Replays `trace` from `seed`, revalidating every premise from scratch
/// without the propagator's caches. Returns the final set.
pub fn replay_trace(
    image: &DigitalImage,
    seed: &PointSet,
    trace: &PropagationTrace,
) -> std::result::Result<PointSet, ReplayError> {
    let n = image.len();
    let fail = |step: usize, reason: &str| ReplayError {
        step,
        reason: reason.to_string(),
    };
    if seed.capacity() != n {
        return Err(fail(0, "seed does not match image"));
    }
    let mut closed = seed.clone();
    for (k, s) in trace.steps.iter().enumerate() {
        if s.premises.iter().chain(&s.forced).any(|&v| v >= n) {
            return Err(fail(k, "point index out of range"));
        }
        if !s.premises.iter().all(|&v| closed.contains(v)) {
            return Err(fail(k, "premise not yet fixed"));
        }
        if s.forced.is_empty() || s.forced.iter().any(|&v| closed.contains(v)) {
            return Err(fail(k, "forced points must be new"));
        }
        if s.forced.windows(2).any(|w| w[0] >= w[1]) {
            return Err(fail(k, "forced points not sorted and distinct"));
        }
        let expected: Vec<usize> = match s.rule {
            Rule::UniqueShortestPath | Rule::C1AxisSegment | Rule::C2SlantedSegment => {
                let [a, b] = s.premises[..] else {
                    return Err(fail(k, "pair rule needs two premises"));
                };
                let path = match s.rule {
                    Rule::UniqueShortestPath => image
                        .path_info(a, b)
                        .filter(|info| info.shortest_path_count == 1)
                        .and_then(|info| info.unique_path),
                    Rule::C1AxisSegment => segment_between(image, a, b, 1),
                    _ => segment_between(image, a, b, 2),
                };
                let Some(path) = path else {
                    return Err(fail(k, "premise does not hold"));
                };
                sorted(path.into_iter().filter(|&v| !closed.contains(v)).collect())
            }
            Rule::Articulation => {
                let ([a, b], [x0]) = (&s.premises[..], &s.forced[..]) else {
                    return Err(fail(k, "articulation needs two premises and one forced point"));
                };
                let removed = PointSet::from_indices(n, [*x0]);
                let (labels, count) = image.component_labels(&removed);
                if count < 2 || labels[*a].is_none() || labels[*a] == labels[*b] {
                    return Err(fail(k, "premises not separated by the forced point"));
                }
                vec![*x0]
            }
            Rule::BoundaryFreezes => {
                let bd = image.boundary();
                if s.premises != bd.to_vec() {
                    return Err(fail(k, "premises are not the boundary"));
                }
                closed.complement().to_vec()
            }
        };
        if expected != s.forced {
            return Err(fail(k, "forced points differ from what the rule yields"));
        }
        for &v in &s.forced {
            closed.insert(v);
        }
    }
    Ok(closed)
}

/// Whether `trace` replays cleanly from `seed` to all of `X`.
pub fn recheck_trace(image: &DigitalImage, seed: &PointSet, trace: &PropagationTrace) -> bool {
    matches!(replay_trace(image, seed, trace), Ok(closed) if closed.len() == image.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, points, KITE_FREEZING};
    use crate::lattice::Point;

    fn set(image: &DigitalImage, pts: &[(i64, i64)]) -> PointSet {
        image.point_set(&points(pts)).unwrap()
    }

    #[test]
    fn kite_certified() {
        let kite = fixtures::kite();
        let a = set(&kite, &KITE_FREEZING);
        let cert = certify_freezing(&kite, &a).unwrap();
        assert!(cert.is_certified());
        let trace = cert.trace();
        assert!(recheck_trace(&kite, &a, trace));
        let (closed, t) = propagate_fixed(&kite, &a).unwrap();
        assert_eq!(closed, kite.full_set());
        assert_eq!(&t, trace);
        // (2,1), (4,1), (3,2) all come from path rules
        let idx = |p: (i64, i64)| kite.index_of(&Point::from([p.0, p.1])).unwrap();
        for p in [(2, 1), (4, 1), (3, 2)] {
            let s = trace.steps.iter().find(|s| s.forced.contains(&idx(p))).unwrap();
            assert!(matches!(s.rule, Rule::UniqueShortestPath | Rule::C2SlantedSegment), "{p:?}");
        }
    }

    #[test]
    fn kite_needs_boundary_rule() {
        let kite = fixtures::kite();
        let a = set(&kite, &KITE_FREEZING);
        let four = &DEFAULT_RULE_ORDER[..4];
        let (closed, _) = Propagator::with_rule_order(&kite, four).unwrap().propagate(&a).unwrap();
        assert_eq!(closed.complement(), set(&kite, &[(3, 1), (4, 2)]));
    }

    #[test]
    fn kite_single_point_inconclusive() {
        let kite = fixtures::kite();
        let cert = certify_freezing(&kite, &set(&kite, &[(0, 1)])).unwrap();
        assert!(!cert.is_certified());
    }

    #[test]
    fn slanted_segment_under_c1_not_forced() {
        let x = fixtures::staircase();
        let (closed, trace) = propagate_fixed(&x, &set(&x, &[(0, 2), (2, 0)])).unwrap();
        // the degree-1 ends pin their cut neighbors, nothing more
        assert_eq!(closed, set(&x, &[(0, 1), (0, 2), (1, 0), (2, 0)]));
        assert!(trace.steps.iter().all(|s| s.rule == Rule::Articulation));
    }

    #[test]
    fn axis_segment_under_c2_not_forced() {
        let sq = fixtures::square(2);
        let (closed, _) = propagate_fixed(&sq, &set(&sq, &[(0, 0), (2, 0)])).unwrap();
        assert_eq!(closed, set(&sq, &[(0, 0), (2, 0)]));
    }

    #[test]
    fn axis_segment_under_c1_forced() {
        let sq = fixtures::square(1);
        let (closed, trace) = propagate_fixed(&sq, &set(&sq, &[(0, 0), (0, 2)])).unwrap();
        assert_eq!(closed, set(&sq, &[(0, 0), (0, 1), (0, 2)]));
        assert_eq!(trace.steps[0].rule, Rule::C1AxisSegment);
    }

    #[test]
    fn whole_image_gives_empty_trace() {
        let kite = fixtures::kite();
        let cert = certify_freezing(&kite, &kite.full_set()).unwrap();
        assert_eq!(cert, Certificate::Certified { trace: PropagationTrace::default() });
        assert!(recheck_trace(&kite, &kite.full_set(), &PropagationTrace::default()));
    }

    #[test]
    fn fabricated_path_step_rejected() {
        let kite = fixtures::kite();
        let seed = set(&kite, &[(3, 0), (3, 2)]);
        let idx = |p: (i64, i64)| kite.index_of(&Point::from([p.0, p.1])).unwrap();
        // (3,0) to (3,2) has two shortest paths
        let trace = PropagationTrace {
            steps: vec![Step {
                rule: Rule::UniqueShortestPath,
                premises: vec![idx((3, 0)), idx((3, 2))],
                forced: vec![idx((3, 1))],
            }],
        };
        assert!(replay_trace(&kite, &seed, &trace).is_err());
        assert!(!recheck_trace(&kite, &seed, &trace));
    }

    #[test]
    fn incomplete_trace_fails_recheck() {
        let kite = fixtures::kite();
        let a = set(&kite, &KITE_FREEZING);
        let mut trace = certify_freezing(&kite, &a).unwrap().trace().clone();
        trace.steps.pop();
        assert!(replay_trace(&kite, &a, &trace).is_ok());
        assert!(!recheck_trace(&kite, &a, &trace));
    }

    #[test]
    fn articulation_rule() {
        // path (0,0)-(1,0)-(2,0): the middle separates the ends
        let x = DigitalImage::planar(1, &[(0, 0), (1, 0), (2, 0)]).unwrap();
        let ends = set(&x, &[(0, 0), (2, 0)]);
        let (closed, trace) = Propagator::with_rule_order(&x, &[Rule::Articulation])
            .unwrap()
            .propagate(&ends)
            .unwrap();
        assert_eq!(closed, x.full_set());
        assert_eq!(trace.steps[0].rule, Rule::Articulation);
        assert!(recheck_trace(&x, &ends, &trace));
    }

    #[test]
    fn text_round_trip() {
        let kite = fixtures::kite();
        let a = set(&kite, &KITE_FREEZING);
        let trace = certify_freezing(&kite, &a).unwrap().trace().clone();
        let text = trace.to_text(&kite);
        assert_eq!(text.lines().count(), trace.len());
        assert_eq!(PropagationTrace::parse(&text, &kite).unwrap(), trace);
        assert!(PropagationTrace::parse("bogus (0,1) -> (1,2)", &kite).is_err());
        assert!(PropagationTrace::parse("articulation (0,1)", &kite).is_err());
        assert!(PropagationTrace::parse("articulation (9,9) -> (1,2)", &kite).is_err());
    }

    #[test]
    fn rejects_disconnected() {
        let x = DigitalImage::planar(1, &[(0, 0), (5, 5)]).unwrap();
        assert_eq!(certify_freezing(&x, &x.full_set()), Err(Error::Disconnected));
    }
}

//! The boundary of 𝓔 as the union of the 18 regions 𝓔(u) = 𝓔 ∩ (𝓔 + u),
//! and the graph-directed IFS that generates it.

pub mod classify;
pub mod cloud;
pub mod graph;
pub mod ifs;
pub mod relations;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::automaton::{build_automaton, Automaton};
use crate::exclusion::compute_bound_constants;
use crate::expansions::EventuallyPeriodicWord;
use crate::quartic::{embed, EmbeddedPoint, RootData, ZAlpha};

pub use classify::{classify, ClassifyError};
pub use cloud::{directed_hausdorff, hausdorff, PointCloud};
pub use graph::{PairGraph, PairState, TailGeometry};
pub use ifs::{ifs_maps, iterate_graph_ifs, AffineMap, GraphIfs, H12Reading, IfsMaps, Source};
pub use relations::{verify_relation, Relation, RelationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("{0} is not one of the 18 neighbours")]
    NotANeighbor(ZAlpha),
}

/// A translate u with 𝓔 ∩ (𝓔 + u) nonempty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeighborId(pub ZAlpha);

impl fmt::Display for NeighborId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn powers(terms: &[i64]) -> ZAlpha {
    terms
        .iter()
        .fold(ZAlpha::ZERO, |acc, &k| acc + ZAlpha::alpha_pow(k))
}

/// 1, 1+α, 1+α², 1+α+α², α⁻³+α⁻²+1+α³, α, α+α², α², α⁻²+α⁻¹+α.
pub fn positive_neighbors() -> [NeighborId; 9] {
    [
        &[0][..],
        &[0, 1],
        &[0, 2],
        &[0, 1, 2],
        &[-3, -2, 0, 3],
        &[1],
        &[1, 2],
        &[2],
        &[-2, -1, 1],
    ]
    .map(|t| NeighborId(powers(t)))
}

/// The nine values above followed by their negatives.
pub fn neighbor_set() -> Vec<NeighborId> {
    let pos = positive_neighbors();
    pos.iter()
        .copied()
        .chain(pos.iter().map(|u| NeighborId(-u.0)))
        .collect()
}

pub fn check_neighbor(u: &ZAlpha) -> Result<NeighborId, BoundaryError> {
    neighbor_set()
        .into_iter()
        .find(|n| n.0 == *u)
        .ok_or(BoundaryError::NotANeighbor(*u))
}

/// The point of 𝓔(u) when that region is a single point, else `None`.
pub fn singleton_value(
    u: &ZAlpha,
    roots: &RootData,
) -> Result<Option<EmbeddedPoint>, BoundaryError> {
    check_neighbor(u)?;
    let a = |k: i32| roots.alpha_pow(k);
    let one = EmbeddedPoint::new(1.0, 1.0, 0.0);
    let forms = [
        (powers(&[0, 2]), a(4).div(&(one - a(2)))),
        (powers(&[-2, -1, 1]), (a(5) + a(6)).div(&(one - a(4)))),
        (powers(&[-3, -2, 0, 3]), (a(4) + a(5)).div(&(one - a(4)))),
    ];
    for (v, p) in forms {
        if v == *u {
            return Ok(Some(p));
        }
        // 𝓔(−v) = 𝓔(v) − v
        if -v == *u {
            return Ok(Some(p - embed(&v, roots)));
        }
    }
    Ok(None)
}

/// Pair graph with its tail geometry, built once per automaton.
pub struct BoundaryContext<'r> {
    pub roots: &'r RootData,
    pub graph: PairGraph,
    pub tails: TailGeometry,
}

impl<'r> BoundaryContext<'r> {
    pub fn new(aut: &Automaton, roots: &'r RootData) -> Self {
        let graph = PairGraph::new(aut);
        let tails = TailGeometry::new(&graph, roots);
        BoundaryContext {
            roots,
            graph,
            tails,
        }
    }

    pub fn standard() -> &'static BoundaryContext<'static> {
        static CTX: OnceLock<BoundaryContext<'static>> = OnceLock::new();
        CTX.get_or_init(|| BoundaryContext::new(&build_automaton(), RootData::standard()))
    }

    /// Distinct (node, left digits ε_4..ε_{3+depth}) after `depth` steps from
    /// the start node of u. Digit ε_{4+j} is bit j.
    fn frontier(&self, u: &ZAlpha, depth: usize) -> Vec<(usize, u64)> {
        assert!(depth < 64);
        let Some(start) = self.graph.start_for(u) else {
            return Vec::new();
        };
        let mut front = vec![(start, 0u64)];
        for j in 0..depth {
            let mut next = Vec::with_capacity(front.len() * 2);
            for &(q, w) in &front {
                for &(l, t) in self.graph.successors(q) {
                    next.push((t, w | (u64::from(l.a) << j)));
                }
            }
            next.sort_unstable();
            next.dedup();
            front = next;
        }
        front
    }

    /// Points Σ_{i=4}^{3+depth} ε_i α^i + α^{3+depth}·rep over all paths of
    /// `depth` steps. Empty when u is not a neighbour.
    pub fn piece(&self, u: &ZAlpha, depth: usize) -> PointCloud {
        let front = self.frontier(u, depth);
        let pw: Vec<EmbeddedPoint> = (0..=depth as i32 + 4)
            .map(|k| self.roots.alpha_pow(k))
            .collect();
        let n = 3 + depth;
        let (m2, m3) = self.roots.moduli();
        let (s2, s3) = (m2.powi(n as i32), m3.powi(n as i32));
        let mut radius = (0.0f64, 0.0f64);
        let mut points = Vec::with_capacity(front.len());
        for &(q, w) in &front {
            let mut p = pw[n].mul(&self.tails.rep[q]);
            for j in 0..depth {
                if w >> j & 1 == 1 {
                    p = p + pw[4 + j];
                }
            }
            points.push(p);
            radius.0 = radius.0.max(s2 * self.tails.radius[q].0);
            radius.1 = radius.1.max(s3 * self.tails.radius[q].1);
        }
        // two paths with the same left digits but different ends give
        // nearby, usually distinct, points; exact repeats are dropped
        points.sort_by(|a, b| a.coords().partial_cmp(&b.coords()).expect("finite"));
        points.dedup();
        PointCloud::new(points, radius, depth)
    }

    /// Whether Σ_{i≥4} ε_i α^i lies in 𝓔(u), decided on the pair graph.
    pub fn piece_contains(&self, u: &ZAlpha, eps: &EventuallyPeriodicWord) -> bool {
        assert!(
            eps.is_zero() || eps.start() >= 4,
            "word must start at index 4 or later"
        );
        let Some(start) = self.graph.start_for(u) else {
            return false;
        };
        let n0 = eps.period_start().max(4);
        let p = eps.period().len() as i64;
        let mut cur: BTreeSet<usize> = BTreeSet::from([start]);
        let mut seen: BTreeSet<(Vec<usize>, i64)> = BTreeSet::new();
        let mut i = 4;
        loop {
            if i >= n0 && !seen.insert((cur.iter().copied().collect(), (i - n0) % p)) {
                return true;
            }
            let d = eps.digit(i);
            cur = cur
                .iter()
                .flat_map(|&q| {
                    self.graph
                        .successors(q)
                        .iter()
                        .filter(|(l, _)| l.a == d)
                        .map(|&(_, t)| t)
                })
                .collect();
            if cur.is_empty() {
                return false;
            }
            i += 1;
        }
    }
}

/// Cloud of 𝓔(u) from paths of `depth` steps.
pub fn boundary_piece(
    u: &NeighborId,
    depth: usize,
    aut: &Automaton,
    roots: &RootData,
) -> PointCloud {
    BoundaryContext::new(aut, roots).piece(&u.0, depth)
}

/// Cloud of 𝓔 = {Σ_{i≥4} ε_i α^i} from all admissible ε_4..ε_{3+depth}, tails
/// replaced by 0.
pub fn tile_cloud(depth: usize, roots: &RootData) -> PointCloud {
    let k = compute_bound_constants(roots);
    let (m2, m3) = roots.moduli();
    let pw: Vec<EmbeddedPoint> = (0..depth as i32).map(|j| roots.alpha_pow(4 + j)).collect();
    let mut points = Vec::new();
    // (partial sum, trailing ones, digits placed)
    let mut stack = vec![(EmbeddedPoint::ORIGIN, 0u8, 0usize)];
    while let Some((p, run, j)) = stack.pop() {
        if j == depth {
            points.push(p);
            continue;
        }
        stack.push((p, 0, j + 1));
        if run < 3 {
            stack.push((p + pw[j], run + 1, j + 1));
        }
    }
    let radius = (
        k.a.hi() * m2.powi(depth as i32),
        k.b.hi() * m3.powi(depth as i32),
    );
    PointCloud::new(points, radius, depth)
}

//! The automaton run jointly with the two no-1111 constraints.
//!
//! A node is an accumulator value together with the number of trailing ones
//! on each track. Only nodes with an infinite continuation are kept, so every
//! finite path extends to a pair of admissible sequences with equal value.

use std::collections::HashMap;

use crate::automaton::{step, Automaton, DigitPair, State};
use crate::quartic::{EmbeddedPoint, RootData, ZAlpha};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairState {
    pub acc: State,
    pub run_left: u8,
    pub run_right: u8,
}

#[derive(Clone, Debug)]
pub struct PairGraph {
    nodes: Vec<PairState>,
    index: HashMap<PairState, usize>,
    succ: Vec<Vec<(DigitPair, usize)>>,
}

impl PairGraph {
    pub fn new(aut: &Automaton) -> Self {
        let mut all = Vec::new();
        for &s in aut.states() {
            for run_left in 0..4 {
                for run_right in 0..4 {
                    all.push(PairState {
                        acc: s,
                        run_left,
                        run_right,
                    });
                }
            }
        }
        let next = |q: &PairState| -> Vec<(DigitPair, PairState)> {
            DigitPair::ALL
                .into_iter()
                .filter(|l| !(l.a == 1 && q.run_left == 3) && !(l.b == 1 && q.run_right == 3))
                .filter_map(|l| {
                    let t = step(&q.acc.0, l);
                    aut.contains(&t).then(|| {
                        let run = |r: u8, d: u8| if d == 1 { r + 1 } else { 0 };
                        (
                            l,
                            PairState {
                                acc: State(t),
                                run_left: run(q.run_left, l.a),
                                run_right: run(q.run_right, l.b),
                            },
                        )
                    })
                })
                .collect()
        };
        let mut alive: std::collections::HashSet<PairState> = all.iter().copied().collect();
        loop {
            let dead: Vec<PairState> = alive
                .iter()
                .filter(|q| !next(q).iter().any(|(_, t)| alive.contains(t)))
                .copied()
                .collect();
            if dead.is_empty() {
                break;
            }
            for q in dead {
                alive.remove(&q);
            }
        }
        let mut nodes: Vec<PairState> = alive.into_iter().collect();
        nodes.sort();
        let index: HashMap<PairState, usize> =
            nodes.iter().enumerate().map(|(i, q)| (*q, i)).collect();
        let succ = nodes
            .iter()
            .map(|q| {
                next(q)
                    .into_iter()
                    .filter_map(|(l, t)| index.get(&t).map(|&j| (l, j)))
                    .collect()
            })
            .collect();
        PairGraph { nodes, index, succ }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> PairState {
        self.nodes[i]
    }

    pub fn find(&self, q: &PairState) -> Option<usize> {
        self.index.get(q).copied()
    }

    /// The node (A_3, 0, 0) with A_3 = −u: paths from it are the pairs with
    /// Σ_{i≥4} ε_i α^i − Σ_{i≥4} ε'_i α^i = u.
    pub fn start_for(&self, u: &ZAlpha) -> Option<usize> {
        self.find(&PairState {
            acc: State(-*u),
            run_left: 0,
            run_right: 0,
        })
    }

    pub fn successors(&self, i: usize) -> &[(DigitPair, usize)] {
        &self.succ[i]
    }
}

/// For each node q, a point of K(q) = {Σ_{i≥1} ε_i α^i over infinite paths
/// from q} and a bound on the distance from that point to all of K(q), per
/// coordinate.
#[derive(Clone, Debug)]
pub struct TailGeometry {
    pub rep: Vec<EmbeddedPoint>,
    /// (bound in the β₂ coordinate, bound on the β₃ modulus).
    pub radius: Vec<(f64, f64)>,
}

impl TailGeometry {
    pub fn new(g: &PairGraph, roots: &RootData) -> Self {
        let alpha = roots.alpha_pow(1);
        let (m2, m3) = roots.moduli();
        let n = g.len();
        // K(q) = ⋃ α(a + K(q')), with a the left digit of the edge q → q'.
        let lift = |a: u8, p: &EmbeddedPoint| {
            alpha.mul(&(*p + EmbeddedPoint::new(a as f64, a as f64, 0.0)))
        };
        let mut rep = vec![EmbeddedPoint::ORIGIN; n];
        for _ in 0..400 {
            rep = (0..n)
                .map(|q| {
                    let (l, t) = g.successors(q)[0];
                    lift(l.a, &rep[t])
                })
                .collect();
        }
        // Any two points of {Σ_{i≥1} ε_i α^i} are this close per coordinate.
        let start = (m2 / (1.0 - m2), m3 / (1.0 - m3));
        let mut radius = vec![start; n];
        for _ in 0..400 {
            radius = (0..n)
                .map(|q| {
                    let mut r = (0.0f64, 0.0f64);
                    for &(l, t) in g.successors(q) {
                        let d = lift(l.a, &rep[t]) - rep[q];
                        r.0 = r.0.max(d.r.abs() + m2 * radius[t].0);
                        r.1 = r.1.max(d.z.norm() + m3 * radius[t].1);
                    }
                    r
                })
                .collect();
        }
        // rounding slack on the fixed points
        let radius = radius
            .into_iter()
            .map(|(a, b)| (a + 1e-12, b + 1e-12))
            .collect();
        TailGeometry { rep, radius }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::build_automaton;

    #[test]
    fn viable_part_has_488_nodes() {
        let g = PairGraph::new(&build_automaton());
        assert_eq!(g.len(), 488);
        for i in 0..g.len() {
            assert!(!g.successors(i).is_empty());
        }
        assert!(g.start_for(&ZAlpha::ZERO).is_some());
    }

    #[test]
    fn reps_follow_their_paths() {
        let roots = RootData::standard();
        let g = PairGraph::new(&build_automaton());
        let t = TailGeometry::new(&g, roots);
        for q in 0..g.len() {
            // radius covers every one-step refinement
            for &(l, s) in g.successors(q) {
                let child = roots
                    .alpha_pow(1)
                    .mul(&(t.rep[s] + EmbeddedPoint::new(l.a as f64, l.a as f64, 0.0)));
                let d = child - t.rep[q];
                assert!(d.r.abs() <= t.radius[q].0 + 1e-9);
                assert!(d.z.norm() <= t.radius[q].1 + 1e-9);
            }
        }
    }
}

//! Which region 𝓔(u) a boundary point falls in, read off from two of its
//! expansions: z = Σ_{i≥4} ε_i α^i = Σ_{i≥l} ε'_i α^i with l < 4 and ε'_l = 1.

use thiserror::Error;

use crate::automaton::{build_automaton, check_equal, DigitPair, PairWord};
use crate::expansions::EventuallyPeriodicWord;
use crate::quartic::ZAlpha;

use super::NeighborId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("left word must start at index 4 or later, right word before 4")]
    BadShape,
    #[error("the two expansions have different values")]
    NotEqual,
    #[error("no boundary pair starts at index {0}")]
    Contradiction(i64),
    #[error("the pair does not follow the path forced by the automaton after index {0}")]
    UnexpectedPath(i64),
}

fn u(terms: &[(i64, i64)]) -> ZAlpha {
    terms.iter().fold(ZAlpha::ZERO, |acc, &(c, k)| {
        acc + ZAlpha::alpha_pow(k).try_scale(c).expect("small")
    })
}

/// Whether labels from index `from` on match `head` and then repeat `period`.
fn follows(p: &PairWord, from: i64, head: &[DigitPair], period: &[DigitPair]) -> bool {
    let (n0, lcm) = p.periodic_from();
    let last = n0.max(from + head.len() as i64) + lcm + period.len() as i64;
    (from..=last).all(|i| {
        let j = (i - from) as usize;
        let want = if j < head.len() {
            head[j]
        } else {
            period[(j - head.len()) % period.len()]
        };
        p.label(i) == want
    })
}

fn w() -> [DigitPair; 4] {
    let d = DigitPair::new;
    [d(0, 1), d(1, 0), d(1, 0), d(0, 1)]
}

/// Region of the point carried by `p`, where `p.left` is ε (from index 4)
/// and `p.right` is ε' (from l < 4).
pub fn classify(p: &PairWord) -> Result<NeighborId, ClassifyError> {
    let (eps, epsp) = (&p.left, &p.right);
    if (!eps.is_zero() && eps.start() < 4) || epsp.is_zero() || epsp.start() >= 4 {
        return Err(ClassifyError::BadShape);
    }
    if !check_equal(p, &build_automaton()) {
        return Err(ClassifyError::NotEqual);
    }
    let l = epsp.start();
    let e = |i: i64| epsp.digit(i) as i64;
    let d = DigitPair::new;
    let region = match l {
        l if l < -3 => return Err(ClassifyError::Contradiction(l)),
        -3 => u(&[(1, -3), (1, -2), (1, 0), (1, 3)]),
        -2 => u(&[(1, -2), (1, -1), (1, 1)]),
        -1 => {
            // ε' starts with 1 1 0 1 0 over indices −1..3, then a w w w …
            let forced = [d(0, 1), d(0, 1), d(0, 0), d(0, 1), d(0, 0)];
            let prefix_ok = forced
                .iter()
                .enumerate()
                .all(|(j, &x)| p.label(j as i64 - 1) == x);
            let a = p.label(4);
            if !prefix_ok || !(a == d(1, 1) || a == d(0, 0)) || !follows(p, 5, &[], &w()) {
                return Err(ClassifyError::UnexpectedPath(-1));
            }
            if a == d(1, 1) {
                u(&[(-1, 1), (-1, 2)])
            } else {
                u(&[(-1, 0), (-2, 1), (-1, 2)])
            }
        }
        _ => match (e(3), e(4), e(5)) {
            (0, _, _) => u(&[(e(0), 0), (e(1), 1), (e(2), 2)]),
            (1, 0, _) => u(&[(e(0) - 1, 0), (e(1) - 1, 1), (e(2) - 1, 2)]),
            (1, 1, 0) if e(0) == 0 => u(&[(e(1) - 1, 1), (e(2) - 1, 2)]),
            (1, 1, 0) => {
                let head = [d(0, 1), d(0, 1), d(0, 0), d(0, 1), d(1, 1), d(0, 0)];
                if !follows(p, 0, &head, &w()) {
                    return Err(ClassifyError::UnexpectedPath(0));
                }
                u(&[(-1, -2), (-1, -1), (-1, 1)])
            }
            _ => {
                // ε'_3 = ε'_4 = ε'_5 = 1
                if e(0) + e(1) == 0 {
                    u(&[(-1, 2)])
                } else {
                    return Err(ClassifyError::Contradiction(l));
                }
            }
        },
    };
    Ok(NeighborId(region))
}

/// Shorthand for building a boundary pair from two word specifications.
pub fn boundary_pair(
    left: (i64, &str, &str),
    right: (i64, &str, &str),
) -> Result<PairWord, Box<dyn std::error::Error>> {
    let a = EventuallyPeriodicWord::parse(left.0, left.1, left.2)?;
    let b = EventuallyPeriodicWord::parse(right.0, right.1, right.2)?;
    Ok(PairWord::new(a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::graph::PairGraph;
    use crate::boundary::{check_neighbor, BoundaryContext};
    use crate::quartic::ZAlpha;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cycle_identity_lands_in_the_exceptional_region() {
        // Σ_{i≥1}(α^{4i}+α^{4i+1}) = α⁻³+α⁻²+1+α³ + Σ_{i≥1}(α^{4i+2}+α^{4i+3})
        let p = boundary_pair((4, "", "1100"), (-3, "1101001", "0011")).unwrap();
        assert_eq!(classify(&p).unwrap().0, ZAlpha::new(1, 2, 1, 0));
    }

    #[test]
    fn l_zero_with_eps3_zero() {
        // Σ_{i≥1} α^{4i} = 1 + Σ_{i≥1} α^{4i+1}
        let p = boundary_pair((4, "", "1000"), (0, "10000", "1000")).unwrap();
        assert_eq!(classify(&p).unwrap().0, ZAlpha::ONE);
    }

    #[test]
    fn rejects_bad_input() {
        let p = boundary_pair((4, "", "1000"), (0, "1", "0")).unwrap();
        assert_eq!(classify(&p), Err(ClassifyError::NotEqual));
        let p = boundary_pair((0, "10000", "1000"), (4, "", "1000")).unwrap();
        assert_eq!(classify(&p), Err(ClassifyError::BadShape));
    }

    /// Random eventually periodic boundary pairs: walk the pair graph from
    /// A = 0 starting at index l, with ε silent below index 4 and ε'_l = 1,
    /// until a node repeats at the same index residue.
    fn random_pair(g: &PairGraph, rng: &mut ChaCha8Rng) -> Option<PairWord> {
        let l: i64 = rng.gen_range(-3..4);
        let mut q = g.start_for(&ZAlpha::ZERO)?;
        let mut labels: Vec<DigitPair> = Vec::new();
        let mut seen = std::collections::HashMap::new();
        let mut i = l;
        loop {
            if i >= 4 {
                if let Some(&j) = seen.get(&q) {
                    let pre: Vec<DigitPair> = labels[..j].to_vec();
                    let per: Vec<DigitPair> = labels[j..].to_vec();
                    let word = |f: fn(&DigitPair) -> u8| -> EventuallyPeriodicWord {
                        EventuallyPeriodicWord::new(
                            l,
                            pre.iter().map(f).collect(),
                            per.iter().map(f).collect(),
                        )
                        .unwrap()
                    };
                    return PairWord::new(word(|x| x.a), word(|x| x.b)).ok();
                }
                seen.insert(q, labels.len());
            }
            let opts: Vec<(DigitPair, usize)> = g
                .successors(q)
                .iter()
                .copied()
                .filter(|(lab, _)| (i >= 4 || lab.a == 0) && (i != l || lab.b == 1))
                .collect();
            if opts.is_empty() {
                return None;
            }
            let (lab, t) = opts[rng.gen_range(0..opts.len())];
            labels.push(lab);
            q = t;
            i += 1;
        }
    }

    #[test]
    fn random_boundary_pairs_are_classified_correctly() {
        let ctx = BoundaryContext::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut by_start = std::collections::BTreeMap::new();
        let mut regions = std::collections::BTreeSet::new();
        let mut n = 0;
        while n < 300 {
            let Some(p) = random_pair(&ctx.graph, &mut rng) else {
                continue;
            };
            n += 1;
            let got = classify(&p).unwrap_or_else(|e| panic!("{e}: {} / {}", p.left, p.right));
            assert!(check_neighbor(&got.0).is_ok());
            assert!(
                ctx.piece_contains(&got.0, &p.left),
                "{} {} -> {got}",
                p.left,
                p.right
            );
            *by_start.entry(p.right.start()).or_insert(0) += 1;
            regions.insert(got);
        }
        assert!(by_start.keys().any(|&l| l < 0));
        assert!(regions.len() >= 8, "{regions:?}");
    }
}

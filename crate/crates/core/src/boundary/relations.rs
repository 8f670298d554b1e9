//! Numerical checks of the set equations for 𝓔(1), 𝓔(α²), 𝓔(α), 𝓔(α+α²),
//! X and Y.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exclusion::compute_bound_constants;
use crate::expansions::{value_alpha, EventuallyPeriodicWord};
use crate::quartic::{EmbeddedPoint, RootData, ZAlpha};

use super::cloud::{directed_hausdorff, hausdorff, PointCloud};
use super::ifs::{ifs_maps, AffineMap, GraphIfs, H12Reading, Source};
use super::BoundaryContext;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown relation {0:?}, expected one of a, b, f, g, h, i")]
pub struct UnknownRelation(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// 𝓔(1) = 1 + αX
    A,
    /// 𝓔(α²) = −1/α − 1 − α + X/α
    B,
    /// 𝓔(α) = f₀(X) ∪ f₁(X) ∪ f₁(Y)
    F,
    /// 𝓔(α+α²) = g₀(X) ∪ g₁(X) ∪ g₁(Y) ∪ g₂(Y) ∪ g₃(Y)
    G,
    /// X = ⋃_{i≤4} h_i(X) ∪ h₁(Y) ∪ h₃(Y)
    H,
    /// Y = ⋃_{5≤i≤11} h_i(Y) ∪ ⋃_{12≤i≤17} h_i(·)
    I(H12Reading),
}

impl Relation {
    pub const ALL: [Relation; 6] = [
        Relation::A,
        Relation::B,
        Relation::F,
        Relation::G,
        Relation::H,
        Relation::I(H12Reading::OnX),
    ];

    /// The region on the left-hand side.
    pub fn region(&self) -> ZAlpha {
        match self {
            Relation::A => ZAlpha::ONE,
            Relation::B => ZAlpha::alpha_pow(2),
            Relation::F => ZAlpha::alpha_pow(1),
            Relation::G => ZAlpha::new(0, 1, 1, 0),
            Relation::H => ZAlpha::new(1, 1, 1, 0),
            Relation::I(_) => ZAlpha::new(1, 1, 0, 0),
        }
    }

    fn reading(&self) -> H12Reading {
        match self {
            Relation::I(r) => *r,
            _ => H12Reading::OnX,
        }
    }

    /// Maps and sources of the right-hand side.
    pub fn terms(&self, ifs: &GraphIfs) -> Vec<(AffineMap, Source)> {
        let m = &ifs.maps;
        let pick = |eq: &[(usize, Source)]| eq.iter().map(|&(i, s)| (m.h[i], s)).collect();
        match self {
            Relation::A => vec![(AffineMap::new(&[0], 1), Source::X)],
            Relation::B => vec![(
                AffineMap {
                    translation: ZAlpha::new(0, 0, 1, -1),
                    power: -1,
                },
                Source::X,
            )],
            Relation::F => vec![
                (m.f[0], Source::X),
                (m.f[1], Source::X),
                (m.f[1], Source::Y),
            ],
            Relation::G => vec![
                (m.g[0], Source::X),
                (m.g[1], Source::X),
                (m.g[1], Source::Y),
                (m.g[2], Source::Y),
                (m.g[3], Source::Y),
            ],
            Relation::H => pick(&ifs.x_eq),
            Relation::I(_) => pick(&ifs.y_eq),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::A => write!(f, "a"),
            Relation::B => write!(f, "b"),
            Relation::F => write!(f, "f"),
            Relation::G => write!(f, "g"),
            Relation::H => write!(f, "h"),
            Relation::I(H12Reading::OnX) => write!(f, "i"),
            Relation::I(H12Reading::OnY) => write!(f, "i[h12(Y)]"),
        }
    }
}

impl FromStr for Relation {
    type Err = UnknownRelation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "a" => Relation::A,
            "b" => Relation::B,
            "f" => Relation::F,
            "g" => Relation::G,
            "h" => Relation::H,
            "i" => Relation::I(H12Reading::OnX),
            _ => return Err(UnknownRelation(s.to_string())),
        })
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub relation: Relation,
    pub depth: usize,
    pub hausdorff: f64,
    pub left_radius: f64,
    pub right_radius: f64,
    pub left_points: usize,
    pub right_points: usize,
}

impl RelationReport {
    pub fn budget(&self) -> f64 {
        self.left_radius + self.right_radius
    }

    pub fn pass(&self) -> bool {
        self.hausdorff <= self.budget()
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "relation={} depth={} hausdorff={:.3e} budget={:.3e} points={}/{}",
            self.relation,
            self.depth,
            self.hausdorff,
            self.budget(),
            self.left_points,
            self.right_points
        )
    }
}

/// Depth of the automaton enumeration matched to `depth` IFS steps: each
/// step contracts by at least α⁴.
pub fn matched_piece_depth(depth: usize) -> usize {
    4 * depth + 2
}

/// Left side from the pair graph, right side from `depth` IFS steps, both
/// with certified covering radii.
pub fn verify_relation_with(
    ctx: &BoundaryContext<'_>,
    rel: Relation,
    depth: usize,
) -> RelationReport {
    let roots: &RootData = ctx.roots;
    let left = ctx.piece(&rel.region(), matched_piece_depth(depth));
    let ifs = GraphIfs::new(rel.reading());
    let thin = Some(thin_cell(depth, roots));
    let (x, y) = ifs.iterate(depth, roots, thin);
    let mut right = PointCloud::new(Vec::new(), (0.0, 0.0), depth);
    let mut seen = Vec::new();
    for (m, s) in rel.terms(&ifs) {
        if seen.contains(&(m, s)) {
            continue;
        }
        seen.push((m, s));
        let src = if s == Source::X { &x } else { &y };
        right = right.union(&m.apply_cloud(src, roots));
    }
    let right = match thin {
        Some(c) if right.len() > 400_000 => right.thin(c),
        _ => right,
    };
    RelationReport {
        relation: rel,
        depth,
        hausdorff: hausdorff(&left.points, &right.points),
        left_radius: left.covering_radius(),
        right_radius: right.covering_radius(),
        left_points: left.len(),
        right_points: right.len(),
    }
}

/// Grid side used to thin IFS clouds: a quarter of the seed radius after
/// `depth` steps.
pub fn thin_cell(depth: usize, roots: &RootData) -> f64 {
    let (_, m3) = roots.moduli();
    0.25 * compute_bound_constants(roots).b.hi() * m3.powi(4 * depth as i32)
}

pub fn verify_relation(rel: Relation, depth: usize) -> RelationReport {
    verify_relation_with(BoundaryContext::standard(), rel, depth)
}

/// A point outside the generic part of a set equation together with the
/// piece claimed to absorb it.
#[derive(Clone, Debug)]
pub struct PointClaim {
    pub name: &'static str,
    /// Base word (start, preperiod, period) plus extra powers of α.
    pub word: (i64, &'static str, &'static str),
    pub extra: &'static [i32],
    pub map: AffineMap,
    pub source: Source,
}

impl PointClaim {
    pub fn point(&self, roots: &RootData) -> EmbeddedPoint {
        let (s, pre, per) = self.word;
        let w = EventuallyPeriodicWord::parse(s, pre, per).expect("claim word");
        self.extra
            .iter()
            .fold(value_alpha(&w, roots), |acc, &k| acc + roots.alpha_pow(k))
    }
}

/// z₁, z₂, z₃ for the equation of 𝓔(α+α²) and y₁ … y₈ for the equation of Y.
pub fn point_claims() -> Vec<PointClaim> {
    let m = ifs_maps();
    let z1 = (8, "", "1100");
    let y1 = (4, "1000000", "1100");
    let c = |name, word, extra, map, source| PointClaim {
        name,
        word,
        extra,
        map,
        source,
    };
    vec![
        c("z1", z1, &[], m.g[3], Source::Y),
        c("z2", z1, &[6], m.g[3], Source::Y),
        c("z3", z1, &[5], m.g[2], Source::Y),
        c("y1", y1, &[], m.h[6], Source::Y),
        c("y2", y1, &[9], m.h[6], Source::Y),
        c("y3", y1, &[8], m.h[8], Source::Y),
        c("y4", y1, &[5], m.h[9], Source::Y),
        c("y5", y1, &[5, 9], m.h[9], Source::Y),
        c("y6", y1, &[5, 8], m.h[5], Source::Y),
        c("y7", y1, &[5, 8, 7], m.h[9], Source::Y),
        c("y8", y1, &[5, 8, 6], m.h[16], Source::X),
    ]
}

/// Distance from the claimed point to the mapped cloud of X or Y, and the
/// mapped covering radius. The claim is consistent when distance ≤ radius.
pub fn check_point_claim(
    ctx: &BoundaryContext<'_>,
    claim: &PointClaim,
    depth: usize,
) -> (f64, f64) {
    let region = match claim.source {
        Source::X => ZAlpha::new(1, 1, 1, 0),
        Source::Y => ZAlpha::new(1, 1, 0, 0),
    };
    let cloud = claim.map.apply_cloud(&ctx.piece(&region, depth), ctx.roots);
    let p = claim.point(ctx.roots);
    (
        directed_hausdorff(&[p], &cloud.points),
        cloud.covering_radius(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for r in Relation::ALL {
            assert_eq!(r.to_string().parse::<Relation>().unwrap(), r);
        }
        assert!("c".parse::<Relation>().is_err());
    }

    #[test]
    fn translation_of_b_is_exact() {
        // −α⁻¹ − 1 − α reduced in the basis
        let t = -ZAlpha::alpha_pow(-1) - ZAlpha::ONE - ZAlpha::alpha_pow(1);
        assert_eq!(t, ZAlpha::new(0, 0, 1, -1));
    }

    #[test]
    fn exceptional_points_are_absorbed() {
        let ctx = BoundaryContext::standard();
        let roots = ctx.roots;
        for c in point_claims() {
            let (d, r) = check_point_claim(ctx, &c, 20);
            assert!(d <= r, "{}: {d} > {r}", c.name);
        }
        // y₃ − α⁴ = α⁸ + Σ_{i≥2}(α^{4i+3} + α^{4i+4}) is far from α⁷ + α⁴Y
        let y3 = &point_claims()[5];
        let wrong = PointClaim {
            map: ifs_maps().h[6],
            ..y3.clone()
        };
        let (d, r) = check_point_claim(ctx, &wrong, 20);
        assert!(d > 5.0 * r);
        // the alternative expansions behind each claim
        let p =
            |s, pre, per| value_alpha(&EventuallyPeriodicWord::parse(s, pre, per).unwrap(), roots);
        let z1 = point_claims()[0].point(roots);
        for (s, pre, per) in [
            (1, "110100100", "1100"),
            (4, "11000", "1100"),
            (5, "110100", "1100"),
        ] {
            assert!(z1.dist(&p(s, pre, per)) < 1e-12);
        }
        let y1 = point_claims()[3].point(roots);
        assert!(y1.dist(&p(0, "1100001100100", "1100")) < 1e-12);
        assert!(y1.dist(&(roots.alpha_pow(4) + roots.alpha_pow(3).mul(&z1))) < 1e-12);
        let y6 = point_claims()[8].point(roots);
        assert!(y6.dist(&p(0, "110000000", "1100")) < 1e-12);
        assert!(y6.dist(&p(0, "1100011000", "1100")) < 1e-12);
        let y8 = point_claims()[10].point(roots);
        assert!(y8.dist(&p(4, "110010", "10")) < 1e-12);
    }

    #[test]
    fn shallow_relations_hold() {
        for r in [Relation::A, Relation::F] {
            let rep = verify_relation(r, 3);
            assert!(rep.pass(), "{rep}");
        }
    }
}

//! The maps f, g, h and the coupled system X, Y.

use rayon::prelude::*;

use crate::exclusion::compute_bound_constants;
use crate::quartic::{embed, EmbeddedPoint, RootData, ZAlpha};

use super::cloud::PointCloud;

/// z ↦ translation + α^power·z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub translation: ZAlpha,
    pub power: i32,
}

impl AffineMap {
    pub fn new(terms: &[i64], power: i32) -> Self {
        let translation = terms
            .iter()
            .fold(ZAlpha::ZERO, |acc, &k| acc + ZAlpha::alpha_pow(k));
        AffineMap { translation, power }
    }

    pub fn apply(&self, p: &EmbeddedPoint, roots: &RootData) -> EmbeddedPoint {
        embed(&self.translation, roots) + roots.alpha_pow(self.power).mul(p)
    }

    /// Lipschitz constants (β₂ coordinate, β₃ coordinate).
    pub fn ratio(&self, roots: &RootData) -> (f64, f64) {
        let (m2, m3) = roots.moduli();
        (m2.powi(self.power), m3.powi(self.power))
    }

    /// translation/(1 − α^power).
    pub fn fixed_point(&self, roots: &RootData) -> EmbeddedPoint {
        let one = EmbeddedPoint::new(1.0, 1.0, 0.0);
        embed(&self.translation, roots).div(&(one - roots.alpha_pow(self.power)))
    }

    pub fn apply_cloud(&self, c: &PointCloud, roots: &RootData) -> PointCloud {
        let t = embed(&self.translation, roots);
        let s = roots.alpha_pow(self.power);
        let (r2, r3) = self.ratio(roots);
        PointCloud {
            points: c.points.par_iter().map(|p| t + s.mul(p)).collect(),
            radius: (c.radius.0 * r2, c.radius.1 * r3),
            depth: c.depth,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IfsMaps {
    pub f: [AffineMap; 2],
    pub g: [AffineMap; 4],
    pub h: [AffineMap; 18],
}

pub fn ifs_maps() -> IfsMaps {
    let m = AffineMap::new;
    let h0 = m(&[4], 4);
    let h2 = m(&[4, 5], 4);
    let h7 = m(&[4, 8, 9], 7);
    let h10 = m(&[4, 5, 8, 9], 7);
    let h11 = m(&[0, 1, 6, 7], 5);
    IfsMaps {
        f: [m(&[1], 2), m(&[1, 4], 2)],
        g: [m(&[5], 4), m(&[5, 6], 4), m(&[], 1), m(&[4], 1)],
        h: [
            h0,
            m(&[4, 6], 4),
            h2,
            m(&[4, 5, 6], 4),
            m(&[0, 1, 2, 7], 5),
            h2,
            m(&[4, 7], 4),
            h7,
            h0,
            m(&[4, 5, 7], 4),
            h10,
            h11,
            m(&[4, 8], 7),
            h7,
            m(&[4, 5, 8], 7),
            h10,
            m(&[0, 1, 6], 5),
            h11,
        ],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    X,
    Y,
}

/// Which set h₁₂ acts on in the equation for Y: X, like h₁₃ … h₁₇, or Y
/// itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H12Reading {
    OnX,
    OnY,
}

#[derive(Clone, Debug)]
pub struct GraphIfs {
    pub maps: IfsMaps,
    /// (index into h, source set)
    pub x_eq: Vec<(usize, Source)>,
    pub y_eq: Vec<(usize, Source)>,
}

impl GraphIfs {
    pub fn new(reading: H12Reading) -> Self {
        let mut x_eq: Vec<(usize, Source)> = (0..=4).map(|i| (i, Source::X)).collect();
        x_eq.extend([(1, Source::Y), (3, Source::Y)]);
        let mut y_eq: Vec<(usize, Source)> = (5..=11).map(|i| (i, Source::Y)).collect();
        for i in 12..=17 {
            let src = if i == 12 && reading == H12Reading::OnY {
                Source::Y
            } else {
                Source::X
            };
            y_eq.push((i, src));
        }
        GraphIfs {
            maps: ifs_maps(),
            x_eq,
            y_eq,
        }
    }

    /// Distinct (map, source) terms of an equation.
    fn terms(&self, eq: &[(usize, Source)]) -> Vec<(AffineMap, Source)> {
        let mut out: Vec<(AffineMap, Source)> = Vec::new();
        for &(i, s) in eq {
            let t = (self.maps.h[i], s);
            if !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }

    /// One substitution step applied to clouds of X and Y.
    pub fn step(
        &self,
        x: &PointCloud,
        y: &PointCloud,
        roots: &RootData,
    ) -> (PointCloud, PointCloud) {
        let apply = |eq: &[(usize, Source)]| {
            let mut out = PointCloud::new(Vec::new(), (0.0, 0.0), x.depth + 1);
            for (m, s) in self.terms(eq) {
                let src = if s == Source::X { x } else { y };
                out = out.union(&m.apply_cloud(src, roots));
            }
            out.depth = x.depth + 1;
            out
        };
        (apply(&self.x_eq), apply(&self.y_eq))
    }

    /// Starts both sets at the fixed point of h₀, which lies in X and in Y,
    /// with the radius of 𝓔-differences, and applies `depth` steps. When
    /// `thin` is set, each step keeps one point per cube of that side.
    pub fn iterate(
        &self,
        depth: usize,
        roots: &RootData,
        thin: Option<f64>,
    ) -> (PointCloud, PointCloud) {
        let k = compute_bound_constants(roots);
        let seed = PointCloud::new(
            vec![self.maps.h[0].fixed_point(roots)],
            (k.a.hi(), k.b.hi()),
            0,
        );
        let (mut x, mut y) = (seed.clone(), seed);
        for _ in 0..depth {
            let (nx, ny) = self.step(&x, &y, roots);
            (x, y) = match thin {
                Some(c) => (nx.thin(c), ny.thin(c)),
                None => (nx, ny),
            };
        }
        (x, y)
    }
}

/// X and Y clouds after `depth` steps of the displayed system.
pub fn iterate_graph_ifs(depth: usize, roots: &RootData) -> (PointCloud, PointCloud) {
    GraphIfs::new(H12Reading::OnX).iterate(depth, roots, None)
}

//! Finite point sets standing in for compact subsets of ℝ×ℂ.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::quartic::EmbeddedPoint;

#[derive(Debug, Error)]
pub enum CloudError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Points with a covering radius: every point of the represented set lies
/// within `radius.0` in the β₂ coordinate and within `radius.1` in the β₃
/// coordinate of some listed point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<EmbeddedPoint>,
    pub radius: (f64, f64),
    pub depth: usize,
}

impl PointCloud {
    pub fn new(points: Vec<EmbeddedPoint>, radius: (f64, f64), depth: usize) -> Self {
        PointCloud {
            points,
            radius,
            depth,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Euclidean covering radius in ℝ³ ≅ ℝ×ℂ.
    pub fn covering_radius(&self) -> f64 {
        self.radius.0.hypot(self.radius.1)
    }

    /// Componentwise minimum and maximum of (r, Re z, Im z).
    pub fn bounding_box(&self) -> Option<([f64; 3], [f64; 3])> {
        bounding_box(&self.points)
    }

    /// Upper bound on the diameter of the listed points (box diagonal).
    pub fn diameter_bound(&self) -> f64 {
        self.bounding_box().map_or(0.0, |(lo, hi)| {
            (0..3).map(|k| (hi[k] - lo[k]).powi(2)).sum::<f64>().sqrt()
        })
    }

    pub fn translate(&self, t: &EmbeddedPoint) -> PointCloud {
        PointCloud {
            points: self.points.iter().map(|p| *p + *t).collect(),
            ..self.clone()
        }
    }

    /// Concatenation; the radius is the larger of the two.
    pub fn union(mut self, other: &PointCloud) -> PointCloud {
        self.points.extend_from_slice(&other.points);
        self.radius = (
            self.radius.0.max(other.radius.0),
            self.radius.1.max(other.radius.1),
        );
        self.depth = self.depth.min(other.depth);
        self
    }

    /// Keeps one point per cube of side `cell`, growing the radius to match.
    pub fn thin(&self, cell: f64) -> PointCloud {
        assert!(cell > 0.0);
        let mut seen: HashMap<[i64; 3], ()> = HashMap::with_capacity(self.points.len());
        let mut points = Vec::new();
        for p in &self.points {
            if seen.insert(cell_of(p, cell), ()).is_none() {
                points.push(*p);
            }
        }
        PointCloud {
            points,
            radius: (
                self.radius.0 + cell,
                self.radius.1 + cell * std::f64::consts::SQRT_2,
            ),
            depth: self.depth,
        }
    }

    /// CSV lines `r,z_re,z_im` after a `#` header with depth and radius.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "# depth={} covering_radius={:e}",
            self.depth,
            self.covering_radius()
        )?;
        writeln!(w, "r,z_re,z_im")?;
        for p in &self.points {
            writeln!(w, "{:.17e},{:.17e},{:.17e}", p.r, p.z.re, p.z.im)?;
        }
        Ok(())
    }

    /// Reads what [`write_csv`](Self::write_csv) writes. The radius is
    /// restored as a β₃ bound only.
    pub fn read_csv<R: BufRead>(r: R) -> Result<PointCloud, CloudError> {
        let mut cloud = PointCloud::new(Vec::new(), (0.0, 0.0), 0);
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            let err = |msg: &str| CloudError::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            if let Some(h) = line.strip_prefix('#') {
                for kv in h.split_whitespace() {
                    match kv.split_once('=') {
                        Some(("depth", v)) => {
                            cloud.depth = v.parse().map_err(|_| err("bad depth"))?
                        }
                        Some(("covering_radius", v)) => {
                            cloud.radius = (0.0, v.parse().map_err(|_| err("bad radius"))?)
                        }
                        _ => {}
                    }
                }
                continue;
            }
            if line.is_empty() || line == "r,z_re,z_im" {
                continue;
            }
            let f: Vec<f64> = line
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| err("expected three numbers"))?;
            if f.len() != 3 {
                return Err(err("expected three numbers"));
            }
            cloud.points.push(EmbeddedPoint::new(f[0], f[1], f[2]));
        }
        Ok(cloud)
    }
}

fn bounding_box(points: &[EmbeddedPoint]) -> Option<([f64; 3], [f64; 3])> {
    let first = points.first()?.coords();
    Some(points.iter().fold((first, first), |(mut lo, mut hi), p| {
        for (k, c) in p.coords().into_iter().enumerate() {
            lo[k] = lo[k].min(c);
            hi[k] = hi[k].max(c);
        }
        (lo, hi)
    }))
}

fn cell_of(p: &EmbeddedPoint, cell: f64) -> [i64; 3] {
    let c = p.coords();
    [
        (c[0] / cell).floor() as i64,
        (c[1] / cell).floor() as i64,
        (c[2] / cell).floor() as i64,
    ]
}

/// Static k-d tree over points of ℝ³ for nearest-neighbour queries.
pub struct KdTree {
    // points reordered so that each subrange [lo, hi) has its splitting
    // point at the midpoint, split on axis depth mod 3
    pts: Vec<[f64; 3]>,
}

impl KdTree {
    pub fn new(points: &[EmbeddedPoint]) -> Self {
        let mut pts: Vec<[f64; 3]> = points.iter().map(|p| p.coords()).collect();
        build(&mut pts, 0);
        KdTree { pts }
    }

    /// Distance to the nearest point (infinite when empty).
    pub fn nearest(&self, q: &EmbeddedPoint) -> f64 {
        let mut best = f64::INFINITY;
        self.search(&q.coords(), 0, self.pts.len(), 0, &mut best);
        best.sqrt()
    }

    /// Distance to the nearest point if it is below `cap`.
    pub fn nearest_within(&self, q: &EmbeddedPoint, cap: f64) -> Option<f64> {
        let mut best = cap * cap;
        self.search(&q.coords(), 0, self.pts.len(), 0, &mut best);
        (best < cap * cap).then(|| best.sqrt())
    }

    fn search(&self, q: &[f64; 3], lo: usize, hi: usize, axis: usize, best: &mut f64) {
        if lo >= hi {
            return;
        }
        let mid = lo + (hi - lo) / 2;
        let p = &self.pts[mid];
        let d2 = (0..3).map(|k| (p[k] - q[k]).powi(2)).sum::<f64>();
        *best = best.min(d2);
        let diff = q[axis] - p[axis];
        let (near, far) = if diff < 0.0 {
            ((lo, mid), (mid + 1, hi))
        } else {
            ((mid + 1, hi), (lo, mid))
        };
        let next = (axis + 1) % 3;
        self.search(q, near.0, near.1, next, best);
        if diff * diff < *best {
            self.search(q, far.0, far.1, next, best);
        }
    }
}

fn build(pts: &mut [[f64; 3]], axis: usize) {
    if pts.len() <= 1 {
        return;
    }
    let mid = pts.len() / 2;
    pts.select_nth_unstable_by(mid, |a, b| a[axis].total_cmp(&b[axis]));
    let (left, right) = pts.split_at_mut(mid);
    build(left, (axis + 1) % 3);
    build(&mut right[1..], (axis + 1) % 3);
}

/// sup over `a` of the distance to `b`.
pub fn directed_hausdorff(a: &[EmbeddedPoint], b: &[EmbeddedPoint]) -> f64 {
    let idx = KdTree::new(b);
    a.par_iter()
        .map(|p| idx.nearest(p))
        .reduce(|| 0.0, f64::max)
}

pub fn hausdorff(a: &[EmbeddedPoint], b: &[EmbeddedPoint]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(n: usize, seed: u64) -> Vec<EmbeddedPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                EmbeddedPoint::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(0.0..0.1),
                )
            })
            .collect()
    }

    fn brute(a: &[EmbeddedPoint], b: &[EmbeddedPoint]) -> f64 {
        a.iter()
            .map(|p| b.iter().map(|q| p.dist(q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }

    #[test]
    fn kd_tree_matches_brute_force() {
        let a = random_points(400, 1);
        let b = random_points(300, 2);
        assert!((directed_hausdorff(&a, &b) - brute(&a, &b)).abs() < 1e-15);
        assert!((directed_hausdorff(&b, &a) - brute(&b, &a)).abs() < 1e-15);
        let far = vec![EmbeddedPoint::new(30.0, -4.0, 2.0)];
        assert!((directed_hausdorff(&far, &b) - brute(&far, &b)).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_of_translate() {
        let a = random_points(200, 3);
        let t = EmbeddedPoint::new(0.0, 0.0, 1e-3);
        let b: Vec<_> = a.iter().map(|p| *p + t).collect();
        assert!(hausdorff(&a, &b) <= 1e-3 + 1e-15);
        assert_eq!(hausdorff(&a, &a), 0.0);
    }

    #[test]
    fn thinning_respects_radius() {
        let c = PointCloud::new(random_points(5000, 4), (0.0, 0.0), 0);
        let t = c.thin(0.05);
        assert!(t.len() < c.len());
        assert!(directed_hausdorff(&c.points, &t.points) <= t.covering_radius());
    }

    #[test]
    fn csv_round_trip() {
        let c = PointCloud::new(random_points(10, 5), (0.0, 0.25), 7);
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# depth=7 covering_radius="));
        let back = PointCloud::read_csv(&buf[..]).unwrap();
        assert_eq!(back.points, c.points);
        assert_eq!(back.depth, 7);
        assert!((back.covering_radius() - 0.25).abs() < 1e-15);
        assert!(PointCloud::read_csv(&b"1,2\n"[..]).is_err());
    }
}

//! Empirical look at the tiling of ℝ×ℂ by the translates 𝓔 + p, p ∈ G,
//! where G = Z + Zα + Zα² embedded.
//!
//! Everything here is observational: a shared grid cell or a small distance
//! between two clouds is evidence, not proof.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::boundary::cloud::KdTree;
use crate::boundary::{neighbor_set, tile_cloud, PointCloud};
use crate::quartic::{embed, RootData, ZAlpha};

/// m₀ + m₁α + m₂α² with |mᵢ| ≤ radius, origin first.
pub fn lattice_translates(radius: i64) -> Vec<ZAlpha> {
    let r = radius.max(0);
    let mut out = vec![ZAlpha::ZERO];
    for m0 in -r..=r {
        for m1 in -r..=r {
            for m2 in -r..=r {
                let p = ZAlpha::new(m0, m1, m2, 0);
                if !p.is_zero() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Occupancy of a grid laid over the bounding box of the central tile.
#[derive(Clone, Debug)]
pub struct OccupancyLevel {
    pub cells_per_axis: usize,
    /// Enumeration depth of the tile cloud, chosen so that its covering
    /// radius is at most half a cell in each coordinate.
    pub depth: usize,
    /// Number of translates meeting each cell.
    pub counts: Vec<u8>,
}

impl OccupancyLevel {
    pub fn occupied(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn multiply_covered(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 1).count()
    }

    pub fn multiply_covered_fraction(&self) -> f64 {
        match self.occupied() {
            0 => 0.0,
            n => self.multiply_covered() as f64 / n as f64,
        }
    }
}

/// Observed distance between the clouds of 𝓔 and 𝓔 + p; `None` when it
/// exceeds the search cap.
#[derive(Clone, Debug)]
pub struct Contact {
    pub translate: ZAlpha,
    pub distance: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct TilingReport {
    pub radius: i64,
    pub translates: Vec<ZAlpha>,
    pub levels: Vec<OccupancyLevel>,
    pub contact_depth: usize,
    /// Twice the covering radius of the tile cloud at `contact_depth`.
    pub contact_threshold: f64,
    pub contacts: Vec<Contact>,
}

impl TilingReport {
    /// Translates whose clouds come within the threshold.
    pub fn intersecting(&self) -> BTreeSet<ZAlpha> {
        self.contacts
            .iter()
            .filter(|c| c.distance.is_some_and(|d| d <= self.contact_threshold))
            .map(|c| c.translate)
            .collect()
    }

    /// The 18 neighbours that lie in the translate box.
    pub fn expected(&self) -> BTreeSet<ZAlpha> {
        let box_: BTreeSet<ZAlpha> = self.translates.iter().copied().collect();
        neighbor_set()
            .into_iter()
            .map(|n| n.0)
            .filter(|u| box_.contains(u))
            .collect()
    }

    /// Fractions strictly decrease from each level to the next.
    pub fn fractions_decrease(&self) -> bool {
        self.levels
            .windows(2)
            .all(|w| w[1].multiply_covered_fraction() < w[0].multiply_covered_fraction())
    }
}

impl fmt::Display for TilingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "translates={} radius={}",
            self.translates.len(),
            self.radius
        )?;
        for l in &self.levels {
            writeln!(
                f,
                "grid={} depth={} occupied={} multiply_covered={} fraction={:.4}",
                l.cells_per_axis,
                l.depth,
                l.occupied(),
                l.multiply_covered(),
                l.multiply_covered_fraction()
            )?;
        }
        let hit = self.intersecting();
        let expected = self.expected();
        writeln!(
            f,
            "contact_depth={} threshold={:.4} observed_intersections={} expected_neighbours_in_box={} missing={} extra={}",
            self.contact_depth,
            self.contact_threshold,
            hit.len(),
            expected.len(),
            expected.difference(&hit).count(),
            hit.difference(&expected).count()
        )?;
        for u in &hit {
            writeln!(f, "intersects {u}")?;
        }
        Ok(())
    }
}

/// Smallest depth d with (a|β₂|^d, b|β₃|^d) at most half of `cell`.
fn depth_for(cell: [f64; 3], roots: &RootData) -> usize {
    (1..64)
        .find(|&d| {
            let r = tile_cloud_radius(d, roots);
            2.0 * r.0 <= cell[0] && 2.0 * r.1 <= cell[1].min(cell[2])
        })
        .unwrap_or(63)
}

fn tile_cloud_radius(depth: usize, roots: &RootData) -> (f64, f64) {
    let k = crate::exclusion::compute_bound_constants(roots);
    let (m2, m3) = roots.moduli();
    (
        k.a.hi() * m2.powi(depth as i32),
        k.b.hi() * m3.powi(depth as i32),
    )
}

/// Counts, per cell of an n×n×n grid over the central tile's box, the
/// translates whose cloud, inflated by its covering radius, meets the cell.
pub fn occupancy(translates: &[ZAlpha], n: usize, roots: &RootData) -> OccupancyLevel {
    let box_ = tile_cloud(4, roots);
    let (r4a, r4b) = box_.radius;
    let (lo, hi) = box_.bounding_box().expect("nonempty");
    let pad = [r4a, r4b, r4b];
    let lo: [f64; 3] = std::array::from_fn(|k| lo[k] - pad[k]);
    let hi: [f64; 3] = std::array::from_fn(|k| hi[k] + pad[k]);
    let cell: [f64; 3] = std::array::from_fn(|k| (hi[k] - lo[k]) / n as f64);
    let depth = depth_for(cell, roots);
    let tile = tile_cloud(depth, roots);
    let rad = [tile.radius.0, tile.radius.1, tile.radius.1];
    let marks: Vec<Vec<u32>> = translates
        .par_iter()
        .map(|p| {
            let t = embed(p, roots).coords();
            let mut cells: Vec<u32> = Vec::new();
            for q in &tile.points {
                let c = q.coords();
                let mut range = [(0usize, 0usize); 3];
                let mut inside = true;
                for k in 0..3 {
                    let a = ((c[k] + t[k] - rad[k] - lo[k]) / cell[k]).floor();
                    let b = ((c[k] + t[k] + rad[k] - lo[k]) / cell[k]).floor();
                    if b < 0.0 || a >= n as f64 {
                        inside = false;
                        break;
                    }
                    range[k] = (a.max(0.0) as usize, (b as usize).min(n - 1));
                }
                if !inside {
                    continue;
                }
                for i in range[0].0..=range[0].1 {
                    for j in range[1].0..=range[1].1 {
                        for l in range[2].0..=range[2].1 {
                            cells.push(((i * n + j) * n + l) as u32);
                        }
                    }
                }
            }
            cells.sort_unstable();
            cells.dedup();
            cells
        })
        .collect();
    let mut counts = vec![0u8; n * n * n];
    for m in marks {
        for c in m {
            counts[c as usize] = counts[c as usize].saturating_add(1);
        }
    }
    OccupancyLevel {
        cells_per_axis: n,
        depth,
        counts,
    }
}

/// Distance between the tile cloud and each nonzero translate of it, when
/// below `cap`.
pub fn contacts(
    translates: &[ZAlpha],
    tile: &PointCloud,
    cap: f64,
    roots: &RootData,
) -> Vec<Contact> {
    let tree = KdTree::new(&tile.points);
    translates
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let t = embed(p, roots);
            let distance = tile
                .points
                .par_iter()
                .filter_map(|q| tree.nearest_within(&(*q + t), cap))
                .reduce_with(f64::min);
            Contact {
                translate: *p,
                distance,
            }
        })
        .collect()
}

/// Occupancy at `grid`, 2·`grid` and 4·`grid` cells per axis, and contacts
/// at `depth`.
pub fn tiling_report(radius: i64, grid: usize, depth: usize, roots: &RootData) -> TilingReport {
    let translates = lattice_translates(radius);
    let levels = [grid, 2 * grid, 4 * grid]
        .into_iter()
        .map(|n| occupancy(&translates, n, roots))
        .collect();
    let tile = tile_cloud(depth, roots);
    let contact_threshold = 2.0 * tile.covering_radius();
    let contacts = contacts(&translates, &tile, 2.0 * contact_threshold, roots);
    TilingReport {
        radius,
        translates,
        levels,
        contact_depth: depth,
        contact_threshold,
        contacts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translate_box() {
        assert_eq!(lattice_translates(0), vec![ZAlpha::ZERO]);
        let t = lattice_translates(1);
        assert_eq!(t.len(), 27);
        assert_eq!(t.iter().collect::<BTreeSet<_>>().len(), 27);
        assert_eq!(lattice_translates(2).len(), 125);
    }

    #[test]
    fn single_tile_has_no_overlap() {
        let roots = RootData::standard();
        let l = occupancy(&lattice_translates(0), 8, roots);
        assert!(l.occupied() > 0);
        assert_eq!(l.multiply_covered(), 0);
        assert_eq!(l.multiply_covered_fraction(), 0.0);
    }

    #[test]
    fn contacts_at_depth_twelve_are_the_neighbours() {
        let roots = RootData::standard();
        let tile = tile_cloud(12, roots);
        let thr = 2.0 * tile.covering_radius();
        let c = contacts(&lattice_translates(2), &tile, 2.0 * thr, roots);
        let hit: BTreeSet<ZAlpha> = c
            .iter()
            .filter(|c| c.distance.is_some_and(|d| d <= thr))
            .map(|c| c.translate)
            .collect();
        let nb: BTreeSet<ZAlpha> = neighbor_set().into_iter().map(|n| n.0).collect();
        assert_eq!(hit, nb);
        // contact distance shrinks like the covering radius
        for x in &c {
            if let Some(d) = x.distance {
                assert!(!nb.contains(&x.translate) || d < 0.16);
            }
        }
    }

    #[test]
    fn depth_matches_cell() {
        let roots = RootData::standard();
        let d = depth_for([0.1, 0.2, 0.2], roots);
        let r = tile_cloud_radius(d, roots);
        assert!(2.0 * r.0 <= 0.1 && 2.0 * r.1 <= 0.2);
        let r = tile_cloud_radius(d - 1, roots);
        assert!(2.0 * r.0 > 0.1 || 2.0 * r.1 > 0.2);
    }
}

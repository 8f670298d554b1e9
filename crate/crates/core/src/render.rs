//! Rasterisation of point clouds to binary PPM images.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::boundary::{
    check_neighbor, neighbor_set, tile_cloud, BoundaryContext, BoundaryError, GraphIfs, H12Reading,
    PointCloud,
};
use crate::quartic::{RootData, ZAlpha};

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("image size {0}x{1} is empty")]
    EmptyImage(usize, usize),
    #[error("window [{0}, {1}] x [{2}, {3}] is empty")]
    EmptyWindow(f64, f64, f64, f64),
    #[error("unknown projection {0:?}, expected one of r-re, r-im, re-im, all")]
    BadProjection(String),
    #[error("unknown target {0:?}, expected E, boundary, X, Y or piece")]
    BadTarget(String),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Coordinates of ℝ×ℂ: 0 is the β₂ axis, 1 and 2 the real and imaginary
/// parts of the β₃ coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Plane(usize, usize),
    /// The complex plane and the (β₂, Re β₃) plane, as two images.
    All,
}

impl Projection {
    pub fn planes(&self) -> Vec<(usize, usize)> {
        match *self {
            Projection::Plane(i, j) => vec![(i, j)],
            Projection::All => vec![(1, 2), (0, 1)],
        }
    }
}

const AXES: [&str; 3] = ["r", "re", "im"];

impl FromStr for Projection {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(Projection::All);
        }
        let axis = |a: &str| AXES.iter().position(|&x| x == a);
        match s.split_once('-').map(|(a, b)| (axis(a), axis(b))) {
            Some((Some(i), Some(j))) if i != j => Ok(Projection::Plane(i, j)),
            _ => Err(RenderError::BadProjection(s.to_string())),
        }
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Projection::Plane(i, j) => write!(f, "{}-{}", AXES[*i], AXES[*j]),
            Projection::All => write!(f, "all"),
        }
    }
}

/// Axis-aligned rectangle in the projection plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Window {
    pub fn new(x: (f64, f64), y: (f64, f64)) -> Result<Self, RenderError> {
        if !(x.0 < x.1 && y.0 < y.1) {
            return Err(RenderError::EmptyWindow(x.0, x.1, y.0, y.1));
        }
        Ok(Window { x, y })
    }

    /// Bounding box of the layers in plane (i, j), padded by 5% and by at
    /// least `min_pad`.
    pub fn fit(layers: &[Layer], (i, j): (usize, usize), min_pad: f64) -> Option<Window> {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for l in layers {
            let (a, b) = l.cloud.bounding_box()?;
            for (k, axis) in [i, j].into_iter().enumerate() {
                lo[k] = lo[k].min(a[axis]);
                hi[k] = hi[k].max(b[axis]);
            }
        }
        if !lo[0].is_finite() {
            return None;
        }
        let pad = |k: usize| ((hi[k] - lo[k]) * 0.05).max(min_pad);
        Some(Window {
            x: (lo[0] - pad(0), hi[0] + pad(0)),
            y: (lo[1] - pad(1), hi[1] + pad(1)),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderConfig {
    pub depth: usize,
    pub width: usize,
    pub height: usize,
    pub projection: Projection,
    /// Fitted to the data when absent.
    pub window: Option<Window>,
}

impl RenderConfig {
    pub fn new(
        depth: usize,
        width: usize,
        height: usize,
        projection: Projection,
        window: Option<Window>,
    ) -> Result<Self, RenderError> {
        if depth == 0 {
            return Err(RenderError::ZeroDepth);
        }
        if width == 0 || height == 0 {
            return Err(RenderError::EmptyImage(width, height));
        }
        if let Some(w) = window {
            Window::new(w.x, w.y)?;
        }
        Ok(RenderConfig {
            depth,
            width,
            height,
            projection,
            window,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderTarget {
    /// The central tile.
    Tile,
    /// All 18 regions, one colour each.
    Boundary,
    Piece(ZAlpha),
    X,
    Y,
}

impl FromStr for RenderTarget {
    type Err = RenderError;

    /// `E`, `boundary`, `X`, `Y` or `piece:c0,c1,c2,c3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RenderError::BadTarget(s.to_string());
        Ok(match s {
            "E" => RenderTarget::Tile,
            "boundary" => RenderTarget::Boundary,
            "X" => RenderTarget::X,
            "Y" => RenderTarget::Y,
            _ => {
                let coords = s.strip_prefix("piece:").ok_or_else(bad)?;
                let c: Vec<i64> = coords
                    .split(',')
                    .map(|t| t.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad())?;
                let c: [i64; 4] = c.try_into().map_err(|_| bad())?;
                RenderTarget::Piece(ZAlpha::new(c[0], c[1], c[2], c[3]))
            }
        })
    }
}

/// A cloud drawn in one colour.
#[derive(Clone, Debug)]
pub struct Layer {
    pub cloud: PointCloud,
    pub color: [u8; 3],
}

const PALETTE: [[u8; 3]; 9] = [
    [230, 25, 75],
    [60, 180, 75],
    [0, 130, 200],
    [245, 130, 48],
    [145, 30, 180],
    [70, 240, 240],
    [240, 50, 230],
    [128, 128, 0],
    [0, 0, 128],
];

/// Clouds for a target. For X and Y the depth counts IFS steps.
pub fn target_layers(
    target: RenderTarget,
    depth: usize,
    roots: &RootData,
) -> Result<Vec<Layer>, RenderError> {
    let ctx = BoundaryContext::standard();
    let black = [0, 0, 0];
    Ok(match target {
        RenderTarget::Tile => vec![Layer {
            cloud: tile_cloud(depth, roots),
            color: black,
        }],
        RenderTarget::Boundary => neighbor_set()
            .iter()
            .enumerate()
            .map(|(k, u)| Layer {
                cloud: ctx.piece(&u.0, depth),
                color: PALETTE[k % PALETTE.len()],
            })
            .collect(),
        RenderTarget::Piece(u) => {
            check_neighbor(&u)?;
            vec![Layer {
                cloud: ctx.piece(&u, depth),
                color: black,
            }]
        }
        RenderTarget::X | RenderTarget::Y => {
            let cell = crate::boundary::relations::thin_cell(depth, roots);
            let (x, y) = GraphIfs::new(H12Reading::OnX).iterate(depth, roots, Some(cell));
            let cloud = if target == RenderTarget::X { x } else { y };
            vec![Layer {
                cloud,
                color: black,
            }]
        }
    })
}

/// An RGB raster, row-major from the top row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

impl Image {
    pub fn blank(width: usize, height: usize) -> Self {
        Image {
            width,
            height,
            data: vec![255; width * height * 3],
        }
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let k = 3 * (y * self.width + x);
        [self.data[k], self.data[k + 1], self.data[k + 2]]
    }

    /// Pixels that are not background.
    pub fn occupied(&self) -> Vec<(usize, usize)> {
        (0..self.height)
            .flat_map(|y| (0..self.width).map(move |x| (x, y)))
            .filter(|&(x, y)| self.pixel(x, y) != [255, 255, 255])
            .collect()
    }

    pub fn write_ppm<W: Write>(&self, mut w: W) -> io::Result<()> {
        write!(w, "P6\n{} {}\n255\n", self.width, self.height)?;
        w.write_all(&self.data)
    }
}

/// Pixel of a plane point, or `None` outside the window.
pub fn to_pixel(
    x: f64,
    y: f64,
    win: &Window,
    width: usize,
    height: usize,
) -> Option<(usize, usize)> {
    let u = (x - win.x.0) / (win.x.1 - win.x.0);
    let v = (win.y.1 - y) / (win.y.1 - win.y.0);
    if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&v) {
        return None;
    }
    let px = ((u * width as f64) as usize).min(width - 1);
    let py = ((v * height as f64) as usize).min(height - 1);
    Some((px, py))
}

pub fn rasterize(
    layers: &[Layer],
    plane: (usize, usize),
    win: &Window,
    width: usize,
    height: usize,
) -> Image {
    let mut img = Image::blank(width, height);
    for l in layers {
        for p in &l.cloud.points {
            let c = p.coords();
            if let Some((x, y)) = to_pixel(c[plane.0], c[plane.1], win, width, height) {
                let k = 3 * (y * width + x);
                img.data[k..k + 3].copy_from_slice(&l.color);
            }
        }
    }
    img
}

/// One image per projection plane, with the window used for each.
pub fn render(
    target: RenderTarget,
    cfg: &RenderConfig,
    roots: &RootData,
) -> Result<Vec<(Window, Image)>, RenderError> {
    let layers = target_layers(target, cfg.depth, roots)?;
    Ok(cfg
        .projection
        .planes()
        .into_iter()
        .map(|plane| {
            let win = cfg
                .window
                .or_else(|| Window::fit(&layers, plane, 1e-3))
                .unwrap_or(Window {
                    x: (-1.0, 1.0),
                    y: (-1.0, 1.0),
                });
            (win, rasterize(&layers, plane, &win, cfg.width, cfg.height))
        })
        .collect())
}

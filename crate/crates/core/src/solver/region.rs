use crate::error::{Error, Result};
use crate::params::{sigma_profile, CornerRule, GridSpec, PmlConfig, Side};

/// Classification of a pressure cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellTag {
    Interior,
    PmlX,
    PmlY,
    PmlCorner,
}

/// Layer geometry of a grid: cell tags plus damping sampled at cell centers
/// and faces. One-dimensional arrays suffice because an x-layer depends only
/// on x and a y-layer only on y.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap {
    pub nx: usize,
    pub ny: usize,
    /// Depth into the x-layer at cell centers, `None` outside.
    pub depth_x: Vec<Option<f64>>,
    pub depth_y: Vec<Option<f64>>,
    /// σ at x cell centers (`nx`) and x-faces (`nx + 1`).
    pub sigma_x_center: Vec<f64>,
    pub sigma_x_face: Vec<f64>,
    pub sigma_y_center: Vec<f64>,
    pub sigma_y_face: Vec<f64>,
    pub n_delta: usize,
    pub layers: [bool; 4],
    pub corners: CornerRule,
}

/// Depth of a point at `half` half-cells from the low wall into the layers
/// of an axis with `n` cells, in half-cells.
fn half_depth(half: usize, n: usize, nd: usize, low: bool, high: bool) -> Option<usize> {
    let lo_edge = 2 * nd;
    let hi_edge = 2 * (n - nd);
    if low && half <= lo_edge {
        Some(lo_edge - half)
    } else if high && half >= hi_edge {
        Some(half - hi_edge)
    } else {
        None
    }
}

fn axis_arrays(
    n: usize,
    h: f64,
    cfg: &PmlConfig,
    low: bool,
    high: bool,
) -> Result<(Vec<Option<f64>>, Vec<f64>, Vec<f64>)> {
    let nd = cfg.n_delta;
    let axis_cfg = PmlConfig {
        delta: nd as f64 * h,
        ..*cfg
    };
    let depth_of = |half: usize| half_depth(half, n, nd, low, high).map(|k| (k as f64 * 0.5) * h);
    let sigma_of = |half: usize| -> Result<f64> {
        match depth_of(half) {
            Some(d) => sigma_profile(&axis_cfg, d),
            None => Ok(0.0),
        }
    };
    let depth = (0..n).map(|i| depth_of(2 * i + 1)).collect();
    let center = (0..n).map(|i| sigma_of(2 * i + 1)).collect::<Result<_>>()?;
    let face = (0..=n).map(|i| sigma_of(2 * i)).collect::<Result<_>>()?;
    Ok((depth, center, face))
}

impl RegionMap {
    pub fn new(grid: &GridSpec, pml: &PmlConfig) -> Result<Self> {
        grid.validate_geometry()?;
        pml.validate()?;
        let nd = pml.n_delta;
        let has = |s| pml.sides.contains(s);
        let layers = [has(Side::XMin), has(Side::XMax), has(Side::YMin), has(Side::YMax)];
        if !pml.sides.is_empty() {
            let min_cells = grid.nx.min(grid.ny);
            if 2 * nd >= min_cells {
                return Err(Error::LayerTooWide {
                    n_delta: nd,
                    cells: min_cells,
                });
            }
            for (active, h) in [(pml.sides.has_x(), grid.dx()), (pml.sides.has_y(), grid.dy())] {
                let want = nd as f64 * h;
                if active && (pml.delta - want).abs() > 1e-9 * want {
                    return Err(Error::InvalidLayer(format!(
                        "delta = {} does not match n_delta·spacing = {want}",
                        pml.delta
                    )));
                }
            }
        }
        let (depth_x, sigma_x_center, sigma_x_face) =
            axis_arrays(grid.nx, grid.dx(), pml, layers[0], layers[1])?;
        let (depth_y, sigma_y_center, sigma_y_face) =
            axis_arrays(grid.ny, grid.dy(), pml, layers[2], layers[3])?;
        Ok(RegionMap {
            nx: grid.nx,
            ny: grid.ny,
            depth_x,
            depth_y,
            sigma_x_center,
            sigma_x_face,
            sigma_y_center,
            sigma_y_face,
            n_delta: nd,
            layers,
            corners: pml.corners,
        })
    }

    pub fn tag(&self, i: usize, j: usize) -> CellTag {
        match (self.depth_x[i].is_some(), self.depth_y[j].is_some()) {
            (false, false) => CellTag::Interior,
            (true, false) => CellTag::PmlX,
            (false, true) => CellTag::PmlY,
            (true, true) => CellTag::PmlCorner,
        }
    }

    pub fn in_layer(&self, i: usize, j: usize) -> bool {
        self.tag(i, j) != CellTag::Interior
    }

    pub fn has_x_layer(&self) -> bool {
        self.layers[0] || self.layers[1]
    }

    pub fn has_y_layer(&self) -> bool {
        self.layers[2] || self.layers[3]
    }

    /// Cell index ranges `[lo, hi)` of the physical (non-layer) region.
    pub fn interior_range(&self) -> ((usize, usize), (usize, usize)) {
        let nd = self.n_delta;
        let x0 = if self.layers[0] { nd } else { 0 };
        let x1 = if self.layers[1] { self.nx - nd } else { self.nx };
        let y0 = if self.layers[2] { nd } else { 0 };
        let y1 = if self.layers[3] { self.ny - nd } else { self.ny };
        ((x0, x1), (y0, y1))
    }
}

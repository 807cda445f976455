//! Experiment orchestration: configurations, reference runs on enlarged
//! domains, error norms, layer-parameter sweeps and long-run stability
//! probes.

pub mod metrics;
pub mod reference;
pub mod sweep;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use metrics::{error_report, relative_error, CellBox, ErrorReport, Region, TimeWindow, Variable};
pub use reference::{reference_plan, run_reference, ReferencePlan};
pub use sweep::{reference_limit, stability_csv, stability_probe, sweep_csv, table1_sweep, StabilityTrace, SweepCell, TABLE1_CELLS};

use crate::error::{Error, Result};
use crate::params::{FlowParams, GridSpec, PmlConfig, Side, SideSet, SourceSpec, Walls};
use crate::solver::{ProbeNodes, RegionMap, RunPlan, SourceNodes, Window};

fn default_enlargement() -> f64 {
    3.0
}

fn default_snapshot_every() -> usize {
    10
}

/// One simulation: flow, grid (layers included), layers, source, probes and
/// run length. Coordinates of the source and probes are in the grid frame
/// `[0, lx] × [0, ly]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub flow: FlowParams,
    pub grid: GridSpec,
    pub pml: PmlConfig,
    pub source: SourceSpec,
    #[serde(default)]
    pub walls: Walls,
    /// Number of time steps.
    pub horizon: usize,
    #[serde(default)]
    pub probes: Vec<(f64, f64)>,
    /// Reference domain is this many times wider along each truncated axis.
    #[serde(default = "default_enlargement")]
    pub enlargement: f64,
    #[serde(default = "default_snapshot_every")]
    pub snapshot_every: usize,
    /// Accept `grid.cfl ≥ 1`. Only for negative stability controls.
    #[serde(default)]
    pub allow_unstable_cfl: bool,
}

/// Spacing of the desk-scale runs: 50 physical cells across `[0, 1.2]`.
pub const DESK_SPACING: f64 = 0.024;
pub const DESK_PHYSICAL_CELLS: usize = 50;

impl ExperimentConfig {
    /// Desk-scale version of the oblique-flow experiment: a 1.2 × 1.2
    /// physical square, layers of 38 cells on all sides with σ_pml = 40,
    /// ū = 200, v̄ = 100, Ricker source at the center, 1000 steps.
    pub fn desk_baseline() -> Self {
        let h = DESK_SPACING;
        let nd = 38;
        let n = DESK_PHYSICAL_CELLS + 2 * nd;
        let grid = GridSpec::square_cells(n, n, h, 0.3).expect("valid grid");
        let delta = nd as f64 * h;
        let phys = DESK_PHYSICAL_CELLS as f64 * h;
        let center = delta + phys / 2.0;
        ExperimentConfig {
            flow: FlowParams::new(200.0, 100.0, 1.0, 300.0).expect("subsonic"),
            grid,
            pml: PmlConfig::new(SideSet::all(), nd, 40.0, h).expect("valid layer"),
            source: SourceSpec::ricker_default((center, center)),
            walls: Walls::default(),
            horizon: 1000,
            probes: vec![
                // Four cells from the upper-left corner of the physical square,
                // and the same height inside the x-min layer.
                (delta + 4.0 * h, delta + phys - 4.0 * h),
                (delta / 2.0, delta + phys - 4.0 * h),
            ],
            enlargement: 3.0,
            snapshot_every: 10,
            allow_unstable_cfl: false,
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        FlowParams::new(self.flow.u_bar, self.flow.v_bar, self.flow.rho_bar, self.flow.c_bar)?;
        if !self.allow_unstable_cfl {
            self.grid.validate()?;
        }
        RegionMap::new(&self.grid, &self.pml)?;
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least one step".into()));
        }
        if !(self.enlargement >= 2.0) {
            return Err(Error::Config(format!(
                "enlargement must be at least 2, got {}",
                self.enlargement
            )));
        }
        Ok(())
    }

    /// Layer cells on (x-min, x-max, y-min, y-max).
    pub fn layer_cells(&self) -> [usize; 4] {
        Side::ALL.map(|s| if self.pml.sides.contains(s) { self.pml.n_delta } else { 0 })
    }

    /// Global index of grid cell `(0, 0)`; the physical region starts at 0.
    pub fn origin(&self) -> (isize, isize) {
        let l = self.layer_cells();
        (-(l[0] as isize), -(l[2] as isize))
    }

    pub fn physical_cells(&self) -> (usize, usize) {
        let l = self.layer_cells();
        (self.grid.nx - l[0] - l[1], self.grid.ny - l[2] - l[3])
    }

    /// Box of physical cells in the global frame.
    pub fn physical_box(&self) -> CellBox {
        let (px, py) = self.physical_cells();
        CellBox {
            x: (0, px as isize),
            y: (0, py as isize),
        }
    }

    pub fn euler_region(&self) -> Region {
        Region::Inside(self.physical_box())
    }

    pub fn layer_region(&self) -> Region {
        Region::Outside(self.physical_box())
    }

    /// Same physical domain, spacing, flow and source with layers of
    /// `n_delta` cells and strength `sigma_pml` on the same sides.
    pub fn with_layer(&self, n_delta: usize, sigma_pml: f64) -> Result<Self> {
        let old = self.layer_cells();
        let (px, py) = self.physical_cells();
        let (dx, dy) = (self.grid.dx(), self.grid.dy());
        let sides = self.pml.sides;
        let cnt = |a: Side, b: Side| sides.contains(a) as usize + sides.contains(b) as usize;
        let nx = px + n_delta * cnt(Side::XMin, Side::XMax);
        let ny = py + n_delta * cnt(Side::YMin, Side::YMax);
        let grid = GridSpec {
            lx: nx as f64 * dx,
            ly: ny as f64 * dy,
            nx,
            ny,
            cfl: self.grid.cfl,
        };
        let new_lo = |side: Side| if sides.contains(side) { n_delta } else { 0 };
        let sx = (new_lo(Side::XMin) as f64 - old[0] as f64) * dx;
        let sy = (new_lo(Side::YMin) as f64 - old[2] as f64) * dy;
        let shift = |(x, y): (f64, f64)| (x + sx, y + sy);
        let spacing = if sides.has_x() { dx } else { dy };
        let pml = if sides.is_empty() {
            PmlConfig::none()
        } else {
            PmlConfig::new(sides, n_delta, sigma_pml, spacing)?
        };
        let mut source = self.source;
        source.location = shift(source.location);
        let cfg = ExperimentConfig {
            grid,
            pml,
            source,
            probes: self.probes.iter().copied().map(shift).collect(),
            ..self.clone()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Solver plan on the configuration's own grid.
    pub fn plan(&self) -> Result<RunPlan> {
        self.validate()?;
        Ok(RunPlan {
            flow: self.flow,
            grid: self.grid,
            pml: self.pml,
            walls: self.walls,
            source: Some(SourceNodes::nearest(&self.grid, &self.source)),
            probes: self.probes.iter().map(|&p| ProbeNodes::nearest(&self.grid, p)).collect(),
            steps: self.horizon,
            snapshot_every: self.snapshot_every,
            window: Window {
                i0: 0,
                j0: 0,
                nx: self.grid.nx,
                ny: self.grid.ny,
            },
            origin: self.origin(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_geometry() {
        let cfg = ExperimentConfig::desk_baseline();
        assert_eq!(cfg.grid.nx, 126);
        assert_eq!(cfg.physical_cells(), (50, 50));
        assert!((cfg.pml.delta - 0.912).abs() < 1e-12);
        cfg.validate().unwrap();
    }

    #[test]
    fn toml_roundtrip() {
        let cfg = ExperimentConfig::desk_baseline();
        let back = ExperimentConfig::from_toml_str(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn narrower_layer_keeps_physical_source() {
        let cfg = ExperimentConfig::desk_baseline();
        let thin = cfg.with_layer(8, 40.0).unwrap();
        assert_eq!(thin.grid.nx, 66);
        let h = DESK_SPACING;
        assert!((thin.source.location.0 - (8.0 * h + 0.6)).abs() < 1e-12);
        assert_eq!(thin.physical_cells(), (50, 50));
    }

    #[test]
    fn small_enlargement_rejected() {
        let mut cfg = ExperimentConfig::desk_baseline();
        cfg.enlargement = 1.5;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }
}

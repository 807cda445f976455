//! Staggered-grid time stepping of the linearized Euler equations with
//! pressure-only absorbing layers.
//!
//! The interior scheme is the Yee leapfrog for the acoustic terms plus
//! first-order upwind convection. Inside a layer the pressure row carries the
//! extra term `(ℒ^pml − ℒ)𝒫` where `𝒫` is the pressure transported by the
//! flow (`𝒢𝒫 = p`). The difference is realized with `∂x^pml = ∂x + D`, where
//! `Dφ` is an auxiliary field advanced by [`dx_pml_aux_update`].

pub mod consistency;
pub mod field;
pub mod region;
pub mod stepper;

pub use consistency::{aux_consistency, observed_orders, AuxConsistency};
pub use field::Field2;
pub use region::{CellTag, RegionMap};
pub use stepper::{
    dx_pml_aux_update, init_state, step, vorticity, FieldState, SourceNodes, Stepper, BLOWUP,
};

use crate::error::Result;
use crate::harness::ExperimentConfig;
use crate::params::{FlowParams, GridSpec, PmlConfig, Walls};

/// Nodes sampled by a probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeNodes {
    pub location: (f64, f64),
    pub p: (usize, usize),
    pub u: (usize, usize),
    pub v: (usize, usize),
    pub corner: (usize, usize),
}

fn near(x: f64, h: f64, offset: f64, hi: usize) -> usize {
    ((x / h - offset).round().max(0.0) as usize).min(hi)
}

impl ProbeNodes {
    pub fn nearest(grid: &GridSpec, location: (f64, f64)) -> Self {
        let (x, y) = location;
        let (dx, dy) = (grid.dx(), grid.dy());
        let (nx, ny) = (grid.nx, grid.ny);
        ProbeNodes {
            location,
            p: (near(x, dx, 0.5, nx - 1), near(y, dy, 0.5, ny - 1)),
            u: (near(x, dx, 0.0, nx), near(y, dy, 0.5, ny - 1)),
            v: (near(x, dx, 0.5, nx - 1), near(y, dy, 0.0, ny)),
            corner: (near(x, dx, 0.0, nx), near(y, dy, 0.0, ny)),
        }
    }

    pub fn shifted(&self, shift: (usize, usize)) -> Self {
        let s = |(i, j): (usize, usize)| (i + shift.0, j + shift.1);
        ProbeNodes {
            location: self.location,
            p: s(self.p),
            u: s(self.u),
            v: s(self.v),
            corner: s(self.corner),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSample {
    pub step: usize,
    pub t: f64,
    pub p: f64,
    pub u: f64,
    pub v: f64,
    pub vorticity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSeries {
    pub location: (f64, f64),
    pub samples: Vec<ProbeSample>,
}

/// Fields restricted to the output window at one step. `u` has one extra
/// column, `v` one extra row and `vorticity` both.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub step: usize,
    pub t: f64,
    pub p: Field2,
    pub u: Field2,
    pub v: Field2,
    pub vorticity: Field2,
}

/// Block of cells `[i0, i0 + nx) × [j0, j0 + ny)` of a run grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub i0: usize,
    pub j0: usize,
    pub nx: usize,
    pub ny: usize,
}

/// Everything needed to execute one run.
#[derive(Debug, Clone)]
pub struct RunPlan {
    pub flow: FlowParams,
    pub grid: GridSpec,
    pub pml: PmlConfig,
    pub walls: Walls,
    pub source: Option<SourceNodes>,
    pub probes: Vec<ProbeNodes>,
    pub steps: usize,
    /// Frame interval in steps; 0 disables frames.
    pub snapshot_every: usize,
    pub window: Window,
    /// Global index of the run grid's cell `(0, 0)`. The global frame puts
    /// cell 0 at the low edge of the physical (non-layer) region.
    pub origin: (isize, isize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// Grid the run was computed on.
    pub grid: GridSpec,
    pub window: Window,
    /// Global index of the window's cell `(0, 0)`.
    pub origin: (isize, isize),
    pub dt: f64,
    pub probes: Vec<ProbeSeries>,
    pub frames: Vec<Frame>,
    /// `max |p|, max |u|, max |v|` after every step.
    pub max_abs: Vec<[f64; 3]>,
}

fn frame(s: &FieldState, grid: &GridSpec, w: &Window) -> Frame {
    Frame {
        step: s.step_index,
        t: s.t,
        p: s.p.crop(w.i0, w.j0, w.nx, w.ny),
        u: s.u.crop(w.i0, w.j0, w.nx + 1, w.ny),
        v: s.v.crop(w.i0, w.j0, w.nx, w.ny + 1),
        vorticity: vorticity(s, grid).crop(w.i0, w.j0, w.nx + 1, w.ny + 1),
    }
}

fn corner_vorticity(s: &FieldState, grid: &GridSpec, (i, j): (usize, usize)) -> f64 {
    if i == 0 || j == 0 || i >= grid.nx || j >= grid.ny {
        return 0.0;
    }
    (s.v.at(i, j) - s.v.at(i - 1, j)) / grid.dx() - (s.u.at(i, j) - s.u.at(i, j - 1)) / grid.dy()
}

/// Executes a plan. Frames are taken at step 0 and every `snapshot_every`
/// steps; probes are sampled after every step.
pub fn run_plan(plan: &RunPlan) -> Result<RunOutput> {
    let stepper = Stepper::new(&plan.grid, &plan.flow, &plan.pml, plan.source)?.with_walls(plan.walls);
    let mut state = FieldState::zeros(plan.grid.nx, plan.grid.ny);
    let mut probes: Vec<ProbeSeries> = plan
        .probes
        .iter()
        .map(|n| ProbeSeries {
            location: n.location,
            samples: Vec::with_capacity(plan.steps),
        })
        .collect();
    let mut frames = Vec::new();
    let mut max_abs = Vec::with_capacity(plan.steps);
    if plan.snapshot_every > 0 {
        frames.push(frame(&state, &plan.grid, &plan.window));
    }
    for _ in 0..plan.steps {
        stepper.step(&mut state)?;
        max_abs.push([state.p.max_abs(), state.u.max_abs(), state.v.max_abs()]);
        for (series, n) in probes.iter_mut().zip(&plan.probes) {
            series.samples.push(ProbeSample {
                step: state.step_index,
                t: state.t,
                p: state.p.at(n.p.0, n.p.1),
                u: state.u.at(n.u.0, n.u.1),
                v: state.v.at(n.v.0, n.v.1),
                vorticity: corner_vorticity(&state, &plan.grid, n.corner),
            });
        }
        if plan.snapshot_every > 0 && state.step_index % plan.snapshot_every == 0 {
            frames.push(frame(&state, &plan.grid, &plan.window));
        }
    }
    Ok(RunOutput {
        grid: plan.grid,
        window: plan.window,
        origin: (
            plan.origin.0 + plan.window.i0 as isize,
            plan.origin.1 + plan.window.j0 as isize,
        ),
        dt: stepper.dt,
        probes,
        frames,
        max_abs,
    })
}

/// Runs a configuration on its own grid, with the whole grid as the window.
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput> {
    run_plan(&cfg.plan()?)
}

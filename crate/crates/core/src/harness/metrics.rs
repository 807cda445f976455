use super::ExperimentConfig;
use crate::error::{Error, Result};
use crate::solver::{Field2, Frame, RunOutput};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    P,
    U,
    V,
    Vorticity,
}

impl Variable {
    pub const ALL: [Variable; 4] = [Variable::P, Variable::U, Variable::V, Variable::Vorticity];

    pub fn name(self) -> &'static str {
        match self {
            Variable::P => "p",
            Variable::U => "u",
            Variable::V => "v",
            Variable::Vorticity => "vorticity",
        }
    }

    fn of(self, f: &Frame) -> &Field2 {
        match self {
            Variable::P => &f.p,
            Variable::U => &f.u,
            Variable::V => &f.v,
            Variable::Vorticity => &f.vorticity,
        }
    }

    /// Half-cell offsets of the node `(0, 0)` relative to a cell corner.
    fn offsets(self) -> (isize, isize) {
        match self {
            Variable::P => (1, 1),
            Variable::U => (0, 1),
            Variable::V => (1, 0),
            Variable::Vorticity => (0, 0),
        }
    }
}

/// Cells `[x.0, x.1) × [y.0, y.1)` in the global frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellBox {
    pub x: (isize, isize),
    pub y: (isize, isize),
}

impl CellBox {
    /// Closed box in half-cell coordinates, so faces and corners on its
    /// boundary count as inside.
    fn contains_half(&self, hx: isize, hy: isize) -> bool {
        2 * self.x.0 <= hx && hx <= 2 * self.x.1 && 2 * self.y.0 <= hy && hy <= 2 * self.y.1
    }
}

/// Where errors are measured. Nodes on the walls of the run being assessed
/// are always excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Inside(CellBox),
    Outside(CellBox),
    Whole,
}

impl Region {
    fn contains_half(&self, hx: isize, hy: isize) -> bool {
        match self {
            Region::Inside(b) => b.contains_half(hx, hy),
            Region::Outside(b) => !b.contains_half(hx, hy),
            Region::Whole => true,
        }
    }
}

/// Inclusive range of frame steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeWindow {
    pub first: usize,
    pub last: usize,
}

impl TimeWindow {
    pub fn all() -> Self {
        TimeWindow {
            first: 0,
            last: usize::MAX,
        }
    }
}

/// `100 ‖a − b‖₂ / ‖b‖₂` over the nodes of `run` inside `region` and the
/// frames inside `window`. Frames are matched by step and nodes by global
/// position; `reference` must cover every compared node.
pub fn relative_error(
    run: &RunOutput,
    reference: &RunOutput,
    var: Variable,
    region: Region,
    window: TimeWindow,
) -> Result<f64> {
    let (ox, oy) = var.offsets();
    let (mut num, mut den) = (0.0, 0.0);
    let mut any = false;
    for fa in run.frames.iter().filter(|f| f.step >= window.first && f.step <= window.last) {
        let fb = reference
            .frames
            .iter()
            .find(|f| f.step == fa.step)
            .ok_or(Error::DisjointRuns)?;
        let (a, b) = (var.of(fa), var.of(fb));
        let wall_x = (2 * run.origin.0, 2 * (run.origin.0 + run.window.nx as isize));
        let wall_y = (2 * run.origin.1, 2 * (run.origin.1 + run.window.ny as isize));
        for i in 0..a.nx {
            let hx = 2 * (run.origin.0 + i as isize) + ox;
            if hx == wall_x.0 || hx == wall_x.1 {
                continue;
            }
            for j in 0..a.ny {
                let hy = 2 * (run.origin.1 + j as isize) + oy;
                if hy == wall_y.0 || hy == wall_y.1 || !region.contains_half(hx, hy) {
                    continue;
                }
                let bi = run.origin.0 + i as isize - reference.origin.0;
                let bj = run.origin.1 + j as isize - reference.origin.1;
                if bi < 0 || bj < 0 || bi as usize >= b.nx || bj as usize >= b.ny {
                    return Err(Error::DisjointRuns);
                }
                let (x, y) = (a.at(i, j), b.at(bi as usize, bj as usize));
                num += (x - y) * (x - y);
                den += y * y;
                any = true;
            }
        }
    }
    if !any {
        return Err(Error::DisjointRuns);
    }
    if den == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok(100.0 * (num / den).sqrt())
}

/// Relative errors of one layer configuration, in percent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub n_delta: usize,
    pub sigma_pml: f64,
    pub p: f64,
    pub u: f64,
    pub v: f64,
    pub vorticity: f64,
    pub norm: &'static str,
}

pub const NORM_DESCRIPTOR: &str =
    "space-time discrete L2 over sampled frames; p,u,v on the physical region, vorticity on interior layer corners";

impl ErrorReport {
    pub fn get(&self, var: Variable) -> f64 {
        match var {
            Variable::P => self.p,
            Variable::U => self.u,
            Variable::V => self.v,
            Variable::Vorticity => self.vorticity,
        }
    }
}

/// Errors of `run` against `reference` for the layers of `cfg`.
pub fn error_report(cfg: &ExperimentConfig, run: &RunOutput, reference: &RunOutput) -> Result<ErrorReport> {
    let w = TimeWindow::all();
    let e = |var, region| relative_error(run, reference, var, region, w);
    Ok(ErrorReport {
        n_delta: cfg.pml.n_delta,
        sigma_pml: cfg.pml.sigma_pml,
        p: e(Variable::P, cfg.euler_region())?,
        u: e(Variable::U, cfg.euler_region())?,
        v: e(Variable::V, cfg.euler_region())?,
        vorticity: e(Variable::Vorticity, cfg.layer_region())?,
        norm: NORM_DESCRIPTOR,
    })
}

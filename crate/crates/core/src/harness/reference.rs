use super::ExperimentConfig;
use crate::error::{Error, Result};
use crate::params::{time_step, GridSpec, PmlConfig, Side};
use crate::solver::{run_plan, ProbeNodes, RunOutput, RunPlan, SourceNodes, Window};

/// Layer-free run on the enlarged domain together with its contamination
/// bound.
#[derive(Debug, Clone)]
pub struct ReferencePlan {
    pub plan: RunPlan,
    /// Extra cells on (x-min, x-max, y-min, y-max).
    pub pads: [usize; 4],
    /// Last step before a wave reflected by a padded wall can reach the
    /// footprint of the original grid.
    pub limit_steps: usize,
}

/// Builds the reference plan: every side that carries a layer is pushed
/// out so that the axis becomes `enlargement` times longer; walls without
/// layers stay where they are.
pub fn reference_plan(cfg: &ExperimentConfig) -> Result<ReferencePlan> {
    cfg.validate()?;
    let g = &cfg.grid;
    let pad_for = |n: usize| ((cfg.enlargement - 1.0) * n as f64 / 2.0).ceil() as usize;
    let pads = Side::ALL.map(|s| {
        if !cfg.pml.sides.contains(s) {
            0
        } else if matches!(s, Side::XMin | Side::XMax) {
            pad_for(g.nx)
        } else {
            pad_for(g.ny)
        }
    });
    let (dx, dy) = (g.dx(), g.dy());
    let nx = g.nx + pads[0] + pads[1];
    let ny = g.ny + pads[2] + pads[3];
    let grid = GridSpec {
        lx: nx as f64 * dx,
        ly: ny as f64 * dy,
        nx,
        ny,
        cfl: g.cfl,
    };
    let dt = time_step(&grid, &cfg.flow);

    // Source to padded wall and back to the footprint edge.
    let (sx, sy) = cfg.source.location;
    let dist = [
        sx + 2.0 * pads[0] as f64 * dx,
        (g.lx - sx) + 2.0 * pads[1] as f64 * dx,
        sy + 2.0 * pads[2] as f64 * dy,
        (g.ly - sy) + 2.0 * pads[3] as f64 * dy,
    ];
    let speed = cfg.flow.c_bar + cfg.flow.speed();
    let limit_steps = (0..4)
        .filter(|&k| pads[k] > 0)
        .map(|k| (dist[k] / speed / dt).floor() as usize)
        .min()
        .unwrap_or(usize::MAX);
    if cfg.horizon > limit_steps {
        return Err(Error::ReflectedContamination {
            limit_steps,
            horizon: cfg.horizon,
        });
    }

    let shift = (pads[0], pads[2]);
    let plan = RunPlan {
        flow: cfg.flow,
        grid,
        pml: PmlConfig::none(),
        walls: cfg.walls,
        source: Some(SourceNodes::nearest(g, &cfg.source).shifted(shift)),
        probes: cfg
            .probes
            .iter()
            .map(|&p| ProbeNodes::nearest(g, p).shifted(shift))
            .collect(),
        steps: cfg.horizon,
        snapshot_every: cfg.snapshot_every,
        window: Window {
            i0: pads[0],
            j0: pads[2],
            nx: g.nx,
            ny: g.ny,
        },
        origin: (
            cfg.origin().0 - pads[0] as isize,
            cfg.origin().1 - pads[2] as isize,
        ),
    };
    Ok(ReferencePlan {
        plan,
        pads,
        limit_steps,
    })
}

/// Runs the reference and returns it restricted to the original grid.
pub fn run_reference(cfg: &ExperimentConfig) -> Result<RunOutput> {
    run_plan(&reference_plan(cfg)?.plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_bound_holds() {
        let cfg = ExperimentConfig::desk_baseline();
        let r = reference_plan(&cfg).unwrap();
        assert_eq!(r.pads, [126; 4]);
        assert_eq!(r.plan.grid.nx, 378);
        assert!(r.limit_steps >= cfg.horizon, "{}", r.limit_steps);
        assert_eq!(r.plan.origin, (-38 - 126, -38 - 126));
    }

    #[test]
    fn long_horizon_is_contaminated() {
        let mut cfg = ExperimentConfig::desk_baseline();
        cfg.horizon = 5000;
        assert!(matches!(
            reference_plan(&cfg),
            Err(Error::ReflectedContamination { .. })
        ));
    }

    #[test]
    fn huge_enlargement_accepted() {
        let mut cfg = ExperimentConfig::desk_baseline();
        cfg.horizon = 2000;
        cfg.enlargement = 9.0;
        assert!(reference_plan(&cfg).is_ok());
    }
}

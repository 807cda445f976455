use std::fmt::Write as _;

use rayon::prelude::*;

use super::metrics::{error_report, ErrorReport, Variable};
use super::reference::{reference_plan, run_reference};
use super::ExperimentConfig;
use crate::error::{Error, Result};
use crate::params::FlowParams;
use crate::solver::{run, run_plan, RunOutput};

/// Layer parameters `(n_delta, sigma_pml)` of the table columns.
pub const TABLE1_CELLS: [(usize, f64); 6] = [
    (38, 40.0),
    (18, 40.0),
    (18, 80.0),
    (8, 40.0),
    (8, 80.0),
    (8, 160.0),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub n_delta: usize,
    pub sigma_pml: f64,
    pub report: Result<ErrorReport>,
}

/// Runs every cell against one shared reference, computed for the widest
/// layer (largest footprint). A failing cell is reported, not fatal.
pub fn table1_sweep(cfg: &ExperimentConfig, cells: &[(usize, f64)]) -> Result<Vec<SweepCell>> {
    let widest = cells.iter().map(|c| c.0).max().ok_or(Error::Config("no sweep cells".into()))?;
    let ref_cfg = cfg.with_layer(widest, cfg.pml.sigma_pml)?;
    let reference = run_reference(&ref_cfg)?;
    Ok(cells
        .par_iter()
        .map(|&(n_delta, sigma_pml)| SweepCell {
            n_delta,
            sigma_pml,
            report: sweep_cell(cfg, n_delta, sigma_pml, &reference),
        })
        .collect())
}

fn sweep_cell(cfg: &ExperimentConfig, n_delta: usize, sigma: f64, reference: &RunOutput) -> Result<ErrorReport> {
    let c = cfg.with_layer(n_delta, sigma)?;
    let out = run(&c)?;
    error_report(&c, &out, reference)
}

/// Table layout: one row per variable, one column per `(n_delta, sigma_pml)`
/// cell, values in percent. Failed cells print `nan` and their error appears
/// in the `status` row.
pub fn sweep_csv(flow: &FlowParams, cells: &[SweepCell]) -> String {
    let (mx, my) = flow.mach();
    let mut out = format!(
        "# table1 v1: mach_x={mx:.4} mach_y={my:.4}; rows=variable, columns=n_delta:sigma_pml, values=relative L2 error [%]\n"
    );
    out.push_str("variable");
    for c in cells {
        out.push_str(&format!(",{}:{}", c.n_delta, c.sigma_pml));
    }
    out.push('\n');
    for var in Variable::ALL {
        out.push_str(var.name());
        for c in cells {
            match &c.report {
                Ok(r) => out.push_str(&format!(",{:.6e}", r.get(var))),
                Err(_) => out.push_str(",nan"),
            }
        }
        out.push('\n');
    }
    out.push_str("status");
    for c in cells {
        match &c.report {
            Ok(_) => out.push_str(",ok"),
            Err(e) => out.push_str(&format!(",\"{e}\"")),
        }
    }
    out.push('\n');
    out
}

/// Block maxima of a long run and the verdict of the decay check.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityTrace {
    pub block: usize,
    /// `max |p|, |u|, |v|` over each block of steps.
    pub blocks: Vec<[f64; 3]>,
    /// First block that starts after the source is switched off.
    pub first_quiet_block: usize,
    pub first_quarter: [f64; 3],
    pub last_quarter: [f64; 3],
    pub passed: bool,
}

fn max3(b: &[[f64; 3]]) -> [f64; 3] {
    b.iter().fold([0.0f64; 3], |m, x| [m[0].max(x[0]), m[1].max(x[1]), m[2].max(x[2])])
}

pub const STABILITY_BLOCK: usize = 100;
pub const STABILITY_FACTOR: f64 = 1.05;

/// Runs `horizon · multiplier` steps and checks that, after the source
/// stops, the last quarter of block maxima stays within 5% of the first
/// quarter for each of p, u, v.
pub fn stability_probe(cfg: &ExperimentConfig, multiplier: usize) -> Result<StabilityTrace> {
    if multiplier == 0 {
        return Err(Error::Config("multiplier must be at least 1".into()));
    }
    let mut plan = cfg.plan()?;
    plan.steps = cfg.horizon * multiplier;
    plan.snapshot_every = 0;
    plan.probes.clear();
    let out = run_plan(&plan)?;
    let block = STABILITY_BLOCK;
    let blocks: Vec<[f64; 3]> = out.max_abs.chunks(block).map(max3).collect();
    // Steps are numbered from 1; block b holds steps b·block + 1 ..= (b+1)·block.
    let cutoff = (cfg.source.ts / out.dt).ceil() as usize;
    let first_quiet_block = cutoff.div_ceil(block);
    let quiet = &blocks[first_quiet_block.min(blocks.len())..];
    let q = (quiet.len() / 4).max(1);
    let (first_quarter, last_quarter) = if quiet.is_empty() {
        ([0.0; 3], [0.0; 3])
    } else {
        (max3(&quiet[..q]), max3(&quiet[quiet.len() - q..]))
    };
    let passed = (0..3).all(|k| last_quarter[k] <= STABILITY_FACTOR * first_quarter[k]);
    Ok(StabilityTrace {
        block,
        blocks,
        first_quiet_block,
        first_quarter,
        last_quarter,
        passed,
    })
}

/// Block maxima as CSV, one row per block, with the verdict in the schema
/// line.
pub fn stability_csv(flow: &FlowParams, t: &StabilityTrace) -> String {
    let (mx, my) = flow.mach();
    let mut out = format!(
        "# stability v1: mach_x={mx:.4} mach_y={my:.4} block={} first_quiet_block={} passed={}; block maxima of |p|,|u|,|v|\n\
         block,first_step,last_step,max_p,max_u,max_v\n",
        t.block, t.first_quiet_block, t.passed
    );
    for (b, m) in t.blocks.iter().enumerate() {
        let _ = writeln!(out, "{b},{},{},{:e},{:e},{:e}", b * t.block + 1, (b + 1) * t.block, m[0], m[1], m[2]);
    }
    out
}

/// Convenience check used by the CLI: reference contamination bound for a
/// configuration, in steps.
pub fn reference_limit(cfg: &ExperimentConfig) -> Result<usize> {
    Ok(reference_plan(cfg)?.limit_steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SourceTargets;

    #[test]
    fn silent_source_is_trivially_stable() {
        let mut cfg = ExperimentConfig::desk_baseline().with_layer(8, 40.0).unwrap();
        cfg.source.targets = SourceTargets::none();
        cfg.horizon = 100;
        let t = stability_probe(&cfg, 5).unwrap();
        assert!(t.passed);
        assert!(t.blocks.iter().all(|b| *b == [0.0; 3]));
        let csv = stability_csv(&cfg.flow, &t);
        assert!(csv.starts_with("# stability v1:"));
        assert_eq!(csv.lines().count(), 2 + t.blocks.len());
    }

    #[test]
    fn csv_layout() {
        let cells = vec![
            SweepCell {
                n_delta: 38,
                sigma_pml: 40.0,
                report: Ok(ErrorReport {
                    n_delta: 38,
                    sigma_pml: 40.0,
                    p: 0.1,
                    u: 0.2,
                    v: 0.3,
                    vorticity: 1e-14,
                    norm: "",
                }),
            },
            SweepCell {
                n_delta: 8,
                sigma_pml: 40.0,
                report: Err(Error::UnstableState { step: 3, max: 1e13 }),
            },
        ];
        let flow = FlowParams::new(200.0, 100.0, 1.0, 300.0).unwrap();
        let csv = sweep_csv(&flow, &cells);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# table1 v1: mach_x=0.6667 mach_y=0.3333;"));
        assert_eq!(lines[1], "variable,38:40,8:40");
        assert_eq!(lines[2], "p,1.000000e-1,nan");
        assert_eq!(lines.len(), 7);
    }
}

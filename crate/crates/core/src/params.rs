//! Shared parameter types: background flow, Fourier points, grids, layers and
//! the point source, together with the small amount of arithmetic every other
//! module needs (damping profile, Ricker forcing, stable time step).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constant subsonic background state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowParams {
    pub u_bar: f64,
    pub v_bar: f64,
    pub rho_bar: f64,
    pub c_bar: f64,
}

/// What the flow is going to be used for. Mode analysis divides by `u_bar`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowUse {
    TimeDomain,
    ModeAnalysis,
}

impl FlowParams {
    pub fn new(u_bar: f64, v_bar: f64, rho_bar: f64, c_bar: f64) -> Result<Self> {
        validate_flow(
            FlowParams {
                u_bar,
                v_bar,
                rho_bar,
                c_bar,
            },
            FlowUse::TimeDomain,
        )
    }

    /// Mach numbers (u/c, v/c).
    pub fn mach(&self) -> (f64, f64) {
        (self.u_bar / self.c_bar, self.v_bar / self.c_bar)
    }

    pub fn speed(&self) -> f64 {
        self.u_bar.hypot(self.v_bar)
    }

    /// `c² − u²`, positive for subsonic flows.
    pub fn beta_x(&self) -> f64 {
        self.c_bar * self.c_bar - self.u_bar * self.u_bar
    }

    /// `c² − v²`.
    pub fn beta_y(&self) -> f64 {
        self.c_bar * self.c_bar - self.v_bar * self.v_bar
    }

    pub fn aux_constants(&self) -> PmlAuxConstants {
        PmlAuxConstants {
            mu_x: self.u_bar / self.beta_x(),
            mu_y: self.v_bar / self.beta_y(),
        }
    }
}

/// Returns the parameters unchanged when they describe a valid background state.
pub fn validate_flow(params: FlowParams, usage: FlowUse) -> Result<FlowParams> {
    let FlowParams {
        u_bar,
        v_bar,
        rho_bar,
        c_bar,
    } = params;
    if !(rho_bar > 0.0 && c_bar > 0.0) || !rho_bar.is_finite() || !c_bar.is_finite() {
        return Err(Error::NonpositiveDensityOrSound {
            rho: rho_bar,
            c: c_bar,
        });
    }
    let speed2 = u_bar * u_bar + v_bar * v_bar;
    if !(speed2 < c_bar * c_bar) {
        return Err(Error::SupersonicFlow {
            speed2,
            c2: c_bar * c_bar,
        });
    }
    if usage == FlowUse::ModeAnalysis && u_bar == 0.0 {
        return Err(Error::ZeroNormalVelocity);
    }
    Ok(params)
}

/// Coefficients `ū/(c̄²−ū²)` and `v̄/(c̄²−v̄²)` of the shifted layer derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmlAuxConstants {
    pub mu_x: f64,
    pub mu_y: f64,
}

/// Dual variables of `t` and `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierPoint {
    pub omega: f64,
    pub k: f64,
}

impl FourierPoint {
    pub fn new(omega: f64, k: f64) -> Self {
        FourierPoint { omega, k }
    }

    /// Doppler-shifted frequency `ω + k v̄`.
    pub fn shifted(&self, flow: &FlowParams) -> f64 {
        self.omega + self.k * flow.v_bar
    }
}

/// Uniform grid covering `[0, lx] × [0, ly]` with `nx × ny` cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lx: f64,
    pub ly: f64,
    pub nx: usize,
    pub ny: usize,
    pub cfl: f64,
}

impl GridSpec {
    pub fn new(lx: f64, ly: f64, nx: usize, ny: usize, cfl: f64) -> Result<Self> {
        let g = GridSpec { lx, ly, nx, ny, cfl };
        g.validate()?;
        Ok(g)
    }

    /// Grid with spacing `h` in both directions.
    pub fn square_cells(nx: usize, ny: usize, h: f64, cfl: f64) -> Result<Self> {
        GridSpec::new(nx as f64 * h, ny as f64 * h, nx, ny, cfl)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_geometry()?;
        if !(self.cfl < 1.0) {
            return Err(Error::InvalidGrid(format!(
                "cfl must lie in (0, 1), got {}",
                self.cfl
            )));
        }
        Ok(())
    }

    /// Checks counts, extents and a positive Courant number, accepting
    /// `cfl ≥ 1`.
    pub fn validate_geometry(&self) -> Result<()> {
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::InvalidGrid("cell counts must be positive".into()));
        }
        if !(self.lx > 0.0 && self.ly > 0.0) {
            return Err(Error::InvalidGrid("extents must be positive".into()));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(Error::InvalidGrid(format!("cfl must be positive, got {}", self.cfl)));
        }
        Ok(())
    }

    /// Replaces the Courant number without the `(0, 1)` check. Only useful
    /// for negative stability controls.
    pub fn with_unchecked_cfl(mut self, cfl: f64) -> Self {
        self.cfl = cfl;
        self
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.ly / self.ny as f64
    }
}

/// `dt = cfl · min(dx, dy) / (c̄ + max(|ū|, |v̄|))`.
pub fn time_step(grid: &GridSpec, flow: &FlowParams) -> f64 {
    let h = grid.dx().min(grid.dy());
    grid.cfl * h / (flow.c_bar + flow.u_bar.abs().max(flow.v_bar.abs()))
}

/// One side of the rectangular domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    XMin,
    XMax,
    YMin,
    YMax,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::XMin, Side::XMax, Side::YMin, Side::YMax];

    pub fn name(self) -> &'static str {
        match self {
            Side::XMin => "x-min",
            Side::XMax => "x-max",
            Side::YMin => "y-min",
            Side::YMax => "y-max",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        Side::ALL.into_iter().find(|side| side.name() == s)
    }
}

/// Set of sides carrying an absorbing layer. Serialized as a list of side names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<Side>", from = "Vec<Side>")]
pub struct SideSet {
    bits: u8,
}

impl SideSet {
    pub fn empty() -> Self {
        SideSet { bits: 0 }
    }

    pub fn all() -> Self {
        SideSet { bits: 0b1111 }
    }

    pub fn from_sides(sides: &[Side]) -> Self {
        let mut set = SideSet::empty();
        for &s in sides {
            set.insert(s);
        }
        set
    }

    fn bit(side: Side) -> u8 {
        match side {
            Side::XMin => 1,
            Side::XMax => 2,
            Side::YMin => 4,
            Side::YMax => 8,
        }
    }

    pub fn insert(&mut self, side: Side) {
        self.bits |= Self::bit(side);
    }

    pub fn contains(&self, side: Side) -> bool {
        self.bits & Self::bit(side) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn has_x(&self) -> bool {
        self.contains(Side::XMin) || self.contains(Side::XMax)
    }

    pub fn has_y(&self) -> bool {
        self.contains(Side::YMin) || self.contains(Side::YMax)
    }

    pub fn iter(&self) -> impl Iterator<Item = Side> + '_ {
        Side::ALL.into_iter().filter(|s| self.contains(*s))
    }
}

impl From<SideSet> for Vec<Side> {
    fn from(s: SideSet) -> Self {
        s.iter().collect()
    }
}

impl From<Vec<Side>> for SideSet {
    fn from(v: Vec<Side>) -> Self {
        SideSet::from_sides(&v)
    }
}

/// Condition at the outer edge of the grid along one axis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// All variables vanish outside the grid; the boundary faces are unknowns.
    #[default]
    Dirichlet,
    /// Zero normal velocity on the boundary faces, tangential values copied
    /// outward.
    RigidWall,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walls {
    #[serde(default)]
    pub x: Boundary,
    #[serde(default)]
    pub y: Boundary,
}

/// Which layer corrections act where an x-layer and a y-layer overlap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CornerRule {
    /// The axis with the smaller normal flow speed owns the corner; ties go
    /// to x.
    #[default]
    Auto,
    XOwns,
    YOwns,
    /// Both corrections at once. Unstable for any nonzero mean flow.
    Overlap,
}

impl CornerRule {
    /// `(x active, y active)` in overlap cells for this flow.
    pub fn active(self, flow: &FlowParams) -> (bool, bool) {
        match self {
            CornerRule::Auto if flow.v_bar.abs() < flow.u_bar.abs() => (false, true),
            CornerRule::Auto | CornerRule::XOwns => (true, false),
            CornerRule::YOwns => (false, true),
            CornerRule::Overlap => (true, true),
        }
    }
}

/// Absorbing layer settings with the quadratic profile `σ(s) = σ_pml s²/δ³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PmlConfig {
    pub sides: SideSet,
    pub delta: f64,
    pub n_delta: usize,
    pub sigma_pml: f64,
    #[serde(default)]
    pub corners: CornerRule,
}

impl PmlConfig {
    /// Layer of `n_delta` cells of width `spacing` each.
    pub fn new(sides: SideSet, n_delta: usize, sigma_pml: f64, spacing: f64) -> Result<Self> {
        let cfg = PmlConfig {
            sides,
            delta: n_delta as f64 * spacing,
            n_delta,
            sigma_pml,
            corners: CornerRule::Auto,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn none() -> Self {
        PmlConfig {
            sides: SideSet::empty(),
            delta: 0.0,
            n_delta: 0,
            sigma_pml: 0.0,
            corners: CornerRule::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_pml >= 0.0) || !self.sigma_pml.is_finite() {
            return Err(Error::InvalidLayer(format!(
                "sigma_pml must be a finite non-negative number, got {}",
                self.sigma_pml
            )));
        }
        if !self.sides.is_empty() && (self.n_delta == 0 || !(self.delta > 0.0)) {
            return Err(Error::InvalidLayer(
                "active layers need a positive width".into(),
            ));
        }
        Ok(())
    }
}

/// Damping value `σ_pml · depth² / δ³` at `depth` into the layer.
pub fn sigma_profile(cfg: &PmlConfig, depth: f64) -> Result<f64> {
    if !(depth >= 0.0 && depth <= cfg.delta) {
        return Err(Error::OutOfLayer {
            depth,
            delta: cfg.delta,
        });
    }
    Ok(cfg.sigma_pml * depth * depth / (cfg.delta * cfg.delta * cfg.delta))
}

/// Which equations receive the point forcing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceTargets {
    pub p: bool,
    pub u: bool,
    pub v: bool,
}

impl SourceTargets {
    pub fn all() -> Self {
        SourceTargets {
            p: true,
            u: true,
            v: true,
        }
    }

    pub fn pressure_only() -> Self {
        SourceTargets {
            p: true,
            u: false,
            v: false,
        }
    }

    pub fn none() -> Self {
        SourceTargets {
            p: false,
            u: false,
            v: false,
        }
    }
}

/// Ricker point source switched off at `ts`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    pub fc: f64,
    pub ts: f64,
    pub location: (f64, f64),
    pub targets: SourceTargets,
}

impl SourceSpec {
    /// `ts = 0.05`, `fc = 4/ts`.
    pub fn ricker_default(location: (f64, f64)) -> Self {
        let ts = 0.05;
        SourceSpec {
            fc: 4.0 / ts,
            ts,
            location,
            targets: SourceTargets::all(),
        }
    }
}

/// Temporal factor of the forcing; the Dirac factor is applied by the solver.
pub fn source_value(src: &SourceSpec, t: f64) -> f64 {
    if t >= src.ts {
        return 0.0;
    }
    let a = PI * PI * (src.fc * t - 1.0).powi(2);
    (1.0 - 2.0 * a) * (-a).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_reference_flow() {
        let p = FlowParams {
            u_bar: 200.0,
            v_bar: 100.0,
            rho_bar: 1.0,
            c_bar: 300.0,
        };
        assert_eq!(validate_flow(p, FlowUse::ModeAnalysis), Ok(p));
        let (mx, my) = p.mach();
        assert!((mx - 2.0 / 3.0).abs() < 1e-15 && (my - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_flows() {
        let still = FlowParams {
            u_bar: 0.0,
            v_bar: 0.0,
            rho_bar: 1.0,
            c_bar: 1.0,
        };
        assert_eq!(
            validate_flow(still, FlowUse::ModeAnalysis),
            Err(Error::ZeroNormalVelocity)
        );
        assert!(validate_flow(still, FlowUse::TimeDomain).is_ok());
        let fast = FlowParams {
            u_bar: 300.0,
            v_bar: 100.0,
            rho_bar: 1.0,
            c_bar: 300.0,
        };
        assert!(matches!(
            validate_flow(fast, FlowUse::TimeDomain),
            Err(Error::SupersonicFlow { .. })
        ));
        let thin = FlowParams {
            rho_bar: 0.0,
            ..still
        };
        assert!(matches!(
            validate_flow(thin, FlowUse::TimeDomain),
            Err(Error::NonpositiveDensityOrSound { .. })
        ));
    }

    #[test]
    fn validation_is_idempotent() {
        let p = FlowParams::new(10.0, -3.0, 1.2, 340.0).unwrap();
        let once = validate_flow(p, FlowUse::ModeAnalysis).unwrap();
        assert_eq!(validate_flow(once, FlowUse::ModeAnalysis).unwrap(), once);
    }

    #[test]
    fn sigma_profile_values() {
        let layer = |delta: f64, sigma_pml: f64| PmlConfig {
            sides: SideSet::all(),
            delta,
            n_delta: 1,
            sigma_pml,
            corners: CornerRule::Auto,
        };
        assert_eq!(sigma_profile(&layer(0.9, 40.0), 0.0).unwrap(), 0.0);
        let v = sigma_profile(&layer(0.9, 40.0), 0.9).unwrap();
        assert!((v - 40.0 * 0.81 / 0.729).abs() < 1e-12);
        assert!((v - 44.4444).abs() < 1e-4);
        assert_eq!(sigma_profile(&layer(1.0, 1.0), 0.5).unwrap(), 0.25);
        assert!(matches!(
            sigma_profile(&layer(1.0, 1.0), 1.5),
            Err(Error::OutOfLayer { .. })
        ));
        assert!(sigma_profile(&layer(1.0, 1.0), -0.1).is_err());
    }

    #[test]
    fn sigma_profile_scaling() {
        let base = PmlConfig {
            sides: SideSet::all(),
            delta: 0.7,
            n_delta: 7,
            sigma_pml: 3.0,
            corners: CornerRule::Auto,
        };
        let doubled = PmlConfig {
            sigma_pml: 6.0,
            ..base
        };
        for i in 0..=20 {
            let d = 0.7 * i as f64 / 20.0;
            let s = sigma_profile(&base, d).unwrap();
            assert!((sigma_profile(&doubled, d).unwrap() - 2.0 * s).abs() < 1e-12);
            if 2.0 * d <= 0.7 {
                let s2 = sigma_profile(&base, 2.0 * d).unwrap();
                assert!((s2 - 4.0 * s).abs() < 1e-12 * s2.max(1.0));
            }
        }
    }

    #[test]
    fn ricker_values() {
        let src = SourceSpec::ricker_default((0.0, 0.0));
        assert_eq!(src.fc, 80.0);
        assert!((source_value(&src, 1.0 / src.fc) - 1.0).abs() < 1e-15);
        let pi2 = PI * PI;
        assert!((source_value(&src, 0.0) - (1.0 - 2.0 * pi2) * (-pi2).exp()).abs() < 1e-15);
        assert_eq!(source_value(&src, 0.05), 0.0);
        assert_eq!(source_value(&src, 0.05 + 1e-12), 0.0);
        assert_eq!(source_value(&src, 1.0), 0.0);
    }

    #[test]
    fn time_step_rule() {
        let g = GridSpec::square_cells(10, 10, 0.024, 0.3).unwrap();
        let f = FlowParams::new(200.0, 100.0, 1.0, 300.0).unwrap();
        assert!((time_step(&g, &f) - 0.3 * 0.024 / 500.0).abs() < 1e-18);
        assert!(GridSpec::new(1.0, 1.0, 4, 4, 1.5).is_err());
    }
}

use super::field::Field2;
use super::region::RegionMap;
use crate::error::{Error, Result};
use crate::params::{source_value, time_step, Boundary, FlowParams, GridSpec, PmlConfig, SourceSpec, Walls};

/// Magnitude beyond which a run is declared unstable.
pub const BLOWUP: f64 = 1e12;

/// Staggered unknowns. `p` and `p_aux` (the transported pressure 𝒫 with
/// `𝒢𝒫 = p`) live at cell centers, `u` on x-faces, `v` on y-faces.
///
/// `dpx` holds `(∂x^pml − ∂x)𝒫` on x-faces and `dpx2` holds
/// `(∂x^pml − ∂x)(∂x^pml 𝒫)` at centers; `dpy`, `dpy2` are the y analogues
/// on y-faces and centers. All layer fields vanish outside the layers.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub p: Field2,
    pub u: Field2,
    pub v: Field2,
    pub p_aux: Field2,
    pub dpx: Field2,
    pub dpx2: Field2,
    pub dpy: Field2,
    pub dpy2: Field2,
    pub step_index: usize,
    pub t: f64,
}

impl FieldState {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        FieldState {
            p: Field2::zeros(nx, ny),
            u: Field2::zeros(nx + 1, ny),
            v: Field2::zeros(nx, ny + 1),
            p_aux: Field2::zeros(nx, ny),
            dpx: Field2::zeros(nx + 1, ny),
            dpx2: Field2::zeros(nx, ny),
            dpy: Field2::zeros(nx, ny + 1),
            dpy2: Field2::zeros(nx, ny),
            step_index: 0,
            t: 0.0,
        }
    }

    /// Largest magnitude over all fields and whether everything is finite.
    pub fn health(&self) -> (f64, bool) {
        let fields = [
            &self.p, &self.u, &self.v, &self.p_aux, &self.dpx, &self.dpx2, &self.dpy, &self.dpy2,
        ];
        let max = fields.iter().map(|f| f.max_abs()).fold(0.0, f64::max);
        (max, fields.iter().all(|f| f.all_finite()))
    }
}

/// Zero fields and the layer map for a grid.
pub fn init_state(grid: &GridSpec, pml: &PmlConfig) -> Result<(FieldState, RegionMap)> {
    let region = RegionMap::new(grid, pml)?;
    Ok((FieldState::zeros(grid.nx, grid.ny), region))
}

/// Grid nodes receiving the point forcing, one per staggered location.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceNodes {
    pub spec: SourceSpec,
    pub p: (usize, usize),
    pub u: (usize, usize),
    pub v: (usize, usize),
    /// Discrete Dirac weight `1/(dx·dy)`.
    pub weight: f64,
}

fn nearest(x: f64, h: f64, offset: f64, lo: usize, hi: usize) -> usize {
    let k = (x / h - offset).round();
    (k.max(lo as f64) as usize).min(hi)
}

impl SourceNodes {
    /// Nearest pressure node, x-face and y-face to the source location.
    pub fn nearest(grid: &GridSpec, spec: &SourceSpec) -> Self {
        let (x, y) = spec.location;
        let (dx, dy) = (grid.dx(), grid.dy());
        let (nx, ny) = (grid.nx, grid.ny);
        SourceNodes {
            spec: *spec,
            p: (nearest(x, dx, 0.5, 0, nx - 1), nearest(y, dy, 0.5, 0, ny - 1)),
            u: (nearest(x, dx, 0.0, 1, nx - 1), nearest(y, dy, 0.5, 0, ny - 1)),
            v: (nearest(x, dx, 0.5, 0, nx - 1), nearest(y, dy, 0.0, 1, ny - 1)),
            weight: 1.0 / (dx * dy),
        }
    }

    /// Same nodes on a grid whose cell `(0, 0)` sits at `shift` cells.
    pub fn shifted(&self, shift: (usize, usize)) -> Self {
        let s = |(i, j): (usize, usize)| (i + shift.0, j + shift.1);
        SourceNodes {
            p: s(self.p),
            u: s(self.u),
            v: s(self.v),
            ..*self
        }
    }
}

/// Precomputed coefficients for repeated steps on one grid.
#[derive(Debug, Clone)]
pub struct Stepper {
    pub grid: GridSpec,
    pub flow: FlowParams,
    pub region: RegionMap,
    pub dt: f64,
    pub source: Option<SourceNodes>,
    pub walls: Walls,
    /// Whether the x and y corrections act in corner cells.
    corner_on: (bool, bool),
    ex_face: Vec<f64>,
    ex_center: Vec<f64>,
    ey_face: Vec<f64>,
    ey_center: Vec<f64>,
}

/// `e^{−κ dt}` with `κ = (c̄² − w²)σ/c̄`.
fn decay(sigma: &[f64], beta: f64, c: f64, dt: f64) -> Vec<f64> {
    sigma.iter().map(|s| (-(beta * s / c) * dt).exp()).collect()
}

/// Upwind difference of `f` along x at `(i, j)` for transport speed `w`,
/// reading outside points through `get`.
#[inline]
fn up_x(get: impl Fn(isize, isize) -> f64, i: usize, j: usize, w: f64, h: f64) -> f64 {
    let (i, j) = (i as isize, j as isize);
    if w >= 0.0 {
        (get(i, j) - get(i - 1, j)) / h
    } else {
        (get(i + 1, j) - get(i, j)) / h
    }
}

#[inline]
fn up_y(get: impl Fn(isize, isize) -> f64, i: usize, j: usize, w: f64, h: f64) -> f64 {
    let (i, j) = (i as isize, j as isize);
    if w >= 0.0 {
        (get(i, j) - get(i, j - 1)) / h
    } else {
        (get(i, j + 1) - get(i, j)) / h
    }
}

/// One exponential-integrator step of `(∂t + w∂)d = −κ(d + g)` on one array,
/// with upwind transport along `axis` (0 = x, 1 = y). `decay_of(i, j)` is
/// `e^{−κ dt}`; entries with decay 1 (no damping) are left untouched.
#[allow(clippy::too_many_arguments)]
fn aux_update(
    d: &Field2,
    g: &Field2,
    decay_of: impl Fn(usize, usize) -> f64,
    axis: usize,
    w: f64,
    h: f64,
    dt: f64,
) -> Field2 {
    let mut out = d.clone();
    for i in 0..d.nx {
        for j in 0..d.ny {
            let e = decay_of(i, j);
            if e == 1.0 {
                continue;
            }
            let get = |a: isize, b: isize| d.get_or_zero(a, b);
            let tr = if axis == 0 { up_x(get, i, j, w, h) } else { up_y(get, i, j, w, h) };
            let x = e * (d.at(i, j) - dt * w * tr) + (e - 1.0) * g.at(i, j);
            out.set(i, j, x);
        }
    }
    out
}

/// Advances `d = (∂x^pml − ∂x)φ` on x-faces by one step.
///
/// `d` solves `(∂t + v̄∂y)d = −κ(d + g)` with `κ = (c̄²−ū²)σ/c̄` and
/// `g = ∂xφ − μ(∂t + v̄∂y)φ`, `μ = ū/(c̄²−ū²)`. `g` is centred between the
/// two time levels of φ (cell-centred, `nx × ny`) and the damping is
/// integrated exactly. `sigma_face` has one entry per x-face.
pub fn dx_pml_aux_update(
    dpx: &Field2,
    phi_old: &Field2,
    phi_new: &Field2,
    sigma_face: &[f64],
    flow: &FlowParams,
    grid: &GridSpec,
    dt: f64,
) -> Field2 {
    let ex = decay(sigma_face, flow.beta_x(), flow.c_bar, dt);
    let g = x_face_forcing(phi_old, phi_new, &ex, flow, grid, dt);
    aux_update(dpx, &g, |i, _| ex[i], 1, flow.v_bar, grid.dy(), dt)
}

/// `g = ∂xφ − μ(∂t + v̄∂y)φ` on x-faces where the decay is active.
fn x_face_forcing(
    old: &Field2,
    new: &Field2,
    ex: &[f64],
    flow: &FlowParams,
    grid: &GridSpec,
    dt: f64,
) -> Field2 {
    let (nx, ny) = (old.nx, old.ny);
    let (dx, dy) = (grid.dx(), grid.dy());
    let mu = flow.u_bar / flow.beta_x();
    let vb = flow.v_bar;
    let mut g = Field2::zeros(nx + 1, ny);
    for (i, &e) in ex.iter().enumerate() {
        if e == 1.0 {
            continue;
        }
        for j in 0..ny {
            let (l, r) = (i as isize - 1, i as isize);
            let jj = j as isize;
            let ddx = 0.5
                * ((new.get_or_zero(r, jj) - new.get_or_zero(l, jj))
                    + (old.get_or_zero(r, jj) - old.get_or_zero(l, jj)))
                / dx;
            let dtp = 0.5
                * ((new.get_or_zero(l, jj) - old.get_or_zero(l, jj))
                    + (new.get_or_zero(r, jj) - old.get_or_zero(r, jj)))
                / dt;
            let get = |a: isize, b: isize| old.get_or_zero(a, b);
            let mut dyp = 0.0;
            if vb != 0.0 {
                if l >= 0 {
                    dyp += up_y(get, l as usize, j, vb, dy);
                }
                if (r as usize) < nx {
                    dyp += up_y(get, r as usize, j, vb, dy);
                }
                dyp *= 0.5;
            }
            g.set(i, j, ddx - mu * (dtp + vb * dyp));
        }
    }
    g
}

/// `g = ∂yφ − μ_y(∂t + ū∂x)φ` on y-faces where the decay is active.
fn y_face_forcing(
    old: &Field2,
    new: &Field2,
    ey: &[f64],
    flow: &FlowParams,
    grid: &GridSpec,
    dt: f64,
) -> Field2 {
    let (nx, ny) = (old.nx, old.ny);
    let (dx, dy) = (grid.dx(), grid.dy());
    let mu = flow.v_bar / flow.beta_y();
    let ub = flow.u_bar;
    let mut g = Field2::zeros(nx, ny + 1);
    for (j, &e) in ey.iter().enumerate() {
        if e == 1.0 {
            continue;
        }
        for i in 0..nx {
            let (b, t) = (j as isize - 1, j as isize);
            let ii = i as isize;
            let ddy = 0.5
                * ((new.get_or_zero(ii, t) - new.get_or_zero(ii, b))
                    + (old.get_or_zero(ii, t) - old.get_or_zero(ii, b)))
                / dy;
            let dtp = 0.5
                * ((new.get_or_zero(ii, b) - old.get_or_zero(ii, b))
                    + (new.get_or_zero(ii, t) - old.get_or_zero(ii, t)))
                / dt;
            let get = |a: isize, c: isize| old.get_or_zero(a, c);
            let mut dxp = 0.0;
            if ub != 0.0 {
                if b >= 0 {
                    dxp += up_x(get, i, b as usize, ub, dx);
                }
                if (t as usize) < ny {
                    dxp += up_x(get, i, t as usize, ub, dx);
                }
                dxp *= 0.5;
            }
            g.set(i, j, ddy - mu * (dtp + ub * dxp));
        }
    }
    g
}

/// `∂x^pml φ = ∂xφ + d` on x-faces, copied from the neighbouring face on
/// the walls.
fn x_face_total(phi: &Field2, d: &Field2, dx: f64) -> Field2 {
    let nx = phi.nx;
    Field2::from_fn(nx + 1, phi.ny, |i, j| {
        let f = i.clamp(1, nx - 1);
        (phi.at(f, j) - phi.at(f - 1, j)) / dx + d.at(f, j)
    })
}

fn y_face_total(phi: &Field2, d: &Field2, dy: f64) -> Field2 {
    let ny = phi.ny;
    Field2::from_fn(phi.nx, ny + 1, |i, j| {
        let f = j.clamp(1, ny - 1);
        (phi.at(i, f) - phi.at(i, f - 1)) / dy + d.at(i, f)
    })
}

/// Copies the first interior face onto each wall face.
fn extend_x_faces(d: &mut Field2) {
    let n = d.nx - 1;
    for j in 0..d.ny {
        d.set(0, j, d.at(1, j));
        d.set(n, j, d.at(n - 1, j));
    }
}

fn extend_y_faces(d: &mut Field2) {
    let n = d.ny - 1;
    for i in 0..d.nx {
        d.set(i, 0, d.at(i, 1));
        d.set(i, n, d.at(i, n - 1));
    }
}

/// `g = ∂xq − μ(∂t + v̄∂y)q` at centers for an x-face quantity `q`.
fn x_center_forcing(
    old: &Field2,
    new: &Field2,
    ex: &[f64],
    flow: &FlowParams,
    grid: &GridSpec,
    dt: f64,
) -> Field2 {
    let (nx, ny) = (old.nx - 1, old.ny);
    let (dx, dy) = (grid.dx(), grid.dy());
    let mu = flow.u_bar / flow.beta_x();
    let vb = flow.v_bar;
    let avg_old = Field2::from_fn(nx, ny, |i, j| 0.5 * (old.at(i, j) + old.at(i + 1, j)));
    let mut g = Field2::zeros(nx, ny);
    for (i, &e) in ex.iter().enumerate() {
        if e == 1.0 {
            continue;
        }
        for j in 0..ny {
            let ddx = 0.5 * ((new.at(i + 1, j) - new.at(i, j)) + (old.at(i + 1, j) - old.at(i, j))) / dx;
            let avg_new = 0.5 * (new.at(i, j) + new.at(i + 1, j));
            let dtq = (avg_new - avg_old.at(i, j)) / dt;
            let dyq = if vb != 0.0 {
                up_y(|a, b| avg_old.get_or_zero(a, b), i, j, vb, dy)
            } else {
                0.0
            };
            g.set(i, j, ddx - mu * (dtq + vb * dyq));
        }
    }
    g
}

fn y_center_forcing(
    old: &Field2,
    new: &Field2,
    ey: &[f64],
    flow: &FlowParams,
    grid: &GridSpec,
    dt: f64,
) -> Field2 {
    let (nx, ny) = (old.nx, old.ny - 1);
    let (dx, dy) = (grid.dx(), grid.dy());
    let mu = flow.v_bar / flow.beta_y();
    let ub = flow.u_bar;
    let avg_old = Field2::from_fn(nx, ny, |i, j| 0.5 * (old.at(i, j) + old.at(i, j + 1)));
    let mut g = Field2::zeros(nx, ny);
    for (j, &e) in ey.iter().enumerate() {
        if e == 1.0 {
            continue;
        }
        for i in 0..nx {
            let ddy = 0.5 * ((new.at(i, j + 1) - new.at(i, j)) + (old.at(i, j + 1) - old.at(i, j))) / dy;
            let avg_new = 0.5 * (new.at(i, j) + new.at(i, j + 1));
            let dtq = (avg_new - avg_old.at(i, j)) / dt;
            let dxq = if ub != 0.0 {
                up_x(|a, b| avg_old.get_or_zero(a, b), i, j, ub, dx)
            } else {
                0.0
            };
            g.set(i, j, ddy - mu * (dtq + ub * dxq));
        }
    }
    g
}

impl Stepper {
    pub fn new(
        grid: &GridSpec,
        flow: &FlowParams,
        pml: &PmlConfig,
        source: Option<SourceNodes>,
    ) -> Result<Self> {
        Self::with_region(grid, flow, RegionMap::new(grid, pml)?, source)
    }

    pub fn with_region(
        grid: &GridSpec,
        flow: &FlowParams,
        region: RegionMap,
        source: Option<SourceNodes>,
    ) -> Result<Self> {
        let flow = FlowParams::new(flow.u_bar, flow.v_bar, flow.rho_bar, flow.c_bar)?;
        let dt = time_step(grid, &flow);
        let c = flow.c_bar;
        // Boundary faces keep their auxiliary fields at zero and see no normal
        // derivative of 𝒫.
        let mut ex_face = decay(&region.sigma_x_face, flow.beta_x(), c, dt);
        let mut ey_face = decay(&region.sigma_y_face, flow.beta_y(), c, dt);
        ex_face[0] = 1.0;
        ex_face[grid.nx] = 1.0;
        ey_face[0] = 1.0;
        ey_face[grid.ny] = 1.0;
        Ok(Stepper {
            grid: *grid,
            flow,
            dt,
            source,
            walls: Walls::default(),
            corner_on: region.corners.active(&flow),
            ex_face,
            ex_center: decay(&region.sigma_x_center, flow.beta_x(), c, dt),
            ey_face,
            ey_center: decay(&region.sigma_y_center, flow.beta_y(), c, dt),
            region,
        })
    }

    pub fn with_walls(mut self, walls: Walls) -> Self {
        self.walls = walls;
        self
    }

    /// x correction active at a point with these damping values.
    fn x_on(&self, sy: f64) -> bool {
        self.corner_on.0 || sy == 0.0
    }

    fn y_on(&self, sx: f64) -> bool {
        self.corner_on.1 || sx == 0.0
    }

    /// Value of a velocity array at `(a, b)`, possibly outside the array.
    fn ghost(&self, f: &Field2, a: isize, b: isize) -> f64 {
        let out_x = a < 0 || a >= f.nx as isize;
        let out_y = b < 0 || b >= f.ny as isize;
        if (out_x && self.walls.x == Boundary::Dirichlet) || (out_y && self.walls.y == Boundary::Dirichlet) {
            0.0
        } else {
            f.get_clamped(a, b)
        }
    }

    /// Advances the state by one time step.
    pub fn step(&self, s: &mut FieldState) -> Result<()> {
        let (nx, ny) = (self.grid.nx, self.grid.ny);
        let (dx, dy, dt) = (self.grid.dx(), self.grid.dy(), self.dt);
        let FlowParams {
            u_bar: ub,
            v_bar: vb,
            rho_bar: rho,
            c_bar: c,
        } = self.flow;
        let rc2 = rho * c * c;
        let c2 = c * c;
        let amp = match &self.source {
            Some(src) => source_value(&src.spec, s.t) * src.weight,
            None => 0.0,
        };

        // Velocities, half level n − ½ → n + ½.
        // Rigid walls pin the boundary faces at zero; Dirichlet walls advance
        // them with p = 0 outside.
        let faces = |b: Boundary, n: usize| match b {
            Boundary::Dirichlet => 0..n + 1,
            Boundary::RigidWall => 1..n,
        };
        let mut u_new = s.u.clone();
        for i in faces(self.walls.x, nx) {
            for j in 0..ny {
                let (ii, jj) = (i as isize, j as isize);
                let grad = (s.p.get_or_zero(ii, jj) - s.p.get_or_zero(ii - 1, jj)) / (rho * dx);
                let cx = up_x(|a, b| self.ghost(&s.u, a, b), i, j, ub, dx);
                let cy = up_y(|a, b| self.ghost(&s.u, a, b), i, j, vb, dy);
                u_new.set(i, j, s.u.at(i, j) - dt * (grad + ub * cx + vb * cy));
            }
        }
        let mut v_new = s.v.clone();
        for i in 0..nx {
            for j in faces(self.walls.y, ny) {
                let (ii, jj) = (i as isize, j as isize);
                let grad = (s.p.get_or_zero(ii, jj) - s.p.get_or_zero(ii, jj - 1)) / (rho * dy);
                let cx = up_x(|a, b| self.ghost(&s.v, a, b), i, j, ub, dx);
                let cy = up_y(|a, b| self.ghost(&s.v, a, b), i, j, vb, dy);
                v_new.set(i, j, s.v.at(i, j) - dt * (grad + ub * cx + vb * cy));
            }
        }
        if let Some(src) = &self.source {
            if src.spec.targets.u {
                u_new.add(src.u.0, src.u.1, dt * amp);
            }
            if src.spec.targets.v {
                v_new.add(src.v.0, src.v.1, dt * amp);
            }
        }

        let mut corr = Field2::zeros(nx, ny);
        let has_x = self.region.has_x_layer();
        let has_y = self.region.has_y_layer();
        if has_x || has_y {
            // Transported pressure (∂t + ū∂x + v̄∂y)𝒫 = p, kept on the whole
            // grid so that 𝒫 has no jump at the layer interface.
            let mut aux_new = s.p_aux.clone();
            for i in 0..nx {
                for j in 0..ny {
                    let get = |a: isize, b: isize| s.p_aux.get_or_zero(a, b);
                    let cx = up_x(get, i, j, ub, dx);
                    let cy = up_y(get, i, j, vb, dy);
                    aux_new.set(i, j, s.p_aux.at(i, j) + dt * (s.p.at(i, j) - ub * cx - vb * cy));
                }
            }

            if has_x {
                let (pa_old, pa_new) = (&s.p_aux, &aux_new);
                let g1 = x_face_forcing(pa_old, pa_new, &self.ex_face, &self.flow, &self.grid, dt);
                let sy = &self.region.sigma_y_center;
                let exf = |i: usize, j: usize| if self.x_on(sy[j]) { self.ex_face[i] } else { 1.0 };
                let exc = |i: usize, j: usize| if self.x_on(sy[j]) { self.ex_center[i] } else { 1.0 };
                let mut d1_new = aux_update(&s.dpx, &g1, exf, 1, vb, dy, dt);
                extend_x_faces(&mut d1_new);
                let q_old = x_face_total(pa_old, &s.dpx, dx);
                let q_new = x_face_total(pa_new, &d1_new, dx);
                let g2 = x_center_forcing(&q_old, &q_new, &self.ex_center, &self.flow, &self.grid, dt);
                let d2_new = aux_update(&s.dpx2, &g2, exc, 1, vb, dy, dt);
                for i in 0..nx {
                    if self.ex_center[i] == 1.0 && self.ex_face[i] == 1.0 && self.ex_face[i + 1] == 1.0 {
                        continue;
                    }
                    for j in 0..ny {
                        let rate = |f: usize| {
                            let tr = if vb != 0.0 {
                                up_y(|a, b| s.dpx.get_or_zero(a, b), f, j, vb, dy)
                            } else {
                                0.0
                            };
                            (d1_new.at(f, j) - s.dpx.at(f, j)) / dt + vb * tr
                        };
                        let t1 = 0.5 * (rate(i) + rate(i + 1));
                        let up = |f: usize| up_x(|a, b| s.dpx.get_or_zero(a, b), f, j, ub, dx);
                        let conv = 0.5 * (up(i) + up(i + 1));
                        let dd1_old = (s.dpx.at(i + 1, j) - s.dpx.at(i, j)) / dx;
                        let dd1_new = (d1_new.at(i + 1, j) - d1_new.at(i, j)) / dx;
                        corr.add(
                            i,
                            j,
                            2.0 * ub * (t1 + ub * conv) + ub * ub * (s.dpx2.at(i, j) - dd1_old)
                                - c2 * (dd1_new + d2_new.at(i, j)),
                        );
                    }
                }
                s.dpx = d1_new;
                s.dpx2 = d2_new;
            }

            if has_y {
                let g1 = y_face_forcing(&s.p_aux, &aux_new, &self.ey_face, &self.flow, &self.grid, dt);
                let sx = &self.region.sigma_x_center;
                let eyf = |i: usize, j: usize| if self.y_on(sx[i]) { self.ey_face[j] } else { 1.0 };
                let eyc = |i: usize, j: usize| if self.y_on(sx[i]) { self.ey_center[j] } else { 1.0 };
                let mut e1_new = aux_update(&s.dpy, &g1, eyf, 0, ub, dx, dt);
                extend_y_faces(&mut e1_new);
                let q_old = y_face_total(&s.p_aux, &s.dpy, dy);
                let q_new = y_face_total(&aux_new, &e1_new, dy);
                let g2 = y_center_forcing(&q_old, &q_new, &self.ey_center, &self.flow, &self.grid, dt);
                let e2_new = aux_update(&s.dpy2, &g2, eyc, 0, ub, dx, dt);
                for j in 0..ny {
                    if self.ey_center[j] == 1.0 && self.ey_face[j] == 1.0 && self.ey_face[j + 1] == 1.0 {
                        continue;
                    }
                    for i in 0..nx {
                        let rate = |f: usize| {
                            let tr = if ub != 0.0 {
                                up_x(|a, b| s.dpy.get_or_zero(a, b), i, f, ub, dx)
                            } else {
                                0.0
                            };
                            (e1_new.at(i, f) - s.dpy.at(i, f)) / dt + ub * tr
                        };
                        let t1 = 0.5 * (rate(j) + rate(j + 1));
                        let up = |f: usize| up_y(|a, b| s.dpy.get_or_zero(a, b), i, f, vb, dy);
                        let conv = 0.5 * (up(j) + up(j + 1));
                        let de1_old = (s.dpy.at(i, j + 1) - s.dpy.at(i, j)) / dy;
                        let de1_new = (e1_new.at(i, j + 1) - e1_new.at(i, j)) / dy;
                        corr.add(
                            i,
                            j,
                            2.0 * vb * (t1 + vb * conv) + vb * vb * (s.dpy2.at(i, j) - de1_old)
                                - c2 * (de1_new + e2_new.at(i, j)),
                        );
                    }
                }
                s.dpy = e1_new;
                s.dpy2 = e2_new;
            }
            s.p_aux = aux_new;
        }

        // Pressure, level n → n + 1.
        let mut p_new = s.p.clone();
        for i in 0..nx {
            for j in 0..ny {
                let get = |a: isize, b: isize| s.p.get_or_zero(a, b);
                let cx = up_x(get, i, j, ub, dx);
                let cy = up_y(get, i, j, vb, dy);
                let div = (u_new.at(i + 1, j) - u_new.at(i, j)) / dx
                    + (v_new.at(i, j + 1) - v_new.at(i, j)) / dy;
                let rhs = -(ub * cx + vb * cy) - rc2 * div;
                p_new.set(i, j, s.p.at(i, j) + dt * (rhs - corr.at(i, j)));
            }
        }
        if let Some(src) = &self.source {
            if src.spec.targets.p {
                p_new.add(src.p.0, src.p.1, dt * amp);
            }
        }

        s.p = p_new;
        s.u = u_new;
        s.v = v_new;
        s.step_index += 1;
        s.t = s.step_index as f64 * dt;

        let (max, finite) = s.health();
        if !finite || max > BLOWUP {
            return Err(Error::UnstableState {
                step: s.step_index,
                max,
            });
        }
        Ok(())
    }
}

/// One step with coefficients rebuilt on the fly. Prefer [`Stepper`] in
/// loops.
pub fn step(
    state: &mut FieldState,
    flow: &FlowParams,
    grid: &GridSpec,
    pml: &PmlConfig,
    src: Option<&SourceSpec>,
) -> Result<()> {
    let nodes = src.map(|s| SourceNodes::nearest(grid, s));
    Stepper::new(grid, flow, pml, nodes)?.step(state)
}

/// Discrete curl `∂x v − ∂y u` at cell corners, `(nx+1) × (ny+1)`, zero on
/// the boundary.
pub fn vorticity(state: &FieldState, grid: &GridSpec) -> Field2 {
    let (nx, ny) = (grid.nx, grid.ny);
    let (dx, dy) = (grid.dx(), grid.dy());
    let mut w = Field2::zeros(nx + 1, ny + 1);
    for i in 1..nx {
        for j in 1..ny {
            let x = (state.v.at(i, j) - state.v.at(i - 1, j)) / dx
                - (state.u.at(i, j) - state.u.at(i, j - 1)) / dy;
            w.set(i, j, x);
        }
    }
    w
}

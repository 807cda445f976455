//! Plane-interface problems between the Euler half space `x < 0` and an
//! infinite layer of constant damping in `x > 0`.
//!
//! Incoming amplitudes `α₁` (vorticity) and `α₂` (acoustic) are given; the
//! transmitted amplitudes and the reflected acoustic amplitude `α₃` follow
//! from the interface conditions. A perfectly matched layer gives `α₃ = 0`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::exponents::{lambdas, lambdas_pml};
use super::vectors::{condition, mode_vectors, model2_mode_vectors, SINGULAR_COND};
use crate::error::{Error, Result};
use crate::params::{FlowParams, FourierPoint};
use crate::polymat::symbols::{dx_pml_symbol, g_hat, l_hat, l_pml_hat};

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Solves `A x = b` after row and column equilibration. Fails when the
/// equilibrated matrix has condition number above `1e12`.
pub fn solve_interface(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<(DVector<Complex64>, f64)> {
    let n = a.nrows();
    let mut m = a.clone();
    let mut rhs = b.clone();
    for i in 0..n {
        let s = m.row(i).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if s == 0.0 {
            return Err(Error::SingularInterfaceSystem(f64::INFINITY));
        }
        m.row_mut(i).scale_mut(1.0 / s);
        rhs[i] /= s;
    }
    let mut col_scale = vec![1.0; a.ncols()];
    for (j, cs) in col_scale.iter_mut().enumerate() {
        let s = m.column(j).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if s == 0.0 {
            return Err(Error::SingularInterfaceSystem(f64::INFINITY));
        }
        m.column_mut(j).scale_mut(1.0 / s);
        *cs = 1.0 / s;
    }
    let cond = condition(&m);
    if !(cond <= SINGULAR_COND) {
        return Err(Error::SingularInterfaceSystem(cond));
    }
    let mut y = m
        .full_piv_lu()
        .solve(&rhs)
        .ok_or(Error::SingularInterfaceSystem(cond))?;
    for (j, cs) in col_scale.iter().enumerate() {
        y[j] *= *cs;
    }
    Ok((y, cond))
}

/// Outcome of the first-model interface problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model1Reflection {
    pub beta1: Complex64,
    pub beta2: Complex64,
    pub alpha3: Complex64,
    pub condition: f64,
}

/// Interface problem for the model that replaces ℒ by ℒ^pml in the diagonal
/// factor. The conditions act on `φ = (F W)₃`:
/// `ℒ(φₗ) = ℒ^pml(φᵣ)`, `𝒢(φₗ) = 𝒢(φᵣ)`, `∂x 𝒢(φₗ) = ∂x^pml 𝒢(φᵣ)`.
pub fn reflection_model1(
    flow: &FlowParams,
    pt: &FourierPoint,
    sigma: f64,
    alpha1: Complex64,
    alpha2: Complex64,
) -> Result<Model1Reflection> {
    let ex = lambdas(flow, pt)?;
    let pm = lambdas_pml(flow, pt, sigma)?;
    let l = l_hat(flow, pt);
    let lp = l_pml_hat(flow, pt, sigma)?;
    let g = g_hat(flow, pt);
    let psi = dx_pml_symbol(flow, pt, sigma)?;
    let [l1, l2, l3] = ex.as_array();
    let right = [pm.lambda1_pml, pm.lambda2_pml];
    let alphas = [(alpha1, l1), (alpha2, l2)];

    let mut a = DMatrix::from_element(3, 3, zero());
    let mut b = DVector::from_element(3, zero());
    for (j, &lj) in right.iter().enumerate() {
        a[(0, j)] = -lp.eval(lj);
        a[(1, j)] = -g.eval(lj);
        a[(2, j)] = -psi.eval(lj) * g.eval(lj);
    }
    a[(0, 2)] = l.eval(l3);
    a[(1, 2)] = g.eval(l3);
    a[(2, 2)] = l3 * g.eval(l3);
    for &(al, li) in &alphas {
        b[0] -= al * l.eval(li);
        b[1] -= al * g.eval(li);
        b[2] -= al * li * g.eval(li);
    }
    if alpha1 == zero() && alpha2 == zero() {
        return Ok(Model1Reflection {
            beta1: zero(),
            beta2: zero(),
            alpha3: zero(),
            condition: 1.0,
        });
    }
    let (x, condition) = solve_interface(&a, &b)?;
    Ok(Model1Reflection {
        beta1: x[0],
        beta2: x[1],
        alpha3: x[2],
        condition,
    })
}

/// Closed-form transmitted amplitudes of the first model:
/// `β₁ = α₁(λ₁−λ₂)(λ₁−λ₃) / (a²(λ₁−λ₂^pml)(λ₁−λ₃^pml))` and
/// `β₂ = α₂(λ₂−λ₁)/(λ₂^pml−λ₁)`.
pub fn model1_closed_form(
    flow: &FlowParams,
    pt: &FourierPoint,
    sigma: f64,
    alpha1: Complex64,
    alpha2: Complex64,
) -> Result<(Complex64, Complex64)> {
    let [l1, l2, l3] = lambdas(flow, pt)?.as_array();
    let pm = lambdas_pml(flow, pt, sigma)?;
    let a = pm.a_factor;
    let beta1 = alpha1 * (l1 - l2) * (l1 - l3) / (a * a * (l1 - pm.lambda2_pml) * (l1 - pm.lambda3_pml));
    let beta2 = alpha2 * (l2 - l1) / (pm.lambda2_pml - l1);
    Ok((beta1, beta2))
}

/// Outcome of the second-model interface problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Model2Reflection {
    /// Amplitudes of the two layer modes at `λ₁` and of the damped acoustic mode.
    pub beta: [Complex64; 3],
    pub alpha3: Complex64,
    pub condition: f64,
    /// Pressure carried by each transmitted mode at the interface.
    pub pressure_trace: [Complex64; 3],
}

/// Linear system of the second model. Unknown order is `(β₀, β₁, β₂, α₃)`;
/// rows are `𝒫ᵣ = 0`, `pₗ = pᵣ`, `∂x pₗ = ∂x^pml pᵣ`, `uₗ = uᵣ`.
pub fn model2_system(
    flow: &FlowParams,
    pt: &FourierPoint,
    sigma: f64,
    alpha1: Complex64,
    alpha2: Complex64,
) -> Result<(DMatrix<Complex64>, DVector<Complex64>, DMatrix<Complex64>)> {
    let left = mode_vectors(flow, pt)?;
    let right = model2_mode_vectors(flow, pt, sigma)?;
    let psi = dx_pml_symbol(flow, pt, sigma)?;
    let lam = left.exponents.as_array();
    let rl = [
        right.exponents.lambda1_pml,
        right.exponents.lambda1_pml,
        right.exponents.lambda2_pml,
    ];
    let w = &right.w;
    let mut a = DMatrix::from_element(4, 4, zero());
    let mut b = DVector::from_element(4, zero());
    for j in 0..3 {
        a[(0, j)] = w[(0, j)];
        a[(1, j)] = -w[(1, j)];
        a[(2, j)] = -psi.eval(rl[j]) * w[(1, j)];
        a[(3, j)] = -w[(2, j)];
    }
    let w3 = &left.w[2];
    a[(1, 3)] = w3[0];
    a[(2, 3)] = lam[2] * w3[0];
    a[(3, 3)] = w3[1];
    for (al, (wi, li)) in [alpha1, alpha2].into_iter().zip(left.w.iter().zip(lam)) {
        b[1] -= al * wi[0];
        b[2] -= al * li * wi[0];
        b[3] -= al * wi[1];
    }
    Ok((a, b, right.w.columns(0, 3).into_owned()))
}

/// Interface problem of the second (pressure-only) model.
pub fn reflection_model2(
    flow: &FlowParams,
    pt: &FourierPoint,
    sigma: f64,
    alpha1: Complex64,
    alpha2: Complex64,
) -> Result<Model2Reflection> {
    let (a, b, wr) = model2_system(flow, pt, sigma, alpha1, alpha2)?;
    if alpha1 == zero() && alpha2 == zero() {
        return Ok(Model2Reflection {
            beta: [zero(); 3],
            alpha3: zero(),
            condition: 1.0,
            pressure_trace: [zero(); 3],
        });
    }
    let (x, condition) = solve_interface(&a, &b)?;
    let beta = [x[0], x[1], x[2]];
    let pressure_trace = [beta[0] * wr[(1, 0)], beta[1] * wr[(1, 1)], beta[2] * wr[(1, 2)]];
    Ok(Model2Reflection {
        beta,
        alpha3: x[3],
        condition,
        pressure_trace,
    })
}

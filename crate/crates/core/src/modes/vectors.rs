use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;

use super::exponents::{lambdas, lambdas_pml, Exponents, PmlModeSet};
use crate::error::{Error, Result};
use crate::params::{FlowParams, FourierPoint};
use crate::polymat::symbols::{build_factors, build_model2_symbol};

/// Condition number above which a matrix is treated as singular.
pub const SINGULAR_COND: f64 = 1e12;

/// Exponents and mode vectors of the Euler system at one Fourier point.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    pub exponents: Exponents,
    pub w: [Vector3<Complex64>; 3],
}

/// Ratio of extreme singular values.
pub fn condition(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `Wᵢ = F(λᵢ)⁻¹ e₃`, the vectors with `Â(λᵢ) Wᵢ = 0`.
pub fn mode_vectors(flow: &FlowParams, pt: &FourierPoint) -> Result<ModeSet> {
    let exponents = lambdas(flow, pt)?;
    let (_, _, f) = build_factors(flow, pt)?;
    let mut w = [Vector3::zeros(); 3];
    for (wi, lambda) in w.iter_mut().zip(exponents.as_array()) {
        let fl = f.eval(lambda);
        let cond = condition(&fl);
        if !(cond <= SINGULAR_COND) {
            return Err(Error::SingularF(cond));
        }
        let rhs = DVector::from_vec(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let sol = fl.lu().solve(&rhs).ok_or(Error::SingularF(cond))?;
        *wi = Vector3::new(sol[0], sol[1], sol[2]);
    }
    Ok(ModeSet { exponents, w })
}

/// Right singular vectors of `m` for its `dim` smallest singular values,
/// as columns.
pub fn null_vectors(m: &DMatrix<Complex64>, dim: usize) -> DMatrix<Complex64> {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    // Square inputs only; a wide matrix would need the complement as well.
    assert_eq!(v_t.nrows(), n, "null_vectors expects a square matrix");
    let mut out = DMatrix::zeros(n, dim);
    for (col, &idx) in order.iter().take(dim).enumerate() {
        for r in 0..n {
            out[(r, col)] = v_t[(idx, r)].conj();
        }
    }
    out
}

/// Mode vectors of the enlarged layer system, unknowns `(𝒫, p, u, v)`.
///
/// Columns 0 and 1 span the two-dimensional null space at `λ₁`
/// (vorticity-type modes with `p = 0`); column 2 is the damped acoustic mode
/// at `λ₂^pml`; column 3 the excluded mode at `λ₃^pml`.
#[derive(Debug, Clone, PartialEq)]
pub struct Model2Modes {
    pub exponents: PmlModeSet,
    pub w: DMatrix<Complex64>,
}

pub fn model2_mode_vectors(flow: &FlowParams, pt: &FourierPoint, sigma: f64) -> Result<Model2Modes> {
    let exponents = lambdas_pml(flow, pt, sigma)?;
    let sym = build_model2_symbol(flow, pt, sigma)?;
    let mut w = DMatrix::zeros(4, 4);
    let at1 = null_vectors(&sym.eval(exponents.lambda1_pml), 2);
    w.columns_mut(0, 2).copy_from(&at1);
    for (col, lambda) in [(2, exponents.lambda2_pml), (3, exponents.lambda3_pml)] {
        let v = null_vectors(&sym.eval(lambda), 1);
        w.column_mut(col).copy_from(&v.column(0));
    }
    Ok(Model2Modes { exponents, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::matrix::frobenius;
    use crate::polymat::symbols::build_euler_symbol;

    fn flow() -> FlowParams {
        FlowParams::new(200.0, 100.0, 1.0, 300.0).unwrap()
    }

    #[test]
    fn vectors_annihilate_symbol() {
        let pt = FourierPoint::new(50.0, 0.1);
        let ms = mode_vectors(&flow(), &pt).unwrap();
        let a = build_euler_symbol(&flow(), &pt);
        for (w, l) in ms.w.iter().zip(ms.exponents.as_array()) {
            let al = a.eval(l);
            let wv = DVector::from_column_slice(w.as_slice());
            let r = (&al * &wv).norm();
            assert!(r <= 1e-9 * frobenius(&al) * wv.norm());
        }
    }

    #[test]
    fn first_component_tracks_transport_root() {
        let pt = FourierPoint::new(7.0, 3.0);
        let ms = mode_vectors(&flow(), &pt).unwrap();
        let l = ms.exponents.as_array();
        assert!(ms.w[0][0].norm() < 1e-12 * ms.w[0].norm());
        for i in 1..3 {
            let want = -(l[i] - l[0]);
            assert!((ms.w[i][0] - want).norm() < 1e-9 * want.norm());
        }
    }

    #[test]
    fn agrees_with_svd_null_space() {
        let pt = FourierPoint::new(-20.0, 0.4);
        let ms = mode_vectors(&flow(), &pt).unwrap();
        let a = build_euler_symbol(&flow(), &pt);
        for (w, l) in ms.w.iter().zip(ms.exponents.as_array()).skip(1) {
            let n = null_vectors(&a.eval(l), 1);
            let n = n.column(0);
            let wv = DVector::from_column_slice(w.as_slice());
            // Parallel vectors saturate Cauchy–Schwarz.
            let overlap = n.dotc(&wv).norm();
            assert!((overlap - wv.norm() * n.norm()).abs() < 1e-9 * wv.norm());
        }
    }

    #[test]
    fn model2_vorticity_modes_carry_no_pressure() {
        let pt = FourierPoint::new(50.0, 0.1);
        let m = model2_mode_vectors(&flow(), &pt, 40.0).unwrap();
        assert!(m.w[(1, 0)].norm() < 1e-12);
        assert!(m.w[(1, 1)].norm() < 1e-12);
        assert!(m.w[(1, 2)].norm() > 1e-6);
    }
}

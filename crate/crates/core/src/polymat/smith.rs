use num_complex::Complex64;

use super::matrix::PolyMatrix;
use super::poly::{gcd_all, root_scale, Poly, REL_TOL};
use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | … | d_n`, each monic.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithDiagonal {
    pub d: Vec<Poly>,
}

impl SmithDiagonal {
    /// Degrees of the invariant factors.
    pub fn degrees(&self) -> Vec<usize> {
        self.d.iter().map(|p| p.degree().unwrap_or(0)).collect()
    }

    /// Checks `d_k | d_{k+1}` with the remainder relative to `tol`.
    pub fn divisibility_holds(&self, tol: f64) -> bool {
        self.d.windows(2).all(|w| {
            let (_, r) = w[1].div_rem(&w[0]);
            r.is_negligible(w[1].scale(), tol)
        })
    }
}

/// Invariant factors from gcds of minors: `d_k = LD_k / LD_{k−1}`.
///
/// The variable is first rescaled so that the roots of the determinant have
/// modulus of order one; the gcd tolerance is then meaningful. Minors that
/// vanish to rounding precision are discarded before taking gcds.
pub fn smith_diagonal(m: &PolyMatrix) -> Result<SmithDiagonal> {
    assert!(m.is_square(), "Smith form needs a square matrix");
    let n = m.rows();
    let det = m.det();
    let entry_scale = m.entries().map(Poly::scale).fold(0.0, f64::max);
    if det.is_zero() || det.is_negligible(entry_scale.powi(n as i32).max(f64::MIN_POSITIVE), 1e-13) {
        return Err(Error::SingularMatrix);
    }
    let s = root_scale(&det);
    let ms = m.map(|p| p.rescale_var(s));

    let mut ld = vec![Poly::one()];
    for k in 1..=n {
        let minors = ms.minors(k);
        let top = minors.iter().map(Poly::scale).fold(0.0, f64::max);
        let kept: Vec<&Poly> = minors
            .iter()
            .filter(|p| !p.is_negligible(top, 1e-12))
            .collect();
        let g = gcd_all(kept, REL_TOL);
        if g.is_zero() {
            return Err(Error::SingularMatrix);
        }
        ld.push(g);
    }
    let d = (1..=n)
        .map(|k| {
            let (q, _) = ld[k].div_rem(&ld[k - 1]);
            q.rescale_var(1.0 / s).monic()
        })
        .collect();
    Ok(SmithDiagonal { d })
}

/// Relative spread of `p(λ)/q(λ)` over the sample points.
pub fn ratio_spread(p: &Poly, q: &Poly, samples: &[Complex64]) -> f64 {
    let ratios: Vec<Complex64> = samples.iter().map(|&x| p.eval(x) / q.eval(x)).collect();
    let r0 = ratios[0];
    ratios
        .iter()
        .map(|r| (r - r0).norm() / r0.norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_trivial() {
        let sd = smith_diagonal(&PolyMatrix::identity(3)).unwrap();
        assert_eq!(sd.degrees(), vec![0, 0, 0]);
    }

    #[test]
    fn diagonal_powers() {
        let l = Poly::lambda();
        let m = PolyMatrix::diag(vec![l.clone(), &l * &l]);
        let sd = smith_diagonal(&m).unwrap();
        assert_eq!(sd.degrees(), vec![1, 2]);
        assert!(sd.divisibility_holds(1e-9));
    }

    #[test]
    fn coprime_diagonal_merges() {
        // diag(λ−1, λ−2) has invariant factors 1 and (λ−1)(λ−2).
        let m = PolyMatrix::diag(vec![
            Poly::linear(z(-1.0, 0.0), z(1.0, 0.0)),
            Poly::linear(z(-2.0, 0.0), z(1.0, 0.0)),
        ]);
        let sd = smith_diagonal(&m).unwrap();
        assert_eq!(sd.degrees(), vec![0, 2]);
    }

    #[test]
    fn singular_matrix_rejected() {
        let l = Poly::lambda();
        let m = PolyMatrix::from_rows(vec![vec![l.clone(), l.clone()], vec![l.clone(), l]]);
        assert_eq!(smith_diagonal(&m), Err(Error::SingularMatrix));
    }
}

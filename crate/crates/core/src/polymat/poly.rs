use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Relative tolerance used for zero tests and gcd degree decisions.
pub const REL_TOL: f64 = 1e-9;

/// Univariate polynomial in λ with complex coefficients, lowest degree first.
///
/// Stored coefficients never end in an exact zero, so `Poly::zero()` has an
/// empty coefficient list and `degree() == None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|z| *z == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(c(1.0))
    }

    pub fn constant(z: Complex64) -> Self {
        Poly::new(vec![z])
    }

    /// The indeterminate λ.
    pub fn lambda() -> Self {
        Poly::new(vec![c(0.0), c(1.0)])
    }

    /// `a + bλ`.
    pub fn linear(a: Complex64, b: Complex64) -> Self {
        Poly::new(vec![a, b])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Poly::one(), |acc, &r| {
            &acc * &Poly::linear(-r, c(1.0))
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of λ^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
    }

    pub fn scaled(&self, k: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * k).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| a * i as f64)
                .collect(),
        )
    }

    /// Drops coefficients below `tol` times the largest one.
    pub fn trimmed(&self, tol: f64) -> Poly {
        let cut = tol * self.scale();
        let mut v = self.coeffs.clone();
        while v.last().is_some_and(|z| z.norm() <= cut) {
            v.pop();
        }
        Poly::new(v)
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(&lead) => self.scaled(lead.inv()),
        }
    }

    /// Quotient and remainder of Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Complex64::new(0.0, 0.0); r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = r[i + dd] / lead;
            q[i] = f;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i + j] -= f * dj;
            }
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// `self(p(λ))`.
    pub fn compose(&self, p: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &a| &(&acc * p) + &Poly::constant(a))
    }

    /// Polynomial in μ equal to `self(s·μ)`.
    pub fn rescale_var(&self, s: f64) -> Poly {
        let mut f = 1.0;
        Poly::new(
            self.coeffs
                .iter()
                .map(|&a| {
                    let v = a * f;
                    f *= s;
                    v
                })
                .collect(),
        )
    }

    /// True when every coefficient is below `tol` relative to `reference`.
    pub fn is_negligible(&self, reference: f64, tol: f64) -> bool {
        self.scale() <= tol * reference
    }
}

/// Natural variable scale of `p`: the geometric ratio between its lowest
/// nonzero and leading coefficients. Used to condition gcd computations.
pub fn root_scale(p: &Poly) -> f64 {
    let Some(n) = p.degree() else { return 1.0 };
    let tol = 1e-14 * p.scale();
    let Some(lo) = p.coeffs.iter().position(|z| z.norm() > tol) else {
        return 1.0;
    };
    if lo >= n {
        return 1.0;
    }
    let s = (p.coeff(lo).norm() / p.leading().norm()).powf(1.0 / (n - lo) as f64);
    if s.is_finite() && s > 0.0 {
        s
    } else {
        1.0
    }
}

/// Monic Euclidean gcd. Both inputs are first normalized to unit coefficient
/// scale, and a remainder counts as zero once it falls below `tol` relative to
/// the current dividend.
pub fn gcd(a: &Poly, b: &Poly, tol: f64) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let normalize = |p: &Poly| {
        let t = p.trimmed(tol);
        let sc = t.scale();
        if sc > 0.0 {
            t.scaled(Complex64::new(1.0 / sc, 0.0))
        } else {
            t
        }
    };
    let mut x = normalize(a);
    let mut y = normalize(b);
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        if y.degree() == Some(0) {
            return Poly::one();
        }
        let (_, r) = x.div_rem(&y);
        // x and y both have unit scale here, so the test is scale invariant.
        let r = if r.is_negligible(1.0, tol) {
            Poly::zero()
        } else {
            normalize(&r)
        };
        x = y;
        y = r;
    }
    x.monic()
}

/// Gcd of a whole family, folded pairwise. Zero polynomials are ignored.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Poly>>(polys: I, tol: f64) -> Poly {
    polys
        .into_iter()
        .filter(|p| !p.is_zero())
        .fold(Poly::zero(), |acc, p| {
            if acc.is_zero() {
                p.trimmed(tol).monic()
            } else if acc.degree() == Some(0) {
                acc
            } else {
                gcd(&acc, p, tol)
            }
        })
}

fn zip_coeffs(a: &Poly, b: &Poly, f: impl Fn(Complex64, Complex64) -> Complex64) -> Poly {
    let n = a.coeffs.len().max(b.coeffs.len());
    Poly::new((0..n).map(|i| f(a.coeff(i), b.coeff(i))).collect())
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_coeffs(self, rhs, |x, y| x + y)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_coeffs(self, rhs, |x, y| x - y)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scaled(c(-1.0))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6e}{:+.6e}i)", a.re, a.im)?;
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::new(vec![z(0.0, 0.0); 3]).degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
    }

    #[test]
    fn division_roundtrip() {
        let a = Poly::new(vec![z(1.0, 2.0), z(-3.0, 0.5), z(0.0, 1.0), z(2.0, 0.0)]);
        let d = Poly::new(vec![z(0.5, -1.0), z(1.0, 1.0)]);
        let (q, r) = a.div_rem(&d);
        let back = &(&q * &d) + &r;
        assert!((&back - &a).scale() < 1e-13);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_of_shared_roots() {
        let a = Poly::from_roots(&[z(1.0, 0.0), z(0.0, 2.0), z(-3.0, 1.0)]);
        let b = Poly::from_roots(&[z(0.0, 2.0), z(5.0, 0.0)]).scaled(z(7.0, -2.0));
        let g = gcd(&a, &b, REL_TOL);
        assert_eq!(g.degree(), Some(1));
        assert!((g.coeff(0) + z(0.0, 2.0)).norm() < 1e-12);
        let coprime = gcd(&Poly::from_roots(&[z(1.0, 0.0)]), &Poly::from_roots(&[z(2.0, 0.0)]), REL_TOL);
        assert_eq!(coprime, Poly::one());
    }

    #[test]
    fn compose_matches_pointwise() {
        let p = Poly::new(vec![z(1.0, 0.0), z(0.0, -2.0), z(3.0, 1.0)]);
        let q = Poly::linear(z(0.5, 0.5), z(2.0, -1.0));
        let pq = p.compose(&q);
        for x in [z(0.3, 0.1), z(-1.0, 2.0)] {
            assert!((pq.eval(x) - p.eval(q.eval(x))).norm() < 1e-12);
        }
    }

    #[test]
    fn rescaled_variable() {
        let p = Poly::from_roots(&[z(100.0, 0.0), z(0.0, 300.0)]);
        let q = p.rescale_var(100.0);
        assert!((q.eval(z(1.0, 0.0))).norm() < 1e-9);
        assert!((root_scale(&p) - (30000.0f64).sqrt()).abs() < 1e-9);
    }
}

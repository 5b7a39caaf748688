//! Unitarily invariant kernels K(z,w) = Σ a_n ⟨z,w⟩^n on the unit ball.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact;
use crate::poly::{total_degree, Poly};
use crate::{CMatrix, Error, Result, C64};

/// Relative size of the geometric tail bound at which series summation stops.
pub const TAIL_TOL: f64 = 1e-14;
/// Hard cap on summed terms before reporting a truncation failure.
pub const MAX_TERMS: usize = 5_000_000;
/// Lowest radius `domination_radius` will certify.
pub const RADIUS_FLOOR: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq)]
pub enum KernelSpec {
    /// 1/(1 − z w̄) on the disc.
    Szego,
    /// (1 − ⟨z,w⟩)^{−a}, or the logarithmic kernel when a = 0.
    DirichletA { a: f64, d: usize },
    /// Σ (n+1)^s ⟨z,w⟩^n.
    Hs { s: f64, d: usize },
    /// One-variable kernel with a_n = ‖τ^n‖^{-2} for the τ-map of dimension d.
    TauPullback { d: usize },
    /// Finitely many explicit coefficients, a_0 = 1.
    Custom { coeffs: Vec<f64>, d: usize },
}

pub fn inner(z: &[C64], w: &[C64]) -> C64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(z: &[C64]) -> f64 {
    z.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn check_point(z: &[C64], d: usize) -> Result<()> {
    if z.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: z.len() });
    }
    let r = norm(z);
    if !(r < 1.0) {
        return Err(Error::OutsideBall(r));
    }
    Ok(())
}

impl KernelSpec {
    pub fn dirichlet(a: f64, d: usize) -> Result<Self> {
        let k = KernelSpec::DirichletA { a, d };
        k.validate()?;
        Ok(k)
    }

    pub fn hs(s: f64, d: usize) -> Result<Self> {
        let k = KernelSpec::Hs { s, d };
        k.validate()?;
        Ok(k)
    }

    pub fn tau_pullback(d: usize) -> Result<Self> {
        let k = KernelSpec::TauPullback { d };
        k.validate()?;
        Ok(k)
    }

    pub fn custom(coeffs: Vec<f64>, d: usize) -> Result<Self> {
        let k = KernelSpec::Custom { coeffs, d };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        match self {
            KernelSpec::Szego => Ok(()),
            KernelSpec::DirichletA { a, d } => {
                if !(a.is_finite() && *a >= 0.0) {
                    return bad("DirichletA needs a finite a >= 0");
                }
                if *d == 0 {
                    return bad("dimension must be positive");
                }
                Ok(())
            }
            KernelSpec::Hs { s, d } => {
                if !s.is_finite() {
                    return bad("Hs needs a finite s");
                }
                if *d == 0 {
                    return bad("dimension must be positive");
                }
                Ok(())
            }
            KernelSpec::TauPullback { d } => {
                if *d == 0 {
                    return bad("dimension must be positive");
                }
                Ok(())
            }
            KernelSpec::Custom { coeffs, d } => {
                if *d == 0 {
                    return bad("dimension must be positive");
                }
                if coeffs.first() != Some(&1.0) {
                    return bad("custom coefficients must start with a_0 = 1");
                }
                if coeffs.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
                    return bad("custom coefficients must be finite and nonnegative");
                }
                Ok(())
            }
        }
    }

    /// Number of complex coordinates of a point.
    pub fn dim(&self) -> usize {
        match self {
            KernelSpec::Szego | KernelSpec::TauPullback { .. } => 1,
            KernelSpec::DirichletA { d, .. } | KernelSpec::Hs { d, .. } | KernelSpec::Custom { d, .. } => *d,
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            KernelSpec::Szego => "szego",
            KernelSpec::DirichletA { .. } => "dirichlet",
            KernelSpec::Hs { .. } => "hs",
            KernelSpec::TauPullback { .. } => "tau_pullback",
            KernelSpec::Custom { .. } => "custom",
        }
    }

    pub fn coeff(&self, n: usize) -> f64 {
        match self {
            KernelSpec::Szego => 1.0,
            KernelSpec::DirichletA { a, .. } if *a == 0.0 => 1.0 / (n as f64 + 1.0),
            KernelSpec::DirichletA { a, .. } => {
                if n <= 2000 {
                    (0..n).fold(1.0, |acc, j| acc * (a + j as f64) / (j as f64 + 1.0))
                } else {
                    libm::exp(libm::lgamma(a + n as f64) - libm::lgamma(n as f64 + 1.0) - libm::lgamma(*a))
                }
            }
            KernelSpec::Hs { s, .. } => libm::pow(n as f64 + 1.0, *s),
            KernelSpec::TauPullback { d } => exact::to_f64(&tau_coeff_exact(n as u64, *d as u64)),
            KernelSpec::Custom { coeffs, .. } => coeffs.get(n).copied().unwrap_or(0.0),
        }
    }

    /// a_n as an exact rational, when the parameters allow it. Float
    /// parameters are taken at their exact binary value.
    pub fn coeff_exact(&self, n: usize) -> Result<BigRational> {
        match self {
            KernelSpec::Szego => Ok(BigRational::one()),
            KernelSpec::DirichletA { a, .. } if *a == 0.0 => Ok(exact::from_int(1) / exact::from_int(n as i64 + 1)),
            KernelSpec::DirichletA { a, .. } => {
                let a = exact::from_f64(*a).ok_or_else(|| Error::Inexact("non-finite a".into()))?;
                let mut acc = BigRational::one();
                for j in 0..n {
                    acc = acc * (&a + exact::from_int(j as i64)) / exact::from_int(j as i64 + 1);
                }
                Ok(acc)
            }
            KernelSpec::Hs { s, .. } => {
                if s.fract() != 0.0 || s.abs() > 64.0 {
                    return Err(Error::Inexact("Hs coefficients are irrational for non-integer s".into()));
                }
                Ok(exact::pow_signed(&exact::from_int(n as i64 + 1), *s as i64))
            }
            KernelSpec::TauPullback { d } => Ok(tau_coeff_exact(n as u64, *d as u64)),
            KernelSpec::Custom { coeffs, .. } => {
                let c = coeffs.get(n).copied().unwrap_or(0.0);
                exact::from_f64(c).ok_or_else(|| Error::Inexact("non-finite coefficient".into()))
            }
        }
    }

    /// a_{n+1}/a_n for the families summed by recurrence.
    fn ratio(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            KernelSpec::Szego => 1.0,
            KernelSpec::DirichletA { a, .. } if *a == 0.0 => (nf + 1.0) / (nf + 2.0),
            KernelSpec::DirichletA { a, .. } => (a + nf) / (nf + 1.0),
            KernelSpec::Hs { s, .. } => libm::pow((nf + 2.0) / (nf + 1.0), *s),
            KernelSpec::TauPullback { d } => {
                let df = *d as f64;
                (1..=*d).fold(1.0, |acc, j| acc * (nf * df + j as f64) / (df * (nf + 1.0)))
            }
            KernelSpec::Custom { coeffs, .. } => {
                let a = coeffs.get(n).copied().unwrap_or(0.0);
                let b = coeffs.get(n + 1).copied().unwrap_or(0.0);
                if a == 0.0 {
                    0.0
                } else {
                    b / a
                }
            }
        }
    }

    pub fn eval(&self, z: &[C64], w: &[C64]) -> Result<C64> {
        let d = self.dim();
        check_point(z, d)?;
        check_point(w, d)?;
        self.eval_inner(inner(z, w))
    }

    /// K as a function of x = ⟨z,w⟩, |x| < 1.
    pub fn eval_inner(&self, x: C64) -> Result<C64> {
        let one = C64::new(1.0, 0.0);
        if x == C64::new(0.0, 0.0) {
            return Ok(one);
        }
        match self {
            KernelSpec::Szego => Ok(one / (one - x)),
            KernelSpec::DirichletA { a, .. } => {
                if *a == 0.0 {
                    log_kernel(self, x)
                } else if *a == 1.0 {
                    Ok(one / (one - x))
                } else {
                    Ok((-(one - x).ln() * *a).exp())
                }
            }
            KernelSpec::Hs { s, .. } if *s == 0.0 => Ok(one / (one - x)),
            KernelSpec::Hs { s, .. } if *s == -1.0 => log_kernel(self, x),
            KernelSpec::TauPullback { d: 1 } => Ok(one / (one - x)),
            KernelSpec::TauPullback { d: 2 } => Ok((-(one - x).ln() * 0.5).exp()),
            KernelSpec::Custom { coeffs, .. } => {
                Ok(coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c))
            }
            _ => self.series(x),
        }
    }

    /// Σ a_n x^n summed by coefficient recurrence until the geometric tail
    /// bound falls below `TAIL_TOL` relative to the partial sum.
    pub fn series(&self, x: C64) -> Result<C64> {
        if let KernelSpec::Custom { coeffs, .. } = self {
            return Ok(coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c));
        }
        let ax = x.norm();
        let mut sum = C64::new(1.0, 0.0);
        let mut term = C64::new(1.0, 0.0);
        for n in 0..MAX_TERMS {
            term *= x * self.ratio(n);
            sum += term;
            let q = ax * self.ratio(n + 1).max(1.0);
            if q < 1.0 && term.norm() * q / (1.0 - q) <= TAIL_TOL * sum.norm() {
                return Ok(sum);
            }
        }
        Err(Error::Truncation(MAX_TERMS))
    }

    pub fn gram(&self, pts: &[Vec<C64>]) -> Result<CMatrix> {
        let d = self.dim();
        for p in pts {
            check_point(p, d)?;
        }
        let n = pts.len();
        let mut g = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.eval_inner(inner(&pts[i], &pts[j]))?;
                g[(i, j)] = v;
                g[(j, i)] = v.conj();
            }
            g[(i, i)].im = 0.0;
        }
        Ok(g)
    }

    /// δ_H(z,w) = (1 − |K(z,w)|²/(K(z,z)K(w,w)))^{1/2}.
    pub fn delta_metric(&self, z: &[C64], w: &[C64]) -> Result<f64> {
        let d = self.dim();
        check_point(z, d)?;
        check_point(w, d)?;
        if let KernelSpec::Szego = self {
            return Ok(pseudo_hyperbolic(z[0], w[0]));
        }
        let kzz = self.eval_inner(inner(z, z))?.re;
        let kww = self.eval_inner(inner(w, w))?.re;
        if !(kzz > 0.0 && kww > 0.0) {
            return Err(Error::NonPositiveDiagonal);
        }
        let kzw = self.eval_inner(inner(z, w))?;
        Ok((1.0 - kzw.norm_sqr() / (kzz * kww)).max(0.0).sqrt())
    }

    /// ‖z^α‖² = α!/(a_{|α|} |α|!) in exact arithmetic.
    pub fn monomial_norm_sq_exact(&self, alpha: &[u32]) -> Result<BigRational> {
        self.check_index(alpha)?;
        let n = total_degree(alpha) as usize;
        let a = self.coeff_exact(n)?;
        if a.is_zero() {
            return Err(Error::InvalidParameter("monomial outside the kernel's support".into()));
        }
        Ok(multinomial_inverse(alpha) / a)
    }

    pub fn monomial_norm_sq(&self, alpha: &[u32]) -> Result<f64> {
        match self.monomial_norm_sq_exact(alpha) {
            Ok(v) => Ok(exact::to_f64(&v)),
            Err(Error::Inexact(_)) => {
                let n = total_degree(alpha) as usize;
                Ok(exact::to_f64(&multinomial_inverse(alpha)) / self.coeff(n))
            }
            Err(e) => Err(e),
        }
    }

    fn check_index(&self, alpha: &[u32]) -> Result<()> {
        if alpha.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: alpha.len() });
        }
        Ok(())
    }

    /// ‖f‖² = Σ |f̂(α)|² ‖z^α‖².
    pub fn poly_norm_sq(&self, f: &Poly) -> Result<f64> {
        if f.nvars() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: f.nvars() });
        }
        f.terms()
            .map(|(a, c)| Ok(c.norm_sqr() * self.monomial_norm_sq(a)?))
            .sum()
    }

    pub fn coeffs(&self, len: usize) -> Vec<f64> {
        (0..len).map(|n| self.coeff(n)).collect()
    }

    /// Coefficients b_0..b_{n} of 1/K as a series in x = ⟨z,w⟩.
    pub fn reciprocal_coeffs(&self, n: usize) -> Vec<f64> {
        reciprocal_series(&self.coeffs(n + 1))
    }

    pub fn reciprocal_coeffs_exact(&self, n: usize) -> Result<Vec<BigRational>> {
        let a = (0..=n).map(|k| self.coeff_exact(k)).collect::<Result<Vec<_>>>()?;
        reciprocal_series_exact(&a)
    }

    /// Largest r on a descending 1e-3 grid, refined by bisection to 1e-6,
    /// with Σ_{k≤m} b_k r^k ≥ 0 for every m ≤ n.
    pub fn domination_radius(&self, n: usize) -> Result<f64> {
        radius_from_reciprocal(&self.reciprocal_coeffs(n))
    }
}

fn log_kernel(k: &KernelSpec, x: C64) -> Result<C64> {
    if x.norm() < 0.25 {
        return k.series(x);
    }
    let one = C64::new(1.0, 0.0);
    Ok(-(one - x).ln() / x)
}

pub fn pseudo_hyperbolic(z: C64, w: C64) -> f64 {
    let den = (C64::new(1.0, 0.0) - w.conj() * z).norm();
    if den == 0.0 {
        return 1.0;
    }
    ((z - w).norm() / den).min(1.0)
}

/// α!/|α|! as an exact rational.
fn multinomial_inverse(alpha: &[u32]) -> BigRational {
    let n = total_degree(alpha) as u64;
    exact::from_uint(exact::multi_factorial(alpha)) / exact::from_uint(exact::factorial(n))
}

/// (nd)!/(d^{nd} (n!)^d).
pub fn tau_coeff_exact(n: u64, d: u64) -> BigRational {
    let num = exact::factorial(n * d);
    let den = exact::factorial(n).pow(d as u32) * BigUint::from(d).pow((n * d) as u32);
    exact::from_uint(num) / exact::from_uint(den)
}

pub fn reciprocal_series(a: &[f64]) -> Vec<f64> {
    let mut b = vec![0.0; a.len()];
    if a.is_empty() {
        return b;
    }
    b[0] = 1.0 / a[0];
    for m in 1..a.len() {
        let s: f64 = (1..=m).map(|k| a[k] * b[m - k]).sum();
        b[m] = -s / a[0];
    }
    b
}

pub fn reciprocal_series_exact(a: &[BigRational]) -> Result<Vec<BigRational>> {
    let mut b = vec![BigRational::zero(); a.len()];
    if a.is_empty() {
        return Ok(b);
    }
    if a[0].is_zero() {
        return Err(Error::InvalidParameter("a_0 must be nonzero".into()));
    }
    b[0] = a[0].recip();
    for m in 1..a.len() {
        let s = (1..=m).fold(BigRational::zero(), |acc, k| acc + &a[k] * &b[m - k]);
        b[m] = -s / &a[0];
    }
    Ok(b)
}

/// Whether every partial sum Σ_{k≤m} b_k r^k is nonnegative.
pub fn partial_sums_nonneg(b: &[f64], r: f64) -> bool {
    let (mut acc, mut scale, mut pw) = (0.0, 0.0, 1.0);
    for &bk in b {
        acc += bk * pw;
        scale += bk.abs() * pw;
        if acc < -1e-14 * scale {
            return false;
        }
        pw *= r;
    }
    true
}

pub fn radius_from_reciprocal(b: &[f64]) -> Result<f64> {
    let ok = |r: f64| partial_sums_nonneg(b, r);
    let step = 1e-3;
    let mut found = None;
    for i in 0..1000 {
        let r = 1.0 - step * i as f64;
        if ok(r) {
            found = Some(i);
            break;
        }
    }
    let (mut lo, mut hi) = match found {
        Some(0) => return Ok(1.0),
        Some(i) => (1.0 - step * i as f64, 1.0 - step * (i - 1) as f64),
        None => {
            if !ok(RADIUS_FLOOR) {
                return Err(Error::NoValidRadius(RADIUS_FLOOR));
            }
            (RADIUS_FLOOR, step)
        }
    };
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

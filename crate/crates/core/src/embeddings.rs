//! The map τ(z) = d^{d/2} z₁⋯z_d, its pullbacks, the boundary multi-index
//! decomposition, coordinate-projection extensions, Sarason functions and
//! coefficient asymptotics.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::{factorial, from_uint};
use crate::kernels::{norm, KernelSpec};
use crate::poly::{indices_up_to, MultiIndex, Poly};
use crate::{Error, Result, C64};

/// τ(z) = d^{d/2} z₁⋯z_d.
pub fn tau_eval(z: &[C64]) -> Result<C64> {
    if z.is_empty() {
        return Err(Error::InvalidParameter("empty point".into()));
    }
    let r = norm(z);
    if r > 1.0 + 1e-12 {
        return Err(Error::OutsideBall(r));
    }
    let d = z.len() as f64;
    Ok(z.iter().fold(C64::new(libm::pow(d, d / 2.0), 0.0), |acc, &v| acc * v))
}

/// f∘τ: the coefficient f̂(n) moves to the index n·1 with factor d^{nd/2}.
pub fn tau_pullback(f: &Poly, d: usize) -> Result<Poly> {
    if f.nvars() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.nvars() });
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let df = d as f64;
    Poly::from_terms(
        d,
        f.terms().map(|(a, &c)| {
            let n = a[0];
            (vec![n; d], c * libm::pow(df, n as f64 * df / 2.0))
        }),
    )
}

/// Squared norms (‖f∘τ‖²_{H²_d}, ‖f‖²_{H_d}) in exact arithmetic for real
/// rational coefficients f̂(0), f̂(1), ….
pub fn tau_isometry_exact(coeffs: &[BigRational], d: usize) -> Result<(BigRational, BigRational)> {
    let ball = KernelSpec::DirichletA { a: 1.0, d };
    let disc = KernelSpec::TauPullback { d };
    let dd = BigUint::from(d);
    let mut lhs = BigRational::zero();
    let mut rhs = BigRational::zero();
    for (n, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c2 = c * c;
        // (d^{nd/2})² = d^{nd}
        let scale = from_uint(dd.pow((n * d) as u32));
        lhs += &c2 * scale * ball.monomial_norm_sq_exact(&vec![n as u32; d])?;
        rhs += &c2 * disc.monomial_norm_sq_exact(&[n as u32])?;
    }
    Ok((lhs, rhs))
}

/// φ∘P with P the projection onto the first d' coordinates.
pub fn proj_extend(phi: &Poly, d: usize) -> Result<Poly> {
    let dp = phi.nvars();
    if dp > d {
        return Err(Error::InvalidParameter(format!("cannot extend from {dp} to {d} variables")));
    }
    Poly::from_terms(
        d,
        phi.terms().map(|(a, &c)| {
            let mut b = a.clone();
            b.resize(d, 0);
            (b, c)
        }),
    )
}

/// Pads a point with zero coordinates.
pub fn lift_point(z: &[C64], d: usize) -> Vec<C64> {
    let mut out = z.to_vec();
    out.resize(d, C64::new(0.0, 0.0));
    out
}

/// Multi-indices with some coordinate zero, up to a degree cap.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryMultiIndexSet {
    pub d: usize,
    pub cap: u32,
    pub alphas: Vec<MultiIndex>,
}

impl BoundaryMultiIndexSet {
    /// β = α + k·1 with k = min β.
    pub fn decompose(beta: &[u32]) -> (MultiIndex, u32) {
        let k = beta.iter().copied().min().unwrap_or(0);
        (beta.iter().map(|b| b - k).collect(), k)
    }
}

/// Enumerates ∂N₀^d up to the cap and checks exhaustively that every β
/// with |β| ≤ cap is α + k·1 for exactly one α in the set.
pub fn boundary_decomposition(d: usize, cap: u32) -> Result<BoundaryMultiIndexSet> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let all = indices_up_to(d, cap);
    let alphas: Vec<MultiIndex> = all.iter().filter(|a| a.iter().any(|&v| v == 0)).cloned().collect();
    for beta in &all {
        let mut hits = 0;
        for alpha in &alphas {
            let k = beta[0] as i64 - alpha[0] as i64;
            if k >= 0 && beta.iter().zip(alpha).all(|(&b, &a)| b as i64 - a as i64 == k) {
                hits += 1;
                if k as u32 != beta.iter().copied().min().unwrap_or(0) {
                    return Err(Error::Violation(format!("{beta:?} decomposes with k = {k}")));
                }
            }
        }
        if hits != 1 {
            return Err(Error::Violation(format!("{beta:?} has {hits} decompositions")));
        }
    }
    Ok(BoundaryMultiIndexSet { d, cap, alphas })
}

/// d^d ‖z^{α+(k+1)1}‖² / ‖z^{α+k1}‖² in the Drury–Arveson space.
pub fn block_weight_sq_exact(alpha: &[u32], k: u32) -> Result<BigRational> {
    let d = alpha.len();
    let h2 = KernelSpec::DirichletA { a: 1.0, d };
    let up: Vec<u32> = alpha.iter().map(|a| a + k + 1).collect();
    let here: Vec<u32> = alpha.iter().map(|a| a + k).collect();
    let dd = from_uint(BigUint::from(d).pow(d as u32));
    Ok(dd * h2.monomial_norm_sq_exact(&up)? / h2.monomial_norm_sq_exact(&here)?)
}

/// a_n · 4^n · (n!)² == (2n)! for the d = 2 pullback kernel.
pub fn h2_dhalf_identity(n: u64) -> bool {
    let a = crate::kernels::tau_coeff_exact(n, 2);
    let lhs = a * from_uint(BigUint::from(4u32).pow(n as u32) * factorial(n).pow(2));
    lhs == from_uint(factorial(2 * n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SarasonInput {
    pub kernel: KernelSpec,
    pub f: Poly,
    pub z: Vec<C64>,
}

/// V_f(z) = 2⟨f, K(·,z)f⟩ − ‖f‖², by pairing coefficients.
pub fn sarason_function(inp: &SarasonInput) -> Result<C64> {
    let k = &inp.kernel;
    k.validate()?;
    if k.coeff(0) != 1.0 {
        return Err(Error::Precondition("kernel must satisfy a_0 = 1".into()));
    }
    let d = k.dim();
    if inp.f.nvars() != d || inp.z.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: inp.z.len() });
    }
    let r = norm(&inp.z);
    if !(r < 1.0) {
        return Err(Error::OutsideBall(r));
    }
    let terms: Vec<(&MultiIndex, &C64)> = inp.f.terms().collect();
    let mut pairing = C64::new(0.0, 0.0);
    let mut norm_sq = 0.0;
    for &(alpha, &fa) in &terms {
        let na = k.monomial_norm_sq(alpha)?;
        norm_sq += fa.norm_sqr() * na;
        let mut inner = C64::new(0.0, 0.0);
        for &(beta, &fb) in &terms {
            if beta.iter().zip(alpha).any(|(b, a)| b > a) {
                continue;
            }
            let gamma: Vec<u32> = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
            let g: u32 = gamma.iter().sum();
            if k.coeff(g as usize) == 0.0 {
                continue;
            }
            let zg = inp.z.iter().zip(&gamma).fold(C64::new(1.0, 0.0), |acc, (&zj, &e)| acc * zj.powu(e));
            inner += fb.conj() * zg / k.monomial_norm_sq(&gamma)?;
        }
        pairing += fa * na * inner;
    }
    Ok(pairing * 2.0 - norm_sq)
}

/// a_0..a_nmax of the τ-pullback kernel by the ratio recurrence.
pub fn tau_coeffs_f64(d: usize, nmax: usize) -> Vec<f64> {
    let df = d as f64;
    let mut out = Vec::with_capacity(nmax + 1);
    let mut a = 1.0;
    out.push(a);
    for n in 0..nmax {
        let nf = n as f64;
        for j in 1..=d {
            a *= (nf * df + j as f64) / (df * (nf + 1.0));
        }
        out.push(a);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticsRow {
    pub n: usize,
    pub a_n: f64,
    /// a_n (2πn)^{(d−1)/2}.
    pub normalized: f64,
    /// normalized / √d, whose limit is 1.
    pub normalized_sqrt_d: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticsReport {
    pub d: usize,
    pub nmax: usize,
    pub rows: Vec<AsymptoticsRow>,
    /// |normalized − 1| at nmax.
    pub deviation: f64,
    /// |normalized/√d − 1| at nmax.
    pub deviation_sqrt_d: f64,
    pub tolerance: f64,
}

impl AsymptoticsReport {
    pub fn last(&self) -> &AsymptoticsRow {
        &self.rows[self.rows.len() - 1]
    }
}

pub const ASYMPTOTICS_TOL: f64 = 0.05;

/// Sample points 1, 2, 5, 10, 20, 50, … below nmax, and nmax itself.
pub fn log_grid(nmax: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut base = 1;
    'outer: loop {
        for m in [1, 2, 5] {
            let n = base * m;
            if n >= nmax {
                break 'outer;
            }
            out.push(n);
        }
        base *= 10;
    }
    out.push(nmax);
    out
}

/// Tabulates a_n (2πn)^{(d−1)/2}. The limit of that quantity is √d, so
/// the check is made on the column divided by √d.
pub fn coefficient_asymptotics_report(d: usize, nmax: usize) -> Result<AsymptoticsReport> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if nmax < 100 {
        return Err(Error::InvalidParameter("nmax must be at least 100".into()));
    }
    let a = tau_coeffs_f64(d, nmax);
    let e = (d as f64 - 1.0) / 2.0;
    let rows: Vec<AsymptoticsRow> = log_grid(nmax)
        .into_iter()
        .map(|n| {
            let normalized = a[n] * libm::pow(2.0 * core::f64::consts::PI * n as f64, e);
            AsymptoticsRow { n, a_n: a[n], normalized, normalized_sqrt_d: normalized / (d as f64).sqrt() }
        })
        .collect();
    let last = rows[rows.len() - 1].clone();
    let report = AsymptoticsReport {
        d,
        nmax,
        deviation: (last.normalized - 1.0).abs(),
        deviation_sqrt_d: (last.normalized_sqrt_d - 1.0).abs(),
        rows,
        tolerance: ASYMPTOTICS_TOL,
    };
    if report.deviation_sqrt_d >= ASYMPTOTICS_TOL {
        return Err(Error::Violation(format!(
            "a_n (2πn)^((d-1)/2)/√d = {} at n = {nmax}",
            last.normalized_sqrt_d
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WindowRow {
    pub n: usize,
    pub norm_sq: f64,
    /// ‖τ^n‖² / (n+1)^{(d−1)/2 − s}.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WindowReport {
    pub d: usize,
    pub s: f64,
    pub fit_max: usize,
    pub nmax: usize,
    /// Ratio range on n ≤ fit_max.
    pub window: (f64, f64),
    pub factor: f64,
    pub rows: Vec<WindowRow>,
    /// Extreme ratios on fit_max < n ≤ nmax.
    pub observed: (f64, f64),
    pub passed: bool,
}

/// ‖τ^n‖²_{H_s(B_d)} = (nd+1)^{−s}/a_n, ratio window fitted on n ≤ fit_max
/// and asserted (widened by `factor`) on fit_max < n ≤ nmax.
pub fn hs_window_report(d: usize, s: f64, fit_max: usize, nmax: usize, factor: f64) -> Result<WindowReport> {
    if d == 0 || fit_max == 0 || nmax <= fit_max || !(factor >= 1.0) {
        return Err(Error::InvalidParameter("invalid window parameters".into()));
    }
    let a = tau_coeffs_f64(d, nmax);
    let e = (d as f64 - 1.0) / 2.0 - s;
    let ratio = |n: usize| {
        let norm_sq = libm::pow((n * d) as f64 + 1.0, -s) / a[n];
        (norm_sq, norm_sq / libm::pow(n as f64 + 1.0, e))
    };
    let mut window = (f64::INFINITY, 0.0f64);
    for n in 0..=fit_max {
        let r = ratio(n).1;
        window = (window.0.min(r), window.1.max(r));
    }
    let mut observed = (f64::INFINITY, 0.0f64);
    for n in fit_max + 1..=nmax {
        let r = ratio(n).1;
        observed = (observed.0.min(r), observed.1.max(r));
    }
    let rows = log_grid(nmax)
        .into_iter()
        .map(|n| {
            let (norm_sq, r) = ratio(n);
            WindowRow { n, norm_sq, ratio: r }
        })
        .collect();
    let passed = observed.0 >= window.0 / factor && observed.1 <= window.1 * factor;
    Ok(WindowReport { d, s, fit_max, nmax, window, factor, rows, observed, passed })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerRow {
    pub n: usize,
    /// Σ_{k ≤ degree} |B̂^n(k)|² ‖z^k‖², a lower bound for ‖B^n‖².
    pub norm_sq_lower: f64,
    pub norm_lower: f64,
    /// |B̂^n(degree)|, the size of the last retained coefficient.
    pub last_coeff: f64,
}

/// Truncated norms of B^n for B(z) = (z − a)/(1 − āz) on a one-variable
/// kernel, for n = 1..=nmax.
pub fn blaschke_power_norms(k: &KernelSpec, a: C64, nmax: usize, degree: usize) -> Result<Vec<PowerRow>> {
    k.validate()?;
    if k.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: k.dim() });
    }
    if !(a.norm() < 1.0) {
        return Err(Error::OutsideBall(a.norm()));
    }
    let weights: Vec<f64> = k.coeffs(degree + 1).iter().map(|a| 1.0 / a).collect();
    let mut g = vec![C64::new(0.0, 0.0); degree + 1];
    g[0] = C64::new(1.0, 0.0);
    let mut rows = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        // multiply by (z − a), then divide by (1 − āz)
        let mut h = vec![C64::new(0.0, 0.0); degree + 1];
        for j in 0..=degree {
            h[j] = -a * g[j] + if j > 0 { g[j - 1] } else { C64::new(0.0, 0.0) };
        }
        let mut q = h;
        for j in 1..=degree {
            let prev = q[j - 1];
            q[j] += a.conj() * prev;
        }
        g = q;
        let norm_sq_lower: f64 = g.iter().zip(&weights).map(|(c, w)| c.norm_sqr() * w).sum();
        rows.push(PowerRow { n, norm_sq_lower, norm_lower: norm_sq_lower.sqrt(), last_coeff: g[degree].norm() });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picknorm::{n_point_norm_at, trunc_mult_norm, PickData};
    use crate::poly::PolyMatrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn tau_examples() {
        let h = 0.5f64.sqrt();
        assert!((tau_eval(&[c(h, 0.0), c(h, 0.0)]).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(tau_eval(&[c(0.0, 0.0); 3]).unwrap(), c(0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let z: Vec<C64> = (0..3).map(|_| c(rng.gen_range(-0.57..0.57), rng.gen_range(-0.0..0.01))).collect();
            let direct = z[0] * z[1] * z[2] * 27f64.sqrt();
            let t = tau_eval(&z).unwrap();
            assert!((t - direct).norm() < 1e-15);
            assert!(t.norm() < 1.0);
        }
    }

    #[test]
    fn pullback_examples() {
        let w = Poly::coordinate(1, 0);
        let p = tau_pullback(&w, 2).unwrap();
        assert_eq!(p.coeff(&[1, 1]), c(2.0, 0.0));
        let h2 = KernelSpec::DirichletA { a: 1.0, d: 2 };
        assert!((h2.poly_norm_sq(&p).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(tau_pullback(&Poly::univariate_real(&[1.0]), 4).unwrap(), Poly::constant(4, c(1.0, 0.0)));
        let cube = tau_pullback(&Poly::monomial(vec![3], c(1.0, 0.0)), 3).unwrap();
        assert!((cube.coeff(&[3, 3, 3]).re - libm::pow(3.0, 4.5)).abs() < 1e-10);
        let lhs = KernelSpec::DirichletA { a: 1.0, d: 3 }.poly_norm_sq(&cube).unwrap();
        let rhs = KernelSpec::TauPullback { d: 3 }.monomial_norm_sq(&[3]).unwrap();
        assert!((lhs / rhs - 1.0).abs() < 1e-13);
    }

    #[test]
    fn isometry_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in 1..=3 {
            for _ in 0..10 {
                let coeffs: Vec<BigRational> =
                    (0..=12).map(|_| BigRational::from_integer(rng.gen_range(-9i64..=9).into())).collect();
                let (l, r) = tau_isometry_exact(&coeffs, d).unwrap();
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn projection_examples() {
        let z1 = Poly::coordinate(1, 0);
        assert_eq!(proj_extend(&z1, 3).unwrap(), Poly::coordinate(3, 0));
        let k1 = KernelSpec::DirichletA { a: 0.5, d: 2 };
        let k3 = KernelSpec::DirichletA { a: 0.5, d: 3 };
        let phi = Poly::from_terms(2, [(vec![1, 0], c(0.4, 0.0)), (vec![1, 1], c(0.0, -0.7))]).unwrap();
        let ext = proj_extend(&phi, 3).unwrap();
        let pts = vec![vec![c(0.1, 0.2), c(-0.3, 0.0)], vec![c(0.5, 0.0), c(0.1, 0.1)], vec![c(-0.2, 0.3), c(0.0, -0.4)]];
        let lifted: Vec<Vec<C64>> = pts.iter().map(|p| lift_point(p, 3)).collect();
        let v1: Vec<C64> = pts.iter().map(|p| phi.eval(p).unwrap()).collect();
        let v3: Vec<C64> = lifted.iter().map(|p| ext.eval(p).unwrap()).collect();
        let a = n_point_norm_at(&PickData::scalar(k1.clone(), pts, &v1).unwrap()).unwrap();
        let b = n_point_norm_at(&PickData::scalar(k3.clone(), lifted, &v3).unwrap()).unwrap();
        assert!((a - b).abs() < 1e-12);
        for n in 1..6 {
            let small = trunc_mult_norm(&k1, &PolyMatrix::scalar(phi.clone()), n).unwrap();
            let big = trunc_mult_norm(&k3, &PolyMatrix::scalar(ext.clone()), n).unwrap();
            assert!(big >= small - 1e-10);
        }
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_decomposition(1, 7).unwrap().alphas, vec![vec![0]]);
        assert_eq!(boundary_decomposition(2, 4).unwrap().alphas.len(), 9);
        for d in 1..=4 {
            for cap in 0..=10 {
                boundary_decomposition(d, cap).unwrap();
            }
        }
        assert_eq!(BoundaryMultiIndexSet::decompose(&[3, 5, 4]), (vec![0, 2, 1], 3));
    }

    #[test]
    fn block_weights_match_shift_weights() {
        for d in 1..=4usize {
            let set = boundary_decomposition(d, 8).unwrap();
            for alpha in &set.alphas {
                for k in 0..8 {
                    assert_eq!(block_weight_sq_exact(alpha, k).unwrap(), crate::shifts::da_base(alpha, k as u64));
                }
            }
        }
    }

    #[test]
    fn h2_equals_dhalf_coefficients() {
        for n in 0..=60 {
            assert!(h2_dhalf_identity(n), "{n}");
        }
        let t = KernelSpec::TauPullback { d: 2 };
        let dh = KernelSpec::DirichletA { a: 0.5, d: 1 };
        for n in 0..40 {
            assert_eq!(t.coeff_exact(n).unwrap(), dh.coeff_exact(n).unwrap());
        }
    }

    #[test]
    fn sarason_examples() {
        let one = Poly::univariate_real(&[1.0]);
        for k in [KernelSpec::Szego, KernelSpec::DirichletA { a: 0.0, d: 1 }, KernelSpec::DirichletA { a: 0.5, d: 1 }] {
            let v = sarason_function(&SarasonInput { kernel: k, f: one.clone(), z: vec![c(0.3, -0.2)] }).unwrap();
            assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let z = C64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..6.28));
            let inp = SarasonInput { kernel: KernelSpec::Szego, f: Poly::coordinate(1, 0), z: vec![z] };
            assert!((sarason_function(&inp).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn sarason_transport_through_tau() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h2 = KernelSpec::DirichletA { a: 1.0, d: 2 };
        for deg in 0..=10 {
            let u: Vec<C64> = (0..=deg).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let u = Poly::univariate(&u);
            let phi = tau_pullback(&u, 2).unwrap();
            let z = vec![
                C64::from_polar(rng.gen_range(0.0..0.65), rng.gen_range(0.0..6.28)),
                C64::from_polar(rng.gen_range(0.0..0.65), rng.gen_range(0.0..6.28)),
            ];
            let left = sarason_function(&SarasonInput { kernel: h2.clone(), f: phi, z: z.clone() }).unwrap();
            let t = tau_eval(&z).unwrap();
            for k in [KernelSpec::DirichletA { a: 0.5, d: 1 }, KernelSpec::TauPullback { d: 2 }] {
                let right = sarason_function(&SarasonInput { kernel: k, f: u.clone(), z: vec![t] }).unwrap();
                assert!((left - right).norm() < 1e-10 * left.norm().max(1.0), "{deg}");
            }
        }
    }

    #[test]
    fn asymptotics_examples() {
        let a = tau_coeffs_f64(1, 200);
        assert!(a.iter().all(|&v| v == 1.0));
        let two = tau_coeffs_f64(2, 60);
        for n in 0..=60u64 {
            let exact = crate::exact::to_f64(&crate::kernels::tau_coeff_exact(n, 2));
            assert!((two[n as usize] / exact - 1.0).abs() < 1e-13);
        }
        for d in 2..=5 {
            let r = coefficient_asymptotics_report(d, 10_000).unwrap();
            assert!(r.deviation_sqrt_d < 1e-4);
            // independent route through log-gamma
            let n = 10_000f64;
            let df = d as f64;
            let lg = libm::lgamma(n * df + 1.0) - df * n * libm::log(df) - df * libm::lgamma(n + 1.0);
            assert!((r.last().a_n / libm::exp(lg) - 1.0).abs() < 1e-8);
        }
        let r3 = coefficient_asymptotics_report(3, 10_000).unwrap();
        assert!((r3.last().normalized - 3f64.sqrt()).abs() < 1e-3);
        assert!(coefficient_asymptotics_report(3, 50).is_err());
    }

    #[test]
    fn hs_window_holds() {
        for (d, s) in [(2, 0.0), (3, 0.5), (4, -0.5), (2, 1.0)] {
            let rep = hs_window_report(d, s, 1000, 10_000, 1.5).unwrap();
            assert!(rep.passed, "{d} {s} {:?} {:?}", rep.window, rep.observed);
        }
    }

    #[test]
    fn blaschke_power_growth() {
        let a = c(0.5, 0.0);
        for k in [KernelSpec::DirichletA { a: 0.0, d: 1 }, KernelSpec::DirichletA { a: 0.5, d: 1 }] {
            let rows = blaschke_power_norms(&k, a, 64, 4096).unwrap();
            assert!(rows.windows(2).all(|w| w[1].norm_lower > w[0].norm_lower));
            assert!(rows[63].norm_lower > 3.0);
            assert!(rows[63].last_coeff < 1e-100);
        }
        // on H² every power has norm 1
        let rows = blaschke_power_norms(&KernelSpec::Szego, a, 10, 2048).unwrap();
        assert!(rows.iter().all(|r| (r.norm_lower - 1.0).abs() < 1e-12));
    }

    #[test]
    fn power_coefficients_match_direct_expansion() {
        let a = c(0.3, 0.4);
        let rows = blaschke_power_norms(&KernelSpec::DirichletA { a: 0.0, d: 1 }, a, 3, 200).unwrap();
        // oracle: Cauchy-product of the single factor's series, cubed
        let mut b = vec![C64::new(0.0, 0.0); 201];
        b[0] = -a;
        for k in 1..=200 {
            b[k] = a.conj().powu(k as u32 - 1) * (C64::new(1.0, 0.0) - a.norm_sqr());
        }
        let conv = |x: &[C64], y: &[C64]| -> Vec<C64> {
            (0..=200).map(|k| (0..=k).map(|j| x[j] * y[k - j]).sum()).collect()
        };
        let b3 = conv(&conv(&b, &b), &b);
        let direct: f64 = b3.iter().enumerate().map(|(k, v)| v.norm_sqr() * (k as f64 + 1.0)).sum();
        assert!((rows[2].norm_sq_lower - direct).abs() < 1e-12 * direct);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tau_bounded_on_ball(d in 1usize..=5, raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5), scale in 0.0f64..1.0) {
            let v: Vec<C64> = raw[..d].iter().map(|&(x, y)| c(x, y)).collect();
            let n = norm(&v);
            prop_assume!(n > 1e-9);
            let z: Vec<C64> = v.iter().map(|x| x * (scale / n)).collect();
            prop_assert!(tau_eval(&z).unwrap().norm() <= 1.0 + 1e-12);
        }

        #[test]
        fn sarason_real_part_of_unit_norm_constant(z in (0.0f64..0.9, 0.0f64..6.28), a in 0.0f64..2.0) {
            let k = KernelSpec::DirichletA { a, d: 1 };
            let inp = SarasonInput { kernel: k, f: Poly::univariate_real(&[1.0]), z: vec![C64::from_polar(z.0, z.1)] };
            prop_assert!((sarason_function(&inp).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        }
    }
}

//! n-point multiplier norms as Hermitian pencils over Pick matrices, graded
//! compressions of multiplication operators, and seeded multistart search.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernels::{inner, norm, pseudo_hyperbolic, KernelSpec};
use crate::linalg::{hermitian_eigenvalues, kron_identity, largest_singular_value, min_eigenvalue, pencil_max};
use crate::poly::{indices_up_to, MultiIndex, Poly, PolyMatrix};
use crate::{CMatrix, Error, Result, C64};

/// Points closer than this are merged.
pub const MERGE_TOL: f64 = 1e-9;
/// Smallest admissible Gram eigenvalue.
pub const GRAM_TOL: f64 = 1e-10;
/// Gram condition number above which the pencil is solved by bisection.
pub const COND_LIMIT: f64 = 1e12;
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
/// Configurations whose Gram condition number exceeds this are discarded
/// by the search, so that reported values stay accurate.
pub const SEARCH_COND_LIMIT: f64 = 1e8;

#[derive(Clone, Debug, PartialEq)]
pub struct PickData {
    pub kernel: KernelSpec,
    pub points: Vec<Vec<C64>>,
    pub values: Vec<CMatrix>,
}

impl PickData {
    pub fn new(kernel: KernelSpec, points: Vec<Vec<C64>>, values: Vec<CMatrix>) -> Result<Self> {
        kernel.validate()?;
        if points.is_empty() {
            return Err(Error::InvalidParameter("no points".into()));
        }
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), found: values.len() });
        }
        let d = kernel.dim();
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
        }
        let r = values[0].nrows();
        if r == 0 {
            return Err(Error::InvalidParameter("empty value matrix".into()));
        }
        if let Some(v) = values.iter().find(|v| v.nrows() != r || v.ncols() != r) {
            return Err(Error::DimensionMismatch { expected: r, found: v.ncols() });
        }
        Ok(PickData { kernel, points, values })
    }

    pub fn scalar(kernel: KernelSpec, points: Vec<Vec<C64>>, values: &[C64]) -> Result<Self> {
        let v = values.iter().map(|&x| CMatrix::from_element(1, 1, x)).collect();
        PickData::new(kernel, points, v)
    }

    /// Scalar data on the disc.
    pub fn disc(kernel: KernelSpec, z: &[C64], w: &[C64]) -> Result<Self> {
        PickData::scalar(kernel, z.iter().map(|&p| vec![p]).collect(), w)
    }

    pub fn level(&self) -> usize {
        self.values[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Merges points closer than `MERGE_TOL`; their values must agree.
    pub fn deduplicated(&self) -> Result<PickData> {
        let mut points: Vec<Vec<C64>> = Vec::new();
        let mut values: Vec<CMatrix> = Vec::new();
        for (p, v) in self.points.iter().zip(&self.values) {
            let hit = points.iter().position(|q| {
                let diff: Vec<C64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
                norm(&diff) < MERGE_TOL
            });
            match hit {
                Some(i) => {
                    let scale = v.norm().max(values[i].norm()).max(1.0);
                    if (v - &values[i]).norm() > 1e-9 * scale {
                        return Err(Error::InconsistentData);
                    }
                }
                None => {
                    points.push(p.clone());
                    values.push(v.clone());
                }
            }
        }
        Ok(PickData { kernel: self.kernel.clone(), points, values })
    }

    /// The pencil (B, A⊗I): B has blocks K(z_i,z_j) Φ_i Φ_j*.
    pub fn pencil(&self) -> Result<(CMatrix, CMatrix)> {
        let g = self.kernel.gram(&self.points)?;
        let r = self.level();
        let n = self.len();
        let mut b = CMatrix::zeros(n * r, n * r);
        for i in 0..n {
            for j in 0..n {
                let blk = &self.values[i] * self.values[j].adjoint() * g[(i, j)];
                b.view_mut((i * r, j * r), (r, r)).copy_from(&blk);
            }
        }
        Ok((b, kron_identity(&g, r)))
    }
}

/// Smallest C with [K(z_i,z_j)(C² − Φ_iΦ_j*)] positive semidefinite.
pub fn n_point_norm_at(p: &PickData) -> Result<f64> {
    norm_and_condition(p).map(|(v, _)| v)
}

/// The n-point norm together with the condition number of the Gram matrix.
pub fn norm_and_condition(p: &PickData) -> Result<(f64, f64)> {
    let p = p.deduplicated()?;
    let g = p.kernel.gram(&p.points)?;
    let eig = hermitian_eigenvalues(&g);
    let (lo, hi) = (eig[0], eig[eig.len() - 1]);
    if lo < GRAM_TOL {
        return Err(Error::SingularGram(lo));
    }
    let (b, a) = p.pencil()?;
    let lam = if hi / lo > COND_LIMIT {
        bisect_pencil(&b, &a, lo)
    } else {
        pencil_max(&b, &a)?
    };
    Ok((lam.max(0.0).sqrt(), hi / lo))
}

/// Largest generalized eigenvalue by bisection on the sign of the smallest
/// eigenvalue of the diagonally rescaled matrix λA − B.
fn bisect_pencil(b: &CMatrix, a: &CMatrix, a_min: f64) -> f64 {
    let n = a.nrows();
    let scale: Vec<f64> = (0..n).map(|i| 1.0 / a[(i, i)].re.sqrt()).collect();
    let feasible = |lam: f64| {
        let m = CMatrix::from_fn(n, n, |i, j| (a[(i, j)] * lam - b[(i, j)]) * (scale[i] * scale[j]));
        min_eigenvalue(&m) >= 0.0
    };
    let mut lo = 0.0;
    let mut hi = b.norm() / a_min + 1e-300;
    if feasible(0.0) {
        return 0.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-16 * hi {
            break;
        }
    }
    hi
}

/// Two-point test: the 2-point norm is ≤ 1 iff the values agree with modulus
/// ≤ 1, or δ(φz, φw) ≤ δ_H(z, w) with both values in the closed disc.
pub fn two_point_check(k: &KernelSpec, z: &[C64], w: &[C64], phi_z: C64, phi_w: C64) -> Result<bool> {
    let kzz = k.eval(z, z)?;
    let kww = k.eval(w, w)?;
    let kzw = k.eval(z, w)?;
    if !(kzz.re > 0.0 && kww.re > 0.0) {
        return Err(Error::Inapplicable("kernel vanishes on the diagonal".into()));
    }
    if kzw.norm() <= 1e-14 * (kzz.re * kww.re).sqrt() {
        return Err(Error::Inapplicable("kernel vanishes at the pair".into()));
    }
    if (phi_z - phi_w).norm() <= 1e-14 {
        return Ok(phi_z.norm() <= 1.0);
    }
    if phi_z.norm() > 1.0 || phi_w.norm() > 1.0 {
        return Ok(false);
    }
    Ok(pseudo_hyperbolic(phi_z, phi_w) <= k.delta_metric(z, w)?)
}

/// Norm of the compression of [M_{φ_ij}] to span{z^α : |α| ≤ n} in the
/// orthonormalized monomial basis.
pub fn trunc_mult_norm(k: &KernelSpec, phi: &PolyMatrix, n: u32) -> Result<f64> {
    let d = k.dim();
    if phi.nvars() != d {
        return Err(Error::DimensionMismatch { expected: d, found: phi.nvars() });
    }
    let mut basis: Vec<MultiIndex> = Vec::new();
    let mut norms: Vec<f64> = Vec::new();
    for alpha in indices_up_to(d, n) {
        if k.coeff(alpha.iter().sum::<u32>() as usize) > 0.0 {
            norms.push(k.monomial_norm_sq(&alpha)?.sqrt());
            basis.push(alpha);
        }
    }
    let index: BTreeMap<&MultiIndex, usize> = basis.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let r = phi.size();
    let m = basis.len();
    let mut mat = CMatrix::zeros(r * m, r * m);
    for (col, alpha) in basis.iter().enumerate() {
        for i in 0..r {
            for j in 0..r {
                for (gamma, c) in phi.get(i, j).terms() {
                    let beta: MultiIndex = alpha.iter().zip(gamma).map(|(a, g)| a + g).collect();
                    if let Some(&row) = index.get(&beta) {
                        mat[(row * r + i, col * r + j)] += c * (norms[row] / norms[col]);
                    }
                }
            }
        }
    }
    Ok(largest_singular_value(&mat))
}

/// (Σ ‖f_i‖²)^{1/2}: the column multiplier applied to the constant 1.
pub fn column_norm_lower_bound(k: &KernelSpec, fns: &[Poly]) -> Result<f64> {
    let mut acc = 0.0;
    for f in fns {
        acc += k.poly_norm_sq(f)?;
    }
    Ok(acc.sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
    pub rho: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { n: 2, restarts: 32, max_iters: 200, seed: DEFAULT_SEED, rho: 0.999 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.restarts == 0 {
            return Err(Error::InvalidParameter("n and restarts must be positive".into()));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidParameter("rho must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    /// Best n-point norm found: a lower bound for the n-point norm.
    pub value: f64,
    pub witness: PickData,
    pub restart: usize,
}

impl SearchResult {
    /// Canonical preference: larger value, then lower restart index.
    pub fn beats(&self, other: &SearchResult) -> bool {
        self.value > other.value || (self.value == other.value && self.restart < other.restart)
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Generator seed owned by one restart.
pub fn restart_seed(seed: u64, restart: usize) -> u64 {
    splitmix(seed ^ splitmix(restart as u64))
}

fn decode(x: &[f64], n: usize, d: usize, rho: f64) -> Vec<Vec<C64>> {
    (0..n)
        .map(|i| {
            let v: Vec<C64> = (0..d).map(|j| C64::new(x[2 * (i * d + j)], x[2 * (i * d + j) + 1])).collect();
            let t = norm(&v);
            if t > rho {
                v.into_iter().map(|c| c * (rho / t)).collect()
            } else {
                v
            }
        })
        .collect()
}

/// Scalar symbol that the search can evaluate at points of the ball.
pub trait Symbol {
    fn nvars(&self) -> usize;
    fn eval_at(&self, z: &[C64]) -> Result<C64>;
}

impl Symbol for Poly {
    fn nvars(&self) -> usize {
        Poly::nvars(self)
    }

    fn eval_at(&self, z: &[C64]) -> Result<C64> {
        self.eval(z)
    }
}

impl Symbol for crate::interpolation::Analytic {
    fn nvars(&self) -> usize {
        1
    }

    fn eval_at(&self, z: &[C64]) -> Result<C64> {
        if z.len() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: z.len() });
        }
        let v = self.eval(z[0]);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain("pole".into()))
        }
    }
}

fn objective<S: Symbol + ?Sized>(k: &KernelSpec, phi: &S, x: &[f64], n: usize, rho: f64) -> f64 {
    let pts = decode(x, n, k.dim(), rho);
    let vals: Result<Vec<C64>> = pts.iter().map(|p| phi.eval_at(p)).collect();
    let data = match vals.and_then(|v| PickData::scalar(k.clone(), pts, &v)) {
        Ok(d) => d,
        Err(_) => return f64::NEG_INFINITY,
    };
    match norm_and_condition(&data) {
        Ok((v, cond)) if v.is_finite() && cond <= SEARCH_COND_LIMIT => v,
        _ => f64::NEG_INFINITY,
    }
}

fn uniform_start(rng: &mut ChaCha8Rng, n: usize, d: usize, rho: f64) -> Vec<f64> {
    let mut x = Vec::with_capacity(2 * n * d);
    for _ in 0..n {
        // direction uniform on the sphere, radius with density ∝ r^{2d-1}
        let v: Vec<f64> = (0..2 * d).map(|_| gaussian(rng)).collect();
        let len = v.iter().map(|a| a * a).sum::<f64>().sqrt().max(1e-300);
        let r = rho * libm::pow(rng.gen::<f64>(), 1.0 / (2 * d) as f64);
        x.extend(v.iter().map(|a| a * r / len));
    }
    x
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let v: f64 = rng.gen();
    (-2.0 * libm::log(u)).sqrt() * libm::cos(2.0 * core::f64::consts::PI * v)
}

/// One restart of coordinate-wise quadratic probing ascent.
pub fn search_restart<S: Symbol + ?Sized>(k: &KernelSpec, phi: &S, cfg: &SearchConfig, restart: usize) -> Result<SearchResult> {
    cfg.validate()?;
    k.validate()?;
    if phi.nvars() != k.dim() {
        return Err(Error::DimensionMismatch { expected: k.dim(), found: phi.nvars() });
    }
    let (n, d, rho) = (cfg.n, k.dim(), cfg.rho);
    let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, restart));
    let f = |x: &[f64]| objective(k, phi, x, n, rho);
    let mut x = uniform_start(&mut rng, n, d, rho);
    let mut fx = f(&x);
    for _ in 0..16 {
        if fx.is_finite() {
            break;
        }
        // re-separate collapsed configurations
        x = uniform_start(&mut rng, n, d, rho);
        fx = f(&x);
    }
    let mut h = 0.25;
    for _ in 0..cfg.max_iters {
        let mut improved = false;
        for i in 0..x.len() {
            let xi = x[i];
            x[i] = xi - h;
            let fm = f(&x);
            x[i] = xi + h;
            let fp = f(&x);
            let mut best = (fx, xi);
            if fm > best.0 {
                best = (fm, xi - h);
            }
            if fp > best.0 {
                best = (fp, xi + h);
            }
            let curv = fm + fp - 2.0 * fx;
            if fm.is_finite() && fp.is_finite() && fx.is_finite() && curv < 0.0 {
                let t = (h * (fm - fp) / (2.0 * curv)).clamp(-4.0 * h, 4.0 * h);
                if t != 0.0 && t != h && t != -h {
                    x[i] = xi + t;
                    let ft = f(&x);
                    if ft > best.0 {
                        best = (ft, xi + t);
                    }
                }
            }
            x[i] = best.1;
            if best.0 > fx {
                improved = true;
                fx = best.0;
            }
        }
        if !improved {
            h *= 0.5;
            if h < 1e-9 {
                break;
            }
        }
    }
    let pts = decode(&x, n, d, rho);
    let vals = pts.iter().map(|p| phi.eval_at(p)).collect::<Result<Vec<_>>>()?;
    let witness = PickData::scalar(k.clone(), pts, &vals)?;
    let value = if fx.is_finite() { fx } else { 0.0 };
    Ok(SearchResult { value, witness, restart })
}

/// Sequential multistart; merges restarts by `SearchResult::beats`.
pub fn search_n_point_norm<S: Symbol + ?Sized>(k: &KernelSpec, phi: &S, cfg: &SearchConfig) -> Result<SearchResult> {
    let mut best: Option<SearchResult> = None;
    for r in 0..cfg.restarts {
        let res = search_restart(k, phi, cfg, r)?;
        if best.as_ref().map_or(true, |b| res.beats(b)) {
            best = Some(res);
        }
    }
    best.ok_or_else(|| Error::InvalidParameter("no restarts".into()))
}

/// Exact n-point norm of a symbol restricted to the given points.
pub fn poly_norm_at<S: Symbol + ?Sized>(k: &KernelSpec, phi: &S, points: &[Vec<C64>]) -> Result<f64> {
    let vals = points.iter().map(|p| phi.eval_at(p)).collect::<Result<Vec<_>>>()?;
    n_point_norm_at(&PickData::scalar(k.clone(), points.to_vec(), &vals)?)
}

pub fn inner_product(z: &[C64], w: &[C64]) -> C64 {
    inner(z, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rand_disc(rng: &mut ChaCha8Rng, rmax: f64) -> C64 {
        C64::from_polar(rmax * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..6.283))
    }

    /// Independent oracle: bisection on C with an eigenvalue test on the
    /// Pick-type matrix itself.
    fn oracle(p: &PickData) -> f64 {
        let g = p.kernel.gram(&p.points).unwrap();
        let r = p.level();
        let n = p.len();
        let psd = |cc: f64| {
            let m = CMatrix::from_fn(n * r, n * r, |i, j| {
                let (a, b) = (i / r, j / r);
                let prod = &p.values[a] * p.values[b].adjoint();
                let id = if i % r == j % r { cc * cc } else { 0.0 };
                g[(a, b)] * (C64::new(id, 0.0) - prod[(i % r, j % r)])
            });
            min_eigenvalue(&m) >= 0.0
        };
        let mut hi = p.values.iter().map(|v| v.norm()).fold(0.0, f64::max) * 1e3 + 1.0;
        while !psd(hi) {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if psd(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    #[test]
    fn one_point_norm_is_modulus() {
        for k in [KernelSpec::Szego, KernelSpec::DirichletA { a: 0.5, d: 1 }] {
            let p = PickData::disc(k, &[c(0.0, 0.0)], &[c(0.3, 0.0)]).unwrap();
            assert!((n_point_norm_at(&p).unwrap() - 0.3).abs() < 1e-15);
        }
    }

    #[test]
    fn szego_two_point_example() {
        let p = PickData::disc(KernelSpec::Szego, &[c(0.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert!((n_point_norm_at(&p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pencil_matches_bisection_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let k = KernelSpec::DirichletA { a: 0.5, d: 1 };
        for i in 0..500 {
            let n = 1 + i % 5;
            let z: Vec<C64> = (0..n).map(|_| rand_disc(&mut rng, 0.9)).collect();
            let w: Vec<C64> = (0..n).map(|_| rand_disc(&mut rng, 1.0)).collect();
            let p = PickData::disc(k.clone(), &z, &w).unwrap();
            let Ok(v) = n_point_norm_at(&p) else { continue };
            assert!((v - oracle(&p)).abs() < 1e-8 * v.max(1.0));
        }
    }

    #[test]
    fn matrix_valued_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let k = KernelSpec::DirichletA { a: 1.0, d: 2 };
        for i in 0..100 {
            let (r, n) = (1 + i % 3, 1 + i % 5);
            let pts: Vec<Vec<C64>> = (0..n).map(|_| vec![rand_disc(&mut rng, 0.6), rand_disc(&mut rng, 0.6)]).collect();
            let vals: Vec<CMatrix> = (0..n).map(|_| CMatrix::from_fn(r, r, |_, _| rand_disc(&mut rng, 1.0))).collect();
            let p = PickData::new(k.clone(), pts, vals).unwrap();
            let Ok(v) = n_point_norm_at(&p) else { continue };
            assert!((v - oracle(&p)).abs() < 1e-8 * v.max(1.0));
        }
    }

    #[test]
    fn duplicates_are_merged_and_conflicts_rejected() {
        let k = KernelSpec::Szego;
        let p = PickData::disc(k.clone(), &[c(0.1, 0.0), c(0.1, 0.0), c(0.4, 0.0)], &[c(0.2, 0.0), c(0.2, 0.0), c(0.3, 0.0)]).unwrap();
        let q = PickData::disc(k.clone(), &[c(0.1, 0.0), c(0.4, 0.0)], &[c(0.2, 0.0), c(0.3, 0.0)]).unwrap();
        assert_eq!(n_point_norm_at(&p).unwrap(), n_point_norm_at(&q).unwrap());
        let bad = PickData::disc(k, &[c(0.1, 0.0), c(0.1, 0.0)], &[c(0.2, 0.0), c(0.5, 0.0)]).unwrap();
        assert_eq!(n_point_norm_at(&bad), Err(Error::InconsistentData));
    }

    #[test]
    fn nearly_coincident_points_are_singular() {
        let p = PickData::disc(KernelSpec::Szego, &[c(0.1, 0.0), c(0.1 + 1e-7, 0.0)], &[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(matches!(n_point_norm_at(&p), Err(Error::SingularGram(_))));
    }

    #[test]
    fn ill_conditioned_gram_uses_bisection() {
        let k = KernelSpec::Szego;
        let z: Vec<C64> = (0..5).map(|i| c(0.995 - 3e-4 * i as f64, 0.0)).collect();
        let w: Vec<C64> = z.iter().map(|&x| x * x * 0.5 + c(0.0, 0.1)).collect();
        let p = PickData::disc(k.clone(), &z, &w).unwrap();
        let g = k.gram(&p.points).unwrap();
        let e = hermitian_eigenvalues(&g);
        assert!(e[4] / e[0] > COND_LIMIT && e[0] > GRAM_TOL);
        let v = n_point_norm_at(&p).unwrap();
        // 50-digit reference for this configuration
        let exact = 0.511_543_882_407_048_1;
        assert!((v - exact).abs() < 1e-4 * exact);
        assert!((v - oracle(&p)).abs() < 1e-4 * exact);
    }

    #[test]
    fn two_point_examples() {
        let k = KernelSpec::Szego;
        assert!(two_point_check(&k, &[c(0.1, 0.0)], &[c(0.3, 0.0)], c(0.7, 0.0), c(0.7, 0.0)).unwrap());
        assert!(!two_point_check(&k, &[c(0.0, 0.0)], &[c(0.5, 0.0)], c(0.0, 0.0), c(0.6, 0.0)).unwrap());
        let d0 = KernelSpec::DirichletA { a: 0.0, d: 1 };
        let theta = |z: C64| (c(0.9, 0.0) - z) / (c(1.0, 0.0) - z * 0.9);
        let (z, w) = (c(0.2, 0.0), c(0.25, 0.0));
        let verdict = two_point_check(&d0, &[z], &[w], theta(z), theta(w)).unwrap();
        let p = PickData::disc(d0, &[z, w], &[theta(z), theta(w)]).unwrap();
        let norm = oracle(&p);
        assert_eq!(verdict, norm <= 1.0);
    }

    #[test]
    fn trunc_examples() {
        let one = PolyMatrix::scalar(Poly::univariate_real(&[1.0]));
        for n in [0, 3, 10] {
            assert!((trunc_mult_norm(&KernelSpec::DirichletA { a: 0.0, d: 1 }, &one, n).unwrap() - 1.0).abs() < 1e-14);
        }
        let d0 = KernelSpec::DirichletA { a: 0.0, d: 1 };
        for m in [1u32, 4, 9] {
            let zm = PolyMatrix::scalar(Poly::monomial(vec![m], c(1.0, 0.0)));
            let v = trunc_mult_norm(&d0, &zm, m).unwrap();
            assert!((v - ((m + 1) as f64).sqrt()).abs() < 1e-12);
        }
        let z = PolyMatrix::scalar(Poly::coordinate(1, 0));
        assert!((trunc_mult_norm(&KernelSpec::Szego, &z, 20).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn trunc_is_nondecreasing() {
        let k = KernelSpec::DirichletA { a: 0.5, d: 2 };
        let phi = Poly::from_terms(2, [(vec![1, 0], c(0.5, 0.2)), (vec![1, 1], c(-0.3, 0.0)), (vec![0, 2], c(0.1, 0.1))]).unwrap();
        let pm = PolyMatrix::scalar(phi);
        let mut prev = 0.0;
        for n in 0..8 {
            let v = trunc_mult_norm(&k, &pm, n).unwrap();
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn column_norm_examples() {
        for (a, expect) in [(0.5, 4.0f64.sqrt() * 1.0), (0.25, 8.0f64.sqrt()), (0.0, 4.0f64.sqrt())] {
            let d = 2;
            let k = KernelSpec::DirichletA { a, d };
            let coords: Vec<Poly> = (0..d).map(|i| Poly::coordinate(d, i)).collect();
            let v = column_norm_lower_bound(&k, &coords).unwrap();
            assert!((v - expect).abs() < 1e-14, "{a}");
        }
        let k = KernelSpec::DirichletA { a: 0.5, d: 1 };
        assert_eq!(column_norm_lower_bound(&k, &[Poly::univariate_real(&[1.0])]).unwrap(), 1.0);
    }

    #[test]
    fn one_point_search_reaches_radius() {
        let cfg = SearchConfig { n: 1, restarts: 4, max_iters: 60, seed: 1, rho: 0.99 };
        for k in [KernelSpec::Szego, KernelSpec::DirichletA { a: 0.0, d: 1 }] {
            let res = search_n_point_norm(&k, &Poly::coordinate(1, 0), &cfg).unwrap();
            assert!(res.value >= 0.99 - 1e-12, "{}", res.value);
        }
    }

    #[test]
    fn szego_search_respects_sup_norm() {
        let phi = Poly::univariate_real(&[0.1, -0.4, 0.3, 0.2]);
        assert!(phi.sup_on_circle(4096).unwrap() <= 1.0);
        for n in [2, 3] {
            let cfg = SearchConfig { n, restarts: 4, max_iters: 60, seed: 9, rho: 0.999 };
            let res = search_n_point_norm(&KernelSpec::Szego, &phi, &cfg).unwrap();
            assert!(res.value <= 1.0 + 1e-9);
            assert_eq!(poly_norm_at(&KernelSpec::Szego, &phi, &res.witness.points).unwrap(), res.value);
        }
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SearchConfig { n: 2, restarts: 3, max_iters: 30, seed: 42, rho: 0.99 };
        let k = KernelSpec::DirichletA { a: 0.0, d: 1 };
        let phi = Poly::monomial(vec![3], c(1.0, 0.0));
        let a = search_n_point_norm(&k, &phi, &cfg).unwrap();
        let b = search_n_point_norm(&k, &phi, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dirichlet_theta_two_point_exceeds_sup_norm() {
        let r = 0.999;
        let theta = crate::interpolation::Analytic::Rational { num: vec![c(r, 0.0), c(-1.0, 0.0)], den: vec![c(1.0, 0.0), c(-r, 0.0)] };
        let k = KernelSpec::DirichletA { a: 0.0, d: 1 };
        let cfg = SearchConfig::default();
        let res = search_n_point_norm(&k, &theta, &cfg).unwrap();
        std::println!("theta two-point {}", res.value);
        assert!(res.value > 1.2, "{}", res.value);
        // dense grid oracle near z = r
        let mut grid_best = 0.0f64;
        for i in 0..40 {
            for j in 0..40 {
                let z = c(r - 0.05 * (i as f64 / 40.0).powi(2), 0.0);
                let w = c(r - 0.5 * (j as f64 / 40.0).powi(2), 0.0);
                if (z - w).norm() < 1e-6 {
                    continue;
                }
                grid_best = grid_best.max(poly_norm_at(&k, &theta, &[vec![z], vec![w]]).unwrap());
            }
        }
        std::println!("grid {}", grid_best);
        assert!(grid_best > 1.2);
    }

    fn disc_strategy(rmax: f64) -> impl Strategy<Value = C64> {
        (0.0f64..rmax, 0.0f64..6.283).prop_map(|(r, t)| C64::from_polar(r, t))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn restriction_never_increases_norm(
            z in proptest::collection::vec(disc_strategy(0.9), 2..6),
            w in proptest::collection::vec(disc_strategy(1.0), 6),
            a in 0.0f64..2.0,
        ) {
            let k = KernelSpec::DirichletA { a, d: 1 };
            let n = z.len();
            let full = PickData::disc(k.clone(), &z, &w[..n]);
            let sub = PickData::disc(k, &z[..n - 1], &w[..n - 1]);
            if let (Ok(f), Ok(s)) = (full.map(|p| n_point_norm_at(&p)), sub.map(|p| n_point_norm_at(&p))) {
                if let (Ok(f), Ok(s)) = (f, s) {
                    prop_assert!(f >= s - 1e-10);
                }
            }
        }

        #[test]
        fn automorphism_transport(
            z in proptest::collection::vec(disc_strategy(0.85), 2..5),
            w in proptest::collection::vec(disc_strategy(1.0), 5),
            cc in disc_strategy(0.7),
            a in 0.05f64..3.0,
        ) {
            let k = KernelSpec::DirichletA { a, d: 1 };
            let n = z.len();
            let theta = |x: C64| (cc - x) / (C64::new(1.0, 0.0) - cc.conj() * x);
            let moved: Vec<C64> = z.iter().map(|&x| theta(x)).collect();
            let p = PickData::disc(k.clone(), &z, &w[..n]).unwrap();
            let q = PickData::disc(k, &moved, &w[..n]).unwrap();
            if let (Ok(u), Ok(v)) = (n_point_norm_at(&p), n_point_norm_at(&q)) {
                prop_assert!((u - v).abs() <= 1e-9 * u.max(1.0));
            }
        }

        #[test]
        fn chain_of_point_norms(
            z in proptest::collection::vec(disc_strategy(0.8), 3),
            coeffs in proptest::collection::vec(-0.5f64..0.5, 4),
        ) {
            let k = KernelSpec::DirichletA { a: 0.5, d: 1 };
            let phi = Poly::univariate_real(&coeffs);
            let pts: Vec<Vec<C64>> = z.iter().map(|&x| vec![x]).collect();
            let mut prev = 0.0;
            for m in 1..=3 {
                if let Ok(v) = poly_norm_at(&k, &phi, &pts[..m]) {
                    prop_assert!(v >= prev - 1e-9);
                    prev = v;
                }
            }
            let t = trunc_mult_norm(&k, &PolyMatrix::scalar(phi), 60).unwrap();
            prop_assert!(prev <= t + 1e-9);
        }
    }
}

//! Nevanlinna–Pick interpolation by scaled finite Blaschke products, and
//! its matrix form f(A) = λB(A).
//!
//! Interpolation data are jets (Taylor coefficients) at nodes in the disc.
//! The minimal norm is the norm of the compressed multiplication operator on
//! the model space, computed in the Takenaka–Malmquist basis. The extremal
//! interpolant is then obtained by the Schur algorithm on the normalized jets.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{eigenvalues, frobenius, largest_singular_value, singular_values, spectral_radius};
use crate::poly::{dense, Poly};
use crate::{CMatrix, Error, Result, C64};

pub const RANK_TOL: f64 = 1e-10;
pub const PICK_RESIDUAL: f64 = 1e-8;
pub const SARASON_RESIDUAL: f64 = 1e-7;
/// Residual bound accepted, with a warning, when eigenvalue clusters are
/// badly conditioned.
pub const SARASON_ENLARGED_RESIDUAL: f64 = 1e-4;
pub const BOUNDARY_TOL: f64 = 1e-10;
pub const CLUSTER_TOLS: [f64; 5] = [1e-8, 1e-6, 1e-4, 1e-3, 1e-2];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeProduct {
    pub scale: C64,
    pub zeros: Vec<C64>,
}

impl BlaschkeProduct {
    pub fn new(scale: C64, zeros: Vec<C64>) -> Result<Self> {
        if scale.norm() > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!("|scale| = {} exceeds 1", scale.norm())));
        }
        if let Some(a) = zeros.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::OutsideBall(a.norm()));
        }
        Ok(BlaschkeProduct { scale, zeros })
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    fn factor(a: C64, z: C64) -> C64 {
        if a == ZERO {
            z
        } else {
            (a - z) / (ONE - a.conj() * z)
        }
    }

    /// The product of the factors, without the scale.
    pub fn inner_eval(&self, z: C64) -> C64 {
        self.zeros.iter().fold(ONE, |acc, &a| acc * Self::factor(a, z))
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.scale * self.inner_eval(z)
    }

    /// max ||B(ζ)| − 1| over m equally spaced boundary points.
    pub fn boundary_deviation(&self, m: usize) -> f64 {
        (0..m)
            .map(|k| {
                let zeta = C64::from_polar(1.0, 2.0 * core::f64::consts::PI * k as f64 / m as f64);
                (self.inner_eval(zeta).norm() - 1.0).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn on_matrix(&self, a: &CMatrix) -> Result<CMatrix> {
        eval_on_matrix(&Analytic::Blaschke(self.clone()), a)
    }
}

/// Functions that can be applied to a matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Analytic {
    /// Dense coefficients, lowest degree first.
    Poly(Vec<C64>),
    Rational { num: Vec<C64>, den: Vec<C64> },
    Blaschke(BlaschkeProduct),
}

impl Analytic {
    pub fn from_poly(p: &Poly) -> Result<Self> {
        Ok(Analytic::Poly(p.dense()?))
    }

    pub fn eval(&self, z: C64) -> C64 {
        match self {
            Analytic::Poly(c) => dense::eval(c, z),
            Analytic::Rational { num, den } => dense::eval(num, z) / dense::eval(den, z),
            Analytic::Blaschke(b) => b.eval(z),
        }
    }
}

fn check_square(a: &CMatrix) -> Result<()> {
    if a.nrows() != a.ncols() || a.nrows() == 0 {
        return Err(Error::DimensionMismatch { expected: a.nrows(), found: a.ncols() });
    }
    Ok(())
}

fn inverse(m: CMatrix) -> Result<CMatrix> {
    m.try_inverse().ok_or_else(|| Error::Domain("singular denominator".into()))
}

/// g(A) for polynomial, rational or Blaschke g.
pub fn eval_on_matrix(g: &Analytic, a: &CMatrix) -> Result<CMatrix> {
    check_square(a)?;
    let n = a.nrows();
    let id = CMatrix::identity(n, n);
    match g {
        Analytic::Poly(c) => Ok(dense::on_matrix(c, a)),
        Analytic::Rational { num, den } => {
            let r = spectral_radius(a)?;
            for p in dense::roots(den)? {
                if p.norm() <= r * (1.0 + 1e-12) {
                    return Err(Error::Domain(format!("pole {p} inside the spectral disc")));
                }
            }
            Ok(dense::on_matrix(num, a) * inverse(dense::on_matrix(den, a))?)
        }
        Analytic::Blaschke(b) => {
            let r = spectral_radius(a)?;
            let mut acc = &id * b.scale;
            for &z in &b.zeros {
                let f = if z == ZERO {
                    a.clone()
                } else {
                    if z.norm() * r >= 1.0 {
                        return Err(Error::Domain(format!("pole of the factor at {z} inside the spectral disc")));
                    }
                    (&id * z - a) * inverse(&id - a * z.conj())?
                };
                acc = acc * f;
            }
            Ok(acc)
        }
    }
}

/// Compressed shift of the model space with the given zeros (repeated
/// according to multiplicity), in the Takenaka–Malmquist basis.
pub fn compressed_shift(nodes: &[C64]) -> CMatrix {
    let n = nodes.len();
    let w: Vec<f64> = nodes.iter().map(|m| (1.0 - m.norm_sqr()).sqrt()).collect();
    let mut s = CMatrix::zeros(n, n);
    for k in 0..n {
        s[(k, k)] = nodes[k];
        let mut prod = ONE;
        for j in k + 1..n {
            s[(j, k)] = prod * (w[j] * w[k]);
            prod *= -nodes[j].conj();
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
struct Node {
    mu: C64,
    jet: Vec<C64>,
}

fn series_mul(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    (0..len)
        .map(|k| (0..=k).filter(|&j| j < a.len() && k - j < b.len()).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

fn series_div(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut q: Vec<C64> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = if k < a.len() { a[k] } else { ZERO };
        for j in 1..=k.min(b.len() - 1) {
            acc -= b[j] * q[k - j];
        }
        q.push(acc / b[0]);
    }
    q
}

/// Jet of (F − c)/(1 − c̄F).
fn mobius_jet(f: &[C64], c: C64) -> Vec<C64> {
    let mut num = f.to_vec();
    num[0] -= c;
    let mut den: Vec<C64> = f.iter().map(|&v| -c.conj() * v).collect();
    den[0] += ONE;
    series_div(&num, &den, f.len())
}

/// Jet at nu of (z − mu)/(1 − μ̄z).
fn blaschke_jet(mu: C64, nu: C64, len: usize) -> Vec<C64> {
    series_div(&[nu - mu, ONE], &[ONE - mu.conj() * nu, -mu.conj()], len)
}

/// r Schur steps; returns the (node, value) pivots and the final unimodular
/// constant.
fn schur_reduce(mut nodes: Vec<Node>, r: usize) -> Option<(Vec<(C64, C64)>, C64)> {
    let mut steps = Vec::with_capacity(r);
    for _ in 0..r {
        let p = (0..nodes.len()).min_by(|&i, &j| nodes[i].jet[0].norm().total_cmp(&nodes[j].jet[0].norm()))?;
        let (mu, c) = (nodes[p].mu, nodes[p].jet[0]);
        if !(c.norm() < 1.0 - 1e-12) {
            return None;
        }
        for (i, node) in nodes.iter_mut().enumerate() {
            let g = mobius_jet(&node.jet, c);
            node.jet = if i == p {
                series_mul(&g[1..], &[C64::new(1.0 - mu.norm_sqr(), 0.0), -mu.conj()], g.len() - 1)
            } else {
                series_div(&g, &blaschke_jet(mu, node.mu, g.len()), g.len())
            };
        }
        nodes.retain(|n| !n.jet.is_empty());
        steps.push((mu, c));
    }
    if nodes.is_empty() {
        return None;
    }
    let mean: C64 = nodes.iter().map(|n| n.jet[0]).sum::<C64>() / nodes.len() as f64;
    if !(mean.norm() > 0.0) || !mean.norm().is_finite() {
        return None;
    }
    Some((steps, mean / mean.norm()))
}

/// Numerator and denominator of the inner function produced by the steps.
fn reconstruct(steps: &[(C64, C64)], eta: C64) -> (Vec<C64>, Vec<C64>) {
    let mut n = vec![eta];
    let mut d = vec![ONE];
    for &(mu, c) in steps.iter().rev() {
        let lin_a = [ONE, -mu.conj()];
        let lin_b = [-mu, ONE];
        let n2 = dense::add(&dense::scale(&dense::mul(&lin_a, &d), c), &dense::mul(&lin_b, &n));
        let d2 = dense::add(&dense::mul(&lin_a, &d), &dense::scale(&dense::mul(&lin_b, &n), c.conj()));
        n = n2;
        d = d2;
    }
    (n, d)
}

fn inner_from_fraction(n: &[C64], d: &[C64]) -> Option<BlaschkeProduct> {
    let n = dense::trim(n.to_vec(), 1e-14);
    let zeros: Vec<C64> = dense::roots(&n)
        .ok()?
        .into_iter()
        .map(|a| if a.norm() < 1e-12 { ZERO } else { a })
        .collect();
    if zeros.iter().any(|a| !(a.norm() < 1.0)) {
        return None;
    }
    let b = BlaschkeProduct { scale: ONE, zeros };
    let zeta = (0..16)
        .map(|k| C64::from_polar(1.0, 2.0 * core::f64::consts::PI * k as f64 / 16.0))
        .max_by(|x, y| dense::eval(d, *x).norm().total_cmp(&dense::eval(d, *y).norm()))?;
    let lam = dense::eval(&n, zeta) / dense::eval(d, zeta) / b.inner_eval(zeta);
    if !(lam.norm() > 0.0) || !lam.norm().is_finite() {
        return None;
    }
    Some(BlaschkeProduct { scale: lam / lam.norm(), ..b })
}

fn rank_order(r0: usize, max: usize) -> Vec<usize> {
    let mut out = vec![r0];
    for step in 1..=max {
        if r0 >= step {
            out.push(r0 - step);
        }
        if r0 + step <= max {
            out.push(r0 + step);
        }
    }
    out
}

/// Extremal interpolant of jets whose compressed multiplier is `t`; returns
/// the norm, the unimodular-scale product and its residual.
fn solve_jets<F>(nodes: &[Node], t: &CMatrix, residual: F, tol: f64) -> Option<(f64, BlaschkeProduct, f64)>
where
    F: Fn(f64, &BlaschkeProduct) -> f64,
{
    let rho = largest_singular_value(t);
    let trivial = BlaschkeProduct { scale: ONE, zeros: Vec::new() };
    if rho == 0.0 {
        let res = residual(0.0, &trivial);
        return Some((0.0, trivial, res));
    }
    let total = t.nrows();
    let r0 = singular_values(t)
        .iter()
        .filter(|&&s| 1.0 - (s / rho) * (s / rho) > RANK_TOL)
        .count()
        .min(total - 1);
    let scaled: Vec<Node> =
        nodes.iter().map(|n| Node { mu: n.mu, jet: n.jet.iter().map(|&v| v / rho).collect() }).collect();
    let mut best: Option<(f64, BlaschkeProduct, f64)> = None;
    for r in rank_order(r0, total - 1) {
        let Some((steps, eta)) = schur_reduce(scaled.clone(), r) else { continue };
        let (num, den) = reconstruct(&steps, eta);
        let Some(b) = inner_from_fraction(&num, &den) else { continue };
        let res = residual(rho, &b);
        if !res.is_finite() {
            continue;
        }
        if best.as_ref().map_or(true, |x| res < x.2) {
            best = Some((rho, b, res));
        }
        if res <= tol {
            break;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq)]
pub struct PickSolution {
    /// Minimal sup norm among all interpolants.
    pub rho: f64,
    /// Unimodular scale λ and zeros; the interpolant is ρλB.
    pub product: BlaschkeProduct,
    pub residual: f64,
}

impl PickSolution {
    pub fn eval(&self, z: C64) -> C64 {
        self.product.eval(z) * self.rho
    }

    /// ρλ, the scale of the interpolant.
    pub fn scaled_lambda(&self) -> C64 {
        self.product.scale * self.rho
    }
}

fn newton_coefficients(z: &[C64], w: &[C64]) -> Vec<C64> {
    let mut d = w.to_vec();
    for j in 1..z.len() {
        for i in (j..z.len()).rev() {
            d[i] = (d[i] - d[i - 1]) / (z[i] - z[i - j]);
        }
    }
    d
}

/// Classical Nevanlinna–Pick with minimal sup norm: ρλB(z_i) = w_i with
/// deg B ≤ n − 1.
pub fn pick_solve(points: &[C64], targets: &[C64]) -> Result<PickSolution> {
    let n = points.len();
    if n == 0 {
        return Err(Error::InvalidParameter("no points".into()));
    }
    if targets.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: targets.len() });
    }
    if let Some(z) = points.iter().find(|z| !(z.norm() < 1.0)) {
        return Err(Error::OutsideBall(z.norm()));
    }
    for i in 0..n {
        for j in 0..i {
            if (points[i] - points[j]).norm() < 1e-12 {
                return Err(Error::InvalidParameter("points must be distinct".into()));
            }
        }
    }
    let s = compressed_shift(points);
    let coeffs = newton_coefficients(points, targets);
    let id = CMatrix::identity(n, n);
    let mut t = &id * coeffs[n - 1];
    for k in (0..n - 1).rev() {
        t = t * (&s - &id * points[k]) + &id * coeffs[k];
    }
    let nodes: Vec<Node> = points.iter().zip(targets).map(|(&mu, &w)| Node { mu, jet: vec![w] }).collect();
    let residual = |rho: f64, b: &BlaschkeProduct| {
        points.iter().zip(targets).map(|(&z, &w)| (b.eval(z) * rho - w).norm()).fold(0.0, f64::max)
    };
    let (rho, product, res) =
        solve_jets(&nodes, &t, residual, PICK_RESIDUAL).ok_or_else(|| Error::Numerical("Schur recursion failed".into()))?;
    if res > PICK_RESIDUAL {
        return Err(Error::Violation(format!("interpolation residual {res:e}")));
    }
    Ok(PickSolution { rho, product, residual: res })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpaceProblem {
    pub matrix: CMatrix,
    pub symbol: Poly,
}

impl ModelSpaceProblem {
    pub fn new(matrix: CMatrix, symbol: Poly) -> Result<Self> {
        check_square(&matrix)?;
        if symbol.nvars() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: symbol.nvars() });
        }
        Ok(ModelSpaceProblem { matrix, symbol })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SarasonOptions {
    /// Required gap between the spectral radius and 1.
    pub margin: f64,
    /// Boundary grid for the sup-norm precondition.
    pub grid: usize,
}

impl Default for SarasonOptions {
    fn default() -> Self {
        SarasonOptions { margin: 1e-6, grid: 1024 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SarasonSolution {
    /// λ and B with f(A) = λB(A); |λ| is the model-space norm.
    pub product: BlaschkeProduct,
    /// Norm of the compressed multiplier on the model space.
    pub norm: f64,
    /// Frobenius norm of f(A) − λB(A).
    pub residual: f64,
    /// Nodes and multiplicities used for the model space.
    pub nodes: Vec<(C64, usize)>,
    pub warning: Option<String>,
}

impl SarasonSolution {
    pub fn lambda(&self) -> C64 {
        self.product.scale
    }
}

/// Single-linkage clusters of the eigenvalues; returns (mean, size).
pub fn cluster_eigenvalues(eigs: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let n = eigs.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in 0..i {
            if (eigs[i] - eigs[j]).norm() <= tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, C64, usize)> = Vec::new();
    for i in 0..n {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == root) {
            Some(g) => {
                g.1 += eigs[i];
                g.2 += 1;
            }
            None => groups.push((root, eigs[i], 1)),
        }
    }
    groups.into_iter().map(|(_, s, m)| (s / m as f64, m)).collect()
}

/// Model-space norm ‖P_K M_f|_K‖ for the zeros listed with multiplicity.
pub fn model_space_norm(f: &Poly, nodes: &[C64]) -> Result<f64> {
    let c = f.dense()?;
    Ok(largest_singular_value(&dense::on_matrix(&c, &compressed_shift(nodes))))
}

/// f(A) = λB(A) with deg B ≤ n − 1 and |λ| ≤ ‖f‖_∞.
pub fn sarason_solve(p: &ModelSpaceProblem) -> Result<SarasonSolution> {
    sarason_solve_with(p, &SarasonOptions::default())
}

pub fn sarason_solve_with(p: &ModelSpaceProblem, opts: &SarasonOptions) -> Result<SarasonSolution> {
    let sup = p.symbol.sup_on_circle(opts.grid)?;
    if sup > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!("sup norm {sup} exceeds 1 on the boundary grid")));
    }
    let eigs = eigenvalues(&p.matrix)?;
    let r = eigs.iter().map(|e| e.norm()).fold(0.0, f64::max);
    if r >= 1.0 - opts.margin {
        return Err(Error::Precondition(format!("spectral radius {r} not below 1 - {}", opts.margin)));
    }
    let coeffs = p.symbol.dense()?;
    let fa = dense::on_matrix(&coeffs, &p.matrix);
    let mut best: Option<SarasonSolution> = None;
    for (k, &tol) in CLUSTER_TOLS.iter().enumerate() {
        let clusters = cluster_eigenvalues(&eigs, tol);
        let mut listed = Vec::with_capacity(eigs.len());
        let mut nodes = Vec::with_capacity(clusters.len());
        for &(mu, m) in &clusters {
            listed.extend(core::iter::repeat(mu).take(m));
            nodes.push(Node { mu, jet: dense::taylor(&coeffs, mu, m) });
        }
        let t = dense::on_matrix(&coeffs, &compressed_shift(&listed));
        let residual = |rho: f64, b: &BlaschkeProduct| {
            let mut scaled = b.clone();
            scaled.scale *= rho;
            match scaled.on_matrix(&p.matrix) {
                Ok(ba) => frobenius(&(&fa - ba)),
                Err(_) => f64::INFINITY,
            }
        };
        let Some((rho, mut product, res)) = solve_jets(&nodes, &t, residual, SARASON_RESIDUAL) else { continue };
        product.scale *= rho;
        let warning = if k > 0 { Some(format!("eigenvalues clustered at tolerance {tol:e}")) } else { None };
        let sol = SarasonSolution { product, norm: rho, residual: res, nodes: clusters, warning };
        let done = res <= SARASON_RESIDUAL;
        if best.as_ref().map_or(true, |b| sol.residual < b.residual) {
            best = Some(sol);
        }
        if done {
            break;
        }
    }
    let mut sol = best.ok_or_else(|| Error::Numerical("Schur recursion failed".into()))?;
    if sol.residual > SARASON_ENLARGED_RESIDUAL {
        return Err(Error::Numerical(format!("residual {:e} exceeds the enlarged bound", sol.residual)));
    }
    if sol.residual > SARASON_RESIDUAL {
        sol.warning = Some(format!(
            "ill-conditioned eigenvalue clusters; residual {:e} within enlarged bound {:e}",
            sol.residual, SARASON_ENLARGED_RESIDUAL
        ));
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelSpec;
    use crate::linalg::min_eigenvalue;
    use crate::picknorm::{n_point_norm_at, PickData};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rand_disc(rng: &mut ChaCha8Rng, rmax: f64) -> C64 {
        C64::from_polar(rmax * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..6.283))
    }

    fn pick_matrix(z: &[C64], w: &[C64], rho: f64) -> CMatrix {
        CMatrix::from_fn(z.len(), z.len(), |i, j| {
            (C64::new(rho * rho, 0.0) - w[i] * w[j].conj()) / (ONE - z[i] * z[j].conj())
        })
    }

    #[test]
    fn compressed_shift_matches_inner_products() {
        // oracle: Gram-Schmidt on kernel functions via their Szegő Gram
        // matrix; M_z acts on k_μ* only through the adjoint: S* k_μ = μ̄ k_μ.
        let nodes = [c(0.3, 0.1), c(-0.5, 0.2), c(0.1, -0.6)];
        let s = compressed_shift(&nodes);
        let g = KernelSpec::Szego.gram(&nodes.iter().map(|&z| vec![z]).collect::<Vec<_>>()).unwrap();
        // in the TM basis, the kernel at μ_j has coordinates conj(e_k(μ_j))
        let e = |k: usize, z: C64| {
            let mut v = C64::new((1.0 - nodes[k].norm_sqr()).sqrt(), 0.0) / (ONE - nodes[k].conj() * z);
            for j in 0..k {
                v *= (z - nodes[j]) / (ONE - nodes[j].conj() * z);
            }
            v
        };
        let coords = CMatrix::from_fn(3, 3, |k, j| e(k, nodes[j]).conj());
        let gram_tm = coords.adjoint() * &coords;
        assert!((gram_tm - &g).norm() < 1e-12);
        let lhs = s.adjoint() * &coords;
        let rhs = &coords * CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(3, nodes.iter().map(|z| z.conj())));
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn one_point_pick() {
        let sol = pick_solve(&[c(0.0, 0.0)], &[c(0.5, 0.0)]).unwrap();
        assert_eq!(sol.product.degree(), 0);
        assert!((sol.scaled_lambda() - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_point_pick_is_identity() {
        let sol = pick_solve(&[c(0.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert!((sol.rho - 1.0).abs() < 1e-12);
        assert_eq!(sol.product.zeros, vec![ZERO]);
        assert!((sol.product.scale - ONE).norm() < 1e-12);
    }

    #[test]
    fn random_pick_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..200 {
            let n = 1 + i % 6;
            let z: Vec<C64> = (0..n).map(|_| rand_disc(&mut rng, 0.9)).collect();
            let w: Vec<C64> = (0..n).map(|_| rand_disc(&mut rng, 1.0)).collect();
            let sol = pick_solve(&z, &w).unwrap();
            assert!(sol.product.degree() + 1 <= n);
            assert!(sol.residual < PICK_RESIDUAL);
            assert!(sol.product.boundary_deviation(256) < BOUNDARY_TOL);
            let szego = n_point_norm_at(&PickData::disc(KernelSpec::Szego, &z, &w).unwrap()).unwrap();
            assert!((szego - sol.rho).abs() < 1e-8 * sol.rho.max(1.0), "{szego} {}", sol.rho);
            if n > 1 {
                let m = pick_matrix(&z, &w, sol.rho * (1.0 - 1e-4));
                assert!(min_eigenvalue(&m) < 0.0);
            }
        }
    }

    #[test]
    fn pick_rejects_repeated_points() {
        assert!(pick_solve(&[c(0.1, 0.0), c(0.1, 0.0)], &[ZERO, ONE]).is_err());
        assert!(pick_solve(&[c(1.0, 0.0)], &[ZERO]).is_err());
    }

    #[test]
    fn sarason_scalar_matrix() {
        let f = Poly::univariate_real(&[0.3, 0.2, -0.1]);
        let p = ModelSpaceProblem::new(CMatrix::zeros(1, 1), f).unwrap();
        let sol = sarason_solve(&p).unwrap();
        assert_eq!(sol.product.degree(), 0);
        assert!((sol.lambda() - c(0.3, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn sarason_diagonal_example() {
        let a = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![ZERO, c(0.5, 0.0)]));
        let p = ModelSpaceProblem::new(a, Poly::monomial(vec![2], ONE)).unwrap();
        let sol = sarason_solve(&p).unwrap();
        assert!((sol.lambda() - c(0.5, 0.0)).norm() < 1e-12);
        assert_eq!(sol.product.zeros, vec![ZERO]);
        assert!(sol.residual < 1e-12);
    }

    fn jordan_instance(rng: &mut ChaCha8Rng) -> (CMatrix, CMatrix, Poly) {
        let mu: Vec<C64> = vec![rand_disc(rng, 0.8), rand_disc(rng, 0.8), C64::from_polar(0.9, rng.gen_range(0.0..6.283))];
        let mut j = CMatrix::zeros(4, 4);
        j[(0, 0)] = mu[0];
        j[(1, 1)] = mu[0];
        j[(0, 1)] = ONE;
        j[(2, 2)] = mu[1];
        j[(3, 3)] = mu[2];
        let v = CMatrix::from_fn(4, 4, |r, s| if r == s { c(2.0, 0.0) } else { rand_disc(rng, 0.5) });
        let vinv = v.clone().try_inverse().unwrap();
        let coeffs: Vec<C64> = (0..5).map(|_| rand_disc(rng, 1.0)).collect();
        let raw = Poly::univariate(&coeffs);
        let sup = raw.sup_on_circle(4096).unwrap();
        let f = raw.scale(c(0.9 / sup, 0.0));
        let fc = f.dense().unwrap();
        // functional calculus on the Jordan form
        let mut fj = CMatrix::zeros(4, 4);
        fj[(0, 0)] = dense::eval(&fc, mu[0]);
        fj[(1, 1)] = fj[(0, 0)];
        fj[(0, 1)] = dense::eval(&dense::derivative(&fc), mu[0]);
        fj[(2, 2)] = dense::eval(&fc, mu[1]);
        fj[(3, 3)] = dense::eval(&fc, mu[2]);
        (&v * j * &vinv, &v * fj * &vinv, f)
    }

    #[test]
    fn sarason_jordan_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let (a, fa, f) = jordan_instance(&mut rng);
            let horner = eval_on_matrix(&Analytic::from_poly(&f).unwrap(), &a).unwrap();
            assert!((&horner - &fa).norm() < 1e-9);
            let sol = sarason_solve(&ModelSpaceProblem::new(a.clone(), f).unwrap()).unwrap();
            assert!(sol.product.degree() <= 3);
            assert!(sol.lambda().norm() <= 1.0 + 1e-9);
            let lb = sol.product.on_matrix(&a).unwrap();
            assert!(frobenius(&(fa - lb)) < SARASON_RESIDUAL);
            assert!(sol.product.boundary_deviation(256) < BOUNDARY_TOL);
        }
    }

    #[test]
    fn sarason_single_jordan_block_of_size_five() {
        let mu = C64::from_polar(0.9, 1.1);
        let mut j = CMatrix::zeros(5, 5);
        for i in 0..5 {
            j[(i, i)] = mu;
            if i < 4 {
                j[(i, i + 1)] = ONE;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let v = CMatrix::from_fn(5, 5, |r, s| if r == s { c(2.0, 0.0) } else { rand_disc(&mut rng, 0.5) });
        let a = &v * j * v.clone().try_inverse().unwrap();
        let raw = Poly::univariate(&(0..6).map(|_| rand_disc(&mut rng, 1.0)).collect::<Vec<_>>());
        let f = raw.scale(c(0.9 / raw.sup_on_circle(4096).unwrap(), 0.0));
        let sol = sarason_solve(&ModelSpaceProblem::new(a.clone(), f.clone()).unwrap()).unwrap();
        assert!(sol.product.degree() <= 4);
        assert_eq!(sol.nodes.len(), 1);
        let fa = eval_on_matrix(&Analytic::from_poly(&f).unwrap(), &a).unwrap();
        assert!(frobenius(&(fa - sol.product.on_matrix(&a).unwrap())) < SARASON_RESIDUAL);
    }

    #[test]
    fn sarason_norm_matches_szego_pick_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let mu: Vec<C64> = (0..3).map(|_| rand_disc(&mut rng, 0.85)).collect();
            let a = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(mu.clone()));
            let raw = Poly::univariate(&(0..4).map(|_| rand_disc(&mut rng, 1.0)).collect::<Vec<_>>());
            let f = raw.scale(c(1.0 / raw.sup_on_circle(4096).unwrap(), 0.0));
            let vals: Vec<C64> = mu.iter().map(|&z| f.eval(&[z]).unwrap()).collect();
            let oracle = n_point_norm_at(&PickData::disc(KernelSpec::Szego, &mu, &vals).unwrap()).unwrap();
            let sol = sarason_solve(&ModelSpaceProblem::new(a, f).unwrap()).unwrap();
            assert!((sol.lambda().norm() - oracle).abs() < 1e-7);
            assert!((sol.norm - oracle).abs() < 1e-7);
        }
    }

    #[test]
    fn sarason_preconditions() {
        let big = Poly::univariate_real(&[0.0, 1.5]);
        let p = ModelSpaceProblem::new(CMatrix::zeros(2, 2), big).unwrap();
        assert!(matches!(sarason_solve(&p), Err(Error::Precondition(_))));
        let a = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.9999999, 0.0)]));
        let p = ModelSpaceProblem::new(a.clone(), Poly::coordinate(1, 0)).unwrap();
        assert!(matches!(sarason_solve(&p), Err(Error::Precondition(_))));
        let relaxed = SarasonOptions { margin: 1e-9, ..Default::default() };
        assert!(sarason_solve_with(&p, &relaxed).is_ok());
    }

    #[test]
    fn eval_on_matrix_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let a = CMatrix::from_fn(3, 3, |_, _| rand_disc(&mut rng, 0.5));
        let z = Analytic::Poly(vec![ZERO, ONE]);
        assert_eq!(eval_on_matrix(&z, &a).unwrap(), a);
        let cube = Analytic::Poly(vec![ZERO, ZERO, ZERO, ONE]);
        assert!((eval_on_matrix(&cube, &a).unwrap() - &a * &a * &a).norm() < 1e-14);
        let theta = Analytic::Rational { num: vec![c(0.5, 0.0), -ONE], den: vec![ONE, c(-0.5, 0.0)] };
        let half = CMatrix::from_element(1, 1, c(0.5, 0.0));
        assert!(eval_on_matrix(&theta, &half).unwrap().norm() < 1e-15);
        let pole = Analytic::Rational { num: vec![ONE], den: vec![c(0.2, 0.0), -ONE] };
        assert!(matches!(eval_on_matrix(&pole, &CMatrix::from_element(1, 1, c(0.5, 0.0))), Err(Error::Domain(_))));
    }

    #[test]
    fn blaschke_factor_agrees_with_rational() {
        let a = c(0.3, -0.4);
        let b = Analytic::Blaschke(BlaschkeProduct::new(ONE, vec![a]).unwrap());
        let r = Analytic::Rational { num: vec![a, -ONE], den: vec![ONE, -a.conj()] };
        let m = CMatrix::from_fn(2, 2, |i, j| c(0.1 * (i + 1) as f64, 0.05 * j as f64));
        assert!((eval_on_matrix(&b, &m).unwrap() - eval_on_matrix(&r, &m).unwrap()).norm() < 1e-14);
    }

    fn disc_strategy(rmax: f64) -> impl Strategy<Value = C64> {
        (0.0f64..rmax, 0.0f64..6.283).prop_map(|(r, t)| C64::from_polar(r, t))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn horner_matches_power_series(
            entries in proptest::collection::vec(disc_strategy(0.4), 9),
            coeffs in proptest::collection::vec(disc_strategy(1.0), 1..7),
        ) {
            let a = CMatrix::from_vec(3, 3, entries);
            let got = eval_on_matrix(&Analytic::Poly(coeffs.clone()), &a).unwrap();
            let mut pow = CMatrix::identity(3, 3);
            let mut acc = CMatrix::zeros(3, 3);
            for &cf in &coeffs {
                acc += &pow * cf;
                pow = &pow * &a;
            }
            prop_assert!((got - acc).norm() < 1e-9);
        }

        #[test]
        fn evaluation_is_multiplicative(
            entries in proptest::collection::vec(disc_strategy(0.3), 9),
            p in proptest::collection::vec(disc_strategy(1.0), 1..4),
            q in proptest::collection::vec(disc_strategy(1.0), 1..4),
            pole in disc_strategy(0.5),
        ) {
            let a = CMatrix::from_vec(3, 3, entries);
            let den = vec![ONE, -pole];
            let g = Analytic::Rational { num: p.clone(), den: den.clone() };
            let h = Analytic::Poly(q.clone());
            let gh = Analytic::Rational { num: dense::mul(&p, &q), den };
            let lhs = eval_on_matrix(&gh, &a).unwrap();
            let rhs = eval_on_matrix(&g, &a).unwrap() * eval_on_matrix(&h, &a).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-8);
        }

        #[test]
        fn blaschke_boundary_unimodular(zeros in proptest::collection::vec(disc_strategy(0.99), 0..6), t in 0.0f64..6.283) {
            let b = BlaschkeProduct::new(C64::from_polar(1.0, t), zeros).unwrap();
            prop_assert!(b.boundary_deviation(256) < BOUNDARY_TOL);
        }

        #[test]
        fn pick_degree_and_residual(
            z in proptest::collection::vec(disc_strategy(0.9), 1..6),
            w in proptest::collection::vec(disc_strategy(1.0), 6),
        ) {
            let n = z.len();
            let distinct = (0..n).all(|i| (0..i).all(|j| (z[i] - z[j]).norm() > 1e-3));
            prop_assume!(distinct);
            let sol = pick_solve(&z, &w[..n]).unwrap();
            prop_assert!(sol.product.degree() < n);
            prop_assert!(sol.residual < PICK_RESIDUAL);
        }
    }
}

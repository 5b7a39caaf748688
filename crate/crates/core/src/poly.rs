//! Sparse multivariate polynomials over ℂ, matrices of them, and dense
//! one-variable helpers.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{CMatrix, Error, Result, C64};

pub type MultiIndex = Vec<u32>;

pub fn total_degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// All multi-indices in `d` variables with |α| = n, in lexicographically
/// decreasing order.
pub fn indices_of_degree(d: usize, n: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; d];
    fill(&mut cur, 0, n, &mut out);
    out
}

fn fill(cur: &mut [u32], pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.to_vec());
        return;
    }
    for v in (0..=left).rev() {
        cur[pos] = v;
        fill(cur, pos + 1, left - v, out);
    }
}

/// All multi-indices with |α| ≤ n, graded by degree.
pub fn indices_up_to(d: usize, n: u32) -> Vec<MultiIndex> {
    (0..=n).flat_map(|k| indices_of_degree(d, k)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, C64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C64) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(alpha: MultiIndex, c: C64) -> Self {
        let mut p = Poly::zero(alpha.len());
        p.add_term(alpha, c);
        p
    }

    /// The coordinate function z_i.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut alpha = vec![0; nvars];
        alpha[i] = 1;
        Poly::monomial(alpha, C64::new(1.0, 0.0))
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, C64)>,
    {
        let mut p = Poly::zero(nvars);
        for (alpha, c) in terms {
            if alpha.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: alpha.len() });
            }
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidParameter("non-finite coefficient".into()));
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// One-variable polynomial from coefficients, lowest degree first.
    pub fn univariate(coeffs: &[C64]) -> Self {
        let mut p = Poly::zero(1);
        for (n, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![n as u32], c);
        }
        p
    }

    pub fn univariate_real(coeffs: &[f64]) -> Self {
        let c: Vec<C64> = coeffs.iter().map(|&x| C64::new(x, 0.0)).collect();
        Poly::univariate(&c)
    }

    fn add_term(&mut self, alpha: MultiIndex, c: C64) {
        let v = self.coeff(&alpha) + c;
        if v == C64::new(0.0, 0.0) {
            self.terms.remove(&alpha);
        } else {
            self.terms.insert(alpha, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[u32]) -> C64 {
        self.terms.get(alpha).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|a| total_degree(a)).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &[C64]) -> Result<C64> {
        if z.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: z.len() });
        }
        let mut acc = C64::new(0.0, 0.0);
        for (alpha, c) in &self.terms {
            let mut t = *c;
            for (zi, &a) in z.iter().zip(alpha) {
                if a > 0 {
                    t *= zi.powu(a);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: C64) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (a, v) in &self.terms {
            p.add_term(a.clone(), v * c);
        }
        p
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut p = self.clone();
        for (a, v) in &other.terms {
            p.add_term(a.clone(), *v);
        }
        Ok(p)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut p = Poly::zero(self.nvars);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let idx: MultiIndex = a.iter().zip(b).map(|(x, y)| x + y).collect();
                p.add_term(idx, u * v);
            }
        }
        Ok(p)
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    /// Dense coefficients (lowest degree first) of a one-variable polynomial.
    pub fn dense(&self) -> Result<Vec<C64>> {
        if self.nvars != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: self.nvars });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.degree() as usize + 1];
        for (a, c) in &self.terms {
            out[a[0] as usize] = *c;
        }
        Ok(out)
    }

    /// max |p| over `m` equally spaced points of the unit circle.
    pub fn sup_on_circle(&self, m: usize) -> Result<f64> {
        let c = self.dense()?;
        Ok((0..m)
            .map(|j| {
                let t = 2.0 * core::f64::consts::PI * j as f64 / m as f64;
                dense::eval(&c, C64::from_polar(1.0, t)).norm()
            })
            .fold(0.0, f64::max))
    }
}

/// Square matrix of polynomials in a common set of variables, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(size: usize, entries: Vec<Poly>) -> Result<Self> {
        if size == 0 || entries.len() != size * size {
            return Err(Error::DimensionMismatch { expected: size * size, found: entries.len() });
        }
        let nv = entries[0].nvars();
        if let Some(p) = entries.iter().find(|p| p.nvars() != nv) {
            return Err(Error::DimensionMismatch { expected: nv, found: p.nvars() });
        }
        Ok(PolyMatrix { size, entries })
    }

    pub fn scalar(p: Poly) -> Self {
        PolyMatrix { size: 1, entries: vec![p] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.entries[0].nvars()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.size + j]
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &[C64]) -> Result<CMatrix> {
        let mut m = CMatrix::zeros(self.size, self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                m[(i, j)] = self.get(i, j).eval(z)?;
            }
        }
        Ok(m)
    }
}

/// Dense one-variable coefficient vectors, lowest degree first.
pub mod dense {
    use super::*;
    use nalgebra::linalg::Schur;

    pub fn eval(c: &[C64], z: C64) -> C64 {
        c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &v| acc * z + v)
    }

    pub fn derivative(c: &[C64]) -> Vec<C64> {
        c.iter().enumerate().skip(1).map(|(k, &v)| v * k as f64).collect()
    }

    pub fn mul(a: &[C64], b: &[C64]) -> Vec<C64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); a.len().max(b.len())];
        for (i, &x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, &y) in b.iter().enumerate() {
            out[i] += y;
        }
        out
    }

    pub fn scale(a: &[C64], c: C64) -> Vec<C64> {
        a.iter().map(|&v| v * c).collect()
    }

    /// Drops trailing coefficients below `tol` relative to the largest one.
    pub fn trim(mut a: Vec<C64>, tol: f64) -> Vec<C64> {
        let big = a.iter().map(|v| v.norm()).fold(0.0, f64::max);
        while a.len() > 1 && a.last().map_or(false, |v| v.norm() <= tol * big) {
            a.pop();
        }
        a
    }

    /// First `len` Taylor coefficients of p at z0, i.e. of t ↦ p(z0 + t).
    pub fn taylor(c: &[C64], z0: C64, len: usize) -> Vec<C64> {
        let mut work = c.to_vec();
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            if work.is_empty() {
                out.push(C64::new(0.0, 0.0));
                continue;
            }
            // synthetic division by (z - z0): remainder is the value
            let n = work.len();
            let mut q = vec![C64::new(0.0, 0.0); n.saturating_sub(1)];
            let mut acc = C64::new(0.0, 0.0);
            for k in (0..n).rev() {
                acc = acc * z0 + work[k];
                if k > 0 {
                    q[k - 1] = acc;
                }
            }
            out.push(acc);
            work = q;
        }
        out
    }

    /// p(A) by Horner's rule.
    pub fn on_matrix(c: &[C64], a: &CMatrix) -> CMatrix {
        let n = a.nrows();
        let mut acc = CMatrix::zeros(n, n);
        for &v in c.iter().rev() {
            acc = &acc * a;
            for i in 0..n {
                acc[(i, i)] += v;
            }
        }
        acc
    }

    /// All complex roots, via the companion matrix and Newton polishing.
    pub fn roots(c: &[C64]) -> Result<Vec<C64>> {
        let c = trim(c.to_vec(), 0.0);
        let n = c.len() - 1;
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = c[n];
        if lead.norm() == 0.0 {
            return Err(Error::Numerical("zero polynomial".into()));
        }
        let mut comp = CMatrix::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        for i in 0..n {
            comp[(i, n - 1)] = -c[i] / lead;
        }
        let schur = Schur::try_new(comp, 1e-15, 10_000)
            .ok_or_else(|| Error::Numerical("companion eigenvalues did not converge".into()))?;
        let ev = schur
            .eigenvalues()
            .ok_or_else(|| Error::Numerical("companion eigenvalues unavailable".into()))?;
        let dc = derivative(&c);
        Ok(ev
            .iter()
            .map(|&r0| {
                let mut r = r0;
                let mut fr = eval(&c, r).norm();
                for _ in 0..4 {
                    let d = eval(&dc, r);
                    if d.norm() == 0.0 {
                        break;
                    }
                    let cand = r - eval(&c, r) / d;
                    let fc = eval(&c, cand).norm();
                    if fc < fr {
                        r = cand;
                        fr = fc;
                    } else {
                        break;
                    }
                }
                r
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn index_enumeration_counts() {
        assert_eq!(indices_of_degree(3, 4).len(), 15);
        assert_eq!(indices_up_to(2, 4).len(), 15);
        assert_eq!(indices_up_to(1, 5), (0..=5).map(|k| vec![k]).collect::<Vec<_>>());
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = Poly::univariate_real(&[1.0, 0.0, 2.0]);
        assert_eq!(p.terms().count(), 2);
        let q = p.add(&Poly::univariate_real(&[0.0, 0.0, -2.0])).unwrap();
        assert_eq!(q.terms().count(), 1);
        assert_eq!(q.degree(), 0);
    }

    #[test]
    fn product_and_evaluation_agree() {
        let p = Poly::from_terms(2, [(vec![1, 0], c(1.0, 1.0)), (vec![0, 2], c(0.5, 0.0))]).unwrap();
        let q = Poly::from_terms(2, [(vec![0, 0], c(2.0, 0.0)), (vec![1, 1], c(0.0, -1.0))]).unwrap();
        let z = [c(0.3, -0.2), c(0.1, 0.4)];
        let lhs = p.mul(&q).unwrap().eval(&z).unwrap();
        let rhs = p.eval(&z).unwrap() * q.eval(&z).unwrap();
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn taylor_shift_recovers_values_and_derivatives() {
        let p = [c(1.0, 0.0), c(-2.0, 1.0), c(0.0, 0.0), c(3.0, 0.0)];
        let z0 = c(0.4, -0.3);
        let t = dense::taylor(&p, z0, 3);
        assert!((t[0] - dense::eval(&p, z0)).norm() < 1e-15);
        assert!((t[1] - dense::eval(&dense::derivative(&p), z0)).norm() < 1e-14);
        let p2 = dense::derivative(&dense::derivative(&p));
        assert!((t[2] * 2.0 - dense::eval(&p2, z0)).norm() < 1e-14);
    }

    #[test]
    fn roots_of_known_product() {
        let r = [c(0.5, 0.0), c(-0.2, 0.3), c(0.0, -0.7)];
        let mut p = vec![c(1.0, 0.0)];
        for &x in &r {
            p = dense::mul(&p, &[-x, c(1.0, 0.0)]);
        }
        let found = dense::roots(&p).unwrap();
        for x in r {
            assert!(found.iter().any(|y| (x - y).norm() < 1e-13));
        }
    }

    #[test]
    fn horner_on_matrix() {
        let a = CMatrix::from_row_slice(2, 2, &[c(0.1, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.2, 0.0)]);
        let p = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let sq = dense::on_matrix(&p, &a);
        assert!((sq - &a * &a).norm() < 1e-15);
    }
}

//! Weighted shifts from the τ-decompositions of Drury–Arveson type spaces,
//! exact weight inequality scans, and lower-triangular norm domination.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive};

use crate::exact::{from_small, from_uint, to_f64};
use crate::linalg::largest_singular_value;
use crate::poly::{dense, PolyMatrix};
use crate::{CMatrix, Error, Result, C64};

/// Default truncation for norm comparisons.
pub const DEFAULT_TRUNCATION: usize = 30;

/// A squared weight base · factor^{−s} with rational s.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSq {
    pub base: BigRational,
    pub factor: BigRational,
    pub s: Ratio<i64>,
}

impl WeightSq {
    pub fn to_f64(&self) -> f64 {
        let s = *self.s.numer() as f64 / *self.s.denom() as f64;
        to_f64(&self.base) * libm::pow(to_f64(&self.factor), -s)
    }

    /// Exact comparison, raising both sides to the denominator of s.
    pub fn cmp_exact(&self, other: &WeightSq) -> Result<Ordering> {
        if self.s != other.s {
            return Err(Error::InvalidParameter("weights with different exponents".into()));
        }
        if self.base == other.base && self.factor == other.factor {
            return Ok(Ordering::Equal);
        }
        let (p, q) = (*self.s.numer(), *self.s.denom());
        // base^q · factor^{−p} as an unreduced fraction; all parts are positive
        let side = |w: &WeightSq| {
            let (f_top, f_bot) = if p > 0 { (w.factor.denom(), w.factor.numer()) } else { (w.factor.numer(), w.factor.denom()) };
            let e = p.unsigned_abs() as u32;
            let q = q as u32;
            (w.base.numer().pow(q) * f_top.pow(e), w.base.denom().pow(q) * f_bot.pow(e))
        };
        let (n1, d1) = side(self);
        let (n2, d2) = side(other);
        Ok((n1 * d2).cmp(&(n2 * d1)))
    }

    /// self/other as a float, for reporting margins.
    pub fn ratio_f64(&self, other: &WeightSq) -> f64 {
        let s = *self.s.numer() as f64 / *self.s.denom() as f64;
        let b = to_f64(&(&self.base / &other.base));
        let f = to_f64(&(&self.factor / &other.factor));
        b * libm::pow(f, -s)
    }

    fn scaled(mut self, c: &BigRational) -> WeightSq {
        self.base *= c;
        self
    }
}

fn d_pow_d(d: u64) -> BigUint {
    BigUint::from(d).pow(d as u32)
}

/// ∏_{j=1}^d (m + kd + j).
fn rising_block(d: u64, m: u64, k: u64) -> BigUint {
    (1..=d).fold(BigUint::one(), |acc, j| acc * BigUint::from(m + k * d + j))
}

fn fraction(top: BigUint, bottom: BigUint) -> BigRational {
    from_uint(top) / from_uint(bottom)
}

/// 1 + d/(m + kd + 1).
pub fn hs_factor(d: u64, m: u64, k: u64) -> BigRational {
    BigRational::new((m + k * d + 1 + d).into(), (m + k * d + 1).into())
}

/// d^d ∏(α_j + k + 1) / ∏(|α| + kd + j).
pub fn da_base(alpha: &[u32], k: u64) -> BigRational {
    let d = alpha.len() as u64;
    let m: u64 = alpha.iter().map(|&a| a as u64).sum();
    let top = alpha.iter().fold(d_pow_d(d), |acc, &a| acc * BigUint::from(a as u64 + k + 1));
    fraction(top, rising_block(d, m, k))
}

/// d^d (r/d + k + 1)^d / ∏(r + kd + j) = (r + kd + d)^d / ∏(r + kd + j).
pub fn v_base(d: u64, r: u64, k: u64) -> BigRational {
    fraction(BigUint::from(r + k * d + d).pow(d as u32), rising_block(d, r, k))
}

/// d^d (k + 1)^d / ∏(kd + j).
pub fn u_base(d: u64, k: u64) -> BigRational {
    v_base(d, 0, k)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ShiftSpec {
    DaW { d: usize, alpha: Vec<u32> },
    HsW { d: usize, s: Ratio<i64>, alpha: Vec<u32> },
    V { d: usize, s: Ratio<i64>, r: u64 },
    U { d: usize, s: Ratio<i64> },
    Custom { weights: Vec<f64> },
}

impl ShiftSpec {
    pub fn validate(&self) -> Result<()> {
        let check_alpha = |d: usize, alpha: &[u32]| {
            if d == 0 {
                return Err(Error::InvalidParameter("dimension must be positive".into()));
            }
            if alpha.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: alpha.len() });
            }
            Ok(())
        };
        match self {
            ShiftSpec::DaW { d, alpha } | ShiftSpec::HsW { d, alpha, .. } => check_alpha(*d, alpha),
            ShiftSpec::V { d, .. } | ShiftSpec::U { d, .. } => {
                if *d == 0 {
                    Err(Error::InvalidParameter("dimension must be positive".into()))
                } else {
                    Ok(())
                }
            }
            ShiftSpec::Custom { weights } => {
                if weights.iter().all(|w| w.is_finite() && *w > 0.0) {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter("weights must be positive".into()))
                }
            }
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            ShiftSpec::DaW { .. } => "da_w",
            ShiftSpec::HsW { .. } => "hs_w",
            ShiftSpec::V { .. } => "v",
            ShiftSpec::U { .. } => "u",
            ShiftSpec::Custom { .. } => "custom",
        }
    }

    /// Squared weight k exactly; `None` for custom sequences.
    pub fn weight_sq_exact(&self, k: u64) -> Option<WeightSq> {
        let zero = Ratio::new(0, 1);
        match self {
            ShiftSpec::DaW { alpha, .. } => {
                Some(WeightSq { base: da_base(alpha, k), factor: BigRational::one(), s: zero })
            }
            ShiftSpec::HsW { d, s, alpha } => {
                let m = alpha.iter().map(|&a| a as u64).sum();
                Some(WeightSq { base: da_base(alpha, k), factor: hs_factor(*d as u64, m, k), s: *s })
            }
            ShiftSpec::V { d, s, r } => {
                let d = *d as u64;
                Some(WeightSq { base: v_base(d, *r, k), factor: hs_factor(d, *r, k), s: *s })
            }
            ShiftSpec::U { d, s } => {
                let d = *d as u64;
                Some(WeightSq { base: u_base(d, k), factor: hs_factor(d, d, k), s: *s })
            }
            ShiftSpec::Custom { .. } => None,
        }
    }

    pub fn weight(&self, k: usize) -> Result<f64> {
        match self {
            ShiftSpec::Custom { weights } => weights.get(k).copied().ok_or(Error::Truncation(weights.len())),
            _ => Ok(self.weight_sq_exact(k as u64).map(|w| w.to_f64().sqrt()).unwrap_or(f64::NAN)),
        }
    }
}

/// The first n weights.
pub fn shift_weights(spec: &ShiftSpec, n: usize) -> Result<Vec<f64>> {
    spec.validate()?;
    (0..n).map(|k| spec.weight(k)).collect()
}

/// The (n+1)×(n+1) truncation: entry (k+1, k) is weight k.
pub fn shift_matrix(spec: &ShiftSpec, n: usize) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("truncation must be at least 1".into()));
    }
    let w = shift_weights(spec, n)?;
    let mut m = CMatrix::zeros(n + 1, n + 1);
    for (k, &v) in w.iter().enumerate() {
        m[(k + 1, k)] = C64::new(v, 0.0);
    }
    Ok(m)
}

/// ‖[p_ij(S)]‖ on the truncation of size n + 1.
pub fn poly_calc_norm(spec: &ShiftSpec, p: &PolyMatrix, n: usize) -> Result<f64> {
    if p.nvars() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: p.nvars() });
    }
    let s = shift_matrix(spec, n)?;
    let r = p.size();
    let b = n + 1;
    let mut big = CMatrix::zeros(r * b, r * b);
    for i in 0..r {
        for j in 0..r {
            let blk = dense::on_matrix(&p.get(i, j).dense()?, &s);
            big.view_mut((i * b, j * b), (b, b)).copy_from(&blk);
        }
    }
    Ok(largest_singular_value(&big))
}

/// Norm sequences of two spaces sharing an orthogonal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSpacePair {
    pub h: Vec<f64>,
    pub k: Vec<f64>,
}

impl GradedSpacePair {
    pub fn new(h: Vec<f64>, k: Vec<f64>) -> Result<Self> {
        if h.len() != k.len() {
            return Err(Error::DimensionMismatch { expected: h.len(), found: k.len() });
        }
        if h.iter().chain(&k).any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidParameter("norms must be positive".into()));
        }
        Ok(GradedSpacePair { h, k })
    }

    /// First index where h/k decreases, if any.
    pub fn monotonicity_defect(&self) -> Option<usize> {
        let ratio: Vec<f64> = self.h.iter().zip(&self.k).map(|(a, b)| a / b).collect();
        (1..ratio.len()).find(|&i| ratio[i] < ratio[i - 1] * (1.0 - 1e-14))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KacnelsonReport {
    pub norm_h: f64,
    pub norm_k: f64,
    pub holds: bool,
}

fn weighted_norm(t: &CMatrix, w: &[f64]) -> f64 {
    let n = w.len();
    largest_singular_value(&CMatrix::from_fn(n, n, |i, j| t[(i, j)] * (w[i] / w[j])))
}

/// Norms of a lower-triangular T in both spaces; `holds` iff normK ≤ normH + 1e-9.
pub fn kacnelson_check(g: &GradedSpacePair, t: &CMatrix) -> Result<KacnelsonReport> {
    let n = g.h.len();
    if t.nrows() != n || t.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.nrows() });
    }
    for i in 0..n {
        for j in i + 1..n {
            if t[(i, j)] != C64::new(0.0, 0.0) {
                return Err(Error::InvalidParameter("matrix is not lower triangular".into()));
            }
        }
    }
    if let Some(i) = g.monotonicity_defect() {
        return Err(Error::NotMonotone(i));
    }
    let norm_h = weighted_norm(t, &g.h);
    let norm_k = weighted_norm(t, &g.k);
    Ok(KacnelsonReport { norm_h, norm_k, holds: norm_k <= norm_h + 1e-9 })
}

/// (α + k e₁)!/(α! β!) = ∏_{j=1}^{k} (α₁ + j)/β! with k = |β|.
pub fn first_proj_ratio(alpha1: u32, beta: &[u32]) -> BigRational {
    let k: u64 = beta.iter().map(|&b| b as u64).sum();
    let top = (1..=k).fold(BigUint::one(), |acc, j| acc * BigUint::from(alpha1 as u64 + j));
    BigRational::new(top.into(), crate::exact::multi_factorial(beta).into())
}

/// Multi-indices of total degree ≤ n in lexicographic order.
pub fn lex_indices(d: usize, n: u32) -> Vec<Vec<u32>> {
    let mut all = crate::poly::indices_up_to(d, n);
    all.sort();
    all
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    /// w_{k,α} ≤ w_{k,0}.
    Lemma,
    /// w_{k,α} ≤ v_{k,|α|}.
    A,
    /// v_{k,ld+t} = v_{k+l,t}.
    B,
    /// v_{k,r} ≤ v_{k,0} for s ≤ 0.
    C,
    /// v_{k,r} ≤ u_k for s ≥ 0 and r ≤ d.
    D,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Lemma, Check::A, Check::B, Check::C, Check::D];

    pub fn name(self) -> &'static str {
        match self {
            Check::Lemma => "weight_inequality",
            Check::A => "a",
            Check::B => "b",
            Check::C => "c",
            Check::D => "d",
        }
    }

    pub fn applies(self, s: Ratio<i64>) -> bool {
        match self {
            Check::Lemma | Check::C => !s.is_positive(),
            Check::D => !s.is_negative(),
            Check::A | Check::B => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub d: usize,
    pub s: Ratio<i64>,
    pub k_max: u64,
    pub a_max: u64,
    /// Multiplies every left-hand side; used as a negative control.
    pub corrupt: Option<Ratio<i64>>,
    pub max_witnesses: usize,
}

impl ScanConfig {
    pub fn new(d: usize, s: Ratio<i64>, k_max: u64, a_max: u64) -> Self {
        ScanConfig { d, s, k_max, a_max, corrupt: None, max_witnesses: 16 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub k: u64,
    /// α for the w-checks, (r) or (r, l) for the v-checks.
    pub index: Vec<u64>,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub check: Check,
    pub d: usize,
    pub s: Ratio<i64>,
    pub k_range: (u64, u64),
    pub a_max: u64,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    /// Smallest relative gap 1 − lhs/rhs seen (0 for exact identities).
    pub worst_margin: f64,
}

impl ScanReport {
    fn empty(cfg: &ScanConfig, check: Check, k_range: (u64, u64)) -> Self {
        ScanReport {
            check,
            d: cfg.d,
            s: cfg.s,
            k_range,
            a_max: cfg.a_max,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            worst_margin: f64::INFINITY,
        }
    }

    /// Combines reports over adjacent k-ranges; witnesses kept in k order.
    pub fn merge(mut self, other: ScanReport, max_witnesses: usize) -> ScanReport {
        self.k_range = (self.k_range.0.min(other.k_range.0), self.k_range.1.max(other.k_range.1));
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.violations.sort_by(|a, b| (a.k, &a.index).cmp(&(b.k, &b.index)));
        self.violations.truncate(max_witnesses);
        self.worst_margin = self.worst_margin.min(other.worst_margin);
        self
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, cfg: &ScanConfig, k: u64, index: Vec<u64>, ok: bool, margin: f64, weight: u64) {
        self.checked += weight;
        self.worst_margin = self.worst_margin.min(margin);
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < cfg.max_witnesses {
                self.violations.push(Violation { k, index, margin });
            }
        }
    }
}

/// The d-tuple with sum m whose parts differ by at most one, largest first.
/// It maximizes ∏(α_j + c) over |α| = m for every c ≥ 0.
fn balanced(d: usize, m: u64) -> Vec<u64> {
    let (q, r) = (m / d as u64, m % d as u64);
    (0..d as u64).map(|j| if j < r { q + 1 } else { q }).collect()
}

/// Number of α ∈ N₀^d with |α| = m.
fn compositions(d: usize, m: u64) -> Result<u64> {
    let mut c: u128 = 1;
    for j in 1..d as u128 {
        c = c * (m as u128 + j) / j;
    }
    u64::try_from(c).map_err(|_| Error::InvalidParameter("scan range too large to count".into()))
}

fn shifted_product(p: &[u64], k: u64) -> Result<u128> {
    let mut prod: u128 = 1;
    for &a in p {
        prod = prod
            .checked_mul((a + k + 1) as u128)
            .ok_or_else(|| Error::InvalidParameter("scan range too large for exact products".into()))?;
    }
    Ok(prod)
}

fn compare(cfg: &ScanConfig, lhs: &WeightSq, rhs: &WeightSq, want: Ordering) -> Result<(bool, f64)> {
    let scaled;
    let lhs = match &cfg.corrupt {
        Some(c) => {
            scaled = lhs.clone().scaled(&from_small(*c));
            &scaled
        }
        None => lhs,
    };
    let ord = lhs.cmp_exact(rhs)?;
    let ok = match want {
        Ordering::Equal => ord == Ordering::Equal,
        _ => ord != Ordering::Greater,
    };
    let margin = if want == Ordering::Equal {
        if ok {
            0.0
        } else {
            -(lhs.ratio_f64(rhs) - 1.0).abs()
        }
    } else {
        1.0 - lhs.to_f64() / rhs.to_f64()
    };
    Ok((ok, margin))
}

/// Runs one check for k in [k_lo, k_hi].
pub fn scan_range(cfg: &ScanConfig, check: Check, k_lo: u64, k_hi: u64) -> Result<ScanReport> {
    if cfg.d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if !check.applies(cfg.s) {
        return Err(Error::Precondition(format!("check {} does not apply for s = {}", check.name(), cfg.s)));
    }
    let d = cfg.d as u64;
    let s = cfg.s;
    let mut rep = ScanReport::empty(cfg, check, (k_lo, k_hi));
    let v_weight = |r: u64, k: u64| WeightSq { base: v_base(d, r, k), factor: hs_factor(d, r, k), s };
    let mut v_memo: BTreeMap<(u64, u64), WeightSq> = BTreeMap::new();
    let parts: Vec<(Vec<u64>, u64)> = match check {
        Check::Lemma | Check::A => {
            (0..=cfg.a_max).map(|m| Ok((balanced(cfg.d, m), compositions(cfg.d, m)?))).collect::<Result<_>>()?
        }
        _ => Vec::new(),
    };
    for k in k_lo..=k_hi {
        match check {
            Check::Lemma | Check::A => {
                for (m, (top, count)) in parts.iter().enumerate() {
                    let m = m as u64;
                    let best = shifted_product(top, k)?;
                    let base = fraction(d_pow_d(d) * BigUint::from(best), rising_block(d, m, k));
                    let lhs = WeightSq { base, factor: hs_factor(d, m, k), s };
                    let rhs = if check == Check::Lemma {
                        WeightSq { base: u_base(d, k), factor: hs_factor(d, 0, k), s }
                    } else {
                        WeightSq { base: v_base(d, m, k), factor: hs_factor(d, m, k), s }
                    };
                    let (ok, margin) = compare(cfg, &lhs, &rhs, Ordering::Less)?;
                    rep.record(cfg, k, top.clone(), ok, margin, *count);
                }
            }
            Check::B => {
                for r in 0..=cfg.a_max {
                    let lhs = v_weight(r, k);
                    for l in 1..=r / d {
                        let t = r - l * d;
                        let rhs = v_memo.entry((t, k + l)).or_insert_with(|| v_weight(t, k + l));
                        let (ok, margin) = compare(cfg, &lhs, rhs, Ordering::Equal)?;
                        rep.record(cfg, k, vec![r, l], ok, margin, 1);
                    }
                }
            }
            Check::C => {
                let rhs = WeightSq { base: v_base(d, 0, k), factor: hs_factor(d, 0, k), s };
                for r in 0..=cfg.a_max {
                    let lhs = WeightSq { base: v_base(d, r, k), factor: hs_factor(d, r, k), s };
                    let (ok, margin) = compare(cfg, &lhs, &rhs, Ordering::Less)?;
                    rep.record(cfg, k, vec![r], ok, margin, 1);
                }
            }
            Check::D => {
                let rhs = WeightSq { base: u_base(d, k), factor: hs_factor(d, d, k), s };
                for r in 0..=d {
                    let lhs = WeightSq { base: v_base(d, r, k), factor: hs_factor(d, r, k), s };
                    let (ok, margin) = compare(cfg, &lhs, &rhs, Ordering::Less)?;
                    rep.record(cfg, k, vec![r], ok, margin, 1);
                }
            }
        }
    }
    if rep.checked == 0 {
        rep.worst_margin = 0.0;
    }
    Ok(rep)
}

/// All checks applicable for cfg.s, sequentially.
pub fn weight_inequality_scan(cfg: &ScanConfig) -> Result<Vec<ScanReport>> {
    Check::ALL
        .iter()
        .filter(|c| c.applies(cfg.s))
        .map(|&c| scan_range(cfg, c, 0, cfg.k_max))
        .collect()
}

/// Exact s from a float with a bounded denominator.
pub fn rational_parameter(s: f64) -> Result<Ratio<i64>> {
    crate::exact::small_rational(s, 1_000_000)
        .ok_or_else(|| Error::InvalidParameter(format!("s = {s} is not a small rational")))
}

pub fn ratio_to_f64(s: Ratio<i64>) -> f64 {
    s.numer().to_f64().unwrap_or(f64::NAN) / s.denom().to_f64().unwrap_or(f64::NAN)
}

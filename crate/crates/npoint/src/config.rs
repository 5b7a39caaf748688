//! JSON configuration types for every subcommand.
//!
//! The layout of each type is documented in `docs/config.md`.

use std::path::Path;

use npoint_core::interpolation::Analytic;
use npoint_core::kernels::KernelSpec;
use npoint_core::picknorm::{SearchConfig, DEFAULT_SEED};
use npoint_core::poly::Poly;
use npoint_core::shifts::{rational_parameter, ShiftSpec};
use npoint_core::{CMatrix, C64};
use num_rational::Ratio;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A complex number written as a bare real or as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Complex {
    Real(f64),
    Pair([f64; 2]),
}

impl Complex {
    pub fn value(self) -> C64 {
        match self {
            Complex::Real(x) => C64::new(x, 0.0),
            Complex::Pair([re, im]) => C64::new(re, im),
        }
    }
}

fn complex_vec(v: &[Complex]) -> Vec<C64> {
    v.iter().map(|c| c.value()).collect()
}

/// A rational parameter written as a number or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Number(f64),
    Text(String),
}

impl Rational {
    pub fn exact(&self) -> Result<Ratio<i64>, CliError> {
        match self {
            Rational::Number(x) => rational_parameter(*x).map_err(CliError::from),
            Rational::Text(t) => {
                let t = t.trim();
                let parsed = match t.split_once('/') {
                    Some((p, q)) => p.trim().parse::<i64>().ok().zip(q.trim().parse::<i64>().ok()),
                    None => t.parse::<i64>().ok().map(|p| (p, 1)),
                };
                match parsed {
                    Some((_, 0)) | None => Err(CliError::Usage(format!("cannot parse rational {t:?}"))),
                    Some((p, q)) => Ok(Ratio::new(p, q)),
                }
            }
        }
    }

    pub fn to_f64(&self) -> Result<f64, CliError> {
        let r = self.exact()?;
        Ok(*r.numer() as f64 / *r.denom() as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelConfig {
    Szego,
    Dirichlet { a: f64, #[serde(default = "one")] d: usize },
    Hs { s: f64, #[serde(default = "one")] d: usize },
    TauPullback { d: usize },
    Custom { coeffs: Vec<f64>, #[serde(default = "one")] d: usize },
}

fn one() -> usize {
    1
}

impl KernelConfig {
    pub fn spec(&self) -> Result<KernelSpec, CliError> {
        let k = match self {
            KernelConfig::Szego => KernelSpec::Szego,
            KernelConfig::Dirichlet { a, d } => KernelSpec::dirichlet(*a, *d)?,
            KernelConfig::Hs { s, d } => KernelSpec::hs(*s, *d)?,
            KernelConfig::TauPullback { d } => KernelSpec::tau_pullback(*d)?,
            KernelConfig::Custom { coeffs, d } => KernelSpec::custom(coeffs.clone(), *d)?,
        };
        k.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(k)
    }
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig::Dirichlet { a: 0.0, d: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub alpha: Vec<u32>,
    pub c: Complex,
}

/// Symbol of a multiplier.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolConfig {
    /// Sparse multivariate polynomial.
    Poly { nvars: usize, terms: Vec<Term> },
    /// One-variable polynomial, lowest degree first.
    Univariate { coeffs: Vec<Complex> },
    /// z^m in one variable.
    Monomial { m: u32 },
    /// One-variable quotient num/den.
    Rational { num: Vec<Complex>, den: Vec<Complex> },
    /// (r − z)/(1 − r̄z).
    Theta { r: Complex },
}

pub enum Symbol {
    Poly(Poly),
    Analytic(Analytic),
}

impl npoint_core::picknorm::Symbol for Symbol {
    fn nvars(&self) -> usize {
        match self {
            Symbol::Poly(p) => p.nvars(),
            Symbol::Analytic(a) => a.nvars(),
        }
    }

    fn eval_at(&self, z: &[C64]) -> npoint_core::Result<C64> {
        match self {
            Symbol::Poly(p) => p.eval_at(z),
            Symbol::Analytic(a) => a.eval_at(z),
        }
    }
}

pub fn theta(r: C64) -> Analytic {
    Analytic::Rational { num: vec![r, C64::new(-1.0, 0.0)], den: vec![C64::new(1.0, 0.0), -r.conj()] }
}

impl SymbolConfig {
    pub fn symbol(&self) -> Result<Symbol, CliError> {
        Ok(match self {
            SymbolConfig::Poly { nvars, terms } => {
                Symbol::Poly(Poly::from_terms(*nvars, terms.iter().map(|t| (t.alpha.clone(), t.c.value())))?)
            }
            SymbolConfig::Univariate { coeffs } => Symbol::Poly(Poly::univariate(&complex_vec(coeffs))),
            SymbolConfig::Monomial { m } => Symbol::Poly(Poly::monomial(vec![*m], C64::new(1.0, 0.0))),
            SymbolConfig::Rational { num, den } => {
                if den.is_empty() {
                    return Err(CliError::Usage("empty denominator".into()));
                }
                Symbol::Analytic(Analytic::Rational { num: complex_vec(num), den: complex_vec(den) })
            }
            SymbolConfig::Theta { r } => {
                let r = r.value();
                if !(r.norm() < 1.0) {
                    return Err(CliError::Usage("theta needs |r| < 1".into()));
                }
                Symbol::Analytic(theta(r))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchSettings {
    pub restarts: usize,
    pub max_iters: usize,
    pub rho: f64,
}

impl Default for SearchSettings {
    fn default() -> Self {
        let d = SearchConfig::default();
        SearchSettings { restarts: d.restarts, max_iters: d.max_iters, rho: d.rho }
    }
}

impl SearchSettings {
    pub fn config(&self, n: usize, seed: u64) -> Result<SearchConfig, CliError> {
        let cfg = SearchConfig { n, restarts: self.restarts, max_iters: self.max_iters, seed, rho: self.rho };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_terms() -> usize {
    10
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelCommand {
    pub kernel: KernelConfig,
    /// Number of Taylor coefficients to list.
    #[serde(default = "default_terms")]
    pub terms: usize,
    /// Optional points of the ball; their Gram matrix is printed.
    #[serde(default)]
    pub points: Vec<Vec<Complex>>,
}

/// Values are either scalars or square matrices of a common size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(Complex),
    Matrix(Vec<Vec<Complex>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicknormCommand {
    pub kernel: KernelConfig,
    pub points: Vec<Vec<Complex>>,
    pub values: Vec<Value>,
}

impl PicknormCommand {
    pub fn points(&self) -> Vec<Vec<C64>> {
        self.points.iter().map(|p| complex_vec(p)).collect()
    }

    pub fn values(&self) -> Result<Vec<CMatrix>, CliError> {
        self.values
            .iter()
            .map(|v| match v {
                Value::Scalar(c) => Ok(CMatrix::from_element(1, 1, c.value())),
                Value::Matrix(rows) => {
                    let r = rows.len();
                    if r == 0 || rows.iter().any(|row| row.len() != r) {
                        return Err(CliError::Usage("matrix values must be square and nonempty".into()));
                    }
                    Ok(CMatrix::from_fn(r, r, |i, j| rows[i][j].value()))
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchCommand {
    pub kernel: KernelConfig,
    pub symbol: SymbolConfig,
    #[serde(default = "two")]
    pub n: usize,
    #[serde(default)]
    pub search: SearchSettings,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn two() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpCommand {
    pub points: Vec<Complex>,
    pub targets: Vec<Complex>,
}

impl InterpCommand {
    pub fn data(&self) -> (Vec<C64>, Vec<C64>) {
        (complex_vec(&self.points), complex_vec(&self.targets))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SarasonCommand {
    /// Rows of the square matrix A.
    pub matrix: Vec<Vec<Complex>>,
    /// Coefficients of f, lowest degree first.
    pub symbol: Vec<Complex>,
    #[serde(default)]
    pub margin: Option<f64>,
    #[serde(default)]
    pub grid: Option<usize>,
}

impl SarasonCommand {
    pub fn matrix(&self) -> Result<CMatrix, CliError> {
        let n = self.matrix.len();
        if n == 0 || self.matrix.iter().any(|r| r.len() != n) {
            return Err(CliError::Usage("matrix must be square and nonempty".into()));
        }
        Ok(CMatrix::from_fn(n, n, |i, j| self.matrix[i][j].value()))
    }

    pub fn symbol(&self) -> Poly {
        Poly::univariate(&complex_vec(&self.symbol))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShiftConfig {
    DaW { alpha: Vec<u32> },
    HsW { s: Rational, alpha: Vec<u32> },
    V { d: usize, s: Rational, r: u64 },
    U { d: usize, s: Rational },
    Custom { weights: Vec<f64> },
}

impl ShiftConfig {
    pub fn spec(&self) -> Result<ShiftSpec, CliError> {
        let spec = match self {
            ShiftConfig::DaW { alpha } => ShiftSpec::DaW { d: alpha.len(), alpha: alpha.clone() },
            ShiftConfig::HsW { s, alpha } => ShiftSpec::HsW { d: alpha.len(), s: s.exact()?, alpha: alpha.clone() },
            ShiftConfig::V { d, s, r } => ShiftSpec::V { d: *d, s: s.exact()?, r: *r },
            ShiftConfig::U { d, s } => ShiftSpec::U { d: *d, s: s.exact()? },
            ShiftConfig::Custom { weights } => ShiftSpec::Custom { weights: weights.clone() },
        };
        spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSettings {
    pub dims: Vec<usize>,
    pub s: Vec<Rational>,
    pub k_max: u64,
    pub a_max: u64,
    /// Multiplies every left-hand side; a negative control.
    #[serde(default)]
    pub corrupt: Option<Rational>,
    #[serde(default = "default_witnesses")]
    pub max_witnesses: usize,
}

fn default_witnesses() -> usize {
    16
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings {
            dims: vec![1, 2, 3, 4],
            s: vec![Rational::Text("-1/2".into()), Rational::Number(0.0), Rational::Text("1/2".into())],
            k_max: 200,
            a_max: 200,
            corrupt: None,
            max_witnesses: default_witnesses(),
        }
    }
}

fn default_truncation() -> usize {
    npoint_core::shifts::DEFAULT_TRUNCATION
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftsCommand {
    #[serde(default)]
    pub spec: Option<ShiftConfig>,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    #[serde(default)]
    pub scan: Option<ScanSettings>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case", deny_unknown_fields)]
pub enum EmbedCommand {
    Asymptotics { d: usize, #[serde(default = "default_nmax")] nmax: usize },
    Window { d: usize, s: f64, fit_max: usize, nmax: usize, #[serde(default = "default_factor")] factor: f64 },
    Boundary { d: usize, cap: u32 },
    TauIsometry { coeffs: Vec<i64>, d: usize },
    H2Identity { nmax: u64 },
    SarasonFunction { kernel: KernelConfig, f: Vec<Term>, z: Vec<Complex> },
    BlaschkePowers {
        kernel: KernelConfig,
        zero: Complex,
        nmax: usize,
        #[serde(default = "default_degree")]
        degree: usize,
    },
}

fn default_nmax() -> usize {
    10_000
}

fn default_factor() -> f64 {
    1.5
}

fn default_degree() -> usize {
    4096
}

impl EmbedCommand {
    pub fn sarason_input(kernel: &KernelConfig, f: &[Term], z: &[Complex]) -> Result<npoint_core::embeddings::SarasonInput, CliError> {
        let k = kernel.spec()?;
        let f = Poly::from_terms(k.dim(), f.iter().map(|t| (t.alpha.clone(), t.c.value())))?;
        Ok(npoint_core::embeddings::SarasonInput { kernel: k, f, z: complex_vec(z) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentName {
    DirichletGrowth,
    TwoPointBlowup,
    BlaschkePowers,
    Asymptotics,
    ScanSuite,
    /// Every experiment above, in this order.
    All,
}

impl ExperimentName {
    pub const EACH: [ExperimentName; 5] = [
        ExperimentName::DirichletGrowth,
        ExperimentName::TwoPointBlowup,
        ExperimentName::BlaschkePowers,
        ExperimentName::Asymptotics,
        ExperimentName::ScanSuite,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::DirichletGrowth => "dirichlet-growth",
            ExperimentName::TwoPointBlowup => "two-point-blowup",
            ExperimentName::BlaschkePowers => "blaschke-powers",
            ExperimentName::Asymptotics => "asymptotics",
            ExperimentName::ScanSuite => "scan-suite",
            ExperimentName::All => "all",
        }
    }
}

/// Shared configuration of the experiments. Fields left out take the
/// defaults of the selected experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub experiment: Option<ExperimentName>,
    #[serde(default)]
    pub kernel: Option<KernelConfig>,
    /// Exponents m of z^m (dirichlet-growth).
    #[serde(default)]
    pub degrees: Option<Vec<u32>>,
    /// Point counts n of the searched n-point norms (dirichlet-growth).
    #[serde(default)]
    pub points: Option<Vec<usize>>,
    /// Parameters r of θ_r (two-point-blowup).
    #[serde(default)]
    pub radii: Option<Vec<f64>>,
    /// Dirichlet parameters a (blaschke-powers).
    #[serde(default)]
    pub params: Option<Vec<f64>>,
    /// Zero of the Blaschke factor (blaschke-powers).
    #[serde(default)]
    pub zero: Option<Complex>,
    /// Powers n = 1..=max_power (blaschke-powers).
    #[serde(default)]
    pub max_power: Option<usize>,
    /// Truncation degree of coefficient expansions (blaschke-powers).
    #[serde(default)]
    pub degree: Option<usize>,
    /// Ball dimensions (asymptotics, boundary part of scan-suite).
    #[serde(default)]
    pub dims: Option<Vec<usize>>,
    #[serde(default)]
    pub nmax: Option<usize>,
    /// Degree cap of the boundary decomposition scan (scan-suite).
    #[serde(default)]
    pub cap: Option<u32>,
    #[serde(default)]
    pub scan: Option<ScanSettings>,
    #[serde(default)]
    pub search: SearchSettings,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub format: Option<Format>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: None,
            kernel: None,
            degrees: None,
            points: None,
            radii: None,
            params: None,
            zero: None,
            max_power: None,
            degree: None,
            dims: None,
            nmax: None,
            cap: None,
            scan: None,
            search: SearchSettings::default(),
            seed: DEFAULT_SEED,
            out: None,
            format: None,
        }
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("malformed config: {e}")))
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

//! Seeded synthetic problems and empirical restricted-isometry probes.
//!
//! Randomness comes from ChaCha20 (`rand_chacha`). A stream is addressed by
//! `(seed, trial, purpose)`: the seed keys the cipher and
//! `trial · 16 + purpose` selects the 64-bit stream id, so every trial and
//! every purpose within a trial draws from its own reproducible sequence
//! regardless of execution order. Gaussians use the Box–Muller pair
//! transform on 53-bit uniforms.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::numerics::{lp_norm, mat_vec, norm1, norm2, write_matrix_bin, write_vector, Matrix};

/// What a stream is used for. The discriminant is part of the stream id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Matrix = 0,
    Support = 1,
    Signal = 2,
    Noise = 3,
    Probe = 4,
    TrialSeed = 5,
}

/// The ChaCha20 stream for `(seed, trial, purpose)`.
pub fn stream(seed: u64, trial: u64, purpose: Purpose) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial.wrapping_mul(16).wrapping_add(purpose as u64));
    rng
}

/// Seed of trial `trial` under a master seed.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    stream(master, trial, Purpose::TrialSeed).next_u64()
}

/// Standard normal draws by Box–Muller, caching the second value of each pair.
#[derive(Debug, Clone)]
pub struct Gaussian<R> {
    rng: R,
    spare: Option<f64>,
}

impl<R: RngCore> Gaussian<R> {
    pub fn new(rng: R) -> Self {
        Self { rng, spare: None }
    }

    pub fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1], u2 in [0, 1)
        let u1 = ((self.rng.next_u64() >> 11) + 1) as f64 * f64::EPSILON / 2.0;
        let u2 = (self.rng.next_u64() >> 11) as f64 * f64::EPSILON / 2.0;
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }

    pub fn fill(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample()).collect()
    }

    pub fn rng_mut(&mut self) -> &mut R {
        &mut self.rng
    }
}

/// `s` distinct indices from `0..n`, sorted, by a partial Fisher–Yates shuffle.
pub fn sample_support<R: Rng>(rng: &mut R, n: usize, s: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..s.min(n) {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(s.min(n));
    pool.sort_unstable();
    pool
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixScaling {
    /// Entries `N(0, 1)`.
    Unit,
    /// Entries `N(0, 1/M)`, so columns have unit expected norm.
    InvSqrtM,
}

impl fmt::Display for MatrixScaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixScaling::Unit => "unit",
            MatrixScaling::InvSqrtM => "inv-sqrt-m",
        })
    }
}

impl FromStr for MatrixScaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(MatrixScaling::Unit),
            "inv-sqrt-m" => Ok(MatrixScaling::InvSqrtM),
            other => Err(Error::InvalidArgument(format!(
                "matrix scaling must be `unit` or `inv-sqrt-m`, got `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    /// iid `N(0, σ²)` entries.
    Gaussian { sigma: f64 },
    /// A Gaussian direction rescaled to exactly this ℓ2 norm.
    FixedNorm { norm: f64 },
}

impl NoiseModel {
    pub fn level(&self) -> f64 {
        match *self {
            NoiseModel::Gaussian { sigma } => sigma,
            NoiseModel::FixedNorm { norm } => norm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub noise: NoiseModel,
    pub seed: u64,
    pub scaling: MatrixScaling,
}

impl ProblemSpec {
    /// Noiseless spec with `1/√M` scaling.
    pub fn new(n: usize, m: usize, k: usize, seed: u64) -> Self {
        Self {
            n,
            m,
            k,
            noise: NoiseModel::Gaussian { sigma: 0.0 },
            seed,
            scaling: MatrixScaling::InvSqrtM,
        }
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.noise = NoiseModel::Gaussian { sigma };
        self
    }

    pub fn with_noise_norm(mut self, norm: f64) -> Self {
        self.noise = NoiseModel::FixedNorm { norm };
        self
    }

    pub fn with_scaling(mut self, scaling: MatrixScaling) -> Self {
        self.scaling = scaling;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.m || self.m > self.n {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= k <= M <= N, got k = {}, M = {}, N = {}",
                self.k, self.m, self.n
            )));
        }
        let level = self.noise.level();
        if !(level >= 0.0) || !level.is_finite() {
            return Err(Error::InvalidArgument(format!("noise level must be finite and >= 0, got {level}")));
        }
        Ok(())
    }

    /// Flat `key=value` lines.
    pub fn to_kv(&self) -> String {
        let (mode, level) = match self.noise {
            NoiseModel::Gaussian { sigma } => ("gaussian", sigma),
            NoiseModel::FixedNorm { norm } => ("fixed-norm", norm),
        };
        format!(
            "n={}\nm={}\nk={}\nnoise={mode}\nnoise_level={level:?}\nseed={}\nscaling={}\nsignal=unit-norm-gaussian\n",
            self.n, self.m, self.k, self.seed, self.scaling
        )
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let map = parse_kv(text)?;
        let get = |key: &str| {
            map.get(key)
                .map(String::as_str)
                .ok_or_else(|| Error::InvalidArgument(format!("problem spec is missing `{key}`")))
        };
        let level: f64 = parse_value("noise_level", get("noise_level")?)?;
        let noise = match get("noise")? {
            "gaussian" => NoiseModel::Gaussian { sigma: level },
            "fixed-norm" => NoiseModel::FixedNorm { norm: level },
            other => return Err(Error::InvalidArgument(format!("unknown noise mode `{other}`"))),
        };
        if let Some(signal) = map.get("signal") {
            if signal != "unit-norm-gaussian" {
                return Err(Error::Unsupported(format!("signal distribution `{signal}`")));
            }
        }
        let spec = Self {
            n: parse_value("n", get("n")?)?,
            m: parse_value("m", get("m")?)?,
            k: parse_value("k", get("k")?)?,
            noise,
            seed: parse_value("seed", get("seed")?)?,
            scaling: get("scaling")?.parse()?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub(crate) fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("line {}: expected key=value, got `{line}`", lineno + 1)))?;
        let key = key.trim().to_string();
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(Error::InvalidArgument(format!("line {}: duplicate key `{key}`", lineno + 1)));
        }
    }
    Ok(map)
}

pub(crate) fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("cannot parse `{key}` value `{value}`")))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedProblem {
    pub spec: ProblemSpec,
    pub phi: Matrix,
    pub alpha_star: Vec<f64>,
    pub noise: Vec<f64>,
    pub f: Vec<f64>,
    /// `‖α*‖₁`
    pub tau_star: f64,
}

impl GeneratedProblem {
    /// Writes `phi.bin`, `f.bin`, `alpha_star.bin`, `noise.bin` and
    /// `spec.txt` into `dir`.
    pub fn export(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir)?;
        write_matrix_bin(dir.join("phi.bin"), &self.phi)?;
        write_vector(dir.join("f.bin"), &self.f)?;
        write_vector(dir.join("alpha_star.bin"), &self.alpha_star)?;
        write_vector(dir.join("noise.bin"), &self.noise)?;
        std::fs::write(dir.join("spec.txt"), self.spec.to_kv())?;
        Ok(())
    }
}

/// Draws the problem described by `spec`.
///
/// The noise direction is drawn independently of the noise level, so specs
/// that differ only in σ share `Φ`, `α*` and the noise direction.
pub fn generate(spec: &ProblemSpec) -> Result<GeneratedProblem> {
    spec.validate()?;
    let ProblemSpec { n, m, k, seed, .. } = *spec;

    let entry_scale = match spec.scaling {
        MatrixScaling::Unit => 1.0,
        MatrixScaling::InvSqrtM => 1.0 / (m as f64).sqrt(),
    };
    let mut g = Gaussian::new(stream(seed, 0, Purpose::Matrix));
    let data: Vec<f64> = (0..m * n).map(|_| g.sample() * entry_scale).collect();
    let phi = Matrix::new(m, n, data)?;

    let support = sample_support(&mut stream(seed, 0, Purpose::Support), n, k);
    let mut values = Gaussian::new(stream(seed, 0, Purpose::Signal)).fill(k);
    let scale = norm2(&values);
    values.iter_mut().for_each(|v| *v /= scale);
    let mut alpha_star = vec![0.0; n];
    support.iter().zip(&values).for_each(|(&j, &v)| alpha_star[j] = v);

    let direction = Gaussian::new(stream(seed, 0, Purpose::Noise)).fill(m);
    let noise: Vec<f64> = match spec.noise {
        NoiseModel::Gaussian { sigma } => direction.iter().map(|z| sigma * z).collect(),
        NoiseModel::FixedNorm { norm } => {
            let len = norm2(&direction);
            direction.iter().map(|z| norm * z / len).collect()
        }
    };

    let clean = mat_vec(&phi, &alpha_star)?;
    let f = clean.iter().zip(&noise).map(|(a, b)| a + b).collect();
    Ok(GeneratedProblem {
        spec: *spec,
        tau_star: norm1(&alpha_star),
        phi,
        alpha_star,
        noise,
        f,
    })
}

/// Largest observed `|‖Φα‖_q − 1|` over `trials` random `s`-sparse vectors
/// with Gaussian entries scaled to unit ℓq norm.
///
/// This is a lower bound on the restricted isometry constant of order `s`,
/// never a certificate. Trials are drawn sequentially from one stream, so
/// the estimate is non-decreasing in `trials` for a fixed seed.
pub fn rip_probe(phi: &Matrix, s: usize, q: f64, trials: usize, seed: u64) -> Result<f64> {
    if s == 0 || s > phi.cols() {
        return Err(Error::InvalidArgument(format!(
            "probe sparsity s = {s} must satisfy 1 <= s <= N = {}",
            phi.cols()
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("probe needs at least one trial".into()));
    }
    if !(q >= 1.0) {
        return Err(Error::InvalidArgument(format!("q must be >= 1, got {q}")));
    }
    let mut supports = stream(seed, 0, Purpose::Support);
    let mut values = Gaussian::new(stream(seed, 0, Purpose::Probe));
    let mut x = vec![0.0; phi.cols()];
    let mut worst = 0.0_f64;
    for _ in 0..trials {
        let support = sample_support(&mut supports, phi.cols(), s);
        let mut v = values.fill(s);
        let len = lp_norm(&v, q);
        if len == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|e| *e /= len);
        support.iter().zip(&v).for_each(|(&j, &e)| x[j] = e);
        let image = phi.mul_sparse(&x, &support);
        worst = worst.max((lp_norm(&image, q) - 1.0).abs());
        support.iter().for_each(|&j| x[j] = 0.0);
    }
    Ok(worst)
}

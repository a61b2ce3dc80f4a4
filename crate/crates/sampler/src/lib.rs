//! Random tilings of the weighted hexagon.
//!
//! [`sample_exact`] draws from the Gibbs measure column by column using
//! LGV completion weights; [`sample_mcmc`] runs Metropolis flip dynamics
//! for cross-validation; [`DensityGrid`] aggregates per-face frequencies.
//!
//! Randomness comes from ChaCha8 with one stream per sample index, so a
//! batch is reproducible regardless of thread count.

mod arith;
mod density;
mod mcmc;
mod sequential;

use hexatile_lattice::{Alpha, PathSystem};
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use thiserror::Error;

use arith::{Arith, ExactArith, F64Arith, MpArith};
use sequential::Completion;

pub use density::{DensityGrid, FaceFrequency};
pub use mcmc::{sample_mcmc, McmcChain, McmcStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplerError {
    #[error("exact arithmetic is limited to N <= {limit}, got {n}")]
    ExactTooLarge { n: usize, limit: usize },
    #[error("N must be positive")]
    ZeroSize,
    #[error("completion matrix at column {column} is singular")]
    Singular { column: usize },
    #[error("sampler produced an invalid path system: {0}")]
    Invalid(String),
    #[error("batch mixes parameters")]
    MixedBatch,
    #[error("sweeps must be at least 1")]
    NoSweeps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithmeticMode {
    /// Rational arithmetic; requires N within the exact budget.
    Exact,
    /// Floating point with scaled pivoting.
    LogFloat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub n: usize,
    pub alpha: Alpha,
    pub seed: u64,
    pub mode: ArithmeticMode,
    pub samples: usize,
}

impl SamplerConfig {
    pub fn new(n: usize, alpha: Alpha, seed: u64, mode: ArithmeticMode, samples: usize) -> Self {
        Self { n, alpha, seed, mode, samples }
    }

    fn validate(&self) -> Result<(), SamplerError> {
        if self.n == 0 {
            return Err(SamplerError::ZeroSize);
        }
        let limit = hexatile_exact::exact_n_limit();
        if self.mode == ArithmeticMode::Exact && self.n > limit {
            return Err(SamplerError::ExactTooLarge { n: self.n, limit });
        }
        Ok(())
    }
}

/// Generator for sample `index`: the seed picks the key, the index picks
/// the stream.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Largest N sampled in f64 in `LogFloat` mode. The completion matrices
/// are ill-conditioned enough that f64 draws start to differ from
/// high-precision draws of the same random stream around N = 32; larger
/// sizes use multiprecision floats.
pub const F64_MAX_N: usize = 16;

/// Mantissa bits for the multiprecision path at size N.
pub fn float_precision(n: usize) -> u32 {
    64 + 4 * n as u32
}

/// Draws sample `index` of the configuration.
pub fn sample_exact(cfg: &SamplerConfig, index: u64) -> Result<PathSystem, SamplerError> {
    Ok(batch(cfg, index..index + 1)?.pop().expect("one sample"))
}

/// Draws all `cfg.samples` samples in parallel.
pub fn sample_batch(cfg: &SamplerConfig) -> Result<Vec<PathSystem>, SamplerError> {
    batch(cfg, 0..cfg.samples as u64)
}

fn batch(cfg: &SamplerConfig, range: std::ops::Range<u64>) -> Result<Vec<PathSystem>, SamplerError> {
    cfg.validate()?;
    let alpha = cfg.alpha.exact();
    match cfg.mode {
        ArithmeticMode::Exact => run(&ExactArith, cfg, range, alpha),
        ArithmeticMode::LogFloat if cfg.n <= F64_MAX_N => run(&F64Arith, cfg, range, alpha),
        ArithmeticMode::LogFloat => run(&MpArith { prec: float_precision(cfg.n) }, cfg, range, alpha),
    }
}

fn run<A: Arith>(
    arith: &A,
    cfg: &SamplerConfig,
    range: std::ops::Range<u64>,
    alpha: &rug::Rational,
) -> Result<Vec<PathSystem>, SamplerError>
where
    A::T: Sync,
{
    let comp = Completion::new(arith, cfg.n, alpha);
    range
        .into_par_iter()
        .map(|i| sequential::draw(arith, &comp, cfg.mode != ArithmeticMode::Exact, &mut substream(cfg.seed, i)))
        .collect()
}

/// Draws sample `index` with multiprecision floats of `prec` bits
/// regardless of N, for validating the working precision.
pub fn sample_multiprecision(cfg: &SamplerConfig, index: u64, prec: u32) -> Result<PathSystem, SamplerError> {
    if cfg.n == 0 {
        return Err(SamplerError::ZeroSize);
    }
    let arith = MpArith { prec };
    let comp = Completion::new(&arith, cfg.n, cfg.alpha.exact());
    sequential::draw(&arith, &comp, true, &mut substream(cfg.seed, index))
}

use hexatile_lattice::PathSystem;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::{substream, SamplerConfig, SamplerError};

/// Metropolis dynamics on path systems. A proposal picks a path and an
/// interior column uniformly; when the move exists it is accepted with
/// probability `min(1, α^{ΔE})`.
#[derive(Clone, Debug)]
pub struct McmcChain {
    state: PathSystem,
    alpha: f64,
    rng: ChaCha8Rng,
    stats: McmcStats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct McmcStats {
    pub proposals: u64,
    /// Proposals that named an available move.
    pub valid: u64,
    pub accepted: u64,
}

impl McmcChain {
    /// Chain for sample `index`, started from the zero-energy staircase.
    pub fn new(cfg: &SamplerConfig, index: u64) -> Self {
        Self {
            state: PathSystem::staircase(cfg.n),
            alpha: cfg.alpha.to_f64(),
            rng: substream(cfg.seed ^ 0x6d63_6d63, index),
            stats: McmcStats::default(),
        }
    }

    pub fn state(&self) -> &PathSystem {
        &self.state
    }

    pub fn stats(&self) -> McmcStats {
        self.stats
    }

    /// One sweep: as many proposals as there are (path, column) sites.
    pub fn sweep(&mut self) {
        let n = self.state.n();
        for _ in 0..n * (2 * n - 1) {
            let path = self.rng.random_range(0..n);
            let column = self.rng.random_range(1..2 * n);
            self.stats.proposals += 1;
            let Some(flip) = self.state.flip_at(path, column) else {
                continue;
            };
            self.stats.valid += 1;
            let accept = self.state.flip_energy_change(flip) < 0 || self.rng.random::<f64>() < self.alpha;
            if accept {
                self.state.apply(flip);
                self.stats.accepted += 1;
            }
        }
    }

    pub fn run(&mut self, sweeps: usize) {
        for _ in 0..sweeps {
            self.sweep();
        }
    }

    /// `count` states after `10 n²` burn-in sweeps, `n²` sweeps apart.
    pub fn collect(&mut self, count: usize) -> Vec<PathSystem> {
        let n2 = self.state.n() * self.state.n();
        self.run(10 * n2);
        (0..count)
            .map(|_| {
                self.run(n2);
                self.state.clone()
            })
            .collect()
    }
}

/// State of chain `index` after `sweeps` sweeps from the staircase.
pub fn sample_mcmc(cfg: &SamplerConfig, sweeps: usize, index: u64) -> Result<PathSystem, SamplerError> {
    if sweeps == 0 {
        return Err(SamplerError::NoSweeps);
    }
    if cfg.n == 0 {
        return Err(SamplerError::ZeroSize);
    }
    let mut chain = McmcChain::new(cfg, index);
    chain.run(sweeps);
    Ok(chain.state)
}

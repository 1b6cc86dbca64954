use rayon::prelude::*;

use crate::error::{Error, Result};

use super::walk::{path_rng, walk_until, Exit};
use super::{in_pool, EmbeddedChain, SimConfig};

/// Exact probability, for the chain, of reaching grid index `hi` before `lo`
/// from every index in between (tridiagonal solve).
pub fn exact_hitting(chain: &EmbeddedChain, lo: usize, hi: usize) -> Result<Vec<f64>> {
    if !(lo < hi && hi < chain.len()) {
        return Err(Error::Precondition(format!("targets {lo} < {hi} must be grid indices")));
    }
    let n = hi - lo + 1;
    // rows: -pl h[i-1] + h[i] - pr h[i+1] = 0, h[lo] = 0, h[hi] = 1
    let mut sub = vec![0.0; n];
    let mut diag = vec![1.0; n];
    let mut sup = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0;
    for r in 1..n - 1 {
        let pl = chain.p_left(lo + r);
        sub[r] = -pl;
        sup[r] = -(1.0 - pl);
    }
    for r in 1..n {
        let w = sub[r] / diag[r - 1];
        diag[r] -= w * sup[r - 1];
        rhs[r] -= w * rhs[r - 1];
    }
    let mut h = vec![0.0; n];
    h[n - 1] = rhs[n - 1] / diag[n - 1];
    for r in (0..n - 1).rev() {
        h[r] = (rhs[r] - sup[r] * h[r + 1]) / diag[r];
    }
    Ok(h)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HittingEstimate {
    pub start: f64,
    pub left: f64,
    pub right: f64,
    /// Scale-ratio value `(s(x) - s(l)) / (s(r) - s(l))`.
    pub exact: f64,
    /// Chain value from the tridiagonal solve.
    pub chain_exact: f64,
    pub estimate: f64,
    pub se: f64,
    pub n_paths: u64,
    pub hits: u64,
    pub unresolved: u64,
    pub seed: u64,
}

impl HittingEstimate {
    pub fn z_score(&self) -> f64 {
        if self.se == 0.0 {
            if self.estimate == self.exact { 0.0 } else { f64::INFINITY }
        } else {
            (self.estimate - self.exact) / self.se
        }
    }
}

fn targets(chain: &EmbeddedChain, start: f64, left: f64, right: f64) -> Result<(usize, usize, usize)> {
    let (i, lo, hi) = (chain.index_of(start)?, chain.index_of(left)?, chain.index_of(right)?);
    if !(lo <= i && i <= hi && lo < hi) {
        return Err(Error::Precondition(format!("need left <= start <= right, got {left}, {start}, {right}")));
    }
    Ok((i, lo, hi))
}

/// Monte Carlo estimate of P(reach `right` before `left`) from `start`, all
/// three being grid points of `chain`. Killing is ignored.
pub fn estimate_hitting(chain: &EmbeddedChain, start: f64, left: f64, right: f64, cfg: &SimConfig) -> Result<HittingEstimate> {
    let (i, lo, hi) = targets(chain, start, left, right)?;
    let y = &chain.scales;
    let exact = (y[i] - y[lo]) / (y[hi] - y[lo]);
    let chain_exact = exact_hitting(chain, lo, hi)?[i - lo];
    let exits: Vec<Exit> = in_pool(cfg.threads, || {
        (0..cfg.n_paths)
            .into_par_iter()
            .map(|k| {
                let mut rng = path_rng(cfg.seed, k);
                walk_until(chain, &mut rng, i, lo, hi, cfg.max_steps, false)
            })
            .collect()
    })?;
    let hits = exits.iter().filter(|e| **e == Exit::Right).count() as u64;
    let unresolved = exits.iter().filter(|e| **e == Exit::Unresolved).count() as u64;
    let resolved = cfg.n_paths - unresolved;
    let (estimate, se) = if resolved == 0 {
        (f64::NAN, f64::NAN)
    } else {
        let p = hits as f64 / resolved as f64;
        (p, (p * (1.0 - p) / resolved as f64).sqrt())
    };
    Ok(HittingEstimate {
        start,
        left,
        right,
        exact,
        chain_exact,
        estimate,
        se,
        n_paths: cfg.n_paths,
        hits,
        unresolved,
        seed: cfg.seed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalEstimate {
    /// Fraction of paths reaching either target before being killed.
    pub survived: f64,
    pub se: f64,
    pub killed: u64,
    pub n_paths: u64,
}

/// Fraction of paths that exit through `left` or `right` before the killing
/// measure removes them. The killing clock is the approximate one, so the
/// value is qualitative.
pub fn estimate_survival(chain: &EmbeddedChain, start: f64, left: f64, right: f64, cfg: &SimConfig) -> Result<SurvivalEstimate> {
    let (i, lo, hi) = targets(chain, start, left, right)?;
    let exits: Vec<Exit> = in_pool(cfg.threads, || {
        (0..cfg.n_paths)
            .into_par_iter()
            .map(|k| {
                let mut rng = path_rng(cfg.seed, k);
                walk_until(chain, &mut rng, i, lo, hi, cfg.max_steps, true)
            })
            .collect()
    })?;
    let killed = exits.iter().filter(|e| **e == Exit::Killed).count() as u64;
    let p = 1.0 - killed as f64 / cfg.n_paths.max(1) as f64;
    Ok(SurvivalEstimate {
        survived: p,
        se: (p * (1.0 - p) / cfg.n_paths.max(1) as f64).sqrt(),
        killed,
        n_paths: cfg.n_paths,
    })
}

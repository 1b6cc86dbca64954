use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::walk::{path_rng, Stepper};
use super::{in_pool, EmbeddedChain, SimConfig};

/// Time spent at each grid point, with the clock given by the holding
/// weights.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationProfile {
    pub points: Vec<f64>,
    /// Pooled occupation: time at each point over all paths, divided by the
    /// total time.
    pub fraction: Vec<f64>,
    /// Speed mass of each cell over the total: the stationary occupation of
    /// a reflecting chain.
    pub expected: Vec<f64>,
    /// Unnormalised holding time at each point, per path.
    pub per_path: Vec<Vec<f64>>,
    pub steps_per_path: u64,
}

impl OccupationProfile {
    /// Pooled occupation of the grid points satisfying `pred` and its
    /// standard error. The estimate is the ratio of summed times over paths
    /// (ratio estimator, delta-method error); averaging per-path fractions
    /// instead is biased when paths are short.
    pub fn mass_fraction(&self, pred: impl Fn(f64) -> bool) -> (f64, f64) {
        let sel: Vec<bool> = self.points.iter().map(|&x| pred(x)).collect();
        let (num, den): (Vec<f64>, Vec<f64>) = self
            .per_path
            .iter()
            .map(|p| {
                let a: f64 = p.iter().zip(&sel).filter(|(_, s)| **s).map(|(v, _)| v).sum();
                (a, p.iter().sum::<f64>())
            })
            .unzip();
        let n = num.len() as f64;
        let total: f64 = den.iter().sum();
        if total <= 0.0 {
            return (f64::NAN, f64::NAN);
        }
        let r = num.iter().sum::<f64>() / total;
        if num.len() < 2 {
            return (r, f64::NAN);
        }
        let var = num.iter().zip(&den).map(|(a, d)| (a - r * d).powi(2)).sum::<f64>() / (n - 1.0);
        let mean_den = total / n;
        (r, (var / n).sqrt() / mean_den)
    }

    pub fn expected_fraction(&self, pred: impl Fn(f64) -> bool) -> f64 {
        self.points.iter().zip(&self.expected).filter(|(x, _)| pred(**x)).map(|(_, e)| e).sum()
    }
}

/// Runs `cfg.n_paths` walks of `total_steps / n_paths` jumps each. Without a
/// `start`, each path starts from the stationary law of the jump chain
/// (proportional to the number of neighbours), so the time-weighted
/// occupation is unbiased for the speed measure.
pub fn occupation_profile(
    chain: &EmbeddedChain,
    start: Option<f64>,
    total_steps: u64,
    cfg: &SimConfig,
) -> Result<OccupationProfile> {
    if cfg.n_paths == 0 {
        return Err(Error::Precondition("need at least one path".into()));
    }
    let steps = total_steps / cfg.n_paths;
    let fixed = start.map(|x| chain.index_of(x)).transpose()?;
    let last = chain.len() - 1;
    let degree: Vec<f64> = (0..=last).map(|i| if i == 0 || i == last { 1.0 } else { 2.0 }).collect();
    let total_degree: f64 = degree.iter().sum();
    let per_path: Vec<Vec<f64>> = in_pool(cfg.threads, || {
        (0..cfg.n_paths)
            .into_par_iter()
            .map(|k| {
                let mut rng = path_rng(cfg.seed, k);
                let mut i = match fixed {
                    Some(i) => i,
                    None => {
                        let mut u = rng.gen::<f64>() * total_degree;
                        let mut i = 0;
                        while i < last && u >= degree[i] {
                            u -= degree[i];
                            i += 1;
                        }
                        i
                    }
                };
                let mut stepper = Stepper::new(chain);
                let mut time = vec![0.0; chain.len()];
                for _ in 0..steps {
                    time[i] += chain.holding[i];
                    if chain.is_absorbing(i) {
                        break;
                    }
                    i = stepper.step(&mut rng, i);
                }
                time
            })
            .collect()
    })?;
    let mut fraction = vec![0.0; chain.len()];
    for p in &per_path {
        for (f, v) in fraction.iter_mut().zip(p) {
            *f += v;
        }
    }
    let t: f64 = fraction.iter().sum();
    if t > 0.0 {
        fraction.iter_mut().for_each(|f| *f /= t);
    }
    let total_mass: f64 = chain.cell_mass.iter().sum();
    let expected = chain.cell_mass.iter().map(|m| m / total_mass).collect();
    Ok(OccupationProfile {
        points: chain.points.clone(),
        fraction,
        expected,
        per_path,
        steps_per_path: steps,
    })
}

//! Path simulation on scale-uniform grids. Exit distributions are exact for
//! the chain; time is only approximated through speed-mass holding weights.

mod chain;
mod hitting;
mod occupation;
mod walk;

use std::fmt::Write as _;

use crate::dirichlet::DiffusionSpec;
use crate::error::{Error, Result};

pub use chain::{build_chain, BoundaryRow, EmbeddedChain};
pub use hitting::{estimate_hitting, estimate_survival, exact_hitting, HittingEstimate, SurvivalEstimate};
pub use occupation::{occupation_profile, OccupationProfile};

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Grid spacing in scale units; defaults to a thousandth of the window's
    /// scale gap.
    pub delta_s: Option<f64>,
    pub n_paths: u64,
    pub seed: u64,
    /// Paths still running after this many jumps are reported as unresolved.
    pub max_steps: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig { delta_s: None, n_paths: 10_000, seed: 0, max_steps: 100_000_000, threads: None }
    }
}

pub(crate) fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Simulation(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrapCheck {
    pub x: f64,
    pub is_trap: bool,
    /// The simulated path from `x` never moved.
    pub constant: bool,
}

/// Simulates `steps` jumps from `x` on the chain of the effective interval
/// holding `x`, or a constant path when `x` is a trap.
pub fn trajectory(spec: &DiffusionSpec, x: f64, steps: u64, cfg: &SimConfig) -> Result<Vec<f64>> {
    let n = match spec.index_of(x) {
        None => return Ok(vec![x; steps as usize + 1]),
        Some(n) => n,
    };
    let e = spec.interval(n)?;
    let (j, s) = (&e.interval, &e.scale);
    let ok = |t: f64| j.contains(t) && s.eval(t).map(|v| v.is_finite()).unwrap_or(false);
    // a window around x with finite scale at both ends
    let mut d = 1.0;
    while !(ok(x - d) && ok(x + d)) {
        d *= 0.5;
        if d < 1e-12 * x.abs().max(1.0) {
            return Err(Error::Simulation(format!("no finite-scale window around {x}")));
        }
    }
    let (a, b) = (x - d, x + d);
    let (ya, yx, yb) = (s.eval(a)?.to_f64(), s.eval(x)?.to_f64(), s.eval(b)?.to_f64());
    let requested = cfg.delta_s.unwrap_or(1e-3 * (yb - ya));
    // snap so that x is a grid point
    let ds = (yx - ya) / ((yx - ya) / requested).round().max(1.0);
    let b = s.inverse_eval(yx + ((yb - yx) / ds).floor().max(1.0) * ds)?.min(b);
    let window = crate::measures::Interval::closed(a, b)?;
    let chain = build_chain(spec, n, &window, &SimConfig { delta_s: Some(ds), ..cfg.clone() })?;
    let mut i = chain.index_of(x)?;
    let mut rng = walk::path_rng(cfg.seed, 0);
    let mut stepper = walk::Stepper::new(&chain);
    let mut path = vec![chain.points[i]];
    for _ in 0..steps {
        if !chain.is_absorbing(i) {
            i = stepper.step(&mut rng, i);
        }
        path.push(chain.points[i]);
    }
    Ok(path)
}

pub fn trap_check(spec: &DiffusionSpec, x: f64, steps: u64, cfg: &SimConfig) -> Result<TrapCheck> {
    let path = trajectory(spec, x, steps, cfg)?;
    Ok(TrapCheck { x, is_trap: spec.is_trap(x), constant: path.iter().all(|&p| p == x) })
}

pub const HITTING_CSV_HEADER: &str = "spec_id,start,left,right,delta_s,exact,chain_exact,estimate,se,n_paths,hits,unresolved,seed";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV row, numbers written with 17 significant digits.
pub fn hitting_csv_row(spec_id: &str, delta_s: f64, h: &HittingEstimate) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        spec_id,
        num(h.start),
        num(h.left),
        num(h.right),
        num(delta_s),
        num(h.exact),
        num(h.chain_exact),
        num(h.estimate),
        num(h.se),
        h.n_paths,
        h.hits,
        h.unresolved,
        h.seed
    )
}

pub const OCCUPATION_CSV_HEADER: &str = "spec_id,x,fraction,expected";

pub fn occupation_csv(spec_id: &str, p: &OccupationProfile) -> String {
    let mut out = String::new();
    out.push_str(OCCUPATION_CSV_HEADER);
    out.push('\n');
    for ((x, f), e) in p.points.iter().zip(&p.fraction).zip(&p.expected) {
        let _ = writeln!(out, "{spec_id},{},{},{}", num(*x), num(*f), num(*e));
    }
    out
}

#[cfg(test)]
mod tests;

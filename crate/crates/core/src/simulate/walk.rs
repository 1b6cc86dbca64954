use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::EmbeddedChain;

/// Independent stream for path `k`; the same `(seed, k)` always produces the
/// same path whatever the thread count.
pub(crate) fn path_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// Step source. Symmetric chains consume one bit per step; otherwise one
/// uniform per step.
pub(crate) struct Stepper<'a> {
    chain: &'a EmbeddedChain,
    symmetric: bool,
    bits: u64,
    left: u32,
}

impl<'a> Stepper<'a> {
    pub fn new(chain: &'a EmbeddedChain) -> Self {
        Stepper { chain, symmetric: chain.is_symmetric(), bits: 0, left: 0 }
    }

    /// Next position from interior or reflecting point `i`.
    pub fn step(&mut self, rng: &mut ChaCha8Rng, i: usize) -> usize {
        let last = self.chain.len() - 1;
        if i == 0 {
            return 1;
        }
        if i == last {
            return last - 1;
        }
        let go_left = if self.symmetric {
            if self.left == 0 {
                self.bits = rng.next_u64();
                self.left = 64;
            }
            let b = self.bits & 1 == 1;
            self.bits >>= 1;
            self.left -= 1;
            b
        } else {
            rng.gen::<f64>() < self.chain.p_left(i)
        };
        if go_left {
            i - 1
        } else {
            i + 1
        }
    }
}

/// Outcome of one walk between two absorbing targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Exit {
    Left,
    Right,
    Killed,
    Unresolved,
}

pub(crate) fn walk_until(
    chain: &EmbeddedChain,
    rng: &mut ChaCha8Rng,
    start: usize,
    lo: usize,
    hi: usize,
    max_steps: u64,
    with_killing: bool,
) -> Exit {
    let mut stepper = Stepper::new(chain);
    let mut i = start;
    let mut n = 0u64;
    loop {
        if i == lo {
            return Exit::Left;
        }
        if i == hi {
            return Exit::Right;
        }
        if n >= max_steps {
            return Exit::Unresolved;
        }
        if with_killing && chain.kill_prob[i] > 0.0 && rng.gen::<f64>() < chain.kill_prob[i] {
            return Exit::Killed;
        }
        i = stepper.step(rng, i);
        n += 1;
    }
}

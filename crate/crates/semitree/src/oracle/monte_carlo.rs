use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{Parity, TreeParams};

/// Walks per deterministic block; each block has its own ChaCha stream.
pub const BLOCK_WALKS: u64 = 4096;

pub const DEFAULT_CAP: u64 = 10_000;

/// Distance beyond which a walk is declared escaped. Hitting the target from
/// distance `D` requires `D` successive first descents, each of probability at
/// most `F±(1)`, so the discarded mass is below `(q₊q₋)^{−⌊D/2⌋} ≤ 2^{−160}`.
pub const ESCAPE_RADIUS: u64 = 160;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub walks: u64,
    pub hits: u64,
    /// Fraction of walks that hit the target within the cap.
    pub estimate: f64,
    /// `√(p̂(1−p̂)/walks)`.
    pub std_error: f64,
    /// Fraction still alive (not hit, not escaped) when the cap was reached.
    pub unabsorbed: f64,
    /// Fraction that provably could not hit within the cap or left [`ESCAPE_RADIUS`].
    pub escaped: f64,
}

#[derive(Default, Clone, Copy)]
struct Tally {
    hits: u64,
    capped: u64,
    escaped: u64,
}

fn run_block(
    seed: u64,
    block: u64,
    walks: u64,
    cap: u64,
    odd: &Bernoulli,
    even: &Bernoulli,
) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut tally = Tally::default();
    for _ in 0..walks {
        let mut d: u64 = 1;
        let mut t: u64 = 0;
        loop {
            if d == 0 {
                tally.hits += 1;
                break;
            }
            if t == cap {
                tally.capped += 1;
                break;
            }
            if d > cap - t || d >= ESCAPE_RADIUS {
                tally.escaped += 1;
                break;
            }
            let down = if d % 2 == 1 { odd.sample(&mut rng) } else { even.sample(&mut rng) };
            if down {
                d -= 1;
            } else {
                d += 1;
            }
            t += 1;
        }
    }
    tally
}

/// Simulates the distance chain from a neighbour (of class `start_parity`) of
/// the target until it hits, escapes or runs `cap` steps. Deterministic in
/// `seed`, independently of the number of worker threads.
pub fn monte_carlo_hitting(params: &TreeParams, start_parity: Parity, walks: u64, cap: u64, seed: u64) -> McEstimate {
    let walks = walks.max(1);
    let cap = cap.max(1);
    let q_odd = params.q(start_parity) as f64;
    let q_even = params.q(start_parity.flip()) as f64;
    let odd = Bernoulli::new(1.0 / (q_odd + 1.0)).expect("probability in [0, 1]");
    let even = Bernoulli::new(1.0 / (q_even + 1.0)).expect("probability in [0, 1]");
    let blocks = walks.div_ceil(BLOCK_WALKS);
    let total = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let n = BLOCK_WALKS.min(walks - b * BLOCK_WALKS);
            run_block(seed, b, n, cap, &odd, &even)
        })
        .reduce(Tally::default, |a, b| Tally {
            hits: a.hits + b.hits,
            capped: a.capped + b.capped,
            escaped: a.escaped + b.escaped,
        });
    let w = walks as f64;
    let est = total.hits as f64 / w;
    McEstimate {
        walks,
        hits: total.hits,
        estimate: est,
        std_error: (est * (1.0 - est) / w).sqrt(),
        unabsorbed: total.capped as f64 / w,
        escaped: total.escaped as f64 / w,
    }
}

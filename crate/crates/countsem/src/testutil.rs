//! Shared fixtures for the unit tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::af::ArgumentationFramework;

/// The four-argument framework used throughout the tests:
/// x2 -> x1, x3 -> x2, x2 -> x3, x3 -> x3, x4 -> x2.
pub fn example1() -> ArgumentationFramework {
    ArgumentationFramework::new(
        vec!["x1", "x2", "x3", "x4"],
        [(1, 0), (2, 1), (1, 2), (2, 2), (3, 1)],
    )
    .unwrap()
}

/// Left pentagon of the distributed-defense counterexample:
/// x2,x3 -> x1; x4 -> x2; x5 -> x3.
pub fn fig3_left() -> ArgumentationFramework {
    ArgumentationFramework::new(
        vec!["x1", "x2", "x3", "x4", "x5"],
        [(1, 0), (2, 0), (3, 1), (4, 2)],
    )
    .unwrap()
}

/// Right pentagon: y2,y3 -> y1; y4,y5 -> y2.
pub fn fig3_right() -> ArgumentationFramework {
    ArgumentationFramework::new(
        vec!["y1", "y2", "y3", "y4", "y5"],
        [(1, 0), (2, 0), (3, 1), (4, 1)],
    )
    .unwrap()
}

/// Both pentagons in a single framework.
pub fn fig3_combined() -> ArgumentationFramework {
    fig3_left().disjoint_union(&fig3_right()).unwrap()
}

/// Seeded random framework over arguments `a0..a{n-1}` with independent
/// edge probability `p`.
pub fn random_af(rng: &mut ChaCha8Rng, n: usize, p: f64) -> ArgumentationFramework {
    let mut attacks = Vec::new();
    for a in 0..n {
        for t in 0..n {
            if rng.random::<f64>() < p {
                attacks.push((a, t));
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    ArgumentationFramework::new(names, attacks).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

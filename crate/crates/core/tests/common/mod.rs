#![allow(dead_code)]

use principalize_core::{Arrangement, BlowupState, Divisor, Nerve};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random downward-closed nerve on `n` vertices in which every singleton is
/// nonempty.
pub fn random_nerve(rng: &mut ChaCha8Rng, n: usize) -> Nerve {
    if rng.gen_bool(0.25) {
        return Nerve::full(n);
    }
    let mut sets: Vec<Vec<usize>> = (0..rng.gen_range(1..=3))
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.6)).collect())
        .collect();
    for v in 0..n {
        if !sets.iter().any(|s| s.contains(&v)) {
            sets.push(vec![v]);
        }
    }
    Nerve::from_maximal(n, sets).unwrap()
}

pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, h: usize, max_coeff: u64) -> Vec<Vec<u64>> {
    (0..h)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=max_coeff)).collect())
        .collect()
}

pub fn state(nerve: Nerve, rows: &[Vec<u64>]) -> BlowupState {
    BlowupState::new(
        Arrangement::with_nerve(nerve),
        rows.iter().cloned().map(Divisor::new).collect(),
    )
}

pub fn toric_state(rows: &[Vec<u64>]) -> BlowupState {
    state(Nerve::full(rows[0].len()), rows)
}

/// All vectors of length `n` with entries in `0..=max`.
pub fn all_vectors(n: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

//! Seeded random inputs and empirical scaling measurements.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::lsrs::lsrs_with;
use crate::plus3::lsrs_plus3_with;
use crate::seq::{ParseMode, Sequence};
use crate::tables::{cube_table_with, square_table_with, Threads};

const LETTERS: &str = "ACGTabcdefghijklmnopqrsuvwxyzBDEFHIJKLMNOPQRSUVWXYZ0123456789";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchAlg {
    Q2,
    Q3,
    Lsrs,
    Plus3,
}

/// RNG for one benchmark size; depends only on `(seed, n)`.
pub fn rng_for(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Uniform random string of length `n` over the first `sigma` letters of
/// `ACGT...`.
pub fn random_sequence<R: Rng>(rng: &mut R, n: usize, sigma: usize) -> Sequence {
    let pool: Vec<char> = LETTERS.chars().take(sigma.max(1)).collect();
    let text: String = (0..n).map(|_| pool[rng.random_range(0..pool.len())]).collect();
    Sequence::from_tokens(text.chars().map(String::from), ParseMode::Raw)
}

/// Random string of length `n >= 2` in which every letter occurs two or
/// three times (as many triples as possible).
pub fn random_plus3_sequence<R: Rng>(rng: &mut R, n: usize) -> Sequence {
    let (triples, pairs) = match n % 3 {
        0 => (n / 3, 0),
        1 => ((n - 4) / 3, 2),
        _ => ((n - 2) / 3, 1),
    };
    let pool: Vec<char> = LETTERS.chars().collect();
    assert!(triples + pairs <= pool.len(), "n = {n} needs more letters than available");
    let mut letters: Vec<char> = Vec::with_capacity(n);
    for (k, &c) in pool.iter().take(triples + pairs).enumerate() {
        let copies = if k < triples { 3 } else { 2 };
        letters.extend(std::iter::repeat_n(c, copies));
    }
    letters.shuffle(rng);
    Sequence::from_tokens(letters.iter().map(char::to_string), ParseMode::Raw)
}

pub fn input_for(alg: BenchAlg, seed: u64, n: usize) -> Sequence {
    let mut rng = rng_for(seed, n);
    match alg {
        BenchAlg::Plus3 => random_plus3_sequence(&mut rng, n),
        _ => random_sequence(&mut rng, n, 4),
    }
}

pub fn run_once(alg: BenchAlg, seq: &Sequence, threads: Threads) -> Result<()> {
    match alg {
        BenchAlg::Q2 => {
            square_table_with(seq, threads);
        }
        BenchAlg::Q3 => {
            cube_table_with(seq, threads);
        }
        BenchAlg::Lsrs => {
            lsrs_with(seq, threads);
        }
        BenchAlg::Plus3 => {
            lsrs_plus3_with(seq, threads)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub reps: usize,
    /// Mean wall time of one run.
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub alg: BenchAlg,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `ln(seconds)` against `ln(n)`.
    pub slope: f64,
}

/// Times one run per size, repeating small sizes until `min_total` elapses
/// so timer resolution does not flatten the fit.
pub fn bench(alg: BenchAlg, sizes: &[usize], seed: u64, threads: Threads, min_total: Duration) -> Result<BenchReport> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let seq = input_for(alg, seed, n);
        run_once(alg, &seq, threads)?; // warm-up
        let start = Instant::now();
        let mut reps = 0;
        while reps == 0 || (start.elapsed() < min_total && reps < 100_000) {
            run_once(alg, &seq, threads)?;
            reps += 1;
        }
        rows.push(BenchRow { n, reps, seconds: start.elapsed().as_secs_f64() / reps as f64 });
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.seconds)).collect();
    Ok(BenchReport { alg, seed, slope: loglog_slope(&points), rows })
}

pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

//! Longest subsequence-repeated subsequence by a prefix DP over the square
//! and cube tables.
//!
//! Every SR-block `x^d` splits into blocks with exponent 2 or 3, so
//! `L(i) = max(L(j) + Q2[j+1,i], L(j) + Q3[j+1,i])` over the last block's
//! start covers all optimal solutions.

use crate::seq::{merge_blocks, Block, Sequence, SrsDecomposition};
use crate::tables::{
    cube_table_with, cube_witness_bounded, square_table_with, square_witness, IntervalTable, Threads,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LastBlock {
    Square,
    Cube,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LsrsResult {
    pub length: usize,
    /// Canonical form: adjacent roots differ.
    pub decomposition: SrsDecomposition,
    /// `L(0..=n)`.
    pub prefix_values: Vec<usize>,
}

pub fn lsrs(seq: &Sequence) -> LsrsResult {
    lsrs_with(seq, Threads::default())
}

pub fn lsrs_with(seq: &Sequence, threads: Threads) -> LsrsResult {
    let q2 = square_table_with(seq, threads);
    let q3 = cube_table_with(seq, threads);
    lsrs_from_tables(seq, &q2, &q3)
}

/// Runs the prefix DP on precomputed tables. Ties go to the smallest `j`,
/// and a square beats a cube with the same `j` and total.
pub fn lsrs_from_tables(seq: &Sequence, q2: &IntervalTable<usize>, q3: &IntervalTable<usize>) -> LsrsResult {
    let n = seq.len();
    let mut value = vec![0usize; n + 1];
    let mut choice: Vec<Option<(usize, LastBlock)>> = vec![None; n + 1];
    for i in 2..=n {
        let mut best: Option<(usize, usize, LastBlock)> = None;
        #[allow(clippy::needless_range_loop)]
        for j in 0..i - 1 {
            let mut consider = |total: usize, kind: LastBlock| {
                if best.is_none_or(|(b, _, _)| total > b) {
                    best = Some((total, j, kind));
                }
            };
            consider(value[j] + q2.at(j + 1, i), LastBlock::Square);
            if j + 2 < i {
                consider(value[j] + q3.at(j + 1, i), LastBlock::Cube);
            }
        }
        let (total, j, kind) = best.expect("i >= 2 admits j = 0");
        value[i] = total;
        choice[i] = Some((j, kind));
    }

    let mut blocks: Vec<Block> = Vec::new();
    let mut i = n;
    while let Some((j, kind)) = choice[i] {
        let witness = match kind {
            LastBlock::Square if q2.at(j + 1, i) > 0 => square_witness(seq, j + 1, i),
            LastBlock::Cube if q3.at(j + 1, i) > 0 => {
                cube_witness_bounded(seq, j + 1, i, Some(q3.at(j + 1, i)))
            }
            // Zero-length blocks only forward L(j).
            _ => Ok(None),
        };
        if let Some(dec) = witness.expect("interval taken from the DP is in range") {
            blocks.extend(dec.blocks.into_iter().map(Block::into_primitive).rev());
        }
        i = j;
    }
    blocks.reverse();
    let decomposition = merge_blocks(blocks);
    debug_assert_eq!(decomposition.total_length(), value[n]);
    LsrsResult { length: value[n], decomposition, prefix_values: value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::validate_srs;

    fn run(s: &str) -> (Sequence, LsrsResult) {
        let seq = Sequence::raw(s).unwrap();
        let r = lsrs(&seq);
        assert!(validate_srs(&seq, &r.decomposition, &[]).is_ok());
        assert_eq!(r.decomposition.total_length(), r.length);
        (seq, r)
    }

    #[test]
    fn worked_examples() {
        assert_eq!(run("ACGAGCGCAGCGA").1.length, 10);
        // (AC)^2 (TAG)^2 has length 10, but (ACT)^2 (TAG)^2 fits as well.
        let (seq, r) = run("ACTACTTAGTACGT");
        assert_eq!(r.length, 12, "{}", r.decomposition.render(&seq));
    }

    #[test]
    fn empty_and_single() {
        let (_, r) = run("");
        assert_eq!((r.length, r.prefix_values.clone()), (0, vec![0]));
        let (_, r) = run("a");
        assert_eq!((r.length, r.prefix_values.clone()), (0, vec![0, 0]));
    }

    #[test]
    fn long_runs_merge() {
        let (seq, r) = run("aaaaaaa");
        assert_eq!(r.length, 7);
        assert_eq!(r.decomposition.render(&seq), "(a)^7");
        let (seq, r) = run("ababababab");
        assert_eq!(r.length, 10);
        assert_eq!(r.decomposition.blocks.len(), 1, "{}", r.decomposition.render(&seq));
    }

    #[test]
    fn prefix_values_are_monotone() {
        let (_, r) = run("abcbacbbcaacb");
        assert!(r.prefix_values.windows(2).all(|w| w[0] <= w[1]));
    }
}

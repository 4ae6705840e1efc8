//! Triangular interval tables and the all-substrings longest square (`Q2`)
//! and longest cube (`Q3`) tables.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lcs::{lcs2_all_prefixes, lcs2_witness, lcs3_witness, Lcs2Workspace, Lcs3Workspace};
use crate::seq::{Block, Sequence, SrsDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableKind {
    Q2,
    Q3,
    C,
    C2,
    C3,
    S2,
    S3,
    L,
}

/// Map `(i, j) -> T` for `1 <= i <= j <= n`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalTable<T> {
    n: usize,
    kind: TableKind,
    entries: Vec<T>,
}

impl<T: Clone> IntervalTable<T> {
    pub fn new(n: usize, kind: TableKind, fill: T) -> Self {
        IntervalTable { n, kind, entries: vec![fill; n * (n + 1) / 2] }
    }
}

impl<T> IntervalTable<T> {
    /// Assembles a table from rows `1..=n`, where row `i` holds `j = i..=n`.
    pub fn from_rows(n: usize, kind: TableKind, rows: Vec<Vec<T>>) -> Self {
        assert_eq!(rows.len(), n);
        let mut entries = Vec::with_capacity(n * (n + 1) / 2);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), n - r);
            entries.extend(row);
        }
        IntervalTable { n, kind, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    fn row_start(&self, i: usize) -> usize {
        (i - 1) * (2 * self.n + 2 - i) / 2
    }

    fn index(&self, i: usize, j: usize) -> usize {
        assert!(1 <= i && i <= j && j <= self.n, "interval [{i},{j}] outside 1..={}", self.n);
        self.row_start(i) + (j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[self.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        let k = self.index(i, j);
        self.entries[k] = value;
    }

    /// Entries `(i, i..=n)`.
    pub fn row(&self, i: usize) -> &[T] {
        let start = self.row_start(i);
        &self.entries[start..start + self.n + 1 - i]
    }

    /// All cells in row-major order (`i` ascending, then `j` ascending).
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        (1..=self.n).flat_map(move |i| self.row(i).iter().enumerate().map(move |(d, v)| (i, i + d, v)))
    }
}

impl<T: Copy> IntervalTable<T> {
    pub fn at(&self, i: usize, j: usize) -> T {
        *self.get(i, j)
    }
}

/// Worker count for the suffix-parallel table builders. Output never depends
/// on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threads(pub usize);

impl Default for Threads {
    fn default() -> Self {
        Threads(1)
    }
}

/// Runs `row(s)` for every suffix start `s = 1..=n`. Each call owns row `s`
/// of the result, so serial and parallel runs produce identical tables.
pub(crate) fn build_rows<T, F>(n: usize, threads: Threads, row: F) -> Vec<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    if threads.0 <= 1 || n < 2 {
        return (1..=n).map(row).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads.0).build() {
        Ok(pool) => pool.install(|| (1..=n).into_par_iter().map(&row).collect()),
        Err(_) => (1..=n).map(row).collect(),
    }
}

pub fn square_table(seq: &Sequence) -> IntervalTable<usize> {
    square_table_with(seq, Threads::default())
}

/// `Q2[i,j]`: length of a longest square subsequence of `S[i..j]`.
///
/// For each suffix start `s` and cut `m`, one LCS of `S[s..m]` against
/// `S[m+1..n]` answers every right end `m + k` at once: `O(n^4)` total.
pub fn square_table_with(seq: &Sequence, threads: Threads) -> IntervalTable<usize> {
    let n = seq.len();
    let rows = build_rows(n, threads, |s| {
        let mut row = vec![0usize; n + 1 - s];
        let mut ws = Lcs2Workspace::new();
        let mut f = Vec::with_capacity(n + 1);
        for m in s..n {
            ws.run(seq.slice(s, m), seq.slice(m + 1, n), &mut f);
            for (k, &v) in f.iter().enumerate().skip(1) {
                let cell = &mut row[m + k - s];
                *cell = (*cell).max(2 * v);
            }
        }
        row
    });
    IntervalTable::from_rows(n, TableKind::Q2, rows)
}

pub fn cube_table(seq: &Sequence) -> IntervalTable<usize> {
    cube_table_with(seq, Threads::default())
}

/// `Q3[i,j]`: length of a longest cubic subsequence of `S[i..j]`.
///
/// For each suffix start `s` and cut pair `c1 < c2`, a three-way LCS of
/// `S[s..c1]`, `S[c1+1..c2]`, `S[c2+1..n]` answers every right end `c2 + k`.
/// `O(n^6)` time; working memory is one pair of `O(n^2)` layers per worker.
pub fn cube_table_with(seq: &Sequence, threads: Threads) -> IntervalTable<usize> {
    let n = seq.len();
    let rows = build_rows(n, threads, |s| {
        let mut row = vec![0usize; n + 1 - s];
        let mut ws = Lcs3Workspace::new();
        let mut f = Vec::with_capacity(n + 1);
        for c1 in s..n {
            for c2 in c1 + 1..n {
                ws.run(seq.slice(s, c1), seq.slice(c1 + 1, c2), seq.slice(c2 + 1, n), &mut f);
                for (k, &v) in f.iter().enumerate().skip(1) {
                    let cell = &mut row[c2 + k - s];
                    *cell = (*cell).max(3 * v);
                }
            }
        }
        row
    });
    IntervalTable::from_rows(n, TableKind::Q3, rows)
}

fn check_interval(seq: &Sequence, i: usize, j: usize) -> Result<()> {
    if i == 0 || i > j || j > seq.len() {
        return Err(Error::Domain(format!(
            "interval [{i},{j}] is not within 1..={}",
            seq.len()
        )));
    }
    Ok(())
}

/// A longest square subsequence of `S[i..j]` as a single exponent-2 block, or
/// `None` when the interval has no repeated letter.
pub fn square_witness(seq: &Sequence, i: usize, j: usize) -> Result<Option<SrsDecomposition>> {
    check_interval(seq, i, j)?;
    let mut best = (0, 0);
    for m in i..j {
        let v = lcs2_all_prefixes(seq.slice(i, m), seq.slice(m + 1, j)).full();
        if v > best.0 {
            best = (v, m);
        }
    }
    if best.0 == 0 {
        return Ok(None);
    }
    let m = best.1;
    let wit = lcs2_witness(seq.slice(i, m), seq.slice(m + 1, j));
    let mut positions: Vec<usize> = wit.offsets[0].iter().map(|o| o + i).collect();
    positions.extend(wit.offsets[1].iter().map(|o| o + m + 1));
    Ok(Some(SrsDecomposition { blocks: vec![Block::from_positions(seq, &positions, 2)] }))
}

/// A longest cubic subsequence of `S[i..j]` as a single exponent-3 block.
pub fn cube_witness(seq: &Sequence, i: usize, j: usize) -> Result<Option<SrsDecomposition>> {
    cube_witness_bounded(seq, i, j, None)
}

/// As [`cube_witness`]; when the optimal length is already known (from the
/// table) the cut search stops at the first cut pair reaching it.
pub(crate) fn cube_witness_bounded(
    seq: &Sequence,
    i: usize,
    j: usize,
    known_length: Option<usize>,
) -> Result<Option<SrsDecomposition>> {
    check_interval(seq, i, j)?;
    let target = known_length.map(|l| l / 3);
    let mut ws = Lcs3Workspace::new();
    let mut f = Vec::new();
    let mut best = (0, 0, 0);
    'search: for c1 in i..j {
        for c2 in c1 + 1..j {
            ws.run(seq.slice(i, c1), seq.slice(c1 + 1, c2), seq.slice(c2 + 1, j), &mut f);
            let v = *f.last().unwrap_or(&0);
            if v > best.0 {
                best = (v, c1, c2);
                if Some(v) == target {
                    break 'search;
                }
            }
        }
    }
    if best.0 == 0 {
        return Ok(None);
    }
    let (_, c1, c2) = best;
    let wit = lcs3_witness(seq.slice(i, c1), seq.slice(c1 + 1, c2), seq.slice(c2 + 1, j));
    let mut positions: Vec<usize> = wit.offsets[0].iter().map(|o| o + i).collect();
    positions.extend(wit.offsets[1].iter().map(|o| o + c1 + 1));
    positions.extend(wit.offsets[2].iter().map(|o| o + c2 + 1));
    Ok(Some(SrsDecomposition { blocks: vec![Block::from_positions(seq, &positions, 3)] }))
}

/// Checks the structural invariants shared by every pair of repeat tables:
/// parity of `Q2`, divisibility of `Q3` by 3, containment monotonicity, and
/// `Q2 >= (2/3) Q3`. Returns a description of the first failure.
pub fn verify_repeat_tables(q2: &IntervalTable<usize>, q3: &IntervalTable<usize>) -> std::result::Result<(), String> {
    let n = q2.n();
    if q3.n() != n {
        return Err(format!("table sizes differ: {} vs {}", n, q3.n()));
    }
    for i in 1..=n {
        for j in i..=n {
            let (a, b) = (q2.at(i, j), q3.at(i, j));
            if a % 2 != 0 {
                return Err(format!("Q2[{i},{j}] = {a} is odd"));
            }
            if b % 3 != 0 {
                return Err(format!("Q3[{i},{j}] = {b} is not a multiple of 3"));
            }
            if 3 * a < 2 * b {
                return Err(format!("Q2[{i},{j}] = {a} < 2/3 * Q3[{i},{j}] = {b}"));
            }
            // One-step containment implies the general case.
            if j > i {
                for t in [q2, q3] {
                    let v = t.at(i, j);
                    if t.at(i + 1, j) > v || t.at(i, j - 1) > v {
                        return Err(format!("{:?}[{i},{j}] not monotone under containment", t.kind()));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::validate_srs;

    fn seq(s: &str) -> Sequence {
        Sequence::raw(s).unwrap()
    }

    #[test]
    fn triangular_indexing_round_trips() {
        let mut t = IntervalTable::new(5, TableKind::Q2, 0usize);
        for i in 1..=5 {
            for j in i..=5 {
                t.set(i, j, 10 * i + j);
            }
        }
        for (i, j, &v) in t.iter() {
            assert_eq!(v, 10 * i + j);
        }
        assert_eq!(t.iter().count(), 15);
        assert_eq!(t.row(4), &[44, 45]);
    }

    #[test]
    fn worked_example_tables() {
        let s = seq("ACGAGCGCAGCGA");
        let q2 = square_table(&s);
        let q3 = cube_table(&s);
        assert_eq!(q2.at(1, 13), 10);
        assert_eq!(q3.at(1, 13), 9);
        verify_repeat_tables(&q2, &q3).unwrap();
    }

    #[test]
    fn tiny_tables() {
        let q2 = square_table(&seq("aa"));
        assert_eq!((q2.at(1, 1), q2.at(1, 2), q2.at(2, 2)), (0, 2, 0));
        assert_eq!(cube_table(&seq("aaa")).at(1, 3), 3);
        assert_eq!(cube_table(&seq("aa")).at(1, 2), 0);
        assert_eq!(square_table(&seq("")).n(), 0);
    }

    #[test]
    fn witnesses_match_tables() {
        let s = seq("ACGAGCGCAGCGA");
        let cube = cube_witness(&s, 1, 13).unwrap().unwrap();
        assert_eq!(cube.blocks[0].exponent, 3);
        assert_eq!(cube.total_length(), 9);
        assert!(validate_srs(&s, &cube, &[]).is_ok());
        // (CGA)^3 is another optimum; the traceback settles on (ACG)^3.
        assert_eq!(s.render_word(&cube.blocks[0].root), "ACG");
        let cga = SrsDecomposition {
            blocks: vec![Block::from_positions(&s, &[2, 3, 4, 6, 7, 9, 11, 12, 13], 3)],
        };
        assert_eq!(s.render_word(&cga.blocks[0].root), "CGA");
        assert!(validate_srs(&s, &cga, &[]).is_ok());

        let sq = square_witness(&s, 1, 13).unwrap().unwrap();
        assert_eq!(sq.total_length(), 10);
        assert_eq!(s.render_word(&sq.blocks[0].root), "CAGCG");
        assert!(validate_srs(&s, &sq, &[]).is_ok());
    }

    #[test]
    fn witness_none_and_bounds() {
        let s = seq("abcab");
        assert_eq!(square_witness(&s, 1, 3).unwrap(), None);
        assert_eq!(cube_witness(&s, 1, 5).unwrap(), None);
        assert!(square_witness(&s, 0, 2).is_err());
        assert!(cube_witness(&s, 3, 6).is_err());
        assert!(square_witness(&s, 4, 3).is_err());
    }

    #[test]
    fn parallel_matches_serial() {
        let s = seq("abcabbcacbabcabca");
        assert_eq!(square_table(&s), square_table_with(&s, Threads(4)));
        assert_eq!(cube_table(&s), cube_table_with(&s, Threads(4)));
    }
}

//! LSRS+(3) and FT(3): longest SRS covering every letter, when no letter
//! occurs more than three times. Interval DP in `O(n^4)`.
//!
//! `L[i,j]` is the length of a best SRS of `S[i..j]` that uses every letter
//! occurring at least twice in `S[i..j]` (the set `C[i,j]`), or `-1`. Cells
//! start from a single covering square or cube (`S2`/`S3`) and are improved
//! by concatenating two covering solutions of a split whose repeat sets add
//! up to `C[i,j]`.

use crate::error::{Error, Result};
use crate::seq::{merge_blocks, validate_srs, Block, Letter, OccurrenceIndex, Sequence, SrsDecomposition};
use crate::tables::{square_table_with, square_witness, IntervalTable, TableKind, Threads};

/// Marks a cell with no covering solution.
pub const INFEASIBLE: i64 = -1;

#[derive(Debug, Clone)]
pub struct Precheck {
    pub index: OccurrenceIndex,
    /// Letters occurring exactly once; any of them makes the instance infeasible.
    pub singletons: Vec<Letter>,
}

/// Rejects inputs with a letter occurring more than three times and reports
/// singleton letters.
pub fn precheck(seq: &Sequence) -> Result<Precheck> {
    let index = OccurrenceIndex::new(seq);
    if let Some(l) = seq.alphabet().letters().find(|&l| index.count(l) > 3) {
        return Err(Error::OccurrenceBound {
            letter: seq.alphabet().token(l).to_owned(),
            count: index.count(l),
        });
    }
    let singletons = index.letters_with_count(1);
    Ok(Precheck { index, singletons })
}

/// Letter sets per interval, each sorted by letter id.
#[derive(Debug, Clone)]
pub struct CoverageTables {
    /// Letters occurring at least twice.
    pub c: IntervalTable<Vec<Letter>>,
    /// `C[i,j]` if some letter occurs exactly twice, else empty.
    pub c2: IntervalTable<Vec<Letter>>,
    /// Letters occurring three times if no letter occurs exactly twice, else empty.
    pub c3: IntervalTable<Vec<Letter>>,
}

pub fn coverage_tables(seq: &Sequence) -> CoverageTables {
    let n = seq.len();
    let sigma = seq.alphabet().len();
    let mut c = IntervalTable::new(n, TableKind::C, Vec::new());
    let mut c2 = IntervalTable::new(n, TableKind::C2, Vec::new());
    let mut c3 = IntervalTable::new(n, TableKind::C3, Vec::new());
    let mut counts = vec![0usize; sigma];
    for i in 1..=n {
        counts.iter_mut().for_each(|x| *x = 0);
        let mut exactly_two = 0usize;
        for j in i..=n {
            let l = seq.at(j).index();
            counts[l] += 1;
            match counts[l] {
                2 => exactly_two += 1,
                3 => exactly_two -= 1,
                _ => {}
            }
            let repeated: Vec<Letter> = (0..sigma)
                .filter(|&k| counts[k] >= 2)
                .map(|k| Letter(k as u32))
                .collect();
            if exactly_two > 0 {
                c2.set(i, j, repeated.clone());
            } else {
                let triples = repeated.iter().copied().filter(|l| counts[l.index()] == 3).collect();
                c3.set(i, j, triples);
            }
            c.set(i, j, repeated);
        }
    }
    CoverageTables { c, c2, c3 }
}

/// Positions in `S[i..j]` holding a letter of `set`.
fn restrict(seq: &Sequence, i: usize, j: usize, set: &[Letter]) -> Vec<usize> {
    (i..=j).filter(|&p| set.binary_search(&seq.at(p)).is_ok()).collect()
}

/// The unique cube over `C3[i,j]`, if the restricted word splits into three
/// equal thirds.
fn c3_cube(seq: &Sequence, i: usize, j: usize, set: &[Letter]) -> Option<Vec<usize>> {
    let positions = restrict(seq, i, j, set);
    let third = set.len();
    debug_assert_eq!(positions.len(), 3 * third);
    let word = seq.spell(&positions);
    let equal = word[..third] == word[third..2 * third] && word[..third] == word[2 * third..];
    equal.then_some(positions)
}

/// `S3[i,j]`: `3|C3|` when the covering cube exists, else `2|C3|` when a
/// covering square exists (a square has length at most `2|C3|` here and
/// reaches it only by covering every letter), else `-1`. `-1` when `C3` is
/// empty.
pub fn s3_table(seq: &Sequence, cov: &CoverageTables, q2: &IntervalTable<usize>) -> IntervalTable<i64> {
    let n = seq.len();
    let mut s3 = IntervalTable::new(n, TableKind::S3, INFEASIBLE);
    for (i, j, set) in cov.c3.iter() {
        if set.is_empty() {
            continue;
        }
        let value = if c3_cube(seq, i, j, set).is_some() {
            3 * set.len()
        } else if q2.at(i, j) == 2 * set.len() {
            2 * set.len()
        } else {
            continue;
        };
        s3.set(i, j, value as i64);
    }
    s3
}

/// `S2[i,j]`: `2|C2|` when a square covering `C2[i,j]` exists, else `-1`.
pub fn s2_table(seq: &Sequence, cov: &CoverageTables, q2: &IntervalTable<usize>) -> IntervalTable<i64> {
    let mut s2 = IntervalTable::new(seq.len(), TableKind::S2, INFEASIBLE);
    for (i, j, set) in cov.c2.iter() {
        if !set.is_empty() && q2.at(i, j) == 2 * set.len() {
            s2.set(i, j, 2 * set.len() as i64);
        }
    }
    s2
}

/// How a cell of `L` obtained its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trace {
    Infeasible,
    /// The unique cube over `C3[i,j]`.
    S3Cube,
    /// A longest square, which covers `C3[i,j]`.
    S3Square,
    /// A longest square, which covers `C2[i,j]`.
    S2Square,
    /// `L[i,k] + L[k+1,j]`.
    Split(usize),
}

#[derive(Debug, Clone)]
pub struct FeasibilityTables {
    pub coverage: CoverageTables,
    pub s2: IntervalTable<i64>,
    pub s3: IntervalTable<i64>,
    pub l: IntervalTable<i64>,
    pub trace: IntervalTable<Trace>,
}

/// `C[i,j] == left ∪ right` for sorted sets. Panics if the parts overlap,
/// which cannot happen while every letter occurs at most three times.
fn is_disjoint_cover(whole: &[Letter], left: &[Letter], right: &[Letter]) -> bool {
    let (mut a, mut b) = (0, 0);
    let mut merged = Vec::with_capacity(left.len() + right.len());
    while a < left.len() || b < right.len() {
        let next = match (left.get(a), right.get(b)) {
            (Some(x), Some(y)) => {
                assert_ne!(x, y, "repeat sets of a split overlap");
                if x < y {
                    a += 1;
                    *x
                } else {
                    b += 1;
                    *y
                }
            }
            (Some(x), None) => {
                a += 1;
                *x
            }
            (None, Some(y)) => {
                b += 1;
                *y
            }
            (None, None) => unreachable!(),
        };
        merged.push(next);
    }
    merged == whole
}

/// Fills `S2`, `S3` and `L` bottom-up by interval length. Ties keep the
/// initial value; among splits the smallest `k` wins.
pub fn feasibility_tables(seq: &Sequence, threads: Threads) -> Result<FeasibilityTables> {
    precheck(seq)?;
    let n = seq.len();
    let q2 = square_table_with(seq, threads);
    let coverage = coverage_tables(seq);
    let s2 = s2_table(seq, &coverage, &q2);
    let s3 = s3_table(seq, &coverage, &q2);

    let mut l = IntervalTable::new(n, TableKind::L, INFEASIBLE);
    let mut trace = IntervalTable::new(n, TableKind::L, Trace::Infeasible);
    for len in 2..=n {
        for i in 1..=n + 1 - len {
            let j = i + len - 1;
            let (mut best, mut how) = if s3.at(i, j) > 0 {
                let cube = s3.at(i, j) == 3 * coverage.c3.get(i, j).len() as i64;
                (s3.at(i, j), if cube { Trace::S3Cube } else { Trace::S3Square })
            } else if s2.at(i, j) > 0 {
                (s2.at(i, j), Trace::S2Square)
            } else {
                (INFEASIBLE, Trace::Infeasible)
            };
            for k in i + 1..j {
                let (left, right) = (l.at(i, k), l.at(k + 1, j));
                if left > 0
                    && right > 0
                    && left + right > best
                    && is_disjoint_cover(coverage.c.get(i, j), coverage.c.get(i, k), coverage.c.get(k + 1, j))
                {
                    best = left + right;
                    how = Trace::Split(k);
                }
            }
            l.set(i, j, best);
            trace.set(i, j, how);
        }
    }
    Ok(FeasibilityTables { coverage, s2, s3, l, trace })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plus3Result {
    pub feasible: bool,
    /// Optimal length; 0 when infeasible.
    pub length: usize,
    pub decomposition: SrsDecomposition,
}

impl Plus3Result {
    fn infeasible() -> Self {
        Plus3Result { feasible: false, length: 0, decomposition: SrsDecomposition::empty() }
    }
}

pub fn lsrs_plus3(seq: &Sequence) -> Result<Plus3Result> {
    lsrs_plus3_with(seq, Threads::default())
}

pub fn lsrs_plus3_with(seq: &Sequence, threads: Threads) -> Result<Plus3Result> {
    let pre = precheck(seq)?;
    if seq.is_empty() {
        // The empty SRS covers the empty alphabet.
        return Ok(Plus3Result { feasible: true, length: 0, decomposition: SrsDecomposition::empty() });
    }
    if !pre.singletons.is_empty() {
        return Ok(Plus3Result::infeasible());
    }
    let tables = feasibility_tables(seq, threads)?;
    let n = seq.len();
    if n < 2 || tables.l.at(1, n) <= 0 {
        return Ok(Plus3Result::infeasible());
    }
    let mut blocks = Vec::new();
    collect_blocks(seq, &tables, 1, n, &mut blocks);
    let decomposition = merge_blocks(blocks);
    let length = tables.l.at(1, n) as usize;
    assert_eq!(decomposition.total_length(), length, "traceback length mismatch");
    let cover: Vec<Letter> = seq.alphabet().letters().collect();
    let report = validate_srs(seq, &decomposition, &cover);
    assert!(report.is_ok(), "LSRS+(3) witness failed validation: {report}");
    Ok(Plus3Result { feasible: true, length, decomposition })
}

fn collect_blocks(seq: &Sequence, t: &FeasibilityTables, i: usize, j: usize, out: &mut Vec<Block>) {
    match t.trace.at(i, j) {
        Trace::Split(k) => {
            collect_blocks(seq, t, i, k, out);
            collect_blocks(seq, t, k + 1, j, out);
        }
        Trace::S3Cube => {
            let positions = c3_cube(seq, i, j, t.coverage.c3.get(i, j)).expect("cube recorded in trace");
            out.push(Block::from_positions(seq, &positions, 3).into_primitive());
        }
        Trace::S3Square | Trace::S2Square => {
            let dec = square_witness(seq, i, j)
                .expect("interval in range")
                .expect("feasible square cell has a square");
            out.extend(dec.blocks.into_iter().map(Block::into_primitive));
        }
        Trace::Infeasible => unreachable!("feasible cell built from an infeasible one"),
    }
}

/// FT(3): does some SRS use every letter?
pub fn ft3(seq: &Sequence) -> Result<bool> {
    Ok(lsrs_plus3(seq)?.feasible)
}

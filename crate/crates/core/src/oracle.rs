//! Brute-force references. None of these share DP code with the solvers:
//! the tables enumerate every cut of every interval with naive LCS, and the
//! LSRS oracles enumerate every subsequence.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::seq::{srs_partitionable, Letter, Sequence};
use crate::tables::{IntervalTable, TableKind};

/// Largest `n` each oracle accepts, checked before any search starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub square_table: usize,
    pub cube_table: usize,
    pub lsrs: usize,
    pub lsrs_plus: usize,
    pub alphabet: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { square_table: 16, cube_table: 14, lsrs: 16, lsrs_plus: 14, alphabet: 26 }
    }
}

impl OracleBudget {
    fn check(&self, what: &'static str, seq: &Sequence, max: usize) -> Result<()> {
        if seq.len() > max {
            return Err(Error::Budget { what, n: seq.len(), max });
        }
        if seq.alphabet().len() > self.alphabet {
            return Err(Error::Budget { what: "oracle alphabet size", n: seq.alphabet().len(), max: self.alphabet });
        }
        Ok(())
    }
}

fn naive_lcs2(a: &[Letter], b: &[Letter]) -> usize {
    let mut t = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for x in 1..=a.len() {
        for y in 1..=b.len() {
            t[x][y] = if a[x - 1] == b[y - 1] {
                t[x - 1][y - 1] + 1
            } else {
                t[x - 1][y].max(t[x][y - 1])
            };
        }
    }
    t[a.len()][b.len()]
}

fn naive_lcs3(a: &[Letter], b: &[Letter], c: &[Letter]) -> usize {
    let mut t = vec![vec![vec![0usize; c.len() + 1]; b.len() + 1]; a.len() + 1];
    for x in 1..=a.len() {
        for y in 1..=b.len() {
            for z in 1..=c.len() {
                t[x][y][z] = if a[x - 1] == b[y - 1] && b[y - 1] == c[z - 1] {
                    t[x - 1][y - 1][z - 1] + 1
                } else {
                    t[x - 1][y][z].max(t[x][y - 1][z]).max(t[x][y][z - 1])
                };
            }
        }
    }
    t[a.len()][b.len()][c.len()]
}

pub fn oracle_square_table(seq: &Sequence, budget: &OracleBudget) -> Result<IntervalTable<usize>> {
    budget.check("oracle square table", seq, budget.square_table)?;
    let n = seq.len();
    let mut t = IntervalTable::new(n, TableKind::Q2, 0);
    for i in 1..=n {
        for j in i..=n {
            let best = (i..j)
                .map(|m| 2 * naive_lcs2(seq.slice(i, m), seq.slice(m + 1, j)))
                .max()
                .unwrap_or(0);
            t.set(i, j, best);
        }
    }
    Ok(t)
}

pub fn oracle_cube_table(seq: &Sequence, budget: &OracleBudget) -> Result<IntervalTable<usize>> {
    budget.check("oracle cube table", seq, budget.cube_table)?;
    let n = seq.len();
    let mut t = IntervalTable::new(n, TableKind::Q3, 0);
    for i in 1..=n {
        for j in i..=n {
            let mut best = 0;
            for c1 in i..j {
                for c2 in c1 + 1..j {
                    let v = naive_lcs3(seq.slice(i, c1), seq.slice(c1 + 1, c2), seq.slice(c2 + 1, j));
                    best = best.max(3 * v);
                }
            }
            t.set(i, j, best);
        }
    }
    Ok(t)
}

/// Enumerates every subsequence (bitmask order) and returns the longest
/// partitionable one satisfying `accept`, or `None` when nothing qualifies.
fn best_partitionable<F>(seq: &Sequence, accept: F) -> Option<usize>
where
    F: Fn(&[Letter]) -> bool,
{
    let letters = seq.letters();
    let n = letters.len();
    let mut memo: HashMap<Vec<Letter>, bool> = HashMap::new();
    let mut best: Option<usize> = None;
    let mut word = Vec::with_capacity(n);
    for mask in 0u64..(1u64 << n) {
        let len = mask.count_ones() as usize;
        if best.is_some_and(|b| b >= len) {
            continue;
        }
        word.clear();
        word.extend((0..n).filter(|&p| mask >> p & 1 == 1).map(|p| letters[p]));
        if !accept(&word) {
            continue;
        }
        let ok = match memo.get(&word) {
            Some(&ok) => ok,
            None => {
                let ok = srs_partitionable(&word);
                memo.insert(word.clone(), ok);
                ok
            }
        };
        if ok {
            best = Some(len);
        }
    }
    best
}

/// Length of a longest subsequence whose word splits into proper powers.
pub fn oracle_lsrs(seq: &Sequence, budget: &OracleBudget) -> Result<usize> {
    budget.check("oracle lsrs", seq, budget.lsrs)?;
    Ok(best_partitionable(seq, |_| true).unwrap_or(0))
}

/// As [`oracle_lsrs`], restricted to subsequences using every letter.
/// `None` means infeasible.
pub fn oracle_lsrs_plus(seq: &Sequence, budget: &OracleBudget) -> Result<Option<usize>> {
    budget.check("oracle lsrs+", seq, budget.lsrs_plus)?;
    let sigma = seq.alphabet().len();
    Ok(best_partitionable(seq, |w| {
        let mut present = vec![false; sigma];
        let mut distinct = 0;
        for l in w {
            if !present[l.index()] {
                present[l.index()] = true;
                distinct += 1;
            }
        }
        distinct == sigma
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        Sequence::raw(s).unwrap()
    }

    #[test]
    fn table_oracles() {
        let b = OracleBudget::default();
        let s = seq("ACGAGCGCAGCGA");
        assert_eq!(oracle_cube_table(&s, &b).unwrap().at(1, 13), 9);
        assert_eq!(oracle_square_table(&s, &b).unwrap().at(1, 13), 10);
        assert_eq!(oracle_square_table(&seq("aa"), &b).unwrap().at(1, 2), 2);
    }

    #[test]
    fn lsrs_oracle_examples() {
        let b = OracleBudget::default();
        // (ACT)^2 (TAG)^2 at positions 1-11,13 beats (AC)^2 (TAG)^2.
        assert_eq!(oracle_lsrs(&seq("ACTACTTAGTACGT"), &b).unwrap(), 12);
        assert_eq!(oracle_lsrs(&seq("a"), &b).unwrap(), 0);
        assert_eq!(oracle_lsrs(&seq("abab"), &b).unwrap(), 4);
    }

    #[test]
    fn lsrs_plus_oracle_examples() {
        let b = OracleBudget::default();
        assert_eq!(oracle_lsrs_plus(&seq("ababbcacc"), &b).unwrap(), Some(7));
        assert_eq!(oracle_lsrs_plus(&seq("ab"), &b).unwrap(), None);
        assert_eq!(oracle_lsrs_plus(&seq("abacbabcc"), &b).unwrap(), Some(8));
        assert_eq!(oracle_lsrs_plus(&seq(""), &b).unwrap(), Some(0));
    }

    #[test]
    fn budgets_are_enforced() {
        let b = OracleBudget::default();
        let long = seq(&"ab".repeat(9));
        assert!(matches!(oracle_lsrs(&long, &b), Err(Error::Budget { .. })));
        assert!(matches!(oracle_cube_table(&long, &b), Err(Error::Budget { .. })));
        assert!(oracle_square_table(&seq(&"ab".repeat(8)), &b).is_ok());
    }
}

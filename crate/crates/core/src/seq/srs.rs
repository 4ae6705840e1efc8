use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{power_root, Letter, Sequence};

/// One SR-block `root^exponent`, with the source positions of every copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub root: Vec<Letter>,
    pub exponent: usize,
    /// `exponent` lists of 1-based positions, each spelling `root`.
    pub copies: Vec<Vec<usize>>,
}

impl Block {
    /// Builds a block from the concatenated positions of `exponent` copies.
    pub fn from_positions(seq: &Sequence, positions: &[usize], exponent: usize) -> Self {
        assert!(exponent > 0 && positions.len().is_multiple_of(exponent));
        let width = positions.len() / exponent;
        let copies: Vec<Vec<usize>> = positions.chunks(width).map(<[usize]>::to_vec).collect();
        let root = seq.spell(&copies[0]);
        Block { root, exponent, copies }
    }

    pub fn len(&self) -> usize {
        self.exponent * self.root.len()
    }

    pub fn is_empty(&self) -> bool {
        self.root.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.copies.iter().flatten().copied()
    }

    /// Rewrites `(r^k)^e` as `r^(k·e)` with `r` primitive, so that equal
    /// repeats meet as equal roots when blocks are merged.
    pub fn into_primitive(self) -> Block {
        let pr = power_root(&self.root);
        if pr.exponent == 1 {
            return self;
        }
        let width = pr.root.len();
        let copies = self
            .copies
            .iter()
            .flat_map(|c| c.chunks(width).map(<[usize]>::to_vec))
            .collect();
        Block { root: pr.root, exponent: self.exponent * pr.exponent, copies }
    }
}

/// An SRS `x_1^{d_1} ... x_k^{d_k}` as an ordered list of blocks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrsDecomposition {
    pub blocks: Vec<Block>,
}

impl SrsDecomposition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn total_length(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(Block::positions).collect()
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        self.blocks.iter().flat_map(|b| b.root.iter().copied()).collect()
    }

    /// The subsequence spelled out, e.g. `(AG)^2(CG)^3` as `AGAGCGCGCG`.
    pub fn word(&self) -> Vec<Letter> {
        self.blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(&b.root, b.exponent).flatten().copied())
            .collect()
    }

    /// Compact rendering such as `(AG)^2(CG)^3`.
    pub fn render(&self, seq: &Sequence) -> String {
        self.blocks
            .iter()
            .map(|b| format!("({})^{}", seq.render_word(&b.root), b.exponent))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyRoot { block: usize },
    ExponentTooSmall { block: usize, exponent: usize },
    CopyCount { block: usize, expected: usize, found: usize },
    CopySpelling { block: usize, copy: usize },
    PositionOutOfRange { position: usize },
    NotIncreasing { position: usize },
    AdjacentEqualRoots { block: usize },
    MissingLetter { letter: Letter },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyRoot { block } => write!(f, "block {block}: empty root"),
            Violation::ExponentTooSmall { block, exponent } => {
                write!(f, "block {block}: exponent<2 (got {exponent})")
            }
            Violation::CopyCount { block, expected, found } => {
                write!(f, "block {block}: {found} copies listed, exponent is {expected}")
            }
            Violation::CopySpelling { block, copy } => {
                write!(f, "block {block}: copy {copy} does not spell the root")
            }
            Violation::PositionOutOfRange { position } => {
                write!(f, "position {position} out of range")
            }
            Violation::NotIncreasing { position } => {
                write!(f, "positions not strictly increasing at {position}")
            }
            Violation::AdjacentEqualRoots { block } => {
                write!(f, "blocks {} and {block}: adjacent equal roots", block - 1)
            }
            Violation::MissingLetter { letter } => {
                write!(f, "letter #{} not covered", letter.0)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        let msgs: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        f.write_str(&msgs.join("; "))
    }
}

/// Checks `dec` against `seq`: every copy spells its root, the global
/// position list is strictly increasing, exponents are at least 2, adjacent
/// roots differ, and every letter of `require_cover` is used.
pub fn validate_srs(seq: &Sequence, dec: &SrsDecomposition, require_cover: &[Letter]) -> ValidationReport {
    let mut violations = Vec::new();
    for (b, block) in dec.blocks.iter().enumerate() {
        if block.root.is_empty() {
            violations.push(Violation::EmptyRoot { block: b });
        }
        if block.exponent < 2 {
            violations.push(Violation::ExponentTooSmall { block: b, exponent: block.exponent });
        }
        if block.copies.len() != block.exponent {
            violations.push(Violation::CopyCount {
                block: b,
                expected: block.exponent,
                found: block.copies.len(),
            });
        }
        for (c, copy) in block.copies.iter().enumerate() {
            let spelled_ok = copy.len() == block.root.len()
                && copy
                    .iter()
                    .zip(&block.root)
                    .all(|(&p, &l)| (1..=seq.len()).contains(&p) && seq.at(p) == l);
            if !spelled_ok {
                violations.push(Violation::CopySpelling { block: b, copy: c });
            }
        }
        if b > 0 && dec.blocks[b - 1].root == block.root {
            violations.push(Violation::AdjacentEqualRoots { block: b });
        }
    }
    let mut prev = 0;
    for p in dec.positions() {
        if p == 0 || p > seq.len() {
            violations.push(Violation::PositionOutOfRange { position: p });
        } else if p <= prev {
            violations.push(Violation::NotIncreasing { position: p });
        }
        prev = p;
    }
    let used = dec.letters();
    for &l in require_cover {
        if !used.contains(&l) {
            violations.push(Violation::MissingLetter { letter: l });
        }
    }
    ValidationReport { violations }
}

/// Merges adjacent blocks with equal roots, adding exponents.
pub fn merge_blocks(blocks: Vec<Block>) -> SrsDecomposition {
    let mut out: Vec<Block> = Vec::with_capacity(blocks.len());
    for block in blocks {
        match out.last_mut() {
            Some(last) if last.root == block.root => {
                last.exponent += block.exponent;
                last.copies.extend(block.copies);
            }
            _ => out.push(block),
        }
    }
    SrsDecomposition { blocks: out }
}

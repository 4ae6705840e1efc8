//! Sequences over an interned alphabet, plus the definitional machinery of
//! subsequence-repeated subsequences (SRS).
//!
//! Positions are 1-based throughout: `S[i..j]` is `seq.slice(i, j)`.

mod power;
mod srs;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use power::{power_root, split_exponent, srs_partitionable, PowerRoot};
pub use srs::{merge_blocks, validate_srs, Block, SrsDecomposition, ValidationReport, Violation};

/// Interned letter id. Comparing two letters is a `u32` comparison no matter
/// how long the display token is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParseMode {
    /// Every character is a letter.
    Raw,
    /// Whitespace-separated tokens are letters.
    Tokens,
}

/// Bijection between letter ids and display tokens, in first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, token: &str) -> Letter {
        if let Some(&l) = self.index.get(token) {
            return l;
        }
        let l = Letter(self.tokens.len() as u32);
        self.tokens.push(token.to_owned());
        self.index.insert(token.to_owned(), l);
        l
    }

    pub fn get(&self, token: &str) -> Option<Letter> {
        self.index.get(token).copied()
    }

    pub fn token(&self, l: Letter) -> &str {
        &self.tokens[l.index()]
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.tokens.len() as u32).map(Letter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    letters: Vec<Letter>,
    alphabet: Alphabet,
    mode: ParseMode,
}

impl Sequence {
    /// Builds a sequence from display tokens (one token per letter).
    pub fn from_tokens<I, T>(tokens: I, mode: ParseMode) -> Self
    where
        I: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        let mut alphabet = Alphabet::new();
        let letters = tokens.into_iter().map(|t| alphabet.intern(t.as_ref())).collect();
        Sequence { letters, alphabet, mode }
    }

    /// Shorthand for `parse_sequence(text, ParseMode::Raw)`.
    pub fn raw(text: &str) -> Result<Self> {
        parse_sequence(text, ParseMode::Raw)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn mode(&self) -> ParseMode {
        self.mode
    }

    /// Letter at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> Letter {
        self.letters[pos - 1]
    }

    /// `S[i..j]`, 1-based and inclusive. Empty when `j < i`.
    pub fn slice(&self, i: usize, j: usize) -> &[Letter] {
        if j < i {
            &[]
        } else {
            &self.letters[i - 1..j]
        }
    }

    pub fn render(&self) -> String {
        self.render_word(&self.letters)
    }

    pub fn render_word(&self, word: &[Letter]) -> String {
        let sep = match self.mode {
            ParseMode::Raw => "",
            ParseMode::Tokens => " ",
        };
        word.iter()
            .map(|&l| self.alphabet.token(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn tokens_of(&self, word: &[Letter]) -> Vec<String> {
        word.iter().map(|&l| self.alphabet.token(l).to_owned()).collect()
    }

    /// Letters spelled by the given 1-based positions.
    pub fn spell(&self, positions: &[usize]) -> Vec<Letter> {
        positions.iter().map(|&p| self.at(p)).collect()
    }
}

/// Parses one line of input. Raw mode interns every character; tokens mode
/// interns every maximal run of non-whitespace characters.
pub fn parse_sequence(text: &str, mode: ParseMode) -> Result<Sequence> {
    let mut alphabet = Alphabet::new();
    let mut letters = Vec::new();
    match mode {
        ParseMode::Raw => {
            let mut buf = [0u8; 4];
            for (offset, c) in text.char_indices() {
                if c.is_control() {
                    return Err(Error::Parse {
                        offset,
                        reason: format!("control character {c:?} in raw sequence"),
                    });
                }
                letters.push(alphabet.intern(c.encode_utf8(&mut buf)));
            }
        }
        ParseMode::Tokens => {
            let mut start = None;
            for (offset, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
                if c.is_whitespace() {
                    if let Some(s) = start.take() {
                        letters.push(alphabet.intern(&text[s..offset]));
                    }
                } else if c.is_control() {
                    return Err(Error::Parse {
                        offset,
                        reason: format!("control character {c:?} inside token"),
                    });
                } else if start.is_none() {
                    start = Some(offset);
                }
            }
        }
    }
    Ok(Sequence { letters, alphabet, mode })
}

/// Sorted occurrence positions of every letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceIndex {
    positions: Vec<Vec<usize>>,
    max_occurrence: usize,
}

impl OccurrenceIndex {
    pub fn new(seq: &Sequence) -> Self {
        let mut positions = vec![Vec::new(); seq.alphabet().len()];
        for (p, l) in seq.letters().iter().enumerate() {
            positions[l.index()].push(p + 1);
        }
        let max_occurrence = positions.iter().map(Vec::len).max().unwrap_or(0);
        OccurrenceIndex { positions, max_occurrence }
    }

    pub fn positions(&self, l: Letter) -> &[usize] {
        &self.positions[l.index()]
    }

    pub fn count(&self, l: Letter) -> usize {
        self.positions[l.index()].len()
    }

    /// Occurrences of `l` inside `S[i..j]`.
    pub fn count_in(&self, l: Letter, i: usize, j: usize) -> usize {
        let ps = &self.positions[l.index()];
        let lo = ps.partition_point(|&p| p < i);
        let hi = ps.partition_point(|&p| p <= j);
        hi.saturating_sub(lo)
    }

    /// The paper's `d`: the largest occurrence count of any letter.
    pub fn max_occurrence(&self) -> usize {
        self.max_occurrence
    }

    pub fn letters_with_count(&self, count: usize) -> Vec<Letter> {
        (0..self.positions.len())
            .filter(|&k| self.positions[k].len() == count)
            .map(|k| Letter(k as u32))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_parse_interns_in_first_appearance_order() {
        let s = parse_sequence("ACGT", ParseMode::Raw).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.alphabet().len(), 4);
        assert_eq!(s.alphabet().token(Letter(2)), "G");
        assert_eq!(s.render(), "ACGT");
    }

    #[test]
    fn token_parse() {
        let s = parse_sequence("F1 F1 g1", ParseMode::Tokens).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.alphabet().len(), 2);
        assert_eq!(s.at(1), s.at(2));
        assert_ne!(s.at(2), s.at(3));
        assert_eq!(s.render(), "F1 F1 g1");
    }

    #[test]
    fn token_parse_normalizes_whitespace() {
        let s = parse_sequence("  F-1\tF-2\n\nF-1 ", ParseMode::Tokens).unwrap();
        assert_eq!(s.render(), "F-1 F-2 F-1");
    }

    #[test]
    fn empty_input() {
        let s = parse_sequence("", ParseMode::Raw).unwrap();
        assert_eq!(s.len(), 0);
        assert!(s.alphabet().is_empty());
        assert_eq!(parse_sequence("   ", ParseMode::Tokens).unwrap().len(), 0);
    }

    #[test]
    fn control_character_reports_offset() {
        let err = parse_sequence("ab\u{7}c", ParseMode::Raw).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 2, .. }), "{err}");
        let err = parse_sequence("ab c\u{1}d", ParseMode::Tokens).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 4, .. }), "{err}");
    }

    #[test]
    fn slices_are_one_based() {
        let s = Sequence::raw("abcde").unwrap();
        assert_eq!(s.render_word(s.slice(2, 4)), "bcd");
        assert!(s.slice(3, 2).is_empty());
    }

    #[test]
    fn occurrence_index_counts() {
        let s = Sequence::raw("abacbabcc").unwrap();
        let idx = OccurrenceIndex::new(&s);
        let a = s.alphabet().get("a").unwrap();
        assert_eq!(idx.positions(a), &[1, 3, 6]);
        assert_eq!(idx.count_in(a, 2, 6), 2);
        assert_eq!(idx.count_in(a, 7, 9), 0);
        assert_eq!(idx.max_occurrence(), 3);
        let total: usize = s.alphabet().letters().map(|l| idx.count(l)).sum();
        assert_eq!(total, s.len());
    }
}

//! Subsequence repeats: all-substrings longest square and cubic subsequence
//! tables, the longest subsequence-repeated subsequence (LSRS), the
//! constrained LSRS+(3)/FT(3) solver, generators for FT(4) hardness
//! instances, and brute-force oracles for all of them.

pub mod bench;
pub mod error;
pub mod hardness;
pub mod lcs;
pub mod lsrs;
pub mod oracle;
pub mod plus3;
pub mod seq;
pub mod tables;

pub use error::{Error, Result};
pub use lsrs::{lsrs, lsrs_with, LsrsResult};
pub use plus3::{ft3, lsrs_plus3, lsrs_plus3_with, Plus3Result};
pub use seq::{parse_sequence, Letter, ParseMode, Sequence, SrsDecomposition};
pub use tables::{cube_table, square_table, IntervalTable, Threads};

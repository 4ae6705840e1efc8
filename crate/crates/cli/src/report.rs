//! Serializable views. Positions are 1-based; roots are display tokens.

use serde::Serialize;
use srs_core::seq::{validate_srs, Letter, Sequence, SrsDecomposition};

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct BlockView {
    pub root: Vec<String>,
    pub exponent: usize,
    pub copies: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct DecompositionView {
    pub total_length: usize,
    pub rendered: String,
    pub blocks: Vec<BlockView>,
}

/// Re-validates `dec` against `seq` before it is printed. A failure is an
/// internal invariant violation.
pub fn checked_view(seq: &Sequence, dec: &SrsDecomposition, cover: &[Letter]) -> Result<DecompositionView, CliError> {
    let report = validate_srs(seq, dec, cover);
    if !report.is_ok() {
        return Err(CliError::Internal(format!(
            "witness {} failed validation: {report}",
            dec.render(seq)
        )));
    }
    Ok(DecompositionView {
        total_length: dec.total_length(),
        rendered: dec.render(seq),
        blocks: dec
            .blocks
            .iter()
            .map(|b| BlockView { root: seq.tokens_of(&b.root), exponent: b.exponent, copies: b.copies.clone() })
            .collect(),
    })
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub length: usize,
    pub alphabet_size: usize,
    /// Largest occurrence count of any letter.
    pub max_occurrence: usize,
}

#[derive(Debug, Serialize)]
pub struct RepeatSection {
    pub length: usize,
    pub witness: Option<DecompositionView>,
}

#[derive(Debug, Serialize)]
pub struct LsrsSection {
    pub length: usize,
    pub decomposition: DecompositionView,
}

#[derive(Debug, Serialize)]
pub struct Plus3Section {
    pub feasible: bool,
    pub length: usize,
    pub decomposition: Option<DecompositionView>,
}

#[derive(Debug, Default, Serialize)]
pub struct Timing {
    pub square_table: f64,
    pub cube_table: f64,
    pub lsrs: f64,
    pub witnesses: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lsrs_plus3: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub input: InputDigest,
    pub square: RepeatSection,
    pub cube: RepeatSection,
    pub lsrs: LsrsSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lsrs_plus3: Option<Plus3Section>,
    /// Wall times in milliseconds; the only run-dependent part of the report.
    pub timing_ms: Timing,
}

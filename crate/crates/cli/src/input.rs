use std::fs;
use std::io::Read;

use srs_core::{parse_sequence, ParseMode, Sequence};

use crate::CliError;

/// Reads `path` (or stdin for `None` / `-`).
pub fn read_text(path: Option<&str>) -> Result<String, CliError> {
    match path {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
            Ok(buf)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::Input(format!("reading {p}: {e}"))),
    }
}

/// Raw mode accepts FASTA-style input: `>` header lines are skipped and the
/// remaining lines are concatenated. Tokens mode reads whitespace-separated
/// tokens from the whole text.
pub fn sequence_from_text(text: &str, tokens: bool) -> Result<Sequence, CliError> {
    let parsed = if tokens {
        parse_sequence(text, ParseMode::Tokens)
    } else {
        let body: String = text
            .lines()
            .filter(|l| !l.starts_with('>'))
            .map(str::trim_end)
            .collect();
        parse_sequence(&body, ParseMode::Raw)
    };
    parsed.map_err(|e| CliError::Input(e.to_string()))
}

pub fn load_sequence(inline: Option<&str>, path: Option<&str>, tokens: bool) -> Result<Sequence, CliError> {
    let text = match inline {
        Some(s) => s.to_owned(),
        None => read_text(path)?,
    };
    sequence_from_text(&text, tokens)
}

//! `srs`: longest square/cubic subsequence tables, LSRS and LSRS+(3)
//! solving, FT(4) instance generation, and brute-force oracles.

mod input;
mod report;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use srs_core::bench::{bench, BenchAlg};
use srs_core::hardness::{
    alphabet_of, coloring_to_sat, extract_witness, sat_to_string, Assignment, Graph, ReductionInstance, Role,
    SatInstance,
};
use srs_core::lsrs::lsrs_from_tables;
use srs_core::oracle::{oracle_cube_table, oracle_lsrs, oracle_lsrs_plus, oracle_square_table, OracleBudget};
use srs_core::plus3::lsrs_plus3_with;
use srs_core::seq::OccurrenceIndex;
use srs_core::tables::{cube_table_with, cube_witness, square_table_with, square_witness, IntervalTable, Threads};
use srs_core::{Error, Sequence};

use input::{load_sequence, read_text};
use report::{checked_view, AnalysisReport, InputDigest, LsrsSection, Plus3Section, RepeatSection, Timing};

#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Input(String),
    /// Exit 3.
    Guard(String),
    /// Exit 4.
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "srs", version, about = "Subsequence-repeated subsequences: tables, solvers, reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SeqInput {
    /// Input file (stdin when omitted or `-`).
    input: Option<String>,
    /// Sequence given inline instead of a file.
    #[arg(short, long, conflicts_with = "input")]
    seq: Option<String>,
    /// Whitespace-separated tokens instead of raw characters.
    #[arg(long)]
    tokens: bool,
}

#[derive(clap::Args)]
struct Guarded {
    /// Refuse the O(n^6) cube stage above this length.
    #[arg(long, default_value_t = 64)]
    max_n: usize,
    /// Worker threads for table construction.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Square, cube, LSRS and (when d <= 3) LSRS+(3) for one sequence.
    Analyze {
        #[command(flatten)]
        input: SeqInput,
        #[command(flatten)]
        guard: Guarded,
    },
    /// Dump the all-substrings Q2 or Q3 table.
    Tables {
        #[command(flatten)]
        input: SeqInput,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        guard: Guarded,
    },
    /// Generate hardness instances: graph -> SAT -> string.
    Reduce {
        #[arg(long, value_enum)]
        from: ReduceFrom,
        #[arg(long, value_enum)]
        to: ReduceTo,
        /// Graph text (`|V| |E|` then `u v` lines) or SAT JSON; stdin when omitted.
        input: Option<String>,
        /// Coloring file (one color in 1..=3 per vertex); emits and validates the SRS witness.
        #[arg(long)]
        witness: Option<String>,
        /// Also write the pieces as files into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Brute-force reference values.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        #[command(flatten)]
        input: SeqInput,
    },
    /// Empirical scaling on seeded random inputs.
    Bench {
        #[arg(long, value_enum)]
        alg: AlgArg,
        #[arg(long, value_delimiter = ',', default_values_t = vec![8, 16, 32])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Minimum accumulated time per size, in milliseconds.
        #[arg(long, default_value_t = 200)]
        min_ms: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Q2,
    Q3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReduceFrom {
    Coloring,
    Sat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReduceTo {
    Sat,
    String,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Q2,
    Q3,
    Lsrs,
    LsrsPlus,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Q2,
    Q3,
    Lsrs,
    Plus3,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(cli.command))
        .unwrap_or_else(|_| Err(CliError::Internal("solver panicked; see message above".into())));
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = match &e {
                CliError::Input(m) => format!("input error: {m}"),
                CliError::Guard(m) => format!("guard: {m}"),
                CliError::Internal(m) => format!("internal error: {m}"),
            };
            eprintln!("srs: {msg}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Analyze { input, guard } => {
            let seq = load_sequence(input.seq.as_deref(), input.input.as_deref(), input.tokens)?;
            analyze(&seq, &guard).and_then(|r| to_json(&r))
        }
        Command::Tables { input, which, format, guard } => {
            let seq = load_sequence(input.seq.as_deref(), input.input.as_deref(), input.tokens)?;
            let table = match which {
                Which::Q2 => square_table_with(&seq, Threads(guard.threads)),
                Which::Q3 => {
                    check_guard(&seq, guard.max_n)?;
                    cube_table_with(&seq, Threads(guard.threads))
                }
            };
            match format {
                Format::Json => table_json(&table, which),
                Format::Csv => Ok(table_csv(&table)),
            }
        }
        Command::Reduce { from, to, input, witness, out_dir } => reduce(from, to, input.as_deref(), witness.as_deref(), out_dir),
        Command::Oracle { kind, input } => {
            let seq = load_sequence(input.seq.as_deref(), input.input.as_deref(), input.tokens)?;
            oracle(kind, &seq)
        }
        Command::Bench { alg, sizes, seed, threads, min_ms } => {
            let alg = match alg {
                AlgArg::Q2 => BenchAlg::Q2,
                AlgArg::Q3 => BenchAlg::Q3,
                AlgArg::Lsrs => BenchAlg::Lsrs,
                AlgArg::Plus3 => BenchAlg::Plus3,
            };
            if sizes.len() < 2 || sizes.iter().any(|&n| n < 2) {
                return Err(CliError::Input("--sizes needs at least two sizes, each >= 2".into()));
            }
            let report = bench(alg, &sizes, seed, Threads(threads), Duration::from_millis(min_ms))?;
            to_json(&report)
        }
    }
}

fn check_guard(seq: &Sequence, max_n: usize) -> Result<(), CliError> {
    if seq.len() > max_n {
        return Err(CliError::Guard(format!(
            "n = {} exceeds --max-n {max_n} for the O(n^6) cube stage; raise --max-n to override",
            seq.len()
        )));
    }
    Ok(())
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn analyze(seq: &Sequence, guard: &Guarded) -> Result<AnalysisReport, CliError> {
    check_guard(seq, guard.max_n)?;
    let threads = Threads(guard.threads);
    let n = seq.len();
    let index = OccurrenceIndex::new(seq);
    let mut timing = Timing::default();

    let t = Instant::now();
    let q2 = square_table_with(seq, threads);
    timing.square_table = millis(t);
    let t = Instant::now();
    let q3 = cube_table_with(seq, threads);
    timing.cube_table = millis(t);
    let t = Instant::now();
    let lsrs = lsrs_from_tables(seq, &q2, &q3);
    timing.lsrs = millis(t);

    let t = Instant::now();
    let (sq_len, cube_len) = if n == 0 { (0, 0) } else { (q2.at(1, n), q3.at(1, n)) };
    let repeat = |len: usize, wit: Option<srs_core::SrsDecomposition>| -> Result<RepeatSection, CliError> {
        let witness = wit.map(|d| checked_view(seq, &d, &[])).transpose()?;
        if witness.as_ref().map_or(0, |w| w.total_length) != len {
            return Err(CliError::Internal(format!("witness length differs from table value {len}")));
        }
        Ok(RepeatSection { length: len, witness })
    };
    let (square, cube) = if n == 0 {
        (repeat(0, None)?, repeat(0, None)?)
    } else {
        (repeat(sq_len, square_witness(seq, 1, n)?)?, repeat(cube_len, cube_witness(seq, 1, n)?)?)
    };
    timing.witnesses = millis(t);

    let lsrs_section = LsrsSection { length: lsrs.length, decomposition: checked_view(seq, &lsrs.decomposition, &[])? };
    if lsrs_section.decomposition.total_length != lsrs.length {
        return Err(CliError::Internal("LSRS witness length mismatch".into()));
    }

    let lsrs_plus3 = if index.max_occurrence() <= 3 {
        let t = Instant::now();
        let r = lsrs_plus3_with(seq, threads)?;
        timing.lsrs_plus3 = Some(millis(t));
        let cover: Vec<_> = seq.alphabet().letters().collect();
        let decomposition = if r.feasible { Some(checked_view(seq, &r.decomposition, &cover)?) } else { None };
        Some(Plus3Section { feasible: r.feasible, length: r.length, decomposition })
    } else {
        None
    };

    Ok(AnalysisReport {
        input: InputDigest { length: n, alphabet_size: seq.alphabet().len(), max_occurrence: index.max_occurrence() },
        square,
        cube,
        lsrs: lsrs_section,
        lsrs_plus3,
        timing_ms: timing,
    })
}

#[derive(Serialize)]
struct TableDump {
    table: &'static str,
    n: usize,
    /// `[i, j, value]` triples, `i` ascending then `j` ascending.
    cells: Vec<[usize; 3]>,
}

fn table_json(table: &IntervalTable<usize>, which: Which) -> Result<String, CliError> {
    let dump = TableDump {
        table: match which {
            Which::Q2 => "q2",
            Which::Q3 => "q3",
        },
        n: table.n(),
        cells: table.iter().map(|(i, j, &v)| [i, j, v]).collect(),
    };
    to_json(&dump)
}

/// Full `n x n` grid; cells with `j < i` are blank.
fn table_csv(table: &IntervalTable<usize>) -> String {
    let n = table.n();
    let mut out = String::from("i\\j");
    for j in 1..=n {
        let _ = write!(out, ",{j}");
    }
    out.push('\n');
    for i in 1..=n {
        let _ = write!(out, "{i}");
        for j in 1..=n {
            if j < i {
                out.push(',');
            } else {
                let _ = write!(out, ",{}", table.at(i, j));
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct LegendEntry {
    token: String,
    #[serde(flatten)]
    role: Role,
}

#[derive(Serialize)]
struct StringInstance {
    length: usize,
    /// Space-separated tokens; parse with `--tokens`.
    tokens: String,
    legend: Vec<LegendEntry>,
}

#[derive(Serialize)]
struct WitnessSection {
    coloring: Vec<usize>,
    validation: String,
    covers_alphabet: bool,
    decomposition: report::DecompositionView,
}

#[derive(Serialize)]
struct ReduceOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    sat: Option<SatInstance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimacs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    string: Option<StringInstance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessSection>,
}

fn parse_coloring(text: &str) -> Result<Vec<usize>, CliError> {
    text.split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(c @ 1..=3) => Ok(c),
            _ => Err(CliError::Input(format!("coloring entries must be 1, 2 or 3, found {t:?}"))),
        })
        .collect()
}

fn reduce(
    from: ReduceFrom,
    to: ReduceTo,
    input: Option<&str>,
    witness: Option<&str>,
    out_dir: Option<PathBuf>,
) -> Result<String, CliError> {
    if from == ReduceFrom::Sat && to == ReduceTo::Sat {
        return Err(CliError::Input("--from sat --to sat is not a reduction".into()));
    }
    let text = read_text(input)?;
    let sat = match from {
        ReduceFrom::Coloring => coloring_to_sat(&Graph::parse(&text)?),
        ReduceFrom::Sat => {
            let f: SatInstance =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("SAT document: {e}")))?;
            f.check()?;
            f
        }
    };
    let instance: Option<ReductionInstance> = match to {
        ReduceTo::String => Some(sat_to_string(&sat)?),
        ReduceTo::Sat => None,
    };

    let witness_section = match witness {
        None => None,
        Some(path) => {
            let coloring = parse_coloring(&read_text(Some(path))?)?;
            if 3 * coloring.len() != sat.variables {
                return Err(CliError::Input(format!(
                    "coloring has {} entries, instance has {} vertices",
                    coloring.len(),
                    sat.variables / 3
                )));
            }
            let assignment = Assignment::from_coloring(&coloring);
            if !assignment.is_valid(&sat) {
                return Err(CliError::Input("coloring is not a proper 3-coloring".into()));
            }
            let r = match &instance {
                Some(r) => r.clone(),
                None => sat_to_string(&sat)?,
            };
            let dec = extract_witness(&sat, &assignment, &r)?;
            let cover = alphabet_of(&r);
            let view = checked_view(&r.h, &dec, &cover)?;
            Some(WitnessSection { coloring, validation: "ok".into(), covers_alphabet: true, decomposition: view })
        }
    };

    let string = instance.as_ref().map(|r| StringInstance {
        length: r.h.len(),
        tokens: r.h.render(),
        legend: r.legend.iter().map(|(token, role)| LegendEntry { token: token.clone(), role: *role }).collect(),
    });
    let output = ReduceOutput {
        dimacs: (to == ReduceTo::Sat).then(|| sat.to_dimacs()),
        sat: (to == ReduceTo::Sat).then_some(sat),
        string,
        witness: witness_section,
    };

    if let Some(dir) = out_dir {
        write_reduce_files(&dir, &output)?;
    }
    to_json(&output)
}

fn write_reduce_files(dir: &std::path::Path, out: &ReduceOutput) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Input(format!("writing into {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    if let Some(sat) = &out.sat {
        std::fs::write(dir.join("instance.sat.json"), to_json(sat)?).map_err(io)?;
    }
    if let Some(d) = &out.dimacs {
        std::fs::write(dir.join("instance.cnf"), d).map_err(io)?;
    }
    if let Some(s) = &out.string {
        std::fs::write(dir.join("instance.tokens"), format!("{}\n", s.tokens)).map_err(io)?;
        std::fs::write(dir.join("legend.json"), to_json(&s.legend)?).map_err(io)?;
    }
    if let Some(w) = &out.witness {
        std::fs::write(dir.join("witness.json"), to_json(w)?).map_err(io)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct OracleOutput {
    oracle: &'static str,
    n: usize,
    value: serde_json::Value,
}

fn oracle(kind: OracleKind, seq: &Sequence) -> Result<String, CliError> {
    let budget = OracleBudget::default();
    let n = seq.len();
    let corner = |t: IntervalTable<usize>| if n == 0 { 0 } else { t.at(1, n) };
    let (name, value) = match kind {
        OracleKind::Q2 => ("q2", corner(oracle_square_table(seq, &budget)?).into()),
        OracleKind::Q3 => ("q3", corner(oracle_cube_table(seq, &budget)?).into()),
        OracleKind::Lsrs => ("lsrs", oracle_lsrs(seq, &budget)?.into()),
        OracleKind::LsrsPlus => (
            "lsrs-plus",
            match oracle_lsrs_plus(seq, &budget)? {
                Some(v) => v.into(),
                None => "infeasible".into(),
            },
        ),
    };
    to_json(&OracleOutput { oracle: name, n, value })
}

//! Acceptance suite. Every criterion prints one `[PASS]`/`[FAIL]` line and
//! fails its test when the check does not hold.
//!
//! Run with `cargo test -p srs-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use srs_core::bench::{bench, random_plus3_sequence, random_sequence, BenchAlg};
use srs_core::hardness::{
    alphabet_of, brute_force_assignment, brute_force_coloring, coloring_to_sat, extract_witness,
    sat_to_string, Assignment, Graph,
};
use srs_core::lsrs::{lsrs, lsrs_with};
use srs_core::oracle::{oracle_cube_table, oracle_lsrs, oracle_lsrs_plus, oracle_square_table, OracleBudget};
use srs_core::plus3::{feasibility_tables, lsrs_plus3, lsrs_plus3_with};
use srs_core::seq::{validate_srs, Block, OccurrenceIndex, ParseMode, Sequence, SrsDecomposition};
use srs_core::tables::{
    cube_table, cube_table_with, square_table, square_table_with, verify_repeat_tables, Threads,
};

fn verdict(criterion: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("[PASS] {criterion}");
    } else {
        println!("[FAIL] {criterion}");
        for f in failures.iter().take(10) {
            println!("       {f}");
        }
        panic!("{criterion}: {} failure(s); first: {}", failures.len(), failures[0]);
    }
}

fn seq(s: &str) -> Sequence {
    Sequence::raw(s).unwrap()
}

/// Every string of length `n` over the first `k` letters of `abc...`.
fn all_strings(k: usize, n: usize) -> Vec<Sequence> {
    let letters: Vec<char> = "abcdefgh".chars().take(k).collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        out.push(Sequence::from_tokens(digits.iter().map(|&d| letters[d].to_string()), ParseMode::Raw));
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < k {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// All strings over {a,b} with n <= 10, over {a,b,c} with n <= 8, and 300
/// seeded random strings with n <= 14 over at most four letters.
fn oracle_corpus() -> Vec<Sequence> {
    let mut corpus = Vec::new();
    for n in 0..=10 {
        corpus.extend(all_strings(2, n));
    }
    for n in 0..=8 {
        corpus.extend(all_strings(3, n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for _ in 0..300 {
        let n = rng.random_range(1..=14);
        let sigma = rng.random_range(1..=4);
        corpus.push(random_sequence(&mut rng, n, sigma));
    }
    corpus
}

// ---------------------------------------------------------------------------
// 1. Worked examples
// ---------------------------------------------------------------------------

#[test]
fn c1_worked_example_square_cube_lsrs() {
    let start = Instant::now();
    let s = seq("ACGAGCGCAGCGA");
    let mut failures = Vec::new();
    let (q2, q3, l) = (square_table(&s).at(1, 13), cube_table(&s).at(1, 13), lsrs(&s).length);
    if (q2, q3, l) != (10, 9, 10) {
        failures.push(format!("got Q2={q2} Q3={q3} lsrs={l}, expected 10, 9, 10"));
    }
    if start.elapsed() > Duration::from_secs(1) {
        failures.push(format!("took {:?}", start.elapsed()));
    }
    verdict("1a ACGAGCGCAGCGA: Q2[1,13]=10, Q3[1,13]=9, lsrs=10", &failures);
}

#[test]
fn c1_hprime_witness_shape() {
    let s = seq("ACTACTTAGTACGT");
    // A1 C2 A4 C5 . T7 A8 G9 T10 A11 G13
    let dec = SrsDecomposition {
        blocks: vec![
            Block::from_positions(&s, &[1, 2, 4, 5], 2),
            Block::from_positions(&s, &[7, 8, 9, 10, 11, 13], 2),
        ],
    };
    let mut failures = Vec::new();
    if dec.render(&s) != "(AC)^2(TAG)^2" {
        failures.push(format!("witness spells {}", dec.render(&s)));
    }
    let report = validate_srs(&s, &dec, &[]);
    if !report.is_ok() {
        failures.push(format!("validator: {report}"));
    }
    verdict("1b ACTACTTAGTACGT: (AC)^2(TAG)^2 is an SRS", &failures);
}

#[test]
fn c1_hprime_lsrs_value() {
    let start = Instant::now();
    let s = seq("ACTACTTAGTACGT");
    let r = lsrs(&s);
    let oracle = oracle_lsrs(&s, &OracleBudget::default()).unwrap();
    let mut failures = Vec::new();
    if r.length != 10 {
        failures.push(format!(
            "lsrs = {} with witness {} (oracle_lsrs = {oracle}); expected 10",
            r.length,
            r.decomposition.render(&s)
        ));
    }
    if oracle != r.length {
        failures.push(format!("oracle_lsrs = {oracle} disagrees with DP {}", r.length));
    }
    if start.elapsed() > Duration::from_secs(1) {
        failures.push(format!("took {:?}", start.elapsed()));
    }
    verdict("1c ACTACTTAGTACGT: lsrs = 10 (cross-checked by oracle_lsrs)", &failures);
}

#[test]
fn c1_plus3_worked_examples() {
    let mut failures = Vec::new();
    let t = feasibility_tables(&seq("ababbcacc"), Threads(1)).unwrap();
    if (t.s2.at(1, 9), t.s3.at(1, 9)) != (-1, -1) {
        failures.push(format!("ababbcacc: S2={} S3={}", t.s2.at(1, 9), t.s3.at(1, 9)));
    }
    for (text, want) in [("ababbcacc", 7), ("abacbabcc", 8), ("abacabccb", 6)] {
        let start = Instant::now();
        let r = lsrs_plus3(&seq(text)).unwrap();
        if !r.feasible || r.length != want {
            failures.push(format!("{text}: feasible={} length={} expected {want}", r.feasible, r.length));
        }
        if start.elapsed() > Duration::from_secs(1) {
            failures.push(format!("{text}: took {:?}", start.elapsed()));
        }
    }
    let t = feasibility_tables(&seq("baabab"), Threads(1)).unwrap();
    if t.s3.at(1, 6) != 4 {
        failures.push(format!("baabab: S3[1,6] = {}", t.s3.at(1, 6)));
    }
    verdict(
        "1d LSRS+(3): ababbcacc S2=S3=-1 then 7; abacbabcc 8; abacabccb 6; baabab S3[1,6]=4",
        &failures,
    );
}

// ---------------------------------------------------------------------------
// 2. Oracle equivalence
// ---------------------------------------------------------------------------

#[test]
fn c2_lsrs_matches_oracle() {
    let budget = OracleBudget::default();
    let corpus = oracle_corpus();
    let mut failures = Vec::new();
    for s in &corpus {
        let r = lsrs(s);
        let want = oracle_lsrs(s, &budget).unwrap();
        if r.length != want {
            failures.push(format!("{}: dp {} oracle {want}", s.render(), r.length));
        }
        if !validate_srs(s, &r.decomposition, &[]).is_ok() || r.decomposition.total_length() != r.length {
            failures.push(format!("{}: witness invalid", s.render()));
        }
    }
    verdict(&format!("2a lsrs == oracle_lsrs on {} strings", corpus.len()), &failures);
}

#[test]
fn c2_tables_match_oracle() {
    let budget = OracleBudget::default();
    let corpus = oracle_corpus();
    let mut failures = Vec::new();
    let mut cubes = 0;
    for s in &corpus {
        if square_table(s) != oracle_square_table(s, &budget).unwrap() {
            failures.push(format!("{}: Q2 differs", s.render()));
        }
        if s.len() <= 12 {
            cubes += 1;
            if cube_table(s) != oracle_cube_table(s, &budget).unwrap() {
                failures.push(format!("{}: Q3 differs", s.render()));
            }
        }
    }
    verdict(
        &format!("2b Q2 == oracle on {} strings, Q3 == oracle on {cubes} strings (n <= 12)", corpus.len()),
        &failures,
    );
}

#[test]
fn c2_plus3_matches_oracle() {
    let budget = OracleBudget::default();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut feasible = 0;
    for n in 0..=9 {
        for s in all_strings(3, n) {
            if OccurrenceIndex::new(&s).max_occurrence() > 3 {
                continue;
            }
            checked += 1;
            let r = lsrs_plus3(&s).unwrap();
            let want = oracle_lsrs_plus(&s, &budget).unwrap();
            let got = r.feasible.then_some(r.length);
            if got != want {
                failures.push(format!("{}: dp {got:?} oracle {want:?}", s.render()));
            }
            if r.feasible {
                feasible += 1;
            }
        }
    }
    verdict(
        &format!("2c lsrs_plus3 == oracle_lsrs_plus on all {checked} d<=3 strings over {{a,b,c}}, n<=9 ({feasible} feasible)"),
        &failures,
    );
}

// ---------------------------------------------------------------------------
// 3. Reduction correctness
// ---------------------------------------------------------------------------

fn all_graphs(vertices: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..vertices).flat_map(|u| (u + 1..vertices).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            Graph::new(vertices, edges).unwrap()
        })
        .collect()
}

#[test]
fn c3_reduction_correctness() {
    let mut failures = Vec::new();
    let mut graphs = 0;
    let mut colorable = 0;
    for v in 1..=5 {
        for g in all_graphs(v) {
            graphs += 1;
            let f = coloring_to_sat(&g);
            let coloring = brute_force_coloring(&g).unwrap();
            let assignment = brute_force_assignment(&f).unwrap();
            if coloring.is_some() != assignment.is_some() {
                failures.push(format!("{g:?}: coloring {coloring:?} vs assignment {:?}", assignment.is_some()));
            }
            let r = match sat_to_string(&f) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{g:?}: {e}"));
                    continue;
                }
            };
            let (m, n) = (f.neg_clauses.len(), f.plus_clauses.len());
            if r.h.len() != 4 * m + 8 * n + 4 * (n - 1) || r.check_invariants(m).is_err() {
                failures.push(format!("{g:?}: H invariants"));
            }
            if OccurrenceIndex::new(&r.h).max_occurrence() != 4 {
                failures.push(format!("{g:?}: d(H) != 4"));
            }
            let Some(coloring) = coloring else { continue };
            colorable += 1;
            let assignments = [assignment.expect("checked above"), Assignment::from_coloring(&coloring)];
            for a in &assignments {
                let dec = extract_witness(&f, a, &r).unwrap();
                let report = validate_srs(&r.h, &dec, &alphabet_of(&r));
                if !report.is_ok() {
                    failures.push(format!("{g:?}: witness {report}"));
                }
                // Exactly one list per gadget is absent from the witness.
                let used: std::collections::BTreeSet<usize> = dec.positions().into_iter().collect();
                for (i, gadget) in r.gadgets.iter().enumerate() {
                    let kept = gadget
                        .lists
                        .iter()
                        .filter(|&&(start, len)| (start..start + len).any(|p| used.contains(&p)))
                        .count();
                    if kept != 2 {
                        failures.push(format!("{g:?}: gadget {} keeps {kept} lists", i + 1));
                    }
                }
            }
        }
    }
    let k3 = coloring_to_sat(&Graph::complete(3));
    let k3_h = sat_to_string(&k3).unwrap();
    if k3_h.h.len() != 104 || brute_force_assignment(&k3).unwrap().is_none() {
        failures.push(format!("K3: |H| = {}, feasible expected", k3_h.h.len()));
    }
    if brute_force_assignment(&coloring_to_sat(&Graph::complete(4))).unwrap().is_some() {
        failures.push("K4: found a valid assignment".into());
    }
    verdict(
        &format!("3 reduction: {graphs} graphs on <= 5 vertices ({colorable} 3-colorable), K3 |H|=104, K4 infeasible"),
        &failures,
    );
}

// ---------------------------------------------------------------------------
// 4. Invariants on random strings
// ---------------------------------------------------------------------------

#[test]
fn c4_invariant_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for round in 0..1000 {
        let n = rng.random_range(0..=22);
        let sigma = rng.random_range(1..=5);
        let s = random_sequence(&mut rng, n, sigma);
        let (q2, q3) = (square_table(&s), cube_table(&s));
        if let Err(e) = verify_repeat_tables(&q2, &q3) {
            failures.push(format!("{}: {e}", s.render()));
        }
        // Q2 >= 2 iff some letter repeats in the interval.
        for i in 1..=n {
            for j in i..=n {
                let repeats = {
                    let w = s.slice(i, j);
                    (0..w.len()).any(|a| w[a + 1..].contains(&w[a]))
                };
                if (q2.at(i, j) >= 2) != repeats {
                    failures.push(format!("{}: Q2[{i},{j}] vs repeated letter", s.render()));
                }
            }
        }
        let r = srs_core::lsrs::lsrs_from_tables(&s, &q2, &q3);
        if !r.prefix_values.windows(2).all(|w| w[0] <= w[1]) {
            failures.push(format!("{}: L(i) not monotone", s.render()));
        }
        if n > 0 && r.length < q2.at(1, n).max(q3.at(1, n)) {
            failures.push(format!("{}: L(n) below Q2/Q3", s.render()));
        }

        // LSRS+(3) side: a string with every letter two or three times, plus
        // the same string with a random suffix letter to exercise singletons.
        let m = rng.random_range(2..=18);
        let p = random_plus3_sequence(&mut rng, m);
        let t = feasibility_tables(&p, Threads(1)).unwrap();
        for (i, j, c2) in t.coverage.c2.iter() {
            let c3 = t.coverage.c3.get(i, j);
            if c2.iter().any(|l| c3.contains(l)) {
                failures.push(format!("{}: C2 ∩ C3 nonempty at [{i},{j}]", p.render()));
            }
            let (v2, v3) = (t.s2.at(i, j), t.s3.at(i, j));
            if v2 != -1 && v2 != 2 * c2.len() as i64 {
                failures.push(format!("{}: S2[{i},{j}] = {v2}", p.render()));
            }
            if v3 != -1 && v3 != 2 * c3.len() as i64 && v3 != 3 * c3.len() as i64 {
                failures.push(format!("{}: S3[{i},{j}] = {v3}", p.render()));
            }
        }
        let plus = lsrs_plus3(&p).unwrap();
        if plus.feasible {
            let free = lsrs(&p).length;
            if plus.length > free {
                failures.push(format!("{}: LSRS+ {} > LSRS {free}", p.render(), plus.length));
            }
            let cover: Vec<_> = p.alphabet().letters().collect();
            if !validate_srs(&p, &plus.decomposition, &cover).is_ok() {
                failures.push(format!("{}: LSRS+ witness invalid", p.render()));
            }
        }
        if round % 100 == 0 && !failures.is_empty() {
            break;
        }
    }
    verdict("4 invariants (table parity/monotonicity, L(i), Lemma 3, S2/S3 ranges) on 1000 random strings", &failures);
}

// ---------------------------------------------------------------------------
// 5. Determinism across thread counts
// ---------------------------------------------------------------------------

#[test]
fn c5_determinism() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    for k in 0..50 {
        let s = if k % 2 == 0 {
            let n = rng.random_range(1..=20);
            random_sequence(&mut rng, n, 4)
        } else {
            let n = rng.random_range(2..=20);
            random_plus3_sequence(&mut rng, n)
        };
        let one = (
            square_table_with(&s, Threads(1)),
            cube_table_with(&s, Threads(1)),
            lsrs_with(&s, Threads(1)),
            lsrs_plus3_with(&s, Threads(1)).ok(),
        );
        let four = (
            square_table_with(&s, Threads(4)),
            cube_table_with(&s, Threads(4)),
            lsrs_with(&s, Threads(4)),
            lsrs_plus3_with(&s, Threads(4)).ok(),
        );
        if format!("{one:?}") != format!("{four:?}") {
            failures.push(format!("{}: 1 vs 4 threads differ", s.render()));
        }
    }
    verdict("5 determinism: tables, lengths, witnesses identical with 1 and 4 threads (50 strings)", &failures);
}

// ---------------------------------------------------------------------------
// 6. Performance
// ---------------------------------------------------------------------------

#[test]
fn c6_performance() {
    let mut failures = Vec::new();
    let s = srs_core::bench::input_for(BenchAlg::Q3, 42, 32);
    let start = Instant::now();
    cube_table(&s);
    let took = start.elapsed();
    if took > Duration::from_secs(60) {
        failures.push(format!("cube_table n=32 took {took:?}"));
    }
    let min_total = Duration::from_millis(300);
    let q3 = bench(BenchAlg::Q3, &[8, 16, 32], 42, Threads(1), min_total).unwrap();
    if !(4.5..=7.0).contains(&q3.slope) {
        failures.push(format!("q3 slope {:.3} outside [4.5, 7.0]: {:?}", q3.slope, q3.rows));
    }
    let plus3 = bench(BenchAlg::Plus3, &[16, 32, 64], 42, Threads(1), min_total).unwrap();
    if !(2.5..=5.0).contains(&plus3.slope) {
        failures.push(format!("plus3 slope {:.3} outside [2.5, 5.0]: {:?}", plus3.slope, plus3.rows));
    }
    println!(
        "       cube_table n=32: {took:?}; q3 slope {:.2}; plus3 slope {:.2}",
        q3.slope, plus3.slope
    );
    verdict("6 performance: cube n=32 < 60 s, q3 slope in [4.5,7.0], plus3 slope in [2.5,5.0]", &failures);
}

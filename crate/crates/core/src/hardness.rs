//! Instance generation for the NP-hardness of FT(4):
//! 3-COLORING → (3⁺,1,2⁻)-SAT → string `H` in which every letter occurs at
//! most four times, plus the forward map from a valid assignment to a
//! covering SRS of `H`, and brute-force solvers for tiny instances.
//!
//! Clause numbering: the three vertex clauses `(¬u1∨¬u2), (¬u1∨¬u3),
//! (¬u2∨¬u3)` of every vertex in vertex order, then the three edge clauses
//! `(¬u_c∨¬v_c)`, `c = 1, 2, 3`, of every edge in edge order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{merge_blocks, Block, Letter, ParseMode, Sequence, SrsDecomposition};

/// Guard for the exponential searches.
pub const BRUTE_FORCE_LIMIT: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) has an endpoint outside 0..{vertices}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        Graph { vertices: k, edges }
    }

    pub fn cycle(k: usize) -> Self {
        let edges = (0..k).map(|u| (u, (u + 1) % k)).collect();
        Graph::new(k, edges).expect("cycle on at least 3 vertices")
    }

    /// Text format: `|V| |E|` on the first line, then one `u v` line per edge
    /// with 0-based vertex ids.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nums = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidGraph(format!("expected a non-negative integer, found {t:?}")))
        });
        let mut next = |what: &str| {
            nums.next()
                .unwrap_or_else(|| Err(Error::InvalidGraph(format!("missing {what}"))))
        };
        let vertices = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for e in 0..m {
            let u = next(&format!("edge {e} endpoint"))?;
            let v = next(&format!("edge {e} endpoint"))?;
            edges.push((u, v));
        }
        if nums.next().is_some() {
            return Err(Error::InvalidGraph(format!("trailing data after {m} edges")));
        }
        Graph::new(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertices, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// 0-based variable index; variable `3v + (c-1)` means "vertex `v` has color `c`".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub usize);

impl Var {
    pub fn color(vertex: usize, color: usize) -> Var {
        debug_assert!((1..=3).contains(&color));
        Var(3 * vertex + color - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Type 1: vertex cannot take both colors.
    Vertex { vertex: usize, colors: (usize, usize) },
    /// Type 2: endpoints of an edge cannot share a color.
    Edge { u: usize, v: usize, color: usize },
}

/// A negative 2-clause `(¬x ∨ ¬y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegClause {
    #[serde(rename = "type")]
    pub clause_type: u8,
    pub vars: (Var, Var),
    pub provenance: Provenance,
}

impl NegClause {
    pub fn contains(&self, x: Var) -> bool {
        self.vars.0 == x || self.vars.1 == x
    }
}

/// (3⁺,1,2⁻)-SAT: positive 3-clauses in which every variable occurs exactly
/// once, and negative 2-clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatInstance {
    pub variables: usize,
    pub plus_clauses: Vec<[Var; 3]>,
    pub neg_clauses: Vec<NegClause>,
}

impl SatInstance {
    pub fn check(&self) -> Result<()> {
        let mut uses = vec![0usize; self.variables];
        for (i, clause) in self.plus_clauses.iter().enumerate() {
            for x in clause {
                if x.0 >= self.variables {
                    return Err(Error::InvalidInstance(format!("plus-clause {} uses unknown variable x{}", i + 1, x.0 + 1)));
                }
                uses[x.0] += 1;
            }
        }
        if let Some(x) = uses.iter().position(|&u| u != 1) {
            return Err(Error::InvalidInstance(format!(
                "variable x{} occurs {} times in plus-clauses (expected exactly once)",
                x + 1,
                uses[x]
            )));
        }
        for (j, c) in self.neg_clauses.iter().enumerate() {
            if c.vars.0.0 >= self.variables || c.vars.1.0 >= self.variables || c.vars.0 == c.vars.1 {
                return Err(Error::InvalidInstance(format!("neg-clause F-{} is malformed", j + 1)));
            }
        }
        Ok(())
    }

    /// DIMACS CNF. Positive clauses first, then negative ones; variables are
    /// numbered from 1.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str("c (3+,1,2-)-SAT instance generated from a 3-COLORING graph\n");
        out.push_str("c a valid assignment additionally makes exactly one literal of every positive 3-clause true;\n");
        out.push_str("c that exactly-one condition is not encoded below\n");
        let _ = writeln!(out, "c plus-clauses: {}, neg-clauses: {}", self.plus_clauses.len(), self.neg_clauses.len());
        let _ = writeln!(out, "p cnf {} {}", self.variables, self.plus_clauses.len() + self.neg_clauses.len());
        for c in &self.plus_clauses {
            let _ = writeln!(out, "{} {} {} 0", c[0].0 + 1, c[1].0 + 1, c[2].0 + 1);
        }
        for c in &self.neg_clauses {
            let _ = writeln!(out, "-{} -{} 0", c.vars.0.0 + 1, c.vars.1.0 + 1);
        }
        out
    }
}

pub fn coloring_to_sat(g: &Graph) -> SatInstance {
    let plus_clauses = (0..g.vertices)
        .map(|v| [Var::color(v, 1), Var::color(v, 2), Var::color(v, 3)])
        .collect();
    let mut neg_clauses = Vec::with_capacity(3 * (g.vertices + g.edges.len()));
    for v in 0..g.vertices {
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            neg_clauses.push(NegClause {
                clause_type: 1,
                vars: (Var::color(v, a), Var::color(v, b)),
                provenance: Provenance::Vertex { vertex: v, colors: (a, b) },
            });
        }
    }
    for &(u, v) in &g.edges {
        for c in 1..=3 {
            neg_clauses.push(NegClause {
                clause_type: 2,
                vars: (Var::color(u, c), Var::color(v, c)),
                provenance: Provenance::Edge { u, v, color: c },
            });
        }
    }
    SatInstance { variables: 3 * g.vertices, plus_clauses, neg_clauses }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    /// `F⁻_j`, 1-based.
    Clause { index: usize },
    /// `1_i`, `2_i`, `3_i` of plus-clause `i` (1-based).
    Marker { kind: u8, clause: usize },
    /// `g_k` (primed: `g'_k`), 1-based.
    Separator { index: usize, primed: bool },
}

pub fn clause_token(j: usize) -> String {
    format!("F-{j}")
}

pub fn marker_token(kind: u8, i: usize) -> String {
    format!("m{kind}-{i}")
}

pub fn separator_token(k: usize, primed: bool) -> String {
    if primed {
        format!("gp-{k}")
    } else {
        format!("g-{k}")
    }
}

/// 1-based positions of the pieces of one gadget
/// `H_i = 2_i L(x_i1) 1_i 2_i 1_i L(x_i2) 2_i L(x_i3) 3_i 2_i 3_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetLayout {
    pub lead_two: usize,
    /// `(start, len)` of `L(x_i1)`, `L(x_i2)`, `L(x_i3)`.
    pub lists: [(usize, usize); 3],
    pub one_two_one: [usize; 3],
    pub mid_two: usize,
    pub three_two_three: [usize; 3],
}

#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub h: Sequence,
    pub legend: Vec<(String, Role)>,
    pub gadgets: Vec<GadgetLayout>,
    /// Positions of `g_k g'_k g_k g'_k`.
    pub separators: Vec<[usize; 4]>,
}

impl ReductionInstance {
    pub fn plus_count(&self) -> usize {
        self.gadgets.len()
    }

    /// Checks the occurrence counts (clauses and `2_i` four times, every other
    /// letter twice) and `|H| = 4m + 8n + 4(n-1)`.
    pub fn check_invariants(&self, m: usize) -> Result<()> {
        let n = self.gadgets.len();
        let expected_len = 4 * m + 8 * n + 4 * n.saturating_sub(1);
        if self.h.len() != expected_len {
            return Err(Error::InvalidInstance(format!("|H| = {} but 4m + 8n + 4(n-1) = {expected_len}", self.h.len())));
        }
        let index = crate::seq::OccurrenceIndex::new(&self.h);
        for (token, role) in &self.legend {
            let want = match role {
                Role::Clause { .. } | Role::Marker { kind: 2, .. } => 4,
                _ => 2,
            };
            let got = self.h.alphabet().get(token).map_or(0, |l| index.count(l));
            if got != want {
                return Err(Error::InvalidInstance(format!("letter {token} occurs {got} times, expected {want}")));
            }
        }
        if self.legend.len() != self.h.alphabet().len() {
            return Err(Error::InvalidInstance("legend does not match the alphabet of H".into()));
        }
        Ok(())
    }
}

/// `L(x)`: the type-1 clauses containing `¬x`, then the type-2 ones, each in
/// clause-index order and each letter doubled. Returned as 1-based clause
/// indices.
pub fn clause_list(f: &SatInstance, x: Var) -> Vec<usize> {
    let mut out = Vec::new();
    for ty in [1, 2] {
        for (j, c) in f.neg_clauses.iter().enumerate() {
            if c.clause_type == ty && c.contains(x) {
                out.extend([j + 1, j + 1]);
            }
        }
    }
    out
}

pub fn sat_to_string(f: &SatInstance) -> Result<ReductionInstance> {
    f.check()?;
    let n = f.plus_clauses.len();
    let mut tokens: Vec<String> = Vec::new();
    let mut gadgets = Vec::with_capacity(n);
    let mut separators = Vec::with_capacity(n.saturating_sub(1));
    let push = |tokens: &mut Vec<String>, t: String| {
        tokens.push(t);
        tokens.len()
    };
    for (idx, clause) in f.plus_clauses.iter().enumerate() {
        let i = idx + 1;
        let mut lists = [(0, 0); 3];
        let lead_two = push(&mut tokens, marker_token(2, i));
        let emit_list = |tokens: &mut Vec<String>, x: Var| {
            let list = clause_list(f, x);
            let start = tokens.len() + 1;
            tokens.extend(list.iter().map(|&j| clause_token(j)));
            (start, list.len())
        };
        lists[0] = emit_list(&mut tokens, clause[0]);
        let one_two_one = [
            push(&mut tokens, marker_token(1, i)),
            push(&mut tokens, marker_token(2, i)),
            push(&mut tokens, marker_token(1, i)),
        ];
        lists[1] = emit_list(&mut tokens, clause[1]);
        let mid_two = push(&mut tokens, marker_token(2, i));
        lists[2] = emit_list(&mut tokens, clause[2]);
        let three_two_three = [
            push(&mut tokens, marker_token(3, i)),
            push(&mut tokens, marker_token(2, i)),
            push(&mut tokens, marker_token(3, i)),
        ];
        gadgets.push(GadgetLayout { lead_two, lists, one_two_one, mid_two, three_two_three });
        if i < n {
            separators.push([
                push(&mut tokens, separator_token(i, false)),
                push(&mut tokens, separator_token(i, true)),
                push(&mut tokens, separator_token(i, false)),
                push(&mut tokens, separator_token(i, true)),
            ]);
        }
    }
    let h = Sequence::from_tokens(&tokens, ParseMode::Tokens);
    let legend = h
        .alphabet()
        .letters()
        .map(|l| {
            let token = h.alphabet().token(l).to_owned();
            let role = role_of(&token).expect("generated token has a known role");
            (token, role)
        })
        .collect();
    let instance = ReductionInstance { h, legend, gadgets, separators };
    instance.check_invariants(f.neg_clauses.len())?;
    Ok(instance)
}

/// Role of a generated token, or `None` for foreign tokens.
pub fn role_of(token: &str) -> Option<Role> {
    let (head, num) = token.split_once('-')?;
    let index: usize = num.parse().ok()?;
    match head {
        "F" => Some(Role::Clause { index }),
        "m1" => Some(Role::Marker { kind: 1, clause: index }),
        "m2" => Some(Role::Marker { kind: 2, clause: index }),
        "m3" => Some(Role::Marker { kind: 3, clause: index }),
        "g" => Some(Role::Separator { index, primed: false }),
        "gp" => Some(Role::Separator { index, primed: true }),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn from_coloring(coloring: &[usize]) -> Self {
        let mut values = vec![false; 3 * coloring.len()];
        for (v, &c) in coloring.iter().enumerate() {
            values[Var::color(v, c).0] = true;
        }
        Assignment { values }
    }

    /// Satisfies every clause and makes exactly one literal of every
    /// plus-clause true.
    pub fn is_valid(&self, f: &SatInstance) -> bool {
        self.values.len() == f.variables
            && f.plus_clauses
                .iter()
                .all(|c| c.iter().filter(|x| self.values[x.0]).count() == 1)
            && f.neg_clauses
                .iter()
                .all(|c| !(self.values[c.vars.0.0] && self.values[c.vars.1.0]))
    }
}

/// Builds the covering SRS of `H` induced by a valid assignment: per gadget,
/// the list of the true literal is dropped and the markers are arranged as
/// one of `(2_i 1_i)^2 … (3_i)^2`, `… (1_i 2_i)^2 … (3_i)^2`, or
/// `… (1_i)^2 … (2_i 3_i)^2`. Every clause letter pair becomes a square and
/// every separator run becomes `(g_k g'_k)^2`.
pub fn extract_witness(f: &SatInstance, a: &Assignment, r: &ReductionInstance) -> Result<SrsDecomposition> {
    if !a.is_valid(f) {
        return Err(Error::InvalidAssignment(
            "assignment does not satisfy every clause with exactly one true literal per plus-clause".into(),
        ));
    }
    let h = &r.h;
    let mut blocks: Vec<Block> = Vec::new();
    let list_blocks = |blocks: &mut Vec<Block>, (start, len): (usize, usize)| {
        for p in (start..start + len).step_by(2) {
            blocks.push(Block::from_positions(h, &[p, p + 1], 2));
        }
    };
    for (idx, (clause, g)) in f.plus_clauses.iter().zip(&r.gadgets).enumerate() {
        let t = clause.iter().position(|x| a.values[x.0]).expect("valid assignment");
        match t {
            0 => {
                let [o1, t1, o2] = g.one_two_one;
                blocks.push(Block::from_positions(h, &[g.lead_two, o1, t1, o2], 2));
                list_blocks(&mut blocks, g.lists[1]);
                list_blocks(&mut blocks, g.lists[2]);
                blocks.push(Block::from_positions(h, &[g.three_two_three[0], g.three_two_three[2]], 2));
            }
            1 => {
                list_blocks(&mut blocks, g.lists[0]);
                let [o1, t1, o2] = g.one_two_one;
                blocks.push(Block::from_positions(h, &[o1, t1, o2, g.mid_two], 2));
                list_blocks(&mut blocks, g.lists[2]);
                blocks.push(Block::from_positions(h, &[g.three_two_three[0], g.three_two_three[2]], 2));
            }
            _ => {
                list_blocks(&mut blocks, g.lists[0]);
                blocks.push(Block::from_positions(h, &[g.one_two_one[0], g.one_two_one[2]], 2));
                list_blocks(&mut blocks, g.lists[1]);
                let [th1, t2, th2] = g.three_two_three;
                blocks.push(Block::from_positions(h, &[g.mid_two, th1, t2, th2], 2));
            }
        }
        if let Some(sep) = r.separators.get(idx) {
            blocks.push(Block::from_positions(h, sep, 2));
        }
    }
    Ok(merge_blocks(blocks))
}

fn guard(what: &'static str, n: usize) -> Result<()> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Budget { what, n, max: BRUTE_FORCE_LIMIT });
    }
    Ok(())
}

/// Odometer over `{0,1,2}^n`, last digit fastest; yields each tuple in
/// lexicographic order.
fn for_each_ternary<F: FnMut(&[usize]) -> bool>(n: usize, mut visit: F) {
    let mut digits = vec![0usize; n];
    loop {
        if visit(&digits) {
            return;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < 3 {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Lexicographically first valid assignment (one true literal chosen per
/// plus-clause), or `None`.
pub fn brute_force_assignment(f: &SatInstance) -> Result<Option<Assignment>> {
    guard("brute-force assignment (plus-clauses)", f.plus_clauses.len())?;
    f.check()?;
    let mut found = None;
    for_each_ternary(f.plus_clauses.len(), |choice| {
        let mut values = vec![false; f.variables];
        for (c, &k) in f.plus_clauses.iter().zip(choice) {
            values[c[k].0] = true;
        }
        let a = Assignment { values };
        if a.is_valid(f) {
            found = Some(a);
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Lexicographically first proper 3-coloring (colors 1..=3), or `None`.
pub fn brute_force_coloring(g: &Graph) -> Result<Option<Vec<usize>>> {
    guard("brute-force coloring (vertices)", g.vertices)?;
    let mut found = None;
    for_each_ternary(g.vertices, |digits| {
        if g.edges.iter().all(|&(u, v)| digits[u] != digits[v]) {
            found = Some(digits.iter().map(|d| d + 1).collect());
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Letters of `H`, for the full-coverage check.
pub fn alphabet_of(r: &ReductionInstance) -> Vec<Letter> {
    r.h.alphabet().letters().collect()
}

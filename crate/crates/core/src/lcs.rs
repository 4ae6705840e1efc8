//! Two- and three-way LCS engines that answer every prefix of the last
//! argument in a single pass.
//!
//! The all-prefix shape is what the repeat tables depend on: one run over
//! `(A, B, C)` yields the LCS for `C[1..k]` for every `k`, so a cut pair
//! `(c1, c2)` answers all right endpoints at once.

use crate::seq::Letter;

/// `values[k]` is the LCS length of the fixed arguments against the first
/// `k` letters of the last argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixLcs {
    values: Vec<usize>,
}

impl PrefixLcs {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, k: usize) -> usize {
        self.values[k]
    }

    /// LCS against the whole last argument.
    pub fn full(&self) -> usize {
        *self.values.last().expect("prefix vector always has f[0]")
    }
}

/// `f[k] = LCS(a, b[..k])` for `0 <= k <= |b|`.
pub fn lcs2_all_prefixes(a: &[Letter], b: &[Letter]) -> PrefixLcs {
    let mut values = Vec::new();
    Lcs2Workspace::new().run(a, b, &mut values);
    PrefixLcs { values }
}

/// Reusable rows for [`lcs2_all_prefixes`].
#[derive(Debug, Default)]
pub struct Lcs2Workspace {
    prev: Vec<u32>,
    cur: Vec<u32>,
}

impl Lcs2Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Writes `f[k] = LCS(a, b[..k])` into `out` (resized to `|b| + 1`).
    pub fn run(&mut self, a: &[Letter], b: &[Letter], out: &mut Vec<usize>) {
        let w = b.len() + 1;
        self.prev.clear();
        self.prev.resize(w, 0);
        self.cur.clear();
        self.cur.resize(w, 0);
        for &x in a {
            for k in 1..w {
                self.cur[k] = if x == b[k - 1] {
                    self.prev[k - 1] + 1
                } else {
                    self.prev[k].max(self.cur[k - 1])
                };
            }
            std::mem::swap(&mut self.prev, &mut self.cur);
        }
        out.clear();
        out.extend(self.prev.iter().map(|&v| v as usize));
    }
}

/// Reusable layers for [`lcs3_all_prefixes`]; the cube table runs one DP per
/// cut pair and keeps a single workspace per suffix start.
#[derive(Debug, Default)]
pub struct Lcs3Workspace {
    prev: Vec<u32>,
    cur: Vec<u32>,
}

impl Lcs3Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Writes `f[k] = LCS(a, b, c[..k])` into `out` (resized to `|c| + 1`).
    pub fn run(&mut self, a: &[Letter], b: &[Letter], c: &[Letter], out: &mut Vec<usize>) {
        let wc = c.len() + 1;
        let size = (b.len() + 1) * wc;
        self.prev.clear();
        self.prev.resize(size, 0);
        self.cur.clear();
        self.cur.resize(size, 0);
        for &x in a {
            for j in 1..=b.len() {
                let row = j * wc;
                let up = row - wc;
                if x == b[j - 1] {
                    for k in 1..wc {
                        self.cur[row + k] = if x == c[k - 1] {
                            self.prev[up + k - 1] + 1
                        } else {
                            self.prev[row + k]
                                .max(self.cur[up + k])
                                .max(self.cur[row + k - 1])
                        };
                    }
                } else {
                    for k in 1..wc {
                        self.cur[row + k] = self.prev[row + k]
                            .max(self.cur[up + k])
                            .max(self.cur[row + k - 1]);
                    }
                }
            }
            std::mem::swap(&mut self.prev, &mut self.cur);
        }
        let last = b.len() * wc;
        out.clear();
        out.extend(self.prev[last..last + wc].iter().map(|&v| v as usize));
    }
}

/// `f[k] = LCS(a, b, c[..k])` for `0 <= k <= |c|`, with memory
/// `O(|b|·|c|)` by rolling layers over `a`.
pub fn lcs3_all_prefixes(a: &[Letter], b: &[Letter], c: &[Letter]) -> PrefixLcs {
    let mut values = Vec::new();
    Lcs3Workspace::new().run(a, b, c, &mut values);
    PrefixLcs { values }
}

/// A common subsequence together with its 0-based offsets in each argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonSubsequence {
    pub word: Vec<Letter>,
    pub offsets: Vec<Vec<usize>>,
}

impl CommonSubsequence {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// An LCS of `a` and `b`. Traceback walks forward: a match is consumed as
/// soon as the current letters agree, otherwise the earliest-listed argument
/// that keeps the optimum advances.
pub fn lcs2_witness(a: &[Letter], b: &[Letter]) -> CommonSubsequence {
    let (n, m) = (a.len(), b.len());
    let w = m + 1;
    // suf[i*w + j] = LCS(a[i..], b[j..])
    let mut suf = vec![0u32; (n + 1) * w];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            suf[i * w + j] = if a[i] == b[j] {
                suf[(i + 1) * w + j + 1] + 1
            } else {
                suf[(i + 1) * w + j].max(suf[i * w + j + 1])
            };
        }
    }
    let mut out = CommonSubsequence { word: Vec::new(), offsets: vec![Vec::new(), Vec::new()] };
    let (mut i, mut j) = (0, 0);
    while i < n && j < m && suf[i * w + j] > 0 {
        if a[i] == b[j] {
            out.word.push(a[i]);
            out.offsets[0].push(i);
            out.offsets[1].push(j);
            i += 1;
            j += 1;
        } else if suf[(i + 1) * w + j] == suf[i * w + j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// An LCS of three words, same tie-breaking as [`lcs2_witness`].
pub fn lcs3_witness(a: &[Letter], b: &[Letter], c: &[Letter]) -> CommonSubsequence {
    let (n, m, p) = (a.len(), b.len(), c.len());
    let wc = p + 1;
    let wb = (m + 1) * wc;
    let at = |i: usize, j: usize, k: usize| i * wb + j * wc + k;
    let mut suf = vec![0u32; (n + 1) * wb];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            for k in (0..p).rev() {
                suf[at(i, j, k)] = if a[i] == b[j] && b[j] == c[k] {
                    suf[at(i + 1, j + 1, k + 1)] + 1
                } else {
                    suf[at(i + 1, j, k)]
                        .max(suf[at(i, j + 1, k)])
                        .max(suf[at(i, j, k + 1)])
                };
            }
        }
    }
    let mut out = CommonSubsequence {
        word: Vec::new(),
        offsets: vec![Vec::new(), Vec::new(), Vec::new()],
    };
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < n && j < m && k < p && suf[at(i, j, k)] > 0 {
        let here = suf[at(i, j, k)];
        if a[i] == b[j] && b[j] == c[k] {
            out.word.push(a[i]);
            out.offsets[0].push(i);
            out.offsets[1].push(j);
            out.offsets[2].push(k);
            i += 1;
            j += 1;
            k += 1;
        } else if suf[at(i + 1, j, k)] == here {
            i += 1;
        } else if suf[at(i, j + 1, k)] == here {
            j += 1;
        } else {
            k += 1;
        }
    }
    out
}

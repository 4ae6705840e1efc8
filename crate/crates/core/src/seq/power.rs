use crate::error::{Error, Result};

use super::Letter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerRoot {
    pub root: Vec<Letter>,
    pub exponent: usize,
}

/// Border (failure function) array: `border[k]` is the length of the longest
/// proper border of `word[..k]`.
fn borders(word: &[Letter]) -> Vec<usize> {
    let mut border = vec![0; word.len() + 1];
    let mut k = 0;
    for q in 1..word.len() {
        while k > 0 && word[q] != word[k] {
            k = border[k];
        }
        if word[q] == word[k] {
            k += 1;
        }
        border[q + 1] = k;
    }
    border
}

fn smallest_period(word: &[Letter]) -> usize {
    word.len() - borders(word)[word.len()]
}

/// Primitive root and maximal exponent of a nonempty word.
pub fn power_root(word: &[Letter]) -> PowerRoot {
    assert!(!word.is_empty(), "power_root of the empty word");
    let p = smallest_period(word);
    if word.len().is_multiple_of(p) {
        PowerRoot { root: word[..p].to_vec(), exponent: word.len() / p }
    } else {
        PowerRoot { root: word.to_vec(), exponent: 1 }
    }
}

/// Writes `d >= 2` as a sum of 2s and 3s: all 3s when `d % 3 == 0`, one 2
/// then 3s when `d % 3 == 2`, two 2s then 3s when `d % 3 == 1`.
pub fn split_exponent(d: usize) -> Result<Vec<usize>> {
    if d < 2 {
        return Err(Error::Domain(format!("exponent {d} cannot be split into 2s and 3s")));
    }
    let twos = match d % 3 {
        0 => 0,
        2 => 1,
        _ => 2,
    };
    let threes = (d - 2 * twos) / 3;
    let mut parts = vec![2; twos];
    parts.extend(std::iter::repeat_n(3, threes));
    Ok(parts)
}

/// True iff `word` splits into consecutive factors that are each a proper
/// power (`r^e`, `e >= 2`). The empty word is trivially partitionable.
pub fn srs_partitionable(word: &[Letter]) -> bool {
    let n = word.len();
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for start in 0..n {
        if !ok[start] {
            continue;
        }
        // One border array of the suffix yields the smallest period of every
        // factor starting here.
        let border = borders(&word[start..]);
        for len in 2..=n - start {
            let p = len - border[len];
            if p < len && len % p == 0 {
                ok[start + len] = true;
            }
        }
    }
    ok[n]
}

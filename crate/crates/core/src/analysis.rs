//! Factor complexity, balance and periodicity of finite prefixes, and the
//! Sturmian / WSE verdicts built on them.
//!
//! A prefix can refute a property of the infinite word (a factor or an
//! imbalance that a Sturmian word never has), never confirm one. Verdicts are
//! therefore `Refuted` with a witness or `Consistent` with a coverage note.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{erase, FiniteWord, Letter, ALPHABET_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("max-n {max_n} out of range for a prefix of length {len} (need 1 <= max-n <= length)")]
    MaxNOutOfRange { max_n: usize, len: usize },
    #[error("Sturmian analysis needs at most two letters, the prefix uses {0}")]
    AlphabetTooLarge(usize),
    #[error("profiles come from different prefixes (lengths {0} and {1})")]
    PrefixMismatch(usize, usize),
    #[error("erasing letter {0} leaves an empty prefix")]
    EmptyErasure(Letter),
}

/// `maxN = min(64, ⌊√L⌋)`, at least 1.
pub fn default_max_n(len: usize) -> usize {
    ((len as f64).sqrt().floor() as usize).clamp(1, 64)
}

fn check_range(max_n: usize, len: usize) -> Result<(), AnalysisError> {
    if max_n == 0 || max_n > len {
        return Err(AnalysisError::MaxNOutOfRange { max_n, len });
    }
    Ok(())
}

/// `P(n)` for `1 ≤ n ≤ max_n`, counted on a prefix of length `prefix_length`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub max_n: usize,
    pub prefix_length: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl ComplexityProfile {
    pub fn get(&self, n: usize) -> u64 {
        self.counts.get(&n).copied().unwrap_or(0)
    }
}

/// Number of distinct length-`n` factors of `w`.
fn distinct_factors(w: &[Letter], n: usize) -> u64 {
    if n > w.len() {
        return 0;
    }
    if n <= 64 {
        // two bits per letter, rolled through a u128
        let mask: u128 = if n == 64 { u128::MAX } else { (1u128 << (2 * n)) - 1 };
        let mut seen = HashSet::with_capacity(w.len());
        let mut code = 0u128;
        for (i, &l) in w.iter().enumerate() {
            code = ((code << 2) | l as u128) & mask;
            if i + 1 >= n {
                seen.insert(code);
            }
        }
        seen.len() as u64
    } else {
        w.windows(n).collect::<HashSet<_>>().len() as u64
    }
}

pub fn complexity(prefix: &FiniteWord, max_n: usize) -> Result<ComplexityProfile, AnalysisError> {
    check_range(max_n, prefix.len())?;
    let counts = (1..=max_n).map(|n| (n, distinct_factors(prefix, n))).collect();
    Ok(ComplexityProfile { max_n, prefix_length: prefix.len(), counts })
}

/// Per-length imbalance `max_a (max |u|_a − min |u|_a)` over length-`n` factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceProfile {
    pub max_n: usize,
    pub prefix_length: usize,
    pub imbalance: BTreeMap<usize, usize>,
    /// Largest imbalance seen; a lower bound for the balance order of the infinite word.
    pub order: usize,
}

pub fn balance_order(prefix: &FiniteWord, max_n: usize) -> Result<BalanceProfile, AnalysisError> {
    check_range(max_n, prefix.len())?;
    let w = prefix.letters();
    let mut imbalance = BTreeMap::new();
    for n in 1..=max_n {
        let mut count = [0isize; ALPHABET_SIZE];
        for &l in &w[..n] {
            count[l as usize] += 1;
        }
        let (mut lo, mut hi) = (count, count);
        for i in n..w.len() {
            count[w[i] as usize] += 1;
            count[w[i - n] as usize] -= 1;
            for a in 0..ALPHABET_SIZE {
                lo[a] = lo[a].min(count[a]);
                hi[a] = hi[a].max(count[a]);
            }
        }
        let spread = (0..ALPHABET_SIZE).map(|a| (hi[a] - lo[a]) as usize).max().unwrap_or(0);
        imbalance.insert(n, spread);
    }
    let order = imbalance.values().copied().max().unwrap_or(0);
    Ok(BalanceProfile { max_n, prefix_length: prefix.len(), imbalance, order })
}

/// Why a prefix cannot come from a Sturmian word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `P(n) > n + 1`.
    Complexity { n: usize, count: u64 },
    /// Two factors of length `n` differ by at least 2 in some letter.
    Imbalance { n: usize, imbalance: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SturmianVerdict {
    Refuted { witness: Witness },
    Consistent {
        /// Factor lengths examined.
        checked_up_to: usize,
        /// Largest `n` such that all `k + 1` factors were seen for every `k ≤ n`.
        saturated_up_to: usize,
        note: String,
    },
}

impl SturmianVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, SturmianVerdict::Refuted { .. })
    }
}

pub fn sturmian_verdict(
    profile: &ComplexityProfile,
    balance: &BalanceProfile,
) -> Result<SturmianVerdict, AnalysisError> {
    if profile.prefix_length != balance.prefix_length {
        return Err(AnalysisError::PrefixMismatch(profile.prefix_length, balance.prefix_length));
    }
    let letters = profile.get(1) as usize;
    if letters > 2 {
        return Err(AnalysisError::AlphabetTooLarge(letters));
    }
    if let Some((&n, &count)) = profile.counts.iter().find(|(&n, &c)| c > n as u64 + 1) {
        return Ok(SturmianVerdict::Refuted { witness: Witness::Complexity { n, count } });
    }
    if let Some((&n, &imbalance)) = balance.imbalance.iter().find(|(_, &d)| d >= 2) {
        return Ok(SturmianVerdict::Refuted { witness: Witness::Imbalance { n, imbalance } });
    }
    let checked_up_to = profile.max_n.min(balance.max_n);
    let saturated_up_to = profile
        .counts
        .iter()
        .take_while(|(&n, &c)| c == n as u64 + 1)
        .map(|(&n, _)| n)
        .last()
        .unwrap_or(0);
    let note = format!(
        "no refutation in a prefix of length {} for factor lengths up to {checked_up_to}; \
         all n+1 factors seen up to n = {saturated_up_to}; a finite prefix cannot prove the word Sturmian",
        profile.prefix_length
    );
    Ok(SturmianVerdict::Consistent { checked_up_to, saturated_up_to, note })
}

/// Complexity, balance and verdict of one prefix in one call.
pub fn analyze_sturmian(prefix: &FiniteWord, max_n: usize) -> Result<SturmianVerdict, AnalysisError> {
    sturmian_verdict(&complexity(prefix, max_n)?, &balance_order(prefix, max_n)?)
}

/// Least `p ≤ |w|/2` such that `w` is `u·v·v·…` with `|v| = p`, a preperiod
/// `|u| ≤ |w|/4` and at least two full periods after it. `None` does not prove
/// aperiodicity.
pub fn period_scan(w: &FiniteWord) -> Option<usize> {
    let len = w.len();
    let max_pre = len / 4;
    (1..=len / 2).find(|&p| {
        let w = w.letters();
        if (max_pre..len - p).any(|i| w[i] != w[i + p]) {
            return false;
        }
        let pre = (0..max_pre.min(len - p)).rev().find(|&i| w[i] != w[i + p]).map_or(0, |i| i + 1);
        len - pre >= 2 * p
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErasureReport {
    pub letter: Letter,
    pub erased_length: usize,
    /// Window bound actually used, clamped to the erased prefix length.
    pub max_n: usize,
    pub verdict: SturmianVerdict,
    /// Period reported by [`period_scan`] on the erased prefix; informational.
    pub period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WseVerdict {
    pub refuted: bool,
    pub erasures: Vec<ErasureReport>,
}

impl WseVerdict {
    /// The first erasure whose verdict is a refutation, with its witness.
    pub fn first_refutation(&self) -> Option<(Letter, &Witness)> {
        self.erasures.iter().find_map(|r| match &r.verdict {
            SturmianVerdict::Refuted { witness } => Some((r.letter, witness)),
            _ => None,
        })
    }
}

/// Runs the Sturmian verdict on each of the three erasures `π_0, π_1, π_2`.
pub fn wse_verdict(prefix: &FiniteWord, max_n: usize) -> Result<WseVerdict, AnalysisError> {
    check_range(max_n, prefix.len())?;
    let erasures = (0..ALPHABET_SIZE as Letter)
        .map(|i| {
            let erased = erase(prefix, i);
            if erased.is_empty() {
                return Err(AnalysisError::EmptyErasure(i));
            }
            let n = max_n.min(erased.len());
            Ok(ErasureReport {
                letter: i,
                erased_length: erased.len(),
                max_n: n,
                verdict: analyze_sturmian(&erased, n)?,
                period: period_scan(&erased),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WseVerdict { refuted: erasures.iter().any(|r| r.verdict.is_refuted()), erasures })
}

/// CSV rows `n,P,imbalance` over the common range of two profiles.
pub fn profiles_csv(profile: &ComplexityProfile, balance: &BalanceProfile) -> String {
    let mut out = String::from("n,P,imbalance\n");
    for n in 1..=profile.max_n.min(balance.max_n) {
        out.push_str(&format!("{n},{},{}\n", profile.get(n), balance.imbalance[&n]));
    }
    out
}

//! Strings viewed as successor structures, together with the occurrence
//! statistics (free occurrences, multiplicity, scattering) that drive the
//! game characterization.
//!
//! Positions are 1-based throughout: a string of length `n` has domain
//! `{1, ..., n}` with `min = 1` and `max = n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A totally ordered, duplicate-free set of single-character symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let set: BTreeSet<char> = symbols.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet {
            symbols: set.into_iter().collect(),
        })
    }

    /// The alphabet of all characters occurring in `text`.
    pub fn inferred(text: &str) -> Result<Self> {
        Self::new(text.chars())
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.binary_search(&c).is_ok()
    }

    /// All strings of exactly `len` symbols, in lexicographic order.
    pub fn strings_of_len(&self, len: usize) -> Vec<Vec<char>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * self.symbols.len());
            for prefix in &out {
                for &c in &self.symbols {
                    let mut s = prefix.clone();
                    s.push(c);
                    next.push(s);
                }
            }
            out = next;
        }
        out
    }
}

/// A nonempty string together with its alphabet, treated as a finite
/// structure with successor, labels, and the constants `min`/`max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringStructure {
    symbols: Vec<char>,
    alphabet: Alphabet,
}

impl StringStructure {
    pub fn new(text: &str, alphabet: Alphabet) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyString);
        }
        let symbols: Vec<char> = text.chars().collect();
        for &c in &symbols {
            if !alphabet.contains(c) {
                return Err(Error::UnknownSymbol(c));
            }
        }
        Ok(StringStructure { symbols, alphabet })
    }

    /// Builds the structure with the alphabet inferred from the text itself.
    pub fn parse(text: &str) -> Result<Self> {
        let alphabet = Alphabet::inferred(text)?;
        Self::new(text, alphabet)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Symbol at a 1-based position.
    pub fn symbol_at(&self, pos: usize) -> char {
        self.symbols[pos - 1]
    }

    pub fn text(&self) -> String {
        self.symbols.iter().collect()
    }

    /// First `min(k, |w|)` symbols. `k = 0` is a contract violation.
    pub fn prefix(&self, k: usize) -> &[char] {
        assert!(k >= 1, "prefix length must be at least 1");
        &self.symbols[..k.min(self.symbols.len())]
    }

    /// Last `min(k, |w|)` symbols. `k = 0` is a contract violation.
    pub fn suffix(&self, k: usize) -> &[char] {
        assert!(k >= 1, "suffix length must be at least 1");
        let n = self.symbols.len();
        &self.symbols[n - k.min(n)..]
    }

    /// Positions where `alpha` occurs centered and free: the window fits at
    /// the center and both margins to `min` and `max` are strictly larger
    /// than `2^{q-1}`.
    pub fn free_occurrences(&self, alpha: &[char]) -> Result<OccurrenceSet> {
        let q = alpha_rank(alpha)?;
        let half = 1usize << (q - 1); // 2^{q-1}
        let n = self.symbols.len();
        let mut positions = Vec::new();
        for center in 1..=n {
            if center <= half + 1 || n < center + half + 1 {
                continue;
            }
            // window is center - (half - 1) ..= center + (half - 1)
            let start = center - (half - 1);
            if self.symbols[start - 1..start - 1 + alpha.len()] == *alpha {
                positions.push(center);
            }
        }
        Ok(OccurrenceSet { positions })
    }

    /// Free multiplicity of `alpha`.
    pub fn gamma(&self, alpha: &[char]) -> Result<usize> {
        Ok(self.free_occurrences(alpha)?.len())
    }

    /// Free scattering of `alpha`: segment count of the `2^q`-segmentation
    /// of its free occurrences.
    pub fn sigma(&self, alpha: &[char]) -> Result<usize> {
        let q = alpha_rank(alpha)?;
        let occ = self.free_occurrences(alpha)?;
        Ok(l_segmentation(&occ, 1usize << q).len())
    }
}

impl fmt::Display for StringStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// A strictly increasing set of 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceSet {
    positions: Vec<usize>,
}

impl OccurrenceSet {
    /// Positions must be strictly increasing.
    pub fn from_sorted(positions: Vec<usize>) -> Self {
        assert!(
            positions.windows(2).all(|w| w[0] < w[1]),
            "positions must be strictly increasing"
        );
        OccurrenceSet { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Returns `q` such that `|alpha| = 2^q - 1`, or an error.
pub fn alpha_rank(alpha: &[char]) -> Result<u32> {
    let len = alpha.len();
    if len > 0 && (len + 1).is_power_of_two() {
        Ok((len + 1).trailing_zeros())
    } else {
        Err(Error::InvalidAlpha(alpha.iter().collect(), len))
    }
}

/// Minimum-cardinality partition of `occ` into contiguous segments whose
/// width (max - min) is at most `l`. Greedy left-to-right: open a new
/// segment when the incoming position falls outside the current window.
pub fn l_segmentation(occ: &OccurrenceSet, l: usize) -> Vec<OccurrenceSet> {
    assert!(l >= 1, "segment width bound must be at least 1");
    let mut segments: Vec<OccurrenceSet> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for &p in occ.positions() {
        if let Some(&first) = current.first() {
            if p - first > l {
                segments.push(OccurrenceSet { positions: std::mem::take(&mut current) });
            }
        }
        current.push(p);
    }
    if !current.is_empty() {
        segments.push(OccurrenceSet { positions: current });
    }
    segments
}

/// Every `alpha` of length `2^q - 1` with at least one free occurrence in
/// `u` or `v`. Any other pattern has `gamma = sigma = 0` in both strings.
pub fn candidate_alphas(u: &StringStructure, v: &StringStructure) -> BTreeSet<Vec<char>> {
    let mut out = BTreeSet::new();
    for w in [u, v] {
        let n = w.len();
        let mut q = 1u32;
        loop {
            let len = (1usize << q) - 1;
            if len > n {
                break;
            }
            let half = 1usize << (q - 1);
            for center in half + 2..=n.saturating_sub(half + 1) {
                let start = center - (half - 1);
                out.insert(w.symbols()[start - 1..start - 1 + len].to_vec());
            }
            q += 1;
        }
    }
    out
}

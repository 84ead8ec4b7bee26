//! Synthesis of a minimal-rank separating sentence from a classified
//! sample, plus disjunct minimization.

use std::collections::BTreeSet;

use crate::distinguish::{phi_set, phi_union};
use crate::efgame::efsim;
use crate::error::{Error, Result};
use crate::formulas::{expand, size_core, MacroFormula};
use crate::semantics::eval_macro;
use crate::strings::{Alphabet, StringStructure};

/// A classified sample: positives, negatives, and a shared alphabet. The
/// two classes are disjoint and entries are deduplicated in order.
#[derive(Debug, Clone)]
pub struct Sample {
    positives: Vec<StringStructure>,
    negatives: Vec<StringStructure>,
    alphabet: Alphabet,
}

impl Sample {
    /// Builds a sample over the given alphabet, or over the alphabet
    /// inferred from the strings themselves when `alphabet` is `None`.
    pub fn new(
        positives: &[String],
        negatives: &[String],
        alphabet: Option<Alphabet>,
    ) -> Result<Self> {
        if positives.is_empty() && negatives.is_empty() {
            return Err(Error::EmptySample);
        }
        let alphabet = match alphabet {
            Some(a) => a,
            None => Alphabet::new(
                positives.iter().chain(negatives).flat_map(|s| s.chars()),
            )?,
        };
        let mut seen = BTreeSet::new();
        let mut build = |texts: &[String]| -> Result<Vec<StringStructure>> {
            let mut out = Vec::new();
            for t in texts {
                if seen.insert(t.clone()) {
                    out.push(StringStructure::new(t, alphabet.clone())?);
                }
            }
            Ok(out)
        };
        let positives = build(positives)?;
        for t in negatives {
            if positives.iter().any(|p| p.text() == *t) {
                return Err(Error::InconsistentSample(t.clone()));
            }
        }
        let negatives = build(negatives)?;
        Ok(Sample { positives, negatives, alphabet })
    }

    pub fn positives(&self) -> &[StringStructure] {
        &self.positives
    }

    pub fn negatives(&self) -> &[StringStructure] {
        &self.negatives
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

/// A synthesized hypothesis in disjunctive form, one disjunct per retained
/// positive, each a conjunction of distinguishability formulas.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub disjuncts: Vec<Vec<MacroFormula>>,
    pub rank: u32,
    pub minimized: bool,
    /// True when minimization fell back to the greedy cover, so the
    /// disjunct count is an upper bound rather than the exact minimum.
    pub greedy_fallback: bool,
}

impl Hypothesis {
    pub fn to_macro(&self) -> MacroFormula {
        MacroFormula::Or {
            args: self
                .disjuncts
                .iter()
                .map(|c| MacroFormula::And { args: c.clone() })
                .collect(),
        }
        .normalized()
    }
}

impl MacroFormula {
    fn normalized(self) -> MacroFormula {
        match self {
            MacroFormula::Or { args } => {
                MacroFormula::or(args.into_iter().map(|a| a.normalized()).collect())
            }
            MacroFormula::And { args } => {
                MacroFormula::and(args.into_iter().map(|a| a.normalized()).collect())
            }
            other => other,
        }
    }
}

/// Deterministic choice from a nonempty candidate set: lowest quantifier
/// rank, then smallest expansion, then lexicographically least
/// serialization.
pub fn choose_formula<'a>(
    candidates: impl IntoIterator<Item = &'a MacroFormula>,
) -> Result<MacroFormula> {
    candidates
        .into_iter()
        .min_by_key(|m| (m.qr(), size_core(&expand(m)), m.serialize()))
        .cloned()
        .ok_or(Error::EmptySet)
}

/// Minimal rank at which some sentence separates the sample: the largest
/// pairwise similarity over positive/negative cross pairs.
pub fn minimal_rank(sample: &Sample) -> Result<u32> {
    let mut r = 0;
    for u in sample.positives() {
        for v in sample.negatives() {
            if u.symbols() == v.symbols() {
                return Err(Error::InconsistentSample(u.text()));
            }
            r = r.max(efsim(u, v)?);
        }
    }
    Ok(r)
}

/// Synthesizes a consistent sentence of minimal quantifier rank: one
/// disjunct per positive, one chosen distinguishing conjunct per negative.
pub fn synthesize(sample: &Sample) -> Result<Hypothesis> {
    let rank = minimal_rank(sample)?;
    let mut disjuncts = Vec::new();
    for u in sample.positives() {
        let mut conjuncts = Vec::new();
        for v in sample.negatives() {
            conjuncts.push(choose_formula(phi_set(u, v, rank)?.formulas())?);
        }
        conjuncts.sort_by_key(|m| m.serialize());
        conjuncts.dedup();
        disjuncts.push(conjuncts);
    }
    Ok(Hypothesis { disjuncts, rank, minimized: false, greedy_fallback: false })
}

/// Strings the formula misclassifies, per class.
#[derive(Debug, Clone, Default)]
pub struct ConsistencyReport {
    /// Positives on which the formula is false.
    pub false_negatives: Vec<String>,
    /// Negatives on which the formula is true.
    pub false_positives: Vec<String>,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.false_negatives.is_empty() && self.false_positives.is_empty()
    }
}

pub fn check_consistent(sample: &Sample, formula: &MacroFormula) -> ConsistencyReport {
    ConsistencyReport {
        false_negatives: sample
            .positives()
            .iter()
            .filter(|u| !eval_macro(u, formula))
            .map(|u| u.text())
            .collect(),
        false_positives: sample
            .negatives()
            .iter()
            .filter(|v| eval_macro(v, formula))
            .map(|v| v.text())
            .collect(),
    }
}

/// Synthesizes with a minimal number of disjuncts at the minimal rank.
///
/// A subset of positives is *coverable* when the conjunction of every
/// pooled formula true on all of them still excludes every negative. Up to
/// `exact_limit` positives (hard-capped at 16), the disjunct count is the
/// exact minimum cover of the positives by coverable subsets; beyond that a
/// greedy cover over per-positive relaxed conjunctions is used instead.
pub fn synthesize_minimized(sample: &Sample, exact_limit: usize) -> Result<Hypothesis> {
    let rank = minimal_rank(sample)?;
    if sample.positives().is_empty() {
        return Ok(Hypothesis {
            disjuncts: Vec::new(),
            rank,
            minimized: true,
            greedy_fallback: false,
        });
    }
    let pool: Vec<MacroFormula> = phi_union(sample)?.formulas().cloned().collect();
    if sample.positives().len() <= exact_limit.min(16) {
        exact_minimize(sample, &pool, rank)
    } else {
        greedy_minimize(sample, &pool, rank)
    }
}

fn excludes_all(negatives: &[StringStructure], conjuncts: &[MacroFormula]) -> bool {
    negatives
        .iter()
        .all(|v| conjuncts.iter().any(|f| !eval_macro(v, f)))
}

/// Drops conjuncts that are not needed to keep every negative excluded.
fn prune(negatives: &[StringStructure], mut conjuncts: Vec<MacroFormula>) -> Vec<MacroFormula> {
    let mut i = 0;
    while i < conjuncts.len() {
        let mut trimmed = conjuncts.clone();
        trimmed.remove(i);
        if excludes_all(negatives, &trimmed) {
            conjuncts = trimmed;
        } else {
            i += 1;
        }
    }
    conjuncts
}

/// Exact minimum-disjunct cover by dynamic programming over subsets of the
/// positive set.
fn exact_minimize(sample: &Sample, pool: &[MacroFormula], rank: u32) -> Result<Hypothesis> {
    let positives = sample.positives();
    let negatives = sample.negatives();
    let p = positives.len();
    let size = 1usize << p;
    let full = size - 1;

    // bit i of a formula's mask: true on positives[i]
    let pos_masks: Vec<usize> = pool
        .iter()
        .map(|f| {
            positives
                .iter()
                .enumerate()
                .filter(|(_, u)| eval_macro(u, f))
                .fold(0usize, |mask, (i, _)| mask | 1 << i)
        })
        .collect();

    // a group is coverable iff for every negative some pooled formula is
    // true on the whole group and false on that negative
    let mut coverable = vec![true; size];
    for v in negatives {
        let mut ok = vec![false; size];
        for (f, &mask) in pool.iter().zip(&pos_masks) {
            if !eval_macro(v, f) {
                ok[mask] = true;
            }
        }
        // downward closure: a subset of a good mask is good
        for i in 0..p {
            let bit = 1usize << i;
            for g in 0..size {
                if g & bit == 0 && ok[g | bit] {
                    ok[g] = true;
                }
            }
        }
        for g in 0..size {
            coverable[g] &= ok[g];
        }
    }

    // dp[g] = (cover size, last group, previous g); the last group always
    // contains the lowest uncovered position, so each cover is tried once
    let mut dp: Vec<Option<(usize, usize, usize)>> = vec![None; size];
    dp[0] = Some((0, 0, 0));
    for g in 0..full {
        let Some((count, _, _)) = dp[g] else { continue };
        let low = 1usize << (!g & full).trailing_zeros();
        let rest = !g & full;
        let mut s = rest;
        loop {
            if s & low != 0 && coverable[s] {
                let next = g | s;
                if dp[next].is_none_or(|(c, ..)| count + 1 < c) {
                    dp[next] = Some((count + 1, s, g));
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
    }
    let Some(_) = dp[full] else {
        // single positives are always coverable: their maximal conjunction
        // contains a distinguishing formula per negative
        return Err(Error::InconsistentSample(
            "no disjunct cover exists for the sample".into(),
        ));
    };

    let mut groups = Vec::new();
    let mut g = full;
    while g != 0 {
        let (_, s, prev) = dp[g].expect("reachable state");
        groups.push(s);
        g = prev;
    }
    groups.reverse();

    let mut disjuncts = Vec::new();
    for s in groups {
        let conjuncts: Vec<MacroFormula> = pool
            .iter()
            .zip(&pos_masks)
            .filter(|&(_, &mask)| mask & s == s)
            .map(|(f, _)| f.clone())
            .collect();
        debug_assert!(excludes_all(negatives, &conjuncts));
        let mut b = prune(negatives, conjuncts);
        b.sort_by_key(|m| m.serialize());
        b.dedup();
        disjuncts.push(b);
    }
    Ok(Hypothesis { disjuncts, rank, minimized: true, greedy_fallback: false })
}

/// Greedy cover for large positive sets: per-positive maximal conjunctions
/// relaxed to cover more positives while every negative stays excluded,
/// then largest-gain-first selection.
fn greedy_minimize(sample: &Sample, pool: &[MacroFormula], rank: u32) -> Result<Hypothesis> {
    let positives = sample.positives();
    let negatives = sample.negatives();
    if positives.len() > 128 {
        return Err(Error::Capacity(
            "minimization supports at most 128 positive strings".into(),
        ));
    }
    let covered = |conjuncts: &[MacroFormula], u: &StringStructure| {
        conjuncts.iter().all(|f| eval_macro(u, f))
    };

    let mut candidates: Vec<Vec<MacroFormula>> = Vec::new();
    for u in positives {
        let mut b: Vec<MacroFormula> =
            pool.iter().filter(|f| eval_macro(u, f)).cloned().collect();
        debug_assert!(excludes_all(negatives, &b));
        for u2 in positives {
            if covered(&b, u2) {
                continue;
            }
            let relaxed: Vec<MacroFormula> =
                b.iter().filter(|f| eval_macro(u2, f)).cloned().collect();
            if excludes_all(negatives, &relaxed) {
                b = relaxed;
            }
        }
        candidates.push(b);
    }

    let coverage: Vec<u128> = candidates
        .iter()
        .map(|b| {
            positives
                .iter()
                .enumerate()
                .filter(|(_, u)| covered(b, u))
                .fold(0u128, |mask, (i, _)| mask | 1 << i)
        })
        .collect();

    let full: u128 = if positives.len() == 128 {
        u128::MAX
    } else {
        (1u128 << positives.len()) - 1
    };
    let mut chosen = Vec::new();
    let mut done = 0u128;
    while done != full {
        let (idx, _) = coverage
            .iter()
            .enumerate()
            .max_by_key(|(i, m)| ((*m & !done).count_ones(), std::cmp::Reverse(*i)))
            .expect("at least one candidate");
        assert!(coverage[idx] & !done != 0, "cover must make progress");
        done |= coverage[idx];
        chosen.push(idx);
    }

    let mut disjuncts = Vec::new();
    for idx in chosen {
        let mut b = prune(negatives, candidates[idx].clone());
        b.sort_by_key(|m| m.serialize());
        b.dedup();
        disjuncts.push(b);
    }
    Ok(Hypothesis { disjuncts, rank, minimized: true, greedy_fallback: true })
}

//! Enumeration of the distinguishability-formula sets: for strings `u`,
//! `v` and a rank `r`, every emitted sentence holds on `u`, fails on `v`,
//! and has quantifier rank between `efsim(u, v)` and `r`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::formulas::{CountOp, DistOp, EqOp, MacroFormula};
use crate::strings::{alpha_rank, candidate_alphas, StringStructure};
use crate::synthesis::Sample;

/// Which of the four families an element came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Length,
    Pref,
    Suff,
    Sub,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Length => "length",
            Family::Pref => "pref",
            Family::Suff => "suff",
            Family::Sub => "sub",
        };
        write!(f, "{name}")
    }
}

/// An ordered, duplicate-free collection of distinguishability formulas
/// with per-element provenance.
#[derive(Debug, Clone, Default)]
pub struct DistinguishabilitySet {
    items: Vec<(MacroFormula, Family)>,
}

impl DistinguishabilitySet {
    pub fn iter(&self) -> impl Iterator<Item = &(MacroFormula, Family)> {
        self.items.iter()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &MacroFormula> {
        self.items.iter().map(|(m, _)| m)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, m: &MacroFormula) -> bool {
        self.items.iter().any(|(f, _)| f == m)
    }

    fn from_tagged(items: Vec<(MacroFormula, Family)>) -> Self {
        let mut seen = BTreeSet::new();
        let mut sorted: Vec<(MacroFormula, Family)> = items
            .into_iter()
            .filter(|(m, _)| seen.insert(m.serialize()))
            .collect();
        sorted.sort_by(|a, b| (a.1, a.0.serialize()).cmp(&(b.1, b.0.serialize())));
        DistinguishabilitySet { items: sorted }
    }
}

/// The set of distinguishability formulas for `(u, v)` at rank `r`;
/// nonempty exactly when the Spoiler wins the r-round game.
pub fn phi_set(
    u: &StringStructure,
    v: &StringStructure,
    r: u32,
) -> Result<DistinguishabilitySet> {
    if u.symbols() == v.symbols() {
        return Err(Error::UndefinedSimilarity);
    }
    let bound = 1u64.checked_shl(r).unwrap_or(u64::MAX);
    let mut items: Vec<(MacroFormula, Family)> = Vec::new();

    // length family
    let (ul, vl) = (u.len() as u64, v.len() as u64);
    if ul < vl {
        let hi = bound.min(vl.saturating_sub(2));
        for n in ul - 1..=hi {
            items.push((MacroFormula::Dist { cmp: DistOp::Le, n: n as u32 }, Family::Length));
        }
    } else if ul > vl {
        let hi = bound.saturating_add(1).min(ul - 1);
        for n in vl..=hi {
            items.push((MacroFormula::Dist { cmp: DistOp::Ge, n: n as u32 }, Family::Length));
        }
    }

    // prefix and suffix families; k never exceeds either length here
    let k_max = bound.min(ul.min(vl)) as usize;
    for k in 1..=k_max {
        if u.prefix(k) != v.prefix(k) {
            items.push((
                MacroFormula::Pref { cmp: EqOp::Eq, k: k as u32, s: u.prefix(k).iter().collect() },
                Family::Pref,
            ));
            items.push((
                MacroFormula::Pref { cmp: EqOp::Ne, k: k as u32, s: v.prefix(k).iter().collect() },
                Family::Pref,
            ));
        }
        if u.suffix(k) != v.suffix(k) {
            items.push((
                MacroFormula::Suff { cmp: EqOp::Eq, k: k as u32, s: u.suffix(k).iter().collect() },
                Family::Suff,
            ));
            items.push((
                MacroFormula::Suff { cmp: EqOp::Ne, k: k as u32, s: v.suffix(k).iter().collect() },
                Family::Suff,
            ));
        }
    }

    // substring family
    for alpha in candidate_alphas(u, v) {
        let q = alpha_rank(&alpha).expect("candidates have valid lengths");
        if q > r {
            continue;
        }
        let window_hi = (r - q + 1) as u64;
        let su = u.sigma(&alpha).expect("valid alpha") as u64;
        let sv = v.sigma(&alpha).expect("valid alpha") as u64;
        let gu = u.gamma(&alpha).expect("valid alpha") as u64;
        let gv = v.gamma(&alpha).expect("valid alpha") as u64;
        let alpha: String = alpha.iter().collect();

        let mut push = |cmp: CountOp, lo: u64, hi: u64| {
            for n in lo + 1..=hi {
                items.push((
                    MacroFormula::Sigma { cmp, alpha: alpha.clone(), n: n as u32 },
                    Family::Sub,
                ));
            }
        };
        if su > sv {
            push(CountOp::Ge, sv, window_hi.min(su));
        } else if su < sv {
            push(CountOp::Lt, su, window_hi.min(sv));
        }
        let mut push = |cmp: CountOp, lo: u64, hi: u64| {
            for n in lo + 1..=hi {
                items.push((
                    MacroFormula::Gamma { cmp, alpha: alpha.clone(), n: n as u32 },
                    Family::Sub,
                ));
            }
        };
        if gu > gv {
            push(CountOp::Ge, gv, window_hi.min(gu));
        } else if gu < gv {
            push(CountOp::Lt, gu, window_hi.min(gv));
        }
    }

    Ok(DistinguishabilitySet::from_tagged(items))
}

/// Union of the pairwise sets at `r = max efsim` over all cross pairs of
/// the sample.
pub fn phi_union(sample: &Sample) -> Result<DistinguishabilitySet> {
    let mut r = 0u32;
    for u in sample.positives() {
        for v in sample.negatives() {
            if u.symbols() == v.symbols() {
                return Err(Error::InconsistentSample(u.text()));
            }
            r = r.max(crate::efgame::efsim(u, v)?);
        }
    }
    let mut items = Vec::new();
    for u in sample.positives() {
        for v in sample.negatives() {
            items.extend(phi_set(u, v, r)?.items);
        }
    }
    Ok(DistinguishabilitySet::from_tagged(items))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::eval_macro;

    fn pair(u: &str, v: &str) -> (StringStructure, StringStructure) {
        let alphabet =
            crate::strings::Alphabet::new(u.chars().chain(v.chars())).unwrap();
        (
            StringStructure::new(u, alphabet.clone()).unwrap(),
            StringStructure::new(v, alphabet).unwrap(),
        )
    }

    #[test]
    fn identical_strings_have_no_set() {
        let (u, v) = pair("ab", "ab");
        assert!(matches!(phi_set(&u, &v, 3), Err(Error::UndefinedSimilarity)));
    }

    #[test]
    fn set_is_empty_below_the_similarity() {
        let (u, v) = pair("aaacbbb", "aaabbbbb");
        assert!(phi_set(&u, &v, 0).unwrap().is_empty());
        assert!(!phi_set(&u, &v, 1).unwrap().is_empty());
    }

    #[test]
    fn every_member_separates_the_pair_within_rank() {
        for (u, v) in [("aaacbbb", "aaabbbbb"), ("bbaaaaaaaabb", "bbaaaaaabb"), ("ab", "ba")] {
            let (u, v) = pair(u, v);
            let r = crate::efgame::efsim(&u, &v).unwrap().max(1) + 1;
            let set = phi_set(&u, &v, r).unwrap();
            assert!(!set.is_empty());
            for m in set.formulas() {
                assert!(eval_macro(&u, m), "{} should satisfy {m:?}", u.text());
                assert!(!eval_macro(&v, m), "{} should falsify {m:?}", v.text());
                assert!(m.qr() <= r, "{m:?} exceeds rank {r}");
            }
        }
    }

    #[test]
    fn rank_two_set_for_the_length_three_pair() {
        let (u, v) = pair("aaacbbb", "aaabbbbb");
        let set = phi_set(&u, &v, 2).unwrap();
        // no length member fits: the window needs rank 3
        assert!(set.iter().all(|(_, f)| *f != Family::Length));
        assert!(set.contains(&MacroFormula::Gamma {
            cmp: CountOp::Ge,
            alpha: "c".into(),
            n: 1
        }));
        assert!(set.contains(&MacroFormula::Gamma {
            cmp: CountOp::Lt,
            alpha: "bbb".into(),
            n: 1
        }));
    }

    #[test]
    fn rank_four_set_for_the_long_block_pair() {
        let (u, v) = pair("bbaaaaaaaabb", "bbaaaaaabb");
        let set = phi_set(&u, &v, 4).unwrap();
        assert!(set.contains(&MacroFormula::Sigma {
            cmp: CountOp::Ge,
            alpha: "aaa".into(),
            n: 2
        }));
        assert!(set.contains(&MacroFormula::Dist { cmp: DistOp::Ge, n: 10 }));
        assert!(set.contains(&MacroFormula::Dist { cmp: DistOp::Ge, n: 11 }));
        assert!(!set.contains(&MacroFormula::Dist { cmp: DistOp::Ge, n: 12 }));
    }

    #[test]
    fn ordering_is_deterministic_and_duplicate_free() {
        let (u, v) = pair("aaacbbb", "aaabbbbb");
        let a = phi_set(&u, &v, 3).unwrap();
        let b = phi_set(&u, &v, 3).unwrap();
        let keys: Vec<String> = a.formulas().map(|m| m.serialize()).collect();
        let again: Vec<String> = b.formulas().map(|m| m.serialize()).collect();
        assert_eq!(keys, again);
        let mut dedup = keys.clone();
        dedup.dedup();
        assert_eq!(keys, dedup);
    }
}

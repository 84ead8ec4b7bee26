//! Polynomial-time game answers on strings: the four similarity
//! components, their minimum, the winner predicate, and the rank-r
//! characteristic sentence of a string.

use crate::error::{Error, Result};
use crate::formulas::{ceil_log2, CountOp, DistOp, EqOp, MacroFormula};
use crate::strings::{alpha_rank, candidate_alphas, StringStructure};

/// The four similarity components; `None` means the component does not
/// apply (conventionally +infinity).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimComponents {
    pub length: Option<u32>,
    pub pref: Option<u32>,
    pub suff: Option<u32>,
    pub sub: Option<u32>,
}

impl SimComponents {
    pub fn min(&self) -> Option<u32> {
        [self.length, self.pref, self.suff, self.sub]
            .into_iter()
            .flatten()
            .min()
    }
}

/// `2^r`, saturating far beyond any usable string length.
fn pow2(r: u32) -> u64 {
    1u64.checked_shl(r).unwrap_or(u64::MAX)
}

pub fn sim_components(u: &StringStructure, v: &StringStructure) -> Result<SimComponents> {
    if u.symbols() == v.symbols() {
        return Err(Error::UndefinedSimilarity);
    }

    let length = if u.len() == v.len() {
        None
    } else {
        let shorter = u.len().min(v.len());
        // a one-symbol string differs from any longer one at the constants
        Some(if shorter <= 2 { 0 } else { ceil_log2(shorter as u32 - 1) })
    };

    let longest = u.len().max(v.len());
    let pref = (1..=longest)
        .find(|&k| u.prefix(k) != v.prefix(k))
        .map(|k| ceil_log2(k as u32));
    let suff = (1..=longest)
        .find(|&k| u.suffix(k) != v.suffix(k))
        .map(|k| ceil_log2(k as u32));

    let mut sub: Option<u32> = None;
    for alpha in candidate_alphas(u, v) {
        let q = alpha_rank(&alpha).expect("candidates have valid lengths");
        let su = u.sigma(&alpha).expect("valid alpha") as u32;
        let sv = v.sigma(&alpha).expect("valid alpha") as u32;
        let gu = u.gamma(&alpha).expect("valid alpha") as u32;
        let gv = v.gamma(&alpha).expect("valid alpha") as u32;
        if su != sv || gu != gv {
            let value = q + su.min(sv);
            sub = Some(sub.map_or(value, |s| s.min(value)));
        }
    }

    Ok(SimComponents { length, pref, suff, sub })
}

/// Minimum number of rounds for which the Spoiler has a winning strategy;
/// finite whenever the strings differ.
pub fn efsim(u: &StringStructure, v: &StringStructure) -> Result<u32> {
    let components = sim_components(u, v)?;
    components.min().ok_or(Error::UndefinedSimilarity)
}

/// The winner predicate, evaluated directly from the three
/// characterization conditions. For identical strings the Duplicator wins
/// every game.
pub fn duplicator_wins(u: &StringStructure, v: &StringStructure, r: u32) -> bool {
    if u.symbols() == v.symbols() {
        return true;
    }
    let bound = pow2(r);
    let du = u.len() as u64 - 1;
    let dv = v.len() as u64 - 1;
    if !(du == dv || (du > bound && dv > bound)) {
        return false;
    }

    let k = bound.min(u.len().max(v.len()) as u64) as usize;
    if u.prefix(k) != v.prefix(k) || u.suffix(k) != v.suffix(k) {
        return false;
    }

    for alpha in candidate_alphas(u, v) {
        let q = alpha_rank(&alpha).expect("candidates have valid lengths");
        let su = u.sigma(&alpha).expect("valid alpha") as u32;
        let sv = v.sigma(&alpha).expect("valid alpha") as u32;
        let gu = u.gamma(&alpha).expect("valid alpha") as u32;
        let gv = v.gamma(&alpha).expect("valid alpha") as u32;
        if (su != sv || gu != gv) && (su + q <= r || sv + q <= r) {
            return false;
        }
    }
    true
}

/// The rank-r characteristic sentence of `w`: exactly the strings on which
/// the Duplicator wins the r-round game against `w` satisfy it.
///
/// The substring part ranges over the full `Sigma^{2^q - 1}` grid for
/// `q <= r` (absence constraints matter); `sigma_cap` bounds the number of
/// enumerated patterns.
pub fn r_type(w: &StringStructure, r: u32, sigma_cap: usize) -> Result<MacroFormula> {
    if r >= 31 {
        return Err(Error::Capacity(format!("rank {r} is out of range for r-type")));
    }
    let bound = 1u64 << r;
    let mut conjuncts = Vec::new();

    conjuncts.push(if (w.len() as u64) <= bound + 1 {
        MacroFormula::Dist { cmp: DistOp::Eq, n: w.len() as u32 - 1 }
    } else {
        MacroFormula::Dist { cmp: DistOp::Gt, n: bound as u32 }
    });

    let k = (bound as usize).min(w.len());
    conjuncts.push(MacroFormula::Pref {
        cmp: EqOp::Eq,
        k: k as u32,
        s: w.prefix(k).iter().collect(),
    });
    conjuncts.push(MacroFormula::Suff {
        cmp: EqOp::Eq,
        k: k as u32,
        s: w.suffix(k).iter().collect(),
    });

    let mut enumerated = 0usize;
    for q in 1..=r {
        let len = (1usize << q) - 1;
        enumerated = enumerated.saturating_add(w.alphabet().len().pow(len as u32));
        if enumerated > sigma_cap {
            return Err(Error::Capacity(format!(
                "r-type enumeration exceeds the cap of {sigma_cap} patterns"
            )));
        }
        for alpha in w.alphabet().strings_of_len(len) {
            let sigma = w.sigma(&alpha).expect("grid alphas are valid") as u32;
            let gamma = w.gamma(&alpha).expect("grid alphas are valid") as u32;
            let alpha: String = alpha.iter().collect();
            if q + sigma <= r {
                conjuncts.push(count_eq(true, &alpha, sigma));
                conjuncts.push(count_eq(false, &alpha, gamma));
            } else {
                conjuncts.push(MacroFormula::Sigma {
                    cmp: CountOp::Ge,
                    alpha,
                    n: r - q + 1,
                });
            }
        }
    }
    Ok(MacroFormula::and(conjuncts))
}

/// `sigma(alpha) = n` or `gamma(alpha) = n`, expressing `= 0` as the
/// negation of `>= 1` to respect the positive-count leaf invariant.
fn count_eq(is_sigma: bool, alpha: &str, n: u32) -> MacroFormula {
    let leaf = |cmp, n| {
        if is_sigma {
            MacroFormula::Sigma { cmp, alpha: alpha.to_string(), n }
        } else {
            MacroFormula::Gamma { cmp, alpha: alpha.to_string(), n }
        }
    };
    if n == 0 {
        MacroFormula::not(leaf(CountOp::Ge, 1))
    } else {
        leaf(CountOp::Eq, n)
    }
}

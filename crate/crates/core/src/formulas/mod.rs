//! The two formula representations: macro templates with closed-form
//! quantifier ranks, and the core first-order AST they expand into.

mod build;
mod render;

pub use build::{
    build_boundary, build_centered, build_dist, build_gamma_ge, build_infix, build_sigma_ge,
    expand, Boundary, Placement,
};
pub use render::{render_core, render_macro, CoreStyle};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strings::alpha_rank;

/// A term of the vocabulary: a variable or one of the constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Min,
    Max,
}

/// First-order formulas over `{S, (P_a), min, max, =}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreFormula {
    Equal(Term, Term),
    Succ(Term, Term),
    Label(char, Term),
    Not(Box<CoreFormula>),
    And(Vec<CoreFormula>),
    Or(Vec<CoreFormula>),
    Exists(String, Box<CoreFormula>),
    Forall(String, Box<CoreFormula>),
    True,
    False,
}

/// Comparison operators available on the distance leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DistOp {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "=")]
    Eq,
}

/// Equality or inequality, for prefix/suffix leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EqOp {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
}

/// Comparison operators available on counting leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CountOp {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "=")]
    Eq,
}

/// Boolean combinations of the named sentence templates. Each leaf has a
/// closed-form quantifier rank and a polynomial-time evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MacroFormula {
    And { args: Vec<MacroFormula> },
    Or { args: Vec<MacroFormula> },
    Not { arg: Box<MacroFormula> },
    True,
    False,
    /// `d(min, max) cmp n`, i.e. `|w| cmp n + 1`.
    Dist { cmp: DistOp, n: u32 },
    /// The prefix of length `k` equals (or differs from) `s`.
    Pref { cmp: EqOp, k: u32, s: String },
    Suff { cmp: EqOp, k: u32, s: String },
    /// Free multiplicity of `alpha` compared with `n >= 1`.
    Gamma { cmp: CountOp, alpha: String, n: u32 },
    /// Free scattering of `alpha` compared with `n >= 1`.
    Sigma { cmp: CountOp, alpha: String, n: u32 },
}

impl MacroFormula {
    /// N-ary conjunction with flattening and constant absorption. Empty
    /// input is `True`.
    pub fn and(args: Vec<MacroFormula>) -> MacroFormula {
        let mut flat = Vec::new();
        for a in args {
            match a {
                MacroFormula::And { args } => flat.extend(args),
                MacroFormula::True => {}
                MacroFormula::False => return MacroFormula::False,
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => MacroFormula::True,
            1 => flat.pop().unwrap(),
            _ => MacroFormula::And { args: flat },
        }
    }

    /// N-ary disjunction with flattening and constant absorption. Empty
    /// input is `False`.
    pub fn or(args: Vec<MacroFormula>) -> MacroFormula {
        let mut flat = Vec::new();
        for a in args {
            match a {
                MacroFormula::Or { args } => flat.extend(args),
                MacroFormula::False => {}
                MacroFormula::True => return MacroFormula::True,
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => MacroFormula::False,
            1 => flat.pop().unwrap(),
            _ => MacroFormula::Or { args: flat },
        }
    }

    pub fn not(arg: MacroFormula) -> MacroFormula {
        MacroFormula::Not { arg: Box::new(arg) }
    }

    /// Checks the leaf invariants: counts are positive, pattern lengths are
    /// of the form `2^q - 1`, and `|s| = k` on boundary leaves.
    pub fn validate(&self) -> Result<()> {
        match self {
            MacroFormula::And { args } | MacroFormula::Or { args } => {
                args.iter().try_for_each(|a| a.validate())
            }
            MacroFormula::Not { arg } => arg.validate(),
            MacroFormula::True | MacroFormula::False | MacroFormula::Dist { .. } => Ok(()),
            MacroFormula::Pref { k, s, .. } | MacroFormula::Suff { k, s, .. } => {
                if *k == 0 || s.chars().count() != *k as usize {
                    Err(Error::ArityMismatch {
                        expected: *k as usize,
                        got: s.chars().count(),
                    })
                } else {
                    Ok(())
                }
            }
            MacroFormula::Gamma { alpha, n, .. } | MacroFormula::Sigma { alpha, n, .. } => {
                let chars: Vec<char> = alpha.chars().collect();
                alpha_rank(&chars)?;
                if *n == 0 {
                    return Err(Error::ArityMismatch { expected: 1, got: 0 });
                }
                Ok(())
            }
        }
    }

    /// Closed-form quantifier rank; always equals `qr_core(expand(self))`.
    pub fn qr(&self) -> u32 {
        match self {
            MacroFormula::And { args } | MacroFormula::Or { args } => {
                args.iter().map(|a| a.qr()).max().unwrap_or(0)
            }
            MacroFormula::Not { arg } => arg.qr(),
            MacroFormula::True | MacroFormula::False => 0,
            MacroFormula::Dist { cmp, n } => match cmp {
                DistOp::Le | DistOp::Gt => qr_dist_le(*n),
                DistOp::Ge | DistOp::Lt => qr_dist_le(n.saturating_sub(1)),
                DistOp::Eq => qr_dist_le(*n),
            },
            MacroFormula::Pref { k, .. } | MacroFormula::Suff { k, .. } => ceil_log2(*k),
            MacroFormula::Gamma { cmp, alpha, n } | MacroFormula::Sigma { cmp, alpha, n } => {
                let q = alpha_rank(&alpha.chars().collect::<Vec<_>>())
                    .expect("leaf invariant: |alpha| = 2^q - 1");
                match cmp {
                    CountOp::Ge | CountOp::Lt => q + n - 1,
                    CountOp::Eq => q + n,
                }
            }
        }
    }

    /// Canonical serialization: byte-identical for equal formulas.
    pub fn serialize(&self) -> String {
        serde_json::to_string(self).expect("macro formulas serialize infallibly")
    }

    /// Parses the serialization format and checks the leaf invariants.
    pub fn deserialize(text: &str) -> Result<MacroFormula> {
        let m: MacroFormula =
            serde_json::from_str(text).map_err(|e| Error::Deserialize(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }
}

/// Rank of the recursive distance formula `d <= n`; the `n = 0` extension
/// (`t1 = t2`) is quantifier-free.
fn qr_dist_le(n: u32) -> u32 {
    if n <= 1 {
        0
    } else {
        ceil_log2(n)
    }
}

pub(crate) fn ceil_log2(n: u32) -> u32 {
    assert!(n >= 1);
    u32::BITS - (n - 1).leading_zeros()
}

/// Quantifier rank by structural recursion.
pub fn qr_core(f: &CoreFormula) -> u32 {
    match f {
        CoreFormula::Equal(..) | CoreFormula::Succ(..) | CoreFormula::Label(..) => 0,
        CoreFormula::True | CoreFormula::False => 0,
        CoreFormula::Not(inner) => qr_core(inner),
        CoreFormula::And(args) | CoreFormula::Or(args) => {
            args.iter().map(qr_core).max().unwrap_or(0)
        }
        CoreFormula::Exists(_, inner) | CoreFormula::Forall(_, inner) => qr_core(inner) + 1,
    }
}

/// Node count of the AST, used as the size measure.
pub fn size_core(f: &CoreFormula) -> usize {
    match f {
        CoreFormula::Equal(..) | CoreFormula::Succ(..) | CoreFormula::Label(..) => 1,
        CoreFormula::True | CoreFormula::False => 1,
        CoreFormula::Not(inner) => 1 + size_core(inner),
        CoreFormula::And(args) | CoreFormula::Or(args) => {
            1 + args.iter().map(size_core).sum::<usize>()
        }
        CoreFormula::Exists(_, inner) | CoreFormula::Forall(_, inner) => 1 + size_core(inner),
    }
}

/// Free variables of a core formula.
pub fn free_vars(f: &CoreFormula) -> Vec<String> {
    fn term(t: &Term, bound: &mut Vec<String>, out: &mut Vec<String>) {
        if let Term::Var(name) = t {
            if !bound.iter().any(|b| b == name) && !out.iter().any(|o| o == name) {
                out.push(name.clone());
            }
        }
    }
    fn walk(f: &CoreFormula, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match f {
            CoreFormula::Equal(t1, t2) | CoreFormula::Succ(t1, t2) => {
                term(t1, bound, out);
                term(t2, bound, out);
            }
            CoreFormula::Label(_, t) => term(t, bound, out),
            CoreFormula::Not(inner) => walk(inner, bound, out),
            CoreFormula::And(args) | CoreFormula::Or(args) => {
                args.iter().for_each(|a| walk(a, bound, out))
            }
            CoreFormula::Exists(x, inner) | CoreFormula::Forall(x, inner) => {
                bound.push(x.clone());
                walk(inner, bound, out);
                bound.pop();
            }
            CoreFormula::True | CoreFormula::False => {}
        }
    }
    let mut out = Vec::new();
    walk(f, &mut Vec::new(), &mut out);
    out
}

/// True when no bound variable name repeats along any root-to-leaf path.
pub fn bound_vars_unique(f: &CoreFormula) -> bool {
    fn walk(f: &CoreFormula, path: &mut Vec<String>) -> bool {
        match f {
            CoreFormula::Exists(x, inner) | CoreFormula::Forall(x, inner) => {
                if path.iter().any(|p| p == x) {
                    return false;
                }
                path.push(x.clone());
                let ok = walk(inner, path);
                path.pop();
                ok
            }
            CoreFormula::Not(inner) => walk(inner, path),
            CoreFormula::And(args) | CoreFormula::Or(args) => {
                args.iter().all(|a| walk(a, path))
            }
            _ => true,
        }
    }
    walk(f, &mut Vec::new())
}

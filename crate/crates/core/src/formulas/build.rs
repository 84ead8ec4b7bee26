//! Constructors for the core first-order formulas behind each macro
//! template. The recursions follow the halving scheme that keeps the
//! quantifier rank logarithmic, and every builder threads a fresh-variable
//! counter so bound names are unique along any path.

use crate::error::Result;
use crate::strings::alpha_rank;

use super::{CoreFormula, CountOp, DistOp, EqOp, MacroFormula, Term};

/// Deterministic fresh-variable source.
struct VarGen {
    next: usize,
}

impl VarGen {
    fn new() -> Self {
        VarGen { next: 0 }
    }

    fn fresh(&mut self) -> String {
        self.next += 1;
        format!("x{}", self.next)
    }
}

/// Which end of the string a boundary formula constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Pref,
    Suff,
}

/// Where an infix occurrence is anchored.
#[derive(Debug, Clone)]
pub enum Placement {
    /// The string strictly between the two terms.
    Between(Term, Term),
    /// Immediately on the right of the term.
    RightOf(Term),
    /// Immediately on the left of the term.
    LeftOf(Term),
}

/// `d(t1, t2) cmp n` in the successor direction: the formula holds iff
/// `pos(t2) - pos(t1)` lies in the interval the comparison describes.
pub fn build_dist(t1: Term, t2: Term, cmp: DistOp, n: u32) -> CoreFormula {
    dist(t1, t2, cmp, n, &mut VarGen::new())
}

fn dist(t1: Term, t2: Term, cmp: DistOp, n: u32, gen: &mut VarGen) -> CoreFormula {
    match cmp {
        DistOp::Le => dist_le(t1, t2, n, gen),
        DistOp::Gt => CoreFormula::Not(Box::new(dist_le(t1, t2, n, gen))),
        DistOp::Ge => {
            if n == 0 {
                CoreFormula::True
            } else {
                CoreFormula::Not(Box::new(dist_le(t1, t2, n - 1, gen)))
            }
        }
        DistOp::Lt => {
            if n == 0 {
                CoreFormula::False
            } else {
                // < n is the negation of >= n
                CoreFormula::Not(Box::new(CoreFormula::Not(Box::new(dist_le(
                    t1,
                    t2,
                    n - 1,
                    gen,
                )))))
            }
        }
        DistOp::Eq => {
            if n == 0 {
                dist_le(t1, t2, 0, gen)
            } else {
                CoreFormula::And(vec![
                    dist_le(t1.clone(), t2.clone(), n, gen),
                    CoreFormula::Not(Box::new(dist_le(t1, t2, n - 1, gen))),
                ])
            }
        }
    }
}

fn dist_le(t1: Term, t2: Term, n: u32, gen: &mut VarGen) -> CoreFormula {
    match n {
        // rank-0 extension of the recursion, needed by the >= 1 abbreviation
        0 => CoreFormula::Equal(t1, t2),
        1 => CoreFormula::Or(vec![
            CoreFormula::Equal(t1.clone(), t2.clone()),
            CoreFormula::Succ(t1, t2),
        ]),
        _ => {
            let y = gen.fresh();
            let mid = Term::Var(y.clone());
            let left = dist_le(t1, mid.clone(), n / 2, gen);
            let right = dist_le(mid, t2, n.div_ceil(2), gen);
            CoreFormula::Exists(y, Box::new(CoreFormula::And(vec![left, right])))
        }
    }
}

/// An occurrence of `alpha` at the given placement; `alpha` must be
/// nonempty.
pub fn build_infix(alpha: &[char], placement: Placement) -> CoreFormula {
    assert!(!alpha.is_empty(), "infix pattern must be nonempty");
    let gen = &mut VarGen::new();
    match placement {
        Placement::Between(t1, t2) => between(t1, alpha, t2, gen),
        Placement::RightOf(t) => right_of(t, alpha, gen),
        Placement::LeftOf(t) => left_of(alpha, t, gen),
    }
}

/// The string strictly between `t1` and `t2` is exactly `alpha`.
fn between(t1: Term, alpha: &[char], t2: Term, gen: &mut VarGen) -> CoreFormula {
    let k = alpha.len();
    let z = gen.fresh();
    let zt = Term::Var(z.clone());
    let body = match k {
        1 => CoreFormula::And(vec![
            CoreFormula::Label(alpha[0], zt.clone()),
            CoreFormula::Succ(t1, zt.clone()),
            CoreFormula::Succ(zt, t2),
        ]),
        2 => CoreFormula::And(vec![
            CoreFormula::Label(alpha[0], zt.clone()),
            CoreFormula::Succ(t1, zt.clone()),
            between(zt, &alpha[1..], t2, gen),
        ]),
        _ => {
            let m = k.div_ceil(2);
            CoreFormula::And(vec![
                CoreFormula::Label(alpha[m - 1], zt.clone()),
                between(t1, &alpha[..m - 1], zt.clone(), gen),
                between(zt, &alpha[m..], t2, gen),
            ])
        }
    };
    CoreFormula::Exists(z, Box::new(body))
}

/// `alpha` occurs immediately on the right of `t`.
fn right_of(t: Term, alpha: &[char], gen: &mut VarGen) -> CoreFormula {
    let k = alpha.len();
    let y = gen.fresh();
    let yt = Term::Var(y.clone());
    let body = match k {
        1 => CoreFormula::And(vec![
            CoreFormula::Succ(t, yt.clone()),
            CoreFormula::Label(alpha[0], yt),
        ]),
        2 => CoreFormula::And(vec![
            CoreFormula::Label(alpha[0], yt.clone()),
            CoreFormula::Succ(t, yt.clone()),
            right_of(yt, &alpha[1..], gen),
        ]),
        _ => {
            let m = k.div_ceil(2);
            CoreFormula::And(vec![
                CoreFormula::Label(alpha[m - 1], yt.clone()),
                between(t, &alpha[..m - 1], yt.clone(), gen),
                right_of(yt, &alpha[m..], gen),
            ])
        }
    };
    CoreFormula::Exists(y, Box::new(body))
}

/// `alpha` occurs immediately on the left of `t`.
fn left_of(alpha: &[char], t: Term, gen: &mut VarGen) -> CoreFormula {
    let k = alpha.len();
    let y = gen.fresh();
    let yt = Term::Var(y.clone());
    let body = match k {
        1 => CoreFormula::And(vec![
            CoreFormula::Succ(yt.clone(), t),
            CoreFormula::Label(alpha[0], yt),
        ]),
        2 => CoreFormula::And(vec![
            CoreFormula::Label(alpha[0], yt.clone()),
            between(yt, &alpha[1..], t, gen),
        ]),
        _ => {
            let m = k.div_ceil(2);
            CoreFormula::And(vec![
                CoreFormula::Label(alpha[m - 1], yt.clone()),
                left_of(&alpha[..m - 1], yt.clone(), gen),
                between(yt, &alpha[m..], t, gen),
            ])
        }
    };
    CoreFormula::Exists(y, Box::new(body))
}

/// The prefix (or suffix) of length `|s|` is exactly `s`. A string shorter
/// than `|s|` never satisfies the result.
pub fn build_boundary(end: Boundary, s: &[char]) -> CoreFormula {
    assert!(!s.is_empty(), "boundary pattern must be nonempty");
    let gen = &mut VarGen::new();
    match end {
        Boundary::Pref => pref_eq(s, gen),
        Boundary::Suff => suff_eq(s, gen),
    }
}

fn pref_eq(s: &[char], gen: &mut VarGen) -> CoreFormula {
    let k = s.len();
    match k {
        1 => CoreFormula::Label(s[0], Term::Min),
        2 | 3 => CoreFormula::And(vec![
            CoreFormula::Label(s[0], Term::Min),
            right_of(Term::Min, &s[1..], gen),
        ]),
        _ => {
            let m = (k + 1).div_ceil(2);
            let x = gen.fresh();
            let xt = Term::Var(x.clone());
            let inner = CoreFormula::And(vec![
                CoreFormula::Label(s[m - 1], xt.clone()),
                between(Term::Min, &s[1..m - 1], xt.clone(), gen),
                right_of(xt, &s[m..], gen),
            ]);
            CoreFormula::And(vec![
                CoreFormula::Label(s[0], Term::Min),
                CoreFormula::Exists(x, Box::new(inner)),
            ])
        }
    }
}

fn suff_eq(s: &[char], gen: &mut VarGen) -> CoreFormula {
    let k = s.len();
    match k {
        1 => CoreFormula::Label(s[0], Term::Max),
        2 | 3 => CoreFormula::And(vec![
            CoreFormula::Label(s[k - 1], Term::Max),
            left_of(&s[..k - 1], Term::Max, gen),
        ]),
        _ => {
            let m = k / 2;
            let x = gen.fresh();
            let xt = Term::Var(x.clone());
            let inner = CoreFormula::And(vec![
                CoreFormula::Label(s[m - 1], xt.clone()),
                left_of(&s[..m - 1], xt.clone(), gen),
                between(xt, &s[m..k - 1], Term::Max, gen),
            ]);
            CoreFormula::And(vec![
                CoreFormula::Label(s[k - 1], Term::Max),
                CoreFormula::Exists(x, Box::new(inner)),
            ])
        }
    }
}

/// `alpha` occurs centered on the position denoted by `x`; requires
/// `|alpha| = 2^q - 1`.
pub fn build_centered(alpha: &[char], x: Term) -> Result<CoreFormula> {
    alpha_rank(alpha)?;
    Ok(centered(alpha, x, &mut VarGen::new()))
}

fn centered(alpha: &[char], x: Term, gen: &mut VarGen) -> CoreFormula {
    let k = alpha.len();
    if k == 1 {
        return CoreFormula::Label(alpha[0], x);
    }
    let m = k.div_ceil(2);
    CoreFormula::And(vec![
        CoreFormula::Label(alpha[m - 1], x.clone()),
        left_of(&alpha[..m - 1], x.clone(), gen),
        right_of(x, &alpha[m..], gen),
    ])
}

/// At least `n` free occurrences of `alpha`.
pub fn build_gamma_ge(alpha: &[char], n: u32) -> Result<CoreFormula> {
    alpha_rank(alpha)?;
    assert!(n >= 1, "count must be at least 1");
    Ok(gamma_ge(alpha, n, &mut VarGen::new()))
}

fn gamma_ge(alpha: &[char], n: u32, gen: &mut VarGen) -> CoreFormula {
    let q = alpha_rank(alpha).expect("validated");
    let half = 1u32 << (q - 1);
    let xs: Vec<String> = (0..n).map(|_| gen.fresh()).collect();
    let mut parts = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            parts.push(CoreFormula::Not(Box::new(CoreFormula::Equal(
                Term::Var(xs[i].clone()),
                Term::Var(xs[j].clone()),
            ))));
        }
    }
    for x in &xs {
        parts.push(centered(alpha, Term::Var(x.clone()), gen));
    }
    for x in &xs {
        parts.push(dist(Term::Min, Term::Var(x.clone()), DistOp::Gt, half, gen));
        parts.push(dist(Term::Var(x.clone()), Term::Max, DistOp::Gt, half, gen));
    }
    let mut body = CoreFormula::And(parts);
    for x in xs.into_iter().rev() {
        body = CoreFormula::Exists(x, Box::new(body));
    }
    body
}

/// Free scattering of `alpha` is at least `n`. For `n = 1` this coincides
/// with `gamma >= 1`.
///
/// The scattering is the minimum number of windows of width `2^q` covering
/// the free occurrences, and a window is exactly a radius-`2^{q-1}` ball
/// around some position. So `sigma >= n` holds iff no `n - 1` positions
/// ball-cover the free occurrences: for every choice of `n - 1` centers,
/// some free occurrence is farther than `2^{q-1}` from all of them. This
/// shape keeps the distance tests at rank `q - 1`, giving the overall rank
/// `q + n - 1`.
pub fn build_sigma_ge(alpha: &[char], n: u32) -> Result<CoreFormula> {
    alpha_rank(alpha)?;
    assert!(n >= 1, "count must be at least 1");
    Ok(sigma_ge(alpha, n, &mut VarGen::new()))
}

fn sigma_ge(alpha: &[char], n: u32, gen: &mut VarGen) -> CoreFormula {
    if n == 1 {
        return gamma_ge(alpha, 1, gen);
    }
    let q = alpha_rank(alpha).expect("validated");
    let half = 1u32 << (q - 1);
    let zs: Vec<String> = (0..n - 1).map(|_| gen.fresh()).collect();
    let x = gen.fresh();
    let xt = Term::Var(x.clone());

    let mut parts = Vec::new();
    for z in &zs {
        // farther than 2^{q-1} in both successor directions
        parts.push(dist(Term::Var(z.clone()), xt.clone(), DistOp::Gt, half, gen));
        parts.push(dist(xt.clone(), Term::Var(z.clone()), DistOp::Gt, half, gen));
    }
    parts.push(centered(alpha, xt.clone(), gen));
    parts.push(dist(Term::Min, xt.clone(), DistOp::Gt, half, gen));
    parts.push(dist(xt, Term::Max, DistOp::Gt, half, gen));

    let mut formula = CoreFormula::Exists(x, Box::new(CoreFormula::And(parts)));
    for z in zs.into_iter().rev() {
        formula = CoreFormula::Forall(z, Box::new(formula));
    }
    formula
}

/// Expands a macro formula to a closed core sentence, homomorphically over
/// connectives and via the builders and abbreviation identities at leaves.
pub fn expand(m: &MacroFormula) -> CoreFormula {
    expand_with(m, &mut VarGen::new())
}

fn expand_with(m: &MacroFormula, gen: &mut VarGen) -> CoreFormula {
    match m {
        MacroFormula::And { args } => {
            CoreFormula::And(args.iter().map(|a| expand_with(a, gen)).collect())
        }
        MacroFormula::Or { args } => {
            CoreFormula::Or(args.iter().map(|a| expand_with(a, gen)).collect())
        }
        MacroFormula::Not { arg } => CoreFormula::Not(Box::new(expand_with(arg, gen))),
        MacroFormula::True => CoreFormula::True,
        MacroFormula::False => CoreFormula::False,
        MacroFormula::Dist { cmp, n } => dist(Term::Min, Term::Max, *cmp, *n, gen),
        MacroFormula::Pref { cmp, s, .. } => {
            let s: Vec<char> = s.chars().collect();
            let eq = pref_eq(&s, gen);
            match cmp {
                EqOp::Eq => eq,
                EqOp::Ne => CoreFormula::Not(Box::new(eq)),
            }
        }
        MacroFormula::Suff { cmp, s, .. } => {
            let s: Vec<char> = s.chars().collect();
            let eq = suff_eq(&s, gen);
            match cmp {
                EqOp::Eq => eq,
                EqOp::Ne => CoreFormula::Not(Box::new(eq)),
            }
        }
        MacroFormula::Gamma { cmp, alpha, n } => {
            let alpha: Vec<char> = alpha.chars().collect();
            count_leaf(&alpha, *cmp, *n, gamma_ge, gen)
        }
        MacroFormula::Sigma { cmp, alpha, n } => {
            let alpha: Vec<char> = alpha.chars().collect();
            count_leaf(&alpha, *cmp, *n, sigma_ge, gen)
        }
    }
}

fn count_leaf(
    alpha: &[char],
    cmp: CountOp,
    n: u32,
    ge: fn(&[char], u32, &mut VarGen) -> CoreFormula,
    gen: &mut VarGen,
) -> CoreFormula {
    match cmp {
        CountOp::Ge => ge(alpha, n, gen),
        CountOp::Lt => CoreFormula::Not(Box::new(ge(alpha, n, gen))),
        CountOp::Eq => CoreFormula::And(vec![
            ge(alpha, n, gen),
            CoreFormula::Not(Box::new(ge(alpha, n + 1, gen))),
        ]),
    }
}

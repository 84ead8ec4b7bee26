//! Two independent evaluation routes (generic Tarskian evaluation of core
//! formulas, fast macro semantics) plus the brute-force game solver used as
//! ground truth at small scale.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::formulas::{CoreFormula, CountOp, DistOp, EqOp, MacroFormula, Term};
use crate::strings::StringStructure;

/// A partial map from variable names to 1-based positions.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    bindings: Vec<(String, usize)>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn bind(&mut self, name: impl Into<String>, pos: usize) {
        self.bindings.push((name.into(), pos));
    }

    fn lookup(&self, name: &str) -> Option<usize> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, p)| p)
    }
}

/// Tarskian satisfaction. Quantifiers range over positions `1..=|w|`;
/// exponential in the quantifier rank, oracle-grade only.
pub fn eval_core(w: &StringStructure, f: &CoreFormula, env: &Assignment) -> Result<bool> {
    let mut env = env.clone();
    eval_rec(w, f, &mut env)
}

fn term_value(w: &StringStructure, t: &Term, env: &Assignment) -> Result<usize> {
    match t {
        Term::Min => Ok(1),
        Term::Max => Ok(w.len()),
        Term::Var(name) => env
            .lookup(name)
            .ok_or_else(|| Error::UnboundVariable(name.clone())),
    }
}

fn eval_rec(w: &StringStructure, f: &CoreFormula, env: &mut Assignment) -> Result<bool> {
    match f {
        CoreFormula::Equal(t1, t2) => Ok(term_value(w, t1, env)? == term_value(w, t2, env)?),
        CoreFormula::Succ(t1, t2) => {
            Ok(term_value(w, t1, env)? + 1 == term_value(w, t2, env)?)
        }
        CoreFormula::Label(a, t) => Ok(w.symbol_at(term_value(w, t, env)?) == *a),
        CoreFormula::Not(inner) => Ok(!eval_rec(w, inner, env)?),
        CoreFormula::And(args) => {
            for a in args {
                if !eval_rec(w, a, env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CoreFormula::Or(args) => {
            for a in args {
                if eval_rec(w, a, env)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        CoreFormula::Exists(x, inner) => {
            for pos in 1..=w.len() {
                env.bind(x.clone(), pos);
                let hit = eval_rec(w, inner, env)?;
                env.bindings.pop();
                if hit {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        CoreFormula::Forall(x, inner) => {
            for pos in 1..=w.len() {
                env.bind(x.clone(), pos);
                let hit = eval_rec(w, inner, env)?;
                env.bindings.pop();
                if !hit {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CoreFormula::True => Ok(true),
        CoreFormula::False => Ok(false),
    }
}

/// Polynomial-time macro semantics; agrees with `eval_core` on the
/// expansion.
pub fn eval_macro(w: &StringStructure, m: &MacroFormula) -> bool {
    match m {
        MacroFormula::And { args } => args.iter().all(|a| eval_macro(w, a)),
        MacroFormula::Or { args } => args.iter().any(|a| eval_macro(w, a)),
        MacroFormula::Not { arg } => !eval_macro(w, arg),
        MacroFormula::True => true,
        MacroFormula::False => false,
        MacroFormula::Dist { cmp, n } => {
            let len = w.len() as u64;
            let bound = *n as u64 + 1;
            match cmp {
                DistOp::Le => len <= bound,
                DistOp::Lt => len < bound,
                DistOp::Ge => len >= bound,
                DistOp::Gt => len > bound,
                DistOp::Eq => len == bound,
            }
        }
        MacroFormula::Pref { cmp, k, s } => {
            let k = *k as usize;
            let holds =
                k <= w.len() && w.prefix(k).iter().collect::<String>() == *s;
            match cmp {
                EqOp::Eq => holds,
                EqOp::Ne => !holds,
            }
        }
        MacroFormula::Suff { cmp, k, s } => {
            let k = *k as usize;
            let holds =
                k <= w.len() && w.suffix(k).iter().collect::<String>() == *s;
            match cmp {
                EqOp::Eq => holds,
                EqOp::Ne => !holds,
            }
        }
        MacroFormula::Gamma { cmp, alpha, n } => {
            let alpha: Vec<char> = alpha.chars().collect();
            let count = w.gamma(&alpha).expect("leaf invariant: valid alpha") as u32;
            count_cmp(count, *cmp, *n)
        }
        MacroFormula::Sigma { cmp, alpha, n } => {
            let alpha: Vec<char> = alpha.chars().collect();
            let count = w.sigma(&alpha).expect("leaf invariant: valid alpha") as u32;
            count_cmp(count, *cmp, *n)
        }
    }
}

fn count_cmp(count: u32, cmp: CountOp, n: u32) -> bool {
    match cmp {
        CountOp::Ge => count >= n,
        CountOp::Lt => count < n,
        CountOp::Eq => count == n,
    }
}

/// Winner of an r-round game.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameResult {
    Spoiler,
    Duplicator,
}

/// Exact minimax solver for the r-round game on two strings. The partial
/// isomorphism always includes the constant pairs `(min, min)` and
/// `(max, max)`, so the 0-round game is decided by the constants alone.
///
/// Exponential search; intended for small boards. Exceeding the internal
/// state budget yields a capacity error, never a wrong answer.
pub fn game_winner(u: &StringStructure, v: &StringStructure, r: u32) -> Result<GameResult> {
    let mut game = Game {
        u: u.symbols(),
        v: v.symbols(),
        memo: HashMap::new(),
        budget: 4_000_000,
    };
    let base = [(1, game.u.len()), (1, game.v.len())];
    let base_pairs = vec![(base[0].0, base[1].0), (base[0].1, base[1].1)];
    // constants must already form a partial isomorphism
    for (i, &p) in base_pairs.iter().enumerate() {
        if !game.consistent(&base_pairs[..i], p) {
            return Ok(GameResult::Spoiler);
        }
    }
    if game.duplicator_wins(base_pairs, r)? {
        Ok(GameResult::Duplicator)
    } else {
        Ok(GameResult::Spoiler)
    }
}

struct Game<'a> {
    u: &'a [char],
    v: &'a [char],
    memo: HashMap<(Vec<(usize, usize)>, u32), bool>,
    budget: usize,
}

impl Game<'_> {
    /// Checks the new pair against every pair already on the board:
    /// equality, successor in both directions, and labels.
    fn consistent(&self, pairs: &[(usize, usize)], (a, b): (usize, usize)) -> bool {
        if self.u[a - 1] != self.v[b - 1] {
            return false;
        }
        for &(x, y) in pairs {
            if (a == x) != (b == y) {
                return false;
            }
            if (a == x + 1) != (b == y + 1) {
                return false;
            }
            if (x == a + 1) != (y == b + 1) {
                return false;
            }
        }
        true
    }

    fn duplicator_wins(&mut self, pairs: Vec<(usize, usize)>, r: u32) -> Result<bool> {
        if r == 0 {
            return Ok(true);
        }
        let mut key = pairs.clone();
        key.sort_unstable();
        key.dedup();
        if let Some(&cached) = self.memo.get(&(key.clone(), r)) {
            return Ok(cached);
        }
        if self.memo.len() >= self.budget {
            return Err(Error::Capacity(
                "game solver exceeded its state budget".into(),
            ));
        }

        let mut result = true;
        // Spoiler picks a position in u; the Duplicator needs a response.
        'spoiler_u: for a in 1..=self.u.len() {
            for b in 1..=self.v.len() {
                if self.consistent(&pairs, (a, b)) {
                    let mut next = pairs.clone();
                    next.push((a, b));
                    if self.duplicator_wins(next, r - 1)? {
                        continue 'spoiler_u;
                    }
                }
            }
            result = false;
            break;
        }
        if result {
            // Spoiler picks in v instead.
            'spoiler_v: for b in 1..=self.v.len() {
                for a in 1..=self.u.len() {
                    if self.consistent(&pairs, (a, b)) {
                        let mut next = pairs.clone();
                        next.push((a, b));
                        if self.duplicator_wins(next, r - 1)? {
                            continue 'spoiler_v;
                        }
                    }
                }
                result = false;
                break;
            }
        }
        self.memo.insert((key, r), result);
        Ok(result)
    }
}

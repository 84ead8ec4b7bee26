//! Human-readable rendering of both formula representations.

use super::{CoreFormula, CountOp, DistOp, EqOp, MacroFormula, Term};

/// Text style for core first-order formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreStyle {
    Ascii,
    Unicode,
}

fn term(t: &Term) -> String {
    match t {
        Term::Var(name) => name.clone(),
        Term::Min => "min".to_string(),
        Term::Max => "max".to_string(),
    }
}

/// Deterministic rendering of a core formula; grouping is always explicit.
pub fn render_core(f: &CoreFormula, style: CoreStyle) -> String {
    let (and, or, not, exists, forall) = match style {
        CoreStyle::Ascii => (" & ", " | ", "~", "exists ", "forall "),
        CoreStyle::Unicode => (" \u{2227} ", " \u{2228} ", "\u{ac}", "\u{2203}", "\u{2200}"),
    };
    match f {
        CoreFormula::Equal(t1, t2) => format!("{} = {}", term(t1), term(t2)),
        CoreFormula::Succ(t1, t2) => format!("S({}, {})", term(t1), term(t2)),
        CoreFormula::Label(a, t) => format!("P_{}({})", a, term(t)),
        CoreFormula::Not(inner) => format!("{}({})", not, render_core(inner, style)),
        CoreFormula::And(args) => {
            let parts: Vec<String> = args.iter().map(|a| render_core(a, style)).collect();
            format!("({})", parts.join(and))
        }
        CoreFormula::Or(args) => {
            let parts: Vec<String> = args.iter().map(|a| render_core(a, style)).collect();
            format!("({})", parts.join(or))
        }
        CoreFormula::Exists(x, inner) => {
            format!("{}{} ({})", exists, x, render_core(inner, style))
        }
        CoreFormula::Forall(x, inner) => {
            format!("{}{} ({})", forall, x, render_core(inner, style))
        }
        CoreFormula::True => "true".to_string(),
        CoreFormula::False => "false".to_string(),
    }
}

fn dist_op(cmp: DistOp) -> &'static str {
    match cmp {
        DistOp::Le => "<=",
        DistOp::Lt => "<",
        DistOp::Ge => ">=",
        DistOp::Gt => ">",
        DistOp::Eq => "=",
    }
}

fn eq_op(cmp: EqOp) -> &'static str {
    match cmp {
        EqOp::Eq => "=",
        EqOp::Ne => "!=",
    }
}

fn count_op(cmp: CountOp) -> &'static str {
    match cmp {
        CountOp::Ge => ">=",
        CountOp::Lt => "<",
        CountOp::Eq => "=",
    }
}

/// Macro-name rendering, e.g. `pref_1 = "s"` or `d(min,max) <= 8`.
pub fn render_macro(m: &MacroFormula) -> String {
    match m {
        MacroFormula::And { args } => {
            let parts: Vec<String> = args.iter().map(render_macro).collect();
            format!("({})", parts.join(" & "))
        }
        MacroFormula::Or { args } => {
            let parts: Vec<String> = args.iter().map(render_macro).collect();
            format!("({})", parts.join(" | "))
        }
        MacroFormula::Not { arg } => format!("!({})", render_macro(arg)),
        MacroFormula::True => "true".to_string(),
        MacroFormula::False => "false".to_string(),
        MacroFormula::Dist { cmp, n } => format!("d(min,max) {} {}", dist_op(*cmp), n),
        MacroFormula::Pref { cmp, k, s } => format!("pref_{} {} {:?}", k, eq_op(*cmp), s),
        MacroFormula::Suff { cmp, k, s } => format!("suff_{} {} {:?}", k, eq_op(*cmp), s),
        MacroFormula::Gamma { cmp, alpha, n } => {
            format!("gamma({:?}) {} {}", alpha, count_op(*cmp), n)
        }
        MacroFormula::Sigma { cmp, alpha, n } => {
            format!("sigma({:?}) {} {}", alpha, count_op(*cmp), n)
        }
    }
}

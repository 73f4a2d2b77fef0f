//! Surface-syntax rendering. Output re-parses to the same tree.

use std::fmt::{self, Display, Formatter, Write};

use super::ast::Expr;
use crate::syntax::{Formula, Proof, Side, Term};

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

// Formula precedence: 1 ->, 2 |, 3 &, 4 prefix (~, forall, exists), 5 atom.
fn formula_prec(a: &Formula) -> u8 {
    match a {
        Formula::Forall(..) | Formula::Exists(..) => 4,
        Formula::Imp(_, r) if **r == Formula::Bot => 4,
        Formula::Imp(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Atom(..) | Formula::Bot => 5,
    }
}

fn write_formula(f: &mut Formatter<'_>, a: &Formula, min: u8) -> fmt::Result {
    if formula_prec(a) < min {
        f.write_str("(")?;
        write_formula(f, a, 0)?;
        return f.write_str(")");
    }
    match a {
        Formula::Atom(p, args) => {
            f.write_str(p)?;
            if !args.is_empty() {
                f.write_str("(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")?;
            }
            Ok(())
        }
        Formula::Bot => f.write_str("bot"),
        Formula::Imp(l, r) if **r == Formula::Bot => {
            f.write_str("~")?;
            write_formula(f, l, 4)
        }
        Formula::Imp(l, r) => {
            write_formula(f, l, 2)?;
            f.write_str(" -> ")?;
            write_formula(f, r, 1)
        }
        Formula::Or(l, r) => {
            write_formula(f, l, 3)?;
            f.write_str(" | ")?;
            write_formula(f, r, 2)
        }
        Formula::And(l, r) => {
            write_formula(f, l, 4)?;
            f.write_str(" & ")?;
            write_formula(f, r, 3)
        }
        Formula::Forall(v, b) => {
            write!(f, "forall {v}. ")?;
            write_formula(f, b, 4)
        }
        Formula::Exists(v, b) => {
            write!(f, "exists {v}. ")?;
            write_formula(f, b, 4)
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0)
    }
}

// Proof precedence: 0 binders extending right, 1 application, 2 postfix, 3 atom.
fn expr_prec(e: &Expr) -> u8 {
    match e {
        Expr::Lam(..) | Expr::Gen(..) | Expr::Unpack(..) => 0,
        Expr::App(..) | Expr::Inst(..) | Expr::Inj(..) => 1,
        Expr::Proj(..) => 2,
        _ => 3,
    }
}

fn side_kw(s: Side) -> &'static str {
    match s {
        Side::Left => "inl",
        Side::Right => "inr",
    }
}

fn write_expr(f: &mut Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if expr_prec(e) < min {
        f.write_str("(")?;
        write_expr(f, e, 0)?;
        return f.write_str(")");
    }
    match e {
        Expr::Var(x) | Expr::Ref(x) => f.write_str(x),
        Expr::Lam(x, ty, body) => {
            write!(f, "fun ({x} : {ty}) => ")?;
            write_expr(f, body, 0)
        }
        Expr::App(a, b) => {
            write_expr(f, a, 1)?;
            f.write_char(' ')?;
            write_expr(f, b, 2)
        }
        Expr::Pair(a, b) => {
            f.write_str("(")?;
            write_expr(f, a, 0)?;
            f.write_str(", ")?;
            write_expr(f, b, 0)?;
            f.write_str(")")
        }
        Expr::Proj(t, i) => {
            write_expr(f, t, 2)?;
            write!(f, ".{}", i.index())
        }
        Expr::Inj(i, t, ann) => {
            write!(f, "{}[{ann}] ", side_kw(*i))?;
            write_expr(f, t, 2)
        }
        Expr::Case(s, x, l, y, r) => {
            f.write_str("case ")?;
            write_expr(f, s, 0)?;
            write!(f, " of {{ inl {x} => ")?;
            write_expr(f, l, 0)?;
            write!(f, " | inr {y} => ")?;
            write_expr(f, r, 0)?;
            f.write_str(" }")
        }
        Expr::Gen(v, body) => {
            write!(f, "gen {v} => ")?;
            write_expr(f, body, 0)
        }
        Expr::Inst(t, m) => {
            write_expr(f, t, 1)?;
            write!(f, " @ {m}")
        }
        Expr::Pack(m, t, ann) => {
            write!(f, "pack[{ann}]({m}, ")?;
            write_expr(f, t, 0)?;
            f.write_str(")")
        }
        Expr::Unpack(s, v, x, body) => {
            f.write_str("unpack ")?;
            write_expr(f, s, 0)?;
            write!(f, " as ({v}, {x}) in ")?;
            write_expr(f, body, 0)
        }
        Expr::Axiom(i) => write!(f, "D[{i}]"),
        Expr::Efq(p, t) => {
            write!(f, "efq[{p}](")?;
            write_expr(f, t, 0)?;
            f.write_str(")")
        }
        Expr::Falsity => f.write_str("F"),
    }
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

impl Display for Proof {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_expr(f, &Expr::from(self), 0)
    }
}

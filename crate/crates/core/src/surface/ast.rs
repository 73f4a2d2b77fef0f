use crate::syntax::{Formula, Proof, Side, Term};

/// Proof terms as written in source files: variables carry no annotation and
/// may refer to earlier definitions. [`crate::surface::elaborate`] turns an
/// `Expr` into a kernel [`Proof`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A bound variable or a declared hypothesis.
    Var(String),
    /// A previously defined proof, inlined during elaboration.
    Ref(String),
    Lam(String, Formula, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Proj(Box<Expr>, Side),
    Inj(Side, Box<Expr>, Formula),
    Case(Box<Expr>, String, Box<Expr>, String, Box<Expr>),
    Gen(String, Box<Expr>),
    Inst(Box<Expr>, Term),
    Pack(Term, Box<Expr>, Formula),
    Unpack(Box<Expr>, String, String, Box<Expr>),
    Axiom(Formula),
    Efq(Formula, Box<Expr>),
    Falsity,
}

impl From<&Proof> for Expr {
    fn from(p: &Proof) -> Expr {
        let b = |p: &Proof| Box::new(Expr::from(p));
        match p {
            Proof::Var(x, _) => Expr::Var(x.clone()),
            Proof::Lam(x, ty, body) => Expr::Lam(x.clone(), ty.clone(), b(body)),
            Proof::App(f, a) => Expr::App(b(f), b(a)),
            Proof::Pair(l, r) => Expr::Pair(b(l), b(r)),
            Proof::Proj(t, i) => Expr::Proj(b(t), *i),
            Proof::Inj(i, t, ann) => Expr::Inj(*i, b(t), ann.clone()),
            Proof::Case(s, x, l, y, r) => Expr::Case(b(s), x.clone(), b(l), y.clone(), b(r)),
            Proof::Gen(v, body) => Expr::Gen(v.clone(), b(body)),
            Proof::Inst(t, m) => Expr::Inst(b(t), m.clone()),
            Proof::Pack(m, t, ann) => Expr::Pack(m.clone(), b(t), ann.clone()),
            Proof::Unpack(s, v, x, body) => Expr::Unpack(b(s), v.clone(), x.clone(), b(body)),
            Proof::Axiom(i) => Expr::Axiom(i.clone()),
            Proof::Efq(p, t) => Expr::Efq(p.clone(), b(t)),
            Proof::Falsity => Expr::Falsity,
        }
    }
}

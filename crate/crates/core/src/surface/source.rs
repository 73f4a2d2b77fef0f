use std::collections::HashMap;
use std::fmt;

use super::ast::Expr;
use crate::signature::Signature;
use crate::syntax::{Context, FoSyntax, Formula, Path, Proof, Term};
use crate::typing::{Checker, ErrorKind, Mode, Scope, TypingError};

/// `def <name> : <formula> := <body>`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Def {
    pub name: String,
    pub formula: Formula,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Directive {
    Check(String),
    Normalize(String),
    Translate(String),
    Extract(String),
    /// The definition must fail to type-check with the given error kind.
    Reject(String, ErrorKind),
}

impl Directive {
    pub fn target(&self) -> &str {
        match self {
            Directive::Check(n)
            | Directive::Normalize(n)
            | Directive::Translate(n)
            | Directive::Extract(n)
            | Directive::Reject(n, _) => n,
        }
    }
}

/// A parsed `.cd` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub mode: Mode,
    pub signature: Signature,
    /// `var` declarations, the context every definition is checked in.
    pub hypotheses: Context,
    pub defs: Vec<Def>,
    pub directives: Vec<Directive>,
}

impl Default for SourceFile {
    fn default() -> Self {
        SourceFile {
            mode: Mode::Cd,
            signature: Signature::new(),
            hypotheses: Context::new(),
            defs: Vec::new(),
            directives: Vec::new(),
        }
    }
}

/// Outcome of elaborating and type-checking one definition.
#[derive(Debug, Clone)]
pub struct CheckedDef {
    pub name: String,
    pub formula: Formula,
    pub result: Result<Proof, TypingError>,
}

impl SourceFile {
    pub fn def(&self, name: &str) -> Option<&Def> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn expected_rejection(&self, name: &str) -> Option<ErrorKind> {
        self.directives.iter().find_map(|d| match d {
            Directive::Reject(n, k) if n == name => Some(*k),
            _ => None,
        })
    }

    pub fn checker(&self) -> Checker<'_> {
        Checker::new(self.mode).with_signature(&self.signature)
    }

    /// Elaborates every definition in order and checks it against its stated
    /// formula. References to earlier definitions are inlined.
    pub fn check_all(&self) -> Vec<CheckedDef> {
        let mut done: HashMap<String, Result<Proof, TypingError>> = HashMap::new();
        let mut out = Vec::with_capacity(self.defs.len());
        for def in &self.defs {
            let result = elaborate(&def.body, &self.hypotheses, self.mode, &done)
                .and_then(|p| self.checker().check(&self.hypotheses, &p, &def.formula).map(|()| p));
            done.insert(def.name.clone(), result.clone());
            out.push(CheckedDef {
                name: def.name.clone(),
                formula: def.formula.clone(),
                result,
            });
        }
        out
    }

    /// Names selected by directives of the given kind, or every definition
    /// not marked `#reject` when there is no such directive.
    pub fn selected(&self, pick: impl Fn(&Directive) -> bool) -> Vec<&str> {
        let chosen: Vec<&str> = self
            .directives
            .iter()
            .filter(|d| pick(d))
            .map(Directive::target)
            .collect();
        if !chosen.is_empty() {
            return chosen;
        }
        self.defs
            .iter()
            .filter(|d| self.expected_rejection(&d.name).is_none())
            .map(|d| d.name.as_str())
            .collect()
    }
}

impl fmt::Display for SourceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "#mode {}", self.mode)?;
        let consts: Vec<&str> = self
            .signature
            .constants()
            .iter()
            .map(String::as_str)
            .filter(|c| *c != crate::syntax::DUM)
            .collect();
        if !consts.is_empty() {
            writeln!(f, "const {}", consts.join(", "))?;
        }
        let funs: Vec<String> = self.signature.functions().map(|(n, a)| format!("{n}/{a}")).collect();
        if !funs.is_empty() {
            writeln!(f, "function {}", funs.join(", "))?;
        }
        let preds: Vec<String> = self.signature.predicates().map(|(n, a)| format!("{n}/{a}")).collect();
        if !preds.is_empty() {
            writeln!(f, "pred {}", preds.join(", "))?;
        }
        for (name, ty) in self.hypotheses.iter() {
            writeln!(f, "var {name} : {ty}")?;
        }
        for def in &self.defs {
            writeln!(f, "\ndef {} : {} :=\n  {}", def.name, def.formula, def.body)?;
        }
        if !self.directives.is_empty() {
            writeln!(f)?;
        }
        for d in &self.directives {
            match d {
                Directive::Check(n) => writeln!(f, "#check {n}")?,
                Directive::Normalize(n) => writeln!(f, "#normalize {n}")?,
                Directive::Translate(n) => writeln!(f, "#translate {n}")?,
                Directive::Extract(n) => writeln!(f, "#extract {n}")?,
                Directive::Reject(n, k) => writeln!(f, "#reject {n} {k}")?,
            }
        }
        Ok(())
    }
}

/// Turns a surface expression into a kernel proof term, annotating every
/// variable occurrence with the type of its binder. The binders of `case` and
/// `unpack` take their types from the inferred type of the scrutinee.
pub fn elaborate(
    expr: &Expr,
    hyps: &Context,
    mode: Mode,
    defs: &HashMap<String, Result<Proof, TypingError>>,
) -> Result<Proof, TypingError> {
    let mut e = Elab {
        checker: Checker::new(mode),
        scope: Scope::from_context(hyps),
        locals: Vec::new(),
        fo_bound: Vec::new(),
        defs,
        path: Vec::new(),
    };
    e.go(expr)
}

struct Elab<'a> {
    checker: Checker<'static>,
    scope: Scope,
    locals: Vec<String>,
    fo_bound: Vec<String>,
    defs: &'a HashMap<String, Result<Proof, TypingError>>,
    path: Vec<u8>,
}

impl Elab<'_> {
    fn err(&self, kind: ErrorKind, detail: String) -> TypingError {
        TypingError {
            kind,
            path: Path(self.path.clone()),
            detail,
            expected: None,
            actual: None,
        }
    }

    fn child(&mut self, i: u8, e: &Expr) -> Result<Proof, TypingError> {
        self.path.push(i);
        let r = self.go(e);
        self.path.pop();
        r
    }

    fn bound_child(&mut self, i: u8, x: &str, ty: Formula, e: &Expr) -> Result<Proof, TypingError> {
        self.scope.push(x, ty);
        self.locals.push(x.to_string());
        let r = self.child(i, e);
        self.locals.pop();
        self.scope.pop();
        r
    }

    fn fo_child(&mut self, i: u8, v: &str, e: &Expr) -> Result<Proof, TypingError> {
        self.fo_bound.push(v.to_string());
        let r = self.child(i, e);
        self.fo_bound.pop();
        r
    }

    /// Type of an already elaborated scrutinee at child `i`.
    fn scrutinee_type(&mut self, i: u8, s: &Proof) -> Result<Formula, TypingError> {
        let here = Path(self.path.iter().copied().chain([i]).collect());
        self.checker
            .infer_scoped(&mut self.scope.clone(), s)
            .map_err(|e| e.relocate(&here))
    }

    fn go(&mut self, e: &Expr) -> Result<Proof, TypingError> {
        Ok(match e {
            Expr::Var(x) => match self.scope.lookup(x) {
                Some(ty) => Proof::var(x.clone(), ty.clone()),
                None => return Err(self.err(ErrorKind::UnboundVariable, format!("unbound proof variable `{x}`"))),
            },
            Expr::Ref(name) => {
                let body = match self.defs.get(name) {
                    Some(Ok(p)) => p.clone(),
                    Some(Err(_)) => {
                        return Err(self.err(
                            ErrorKind::UnboundVariable,
                            format!("definition `{name}` does not type-check"),
                        ))
                    }
                    None => return Err(self.err(ErrorKind::UnboundVariable, format!("unknown definition `{name}`"))),
                };
                if let Some(x) = body.free_proof_vars().into_iter().find(|x| self.locals.contains(x)) {
                    return Err(self.err(
                        ErrorKind::UnboundVariable,
                        format!("hypothesis `{x}` used by `{name}` is shadowed here"),
                    ));
                }
                if let Some(v) = body.fo_free_vars().into_iter().find(|v| self.fo_bound.contains(v)) {
                    return Err(self.err(
                        ErrorKind::EigenvariableViolation,
                        format!("free variable `{v}` of `{name}` would be captured here"),
                    ));
                }
                body
            }
            Expr::Lam(x, ty, body) => Proof::lam(x.clone(), ty.clone(), self.bound_child(0, x, ty.clone(), body)?),
            Expr::App(f, a) => Proof::app(self.child(0, f)?, self.child(1, a)?),
            Expr::Pair(l, r) => Proof::pair(self.child(0, l)?, self.child(1, r)?),
            Expr::Proj(t, i) => Proof::proj(self.child(0, t)?, *i),
            Expr::Inj(i, t, ann) => Proof::inj(*i, self.child(0, t)?, ann.clone()),
            Expr::Case(s, x, l, y, r) => {
                let s = self.child(0, s)?;
                let st = self.scrutinee_type(0, &s)?;
                let Formula::Or(a, b) = st else {
                    let mut err = self.err(ErrorKind::Mismatch, format!("case on a non-disjunction: got {st}"));
                    err.path = err.path.child(0);
                    err.actual = Some(st);
                    return Err(err);
                };
                let l = self.bound_child(1, x, *a, l)?;
                let r = self.bound_child(2, y, *b, r)?;
                Proof::case(s, x.clone(), l, y.clone(), r)
            }
            Expr::Gen(v, body) => Proof::gen(v.clone(), self.fo_child(0, v, body)?),
            Expr::Inst(t, m) => Proof::inst(self.child(0, t)?, m.clone()),
            Expr::Pack(m, t, ann) => Proof::pack(m.clone(), self.child(0, t)?, ann.clone()),
            Expr::Unpack(s, v, x, body) => {
                let s = self.child(0, s)?;
                let st = self.scrutinee_type(0, &s)?;
                let Formula::Exists(bv, inner) = st else {
                    let mut err = self.err(ErrorKind::Mismatch, format!("unpacking a non-existential: got {st}"));
                    err.path = err.path.child(0);
                    err.actual = Some(st);
                    return Err(err);
                };
                let xt = inner.fo_subst(&Term::Var(v.clone()), &bv);
                self.fo_bound.push(v.clone());
                let body = self.bound_child(1, x, xt, body);
                self.fo_bound.pop();
                Proof::unpack(s, v.clone(), x.clone(), body?)
            }
            Expr::Axiom(i) => Proof::Axiom(i.clone()),
            Expr::Efq(p, t) => Proof::efq(p.clone(), self.child(0, t)?),
            Expr::Falsity => Proof::Falsity,
        })
    }
}

/// Parses a proof term and elaborates it in one go.
pub fn parse_proof(source: &str, sig: &Signature, hyps: &Context, mode: Mode) -> Result<Proof, super::SurfaceError> {
    let expr = super::parse_expr(source, sig, hyps)?;
    Ok(elaborate(&expr, hyps, mode, &HashMap::new())?)
}

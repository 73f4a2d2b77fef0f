//! The typing judgment `Γ ⊢ t : A`.
//!
//! Inference is syntax-directed: every binder and introduction form carries
//! the annotation needed to read off its type, so no unification happens.
//! Formulas are compared up to alpha-equivalence.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::signature::Signature;
use crate::syntax::{alpha_equal, Context, FoSyntax, Formula, Path, Proof, Side, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    /// Constant domains: `D` allowed, `F` forbidden.
    Cd,
    /// Intuitionistic logic with the falsity constant: `F` allowed, `D`
    /// forbidden.
    IlBot,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Cd => "cd",
            Mode::IlBot => "il-bot",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ErrorKind {
    UnboundVariable,
    Mismatch,
    EigenvariableViolation,
    BadCDInstance,
    NonAtomicEfq,
    ModeViolation,
    ArityError,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 7] = [
        ErrorKind::UnboundVariable,
        ErrorKind::Mismatch,
        ErrorKind::EigenvariableViolation,
        ErrorKind::BadCDInstance,
        ErrorKind::NonAtomicEfq,
        ErrorKind::ModeViolation,
        ErrorKind::ArityError,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::UnboundVariable => "UnboundVariable",
            ErrorKind::Mismatch => "Mismatch",
            ErrorKind::EigenvariableViolation => "EigenvariableViolation",
            ErrorKind::BadCDInstance => "BadCDInstance",
            ErrorKind::NonAtomicEfq => "NonAtomicEfq",
            ErrorKind::ModeViolation => "ModeViolation",
            ErrorKind::ArityError => "ArityError",
        }
    }

    pub fn from_name(s: &str) -> Option<ErrorKind> {
        ErrorKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Renders as `<path>: <kind>: expected <A>, got <B>` when both formulas are
/// known and as `<path>: <kind>: <detail>` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct TypingError {
    pub kind: ErrorKind,
    pub path: Path,
    pub detail: String,
    pub expected: Option<Formula>,
    pub actual: Option<Formula>,
}

impl TypingError {
    fn new(kind: ErrorKind, path: &[u8], detail: impl Into<String>) -> TypingError {
        TypingError {
            kind,
            path: Path(path.to_vec()),
            detail: detail.into(),
            expected: None,
            actual: None,
        }
    }

    fn mismatch(path: &[u8], detail: impl Into<String>, expected: &Formula, actual: &Formula) -> TypingError {
        TypingError {
            expected: Some(expected.clone()),
            actual: Some(actual.clone()),
            ..TypingError::new(ErrorKind::Mismatch, path, detail)
        }
    }

    /// Prefixes the location with `outer`, for errors found in a subterm.
    pub fn relocate(mut self, outer: &Path) -> TypingError {
        self.path = outer.join(&self.path);
        self
    }
}

impl fmt::Display for TypingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.expected, &self.actual) {
            (Some(e), Some(a)) => write!(f, "{}: {}: expected {e}, got {a}", self.path, self.kind),
            _ => write!(f, "{}: {}: {}", self.path, self.kind, self.detail),
        }
    }
}

/// The pieces of a constant domain axiom instance
/// `∀α(A ∨ B) → (∀α A) ∨ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdInstance {
    pub var: String,
    pub left: Formula,
    pub right: Formula,
    /// The conclusion `(∀α A) ∨ B` exactly as written in the instance.
    pub conclusion: Formula,
}

impl CdInstance {
    pub fn parse(instance: &Formula) -> Option<CdInstance> {
        let Formula::Imp(premise, conclusion) = instance else {
            return None;
        };
        let Formula::Forall(var, body) = &**premise else {
            return None;
        };
        let Formula::Or(left, right) = &**body else {
            return None;
        };
        let Formula::Or(gen_left, right2) = &**conclusion else {
            return None;
        };
        if right.has_fo_free(var) {
            return None;
        }
        if !alpha_equal(gen_left, &Formula::forall(var.clone(), (**left).clone())) || !alpha_equal(right2, right) {
            return None;
        }
        Some(CdInstance {
            var: var.clone(),
            left: (**left).clone(),
            right: (**right).clone(),
            conclusion: (**conclusion).clone(),
        })
    }

    /// The premise `∀α(A ∨ B)`.
    pub fn premise(&self) -> Formula {
        Formula::forall(self.var.clone(), Formula::or(self.left.clone(), self.right.clone()))
    }
}

/// Is `instance` an instance of the constant domain axiom?
pub fn check_cd_instance(instance: &Formula) -> bool {
    CdInstance::parse(instance).is_some()
}

/// Proof variables in scope, innermost last. Inner binders shadow outer ones.
#[derive(Debug, Clone, Default)]
pub(crate) struct Scope {
    vars: Vec<(String, Formula)>,
}

impl Scope {
    pub(crate) fn from_context(ctx: &Context) -> Scope {
        Scope {
            vars: ctx.iter().map(|(n, f)| (n.to_string(), f.clone())).collect(),
        }
    }

    pub(crate) fn lookup(&self, name: &str) -> Option<&Formula> {
        self.vars.iter().rev().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub(crate) fn push(&mut self, name: &str, ty: Formula) {
        self.vars.push((name.to_string(), ty));
    }

    pub(crate) fn pop(&mut self) {
        self.vars.pop();
    }
}

/// Type checker configured with a mode and, optionally, a signature against
/// which every formula and individual term is checked.
#[derive(Debug, Clone, Copy)]
pub struct Checker<'s> {
    mode: Mode,
    signature: Option<&'s Signature>,
}

impl<'s> Checker<'s> {
    pub fn new(mode: Mode) -> Checker<'static> {
        Checker { mode, signature: None }
    }

    pub fn with_signature(self, signature: &'s Signature) -> Checker<'s> {
        Checker {
            mode: self.mode,
            signature: Some(signature),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn infer(&self, ctx: &Context, t: &Proof) -> Result<Formula, TypingError> {
        if let Some(sig) = self.signature {
            for (name, ty) in ctx.iter() {
                sig.check_formula(ty)
                    .map_err(|e| TypingError::new(ErrorKind::ArityError, &[], format!("hypothesis `{name}`: {e}")))?;
            }
            check_well_formed(sig, t, &mut Vec::new())?;
        }
        self.infer_scoped(&mut Scope::from_context(ctx), t)
    }

    pub fn check(&self, ctx: &Context, t: &Proof, expected: &Formula) -> Result<(), TypingError> {
        if let Some(sig) = self.signature {
            sig.check_formula(expected)
                .map_err(|e| TypingError::new(ErrorKind::ArityError, &[], e))?;
        }
        let actual = self.infer(ctx, t)?;
        if alpha_equal(&actual, expected) {
            Ok(())
        } else {
            Err(TypingError::mismatch(
                &[],
                "term does not have the stated type",
                expected,
                &actual,
            ))
        }
    }

    pub(crate) fn infer_scoped(&self, scope: &mut Scope, t: &Proof) -> Result<Formula, TypingError> {
        Infer {
            mode: self.mode,
            scope,
            path: Vec::new(),
        }
        .go(t)
    }
}

/// `Γ ⊢ t : ?`
pub fn infer(ctx: &Context, t: &Proof, mode: Mode) -> Result<Formula, TypingError> {
    Checker::new(mode).infer(ctx, t)
}

/// `Γ ⊢ t : A`
pub fn check(ctx: &Context, t: &Proof, expected: &Formula, mode: Mode) -> Result<(), TypingError> {
    Checker::new(mode).check(ctx, t, expected)
}

struct Infer<'a> {
    mode: Mode,
    scope: &'a mut Scope,
    path: Vec<u8>,
}

impl Infer<'_> {
    fn child(&mut self, i: u8, t: &Proof) -> Result<Formula, TypingError> {
        self.path.push(i);
        let r = self.go(t);
        self.path.pop();
        r
    }

    fn bound_child(&mut self, i: u8, x: &str, ty: Formula, t: &Proof) -> Result<Formula, TypingError> {
        self.scope.push(x, ty);
        let r = self.child(i, t);
        self.scope.pop();
        r
    }

    fn err(&self, kind: ErrorKind, detail: impl Into<String>) -> TypingError {
        TypingError::new(kind, &self.path, detail)
    }

    /// A mismatch located at child `i` of the current node.
    fn mismatch_at(&self, i: Option<u8>, detail: &str, expected: &Formula, actual: &Formula) -> TypingError {
        let mut p = self.path.clone();
        p.extend(i);
        TypingError::mismatch(&p, detail, expected, actual)
    }

    fn go(&mut self, t: &Proof) -> Result<Formula, TypingError> {
        match t {
            Proof::Var(x, ann) => match self.scope.lookup(x) {
                None => Err(self.err(ErrorKind::UnboundVariable, format!("unbound proof variable `{x}`"))),
                Some(bound) if alpha_equal(bound, ann) => Ok(bound.clone()),
                Some(bound) => Err(self.mismatch_at(None, "annotation disagrees with binding", bound, ann)),
            },
            Proof::Lam(x, dom, body) => {
                let cod = self.bound_child(0, x, dom.clone(), body)?;
                Ok(Formula::imp(dom.clone(), cod))
            }
            Proof::App(f, a) => {
                let ft = self.child(0, f)?;
                let Formula::Imp(dom, cod) = ft else {
                    return Err(self.shape_error(0, "applying a non-implication", ft));
                };
                let at = self.child(1, a)?;
                if !alpha_equal(&dom, &at) {
                    return Err(self.mismatch_at(Some(1), "argument type", &dom, &at));
                }
                Ok(*cod)
            }
            Proof::Pair(l, r) => Ok(Formula::and(self.child(0, l)?, self.child(1, r)?)),
            Proof::Proj(u, side) => match self.child(0, u)? {
                Formula::And(l, r) => Ok(match side {
                    Side::Left => *l,
                    Side::Right => *r,
                }),
                other => Err(self.shape_error(0, "projection from a non-conjunction", other)),
            },
            Proof::Inj(side, u, ann) => {
                let Formula::Or(l, r) = ann else {
                    return Err(self.err(ErrorKind::Mismatch, "injection annotation is not a disjunction"));
                };
                let want = match side {
                    Side::Left => l,
                    Side::Right => r,
                };
                let got = self.child(0, u)?;
                if !alpha_equal(want, &got) {
                    return Err(self.mismatch_at(Some(0), "injected term", want, &got));
                }
                Ok(ann.clone())
            }
            Proof::Case(s, x, l, y, r) => {
                let st = self.child(0, s)?;
                let Formula::Or(a, b) = st else {
                    return Err(self.shape_error(0, "case on a non-disjunction", st));
                };
                let c1 = self.bound_child(1, x, *a, l)?;
                let c2 = self.bound_child(2, y, *b, r)?;
                if !alpha_equal(&c1, &c2) {
                    return Err(self.mismatch_at(Some(2), "case branches disagree", &c1, &c2));
                }
                Ok(c1)
            }
            Proof::Gen(var, body) => {
                if body.free_var_types_mention(var) {
                    return Err(self.err(
                        ErrorKind::EigenvariableViolation,
                        format!("`{var}` occurs free in the type of a free assumption"),
                    ));
                }
                let a = self.child(0, body)?;
                Ok(Formula::forall(var.clone(), a))
            }
            Proof::Inst(u, m) => match self.child(0, u)? {
                Formula::Forall(var, body) => Ok(body.fo_subst(m, &var)),
                other => Err(self.shape_error(0, "instantiating a non-universal", other)),
            },
            Proof::Pack(m, u, ann) => {
                let Formula::Exists(var, body) = ann else {
                    return Err(self.err(ErrorKind::Mismatch, "pack annotation is not an existential"));
                };
                let want = body.fo_subst(m, var);
                let got = self.child(0, u)?;
                if !alpha_equal(&want, &got) {
                    return Err(self.mismatch_at(Some(0), "witnessed body", &want, &got));
                }
                Ok(ann.clone())
            }
            Proof::Unpack(s, var, x, body) => {
                let st = self.child(0, s)?;
                let Formula::Exists(bvar, inner) = st else {
                    return Err(self.shape_error(0, "unpacking a non-existential", st));
                };
                let xt = inner.fo_subst(&Term::Var(var.clone()), &bvar);
                let mut hit = false;
                body.visit_free_vars(&mut vec![x.as_str()], &mut |_, ty| hit |= ty.has_fo_free(var));
                if hit {
                    return Err(self.err(
                        ErrorKind::EigenvariableViolation,
                        format!("`{var}` occurs free in the type of a free assumption of the body"),
                    ));
                }
                let c = self.bound_child(1, x, xt, body)?;
                if c.has_fo_free(var) {
                    return Err(self.err(
                        ErrorKind::EigenvariableViolation,
                        format!("`{var}` occurs free in the conclusion {c}"),
                    ));
                }
                Ok(c)
            }
            Proof::Axiom(instance) => {
                if self.mode != Mode::Cd {
                    return Err(self.err(
                        ErrorKind::ModeViolation,
                        "the constant D is not available in il-bot mode",
                    ));
                }
                if !check_cd_instance(instance) {
                    return Err(self.err(
                        ErrorKind::BadCDInstance,
                        format!("{instance} is not an instance of forall a. (A | B) -> (forall a. A) | B with a not free in B"),
                    ));
                }
                Ok(instance.clone())
            }
            Proof::Efq(p, u) => {
                if !p.is_atomic() {
                    return Err(self.err(ErrorKind::NonAtomicEfq, format!("ex falso target {p} is not atomic")));
                }
                let ut = self.child(0, u)?;
                if ut != Formula::Bot {
                    return Err(self.mismatch_at(Some(0), "ex falso argument", &Formula::Bot, &ut));
                }
                Ok(p.clone())
            }
            Proof::Falsity => {
                if self.mode != Mode::IlBot {
                    return Err(self.err(ErrorKind::ModeViolation, "the constant F is not available in cd mode"));
                }
                Ok(Formula::Bot)
            }
        }
    }

    fn shape_error(&self, i: u8, detail: &str, actual: Formula) -> TypingError {
        let mut p = self.path.clone();
        p.push(i);
        TypingError {
            actual: Some(actual.clone()),
            ..TypingError::new(ErrorKind::Mismatch, &p, format!("{detail}: got {actual}"))
        }
    }
}

fn check_well_formed(sig: &Signature, t: &Proof, path: &mut Vec<u8>) -> Result<(), TypingError> {
    let here = |e: String, path: &[u8]| TypingError::new(ErrorKind::ArityError, path, e);
    let formulas: Vec<&Formula> = match t {
        Proof::Var(_, f) | Proof::Lam(_, f, _) | Proof::Inj(_, _, f) | Proof::Axiom(f) | Proof::Efq(f, _) => vec![f],
        Proof::Pack(m, _, f) => {
            sig.check_term(m).map_err(|e| here(e, path))?;
            vec![f]
        }
        Proof::Inst(_, m) => {
            sig.check_term(m).map_err(|e| here(e, path))?;
            vec![]
        }
        _ => vec![],
    };
    for f in formulas {
        sig.check_formula(f).map_err(|e| here(e, path))?;
    }
    for (i, c) in t.children().into_iter().enumerate() {
        path.push(i as u8);
        check_well_formed(sig, c, path)?;
        path.pop();
    }
    Ok(())
}

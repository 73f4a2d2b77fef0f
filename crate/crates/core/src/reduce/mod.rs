//! One-step reduction, leftmost-outermost normalization, head decomposition
//! and the subject-reduction replay harness.
//!
//! The seven rules:
//!
//! ```text
//! (λx. u) t                  ↦ u[t/x]              Beta
//! (λα. u) m                  ↦ u[m/α]              FOBeta
//! ⟨u0, u1⟩ πi                ↦ ui                  ProjPair
//! inj_i(u) [x1.t1, x2.t2]    ↦ ti[u/xi]            CaseInj
//! (m, u) [(α, x). v]         ↦ v[m/α][u/x]         ExElimIntro
//! D (λα. inj0 u)             ↦ inj0 (λα. u)        CDInj0
//! D (λα. inj1 u)             ↦ inj1 (u[dum/α])     CDInj1
//! ```

mod head;
mod replay;

pub use head::{head_decompose, Head, HeadForm, SpineItem};
pub use replay::{replay_subject_reduction, ReplayError, ReplayReport, Violation, ViolationReport};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{FoSyntax, Formula, Path, Proof, Side, Term};

/// Default step budget for normalization.
pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleTag {
    Beta,
    FOBeta,
    ProjPair,
    CaseInj,
    ExElimIntro,
    CDInj0,
    CDInj1,
}

impl RuleTag {
    pub const ALL: [RuleTag; 7] = [
        RuleTag::Beta,
        RuleTag::FOBeta,
        RuleTag::ProjPair,
        RuleTag::CaseInj,
        RuleTag::ExElimIntro,
        RuleTag::CDInj0,
        RuleTag::CDInj1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleTag::Beta => "Beta",
            RuleTag::FOBeta => "FOBeta",
            RuleTag::ProjPair => "ProjPair",
            RuleTag::CaseInj => "CaseInj",
            RuleTag::ExElimIntro => "ExElimIntro",
            RuleTag::CDInj0 => "CDInj0",
            RuleTag::CDInj1 => "CDInj1",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("not a redex: {0}")]
    NotARedex(String),
}

/// A single contraction `before ↦ after` at `path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: RuleTag,
    pub path: Path,
    pub before: Proof,
    pub after: Proof,
}

/// A normalization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: Proof,
    pub steps: Vec<Step>,
    pub normal: bool,
    pub fuel_exhausted: bool,
}

impl Trace {
    /// The last term reached: the normal form when `normal` holds.
    pub fn last(&self) -> &Proof {
        self.steps.last().map(|s| &s.after).unwrap_or(&self.initial)
    }

    pub fn rule_counts(&self) -> [usize; 7] {
        let mut out = [0; 7];
        for s in &self.steps {
            out[s.rule as usize] += 1;
        }
        out
    }
}

/// Which rule, if any, has `t` as its left-hand side.
pub fn redex_rule(t: &Proof) -> Option<RuleTag> {
    match t {
        Proof::App(f, a) => match (&**f, &**a) {
            (Proof::Lam(..), _) => Some(RuleTag::Beta),
            (Proof::Axiom(Formula::Imp(..)), Proof::Gen(_, body)) => match &**body {
                Proof::Inj(Side::Left, ..) => Some(RuleTag::CDInj0),
                Proof::Inj(Side::Right, ..) => Some(RuleTag::CDInj1),
                _ => None,
            },
            _ => None,
        },
        Proof::Inst(f, _) if matches!(**f, Proof::Gen(..)) => Some(RuleTag::FOBeta),
        Proof::Proj(p, _) if matches!(**p, Proof::Pair(..)) => Some(RuleTag::ProjPair),
        Proof::Case(s, ..) if matches!(**s, Proof::Inj(..)) => Some(RuleTag::CaseInj),
        Proof::Unpack(s, ..) if matches!(**s, Proof::Pack(..)) => Some(RuleTag::ExElimIntro),
        _ => None,
    }
}

/// Contracts `t`, which must itself be a redex.
pub fn contract(t: &Proof) -> Result<(RuleTag, Proof), ReduceError> {
    let not_redex = || ReduceError::NotARedex(t.to_string());
    let rule = redex_rule(t).ok_or_else(not_redex)?;
    let out = match t {
        Proof::App(f, a) => match (&**f, &**a) {
            (Proof::Lam(x, _, body), _) => body.subst(a, x),
            (Proof::Axiom(Formula::Imp(_, conclusion)), Proof::Gen(var, body)) => match &**body {
                Proof::Inj(Side::Left, u, _) => Proof::inj(
                    Side::Left,
                    Proof::gen(var.clone(), (**u).clone()),
                    (**conclusion).clone(),
                ),
                Proof::Inj(Side::Right, u, _) => {
                    Proof::inj(Side::Right, u.fo_subst(&Term::dum(), var), (**conclusion).clone())
                }
                _ => return Err(not_redex()),
            },
            _ => return Err(not_redex()),
        },
        Proof::Inst(f, m) => match &**f {
            Proof::Gen(var, body) => body.fo_subst(m, var),
            _ => return Err(not_redex()),
        },
        Proof::Proj(p, side) => match (&**p, side) {
            (Proof::Pair(l, _), Side::Left) => (**l).clone(),
            (Proof::Pair(_, r), Side::Right) => (**r).clone(),
            _ => return Err(not_redex()),
        },
        Proof::Case(s, x, l, y, r) => match &**s {
            Proof::Inj(Side::Left, u, _) => l.subst(u, x),
            Proof::Inj(Side::Right, u, _) => r.subst(u, y),
            _ => return Err(not_redex()),
        },
        Proof::Unpack(s, var, x, body) => match &**s {
            Proof::Pack(m, u, _) => body.fo_subst(m, var).subst(u, x),
            _ => return Err(not_redex()),
        },
        _ => return Err(not_redex()),
    };
    Ok((rule, out))
}

/// All redex positions, leftmost-outermost first.
pub fn find_redexes(t: &Proof) -> Vec<(Path, RuleTag)> {
    fn go(t: &Proof, path: &mut Vec<u8>, out: &mut Vec<(Path, RuleTag)>) {
        if let Some(rule) = redex_rule(t) {
            out.push((Path(path.clone()), rule));
        }
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i as u8);
            go(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// The leftmost-outermost redex, found without enumerating the others.
pub fn first_redex(t: &Proof) -> Option<(Path, RuleTag)> {
    fn go(t: &Proof, path: &mut Vec<u8>) -> Option<(Path, RuleTag)> {
        if let Some(rule) = redex_rule(t) {
            return Some((Path(path.clone()), rule));
        }
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i as u8);
            let hit = go(c, path);
            path.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
    go(t, &mut Vec::new())
}

pub fn is_normal(t: &Proof) -> bool {
    first_redex(t).is_none()
}

/// Contracts the redex at `path`.
pub fn step_at(t: &Proof, path: &Path) -> Result<Step, ReduceError> {
    let sub = t
        .subterm(path)
        .ok_or_else(|| ReduceError::NotARedex(format!("no subterm at {path}")))?;
    let (rule, contractum) = contract(sub)?;
    let after = t.replace(path, contractum).expect("path was just resolved");
    Ok(Step {
        rule,
        path: path.clone(),
        before: t.clone(),
        after,
    })
}

/// Contracts the leftmost-outermost redex; `None` on a normal form.
pub fn step(t: &Proof) -> Option<Step> {
    let (path, _) = first_redex(t)?;
    Some(step_at(t, &path).expect("first_redex returned a redex"))
}

/// Reduces leftmost-outermost until a normal form or until `fuel` steps have
/// been taken.
pub fn normalize(t: &Proof, fuel: usize) -> Trace {
    let mut steps: Vec<Step> = Vec::new();
    let mut current = t.clone();
    loop {
        match first_redex(&current) {
            None => {
                return Trace {
                    initial: t.clone(),
                    steps,
                    normal: true,
                    fuel_exhausted: false,
                }
            }
            Some(_) if steps.len() >= fuel => {
                return Trace {
                    initial: t.clone(),
                    steps,
                    normal: false,
                    fuel_exhausted: true,
                }
            }
            Some((path, _)) => {
                let s = step_at(&current, &path).expect("first_redex returned a redex");
                current = s.after.clone();
                steps.push(s);
            }
        }
    }
}

/// Normal form only, without recording the trace.
pub fn normal_form(t: &Proof, fuel: usize) -> Result<Proof, Proof> {
    let mut current = t.clone();
    for _ in 0..fuel {
        match first_redex(&current) {
            None => return Ok(current),
            Some((path, _)) => current = step_at(&current, &path).expect("first_redex returned a redex").after,
        }
    }
    if is_normal(&current) {
        Ok(current)
    } else {
        Err(current)
    }
}

//! Witness, disjunct and universal extraction from closed normal proofs.
//!
//! No normalization happens here. Callers normalize first and hand over the
//! normal form; anything else is refused.

use std::fmt;

use thiserror::Error;

use crate::reduce::is_normal;
use crate::syntax::{Context, FoSyntax, Formula, Proof, Side, Term};
use crate::typing::{Checker, Mode, TypingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("term has free proof variables: {}", .0.join(", "))]
    NotClosed(Vec<String>),
    #[error("term is not in normal form")]
    NotNormal,
    #[error("expected a proof of {expected}, got one of {actual}")]
    WrongType { expected: &'static str, actual: Formula },
    #[error("closed normal proof of {ty} has no introduction at its head")]
    ShapeViolation { ty: Formula },
    #[error(transparent)]
    Typing(#[from] TypingError),
}

/// Computational content of a closed normal proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extracted {
    Witness { term: Term, proof: Proof },
    Disjunct { side: Side, proof: Proof },
    Universal { var: String, proof: Proof },
}

impl fmt::Display for Extracted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extracted::Witness { term, proof } => write!(f, "witness {term}\nproof {proof}"),
            Extracted::Disjunct { side, proof } => write!(f, "side {}\nproof {proof}", side.index()),
            Extracted::Universal { var, proof } => write!(f, "binder {var}\nproof {proof}"),
        }
    }
}

/// Checks the preconditions shared by every extraction and returns the type.
fn prepare(checker: &Checker<'_>, t: &Proof) -> Result<Formula, ExtractError> {
    let free = t.free_proof_vars();
    if !free.is_empty() {
        return Err(ExtractError::NotClosed(free.into_iter().collect()));
    }
    let ty = checker.infer(&Context::new(), t)?;
    if !is_normal(t) {
        return Err(ExtractError::NotNormal);
    }
    Ok(ty)
}

/// Extracts whatever the type of `t` calls for. Fails with `WrongType` on
/// types that are not ∃, ∨ or ∀.
pub fn extract_with(checker: &Checker<'_>, t: &Proof) -> Result<Extracted, ExtractError> {
    let ty = prepare(checker, t)?;
    let ctx = Context::new();
    match (&ty, t) {
        (Formula::Exists(v, a), Proof::Pack(m, u, _)) => {
            checker.check(&ctx, u, &a.fo_subst(m, v))?;
            Ok(Extracted::Witness {
                term: m.clone(),
                proof: (**u).clone(),
            })
        }
        (Formula::Or(a, b), Proof::Inj(side, u, _)) => {
            let part = if *side == Side::Left { a } else { b };
            checker.check(&ctx, u, part)?;
            Ok(Extracted::Disjunct {
                side: *side,
                proof: (**u).clone(),
            })
        }
        (Formula::Forall(v, a), Proof::Gen(w, u)) => {
            let body = if v == w {
                (**a).clone()
            } else {
                a.fo_subst(&Term::var(w.clone()), v)
            };
            checker.check(&ctx, u, &body)?;
            Ok(Extracted::Universal {
                var: w.clone(),
                proof: (**u).clone(),
            })
        }
        (Formula::Exists(..) | Formula::Or(..) | Formula::Forall(..), _) => Err(ExtractError::ShapeViolation { ty }),
        _ => Err(ExtractError::WrongType {
            expected: "an existential, disjunction or universal",
            actual: ty,
        }),
    }
}

fn expecting(t: &Proof, expected: &'static str, matches: fn(&Formula) -> bool) -> Result<Extracted, ExtractError> {
    let checker = Checker::new(Mode::Cd);
    let ty = prepare(&checker, t)?;
    if !matches(&ty) {
        return Err(ExtractError::WrongType { expected, actual: ty });
    }
    extract_with(&checker, t)
}

/// `t : ∃α A` closed and normal gives `(m, u)` with `u : A[m/α]`.
pub fn extract_witness(t: &Proof) -> Result<(Term, Proof), ExtractError> {
    match expecting(t, "an existential", |f| matches!(f, Formula::Exists(..)))? {
        Extracted::Witness { term, proof } => Ok((term, proof)),
        _ => unreachable!(),
    }
}

/// `t : A ∨ B` closed and normal gives the injected side and its proof.
pub fn extract_disjunct(t: &Proof) -> Result<(Side, Proof), ExtractError> {
    match expecting(t, "a disjunction", |f| matches!(f, Formula::Or(..)))? {
        Extracted::Disjunct { side, proof } => Ok((side, proof)),
        _ => unreachable!(),
    }
}

/// `t : ∀α A` closed and normal gives the binder and body.
pub fn extract_universal(t: &Proof) -> Result<(String, Proof), ExtractError> {
    match expecting(t, "a universal", |f| matches!(f, Formula::Forall(..)))? {
        Extracted::Universal { var, proof } => Ok((var, proof)),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(m: Term) -> Formula {
        Formula::atom("P", vec![m])
    }
    fn q() -> Formula {
        Formula::atom("Q", vec![])
    }

    #[test]
    fn direct_introductions() {
        let c = Term::constant("c");
        let id = Proof::lam("x", pm(c.clone()), Proof::var("x", pm(c.clone())));
        let ann = Formula::exists("a", Formula::imp(pm(Term::var("a")), pm(Term::var("a"))));
        assert_eq!(
            extract_witness(&Proof::pack(c.clone(), id.clone(), ann)).unwrap(),
            (c, id)
        );

        let p = Formula::atom("P", vec![]);
        let idp = Proof::lam("x", p.clone(), Proof::var("x", p.clone()));
        let t = Proof::inj(Side::Left, idp.clone(), Formula::or(Formula::imp(p.clone(), p), q()));
        assert_eq!(extract_disjunct(&t).unwrap(), (Side::Left, idp));

        let a = pm(Term::var("a"));
        let body = Proof::lam("x", a.clone(), Proof::var("x", a));
        assert_eq!(
            extract_universal(&Proof::gen("a", body.clone())).unwrap(),
            ("a".to_string(), body)
        );
    }

    #[test]
    fn preconditions_are_enforced() {
        let c = Term::constant("c");
        let id = Proof::lam("x", pm(c.clone()), Proof::var("x", pm(c.clone())));
        let ann = Formula::exists("a", Formula::imp(pm(Term::var("a")), pm(Term::var("a"))));
        let packed = Proof::pack(c, id.clone(), ann.clone());
        let redex = Proof::app(Proof::lam("y", ann.clone(), Proof::var("y", ann)), packed);
        assert_eq!(extract_witness(&redex), Err(ExtractError::NotNormal));

        let open = Proof::var("h", Formula::exists("a", pm(Term::var("a"))));
        assert_eq!(extract_witness(&open), Err(ExtractError::NotClosed(vec!["h".into()])));

        assert!(matches!(extract_disjunct(&id), Err(ExtractError::WrongType { .. })));
    }
}

//! Function and predicate symbols available to a development.

use std::collections::BTreeMap;

use crate::syntax::{Formula, Term, DUM};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    constants: Vec<String>,
    functions: BTreeMap<String, usize>,
    predicates: BTreeMap<String, usize>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature {
            constants: vec![DUM.to_string()],
            functions: BTreeMap::new(),
            predicates: BTreeMap::new(),
        }
    }
}

impl Signature {
    /// A signature declaring only `dum`.
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_constant(&mut self, name: impl Into<String>) {
        let name = name.into();
        if !self.constants.contains(&name) {
            self.constants.push(name);
        }
    }

    pub fn add_function(&mut self, name: impl Into<String>, arity: usize) {
        self.functions.insert(name.into(), arity);
    }

    pub fn add_predicate(&mut self, name: impl Into<String>, arity: usize) {
        self.predicates.insert(name.into(), arity);
    }

    pub fn with_constant(mut self, name: &str) -> Self {
        self.add_constant(name);
        self
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Self {
        self.add_function(name, arity);
        self
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Self {
        self.add_predicate(name, arity);
        self
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    /// Constants in declaration order, `dum` first.
    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn check_term(&self, t: &Term) -> Result<(), String> {
        match t {
            Term::Var(_) => Ok(()),
            Term::Const(c) if self.is_constant(c) => Ok(()),
            Term::Const(c) => Err(format!("undeclared constant `{c}`")),
            Term::App(f, args) => {
                match self.function_arity(f) {
                    None => return Err(format!("undeclared function `{f}`")),
                    Some(n) if n != args.len() => {
                        return Err(format!(
                            "function `{f}` has arity {n} but is applied to {} arguments",
                            args.len()
                        ))
                    }
                    Some(_) => {}
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    pub fn check_formula(&self, f: &Formula) -> Result<(), String> {
        match f {
            Formula::Atom(p, args) => {
                match self.predicate_arity(p) {
                    None => return Err(format!("undeclared predicate `{p}`")),
                    Some(n) if n != args.len() => {
                        return Err(format!(
                            "predicate `{p}` has arity {n} but is applied to {} arguments",
                            args.len()
                        ))
                    }
                    Some(_) => {}
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Formula::Bot => Ok(()),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                self.check_formula(l)?;
                self.check_formula(r)
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => self.check_formula(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dum_is_always_declared() {
        assert!(Signature::new().is_constant(DUM));
        assert!(Signature::new().check_term(&Term::dum()).is_ok());
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let sig = Signature::new().with_predicate("P", 1).with_function("f", 2);
        assert!(sig.check_formula(&Formula::atom("P", vec![])).is_err());
        assert!(sig.check_term(&Term::app("f", vec![Term::dum()])).is_err());
        assert!(sig
            .check_formula(&Formula::atom(
                "P",
                vec![Term::app("f", vec![Term::dum(), Term::var("a")])]
            ))
            .is_ok());
    }
}

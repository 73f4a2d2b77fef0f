use super::{FoSyntax, NameSet};

/// An individual-level term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn dum() -> Term {
        Term::Const(super::DUM.to_string())
    }

    pub fn app(f: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(f.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }
}

impl FoSyntax for Term {
    fn collect_fo_free(&self, bound: &mut Vec<String>, out: &mut NameSet) {
        match self {
            Term::Var(v) => {
                if !bound.iter().any(|b| b == v) {
                    out.insert(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::App(_, args) => {
                for a in args {
                    a.collect_fo_free(bound, out);
                }
            }
        }
    }

    fn collect_fo_names(&self, out: &mut NameSet) {
        match self {
            Term::Var(v) | Term::Const(v) => {
                out.insert(v.clone());
            }
            Term::App(f, args) => {
                out.insert(f.clone());
                for a in args {
                    a.collect_fo_names(out);
                }
            }
        }
    }

    fn fo_subst(&self, m: &Term, var: &str) -> Term {
        match self {
            Term::Var(v) if v == var => m.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.fo_subst(m, var)).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_replaces_only_the_variable() {
        let t = Term::app("f", vec![Term::var("a"), Term::constant("a"), Term::var("b")]);
        let s = t.fo_subst(&Term::constant("c"), "a");
        assert_eq!(
            s,
            Term::app("f", vec![Term::constant("c"), Term::constant("a"), Term::var("b")])
        );
        assert_eq!(s.fo_free_vars().into_iter().collect::<Vec<_>>(), vec!["b".to_string()]);
    }

    #[test]
    fn ground_terms() {
        assert!(Term::dum().is_ground());
        assert!(!Term::app("f", vec![Term::var("x")]).is_ground());
    }
}

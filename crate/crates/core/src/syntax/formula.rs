use super::{fresh_name, FoSyntax, NameSet, Term};

/// First-order formula. Negation is `Imp(A, Bot)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(pred.into(), args)
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn negation(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Atoms and `Bot` (the 0-ary falsity predicate).
    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..) | Formula::Bot)
    }

    /// Number of connectives and atoms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Bot => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => 1 + l.size() + r.size(),
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.size(),
        }
    }

    /// Representative of the alpha-equivalence class: bound variables are
    /// renamed `#0`, `#1`, ... by binding depth. `#` never occurs in parsed
    /// identifiers, so the renaming cannot clash with a free name.
    pub fn canonical(&self) -> Formula {
        fn go(f: &Formula, depth: usize) -> Formula {
            match f {
                Formula::Atom(..) | Formula::Bot => f.clone(),
                Formula::And(l, r) => Formula::and(go(l, depth), go(r, depth)),
                Formula::Or(l, r) => Formula::or(go(l, depth), go(r, depth)),
                Formula::Imp(l, r) => Formula::imp(go(l, depth), go(r, depth)),
                Formula::Forall(v, b) | Formula::Exists(v, b) => {
                    let name = format!("#{depth}");
                    let body = go(&b.rename_bound_free(v, &name), depth + 1);
                    if matches!(f, Formula::Forall(..)) {
                        Formula::forall(name, body)
                    } else {
                        Formula::exists(name, body)
                    }
                }
            }
        }
        go(self, 0)
    }

    /// Rename free occurrences of `from` to `to`, where `to` is known not to
    /// occur in the formula at all.
    fn rename_bound_free(&self, from: &str, to: &str) -> Formula {
        self.fo_subst(&Term::Var(to.to_string()), from)
    }

    fn quantifier(&self, var: String, body: Formula) -> Formula {
        match self {
            Formula::Forall(..) => Formula::forall(var, body),
            Formula::Exists(..) => Formula::exists(var, body),
            _ => unreachable!("not a quantifier"),
        }
    }
}

impl FoSyntax for Formula {
    fn collect_fo_free(&self, bound: &mut Vec<String>, out: &mut NameSet) {
        match self {
            Formula::Atom(_, args) => {
                for a in args {
                    a.collect_fo_free(bound, out);
                }
            }
            Formula::Bot => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_fo_free(bound, out);
                r.collect_fo_free(bound, out);
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                bound.push(v.clone());
                b.collect_fo_free(bound, out);
                bound.pop();
            }
        }
    }

    fn collect_fo_names(&self, out: &mut NameSet) {
        match self {
            Formula::Atom(p, args) => {
                out.insert(p.clone());
                for a in args {
                    a.collect_fo_names(out);
                }
            }
            Formula::Bot => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_fo_names(out);
                r.collect_fo_names(out);
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                out.insert(v.clone());
                b.collect_fo_names(out);
            }
        }
    }

    fn fo_subst(&self, m: &Term, var: &str) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.fo_subst(m, var)).collect()),
            Formula::Bot => Formula::Bot,
            Formula::And(l, r) => Formula::and(l.fo_subst(m, var), r.fo_subst(m, var)),
            Formula::Or(l, r) => Formula::or(l.fo_subst(m, var), r.fo_subst(m, var)),
            Formula::Imp(l, r) => Formula::imp(l.fo_subst(m, var), r.fo_subst(m, var)),
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                if v == var || !b.has_fo_free(var) {
                    return self.clone();
                }
                let m_free = m.fo_free_vars();
                if m_free.contains(v) {
                    let mut taken = NameSet::new();
                    b.collect_fo_names(&mut taken);
                    m.collect_fo_names(&mut taken);
                    taken.insert(var.to_string());
                    let renamed = fresh_name(v, |n| taken.contains(n));
                    let body = b.fo_subst(&Term::Var(renamed.clone()), v);
                    self.quantifier(renamed, body.fo_subst(m, var))
                } else {
                    self.quantifier(v.clone(), b.fo_subst(m, var))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_equal;

    fn p(args: Vec<Term>) -> Formula {
        Formula::atom("P", args)
    }

    #[test]
    fn free_vars_respect_binders() {
        let f = Formula::forall("a", p(vec![Term::var("a")]));
        assert!(f.fo_free_vars().is_empty());
        let g = Formula::or(p(vec![Term::var("a")]), Formula::atom("Q", vec![Term::var("b")]));
        let fv: Vec<_> = g.fo_free_vars().into_iter().collect();
        assert_eq!(fv, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn substitution_examples() {
        let c = Term::constant("c");
        assert_eq!(p(vec![Term::var("a")]).fo_subst(&c, "a"), p(vec![c.clone()]));
        let closed = Formula::forall("a", p(vec![Term::var("a")]));
        assert_eq!(closed.fo_subst(&c, "a"), closed);
    }

    #[test]
    fn substitution_avoids_capture() {
        // (exists b. Q(a, b))[b/a]
        let f = Formula::exists("b", Formula::atom("Q", vec![Term::var("a"), Term::var("b")]));
        let s = f.fo_subst(&Term::var("b"), "a");
        let expected = Formula::exists("b1", Formula::atom("Q", vec![Term::var("b"), Term::var("b1")]));
        assert_eq!(s, expected);
        // brute-force check: the substituted b occurs free, the bound one does not
        assert!(s.fo_free_vars().contains("b"));
        assert!(!s.fo_free_vars().contains("b1"));
        assert!(alpha_equal(
            &s,
            &Formula::exists("z", Formula::atom("Q", vec![Term::var("b"), Term::var("z")]))
        ));
    }

    #[test]
    fn canonical_identifies_alpha_variants() {
        let f = Formula::forall(
            "a",
            Formula::exists("b", Formula::atom("R", vec![Term::var("a"), Term::var("b")])),
        );
        let g = Formula::forall(
            "x",
            Formula::exists("a", Formula::atom("R", vec![Term::var("x"), Term::var("a")])),
        );
        assert_eq!(f.canonical(), g.canonical());
        assert_ne!(
            f.canonical(),
            Formula::forall(
                "x",
                Formula::exists("a", Formula::atom("R", vec![Term::var("a"), Term::var("x")]))
            )
            .canonical()
        );
    }
}

use super::{Formula, Proof, Term};

/// Pairs of binder names currently in scope on the left and right side,
/// innermost last.
#[derive(Default)]
struct Binders<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Binders<'a> {
    fn same(&self, a: &str, b: &str) -> bool {
        for &(l, r) in self.pairs.iter().rev() {
            if l == a || r == b {
                return l == a && r == b;
            }
        }
        a == b
    }

    fn with<T>(&mut self, a: &'a str, b: &'a str, f: impl FnOnce(&mut Self) -> T) -> T {
        self.pairs.push((a, b));
        let out = f(self);
        self.pairs.pop();
        out
    }
}

/// Equality up to renaming of bound variables.
pub trait AlphaEq {
    fn alpha_eq(&self, other: &Self) -> bool;
}

impl AlphaEq for Formula {
    fn alpha_eq(&self, other: &Self) -> bool {
        formula_eq(self, other, &mut Binders::default())
    }
}

impl AlphaEq for Proof {
    fn alpha_eq(&self, other: &Self) -> bool {
        proof_eq(self, other, &mut Binders::default(), &mut Binders::default())
    }
}

impl AlphaEq for Term {
    fn alpha_eq(&self, other: &Self) -> bool {
        self == other
    }
}

pub fn alpha_equal(a: &Formula, b: &Formula) -> bool {
    a.alpha_eq(b)
}

pub fn alpha_equal_proofs(a: &Proof, b: &Proof) -> bool {
    a.alpha_eq(b)
}

fn term_eq(a: &Term, b: &Term, fo: &Binders) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => fo.same(x, y),
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, fo))
        }
        _ => false,
    }
}

fn formula_eq<'a>(a: &'a Formula, b: &'a Formula, fo: &mut Binders<'a>) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, fo))
        }
        (Formula::Bot, Formula::Bot) => true,
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => formula_eq(a1, b1, fo) && formula_eq(a2, b2, fo),
        (Formula::Forall(x, a), Formula::Forall(y, b)) | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
            fo.with(x, y, |fo| formula_eq(a, b, fo))
        }
        _ => false,
    }
}

fn proof_eq<'a>(a: &'a Proof, b: &'a Proof, fo: &mut Binders<'a>, pv: &mut Binders<'a>) -> bool {
    use Proof::*;
    match (a, b) {
        (Var(x, s), Var(y, t)) => pv.same(x, y) && formula_eq(s, t, fo),
        (Lam(x, s, u), Lam(y, t, v)) => formula_eq(s, t, fo) && pv.with(x, y, |pv| proof_eq(u, v, fo, pv)),
        (App(a1, a2), App(b1, b2)) | (Pair(a1, a2), Pair(b1, b2)) => {
            proof_eq(a1, b1, fo, pv) && proof_eq(a2, b2, fo, pv)
        }
        (Proj(u, i), Proj(v, j)) => i == j && proof_eq(u, v, fo, pv),
        (Inj(i, u, s), Inj(j, v, t)) => i == j && formula_eq(s, t, fo) && proof_eq(u, v, fo, pv),
        (Case(s1, x1, l1, y1, r1), Case(s2, x2, l2, y2, r2)) => {
            proof_eq(s1, s2, fo, pv)
                && pv.with(x1, x2, |pv| proof_eq(l1, l2, fo, pv))
                && pv.with(y1, y2, |pv| proof_eq(r1, r2, fo, pv))
        }
        (Gen(x, u), Gen(y, v)) => fo.with(x, y, |fo| proof_eq(u, v, fo, pv)),
        (Inst(u, m), Inst(v, n)) => term_eq(m, n, fo) && proof_eq(u, v, fo, pv),
        (Pack(m, u, s), Pack(n, v, t)) => term_eq(m, n, fo) && formula_eq(s, t, fo) && proof_eq(u, v, fo, pv),
        (Unpack(s1, a1, x1, u), Unpack(s2, a2, x2, v)) => {
            proof_eq(s1, s2, fo, pv) && fo.with(a1, a2, |fo| pv.with(x1, x2, |pv| proof_eq(u, v, fo, pv)))
        }
        (Axiom(s), Axiom(t)) => formula_eq(s, t, fo),
        (Efq(s, u), Efq(t, v)) => formula_eq(s, t, fo) && proof_eq(u, v, fo, pv),
        (Falsity, Falsity) => true,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &str) -> Formula {
        Formula::atom("P", vec![Term::var(v)])
    }

    #[test]
    fn renamed_quantifiers_are_equal() {
        assert!(alpha_equal(
            &Formula::forall("a", p("a")),
            &Formula::forall("b", p("b"))
        ));
        assert!(!alpha_equal(
            &Formula::forall("a", p("a")),
            &Formula::forall("a", Formula::atom("Q", vec![Term::var("a")]))
        ));
    }

    #[test]
    fn free_and_bound_are_distinguished() {
        // forall a. P(b)  vs  forall b. P(b)
        assert!(!alpha_equal(
            &Formula::forall("a", p("b")),
            &Formula::forall("b", p("b"))
        ));
        // forall a. forall b. R(a,b) vs forall b. forall a. R(b,a)
        let r = |x: &str, y: &str| Formula::atom("R", vec![Term::var(x), Term::var(y)]);
        assert!(alpha_equal(
            &Formula::forall("a", Formula::forall("b", r("a", "b"))),
            &Formula::forall("b", Formula::forall("a", r("b", "a")))
        ));
        assert!(!alpha_equal(
            &Formula::forall("a", Formula::forall("b", r("a", "b"))),
            &Formula::forall("a", Formula::forall("b", r("b", "a")))
        ));
    }

    #[test]
    fn lambda_binders() {
        let q = Formula::atom("Q", vec![]);
        let l = Proof::lam("x", q.clone(), Proof::var("x", q.clone()));
        let r = Proof::lam("y", q.clone(), Proof::var("y", q.clone()));
        assert!(alpha_equal_proofs(&l, &r));
        let k = Proof::lam("y", q.clone(), Proof::var("x", q.clone()));
        assert!(!alpha_equal_proofs(&l, &k));
    }

    #[test]
    fn variable_annotations_follow_fo_binders() {
        let l = Proof::gen("a", Proof::lam("x", p("a"), Proof::var("x", p("a"))));
        let r = Proof::gen("b", Proof::lam("x", p("b"), Proof::var("x", p("b"))));
        assert!(alpha_equal_proofs(&l, &r));
    }
}

//! Seeded generator of well-typed CD proof terms.
//!
//! Terms are built goal-first. Each goal is met by an introduction, by a leaf
//! (a bound variable of the right type or a fresh hypothesis), or by a
//! detour that plants a redex of one of the seven rules. Fresh hypotheses
//! are generalized over the eigenvariables in scope and instantiated back,
//! so the context never mentions a bound first-order variable and every
//! eigenvariable condition holds by construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::signature::Signature;
use crate::syntax::{Context, FoSyntax, Formula, Proof, Side, Term};

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    /// Maximum recursion depth of the generator.
    pub max_depth: usize,
    /// Soft cap on generator calls per term. Past it every goal is a leaf.
    pub max_nodes: usize,
    /// Maximum depth of random formulas.
    pub formula_depth: usize,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig {
            max_depth: 8,
            max_nodes: 150,
            formula_depth: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub context: Context,
    pub term: Proof,
    pub ty: Formula,
}

/// Symbols the generated terms are drawn from.
pub fn signature() -> Signature {
    Signature::new()
        .with_constant("c")
        .with_predicate("P", 1)
        .with_predicate("R", 1)
        .with_predicate("Q", 0)
}

/// The `index`-th term of the stream determined by `seed`. Each index has
/// its own generator stream, so batches may be produced in any order.
pub fn generate(seed: u64, index: u64, config: &GenConfig) -> Generated {
    generate_in(seed, index, config, &[])
}

/// Like [`generate`], with the given first-order variables free in the goal
/// and the term. Hypotheses stay closed.
pub fn generate_in(seed: u64, index: u64, config: &GenConfig, free: &[String]) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut g = Gen {
        rng,
        config: *config,
        nodes: 0,
        fresh: 0,
        hyps: Vec::new(),
    };
    let ty = g.formula(free, config.formula_depth + 1);
    let term = g.term(&mut Vec::new(), free, &ty, 0);
    Generated {
        context: g.hyps.into_iter().collect(),
        term,
        ty,
    }
}

pub fn generate_batch(seed: u64, count: usize, config: &GenConfig) -> Vec<Generated> {
    (0..count as u64).map(|i| generate(seed, i, config)).collect()
}

struct Gen {
    rng: ChaCha8Rng,
    config: GenConfig,
    nodes: usize,
    fresh: usize,
    hyps: Vec<(String, Formula)>,
}

/// Bound proof variables in scope.
type Locals = Vec<(String, Formula)>;

impl Gen {
    fn name(&mut self, stem: &str) -> String {
        self.fresh += 1;
        format!("{stem}{}", self.fresh)
    }

    fn fo_term(&mut self, vars: &[String]) -> Term {
        let n = vars.len();
        match self.rng.gen_range(0..n + 2) {
            0 => Term::constant("c"),
            1 => Term::dum(),
            i => Term::var(vars[i - 2].clone()),
        }
    }

    fn atom(&mut self, vars: &[String]) -> Formula {
        match self.rng.gen_range(0..4) {
            0 => Formula::atom("Q", vec![]),
            1 => Formula::atom("R", vec![self.fo_term(vars)]),
            _ => Formula::atom("P", vec![self.fo_term(vars)]),
        }
    }

    fn formula(&mut self, vars: &[String], depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return if self.rng.gen_bool(0.1) {
                Formula::Bot
            } else {
                self.atom(vars)
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..6) {
            0 => Formula::and(self.formula(vars, d), self.formula(vars, d)),
            1 => Formula::or(self.formula(vars, d), self.formula(vars, d)),
            2 => Formula::imp(self.formula(vars, d), self.formula(vars, d)),
            k => {
                let v = self.name("b");
                let mut inner = vars.to_vec();
                inner.push(v.clone());
                let body = self.formula(&inner, d);
                if k == 5 {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                }
            }
        }
    }

    /// A fresh hypothesis closed over the variables of `goal`, instantiated
    /// back at those variables.
    fn hypothesis(&mut self, vars: &[String], goal: &Formula) -> Proof {
        let free = goal.fo_free_vars();
        let over: Vec<&String> = vars.iter().filter(|v| free.contains(*v)).collect();
        let ty = over
            .iter()
            .rev()
            .fold(goal.clone(), |acc, v| Formula::forall((*v).clone(), acc));
        let h = self.name("h");
        self.hyps.push((h.clone(), ty.clone()));
        over.into_iter()
            .fold(Proof::var(h, ty), |acc, v| Proof::inst(acc, Term::var(v.clone())))
    }

    fn leaf(&mut self, locals: &Locals, vars: &[String], goal: &Formula) -> Proof {
        let matching: Vec<&(String, Formula)> = locals.iter().filter(|(_, t)| t == goal).collect();
        if let Some((x, t)) = matching.choose(&mut self.rng) {
            return Proof::var(x.clone(), t.clone());
        }
        if matches!(goal, Formula::Atom(..)) && self.rng.gen_bool(0.2) {
            return Proof::efq(goal.clone(), self.hypothesis(vars, &Formula::Bot));
        }
        self.hypothesis(vars, goal)
    }

    fn term(&mut self, locals: &mut Locals, vars: &[String], goal: &Formula, depth: usize) -> Proof {
        self.nodes += 1;
        let d = depth + 1;
        if d >= self.config.max_depth || self.nodes >= self.config.max_nodes || self.rng.gen_bool(0.15) {
            return self.leaf(locals, vars, goal);
        }
        if self.rng.gen_bool(0.45) {
            if let Some(t) = self.intro(locals, vars, goal, d) {
                return t;
            }
        }
        self.detour(locals, vars, goal, d)
    }

    fn intro(&mut self, locals: &mut Locals, vars: &[String], goal: &Formula, d: usize) -> Option<Proof> {
        Some(match goal {
            Formula::Imp(a, b) => {
                let x = self.name("x");
                locals.push((x.clone(), (**a).clone()));
                let body = self.term(locals, vars, b, d);
                locals.pop();
                Proof::lam(x, (**a).clone(), body)
            }
            Formula::And(a, b) => Proof::pair(self.term(locals, vars, a, d), self.term(locals, vars, b, d)),
            Formula::Or(a, b) => {
                if self.rng.gen_bool(0.5) {
                    Proof::inj(Side::Left, self.term(locals, vars, a, d), goal.clone())
                } else {
                    Proof::inj(Side::Right, self.term(locals, vars, b, d), goal.clone())
                }
            }
            Formula::Forall(v, a) => {
                let e = self.name("a");
                let body_ty = a.fo_subst(&Term::var(e.clone()), v);
                let mut inner = vars.to_vec();
                inner.push(e.clone());
                Proof::gen(e, self.term(locals, &inner, &body_ty, d))
            }
            Formula::Exists(v, a) => {
                let m = self.fo_term(vars);
                let body_ty = a.fo_subst(&m, v);
                Proof::pack(m, self.term(locals, vars, &body_ty, d), goal.clone())
            }
            Formula::Atom(..) | Formula::Bot => return None,
        })
    }

    fn detour(&mut self, locals: &mut Locals, vars: &[String], goal: &Formula, d: usize) -> Proof {
        let small = self.config.formula_depth.min(1);
        match self.rng.gen_range(0..7) {
            // (λx. t) u
            0 => {
                let b = self.formula(vars, small);
                let x = self.name("x");
                locals.push((x.clone(), b.clone()));
                let body = self.term(locals, vars, goal, d);
                locals.pop();
                Proof::app(Proof::lam(x, b.clone(), body), self.term(locals, vars, &b, d))
            }
            // (t, u).i
            1 => {
                let other = self.formula(vars, small);
                let t = self.term(locals, vars, goal, d);
                let u = self.term(locals, vars, &other, d);
                if self.rng.gen_bool(0.5) {
                    Proof::proj(Proof::pair(t, u), Side::Left)
                } else {
                    Proof::proj(Proof::pair(u, t), Side::Right)
                }
            }
            // inj_i t [x. u, y. v]
            2 => {
                let (l, r) = (self.formula(vars, small), self.formula(vars, small));
                let disj = Formula::or(l.clone(), r.clone());
                let side = if self.rng.gen_bool(0.5) {
                    Side::Left
                } else {
                    Side::Right
                };
                let inner = self.term(locals, vars, if side == Side::Left { &l } else { &r }, d);
                self.case_on(locals, vars, goal, d, Proof::inj(side, inner, disj), l, r)
            }
            // (λβ. t) m
            3 => {
                let free = goal.fo_free_vars();
                let candidates: Vec<&String> = vars.iter().filter(|v| free.contains(*v)).collect();
                let m = match candidates.choose(&mut self.rng) {
                    Some(v) if self.rng.gen_bool(0.7) => Term::var((*v).clone()),
                    _ => self.fo_term(vars),
                };
                let beta = self.name("a");
                let abstracted = match &m {
                    Term::Var(v) => goal.fo_subst(&Term::var(beta.clone()), v),
                    _ => goal.clone(),
                };
                let mut inner = vars.to_vec();
                inner.push(beta.clone());
                let body = self.term(locals, &inner, &abstracted, d);
                Proof::inst(Proof::gen(beta, body), m)
            }
            // (m, t)[(β, x). u]
            4 => {
                let v = self.name("b");
                let mut with_v = vars.to_vec();
                with_v.push(v.clone());
                let body_ty = self.formula(&with_v, small);
                let ex = Formula::exists(v.clone(), body_ty.clone());
                let m = self.fo_term(vars);
                let packed = self.term(locals, vars, &body_ty.fo_subst(&m, &v), d);
                let beta = self.name("a");
                let x = self.name("x");
                let x_ty = body_ty.fo_subst(&Term::var(beta.clone()), &v);
                let mut inner = vars.to_vec();
                inner.push(beta.clone());
                locals.push((x.clone(), x_ty));
                let body = self.term(locals, &inner, goal, d);
                locals.pop();
                Proof::unpack(Proof::pack(m, packed, ex), beta, x, body)
            }
            // D (λα. inj_i t) [x. u, y. v]
            _ => {
                let alpha = self.name("b");
                let mut with_alpha = vars.to_vec();
                with_alpha.push(alpha.clone());
                let a = match self.rng.gen_range(0..3) {
                    0 => Formula::atom("P", vec![Term::var(alpha.clone())]),
                    1 => Formula::atom("R", vec![Term::var(alpha.clone())]),
                    _ => self.formula(&with_alpha, small),
                };
                let b = self.formula(vars, small);
                let instance = Formula::imp(
                    Formula::forall(alpha.clone(), Formula::or(a.clone(), b.clone())),
                    Formula::or(Formula::forall(alpha.clone(), a.clone()), b.clone()),
                );
                let e = self.name("a");
                let a_e = a.fo_subst(&Term::var(e.clone()), &alpha);
                let mut inner = vars.to_vec();
                inner.push(e.clone());
                let side = if self.rng.gen_bool(0.5) {
                    Side::Left
                } else {
                    Side::Right
                };
                let arg = if self.rng.gen_bool(0.85) {
                    let payload = self.term(locals, &inner, if side == Side::Left { &a_e } else { &b }, d);
                    Proof::gen(e, Proof::inj(side, payload, Formula::or(a_e.clone(), b.clone())))
                } else {
                    self.term(
                        locals,
                        vars,
                        &Formula::forall(alpha.clone(), Formula::or(a.clone(), b.clone())),
                        d,
                    )
                };
                let scrut = Proof::app(Proof::Axiom(instance), arg);
                self.case_on(locals, vars, goal, d, scrut, Formula::forall(alpha, a), b)
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn case_on(
        &mut self,
        locals: &mut Locals,
        vars: &[String],
        goal: &Formula,
        d: usize,
        scrut: Proof,
        l: Formula,
        r: Formula,
    ) -> Proof {
        let (x, y) = (self.name("x"), self.name("y"));
        locals.push((x.clone(), l));
        let left = self.term(locals, vars, goal, d);
        locals.pop();
        locals.push((y.clone(), r));
        let right = self.term(locals, vars, goal, d);
        locals.pop();
        Proof::case(scrut, x, left, y, right)
    }
}

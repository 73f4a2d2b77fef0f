//! Translation of CD proof terms into IL⊥ and the simulation check.
//!
//! Every constant `D^I`, with `I = ∀α(A ∨ B) → (∀α A) ∨ B`, is replaced by
//!
//! ```text
//! λf. f dum [z. inj0 (λα. f α [x. x, y. d^A]), z. inj1 z]
//! ```
//!
//! where `d^A` is a canonical closed inhabitant of `A` built from the falsity
//! constant `F`. All other structure is kept. A CD step `v ↦ w` is matched by
//! at least one IL⊥ step from the translation of `v` to that of `w`.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::reduce::{find_redexes, first_redex, step_at, RuleTag, Step};
use crate::syntax::{alpha_equal_proofs, fresh_name, FoSyntax, Formula, NameSet, Path, Proof, Side, Term};
use crate::typing::CdInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("{0} is not an instance of the constant domain axiom")]
    BadCDInstance(Formula),
    #[error("{rule} step at {path} is not simulated within {fuel} steps")]
    NotSimulated { rule: RuleTag, path: Path, fuel: usize },
}

/// Translation session. Dummy terms are memoized per formula up to
/// alpha-equivalence.
#[derive(Debug, Default)]
pub struct Translator {
    cache: HashMap<Formula, Proof>,
}

impl Translator {
    pub fn new() -> Translator {
        Translator::default()
    }

    /// Number of memoized dummy terms.
    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    /// Closed IL⊥ term of type `a`.
    pub fn dummy_term(&mut self, a: &Formula) -> Proof {
        let key = a.canonical();
        if let Some(d) = self.cache.get(&key) {
            return d.clone();
        }
        let d = match a {
            Formula::Atom(..) => Proof::efq(a.clone(), Proof::Falsity),
            Formula::Bot => Proof::Falsity,
            Formula::And(l, r) => Proof::pair(self.dummy_term(l), self.dummy_term(r)),
            Formula::Or(l, _) => Proof::inj(Side::Left, self.dummy_term(l), a.clone()),
            Formula::Imp(l, r) => {
                let mut names = NameSet::new();
                l.collect_fo_names(&mut names);
                let x = if names.contains("x") {
                    fresh_name("x", |n| names.contains(n))
                } else {
                    "x".to_string()
                };
                Proof::lam(x, (**l).clone(), self.dummy_term(r))
            }
            Formula::Forall(v, body) => Proof::gen(v.clone(), self.dummy_term(body)),
            Formula::Exists(v, body) => {
                let inst = body.fo_subst(&Term::dum(), v);
                Proof::pack(Term::dum(), self.dummy_term(&inst), a.clone())
            }
        };
        self.cache.insert(key, d.clone());
        d
    }

    /// The IL⊥ term standing for `D^I`.
    pub fn translate_axiom(&mut self, instance: &Formula) -> Result<Proof, TranslateError> {
        let cd = CdInstance::parse(instance).ok_or_else(|| TranslateError::BadCDInstance(instance.clone()))?;
        let mut taken = NameSet::new();
        instance.collect_fo_names(&mut taken);
        let mut pick = |base: &str| {
            let name = if taken.contains(base) {
                fresh_name(base, |n| taken.contains(n))
            } else {
                base.to_string()
            };
            taken.insert(name.clone());
            name
        };
        let (f, z, x, y) = (pick("f"), pick("z"), pick("x"), pick("y"));
        let alpha = cd.var.clone();
        let premise = cd.premise();
        let fv = Proof::var(f.clone(), premise.clone());

        // λα. f α [x. x, y. d^A]
        let inner = Proof::gen(
            alpha.clone(),
            Proof::case(
                Proof::inst(fv.clone(), Term::var(alpha.clone())),
                x.clone(),
                Proof::var(x, cd.left.clone()),
                y,
                self.dummy_term(&cd.left),
            ),
        );
        let body = Proof::case(
            Proof::inst(fv, Term::dum()),
            z.clone(),
            Proof::inj(Side::Left, inner, cd.conclusion.clone()),
            z.clone(),
            Proof::inj(Side::Right, Proof::var(z, cd.right.clone()), cd.conclusion.clone()),
        );
        Ok(Proof::lam(f, premise, body))
    }

    /// Replaces every `D^I` by its translation.
    pub fn translate(&mut self, t: &Proof) -> Result<Proof, TranslateError> {
        Ok(match t {
            Proof::Axiom(i) => self.translate_axiom(i)?,
            Proof::Var(..) | Proof::Falsity => t.clone(),
            Proof::Lam(x, ty, b) => Proof::lam(x.clone(), ty.clone(), self.translate(b)?),
            Proof::App(a, b) => Proof::app(self.translate(a)?, self.translate(b)?),
            Proof::Pair(a, b) => Proof::pair(self.translate(a)?, self.translate(b)?),
            Proof::Proj(a, i) => Proof::proj(self.translate(a)?, *i),
            Proof::Inj(i, a, ann) => Proof::inj(*i, self.translate(a)?, ann.clone()),
            Proof::Case(s, x, l, y, r) => Proof::case(
                self.translate(s)?,
                x.clone(),
                self.translate(l)?,
                y.clone(),
                self.translate(r)?,
            ),
            Proof::Gen(v, b) => Proof::gen(v.clone(), self.translate(b)?),
            Proof::Inst(a, m) => Proof::inst(self.translate(a)?, m.clone()),
            Proof::Pack(m, a, ann) => Proof::pack(m.clone(), self.translate(a)?, ann.clone()),
            Proof::Unpack(s, v, x, b) => Proof::unpack(self.translate(s)?, v.clone(), x.clone(), self.translate(b)?),
            Proof::Efq(p, a) => Proof::efq(p.clone(), self.translate(a)?),
        })
    }
}

pub fn dummy_term(a: &Formula) -> Proof {
    Translator::new().dummy_term(a)
}

pub fn translate_axiom(instance: &Formula) -> Result<Proof, TranslateError> {
    Translator::new().translate_axiom(instance)
}

pub fn translate(t: &Proof) -> Result<Proof, TranslateError> {
    Translator::new().translate(t)
}

/// How a simulating reduction sequence was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimulationStrategy {
    /// Leftmost-outermost inside the image of the contracted redex.
    LocalLeftmostOutermost,
    /// Leftmost-outermost on the whole translated term.
    LeftmostOutermost,
    /// Breadth-first search over all redexes.
    Search,
}

#[derive(Debug, Clone)]
pub struct SimulationReport {
    pub length: usize,
    pub strategy: SimulationStrategy,
    pub steps: Vec<Step>,
}

/// Bounds of the breadth-first fallback.
const SEARCH_DEPTH: usize = 8;
const SEARCH_WIDTH: usize = 4096;

/// Finds a nonempty IL⊥ reduction from the translation of `step.before` to a
/// term alpha-equal to the translation of `step.after`.
pub fn check_simulation(step: &Step, fuel: usize) -> Result<SimulationReport, TranslateError> {
    let mut tr = Translator::new();
    let source = tr.translate(&step.before)?;
    let target = tr.translate(&step.after)?;

    let local = || -> Option<Vec<Step>> {
        // D nodes are leaves, so the redex sits at the same path in the image.
        let sub = source.subterm(&step.path)?;
        let goal = target.subterm(&step.path)?;
        let steps = leftmost_outermost_until(sub, goal, fuel)?;
        Some(
            steps
                .into_iter()
                .map(|s| Step {
                    rule: s.rule,
                    path: step.path.join(&s.path),
                    before: source.replace(&step.path, s.before).expect("path exists"),
                    after: source.replace(&step.path, s.after).expect("path exists"),
                })
                .collect(),
        )
    };
    if let Some(steps) = local() {
        return Ok(report(steps, SimulationStrategy::LocalLeftmostOutermost));
    }
    if let Some(steps) = leftmost_outermost_until(&source, &target, fuel) {
        return Ok(report(steps, SimulationStrategy::LeftmostOutermost));
    }
    if let Some(steps) = breadth_first(&source, &target) {
        return Ok(report(steps, SimulationStrategy::Search));
    }
    Err(TranslateError::NotSimulated {
        rule: step.rule,
        path: step.path.clone(),
        fuel,
    })
}

fn report(steps: Vec<Step>, strategy: SimulationStrategy) -> SimulationReport {
    SimulationReport {
        length: steps.len(),
        strategy,
        steps,
    }
}

fn leftmost_outermost_until(from: &Proof, goal: &Proof, fuel: usize) -> Option<Vec<Step>> {
    let mut steps: Vec<Step> = Vec::new();
    let mut cur = from.clone();
    while steps.len() < fuel {
        let (path, _) = first_redex(&cur)?;
        let s = step_at(&cur, &path).ok()?;
        cur = s.after.clone();
        steps.push(s);
        if alpha_equal_proofs(&cur, goal) {
            return Some(steps);
        }
    }
    None
}

fn breadth_first(from: &Proof, goal: &Proof) -> Option<Vec<Step>> {
    let mut queue: VecDeque<(Proof, Vec<Step>)> = VecDeque::from([(from.clone(), Vec::new())]);
    let mut visited = 0usize;
    while let Some((t, trail)) = queue.pop_front() {
        if trail.len() >= SEARCH_DEPTH {
            continue;
        }
        for (path, _) in find_redexes(&t) {
            let Ok(s) = step_at(&t, &path) else { continue };
            let mut next = trail.clone();
            let after = s.after.clone();
            next.push(s);
            if alpha_equal_proofs(&after, goal) {
                return Some(next);
            }
            visited += 1;
            if visited > SEARCH_WIDTH {
                return None;
            }
            queue.push_back((after, next));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::step;
    use crate::syntax::Context;
    use crate::typing::{check, Mode};

    fn pa(v: &str) -> Formula {
        Formula::atom("P", vec![Term::var(v)])
    }
    fn q() -> Formula {
        Formula::atom("Q", vec![])
    }
    fn instance() -> Formula {
        Formula::imp(
            Formula::forall("a", Formula::or(pa("a"), q())),
            Formula::or(Formula::forall("a", pa("a")), q()),
        )
    }

    #[test]
    fn dummy_terms_have_their_type() {
        let d = dummy_term(&q());
        assert_eq!(d, Proof::efq(q(), Proof::Falsity));
        let imp = Formula::imp(pa("a"), q());
        assert_eq!(
            dummy_term(&imp),
            Proof::lam("x", pa("a"), Proof::efq(q(), Proof::Falsity))
        );
        let ex = Formula::exists("a", pa("a"));
        let d = dummy_term(&ex);
        assert_eq!(
            d,
            Proof::pack(
                Term::dum(),
                Proof::efq(Formula::atom("P", vec![Term::dum()]), Proof::Falsity),
                ex.clone()
            )
        );
        check(&Context::new(), &d, &ex, Mode::IlBot).unwrap();
    }

    #[test]
    fn cache_is_shared_across_alpha_variants() {
        let mut tr = Translator::new();
        tr.dummy_term(&Formula::forall("a", pa("a")));
        let n = tr.cached();
        tr.dummy_term(&Formula::forall("b", pa("b")));
        assert_eq!(tr.cached(), n);
    }

    #[test]
    fn axiom_translation_has_the_displayed_shape() {
        let t = translate_axiom(&instance()).unwrap();
        assert_eq!(
            t.to_string(),
            "fun (f : forall a. (P(a) | Q)) => case f @ dum of { inl z => inl[forall a. P(a) | Q] (gen a => case f @ a of { inl x => x | inr y => efq[P(a)](F) }) | inr z => inr[forall a. P(a) | Q] z }"
        );
        check(&Context::new(), &t, &instance(), Mode::IlBot).unwrap();
        assert!(!t.contains_axiom());
    }

    #[test]
    fn bad_instance_is_rejected() {
        let bad = Formula::imp(
            Formula::forall("a", Formula::or(pa("a"), pa("a"))),
            Formula::or(Formula::forall("a", pa("a")), pa("a")),
        );
        assert_eq!(translate_axiom(&bad), Err(TranslateError::BadCDInstance(bad.clone())));
    }

    #[test]
    fn axiom_free_terms_are_fixed_points() {
        let id = Proof::lam("x", q(), Proof::var("x", q()));
        assert_eq!(translate(&id).unwrap(), id);
    }

    #[test]
    fn beta_is_simulated_in_one_step() {
        let id = Proof::lam("x", q(), Proof::var("x", q()));
        let t = Proof::app(id, Proof::var("y", q()));
        let s = step(&t).unwrap();
        let r = check_simulation(&s, 100).unwrap();
        assert_eq!(r.length, 1);
    }

    fn cd_redex(side: Side) -> Proof {
        let ann = Formula::or(pa("a"), q());
        let u = match side {
            Side::Left => Proof::inst(Proof::var("h", Formula::forall("b", pa("b"))), Term::var("a")),
            Side::Right => Proof::var("w", q()),
        };
        Proof::app(Proof::Axiom(instance()), Proof::gen("a", Proof::inj(side, u, ann)))
    }

    // Chains worked out by hand from the shape of the translated constant:
    // inj0: β, then f dum, case, f α, case; inj1: β, f dum, case.
    #[test]
    fn root_cd_steps_have_golden_lengths() {
        use RuleTag::*;
        let golden = [
            (Side::Left, vec![Beta, FOBeta, CaseInj, FOBeta, CaseInj]),
            (Side::Right, vec![Beta, FOBeta, CaseInj]),
        ];
        for (side, rules) in golden {
            let s = step(&cd_redex(side)).unwrap();
            let r = check_simulation(&s, 100).unwrap();
            assert_eq!(r.strategy, SimulationStrategy::LocalLeftmostOutermost);
            assert_eq!(r.steps.iter().map(|s| s.rule).collect::<Vec<_>>(), rules);
            assert_eq!(r.length, rules.len());
        }
    }
}

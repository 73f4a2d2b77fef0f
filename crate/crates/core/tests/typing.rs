use cdkernel::{
    check, check_cd_instance, fo_free_vars, infer, Context, ErrorKind, Formula, Mode, Path, Proof, Side, Term,
};

fn p() -> Formula {
    Formula::atom("P", vec![])
}
fn q() -> Formula {
    Formula::atom("Q", vec![])
}
fn pv(v: &str) -> Formula {
    Formula::atom("P", vec![Term::var(v)])
}
fn id(ty: Formula) -> Proof {
    Proof::lam("x", ty.clone(), Proof::var("x", ty))
}
fn cd(a: Formula, b: Formula) -> Formula {
    Formula::imp(
        Formula::forall("a", Formula::or(a.clone(), b.clone())),
        Formula::or(Formula::forall("a", a), b),
    )
}

#[test]
fn identity() {
    let ctx = Context::new();
    assert_eq!(infer(&ctx, &id(p()), Mode::Cd).unwrap(), Formula::imp(p(), p()));
    check(&ctx, &id(p()), &Formula::imp(p(), p()), Mode::Cd).unwrap();
    let e = check(&ctx, &id(p()), &Formula::imp(p(), q()), Mode::Cd).unwrap_err();
    assert_eq!(e.kind, ErrorKind::Mismatch);
    assert_eq!(e.expected, Some(Formula::imp(p(), q())));
    assert_eq!(e.actual, Some(Formula::imp(p(), p())));
}

#[test]
fn instance_recognition() {
    assert!(check_cd_instance(&cd(pv("a"), q())));
    let qa = Formula::atom("Q", vec![Term::var("a")]);
    assert!(!check_cd_instance(&cd(pv("a"), qa)));
    let b = Formula::exists("b", Formula::negation(pv("b")));
    assert!(fo_free_vars(&b).is_empty());
    assert!(check_cd_instance(&cd(pv("a"), b)));
}

#[test]
fn axiom_has_its_instance_as_type() {
    let i = cd(pv("a"), q());
    assert_eq!(infer(&Context::new(), &Proof::Axiom(i.clone()), Mode::Cd).unwrap(), i);
    let e = infer(&Context::new(), &Proof::Axiom(i), Mode::IlBot).unwrap_err();
    assert_eq!(e.kind, ErrorKind::ModeViolation);
}

#[test]
fn axiom_applied_to_an_injection() {
    let fty = Formula::forall("b", pv("b"));
    let ctx: Context = [("f".to_string(), fty.clone())].into_iter().collect();
    let arg = Proof::gen(
        "a",
        Proof::inj(
            Side::Left,
            Proof::inst(Proof::var("f", fty), Term::var("a")),
            Formula::or(pv("a"), q()),
        ),
    );
    let t = Proof::app(Proof::Axiom(cd(pv("a"), q())), arg);
    assert_eq!(
        infer(&ctx, &t, Mode::Cd).unwrap(),
        Formula::or(Formula::forall("a", pv("a")), q())
    );
}

#[test]
fn eigenvariable_condition_on_generalization() {
    let t = Proof::gen("a", Proof::var("x", pv("a")));
    let ctx: Context = [("x".to_string(), pv("a"))].into_iter().collect();
    let e = infer(&ctx, &t, Mode::Cd).unwrap_err();
    assert_eq!(e.kind, ErrorKind::EigenvariableViolation);
    assert_eq!(e.path, Path::root());
    // with x not declared the free occurrence is reported first
    let e = infer(&Context::new(), &t, Mode::Cd).unwrap_err();
    assert_eq!(e.kind, ErrorKind::EigenvariableViolation);
}

#[test]
fn eigenvariable_condition_on_unpacking() {
    let ex = Formula::exists("a", pv("a"));
    let h = Proof::var("h", ex.clone());
    let escape = Proof::lam(
        "h",
        ex.clone(),
        Proof::unpack(h.clone(), "a", "u", Proof::var("u", pv("a"))),
    );
    assert_eq!(
        infer(&Context::new(), &escape, Mode::Cd).unwrap_err().kind,
        ErrorKind::EigenvariableViolation
    );

    let ctx: Context = [("w".to_string(), pv("a"))].into_iter().collect();
    let uses_w = Proof::unpack(h, "a", "u", Proof::var("w", pv("a")));
    let ctx = ctx.with("h", ex);
    assert_eq!(
        infer(&ctx, &uses_w, Mode::Cd).unwrap_err().kind,
        ErrorKind::EigenvariableViolation
    );
}

#[test]
fn ex_falso_targets_atoms_only() {
    let z = Proof::var("z", Formula::Bot);
    let ok = Proof::lam("z", Formula::Bot, Proof::efq(p(), z.clone()));
    assert_eq!(
        infer(&Context::new(), &ok, Mode::Cd).unwrap(),
        Formula::imp(Formula::Bot, p())
    );
    let bad = Proof::lam("z", Formula::Bot, Proof::efq(Formula::and(p(), p()), z));
    let e = infer(&Context::new(), &bad, Mode::Cd).unwrap_err();
    assert_eq!(e.kind, ErrorKind::NonAtomicEfq);
    assert_eq!(e.path, Path(vec![0]));
}

#[test]
fn falsity_constant_only_in_target_mode() {
    assert_eq!(
        infer(&Context::new(), &Proof::Falsity, Mode::IlBot).unwrap(),
        Formula::Bot
    );
    assert_eq!(
        infer(&Context::new(), &Proof::Falsity, Mode::Cd).unwrap_err().kind,
        ErrorKind::ModeViolation
    );
}

#[test]
fn unbound_variable() {
    let e = infer(&Context::new(), &Proof::var("y", p()), Mode::Cd).unwrap_err();
    assert_eq!(e.kind, ErrorKind::UnboundVariable);
}

#[test]
fn packing_checks_the_instance() {
    let c = Term::constant("c");
    let ex = Formula::exists("a", Formula::imp(pv("a"), pv("a")));
    let good = Proof::pack(c.clone(), id(Formula::atom("P", vec![c.clone()])), ex.clone());
    assert_eq!(infer(&Context::new(), &good, Mode::Cd).unwrap(), ex);
    let bad = Proof::pack(c, id(p()), ex);
    assert_eq!(
        infer(&Context::new(), &bad, Mode::Cd).unwrap_err().kind,
        ErrorKind::Mismatch
    );
}

#[test]
fn case_branches_must_agree() {
    let d = Proof::var("d", Formula::or(p(), q()));
    let t = Proof::case(d, "x", Proof::var("x", p()), "y", Proof::var("y", q()));
    let ctx: Context = [("d".to_string(), Formula::or(p(), q()))].into_iter().collect();
    assert_eq!(infer(&ctx, &t, Mode::Cd).unwrap_err().kind, ErrorKind::Mismatch);
}

// ∀α(A∨¬A) → ∀αA ∨ ∃α¬A by λh. D(λα. h α [x. inj0 x, y. inj1 (α, y)])
#[test]
fn excluded_middle_over_decidables() {
    let a = pv("a");
    let not_ex = Formula::exists("b", Formula::negation(pv("b")));
    let hyp = Formula::forall("a", Formula::or(a.clone(), Formula::negation(a.clone())));
    let goal = Formula::imp(
        hyp.clone(),
        Formula::or(Formula::forall("a", a.clone()), not_ex.clone()),
    );
    let ann = Formula::or(a.clone(), not_ex.clone());
    let body = Proof::gen(
        "a",
        Proof::case(
            Proof::inst(Proof::var("h", hyp.clone()), Term::var("a")),
            "x",
            Proof::inj(Side::Left, Proof::var("x", a.clone()), ann.clone()),
            "y",
            Proof::inj(
                Side::Right,
                Proof::pack(
                    Term::var("a"),
                    Proof::var("y", Formula::negation(a.clone())),
                    not_ex.clone(),
                ),
                ann,
            ),
        ),
    );
    let t = Proof::lam("h", hyp, Proof::app(Proof::Axiom(cd(a, not_ex)), body));
    check(&Context::new(), &t, &goal, Mode::Cd).unwrap();
}

#[test]
fn inferred_types_of_alpha_variants_agree() {
    let t1 = Proof::gen("a", id(pv("a")));
    let t2 = Proof::gen("b", id(pv("b")));
    let (a, b) = (
        infer(&Context::new(), &t1, Mode::Cd).unwrap(),
        infer(&Context::new(), &t2, Mode::Cd).unwrap(),
    );
    assert!(cdkernel::alpha_equal(&a, &b));
}

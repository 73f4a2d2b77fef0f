use super::{fresh_name, FoSyntax, Formula, NameSet, Path, Side, Term};

/// Curry-Howard proof term. Variables carry their type (`x^A`); `Inj` and
/// `Pack` carry the whole introduced formula; `Axiom` carries its instance of
/// the constant domain axiom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Proof {
    Var(String, Formula),
    Lam(String, Formula, Box<Proof>),
    App(Box<Proof>, Box<Proof>),
    Pair(Box<Proof>, Box<Proof>),
    Proj(Box<Proof>, Side),
    Inj(Side, Box<Proof>, Formula),
    Case(Box<Proof>, String, Box<Proof>, String, Box<Proof>),
    /// First-order abstraction `λα. t`.
    Gen(String, Box<Proof>),
    /// First-order application `t m`.
    Inst(Box<Proof>, Term),
    /// Existential introduction `(m, t)`.
    Pack(Term, Box<Proof>, Formula),
    /// Existential elimination `t [(α, x). u]`.
    Unpack(Box<Proof>, String, String, Box<Proof>),
    /// The constant `D^I`.
    Axiom(Formula),
    Efq(Formula, Box<Proof>),
    /// The falsity constant `F`, only legal in IL⊥.
    Falsity,
}

impl Proof {
    pub fn var(name: impl Into<String>, ty: Formula) -> Proof {
        Proof::Var(name.into(), ty)
    }

    pub fn lam(name: impl Into<String>, ty: Formula, body: Proof) -> Proof {
        Proof::Lam(name.into(), ty, Box::new(body))
    }

    pub fn app(f: Proof, a: Proof) -> Proof {
        Proof::App(Box::new(f), Box::new(a))
    }

    pub fn pair(l: Proof, r: Proof) -> Proof {
        Proof::Pair(Box::new(l), Box::new(r))
    }

    pub fn proj(t: Proof, side: Side) -> Proof {
        Proof::Proj(Box::new(t), side)
    }

    pub fn inj(side: Side, t: Proof, ann: Formula) -> Proof {
        Proof::Inj(side, Box::new(t), ann)
    }

    pub fn case(s: Proof, x: impl Into<String>, l: Proof, y: impl Into<String>, r: Proof) -> Proof {
        Proof::Case(Box::new(s), x.into(), Box::new(l), y.into(), Box::new(r))
    }

    pub fn gen(var: impl Into<String>, body: Proof) -> Proof {
        Proof::Gen(var.into(), Box::new(body))
    }

    pub fn inst(t: Proof, m: Term) -> Proof {
        Proof::Inst(Box::new(t), m)
    }

    pub fn pack(m: Term, t: Proof, ann: Formula) -> Proof {
        Proof::Pack(m, Box::new(t), ann)
    }

    pub fn unpack(s: Proof, var: impl Into<String>, x: impl Into<String>, body: Proof) -> Proof {
        Proof::Unpack(Box::new(s), var.into(), x.into(), Box::new(body))
    }

    pub fn efq(atom: Formula, t: Proof) -> Proof {
        Proof::Efq(atom, Box::new(t))
    }

    /// Immediate proof-term children, in path order.
    pub fn children(&self) -> Vec<&Proof> {
        match self {
            Proof::Var(..) | Proof::Axiom(_) | Proof::Falsity => vec![],
            Proof::Lam(_, _, b) | Proof::Gen(_, b) => vec![b],
            Proof::App(a, b) | Proof::Pair(a, b) => vec![a, b],
            Proof::Proj(t, _) | Proof::Inj(_, t, _) | Proof::Inst(t, _) | Proof::Pack(_, t, _) | Proof::Efq(_, t) => {
                vec![t]
            }
            Proof::Case(s, _, l, _, r) => vec![s, l, r],
            Proof::Unpack(s, _, _, b) => vec![s, b],
        }
    }

    fn child_mut(&mut self, i: u8) -> Option<&mut Proof> {
        let c: &mut Box<Proof> = match (self, i) {
            (Proof::Lam(_, _, b) | Proof::Gen(_, b), 0) => b,
            (Proof::App(a, _) | Proof::Pair(a, _), 0) => a,
            (Proof::App(_, b) | Proof::Pair(_, b), 1) => b,
            (
                Proof::Proj(t, _) | Proof::Inj(_, t, _) | Proof::Inst(t, _) | Proof::Pack(_, t, _) | Proof::Efq(_, t),
                0,
            ) => t,
            (Proof::Case(s, ..), 0) => s,
            (Proof::Case(_, _, l, _, _), 1) => l,
            (Proof::Case(_, _, _, _, r), 2) => r,
            (Proof::Unpack(s, ..), 0) => s,
            (Proof::Unpack(_, _, _, b), 1) => b,
            _ => return None,
        };
        Some(c)
    }

    pub fn subterm(&self, path: &Path) -> Option<&Proof> {
        let mut cur = self;
        for &i in &path.0 {
            cur = *cur.children().get(i as usize)?;
        }
        Some(cur)
    }

    /// Copy of `self` with the subterm at `path` replaced by `new`.
    pub fn replace(&self, path: &Path, new: Proof) -> Option<Proof> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for &i in &path.0 {
            cur = cur.child_mut(i)?;
        }
        *cur = new;
        Some(out)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Proof::size).sum::<usize>()
    }

    pub fn contains_axiom(&self) -> bool {
        matches!(self, Proof::Axiom(_)) || self.children().into_iter().any(Proof::contains_axiom)
    }

    pub fn contains_falsity(&self) -> bool {
        matches!(self, Proof::Falsity) || self.children().into_iter().any(Proof::contains_falsity)
    }

    /// Names of the free proof variables.
    pub fn free_proof_vars(&self) -> NameSet {
        let mut out = NameSet::new();
        self.visit_free_vars(&mut Vec::new(), &mut |name, _| {
            out.insert(name.to_string());
        });
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_proof_vars().is_empty()
    }

    /// Calls `f` on every free occurrence of a proof variable with its
    /// annotation.
    pub fn visit_free_vars<'a>(&'a self, bound: &mut Vec<&'a str>, f: &mut impl FnMut(&'a str, &'a Formula)) {
        match self {
            Proof::Var(x, ty) => {
                if !bound.contains(&x.as_str()) {
                    f(x, ty);
                }
            }
            Proof::Lam(x, _, b) => {
                bound.push(x);
                b.visit_free_vars(bound, f);
                bound.pop();
            }
            Proof::Case(s, x, l, y, r) => {
                s.visit_free_vars(bound, f);
                bound.push(x);
                l.visit_free_vars(bound, f);
                bound.pop();
                bound.push(y);
                r.visit_free_vars(bound, f);
                bound.pop();
            }
            Proof::Unpack(s, _, x, b) => {
                s.visit_free_vars(bound, f);
                bound.push(x);
                b.visit_free_vars(bound, f);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.visit_free_vars(bound, f);
                }
            }
        }
    }

    /// Does `var` occur free in the annotation of some free proof variable?
    pub fn free_var_types_mention(&self, var: &str) -> bool {
        let mut hit = false;
        self.visit_free_vars(&mut Vec::new(), &mut |_, ty| {
            if !hit && ty.has_fo_free(var) {
                hit = true;
            }
        });
        hit
    }

    /// Every proof-variable name occurring anywhere, bound or free.
    pub fn collect_proof_names(&self, out: &mut NameSet) {
        match self {
            Proof::Var(x, _) | Proof::Lam(x, ..) | Proof::Unpack(_, _, x, _) => {
                out.insert(x.clone());
            }
            Proof::Case(_, x, _, y, _) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            _ => {}
        }
        for c in self.children() {
            c.collect_proof_names(out);
        }
    }

    /// Capture-avoiding substitution `self[u/x]` of a proof term for a proof
    /// variable. Proof binders are renamed when they would capture a free
    /// proof variable of `u`, first-order binders when they would capture a
    /// free first-order variable of `u`.
    pub fn subst(&self, u: &Proof, x: &str) -> Proof {
        let ctx = SubstCtx {
            u,
            u_proof_free: u.free_proof_vars(),
            u_fo_free: u.fo_free_vars(),
        };
        ctx.apply(self, x)
    }
}

struct SubstCtx<'a> {
    u: &'a Proof,
    u_proof_free: NameSet,
    u_fo_free: NameSet,
}

impl SubstCtx<'_> {
    fn apply(&self, t: &Proof, x: &str) -> Proof {
        if !t.free_proof_vars().contains(x) {
            return t.clone();
        }
        match t {
            Proof::Var(y, _) => {
                debug_assert_eq!(y, x);
                self.u.clone()
            }
            Proof::Lam(y, ty, b) => {
                let (y, b) = self.under_proof_binder(y, b, x);
                Proof::lam(y, ty.clone(), self.apply(&b, x))
            }
            Proof::App(a, b) => Proof::app(self.apply(a, x), self.apply(b, x)),
            Proof::Pair(a, b) => Proof::pair(self.apply(a, x), self.apply(b, x)),
            Proof::Proj(a, i) => Proof::proj(self.apply(a, x), *i),
            Proof::Inj(i, a, ann) => Proof::inj(*i, self.apply(a, x), ann.clone()),
            Proof::Case(s, y1, l, y2, r) => {
                let s = self.apply(s, x);
                let (y1, l) = self.under_proof_binder(y1, l, x);
                let (y2, r) = self.under_proof_binder(y2, r, x);
                let l = if y1 == x { l } else { self.apply(&l, x) };
                let r = if y2 == x { r } else { self.apply(&r, x) };
                Proof::case(s, y1, l, y2, r)
            }
            Proof::Gen(v, b) => {
                let (v, b) = self.under_fo_binder(v, b);
                Proof::gen(v, self.apply(&b, x))
            }
            Proof::Inst(a, m) => Proof::inst(self.apply(a, x), m.clone()),
            Proof::Pack(m, a, ann) => Proof::pack(m.clone(), self.apply(a, x), ann.clone()),
            Proof::Unpack(s, v, y, b) => {
                let s = self.apply(s, x);
                if y == x {
                    return Proof::unpack(s, v.clone(), y.clone(), (**b).clone());
                }
                let (v, b) = self.under_fo_binder(v, b);
                let (y, b) = self.under_proof_binder(y, &b, x);
                Proof::unpack(s, v, y, self.apply(&b, x))
            }
            Proof::Efq(p, a) => Proof::efq(p.clone(), self.apply(a, x)),
            Proof::Axiom(_) | Proof::Falsity => t.clone(),
        }
    }

    /// Renames the proof binder `y` of `body` if it would capture a free
    /// variable of `u`. When `y == x` the body is returned untouched and the
    /// caller must not descend.
    fn under_proof_binder(&self, y: &str, body: &Proof, x: &str) -> (String, Proof) {
        if y == x || !self.u_proof_free.contains(y) {
            return (y.to_string(), body.clone());
        }
        let mut taken = NameSet::new();
        body.collect_proof_names(&mut taken);
        self.u.collect_proof_names(&mut taken);
        taken.insert(x.to_string());
        let fresh = fresh_name(y, |n| taken.contains(n));
        let renamed = body.rename_proof_var(y, &fresh);
        (fresh, renamed)
    }

    fn under_fo_binder(&self, v: &str, body: &Proof) -> (String, Proof) {
        if !self.u_fo_free.contains(v) {
            return (v.to_string(), body.clone());
        }
        let mut taken = NameSet::new();
        body.collect_fo_names(&mut taken);
        self.u.collect_fo_names(&mut taken);
        let fresh = fresh_name(v, |n| taken.contains(n));
        (fresh.clone(), body.fo_subst(&Term::Var(fresh), v))
    }
}

impl Proof {
    /// Rename free occurrences of the proof variable `from` to `to`, where `to`
    /// does not occur in `self`.
    fn rename_proof_var(&self, from: &str, to: &str) -> Proof {
        match self {
            Proof::Var(y, ty) if y == from => Proof::var(to, ty.clone()),
            _ => {
                let mut ty = None;
                self.visit_free_vars(&mut Vec::new(), &mut |name, t| {
                    if name == from && ty.is_none() {
                        ty = Some(t.clone());
                    }
                });
                match ty {
                    None => self.clone(),
                    Some(ty) => self.subst(&Proof::var(to, ty), from),
                }
            }
        }
    }
}

impl FoSyntax for Proof {
    fn collect_fo_free(&self, bound: &mut Vec<String>, out: &mut NameSet) {
        match self {
            Proof::Var(_, ty) | Proof::Axiom(ty) => ty.collect_fo_free(bound, out),
            Proof::Lam(_, ty, b) => {
                ty.collect_fo_free(bound, out);
                b.collect_fo_free(bound, out);
            }
            Proof::Inj(_, t, ann) => {
                t.collect_fo_free(bound, out);
                ann.collect_fo_free(bound, out);
            }
            Proof::Gen(v, b) => {
                bound.push(v.clone());
                b.collect_fo_free(bound, out);
                bound.pop();
            }
            Proof::Inst(t, m) => {
                t.collect_fo_free(bound, out);
                m.collect_fo_free(bound, out);
            }
            Proof::Pack(m, t, ann) => {
                m.collect_fo_free(bound, out);
                t.collect_fo_free(bound, out);
                ann.collect_fo_free(bound, out);
            }
            Proof::Unpack(s, v, _, b) => {
                s.collect_fo_free(bound, out);
                bound.push(v.clone());
                b.collect_fo_free(bound, out);
                bound.pop();
            }
            Proof::Efq(p, t) => {
                p.collect_fo_free(bound, out);
                t.collect_fo_free(bound, out);
            }
            Proof::App(..) | Proof::Pair(..) | Proof::Proj(..) | Proof::Case(..) | Proof::Falsity => {
                for c in self.children() {
                    c.collect_fo_free(bound, out);
                }
            }
        }
    }

    fn collect_fo_names(&self, out: &mut NameSet) {
        match self {
            Proof::Var(_, ty) | Proof::Lam(_, ty, _) | Proof::Inj(_, _, ty) | Proof::Axiom(ty) | Proof::Efq(ty, _) => {
                ty.collect_fo_names(out)
            }
            Proof::Gen(v, _) | Proof::Unpack(_, v, _, _) => {
                out.insert(v.clone());
            }
            Proof::Inst(_, m) => m.collect_fo_names(out),
            Proof::Pack(m, _, ann) => {
                m.collect_fo_names(out);
                ann.collect_fo_names(out);
            }
            _ => {}
        }
        for c in self.children() {
            c.collect_fo_names(out);
        }
    }

    fn fo_subst(&self, m: &Term, var: &str) -> Proof {
        if !self.has_fo_free(var) {
            return self.clone();
        }
        let s = |p: &Proof| p.fo_subst(m, var);
        let sf = |f: &Formula| f.fo_subst(m, var);
        match self {
            Proof::Var(x, ty) => Proof::var(x.clone(), sf(ty)),
            Proof::Lam(x, ty, b) => Proof::lam(x.clone(), sf(ty), s(b)),
            Proof::App(a, b) => Proof::app(s(a), s(b)),
            Proof::Pair(a, b) => Proof::pair(s(a), s(b)),
            Proof::Proj(a, i) => Proof::proj(s(a), *i),
            Proof::Inj(i, a, ann) => Proof::inj(*i, s(a), sf(ann)),
            Proof::Case(sc, x, l, y, r) => Proof::case(s(sc), x.clone(), s(l), y.clone(), s(r)),
            Proof::Gen(v, b) => {
                let (v, b) = fo_binder(v, b, m, var);
                Proof::gen(v, b)
            }
            Proof::Inst(a, n) => Proof::inst(s(a), n.fo_subst(m, var)),
            Proof::Pack(n, a, ann) => Proof::pack(n.fo_subst(m, var), s(a), sf(ann)),
            Proof::Unpack(sc, v, x, b) => {
                let sc = s(sc);
                let (v, b) = fo_binder(v, b, m, var);
                Proof::unpack(sc, v, x.clone(), b)
            }
            Proof::Axiom(i) => Proof::Axiom(sf(i)),
            Proof::Efq(p, a) => Proof::efq(sf(p), s(a)),
            Proof::Falsity => Proof::Falsity,
        }
    }
}

/// Substitution under a first-order binder `v` of `body`.
fn fo_binder(v: &str, body: &Proof, m: &Term, var: &str) -> (String, Proof) {
    if v == var || !body.has_fo_free(var) {
        return (v.to_string(), body.clone());
    }
    if m.fo_free_vars().contains(v) {
        let mut taken = NameSet::new();
        body.collect_fo_names(&mut taken);
        m.collect_fo_names(&mut taken);
        taken.insert(var.to_string());
        let fresh = fresh_name(v, |n| taken.contains(n));
        let body = body.fo_subst(&Term::Var(fresh.clone()), v);
        (fresh, body.fo_subst(m, var))
    } else {
        (v.to_string(), body.fo_subst(m, var))
    }
}

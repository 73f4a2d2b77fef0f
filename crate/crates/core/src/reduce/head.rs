use crate::syntax::{Formula, Proof, Side, Term};

/// Head of a proof term `λz1…λzn. r u1…uk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Head {
    Var(String, Formula),
    Axiom(Formula),
    /// `efq_P`; its first spine item is the argument of type ⊥.
    Efq(Formula),
    Falsity,
    /// `λx t`, `λα t`, `⟨t1, t2⟩`, `inj_i t` or `(m, t)`.
    Intro(Proof),
}

/// An item applied to the head, innermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpineItem {
    Arg(Proof),
    FoArg(Term),
    Proj(Side),
    Case {
        x: String,
        left: Proof,
        y: String,
        right: Proof,
    },
    Unpack {
        var: String,
        x: String,
        body: Proof,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadForm {
    pub binders: Vec<(String, Formula)>,
    pub head: Head,
    pub spine: Vec<SpineItem>,
}

pub fn head_decompose(t: &Proof) -> HeadForm {
    let mut binders = Vec::new();
    let mut cur = t;
    while let Proof::Lam(x, ty, body) = cur {
        binders.push((x.clone(), ty.clone()));
        cur = body;
    }
    let mut spine = Vec::new();
    let head = loop {
        match cur {
            Proof::App(f, a) => {
                spine.push(SpineItem::Arg((**a).clone()));
                cur = f;
            }
            Proof::Inst(f, m) => {
                spine.push(SpineItem::FoArg(m.clone()));
                cur = f;
            }
            Proof::Proj(u, i) => {
                spine.push(SpineItem::Proj(*i));
                cur = u;
            }
            Proof::Case(s, x, l, y, r) => {
                spine.push(SpineItem::Case {
                    x: x.clone(),
                    left: (**l).clone(),
                    y: y.clone(),
                    right: (**r).clone(),
                });
                cur = s;
            }
            Proof::Unpack(s, v, x, b) => {
                spine.push(SpineItem::Unpack {
                    var: v.clone(),
                    x: x.clone(),
                    body: (**b).clone(),
                });
                cur = s;
            }
            Proof::Efq(p, u) => {
                spine.push(SpineItem::Arg((**u).clone()));
                break Head::Efq(p.clone());
            }
            Proof::Var(x, ty) => break Head::Var(x.clone(), ty.clone()),
            Proof::Axiom(i) => break Head::Axiom(i.clone()),
            Proof::Falsity => break Head::Falsity,
            Proof::Lam(..) | Proof::Gen(..) | Proof::Pair(..) | Proof::Inj(..) | Proof::Pack(..) => {
                break Head::Intro(cur.clone())
            }
        }
    };
    spine.reverse();
    HeadForm { binders, head, spine }
}

impl HeadForm {
    /// Rebuilds the term. `None` only for an `efq` head without argument.
    pub fn recompose(&self) -> Option<Proof> {
        let mut items = self.spine.iter();
        let mut t = match &self.head {
            Head::Var(x, ty) => Proof::var(x.clone(), ty.clone()),
            Head::Axiom(i) => Proof::Axiom(i.clone()),
            Head::Falsity => Proof::Falsity,
            Head::Intro(p) => p.clone(),
            Head::Efq(p) => match items.next()? {
                SpineItem::Arg(u) => Proof::efq(p.clone(), u.clone()),
                _ => return None,
            },
        };
        for item in items {
            t = match item {
                SpineItem::Arg(a) => Proof::app(t, a.clone()),
                SpineItem::FoArg(m) => Proof::inst(t, m.clone()),
                SpineItem::Proj(i) => Proof::proj(t, *i),
                SpineItem::Case { x, left, y, right } => {
                    Proof::case(t, x.clone(), left.clone(), y.clone(), right.clone())
                }
                SpineItem::Unpack { var, x, body } => Proof::unpack(t, var.clone(), x.clone(), body.clone()),
            };
        }
        for (x, ty) in self.binders.iter().rev() {
            t = Proof::lam(x.clone(), ty.clone(), t);
        }
        Some(t)
    }
}

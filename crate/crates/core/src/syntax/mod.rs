//! Three-level syntax: individual terms, formulas and proof terms.
//!
//! Binders are named. Every comparison that matters for typing goes through
//! [`alpha_equal`], and substitution renames binders deterministically when it
//! would otherwise capture a free variable.

mod alpha;
mod context;
mod formula;
mod fresh;
mod path;
mod proof;
mod term;

pub use alpha::{alpha_equal, alpha_equal_proofs, AlphaEq};
pub use context::{Context, ContextError};
pub use formula::Formula;
pub use fresh::fresh_name;
pub use path::Path;
pub use proof::Proof;
pub use term::Term;

use std::collections::BTreeSet;

/// The fixed constant used by the `D`-inj1 contraction and as default witness.
pub const DUM: &str = "dum";

/// Set of identifiers, ordered so that every traversal is reproducible.
pub type NameSet = BTreeSet<String>;

/// Index of an injection or a projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn from_index(i: u8) -> Option<Side> {
        match i {
            0 => Some(Side::Left),
            1 => Some(Side::Right),
            _ => None,
        }
    }
}

/// Anything that has free first-order variables and admits first-order
/// substitution.
pub trait FoSyntax: Sized {
    fn collect_fo_free(&self, bound: &mut Vec<String>, out: &mut NameSet);

    /// Every first-order name occurring anywhere, bound or free, including
    /// constants and function symbols. Used to pick fresh names.
    fn collect_fo_names(&self, out: &mut NameSet);

    /// Capture-avoiding substitution of `m` for the free occurrences of `var`.
    fn fo_subst(&self, m: &Term, var: &str) -> Self;

    fn fo_free_vars(&self) -> NameSet {
        let mut out = NameSet::new();
        self.collect_fo_free(&mut Vec::new(), &mut out);
        out
    }

    fn has_fo_free(&self, var: &str) -> bool {
        self.fo_free_vars().contains(var)
    }
}

/// Free first-order variables of a term, formula or proof term.
pub fn fo_free_vars<T: FoSyntax>(x: &T) -> NameSet {
    x.fo_free_vars()
}

/// Capture-avoiding first-order substitution `x[m/var]`.
pub fn fo_subst<T: FoSyntax>(x: &T, m: &Term, var: &str) -> T {
    x.fo_subst(m, var)
}

use super::Formula;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("hypothesis `{0}` is declared twice")]
pub struct ContextError(pub String);

/// Typing context Γ: proof variables with their formulas, in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<(String, Formula)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, ty: Formula) -> Result<(), ContextError> {
        let name = name.into();
        if self.get(&name).is_some() {
            return Err(ContextError(name));
        }
        self.entries.push((name, ty));
        Ok(())
    }

    /// Builder form of [`Context::insert`]; panics on a duplicate name.
    pub fn with(mut self, name: impl Into<String>, ty: Formula) -> Context {
        self.insert(name, ty).expect("duplicate hypothesis");
        self
    }

    pub fn get(&self, name: &str) -> Option<&Formula> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.entries.iter().map(|(n, f)| (n.as_str(), f))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Applies `f` to every formula, e.g. a first-order substitution.
    pub fn map_formulas(&self, f: impl Fn(&Formula) -> Formula) -> Context {
        Context {
            entries: self.entries.iter().map(|(n, ty)| (n.clone(), f(ty))).collect(),
        }
    }
}

impl FromIterator<(String, Formula)> for Context {
    fn from_iter<I: IntoIterator<Item = (String, Formula)>>(iter: I) -> Context {
        let mut ctx = Context::new();
        for (n, f) in iter {
            // later duplicates are dropped
            let _ = ctx.insert(n, f);
        }
        ctx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_are_rejected() {
        let mut ctx = Context::new();
        ctx.insert("h", Formula::Bot).unwrap();
        assert_eq!(ctx.insert("h", Formula::Bot), Err(ContextError("h".into())));
        assert_eq!(ctx.len(), 1);
    }
}

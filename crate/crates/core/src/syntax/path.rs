use std::fmt;

/// Position of a subterm: the child indices followed from the root.
///
/// Children are numbered left to right in the order they appear in the
/// surface syntax, e.g. `case s of { inl x => u | inr y => v }` has `s` at 0,
/// `u` at 1 and `v` at 2.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<u8>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u8) -> Path {
        let mut v = self.0.clone();
        v.push(i);
        Path(v)
    }

    pub fn join(&self, other: &Path) -> Path {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Path(v)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

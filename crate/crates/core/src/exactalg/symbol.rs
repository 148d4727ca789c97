use std::collections::HashMap;
use std::sync::Arc;

/// An ordered table of variable names. Polynomials reference a shared table
/// and store exponent vectors indexed against it; the order of names fixes
/// both the exponent layout and the tie-breaking inside monomial orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl SymbolTable {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let prev = index.insert(n.clone(), i);
            assert!(prev.is_none(), "duplicate variable name `{n}`");
        }
        Arc::new(SymbolTable { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// A new table with extra variables appended. Returns the extended table
    /// together with the indices of the appended variables.
    pub fn extend<S: Into<String>>(self: &Arc<Self>, extra: Vec<S>) -> (Arc<Self>, Vec<usize>) {
        let mut names = self.names.clone();
        let base = names.len();
        let mut idx = Vec::new();
        for (k, n) in extra.into_iter().enumerate() {
            names.push(n.into());
            idx.push(base + k);
        }
        (SymbolTable::new(names), idx)
    }

    /// True when two tables agree (pointer fast path, then content).
    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a.names == b.names
    }

    /// Picks a variable name not already present, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.position(stem).is_none() {
            return stem.to_string();
        }
        for k in 0.. {
            let cand = format!("{stem}{k}");
            if self.position(&cand).is_none() {
                return cand;
            }
        }
        unreachable!()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extend_keeps_prefix_indices() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let (t2, idx) = t.extend(vec!["z"]);
        assert_eq!(t2.len(), 3);
        assert_eq!(idx, vec![2]);
        assert_eq!(t2.position("x"), Some(0));
        assert_eq!(t2.position("z"), Some(2));
    }

    #[test]
    fn fresh_name_avoids_collisions() {
        let t = SymbolTable::new(vec!["y", "y0"]);
        assert_eq!(t.fresh_name("y"), "y1");
    }
}

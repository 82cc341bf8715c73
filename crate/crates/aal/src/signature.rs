//! Operation signatures: symbol names with fixed arities.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
    index: BTreeMap<String, usize>,
}

/// True for identifiers shaped like a variable token (`v` + digits),
/// which the term grammar reserves.
pub fn is_variable_token(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next() == Some('v') && name.len() > 1 && chars.all(|c| c.is_ascii_digit())
}

fn is_symbol_token(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let symbols: Vec<(String, usize)> =
            symbols.into_iter().map(|(n, a)| (n.into(), a)).collect();
        let mut index = BTreeMap::new();
        for (i, (name, _)) in symbols.iter().enumerate() {
            if !is_symbol_token(name) {
                return Err(Error::BadSignature(format!("`{name}` is not a valid symbol name")));
            }
            if is_variable_token(name) {
                return Err(Error::BadSignature(format!(
                    "`{name}` is reserved for variables"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::BadSignature(format!("duplicate symbol `{name}`")));
            }
        }
        Ok(Signature { symbols, index })
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.symbols[idx].0
    }

    pub fn arity(&self, idx: usize) -> usize {
        self.symbols[idx].1
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        self.index_of(name).map(|i| self.arity(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_variable_shaped_names() {
        assert!(Signature::new([("v1", 0)]).is_err());
        assert!(Signature::new([("var", 1)]).is_ok());
        assert!(Signature::new([("v", 1)]).is_ok());
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Signature::new([("meet", 2), ("meet", 2)]).is_err());
    }
}

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Coordinates, jets, antiderivative symbols: anything that is not a constant.
    Coordinate,
    /// Free constants of the problem (c, alpha, phi1, ...).
    Parameter,
}

/// Ordered variable names. The order fixes the monomial order, so two polynomials
/// can only be combined when their tables agree (or one extends the other).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    kinds: Vec<VarKind>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(vars: &[(S, VarKind)]) -> Result<Arc<Self>> {
        let mut t = VarTable { names: Vec::new(), kinds: Vec::new() };
        for (name, kind) in vars {
            t.push(name.as_ref(), *kind)?;
        }
        Ok(Arc::new(t))
    }

    /// `u1..un` as coordinates followed by the given parameters.
    pub fn coords_and_params<S: AsRef<str>>(n: usize, params: &[S]) -> Arc<Self> {
        let mut t = VarTable { names: Vec::new(), kinds: Vec::new() };
        for i in 1..=n {
            t.push(&format!("u{i}"), VarKind::Coordinate).expect("fresh name");
        }
        for p in params {
            t.push(p.as_ref(), VarKind::Parameter).expect("parameter names must be unique");
        }
        Arc::new(t)
    }

    /// A table with no coordinates (pure parameter ring, or constants).
    pub fn params_only<S: AsRef<str>>(params: &[S]) -> Arc<Self> {
        Self::coords_and_params(0, params)
    }

    fn push(&mut self, name: &str, kind: VarKind) -> Result<()> {
        if !is_identifier(name) {
            return Err(Error::Invalid(format!("`{name}` is not a valid variable name")));
        }
        if self.names.iter().any(|n| n == name) {
            return Err(Error::Invalid(format!("duplicate variable `{name}`")));
        }
        self.names.push(name.to_string());
        self.kinds.push(kind);
        Ok(())
    }

    /// New table equal to `self` with extra variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[(S, VarKind)]) -> Result<Arc<Self>> {
        let mut t = self.clone();
        for (name, kind) in extra {
            t.push(name.as_ref(), *kind)?;
        }
        Ok(Arc::new(t))
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

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn coordinates(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.kinds[i] == VarKind::Coordinate)
    }

    pub fn parameters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.kinds[i] == VarKind::Parameter)
    }

    /// True when `self` lists exactly the first `self.len()` variables of `other`.
    pub fn is_prefix_of(&self, other: &VarTable) -> bool {
        self.len() <= other.len()
            && self.names.iter().zip(&other.names).all(|(a, b)| a == b)
            && self.kinds.iter().zip(&other.kinds).all(|(a, b)| a == b)
    }

    /// Union by name: variables of `self` first, then new ones from `other`.
    pub fn merge(self: &Arc<Self>, other: &Arc<VarTable>) -> Result<Arc<VarTable>> {
        if other.is_prefix_of(self) {
            return Ok(self.clone());
        }
        if self.is_prefix_of(other) {
            return Ok(other.clone());
        }
        let mut t = (**self).clone();
        for (name, kind) in other.names.iter().zip(&other.kinds) {
            match t.index(name) {
                Some(i) if t.kinds[i] != *kind => {
                    return Err(Error::VarTableMismatch(self.to_string(), other.to_string()));
                }
                Some(_) => {}
                None => t.push(name, *kind)?,
            }
        }
        Ok(Arc::new(t))
    }

    /// Coordinates `u1..un` followed by the parameters of `self`.
    pub fn with_coordinates(&self, n: usize) -> Arc<VarTable> {
        let params: Vec<&str> = self.parameters().map(|i| self.name(i)).collect();
        VarTable::coords_and_params(n, &params)
    }

    /// The parameters of `self` only.
    pub fn parameter_table(&self) -> Arc<VarTable> {
        let params: Vec<&str> = self.parameters().map(|i| self.name(i)).collect();
        VarTable::params_only(&params)
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Picks the common table of two operands, or reports a mismatch.
pub(crate) fn common_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> Result<Arc<VarTable>> {
    if Arc::ptr_eq(a, b) || a == b {
        return Ok(a.clone());
    }
    if a.is_prefix_of(b) {
        return Ok(b.clone());
    }
    if b.is_prefix_of(a) {
        return Ok(a.clone());
    }
    Err(Error::VarTableMismatch(a.to_string(), b.to_string()))
}

//! Variable contexts: the named, graded variable sets polynomials live over.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Which family of coordinates a context describes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ContextKind {
    /// `x_1..x_n, y_1..y_n` with `{x_i, y_j} = delta_ij`.
    Darboux(usize),
    /// The reflection representation of `S_n` on `h + h*`, with the last
    /// coordinate pair eliminated: `x_1..x_{n-1}, y_1..y_{n-1}`.
    Reflection(usize),
    /// `s_1..s_N` with degree `i` and dual weight `4(1-i)`.
    SVariables(usize),
    /// Free-form named variables, each of degree 1 and weight 0.
    Named(Vec<String>),
}

/// A fixed, graded set of variables. Immutable after construction and shared
/// behind an [`Arc`].
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct VariableContext {
    kind: ContextKind,
    names: Vec<String>,
    /// `(degree, weight)` per variable.
    grading: Vec<(i32, i32)>,
}

pub type Context = Arc<VariableContext>;

impl VariableContext {
    pub fn darboux(n: usize) -> Context {
        let mut names = Vec::with_capacity(2 * n);
        let mut grading = Vec::with_capacity(2 * n);
        for i in 1..=n {
            names.push(format!("x{i}"));
            grading.push((1, 1));
        }
        for i in 1..=n {
            names.push(format!("y{i}"));
            grading.push((1, -1));
        }
        Arc::new(Self { kind: ContextKind::Darboux(n), names, grading })
    }

    /// Eliminated-coordinate ring of the `S_n` reflection representation.
    pub fn reflection(n: usize) -> Context {
        assert!(n >= 1, "reflection representation needs n >= 1");
        let m = n - 1;
        let mut names = Vec::with_capacity(2 * m);
        let mut grading = Vec::with_capacity(2 * m);
        for i in 1..=m {
            names.push(format!("x{i}"));
            grading.push((1, 1));
        }
        for i in 1..=m {
            names.push(format!("y{i}"));
            grading.push((1, -1));
        }
        Arc::new(Self { kind: ContextKind::Reflection(n), names, grading })
    }

    pub fn s_variables(count: usize) -> Context {
        let names = (1..=count).map(|i| format!("s{i}")).collect();
        let grading = (1..=count as i32).map(|i| (i, 4 * (1 - i))).collect();
        Arc::new(Self { kind: ContextKind::SVariables(count), names, grading })
    }

    pub fn named<S: AsRef<str>>(names: &[S]) -> Result<Context> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            let valid = !a.is_empty()
                && a.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::invalid(format!("bad variable name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::invalid(format!("duplicate variable `{a}`")));
            }
        }
        let grading = vec![(1, 0); names.len()];
        Ok(Arc::new(Self { kind: ContextKind::Named(names.clone()), names, grading }))
    }

    /// The zero-variable context of plain scalars.
    pub fn scalars() -> Context {
        Arc::new(Self { kind: ContextKind::Named(Vec::new()), names: Vec::new(), grading: Vec::new() })
    }

    pub fn kind(&self) -> &ContextKind {
        &self.kind
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn degree(&self, var: usize) -> i32 {
        self.grading[var].0
    }

    pub fn weight(&self, var: usize) -> i32 {
        self.grading[var].1
    }

    /// Number of coordinate pairs for Darboux-type contexts.
    pub fn pairs(&self) -> Option<usize> {
        match self.kind {
            ContextKind::Darboux(n) => Some(n),
            ContextKind::Reflection(n) => Some(n - 1),
            _ => None,
        }
    }

    /// Index of `x_i` (1-based `i`) in a Darboux-type context.
    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.pairs().unwrap_or(0));
        i - 1
    }

    /// Index of `y_i` (1-based `i`) in a Darboux-type context.
    pub fn y(&self, i: usize) -> usize {
        let m = self.pairs().expect("not a Darboux-type context");
        m + i - 1
    }

    /// Index of `s_i` (1-based) in an s-variable context.
    pub fn s(&self, i: usize) -> usize {
        debug_assert!(matches!(self.kind, ContextKind::SVariables(_)));
        i - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_grading() {
        let c = VariableContext::s_variables(4);
        assert_eq!(c.name(2), "s3");
        assert_eq!(c.degree(2), 3);
        assert_eq!(c.weight(2), -8);
        assert_eq!(c.weight(0), 0);
    }

    #[test]
    fn darboux_layout() {
        let c = VariableContext::darboux(2);
        assert_eq!(c.names(), ["x1", "x2", "y1", "y2"]);
        assert_eq!(c.y(2), 3);
        let r = VariableContext::reflection(3);
        assert_eq!(r.arity(), 4);
        assert_eq!(r.pairs(), Some(2));
    }

    #[test]
    fn named_rejects_duplicates() {
        assert!(VariableContext::named(&["X", "t"]).is_ok());
        assert!(VariableContext::named(&["X", "X"]).is_err());
        assert!(VariableContext::named(&["1a"]).is_err());
    }
}

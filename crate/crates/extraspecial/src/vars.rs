//! Variable contexts.
//!
//! Every polynomial carries a context describing its variables.  Ambient
//! contexts hold the 2n coordinates y1..y{2n} of the symplectic space,
//! local contexts the coordinates t1..tm of one isotropic subspace, and
//! either may be extended by formally adjoined degree-1 variables (the
//! central class `c`, the quotient marker `u` or `v`, the hyperplane
//! class `w`).  Adjoined variables always sort after the core block.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextKind {
    Ambient,
    Local,
    Custom,
}

#[derive(Debug, Clone)]
pub struct VariableContext {
    kind: ContextKind,
    labels: Vec<String>,
    core_len: usize,
}

impl PartialEq for VariableContext {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}
impl Eq for VariableContext {}

impl VariableContext {
    /// y1..y{2n}, the coordinates of the rank-2n ambient space.
    pub fn ambient(n: u32) -> Arc<Self> {
        let labels = (1..=2 * n).map(|i| format!("y{i}")).collect::<Vec<_>>();
        let core_len = labels.len();
        Arc::new(VariableContext {
            kind: ContextKind::Ambient,
            labels,
            core_len,
        })
    }

    /// t1..tm, coordinates of one rank-m subspace.
    pub fn local(m: u32) -> Arc<Self> {
        let labels = (1..=m).map(|i| format!("t{i}")).collect::<Vec<_>>();
        let core_len = labels.len();
        Arc::new(VariableContext {
            kind: ContextKind::Local,
            labels,
            core_len,
        })
    }

    pub fn custom(labels: Vec<String>) -> Result<Arc<Self>> {
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::Invalid(format!("duplicate variable `{l}`")));
            }
        }
        let core_len = labels.len();
        Ok(Arc::new(VariableContext {
            kind: ContextKind::Custom,
            labels,
            core_len,
        }))
    }

    /// Extend by adjoined degree-1 variables, which sort after the core.
    pub fn adjoin(self: &Arc<Self>, extra: &[&str]) -> Result<Arc<Self>> {
        let mut labels = self.labels.clone();
        for e in extra {
            if labels.iter().any(|l| l == e) {
                return Err(Error::Invalid(format!("variable `{e}` already present")));
            }
            labels.push((*e).to_string());
        }
        Ok(Arc::new(VariableContext {
            kind: self.kind,
            labels,
            core_len: self.core_len,
        }))
    }

    pub fn kind(&self) -> ContextKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of non-adjoined variables.
    pub fn core_len(&self) -> usize {
        self.core_len
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self == other
    }
}

impl fmt::Display for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.labels.join(", "))
    }
}

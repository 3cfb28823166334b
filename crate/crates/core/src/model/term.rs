use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Interned-by-refcount identifier for constants, variables, predicates and Skolem ids.
pub type Symbol = Arc<str>;

pub fn sym(s: &str) -> Symbol {
    Arc::from(s)
}

/// A Skolem function application. Arguments are constants once grounded,
/// variables before; never other Skolem terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkolemTerm {
    pub id: Symbol,
    pub args: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(Symbol),
    Var(Symbol),
    Skolem(SkolemTerm),
}

pub type Binding = BTreeMap<Symbol, Term>;

impl Term {
    pub fn constant(name: &str) -> Self {
        Term::Const(sym(name))
    }

    pub fn var(name: &str) -> Self {
        Term::Var(sym(name))
    }

    /// Builds a Skolem term, rejecting nested Skolem arguments.
    pub fn skolem(id: &str, args: Vec<Term>) -> Result<Self> {
        if args.iter().any(|a| matches!(a, Term::Skolem(_))) {
            return Err(Error::IllFormed(format!(
                "Skolem term sk_{id} has a Skolem argument"
            )));
        }
        Ok(Term::Skolem(SkolemTerm { id: sym(id), args }))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&Symbol> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) => true,
            Term::Var(_) => false,
            Term::Skolem(s) => s.args.iter().all(Term::is_ground),
        }
    }

    /// Variables in order of first occurrence.
    pub fn collect_vars(&self, out: &mut Vec<Symbol>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Const(_) => {}
            Term::Skolem(s) => s.args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn apply(&self, binding: &Binding) -> Term {
        match self {
            Term::Var(v) => binding.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(_) => self.clone(),
            Term::Skolem(s) => Term::Skolem(SkolemTerm {
                id: s.id.clone(),
                args: s.args.iter().map(|a| a.apply(binding)).collect(),
            }),
        }
    }

    /// Depth of Skolem nesting; 0 for constants and variables.
    pub fn skolem_depth(&self) -> usize {
        match self {
            Term::Skolem(s) => 1 + s.args.iter().map(Term::skolem_depth).max().unwrap_or(0),
            _ => 0,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => {
                if needs_quotes(c) {
                    write!(f, "\"{}\"", c.replace('\\', "\\\\").replace('"', "\\\""))
                } else {
                    f.write_str(c)
                }
            }
            Term::Var(v) => f.write_str(v),
            Term::Skolem(s) => {
                write!(f, "sk_{}(", s.id)?;
                for (i, a) in s.args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Bare constants are lowercase identifiers or numbers; everything else is quoted.
fn needs_quotes(c: &str) -> bool {
    let mut chars = c.chars();
    match chars.next() {
        None => true,
        Some(first) if first.is_ascii_digit() => !c.chars().all(|ch| ch.is_ascii_digit()),
        Some(first) if first.is_ascii_lowercase() => {
            !chars.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
                || (c.starts_with("sk_"))
                || matches!(c, "not" | "exists" | "bot" | "top" | "role")
        }
        Some(_) => true,
    }
}

use super::atom::{Atom, Namespace};
use super::query::Ucq;
use super::term::{Symbol, Term};
use crate::error::{Error, Result};

/// One conjunct of a source query.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SourceLiteral {
    Relation(Atom),
    /// `top(x1..xn)`: every tuple occurring in the database.
    Top(Vec<Term>),
}

impl SourceLiteral {
    pub fn terms(&self) -> &[Term] {
        match self {
            SourceLiteral::Relation(a) => &a.args,
            SourceLiteral::Top(ts) => ts,
        }
    }
}

/// `head <- not J-_1, ..., J+_1, ..., Q(x)`.
///
/// An empty `head` is the constraint head `bot`. Negative justifications are
/// single-disjunct unions; positive ones may have several disjuncts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MappingRule {
    pub head: Vec<Atom>,
    pub head_existential: Vec<Symbol>,
    pub negative: Vec<Ucq>,
    pub positive: Vec<Ucq>,
    pub source: Vec<SourceLiteral>,
}

impl MappingRule {
    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    /// The source query's answer variables, in order of first occurrence.
    pub fn source_vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for lit in &self.source {
            lit.terms().iter().for_each(|t| t.collect_vars(&mut out));
        }
        out
    }

    /// Universal head variables in order of first occurrence.
    pub fn head_universal_vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.head.iter().for_each(|a| a.collect_vars(&mut out));
        out.retain(|v| !self.head_existential.contains(v));
        out
    }

    pub fn validate(&self) -> Result<()> {
        let x = self.source_vars();
        for z in &self.head_existential {
            if x.contains(z) {
                return Err(Error::IllFormed(format!(
                    "existential head variable {z} also occurs in the source query"
                )));
            }
        }
        for a in &self.head {
            if a.ns != Namespace::Ontology {
                return Err(Error::Namespace(format!(
                    "head atom {a} is not over the ontology signature"
                )));
            }
        }
        for v in self.head_universal_vars() {
            if !x.contains(&v) {
                return Err(Error::IllFormed(format!(
                    "head variable {v} is neither existential nor bound by the source query"
                )));
            }
        }
        for j in self.negative.iter().chain(&self.positive) {
            for v in &j.answer_vars {
                if !x.contains(v) {
                    return Err(Error::IllFormed(format!(
                        "justification variable {v} is not bound by the source query"
                    )));
                }
            }
            for d in &j.disjuncts {
                if let Some(a) = d.atoms.iter().find(|a| a.ns != Namespace::Ontology) {
                    return Err(Error::Namespace(format!(
                        "justification atom {a} is not over the ontology signature"
                    )));
                }
            }
        }
        for lit in &self.source {
            if let SourceLiteral::Relation(a) = lit {
                if a.ns != Namespace::Source {
                    return Err(Error::Namespace(format!(
                        "source query atom {a} is not over the source signature"
                    )));
                }
            }
            if lit.terms().iter().any(|t| matches!(t, Term::Skolem(_))) {
                return Err(Error::Namespace("Skolem term in a source query".into()));
            }
        }
        Ok(())
    }

    /// Number of negative justifications.
    pub fn negative_count(&self) -> usize {
        self.negative.len()
    }
}

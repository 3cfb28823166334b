use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::atom::{Atom, Namespace};
use super::term::{Symbol, Term};
use crate::error::{Error, Result};

/// Ground facts over the source signature.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DatabaseInstance {
    facts: BTreeSet<Atom>,
    schema: BTreeMap<Symbol, usize>,
}

impl DatabaseInstance {
    pub fn new(facts: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let mut db = DatabaseInstance::default();
        for f in facts {
            db.insert(f)?;
        }
        Ok(db)
    }

    pub fn insert(&mut self, fact: Atom) -> Result<()> {
        if fact.ns != Namespace::Source {
            return Err(Error::Namespace(format!("database fact {fact} is not a source atom")));
        }
        if !fact.args.iter().all(|t| matches!(t, Term::Const(_))) {
            return Err(Error::IllFormed(format!("database fact {fact} is not ground")));
        }
        if let Some(arity) = self.arities().get(&fact.pred) {
            if *arity != fact.arity() {
                return Err(Error::Arity {
                    predicate: fact.pred.to_string(),
                    expected: *arity,
                    found: fact.arity(),
                });
            }
        }
        self.schema.insert(fact.pred.clone(), fact.arity());
        self.facts.insert(fact);
        Ok(())
    }

    /// Declares a (possibly empty) source relation.
    pub fn declare(&mut self, pred: Symbol, arity: usize) -> Result<()> {
        match self.schema.get(&pred) {
            Some(&known) if known != arity => Err(Error::Arity {
                predicate: pred.to_string(),
                expected: known,
                found: arity,
            }),
            _ => {
                self.schema.insert(pred, arity);
                Ok(())
            }
        }
    }

    pub fn facts(&self) -> &BTreeSet<Atom> {
        &self.facts
    }

    pub fn contains(&self, fact: &Atom) -> bool {
        self.facts.contains(fact)
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    /// Constants occurring in some fact.
    pub fn active_domain(&self) -> BTreeSet<Term> {
        self.facts.iter().flat_map(|f| f.args.iter().cloned()).collect()
    }

    /// Declared and populated relations with their arities.
    pub fn arities(&self) -> &BTreeMap<Symbol, usize> {
        &self.schema
    }
}

impl fmt::Display for DatabaseInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fact in &self.facts {
            writeln!(f, "{fact}.")?;
        }
        Ok(())
    }
}

/// A set of ground ontology atoms: a candidate T-answer set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(pub BTreeSet<Atom>);

impl Interpretation {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        Interpretation(atoms.into_iter().collect())
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn without(&self, a: &Atom) -> Interpretation {
        let mut out = self.0.clone();
        out.remove(a);
        Interpretation(out)
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

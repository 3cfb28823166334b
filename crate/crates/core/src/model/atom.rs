use std::fmt;

use super::term::{sym, Binding, Symbol, Term};

/// Which signature a predicate belongs to. Source predicates describe the
/// database, ontology predicates the mapping target, auxiliary predicates are
/// introduced by the classical-ASP compilation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Namespace {
    Source,
    Ontology,
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub ns: Namespace,
    pub pred: Symbol,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(ns: Namespace, pred: &str, args: Vec<Term>) -> Self {
        Atom {
            ns,
            pred: sym(pred),
            args,
        }
    }

    pub fn ontology(pred: &str, args: Vec<Term>) -> Self {
        Atom::new(Namespace::Ontology, pred, args)
    }

    pub fn source(pred: &str, args: Vec<Term>) -> Self {
        Atom::new(Namespace::Source, pred, args)
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn collect_vars(&self, out: &mut Vec<Symbol>) {
        self.args.iter().for_each(|t| t.collect_vars(out));
    }

    pub fn vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn apply(&self, binding: &Binding) -> Atom {
        Atom {
            ns: self.ns,
            pred: self.pred.clone(),
            args: self.args.iter().map(|t| t.apply(binding)).collect(),
        }
    }

    pub fn signature(&self) -> (Namespace, Symbol, usize) {
        (self.ns, self.pred.clone(), self.args.len())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.pred)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

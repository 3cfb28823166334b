use std::collections::BTreeSet;
use std::fmt;

use super::atom::Atom;
use super::term::{sym, Symbol, Term};

/// A role name, possibly inverted (`P-`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Role {
    pub name: Symbol,
    pub inverse: bool,
}

impl Role {
    pub fn new(name: &str, inverse: bool) -> Self {
        Role {
            name: sym(name),
            inverse,
        }
    }

    pub fn inverted(&self) -> Self {
        Role {
            name: self.name.clone(),
            inverse: !self.inverse,
        }
    }

    /// The atom asserting this role between `subject` and `object`.
    pub fn atom(&self, subject: Term, object: Term) -> Atom {
        let args = if self.inverse {
            vec![object, subject]
        } else {
            vec![subject, object]
        };
        Atom {
            ns: super::atom::Namespace::Ontology,
            pred: self.name.clone(),
            args,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, if self.inverse { "-" } else { "" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicConcept {
    Atomic(Symbol),
    Exists(Role),
}

impl BasicConcept {
    pub fn atomic(name: &str) -> Self {
        BasicConcept::Atomic(sym(name))
    }

    pub fn exists(role: &str, inverse: bool) -> Self {
        BasicConcept::Exists(Role::new(role, inverse))
    }

    /// The atom stating that `t` is an instance of this concept, using
    /// `witness` for the filler of an existential restriction.
    pub fn atom(&self, t: Term, witness: Term) -> Atom {
        match self {
            BasicConcept::Atomic(name) => Atom {
                ns: super::atom::Namespace::Ontology,
                pred: name.clone(),
                args: vec![t],
            },
            BasicConcept::Exists(role) => role.atom(t, witness),
        }
    }
}

impl fmt::Display for BasicConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicConcept::Atomic(n) => f.write_str(n),
            BasicConcept::Exists(r) => write!(f, "exists {r}"),
        }
    }
}

/// DL-Lite_R axioms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    ConceptInclusion(BasicConcept, BasicConcept),
    ConceptDisjointness(BasicConcept, BasicConcept),
    RoleInclusion(Role, Role),
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::ConceptInclusion(l, r) => write!(f, "{l} [= {r}."),
            Axiom::ConceptDisjointness(l, r) => write!(f, "{l} [= not {r}."),
            Axiom::RoleInclusion(l, r) => write!(f, "role {l} [= {r}."),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    pub axioms: Vec<Axiom>,
}

impl Ontology {
    pub fn new(axioms: Vec<Axiom>) -> Self {
        let mut axioms = axioms;
        axioms.sort();
        axioms.dedup();
        Ontology { axioms }
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// True when some axiom can derive new atoms.
    pub fn has_inclusions(&self) -> bool {
        self.axioms
            .iter()
            .any(|a| !matches!(a, Axiom::ConceptDisjointness(..)))
    }

    pub fn has_disjointness(&self) -> bool {
        self.axioms
            .iter()
            .any(|a| matches!(a, Axiom::ConceptDisjointness(..)))
    }

    /// Concept names (arity 1) and role names (arity 2) mentioned by the axioms.
    pub fn signature(&self) -> BTreeSet<(Symbol, usize)> {
        let mut out = BTreeSet::new();
        let concept = |c: &BasicConcept, out: &mut BTreeSet<(Symbol, usize)>| match c {
            BasicConcept::Atomic(n) => {
                out.insert((n.clone(), 1));
            }
            BasicConcept::Exists(r) => {
                out.insert((r.name.clone(), 2));
            }
        };
        for ax in &self.axioms {
            match ax {
                Axiom::ConceptInclusion(l, r) | Axiom::ConceptDisjointness(l, r) => {
                    concept(l, &mut out);
                    concept(r, &mut out);
                }
                Axiom::RoleInclusion(l, r) => {
                    out.insert((l.name.clone(), 2));
                    out.insert((r.name.clone(), 2));
                }
            }
        }
        out
    }
}

impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ax in &self.axioms {
            writeln!(f, "{ax}")?;
        }
        Ok(())
    }
}

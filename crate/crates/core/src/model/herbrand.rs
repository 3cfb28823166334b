use std::collections::BTreeSet;

use super::atom::{Atom, Namespace};
use super::ontology::Ontology;
use super::term::{SkolemTerm, Symbol, Term};
use super::DatabaseInstance;
use crate::error::{Error, Result};
use crate::grounder::{cartesian, grounding_domain, SkolemProgram};

pub const DEFAULT_BASE_CAP: usize = 1_000_000;

/// Ground ontology atoms over the grounding domain and the (non-nested)
/// Skolem terms built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HerbrandBase {
    pub terms: BTreeSet<Term>,
    pub atoms: BTreeSet<Atom>,
}

impl HerbrandBase {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// `HB` of the Skolem program over `db`. Predicates come from the program
/// and, when given, from the ontology's signature. Source predicates are
/// never part of the base.
pub fn herbrand_base(
    program: &SkolemProgram,
    db: &DatabaseInstance,
    ontology: Option<&Ontology>,
    cap: usize,
) -> Result<HerbrandBase> {
    let mut signature: BTreeSet<(Symbol, usize)> = program.ontology_signature();
    if let Some(t) = ontology {
        signature.extend(t.signature());
    }
    let domain: Vec<Term> = grounding_domain(program, db).into_iter().collect();

    let mut terms: BTreeSet<Term> = domain.iter().cloned().collect();
    for (id, params) in &program.skolem_symbols {
        for args in cartesian(&domain, params.len()) {
            terms.insert(Term::Skolem(SkolemTerm {
                id: id.clone(),
                args,
            }));
        }
    }
    let term_list: Vec<Term> = terms.iter().cloned().collect();

    let size = signature.iter().fold(0usize, |acc, (_, arity)| {
        acc.saturating_add(term_list.len().checked_pow(*arity as u32).unwrap_or(usize::MAX))
    });
    if size > cap {
        return Err(Error::CapExceeded {
            what: "Herbrand base",
            size,
            cap,
        });
    }
    let mut atoms = BTreeSet::new();
    for (pred, arity) in &signature {
        for args in cartesian(&term_list, *arity) {
            atoms.insert(Atom {
                ns: Namespace::Ontology,
                pred: pred.clone(),
                args,
            });
        }
    }
    Ok(HerbrandBase { terms, atoms })
}

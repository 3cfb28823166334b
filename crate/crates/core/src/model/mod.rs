//! Terms, atoms, queries, mapping rules, ontologies and databases.

mod atom;
mod database;
mod herbrand;
mod ontology;
mod query;
mod rule;
mod term;

pub use atom::{Atom, Namespace};
pub use database::{DatabaseInstance, Interpretation};
pub use herbrand::{herbrand_base, HerbrandBase, DEFAULT_BASE_CAP};
pub use ontology::{Axiom, BasicConcept, Ontology, Role};
pub use query::{
    align_to, all_homomorphisms, candidates, find_homomorphism, match_atom, match_term, unify_terms, Cq,
    Ucq,
};
pub use rule::{MappingRule, SourceLiteral};
pub use term::{sym, Binding, SkolemTerm, Symbol, Term};

/// A database, a mapping program and an ontology.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneralizedObdaSpec {
    pub database: DatabaseInstance,
    pub mapping: Vec<MappingRule>,
    pub ontology: Ontology,
}

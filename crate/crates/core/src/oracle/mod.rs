//! Certain-answer entailment `T ∪ A ⊨ φ`, `T`-consistency and UCQ rewriting.

mod rewrite;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use serde::Serialize;

pub use rewrite::{prune_subsumed, rewrite_cq, violation_query};

use crate::error::{Error, Result};
use crate::model::{Atom, Axiom, Cq, Interpretation, Ontology, Ucq};

/// Which procedure issued an oracle call.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CallKind {
    NegativeJustification,
    PositiveJustification,
    Head,
    Consistency,
    Query,
}

impl CallKind {
    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CallCounts {
    pub negative_justification: u64,
    pub positive_justification: u64,
    pub head: u64,
    pub consistency: u64,
    pub query: u64,
}

impl CallCounts {
    pub fn total(&self) -> u64 {
        self.negative_justification
            + self.positive_justification
            + self.head
            + self.consistency
            + self.query
    }
}

/// The oracle interface the solver relies on. Entailment methods assume the
/// interpretation has already been found consistent.
pub trait EntailmentOracle: Sync {
    fn ontology(&self) -> &Ontology;

    /// `T ∪ A ⊨ q` for a boolean union; an empty union is never entailed.
    fn entails_union(&self, kind: CallKind, a: &Interpretation, q: &Ucq) -> bool;

    /// `T ∪ A ⊨ h` for every conjunct `h`; false for the constraint head.
    fn entails_conjunction(&self, kind: CallKind, a: &Interpretation, head: &[Atom]) -> bool;

    fn is_consistent(&self, a: &Interpretation) -> bool;

    fn counts(&self) -> CallCounts;

    /// Checked entailment of a closed query; refuses on inconsistent input.
    fn entails(&self, a: &Interpretation, phi: &Cq) -> Result<bool> {
        if !self.is_consistent(a) {
            return Err(Error::Inconsistent);
        }
        let Some(boolean) = phi.instantiate(&phi.answer) else {
            return Ok(false);
        };
        if !boolean.vars().iter().all(|v| phi.existential_vars().contains(v)) {
            return Err(Error::IllFormed(format!("query `{phi}` is not closed")));
        }
        Ok(self.entails_union(CallKind::Query, a, &Ucq::from_cq(boolean)))
    }

    /// Checked head entailment.
    fn entails_head(&self, a: &Interpretation, head: &[Atom]) -> Result<bool> {
        if !self.is_consistent(a) {
            return Err(Error::Inconsistent);
        }
        Ok(self.entails_conjunction(CallKind::Head, a, head))
    }
}

/// The UCQ-rewriting oracle for DL-Lite_R ontologies.
#[derive(Debug)]
pub struct RewritingOracle {
    ontology: Ontology,
    cache: RwLock<HashMap<Cq, Arc<Ucq>>>,
    violations: Vec<Ucq>,
    counters: [AtomicU64; 5],
}

impl RewritingOracle {
    pub fn new(ontology: Ontology) -> Self {
        let violations = ontology
            .axioms
            .iter()
            .filter_map(|ax| match ax {
                Axiom::ConceptDisjointness(l, r) => Some(rewrite_cq(&violation_query(l, r), &ontology)),
                _ => None,
            })
            .collect();
        RewritingOracle {
            ontology,
            cache: RwLock::new(HashMap::new()),
            violations,
            counters: Default::default(),
        }
    }

    /// Cached rewriting of `q` with respect to the ontology.
    pub fn rewrite(&self, q: &Cq) -> Arc<Ucq> {
        let key = q.canonical();
        if let Some(hit) = self.cache.read().expect("rewrite cache poisoned").get(&key) {
            return hit.clone();
        }
        let fresh = Arc::new(rewrite_cq(&key, &self.ontology));
        self.cache
            .write()
            .expect("rewrite cache poisoned")
            .entry(key)
            .or_insert(fresh)
            .clone()
    }

    /// The UCQ rewriting of `q` with the answer variables `q` was written with.
    pub fn rewrite_ucq(&self, q: &Cq) -> Ucq {
        let mut out = (*self.rewrite(q)).clone();
        if out.answer_vars.len() == q.answer_vars().len() {
            out.answer_vars = q.answer_vars();
        }
        out
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("rewrite cache poisoned").len()
    }

    fn bump(&self, kind: CallKind) {
        self.counters[kind.slot()].fetch_add(1, Ordering::Relaxed);
    }

    fn holds(&self, a: &Interpretation, boolean: &Cq) -> bool {
        if self.ontology.is_empty() {
            return boolean.holds_in(a.atoms());
        }
        self.rewrite(boolean)
            .disjuncts
            .iter()
            .any(|d| d.holds_in(a.atoms()))
    }
}

impl EntailmentOracle for RewritingOracle {
    fn ontology(&self) -> &Ontology {
        &self.ontology
    }

    fn entails_union(&self, kind: CallKind, a: &Interpretation, q: &Ucq) -> bool {
        self.bump(kind);
        q.disjuncts.iter().any(|d| self.holds(a, d))
    }

    fn entails_conjunction(&self, kind: CallKind, a: &Interpretation, head: &[Atom]) -> bool {
        self.bump(kind);
        !head.is_empty()
            && head
                .iter()
                .all(|h| self.holds(a, &Cq::boolean(vec![h.clone()])))
    }

    fn is_consistent(&self, a: &Interpretation) -> bool {
        self.bump(CallKind::Consistency);
        !self.violations.iter().any(|v| v.holds_in(a.atoms()))
    }

    fn counts(&self) -> CallCounts {
        let get = |k: CallKind| self.counters[k.slot()].load(Ordering::Relaxed);
        CallCounts {
            negative_justification: get(CallKind::NegativeJustification),
            positive_justification: get(CallKind::PositiveJustification),
            head: get(CallKind::Head),
            consistency: get(CallKind::Consistency),
            query: get(CallKind::Query),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sym, BasicConcept, Term};

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    fn example5() -> Ontology {
        Ontology::new(vec![
            Axiom::ConceptInclusion(BasicConcept::atomic("Boss"), BasicConcept::exists("depHeadOf", false)),
            Axiom::ConceptInclusion(BasicConcept::atomic("Boss"), BasicConcept::exists("hasSup", true)),
        ])
    }

    #[test]
    fn boss_entails_department() {
        let o = RewritingOracle::new(example5());
        let a = Interpretation::new([
            Atom::ontology("Empl", vec![c("a")]),
            Atom::ontology("Boss", vec![c("a")]),
        ]);
        let phi = Cq::boolean(vec![Atom::ontology("depHeadOf", vec![c("a"), Term::var("Y")])]);
        assert!(o.entails(&a, &phi).unwrap());
    }

    #[test]
    fn membership_without_ontology() {
        let o = RewritingOracle::new(Ontology::default());
        let a = Interpretation::new([Atom::ontology("Empl", vec![c("a")])]);
        let yes = Cq::boolean(vec![Atom::ontology("Empl", vec![c("a")])]);
        let no = Cq::boolean(vec![Atom::ontology("depHeadOf", vec![c("a"), Term::var("Y")])]);
        assert!(o.entails(&a, &yes).unwrap());
        assert!(!o.entails(&a, &no).unwrap());
    }

    #[test]
    fn disjointness_detects_clash() {
        let t = Ontology::new(vec![Axiom::ConceptDisjointness(
            BasicConcept::atomic("Empl"),
            BasicConcept::atomic("Boss"),
        )]);
        let o = RewritingOracle::new(t);
        let clash = Interpretation::new([
            Atom::ontology("Empl", vec![c("a")]),
            Atom::ontology("Boss", vec![c("a")]),
        ]);
        let fine = Interpretation::new([
            Atom::ontology("Empl", vec![c("a")]),
            Atom::ontology("Boss", vec![c("b")]),
        ]);
        assert!(!o.is_consistent(&clash));
        assert!(o.is_consistent(&fine));
        let phi = Cq::boolean(vec![Atom::ontology("Empl", vec![c("a")])]);
        assert_eq!(o.entails(&clash, &phi), Err(Error::Inconsistent));
    }

    #[test]
    fn inclusions_alone_are_always_consistent() {
        let o = RewritingOracle::new(example5());
        let a = Interpretation::new([
            Atom::ontology("Boss", vec![c("a")]),
            Atom::ontology("hasSup", vec![c("a"), c("a")]),
        ]);
        assert!(o.is_consistent(&a));
    }

    #[test]
    fn head_entailment() {
        let sk = Term::skolem("z", vec![c("b")]).unwrap();
        let head = vec![Atom::ontology("hasSup", vec![c("b"), sk])];
        let o = RewritingOracle::new(Ontology::default());
        let a = Interpretation::new(head.clone());
        assert!(o.entails_head(&a, &head).unwrap());
        assert!(!o.entails_head(&a, &[]).unwrap());

        let t = Ontology::new(vec![Axiom::ConceptInclusion(
            BasicConcept::atomic("Empl"),
            BasicConcept::atomic("Person"),
        )]);
        let o = RewritingOracle::new(t);
        let a = Interpretation::new([Atom::ontology("Empl", vec![c("a")])]);
        assert!(o
            .entails_head(&a, &[Atom::ontology("Person", vec![c("a")])])
            .unwrap());
    }

    #[test]
    fn counters_sum_to_calls() {
        let o = RewritingOracle::new(example5());
        let a = Interpretation::new([Atom::ontology("Boss", vec![c("a")])]);
        let phi = Cq::boolean(vec![Atom::ontology("Boss", vec![c("a")])]);
        for _ in 0..3 {
            o.entails_union(CallKind::PositiveJustification, &a, &Ucq::from_cq(phi.clone()));
        }
        o.is_consistent(&a);
        o.entails_conjunction(CallKind::Head, &a, &phi.atoms);
        assert_eq!(o.counts().total(), 5);
    }

    #[test]
    fn cache_is_transparent() {
        let o = RewritingOracle::new(example5());
        let q = Cq::new(
            vec![sym("X")],
            vec![Atom::ontology("hasSup", vec![Term::var("Y"), Term::var("X")])],
        )
        .unwrap();
        let first = o.rewrite(&q);
        let second = o.rewrite(&q);
        assert_eq!(*first, rewrite_cq(&q.canonical(), o.ontology()));
        assert_eq!(first, second);
        assert_eq!(o.cache_len(), 1);
    }
}

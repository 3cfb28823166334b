//! Reduction of mapping programs to classical ASP: justification rewriting,
//! the ∃-ASP reading of rewritten programs, auxiliary predicates for
//! existential negative bodies, and a small stable-model engine.

mod classical;
mod exists;

use std::collections::BTreeSet;

pub use classical::{emit_asp_text, project_aux, solve_classical, ClassicalAnswerSets};
pub use exists::{
    exists_to_classical, to_exists_asp, ClassicalAspProgram, ClassicalRule, ExistsAspProgram,
    ExistsRule,
};

use crate::error::Result;
use crate::grounder::{GroundRule, PartialGroundProgram, SkolemProgram};
use crate::model::{
    Axiom, Cq, Interpretation, MappingRule, Ontology, SourceLiteral, Ucq,
};
use crate::oracle::{prune_subsumed, rewrite_cq, violation_query, CallKind, EntailmentOracle, RewritingOracle};

/// `M̄`: every justification replaced by its rewriting. Each negative
/// justification is a single conjunctive query and each positive one a single
/// disjunct of the original rewriting, so that the program has one rule per
/// combination of positive disjuncts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewrittenProgram {
    pub program: SkolemProgram,
    /// Index of the originating rule; `None` for constraints encoding the
    /// ontology's disjointness axioms.
    pub origin: Vec<Option<usize>>,
}

/// The rewriting of a justification, aligned with its answer variables and
/// with subsumed disjuncts removed.
pub fn rewrite_justification(j: &Ucq, ontology: &Ontology) -> Ucq {
    if ontology.is_empty() {
        return j.clone();
    }
    let disjuncts: Vec<Cq> = j
        .disjuncts
        .iter()
        .flat_map(|d| rewrite_cq(d, ontology).disjuncts)
        .collect();
    Ucq {
        answer_vars: j.answer_vars.clone(),
        disjuncts: prune_subsumed(disjuncts),
    }
}

fn single(answer_vars: &[crate::model::Symbol], d: Cq) -> Ucq {
    Ucq {
        answer_vars: answer_vars.to_vec(),
        disjuncts: vec![d],
    }
}

/// Every way of choosing one disjunct from each union.
fn combinations(unions: &[Ucq]) -> Vec<Vec<Ucq>> {
    let mut out: Vec<Vec<Ucq>> = vec![Vec::new()];
    for u in unions {
        let mut next = Vec::new();
        for prefix in &out {
            for d in &u.disjuncts {
                let mut extended = prefix.clone();
                extended.push(single(&u.answer_vars, d.clone()));
                next.push(extended);
            }
        }
        out = next;
    }
    out
}

/// Boolean queries whose truth in `A` means `A` is inconsistent with the
/// ontology's disjointness axioms.
pub fn violation_rewritings(ontology: &Ontology) -> Vec<Cq> {
    let mut out = Vec::new();
    for ax in &ontology.axioms {
        if let Axiom::ConceptDisjointness(l, r) = ax {
            out.extend(rewrite_cq(&violation_query(l, r), ontology).disjuncts);
        }
    }
    prune_subsumed(out)
}

/// Builds `M̄` from the Skolem program. Disjointness axioms become
/// constraints `bot <- q, top()` for each disjunct `q` of their violation
/// rewriting, so that consistency is enforced without the ontology.
pub fn rewrite_program(program: &SkolemProgram, ontology: &Ontology) -> RewrittenProgram {
    let mut rules = Vec::new();
    let mut origin = Vec::new();
    for (index, rule) in program.rules.iter().enumerate() {
        let negative: Vec<Ucq> = rule
            .negative
            .iter()
            .flat_map(|j| {
                let r = rewrite_justification(j, ontology);
                r.disjuncts
                    .into_iter()
                    .map(move |d| single(&r.answer_vars, d))
            })
            .collect();
        let positive: Vec<Ucq> = rule
            .positive
            .iter()
            .map(|j| rewrite_justification(j, ontology))
            .collect();
        for choice in combinations(&positive) {
            rules.push(MappingRule {
                negative: negative.clone(),
                positive: choice,
                ..rule.clone()
            });
            origin.push(Some(index));
        }
    }
    for q in violation_rewritings(ontology) {
        rules.push(MappingRule {
            head: Vec::new(),
            head_existential: Vec::new(),
            negative: Vec::new(),
            positive: vec![Ucq::from_cq(q)],
            source: vec![SourceLiteral::Top(Vec::new())],
        });
        origin.push(None);
    }
    RewrittenProgram {
        program: SkolemProgram {
            rules,
            skolem_symbols: program.skolem_symbols.clone(),
        },
        origin,
    }
}

/// Rewrites one ground rule: negative justifications split into one
/// single-disjunct union per disjunct, positive ones distributed.
pub fn rewrite_ground_rule(rule: &GroundRule, ontology: &Ontology) -> Vec<GroundRule> {
    let negative: Vec<Ucq> = rule
        .negative
        .iter()
        .flat_map(|j| {
            let r = rewrite_justification(j, ontology);
            r.disjuncts.into_iter().map(|d| single(&[], d.canonical()))
        })
        .collect();
    let positive: Vec<Ucq> = rule
        .positive
        .iter()
        .map(|j| rewrite_justification(j, ontology))
        .collect();
    combinations(&positive)
        .into_iter()
        .map(|choice| GroundRule {
            head: rule.head.clone(),
            negative: negative.clone(),
            positive: choice
                .into_iter()
                .map(|u| single(&[], u.disjuncts[0].canonical()))
                .collect(),
            guard: rule.guard.clone(),
        })
        .collect()
}

/// Checks that reducing then rewriting equals rewriting then reducing:
/// the left side takes the ontology-aware reduct of `pg` with respect to `a`
/// and rewrites it; the right side rewrites `pg` and reduces it with an
/// ontology-free oracle. Both sides are compared as sets of ground rules.
pub fn reduct_commutes_check(
    pg: &PartialGroundProgram,
    oracle: &RewritingOracle,
    a: &Interpretation,
) -> Result<bool> {
    let ontology = oracle.ontology();
    if !oracle.is_consistent(a) {
        return Err(crate::error::Error::Inconsistent);
    }
    let mut reduced_then_rewritten = BTreeSet::new();
    for r in &pg.rules {
        if r
            .negative
            .iter()
            .any(|j| oracle.entails_union(CallKind::NegativeJustification, a, j))
        {
            continue;
        }
        let stripped = GroundRule {
            negative: Vec::new(),
            ..r.clone()
        };
        reduced_then_rewritten.extend(rewrite_ground_rule(&stripped, ontology));
    }

    let plain = RewritingOracle::new(Ontology::default());
    let mut rewritten_then_reduced = BTreeSet::new();
    for r in &pg.rules {
        for g in rewrite_ground_rule(r, ontology) {
            if g
                .negative
                .iter()
                .any(|j| plain.entails_union(CallKind::NegativeJustification, a, j))
            {
                continue;
            }
            rewritten_then_reduced.insert(GroundRule {
                negative: Vec::new(),
                ..g
            });
        }
    }
    Ok(reduced_then_rewritten == rewritten_then_reduced)
}

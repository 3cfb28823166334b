//! End-to-end wiring shared by the command line and the test suites.

use std::collections::BTreeSet;

use crate::compiler::{
    exists_to_classical, project_aux, rewrite_program, solve_classical, to_exists_asp,
    ClassicalAspProgram, ExistsAspProgram, RewrittenProgram,
};
use crate::error::Result;
use crate::grounder::{partial_ground, skolemize, GroundingOptions, PartialGroundProgram, SkolemProgram};
use crate::model::{Atom, Cq, GeneralizedObdaSpec, Interpretation, Namespace, Ontology};
use crate::oracle::{rewrite_cq, RewritingOracle};
use crate::solver::{Solver, SolverOptions};

/// Default bound on auxiliary defining rules and classical guess atoms.
pub const DEFAULT_AUX_CAP: usize = 100_000;
pub const DEFAULT_CLASSICAL_CAP: usize = 24;

/// A specification with its Skolem program, partial grounding and oracle.
#[derive(Debug)]
pub struct Prepared {
    pub spec: GeneralizedObdaSpec,
    pub program: SkolemProgram,
    pub pg: PartialGroundProgram,
    pub oracle: RewritingOracle,
}

impl Prepared {
    pub fn new(spec: GeneralizedObdaSpec, grounding: &GroundingOptions) -> Result<Self> {
        let program = skolemize(&spec.mapping);
        let pg = partial_ground(&program, &spec.database, grounding)?;
        let oracle = RewritingOracle::new(spec.ontology.clone());
        Ok(Prepared {
            spec,
            program,
            pg,
            oracle,
        })
    }

    pub fn solver(&self, options: SolverOptions) -> Solver<'_, RewritingOracle> {
        Solver::new(&self.oracle, &self.program, &self.pg, &self.spec.database, options)
    }

    /// The ontology parts of all answer sets, in enumeration order.
    pub fn answer_sets(&self, options: SolverOptions) -> Result<Vec<BTreeSet<Atom>>> {
        Ok(self
            .solver(options)
            .enumerate()?
            .answer_sets
            .into_iter()
            .map(|s| s.interpretation.0)
            .collect())
    }

    /// `M̄` over the same database with the ontology dropped.
    pub fn rewritten(&self, grounding: &GroundingOptions) -> Result<Prepared> {
        let program = rewrite_program(&self.program, &self.spec.ontology).program;
        let spec = GeneralizedObdaSpec {
            database: self.spec.database.clone(),
            mapping: program.rules.clone(),
            ontology: Ontology::default(),
        };
        let pg = partial_ground(&program, &spec.database, grounding)?;
        Ok(Prepared {
            spec,
            program,
            pg,
            oracle: RewritingOracle::new(Ontology::default()),
        })
    }
}

/// Every stage of the reduction to classical ASP.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub rewritten: RewrittenProgram,
    pub exists: ExistsAspProgram,
    pub classical: ClassicalAspProgram,
}

pub fn compile(
    spec: &GeneralizedObdaSpec,
    grounding: &GroundingOptions,
    aux_cap: usize,
) -> Result<Compiled> {
    let rewritten = rewrite_program(&skolemize(&spec.mapping), &spec.ontology);
    let exists = to_exists_asp(&rewritten, &spec.database, grounding)?;
    let classical = exists_to_classical(&exists, aux_cap)?;
    Ok(Compiled {
        rewritten,
        exists,
        classical,
    })
}

impl Compiled {
    /// Stable models of the classical program without auxiliary and source
    /// atoms, sorted by size and then lexicographically.
    pub fn answer_sets(&self, cap: usize) -> Result<Vec<BTreeSet<Atom>>> {
        let solved = solve_classical(&self.classical, cap)?;
        let mut out: Vec<BTreeSet<Atom>> = solved
            .answer_sets
            .iter()
            .map(|y| {
                project_aux(y, &self.classical.aux)
                    .into_iter()
                    .filter(|a| a.ns == Namespace::Ontology)
                    .collect()
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
        out.dedup();
        Ok(out)
    }
}

/// Cautious entailment of a closed query over plain answer sets, after
/// rewriting it with respect to `ontology`.
pub fn cautious_over(answer_sets: &[BTreeSet<Atom>], q: &Cq, ontology: &Ontology) -> bool {
    let rewritten = rewrite_cq(q, ontology);
    answer_sets.iter().all(|y| {
        let a = Interpretation(y.clone());
        rewritten.disjuncts.iter().any(|d| d.holds_in(a.atoms()))
    })
}

/// Brave counterpart of [`cautious_over`].
pub fn brave_over(answer_sets: &[BTreeSet<Atom>], q: &Cq, ontology: &Ontology) -> bool {
    let rewritten = rewrite_cq(q, ontology);
    answer_sets.iter().any(|y| {
        let a = Interpretation(y.clone());
        rewritten.disjuncts.iter().any(|d| d.holds_in(a.atoms()))
    })
}

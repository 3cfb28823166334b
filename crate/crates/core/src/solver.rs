//! T-reducts, the T-answer-set verifier, guess-and-check enumeration and
//! brave/cautious entailment.
//!
//! Every oracle call made here is tallied per procedure so that a run can be
//! compared against the worst-case bounds
//! `make_reduct ≤ n⁻`, `check_sat ≤ n⁺ + h`, `check_min ≤ |A|·(n⁺ + h)`.
//!
//! Removing single atoms does not establish minimality when atoms support
//! each other cyclically (`p <- q`, `q <- p` with `A = {p, q}`), so the
//! verifier completes CHECK-MIN with a search for smaller models. Its calls
//! are tallied apart from the bounded procedures.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::AddAssign;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grounder::{GroundRule, PartialGroundProgram, SkolemProgram};
use crate::model::{
    candidates, herbrand_base, match_atom, Atom, Binding, Cq, DatabaseInstance, Interpretation,
    Namespace, Term, DEFAULT_BASE_CAP,
};
use crate::oracle::{CallKind, EntailmentOracle};

pub const DEFAULT_CANDIDATE_CAP: usize = 24;

/// How a reduct rule's head is checked against an interpretation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeadCheck {
    /// `T ∪ A ⊨ head`, through the oracle.
    #[default]
    Entailed,
    /// Every head atom is an element of `A`.
    Explicit,
}

/// Which atoms guess-and-check enumeration draws candidates from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateSpace {
    /// Atoms of the Herbrand base that can contribute to entailing some
    /// ground rule head. No answer set contains any other atom.
    #[default]
    Relevant,
    /// The whole ontology part of the Herbrand base.
    FullBase,
    /// Ground rule heads only. Complete only under explicit head checking
    /// or when no inclusion axiom derives a head.
    HeadsOnly,
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub head_check: HeadCheck,
    pub candidates: CandidateSpace,
    /// Upper bound on the number of candidate atoms (2^cap subsets).
    pub cap: usize,
    pub base_cap: usize,
    pub limit: Option<usize>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            head_check: HeadCheck::Entailed,
            candidates: CandidateSpace::Relevant,
            cap: DEFAULT_CANDIDATE_CAP,
            base_cap: DEFAULT_BASE_CAP,
            limit: None,
        }
    }
}

/// A positive program: the surviving rules of `PG` with negative
/// justifications stripped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveReduct {
    pub rules: Vec<GroundRule>,
    /// Index into the partial ground program of each surviving rule.
    pub origin: Vec<usize>,
}

impl PositiveReduct {
    /// n⁺: positive justifications of the reduct.
    pub fn positive_count(&self) -> usize {
        self.rules.iter().map(|r| r.positive.len()).sum()
    }

    /// h: rules whose head needs checking (constraints have none).
    pub fn head_count(&self) -> usize {
        self.rules.iter().filter(|r| !r.is_constraint()).count()
    }
}

/// Oracle calls per procedure.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProcedureCalls {
    pub make_reduct_negative: u64,
    pub check_sat_positive: u64,
    pub check_sat_head: u64,
    pub check_min_sat_invocations: u64,
    pub check_min_positive: u64,
    pub check_min_head: u64,
    /// Calls made by the minimality completion; not covered by the bounds.
    pub completion: u64,
}

impl AddAssign for ProcedureCalls {
    fn add_assign(&mut self, o: Self) {
        self.make_reduct_negative += o.make_reduct_negative;
        self.check_sat_positive += o.check_sat_positive;
        self.check_sat_head += o.check_sat_head;
        self.check_min_sat_invocations += o.check_min_sat_invocations;
        self.check_min_positive += o.check_min_positive;
        self.check_min_head += o.check_min_head;
        self.completion += o.completion;
    }
}

impl ProcedureCalls {
    pub fn total(&self) -> u64 {
        self.make_reduct_negative
            + self.check_sat_positive
            + self.check_sat_head
            + self.check_min_positive
            + self.check_min_head
            + self.completion
    }

    /// Names of the fields where `self` exceeds `bound`.
    pub fn exceeded(&self, bound: &ProcedureCalls) -> Vec<&'static str> {
        let pairs = [
            ("make_reduct_negative", self.make_reduct_negative, bound.make_reduct_negative),
            ("check_sat_positive", self.check_sat_positive, bound.check_sat_positive),
            ("check_sat_head", self.check_sat_head, bound.check_sat_head),
            (
                "check_min_sat_invocations",
                self.check_min_sat_invocations,
                bound.check_min_sat_invocations,
            ),
            ("check_min_positive", self.check_min_positive, bound.check_min_positive),
            ("check_min_head", self.check_min_head, bound.check_min_head),
        ];
        pairs
            .into_iter()
            .filter(|(_, actual, limit)| actual > limit)
            .map(|(name, ..)| name)
            .collect()
    }
}

/// One verifier run: calls made and the worst-case bounds for its inputs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyRun {
    pub calls: ProcedureCalls,
    pub bounds: ProcedureCalls,
    pub consistency_calls: u64,
    /// |A| (ontology atoms only).
    pub a_size: usize,
    /// n⁻(PG)
    pub negative: usize,
    /// n⁺(M^A)
    pub positive: usize,
    /// h(M^A)
    pub heads: usize,
}

impl VerifyRun {
    fn set_bounds(&mut self) {
        let (k, np, h) = (self.a_size as u64, self.positive as u64, self.heads as u64);
        self.bounds = ProcedureCalls {
            make_reduct_negative: self.negative as u64,
            check_sat_positive: np,
            check_sat_head: h,
            check_min_sat_invocations: k,
            check_min_positive: k * np,
            check_min_head: k * h,
            completion: 0,
        };
    }

    pub fn violations(&self) -> Vec<&'static str> {
        self.calls.exceeded(&self.bounds)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub verify_runs: u64,
    pub candidates_examined: u64,
    pub inconsistent_candidates: u64,
    pub consistency_calls: u64,
    pub calls: ProcedureCalls,
    /// Sum of the per-run bounds.
    pub bounds: ProcedureCalls,
    /// Runs in which some procedure exceeded its bound.
    pub bound_violations: u64,
}

impl SolveStats {
    pub fn record(&mut self, run: &VerifyRun) {
        self.verify_runs += 1;
        self.consistency_calls += run.consistency_calls;
        self.calls += run.calls;
        self.bounds += run.bounds;
        if !run.violations().is_empty() {
            self.bound_violations += 1;
        }
    }

    pub fn merge(&mut self, other: &SolveStats) {
        self.verify_runs += other.verify_runs;
        self.candidates_examined += other.candidates_examined;
        self.inconsistent_candidates += other.inconsistent_candidates;
        self.consistency_calls += other.consistency_calls;
        self.calls += other.calls;
        self.bounds += other.bounds;
        self.bound_violations += other.bound_violations;
    }
}

/// Why a candidate is or is not a T-answer set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    AnswerSet,
    /// The reduct rule (index into `PG`) whose body holds but whose head does not.
    NotModel { rule: usize },
    /// Atoms whose removal still leaves a model of the reduct.
    NotMinimal { removable: String },
    Inconsistent,
    /// A source atom of the candidate is not a database fact.
    NotInDatabase { atom: String },
    /// An ontology atom outside the Herbrand base shape (non-ground or nested).
    OutsideBase { atom: String },
}

impl Verdict {
    pub fn is_answer_set(&self) -> bool {
        matches!(self, Verdict::AnswerSet)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub verdict: Verdict,
    pub run: VerifyRun,
}

/// A T-answer set together with the database it was computed over; printed
/// as `D ∪ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerSet {
    pub interpretation: Interpretation,
    pub database: Arc<DatabaseInstance>,
}

impl AnswerSet {
    /// Database facts followed by the ontology atoms.
    pub fn atoms_with_echo(&self) -> Vec<&Atom> {
        self.database
            .facts()
            .iter()
            .chain(self.interpretation.atoms())
            .collect()
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms_with_echo().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub answer_sets: Vec<AnswerSet>,
    pub candidate_atoms: Vec<Atom>,
    pub stats: SolveStats,
}

/// Verifier and enumerator over one partial ground program.
pub struct Solver<'a, O: EntailmentOracle> {
    pub oracle: &'a O,
    pub program: &'a SkolemProgram,
    pub pg: &'a PartialGroundProgram,
    pub db: &'a DatabaseInstance,
    pub options: SolverOptions,
}

impl<'a, O: EntailmentOracle> Solver<'a, O> {
    pub fn new(
        oracle: &'a O,
        program: &'a SkolemProgram,
        pg: &'a PartialGroundProgram,
        db: &'a DatabaseInstance,
        options: SolverOptions,
    ) -> Self {
        Solver {
            oracle,
            program,
            pg,
            db,
            options,
        }
    }

    /// MAKE-REDUCT. `a` must be the ontology part of the candidate.
    pub fn make_reduct(&self, a: &Interpretation, run: &mut VerifyRun) -> Result<PositiveReduct> {
        run.consistency_calls += 1;
        if !self.oracle.is_consistent(a) {
            return Err(Error::Inconsistent);
        }
        let mut rules = Vec::new();
        let mut origin = Vec::new();
        for (i, r) in self.pg.rules.iter().enumerate() {
            let mut blocked = false;
            for j in &r.negative {
                run.calls.make_reduct_negative += 1;
                if self.oracle.entails_union(CallKind::NegativeJustification, a, j) {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                rules.push(GroundRule {
                    negative: Vec::new(),
                    ..r.clone()
                });
                origin.push(i);
            }
        }
        Ok(PositiveReduct { rules, origin })
    }

    /// CHECK-SAT: index (into the reduct) of the first violated rule, if any.
    fn violated_rule(
        &self,
        a: &Interpretation,
        reduct: &PositiveReduct,
        positive_calls: &mut u64,
        head_calls: &mut u64,
    ) -> Option<usize> {
        for (i, r) in reduct.rules.iter().enumerate() {
            if !r.guard.is_empty() && !r.guard_holds(self.db) {
                continue;
            }
            let body = r.positive.iter().all(|j| {
                *positive_calls += 1;
                self.oracle.entails_union(CallKind::PositiveJustification, a, j)
            });
            if !body {
                continue;
            }
            if r.is_constraint() {
                return Some(i);
            }
            let head = match self.options.head_check {
                HeadCheck::Entailed => {
                    *head_calls += 1;
                    self.oracle.entails_conjunction(CallKind::Head, a, &r.head)
                }
                HeadCheck::Explicit => r.head.iter().all(|h| a.contains(h)),
            };
            if !head {
                return Some(i);
            }
        }
        None
    }

    /// CHECK-SAT: `a` satisfies every rule of the reduct.
    pub fn check_sat(&self, a: &Interpretation, reduct: &PositiveReduct, run: &mut VerifyRun) -> bool {
        let (mut p, mut h) = (0, 0);
        let v = self.violated_rule(a, reduct, &mut p, &mut h);
        run.calls.check_sat_positive += p;
        run.calls.check_sat_head += h;
        v.is_none()
    }

    /// CHECK-MIN: the first atom whose removal still satisfies the reduct.
    pub fn removable_atom(
        &self,
        a: &Interpretation,
        reduct: &PositiveReduct,
        run: &mut VerifyRun,
    ) -> Option<Atom> {
        for atom in a.atoms() {
            run.calls.check_min_sat_invocations += 1;
            let smaller = a.without(atom);
            let (mut p, mut h) = (0, 0);
            let v = self.violated_rule(&smaller, reduct, &mut p, &mut h);
            run.calls.check_min_positive += p;
            run.calls.check_min_head += h;
            if v.is_none() {
                return Some(atom.clone());
            }
        }
        None
    }

    pub fn check_min(&self, a: &Interpretation, reduct: &PositiveReduct, run: &mut VerifyRun) -> bool {
        self.removable_atom(a, reduct, run).is_none() && self.smaller_model(a, reduct, run).is_none()
    }

    /// A model of the reduct strictly inside `a` that single removals miss.
    /// Assumes `a` is a model. When models are closed under intersection
    /// (explicit heads, or no inclusion axioms) the least model is built
    /// bottom-up within `a`; otherwise subsets of size up to `|a| - 2` are
    /// searched.
    pub fn smaller_model(
        &self,
        a: &Interpretation,
        reduct: &PositiveReduct,
        run: &mut VerifyRun,
    ) -> Option<Interpretation> {
        if a.len() < 2 {
            return None;
        }
        let intersection_closed = self.options.head_check == HeadCheck::Explicit
            || !self.oracle.ontology().has_inclusions();
        if intersection_closed {
            let mut least = Interpretation::default();
            loop {
                let mut grown = least.clone();
                for r in &reduct.rules {
                    if r.is_constraint() || (!r.guard.is_empty() && !r.guard_holds(self.db)) {
                        continue;
                    }
                    if r.head.iter().all(|h| grown.contains(h)) {
                        continue;
                    }
                    let body = r.positive.iter().all(|j| {
                        run.calls.completion += 1;
                        self.oracle.entails_union(CallKind::PositiveJustification, &least, j)
                    });
                    if body {
                        grown.0.extend(r.head.iter().cloned());
                    }
                }
                if grown.len() == least.len() {
                    break;
                }
                least = grown;
            }
            return (least.len() < a.len()).then_some(least);
        }
        let atoms: Vec<&Atom> = a.atoms().iter().collect();
        for k in 0..a.len() - 1 {
            for mask in masks_of_size(atoms.len(), k) {
                let s = Interpretation(
                    (0..atoms.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| atoms[i].clone())
                        .collect(),
                );
                let (mut p, mut h) = (0, 0);
                let violated = self.violated_rule(&s, reduct, &mut p, &mut h);
                run.calls.completion += p + h;
                if violated.is_none() {
                    return Some(s);
                }
            }
        }
        None
    }

    /// MAKE-REDUCT, then CHECK-SAT, then CHECK-MIN. Source atoms in
    /// `candidate` must be database facts and are otherwise ignored;
    /// minimality ranges over ontology atoms only.
    pub fn verify(&self, candidate: &Interpretation) -> Verification {
        let mut run = VerifyRun {
            negative: self.pg.negative_count(),
            ..Default::default()
        };
        let verdict = self.verify_into(candidate, &mut run);
        run.set_bounds();
        Verification { verdict, run }
    }

    fn verify_into(&self, candidate: &Interpretation, run: &mut VerifyRun) -> Verdict {
        let mut ontology_part = BTreeSet::new();
        for atom in candidate.atoms() {
            match atom.ns {
                Namespace::Source if !self.db.contains(atom) => {
                    return Verdict::NotInDatabase {
                        atom: atom.to_string(),
                    }
                }
                Namespace::Source => {}
                _ if !atom.is_ground() || atom.args.iter().any(|t| t.skolem_depth() > 1) => {
                    return Verdict::OutsideBase {
                        atom: atom.to_string(),
                    }
                }
                _ => {
                    ontology_part.insert(atom.clone());
                }
            }
        }
        let a = Interpretation(ontology_part);
        run.a_size = a.len();
        let reduct = match self.make_reduct(&a, run) {
            Ok(r) => r,
            Err(_) => return Verdict::Inconsistent,
        };
        run.positive = reduct.positive_count();
        run.heads = reduct.head_count();
        let (mut p, mut h) = (0, 0);
        let violated = self.violated_rule(&a, &reduct, &mut p, &mut h);
        run.calls.check_sat_positive += p;
        run.calls.check_sat_head += h;
        if let Some(i) = violated {
            return Verdict::NotModel {
                rule: reduct.origin[i],
            };
        }
        if let Some(atom) = self.removable_atom(&a, &reduct, run) {
            return Verdict::NotMinimal {
                removable: atom.to_string(),
            };
        }
        match self.smaller_model(&a, &reduct, run) {
            Some(smaller) => Verdict::NotMinimal {
                removable: a
                    .atoms()
                    .iter()
                    .filter(|x| !smaller.contains(x))
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            },
            None => Verdict::AnswerSet,
        }
    }

    /// The sorted atoms enumeration draws candidate subsets from.
    pub fn candidate_atoms(&self) -> Result<Vec<Atom>> {
        let heads: BTreeSet<Atom> = self
            .pg
            .rules
            .iter()
            .flat_map(|r| r.head.iter().cloned())
            .collect();
        let space = match (self.options.candidates, self.options.head_check) {
            (CandidateSpace::HeadsOnly, _) | (CandidateSpace::Relevant, HeadCheck::Explicit) => {
                heads
            }
            (CandidateSpace::FullBase, _) => self.base()?,
            (CandidateSpace::Relevant, HeadCheck::Entailed)
                if !self.oracle.ontology().has_inclusions() =>
            {
                heads
            }
            (CandidateSpace::Relevant, HeadCheck::Entailed) => {
                let base = self.base()?;
                let mut out = heads.clone();
                for h in &heads {
                    let rewriting = self.oracle_rewrite(h);
                    for pattern in rewriting.iter().flat_map(|d| &d.atoms) {
                        for fact in candidates(pattern, &base) {
                            if match_atom(pattern, fact, &mut Binding::new()) {
                                out.insert(fact.clone());
                            }
                        }
                    }
                }
                out
            }
        };
        Ok(space.into_iter().collect())
    }

    fn base(&self) -> Result<BTreeSet<Atom>> {
        Ok(herbrand_base(
            self.program,
            self.db,
            Some(self.oracle.ontology()),
            self.options.base_cap,
        )?
        .atoms)
    }

    fn oracle_rewrite(&self, h: &Atom) -> Vec<Cq> {
        crate::oracle::rewrite_cq(&Cq::boolean(vec![h.clone()]), self.oracle.ontology()).disjuncts
    }

    /// Guess-and-check over subsets of the candidate atoms, by size and then
    /// lexicographically. Stops after the size at which `limit` is reached.
    pub fn enumerate(&self) -> Result<Enumeration> {
        let atoms = self.candidate_atoms()?;
        if atoms.len() > self.options.cap || atoms.len() >= 64 {
            return Err(Error::CapExceeded {
                what: "candidate space",
                size: atoms.len(),
                cap: self.options.cap,
            });
        }
        let n = atoms.len();
        let database = Arc::new(self.db.clone());
        let mut stats = SolveStats::default();
        let mut found: Vec<AnswerSet> = Vec::new();
        for k in 0..=n {
            let masks = masks_of_size(n, k);
            let (mut level, local) = masks
                .par_iter()
                .fold(
                    || (Vec::new(), SolveStats::default()),
                    |(mut level, mut local): (Vec<Interpretation>, SolveStats), &mask| {
                        let a = Interpretation(
                            (0..n)
                                .filter(|i| mask >> i & 1 == 1)
                                .map(|i| atoms[i].clone())
                                .collect(),
                        );
                        local.candidates_examined += 1;
                        let v = self.verify(&a);
                        local.record(&v.run);
                        if v.verdict == Verdict::Inconsistent {
                            local.inconsistent_candidates += 1;
                        }
                        if v.verdict.is_answer_set() {
                            level.push(a);
                        }
                        (level, local)
                    },
                )
                .reduce(
                    || (Vec::new(), SolveStats::default()),
                    |(mut l1, mut s1), (l2, s2)| {
                        l1.extend(l2);
                        s1.merge(&s2);
                        (l1, s1)
                    },
                );
            stats.merge(&local);
            level.sort_by(|x, y| x.atoms().iter().cmp(y.atoms().iter()));
            found.extend(level.into_iter().map(|interpretation| AnswerSet {
                interpretation,
                database: database.clone(),
            }));
            if let Some(limit) = self.options.limit {
                if found.len() >= limit {
                    found.truncate(limit);
                    break;
                }
            }
        }
        Ok(Enumeration {
            answer_sets: found,
            candidate_atoms: atoms,
            stats,
        })
    }

    /// `φ` holds in every answer set (vacuously true without answer sets).
    pub fn cautious_entails(&self, phi: &Cq) -> Result<bool> {
        self.entails_in_answer_sets(phi, true)
    }

    /// `φ` holds in some answer set.
    pub fn brave_entails(&self, phi: &Cq) -> Result<bool> {
        self.entails_in_answer_sets(phi, false)
    }

    fn entails_in_answer_sets(&self, phi: &Cq, cautious: bool) -> Result<bool> {
        let all = Solver {
            options: SolverOptions {
                limit: None,
                ..self.options.clone()
            },
            ..*self
        }
        .enumerate()?;
        let mut verdicts = all
            .answer_sets
            .iter()
            .map(|s| self.oracle.entails(&s.interpretation, phi));
        if cautious {
            verdicts.try_fold(true, |acc, v| Ok(acc && v?))
        } else {
            verdicts.try_fold(false, |acc, v| Ok(acc || v?))
        }
    }

    /// Cautious answers of a non-boolean query: tuples over `terms` whose
    /// instance holds in every answer set.
    pub fn cautious_answers(&self, q: &Cq, terms: &[Term]) -> Result<Vec<Vec<Term>>> {
        let all = Solver {
            options: SolverOptions {
                limit: None,
                ..self.options.clone()
            },
            ..*self
        }
        .enumerate()?;
        let mut out = Vec::new();
        for tuple in crate::grounder::cartesian(terms, q.answer.len()) {
            let Some(boolean) = q.instantiate(&tuple) else {
                continue;
            };
            let mut holds = true;
            for s in &all.answer_sets {
                if !self.oracle.entails(&s.interpretation, &boolean)? {
                    holds = false;
                    break;
                }
            }
            if holds {
                out.push(tuple);
            }
        }
        Ok(out)
    }
}

impl<O: EntailmentOracle> Clone for Solver<'_, O> {
    fn clone(&self) -> Self {
        Solver {
            options: self.options.clone(),
            ..*self
        }
    }
}

/// All `n`-bit masks with `k` bits set.
fn masks_of_size(n: usize, k: usize) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut m: u64 = (1u64 << k) - 1;
    while m < limit {
        out.push(m);
        // Gosper's hack: next integer with the same popcount
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// Worst-case bounds next to the measured calls, for display.
#[derive(Clone, Debug, Serialize)]
pub struct StatsReport {
    pub stats: SolveStats,
    pub negative_justifications: usize,
    pub positive_justifications: usize,
    pub rules: usize,
    pub within_bounds: bool,
}

pub fn solve_stats_report(stats: &SolveStats, pg: &PartialGroundProgram) -> StatsReport {
    StatsReport {
        stats: *stats,
        negative_justifications: pg.negative_count(),
        positive_justifications: pg.positive_count(),
        rules: pg.len(),
        within_bounds: stats.bound_violations == 0,
    }
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.stats;
        writeln!(
            f,
            "program: {} rules, n- = {}, n+ = {}",
            self.rules, self.negative_justifications, self.positive_justifications
        )?;
        writeln!(
            f,
            "verify runs: {} ({} candidates, {} inconsistent)",
            s.verify_runs, s.candidates_examined, s.inconsistent_candidates
        )?;
        let rows = [
            ("make_reduct negative calls", s.calls.make_reduct_negative, s.bounds.make_reduct_negative),
            ("check_sat positive calls", s.calls.check_sat_positive, s.bounds.check_sat_positive),
            ("check_sat head calls", s.calls.check_sat_head, s.bounds.check_sat_head),
            (
                "check_min check_sat invocations",
                s.calls.check_min_sat_invocations,
                s.bounds.check_min_sat_invocations,
            ),
            ("check_min positive calls", s.calls.check_min_positive, s.bounds.check_min_positive),
            ("check_min head calls", s.calls.check_min_head, s.bounds.check_min_head),
        ];
        for (name, actual, bound) in rows {
            writeln!(f, "{name:<34} {actual:>10} <= {bound:>10}")?;
        }
        writeln!(f, "{:<34} {:>10}", "minimality completion calls", s.calls.completion)?;
        writeln!(f, "consistency calls: {}", s.consistency_calls)?;
        write!(
            f,
            "bound violations: {}{}",
            s.bound_violations,
            if self.within_bounds { "" } else { " (!)" }
        )
    }
}

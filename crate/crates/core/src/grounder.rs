//! Skolemization, source-query evaluation and partial grounding.
//!
//! Skolemization replaces every existential head variable by a Skolem term
//! over the head's universal variables. Partial grounding then instantiates
//! every rule variable with database constants; variables that are
//! existential inside a justification stay unground.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use log::warn;

use crate::error::{Error, Result};
use crate::model::{
    match_term, Atom, Binding, Cq, DatabaseInstance, MappingRule, Namespace, SkolemTerm,
    SourceLiteral, Symbol, Term, Ucq,
};

pub const DEFAULT_GROUNDING_CAP: usize = 200_000;

/// A mapping program whose head existentials have been replaced by Skolem terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemProgram {
    pub rules: Vec<MappingRule>,
    /// Skolem id to the ordered universal variables it abstracts.
    pub skolem_symbols: BTreeMap<Symbol, Vec<Symbol>>,
}

impl SkolemProgram {
    /// Ontology predicates used by heads and justifications, with arities.
    pub fn ontology_signature(&self) -> BTreeSet<(Symbol, usize)> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            let justification_atoms = r
                .negative
                .iter()
                .chain(&r.positive)
                .flat_map(|u| u.disjuncts.iter().flat_map(|d| d.atoms.iter()));
            for a in r.head.iter().chain(justification_atoms) {
                if a.ns == Namespace::Ontology {
                    out.insert((a.pred.clone(), a.arity()));
                }
            }
        }
        out
    }

    /// Constants written in the rules themselves.
    pub fn rule_constants(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        fn walk(t: &Term, out: &mut BTreeSet<Term>) {
            match t {
                Term::Const(_) => {
                    out.insert(t.clone());
                }
                Term::Var(_) => {}
                Term::Skolem(s) => s.args.iter().for_each(|a| walk(a, out)),
            }
        }
        for r in &self.rules {
            let atoms = r
                .head
                .iter()
                .chain(r.negative.iter().chain(&r.positive).flat_map(|u| {
                    u.disjuncts.iter().flat_map(|d| d.atoms.iter())
                }));
            for a in atoms {
                a.args.iter().for_each(|t| walk(t, &mut out));
            }
            for lit in &r.source {
                lit.terms().iter().for_each(|t| walk(t, &mut out));
            }
            for u in r.negative.iter().chain(&r.positive) {
                for d in &u.disjuncts {
                    d.answer.iter().for_each(|t| walk(t, &mut out));
                }
            }
        }
        out
    }
}

/// Replaces each existential head variable `z` of each rule by `sk_z(s)` where
/// `s` is the ordered sequence of universal head variables. Ids are fresh per
/// (rule, variable).
pub fn skolemize(rules: &[MappingRule]) -> SkolemProgram {
    let mut skolem_symbols = BTreeMap::new();
    let mut out = Vec::with_capacity(rules.len());
    for (index, rule) in rules.iter().enumerate() {
        if rule.head_existential.is_empty() {
            out.push(rule.clone());
            continue;
        }
        let universal = rule.head_universal_vars();
        let params: Vec<Term> = universal.iter().cloned().map(Term::Var).collect();
        let mut binding = Binding::new();
        for z in &rule.head_existential {
            let base = z.to_lowercase();
            let mut id: Symbol = base.as_str().into();
            if skolem_symbols.contains_key(&id) {
                id = format!("{base}_r{index}").as_str().into();
            }
            skolem_symbols.insert(id.clone(), universal.clone());
            binding.insert(
                z.clone(),
                Term::Skolem(SkolemTerm {
                    id,
                    args: params.clone(),
                }),
            );
        }
        let mut skolemized = rule.clone();
        skolemized.head = rule.head.iter().map(|a| a.apply(&binding)).collect();
        skolemized.head_existential.clear();
        out.push(skolemized);
    }
    SkolemProgram {
        rules: out,
        skolem_symbols,
    }
}

/// Constants the grounder instantiates variables with: the database's active
/// domain plus constants mentioned by the rules.
pub fn grounding_domain(program: &SkolemProgram, db: &DatabaseInstance) -> BTreeSet<Term> {
    let mut domain = db.active_domain();
    domain.extend(program.rule_constants());
    domain
}

/// What happens when a source query mentions a relation the database does not know.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UnknownSource {
    #[default]
    Warn,
    Error,
}

/// Tuples denoted by `top` of the given arity: the active domain for arity 1,
/// the argument tuples of facts of that arity when such relations exist, and
/// the cartesian power of the active domain otherwise.
pub fn top_tuples(db: &DatabaseInstance, arity: usize) -> BTreeSet<Vec<Term>> {
    if arity == 0 {
        return [Vec::new()].into_iter().collect();
    }
    if arity >= 2 {
        let rows: BTreeSet<Vec<Term>> = db
            .facts()
            .iter()
            .filter(|f| f.arity() == arity)
            .map(|f| f.args.clone())
            .collect();
        if db.arities().values().any(|&a| a == arity) {
            return rows;
        }
    }
    let domain: Vec<Term> = db.active_domain().into_iter().collect();
    cartesian(&domain, arity).collect()
}

pub fn cartesian(domain: &[Term], arity: usize) -> impl Iterator<Item = Vec<Term>> + '_ {
    let total = if domain.is_empty() && arity > 0 {
        0
    } else {
        domain.len().pow(arity as u32)
    };
    (0..total).map(move |mut n| {
        let mut tuple = vec![Term::Const("".into()); arity];
        for slot in tuple.iter_mut().rev() {
            *slot = domain[n % domain.len()].clone();
            n /= domain.len();
        }
        tuple
    })
}

/// All bindings of the query's variables that make it true over `db`.
pub fn eval_source_bindings(
    query: &[SourceLiteral],
    db: &DatabaseInstance,
    unknown: UnknownSource,
) -> Result<Vec<Binding>> {
    for lit in query {
        if let SourceLiteral::Relation(a) = lit {
            match db.arities().get(&a.pred) {
                None => match unknown {
                    UnknownSource::Warn => {
                        warn!("source predicate `{}` is unknown to the database", a.pred);
                        return Ok(Vec::new());
                    }
                    UnknownSource::Error => {
                        return Err(Error::UnknownPredicate(a.pred.to_string()))
                    }
                },
                Some(&arity) if arity != a.arity() => {
                    return Err(Error::Arity {
                        predicate: a.pred.to_string(),
                        expected: arity,
                        found: a.arity(),
                    })
                }
                Some(_) => {}
            }
        }
    }
    let mut out = Vec::new();
    extend_source(query, db, Binding::new(), &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

fn extend_source(
    query: &[SourceLiteral],
    db: &DatabaseInstance,
    binding: Binding,
    out: &mut Vec<Binding>,
) {
    let Some((first, rest)) = query.split_first() else {
        out.push(binding);
        return;
    };
    let rows: Vec<Vec<Term>> = match first {
        SourceLiteral::Relation(a) => crate::model::candidates(a, db.facts())
            .map(|f| f.args.clone())
            .collect(),
        SourceLiteral::Top(ts) => top_tuples(db, ts.len()).into_iter().collect(),
    };
    for row in rows {
        let mut extended = binding.clone();
        if first
            .terms()
            .iter()
            .zip(&row)
            .all(|(p, t)| match_term(p, t, &mut extended))
        {
            extend_source(rest, db, extended, out);
        }
    }
}

/// `eval(Q, D)`: answer tuples over the query's variables in order of first occurrence.
pub fn eval_source(
    query: &[SourceLiteral],
    db: &DatabaseInstance,
    unknown: UnknownSource,
) -> Result<BTreeSet<Vec<Term>>> {
    let mut vars = Vec::new();
    for lit in query {
        lit.terms().iter().for_each(|t| t.collect_vars(&mut vars));
    }
    Ok(eval_source_bindings(query, db, unknown)?
        .into_iter()
        .map(|b| vars.iter().map(|v| b[v].clone()).collect())
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroundingMode {
    /// Only bindings answering the source query; the source query is dropped.
    #[default]
    Relevant,
    /// Every binding over the grounding domain; the source query is kept as a guard.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Provenance {
    pub rule: usize,
    pub binding: Binding,
}

/// A partially ground rule. Justifications are boolean unions whose only
/// variables are existential; an empty union is never entailed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundRule {
    pub head: Vec<Atom>,
    pub negative: Vec<Ucq>,
    pub positive: Vec<Ucq>,
    /// Ground source literals still to be checked against the database
    /// (full mode); empty in relevant mode, where they held by construction.
    pub guard: Vec<SourceLiteral>,
}

impl GroundRule {
    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    pub fn guard_holds(&self, db: &DatabaseInstance) -> bool {
        self.guard.iter().all(|lit| match lit {
            SourceLiteral::Relation(a) => db.contains(a),
            SourceLiteral::Top(ts) => top_tuples(db, ts.len()).contains(ts),
        })
    }

    pub fn terms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        let atoms = self.head.iter().chain(
            self.negative
                .iter()
                .chain(&self.positive)
                .flat_map(|u| u.disjuncts.iter().flat_map(|d| d.atoms.iter())),
        );
        for a in atoms {
            out.extend(a.args.iter().filter(|t| t.is_ground()).cloned());
        }
        out
    }
}

fn boolean_union(disjuncts: Vec<Cq>) -> Ucq {
    let mut disjuncts: Vec<Cq> = disjuncts.into_iter().map(|d| d.canonical()).collect();
    disjuncts.sort();
    disjuncts.dedup();
    Ucq {
        answer_vars: Vec::new(),
        disjuncts,
    }
}

/// Instantiates `rule` with a binding of its source variables.
pub fn instantiate_rule(rule: &MappingRule, binding: &Binding, keep_guard: bool) -> GroundRule {
    GroundRule {
        head: rule.head.iter().map(|a| a.apply(binding)).collect(),
        negative: rule
            .negative
            .iter()
            .map(|j| boolean_union(j.instantiate(binding)))
            .collect(),
        positive: rule
            .positive
            .iter()
            .map(|j| boolean_union(j.instantiate(binding)))
            .collect(),
        guard: if keep_guard {
            rule.source
                .iter()
                .map(|lit| match lit {
                    SourceLiteral::Relation(a) => SourceLiteral::Relation(a.apply(binding)),
                    SourceLiteral::Top(ts) => {
                        SourceLiteral::Top(ts.iter().map(|t| t.apply(binding)).collect())
                    }
                })
                .collect()
        } else {
            Vec::new()
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialGroundProgram {
    pub mode: GroundingMode,
    pub rules: Vec<GroundRule>,
    /// Parallel to `rules`.
    pub provenance: Vec<Provenance>,
}

impl PartialGroundProgram {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// n⁻: number of negative justifications.
    pub fn negative_count(&self) -> usize {
        self.rules.iter().map(|r| r.negative.len()).sum()
    }

    /// n⁺: number of positive justifications.
    pub fn positive_count(&self) -> usize {
        self.rules.iter().map(|r| r.positive.len()).sum()
    }

    /// Ground terms mentioned anywhere in the program.
    pub fn terms(&self) -> BTreeSet<Term> {
        self.rules.iter().flat_map(|r| r.terms()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct GroundingOptions {
    pub mode: GroundingMode,
    pub cap: usize,
    pub unknown: UnknownSource,
}

impl Default for GroundingOptions {
    fn default() -> Self {
        GroundingOptions {
            mode: GroundingMode::Relevant,
            cap: DEFAULT_GROUNDING_CAP,
            unknown: UnknownSource::Warn,
        }
    }
}

impl GroundingOptions {
    pub fn mode(mode: GroundingMode) -> Self {
        GroundingOptions {
            mode,
            ..Self::default()
        }
    }
}

/// Builds PG(M). Output is sorted by (rule index, binding).
pub fn partial_ground(
    program: &SkolemProgram,
    db: &DatabaseInstance,
    options: &GroundingOptions,
) -> Result<PartialGroundProgram> {
    let domain: Vec<Term> = grounding_domain(program, db).into_iter().collect();
    let mut rules = Vec::new();
    let mut provenance = Vec::new();
    for (index, rule) in program.rules.iter().enumerate() {
        let vars = rule.source_vars();
        let bindings: Vec<Binding> = match options.mode {
            GroundingMode::Relevant => eval_source_bindings(&rule.source, db, options.unknown)?,
            GroundingMode::Full => {
                let count = domain.len().checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
                if count.saturating_add(rules.len()) > options.cap {
                    return Err(Error::CapExceeded {
                        what: "partial grounding",
                        size: count.saturating_add(rules.len()),
                        cap: options.cap,
                    });
                }
                cartesian(&domain, vars.len())
                    .map(|tuple| vars.iter().cloned().zip(tuple).collect())
                    .collect()
            }
        };
        if rules.len() + bindings.len() > options.cap {
            return Err(Error::CapExceeded {
                what: "partial grounding",
                size: rules.len() + bindings.len(),
                cap: options.cap,
            });
        }
        for binding in bindings {
            rules.push(instantiate_rule(
                rule,
                &binding,
                options.mode == GroundingMode::Full,
            ));
            provenance.push(Provenance {
                rule: index,
                binding,
            });
        }
    }
    Ok(PartialGroundProgram {
        mode: options.mode,
        rules,
        provenance,
    })
}

impl fmt::Display for PartialGroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_spec;
    use crate::model::herbrand_base;

    const JOBS: &str = include_str!("../fixtures/jobs.spec");

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    #[test]
    fn skolem_terms_over_universal_head_variables() {
        let spec = parse_spec(JOBS).unwrap();
        let program = skolemize(&spec.mapping);
        assert_eq!(
            program.rules[0].head[0].to_string(),
            "hasSup(X,sk_z(X))"
        );
        assert!(program.rules[0].head_existential.is_empty());
        assert_eq!(program.skolem_symbols.get("z").unwrap(), &vec![Symbol::from("X")]);
        assert_eq!(program.rules[1], spec.mapping[1]);
    }

    #[test]
    fn full_mode_keeps_negative_existentials() {
        let spec = parse_spec(JOBS).unwrap();
        let program = skolemize(&spec.mapping[..1]);
        let pg = partial_ground(&program, &spec.database, &GroundingOptions::mode(GroundingMode::Full)).unwrap();
        assert_eq!(pg.len(), 4);
        let mut instances = BTreeSet::new();
        for r in &pg.rules {
            let neg = &r.negative[0].disjuncts[0];
            assert_eq!(neg.existential_vars().len(), 1);
            assert!(neg.atoms[0].args[0].is_ground());
            assert!(r.head[0].is_ground());
            let Some(SourceLiteral::Relation(guard)) = r.guard.first() else {
                panic!("full mode keeps the source query");
            };
            instances.insert(guard.args.clone());
        }
        let expected: BTreeSet<Vec<Term>> = [
            vec![c("a"), c("a")],
            vec![c("a"), c("b")],
            vec![c("b"), c("a")],
            vec![c("b"), c("b")],
        ]
        .into();
        assert_eq!(instances, expected);
    }

    #[test]
    fn relevant_mode_follows_the_database() {
        let spec = parse_spec(JOBS).unwrap();
        let pg = partial_ground(&skolemize(&spec.mapping), &spec.database, &GroundingOptions::default())
            .unwrap();
        assert_eq!(pg.len(), 3);
        assert!(pg.rules.iter().all(|r| r.guard.is_empty()));
        assert_eq!(pg.negative_count(), 1);
        assert_eq!(pg.rules[0].to_string(), "hasSup(a, sk_z(a)) <- not depHeadOf(a, _E1), Empl(a).");
    }

    #[test]
    fn herbrand_base_of_the_running_example() {
        let spec = parse_spec(JOBS).unwrap();
        let program = skolemize(&spec.mapping);
        let hb = herbrand_base(&program, &spec.database, Some(&spec.ontology), 1000).unwrap();
        assert_eq!(hb.terms.len(), 4);
        assert_eq!(hb.len(), 40);
        assert!(matches!(
            herbrand_base(&program, &spec.database, Some(&spec.ontology), 10),
            Err(Error::CapExceeded { size: 40, .. })
        ));
    }

    #[test]
    fn grounding_cap() {
        let spec = parse_spec(JOBS).unwrap();
        let options = GroundingOptions {
            cap: 3,
            ..GroundingOptions::mode(GroundingMode::Full)
        };
        assert!(partial_ground(&skolemize(&spec.mapping), &spec.database, &options)
            .unwrap_err()
            .is_cap());
    }

    #[test]
    fn top_covers_database_tuples() {
        let spec = parse_spec("%database\nr(a, b).\ns(c).").unwrap();
        let ones = top_tuples(&spec.database, 1);
        assert_eq!(ones.len(), 3);
        assert_eq!(top_tuples(&spec.database, 0), [vec![]].into());
    }
}

//! Shared test support: a seeded generator of small specifications and
//! independent reference oracles (a bounded chase for entailment and
//! consistency, and a brute-force answer-set enumerator).
//!
//! Nothing here calls into the library's grounding, rewriting or solving
//! code; specifications are handed to the library as text only.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A ground fact: predicate and printed arguments.
pub type Fact = (String, Vec<String>);

pub fn show(f: &Fact) -> String {
    format!("{}({})", f.0, f.1.join(","))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basic {
    Atomic(String),
    /// Role name and whether it is inverted.
    Exists(String, bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    Concept(Basic, Basic),
    Disjoint(Basic, Basic),
    Role((String, bool), (String, bool)),
}

/// An atom pattern. Arguments are variables (`X`, `Y`), justification
/// existentials (`_W1`), head existentials (`!Z1`) or constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub pred: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    R(String),
    S(String),
    E(String, String),
    Top(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    /// `None` is `bot`.
    pub head: Option<Pattern>,
    pub negative: Vec<Vec<Pattern>>,
    pub positive: Vec<Vec<Pattern>>,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spec {
    pub r: Vec<String>,
    pub s: Vec<String>,
    pub e: Vec<(String, String)>,
    pub rules: Vec<Rule>,
    pub axioms: Vec<Axiom>,
    /// Arity of every ontology predicate in the vocabulary.
    pub arity: BTreeMap<String, usize>,
}

fn basic_text(b: &Basic) -> String {
    match b {
        Basic::Atomic(a) => a.clone(),
        Basic::Exists(p, false) => format!("exists {p}"),
        Basic::Exists(p, true) => format!("exists {p}-"),
    }
}

fn pattern_text(p: &Pattern) -> String {
    let args: Vec<String> = p
        .args
        .iter()
        .map(|a| match a.strip_prefix('!') {
            Some(z) => format!("exists {z}"),
            None => a.clone(),
        })
        .collect();
    format!("{}({})", p.pred, args.join(", "))
}

fn group_text(g: &[Pattern]) -> String {
    if g.len() == 1 {
        pattern_text(&g[0])
    } else {
        let parts: Vec<String> = g.iter().map(pattern_text).collect();
        format!("({})", parts.join(", "))
    }
}

impl Spec {
    pub fn text(&self) -> String {
        let mut out = String::new();
        if !self.axioms.is_empty() {
            out.push_str("%ontology\n");
            for ax in &self.axioms {
                let line = match ax {
                    Axiom::Concept(l, r) => format!("{} [= {}.", basic_text(l), basic_text(r)),
                    Axiom::Disjoint(l, r) => format!("{} [= not {}.", basic_text(l), basic_text(r)),
                    Axiom::Role((p, pi), (q, qi)) => format!(
                        "role {p}{} [= {q}{}.",
                        if *pi { "-" } else { "" },
                        if *qi { "-" } else { "" }
                    ),
                };
                out.push_str(&line);
                out.push('\n');
            }
        }
        out.push_str("%mapping\n");
        for r in &self.rules {
            let head = r.head.as_ref().map_or("bot".to_string(), pattern_text);
            let mut body: Vec<String> = r.negative.iter().map(|g| format!("not {}", group_text(g))).collect();
            body.extend(r.positive.iter().map(|g| group_text(g)));
            body.push(match &r.source {
                Source::R(x) => format!("@r({x})"),
                Source::S(x) => format!("@s({x})"),
                Source::E(x, y) => format!("@e({x}, {y})"),
                Source::Top(x) => format!("top({x})"),
            });
            let _ = writeln!(out, "{head} <- {}.", body.join(", "));
        }
        out.push_str("%database\n");
        for c in &self.r {
            let _ = writeln!(out, "r({c}).");
        }
        for c in &self.s {
            let _ = writeln!(out, "s({c}).");
        }
        for (x, y) in &self.e {
            let _ = writeln!(out, "e({x}, {y}).");
        }
        out
    }

    /// Constants occurring in the database.
    pub fn active_domain(&self) -> Vec<String> {
        let mut d: BTreeSet<String> = self.r.iter().chain(&self.s).cloned().collect();
        for (x, y) in &self.e {
            d.insert(x.clone());
            d.insert(y.clone());
        }
        d.into_iter().collect()
    }

    /// Ontology predicates mentioned by rules or axioms.
    pub fn used_predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            if let Some(h) = &r.head {
                out.insert(h.pred.clone());
            }
            for g in r.negative.iter().chain(&r.positive) {
                out.extend(g.iter().map(|p| p.pred.clone()));
            }
        }
        let name = |b: &Basic| match b {
            Basic::Atomic(a) | Basic::Exists(a, _) => a.clone(),
        };
        for ax in &self.axioms {
            match ax {
                Axiom::Concept(l, r) | Axiom::Disjoint(l, r) => {
                    out.insert(name(l));
                    out.insert(name(r));
                }
                Axiom::Role((p, _), (q, _)) => {
                    out.insert(p.clone());
                    out.insert(q.clone());
                }
            }
        }
        out
    }

    /// Constants and Skolem terms the Herbrand base is built from.
    pub fn terms(&self) -> Vec<String> {
        let adom = self.active_domain();
        let mut out: BTreeSet<String> = adom.iter().cloned().collect();
        for r in &self.rules {
            let Some(h) = &r.head else { continue };
            for a in &h.args {
                if let Some(z) = a.strip_prefix('!') {
                    for c in &adom {
                        out.insert(skolem(z, c));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn herbrand_base(&self) -> Vec<Fact> {
        let terms = self.terms();
        let mut out = Vec::new();
        for p in self.used_predicates() {
            match self.arity[&p] {
                1 => out.extend(terms.iter().map(|t| (p.clone(), vec![t.clone()]))),
                _ => {
                    for s in &terms {
                        for o in &terms {
                            out.push((p.clone(), vec![s.clone(), o.clone()]));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn has_inclusions(&self) -> bool {
        self.axioms.iter().any(|a| !matches!(a, Axiom::Disjoint(..)))
    }
}

/// Skolem terms take the head's single universal variable.
fn skolem(z: &str, arg: &str) -> String {
    format!("sk_{}({arg})", z.to_lowercase())
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub axioms: std::ops::RangeInclusive<usize>,
    pub max_base: usize,
    pub max_rules: usize,
    /// Require at least one inclusion axiom.
    pub need_inclusion: bool,
}

impl GenConfig {
    pub fn without_ontology() -> Self {
        GenConfig {
            axioms: 0..=0,
            max_base: 12,
            max_rules: 4,
            need_inclusion: false,
        }
    }

    pub fn any_ontology() -> Self {
        GenConfig {
            axioms: 0..=4,
            ..Self::without_ontology()
        }
    }

    pub fn with_ontology() -> Self {
        GenConfig {
            axioms: 1..=4,
            need_inclusion: true,
            ..Self::without_ontology()
        }
    }
}

const VOCABULARY: [(&str, usize); 5] = [("A", 1), ("B", 1), ("C", 1), ("P", 2), ("Q", 2)];

pub fn random_basic(rng: &mut ChaCha8Rng, preds: &[(String, usize)]) -> Basic {
    let (p, n) = preds.choose(rng).expect("nonempty vocabulary").clone();
    if n == 1 {
        Basic::Atomic(p)
    } else {
        Basic::Exists(p, rng.gen_bool(0.4))
    }
}

pub fn random_axiom(rng: &mut ChaCha8Rng, preds: &[(String, usize)]) -> Axiom {
    let roles: Vec<&(String, usize)> = preds.iter().filter(|p| p.1 == 2).collect();
    let roll: f64 = rng.gen();
    if roll < 0.2 && !roles.is_empty() {
        let p = roles.choose(rng).unwrap().0.clone();
        let q = roles.choose(rng).unwrap().0.clone();
        return Axiom::Role((p, rng.gen_bool(0.2)), (q, rng.gen_bool(0.4)));
    }
    let l = random_basic(rng, preds);
    let mut r = random_basic(rng, preds);
    for _ in 0..4 {
        if r != l {
            break;
        }
        r = random_basic(rng, preds);
    }
    if roll < 0.35 {
        Axiom::Disjoint(l, r)
    } else {
        Axiom::Concept(l, r)
    }
}

fn justification(
    rng: &mut ChaCha8Rng,
    preds: &[(String, usize)],
    vars: &[&str],
    fresh: &mut usize,
) -> Vec<Pattern> {
    let var = |rng: &mut ChaCha8Rng| vars.choose(rng).unwrap().to_string();
    let (p, n) = preds.choose(rng).unwrap().clone();
    if n == 1 {
        return vec![Pattern {
            pred: p,
            args: vec![var(rng)],
        }];
    }
    if rng.gen_bool(0.5) {
        *fresh += 1;
        let w = format!("_W{fresh}");
        let mut args = vec![var(rng), w.clone()];
        if rng.gen_bool(0.3) {
            args.swap(0, 1);
        }
        let mut out = vec![Pattern { pred: p, args }];
        let concepts: Vec<&(String, usize)> = preds.iter().filter(|q| q.1 == 1).collect();
        if !concepts.is_empty() && rng.gen_bool(0.3) {
            out.push(Pattern {
                pred: concepts.choose(rng).unwrap().0.clone(),
                args: vec![w],
            });
        }
        out
    } else {
        vec![Pattern {
            pred: p,
            args: vec![var(rng), var(rng)],
        }]
    }
}

fn sample(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Spec {
    let constants = ["a", "b", "c"];
    let n_const = rng.gen_range(1..=3);
    let consts = &constants[..n_const];
    let mut vocab: Vec<(String, usize)> = VOCABULARY.iter().map(|(p, n)| (p.to_string(), *n)).collect();
    vocab.shuffle(rng);
    vocab.truncate(rng.gen_range(1..=3));
    vocab.sort();

    let r: Vec<String> = consts.iter().filter(|_| rng.gen_bool(0.6)).map(|c| c.to_string()).collect();
    let mut e = Vec::new();
    for x in consts {
        for y in consts {
            if rng.gen_bool(0.25) {
                e.push((x.to_string(), y.to_string()));
            }
        }
    }
    let r = if r.is_empty() && e.is_empty() { vec![consts[0].to_string()] } else { r };

    let mut rules = Vec::new();
    let mut fresh = 0;
    let mut skolems = 0;
    for _ in 0..rng.gen_range(1..=cfg.max_rules) {
        let roll: f64 = rng.gen();
        let source = if roll < 0.45 {
            Source::R("X".into())
        } else if roll < 0.8 {
            Source::E("X".into(), "Y".into())
        } else {
            Source::Top("X".into())
        };
        let vars: Vec<&str> = match source {
            Source::E(..) => vec!["X", "Y"],
            _ => vec!["X"],
        };
        let head = if rng.gen_bool(0.1) {
            None
        } else {
            let (p, n) = vocab.choose(rng).unwrap().clone();
            let args = if n == 1 {
                vec![vars.choose(rng).unwrap().to_string()]
            } else if rng.gen_bool(0.25) {
                skolems += 1;
                vec![vars.choose(rng).unwrap().to_string(), format!("!Z{skolems}")]
            } else {
                vec![
                    vars.choose(rng).unwrap().to_string(),
                    vars.choose(rng).unwrap().to_string(),
                ]
            };
            Some(Pattern { pred: p, args })
        };
        let mut negative = Vec::new();
        if rng.gen_bool(0.5) {
            negative.push(justification(rng, &vocab, &vars, &mut fresh));
            if rng.gen_bool(0.15) {
                negative.push(justification(rng, &vocab, &vars, &mut fresh));
            }
        }
        let mut positive = Vec::new();
        if rng.gen_bool(0.5) {
            positive.push(justification(rng, &vocab, &vars, &mut fresh));
        }
        rules.push(Rule {
            head,
            negative,
            positive,
            source,
        });
    }

    let mut axioms = Vec::new();
    let n_axioms = rng.gen_range(cfg.axioms.clone());
    for _ in 0..n_axioms {
        let ax = random_axiom(rng, &vocab);
        if !axioms.contains(&ax) {
            axioms.push(ax);
        }
    }
    Spec {
        r,
        s: Vec::new(),
        e,
        rules,
        axioms,
        arity: vocab.into_iter().collect(),
    }
}

/// A random specification within the configured limits.
pub fn random_spec(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Spec {
    loop {
        let s = sample(rng, cfg);
        if s.herbrand_base().len() > cfg.max_base {
            continue;
        }
        if cfg.need_inclusion && !s.has_inclusions() {
            continue;
        }
        return s;
    }
}

/// A random closed query of one or two atoms over the vocabulary and the
/// given constants; variables are existential. About half are ground.
pub fn random_query(rng: &mut ChaCha8Rng, s: &Spec, constants: &[String]) -> Vec<Pattern> {
    let preds: Vec<(String, usize)> = s.arity.iter().map(|(p, n)| (p.clone(), *n)).collect();
    let mut terms: Vec<String> = constants.to_vec();
    if constants.is_empty() || rng.gen_bool(0.5) {
        terms.push("X".into());
        terms.push("Y".into());
    }
    let n_atoms = rng.gen_range(1..=2);
    (0..n_atoms)
        .map(|_| {
            let (p, n) = preds.choose(rng).unwrap().clone();
            Pattern {
                pred: p,
                args: (0..n).map(|_| terms.choose(rng).unwrap().clone()).collect(),
            }
        })
        .collect()
}

pub fn query_text(q: &[Pattern]) -> String {
    let mut vars: Vec<String> = Vec::new();
    for p in q {
        for a in &p.args {
            if a.starts_with(|c: char| c.is_ascii_uppercase()) && !vars.contains(a) {
                vars.push(a.clone());
            }
        }
    }
    let atoms: Vec<String> = q.iter().map(pattern_text).collect();
    if vars.is_empty() {
        atoms.join(", ")
    } else {
        format!("exists {}. {}", vars.join(", "), atoms.join(", "))
    }
}

// ---------------------------------------------------------------------------
// Bounded chase

pub const CHASE_DEPTH: usize = 4;

/// The bounded chase of an ABox: derived facts and a consistency verdict.
#[derive(Clone, Debug)]
pub struct Chase {
    pub facts: BTreeSet<Fact>,
    pub consistent: bool,
}

fn holds_basic(facts: &BTreeSet<Fact>, b: &Basic, x: &str) -> bool {
    match b {
        Basic::Atomic(a) => facts.contains(&(a.clone(), vec![x.to_string()])),
        Basic::Exists(p, inverse) => facts.iter().any(|(q, args)| {
            q == p && args.len() == 2 && args[if *inverse { 1 } else { 0 }] == x
        }),
    }
}

/// Chases `abox` with the inclusion axioms, creating labelled nulls up to
/// `CHASE_DEPTH` levels deep, then checks the disjointness axioms.
pub fn chase(abox: &BTreeSet<Fact>, axioms: &[Axiom]) -> Chase {
    let mut facts = abox.clone();
    let mut depth: HashMap<String, usize> = HashMap::new();
    let mut nulls = 0;
    loop {
        let mut added: Vec<Fact> = Vec::new();
        let individuals: BTreeSet<String> = facts.iter().flat_map(|(_, a)| a.iter().cloned()).collect();
        for ax in axioms {
            match ax {
                Axiom::Concept(l, r) => {
                    for x in &individuals {
                        if !holds_basic(&facts, l, x) || holds_basic(&facts, r, x) {
                            continue;
                        }
                        match r {
                            Basic::Atomic(b) => added.push((b.clone(), vec![x.clone()])),
                            Basic::Exists(p, inverse) => {
                                let d = depth.get(x).copied().unwrap_or(0);
                                if d >= CHASE_DEPTH {
                                    continue;
                                }
                                if added.iter().any(|(q, a)| {
                                    q == p && a[if *inverse { 1 } else { 0 }] == *x
                                }) {
                                    continue;
                                }
                                nulls += 1;
                                let n = format!("_n{nulls}");
                                depth.insert(n.clone(), d + 1);
                                let args = if *inverse { vec![n, x.clone()] } else { vec![x.clone(), n] };
                                added.push((p.clone(), args));
                            }
                        }
                    }
                }
                Axiom::Role((p, pi), (q, qi)) => {
                    for (pred, args) in &facts {
                        if pred != p || args.len() != 2 {
                            continue;
                        }
                        let (s, o) = if *pi { (&args[1], &args[0]) } else { (&args[0], &args[1]) };
                        let out = if *qi { vec![o.clone(), s.clone()] } else { vec![s.clone(), o.clone()] };
                        added.push((q.clone(), out));
                    }
                }
                Axiom::Disjoint(..) => {}
            }
        }
        let before = facts.len();
        facts.extend(added);
        if facts.len() == before {
            break;
        }
    }
    let individuals: BTreeSet<String> = facts.iter().flat_map(|(_, a)| a.iter().cloned()).collect();
    let consistent = !axioms.iter().any(|ax| match ax {
        Axiom::Disjoint(l, r) => individuals
            .iter()
            .any(|x| holds_basic(&facts, l, x) && holds_basic(&facts, r, x)),
        _ => false,
    });
    Chase { facts, consistent }
}

fn is_var(a: &str) -> bool {
    a.starts_with(|c: char| c.is_ascii_uppercase() || c == '_')
}

fn extend_match(
    atoms: &[Pattern],
    facts: &BTreeSet<Fact>,
    binding: &mut HashMap<String, String>,
) -> bool {
    let Some((first, rest)) = atoms.split_first() else {
        return true;
    };
    for (pred, args) in facts {
        if *pred != first.pred || args.len() != first.args.len() {
            continue;
        }
        let mut added = Vec::new();
        let mut ok = true;
        for (pat, val) in first.args.iter().zip(args) {
            if is_var(pat) {
                match binding.get(pat) {
                    Some(v) if v != val => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        binding.insert(pat.clone(), val.clone());
                        added.push(pat.clone());
                    }
                }
            } else if pat != val {
                ok = false;
                break;
            }
        }
        if ok && extend_match(rest, facts, binding) {
            return true;
        }
        for v in added {
            binding.remove(&v);
        }
    }
    false
}

/// A closed conjunctive query (all variables existential) maps into `facts`.
pub fn satisfied(atoms: &[Pattern], facts: &BTreeSet<Fact>) -> bool {
    extend_match(atoms, facts, &mut HashMap::new())
}

// ---------------------------------------------------------------------------
// Brute-force answer sets

#[derive(Clone, Debug)]
struct GroundRule {
    head: Option<Fact>,
    negative: Vec<Vec<Pattern>>,
    positive: Vec<Vec<Pattern>>,
}

fn substitute(p: &Pattern, binding: &BTreeMap<String, String>) -> Pattern {
    Pattern {
        pred: p.pred.clone(),
        args: p
            .args
            .iter()
            .map(|a| binding.get(a).cloned().unwrap_or_else(|| a.clone()))
            .collect(),
    }
}

fn ground_rules(s: &Spec) -> Vec<GroundRule> {
    let adom = s.active_domain();
    let mut out = Vec::new();
    for r in &s.rules {
        let bindings: Vec<BTreeMap<String, String>> = match &r.source {
            Source::R(x) => s.r.iter().map(|c| [(x.clone(), c.clone())].into()).collect(),
            Source::S(x) => s.s.iter().map(|c| [(x.clone(), c.clone())].into()).collect(),
            Source::E(x, y) => s
                .e
                .iter()
                .filter_map(|(a, b)| {
                    if x == y {
                        if a == b {
                            Some([(x.clone(), a.clone())].into())
                        } else {
                            None
                        }
                    } else {
                        Some([(x.clone(), a.clone()), (y.clone(), b.clone())].into())
                    }
                })
                .collect(),
            Source::Top(x) => adom.iter().map(|c| [(x.clone(), c.clone())].into()).collect(),
        };
        for b in bindings {
            let head = r.head.as_ref().map(|h| {
                let universal: Vec<&String> = h.args.iter().filter(|a| !a.starts_with('!')).collect();
                let args = h
                    .args
                    .iter()
                    .map(|a| match a.strip_prefix('!') {
                        Some(z) => skolem(z, &b[universal[0]]),
                        None => b[a].clone(),
                    })
                    .collect();
                (h.pred.clone(), args)
            });
            let ground = |gs: &Vec<Vec<Pattern>>| -> Vec<Vec<Pattern>> {
                gs.iter().map(|g| g.iter().map(|p| substitute(p, &b)).collect()).collect()
            };
            out.push(GroundRule {
                head,
                negative: ground(&r.negative),
                positive: ground(&r.positive),
            });
        }
    }
    out
}

/// How a rule head is satisfied by a set of atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Heads {
    Entailed,
    Explicit,
}

struct Enumerator<'a> {
    spec: &'a Spec,
    base: Vec<Fact>,
    chases: HashMap<u64, Chase>,
}

impl Enumerator<'_> {
    fn atoms(&self, mask: u64) -> BTreeSet<Fact> {
        (0..self.base.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.base[i].clone())
            .collect()
    }

    fn chase(&mut self, mask: u64) -> &Chase {
        if !self.chases.contains_key(&mask) {
            let c = chase(&self.atoms(mask), &self.spec.axioms);
            self.chases.insert(mask, c);
        }
        &self.chases[&mask]
    }

    fn is_model(&mut self, mask: u64, reduct: &[&GroundRule], heads: Heads) -> bool {
        let atoms = self.atoms(mask);
        self.chase(mask);
        let chased = &self.chases[&mask].facts;
        reduct.iter().all(|r| {
            if !r.positive.iter().all(|g| satisfied(g, chased)) {
                return true;
            }
            match (&r.head, heads) {
                (None, _) => false,
                (Some(h), Heads::Explicit) => atoms.contains(h),
                (Some(h), Heads::Entailed) => chased.contains(h),
            }
        })
    }
}

/// All answer sets by exhaustive search: every consistent subset of the
/// Herbrand base whose reduct it satisfies and no proper subset of which
/// satisfies that reduct.
pub fn brute_force_answer_sets(s: &Spec, heads: Heads) -> Vec<BTreeSet<String>> {
    let base = s.herbrand_base();
    assert!(base.len() <= 20, "base too large for brute force");
    let rules = ground_rules(s);
    let mut e = Enumerator {
        spec: s,
        base,
        chases: HashMap::new(),
    };
    let mut found = Vec::new();
    for mask in 0..(1u64 << e.base.len()) {
        let c = e.chase(mask);
        if !c.consistent {
            continue;
        }
        let reduct: Vec<&GroundRule> = rules
            .iter()
            .filter(|r| !r.negative.iter().any(|g| satisfied(g, &c.facts)))
            .collect();
        if !e.is_model(mask, &reduct, heads) {
            continue;
        }
        let mut minimal = true;
        let mut sub = mask;
        while sub != 0 {
            sub = (sub - 1) & mask;
            if e.is_model(sub, &reduct, heads) {
                minimal = false;
                break;
            }
        }
        if minimal {
            found.push(e.atoms(mask).iter().map(show).collect::<BTreeSet<String>>());
        }
    }
    found.sort();
    found
}

/// Sorted, printed answer sets for comparisons.
pub fn printed<'a, I, A>(sets: I) -> Vec<BTreeSet<String>>
where
    I: IntoIterator<Item = A>,
    A: IntoIterator<Item = &'a mapping_programs::model::Atom>,
{
    let mut out: Vec<BTreeSet<String>> = sets
        .into_iter()
        .map(|s| {
            s.into_iter()
                .filter(|a| a.ns == mapping_programs::model::Namespace::Ontology)
                .map(|a| a.to_string())
                .collect()
        })
        .collect();
    out.sort();
    out
}

use std::collections::{BTreeMap, BTreeSet};

use log::warn;

use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};
use crate::model::{
    sym, Atom, Axiom, BasicConcept, Cq, DatabaseInstance, GeneralizedObdaSpec, MappingRule,
    Namespace, Ontology, Role, SourceLiteral, Symbol, Term, Ucq,
};

const RESERVED: [&str; 5] = ["not", "exists", "bot", "top", "role"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    fn of(t: &Token) -> Self {
        Location {
            line: t.line,
            column: t.column,
        }
    }
}

/// Predicates declared in the `%signature` section.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<Symbol>,
    pub roles: BTreeSet<Symbol>,
    pub sources: BTreeMap<Symbol, usize>,
}

impl Signature {
    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.roles.is_empty() && self.sources.is_empty()
    }
}

/// A parsed specification together with its declarations and the source
/// position of every item. Equality ignores positions and warnings.
#[derive(Clone, Debug, Default)]
pub struct SpecDocument {
    pub spec: GeneralizedObdaSpec,
    pub signature: Signature,
    pub axiom_locations: Vec<(Axiom, Location)>,
    /// Parallel to `spec.mapping`.
    pub rule_locations: Vec<Location>,
    pub fact_locations: Vec<(Atom, Location)>,
    pub warnings: Vec<String>,
}

impl PartialEq for SpecDocument {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.signature == other.signature
    }
}

impl SpecDocument {
    /// Every predicate the document treats as a source relation.
    pub fn source_predicates(&self) -> BTreeSet<Symbol> {
        let mut out: BTreeSet<Symbol> = self.signature.sources.keys().cloned().collect();
        out.extend(self.spec.database.arities().keys().cloned());
        for r in &self.spec.mapping {
            for lit in &r.source {
                if let SourceLiteral::Relation(a) = lit {
                    out.insert(a.pred.clone());
                }
            }
        }
        out
    }
}

pub fn parse_spec(text: &str) -> Result<GeneralizedObdaSpec> {
    Ok(parse_document(text)?.spec)
}

pub fn parse_document(text: &str) -> Result<SpecDocument> {
    let mut p = Parser::new(text)?;
    let raw = p.document()?;
    resolve(raw)
}

/// Parses a conjunctive query such as `exists Y. hasSup(Y,a)`. Variables that
/// are neither listed after `exists` nor start with `_` are answer variables.
pub fn parse_query(text: &str) -> Result<Cq> {
    let mut p = Parser::new(text)?;
    let d = p.disjunct()?;
    p.eat(&Tok::Dot);
    p.expect_eof()?;
    let free = d.free_vars();
    if !d.eqs.is_empty() {
        return p.err("equalities are not supported in queries");
    }
    Cq::new(free, d.atoms)
}

/// Parses a set of ground atoms written as facts (`p(a). q(a,b).`) or as a
/// set (`{p(a), q(a,b)}`). Atoms whose predicate is in `sources` or that are
/// prefixed with `@` are source atoms; all others are ontology atoms.
pub fn parse_atoms(text: &str, sources: &BTreeSet<Symbol>) -> Result<Vec<Atom>> {
    let mut p = Parser::new(text)?;
    let braced = p.eat(&Tok::LBrace);
    let mut out = Vec::new();
    loop {
        if matches!(p.peek(), Tok::Eof | Tok::RBrace) {
            break;
        }
        let at = p.eat(&Tok::At);
        let loc = p.loc();
        let mut atom = p.atom(Namespace::Ontology)?;
        if at || sources.contains(&atom.pred) {
            atom.ns = Namespace::Source;
        }
        if !atom.is_ground() {
            return Err(Error::syntax(loc.line, loc.column, format!("atom {atom} is not ground")));
        }
        out.push(atom);
        if !(p.eat(&Tok::Comma) || p.eat(&Tok::Dot)) {
            break;
        }
    }
    if braced {
        p.expect(&Tok::RBrace, "`}`")?;
    }
    p.eat(&Tok::Dot);
    p.expect_eof()?;
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Signature,
    Ontology,
    Mapping,
    Database,
}

#[derive(Clone, Debug)]
enum RawSide {
    Named(Symbol, bool),
    Exists(Symbol, bool),
}

#[derive(Clone, Debug)]
struct RawAxiom {
    role_keyword: bool,
    lhs: RawSide,
    negated: bool,
    rhs: RawSide,
    loc: Location,
}

#[derive(Clone, Debug, Default)]
struct RawDisjunct {
    declared: Vec<Symbol>,
    atoms: Vec<Atom>,
    eqs: Vec<(Symbol, Term)>,
}

impl RawDisjunct {
    fn is_existential(&self, v: &Symbol) -> bool {
        v.starts_with('_') || self.declared.contains(v)
    }

    fn free_vars(&self) -> Vec<Symbol> {
        let mut vars = Vec::new();
        self.atoms.iter().for_each(|a| a.collect_vars(&mut vars));
        for (v, t) in &self.eqs {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
            t.collect_vars(&mut vars);
        }
        vars.retain(|v| !self.is_existential(v));
        vars
    }
}

struct RawRule {
    head: Vec<Atom>,
    head_existential: Vec<Symbol>,
    negative: Vec<Ucq>,
    positive: Vec<Ucq>,
    source: Vec<SourceLiteral>,
    loc: Location,
}

#[derive(Default)]
struct RawDocument {
    signature: Signature,
    axioms: Vec<RawAxiom>,
    rules: Vec<RawRule>,
    facts: Vec<(Atom, Location)>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn loc(&self) -> Location {
        Location::of(&self.toks[self.pos])
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Tok::Lower(x) if x == w) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let l = self.loc();
        Err(Error::syntax(l.line, l.column, message))
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Lower(w) | Tok::Upper(w) | Tok::Number(w) => format!("`{w}`"),
            Tok::Quoted(w) => format!("\"{w}\""),
            Tok::Section(w) => format!("`%{w}`"),
            Tok::Eof => "end of input".into(),
            other => format!("{other:?}"),
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<Token> {
        if self.peek() == t {
            Ok(self.bump())
        } else {
            self.err(format!("expected {what}, found {}", self.describe()))
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.err(format!("unexpected {}", self.describe()))
        }
    }

    fn name(&mut self) -> Result<Symbol> {
        match self.peek().clone() {
            Tok::Lower(w) | Tok::Upper(w) if !RESERVED.contains(&w.as_str()) => {
                self.bump();
                Ok(sym(&w))
            }
            _ => self.err(format!("expected a predicate name, found {}", self.describe())),
        }
    }

    fn variable(&mut self) -> Result<Symbol> {
        match self.peek().clone() {
            Tok::Upper(w) => {
                self.bump();
                Ok(sym(&w))
            }
            _ => self.err(format!("expected a variable, found {}", self.describe())),
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Upper(v) => {
                self.bump();
                Ok(Term::Var(sym(&v)))
            }
            Tok::Number(n) | Tok::Quoted(n) => {
                self.bump();
                Ok(Term::Const(sym(&n)))
            }
            Tok::Lower(w) if *self.peek_at(1) == Tok::LParen => {
                let Some(id) = w.strip_prefix("sk_") else {
                    return self.err(format!("function term `{w}(...)` is not supported"));
                };
                let loc = self.loc();
                self.bump();
                let args = self.term_list()?;
                Term::skolem(id, args)
                    .map_err(|e| Error::syntax(loc.line, loc.column, e.to_string()))
            }
            Tok::Lower(w) if !RESERVED.contains(&w.as_str()) => {
                self.bump();
                Ok(Term::Const(sym(&w)))
            }
            _ => self.err(format!("expected a term, found {}", self.describe())),
        }
    }

    /// `( t1, ..., tn )`, possibly empty.
    fn term_list(&mut self) -> Result<Vec<Term>> {
        self.expect(&Tok::LParen, "`(`")?;
        let mut out = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            if self.eat(&Tok::RParen) {
                return Ok(out);
            }
            self.expect(&Tok::Comma, "`,` or `)`")?;
        }
    }

    fn atom(&mut self, ns: Namespace) -> Result<Atom> {
        let pred = self.name()?;
        let args = self.term_list()?;
        Ok(Atom { ns, pred, args })
    }

    fn document(&mut self) -> Result<RawDocument> {
        let mut doc = RawDocument::default();
        let mut section = Section::Mapping;
        loop {
            match self.peek().clone() {
                Tok::Eof => return Ok(doc),
                Tok::Section(s) => {
                    self.bump();
                    section = match s.as_str() {
                        "signature" => Section::Signature,
                        "ontology" => Section::Ontology,
                        "database" => Section::Database,
                        _ => Section::Mapping,
                    };
                }
                _ => match section {
                    Section::Signature => self.declaration(&mut doc.signature)?,
                    Section::Ontology => doc.axioms.push(self.axiom()?),
                    Section::Mapping => doc.rules.push(self.rule()?),
                    Section::Database => {
                        self.eat(&Tok::At);
                        let loc = self.loc();
                        let atom = self.atom(Namespace::Source)?;
                        if let Some(t) = atom.args.iter().find(|t| !matches!(t, Term::Const(_))) {
                            return Err(Error::syntax(
                                loc.line,
                                loc.column,
                                format!("database facts take constants only, found {t}"),
                            ));
                        }
                        self.expect(&Tok::Dot, "`.` after a fact")?;
                        doc.facts.push((atom, loc));
                    }
                },
            }
        }
    }

    fn declaration(&mut self, sig: &mut Signature) -> Result<()> {
        let kind = match self.peek().clone() {
            Tok::Lower(w) if matches!(w.as_str(), "concept" | "role" | "source") => {
                self.bump();
                w
            }
            _ => return self.err("expected `concept`, `role` or `source`"),
        };
        loop {
            let name = self.name()?;
            match kind.as_str() {
                "concept" => {
                    sig.concepts.insert(name);
                }
                "role" => {
                    sig.roles.insert(name);
                }
                _ => {
                    self.expect(&Tok::Slash, "`/arity`")?;
                    let Tok::Number(n) = self.peek().clone() else {
                        return self.err("expected an arity");
                    };
                    self.bump();
                    let arity = n.parse().map_err(|_| {
                        let l = self.loc();
                        Error::syntax(l.line, l.column, "arity out of range")
                    })?;
                    sig.sources.insert(name, arity);
                }
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(&Tok::Dot, "`.` after a declaration")?;
        Ok(())
    }

    fn side(&mut self) -> Result<RawSide> {
        if self.eat_word("exists") {
            let name = self.name()?;
            Ok(RawSide::Exists(name, self.eat(&Tok::Minus)))
        } else {
            let name = self.name()?;
            Ok(RawSide::Named(name, self.eat(&Tok::Minus)))
        }
    }

    fn axiom(&mut self) -> Result<RawAxiom> {
        let loc = self.loc();
        let role_keyword = matches!(self.peek(), Tok::Lower(w) if w == "role")
            && matches!(self.peek_at(1), Tok::Lower(_) | Tok::Upper(_));
        if role_keyword {
            self.bump();
        }
        let lhs = self.side()?;
        self.expect(&Tok::Subsumed, "`[=`")?;
        let negated = self.eat_word("not");
        let rhs = self.side()?;
        self.expect(&Tok::Dot, "`.` after an axiom")?;
        Ok(RawAxiom {
            role_keyword,
            lhs,
            negated,
            rhs,
            loc,
        })
    }

    fn rule(&mut self) -> Result<RawRule> {
        let loc = self.loc();
        let mut head = Vec::new();
        let mut head_existential = Vec::new();
        let is_bot = matches!(self.peek(), Tok::Lower(w) if w == "bot")
            && matches!(self.peek_at(1), Tok::Arrow | Tok::Dot);
        if is_bot {
            self.bump();
        } else {
            loop {
                let pred = self.name()?;
                self.expect(&Tok::LParen, "`(`")?;
                let mut args = Vec::new();
                if !self.eat(&Tok::RParen) {
                    loop {
                        if self.eat_word("exists") {
                            let v = self.variable()?;
                            if !head_existential.contains(&v) {
                                head_existential.push(v.clone());
                            }
                            args.push(Term::Var(v));
                        } else {
                            args.push(self.term()?);
                        }
                        if self.eat(&Tok::RParen) {
                            break;
                        }
                        self.expect(&Tok::Comma, "`,` or `)`")?;
                    }
                }
                head.push(Atom {
                    ns: Namespace::Ontology,
                    pred,
                    args,
                });
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        let mut rule = RawRule {
            head,
            head_existential,
            negative: Vec::new(),
            positive: Vec::new(),
            source: Vec::new(),
            loc,
        };
        if self.eat(&Tok::Arrow) {
            loop {
                self.literal(&mut rule)?;
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(&Tok::Dot, "`,` or `.` in a rule")?;
        if !rule.head_existential.is_empty() {
            // an existential head variable is existential wherever it occurs in the head
            let marked: BTreeSet<Symbol> = rule.head_existential.iter().cloned().collect();
            let mut seen = Vec::new();
            rule.head.iter().for_each(|a| a.collect_vars(&mut seen));
            rule.head_existential = seen.into_iter().filter(|v| marked.contains(v)).collect();
        }
        Ok(rule)
    }

    fn literal(&mut self, rule: &mut RawRule) -> Result<()> {
        if self.eat_word("not") {
            let g = self.group()?;
            rule.negative.push(g);
            return Ok(());
        }
        let at = self.eat(&Tok::At);
        if matches!(self.peek(), Tok::Lower(w) if w == "top") {
            self.bump();
            let args = if *self.peek() == Tok::LParen {
                self.term_list()?
            } else {
                Vec::new()
            };
            rule.source.push(SourceLiteral::Top(args));
            return Ok(());
        }
        if at {
            let a = self.atom(Namespace::Source)?;
            rule.source.push(SourceLiteral::Relation(a));
            return Ok(());
        }
        let g = self.group()?;
        rule.positive.push(g);
        Ok(())
    }

    /// A justification: a single atom, or a parenthesised union of conjunctions.
    fn group(&mut self) -> Result<Ucq> {
        let loc = self.loc();
        let disjuncts = if self.eat(&Tok::LParen) {
            let mut ds = vec![self.disjunct()?];
            while self.eat(&Tok::Pipe) {
                ds.push(self.disjunct()?);
            }
            self.expect(&Tok::RParen, "`)` or `|`")?;
            ds
        } else {
            vec![RawDisjunct {
                atoms: vec![self.atom(Namespace::Ontology)?],
                ..Default::default()
            }]
        };
        build_union(disjuncts).map_err(|e| Error::syntax(loc.line, loc.column, e.to_string()))
    }

    fn disjunct(&mut self) -> Result<RawDisjunct> {
        let mut d = RawDisjunct::default();
        if self.eat_word("exists") {
            loop {
                d.declared.push(self.variable()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::Dot, "`.` after the existential variables")?;
        }
        loop {
            if matches!(self.peek(), Tok::Upper(_)) && *self.peek_at(1) == Tok::Equals {
                let v = self.variable()?;
                self.bump();
                let t = self.term()?;
                d.eqs.push((v, t));
            } else {
                d.atoms.push(self.atom(Namespace::Ontology)?);
            }
            if !(*self.peek() == Tok::Comma && self.continues_conjunction()) {
                break;
            }
            self.bump();
        }
        if d.atoms.is_empty() {
            return self.err("a conjunction needs at least one atom");
        }
        Ok(d)
    }

    /// After a `,`: does another conjunct follow (as opposed to a query
    /// ending in a trailing `.`)?
    fn continues_conjunction(&self) -> bool {
        matches!(self.peek_at(1), Tok::Lower(w) | Tok::Upper(w) if !RESERVED.contains(&w.as_str()))
    }
}

fn build_union(disjuncts: Vec<RawDisjunct>) -> Result<Ucq> {
    let mut answer_vars: Vec<Symbol> = Vec::new();
    for d in &disjuncts {
        for v in d.free_vars() {
            if !answer_vars.contains(&v) {
                answer_vars.push(v);
            }
        }
    }
    let mut out = Vec::new();
    for d in disjuncts {
        let mut pattern: Vec<Term> = answer_vars.iter().cloned().map(Term::Var).collect();
        for (v, t) in &d.eqs {
            let i = answer_vars.iter().position(|a| a == v).expect("free variable");
            pattern[i] = t.clone();
        }
        out.push(Cq {
            answer: pattern,
            atoms: d.atoms,
        });
    }
    Ucq::new(answer_vars, out)
}

fn located(loc: Location, e: Error) -> Error {
    let at = |m: String| format!("{}:{}: {m}", loc.line, loc.column);
    match e {
        Error::IllFormed(m) => Error::IllFormed(at(m)),
        Error::Namespace(m) => Error::Namespace(at(m)),
        other => other,
    }
}

struct Arities {
    seen: BTreeMap<Symbol, (usize, Location)>,
}

impl Arities {
    fn record(&mut self, pred: &Symbol, arity: usize, loc: Location) -> Result<()> {
        match self.seen.get(pred) {
            Some(&(known, _)) if known != arity => Err(Error::Arity {
                predicate: pred.to_string(),
                expected: known,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.seen.insert(pred.clone(), (arity, loc));
                Ok(())
            }
        }
    }
}

fn resolve(raw: RawDocument) -> Result<SpecDocument> {
    let mut onto = Arities {
        seen: BTreeMap::new(),
    };
    let mut src = Arities {
        seen: BTreeMap::new(),
    };
    let mut head_preds: BTreeMap<Symbol, Location> = BTreeMap::new();
    let none = Location::default();

    for (name, arity) in &raw.signature.sources {
        src.record(name, *arity, none)?;
    }
    for c in &raw.signature.concepts {
        onto.record(c, 1, none)?;
    }
    for r in &raw.signature.roles {
        onto.record(r, 2, none)?;
    }
    for (fact, loc) in &raw.facts {
        src.record(&fact.pred, fact.arity(), *loc)?;
    }
    for r in &raw.rules {
        for a in &r.head {
            onto.record(&a.pred, a.arity(), r.loc)?;
            head_preds.entry(a.pred.clone()).or_insert(r.loc);
        }
        for j in r.negative.iter().chain(&r.positive) {
            for a in j.disjuncts.iter().flat_map(|d| &d.atoms) {
                onto.record(&a.pred, a.arity(), r.loc)?;
            }
        }
        for lit in &r.source {
            if let SourceLiteral::Relation(a) = lit {
                src.record(&a.pred, a.arity(), r.loc)?;
            }
        }
    }

    // names that must be roles regardless of how the axioms use them
    let mut roles: BTreeSet<Symbol> = onto
        .seen
        .iter()
        .filter(|(_, (a, _))| *a == 2)
        .map(|(p, _)| p.clone())
        .collect();
    for ax in &raw.axioms {
        for side in [&ax.lhs, &ax.rhs] {
            match side {
                RawSide::Exists(n, _) | RawSide::Named(n, true) => {
                    roles.insert(n.clone());
                }
                RawSide::Named(n, false) if ax.role_keyword => {
                    roles.insert(n.clone());
                }
                _ => {}
            }
        }
    }
    // `R [= S` relates two roles as soon as either side is known to be one
    loop {
        let before = roles.len();
        for ax in &raw.axioms {
            if let (RawSide::Named(l, _), RawSide::Named(r, _)) = (&ax.lhs, &ax.rhs) {
                if roles.contains(l) || roles.contains(r) {
                    roles.insert(l.clone());
                    roles.insert(r.clone());
                }
            }
        }
        if roles.len() == before {
            break;
        }
    }
    let mut axioms = Vec::new();
    let mut axiom_locations = Vec::new();
    for ax in &raw.axioms {
        let is_role = |s: &RawSide| matches!(s, RawSide::Named(n, _) if roles.contains(n));
        let axiom = if ax.role_keyword || is_role(&ax.lhs) || is_role(&ax.rhs) {
            let as_role = |s: &RawSide| match s {
                RawSide::Named(n, inv) if roles.contains(n) => Ok(Role {
                    name: n.clone(),
                    inverse: *inv,
                }),
                RawSide::Named(n, _) => Err(Error::Arity {
                    predicate: n.to_string(),
                    expected: 2,
                    found: 1,
                }),
                RawSide::Exists(..) => Err(Error::syntax(
                    ax.loc.line,
                    ax.loc.column,
                    "a role inclusion relates two roles",
                )),
            };
            if ax.negated {
                return Err(Error::syntax(
                    ax.loc.line,
                    ax.loc.column,
                    "role disjointness is not supported",
                ));
            }
            Axiom::RoleInclusion(as_role(&ax.lhs)?, as_role(&ax.rhs)?)
        } else {
            let concept = |s: &RawSide| match s {
                RawSide::Named(n, _) => BasicConcept::Atomic(n.clone()),
                RawSide::Exists(n, inv) => BasicConcept::Exists(Role {
                    name: n.clone(),
                    inverse: *inv,
                }),
            };
            let (l, r) = (concept(&ax.lhs), concept(&ax.rhs));
            if ax.negated {
                Axiom::ConceptDisjointness(l, r)
            } else {
                Axiom::ConceptInclusion(l, r)
            }
        };
        for (name, arity) in Ontology::new(vec![axiom.clone()]).signature() {
            onto.record(&name, arity, ax.loc)?;
        }
        axiom_locations.push((axiom.clone(), ax.loc));
        axioms.push(axiom);
    }

    for (pred, (_, loc)) in &src.seen {
        if let Some(hloc) = head_preds.get(pred) {
            return Err(Error::Namespace(format!(
                "{}:{}: source predicate `{pred}` in a rule head",
                hloc.line, hloc.column
            )));
        }
        if onto.seen.contains_key(pred) {
            return Err(Error::Namespace(format!(
                "{}:{}: `{pred}` is used both as a source and an ontology predicate",
                loc.line, loc.column
            )));
        }
    }

    let mut warnings = Vec::new();
    if !raw.signature.is_empty() {
        for pred in onto.seen.keys() {
            if !raw.signature.concepts.contains(pred) && !raw.signature.roles.contains(pred) {
                warnings.push(format!("ontology predicate `{pred}` is not declared"));
            }
        }
        for pred in src.seen.keys() {
            if !raw.signature.sources.contains_key(pred) {
                warnings.push(format!("source predicate `{pred}` is not declared"));
            }
        }
    }
    for w in &warnings {
        warn!("{w}");
    }

    let mut database = DatabaseInstance::default();
    for (name, arity) in &raw.signature.sources {
        database.declare(name.clone(), *arity)?;
    }
    for (fact, loc) in &raw.facts {
        database.insert(fact.clone()).map_err(|e| located(*loc, e))?;
    }

    let mut mapping = Vec::new();
    let mut rule_locations = Vec::new();
    for r in raw.rules {
        let rule = MappingRule {
            head: r.head,
            head_existential: r.head_existential,
            negative: r.negative,
            positive: r.positive,
            source: r.source,
        };
        rule.validate().map_err(|e| located(r.loc, e))?;
        mapping.push(rule);
        rule_locations.push(r.loc);
    }

    Ok(SpecDocument {
        spec: GeneralizedObdaSpec {
            database,
            mapping,
            ontology: Ontology::new(axioms),
        },
        signature: raw.signature,
        axiom_locations,
        rule_locations,
        fact_locations: raw.facts,
        warnings,
    })
}

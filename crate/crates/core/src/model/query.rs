use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::atom::{Atom, Namespace};
use super::term::{sym, Binding, Symbol, Term};
use crate::error::{Error, Result};

/// A conjunctive query. `answer` lists the answer terms: for a query written
/// by a user these are distinct variables, but rewriting may specialise a
/// disjunct so that two answer positions share a variable or hold a constant.
/// Variables of `atoms` not occurring in `answer` are existential.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cq {
    pub answer: Vec<Term>,
    pub atoms: Vec<Atom>,
}

impl Cq {
    pub fn new(answer_vars: Vec<Symbol>, atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::IllFormed("conjunctive query without atoms".into()));
        }
        let distinct: BTreeSet<_> = answer_vars.iter().collect();
        if distinct.len() != answer_vars.len() {
            return Err(Error::IllFormed("repeated answer variable".into()));
        }
        Ok(Cq {
            answer: answer_vars.into_iter().map(Term::Var).collect(),
            atoms,
        })
    }

    pub fn boolean(atoms: Vec<Atom>) -> Self {
        Cq {
            answer: Vec::new(),
            atoms,
        }
    }

    pub fn is_boolean(&self) -> bool {
        self.answer.is_empty()
    }

    pub fn answer_vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.answer.iter().for_each(|t| t.collect_vars(&mut out));
        out
    }

    pub fn vars(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.atoms.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }

    pub fn existential_vars(&self) -> Vec<Symbol> {
        let answer = self.answer_vars();
        self.vars()
            .into_iter()
            .filter(|v| !answer.contains(v))
            .collect()
    }

    /// Ground in everything but its existential variables.
    pub fn is_closed(&self) -> bool {
        self.answer.iter().all(Term::is_ground)
    }

    /// Substitutes answer variables. Existential variables are bound inside
    /// the query and are never touched by `binding`; they are renamed apart
    /// when a binding would capture them.
    pub fn substitute(&self, binding: &Binding) -> Result<Cq> {
        let answer = self.answer_vars();
        let existential = self.existential_vars();
        let mut effective = Binding::new();
        for (v, t) in binding {
            if !answer.contains(v) {
                continue;
            }
            let in_source = self
                .atoms
                .iter()
                .any(|a| a.ns == Namespace::Source && a.vars().contains(v));
            if in_source && matches!(t, Term::Skolem(_)) {
                return Err(Error::Namespace(format!(
                    "variable {v} of a source atom bound to Skolem term {t}"
                )));
            }
            effective.insert(v.clone(), t.clone());
        }

        let mut incoming = Vec::new();
        effective.values().for_each(|t| t.collect_vars(&mut incoming));
        let mut rename = Binding::new();
        let taken: BTreeSet<Symbol> = self.vars().into_iter().chain(incoming.clone()).collect();
        let mut counter = 0;
        for v in existential.iter().filter(|v| incoming.contains(v)) {
            let fresh = loop {
                counter += 1;
                let candidate = sym(&format!("{v}_{counter}"));
                if !taken.contains(&candidate) {
                    break candidate;
                }
            };
            rename.insert(v.clone(), Term::Var(fresh));
        }
        let atoms: Vec<Atom> = self
            .atoms
            .iter()
            .map(|a| a.apply(&rename).apply(&effective))
            .collect();
        let mut remaining = Vec::new();
        for t in &self.answer {
            t.apply(&effective).collect_vars(&mut remaining);
        }
        Ok(Cq {
            answer: remaining.into_iter().map(Term::Var).collect(),
            atoms,
        })
    }

    /// Matches the answer pattern against a ground tuple and returns the
    /// resulting boolean query, or `None` when the pattern does not fit.
    pub fn instantiate(&self, tuple: &[Term]) -> Option<Cq> {
        if tuple.len() != self.answer.len() {
            return None;
        }
        let mut binding = Binding::new();
        for (p, t) in self.answer.iter().zip(tuple) {
            if !match_term(p, t, &mut binding) {
                return None;
            }
        }
        Some(Cq::boolean(
            self.atoms.iter().map(|a| a.apply(&binding)).collect(),
        ))
    }

    /// Sorted, deduplicated atoms with existential variables renamed to
    /// `_E1, _E2, ...` in order of first occurrence.
    pub fn canonical(&self) -> Cq {
        let mut atoms = self.atoms.clone();
        atoms.sort();
        atoms.dedup();
        let existential = self.existential_vars();
        // mask existentials for a name-independent order, then rename
        let mask: Binding = existential
            .iter()
            .map(|v| (v.clone(), Term::Var(sym("_"))))
            .collect();
        atoms.sort_by(|a, b| a.apply(&mask).cmp(&b.apply(&mask)).then(a.cmp(b)));
        let mut order = Vec::new();
        atoms.iter().for_each(|a| a.collect_vars(&mut order));
        let rename: Binding = order
            .iter()
            .filter(|v| existential.contains(v))
            .enumerate()
            .map(|(i, v)| (v.clone(), Term::Var(sym(&format!("_E{}", i + 1)))))
            .collect();
        let mut atoms: Vec<Atom> = atoms.iter().map(|a| a.apply(&rename)).collect();
        atoms.sort();
        atoms.dedup();
        Cq {
            answer: self.answer.clone(),
            atoms,
        }
    }

    /// True iff this query holds in `facts` (read as a database), for a
    /// boolean query; for a non-boolean query, iff some answer exists.
    pub fn holds_in(&self, facts: &BTreeSet<Atom>) -> bool {
        find_homomorphism(&self.atoms, facts, Binding::new()).is_some()
    }

    /// `self` maps homomorphically into `other` with answer positions aligned,
    /// i.e. `other` is contained in `self`.
    pub fn maps_into(&self, other: &Cq) -> bool {
        if self.answer.len() != other.answer.len() {
            return false;
        }
        let mut binding = Binding::new();
        for (p, t) in self.answer.iter().zip(&other.answer) {
            if !match_term(p, t, &mut binding) {
                return false;
            }
        }
        let target: BTreeSet<Atom> = other.atoms.iter().cloned().collect();
        find_homomorphism(&self.atoms, &target, binding).is_some()
    }

    /// True when `other` equals `self` up to a renaming of variables.
    pub fn is_variant_of(&self, other: &Cq) -> bool {
        let mine: BTreeSet<&Atom> = self.atoms.iter().collect();
        let target: BTreeSet<Atom> = other.atoms.iter().cloned().collect();
        if self.answer.len() != other.answer.len() || mine.len() != target.len() {
            return false;
        }
        let mut binding = Binding::new();
        for (p, t) in self.answer.iter().zip(&other.answer) {
            if !match_term(p, t, &mut binding) {
                return false;
            }
        }
        all_homomorphisms(&self.atoms, &target, binding)
            .into_iter()
            .any(|b| {
                let images: BTreeSet<&Term> = b.values().collect();
                images.len() == b.len()
                    && images.iter().all(|t| matches!(t, Term::Var(_)))
                    && mine.iter().map(|a| a.apply(&b)).collect::<BTreeSet<_>>() == target
            })
    }
}

impl fmt::Display for Cq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let existential = self.existential_vars();
        if !existential.is_empty() {
            f.write_str("exists ")?;
            for (i, v) in existential.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(v)?;
            }
            f.write_str(". ")?;
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A union of conjunctive queries sharing the answer variables. Each
/// disjunct's `answer` is a pattern aligned position-by-position with
/// `answer_vars`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ucq {
    pub answer_vars: Vec<Symbol>,
    pub disjuncts: Vec<Cq>,
}

impl Ucq {
    pub fn from_cq(cq: Cq) -> Self {
        Ucq {
            answer_vars: cq.answer_vars(),
            disjuncts: vec![cq],
        }
    }

    pub fn new(answer_vars: Vec<Symbol>, disjuncts: Vec<Cq>) -> Result<Self> {
        if disjuncts.is_empty() {
            return Err(Error::IllFormed("union of zero conjunctive queries".into()));
        }
        if disjuncts
            .iter()
            .any(|d| d.answer.len() != answer_vars.len())
        {
            return Err(Error::IllFormed(
                "disjuncts disagree on the answer arity".into(),
            ));
        }
        Ok(Ucq {
            answer_vars,
            disjuncts,
        })
    }

    /// Boolean disjuncts for the tuple bound to `answer_vars` by `binding`.
    /// Unbound answer variables stay as they are.
    pub fn instantiate(&self, binding: &Binding) -> Vec<Cq> {
        let tuple: Vec<Term> = self
            .answer_vars
            .iter()
            .map(|v| binding.get(v).cloned().unwrap_or_else(|| Term::Var(v.clone())))
            .collect();
        self.disjuncts
            .iter()
            .filter_map(|d| d.instantiate(&tuple))
            .collect()
    }

    pub fn holds_in(&self, facts: &BTreeSet<Atom>) -> bool {
        self.disjuncts.iter().any(|d| d.holds_in(facts))
    }
}

impl fmt::Display for Ucq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write_aligned(f, &self.answer_vars, d)?;
        }
        Ok(())
    }
}

/// Renames `d`'s answer pattern onto `answer_vars`. Positions the renaming
/// cannot express are returned as equalities `answer var = term`.
pub fn align_to(answer_vars: &[Symbol], d: &Cq) -> (Cq, Vec<(Symbol, Term)>) {
    let mut rename = Binding::new();
    let mut equalities = Vec::new();
    for (v, p) in answer_vars.iter().zip(&d.answer) {
        match p {
            Term::Var(pv) if !rename.contains_key(pv) => {
                rename.insert(pv.clone(), Term::Var(v.clone()));
            }
            Term::Var(pv) => equalities.push((v.clone(), rename[pv].clone())),
            other => equalities.push((v.clone(), other.clone())),
        }
    }
    let aligned = Cq {
        answer: d.answer.iter().map(|t| t.apply(&rename)).collect(),
        atoms: d.atoms.iter().map(|a| a.apply(&rename)).collect(),
    };
    (aligned, equalities)
}

fn write_aligned(f: &mut fmt::Formatter<'_>, answer_vars: &[Symbol], d: &Cq) -> fmt::Result {
    let (aligned, equalities) = align_to(answer_vars, d);
    write!(f, "{aligned}")?;
    for (v, t) in equalities {
        write!(f, ", {v} = {t}")?;
    }
    Ok(())
}

/// One-sided matching: variables of `pattern` are bound, everything in
/// `target` is rigid.
pub fn match_term(pattern: &Term, target: &Term, binding: &mut Binding) -> bool {
    match pattern {
        Term::Var(v) => match binding.get(v) {
            Some(bound) => bound == target,
            None => {
                binding.insert(v.clone(), target.clone());
                true
            }
        },
        Term::Const(_) => pattern == target,
        Term::Skolem(ps) => match target {
            Term::Skolem(ts) if ps.id == ts.id && ps.args.len() == ts.args.len() => ps
                .args
                .iter()
                .zip(&ts.args)
                .all(|(p, t)| match_term(p, t, binding)),
            _ => false,
        },
    }
}

pub fn match_atom(pattern: &Atom, target: &Atom, binding: &mut Binding) -> bool {
    pattern.ns == target.ns
        && pattern.pred == target.pred
        && pattern.args.len() == target.args.len()
        && pattern
            .args
            .iter()
            .zip(&target.args)
            .all(|(p, t)| match_term(p, t, binding))
}

/// Atoms of `facts` sharing predicate and namespace with `pattern`.
pub fn candidates<'a>(pattern: &Atom, facts: &'a BTreeSet<Atom>) -> impl Iterator<Item = &'a Atom> {
    let lower = Atom {
        ns: pattern.ns,
        pred: pattern.pred.clone(),
        args: Vec::new(),
    };
    let (ns, pred) = (pattern.ns, pattern.pred.clone());
    facts
        .range(lower..)
        .take_while(move |a| a.ns == ns && a.pred == pred)
}

/// Backtracking search for a homomorphism from `atoms` into `facts`
/// extending `binding`.
pub fn find_homomorphism(
    atoms: &[Atom],
    facts: &BTreeSet<Atom>,
    binding: Binding,
) -> Option<Binding> {
    let Some((first, rest)) = atoms.split_first() else {
        return Some(binding);
    };
    for fact in candidates(first, facts) {
        let mut extended = binding.clone();
        if match_atom(first, fact, &mut extended) {
            if let Some(found) = find_homomorphism(rest, facts, extended) {
                return Some(found);
            }
        }
    }
    None
}

/// Every homomorphism from `atoms` into `facts` extending `binding`.
pub fn all_homomorphisms(atoms: &[Atom], facts: &BTreeSet<Atom>, binding: Binding) -> Vec<Binding> {
    let mut out = Vec::new();
    collect_homs(atoms, facts, binding, &mut out);
    out
}

fn collect_homs(atoms: &[Atom], facts: &BTreeSet<Atom>, binding: Binding, out: &mut Vec<Binding>) {
    let Some((first, rest)) = atoms.split_first() else {
        out.push(binding);
        return;
    };
    for fact in candidates(first, facts) {
        let mut extended = binding.clone();
        if match_atom(first, fact, &mut extended) {
            collect_homs(rest, facts, extended, out);
        }
    }
}

/// Most general unifier of two term lists where both sides may hold
/// variables. Constants and Skolem terms are rigid.
pub fn unify_terms(left: &[Term], right: &[Term]) -> Option<Binding> {
    let mut subst: BTreeMap<Symbol, Term> = BTreeMap::new();
    fn resolve(t: &Term, s: &Binding) -> Term {
        let mut cur = t.clone();
        while let Term::Var(v) = &cur {
            match s.get(v) {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        match cur {
            Term::Skolem(sk) => Term::Skolem(super::term::SkolemTerm {
                id: sk.id.clone(),
                args: sk.args.iter().map(|a| resolve(a, s)).collect(),
            }),
            other => other,
        }
    }
    fn unify(a: &Term, b: &Term, s: &mut Binding) -> bool {
        let a = resolve(a, s);
        let b = resolve(b, s);
        match (&a, &b) {
            _ if a == b => true,
            (Term::Var(v), other) | (other, Term::Var(v)) => {
                let mut occurs = Vec::new();
                other.collect_vars(&mut occurs);
                if occurs.contains(v) {
                    return false;
                }
                s.insert(v.clone(), other.clone());
                true
            }
            (Term::Skolem(x), Term::Skolem(y)) if x.id == y.id && x.args.len() == y.args.len() => {
                x.args.iter().zip(&y.args).all(|(p, q)| unify(p, q, s))
            }
            _ => false,
        }
    }
    if left.len() != right.len() {
        return None;
    }
    for (a, b) in left.iter().zip(right) {
        if !unify(a, b, &mut subst) {
            return None;
        }
    }
    let keys: Vec<Symbol> = subst.keys().cloned().collect();
    let solved: Binding = keys
        .into_iter()
        .map(|k| {
            let t = resolve(&Term::Var(k.clone()), &subst);
            (k, t)
        })
        .collect();
    Some(solved)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }
    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    #[test]
    fn substitute_binds_answer_variable_only() {
        let q = Cq::new(vec![sym("X")], vec![Atom::ontology("depHeadOf", vec![v("X"), v("Y")])]).unwrap();
        let b: Binding = [(sym("X"), c("a")), (sym("Y"), c("z"))].into_iter().collect();
        let out = q.substitute(&b).unwrap();
        assert_eq!(out.to_string(), "exists Y. depHeadOf(a,Y)");
        assert!(out.is_boolean());
    }

    #[test]
    fn substitute_empty_binding_is_identity() {
        let q = Cq::new(vec![sym("X")], vec![Atom::ontology("Empl", vec![v("X")])]).unwrap();
        assert_eq!(q.substitute(&Binding::new()).unwrap(), q);
    }

    #[test]
    fn substitute_into_skolem_argument() {
        let sk = Term::skolem("z", vec![v("X")]).unwrap();
        let q = Cq::new(vec![sym("X")], vec![Atom::ontology("hasSup", vec![v("X"), sk])]).unwrap();
        let b: Binding = [(sym("X"), c("b"))].into_iter().collect();
        assert_eq!(q.substitute(&b).unwrap().atoms[0].to_string(), "hasSup(b,sk_z(b))");
    }

    #[test]
    fn substitute_avoids_capture() {
        let q = Cq::new(vec![sym("X")], vec![Atom::ontology("P", vec![v("X"), v("Y")])]).unwrap();
        let b: Binding = [(sym("X"), v("Y"))].into_iter().collect();
        let out = q.substitute(&b).unwrap();
        assert_eq!(out.answer, vec![v("Y")]);
        assert_ne!(out.atoms[0].args[0], out.atoms[0].args[1]);
    }

    #[test]
    fn substitute_rejects_skolem_in_source_atom() {
        let q = Cq::new(vec![sym("X")], vec![Atom::source("jobs", vec![v("X")])]).unwrap();
        let b: Binding = [(sym("X"), Term::skolem("z", vec![c("a")]).unwrap())].into_iter().collect();
        assert!(matches!(q.substitute(&b), Err(Error::Namespace(_))));
    }

    #[test]
    fn instantiate_respects_patterns() {
        let d = Cq {
            answer: vec![v("U"), v("U")],
            atoms: vec![Atom::ontology("P", vec![v("U"), v("W")])],
        };
        assert!(d.instantiate(&[c("a"), c("b")]).is_none());
        assert_eq!(d.instantiate(&[c("a"), c("a")]).unwrap().to_string(), "exists W. P(a,W)");
    }

    #[test]
    fn canonical_is_name_independent() {
        let a = Cq::boolean(vec![
            Atom::ontology("P", vec![v("A"), v("B")]),
            Atom::ontology("Q", vec![v("B")]),
        ]);
        let b = Cq::boolean(vec![
            Atom::ontology("Q", vec![v("K")]),
            Atom::ontology("P", vec![v("J"), v("K")]),
        ]);
        assert_eq!(a.canonical(), b.canonical());
    }

    #[test]
    fn containment_via_homomorphism() {
        let general = Cq::new(vec![sym("X")], vec![Atom::ontology("P", vec![v("X"), v("Y")])]).unwrap();
        let specific = Cq::new(
            vec![sym("X")],
            vec![
                Atom::ontology("P", vec![v("X"), v("Y")]),
                Atom::ontology("Q", vec![v("Y")]),
            ],
        )
        .unwrap();
        assert!(general.maps_into(&specific));
        assert!(!specific.maps_into(&general));
    }

    #[test]
    fn unifier_binds_both_sides() {
        let u = unify_terms(&[v("X"), c("a")], &[v("Y"), v("X")]).unwrap();
        assert_eq!(u[&sym("X")], c("a"));
        assert_eq!(u[&sym("Y")], c("a"));
        assert!(unify_terms(&[c("a")], &[c("b")]).is_none());
    }
}

//! Backward rewriting of conjunctive queries under DL-Lite_R inclusions.
//!
//! Two steps are saturated to a fixpoint: replacing one atom by the body of an
//! applicable positive inclusion, and merging two atoms through their most
//! general unifier (which can turn a variable into an unbound one and thereby
//! enable further inclusions). A new query is discarded when it is a variant
//! of one already produced; rewriting never adds atoms, so the worklist is
//! finite. Subsumed disjuncts are pruned from the result.

use crate::model::{sym, unify_terms, Atom, Axiom, BasicConcept, Cq, Ontology, Symbol, Term, Ucq};

struct Fresh(usize);

impl Fresh {
    fn next(&mut self) -> Term {
        self.0 += 1;
        Term::Var(sym(&format!("_F{}", self.0)))
    }
}

/// A variable is unbound when it is existential and occurs exactly once.
fn is_unbound(q: &Cq, t: &Term) -> bool {
    let Term::Var(v) = t else { return false };
    if q.answer.iter().any(|a| {
        let mut vs = Vec::new();
        a.collect_vars(&mut vs);
        vs.contains(v)
    }) {
        return false;
    }
    let mut count = 0;
    for a in &q.atoms {
        for arg in &a.args {
            count += occurrences(arg, v);
        }
    }
    count == 1
}

fn occurrences(t: &Term, v: &Symbol) -> usize {
    match t {
        Term::Var(w) => usize::from(w == v),
        Term::Const(_) => 0,
        Term::Skolem(s) => s.args.iter().map(|a| occurrences(a, v)).sum(),
    }
}

/// The atom replacing `g` when `axiom` applies to it, if it does.
fn apply_inclusion(q: &Cq, g: &Atom, axiom: &Axiom, fresh: &mut Fresh) -> Option<Atom> {
    match axiom {
        Axiom::ConceptInclusion(lhs, rhs) => match (rhs, g.args.as_slice()) {
            (BasicConcept::Atomic(name), [t]) if *name == g.pred => {
                Some(lhs.atom(t.clone(), fresh.next()))
            }
            (BasicConcept::Exists(role), [s, o]) if role.name == g.pred => {
                let (subject, filler) = if role.inverse { (o, s) } else { (s, o) };
                is_unbound(q, filler).then(|| lhs.atom(subject.clone(), fresh.next()))
            }
            _ => None,
        },
        Axiom::RoleInclusion(lhs, rhs) if rhs.name == g.pred && g.args.len() == 2 => {
            let (s, o) = (g.args[0].clone(), g.args[1].clone());
            Some(if rhs.inverse {
                lhs.atom(o, s)
            } else {
                lhs.atom(s, o)
            })
        }
        _ => None,
    }
}

fn reduce(q: &Cq, i: usize, j: usize) -> Option<Cq> {
    let (a, b) = (&q.atoms[i], &q.atoms[j]);
    if a.ns != b.ns || a.pred != b.pred {
        return None;
    }
    let mgu = unify_terms(&a.args, &b.args)?;
    Some(Cq {
        answer: q.answer.iter().map(|t| t.apply(&mgu)).collect(),
        atoms: q.atoms.iter().map(|x| x.apply(&mgu)).collect(),
    })
}

/// Rewrites `q` into a union of conjunctive queries such that, for every set
/// of atoms `A`, certain answers of `q` over `T ∪ A` are exactly the answers
/// of the union over `A` read as a database.
pub fn rewrite_cq(q: &Cq, ontology: &Ontology) -> Ucq {
    let answer_vars = answer_names(q);
    let inclusions: Vec<&Axiom> = ontology
        .axioms
        .iter()
        .filter(|a| !matches!(a, Axiom::ConceptDisjointness(..)))
        .collect();

    let start = q.canonical();
    let mut produced = vec![start.clone()];
    let mut worklist = vec![start];
    let mut fresh = Fresh(0);
    while let Some(current) = worklist.pop() {
        let mut next = Vec::new();
        for (i, g) in current.atoms.iter().enumerate() {
            for axiom in &inclusions {
                if let Some(replacement) = apply_inclusion(&current, g, axiom, &mut fresh) {
                    let mut atoms = current.atoms.clone();
                    atoms[i] = replacement;
                    next.push(Cq {
                        answer: current.answer.clone(),
                        atoms,
                    });
                }
            }
        }
        for i in 0..current.atoms.len() {
            for j in i + 1..current.atoms.len() {
                if let Some(merged) = reduce(&current, i, j) {
                    next.push(merged);
                }
            }
        }
        for candidate in next {
            let candidate = candidate.canonical();
            if produced.iter().any(|p| p.is_variant_of(&candidate)) {
                continue;
            }
            produced.push(candidate.clone());
            worklist.push(candidate);
        }
    }
    Ucq {
        answer_vars,
        disjuncts: prune_subsumed(produced),
    }
}

fn answer_names(q: &Cq) -> Vec<Symbol> {
    let vars = q.answer_vars();
    if vars.len() == q.answer.len() {
        vars
    } else {
        (1..=q.answer.len())
            .map(|i| sym(&format!("_A{i}")))
            .collect()
    }
}

/// Drops every disjunct into which another disjunct maps; among mutually
/// equivalent disjuncts the smallest in canonical order survives. Output is
/// sorted by printed form.
pub fn prune_subsumed(disjuncts: Vec<Cq>) -> Vec<Cq> {
    let mut ds: Vec<(String, Cq)> = disjuncts
        .into_iter()
        .map(|d| {
            let d = d.canonical();
            (d.to_string(), d)
        })
        .collect();
    ds.sort_by(|a, b| {
        a.1.atoms
            .len()
            .cmp(&b.1.atoms.len())
            .then_with(|| a.0.cmp(&b.0))
            .then_with(|| a.1.cmp(&b.1))
    });
    ds.dedup_by(|a, b| a.1 == b.1);
    let keep: Vec<bool> = (0..ds.len())
        .map(|i| {
            !(0..ds.len()).any(|j| {
                j != i
                    && ds[j].1.maps_into(&ds[i].1)
                    && (j < i || !ds[i].1.maps_into(&ds[j].1))
            })
        })
        .collect();
    let mut out: Vec<(String, Cq)> = ds
        .into_iter()
        .zip(keep)
        .filter_map(|(d, k)| k.then_some(d))
        .collect();
    out.sort();
    out.into_iter().map(|(_, d)| d).collect()
}

/// Boolean query detecting a violation of `lhs ⊓ rhs ⊑ ⊥`.
pub fn violation_query(lhs: &BasicConcept, rhs: &BasicConcept) -> Cq {
    let x = Term::var("_X");
    Cq::boolean(vec![
        lhs.atom(x.clone(), Term::var("_W1")),
        rhs.atom(x, Term::var("_W2")),
    ])
}

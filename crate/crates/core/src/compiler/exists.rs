use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

use super::RewrittenProgram;
use crate::error::{Error, Result};
use crate::grounder::{cartesian, partial_ground, top_tuples, GroundingOptions};
use crate::model::{
    all_homomorphisms, sym, Atom, Binding, Cq, DatabaseInstance, Namespace, SourceLiteral, Symbol,
    Term,
};

/// `H1, ..., Hn <- B1, ..., Bm, not (C1), ..., not (Ck)` where every variable
/// of a negative body is existential. An empty head is a constraint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExistsRule {
    pub head: Vec<Atom>,
    pub positive: Vec<Atom>,
    pub negative: Vec<Cq>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExistsAspProgram {
    pub rules: Vec<ExistsRule>,
}

impl ExistsAspProgram {
    /// Ground terms occurring in the program, Skolem terms included.
    pub fn terms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            let atoms = r
                .head
                .iter()
                .chain(&r.positive)
                .chain(r.negative.iter().flat_map(|c| &c.atoms));
            for a in atoms {
                out.extend(a.args.iter().filter(|t| t.is_ground()).cloned());
            }
        }
        out
    }
}

/// A ground normal rule; `head == None` is a constraint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassicalRule {
    pub head: Option<Atom>,
    pub positive: Vec<Atom>,
    pub negative: Vec<Atom>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalAspProgram {
    pub rules: Vec<ClassicalRule>,
    /// Auxiliary predicates introduced for existential negative bodies.
    pub aux: BTreeSet<Symbol>,
}

fn rename_apart(d: &Cq, tag: usize) -> Vec<Atom> {
    let binding: Binding = d
        .vars()
        .into_iter()
        .map(|v| {
            let renamed = Term::Var(sym(&format!("{v}_{tag}")));
            (v, renamed)
        })
        .collect();
    d.atoms.iter().map(|a| a.apply(&binding)).collect()
}

/// Reads a rewritten program as an ∃-ASP program over `db`. Rules are
/// instantiated by partial grounding in the requested mode; in full mode the
/// source literals stay in the positive body and the database facts are
/// added as rules. Variables local to positive justifications are
/// instantiated with atoms that some rule can derive.
pub fn to_exists_asp(
    m: &RewrittenProgram,
    db: &DatabaseInstance,
    options: &GroundingOptions,
) -> Result<ExistsAspProgram> {
    let pg = partial_ground(&m.program, db, options)?;
    let mut derivable: BTreeSet<Atom> = pg.rules.iter().flat_map(|r| r.head.iter().cloned()).collect();
    let mut rules = Vec::new();
    let keep_source = !pg.rules.iter().all(|r| r.guard.is_empty());
    if keep_source {
        for fact in db.facts() {
            derivable.insert(fact.clone());
            rules.push(ExistsRule {
                head: vec![fact.clone()],
                positive: Vec::new(),
                negative: Vec::new(),
            });
        }
    }
    for r in &pg.rules {
        let mut body = Vec::new();
        let mut applicable = true;
        for lit in &r.guard {
            match lit {
                SourceLiteral::Relation(a) => body.push(a.clone()),
                SourceLiteral::Top(ts) => applicable &= top_tuples(db, ts.len()).contains(ts),
            }
        }
        for (tag, j) in r.positive.iter().enumerate() {
            match j.disjuncts.as_slice() {
                [] => applicable = false,
                [d] => body.extend(rename_apart(d, tag)),
                _ => {
                    return Err(Error::IllFormed(
                        "positive justification with several disjuncts; rewrite the program first"
                            .into(),
                    ))
                }
            }
        }
        if !applicable {
            continue;
        }
        let negative: Vec<Cq> = r
            .negative
            .iter()
            .flat_map(|j| j.disjuncts.iter().map(|d| d.canonical()))
            .collect();
        let bindings = if body.iter().all(Atom::is_ground) {
            vec![Binding::new()]
        } else {
            all_homomorphisms(&body, &derivable, Binding::new())
        };
        for b in bindings {
            let mut positive: Vec<Atom> = body.iter().map(|a| a.apply(&b)).collect();
            positive.sort();
            positive.dedup();
            rules.push(ExistsRule {
                head: r.head.clone(),
                positive,
                negative: negative.clone(),
            });
        }
    }
    rules.sort();
    rules.dedup();
    Ok(ExistsAspProgram { rules })
}

/// The auxiliary atom standing for `not (body)`. Its predicate is named after
/// a hash of the body's shape with ground terms abstracted into parameters,
/// which become the atom's arguments.
fn aux_atom(body: &Cq) -> Atom {
    let canonical = body.canonical();
    let mut params: Vec<Term> = Vec::new();
    for a in &canonical.atoms {
        for t in &a.args {
            if t.is_ground() && !params.contains(t) {
                params.push(t.clone());
            }
        }
    }
    let names: Vec<Symbol> = (1..=params.len()).map(|i| sym(&format!("_P{i}"))).collect();
    let abstracted: Vec<Atom> = canonical
        .atoms
        .iter()
        .map(|a| Atom {
            args: a
                .args
                .iter()
                .map(|t| match params.iter().position(|p| p == t) {
                    Some(i) => Term::Var(names[i].clone()),
                    None => t.clone(),
                })
                .collect(),
            ..a.clone()
        })
        .collect();
    let template = Cq {
        answer: names.iter().cloned().map(Term::Var).collect(),
        atoms: abstracted,
    }
    .canonical();
    let digest = Sha256::digest(format!("{template}|{}", names.len()).as_bytes());
    let hex: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
    Atom {
        ns: Namespace::Auxiliary,
        pred: sym(&format!("aux_{hex}")),
        args: params,
    }
}

/// Replaces every existential negative body by `not r(y)` for a fresh
/// auxiliary predicate `r` defined by all groundings of the body over the
/// program's ground terms. Bodies without existential variables that
/// consist of one atom are kept as plain negative literals.
pub fn exists_to_classical(p: &ExistsAspProgram, cap: usize) -> Result<ClassicalAspProgram> {
    let domain: Vec<Term> = p.terms().into_iter().collect();
    let mut rules = Vec::new();
    let mut aux = BTreeSet::new();
    let mut defined: BTreeSet<Atom> = BTreeSet::new();
    for r in &p.rules {
        let mut negative = Vec::new();
        for c in &r.negative {
            if c.atoms.len() == 1 && c.atoms[0].is_ground() {
                negative.push(c.atoms[0].clone());
                continue;
            }
            let atom = aux_atom(c);
            if defined.insert(atom.clone()) {
                aux.insert(atom.pred.clone());
                let vars = c.vars();
                let count = domain.len().checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
                if count > cap {
                    return Err(Error::CapExceeded {
                        what: "auxiliary definitions",
                        size: count,
                        cap,
                    });
                }
                for tuple in cartesian(&domain, vars.len()) {
                    let theta: Binding = vars.iter().cloned().zip(tuple).collect();
                    rules.push(ClassicalRule {
                        head: Some(atom.clone()),
                        positive: c.atoms.iter().map(|a| a.apply(&theta)).collect(),
                        negative: Vec::new(),
                    });
                }
            }
            negative.push(atom);
        }
        negative.sort();
        negative.dedup();
        if r.head.is_empty() {
            rules.push(ClassicalRule {
                head: None,
                positive: r.positive.clone(),
                negative,
            });
        } else {
            for h in &r.head {
                rules.push(ClassicalRule {
                    head: Some(h.clone()),
                    positive: r.positive.clone(),
                    negative: negative.clone(),
                });
            }
        }
    }
    rules.sort();
    rules.dedup();
    Ok(ClassicalAspProgram { rules, aux })
}

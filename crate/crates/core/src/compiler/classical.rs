use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use rayon::prelude::*;

use super::exists::{ClassicalAspProgram, ClassicalRule};
use crate::error::{Error, Result};
use crate::model::{Atom, Namespace, SkolemTerm, Symbol, Term};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassicalAnswerSets {
    /// Stable models ordered by size, then lexicographically.
    pub answer_sets: Vec<BTreeSet<Atom>>,
    pub guesses_examined: u64,
}

fn least_model(rules: &[&ClassicalRule]) -> BTreeSet<Atom> {
    let mut model = BTreeSet::new();
    loop {
        let before = model.len();
        for r in rules {
            if let Some(h) = &r.head {
                if !model.contains(h) && r.positive.iter().all(|a| model.contains(a)) {
                    model.insert(h.clone());
                }
            }
        }
        if model.len() == before {
            return model;
        }
    }
}

/// Stable models of a ground normal program. The negated atoms that some
/// rule can derive are guessed; a guess `G` yields a stable model when the
/// least model `L` of the reduct w.r.t. `G` agrees with `G` on the guessed
/// atoms and violates no constraint. `cap` bounds the number of guessed atoms.
pub fn solve_classical(p: &ClassicalAspProgram, cap: usize) -> Result<ClassicalAnswerSets> {
    let heads: BTreeSet<&Atom> = p.rules.iter().filter_map(|r| r.head.as_ref()).collect();
    let guessed: Vec<Atom> = p
        .rules
        .iter()
        .flat_map(|r| &r.negative)
        .filter(|a| heads.contains(a))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let n = guessed.len();
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded {
            what: "classical guess space",
            size: n,
            cap,
        });
    }
    let index: BTreeMap<&Atom, usize> = guessed.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let total = 1u64 << n;
    let mut found: Vec<BTreeSet<Atom>> = (0..total)
        .into_par_iter()
        .filter_map(|mask| {
            let in_guess = |a: &Atom| index.get(a).is_some_and(|&i| mask >> i & 1 == 1);
            let reduct: Vec<&ClassicalRule> = p
                .rules
                .iter()
                .filter(|r| !r.negative.iter().any(in_guess))
                .collect();
            let model = least_model(&reduct);
            let agrees = guessed
                .iter()
                .enumerate()
                .all(|(i, a)| model.contains(a) == (mask >> i & 1 == 1));
            if !agrees {
                return None;
            }
            let violated = p.rules.iter().any(|r| {
                r.head.is_none()
                    && r.positive.iter().all(|a| model.contains(a))
                    && !r.negative.iter().any(|a| model.contains(a))
            });
            (!violated).then_some(model)
        })
        .collect();
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    found.dedup();
    Ok(ClassicalAnswerSets {
        answer_sets: found,
        guesses_examined: total,
    })
}

/// Drops auxiliary atoms from a classical answer set.
pub fn project_aux(y: &BTreeSet<Atom>, aux: &BTreeSet<Symbol>) -> BTreeSet<Atom> {
    y.iter()
        .filter(|a| a.ns != Namespace::Auxiliary && !aux.contains(&a.pred))
        .cloned()
        .collect()
}

struct Mangler {
    predicates: BTreeMap<(Namespace, Symbol), String>,
    taken: BTreeSet<String>,
    skolems: BTreeMap<SkolemTerm, String>,
}

fn lower_identifier(s: &str) -> String {
    let mut out: String = s
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect();
    if !out.starts_with(|c: char| c.is_ascii_lowercase()) {
        out.insert(0, 'p');
    }
    out
}

impl Mangler {
    fn predicate(&mut self, a: &Atom) -> String {
        let key = (a.ns, a.pred.clone());
        if let Some(name) = self.predicates.get(&key) {
            return name.clone();
        }
        let base = lower_identifier(&a.pred);
        let mut name = base.clone();
        let mut i = 1;
        while self.taken.contains(&name) {
            i += 1;
            name = format!("{base}_{i}");
        }
        self.taken.insert(name.clone());
        self.predicates.insert(key, name.clone());
        name
    }

    fn term(&mut self, t: &Term) -> String {
        match t {
            Term::Skolem(s) => {
                if let Some(name) = self.skolems.get(s) {
                    return name.clone();
                }
                let mut base = format!("skf_{}", lower_identifier(&s.id));
                for a in &s.args {
                    base.push('_');
                    base.push_str(&lower_identifier(&a.to_string().replace('"', "")));
                }
                let mut name = base.clone();
                let mut i = 1;
                while self.skolems.values().any(|v| *v == name) {
                    i += 1;
                    name = format!("{base}_{i}");
                }
                self.skolems.insert(s.clone(), name.clone());
                name
            }
            other => other.to_string(),
        }
    }

    fn atom(&mut self, a: &Atom) -> String {
        let mut out = self.predicate(a);
        if !a.args.is_empty() {
            let args: Vec<String> = a.args.iter().map(|t| self.term(t)).collect();
            out.push('(');
            out.push_str(&args.join(","));
            out.push(')');
        }
        out
    }
}

/// Writes the program in the usual `h :- b, not c.` text syntax. Predicate
/// names are lower-cased and Skolem terms become `skf_<id>_<args>` constants;
/// a header comment lists both renamings.
pub fn emit_asp_text(p: &ClassicalAspProgram) -> String {
    let mut m = Mangler {
        predicates: BTreeMap::new(),
        taken: BTreeSet::new(),
        skolems: BTreeMap::new(),
    };
    let mut lines: Vec<String> = p
        .rules
        .iter()
        .map(|r| {
            let mut body: Vec<String> = r.positive.iter().map(|a| m.atom(a)).collect();
            body.extend(r.negative.iter().map(|a| format!("not {}", m.atom(a))));
            match (&r.head, body.is_empty()) {
                (Some(h), true) => format!("{}.", m.atom(h)),
                (Some(h), false) => format!("{} :- {}.", m.atom(h), body.join(", ")),
                (None, _) => format!(":- {}.", body.join(", ")),
            }
        })
        .collect();
    lines.sort();
    lines.dedup();

    let mut out = String::from("% generated by mapprog\n");
    let renamed: Vec<_> = m
        .predicates
        .iter()
        .filter(|((_, original), name)| original.as_ref() != name.as_str())
        .collect();
    if !renamed.is_empty() {
        out.push_str("% predicates:\n");
        for ((_, original), name) in renamed {
            let _ = writeln!(out, "%   {name} = {original}");
        }
    }
    if !m.skolems.is_empty() {
        out.push_str("% skolem terms:\n");
        for (s, name) in &m.skolems {
            let _ = writeln!(out, "%   {name} = {}", Term::Skolem(s.clone()));
        }
    }
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

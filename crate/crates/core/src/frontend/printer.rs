use std::fmt::{self, Write};

use super::parser::SpecDocument;
use crate::grounder::GroundRule;
use crate::model::{align_to, Atom, GeneralizedObdaSpec, MappingRule, SourceLiteral, Symbol, Term, Ucq};

fn write_terms(f: &mut impl Write, terms: &[Term]) -> fmt::Result {
    f.write_char('(')?;
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{t}")?;
    }
    f.write_char(')')
}

fn write_atom(f: &mut impl Write, a: &Atom) -> fmt::Result {
    f.write_str(&a.pred)?;
    write_terms(f, &a.args)
}

/// Writes a justification in the form the parser reads back.
pub(crate) fn write_union(f: &mut impl Write, u: &Ucq) -> fmt::Result {
    let aligned: Vec<_> = u.disjuncts.iter().map(|d| align_to(&u.answer_vars, d)).collect();
    if let [(d, eqs)] = aligned.as_slice() {
        let hidden = d.existential_vars().iter().all(|v| v.starts_with('_'));
        if d.atoms.len() == 1 && eqs.is_empty() && hidden {
            return write_atom(f, &d.atoms[0]);
        }
    }
    f.write_char('(')?;
    for (i, (d, eqs)) in aligned.iter().enumerate() {
        if i > 0 {
            f.write_str(" | ")?;
        }
        let named: Vec<Symbol> = d
            .existential_vars()
            .into_iter()
            .filter(|v| !v.starts_with('_'))
            .collect();
        if !named.is_empty() {
            write!(f, "exists {}. ", named.join(", "))?;
        }
        for (j, a) in d.atoms.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write_atom(f, a)?;
        }
        for (v, t) in eqs {
            write!(f, ", {v} = {t}")?;
        }
    }
    f.write_char(')')
}

fn write_source(f: &mut impl Write, lit: &SourceLiteral) -> fmt::Result {
    f.write_char('@')?;
    match lit {
        SourceLiteral::Relation(a) => write_atom(f, a),
        SourceLiteral::Top(ts) => {
            f.write_str("top")?;
            write_terms(f, ts)
        }
    }
}

fn write_rule(
    f: &mut impl Write,
    head: &[Atom],
    existential: &[Symbol],
    negative: &[Ucq],
    positive: &[Ucq],
    source: &[SourceLiteral],
) -> fmt::Result {
    if head.is_empty() {
        f.write_str("bot")?;
    }
    for (i, a) in head.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(&a.pred)?;
        f.write_char('(')?;
        for (j, t) in a.args.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            if matches!(t, Term::Var(v) if existential.contains(v)) {
                f.write_str("exists ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_char(')')?;
    }
    let mut first = true;
    let mut sep = |f: &mut dyn Write| -> fmt::Result {
        f.write_str(if first { " <- " } else { ", " })?;
        first = false;
        Ok(())
    };
    for j in negative {
        sep(f)?;
        f.write_str("not ")?;
        write_union(f, j)?;
    }
    for j in positive {
        sep(f)?;
        write_union(f, j)?;
    }
    for lit in source {
        sep(f)?;
        write_source(f, lit)?;
    }
    f.write_char('.')
}

impl fmt::Display for MappingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rule(
            f,
            &self.head,
            &self.head_existential,
            &self.negative,
            &self.positive,
            &self.source,
        )
    }
}

impl fmt::Display for GroundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rule(f, &self.head, &[], &self.negative, &self.positive, &self.guard)
    }
}

fn write_sections(out: &mut String, spec: &GeneralizedObdaSpec) -> fmt::Result {
    if !spec.ontology.is_empty() {
        writeln!(out, "%ontology")?;
        write!(out, "{}", spec.ontology)?;
    }
    if !spec.mapping.is_empty() {
        writeln!(out, "%mapping")?;
        for r in &spec.mapping {
            writeln!(out, "{r}")?;
        }
    }
    if !spec.database.is_empty() {
        writeln!(out, "%database")?;
        for fact in spec.database.facts() {
            write_atom(out, fact)?;
            writeln!(out, ".")?;
        }
    }
    Ok(())
}

/// Prints a specification in the textual format.
pub fn print_spec(spec: &GeneralizedObdaSpec) -> String {
    let mut out = String::new();
    write_sections(&mut out, spec).expect("writing to a String");
    out
}

/// Prints a document including its `%signature` section.
pub fn print_document(doc: &SpecDocument) -> String {
    let mut out = String::new();
    let sig = &doc.signature;
    if !sig.is_empty() {
        out.push_str("%signature\n");
        let join = |names: Vec<String>| names.join(", ");
        if !sig.concepts.is_empty() {
            let names = sig.concepts.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("concept {}.\n", join(names)));
        }
        if !sig.roles.is_empty() {
            let names = sig.roles.iter().map(|r| r.to_string()).collect();
            out.push_str(&format!("role {}.\n", join(names)));
        }
        if !sig.sources.is_empty() {
            let names = sig.sources.iter().map(|(s, k)| format!("{s}/{k}")).collect();
            out.push_str(&format!("source {}.\n", join(names)));
        }
    }
    write_sections(&mut out, &doc.spec).expect("writing to a String");
    out
}

impl fmt::Display for SpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_document(self))
    }
}

//! Textual specification language: lexer, parser, printer and CSV ingestion.

mod lexer;
mod parser;
mod printer;

use std::path::Path;

pub use parser::{
    parse_atoms, parse_document, parse_query, parse_spec, Location, Signature, SpecDocument,
};
pub use printer::{print_document, print_spec};

use crate::error::{Error, Result};
use crate::model::{Atom, DatabaseInstance, Namespace, Term};

/// Loads one relation from a CSV file into `db`. The relation is named after
/// the file stem and its arity is the number of header columns.
pub fn load_csv_facts(path: &Path, db: &mut DatabaseInstance) -> Result<usize> {
    let relation = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Error::Io(format!("{}: cannot derive a relation name", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let arity = reader
        .headers()
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
        .len();
    db.declare(relation.into(), arity)?;
    let mut count = 0;
    for record in reader.records() {
        let record = record.map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let args = record.iter().map(Term::constant).collect();
        db.insert(Atom::new(Namespace::Source, relation, args))?;
        count += 1;
    }
    Ok(count)
}

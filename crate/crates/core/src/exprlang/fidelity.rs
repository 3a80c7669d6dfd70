//! Re-verification of the relation catalog through its text rendering.

use rayon::prelude::*;

use super::eval::EvalContext;
use super::parse::parse_identity;
use crate::operators::{Generators, Realization};
use crate::relations::{CagRelation, ChevRelation, ChevalleySet, Entry, RelationReport};

pub fn check_cag_via_dsl<R: Realization>(
    real: &R,
    gens: &Generators<R::S>,
    entries: &[Entry<CagRelation>],
) -> Vec<RelationReport> {
    let ctx = EvalContext::new(real, gens);
    entries
        .par_iter()
        .map(|entry| match entry {
            Entry::Skipped { id, reason } => RelationReport::skipped(id.clone(), real.mode(), reason),
            Entry::Check(rel) => {
                let text = rel.to_dsl(gens.params());
                parse_identity(&text)
                    .and_then(|identity| ctx.check_as(rel.id(), &identity))
                    .unwrap_or_else(|e| RelationReport::error(rel.id(), real.mode(), &e))
            }
        })
        .collect()
}

pub fn check_chevalley_via_dsl(set: &ChevalleySet, entries: &[Entry<ChevRelation>]) -> Vec<RelationReport> {
    let ctx = EvalContext::with_chevalley(set);
    let real = set.sample();
    entries
        .par_iter()
        .map(|entry| match entry {
            Entry::Skipped { id, reason } => RelationReport::skipped(id.clone(), real.mode(), reason),
            Entry::Check(rel) => {
                let text = rel.to_dsl(set.params());
                parse_identity(&text)
                    .and_then(|identity| ctx.check_as(rel.id(), &identity))
                    .unwrap_or_else(|e| RelationReport::error(rel.id(), real.mode(), &e))
            }
        })
        .collect()
}

/// Pairs whose status differs between two report lists of the same catalog.
pub fn status_mismatches(native: &[RelationReport], dsl: &[RelationReport]) -> Vec<String> {
    let mut out: Vec<String> = native
        .iter()
        .zip(dsl)
        .filter(|(a, b)| a.id != b.id || a.status != b.status)
        .map(|(a, b)| format!("{}: native {}, text {}", a.id, a.status.as_str(), b.status.as_str()))
        .collect();
    if native.len() != dsl.len() {
        out.push(format!("report counts differ: {} vs {}", native.len(), dsl.len()));
    }
    out
}

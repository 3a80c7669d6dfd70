use rayon::prelude::*;
use serde_json::{json, Value};

use super::catalog::{
    chevalley_catalog, defining_catalog, derived_catalog, vacuum_catalog, CagRelation, ChevRelation, Entry, RelationId,
};
use super::chevalley::ChevalleySet;
use crate::error::Result;
use crate::fockspace::FockParams;
use crate::operators::{Generators, Mode, OperatorMatrix, Realization};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Outcome of one relation instance.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub id: RelationId,
    pub status: Status,
    pub mode: Mode,
    /// Largest entry magnitude of `lhs - rhs` (0 when skipped).
    pub max_residual: f64,
    /// Nonzero entries of `lhs - rhs` as `[row, col, value]`, present on failure.
    pub residual: Option<Value>,
    /// Skip reason or evaluation error.
    pub message: Option<String>,
}

impl RelationReport {
    pub fn skipped(id: RelationId, mode: Mode, reason: impl Into<String>) -> Self {
        Self {
            id,
            status: Status::Skipped,
            mode,
            max_residual: 0.0,
            residual: None,
            message: Some(reason.into()),
        }
    }

    pub fn error(id: RelationId, mode: Mode, err: &crate::Error) -> Self {
        Self {
            id,
            status: Status::Fail,
            mode,
            max_residual: f64::INFINITY,
            residual: None,
            message: Some(format!("{} ({})", err, err.code())),
        }
    }

    /// Compares two sides entrywise; exact rings need a zero difference,
    /// numeric ones stay within the realization's tolerance.
    pub fn compare<R: Realization>(
        real: &R,
        id: RelationId,
        lhs: &OperatorMatrix<R::S>,
        rhs: &OperatorMatrix<R::S>,
    ) -> Self {
        let diff = match lhs.sub(rhs) {
            Ok(d) => d,
            Err(e) => return Self::error(id, real.mode(), &e),
        };
        let failing = diff.matrix.iter().any(|(_, _, v)| !real.negligible(v));
        let max_residual = diff.matrix.max_magnitude();
        Self {
            id,
            status: if failing { Status::Fail } else { Status::Pass },
            mode: real.mode(),
            max_residual,
            residual: failing.then(|| diff.matrix.entries_json()),
            message: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "id": self.id.tag,
            "indices": self.id.indices,
            "status": self.status.as_str(),
        });
        if let Value::Object(mode) = self.mode.to_json() {
            for (k, v) in mode {
                out[k] = v;
            }
        }
        if self.status == Status::Fail {
            out["max_residual"] = json!(self.max_residual);
        }
        if let Some(r) = &self.residual {
            out["residual"] = r.clone();
        }
        if let Some(m) = &self.message {
            out["message"] = json!(m);
        }
        out
    }
}

/// A batch of reports for one parameter set.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub params: FockParams,
    pub mode: Mode,
    pub relations: Vec<RelationReport>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn new(params: FockParams, mode: Mode) -> Self {
        let mut notes = Vec::new();
        if params.p == 0 {
            notes.push("p = 0: the module is one-dimensional and every creation generator vanishes".to_string());
        }
        Self {
            params,
            mode,
            relations: Vec::new(),
            notes,
        }
    }

    pub fn extend(&mut self, reports: impl IntoIterator<Item = RelationReport>) {
        self.relations.extend(reports);
    }

    pub fn count(&self, status: Status) -> usize {
        self.relations.iter().filter(|r| r.status == status).count()
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "params": self.params,
            "mode": self.mode.name(),
            "relations": self.relations.iter().map(RelationReport::to_json).collect::<Vec<_>>(),
            "summary": {
                "total": self.relations.len(),
                "passed": self.count(Status::Pass),
                "failed": self.failed(),
                "skipped": self.count(Status::Skipped),
            },
            "notes": self.notes,
        });
        if let Value::Object(mode) = self.mode.to_json() {
            for (k, v) in mode {
                if k != "mode" {
                    out[k] = v;
                }
            }
        }
        out
    }
}

/// Checks catalog entries in parallel; output order follows the catalog.
pub fn check_cag<R: Realization>(real: &R, gens: &Generators<R::S>, entries: &[Entry<CagRelation>]) -> Vec<RelationReport> {
    entries
        .par_iter()
        .map(|entry| match entry {
            Entry::Skipped { id, reason } => RelationReport::skipped(id.clone(), real.mode(), reason),
            Entry::Check(rel) => match rel.sides(real, gens) {
                Ok((lhs, rhs)) => RelationReport::compare(real, rel.id(), &lhs, &rhs),
                Err(e) => RelationReport::error(rel.id(), real.mode(), &e),
            },
        })
        .collect()
}

pub fn check_chevalley(set: &ChevalleySet, entries: &[Entry<ChevRelation>]) -> Vec<RelationReport> {
    let real = set.sample();
    entries
        .par_iter()
        .map(|entry| match entry {
            Entry::Skipped { id, reason } => RelationReport::skipped(id.clone(), real.mode(), reason),
            Entry::Check(rel) => match rel.sides(set) {
                Ok((lhs, rhs)) => RelationReport::compare(real, rel.id(), &lhs, &rhs),
                Err(e) => RelationReport::error(rel.id(), real.mode(), &e),
            },
        })
        .collect()
}

pub fn verify_defining<R: Realization>(real: &R, gens: &Generators<R::S>) -> Vec<RelationReport> {
    check_cag(real, gens, &defining_catalog(gens.params()))
}

pub fn verify_derived<R: Realization>(real: &R, gens: &Generators<R::S>) -> Vec<RelationReport> {
    check_cag(real, gens, &derived_catalog(gens.params()))
}

pub fn verify_vacuum<R: Realization>(real: &R, gens: &Generators<R::S>) -> Vec<RelationReport> {
    check_cag(real, gens, &vacuum_catalog(gens.params()))
}

pub fn verify_cartan_kac_serre(set: &ChevalleySet) -> Vec<RelationReport> {
    check_chevalley(set, &chevalley_catalog(set.params()))
}

/// Defining, derived and vacuum relations in one report.
pub fn verify_all<R: Realization>(real: &R, gens: &Generators<R::S>) -> VerifyReport {
    let mut report = VerifyReport::new(*gens.params(), real.mode());
    report.extend(verify_defining(real, gens));
    report.extend(verify_derived(real, gens));
    report.extend(verify_vacuum(real, gens));
    report
}

/// Largest residual over the non-skipped reports.
pub fn max_residual(reports: &[RelationReport]) -> f64 {
    reports
        .iter()
        .filter(|r| r.status != Status::Skipped)
        .map(|r| r.max_residual)
        .fold(0.0, f64::max)
}

/// Convenience: exact generators realized in `real`.
pub fn realize_for<R: Realization>(real: &R, params: FockParams) -> Result<Generators<R::S>> {
    Generators::exact(params)?.realize(real)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{Exact, Numeric};
    use crate::relations::reconstruct_chevalley;
    use crate::qarith::parse_rational;

    fn exact(n: usize, m: usize, p: usize) -> Generators<crate::qarith::LaurentPoly> {
        Generators::exact(FockParams::new(n, m, p).unwrap()).unwrap()
    }

    #[test]
    fn small_case_passes_exactly() {
        let report = verify_all(&Exact, &exact(1, 1, 2));
        assert!(report.all_passed(), "{:#}", report.to_json());
        let j = report.to_json();
        assert_eq!(j["summary"]["failed"], 0);
        assert_eq!(j["mode"], "exact");
    }

    #[test]
    fn numeric_normalized_passes() {
        let params = FockParams::new(2, 1, 2).unwrap();
        let gens = Generators::normalized_numeric(params, 0.7).unwrap();
        let real = Numeric::new(0.7, 1e-10).unwrap();
        let report = verify_all(&real, &gens);
        assert!(report.all_passed(), "{:#}", report.to_json());
    }

    #[test]
    fn broken_generator_is_reported_with_residual() {
        let g = exact(1, 1, 2);
        let two = crate::qarith::LaurentPoly::from_int(2);
        let broken = g.map(|v| Ok(crate::qarith::Scalar::mul(v, &two))).unwrap();
        let reports = verify_defining(&Exact, &broken);
        let bad: Vec<_> = reports.iter().filter(|r| r.status == Status::Fail).collect();
        assert!(!bad.is_empty());
        assert!(bad[0].residual.is_some());
        assert!(bad[0].to_json()["residual"].is_array());
    }

    #[test]
    fn chevalley_relations_pass_at_sample() {
        let set = reconstruct_chevalley(&exact(1, 2, 2), &parse_rational("2/3").unwrap()).unwrap();
        let reports = verify_cartan_kac_serre(&set);
        assert!(reports.iter().all(|r| r.status != Status::Fail));
        assert!(reports.iter().any(|r| r.id.tag == "2c" && r.status == Status::Pass));
    }

    #[test]
    fn p_zero_is_flagged() {
        let report = verify_all(&Exact, &exact(1, 1, 0));
        assert!(report.all_passed());
        assert_eq!(report.notes.len(), 1);
    }
}

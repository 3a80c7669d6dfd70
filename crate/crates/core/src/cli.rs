//! Command-line front end. [`run`] takes the argument vector and two output
//! streams and returns the process exit code: 0 when every check passes,
//! 1 when a relation fails (the report is still written), 2 on usage errors.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exprlang::{parse, parse_catalog, parse_expr, EvalContext, Identity, Parsed};
use crate::fockspace::{FockBasis, FockParams};
use crate::operators::hamiltonian::free_hamiltonian;
use crate::operators::{matrix_to_json, Exact, Generators, Mode, Numeric, OperatorMatrix, Realization};
use crate::qarith::{parse_rational, LaurentPoly, Rational, Scalar};
use crate::relations::{
    cartan_matrix, reconstruct_chevalley, verify_all, verify_cartan_kac_serre, ChevalleySet, RelationId,
    RelationReport, Status, VerifyReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Samples used by `--chevalley` when no list is given.
pub const DEFAULT_SAMPLES: &str = "2/3,3/5,7/4";

#[derive(Debug, Parser)]
#[command(name = "uqfock", version, about = "Exact Fock representations of U_q[sl(n+1|m)] and relation checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the occupation-number basis.
    Basis(Common),
    /// Dimension of the Fock space.
    Dim(Common),
    /// Matrix of an operator expression, e.g. "Ap(1)" or "scomm(Am(1), Ap(1))".
    Matrix {
        #[command(flatten)]
        common: Common,
        expression: String,
    },
    /// Check every defining, derived and vacuum relation.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Also reconstruct the Chevalley generators at these rational samples
        /// and check the Cartan-Kac and Serre relations.
        #[arg(long, num_args = 0..=1, default_missing_value = DEFAULT_SAMPLES, value_name = "SAMPLES")]
        chevalley: Option<String>,
    },
    /// Check one identity, or every identity of a catalog file.
    Check {
        #[command(flatten)]
        common: Common,
        identity: Option<String>,
        #[arg(long, value_name = "FILE")]
        catalog: Option<std::path::PathBuf>,
    },
    /// Reconstruct the Chevalley generators at rational samples.
    Chevalley {
        #[command(flatten)]
        common: Common,
        #[arg(long, num_args = 0..=1, default_value = DEFAULT_SAMPLES, default_missing_value = DEFAULT_SAMPLES, value_name = "SAMPLES")]
        chevalley: String,
    },
    /// Free Hamiltonian at q = 1 (requires n = m): spectrum and ladder checks.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Comma-separated single-particle energies, one per orbital.
        #[arg(long, value_name = "E1,E2,...")]
        energies: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutArg {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Number of even creation/annihilation pairs; the algebra is U_q[sl(n+1|m)]
    #[arg(long)]
    n: Option<usize>,
    /// Number of odd pairs
    #[arg(long)]
    m: Option<usize>,
    /// Order of statistics (maximal total occupation)
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Value of q: a rational "a/b" or a decimal.
    #[arg(long)]
    q: Option<String>,
    /// Absolute tolerance for numeric comparisons
    #[arg(long, default_value_t = Numeric::DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = OutArg::Json)]
    out: OutArg,
}

impl Common {
    fn params(&self) -> Result<FockParams> {
        match (self.n, self.m, self.p) {
            (Some(n), Some(m), Some(p)) => FockParams::new(n, m, p),
            _ => Err(Error::InvalidParams("--n, --m and --p are required".into())),
        }
    }

    fn numeric(&self) -> Result<Numeric> {
        let q = self
            .q
            .as_deref()
            .ok_or_else(|| Error::InvalidParams("numeric mode needs --q".into()))?;
        Numeric::new(crate::qarith::rational_to_f64(&parse_rational(q)?), self.tol)
    }

    fn sample(&self) -> Result<Rational> {
        let q = self
            .q
            .as_deref()
            .ok_or_else(|| Error::InvalidParams("Chevalley atoms need a rational --q".into()))?;
        parse_rational(q)
    }
}

fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|s| parse_rational(s.trim())).collect()
}

/// Failure from a subcommand: a usage problem (exit 2) or a write error.
enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(format!("{e} [{}]", e.code()))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Basis(c) => basis(&c, out),
        Command::Dim(c) => dim(&c, out),
        Command::Matrix { common, expression } => matrix(&common, &expression, out),
        Command::Verify { common, chevalley } => verify(&common, chevalley.as_deref(), out),
        Command::Check {
            common,
            identity,
            catalog,
        } => check(&common, identity.as_deref(), catalog.as_deref(), out),
        Command::Chevalley { common, chevalley } => chevalley_cmd(&common, &chevalley, out),
        Command::Spectrum { common, energies } => spectrum(&common, &energies, out),
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))
}

fn state_text(basis: &FockBasis, k: usize) -> String {
    let r = &basis.state(k).0;
    format!("({})", r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn basis(c: &Common, out: &mut dyn Write) -> Outcome {
    let b = FockBasis::enumerate(c.params()?)?;
    match c.out {
        OutArg::Json => emit_json(out, &b.to_json())?,
        OutArg::Csv => {
            let r = b.params().rank();
            let header: Vec<String> = (1..=r).map(|i| format!("r{i}")).collect();
            writeln!(out, "index,{}", header.join(","))?;
            for (k, s) in b.states().iter().enumerate() {
                let cols: Vec<String> = s.0.iter().map(u32::to_string).collect();
                writeln!(out, "{k},{}", cols.join(","))?;
            }
        }
        OutArg::Text => {
            for k in 0..b.dim() {
                writeln!(out, "{k:>4}  {}", state_text(&b, k))?;
            }
        }
    }
    Ok(EXIT_PASS)
}

fn dim(c: &Common, out: &mut dyn Write) -> Outcome {
    let b = FockBasis::enumerate(c.params()?)?;
    match c.out {
        OutArg::Csv => writeln!(out, "dim\n{}", b.dim())?,
        _ => writeln!(out, "{}", b.dim())?,
    }
    Ok(EXIT_PASS)
}

fn write_matrix<S: Scalar>(op: &OperatorMatrix<S>, mode: &Mode, fmt: OutArg, out: &mut dyn Write) -> std::io::Result<()> {
    let plain = |v: &S| match v.to_json() {
        Value::String(s) => s,
        other => other.to_string(),
    };
    match fmt {
        OutArg::Json => emit_json(out, &matrix_to_json(op, mode)),
        OutArg::Csv => {
            writeln!(out, "row,col,value")?;
            for (r, c, v) in op.matrix.iter() {
                writeln!(out, "{r},{c},\"{}\"", plain(v))?;
            }
            Ok(())
        }
        OutArg::Text => {
            let grade = op.grade.map_or("mixed".to_string(), |g| g.to_string());
            writeln!(out, "{} (grade {grade}, dim {})", op.label, op.matrix.dim())?;
            for (r, c, v) in op.matrix.iter() {
                let b = op.basis();
                writeln!(out, "  {} <- {}: {}", state_text(b, r), state_text(b, c), plain(v))?;
            }
            Ok(())
        }
    }
}

fn matrix(c: &Common, text: &str, out: &mut dyn Write) -> Outcome {
    let params = c.params()?;
    let expr = parse_expr(text)?;
    let label = expr.to_string();
    if expr.uses_chevalley() {
        let set = chevalley_set(params, &c.sample()?)?;
        let ctx = EvalContext::with_chevalley(&set);
        let m = ctx.eval_matrix(&expr)?.with_label(label);
        write_matrix(&m, &set.sample().mode(), c.out, out)?;
        return Ok(EXIT_PASS);
    }
    match c.mode {
        ModeArg::Exact => {
            let gens = Generators::exact(params)?;
            let m = EvalContext::new(&Exact, &gens).eval_matrix(&expr)?.with_label(label);
            write_matrix(&m, &Mode::Exact, c.out, out)?;
        }
        ModeArg::Numeric => {
            let real = c.numeric()?;
            let gens = Generators::normalized_numeric(params, real.q0())?;
            let m = EvalContext::new(&real, &gens).eval_matrix(&expr)?.with_label(label);
            write_matrix(&m, &real.mode(), c.out, out)?;
        }
    }
    Ok(EXIT_PASS)
}

fn chevalley_set(params: FockParams, q0: &Rational) -> Result<ChevalleySet> {
    reconstruct_chevalley(&Generators::exact(params)?, q0)
}

fn reconstruction_failure(q0: &Rational, e: &Error) -> RelationReport {
    let mut r = RelationReport::error(RelationId::new("chevalley", vec![]), Mode::Sample(q0.clone()), e);
    r.max_residual = 0.0;
    r
}

fn verify(c: &Common, samples: Option<&str>, out: &mut dyn Write) -> Outcome {
    let params = c.params()?;
    let samples = samples.map(parse_list).transpose()?;
    let mut report = match c.mode {
        ModeArg::Exact => verify_all(&Exact, &Generators::exact(params)?),
        ModeArg::Numeric => {
            let real = c.numeric()?;
            verify_all(&real, &Generators::normalized_numeric(params, real.q0())?)
        }
    };
    if let Some(samples) = samples {
        let exact = Generators::<LaurentPoly>::exact(params)?;
        for q0 in samples {
            match reconstruct_chevalley(&exact, &q0) {
                Ok(set) => report.extend(verify_cartan_kac_serre(&set)),
                Err(e @ (Error::Underdetermined(..) | Error::Inconsistent(_))) => {
                    report.extend([reconstruction_failure(&q0, &e)])
                }
                Err(e) => return Err(e.into()),
            }
        }
        report.notes.push("Chevalley relations are checked exactly at each rational sample".into());
    }
    write_report(&report, c.out, out)?;
    Ok(if report.all_passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn write_report(report: &VerifyReport, fmt: OutArg, out: &mut dyn Write) -> std::io::Result<()> {
    match fmt {
        OutArg::Json => emit_json(out, &report.to_json()),
        OutArg::Csv => {
            writeln!(out, "id,indices,status,q0,max_residual")?;
            for r in &report.relations {
                let q0 = match &r.mode {
                    Mode::Exact => String::new(),
                    Mode::Sample(q) => q.to_string(),
                    Mode::Numeric { q0, .. } => q0.to_string(),
                };
                let idx: Vec<String> = r.id.indices.iter().map(i64::to_string).collect();
                writeln!(out, "{},\"{}\",{},{q0},{}", r.id.tag, idx.join(" "), r.status.as_str(), r.max_residual)?;
            }
            Ok(())
        }
        OutArg::Text => {
            let mut text = String::new();
            for r in &report.relations {
                let _ = write!(text, "{:<5} {:<10} {}", r.status.as_str(), r.id.tag, fmt_indices(&r.id.indices));
                if let Mode::Sample(q) = &r.mode {
                    let _ = write!(text, "  q0={q}");
                }
                if let Some(m) = &r.message {
                    let _ = write!(text, "  ({m})");
                }
                text.push('\n');
            }
            for n in &report.notes {
                let _ = writeln!(text, "note: {n}");
            }
            let _ = writeln!(
                text,
                "total {}  passed {}  failed {}  skipped {}",
                report.relations.len(),
                report.count(Status::Pass),
                report.failed(),
                report.count(Status::Skipped)
            );
            out.write_all(text.as_bytes())
        }
    }
}

fn fmt_indices(idx: &[i64]) -> String {
    format!("[{}]", idx.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

struct CheckItem {
    source: String,
    identity: Identity,
}

fn check(c: &Common, identity: Option<&str>, catalog: Option<&std::path::Path>, out: &mut dyn Write) -> Outcome {
    let (params, items) = match (identity, catalog) {
        (Some(text), None) => {
            let identity = match parse(text)? {
                Parsed::Identity(id) => id,
                Parsed::Expr(_) => return Err(Failure::Usage("expected an identity of the form lhs == rhs".into())),
            };
            (
                c.params()?,
                vec![CheckItem {
                    source: text.to_string(),
                    identity,
                }],
            )
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let cat = parse_catalog(&text)?;
            let items = cat
                .identities
                .into_iter()
                .map(|l| CheckItem {
                    source: l.source,
                    identity: l.identity,
                })
                .collect();
            (cat.params, items)
        }
        _ => return Err(Failure::Usage("give exactly one of an identity or --catalog".into())),
    };
    let uses_chevalley = items
        .iter()
        .any(|it| it.identity.lhs.uses_chevalley() || it.identity.rhs.uses_chevalley());
    let (mode, reports) = if uses_chevalley {
        let set = chevalley_set(params, &c.sample()?)?;
        let ctx = EvalContext::with_chevalley(&set);
        (set.sample().mode(), check_all(&ctx, &items)?)
    } else {
        match c.mode {
            ModeArg::Exact => {
                let gens = Generators::exact(params)?;
                (Mode::Exact, check_all(&EvalContext::new(&Exact, &gens), &items)?)
            }
            ModeArg::Numeric => {
                let real = c.numeric()?;
                let gens = Generators::normalized_numeric(params, real.q0())?;
                (real.mode(), check_all(&EvalContext::new(&real, &gens), &items)?)
            }
        }
    };
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    match c.out {
        OutArg::Json => {
            let results: Vec<Value> = items
                .iter()
                .zip(&reports)
                .map(|(it, r)| {
                    let mut v = json!({
                        "identity": it.source,
                        "canonical": it.identity.to_string(),
                        "status": r.status.as_str(),
                    });
                    if r.status == Status::Fail {
                        v["max_residual"] = json!(r.max_residual);
                        v["residual"] = r.residual.clone().unwrap_or(Value::Null);
                    }
                    v
                })
                .collect();
            let mut doc = json!({
                "params": params,
                "mode": mode.name(),
                "results": results,
                "summary": {"total": reports.len(), "failed": failed},
            });
            if let Value::Object(extra) = mode.to_json() {
                for (k, v) in extra {
                    if k != "mode" {
                        doc[k] = v;
                    }
                }
            }
            emit_json(out, &doc)?;
        }
        OutArg::Csv => {
            writeln!(out, "identity,status,max_residual")?;
            for (it, r) in items.iter().zip(&reports) {
                writeln!(out, "\"{}\",{},{}", it.source, r.status.as_str(), r.max_residual)?;
            }
        }
        OutArg::Text => {
            for (it, r) in items.iter().zip(&reports) {
                writeln!(out, "{:<5} {}", r.status.as_str(), it.identity)?;
            }
        }
    }
    Ok(if failed == 0 { EXIT_PASS } else { EXIT_FAIL })
}

fn check_all<R: Realization>(ctx: &EvalContext<'_, R>, items: &[CheckItem]) -> Result<Vec<RelationReport>> {
    items
        .iter()
        .map(|it| ctx.check_as(RelationId::new("dsl", vec![]), &it.identity))
        .collect()
}

fn chevalley_cmd(c: &Common, samples: &str, out: &mut dyn Write) -> Outcome {
    let params = c.params()?;
    let exact = Generators::<LaurentPoly>::exact(params)?;
    let mut sets = Vec::new();
    for q0 in parse_list(samples)? {
        sets.push(reconstruct_chevalley(&exact, &q0)?);
    }
    match c.out {
        OutArg::Json => emit_json(
            out,
            &json!({
                "params": params,
                "cartan_matrix": cartan_matrix(&params),
                "samples": sets.iter().map(ChevalleySet::to_json).collect::<Vec<_>>(),
            }),
        )?,
        OutArg::Csv => {
            writeln!(out, "q0,generator,row,col,value")?;
            for set in &sets {
                for (name, family) in [("h", 0), ("e", 1), ("f", 2)] {
                    for i in 1..=params.rank() {
                        let m = match family {
                            0 => set.h(i)?,
                            1 => set.e(i)?,
                            _ => set.f(i)?,
                        };
                        for (r, col, v) in m.matrix.iter() {
                            writeln!(out, "{},{name}_{i},{r},{col},{v}", set.q0())?;
                        }
                    }
                }
            }
        }
        OutArg::Text => {
            writeln!(out, "Cartan matrix: {:?}", cartan_matrix(&params))?;
            for set in &sets {
                let nnz = |f: &dyn Fn(usize) -> Result<usize>| -> Result<Vec<usize>> { (1..=params.rank()).map(f).collect() };
                writeln!(
                    out,
                    "q0 = {}: e nonzeros {:?}, f nonzeros {:?}",
                    set.q0(),
                    nnz(&|i| Ok(set.e(i)?.matrix.nnz()))?,
                    nnz(&|i| Ok(set.f(i)?.matrix.nnz()))?
                )?;
            }
        }
    }
    Ok(EXIT_PASS)
}

fn spectrum(c: &Common, energies: &str, out: &mut dyn Write) -> Outcome {
    let params = c.params()?;
    let energies = parse_list(energies)?;
    let h = free_hamiltonian(&Generators::exact(params)?, &energies)?;
    match c.out {
        OutArg::Json => emit_json(out, &h.to_json())?,
        OutArg::Csv => {
            writeln!(out, "index,state,energy")?;
            let b = h.matrix.basis();
            for (k, e) in h.spectrum.iter().enumerate() {
                writeln!(out, "{k},\"{}\",{e}", state_text(b, k))?;
            }
        }
        OutArg::Text => {
            let b = h.matrix.basis();
            for (k, e) in h.spectrum.iter().enumerate() {
                writeln!(out, "{}  E = {e}", state_text(b, k))?;
            }
            for l in &h.ladder {
                let status = if l.pass { "pass" } else { "fail" };
                writeln!(out, "{status:<5} [H, {}{}_{}]", l.species, l.ladder.symbol(), l.orbital)?;
            }
        }
    }
    Ok(if h.ladder_passes() { EXIT_PASS } else { EXIT_FAIL })
}

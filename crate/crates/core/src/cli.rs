//! Command-line front end.
//!
//! Exit codes: 0 for a true verdict or plain success, 1 for a definite
//! mathematical "no", 2 for bad input. A batch exits 2 if any input is bad,
//! otherwise 1 if any verdict is false.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::groupact::{group_closure, integral_character, skew_integral_invariants, skew_is_cy, DEFAULT_CAP};
use crate::homology::{betti_numbers, ce_chain_complex, is_cy_universal, CyReport, CyRoutes, Witness};
use crate::lie::{classify_cy3, LieAlgebra, LieError};
use crate::potential::{cyclic_derivative, verify_potential};
use crate::problem::{
    catalog_cases, catalog_cases_from_dir, catalog_file, catalog_names, catalog_text, Problem, ProblemFile, Query,
};
use crate::selftest::run_selftest;
use crate::sridharan::{
    build_sridharan, is_cy_sridharan, xi_automorphism, zeta_dualizing_automorphism, SridharanAlgebra, TwoCocycle,
};

#[derive(Debug, Parser)]
#[command(
    name = "cyalg",
    version,
    about = "Exact Calabi-Yau checks for Lie, Sridharan and skew group algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write all reports as a JSON array to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Largest group order the closure may reach.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    /// Worker threads for batches of inputs.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate inputs and answer their `query` (default: is U(g) CY).
    Check {
        #[arg(required = true, value_name = "INPUT")]
        inputs: Vec<String>,
    },
    /// Classify a unimodular 3-dimensional Lie algebra.
    Classify {
        #[arg(required = true, value_name = "INPUT")]
        inputs: Vec<String>,
    },
    /// Chevalley-Eilenberg Betti numbers.
    Homology {
        #[arg(required = true, value_name = "INPUT")]
        inputs: Vec<String>,
    },
    /// Build U_f(g), decide CY and normalize requested elements.
    Sridharan {
        #[arg(required = true, value_name = "INPUT")]
        inputs: Vec<String>,
    },
    /// Decide CY for U(g) # kG and compute the integral invariant.
    Skew {
        #[arg(required = true, value_name = "INPUT")]
        inputs: Vec<String>,
    },
    /// Check that a potential's cyclic derivatives present the algebra.
    Potential {
        #[arg(required = true, value_name = "INPUT")]
        inputs: Vec<String>,
    },
    /// List catalog entries, print them, or copy them to a directory.
    Catalog {
        names: Vec<String>,
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
    /// Run the release checks.
    Selftest {
        /// Read case1.json .. case7.json from this directory instead of the built-in catalog.
        #[arg(long, value_name = "DIR")]
        catalog_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub input: String,
    pub query: String,
    pub verdict: Option<bool>,
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routes: Option<CyRoutes>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub data: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Data keys left out of the human text.
    #[serde(skip)]
    pub json_only: Vec<String>,
}

impl Report {
    fn new(input: &str, query: &str) -> Self {
        Self {
            input: input.to_string(),
            query: query.to_string(),
            verdict: None,
            dimension: None,
            routes: None,
            witness: None,
            data: Map::new(),
            error: None,
            json_only: Vec::new(),
        }
    }

    fn failed(input: &str, query: &str, error: impl ToString) -> Self {
        let mut r = Self::new(input, query);
        r.error = Some(error.to_string());
        r
    }

    fn with_cy(mut self, cy: &CyReport) -> Self {
        self.verdict = Some(cy.verdict);
        self.dimension = cy.dimension;
        self.routes = Some(cy.routes);
        self.witness = cy.witness.clone();
        if let Some(v) = cy.cocycle_validated {
            self.data.insert("cocycle_validated".into(), json!(v));
        }
        if let Some(v) = cy.group_in_sl {
            self.data.insert("group_in_sl".into(), json!(v));
        }
        self
    }

    fn put(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(
            key.to_string(),
            serde_json::to_value(value).expect("report data serializes"),
        );
    }

    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            2
        } else if self.verdict == Some(false) {
            1
        } else {
            0
        }
    }

    pub fn human(&self) -> String {
        let mut out = format!("{} [{}]", self.input, self.query);
        if let Some(e) = &self.error {
            out.push_str(&format!("\n  error: {e}"));
            return out;
        }
        if let Some(v) = self.verdict {
            out.push_str(&format!("\n  verdict: {v}"));
        }
        if let Some(d) = self.dimension {
            out.push_str(&format!("\n  dimension: {d}"));
        }
        if let Some(r) = &self.routes {
            out.push_str(&format!(
                "\n  routes: trace={} top-differential-zero={} top-cohomology-nonzero={}",
                r.trace_condition, r.top_differential_zero, r.top_homology_nonzero
            ));
        }
        if let Some(w) = &self.witness {
            let text = match w {
                Witness::Trace(t) => format!("tr ad({}) = {}", t.name, t.trace),
                Witness::Determinant { element, determinant } => format!("det(g{element}) = {determinant}"),
            };
            out.push_str(&format!("\n  witness: {text}"));
        }
        for (k, v) in self.data.iter().filter(|(k, _)| !self.json_only.contains(k)) {
            match v {
                Value::String(s) if s.contains('\n') => {
                    out.push_str(&format!("\n  {k}:"));
                    for line in s.lines() {
                        out.push_str(&format!("\n    {line}"));
                    }
                }
                Value::String(s) => out.push_str(&format!("\n  {k}: {s}")),
                other => out.push_str(&format!("\n  {k}: {other}")),
            }
        }
        out
    }
}

/// Result of one invocation: exit code, reports, and the text for each stream.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub code: i32,
    pub reports: Vec<Report>,
    pub stdout: String,
    pub stderr: String,
}

pub fn batch_exit_code(reports: &[Report]) -> i32 {
    reports.iter().map(Report::exit_code).fold(0, |acc, c| match (acc, c) {
        (2, _) | (_, 2) => 2,
        (1, _) | (_, 1) => 1,
        _ => 0,
    })
}

pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return RunOutput {
                code,
                reports: Vec::new(),
                stdout,
                stderr,
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> RunOutput {
    let reports = match &cli.command {
        Command::Check { inputs } => batch(cli, inputs, None),
        Command::Classify { inputs } => batch(cli, inputs, Some(Query::Classify)),
        Command::Homology { inputs } => batch(cli, inputs, Some(Query::Homology)),
        Command::Sridharan { inputs } => batch(cli, inputs, Some(Query::SridharanCy)),
        Command::Skew { inputs } => batch(cli, inputs, Some(Query::SkewCy)),
        Command::Potential { inputs } => batch(cli, inputs, Some(Query::PotentialVerify)),
        Command::Catalog { names, export } => catalog_command(names, export.as_deref()),
        Command::Selftest { catalog_dir } => vec![selftest_command(catalog_dir.as_deref())],
    };
    let mut code = batch_exit_code(&reports);
    let stdout = reports.iter().map(|r| r.human() + "\n").collect();
    let mut stderr = String::new();
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        if let Err(e) = std::fs::write(path, text + "\n") {
            stderr = format!("cannot write {}: {e}\n", path.display());
            code = 2;
        }
    }
    RunOutput {
        code,
        reports,
        stdout,
        stderr,
    }
}

fn batch(cli: &Cli, inputs: &[String], query: Option<Query>) -> Vec<Report> {
    let work = |input: &String| guarded(input, query, || answer(input, query, cli.cap));
    if cli.jobs <= 1 || inputs.len() <= 1 {
        return inputs.iter().map(work).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool.install(|| inputs.par_iter().map(work).collect()),
        Err(_) => inputs.iter().map(work).collect(),
    }
}

fn guarded(input: &str, query: Option<Query>, f: impl FnOnce() -> Report) -> Report {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Report::failed(input, query_label(query), format!("internal error: {msg}"))
    })
}

pub fn query_label(q: Option<Query>) -> &'static str {
    match q {
        None | Some(Query::CheckLie) => "check-lie",
        Some(Query::Classify) => "classify",
        Some(Query::Homology) => "homology",
        Some(Query::SridharanCy) => "sridharan-cy",
        Some(Query::SkewCy) => "skew-cy",
        Some(Query::IntegralInvariants) => "integral-invariants",
        Some(Query::PotentialVerify) => "potential-verify",
    }
}

/// `catalog:NAME` or a file path.
pub fn load_input(input: &str) -> Result<ProblemFile, String> {
    match input.strip_prefix("catalog:") {
        Some(name) => catalog_file(name).map_err(|e| e.to_string()),
        None => ProblemFile::from_path(Path::new(input)).map_err(|e| e.to_string()),
    }
}

fn answer(input: &str, forced: Option<Query>, cap: Option<usize>) -> Report {
    let file = match load_input(input) {
        Ok(f) => f,
        Err(e) => return Report::failed(input, query_label(forced), e),
    };
    let query = forced.or(file.query);
    let label = query_label(query);
    let problem = match file.resolve() {
        Ok(p) => p,
        Err(e) => return Report::failed(input, label, e),
    };
    let report = Report::new(input, label);
    let result = match query.unwrap_or(Query::CheckLie) {
        Query::CheckLie => check_lie(report, &problem),
        Query::Classify => classify(report, &problem),
        Query::Homology => homology(report, &problem),
        Query::SridharanCy => sridharan(report, &problem),
        Query::SkewCy => skew(report, &problem, cap, true),
        Query::IntegralInvariants => skew(report, &problem, cap, false),
        Query::PotentialVerify => potential(report, &problem),
    };
    result.unwrap_or_else(|e| Report::failed(input, label, e))
}

fn need_lie(p: &Problem) -> Result<&LieAlgebra, String> {
    p.lie.as_ref().ok_or_else(|| "missing section \"lie\"".to_string())
}

fn need_algebra(p: &Problem) -> Result<SridharanAlgebra, String> {
    let lie = need_lie(p)?;
    let f = p.cocycle2.clone().unwrap_or_else(|| TwoCocycle::zero(lie.dim()));
    build_sridharan(lie, &f).map_err(|e| format!("cocycle2: {e}"))
}

fn check_lie(report: Report, p: &Problem) -> Result<Report, String> {
    let lie = need_lie(p)?;
    let mut r = report.with_cy(&is_cy_universal(lie));
    r.put("lie_dimension", lie.dim());
    r.put("trace_form", lie.trace_form());
    Ok(r)
}

fn classify(mut report: Report, p: &Problem) -> Result<Report, String> {
    let lie = need_lie(p)?;
    match classify_cy3(lie) {
        Ok(class) => {
            report.verdict = Some(true);
            report.dimension = Some(3);
            report.put("class", class);
        }
        Err(LieError::NotUnimodular { index, name, trace }) => {
            report.verdict = Some(false);
            report.witness = Some(Witness::Trace(crate::lie::TraceWitness { index, name, trace }));
        }
        Err(e) => return Err(format!("lie: {e}")),
    }
    report.put("derived_dimension", lie.derived_dimension());
    Ok(report)
}

fn homology(mut report: Report, p: &Problem) -> Result<Report, String> {
    let lie = need_lie(p)?;
    let complex = ce_chain_complex(lie);
    report.put("betti", betti_numbers(lie));
    report.put("cohomology", complex.cohomology_dims());
    Ok(report)
}

fn sridharan(report: Report, p: &Problem) -> Result<Report, String> {
    let a = need_algebra(p)?;
    let cy = is_cy_sridharan(a.lie(), a.cocycle()).map_err(|e| e.to_string())?;
    let mut r = report.with_cy(&cy);
    let names = a.lie().names().to_vec();
    let relations: Vec<String> = a
        .relations()
        .iter()
        .map(|q| q.display_with(&names).to_string())
        .collect();
    r.put("relations", relations);
    r.put("overlaps_checked", a.certificate().overlaps_checked);
    let zeta = zeta_dualizing_automorphism(&a).map_err(|e| e.to_string())?;
    r.put("zeta_shift", &zeta.shift);
    r.put("zeta_is_identity", zeta.is_identity());
    if let Some(h) = &p.cocycle1 {
        let xi = xi_automorphism(&a, h).map_err(|e| format!("cocycle1: {e}"))?;
        r.put("xi_shift", &xi.shift);
    }
    if !p.normalize.is_empty() {
        let forms: Vec<Value> = p
            .normalize
            .iter()
            .map(|q| {
                json!({
                    "input": q.display_with(&names).to_string(),
                    "normal_form": a.normal_form(q).display_with(&names).to_string(),
                })
            })
            .collect();
        r.put("normal_forms", forms);
    }
    Ok(r)
}

fn skew(mut report: Report, p: &Problem, cap: Option<usize>, decide: bool) -> Result<Report, String> {
    let lie = need_lie(p)?;
    let gens = p.group_generators.as_ref().ok_or("missing section \"group\"")?;
    let cap = cap.or(p.cap).unwrap_or(DEFAULT_CAP);
    let g = group_closure(gens, cap).map_err(|e| format!("group: {e}"))?;
    if decide {
        let cy = skew_is_cy(lie, &g).map_err(|e| format!("group: {e}"))?;
        report = report.with_cy(&cy);
    }
    let chi = integral_character(lie, &g).map_err(|e| format!("group: {e}"))?;
    report.put("group_order", g.order());
    report.put("character", &chi.values);
    report.put(
        "invariant",
        skew_integral_invariants(lie, &g).map_err(|e| format!("group: {e}"))?,
    );
    Ok(report)
}

fn potential(mut report: Report, p: &Problem) -> Result<Report, String> {
    let a = need_algebra(p)?;
    let phi = p.potential.as_ref().ok_or("missing section \"potential\"")?;
    let ok = verify_potential(phi, &a).map_err(|e| format!("potential: {e}"))?;
    let names = a.lie().names().to_vec();
    let derivatives: Map<String, Value> = (0..a.dim())
        .map(|i| {
            (
                names[i].clone(),
                json!(cyclic_derivative(phi, i).display_with(&names).to_string()),
            )
        })
        .collect();
    report.verdict = Some(ok);
    report.put("derivatives", derivatives);
    Ok(report)
}

fn catalog_command(names: &[String], export: Option<&Path>) -> Vec<Report> {
    let selected: Vec<String> = if names.is_empty() {
        catalog_names().map(str::to_string).collect()
    } else {
        names
            .iter()
            .map(|n| n.strip_prefix("catalog:").unwrap_or(n).to_string())
            .collect()
    };
    selected
        .iter()
        .map(|name| {
            let input = format!("catalog:{name}");
            let text = match catalog_text(name) {
                Ok(t) => t,
                Err(e) => return Report::failed(&input, "catalog", e),
            };
            let mut r = Report::new(&input, "catalog");
            if let Some(dir) = export {
                let path = dir.join(format!("{name}.json"));
                if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, text)) {
                    return Report::failed(&input, "catalog", format!("{}: {e}", path.display()));
                }
                r.put("written", path.display().to_string());
            } else if !names.is_empty() {
                r.put("file", text.trim_end());
            } else if let Ok(file) = catalog_file(name) {
                if let Some(lie) = &file.lie {
                    r.put("dim", lie.dim);
                }
                r.put("query", query_label(file.query));
            }
            r
        })
        .collect()
}

fn selftest_command(dir: Option<&Path>) -> Report {
    let cases = match dir {
        Some(d) => match catalog_cases_from_dir(d) {
            Ok(c) => c,
            Err(e) => return Report::failed(&d.display().to_string(), "selftest", e),
        },
        None => catalog_cases(),
    };
    let input = dir.map_or("catalog".to_string(), |d| d.display().to_string());
    let result = run_selftest(&cases);
    let mut r = Report::new(&input, "selftest");
    r.verdict = Some(result.passed());
    r.put(
        "summary",
        result.items.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n"),
    );
    r.put("items", &result.items);
    r.json_only.push("items".into());
    r.put("total_millis", result.total_millis);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> RunOutput {
        run(std::iter::once("cyalg").chain(args.iter().copied()))
    }

    #[test]
    fn classify_heisenberg() {
        let out = run_args(&["classify", "catalog:heisenberg"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.reports[0].data["class"], json!("HEISENBERG"));
    }

    #[test]
    fn potential_case1() {
        let out = run_args(&["potential", "catalog:case1"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert_eq!(out.reports[0].verdict, Some(true));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).code, 2);
        assert_eq!(run_args(&["check"]).code, 2);
        assert_eq!(run_args(&["check", "catalog:nope"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn batch_codes_combine() {
        assert_eq!(run_args(&["check", "catalog:sl2", "catalog:solvable3b"]).code, 1);
        assert_eq!(run_args(&["check", "catalog:solvable3b", "catalog:missing"]).code, 2);
    }
}

mod args;
mod load;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use hamop::catalog::Catalog;
use hamop::exterior::solve_phi;
use hamop::monge::MongeMetric;
use hamop::pipeline::{check_entry, check_system, matrix_strings, run_pipeline, singular_summary, Verdict};
use hamop::segre::{classify_n3, ClassLabel};
use hamop::verify::{check_killing, check_nonlinear, check_potemin_system, curvature, Check};
use hamop::Error;

use args::{CatalogCommand, CheckKind, Cli, Command, Param};

/// What a verb produced: the pass flag plus a JSON result and its text rendering.
struct Outcome {
    passed: bool,
    inputs: Value,
    result: Value,
    text: Vec<String>,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownCatalogId(_)
            | Error::UnknownVariable(_)
            | Error::Io(_)
            | Error::Invalid(_)
            | Error::Parametric(_)
            | Error::DimensionMismatch(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

// A closed pipe (`hamop ... | head`) is not an error worth a panic.
macro_rules! out {
    ($($t:tt)*) => {
        let _ = writeln!(std::io::stdout(), $($t)*);
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let command = cli.command.name();
    match run(&cli.command) {
        Ok(out) => {
            let elapsed = start.elapsed().as_millis();
            if cli.json {
                let mut v = json!({
                    "command": command,
                    "inputs": out.inputs,
                    "passed": out.passed,
                    "result": out.result,
                });
                if cli.timings {
                    v["elapsed_ms"] = json!(elapsed);
                }
                out!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                for line in &out.text {
                    out!("{line}");
                }
                if cli.timings {
                    out!("elapsed: {elapsed} ms");
                }
                out!("{}", if out.passed { "PASS" } else { "FAIL" });
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            if cli.json {
                let v = json!({ "command": command, "passed": false, "error": msg });
                out!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                out!("error: {msg}");
                out!("FAIL");
            }
            ExitCode::from(1)
        }
    }
}

fn run(cmd: &Command) -> Result<Outcome, Failure> {
    let catalog = Catalog::load()?;
    match cmd {
        Command::Verify { metric, param, checks } => verify(&catalog, metric, param, checks),
        Command::Classify { metric, param } => classify(&catalog, metric, param),
        Command::SolvePhi { subspace, param } => solve(&catalog, subspace, param),
        Command::Singular { metric, param } => singular(&catalog, metric, param),
        Command::Pipeline { subspace, param } => pipeline(&catalog, subspace, param),
        Command::HydroCheck { system, param } => hydro(&catalog, system, param),
        Command::Catalog { command } => match command {
            CatalogCommand::List => Ok(list(&catalog)),
            CatalogCommand::Show { id } => show(&catalog, id),
            CatalogCommand::Check { id } => self_check(&catalog, id.as_deref()),
        },
    }
}

fn inputs(source: &str, params: &[Param]) -> Value {
    json!({ "source": source, "params": params.iter().map(Param::to_string).collect::<Vec<_>>() })
}

fn metric_lines(g: &MongeMetric) -> Vec<String> {
    let mut out = vec![format!("metric (n = {}):", g.n())];
    out.extend(matrix_strings(g).iter().map(|row| format!("  [{}]", row.join(", "))));
    out
}

fn check_line(name: &str, c: &Check) -> String {
    match &c.witness {
        None => format!("{name}: {}", if c.holds { "pass" } else { "fail" }),
        Some(w) => format!("{name}: fail at {w}"),
    }
}

fn verify(catalog: &Catalog, src: &str, params: &[Param], checks: &[CheckKind]) -> Result<Outcome, Failure> {
    let g = load::metric(catalog, src, params)?;
    let all = [CheckKind::Killing, CheckKind::Nonlin, CheckKind::Potemin, CheckKind::Curvature];
    let selected: Vec<CheckKind> = if checks.is_empty() { all.to_vec() } else { checks.to_vec() };
    let mut result = serde_json::Map::new();
    let mut text = metric_lines(&g);
    let mut passed = true;
    for kind in &selected {
        match kind {
            CheckKind::Killing | CheckKind::Nonlin | CheckKind::Potemin => {
                let (name, c) = match kind {
                    CheckKind::Killing => ("killing", check_killing(&g)),
                    CheckKind::Nonlin => ("nonlinear", check_nonlinear(&g)?),
                    _ => ("potemin", check_potemin_system(&g)?),
                };
                passed &= c.holds;
                text.push(check_line(name, &c));
                result.insert(name.into(), serde_json::to_value(&c).expect("serializable"));
            }
            CheckKind::Curvature => {
                let c = curvature(&g)?;
                text.push(format!("flat: {}", c.flat));
                let mut v = json!({ "flat": c.flat });
                if let Some(cf) = c.conformally_flat {
                    text.push(format!("cotton tensor: {}", if cf { "zero" } else { "nonzero" }));
                    v["cotton_nonzero"] = json!(!cf);
                }
                result.insert("curvature".into(), v);
            }
        }
    }
    Ok(Outcome { passed, inputs: inputs(src, params), result: Value::Object(result), text })
}

fn classify(catalog: &Catalog, src: &str, params: &[Param]) -> Result<Outcome, Failure> {
    let g = load::metric(catalog, src, params)?;
    if g.is_parametric() {
        return Err(Failure::Usage(format!(
            "classification needs numeric parameters; pass --param for: {}",
            g.vars().parameters().map(|i| g.vars().name(i).to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    let c = classify_n3(&g)?;
    let label = c.label.map(|l| l.as_str()).unwrap_or("unclassified");
    let mut text = metric_lines(&g);
    if let Some(s) = &c.segre_symbol {
        text.push(format!("segre symbol: {s}"));
    }
    if let Some(s) = &c.class_symbol {
        text.push(format!("table entry: {s}"));
    }
    text.push(format!("class: {label}"));
    let passed = !matches!(c.label, None | Some(ClassLabel::Degenerate) | Some(ClassLabel::NotHamiltonian));
    Ok(Outcome { passed, inputs: inputs(src, params), result: serde_json::to_value(&c).expect("serializable"), text })
}

fn solve(catalog: &Catalog, src: &str, params: &[Param]) -> Result<Outcome, Failure> {
    let a = load::subspace(catalog, src, params)?;
    let space = solve_phi(&a)?;
    let basis: Vec<Vec<Vec<String>>> = space
        .basis
        .iter()
        .map(|phi| {
            let m = phi.matrix();
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
        })
        .collect();
    let mut text = vec![
        format!(
            "king system: {} equations, {} unknowns, rank {}",
            space.king_matrix.rows(),
            space.king_matrix.cols(),
            space.rank
        ),
        format!("phi space dimension: {}", space.dim()),
    ];
    for (k, phi) in basis.iter().enumerate() {
        text.push(format!("phi {}:", k + 1));
        text.extend(phi.iter().map(|row| format!("  [{}]", row.join(", "))));
    }
    let result = json!({ "n": a.n(), "rank": space.rank, "dim": space.dim(), "basis": basis });
    Ok(Outcome { passed: true, inputs: inputs(src, params), result, text })
}

fn singular(catalog: &Catalog, src: &str, params: &[Param]) -> Result<Outcome, Failure> {
    let g = load::metric(catalog, src, params)?;
    let mut text = metric_lines(&g);
    let (passed, result) = match singular_summary(&g) {
        Ok(s) => {
            text.push(format!("det g = ({}) * ({})^2", s.constant, s.s));
            text.push(format!("singular variety: {}", s.description));
            (true, serde_json::to_value(&s).expect("serializable"))
        }
        Err(e) => {
            text.push(format!("singular variety: {e}"));
            (false, json!({ "error": e }))
        }
    };
    Ok(Outcome { passed, inputs: inputs(src, params), result, text })
}

fn pipeline(catalog: &Catalog, src: &str, params: &[Param]) -> Result<Outcome, Failure> {
    let a = load::subspace(catalog, src, params)?;
    let r = run_pipeline(&a)?;
    let mut text = vec![
        format!("n = {}", r.n),
        format!("king rank: {}", r.king_rank),
        format!("phi space dimension: {}", r.phi_dim),
    ];
    if let Some(nd) = r.phi_nondegenerate {
        text.push(format!("phi nondegenerate: {nd}"));
    }
    if let Some(m) = &r.metric {
        text.push("metric:".into());
        text.extend(m.iter().map(|row| format!("  [{}]", row.join(", "))));
    }
    if let Some(c) = &r.checks {
        text.push(check_line("killing", &c.killing));
        for (name, c) in [("nonlinear", &c.nonlinear), ("potemin", &c.potemin)] {
            match c {
                Some(c) => text.push(check_line(name, c)),
                None => text.push(format!("{name}: not applicable")),
            }
        }
    }
    match &r.singular {
        Some(Ok(s)) => text.push(format!("singular variety: {}, S = {}", s.description, s.s)),
        Some(Err(e)) => text.push(format!("singular variety: {e}")),
        None => {}
    }
    if let Some(rep) = &r.representative {
        let vals: Vec<String> = rep.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        text.push(format!("representative: {}", if vals.is_empty() { "-".into() } else { vals.join(", ") }));
        if let Some(s) = &rep.classification.segre_symbol {
            text.push(format!("segre symbol: {s}"));
        }
    }
    if let Some(class) = r.class() {
        text.push(format!("class: {class}"));
    }
    text.push(format!("verdict: {}", r.verdict.as_str()));
    let passed = r.verdict == Verdict::Hamiltonian;
    Ok(Outcome { passed, inputs: inputs(src, params), result: serde_json::to_value(&r).expect("serializable"), text })
}

fn hydro(catalog: &Catalog, src: &str, params: &[Param]) -> Result<Outcome, Failure> {
    let systems = load::systems(catalog, src)?;
    let values = args::numeric(params);
    let named: Vec<(&str, _)> = values.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    let mut reports = Vec::new();
    let mut text = Vec::new();
    let mut passed = true;
    for s in &systems {
        let r = check_system(s, &named)?;
        passed &= r.flow.holds;
        text.push(format!("n = {}", r.n));
        text.push(format!("flow u_t = J dH/du: {}", if r.flow.holds { "holds" } else { "fails" }));
        for (i, res) in &r.flow.residual {
            text.push(format!("  residual {}: {res}", i + 1));
        }
        text.push(format!("linearly degenerate: {}", r.linearly_degenerate.holds));
        text.push(format!("haantjes tensor vanishes: {}", r.diagonalisable.haantjes_vanishes));
        if !r.diagonalisable.haantjes_vanishes && !r.diagonalisable.conditions.is_empty() {
            text.push(format!("  {} conditions on the parameters", r.diagonalisable.conditions.len()));
        }
        reports.push(serde_json::to_value(&r).expect("serializable"));
    }
    let result = if reports.len() == 1 { reports.pop().expect("one") } else { Value::Array(reports) };
    Ok(Outcome { passed, inputs: inputs(src, params), result, text })
}

fn list(catalog: &Catalog) -> Outcome {
    let entries: Vec<Value> =
        catalog.entries().iter().map(|e| json!({ "id": e.id, "kind": e.payload.kind(), "note": e.note })).collect();
    let width = catalog.entries().iter().map(|e| e.id.len()).max().unwrap_or(0);
    let text =
        catalog.entries().iter().map(|e| format!("{:width$}  {:8}  {}", e.id, e.payload.kind(), e.note)).collect();
    Outcome {
        passed: true,
        inputs: json!({ "source": catalog.source }),
        result: json!({ "version": catalog.version, "count": entries.len(), "entries": entries }),
        text,
    }
}

fn show(catalog: &Catalog, id: &str) -> Result<Outcome, Failure> {
    let e = catalog.get(id)?;
    let v = e.to_value();
    let text = vec![serde_json::to_string_pretty(&v).expect("serializable")];
    Ok(Outcome { passed: true, inputs: json!({ "id": id }), result: v, text })
}

fn self_check(catalog: &Catalog, id: Option<&str>) -> Result<Outcome, Failure> {
    let entries = match id {
        Some(id) => vec![catalog.get(id)?],
        None => catalog.entries().iter().collect(),
    };
    let mut checks = Vec::new();
    let mut text = Vec::new();
    for e in entries {
        let c = check_entry(e)?;
        text.push(format!("{}: {}", c.id, if c.passed { "ok" } else { "MISMATCH" }));
        for m in &c.mismatches {
            text.push(format!("  {}: expected {}, got {}", m.field, m.expected, m.actual));
        }
        checks.push(c);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(Outcome {
        passed,
        inputs: json!({ "id": id }),
        result: serde_json::to_value(&checks).expect("serializable"),
        text,
    })
}

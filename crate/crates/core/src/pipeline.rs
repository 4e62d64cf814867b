//! End-to-end runs: subspace to metric to verdict, and system checks.

use serde::Serialize;

use crate::catalog::{Catalog, CatalogEntry, Expect, Payload, SystemSpec};
use crate::diffvar::{
    check_hamiltonian_flow, is_diagonalisable, is_linearly_degenerate, Diagonalisability, DiffRing, FlowCheck,
    HamiltonianFunctional, HydroSystem, LinearDegeneracy, OperatorExpr,
};
use crate::error::{Error, Result};
use crate::exterior::{solve_phi, PhiForm, PhiSpace, SubspaceA};
use crate::monge::{metric_from_subspace, operator_coeffs, singular_variety, MongeMetric};
use crate::poly::{Rational, VarTable};
use crate::segre::{classify_n3, Classification};
use crate::verify::{curvature, verify_metric, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Hamiltonian,
    NotHamiltonian,
    Degenerate,
    NoPhi,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Hamiltonian => "hamiltonian",
            Verdict::NotHamiltonian => "not-hamiltonian",
            Verdict::Degenerate => "degenerate",
            Verdict::NoPhi => "no-phi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularSummary {
    pub det: String,
    pub constant: String,
    pub s: String,
    pub degree: u32,
    pub description: String,
}

pub fn singular_summary(g: &MongeMetric) -> std::result::Result<SingularSummary, String> {
    singular_variety(g)
        .map(|sv| SingularSummary {
            det: sv.det.to_string(),
            constant: sv.constant.to_string(),
            s: sv.s.to_string(),
            degree: sv.degree,
            description: sv.describe(),
        })
        .map_err(|e| e.to_string())
}

/// A numeric point of the parameter space and the metric there.
#[derive(Debug, Clone, Serialize)]
pub struct Representative {
    pub values: Vec<(String, String)>,
    pub metric: Vec<Vec<String>>,
    pub classification: Classification,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub king_rank: usize,
    pub phi_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_nondegenerate: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular: Option<std::result::Result<SingularSummary, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<Representative>,
}

impl PipelineReport {
    pub fn class(&self) -> Option<String> {
        let c = self.representative.as_ref()?;
        c.classification.label.map(|l| l.as_str().to_string())
    }
}

pub fn matrix_strings(g: &MongeMetric) -> Vec<Vec<String>> {
    (0..g.n()).map(|i| (0..g.n()).map(|j| g.get(i, j).to_string()).collect()).collect()
}

fn phi_strings(phi: &PhiForm) -> Vec<Vec<String>> {
    let m = phi.matrix();
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

/// Deterministic sequence of small nonzero integers for the representative search.
fn sample(attempt: usize, k: usize) -> i64 {
    let v = ((attempt * 7 + k * 5 + 3) % 11) as i64 - 5;
    if v >= 0 {
        v + 1
    } else {
        v
    }
}

fn choose_phi(space: &PhiSpace) -> Result<PhiForm> {
    if space.dim() == 1 {
        Ok(space.basis[0].clone())
    } else {
        space.generic("t")
    }
}

/// First point of a fixed search order where det g ≠ 0, classified.
fn representative(g: &MongeMetric) -> Result<Option<Representative>> {
    let params: Vec<usize> = g.vars().parameters().collect();
    for attempt in 0..32 {
        let values: Vec<(usize, Rational)> =
            params.iter().enumerate().map(|(k, &p)| (p, Rational::from_int(sample(attempt, k)))).collect();
        let gs = g.specialize(&values);
        if gs.det().is_zero() {
            if params.is_empty() {
                break;
            }
            continue;
        }
        let classification = classify_n3(&gs)?;
        return Ok(Some(Representative {
            values: values.iter().map(|(i, v)| (g.vars().name(*i).to_string(), v.to_string())).collect(),
            metric: matrix_strings(&gs),
            classification,
        }));
    }
    Ok(None)
}

/// Runs the construction on `a`; φ is the unique solution or the generic combination `Σ t_k φ_k`.
pub fn run_pipeline(a: &SubspaceA) -> Result<PipelineReport> {
    let n = a.n();
    let space = solve_phi(a)?;
    let mut report = PipelineReport {
        n,
        king_rank: space.rank,
        phi_dim: space.dim(),
        phi: None,
        phi_nondegenerate: None,
        metric: None,
        verdict: Verdict::NoPhi,
        checks: None,
        singular: None,
        representative: None,
    };
    if space.dim() == 0 {
        return Ok(report);
    }
    let phi = choose_phi(&space)?;
    report.phi = Some(phi_strings(&phi));
    report.phi_nondegenerate = Some(phi.is_nondegenerate());
    let g = metric_from_subspace(a, &phi, n + 1)?;
    report.metric = Some(matrix_strings(&g));
    if g.det().is_zero() {
        report.verdict = Verdict::Degenerate;
        return Ok(report);
    }
    let checks = verify_metric(&g);
    report.verdict = if checks.hamiltonian { Verdict::Hamiltonian } else { Verdict::NotHamiltonian };
    report.checks = Some(checks);
    report.singular = Some(singular_summary(&g));
    if n == 3 {
        report.representative = representative(&g)?;
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemReport {
    pub n: usize,
    pub flow: FlowCheck,
    pub linearly_degenerate: LinearDegeneracy,
    pub diagonalisable: Diagonalisability,
}

/// Checks `u_t = J δH/δu` with `J` built from the metric, linear degeneracy and the Haantjes tensor.
/// `params` specialises named parameters wherever they occur.
pub fn check_system(spec: &SystemSpec, params: &[(&str, Rational)]) -> Result<SystemReport> {
    let sys = HydroSystem::parse(&spec.flux)?;
    if sys.n() != spec.n {
        return Err(Error::DimensionMismatch(format!("n = {} but {} fluxes", spec.n, sys.n())));
    }
    let mut ring = DiffRing::covering(spec.n, &[spec.metric.vars(), sys.vars()])?;
    let mut h = HamiltonianFunctional::parse(&ring, &spec.hamiltonian_density)?;
    let (mut sys, mut metric) = (sys, spec.metric.clone());
    if !params.is_empty() {
        let at = |vars: &VarTable| -> Vec<(usize, Rational)> {
            params.iter().filter_map(|(name, v)| vars.index(name).map(|i| (i, v.clone()))).collect()
        };
        if let Some((name, _)) = params.iter().find(|(name, _)| ring.vars().index(name).is_none()) {
            return Err(Error::UnknownVariable(name.to_string()));
        }
        h.density = h.density.specialize(&at(ring.vars()))?;
        sys = sys.specialize(&at(sys.vars()))?;
        metric = metric.specialize(&at(metric.vars()));
    }
    let j = OperatorExpr::from_coeffs(&operator_coeffs(&metric)?);
    let flow = check_hamiltonian_flow(&mut ring, &sys, &j, &h)?;
    Ok(SystemReport {
        n: spec.n,
        flow,
        linearly_degenerate: is_linearly_degenerate(&sys)?,
        diagonalisable: is_diagonalisable(&sys)?,
    })
}

/// One expectation compared with what was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryCheck {
    pub id: String,
    pub kind: &'static str,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
}

fn compare<T: PartialEq + ToString>(out: &mut Vec<Mismatch>, field: &str, expected: &Option<T>, actual: Option<T>) {
    if let Some(e) = expected {
        if actual.as_ref() != Some(e) {
            out.push(Mismatch {
                field: field.into(),
                expected: e.to_string(),
                actual: actual.map(|a| a.to_string()).unwrap_or_else(|| "n/a".into()),
            });
        }
    }
}

fn check_metric(g: &MongeMetric, ex: &Expect, out: &mut Vec<Mismatch>) -> Result<()> {
    let det_zero = g.det().is_zero();
    compare(out, "degenerate", &ex.degenerate, Some(det_zero));
    if det_zero {
        compare(out, "hamiltonian", &ex.hamiltonian, None);
        compare(out, "flat", &ex.flat, None);
        compare(out, "class", &ex.class, None);
        return Ok(());
    }
    compare(out, "hamiltonian", &ex.hamiltonian, Some(verify_metric(g).hamiltonian));
    if ex.flat.is_some() {
        compare(out, "flat", &ex.flat, Some(curvature(g)?.flat));
    }
    if ex.class.is_some() {
        let label = if g.is_parametric() {
            representative(g)?.and_then(|r| r.classification.label)
        } else {
            classify_n3(g)?.label
        };
        compare(out, "class", &ex.class, label.map(|l| l.as_str().to_string()));
    }
    Ok(())
}

fn check_system_expect(s: &SystemSpec, ex: &Expect, out: &mut Vec<Mismatch>) -> Result<()> {
    let r = check_system(s, &[])?;
    compare(out, "flow", &ex.flow, Some(r.flow.holds));
    compare(out, "linearly_degenerate", &ex.linearly_degenerate, Some(r.linearly_degenerate.holds));
    compare(out, "diagonalisable", &ex.diagonalisable, Some(r.diagonalisable.haantjes_vanishes));
    Ok(())
}

/// Recomputes an entry and compares with its recorded expectations.
pub fn check_entry(entry: &CatalogEntry) -> Result<EntryCheck> {
    let ex = &entry.expect;
    let mut out = Vec::new();
    match &entry.payload {
        Payload::Metric(g) => check_metric(g, ex, &mut out)?,
        Payload::Subspace(a) => {
            let r = run_pipeline(a)?;
            compare(&mut out, "phi_dim", &ex.phi_dim, Some(r.phi_dim));
            compare(&mut out, "rank", &ex.rank, Some(r.king_rank));
            compare(&mut out, "verdict", &ex.verdict, Some(r.verdict.as_str().to_string()));
            compare(&mut out, "class", &ex.class, r.class());
        }
        Payload::System(s) => check_system_expect(s, ex, &mut out)?,
        Payload::Family(f) => {
            for s in f {
                check_system_expect(s, ex, &mut out)?;
            }
        }
    }
    Ok(EntryCheck { id: entry.id.clone(), kind: entry.payload.kind(), passed: out.is_empty(), mismatches: out })
}

pub fn self_check(catalog: &Catalog) -> Result<Vec<EntryCheck>> {
    catalog.entries().iter().map(check_entry).collect()
}

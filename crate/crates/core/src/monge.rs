//! Monge metrics: quadratic forms in `du^i` and `u^j du^k − u^k du^j`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{ComplexForm, PhiForm, SubspaceA};
use crate::linalg::{adjugate, det_fraction_free, Matrix};
use crate::poly::{parse_poly, poly_sqrt, scan_identifiers, Poly, RatFunc, Rational, SqrtVerdict, VarTable};

/// Symmetric `n×n` metric whose entries are polynomials of degree ≤ 2 in `u1..un`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MongeMetric {
    n: usize,
    g: Matrix<Poly>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MetricJson {
    n: usize,
    g: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    params: Vec<String>,
}

fn is_coordinate_name(s: &str, n: usize) -> bool {
    s.strip_prefix('u').and_then(|d| d.parse::<usize>().ok()).is_some_and(|i| (1..=n).contains(&i))
}

impl MongeMetric {
    pub fn new(g: Matrix<Poly>) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::NotSquare(g.rows(), g.cols()));
        }
        if !g.is_symmetric() {
            return Err(Error::Invalid("metric must be symmetric".into()));
        }
        let n = g.rows();
        let vars = g.vars().ok_or_else(|| Error::Invalid("empty metric".into()))?;
        let coords: Vec<usize> = vars.coordinates().collect();
        if coords != (0..n).collect::<Vec<_>>() {
            return Err(Error::DimensionMismatch(format!("metric of size {n} over variables [{vars}]")));
        }
        for p in g.entries() {
            p.check_coordinate_degree(2)?;
        }
        Ok(MongeMetric { n, g })
    }

    /// Parses entries over `u1..un`; any other identifier becomes a parameter.
    pub fn parse<R: AsRef<[S]>, S: AsRef<str>>(rows: &[R], params: &[&str]) -> Result<Self> {
        let n = rows.len();
        let mut names: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        for r in rows {
            for e in r.as_ref() {
                for id in scan_identifiers(e.as_ref()) {
                    if !is_coordinate_name(&id, n) && !names.contains(&id) {
                        names.push(id);
                    }
                }
            }
        }
        let vars = VarTable::coords_and_params(n, &names);
        Self::new(Matrix::from_strings(rows, &vars)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: MetricJson = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_json_value(&j)
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Self> {
        let j: MetricJson = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_json_value(&j)
    }

    fn from_json_value(j: &MetricJson) -> Result<Self> {
        if j.g.len() != j.n {
            return Err(Error::DimensionMismatch(format!("n = {} but {} rows", j.n, j.g.len())));
        }
        let params: Vec<&str> = j.params.iter().map(String::as_str).collect();
        Self::parse(&j.g, &params)
    }

    pub fn to_value(&self) -> serde_json::Value {
        let params = self.vars().parameters().map(|i| self.vars().name(i).to_string()).collect();
        serde_json::to_value(MetricJson { n: self.n, g: self.g.to_strings(), params }).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<Poly> {
        &self.g
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        self.g.get(i, j)
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.g.vars().expect("nonempty")
    }

    pub fn det(&self) -> Poly {
        det_fraction_free(&self.g).expect("square")
    }

    pub fn specialize(&self, values: &[(usize, Rational)]) -> MongeMetric {
        MongeMetric { n: self.n, g: self.g.specialize(values) }
    }

    /// Substitutes parameters by name.
    pub fn with_params(&self, values: &[(&str, Rational)]) -> Result<MongeMetric> {
        let vals =
            values.iter().map(|(name, v)| Ok((self.vars().require(name)?, v.clone()))).collect::<Result<Vec<_>>>()?;
        Ok(self.specialize(&vals))
    }

    pub fn is_parametric(&self) -> bool {
        self.vars().parameters().any(|i| self.g.entries().iter().any(|p| p.depends_on(i)))
    }

    /// `Σ g_ij du^i du^j` written out.
    pub fn form_string(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                let e = self.g.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let coef = if i == j { e.clone() } else { e.scale(&Rational::from_int(2)) };
                let d = if i == j { format!("du{}^2", i + 1) } else { format!("du{}*du{}", i + 1, j + 1) };
                parts.push(if coef.is_one() { d } else { format!("({coef})*{d}") });
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// One-form `Σ f_i du^i` as its coefficient vector.
type OneForm = Vec<Poly>;

fn sym_product(a: &OneForm, b: &OneForm) -> Matrix<Poly> {
    let n = a.len();
    let half = Rational::new(1, 2);
    Matrix::from_fn(n, n, |i, j| (&(&a[i] * &b[j]) + &(&a[j] * &b[i])).scale(&half))
}

/// Homogeneous coordinates and their differentials in the chart `u^{chart}=1` (one-based).
fn chart_coordinates(n: usize, chart: usize, vars: &Arc<VarTable>) -> Result<(Vec<Poly>, Vec<OneForm>)> {
    if chart == 0 || chart > n + 1 {
        return Err(Error::ChartDegenerate(format!("chart index {chart} outside 1..={}", n + 1)));
    }
    let zero = Poly::zero(vars);
    let mut xs = Vec::with_capacity(n + 1);
    let mut dxs = Vec::with_capacity(n + 1);
    let mut next = 0;
    for a in 0..=n {
        if a + 1 == chart {
            xs.push(Poly::one(vars));
            dxs.push(vec![zero.clone(); n]);
        } else {
            xs.push(Poly::var(vars, next));
            let mut d = vec![zero.clone(); n];
            d[next] = Poly::one(vars);
            dxs.push(d);
            next += 1;
        }
    }
    Ok((xs, dxs))
}

/// `tr(A P)` restricted to the chart, as a one-form.
fn trace_form(a: &crate::exterior::Bivector, xs: &[Poly], dxs: &[OneForm], vars: &Arc<VarTable>) -> OneForm {
    let n = xs.len() - 1;
    let mut out = vec![Poly::zero(vars); n];
    // tr(A P) = 2 Σ_b (Σ_a A_ba X^a) dX^b
    for (b, dx) in dxs.iter().enumerate().take(n + 1) {
        let mut s = Poly::zero(vars);
        for (x, xa) in xs.iter().enumerate() {
            let c = a.at(b, x);
            if !c.is_zero() {
                s = &s + &(&c.rebased(vars).expect("parameters present") * xa);
            }
        }
        if s.is_zero() {
            continue;
        }
        let s = s.scale(&Rational::from_int(2));
        for (o, d) in out.iter_mut().zip(dx) {
            if !d.is_zero() {
                *o = &*o + &(&s * d);
            }
        }
    }
    out
}

fn quadratic_from_forms(phi: &PhiForm, forms: &[OneForm], vars: &Arc<VarTable>) -> Result<Matrix<Poly>> {
    let n = forms[0].len();
    let mut g = Matrix::zeros(n, n, &Poly::zero(vars));
    for (b, fb) in forms.iter().enumerate() {
        for (c, fc) in forms.iter().enumerate() {
            let f = phi.get(b, c);
            if f.is_zero() {
                continue;
            }
            let f = f.rebased(vars)?;
            g = g.add(&sym_product(fb, fc).scale_by(&f))?;
        }
    }
    Ok(g)
}

/// `g = φ_{βγ} tr(A^β P) tr(A^γ P)` in the affine chart `u^{chart} = 1` (one-based).
pub fn metric_from_subspace(a: &SubspaceA, phi: &PhiForm, chart: usize) -> Result<MongeMetric> {
    let n = a.n();
    if phi.matrix().rows() != n {
        return Err(Error::DimensionMismatch(format!("phi of size {} for {n} bivectors", phi.matrix().rows())));
    }
    let params = a.vars().merge(phi.matrix().vars().unwrap())?;
    let vars = params.with_coordinates(n);
    let (xs, dxs) = chart_coordinates(n, chart, &vars)?;
    let forms: Vec<OneForm> = a.basis().iter().map(|b| trace_form(b, &xs, &dxs, &vars)).collect();
    MongeMetric::new(quadratic_from_forms(phi, &forms, &vars)?)
}

/// Plücker one-forms `p^{ab} = X^a dX^b − X^b dX^a` in the chart `u^{chart} = 1`, lexicographic order.
pub fn plucker_forms(n: usize, chart: usize, vars: &Arc<VarTable>) -> Result<Vec<Vec<Poly>>> {
    let (xs, dxs) = chart_coordinates(n, chart, vars)?;
    let basis = crate::exterior::PluckerBasis::new(n);
    Ok(basis
        .pairs()
        .iter()
        .map(|&(a, b)| (0..n).map(|i| &(&xs[a] * &dxs[b][i]) - &(&xs[b] * &dxs[a][i])).collect())
        .collect())
}

/// `g = p Q pᵗ` in the chart `u^{chart} = 1`.
pub fn metric_from_complex(q: &ComplexForm, chart: usize) -> Result<MongeMetric> {
    let n = q.n();
    let vars = q.vars().with_coordinates(n);
    let forms = plucker_forms(n, chart, &vars)?;
    let mut g = Matrix::zeros(n, n, &Poly::zero(&vars));
    for (i, fi) in forms.iter().enumerate() {
        for (j, fj) in forms.iter().enumerate() {
            let c = q.matrix().get(i, j);
            if !c.is_zero() {
                g = g.add(&sym_product(fi, fj).scale_by(&c.rebased(&vars)?))?;
            }
        }
    }
    MongeMetric::new(g)
}

/// Constants `ψ^γ_{km}` (skew in `k, m`) and `ω^γ_k`, so that `ψ^γ_k(u) = ψ^γ_{km} u^m + ω^γ_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiData {
    pub psi: Vec<Matrix<Poly>>,
    pub omega: Vec<Vec<Poly>>,
}

impl PsiData {
    pub fn new(psi: Vec<Matrix<Poly>>, omega: Vec<Vec<Poly>>) -> Result<Self> {
        let n = psi.len();
        if omega.len() != n || psi.iter().any(|m| m.rows() != n || m.cols() != n) || omega.iter().any(|w| w.len() != n)
        {
            return Err(Error::DimensionMismatch(format!("psi/omega data for n = {n}")));
        }
        if psi.iter().any(|m| !m.is_skew_symmetric()) {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(PsiData { psi, omega })
    }

    /// `ψ^β_{jm} = 2A^β_{jm}`, `ω^β_j = 2A^β_{j,n+1}`.
    pub fn from_subspace(a: &SubspaceA) -> Self {
        let n = a.n();
        let two = Rational::from_int(2);
        let psi = a.basis().iter().map(|b| Matrix::from_fn(n, n, |j, m| b.at(j, m).scale(&two))).collect();
        let omega = a.basis().iter().map(|b| (0..n).map(|j| b.at(j, n).scale(&two)).collect()).collect();
        PsiData { psi, omega }
    }

    pub fn n(&self) -> usize {
        self.psi.len()
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.omega[0][0].vars()
    }

    /// `ψ^γ_k(u)` over a table with coordinates.
    pub fn psi_matrix(&self, vars: &Arc<VarTable>) -> Result<Matrix<Poly>> {
        let n = self.n();
        let mut m = Matrix::zeros(n, n, &Poly::zero(vars));
        for g in 0..n {
            for k in 0..n {
                let mut s = self.omega[g][k].rebased(vars)?;
                for j in 0..n {
                    let c = self.psi[g].get(k, j);
                    if !c.is_zero() {
                        s = &s + &(&c.rebased(vars)? * &Poly::var(vars, j));
                    }
                }
                m.set(g, k, s);
            }
        }
        Ok(m)
    }

    /// Rows are the relations `φ_{βγ}(ψ^β_{is}ψ^γ_{jk} + cyclic) = 0` and
    /// `φ_{βγ}(ω^β_i ψ^γ_{jk} + cyclic) = 0`; columns are `φ_{βγ}`, `β ≤ γ`.
    pub fn jacobi_relations(&self) -> Matrix<Poly> {
        let n = self.n();
        let vars = self.vars().clone();
        let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|b| (b..n).map(move |c| (b, c))).collect();
        let mut rows = Vec::new();
        let coeff_row = |e: &dyn Fn(usize, usize) -> Poly| -> Vec<Poly> {
            unknowns.iter().map(|&(b, c)| if b == c { e(b, b) } else { &e(b, c) + &e(c, b) }).collect()
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for s in 0..n {
                        let p = &self.psi;
                        rows.push(coeff_row(&|b, c| {
                            let t1 = p[b].get(i, s) * p[c].get(j, k);
                            let t2 = p[b].get(j, s) * p[c].get(k, i);
                            let t3 = p[b].get(k, s) * p[c].get(i, j);
                            &(&t1 + &t2) + &t3
                        }));
                    }
                    let (p, w) = (&self.psi, &self.omega);
                    rows.push(coeff_row(&|b, c| {
                        let t1 = &w[b][i] * p[c].get(j, k);
                        let t2 = &w[b][j] * p[c].get(k, i);
                        let t3 = &w[b][k] * p[c].get(i, j);
                        &(&t1 + &t2) + &t3
                    }));
                }
            }
        }
        if rows.is_empty() {
            return Matrix::zeros(0, unknowns.len(), &Poly::zero(&vars));
        }
        Matrix::from_rows(rows).expect("rectangular")
    }
}

/// `g_ij = φ_{βγ} ψ^β_i ψ^γ_j`.
pub fn metric_from_psi(data: &PsiData, phi: &PhiForm) -> Result<MongeMetric> {
    let n = data.n();
    if phi.matrix().rows() != n {
        return Err(Error::DimensionMismatch(format!("phi of size {} for n = {n}", phi.matrix().rows())));
    }
    let vars = data.vars().merge(phi.matrix().vars().unwrap())?.with_coordinates(n);
    let psi = data.psi_matrix(&vars)?;
    let forms: Vec<OneForm> = (0..n).map(|g| psi.row(g).to_vec()).collect();
    MongeMetric::new(quadratic_from_forms(phi, &forms, &vars)?)
}

/// Constants of `a_ij du^i du^j + b_ijk du^i w^{jk} + c_ijkl w^{ij} w^{kl}` with `w^{jk} = u^j du^k − u^k du^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MongeGeneralCoeffs {
    pub n: usize,
    /// `a[i][j]`
    pub a: Vec<Vec<Rational>>,
    /// `b[i][j][k]`
    pub b: Vec<Vec<Vec<Rational>>>,
    /// `c[i][j][k][l]`
    pub c: Vec<Vec<Vec<Vec<Rational>>>>,
}

impl MongeGeneralCoeffs {
    pub fn zero(n: usize) -> Self {
        let z = Rational::zero();
        MongeGeneralCoeffs {
            n,
            a: vec![vec![z.clone(); n]; n],
            b: vec![vec![vec![z.clone(); n]; n]; n],
            c: vec![vec![vec![vec![z; n]; n]; n]; n],
        }
    }
}

pub fn monge_general(coeffs: &MongeGeneralCoeffs) -> Result<MongeMetric> {
    let n = coeffs.n;
    let vars = VarTable::coords_and_params::<&str>(n, &[]);
    let zero = Poly::zero(&vars);
    let du = |i: usize| -> OneForm { (0..n).map(|k| if k == i { Poly::one(&vars) } else { zero.clone() }).collect() };
    let w = |j: usize, k: usize| -> OneForm {
        (0..n)
            .map(|m| {
                let mut p = zero.clone();
                if m == k {
                    p = &p + &Poly::var(&vars, j);
                }
                if m == j {
                    p = &p - &Poly::var(&vars, k);
                }
                p
            })
            .collect()
    };
    let mut g = Matrix::zeros(n, n, &zero);
    let mut add = |c: &Rational, x: &OneForm, y: &OneForm| -> Result<()> {
        if !c.is_zero() {
            g = g.add(&sym_product(x, y).scale(c))?;
        }
        Ok(())
    };
    for i in 0..n {
        for j in 0..n {
            add(&coeffs.a[i][j], &du(i), &du(j))?;
            for k in 0..n {
                add(&coeffs.b[i][j][k], &du(i), &w(j, k))?;
                for l in 0..n {
                    add(&coeffs.c[i][j][k][l], &w(i, j), &w(k, l))?;
                }
            }
        }
    }
    MongeMetric::new(g)
}

/// `c_{nkm}` (polynomial) and the raised `c^{pq}_k` (rational).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChristoffelObjects {
    n: usize,
    lower: Vec<Poly>,
    raised: Vec<RatFunc>,
}

impl ChristoffelObjects {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `c_{ijk}`.
    pub fn lower(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.lower[(i * self.n + j) * self.n + k]
    }

    /// `c^{pq}_k`.
    pub fn raised(&self, p: usize, q: usize, k: usize) -> &RatFunc {
        &self.raised[(p * self.n + q) * self.n + k]
    }
}

/// `c_{nkm} = ⅓(g_{nm,k} − g_{nk,m})`.
pub fn c_lower(g: &MongeMetric) -> Vec<Poly> {
    let n = g.n;
    let third = Rational::new(1, 3);
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for k in 0..n {
            for m in 0..n {
                let d = &g.get(a, m).derivative(k) - &g.get(a, k).derivative(m);
                out.push(d.scale(&third));
            }
        }
    }
    out
}

pub fn c_from_metric(g: &MongeMetric) -> Result<ChristoffelObjects> {
    let n = g.n;
    let det = g.det();
    if det.is_zero() {
        return Err(Error::SingularMetric);
    }
    let lower = c_lower(g);
    let adj = adjugate(&g.g)?;
    let low = |i: usize, j: usize, k: usize| &lower[(i * n + j) * n + k];
    let den = &det * &det;
    let mut raised = Vec::with_capacity(n * n * n);
    // c^{pq}_k = g^{qi} g^{pj} c_{ijk}
    for p in 0..n {
        for q in 0..n {
            for k in 0..n {
                let mut s = Poly::zero(g.vars());
                for i in 0..n {
                    for j in 0..n {
                        let c = low(i, j, k);
                        if !c.is_zero() {
                            s = &s + &(&(adj.get(q, i) * adj.get(p, j)) * c);
                        }
                    }
                }
                raised.push(RatFunc::new(s, den.clone())?);
            }
        }
    }
    Ok(ChristoffelObjects { n, lower, raised })
}

/// Data of `J = D(g^{ij} D + c^{ij}_k u^k_x) D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorCoeffs {
    pub ginv: Matrix<RatFunc>,
    pub c: ChristoffelObjects,
}

pub fn operator_coeffs(g: &MongeMetric) -> Result<OperatorCoeffs> {
    let c = c_from_metric(g)?;
    let ginv = g.g.to_ratfunc().inverse().map_err(|_| Error::SingularMetric)?;
    Ok(OperatorCoeffs { ginv, c })
}

/// `det g = constant · S²` with `S` primitive and positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularVariety {
    pub det: Poly,
    pub constant: Poly,
    pub s: Poly,
    pub degree: u32,
}

impl SingularVariety {
    pub fn describe(&self) -> String {
        match self.degree {
            0 => "quadruple plane at infinity".into(),
            1 => "double plane".into(),
            2 => "double quadric".into(),
            3 => "double cubic".into(),
            d => format!("double hypersurface of degree {d}"),
        }
    }
}

pub fn singular_variety(g: &MongeMetric) -> Result<SingularVariety> {
    let det = g.det();
    if det.is_zero() {
        return Err(Error::SingularMetric);
    }
    let SqrtVerdict::Square { constant, root } = poly_sqrt(&det) else {
        return Err(Error::Invalid(format!("det g = {det} is not a constant times a square")));
    };
    let (k, mut s) = root.primitive_integer();
    let mut k = k;
    if s.leading_coeff().is_negative() {
        s = -&s;
        k = -&k;
    }
    let constant = constant.scale(&(&k * &k));
    let degree = s.coordinate_degree().unwrap_or(0);
    if degree as usize > g.n.saturating_sub(1) {
        return Err(Error::DegreeTooHigh(format!("singular variety of degree {degree} for n = {}", g.n)));
    }
    debug_assert_eq!(&constant * &(&s * &s), det);
    Ok(SingularVariety { det, constant, s, degree })
}

/// Parses a one-based bivector list `[[a, b, "coef"], …]` per basis element.
pub fn parse_subspace_json(v: &serde_json::Value, dim: usize) -> Result<SubspaceA> {
    let list = v.as_array().ok_or_else(|| Error::Invalid("subspace must be a list of bivectors".into()))?;
    let mut names = Vec::new();
    let mut raw = Vec::new();
    for b in list {
        let terms = b.as_array().ok_or_else(|| Error::Invalid("bivector must be a list of triples".into()))?;
        let mut out = Vec::new();
        for t in terms {
            let t: (usize, usize, serde_json::Value) =
                serde_json::from_value(t.clone()).map_err(|e| Error::Invalid(e.to_string()))?;
            let c = match t.2 {
                serde_json::Value::String(s) => s,
                serde_json::Value::Number(x) => x.to_string(),
                other => return Err(Error::Invalid(format!("bad coefficient {other}"))),
            };
            for id in scan_identifiers(&c) {
                if !names.contains(&id) {
                    names.push(id);
                }
            }
            out.push((t.0, t.1, c));
        }
        raw.push(out);
    }
    let vars = VarTable::params_only(&names);
    let basis = raw
        .iter()
        .map(|terms| {
            let parsed =
                terms.iter().map(|(a, b, c)| Ok((*a, *b, parse_poly(c, &vars)?))).collect::<Result<Vec<_>>>()?;
            crate::exterior::Bivector::from_terms(dim, &parsed, &vars)
        })
        .collect::<Result<Vec<_>>>()?;
    SubspaceA::new(basis)
}

pub fn subspace_to_json(a: &SubspaceA) -> serde_json::Value {
    serde_json::Value::Array(
        a.basis()
            .iter()
            .map(|b| {
                serde_json::Value::Array(
                    b.to_triples().into_iter().map(|(x, y, c)| serde_json::json!([x, y, c])).collect(),
                )
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Bivector;

    #[test]
    fn n2_trace_convention() {
        let v = VarTable::params_only::<&str>(&[]);
        let a = SubspaceA::new(vec![Bivector::e(3, 1, 3, &v), Bivector::e(3, 2, 3, &v)]).unwrap();
        let phi = PhiForm::new(Matrix::identity(2, &Poly::one(&v))).unwrap();
        let g = metric_from_subspace(&a, &phi, 3).unwrap();
        let expect = MongeMetric::parse(&[["4", "0"], ["0", "4"]], &[]).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn general_single_rotation_term() {
        let mut c = MongeGeneralCoeffs::zero(3);
        c.c[0][1][0][1] = Rational::one();
        let g = monge_general(&c).unwrap();
        let expect =
            MongeMetric::parse(&[["u2^2", "-u1*u2", "0"], ["-u1*u2", "u1^2", "0"], ["0", "0", "0"]], &[]).unwrap();
        assert_eq!(g, expect);
    }

    #[test]
    fn json_round_trip() {
        let g = MongeMetric::parse(&[["a*u2^2", "1"], ["1", "0"]], &[]).unwrap();
        assert_eq!(MongeMetric::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn degree_three_rejected() {
        assert!(matches!(MongeMetric::parse(&[["u1^3"]], &[]), Err(Error::DegreeTooHigh(_))));
    }

    #[test]
    fn quadruple_plane() {
        let g = MongeMetric::parse(&[["0", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]], &[]).unwrap();
        let s = singular_variety(&g).unwrap();
        assert_eq!((s.degree, s.constant.constant_value()), (0, Some(Rational::from_int(-1))));
    }
}

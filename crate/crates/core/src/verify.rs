//! Hamiltonian-property checks for Monge metrics, curvature, and the projective action.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{adjugate, Matrix};
use crate::monge::{c_lower, MongeMetric};
use crate::poly::{Poly, RatFunc, Rational, VarTable};

/// Outcome of an identity check; `witness` names the first failing component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Check { holds: true, witness: None }
    }

    fn fail(w: String) -> Self {
        Check { holds: false, witness: Some(w) }
    }
}

fn first_failure<I: Iterator<Item = (String, bool)>>(it: I) -> Check {
    for (label, ok) in it {
        if !ok {
            return Check::fail(label);
        }
    }
    Check::pass()
}

/// `g_{mk,n} + g_{kn,m} + g_{mn,k} = 0`.
pub fn check_killing(g: &MongeMetric) -> Check {
    let n = g.n();
    let mut idx = Vec::new();
    for m in 0..n {
        for k in m..n {
            for l in k..n {
                idx.push((m, k, l));
            }
        }
    }
    first_failure(idx.into_iter().map(|(m, k, l)| {
        let s = &(&g.get(m, k).derivative(l) + &g.get(k, l).derivative(m)) + &g.get(m, l).derivative(k);
        (format!("killing[{},{},{}]", m + 1, k + 1, l + 1), s.is_zero())
    }))
}

fn second(g: &MongeMetric, i: usize, j: usize, a: usize, b: usize) -> Poly {
    g.get(i, j).derivative(a).derivative(b)
}

/// `g_{m[k,n]l} = −⅓ g^{pq} g_{p[l,m]} g_{q[k,n]}`, multiplied through by `det g`.
pub fn check_nonlinear(g: &MongeMetric) -> Result<Check> {
    let n = g.n();
    let det = g.det();
    if det.is_zero() {
        return Err(Error::SingularMetric);
    }
    let adj = adjugate(g.matrix())?;
    // d[p][a][b] = g_{pa,b} − g_{pb,a}
    let d: Vec<Vec<Vec<Poly>>> = (0..n)
        .map(|p| {
            (0..n).map(|a| (0..n).map(|b| &g.get(p, a).derivative(b) - &g.get(p, b).derivative(a)).collect()).collect()
        })
        .collect();
    let third = Rational::new(1, 3);
    for m in 0..n {
        for k in 0..n {
            for nn in 0..n {
                for l in 0..n {
                    let lhs = &second(g, m, k, nn, l) - &second(g, m, nn, k, l);
                    let mut rhs = Poly::zero(g.vars());
                    for p in 0..n {
                        for q in 0..n {
                            let a = adj.get(p, q);
                            if a.is_zero() || d[p][l][m].is_zero() || d[q][k][nn].is_zero() {
                                continue;
                            }
                            rhs = &rhs + &(&(a * &d[p][l][m]) * &d[q][k][nn]);
                        }
                    }
                    let total = &(&det * &lhs) + &rhs.scale(&third);
                    if !total.is_zero() {
                        return Ok(Check::fail(format!("nonlinear[{},{},{},{}]", m + 1, k + 1, nn + 1, l + 1)));
                    }
                }
            }
        }
    }
    Ok(Check::pass())
}

/// The full system on `(g, c)` with `c_{nkm} = ⅓(g_{nm,k} − g_{nk,m})`; the last relation is multiplied by `det g`.
pub fn check_potemin_system(g: &MongeMetric) -> Result<Check> {
    let n = g.n();
    let det = g.det();
    if det.is_zero() {
        return Err(Error::SingularMetric);
    }
    let c = c_lower(g);
    let at = |i: usize, j: usize, k: usize| &c[(i * n + j) * n + k];
    for m in 0..n {
        for nn in 0..n {
            for k in 0..n {
                let lbl = |tag: &str| format!("{tag}[{},{},{}]", m + 1, nn + 1, k + 1);
                if g.get(m, nn).derivative(k) != -&(at(m, nn, k) + at(nn, m, k)) {
                    return Ok(Check::fail(lbl("metric")));
                }
                if at(m, nn, k) != &-at(m, k, nn) {
                    return Ok(Check::fail(lbl("skew")));
                }
                if !(&(at(m, nn, k) + at(nn, k, m)) + at(k, m, nn)).is_zero() {
                    return Ok(Check::fail(lbl("cyclic")));
                }
            }
        }
    }
    let adj = adjugate(g.matrix())?;
    for m in 0..n {
        for nn in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = &det * &at(m, nn, k).derivative(l);
                    for p in 0..n {
                        for q in 0..n {
                            let a = adj.get(p, q);
                            if !a.is_zero() {
                                s = &s + &(&(a * at(p, m, l)) * at(q, nn, k));
                            }
                        }
                    }
                    if !s.is_zero() {
                        return Ok(Check::fail(format!("quadratic[{},{},{},{}]", m + 1, nn + 1, k + 1, l + 1)));
                    }
                }
            }
        }
    }
    Ok(Check::pass())
}

/// Curvature of the Levi-Civita connection.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub n: usize,
    pub det: Poly,
    /// `R^l_{ijk} · det²` at index `((l·n + i)·n + j)·n + k`.
    pub riemann_numerators: Vec<Poly>,
    pub flat: bool,
    /// `C_{ijk} · det⁴` with `C_{ijk} = ∇_k P_ij − ∇_j P_ik` (n = 3 only).
    pub cotton_numerators: Option<Vec<Poly>>,
    pub conformally_flat: Option<bool>,
}

impl CurvatureReport {
    pub fn riemann(&self, l: usize, i: usize, j: usize, k: usize) -> RatFunc {
        let n = self.n;
        let num = self.riemann_numerators[((l * n + i) * n + j) * n + k].clone();
        RatFunc::new(num, self.det.pow(2)).expect("nonzero det")
    }

    pub fn cotton(&self, i: usize, j: usize, k: usize) -> Option<RatFunc> {
        let num = self.cotton_numerators.as_ref()?[(i * 3 + j) * 3 + k].clone();
        Some(RatFunc::new(num, self.det.pow(4)).expect("nonzero det"))
    }
}

pub fn curvature(g: &MongeMetric) -> Result<CurvatureReport> {
    let n = g.n();
    let det = g.det();
    if det.is_zero() {
        return Err(Error::SingularMetric);
    }
    let adj = adjugate(g.matrix())?;
    let half = Rational::new(1, 2);
    let idx3 = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    // Γ_{kij}
    let mut low = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let s = &(&g.get(k, j).derivative(i) + &g.get(k, i).derivative(j)) - &g.get(i, j).derivative(k);
                low.push(s.scale(&half));
            }
        }
    }
    // G^l_{ij} = adj^{lk} Γ_{kij}, so Γ^l_{ij} = G^l_{ij} / det
    let mut big = Vec::with_capacity(n * n * n);
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = Poly::zero(g.vars());
                for k in 0..n {
                    if !adj.get(l, k).is_zero() && !low[idx3(k, i, j)].is_zero() {
                        s = &s + &(adj.get(l, k) * &low[idx3(k, i, j)]);
                    }
                }
                big.push(s);
            }
        }
    }
    let dd: Vec<Poly> = (0..n).map(|j| det.derivative(j)).collect();
    let gg = |l, i, j| &big[idx3(l, i, j)];
    let mut num = Vec::with_capacity(n.pow(4));
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = &det * &(&gg(l, i, k).derivative(j) - &gg(l, i, j).derivative(k));
                    s = &s - &(&(&dd[j] * gg(l, i, k)) - &(&dd[k] * gg(l, i, j)));
                    for m in 0..n {
                        s = &s + &(&(gg(l, j, m) * gg(m, i, k)) - &(gg(l, k, m) * gg(m, i, j)));
                    }
                    num.push(s);
                }
            }
        }
    }
    let flat = num.iter().all(Poly::is_zero);
    let (cotton_numerators, conformally_flat) = if n == 3 {
        let c = cotton_numerators(g, &det, &dd, &adj, &big, &num);
        let cf = c.iter().all(Poly::is_zero);
        (Some(c), Some(cf))
    } else {
        (None, None)
    };
    Ok(CurvatureReport { n, det, riemann_numerators: num, flat, cotton_numerators, conformally_flat })
}

/// With `Ric = Ric♯/Δ²`, `R = S♯/Δ³`, `P = Ric − R g/4 = P♯/Δ³`, and `Γ = G/Δ`:
/// `∇_k P_ij · Δ⁴ = Δ ∂_k P♯_ij − 3 Δ_k P♯_ij − G^m_{ki} P♯_mj − G^m_{kj} P♯_im`.
fn cotton_numerators(
    g: &MongeMetric,
    det: &Poly,
    dd: &[Poly],
    adj: &Matrix<Poly>,
    big: &[Poly],
    num: &[Poly],
) -> Vec<Poly> {
    let n = 3;
    let vars = g.vars();
    let ric: Vec<Poly> = (0..n * n)
        .map(|ik| {
            let (i, k) = (ik / n, ik % n);
            let mut s = Poly::zero(vars);
            for j in 0..n {
                s = &s + &num[((j * n + i) * n + j) * n + k];
            }
            s
        })
        .collect();
    let mut scal = Poly::zero(vars);
    for i in 0..n {
        for k in 0..n {
            scal = &scal + &(adj.get(i, k) * &ric[i * n + k]);
        }
    }
    let quarter = Rational::new(1, 4);
    let p: Vec<Poly> =
        (0..n * n).map(|ij| &(det * &ric[ij]) - &(&scal * g.get(ij / n, ij % n)).scale(&quarter)).collect();
    let three = Rational::from_int(3);
    let cov = |i: usize, j: usize, k: usize| -> Poly {
        let mut s = &(det * &p[i * n + j].derivative(k)) - &(&dd[k] * &p[i * n + j]).scale(&three);
        for m in 0..n {
            s = &s - &(&big[(m * n + k) * n + i] * &p[m * n + j]);
            s = &s - &(&big[(m * n + k) * n + j] * &p[i * n + m]);
        }
        s
    };
    let mut out = Vec::with_capacity(27);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.push(&cov(i, j, k) - &cov(i, k, j));
            }
        }
    }
    out
}

/// `ũ^i = l^i(u) / l(u)` with `(l^1, …, l^n, l) = L · (u, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveMap {
    l: Matrix<Rational>,
}

impl ProjectiveMap {
    pub fn new(l: Matrix<Rational>) -> Result<Self> {
        if !l.is_square() {
            return Err(Error::NotSquare(l.rows(), l.cols()));
        }
        l.inverse()?;
        Ok(ProjectiveMap { l })
    }

    pub fn identity(n: usize) -> Self {
        ProjectiveMap { l: Matrix::identity(n + 1, &Rational::one()) }
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.l
    }

    pub fn n(&self) -> usize {
        self.l.rows() - 1
    }

    /// `L₁ · L₂`.
    pub fn compose(&self, other: &ProjectiveMap) -> Result<ProjectiveMap> {
        ProjectiveMap::new(self.l.mul(&other.l)?)
    }

    fn forms(&self, vars: &Arc<VarTable>) -> Vec<Poly> {
        let n = self.n();
        (0..=n)
            .map(|r| {
                let mut s = Poly::constant(vars, self.l.get(r, n).clone());
                for j in 0..n {
                    s = &s + &Poly::var(vars, j).scale(self.l.get(r, j));
                }
                s
            })
            .collect()
    }
}

/// `Σ G_il(l^·, l) J^i_j J^l_k / l²`, with `J^i_j = l ∂_j l^i − l^i ∂_j l` and `G` the
/// degree-2 homogenization of `g`.
pub fn pullback_metric(g: &MongeMetric, t: &ProjectiveMap) -> Result<MongeMetric> {
    let n = g.n();
    if t.n() != n {
        return Err(Error::DimensionMismatch(format!("map on P^{} for a metric with n = {n}", t.n())));
    }
    let vars = g.vars().clone();
    let forms = t.forms(&vars);
    let l = &forms[n];
    if l.is_zero() {
        return Err(Error::ChartDegenerate("l vanishes identically".into()));
    }
    let mut images: Vec<Option<Poly>> = vec![None; vars.len()];
    for (i, f) in forms[..n].iter().enumerate() {
        images[i] = Some(f.clone());
    }
    let homog: Vec<Poly> = g
        .matrix()
        .entries()
        .iter()
        .map(|e| {
            // Σ_d e_d(l^·) · l^{2−d} over homogeneous parts e_d.
            let mut s = Poly::zero(&vars);
            for (m, c) in e.terms() {
                let d = (0..n).map(|i| m.exp(i) as u32).sum::<u32>();
                let part = Poly::monomial(&vars, m.clone(), c.clone());
                s = &s + &(&part.compose(&images, &vars) * &l.pow(2 - d));
            }
            s
        })
        .collect();
    let jac: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| &(l * &forms[i].derivative(j)) - &(&forms[i] * &l.derivative(j))).collect())
        .collect();
    let l2 = l.pow(2);
    let mut out = Matrix::zeros(n, n, &Poly::zero(&vars));
    for j in 0..n {
        for k in j..n {
            let mut s = Poly::zero(&vars);
            for i in 0..n {
                for m in 0..n {
                    let h = &homog[i * n + m];
                    if !h.is_zero() {
                        s = &s + &(&(h * &jac[i][j]) * &jac[m][k]);
                    }
                }
            }
            let q = s.exact_div(&l2).map_err(|_| Error::ChartDegenerate("pullback is not divisible by l^2".into()))?;
            out.set(j, k, q.clone());
            out.set(k, j, q);
        }
    }
    MongeMetric::new(out)
}

/// Summary of the four checks used by the CLI and pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub killing: Check,
    pub nonlinear: Option<Check>,
    pub potemin: Option<Check>,
    pub hamiltonian: bool,
}

pub fn verify_metric(g: &MongeMetric) -> VerifyReport {
    let killing = check_killing(g);
    let nonlinear = check_nonlinear(g).ok();
    let potemin = check_potemin_system(g).ok();
    let hamiltonian = killing.holds && nonlinear.as_ref().is_some_and(|c| c.holds);
    VerifyReport { killing, nonlinear, potemin, hamiltonian }
}

//! Conservative systems `u^i_t = (V^i(u))_x`.

use std::sync::Arc;

use serde::Serialize;

use super::{DiffRing, HamiltonianFunctional, OperatorExpr};
use crate::error::{Error, Result};
use crate::linalg::{char_poly, Matrix};
use crate::poly::{parse_ratfunc, Poly, RatFunc, VarTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HydroSystem {
    n: usize,
    vars: Arc<VarTable>,
    flux: Vec<RatFunc>,
}

impl HydroSystem {
    pub fn new(n: usize, flux: Vec<RatFunc>) -> Result<Self> {
        if flux.len() != n {
            return Err(Error::DimensionMismatch(format!("{} fluxes for n = {n}", flux.len())));
        }
        let vars = flux.first().map(|f| f.vars().clone()).ok_or_else(|| Error::Invalid("empty system".into()))?;
        if vars.coordinates().count() != n {
            return Err(Error::DimensionMismatch("flux table must have exactly n coordinates".into()));
        }
        Ok(HydroSystem { n, vars, flux })
    }

    /// Identifiers other than `u1..un` become parameters.
    pub fn parse<S: AsRef<str>>(flux: &[S]) -> Result<Self> {
        let n = flux.len();
        let mut params: Vec<String> = Vec::new();
        for f in flux {
            for id in crate::poly::scan_identifiers(f.as_ref()) {
                let is_coord =
                    id.strip_prefix('u').and_then(|d| d.parse::<usize>().ok()).is_some_and(|i| (1..=n).contains(&i));
                if !is_coord && !params.contains(&id) {
                    params.push(id);
                }
            }
        }
        let vars = VarTable::coords_and_params(n, &params);
        let flux = flux.iter().map(|f| parse_ratfunc(f.as_ref(), &vars)).collect::<Result<Vec<_>>>()?;
        HydroSystem::new(n, flux)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn flux(&self) -> &[RatFunc] {
        &self.flux
    }

    /// `A^i_j = ∂V^i/∂u^j`.
    pub fn characteristic_matrix(&self) -> Matrix<RatFunc> {
        Matrix::from_fn(self.n, self.n, |i, j| self.flux[i].derivative(j))
    }

    pub fn specialize(&self, values: &[(usize, crate::poly::Rational)]) -> Result<HydroSystem> {
        let flux = self.flux.iter().map(|f| f.specialize(values)).collect::<Result<Vec<_>>>()?;
        HydroSystem::new(self.n, flux)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowCheck {
    pub holds: bool,
    /// `J δH/δu − (V)_x` for components that do not vanish.
    pub residual: Vec<(usize, String)>,
}

/// Compares `J δH/δu` with `(V^i)_x`.
pub fn check_hamiltonian_flow(
    ring: &mut DiffRing,
    sys: &HydroSystem,
    j: &OperatorExpr,
    h: &HamiltonianFunctional,
) -> Result<FlowCheck> {
    let grad = h.gradient(ring)?;
    let flow = j.apply(ring, &grad)?;
    let mut residual = Vec::new();
    for (i, f) in flow.iter().enumerate() {
        let target = ring.total_derivative(&ring.import(&sys.flux[i])?)?;
        let diff = f - &target;
        if !diff.is_zero() {
            residual.push((i + 1, diff.to_string()));
        }
    }
    Ok(FlowCheck { holds: residual.is_empty(), residual })
}

/// `A = M / d` with `M` polynomial and `d` the square of the lcm of the flux denominators.
pub fn characteristic_fraction_free(sys: &HydroSystem) -> Result<(Matrix<Poly>, Poly)> {
    let mut l = Poly::one(&sys.vars);
    for f in &sys.flux {
        l = l.lcm(f.den())?;
    }
    let mut rows = Vec::with_capacity(sys.n);
    for f in &sys.flux {
        let s = l.exact_div(f.den())?;
        let s2 = &s * &s;
        let row: Vec<Poly> = (0..sys.n)
            .map(|j| &s2 * &(&(f.den() * &f.num().derivative(j)) - &(f.num() * &f.den().derivative(j))))
            .collect();
        rows.push(row);
    }
    Ok((Matrix::from_fn(sys.n, sys.n, |i, j| rows[i][j].clone()), &l * &l))
}

/// Numerators of `N^i_{jk} = A^p_j ∂_p A^i_k − A^p_k ∂_p A^i_j − A^i_p (∂_j A^p_k − ∂_k A^p_j)` over `d³`.
pub fn nijenhuis_numerators(m: &Matrix<Poly>, d: &Poly) -> Vec<Poly> {
    let n = m.rows();
    // ∂_p A = P_p / d².
    let dp: Vec<Matrix<Poly>> = (0..n)
        .map(|p| {
            let dd = d.derivative(p);
            m.map(|e| &(d * &e.derivative(p)) - &(e * &dd))
        })
        .collect();
    let zero = Poly::zero(d.vars());
    let mut out = vec![zero.clone(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in (j + 1)..n {
                let mut s = zero.clone();
                for p in 0..n {
                    s = &s + &(m.get(p, j) * dp[p].get(i, k));
                    s = &s - &(m.get(p, k) * dp[p].get(i, j));
                    s = &s - &(m.get(i, p) * &(dp[j].get(p, k) - dp[k].get(p, j)));
                }
                out[(i * n + k) * n + j] = -&s;
                out[(i * n + j) * n + k] = s;
            }
        }
    }
    out
}

/// Numerators of `H^i_{jk} = A^i_p A^p_q N^q_{jk} − A^i_p N^p_{qk} A^q_j − A^i_p N^p_{jq} A^q_k + N^i_{pq} A^p_j A^q_k`
/// over `d⁵`.
pub fn haantjes_numerators(m: &Matrix<Poly>, d: &Poly) -> Vec<Poly> {
    let n = m.rows();
    let nij = nijenhuis_numerators(m, d);
    let nt = |i: usize, j: usize, k: usize| &nij[(i * n + j) * n + k];
    let zero = Poly::zero(d.vars());
    let m2 = m.mul(m).expect("square");
    let mut out = vec![zero.clone(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in (j + 1)..n {
                let mut s = zero.clone();
                for p in 0..n {
                    s = &s + &(m2.get(i, p) * nt(p, j, k));
                    for q in 0..n {
                        s = &s - &(&(m.get(i, p) * nt(p, q, k)) * m.get(q, j));
                        s = &s - &(&(m.get(i, p) * nt(p, j, q)) * m.get(q, k));
                        s = &s + &(&(nt(i, p, q) * m.get(p, j)) * m.get(q, k));
                    }
                }
                out[(i * n + k) * n + j] = -&s;
                out[(i * n + j) * n + k] = s;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagonalisability {
    pub haantjes_vanishes: bool,
    /// Coefficients in the `u`-monomials of the Haantjes numerators, with factors of the
    /// denominator removed: polynomials in the parameters.
    pub conditions: Vec<String>,
    #[serde(skip)]
    pub condition_polys: Vec<Poly>,
}

pub fn is_diagonalisable(sys: &HydroSystem) -> Result<Diagonalisability> {
    let (m, d) = characteristic_fraction_free(sys)?;
    let mut h = haantjes_numerators(&m, &d);
    let base = d.primitive_integer().1;
    if !base.is_constant() {
        for comp in h.iter_mut().filter(|c| !c.is_zero()) {
            while let Ok(q) = comp.exact_div(&base) {
                *comp = q;
            }
        }
    }
    let coords: Vec<usize> = sys.vars.coordinates().collect();
    let mut conds: Vec<Poly> = Vec::new();
    for comp in &h {
        for c in comp.coeffs_wrt(&coords) {
            if c.is_zero() {
                continue;
            }
            let (_, prim) = c.primitive_integer();
            if !conds.contains(&prim) {
                conds.push(prim);
            }
        }
    }
    Ok(Diagonalisability {
        haantjes_vanishes: h.iter().all(|c| c.is_zero()),
        conditions: conds.iter().map(|c| c.to_string()).collect(),
        condition_polys: conds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearDegeneracy {
    pub holds: bool,
    /// Components of `Σ_k ∇c_k · A^k` where `det(λ − A) = λⁿ + Σ c_k λ^k`.
    pub field: Vec<String>,
}

pub fn is_linearly_degenerate(sys: &HydroSystem) -> Result<LinearDegeneracy> {
    let a = sys.characteristic_matrix();
    let n = sys.n;
    let coeffs = char_poly(&a)?;
    let zero = RatFunc::zero(&sys.vars);
    let mut field = vec![zero.clone(); n];
    let mut power = Matrix::identity(n, &zero);
    for c in coeffs.iter().take(n) {
        for (j, slot) in field.iter_mut().enumerate() {
            // (∇c · A^k)_j = Σ_p ∂_p c · (A^k)^p_j
            let mut s = zero.clone();
            for p in 0..n {
                s = &s + &(&c.derivative(p) * power.get(p, j));
            }
            *slot = &*slot + &s;
        }
        power = power.mul(&a)?;
    }
    Ok(LinearDegeneracy {
        holds: field.iter().all(|f| f.is_zero()),
        field: field.iter().map(|f| f.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoupled_system_is_diagonal_but_not_degenerate() {
        let s = HydroSystem::parse(&["u1^2/2", "u2^2/2", "u3^2/2"]).unwrap();
        assert!(is_diagonalisable(&s).unwrap().haantjes_vanishes);
        assert!(!is_linearly_degenerate(&s).unwrap().holds);
    }

    #[test]
    fn constant_coefficients_are_degenerate() {
        let s = HydroSystem::parse(&["u2", "u3", "u1 + 2*u2"]).unwrap();
        assert!(is_linearly_degenerate(&s).unwrap().holds);
        assert!(is_diagonalisable(&s).unwrap().haantjes_vanishes);
    }

    #[test]
    fn burgers_is_not_degenerate() {
        let s = HydroSystem::parse(&["1/2*u1^2"]).unwrap();
        assert!(!is_linearly_degenerate(&s).unwrap().holds);
    }

    /// Direct evaluation over rational functions.
    fn haantjes_oracle(a: &Matrix<RatFunc>) -> Vec<RatFunc> {
        let n = a.rows();
        let zero = RatFunc::zero(a.get(0, 0).vars());
        let da: Vec<Matrix<RatFunc>> = (0..n).map(|p| a.map(|e| e.derivative(p))).collect();
        let mut nij = vec![zero.clone(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = zero.clone();
                    for p in 0..n {
                        s = &s + &(a.get(p, j) * da[p].get(i, k));
                        s = &s - &(a.get(p, k) * da[p].get(i, j));
                        s = &s - &(a.get(i, p) * &(da[j].get(p, k) - da[k].get(p, j)));
                    }
                    nij[(i * n + j) * n + k] = s;
                }
            }
        }
        let nt = |i: usize, j: usize, k: usize| &nij[(i * n + j) * n + k];
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = zero.clone();
                    for p in 0..n {
                        for q in 0..n {
                            s = &s + &(&(a.get(i, p) * a.get(p, q)) * nt(q, j, k));
                            s = &s - &(&(a.get(i, p) * nt(p, q, k)) * a.get(q, j));
                            s = &s - &(&(a.get(i, p) * nt(p, j, q)) * a.get(q, k));
                            s = &s + &(&(nt(i, p, q) * a.get(p, j)) * a.get(q, k));
                        }
                    }
                    out.push(s);
                }
            }
        }
        out
    }

    #[test]
    fn fraction_free_haantjes_matches_direct_evaluation() {
        for flux in [
            ["u2", "u3", "u2^2 - u1*u3"],
            ["u2 + u3", "(u2*(u2 + u3) - 1)/u1", "u1"],
            ["u2", "(u2^2 + u3)/u1", "u1*u2/u3"],
        ] {
            let s = HydroSystem::parse(&flux).unwrap();
            let (m, d) = characteristic_fraction_free(&s).unwrap();
            assert_eq!(m.map(|e| RatFunc::new(e.clone(), d.clone()).unwrap()), s.characteristic_matrix());
            let d5 = d.pow(5);
            let got: Vec<RatFunc> =
                haantjes_numerators(&m, &d).into_iter().map(|h| RatFunc::new(h, d5.clone()).unwrap()).collect();
            assert_eq!(got, haantjes_oracle(&s.characteristic_matrix()), "{flux:?}");
        }
    }

    #[test]
    fn parameters_are_detected() {
        let s = HydroSystem::parse(&["alpha*u2", "u1/beta"]).unwrap();
        assert_eq!(s.vars().len(), 4);
    }
}

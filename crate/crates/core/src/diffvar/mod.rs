//! Differential polynomials in `x`, jets of `u`, antiderivatives `w^i = D⁻¹u^i`
//! and further nonlocal symbols `z_j` with stored `D z_j`.

mod hydro;

pub use hydro::*;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::monge::OperatorCoeffs;
use crate::poly::{parse_ratfunc, Poly, RatFunc, VarKind, VarTable};

pub const DEFAULT_MAX_ORDER: usize = 8;
const Z_POOL: usize = 24;

/// Elements are [`RatFunc`]s over the ring's table; coefficients may be rational in `u`.
#[derive(Debug, Clone)]
pub struct DiffRing {
    n: usize,
    max_order: usize,
    base: Arc<VarTable>,
    vars: Arc<VarTable>,
    /// `jets[i][k]` is the index of `u^i_k`.
    jets: Vec<Vec<usize>>,
    x: usize,
    w: Vec<usize>,
    z: Vec<usize>,
    defs: Vec<RatFunc>,
    memo: HashMap<RatFunc, usize>,
}

fn jet_name(i: usize, k: usize) -> String {
    format!("u{}{}", i + 1, "x".repeat(k))
}

impl DiffRing {
    /// Coordinates `u1..un`, the given parameters, and jets up to `max_order`.
    pub fn new<S: AsRef<str>>(n: usize, params: &[S], max_order: usize) -> Result<DiffRing> {
        let base = VarTable::coords_and_params(n, params);
        let mut extra: Vec<(String, VarKind)> = Vec::new();
        for k in 1..=max_order {
            for i in 0..n {
                extra.push((jet_name(i, k), VarKind::Parameter));
            }
        }
        extra.push(("x".into(), VarKind::Parameter));
        for i in 0..n {
            extra.push((format!("w{}", i + 1), VarKind::Parameter));
        }
        for j in 0..Z_POOL {
            extra.push((format!("z{}", j + 1), VarKind::Parameter));
        }
        let vars = base.extended(&extra)?;
        let idx = |name: &str| vars.index(name).expect("just added");
        let jets = (0..n).map(|i| (0..=max_order).map(|k| idx(&jet_name(i, k))).collect()).collect();
        let x = idx("x");
        let w = (0..n).map(|i| idx(&format!("w{}", i + 1))).collect();
        let z = (0..Z_POOL).map(|j| idx(&format!("z{}", j + 1))).collect();
        Ok(DiffRing { n, max_order, base, vars, jets, x, w, z, defs: Vec::new(), memo: HashMap::new() })
    }

    /// A ring whose parameters are the union of those of `tables`.
    pub fn covering(n: usize, tables: &[&Arc<VarTable>]) -> Result<DiffRing> {
        let mut params: Vec<String> = Vec::new();
        for t in tables {
            for p in t.parameters() {
                let name = t.name(p);
                if !params.iter().any(|q| q == name) {
                    params.push(name.to_string());
                }
            }
        }
        DiffRing::new(n, &params, DEFAULT_MAX_ORDER)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// `u` and parameters only.
    pub fn base(&self) -> &Arc<VarTable> {
        &self.base
    }

    pub fn parse(&self, text: &str) -> Result<RatFunc> {
        parse_ratfunc(text, &self.vars)
    }

    /// Moves `f` into the ring's table, matching variables by name.
    pub fn import(&self, f: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(f.num().rebased(&self.vars)?, f.den().rebased(&self.vars)?)
    }

    fn var(&self, idx: usize) -> RatFunc {
        RatFunc::from_poly(Poly::var(&self.vars, idx))
    }

    pub fn jet(&self, i: usize, k: usize) -> RatFunc {
        self.var(self.jets[i][k])
    }

    pub fn x(&self) -> RatFunc {
        self.var(self.x)
    }

    pub fn w(&self, i: usize) -> RatFunc {
        self.var(self.w[i])
    }

    /// Defining expressions `D z_j` of the symbols allocated so far.
    pub fn nonlocal_symbols(&self) -> Vec<(String, RatFunc)> {
        self.defs.iter().enumerate().map(|(j, d)| (self.vars.name(self.z[j]).to_string(), d.clone())).collect()
    }

    fn derivative_of_var(&self, v: usize) -> Result<RatFunc> {
        if v == self.x {
            return Ok(RatFunc::one(&self.vars));
        }
        if let Some(i) = self.w.iter().position(|&w| w == v) {
            return Ok(self.jet(i, 0));
        }
        if let Some(j) = self.z.iter().position(|&z| z == v) {
            return self
                .defs
                .get(j)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("unallocated symbol {}", self.vars.name(v))));
        }
        for i in 0..self.n {
            if let Some(k) = self.jets[i].iter().position(|&q| q == v) {
                if k == self.max_order {
                    return Err(Error::JetOrderExceeded(k + 1));
                }
                return Ok(self.jet(i, k + 1));
            }
        }
        // Parameters are constants.
        Ok(RatFunc::zero(&self.vars))
    }

    fn derivative_of_poly(&self, p: &Poly) -> Result<RatFunc> {
        let mut acc = RatFunc::zero(&self.vars);
        for v in p.used_vars() {
            let dv = self.derivative_of_var(v)?;
            if !dv.is_zero() {
                acc = &acc + &(&RatFunc::from_poly(p.derivative(v)) * &dv);
            }
        }
        Ok(acc)
    }

    /// The total `x`-derivative.
    pub fn total_derivative(&self, f: &RatFunc) -> Result<RatFunc> {
        let dn = self.derivative_of_poly(f.num())?;
        if f.den().is_constant() {
            return Ok(dn.scale(&f.den().constant_value().unwrap().recip()));
        }
        let dd = self.derivative_of_poly(f.den())?;
        let num = RatFunc::from_poly(f.num().clone());
        let den = RatFunc::from_poly(f.den().clone());
        Ok(&(&(&dn * &den) - &(&num * &dd)) / &den.pow(2))
    }

    pub fn total_derivative_n(&self, f: &RatFunc, times: usize) -> Result<RatFunc> {
        let mut out = f.clone();
        for _ in 0..times {
            out = self.total_derivative(&out)?;
        }
        Ok(out)
    }

    /// `D⁻¹f`: `x` for constants, `w^i` for `u^i`, otherwise a memoized symbol.
    pub fn antiderivative(&mut self, f: &RatFunc) -> Result<RatFunc> {
        if f.is_zero() {
            return Ok(f.clone());
        }
        let (c, prim) = f.num().primitive_integer();
        let key = RatFunc::new(prim, f.den().clone())?;
        if key.is_one() {
            return Ok(self.x().scale(&c));
        }
        for i in 0..self.n {
            if key == self.jet(i, 0) {
                return Ok(self.w(i).scale(&c));
            }
        }
        let j = match self.memo.get(&key) {
            Some(&j) => j,
            None => {
                let j = self.defs.len();
                if j == Z_POOL {
                    return Err(Error::Invalid("too many nonlocal symbols".into()));
                }
                self.defs.push(key.clone());
                self.memo.insert(key, j);
                j
            }
        };
        Ok(self.var(self.z[j]).scale(&c))
    }

    /// `δ/δu^k ∫ h dx`.
    pub fn variational_derivative(&mut self, h: &RatFunc, k: usize) -> Result<RatFunc> {
        let one = RatFunc::one(&self.vars);
        self.euler(&one, h, k)
    }

    /// Variational derivative of `∫ a·e dx` with `a` held fixed.
    fn euler(&mut self, a: &RatFunc, e: &RatFunc, k: usize) -> Result<RatFunc> {
        let used: Vec<usize> = {
            let mut u = e.num().used_vars();
            u.extend(e.den().used_vars());
            u.sort();
            u.dedup();
            u
        };
        // Σ_m (−D)^m (a ∂e/∂u^k_m), by Horner.
        let top = (0..=self.max_order).rev().find(|&m| used.contains(&self.jets[k][m]));
        let mut acc = RatFunc::zero(&self.vars);
        if let Some(top) = top {
            for m in (0..=top).rev() {
                let term = &e.derivative(self.jets[k][m]) * a;
                acc = &term - &self.total_derivative(&acc)?;
            }
        }
        if used.contains(&self.w[k]) {
            let inner = &e.derivative(self.w[k]) * a;
            acc = &acc - &self.antiderivative(&inner)?;
        }
        for j in 0..self.defs.len() {
            if used.contains(&self.z[j]) {
                let inner = &e.derivative(self.z[j]) * a;
                let y = self.antiderivative(&inner)?;
                let def = self.defs[j].clone();
                acc = &acc - &self.euler(&y, &def, k)?;
            }
        }
        Ok(acc)
    }

    /// True when no `w` or `z` symbol occurs.
    pub fn is_local(&self, f: &RatFunc) -> bool {
        let nonlocal = |p: &Poly| p.used_vars().iter().any(|v| self.w.contains(v) || self.z.contains(v));
        !nonlocal(f.num()) && !nonlocal(f.den())
    }
}

/// One factor of a composition chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// Multiplication by a function of `u`.
    Mul(RatFunc),
    /// Multiplication by `u^k_x`.
    Ux(usize),
    D,
}

/// Factors applied right to left.
pub type Chain = Vec<Factor>;

/// `D ∘ (entries) ∘ D` with each entry a sum of chains.
#[derive(Debug, Clone)]
pub struct OperatorExpr {
    n: usize,
    entries: Vec<Vec<Vec<Chain>>>,
}

impl OperatorExpr {
    pub fn new(n: usize, entries: Vec<Vec<Vec<Chain>>>) -> Result<Self> {
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("operator entries must be {n}x{n}")));
        }
        Ok(OperatorExpr { n, entries })
    }

    /// `D(g^{ij} D + c^{ij}_k u^k_x)D`.
    pub fn from_coeffs(coeffs: &OperatorCoeffs) -> Self {
        let n = coeffs.ginv.rows();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut chains = Vec::new();
                        let g = coeffs.ginv.get(i, j);
                        if !g.is_zero() {
                            chains.push(vec![Factor::Mul(g.clone()), Factor::D]);
                        }
                        for k in 0..n {
                            let c = coeffs.c.raised(i, j, k);
                            if !c.is_zero() {
                                chains.push(vec![Factor::Mul(c.clone()), Factor::Ux(k)]);
                            }
                        }
                        chains
                    })
                    .collect()
            })
            .collect();
        OperatorExpr { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Chain] {
        &self.entries[i][j]
    }

    fn apply_chain(ring: &DiffRing, chain: &Chain, f: &RatFunc) -> Result<RatFunc> {
        let mut out = f.clone();
        for factor in chain.iter().rev() {
            out = match factor {
                Factor::Mul(m) => &ring.import(m)? * &out,
                Factor::Ux(k) => &ring.jet(*k, 1) * &out,
                Factor::D => ring.total_derivative(&out)?,
            };
        }
        Ok(out)
    }

    fn apply_entry(ring: &DiffRing, chains: &[Chain], f: &RatFunc) -> Result<RatFunc> {
        let mut acc = RatFunc::zero(ring.vars());
        for c in chains {
            acc = &acc + &Self::apply_chain(ring, c, f)?;
        }
        Ok(acc)
    }

    /// `J ξ`; the result must be local.
    pub fn apply(&self, ring: &DiffRing, xi: &[RatFunc]) -> Result<Vec<RatFunc>> {
        if xi.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} components for an operator of size {}",
                xi.len(),
                self.n
            )));
        }
        let inner: Vec<RatFunc> = xi.iter().map(|f| ring.total_derivative(f)).collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut acc = RatFunc::zero(ring.vars());
            for (j, f) in inner.iter().enumerate() {
                acc = &acc + &Self::apply_entry(ring, &self.entries[i][j], f)?;
            }
            let r = ring.total_derivative(&acc)?;
            if !ring.is_local(&r) {
                return Err(Error::NonlocalResidue(format!("component {}: {r}", i + 1)));
            }
            out.push(r);
        }
        Ok(out)
    }

    /// `(a, b)` with entry `= a D + b` for first-order entries, read off from the action on `1` and `x`.
    pub fn symbols(&self, ring: &DiffRing) -> Result<(Matrix<RatFunc>, Matrix<RatFunc>)> {
        let zero = RatFunc::zero(ring.vars());
        let mut a = Matrix::zeros(self.n, self.n, &zero);
        let mut b = Matrix::zeros(self.n, self.n, &zero);
        let one = RatFunc::one(ring.vars());
        let x = ring.x();
        for i in 0..self.n {
            for j in 0..self.n {
                let bij = Self::apply_entry(ring, &self.entries[i][j], &one)?;
                let aij = &Self::apply_entry(ring, &self.entries[i][j], &x)? - &(&bij * &x);
                a.set(i, j, aij);
                b.set(i, j, bij);
            }
        }
        Ok((a, b))
    }

    /// Inverse of the leading coefficient matrix, over `u` and the parameters.
    pub fn generating_metric(&self, ring: &DiffRing) -> Result<Matrix<RatFunc>> {
        let (a, _) = self.symbols(ring)?;
        let base = ring.base();
        let a = a.try_map(|f| RatFunc::new(f.num().rebased(base)?, f.den().rebased(base)?))?;
        a.inverse()
    }
}

/// A density `h(x, u, u_x, …, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianFunctional {
    pub density: RatFunc,
}

impl HamiltonianFunctional {
    pub fn parse(ring: &DiffRing, text: &str) -> Result<Self> {
        Ok(HamiltonianFunctional { density: ring.parse(text)? })
    }

    pub fn gradient(&self, ring: &mut DiffRing) -> Result<Vec<RatFunc>> {
        (0..ring.n()).map(|k| ring.variational_derivative(&self.density, k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rational;

    fn ring() -> DiffRing {
        DiffRing::new(3, &["c"], 6).unwrap()
    }

    #[test]
    fn derivative_basics() {
        let r = ring();
        let d = |s: &str| r.total_derivative(&r.parse(s).unwrap()).unwrap();
        assert_eq!(d("x"), r.parse("1").unwrap());
        assert_eq!(d("w1*w3"), r.parse("u1*w3 + w1*u3").unwrap());
        assert_eq!(d("x*u1*w2"), r.parse("u1*w2 + x*u1x*w2 + x*u1*u2").unwrap());
        assert_eq!(d("1/u1"), r.parse("-u1x/u1^2").unwrap());
    }

    #[test]
    fn top_jet_cannot_be_differentiated() {
        let r = ring();
        assert_eq!(r.total_derivative(&r.parse("u2xxxxxx").unwrap()), Err(Error::JetOrderExceeded(7)));
    }

    #[test]
    fn simple_variational_derivatives() {
        let mut r = ring();
        let h = r.parse("1/2*u1^2").unwrap();
        assert_eq!(r.variational_derivative(&h, 0).unwrap(), r.parse("u1").unwrap());
        let h = r.parse("1/2*u1x^2").unwrap();
        assert_eq!(r.variational_derivative(&h, 0).unwrap(), r.parse("-u1xx").unwrap());
    }

    #[test]
    fn nonlocal_variational_derivative() {
        let mut r = ring();
        let h = r.parse("-w1*w3 + x*u1*w2").unwrap();
        let d3 = r.variational_derivative(&h, 2).unwrap();
        let syms = r.nonlocal_symbols();
        assert_eq!(syms.len(), 1);
        assert_eq!(syms[0].1, r.parse("w1").unwrap());
        assert_eq!(d3, r.parse(&syms[0].0).unwrap());
        assert_eq!(r.total_derivative(&d3).unwrap(), r.parse("w1").unwrap());
    }

    #[test]
    fn antiderivatives_are_memoized_up_to_scale() {
        let mut r = ring();
        let a = r.antiderivative(&r.parse("w1*u2").unwrap()).unwrap();
        let b = r.antiderivative(&r.parse("-3*w1*u2").unwrap()).unwrap();
        assert_eq!(b, a.scale(&Rational::from_int(-3)));
        assert_eq!(r.nonlocal_symbols().len(), 1);
        assert_eq!(r.antiderivative(&r.parse("u3").unwrap()).unwrap(), r.w(2));
    }

    #[test]
    fn third_derivative_operator() {
        let r = ring();
        let id = OperatorExpr::new(
            3,
            (0..3).map(|i| (0..3).map(|j| if i == j { vec![vec![Factor::D]] } else { vec![] }).collect()).collect(),
        )
        .unwrap();
        let xi: Vec<RatFunc> = (0..3).map(|i| r.jet(i, 0)).collect();
        let out = id.apply(&r, &xi).unwrap();
        for (i, o) in out.iter().enumerate() {
            assert_eq!(o, &r.jet(i, 3));
        }
    }

    #[test]
    fn nonlocal_residue_is_reported() {
        let r = ring();
        let id = OperatorExpr::new(
            3,
            (0..3).map(|i| (0..3).map(|j| if i == j { vec![vec![Factor::D]] } else { vec![] }).collect()).collect(),
        )
        .unwrap();
        let xi = vec![r.parse("w1*w2").unwrap(), r.parse("0").unwrap(), r.parse("0").unwrap()];
        assert!(matches!(id.apply(&r, &xi), Err(Error::NonlocalResidue(_))));
    }
}

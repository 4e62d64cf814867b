//! Bivectors in Λ²V, their wedge products in Λ⁴V, Plücker relations, the
//! King condition on φ, and the normal form of a quadratic complex.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{rank_and_nullspace, rank_of, solve_linear, Matrix, Ring};
use crate::poly::{parse_poly, Poly, RatFunc, Rational, VarKind, VarTable};

fn rebase(p: &Poly, vars: &Arc<VarTable>) -> Poly {
    p.rebased(vars).expect("table contains every variable")
}

/// Lexicographic basis `e_a∧e_b`, `a < b`, of Λ²V with `dim V = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerBasis {
    dim: usize,
    pairs: Vec<(usize, usize)>,
}

impl PluckerBasis {
    /// Basis for `n` components, so `V` has dimension `n + 1`.
    pub fn new(n: usize) -> Self {
        Self::for_dim(n + 1)
    }

    pub fn for_dim(dim: usize) -> Self {
        let mut pairs = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                pairs.push((a, b));
            }
        }
        PluckerBasis { dim, pairs }
    }

    pub fn n(&self) -> usize {
        self.dim - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Zero-based index pairs.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Position and sign of `e_a∧e_b` (zero-based), using `p^{ba} = −p^{ab}`.
    pub fn index(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        if a == b || a >= self.dim || b >= self.dim {
            return None;
        }
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        // Pairs with first index < lo come first.
        let before: usize = (0..lo).map(|i| self.dim - 1 - i).sum();
        Some((before + hi - lo - 1, s))
    }

    /// `p12`, `p34`, … (one-based).
    pub fn label(&self, k: usize) -> String {
        let (a, b) = self.pairs[k];
        format!("p{}{}", a + 1, b + 1)
    }
}

/// Zero-based 4-subsets of `0..dim` in lexicographic order.
pub fn four_subsets(dim: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            for c in b + 1..dim {
                for d in c + 1..dim {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Element of Λ²V with coefficients in a parameter ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector {
    dim: usize,
    coeffs: Vec<Poly>,
}

impl Bivector {
    pub fn zero(dim: usize, vars: &Arc<VarTable>) -> Self {
        Bivector { dim, coeffs: vec![Poly::zero(vars); dim * (dim - 1) / 2] }
    }

    /// Builds `Σ c·e_a∧e_b` from one-based `(a, b, c)` triples.
    pub fn from_terms(dim: usize, terms: &[(usize, usize, Poly)], vars: &Arc<VarTable>) -> Result<Self> {
        let basis = PluckerBasis::for_dim(dim);
        let mut v = Self::zero(dim, vars);
        for (a, b, c) in terms {
            if *a == 0 || *b == 0 {
                return Err(Error::Invalid("bivector indices are one-based".into()));
            }
            let (k, s) = basis
                .index(a - 1, b - 1)
                .ok_or_else(|| Error::DimensionMismatch(format!("e{a}∧e{b} in dimension {dim}")))?;
            let c = c.lifted(vars);
            v.coeffs[k] = if s > 0 { &v.coeffs[k] + &c } else { &v.coeffs[k] - &c };
        }
        Ok(v)
    }

    /// Like [`Bivector::from_terms`] with coefficients given as expressions.
    pub fn parse<S: AsRef<str>>(dim: usize, terms: &[(usize, usize, S)], vars: &Arc<VarTable>) -> Result<Self> {
        let terms =
            terms.iter().map(|(a, b, c)| Ok((*a, *b, parse_poly(c.as_ref(), vars)?))).collect::<Result<Vec<_>>>()?;
        Self::from_terms(dim, &terms, vars)
    }

    /// `e_a∧e_b` (one-based).
    pub fn e(dim: usize, a: usize, b: usize, vars: &Arc<VarTable>) -> Self {
        Self::from_terms(dim, &[(a, b, Poly::one(vars))], vars).expect("valid indices")
    }

    pub fn from_coeffs(dim: usize, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != dim * (dim - 1) / 2 {
            return Err(Error::DimensionMismatch(format!("{} coefficients for dimension {dim}", coeffs.len())));
        }
        Ok(Bivector { dim, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.coeffs[0].vars()
    }

    /// Coefficient of `e_a∧e_b` (zero-based, antisymmetric).
    pub fn at(&self, a: usize, b: usize) -> Poly {
        match PluckerBasis::for_dim(self.dim).index(a, b) {
            Some((k, 1)) => self.coeffs[k].clone(),
            Some((k, _)) => -&self.coeffs[k],
            None => Poly::zero(self.vars()),
        }
    }

    /// Skew-symmetric matrix with entries `A_ab = coefficient of e_a∧e_b`.
    pub fn to_matrix(&self) -> Matrix<Poly> {
        Matrix::from_fn(self.dim, self.dim, |a, b| self.at(a, b))
    }

    pub fn from_matrix(m: &Matrix<Poly>) -> Result<Self> {
        if !m.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let basis = PluckerBasis::for_dim(m.rows());
        Ok(Bivector { dim: m.rows(), coeffs: basis.pairs().iter().map(|&(a, b)| m.get(a, b).clone()).collect() })
    }

    pub fn lifted(&self, vars: &Arc<VarTable>) -> Bivector {
        Bivector { dim: self.dim, coeffs: self.coeffs.iter().map(|c| c.lifted(vars)).collect() }
    }

    pub fn rebased(&self, vars: &Arc<VarTable>) -> Bivector {
        Bivector { dim: self.dim, coeffs: self.coeffs.iter().map(|c| rebase(c, vars)).collect() }
    }

    pub fn specialize(&self, values: &[(usize, Rational)]) -> Bivector {
        Bivector { dim: self.dim, coeffs: self.coeffs.iter().map(|c| c.specialize(values)).collect() }
    }

    /// One-based `[a, b, coefficient]` triples of the nonzero coefficients.
    pub fn to_triples(&self) -> Vec<(usize, usize, String)> {
        let basis = PluckerBasis::for_dim(self.dim);
        basis
            .pairs()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(a, b), c)| (a + 1, b + 1, c.to_string()))
            .collect()
    }
}

/// Element of Λ⁴V in the basis of [`four_subsets`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourVector {
    dim: usize,
    coeffs: Vec<Poly>,
}

impl FourVector {
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// `A ∧ B`; symmetric in its arguments.
pub fn wedge_bivectors(a: &Bivector, b: &Bivector) -> Result<FourVector> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(format!("wedge of dimensions {} and {}", a.dim, b.dim)));
    }
    let coeffs = four_subsets(a.dim)
        .into_iter()
        .map(|[i, j, k, l]| {
            let t = |p: (usize, usize), q: (usize, usize)| &a.at(p.0, p.1) * &b.at(q.0, q.1);
            let s = &(&(&t((i, j), (k, l)) - &t((i, k), (j, l))) + &t((i, l), (j, k)));
            let s = &(s + &t((j, k), (i, l))) - &t((j, l), (i, k));
            &s + &t((k, l), (i, j))
        })
        .collect();
    Ok(FourVector { dim: a.dim, coeffs })
}

/// An n-dimensional subspace of Λ²V^{n+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceA {
    basis: Vec<Bivector>,
}

impl SubspaceA {
    pub fn new(basis: Vec<Bivector>) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::DimensionMismatch("empty subspace".into()));
        };
        let dim = first.dim;
        if basis.iter().any(|b| b.dim != dim) || basis.len() + 1 != dim {
            return Err(Error::DimensionMismatch(format!(
                "need {} bivectors in dimension {dim}, got {}",
                dim - 1,
                basis.len()
            )));
        }
        let mut vars = first.vars().clone();
        for b in &basis[1..] {
            vars = vars.merge(b.vars())?;
        }
        let basis: Vec<Bivector> = basis.iter().map(|b| b.rebased(&vars)).collect();
        let m = Matrix::from_rows(basis.iter().map(|b| b.coeffs.clone()).collect())?;
        if rank_of(&m) < basis.len() {
            return Err(Error::DependentSubspace);
        }
        Ok(SubspaceA { basis })
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.basis[0].dim
    }

    pub fn basis(&self) -> &[Bivector] {
        &self.basis
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.basis[0].vars()
    }

    /// Same subspace over a table containing every parameter used.
    pub fn rebased(&self, vars: &Arc<VarTable>) -> SubspaceA {
        SubspaceA { basis: self.basis.iter().map(|b| b.rebased(vars)).collect() }
    }

    pub fn specialize(&self, values: &[(usize, Rational)]) -> Result<SubspaceA> {
        SubspaceA::new(self.basis.iter().map(|b| b.specialize(values)).collect())
    }

    /// Substitutes parameters by name.
    pub fn with_params(&self, values: &[(&str, Rational)]) -> Result<SubspaceA> {
        let vals =
            values.iter().map(|(name, v)| Ok((self.vars().require(name)?, v.clone()))).collect::<Result<Vec<_>>>()?;
        self.specialize(&vals)
    }
}

/// Symmetric form φ on the subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiForm {
    m: Matrix<Poly>,
}

impl PhiForm {
    pub fn new(m: Matrix<Poly>) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::Invalid("phi must be symmetric".into()));
        }
        Ok(PhiForm { m })
    }

    pub fn matrix(&self) -> &Matrix<Poly> {
        &self.m
    }

    pub fn get(&self, b: usize, c: usize) -> &Poly {
        self.m.get(b, c)
    }

    pub fn det(&self) -> Poly {
        crate::linalg::det_fraction_free(&self.m).expect("square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// `φ_{βγ} A^β ∧ A^γ`.
    pub fn king_image(&self, a: &SubspaceA) -> Result<FourVector> {
        let n = a.n();
        let vars = a.vars().merge(self.m.vars().unwrap())?;
        let a = a.rebased(&vars);
        let dim = a.dim();
        let mut acc = vec![Poly::zero(&vars); four_subsets(dim).len()];
        for b in 0..n {
            for c in 0..n {
                let phi = rebase(self.m.get(b, c), &vars);
                if phi.is_zero() {
                    continue;
                }
                let w = wedge_bivectors(&a.basis[b], &a.basis[c])?;
                for (x, y) in acc.iter_mut().zip(&w.coeffs) {
                    *x = &*x + &(&phi * y);
                }
            }
        }
        Ok(FourVector { dim, coeffs: acc })
    }
}

/// Solution space of the King condition `φ_{βγ} A^β∧A^γ = 0`.
#[derive(Debug, Clone)]
pub struct PhiSpace {
    /// One row per 4-subset, one column per unknown `φ_{βγ}` with `β ≤ γ`.
    pub king_matrix: Matrix<Poly>,
    pub rank: usize,
    pub basis: Vec<PhiForm>,
}

impl PhiSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ φ_k · basis_k` with fresh parameters named `prefix1, prefix2, …`.
    pub fn generic(&self, prefix: &str) -> Result<PhiForm> {
        let first = self.basis.first().ok_or_else(|| Error::Invalid("the phi space is zero".into()))?;
        let base = first.m.vars().unwrap();
        let extra: Vec<(String, VarKind)> =
            (1..=self.dim()).map(|k| (format!("{prefix}{k}"), VarKind::Parameter)).collect();
        let vars = base.extended(&extra)?;
        let n = first.m.rows();
        let mut m = Matrix::zeros(n, n, &Poly::zero(&vars));
        for (k, phi) in self.basis.iter().enumerate() {
            let t = Poly::var(&vars, base.len() + k);
            m = m.add(&phi.m.lifted(&vars).scale_by(&t))?;
        }
        PhiForm::new(m)
    }

    /// True when `phi` lies in the span (over the parameter fraction field).
    pub fn contains(&self, phi: &PhiForm) -> bool {
        let Some(first) = self.basis.first() else {
            return phi.m.is_zero();
        };
        let Ok(vars) = first.m.vars().unwrap().merge(phi.m.vars().unwrap()) else {
            return false;
        };
        let unknowns = upper_pairs(phi.m.rows());
        let row = |f: &PhiForm| unknowns.iter().map(|&(i, j)| rebase(f.m.get(i, j), &vars)).collect::<Vec<_>>();
        let mut rows: Vec<Vec<Poly>> = self.basis.iter().map(row).collect();
        let r0 = rank_of(&Matrix::from_rows(rows.clone()).unwrap());
        rows.push(row(phi));
        rank_of(&Matrix::from_rows(rows).unwrap()) == r0
    }
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 0..n {
        for c in b..n {
            out.push((b, c));
        }
    }
    out
}

/// Basis of the admissible φ (linear King condition), with cleared denominators.
pub fn solve_phi(a: &SubspaceA) -> Result<PhiSpace> {
    let n = a.n();
    let unknowns = upper_pairs(n);
    let subsets = four_subsets(a.dim());
    let vars = a.vars().clone();
    let mut m = Matrix::zeros(subsets.len(), unknowns.len(), &Poly::zero(&vars));
    for (col, &(b, c)) in unknowns.iter().enumerate() {
        let w = wedge_bivectors(&a.basis[b], &a.basis[c])?;
        let mult = if b == c { Rational::one() } else { Rational::from_int(2) };
        for (row, x) in w.coeffs.iter().enumerate() {
            m.set(row, col, x.scale(&mult));
        }
    }
    let (rank, kernel) = if subsets.is_empty() {
        let z = Poly::zero(&vars);
        let basis = (0..unknowns.len())
            .map(|k| (0..unknowns.len()).map(|j| if j == k { z.one_like() } else { z.clone() }).collect())
            .collect();
        (0, basis)
    } else {
        rank_and_nullspace(&m)
    };
    let basis = kernel
        .into_iter()
        .map(|v| {
            let mut phi = Matrix::zeros(n, n, &Poly::zero(&vars));
            for (&(b, c), x) in unknowns.iter().zip(&v) {
                phi.set(b, c, x.clone());
                phi.set(c, b, x.clone());
            }
            PhiForm::new(phi)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiSpace { king_matrix: m, rank, basis })
}

/// Symmetric form on Λ²V in the lexicographic Plücker basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexForm {
    n: usize,
    q: Matrix<Poly>,
}

impl ComplexForm {
    pub fn new(n: usize, q: Matrix<Poly>) -> Result<Self> {
        let size = PluckerBasis::new(n).len();
        if q.rows() != size || q.cols() != size {
            return Err(Error::DimensionMismatch(format!("complex for n={n} needs a {size}x{size} matrix")));
        }
        if !q.is_symmetric() {
            return Err(Error::Invalid("complex form must be symmetric".into()));
        }
        Ok(ComplexForm { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<Poly> {
        &self.q
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.q.vars().expect("nonempty")
    }

    /// `Q = Σ φ_{βγ} v^β (v^γ)ᵗ` with `v^β = −2·A^β`, so that `p Q pᵗ = φ tr(A^β P) tr(A^γ P)`.
    pub fn from_subspace(a: &SubspaceA, phi: &PhiForm) -> Result<Self> {
        let vars = a.vars().merge(phi.m.vars().unwrap())?;
        let a = a.rebased(&vars);
        let size = PluckerBasis::new(a.n()).len();
        let vecs: Vec<Vec<Poly>> =
            a.basis.iter().map(|b| b.coeffs.iter().map(|c| c.scale(&Rational::from_int(-2))).collect()).collect();
        let q = Matrix::from_fn(size, size, |i, j| {
            let mut acc = Poly::zero(&vars);
            for (b, vb) in vecs.iter().enumerate() {
                for (c, vc) in vecs.iter().enumerate() {
                    let f = phi.m.get(b, c);
                    if !f.is_zero() && !vb[i].is_zero() && !vc[j].is_zero() {
                        acc = &acc + &(&(&rebase(f, &vars) * &vb[i]) * &vc[j]);
                    }
                }
            }
            acc
        });
        ComplexForm::new(a.n(), q)
    }

    pub fn specialize(&self, values: &[(usize, Rational)]) -> ComplexForm {
        ComplexForm { n: self.n, q: self.q.specialize(values) }
    }

    /// Rank over the parameter fraction field.
    pub fn rank(&self) -> usize {
        rank_of(&self.q)
    }
}

/// One Plücker relation `p Ω pᵗ = Pf` for a 4-subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannRelation {
    /// Zero-based indices.
    pub subset: [usize; 4],
    pub omega: Matrix<Rational>,
}

/// The `C(n+1, 4)` Plücker relations; each `p Ω pᵗ` is the Pfaffian of the indexed principal 4x4 minor.
pub fn plucker_relations(n: usize) -> Vec<GrassmannRelation> {
    let basis = PluckerBasis::new(n);
    let half = Rational::new(1, 2);
    four_subsets(n + 1)
        .into_iter()
        .map(|s @ [a, b, c, d]| {
            let mut omega = Matrix::zeros(basis.len(), basis.len(), &Rational::zero());
            for (p, q, sign) in [((a, b), (c, d), 1), ((a, c), (b, d), -1), ((a, d), (b, c), 1)] {
                let i = basis.index(p.0, p.1).unwrap().0;
                let j = basis.index(q.0, q.1).unwrap().0;
                let v = if sign > 0 { half.clone() } else { -&half };
                omega.set(i, j, v.clone());
                omega.set(j, i, v);
            }
            GrassmannRelation { subset: s, omega }
        })
        .collect()
}

/// Image of `Q` under `S²(Λ²V) → Λ⁴V`, `Q ↦ Σ Q_IJ e_I∧e_J`.
pub fn kernel_map(q: &ComplexForm) -> Vec<Poly> {
    let basis = PluckerBasis::new(q.n);
    four_subsets(q.n + 1)
        .into_iter()
        .map(|[a, b, c, d]| {
            let e = |p: (usize, usize), r: (usize, usize)| {
                q.q.get(basis.index(p.0, p.1).unwrap().0, basis.index(r.0, r.1).unwrap().0).clone()
            };
            let s = &(&e((a, b), (c, d)) - &e((a, c), (b, d))) + &e((a, d), (b, c));
            s.scale(&Rational::from_int(2))
        })
        .collect()
}

pub fn in_normal_form(q: &ComplexForm) -> bool {
    kernel_map(q).iter().all(|p| p.is_zero())
}

/// The representative `Q + c_α Ω^α` in the kernel of `S²(Λ²V) → Λ⁴V`.
pub fn normal_form_q(q: &ComplexForm) -> Result<ComplexForm> {
    let rels = plucker_relations(q.n);
    if rels.is_empty() {
        return Ok(q.clone());
    }
    let vars = q.vars().clone();
    let rhs: Vec<RatFunc> = kernel_map(q).into_iter().map(|p| RatFunc::from_poly(-&p)).collect();
    let images: Vec<Vec<Poly>> =
        rels.iter().map(|r| kernel_map(&ComplexForm { n: q.n, q: r.omega.to_poly(&vars) })).collect();
    let system = Matrix::from_fn(rels.len(), rels.len(), |i, j| RatFunc::from_poly(images[j][i].clone()));
    let (c, kernel) = solve_linear(&system, &rhs, &RatFunc::zero(&vars))?
        .ok_or_else(|| Error::NormalFormSingular("inconsistent system".into()))?;
    if !kernel.is_empty() {
        return Err(Error::NormalFormSingular(format!("{} free constants", kernel.len())));
    }
    let mut out = q.q.clone();
    for (r, cr) in rels.iter().zip(&c) {
        let cr = cr.to_poly().ok_or_else(|| Error::NormalFormSingular("non-polynomial constant".into()))?;
        if cr.is_zero() {
            continue;
        }
        out = out.add(&r.omega.to_poly(&vars).scale_by(&cr))?;
    }
    let nf = ComplexForm { n: q.n, q: out };
    debug_assert!(in_normal_form(&nf));
    Ok(nf)
}

/// Rank-n criterion on the normal form.
pub fn is_hamiltonian_complex(q: &ComplexForm) -> Result<bool> {
    let nf = normal_form_q(q)?;
    Ok(in_normal_form(&nf) && nf.rank() == q.n)
}

/// `tr(Q Ω^{α*}) = 0` for every relation of the dual Grassmannian.
///
/// The dual relation uses the same index pattern in the dual basis, so the
/// trace pairs `Q_IJ` with `Ω^α_IJ` entrywise.
pub fn apolarity_traces(q: &ComplexForm) -> Vec<Poly> {
    let vars = q.vars().clone();
    plucker_relations(q.n)
        .iter()
        .map(|r| {
            let mut acc = Poly::zero(&vars);
            for (x, w) in q.q.entries().iter().zip(r.omega.entries()) {
                if !w.is_zero() {
                    acc = &acc + &x.scale(w);
                }
            }
            acc
        })
        .collect()
}

pub fn apolarity_check(q: &ComplexForm) -> bool {
    apolarity_traces(q).iter().all(|p| p.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Arc<VarTable> {
        VarTable::params_only::<&str>(&[])
    }

    #[test]
    fn index_matches_enumeration() {
        let b = PluckerBasis::new(4);
        for (k, &(x, y)) in b.pairs().iter().enumerate() {
            assert_eq!(b.index(x, y), Some((k, 1)));
            assert_eq!(b.index(y, x), Some((k, -1)));
        }
        assert_eq!(b.label(0), "p12");
    }

    #[test]
    fn wedge_basics() {
        let v = t();
        let e = |a, b| Bivector::e(4, a, b, &v);
        assert!(wedge_bivectors(&e(1, 2), &e(1, 3)).unwrap().is_zero());
        let w = wedge_bivectors(&e(1, 2), &e(3, 4)).unwrap();
        assert!(w.coeffs()[0].is_one());
        assert_eq!(w, wedge_bivectors(&e(3, 4), &e(1, 2)).unwrap());
    }

    #[test]
    fn relation_counts() {
        assert_eq!(plucker_relations(2).len(), 0);
        assert_eq!(plucker_relations(3).len(), 1);
        assert_eq!(plucker_relations(4).len(), 5);
        assert_eq!(plucker_relations(5).len(), 15);
    }

    #[test]
    fn matrix_view_round_trip() {
        let v = t();
        let b = Bivector::from_terms(
            5,
            &[(1, 2, Poly::one(&v)), (4, 5, Poly::from_int(&v, 3)), (3, 1, Poly::from_int(&v, 2))],
            &v,
        )
        .unwrap();
        let m = b.to_matrix();
        assert!(m.is_skew_symmetric());
        assert_eq!(Bivector::from_matrix(&m).unwrap(), b);
        assert_eq!(b.at(0, 2), Poly::from_int(&v, -2));
    }

    #[test]
    fn dependent_subspace_rejected() {
        let v = t();
        let e = |a, b| Bivector::e(3, a, b, &v);
        assert_eq!(SubspaceA::new(vec![e(1, 2), e(1, 2)]), Err(Error::DependentSubspace));
    }

    #[test]
    fn zero_complex_is_not_hamiltonian() {
        let z = Matrix::zeros(6, 6, &Poly::zero(&t()));
        assert!(!is_hamiltonian_complex(&ComplexForm::new(3, z).unwrap()).unwrap());
    }
}

//! Exact sparse multivariate polynomials over the rationals.
//!
//! Terms are kept sorted in descending graded-lexicographic order (leading term
//! first) with no zero coefficients, so structural equality is polynomial
//! identity.

mod gcd;
mod parse;
mod ratfunc;
mod rational;
mod sqrt;
mod univariate;
mod vars;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use parse::{parse_expr, parse_poly, parse_ratfunc, scan_identifiers};
pub use ratfunc::RatFunc;
pub use rational::{rational_gcd, Rational};
pub use sqrt::{poly_sqrt, SqrtVerdict};
pub use univariate::{rational_roots, squarefree_factor, UniPoly};
pub use vars::{VarKind, VarTable};

pub(crate) use gcd::gcd_many;
pub(crate) use vars::common_table;

use crate::error::{Error, Result};

/// Exponent vector with its cached total degree. The derived order is graded
/// lexicographic: total degree first, then exponents with the first variable
/// most significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: vec![0; nvars] }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { deg, exps }
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { deg: e as u32, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial { deg: other.deg - self.deg, exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    fn padded(&self, nvars: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.resize(nvars, 0);
        Monomial { deg: self.deg, exps }
    }

    fn is_one(&self) -> bool {
        self.deg == 0
    }
}

#[derive(Clone)]
pub struct Poly {
    vars: Arc<VarTable>,
    terms: Vec<(Monomial, Rational)>,
}

/// Which ring operation `poly_arith` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `p op q` with an explicit error on incompatible variable tables.
pub fn poly_arith(p: &Poly, q: &Poly, op: ArithOp) -> Result<Poly> {
    let vars = common_table(&p.vars, &q.vars)?;
    let (p, q) = (p.lifted(&vars), q.lifted(&vars));
    Ok(match op {
        ArithOp::Add => p.add_same(&q, false),
        ArithOp::Sub => p.add_same(&q, true),
        ArithOp::Mul => p.mul_same(&q),
    })
}

impl Poly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Poly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(vars);
        }
        Poly { vars: vars.clone(), terms: vec![(Monomial::one(vars.len()), c)] }
    }

    pub fn from_int(vars: &Arc<VarTable>, c: i64) -> Self {
        Self::constant(vars, Rational::from_int(c))
    }

    pub fn var(vars: &Arc<VarTable>, i: usize) -> Self {
        Poly { vars: vars.clone(), terms: vec![(Monomial::var(vars.len(), i, 1), Rational::one())] }
    }

    pub fn var_named(vars: &Arc<VarTable>, name: &str) -> Result<Self> {
        Ok(Self::var(vars, vars.require(name)?))
    }

    pub fn monomial(vars: &Arc<VarTable>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.exps.len(), vars.len());
        if c.is_zero() {
            return Self::zero(vars);
        }
        Poly { vars: vars.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(vars: &Arc<VarTable>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.exps.len(), vars.len());
            *acc.entry(m).or_insert_with(Rational::zero) += &c;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &Arc<VarTable>, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { vars: vars.clone(), terms }
    }

    fn from_sorted(vars: &Arc<VarTable>, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { vars: vars.clone(), terms }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.deg)
    }

    /// Total degree counting only the listed variables.
    pub fn degree_in_vars(&self, idx: &[usize]) -> Option<u32> {
        self.terms.iter().map(|(m, _)| idx.iter().map(|&i| m.exps[i] as u32).sum()).max()
    }

    /// Total degree in the coordinate variables of the table.
    pub fn coordinate_degree(&self) -> Option<u32> {
        let idx: Vec<usize> = self.vars.coordinates().collect();
        self.degree_in_vars(&idx)
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m.exps[var]).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.deg).min()
    }

    /// Indices of variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.terms.iter().any(|(m, _)| m.exps[i] > 0)).collect()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps[var] > 0)
    }

    /// True when no coordinate variable occurs (parameters only).
    pub fn is_coordinate_free(&self) -> bool {
        self.vars.coordinates().all(|i| !self.depends_on(i))
    }

    /// Re-expresses `self` over `vars`, which must extend the current table.
    pub fn lifted(&self, vars: &Arc<VarTable>) -> Poly {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return Poly { vars: vars.clone(), terms: self.terms.clone() };
        }
        assert!(self.vars.is_prefix_of(vars), "cannot lift [{}] to [{}]", self.vars, vars);
        let n = vars.len();
        // Zero-padding preserves the relative grlex order.
        let terms = self.terms.iter().map(|(m, c)| (m.padded(n), c.clone())).collect();
        Poly { vars: vars.clone(), terms }
    }

    /// Re-expresses `self` over an arbitrary table containing every used variable, by name.
    pub fn rebased(&self, vars: &Arc<VarTable>) -> Result<Poly> {
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| vars.index(n)).collect();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; vars.len()];
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    let j = map[i].ok_or_else(|| Error::UnknownVariable(self.vars.name(i).to_string()))?;
                    exps[j] = e;
                }
            }
            out.push((Monomial::from_exps(exps), c.clone()));
        }
        Ok(Poly::from_terms(vars, out))
    }

    fn add_same(&self, other: &Poly, subtract: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if subtract { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly::from_sorted(&self.vars, out)
    }

    fn mul_same(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.vars);
        }
        let (short, long) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if short.terms.len() == 1 {
            // Multiplying by a term preserves the order of `long`.
            let (m, c) = &short.terms[0];
            let terms = long.terms.iter().map(|(lm, lc)| (lm.mul(m), lc * c)).collect();
            return Poly::from_sorted(&self.vars, terms);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(short.terms.len() * long.terms.len());
        for (m1, c1) in &short.terms {
            for (m2, c2) in &long.terms {
                let prod = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &prod,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Poly::from_map(&self.vars, acc)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        Poly::from_sorted(&self.vars, terms)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect();
        Poly::from_sorted(&self.vars, terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            out.push((Monomial { deg: m.deg - 1, exps }, c * &Rational::from_int(e as i64)));
        }
        // Differentiation can merge or reorder terms only through ties, so rebuild.
        Poly::from_terms(&self.vars, out)
    }

    pub fn derivative_named(&self, name: &str) -> Result<Poly> {
        Ok(self.derivative(self.vars.require(name)?))
    }

    /// Substitutes rational values for some variables (keeps the table).
    pub fn specialize(&self, values: &[(usize, Rational)]) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut exps = m.exps.clone();
            for (v, val) in values {
                let e = exps[*v];
                if e > 0 {
                    c *= &val.pow(e as u32);
                    exps[*v] = 0;
                }
            }
            if !c.is_zero() {
                out.push((Monomial::from_exps(exps), c));
            }
        }
        Poly::from_terms(&self.vars, out)
    }

    /// Evaluates at a full point (one value per variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t *= &point[i].pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Simultaneous substitution `var_i -> images[i]` for every variable with an image.
    /// Images must live over a common table; the result lives there too.
    pub fn compose(&self, images: &[Option<Poly>], target: &Arc<VarTable>) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let mut cache: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = cache
                    .entry((i, e))
                    .or_insert_with(|| match &images[i] {
                        Some(p) => p.lifted(target).pow(e as u32),
                        None => {
                            let j = target.require(self.vars.name(i)).expect("unmapped variable missing from target");
                            Poly::var(target, j).pow(e as u32)
                        }
                    })
                    .clone();
                t = &t * &factor;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Writes `self` as `sum_k c_k * x^k` with `x = var`; `c_k` live over the same table.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exps[var] as usize;
            let mut exps = m.exps.clone();
            exps[var] = 0;
            buckets[e].push((Monomial { deg: m.deg - e as u32, exps }, c.clone()));
        }
        if self.is_zero() {
            return vec![Poly::zero(&self.vars)];
        }
        buckets.into_iter().map(|b| Poly::from_terms(&self.vars, b)).collect()
    }

    pub fn from_coeffs_in(vars: &Arc<VarTable>, var: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = Monomial::var(vars.len(), var, k as u16);
            acc = &acc + &c.mul_monomial(&m, &Rational::one());
        }
        acc
    }

    /// Groups terms by their exponents on `split`; returns the coefficient polynomials
    /// (free of the `split` variables), in no particular order.
    pub fn coeffs_wrt(&self, split: &[usize]) -> Vec<Poly> {
        let mut groups: BTreeMap<Vec<u16>, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u16> = split.iter().map(|&i| m.exps[i]).collect();
            let mut exps = m.exps.clone();
            for &i in split {
                exps[i] = 0;
            }
            groups.entry(key).or_default().push((Monomial::from_exps(exps), c.clone()));
        }
        groups.into_values().map(|t| Poly::from_terms(&self.vars, t)).collect()
    }

    /// Same grouping as [`Poly::coeffs_wrt`] but keeps the exponent keys, sorted.
    pub fn coeffs_wrt_keyed(&self, split: &[usize]) -> Vec<(Vec<u16>, Poly)> {
        let mut groups: BTreeMap<Vec<u16>, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u16> = split.iter().map(|&i| m.exps[i]).collect();
            let mut exps = m.exps.clone();
            for &i in split {
                exps[i] = 0;
            }
            groups.entry(key).or_default().push((Monomial::from_exps(exps), c.clone()));
        }
        groups.into_iter().map(|(k, t)| (k, Poly::from_terms(&self.vars, t))).collect()
    }

    /// Multivariate division by `q` using grlex leading terms: `self = quot*q + rem`.
    pub fn div_rem(&self, q: &Poly) -> Result<(Poly, Poly)> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vars = common_table(&self.vars, &q.vars)?;
        let (p, q) = (self.lifted(&vars), q.lifted(&vars));
        let (lm, lc) = (q.terms[0].0.clone(), q.terms[0].1.clone());
        let lc_inv = lc.recip();
        let mut work: BTreeMap<Monomial, Rational> = p.terms.into_iter().collect();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = work.pop_last() {
            if lm.divides(&m) {
                let tm = lm.quotient_of(&m);
                let tc = &c * &lc_inv;
                sub_scaled(&mut work, &q.terms[1..], &tm, &tc);
                quot.push((tm, tc));
            } else {
                rem.push((m, c));
            }
        }
        Ok((Poly::from_sorted(&vars, quot), Poly::from_sorted(&vars, rem)))
    }

    /// Exact quotient `self / q`; non-exactness is reported distinctly from `q = 0`.
    pub fn exact_div(&self, q: &Poly) -> Result<Poly> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vars = common_table(&self.vars, &q.vars)?;
        if self.is_zero() {
            return Ok(Poly::zero(&vars));
        }
        if let Some(c) = q.constant_value() {
            return Ok(self.lifted(&vars).scale(&c.recip()));
        }
        let p = self.lifted(&vars);
        let q = q.lifted(&vars);
        if q.terms.len() == 1 {
            let (qm, qc) = &q.terms[0];
            let inv = qc.recip();
            let mut out = Vec::with_capacity(p.terms.len());
            for (m, c) in &p.terms {
                if !qm.divides(m) {
                    return Err(Error::InexactDivision);
                }
                out.push((qm.quotient_of(m), c * &inv));
            }
            return Ok(Poly::from_sorted(&vars, out));
        }
        // Quick degree rejections before the full division.
        for i in 0..vars.len() {
            if q.degree_in(i) > p.degree_in(i) {
                return Err(Error::InexactDivision);
            }
        }
        let (lm, lc) = (q.terms[0].0.clone(), q.terms[0].1.clone());
        let lc_inv = lc.recip();
        let mut work: BTreeMap<Monomial, Rational> = p.terms.into_iter().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = work.pop_last() {
            if !lm.divides(&m) {
                return Err(Error::InexactDivision);
            }
            let tm = lm.quotient_of(&m);
            let tc = &c * &lc_inv;
            sub_scaled(&mut work, &q.terms[1..], &tm, &tc);
            quot.push((tm, tc));
        }
        Ok(Poly::from_sorted(&vars, quot))
    }

    pub fn divides(&self, p: &Poly) -> bool {
        p.exact_div(self).is_ok()
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Rational content: positive gcd of numerators over lcm of denominators.
    pub fn rational_content(&self) -> Rational {
        let mut g = Rational::zero();
        for (_, c) in &self.terms {
            g = rational_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Integer-coefficient primitive form with a positive leading coefficient.
    pub fn primitive_integer(&self) -> (Rational, Poly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut c = self.rational_content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        (c.clone(), self.scale(&c.recip()))
    }

    /// Degree bound check used by the Monge-form builders.
    pub fn check_coordinate_degree(&self, max: u32) -> Result<()> {
        match self.coordinate_degree() {
            Some(d) if d > max => Err(Error::DegreeTooHigh(self.to_string())),
            _ => Ok(()),
        }
    }
}

/// `work -= tc * tm * terms`.
fn sub_scaled(work: &mut BTreeMap<Monomial, Rational>, terms: &[(Monomial, Rational)], tm: &Monomial, tc: &Rational) {
    use std::collections::btree_map::Entry;
    for (qm, qc) in terms {
        let delta = qc * tc;
        match work.entry(qm.mul(tm)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() -= &delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(-delta);
            }
        }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            return self.terms == other.terms;
        }
        match common_table(&self.vars, &other.vars) {
            Ok(v) => self.lifted(&v).terms == other.lifted(&v).terms,
            Err(_) => false,
        }
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Hash by names so that tables related by prefix-lifting collide consistently.
        for (m, c) in &self.terms {
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    self.vars.name(i).hash(state);
                    e.hash(state);
                }
            }
            c.hash(state);
        }
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            /// Panics when the variable tables are incompatible; use [`poly_arith`]
            /// to get the error instead.
            fn $m(self, rhs: &Poly) -> Poly {
                poly_arith(self, rhs, $op).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_binop!(Add, add, ArithOp::Add);
poly_binop!(Sub, sub, ArithOp::Sub);
poly_binop!(Mul, mul, ArithOp::Mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly::from_sorted(&self.vars, terms)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VarTable, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", vars.name(i))?;
        } else {
            write!(f, "{}^{}", vars.name(i), e)?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars, self)
    }
}

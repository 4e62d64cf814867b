use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Monomial, Poly, Rational, VarTable};
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q, coefficients from degree 0 upwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().recip();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.leading_coeff().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = &c * dj;
                r[k - dd + j] -= &t;
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &Rational::from_int(k as i64)).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime factors with multiplicities.
    pub fn squarefree_factors(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = fp.exact_div(&a0).unwrap().sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&c);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a).unwrap();
            c = c.exact_div(&a).unwrap().sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// Converts to a [`Poly`] in variable `var` of `vars`.
    pub fn to_poly(&self, vars: &Arc<VarTable>, var: usize) -> Poly {
        Poly::from_terms(
            vars,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Monomial::var(vars.len(), var, k as u16), c.clone())),
        )
    }

    /// Reads a polynomial that uses at most one variable.
    pub fn from_poly(p: &Poly) -> Result<UniPoly> {
        let used = p.used_vars();
        if used.len() > 1 {
            return Err(Error::NotUnivariate(p.to_string()));
        }
        let Some(&v) = used.first() else {
            return Ok(UniPoly::constant(p.constant_term()));
        };
        let deg = p.degree_in(v).unwrap() as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading_coeff().is_negative() { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| &sign * c / &g).collect()
    }

    pub fn display_in(&self, var: &str) -> String {
        let vars = VarTable::params_only(&[var]);
        self.to_poly(&vars, 0).to_string()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// Squarefree decomposition of a univariate [`Poly`]: monic factors with multiplicities.
pub fn squarefree_factor(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    let u = UniPoly::from_poly(p)?;
    let var = p.used_vars().first().copied().unwrap_or(0);
    Ok(u.squarefree_factors().into_iter().map(|(f, k)| (f.to_poly(p.vars(), var), k)).collect())
}

/// Largest absolute value for which divisors are enumerated by trial division.
const DIVISOR_LIMIT: u64 = 1 << 40;

/// Distinct rational roots, sorted ascending.
///
/// Candidates come from the rational root theorem. Returns `None` when a
/// coefficient is too large to enumerate its divisors.
pub fn rational_roots(p: &UniPoly) -> Option<Vec<Rational>> {
    if p.is_zero() {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    let mut q = p.clone();
    // Strip x^k.
    let low = q.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rational::zero());
        q = UniPoly::new(q.coeffs[low..].to_vec());
    }
    if q.degree() == Some(0) {
        return Some(roots);
    }
    let ints = q.primitive_integer_coeffs();
    let a0 = ints[0].abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let an = ints.last().unwrap().abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let dn = divisors(a0);
    let dd = divisors(an);
    for num in &dn {
        for den in &dd {
            if num.gcd(den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rational::from_bigints(BigInt::from(sign) * BigInt::from(*num), BigInt::from(*den));
                if q.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = UniPoly::from_ints(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(a.gcd(&UniPoly::from_ints(&[2, 2])), b);
    }

    #[test]
    fn yun() {
        // (x-1)^3 (x+2) x^2
        let f = UniPoly::linear(&Rational::one()).pow(3).mul(&UniPoly::from_ints(&[2, 1])).mul(&UniPoly::x().pow(2));
        let sf = f.squarefree_factors();
        assert_eq!(sf, vec![(UniPoly::from_ints(&[2, 1]), 1), (UniPoly::x(), 2), (UniPoly::from_ints(&[-1, 1]), 3)]);
    }

    #[test]
    fn roots() {
        // (2x - 3)(x + 5)(x^2 + 1) x
        let f = UniPoly::from_ints(&[-3, 2])
            .mul(&UniPoly::from_ints(&[5, 1]))
            .mul(&UniPoly::from_ints(&[1, 0, 1]))
            .mul(&UniPoly::x());
        assert_eq!(rational_roots(&f).unwrap(), vec![Rational::from_int(-5), Rational::zero(), Rational::new(3, 2)]);
    }

    #[test]
    fn poly_round_trip() {
        let t = VarTable::params_only(&["lambda"]);
        let f = UniPoly::from_ints(&[3, 0, -1]);
        assert_eq!(UniPoly::from_poly(&f.to_poly(&t, 0)).unwrap(), f);
    }
}

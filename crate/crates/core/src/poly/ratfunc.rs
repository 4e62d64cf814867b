use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::{common_table, Poly, Rational, VarTable};
use crate::error::{Error, Result};

/// Quotient of polynomials, kept reduced (gcd removed) with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vars = common_table(num.vars(), den.vars())?;
        Ok(Self::normalized(num.lifted(&vars), den.lifted(&vars)))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc { den: Poly::one(num.vars()), num };
        }
        if let Some(c) = den.constant_value() {
            let inv = c.recip();
            return RatFunc { num: num.scale(&inv), den: Poly::one(num.vars()) };
        }
        let g = num.gcd(&den).expect("tables agree");
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff().recip();
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Self::from_poly(Poly::zero(vars))
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::from_poly(Poly::one(vars))
    }

    pub fn constant(vars: &Arc<VarTable>, c: Rational) -> Self {
        Self::from_poly(Poly::constant(vars, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_poly(&self) -> Option<Poly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn lifted(&self, vars: &Arc<VarTable>) -> RatFunc {
        RatFunc { num: self.num.lifted(vars), den: self.den.lifted(vars) }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        // Powers of coprime polynomials stay coprime.
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn derivative(&self, var: usize) -> RatFunc {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative(var));
        }
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return RatFunc::normalized(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RatFunc::normalized(num, self.den.pow(2))
    }

    pub fn specialize(&self, values: &[(usize, Rational)]) -> Result<RatFunc> {
        RatFunc::new(self.num.specialize(values), self.den.specialize(values))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(point) / &d)
    }

    fn add_impl(&self, other: &RatFunc, subtract: bool) -> RatFunc {
        let vars = common_table(self.vars(), other.vars()).unwrap_or_else(|e| panic!("{e}"));
        let (a, b) = (self.lifted(&vars), other.lifted(&vars));
        let c = if subtract { -&b.num } else { b.num.clone() };
        if a.den == b.den {
            return RatFunc::normalized(&a.num + &c, a.den);
        }
        if a.den.is_one() {
            return RatFunc { num: &(&a.num * &b.den) + &c, den: b.den };
        }
        if b.den.is_one() {
            return RatFunc { num: &a.num + &(&c * &a.den), den: a.den };
        }
        let g = a.den.gcd(&b.den).expect("tables agree");
        let bd_g = b.den.exact_div(&g).expect("gcd divides");
        let ad_g = a.den.exact_div(&g).expect("gcd divides");
        let num = &(&a.num * &bd_g) + &(&c * &ad_g);
        RatFunc::normalized(num, &a.den * &bd_g)
    }

    fn mul_impl(&self, other: &RatFunc) -> RatFunc {
        let vars = common_table(self.vars(), other.vars()).unwrap_or_else(|e| panic!("{e}"));
        let (a, b) = (self.lifted(&vars), other.lifted(&vars));
        if a.is_zero() || b.is_zero() {
            return RatFunc::zero(&vars);
        }
        if a.den.is_one() && b.den.is_one() {
            return RatFunc::from_poly(&a.num * &b.num);
        }
        // Cross-cancel; inputs are reduced so the product then is too.
        let g1 = a.num.gcd(&b.den).expect("tables agree");
        let g2 = b.num.gcd(&a.den).expect("tables agree");
        let n1 = a.num.exact_div(&g1).unwrap();
        let d2 = b.den.exact_div(&g1).unwrap();
        let n2 = b.num.exact_div(&g2).unwrap();
        let d1 = a.den.exact_div(&g2).unwrap();
        let den = &d1 * &d2;
        let lc = den.leading_coeff().recip();
        RatFunc { num: (&n1 * &n2).scale(&lc), den: den.scale(&lc) }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_impl(rhs)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.mul_impl(&rhs.recip().expect("division by zero rational function"))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.nterms() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let den = if self.den.nterms() > 1 || self.den.leading_coeff() != Rational::one() {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[{}]({})", self.vars(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_poly, parse_ratfunc};
    use super::*;

    fn t() -> Arc<VarTable> {
        VarTable::coords_and_params(3, &["c"])
    }

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s, &t()).unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        let x = r("(u1^2 - 1)/(2*u1 - 2)");
        assert_eq!(x.num(), &parse_poly("1/2*u1 + 1/2", &t()).unwrap());
        assert!(x.den().leading_coeff().is_one());
    }

    #[test]
    fn field_operations() {
        let a = r("u2/u1");
        let b = r("(u2^2 + 1)/(2*u1^2)");
        let s = &(&a * &b) / &b;
        assert_eq!(s, a);
        let back = &(&a + &b) - &b;
        assert!((&back - &a).is_zero());
    }

    #[test]
    fn quotient_rule() {
        let a = r("u2/u1^2");
        assert_eq!(a.derivative(0), r("-2*u2/u1^3"));
    }

    #[test]
    fn display_round_trip() {
        for s in ["(u2^2 + 1)/(2*u1^2)", "-u1/(u1*u2 - u3)", "c*u1 + 3"] {
            let x = r(s);
            assert_eq!(r(&x.to_string()), x);
        }
    }
}

//! Multivariate gcd over Q.
//!
//! Recursive content/primitive-part scheme: split off variables that only one
//! operand uses, pick a main variable, take gcds of contents recursively, and
//! run a primitive pseudo-remainder sequence on the primitive parts. No
//! heuristic shortcuts are taken, so the result needs no certification.

use super::{common_table, Monomial, Poly, Rational, UniPoly};
use crate::error::Result;

impl Poly {
    /// Monic greatest common divisor; `gcd(p, 0) = monic(p)`, `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let vars = common_table(&self.vars, &other.vars)?;
        let (a, b) = (self.lifted(&vars), other.lifted(&vars));
        let g = gcd_rec(&a, &b);
        debug_assert!(g.is_zero() || (a.exact_div(&g).is_ok() && b.exact_div(&g).is_ok()));
        Ok(g)
    }

    /// Gcd of all coefficients when `self` is viewed as a polynomial in the `split` variables.
    pub fn content_wrt(&self, split: &[usize]) -> Poly {
        let coeffs = self.coeffs_wrt(split);
        gcd_many(&coeffs)
    }

    /// Content with respect to the coordinate variables: a polynomial in the parameters only.
    pub fn parameter_content(&self) -> Poly {
        let coords: Vec<usize> = self.vars.coordinates().collect();
        self.content_wrt(&coords)
    }

    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&common_table(&self.vars, &other.vars)?));
        }
        let g = self.gcd(other)?;
        Ok((self * &other.exact_div(&g)?).monic())
    }
}

pub(crate) fn gcd_many(ps: &[Poly]) -> Poly {
    let mut it = ps.iter();
    let mut g = match it.next() {
        Some(p) => p.monic(),
        None => panic!("gcd of an empty list"),
    };
    for p in it {
        if g.is_one() {
            break;
        }
        g = gcd_rec(&g, p);
    }
    g
}

fn monomial_gcd_with(m: &Monomial, p: &Poly) -> Poly {
    let mut g = m.clone();
    for (tm, _) in p.terms() {
        g = g.gcd(tm);
        if g.degree() == 0 {
            break;
        }
    }
    Poly::monomial(p.vars(), g, Rational::one())
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return Poly::one(&vars);
    }
    if a.is_monomial() {
        return monomial_gcd_with(&a.terms()[0].0, b);
    }
    if b.is_monomial() {
        return monomial_gcd_with(&b.terms()[0].0, a);
    }
    if a == b {
        return a.monic();
    }

    let ua = a.used_vars();
    let ub = b.used_vars();
    let only_a: Vec<usize> = ua.iter().copied().filter(|v| !ub.contains(v)).collect();
    let only_b: Vec<usize> = ub.iter().copied().filter(|v| !ua.contains(v)).collect();
    if !only_a.is_empty() || !only_b.is_empty() {
        // A common divisor cannot involve a variable only one side uses.
        let mut pieces = Vec::new();
        if only_a.is_empty() {
            pieces.push(a.clone());
        } else {
            pieces.extend(a.coeffs_wrt(&only_a));
        }
        if only_b.is_empty() {
            pieces.push(b.clone());
        } else {
            pieces.extend(b.coeffs_wrt(&only_b));
        }
        // Smallest pieces first keeps the recursion cheap and exits early on 1.
        pieces.sort_by_key(|p| p.nterms());
        return gcd_many(&pieces);
    }

    // Cheap certificate: one divides the other.
    let (small, big) = if a.nterms() <= b.nterms() { (a, b) } else { (b, a) };
    if big.exact_div(small).is_ok() {
        return small.monic();
    }

    // If an image at a point shows the gcd is free of some variable, drop to its coefficients.
    for &v in &ua {
        if image_gcd_degree(a, b, v, &ua) == Some(0) {
            let mut pieces: Vec<Poly> =
                a.coeffs_in(v).into_iter().chain(b.coeffs_in(v)).filter(|c| !c.is_zero()).collect();
            pieces.sort_by_key(|p| p.nterms());
            return gcd_many(&pieces);
        }
    }

    // Main variable: the one of least degree keeps pseudo-remainders small.
    let x = *ua.iter().min_by_key(|&&v| (a.degree_in(v).unwrap().max(b.degree_in(v).unwrap()), v)).unwrap();

    let (ca, pa) = split_content(a, x);
    let (cb, pb) = split_content(b, x);
    let c = gcd_rec(&ca, &cb);

    let (mut f, mut g) = if pa.degree_in(x) >= pb.degree_in(x) { (pa, pb) } else { (pb, pa) };
    let h = loop {
        if g.degree_in(x) == Some(0) {
            // g is free of x and primitive in x, so it is a unit.
            break Poly::one(&vars);
        }
        let r = pseudo_rem(&f, &g, x);
        if r.is_zero() {
            break g;
        }
        if r.degree_in(x) == Some(0) {
            break Poly::one(&vars);
        }
        let (_, rp) = split_content(&r, x);
        f = g;
        g = rp;
    };
    let (_, h) = split_content(&h, x);
    (&c * &h).monic()
}

/// Degree in `x` of the gcd of the univariate images at a point where neither leading
/// coefficient in `x` vanishes. This bounds the degree in `x` of the true gcd from above.
fn image_gcd_degree(a: &Poly, b: &Poly, x: usize, used: &[usize]) -> Option<usize> {
    let others: Vec<usize> = used.iter().copied().filter(|&v| v != x).collect();
    for attempt in 0..3i64 {
        let point: Vec<(usize, Rational)> = others
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, Rational::from_int(2 + (attempt * 7 + k as i64 * 5) % 23)))
            .collect();
        let image = |p: &Poly| -> Option<UniPoly> {
            let coeffs: Vec<Rational> =
                p.coeffs_in(x).iter().map(|c| c.specialize(&point).constant_value()).collect::<Option<_>>()?;
            Some(UniPoly::new(coeffs))
        };
        let (Some(ia), Some(ib)) = (image(a), image(b)) else { return None };
        if ia.degree() != a.degree_in(x).map(usize::from) || ib.degree() != b.degree_in(x).map(usize::from) {
            continue;
        }
        return ia.gcd(&ib).degree();
    }
    None
}

/// `(content_x(p), primitive_part_x(p))`.
fn split_content(p: &Poly, x: usize) -> (Poly, Poly) {
    let coeffs = p.coeffs_in(x);
    let nonzero: Vec<Poly> = coeffs.iter().filter(|c| !c.is_zero()).cloned().collect();
    let mut sorted = nonzero.clone();
    sorted.sort_by_key(|p| p.nterms());
    let content = gcd_many(&sorted);
    if content.is_one() {
        return (content, p.primitive_integer().1);
    }
    let prim: Vec<Poly> =
        coeffs.iter().map(|c| c.exact_div(&content).expect("content divides every coefficient")).collect();
    (content, Poly::from_coeffs_in(p.vars(), x, &prim).primitive_integer().1)
}

/// Sparse pseudo-remainder of `f` by `g` in the variable `x`.
fn pseudo_rem(f: &Poly, g: &Poly, x: usize) -> Poly {
    let dg = g.degree_in(x).unwrap() as usize;
    let gc = g.coeffs_in(x);
    let lg = gc[dg].clone();
    let mut r = f.coeffs_in(x);
    loop {
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
        let dr = r.len() - 1;
        if dr < dg || (r.len() == 1 && r[0].is_zero()) {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - dg;
        for k in 0..dr {
            let mut v = &r[k] * &lg;
            if k >= shift {
                v = &v - &(&lr * &gc[k - shift]);
            }
            r[k] = v;
        }
        r.pop();
        if r.is_empty() {
            r.push(Poly::zero(f.vars()));
        }
    }
    Poly::from_coeffs_in(f.vars(), x, &r)
}

#[cfg(test)]
mod tests {
    use super::super::{parse_poly, VarTable};
    use super::*;
    use std::sync::Arc;

    fn t() -> Arc<VarTable> {
        VarTable::coords_and_params(3, &["a", "b"])
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &t()).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        assert_eq!(p("u1*u2").gcd(&p("u2*u3")).unwrap(), p("u2"));
    }

    #[test]
    fn gcd_with_self_is_monic_self() {
        let a = p("3*u1^2 - u2*u3 + a");
        assert_eq!(a.gcd(&a).unwrap(), a.monic());
    }

    #[test]
    fn gcd_with_zero() {
        let a = p("-2*u1 + 4");
        assert_eq!(a.gcd(&p("0")).unwrap(), p("u1 - 2"));
    }

    #[test]
    fn det_g4_against_cube() {
        // det g4 = -(u1)^2
        assert_eq!(p("-u1^2").gcd(&p("u1^3")).unwrap(), p("u1^2"));
    }

    #[test]
    fn multivariate_common_factor() {
        let f = p("u1*u3 + u2 - a");
        let g = p("u1 + b*u2");
        let h = p("u3^2 - a*u1 + 1");
        let x = &f * &g;
        let y = &f * &h;
        assert_eq!(x.gcd(&y).unwrap(), f.monic());
    }

    #[test]
    fn coprime_is_one() {
        assert!(p("u1^2 + u2^2 + 1").gcd(&p("u1 - u2*u3")).unwrap().is_one());
    }

    #[test]
    fn split_variables() {
        // gcd must ignore the variable only one side uses.
        let f = p("u1 + a");
        let x = &f * &p("u2 + u3");
        let y = &f * &p("u1 - 3");
        assert_eq!(x.gcd(&y).unwrap(), f);
    }

    #[test]
    fn parameter_content_extracts_constant_part() {
        let q = p("a*b - 1");
        let s = p("u1*u3 + u2");
        let det = &q * &s.pow(2);
        assert_eq!(det.parameter_content(), q.monic());
    }
}

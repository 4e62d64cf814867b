use super::{Monomial, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SqrtVerdict {
    /// `p = constant * root^2` with `constant` free of coordinates and `root` monic.
    Square {
        constant: Poly,
        root: Poly,
    },
    NotSquare,
}

/// Writes `p` as a coordinate-free factor times the square of a polynomial.
///
/// The factor is the parameter content of `p` (times a rational), so the
/// square root is taken of the remaining monic polynomial and certified by
/// squaring it back.
pub fn poly_sqrt(p: &Poly) -> SqrtVerdict {
    let vars = p.vars().clone();
    if p.is_zero() {
        return SqrtVerdict::Square { constant: Poly::one(&vars), root: Poly::zero(&vars) };
    }
    let content = p.parameter_content();
    let q = p.exact_div(&content).expect("content divides");
    let lc = q.leading_coeff();
    let q = q.scale(&lc.recip());
    let constant = content.scale(&lc);
    match monic_sqrt(&q) {
        Some(root) => {
            debug_assert_eq!(&constant * &root.pow(2), *p);
            SqrtVerdict::Square { constant, root }
        }
        None => SqrtVerdict::NotSquare,
    }
}

fn half_monomial(m: &Monomial) -> Option<Monomial> {
    if m.exps().iter().any(|e| e % 2 != 0) {
        return None;
    }
    Some(Monomial::from_exps(m.exps().iter().map(|e| e / 2).collect()))
}

/// Square root of a polynomial whose leading coefficient is a rational square.
fn monic_sqrt(q: &Poly) -> Option<Poly> {
    let vars = q.vars().clone();
    let (lm, lc) = q.leading_term()?;
    let m0 = half_monomial(lm)?;
    let c0 = lc.sqrt_exact()?;
    let min_half = q.min_total_degree()? / 2;
    let lead = Poly::monomial(&vars, m0.clone(), c0.clone());
    let two_lead_c = &c0 * &Rational::from_int(2);

    let mut root = lead.clone();
    let mut rem = q - &lead.pow(2);
    for _ in 0..q.nterms() + 1 {
        let Some((rm, rc)) = rem.leading_term() else {
            return Some(root.monic());
        };
        // The next root term t satisfies LT(rem) = 2 * lead * t.
        if !m0.divides(rm) {
            return None;
        }
        let tm = m0.quotient_of(rm);
        if tm.degree() < min_half || tm >= root.terms().last().unwrap().0 {
            return None;
        }
        let tc = rc / &two_lead_c;
        let t = Poly::monomial(&vars, tm, tc);
        // rem -= 2*root*t + t^2
        let step = &(&root.scale(&Rational::from_int(2)) * &t) + &t.pow(2);
        rem = &rem - &step;
        root = &root + &t;
    }
    if rem.is_zero() {
        Some(root.monic())
    } else {
        None
    }
}

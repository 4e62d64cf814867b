use super::{Domain, Field, Matrix, Ring};
use crate::error::{Error, Result};
use crate::poly::{Poly, RatFunc, Rational};

/// Bareiss fraction-free determinant; every division is exact.
pub fn det_fraction_free<T: Domain>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let proto = m.entries().first().ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
    match n {
        1 => return Ok(m.get(0, 0).clone()),
        2 => return Ok(m.get(0, 0).times(m.get(1, 1)).minus(&m.get(0, 1).times(m.get(1, 0)))),
        _ => {}
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = proto.one_like();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero_elem()) else {
            return Ok(proto.zero_like());
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let akk = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let num = a.get(i, j).times(&akk).minus(&aik.times(a.get(k, j)));
                let v = num.divide_exact(&prev).expect("Bareiss division is exact");
                a.set(i, j, v);
            }
        }
        prev = akk;
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if negate { d.negated() } else { d })
}

/// Classical adjugate, `adj(M)·M = det(M)·I`.
pub fn adjugate<T: Domain>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let proto = m.entries().first().ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
    if n == 1 {
        return Ok(Matrix::identity(1, proto));
    }
    let mut out = Matrix::zeros(n, n, proto);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = det_fraction_free(&m.submatrix(&rows, &cols))?;
            out.set(i, j, if (i + j) % 2 == 0 { minor } else { minor.negated() });
        }
    }
    Ok(out)
}

/// Rank by fraction-free elimination (exact zero tests, generic rank over parameters).
pub fn rank_of<T: Domain>(m: &Matrix<T>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let Some(proto) = m.entries().first() else {
        return 0;
    };
    let mut a = m.clone();
    let mut prev = proto.one_like();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero_elem()) else {
            continue;
        };
        a.swap_rows(p, r);
        let arc = a.get(r, c).clone();
        for i in r + 1..rows {
            let aic = a.get(i, c).clone();
            for j in c..cols {
                let num = a.get(i, j).times(&arc).minus(&aic.times(a.get(r, j)));
                a.set(i, j, num.divide_exact(&prev).expect("fraction-free step is exact"));
            }
        }
        prev = arc;
        r += 1;
    }
    r
}

/// Gauss-Jordan reduction in place, pivoting only in the first `limit` columns.
/// Returns the pivot columns.
pub(crate) fn rref_in_place<T: Field>(a: &mut Matrix<T>, limit: usize) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(cols) {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero_elem()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.get(r, c).inverse().expect("nonzero pivot");
        for j in c..cols {
            let v = a.get(r, j).times(&inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero_elem() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..cols {
                if a.get(r, j).is_zero_elem() {
                    continue;
                }
                let v = a.get(i, j).minus(&f.times(a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank and a right-kernel basis over a field. Basis vector `k` has a one in
/// the k-th free column and zeros in the other free columns.
pub fn nullspace_field<T: Field>(m: &Matrix<T>, proto: &T) -> (usize, Vec<Vec<T>>) {
    let cols = m.cols();
    let mut a = m.clone();
    let pivots = rref_in_place(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![proto.zero_like(); cols];
            v[f] = proto.one_like();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = a.get(r, f).negated();
            }
            v
        })
        .collect();
    (pivots.len(), basis)
}

/// A particular solution and a basis of the kernel.
pub type Solution<T> = (Vec<T>, Vec<Vec<T>>);

/// Solves `a·x = b`; returns a particular solution and a kernel basis, or `None` when inconsistent.
pub fn solve_linear<T: Field>(a: &Matrix<T>, b: &[T], proto: &T) -> Result<Option<Solution<T>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("{} equations, {} right-hand sides", a.rows(), b.len())));
    }
    let n = a.cols();
    let mut aug = Matrix::from_fn(a.rows(), n + 1, |i, j| if j < n { a.get(i, j).clone() } else { b[i].clone() });
    let pivots = rref_in_place(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![proto.zero_like(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, n).clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![proto.zero_like(); n];
            v[f] = proto.one_like();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = aug.get(r, f).negated();
            }
            v
        })
        .collect();
    Ok(Some((x, kernel)))
}

/// Rank over the fraction field of the parameter ring and a kernel basis
/// with polynomial entries (denominators cleared, content removed).
pub fn rank_and_nullspace(m: &Matrix<Poly>) -> (usize, Vec<Vec<Poly>>) {
    let Some(vars) = m.vars().cloned() else {
        return (0, Vec::new());
    };
    let proto = RatFunc::zero(&vars);
    let (rank, basis) = nullspace_field(&m.to_ratfunc(), &proto);
    let basis = basis.into_iter().map(|v| clear_denominators(&v)).collect();
    (rank, basis)
}

/// Scales a vector of rational functions to coprime polynomials; the first
/// nonzero entry gets a positive leading coefficient.
pub(crate) fn clear_denominators(v: &[RatFunc]) -> Vec<Poly> {
    let vars = v[0].vars().clone();
    let mut l = Poly::one(&vars);
    for r in v {
        if !r.den().is_one() {
            l = l.lcm(r.den()).expect("shared table");
        }
    }
    let mut out: Vec<Poly> = v.iter().map(|r| r.num() * &l.exact_div(r.den()).expect("lcm is a multiple")).collect();
    let nonzero: Vec<Poly> = out.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return out;
    }
    let g = crate::poly::gcd_many(&nonzero);
    if !g.is_one() {
        out = out.iter().map(|p| p.exact_div(&g).expect("gcd divides")).collect();
    }
    let c = out
        .iter()
        .filter(|p| !p.is_zero())
        .fold(Rational::zero(), |acc, p| crate::poly::rational_gcd(&acc, &p.rational_content()));
    let lead = out.iter().find(|p| !p.is_zero()).unwrap().leading_coeff();
    let c = if lead.is_negative() { -&c } else { c };
    out.iter().map(|p| p.scale(&c.recip())).collect()
}

/// Coefficients of `det(λI − M)` from degree 0 up (Faddeev–LeVerrier).
pub fn char_poly<T: Ring>(m: &Matrix<T>) -> Result<Vec<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let proto = m.entries().first().ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
    let mut coeffs = vec![proto.zero_like(); n + 1];
    coeffs[n] = proto.one_like();
    let id = Matrix::identity(n, proto);
    let mut mk = Matrix::zeros(n, n, proto);
    for k in 1..=n {
        mk = m.mul(&mk)?.add(&id.scale_by(&coeffs[n + 1 - k]))?;
        let am = m.mul(&mk)?;
        coeffs[n - k] = am.trace()?.scaled(&Rational::new(-1, k as i64));
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, UniPoly, VarTable};
    use std::sync::Arc;

    fn t() -> Arc<VarTable> {
        VarTable::coords_and_params(3, &["a", "b", "c", "alpha", "beta"])
    }

    fn pm(rows: &[&[&str]]) -> Matrix<Poly> {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        Matrix::from_strings(&rows, &t()).unwrap()
    }

    #[test]
    fn identity_det() {
        assert!(det_fraction_free(&Matrix::identity(3, &Rational::one())).unwrap().is_one());
    }

    #[test]
    fn g5_det_is_minus_one() {
        let g5 = pm(&[&["-2*u2", "u1", "1"], &["u1", "1", "0"], &["1", "0", "0"]]);
        assert_eq!(det_fraction_free(&g5).unwrap(), parse_poly("-1", &t()).unwrap());
    }

    #[test]
    fn symbolic_det_against_cofactor_expansion() {
        let m = pm(&[&["a*u1^2 + b", "-alpha*u1", "beta"], &["-alpha*u1", "c", "u2*u3"], &["beta", "u2*u3", "1 - u1"]]);
        let e = |i, j| m.get(i, j).clone();
        let cof = &(&e(0, 0) * &(&(&e(1, 1) * &e(2, 2)) - &(&e(1, 2) * &e(2, 1))))
            - &(&(&e(0, 1) * &(&(&e(1, 0) * &e(2, 2)) - &(&e(1, 2) * &e(2, 0))))
                - &(&e(0, 2) * &(&(&e(1, 0) * &e(2, 1)) - &(&e(1, 1) * &e(2, 0)))));
        assert_eq!(det_fraction_free(&m).unwrap(), cof);
    }

    #[test]
    fn pivoting_and_zero_det() {
        let m = pm(&[&["0", "1", "2"], &["1", "0", "3"], &["1", "1", "5"]]);
        assert!(det_fraction_free(&m).unwrap().is_zero());
        let m = pm(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "1"]]);
        assert_eq!(det_fraction_free(&m).unwrap(), parse_poly("-1", &t()).unwrap());
    }

    #[test]
    fn adjugate_identity() {
        let m = pm(&[&["a", "u1", "0"], &["u1", "b", "1"], &["0", "1", "u2"]]);
        let adj = adjugate(&m).unwrap();
        let d = det_fraction_free(&m).unwrap();
        assert_eq!(adj.mul(&m).unwrap(), Matrix::identity(3, &d.one_like()).scale_by(&d));
    }

    #[test]
    fn zero_matrix_nullspace() {
        let z = Matrix::zeros(3, 3, &Poly::zero(&t()));
        let (r, k) = rank_and_nullspace(&z);
        assert_eq!((r, k.len()), (0, 3));
    }

    #[test]
    fn parametric_kernel() {
        // rank drops at a = 0
        let m = pm(&[&["a", "1", "0"], &["0", "a", "1"]]);
        let (r, k) = rank_and_nullspace(&m);
        assert_eq!(r, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for i in 0..2 {
            let s = (0..3).fold(Poly::zero(&t()), |acc, j| &acc + &(m.get(i, j) * &v[j]));
            assert!(s.is_zero());
        }
        assert_eq!(rank_of(&m.specialize(&[(3, Rational::zero())])), 2);
    }

    #[test]
    fn char_poly_identity_and_trace() {
        let id = Matrix::identity(2, &Rational::one());
        assert_eq!(id.char_poly_uni().unwrap(), UniPoly::from_ints(&[1, -2, 1]));
        let m = Matrix::from_ints(&[&[1, 2, 0], &[3, -1, 4], &[0, 5, 7]]);
        let cp = char_poly(&m).unwrap();
        assert_eq!(cp[2], -&m.trace().unwrap());
        assert_eq!(cp[0], -&det_fraction_free(&m).unwrap());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        let one = Rational::one();
        let (x, k) = solve_linear(&a, &[Rational::from_int(2), Rational::from_int(4)], &one).unwrap().unwrap();
        assert_eq!(x, vec![Rational::from_int(2), Rational::zero()]);
        assert_eq!(k.len(), 1);
        assert!(solve_linear(&a, &[Rational::one(), Rational::one()], &one).unwrap().is_none());
    }
}

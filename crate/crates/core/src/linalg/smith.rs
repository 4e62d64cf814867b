use super::Matrix;
use crate::error::Result;
use crate::poly::UniPoly;

/// Invariant factors `d_1 | d_2 | … | d_r` (monic) of a matrix over `Q[λ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<UniPoly>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors that are not units.
    pub fn nontrivial(&self) -> Vec<&UniPoly> {
        self.factors.iter().filter(|d| d.degree() != Some(0)).collect()
    }
}

/// Smith normal form by elementary row and column operations.
pub fn smith_normal_form(m: &Matrix<UniPoly>) -> Result<SmithForm> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Move an entry of least degree to (t, t).
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if let Some(d) = a.get(i, j).degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((bi, bj, _)) = best else {
                return Ok(finish(factors));
            };
            a.swap_rows(t, bi);
            a.swap_cols(t, bj);
            let pivot = a.get(t, t).clone();

            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, t).div_rem(&pivot)?;
                for j in t..cols {
                    let v = a.get(i, j).sub(&q.mul(a.get(t, j)));
                    a.set(i, j, v);
                }
                debug_assert_eq!(a.get(i, t), &r);
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(t, j).div_rem(&pivot)?;
                for i in t..rows {
                    let v = a.get(i, j).sub(&q.mul(a.get(i, t)));
                    a.set(i, j, v);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot must divide the remaining block; otherwise fold a row in and retry.
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a.get(i, j).is_zero() && !a.get(i, j).div_rem(&pivot).unwrap().1.is_zero())
            });
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a.get(t, j).add(a.get(i, j));
                        a.set(t, j, v);
                    }
                }
                None => {
                    factors.push(pivot.monic());
                    break;
                }
            }
        }
    }
    Ok(finish(factors))
}

fn finish(factors: Vec<UniPoly>) -> SmithForm {
    debug_assert!(factors.windows(2).all(|w| w[1].div_rem(&w[0]).unwrap().1.is_zero()));
    SmithForm { factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rational;

    #[test]
    fn zero_matrix_char() {
        let z = Matrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let s = smith_normal_form(&z.char_matrix()).unwrap();
        assert_eq!(s.factors, vec![UniPoly::x(); 3]);
    }

    #[test]
    fn nilpotent_block() {
        let j = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let s = smith_normal_form(&j.char_matrix()).unwrap();
        assert_eq!(s.factors, vec![UniPoly::one(), UniPoly::x().pow(2)]);
    }

    #[test]
    fn chain_and_product() {
        let m = Matrix::from_ints(&[&[2, 1, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, -1]]);
        let s = smith_normal_form(&m.char_matrix()).unwrap();
        let prod = s.factors.iter().fold(UniPoly::one(), |acc, d| acc.mul(d));
        assert_eq!(prod, m.char_poly_uni().unwrap());
        let two = UniPoly::linear(&Rational::from_int(2));
        let last = two.pow(2).mul(&UniPoly::linear(&Rational::from_int(-1)));
        assert_eq!(s.factors.last().unwrap(), &last);
        assert_eq!(s.factors[2], two);
    }
}

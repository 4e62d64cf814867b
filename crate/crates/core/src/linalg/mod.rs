//! Exact matrices over the scalar rings of [`crate::poly`].

mod elim;
mod ring;
mod smith;

use std::fmt;
use std::sync::Arc;

pub use elim::{adjugate, char_poly, det_fraction_free, nullspace_field, rank_and_nullspace, rank_of, solve_linear};
pub use ring::{Domain, Field, Ring};
pub use smith::{smith_normal_form, SmithForm};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, Poly, RatFunc, Rational, UniPoly, VarTable};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn try_map<U>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        let data = self.data.iter().map(&mut f).collect::<Result<Vec<U>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        Matrix { rows, cols, data: vec![z; rows * cols] }
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let (z, o) = (proto.zero_like(), proto.one_like());
        Matrix::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let proto = self.data.first().or(other.data.first());
        let Some(proto) = proto else {
            return Ok(Matrix { rows: self.rows, cols: other.cols, data: Vec::new() });
        };
        let z = proto.zero_like();
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = z.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                let b = other.get(k, j);
                if b.is_zero_elem() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        }))
    }

    pub fn add(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.zip(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.zip(other, |a, b| a.minus(b))
    }

    fn zip(&self, other: &Matrix<T>, f: impl Fn(&T, &T) -> T) -> Result<Matrix<T>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Matrix<T> {
        self.map(|a| a.scaled(c))
    }

    pub fn scale_by(&self, c: &T) -> Matrix<T> {
        self.map(|a| a.times(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero_elem())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero_elem() && (0..i).all(|j| self.get(i, j).plus(self.get(j, i)).is_zero_elem())
            })
    }

    pub fn trace(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut acc = match self.data.first() {
            Some(p) => p.zero_like(),
            None => return Err(Error::DimensionMismatch("empty matrix".into())),
        };
        for i in 0..self.rows {
            acc = acc.plus(self.get(i, i));
        }
        Ok(acc)
    }

    /// `(M + Mᵗ)/2`
    pub fn symmetric_part(&self) -> Matrix<T> {
        let half = Rational::new(1, 2);
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).plus(self.get(j, i)).scaled(&half))
    }

    /// `(M - Mᵗ)/2`
    pub fn skew_part(&self) -> Matrix<T> {
        let half = Rational::new(1, 2);
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).minus(self.get(j, i)).scaled(&half))
    }

    /// 4x4 Pfaffian; `pf² = det`.
    pub fn pfaffian4(&self) -> Result<T> {
        if self.rows != 4 || self.cols != 4 {
            return Err(Error::DimensionMismatch(format!("pfaffian4 of a {}x{} matrix", self.rows, self.cols)));
        }
        if !self.is_skew_symmetric() {
            return Err(Error::NotSkewSymmetric);
        }
        let m = |i, j| self.get(i, j);
        Ok(m(0, 1).times(m(2, 3)).minus(&m(0, 2).times(m(1, 3))).plus(&m(0, 3).times(m(1, 2))))
    }
}

impl<T: Field> Matrix<T> {
    pub fn inverse(&self) -> Result<Matrix<T>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let proto = self.data.first().ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                proto.one_like()
            } else {
                proto.zero_like()
            }
        });
        elim::rref_in_place(&mut aug, n);
        for i in 0..n {
            if aug.get(i, i).is_zero_elem() {
                return Err(Error::SingularMap);
            }
        }
        Ok(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }
}

impl Matrix<Poly> {
    pub fn vars(&self) -> Option<&Arc<VarTable>> {
        self.data.first().map(|p| p.vars())
    }

    pub fn lifted(&self, vars: &Arc<VarTable>) -> Matrix<Poly> {
        self.map(|p| p.lifted(vars))
    }

    pub fn to_ratfunc(&self) -> Matrix<RatFunc> {
        self.map(|p| RatFunc::from_poly(p.clone()))
    }

    pub fn specialize(&self, values: &[(usize, Rational)]) -> Matrix<Poly> {
        self.map(|p| p.specialize(values))
    }

    /// Entries as strings in the polynomial grammar.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.to_string()).collect()).collect()
    }

    pub fn from_strings<R: AsRef<[S]>, S: AsRef<str>>(rows: &[R], vars: &Arc<VarTable>) -> Result<Matrix<Poly>> {
        let parsed = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|s| parse_poly(s.as_ref(), vars)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }

    /// Rational matrix when every entry is constant.
    pub fn to_rational(&self) -> Result<Matrix<Rational>> {
        self.try_map(|p| p.constant_value().ok_or_else(|| Error::Parametric(p.to_string())))
    }
}

impl Matrix<Rational> {
    pub fn from_ints(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn to_poly(&self, vars: &Arc<VarTable>) -> Matrix<Poly> {
        self.map(|c| Poly::constant(vars, c.clone()))
    }

    /// `det(λI − M)`.
    pub fn char_poly_uni(&self) -> Result<UniPoly> {
        let coeffs = char_poly(self)?;
        Ok(UniPoly::new(coeffs))
    }

    /// `λI − M` over `Q[λ]`.
    pub fn char_matrix(&self) -> Matrix<UniPoly> {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            let c = UniPoly::constant(-self.get(i, j));
            if i == j {
                c.add(&UniPoly::x())
            } else {
                c
            }
        })
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTable;

    fn t() -> Arc<VarTable> {
        VarTable::coords_and_params(4, &["a"])
    }

    fn pm(rows: &[&[&str]]) -> Matrix<Poly> {
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        Matrix::from_strings(&rows, &t()).unwrap()
    }

    #[test]
    fn pfaffian_of_plucker_matrix() {
        // p^{ab} as a skew matrix with symbolic entries u1..u4, a, and a fixed 1.
        let m = pm(&[
            &["0", "u1", "u2", "u3"],
            &["-u1", "0", "u4", "a"],
            &["-u2", "-u4", "0", "1"],
            &["-u3", "-a", "-1", "0"],
        ]);
        let pf = m.pfaffian4().unwrap();
        assert_eq!(pf, parse_poly("u1 - u2*a + u3*u4", &t()).unwrap());
        assert_eq!(pf.pow(2), det_fraction_free(&m).unwrap());
    }

    #[test]
    fn pfaffian_rejects_non_skew() {
        let m = pm(&[&["1", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"]]);
        assert_eq!(m.pfaffian4(), Err(Error::NotSkewSymmetric));
    }

    #[test]
    fn symplectic_pfaffian_is_one() {
        let m = Matrix::from_ints(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        assert!(m.pfaffian4().unwrap().is_one());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3, &Rational::one()));
    }

    #[test]
    fn json_strings_round_trip() {
        let m = pm(&[&["u1^2 - a", "3/2*u2"], &["3/2*u2", "1"]]);
        assert_eq!(Matrix::from_strings(&m.to_strings(), &t()).unwrap(), m);
    }
}

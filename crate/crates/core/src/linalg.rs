//! Dense exact matrices over [`Scalar`] with fraction-free elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Sign};

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of fraction-free row reduction.
struct Echelon {
    m: Matrix,
    pivots: Vec<usize>,
}

fn nonzero(s: &Scalar) -> Result<bool> {
    match s.certify_sign() {
        Sign::Zero => Ok(false),
        Sign::Undecided => Err(Error::Undecided("pivot sign".into())),
        _ => Ok(true),
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<Scalar>]) -> Matrix {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
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

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(Scalar::is_exact)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_exact() && x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_exact() && a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_exact() && b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// `self − μ·I`.
    pub fn shift(&self, mu: &Scalar) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = &m[(i, i)] - mu;
        }
        m
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    /// Fraction-free (Bareiss) row echelon form with row pivoting.
    fn echelon(&self) -> Result<Echelon> {
        let mut m = self.clone();
        let mut prev = Scalar::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut p = None;
            for i in r..m.rows {
                if nonzero(&m[(i, c)])? {
                    p = Some(i);
                    break;
                }
            }
            let Some(p) = p else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let piv = m[(r, c)].clone();
            for i in r + 1..m.rows {
                let lead = m[(i, c)].clone();
                for j in c + 1..m.cols {
                    let num = &(&piv * &m[(i, j)]) - &(&lead * &m[(r, j)]);
                    m[(i, j)] = num.checked_div(&prev)?;
                }
                m[(i, c)] = Scalar::zero();
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        Ok(Echelon { m, pivots })
    }

    /// Reduced row echelon form over the coefficient field.
    fn rref(&self) -> Result<Echelon> {
        let Echelon { mut m, pivots } = self.echelon()?;
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = m[(r, c)].recip()?;
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..r {
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    m[(i, j)] = &m[(i, j)] - &(&f * &m[(r, j)]);
                }
            }
        }
        Ok(Echelon { m, pivots })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.echelon()?.pivots.len())
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Result<Vec<Vec<Scalar>>> {
        let Echelon { m, pivots } = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -&m[(r, f)];
                }
                v
            })
            .collect())
    }

    fn solve_impl(&self, b: &[Scalar], unique: bool) -> Result<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let Echelon { m, pivots } = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Linear("inconsistent system".into()));
        }
        if unique && pivots.len() < self.cols {
            return Err(Error::Linear("underdetermined system".into()));
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = m[(r, self.cols)].clone();
        }
        Ok(x)
    }

    /// The unique solution of `self · x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.solve_impl(b, true)
    }

    /// Some solution of `self · x = b` (free variables set to zero).
    pub fn solve_any(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.solve_impl(b, false)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        assert!(self.is_square());
        let mut det = Scalar::one();
        let mut m = self.clone();
        let n = self.rows;
        for c in 0..n {
            let mut p = c;
            while p < n && !nonzero(&m[(p, c)])? {
                p += 1;
            }
            if p == n {
                return Ok(Scalar::zero());
            }
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.recip()?;
            for i in c + 1..n {
                let f = &m[(i, c)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    m[(i, j)] = &m[(i, j)] - &(&f * &m[(c, j)]);
                }
            }
        }
        Ok(det)
    }

    /// Leading principal minors via Bareiss without pivoting.
    pub fn leading_principal_minors(&self) -> Result<Vec<Scalar>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut prev = Scalar::one();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let piv = m[(k, k)].clone();
            out.push(piv.clone());
            if !nonzero(&piv)? {
                // the remaining minors need pivoting; report them as zero-led
                for _ in k + 1..n {
                    out.push(Scalar::zero());
                }
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&piv * &m[(i, j)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = num.checked_div(&prev)?;
                }
            }
            prev = piv;
        }
        Ok(out)
    }

    pub fn is_positive_definite(&self) -> Result<bool> {
        for m in self.leading_principal_minors()? {
            match m.certify_sign() {
                Sign::Positive => {}
                Sign::Undecided => return Err(Error::Undecided("principal minor sign".into())),
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    #[test]
    fn determinant_with_swaps() {
        let a = m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(a.determinant().unwrap(), Scalar::int(-2));
    }

    #[test]
    fn bareiss_minors_are_principal_minors() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a.leading_principal_minors().unwrap(), vec![Scalar::int(2), Scalar::int(3), Scalar::int(4)]);
        assert!(a.is_positive_definite().unwrap());
        assert!(!m(&[&[1, 2], &[2, 1]]).is_positive_definite().unwrap());
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank().unwrap(), 2);
        let ns = a.nullspace().unwrap();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_reports_inconsistent_and_underdetermined() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&[Scalar::int(1), Scalar::int(2)]).is_err());
        assert!(a.solve(&[Scalar::int(1), Scalar::int(1)]).is_err());
        assert_eq!(a.solve_any(&[Scalar::int(1), Scalar::int(1)]).unwrap(), vec![Scalar::int(1), Scalar::zero()]);
        let b = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(b.solve(&[Scalar::int(3), Scalar::int(5)]).unwrap(), vec![Scalar::frac(4, 5), Scalar::frac(7, 5)]);
    }
}

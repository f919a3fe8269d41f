use std::fmt;

use super::{CycloNum, ExactError};

/// Dense rectangular matrix over Q(μ), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![CycloNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycloNum::one());
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<CycloNum>>) -> Result<Self, ExactError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(ExactError::Shape {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(ExactMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNum) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycloNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<CycloNum>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[CycloNum]) -> Result<Vec<CycloNum>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::Shape {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(CycloNum::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = CycloNum::zero();
                for k in 0..self.cols {
                    acc += &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(CycloNum::conj).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloNum::is_zero)
    }

    /// Determinant of a 3×3 matrix.
    pub fn det3(&self) -> Result<CycloNum, ExactError> {
        if self.rows != 3 || self.cols != 3 {
            return Err(ExactError::Shape {
                expected: 3,
                found: if self.rows != 3 { self.rows } else { self.cols },
            });
        }
        let m = |r, c| self.get(r, c);
        let minor = |r1, r2, c1, c2| &(m(r1, c1) * m(r2, c2)) - &(m(r1, c2) * m(r2, c1));
        Ok(&(&(m(0, 0) * &minor(1, 2, 1, 2)) - &(m(0, 1) * &minor(1, 2, 0, 2)))
            + &(m(0, 2) * &minor(1, 2, 0, 1)))
    }

    /// Inverse of a 3×3 matrix via the adjugate.
    pub fn inverse3(&self) -> Result<ExactMatrix, ExactError> {
        let det = self.det3()?;
        let inv_det = det.inv().map_err(|_| ExactError::Singular)?;
        let m = |r: usize, c: usize| self.get(r % 3, c % 3);
        let mut out = ExactMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                // cofactor of (j, i), cyclic index form keeps the sign implicit
                let c = &(m(j + 1, i + 1) * m(j + 2, i + 2)) - &(m(j + 1, i + 2) * m(j + 2, i + 1));
                out.set(i, j, &c * &inv_det);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

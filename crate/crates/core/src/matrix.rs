//! Dense matrices over `Rat`, row-major.
//!
//! The text format is line-oriented and bit-exact: first line `rows cols`,
//! then one line per row with entries written as `p` or `p/q`, separated by
//! single spaces.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{denominator_lcm, dot, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Rat] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        RatMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                acc += &(&self[(i, k)] * &other[(k, j)]);
            }
            acc
        })
    }

    /// `self * v^T` for a row vector `v`, returning a column as a Vec.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `v * self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = Rat::zero();
                for i in 0..self.rows {
                    acc += &(&v[i] * &self[(i, j)]);
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * s)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        denominator_lcm(self.data.iter())
    }

    /// `(D * self, D)` with `D` the denominator lcm, making entries integral.
    pub fn cleared(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let d = self.denominator_lcm();
        let dr = Rat::from_bigint(d.clone());
        let m = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        let y = x * &dr;
                        debug_assert!(y.is_integer());
                        y.numer().clone()
                    })
                    .collect()
            })
            .collect();
        (m, d)
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Rat::from_bigint).collect())
                .collect(),
        )
    }

    /// Gaussian-elimination rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, piv);
            for i in 0..m.rows {
                if i != rank && !m[(i, col)].is_zero() {
                    let f = &m[(i, col)] / &m[(rank, col)];
                    m.row_axpy(i, rank, &-f);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `row[target] += f * row[source]`.
    pub fn row_axpy(&mut self, target: usize, source: usize, f: &Rat) {
        for j in 0..self.cols {
            let add = &self[(source, j)] * f;
            self[(target, j)] += &add;
        }
    }

    /// Determinant of a square matrix by fraction-free style elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| !m[(i, col)].is_zero()) else {
                return Rat::zero();
            };
            if piv != col {
                m.swap_rows(col, piv);
                det = -det;
            }
            det = &det * &m[(col, col)];
            for i in col + 1..n {
                if !m[(i, col)].is_zero() {
                    let f = &m[(i, col)] / &m[(col, col)];
                    m.row_axpy(i, col, &-f);
                }
            }
        }
        det
    }

    pub fn write_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn read_text(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let mut it = header.split_whitespace();
        let rows: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad matrix header".into()))?;
        let cols: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad matrix header".into()))?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("matrix text truncated".into()))?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::Parse(format!(
                    "expected {cols} entries, found {}",
                    entries.len()
                )));
            }
            for e in entries {
                data.push(e.parse::<Rat>()?);
            }
        }
        Ok(RatMatrix { rows, cols, data })
    }

    /// Rows stacked on top of each other.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.row_vecs();
        rows.extend(other.row_vecs());
        RatMatrix::from_rows(rows)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Parse a whitespace-separated rational row.
pub fn parse_rat_row(line: &str, expect: usize) -> Result<Vec<Rat>> {
    let v: Result<Vec<Rat>> = line.split_whitespace().map(|t| t.parse()).collect();
    let v = v?;
    if v.len() != expect {
        return Err(Error::Parse(format!(
            "expected {expect} entries, found {}",
            v.len()
        )));
    }
    Ok(v)
}

/// Render a rational row with single spaces.
pub fn format_rat_row(row: &[Rat]) -> String {
    row.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Determinant of a BigInt matrix (Bareiss, exact).
pub fn bigint_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mul_identity() {
        let m = RatMatrix::from_int_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.mul(&RatMatrix::identity(2)), m);
    }

    #[test]
    fn det_small() {
        let m = RatMatrix::from_int_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(m.det(), Rat::from_int(3));
        let s = RatMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(s.det(), Rat::from_int(-1));
    }

    #[test]
    fn bigint_det_matches() {
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(-1)],
            vec![BigInt::from(0), BigInt::from(5), BigInt::from(4)],
        ];
        let m = RatMatrix::from_bigint_rows(rows.clone());
        assert_eq!(Rat::from_bigint(bigint_det(&rows)), m.det());
    }

    #[test]
    fn rank_detects_dependence() {
        let m = RatMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
        let m = RatMatrix::from_int_rows(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn text_format_exact() {
        let m = RatMatrix::from_rows(vec![
            vec![Rat::new(1, 3), Rat::from_int(-2)],
            vec![Rat::zero(), Rat::new(-7, 2)],
        ]);
        let text = m.write_text();
        assert_eq!(text, "2 2\n1/3 -2\n0 -7/2\n");
        assert_eq!(RatMatrix::read_text(&text).unwrap(), m);
    }

    proptest! {
        #[test]
        fn text_roundtrip(vals in proptest::collection::vec((-30i64..30, 1i64..12), 6)) {
            let m = RatMatrix::from_rows(vec![
                vals[0..3].iter().map(|&(p, q)| Rat::new(p, q)).collect(),
                vals[3..6].iter().map(|&(p, q)| Rat::new(p, q)).collect(),
            ]);
            prop_assert_eq!(RatMatrix::read_text(&m.write_text()).unwrap(), m);
        }
    }
}

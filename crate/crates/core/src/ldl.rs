//! Exact LDL^T ("rational Cholesky") decomposition of a symmetric positive
//! definite matrix: `G = L D L^T` with `L` unit lower triangular and `D`
//! a positive diagonal. This is what turns a Gram matrix into the
//! per-level bounds used by short-vector enumeration.

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rat::Rat;

#[derive(Debug)]
pub struct Ldl {
    /// Unit lower-triangular factor.
    pub lower: RatMatrix,
    /// Diagonal of `D`, all positive.
    pub diag: Vec<Rat>,
}

pub fn rational_cholesky(gram: &RatMatrix) -> Result<Ldl> {
    if !gram.is_symmetric() {
        return Err(Error::InvalidInput("gram matrix must be symmetric".into()));
    }
    let n = gram.rows();
    let mut lower = RatMatrix::identity(n);
    let mut diag = vec![Rat::zero(); n];
    for j in 0..n {
        let mut d = gram[(j, j)].clone();
        for k in 0..j {
            d -= &(&(&lower[(j, k)] * &lower[(j, k)]) * &diag[k]);
        }
        if !d.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        diag[j] = d;
        for i in j + 1..n {
            let mut v = gram[(i, j)].clone();
            for k in 0..j {
                v -= &(&(&lower[(i, k)] * &lower[(j, k)]) * &diag[k]);
            }
            lower[(i, j)] = &v / &diag[j];
        }
    }
    Ok(Ldl { lower, diag })
}

impl Ldl {
    /// Reassemble `L D L^T`.
    pub fn reassemble(&self) -> RatMatrix {
        let n = self.diag.len();
        let mut d = RatMatrix::zero(n, n);
        for i in 0..n {
            d[(i, i)] = self.diag[i].clone();
        }
        self.lower.mul(&d).mul(&self.lower.transpose())
    }

    /// Product of the diagonal = determinant of the original matrix.
    pub fn det(&self) -> Rat {
        let mut acc = Rat::one();
        for d in &self.diag {
            acc = &acc * d;
        }
        acc
    }

    /// Solve `G x = b` (column convention) using the factorization.
    pub fn solve(&self, b: &[Rat]) -> Vec<Rat> {
        let n = self.diag.len();
        assert_eq!(b.len(), n);
        // forward: L y = b
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let s = &self.lower[(i, k)] * &y[k];
                y[i] -= &s;
            }
        }
        // scale: D z = y
        for i in 0..n {
            y[i] = &y[i] / &self.diag[i];
        }
        // back: L^T x = z
        for i in (0..n).rev() {
            for k in i + 1..n {
                let s = &self.lower[(k, i)] * &y[k];
                y[i] -= &s;
            }
        }
        y
    }
}

/// Exact inverse of a symmetric positive definite matrix.
pub fn spd_inverse(gram: &RatMatrix) -> Result<RatMatrix> {
    let ldl = rational_cholesky(gram)?;
    let n = gram.rows();
    let mut inv = RatMatrix::zero(n, n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let col = ldl.solve(&e);
        for i in 0..n {
            inv[(i, j)] = col[i].clone();
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_factors_trivially() {
        let ldl = rational_cholesky(&RatMatrix::identity(3)).unwrap();
        assert_eq!(ldl.lower, RatMatrix::identity(3));
        assert!(ldl.diag.iter().all(|d| d.is_one()));
    }

    #[test]
    fn a2_gram() {
        // hand elimination of {{2,1},{1,2}}: D = diag(2, 3/2)
        let g = RatMatrix::from_int_rows(&[vec![2, 1], vec![1, 2]]);
        let ldl = rational_cholesky(&g).unwrap();
        assert_eq!(ldl.diag, vec![Rat::from_int(2), Rat::new(3, 2)]);
        assert_eq!(ldl.reassemble(), g);
        assert_eq!(ldl.det(), Rat::from_int(3));
    }

    #[test]
    fn reassembly_is_exact() {
        let g = RatMatrix::from_rows(vec![
            vec![Rat::new(5, 2), Rat::new(1, 3), Rat::from_int(1)],
            vec![Rat::new(1, 3), Rat::new(7, 4), Rat::new(-1, 2)],
            vec![Rat::from_int(1), Rat::new(-1, 2), Rat::from_int(3)],
        ]);
        let ldl = rational_cholesky(&g).unwrap();
        assert_eq!(ldl.reassemble(), g);
    }

    #[test]
    fn rejects_indefinite() {
        let g = RatMatrix::from_int_rows(&[vec![1, 2], vec![2, 1]]);
        assert_eq!(rational_cholesky(&g).unwrap_err(), Error::NotPositiveDefinite);
        let z = RatMatrix::from_int_rows(&[vec![0]]);
        assert_eq!(rational_cholesky(&z).unwrap_err(), Error::NotPositiveDefinite);
    }

    #[test]
    fn solve_matches_multiplication() {
        let g = RatMatrix::from_int_rows(&[vec![2, 1], vec![1, 2]]);
        let ldl = rational_cholesky(&g).unwrap();
        let x = ldl.solve(&[Rat::from_int(1), Rat::from_int(0)]);
        assert_eq!(g.mul_vec(&x), vec![Rat::from_int(1), Rat::from_int(0)]);
        let inv = spd_inverse(&g).unwrap();
        assert_eq!(inv.mul(&g), RatMatrix::identity(2));
        assert_eq!(inv[(0, 0)], Rat::new(2, 3));
        assert_eq!(inv[(0, 1)], Rat::new(-1, 3));
    }
}

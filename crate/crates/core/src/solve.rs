//! Exact rational linear solving and kernels.

use crate::matrix::RatMatrix;
use crate::rat::Rat;

/// Outcome of a linear solve; an inconsistent system is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Vec<Rat>),
    NoSolution,
}

impl SolveOutcome {
    pub fn solution(self) -> Option<Vec<Rat>> {
        match self {
            SolveOutcome::Solution(x) => Some(x),
            SolveOutcome::NoSolution => None,
        }
    }
}

/// Solve `x * m = rhs` over the rationals (row convention: `x` combines the
/// rows of `m`). Returns one particular solution.
pub fn solve(m: &RatMatrix, rhs: &[Rat]) -> SolveOutcome {
    assert_eq!(m.cols(), rhs.len(), "rhs length mismatch");
    // Gaussian elimination on the transpose system m^T x^T = rhs^T.
    let rows = m.rows();
    let cols = m.cols();
    // augmented: cols equations, rows unknowns
    let mut a = RatMatrix::from_fn(cols, rows + 1, |i, j| {
        if j < rows {
            m[(j, i)].clone()
        } else {
            rhs[i].clone()
        }
    });
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..rows {
        let Some(p) = (r..cols).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in 0..rows + 1 {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..cols {
            if i != r && !a[(i, c)].is_zero() {
                let f = -a[(i, c)].clone();
                a.row_axpy(i, r, &f);
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == cols {
            break;
        }
    }
    // inconsistent if any zero row has nonzero rhs
    for i in r..cols {
        if !a[(i, rows)].is_zero() {
            return SolveOutcome::NoSolution;
        }
    }
    let mut x = vec![Rat::zero(); rows];
    for &(row, col) in &pivots {
        x[col] = a[(row, rows)].clone();
    }
    SolveOutcome::Solution(x)
}

/// Basis of the rational null space `{v : m * v^T = 0}`, returned as rows.
pub fn kernel(m: &RatMatrix) -> RatMatrix {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in 0..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = -a[(i, c)].clone();
                a.row_axpy(i, r, &f);
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &f in &free_cols {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[(row, f)].clone();
        }
        basis.push(v);
    }
    if basis.is_empty() {
        RatMatrix::zero(0, cols)
    } else {
        RatMatrix::from_rows(basis)
    }
}

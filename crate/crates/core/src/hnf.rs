//! Row-style Hermite normal form over the integers.
//!
//! Convention: pivots positive, entries above a pivot reduced into
//! `[0, pivot)`, zero rows moved last. The transform `U` with `H = U * M` is
//! unimodular, so the nonzero rows of `H` are a canonical basis of the row
//! space of `M` over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{bigint_det, RatMatrix};
use crate::rat::Rat;

/// HNF of an integer matrix given as BigInt rows. Returns `(H, U)` with
/// `H = U * M` and `U` unimodular.
pub fn hnf_bigint(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut h = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let mut r = 0;
    for j in 0..cols {
        if r == rows {
            break;
        }
        // Clear column j below position r by gcd reduction.
        loop {
            let mut piv: Option<usize> = None;
            for i in r..rows {
                if !h[i][j].is_zero()
                    && piv.is_none_or(|p| h[i][j].abs() < h[p][j].abs())
                {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            if p != r {
                h.swap(p, r);
                u.swap(p, r);
            }
            let mut done = true;
            for i in r + 1..rows {
                if !h[i][j].is_zero() {
                    let q = h[i][j].div_floor(&h[r][j]);
                    row_axpy(&mut h, i, r, &-&q);
                    row_axpy(&mut u, i, r, &-&q);
                    if !h[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][j].is_zero() {
            continue;
        }
        if h[r][j].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            if !h[i][j].is_zero() {
                let q = h[i][j].div_floor(&h[r][j]);
                if !q.is_zero() {
                    row_axpy(&mut h, i, r, &-&q);
                    row_axpy(&mut u, i, r, &-&q);
                }
            }
        }
        r += 1;
    }
    (h, u)
}

fn row_axpy(m: &mut [Vec<BigInt>], target: usize, source: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        *t += f * s;
    }
}

fn negate_row(m: &mut [Vec<BigInt>], i: usize) {
    for x in m[i].iter_mut() {
        *x = -&*x;
    }
}

/// HNF of a `RatMatrix` with integer entries. Returns `(H, U)`.
pub fn hnf(m: &RatMatrix) -> Result<(RatMatrix, RatMatrix)> {
    if !m.is_integer() {
        return Err(Error::InvalidInput("hnf requires integer entries".into()));
    }
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.numer().clone()).collect())
        .collect();
    let (h, u) = hnf_bigint(&rows);
    Ok((
        RatMatrix::from_bigint_rows(h),
        RatMatrix::from_bigint_rows(u),
    ))
}

pub fn is_unimodular(u: &[Vec<BigInt>]) -> bool {
    bigint_det(u).abs().is_one()
}

/// Canonical basis of the rational row lattice of `m`: clear denominators,
/// take nonzero HNF rows, scale back. Canonical in the sense that any two
/// generating sets of the same lattice produce identical output.
pub fn hnf_basis(m: &RatMatrix) -> RatMatrix {
    let (rows, d) = m.cleared();
    let (h, _) = hnf_bigint(&rows);
    let dr = Rat::from_bigint(d);
    let basis: Vec<Vec<Rat>> = h
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.into_iter().map(|x| Rat::from_bigint(x) / dr.clone()).collect())
        .collect();
    if basis.is_empty() {
        RatMatrix::zero(0, m.cols())
    } else {
        RatMatrix::from_rows(basis)
    }
}

/// Basis of the saturated integer kernel `{x in Z^rows : x * m = 0}`.
///
/// Works for rational `m` as well, since clearing denominators does not
/// change the kernel.
pub fn integer_kernel(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    let (rows, _) = m.cleared();
    let (h, u) = hnf_bigint(&rows);
    h.iter()
        .zip(u)
        .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
        .map(|(_, ur)| ur)
        .collect()
}

/// Solve `x * m = rhs` for integer `x` (row convention) via HNF back
/// substitution. Returns `None` when no integer solution exists.
pub fn solve_integer(m: &RatMatrix, rhs: &[Rat]) -> Option<Vec<BigInt>> {
    assert_eq!(m.cols(), rhs.len(), "rhs length mismatch");
    // Common scale for matrix and rhs: x * (D m) = D rhs has the same
    // integer solutions.
    let mut all = m.clone();
    let rhs_m = RatMatrix::from_rows(vec![rhs.to_vec()]);
    all = all.vstack(&rhs_m);
    let (cleared, _) = all.cleared();
    let mrows = &cleared[..m.rows()];
    let target = &cleared[m.rows()];
    let (h, u) = hnf_bigint(mrows);
    // Express target in terms of the nonzero rows of h (they are in echelon
    // form), then map back through u.
    let mut coef = vec![BigInt::zero(); m.rows()];
    let mut residue = target.to_vec();
    for (i, hr) in h.iter().enumerate() {
        let Some(lead) = hr.iter().position(|x| !x.is_zero()) else {
            break;
        };
        if residue[lead].is_zero() {
            continue;
        }
        let (q, r) = residue[lead].div_rem(&hr[lead]);
        if !r.is_zero() {
            return None;
        }
        for (res, x) in residue.iter_mut().zip(hr.iter()) {
            *res -= &q * x;
        }
        coef[i] = q;
    }
    if residue.iter().any(|x| !x.is_zero()) {
        return None;
    }
    // x = coef * u
    let n = m.rows();
    let mut x = vec![BigInt::zero(); n];
    for i in 0..n {
        if coef[i].is_zero() {
            continue;
        }
        for j in 0..n {
            x[j] += &coef[i] * &u[i][j];
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn int_matrix(rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_int_rows(rows)
    }

    #[test]
    fn identity_is_fixed() {
        let m = RatMatrix::identity(3);
        let (h, u) = hnf(&m).unwrap();
        assert_eq!(h, m);
        assert_eq!(u, RatMatrix::identity(3));
    }

    #[test]
    fn overcomplete_generators() {
        // rows {(2,0),(0,2),(1,1)} generate the checkerboard sublattice of Z^2;
        // hand row-reduction gives basis {(1,1),(0,2)}.
        let m = int_matrix(&[vec![2, 0], vec![0, 2], vec![1, 1]]);
        let (h, u) = hnf(&m).unwrap();
        assert_eq!(h.row(0), int_matrix(&[vec![1, 1]]).row(0));
        assert_eq!(h.row(1), int_matrix(&[vec![0, 2]]).row(0));
        assert!(h.row(2).iter().all(|x| x.is_zero()));
        assert_eq!(u.mul(&m), h);
    }

    #[test]
    fn single_row_sign_convention() {
        let m = int_matrix(&[vec![4, 6]]);
        let (h, _) = hnf(&m).unwrap();
        assert_eq!(h, m, "a single row with positive lead is already canonical");
        let neg = int_matrix(&[vec![-4, -6]]);
        let (h, _) = hnf(&neg).unwrap();
        assert_eq!(h, m);
    }

    #[test]
    fn rejects_fractions() {
        let m = RatMatrix::from_rows(vec![vec![Rat::new(1, 2)]]);
        assert!(hnf(&m).is_err());
    }

    #[test]
    fn transform_is_unimodular_randomized() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..4)
                .map(|_| (0..4).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let m = int_matrix(&rows);
            let (h, u) = hnf(&m).unwrap();
            assert_eq!(u.mul(&m), h, "U*M = H");
            let (urows, _) = u.cleared();
            assert!(is_unimodular(&urows), "|det U| = 1");
            // pivots positive, entries above pivot in [0, pivot)
            let mut seen_zero = false;
            for i in 0..h.rows() {
                let lead = h.row(i).iter().position(|x| !x.is_zero());
                match lead {
                    None => seen_zero = true,
                    Some(j) => {
                        assert!(!seen_zero, "zero rows must come last");
                        assert!(h[(i, j)].is_positive());
                        for k in 0..i {
                            let e = &h[(k, j)];
                            assert!(!e.is_negative() && e < &h[(i, j)]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_of_dependent_rows() {
        // (1,1) and (2,2): kernel generated by (2,-1) or (-2,1)
        let m = int_matrix(&[vec![1, 1], vec![2, 2]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 1);
        let x = &k[0];
        assert_eq!(&x[0] + 2 * &x[1], BigInt::zero());
        assert!(x[1].abs().is_one(), "kernel basis must be saturated");
    }

    #[test]
    fn integer_solve() {
        let m = int_matrix(&[vec![2, 1], vec![1, 1]]);
        let x = solve_integer(&m, &[Rat::from_int(3), Rat::from_int(2)]).unwrap();
        assert_eq!(x, vec![BigInt::from(1), BigInt::from(1)]);
        // (1,0) is not in the lattice generated by (2,0),(0,2)
        let m = int_matrix(&[vec![2, 0], vec![0, 2]]);
        assert!(solve_integer(&m, &[Rat::from_int(1), Rat::from_int(0)]).is_none());
        assert!(solve_integer(&m, &[Rat::from_int(2), Rat::from_int(-4)]).is_some());
    }
}

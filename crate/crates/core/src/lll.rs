//! LLL basis reduction with parameter 3/4, exact throughout.
//!
//! The working representation is the all-integer one: `d[i]` is the Gram
//! determinant of the first `i` basis vectors and `lambda[i][j] = d[j+1] *
//! mu[i][j]`, so no rationals appear in the inner loop. Size reduction
//! rounds half-to-even, which fixes the output deterministically across
//! platforms. The Gram matrix is `gram_scale * B * B^T` with denominators
//! cleared; scaling does not change which bases are reduced.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rat::Rat;

struct State {
    basis: Vec<Vec<Rat>>,
    lambda: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    n: usize,
}

impl State {
    fn size_reduce(&mut self, i: usize, j: usize) {
        let two_lam = 2u32 * self.lambda[i][j].abs();
        if two_lam <= self.d[j + 1] {
            return;
        }
        let q = round_half_even(&self.lambda[i][j], &self.d[j + 1]);
        if q.is_zero() {
            return;
        }
        let qr = Rat::from_bigint(q.clone());
        let src = self.basis[j].clone();
        for (t, s) in self.basis[i].iter_mut().zip(src.iter()) {
            *t -= &(&qr * s);
        }
        let lj = self.lambda[j][..j].to_vec();
        for (t, s) in self.lambda[i][..j].iter_mut().zip(lj.iter()) {
            *t -= &q * s;
        }
        self.lambda[i][j] -= &q * &self.d[j + 1];
    }

    fn lovasz_holds(&self, r: usize) -> bool {
        // B_r >= (3/4 - mu^2) B_{r-1}  <=>  4 (d[r+1] d[r-1] + lam^2) >= 3 d[r]^2
        let lam = &self.lambda[r][r - 1];
        let lhs = 4u32 * (&self.d[r + 1] * &self.d[r - 1] + lam * lam);
        let rhs = 3u32 * (&self.d[r] * &self.d[r]);
        lhs >= rhs
    }

    fn swap(&mut self, r: usize) {
        let lam = self.lambda[r][r - 1].clone();
        let new_dr = (&self.d[r - 1] * &self.d[r + 1] + &lam * &lam).exact_div(&self.d[r]);
        for i in r + 1..self.n {
            let t = self.lambda[i][r].clone();
            let new_ir = (&self.d[r + 1] * &self.lambda[i][r - 1] - &lam * &t)
                .exact_div(&self.d[r]);
            self.lambda[i][r - 1] =
                (&new_dr * &t + &lam * &new_ir).exact_div(&self.d[r + 1]);
            self.lambda[i][r] = new_ir;
        }
        for j in 0..r - 1 {
            let tmp = self.lambda[r][j].clone();
            self.lambda[r][j] = self.lambda[r - 1][j].clone();
            self.lambda[r - 1][j] = tmp;
        }
        self.d[r] = new_dr;
        self.basis.swap(r - 1, r);
    }
}

trait ExactDiv {
    fn exact_div(&self, d: &BigInt) -> BigInt;
}

impl ExactDiv for BigInt {
    fn exact_div(&self, d: &BigInt) -> BigInt {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "non-exact division in integer LLL");
        q
    }
}

/// Nearest integer to `num/den` (`den > 0`), ties to even.
fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    let two_r = 2u32 * &r;
    match two_r.cmp(den) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1u32,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1u32
            }
        }
    }
}

/// LLL-reduce `basis` (rows are generators) with respect to the inner
/// product scaled by `gram_scale`. The output generates the identical
/// lattice. Dependent rows are rejected.
pub fn lll_reduce(basis: &RatMatrix, gram_scale: &Rat) -> Result<RatMatrix> {
    if !gram_scale.is_positive() {
        return Err(Error::InvalidInput("gram_scale must be positive".into()));
    }
    let n = basis.rows();
    if n == 0 {
        return Ok(basis.clone());
    }
    let gram_rat = basis.mul(&basis.transpose()).scale(gram_scale);
    let (gram, _) = gram_rat.cleared();

    // lambda[i][j] for j < i, and d[i+1] from the loop at j = i.
    let mut lambda: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    let mut d: Vec<BigInt> = vec![BigInt::one(); n + 1];
    for i in 0..n {
        for j in 0..=i {
            let mut u = gram[i][j].clone();
            for k in 0..j {
                u = (&d[k + 1] * &u - &lambda[i][k] * &lambda[j][k]).exact_div(&d[k]);
            }
            if j < i {
                lambda[i][j] = u;
            } else {
                if !u.is_positive() {
                    return Err(Error::NotABasis);
                }
                d[i + 1] = u;
            }
        }
    }

    let mut st = State {
        basis: basis.row_vecs(),
        lambda,
        d,
        n,
    };

    let mut k = 1;
    while k < n {
        st.size_reduce(k, k - 1);
        if !st.lovasz_holds(k) {
            st.swap(k);
            k = if k > 1 { k - 1 } else { 1 };
        } else {
            for j in (0..k.saturating_sub(1)).rev() {
                st.size_reduce(k, j);
            }
            k += 1;
        }
    }
    Ok(RatMatrix::from_rows(st.basis))
}

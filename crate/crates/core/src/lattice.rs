//! Scaled rational lattices, splittings, sections, and projections.
//!
//! A `ScaledLattice` is a rank-`r` lattice given by basis rows in rational
//! ambient coordinates together with a positive rational `scale`: the inner
//! product of ambient vectors `x`, `y` is `scale * (x . y)`. Irrational
//! rescalings like `sqrt(2) D4` are carried entirely in `scale` (as the
//! factor acting on squared lengths), never in coordinates, so all
//! arithmetic stays rational.
//!
//! A `Splitting` fixes a `k`-dimensional subspace `U` (spanned by given
//! rational rows) inside the ambient space of a lattice; `V` is derived as
//! the orthogonal complement. Sections are the sublattices lying inside one
//! side, projections are the images of the orthogonal projections onto one
//! side.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hnf::{hnf_basis, integer_kernel, solve_integer};
use crate::ldl::{rational_cholesky, spd_inverse};
use crate::matrix::{format_rat_row, parse_rat_row, RatMatrix};
use crate::rat::{dot, norm_sq, Rat};
use crate::solve::kernel;

#[derive(Clone, Debug)]
pub struct ScaledLattice {
    ambient_dim: usize,
    rank: usize,
    basis: RatMatrix,
    scale: Rat,
}

impl ScaledLattice {
    /// A lattice from independent basis rows. Rejects dependent rows and
    /// nonpositive scales.
    pub fn new(basis: RatMatrix, scale: Rat) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::InvalidInput("scale must be positive".into()));
        }
        let lat = ScaledLattice {
            ambient_dim: basis.cols(),
            rank: basis.rows(),
            basis,
            scale,
        };
        if lat.rank > 0 {
            // positive definite Gram <=> independent rows
            rational_cholesky(&lat.gram()).map_err(|_| Error::NotABasis)?;
        }
        Ok(lat)
    }

    /// A lattice from a (possibly redundant) generating set; the basis is
    /// extracted canonically by HNF after clearing denominators.
    pub fn from_generators(generators: &RatMatrix, scale: Rat) -> Result<Self> {
        Self::new(hnf_basis(generators), scale)
    }

    pub fn zn(n: usize) -> Self {
        ScaledLattice {
            ambient_dim: n,
            rank: n,
            basis: RatMatrix::identity(n),
            scale: Rat::one(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// Gram matrix `scale * B * B^T`, exact.
    pub fn gram(&self) -> RatMatrix {
        self.basis.mul(&self.basis.transpose()).scale(&self.scale)
    }

    /// `det(Gram)`, exact and positive.
    pub fn determinant(&self) -> Rat {
        if self.rank == 0 {
            return Rat::one();
        }
        rational_cholesky(&self.gram())
            .expect("valid lattice has positive definite Gram")
            .det()
    }

    /// Squared length of an ambient vector under this lattice's scale.
    pub fn norm_of(&self, v: &[Rat]) -> Rat {
        &self.scale * &norm_sq(v)
    }

    pub fn inner(&self, a: &[Rat], b: &[Rat]) -> Rat {
        &self.scale * &dot(a, b)
    }

    /// The dual lattice in the same span, with the same scale convention:
    /// basis `(1/scale) * (B B^T)^{-1} B`.
    pub fn dual(&self) -> ScaledLattice {
        if self.rank == 0 {
            return self.clone();
        }
        let gram_coord = self.basis.mul(&self.basis.transpose());
        let inv = spd_inverse(&gram_coord).expect("coordinate Gram is positive definite");
        let dual_basis = inv.mul(&self.basis).scale(&self.scale.recip());
        ScaledLattice {
            ambient_dim: self.ambient_dim,
            rank: self.rank,
            basis: dual_basis,
            scale: self.scale.clone(),
        }
    }

    /// Integer coordinates of `v` in this basis, if `v` is a lattice point.
    pub fn member_coords(&self, v: &[Rat]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        solve_integer(&self.basis, v)
    }

    pub fn member(&self, v: &[Rat]) -> bool {
        self.member_coords(v).is_some()
    }

    /// The canonical (HNF) basis of this lattice; two lattices are equal as
    /// point sets iff their canonical bases agree.
    pub fn canonical_basis(&self) -> RatMatrix {
        hnf_basis(&self.basis)
    }

    pub fn canonicalized(&self) -> ScaledLattice {
        ScaledLattice {
            ambient_dim: self.ambient_dim,
            rank: self.rank,
            basis: self.canonical_basis(),
            scale: self.scale.clone(),
        }
    }

    /// Rescale squared lengths by `factor` (keeps coordinates).
    pub fn rescaled(&self, factor: &Rat) -> Result<ScaledLattice> {
        ScaledLattice::new(self.basis.clone(), &self.scale * factor)
    }

    /// Lattice file format: line 1 `ambient_dim rank`, line 2 `scale s`,
    /// then the basis rows.
    pub fn write_text(&self) -> String {
        let mut out = format!("{} {}\n", self.ambient_dim, self.rank);
        out.push_str(&format!("scale {}\n", self.scale));
        for i in 0..self.rank {
            out.push_str(&format_rat_row(self.basis.row(i)));
            out.push('\n');
        }
        out
    }

    pub fn read_text(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty lattice text".into()))?;
        let mut it = header.split_whitespace();
        let ambient: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad lattice header".into()))?;
        let rank: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad lattice header".into()))?;
        let scale_line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing scale line".into()))?;
        let scale = scale_line
            .strip_prefix("scale ")
            .ok_or_else(|| Error::Parse("missing `scale` prefix".into()))?
            .parse::<Rat>()?;
        let mut rows = Vec::with_capacity(rank);
        for _ in 0..rank {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("lattice text truncated".into()))?;
            rows.push(parse_rat_row(line, ambient)?);
        }
        let basis = if rank == 0 {
            RatMatrix::zero(0, ambient)
        } else {
            RatMatrix::from_rows(rows)
        };
        ScaledLattice::new(basis, scale)
    }
}

/// Generation equality in fixed coordinates: same ambient space, same scale,
/// same point set. Isometry is deliberately not tested here.
pub fn lattice_equal(a: &ScaledLattice, b: &ScaledLattice) -> bool {
    a.ambient_dim == b.ambient_dim
        && a.rank == b.rank
        && a.scale == b.scale
        && a.canonical_basis() == b.canonical_basis()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    U,
    V,
}

#[derive(Clone, Debug)]
pub struct Splitting {
    lattice: ScaledLattice,
    u_basis: RatMatrix,
    v_basis: RatMatrix,
    k: usize,
    l: usize,
}

impl Splitting {
    /// Split the ambient space of `lattice` as `U + V` with `U` spanned by
    /// the rows of `u_basis` and `V` its orthogonal complement. Requires the
    /// section on each side to have full rank (`k` and `n - k`), otherwise
    /// the splitting is degenerate.
    pub fn new(lattice: ScaledLattice, u_basis: RatMatrix) -> Result<Self> {
        let n = lattice.ambient_dim();
        if u_basis.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "subspace rows have {} columns, ambient dimension is {n}",
                u_basis.cols()
            )));
        }
        let k = u_basis.rows();
        if u_basis.rank() != k {
            return Err(Error::InvalidInput("subspace rows are dependent".into()));
        }
        let v_basis = kernel(&u_basis);
        let l = n - k;
        debug_assert_eq!(v_basis.rows(), l);
        let split = Splitting {
            lattice,
            u_basis,
            v_basis,
            k,
            l,
        };
        for (side, want) in [(Side::U, k), (Side::V, l)] {
            let found = split.section_coeffs(side).len();
            if found != want {
                return Err(Error::DegenerateSplitting {
                    expected: want,
                    found,
                });
            }
        }
        Ok(split)
    }

    pub fn lattice(&self) -> &ScaledLattice {
        &self.lattice
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn subspace_basis(&self, side: Side) -> &RatMatrix {
        match side {
            Side::U => &self.u_basis,
            Side::V => &self.v_basis,
        }
    }

    fn complement_basis(&self, side: Side) -> &RatMatrix {
        match side {
            Side::U => &self.v_basis,
            Side::V => &self.u_basis,
        }
    }

    /// Coefficient vectors (in the lattice basis) of a basis of the section
    /// `lattice` with `side`.
    fn section_coeffs(&self, side: Side) -> Vec<Vec<BigInt>> {
        // x = a * B lies in the side subspace iff it is orthogonal to the
        // complement: a * (B * C^T) = 0, solved over the integers.
        let c = self.complement_basis(side);
        let m = self.lattice.basis().mul(&c.transpose());
        integer_kernel(&m)
    }

    /// The lattice of all points of `lattice` lying in the chosen subspace.
    pub fn section(&self, side: Side) -> ScaledLattice {
        let coeffs = self.section_coeffs(side);
        let b = self.lattice.basis();
        let rows: Vec<Vec<Rat>> = coeffs
            .iter()
            .map(|a| {
                let ar: Vec<Rat> = a.iter().cloned().map(Rat::from_bigint).collect();
                b.vec_mul(&ar)
            })
            .collect();
        let gens = if rows.is_empty() {
            RatMatrix::zero(0, self.lattice.ambient_dim())
        } else {
            RatMatrix::from_rows(rows)
        };
        ScaledLattice::from_generators(&gens, self.lattice.scale().clone())
            .expect("section rows are independent by construction")
    }

    /// The lattice generated by the orthogonal projections of the basis onto
    /// the chosen subspace, canonicalized by HNF.
    pub fn project(&self, side: Side) -> ScaledLattice {
        let b = self.lattice.basis();
        let rows: Vec<Vec<Rat>> = (0..b.rows())
            .map(|i| self.project_point(b.row(i), side))
            .collect();
        ScaledLattice::from_generators(
            &RatMatrix::from_rows(rows),
            self.lattice.scale().clone(),
        )
        .expect("projection of a full-rank lattice spans the subspace")
    }

    /// Exact orthogonal projection of an ambient vector onto one side.
    pub fn project_point(&self, w: &[Rat], side: Side) -> Vec<Rat> {
        assert_eq!(w.len(), self.lattice.ambient_dim(), "ambient dimension mismatch");
        let s = self.subspace_basis(side);
        if s.rows() == 0 {
            return vec![Rat::zero(); w.len()];
        }
        // pi(w) = y * S where (S S^T) y^T = S w^T
        let ss_t = s.mul(&s.transpose());
        let rhs = s.mul_vec(w);
        let y = rational_cholesky(&ss_t)
            .expect("subspace basis rows are independent")
            .solve(&rhs);
        s.vec_mul(&y)
    }
}

/// Search for a unimodular change of basis `T` with
/// `T * Gram(a) * T^T = Gram(b)`, i.e. an identification of `a` and `b` as
/// abstract quadratic forms. Practical for small ranks only; used to check
/// that constructed sections and projections match named root lattices.
pub fn gram_isometry(a: &ScaledLattice, b: &ScaledLattice) -> Option<RatMatrix> {
    if a.rank() != b.rank() {
        return None;
    }
    let ga = a.gram();
    let gb = b.gram();
    if a.determinant() != b.determinant() {
        return None;
    }
    let r = a.rank();
    if r == 0 {
        return Some(RatMatrix::zero(0, 0));
    }
    // candidate images: coefficient vectors of each target norm
    let max_norm = (0..r).map(|i| gb[(i, i)].clone()).max().unwrap();
    let cands = enumerate_coeffs_by_form(&ga, &max_norm);
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(r);
    if backtrack_isometry(&ga, &gb, &cands, &mut rows) {
        Some(RatMatrix::from_rows(rows))
    } else {
        None
    }
}

fn backtrack_isometry(
    ga: &RatMatrix,
    gb: &RatMatrix,
    cands: &[Vec<Rat>],
    rows: &mut Vec<Vec<Rat>>,
) -> bool {
    let r = gb.rows();
    let i = rows.len();
    if i == r {
        let t = RatMatrix::from_rows(rows.clone());
        if t.det().abs().is_one() {
            return true;
        }
        return false;
    }
    for c in cands {
        // check Gram row against already-chosen rows
        let gc = ga.mul_vec(c);
        if dot(c, &gc) != gb[(i, i)] {
            continue;
        }
        if rows.iter().enumerate().all(|(j, prev)| dot(prev, &gc) == gb[(i, j)]) {
            rows.push(c.clone());
            if backtrack_isometry(ga, gb, cands, rows) {
                return true;
            }
            rows.pop();
        }
    }
    false
}

/// All integer coefficient vectors `x` with `x G x^T <= bound`, by exact
/// LDL interval recursion. Small ranks only.
fn enumerate_coeffs_by_form(g: &RatMatrix, bound: &Rat) -> Vec<Vec<Rat>> {
    let r = g.rows();
    let ldl = rational_cholesky(g).expect("form must be positive definite");
    let mut out = Vec::new();
    let mut x = vec![Rat::zero(); r];
    // recurse from the last coordinate down, Fincke-Pohst style
    fn rec(
        level: isize,
        rem: Rat,
        ldl: &crate::ldl::Ldl,
        x: &mut Vec<Rat>,
        out: &mut Vec<Vec<Rat>>,
    ) {
        if level < 0 {
            out.push(x.clone());
            return;
        }
        let i = level as usize;
        // center = -sum_{j>i} mu[j][i] x_j
        let mut center = Rat::zero();
        for j in i + 1..x.len() {
            center -= &(&ldl.lower[(j, i)] * &x[j]);
        }
        // |x_i - center|^2 * D_i <= rem
        let radius_sq = &rem / &ldl.diag[i];
        // integer range: ceil(center - sqrt(radius_sq)) ..= floor(center + sqrt)
        let mut t = center.floor();
        // walk down while within radius
        loop {
            let dx = &Rat::from_bigint(t.clone()) - &center;
            if &dx * &dx > radius_sq {
                break;
            }
            t -= 1;
        }
        let low: BigInt = t + 1;
        let mut t = low;
        loop {
            let dx = &Rat::from_bigint(t.clone()) - &center;
            let used = &(&dx * &dx) * &ldl.diag[i];
            if used > rem {
                break;
            }
            x[i] = Rat::from_bigint(t.clone());
            rec(level - 1, &rem - &used, ldl, x, out);
            t += 1;
        }
        x[i] = Rat::zero();
    }
    rec(r as isize - 1, bound.clone(), &ldl, &mut x, &mut out);
    out
}

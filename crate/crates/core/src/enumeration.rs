//! Exact short-vector machinery: minimal norms, histograms of lattice (or
//! coset) vectors of bounded norm, and first-block classification of listed
//! vectors.
//!
//! The traversal is Fincke-Pohst on the LLL-reduced basis. Interval bounds
//! during the descent are floating point, inflated by a fixed `2^-20`
//! relative slack so no true candidate is ever pruned; every surviving
//! candidate is then recertified in exact arithmetic (integer arithmetic on
//! the denominator-cleared Gram matrix, falling back to big integers on
//! overflow). Histograms are therefore exact, and independent of the basis,
//! the thread count, and the floating-point details.
//!
//! Coset offsets are reduced modulo the lattice by exact nearest-plane
//! size-reduction against the reduced basis before traversal, which also
//! makes the reduced representative canonical per coset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::ScaledLattice;
use crate::ldl::{rational_cholesky, Ldl};
use crate::lll::lll_reduce;
use crate::matrix::{format_rat_row, RatMatrix};
use crate::rat::{denominator_lcm, norm_sq, Rat};

pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Relative slack applied to floating-point pruning bounds.
const PRUNE_SLACK: f64 = 1.0 + 1.0 / (1u64 << 20) as f64;

#[derive(Clone, Debug)]
pub struct EnumConfig {
    /// Hard limit on enumerated candidates; exceeded means an error, and no
    /// partial histogram is exposed.
    pub cap: u64,
    /// Worker threads for the histogram traversal. Results are bit-identical
    /// for any value.
    pub threads: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            cap: DEFAULT_ENUM_CAP,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    /// Identifier of the enumerated lattice (a registry name or a caller
    /// label).
    pub lattice: String,
    /// Ambient coset offset; all zeros for plain lattice enumeration.
    pub offset: Vec<Rat>,
    pub bound: Rat,
    /// Exact norm value -> count of coset vectors of that norm (the zero
    /// vector itself is never counted).
    pub histogram: BTreeMap<Rat, u64>,
    /// Ambient coordinates of all enumerated vectors (offset included),
    /// sorted lexicographically; present when requested.
    pub vectors: Option<Vec<Vec<Rat>>>,
    /// The reduced basis the traversal ran on.
    pub basis_used: RatMatrix,
}

impl EnumerationReport {
    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn count_at(&self, norm: &Rat) -> u64 {
        self.histogram.get(norm).copied().unwrap_or(0)
    }

    /// Report text: `lattice`, `offset`, `bound` header lines, then one
    /// `norm <value> <count>` line per histogram bin, sorted by norm.
    pub fn write_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("lattice {}\n", self.lattice));
        out.push_str(&format!("offset {}\n", format_rat_row(&self.offset)));
        out.push_str(&format!("bound {}\n", self.bound));
        for (norm, count) in &self.histogram {
            out.push_str(&format!("norm {norm} {count}\n"));
        }
        out
    }
}

/// Outcome of a coset minimal-norm computation. When the offset lies in the
/// lattice itself the zero vector is excluded and the result flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetMin {
    pub min: Rat,
    pub offset_in_lattice: bool,
}

// ---------------------------------------------------------------------------

/// Everything the traversal needs, precomputed exactly once.
struct Prepared {
    reduced: RatMatrix,
    rank: usize,
    /// offset in reduced-basis coordinates, nearest-plane reduced
    tau: Vec<Rat>,
    /// component of the offset orthogonal to the lattice span
    t_perp: Vec<Rat>,
    /// scale * |t_perp|^2
    c0: Rat,
    /// cleared integer Gram: scale * B B^T = gz / qg
    gz: Vec<Vec<i128>>,
    qg: BigInt,
    /// tau = tnum / dt
    dt: BigInt,
    tnum: Vec<i128>,
    // floating-point LDL of the scaled Gram
    diag_f: Vec<f64>,
    mu_f: Vec<Vec<f64>>, // mu_f[j][i] for i < j
    tau_f: Vec<f64>,
}

fn prepare(lat: &ScaledLattice, offset: &[Rat]) -> Result<Prepared> {
    let r = lat.rank();
    let n = lat.ambient_dim();
    if offset.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "offset length {} != ambient dimension {n}",
            offset.len()
        )));
    }
    let reduced = lll_reduce(lat.basis(), lat.scale())?;
    let gram = reduced.mul(&reduced.transpose()).scale(lat.scale());
    let ldl = rational_cholesky(&gram).expect("reduced basis Gram is positive definite");

    // offset decomposition: offset = tau * B + t_perp
    let (tau, t_perp, c0) = if offset.iter().all(|x| x.is_zero()) {
        (vec![Rat::zero(); r], vec![Rat::zero(); n], Rat::zero())
    } else {
        let gram_coord = reduced.mul(&reduced.transpose());
        let rhs = reduced.mul_vec(offset);
        let tau = rational_cholesky(&gram_coord)
            .expect("coordinate Gram is positive definite")
            .solve(&rhs);
        let in_span = reduced.vec_mul(&tau);
        let t_perp: Vec<Rat> = offset.iter().zip(&in_span).map(|(a, b)| a - b).collect();
        let c0 = lat.scale() * &norm_sq(&t_perp);
        (tau, t_perp, c0)
    };

    // nearest-plane reduction of tau against the reduced basis
    let tau = nearest_plane_reduce(tau, &ldl);

    let (gz_big, qg) = gram.cleared();
    let mut gz = Vec::with_capacity(r);
    for row in &gz_big {
        let conv: Option<Vec<i128>> = row.iter().map(|x| x.to_i128()).collect();
        gz.push(conv.ok_or_else(|| {
            Error::InvalidInput("Gram entries too large for enumeration".into())
        })?);
    }
    let dt = denominator_lcm(tau.iter());
    let dt_rat = Rat::from_bigint(dt.clone());
    let tnum: Vec<i128> = tau
        .iter()
        .map(|x| {
            (x * &dt_rat)
                .numer()
                .to_i128()
                .ok_or_else(|| Error::InvalidInput("offset too large for enumeration".into()))
        })
        .collect::<Result<_>>()?;

    let diag_f: Vec<f64> = ldl.diag.iter().map(|d| d.to_f64()).collect();
    let mut mu_f = vec![vec![0.0f64; r]; r];
    for j in 0..r {
        for i in 0..j {
            mu_f[j][i] = ldl.lower[(j, i)].to_f64();
        }
    }
    let tau_f: Vec<f64> = tau.iter().map(|x| x.to_f64()).collect();

    Ok(Prepared {
        reduced,
        rank: r,
        tau,
        t_perp,
        c0,
        gz,
        qg,
        dt,
        tnum,
        diag_f,
        mu_f,
        tau_f,
    })
}

/// Babai nearest-plane: returns the canonical representative of
/// `tau mod Z^r` whose Gram-Schmidt coefficients lie in `[-1/2, 1/2)`.
pub(crate) fn nearest_plane_reduce(mut tau: Vec<Rat>, ldl: &Ldl) -> Vec<Rat> {
    let r = tau.len();
    for i in (0..r).rev() {
        let mut coef = tau[i].clone();
        for j in i + 1..r {
            coef += &(&tau[j] * &ldl.lower[(j, i)]);
        }
        let q = coef.round_half_up();
        if !q.is_zero() {
            tau[i] -= &Rat::from_bigint(q);
        }
    }
    tau
}

impl Prepared {
    /// Exact squared norm (lattice-span part) of the coset point with
    /// integer coordinates `x`: `(w G w^T) / (dt^2 qg)` with `w = dt x + tnum`.
    fn exact_norm(&self, x: &[i64]) -> Rat {
        let r = self.rank;
        let dt = self
            .dt
            .to_i128()
            .expect("offset denominator fits i128 by construction");
        let mut w = Vec::with_capacity(r);
        for i in 0..r {
            w.push(dt * x[i] as i128 + self.tnum[i]);
        }
        let mut acc: i128 = 0;
        let mut overflow = false;
        'outer: for i in 0..r {
            for j in 0..r {
                let term = match w[i]
                    .checked_mul(self.gz[i][j])
                    .and_then(|t| t.checked_mul(w[j]))
                {
                    Some(t) => t,
                    None => {
                        overflow = true;
                        break 'outer;
                    }
                };
                acc = match acc.checked_add(term) {
                    Some(a) => a,
                    None => {
                        overflow = true;
                        break 'outer;
                    }
                };
            }
        }
        let num = if overflow {
            // big-integer fallback
            let wb: Vec<BigInt> = w.iter().map(|&v| BigInt::from(v)).collect();
            let mut acc = BigInt::zero();
            for i in 0..r {
                for j in 0..r {
                    acc += &wb[i] * self.gz[i][j] * &wb[j];
                }
            }
            acc
        } else {
            BigInt::from(acc)
        };
        let den = &self.dt * &self.dt * &self.qg;
        Rat::from_big(num, den)
    }

    /// Ambient coordinates of the coset point with integer coordinates `x`.
    fn ambient(&self, x: &[i64]) -> Vec<Rat> {
        let coords: Vec<Rat> = x
            .iter()
            .zip(&self.tau)
            .map(|(&xi, ti)| &Rat::from_int(xi) + ti)
            .collect();
        let mut v = self.reduced.vec_mul(&coords);
        for (vi, pi) in v.iter_mut().zip(&self.t_perp) {
            *vi += pi;
        }
        v
    }

    /// Floating-point shift at `level` given the coordinates above it:
    /// `tau[level] + sum_{j > level} mu[j][level] (x_j + tau_j)`.
    fn shift_f(&self, level: usize, x: &[i64]) -> f64 {
        let mut s = self.tau_f[level];
        for j in level + 1..self.rank {
            s += self.mu_f[j][level] * (x[j] as f64 + self.tau_f[j]);
        }
        s
    }

    fn level_range(&self, level: usize, x: &[i64], rem: f64) -> (i64, i64, f64) {
        let s = self.shift_f(level, x);
        let radius = (rem.max(0.0) / self.diag_f[level]).sqrt();
        let lo = (-s - radius).ceil() as i64;
        let hi = (-s + radius).floor() as i64;
        (lo, hi, s)
    }
}

struct CountState {
    histogram: BTreeMap<Rat, u64>,
    vectors: Option<Vec<Vec<Rat>>>,
    visited: u64,
}

impl CountState {
    fn new(list: bool) -> Self {
        CountState {
            histogram: BTreeMap::new(),
            vectors: list.then(Vec::new),
            visited: 0,
        }
    }
}

/// Depth-first count below `level`, with `x[level+1..]` fixed.
fn count_descend(
    p: &Prepared,
    level: usize,
    x: &mut [i64],
    rem: f64,
    bound_lattice: &Rat,
    cap: u64,
    st: &mut CountState,
) -> Result<()> {
    let (lo, hi, s) = p.level_range(level, x, rem);
    for xi in lo..=hi {
        let y = xi as f64 + s;
        let cost = p.diag_f[level] * y * y;
        if cost > rem {
            continue;
        }
        x[level] = xi;
        if level == 0 {
            st.visited += 1;
            if st.visited > cap {
                return Err(Error::EnumerationCapExceeded { cap });
            }
            let exact = p.exact_norm(x);
            if &exact <= bound_lattice && !(exact.is_zero() && p.c0.is_zero()) {
                let full = &exact + &p.c0;
                *st.histogram.entry(full).or_insert(0) += 1;
                if let Some(list) = st.vectors.as_mut() {
                    list.push(p.ambient(x));
                }
            }
        } else {
            count_descend(p, level - 1, x, rem - cost, bound_lattice, cap, st)?;
        }
    }
    x[level] = 0;
    Ok(())
}

/// Exact histogram of all `v` in `lattice + offset` with `norm(v) <= bound`,
/// excluding the zero vector. The histogram (and the optional sorted vector
/// list) is a function of the coset as a point set only.
pub fn count_by_norm(
    lat: &ScaledLattice,
    label: &str,
    bound: &Rat,
    offset: &[Rat],
    list: bool,
    cfg: &EnumConfig,
) -> Result<EnumerationReport> {
    if !bound.is_positive() {
        return Err(Error::InvalidInput("bound must be positive".into()));
    }
    let n = lat.ambient_dim();
    let make_report = |histogram, vectors, basis_used| EnumerationReport {
        lattice: label.to_string(),
        offset: offset.to_vec(),
        bound: bound.clone(),
        histogram,
        vectors,
        basis_used,
    };
    if lat.rank() == 0 {
        // the only coset point is the offset itself
        let mut histogram = BTreeMap::new();
        let mut vectors = list.then(Vec::new);
        let norm = lat.norm_of(offset);
        if !offset.iter().all(|x| x.is_zero()) && &norm <= bound {
            histogram.insert(norm, 1);
            if let Some(v) = vectors.as_mut() {
                v.push(offset.to_vec());
            }
        }
        return Ok(make_report(histogram, vectors, RatMatrix::zero(0, n)));
    }

    let p = prepare(lat, offset)?;
    let bound_lattice = bound - &p.c0;
    if bound_lattice.is_negative() {
        return Ok(make_report(BTreeMap::new(), list.then(Vec::new), p.reduced));
    }
    let bound_f = bound_lattice.to_f64() * PRUNE_SLACK;
    let r = p.rank;

    let threads = cfg.threads.max(1);
    let mut state = if r == 1 || threads == 1 {
        let mut st = CountState::new(list);
        let mut x = vec![0i64; r];
        count_descend(&p, r - 1, &mut x, bound_f, &bound_lattice, cfg.cap, &mut st)?;
        st
    } else {
        // split the top-level interval across workers; each candidate's fate
        // is decided by the same arithmetic, so the merged result matches
        // the single-threaded one exactly
        let (lo, hi, s) = p.level_range(r - 1, &vec![0i64; r], bound_f);
        let tops: Vec<i64> = (lo..=hi).collect();
        let chunk = tops.len().div_ceil(threads).max(1);
        let results: Vec<Result<CountState>> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for piece in tops.chunks(chunk) {
                let p = &p;
                let bound_lattice = &bound_lattice;
                handles.push(scope.spawn(move || {
                    let mut st = CountState::new(list);
                    let mut x = vec![0i64; r];
                    for &top in piece {
                        let y = top as f64 + s;
                        let cost = p.diag_f[r - 1] * y * y;
                        if cost > bound_f {
                            continue;
                        }
                        x[r - 1] = top;
                        count_descend(
                            p,
                            r - 2,
                            &mut x,
                            bound_f - cost,
                            bound_lattice,
                            cfg.cap,
                            &mut st,
                        )?;
                    }
                    Ok(st)
                }));
            }
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut merged = CountState::new(list);
        for res in results {
            let st = res?;
            merged.visited += st.visited;
            if merged.visited > cfg.cap {
                return Err(Error::EnumerationCapExceeded { cap: cfg.cap });
            }
            for (k, v) in st.histogram {
                *merged.histogram.entry(k).or_insert(0) += v;
            }
            if let (Some(all), Some(part)) = (merged.vectors.as_mut(), st.vectors) {
                all.extend(part);
            }
        }
        merged
    };

    if let Some(v) = state.vectors.as_mut() {
        v.sort();
    }
    Ok(make_report(state.histogram, state.vectors, p.reduced))
}

/// Depth-first minimization with shrinking bound. `skip_zero` excludes the
/// zero vector (used when the coset is the lattice itself).
#[allow(clippy::too_many_arguments)]
fn min_descend(
    p: &Prepared,
    level: usize,
    x: &mut [i64],
    used: f64,
    skip_zero: bool,
    best: &mut Option<Rat>,
    bound_f: &mut f64,
    visited: &mut u64,
    cap: u64,
) -> Result<()> {
    let (lo, hi, s) = p.level_range(level, x, *bound_f - used);
    for xi in lo..=hi {
        let y = xi as f64 + s;
        let cost = p.diag_f[level] * y * y;
        if used + cost > *bound_f {
            continue;
        }
        x[level] = xi;
        if level == 0 {
            *visited += 1;
            if *visited > cap {
                return Err(Error::EnumerationCapExceeded { cap });
            }
            let exact = p.exact_norm(x);
            if exact.is_zero() && skip_zero {
                continue;
            }
            if best.as_ref().is_none_or(|b| &exact < b) {
                *bound_f = exact.to_f64() * PRUNE_SLACK;
                *best = Some(exact);
            }
        } else {
            min_descend(
                p,
                level - 1,
                x,
                used + cost,
                skip_zero,
                best,
                bound_f,
                visited,
                cap,
            )?;
        }
    }
    x[level] = 0;
    Ok(())
}

/// Exact minimum of `norm(v)` over nonzero `v` in the lattice.
pub fn min_norm(lat: &ScaledLattice, cfg: &EnumConfig) -> Result<Rat> {
    if lat.rank() == 0 {
        return Err(Error::InvalidInput("min_norm needs rank >= 1".into()));
    }
    let p = prepare(lat, &vec![Rat::zero(); lat.ambient_dim()])?;
    // a realized starting bound: the smallest reduced-basis vector
    let gram = p.reduced.mul(&p.reduced.transpose()).scale(lat.scale());
    let start = (0..p.rank)
        .map(|i| gram[(i, i)].clone())
        .min()
        .expect("rank >= 1");
    let mut best = Some(start.clone());
    let mut bound_f = start.to_f64() * PRUNE_SLACK;
    let mut x = vec![0i64; p.rank];
    let mut visited = 0;
    min_descend(
        &p,
        p.rank - 1,
        &mut x,
        0.0,
        true,
        &mut best,
        &mut bound_f,
        &mut visited,
        cfg.cap,
    )?;
    Ok(&best.expect("a basis vector realizes the bound") + &p.c0)
}

/// Exact minimum of `norm(v)` over `v` in `lattice + offset`. If the offset
/// lies in the lattice, the zero vector is excluded and the result flagged.
pub fn coset_min_norm(lat: &ScaledLattice, offset: &[Rat], cfg: &EnumConfig) -> Result<CosetMin> {
    if lat.rank() == 0 {
        return Ok(CosetMin {
            min: lat.norm_of(offset),
            offset_in_lattice: offset.iter().all(|x| x.is_zero()),
        });
    }
    let p = prepare(lat, offset)?;
    let in_lattice = p.c0.is_zero() && p.tau.iter().all(|x| x.is_zero());
    if in_lattice {
        return Ok(CosetMin {
            min: min_norm(lat, cfg)?,
            offset_in_lattice: true,
        });
    }
    // the point at x = 0 realizes a starting bound
    let start = p.exact_norm(&vec![0i64; p.rank]);
    let mut best = Some(start.clone());
    let mut bound_f = start.to_f64() * PRUNE_SLACK + f64::MIN_POSITIVE;
    let mut x = vec![0i64; p.rank];
    let mut visited = 0;
    min_descend(
        &p,
        p.rank - 1,
        &mut x,
        0.0,
        false,
        &mut best,
        &mut bound_f,
        &mut visited,
        cfg.cap,
    )?;
    Ok(CosetMin {
        min: &best.expect("x = 0 realizes the bound") + &p.c0,
        offset_in_lattice: false,
    })
}

/// Partition the listed vectors of a report by their first `block_size`
/// ambient coordinates.
pub fn classify_first_block(
    report: &EnumerationReport,
    block_size: usize,
) -> Result<BTreeMap<Vec<Rat>, u64>> {
    let vectors = report.vectors.as_ref().ok_or(Error::ListAbsent)?;
    let mut map = BTreeMap::new();
    for v in vectors {
        let key = v[..block_size.min(v.len())].to_vec();
        *map.entry(key).or_insert(0) += 1;
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_root, RootName};
    use crate::hnf::hnf_basis;
    use num_bigint::BigInt;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn zeros(n: usize) -> Vec<Rat> {
        vec![Rat::zero(); n]
    }

    #[test]
    fn z2_unit_ball() {
        let z2 = ScaledLattice::zn(2);
        let rep = count_by_norm(&z2, "z2", &Rat::one(), &zeros(2), false, &EnumConfig::default())
            .unwrap();
        assert_eq!(rep.histogram.len(), 1);
        assert_eq!(rep.count_at(&Rat::one()), 4);
    }

    #[test]
    fn zn_min_norm_is_one() {
        for n in 1..=5 {
            let z = ScaledLattice::zn(n);
            assert_eq!(min_norm(&z, &EnumConfig::default()).unwrap(), Rat::one());
        }
    }

    #[test]
    fn d4_dual_min_norm() {
        let m = make_root(RootName::Dn, 4, Rat::from_int(2)).unwrap().dual();
        assert_eq!(min_norm(&m, &EnumConfig::default()).unwrap(), Rat::new(1, 2));
    }

    #[test]
    fn counts_are_symmetric_for_zero_offset() {
        let e6 = make_root(RootName::En, 6, Rat::one()).unwrap();
        let rep = count_by_norm(
            &e6,
            "e6",
            &Rat::from_int(4),
            &zeros(8),
            false,
            &EnumConfig::default(),
        )
        .unwrap();
        assert_eq!(rep.count_at(&Rat::from_int(2)), 72, "E6 has 72 roots");
        for (norm, count) in &rep.histogram {
            assert_eq!(count % 2, 0, "count at {norm} must be even (v <-> -v)");
        }
    }

    #[test]
    fn coset_count_of_shifted_z2() {
        // Z^2 + (1/2, 1/2): four nearest points at squared distance 1/2
        let z2 = ScaledLattice::zn(2);
        let offset = vec![Rat::new(1, 2), Rat::new(1, 2)];
        let rep =
            count_by_norm(&z2, "z2", &Rat::one(), &offset, true, &EnumConfig::default()).unwrap();
        assert_eq!(rep.count_at(&Rat::new(1, 2)), 4);
        let vectors = rep.vectors.unwrap();
        assert!(vectors.windows(2).all(|w| w[0] < w[1]), "sorted, no duplicates");
        // every listed vector's recomputed rational norm is a histogram bin
        for v in &vectors {
            let n = z2.norm_of(v);
            assert!(rep.histogram.contains_key(&n), "norm {n} must be a bin");
        }
        let cm = coset_min_norm(&z2, &offset, &EnumConfig::default()).unwrap();
        assert_eq!(
            cm,
            CosetMin {
                min: Rat::new(1, 2),
                offset_in_lattice: false
            }
        );
    }

    #[test]
    fn offset_outside_span_contributes_constant() {
        // rank-1 lattice Z e1 in the plane, offset (1/3, 5)
        let line =
            ScaledLattice::new(RatMatrix::from_int_rows(&[vec![1, 0]]), Rat::one()).unwrap();
        let offset = vec![Rat::new(1, 3), Rat::from_int(5)];
        let cm = coset_min_norm(&line, &offset, &EnumConfig::default()).unwrap();
        assert_eq!(cm.min, &Rat::new(1, 9) + &Rat::from_int(25));
        assert!(!cm.offset_in_lattice);
    }

    #[test]
    fn lattice_offset_is_flagged() {
        let z2 = ScaledLattice::zn(2);
        let offset = vec![Rat::from_int(3), Rat::from_int(-7)];
        let cm = coset_min_norm(&z2, &offset, &EnumConfig::default()).unwrap();
        assert!(cm.offset_in_lattice);
        assert_eq!(cm.min, Rat::one(), "nonzero minimum returned when t is in L");
    }

    #[test]
    fn cap_is_enforced() {
        let z4 = ScaledLattice::zn(4);
        let cfg = EnumConfig { cap: 10, threads: 1 };
        let err =
            count_by_norm(&z4, "z4", &Rat::from_int(9), &zeros(4), false, &cfg).unwrap_err();
        assert!(matches!(err, Error::EnumerationCapExceeded { cap: 10 }));
    }

    #[test]
    fn histogram_is_basis_invariant() {
        let mut rng = StdRng::seed_from_u64(99);
        let e8 = make_root(RootName::En, 8, Rat::one()).unwrap();
        let reference = count_by_norm(
            &e8,
            "e8",
            &Rat::from_int(4),
            &zeros(8),
            false,
            &EnumConfig::default(),
        )
        .unwrap();
        assert_eq!(reference.count_at(&Rat::from_int(2)), 240, "E8 has 240 roots");
        for seed in 0..20 {
            // random unimodular transform of the basis
            let mut rows = e8.basis().row_vecs();
            for _ in 0..12 {
                let a = rng.gen_range(0..8);
                let b = rng.gen_range(0..8);
                if a != b {
                    let f = Rat::from_int(rng.gen_range(-2..=2i64));
                    let src = rows[b].clone();
                    for (t, s) in rows[a].iter_mut().zip(src) {
                        *t += &(&f * &s);
                    }
                }
                if rng.gen_bool(0.3) {
                    rows.swap(a, b);
                }
            }
            let scrambled =
                ScaledLattice::new(RatMatrix::from_rows(rows.clone()), Rat::one()).unwrap();
            assert_eq!(
                hnf_basis(&RatMatrix::from_rows(rows)),
                e8.canonical_basis(),
                "seed {seed}: transform must be unimodular"
            );
            let rep = count_by_norm(
                &scrambled,
                "e8",
                &Rat::from_int(4),
                &zeros(8),
                false,
                &EnumConfig::default(),
            )
            .unwrap();
            assert_eq!(rep.histogram, reference.histogram, "seed {seed}");
        }
    }

    #[test]
    fn threads_do_not_change_output() {
        let d4 = make_root(RootName::Dn, 4, Rat::one()).unwrap();
        let single = count_by_norm(
            &d4,
            "d4",
            &Rat::from_int(6),
            &zeros(4),
            true,
            &EnumConfig {
                cap: DEFAULT_ENUM_CAP,
                threads: 1,
            },
        )
        .unwrap();
        for threads in [2, 3, 8] {
            let multi = count_by_norm(
                &d4,
                "d4",
                &Rat::from_int(6),
                &zeros(4),
                true,
                &EnumConfig {
                    cap: DEFAULT_ENUM_CAP,
                    threads,
                },
            )
            .unwrap();
            assert_eq!(multi.histogram, single.histogram);
            assert_eq!(multi.vectors, single.vectors);
        }
    }

    #[test]
    fn exact_boundary_shell_is_included() {
        // bound exactly at a shell: norm-2 vectors of D4 are in, nothing above
        let d4 = make_root(RootName::Dn, 4, Rat::one()).unwrap();
        let rep = count_by_norm(
            &d4,
            "d4",
            &Rat::from_int(2),
            &zeros(4),
            false,
            &EnumConfig::default(),
        )
        .unwrap();
        assert_eq!(rep.histogram.len(), 1);
        assert_eq!(rep.count_at(&Rat::from_int(2)), 24);
    }

    #[test]
    fn classification_requires_list() {
        let z2 = ScaledLattice::zn(2);
        let rep = count_by_norm(&z2, "z2", &Rat::one(), &zeros(2), false, &EnumConfig::default())
            .unwrap();
        assert_eq!(classify_first_block(&rep, 1).unwrap_err(), Error::ListAbsent);
        let rep = count_by_norm(&z2, "z2", &Rat::one(), &zeros(2), true, &EnumConfig::default())
            .unwrap();
        let classes = classify_first_block(&rep, 1).unwrap();
        // first coordinates -1, 0, 1 with counts 1, 2, 1
        let counts: Vec<u64> = classes.values().copied().collect();
        assert_eq!(counts, vec![1, 2, 1]);
    }

    #[test]
    fn report_text_format() {
        let z2 = ScaledLattice::zn(2);
        let rep = count_by_norm(
            &z2,
            "z2",
            &Rat::from_int(2),
            &zeros(2),
            false,
            &EnumConfig::default(),
        )
        .unwrap();
        assert_eq!(
            rep.write_text(),
            "lattice z2\noffset 0 0\nbound 2\nnorm 1 4\nnorm 2 4\n"
        );
    }

    #[test]
    fn nearest_plane_gives_canonical_coset_representative() {
        let d4 = make_root(RootName::Dn, 4, Rat::one()).unwrap();
        let offset = vec![
            Rat::new(1, 3),
            Rat::new(-5, 7),
            Rat::from_int(2),
            Rat::new(9, 4),
        ];
        let base = count_by_norm(
            &d4,
            "d4",
            &Rat::from_int(3),
            &offset,
            true,
            &EnumConfig::default(),
        )
        .unwrap();
        // shifting the offset by lattice vectors leaves the coset unchanged
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..5 {
            let coeffs: Vec<Rat> = (0..4)
                .map(|_| Rat::from_int(rng.gen_range(-3..=3i64)))
                .collect();
            let shift = d4.basis().vec_mul(&coeffs);
            let moved: Vec<Rat> = offset.iter().zip(&shift).map(|(a, b)| a + b).collect();
            let rep = count_by_norm(
                &d4,
                "d4",
                &Rat::from_int(3),
                &moved,
                true,
                &EnumConfig::default(),
            )
            .unwrap();
            assert_eq!(rep.histogram, base.histogram);
            assert_eq!(rep.vectors, base.vectors, "same coset, same listed points");
        }
    }

    #[test]
    fn scaled_roots_and_duals() {
        let e8 = make_root(RootName::En, 8, Rat::one()).unwrap();
        assert_eq!(min_norm(&e8, &EnumConfig::default()).unwrap(), Rat::from_int(2));
        let a1_third = make_root(RootName::An, 1, Rat::new(1, 3)).unwrap();
        assert_eq!(
            min_norm(&a1_third, &EnumConfig::default()).unwrap(),
            Rat::new(2, 3)
        );
        let a1_scaled = make_root(RootName::An, 1, Rat::from_int(3)).unwrap();
        assert_eq!(
            min_norm(&a1_scaled, &EnumConfig::default()).unwrap(),
            Rat::from_int(6)
        );
        let dual = a1_scaled.dual();
        assert_eq!(min_norm(&dual, &EnumConfig::default()).unwrap(), Rat::new(1, 6));
    }

    #[test]
    fn big_coordinates_take_bigint_fallback() {
        // coordinates large enough that w G w^T overflows i128
        let big = BigInt::from(i64::MAX / 2);
        let basis = RatMatrix::from_bigint_rows(vec![
            vec![big.clone(), BigInt::from(0)],
            vec![BigInt::from(0), big],
        ]);
        let lat = ScaledLattice::new(basis, Rat::one()).unwrap();
        let m = min_norm(&lat, &EnumConfig::default()).unwrap();
        let expect = Rat::from_bigint(BigInt::from(i64::MAX / 2)).pow(2);
        assert_eq!(m, expect);
    }
}

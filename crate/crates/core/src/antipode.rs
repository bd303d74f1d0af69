//! The antipode construction.
//!
//! Given a lattice with a splitting `U + V`, a small-diameter subset
//! `S = {u_1, ..., u_s}` of the projection lattice `M = pi_U(lattice)` is
//! "factored out": the packing consists of the `V`-projections of all
//! lattice points whose `U`-projection lies in `S`. That point set is a
//! union of `s` translates of the section `L` (the lattice points inside `V`), and any two of
//! its points are at squared distance at least `mu - beta`, where `mu` is
//! the minimal norm of the lattice and `beta` the squared diameter of `S`.
//! Spheres of radius `rho = sqrt(mu - beta)/2` around its points therefore
//! pack, with center density
//!
//! ```text
//! delta = s * rho^l / sqrt(det L)
//! ```
//!
//! carried here in exact squared form. The packing is denser than `L`
//! itself (with the same `mu`) exactly when `s (1 - beta/mu)^(l/2) > 1`,
//! and that ratio of densities is also computed exactly.
//!
//! Everything downstream of the construction is verifiable: minimal
//! inter-translate distances by coset enumeration, kissing numbers by
//! counting coset vectors at the contact norm, and the density identities
//! by exact rational algebra. For the 48-dimensional hosts, enumerating at
//! norm `mu - beta` in dimension 44..47 is far out of desk scale, so those
//! packings are built in assume-mu mode and their reports say so.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::constructions::{make_splitting, packing_recipe, PackingRecipe};
use crate::enumeration::{
    coset_min_norm, count_by_norm, min_norm, nearest_plane_reduce, EnumConfig,
};
use crate::error::{Error, Result};
use crate::hnf::solve_integer;
use crate::lattice::{lattice_equal, ScaledLattice, Side, Splitting};
use crate::ldl::rational_cholesky;
use crate::matrix::{format_rat_row, parse_rat_row, RatMatrix};
use crate::rat::Rat;

/// Points `u_1..u_s` of a projection lattice together with their exact
/// squared diameter.
#[derive(Clone, Debug)]
pub struct AntipodalSet {
    host: ScaledLattice,
    points: Vec<Vec<Rat>>,
    beta: Rat,
}

impl AntipodalSet {
    /// Validates membership of every point in the host lattice and computes
    /// the realized squared diameter.
    pub fn new(host: ScaledLattice, points: Vec<Vec<Rat>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("antipodal set needs s >= 1".into()));
        }
        for p in &points {
            if p.len() != host.ambient_dim() {
                return Err(Error::DimensionMismatch(
                    "point length != ambient dimension".into(),
                ));
            }
            if !host.member(p) {
                return Err(Error::NotInProjectionLattice);
            }
        }
        let beta = squared_diameter(&host, &points);
        Ok(AntipodalSet { host, points, beta })
    }

    pub fn host(&self) -> &ScaledLattice {
        &self.host
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn s(&self) -> usize {
        self.points.len()
    }

    /// Realized squared diameter: `max dist^2(u_i, u_j)`, exactly.
    pub fn beta(&self) -> &Rat {
        &self.beta
    }

    /// Host lattice block, then `points s`, the point rows, and `beta`.
    pub fn write_text(&self) -> String {
        let mut out = self.host.write_text();
        out.push_str(&format!("points {}\n", self.s()));
        for p in &self.points {
            out.push_str(&format_rat_row(p));
            out.push('\n');
        }
        out.push_str(&format!("beta {}\n", self.beta));
        out
    }
}

fn squared_diameter(host: &ScaledLattice, points: &[Vec<Rat>]) -> Rat {
    let mut beta = Rat::zero();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let diff: Vec<Rat> = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| a - b)
                .collect();
            let d = host.norm_of(&diff);
            if d > beta {
                beta = d;
            }
        }
    }
    beta
}

/// A base lattice `L` plus translate vectors: the packing `A(S)`, with its
/// exact minimal squared distance, squared packing radius, and squared
/// center density.
#[derive(Clone, Debug)]
pub struct TranslatePacking {
    base: ScaledLattice,
    translates: Vec<Vec<Rat>>,
    min_sqdist: Rat,
    /// True when `min_sqdist` was taken from an assumed host minimal norm
    /// instead of enumeration.
    min_assumed: bool,
    radius_sq: Rat,
    center_density_sq: Rat,
}

/// How the minimal squared distance of a packing is obtained when it is
/// built through a splitting.
#[derive(Clone, Debug)]
pub enum DistanceMode {
    /// Enumerate: exact minimum over the base lattice and all pairwise
    /// translate cosets.
    Enumerate,
    /// Take the host lattice minimal norm as given and set
    /// `d = mu - beta` without enumerating.
    AssumeMu(Rat),
}

/// How the minimal squared distance is obtained when a packing is
/// reassembled from raw parts (for example a packing file).
#[derive(Clone, Debug)]
pub enum RebuildMode {
    Enumerate,
    /// Take the minimal squared distance itself as given.
    AssumeDistance(Rat),
}

impl TranslatePacking {
    pub fn base(&self) -> &ScaledLattice {
        &self.base
    }

    pub fn translates(&self) -> &[Vec<Rat>] {
        &self.translates
    }

    pub fn s(&self) -> usize {
        self.translates.len()
    }

    pub fn l(&self) -> usize {
        self.base.rank()
    }

    pub fn min_sqdist(&self) -> &Rat {
        &self.min_sqdist
    }

    pub fn min_assumed(&self) -> bool {
        self.min_assumed
    }

    pub fn radius_sq(&self) -> &Rat {
        &self.radius_sq
    }

    pub fn center_density_sq(&self) -> &Rat {
        &self.center_density_sq
    }

    /// Assemble a packing from a base lattice and translate vectors,
    /// computing (or taking as given) the minimal squared distance and
    /// filling in the density fields.
    pub fn from_parts(
        base: ScaledLattice,
        translates: Vec<Vec<Rat>>,
        mode: RebuildMode,
        cfg: &EnumConfig,
    ) -> Result<Self> {
        if translates.is_empty() {
            return Err(Error::InvalidInput("packing needs s >= 1 translates".into()));
        }
        let s = translates.len();
        let (min_sqdist, min_assumed) = match mode {
            RebuildMode::Enumerate => {
                let mut d = min_norm(&base, cfg)?;
                for i in 0..s {
                    for j in i + 1..s {
                        let diff: Vec<Rat> = translates[i]
                            .iter()
                            .zip(&translates[j])
                            .map(|(a, b)| a - b)
                            .collect();
                        let cm = coset_min_norm(&base, &diff, cfg)?;
                        if cm.min < d {
                            d = cm.min;
                        }
                    }
                }
                (d, false)
            }
            RebuildMode::AssumeDistance(d) => {
                if !d.is_positive() {
                    return Err(Error::SpheresVanish);
                }
                (d, true)
            }
        };
        Self::with_distance(base, translates, min_sqdist, min_assumed)
    }

    fn with_distance(
        base: ScaledLattice,
        translates: Vec<Vec<Rat>>,
        min_sqdist: Rat,
        min_assumed: bool,
    ) -> Result<Self> {
        let s = translates.len();
        let l = base.rank();
        let radius_sq = &min_sqdist / &Rat::from_int(4);
        let s_rat = Rat::from_bigint(BigInt::from(s));
        let center_density_sq = &(&s_rat * &s_rat) * &radius_sq.pow(l as u32) / base.determinant();
        Ok(TranslatePacking {
            base,
            translates,
            min_sqdist,
            min_assumed,
            radius_sq,
            center_density_sq,
        })
    }

    /// Packing file: base lattice block, then `translates s` and the rows.
    pub fn write_text(&self) -> String {
        let mut out = self.base.write_text();
        out.push_str(&format!("translates {}\n", self.s()));
        for t in &self.translates {
            out.push_str(&format_rat_row(t));
            out.push('\n');
        }
        out
    }

    /// Parse the geometric part of a packing file: the base lattice and the
    /// translate rows. Distances are recomputed by the caller.
    pub fn read_geometry(text: &str) -> Result<(ScaledLattice, Vec<Vec<Rat>>)> {
        let lines: Vec<&str> = text.lines().collect();
        let header: usize = 2; // lattice header + scale line
        let mut it = lines
            .first()
            .ok_or_else(|| Error::Parse("empty packing text".into()))?
            .split_whitespace();
        let ambient: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad packing header".into()))?;
        let rank: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad packing header".into()))?;
        let lattice_end = header + rank;
        let base = ScaledLattice::read_text(&lines[..lattice_end].join("\n"))?;
        let tline = lines
            .get(lattice_end)
            .ok_or_else(|| Error::Parse("missing translates line".into()))?;
        let s: usize = tline
            .strip_prefix("translates ")
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad translates line".into()))?;
        let mut translates = Vec::with_capacity(s);
        for k in 0..s {
            let line = lines
                .get(lattice_end + 1 + k)
                .ok_or_else(|| Error::Parse("packing text truncated".into()))?;
            translates.push(parse_rat_row(line, ambient)?);
        }
        Ok((base, translates))
    }
}


/// A lattice point whose `U`-projection is `u`, when one exists.
pub fn projection_preimage(split: &Splitting, u: &[Rat]) -> Option<Vec<Rat>> {
    let lattice = split.lattice();
    // generator matrix of M in ambient coordinates: row i = pi_U(b_i)
    let proj_rows: Vec<Vec<Rat>> = (0..lattice.rank())
        .map(|i| split.project_point(lattice.basis().row(i), Side::U))
        .collect();
    let proj_matrix = RatMatrix::from_rows(proj_rows);
    let coeffs = solve_integer(&proj_matrix, u)?;
    let coeffs_rat: Vec<Rat> = coeffs.into_iter().map(Rat::from_bigint).collect();
    Some(lattice.basis().vec_mul(&coeffs_rat))
}

/// Canonical representative of `v` modulo `base`: nearest-plane reduction
/// against the reduced basis. Vectors of the same coset always reduce to
/// the same representative.
pub fn canonical_mod_lattice(base: &ScaledLattice, v: &[Rat]) -> Vec<Rat> {
    TranslateReducer::new(base).reduce(v)
}

/// Build `A(S)`: for each `u_i` of `S` find a lattice preimage `w_i` with
/// `pi_U(w_i) = u_i`; the packing is `L = section(split, V)` translated by
/// `t_i = pi_V(w_i)`, with each translate reduced to its canonical
/// representative modulo `L`. The result does not depend on the preimage
/// choices.
pub fn antipode_construct(
    split: &Splitting,
    set: &AntipodalSet,
    mode: DistanceMode,
    cfg: &EnumConfig,
) -> Result<TranslatePacking> {
    let m = split.project(Side::U);
    if !lattice_equal(set.host(), &m) {
        return Err(Error::InvalidInput(
            "antipodal set host is not the projection of the splitting".into(),
        ));
    }
    let base = split.section(Side::V);
    let reducer = TranslateReducer::new(&base);

    let mut translates = Vec::with_capacity(set.s());
    for u in set.points() {
        let w = projection_preimage(split, u).ok_or(Error::NotInProjectionLattice)?;
        let t: Vec<Rat> = w.iter().zip(u).map(|(wi, ui)| wi - ui).collect();
        translates.push(reducer.reduce(&t));
    }

    match mode {
        DistanceMode::AssumeMu(mu) => {
            let d = &mu - set.beta();
            if !d.is_positive() {
                return Err(Error::SpheresVanish);
            }
            TranslatePacking::with_distance(base, translates, d, true)
        }
        DistanceMode::Enumerate => {
            TranslatePacking::from_parts(base, translates, RebuildMode::Enumerate, cfg)
        }
    }
}

/// Canonical reduction of vectors modulo a lattice: nearest-plane against
/// the reduced basis, so equal cosets always reduce to the same vector.
struct TranslateReducer {
    reduced: RatMatrix,
    ldl: crate::ldl::Ldl,
    coord_ldl: crate::ldl::Ldl,
}

impl TranslateReducer {
    fn new(base: &ScaledLattice) -> Self {
        let reduced = crate::lll::lll_reduce(base.basis(), base.scale())
            .expect("base lattice basis is independent");
        let gram = reduced.mul(&reduced.transpose()).scale(base.scale());
        let ldl = rational_cholesky(&gram).expect("positive definite");
        let coord = reduced.mul(&reduced.transpose());
        let coord_ldl = rational_cholesky(&coord).expect("positive definite");
        TranslateReducer { reduced, ldl, coord_ldl }
    }

    fn reduce(&self, t: &[Rat]) -> Vec<Rat> {
        // t lies in the span of the base lattice
        let rhs = self.reduced.mul_vec(t);
        let tau = self.coord_ldl.solve(&rhs);
        let tau = nearest_plane_reduce(tau, &self.ldl);
        self.reduced.vec_mul(&tau)
    }
}

/// Exact squared center density and its 10-significant-digit decimal root.
pub fn center_density(p: &TranslatePacking) -> (Rat, String) {
    let dsq = p.center_density_sq().clone();
    let dec = dsq.sqrt_decimal(10);
    (dsq, dec)
}

#[derive(Clone, Debug)]
pub struct ImprovementRatio {
    /// `s^2 (1 - beta/mu)^l`, exact.
    pub ratio_sq: Rat,
    /// Decimal of the square root, 10 significant digits.
    pub decimal: String,
    /// Whether the antipode packing is denser than the base lattice.
    pub improves: bool,
}

/// Density ratio of `A(S)` to the base lattice with the same `mu`:
/// `s (1 - beta/mu)^(l/2)`, exact in squared form.
pub fn improvement_ratio(s: usize, beta: &Rat, mu: &Rat, l: usize) -> Result<ImprovementRatio> {
    if beta.is_negative() || beta >= mu {
        return Err(Error::SpheresVanish);
    }
    let s_rat = Rat::from_bigint(BigInt::from(s));
    let ratio_sq = &(&s_rat * &s_rat) * &(&Rat::one() - &(beta / mu)).pow(l as u32);
    let decimal = ratio_sq.sqrt_decimal(10);
    let improves = ratio_sq > Rat::one();
    Ok(ImprovementRatio {
        ratio_sq,
        decimal,
        improves,
    })
}

/// Search for `s` points of `M` with the smallest possible squared diameter
/// at most `beta_cap` (default: twice the minimal norm of `M`).
///
/// The first point is pinned to zero, all other candidates are the lattice
/// points of norm at most the cap, and for each realized distance value
/// (ascending) an exhaustive clique search decides feasibility. Ties are
/// broken by lexicographic order of the sorted point list, so the output is
/// deterministic.
pub fn find_antipodal_set(
    m: &ScaledLattice,
    s: usize,
    beta_cap: Option<Rat>,
    cfg: &EnumConfig,
) -> Result<AntipodalSet> {
    if s == 0 {
        return Err(Error::InvalidInput("antipodal set needs s >= 1".into()));
    }
    let zero = vec![Rat::zero(); m.ambient_dim()];
    if s == 1 {
        return AntipodalSet::new(m.clone(), vec![zero]);
    }
    let cap = match beta_cap {
        Some(c) => c,
        None => &Rat::from_int(2) * &min_norm(m, cfg)?,
    };
    let report = count_by_norm(m, "antipodal-search", &cap, &zero, true, cfg)?;
    let candidates = report.vectors.expect("list requested");
    if candidates.len() + 1 < s {
        return Err(Error::InfeasibleCap);
    }
    // all realized squared distances <= cap among {0} union candidates
    let norms: Vec<Rat> = candidates.iter().map(|v| m.norm_of(v)).collect();
    let mut values: BTreeSet<Rat> = norms.iter().cloned().collect();
    let mut dist = vec![vec![Rat::zero(); candidates.len()]; candidates.len()];
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            let diff: Vec<Rat> = candidates[i]
                .iter()
                .zip(&candidates[j])
                .map(|(a, b)| a - b)
                .collect();
            let d = m.norm_of(&diff);
            if d <= cap {
                values.insert(d.clone());
            }
            dist[i][j] = d.clone();
            dist[j][i] = d;
        }
    }

    for beta in &values {
        let verts: Vec<usize> = (0..candidates.len())
            .filter(|&i| &norms[i] <= beta)
            .collect();
        if verts.len() + 1 < s {
            continue;
        }
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        let mut current = Vec::new();
        clique_search(&verts, &dist, beta, s - 1, 0, &mut current, &mut cliques);
        if cliques.is_empty() {
            continue;
        }
        // deterministic tie-break: lexicographically least sorted point list
        let mut best: Option<Vec<Vec<Rat>>> = None;
        for clique in cliques {
            let mut pts: Vec<Vec<Rat>> = clique.iter().map(|&i| candidates[i].clone()).collect();
            pts.push(zero.clone());
            pts.sort();
            if best.as_ref().is_none_or(|b| &pts < b) {
                best = Some(pts);
            }
        }
        let set = AntipodalSet::new(m.clone(), best.expect("nonempty"))?;
        debug_assert_eq!(set.beta(), beta);
        return Ok(set);
    }
    Err(Error::InfeasibleCap)
}

/// Enumerate all `size`-cliques among `verts[from..]` under the edge
/// relation `dist <= beta`.
fn clique_search(
    verts: &[usize],
    dist: &[Vec<Rat>],
    beta: &Rat,
    size: usize,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for k in from..verts.len() {
        let v = verts[k];
        if current.iter().all(|&u| &dist[u][v] <= beta) {
            current.push(v);
            clique_search(verts, dist, beta, size, k + 1, current, out);
            current.pop();
        }
    }
}

/// Number of packing points at squared distance exactly `d` from a fixed
/// point of the first translate, summed over all translates.
pub fn kissing_number(p: &TranslatePacking, cfg: &EnumConfig) -> Result<u64> {
    let d = p.min_sqdist();
    let t1 = &p.translates()[0];
    let mut total = 0u64;
    for t in p.translates() {
        let diff: Vec<Rat> = t.iter().zip(t1).map(|(a, b)| a - b).collect();
        let rep = count_by_norm(p.base(), "kissing", d, &diff, false, cfg)?;
        total += rep.count_at(d);
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Verification report for a packing built from a splitting with known
/// `mu` and `beta`.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub mu_assumed: bool,
    pub min_sqdist: Rat,
    /// Whether `d = mu - beta` holds with equality.
    pub tight: bool,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn write_text(&self) -> String {
        let mut out = String::new();
        let mode = if self.mu_assumed {
            "mu assumed"
        } else {
            "mu enumerated"
        };
        out.push_str(&format!(
            "min_sqdist {} ({mode}, bound {})\n",
            self.min_sqdist,
            if self.tight { "tight" } else { "strict" }
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{} {}: {}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(if self.pass() { "verdict pass\n" } else { "verdict FAIL\n" });
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    /// Only the exact algebraic identities; no enumeration. Required for
    /// the 48-dimensional cases.
    Algebraic,
    /// Also recompute the minimal squared distance by coset enumeration.
    Enumerate,
}

/// Check the construction obligations on a packing: `d >= mu - beta`, the
/// center-density identity, and (at enumerate level) the enumerated
/// distance itself.
pub fn verify_packing(
    p: &TranslatePacking,
    mu: &Rat,
    mu_assumed: bool,
    beta: &Rat,
    level: VerifyLevel,
    cfg: &EnumConfig,
) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let floor = mu - beta;
    let d = p.min_sqdist().clone();
    checks.push(Check {
        name: "distance bound d >= mu - beta".into(),
        pass: d >= floor,
        detail: format!("d = {d}, mu - beta = {floor}"),
    });
    let tight = d == floor;

    // Eq. (1) in squared form: delta^2 det(L) = s^2 (d/4)^l
    let s_rat = Rat::from_int(p.s() as i64);
    let lhs = p.center_density_sq() * &p.base().determinant();
    let rhs = &(&s_rat * &s_rat) * &(&d / &Rat::from_int(4)).pow(p.l() as u32);
    checks.push(Check {
        name: "center density identity delta^2 det L = s^2 (d/4)^l".into(),
        pass: lhs == rhs,
        detail: format!("lhs = {lhs}, rhs = {rhs}"),
    });
    checks.push(Check {
        name: "radius identity rho^2 = d/4".into(),
        pass: p.radius_sq() == &(&d / &Rat::from_int(4)),
        detail: format!("rho^2 = {}", p.radius_sq()),
    });

    if level == VerifyLevel::Enumerate {
        let recomputed = TranslatePacking::from_parts(
            p.base().clone(),
            p.translates().to_vec(),
            RebuildMode::Enumerate,
            cfg,
        )?;
        checks.push(Check {
            name: "enumerated minimal distance".into(),
            pass: recomputed.min_sqdist() == &d,
            detail: format!("enumerated d = {}", recomputed.min_sqdist()),
        });
    }

    Ok(VerifyReport {
        checks,
        mu_assumed,
        min_sqdist: d,
        tight,
    })
}

/// A named packing from the registry, with its construction context.
pub struct NamedPacking {
    pub name: String,
    pub recipe: PackingRecipe,
    pub splitting: Splitting,
    pub set: AntipodalSet,
    pub packing: TranslatePacking,
}

impl NamedPacking {
    /// The host minimal norm and whether it was assumed.
    pub fn mu(&self, cfg: &EnumConfig) -> Result<(Rat, bool)> {
        match &self.recipe.assumed_mu {
            Some(mu) => Ok((mu.clone(), true)),
            None => Ok((min_norm(self.splitting.lattice(), cfg)?, false)),
        }
    }
}

/// Build one of the registry packings (`v20`, `v22`, `v44p`..`v47q`): make
/// the splitting, search the antipodal set in the projection, construct the
/// packing. Enumeration is skipped exactly for the assume-mu recipes.
pub fn build_named_packing(name: &str, cfg: &EnumConfig) -> Result<NamedPacking> {
    let recipe = packing_recipe(name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown packing `{name}`")))?;
    let splitting = make_splitting(recipe.split)?;
    let m = splitting.project(Side::U);
    let set = find_antipodal_set(&m, recipe.s, None, cfg)?;
    let mode = match &recipe.assumed_mu {
        Some(mu) => DistanceMode::AssumeMu(mu.clone()),
        None => DistanceMode::Enumerate,
    };
    let packing = antipode_construct(&splitting, &set, mode, cfg)?;
    Ok(NamedPacking {
        name: name.to_string(),
        recipe,
        splitting,
        set,
        packing,
    })
}

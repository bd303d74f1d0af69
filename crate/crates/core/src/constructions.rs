//! Named-lattice factory.
//!
//! # Coordinate conventions
//!
//! The Leech lattice is built in integer coordinates with `scale = 1/8`:
//! a point is `(1/sqrt 8)(a_1, ..., a_24)` and the stored vector is the
//! integer tuple. Its generators come from the Golay code by the standard
//! congruence description, split by coordinate parity:
//!
//! * even part: `2c + 4z` for `c` a Golay codeword (as a 0/1 vector) and
//!   `z` of even coordinate sum;
//! * odd part: the even part shifted by the glue vector `(-3, 1^23)`.
//!
//! The 48-dimensional lattices come from the two ternary self-dual codes in
//! integer-and-half-integer coordinates with `scale = 1/3`:
//!
//! * `L0`: integer vectors congruent mod 3 to a codeword, with even
//!   coordinate sum;
//! * glue: `(3/2)(1,...,1) + 3 e_1`, which pairs integrally with `L0` and
//!   has even norm, giving an even unimodular lattice. A vector of norm 6
//!   is `3 e_1 - 3 e_2`.
//!
//! # Subspaces for the splittings
//!
//! * `v20`: `U` = first four coordinates (so `V` = vectors beginning with
//!   four zeros).
//! * `v22`: `U` = span of `e1 - e2`, `e2 - e3` (so `V` = vectors beginning
//!   with three equal coordinates).
//! * `lambda23` section: `U` = span of `e2 - e3` (second and third
//!   coordinates equal on the `V` side).
//! * 48-dimensional splittings, `U` of dimension `k = 1, 2, 3, 4`:
//!   difference vectors `e1 - e2, ..., e_k - e_{k+1}` for `k <= 3`, and the
//!   full first-four-coordinate space for `k = 4`. The sections are then
//!   `sqrt 3` times `A1, A2, A3, D4` and the projections their suitably
//!   rescaled duals.

use crate::codes::{golay24, pless_symmetry48, ternary_qr48, LinearCode};
use crate::error::{Error, Result};
use crate::lattice::{ScaledLattice, Side, Splitting};
use crate::matrix::RatMatrix;
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootName {
    Zn,
    An,
    Dn,
    En,
}

/// Standard-coordinate root lattice with squared lengths rescaled by
/// `rescale`.
pub fn make_root(name: RootName, rank: usize, rescale: Rat) -> Result<ScaledLattice> {
    if !rescale.is_positive() {
        return Err(Error::InvalidInput("rescale must be positive".into()));
    }
    let basis = match name {
        RootName::Zn => {
            if rank == 0 {
                return Err(Error::InvalidInput("rank must be positive".into()));
            }
            RatMatrix::identity(rank)
        }
        RootName::An => {
            if rank == 0 {
                return Err(Error::InvalidInput("rank must be positive".into()));
            }
            // rows e_i - e_{i+1} in ambient rank+1
            RatMatrix::from_fn(rank, rank + 1, |i, j| {
                if j == i {
                    Rat::one()
                } else if j == i + 1 {
                    -Rat::one()
                } else {
                    Rat::zero()
                }
            })
        }
        RootName::Dn => {
            if rank < 2 {
                return Err(Error::InvalidInput("Dn needs rank >= 2".into()));
            }
            let mut rows = Vec::with_capacity(rank);
            for i in 0..rank - 1 {
                let mut r = vec![Rat::zero(); rank];
                r[i] = Rat::one();
                r[i + 1] = -Rat::one();
                rows.push(r);
            }
            let mut last = vec![Rat::zero(); rank];
            last[rank - 2] = Rat::one();
            last[rank - 1] = Rat::one();
            rows.push(last);
            RatMatrix::from_rows(rows)
        }
        RootName::En => {
            if !(6..=8).contains(&rank) {
                return Err(Error::InvalidInput("En needs rank 6, 7, or 8".into()));
            }
            // Bourbaki simple roots of E8 in R^8; E6 and E7 take the first
            // 6 or 7 of them.
            let half = Rat::new(1, 2);
            let mut roots: Vec<Vec<Rat>> = Vec::with_capacity(8);
            let mut a1 = vec![-half.clone(); 8];
            a1[0] = half.clone();
            a1[7] = half.clone();
            roots.push(a1);
            let mut a2 = vec![Rat::zero(); 8];
            a2[0] = Rat::one();
            a2[1] = Rat::one();
            roots.push(a2);
            for i in 0..6 {
                let mut r = vec![Rat::zero(); 8];
                r[i] = -Rat::one();
                r[i + 1] = Rat::one();
                roots.push(r);
            }
            RatMatrix::from_rows(roots[..rank].to_vec())
        }
    };
    ScaledLattice::new(basis, rescale)
}

/// The Leech lattice in integer coordinates with `scale = 1/8`.
pub fn make_leech() -> ScaledLattice {
    let golay = golay24();
    let mut gens: Vec<Vec<Rat>> = Vec::with_capacity(12 + 24 + 1);
    for row in golay.generator() {
        gens.push(row.iter().map(|&b| Rat::from_int(2 * b as i64)).collect());
    }
    // 4 * D24
    for i in 0..23 {
        let mut r = vec![Rat::zero(); 24];
        r[i] = Rat::from_int(4);
        r[i + 1] = Rat::from_int(-4);
        gens.push(r);
    }
    let mut d_last = vec![Rat::zero(); 24];
    d_last[0] = Rat::from_int(4);
    d_last[1] = Rat::from_int(4);
    gens.push(d_last);
    // odd-coset glue
    let mut glue = vec![Rat::one(); 24];
    glue[0] = Rat::from_int(-3);
    gens.push(glue);

    let lat = ScaledLattice::from_generators(&RatMatrix::from_rows(gens), Rat::new(1, 8))
        .expect("Leech generators span a rank-24 lattice");
    debug_assert_eq!(lat.determinant(), Rat::one());
    lat
}

/// Laminated sections of the Leech lattice, as rank-`dim` lattices in the
/// ambient 24-space.
pub fn make_laminated(dim: usize) -> Result<ScaledLattice> {
    let split = match dim {
        20 => make_splitting(SplitName::V20)?,
        22 => make_splitting(SplitName::V22)?,
        23 => {
            let u = basis_row_diff(24, &[1]);
            Splitting::new(make_leech(), u)?
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "no laminated section in dimension {dim}"
            )))
        }
    };
    Ok(split.section(Side::V))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum P48Variant {
    P,
    Q,
}

impl P48Variant {
    pub fn code(self) -> LinearCode {
        match self {
            P48Variant::P => pless_symmetry48(),
            P48Variant::Q => ternary_qr48(),
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            P48Variant::P => "p",
            P48Variant::Q => "q",
        }
    }
}

/// One of the two even unimodular 48-dimensional lattices built from a
/// ternary self-dual code, in coordinates with `scale = 1/3`.
pub fn make_p48(variant: P48Variant) -> ScaledLattice {
    let code = variant.code();
    let mut gens: Vec<Vec<Rat>> = Vec::with_capacity(24 + 48 + 1);
    for row in code.generator() {
        // lift digits 0,1,2 to 0,1,-1 and fix the parity of the sum
        let mut lift: Vec<i64> = row
            .iter()
            .map(|&d| match d {
                0 => 0,
                1 => 1,
                _ => -1,
            })
            .collect();
        let sum: i64 = lift.iter().sum();
        if sum % 2 != 0 {
            lift[0] += 3;
        }
        gens.push(lift.into_iter().map(Rat::from_int).collect());
    }
    // 3 * D48
    for i in 0..47 {
        let mut r = vec![Rat::zero(); 48];
        r[i] = Rat::from_int(3);
        r[i + 1] = Rat::from_int(-3);
        gens.push(r);
    }
    let mut d_last = vec![Rat::zero(); 48];
    d_last[0] = Rat::from_int(3);
    d_last[1] = Rat::from_int(3);
    gens.push(d_last);
    // glue: (3/2)(1,...,1) + 3 e_1
    let mut glue = vec![Rat::new(3, 2); 48];
    glue[0] = Rat::new(9, 2);
    gens.push(glue);

    let lat = ScaledLattice::from_generators(&RatMatrix::from_rows(gens), Rat::new(1, 3))
        .expect("generators span a rank-48 lattice");
    debug_assert_eq!(lat.determinant(), Rat::one());
    lat
}

/// A norm-6 vector of either 48-dimensional lattice: `3 e_1 - 3 e_2`.
pub fn p48_norm6_vector() -> Vec<Rat> {
    let mut v = vec![Rat::zero(); 48];
    v[0] = Rat::from_int(3);
    v[1] = Rat::from_int(-3);
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitName {
    V20,
    V22,
    P48 { l: usize, variant: P48Variant },
}

/// Rows `e_i - e_{i+1}` for the listed zero-based positions.
fn basis_row_diff(ambient: usize, positions: &[usize]) -> RatMatrix {
    let rows: Vec<Vec<Rat>> = positions
        .iter()
        .map(|&i| {
            let mut r = vec![Rat::zero(); ambient];
            r[i] = Rat::one();
            r[i + 1] = -Rat::one();
            r
        })
        .collect();
    RatMatrix::from_rows(rows)
}

fn leading_coordinates(ambient: usize, k: usize) -> RatMatrix {
    RatMatrix::from_fn(k, ambient, |i, j| {
        if i == j {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}

pub fn make_splitting(name: SplitName) -> Result<Splitting> {
    match name {
        SplitName::V20 => Splitting::new(make_leech(), leading_coordinates(24, 4)),
        SplitName::V22 => Splitting::new(make_leech(), basis_row_diff(24, &[0, 1])),
        SplitName::P48 { l, variant } => {
            let lat = make_p48(variant);
            let u = match l {
                47 => basis_row_diff(48, &[0]),
                46 => basis_row_diff(48, &[0, 1]),
                45 => basis_row_diff(48, &[0, 1, 2]),
                44 => leading_coordinates(48, 4),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "no splitting for dimension {l}"
                    )))
                }
            };
            Splitting::new(lat, u)
        }
    }
}

/// How a named packing is assembled: which splitting, how many antipodal
/// points, and whether the host minimal norm is enumerated or assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingRecipe {
    pub split: SplitName,
    pub s: usize,
    /// `None`: enumerate distances. `Some(mu)`: take the host minimal norm
    /// as given and skip enumeration.
    pub assumed_mu: Option<Rat>,
}

pub fn packing_recipe(name: &str) -> Option<PackingRecipe> {
    let p48 = |l: usize, variant| PackingRecipe {
        split: SplitName::P48 { l, variant },
        s: match l {
            47 => 2,
            46 => 3,
            _ => 4,
        },
        assumed_mu: Some(Rat::from_int(6)),
    };
    match name {
        "v20" => Some(PackingRecipe {
            split: SplitName::V20,
            s: 4,
            assumed_mu: None,
        }),
        "v22" => Some(PackingRecipe {
            split: SplitName::V22,
            s: 3,
            assumed_mu: None,
        }),
        "v44p" => Some(p48(44, P48Variant::P)),
        "v44q" => Some(p48(44, P48Variant::Q)),
        "v45p" => Some(p48(45, P48Variant::P)),
        "v45q" => Some(p48(45, P48Variant::Q)),
        "v46p" => Some(p48(46, P48Variant::P)),
        "v46q" => Some(p48(46, P48Variant::Q)),
        "v47p" => Some(p48(47, P48Variant::P)),
        "v47q" => Some(p48(47, P48Variant::Q)),
        _ => None,
    }
}

pub const PACKING_NAMES: [&str; 10] = [
    "v20", "v22", "v44p", "v44q", "v45p", "v45q", "v46p", "v46q", "v47p", "v47q",
];

pub const LATTICE_NAMES: [&str; 6] = ["leech", "lambda20", "lambda22", "lambda23", "p48p", "p48q"];

pub fn make_named_lattice(name: &str) -> Option<ScaledLattice> {
    match name {
        "leech" => Some(make_leech()),
        "lambda20" => make_laminated(20).ok(),
        "lambda22" => make_laminated(22).ok(),
        "lambda23" => make_laminated(23).ok(),
        "p48p" => Some(make_p48(P48Variant::P)),
        "p48q" => Some(make_p48(P48Variant::Q)),
        _ => None,
    }
}

/// Integral Gram with even diagonal.
pub fn is_even_lattice(lat: &ScaledLattice) -> bool {
    let g = lat.gram();
    if !g.is_integer() {
        return false;
    }
    (0..g.rows()).all(|i| crate::rat::bigint_is_even(g[(i, i)].numer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{gram_isometry, lattice_equal};

    #[test]
    fn root_lattice_determinants() {
        assert_eq!(
            make_root(RootName::Zn, 3, Rat::one()).unwrap().gram(),
            RatMatrix::identity(3)
        );
        let cases = [
            (RootName::An, 2, 3),
            (RootName::An, 3, 4),
            (RootName::Dn, 4, 4),
            (RootName::En, 6, 3),
            (RootName::En, 7, 2),
            (RootName::En, 8, 1),
        ];
        for (name, rank, det) in cases {
            let l = make_root(name, rank, Rat::one()).unwrap();
            assert_eq!(l.determinant(), Rat::from_int(det), "{name:?} rank {rank}");
        }
        assert!(make_root(RootName::En, 5, Rat::one()).is_err());
        assert!(make_root(RootName::Dn, 1, Rat::one()).is_err());
    }

    #[test]
    fn d4_rescaled_min_diagonal() {
        let k = make_root(RootName::Dn, 4, Rat::from_int(2)).unwrap();
        let g = k.gram();
        for i in 0..4 {
            assert_eq!(g[(i, i)], Rat::from_int(4));
        }
        assert_eq!(k.determinant(), Rat::from_int(64));
    }

    #[test]
    fn leech_is_even_unimodular() {
        let leech = make_leech();
        assert_eq!(leech.rank(), 24);
        assert_eq!(leech.determinant(), Rat::one());
        assert!(is_even_lattice(&leech));
    }

    #[test]
    fn leech_contains_standard_minimal_vectors() {
        let leech = make_leech();
        // (4,-4,0^22), (-3,1^23), and 2x(an octad word)
        let mut v = vec![Rat::zero(); 24];
        v[0] = Rat::from_int(4);
        v[1] = Rat::from_int(-4);
        assert!(leech.member(&v));
        assert_eq!(leech.norm_of(&v), Rat::from_int(4));
        let mut w = vec![Rat::one(); 24];
        w[0] = Rat::from_int(-3);
        assert!(leech.member(&w));
        assert_eq!(leech.norm_of(&w), Rat::from_int(4));
        let mut not_in = vec![Rat::zero(); 24];
        not_in[0] = Rat::from_int(4);
        assert!(!leech.member(&not_in), "(4, 0^23) is not a Leech point");
    }

    #[test]
    fn laminated_determinants() {
        assert_eq!(make_laminated(20).unwrap().determinant(), Rat::from_int(64));
        assert_eq!(make_laminated(22).unwrap().determinant(), Rat::from_int(12));
        assert_eq!(make_laminated(23).unwrap().determinant(), Rat::from_int(4));
        assert!(make_laminated(21).is_err());
    }

    #[test]
    fn v20_section_is_sqrt2_d4() {
        let split = make_splitting(SplitName::V20).unwrap();
        let k = split.section(Side::U);
        assert_eq!(k.rank(), 4);
        let named = make_root(RootName::Dn, 4, Rat::from_int(2)).unwrap();
        assert!(gram_isometry(&k, &named).is_some(), "K = sqrt(2) D4");
        let m = split.project(Side::U);
        let named_dual = named.dual();
        assert!(
            gram_isometry(&m, &named_dual).is_some(),
            "M = (1/sqrt 2) D4*"
        );
        assert!(lattice_equal(&m, &k.dual()), "projection = dual of section");
    }

    #[test]
    fn v22_section_and_projection() {
        let split = make_splitting(SplitName::V22).unwrap();
        let k = split.section(Side::U);
        assert_eq!(k.rank(), 2);
        let named = make_root(RootName::An, 2, Rat::from_int(2)).unwrap();
        assert!(gram_isometry(&k, &named).is_some(), "K = sqrt(2) A2");
        let m = split.project(Side::U);
        assert!(
            gram_isometry(&m, &named.dual()).is_some(),
            "M = (1/sqrt 2) A2*"
        );
        let l = split.section(Side::V);
        assert_eq!(l.determinant(), Rat::from_int(12));
    }

    #[test]
    fn p48_even_unimodular_with_norm6_vector() {
        for variant in [P48Variant::P, P48Variant::Q] {
            let lat = make_p48(variant);
            assert_eq!(lat.rank(), 48);
            assert_eq!(lat.determinant(), Rat::one(), "{variant:?}");
            assert!(is_even_lattice(&lat), "{variant:?}");
            let v = p48_norm6_vector();
            assert!(lat.member(&v), "{variant:?} contains 3e1 - 3e2");
            assert_eq!(lat.norm_of(&v), Rat::from_int(6));
        }
    }

    #[test]
    fn p48_splitting_sections_are_rescaled_roots() {
        // sections are sqrt(3) x root, projections the rescaled duals
        let cases: [(usize, RootName, usize); 4] = [
            (47, RootName::An, 1),
            (46, RootName::An, 2),
            (45, RootName::An, 3),
            (44, RootName::Dn, 4),
        ];
        for (l, root, rank) in cases {
            let split = make_splitting(SplitName::P48 {
                l,
                variant: P48Variant::Q,
            })
            .unwrap();
            assert_eq!(split.l(), l);
            let k = split.section(Side::U);
            let named = make_root(root, rank, Rat::from_int(3)).unwrap();
            assert!(
                gram_isometry(&k, &named).is_some(),
                "section for l = {l} is sqrt(3) {root:?}{rank}"
            );
            let m = split.project(Side::U);
            assert!(
                gram_isometry(&m, &named.dual()).is_some(),
                "projection for l = {l} is the rescaled dual"
            );
            assert!(lattice_equal(&m, &k.dual()));
        }
    }

    #[test]
    fn det_multiplicativity_on_splittings() {
        for name in [SplitName::V20, SplitName::V22] {
            let split = make_splitting(name).unwrap();
            let det = split.lattice().determinant();
            let det_k = split.section(Side::U).determinant();
            let det_nv = split.project(Side::V).determinant();
            assert_eq!(det, &det_k * &det_nv, "{name:?}");
        }
    }

    #[test]
    fn laminated_section_matches_splitting() {
        let split = make_splitting(SplitName::V20).unwrap();
        assert!(lattice_equal(
            &make_laminated(20).unwrap(),
            &split.section(Side::V)
        ));
        let split = make_splitting(SplitName::V22).unwrap();
        assert!(lattice_equal(
            &make_laminated(22).unwrap(),
            &split.section(Side::V)
        ));
    }

    #[test]
    fn registry_names_resolve() {
        for name in LATTICE_NAMES {
            assert!(make_named_lattice(name).is_some(), "{name}");
        }
        assert!(make_named_lattice("nonesuch").is_none());
        for name in PACKING_NAMES {
            assert!(packing_recipe(name).is_some(), "{name}");
        }
    }
}

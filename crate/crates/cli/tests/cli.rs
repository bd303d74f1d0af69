//! End-to-end tests of the `antipode` binary: file round-trips, exit codes,
//! and bit-exact agreement between command output and direct library calls.

use std::path::PathBuf;
use std::process::{Command, Output};

use antipode_core::antipode::{build_named_packing, center_density, TranslatePacking};
use antipode_core::constructions::{make_laminated, make_leech, make_root, RootName};
use antipode_core::enumeration::EnumConfig;
use antipode_core::lattice::{lattice_equal, ScaledLattice};
use antipode_core::rat::Rat;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_antipode"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("antipode-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn build_leech_roundtrip() {
    let out = run(&["build", "leech"]);
    assert!(out.status.success());
    let lat = ScaledLattice::read_text(&stdout(&out)).unwrap();
    assert_eq!(lat.determinant(), Rat::one());
    assert!(lattice_equal(&lat, &make_leech()), "file round-trips to the same lattice");
}

#[test]
fn build_all_registry_lattices_roundtrip() {
    for name in antipode_core::constructions::LATTICE_NAMES {
        let out = run(&["build", name]);
        assert!(out.status.success(), "{name}");
        let lat = ScaledLattice::read_text(&stdout(&out)).unwrap();
        let direct = antipode_core::constructions::make_named_lattice(name).unwrap();
        assert!(lattice_equal(&lat, &direct), "{name} round-trips");
    }
}

#[test]
fn build_trivial_zn() {
    let out = run(&["build", "zn", "--dim", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 1\nscale 1\n1\n");
}

#[test]
fn build_v22_packing_file() {
    let path = tmpfile("v22.pack");
    let out = run(&["build", "v22", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let (base, translates) = TranslatePacking::read_geometry(&text).unwrap();
    assert_eq!(translates.len(), 3, "three translates of Lambda22");
    assert!(lattice_equal(&base, &make_laminated(22).unwrap()));
    std::fs::remove_file(&path).ok();
}

#[test]
fn build_all_registry_packings_roundtrip() {
    let cfg = EnumConfig::default();
    for name in antipode_core::constructions::PACKING_NAMES {
        let path = tmpfile(&format!("{name}.pack"));
        let out = run(&["build", name, "--out", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}");
        let text = std::fs::read_to_string(&path).unwrap();
        let (base, translates) = TranslatePacking::read_geometry(&text).unwrap();
        let direct = build_named_packing(name, &cfg).unwrap();
        assert!(lattice_equal(&base, direct.packing.base()), "{name}: base lattice");
        assert_eq!(translates, direct.packing.translates(), "{name}: translates");
        std::fs::remove_file(&path).ok();
    }
}

#[test]
fn unknown_name_exits_2() {
    let out = run(&["build", "nonesuch"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "nonesuch"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_trivial_and_assumed() {
    let out = run(&["verify", "zn", "--dim", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verdict pass"));

    let out = run(&["verify", "v47q", "--level", "algebraic"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mu = 6 (assumed)"), "assumed-mu annotation present");
    assert!(text.contains("verdict pass"));

    // enumerate level is refused for assumed-mu packings
    let out = run(&["verify", "v47q", "--level", "enumerate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_v20_enumerates_kissing() {
    let out = run(&["verify", "v20", "--level", "enumerate"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("min_sqdist 7/2"), "d = 7/2: {text}");
    assert!(text.contains("kissing 15360"), "kissing 15360: {text}");
    assert!(text.contains("verdict pass"));
}

#[test]
fn search_finds_the_tetrahedron() {
    // the projection lattice of the 20-dimensional packing, as a file
    let dual = make_root(RootName::Dn, 4, Rat::from_int(2)).unwrap().dual();
    let path = tmpfile("d4dual.lat");
    std::fs::write(&path, dual.write_text()).unwrap();
    let out = run(&["search", "--lattice", path.to_str().unwrap(), "--size", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("beta 1/2"), "four points at squared diameter 1/2");

    let out = run(&[
        "search",
        "--lattice",
        path.to_str().unwrap(),
        "--size",
        "40",
        "--cap",
        "1/4",
    ]);
    assert_eq!(out.status.code(), Some(3), "infeasible search exits 3");

    // s = 1 always succeeds with beta = 0
    let out = run(&["search", "--lattice", path.to_str().unwrap(), "--size", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("beta 0"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn report_matches_library_bit_exactly() {
    let out = run(&["report", "--level", "algebraic"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);

    // the v20 row must carry exactly the library's numbers
    let np = build_named_packing("v20", &EnumConfig::default()).unwrap();
    let (delta_sq, delta) = center_density(&np.packing);
    let v20_line = text
        .lines()
        .find(|l| l.starts_with("v20"))
        .expect("v20 row present");
    assert!(v20_line.contains(&delta), "delta column: {v20_line}");
    assert!(v20_line.contains(&delta_sq.to_string()), "exact delta^2 column");
    assert!(v20_line.contains("1.052302305"), "ratio column");

    // reference rows have ratio exactly 1
    let lamb = text
        .lines()
        .find(|l| l.starts_with("lambda20"))
        .expect("lambda20 row present");
    assert!(lamb.contains("1.000000000"));
    assert!(lamb.contains("0.1250000000"), "old record 1/8");
    let lamb22 = text
        .lines()
        .find(|l| l.starts_with("lambda22"))
        .expect("lambda22 row present");
    assert!(lamb22.contains("0.2886751346"), "old record 1/sqrt(12)");

    // dimension 44..47 rows
    for (name, delta, ratio) in [
        ("v47q", "5788.809161", "1.031621227"),
        ("v46q", "2719.936460", "1.259336185"),
        ("v45q", "974.6996464", "1.105425192"),
        ("v44q", "472.7987759", "1.137473138"),
    ] {
        let line = text
            .lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("{name} row present"));
        assert!(line.contains(delta), "{name} delta: {line}");
        assert!(line.contains(ratio), "{name} ratio: {line}");
        assert!(line.contains("6*"), "{name} marks mu as assumed");
    }
}

#[test]
fn enum_cap_env_is_honored() {
    let out = bin()
        .args(["verify", "leech", "--level", "enumerate"])
        .env("ANTIPODE_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "cap exceeded is an internal error");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("enumeration cap exceeded"), "{err}");
}

#[test]
fn matrix_and_lattice_files_are_bit_exact() {
    // build -> file -> load -> identical text
    let path = tmpfile("lam23.lat");
    let out = run(&["build", "lambda23", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lat = ScaledLattice::read_text(&text).unwrap();
    assert_eq!(lat.write_text(), text, "bit-exact round-trip");
    std::fs::remove_file(&path).ok();
}

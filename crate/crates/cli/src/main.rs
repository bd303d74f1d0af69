//! Command-line front end: build named lattices and packings, verify them,
//! print the reproduction table, and search for antipodal sets.
//!
//! Exit codes: 0 pass, 1 internal error, 2 bad input, 3 infeasible search,
//! 4 verification failure.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use antipode_core::antipode::{
    build_named_packing, center_density, find_antipodal_set, improvement_ratio, kissing_number,
    verify_packing, NamedPacking, TranslatePacking, VerifyLevel,
};
use antipode_core::constructions::{
    is_even_lattice, make_named_lattice, make_root, RootName, PACKING_NAMES,
};
use antipode_core::enumeration::{min_norm, EnumConfig, DEFAULT_ENUM_CAP};
use antipode_core::error::Error;
use antipode_core::lattice::ScaledLattice;
use antipode_core::rat::Rat;

#[derive(Parser)]
#[command(name = "antipode", about = "Exact lattice sphere-packing computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    Algebraic,
    Enumerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
}

#[derive(Args)]
struct CommonOpts {
    /// Worker threads inside enumeration calls; never changes outputs.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named object and write its file.
    Build {
        /// Registry name: a lattice (leech, lambda20, lambda22, lambda23,
        /// p48p, p48q, zn, an, dn, en) or a packing (v20, v22, v44p..v47q).
        name: String,
        /// Rank for the parametric root lattices zn/an/dn/en.
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Norm rescaling for the parametric root lattices.
        #[arg(long, default_value = "1")]
        rescale: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify a named object: lattice invariants, or the packing
    /// construction obligations.
    Verify {
        name: String,
        #[arg(long, value_enum, default_value_t = Level::Enumerate)]
        level: Level,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print the reproduction table for all registry packings.
    Report {
        /// enumerate also fills in the kissing numbers (slower).
        #[arg(long, value_enum, default_value_t = Level::Enumerate)]
        level: Level,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Find an antipodal set of a given size in a lattice read from a file.
    Search {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        size: usize,
        /// Squared-diameter cap `p` or `p/q`; default is twice the minimal
        /// norm.
        #[arg(long)]
        cap: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn enum_config(threads: usize) -> EnumConfig {
    let cap = std::env::var("ANTIPODE_ENUM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP);
    EnumConfig {
        cap,
        threads: threads.max(1),
    }
}

fn emit(common: &CommonOpts, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidInput(_) | Error::Parse(_) | Error::DimensionMismatch(_) => 2,
        Error::InfeasibleCap => 3,
        _ => 1,
    }
}

fn parse_rat(s: &str) -> Result<Rat, Error> {
    s.parse::<Rat>()
}

/// Parametric root-lattice names accepted by `build`/`verify`.
fn parse_root_name(name: &str) -> Option<RootName> {
    match name {
        "zn" => Some(RootName::Zn),
        "an" => Some(RootName::An),
        "dn" => Some(RootName::Dn),
        "en" => Some(RootName::En),
        _ => None,
    }
}

fn build_lattice_by_name(name: &str, dim: usize, rescale: &str) -> Result<ScaledLattice, Error> {
    if let Some(root) = parse_root_name(name) {
        return make_root(root, dim, parse_rat(rescale)?);
    }
    make_named_lattice(name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown lattice `{name}`")))
}

fn cmd_build(name: &str, dim: usize, rescale: &str, common: &CommonOpts) -> Result<(), Error> {
    if PACKING_NAMES.contains(&name) {
        let cfg = enum_config(common.threads);
        let np = build_named_packing(name, &cfg)?;
        return emit(common, &np.packing.write_text());
    }
    let lat = build_lattice_by_name(name, dim, rescale)?;
    emit(common, &lat.write_text())
}

/// Expected exact invariants for the named lattices.
fn lattice_expectations(name: &str) -> (Option<i64>, bool, Option<i64>) {
    // (determinant, must be even, minimal norm when enumerable)
    match name {
        "leech" => (Some(1), true, Some(4)),
        "lambda20" => (Some(64), true, Some(4)),
        "lambda22" => (Some(12), true, Some(4)),
        "lambda23" => (Some(4), true, Some(4)),
        "p48p" | "p48q" => (Some(1), true, None),
        _ => (None, false, None),
    }
}

fn cmd_verify(name: &str, level: Level, dim: usize, common: &CommonOpts) -> Result<bool, Error> {
    let cfg = enum_config(common.threads);
    let mut out = String::new();
    let pass = if PACKING_NAMES.contains(&name) {
        let np: NamedPacking = build_named_packing(name, &cfg)?;
        let (mu, mu_assumed) = np.mu(&cfg)?;
        if level == Level::Enumerate && mu_assumed {
            return Err(Error::InvalidInput(format!(
                "`{name}` has an assumed minimal norm; use --level algebraic"
            )));
        }
        let vlevel = match level {
            Level::Algebraic => VerifyLevel::Algebraic,
            Level::Enumerate => VerifyLevel::Enumerate,
        };
        let report = verify_packing(&np.packing, &mu, mu_assumed, np.set.beta(), vlevel, &cfg)?;
        out.push_str(&format!(
            "packing {name}: s = {}, l = {}, beta = {}, mu = {}{}\n",
            np.packing.s(),
            np.packing.l(),
            np.set.beta(),
            mu,
            if mu_assumed { " (assumed)" } else { "" },
        ));
        out.push_str(&report.write_text());
        if level == Level::Enumerate {
            let kiss = kissing_number(&np.packing, &cfg)?;
            out.push_str(&format!("kissing {kiss}\n"));
        }
        report.pass()
    } else {
        let lat = build_lattice_by_name(name, dim, "1")?;
        let (det_want, even_want, min_want) = lattice_expectations(name);
        let mut ok = true;
        let det = lat.determinant();
        out.push_str(&format!("lattice {name}: rank {}, det {det}\n", lat.rank()));
        if let Some(want) = det_want {
            let good = det == Rat::from_int(want);
            ok &= good;
            out.push_str(&format!(
                "{} determinant = {want}\n",
                if good { "pass" } else { "FAIL" }
            ));
        }
        if even_want {
            let good = is_even_lattice(&lat);
            ok &= good;
            out.push_str(&format!(
                "{} even lattice\n",
                if good { "pass" } else { "FAIL" }
            ));
        }
        if level == Level::Enumerate {
            if let Some(want) = min_want {
                let m = min_norm(&lat, &cfg)?;
                let good = m == Rat::from_int(want);
                ok &= good;
                out.push_str(&format!(
                    "{} minimal norm {m} (expected {want})\n",
                    if good { "pass" } else { "FAIL" }
                ));
            }
        }
        out.push_str(if ok { "verdict pass\n" } else { "verdict FAIL\n" });
        ok
    };
    emit(common, &out)?;
    Ok(pass)
}

/// One row of the reproduction table.
struct Row {
    name: String,
    l: usize,
    s: usize,
    beta: Rat,
    mu: Rat,
    mu_assumed: bool,
    delta_sq: Rat,
    delta: String,
    old_delta: String,
    ratio: String,
    kissing: Option<u64>,
}

fn lattice_row(
    name: &str,
    known_mu: i64,
    kissing: Option<u64>,
    level: Level,
    cfg: &EnumConfig,
) -> Result<Row, Error> {
    let lat = make_named_lattice(name)
        .ok_or_else(|| Error::InvalidInput(format!("unknown lattice `{name}`")))?;
    // at enumerate level the minimal norm is recomputed rather than assumed
    let (mu, mu_assumed) = if level == Level::Enumerate {
        (min_norm(&lat, cfg)?, false)
    } else {
        (Rat::from_int(known_mu), true)
    };
    let p = TranslatePacking::from_parts(
        lat.clone(),
        vec![vec![Rat::zero(); lat.ambient_dim()]],
        antipode_core::antipode::RebuildMode::AssumeDistance(mu.clone()),
        cfg,
    )?;
    let (delta_sq, delta) = center_density(&p);
    Ok(Row {
        name: name.into(),
        l: p.l(),
        s: 1,
        beta: Rat::zero(),
        mu,
        mu_assumed,
        delta_sq,
        delta: delta.clone(),
        old_delta: delta,
        ratio: "1.000000000".into(),
        kissing,
    })
}

fn packing_row(name: &str, level: Level, cfg: &EnumConfig) -> Result<Row, Error> {
    let np = build_named_packing(name, cfg)?;
    let (mu, mu_assumed) = np.mu(cfg)?;
    let p = &np.packing;
    let (delta_sq, delta) = center_density(p);
    // the record the construction improves on: the base lattice packed with
    // the host minimal norm
    let old = TranslatePacking::from_parts(
        p.base().clone(),
        vec![vec![Rat::zero(); p.base().ambient_dim()]],
        antipode_core::antipode::RebuildMode::AssumeDistance(mu.clone()),
        cfg,
    )?;
    let (_, old_delta) = center_density(&old);
    let ratio = improvement_ratio(p.s(), np.set.beta(), &mu, p.l())?;
    let kissing = if level == Level::Enumerate && !mu_assumed {
        Some(kissing_number(p, cfg)?)
    } else {
        None
    };
    Ok(Row {
        name: name.into(),
        l: p.l(),
        s: p.s(),
        beta: np.set.beta().clone(),
        mu,
        mu_assumed,
        delta_sq,
        delta,
        old_delta,
        ratio: ratio.decimal,
        kissing,
    })
}

fn cmd_report(level: Level, common: &CommonOpts) -> Result<(), Error> {
    let cfg = enum_config(common.threads);
    let mut rows = Vec::new();
    // reference single-translate lattices
    let leech_kiss = if level == Level::Enumerate {
        let leech = make_named_lattice("leech").expect("registry");
        let p = TranslatePacking::from_parts(
            leech.clone(),
            vec![vec![Rat::zero(); 24]],
            antipode_core::antipode::RebuildMode::Enumerate,
            &cfg,
        )?;
        Some(kissing_number(&p, &cfg)?)
    } else {
        None
    };
    rows.push(lattice_row("leech", 4, leech_kiss, level, &cfg)?);
    rows.push(lattice_row("lambda20", 4, None, level, &cfg)?);
    rows.push(lattice_row("lambda22", 4, None, level, &cfg)?);
    for name in PACKING_NAMES {
        rows.push(packing_row(name, level, &cfg)?);
    }

    let mut out = String::new();
    out.push_str(&format!(
        "{:<12} {:<3} {:<2} {:<5} {:<4} {:<14} {:<14} {:<14} {:<8} delta^2 (exact)\n",
        "packing", "l", "s", "beta", "mu", "delta", "old-delta", "ratio", "kissing"
    ));
    for r in &rows {
        let mu = format!("{}{}", r.mu, if r.mu_assumed { "*" } else { "" });
        let kiss = r
            .kissing
            .map(|k| k.to_string())
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "{:<12} {:<3} {:<2} {:<5} {:<4} {:<14} {:<14} {:<14} {:<8} {}\n",
            r.name,
            r.l,
            r.s,
            r.beta.to_string(),
            mu,
            r.delta,
            r.old_delta,
            r.ratio,
            kiss,
            r.delta_sq,
        ));
    }
    out.push_str("(* = minimal norm assumed, not enumerated)\n");
    emit(common, &out)
}

fn cmd_search(
    lattice_path: &str,
    size: usize,
    cap: Option<&str>,
    common: &CommonOpts,
) -> Result<(), Error> {
    let text = fs::read_to_string(lattice_path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {lattice_path}: {e}")))?;
    let lat = ScaledLattice::read_text(&text)?;
    let cap = cap.map(parse_rat).transpose()?;
    let cfg = enum_config(common.threads);
    let set = find_antipodal_set(&lat, size, cap, &cfg)?;
    emit(common, &set.write_text())
}

fn run() -> Result<bool, Error> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Build {
            name,
            dim,
            rescale,
            common,
        } => cmd_build(name, *dim, rescale, common).map(|_| true),
        Command::Verify {
            name,
            level,
            dim,
            common,
        } => cmd_verify(name, *level, *dim, common),
        Command::Report { level, common } => cmd_report(*level, common).map(|_| true),
        Command::Search {
            lattice,
            size,
            cap,
            common,
        } => cmd_search(lattice, *size, cap.as_deref(), common).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

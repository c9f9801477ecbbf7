mod specs;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use omegalat::algebra::{global_dimension, incidence_algebra, EnumerateOptions, GlobalDimension};
use omegalat::catalan::{dyck_lattice, tamari_lattice, typea_torsion_lattice, DyckPath};
use omegalat::lattice::{congruence_lattice, forcing_poset, lattice_isomorphic};
use omegalat::poset::{interval_poset, poset_isomorphic};
use omegalat::torsion::{
    enumerate_torsion_pairs, omega_lattice_via_simples, verify_theorem_1, Budget, ModCategory,
    OmegaRoute, TorsionLattice,
};
use omegalat::{FinLattice, Fp};

#[derive(Parser)]
#[command(
    name = "omegalat",
    version,
    about = "Torsion pairs, omega-torsion pairs and Catalan lattices"
)]
struct Cli {
    /// Characteristic of the ground field.
    #[arg(long, global = true)]
    field: Option<u32>,
    /// Largest entry of a dimension vector when enumerating indecomposables.
    #[arg(long, global = true, default_value_t = 2)]
    dim_bound: usize,
    /// Time budget for torsion class enumeration, in seconds.
    #[arg(long, global = true, default_value_t = 600)]
    budget: u64,
    /// Largest number of torsion classes to enumerate.
    #[arg(long, global = true, default_value_t = 2000)]
    cap: usize,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the Hasse diagram of the main lattice to this file.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size and distributivity of a Catalan lattice.
    Catalan { kind: Kind, n: usize },
    /// Same as `catalan dyck N`.
    Dyck { n: usize },
    /// Same as `catalan tamari N`.
    Tamari { n: usize },
    /// Same as `catalan typeA N`.
    #[command(name = "typeA")]
    TypeA { n: usize },
    /// Lattice of omega-torsion pairs of the incidence algebra of a poset.
    Omega {
        /// `int:k` or a JSON poset file.
        poset: String,
        /// Use the opposite poset.
        #[arg(long)]
        op: bool,
    },
    /// Run one of the built-in verifications.
    Verify {
        target: Target,
        #[arg(long)]
        n: Option<usize>,
        /// Algebra for `prop-main` and `lemma-omega`.
        #[arg(long, default_value = "example")]
        algebra: String,
    },
    /// Enumerate all torsion pairs of an algebra.
    Tors {
        /// `example`, `int:k`, `An:k` or a JSON algebra file.
        algebra: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Dyck,
    Tamari,
    #[value(name = "typeA")]
    TypeA,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Thm1,
    Thm2,
    PropMain,
    LemmaOmega,
    Example,
}

struct Report {
    lines: Vec<String>,
    json: Value,
    pass: bool,
    dot: Option<String>,
}

/// Errors that should exit with the usage code.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

fn check_range(what: &str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return usage(format!("{what} needs n in {lo}..={hi}, got {n}"));
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if let (Some(path), Some(dot)) = (&cli.dot, &report.dot) {
                if let Err(e) = fs::write(path, dot) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if cli.json {
                let mut j = report.json;
                j["pass"] = json!(report.pass);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&j).expect("serializable")
                );
            } else {
                for l in &report.lines {
                    println!("{l}");
                }
                println!("{}", if report.pass { "PASS" } else { "FAIL" });
            }
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<Usage>() {
        return 2;
    }
    match e.downcast_ref::<omegalat::Error>() {
        Some(omegalat::Error::BudgetExceeded { .. }) => 3,
        Some(
            omegalat::Error::InvalidArgument(_)
            | omegalat::Error::Parse(_)
            | omegalat::Error::NotPrime(_)
            | omegalat::Error::Json(_)
            | omegalat::Error::InvalidAlgebra(_)
            | omegalat::Error::NotAPartialOrder(_),
        ) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Catalan { kind, n } => catalan(*kind, *n),
        Command::Dyck { n } => catalan(Kind::Dyck, *n),
        Command::Tamari { n } => catalan(Kind::Tamari, *n),
        Command::TypeA { n } => catalan(Kind::TypeA, *n),
        Command::Omega { poset, op } => omega(cli, poset, *op),
        Command::Verify { target, n, algebra } => match target {
            Target::Thm1 => thm1(n.unwrap_or(3)),
            Target::Thm2 => thm2(n.unwrap_or(3)),
            Target::PropMain => prop_main(cli, algebra, n.unwrap_or(2)),
            Target::LemmaOmega => lemma_omega(cli, algebra),
            Target::Example => example(cli),
        },
        Command::Tors { algebra } => tors(cli, algebra),
    }
}

fn lattice_flags(l: &FinLattice) -> (bool, bool) {
    (l.is_distributive(), l.is_semidistributive())
}

fn catalan(kind: Kind, n: usize) -> Result<Report> {
    let (name, lattice, extra) = match kind {
        Kind::Dyck => {
            check_range("dyck", n, 1, 8)?;
            ("dyck", dyck_lattice(n)?, None)
        }
        Kind::Tamari => {
            check_range("tamari", n, 1, 7)?;
            ("tamari", tamari_lattice(n)?, None)
        }
        Kind::TypeA => {
            check_range("typeA", n, 1, 6)?;
            let l = typea_torsion_lattice(n)?;
            let iso = lattice_isomorphic(&l, &tamari_lattice(n + 1)?).is_some();
            ("typeA", l, Some(iso))
        }
    };
    let (dist, sd) = lattice_flags(&lattice);
    let mut lines = vec![
        format!("{name} {n}: size {}", lattice.len()),
        format!("distributive: {}", yes(dist)),
        format!("semidistributive: {}", yes(sd)),
    ];
    let mut j = json!({
        "kind": name,
        "n": n,
        "size": lattice.len(),
        "distributive": dist,
        "semidistributive": sd,
        "lattice": lattice.to_json(),
    });
    if let Some(iso) = extra {
        lines.push(format!("≅ tamari {}: {}", n + 1, yes(iso)));
        j["isomorphic_to_tamari"] = json!(iso);
    }
    Ok(Report {
        lines,
        json: j,
        pass: extra.unwrap_or(true),
        dot: Some(lattice.to_dot(name, |_| None)),
    })
}

fn omega(cli: &Cli, spec: &str, op: bool) -> Result<Report> {
    let mut poset = specs::parse_poset(spec).map_err(|e| Usage(format!("{e:#}")))?;
    if op {
        poset = poset.opposite();
    }
    if poset.len() > 21 {
        return usage(format!(
            "poset has {} elements; at most 21 are supported",
            poset.len()
        ));
    }
    let field = Fp::new(cli.field.unwrap_or(2))?;
    let alg = incidence_algebra(&poset, field);
    let l = omega_lattice_via_simples(&alg)?;
    let ideals = poset.opposite().ideal_lattice();
    let iso = lattice_isomorphic(&l, &ideals).is_some();
    let dist = l.is_distributive();
    let lines = vec![
        format!(
            "omega lattice of the incidence algebra of {spec}{}: {} elements",
            if op { " (opposite)" } else { "" },
            l.len()
        ),
        format!("distributive: {}", yes(dist)),
        format!(
            "isomorphic to the ideal lattice of the opposite poset: {}",
            yes(iso)
        ),
    ];
    Ok(Report {
        lines,
        json: json!({
            "poset": spec,
            "opposite": op,
            "size": l.len(),
            "distributive": dist,
            "isomorphic_to_ideals_of_opposite": iso,
            "lattice": l.to_json(),
        }),
        pass: dist && iso,
        dot: Some(l.to_dot("omega", |_| None)),
    })
}

fn thm1(n: usize) -> Result<Report> {
    check_range("thm1", n, 2, 7)?;
    let mut lines = Vec::new();
    let (pass, mut j, dot) = match verify_theorem_1(n) {
        Ok(w) => {
            let paths = DyckPath::all(n);
            let mapping: Vec<Value> = paths
                .iter()
                .zip(&w.map)
                .map(|(p, &m)| json!({"dyck": p.to_string(), "omega": w.omega.label(m)}))
                .collect();
            lines.push(format!(
                "Dyck_{n} ({} elements) ≅ omega lattice ({} elements)",
                w.dyck.len(),
                w.omega.len()
            ));
            (
                true,
                json!({"n": n, "mapping": mapping}),
                Some(w.omega.to_dot("omega", |_| None)),
            )
        }
        Err(omegalat::Error::VerificationFailed(msg)) => {
            lines.push(format!("no isomorphism: {msg}"));
            (false, json!({"n": n, "counterexample": msg}), None)
        }
        Err(e) => return Err(e.into()),
    };
    let mut pass = pass;
    if n <= 3 {
        // the same lattice from the full module category
        let alg = incidence_algebra(&interval_poset(n - 1)?.opposite(), Fp::new(2)?);
        let cat = ModCategory::new(alg, &EnumerateOptions::default())?;
        let tl = enumerate_torsion_pairs(&cat, &Budget::default())?;
        let w = tl.select(|p| cat.is_omega_n(p, 1, OmegaRoute::Ext))?;
        let sub = tl.restrict(&w)?;
        let iso = lattice_isomorphic(&sub, &dyck_lattice(n)?).is_some();
        lines.push(format!(
            "module route: {} omega pairs, ≅ Dyck_{n}: {}",
            w.len(),
            yes(iso)
        ));
        j["module_route"] = json!({"omega_pairs": w.len(), "isomorphic": iso});
        pass &= iso;
    }
    Ok(Report {
        lines,
        json: j,
        pass,
        dot,
    })
}

fn thm2(n: usize) -> Result<Report> {
    check_range("thm2", n, 2, 6)?;
    let tam = tamari_lattice(n)?;
    let con = congruence_lattice(&tam).lattice;
    let dyck = dyck_lattice(n)?;
    let direct = lattice_isomorphic(&con, &dyck).is_some();
    let dual = lattice_isomorphic(&con, &dyck.dual()).is_some();
    let fp = forcing_poset(&tam);
    let forcing = poset_isomorphic(&fp.poset, &interval_poset(n - 1)?.opposite()).is_some();
    let lines = vec![
        format!(
            "Con(Tam_{n}): {} elements, Dyck_{n}: {} elements",
            con.len(),
            dyck.len()
        ),
        format!("Con(Tam_{n}) ≅ Dyck_{n}: {}", yes(direct)),
        format!("Con(Tam_{n}) ≅ dual of Dyck_{n}: {}", yes(dual)),
        format!(
            "forcing order of Tam_{n} ≅ opposite of Int({}): {}",
            n - 1,
            yes(forcing)
        ),
    ];
    Ok(Report {
        lines,
        json: json!({
            "n": n,
            "congruences": con.len(),
            "dyck": dyck.len(),
            "isomorphic": direct,
            "isomorphic_to_dual": dual,
            "forcing_matches": forcing,
            "congruence_lattice": con.to_json(),
        }),
        pass: direct && forcing,
        dot: Some(con.to_dot("congruences", |_| None)),
    })
}

fn category(cli: &Cli, spec: &str) -> Result<ModCategory> {
    let alg = specs::parse_algebra(spec, cli.field).map_err(|e| Usage(format!("{e:#}")))?;
    let opts = EnumerateOptions {
        dim_bound: cli.dim_bound,
        ..EnumerateOptions::default()
    };
    Ok(ModCategory::new(alg, &opts)?)
}

fn budget(cli: &Cli) -> Budget {
    Budget {
        max_classes: cli.cap,
        max_time: Some(Duration::from_secs(cli.budget)),
    }
}

fn prop_main(cli: &Cli, spec: &str, n: usize) -> Result<Report> {
    check_range("prop-main", n, 1, 4)?;
    let cat = category(cli, spec)?;
    let tl = enumerate_torsion_pairs(&cat, &budget(cli))?;
    let mut lines = vec![format!("{spec}: {} torsion pairs", tl.len())];
    let mut pass = true;
    let mut counts = Vec::new();
    for k in 1..=n {
        let mut agree = true;
        let mut members = Vec::new();
        for (i, p) in tl.pairs.iter().enumerate() {
            match cat.is_omega_n_checked(p, k) {
                Ok(true) => members.push(i),
                Ok(false) => {}
                Err(omegalat::Error::VerificationFailed(msg)) => {
                    lines.push(msg);
                    agree = false;
                }
                Err(e) => return Err(e.into()),
            }
        }
        let sub = tl.is_sublattice(&members);
        lines.push(format!(
            "omega_{k}: {} pairs, routes agree: {}, sublattice: {}",
            members.len(),
            yes(agree),
            yes(sub)
        ));
        counts.push(
            json!({"n": k, "pairs": members.len(), "routes_agree": agree, "sublattice": sub}),
        );
        pass &= agree && sub;
    }
    Ok(Report {
        lines,
        json: json!({"algebra": spec, "torsion_pairs": tl.len(), "omega": counts}),
        pass,
        dot: None,
    })
}

fn lemma_omega(cli: &Cli, spec: &str) -> Result<Report> {
    let cat = category(cli, spec)?;
    let tl = enumerate_torsion_pairs(&cat, &budget(cli))?;
    let mut bad = Vec::new();
    let mut omega = Vec::new();
    for (i, p) in tl.pairs.iter().enumerate() {
        let w = cat.is_omega_n(p, 1, OmegaRoute::Ext)?;
        let hc = cat.is_hereditary_checked(p)? && cat.is_cohereditary_checked(p)?;
        let serre = cat.is_serre(&p.tors)? && cat.is_serre(&p.free)?;
        if w {
            omega.push(i);
        }
        if w != hc || hc != serre {
            bad.push(cat.format(&p.tors));
        }
    }
    let sub = tl.restrict(&omega)?;
    let dist = sub.is_distributive();
    let via = omega_lattice_via_simples(cat.algebra())?;
    let same = lattice_isomorphic(&sub, &via).is_some();
    let mut lines = vec![
        format!(
            "{spec}: {} torsion pairs, {} omega pairs",
            tl.len(),
            omega.len()
        ),
        format!(
            "omega ⇔ hereditary and cohereditary ⇔ Serre: {}",
            yes(bad.is_empty())
        ),
        format!("omega lattice distributive: {}", yes(dist)),
        format!(
            "agrees with successor-closed sets of simples: {}",
            yes(same)
        ),
    ];
    for b in &bad {
        lines.push(format!("mismatch at {b}"));
    }
    Ok(Report {
        lines,
        json: json!({
            "algebra": spec,
            "torsion_pairs": tl.len(),
            "omega_pairs": omega.len(),
            "mismatches": bad,
            "distributive": dist,
            "matches_simples_route": same,
        }),
        pass: bad.is_empty() && dist && same,
        dot: Some(sub.to_dot("omega", |_| None)),
    })
}

fn sorted_classes(cat: &ModCategory, tl: &TorsionLattice, idx: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = idx.iter().map(|&i| cat.format(&tl.pairs[i].tors)).collect();
    v.sort();
    v
}

fn expected_classes(cat: &ModCategory, classes: &[&[&str]]) -> Result<Vec<String>> {
    let mut v = Vec::new();
    for c in classes {
        v.push(cat.format(&cat.subcat(c)?));
    }
    v.sort();
    Ok(v)
}

fn example(cli: &Cli) -> Result<Report> {
    let cat = category(cli, "example")?;
    let tl = enumerate_torsion_pairs(&cat, &budget(cli))?;
    let all: &[&str] = &["S1", "S2", "P1", "P2", "I1"];
    if cat.len() != 5 {
        bail!("expected 5 indecomposables, found {}", cat.len());
    }
    let her = tl.select(|p| cat.is_hereditary_checked(p))?;
    let coh = tl.select(|p| cat.is_cohereditary_checked(p))?;
    let w1 = tl.select(|p| cat.is_omega_n_checked(p, 1))?;
    let w2 = tl.select(|p| cat.is_omega_n_checked(p, 2))?;
    let gd = global_dimension(cat.algebra(), 6);
    let checks = [
        ("indecomposables", cat.len() == 5),
        ("torsion pairs", tl.len() == 6),
        (
            "hereditary",
            sorted_classes(&cat, &tl, &her)
                == expected_classes(&cat, &[&[], &["S1"], &["S2"], all])?,
        ),
        (
            "cohereditary",
            sorted_classes(&cat, &tl, &coh)
                == expected_classes(&cat, &[&[], &["S1", "P1"], &["S2", "I1", "P2"], all])?,
        ),
        (
            "omega",
            sorted_classes(&cat, &tl, &w1) == expected_classes(&cat, &[&[], all])?,
        ),
        (
            "omega_2",
            sorted_classes(&cat, &tl, &w2)
                == expected_classes(&cat, &[&[], &["S2"], &["S1", "P1"], all])?,
        ),
        ("global dimension", gd == GlobalDimension::Exact(2)),
    ];
    let mut lines = vec![
        format!("indecomposables: {}", cat.len()),
        format!("torsion pairs: {}", tl.len()),
        format!("hereditary: {}", sorted_classes(&cat, &tl, &her).join(" ")),
        format!(
            "cohereditary: {}",
            sorted_classes(&cat, &tl, &coh).join(" ")
        ),
        format!("omega: {}", sorted_classes(&cat, &tl, &w1).join(" ")),
        format!("omega_2: {}", sorted_classes(&cat, &tl, &w2).join(" ")),
        format!("global dimension: {gd:?}"),
    ];
    for (name, ok) in &checks {
        if !ok {
            lines.push(format!("mismatch: {name}"));
        }
    }
    let tags = tl.tags(&cat)?;
    Ok(Report {
        lines,
        json: json!({
            "checks": checks.iter().map(|(n, ok)| json!({"check": n, "pass": ok})).collect::<Vec<_>>(),
            "torsion_lattice": serde_json::to_value(tl.to_json(&cat, Some(&tags)))?,
        }),
        pass: checks.iter().all(|c| c.1),
        dot: Some(tl.to_dot("example", Some(&tags))),
    })
}

fn tors(cli: &Cli, spec: &str) -> Result<Report> {
    let cat = category(cli, spec)?;
    let tl = enumerate_torsion_pairs(&cat, &budget(cli))?;
    let tags = tl.tags(&cat)?;
    let count = |t: &str| tags.iter().filter(|v| v.iter().any(|x| x == t)).count();
    let mut lines = vec![format!("indecomposables: {}", cat.len())];
    for i in 0..cat.len() {
        lines.push(format!("  {} {:?}", cat.name(i), cat.module(i).dims()));
    }
    lines.push(format!("torsion pairs: {}", tl.len()));
    for t in ["omega1", "omega2", "hereditary", "cohereditary", "split"] {
        lines.push(format!("{t}: {}", count(t)));
    }
    if tl.len() <= 32 {
        for (p, t) in tl.pairs.iter().zip(&tags) {
            lines.push(format!("  {} [{}]", cat.format(&p.tors), t.join(" ")));
        }
    }
    let j = json!({
        "algebra": spec,
        "field": cat.algebra().field().p(),
        "indecomposables": cat.len(),
        "torsion_pairs": tl.len(),
        "omega1": count("omega1"),
        "omega2": count("omega2"),
        "hereditary": count("hereditary"),
        "cohereditary": count("cohereditary"),
        "split": count("split"),
        "torsion_lattice": serde_json::to_value(tl.to_json(&cat, Some(&tags)))?,
    });
    Ok(Report {
        lines,
        json: j,
        pass: true,
        dot: Some(tl.to_dot("tors", Some(&tags))),
    })
}

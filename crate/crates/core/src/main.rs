use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use jammedfan::cells::{self, check_duality, derive_equations, random_instantiation};
use jammedfan::delaunay::{self, analyze, parse_gram, parse_gram_list, survey};
use jammedfan::enumerate::{classify_jammed, generate, solve_profiles};
use jammedfan::fan::Profile;
use jammedfan::geom::{self, is_jammed_geometric, verify_complete, GeometricFan};
use jammedfan::lattice::{canonical_config, eliminate_candidate, halflattice_candidates, negated_hull, span_lattice, index_verdict};
use jammedfan::report::full_report;
use jammedfan::CellType;

#[derive(Parser)]
#[command(name = "jammedfan", version, about = "Exact verification of jammed fans, their cells and lattice tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the profile equations.
    Profiles {
        #[arg(long)]
        symmetric: bool,
    },
    /// Census of all complexes with a profile, given as a3,a4,b,c.
    Enumerate {
        #[arg(long)]
        profile: Profile,
    },
    /// List every jammed combinatorial type.
    Classify,
    /// Geometric witness fan for a type, with its checks.
    Witness {
        #[arg(long = "type")]
        type_tag: CellType,
    },
    /// Canonical cell of a type.
    Cell {
        #[arg(long = "type")]
        type_tag: CellType,
    },
    /// Duality check on the canonical cell and on random instantiations.
    Duality {
        #[arg(long = "type")]
        type_tag: CellType,
        #[arg(long, default_value_t = 0)]
        random: u64,
    },
    /// Index bound and verdict for a type.
    Index {
        #[arg(long = "type")]
        type_tag: CellType,
    },
    /// Elimination witnesses for the seven index-2 superlattices.
    EliminateHalflattices {
        #[arg(long = "type", default_value = "tetrahedron")]
        type_tag: CellType,
    },
    /// Delaunay harness on one Gram matrix.
    Delaunay {
        #[arg(long)]
        gram: PathBuf,
    },
    /// Harness over a list of Gram matrices; the bundled family when no file is given.
    Survey {
        #[arg(long)]
        grams: Option<PathBuf>,
    },
    /// Check every claim and write report.json and report.md.
    Report {
        #[arg(long)]
        out: PathBuf,
    },
    /// Completeness and jammedness of a fan read from JSON.
    CheckFan {
        #[arg(long)]
        file: PathBuf,
    },
}

/// Output of a command plus whether its checks passed.
struct Outcome {
    json: serde_json::Value,
    passed: bool,
}

fn outcome(value: impl Serialize, passed: bool) -> Result<Outcome> {
    Ok(Outcome { json: serde_json::to_value(value)?, passed })
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("JAMMEDFAN_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).with_context(|| format!("JAMMEDFAN_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn witness_checks(fan: &GeometricFan) -> Result<Outcome> {
    let completeness = verify_complete(fan)?;
    let jammed = if completeness.complete { Some(is_jammed_geometric(fan)?) } else { None };
    let passed = completeness.complete && jammed.as_ref().is_some_and(|j| j.jammed);
    outcome(json!({"fan": fan, "completeness": completeness, "jammed": jammed}), passed)
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Profiles { symmetric } => {
            let set = solve_profiles(symmetric);
            let tuples: Vec<[u32; 4]> = set.profiles.iter().map(|p| [p.a3, p.a4, p.b, p.c]).collect();
            outcome(json!({"symmetric": symmetric, "profiles": tuples}), true)
        }
        Command::Enumerate { profile } => {
            let census = generate(profile)?;
            outcome(&census.entries, true)
        }
        Command::Classify => {
            let cls = classify_jammed()?;
            let passed = cls.types.len() == 5 && cls.asymmetric_count() == 3 && cls.symmetric_count() == 2;
            outcome(&cls.types, passed)
        }
        Command::Witness { type_tag } => witness_checks(&geom::witness(type_tag)),
        Command::CheckFan { file } => witness_checks(&GeometricFan::from_json(&read(&file)?)?),
        Command::Cell { type_tag } => {
            let report = cells::cell_report(&geom::witness(type_tag).complex)?;
            let passed = report.type_tag == type_tag && report.duality.holds;
            outcome(&report, passed)
        }
        Command::Duality { type_tag, random } => {
            let complex = geom::witness(type_tag).complex;
            let system = derive_equations(&complex)?;
            let canonical = cells::solve_cell(&system)?;
            let canonical_report = check_duality(&complex, &canonical)?;
            let mut passed = canonical_report.holds;
            let mut randoms = Vec::new();
            for seed in 0..random {
                let config = random_instantiation(&system, seed)?;
                let r = check_duality(&complex, &config)?;
                passed &= r.holds;
                randoms.push(json!({"seed": seed, "points": config.points, "holds": r.holds}));
            }
            outcome(json!({"type_tag": type_tag, "canonical": canonical_report, "random": randoms}), passed)
        }
        Command::Index { type_tag } => {
            let verdict = index_verdict()?;
            let Some(entry) = verdict.types.into_iter().find(|t| t.type_tag == type_tag) else {
                bail!("no index entry for {type_tag}");
            };
            let text = if entry.eliminations.is_empty() {
                format!("index {} by bound", entry.index)
            } else {
                format!("index {} after elimination", entry.index)
            };
            let passed = entry.index == 1;
            outcome(json!({"type_tag": type_tag, "bound": jammedfan::geom::rational::format_rat(&entry.bound), "verdict": text, "detail": entry}), passed)
        }
        Command::EliminateHalflattices { type_tag } => {
            let config = canonical_config(type_tag)?;
            let base = span_lattice(&config.points)?;
            let t = negated_hull(&config)?;
            let mut passed = true;
            let mut rows = Vec::new();
            for candidate in halflattice_candidates(&base) {
                match eliminate_candidate(&candidate, &config) {
                    Ok(w) => {
                        let verified = w.verify(&candidate, &t);
                        passed &= verified;
                        rows.push(json!({"shift": candidate.coset_shift, "witness": w, "verified": verified}));
                    }
                    Err(e) => {
                        passed = false;
                        rows.push(json!({"shift": candidate.coset_shift, "error": e.to_string()}));
                    }
                }
            }
            outcome(json!({"type_tag": type_tag, "candidates": rows}), passed)
        }
        Command::Delaunay { gram } => {
            let report = analyze(&parse_gram(&read(&gram)?)?)?;
            let passed = report.passed;
            outcome(&report, passed)
        }
        Command::Survey { grams } => {
            let list = match grams {
                Some(path) => parse_gram_list(&read(&path)?)?,
                None => delaunay::curated_grams(),
            };
            let report = survey(&list);
            let passed = report.passed;
            outcome(&report, passed)
        }
        Command::Report { out } => {
            let report = full_report();
            fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;
            let mut text = serde_json::to_string_pretty(&report)?;
            text.push('\n');
            fs::write(out.join("report.json"), text)?;
            fs::write(out.join("report.md"), report.to_markdown())?;
            let summary: serde_json::Map<_, _> = report.claims.iter().map(|(k, c)| (k.clone(), json!(c.passed))).collect();
            outcome(json!({"passed": report.passed, "claims": summary, "out": out}), report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(o) => {
            let written = serde_json::to_string_pretty(&o.json)
                .map_err(anyhow::Error::from)
                .and_then(|s| Ok(writeln!(std::io::stdout(), "{s}")?));
            if let Err(e) = written {
                // A closed pipe downstream is not our failure.
                if e.downcast_ref::<std::io::Error>().map(|io| io.kind()) != Some(std::io::ErrorKind::BrokenPipe) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

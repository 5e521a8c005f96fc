use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use glnq_core::chartable::{Budget, Family};
use glnq_core::distinction::{survey_from_reports, distinction_report, verify_main_theorem};
use glnq_core::group::geometric::double_coset_geometric_check;
use glnq_core::group::{CompositionSpec, GroupSpec, InvolutionSpec};
use glnq_core::psh::{crosscheck_against_group, psh_selfcheck, selfcheck::default_labels};
use serde::Serialize;
use serde_json::json;

const FORMAT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "glnq", version, about = "Exact character theory of GL_n(F_q) and distinction checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Directory for cached character tables.
    #[arg(long, global = true, env = "GLNQ_CACHE_DIR")]
    cache: Option<PathBuf>,
    /// Worker threads (defaults to all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Largest group order a table may be built for.
    #[arg(long, global = true)]
    max_order: Option<u128>,
    /// Largest unipotent group enumerated.
    #[arg(long, global = true)]
    max_unipotent: Option<u128>,
    /// Admit GL_4(F_3).
    #[arg(long, global = true)]
    stretch: bool,
}

#[derive(Args, Clone, Serialize)]
struct GroupArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load) a character table and print a summary.
    Table(GroupArgs),
    /// Check that distinguished irreducibles are self-dual, for every p or one p.
    VerifyMain {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Distinction report for a single involution diag(I_p, -I_{n-p}).
    Distinction {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: usize,
    },
    /// Compare the PSH model with induction and restriction of characters.
    Crosscheck(GroupArgs),
    /// Exhaustive check of the PSH axioms on the free model.
    PshSelfcheck {
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Brute-force search for monomial witnesses in every double coset H g P.
    GeomCheck {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: usize,
        /// Block sizes of the parabolic, e.g. "1,1".
        #[arg(long)]
        comp: String,
    },
}

#[derive(Serialize)]
struct ConfigRecord {
    command: &'static str,
    n: Option<usize>,
    q: Option<u32>,
    p: Option<usize>,
    max_rank: usize,
    max_group_order: String,
    max_unipotent: String,
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn budget(global: &Global) -> anyhow::Result<Budget> {
    let mut b = if global.stretch { Budget::stretch() } else { Budget::default() };
    if let Some(m) = global.max_order {
        if m == 0 {
            bail!("--max-order must be positive");
        }
        b.max_group_order = m;
    }
    if let Some(m) = global.max_unipotent {
        if m == 0 {
            bail!("--max-unipotent must be positive");
        }
        b.max_unipotent = m;
    }
    Ok(b)
}

fn family(global: &Global, q: u32, budget: Budget) -> anyhow::Result<Family> {
    let fam = Family::new(q, budget)?;
    Ok(match &global.cache {
        Some(dir) => fam.with_cache(dir),
        None => fam,
    })
}

fn emit(global: &Global, config: &ConfigRecord, result: serde_json::Value) -> anyhow::Result<()> {
    let Some(path) = &global.json else { return Ok(()) };
    let doc = json!({ "format_version": FORMAT_VERSION, "config": config, "result": result });
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    if path.as_os_str() == "-" {
        print!("{text}");
    } else {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let global = cli.global;
    if let Some(t) = global.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let budget = budget(&global)?;
    let record = |command, n, q, p| ConfigRecord {
        command,
        n,
        q,
        p,
        max_rank: budget.max_rank,
        max_group_order: budget.max_group_order.to_string(),
        max_unipotent: budget.max_unipotent.to_string(),
    };
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Table(g) => {
            let fam = family(&global, g.q, budget.clone())?;
            let table = fam.table(g.n)?;
            let degrees = table.degrees();
            let sum_sq: u128 = degrees.iter().map(|&d| (d as u128).pow(2)).sum();
            println!("GL_{}(F_{}): |G| = {}", g.n, g.q, table.group().order());
            println!("classes: {}", table.len());
            println!("degrees: {degrees:?}");
            println!("sum of squared degrees: {sum_sq}");
            println!("exponent: {}, splitting prime: {}", table.exponent(), table.splitting_prime());
            if let Some(status) = fam.cache_status(g.n) {
                println!("cache: {}", serde_json::to_value(status)?.as_str().unwrap_or("?"));
            }
            let result = json!({
                "n": g.n,
                "q": g.q,
                "group_order": table.group().order().to_string(),
                "num_classes": table.len(),
                "degrees": degrees,
                "sum_of_squares": sum_sq.to_string(),
                "exponent": table.exponent(),
                "splitting_prime": table.splitting_prime(),
            });
            emit(&global, &record("table", Some(g.n), Some(g.q), None), result)?;
            Outcome::Pass
        }
        Command::VerifyMain { group: g, p } => {
            let fam = family(&global, g.q, budget.clone())?;
            let reports = match p {
                Some(p) => {
                    InvolutionSpec::new(g.n, p)?;
                    vec![distinction_report(&fam, g.n, p)?]
                }
                None => verify_main_theorem(&fam, g.n)?,
            };
            let survey = survey_from_reports(g.q, g.n, &reports);
            let mut ok = true;
            for r in &reports {
                let distinguished = r.rows.iter().filter(|x| x.dim_invariants > 0).count();
                println!(
                    "p = {}: {} of {} irreducibles distinguished, max dimension {}, theorem {}",
                    r.p,
                    distinguished,
                    r.rows.len(),
                    r.max_dim_invariants,
                    if r.theorem_holds { "holds" } else { "FAILS" }
                );
                for &i in &r.counterexamples {
                    println!("  counterexample: irreducible {i} of degree {} is distinguished but not self-dual", r.rows[i].degree);
                }
                if !r.permutation_identity_holds() {
                    println!("  permutation character identity fails: {} != {}", r.permutation_degree, r.index_of_h);
                }
                ok &= r.theorem_holds && r.permutation_identity_holds();
            }
            println!("cuspidal case: {} ({} cuspidals)", if survey.holds { "holds" } else { "FAILS" }, survey.num_cuspidals);
            ok &= survey.holds;
            println!("elapsed: {:.2?}", start.elapsed());
            let result = json!({ "reports": reports, "cuspidal_survey": survey, "theorem_holds": ok });
            emit(&global, &record("verify-main", Some(g.n), Some(g.q), p), result)?;
            if ok { Outcome::Pass } else { Outcome::Fail }
        }
        Command::Distinction { group: g, p } => {
            InvolutionSpec::new(g.n, p)?;
            let fam = family(&global, g.q, budget.clone())?;
            let report = distinction_report(&fam, g.n, p)?;
            println!("GL_{}(F_{}), H = GL_{} x GL_{}, |H| = {}", g.n, g.q, p, g.n - p, report.h_order);
            println!("{:>5} {:>7} {:>8} {:>5} {:>9} {:>9}", "index", "degree", "cuspidal", "dim", "self-dual", "whittaker");
            for r in &report.rows {
                println!(
                    "{:>5} {:>7} {:>8} {:>5} {:>9} {:>9}",
                    r.index, r.degree, r.cuspidal, r.dim_invariants, r.self_dual, r.whittaker
                );
            }
            println!("theorem {}", if report.theorem_holds { "holds" } else { "FAILS" });
            let ok = report.theorem_holds && report.permutation_identity_holds();
            emit(&global, &record("distinction", Some(g.n), Some(g.q), Some(p)), serde_json::to_value(&report)?)?;
            if ok { Outcome::Pass } else { Outcome::Fail }
        }
        Command::Crosscheck(g) => {
            let fam = family(&global, g.q, budget.clone())?;
            let report = crosscheck_against_group(&fam, g.n)?;
            println!("cuspidal labels: {}", report.labels.len());
            for c in &report.counts {
                println!("degree {}: {} basis elements, {} irreducibles", c.m, c.basis_elements, c.irreducibles);
            }
            println!(
                "checked {} products, {} restrictions, {} Whittaker multiplicities, {} duals",
                report.products_checked, report.restrictions_checked, report.whittaker_checked, report.duals_checked
            );
            if let Some(first) = report.failures.first() {
                println!("first mismatch: {first}");
            }
            println!("crosscheck {}", if report.passed { "passed" } else { "FAILED" });
            emit(&global, &record("crosscheck", Some(g.n), Some(g.q), None), serde_json::to_value(&report)?)?;
            if report.passed { Outcome::Pass } else { Outcome::Fail }
        }
        Command::PshSelfcheck { max_degree } => {
            if max_degree > 10 {
                bail!("--max-degree above 10 is not supported");
            }
            let report = psh_selfcheck(&default_labels(), max_degree);
            println!("basis sizes by degree: {:?}", report.basis_sizes);
            println!(
                "checked {} LR symmetries, {} products, {} coproducts, {} Hopf pairs",
                report.lr_symmetry_checked, report.products_checked, report.coproducts_checked, report.hopf_pairs_checked
            );
            if let Some(first) = report.failures.first() {
                println!("first failure: {first}");
            }
            println!("selfcheck {}", if report.passed { "passed" } else { "FAILED" });
            emit(&global, &record("psh-selfcheck", None, None, None), serde_json::to_value(&report)?)?;
            if report.passed { Outcome::Pass } else { Outcome::Fail }
        }
        Command::GeomCheck { group: g, p, comp } => {
            let parts = comp
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .with_context(|| format!("bad composition {comp:?}"))?;
            let comp = CompositionSpec::new(parts)?;
            let spec = GroupSpec::new(g.n, g.q)?;
            let report = double_coset_geometric_check(&spec, &comp, &InvolutionSpec::new(g.n, p)?)?;
            let with_witness = report.cosets.iter().filter(|c| c.witness.is_some()).count();
            println!("{} double cosets, {} with a monomial witness", report.cosets.len(), with_witness);
            emit(&global, &record("geom-check", Some(g.n), Some(g.q), Some(p)), serde_json::to_value(&report)?)?;
            if report.counterexample { Outcome::Fail } else { Outcome::Pass }
        }
    };
    Ok(outcome)
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use tpgrass::assoctrees::check_f2n_equals_sp;
use tpgrass::clusterfans::{refine_gr36, refine_gr37, split_report, Projection};
use tpgrass::posparam::{Parameterization, PlueckerVector, RegionAssignment};
use tpgrass::tropfan::{build_fan, build_fan_with, Route};
use tpgrass::webdiagram::{build_web, k_subsets, VarMode};
use tpgrass_cli::checks::{check_refinement, check_tables, check_trop_list, oracle_gr24};
use tpgrass_cli::golden::{fixtures_dir, load_table, load_trop_list};
use tpgrass_cli::output::{f_vector_line, fan_json, fan_report, parse_rationals, rays_tsv, read_fan, write_fan};

/// Exit status 0 on success, 1 on a verification mismatch, 2 on bad usage
/// or unreadable input.
#[derive(Parser)]
#[command(name = "tpgrass", version, about = "Totally positive tropical Grassmannian fans")]
struct Cli {
    /// Worker threads for the library (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Refinement,
    Minkowski,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProjectionArg {
    OrderPreserving,
    Cyclic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Draw the web diagram and list its regions.
    Web {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build F(k,n) and write it as JSON.
    Fan {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "refinement")]
        route: RouteArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the f-vector of a fan file.
    Fvector { fan: PathBuf },
    /// Print the rays of a fan file.
    Rays { fan: PathBuf },
    /// Print f-vector, census, rays and cones of a fan file.
    Report { fan: PathBuf },
    /// Plücker coordinates from region values (all regions, or inner only
    /// with outer regions set to 1).
    Param {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated positive rationals in region order.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Region values from Plücker coordinates.
    Invert {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated positive rationals, k-subsets in lexicographic order.
        #[arg(long, allow_hyphen_values = true)]
        pluecker: String,
    },
    /// Compare F(2,n) with the Stanley-Pitman cones.
    SpCheck {
        #[arg(long, default_value_t = 4)]
        min: usize,
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Refine F(3,6) or F(3,7) by the extra cluster variables.
    Refine {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "order-preserving")]
        projection: ProjectionArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// For each maximal cone of BEFORE, the cones of AFTER inside it.
    SplitReport { before: PathBuf, after: PathBuf },
    /// Compare F(3,6) or F(3,7) with the reference tables.
    CheckTables {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "refinement")]
        route: RouteArg,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Compare the Gr(2,5) tropical maps with the reference list.
    CheckTrop {
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Gr(2,4) initial-form test on the parameterized grid.
    Oracle {
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
}

fn route(r: RouteArg) -> Route {
    match r {
        RouteArg::Refinement => Route::Refinement,
        RouteArg::Minkowski => Route::Minkowski,
    }
}

fn print_report(r: &impl std::fmt::Display, ok: bool) -> Result<bool> {
    println!("{r}");
    Ok(ok)
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Web { k, n, json } => {
            let w = build_web(k, n)?;
            if json {
                println!("{}", w.to_json());
            } else {
                print!("{}", w.render());
            }
        }
        Cmd::Fan { k, n, route: r, out } => {
            let f = build_fan_with(k, n, route(r))?;
            match out {
                Some(p) => {
                    write_fan(&f, &p)?;
                    println!("f_vector\t{}", f_vector_line(&f)?);
                }
                None => print!("{}", fan_json(&f)?),
            }
        }
        Cmd::Fvector { fan } => println!("{}", f_vector_line(&read_fan(&fan)?)?),
        Cmd::Rays { fan } => print!("{}", rays_tsv(&read_fan(&fan)?)),
        Cmd::Report { fan } => print!("{}", fan_report(&read_fan(&fan)?)?),
        Cmd::Param { k, n, x } => {
            let p = Parameterization::new(k, n)?;
            let values = parse_rationals(&x)?;
            let (all, inner) = (p.web().region_count(), p.web().inner_count());
            let d = if values.len() == all {
                p.phi1(&RegionAssignment::new(VarMode::AllRegions, values)?)?
            } else if values.len() == inner {
                p.phi2(&RegionAssignment::new(VarMode::InnerOnly, values)?)?
            } else {
                bail!("expected {all} values (all regions) or {inner} (inner regions), got {}", values.len());
            };
            for (s, v) in d.entries() {
                println!("{}\t{v}", s.iter().map(ToString::to_string).collect::<String>());
            }
        }
        Cmd::Invert { k, n, pluecker } => {
            let p = Parameterization::new(k, n)?;
            let values = parse_rationals(&pluecker)?;
            let subsets = k_subsets(n, k);
            if values.len() != subsets.len() {
                bail!("expected {} Plücker coordinates, got {}", subsets.len(), values.len());
            }
            let d = PlueckerVector::new(k, n, subsets.into_iter().zip(values).collect())?;
            let x = p.psi(&d)?;
            for (r, v) in p.web().regions().iter().zip(&x.values) {
                let kind = if r.inner { "inner" } else { "outer" };
                println!("({},{})\t{kind}\t{v}", r.i, r.j);
            }
        }
        Cmd::SpCheck { min, max } => {
            if min < 4 || max < min {
                bail!("need 4 <= min <= max");
            }
            let mut ok = true;
            println!("n\tfan_cones\ttree_cones\tequal");
            for n in min..=max {
                let c = check_f2n_equals_sp(n)?;
                ok &= c.equal;
                println!("{}\t{}\t{}\t{}", c.n, c.fan_cones, c.tree_cones, c.equal);
            }
            return Ok(ok);
        }
        Cmd::Refine { k, n, projection, out, fixtures } => {
            let after = match (k, n) {
                (3, 6) => refine_gr36()?,
                (3, 7) => refine_gr37(match projection {
                    ProjectionArg::OrderPreserving => Projection::OrderPreserving,
                    ProjectionArg::Cyclic => Projection::Cyclic,
                })?,
                _ => bail!("refinement is defined for (3,6) and (3,7)"),
            };
            if let Some(p) = out {
                write_fan(&after, &p)?;
            }
            let table = load_table(&fixtures.unwrap_or_else(fixtures_dir), k, n)?;
            let (r, _) = check_refinement(&build_fan(k, n)?, &after, &table)?;
            return print_report(&r, r.passed());
        }
        Cmd::SplitReport { before, after } => {
            let (b, a) = (read_fan(&before)?, read_fan(&after)?);
            let rep = split_report(&b, &a)?;
            println!("parent_rays\tchildren\tsliding_window\tparent");
            for e in &rep.entries {
                let parent: Vec<String> = e.parent.iter().map(ToString::to_string).collect();
                println!("{}\t{}\t{}\t{}", e.parent.len(), e.children.len(), e.sliding_window, parent.join(" "));
            }
            for (m, c) in rep.child_counts() {
                println!("# {m} rays -> {c:?} children");
            }
            println!("# rays unchanged: {}", rep.same_rays);
        }
        Cmd::CheckTables { k, n, route: r, fixtures } => {
            if (k, n) != (3, 6) && (k, n) != (3, 7) {
                bail!("tables exist for (3,6) and (3,7)");
            }
            let table = load_table(&fixtures.unwrap_or_else(fixtures_dir), k, n)?;
            let rep = check_tables(&build_fan_with(k, n, route(r))?, &table)?;
            return print_report(&rep, rep.passed());
        }
        Cmd::CheckTrop { fixtures } => {
            let list = load_trop_list(&fixtures.unwrap_or_else(fixtures_dir))?;
            let rep = check_trop_list(&list)?;
            return print_report(&rep, rep.passed());
        }
        Cmd::Oracle { bound } => {
            if bound < 1 {
                bail!("bound must be at least 1");
            }
            let rep = oracle_gr24(bound)?;
            return print_report(&rep, rep.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build()
        .context("cannot start thread pool");
    let result = pool.and_then(|p| p.install(|| run(cli.cmd)));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

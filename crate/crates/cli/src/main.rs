use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use enarena::expanded::{build_l_capped_for, build_lu, build_luv, build_lw, ExpandedArena};
use enarena::harness::{crosscheck, random_arena, GenParams, Pair};
use enarena::reductions::{reduce_energy_to_reach, reduce_reach_to_energy, ReductionOutput};
use enarena::solve::{solve, SolveOptions};
use enarena::violation::{bound_existence, minimize};
use enarena::{load_arena, Arena, ConstraintSpec, Kind, Measure, Objective, Player};

/// Energy games with lower, interval, weak and soft upper bounds.
#[derive(Parser)]
#[command(name = "enarena", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide the winner at the initial state; JSON report.
    Solve {
        arena: PathBuf,
        #[command(flatten)]
        query: Query,
        #[command(flatten)]
        run: RunFlags,
    },
    /// CSV trace of a winning run (one-player reach queries).
    Trace {
        arena: PathBuf,
        #[command(flatten)]
        query: Query,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Winning run as JSON, or as CSV with `--expand`.
    Witness {
        arena: PathBuf,
        #[command(flatten)]
        query: Query,
        #[command(flatten)]
        run: RunFlags,
        #[arg(long)]
        expand: bool,
    },
    /// Least violation bound, then least strict upper bound, for a soft bound.
    Minimize {
        arena: PathBuf,
        #[arg(long = "L")]
        lower: i64,
        #[arg(long = "S")]
        soft: i64,
        #[arg(long = "V-max")]
        v_max: i64,
        #[arg(long, default_value = "count")]
        measure: Measure,
        #[arg(long, default_value = "reach")]
        objective: Objective,
    },
    /// Whether some strict upper bound wins with at most `V` violations.
    ExistsBound {
        arena: PathBuf,
        #[arg(long = "L")]
        lower: i64,
        #[arg(long = "S")]
        soft: i64,
        #[arg(long = "V")]
        violations: i64,
        #[arg(long, default_value = "count")]
        measure: Measure,
        #[arg(long, default_value = "reach")]
        objective: Objective,
    },
    /// Translate between infinite-run and reachability games.
    Reduce {
        arena: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reachable fragment of the expanded arena for a query.
    Expand {
        arena: PathBuf,
        #[command(flatten)]
        query: Query,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Seeded random arena.
    Gen {
        #[arg(long, env = "ENARENA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        states: usize,
        /// Fraction of states owned by player 2.
        #[arg(long, default_value_t = 0.0)]
        p2: f64,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        wmin: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        wmax: i64,
        #[arg(long, default_value_t = 0.35)]
        density: f64,
        #[arg(long, default_value_t = 1)]
        targets: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run solver/oracle pairs over seeded instances.
    Crosscheck {
        /// One pair name; all pairs when omitted.
        #[arg(long)]
        pair: Option<Pair>,
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        /// Generator parameters (JSON) replacing the per-pair defaults.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        repro_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Query {
    #[arg(long)]
    kind: Kind,
    #[arg(long = "L", allow_hyphen_values = true)]
    lower: i64,
    #[arg(long = "U", allow_hyphen_values = true)]
    upper: Option<i64>,
    #[arg(long = "W", allow_hyphen_values = true)]
    weak: Option<i64>,
    #[arg(long = "S", allow_hyphen_values = true)]
    soft: Option<i64>,
    #[arg(long = "V")]
    violations: Option<i64>,
    #[arg(long)]
    measure: Option<Measure>,
    #[arg(long, default_value = "reach")]
    objective: Objective,
}

#[derive(Args)]
struct RunFlags {
    /// Force the explicit expansion.
    #[arg(long)]
    oracle: bool,
    /// Omit wall time.
    #[arg(long)]
    stable: bool,
}

impl RunFlags {
    fn opts(&self) -> SolveOptions {
        SolveOptions {
            oracle: self.oracle,
            stable: self.stable,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    EnergyToReach,
    ReachToEnergy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Query {
    fn spec(&self) -> Result<ConstraintSpec> {
        let given = [
            ("U", self.upper.is_some()),
            ("W", self.weak.is_some()),
            ("S", self.soft.is_some()),
            ("V", self.violations.is_some()),
            ("measure", self.measure.is_some()),
        ];
        let needed: &[&str] = match self.kind {
            Kind::L => &[],
            Kind::LU => &["U"],
            Kind::LW => &["W"],
            Kind::LV => &["U", "S", "V", "measure"],
        };
        for (flag, present) in given {
            match (needed.contains(&flag), present) {
                (true, false) => bail!("--{flag} is required for --kind {}", self.kind),
                (false, true) => bail!("--{flag} does not apply to --kind {}", self.kind),
                _ => {}
            }
        }
        let (l, o) = (self.lower, self.objective);
        Ok(match self.kind {
            Kind::L => ConstraintSpec::lower(l, o),
            Kind::LU => ConstraintSpec::interval(l, self.upper.unwrap(), o),
            Kind::LW => ConstraintSpec::weak(l, self.weak.unwrap(), o),
            Kind::LV => ConstraintSpec::soft(
                l,
                self.soft.unwrap(),
                self.upper.unwrap(),
                self.violations.unwrap(),
                self.measure.unwrap(),
                o,
            ),
        })
    }
}

fn load(path: &Path) -> Result<Arena> {
    load_arena(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

fn print_json(v: &impl Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn exit_for(p1: bool) -> ExitCode {
    if p1 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn arena_json(a: &Arena) -> Value {
    serde_json::from_str(&a.to_json()).expect("arena JSON is valid")
}

fn expanded_json(x: &ExpandedArena, arena: &Arena) -> Value {
    let names: Vec<String> = (0..x.len()).map(|i| x.config_name(arena, i)).collect();
    let edges: Vec<Value> = x
        .edges()
        .iter()
        .map(|e| json!([names[e.src], e.weight, names[e.dst]]))
        .collect();
    let pick = |f: &dyn Fn(usize) -> bool| -> Vec<&str> {
        (0..x.len()).filter(|&i| f(i)).map(|i| names[i].as_str()).collect()
    };
    json!({
        "configs": names,
        "init": names[x.init()],
        "targets": pick(&|i| x.is_target(i)),
        "bad": pick(&|i| x.is_bad(i)),
        "edges": edges,
    })
}

fn reduction_json(r: &ReductionOutput, original: &Arena) -> Value {
    let mapping: serde_json::Map<String, Value> = r
        .mapping
        .iter()
        .enumerate()
        .map(|(q, imgs)| {
            let names: Vec<&str> = imgs.iter().map(|&i| r.arena.name(i)).collect();
            (original.name(enarena::StateId(q)).to_string(), json!(names))
        })
        .collect();
    json!({
        "scale": r.scale,
        "delta": r.delta,
        "mapping": mapping,
        "arena": arena_json(&r.arena),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Solve { arena, query, run } => {
            let a = load(&arena)?;
            let out = solve(&a, &query.spec()?, run.opts())?;
            print_json(&out.report)?;
            Ok(exit_for(out.report.p1_wins()))
        }
        Cmd::Trace { arena, query, run } | Cmd::Witness { arena, query, run, expand: true } => {
            let a = load(&arena)?;
            let spec = query.spec()?;
            let out = solve(&a, &spec, run.opts())?;
            match out.run {
                Some(r) => {
                    print!("{}", r.to_csv(&a, spec.soft));
                    Ok(ExitCode::SUCCESS)
                }
                None if out.report.p1_wins() => bail!("no witness run for this query (one-player reach only)"),
                None => {
                    eprintln!("player 1 loses: no witness");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Cmd::Witness { arena, query, run, .. } => {
            let a = load(&arena)?;
            let out = solve(&a, &query.spec()?, run.opts())?;
            print_json(&out.report.witness)?;
            Ok(exit_for(out.report.witness.is_some()))
        }
        Cmd::Minimize {
            arena,
            lower,
            soft,
            v_max,
            measure,
            objective,
        } => {
            let a = load(&arena)?;
            let res = minimize(&a, lower, soft, v_max, measure, objective)?;
            let body = match &res {
                Some(m) => json!({
                    "bestV": m.best_v,
                    "bestU": m.best_u,
                    "winner": Player::P1,
                    "witnessLength": m.solution.witness.as_ref().map(|r| r.len()),
                }),
                None => json!({ "bestV": null, "bestU": null, "winner": Player::P2, "witnessLength": null }),
            };
            print_json(&body)?;
            Ok(exit_for(res.is_some()))
        }
        Cmd::ExistsBound {
            arena,
            lower,
            soft,
            violations,
            measure,
            objective,
        } => {
            let a = load(&arena)?;
            let u = bound_existence(&a, lower, soft, violations, measure, objective)?;
            let winner = if u.is_some() { Player::P1 } else { Player::P2 };
            print_json(&json!({ "V": violations, "U": u, "winner": winner }))?;
            Ok(exit_for(u.is_some()))
        }
        Cmd::Reduce {
            arena,
            direction,
            format,
        } => {
            let a = load(&arena)?;
            let r = match direction {
                Direction::EnergyToReach => reduce_energy_to_reach(&a),
                Direction::ReachToEnergy => reduce_reach_to_energy(&a)?,
            };
            match format {
                Format::Text => print!("{}", r.to_text(&a)),
                Format::Json => print_json(&reduction_json(&r, &a))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Expand { arena, query, format } => {
            let a = load(&arena)?;
            let spec = query.spec()?;
            spec.validate(&a)?;
            let x = match spec.kind {
                Kind::L => build_l_capped_for(&a, spec.lower, spec.objective)?,
                Kind::LU => build_lu(&a, spec.lower, spec.upper.unwrap())?,
                Kind::LW => build_lw(&a, spec.lower, spec.weak.unwrap())?,
                Kind::LV => build_luv(
                    &a,
                    spec.lower,
                    spec.soft.unwrap(),
                    spec.upper.unwrap(),
                    spec.violations.unwrap(),
                    spec.measure.unwrap(),
                )?,
            };
            match format {
                Format::Text => print!("{}", x.to_text(&a)),
                Format::Json => print_json(&expanded_json(&x, &a))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen {
            seed,
            states,
            p2,
            wmin,
            wmax,
            density,
            targets,
            format,
            out,
        } => {
            if states == 0 || wmin > wmax {
                bail!("need --states > 0 and --wmin <= --wmax");
            }
            let a = random_arena(&GenParams {
                seed,
                n_states: states,
                p2_fraction: p2,
                weight_min: wmin,
                weight_max: wmax,
                edge_density: density,
                target_count: targets,
            });
            let body = match format {
                Format::Text => a.to_text(),
                Format::Json => format!("{}\n", a.to_json()),
            };
            match out {
                Some(p) => std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{body}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Crosscheck {
            pair,
            seeds,
            first_seed,
            params,
            repro_dir,
        } => {
            let template: Option<GenParams> = match params {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    Some(serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?)
                }
                None => None,
            };
            let pairs = match pair {
                Some(p) => vec![p],
                None => Pair::ALL.to_vec(),
            };
            let mut reports = Vec::new();
            for p in pairs {
                let r = crosscheck(p, first_seed, seeds, template.as_ref())?;
                if let Some(dir) = &repro_dir {
                    r.write_reproducers(dir)?;
                }
                reports.push(r);
            }
            let ok = reports.iter().all(|r| r.ok());
            print_json(&reports)?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

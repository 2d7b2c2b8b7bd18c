//! Command-line interface: exact series for the two- and three-point functions,
//! brute-force oracle tables, identity and rewriting verification suites, and
//! scaling-limit numerics.
//!
//! Exit codes: 0 on success (and on all-pass verification), 1 on verification
//! failure, 2 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mapdist_core::bijection;
use mapdist_core::formulas::{three_point, two_point, DistanceSpec, Route};
use mapdist_core::goldens;
use mapdist_core::identities::{self, IdentityId, VerifyConfig};
use mapdist_core::oracle::{self, PointedKind};
use mapdist_core::params::{
    solve_params_bivariate, solve_x_univariate, MapClass, DEFAULT_BIVARIATE_ORDER,
    DEFAULT_UNIVARIATE_ORDER,
};
use mapdist_core::scaling;

#[derive(Parser)]
#[command(
    name = "mapdist",
    about = "Distance generating functions of planar maps: exact series, oracles, and scaling limits",
    version
)]
struct Cli {
    /// Write output to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    General,
    Bipartite,
}

impl From<FamilyArg> for MapClass {
    fn from(f: FamilyArg) -> MapClass {
        match f {
            FamilyArg::General => MapClass::General,
            FamilyArg::Bipartite => MapClass::Bipartite,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    /// Rational coefficients: maps counted by edges only
    Q,
    /// Polynomial-in-z coefficients: edges and faces
    Qz,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Direct,
    TypeA,
    TypeB,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Bipointed,
    Tripointed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvKindArg {
    TwoPoint,
    ThreePoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum RoundingArg {
    Ceil,
    Even,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the parametrization; prints x (and alpha in the qz ring) as JSON
    Series {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "q")]
        ring: RingArg,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Two-point generating function at a prescribed distance
    TwoPoint {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "q")]
        ring: RingArg,
        /// The marked-vertex distance
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "direct")]
        route: RouteArg,
        /// Index split for the type-a/type-b routes (defaults to the middle)
        #[arg(long)]
        split: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Three-point generating function at prescribed pairwise distances
    ThreePoint {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "q")]
        ring: RingArg,
        /// The three pairwise distances d12 d13 d23
        #[arg(long, num_args = 3)]
        d: Vec<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Brute-force pointed-count tables, or the oracle-vs-series comparison suite
    Oracle {
        #[command(subcommand)]
        cmd: Option<OracleCmd>,
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Restrict to bipartite maps
        #[arg(long)]
        bipartite: bool,
    },
    /// Verify the recursion and cross-check identities; exit 0 only if all pass
    VerifyIdentities {
        /// Truncation order for the edge-only ring
        #[arg(long)]
        order: Option<usize>,
        /// Truncation order for the edge-and-face ring
        #[arg(long)]
        biv_order: Option<usize>,
        /// Verify a single identity by name
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Verify the labelled-quadrangulation rewriting correspondences
    VerifyBijections {
        #[arg(long, default_value_t = 3)]
        faces: usize,
        #[arg(long)]
        json: bool,
    },
    /// Scaling-limit numerics
    Scaling {
        #[command(subcommand)]
        cmd: ScalingCmd,
    },
    /// Recompute every frozen reference value and print a scoreboard
    ReferenceChecks,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Compare every oracle table entry with the exact series coefficients
    Compare {
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
    },
}

#[derive(Args)]
struct ScalingCommon {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    z: f64,
}

#[derive(Subcommand)]
enum ScalingCmd {
    /// Critical edge weight, internal parameter, and scaling factor
    Critical {
        #[command(flatten)]
        common: ScalingCommon,
    },
    /// Continuous two-point function
    TwoPoint {
        #[command(flatten)]
        common: ScalingCommon,
        #[arg(long = "D")]
        d: f64,
    },
    /// Continuous three-point function (analytic, with finite-difference check)
    ThreePoint {
        #[command(flatten)]
        common: ScalingCommon,
        #[arg(long = "D12")]
        d12: f64,
        #[arg(long = "D13")]
        d13: f64,
        #[arg(long = "D23")]
        d23: f64,
    },
    /// Geodesic counts and vertex/face fractions
    Observables {
        #[command(flatten)]
        common: ScalingCommon,
    },
    /// Discrete-to-continuum convergence table
    Converge {
        #[command(flatten)]
        common: ScalingCommon,
        #[arg(long = "D")]
        d: f64,
        #[arg(long, num_args = 1.., default_values_t = [0.05, 0.02, 0.01])]
        eps: Vec<f64>,
        #[arg(long, value_enum, default_value = "two-point")]
        kind: ConvKindArg,
        /// Distance rounding; defaults to ceil for general maps, nearest even
        /// for bipartite ones
        #[arg(long, value_enum)]
        rounding: Option<RoundingArg>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> CliError {
        CliError::Usage(e.to_string())
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn default_order(ring: RingArg, order: Option<usize>) -> usize {
    order.unwrap_or(match ring {
        RingArg::Q => DEFAULT_UNIVARIATE_ORDER,
        RingArg::Qz => DEFAULT_BIVARIATE_ORDER,
    })
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Series { family, ring, order } => {
            let n = default_order(*ring, *order);
            let value = match ring {
                RingArg::Q => {
                    let p = solve_x_univariate((*family).into(), n);
                    serde_json::json!({ "x": p.x().to_json() })
                }
                RingArg::Qz => {
                    let p = solve_params_bivariate((*family).into(), n);
                    serde_json::json!({ "x": p.x().to_json(), "alpha": p.alpha().to_json() })
                }
            };
            emit(&cli.out, &serde_json::to_string_pretty(&value).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::TwoPoint {
            family,
            ring,
            d,
            route,
            split,
            order,
        } => {
            let spec = DistanceSpec::pair(*d).map_err(CliError::usage)?;
            let route = match route {
                RouteArg::Direct => Route::Direct,
                RouteArg::TypeA => Route::TypeA { split: *split },
                RouteArg::TypeB => Route::TypeB { split: *split },
            };
            let n = default_order(*ring, *order);
            let value = match ring {
                RingArg::Q => {
                    let p = solve_x_univariate((*family).into(), n);
                    two_point(&p, &spec, route).map_err(CliError::usage)?.to_json()
                }
                RingArg::Qz => {
                    let p = solve_params_bivariate((*family).into(), n);
                    two_point(&p, &spec, route).map_err(CliError::usage)?.to_json()
                }
            };
            emit(&cli.out, &serde_json::to_string_pretty(&value).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ThreePoint {
            family,
            ring,
            d,
            order,
        } => {
            let spec = DistanceSpec::triple(d[0], d[1], d[2]).map_err(CliError::usage)?;
            let n = default_order(*ring, *order);
            let value = match ring {
                RingArg::Q => {
                    let p = solve_x_univariate((*family).into(), n);
                    three_point(&p, &spec).map_err(CliError::usage)?.to_json()
                }
                RingArg::Qz => {
                    let p = solve_params_bivariate((*family).into(), n);
                    three_point(&p, &spec).map_err(CliError::usage)?.to_json()
                }
            };
            emit(&cli.out, &serde_json::to_string_pretty(&value).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            cmd,
            edges,
            kind,
            bipartite,
        } => match cmd {
            Some(OracleCmd::Compare { max_edges }) => {
                let (report, pass) = oracle_compare(*max_edges).map_err(CliError::Usage)?;
                emit(&cli.out, &report)?;
                Ok(if pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                })
            }
            None => {
                let edges = edges.ok_or_else(|| {
                    CliError::Usage("--edges is required for the table mode".into())
                })?;
                let kind = kind.ok_or_else(|| {
                    CliError::Usage("--kind is required for the table mode".into())
                })?;
                let kind = match kind {
                    KindArg::Bipointed => PointedKind::BiPointed,
                    KindArg::Tripointed => PointedKind::TriPointed,
                };
                let table =
                    oracle::count_pointed(edges, kind, *bipartite).map_err(CliError::usage)?;
                emit(
                    &cli.out,
                    &serde_json::to_string_pretty(&table.to_json()).unwrap(),
                )?;
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::VerifyIdentities {
            order,
            biv_order,
            id,
            json,
        } => {
            let mut cfg = VerifyConfig::default();
            if let Some(o) = order {
                cfg.uni_order = *o;
            }
            if let Some(o) = biv_order {
                cfg.biv_order = *o;
            }
            let reports = match id {
                Some(name) => {
                    let id: IdentityId = name.parse().map_err(CliError::Usage)?;
                    vec![identities::verify(id, &cfg)]
                }
                None => identities::verify_all(&cfg),
            };
            let all_pass = reports.iter().all(|r| r.pass);
            let content = if *json {
                serde_json::to_string_pretty(&serde_json::Value::Array(
                    reports.iter().map(|r| r.to_json()).collect(),
                ))
                .unwrap()
            } else {
                let mut s = String::new();
                for r in &reports {
                    let _ = writeln!(
                        s,
                        "{:<18} {} ({} cases)",
                        r.id.to_string(),
                        if r.pass { "pass" } else { "FAIL" },
                        r.cases
                    );
                    if let Some(f) = &r.first_failure {
                        let _ = writeln!(
                            s,
                            "    first failure at indices {:?}, g^{}: lhs {} rhs {}",
                            f.indices, f.g_order, f.lhs, f.rhs
                        );
                    }
                }
                s.pop();
                s
            };
            emit(&cli.out, &content)?;
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::VerifyBijections { faces, json } => {
            let mut checks = vec![];
            let local = bijection::verify_local_rules(*faces).map_err(CliError::usage)?;
            checks.extend(local.checks);
            for n in 1..=*faces {
                let pointed = bijection::verify_pointed_bijections(n).map_err(CliError::usage)?;
                checks.extend(pointed.checks);
            }
            let report = bijection::BijectionReport { checks };
            let content = if *json {
                serde_json::to_string_pretty(&report.to_json()).unwrap()
            } else {
                report
                    .checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{} [{}]{}",
                            if c.pass { "pass" } else { "FAIL" },
                            c.name,
                            if c.detail.is_empty() {
                                String::new()
                            } else {
                                format!(" {}", c.detail)
                            }
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            emit(&cli.out, &content)?;
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Scaling { cmd } => run_scaling(cli, cmd),
        Command::ReferenceChecks => {
            let checks = goldens::run_reference_checks();
            let mut content = String::new();
            let mut all = true;
            for c in &checks {
                all &= c.pass;
                let _ = writeln!(
                    content,
                    "{} [{}] {}",
                    if c.pass { "pass" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            let _ = write!(
                content,
                "{}/{} reference checks passed",
                checks.iter().filter(|c| c.pass).count(),
                checks.len()
            );
            emit(&cli.out, &content)?;
            Ok(if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn run_scaling(cli: &Cli, cmd: &ScalingCmd) -> Result<ExitCode, CliError> {
    match cmd {
        ScalingCmd::Critical { common } => {
            let cp = scaling::critical_point(common.family.into(), common.z)
                .map_err(CliError::usage)?;
            let value = serde_json::json!({
                "z": cp.z,
                "param": cp.param,
                "g_crit": cp.g_crit,
                "gamma": cp.gamma,
            });
            emit(&cli.out, &serde_json::to_string_pretty(&value).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        ScalingCmd::TwoPoint { common, d } => {
            let g = scaling::continuous_two_point(common.family.into(), *d, common.z)
                .map_err(CliError::usage)?;
            let value = serde_json::json!({ "D": d, "value": g });
            emit(&cli.out, &serde_json::to_string_pretty(&value).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        ScalingCmd::ThreePoint {
            common,
            d12,
            d13,
            d23,
        } => {
            let class = common.family.into();
            let analytic = scaling::continuous_three_point(class, *d12, *d13, *d23, common.z)
                .map_err(CliError::usage)?;
            let fd = scaling::continuous_three_point_fd(class, *d12, *d13, *d23, common.z)
                .map_err(CliError::usage)?;
            let value = serde_json::json!({
                "D12": d12, "D13": d13, "D23": d23,
                "value": analytic,
                "finite_difference": fd,
                "rel_difference": (analytic - fd).abs() / analytic.abs(),
            });
            emit(&cli.out, &serde_json::to_string_pretty(&value).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        ScalingCmd::Observables { common } => {
            let obs =
                scaling::observables(common.family.into(), common.z).map_err(CliError::usage)?;
            let value = serde_json::json!({
                "n_geod_vertices": obs.n_geod_vertices,
                "n_geod_edges": obs.n_geod_edges,
                "n_v_fraction": obs.n_v_fraction,
                "n_f_fraction": obs.n_f_fraction,
            });
            emit(&cli.out, &serde_json::to_string_pretty(&value).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        ScalingCmd::Converge {
            common,
            d,
            eps,
            kind,
            rounding,
            format,
        } => {
            let class = common.family.into();
            let kind = match kind {
                ConvKindArg::TwoPoint => scaling::ConvergenceKind::TwoPoint,
                ConvKindArg::ThreePoint => scaling::ConvergenceKind::ThreePoint,
            };
            let rounding = match rounding {
                Some(RoundingArg::Ceil) => scaling::DistanceRounding::Ceil,
                Some(RoundingArg::Even) => scaling::DistanceRounding::NearestEven,
                None => scaling::DistanceRounding::default_for(class),
            };
            let rows = scaling::convergence_table(class, kind, *d, common.z, eps, rounding)
                .map_err(CliError::usage)?;
            let content = match format {
                FormatArg::Csv => {
                    let mut s = String::from("eps,g,d,discrete,continuum,rel_error");
                    for r in &rows {
                        let _ = write!(
                            s,
                            "\n{},{:.17},{},{:.12},{:.12},{:.6}",
                            r.eps, r.g, r.d, r.discrete, r.continuum, r.rel_error
                        );
                    }
                    s
                }
                FormatArg::Json => serde_json::to_string_pretty(&serde_json::Value::Array(
                    rows.iter()
                        .map(|r| {
                            serde_json::json!({
                                "eps": r.eps, "g": r.g, "d": r.d,
                                "discrete": r.discrete, "continuum": r.continuum,
                                "rel_error": r.rel_error,
                            })
                        })
                        .collect(),
                ))
                .unwrap(),
            };
            emit(&cli.out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Compares every oracle table entry with the corresponding series coefficient,
/// for both families and both mark counts, at 1..=max_edges edges.
fn oracle_compare(max_edges: usize) -> Result<(String, bool), String> {
    use mapdist_core::ring::{Ring, ZPoly};
    let mut out = String::new();
    let mut pass = true;
    let order = max_edges;
    for (label, bipartite) in [("general", false), ("bipartite", true)] {
        let class = if bipartite {
            MapClass::Bipartite
        } else {
            MapClass::General
        };
        let p = solve_params_bivariate(class, order);
        for n in 1..=max_edges {
            let bi = oracle::count_pointed(n, PointedKind::BiPointed, bipartite)
                .map_err(|e| e.to_string())?;
            let tri = oracle::count_pointed(n, PointedKind::TriPointed, bipartite)
                .map_err(|e| e.to_string())?;
            let mut checked = 0usize;
            let zero = <ZPoly as Ring>::zero();
            for d in 1..=n {
                let spec = DistanceSpec::pair(d).map_err(|e| e.to_string())?;
                let series = two_point(&p, &spec, Route::Direct).map_err(|e| e.to_string())?;
                let got = series.coeff(n);
                let want = bi.table.get(&vec![d as u32]).unwrap_or(&zero);
                checked += 1;
                if got != *want {
                    pass = false;
                    let _ = writeln!(
                        out,
                        "MISMATCH {label} n={n} d={d}: series {got}, oracle {want}"
                    );
                }
            }
            for d12 in 1..=n {
                for d13 in 1..=n {
                    for d23 in 1..=n {
                        let Ok(spec) = DistanceSpec::triple(d12, d13, d23) else {
                            continue;
                        };
                        if bipartite && (d12 + d13 + d23) % 2 == 1 {
                            continue;
                        }
                        let series = three_point(&p, &spec).map_err(|e| e.to_string())?;
                        let got = series.coeff(n);
                        let key = vec![d12 as u32, d13 as u32, d23 as u32];
                        let want = tri.table.get(&key).unwrap_or(&zero);
                        checked += 1;
                        if got != *want {
                            pass = false;
                            let _ = writeln!(
                                out,
                                "MISMATCH {label} n={n} d=({d12},{d13},{d23}): series {got}, oracle {want}"
                            );
                        }
                    }
                }
            }
            let _ = writeln!(out, "{label} n={n}: {checked} entries compared");
        }
    }
    let _ = write!(
        out,
        "{}",
        if pass {
            "all entries match"
        } else {
            "MISMATCHES FOUND"
        }
    );
    Ok((out, pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

//! Batch front end: file formats, subcommands, seeds, and machine-readable
//! JSON output over the solver library.

mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use polytrace::bench;
use polytrace::certify::{certify_alpha, krawczyk_certify_all, KrawczykOptions};
use polytrace::nag::{
    membership_test, monodromy_solve, numerical_irreducible_decomposition, NagOptions,
};
use polytrace::polyhedral::{generic_lifting_with_cells, polyhedral_solve, DEFAULT_LIFT_BOUND};
use polytrace::rng::Seed;
use polytrace::solve::{parameter_solve, total_degree_solve, ParametricFamily};
use polytrace::text::{format_system, parse_system, SystemFile};
use polytrace::tracker::TrackerOptions;

use output::*;

#[derive(Parser)]
#[command(name = "polytrace", version, about = "Polynomial system solving by homotopy continuation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Master seed; every random choice derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: POLYTRACE_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Newton corrector tolerance.
    #[arg(long = "tol-corrector", global = true)]
    tol_corrector: Option<f64>,
    /// Residual tolerance for accepted solutions.
    #[arg(long = "tol-residual", global = true)]
    tol_residual: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMethod {
    Total,
    Polyhedral,
    Monodromy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertifyMethod {
    Alpha,
    Krawczyk,
}

#[derive(Args)]
struct InputArg {
    /// System file; `-` reads standard input.
    #[arg(long, short = 'i')]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a square polynomial system.
    Solve {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = SolveMethod::Total)]
        method: SolveMethod,
        /// Stop monodromy at this many solutions.
        #[arg(long = "known-count")]
        known_count: Option<usize>,
        /// Stagnation budget for monodromy (loops without growth).
        #[arg(long = "max-loops", default_value_t = 20)]
        max_loops: usize,
    },
    /// Mixed volume of a system's supports (or of raw support sets).
    Mixedvol {
        #[command(flatten)]
        input: InputArg,
        /// Also list the mixed cells.
        #[arg(long)]
        cells: bool,
    },
    /// Certify numerical solutions of a square system.
    Certify {
        #[command(flatten)]
        input: InputArg,
        /// JSON file with the solution list.
        #[arg(long)]
        solutions: PathBuf,
        #[arg(long, value_enum, default_value_t = CertifyMethod::Krawczyk)]
        method: CertifyMethod,
    },
    /// Numerical irreducible decomposition into witness sets.
    Decompose {
        #[command(flatten)]
        input: InputArg,
        /// Monodromy loop budget per dimension.
        #[arg(long = "max-loops", default_value_t = 50)]
        max_loops: usize,
    },
    /// Test membership of a point in the variety's components.
    Member {
        #[command(flatten)]
        input: InputArg,
        /// The query point as JSON, e.g. [[-8,0],[6,0],[-5,0]].
        #[arg(long)]
        point: String,
        #[arg(long = "max-loops", default_value_t = 50)]
        max_loops: usize,
    },
    /// Emit a benchmark instance plus its oracle data.
    Bench {
        #[command(subcommand)]
        family: BenchFamily,
    },
}

#[derive(Subcommand)]
enum BenchFamily {
    /// Oscillator equilibrium system on a graph.
    Kuramoto {
        /// Graph spec: tree:N | path:N | cycle:N | complete:N | wheel:N.
        #[arg(long)]
        graph: String,
        /// Write the system here (oracle goes to <out>.oracle.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three-point absolute pose (depth formulation).
    P3p {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Five-point relative pose (depth formulation).
    #[command(name = "5pt")]
    FivePt {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::new(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::new(format!("reading {}: {e}", path.display())))
    }
}

fn tracker_options(cli: &Cli) -> TrackerOptions {
    let mut t = TrackerOptions::default();
    if let Some(tol) = cli.tol_corrector {
        t.corrector_tolerance = tol;
    }
    if let Some(tol) = cli.tol_residual {
        t.residual_tolerance = tol;
    }
    t
}

fn thread_count(cli: &Cli) -> Option<usize> {
    cli.threads.or_else(|| {
        std::env::var("POLYTRACE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = thread_count(&cli) {
            builder = builder.num_threads(n.max(1));
        }
        match builder.build() {
            Ok(p) => p,
            Err(e) => return fail(&CliError::new(format!("thread pool: {e}"))),
        }
    };
    let outcome = pool.install(|| run(&cli));
    match outcome {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", e.to_json());
    ExitCode::from(1)
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let seed = Seed(cli.seed);
    let tracker = tracker_options(cli);
    match &cli.command {
        Command::Solve {
            input,
            method,
            known_count,
            max_loops,
        } => {
            let file = parse_file(&read_input(&input.input)?)?;
            run_solve(&file, *method, *known_count, *max_loops, &tracker, seed, cli.seed)
        }
        Command::Mixedvol { input, cells } => {
            let text = read_input(&input.input)?;
            run_mixedvol(&text, *cells, seed, cli.seed)
        }
        Command::Certify {
            input,
            solutions,
            method,
        } => {
            let file = parse_file(&read_input(&input.input)?)?;
            let sols = read_solutions(solutions)?;
            run_certify(&file, &sols, *method, cli.seed)
        }
        Command::Decompose { input, max_loops } => {
            let file = parse_file(&read_input(&input.input)?)?;
            run_decompose(&file, *max_loops, &tracker, seed, cli.seed)
        }
        Command::Member {
            input,
            point,
            max_loops,
        } => {
            let file = parse_file(&read_input(&input.input)?)?;
            let pt = parse_point(point)?;
            run_member(&file, &pt, *max_loops, &tracker, seed, cli.seed)
        }
        Command::Bench { family } => run_bench(family, seed, cli.seed),
    }
}

fn parse_file(text: &str) -> Result<SystemFile, CliError> {
    parse_system(text).map_err(|e| CliError::new(e.to_string()))
}

fn parse_point(text: &str) -> Result<Vec<Complex64>, CliError> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text)
        .map_err(|e| CliError::new(format!("point must be JSON [[re,im],...]: {e}")))?;
    Ok(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
}

fn read_solutions(path: &PathBuf) -> Result<Vec<Vec<Complex64>>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(format!("reading {}: {e}", path.display())))?;
    parse_solution_json(&text)
}

fn run_solve(
    file: &SystemFile,
    method: SolveMethod,
    known_count: Option<usize>,
    max_loops: usize,
    tracker: &TrackerOptions,
    seed: Seed,
    raw_seed: u64,
) -> Result<ExitCode, CliError> {
    if file.is_parametric() && method != SolveMethod::Monodromy {
        return Err(CliError::new(
            "parametric systems solve with --method monodromy",
        ));
    }
    let (records, paths, method_name, stalled) = match method {
        SolveMethod::Total => {
            let out = total_degree_solve(&file.system, tracker, seed)
                .map_err(|e| CliError::new(e.to_string()))?;
            (
                solution_records(&file.system, &out.solutions),
                out.paths_tracked,
                "total",
                false,
            )
        }
        SolveMethod::Polyhedral => {
            let out = polyhedral_solve(&file.system, tracker, seed)
                .map_err(|e| CliError::new(e.to_string()))?;
            (
                solution_records(&file.system, &out.solutions),
                out.paths_tracked,
                "polyhedral",
                false,
            )
        }
        SolveMethod::Monodromy => {
            let nag = NagOptions {
                tracker: tracker.clone(),
                ..NagOptions::default()
            };
            let (fam, target_params, nvars) = coefficient_family(file);
            let fam = ParametricFamily::new(fam, nvars);
            let out = monodromy_solve(&fam, known_count, &nag, seed, max_loops)
                .map_err(|e| CliError::new(e.to_string()))?;
            let moved = parameter_solve(
                &fam,
                &out.base_parameters,
                &out.solutions,
                &target_params,
                tracker,
                seed.derive("to-target", 0),
            )
            .map_err(|e| CliError::new(e.to_string()))?;
            let concrete = fam
                .at(&target_params)
                .map_err(|e| CliError::new(e.to_string()))?;
            (
                solution_records(&concrete, &moved.solutions),
                out.loops_used,
                "monodromy",
                out.stalled && known_count.is_none(),
            )
        }
    };
    let count = records.len();
    print_json(&SolveReport {
        schema: "polytrace/solve/v1",
        command: "solve",
        method: method_name,
        seed: raw_seed,
        path_count: paths,
        count,
        stalled,
        solutions: records,
    });
    Ok(ExitCode::SUCCESS)
}

/// Rebuilds the system as a family whose parameters are all coefficients,
/// returning the template (variables then parameters) and the target
/// parameter values.
fn coefficient_family(
    file: &SystemFile,
) -> (polytrace::algebra::LaurentSystem, Vec<Complex64>, usize) {
    use polytrace::algebra::{Exponent, LaurentPolynomial, LaurentSystem};
    let n = file.system.nvars();
    let nparams: usize = file.system.polys().iter().map(|p| p.num_terms()).sum();
    let total = n + nparams;
    let mut params = Vec::with_capacity(nparams);
    let mut polys = Vec::new();
    let mut k = 0usize;
    for p in file.system.polys() {
        let mut q = LaurentPolynomial::zero(total);
        for (e, c) in p.terms() {
            let mut exp = e.0.clone();
            exp.resize(total, 0);
            exp[n + k] = 1;
            q.add_term(Exponent(exp), Complex64::new(1.0, 0.0));
            params.push(*c);
            k += 1;
        }
        polys.push(q);
    }
    (LaurentSystem::new(total, polys), params, n)
}

fn run_mixedvol(text: &str, with_cells: bool, seed: Seed, raw_seed: u64) -> Result<ExitCode, CliError> {
    let supports = if text.trim_start().starts_with("supports:") {
        parse_supports(text)?
    } else {
        let file = parse_file(text)?;
        if !file.parameters.is_empty() {
            return Err(CliError::new("mixed volume expects a plain system"));
        }
        file.system.supports()
    };
    let (_, cells) = generic_lifting_with_cells(&supports, DEFAULT_LIFT_BOUND, seed)
        .map_err(|e| CliError::new(e.to_string()))?;
    let mv: u128 = cells.iter().map(|c| u128::from(c.volume)).sum();
    print_json(&MixedVolReport {
        schema: "polytrace/mixedvol/v1",
        command: "mixedvol",
        seed: raw_seed,
        mixed_volume: mv as u64,
        cells: if with_cells {
            Some(cells.iter().map(cell_record).collect())
        } else {
            None
        },
    });
    Ok(ExitCode::SUCCESS)
}

fn parse_supports(text: &str) -> Result<Vec<Vec<polytrace::algebra::Exponent>>, CliError> {
    use polytrace::algebra::Exponent;
    let mut lines = text.lines().filter(|l| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let header = lines.next().ok_or_else(|| CliError::new("empty supports file"))?;
    let n: usize = header
        .trim()
        .strip_prefix("supports:")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| CliError::new("header must be `supports: <nvars>`"))?;
    let mut out = Vec::new();
    for line in lines {
        let mut pts = Vec::new();
        for chunk in line.split(',') {
            let coords: Vec<i64> = chunk
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| CliError::new(format!("bad integer `{v}`"))))
                .collect::<Result<_, _>>()?;
            if coords.len() != n {
                return Err(CliError::new(format!(
                    "expected {n} coordinates, got {}",
                    coords.len()
                )));
            }
            pts.push(Exponent(coords));
        }
        out.push(pts);
    }
    Ok(out)
}

fn run_certify(
    file: &SystemFile,
    sols: &[Vec<Complex64>],
    method: CertifyMethod,
    raw_seed: u64,
) -> Result<ExitCode, CliError> {
    if !file.system.is_square() {
        return Err(CliError::new("certification expects a square system"));
    }
    let certs = match method {
        CertifyMethod::Alpha => certify_alpha(&file.system, sols),
        CertifyMethod::Krawczyk => {
            krawczyk_certify_all(&file.system, sols, &KrawczykOptions::default())
        }
    };
    let records: Vec<CertificateRecord> = certs.iter().map(certificate_record).collect();
    print_json(&CertifyReport {
        schema: "polytrace/certify/v1",
        command: "certify",
        method: match method {
            CertifyMethod::Alpha => "alpha",
            CertifyMethod::Krawczyk => "krawczyk",
        },
        seed: raw_seed,
        certified_count: records.iter().filter(|r| r.certified).count(),
        certificates: records,
    });
    Ok(ExitCode::SUCCESS)
}

fn run_decompose(
    file: &SystemFile,
    max_loops: usize,
    tracker: &TrackerOptions,
    seed: Seed,
    raw_seed: u64,
) -> Result<ExitCode, CliError> {
    let opts = NagOptions {
        tracker: tracker.clone(),
        loop_budget: max_loops,
        ..NagOptions::default()
    };
    let decomp = numerical_irreducible_decomposition(&file.system, &opts, seed)
        .map_err(|e| CliError::new(e.to_string()))?;
    let report = DecomposeReport {
        schema: "polytrace/decomposition/v1",
        command: "decompose",
        seed: raw_seed,
        inconclusive: decomp.inconclusive,
        components: decomp.components.iter().map(component_record).collect(),
    };
    print_json(&report);
    Ok(if decomp.inconclusive {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_member(
    file: &SystemFile,
    point: &[Complex64],
    max_loops: usize,
    tracker: &TrackerOptions,
    seed: Seed,
    raw_seed: u64,
) -> Result<ExitCode, CliError> {
    if point.len() != file.system.nvars() {
        return Err(CliError::new("point dimension must match the variable count"));
    }
    let opts = NagOptions {
        tracker: tracker.clone(),
        loop_budget: max_loops,
        ..NagOptions::default()
    };
    let decomp = numerical_irreducible_decomposition(&file.system, &opts, seed)
        .map_err(|e| CliError::new(e.to_string()))?;
    let mut member = false;
    let mut evidence: Option<MemberEvidence> = None;
    for (idx, w) in decomp.components.iter().enumerate() {
        let hit = if w.dim() == 0 {
            w.points
                .iter()
                .any(|p| polytrace::algebra::vec_dist(p, point) < 1e-6)
        } else {
            membership_test(w, point, &opts, seed.derive("member", idx as u64))
                .map_err(|e| CliError::new(e.to_string()))?
        };
        if hit {
            member = true;
            evidence = Some(MemberEvidence {
                component: idx,
                dimension: w.dim(),
                degree: w.degree(),
            });
            break;
        }
    }
    print_json(&MemberReport {
        schema: "polytrace/member/v1",
        command: "member",
        seed: raw_seed,
        member,
        evidence,
        residual: file.system.scaled_residual(point),
    });
    Ok(ExitCode::SUCCESS)
}

fn run_bench(family: &BenchFamily, seed: Seed, raw_seed: u64) -> Result<ExitCode, CliError> {
    let (system_text, oracle, out) = match family {
        BenchFamily::Kuramoto { graph, out } => {
            let g = parse_graph(graph)?;
            let inst =
                bench::kuramoto_system(&g, seed).map_err(|e| CliError::new(e.to_string()))?;
            let count = bench::kuramoto_count(&g, seed).map_err(|e| CliError::new(e.to_string()))?;
            let n = g.nodes() - 1;
            let names: Vec<String> = (1..=n)
                .map(|i| format!("s{i}"))
                .chain((1..=n).map(|i| format!("c{i}")))
                .collect();
            let text = render_system(&inst.system, &names);
            let oracle = serde_json::json!({
                "family": "kuramoto",
                "graph": graph,
                "root_count": count as u64,
                "frequencies": inst.frequencies,
                "couplings": inst.couplings,
            });
            (text, oracle, out.clone())
        }
        BenchFamily::P3p { out } => {
            let inst = bench::p3p_system(seed).map_err(|e| CliError::new(e.to_string()))?;
            let names: Vec<String> = (1..=3).map(|i| format!("l{i}")).collect();
            let text = render_system(&inst.system, &names);
            let oracle = serde_json::json!({
                "family": "p3p",
                "true_depths": inst.true_depths,
                "world_points": inst.world_points,
                "image_points": inst.image_points,
                "solution_count": 8,
            });
            (text, oracle, out.clone())
        }
        BenchFamily::FivePt { out } => {
            let inst = bench::five_point_system(seed).map_err(|e| CliError::new(e.to_string()))?;
            let names: Vec<String> = (2..=5)
                .map(|i| format!("l{i}"))
                .chain((1..=5).map(|i| format!("m{i}")))
                .collect();
            let text = render_system(&inst.system, &names);
            let oracle = serde_json::json!({
                "family": "5pt",
                "true_depths": inst.true_depths,
                "first_images": inst.first_images,
                "second_images": inst.second_images,
                "solution_count": 20,
            });
            (text, oracle, out.clone())
        }
    };
    match out {
        Some(path) => {
            std::fs::write(&path, &system_text)
                .map_err(|e| CliError::new(format!("writing {}: {e}", path.display())))?;
            let oracle_path = path.with_extension("oracle.json");
            std::fs::write(&oracle_path, serde_json::to_string_pretty(&oracle).unwrap())
                .map_err(|e| CliError::new(format!("writing {}: {e}", oracle_path.display())))?;
            print_json(&serde_json::json!({
                "schema": "polytrace/bench/v1",
                "command": "bench",
                "seed": raw_seed,
                "system_file": path.display().to_string(),
                "oracle_file": oracle_path.display().to_string(),
            }));
        }
        None => {
            print_json(&serde_json::json!({
                "schema": "polytrace/bench/v1",
                "command": "bench",
                "seed": raw_seed,
                "system": system_text,
                "oracle": oracle,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render_system(system: &polytrace::algebra::LaurentSystem, names: &[String]) -> String {
    let file = SystemFile {
        variables: names.to_vec(),
        parameters: Vec::new(),
        system: system.clone(),
    };
    format_system(&file)
}

fn parse_graph(spec: &str) -> Result<bench::Graph, CliError> {
    let (kind, count) = spec
        .split_once(':')
        .ok_or_else(|| CliError::new("graph spec is kind:count, e.g. cycle:4"))?;
    let n: usize = count
        .parse()
        .map_err(|_| CliError::new(format!("bad node count `{count}`")))?;
    match kind {
        "tree" | "path" => Ok(bench::Graph::path(n)),
        "cycle" => Ok(bench::Graph::cycle(n)),
        "complete" => Ok(bench::Graph::complete(n)),
        "wheel" => Ok(bench::Graph::wheel(n)),
        other => Err(CliError::new(format!("unknown graph kind `{other}`"))),
    }
}

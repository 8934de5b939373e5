use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nonres::homology::{
    betti_loop_model, default_qmax, e1_table_with, engine_for_e1, omega2_sphere, space_formula,
    verify_grid, FieldChoice, GridCell, GridSpec, HomologyEngine, JRange, SpaceKind,
};
use nonres::oracle::{fox_neuwirth_betti, pi0_experiment_12, planted_root_fuzz, unplanted_fuzz};
use nonres::polyarith::{parse_rational, GaussPoly, QPoly};
use nonres::scanning::{eval_real_loop, loop_class_mod2};
use nonres::spaces::{
    double_to_hplus, is_member, jet_embedding, loop_product, stabilize, stabilize_slot, stratum_signature, Family,
    NumericSystem, SpaceId, System,
};
use nonres::Error;

#[derive(Parser, Debug)]
#[command(name = "nonres", version, about = "Spaces of non-resultant polynomial systems")]
struct Cli {
    /// Machine-readable output on stdout, JSON diagnostics on stderr.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct SystemInput {
    /// System as inline JSON or a path to a JSON file.
    #[arg(long)]
    system: Option<String>,
    /// One slot per flag, ascending coefficients, e.g. `--poly 1,0,1` for z^2+1.
    #[arg(long = "poly", allow_hyphen_values = true)]
    polys: Vec<String>,
    #[arg(long, default_value = "Poly_C")]
    family: String,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n: usize,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FieldArg {
    F2,
    Q,
    Both,
}

impl FieldArg {
    fn fields(self) -> Vec<FieldChoice> {
        match self {
            FieldArg::F2 => vec![FieldChoice::F2],
            FieldArg::Q => vec![FieldChoice::Q],
            FieldArg::Both => FieldChoice::BOTH.to_vec(),
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModelArg {
    /// Ω²S^{2mn-1} × ΩS^{mn-1}
    Real,
    /// Ω²S^{2mn-1}
    Complex,
    /// James stage J_{floor(d/n)} of ΩS^{mn-1}
    James,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum OracleKind {
    FoxNeuwirth,
    Planted,
    Unplanted,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Membership and discriminant stratum of a system.
    Check(SystemInput),
    /// Jet embedding f -> (f, f + f', ..., f + f^(n-1)).
    Jet {
        #[arg(long = "poly", allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        n: usize,
    },
    /// Degree-raising stabilization map.
    Stabilize {
        #[command(flatten)]
        input: SystemInput,
        /// Raise only this slot (0-based).
        #[arg(long)]
        slot: Option<usize>,
        /// Residual threshold for the numeric membership re-check.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Loop product of two systems.
    Product {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Doubling map into the half-plane space.
    Double {
        #[command(flatten)]
        input: SystemInput,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Real loop of a Q_R member and its mod-2 class.
    Scan {
        #[command(flatten)]
        input: SystemInput,
        /// Initial number of grid intervals.
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        /// Write the samples as CSV to this path.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Betti numbers of a stable splitting or of a loop-space model.
    Betti {
        #[arg(long)]
        space: Option<String>,
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "f2")]
        field: FieldArg,
        #[arg(long)]
        qmax: Option<usize>,
    },
    /// E1 page of the resolved discriminant.
    E1 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "f2")]
        field: FieldArg,
        /// Sum j over 1..=k instead of the budgeted range.
        #[arg(long)]
        untruncated: bool,
    },
    /// Stable-range identities over a parameter grid.
    Verify {
        /// e.g. "mn in {3,4,6}; d<=20"
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "both")]
        field: FieldArg,
        #[arg(long)]
        qmax: Option<usize>,
        /// Worker threads (default: logical cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Brute-force certificates.
    Oracle {
        #[arg(long, value_enum)]
        kind: OracleKind,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        qmax: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Component labels of Poly^{d,1}_2(R) by sampling.
    Pi0 {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Failure of a subcommand; `Check` means the computation ran and a
/// checked property does not hold.
enum Failure {
    Usage(String),
    Core(Error),
    Check(Output),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Output {
    json: Value,
    text: String,
}

type CmdResult = Result<Output, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_poly(s: &str) -> Result<QPoly, Failure> {
    let coeffs = s
        .split(',')
        .map(|c| parse_rational(c.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QPoly::new(coeffs))
}

fn read_json_arg(s: &str) -> Result<String, Failure> {
    if s.trim_start().starts_with('{') {
        Ok(s.to_string())
    } else {
        fs::read_to_string(s).map_err(|e| usage(format!("cannot read {s}: {e}")))
    }
}

impl SystemInput {
    fn load(&self) -> Result<System, Failure> {
        if let Some(s) = &self.system {
            return Ok(System::parse_json(&read_json_arg(s)?)?);
        }
        if self.polys.is_empty() {
            return Err(usage("give a system with --system or one --poly per slot"));
        }
        let polys = self.polys.iter().map(|p| parse_poly(p)).collect::<Result<Vec<_>, _>>()?;
        let family = Family::parse(&self.family)?;
        let m = self.m.unwrap_or(polys.len());
        let degrees: Vec<usize> = polys.iter().map(|p| p.degree().unwrap_or(0)).collect();
        let space = match self.d {
            Some(d) => SpaceId::new(family, d, m, self.n)?,
            None if degrees.windows(2).all(|w| w[0] == w[1]) => SpaceId::new(family, degrees[0], m, self.n)?,
            None => SpaceId::with_degrees(family, degrees, self.n)?,
        };
        Ok(System::from_q(space, polys)?)
    }
}

fn poly_text(p: &GaussPoly) -> String {
    format!("{p:?}")
}

fn numeric_output(out: &NumericSystem, tol: f64) -> CmdResult {
    let residual = out.recheck(tol)?;
    let mut json = serde_json::to_value(out.to_json()).expect("serializable");
    json["min_jet_residual"] = json!(residual);
    let mut text = format!("{}  (region map {})\n", out.space(), out.region_map_version());
    for (k, p) in out.polys().iter().enumerate() {
        let coeffs: Vec<String> = p.iter().map(|c| format!("{:.6}{:+.6}i", c.re, c.im)).collect();
        text.push_str(&format!("f{}: [{}]\n", k + 1, coeffs.join(", ")));
    }
    text.push_str(&format!("min jet residual at candidate roots: {residual:e}\n"));
    Ok(Output { json, text })
}

fn cmd_check(input: &SystemInput) -> CmdResult {
    let sys = input.load()?;
    let member = is_member(&sys);
    let stratum = if member || !sys.is_real() { None } else { stratum_signature(&sys)? };
    let space = sys.space();
    let json = json!({
        "family": space.family,
        "d": space.d,
        "m": space.m,
        "n": space.n,
        "member": member,
        "stratum": stratum,
    });
    let mut text = format!("{}: member={member}", space);
    if let Some(s) = stratum {
        text.push_str(&format!(", stratum=({}, {})", s.i, s.j));
    }
    text.push('\n');
    Ok(Output { json, text })
}

fn cmd_jet(poly: &str, n: usize) -> CmdResult {
    let sys = jet_embedding(&parse_poly(poly)?, n)?;
    let text = sys.polys().iter().map(poly_text).collect::<Vec<_>>().join("\n") + "\n";
    Ok(Output { json: serde_json::to_value(sys.to_json()).expect("serializable"), text })
}

fn parse_space(s: &str) -> Result<SpaceKind, Failure> {
    Ok(SpaceKind::parse(s)?)
}

fn cmd_betti(
    space: Option<&str>,
    model: Option<ModelArg>,
    (d, m, n): (usize, usize, usize),
    field: FieldArg,
    qmax: Option<usize>,
) -> CmdResult {
    let qmax = match qmax {
        Some(q) => q,
        None => default_qmax(d, m, n)?,
    };
    let mn = m * n;
    let mut json = json!({ "d": d, "m": m, "n": n, "qmax": qmax });
    let mut text = String::new();
    match (space, model) {
        (Some(s), None) => {
            let kind = parse_space(s)?;
            let formula = space_formula(kind, d, m, n)?;
            let engine = HomologyEngine::new(formula.max_j(), qmax);
            json["space"] = json!(s);
            json["formula"] = json!(formula.to_string());
            text.push_str(&format!("{s} ~ {formula}\n"));
            for f in field.fields() {
                let b = engine.betti_of_formula(&formula, f, qmax);
                json["reduced"][f.to_string()] = json!(b.to_json_map());
                text.push_str(&format!("reduced homology over {f}:\n{}", b.to_text()));
            }
        }
        (None, Some(model)) => {
            if mn < 3 {
                return Err(usage("loop models need mn >= 3"));
            }
            json["model"] = json!(format!("{model:?}").to_lowercase());
            for f in field.fields() {
                let b = match model {
                    ModelArg::Real => betti_loop_model(Some(mn - 1), mn - 1, f, qmax, None)?,
                    ModelArg::Complex => omega2_sphere(mn - 1, f, qmax)?,
                    ModelArg::James => betti_loop_model(None, mn - 1, f, qmax, Some(d / n))?,
                };
                json["unreduced"][f.to_string()] = json!(b.to_json_map());
                text.push_str(&format!("homology over {f}:\n{}", b.to_text()));
            }
        }
        _ => return Err(usage("give exactly one of --space or --model")),
    }
    Ok(Output { json, text })
}

fn cmd_e1(d: usize, m: usize, n: usize, field: FieldArg, untruncated: bool) -> CmdResult {
    let range = if untruncated { JRange::Untruncated } else { JRange::Truncated };
    let engine = engine_for_e1(d, n, m * n);
    let mut json = json!({ "d": d, "m": m, "n": n, "j_range": range });
    let mut text = String::new();
    for f in field.fields() {
        let t = e1_table_with(&engine, d, m, n, f, range)?;
        json["entries"][f.to_string()] = json!(t.to_json_map());
        text.push_str(&format!("E1 over {f}:\n{}", t.to_text()));
    }
    Ok(Output { json, text })
}

fn cmd_verify(
    grid: Option<&str>,
    single: (Option<usize>, Option<usize>, Option<usize>),
    field: FieldArg,
    qmax: Option<usize>,
) -> CmdResult {
    let cells = match (grid, single) {
        (Some(g), (None, None, None)) => GridSpec::parse(g)?.cells(),
        (None, (Some(d), Some(m), Some(n))) => vec![GridCell { d, m, n }],
        _ => return Err(usage("give --grid or all of --d --m --n")),
    };
    let reports = verify_grid(&cells, &field.fields(), qmax)?;
    let passed = reports.iter().all(|r| r.passed());
    let failed: Vec<&_> = reports.iter().filter(|r| !r.passed()).collect();
    let mut text = format!("{} cells x fields checked, {} failing\n", reports.len(), failed.len());
    for r in &failed {
        for (c, q, lhs, rhs) in r.failures() {
            text.push_str(&format!("(d={}, m={}, n={}, {}) check {c}: q={q} lhs={lhs} rhs={rhs}\n", r.d, r.m, r.n, r.field));
        }
    }
    let json = json!({
        "grid": grid,
        "qmax": qmax,
        "passed": passed,
        "reports": reports,
    });
    let out = Output { json, text };
    if passed {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing {flag}")))
}

fn check_result(out: Output, ok: bool) -> CmdResult {
    if ok {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn run(cli: &Cli) -> CmdResult {
    let seed_for = |seed: Option<u64>| -> Result<u64, Failure> {
        match seed {
            Some(s) => Ok(s),
            None if cli.json => Err(usage("--seed is required for stochastic commands with --json")),
            None => Ok(0),
        }
    };
    match &cli.command {
        Command::Check(input) => cmd_check(input),
        Command::Jet { poly, n } => cmd_jet(poly, *n),
        Command::Stabilize { input, slot, tol } => {
            let sys = input.load()?;
            let out = match slot {
                Some(k) => stabilize_slot(&sys, *k)?,
                None => stabilize(&sys)?,
            };
            numeric_output(&out, *tol)
        }
        Command::Product { a, b, tol } => {
            let a = System::parse_json(&read_json_arg(a)?)?;
            let b = System::parse_json(&read_json_arg(b)?)?;
            numeric_output(&loop_product(&a, &b)?, *tol)
        }
        Command::Double { input, tol } => numeric_output(&double_to_hplus(&input.load()?)?, *tol),
        Command::Scan { input, resolution, csv } => {
            let sys = input.load()?;
            let sample = eval_real_loop(&sys, *resolution)?;
            let class = loop_class_mod2(&sample)?;
            if let Some(path) = csv {
                fs::write(path, sample.to_csv()).map_err(|e| usage(format!("cannot write {path}: {e}")))?;
            }
            let d = sys.space().d;
            let json = json!({
                "points": sample.points.len(),
                "max_step": sample.max_step(),
                "class": class,
                "d_mod_2": d % 2,
            });
            let text = format!("{} samples, max chordal step {:.4}, loop class {class} (d mod 2 = {})\n", sample.points.len(), sample.max_step(), d % 2);
            check_result(Output { json, text }, usize::from(class) == d % 2)
        }
        Command::Betti { space, model, d, m, n, field, qmax } => {
            cmd_betti(space.as_deref(), *model, (*d, *m, *n), *field, *qmax)
        }
        Command::E1 { d, m, n, field, untruncated } => cmd_e1(*d, *m, *n, *field, *untruncated),
        Command::Verify { grid, d, m, n, field, qmax, threads } => {
            if let Some(t) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(*t)
                    .build_global()
                    .map_err(|e| usage(e.to_string()))?;
            }
            cmd_verify(grid.as_deref(), (*d, *m, *n), *field, *qmax)
        }
        Command::Oracle { kind, j, qmax, d, m, n, trials, seed } => match kind {
            OracleKind::FoxNeuwirth => {
                let j = need(*j, "--j")?;
                let qmax = qmax.unwrap_or(j.saturating_sub(1));
                let b = fox_neuwirth_betti(j, qmax)?;
                let json = json!({ "j": j, "betti": b.dims });
                Ok(Output { json, text: format!("H_*(C_{j}(C); F2):\n{}", b.to_text()) })
            }
            OracleKind::Planted | OracleKind::Unplanted => {
                let (d, m, n) = (need(*d, "--d")?, need(*m, "--m")?, need(*n, "--n")?);
                let seed = seed_for(*seed)?;
                let r = match kind {
                    OracleKind::Planted => planted_root_fuzz(d, m, n, *trials, seed)?,
                    _ => unplanted_fuzz(d, m, n, *trials, seed)?,
                };
                let text = format!(
                    "{} trials (seed {seed}): {} members, {} confirmed non-members, {} failures\nstrata: {:?}\n",
                    r.trials,
                    r.member_count,
                    r.verified_exceptions,
                    r.failures.len(),
                    r.histogram
                );
                let ok = r.passed();
                check_result(Output { json: r.to_json(), text }, ok)
            }
        },
        Command::Pi0 { d, trials, seed } => {
            let seed = seed_for(*seed)?;
            let r = pi0_experiment_12(*d, *trials, seed)?;
            let text = format!(
                "labels {:?} (histogram {:?}); {} member paths of {} tried, {} label changes\n",
                r.labels(),
                r.histogram,
                r.paths.member_paths,
                r.paths.attempted,
                r.paths.violations
            );
            let ok = r.consistent();
            check_result(Output { json: serde_json::to_value(&r).expect("serializable"), text }, ok)
        }
    }
}

fn emit(out: &Output, json: bool) {
    if json {
        println!("{}", serde_json::to_string(&out.json).expect("serializable"));
    } else {
        print!("{}", out.text);
    }
}

fn diagnose(kind: &str, message: &str, json: bool) {
    if json {
        eprintln!("{}", json!({ "error": kind, "message": message }));
    } else {
        eprintln!("error: {message}");
    }
}

/// Reports of the batch and stochastic commands carry the command line that
/// reproduces them.
fn echo_command(cli: &Cli, result: &mut CmdResult) {
    if !matches!(cli.command, Command::Verify { .. } | Command::Oracle { .. } | Command::Pi0 { .. }) {
        return;
    }
    let out = match result {
        Ok(out) | Err(Failure::Check(out)) => out,
        _ => return,
    };
    if let Value::Object(map) = &mut out.json {
        let argv: Vec<String> = std::env::args().skip(1).collect();
        map.insert("command".into(), Value::from(argv.join(" ")));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut result = run(&cli);
    echo_command(&cli, &mut result);
    match result {
        Ok(out) => {
            emit(&out, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            emit(&out, cli.json);
            diagnose("check-failed", "a checked property does not hold", cli.json);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            diagnose("usage", &msg, cli.json);
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            diagnose(e.kind(), &e.to_string(), cli.json);
            match e {
                Error::InvalidInput(_) | Error::Parse(_) | Error::UnsupportedParameters(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

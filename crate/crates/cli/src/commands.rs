use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use pitchopt_core::ga::write_trace_csv;
use pitchopt_core::graph::Node;
use pitchopt_core::{
    build_graph, build_milp, gap_percent, incumbent_log, load_instance_file, profile_spectrum,
    solve_approx, solve_exact, solve_ga_traced, validate_sequence, Error, GaConfig, Instance,
    MilpOptions, Objective, PitchCatalog, PitchSequence, SolveOptions, SolveResult, Symmetry,
};
use serde::Serialize;

use crate::manifest::write_manifest;
use crate::{
    Command, ExportArgs, GaArgs, GraphArgs, InstanceArgs, NoiseArgs, OutputArgs, SolveArgs,
    TableArgs,
};

/// Bad arguments that clap cannot catch; exits with status 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

/// 2 for usage and input errors, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::Validation(_) | Error::Range(_) | Error::Parse { .. } => 2,
                Error::Infeasible(_) | Error::Io(_) => 1,
            };
        }
    }
    1
}

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Noise(a) => noise(&a),
        Command::SolveExact(a) => solve(&a, Objective::Exact),
        Command::SolveApprox(a) => solve(&a, Objective::Approx),
        Command::Ga(a) => ga(&a),
        Command::ExportLp(a) => export_lp(&a),
        Command::Graph(a) => graph(&a),
        Command::Table(a) => table(&a),
    }
}

struct Loaded {
    instance: Instance,
    ga: GaConfig,
    label: String,
}

fn parse_triple(text: &str) -> Result<(usize, usize, usize)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let nums: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
    match nums.as_deref() {
        Some(&[n, lo, hi]) => Ok((n, lo, hi)),
        _ => usage(format!("--triple expects N,MIN,MAX, got `{text}`")),
    }
}

fn load_file(path: &Path) -> Result<Loaded> {
    let file = load_instance_file(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Loaded {
        instance: file.instance,
        ga: file.ga,
        label: path.display().to_string(),
    })
}

fn load_triple(text: &str) -> Result<Loaded> {
    let (n, lo, hi) = parse_triple(text)?;
    Ok(Loaded {
        instance: Instance::triple(n, lo, hi)?,
        ga: GaConfig::default(),
        label: format!("({n},{lo},{hi})"),
    })
}

fn load(args: &InstanceArgs) -> Result<Option<Loaded>> {
    match (&args.instance, &args.triple) {
        (Some(path), _) => load_file(path).map(Some),
        (None, Some(t)) => load_triple(t).map(Some),
        (None, None) => Ok(None),
    }
}

fn require(args: &InstanceArgs) -> Result<Loaded> {
    match load(args)? {
        Some(l) => Ok(l),
        None => usage("one of --instance or --triple is required"),
    }
}

fn time_limit(secs: Option<f64>) -> Result<Option<Duration>> {
    match secs {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => usage(format!("--time-limit must be positive, got {s}")),
    }
}

fn fmt_time(d: Duration, min_sec: bool) -> String {
    if !min_sec {
        return format!("{:.3}", d.as_secs_f64());
    }
    let total = d.as_secs();
    let (h, m, s) = (total / 3600, total / 60 % 60, total % 60);
    if h > 0 {
        format!("{h}:{m:02}:{s:02}")
    } else {
        format!("{m}:{s:02}")
    }
}

fn out_dir(output: &OutputArgs) -> Result<Option<&Path>> {
    let Some(dir) = output.out.as_deref() else {
        return Ok(None);
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(Some(dir))
}

fn write_file(dir: &Path, name: &str, contents: impl AsRef<[u8]>) -> Result<PathBuf> {
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    write_file(dir, name, serde_json::to_string_pretty(value)?)
}

#[derive(Debug, Serialize)]
struct NoiseSummary {
    sequence: String,
    pitches: usize,
    tire_length: u64,
    harmonics: usize,
    exact_noise: f64,
    exact_harmonic: usize,
    approx_noise: f64,
    approx_harmonic: usize,
    ratio: f64,
    valid: Option<bool>,
    violations: Vec<String>,
}

fn noise(args: &NoiseArgs) -> Result<ExitCode> {
    let loaded = load(&args.instance)?;
    let catalog = loaded
        .as_ref()
        .map_or_else(PitchCatalog::reference, |l| l.instance.catalog().clone());
    let seq = PitchSequence::parse(args.sequence.trim(), &catalog)?;
    if let Some(l) = &loaded {
        if l.instance.pitches() != seq.len() {
            return usage(format!(
                "sequence has {} pitches, instance has N = {}",
                seq.len(),
                l.instance.pitches()
            ));
        }
    }
    let inst = match &loaded {
        Some(l) => l.instance.clone(),
        None => Instance::new(catalog.clone(), seq.len())?,
    };
    let harmonics = args.harmonics.unwrap_or(inst.harmonics());
    if harmonics == 0 {
        return usage("--harmonics must be at least 1");
    }
    let spec = profile_spectrum(&seq, &catalog, harmonics)?;
    let exact = Objective::Exact.of(&spec);
    let approx = Objective::Approx.of(&spec);
    let report = loaded.as_ref().map(|_| validate_sequence(&seq, &inst));
    let summary = NoiseSummary {
        sequence: seq.to_string(),
        pitches: seq.len(),
        tire_length: seq.total_length(),
        harmonics,
        exact_noise: exact.value,
        exact_harmonic: exact.harmonic,
        approx_noise: approx.value,
        approx_harmonic: approx.harmonic,
        ratio: exact.value / approx.value,
        valid: report.as_ref().map(|r| r.passes(inst.cyclic())),
        violations: report.map(|r| r.violations).unwrap_or_default(),
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        println!("sequence      {}", summary.sequence);
        println!("tire length   {} units", summary.tire_length);
        println!("exact noise   {:.3} (k={})", exact.value, exact.harmonic);
        println!("approx noise  {:.3} (k={})", approx.value, approx.harmonic);
        println!("exact/approx  {:.3}", summary.ratio);
        if let Some(valid) = summary.valid {
            println!("valid         {}", if valid { "yes" } else { "no" });
            for v in &summary.violations {
                println!("  {v}");
            }
        }
    }

    if let Some(dir) = out_dir(&args.output)? {
        let mut csv = Vec::new();
        spec.write_csv(&mut csv)?;
        write_file(dir, "spectrum.csv", csv)?;
        write_json(dir, "noise.json", &summary)?;
        if args.plot {
            write_file(
                dir,
                "spectrum.gp",
                plot_script(
                    "spectrum.csv",
                    "spectrum.png",
                    &format!("sequence {}", summary.sequence),
                    "harmonic k",
                    "modulus",
                    &[(1, 4, "modulus", "impulses")],
                ),
            )?;
        }
        write_manifest(dir, "noise", loaded.map(|l| l.label), args)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn plot_script(
    data: &str,
    image: &str,
    title: &str,
    xlabel: &str,
    ylabel: &str,
    series: &[(usize, usize, &str, &str)],
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set terminal pngcairo size 900,500");
    let _ = writeln!(s, "set output '{image}'");
    let _ = writeln!(s, "set title '{title}'");
    let _ = writeln!(s, "set xlabel '{xlabel}'");
    let _ = writeln!(s, "set ylabel '{ylabel}'");
    let plots: Vec<String> = series
        .iter()
        .map(|(x, y, name, style)| {
            format!("'{data}' every ::1 using {x}:{y} with {style} title '{name}'")
        })
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}

fn symmetry(text: &str) -> Result<Symmetry> {
    Ok(text.parse()?)
}

fn print_result(res: &SolveResult, label: &str, min_sec: bool, status: &str) {
    println!("instance      {label}");
    println!("sequence      {}", res.best_sequence);
    println!(
        "exact noise   {:.3} (k={})",
        res.exact_noise, res.exact_harmonic
    );
    println!(
        "approx noise  {:.3} (k={})",
        res.approx_noise, res.approx_harmonic
    );
    println!("trailing j    {}", res.trailing);
    println!("tire length   {} units", res.best_sequence.total_length());
    println!("nodes         {}", res.nodes_explored);
    let unit = if min_sec { "" } else { " s" };
    println!("time          {}{unit}", fmt_time(res.wall_time, min_sec));
    println!("status        {status}");
}

/// Headers are written explicitly so an empty table still has one.
fn headerless<W: std::io::Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

fn incumbent_csv(res: &SolveResult) -> Result<Vec<u8>> {
    let mut w = headerless(Vec::new());
    w.write_record(["elapsed_secs", "value", "exact_noise", "sequence"])?;
    for inc in incumbent_log(res) {
        w.serialize((inc.elapsed_secs, inc.value, inc.exact_noise, &inc.sequence))?;
    }
    Ok(w.into_inner()?)
}

fn solve(args: &SolveArgs, objective: Objective) -> Result<ExitCode> {
    let loaded = require(&args.instance)?;
    let opts = SolveOptions {
        symmetry: symmetry(&args.symmetry)?,
        seed_upper_bound: args.upper_bound,
        time_limit: time_limit(args.time_limit)?,
        ..SolveOptions::default()
    };
    let res = match objective {
        Objective::Exact => solve_exact(&loaded.instance, &opts)?,
        Objective::Approx => solve_approx(&loaded.instance, &opts)?,
    };
    for inc in incumbent_log(&res) {
        eprintln!(
            "incumbent {:.3} {} at {:.3}s",
            inc.value, inc.sequence, inc.elapsed_secs
        );
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&res)?);
    } else {
        let status = if res.optimal { "optimal" } else { "time limit" };
        print_result(&res, &loaded.label, args.output.min_sec, status);
    }
    if let Some(dir) = out_dir(&args.output)? {
        write_json(dir, "result.json", &res)?;
        write_file(dir, "incumbents.csv", incumbent_csv(&res)?)?;
        let command = match objective {
            Objective::Exact => "solve-exact",
            Objective::Approx => "solve-approx",
        };
        write_manifest(dir, command, Some(loaded.label), args)?;
    }
    if res.optimal {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("time limit reached before the search finished");
        Ok(ExitCode::from(1))
    }
}

fn ga(args: &GaArgs) -> Result<ExitCode> {
    let loaded = require(&args.instance)?;
    let mut cfg = loaded.ga.clone();
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.time_limit = time_limit(args.time_limit)?;
    let (res, trace) = solve_ga_traced(&loaded.instance, &cfg)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&res)?);
    } else {
        print_result(&res, &loaded.label, args.output.min_sec, "heuristic");
        println!("generations   {}", trace.len());
    }
    if let Some(dir) = out_dir(&args.output)? {
        write_json(dir, "result.json", &res)?;
        let mut csv = Vec::new();
        write_trace_csv(&trace, &mut csv)?;
        write_file(dir, "trace.csv", csv)?;
        if args.plot {
            write_file(
                dir,
                "trace.gp",
                plot_script(
                    "trace.csv",
                    "trace.png",
                    &format!("GA on {}", loaded.label),
                    "generation",
                    "exact noise",
                    &[
                        (1, 2, "best", "lines"),
                        (1, 3, "mean", "lines"),
                        (1, 4, "best so far", "lines"),
                    ],
                ),
            )?;
        }
        write_manifest(dir, "ga", Some(loaded.label), &(args, &cfg))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn export_lp(args: &ExportArgs) -> Result<ExitCode> {
    let loaded = require(&args.instance)?;
    let inst = &loaded.instance;
    if args.j > inst.max_trailing() {
        return usage(format!(
            "--j must be in 0..={} for this instance, got {}",
            inst.max_trailing(),
            args.j
        ));
    }
    let mut opts = if args.basic {
        MilpOptions::basic()
    } else {
        MilpOptions::default()
    };
    opts.symmetry_fix = symmetry(&args.symmetry)? == Symmetry::FixFirst;
    let model = build_milp(inst, args.j, opts)?;
    let summary = format!(
        "tire length {} units, {} binaries, {} continuous, {} rows",
        model.period(),
        model.binary_count(),
        model.continuous_count(),
        model.rows().len()
    );
    match out_dir(&args.output)? {
        Some(dir) => {
            let path = dir.join(format!("model_j{}.lp", args.j));
            model
                .export_model(&path)
                .with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
            println!("wrote {}", path.display());
            write_manifest(dir, "export-lp", Some(loaded.label), args)?;
        }
        None => {
            eprintln!("{summary}");
            std::io::stdout().write_all(model.to_lp_string().as_bytes())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn graph(args: &GraphArgs) -> Result<ExitCode> {
    let loaded = require(&args.instance)?;
    let inst = &loaded.instance;
    let period = match (args.period, args.j) {
        (Some(0), _) => return usage("--period must be positive"),
        (Some(t), _) => t,
        (None, j) => {
            let j = j.unwrap_or(0);
            if j > inst.max_trailing() {
                return usage(format!(
                    "--j must be in 0..={} for this instance, got {j}",
                    inst.max_trailing()
                ));
            }
            inst.tire_length(j)?
        }
    };
    let g = build_graph(inst.catalog(), period, inst.harmonics());
    let sources = g.arcs().iter().filter(|a| a.from == Node::Source).count();
    let sinks = g.arcs().iter().filter(|a| a.to == Node::Sink).count();
    println!("tire length   {period} units");
    println!("nodes         {}", g.node_count());
    println!("arcs          {}", g.arc_count());
    println!("source arcs   {sources}");
    println!("sink arcs     {sinks}");
    println!(
        "paths (N={})  {}",
        inst.pitches(),
        g.count_paths(inst.pitches())
    );
    if let Some(dir) = out_dir(&args.output)? {
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf, args.weights)?;
        let path = write_file(dir, &format!("graph_T{period}.txt"), buf)?;
        println!("wrote {}", path.display());
        write_manifest(dir, "graph", Some(loaded.label), args)?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Serialize)]
struct TableRow {
    instance: String,
    optimal_noise: String,
    optimal_sequence: String,
    exact_time: String,
    approx_noise: String,
    real_noise: String,
    approx_sequence: String,
    gap_percent: String,
    approx_time: String,
    status: String,
}

fn failed_row(label: &str, err: &anyhow::Error) -> TableRow {
    let mut row = empty_row(label);
    row.status = match err.downcast_ref::<Error>() {
        Some(Error::Infeasible(_)) => "infeasible".into(),
        _ => format!("error: {err}"),
    };
    row
}

fn empty_row(label: &str) -> TableRow {
    TableRow {
        instance: label.to_string(),
        optimal_noise: String::new(),
        optimal_sequence: String::new(),
        exact_time: String::new(),
        approx_noise: String::new(),
        real_noise: String::new(),
        approx_sequence: String::new(),
        gap_percent: String::new(),
        approx_time: String::new(),
        status: "ok".into(),
    }
}

fn solve_row(loaded: &Loaded, opts: &SolveOptions, min_sec: bool) -> TableRow {
    let mut row = empty_row(&loaded.label);
    let mut problems = Vec::new();
    let exact = solve_exact(&loaded.instance, opts);
    let approx = solve_approx(&loaded.instance, opts);
    for res in [&exact, &approx] {
        match res {
            Ok(r) if !r.optimal => problems.push("timeout".to_string()),
            Ok(_) => {}
            Err(Error::Infeasible(_)) => problems.push("infeasible".to_string()),
            Err(e) => problems.push(format!("error: {e}")),
        }
    }
    if let Ok(e) = &exact {
        row.optimal_noise = format!("{:.3}", e.exact_noise);
        row.optimal_sequence = e.best_sequence.to_string();
        row.exact_time = fmt_time(e.wall_time, min_sec);
    }
    if let Ok(a) = &approx {
        row.approx_noise = format!("{:.3}", a.approx_noise);
        row.real_noise = format!("{:.3}", a.exact_noise);
        row.approx_sequence = a.best_sequence.to_string();
        row.approx_time = fmt_time(a.wall_time, min_sec);
    }
    if let (Ok(e), Ok(a)) = (&exact, &approx) {
        row.gap_percent = format!("{:.3}", gap_percent(a.exact_noise, e.exact_noise));
    }
    problems.dedup();
    if !problems.is_empty() {
        row.status = problems.join("; ");
    }
    row
}

fn table(args: &TableArgs) -> Result<ExitCode> {
    // an infeasible instance becomes a marked row; anything else is fatal
    let keep = |label: String, loaded: Result<Loaded>| match loaded {
        Err(e) if exit_code(&e) == 1 => Ok(Err((label, e))),
        other => other.map(Ok),
    };
    let mut rows_in = Vec::new();
    for path in &args.instances {
        rows_in.push(keep(path.display().to_string(), load_file(path))?);
    }
    for t in &args.triples {
        let (n, lo, hi) = parse_triple(t)?;
        rows_in.push(keep(format!("({n},{lo},{hi})"), load_triple(t))?);
    }
    let opts = SolveOptions {
        time_limit: time_limit(args.time_limit)?,
        ..SolveOptions::default()
    };
    let mut out = headerless(std::io::stdout());
    let mut saved = headerless(Vec::new());
    let header = [
        "instance",
        "optimal_noise",
        "optimal_sequence",
        "exact_time",
        "approx_noise",
        "real_noise",
        "approx_sequence",
        "gap_percent",
        "approx_time",
        "status",
    ];
    out.write_record(header)?;
    saved.write_record(header)?;
    out.flush()?;
    let mut all_ok = true;
    for loaded in &rows_in {
        let row = match loaded {
            Ok(l) => solve_row(l, &opts, args.output.min_sec),
            Err((label, e)) => failed_row(label, e),
        };
        all_ok &= row.status == "ok";
        out.serialize(&row)?;
        out.flush()?;
        saved.serialize(&row)?;
    }
    if let Some(dir) = out_dir(&args.output)? {
        write_file(dir, "table.csv", saved.into_inner()?)?;
        write_manifest(dir, "table", None, args)?;
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

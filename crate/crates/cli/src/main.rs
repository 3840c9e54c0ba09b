use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use orn_core::analysis::{
    congestion_report, guaranteed_throughput, inflate_demand, permutation_demand, uniform_demand,
    worst_permutation_demand, AdversarySearch,
};
use orn_core::bounds::{tradeoff_curve, write_curve_csv, CurveOptions};
use orn_core::io::{format_demand, parse_demand, read_schedule_json, write_edge_loads_csv, write_schedule_json};
use orn_core::model::{ConnectionSchedule, RoutingScheme, ScheduleFamily, Slot};
use orn_core::rational::{format_rational, parse_rational, Rational};
use orn_core::routing::{scheme_for_schedule, select_design, Design, EarliestArrivalRouting, EbsRouting, VbsRouting};
use orn_core::schedules::{
    doubled_phase_schedule, ebs_schedule, primitive_root_schedule, vbs_schedule, EbsParams,
    PrimitiveRootParams, VbsParams,
};

/// Oblivious reconfigurable network designs: build schedules, route, verify
/// throughput and export the latency tradeoff curve.
#[derive(Parser)]
#[command(name = "orn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a connection schedule as a JSON document.
    Schedule(ScheduleArgs),
    /// Print the weighted paths routing one request.
    Route(RouteArgs),
    /// Certify the guaranteed throughput of a schedule's routing scheme.
    ///
    /// Exits with status 2 when the requested rate is not guaranteed.
    Verify(VerifyArgs),
    /// Export samples of the throughput/latency tradeoff bound as CSV.
    Curve(CurveArgs),
    /// Inflate a demand matrix file to row and column sums exactly equal to a rate.
    Inflate(InflateArgs),
    /// Pick the EBS or VBS design for a target rate and node count.
    Design(DesignArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Ebs,
    Vbs,
    Proot,
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Coordinate base n (EBS: N = n^l, VBS: N = n^(h+1) with n prime).
    #[arg(long = "n")]
    base: Option<usize>,
    /// Node count N; alternative to --n, and required for proot.
    #[arg(long)]
    nodes: Option<u64>,
    /// EBS order l.
    #[arg(long)]
    l: Option<u32>,
    /// VBS degree h.
    #[arg(long)]
    h: Option<u32>,
    /// VBS hop-efficient fraction delta, as p/q.
    #[arg(long)]
    delta: Option<String>,
    /// Primitive root x (default: smallest).
    #[arg(long)]
    root: Option<u64>,
    /// Primitive-root schedule period (default N - 1).
    #[arg(long)]
    period: Option<usize>,
    /// Repeat every phase twice for a degree-d network (requires d < n - 1).
    #[arg(long = "double-phases", value_name = "D")]
    double_phases: Option<usize>,
    /// Omit the explicit permutation table.
    #[arg(long)]
    no_table: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RouteArgs {
    #[arg(long)]
    schedule: PathBuf,
    #[arg(long)]
    src: usize,
    #[arg(long)]
    dst: usize,
    #[arg(long, allow_hyphen_values = true)]
    slot: Slot,
    /// Print every path, not just the summary.
    #[arg(long)]
    list_paths: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeKind {
    Auto,
    Ebs,
    Vbs,
    Earliest,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    schedule: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    scheme: SchemeKind,
    /// Requested rate as p/q.
    #[arg(long)]
    rate: String,
    /// Write steady-state per-edge loads of a demand at the requested rate.
    #[arg(long)]
    loads_csv: Option<PathBuf>,
    /// Demand for --loads-csv: `witness` (the certificate's permutation),
    /// `uniform`, or a demand matrix file.
    #[arg(long, default_value = "witness")]
    demand: String,
    /// Also search permutation demands for the worst steady-state load.
    #[arg(long)]
    adversary: bool,
    /// Seed for the adversary's hill climbing.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long)]
    nodes: f64,
    /// Largest 1/r sampled, as p/q or an integer.
    #[arg(long, default_value = "12")]
    max_inv_rate: String,
    #[arg(long, default_value_t = 500)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InflateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    rate: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DesignArgs {
    #[arg(long)]
    rate: String,
    #[arg(long)]
    nodes: u64,
    /// Write the chosen schedule here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::FAILURE;
    }
    let result = match cli.command {
        Command::Schedule(args) => cmd_schedule(args),
        Command::Route(args) => cmd_route(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Inflate(args) => cmd_inflate(args),
        Command::Design(args) => cmd_design(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("ORN_THREADS") {
        let threads: usize = value
            .parse()
            .with_context(|| format!("ORN_THREADS must be a positive integer, got {value:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_schedule(path: &Path) -> Result<ConnectionSchedule> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_schedule_json(io::BufReader::new(file)).with_context(|| format!("reading schedule {}", path.display()))
}

fn rate_arg(text: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("invalid rate {text:?}"))
}

fn cmd_schedule(args: ScheduleArgs) -> Result<ExitCode> {
    let mut schedule = match args.family {
        Family::Ebs => {
            let l = args.l.context("--l is required for ebs")?;
            let params = match (args.base, args.nodes) {
                (Some(n), _) => EbsParams::new(l, n)?,
                (None, Some(nodes)) => EbsParams::for_nodes(nodes, l)?,
                (None, None) => bail!("ebs needs --n or --nodes"),
            };
            ebs_schedule(&params)?
        }
        Family::Vbs => {
            let h = args.h.context("--h is required for vbs")?;
            let delta = rate_arg(args.delta.as_deref().context("--delta is required for vbs")?)?;
            let params = match (args.base, args.nodes) {
                (Some(n), _) => VbsParams::new(h, n, delta)?,
                (None, Some(nodes)) => VbsParams::for_nodes(nodes, h, delta)?,
                (None, None) => bail!("vbs needs --n or --nodes"),
            };
            vbs_schedule(&params)?
        }
        Family::Proot => {
            let nodes = args.nodes.context("--nodes is required for proot")?;
            let params = match args.root {
                Some(x) => PrimitiveRootParams::new(nodes, x)?,
                None => PrimitiveRootParams::smallest(nodes)?,
            };
            primitive_root_schedule(&params, args.period)?
        }
    };
    if let Some(d) = args.double_phases {
        schedule = doubled_phase_schedule(&schedule, d)?;
    }
    let mut out = output(args.out.as_deref())?;
    if args.no_table {
        let doc = orn_core::io::ScheduleDocument::from_schedule(&schedule, false);
        serde_json::to_writer_pretty(&mut out, &doc)?;
    } else {
        write_schedule_json(&schedule, &mut out)?;
    }
    writeln!(out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_route(args: RouteArgs) -> Result<ExitCode> {
    let schedule = load_schedule(&args.schedule)?;
    let n = schedule.node_count();
    if args.src >= n || args.dst >= n {
        bail!("nodes must lie in [0, {n})");
    }
    let scheme = scheme_for_schedule(&schedule)?;
    let paths = scheme.paths(args.src, args.dst, args.slot);
    let max_latency = paths.iter().map(|(p, _)| p.latency()).max().unwrap_or(0);
    let max_hops = paths.iter().map(|(p, _)| p.hops()).max().unwrap_or(0);
    let mut out = output(None)?;
    writeln!(
        out,
        "{} paths from ({}, {}) to node {}: max latency {max_latency}, max hops {max_hops}",
        paths.len(),
        args.src,
        args.slot,
        args.dst
    )?;
    if args.list_paths {
        writeln!(out, "weight\tlatency\thops\tend\tsteps")?;
        for (path, weight) in &paths {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                format_rational(weight),
                path.latency(),
                path.hops(),
                path.endpoint(&schedule),
                path.step_string()
            )?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn build_scheme(kind: SchemeKind, schedule: &ConnectionSchedule) -> Result<Box<dyn RoutingScheme>> {
    Ok(match kind {
        SchemeKind::Auto => scheme_for_schedule(schedule)?,
        SchemeKind::Ebs => Box::new(EbsRouting::new(schedule)?),
        SchemeKind::Vbs => Box::new(VbsRouting::new(schedule)?),
        SchemeKind::Earliest => Box::new(EarliestArrivalRouting::new(schedule)?),
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let schedule = load_schedule(&args.schedule)?;
    let rate = rate_arg(&args.rate)?;
    let scheme = build_scheme(args.scheme, &schedule)?;
    let cert = guaranteed_throughput(scheme.as_ref(), &schedule)?;
    let guaranteed = rate <= cert.rate;
    let mut out = output(None)?;
    writeln!(out, "schedule: {} N={} T={}", schedule.family().name(), schedule.node_count(), schedule.period())?;
    writeln!(out, "guaranteed throughput r* = {}", format_rational(&cert.rate))?;
    writeln!(out, "witness edge: {}", cert.witness_edge)?;
    writeln!(out, "witness permutation: {:?}", cert.witness_permutation)?;
    writeln!(out, "matching value: {}", format_rational(&cert.matching_value))?;
    writeln!(
        out,
        "requested rate {}: {}",
        format_rational(&rate),
        if guaranteed { "guaranteed" } else { "NOT guaranteed" }
    )?;

    if args.adversary {
        let search = AdversarySearch { seed: args.seed, ..AdversarySearch::default() };
        let worst = worst_permutation_demand(scheme.as_ref(), &schedule, rate, search)?;
        writeln!(
            out,
            "adversary ({}): permutation {:?} max load {}",
            if worst.exhaustive { "exhaustive" } else { "hill climbing" },
            worst.permutation,
            format_rational(&worst.max_load)
        )?;
    }

    if let Some(path) = &args.loads_csv {
        let n = schedule.node_count();
        let demand = match args.demand.as_str() {
            "witness" => permutation_demand(&cert.witness_permutation, rate, 1)?,
            "uniform" => uniform_demand(n, rate, 1)?,
            file => {
                let text = std::fs::read_to_string(file).with_context(|| format!("reading demand {file}"))?;
                parse_demand(&text).with_context(|| format!("parsing demand {file}"))?
            }
        };
        let report = congestion_report(scheme.as_ref(), &demand, &schedule)?;
        let mut csv_out = output(Some(path))?;
        write_edge_loads_csv(&report, &mut csv_out)?;
        csv_out.flush()?;
        writeln!(
            out,
            "edge loads written to {} (max load {} on {})",
            path.display(),
            format_rational(&report.max_load),
            report.worst_edge
        )?;
    }
    out.flush()?;
    Ok(if guaranteed { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_curve(args: CurveArgs) -> Result<ExitCode> {
    let options = CurveOptions {
        steps: args.steps,
        ..CurveOptions::new(args.nodes, rate_arg(&args.max_inv_rate)?)
    };
    let points = tradeoff_curve(&options)?;
    let mut out = output(args.out.as_deref())?;
    write_curve_csv(&points, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_inflate(args: InflateArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let demand = parse_demand(&text).with_context(|| format!("parsing {}", args.input.display()))?;
    let inflated = inflate_demand(&demand, rate_arg(&args.rate)?)?;
    let mut out = output(args.out.as_deref())?;
    out.write_all(format_demand(&inflated).as_bytes())?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_design(args: DesignArgs) -> Result<ExitCode> {
    let rate = rate_arg(&args.rate)?;
    let choice = select_design(rate, args.nodes)?;
    let d = &choice.decomposition;
    let mut out = output(None)?;
    writeln!(out, "rate {}: h = {}, eps = {}, delta = 4 eps = {}", format_rational(&rate), d.h, d.eps, choice.delta)?;
    match &choice.design {
        Design::Ebs(p) => writeln!(out, "design: EBS l = {}, n = {}, latency <= {}", p.order, p.base, 2 * p.period())?,
        Design::Vbs(p) => writeln!(
            out,
            "design: VBS h = {}, n = {}, delta = {}, Q = {}, latency <= {}",
            p.h,
            p.base,
            p.delta,
            p.q,
            p.max_latency()
        )?,
    }
    if let Some(reason) = &choice.fallback {
        writeln!(out, "note: VBS not applicable at this N ({reason}); using EBS")?;
    }
    out.flush()?;
    if let Some(path) = &args.out {
        let schedule = choice.design.schedule()?;
        let mut file = output(Some(path))?;
        write_schedule_json(&schedule, &mut file)?;
        writeln!(file)?;
        file.flush()?;
    }
    debug_assert!(!matches!(choice.design, Design::Vbs(_)) || matches!(choice.design.schedule()?.family(), ScheduleFamily::Vbs { .. }));
    Ok(ExitCode::SUCCESS)
}

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hypermatch::io::{apply_weight_policy, format_matching, parse_matching, write_hgr};
use hypermatch::oracle::exact_matching_capped;
use hypermatch::{
    approximation_ratio, run_variant, verify_matching, ExactResult, Hypergraph, IsolatedVertices,
    Matching, ParallelConfig, ParallelVariant, RunReport, Variant, WeightStream,
};

use crate::args::{
    BenchArgs, FormatArg, GenerateArgs, ModeArg, OracleArgs, OracleOpts, RunArgs, StreamArgs,
    VerifyArgs,
};
use crate::instance::{load, weight_policy, Source};
use crate::report::{append_row, write_report, Measures, Row};

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn build_stream(seed: u64, args: &StreamArgs) -> Result<WeightStream> {
    Ok(match args.mode {
        ModeArg::Perturb => {
            WeightStream::new(seed, args.generator).with_noise(args.noise.low, args.noise.high)?
        }
        ModeArg::Uniform => WeightStream::uniform(seed, args.generator),
    })
}

fn parallel_config(workers: usize, args: &StreamArgs) -> ParallelConfig {
    let mut c = ParallelConfig::new(ParallelVariant::Crcw, workers)
        .with_grain(args.grain)
        .with_assertions(args.assert_crew);
    c.max_rounds = args.max_rounds;
    c
}

fn exact_if_small(h: &Hypergraph, opts: &OracleOpts) -> Result<Option<ExactResult>> {
    if !opts.oracle {
        return Ok(None);
    }
    if h.num_edges() > opts.oracle_cap {
        log::warn!(
            "skipping the exact oracle: {} edges exceed the cap of {}",
            h.num_edges(),
            opts.oracle_cap
        );
        return Ok(None);
    }
    Ok(Some(exact_matching_capped(
        h,
        h.base_weights(),
        opts.oracle_cap,
    )?))
}

/// Runs and verifies one matcher. Verification failure is an error.
fn execute(
    h: &Hypergraph,
    variant: Variant,
    stream: &WeightStream,
    config: &ParallelConfig,
    exact: Option<&ExactResult>,
) -> Result<(Matching, RunReport, Option<f64>)> {
    let (m, report) = run_variant(h, variant, stream, config)?;
    let check = verify_matching(h, &m.matched_edges)?;
    if !check.is_valid() {
        bail!(
            "verification failed for {variant}: disjoint={} maximal={}",
            check.disjoint,
            check.maximal
        );
    }
    let ratio = match exact {
        Some(x) if x.optimal_weight > 0.0 => Some(approximation_ratio(h, &m, x)?),
        _ => None,
    };
    Ok((m, report, ratio))
}

fn emit(path: &Path, m: &Matching) -> Result<()> {
    std::fs::write(path, format_matching(m))
        .with_context(|| format!("cannot write '{}'", path.display()))
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<bool> {
    let h = load(&args.instance, &args.input)?;
    let workers = args.workers.unwrap_or_else(default_workers);
    let stream = build_stream(args.seed, &args.stream)?;
    let config = parallel_config(workers, &args.stream);
    let exact = exact_if_small(&h, &args.oracle)?;

    let result = execute(&h, args.variant, &stream, &config, exact.as_ref());
    let row = Row {
        instance: args.instance.clone(),
        variant: args.variant,
        workers,
        seed: args.seed,
        generator: args.stream.generator,
        repeat: 0,
        outcome: match &result {
            Ok((m, r, ratio)) => Ok(Measures::new(m, r, *ratio)),
            Err(e) => Err(format!("{e:#}")),
        },
    };
    if let Some(path) = &args.csv {
        append_row(path, &row)?;
    }
    let (m, report, ratio) = result?;

    let s = h.stats();
    writeln!(out, "instance: {}", args.instance)?;
    writeln!(
        out,
        "n={} m={} pins={} rank={} max_degree={}",
        s.n, s.m, s.kappa, s.rank, s.max_degree
    )?;
    writeln!(
        out,
        "variant={} workers={} seed={} generator={}",
        args.variant, report.workers, args.seed, args.stream.generator
    )?;
    writeln!(out, "rounds: {}", report.rounds)?;
    writeln!(out, "size: {}", m.len())?;
    writeln!(out, "weight: {:.6}", m.total_weight)?;
    writeln!(out, "time_ms: {:.3}", report.wall_time.as_secs_f64() * 1e3)?;
    writeln!(
        out,
        "edge_visits: {} pin_visits: {}",
        report.counters.total_edge_visits, report.counters.total_pin_visits
    )?;
    for (i, r) in report.per_round.iter().enumerate() {
        writeln!(
            out,
            "round {}: matched {}, deactivated {}",
            i + 1,
            r.matched,
            r.deactivated
        )?;
    }
    writeln!(out, "verified: disjoint, maximal")?;
    if let (Some(ratio), Some(x)) = (ratio, &exact) {
        writeln!(
            out,
            "ratio_vs_oracle: {ratio:.6} (optimum {:.6})",
            x.optimal_weight
        )?;
    }
    if let Some(path) = &args.emit_matching {
        emit(path, &m)?;
    }
    Ok(true)
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<bool> {
    let workers = if args.workers.is_empty() {
        vec![default_workers()]
    } else {
        args.workers.clone()
    };
    let mut rows = Vec::new();
    for spec in &args.instances {
        let loaded = load(spec, &args.input).and_then(|h| {
            let exact = exact_if_small(&h, &args.oracle)?;
            Ok((h, exact))
        });
        for &variant in &args.variants {
            for &w in &workers {
                for &seed in &args.seeds {
                    for repeat in 0..args.repeats {
                        let outcome = match &loaded {
                            Err(e) => Err(format!("{e:#}")),
                            Ok((h, exact)) => build_stream(seed, &args.stream)
                                .and_then(|stream| {
                                    let config = parallel_config(w, &args.stream);
                                    execute(h, variant, &stream, &config, exact.as_ref())
                                })
                                .map(|(m, r, ratio)| Measures::new(&m, &r, ratio))
                                .map_err(|e| format!("{e:#}")),
                        };
                        if let Err(e) = &outcome {
                            log::error!("{spec} {variant} workers={w} seed={seed}: {e}");
                        }
                        rows.push(Row {
                            instance: spec.clone(),
                            variant,
                            workers: w,
                            seed,
                            generator: args.stream.generator,
                            repeat,
                            outcome,
                        });
                    }
                }
            }
        }
        log::info!("finished {spec}");
    }
    match &args.csv {
        Some(path) => write_report(
            std::fs::File::create(path)
                .with_context(|| format!("cannot create '{}'", path.display()))?,
            &rows,
        )?,
        None => write_report(&mut *out, &rows)?,
    }
    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    if failed > 0 {
        log::error!("{failed} of {} runs failed", rows.len());
    }
    Ok(failed == 0)
}

pub fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<bool> {
    let source = Source::parse(&args.spec)?;
    if let Source::File(path) = source {
        bail!("'{path}' is not a generator spec (expected tight:... or random:...)");
    }
    let h = source.build(FormatArg::Auto, IsolatedVertices::Reject)?;
    let h = apply_weight_policy(h, weight_policy(args.weights, args.weight_seed));
    let text = write_hgr(&h);
    match &args.output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write '{}'", path.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(true)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let h = load(&args.instance, &args.input)?;
    let text = std::fs::read_to_string(&args.matching)
        .with_context(|| format!("cannot read '{}'", args.matching.display()))?;
    let edges = parse_matching(&text)?;
    let r = verify_matching(&h, &edges)?;
    let yes_no = |b: bool| if b { "yes" } else { "NO" };
    writeln!(out, "edges: {}", edges.len())?;
    writeln!(out, "disjoint: {}", yes_no(r.disjoint))?;
    writeln!(out, "maximal: {}", yes_no(r.maximal))?;
    writeln!(out, "weight: {:.6}", r.weight)?;
    writeln!(out, "{}", if r.is_valid() { "valid" } else { "INVALID" })?;
    Ok(r.is_valid())
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<bool> {
    let h = load(&args.instance, &args.input)?;
    let x = exact_matching_capped(&h, h.base_weights(), args.cap)?;
    writeln!(out, "optimum: {:.6}", x.optimal_weight)?;
    writeln!(out, "size: {}", x.optimal_edges.len())?;
    writeln!(out, "explored: {}", x.explored)?;
    let ids: Vec<String> = x.optimal_edges.iter().map(|e| e.to_string()).collect();
    writeln!(out, "edges: {}", ids.join(" "))?;
    if let Some(path) = &args.emit_matching {
        let m = Matching {
            per_round_matched: Vec::new(),
            rounds_used: 0,
            total_weight: x.optimal_weight,
            matched_edges: x.optimal_edges,
        };
        emit(path, &m)?;
    }
    Ok(true)
}

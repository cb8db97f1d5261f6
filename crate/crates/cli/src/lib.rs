//! The `helly` command line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, valid certificate, oracles agree, no counterexample |
//! | 1 | usage or input error, or `render` on a non-planar certificate |
//! | 2 | invalid certificate, oracle disagreement, or colorful counterexample |
//! | 3 | undecided certificate |
//! | 4 | search stopped by its time limit before exhausting the window |
//!
//! Results go to stdout as JSON. Timings go to stderr. Files written with
//! `--out` carry a timestamp, stdout never does.

pub mod render;
pub mod sets;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use helly::bounds::{bound_report, ramsey_with, RamseyOverrides};
use helly::certify::{check_certificate, Verdict};
use helly::colorful::{
    check_colorable_instance, generate_instance, ColorfulOutcome, ColoredInstance, InstanceParams, PropertySpec,
};
use helly::exactgeom::DEFAULT_PRECISION_CAP;
use helly::format::{
    self, check_version, encode_bound_report, encode_certificate, encode_instance, encode_point, encode_ramsey,
    encode_verdict, encode_witness, from_text, to_text, CertificateFile, Decoder, Metadata, SearchStats,
};
use helly::pointsets::{SetDescriptor, Window};
use helly::search::{
    helly_oracle_hoffman_with_budget, helly_oracle_vertex_with_budget, max_vertex_polytope, SearchOptions,
    DEFAULT_BUDGET,
};
use helly::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_NOT_EXHAUSTED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "helly", version, about = "Exact certificates and bounds for Helly numbers of discrete sets")]
pub struct Cli {
    /// Bits of enclosure precision allowed when deciding signs of symbolic numbers.
    #[arg(long, global = true, env = "HELLY_PRECISION_CAP", default_value_t = DEFAULT_PRECISION_CAP)]
    pub precision_cap: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper and known lower bounds for a set or composite target.
    Bound {
        #[arg(long)]
        set: String,
        /// Ramsey values for k >= 4, as k=value.
        #[arg(long = "ramsey", value_parser = parse_override)]
        ramsey: Vec<(usize, u64)>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest vertex polytope of a discrete set inside a window.
    Search {
        #[arg(long)]
        set: String,
        /// Inclusive integer bounds, "x0:x1,y0:y1[,...]".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Stop once a configuration of this size is found.
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        all_maxima: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate file.
    Check { certificate: PathBuf },
    /// Exact Helly number of an explicit finite set by both brute-force oracles.
    Oracle {
        #[arg(long)]
        set: String,
        /// Largest point count either oracle accepts.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Random colorful Helly trials.
    Colorful {
        /// The property is "meets this set".
        #[arg(long, default_value = "Z^2")]
        set: String,
        /// Number of color classes, 2^d by default.
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Boxes per color class.
        #[arg(long, default_value_t = 3)]
        family_size: usize,
        /// Box corners stay in [-range, range]^d.
        #[arg(long, default_value_t = 3)]
        range: i64,
        /// Check one instance file instead of generating trials.
        #[arg(long, conflicts_with_all = ["colors", "trials", "seed"])]
        instance: Option<PathBuf>,
        /// Directory for counterexample dumps.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// R_k, the k-color Ramsey number for triangles.
    Ramsey {
        k: usize,
        #[arg(long = "override", value_parser = parse_override)]
        overrides: Vec<(usize, u64)>,
    },
    /// Draw a planar certificate as SVG.
    Render {
        certificate: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_override(s: &str) -> std::result::Result<(usize, u64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected k=value, got {s:?}"))?;
    Ok((k.trim().parse().map_err(|e| format!("{e}"))?, v.trim().parse().map_err(|e| format!("{e}"))?))
}

fn print(v: &Value) {
    print!("{}", to_text(v));
}

fn write_file(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_text(v))?;
    Ok(())
}

fn now() -> Option<u64> {
    SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
}

fn read_json(path: &Path) -> Result<Value> {
    from_text(&std::fs::read_to_string(path)?)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let mut decoder = Decoder::new(cli.precision_cap);
    match dispatch(cli.command, &mut decoder) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, decoder: &mut Decoder) -> Result<i32> {
    match command {
        Command::Bound { set, ramsey, out } => cmd_bound(&set, &ramsey.into_iter().collect(), out.as_deref(), decoder),
        Command::Search { set, window, threads, time_limit, max_size, all_maxima, out } => {
            let s = sets::parse_set(&set, decoder)?;
            let mut opts = SearchOptions::new(Window::parse(&window)?);
            opts.worker_count = threads;
            opts.time_limit = match time_limit {
                Some(t) if !(t.is_finite() && t >= 0.0) => return Err(Error::Invalid(format!("bad time limit {t}"))),
                t => t.map(Duration::from_secs_f64),
            };
            opts.max_size_hint = max_size;
            opts.report_all_maxima = all_maxima;
            cmd_search(&s, &opts, out.as_deref())
        }
        Command::Check { certificate } => cmd_check(&certificate, decoder),
        Command::Oracle { set, budget } => cmd_oracle(&sets::parse_set(&set, decoder)?, budget),
        Command::Colorful { set, colors, trials, seed, family_size, range, instance, out } => match instance {
            Some(path) => {
                let v = read_json(&path)?;
                let inst = decoder.instance(&v)?;
                cmd_colorful_instance(&inst, out.as_deref())
            }
            None => {
                let s = sets::parse_set(&set, decoder)?;
                let mut params = InstanceParams::new(s.dim(), colors.unwrap_or(1 << s.dim()));
                params.family_size = family_size;
                params.range = range;
                cmd_colorful(&s, &params, seed, trials, out.as_deref())
            }
        },
        Command::Ramsey { k, overrides } => {
            print(&encode_ramsey(&ramsey_with(k, &overrides.into_iter().collect())?));
            Ok(EXIT_OK)
        }
        Command::Render { certificate, out } => {
            let v = read_json(&certificate)?;
            let cert = decoder.certificate(&v)?;
            std::fs::write(&out, render::render_svg(&cert)?)?;
            Ok(EXIT_OK)
        }
    }
}

pub fn cmd_bound(set: &str, overrides: &RamseyOverrides, out: Option<&Path>, decoder: &mut Decoder) -> Result<i32> {
    let target = sets::parse_target(set, decoder)?;
    let report = encode_bound_report(&bound_report(&target, overrides));
    print(&report);
    if let Some(path) = out {
        write_file(path, &report)?;
    }
    Ok(EXIT_OK)
}

/// Exit 4 when the time limit stopped the search. Reaching `max_size_hint`
/// counts as success.
pub fn cmd_search(s: &SetDescriptor, opts: &SearchOptions, out: Option<&Path>) -> Result<i32> {
    let r = max_vertex_polytope(s, opts)?;
    eprintln!("search: {} nodes in {:.3} s", r.nodes_explored, r.elapsed.as_secs_f64());
    let mut file = CertificateFile {
        configuration: r.best.configuration.clone(),
        claimed_bound: r.best.claimed_bound,
        metadata: Metadata {
            window: Some(opts.window.clone()),
            search: Some(SearchStats { best_size: r.best_size, nodes_explored: r.nodes_explored, exhausted: r.exhausted }),
            timestamp: None,
        },
    };
    let mut summary = json!({
        "best_size": r.best_size,
        "exhausted": r.exhausted,
        "nodes_explored": r.nodes_explored,
        "certificate": encode_certificate(&file),
    });
    if opts.report_all_maxima {
        summary["maxima"] = Value::Array(
            r.maxima.iter().map(|m| Value::Array(m.iter().map(encode_point).collect())).collect(),
        );
    }
    print(&summary);
    if let Some(path) = out {
        file.metadata.timestamp = now();
        write_file(path, &encode_certificate(&file))?;
    }
    let hint_reached = opts.max_size_hint.is_some_and(|m| r.best_size >= m);
    Ok(if r.exhausted || hint_reached { EXIT_OK } else { EXIT_NOT_EXHAUSTED })
}

pub fn check_file(path: &Path, decoder: &mut Decoder) -> Result<Verdict> {
    let cert = decoder.certificate(&read_json(path)?)?;
    Ok(check_certificate(&cert.configuration, cert.claimed_bound)?.verdict)
}

pub fn verdict_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Valid => EXIT_OK,
        Verdict::Invalid { .. } => EXIT_FAILED,
        Verdict::Undecided { .. } => EXIT_UNDECIDED,
    }
}

pub fn cmd_check(path: &Path, decoder: &mut Decoder) -> Result<i32> {
    let start = Instant::now();
    let verdict = check_file(path, decoder)?;
    eprintln!("check: {:.3} s", start.elapsed().as_secs_f64());
    print(&encode_verdict(&verdict));
    Ok(verdict_code(&verdict))
}

pub fn cmd_oracle(s: &SetDescriptor, budget: usize) -> Result<i32> {
    let start = Instant::now();
    let vertex = helly_oracle_vertex_with_budget(s, budget)?;
    let hoffman = helly_oracle_hoffman_with_budget(s, budget)?;
    eprintln!("oracle: {:.3} s", start.elapsed().as_secs_f64());
    let agree = vertex == hoffman;
    print(&json!({ "vertex": vertex, "hoffman": hoffman, "agree": agree }));
    Ok(if agree { EXIT_OK } else { EXIT_FAILED })
}

fn outcome_record(outcome: &ColorfulOutcome) -> Value {
    match outcome {
        ColorfulOutcome::HypothesisFails { rainbow } => json!({ "outcome": "hypothesis-fails", "rainbow": rainbow }),
        ColorfulOutcome::ConclusionHolds { color, witness } => {
            json!({ "outcome": "conclusion-holds", "color": color, "witness": encode_witness(witness) })
        }
        ColorfulOutcome::Counterexample { .. } => json!({ "outcome": "counterexample" }),
    }
}

fn dump_counterexample(dir: Option<&Path>, name: &str, inst: &ColoredInstance) -> Result<Option<PathBuf>> {
    let Some(dir) = dir else { return Ok(None) };
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    write_file(&path, &encode_instance(inst))?;
    Ok(Some(path))
}

pub fn cmd_colorful_instance(inst: &ColoredInstance, out: Option<&Path>) -> Result<i32> {
    let outcome = check_colorable_instance(inst)?;
    let mut record = outcome_record(&outcome);
    if let ColorfulOutcome::Counterexample { instance } = &outcome {
        if let Some(p) = dump_counterexample(out, "counterexample.json", instance)? {
            record["dump"] = json!(p.display().to_string());
        }
    }
    print(&record);
    Ok(if matches!(outcome, ColorfulOutcome::Counterexample { .. }) { EXIT_FAILED } else { EXIT_OK })
}

/// Trial `i` uses seed `seed + i`. Trials run on all available cores and are
/// reported in seed order.
pub fn run_trials(s: &SetDescriptor, params: &InstanceParams, seed: u64, trials: u64) -> Result<Vec<(u64, ColorfulOutcome)>> {
    let seeds: Vec<u64> = (0..trials).map(|i| seed.wrapping_add(i)).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(seeds.len().max(1));
    let chunk = seeds.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<(u64, ColorfulOutcome)>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&sd| {
                            let mut inst = generate_instance(sd, params)?;
                            inst.property = PropertySpec::MeetsSet(s.clone());
                            Ok((sd, check_colorable_instance(&inst)?))
                        })
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("trial worker panicked")).collect()
    });
    let mut all = Vec::with_capacity(seeds.len());
    for r in results {
        all.extend(r?);
    }
    Ok(all)
}

pub fn cmd_colorful(s: &SetDescriptor, params: &InstanceParams, seed: u64, trials: u64, out: Option<&Path>) -> Result<i32> {
    let start = Instant::now();
    let results = run_trials(s, params, seed, trials)?;
    eprintln!("colorful: {trials} trials in {:.3} s", start.elapsed().as_secs_f64());
    let (mut holds, mut fails, mut counter) = (0u64, 0u64, 0u64);
    let mut records = Vec::with_capacity(results.len());
    for (sd, outcome) in &results {
        let mut record = outcome_record(outcome);
        record["seed"] = json!(sd);
        match outcome {
            ColorfulOutcome::HypothesisFails { .. } => fails += 1,
            ColorfulOutcome::ConclusionHolds { .. } => holds += 1,
            ColorfulOutcome::Counterexample { instance } => {
                counter += 1;
                if let Some(p) = dump_counterexample(out, &format!("counterexample-{sd}.json"), instance)? {
                    record["dump"] = json!(p.display().to_string());
                }
            }
        }
        records.push(record);
    }
    print(&json!({
        "version": format::FORMAT_VERSION,
        "colors": params.colors,
        "trials": records,
        "summary": { "conclusion_holds": holds, "hypothesis_fails": fails, "counterexamples": counter },
    }));
    Ok(if counter > 0 { EXIT_FAILED } else { EXIT_OK })
}

/// Reads a descriptor file, checking the version field.
pub fn read_descriptor(path: &Path, decoder: &mut Decoder) -> Result<SetDescriptor> {
    let v = read_json(path)?;
    check_version(&v)?;
    decoder.descriptor(&v)
}

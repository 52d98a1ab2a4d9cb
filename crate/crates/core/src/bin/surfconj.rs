use std::fs::OpenOptions;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use surface_conjugacy::conjugacy::lower_bound_witness;
use surface_conjugacy::cyclic::DEFAULT_CLASS_STATES;
use surface_conjugacy::oracle::{self, ClOutcome};
use surface_conjugacy::selfcheck::{Selfcheck, SelfcheckConfig, CRITERIA};
use surface_conjugacy::survey::{
    read_existing, run_survey, SurveyConfig, SurveyFormat, SurveySink,
};
use surface_conjugacy::{format_word, parse_word, Error, SurfaceGroup, Word, WordStyle};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Int,
    Alpha,
}

#[derive(Parser)]
#[command(
    name = "surfconj",
    version,
    about = "Word and conjugacy problems in closed surface groups"
)]
struct Cli {
    #[arg(long, global = true, default_value_t = 2)]
    genus: u32,
    /// Word syntax for input and output.
    #[arg(long, global = true, value_enum, default_value = "int")]
    format: Format,
    #[arg(long, global = true)]
    json: bool,
    /// Print reduction traces.
    #[arg(long, global = true)]
    trace: bool,
    /// State budget for searches (default depends on the command).
    #[arg(long, global = true)]
    max_states: Option<usize>,
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Nf {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Conjugacy-class normal form.
    Cnf {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Decide conjugacy.
    IsConj {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Conjugator certificate as JSON (`w^-1 u w = v`).
    Conjugator {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
        /// Also compute the exact conjugator length by search.
        #[arg(long)]
        exact: bool,
    },
    /// Exact conjugator length by breadth-first search; prints `exhausted`
    /// (exit 1) when the budget runs out first.
    ClExact {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// The pair `c_1`, `c_2^(1-n) c_1 c_2^(n-1)` and its conjugator length.
    Witness {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Conjugation form `X^-1 A' X` with the LLFR report.
    Prepare {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Certify pairs from a Cayley ball.
    Survey {
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Output file (standard output when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
        /// Skip pairs already present in `--out`.
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        conjugate_only: bool,
        /// Survey this many seeded random pairs instead of all.
        #[arg(long)]
        sample: Option<usize>,
        /// Record wall-clock milliseconds per pair.
        #[arg(long)]
        timing: bool,
        /// Skip the exact conjugator length search.
        #[arg(long)]
        no_exact: bool,
    },
    /// Run the acceptance criteria.
    Selfcheck {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Criteria to run (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => 3,
        Error::Invariant(_)
        | Error::NonTermination { .. }
        | Error::Contract(_)
        | Error::InvalidRule(_) => 4,
        Error::Io(_) => 5,
        _ => 2,
    }
}

struct Ctx {
    group: SurfaceGroup,
    style: WordStyle,
    json: bool,
    trace: bool,
    max_states: Option<usize>,
    max_depth: usize,
    seed: u64,
}

impl Ctx {
    fn parse(&self, text: &str) -> Result<Word, Error> {
        parse_word(text, self.group.genus(), self.style)
    }

    fn fmt(&self, w: &Word) -> Result<String, Error> {
        format_word(w, self.style)
    }

    fn states(&self) -> usize {
        self.max_states.unwrap_or(oracle::DEFAULT_MAX_STATES)
    }
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), Error> {
    writeln!(out, "{text}")?;
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Error> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    let ctx = Ctx {
        group: SurfaceGroup::new(cli.genus)?,
        style: match cli.format {
            Format::Int => WordStyle::Int,
            Format::Alpha => WordStyle::Alpha,
        },
        json: cli.json,
        trace: cli.trace,
        max_states: cli.max_states,
        max_depth: cli.max_depth,
        seed: cli.seed,
    };
    let g = &ctx.group;
    match cli.command {
        Command::Nf { word } => {
            let w = ctx.parse(&word)?;
            let (nf, trace) = g.normal_form(&w)?;
            if ctx.json {
                let mut v =
                    json!({ "input": ctx.fmt(&w)?, "nf": ctx.fmt(&nf)?, "length": nf.len() });
                if ctx.trace {
                    v["trace"] = Value::String(trace.render(ctx.style)?);
                }
                emit(out, &v.to_string())?;
            } else {
                if ctx.trace {
                    write!(out, "{}", trace.render(ctx.style)?)?;
                }
                emit(out, &ctx.fmt(&nf)?)?;
            }
        }
        Command::Cnf { word } => {
            let w = ctx.parse(&word)?;
            let r = g.cyclic_normal_form_with_budget(
                &w,
                ctx.max_states.unwrap_or(DEFAULT_CLASS_STATES),
            )?;
            if ctx.json {
                let v = json!({
                    "input": ctx.fmt(&w)?,
                    "class_nf": ctx.fmt(&r.class_nf)?,
                    "conjugator": ctx.fmt(&r.conjugator)?,
                    "rotation_offset": r.rotation_offset,
                });
                emit(out, &v.to_string())?;
            } else {
                if ctx.trace {
                    write!(out, "{}", r.trace.render(ctx.style)?)?;
                    for step in &r.cyclic_steps {
                        writeln!(out, "rotate {}", step.offset)?;
                        write!(out, "{}", step.trace.render(ctx.style)?)?;
                    }
                }
                emit(out, &ctx.fmt(&r.class_nf)?)?;
            }
        }
        Command::IsConj { u, v } => {
            let c = g.is_conjugate(&ctx.parse(&u)?, &ctx.parse(&v)?)?;
            if ctx.json {
                emit(out, &json!({ "conjugate": c }).to_string())?;
            } else {
                emit(out, if c { "true" } else { "false" })?;
            }
        }
        Command::Conjugator { u, v, exact } => {
            let (u, v) = (ctx.parse(&u)?, ctx.parse(&v)?);
            let cert = if exact {
                g.conjugator_with_exact(&u, &v, ctx.max_depth, ctx.states())?
            } else {
                g.conjugator(&u, &v)?
            };
            let mut value = serde_json::to_value(&cert).map_err(|e| Error::Io(e.to_string()))?;
            value["u"] = Value::String(ctx.fmt(&u)?);
            value["v"] = Value::String(ctx.fmt(&v)?);
            if let Some(c) = &cert.conjugator {
                value["conjugator"] = Value::String(ctx.fmt(c)?);
            }
            if ctx.trace {
                value["r"] =
                    serde_json::to_value(cert.telemetry).map_err(|e| Error::Io(e.to_string()))?;
            }
            emit(out, &value.to_string())?;
        }
        Command::ClExact { u, v } => {
            let outcome = oracle::exact_cl(
                g,
                &ctx.parse(&u)?,
                &ctx.parse(&v)?,
                ctx.max_depth,
                ctx.states(),
            )?;
            match outcome {
                ClOutcome::Found(d) => emit(out, &d.to_string())?,
                ClOutcome::Exhausted => {
                    emit(out, "exhausted")?;
                    return Ok(1);
                }
            }
        }
        Command::Witness { n } => {
            let (u, v, cl) = lower_bound_witness(cli.genus, n)?;
            if ctx.json {
                let j = json!({ "genus": cli.genus, "n": n, "u": ctx.fmt(&u)?, "v": ctx.fmt(&v)?, "expected_cl": cl });
                emit(out, &j.to_string())?;
            } else {
                emit(out, &format!("u: {}", ctx.fmt(&u)?))?;
                emit(out, &format!("v: {}", ctx.fmt(&v)?))?;
                emit(out, &format!("expected_cl: {cl}"))?;
            }
        }
        Command::Prepare { word } => {
            let w = ctx.parse(&word)?;
            let p = g.prepare_conjugation_form(&w)?;
            let f = &p.form;
            let left = g.long_llfrs(&f.x.inverse().concat(&f.aprime)?);
            let right = g.long_llfrs(&f.aprime.concat(&f.x)?);
            let all = g.find_llfrs(&f.expanded());
            if ctx.json {
                let cases: Vec<Value> = p
                    .eliminations
                    .iter()
                    .map(|e| json!({ "case": format!("{:?}", e.case), "mirrored": e.mirrored, "x_len": e.x.len(), "y_len": e.y.len() }))
                    .collect();
                let v = json!({
                    "x": ctx.fmt(&f.x)?,
                    "aprime": ctx.fmt(&f.aprime)?,
                    "rotation_offset": f.rotation_offset,
                    "class_nf": ctx.fmt(&f.class_nf)?,
                    "eliminations": cases,
                    "llfrs": all,
                    "long_llfrs_left": left.len(),
                    "long_llfrs_right": right.len(),
                });
                emit(out, &v.to_string())?;
            } else {
                emit(out, &format!("X: {}", ctx.fmt(&f.x)?))?;
                emit(out, &format!("Aprime: {}", ctx.fmt(&f.aprime)?))?;
                emit(out, &format!("rotation_offset: {}", f.rotation_offset))?;
                for e in &p.eliminations {
                    let side = if e.mirrored { "right" } else { "left" };
                    emit(
                        out,
                        &format!(
                            "elimination: {:?} ({side}) |X| {} -> {}",
                            e.case,
                            e.x.len(),
                            e.y.len()
                        ),
                    )?;
                }
                emit(out, &format!("LLFRs in X^-1 Aprime X: {}", all.len()))?;
                for l in &all {
                    emit(
                        out,
                        &format!(
                            "  start {} length {} relator {}",
                            l.start, l.length, l.relator
                        ),
                    )?;
                }
                emit(
                    out,
                    &format!(
                        "(4g-1)-LLFRs in X^-1 Aprime: {}, in Aprime X: {}",
                        left.len(),
                        right.len()
                    ),
                )?;
            }
        }
        Command::Survey {
            radius,
            out: path,
            csv,
            resume,
            conjugate_only,
            sample,
            timing,
            no_exact,
        } => {
            let cfg = SurveyConfig {
                radius,
                conjugate_only,
                sample,
                seed: ctx.seed,
                timing,
                exact: !no_exact,
                max_depth: ctx.max_depth,
                max_states: ctx.states(),
            };
            let format = if csv {
                SurveyFormat::Csv
            } else {
                SurveyFormat::JsonLines
            };
            let summary = match path {
                Some(path) => {
                    let (skip, valid) = if resume && path.exists() {
                        read_existing(BufReader::new(std::fs::File::open(&path)?), format)?
                    } else {
                        Default::default()
                    };
                    let file = OpenOptions::new()
                        .create(true)
                        .write(true)
                        .truncate(!resume)
                        .open(&path)?;
                    file.set_len(valid)?;
                    let mut file = io::BufWriter::new(file);
                    use std::io::Seek;
                    file.seek(io::SeekFrom::Start(valid))?;
                    let mut sink = SurveySink::new(file, format, valid == 0);
                    run_survey(g, &cfg, &mut sink, &skip)?
                }
                None => {
                    let mut sink = SurveySink::new(&mut *out, format, true);
                    run_survey(g, &cfg, &mut sink, &Default::default())?
                }
            };
            let s = serde_json::to_string(&summary).map_err(|e| Error::Io(e.to_string()))?;
            eprintln!("survey summary: {s}");
        }
        Command::Selfcheck { samples, only } => {
            let mut cfg = SelfcheckConfig {
                seed: ctx.seed,
                samples,
                max_depth: ctx.max_depth,
                ..SelfcheckConfig::default()
            };
            if let Some(s) = ctx.max_states {
                cfg.max_states = s;
            }
            let ids: Vec<u8> = if only.is_empty() {
                CRITERIA.iter().map(|c| c.0).collect()
            } else {
                only
            };
            let suite = Selfcheck::new(cfg);
            let mut all_passed = true;
            for id in ids {
                let report = suite.run(id);
                all_passed &= report.passed;
                if ctx.json {
                    emit(
                        out,
                        &serde_json::to_string(&report).map_err(|e| Error::Io(e.to_string()))?,
                    )?;
                } else {
                    emit(out, &report.to_string())?;
                }
                out.flush()?;
            }
            if !all_passed {
                return Ok(4);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

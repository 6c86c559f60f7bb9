use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use symknot::algebra::{smith_normal_form, IntMatrix};
use symknot::bracket::{jones_with, BracketEngine};
use symknot::config::{parse_cap, Caps};
use symknot::homology::{h1_branched_cover, resultant_order, SeifertMatrix};
use symknot::moves::{
    apply_fingerprint, expand_composite, replay, run_script, scramble_with, sites_with_results, Direction, EquivClass, LogEntry, MoveKind,
};
use symknot::refined::refined_w_with;
use symknot::spin::{potts_model, Backend, SpinValue, DEFAULT_TOL};
use symknot::twist::{twist, twist_partial};
use symknot::Diagram;

#[derive(Parser, Debug)]
#[command(name = "symknot", version, about = "Invariants and moves for symmetric union diagrams")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the state sums.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Cap on enumerated bracket states (plain count or 2^k); overrides SYMKNOT_CAP_STATES.
    #[arg(long, global = true, value_parser = cap_arg)]
    cap_states: Option<u64>,
    /// Largest diagram a random move may produce.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    crossing_budget: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

fn cap_arg(s: &str) -> Result<u64, String> {
    parse_cap(s).ok_or_else(|| format!("expected a positive count or 2^k, got {s:?}"))
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check that diagrams parse and are valid symmetric unions.
    Validate { files: Vec<PathBuf> },
    /// Compute one invariant of a diagram.
    Invariant {
        which: Which,
        file: PathBuf,
        /// Fail unless the refined polynomial is a Laurent polynomial.
        #[arg(long)]
        certify_laurent: bool,
        #[command(flatten)]
        spin: SpinArgs,
    },
    /// Replace axis crossings by runs of twists.
    Twist {
        file: PathBuf,
        /// Uniform twist count for every axis crossing.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "partial", required_unless_present = "partial")]
        h: Option<i64>,
        /// Counts for the top crossing, the middle ones and the bottom crossing.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', value_name = "T,H,B")]
        partial: Option<Vec<i64>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare invariants of two diagrams; exit status 2 when any differs.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        jones: bool,
        #[arg(long)]
        refined: bool,
        #[arg(long)]
        spin: bool,
        #[command(flatten)]
        spin_args: SpinArgs,
    },
    /// First homology of a cyclic branched cover from a Seifert matrix.
    Homology {
        #[arg(long)]
        seifert: PathBuf,
        #[arg(long, default_value_t = 2)]
        fold: u32,
    },
    /// Apply, list or generate moves.
    Moves {
        #[command(subcommand)]
        cmd: MovesCmd,
    },
    /// Smith normal form of an integer matrix.
    Snf { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum MovesCmd {
    /// List the sites of one move kind.
    Sites {
        file: PathBuf,
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t = Dir::Forward)]
        direction: Dir,
    },
    /// Apply a single move, or replay a JSON move log.
    Apply {
        file: PathBuf,
        #[arg(long, conflicts_with_all = ["kind", "site"])]
        log: Option<PathBuf>,
        #[arg(long, requires = "site")]
        kind: Option<String>,
        #[arg(long, requires = "kind")]
        site: Option<String>,
        #[arg(long, value_enum, default_value_t = Dir::Forward)]
        direction: Dir,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply random moves of an equivalence class.
    Scramble {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Class::Weak)]
        class: Class,
        #[arg(long, default_value_t = 5)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the move log.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Elementary script for a composite move on its host diagram.
    Expand { kind: String },
}

#[derive(Args, Debug, Clone)]
struct SpinArgs {
    /// Number of Potts states.
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Sign::Minus)]
    d_sign: Sign,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..4))]
    xi_branch: u8,
    /// Defaults to exact for n = 4 and float otherwise.
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Which {
    Jones,
    Refined,
    Spin,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Sign {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Dir {
    Forward,
    Reverse,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Class {
    Symmetric,
    Weak,
}

impl From<Dir> for Direction {
    fn from(d: Dir) -> Self {
        match d {
            Dir::Forward => Direction::Forward,
            Dir::Reverse => Direction::Reverse,
        }
    }
}

/// Settings shared by every subcommand.
struct RunConfig {
    json: bool,
    caps: Caps,
}

/// What a subcommand prints, plus whether compare found a difference.
struct Report {
    text: String,
    json: Value,
    differ: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Self { text, json, differ: false }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<Diagram> {
    Diagram::parse(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn kind_arg(s: &str) -> Result<MoveKind> {
    MoveKind::parse(s).ok_or_else(|| anyhow!("unknown move kind {s:?}"))
}

fn spin_value(d: &Diagram, a: &SpinArgs, caps: &Caps) -> Result<SpinValue> {
    let sign = match a.d_sign {
        Sign::Plus => 1,
        Sign::Minus => -1,
    };
    let backend = a.backend.map(|b| match b {
        BackendArg::Exact => Backend::Exact,
        BackendArg::Float => Backend::Float,
    });
    let model = potts_model(a.n, sign, a.xi_branch, backend, a.tol)?;
    Ok(model.normalized_i_with(d, caps)?)
}

/// A computed invariant: exact values compare as text, float ones within tolerance.
enum Computed {
    Exact(String),
    Spin(SpinValue),
}

impl Computed {
    fn text(&self) -> String {
        match self {
            Computed::Exact(s) => s.clone(),
            Computed::Spin(v) => v.to_string(),
        }
    }

    fn same(&self, o: &Computed, tol: f64) -> bool {
        match (self, o) {
            (Computed::Spin(a), Computed::Spin(b)) => a.close(*b, tol),
            _ => self.text() == o.text(),
        }
    }
}

fn invariant(d: &Diagram, which: Which, spin: &SpinArgs, caps: &Caps) -> Result<Computed> {
    Ok(match which {
        Which::Jones => Computed::Exact(jones_with(d, BracketEngine::default(), caps)?.to_canonical_string()),
        Which::Refined => Computed::Exact(refined_w_with(d, BracketEngine::default(), caps)?.to_canonical_string()),
        Which::Spin => Computed::Spin(spin_value(d, spin, caps)?),
    })
}

fn which_name(w: Which) -> &'static str {
    match w {
        Which::Jones => "jones",
        Which::Refined => "refined",
        Which::Spin => "spin",
    }
}

fn save_or_print(d: &Diagram, output: &Option<PathBuf>, extra: Value) -> Result<Report> {
    let text = d.serialize();
    let mut json = extra;
    json["crossings"] = json!(d.len());
    match output {
        Some(p) => {
            write(p, &text)?;
            json["output"] = json!(p.display().to_string());
            Ok(Report::new(format!("wrote {} ({} crossings)", p.display(), d.len()), json))
        }
        None => {
            json["diagram"] = serde_json::to_value(d.to_sud())?;
            Ok(Report::new(text.trim_end().to_string(), json))
        }
    }
}

fn run(cfg: &RunConfig, cmd: &Cmd) -> Result<Report> {
    let caps = &cfg.caps;
    match cmd {
        Cmd::Validate { files } => {
            if files.is_empty() {
                bail!("no input files");
            }
            let mut lines = Vec::new();
            let mut out = Vec::new();
            for f in files {
                let d = load(f)?;
                d.validate().with_context(|| format!("{}", f.display()))?;
                let report = d.validate_symmetric_union();
                if !report.passed() {
                    let why: Vec<String> = report.failures.iter().map(|x| x.to_string()).collect();
                    bail!("{}: not a symmetric union: {}", f.display(), why.join("; "));
                }
                let w = d.writhe();
                lines.push(format!("{}: pass ({} crossings, {} on the axis, writhe {})", f.display(), d.len(), d.axis_crossings().len(), w.total()));
                out.push(json!({"file": f.display().to_string(), "valid": true, "crossings": d.len(),
                    "axis_crossings": d.axis_crossings().len(), "writhe": w.total()}));
            }
            Ok(Report::new(lines.join("\n"), json!(out)))
        }
        Cmd::Invariant { which, file, certify_laurent, spin } => {
            let d = load(file)?;
            if *which == Which::Refined && *certify_laurent {
                let w = refined_w_with(&d, BracketEngine::default(), caps)?;
                if !w.is_laurent() {
                    bail!("refined polynomial of {} is not Laurent: {}", file.display(), w.to_canonical_string());
                }
            }
            let v = invariant(&d, *which, spin, caps)?.text();
            let mut json = json!({"invariant": which_name(*which), "value": v});
            if *which == Which::Spin {
                json["n"] = json!(spin.n);
                json["xi_branch"] = json!(spin.xi_branch);
            }
            Ok(Report::new(v, json))
        }
        Cmd::Twist { file, h, partial, output } => {
            let d = load(file)?;
            let out = match (h, partial) {
                (Some(h), _) => twist(&d, *h)?,
                (None, Some(p)) if p.len() == 3 => twist_partial(&d, p[0], p[1], p[2])?,
                (None, Some(_)) => bail!("--partial takes three counts t,h,b"),
                (None, None) => bail!("give --h or --partial"),
            };
            save_or_print(&out, output, json!({}))
        }
        Cmd::Compare { a, b, jones, refined, spin, spin_args } => {
            let (da, db) = (load(a)?, load(b)?);
            let mut which: Vec<Which> = [(*jones, Which::Jones), (*refined, Which::Refined), (*spin, Which::Spin)]
                .into_iter()
                .filter_map(|(on, w)| on.then_some(w))
                .collect();
            if which.is_empty() {
                which = vec![Which::Jones, Which::Refined];
            }
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            let mut differ = false;
            for w in which {
                let (x, y) = (invariant(&da, w, spin_args, caps)?, invariant(&db, w, spin_args, caps)?);
                let same = x.same(&y, spin_args.tol);
                let (x, y) = (x.text(), y.text());
                differ |= !same;
                let verdict = if same { "EQUAL" } else { "DIFFER" };
                if same {
                    lines.push(format!("{}: {verdict}\n  {x}", which_name(w)));
                } else {
                    lines.push(format!("{}: {verdict}\n  {}: {x}\n  {}: {y}", which_name(w), a.display(), b.display()));
                }
                rows.push(json!({"invariant": which_name(w), "verdict": verdict, "a": x, "b": y}));
            }
            Ok(Report { text: lines.join("\n"), json: json!(rows), differ })
        }
        Cmd::Homology { seifert, fold } => {
            let v = SeifertMatrix::parse(&read(seifert)?).with_context(|| format!("{}", seifert.display()))?;
            let g = h1_branched_cover(&v, *fold)?;
            let order = resultant_order(&v, *fold)?;
            let agrees = g.order().is_some_and(|o| o == order) || (g.order().is_none() && order == 0.into());
            if !agrees {
                bail!("resultant order {order} disagrees with the Smith form {g}");
            }
            let text = format!("{g}\nresultant order {order} (agrees)");
            let factors: Vec<String> = g.factors.iter().map(|f| f.to_string()).collect();
            Ok(Report::new(text, json!({"fold": fold, "factors": factors, "free_rank": g.free_rank, "resultant_order": order.to_string()})))
        }
        Cmd::Snf { file } => {
            let m = IntMatrix::parse(&read(file)?).with_context(|| format!("{}", file.display()))?;
            let diag: Vec<String> = smith_normal_form(&m).iter().map(|x| x.to_string()).collect();
            Ok(Report::new(diag.join(" "), json!({"diagonal": diag})))
        }
        Cmd::Moves { cmd } => run_moves(cfg, cmd),
    }
}

fn run_moves(cfg: &RunConfig, cmd: &MovesCmd) -> Result<Report> {
    match cmd {
        MovesCmd::Sites { file, kind, direction } => {
            let d = load(file)?;
            let kind = kind_arg(kind)?;
            let found = sites_with_results(&d, kind, (*direction).into());
            let fps: Vec<String> = found.iter().map(|(s, _)| s.fingerprint()).collect();
            let text = if fps.is_empty() { format!("no {kind} sites") } else { fps.join("\n") };
            Ok(Report::new(text, json!({"kind": kind, "sites": fps})))
        }
        MovesCmd::Apply { file, log, kind, site, direction, output } => {
            let d = load(file)?;
            let (out, entries) = match (log, kind, site) {
                (Some(l), _, _) => {
                    let entries: Vec<LogEntry> = serde_json::from_str(&read(l)?).with_context(|| format!("{}", l.display()))?;
                    (replay(&d, &entries)?, entries.len())
                }
                (None, Some(k), Some(s)) => (apply_fingerprint(&d, kind_arg(k)?, (*direction).into(), s)?.1, 1),
                _ => bail!("give --log, or --kind with --site"),
            };
            save_or_print(&out, output, json!({"moves": entries}))
        }
        MovesCmd::Scramble { file, class, length, seed, output, log } => {
            let d = load(file)?;
            let class = match class {
                Class::Symmetric => EquivClass::Symmetric,
                Class::Weak => EquivClass::Weak,
            };
            let (out, entries) = scramble_with(&d, *seed, *length, class, cfg.caps.crossing_budget);
            let log_json = serde_json::to_string_pretty(&entries)?;
            if let Some(p) = log {
                write(p, &(log_json.clone() + "\n"))?;
            }
            let mut report = save_or_print(&out, output, json!({"log": entries}))?;
            if log.is_none() && output.is_some() {
                report.text = format!("{}\n{log_json}", report.text);
            }
            Ok(report)
        }
        MovesCmd::Expand { kind } => {
            let kind = kind_arg(kind)?;
            let script = expand_composite(kind)?;
            let seq = run_script(&script.start, &script.steps)?;
            for (i, d) in seq.iter().enumerate() {
                if d.validate().is_err() || !d.validate_symmetric_union().passed() {
                    bail!("intermediate diagram {i} is not a valid symmetric union");
                }
            }
            let steps: Vec<Value> = script
                .steps
                .iter()
                .map(|s| json!({"kind": s.kind, "site": s.fingerprint(), "direction": s.direction}))
                .collect();
            let lines: Vec<String> = script
                .steps
                .iter()
                .map(|s| format!("{} {} {}", s.kind, dir_name(s.direction), s.fingerprint()))
                .collect();
            Ok(Report::new(
                format!("{} elementary moves\n{}", lines.len(), lines.join("\n")),
                json!({"kind": kind, "start": script.start.to_sud(), "steps": steps}),
            ))
        }
    }
}

fn dir_name(d: Direction) -> &'static str {
    match d {
        Direction::Forward => "forward",
        Direction::Reverse => "reverse",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut caps = Caps::from_env();
    if let Some(c) = cli.cap_states {
        caps.bracket_states = c;
    }
    if let Some(b) = cli.crossing_budget {
        caps.crossing_budget = b as usize;
    }
    let cfg = RunConfig { json: cli.json, caps };
    let result = symknot::with_threads(cli.threads.map(|t| t as usize), || run(&cfg, &cli.cmd));
    match result {
        Ok(r) => {
            let body = if cfg.json { serde_json::to_string_pretty(&r.json).expect("serialisable") } else { r.text };
            // a closed pipe on stdout is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if r.differ {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! Command-line front end. Exit codes: 0 success, 1 check failure, 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::GradedBasis;
use crate::construct::{is_extendable, smash_extension, trivial_extension, WindowSpec};
use crate::dual::{check_double_dual, quadratic_dual};
use crate::error::{Error, Result};
use crate::format::{export_dot, parse_quiver, serialize_quiver};
use crate::hammock::{almost_split_report, hammock, layers_json, partial_as_regular, radical_layers, slice_truncation};
use crate::koszul::{classify_pq, koszul_spaces, n_translation_algebra, Horizon};
use crate::quiver::{BoundQuiver, VertexId};
use crate::translation::{check_admissible, check_n_translation, infer_translation, TranslationStructure};

pub const SCHEMA: &str = "ntrans/1";
const DEFAULT_MAX_DEGREE: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "ntrans", version, about = "Bound quivers, n-translation algebras and Koszul duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Input quiver file.
    input: PathBuf,
    /// Degree cap D (default: $NTRANS_MAX_DEGREE or 12).
    #[arg(long = "max-degree", short = 'D')]
    max_degree: Option<usize>,
    /// Field override: `rational` or `gf<p>`.
    #[arg(long)]
    field: Option<String>,
    /// Translation degree n (default: declared `n`, else top degree minus one).
    #[arg(short = 'n', long = "n")]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long)]
    json: bool,
    /// Output path for emitted artifacts.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a quiver file.
    Validate(Common),
    /// Graded dimensions dim e_j Λ_t e_i and Loewy length.
    Dims(Common),
    /// Infer τ and check the n-translation axioms.
    Translation(Common),
    /// Admissibility conditions (i)-(iii).
    Admissible(Common),
    /// Quadratic dual on the opposite quiver.
    Dual(Common),
    /// Check that the quadratic dual is an involution.
    DoubleDual(Common),
    /// Trivial extension quiver.
    TrivialExt(Common),
    /// Smash-product quiver ℤ_v|_n Q.
    Smash {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'v', long = "v")]
        v: u32,
        /// Layer window `a..b`, required when v = 0.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// (p,q)-Koszul classification.
    Koszul(Common),
    /// τ-hammock starting at a vertex.
    Hammock {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        vertex: String,
    },
    /// Radical layers of Λe_i.
    Layers {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        vertex: String,
    },
    /// n-almost split sequences over the Koszul dual.
    AlmostSplit(Common),
    /// Partial Artin-Schelter regularity of the Koszul dual.
    AsRegular(Common),
    /// Truncate a smash window by the hammocks starting in a slice.
    TruncateSlice {
        #[command(flatten)]
        common: Common,
        /// Comma-separated vertex names.
        #[arg(long, value_delimiter = ',')]
        slice: Vec<String>,
    },
    /// DOT export of the quiver.
    ExportDot(Common),
    /// Whether the trivial extension is an (n+1)-translation algebra.
    Extendable(Common),
}

enum Outcome {
    Pass,
    Fail,
}

struct Ctx<'a> {
    common: &'a Common,
    quiver: BoundQuiver,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn format(&self) -> Format {
        if self.common.json {
            Format::Json
        } else {
            self.common.format
        }
    }

    fn cap(&self) -> usize {
        self.common.max_degree.unwrap_or_else(default_max_degree)
    }

    fn gb(&self) -> GradedBasis {
        GradedBasis::new(&self.quiver, self.cap())
    }

    fn n(&self, gb: &GradedBasis) -> usize {
        self.common
            .n
            .or(self.quiver.translation_degree())
            .unwrap_or_else(|| gb.top_degree().unwrap_or(1).saturating_sub(1))
    }

    fn vertex(&self, name: &str) -> Result<VertexId> {
        self.quiver.vertex_id(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    fn emit_json(&mut self, command: &str, mut body: Value) -> Result<()> {
        body["schema"] = json!(SCHEMA);
        body["command"] = json!(command);
        writeln!(self.out, "{}", serde_json::to_string_pretty(&body).expect("serializable"))?;
        Ok(())
    }

    fn line(&mut self, text: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", text.as_ref())?;
        Ok(())
    }

    /// Writes a quiver to `-o` or stdout.
    fn emit_quiver(&mut self, command: &str, q: &BoundQuiver, comment: Option<String>) -> Result<()> {
        let mut text = String::new();
        if let Some(c) = &comment {
            text.push_str(&format!("# {c}\n"));
        }
        text.push_str(&serialize_quiver(q));
        match (&self.common.output, self.format()) {
            (Some(path), Format::Json) => {
                std::fs::write(path, &text)?;
                let body = json!({
                    "output": path.display().to_string(),
                    "vertices": q.vertex_count(),
                    "arrows": q.arrow_count(),
                    "relations": q.relations().len(),
                });
                self.emit_json(command, body)
            }
            (Some(path), _) => {
                std::fs::write(path, &text)?;
                let msg = format!(
                    "wrote {} ({} vertices, {} arrows, {} relations)",
                    path.display(),
                    q.vertex_count(),
                    q.arrow_count(),
                    q.relations().len()
                );
                self.line(msg)
            }
            (None, Format::Json) => self.emit_json(command, json!({ "quiver": text })),
            (None, Format::Dot) => {
                let dot = export_dot(q, command);
                write!(self.out, "{dot}")?;
                Ok(())
            }
            (None, Format::Text) => {
                write!(self.out, "{text}")?;
                Ok(())
            }
        }
    }

    fn translation(&self, gb: &GradedBasis) -> Result<TranslationStructure> {
        infer_translation(gb, self.n(gb))
    }
}

fn default_max_degree() -> usize {
    std::env::var("NTRANS_MAX_DEGREE").ok().and_then(|v| v.parse().ok()).filter(|&d| d >= 1).unwrap_or(DEFAULT_MAX_DEGREE)
}

/// Reads a quiver file, applying a field override in place of any `field` line.
fn load(path: &FsPath, field: Option<&str>) -> Result<BoundQuiver> {
    let text = std::fs::read_to_string(path)?;
    let Some(field) = field else { return parse_quiver(&text) };
    let directive = match field.trim() {
        "rational" | "q" | "Q" => "field rational".to_string(),
        other => match other.strip_prefix("gf").map(str::trim) {
            Some(p) if !p.is_empty() => format!("field gf {p}"),
            _ => return Err(Error::Usage(format!("unknown field '{field}'"))),
        },
    };
    let mut replaced = false;
    let lines: Vec<String> = text
        .lines()
        .map(|l| {
            if l.split('#').next().unwrap_or("").split_whitespace().next() == Some("field") {
                replaced = true;
                directive.clone()
            } else {
                l.to_string()
            }
        })
        .collect();
    if replaced {
        return parse_quiver(&lines.join("\n"));
    }
    parse_quiver(&format!("{directive}\n{text}")).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse { line: line.saturating_sub(1), column, message },
        other => other,
    })
}

fn parse_window(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Usage(format!("window '{text}' is not of the form a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn names(q: &BoundQuiver, vs: impl IntoIterator<Item = VertexId>) -> String {
    vs.into_iter().map(|v| q.vertex_name(v).to_string()).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<Outcome> {
    let common = match command {
        Command::Smash { common, .. }
        | Command::Hammock { common, .. }
        | Command::Layers { common, .. }
        | Command::TruncateSlice { common, .. } => common,
        Command::Validate(c)
        | Command::Dims(c)
        | Command::Translation(c)
        | Command::Admissible(c)
        | Command::Dual(c)
        | Command::DoubleDual(c)
        | Command::TrivialExt(c)
        | Command::Koszul(c)
        | Command::AlmostSplit(c)
        | Command::AsRegular(c)
        | Command::ExportDot(c)
        | Command::Extendable(c) => c,
    };
    if common.max_degree == Some(0) {
        return Err(Error::Usage("--max-degree must be at least 1".into()));
    }
    let quiver = load(&common.input, common.field.as_deref())?;
    let mut ctx = Ctx { common, quiver, out };
    match command {
        Command::Validate(_) => validate_cmd(&mut ctx),
        Command::Dims(_) => dims_cmd(&mut ctx),
        Command::Translation(_) => translation_cmd(&mut ctx),
        Command::Admissible(_) => admissible_cmd(&mut ctx),
        Command::Dual(_) => {
            let d = quadratic_dual(&ctx.quiver)?;
            ctx.emit_quiver("dual", &d, None)?;
            Ok(Outcome::Pass)
        }
        Command::DoubleDual(_) => {
            let ok = check_double_dual(&ctx.quiver)?;
            match ctx.format() {
                Format::Json => ctx.emit_json("double-dual", json!({ "double_dual": ok }))?,
                _ => ctx.line(format!("double dual restores the quiver: {ok}"))?,
            }
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::TrivialExt(_) => {
            let gb = ctx.gb();
            let ts = ctx.translation(&gb)?;
            match trivial_extension(&gb, &ts) {
                Ok(t) => {
                    ctx.emit_quiver("trivial-ext", &t, None)?;
                    Ok(Outcome::Pass)
                }
                Err(Error::NotAdmissible(m)) => {
                    report_failure(&mut ctx, "trivial-ext", &m)?;
                    Ok(Outcome::Fail)
                }
                Err(e) => Err(e),
            }
        }
        Command::Smash { v, window, .. } => {
            let window = window.as_deref().map(parse_window).transpose()?;
            let spec = WindowSpec::new(*v, window)?;
            let gb = ctx.gb();
            let ts = ctx.translation(&gb)?;
            match smash_extension(&gb, &ts, spec) {
                Ok(s) => {
                    let comment = format!("smash {}", s.metadata());
                    ctx.emit_quiver("smash", &s.quiver, Some(comment))?;
                    Ok(Outcome::Pass)
                }
                Err(Error::NotAdmissible(m)) => {
                    report_failure(&mut ctx, "smash", &m)?;
                    Ok(Outcome::Fail)
                }
                Err(e) => Err(e),
            }
        }
        Command::Koszul(_) => koszul_cmd(&mut ctx),
        Command::Hammock { vertex, .. } => {
            let gb = ctx.gb();
            let ts = ctx.translation(&gb)?;
            let h = hammock(&gb, &ts, ctx.vertex(vertex)?);
            match ctx.format() {
                Format::Json => ctx.emit_json("hammock", h.to_json(gb.quiver()))?,
                Format::Dot => write!(ctx.out, "{}", h.to_dot(gb.quiver()))?,
                Format::Text => {
                    for (t, level) in h.levels.iter().enumerate() {
                        let entries: Vec<String> =
                            level.iter().map(|(&j, &m)| format!("({},{t}):{m}", gb.quiver().vertex_name(j))).collect();
                        ctx.line(format!("level {t}: {}", entries.join(" ")))?;
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Layers { vertex, .. } => {
            let gb = ctx.gb();
            let layers = radical_layers(&gb, ctx.vertex(vertex)?);
            match ctx.format() {
                Format::Json => ctx.emit_json("layers", json!({ "layers": layers_json(gb.quiver(), &layers) }))?,
                _ => {
                    for (t, layer) in layers.iter().enumerate() {
                        let parts: Vec<String> = layer
                            .iter()
                            .map(|(&j, &m)| {
                                let s = format!("S({})", gb.quiver().vertex_name(j));
                                if m == 1 { s } else { format!("{s}^{m}") }
                            })
                            .collect();
                        ctx.line(format!("{t}: {}", parts.join(" + ")))?;
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Command::AlmostSplit(_) => almost_split_cmd(&mut ctx),
        Command::AsRegular(_) => as_regular_cmd(&mut ctx),
        Command::TruncateSlice { slice, .. } => {
            let gb = ctx.gb();
            let ks = koszul_spaces(&gb)?;
            let ids = slice.iter().map(|s| ctx.vertex(s)).collect::<Result<Vec<_>>>()?;
            let t = slice_truncation(&ctx.quiver, &ks, &ids)?;
            ctx.emit_quiver("truncate-slice", &t, None)?;
            Ok(Outcome::Pass)
        }
        Command::ExportDot(_) => {
            let title = ctx.common.input.file_stem().map_or("quiver".into(), |s| s.to_string_lossy().into_owned());
            let dot = export_dot(&ctx.quiver, &title);
            match &ctx.common.output {
                Some(path) => std::fs::write(path, dot)?,
                None => write!(ctx.out, "{dot}")?,
            }
            Ok(Outcome::Pass)
        }
        Command::Extendable(_) => {
            let gb = ctx.gb();
            let ts = ctx.translation(&gb)?;
            let r = is_extendable(&gb, &ts, ctx.cap())?;
            match ctx.format() {
                Format::Json => ctx.emit_json("extendable", r.to_json())?,
                _ => ctx.line(match &r.reason {
                    None => "extendable: true".to_string(),
                    Some(reason) => format!("extendable: {} ({reason})", r.verdict),
                })?,
            }
            Ok(if r.verdict { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn report_failure(ctx: &mut Ctx, command: &str, message: &str) -> Result<()> {
    match ctx.format() {
        Format::Json => ctx.emit_json(command, json!({ "error": message })),
        _ => ctx.line(format!("failed: {message}")),
    }
}

fn validate_cmd(ctx: &mut Ctx) -> Result<Outcome> {
    let q = &ctx.quiver;
    let body = json!({
        "valid": true,
        "vertices": q.vertex_count(),
        "arrows": q.arrow_count(),
        "relations": q.relations().len(),
        "quadratic": q.is_quadratic(),
        "field": q.field().name(),
    });
    let msg = format!(
        "ok: {} vertices, {} arrows, {} relations over {}",
        q.vertex_count(),
        q.arrow_count(),
        q.relations().len(),
        q.field().name()
    );
    match ctx.format() {
        Format::Json => ctx.emit_json("validate", body)?,
        _ => ctx.line(msg)?,
    }
    Ok(Outcome::Pass)
}

fn dims_cmd(ctx: &mut Ctx) -> Result<Outcome> {
    let gb = ctx.gb();
    match ctx.format() {
        Format::Json => ctx.emit_json("dims", gb.dims_json())?,
        _ => {
            let q = gb.quiver();
            ctx.line("t from to dim")?;
            for t in 0..=gb.max_degree() {
                for (i, j) in gb.components(t).collect::<Vec<_>>() {
                    let line = format!("{t} {} {} {}", q.vertex_name(i), q.vertex_name(j), gb.dim(t, i, j));
                    ctx.line(line)?;
                }
            }
            ctx.line(format!("loewy length {}", gb.loewy_length()))?;
        }
    }
    Ok(Outcome::Pass)
}

fn translation_cmd(ctx: &mut Ctx) -> Result<Outcome> {
    let gb = ctx.gb();
    let n = ctx.n(&gb);
    let ts = match infer_translation(&gb, n) {
        Ok(ts) => ts,
        Err(e @ (Error::Translation(_) | Error::DegreeOverflow { .. })) => {
            report_failure(ctx, "translation", &e.to_string())?;
            return Ok(Outcome::Fail);
        }
        Err(e) => return Err(e),
    };
    let report = check_n_translation(&gb, &ts);
    let q = gb.quiver();
    match ctx.format() {
        Format::Json => {
            ctx.emit_json("translation", json!({ "structure": ts.to_json(q), "report": report.to_json(), "pass": report.passes() }))?
        }
        _ => {
            ctx.line(format!("n = {n}"))?;
            let tau: Vec<String> =
                ts.tau.iter().map(|(&i, &j)| format!("{} -> {}", q.vertex_name(i), q.vertex_name(j))).collect();
            ctx.line(format!("tau: {}", tau.join(", ")))?;
            ctx.line(format!("P: {}", names(q, ts.projective.iter().copied())))?;
            ctx.line(format!("I: {}", names(q, ts.injective.iter().copied())))?;
            ctx.line(format!(
                "conditions 1/2/5: {}/{}/{}",
                report.condition1, report.condition2, report.condition5
            ))?;
            ctx.line(format!("stable: {}, null: {}", report.stable, report.null))?;
            let si = report.self_injective.map_or("unknown".to_string(), |b| b.to_string());
            ctx.line(format!("self-injective: {si}"))?;
            for f in &report.failures {
                ctx.line(format!("failure: {f}"))?;
            }
        }
    }
    Ok(if report.passes() && report.declared_agrees { Outcome::Pass } else { Outcome::Fail })
}

fn admissible_cmd(ctx: &mut Ctx) -> Result<Outcome> {
    let gb = ctx.gb();
    let ts = ctx.translation(&gb)?;
    let r = check_admissible(&gb, &ts)?;
    match ctx.format() {
        Format::Json => ctx.emit_json("admissible", r.to_json())?,
        _ => {
            for (label, c) in [("i", &r.extension), ("ii", &r.shiftable_span), ("iii", &r.stark)] {
                let witness = c.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default();
                ctx.line(format!("({label}) {}{witness}", if c.pass { "pass" } else { "fail" }))?;
            }
            ctx.line(format!("admissible: {}", r.verdict()))?;
        }
    }
    Ok(if r.verdict() { Outcome::Pass } else { Outcome::Fail })
}

fn koszul_cmd(ctx: &mut Ctx) -> Result<Outcome> {
    let gb = ctx.gb();
    let ks = koszul_spaces(&gb)?;
    let report = classify_pq(&gb, &ks);
    let n = report.p.map_or(0, |p| p.saturating_sub(1));
    let verdict = n_translation_algebra(&gb, &report, ctx.common.n.unwrap_or(n));
    let q = gb.quiver();
    match ctx.format() {
        Format::Json => {
            let mut body = report.to_json(q);
            body["n_translation"] = verdict.to_json();
            ctx.emit_json("koszul", body)?;
        }
        _ => {
            ctx.line(format!("p = {}", report.p.map_or(format!("above cap {}", report.cap), |p| p.to_string())))?;
            match &report.horizon {
                Horizon::UpToCap(d) => ctx.line(format!("Koszul up to degree {d}"))?,
                Horizon::Finite(qq) => ctx.line(format!("q = {qq}"))?,
                Horizon::Fails { vertex, position, degree, reason } => ctx.line(format!(
                    "no (p,q): {reason} at vertex {}, position {position}, degree {degree}",
                    q.vertex_name(*vertex)
                ))?,
            }
            ctx.line(format!("{}-translation algebra: {}", verdict.n, verdict.verdict()))?;
            let table = report.table_text(q);
            write!(ctx.out, "{table}")?;
        }
    }
    Ok(if matches!(report.horizon, Horizon::Fails { .. }) { Outcome::Fail } else { Outcome::Pass })
}

fn almost_split_cmd(ctx: &mut Ctx) -> Result<Outcome> {
    let gb = ctx.gb();
    let ts = ctx.translation(&gb)?;
    let ks = koszul_spaces(&gb)?;
    let kr = classify_pq(&gb, &ks);
    let precondition = n_translation_algebra(&gb, &kr, ts.n).verdict();
    let r = almost_split_report(&gb, &ts, &kr)?;
    let q = gb.quiver();
    match ctx.format() {
        Format::Json => {
            let mut body = r.to_json(q);
            body["precondition"] = json!(precondition);
            ctx.emit_json("almost-split", body)?;
        }
        _ => {
            if !precondition {
                ctx.line(format!("warning: not an {}-translation algebra", ts.n))?;
            }
            for e in &r.entries {
                let terms: Vec<String> = e
                    .terms
                    .iter()
                    .map(|t| {
                        t.iter()
                            .map(|(&j, &m)| if m == 1 { format!("P{}", q.vertex_name(j)) } else { format!("P{}^{m}", q.vertex_name(j)) })
                            .collect::<Vec<_>>()
                            .join("+")
                    })
                    .collect();
                ctx.line(format!("{}: exists={} ({}) terms {}", q.vertex_name(e.vertex), e.exists, e.reason, terms.join(" | ")))?;
            }
        }
    }
    Ok(if precondition { Outcome::Pass } else { Outcome::Fail })
}

fn as_regular_cmd(ctx: &mut Ctx) -> Result<Outcome> {
    let gb = ctx.gb();
    let ts = ctx.translation(&gb)?;
    let ks = koszul_spaces(&gb)?;
    let kr = classify_pq(&gb, &ks);
    let nt = n_translation_algebra(&gb, &kr, ts.n).verdict();
    let r = partial_as_regular(&gb, &ts, &kr, nt)?;
    let q = gb.quiver();
    match ctx.format() {
        Format::Json => ctx.emit_json("as-regular", r.to_json(q))?,
        _ => {
            match r.verdict {
                None => ctx.line("out of theorem scope")?,
                Some(v) => ctx.line(format!("partial AS {}-regular: {v}", r.n))?,
            }
            let nu: Vec<String> =
                r.nakayama.iter().map(|(&i, &j)| format!("{} -> {}", q.vertex_name(i), q.vertex_name(j))).collect();
            ctx.line(format!("nakayama: {}", nu.join(", ")))?;
            ctx.line(format!(
                "gorenstein parameter: {}",
                r.gorenstein_parameter.map_or("none".into(), |l| l.to_string())
            ))?;
            let oracle: Vec<String> =
                r.oracle.iter().map(|(&i, &ok)| format!("{}={ok}", q.vertex_name(i))).collect();
            ctx.line(format!("oracle: {}", oracle.join(" ")))?;
        }
    }
    Ok(match r.verdict {
        Some(false) => Outcome::Fail,
        _ => Outcome::Pass,
    })
}

/// Runs the CLI on `args` (program name first), writing reports to `out` and
/// diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

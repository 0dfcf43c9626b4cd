//! `rackle` — command-line frontend for rack colorings of surface-knot
//! diagram presentations.
//!
//! Exit codes: 0 = the command succeeded and any verdict it renders is
//! positive; 1 = the command ran to completion but its verdict is negative
//! (not a rack, invalid presentation, inconsistent numbering, counts that
//! do not match, a non-bijective move, an indistinguishable pair); 2 = the
//! inputs could not be read, parsed, or satisfy the command's
//! preconditions. Output is deterministic: rerunning a command, with any
//! worker count, prints identical bytes.
//!
//! Set `RACKLE_WORKERS` to pin the number of worker threads (default:
//! available parallelism). Results never depend on it.

use std::fs;
use std::io::{self, Write};
use std::process::exit;

use clap::{Parser, Subcommand, ValueEnum};
use rackle_core::{
    alexander_numbering, builtin_presentation, catalog, count_colorings, enumerate_colorings,
    enumerate_racks, pushoff, satoh_discrimination, theorem2_report, verify_move, AlgebraError,
    AxiomReport, BijectionStatus, Coloring, ColoringError, Family, MoveError, MoveSchema,
    NumberingOutcome, Presentation, PresentationError, RackTable, SatohVerdict, TransformError,
    WitnessWalk,
};
use serde_json::{json, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "rackle",
    version,
    about = "Rack colorings of surface-knot diagrams"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect rack tables: axioms, kink map, associated quandle,
    /// components, enumeration.
    #[command(subcommand)]
    Rack(RackCmd),
    /// Count or list rack colorings of a presentation.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Validate presentation files.
    #[command(subcommand)]
    Pres(PresCmd),
    /// Push the double curves of a plain diagram off onto parallel strips.
    Pushoff {
        /// Presentation: a `.pres` path or `corpus:<name>`.
        pres: String,
    },
    /// Number the sheets of an overlay so curve edges step by one level.
    Numbering {
        /// Presentation: a `.pres` path or `corpus:<name>`.
        pres: String,
    },
    /// Compare rack colorings of a diagram with its associated-quandle
    /// colorings through the push-off, and verify the bijection when one
    /// is claimed.
    Theorem2 {
        /// Presentation: a `.pres` path or `corpus:<name>`.
        pres: String,
        /// Rack: a `.rack` path or `builtin:<family>:<n>`.
        #[arg(long)]
        rack: String,
    },
    /// Verify local moves preserve coloring counts, or print the catalog.
    #[command(subcommand)]
    Move(MoveCmd),
    /// Compare coloring counts of the two built-in torus diagrams.
    Satoh {
        /// Rack: a `.rack` path or `builtin:<family>:<n>`.
        #[arg(long)]
        rack: String,
    },
}

#[derive(Subcommand)]
enum RackCmd {
    /// Check the rack and quandle axioms.
    Check { src: String },
    /// Print the kink map and verify its laws.
    Kink { src: String },
    /// Print the associated quandle's table.
    Assoc { src: String },
    /// List the connected components.
    Components { src: String },
    /// List every rack of the given order, up to order 4.
    Enumerate { n: usize },
}

#[derive(Subcommand)]
enum ColorCmd {
    /// Print the number of colorings.
    Count {
        pres: String,
        #[arg(long)]
        rack: String,
    },
    /// Print every coloring, one `sheet=value ...` line each, in
    /// lexicographic order over the declared sheet order.
    List {
        pres: String,
        #[arg(long)]
        rack: String,
    },
}

#[derive(Subcommand)]
enum PresCmd {
    /// Check a presentation's internal references.
    Validate { pres: String },
}

#[derive(Subcommand)]
enum MoveCmd {
    /// Check that a move schema preserves coloring counts over every
    /// boundary assignment.
    Verify {
        /// Schema: a `.schema` path or `catalog:<name>`.
        schema: String,
        /// Rack: a `.rack` path or `builtin:<family>:<n>`.
        #[arg(long)]
        rack: String,
    },
    /// Print the built-in move schemas.
    Catalog,
}

/// A command's printable result. `negative` marks verdicts that should
/// exit 1 even though the command itself ran fine.
struct Outcome {
    text: String,
    json: Value,
    negative: bool,
}

impl Outcome {
    fn new(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            negative: false,
        }
    }

    fn verdict(text: String, json: Value, negative: bool) -> Self {
        Outcome {
            text,
            json,
            negative,
        }
    }
}

/// An error that prevented the command from producing its report. Always
/// exits 2: negative verdicts are `Outcome`s, not `Failure`s.
struct Failure {
    message: String,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
        }
    }
}

macro_rules! failure_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::new(e.to_string())
            }
        }
    )*};
}

failure_from!(
    AlgebraError,
    PresentationError,
    ColoringError,
    TransformError,
    MoveError
);

fn main() {
    let cli = Cli::parse();
    if let Err(f) = configure_workers() {
        eprintln!("rackle: {}", f.message);
        exit(2);
    }
    match run(&cli.command) {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Text => out.text.trim_end_matches('\n').to_string(),
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
            };
            // A reader that hangs up early (e.g. `| head`) is not an error;
            // the verdict stands.
            if let Err(e) = print_stdout(&rendered) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("rackle: stdout: {e}");
                    exit(2);
                }
            }
            exit(if out.negative { 1 } else { 0 });
        }
        Err(f) => {
            eprintln!("rackle: {}", f.message);
            exit(2);
        }
    }
}

fn print_stdout(s: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(s.as_bytes())?;
    out.write_all(b"\n")?;
    out.flush()
}

/// Applies `RACKLE_WORKERS` before any parallel work starts.
fn configure_workers() -> Result<(), Failure> {
    let raw = match std::env::var("RACKLE_WORKERS") {
        Ok(raw) => raw,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(e) => return Err(Failure::new(format!("RACKLE_WORKERS: {e}"))),
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
        Failure::new(format!(
            "RACKLE_WORKERS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::new(format!("worker pool: {e}")))
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Rack(cmd) => run_rack(cmd),
        Command::Color(cmd) => run_color(cmd),
        Command::Pres(PresCmd::Validate { pres }) => run_validate(pres),
        Command::Pushoff { pres } => run_pushoff(pres),
        Command::Numbering { pres } => run_numbering(pres),
        Command::Theorem2 { pres, rack } => run_theorem2(pres, rack),
        Command::Move(cmd) => run_move(cmd),
        Command::Satoh { rack } => run_satoh(rack),
    }
}

// ---------------------------------------------------------------------
// input addressing

fn read_file(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(format!("{path}: {e}")))
}

/// `.rack` path or `builtin:<family>:<n>`.
fn load_rack(src: &str) -> Result<RackTable, Failure> {
    if let Some(rest) = src.strip_prefix("builtin:") {
        let (family, order) = rest.split_once(':').ok_or_else(|| {
            Failure::new(format!(
                "bad rack address `{src}` (expected builtin:<family>:<n>)"
            ))
        })?;
        let family: Family = family.parse()?;
        let n: usize = order
            .parse()
            .map_err(|_| Failure::new(format!("bad builtin rack order `{order}`")))?;
        return Ok(RackTable::builtin(family, n)?);
    }
    Ok(RackTable::parse(&read_file(src)?)?.with_label(src))
}

/// `.pres` path or `corpus:<name>`.
fn load_pres(src: &str) -> Result<Presentation, Failure> {
    parse_pres(src)?.map_err(Failure::from)
}

/// Splits addressing problems (outer error) from the parse result so
/// `pres validate` can render violations as a verdict.
fn parse_pres(src: &str) -> Result<Result<Presentation, PresentationError>, Failure> {
    if let Some(name) = src.strip_prefix("corpus:") {
        let p = builtin_presentation(name)
            .ok_or_else(|| Failure::new(format!("unknown corpus presentation `{name}`")))?;
        return Ok(Ok(p));
    }
    Ok(Presentation::parse(&read_file(src)?))
}

/// `.schema` path or `catalog:<name>`.
fn load_schema(src: &str) -> Result<MoveSchema, Failure> {
    if let Some(name) = src.strip_prefix("catalog:") {
        return catalog()
            .into_iter()
            .find(|m| m.name == name)
            .ok_or_else(|| {
                let names: Vec<String> = catalog().into_iter().map(|m| m.name).collect();
                Failure::new(format!(
                    "unknown catalog move `{name}` (available: {})",
                    names.join(", ")
                ))
            });
    }
    Ok(MoveSchema::parse(&read_file(src)?)?)
}

// ---------------------------------------------------------------------
// rendering helpers

fn holds_or_fails<T: std::fmt::Debug>(witness: &Option<T>) -> String {
    match witness {
        None => "holds".to_string(),
        Some(w) => format!("fails at {w:?}"),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn walk_line(walk: &WitnessWalk) -> String {
    let mut line = String::from("walk:");
    for (i, step) in walk.steps.iter().enumerate() {
        if i == 0 {
            line.push(' ');
            line.push_str(&step.from);
        }
        line.push_str(&format!(" -({})-> {}", step.delta, step.to));
    }
    line
}

fn walk_json(walk: &WitnessWalk) -> Value {
    let steps: Vec<Value> = walk
        .steps
        .iter()
        .map(|s| json!({"from": s.from, "to": s.to, "delta": s.delta}))
        .collect();
    json!({"steps": steps, "sum": walk.sum()})
}

fn coloring_json(c: &Coloring) -> Value {
    let map: serde_json::Map<String, Value> =
        c.iter().map(|(s, v)| (s.to_string(), json!(v))).collect();
    Value::Object(map)
}

fn axiom_lines(report: &AxiomReport) -> Vec<String> {
    vec![
        format!("q1 idempotence: {}", holds_or_fails(&report.q1_witness)),
        format!(
            "q2 right translations bijective: {}",
            holds_or_fails(&report.q2_witness)
        ),
        format!(
            "q3 self-distributivity: {}",
            holds_or_fails(&report.q3_witness)
        ),
        format!("rack: {}", yes_no(report.is_rack())),
        format!("quandle: {}", yes_no(report.is_quandle())),
    ]
}

// ---------------------------------------------------------------------
// rack subcommands

fn run_rack(cmd: &RackCmd) -> Result<Outcome, Failure> {
    match cmd {
        RackCmd::Check { src } => {
            let t = load_rack(src)?;
            let report = t.check_axioms();
            let mut lines = vec![format!("order {}", t.order())];
            if let Some(label) = t.label() {
                lines.push(format!("label {label}"));
            }
            lines.extend(axiom_lines(&report));
            let json = json!({
                "order": t.order(),
                "label": t.label(),
                "q1": report.q1(),
                "q1_witness": report.q1_witness,
                "q2": report.q2(),
                "q2_witness": report.q2_witness,
                "q3": report.q3(),
                "q3_witness": report.q3_witness,
                "rack": report.is_rack(),
                "quandle": report.is_quandle(),
                "text": t.to_text(),
            });
            Ok(Outcome::verdict(lines.join("\n"), json, !report.is_rack()))
        }
        RackCmd::Kink { src } => {
            let t = load_rack(src)?;
            let kink = t.kink_map()?;
            let report = t.verify_kink_properties()?;
            let fmt_perm = |p: &[usize]| {
                p.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let lines = [
                format!("order {}", t.order()),
                format!("forward: {}", fmt_perm(kink.forward())),
                format!("inverse: {}", fmt_perm(kink.inverse())),
                format!("identity: {}", yes_no(kink.is_identity())),
                format!(
                    "defining i(a)*a = a: {}",
                    holds_or_fails(&report.defining_witness)
                ),
                format!("k1 injectivity: {}", holds_or_fails(&report.k1_witness)),
                format!("k2 i(a)*b = i(a*b): {}", holds_or_fails(&report.k2_witness)),
                format!("k3 a*i(b) = a*b: {}", holds_or_fails(&report.k3_witness)),
            ];
            let json = json!({
                "order": t.order(),
                "forward": kink.forward(),
                "inverse": kink.inverse(),
                "identity": kink.is_identity(),
                "defining": report.defining_witness.is_none(),
                "defining_witness": report.defining_witness,
                "k1": report.k1(),
                "k1_witness": report.k1_witness,
                "k2": report.k2(),
                "k2_witness": report.k2_witness,
                "k3": report.k3(),
                "k3_witness": report.k3_witness,
            });
            Ok(Outcome::verdict(lines.join("\n"), json, !report.all_hold()))
        }
        RackCmd::Assoc { src } => {
            let t = load_rack(src)?;
            let q = t.associated_quandle()?;
            let json = json!({
                "order": q.order(),
                "label": q.label(),
                "text": q.to_text(),
            });
            Ok(Outcome::new(q.to_text(), json))
        }
        RackCmd::Components { src } => {
            let t = load_rack(src)?;
            let comps = t.connected_components()?;
            let mut lines = vec![format!("components: {}", comps.len())];
            for (i, members) in comps.iter().enumerate() {
                let members: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                lines.push(format!("component {i}: {}", members.join(" ")));
            }
            let json = json!({"count": comps.len(), "components": comps});
            Ok(Outcome::new(lines.join("\n"), json))
        }
        RackCmd::Enumerate { n } => {
            let racks = enumerate_racks(*n)?;
            let quandles = racks.iter().filter(|t| t.is_quandle()).count();
            let mut text = format!("order {n}\nracks: {}\nquandles: {quandles}\n", racks.len());
            let mut entries = Vec::new();
            for (i, t) in racks.iter().enumerate() {
                let tag = if t.is_quandle() { " (quandle)" } else { "" };
                text.push_str(&format!("\n# rack {i}{tag}\n{}", t.to_text()));
                entries.push(json!({"index": i, "quandle": t.is_quandle(), "text": t.to_text()}));
            }
            let json = json!({
                "order": n,
                "count": racks.len(),
                "quandle_count": quandles,
                "racks": entries,
            });
            Ok(Outcome::new(text, json))
        }
    }
}

// ---------------------------------------------------------------------
// coloring subcommands

fn run_color(cmd: &ColorCmd) -> Result<Outcome, Failure> {
    match cmd {
        ColorCmd::Count { pres, rack } => {
            let p = load_pres(pres)?;
            let t = load_rack(rack)?;
            let count = count_colorings(&p, &t)?;
            Ok(Outcome::new(count.to_string(), json!({"count": count})))
        }
        ColorCmd::List { pres, rack } => {
            let p = load_pres(pres)?;
            let t = load_rack(rack)?;
            let colorings = enumerate_colorings(&p, &t)?;
            let lines: Vec<String> = colorings.iter().map(|c| c.to_line(&p.sheets)).collect();
            let json = json!({
                "count": colorings.len(),
                "sheets": p.sheets,
                "colorings": colorings.iter().map(coloring_json).collect::<Vec<_>>(),
            });
            Ok(Outcome::new(lines.join("\n"), json))
        }
    }
}

// ---------------------------------------------------------------------
// presentation subcommands

fn run_validate(pres: &str) -> Result<Outcome, Failure> {
    match parse_pres(pres)? {
        Ok(p) => {
            let json = json!({"valid": true, "violations": [], "text": p.to_text()});
            Ok(Outcome::new("valid".to_string(), json))
        }
        Err(PresentationError::Invalid(violations)) => {
            let mut lines = vec!["invalid".to_string()];
            let rendered: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            lines.extend(rendered.iter().map(|v| format!("- {v}")));
            let json = json!({"valid": false, "violations": rendered});
            Ok(Outcome::verdict(lines.join("\n"), json, true))
        }
        Err(e) => Err(e.into()),
    }
}

// ---------------------------------------------------------------------
// transform subcommands

fn run_pushoff(pres: &str) -> Result<Outcome, Failure> {
    let d = load_pres(pres)?;
    let (overlay, strips) = pushoff(&d)?;
    let mut text = overlay.to_text();
    for (strip, parent) in strips.iter() {
        text.push_str(&format!("# strip {strip} {parent}\n"));
    }
    let strip_entries: Vec<Value> = strips
        .iter()
        .map(|(s, p)| json!({"strip": s, "parent": p}))
        .collect();
    let json = json!({"text": overlay.to_text(), "strips": strip_entries});
    Ok(Outcome::new(text, json))
}

fn run_numbering(pres: &str) -> Result<Outcome, Failure> {
    let p = load_pres(pres)?;
    match alexander_numbering(&p)? {
        NumberingOutcome::Consistent(numbering) => {
            let mut lines = vec!["consistent".to_string()];
            for sheet in &p.sheets {
                if let Some(v) = numbering.get(sheet) {
                    lines.push(format!("{sheet}={v}"));
                }
            }
            let json = json!({"consistent": true, "values": numbering.values});
            Ok(Outcome::new(lines.join("\n"), json))
        }
        NumberingOutcome::Inconsistent(walk) => {
            let lines = [
                "inconsistent".to_string(),
                walk_line(&walk),
                format!("sum: {}", walk.sum()),
            ];
            let json = json!({"consistent": false, "walk": walk_json(&walk)});
            Ok(Outcome::verdict(lines.join("\n"), json, true))
        }
    }
}

fn run_theorem2(pres: &str, rack: &str) -> Result<Outcome, Failure> {
    let d = load_pres(pres)?;
    let t = load_rack(rack)?;
    let report = theorem2_report(&d, &t)?;
    let mut lines = Vec::new();
    let numbering_json = match &report.numbering {
        NumberingOutcome::Consistent(n) => {
            lines.push("numbering: consistent".to_string());
            json!({"consistent": true, "values": n.values})
        }
        NumberingOutcome::Inconsistent(walk) => {
            lines.push("numbering: inconsistent".to_string());
            lines.push(walk_line(walk));
            lines.push(format!("sum: {}", walk.sum()));
            json!({"consistent": false, "walk": walk_json(walk)})
        }
    };
    lines.push(format!("quandle colorings: {}", report.quandle_count));
    lines.push(format!("rack colorings: {}", report.rack_count));
    let (status_line, status_tag) = match report.status {
        BijectionStatus::VerifiedPointwise => {
            ("bijection verified pointwise", "verified-pointwise")
        }
        BijectionStatus::VerifiedQuandle => (
            "bijection verified: identity kink map, the colorings coincide",
            "verified-quandle",
        ),
        BijectionStatus::NotClaimed => ("no bijection claimed", "not-claimed"),
    };
    lines.push(status_line.to_string());
    let strip_entries: Vec<Value> = report
        .strips
        .iter()
        .map(|(s, p)| json!({"strip": s, "parent": p}))
        .collect();
    let json = json!({
        "numbering": numbering_json,
        "quandle_count": report.quandle_count,
        "rack_count": report.rack_count,
        "status": status_tag,
        "overlay": report.overlay.to_text(),
        "strips": strip_entries,
    });
    let negative = report.status == BijectionStatus::NotClaimed;
    Ok(Outcome::verdict(lines.join("\n"), json, negative))
}

// ---------------------------------------------------------------------
// move subcommands

fn run_move(cmd: &MoveCmd) -> Result<Outcome, Failure> {
    match cmd {
        MoveCmd::Verify { schema, rack } => {
            let m = load_schema(schema)?;
            let t = load_rack(rack)?;
            let report = verify_move(&m, &t)?;
            let mut lines = vec![
                format!("schema: {}", report.name),
                format!("boundary: {}", report.boundary.join(" ")),
                format!("classes: {}", report.fibers.len()),
                format!("before total: {}", report.before_total),
                format!("after total: {}", report.after_total),
                format!("bijective: {}", yes_no(report.bijective)),
            ];
            let mismatches: Vec<(&Vec<usize>, &(u64, u64))> =
                report.fibers.iter().filter(|(_, (b, a))| b != a).collect();
            for (tuple, (before, after)) in mismatches.iter().take(10) {
                let assignment: Vec<String> = report
                    .boundary
                    .iter()
                    .zip(tuple.iter())
                    .map(|(s, v)| format!("{s}={v}"))
                    .collect();
                lines.push(format!(
                    "mismatch at {}: before {before}, after {after}",
                    assignment.join(" ")
                ));
            }
            if mismatches.len() > 10 {
                lines.push(format!("(+{} more)", mismatches.len() - 10));
            }
            let mismatch_json: Vec<Value> = mismatches
                .iter()
                .map(|(tuple, (b, a))| json!({"class": tuple, "before": b, "after": a}))
                .collect();
            let json = json!({
                "name": report.name,
                "boundary": report.boundary,
                "classes": report.fibers.len(),
                "before_total": report.before_total,
                "after_total": report.after_total,
                "bijective": report.bijective,
                "mismatches": mismatch_json,
            });
            Ok(Outcome::verdict(lines.join("\n"), json, !report.bijective))
        }
        MoveCmd::Catalog => {
            let schemas = catalog();
            let text = schemas
                .iter()
                .map(|m| m.to_text())
                .collect::<Vec<_>>()
                .join("\n");
            let entries: Vec<Value> = schemas
                .iter()
                .map(|m| json!({"name": m.name, "text": m.to_text()}))
                .collect();
            let names: Vec<&str> = schemas.iter().map(|m| m.name.as_str()).collect();
            let json = json!({"count": schemas.len(), "names": names, "schemas": entries});
            Ok(Outcome::new(text, json))
        }
    }
}

// ---------------------------------------------------------------------
// satoh

fn run_satoh(rack: &str) -> Result<Outcome, Failure> {
    let t = load_rack(rack)?;
    let report = satoh_discrimination(&t)?;
    let (verdict_line, verdict_tag, negative) = match report.verdict {
        SatohVerdict::NotRegularEquivalent => (
            "verdict: not regular-equivalent",
            "not-regular-equivalent",
            false,
        ),
        SatohVerdict::Indistinguishable => (
            "verdict: indistinguishable by this rack",
            "indistinguishable",
            true,
        ),
    };
    let lines = [
        format!("satoh_d1 colorings: {}", report.d1_count),
        format!("satoh_d2 colorings: {}", report.d2_count),
        verdict_line.to_string(),
    ];
    let json = json!({
        "d1_count": report.d1_count,
        "d2_count": report.d2_count,
        "verdict": verdict_tag,
    });
    Ok(Outcome::verdict(lines.join("\n"), json, negative))
}

//! Subcommands. Each one loads its inputs, calls a single core operation
//! and formats the answer.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use fincat::cauchy::{
    cauchy_extension, cauchy_point_from_idempotent, is_absolute_weight, is_cauchy_complete, karoubi_envelope,
    realize_cauchy_point, retract_of_representable, split_idempotent,
};
use fincat::cones::{weighted_colimit_in_c, weighted_limit_in_c, LimitInC, WeightedDiagram};
use fincat::day::{check_yoneda_strong_monoidal, day_convolve, DayCheckKind};
use fincat::elements::category_of_elements;
use fincat::ends::{coend_of, end_of, nat_transformations_end, pairing, Profunctor};
use fincat::extend::{extend, extend_with_label};
use fincat::kan::{left_kan_pointwise, right_kan_pointwise, KanResult};
use fincat::limits::{colimit_set, limit_set, weighted_colimit_set, weighted_limit_set};
use fincat::profunctor::{collage, compose_profunctors};
use fincat::setfunctor::nat_transformations_direct;
use fincat::{hom_functor, opposite, with_size_cap, FinCategory, FinSet, Mor, NatTransformation, SetFunctor, Variance, DEFAULT_CAP};
use serde_json::json;

use crate::dot;
use crate::error::{CliError, Result};
use crate::io::{self, FunctorFile, ProfunctorFile, SetFunctorFile, Value};

#[derive(Debug, Parser)]
#[command(name = "fincat", version, about = "Exact computation over finite categories")]
struct Cli {
    /// Largest number of states any single enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Exit with status 1 when the answer is "none".
    #[arg(long, global = true)]
    expect_some: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NatMethod {
    Direct,
    End,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check any workspace file.
    Validate { file: PathBuf },
    /// The opposite category.
    Opposite { category: PathBuf },
    /// The hom functor C(X, -), or C(-, X) with --contravariant.
    Hom {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        contravariant: bool,
    },
    /// C with an extra object whose arrows are the elements of a set functor.
    Extend {
        functor: PathBuf,
        #[arg(long)]
        label: Option<String>,
    },
    /// The category of elements of a set functor.
    Elements { functor: PathBuf },
    /// The limit of a set-valued diagram.
    Limit { functor: PathBuf },
    /// The colimit of a set-valued diagram.
    Colimit { functor: PathBuf },
    /// A weighted limit: in C for a weighted-diagram file, in Set for a set
    /// functor with --weight.
    Wlimit {
        diagram: PathBuf,
        #[arg(long)]
        weight: Option<PathBuf>,
    },
    /// A weighted colimit, as for wlimit.
    Wcolimit {
        diagram: PathBuf,
        #[arg(long)]
        weight: Option<PathBuf>,
    },
    /// The end of a bifunctor: `hom` with --category, or a profunctor file.
    End {
        bifunctor: String,
        #[arg(long)]
        category: Option<PathBuf>,
    },
    /// The coend of a bifunctor, as for end.
    Coend {
        bifunctor: String,
        #[arg(long)]
        category: Option<PathBuf>,
    },
    /// The pairing of a presheaf with a set functor.
    Pairing {
        #[arg(long)]
        presheaf: PathBuf,
        #[arg(long)]
        functor: PathBuf,
    },
    /// Natural transformations between two set functors.
    Nat {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = NatMethod::Direct)]
        method: NatMethod,
    },
    /// The pointwise right Kan extension of a diagram along a functor.
    KanRight {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        along: PathBuf,
    },
    /// The pointwise left Kan extension of a diagram along a functor.
    KanLeft {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        along: PathBuf,
    },
    /// Split an idempotent.
    Split {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        idempotent: String,
    },
    /// The Karoubi envelope.
    Karoubi { category: PathBuf },
    /// Whether every idempotent splits.
    CauchyComplete { category: PathBuf },
    /// The Cauchy point of an idempotent.
    CauchyPoint {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        idempotent: String,
    },
    /// C extended by the Cauchy point of an idempotent.
    CauchyExtend {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        idempotent: String,
    },
    /// Realize the Cauchy point of an idempotent by an object of C.
    Realize {
        #[arg(long)]
        category: PathBuf,
        #[arg(long)]
        idempotent: String,
    },
    /// Exhibit a set functor as a retract of a representable.
    Retract { functor: PathBuf },
    /// Whether a weight is absolute.
    AbsoluteWeight { weight: PathBuf },
    /// The collage of a profunctor.
    Collage { profunctor: PathBuf },
    /// The composite of two profunctors, first then second.
    Profcompose { first: PathBuf, second: PathBuf },
    /// Day convolution of two set functors or presheaves.
    Day {
        #[arg(long)]
        monoidal: PathBuf,
        left: PathBuf,
        right: PathBuf,
    },
    /// Check that the Yoneda embedding is strong monoidal for Day convolution.
    StrongMonoidal { monoidal: PathBuf },
    /// DOT for a category, an extension by a set functor, a weighted cone
    /// or a collage.
    Dot { file: PathBuf },
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command's answer in both output formats.
struct Report {
    text: String,
    json: serde_json::Value,
    /// False for a mathematical "none" answer.
    some: bool,
}

impl Report {
    fn new(text: String, json: serde_json::Value) -> Self {
        Report { text, json, some: true }
    }

    /// A workspace document, printed the same way in both formats.
    fn document(text: String) -> Self {
        let json = serde_json::from_str(&text).expect("documents are JSON");
        Report { text, json, some: true }
    }

    fn raw(text: String) -> Self {
        Report {
            json: json!({ "dot": text.clone() }),
            text,
            some: true,
        }
    }

    fn none(mut self) -> Self {
        self.some = false;
        self
    }
}

/// Runs the command line `args`, whose first item is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match with_size_cap(cli.cap, || execute(&cli.command)) {
        Ok(report) => {
            let mut stdout = match cli.format {
                Format::Text => report.text,
                Format::Json => io::pretty(&report.json),
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            let code = if cli.expect_some && !report.some { 1 } else { 0 };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn category(path: &Path) -> Result<Arc<FinCategory>> {
    io::load_category(path)
}

fn set_functor(path: &Path) -> Result<SetFunctorFile> {
    match io::load(path)? {
        Value::SetFunctor(f) => Ok(f),
        other => Err(usage(format!("{}: expected a setfunctor file, found a {}", path.display(), other.kind()))),
    }
}

fn functor(path: &Path) -> Result<FunctorFile> {
    match io::load(path)? {
        Value::Functor(f) => Ok(f),
        other => Err(usage(format!("{}: expected a functor file, found a {}", path.display(), other.kind()))),
    }
}

fn profunctor(path: &Path) -> Result<ProfunctorFile> {
    match io::load(path)? {
        Value::Profunctor(p) => Ok(p),
        other => Err(usage(format!("{}: expected a profunctor file, found a {}", path.display(), other.kind()))),
    }
}

fn idempotent(c: &FinCategory, name: &str) -> Result<Mor> {
    let e = c.morphism(name)?;
    if !fincat::cauchy::is_idempotent(c, e) {
        return Err(usage(format!("`{name}` is not idempotent")));
    }
    Ok(e)
}

/// `"n classes: a, b"`, the shared shape of set-valued answers.
fn listing(noun: &str, set: &FinSet) -> Report {
    let text = if set.is_empty() {
        format!("0 {noun}")
    } else {
        format!("{} {noun}: {}", set.len(), set.elements().join(", "))
    };
    Report::new(text, json!({ noun: set.elements() }))
}

fn bifunctor(name: &str, base: Option<&Path>) -> Result<Profunctor> {
    if name == "hom" {
        let path = base.ok_or_else(|| usage("`hom` needs --category"))?;
        return Ok(Profunctor::hom(&category(path)?));
    }
    if base.is_some() {
        return Err(usage("--category applies only to `hom`"));
    }
    let p = profunctor(Path::new(name))?.profunctor;
    if !p.is_endo() {
        return Err(usage(format!("{name}: source and target differ")));
    }
    Ok(p)
}

fn transformation_json(t: &NatTransformation, s: &SetFunctor, u: &SetFunctor) -> serde_json::Value {
    let c = s.base();
    let mut map = serde_json::Map::new();
    for x in c.objects() {
        let comp = t.component(x);
        let entries: serde_json::Map<String, serde_json::Value> = (0..s.set(x).len())
            .map(|i| (s.set(x).element(i).to_string(), json!(u.set(x).element(comp.apply(i)))))
            .collect();
        map.insert(c.object_name(x).to_string(), serde_json::Value::Object(entries));
    }
    serde_json::Value::Object(map)
}

fn limit_report(found: Option<LimitInC>, wd: &WeightedDiagram, word: &str) -> Report {
    let Some(l) = found else {
        return Report::new(format!("none: no weighted {word}"), json!({ "object": null })).none();
    };
    let (j, c) = (wd.shape(), wd.category());
    let mut lines = vec![format!("{word}: {}", c.object_name(l.object))];
    let mut legs = Vec::new();
    for x in j.objects() {
        for (w, &leg) in l.cone.legs[x.0].iter().enumerate() {
            let el = wd.weight.set(x).element(w);
            lines.push(format!("  leg {} {}: {}", j.object_name(x), el, c.mor_name(leg)));
            legs.push(json!({ "object": j.object_name(x), "weight": el, "morphism": c.mor_name(leg) }));
        }
    }
    Report::new(lines.join("\n"), json!({ "object": c.object_name(l.object), "legs": legs }))
}

fn kan_report(k: &KanResult) -> Report {
    let target = k.along().target();
    let c = k.diagram().target();
    let mut lines = Vec::new();
    let mut values = serde_json::Map::new();
    for x in target.objects() {
        let v = k.objects[x.0].map(|o| c.object_name(o).to_string());
        lines.push(format!("{}: {}", target.object_name(x), v.as_deref().unwrap_or("none")));
        values.insert(target.object_name(x).to_string(), json!(v));
    }
    lines.push(if k.is_total() { "extension: total".into() } else { "extension: partial".into() });
    let report = Report::new(lines.join("\n"), json!({ "values": values, "total": k.is_total() }));
    if k.is_total() {
        report
    } else {
        report.none()
    }
}

fn execute(command: &Command) -> Result<Report> {
    Ok(match command {
        Command::Validate { file } => {
            let v = io::load(file)?;
            let text = match &v {
                Value::Category(c) => format!("ok: {} objects, {} morphisms", c.num_objects(), c.num_morphisms()),
                Value::Functor(f) => format!("ok: functor {} -> {}", f.functor.source().name(), f.functor.target().name()),
                Value::SetFunctor(f) => format!(
                    "ok: {} set functor on {}, {} elements",
                    f.functor.variance().as_str(),
                    f.functor.base().name(),
                    f.functor.total_size()
                ),
                Value::Profunctor(p) => format!(
                    "ok: profunctor {} -|-> {}",
                    p.profunctor.source().name(),
                    p.profunctor.target().name()
                ),
                Value::Monoidal(m) => format!(
                    "ok: strict monoidal structure on {} with unit {}",
                    m.monoidal.base().name(),
                    m.monoidal.base().object_name(m.monoidal.unit())
                ),
                Value::WeightedDiagram(w) => format!(
                    "ok: weighted {} diagram {} -> {}",
                    if w.diagram.is_limit() { "limit" } else { "colimit" },
                    w.diagram.shape().name(),
                    w.diagram.category().name()
                ),
            };
            Report::new(text, json!({ "ok": true, "kind": v.kind() }))
        }
        Command::Opposite { category: path } => Report::document(io::category_text(&opposite(&*category(path)?))),
        Command::Hom {
            category: path,
            object,
            contravariant,
        } => {
            let c = category(path)?;
            let x = c.object(object)?;
            let variance = if *contravariant { Variance::Contravariant } else { Variance::Covariant };
            Report::document(io::setfunctor_text(&SetFunctorFile {
                functor: hom_functor(&c, x, variance),
                category: path.display().to_string(),
            }))
        }
        Command::Extend { functor: path, label } => {
            let s = set_functor(path)?.functor;
            let ext = match label {
                Some(l) => extend_with_label(s.base(), &s, l)?,
                None => extend(s.base(), &s)?,
            };
            Report::document(io::category_text(ext.category()))
        }
        Command::Elements { functor: path } => {
            let s = set_functor(path)?.functor;
            Report::document(io::category_text(category_of_elements(&s)?.category()))
        }
        Command::Limit { functor: path } => listing("elements", &limit_set(&set_functor(path)?.functor)?.carrier),
        Command::Colimit { functor: path } => listing("classes", &colimit_set(&set_functor(path)?.functor)?.carrier),
        Command::Wlimit { diagram, weight } | Command::Wcolimit { diagram, weight } => {
            let limit = matches!(command, Command::Wlimit { .. });
            match (io::load(diagram)?, weight) {
                (Value::WeightedDiagram(w), None) => {
                    let wd = &w.diagram;
                    if wd.is_limit() != limit {
                        return Err(usage("the weight's variance does not match the command"));
                    }
                    if limit {
                        limit_report(weighted_limit_in_c(wd)?, wd, "limit")
                    } else {
                        limit_report(weighted_colimit_in_c(wd)?, wd, "colimit")
                    }
                }
                (Value::SetFunctor(d), Some(w)) => {
                    let w = set_functor(w)?.functor;
                    if limit {
                        listing("elements", &weighted_limit_set(&d.functor, &w)?.carrier)
                    } else {
                        listing("classes", &weighted_colimit_set(&d.functor, &w)?.carrier)
                    }
                }
                (Value::WeightedDiagram(_), Some(_)) => return Err(usage("--weight is only for set-valued diagrams")),
                (_, _) => return Err(usage("expected a weighted-diagram file, or a set functor with --weight")),
            }
        }
        Command::End { bifunctor: b, category: c } => listing("elements", &end_of(&bifunctor(b, c.as_deref())?)?.carrier),
        Command::Coend { bifunctor: b, category: c } => listing("classes", &coend_of(&bifunctor(b, c.as_deref())?)?.carrier),
        Command::Pairing { presheaf, functor: f } => {
            let p = set_functor(presheaf)?.functor;
            let f = set_functor(f)?.functor;
            listing("classes", &pairing(&p, &f)?.carrier)
        }
        Command::Nat { source, target, method } => {
            let s = set_functor(source)?.functor;
            let t = set_functor(target)?.functor;
            let all = match method {
                NatMethod::Direct => nat_transformations_direct(&s, &t)?,
                NatMethod::End => nat_transformations_end(&s, &t)?.transformations,
            };
            let mut lines = vec![format!("{} transformations", all.len())];
            let mut list = Vec::new();
            for a in &all {
                let j = transformation_json(a, &s, &t);
                lines.push(format!("  {}", serde_json::to_string(&j).expect("json")));
                list.push(j);
            }
            let report = Report::new(lines.join("\n"), json!({ "transformations": list }));
            if all.is_empty() {
                report.none()
            } else {
                report
            }
        }
        Command::KanRight { diagram, along } => {
            kan_report(&right_kan_pointwise(&functor(diagram)?.functor, &functor(along)?.functor)?)
        }
        Command::KanLeft { diagram, along } => {
            kan_report(&left_kan_pointwise(&functor(diagram)?.functor, &functor(along)?.functor)?)
        }
        Command::Split { category: path, idempotent: name } => {
            let c = category(path)?;
            let e = idempotent(&c, name)?;
            match split_idempotent(&c, e) {
                Some(s) => Report::new(
                    format!(
                        "split through {}: section {}, retraction {}",
                        c.object_name(s.through),
                        c.mor_name(s.section),
                        c.mor_name(s.retraction)
                    ),
                    json!({
                        "through": c.object_name(s.through),
                        "section": c.mor_name(s.section),
                        "retraction": c.mor_name(s.retraction),
                    }),
                ),
                None => Report::new("not split".into(), json!({ "through": null })).none(),
            }
        }
        Command::Karoubi { category: path } => {
            Report::document(io::category_text(karoubi_envelope(&category(path)?)?.category()))
        }
        Command::CauchyComplete { category: path } => {
            let c = category(path)?;
            let r = is_cauchy_complete(&c);
            let names: Vec<&str> = r.non_split.iter().map(|e| c.mor_name(e.morphism)).collect();
            let report = Report::new(
                if r.complete { "complete".into() } else { format!("not complete: {}", names.join(", ")) },
                json!({ "complete": r.complete, "non_split": names }),
            );
            if r.complete {
                report
            } else {
                report.none()
            }
        }
        Command::CauchyPoint { category: path, idempotent: name } => {
            let c = category(path)?;
            let pt = cauchy_point_from_idempotent(&c, idempotent(&c, name)?)?;
            let sizes = |s: &SetFunctor| -> Vec<String> {
                c.objects().map(|x| format!("{}: {}", c.object_name(x), s.set(x).elements().join(" "))).collect()
            };
            let classes = pt.pairing().carrier.elements();
            let identity = &classes[pt.identity()];
            let text = [
                format!("functor: {}", sizes(pt.functor()).join("; ")),
                format!("presheaf: {}", sizes(pt.presheaf()).join("; ")),
                format!("endomorphisms: {}", classes.join(", ")),
                format!("identity: {identity}"),
            ]
            .join("\n");
            let set_json = |s: &SetFunctor| -> serde_json::Value {
                c.objects().map(|x| (c.object_name(x).to_string(), json!(s.set(x).elements()))).collect()
            };
            Report::new(
                text,
                json!({
                    "functor": set_json(pt.functor()),
                    "presheaf": set_json(pt.presheaf()),
                    "endomorphisms": classes,
                    "identity": identity,
                }),
            )
        }
        Command::CauchyExtend { category: path, idempotent: name } => {
            let c = category(path)?;
            let pt = cauchy_point_from_idempotent(&c, idempotent(&c, name)?)?;
            Report::document(io::category_text(cauchy_extension(&pt)?.category()))
        }
        Command::Realize { category: path, idempotent: name } => {
            let c = category(path)?;
            let pt = cauchy_point_from_idempotent(&c, idempotent(&c, name)?)?;
            match realize_cauchy_point(&pt)? {
                Some(x) => Report::new(format!("realized at {}", c.object_name(x)), json!({ "object": c.object_name(x) })),
                None => Report::new("not representable".into(), json!({ "object": null })).none(),
            }
        }
        Command::Retract { functor: path } => {
            let s = set_functor(path)?.functor;
            let c = s.base();
            match retract_of_representable(&s)? {
                Some(r) => {
                    let x = c.object_name(r.object);
                    let el = s.set(r.object).element(r.element);
                    let e = c.mor_name(r.idempotent);
                    Report::new(
                        format!("retract of the representable at {x}: element {el}, idempotent {e}"),
                        json!({ "object": x, "element": el, "idempotent": e }),
                    )
                }
                None => Report::new("not a retract of a representable".into(), json!({ "object": null })).none(),
            }
        }
        Command::AbsoluteWeight { weight } => {
            let absolute = is_absolute_weight(&set_functor(weight)?.functor)?;
            let report = Report::new(
                if absolute { "absolute".into() } else { "not absolute".into() },
                json!({ "absolute": absolute }),
            );
            if absolute {
                report
            } else {
                report.none()
            }
        }
        Command::Collage { profunctor: path } => {
            Report::document(io::category_text(&collage(&profunctor(path)?.profunctor)?.category))
        }
        Command::Profcompose { first, second } => {
            let (phi, psi) = (profunctor(first)?, profunctor(second)?);
            Report::document(io::profunctor_text(&ProfunctorFile {
                profunctor: compose_profunctors(&phi.profunctor, &psi.profunctor)?,
                source: phi.source,
                target: psi.target,
            }))
        }
        Command::Day { monoidal, left, right } => {
            let m = match io::load(monoidal)? {
                Value::Monoidal(m) => m,
                other => return Err(usage(format!("expected a monoidal file, found a {}", other.kind()))),
            };
            let (f, g) = (set_functor(left)?, set_functor(right)?);
            Report::document(io::setfunctor_text(&SetFunctorFile {
                functor: day_convolve(&f.functor, &g.functor, &m.monoidal)?,
                category: f.category,
            }))
        }
        Command::StrongMonoidal { monoidal } => {
            let m = match io::load(monoidal)? {
                Value::Monoidal(m) => m.monoidal,
                other => return Err(usage(format!("expected a monoidal file, found a {}", other.kind()))),
            };
            let c = m.base();
            let report = check_yoneda_strong_monoidal(&m)?;
            let mut lines = Vec::new();
            let mut checks = Vec::new();
            for ch in &report.checks {
                let kind = match ch.kind {
                    DayCheckKind::Tensor => "tensor",
                    DayCheckKind::LeftUnit => "left unit",
                    DayCheckKind::RightUnit => "right unit",
                    DayCheckKind::Associativity => "associativity",
                };
                let objs: Vec<&str> = ch.objects.iter().map(|&x| c.object_name(x)).collect();
                let verdict = if ch.found { "iso" } else { "no iso" };
                lines.push(format!("{} {kind} ({}): {verdict}", ch.variance.as_str(), objs.join(", ")));
                checks.push(json!({
                    "variance": ch.variance.as_str(),
                    "kind": kind,
                    "objects": objs,
                    "found": ch.found,
                }));
            }
            let passes = report.passes();
            lines.push(format!(
                "{}: {} checks",
                if passes { "strong monoidal" } else { "not strong monoidal" },
                report.checks.len()
            ));
            let r = Report::new(lines.join("\n"), json!({ "passes": passes, "checks": checks }));
            if passes {
                r
            } else {
                r.none()
            }
        }
        Command::Dot { file } => match io::load(file)? {
            Value::Category(c) => Report::raw(dot::category_dot(&c)),
            Value::SetFunctor(s) => Report::raw(dot::extension_dot(&extend(s.functor.base(), &s.functor)?)),
            Value::Profunctor(p) => Report::raw(dot::collage_dot(&collage(&p.profunctor)?)),
            Value::WeightedDiagram(w) => {
                let wd = &w.diagram;
                let found = if wd.is_limit() { weighted_limit_in_c(wd)? } else { weighted_colimit_in_c(wd)? };
                match found {
                    Some(l) => Report::raw(dot::cone_dot(wd, &l.cone)),
                    None => Report::new("none: no universal cone to draw".into(), json!({ "dot": null })).none(),
                }
            }
            other => return Err(usage(format!("cannot draw a {} file", other.kind()))),
        },
    })
}

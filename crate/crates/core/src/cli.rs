//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arith::ZPoly;
use crate::betti::BettiTable;
use crate::catalog::{self, VarietySpec};
use crate::chow::{chern_of_omega, chern_twist, dependency_locus_degree};
use crate::error::Error;
use crate::liaison::{duality_check, DeficiencyModules};
use crate::quadric::{self, Classification, QuadricDivisorSpec};
use crate::reg::{self, Setting};
use crate::table::{CohTable, DimRange};

const MAX_T: u32 = 20;

#[derive(Parser, Debug)]
#[command(name = "castelnuovo", version, about = "Cohomology, Chern classes and regularity of projective varieties")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List built-in varieties or show one with its invariants.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Cohomology table h^i(I_X(k)).
    Cohomology {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Cohomological index; all indices up to dim + 1 when omitted.
        #[arg(long = "i")]
        index: Option<usize>,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: Option<(i64, i64)>,
    },
    /// Castelnuovo-Mumford regularity of the ideal sheaf.
    Regularity {
        #[command(flatten)]
        variety: VarietyArgs,
    },
    /// h^1(I_X(k)) over a range and the degree from which X is k-normal.
    Normality {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: Option<(i64, i64)>,
    },
    /// Chern classes of Omega^1_{P^n}(twist) and its dependency-locus degree.
    Chern {
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Twist, possibly a polynomial in t such as 2+t.
        #[arg(long, default_value = "2+t", allow_hyphen_values = true)]
        twist: String,
        /// Specialize the family parameter.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
    },
    /// Graded Betti table of the ideal.
    Betti {
        #[command(flatten)]
        variety: VarietyArgs,
    },
    /// Divisors on rank 3 or 4 quadric cones.
    Quadric {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: usize,
        /// `a,b` for rank 4, `s` for rank 3.
        #[arg(long = "class")]
        class: String,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        range: Option<(i64, i64)>,
    },
    /// Check the dimension duality of deficiency modules of a linked pair.
    LiaisonCheck {
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
        /// Degrees of the linking complete intersection.
        #[arg(long, value_delimiter = ',')]
        ci: Vec<i64>,
    },
    /// Symbolic regularity bound for threefolds in P^5 or surfaces in P^4.
    VerifyBound {
        #[arg(long, value_enum)]
        setting: SettingArg,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SettingArg {
    ThreefoldP5,
    SurfaceP4,
}

#[derive(Args, Debug)]
struct VarietyArgs {
    /// palatini, ci, segre, quadric, skew-lines, or a compact name such as ci:5:2,2.
    #[arg(long)]
    variety: String,
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=MAX_T as i64))]
    t: Option<u32>,
    #[arg(long)]
    ambient: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long = "class")]
    class: Option<String>,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got '{s}'"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower end '{lo}'"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper end '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn check_t(t: u32) -> CliResult<u32> {
    if t > MAX_T {
        Err(Failure::Usage(format!("--t is capped at {MAX_T}, got {t}")))
    } else {
        Ok(t)
    }
}

fn quadric_spec(n: usize, rank: usize, class: &str) -> CliResult<QuadricDivisorSpec> {
    let nums: Vec<i64> = class
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| Failure::Usage(format!("bad class '{class}'"))))
        .collect::<CliResult<_>>()?;
    Ok(match (rank, nums.as_slice()) {
        (4, [a, b]) => QuadricDivisorSpec::rank4(n, *a, *b)?,
        (3, [s]) => QuadricDivisorSpec::rank3(n, *s)?,
        _ => return Err(Failure::Usage("use --rank 4 --class a,b or --rank 3 --class s".into())),
    })
}

fn resolve(v: &VarietyArgs) -> CliResult<VarietySpec> {
    let missing = |flag: &str| Failure::Usage(format!("--variety {} needs --{flag}", v.variety));
    let spec = match v.variety.as_str() {
        "palatini" => VarietySpec::PalatiniScroll { t: v.t.unwrap_or(0) },
        "segre" => VarietySpec::SegreThreefold,
        "skew-lines" => VarietySpec::TwoSkewLines,
        "ci" => {
            let ambient = v.ambient.ok_or_else(|| missing("ambient"))?;
            if v.degrees.is_empty() {
                return Err(missing("degrees"));
            }
            VarietySpec::complete_intersection(ambient, &v.degrees)?
        }
        "quadric" => {
            let n = v.n.ok_or_else(|| missing("n"))?;
            let rank = v.rank.ok_or_else(|| missing("rank"))?;
            let class = v.class.as_deref().ok_or_else(|| missing("class"))?;
            VarietySpec::QuadricDivisor(quadric_spec(n, rank, class)?)
        }
        other if other.contains(':') => other.parse()?,
        other => return Err(Failure::Usage(format!("unknown variety '{other}'"))),
    };
    if let VarietySpec::PalatiniScroll { t } = spec {
        check_t(t)?;
    }
    Ok(spec)
}

fn num(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn range_json(r: &DimRange) -> Value {
    json!({ "lo": num(r.lo()), "hi": r.hi().map_or(Value::Null, num) })
}

fn cell_json(i: usize, k: i64, r: &DimRange) -> Value {
    match r.exact_value() {
        Some(v) => json!({ "i": i, "k": k, "value": num(v) }),
        None => json!({ "i": i, "k": k, "interval": range_json(r) }),
    }
}

struct Output {
    inputs: Value,
    results: Value,
    text: String,
    csv: Option<String>,
}

type Cells = Vec<(usize, i64, DimRange)>;

fn cells(table: &CohTable, indices: &[usize], lo: i64, hi: i64) -> CliResult<Cells> {
    let mut out = Vec::new();
    for &i in indices {
        for k in lo..=hi {
            out.push((i, k, table.h(i, k)?));
        }
    }
    Ok(out)
}

fn render_grid(cells: &Cells, indices: &[usize], lo: i64, hi: i64) -> String {
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("i\\k".to_string()).chain((lo..=hi).map(|k| k.to_string())).collect()];
    for &i in indices {
        let mut row = vec![format!("h^{i}")];
        row.extend(cells.iter().filter(|c| c.0 == i).map(|c| c.2.to_string()));
        rows.push(row);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    rows.iter()
        .map(|r| r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_csv(cells: &Cells) -> String {
    let mut s = String::from("i,k,lo,hi\n");
    for (i, k, r) in cells {
        let hi = r.hi().map_or(String::new(), BigInt::to_string);
        let _ = writeln!(s, "{i},{k},{},{hi}", r.lo());
    }
    s
}

fn cells_json(cells: &Cells) -> Value {
    Value::Array(cells.iter().map(|(i, k, r)| cell_json(*i, *k, r)).collect())
}

fn default_range(spec: &VarietySpec) -> (i64, i64) {
    match catalog::regularity(spec) {
        Ok(r) => (-5, r.reg + 5),
        Err(_) => (-5, 10),
    }
}

fn normal_text(first: Option<i64>) -> String {
    match first {
        Some(k) => format!("k-normal for k >= {k}"),
        None => "k-normal for every k".to_string(),
    }
}

fn opt_json(v: Option<i64>) -> Value {
    v.map_or(Value::Null, |x| json!(x))
}

fn betti_json(b: &BettiTable) -> Value {
    let entries: Vec<Value> = (0..=b.length())
        .flat_map(|i| b.row(i).map(move |(j, beta)| json!({ "i": i, "j": j, "beta": beta })))
        .collect();
    json!({ "ambient": b.ambient(), "entries": entries, "regularity": b.regularity() })
}

fn cmd_catalog(action: &CatalogAction) -> CliResult<Output> {
    match action {
        CatalogAction::List => {
            let mut text = String::new();
            let mut list = Vec::new();
            for spec in catalog::catalog() {
                let _ = writeln!(text, "{:<16} {}", spec.to_string(), spec.description());
                list.push(json!({
                    "name": spec.to_string(),
                    "description": spec.description(),
                    "ambient": spec.ambient(),
                    "dim": spec.dim(),
                    "degree": num(&spec.declared_degree()),
                }));
            }
            Ok(Output { inputs: json!({}), results: Value::Array(list), text, csv: None })
        }
        CatalogAction::Show { name } => {
            let spec: VarietySpec = name.parse()?;
            if let VarietySpec::PalatiniScroll { t } = spec {
                check_t(t)?;
            }
            let inv = catalog::invariants(&spec)?;
            let fnf = normal_text(inv.first_normal_from);
            let text = format!(
                "{}\n  ambient: P^{}\n  dim: {}\n  codim: {}\n  degree: {}\n  sectional genus: {}\n  Hilbert polynomial: {}\n  reg: {}\n  {}\n",
                spec.description(),
                spec.ambient(),
                inv.dim,
                inv.codim,
                inv.degree,
                inv.sectional_genus,
                inv.hilbert_polynomial,
                inv.reg,
                fnf
            );
            let results = json!({
                "name": spec.to_string(),
                "description": spec.description(),
                "ambient": spec.ambient(),
                "dim": inv.dim,
                "codim": inv.codim,
                "degree": num(&inv.degree),
                "sectional_genus": num(&inv.sectional_genus),
                "hilbert_polynomial": inv.hilbert_polynomial.to_string(),
                "reg": inv.reg,
                "first_normal_from": opt_json(inv.first_normal_from),
            });
            Ok(Output { inputs: json!({ "name": name }), results, text, csv: None })
        }
    }
}

fn cmd_cohomology(v: &VarietyArgs, index: Option<usize>, range: Option<(i64, i64)>) -> CliResult<Output> {
    let spec = resolve(v)?;
    let table = catalog::ideal_table(&spec)?;
    let (lo, hi) = range.unwrap_or_else(|| default_range(&spec));
    let indices: Vec<usize> = match index {
        Some(i) if i > table.top() => {
            return Err(Failure::Domain(Error::IndexOutOfRange { q: i, top: table.top() }));
        }
        Some(i) => vec![i],
        None => (0..=(spec.dim() + 1).min(table.top())).collect(),
    };
    let cs = cells(&table, &indices, lo, hi)?;
    let text = format!("h^i(I_X(k)) for {}\n{}\n", spec.description(), render_grid(&cs, &indices, lo, hi));
    Ok(Output {
        inputs: json!({ "variety": spec.to_string(), "i": indices, "range": [lo, hi] }),
        results: cells_json(&cs),
        text,
        csv: Some(render_csv(&cs)),
    })
}

fn cmd_regularity(v: &VarietyArgs) -> CliResult<Output> {
    let spec = resolve(v)?;
    let r = catalog::regularity(&spec)?;
    let witnesses: Vec<Value> = r.failures.iter().map(|(i, k)| json!({ "i": i, "k": k })).collect();
    let wtext: Vec<String> = r.failures.iter().map(|(i, k)| format!("h^{i}(I_X({k})) != 0")).collect();
    let fnf = normal_text(r.first_normal_from);
    let text = format!(
        "{}\n  reg: {}\n  {}\n  witnesses: {}\n",
        spec.description(),
        r.reg,
        fnf,
        wtext.join(", ")
    );
    Ok(Output {
        inputs: json!({ "variety": spec.to_string() }),
        results: json!({ "reg": r.reg, "first_normal_from": opt_json(r.first_normal_from), "failures": witnesses }),
        text,
        csv: None,
    })
}

fn cmd_normality(v: &VarietyArgs, range: Option<(i64, i64)>) -> CliResult<Output> {
    let spec = resolve(v)?;
    let table = catalog::ideal_table(&spec)?;
    let (lo, hi) = range.unwrap_or_else(|| default_range(&spec));
    let cs = cells(&table, &[1], lo, hi)?;
    let first = reg::first_normal_from(&table)?;
    let fnf = normal_text(first);
    let text = format!(
        "h^1(I_X(k)) for {}\n{}\n{}\n",
        spec.description(),
        render_grid(&cs, &[1], lo, hi),
        fnf
    );
    Ok(Output {
        inputs: json!({ "variety": spec.to_string(), "range": [lo, hi] }),
        results: json!({ "h1": cells_json(&cs), "first_normal_from": opt_json(first) }),
        text,
        csv: Some(render_csv(&cs)),
    })
}

fn cmd_chern(n: usize, twist: &str, t: Option<i64>) -> CliResult<Output> {
    let l = ZPoly::parse(twist).ok_or_else(|| Failure::Usage(format!("cannot parse twist '{twist}'")))?;
    let mut data = chern_twist(&chern_of_omega(n)?, &l);
    if let Some(t) = t {
        data = data.specialize(t);
    }
    let poly_json = |p: &ZPoly| match p.degree() {
        None => json!(0),
        Some(0) => num(&p.coeff(0)),
        _ => json!(p.to_string()),
    };
    let classes: Vec<Value> = (0..=n).map(|i| json!({ "i": i, "c": poly_json(&data.c(i)) })).collect();
    let degree = if n >= 2 { Some(dependency_locus_degree(&data)?) } else { None };
    let mut text = format!("c(Omega^1_P{n}({twist})) = {}\n", data.total());
    if let Some(d) = &degree {
        let _ = writeln!(text, "dependency locus degree: {d}");
    }
    Ok(Output {
        inputs: json!({ "n": n, "twist": twist, "t": opt_json(t) }),
        results: json!({
            "rank": data.rank(),
            "classes": classes,
            "dependency_locus_degree": degree.as_ref().map_or(Value::Null, poly_json),
        }),
        text,
        csv: None,
    })
}

fn cmd_betti(v: &VarietyArgs) -> CliResult<Output> {
    let spec = resolve(v)?;
    let pres = catalog::presentation(&spec)?;
    let b = pres
        .betti
        .ok_or_else(|| Error::Unsupported(format!("{} has no closed-form resolution", spec.description())))?;
    let text = format!("{}\n{}\n", spec.description(), b.render());
    let mut results = betti_json(&b);
    results["hilbert_polynomial"] = json!(b.variety_hilbert_polynomial().to_string());
    Ok(Output { inputs: json!({ "variety": spec.to_string() }), results, text, csv: None })
}

fn cmd_quadric(n: usize, rank: usize, class: &str, range: Option<(i64, i64)>) -> CliResult<Output> {
    let spec = quadric_spec(n, rank, class)?;
    let kind = quadric::classify(&spec);
    let (kind_text, kind_json) = match kind {
        Classification::CompleteIntersection { other_degree } => (
            format!("complete intersection of Q and a hypersurface of degree {other_degree}"),
            json!({ "kind": "complete-intersection", "other_degree": other_degree }),
        ),
        Classification::LinkedToLinear { hypersurface_degree } => (
            format!("linked to a linear P^{n} by Q and a hypersurface of degree {hypersurface_degree}"),
            json!({ "kind": "linked-to-linear", "hypersurface_degree": hypersurface_degree }),
        ),
    };
    let b = quadric::ideal_resolution(&spec)?;
    let (lo, hi) = range.unwrap_or((0, b.regularity() + 3));
    let table = quadric::series_table(&spec);
    let cs = cells(&table, &[0, 1], lo, hi)?;
    let text = format!(
        "{spec}\n  degree: {}\n  {kind_text}\n  depth along the vertex: {}\n  vertex on X: {}\nh^i(Q, I_X/Q(k))\n{}\nresolution of I_X\n{}\n",
        spec.degree(),
        quadric::depth_at_vertex(&spec),
        quadric::vertex_containment(&spec),
        render_grid(&cs, &[0, 1], lo, hi),
        b.render()
    );
    let results = json!({
        "degree": spec.degree(),
        "classification": kind_json,
        "depth_at_vertex": quadric::depth_at_vertex(&spec),
        "vertex_containment": quadric::vertex_containment(&spec),
        "series": cells_json(&cs),
        "resolution": betti_json(&b),
    });
    Ok(Output {
        inputs: json!({ "n": n, "rank": rank, "class": class, "range": [lo, hi] }),
        results,
        text,
        csv: Some(render_csv(&cs)),
    })
}

fn modules_of(name: &str, ci_degree: i64) -> CliResult<DeficiencyModules> {
    let spec: VarietySpec = name.parse()?;
    let table = catalog::ideal_table(&spec)?;
    Ok(DeficiencyModules::from_table(&table, spec.ambient(), spec.dim(), ci_degree)?)
}

fn cmd_liaison(x1: &str, x2: &str, ci: &[i64]) -> CliResult<Output> {
    if ci.is_empty() {
        return Err(Failure::Usage("--ci needs at least one degree".into()));
    }
    let d: i64 = ci.iter().sum();
    let m1 = modules_of(x1, d)?;
    let m2 = modules_of(x2, d)?;
    if ci.len() + m1.dim() != m1.ambient() {
        return Err(Failure::Domain(Error::InvalidInput(format!(
            "{} equations cannot link varieties of dimension {} in P^{}",
            ci.len(),
            m1.dim(),
            m1.ambient()
        ))));
    }
    let report = duality_check(&m1, &m2)?;
    let witnesses: Vec<Value> = report.witnesses.iter().map(|(i, k)| json!({ "i": i, "k": k })).collect();
    let mut text = format!("duality {}\n", if report.holds { "holds" } else { "fails" });
    for (i, k) in &report.witnesses {
        let _ = writeln!(text, "  mismatch: dim M^{}(X2)_{k} vs dim M^{i}(X1)_{}", m1.dim() - i + 1, d - m1.ambient() as i64 - 1 - k);
    }
    Ok(Output {
        inputs: json!({ "x1": x1, "x2": x2, "ci": ci }),
        results: json!({ "holds": report.holds, "witnesses": witnesses, "ci_degree": d }),
        text,
        csv: None,
    })
}

fn cmd_verify_bound(setting: SettingArg) -> CliResult<Output> {
    let setting = match setting {
        SettingArg::ThreefoldP5 => Setting::ThreefoldP5,
        SettingArg::SurfaceP4 => Setting::SurfaceP4,
    };
    let der = reg::kernel_bundle_bound(setting);
    let mut text = format!("reg ≤ {}\n  via {}\n  axioms:\n", der.bound, der.term);
    for a in &der.axioms {
        let _ = writeln!(text, "    - {}: {}", a.name, a.statement);
    }
    let axioms: Vec<Value> = der.axioms.iter().map(|a| json!({ "name": a.name, "statement": a.statement })).collect();
    let mut results = Map::new();
    results.insert("bound".into(), json!(der.bound.to_string()));
    results.insert("term".into(), json!(der.term.to_string()));
    results.insert("axioms".into(), Value::Array(axioms));
    results.insert("notes".into(), json!(der.notes));
    if setting == Setting::ThreefoldP5 {
        let branches: Vec<Value> = reg::threefold_branches()
            .iter()
            .map(|b| json!({ "name": b.name, "bound": b.bound.to_string(), "min_degree": b.min_degree, "parity": opt_json(b.parity) }))
            .collect();
        let extremal = reg::extremal_degrees()?;
        let threshold = reg::strict_bound_threshold()?;
        let _ = writeln!(text, "  branches:");
        for b in reg::threefold_branches() {
            let _ = writeln!(text, "    - {}: reg ≤ {}", b.name, b.bound);
        }
        let _ = writeln!(text, "  reg = d - 1 possible only for d in {extremal:?}; reg < d - 1 for all d >= {threshold}");
        results.insert("branches".into(), Value::Array(branches));
        results.insert("extremal_degrees".into(), json!(extremal));
        results.insert("strict_from".into(), json!(threshold));
    }
    Ok(Output {
        inputs: json!({ "setting": setting.name() }),
        results: Value::Object(results),
        text,
        csv: None,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog { .. } => "catalog",
        Command::Cohomology { .. } => "cohomology",
        Command::Regularity { .. } => "regularity",
        Command::Normality { .. } => "normality",
        Command::Chern { .. } => "chern",
        Command::Betti { .. } => "betti",
        Command::Quadric { .. } => "quadric",
        Command::LiaisonCheck { .. } => "liaison-check",
        Command::VerifyBound { .. } => "verify-bound",
    }
}

fn execute(cli: &Cli) -> CliResult<String> {
    let out = match &cli.command {
        Command::Catalog { action } => cmd_catalog(action),
        Command::Cohomology { variety, index, range } => cmd_cohomology(variety, *index, *range),
        Command::Regularity { variety } => cmd_regularity(variety),
        Command::Normality { variety, range } => cmd_normality(variety, *range),
        Command::Chern { n, twist, t } => cmd_chern(*n, twist, *t),
        Command::Betti { variety } => cmd_betti(variety),
        Command::Quadric { n, rank, class, range } => cmd_quadric(*n, *rank, class, *range),
        Command::LiaisonCheck { x1, x2, ci } => cmd_liaison(x1, x2, ci),
        Command::VerifyBound { setting } => cmd_verify_bound(*setting),
    }?;
    match cli.format {
        Format::Table => Ok(out.text),
        Format::Csv => out
            .csv
            .ok_or_else(|| Failure::Usage(format!("{} output has no CSV form", command_name(&cli.command)))),
        Format::Json => {
            let record = json!({
                "command": command_name(&cli.command),
                "inputs": out.inputs,
                "results": out.results,
                "version": env!("CARGO_PKG_VERSION"),
            });
            Ok(serde_json::to_string_pretty(&record).expect("serializable") + "\n")
        }
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 for domain errors, 2 for usage errors.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => match &cli.out {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    1
                }
            },
            None => {
                let _ = write!(stdout, "{text}");
                0
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("castelnuovo").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn palatini_h1_row() {
        let (code, out, _) = run_capture(&["--format", "json", "cohomology", "--variety", "palatini", "--t", "0", "--i", "1", "--range", "0..6"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let cells = v["results"].as_array().unwrap();
        for c in cells {
            let expected = if c["k"] == 2 { 1 } else { 0 };
            assert_eq!(c["value"], json!(expected));
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["bogus"]).0, 2);
        assert_eq!(run_capture(&["regularity", "--variety", "palatini", "--t", "21"]).0, 2);
        assert_eq!(run_capture(&["--format", "csv", "regularity", "--variety", "segre"]).0, 2);
        let (code, _, err) = run_capture(&["quadric", "--n", "3", "--rank", "4", "--class", "5,2"]);
        assert_eq!(code, 1);
        assert!(err.contains("|a - b| <= 1"));
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn negative_ranges_parse() {
        let (code, out, _) = run_capture(&["--format", "csv", "normality", "--variety", "skew-lines", "--range", "-2..2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("i,k,lo,hi\n1,-2,0,0\n"));
        assert!(out.contains("1,0,1,1\n"));
    }
}

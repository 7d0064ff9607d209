//! Command-line front end: argument handling, dispatch and reports.

pub mod parse;
pub mod report;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curveprog_core::construct::{
    finiteness_trace, hyperelliptic_progression, n_level_progression, BiellipticQuartic, ConstructError,
    HyperellipticModel,
};
use curveprog_core::curve::{AlgebraicPoint, CurveError, PlaneCurve};
use curveprog_core::exact::Rational;
use curveprog_core::factor::{factor_over_q, FactorError};
use curveprog_core::progression::{Kind, Length, Progression, ProgressionError, Rules};
use curveprog_core::search::{
    level_points, longest_progression_on_curve, rational_points, verdict, HeightBound, SearchConfig, SearchError,
    Verdict, VerdictInput, VerdictLine,
};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use parse::{parse_binary_form, parse_curve, parse_point, parse_rational, parse_univariate, CurveExpr, ParseError};
use report::{Format, Report, Table};

#[derive(Debug, Parser)]
#[command(name = "curveprog", version, about = "Progressions of points on plane curves over the rationals")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads for point search.
    #[arg(long, global = true, env = "CURVEPROG_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Forbid arithmetic laws with t0 = 0.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Allow geometric ratios of absolute value 1.
    #[arg(long, global = true)]
    pub allow_degenerate: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finiteness verdicts for progressions on a curve.
    Verdict(VerdictArgs),
    /// Height-bounded point search.
    Search(SearchArgs),
    /// Generate points along a progression.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Genus trace of the bielliptic tower.
    Tower(TowerArgs),
    /// Factor a univariate polynomial over the rationals.
    Factor(FactorArgs),
}

#[derive(Debug, Args)]
pub struct VerdictArgs {
    #[arg(long)]
    pub curve: Option<String>,
    /// f in a hyperelliptic model z^2 = f(x).
    #[arg(long)]
    pub hyperelliptic_f: Option<String>,
    /// A rational point x,y,z on the curve.
    #[arg(long, value_parser = parse_point)]
    pub point: Option<[Rational; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Find {
    Points,
    LongestAp,
    LongestGp,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub curve: String,
    #[arg(long, default_value_t = 10)]
    pub height: u64,
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    #[arg(long, value_enum, default_value = "points")]
    pub find: Find,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Arith,
    Geom,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Arith => Kind::Arithmetic,
            KindArg::Geom => Kind::Geometric,
        }
    }
}

#[derive(Debug, Args)]
pub struct LawArgs {
    #[arg(long, value_enum, default_value = "arith")]
    pub kind: KindArg,
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub t0: Rational,
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub t: Rational,
    #[arg(long, default_value_t = 10)]
    pub count: u64,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// Points (x_i, 1, sqrt f(x_i)) on z^2 = f(x).
    Hyperelliptic {
        #[arg(long)]
        f: String,
        #[command(flatten)]
        law: LawArgs,
    },
    /// Points of degree at most d - 1 over a progression, via projection
    /// from a rational point.
    Nlevel {
        #[arg(long)]
        curve: String,
        #[arg(long, value_parser = parse_point)]
        point: Option<[Rational; 3]>,
        /// Height bound for finding a rational point when --point is absent.
        #[arg(long, default_value_t = 8)]
        point_search_height: u64,
        #[command(flatten)]
        law: LawArgs,
    },
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    /// Coefficient of Z^4.
    #[arg(long, value_parser = parse_rational)]
    pub a: Rational,
    /// Binary quadratic form in X, Y.
    #[arg(long = "L2", alias = "l2")]
    pub l2: String,
    /// Binary quartic form in X, Y.
    #[arg(long = "L4", alias = "l4")]
    pub l4: String,
    #[arg(long, value_parser = parse_rational, default_value = "1")]
    pub t0: Rational,
    #[arg(long, default_value_t = 3)]
    pub levels: u32,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long)]
    pub poly: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no rational point found up to height {height}; pass --point")]
    NeedRationalPoint { height: u64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Progression(#[from] ProgressionError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            _ => 2,
        }
    }

    /// Name of the innermost error variant, e.g. `NotSmooth`.
    pub fn kind(&self) -> String {
        let debug = match self {
            CliError::Usage(_) => return "Usage".into(),
            CliError::NeedRationalPoint { .. } => return "NeedRationalPoint".into(),
            CliError::Parse(e) => format!("{e:?}"),
            CliError::Curve(e) => format!("{e:?}"),
            CliError::Construct(e) => format!("{e:?}"),
            CliError::Search(e) => format!("{e:?}"),
            CliError::Factor(e) => format!("{e:?}"),
            CliError::Progression(e) => format!("{e:?}"),
        };
        let mut s = debug.as_str();
        for wrapper in ["Curve(", "Construct(", "Search(", "Factor(", "Poly(", "Progression("] {
            while let Some(rest) = s.strip_prefix(wrapper) {
                s = rest;
            }
        }
        s.chars().take_while(|c| c.is_ascii_alphanumeric()).collect()
    }
}

fn rules(cli: &Cli) -> Rules {
    Rules {
        strict: cli.strict,
        allow_degenerate: cli.allow_degenerate,
    }
}

fn curve_from(text: &str) -> Result<(CurveExpr, PlaneCurve), CliError> {
    let expr = parse_curve(text)?;
    let curve = PlaneCurve::new(expr.poly.clone())?;
    Ok((expr, curve))
}

fn law(args: &LawArgs, rules: Rules) -> Result<Progression, CliError> {
    Ok(Progression::new(args.kind.into(), args.t0.clone(), args.t.clone(), Length::Infinite, rules)?)
}

fn point_strings(p: &[Rational; 3]) -> [String; 3] {
    [p[0].to_string(), p[1].to_string(), p[2].to_string()]
}

fn minpoly_string(p: &AlgebraicPoint) -> String {
    p.minpoly_z.to_string()
}

fn point_row(i: Option<usize>, p: &AlgebraicPoint) -> Vec<String> {
    let (d, c) = p
        .disc
        .as_ref()
        .map_or((String::new(), String::new()), |s| (s.d.to_string(), s.c.to_string()));
    let mut row = Vec::new();
    if let Some(i) = i {
        row.push(i.to_string());
    }
    row.extend([p.x.to_string(), "1".into(), p.degree.to_string(), minpoly_string(p), d, c]);
    row
}

const POINT_HEADER: [&str; 6] = ["x", "y", "degree", "minpoly_z", "D", "c"];

fn indexed_header() -> Vec<&'static str> {
    std::iter::once("i").chain(POINT_HEADER).collect()
}

fn point_text(p: &AlgebraicPoint) -> String {
    match p.rational_z() {
        Some(z) => format!("({}, 1, {z})", p.x),
        None => format!("(x, 1, z) with x = {}, {} = 0", p.x, minpoly_string(p)),
    }
}

fn law_json(p: &Progression) -> serde_json::Value {
    json!({ "kind": p.kind, "t0": p.t0, "t": p.t, "flags": p.flags() })
}

fn run_verdict(args: &VerdictArgs) -> Result<Report, CliError> {
    if args.curve.is_none() && args.hyperelliptic_f.is_none() {
        return Err(CliError::Usage("verdict needs --curve or --hyperelliptic-f".into()));
    }
    let parsed = args.curve.as_deref().map(curve_from).transpose()?;
    let hint = args
        .hyperelliptic_f
        .as_deref()
        .map(|f| parse_univariate(f, 'x').map(|p| p.with_var('x')))
        .transpose()?
        .map(HyperellipticModel::new)
        .transpose()?;
    let input = json!({
        "curve": parsed.as_ref().map(|(e, _)| e),
        "hyperelliptic_f": args.hyperelliptic_f.as_ref().map(|s| json!({
            "source": s,
            "poly": hint.as_ref().map(|m| m.f().to_string()),
        })),
        "point": args.point.as_ref().map(point_strings),
    });
    let v: Verdict = verdict(&VerdictInput {
        curve: parsed.map(|(_, c)| c),
        hyperelliptic: hint,
        point: args.point.clone(),
    })?;
    let mut lines: Vec<(&str, &VerdictLine, Option<usize>)> = Vec::new();
    if let Some(l) = &v.rational_progressions {
        lines.push(("rational_progressions", l, None));
    }
    if let Some(l) = &v.quadratic_progressions {
        lines.push(("quadratic_progressions", l, None));
    }
    if let Some(l) = &v.quadratic_points {
        lines.push(("quadratic_points", l, None));
    }
    if let Some(l) = &v.n_level {
        lines.push(("n_level", &l.line, Some(l.n)));
    }
    let table = Table {
        header: vec!["line", "n", "status", "rule", "citation", "condition"],
        rows: lines
            .iter()
            .map(|(name, l, n)| {
                vec![
                    name.to_string(),
                    n.map(|n| n.to_string()).unwrap_or_default(),
                    serde_json::to_value(l.status).unwrap().as_str().unwrap().to_string(),
                    l.rule.to_string(),
                    l.citation.to_string(),
                    l.condition.clone().unwrap_or_default(),
                ]
            })
            .collect(),
    };
    let mut text = vec![format!(
        "degree {}, smooth {}, genus {}",
        v.degree.map_or("-".into(), |d| d.to_string()),
        v.smooth.map_or("-".into(), |s| s.to_string()),
        v.genus.map_or("-".into(), |g| g.to_string()),
    )];
    text.extend(table.rows.iter().map(|r| {
        let n = if r[1].is_empty() { String::new() } else { format!(" (n = {})", r[1]) };
        let cond = if r[5].is_empty() { String::new() } else { format!(" if {}", r[5]) };
        format!("{}{n}: {} [{}] \"{}\"{cond}", r[0], r[2], r[3], r[4])
    }));
    Ok(Report::new("verdict", input, &v).with_table(table).with_text(text))
}

fn run_search(cli: &Cli, args: &SearchArgs) -> Result<Report, CliError> {
    let (expr, curve) = curve_from(&args.curve)?;
    let h = HeightBound::new(args.height)?;
    let cfg = SearchConfig { workers: cli.workers };
    let input = json!({
        "curve": expr,
        "height": args.height,
        "level": args.level,
        "find": args.find.to_possible_value().unwrap().get_name(),
        "strict": cli.strict,
    });
    let report = match args.find {
        Find::Points => {
            let found = if args.level == 1 {
                rational_points(&curve, h, cfg)?
            } else {
                level_points(&curve, h, args.level, cfg)?
            };
            let table = Table {
                header: POINT_HEADER.to_vec(),
                rows: found.points.iter().map(|p| point_row(None, p)).collect(),
            };
            let mut text = vec![format!("{} points", found.points.len())];
            text.extend(found.points.iter().map(point_text));
            if !found.zero_fibers.is_empty() {
                let xs: Vec<String> = found.zero_fibers.iter().map(|x| x.to_string()).collect();
                text.push(format!("lines X = xY on the curve for x in {{{}}}", xs.join(", ")));
            }
            Report::new("search", input, &found).with_table(table).with_text(text)
        }
        Find::LongestAp | Find::LongestGp => {
            let kind = if args.find == Find::LongestAp { Kind::Arithmetic } else { Kind::Geometric };
            let found = longest_progression_on_curve(&curve, h, args.level, kind, rules(cli), cfg)?;
            let table = Table {
                header: indexed_header(),
                rows: found.points.iter().enumerate().map(|(i, p)| point_row(Some(i + 1), p)).collect(),
            };
            let m = &found.progression;
            let members: Vec<String> = m.members.iter().map(|x| x.to_string()).collect();
            let mut text = vec![format!(
                "length {}: t0 = {}, t = {}, x = [{}]",
                m.len(),
                m.progression.t0,
                m.progression.t,
                members.join(", ")
            )];
            text.extend(found.points.iter().map(point_text));
            Report::new("search", input, &found).with_table(table).with_text(text)
        }
    };
    Ok(report)
}

#[derive(Serialize)]
struct ConstructResult {
    model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized_curve: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transform: Option<Vec<Vec<Rational>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    base_point: Option<[Rational; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    base_point_source: Option<&'static str>,
    level: usize,
    law: serde_json::Value,
    points: Vec<AlgebraicPoint>,
}

fn construct_tables(points: &[AlgebraicPoint]) -> (Table, Vec<String>) {
    let table = Table {
        header: indexed_header(),
        rows: points.iter().enumerate().map(|(i, p)| point_row(Some(i + 1), p)).collect(),
    };
    let text = points
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{}: {}", i + 1, point_text(p)))
        .collect();
    (table, text)
}

fn run_construct(cli: &Cli, cmd: &ConstructCommand) -> Result<Report, CliError> {
    match cmd {
        ConstructCommand::Hyperelliptic { f, law: args } => {
            let poly = parse_univariate(f, 'x')?.with_var('x');
            let model = HyperellipticModel::new(poly)?;
            let p = law(args, rules(cli))?;
            let points: Vec<AlgebraicPoint> = hyperelliptic_progression(&model, &p, args.count as usize).collect();
            let input = json!({
                "f": { "source": f, "poly": model.f().to_string() },
                "kind": p.kind, "t0": p.t0, "t": p.t, "count": args.count, "strict": cli.strict,
            });
            let result = ConstructResult {
                model: format!("z^2 = {}", model.f()),
                normalized_curve: None,
                transform: None,
                base_point: None,
                base_point_source: None,
                level: 2,
                law: law_json(&p),
                points,
            };
            let (table, mut text) = construct_tables(&result.points);
            text.insert(0, result.model.clone());
            Ok(Report::new("construct hyperelliptic", input, &result).with_table(table).with_text(text))
        }
        ConstructCommand::Nlevel {
            curve,
            point,
            point_search_height,
            law: args,
        } => {
            let (expr, c) = curve_from(curve)?;
            let p = law(args, rules(cli))?;
            let (base, source) = match point {
                Some(pt) => (pt.clone(), "given"),
                None => {
                    let h = HeightBound::new(*point_search_height)?;
                    let found = rational_points(&c, h, SearchConfig { workers: cli.workers })?;
                    let first = found.points.first().ok_or(CliError::NeedRationalPoint {
                        height: *point_search_height,
                    })?;
                    let z = first.rational_z().expect("rational search yields degree 1");
                    ([first.x.clone(), Rational::one(), z], "search")
                }
            };
            let stream = n_level_progression(&c, &base, &p, args.count)?;
            let normalized = stream.curve().form().to_string();
            let transform = stream.transform().iter().map(|r| r.to_vec()).collect();
            let level = stream.level();
            let points = stream.collect::<Result<Vec<_>, _>>()?;
            let input = json!({
                "curve": expr,
                "point": point.as_ref().map(point_strings),
                "point_search_height": point_search_height,
                "kind": p.kind, "t0": p.t0, "t": p.t, "count": args.count, "strict": cli.strict,
            });
            let result = ConstructResult {
                model: expr.poly.to_string(),
                normalized_curve: Some(normalized.clone()),
                transform: Some(transform),
                base_point: Some(base.clone()),
                base_point_source: Some(source),
                level,
                law: law_json(&p),
                points,
            };
            let (table, mut text) = construct_tables(&result.points);
            let [bx, by, bz] = point_strings(&base);
            text.insert(0, format!("normalized through ({bx}:{by}:{bz}) [{source}]: {normalized} = 0"));
            Ok(Report::new("construct nlevel", input, &result).with_table(table).with_text(text))
        }
    }
}

fn run_tower(args: &TowerArgs) -> Result<Report, CliError> {
    let l2 = parse_binary_form(&args.l2, 2)?;
    let l4 = parse_binary_form(&args.l4, 4)?;
    let q = BiellipticQuartic::new(args.a.clone(), l2, l4)?;
    let trace = finiteness_trace(&q, &args.t0, args.levels)?;
    let input = json!({
        "a": args.a,
        "L2": { "source": args.l2, "poly": q.l2().to_string() },
        "L4": { "source": args.l4, "poly": q.l4().to_string() },
        "t0": args.t0,
        "levels": args.levels,
    });
    let table = Table {
        header: vec!["s", "model", "quotient", "genus", "cs_flag"],
        rows: trace
            .levels
            .iter()
            .map(|l| {
                vec![
                    l.s.to_string(),
                    l.model.clone(),
                    l.quotient.clone(),
                    l.genus.to_string(),
                    l.cs_flag.to_string(),
                ]
            })
            .collect(),
    };
    let mut text = vec![format!("discriminant {}, base genus {}", trace.discriminant, trace.base_genus)];
    text.extend(trace.levels.iter().map(|l| {
        format!(
            "s = {}: {} = 0, quotient {} = 0, genus {}{}",
            l.s,
            l.model,
            l.quotient,
            l.genus,
            if l.cs_flag { " [genus > 3]" } else { "" }
        )
    }));
    Ok(Report::new("tower", input, &trace).with_table(table).with_text(text))
}

fn run_factor(args: &FactorArgs) -> Result<Report, CliError> {
    let f = parse_univariate(&args.poly, 'z')?;
    let fac = factor_over_q(&f)?;
    let input = json!({ "poly": { "source": args.poly, "parsed": f.to_string() } });
    let table = Table {
        header: vec!["factor", "mult"],
        rows: fac
            .factors
            .iter()
            .map(|e| vec![e.poly.to_string(), e.multiplicity.to_string()])
            .collect(),
    };
    let mut text = vec![format!("unit {}", fac.unit)];
    text.extend(fac.factors.iter().map(|e| format!("({})^{}", e.poly, e.multiplicity)));
    Ok(Report::new("factor", input, &fac).with_table(table).with_text(text))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Verdict(a) => run_verdict(a),
        Command::Search(a) => run_search(cli, a),
        Command::Construct(c) => run_construct(cli, c),
        Command::Tower(a) => run_tower(a),
        Command::Factor(a) => run_factor(a),
    }
}

/// Parses `args`, runs the command and writes the report. Returns the exit
/// status: 0 on success, 1 on usage errors, 2 on domain errors.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    if cli.workers == 0 {
        let _ = writeln!(err, "error[Usage]: --workers must be at least 1");
        return 1;
    }
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.kind());
            e.exit_code()
        }
    }
}

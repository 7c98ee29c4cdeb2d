use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cremona_core::curves::{enumerate_minus_one, types_beyond};
use cremona_core::lattice::{json_int, parse_vector, PicClass};
use cremona_core::nef::{curve_check, is_nef_k_nonpositive, NefVerdict};
use cremona_core::polytope::{
    cartan_matrix, coxeter_diagram, extremal_rays, finite_volume, is_coxeter, render_cartan,
    verify_region_r, PolytopeName,
};
use cremona_core::verify::{self, Suite, VerifyOptions};
use cremona_core::weyl::{orbit, reduce, OrbitLimit};
use cremona_core::Error;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;

/// Exact computations in the Picard lattice of the plane blown up at n points.
#[derive(Parser)]
#[command(name = "cremona", version)]
struct Cli {
    /// Output format; `dot` is accepted by `diagram` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Move a class with v.K <= 0 into the fundamental cone.
    Reduce(VectorArgs),
    /// List (-1)-classes up to a degree bound.
    Curves {
        #[command(flatten)]
        ns: NArgs,
        #[arg(long, default_value_t = 6)]
        max_degree: u64,
    },
    /// Cartan matrix of a polytope.
    Cartan(PolytopeArgs),
    /// Coxeter diagram of a polytope (exit 3 if it is not Coxeter).
    Diagram(PolytopeArgs),
    /// Extremal rays of the cone over a polytope.
    Rays(PolytopeArgs),
    /// Orbit of a class under the Cremona action.
    Orbit {
        #[command(flatten)]
        vector: VectorArgs,
        #[arg(long)]
        max_degree: Option<i64>,
        #[arg(long)]
        max_count: Option<usize>,
    },
    /// Nef test for an integer class. Irrational boundary rays cannot be
    /// entered; the exact method rejects classes with v.K > 0.
    NefTest {
        #[command(flatten)]
        vector: VectorArgs,
        #[arg(long, value_enum, default_value_t = NefMethod::Exact)]
        method: NefMethod,
        /// Degree bound for `--method curves`.
        #[arg(long, default_value_t = 8)]
        max_degree: u64,
    },
    /// Vertices of the auxiliary region R and the values of f on them (n >= 10).
    RegionR(NArgs),
    /// Run the check registry.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Quick)]
        suite: SuiteArg,
        /// Inclusive range `a..b` replacing the default sweeps over n.
        #[arg(long, value_parser = parse_range)]
        n_range: Option<RangeInclusive<usize>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NefMethod {
    Exact,
    Curves,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Quick,
    Paper,
}

#[derive(Args)]
struct VectorArgs {
    /// Number of blown-up points; inferred from the vector when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated coordinates `x_0,x_1,...,x_n`.
    #[arg(long, allow_hyphen_values = true)]
    vector: String,
}

#[derive(Args)]
struct NArgs {
    #[arg(long, required_unless_present = "n_range", conflicts_with = "n_range")]
    n: Option<usize>,
    /// Inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<RangeInclusive<usize>>,
}

#[derive(Args)]
struct PolytopeArgs {
    #[command(flatten)]
    ns: NArgs,
    /// One of p_tilde, p, p_minus, fundamental.
    #[arg(long, default_value = "fundamental", value_parser = parse_polytope)]
    polytope: PolytopeName,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

fn parse_polytope(s: &str) -> Result<PolytopeName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl NArgs {
    fn values(&self) -> Vec<usize> {
        match (&self.n, &self.n_range) {
            (Some(n), _) => vec![*n],
            (None, Some(r)) => r.clone().collect(),
            (None, None) => Vec::new(),
        }
    }

    fn is_sweep(&self) -> bool {
        self.n.is_none()
    }
}

impl VectorArgs {
    fn class(&self) -> Result<PicClass, Error> {
        let v = parse_vector(&self.vector)?;
        if let Some(n) = self.n {
            if v.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n + 1,
                    found: v.n() + 1,
                });
            }
        }
        Ok(v)
    }
}

/// Text written to stdout and the exit code.
struct Output {
    body: String,
    code: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            code: EXIT_OK,
        }
    }
}

fn json_out(v: &Value, code: u8) -> Output {
    Output {
        body: serde_json::to_string_pretty(v).expect("json values serialize") + "\n",
        code,
    }
}

fn ints(xs: &[BigInt]) -> Vec<Value> {
    xs.iter().map(json_int::to_value).collect()
}

fn joined(xs: &[BigInt], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// Header plus one record per row.
fn csv_table<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn require(format: Format, allowed: &[Format], command: &str) -> Result<(), Error> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "format {:?} is not available for {command}",
            format
                .to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default()
        )))
    }
}

/// Runs `f` for every n and merges the outputs; the exit code is the worst one.
fn sweep(
    ns: &NArgs,
    format: Format,
    f: impl Fn(usize) -> Result<(Value, String, u8), Error>,
) -> Result<Output, Error> {
    let mut values = Vec::new();
    let mut texts = Vec::new();
    let mut code = EXIT_OK;
    for n in ns.values() {
        let (v, t, c) = f(n)?;
        code = code.max(c);
        values.push(v);
        texts.push(if ns.is_sweep() && format != Format::Csv {
            format!("# n = {n}\n{t}")
        } else {
            t
        });
    }
    if format == Format::Json {
        let v = if ns.is_sweep() {
            Value::Array(values)
        } else {
            values.pop().unwrap_or(Value::Null)
        };
        return Ok(json_out(&v, code));
    }
    let body = if format == Format::Csv && texts.len() > 1 {
        // one header for the whole sweep
        let mut out = texts[0].clone();
        for t in &texts[1..] {
            out.extend(t.lines().skip(1).map(|l| format!("{l}\n")));
        }
        out
    } else {
        texts.join("\n")
    };
    Ok(Output { body, code })
}

fn cmd_reduce(args: &VectorArgs, format: Format) -> Result<Output, Error> {
    require(format, &[Format::Json, Format::Text], "reduce")?;
    let v = args.class()?;
    let r = reduce(&v)?;
    let code = if r.is_in_cone() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    if format == Format::Json {
        return Ok(json_out(&r.to_json(), code));
    }
    let mut s = String::new();
    let status = if r.is_in_cone() { "in_cone" } else { "not_nef" };
    writeln!(s, "status: {status}").unwrap();
    writeln!(s, "reduced: {}", r.reduced).unwrap();
    let word = if r.witness.is_empty() {
        "identity".to_string()
    } else {
        r.witness.to_string()
    };
    writeln!(s, "witness: {word}").unwrap();
    if let Some(viol) = r.violation() {
        writeln!(s, "violated: {}", viol.curve).unwrap();
    }
    writeln!(s, "iterations: {}", r.iterations).unwrap();
    Ok(Output { body: s, code })
}

fn cmd_curves(ns: &NArgs, max_degree: u64, format: Format) -> Result<Output, Error> {
    require(format, &[Format::Json, Format::Text, Format::Csv], "curves")?;
    const LOOKAHEAD: u64 = 6;
    sweep(ns, format, |n| {
        let cs = enumerate_minus_one(n, max_degree)?;
        let mut per_degree: BTreeMap<String, usize> = BTreeMap::new();
        for c in &cs {
            *per_degree.entry(c.degree().to_string()).or_default() += 1;
        }
        let saturated = types_beyond(n, max_degree, LOOKAHEAD) == 0;
        let rows: Vec<Value> = cs
            .iter()
            .map(|c| {
                json!({
                    "degree": json_int::to_value(c.degree()),
                    "multiplicities": ints(&c.multiplicities()),
                    "coords": ints(c.class().coords()),
                })
            })
            .collect();
        let value = json!({
            "n": n,
            "max_degree": max_degree,
            "count": cs.len(),
            "per_degree": per_degree,
            "saturated": saturated,
            "lookahead": LOOKAHEAD,
            "classes": rows,
        });
        let mut text = String::new();
        if format == Format::Csv {
            text = csv_table(
                &["n", "degree", "multiplicities", "coords"],
                cs.iter().map(|c| {
                    [
                        n.to_string(),
                        c.degree().to_string(),
                        joined(&c.multiplicities(), ";"),
                        joined(c.class().coords(), ";"),
                    ]
                }),
            );
        } else {
            for c in &cs {
                writeln!(text, "{}", c.class()).unwrap();
            }
            let counts: Vec<String> = per_degree
                .iter()
                .map(|(d, k)| format!("d={d}: {k}"))
                .collect();
            writeln!(text, "count: {} ({})", cs.len(), counts.join(", ")).unwrap();
            writeln!(
                text,
                "saturated: {saturated} (no new classes in degrees {}..={})",
                max_degree + 1,
                max_degree + LOOKAHEAD
            )
            .unwrap();
        }
        Ok((value, text, EXIT_OK))
    })
}

fn cmd_cartan(args: &PolytopeArgs, format: Format) -> Result<Output, Error> {
    require(format, &[Format::Json, Format::Text, Format::Csv], "cartan")?;
    sweep(&args.ns, format, |n| {
        let p = args.polytope.build(n)?;
        let m = cartan_matrix(&p)?;
        let tokens: Vec<Vec<String>> = m
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let value = json!({
            "n": n,
            "polytope": args.polytope.as_str(),
            "matrix": tokens,
            "entries": m,
        });
        let text = if format == Format::Csv {
            let mut header = vec!["n".to_string(), "row".to_string()];
            header.extend((0..m.len()).map(|j| format!("v{j}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_table(
                &header,
                tokens.iter().enumerate().map(|(i, row)| {
                    let mut rec = vec![n.to_string(), format!("v{i}")];
                    rec.extend(row.iter().cloned());
                    rec
                }),
            )
        } else {
            render_cartan(&m)
        };
        Ok((value, text, EXIT_OK))
    })
}

fn cmd_diagram(args: &PolytopeArgs, format: Format) -> Result<Output, Error> {
    require(
        format,
        &[Format::Json, Format::Text, Format::Dot],
        "diagram",
    )?;
    sweep(&args.ns, format, |n| {
        let p = args.polytope.build(n)?;
        let check = is_coxeter(&p)?;
        if !check.coxeter {
            let pairs: Vec<Value> = check
                .offending
                .iter()
                .map(|o| json!({"i": o.i, "j": o.j, "cos2": o.angle.cos2.to_string()}))
                .collect();
            let mut text = format!("n = {n}: {} is not a Coxeter polytope\n", args.polytope);
            for o in &check.offending {
                writeln!(
                    text,
                    "  pair (v_{}, v_{}): cos2 = {}",
                    o.i, o.j, o.angle.cos2
                )
                .unwrap();
            }
            let value = json!({"n": n, "polytope": args.polytope.as_str(), "coxeter": false, "offending": pairs});
            return Ok((value, text, EXIT_NEGATIVE));
        }
        let d = coxeter_diagram(&p)?;
        let text = if format == Format::Dot {
            d.to_dot()
        } else {
            d.to_ascii()
        };
        let value =
            json!({"n": n, "polytope": args.polytope.as_str(), "coxeter": true, "diagram": d});
        Ok((value, text, EXIT_OK))
    })
}

fn cmd_rays(args: &PolytopeArgs, format: Format) -> Result<Output, Error> {
    require(format, &[Format::Json, Format::Text, Format::Csv], "rays")?;
    sweep(&args.ns, format, |n| {
        let p = args.polytope.build(n)?;
        let rays = extremal_rays(&p)?;
        let boundary = rays
            .iter()
            .filter(|r| r.position.tag == cremona_core::lattice::ConeTag::Boundary)
            .count();
        let finite = finite_volume(&p)?;
        let value = json!({
            "n": n,
            "polytope": args.polytope.as_str(),
            "count": rays.len(),
            "boundary_count": boundary,
            "finite_volume": finite,
            "rays": rays,
        });
        let mut text = String::new();
        if format == Format::Csv {
            text = csv_table(
                &["n", "coords", "tag", "square", "active_set"],
                rays.iter().map(|r| {
                    let active: Vec<String> =
                        r.active_set.iter().map(ToString::to_string).collect();
                    [
                        n.to_string(),
                        joined(r.generator.coords(), ";"),
                        serde_json::to_value(r.position.tag)
                            .unwrap()
                            .as_str()
                            .unwrap()
                            .to_string(),
                        r.generator.square().to_string(),
                        active.join(";"),
                    ]
                }),
            );
        } else {
            for r in &rays {
                let tag = serde_json::to_value(r.position.tag).unwrap();
                writeln!(
                    text,
                    "{}  {}  square {}",
                    r.generator,
                    tag.as_str().unwrap(),
                    r.generator.square()
                )
                .unwrap();
            }
            writeln!(
                text,
                "count: {} rays, {boundary} boundary, finite volume: {finite}",
                rays.len()
            )
            .unwrap();
        }
        Ok((value, text, EXIT_OK))
    })
}

fn cmd_orbit(
    args: &VectorArgs,
    max_degree: Option<i64>,
    max_count: Option<usize>,
    format: Format,
) -> Result<Output, Error> {
    require(format, &[Format::Json, Format::Text, Format::Csv], "orbit")?;
    let v = args.class()?;
    let limit = OrbitLimit {
        max_degree: max_degree.map(BigInt::from),
        max_count,
    };
    let o = orbit(&v, &limit)?;
    match format {
        Format::Json => Ok(json_out(
            &json!({
                "n": v.n(),
                "count": o.elements.len(),
                "truncated": o.truncated,
                "elements": o.elements,
            }),
            EXIT_OK,
        )),
        Format::Csv => {
            let s = csv_table(
                &["coords"],
                o.elements.iter().map(|e| [joined(e.coords(), ";")]),
            );
            Ok(Output::ok(s))
        }
        _ => {
            let mut s = String::new();
            for e in &o.elements {
                writeln!(s, "{e}").unwrap();
            }
            writeln!(
                s,
                "count: {}{}",
                o.elements.len(),
                if o.truncated { " (truncated)" } else { "" }
            )
            .unwrap();
            Ok(Output::ok(s))
        }
    }
}

fn cmd_nef_test(
    args: &VectorArgs,
    method: NefMethod,
    max_degree: u64,
    format: Format,
) -> Result<Output, Error> {
    require(format, &[Format::Json, Format::Text], "nef-test")?;
    let v = args.class()?;
    let verdict: NefVerdict = match method {
        NefMethod::Exact => is_nef_k_nonpositive(&v)?,
        NefMethod::Curves => curve_check(&v, max_degree)?,
    };
    let code = if verdict.is_nef() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let value = serde_json::to_value(&verdict).expect("verdict serializes");
    if format == Format::Json {
        return Ok(json_out(&value, code));
    }
    let mut s = String::new();
    writeln!(s, "verdict: {}", value["verdict"].as_str().unwrap()).unwrap();
    writeln!(s, "method: {}", value["method"]).unwrap();
    writeln!(s, "witness: {}", value["witness"]).unwrap();
    Ok(Output { body: s, code })
}

fn cmd_region_r(ns: &NArgs, format: Format) -> Result<Output, Error> {
    require(
        format,
        &[Format::Json, Format::Text, Format::Csv],
        "region-r",
    )?;
    sweep(ns, format, |n| {
        let rep = verify_region_r(n)?;
        let code = if rep.ok() { EXIT_OK } else { EXIT_NEGATIVE };
        let value = serde_json::to_value(&rep).expect("report serializes");
        let f_of = |p: &cremona_core::polytope::RegionPoint| {
            p.f.as_ref().map_or("-".to_string(), ToString::to_string)
        };
        if format == Format::Csv {
            let text = csv_table(
                &["n", "facets", "x1", "x2", "xn", "vertex", "f"],
                rep.points.iter().map(|p| {
                    let facets: Vec<String> = p.facets.iter().map(ToString::to_string).collect();
                    [
                        n.to_string(),
                        facets.join(";"),
                        p.point[0].to_string(),
                        p.point[1].to_string(),
                        p.point[2].to_string(),
                        p.is_vertex.to_string(),
                        f_of(p),
                    ]
                }),
            );
            return Ok((value, text, code));
        }
        let mut text = String::new();
        for p in &rep.points {
            let facets: Vec<String> = p.facets.iter().map(ToString::to_string).collect();
            writeln!(
                text,
                "facets {{{}}}  ({}, {}, {})  vertex: {}  f = {}",
                facets.join(","),
                p.point[0],
                p.point[1],
                p.point[2],
                if p.is_vertex { "yes" } else { "no" },
                f_of(p)
            )
            .unwrap();
        }
        writeln!(
            text,
            "max f = {}; f <= 1: {}; f < 1 off x_n = 0: {}",
            rep.max_f
                .as_ref()
                .map_or("-".to_string(), ToString::to_string),
            rep.bounded_by_one,
            rep.strict_off_face
        )
        .unwrap();
        Ok((value, text, code))
    })
}

fn cmd_verify(
    suite: SuiteArg,
    n_range: Option<RangeInclusive<usize>>,
    seed: u64,
    format: Format,
) -> Result<Output, Error> {
    require(format, &[Format::Json, Format::Text, Format::Csv], "verify")?;
    let opts = VerifyOptions {
        suite: match suite {
            SuiteArg::Quick => Suite::Quick,
            SuiteArg::Paper => Suite::Paper,
        },
        seed,
        n_range,
    };
    let rep = verify::run(&opts)?;
    let code = if rep.ok() { EXIT_OK } else { EXIT_NEGATIVE };
    match format {
        Format::Json => Ok(json_out(
            &serde_json::to_value(&rep).expect("report serializes"),
            code,
        )),
        Format::Csv => {
            let s = csv_table(
                &["name", "status", "expected", "computed", "anchor"],
                rep.checks.iter().map(|c| {
                    let status = if c.passed() { "pass" } else { "fail" };
                    [c.name.as_str(), status, &c.expected, &c.computed, &c.anchor]
                }),
            );
            Ok(Output { body: s, code })
        }
        _ => {
            let mut s = String::new();
            for c in &rep.checks {
                if c.passed() {
                    writeln!(s, "PASS {}  ({})", c.name, c.anchor).unwrap();
                } else {
                    writeln!(s, "FAIL {}  ({})", c.name, c.anchor).unwrap();
                    for line in c.expected.lines() {
                        writeln!(s, "  - expected: {line}").unwrap();
                    }
                    for line in c.computed.lines() {
                        writeln!(s, "  + computed: {line}").unwrap();
                    }
                }
            }
            let failed = rep.failures().len();
            writeln!(
                s,
                "{} suite, seed {}: {} passed, {failed} failed",
                opts.suite,
                seed,
                rep.checks.len() - failed
            )
            .unwrap();
            Ok(Output { body: s, code })
        }
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("CREMONA_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("CREMONA_THREADS={raw:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    configure_threads()?;
    let f = cli.format;
    if f == Format::Dot && !matches!(cli.command, Command::Diagram(_)) {
        return Err(Error::Parse(
            "format dot is only available for diagram".into(),
        ));
    }
    match &cli.command {
        Command::Reduce(a) => cmd_reduce(a, f),
        Command::Curves { ns, max_degree } => cmd_curves(ns, *max_degree, f),
        Command::Cartan(a) => cmd_cartan(a, f),
        Command::Diagram(a) => cmd_diagram(a, f),
        Command::Rays(a) => cmd_rays(a, f),
        Command::Orbit {
            vector,
            max_degree,
            max_count,
        } => cmd_orbit(vector, *max_degree, *max_count, f),
        Command::NefTest {
            vector,
            method,
            max_degree,
        } => cmd_nef_test(vector, *method, *max_degree, f),
        Command::RegionR(ns) => cmd_region_r(ns, f),
        Command::Verify { suite, n_range } => cmd_verify(*suite, n_range.clone(), cli.seed, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.body);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

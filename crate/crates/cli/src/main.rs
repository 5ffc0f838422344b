use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spinhdet_core::fock::{self, E7Variant};
use spinhdet_core::geometry;
use spinhdet_core::hyperdet::{self, FactoredForm};
use spinhdet_core::invariants;
use spinhdet_core::polynomial::{var_names, Pretty};
use spinhdet_core::roots::{self, HalfSpinScaling};
use spinhdet_core::scalar::{format_rational, parse_rational};
use spinhdet_core::verify::{self, VerifyOptions, DEFAULT_SEED};
use spinhdet_core::{cayley, Error, IntPolynomial, RatPolynomial, Rational, RANK};

#[derive(Parser, Debug)]
#[command(
    name = "spinhdet",
    version,
    about = "Exact toolkit for the Spin(16) hyperdeterminant"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Reading of the seventh Cartan basis state.
    #[arg(long, value_enum, default_value_t = Variant::Printed, global = true)]
    e7_variant: Variant,
    /// Worker threads for parallel reductions.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Printed,
    Corrected,
}

impl From<Variant> for E7Variant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Printed => E7Variant::Printed,
            Variant::Corrected => E7Variant::Corrected,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Weighting {
    /// The E8 roots themselves.
    Roots,
    /// Half-integral roots counted twice as long.
    Doubled,
}

impl From<Weighting> for HalfSpinScaling {
    fn from(w: Weighting) -> Self {
        match w {
            Weighting::Roots => HalfSpinScaling::Roots,
            Weighting::Doubled => HalfSpinScaling::Doubled,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Basis {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Source {
    Explicit,
    Combinatorial,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The 240 roots in x-coordinates, or their 120 forms on the y-Cartan.
    Roots {
        #[arg(long, value_enum, default_value_t = Basis::X)]
        basis: Basis,
    },
    /// Power sum of degree d over the roots.
    PowerSum {
        degree: u32,
        /// Compare with the tabulated orbit coefficients.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Weighting::Roots)]
        weighting: Weighting,
    },
    /// The factored hyperdeterminant on the Cartan.
    Hdet {
        #[command(subcommand)]
        action: HdetAction,
    },
    /// Cube and Fano plane incidence.
    Geometry {
        #[command(subcommand)]
        action: GeometryAction,
    },
    /// Cayley's 2x2x2 hyperdeterminant.
    Cayley {
        #[command(subcommand)]
        action: CayleyAction,
    },
    /// Fock space operators.
    Fock {
        #[command(subcommand)]
        action: FockAction,
    },
    /// Every self-check, one line each.
    VerifyAll {
        #[arg(long, value_enum, default_value_t = Weighting::Roots)]
        weighting: Weighting,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum HdetAction {
    /// Print the factored form.
    Build,
    /// Evaluate at a point given as a JSON array of 8 rationals ("-" or absent: stdin).
    Eval {
        #[arg(allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Restrict to the wedge-4 slice and report Q and T.
    Restrict,
}

#[derive(Subcommand, Debug)]
enum GeometryAction {
    Planes,
    Lines,
    Fano {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u8).range(1..=8))]
        center: u8,
    },
    Forms,
}

#[derive(Subcommand, Debug)]
enum CayleyAction {
    /// Evaluate at 8 rationals a000 a001 ... a111.
    Eval {
        #[arg(num_args = 8, required = true, allow_hyphen_values = true)]
        entries: Vec<String>,
    },
    /// Emit the degree-4 polynomial.
    Poly {
        #[arg(long, value_enum, default_value_t = Source::Explicit)]
        source: Source,
    },
}

#[derive(Subcommand, Debug)]
enum FockAction {
    CarCheck,
    SpinCheck {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// The Cartan state sum y_i |E_i>.
    Cartan {
        #[arg(num_args = 8, required = true, allow_hyphen_values = true)]
        y: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRational { .. }
            | Error::Dimension { .. }
            | Error::Precondition(_)
            | Error::Json(_) => Failure::Usage(e.to_string()),
            other => Failure::Core(other),
        }
    }
}

/// Rendered output plus whether every check it reports passed.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            ok: true,
        }
    }

    fn checked(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n.into())
            .build_global()
        {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => match emit(&cli.global, &report) {
            Ok(()) if report.ok => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(global: &Global, report: &Report) -> io::Result<()> {
    let body = match global.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).map_err(io::Error::other)?;
            s.push('\n');
            s
        }
        Format::Text => report.text.clone(),
    };
    match &global.out {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let variant: E7Variant = cli.global.e7_variant.into();
    match &cli.command {
        Command::Roots { basis } => roots_cmd(*basis),
        Command::PowerSum {
            degree,
            verify,
            weighting,
        } => power_sum_cmd(*degree, *verify, (*weighting).into()),
        Command::Hdet { action } => hdet_cmd(action),
        Command::Geometry { action } => geometry_cmd(action),
        Command::Cayley { action } => cayley_cmd(action),
        Command::Fock { action } => fock_cmd(action, variant),
        Command::VerifyAll { weighting, seed } => {
            let summary = verify::verify_all(&VerifyOptions {
                weighting: (*weighting).into(),
                e7_variant: variant,
                seed: *seed,
            });
            let json = serde_json::to_value(&summary).map_err(Error::from)?;
            Ok(Report::new(json, summary.to_text()).checked(summary.passed()))
        }
    }
}

fn parse_arg(name: &str, index: usize, s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure::Usage(format!("{name}[{index}]: {e}")))
}

fn parse_args(name: &str, raw: &[String]) -> Result<Vec<Rational>, Failure> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| parse_arg(name, i, s))
        .collect()
}

fn strings(rs: &[Rational]) -> Vec<String> {
    rs.iter().map(format_rational).collect()
}

fn roots_cmd(basis: Basis) -> Result<Report, Failure> {
    match basis {
        Basis::X => {
            let roots = roots::generate_e8_roots();
            let mut text = String::new();
            let mut rows = Vec::with_capacity(roots.len());
            for (n, r) in roots.iter().enumerate() {
                let coords = strings(&r.coords());
                text.push_str(&format!("{:>3}  ({})\n", n + 1, coords.join(", ")));
                rows.push(json!({ "coords": coords, "kind": r.kind() }));
            }
            Ok(Report::new(
                json!({ "basis": "x", "count": roots.len(), "roots": rows }),
                text,
            ))
        }
        Basis::Y => {
            let images = roots::roots_in_y()?;
            let mult = roots::form_multiplicities(&images);
            let scalar = format_rational(&roots::root_product_scalar(&images));
            let mut text = format!("{} forms, product of root scales {scalar}\n", mult.len());
            let mut rows = Vec::with_capacity(mult.len());
            for (f, m) in &mult {
                text.push_str(&format!("{:<20} x{m}\n", f.to_string()));
                rows.push(json!({ "form": f.to_string(), "coeffs": f.coeffs(), "mult": m }));
            }
            Ok(Report::new(
                json!({ "basis": "y", "count": mult.len(), "root_product_scalar": scalar, "forms": rows }),
                text,
            ))
        }
    }
}

fn polynomial_text(p: &IntPolynomial) -> String {
    let vars = var_names("y", p.nvars());
    format!(
        "{}\n",
        Pretty {
            poly: p,
            vars: &vars
        }
    )
}

fn power_sum_cmd(d: u32, check: bool, scaling: HalfSpinScaling) -> Result<Report, Failure> {
    if check {
        let report = invariants::verify_power_sum(d, scaling)?;
        let mut text = format!(
            "degree {d}: {} of {} tabulated orbits matched, {} computed, scalar {}\n",
            report.matched,
            report.tabulated_orbits,
            report.computed_orbits,
            report.scalar.as_deref().unwrap_or("undefined"),
        );
        for m in &report.mismatches {
            text.push_str(&format!(
                "  mismatch at orbit {:?}: computed {}, tabulated {}\n",
                m.orbit,
                m.computed.as_deref().unwrap_or("absent"),
                m.tabulated.as_deref().unwrap_or("absent"),
            ));
        }
        let ok = report.passed();
        let json = serde_json::to_value(&report).map_err(Error::from)?;
        return Ok(Report::new(json, text).checked(ok));
    }
    let p = invariants::power_sum_with(d, scaling)?;
    let poly = p.primitive.to_json(&var_names("y", RANK))?;
    let json = json!({
        "degree": d,
        "weighting": scaling,
        "scalar": format_rational(&p.scalar),
        "polynomial": poly,
    });
    let text = format!(
        "degree {d}, scalar {}, {} terms\n{}",
        format_rational(&p.scalar),
        p.primitive.len(),
        polynomial_text(&p.primitive)
    );
    Ok(Report::new(json, text))
}

fn factored_text(h: &FactoredForm) -> String {
    let mut text = format!(
        "scalar {}, {} distinct factors, degree {}\n",
        format_rational(&h.scalar),
        h.distinct_factors(),
        h.total_degree()
    );
    for (f, m) in &h.factors {
        text.push_str(&format!("({f})^{m}\n"));
    }
    text
}

fn read_point(arg: Option<&str>) -> Result<Vec<Rational>, Failure> {
    let raw = match arg {
        Some(s) if s != "-" => s.to_string(),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("point: {e}")))?;
            s
        }
    };
    let items: Vec<Value> = serde_json::from_str(&raw)
        .map_err(|e| Failure::Usage(format!("point: expected a JSON array of 8 rationals: {e}")))?;
    if items.len() != RANK {
        return Err(Failure::Usage(format!(
            "point: expected {RANK} entries, found {}",
            items.len()
        )));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::String(s) => parse_arg("point", i, s),
            Value::Number(n) if n.is_i64() => parse_arg("point", i, &n.to_string()),
            other => Err(Failure::Usage(format!(
                "point[{i}]: {other} is not a rational string"
            ))),
        })
        .collect()
}

fn hdet_cmd(action: &HdetAction) -> Result<Report, Failure> {
    let h = hyperdet::build_hdet()?;
    match action {
        HdetAction::Build => {
            let json = serde_json::to_value(h.to_json()).map_err(Error::from)?;
            Ok(Report::new(json, factored_text(&h)))
        }
        HdetAction::Eval { point } => {
            let y = read_point(point.as_deref())?;
            let v = format_rational(&hyperdet::eval_hdet(&h, &y)?);
            Ok(Report::new(
                json!({ "point": strings(&y), "value": v }),
                format!("{v}\n"),
            ))
        }
        HdetAction::Restrict => {
            let r = hyperdet::restrict_to_wedge4(&h)?;
            let (q, t) = r.compare_with_printed()?;
            let mut text = format!(
                "Q: {} forms at multiplicity {}\nT: {} forms at multiplicity {}\ndegree {} + {} = {}\nresidual scalar {}\n",
                r.q_factors.len(),
                r.q_multiplicity,
                r.t_factors.len(),
                r.t_multiplicity,
                r.q_multiplicity * r.q_degree,
                r.t_multiplicity * r.t_degree,
                r.total_degree(),
                format_rational(&r.residual_scalar),
            );
            text.push_str(&format!(
                "printed Q {}, printed T {}\n",
                if q.passed() { "matched" } else { "differs" },
                if t.passed() { "matched" } else { "differs" },
            ));
            let mut json = serde_json::to_value(&r).map_err(Error::from)?;
            json["printed_q"] = serde_json::to_value(&q).map_err(Error::from)?;
            json["printed_t"] = serde_json::to_value(&t).map_err(Error::from)?;
            Ok(Report::new(json, text).checked(q.passed() && t.passed()))
        }
    }
}

fn geometry_cmd(action: &GeometryAction) -> Result<Report, Failure> {
    match action {
        GeometryAction::Planes => {
            let planes = geometry::enumerate_planes();
            let text = planes
                .iter()
                .map(|p| {
                    format!(
                        "{:?} = {}  {:?}  {:?}\n",
                        p.covector, p.constant, p.points, p.kind
                    )
                })
                .collect();
            Ok(Report::new(
                serde_json::to_value(&planes).map_err(Error::from)?,
                text,
            ))
        }
        GeometryAction::Lines => {
            let lines = geometry::enumerate_lines();
            let text = lines.iter().map(|l| format!("{:?}\n", l.points)).collect();
            Ok(Report::new(
                serde_json::to_value(&lines).map_err(Error::from)?,
                text,
            ))
        }
        GeometryAction::Fano { center } => {
            let p = geometry::project_from_center(*center)?;
            p.check_fano_axioms()?;
            let mut text = format!("center {center}, points {:?}\nlines:\n", p.points);
            for l in &p.lines {
                text.push_str(&format!("  {:?}\n", l.points));
            }
            text.push_str("affine planes:\n");
            for a in &p.affine_planes {
                text.push_str(&format!("  {a:?}\n"));
            }
            Ok(Report::new(
                serde_json::to_value(&p).map_err(Error::from)?,
                text,
            ))
        }
        GeometryAction::Forms => {
            let forms: Vec<String> = geometry::distinct(&geometry::forms_from_geometry())
                .iter()
                .map(ToString::to_string)
                .collect();
            let text = forms.iter().map(|f| format!("{f}\n")).collect();
            Ok(Report::new(
                json!({ "count": forms.len(), "forms": forms }),
                text,
            ))
        }
    }
}

fn cayley_cmd(action: &CayleyAction) -> Result<Report, Failure> {
    match action {
        CayleyAction::Eval { entries } => {
            let a = cayley::Tensor222::from_slice(&parse_args("entries", entries)?)?;
            let v = format_rational(&cayley::hdet222_explicit(&a));
            Ok(Report::new(
                json!({ "entries": strings(a.entries()), "value": v }),
                format!("{v}\n"),
            ))
        }
        CayleyAction::Poly { source } => {
            let p: RatPolynomial = match source {
                Source::Explicit => cayley::explicit_polynomial(),
                Source::Combinatorial => cayley::hdet222_combinatorial(),
            };
            let p = p.to_integer()?;
            let vars: Vec<String> = (0..8).map(|i| format!("a{:03b}", i)).collect();
            let json = serde_json::to_value(p.to_json(&vars)?).map_err(Error::from)?;
            let text = format!(
                "{}\n",
                Pretty {
                    poly: &p,
                    vars: &vars
                }
            );
            Ok(Report::new(json, text))
        }
    }
}

fn fock_cmd(action: &FockAction, variant: E7Variant) -> Result<Report, Failure> {
    match action {
        FockAction::CarCheck => {
            let r = fock::car_check();
            let mut text = format!(
                "{} relations checked, {} failed\n",
                r.checks,
                r.failures.len()
            );
            for f in &r.failures {
                text.push_str(&format!("  {f}\n"));
            }
            let ok = r.passed();
            let json = serde_json::to_value(&r).map_err(Error::from)?;
            Ok(Report::new(json, text).checked(ok))
        }
        FockAction::SpinCheck { seed } => {
            let c = verify::check_spin(*seed)?;
            let ok = c.passed;
            let json = serde_json::to_value(&c).map_err(Error::from)?;
            Ok(Report::new(json, format!("{}\n", c.detail)).checked(ok))
        }
        FockAction::Cartan { y } => {
            let y = parse_args("y", y)?;
            let s = fock::cartan_state(&y, variant)?;
            let mut text = String::new();
            for (mask, amp) in s.amplitudes() {
                let modes: Vec<String> = (0..fock::MODES)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(fock::mode_label)
                    .collect();
                text.push_str(&format!("{mask:>3}  {:<24} {amp}\n", modes.join(" ")));
            }
            let json = serde_json::to_value(s.to_json()).map_err(Error::from)?;
            Ok(Report::new(json, text))
        }
    }
}

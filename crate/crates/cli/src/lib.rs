//! The `chowform` command line: argument parsing, dispatch and rendering.

pub mod input;
pub mod structured;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use chowform_core::biadjacency::{check_homogeneity, degree_summary, BiAdjacency, Flavor};
use chowform_core::choworbit::{self, ensure_torsion_free};
use chowform_core::compat::{check_condition2, solve_epsilons};
use chowform_core::{
    Error, GrassmannPoint, Lattice, Line, OrbitPoint, Poly, ProblemDocument, ProblemInstance, Quiver, Result,
};

use input::{load_document, parse_exponents, parse_line, parse_vector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "chowform", version, about = "Chow forms and principal A-determinants from quivers with superpotential")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check on the document and report each one.
    Validate { document: String },
    /// Rays and chambers of the secondary fan.
    Fan { document: String },
    /// The weight a0 in every chamber, its class, and the structure of Z^N/L.
    A0 { document: String },
    /// Solve for (and verify any supplied) epsilon assignment.
    Epsilons { document: String },
    /// The bi-adjacency matrix, one entry per line.
    Biadjacency {
        document: String,
        #[arg(long)]
        complementary: bool,
    },
    /// Determinant of the bi-adjacency matrix.
    Det {
        document: String,
        #[arg(long)]
        complementary: bool,
    },
    /// Chow form of an orbit closure; without --point, the generic element
    /// det K^c(y(z),u).
    Chowform {
        document: String,
        /// Comma-separated coordinates, e.g. `1,2,1/2`. Repeatable.
        #[arg(long = "point")]
        points: Vec<String>,
        /// Evaluate at the document's points.
        #[arg(long)]
        document_points: bool,
        /// Skip normalization (the affine map).
        #[arg(long)]
        affine: bool,
    },
    /// det K(z,u) at a point, optionally modulo scalars.
    OrbitInvariant {
        document: String,
        #[arg(long = "point")]
        points: Vec<String>,
        #[arg(long)]
        document_points: bool,
        #[arg(long)]
        projective: bool,
    },
    /// Equation in u of the image of a line; `lattice` names the point given by B.
    LineImage {
        document: String,
        /// Two rows separated by `;`, e.g. `1,0,0;0,1,0`, or `lattice`.
        #[arg(long = "line")]
        lines: Vec<String>,
        #[arg(long)]
        document_lines: bool,
    },
    /// Principal A-determinant and exact division by candidate factors.
    Adet {
        document: String,
        /// Candidate factor in canonical text; replaces the document's factors. Repeatable.
        #[arg(long = "factor")]
        factors: Vec<String>,
    },
    /// det K^c at the Plücker coordinates of a line and a point.
    Incidence {
        document: String,
        #[arg(long)]
        line: String,
        #[arg(long)]
        point: String,
    },
    /// Coefficient of u^v in det K(z,u).
    VertexCoeff {
        document: String,
        /// Comma-separated exponents, e.g. `1,2,2,1,0,0`.
        #[arg(long)]
        exponents: String,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

struct Rendered {
    text: String,
    json: Value,
    valid: bool,
}

impl Rendered {
    fn new(text: String, json: Value) -> Rendered {
        Rendered { text, json, valid: true }
    }
}

/// Malformed input is a usage error; everything else is a failed check.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::ZeroCoordinate(_)
        | Error::RankDeficientLine
        | Error::DependentVectors => EXIT_USAGE,
        _ => EXIT_INVALID,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Structured => format!("{}\n", serde_json::to_string_pretty(&r.json).expect("json")),
            };
            Outcome {
                code: if r.valid { EXIT_OK } else { EXIT_INVALID },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let stdout = match cli.format {
                Format::Text => String::new(),
                Format::Structured => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&json!({ "error": e.to_string(), "exit": code })).expect("json")
                ),
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Rendered> {
    match cmd {
        Command::Validate { document } => validate(&load_document(document)?),
        Command::Fan { document } => fan(&load_document(document)?.lattice()?),
        Command::A0 { document } => a0(&load_document(document)?.lattice()?),
        Command::Epsilons { document } => epsilons(&load_document(document)?),
        Command::Biadjacency { document, complementary } => {
            let q = checked_quiver(&load_document(document)?)?;
            let k = BiAdjacency::build(&q, flavor(*complementary));
            Ok(Rendered::new(k.matrix.to_string(), structured::poly_matrix_to_json(&k.matrix)))
        }
        Command::Det { document, complementary } => {
            let q = checked_quiver(&load_document(document)?)?;
            let det = BiAdjacency::build(&q, flavor(*complementary)).det()?;
            Ok(poly_output(&det))
        }
        Command::Chowform {
            document,
            points,
            document_points,
            affine,
        } => {
            let doc = load_document(document)?;
            let inst = doc.instance()?;
            let points = collect_points(&doc, points, *document_points)?;
            if points.is_empty() {
                return Ok(poly_output(inst.chow_form_generic().poly()));
            }
            evaluate_points(&points, |u| Ok(inst.chow_map_point(u, !affine)?.into_poly()))
        }
        Command::OrbitInvariant {
            document,
            points,
            document_points,
            projective,
        } => {
            let doc = load_document(document)?;
            let inst = doc.instance()?;
            let points = collect_points(&doc, points, *document_points)?;
            if points.is_empty() {
                return Err(Error::Parse("orbit-invariant needs --point or --document-points".into()));
            }
            evaluate_points(&points, |u| {
                if *projective {
                    inst.projective_orbit_invariant(u)
                } else {
                    inst.affine_orbit_invariant(u)
                }
            })
        }
        Command::LineImage {
            document,
            lines,
            document_lines,
        } => line_image(&load_document(document)?, lines, *document_lines),
        Command::Adet { document, factors } => adet(&load_document(document)?, factors),
        Command::Incidence { document, line, point } => {
            let inst = load_document(document)?.instance()?;
            let line = parse_line(line)?;
            let u = OrbitPoint::new(parse_vector(point)?)?;
            let value = inst.incidence_determinant(&line, u.coords())?;
            let on_line = line.contains_point(u.coords());
            let text = format!(
                "det K^c(Y(line), u) = {value}\nvanishes: {}\npoint on line: {on_line}\n",
                value.is_zero()
            );
            Ok(Rendered::new(
                text,
                json!({ "value": value.to_string(), "vanishes": value.is_zero(), "point_on_line": on_line }),
            ))
        }
        Command::VertexCoeff { document, exponents } => {
            let inst = load_document(document)?.instance()?;
            let c = inst.vertex_coefficient(&parse_exponents(exponents)?)?;
            Ok(poly_output(&c))
        }
    }
}

fn flavor(complementary: bool) -> Flavor {
    if complementary {
        Flavor::Complementary
    } else {
        Flavor::Standard
    }
}

fn poly_output(p: &Poly) -> Rendered {
    Rendered::new(format!("{p}\n"), json!({ "poly": p.to_string() }))
}

/// The quiver, refused unless its cell conditions hold.
fn checked_quiver(doc: &ProblemDocument) -> Result<Quiver> {
    let q = doc.quiver()?;
    let report = q.check_condition1();
    if !report.is_ok() {
        return Err(Error::Condition1(report));
    }
    Ok(q)
}

fn collect_points(doc: &ProblemDocument, args: &[String], from_doc: bool) -> Result<Vec<OrbitPoint>> {
    let mut raw = args.iter().map(|p| parse_vector(p)).collect::<Result<Vec<_>>>()?;
    if from_doc {
        raw.extend(doc.points()?);
    }
    raw.into_iter().map(OrbitPoint::new).collect()
}

fn evaluate_points(points: &[OrbitPoint], f: impl Fn(&OrbitPoint) -> Result<Poly>) -> Result<Rendered> {
    let mut text = String::new();
    let mut items = Vec::new();
    for u in points {
        let p = f(u)?;
        let coords: Vec<String> = u.coords().iter().map(ToString::to_string).collect();
        if points.len() > 1 {
            writeln!(text, "u = ({}): {p}", coords.join(",")).unwrap();
        } else {
            writeln!(text, "{p}").unwrap();
        }
        items.push(json!({ "point": coords, "poly": p.to_string() }));
    }
    Ok(Rendered::new(text, json!({ "results": items })))
}

fn line_image(doc: &ProblemDocument, args: &[String], from_doc: bool) -> Result<Rendered> {
    let inst = doc.instance()?;
    let mut lines: Vec<(String, Option<Line>)> = Vec::new();
    for a in args {
        if a == "lattice" {
            lines.push((a.clone(), None));
        } else {
            lines.push((a.clone(), Some(parse_line(a)?)));
        }
    }
    if from_doc {
        for (k, l) in doc.lines()?.into_iter().enumerate() {
            lines.push((format!("document line {}", k + 1), Some(l)));
        }
    }
    if lines.is_empty() {
        return Err(Error::Parse("line-image needs --line or --document-lines".into()));
    }
    let mut text = String::new();
    let mut items = Vec::new();
    for (label, line) in &lines {
        let point = match line {
            Some(l) => GrassmannPoint::Line(l),
            None => GrassmannPoint::Lattice(inst.lattice()),
        };
        let p = inst.line_image_equation(point)?;
        if lines.len() > 1 {
            writeln!(text, "{label}: {p}").unwrap();
        } else {
            writeln!(text, "{p}").unwrap();
        }
        items.push(json!({ "line": label, "poly": p.to_string() }));
    }
    Ok(Rendered::new(text, json!({ "results": items })))
}

fn adet(doc: &ProblemDocument, factor_args: &[String]) -> Result<Rendered> {
    let lattice = doc.lattice()?;
    ensure_torsion_free(&lattice)?;
    let ea = choworbit::principal_a_determinant(lattice.clone(), doc.quiver()?, doc.epsilons()?)?;
    let factors: Vec<Poly> = if factor_args.is_empty() {
        doc.factors()?
    } else {
        factor_args.iter().map(|f| f.parse()).collect::<Result<_>>()?
    };
    let mut text = String::new();
    writeln!(text, "B_st(det K^c): {}", ea.raw).unwrap();
    writeln!(text, "normalized: {}", ea.normalized).unwrap();
    writeln!(text, "content: {}", ea.content).unwrap();
    writeln!(text, "sign: {}", ea.sign_note()).unwrap();
    let mut facets = Value::Null;
    if !factors.is_empty() {
        let inst = ProblemInstance::new(lattice, doc.quiver()?, doc.epsilons()?)?;
        let report = inst.facet_divisibility(&factors)?;
        write!(text, "{report}").unwrap();
        facets = json!({
            "factors": report.per_factor.iter().map(|(f, q)| json!({
                "factor": f.to_string(),
                "quotient": q.as_ref().map(ToString::to_string),
            })).collect::<Vec<_>>(),
            "product": report.product.to_string(),
            "product_quotient": report.product_quotient.as_ref().map(ToString::to_string),
            "product_sign": report.product_sign(),
        });
    }
    Ok(Rendered::new(
        text,
        json!({
            "raw": ea.raw.to_string(),
            "normalized": ea.normalized.to_string(),
            "content": ea.content.to_string(),
            "sign_note": ea.sign_note(),
            "facets": facets,
        }),
    ))
}

fn fan(lattice: &Lattice) -> Result<Rendered> {
    let fan = lattice.secondary_fan();
    let mut text = String::new();
    let mut rays = Vec::new();
    for (k, r) in fan.rays.iter().enumerate() {
        let members: Vec<String> = r.members.iter().map(ToString::to_string).collect();
        writeln!(text, "ray {}: ({},{}) columns {}", k + 1, r.direction[0], r.direction[1], members.join(",")).unwrap();
        rays.push(json!({
            "direction": [r.direction[0].to_string(), r.direction[1].to_string()],
            "columns": r.members,
        }));
    }
    let mut chambers = Vec::new();
    for (k, c) in fan.chambers.iter().enumerate() {
        let pairs: Vec<String> = c.pairs.iter().map(|(i, j)| format!("{{{i},{j}}}")).collect();
        writeln!(
            text,
            "chamber {}: c = ({},{}) L_c = {}",
            k + 1,
            c.representative[0],
            c.representative[1],
            pairs.join(" ")
        )
        .unwrap();
        chambers.push(json!({
            "representative": [c.representative[0].to_string(), c.representative[1].to_string()],
            "rays": [c.bounding_rays.0 + 1, c.bounding_rays.1 + 1],
            "pairs": c.pairs.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>(),
        }));
    }
    Ok(Rendered::new(text, json!({ "rays": rays, "chambers": chambers })))
}

fn a0(lattice: &Lattice) -> Result<Rendered> {
    let a0 = lattice.a0()?;
    let qs = lattice.quotient_structure();
    let mut text = String::new();
    let mut chambers = Vec::new();
    for (c, w) in &a0.by_chamber {
        writeln!(text, "c = ({},{}): a0 = {w}", c[0], c[1]).unwrap();
        chambers.push(json!({ "representative": [c[0].to_string(), c[1].to_string()], "a0": w.to_string() }));
    }
    let factors: Vec<String> = qs.invariant_factors.iter().map(ToString::to_string).collect();
    writeln!(text, "class: {} (hbar = {})", a0.class, a0.class.hbar()).unwrap();
    writeln!(
        text,
        "Z^N/L: free rank {}, invariant factors ({}), torsion order {}",
        qs.free_rank,
        factors.join(","),
        qs.torsion_order
    )
    .unwrap();
    Ok(Rendered::new(
        text,
        json!({
            "chambers": chambers,
            "class": a0.class.to_string(),
            "hbar": a0.class.hbar().to_string(),
            "free_rank": qs.free_rank,
            "invariant_factors": factors,
            "torsion_order": qs.torsion_order.to_string(),
        }),
    ))
}

fn epsilons(doc: &ProblemDocument) -> Result<Rendered> {
    let lattice = doc.lattice()?;
    let quiver = checked_quiver(doc)?;
    let a0 = lattice.a0()?.class;
    let solved = solve_epsilons(&lattice, &quiver)?;
    let mut text = String::new();
    let mut cells = Vec::new();
    for (id, w) in &solved.black {
        writeln!(text, "b{id}: {w} (hbar {})", w.hbar()).unwrap();
        cells.push(json!({ "cell": format!("b{id}"), "epsilon": w.to_string() }));
    }
    for (id, w) in &solved.white {
        writeln!(text, "w{id}: {w} (hbar {})", w.hbar()).unwrap();
        cells.push(json!({ "cell": format!("w{id}"), "epsilon": w.to_string() }));
    }
    writeln!(text, "k = {}", solved.k).unwrap();
    let mut supplied = Value::Null;
    let mut valid = true;
    if let Some(eps) = doc.epsilons()? {
        let report = check_condition2(&lattice, &quiver, &eps, &a0);
        writeln!(text, "supplied epsilons: {report} (k = {})", eps.k).unwrap();
        valid = report.is_ok();
        supplied = json!({ "ok": report.is_ok(), "report": report.to_string(), "k": eps.k.to_string() });
    }
    Ok(Rendered {
        text,
        json: json!({ "solved": cells, "k": solved.k.to_string(), "supplied": supplied }),
        valid,
    })
}

fn validate(doc: &ProblemDocument) -> Result<Rendered> {
    let mut checks: Vec<(&str, bool, String)> = Vec::new();
    let lattice = match doc.lattice() {
        Ok(l) => {
            checks.push(("lattice", true, format!("N = {}", l.n())));
            Some(l)
        }
        Err(e) => {
            checks.push(("lattice", false, e.to_string()));
            None
        }
    };
    let quiver = match doc.quiver() {
        Ok(q) => {
            let report = q.check_condition1();
            checks.push(("cell conditions", report.is_ok(), report.to_string()));
            report.is_ok().then_some(q)
        }
        Err(e) => {
            checks.push(("cell conditions", false, e.to_string()));
            None
        }
    };
    if let (Some(l), Some(q)) = (&lattice, &quiver) {
        validate_pair(l, q, doc, &mut checks);
    }
    let valid = checks.iter().all(|(_, ok, _)| *ok);
    let mut text = String::new();
    for (name, ok, detail) in &checks {
        writeln!(text, "{name}: {} ({detail})", if *ok { "pass" } else { "FAIL" }).unwrap();
    }
    writeln!(text, "{}", if valid { "valid" } else { "invalid" }).unwrap();
    let json = json!({
        "document": doc.name,
        "checks": checks.iter().map(|(n, ok, d)| json!({ "check": n, "ok": ok, "detail": d })).collect::<Vec<_>>(),
        "valid": valid,
    });
    Ok(Rendered { text, json, valid })
}

fn validate_pair(l: &Lattice, q: &Quiver, doc: &ProblemDocument, checks: &mut Vec<(&'static str, bool, String)>) {
    if l.n() != q.n_nodes() {
        checks.push((
            "node count",
            false,
            format!("lattice has N = {}, quiver has {} nodes", l.n(), q.n_nodes()),
        ));
        return;
    }
    let a0 = match l.a0() {
        Ok(a0) => {
            checks.push(("a0", true, format!("{} chambers, class {}", a0.by_chamber.len(), a0.class)));
            a0.class
        }
        Err(e) => {
            checks.push(("a0", false, e.to_string()));
            return;
        }
    };
    let eps = match doc.epsilons() {
        Ok(Some(eps)) => {
            let report = check_condition2(l, q, &eps, &a0);
            checks.push(("supplied epsilons", report.is_ok(), format!("{report}, k = {}", eps.k)));
            report.is_ok().then_some(eps)
        }
        Ok(None) => match solve_epsilons(l, q) {
            Ok(eps) => {
                checks.push(("epsilon compatibility", true, format!("solved, k = {}", eps.k)));
                Some(eps)
            }
            Err(e) => {
                checks.push(("epsilon compatibility", false, e.to_string()));
                None
            }
        },
        Err(e) => {
            checks.push(("supplied epsilons", false, e.to_string()));
            None
        }
    };
    let Some(eps) = eps else { return };
    match check_homogeneity(l, q, &eps) {
        Ok(report) => checks.push(("homogeneity", report.is_ok(), report.to_string())),
        Err(e) => checks.push(("homogeneity", false, e.to_string())),
    }
    match degree_summary(l, q) {
        Ok(s) => checks.push(("degrees", s.nu().is_some(), s.to_string())),
        Err(e) => checks.push(("degrees", false, e.to_string())),
    }
    let qs = l.quotient_structure();
    checks.push((
        "quotient",
        true,
        format!("free rank {}, torsion order {}", qs.free_rank, qs.torsion_order),
    ));
}

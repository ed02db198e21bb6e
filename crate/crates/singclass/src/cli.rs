//! Argument parsing and dispatch for the `singclass` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use singclass_core::brieskorn::{classify_cone_surface, classify_fermat_hypersurface, classify_triple, triple_ci};
use singclass_core::curves::{self, build_trivial, check_solution, verify_identity, Component, WeightedFermatIdentity};
use singclass_core::exactmath::{vars, Field, Poly, Scalar, Vars};
use singclass_core::hilbert::{classify_ci, veronese_analysis, WeightedCI};
use singclass_core::lnd::{
    self, build_suspension, default_cap, exp_flow, homogeneous_parts, is_locally_nilpotent, orbit_avoids, Derivation,
    FlowMap, NilpotencyStatus,
};
use singclass_core::quotients::{descend_lnd, format_exponent, hj_expansion, CyclicQuotient};

use crate::derivfile::parse_derivation;
use crate::parse::{common_field, parse_expr, parse_poly, parse_scalar_list, ParseError};
use crate::report::{Report, Section, Value};
use crate::sweep::triple_sweep;

/// Default number of plurigenera listed in reports.
pub const DEFAULT_MMAX: u32 = 12;

/// Largest dihedral parameter covered by `schwartz all`.
pub const DIHEDRAL_RANGE: std::ops::RangeInclusive<u32> = 2..=50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 on success, 1 when a verification or decision comes out negative,
    /// 2 on usage or input errors.
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] singclass_core::Error),
    #[error("parse error in {what} {0}", what = .1)]
    Parse(ParseError, String),
    #[error("{0}")]
    Input(String),
}

fn parse_err(what: &str) -> impl Fn(ParseError) -> CliError + '_ {
    move |e| CliError::Parse(e, what.to_string())
}

type Outcome = Result<(Report, bool), CliError>;

#[derive(Parser, Debug)]
#[command(name = "singclass", version, about = "Exact classification of quasihomogeneous surface singularities")]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Classify the Pham-Brieskorn surface x^p + y^q + z^r = 0.
    Triple(TripleArgs),
    /// Classify a weighted complete intersection.
    Ci(CiArgs),
    /// Invariants of the quotient of V_{p,q,r} by Z_d.
    Veronese(VeroneseArgs),
    /// Classify x_1^p_1 + ... + x_n^p_n = 0.
    Hypersurface(HypersurfaceArgs),
    /// The cone surface F_d(x, y) = z^m.
    Cone(ConeArgs),
    /// Verify the polynomial identities for the Platonic triples.
    Schwartz(SchwartzArgs),
    /// Build and check the solution (a f^(M/p), b f^(M/q), c f^(M/r)).
    Trivial(TrivialArgs),
    /// Cyclic quotient singularity C^2 / mu_d acting with weights (1, e).
    Cyclic(CyclicArgs),
    /// Locally nilpotent derivations.
    #[command(subcommand)]
    Lnd(LndCmd),
}

#[derive(Args, Debug)]
struct TripleArgs {
    #[arg(required_unless_present = "sweep")]
    p: Option<u32>,
    #[arg(required_unless_present = "sweep")]
    q: Option<u32>,
    #[arg(required_unless_present = "sweep")]
    r: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_MMAX)]
    mmax: u32,
    /// Cross-check all triples 2 <= p <= q <= r <= RMAX instead.
    #[arg(long, value_name = "RMAX", conflicts_with_all = ["p", "q", "r"])]
    sweep: Option<u32>,
}

#[derive(Args, Debug)]
struct CiArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    weights: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_MMAX)]
    mmax: u32,
}

#[derive(Args, Debug)]
struct VeroneseArgs {
    p: u32,
    q: u32,
    r: u32,
    #[arg(long)]
    d: u64,
    #[arg(long, default_value_t = DEFAULT_MMAX)]
    mmax: u32,
}

#[derive(Args, Debug)]
struct HypersurfaceArgs {
    #[arg(value_delimiter = ',', required = true)]
    exponents: Vec<u32>,
}

#[derive(Args, Debug)]
struct ConeArgs {
    d: u32,
    m: u32,
    /// Coefficients c_0,..,c_d of F = sum c_i x^i y^(d-i).
    #[arg(long)]
    form: Option<String>,
}

#[derive(Args, Debug)]
struct SchwartzArgs {
    /// all, dihedral, dihedral:D, tetrahedral, octahedral,
    /// octahedral-variant or icosahedral.
    #[arg(default_value = "all")]
    name: String,
}

#[derive(Args, Debug)]
struct TrivialArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    exponents: Vec<u32>,
    /// Univariate polynomial f (variable s by default).
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    /// Constants a,b,c with a + b + c = 0.
    #[arg(long, default_value = "1,1,-2", allow_hyphen_values = true)]
    constants: String,
}

#[derive(Args, Debug)]
struct CyclicArgs {
    d: u64,
    e: u64,
}

#[derive(Subcommand, Debug)]
enum LndCmd {
    /// Decide local nilpotency of a derivation file.
    Verify(LndVerifyArgs),
    /// Exponential flow of a derivation file.
    Flow(LndFlowArgs),
    /// The derivation u -> 0, v -> dp/dx1, x1 -> u on uv = p.
    Suspend(LndSuspendArgs),
}

#[derive(Args, Debug)]
struct LndVerifyArgs {
    file: PathBuf,
    #[arg(long)]
    cap: Option<usize>,
    /// Also split into homogeneous parts for these weights.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    /// Starting point of an orbit, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// Point the orbit should avoid (default: origin).
    #[arg(long, allow_hyphen_values = true)]
    avoid: Option<String>,
}

#[derive(Args, Debug)]
struct LndFlowArgs {
    file: PathBuf,
    #[arg(long)]
    cap: Option<usize>,
    /// Relation that the flow should preserve; may be repeated.
    #[arg(long = "relation", allow_hyphen_values = true)]
    relations: Vec<String>,
    #[command(flatten)]
    orbit: OrbitArgs,
}

#[derive(Args, Debug)]
struct LndSuspendArgs {
    /// Non-constant polynomial p in x1, x2, ...
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    orbit: OrbitArgs,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let outcome = match cli.cmd {
        Cmd::Triple(a) => triple(a),
        Cmd::Ci(a) => ci(a),
        Cmd::Veronese(a) => veronese(a),
        Cmd::Hypersurface(a) => hypersurface(a),
        Cmd::Cone(a) => cone(a),
        Cmd::Schwartz(a) => schwartz(a),
        Cmd::Trivial(a) => trivial(a),
        Cmd::Cyclic(a) => cyclic(a),
        Cmd::Lnd(LndCmd::Verify(a)) => lnd_verify(a),
        Cmd::Lnd(LndCmd::Flow(a)) => lnd_flow(a),
        Cmd::Lnd(LndCmd::Suspend(a)) => lnd_suspend(a),
    };
    match outcome {
        Ok((report, positive)) => CommandResult {
            exit_code: if positive { 0 } else { 1 },
            stdout: if cli.json { report.to_json() } else { report.to_text() },
            stderr: String::new(),
        },
        Err(e) => CommandResult {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn triple(a: TripleArgs) -> Outcome {
    if let Some(rmax) = a.sweep {
        if rmax < 2 {
            return Err(CliError::Input("sweep bound must be at least 2".into()));
        }
        let s = triple_sweep(rmax, a.mmax)?;
        let section = Section::new()
            .put("rmax", Value::int(s.rmax))
            .put("m-max", Value::int(s.m_max))
            .put("triples", Value::int(s.triples))
            .put("platonic", Value::int(s.platonic))
            .put("quasirational", Value::int(s.quasirational))
            .put(
                "platonic-disagreements",
                Value::texts(s.platonic_disagreements.iter().map(|t| format!("{t:?}"))),
            )
            .put(
                "quasirational-disagreements",
                Value::texts(s.quasirational_disagreements.iter().map(|t| format!("{t:?}"))),
            )
            .put("agree", Value::Bool(s.agrees()));
        let ok = s.agrees();
        return Ok((Report::new("triple-sweep").with(section), ok));
    }
    let (p, q, r) = (a.p.unwrap(), a.q.unwrap(), a.r.unwrap());
    let c = classify_triple(p, q, r, a.mmax)?;
    let ci = triple_ci(p, q, r)?;
    let section = Section::new()
        .put("triple", Value::ints(c.triple))
        .put("Platonic", Value::text(c.platonic_type))
        .put("weights", Value::ints(ci.weights()))
        .put("degree", Value::int(ci.degrees()[0]))
        .eq("N", Value::int(c.normal_degree))
        .put("rational", Value::Bool(c.is_rational))
        .put("quotient", Value::Bool(c.is_quotient))
        .put("quasirational", Value::Bool(c.quasirational))
        .put("dim-A_N-zero", Value::Bool(c.quasirational_cross_check))
        .put("log-kodaira", Value::text(c.log_kodaira))
        .put("C+-action", Value::Bool(c.admits_cplus))
        .put("gorenstein", Value::Bool(c.is_gorenstein))
        .put("isolated-singularity", Value::text("assumed"))
        .put("delta", Value::ints(&c.delta_table))
        .put("pbar", Value::ints(&c.pbar_table));
    Ok((Report::new("triple").with(section), true))
}

fn ci(a: CiArgs) -> Outcome {
    let ci = WeightedCI::new(a.weights, a.degrees)?;
    let r = classify_ci(&ci, a.mmax)?;
    let section = Section::new()
        .put("weights", Value::ints(ci.weights()))
        .put("degrees", Value::ints(ci.degrees()))
        .put("dim", Value::int(r.dim))
        .eq("N", Value::int(r.normal_degree))
        .put("rational", Value::Bool(r.is_rational))
        .put("log-kodaira", Value::text(r.log_kodaira))
        .put("quotient", Value::opt(r.is_quotient_surface.map(Value::Bool)))
        .put("dim-A_N-zero", Value::opt(r.quasirational_form_test.map(Value::Bool)))
        .put("isolated-singularity", Value::text("assumed"))
        .put("delta", Value::ints(&r.delta_table))
        .put("pbar", Value::ints(&r.pbar_table));
    Ok((Report::new("ci").with(section), true))
}

fn veronese(a: VeroneseArgs) -> Outcome {
    let ci = triple_ci(a.p, a.q, a.r)?;
    let v = veronese_analysis(&ci, a.d, a.mmax)?;
    let mut t = [a.p, a.q, a.r];
    t.sort_unstable();
    let section = Section::new()
        .put("triple", Value::ints(t))
        .put("d", Value::int(v.d))
        .eq("N", Value::int(singclass_core::hilbert::normal_degree(&ci)))
        .put("rational", Value::Bool(v.is_rational))
        .put("quotient", Value::Bool(v.is_quotient))
        .put("log-kodaira", Value::text(v.log_kodaira))
        .put("minimal-rational-d", Value::opt(v.minimal_rational_d.map(Value::int)))
        .put("delta", Value::ints(&v.delta_table))
        .put("pbar", Value::ints(&v.pbar_table));
    Ok((Report::new("veronese").with(section), true))
}

fn hypersurface(a: HypersurfaceArgs) -> Outcome {
    let h = classify_fermat_hypersurface(&a.exponents)?;
    let section = Section::new()
        .put("exponents", Value::ints(&h.exponents))
        .put("degree", Value::int(&h.lcm))
        .eq("N", Value::int(&h.normal_degree))
        .put("rational", Value::Bool(h.is_rational))
        .put("no-coprime-solutions", Value::Bool(h.steinbrink_no_coprime_solutions));
    Ok((Report::new("hypersurface").with(section), true))
}

fn cone(a: ConeArgs) -> Outcome {
    let form = match &a.form {
        None => None,
        Some(src) => {
            let coeffs = parse_scalar_list(src).map_err(parse_err("--form"))?;
            if coeffs.len() != a.d as usize + 1 {
                return Err(CliError::Input(format!(
                    "--form needs {} coefficients, got {}",
                    a.d + 1,
                    coeffs.len()
                )));
            }
            let field = common_field(coeffs.iter().map(Scalar::field))
                .map_err(parse_err("--form"))?;
            let terms = coeffs.iter().enumerate().map(|(i, c)| {
                let c = c.embed(field).expect("joined field");
                (vec![i as u32, a.d - i as u32], c)
            });
            Some(Poly::from_terms(field, vars(&["x", "y"]), terms)?)
        }
    };
    let c = classify_cone_surface(a.d, a.m, form.as_ref())?;
    let section = Section::new()
        .put("d", Value::int(c.d))
        .put("m", Value::int(c.m))
        .eq("N", Value::int(c.normal_degree))
        .put("quasirational", Value::Bool(c.quasirational))
        .put("coprime-solutions-exist", Value::Bool(c.solutions_exist))
        .put("form", Value::opt(form.as_ref().map(Value::text)))
        .put("squarefree", Value::opt(c.squarefree_checked.map(Value::Bool)));
    Ok((Report::new("cone").with(section), c.squarefree_checked != Some(false)))
}

fn term_text(c: &Component, e: u32) -> String {
    let mut s = format!("({})", c.constant);
    if let Some(g) = &c.cofactor {
        s.push_str(&format!(" * ({g})"));
    }
    s.push_str(&format!(" * ({})^{e}", c.base));
    s
}

fn identity_section(id: &WeightedFermatIdentity) -> Result<(Section, bool), CliError> {
    let r = verify_identity(id)?;
    let field = id.components[0].base.field();
    let residual = r.mismatch.as_ref().map(|(e, c)| {
        let lead = Poly::from_terms(field, vars(&["s"]), [(vec![*e], c.clone())]).expect("monomial");
        Value::text(lead)
    });
    let section = Section::new()
        .put("identity", Value::text(&id.name))
        .put("status", Value::text(id.status))
        .put("field", Value::text(field))
        .put("exponents", Value::ints(id.exponents))
        .put(
            "terms",
            Value::texts(id.components.iter().zip(id.exponents).map(|(c, e)| term_text(c, e))),
        )
        .put("holds", Value::Bool(r.holds))
        .put("residual-leading-term", Value::opt(residual))
        .put("term-degrees", Value::ints(r.term_degrees))
        .put("pairwise-coprime", Value::Bool(r.all_coprime()));
    Ok((section, r.holds))
}

fn schwartz(a: SchwartzArgs) -> Outcome {
    let ids: Vec<WeightedFermatIdentity> = match a.name.as_str() {
        "all" => DIHEDRAL_RANGE
            .map(curves::dihedral)
            .chain([
                Ok(curves::tetrahedral()),
                Ok(curves::octahedral()),
                Ok(curves::octahedral_variant()),
                Ok(curves::icosahedral()),
            ])
            .collect::<Result<_, _>>()?,
        "dihedral" => DIHEDRAL_RANGE.map(curves::dihedral).collect::<Result<_, _>>()?,
        name => vec![curves::by_name(name)?],
    };
    let mut report = Report::new("schwartz");
    let mut failing = Vec::new();
    for id in &ids {
        let (section, holds) = identity_section(id)?;
        if !holds {
            failing.push(id.name.clone());
        }
        report.push(section);
    }
    if ids.len() > 1 {
        report.push(
            Section::new()
                .put("identities", Value::int(ids.len()))
                .put("holding", Value::int(ids.len() - failing.len()))
                .put("failing", Value::texts(&failing)),
        );
    }
    Ok((report, failing.is_empty()))
}

fn trivial(a: TrivialArgs) -> Outcome {
    let exps: [u32; 3] = a
        .exponents
        .clone()
        .try_into()
        .map_err(|_| CliError::Input("--exponents needs exactly three values".into()))?;
    let f = parse_poly(&a.f, None, "s").map_err(parse_err("--f"))?;
    if f.nvars() != 1 {
        return Err(CliError::Input("--f must be univariate".into()));
    }
    let consts = parse_scalar_list(&a.constants).map_err(parse_err("--constants"))?;
    let consts: [Scalar; 3] = consts
        .try_into()
        .map_err(|_| CliError::Input("--constants needs exactly three values".into()))?;
    let field = common_field(consts.iter().map(Scalar::field).chain([f.field()])).map_err(parse_err("--constants"))?;
    let f = f.embed(field)?;
    let comps = build_trivial(consts, &f, exps)?;
    let r = check_solution(&comps, exps)?;
    let section = Section::new()
        .put("exponents", Value::ints(exps))
        .put("f", Value::text(&f))
        .put("terms", Value::texts(comps.iter().zip(exps).map(|(c, e)| term_text(c, e))))
        .put("holds", Value::Bool(r.holds))
        .put("pairwise-coprime", Value::Bool(r.all_coprime()));
    Ok((Report::new("trivial").with(section), r.holds))
}

fn cyclic(a: CyclicArgs) -> Outcome {
    let q = CyclicQuotient::new(a.d, a.e)?;
    let r = descend_lnd(&q)?;
    let images = r.images.iter().map(|g| {
        let (ga, gb) = g.generator;
        let img = match g.image {
            None => "0".to_string(),
            Some((1, (x, y))) => format_exponent(x, y),
            Some((c, (x, y))) => format!("{c}*{}", format_exponent(x, y)),
        };
        format!("d({}) = {img}", format_exponent(ga, gb))
    });
    let derivation: Vec<String> = r.lifted.to_string().lines().map(str::to_string).collect();
    let section = Section::new()
        .put("quotient", Value::text(q))
        .put("d", Value::int(q.order()))
        .put("e", Value::int(q.weight()))
        .put("hj", Value::ints(hj_expansion(&q)))
        .put(
            "generators",
            Value::texts(r.generators.iter().map(|&(x, y)| format_exponent(x, y))),
        )
        .put("generator-names", Value::texts(r.lifted.vars().iter()))
        .put("gorenstein", Value::Bool(q.is_gorenstein()))
        .put("images", Value::texts(images))
        .put("images-invariant", Value::Bool(r.all_invariant()))
        .block("derivation", derivation)
        .put("relations", Value::opt(r.relations.as_ref().map(Value::texts)));
    Ok((Report::new("cyclic").with(section), r.all_invariant()))
}

fn read_derivation(path: &PathBuf) -> Result<Derivation, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_derivation(&text).map_err(|e| CliError::Parse(e, path.display().to_string()))
}

fn lines(d: &impl ToString) -> Vec<String> {
    d.to_string().lines().map(str::to_string).collect()
}

fn steps_value(steps: &[Option<usize>]) -> Value {
    Value::List(steps.iter().map(|s| Value::opt(s.map(Value::int))).collect())
}

fn lnd_verify(a: LndVerifyArgs) -> Outcome {
    let d = read_derivation(&a.file)?;
    let cap = a.cap.unwrap_or_else(|| default_cap(&d));
    let v = is_locally_nilpotent(&d, cap)?;
    let mut section = Section::new()
        .put("variables", Value::texts(d.vars().iter()))
        .block("derivation", lines(&d))
        .put("cap", Value::int(cap))
        .put("status", Value::text(v.status))
        .put("steps", steps_value(&v.steps));
    if let Some(w) = &a.weights {
        let parts = homogeneous_parts(&d, w)?;
        let mut verdicts = Vec::new();
        for (deg, part) in &parts {
            let pv = is_locally_nilpotent(part, cap)?;
            verdicts.push(format!("degree {deg}: {}", pv.status));
        }
        section = section
            .put("weights", Value::ints(w))
            .put("lowest-degree", Value::opt(parts.first().map(|p| Value::int(p.0))))
            .put("highest-degree", Value::opt(parts.last().map(|p| Value::int(p.0))))
            .put("parts", Value::texts(verdicts));
    }
    let ok = v.status == NilpotencyStatus::Nilpotent;
    Ok((Report::new("lnd-verify").with(section), ok))
}

fn parse_point(src: &str, what: &str, field: Field, n: usize) -> Result<Vec<Scalar>, CliError> {
    let pts = parse_scalar_list(src).map_err(parse_err(what))?;
    if pts.len() != n {
        return Err(CliError::Input(format!("{what} needs {n} coordinates, got {}", pts.len())));
    }
    pts.iter()
        .map(|c| c.embed(field).map_err(|_| CliError::Input(format!("{what} does not fit in {field}"))))
        .collect()
}

/// Flow, group law, relation preservation and optional orbit check.
fn flow_section(
    mut section: Section,
    d: &Derivation,
    cap: usize,
    relations: &[Poly],
    orbit: &OrbitArgs,
) -> Result<(Section, bool), CliError> {
    let v = is_locally_nilpotent(d, cap)?;
    section = section
        .put("cap", Value::int(cap))
        .put("status", Value::text(v.status))
        .put("steps", steps_value(&v.steps));
    if v.status != NilpotencyStatus::Nilpotent {
        return Ok((section, false));
    }
    let flow: FlowMap = exp_flow(d, cap)?;
    let identity = flow.is_identity_at_zero()?;
    let group = flow.satisfies_group_law()?;
    let preserved = relations.iter().map(|r| flow.preserves(r)).collect::<Result<Vec<_>, _>>()?;
    let mut ok = identity && group && preserved.iter().all(|&b| b);
    section = section
        .put("parameter", Value::text(flow.parameter()))
        .block("flow", lines(&flow))
        .put("identity-at-zero", Value::Bool(identity))
        .put("group-law", Value::Bool(group))
        .put("relations", Value::texts(relations))
        .put("preserved", Value::List(preserved.into_iter().map(Value::Bool).collect()));
    if let Some(start) = &orbit.start {
        let n = d.vars().len();
        let start = parse_point(start, "--start", d.field(), n)?;
        let avoid = match &orbit.avoid {
            Some(s) => parse_point(s, "--avoid", d.field(), n)?,
            None => vec![Scalar::zero(d.field()); n],
        };
        let r = orbit_avoids(&flow, relations, &avoid, &start)?;
        ok &= r.on_variety && r.avoids;
        section = section
            .put("start", Value::texts(&start))
            .put("avoid", Value::texts(&avoid))
            .put("orbit", Value::texts(&r.orbit))
            .put("on-variety", Value::Bool(r.on_variety))
            .put("avoids", Value::Bool(r.avoids))
            .put("common-factor", Value::opt(r.common_factor.map(Value::text)));
    }
    Ok((section, ok))
}

fn parse_relation(src: &str, d: &Derivation) -> Result<Poly, CliError> {
    let parsed = parse_expr(src).map_err(parse_err("--relation"))?;
    parsed.to_poly(d.field(), d.vars()).map_err(parse_err("--relation"))
}

fn lnd_flow(a: LndFlowArgs) -> Outcome {
    let d = read_derivation(&a.file)?;
    let cap = a.cap.unwrap_or_else(|| default_cap(&d));
    let relations = a
        .relations
        .iter()
        .map(|r| parse_relation(r, &d))
        .collect::<Result<Vec<_>, _>>()?;
    let section = Section::new()
        .put("variables", Value::texts(d.vars().iter()))
        .block("derivation", lines(&d));
    let (section, ok) = flow_section(section, &d, cap, &relations, &a.orbit)?;
    Ok((Report::new("lnd-flow").with(section), ok))
}

/// Orders `x2, x10, x1` as `x1, x2, x10`.
fn natural_order(names: &[String]) -> Vars {
    let mut v = names.to_vec();
    v.sort_by_key(|n| {
        let digits = n.trim_end_matches(|c: char| c.is_ascii_digit());
        let suffix: u64 = n[digits.len()..].parse().unwrap_or(0);
        (digits.to_string(), suffix, n.clone())
    });
    v.into_iter().collect()
}

fn lnd_suspend(a: LndSuspendArgs) -> Outcome {
    let parsed = parse_expr(&a.p).map_err(parse_err("--p"))?;
    if parsed.vars.is_empty() {
        return Err(CliError::Input("p must be non-constant".into()));
    }
    let p = parsed
        .to_poly(parsed.field, &natural_order(&parsed.vars))
        .map_err(parse_err("--p"))?;
    let s = build_suspension(&p)?;
    let d = &s.derivation;
    let annihilated = d.apply(&s.relation)?.is_zero();
    let cap = a.cap.unwrap_or_else(|| lnd::default_cap(d));
    let section = Section::new()
        .put("p", Value::text(&p))
        .put("variables", Value::texts(d.vars().iter()))
        .put("relation", Value::text(&s.relation))
        .block("derivation", lines(d))
        .put("annihilates-relation", Value::Bool(annihilated));
    let (section, ok) = flow_section(section, d, cap, std::slice::from_ref(&s.relation), &a.orbit)?;
    Ok((Report::new("lnd-suspend").with(section), ok && annihilated))
}

//! The `fanokit` command line.
//!
//! Every subcommand parses its inputs, calls one operation of
//! `fanokit-core` and prints the result as a JSON document. Inputs are given
//! inline, as a path to a file, or as `-` (or omitted) for stdin.
//!
//! Exit codes: 0 success, 1 parse error, 2 precondition violated, 3 the work
//! estimate exceeds `--budget`.

pub mod json;

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fanokit_core::bounds::{self, CertifyInputs, MorinVariant};
use fanokit_core::fano::{self, BaseVariety, Hypersurface, HypersurfaceFamily, Smoothness};
use fanokit_core::grassmann::{self, MultiIndex, PlaneFrame};
use fanokit_core::poly::{parse_poly, scan_identifiers};
use fanokit_core::{Error, ErrorKind, FieldElement, FieldSpec, Homogeneity, Poly, Result, Ring, DEFAULT_BUDGET};
use num_bigint::BigInt;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::json::bad;

/// Printed with every result computed over a prime field.
pub const FINITE_FIELD_NOTE: &str = "computed over F_p: the unirationality statements assume characteristic zero \
     and an algebraically closed field; finite-field runs check the constructive identities only";

#[derive(Parser, Debug)]
#[command(name = "fanokit", version, about = "Planes on hypersurfaces, Grassmannian maps and unirationality bounds")]
pub struct Cli {
    /// `Q` or `p=<prime>`.
    #[arg(long, global = true, default_value = "Q", value_parser = parse_field)]
    pub field: FieldSpec,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Refuse searches whose work estimate exceeds this.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    pub budget: u128,
    /// Reading of Morin's threshold.
    #[arg(long, global = true, value_enum, default_value_t = Variant::Paper)]
    pub variant: Variant,
    /// Compact JSON (the default).
    #[arg(long, global = true)]
    pub json: bool,
    /// Indented JSON.
    #[arg(long, global = true, overrides_with = "json")]
    pub pretty: bool,
    /// Write the document here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    #[value(alias = "verbatim")]
    Paper,
    #[value(name = "expected_dimension", alias = "expected-dimension")]
    ExpectedDimension,
}

impl From<Variant> for MorinVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Paper => MorinVariant::Verbatim,
            Variant::ExpectedDimension => MorinVariant::ExpectedDimension,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    Random,
}

#[derive(Args, Debug, Clone)]
pub struct KN {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Plücker coordinates of the plane spanned by the rows of a matrix.
    Plucker { input: Option<String> },
    /// Chart block of a Plücker point, normalized so the chart columns are the identity.
    Chart {
        input: Option<String>,
        /// Comma-separated 1-based chart index; the leading index by default.
        #[arg(long)]
        index: Option<String>,
    },
    /// Image of a chart point `{"y", "x"}` under the Semple map.
    Semple { input: Option<String> },
    /// Inverse projection of a Plücker point to a chart point.
    Unproject { input: Option<String> },
    /// Basis of the linear system of the Semple map.
    DknBasis(KN),
    /// Secant stratum of an x-block.
    Stratum { input: Option<String> },
    /// Dimension of the r-th osculating space.
    OscDim {
        #[command(flatten)]
        kn: KN,
        #[arg(long)]
        r: usize,
    },
    /// The same dimension from the rank of the jets of the Plücker coordinates.
    OscRank {
        #[command(flatten)]
        kn: KN,
        #[arg(long)]
        r: usize,
    },
    /// Hyperplane of the planes meeting a centre; a random centre when none is given.
    #[command(alias = "osculate")]
    OscHyperplane {
        input: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Curve of planes joining two frames `{"first", "second"}`, or the standard model.
    Rnc {
        input: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Equations of the Fano scheme of a hypersurface in one chart.
    FanoEqs {
        form: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        chart: Option<String>,
    },
    /// All k-planes of a hypersurface over a prime field.
    FindPlanes {
        form: Option<String>,
        #[arg(long)]
        k: usize,
    },
    /// Whether a plane lies on a hypersurface.
    CheckPlane { form: String, plane: Option<String> },
    /// Whether a hypersurface is smooth along a plane on it.
    SmoothAlong { form: String, plane: Option<String> },
    /// Relative Fano equations of a family, or those of one fibre with `--at`.
    FamilyFano {
        family: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        chart: Option<String>,
        /// Base point as a JSON array or comma-separated list.
        #[arg(long)]
        at: Option<String>,
    },
    /// The polynomial system whose solutions are sections of degree m.
    SectionSystem {
        family: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u32,
    },
    /// Search for a section and verify it fibre by fibre.
    SectionSearch {
        family: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        #[arg(long, default_value_t = 100_000)]
        attempts: u64,
    },
    /// Every numeric bound for the given data.
    Certify(CertifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CertifyArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value_t = 0)]
    pub r: u32,
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    pub t: i64,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub n: Option<BigInt>,
    #[arg(long, default_value_t = 1)]
    pub mbar: u64,
    #[arg(long, default_value_t = 1)]
    pub mu: u64,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, default_value_t = BigInt::from(1))]
    pub base_degree: BigInt,
    #[arg(long, default_value_t = BigInt::from(1))]
    pub fibre_degree: BigInt,
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_budget(s: &str) -> std::result::Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Parse => 1,
        ErrorKind::Precondition => 2,
        ErrorKind::Budget => 3,
    }
}

/// Runs one invocation; `stdin` is read only if an input asks for it.
pub fn run_args<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pretty = cli.pretty;
    let result = execute(&cli, stdin).and_then(|doc| {
        let text = render(&doc, pretty);
        match &cli.output {
            Some(path) => std::fs::write(path, &text)
                .map(|_| String::new())
                .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display()))),
            None => Ok(text),
        }
    });
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let kind = match e.kind() {
                ErrorKind::Parse => "parse",
                ErrorKind::Precondition => "precondition",
                ErrorKind::Budget => "budget",
            };
            let doc = json!({ "error": { "kind": kind, "message": e.to_string() } });
            Outcome { code: exit_code(&e), stdout: render(&doc, pretty), stderr: format!("fanokit: {e}\n") }
        }
    }
}

fn render(doc: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(doc) } else { serde_json::to_string(doc) }
        .expect("JSON values always serialize");
    s.push('\n');
    s
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Inputs<'_> {
    fn text(&mut self, arg: Option<&str>) -> Result<String> {
        match arg {
            None | Some("-") => {
                if self.used {
                    return Err(bad("only one input may come from stdin"));
                }
                self.used = true;
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(|e| bad(format!("cannot read stdin: {e}")))?;
                Ok(s)
            }
            Some(a) if Path::new(a).is_file() => {
                std::fs::read_to_string(a).map_err(|e| bad(format!("cannot read {a}: {e}")))
            }
            Some(a) => Ok(a.to_string()),
        }
    }

    fn json(&mut self, arg: Option<&str>) -> Result<Value> {
        json::parse_document(&self.text(arg)?)
    }
}

/// Reads a form in `x0, ..., xn`, with `n` the largest index that occurs.
pub fn parse_hypersurface(text: &str, field: FieldSpec) -> Result<Hypersurface> {
    let text = text.trim();
    let mut top = 1;
    for id in scan_identifiers(text) {
        match id.strip_prefix('x').and_then(|i| i.parse::<usize>().ok()) {
            Some(i) => top = top.max(i),
            None => {
                return Err(Error::Parse {
                    position: text.find(&id).unwrap_or(0),
                    message: format!("unknown variable `{id}`; use x0, x1, ..."),
                })
            }
        }
    }
    let ring = Ring::indexed("x", top + 1, field);
    Hypersurface::new(parse_poly(text, &ring)?)
}

fn u_index(id: &str) -> Result<usize> {
    id.strip_prefix('u')
        .and_then(|i| i.parse::<usize>().ok())
        .ok_or_else(|| bad(format!("unknown variable `{id}` in a family; use u0, u1, ...")))
}

fn text_field<'v>(v: &'v Value, key: &str) -> Result<&'v str> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| bad(format!("missing string `{key}`")))
}

/// Reads `{"phi", "coeffs": {"i,j,...": form}, "mu"?, "n"?, "r"?, "field"?}`.
/// Keys list the 0-based `x` indices of a monomial; coefficients are forms in
/// `u0, ..., u_{r+1}`.
pub fn parse_family(doc: &Value, default: FieldSpec) -> Result<HypersurfaceFamily> {
    let field = json::field_of(doc, default)?;
    let phi_text = text_field(doc, "phi")?;
    let coeffs = doc.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing `coeffs` object"))?;
    let mut top_u = 1;
    for text in std::iter::once(phi_text).chain(coeffs.values().filter_map(Value::as_str)) {
        for id in scan_identifiers(text) {
            top_u = top_u.max(u_index(&id)?);
        }
    }
    if let Some(r) = doc.get("r").and_then(Value::as_u64) {
        if (r as usize + 1) < top_u {
            return Err(bad(format!("`r` = {r} but u{top_u} occurs")));
        }
        top_u = r as usize + 1;
    }
    let ring = Ring::indexed("u", top_u + 1, field);
    let base = BaseVariety::new(parse_poly(phi_text.trim(), &ring)?)?;
    let mut parsed = BTreeMap::new();
    let mut d = None;
    let mut top_x = 1;
    for (key, value) in coeffs {
        let mut idx = key
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad(format!("invalid monomial key `{key}`"))))
            .collect::<Result<Vec<usize>>>()?;
        idx.sort_unstable();
        if *d.get_or_insert(idx.len()) != idx.len() {
            return Err(bad(format!("monomial key `{key}` has the wrong degree")));
        }
        top_x = top_x.max(*idx.last().unwrap_or(&0));
        let text = value.as_str().ok_or_else(|| bad(format!("coefficient of `{key}` must be a string")))?;
        let c = parse_poly(text.trim(), &ring)?;
        if parsed.insert(idx, c).is_some() {
            return Err(bad(format!("monomial key `{key}` repeated")));
        }
    }
    let d = d.ok_or_else(|| bad("`coeffs` is empty"))?;
    let n = match doc.get("n").and_then(Value::as_u64) {
        Some(n) => n as usize,
        None => top_x,
    };
    let mu = match doc.get("mu").and_then(Value::as_u64) {
        Some(mu) => mu as u32,
        None => match parsed.values().find_map(Poly::is_homogeneous) {
            Some(Homogeneity::Degree(m)) => m,
            _ => return Err(bad("cannot infer `mu`; give it explicitly")),
        },
    };
    HypersurfaceFamily::new(base, n, d as u32, mu, parsed)
}

fn parse_point(text: &str, field: FieldSpec) -> Result<Vec<FieldElement>> {
    let t = text.trim();
    if t.starts_with('[') {
        json::elements_from_json(&json::parse_document(t)?, field)
    } else {
        t.split(',').map(|s| field.parse_element(s.trim())).collect()
    }
}

fn chart_or_initial(chart: Option<&str>, k: usize, n: usize) -> Result<MultiIndex> {
    match chart {
        Some(c) => {
            let idx = MultiIndex::parse(c, n)?;
            if idx.len() != k + 1 {
                return Err(bad(format!("chart `{c}` must have {} entries", k + 1)));
            }
            Ok(idx)
        }
        None => Ok(MultiIndex::initial(k + 1, n)),
    }
}

fn fano_system_json(sys: &fano::FanoSystem) -> Value {
    json!({
        "k": sys.k(),
        "chart": sys.chart().to_string(),
        "variables": sys.ring().vars(),
        "chart_variable_count": sys.chart_var_count(),
        "s_monomials": sys.s_monomials(),
        "equations": json::polys_to_json(sys.equations()),
    })
}

fn smoothness_json(s: &Smoothness) -> Value {
    match s {
        Smoothness::Smooth => json!({ "verdict": "smooth" }),
        Smoothness::SingularAt(p) => json!({ "verdict": "singular_at", "point": json::elements_to_json(p) }),
        Smoothness::SingularAtRootsOf(f) => json!({ "verdict": "singular_at_roots_of", "form": f.to_string() }),
        Smoothness::Inconclusive(why) => json!({ "verdict": "inconclusive", "reason": why }),
    }
}

fn finish(field: FieldSpec, body: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("field".into(), json::field_to_json(field));
    if let Value::Object(m) = body {
        doc.extend(m);
    }
    if field.is_finite() {
        doc.insert("note".into(), json!(FINITE_FIELD_NOTE));
    }
    Value::Object(doc)
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Value> {
    let mut io = Inputs { stdin, used: false };
    let field = cli.field;
    let body = match &cli.command {
        Command::Plucker { input } => {
            let m = json::matrix_from_json(&io.json(input.as_deref())?, field)?;
            let p = grassmann::plucker_from_matrix(&PlaneFrame::new(m)?)?;
            return Ok(finish(p.field(), json::plucker_to_json(&p)));
        }
        Command::Chart { input, index } => {
            let p = json::plane_from_json(&io.json(input.as_deref())?, field)?;
            let idx = match index {
                Some(s) => MultiIndex::parse(s, p.n())?,
                None => p.leading_index(),
            };
            let block = grassmann::chart_normalize(&p, &idx)?;
            return Ok(finish(p.field(), json!({ "index": idx.to_string(), "block": json::matrix_to_json(&block) })));
        }
        Command::Semple { input } => {
            let c = json::chart_point_from_json(&io.json(input.as_deref())?, field)?;
            let p = grassmann::semple_map(&c)?;
            return Ok(finish(p.field(), json::plucker_to_json(&p)));
        }
        Command::Unproject { input } => {
            let p = json::plucker_from_json(&io.json(input.as_deref())?, field)?;
            let c = grassmann::inverse_projection(&p)?;
            return Ok(finish(c.field(), json::chart_point_to_json(&c)));
        }
        Command::DknBasis(KN { k, n }) => {
            let basis = grassmann::basis_d_kn(*k, *n, field)?;
            let ring = grassmann::semple_ring(*k, *n, field);
            json!({ "k": k, "n": n, "variables": ring.vars(), "count": basis.len(), "basis": json::polys_to_json(&basis) })
        }
        Command::Stratum { input } => {
            let x = json::matrix_from_json(&io.json(input.as_deref())?, field)?;
            let s = grassmann::secant_stratum(&x)?;
            return Ok(finish(x.field(), json!({ "stratum": s, "rank": x.rank() })));
        }
        Command::OscDim { kn: KN { k, n }, r } => {
            json!({ "k": k, "n": n, "r": r, "dimension": grassmann::osculating_dimension(*k, *n, *r)? })
        }
        Command::OscRank { kn: KN { k, n }, r } => {
            json!({ "k": k, "n": n, "r": r, "rank": grassmann::osculating_rank_empirical(*k, *n, *r)? })
        }
        Command::OscHyperplane { input, k, n } => match (input, k, n) {
            (Some(_), _, _) | (None, None, None) => {
                let m = json::matrix_from_json(&io.json(input.as_deref())?, field)?;
                let frame = PlaneFrame::new(m)?;
                let h = grassmann::osculating_hyperplane(&frame)?;
                return Ok(finish(
                    frame.field(),
                    json!({ "centre": json::matrix_to_json(frame.matrix()), "hyperplane": json::dual_to_json(&h, frame.field()) }),
                ));
            }
            (None, Some(k), Some(n)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let (frame, h) = grassmann::choose_avoiding_centre(*k, *n, field, &[], &mut rng, 1000)?;
                json!({
                    "seed": cli.seed,
                    "centre": json::matrix_to_json(frame.matrix()),
                    "hyperplane": json::dual_to_json(&h, field),
                })
            }
            _ => return Err(bad("give a centre matrix, or both --k and --n for a random one")),
        },
        Command::Rnc { input, k, r } => {
            let (f0, f1) = match (input, k) {
                (None, Some(k)) => grassmann::rnc_general_model(*k, r.unwrap_or(*k), field)?,
                _ => {
                    let doc = io.json(input.as_deref())?;
                    let get = |key: &str| -> Result<PlaneFrame> {
                        let m = doc.get(key).ok_or_else(|| bad(format!("missing `{key}` frame")))?;
                        PlaneFrame::new(json::matrix_from_json(m, json::field_of(&doc, field)?)?)
                    };
                    (get("first")?, get("second")?)
                }
            };
            let curve = grassmann::rnc_through(&f0, &f1)?;
            let f = f0.field();
            let indices: Vec<String> =
                MultiIndex::all(curve.k() + 1, curve.n()).iter().map(|i| i.to_string()).collect();
            return Ok(finish(
                f,
                json!({
                    "k": curve.k(),
                    "n": curve.n(),
                    "degree": curve.degree(),
                    "span_rank": curve.span_rank(),
                    "first": json::matrix_to_json(f0.matrix()),
                    "second": json::matrix_to_json(f1.matrix()),
                    "indices": indices,
                    "coordinate_forms": json::polys_to_json(&curve.coordinate_forms()),
                }),
            ));
        }
        Command::FanoEqs { form, k, chart } => {
            let h = parse_hypersurface(&io.text(form.as_deref())?, field)?;
            let idx = chart_or_initial(chart.as_deref(), *k, h.n())?;
            let sys = fano::fano_equations(&h, *k, &idx)?;
            let mut body = json!({ "n": h.n(), "d": h.d(), "form": h.form().to_string() });
            body.as_object_mut().expect("object").extend(obj(fano_system_json(&sys)));
            body
        }
        Command::FindPlanes { form, k } => {
            let h = parse_hypersurface(&io.text(form.as_deref())?, field)?;
            let planes = fano::enumerate_planes(&h, *k, cli.budget)?;
            let list: Vec<Value> = planes.iter().map(json::plucker_to_json).collect();
            json!({
                "n": h.n(),
                "d": h.d(),
                "k": k,
                "form": h.form().to_string(),
                "count": planes.len(),
                "planes": list,
            })
        }
        Command::CheckPlane { form, plane } => {
            let h = parse_hypersurface(&io.text(Some(form))?, field)?;
            let p = json::plane_from_json(&io.json(plane.as_deref())?, field)?;
            json!({ "contains": fano::contains_plane(&h, &p)?, "plane": json::plucker_to_json(&p) })
        }
        Command::SmoothAlong { form, plane } => {
            let h = parse_hypersurface(&io.text(Some(form))?, field)?;
            let p = json::plane_from_json(&io.json(plane.as_deref())?, field)?;
            let s = fano::smooth_along_plane(&h, &p)?;
            let mut body = smoothness_json(&s);
            body.as_object_mut().expect("object").insert("plane".into(), json::plucker_to_json(&p));
            body
        }
        Command::FamilyFano { family, k, chart, at } => {
            let fam = parse_family(&io.json(family.as_deref())?, field)?;
            let idx = chart_or_initial(chart.as_deref(), *k, fam.n())?;
            let sys = fano::relative_fano_equations(&fam, *k, &idx)?;
            let mut body = json!({ "n": fam.n(), "d": fam.d(), "r": fam.base().r(), "mu": fam.mu() });
            let b = body.as_object_mut().expect("object");
            match at {
                None => b.extend(obj(fano_system_json(&sys))),
                Some(at) => {
                    let w = parse_point(at, fam.field())?;
                    let fibre = fano::fiber_at(&fam, &w)?;
                    b.insert("base_point".into(), json::elements_to_json(&w));
                    b.insert("fibre".into(), json!(fibre.form().to_string()));
                    b.extend(obj(fano_system_json(&sys.specialize(&w)?)));
                }
            }
            return Ok(finish(fam.field(), body));
        }
        Command::SectionSystem { family, k, m } => {
            let fam = parse_family(&io.json(family.as_deref())?, field)?;
            let sys = fano::section_system(&fam, *k, *m)?;
            return Ok(finish(fam.field(), section_system_json(&sys)));
        }
        Command::SectionSearch { family, k, m, method, attempts } => {
            let fam = parse_family(&io.json(family.as_deref())?, field)?;
            let sys = fano::section_system(&fam, *k, *m)?;
            let found = match method {
                Method::Brute => fano::solve_section_brute(&sys, cli.budget)?,
                Method::Random => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    fano::solve_section_random(&sys, &mut rng, *attempts)?
                }
            };
            let mut body = json!({
                "k": k,
                "m": m,
                "method": format!("{method:?}").to_lowercase(),
                "change": json::elements_to_json(sys.change()),
                "lambda_variables": sys.lambda_ring().vars(),
            });
            let b = body.as_object_mut().expect("object");
            if matches!(method, Method::Random) {
                b.insert("seed".into(), json!(cli.seed));
            }
            b.insert("found".into(), json!(found.is_some()));
            if let Some(lambda) = found {
                let v = fano::verify_section(&sys, &lambda)?;
                b.insert("lambda".into(), json::elements_to_json(&lambda));
                b.insert("section".into(), json::polys_to_json(&sys.section_forms(&lambda)?));
                b.insert(
                    "verification".into(),
                    json!({
                        "passed": v.passed(),
                        "complete": v.complete(),
                        "base_points_fp": v.base_points_fp,
                        "base_points_fp2": v.base_points_fp2,
                        "checked_fp": v.checked_fp,
                        "checked_fp2": v.checked_fp2,
                        "extended": v.extended,
                        "skipped": v.skipped,
                        "failures": v.failures,
                    }),
                );
            }
            return Ok(finish(fam.field(), body));
        }
        Command::Certify(a) => return certify_json(a, cli.variant).map(|v| finish(field, v)),
    };
    Ok(finish(field, body))
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn section_system_json(sys: &fano::SectionSystem) -> Value {
    let c = sys.counts();
    json!({
        "k": sys.k(),
        "m": sys.m(),
        "change": json::elements_to_json(sys.change()),
        "psi": sys.psi(),
        "lambda_variables": sys.lambda_ring().vars(),
        "forms_count": sys.forms_count(),
        "counts": {
            "M": c.big_m.to_string(),
            "lambda_count": c.lambda_count.to_string(),
            "alpha_count": c.alpha_count.to_string(),
            "equation_count": c.equation_count.to_string(),
            "underdetermined": c.underdetermined,
        },
        "equation_count": sys.equations().len(),
        "equations": json::polys_to_json(sys.equations()),
    })
}

/// The certificate bundle. Only the Morin reading chosen by `--variant` is
/// kept.
pub fn certify_json(a: &CertifyArgs, variant: Variant) -> Result<Value> {
    let inputs = CertifyInputs {
        n: a.n.clone(),
        d: a.d,
        r: a.r,
        t: a.t,
        k: a.k,
        mbar: a.mbar,
        mu: a.mu,
        m: a.m,
        base_degree: a.base_degree.clone(),
        fibre_degree: a.fibre_degree.clone(),
    };
    let variant = MorinVariant::from(variant);
    let certs: Vec<_> = bounds::certify(&inputs)?
        .into_iter()
        .filter(|c| {
            c.name != "morin_threshold"
                || matches!(c.witness_value("variant"), Some(bounds::WitnessValue::Text(t)) if t == variant.name())
        })
        .collect();
    let family = bounds::family_unirationality_bound(a.d, a.r, a.t)?;
    Ok(json!({
        "morin_variant": variant.name(),
        "family_unirationality_bound": family.to_string(),
        "certificates": certs.iter().map(json::certificate_to_json).collect::<Vec<_>>(),
    }))
}

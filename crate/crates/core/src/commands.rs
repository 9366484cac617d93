//! The operations behind the `kapollo` binary. Each returns the text to
//! print and whether every check passed, so the binary only maps results to
//! exit codes.

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arrangement::{enumerate_arrangement, ghost_chain, ArrangementQuery};
use crate::circle::OrientedCircle;
use crate::clusters::{self, Cluster, ClusterFlavor, ClusterSpaceSpec};
use crate::curvlab::{self, conjecture_modulus, primitivity, residue_census, table_membership};
use crate::geom::Window;
use crate::groups::{self, Check, GroupRegistryEntry};
use crate::io::{self, SCHEMA_VERSION};
use crate::mat;
use crate::packing::{generate_packing, Packing, PackingKind, PackingOptions, PackingSource};
use crate::qint::{rat, Disc};
use crate::svg::{self, Item, RenderSpec, Style};

#[derive(Debug, Error)]
pub enum CmdError {
    /// Bad flags or unreadable input; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A computation that could not finish; exit code 1.
    #[error("{0}")]
    Failed(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Usage(_) => 2,
            CmdError::Failed(_) => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, passed: true }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Jsonl,
    Svg,
}

fn disc_arg(d: i64) -> Result<Disc, CmdError> {
    Disc::new(d).map_err(|e| CmdError::Usage(format!("invalid discriminant {d}: {e}")))
}

/// Run `f` on a pool of `workers` threads (the global pool when None).
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CmdError> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(CmdError::Usage("--workers must be positive".into())),
        Some(n) => {
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CmdError::Failed(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn parse_rat(s: &str) -> Result<BigRational, CmdError> {
    let bad = || CmdError::Usage(format!("not a rational number: {s}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `re0,re1,t0,t1` is the rectangle [re0, re1] × [t0·η/2, t1·η/2].
pub fn parse_window(disc: &Disc, s: &str) -> Result<Window, CmdError> {
    let parts: Vec<BigRational> = s.split(',').map(parse_rat).collect::<Result<_, _>>()?;
    if parts.len() != 4 {
        return Err(CmdError::Usage("window needs four numbers re0,re1,t0,t1".into()));
    }
    let [a, b, c, d]: [BigRational; 4] = parts.try_into().expect("four parts");
    Window::rectangle(disc, a, b, c, d).map_err(|e| CmdError::Usage(format!("bad window: {e}")))
}

fn unoriented_items(circles: &[OrientedCircle], style: Style) -> Vec<Item> {
    let set: BTreeSet<OrientedCircle> = circles
        .iter()
        .map(|c| if c.n.is_negative() { c.reversed() } else { c.without_witness() })
        .map(|c| c.without_witness())
        .collect();
    set.into_iter().map(|circle| Item { circle, style }).collect()
}

#[derive(Debug, Clone)]
pub struct ArrangeArgs {
    pub disc: i64,
    pub max_curv: u64,
    pub window: Option<String>,
    pub out: OutFormat,
    pub ghosts: bool,
    pub labels: bool,
}

pub fn arrange(a: &ArrangeArgs) -> Result<Outcome, CmdError> {
    let disc = disc_arg(a.disc)?;
    let window = match &a.window {
        Some(w) => parse_window(&disc, w)?,
        None => Window::fundamental(&disc),
    };
    if a.ghosts && disc.delta() != -15 {
        return Err(CmdError::Usage("--ghosts is only available for --disc -15".into()));
    }
    let q = ArrangementQuery { disc, max_reduced_curv: a.max_curv, window: window.clone() };
    let circles = enumerate_arrangement(&q);
    match a.out {
        OutFormat::Jsonl => Ok(Outcome::ok(io::write_jsonl(&circles, None))),
        OutFormat::Svg => {
            let mut spec =
                RenderSpec::around(disc, &window.vertices, rat(1, 20)).map_err(|e| CmdError::Usage(e.to_string()))?;
            spec.outline = window.vertices.clone();
            spec.labels = a.labels;
            let mut items = Vec::new();
            if a.ghosts {
                let reach = spec.re1.abs().max(spec.re0.abs()).ceil().to_integer().to_u32().unwrap_or(1) + 1;
                let chain = ghost_chain(&disc, reach).map_err(|e| CmdError::Failed(e.to_string()))?;
                // the chain starts at 0; shift it left as well
                let back =
                    crate::circle::MobiusMap::translation(disc, disc.one().scale(&BigInt::from(-(reach as i64))));
                items.extend(chain.iter().map(|c| Item { circle: c.apply(&back), style: Style::Ghost }));
                items.extend(chain.into_iter().map(|circle| Item { circle, style: Style::Ghost }));
            }
            items.extend(unoriented_items(&circles, Style::Circle));
            Ok(Outcome::ok(svg::render(&spec, &items)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseArg {
    Fundamental,
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct PackArgs {
    pub disc: i64,
    pub base: BaseArg,
    pub kind: PackingKind,
    pub max_curv: u64,
    pub out: OutFormat,
    pub labels: bool,
    pub saturate: bool,
}

/// A base file is a JSON object
/// `{"flavor": "descartes" | "cube" | "tent7" | "tent11" | "general-k",
///   "circles": [circle records], "period": p}`
/// with the circles in cluster order; `period` (optional) is an integer
/// translation preserving the packing.
pub fn load_base(disc: Disc, path: &PathBuf) -> Result<PackingSource, CmdError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CmdError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CmdError::Usage(format!("{}: {e}", path.display())))?;
    let flavor = match v.get("flavor").and_then(Value::as_str) {
        Some("descartes") => ClusterFlavor::Descartes,
        Some("cube") => ClusterFlavor::Cube,
        Some("tent7") => ClusterFlavor::Tent7,
        Some("tent11") => ClusterFlavor::Tent11,
        Some("general-k") => ClusterFlavor::GeneralK,
        other => return Err(CmdError::Usage(format!("unknown cluster flavor {other:?}"))),
    };
    let circles = v
        .get("circles")
        .and_then(Value::as_array)
        .ok_or_else(|| CmdError::Usage("base file needs a circles array".into()))?
        .iter()
        .enumerate()
        .map(|(i, c)| io::CircleRecord::from_line(&c.to_string(), i + 1).map(|r| r.circle))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    if circles.iter().any(|c| c.disc != disc) {
        return Err(CmdError::Usage("base circles belong to another field".into()));
    }
    let period = match v.get("period") {
        None | Some(Value::Null) => None,
        Some(p) => Some(
            p.as_i64().filter(|&p| p > 0).ok_or_else(|| CmdError::Usage("period must be a positive integer".into()))?,
        ),
    };
    let spec = ClusterSpaceSpec::for_flavor(flavor, disc);
    let base = Cluster::from_circles(&spec, &circles)
        .map_err(|e| CmdError::Usage(format!("base is not a {} cluster: {e}", flavor.name())))?;
    let gens = clusters::generators(flavor, &disc)
        .iter()
        .map(|g| mat::to_integer(g).ok_or_else(|| CmdError::Failed("generator is not integral".into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PackingSource::new("file", spec, gens, base, period))
}

fn pack_view(p: &Packing) -> Result<RenderSpec, CmdError> {
    let disc = p.disc;
    let eta = (disc.abs() as f64).sqrt();
    let mut lo_re = f64::INFINITY;
    let mut hi_re = f64::NEG_INFINITY;
    let mut lo_im = if p.period.is_some() { 0.0 } else { f64::INFINITY };
    let mut hi_im = f64::NEG_INFINITY;
    for c in &p.circles {
        if let Some(z) = c.center() {
            let (x, y) = z.to_complex_f64(&disc);
            let r = 1.0 / (c.n.abs().to_f64().unwrap_or(f64::INFINITY) * eta);
            lo_re = lo_re.min(x - r);
            hi_re = hi_re.max(x + r);
            lo_im = lo_im.min(y - r);
            hi_im = hi_im.max(y + r);
        }
    }
    if p.period.is_some() {
        lo_re = 0.0;
        hi_re = 1.0;
    }
    if !(lo_re < hi_re && lo_im < hi_im) {
        return Err(CmdError::Failed("packing has no bounded circles to frame".into()));
    }
    let pad = 0.03 * (hi_re - lo_re).max(hi_im - lo_im);
    let q = |x: f64| BigRational::from_float(x).expect("finite");
    RenderSpec::new(disc, (q(lo_re - pad), q(hi_re + pad)), (q((lo_im - pad) / eta), q((hi_im + pad) / eta)))
        .map_err(|e| CmdError::Failed(e.to_string()))
}

pub fn pack(a: &PackArgs) -> Result<Outcome, CmdError> {
    let disc = disc_arg(a.disc)?;
    let src = match &a.base {
        BaseArg::Fundamental => PackingSource::fundamental(disc, a.kind),
        BaseArg::File(p) => load_base(disc, p)?,
    };
    let opts = PackingOptions { saturate: a.saturate, ..PackingOptions::new(a.max_curv) };
    let p = generate_packing(&src, &opts).map_err(|e| CmdError::Failed(e.to_string()))?;
    match a.out {
        OutFormat::Jsonl => Ok(Outcome::ok(io::write_jsonl(&p.circles, Some(&p.id)))),
        OutFormat::Svg => {
            let mut spec = pack_view(&p)?;
            spec.labels = a.labels;
            spec.periodic = p.period.is_some();
            let items: Vec<Item> =
                p.circles.iter().map(|c| Item { circle: c.without_witness(), style: Style::Circle }).collect();
            Ok(Outcome::ok(svg::render(&spec, &items)))
        }
    }
}

fn check_json(c: &Check, informational: bool) -> Value {
    json!({ "name": c.name, "passed": c.passed, "detail": c.detail, "informational": informational })
}

/// Checks that do not count towards the verdict: the sufficiency audit's
/// automorphism item for the general K-cluster construction at fields where
/// it is not asserted (Δ > −15).
fn informational(e: &GroupRegistryEntry, c: &Check) -> bool {
    e.flavor == ClusterFlavor::GeneralK && e.disc.delta() > -15 && c.name.starts_with("(v)")
}

#[derive(Debug, Clone)]
pub struct VerifyArgs {
    pub discs: Vec<i64>,
    pub word_len: usize,
    pub words: usize,
    pub audit_depth: usize,
    pub invariance_bound: u64,
    pub seed: u64,
}

impl VerifyArgs {
    pub fn new(discs: Vec<i64>) -> VerifyArgs {
        VerifyArgs { discs, word_len: 8, words: 100, audit_depth: 6, invariance_bound: 30, seed: 7 }
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, CmdError> {
    let mut all = true;
    let mut reports = Vec::new();
    for &d in &a.discs {
        let disc = disc_arg(d)?;
        if !groups::SUPPORTED.contains(&d) {
            return Err(CmdError::Usage(format!("no group registry for Δ = {d}; supported: {:?}", groups::SUPPORTED)));
        }
        let mut field_checks: Vec<Value> = Vec::new();
        for c in groups::tabulated_gram_checks(disc).into_iter().chain([groups::e2_orbit_check(disc, 4)]) {
            all &= c.passed;
            field_checks.push(check_json(&c, false));
        }
        let mut entries = Vec::new();
        for e in groups::registry_entries(disc) {
            let mut checks = groups::check_presentation(&e, a.word_len);
            checks.extend(groups::check_correspondence(&e, a.words, a.word_len, a.seed));
            checks.extend(groups::sufficiency_audit(&e, a.audit_depth));
            checks.push(groups::packing_invariance(&e, a.invariance_bound));
            let mut out = Vec::new();
            for c in &checks {
                let info = informational(&e, c);
                if !info {
                    all &= c.passed;
                }
                out.push(check_json(c, info));
            }
            entries.push(json!({ "name": e.name, "flavor": e.flavor.name(), "checks": out }));
        }
        reports.push(json!({ "disc": d, "checks": field_checks, "entries": entries }));
    }
    let v = json!({ "schema_version": SCHEMA_VERSION, "command": "verify", "passed": all, "discs": reports });
    Ok(Outcome { text: pretty(&v), passed: all })
}

#[derive(Debug, Clone)]
pub struct ResiduesArgs {
    pub disc: i64,
    pub modulus: Option<u64>,
    pub bound: u64,
    pub kinds: Vec<PackingKind>,
    pub csv: bool,
}

/// Census of one fundamental packing: residues at B (taken from a run at 2B,
/// which also gives the saturation check), table membership, primitivity.
pub fn residue_study(
    disc: Disc,
    kind: PackingKind,
    modulus: u64,
    bound: u64,
) -> Result<(Value, bool, curvlab::ResidueReport), CmdError> {
    let fail = |e: String| CmdError::Failed(e);
    let b2 = bound.saturating_mul(2);
    let p = generate_packing(&PackingSource::fundamental(disc, kind), &PackingOptions::new(b2))
        .map_err(|e| fail(e.to_string()))?;
    let bb = BigInt::from(bound);
    let at_b: Vec<OrientedCircle> = p.circles.iter().filter(|c| c.n.abs() <= bb).cloned().collect();
    let report = residue_census(&at_b, modulus, &p.id, bound).map_err(|e| fail(e.to_string()))?;
    let report2 = residue_census(&p.circles, modulus, &p.id, b2).map_err(|e| fail(e.to_string()))?;
    let stable = report.observed == report2.observed;
    // resolve both table rows and test unobstructed primes at 2 and 3
    let m_table = conjecture_modulus(&disc).m.lcm(&6);
    let table = residue_census(&at_b, m_table, &p.id, bound).map_err(|e| fail(e.to_string()))?;
    let member = table_membership(&disc, m_table, &table.observed).map_err(|e| fail(e.to_string()))?;
    let prim = primitivity(&at_b, 300).map_err(|e| fail(e.to_string()))?;
    let passed = stable && member && prim.gcd == BigInt::from(1) && prim.identity_failures == 0;
    let mut j = report.to_json();
    j["circles"] = json!(at_b.len());
    j["saturation"] = json!({ "bound": b2, "observed": report2.observed.iter().collect::<Vec<_>>(), "stable": stable });
    j["table"] = json!({ "modulus": m_table, "observed": table.observed.iter().collect::<Vec<_>>(), "member": member });
    j["primitivity"] = json!({ "gcd": prim.gcd.to_string(), "pairs_checked": prim.pairs_checked, "identity_failures": prim.identity_failures });
    j["passed"] = json!(passed);
    Ok((j, passed, report))
}

pub fn residues(a: &ResiduesArgs) -> Result<Outcome, CmdError> {
    let disc = disc_arg(a.disc)?;
    let cm = conjecture_modulus(&disc);
    let modulus = a.modulus.unwrap_or(cm.m);
    if modulus == 0 {
        return Err(CmdError::Usage("--modulus must be positive".into()));
    }
    let mut all = true;
    let mut packings = Vec::new();
    let mut csv = String::new();
    for &kind in &a.kinds {
        let (j, passed, report) = residue_study(disc, kind, modulus, a.bound)?;
        all &= passed;
        packings.push(j);
        if a.csv {
            csv.push_str(&format!("# {}\n", report.packing_id));
            csv.push_str(&report.to_csv());
        }
    }
    if a.csv {
        return Ok(Outcome { text: csv, passed: all });
    }
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "residues",
        "disc": disc.delta(),
        "conjecture_modulus": { "m": cm.m, "v2": cm.v2, "v3": cm.v3 },
        "packings": packings,
        "passed": all,
    });
    Ok(Outcome { text: pretty(&v), passed: all })
}

pub fn topograph(depth: usize) -> Result<Outcome, CmdError> {
    let g = groups::topograph_bfs(depth);
    let (gamma, _) = groups::topograph_generators();
    let prod = groups::mul2(&groups::mul2(&gamma[0], &gamma[1]), &gamma[2]);
    let borel = groups::proj_eq(&prod, &[[1, 3], [0, 1]]);
    let tree = g.is_tree();
    let valence_ok = (0..g.vertices.len()).all(|v| {
        let want = if depth == 0 {
            0
        } else if g.depth[v] < depth {
            3
        } else {
            1
        };
        g.degree(v) == want
    });
    let vertices: Vec<Value> = g
        .vertices
        .iter()
        .zip(&g.depth)
        .map(|(s, d)| json!({ "points": s.points().iter().map(|p| p.to_string()).collect::<Vec<_>>(), "depth": d }))
        .collect();
    let passed = borel && tree && valence_ok;
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "topograph",
        "depth": depth,
        "gamma_product": prod,
        "gamma_product_is_borel": borel,
        "is_tree": tree,
        "valence_ok": valence_ok,
        "vertices": vertices,
        "edges": g.edges,
        "passed": passed,
    });
    Ok(Outcome { text: pretty(&v), passed })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

//! Catalog of worked surfaces with machine-checkable claims.
//!
//! Entries ship as JSON. Each names one or more surfaces, either as a blow-up
//! sequence or as a contraction of another surface, and lists claims as
//! `{op, ...}` checks with expected values. Parametric entries are expanded by
//! a generator that supplies extra surfaces and `{name}` template variables.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::blowup::{BlowUpSequence, Center, Contraction, CurveAssignment};
use crate::classify::{
    halphen_k3_predicate, is_k3_type, jacobian_bound_check, log_enriques_shape, match_rational_case,
    minimality_check, terminal_shape, Component, MinimalSurface, RationalTypeInput, Role,
};
use crate::config::{recognize_fiber, CurveConfiguration, FiberType, Multiset};
use crate::cremona::{noether_reduce, quintic_transform, MultiplicityVector};
use crate::error::{Error, Result};
use crate::lattice::{BaseKind, DivisorClass, IntersectionLattice};
use crate::negcurves::basic_surface_check;

const SOURCES: [&str; 7] = [
    include_str!("../catalog/ten-nodal-sextic.json"),
    include_str!("../catalog/quintic-and-line.json"),
    include_str!("../catalog/halphen-i0star.json"),
    include_str!("../catalog/cubics-through-six-points.json"),
    include_str!("../catalog/two-i0star-fibres.json"),
    include_str!("../catalog/hexagon-pencil.json"),
    include_str!("../catalog/fibre-chains-on-fb.json"),
];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSpec {
    Sequence { sequence: BlowUpSequence },
    Contracted { from: String, contract: Vec<String> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub description: String,
    /// Where the expected value comes from: a worked example, a direct computation or a definition.
    pub origin: String,
    pub check: Value,
    pub expected: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub title: String,
    pub description: String,
    #[serde(default)]
    pub generator: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    #[serde(default)]
    pub surfaces: BTreeMap<String, SurfaceSpec>,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub description: String,
    pub origin: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub claims: Vec<ClaimResult>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

/// All catalog entries, parsed once.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        SOURCES.iter().map(|s| serde_json::from_str(s).expect("embedded catalog entry is valid JSON")).collect()
    })
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    catalog().iter().find(|e| e.name == name).ok_or_else(|| {
        let names: Vec<_> = catalog().iter().map(|e| e.name.as_str()).collect();
        Error::UnknownLabel(format!("{name} (known entries: {})", names.join(", ")))
    })
}

/// A surface given by a blow-up sequence, possibly followed by blow-downs.
#[derive(Debug, Clone)]
pub struct Surface {
    seq: Arc<BlowUpSequence>,
    contraction: Option<Contraction>,
}

impl Surface {
    pub fn from_sequence(seq: BlowUpSequence) -> Self {
        Surface { seq: Arc::new(seq), contraction: None }
    }

    pub fn sequence(&self) -> &BlowUpSequence {
        &self.seq
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        self.seq.lattice()
    }

    /// Blow down each expression in turn; expressions are evaluated on the original sequence.
    pub fn contract(&self, exprs: &[String]) -> Result<Self> {
        let mut c = self.contraction.clone().unwrap_or_else(|| Contraction::new(self.seq.lattice()));
        for e in exprs {
            c.contract(&self.seq.eval(e)?)?;
        }
        Ok(Surface { seq: Arc::clone(&self.seq), contraction: Some(c) })
    }

    /// Class of an expression, as the pullback of its image when blow-downs are present.
    pub fn eval(&self, text: &str) -> Result<DivisorClass> {
        let c = self.seq.eval(text)?;
        match &self.contraction {
            Some(con) => con.image(&c),
            None => Ok(c),
        }
    }

    pub fn k_squared(&self) -> Result<i64> {
        match &self.contraction {
            Some(con) => con.k_squared(),
            None => Ok(self.seq.k_squared()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct ComponentSpec {
    label: String,
    class: String,
    #[serde(default = "one")]
    mult: i64,
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
enum Check {
    KSquared { surface: String },
    SelfIntersection { surface: String, class: String },
    Dot { surface: String, a: String, b: String },
    Genus { surface: String, class: String },
    Identity { surface: String, lhs: String, rhs: String },
    Identities { surface: String, pairs: Vec<(String, String)> },
    SelfIntersections { surface: String, items: Vec<(String, i64)> },
    PairwiseDisjoint { surface: String, classes: Vec<String> },
    MinusOneClasses { surface: String, classes: Vec<String> },
    FiberType { surface: String, components: Vec<ComponentSpec> },
    K3Type { surface: String, components: Vec<ComponentSpec> },
    TerminalShape { surface: String, components: Vec<ComponentSpec> },
    LogEnriques { surface: String, components: Vec<ComponentSpec> },
    Minimality { surface: String, components: Vec<ComponentSpec>, e: String },
    BasicSurface { surface: String, classes: Vec<String> },
    JacobianBound { fiber: String, g: Vec<i64> },
    HalphenK3 { fibers: Vec<String> },
    MatchCase { input: RationalTypeInput },
    GenusProxy { vector: String },
    NoetherReduce { vector: String },
    Quintic { vector: String, indices: [usize; 6] },
}

fn surface<'a>(surfaces: &'a BTreeMap<String, Surface>, name: &str) -> Result<&'a Surface> {
    surfaces.get(name).ok_or_else(|| Error::UnknownLabel(format!("surface {name}")))
}

fn configuration(s: &Surface, comps: &[ComponentSpec]) -> Result<(CurveConfiguration, Multiset)> {
    let classes = comps.iter().map(|c| s.eval(&c.class)).collect::<Result<Vec<_>>>()?;
    let items: Vec<_> = comps.iter().zip(&classes).map(|(c, d)| (c.label.as_str(), d, c.mult)).collect();
    let cfg = CurveConfiguration::from_classes(&items)?;
    let d = comps.iter().map(|c| (c.label.clone(), c.mult)).collect();
    Ok((cfg, d))
}

fn fiber(name: &str) -> Result<FiberType> {
    name.parse()
}

fn run_check(surfaces: &BTreeMap<String, Surface>, check: Check) -> Result<Value> {
    use Check::*;
    Ok(match check {
        KSquared { surface: s } => json!(surface(surfaces, &s)?.k_squared()?),
        SelfIntersection { surface: s, class } => json!(surface(surfaces, &s)?.eval(&class)?.self_intersection()?),
        Dot { surface: s, a, b } => {
            let s = surface(surfaces, &s)?;
            json!(s.eval(&a)?.dot(&s.eval(&b)?)?)
        }
        Genus { surface: s, class } => json!(surface(surfaces, &s)?.eval(&class)?.arithmetic_genus()?),
        Identity { surface: s, lhs, rhs } => {
            let s = surface(surfaces, &s)?;
            json!(s.eval(&lhs)? == s.eval(&rhs)?)
        }
        Identities { surface: s, pairs } => {
            let s = surface(surfaces, &s)?;
            let mut ok = true;
            for (l, r) in pairs {
                ok &= s.eval(&l)? == s.eval(&r)?;
            }
            json!(ok)
        }
        SelfIntersections { surface: s, items } => {
            let s = surface(surfaces, &s)?;
            let mut ok = true;
            for (c, want) in items {
                ok &= s.eval(&c)?.self_intersection()? == want;
            }
            json!(ok)
        }
        PairwiseDisjoint { surface: s, classes } => {
            let s = surface(surfaces, &s)?;
            let cs = classes.iter().map(|c| s.eval(c)).collect::<Result<Vec<_>>>()?;
            let mut ok = true;
            for (i, a) in cs.iter().enumerate() {
                for b in &cs[..i] {
                    ok &= a.dot(b)? == 0;
                }
            }
            json!(ok)
        }
        MinusOneClasses { surface: s, classes } => {
            let s = surface(surfaces, &s)?;
            let k = s.eval("K")?;
            let mut ok = true;
            for c in &classes {
                let d = s.eval(c)?;
                ok &= d.self_intersection()? == -1 && d.dot(&k)? == -1;
            }
            json!(ok)
        }
        FiberType { surface: s, components } => {
            let (cfg, _) = configuration(surface(surfaces, &s)?, &components)?;
            match recognize_fiber(&cfg) {
                Some(t) => json!(t.to_string()),
                None => Value::Null,
            }
        }
        K3Type { surface: s, components } => json!(is_k3_type(&configuration(surface(surfaces, &s)?, &components)?.0).k3_type),
        TerminalShape { surface: s, components } => {
            json!(terminal_shape(&configuration(surface(surfaces, &s)?, &components)?.0))
        }
        LogEnriques { surface: s, components } => {
            json!(log_enriques_shape(&configuration(surface(surfaces, &s)?, &components)?.0).log_enriques)
        }
        Minimality { surface: s, mut components, e } => {
            components.push(ComponentSpec { label: "E".into(), class: e, mult: 1 });
            let (cfg, mut d) = configuration(surface(surfaces, &s)?, &components)?;
            d.remove("E");
            let report = minimality_check(&cfg, &d, "E")?;
            serde_json::to_value(report.verdict).map_err(|e| Error::Invalid(e.to_string()))?["verdict"].clone()
        }
        BasicSurface { surface: s, classes } => {
            let s = surface(surfaces, &s)?;
            let cs = classes.iter().map(|c| s.eval(c)).collect::<Result<Vec<_>>>()?;
            json!(basic_surface_check(&cs, s.k_squared()?)?.no_very_negative_curves)
        }
        JacobianBound { fiber: f, g } => json!(jacobian_bound_check(fiber(&f)?, &g).passes),
        HalphenK3 { fibers } => {
            let ts = fibers.iter().map(|f| fiber(f)).collect::<Result<Vec<_>>>()?;
            match ts.as_slice() {
                [f] => json!(halphen_k3_predicate(*f, None)),
                [f, f1] => json!(halphen_k3_predicate(*f, Some(*f1))),
                _ => return Err(Error::Invalid("expected one or two fibre types".into())),
            }
        }
        MatchCase { input } => json!(match_rational_case(&input)?.matched_cases),
        GenusProxy { vector } => json!(vector.parse::<MultiplicityVector>()?.genus_proxy()?),
        NoetherReduce { vector } => {
            let v: MultiplicityVector = vector.parse()?;
            let r = noether_reduce(&v, false).map_err(|e| e.error)?;
            json!(r.result.to_string())
        }
        Quintic { vector, indices } => json!(quintic_transform(&vector.parse()?, indices)?.to_string()),
    })
}

/// Replace `{name}` placeholders. A string that is exactly one placeholder takes the variable's JSON value.
fn substitute(v: &Value, vars: &BTreeMap<String, Value>) -> Value {
    match v {
        Value::String(s) => {
            if let Some(name) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
                if let Some(val) = vars.get(name) {
                    return val.clone();
                }
            }
            let mut out = s.clone();
            for (k, val) in vars {
                let pat = format!("{{{k}}}");
                if out.contains(&pat) {
                    let text = match val {
                        Value::String(t) => t.clone(),
                        other => other.to_string(),
                    };
                    out = out.replace(&pat, &text);
                }
            }
            Value::String(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(|x| substitute(x, vars)).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, x)| (k.clone(), substitute(x, vars))).collect()),
        other => other.clone(),
    }
}

fn expected_value(v: &Value) -> Result<Value> {
    if let Some(n) = v.get("formula").filter(|f| f.is_i64()) {
        return Ok(n.clone());
    }
    if let Some(f) = v.get("formula").and_then(Value::as_str) {
        let e = crate::expr::parse(f)?;
        if !e.terms.is_empty() {
            return Err(Error::Invalid(format!("formula `{f}` is not a constant")));
        }
        return Ok(json!(e.constant));
    }
    Ok(v.clone())
}

struct Generated {
    surfaces: BTreeMap<String, Surface>,
    vars: BTreeMap<String, Value>,
}

fn build_surfaces(specs: &BTreeMap<String, SurfaceSpec>, out: &mut BTreeMap<String, Surface>) -> Result<()> {
    let mut pending: Vec<_> = specs.iter().collect();
    while !pending.is_empty() {
        let before = pending.len();
        let mut rest = Vec::new();
        for (name, spec) in pending {
            match spec {
                SurfaceSpec::Sequence { sequence } => {
                    out.insert(name.clone(), Surface::from_sequence(sequence.clone()));
                }
                SurfaceSpec::Contracted { from, contract } => match out.get(from) {
                    Some(s) => {
                        let c = s.contract(contract)?;
                        out.insert(name.clone(), c);
                    }
                    None => rest.push((name, spec)),
                },
            }
        }
        if rest.len() == before {
            return Err(Error::Invalid(format!("surfaces with unresolved sources: {:?}", rest.iter().map(|r| r.0).collect::<Vec<_>>())));
        }
        pending = rest;
    }
    Ok(())
}

/// Verify every claim of a catalog entry, with parameter overrides for parametric entries.
pub fn verify_example(name: &str, overrides: &BTreeMap<String, i64>) -> Result<VerificationReport> {
    let e = entry(name)?;
    let mut params = e.params.clone();
    for (k, v) in overrides {
        if !params.contains_key(k) {
            return Err(Error::UnknownLabel(format!("parameter {k} of {name}")));
        }
        params.insert(k.clone(), *v);
    }
    let mut generated = match e.generator.as_deref() {
        None => Generated { surfaces: BTreeMap::new(), vars: BTreeMap::new() },
        Some("hexagon-pencil") => hexagon_pencil(params["m"])?,
        Some("fibre-chains") => fibre_chains(params["n"], params["b"], params["t"])?,
        Some(g) => return Err(Error::UnknownLabel(format!("generator {g}"))),
    };
    build_surfaces(&e.surfaces, &mut generated.surfaces)?;
    let mut vars = generated.vars;
    for (k, v) in &params {
        vars.insert(k.clone(), json!(v));
    }
    let claims = e
        .claims
        .iter()
        .map(|c| {
            let outcome = expected_value(&substitute(&c.expected, &vars)).and_then(|exp| {
                let check: Check = serde_json::from_value(substitute(&c.check, &vars))
                    .map_err(|err| Error::Invalid(format!("claim {}: {err}", c.id)))?;
                Ok((exp, run_check(&generated.surfaces, check)?))
            });
            let (expected, actual, error) = match outcome {
                Ok((exp, act)) => (exp, act, None),
                Err(err) => (c.expected.clone(), Value::Null, Some(err.to_string())),
            };
            ClaimResult {
                id: c.id.clone(),
                description: c.description.clone(),
                origin: c.origin.clone(),
                pass: error.is_none() && expected == actual,
                expected,
                actual,
                error,
            }
        })
        .collect::<Vec<_>>();
    let passed = claims.iter().all(|c| c.pass);
    Ok(VerificationReport { name: e.name.clone(), params, claims, passed })
}

fn sequence(base: BaseKind, centers: Vec<Center>, curves: Vec<CurveAssignment>) -> Result<Surface> {
    Ok(Surface::from_sequence(BlowUpSequence::new(base, centers, curves)?))
}

fn strings<I: IntoIterator<Item = S>, S: Into<String>>(items: I) -> Value {
    Value::Array(items.into_iter().map(|s| Value::String(s.into())).collect())
}

/// Cubic pencil spanned by two triangles; `m` sections are blown down after blowing up
/// the hexagon nodes on the components they meet.
fn hexagon_pencil(m: i64) -> Result<Generated> {
    if !(1..=6).contains(&m) {
        return Err(Error::Precondition(format!("m must lie in 1..=6, got {m}")));
    }
    let base_centers = vec![
        Center::new("p16").on(&["L1", "L6"]),
        Center::new("p25").on(&["L2", "L5"]),
        Center::new("p34").on(&["L3", "L4"]),
        Center::new("p12").on(&["L1", "L2", "L4"]),
        Center::new("p13").on(&["L1", "L3", "L5"]),
        Center::new("p23").on(&["L2", "L3", "L6"]),
        Center::new("q12").near("p12").on(&["L4"]),
        Center::new("q13").near("p13").on(&["L5"]),
        Center::new("q23").near("p23").on(&["L6"]),
    ];
    let lines: Vec<_> = (1..=6).map(|i| CurveAssignment::new(&format!("L{i}"), "e0")).collect();
    // (section center, component it meets)
    let sections = [("p16", "L1"), ("p25", "L2"), ("p34", "L3"), ("q12", "E(p12)"), ("q13", "E(p13)"), ("q23", "E(p23)")];
    // (node center, parent, line through it, the two components it joins)
    let nodes = [
        ("n12a", "p12", "L1", ["L1", "E(p12)"]),
        ("n12b", "p12", "L2", ["L2", "E(p12)"]),
        ("n23a", "p23", "L2", ["L2", "E(p23)"]),
        ("n23b", "p23", "L3", ["L3", "E(p23)"]),
        ("n13a", "p13", "L3", ["L3", "E(p13)"]),
        ("n13b", "p13", "L1", ["L1", "E(p13)"]),
    ];
    let chosen = &sections[..m as usize];
    let mut centers = base_centers.clone();
    let mut count = 0;
    for (id, parent, line, joins) in nodes {
        if chosen.iter().any(|(_, g)| joins.contains(g)) {
            centers.push(Center::new(id).near(parent).on(&[line]));
            count += 1;
        }
    }
    centers.push(Center::new("q").on(&["L4", "L5"]));
    let v = sequence(BaseKind::P2, base_centers, lines.clone())?;
    let xp = sequence(BaseKind::P2, centers, lines)?;
    let x = xp.contract(&chosen.iter().map(|(c, _)| format!("E({c})")).collect::<Vec<_>>())?;
    let all_nine = ["p16", "p25", "p34", "p12", "p13", "p23", "q12", "q13", "q23"];
    let fibre = format!("3e0 - {}", all_nine.iter().map(|p| format!("e({p})")).collect::<Vec<_>>().join(" - "));
    let hexagon: Vec<_> = ["L1", "L2", "L3", "E(p12)", "E(p13)", "E(p23)"]
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"label": format!("C{i}"), "class": c}))
        .collect();
    let triangle: Vec<_> = ["L4", "L5", "L6"].iter().map(|c| json!({"label": c, "class": c})).collect();
    let mut vars = BTreeMap::new();
    vars.insert("nodes".into(), json!(count));
    vars.insert("hexagon".into(), Value::Array(hexagon));
    vars.insert("triangle".into(), Value::Array(triangle));
    vars.insert("sections".into(), strings(sections.iter().map(|(c, _)| format!("E({c})"))));
    vars.insert("g".into(), json!(vec![1; m as usize]));
    vars.insert("fibre".into(), json!(fibre));
    vars.insert("components".into(), json!(chosen.iter().map(|(_, g)| json!([g, -3])).collect::<Vec<_>>()));
    let surfaces = BTreeMap::from([("V".to_string(), v), ("Xp".to_string(), xp), ("X".to_string(), x)]);
    Ok(Generated { surfaces, vars })
}

/// Parameters of the fibre-chain family that the construction supports.
pub fn fibre_chain_params_valid(n: i64, b: i64, t: i64) -> bool {
    n >= 1 && (0..=n).contains(&t) && b - t - 2 * (n - 1) >= 0 && b - t - 2 * (n - 1) <= 2 && b >= 0
}

/// F_b with n fibres split into r = b - t - 2(n - 1) singly blown-up fibres,
/// s = n - t triply blown-up fibres and t fibres blown up five times, plus one general point.
fn fibre_chains(n: i64, b: i64, t: i64) -> Result<Generated> {
    if !fibre_chain_params_valid(n, b, t) {
        return Err(Error::Precondition(format!(
            "need 0 <= t <= n and t + 2(n - 1) <= b <= t + 2n, got n={n} b={b} t={t}"
        )));
    }
    let r = b - t - 2 * (n - 1);
    let s = n - t;
    let base = BaseKind::Hirzebruch(b as u32);
    let total = (r + s + t) as usize;
    let fibre = |l: usize| format!("F{l}");
    let mut curves: Vec<_> = (1..=total).map(|l| CurveAssignment::new(&fibre(l), "f")).collect();
    curves.push(CurveAssignment::new("F0", "f"));
    let mut centers = Vec::new();
    let mut x_2k = vec![format!("{n}f"), "4s0".to_string()];
    let mut base_2k = x_2k.clone();
    let mut totals = Vec::new();
    let mut chains = Vec::new();
    let mut h_coefs = Vec::new();
    for l in 1..=total {
        let f = fibre(l);
        // per chain (fibre, E(x_0), E(x_1), ...): multiplicity in the fibre, weight in -2K + 2E, self-intersection
        let (mults, weights, selfs): (&[i64], &[i64], &[i64]) = if l as i64 <= r {
            (&[1, 1], &[2, 0], &[-1, -1])
        } else if l as i64 <= r + s {
            (&[1, 1, 2, 2], &[3, 1, 2, 0], &[-2, -2, -2, -1])
        } else {
            (&[1, 1, 2, 2, 2, 2], &[5, 3, 6, 4, 2, 0], &[-2, -2, -2, -2, -2, -1])
        };
        let ids: Vec<String> = (0..mults.len() - 1).map(|i| format!("x{l}_{i}")).collect();
        for (i, id) in ids.iter().enumerate() {
            let c = Center::new(id);
            centers.push(match i {
                0 => c.on(&[&f]),
                1 => c.near(&ids[0]).on(&[&f]),
                _ => c.near(&ids[i - 1]),
            });
        }
        let members: Vec<String> = std::iter::once(f.clone()).chain(ids.iter().map(|i| format!("E({i})"))).collect();
        let comb = |w: &[i64]| {
            members.iter().zip(w).filter(|(_, c)| **c != 0).map(|(m, c)| format!("{c}{m}")).collect::<Vec<_>>().join(" + ")
        };
        totals.push(json!([comb(mults), format!("tot({f})")]));
        x_2k.push(comb(weights));
        base_2k.push(format!("{}{f}", weights[0]));
        h_coefs.push(weights[0]);
        for (m, sv) in members.iter().zip(selfs) {
            chains.push(json!([m, sv]));
        }
    }
    centers.push(Center::new("q").on(&["F0"]));
    let s_surface = sequence(base, vec![], curves.clone())?;
    let x = sequence(base, centers, curves)?;
    let mut comps = vec![
        Component::new("M1", Role::M1, n, "f"),
        Component::new("G1", Role::G, 4, "s0"),
    ];
    for (l, h) in h_coefs.iter().enumerate() {
        comps.push(Component::new(&format!("H{}", l + 1), Role::H, *h, "f"));
    }
    let input = RationalTypeInput { y_min: MinimalSurface::Fb(b as u32), k: n, m: 0, components: comps, p1: None };
    let mut vars = BTreeMap::new();
    vars.insert("x_2k".into(), json!(x_2k.join(" + ")));
    vars.insert("base_2k".into(), json!(base_2k.join(" + ")));
    vars.insert("b_plus_2".into(), json!(b + 2));
    vars.insert("fibre_totals".into(), Value::Array(totals));
    vars.insert("chains".into(), Value::Array(chains));
    vars.insert("case_input".into(), serde_json::to_value(&input).map_err(|e| Error::Invalid(e.to_string()))?);
    let surfaces = BTreeMap::from([("S".to_string(), s_surface), ("X".to_string(), x)]);
    Ok(Generated { surfaces, vars })
}

//! Classification predicates: the sixteen-case matcher for surfaces of rational type,
//! elliptic-type bounds, and the K3-type, terminal, log Enriques, minimality and
//! fibre-type predicates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::blowup::ClassSpec;
use crate::config::{CurveConfiguration, FiberType, Multiset, PaValue, SncReport};
use crate::error::{Error, Result};
use crate::lattice::{make_lattice, BaseKind, DivisorClass, IntersectionLattice};

/// The minimal rational surface the divisor Γ lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimalSurface {
    P2,
    P1xP1,
    Fb(u32),
}

impl MinimalSurface {
    pub fn base_kind(self) -> BaseKind {
        match self {
            MinimalSurface::P2 => BaseKind::P2,
            MinimalSurface::P1xP1 => BaseKind::Hirzebruch(0),
            MinimalSurface::Fb(b) => BaseKind::Hirzebruch(b),
        }
    }

    /// The index b when the surface is F_b (P1xP1 counts as F_0).
    pub fn scroll_index(self) -> Option<i64> {
        match self.base_kind() {
            BaseKind::P2 => None,
            BaseKind::Hirzebruch(b) => Some(b as i64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    M1,
    G,
    H,
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    pub role: Role,
    #[serde(default = "one")]
    pub coef: i64,
    pub class: ClassSpec,
}

impl Component {
    pub fn new(label: &str, role: Role, coef: i64, class: &str) -> Self {
        Component { label: label.into(), role, coef, class: ClassSpec::Expr(class.into()) }
    }
}

/// The marked point blown up first in the cases that use one.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub through: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalTypeInput {
    pub y_min: MinimalSurface,
    pub k: i64,
    pub m: i64,
    pub components: Vec<Component>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<MarkedPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseLog {
    pub case: u8,
    pub matched: bool,
    pub constraints: Vec<ConstraintCheck>,
    /// Geometric clauses of the case that the input data cannot express.
    pub assumed: Vec<String>,
    pub notes: Vec<String>,
}

impl CaseLog {
    pub fn failures(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.constraints.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCaseReport {
    pub matched_cases: Vec<u8>,
    pub cases: Vec<CaseLog>,
}

impl RationalCaseReport {
    pub fn case(&self, n: u8) -> Option<&CaseLog> {
        self.cases.iter().find(|c| c.case == n)
    }
}

#[derive(Default)]
struct Log {
    checks: Vec<ConstraintCheck>,
    assumed: Vec<String>,
    notes: Vec<String>,
}

impl Log {
    fn check(&mut self, name: impl Into<String>, lhs: impl Display, rhs: impl Display, pass: bool) -> bool {
        self.checks.push(ConstraintCheck { name: name.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), pass });
        pass
    }

    fn eq(&mut self, name: impl Into<String>, lhs: i64, rhs: i64) -> bool {
        self.check(name, lhs, rhs, lhs == rhs)
    }

    fn assume(&mut self, clauses: &[&str]) {
        self.assumed.extend(clauses.iter().map(|s| s.to_string()));
    }
}

struct Comp {
    label: String,
    role: Role,
    coef: i64,
    class: DivisorClass,
    through: bool,
}

struct Ctx<'a> {
    input: &'a RationalTypeInput,
    comps: Vec<Comp>,
    lat: Arc<IntersectionLattice>,
}

enum Surface {
    P2,
    Scroll(i64, &'static str),
}

impl Ctx<'_> {
    fn cls(&self, text: &str) -> Result<DivisorClass> {
        self.lat.parse_class(text)
    }

    fn role(&self, r: Role) -> Vec<&Comp> {
        self.comps.iter().filter(|c| c.role == r).collect()
    }

    fn surface(&self, log: &mut Log, want: Surface) -> bool {
        let got = self.input.y_min.scroll_index();
        match want {
            Surface::P2 => log.check("minimal surface", describe_surface(got), "P2", got.is_none()),
            Surface::Scroll(b, text) => {
                let rhs = format!("F_{b} ({text})");
                log.check("minimal surface", describe_surface(got), rhs, b >= 0 && got == Some(b))
            }
        }
    }

    fn mk(&self, log: &mut Log, allowed: bool, desc: &str) -> bool {
        log.check("(m, k)", format!("({}, {})", self.input.m, self.input.k), desc, allowed)
    }

    fn anticanonical(&self, log: &mut Log) -> Result<bool> {
        let mut gamma = self.lat.zero();
        for c in &self.comps {
            gamma = gamma.try_add(&c.class.try_scale(c.coef)?)?;
        }
        let target = self.lat.canonical().try_scale(-2)?;
        Ok(log.check("anticanonical class", &gamma, &target, gamma == target))
    }

    /// Exactly one M1 component, with coefficient k and the given class.
    fn m1(&self, log: &mut Log, class: &DivisorClass, shape: &str) -> Option<&Comp> {
        let m1s = self.role(Role::M1);
        if !log.eq("number of M1 components", m1s.len() as i64, 1) {
            return None;
        }
        let c = m1s[0];
        log.eq("coefficient of M1", c.coef, self.input.k);
        shape_check(log, c, class, shape);
        Some(c)
    }

    fn p1(&self, log: &mut Log, used: bool) -> bool {
        let given = self.input.p1.is_some();
        if used {
            log.check("marked point", if given { "given" } else { "absent" }, "given", given)
        } else {
            log.check("marked point", if given { "given" } else { "absent" }, "absent", !given)
        }
    }

    /// Intersection conditions of the divisor kM1 + G + H, evaluated after blowing up the
    /// marked point when the case uses one.
    fn intersections(&self, log: &mut Log, use_p1: bool) -> Result<()> {
        let k = self.input.k;
        let m = self.input.m;
        log.check("k >= 2 only when m = 0", format!("(m, k) = ({m}, {k})"), "k = 1 or m = 0", k == 1 || m == 0);
        let (lat, lift): (Arc<IntersectionLattice>, Box<dyn Fn(&Comp) -> Result<DivisorClass>>) =
            if use_p1 && self.input.y_min == MinimalSurface::P2 && self.input.p1.is_some() {
                let lat0 = make_lattice(BaseKind::P2, 1);
                let l = lat0.clone();
                (lat0, Box::new(move |c: &Comp| l.class(vec![c.class.coeffs()[0], if c.through { -1 } else { 0 }])))
            } else {
                (self.lat.clone(), Box::new(|c: &Comp| Ok(c.class.clone())))
            };
        let Some(m1c) = self.role(Role::M1).first().copied() else {
            return Ok(());
        };
        let m1 = lift(m1c)?;
        let mut gs: Vec<(String, i64, DivisorClass)> = Vec::new();
        let mut hs: Vec<(String, i64, DivisorClass)> = Vec::new();
        for c in &self.comps {
            match c.role {
                Role::G => gs.push((c.label.clone(), c.coef, lift(c)?)),
                Role::H => hs.push((c.label.clone(), c.coef, lift(c)?)),
                Role::M1 => {}
            }
        }
        if lat.n_blowups() == 1 {
            let mult: i64 = self.comps.iter().filter(|c| c.through).map(|c| c.coef).sum();
            let e_coef = mult - 2;
            log.check("exceptional coefficient at p1", e_coef, ">= 0", e_coef >= 0);
            if e_coef > 0 {
                let e = lat.exceptional(1)?;
                let entry = ("E_p1".to_string(), e_coef, e.clone());
                if e.dot(&m1)? > 0 {
                    gs.push(entry);
                } else {
                    hs.push(entry);
                }
            }
        }
        let self_int = m1.self_intersection()?;
        log.eq("M1 self-intersection", self_int, m);
        let mut total = 0i64;
        let mut dots = Vec::new();
        for (label, g, c) in &gs {
            let d = c.dot(&m1)?;
            total += g * d;
            dots.push((label.clone(), d));
        }
        log.eq("G.M1 total", total, 4 + m);
        for (label, _, c) in &hs {
            log.eq(format!("H.M1 ({label})"), c.dot(&m1)?, 0);
        }
        if m == 0 {
            let odd: Vec<String> = gs.iter().filter(|(_, g, _)| g % 2 != 0).map(|(l, g, _)| format!("{l}:{g}")).collect();
            log.check("G coefficients even", if odd.is_empty() { "all even".into() } else { odd.join(", ") }, "all even", odd.is_empty());
        } else {
            for (label, d) in &dots {
                log.check(format!("G.M1 in {{1,2}} ({label})"), d, "1 or 2", *d == 1 || *d == 2);
            }
            let twos = dots.iter().filter(|(_, d)| *d == 2).count() as i64;
            log.check("at most one G with G.M1 = 2", twos, "<= 1", twos <= 1);
        }
        Ok(())
    }

    /// Balance and type conditions for Γ on F_n viewed as the scroll of |a f + s0|.
    fn scroll(&self, log: &mut Log) -> Result<()> {
        let n = self.input.y_min.scroll_index().unwrap_or(0);
        let m = self.input.m;
        let Some(m1) = self.role(Role::M1).first().copied() else {
            return Ok(());
        };
        let (a, s) = (m1.class.coeffs()[0], m1.class.coeffs()[1]);
        log.eq("M1 is a section (s0-coefficient)", s, 1);
        log.check("scroll degree m = 2a - n", format!("2*{a} - {n} = {}", 2 * a - n), m, 2 * a - n == m);
        log.check("a >= n", a, n, a >= n);
        let mut h = 0;
        for c in self.role(Role::H) {
            let v = c.class.coeffs();
            log.check(format!("H is the negative section ({})", c.label), &c.class, "s0", v[0] == 0 && v[1] == 1);
            h += c.coef * v[1];
        }
        log.check("h >= 1 only when a = n = m", format!("h = {h}, a = {a}, n = {n}, m = {m}"), "h = 0 or a = n = m", h == 0 || (a == n && n == m));
        let gs = self.role(Role::G);
        let sum_a: i64 = gs.iter().map(|c| c.coef * c.class.coeffs()[0]).sum();
        let sum_b: i64 = gs.iter().map(|c| c.coef * c.class.coeffs()[1]).sum();
        log.eq("scroll f-balance: sum g_i a_i + a = 2n + 4", sum_a + a, 2 * n + 4);
        log.eq("scroll s0-balance: sum g_i b_i + h = 3", sum_b + h, 3);
        log.eq("scroll product: (a - n)(3 - sum g_i b_i) = 0", (a - n) * (3 - sum_b), 0);
        for c in gs {
            let (ai, bi) = (c.class.coeffs()[0], c.class.coeffs()[1]);
            let t = scroll_type(ai, bi, n, a, m);
            log.check(
                format!("scroll type table ({})", c.label),
                format!("(a_i, b_i) = ({ai}, {bi})"),
                t.map_or("a listed type".to_string(), |t| format!("type {t}")),
                t.is_some(),
            );
        }
        Ok(())
    }
}

/// Admissible bidegrees of a G-component on the scroll, numbered 1 to 6.
pub fn scroll_type(ai: i64, bi: i64, n: i64, a: i64, m: i64) -> Option<u8> {
    match (ai, bi) {
        (1, 0) => Some(1),
        (1, 1) if n == 0 && a == 1 && m == 2 => Some(2),
        (2, 1) if n == 2 && a == 2 && m == 2 => Some(3),
        (1, 1) if n == 1 && a == 2 && m == 3 => Some(4),
        (0, 1) if a == n + 1 && m == n + 2 => Some(5),
        (0, 1) if a == n + 2 && m == n + 4 => Some(6),
        _ => None,
    }
}

fn describe_surface(b: Option<i64>) -> String {
    match b {
        None => "P2".into(),
        Some(b) => format!("F_{b}"),
    }
}

fn shape_check(log: &mut Log, c: &Comp, class: &DivisorClass, shape: &str) -> bool {
    log.check(format!("{} is {shape}", c.label), &c.class, class, &c.class == class)
}

fn through_check(log: &mut Log, c: &Comp, want: bool) -> bool {
    let show = |t: bool| if t { "through p1" } else { "not through p1" };
    log.check(format!("p1 incidence ({})", c.label), show(c.through), show(want), c.through == want)
}

fn coef_sum(cs: &[&Comp]) -> i64 {
    cs.iter().map(|c| c.coef).sum()
}

fn case_log(case: u8, ctx: &Ctx) -> Result<CaseLog> {
    let mut log = Log::default();
    let (m, k) = (ctx.input.m, ctx.input.k);
    match case {
        1..=9 => {
            if !ctx.surface(&mut log, Surface::P2) {
                return Ok(finish(case, log));
            }
        }
        _ => {
            let (b, text) = match case {
                10 | 11 => (0, "P1xP1"),
                12 => (2, "F_2"),
                13 => (ctx.input.y_min.scroll_index().filter(|b| *b >= 2).unwrap_or(-1), "b >= 2"),
                14 => (m - 2, "b = m - 2"),
                15 => (m - 4, "b = m - 4"),
                _ => (m, "b = m"),
            };
            if !ctx.surface(&mut log, Surface::Scroll(b, text)) {
                return Ok(finish(case, log));
            }
        }
    }
    let line = || ctx.cls("e0");
    let conic = || ctx.cls("2e0");
    let b = ctx.input.y_min.scroll_index().unwrap_or(0);
    let uses_p1 = matches!(case, 1..=4 | 7 | 8);
    ctx.p1(&mut log, uses_p1);
    match case {
        1 => {
            ctx.mk(&mut log, (m, k) == (0, 1), "(0, 1)");
            ctx.anticanonical(&mut log)?;
            if let Some(m1) = ctx.m1(&mut log, &line()?, "a line") {
                through_check(&mut log, m1, true);
            }
            let gs = ctx.role(Role::G);
            if log.eq("number of G components", gs.len() as i64, 1) {
                shape_check(&mut log, gs[0], &conic()?, "a conic");
                log.eq(format!("coefficient of {}", gs[0].label), gs[0].coef, 2);
                through_check(&mut log, gs[0], false);
            }
            let hs = ctx.role(Role::H);
            if log.eq("number of H components", hs.len() as i64, 1) {
                shape_check(&mut log, hs[0], &line()?, "a line");
                log.eq(format!("coefficient of {}", hs[0].label), hs[0].coef, 1);
                through_check(&mut log, hs[0], true);
            }
            ctx.intersections(&mut log, true)?;
            log.assume(&["M1 and H1 are distinct lines", "support of the sextic is simple normal crossing"]);
        }
        2 => {
            ctx.mk(&mut log, m == 0 && (k == 1 || k == 2), "(0, 1) or (0, 2)");
            ctx.anticanonical(&mut log)?;
            if let Some(m1) = ctx.m1(&mut log, &line()?, "a line") {
                through_check(&mut log, m1, true);
            }
            let gs = ctx.role(Role::G);
            if log.eq("number of G components", gs.len() as i64, 1) {
                shape_check(&mut log, gs[0], &line()?, "a line");
                log.eq(format!("coefficient of {}", gs[0].label), gs[0].coef, 2);
                through_check(&mut log, gs[0], false);
            }
            let hs = ctx.role(Role::H);
            for h in &hs {
                shape_check(&mut log, h, &line()?, "a line");
                through_check(&mut log, h, true);
            }
            log.eq("sum of H coefficients", coef_sum(&hs), 4 - k);
            ctx.intersections(&mut log, true)?;
            log.assume(&["each H_i differs from M1"]);
        }
        3 => {
            ctx.mk(&mut log, (m, k) == (0, 1), "(0, 1)");
            ctx.anticanonical(&mut log)?;
            if let Some(m1) = ctx.m1(&mut log, &line()?, "a line") {
                through_check(&mut log, m1, true);
            }
            let gs = ctx.role(Role::G);
            if log.eq("number of G components", gs.len() as i64, 1) {
                shape_check(&mut log, gs[0], &conic()?, "a conic");
                log.eq(format!("coefficient of {}", gs[0].label), gs[0].coef, 2);
                through_check(&mut log, gs[0], true);
            }
            let hs = ctx.role(Role::H);
            if log.eq("number of H components", hs.len() as i64, 1) {
                shape_check(&mut log, hs[0], &line()?, "a line");
                log.eq(format!("coefficient of {}", hs[0].label), hs[0].coef, 1);
                through_check(&mut log, hs[0], true);
            }
            ctx.intersections(&mut log, true)?;
            log.assume(&[
                "M1 and H1 are distinct lines",
                "M1 and H1 meet the conic transversally at p1 and at two further points",
            ]);
        }
        4 => {
            ctx.mk(&mut log, m == 0 && (1..=6).contains(&k), "(0, k) with 1 <= k <= 6");
            ctx.anticanonical(&mut log)?;
            if let Some(m1) = ctx.m1(&mut log, &line()?, "a line") {
                through_check(&mut log, m1, true);
            }
            log.eq("number of G components", ctx.role(Role::G).len() as i64, 0);
            let hs = ctx.role(Role::H);
            for h in &hs {
                shape_check(&mut log, h, &line()?, "a line");
                through_check(&mut log, h, true);
            }
            log.eq("sum of H coefficients", coef_sum(&hs), 6 - k);
            ctx.intersections(&mut log, true)?;
            log.assume(&["each H_i differs from M1"]);
        }
        5 | 6 => {
            ctx.mk(&mut log, (m, k) == (1, 1), "(1, 1)");
            ctx.anticanonical(&mut log)?;
            ctx.m1(&mut log, &line()?, "a line");
            log.eq("number of H components", ctx.role(Role::H).len() as i64, 0);
            let gs = ctx.role(Role::G);
            let (conics, lines): (Vec<&Comp>, Vec<&Comp>) = gs.iter().partition(|c| c.class.coeffs()[0] == 2);
            if case == 5 {
                if log.eq("number of conic G components", conics.len() as i64, 1) {
                    let g1 = conics[0].coef;
                    log.check(format!("coefficient of {}", conics[0].label), g1, "1 or 2", g1 == 1 || g1 == 2);
                    log.eq("2 g1 + sum of line coefficients", 2 * g1 + coef_sum(&lines), 5);
                }
                for l in &lines {
                    shape_check(&mut log, l, &line()?, "a line");
                }
                log.assume(&["M1 and the line components are distinct lines", "singular points of the G-part avoid M1"]);
            } else {
                log.check("at least one G component", gs.len(), ">= 1", !gs.is_empty());
                for g in &gs {
                    shape_check(&mut log, g, &line()?, "a line");
                }
                log.eq("sum of G coefficients", coef_sum(&gs), 5);
                log.assume(&["M1 and the G_i are distinct lines", "distinct G_i meet M1 at distinct points"]);
            }
            ctx.intersections(&mut log, false)?;
        }
        7 | 8 => {
            ctx.mk(&mut log, (m, k) == (3, 1), "(3, 1)");
            ctx.anticanonical(&mut log)?;
            if let Some(m1) = ctx.m1(&mut log, &conic()?, "a conic") {
                through_check(&mut log, m1, true);
            }
            log.eq("number of H components", ctx.role(Role::H).len() as i64, 0);
            let gs = ctx.role(Role::G);
            for g in &gs {
                shape_check(&mut log, g, &line()?, "a line");
            }
            let (off, on): (Vec<&Comp>, Vec<&Comp>) = gs.iter().partition(|c| !c.through);
            if case == 7 {
                if log.eq("number of G components", gs.len() as i64, 2) {
                    if log.eq("number of G components not through p1", off.len() as i64, 1) {
                        log.eq(format!("coefficient of {}", off[0].label), off[0].coef, 3);
                    }
                    if let Some(g2) = on.first() {
                        log.eq(format!("coefficient of {}", g2.label), g2.coef, 1);
                    }
                }
                log.assume(&["G_1 and G_2 are distinct lines", "support of the sextic is simple normal crossing"]);
            } else {
                log.eq("sum of G coefficients", coef_sum(&gs), 4);
                if log.eq("number of G components not through p1", off.len() as i64, 1) {
                    let g1 = off[0].coef;
                    log.check(format!("coefficient of {}", off[0].label), g1, "1 or 2", g1 == 1 || g1 == 2);
                }
                log.assume(&[
                    "the G_i are distinct lines",
                    "G_j through p1 meet M1 transversally there and at distinct further points",
                    "G_1 meets M1 at two points off the other G_j",
                ]);
            }
            ctx.intersections(&mut log, true)?;
        }
        9 => {
            ctx.mk(&mut log, (m, k) == (4, 1), "(4, 1)");
            ctx.anticanonical(&mut log)?;
            ctx.m1(&mut log, &conic()?, "a conic");
            log.eq("number of H components", ctx.role(Role::H).len() as i64, 0);
            let gs = ctx.role(Role::G);
            if log.eq("number of G components", gs.len() as i64, 1) {
                shape_check(&mut log, gs[0], &line()?, "a line");
                log.eq(format!("coefficient of {}", gs[0].label), gs[0].coef, 4);
            }
            ctx.intersections(&mut log, false)?;
            log.assume(&["G_1 meets M1 at two distinct points"]);
        }
        10 | 11 => {
            ctx.mk(&mut log, (m, k) == (2, 1), "(2, 1)");
            ctx.anticanonical(&mut log)?;
            let diag = ctx.cls("f + s0")?;
            let (f, s0) = (ctx.cls("f")?, ctx.cls("s0")?);
            ctx.m1(&mut log, &diag, "a section of both rulings");
            log.eq("number of H components", ctx.role(Role::H).len() as i64, 0);
            let gs = ctx.role(Role::G);
            let sections: Vec<&Comp> = gs.iter().copied().filter(|c| c.class == diag).collect();
            let rest: Vec<&Comp> = gs.iter().copied().filter(|c| c.class != diag).collect();
            for g in &rest {
                log.check(format!("{} is a fibre of either ruling", g.label), &g.class, "f or s0", g.class == f || g.class == s0);
            }
            let sf: i64 = rest.iter().filter(|c| c.class == f).map(|c| c.coef).sum();
            let ss: i64 = rest.iter().filter(|c| c.class == s0).map(|c| c.coef).sum();
            if case == 10 {
                if log.eq("number of G sections of both rulings", sections.len() as i64, 1) {
                    let g1 = sections[0].coef;
                    log.check(format!("coefficient of {}", sections[0].label), g1, "1 or 2", g1 == 1 || g1 == 2);
                    log.eq("sum of f-fibre coefficients", sf, 3 - g1);
                    log.eq("sum of s0-fibre coefficients", ss, 3 - g1);
                }
                log.assume(&["M1 and G_1 meet at two distinct points", "singular points of the G-part avoid M1"]);
            } else {
                log.eq("number of G sections of both rulings", sections.len() as i64, 0);
                log.eq("sum of f-fibre coefficients", sf, 3);
                log.eq("sum of s0-fibre coefficients", ss, 3);
                log.assume(&["fibres of different rulings do not meet on M1", "the fibres are distinct"]);
            }
            ctx.intersections(&mut log, false)?;
            ctx.scroll(&mut log)?;
        }
        12 => {
            ctx.mk(&mut log, (m, k) == (2, 1), "(2, 1)");
            ctx.anticanonical(&mut log)?;
            let sec = ctx.cls("2f + s0")?;
            let (f, s0) = (ctx.cls("f")?, ctx.cls("s0")?);
            ctx.m1(&mut log, &sec, "a section of self-intersection 2");
            let hs = ctx.role(Role::H);
            let mut h = 0;
            if log.check("number of H components", hs.len(), "0 or 1", hs.len() <= 1) {
                if let Some(h1) = hs.first() {
                    shape_check(&mut log, h1, &s0, "the (-2)-curve");
                    h = h1.coef;
                }
            }
            log.check("h in 0..=3", h, "0..=3", (0..=3).contains(&h));
            let gs = ctx.role(Role::G);
            let sections: Vec<&Comp> = gs.iter().copied().filter(|c| c.class == sec).collect();
            let rest: Vec<&Comp> = gs.iter().copied().filter(|c| c.class != sec).collect();
            if log.eq("number of G sections", sections.len() as i64, if h == 3 { 0 } else { 1 }) {
                if let Some(g1) = sections.first() {
                    log.eq(format!("coefficient of {}", g1.label), g1.coef, 3 - h);
                }
            }
            for g in &rest {
                shape_check(&mut log, g, &f, "a fibre");
            }
            log.eq("sum of fibre coefficients", coef_sum(&rest), 2 * h);
            ctx.intersections(&mut log, false)?;
            ctx.scroll(&mut log)?;
            log.assume(&["M1 and G_1 meet at two distinct points", "the fibres are distinct and avoid M1 ∩ G_1"]);
        }
        13 => {
            let top = 2 * (b + 2);
            ctx.mk(&mut log, m == 0 && k >= 1 && k < top, &format!("(0, k) with 1 <= k < {top}"));
            ctx.anticanonical(&mut log)?;
            let (f, s0) = (ctx.cls("f")?, ctx.cls("s0")?);
            ctx.m1(&mut log, &f, "a fibre");
            let gs = ctx.role(Role::G);
            if log.eq("number of G components", gs.len() as i64, 1) {
                shape_check(&mut log, gs[0], &s0, "the negative section");
                log.eq(format!("coefficient of {}", gs[0].label), gs[0].coef, 4);
            }
            let hs = ctx.role(Role::H);
            for h in &hs {
                shape_check(&mut log, h, &f, "a fibre");
            }
            log.eq("sum of H coefficients", coef_sum(&hs), top - k);
            ctx.intersections(&mut log, false)?;
            log.notes.push("scroll balance conditions apply only when M1 has positive self-intersection".into());
            log.assume(&["each H_i differs from M1"]);
        }
        14 | 15 => {
            let (lo, a_off, fibres) = if case == 14 { (3, 1, m + 1) } else { (4, 2, m - 2) };
            ctx.mk(&mut log, m >= lo && k == 1, &format!("(m, 1) with m >= {lo}"));
            ctx.anticanonical(&mut log)?;
            let (f, s0) = (ctx.cls("f")?, ctx.cls("s0")?);
            let sec = ctx.cls(&format!("{}f + s0", m - a_off))?;
            ctx.m1(&mut log, &sec, &format!("the section {}f + s0", m - a_off));
            log.eq("number of H components", ctx.role(Role::H).len() as i64, 0);
            let gs = ctx.role(Role::G);
            let negs: Vec<&Comp> = gs.iter().copied().filter(|c| c.class == s0).collect();
            let rest: Vec<&Comp> = gs.iter().copied().filter(|c| c.class != s0).collect();
            if log.eq("number of G negative sections", negs.len() as i64, 1) {
                log.eq(format!("coefficient of {}", negs[0].label), negs[0].coef, 3);
            }
            for g in &rest {
                shape_check(&mut log, g, &f, "a fibre");
            }
            log.eq("sum of fibre coefficients", coef_sum(&rest), fibres);
            ctx.intersections(&mut log, false)?;
            ctx.scroll(&mut log)?;
            log.assume(&["the fibres are distinct and avoid M1 ∩ G_1"]);
            if case == 15 {
                log.assume(&["M1 meets G_1 at two distinct points"]);
            }
        }
        _ => {
            ctx.mk(&mut log, m >= 3 && k == 1, "(m, 1) with m >= 3");
            ctx.anticanonical(&mut log)?;
            let (f, s0) = (ctx.cls("f")?, ctx.cls("s0")?);
            let sec = ctx.cls(&format!("{m}f + s0"))?;
            ctx.m1(&mut log, &sec, &format!("the section {m}f + s0"));
            let hs = ctx.role(Role::H);
            if log.eq("number of H components", hs.len() as i64, 1) {
                shape_check(&mut log, hs[0], &s0, "the negative section");
                log.eq(format!("coefficient of {}", hs[0].label), hs[0].coef, 3);
            }
            let gs = ctx.role(Role::G);
            for g in &gs {
                shape_check(&mut log, g, &f, "a fibre");
            }
            log.eq("sum of G coefficients", coef_sum(&gs), m + 4);
            ctx.intersections(&mut log, false)?;
            ctx.scroll(&mut log)?;
            log.assume(&["the fibres G_i are distinct"]);
        }
    }
    Ok(finish(case, log))
}

fn finish(case: u8, log: Log) -> CaseLog {
    let matched = log.checks.iter().all(|c| c.pass);
    CaseLog { case, matched, constraints: log.checks, assumed: log.assumed, notes: log.notes }
}

/// Runs the constraints of all sixteen cases against the input.
pub fn match_rational_case(input: &RationalTypeInput) -> Result<RationalCaseReport> {
    if input.k < 1 {
        return Err(Error::Invalid(format!("k = {} must be at least 1", input.k)));
    }
    if input.m < 0 {
        return Err(Error::Invalid(format!("m = {} must be non-negative", input.m)));
    }
    let lat = make_lattice(input.y_min.base_kind(), 0);
    let through: BTreeSet<&str> = input.p1.iter().flat_map(|p| p.through.iter().map(String::as_str)).collect();
    let mut seen = BTreeSet::new();
    let mut comps = Vec::new();
    for c in &input.components {
        if !seen.insert(c.label.as_str()) {
            return Err(Error::Invalid(format!("duplicate component label {}", c.label)));
        }
        if c.coef < 1 {
            return Err(Error::Invalid(format!("coefficient of {} must be at least 1", c.label)));
        }
        let class = c.class.resolve(&lat)?;
        comps.push(Comp { label: c.label.clone(), role: c.role, coef: c.coef, class, through: through.contains(c.label.as_str()) });
    }
    if let Some(bad) = through.iter().find(|l| !seen.contains(*l)) {
        return Err(Error::UnknownLabel(bad.to_string()));
    }
    let ctx = Ctx { input, comps, lat };
    let mut cases = Vec::new();
    for case in 1..=16u8 {
        cases.push(case_log(case, &ctx)?);
    }
    let matched_cases = cases.iter().filter(|c| c.matched).map(|c| c.case).collect();
    Ok(RationalCaseReport { matched_cases, cases })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianBoundReport {
    pub fiber: String,
    pub g: Vec<i64>,
    pub m: i64,
    pub passes: bool,
    pub constraints: Vec<ConstraintCheck>,
    /// K² of the surface obtained by contracting the sections and half the fibre
    /// components, when the fibre is I_s and m >= 7.
    pub contracted_k_squared: Option<i64>,
}

/// Bounds on the coefficients g_i of the sections over a fibre F_1 in the Jacobian construction.
pub fn jacobian_bound_check(fiber: FiberType, g: &[i64]) -> JacobianBoundReport {
    let mut log = Log::default();
    let m: i64 = g.iter().sum();
    log.check("g nonempty", g.len(), ">= 1", !g.is_empty());
    let nonpos: Vec<i64> = g.iter().copied().filter(|x| *x < 1).collect();
    log.check("g_i >= 1", format!("{nonpos:?}"), "[]", nonpos.is_empty());
    log.check("m = sum g_i <= 6", m, 6, m <= 6);
    for (i, gi) in g.iter().enumerate() {
        let ok = *gi < 6 || (*gi == 6 && fiber == FiberType::IIStar);
        log.check(format!("g_{} <= 6, with 6 only over II*", i + 1), gi, if fiber == FiberType::IIStar { "<= 6" } else { "<= 5" }, ok);
    }
    if fiber.is_reduced() {
        let big: Vec<i64> = g.iter().copied().filter(|x| *x > 1).collect();
        log.check("g_i <= 1 over a reduced fibre", format!("{big:?}"), "[]", big.is_empty());
    } else {
        let big = g.iter().filter(|x| **x >= 2).count();
        log.check("at most one g_i >= 2 over a non-reduced fibre", big, "<= 1", big <= 1);
    }
    let mut contracted_k_squared = None;
    if m >= 7 {
        if let FiberType::I(s) = fiber {
            log.check("I_s with s >= m", s, m, s as i64 >= m);
            let k2 = m + m / 2;
            contracted_k_squared = Some(k2);
            log.check("contracted K^2 = m + floor(m/2) < 10", format!("{m} + {} = {k2}", m / 2), "< 10", k2 < 10);
        } else {
            log.check("m >= 7 requires an I_s fibre", fiber, "I_s", false);
        }
    }
    let passes = log.checks.iter().all(|c| c.pass);
    JacobianBoundReport { fiber: fiber.to_string(), g: g.to_vec(), m, passes, constraints: log.checks, contracted_k_squared }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3TypeReport {
    pub k3_type: bool,
    pub reduced: bool,
    pub rational_components: bool,
    pub snc: SncReport,
}

/// A member of |-2K| gives K3 type when it is reduced, its components are rational and
/// its support is simple normal crossing.
pub fn is_k3_type(cfg: &CurveConfiguration) -> K3TypeReport {
    let reduced = cfg.nodes().iter().all(|n| n.mult == 1);
    let rational_components = cfg.nodes().iter().all(|n| n.genus == 0);
    let snc = cfg.check_snc();
    K3TypeReport { k3_type: reduced && rational_components && snc.passes, reduced, rational_components, snc }
}

/// Disjoint union of reduced smooth rational (-4)-curves.
pub fn terminal_shape(cfg: &CurveConfiguration) -> bool {
    !cfg.is_empty()
        && cfg.edges().is_empty()
        && cfg.nodes().iter().all(|n| n.self_int == -4 && n.mult == 1 && n.genus == 0 && n.singularity.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEnriquesReport {
    pub log_enriques: bool,
    /// Components that are chains (-3)-(-3) without interior, admitted as a limiting case.
    pub short_chains: Vec<Vec<String>>,
    pub components: Vec<Vec<String>>,
}

fn connected_components(cfg: &CurveConfiguration) -> Vec<Vec<usize>> {
    let n = cfg.len();
    let mut adj = vec![Vec::new(); n];
    for e in cfg.edges() {
        let (a, b) = (cfg.index_of(&e.a).expect("validated edge"), cfg.index_of(&e.b).expect("validated edge"));
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Every connected component is a single (-4)-curve or a chain (-3)-(-2)-…-(-2)-(-3),
/// all components reduced, smooth and rational, meeting transversally once.
pub fn log_enriques_shape(cfg: &CurveConfiguration) -> LogEnriquesReport {
    let nodes = cfg.nodes();
    let ids = |c: &[usize]| c.iter().map(|&i| nodes[i].id.clone()).collect::<Vec<_>>();
    let mut ok = !cfg.is_empty() && cfg.triples().is_empty();
    ok &= nodes.iter().all(|n| n.mult == 1 && n.genus == 0 && n.singularity.is_none());
    ok &= cfg.edges().iter().all(|e| e.count == 1 && e.tangency == 1 && e.a != e.b);
    let mut short_chains = Vec::new();
    let comps = connected_components(cfg);
    for comp in &comps {
        if comp.len() == 1 {
            ok &= nodes[comp[0]].self_int == -4;
            continue;
        }
        let mut deg: BTreeMap<usize, usize> = comp.iter().map(|&i| (i, 0)).collect();
        let mut edges = 0;
        for e in cfg.edges() {
            let a = cfg.index_of(&e.a).expect("validated edge");
            if deg.contains_key(&a) {
                let b = cfg.index_of(&e.b).expect("validated edge");
                *deg.get_mut(&a).expect("present") += 1;
                *deg.get_mut(&b).expect("present") += 1;
                edges += 1;
            }
        }
        let is_path = edges == comp.len() - 1 && deg.values().all(|d| *d <= 2);
        let shape_ok = is_path
            && comp.iter().all(|&i| {
                let want = if deg[&i] == 1 { -3 } else { -2 };
                nodes[i].self_int == want
            });
        ok &= shape_ok;
        if shape_ok && comp.len() == 2 {
            short_chains.push(ids(comp));
        }
    }
    LogEnriquesReport { log_enriques: ok, short_chains, components: comps.iter().map(|c| ids(c)).collect() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "value", rename_all = "kebab-case")]
pub enum MinimalityVerdict {
    /// p_a(D + 2E) = 1: E cannot be blown down to a Coble surface.
    BlocksBlowDown,
    /// p_a(D + 2E) = 0: blowing down E gives a Coble surface.
    CobleAfterBlowDown,
    /// Any other determined value.
    Other(i64),
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub pa: PaValue,
    pub verdict: MinimalityVerdict,
}

/// Evaluates p_a(D + 2E) for a (-1)-curve E and a member D of |-2K|.
pub fn minimality_check(cfg: &CurveConfiguration, d: &Multiset, e: &str) -> Result<MinimalityReport> {
    let node = cfg.node(e).ok_or_else(|| Error::UnknownLabel(e.to_string()))?;
    if node.self_int != -1 || node.genus != 0 || node.singularity.is_some() {
        return Err(Error::Precondition(format!("{e} is not a smooth rational (-1)-curve")));
    }
    if d.get(e).is_some_and(|c| *c != 0) {
        return Err(Error::Precondition(format!("{e} lies in the support of D")));
    }
    let mut sum = d.clone();
    sum.insert(e.to_string(), 2);
    let pa = cfg.divisor_pa(&sum)?;
    let verdict = match pa {
        PaValue::Determined(1) => MinimalityVerdict::BlocksBlowDown,
        PaValue::Determined(0) => MinimalityVerdict::CobleAfterBlowDown,
        PaValue::Determined(v) => MinimalityVerdict::Other(v),
        PaValue::Undetermined(_) => MinimalityVerdict::Undetermined,
    };
    Ok(MinimalityReport { pa, verdict })
}

/// True when every supplied fibre is of type I_n (n >= 1), II, III or IV.
pub fn halphen_k3_predicate(f: FiberType, f1: Option<FiberType>) -> bool {
    let good = |t: FiberType| matches!(t, FiberType::I(n) if n >= 1) || matches!(t, FiberType::II | FiberType::III | FiberType::IV);
    good(f) && f1.is_none_or(good)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{multiset, Edge, Node};

    fn p2_input(k: i64, m: i64, comps: Vec<Component>, p1: Option<&[&str]>) -> RationalTypeInput {
        RationalTypeInput {
            y_min: MinimalSurface::P2,
            k,
            m,
            components: comps,
            p1: p1.map(|t| MarkedPoint { through: t.iter().map(|s| s.to_string()).collect() }),
        }
    }

    #[test]
    fn conic_plus_quadruple_line() {
        let input = p2_input(
            1,
            4,
            vec![Component::new("M1", Role::M1, 1, "2e0"), Component::new("G1", Role::G, 4, "e0")],
            None,
        );
        let r = match_rational_case(&input).unwrap();
        assert_eq!(r.matched_cases, vec![9]);
    }

    #[test]
    fn degree_violation_fails_everywhere() {
        let input = p2_input(
            1,
            1,
            vec![
                Component::new("M1", Role::M1, 1, "e0"),
                Component::new("G1", Role::G, 1, "5e0"),
                Component::new("H1", Role::H, 1, "e0"),
            ],
            None,
        );
        let r = match_rational_case(&input).unwrap();
        assert!(r.matched_cases.is_empty());
        for c in r.cases.iter().take(9) {
            assert!(c.failures().any(|f| f.name == "anticanonical class"), "case {}", c.case);
        }
    }

    #[test]
    fn input_errors() {
        let mut input = p2_input(1, 4, vec![Component::new("M1", Role::M1, 1, "f")], None);
        assert!(match_rational_case(&input).is_err());
        input.components = vec![Component::new("M1", Role::M1, 0, "e0")];
        assert!(match_rational_case(&input).is_err());
        input.components = vec![Component::new("M1", Role::M1, 1, "e0")];
        input.p1 = Some(MarkedPoint { through: vec!["X".into()] });
        assert!(matches!(match_rational_case(&input), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn scroll_types() {
        assert_eq!(scroll_type(1, 0, 5, 7, 9), Some(1));
        assert_eq!(scroll_type(0, 1, 1, 2, 3), Some(5));
        assert_eq!(scroll_type(0, 1, 1, 3, 5), Some(6));
        assert_eq!(scroll_type(1, 1, 1, 2, 3), Some(4));
        assert_eq!(scroll_type(3, 1, 1, 2, 3), None);
    }

    #[test]
    fn jacobian_bounds() {
        assert!(jacobian_bound_check(FiberType::I(6), &[1; 6]).passes);
        let r = jacobian_bound_check(FiberType::IIStar, &[7]);
        assert!(!r.passes);
        assert!(jacobian_bound_check(FiberType::IIStar, &[6]).passes);
        assert!(!jacobian_bound_check(FiberType::IIIStar, &[6]).passes);
        let r = jacobian_bound_check(FiberType::I(7), &[1; 7]);
        assert!(!r.passes);
        assert_eq!(r.contracted_k_squared, Some(10));
        assert!(!jacobian_bound_check(FiberType::I(3), &[2]).passes);
        assert!(!jacobian_bound_check(FiberType::IStar(0), &[2, 2]).passes);
        assert!(jacobian_bound_check(FiberType::IStar(0), &[2, 1]).passes);
    }

    fn chain(selfs: &[i64]) -> CurveConfiguration {
        let nodes: Vec<Node> = selfs.iter().enumerate().map(|(i, s)| Node::new(&format!("C{i}"), *s)).collect();
        let edges = (1..selfs.len()).map(|i| Edge::new(&format!("C{}", i - 1), &format!("C{i}"))).collect();
        CurveConfiguration::new(nodes, edges, vec![]).unwrap()
    }

    #[test]
    fn shapes() {
        let one = chain(&[-4]);
        assert!(terminal_shape(&one) && is_k3_type(&one).k3_type);
        let two = CurveConfiguration::new(vec![Node::new("A", -4), Node::new("B", -4)], vec![], vec![]).unwrap();
        assert!(terminal_shape(&two));
        assert!(!terminal_shape(&chain(&[-4, -2])));
        assert!(log_enriques_shape(&chain(&[-3, -2, -3])).log_enriques);
        assert!(log_enriques_shape(&one).log_enriques);
        let short = log_enriques_shape(&chain(&[-3, -3]));
        assert!(short.log_enriques);
        assert_eq!(short.short_chains.len(), 1);
        assert!(!log_enriques_shape(&chain(&[-3, -2, -2])).log_enriques);
        let doubled = CurveConfiguration::new(vec![Node::new("A", -4).with_mult(2)], vec![], vec![]).unwrap();
        assert!(!is_k3_type(&doubled).k3_type);
        let tangent = CurveConfiguration::new(
            vec![Node::new("A", -4), Node::new("B", -4)],
            vec![Edge::new("A", "B").with_tangency(2)],
            vec![],
        )
        .unwrap();
        assert!(!is_k3_type(&tangent).k3_type);
    }

    #[test]
    fn minimality_verdicts() {
        let cfg = |count: i64| {
            let edges = if count > 0 { vec![Edge::new("D", "E").with_count(count)] } else { vec![] };
            CurveConfiguration::new(vec![Node::new("D", -4), Node::new("E", -1)], edges, vec![]).unwrap()
        };
        let d = multiset(&[("D", 1)]);
        assert_eq!(minimality_check(&cfg(0), &d, "E").unwrap().verdict, MinimalityVerdict::CobleAfterBlowDown);
        assert_eq!(minimality_check(&cfg(2), &d, "E").unwrap().verdict, MinimalityVerdict::BlocksBlowDown);
        let once = minimality_check(&cfg(1), &d, "E").unwrap();
        assert_eq!(once.pa, PaValue::Determined(0));
        assert!(minimality_check(&cfg(0), &d, "D").is_err());
    }

    #[test]
    fn halphen_predicate() {
        assert!(halphen_k3_predicate(FiberType::I(6), Some(FiberType::I(3))));
        assert!(!halphen_k3_predicate(FiberType::IStar(0), None));
        assert!(halphen_k3_predicate(FiberType::II, None));
        assert!(!halphen_k3_predicate(FiberType::I(3), Some(FiberType::IVStar)));
        assert!(!halphen_k3_predicate(FiberType::Smooth, None));
    }
}

//! Bounded enumeration of numerical negative-curve classes on blow-up lattices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::lattice::{make_lattice, BaseKind, DivisorClass, IntersectionLattice};

/// Largest number of blown-up points the exhaustive search accepts.
pub const MAX_SEARCH_POINTS: usize = 15;
/// Largest number of classes a single enumeration may return.
pub const MAX_SEARCH_RESULTS: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Base part effective, exceptional coefficients non-positive; pure exceptional
    /// classes restricted to the shape e_i minus other exceptional classes.
    #[default]
    EffectiveShape,
    /// Any integer class with the required self-intersection and canonical degree.
    LatticeOnly,
}

/// Base parts of total degree `deg`: d·e0 on the plane, x·f + y·s0 with x + y = deg on F_b.
fn base_parts(base: BaseKind, deg: i64) -> Vec<Vec<i64>> {
    match base {
        BaseKind::P2 => vec![vec![deg]],
        BaseKind::Hirzebruch(_) => (0..=deg).map(|y| vec![deg - y, y]).collect(),
    }
}

struct Search {
    k: usize,
    lattice_only: bool,
    out: Vec<Vec<i64>>,
    limit: usize,
}

impl Search {
    /// Descending tuples of length k with the given sum and sum of squares.
    fn run(&mut self, cur: &mut Vec<i64>, max: i64, sum: i64, sq: i64) -> Result<()> {
        let left = (self.k - cur.len()) as i64;
        if left == 0 {
            if sum == 0 && sq == 0 {
                if self.out.len() >= self.limit {
                    return Err(Error::Budget(format!("more than {} exceptional patterns", self.limit)));
                }
                self.out.push(cur.clone());
            }
            return Ok(());
        }
        if sq < 0 || sum * sum > left * sq {
            return Ok(());
        }
        if !self.lattice_only && sum < 0 {
            return Ok(());
        }
        let r = isqrt(sq);
        let hi = max.min(r);
        let lo = if self.lattice_only { -r } else { 0 };
        let mut v = hi;
        while v >= lo {
            if v * left < sum {
                break;
            }
            cur.push(v);
            self.run(cur, v, sum - v, sq - v * v)?;
            cur.pop();
            v -= 1;
        }
        Ok(())
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Next lexicographic permutation in place; false when `v` was the last one.
fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn push_checked(out: &mut Vec<DivisorClass>, c: DivisorClass) -> Result<()> {
    if out.len() >= MAX_SEARCH_RESULTS {
        return Err(Error::Budget(format!("more than {MAX_SEARCH_RESULTS} classes")));
    }
    out.push(c);
    Ok(())
}

/// Classes e_i - Σ_{j∈S} e_j with |S| = n - 1.
fn pure_exceptional_shapes(lat: &Arc<IntersectionLattice>, n: i64, out: &mut Vec<DivisorClass>) -> Result<()> {
    fn choose(
        lat: &Arc<IntersectionLattice>,
        v: &mut Vec<i64>,
        from: usize,
        left: usize,
        out: &mut Vec<DivisorClass>,
    ) -> Result<()> {
        if left == 0 {
            return push_checked(out, lat.class(v.clone())?);
        }
        let off = lat.exceptional_offset();
        for j in from..lat.n_blowups() {
            if v[off + j] == 0 {
                v[off + j] = -1;
                choose(lat, v, j + 1, left - 1, out)?;
                v[off + j] = 0;
            }
        }
        Ok(())
    }
    let off = lat.exceptional_offset();
    for i in 0..lat.n_blowups() {
        let mut v = vec![0i64; lat.rank()];
        v[off + i] = 1;
        choose(lat, &mut v, 0, (n - 1) as usize, out)?;
    }
    Ok(())
}

/// Classes of total base degree exactly `deg` with C² = -n and K·C = n - 2.
pub fn classes_of_degree(lat: &Arc<IntersectionLattice>, n: i64, deg: i64, mode: SearchMode) -> Result<Vec<DivisorClass>> {
    if n < 1 {
        return Err(Error::Precondition(format!("n = {n} must be at least 1")));
    }
    if deg < 0 {
        return Err(Error::Precondition(format!("degree {deg} is negative")));
    }
    let k = lat.n_blowups();
    if k > MAX_SEARCH_POINTS {
        return Err(Error::Budget(format!("{k} points exceed the search limit of {MAX_SEARCH_POINTS}")));
    }
    let off = lat.exceptional_offset();
    let mut out = Vec::new();
    for base in base_parts(lat.base(), deg) {
        let mut full = base.clone();
        full.resize(lat.rank(), 0);
        let b2 = lat.pair_coeffs(&full, &full)?;
        let kb = lat.pair_coeffs(&full, lat.canonical_coeffs())?;
        if deg == 0 && mode == SearchMode::EffectiveShape {
            pure_exceptional_shapes(lat, n, &mut out)?;
            continue;
        }
        // C = B - Σ a_i e_i: C² = B² - Σa², K·C = K·B + Σa.
        let sum = error::sub(n - 2, kb)?;
        let sq = error::add(b2, n)?;
        if k == 0 {
            if sum == 0 && sq == 0 {
                push_checked(&mut out, lat.class(full)?)?;
            }
            continue;
        }
        let mut s = Search { k, lattice_only: mode == SearchMode::LatticeOnly, out: Vec::new(), limit: MAX_SEARCH_RESULTS };
        s.run(&mut Vec::with_capacity(k), i64::MAX, sum, sq)?;
        for pattern in s.out {
            let mut perm = pattern;
            perm.sort_unstable();
            loop {
                let mut v = full.clone();
                for (i, a) in perm.iter().enumerate() {
                    v[off + i] = -a;
                }
                push_checked(&mut out, lat.class(v)?)?;
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn sort_key(c: &DivisorClass) -> (i64, Vec<i64>) {
    let off = c.lattice().exceptional_offset();
    let deg: i64 = c.coeffs()[..off].iter().sum();
    let mut key: Vec<i64> = c.coeffs()[..off].to_vec();
    key.extend(c.coeffs()[off..].iter().map(|x| -x));
    (deg, key)
}

/// Numerical (-n)-classes of genus 0 with base degree between 0 and `degree_cap`, sorted.
pub fn enumerate_negative_classes(
    lat: &Arc<IntersectionLattice>,
    n: i64,
    degree_cap: i64,
    mode: SearchMode,
) -> Result<Vec<DivisorClass>> {
    if degree_cap < 0 {
        return Err(Error::Precondition(format!("degree cap {degree_cap} is negative")));
    }
    let mut out = Vec::new();
    for d in 0..=degree_cap {
        out.extend(classes_of_degree(lat, n, d, mode)?);
        if out.len() > MAX_SEARCH_RESULTS {
            return Err(Error::Budget(format!("more than {MAX_SEARCH_RESULTS} classes")));
        }
    }
    out.sort_by_cached_key(sort_key);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub cap: i64,
    pub classes: usize,
    pub max_dot: Option<i64>,
    pub witness: Option<DivisorClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTable {
    /// The fixed (-1)-class E.
    pub fixed: DivisorClass,
    pub rows: Vec<GrowthRow>,
    /// Number of pairs (E', E'') for which (E' - E'')² = -2 - 2E'·E'' was checked.
    pub pairs_checked: u64,
    pub identity_holds: bool,
    /// The maximum of E'·E increases strictly at least once across the rows.
    pub strictly_increases: bool,
    pub truncated: Option<String>,
}

/// The pairing diag(1, -1, ..., -1) of plane blow-up lattices on raw coefficients.
fn lorentz(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[0] - a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum::<i64>()
}

/// On the nine-point plane lattice, tabulates max E'·E over (-1)-classes E' up to each cap,
/// with E = e9, and checks (E' - E'')² = -2 - 2E'·E'' over all enumerated pairs.
pub fn intersection_growth_experiment(caps: &[i64]) -> Result<GrowthTable> {
    if caps.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("caps must be ascending".into()));
    }
    if caps.first().is_some_and(|c| *c < 0) {
        return Err(Error::Precondition("caps must be non-negative".into()));
    }
    let lat = make_lattice(BaseKind::P2, 9);
    let fixed = lat.exceptional(9)?;
    let mut all: Vec<DivisorClass> = Vec::new();
    let mut raw: Vec<Vec<i64>> = Vec::new();
    let mut rows = Vec::new();
    let mut pairs_checked = 0u64;
    let mut identity_holds = true;
    let mut truncated = None;
    let mut best: Option<(i64, DivisorClass)> = None;
    let mut done_deg = -1;
    for &cap in caps {
        while done_deg < cap {
            done_deg += 1;
            let fresh = match classes_of_degree(&lat, 1, done_deg, SearchMode::EffectiveShape) {
                Ok(f) => f,
                Err(e @ Error::Budget(_)) => {
                    truncated = Some(format!("stopped at degree {done_deg}: {e}"));
                    break;
                }
                Err(e) => return Err(e),
            };
            for c in &fresh {
                let dot = c.dot(&fixed)?;
                if best.as_ref().is_none_or(|(b, _)| dot > *b) {
                    best = Some((dot, c.clone()));
                }
            }
            let base = raw.len();
            raw.extend(fresh.iter().map(|c| c.coeffs().to_vec()));
            for i in base..raw.len() {
                let a = &raw[i];
                for (j, b) in raw[..=i].iter().enumerate() {
                    let d0 = a[0] - b[0];
                    let lhs = d0 * d0 - a[1..].iter().zip(&b[1..]).map(|(x, y)| (x - y) * (x - y)).sum::<i64>();
                    let expected = if i == j { 0 } else { -2 - 2 * lorentz(a, b) };
                    identity_holds &= lhs == expected;
                    pairs_checked += 1;
                }
            }
            all.extend(fresh);
        }
        if truncated.is_some() {
            break;
        }
        rows.push(GrowthRow {
            cap,
            classes: all.len(),
            max_dot: best.as_ref().map(|(d, _)| *d),
            witness: best.as_ref().map(|(_, c)| c.clone()),
        });
    }
    let strictly_increases = rows.windows(2).any(|w| w[1].max_dot > w[0].max_dot);
    Ok(GrowthTable { fixed, rows, pairs_checked, identity_holds, strictly_increases, truncated })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlaggedClass {
    pub index: usize,
    pub class: DivisorClass,
    pub self_intersection: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicSurfaceReport {
    /// Supplied curve classes with self-intersection at most -3.
    pub flagged: Vec<FlaggedClass>,
    /// No supplied curve has self-intersection at most -3.
    pub no_very_negative_curves: bool,
    pub k_squared: i64,
    pub k_squared_below_8: bool,
    pub summary: String,
}

/// Checks a list of curve classes for self-intersection at most -3 and records whether K² < 8.
pub fn basic_surface_check(classes: &[DivisorClass], k_squared: i64) -> Result<BasicSurfaceReport> {
    let mut flagged = Vec::new();
    for (index, c) in classes.iter().enumerate() {
        let s = c.self_intersection()?;
        if s <= -3 {
            flagged.push(FlaggedClass { index, class: c.clone(), self_intersection: s });
        }
    }
    let no_very_negative_curves = flagged.is_empty();
    let summary = if no_very_negative_curves {
        format!("no curve of self-intersection <= -3 among {} classes; K^2 = {k_squared}", classes.len())
    } else {
        let list: Vec<String> = flagged.iter().map(|f| format!("{} (self {})", f.class, f.self_intersection)).collect();
        format!("curves of self-intersection <= -3 present: {}; K^2 = {k_squared}", list.join(", "))
    };
    Ok(BasicSurfaceReport { flagged, no_very_negative_curves, k_squared, k_squared_below_8: k_squared < 8, summary })
}

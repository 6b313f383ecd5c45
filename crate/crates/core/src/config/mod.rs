//! Curve configurations as weighted dual graphs.

mod fiber;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::lattice::DivisorClass;

pub use fiber::{kodaira_catalog, recognize_fiber, recognize_fiber_support, FiberType};

/// Coefficients of a divisor supported on a configuration, keyed by node id.
pub type Multiset = BTreeMap<String, i64>;

pub fn multiset(items: &[(&str, i64)]) -> Multiset {
    let mut m = Multiset::new();
    for (id, c) in items {
        *m.entry(id.to_string()).or_insert(0) += c;
    }
    m
}

/// Upper bound on the number of sub-divisors visited by a connectivity search.
pub const DECOMPOSITION_BUDGET: u128 = 20_000_000;
pub const MAX_CONNECTIVITY_COMPONENTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Singularity {
    Node,
    Cusp,
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    #[serde(rename = "self")]
    pub self_int: i64,
    #[serde(default = "one")]
    pub mult: i64,
    #[serde(default)]
    pub genus: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singularity: Option<Singularity>,
}

impl Node {
    pub fn new(id: &str, self_int: i64) -> Self {
        Node { id: id.to_string(), self_int, mult: 1, genus: 0, singularity: None }
    }

    pub fn with_mult(mut self, mult: i64) -> Self {
        self.mult = mult;
        self
    }

    pub fn with_genus(mut self, genus: i64) -> Self {
        self.genus = genus;
        self
    }

    pub fn with_singularity(mut self, s: Singularity) -> Self {
        self.singularity = Some(s);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: String,
    pub b: String,
    #[serde(default = "one")]
    pub count: i64,
    #[serde(default = "one")]
    pub tangency: i64,
}

impl Edge {
    pub fn new(a: &str, b: &str) -> Self {
        Edge { a: a.to_string(), b: b.to_string(), count: 1, tangency: 1 }
    }

    pub fn with_count(mut self, count: i64) -> Self {
        self.count = count;
        self
    }

    pub fn with_tangency(mut self, tangency: i64) -> Self {
        self.tangency = tangency;
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawConfiguration {
    nodes: Vec<Node>,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    triples: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration", into = "RawConfiguration")]
pub struct CurveConfiguration {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    triples: Vec<[String; 3]>,
    #[serde(skip)]
    index: HashMap<String, usize>,
    #[serde(skip)]
    gram: Vec<Vec<i64>>,
}

impl TryFrom<RawConfiguration> for CurveConfiguration {
    type Error = Error;

    fn try_from(raw: RawConfiguration) -> Result<Self> {
        CurveConfiguration::new(raw.nodes, raw.edges, raw.triples)
    }
}

impl From<CurveConfiguration> for RawConfiguration {
    fn from(c: CurveConfiguration) -> Self {
        RawConfiguration { nodes: c.nodes, edges: c.edges, triples: c.triples }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum PaValue {
    Determined(i64),
    /// h⁰(O_D) could not be decided combinatorially; carries ½(D² + K·D).
    Undetermined(i64),
}

impl PaValue {
    pub fn value(self) -> Option<i64> {
        match self {
            PaValue::Determined(v) => Some(v),
            PaValue::Undetermined(_) => None,
        }
    }
}

impl std::fmt::Display for PaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PaValue::Determined(v) => write!(f, "{v}"),
            PaValue::Undetermined(n) => write!(f, "undetermined ({n} + h0(O_D))"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SncViolation {
    PositiveGenus { id: String, genus: i64 },
    SingularComponent { id: String, singularity: Singularity },
    HigherContact { a: String, b: String, order: i64 },
    TriplePoint { ids: [String; 3] },
}

impl std::fmt::Display for SncViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SncViolation::PositiveGenus { id, genus } => {
                write!(f, "component {id} has genus {genus}")
            }
            SncViolation::SingularComponent { id, singularity } => {
                write!(f, "component {id} is singular ({singularity:?})")
            }
            SncViolation::HigherContact { a, b, order } => {
                write!(f, "order >= 2 contact between {a} and {b} (order {order})")
            }
            SncViolation::TriplePoint { ids } => {
                write!(f, "triple point shared by {}, {}, {}", ids[0], ids[1], ids[2])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncReport {
    pub passes: bool,
    pub violations: Vec<SncViolation>,
    /// Pairs meeting transversally at more than one point; allowed but flagged.
    pub multiple_transverse: Vec<(String, String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopReport {
    pub chain_length: usize,
    pub self_intersection_sum: i64,
    pub bound: i64,
    pub inequality_holds: bool,
    pub loop_unique: bool,
    pub independent_cycles: i64,
}

impl CurveConfiguration {
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>, triples: Vec<[String; 3]>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if index.insert(n.id.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate node id `{}`", n.id)));
            }
            if n.mult < 1 {
                return Err(Error::Invalid(format!("node `{}` has multiplicity {}", n.id, n.mult)));
            }
            if n.genus < 0 {
                return Err(Error::Invalid(format!("node `{}` has negative genus", n.id)));
            }
            if n.singularity.is_some() && n.genus < 1 {
                return Err(Error::Invalid(format!(
                    "node `{}` carries a singularity marker but has genus 0",
                    n.id
                )));
            }
        }
        let k = nodes.len();
        let mut gram = vec![vec![0i64; k]; k];
        for (i, n) in nodes.iter().enumerate() {
            gram[i][i] = n.self_int;
        }
        for e in &edges {
            let a = *index.get(&e.a).ok_or_else(|| Error::UnknownLabel(e.a.clone()))?;
            let b = *index.get(&e.b).ok_or_else(|| Error::UnknownLabel(e.b.clone()))?;
            if a == b {
                return Err(Error::Invalid(format!("edge joins `{}` to itself", e.a)));
            }
            if e.count < 1 || e.tangency < 1 {
                return Err(Error::Invalid(format!(
                    "edge {}-{} needs count >= 1 and tangency >= 1",
                    e.a, e.b
                )));
            }
            let w = error::mul(e.count, e.tangency)?;
            gram[a][b] = error::add(gram[a][b], w)?;
            gram[b][a] = gram[a][b];
        }
        for t in &triples {
            let ids: BTreeSet<&String> = t.iter().collect();
            if ids.len() != 3 {
                return Err(Error::Invalid("triple point needs three distinct nodes".into()));
            }
            for id in t {
                if !index.contains_key(id) {
                    return Err(Error::UnknownLabel(id.clone()));
                }
            }
        }
        Ok(CurveConfiguration { nodes, edges, triples, index, gram })
    }

    /// Configuration of curves given by classes; edges are read off the pairing.
    pub fn from_classes(curves: &[(&str, &DivisorClass, i64)]) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for (i, (id, c, m)) in curves.iter().enumerate() {
            nodes.push(Node::new(id, c.self_intersection()?).with_mult(*m).with_genus(
                c.arithmetic_genus()?,
            ));
            for (id2, c2, _) in &curves[..i] {
                let d = c.dot(c2)?;
                if d < 0 {
                    return Err(Error::Invalid(format!(
                        "distinct curves {id2} and {id} have negative intersection {d}"
                    )));
                }
                if d > 0 {
                    edges.push(Edge::new(id2, id).with_count(d));
                }
            }
        }
        Self::new(nodes, edges, Vec::new())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triples(&self) -> &[[String; 3]] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownLabel(id.to_string()))
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// K·C for each component, from adjunction.
    pub fn canonical_degrees(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| 2 * n.genus - 2 - n.self_int).collect()
    }

    /// The divisor Σ mult·C over all nodes.
    pub fn full_multiset(&self) -> Multiset {
        self.nodes.iter().map(|n| (n.id.clone(), n.mult)).collect()
    }

    pub fn vectorize(&self, d: &Multiset) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.nodes.len()];
        for (id, c) in d {
            if *c < 0 {
                return Err(Error::Invalid(format!("negative coefficient {c} on `{id}`")));
            }
            v[self.index_of(id)?] = *c;
        }
        Ok(v)
    }

    pub fn multiset_of(&self, v: &[i64]) -> Multiset {
        self.nodes
            .iter()
            .zip(v)
            .filter(|(_, c)| **c != 0)
            .map(|(n, c)| (n.id.clone(), *c))
            .collect()
    }

    pub(crate) fn dot_vec(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let mut acc = 0i64;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && *yj != 0 {
                    acc = error::add(acc, error::mul(error::mul(*xi, g)?, *yj)?)?;
                }
            }
        }
        Ok(acc)
    }

    pub(crate) fn canonical_dot_vec(&self, x: &[i64]) -> Result<i64> {
        let mut acc = 0i64;
        for (xi, k) in x.iter().zip(self.canonical_degrees()) {
            acc = error::add(acc, error::mul(*xi, k)?)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, a: &Multiset, b: &Multiset) -> Result<i64> {
        self.dot_vec(&self.vectorize(a)?, &self.vectorize(b)?)
    }

    pub fn canonical_degree(&self, d: &Multiset) -> Result<i64> {
        self.canonical_dot_vec(&self.vectorize(d)?)
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.nodes.len()];
        for e in &self.edges {
            let a = self.index[&e.a];
            let b = self.index[&e.b];
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for t in &self.triples {
            let ix: Vec<usize> = t.iter().map(|id| self.index[id]).collect();
            for &p in &ix {
                for &q in &ix {
                    if p != q {
                        adj[p].insert(q);
                    }
                }
            }
        }
        adj
    }

    /// Connected components of the support of `v`, as index lists.
    fn support_components(&self, v: &[i64]) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; v.len()];
        let mut out = Vec::new();
        for start in 0..v.len() {
            if v[start] == 0 || seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                comp.push(i);
                for &j in &adj[i] {
                    if v[j] != 0 && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn k_connected_vec(&self, d: &[i64], k: i64) -> Result<bool> {
        let support: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 0).collect();
        if support.len() > MAX_CONNECTIVITY_COMPONENTS {
            return Err(Error::Budget(format!(
                "{} components exceed the limit of {MAX_CONNECTIVITY_COMPONENTS}",
                support.len()
            )));
        }
        let total: u128 = support.iter().map(|&i| d[i] as u128 + 1).product();
        if total > DECOMPOSITION_BUDGET {
            return Err(Error::Budget(format!(
                "{total} sub-divisors exceed the budget of {DECOMPOSITION_BUDGET}"
            )));
        }
        let m = support.len();
        let g: Vec<Vec<i64>> =
            support.iter().map(|&i| support.iter().map(|&j| self.gram[i][j]).collect()).collect();
        let dd: Vec<i64> = support.iter().map(|&i| d[i]).collect();
        let gd: Vec<i64> = (0..m)
            .map(|i| (0..m).try_fold(0i64, |acc, j| error::add(acc, error::mul(g[i][j], dd[j])?)))
            .collect::<Result<_>>()?;
        let mut x = vec![0i64; m];
        loop {
            let mut pos = 0;
            while pos < m && x[pos] == dd[pos] {
                x[pos] = 0;
                pos += 1;
            }
            if pos == m {
                return Ok(true);
            }
            x[pos] += 1;
            if x == dd {
                continue;
            }
            let mut x_d = 0i64;
            let mut x_x = 0i64;
            for i in 0..m {
                if x[i] == 0 {
                    continue;
                }
                x_d = error::add(x_d, error::mul(x[i], gd[i])?)?;
                for j in 0..m {
                    if x[j] != 0 && g[i][j] != 0 {
                        x_x = error::add(x_x, error::mul(error::mul(x[i], g[i][j])?, x[j])?)?;
                    }
                }
            }
            if error::sub(x_d, x_x)? < k {
                return Ok(false);
            }
        }
    }

    pub fn is_numerically_k_connected(&self, d: &Multiset, k: i64) -> Result<bool> {
        self.k_connected_vec(&self.vectorize(d)?, k)
    }

    /// h⁰(O_D) summed over connected components, when decidable.
    fn h0_vec(&self, v: &[i64]) -> Result<Option<i64>> {
        let mut total = 0i64;
        for comp in self.support_components(v) {
            match self.h0_component(v, &comp)? {
                Some(h) => total = error::add(total, h)?,
                None => return Ok(None),
            }
        }
        Ok(Some(total))
    }

    fn h0_component(&self, v: &[i64], comp: &[usize]) -> Result<Option<i64>> {
        if comp.iter().all(|&i| v[i] == 1) {
            return Ok(Some(1));
        }
        let mut sub = vec![0i64; v.len()];
        for &i in comp {
            sub[i] = v[i];
        }
        if self.k_connected_vec(&sub, 1)? {
            return Ok(Some(1));
        }
        // 0 -> O_C(-(D-C)) -> O_D -> O_{D-C} -> 0 splits on H⁰ when deg O_C(-(D-C)) >= -1.
        for &i in comp {
            let n = &self.nodes[i];
            if n.genus != 0 || n.singularity.is_some() {
                continue;
            }
            let mut rest = sub.clone();
            rest[i] -= 1;
            let mut c = vec![0i64; v.len()];
            c[i] = 1;
            let deg = -self.dot_vec(&c, &rest)?;
            if deg >= -1 {
                if let Some(h) = self.h0_vec(&rest)? {
                    return Ok(Some(error::add(error::add(deg, 1)?, h)?));
                }
            }
        }
        Ok(None)
    }

    pub fn divisor_pa(&self, d: &Multiset) -> Result<PaValue> {
        let v = self.vectorize(d)?;
        if v.iter().all(|&c| c == 0) {
            return Err(Error::Precondition("divisor is empty".into()));
        }
        let s = error::add(self.dot_vec(&v, &v)?, self.canonical_dot_vec(&v)?)?;
        if s % 2 != 0 {
            return Err(Error::Parity { what: "D^2 + K.D", value: s });
        }
        let numeric = s / 2;
        match self.h0_vec(&v)? {
            Some(h0) => Ok(PaValue::Determined(error::add(numeric, h0)?)),
            None => Ok(PaValue::Undetermined(numeric)),
        }
    }

    pub fn pa_sum_formula_check(&self, d1: &Multiset, d2: &Multiset) -> Result<bool> {
        let v1 = self.vectorize(d1)?;
        let v2 = self.vectorize(d2)?;
        let sum: Vec<i64> = v1.iter().zip(&v2).map(|(a, b)| a + b).collect();
        for (name, v) in [("D1", &v1), ("D2", &v2), ("D1+D2", &sum)] {
            if v.iter().all(|&c| c == 0) {
                return Err(Error::Precondition(format!("{name} is empty")));
            }
            if v.iter().any(|&c| c > 1) {
                return Err(Error::Precondition(format!("{name} is not reduced")));
            }
            if !self.k_connected_vec(v, 1)? {
                return Err(Error::Precondition(format!("{name} is not numerically 1-connected")));
            }
        }
        let pa = |v: &Vec<i64>| -> Result<i64> {
            self.divisor_pa(&self.multiset_of(v))?
                .value()
                .ok_or_else(|| Error::Precondition("arithmetic genus undetermined".into()))
        };
        let lhs = pa(&sum)?;
        let rhs = error::sub(
            error::add(error::add(pa(&v1)?, pa(&v2)?)?, self.dot_vec(&v1, &v2)?)?,
            1,
        )?;
        Ok(lhs == rhs)
    }

    pub fn check_snc(&self) -> SncReport {
        let mut violations = Vec::new();
        for n in &self.nodes {
            if let Some(s) = n.singularity {
                violations.push(SncViolation::SingularComponent { id: n.id.clone(), singularity: s });
            }
            if n.genus != 0 {
                violations.push(SncViolation::PositiveGenus { id: n.id.clone(), genus: n.genus });
            }
        }
        let mut transverse: BTreeMap<(String, String), i64> = BTreeMap::new();
        for e in &self.edges {
            if e.tangency >= 2 {
                violations.push(SncViolation::HigherContact {
                    a: e.a.clone(),
                    b: e.b.clone(),
                    order: e.tangency,
                });
            } else {
                let key = if e.a <= e.b { (e.a.clone(), e.b.clone()) } else { (e.b.clone(), e.a.clone()) };
                *transverse.entry(key).or_insert(0) += e.count;
            }
        }
        for t in &self.triples {
            violations.push(SncViolation::TriplePoint { ids: t.clone() });
        }
        let multiple_transverse =
            transverse.into_iter().filter(|(_, c)| *c >= 2).map(|((a, b), c)| (a, b, c)).collect();
        SncReport { passes: violations.is_empty(), violations, multiple_transverse }
    }

    pub fn loop_inequality_check(&self, chain: &[&str], m1: &str) -> Result<LoopReport> {
        let m = self.index_of(m1)?;
        let ix: Vec<usize> = chain.iter().map(|id| self.index_of(id)).collect::<Result<_>>()?;
        if ix.is_empty() {
            return Err(Error::Precondition("chain is empty".into()));
        }
        let mut all: BTreeSet<usize> = ix.iter().copied().collect();
        all.insert(m);
        if all.len() != ix.len() + 1 {
            return Err(Error::Precondition("loop repeats a component".into()));
        }
        let s = ix.len();
        if s == 1 {
            if self.gram[m][ix[0]] < 2 {
                return Err(Error::Precondition(format!(
                    "{m1} and {} meet {} times; a loop of length one needs two",
                    chain[0], self.gram[m][ix[0]]
                )));
            }
        } else {
            let mut cycle = vec![m];
            cycle.extend(&ix);
            for w in 0..cycle.len() {
                let (p, q) = (cycle[w], cycle[(w + 1) % cycle.len()]);
                if self.gram[p][q] < 1 {
                    return Err(Error::Precondition(format!(
                        "{} and {} do not meet",
                        self.nodes[p].id, self.nodes[q].id
                    )));
                }
            }
        }
        let sum = ix.iter().try_fold(0i64, |acc, &i| error::add(acc, self.nodes[i].self_int))?;
        let bound = -2 * s as i64 - 1;
        let component = self
            .support_components(&vec![1; self.nodes.len()])
            .into_iter()
            .find(|c| c.contains(&m))
            .expect("m1 lies in some component");
        let inside: BTreeSet<usize> = component.iter().copied().collect();
        let mut edge_points = 0i64;
        for e in &self.edges {
            if inside.contains(&self.index[&e.a]) {
                edge_points += e.count;
            }
        }
        let cycles = edge_points - component.len() as i64 + 1;
        Ok(LoopReport {
            chain_length: s,
            self_intersection_sum: sum,
            bound,
            inequality_holds: sum <= bound,
            loop_unique: cycles == 1 && self.triples.is_empty(),
            independent_cycles: cycles,
        })
    }

    /// Whether D·C_i = -2K·C_i for every component, the numerical shadow of D ∈ |-2K|.
    pub fn is_numerically_antibicanonical(&self) -> Result<bool> {
        let v: Vec<i64> = self.nodes.iter().map(|n| n.mult).collect();
        for (i, k) in self.canonical_degrees().into_iter().enumerate() {
            let mut e = vec![0i64; v.len()];
            e[i] = 1;
            if self.dot_vec(&v, &e)? != error::mul(-2, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(selfs: &[i64]) -> CurveConfiguration {
        let nodes = selfs.iter().enumerate().map(|(i, s)| Node::new(&format!("C{i}"), *s)).collect();
        let edges = (1..selfs.len())
            .map(|i| Edge::new(&format!("C{}", i - 1), &format!("C{i}")))
            .collect();
        CurveConfiguration::new(nodes, edges, vec![]).unwrap()
    }

    fn cycle(n: usize) -> CurveConfiguration {
        let nodes = (0..n).map(|i| Node::new(&format!("C{i}"), -2)).collect();
        let edges = if n == 2 {
            vec![Edge::new("C0", "C1").with_count(2)]
        } else {
            (0..n).map(|i| Edge::new(&format!("C{i}"), &format!("C{}", (i + 1) % n))).collect()
        };
        CurveConfiguration::new(nodes, edges, vec![]).unwrap()
    }

    #[test]
    fn pa_examples() {
        let single = CurveConfiguration::new(vec![Node::new("D", -4)], vec![], vec![]).unwrap();
        assert_eq!(single.divisor_pa(&single.full_multiset()).unwrap(), PaValue::Determined(0));
        let two = CurveConfiguration::new(vec![Node::new("A", -1), Node::new("B", -1)], vec![], vec![])
            .unwrap();
        assert_eq!(two.divisor_pa(&two.full_multiset()).unwrap(), PaValue::Determined(0));
        for n in 2..9 {
            let c = cycle(n);
            assert_eq!(c.divisor_pa(&c.full_multiset()).unwrap(), PaValue::Determined(1));
        }
        assert!(matches!(single.divisor_pa(&multiset(&[("X", 1)])), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn multiple_negative_curve_h0() {
        let c = CurveConfiguration::new(vec![Node::new("D", -4), Node::new("E", -1)], vec![], vec![])
            .unwrap();
        assert_eq!(c.divisor_pa(&multiset(&[("E", 2)])).unwrap(), PaValue::Determined(0));
        assert_eq!(c.divisor_pa(&multiset(&[("D", 1), ("E", 2)])).unwrap(), PaValue::Determined(0));
        assert_eq!(c.divisor_pa(&multiset(&[("D", 2)])).unwrap(), PaValue::Determined(0));
        let once = CurveConfiguration::new(
            vec![Node::new("D", -4), Node::new("E", -1)],
            vec![Edge::new("D", "E")],
            vec![],
        )
        .unwrap();
        assert!(!once.is_numerically_k_connected(&multiset(&[("D", 1), ("E", 2)]), 1).unwrap());
        assert_eq!(once.divisor_pa(&multiset(&[("D", 1), ("E", 2)])).unwrap(), PaValue::Determined(0));
        let elliptic_double = CurveConfiguration::new(
            vec![Node::new("F", 0).with_genus(1)],
            vec![],
            vec![],
        )
        .unwrap();
        assert_eq!(
            elliptic_double.divisor_pa(&multiset(&[("F", 2)])).unwrap(),
            PaValue::Undetermined(0)
        );
    }

    #[test]
    fn sum_formula_examples() {
        let two = chain(&[-1, -1]);
        assert!(two.pa_sum_formula_check(&multiset(&[("C0", 1)]), &multiset(&[("C1", 1)])).unwrap());
        let c = chain(&[-2, -2, -2, -2]);
        assert!(c
            .pa_sum_formula_check(&multiset(&[("C0", 1), ("C1", 1)]), &multiset(&[("C2", 1), ("C3", 1)]))
            .unwrap());
        let l = cycle(5);
        assert!(l
            .pa_sum_formula_check(&multiset(&[("C0", 1), ("C1", 1)]), &multiset(&[("C2", 1), ("C3", 1), ("C4", 1)]))
            .unwrap());
        let apart = chain(&[-2, -2, -2]);
        assert!(apart
            .pa_sum_formula_check(&multiset(&[("C0", 1)]), &multiset(&[("C2", 1)]))
            .is_err());
        assert!(apart.pa_sum_formula_check(&multiset(&[("C0", 1)]), &multiset(&[("C0", 1)])).is_err());
    }

    #[test]
    fn connectivity_examples() {
        let single = chain(&[-3]);
        for k in 0..5 {
            assert!(single.is_numerically_k_connected(&single.full_multiset(), k).unwrap());
        }
        let apart = CurveConfiguration::new(vec![Node::new("A", -2), Node::new("B", -2)], vec![], vec![])
            .unwrap();
        assert!(!apart.is_numerically_k_connected(&apart.full_multiset(), 1).unwrap());
        let i2 = cycle(2);
        assert!(i2.is_numerically_k_connected(&i2.full_multiset(), 2).unwrap());
        assert!(!i2.is_numerically_k_connected(&i2.full_multiset(), 3).unwrap());
    }

    #[test]
    fn connectivity_search_is_capped() {
        let big = chain(&[-2; 21]);
        assert!(matches!(
            big.is_numerically_k_connected(&big.full_multiset(), 1),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn snc_examples() {
        let i2 = cycle(2);
        let r = i2.check_snc();
        assert!(r.passes);
        assert_eq!(r.multiple_transverse, vec![("C0".into(), "C1".into(), 2)]);
        let tangent = CurveConfiguration::new(
            vec![Node::new("A", -2), Node::new("B", -2)],
            vec![Edge::new("A", "B").with_tangency(2)],
            vec![],
        )
        .unwrap();
        let r = tangent.check_snc();
        assert!(!r.passes);
        assert!(r.violations[0].to_string().contains("order >= 2 contact"));
        let lines = CurveConfiguration::new(
            vec![Node::new("L1", 1), Node::new("L2", 1), Node::new("L3", 1)],
            vec![Edge::new("L1", "L2"), Edge::new("L1", "L3"), Edge::new("L2", "L3")],
            vec![["L1".into(), "L2".into(), "L3".into()]],
        )
        .unwrap();
        assert!(!lines.check_snc().passes);
    }

    #[test]
    fn loop_examples() {
        let mk = |selfs: &[i64], double: bool| {
            let mut nodes = vec![Node::new("M", 0)];
            let mut edges = Vec::new();
            for (i, s) in selfs.iter().enumerate() {
                nodes.push(Node::new(&format!("D{i}"), *s));
                if i > 0 {
                    edges.push(Edge::new(&format!("D{}", i - 1), &format!("D{i}")));
                }
            }
            let last = format!("D{}", selfs.len() - 1);
            if double {
                edges.push(Edge::new("M", "D0").with_count(2));
            } else {
                edges.push(Edge::new("M", "D0"));
                edges.push(Edge::new("M", &last));
            }
            CurveConfiguration::new(nodes, edges, vec![]).unwrap()
        };
        let r = mk(&[-3], true).loop_inequality_check(&["D0"], "M").unwrap();
        assert!(r.inequality_holds && r.loop_unique);
        let r = mk(&[-2, -2], false).loop_inequality_check(&["D0", "D1"], "M").unwrap();
        assert!(!r.inequality_holds);
        assert_eq!((r.self_intersection_sum, r.bound), (-4, -5));
        let r = mk(&[-2, -3], false).loop_inequality_check(&["D0", "D1"], "M").unwrap();
        assert!(r.inequality_holds);
        assert!(mk(&[-2, -3], false).loop_inequality_check(&["D0"], "M").is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let text = r#"{"nodes":[{"id":"R1","self":-2,"mult":1,"genus":0},{"id":"R5","self":-2,"mult":2,"genus":0}],"edges":[{"a":"R1","b":"R5","count":1,"tangency":1}],"triples":[]}"#;
        let c: CurveConfiguration = serde_json::from_str(text).unwrap();
        assert_eq!(c.gram()[0][1], 1);
        assert_eq!(serde_json::to_string(&c).unwrap(), text);
        let bad = r#"{"nodes":[{"id":"A","self":-2}],"edges":[{"a":"A","b":"B"}]}"#;
        assert!(serde_json::from_str::<CurveConfiguration>(bad).is_err());
        let dup = r#"{"nodes":[{"id":"A","self":-2},{"id":"A","self":-1}]}"#;
        assert!(serde_json::from_str::<CurveConfiguration>(dup).is_err());
    }
}

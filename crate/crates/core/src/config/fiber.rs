//! Kodaira fiber types as weighted dual graphs, and recognition by graph isomorphism.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CurveConfiguration, Edge, Node, PaValue, Singularity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiberType {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
    Smooth,
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::IStar(b) => write!(f, "I{b}*"),
            FiberType::II => write!(f, "II"),
            FiberType::III => write!(f, "III"),
            FiberType::IV => write!(f, "IV"),
            FiberType::IIStar => write!(f, "II*"),
            FiberType::IIIStar => write!(f, "III*"),
            FiberType::IVStar => write!(f, "IV*"),
            FiberType::Smooth => write!(f, "smooth"),
        }
    }
}

impl std::str::FromStr for FiberType {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        let bad = || crate::Error::Invalid(format!("unknown fiber type `{s}`"));
        Ok(match s {
            "II" => FiberType::II,
            "III" => FiberType::III,
            "IV" => FiberType::IV,
            "II*" => FiberType::IIStar,
            "III*" => FiberType::IIIStar,
            "IV*" => FiberType::IVStar,
            "smooth" | "I0" => FiberType::Smooth,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                if let Some(b) = rest.strip_suffix('*') {
                    FiberType::IStar(b.parse().map_err(|_| bad())?)
                } else {
                    let n: u32 = rest.parse().map_err(|_| bad())?;
                    if n == 0 {
                        FiberType::Smooth
                    } else {
                        FiberType::I(n)
                    }
                }
            }
        })
    }
}

fn node(id: &str, mult: i64) -> Node {
    Node::new(id, -2).with_mult(mult)
}

fn tree(nodes: &[(&str, i64)], edges: &[(&str, &str)]) -> CurveConfiguration {
    CurveConfiguration::new(
        nodes.iter().map(|(id, m)| node(id, *m)).collect(),
        edges.iter().map(|(a, b)| Edge::new(a, b)).collect(),
        vec![],
    )
    .expect("well-formed fiber graph")
}

impl FiberType {
    /// Reduced fibers: every component has multiplicity one.
    pub fn is_reduced(self) -> bool {
        matches!(self, FiberType::I(_) | FiberType::II | FiberType::III | FiberType::IV | FiberType::Smooth)
    }

    pub fn component_count(self) -> usize {
        self.configuration().len()
    }

    pub fn configuration(self) -> CurveConfiguration {
        match self {
            FiberType::Smooth => CurveConfiguration::new(
                vec![Node::new("R1", 0).with_genus(1)],
                vec![],
                vec![],
            ),
            FiberType::I(1) => CurveConfiguration::new(
                vec![Node::new("R1", 0).with_genus(1).with_singularity(Singularity::Node)],
                vec![],
                vec![],
            ),
            FiberType::II => CurveConfiguration::new(
                vec![Node::new("R1", 0).with_genus(1).with_singularity(Singularity::Cusp)],
                vec![],
                vec![],
            ),
            FiberType::I(2) => CurveConfiguration::new(
                vec![node("R1", 1), node("R2", 1)],
                vec![Edge::new("R1", "R2").with_count(2)],
                vec![],
            ),
            FiberType::I(n) => {
                let ids: Vec<String> = (1..=n).map(|i| format!("R{i}")).collect();
                CurveConfiguration::new(
                    ids.iter().map(|id| node(id, 1)).collect(),
                    (0..n as usize).map(|i| Edge::new(&ids[i], &ids[(i + 1) % n as usize])).collect(),
                    vec![],
                )
            }
            FiberType::III => CurveConfiguration::new(
                vec![node("R1", 1), node("R2", 1)],
                vec![Edge::new("R1", "R2").with_tangency(2)],
                vec![],
            ),
            FiberType::IV => CurveConfiguration::new(
                vec![node("R1", 1), node("R2", 1), node("R3", 1)],
                vec![Edge::new("R1", "R2"), Edge::new("R1", "R3"), Edge::new("R2", "R3")],
                vec![["R1".into(), "R2".into(), "R3".into()]],
            ),
            FiberType::IStar(b) => {
                let last = b as usize + 5;
                let ids: Vec<String> = (1..=last).map(|i| format!("R{i}")).collect();
                let mut nodes: Vec<Node> = ids[..4].iter().map(|id| node(id, 1)).collect();
                nodes.extend(ids[4..].iter().map(|id| node(id, 2)));
                let mut edges = vec![
                    Edge::new("R1", "R5"),
                    Edge::new("R2", "R5"),
                    Edge::new("R3", &ids[last - 1]),
                    Edge::new("R4", &ids[last - 1]),
                ];
                for i in 5..last {
                    edges.push(Edge::new(&ids[i - 1], &ids[i]));
                }
                CurveConfiguration::new(nodes, edges, vec![])
            }
            FiberType::IVStar => Ok(tree(
                &[("R1", 3), ("R2", 2), ("R3", 1), ("R4", 2), ("R5", 1), ("R6", 2), ("R7", 1)],
                &[("R1", "R2"), ("R2", "R3"), ("R1", "R4"), ("R4", "R5"), ("R1", "R6"), ("R6", "R7")],
            )),
            FiberType::IIIStar => Ok(tree(
                &[
                    ("R1", 1),
                    ("R2", 2),
                    ("R3", 3),
                    ("R4", 4),
                    ("R5", 3),
                    ("R6", 2),
                    ("R7", 1),
                    ("R8", 2),
                ],
                &[
                    ("R1", "R2"),
                    ("R2", "R3"),
                    ("R3", "R4"),
                    ("R4", "R5"),
                    ("R5", "R6"),
                    ("R6", "R7"),
                    ("R4", "R8"),
                ],
            )),
            FiberType::IIStar => Ok(tree(
                &[
                    ("R1", 1),
                    ("R2", 2),
                    ("R3", 3),
                    ("R4", 4),
                    ("R5", 5),
                    ("R6", 6),
                    ("R7", 4),
                    ("R8", 2),
                    ("R9", 3),
                ],
                &[
                    ("R1", "R2"),
                    ("R2", "R3"),
                    ("R3", "R4"),
                    ("R4", "R5"),
                    ("R5", "R6"),
                    ("R6", "R7"),
                    ("R7", "R8"),
                    ("R6", "R9"),
                ],
            )),
        }
        .expect("well-formed fiber graph")
    }

    /// F², K·F and p_a(F) computed from the stored graph.
    pub fn invariants(self) -> crate::Result<(i64, i64, PaValue)> {
        let c = self.configuration();
        let f = c.full_multiset();
        Ok((c.intersect(&f, &f)?, c.canonical_degree(&f)?, c.divisor_pa(&f)?))
    }
}

/// All types with I_n for n ≤ max_n and I_b* for b ≤ max_b, plus the exceptional ones.
pub fn kodaira_catalog(max_n: u32, max_b: u32) -> Vec<FiberType> {
    let mut out = vec![FiberType::Smooth];
    out.extend((1..=max_n).map(FiberType::I));
    out.extend((0..=max_b).map(FiberType::IStar));
    out.extend([
        FiberType::II,
        FiberType::III,
        FiberType::IV,
        FiberType::IIStar,
        FiberType::IIIStar,
        FiberType::IVStar,
    ]);
    out
}

type VertexLabel = (i64, i64, i64, Option<Singularity>);

struct Shape {
    labels: Vec<VertexLabel>,
    /// Per unordered pair: intersection points grouped by contact order.
    links: BTreeMap<(usize, usize), BTreeMap<i64, i64>>,
    triples: BTreeSet<[usize; 3]>,
    signature: Vec<(VertexLabel, Vec<(VertexLabel, Vec<(i64, i64)>)>)>,
}

impl Shape {
    fn of(c: &CurveConfiguration, mults: &[i64]) -> Shape {
        let labels: Vec<VertexLabel> = c
            .nodes()
            .iter()
            .zip(mults)
            .map(|(n, m)| (n.self_int, *m, n.genus, n.singularity))
            .collect();
        let mut links: BTreeMap<(usize, usize), BTreeMap<i64, i64>> = BTreeMap::new();
        for e in c.edges() {
            let a = c.index_of(&e.a).expect("valid edge");
            let b = c.index_of(&e.b).expect("valid edge");
            let key = (a.min(b), a.max(b));
            *links.entry(key).or_default().entry(e.tangency).or_insert(0) += e.count;
        }
        let triples = c
            .triples()
            .iter()
            .map(|t| {
                let mut ix = t.clone().map(|id| c.index_of(&id).expect("valid triple"));
                ix.sort_unstable();
                ix
            })
            .collect();
        let signature = (0..labels.len())
            .map(|i| {
                let mut nb: Vec<(VertexLabel, Vec<(i64, i64)>)> = links
                    .iter()
                    .filter_map(|(&(a, b), w)| {
                        let other = if a == i {
                            b
                        } else if b == i {
                            a
                        } else {
                            return None;
                        };
                        Some((labels[other], w.iter().map(|(k, v)| (*k, *v)).collect()))
                    })
                    .collect();
                nb.sort();
                (labels[i], nb)
            })
            .collect();
        Shape { labels, links, triples, signature }
    }

    fn link(&self, a: usize, b: usize) -> Option<&BTreeMap<i64, i64>> {
        self.links.get(&(a.min(b), a.max(b)))
    }
}

fn isomorphic(x: &Shape, y: &Shape) -> bool {
    let n = x.labels.len();
    if n != y.labels.len() || x.links.len() != y.links.len() || x.triples.len() != y.triples.len() {
        return false;
    }
    let mut xs = x.signature.clone();
    let mut ys = y.signature.clone();
    xs.sort();
    ys.sort();
    if xs != ys {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(x, y, 0, &mut map, &mut used)
}

fn extend(x: &Shape, y: &Shape, i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let n = x.labels.len();
    if i == n {
        return x.triples.iter().all(|t| {
            let mut img = t.map(|v| map[v]);
            img.sort_unstable();
            y.triples.contains(&img)
        });
    }
    for j in 0..n {
        if used[j] || x.signature[i] != y.signature[j] {
            continue;
        }
        let consistent = (0..i).all(|p| x.link(p, i) == y.link(map[p], j));
        if !consistent {
            continue;
        }
        map[i] = j;
        used[j] = true;
        if extend(x, y, i + 1, map, used) {
            return true;
        }
        used[j] = false;
    }
    map[i] = usize::MAX;
    false
}

fn candidates(n: usize) -> Vec<FiberType> {
    let mut out = vec![FiberType::I(n as u32)];
    if n == 1 {
        out.extend([FiberType::Smooth, FiberType::II]);
    }
    if n >= 5 {
        out.push(FiberType::IStar(n as u32 - 5));
    }
    out.extend(
        [FiberType::III, FiberType::IV, FiberType::IVStar, FiberType::IIIStar, FiberType::IIStar]
            .into_iter()
            .filter(|t| t.component_count() == n),
    );
    out
}

/// Match the configuration, multiplicities included, against the Kodaira table.
pub fn recognize_fiber(cfg: &CurveConfiguration) -> Option<FiberType> {
    let mults: Vec<i64> = cfg.nodes().iter().map(|n| n.mult).collect();
    recognize_with(cfg, &mults)
}

/// As [`recognize_fiber`], after dividing the multiplicities by their gcd; returns the gcd too.
pub fn recognize_fiber_support(cfg: &CurveConfiguration) -> Option<(FiberType, i64)> {
    let mults: Vec<i64> = cfg.nodes().iter().map(|n| n.mult).collect();
    let g = mults.iter().fold(0i64, |a, &b| gcd(a, b));
    if g == 0 {
        return None;
    }
    let reduced: Vec<i64> = mults.iter().map(|m| m / g).collect();
    recognize_with(cfg, &reduced).map(|t| (t, g))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn recognize_with(cfg: &CurveConfiguration, mults: &[i64]) -> Option<FiberType> {
    if cfg.is_empty() {
        return None;
    }
    let shape = Shape::of(cfg, mults);
    let found = candidates(cfg.len()).into_iter().find(|t| {
        let model = t.configuration();
        let model_mults: Vec<i64> = model.nodes().iter().map(|n| n.mult).collect();
        isomorphic(&shape, &Shape::of(&model, &model_mults))
    })?;
    debug_assert!(matches!(found.invariants(), Ok((0, 0, PaValue::Determined(1)))));
    Some(found)
}

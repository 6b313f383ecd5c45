//! Plane-curve multiplicity vectors under Cremona transformations.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::lattice::{make_lattice, BaseKind, DivisorClass, IntersectionLattice};

/// A plane curve datum (d; m1, ..., mk), multiplicities sorted descending, zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityVector {
    d: i64,
    mults: Vec<i64>,
}

impl MultiplicityVector {
    pub fn new(d: i64, mults: Vec<i64>) -> Result<Self> {
        if d < 0 {
            return Err(Error::Invalid(format!("degree {d} is negative")));
        }
        if let Some(m) = mults.iter().find(|m| **m < 0) {
            return Err(Error::Invalid(format!("multiplicity {m} is negative")));
        }
        Ok(Self::normalized(d, mults))
    }

    fn normalized(d: i64, mut mults: Vec<i64>) -> Self {
        mults.retain(|m| *m != 0);
        mults.sort_unstable_by(|a, b| b.cmp(a));
        MultiplicityVector { d, mults }
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    /// Multiplicity at index `i`; indices past the end are general points.
    pub fn mult(&self, i: usize) -> i64 {
        self.mults.get(i).copied().unwrap_or(0)
    }

    /// The vector restricted to singular points (multiplicity at least two).
    pub fn singular_part(&self) -> Self {
        MultiplicityVector { d: self.d, mults: self.mults.iter().copied().filter(|m| *m >= 2).collect() }
    }

    pub fn singular_count(&self) -> usize {
        self.mults.iter().filter(|m| **m >= 2).count()
    }

    /// (d-1)(d-2)/2 - Σ m(m-1)/2.
    pub fn genus_proxy(&self) -> Result<i64> {
        let mut g = error::mul(self.d - 1, self.d - 2)? / 2;
        for m in &self.mults {
            g = error::sub(g, error::mul(*m, m - 1)? / 2)?;
        }
        Ok(g)
    }

    /// Warning text when the vector cannot be an irreducible rational curve.
    pub fn irreducible_rational_warning(&self) -> Option<String> {
        match self.genus_proxy() {
            Ok(0) => None,
            Ok(g) => Some(format!("genus proxy of {self} is {g}, not 0")),
            Err(e) => Some(e.to_string()),
        }
    }

    /// Necessary conditions for an irreducible curve: lines through two points
    /// and conics through five points meet it properly.
    pub fn bezout_plausible(&self) -> bool {
        let m = &self.mults;
        if m.first().is_some_and(|&x| x > self.d) {
            return false;
        }
        if m.len() >= 2 && m[0] + m[1] > self.d {
            return false;
        }
        m.iter().take(5).sum::<i64>() <= 2 * self.d || m.len() < 5
    }

    pub fn to_class(&self) -> Result<DivisorClass> {
        self.to_class_in(&make_lattice(BaseKind::P2, self.mults.len()))
    }

    /// d·e0 - Σ m_i e_i in a plane lattice with at least k blow-ups.
    pub fn to_class_in(&self, lattice: &Arc<IntersectionLattice>) -> Result<DivisorClass> {
        if lattice.base() != BaseKind::P2 {
            return Err(Error::Precondition("multiplicity vectors live on plane lattices".into()));
        }
        if lattice.n_blowups() < self.mults.len() {
            return Err(Error::Precondition(format!(
                "{} points do not fit in a lattice with {} blow-ups",
                self.mults.len(),
                lattice.n_blowups()
            )));
        }
        let mut v = vec![0i64; lattice.rank()];
        v[0] = self.d;
        for (i, m) in self.mults.iter().enumerate() {
            v[i + 1] = -m;
        }
        lattice.class(v)
    }

    pub fn from_class(c: &DivisorClass) -> Result<Self> {
        if c.lattice().base() != BaseKind::P2 {
            return Err(Error::Precondition("multiplicity vectors live on plane lattices".into()));
        }
        let v = c.coeffs();
        if v[0] < 0 {
            return Err(Error::Precondition(format!("degree {} is negative", v[0])));
        }
        if let Some(x) = v[1..].iter().find(|x| **x > 0) {
            return Err(Error::Precondition(format!(
                "exceptional coefficient {x} is positive; not a plane curve class"
            )));
        }
        Ok(Self::normalized(v[0], v[1..].iter().map(|x| -x).collect()))
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.d)?;
        for (i, m) in self.mults.iter().enumerate() {
            write!(f, "{}{m}", if i == 0 { ';' } else { ',' })?;
        }
        write!(f, ")")
    }
}

impl FromStr for MultiplicityVector {
    type Err = Error;

    /// Parses `(d;m1,m2,...)`, with optional whitespace and `m^k` for k copies of m.
    fn from_str(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        let mut pos = 0usize;
        let skip = |pos: &mut usize| {
            while *pos < b.len() && b[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let expect = |pos: &mut usize, c: u8, what: &str| -> Result<()> {
            skip(pos);
            if b.get(*pos) == Some(&c) {
                *pos += 1;
                Ok(())
            } else {
                Err(Error::Parse { pos: *pos, msg: format!("expected {what}") })
            }
        };
        let int = |pos: &mut usize| -> Result<i64> {
            skip(pos);
            let start = *pos;
            while *pos < b.len() && b[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return Err(Error::Parse { pos: start, msg: "expected a non-negative integer".into() });
            }
            s[start..*pos]
                .parse()
                .map_err(|_| Error::Parse { pos: start, msg: "integer out of range".into() })
        };
        expect(&mut pos, b'(', "`(`")?;
        let d = int(&mut pos)?;
        let mut mults = Vec::new();
        skip(&mut pos);
        if b.get(pos) == Some(&b';') {
            pos += 1;
            loop {
                let m = int(&mut pos)?;
                skip(&mut pos);
                let mut reps = 1;
                if b.get(pos) == Some(&b'^') {
                    pos += 1;
                    reps = int(&mut pos)?;
                    if reps > 10_000 {
                        return Err(Error::Parse { pos, msg: "repetition count too large".into() });
                    }
                    skip(&mut pos);
                }
                mults.extend(std::iter::repeat(m).take(reps as usize));
                match b.get(pos) {
                    Some(b',') => pos += 1,
                    _ => break,
                }
            }
        }
        expect(&mut pos, b')', "`)`")?;
        skip(&mut pos);
        if pos != b.len() {
            return Err(Error::Parse { pos, msg: "unexpected trailing input".into() });
        }
        MultiplicityVector::new(d, mults)
    }
}

fn check_indices(idx: &[usize]) -> Result<()> {
    for (a, i) in idx.iter().enumerate() {
        if idx[..a].contains(i) {
            return Err(Error::Precondition(format!("index {i} repeated")));
        }
    }
    Ok(())
}

/// Standard quadratic transformation based at the points with indices i, j, k.
pub fn quadratic_transform(v: &MultiplicityVector, i: usize, j: usize, k: usize) -> Result<MultiplicityVector> {
    check_indices(&[i, j, k])?;
    let (mi, mj, mk) = (v.mult(i), v.mult(j), v.mult(k));
    let d = v.d;
    let d2 = error::sub(error::mul(2, d)?, mi + mj + mk)?;
    let new = [d - mj - mk, d - mi - mk, d - mi - mj];
    if d2 < 0 || new.iter().any(|x| *x < 0) {
        return Err(Error::NotAdmissible(format!(
            "quadratic transformation of {v} at multiplicities ({mi},{mj},{mk}) gives degree {d2} and multiplicities ({},{},{})",
            new[0], new[1], new[2]
        )));
    }
    let width = v.mults.len().max(i + 1).max(j + 1).max(k + 1);
    let mut mults: Vec<i64> = (0..width).map(|x| v.mult(x)).collect();
    mults[i] = new[0];
    mults[j] = new[1];
    mults[k] = new[2];
    Ok(MultiplicityVector::normalized(d2, mults))
}

/// The quintic transformation based at six points, e0 ↦ 5e0 - 2(e1+…+e6),
/// computed as a product of three reflections in the plane lattice.
pub fn quintic_transform(v: &MultiplicityVector, idx: [usize; 6]) -> Result<MultiplicityVector> {
    check_indices(&idx)?;
    let width = v.mults.len().max(idx.iter().max().expect("six indices") + 1);
    let lattice = make_lattice(BaseKind::P2, width);
    let mut coeffs = vec![0i64; width + 1];
    coeffs[0] = v.d;
    for x in 0..width {
        coeffs[x + 1] = -v.mult(x);
    }
    let c = lattice.class(coeffs)?;
    let root = |pts: &[usize]| -> Result<DivisorClass> {
        let mut r = vec![0i64; width + 1];
        r[0] = 1;
        for p in pts {
            r[p + 1] = -1;
        }
        lattice.class(r)
    };
    let r1 = root(&idx[..3])?;
    let r2 = root(&idx[3..])?;
    let out = c.reflect(&r1)?.reflect(&r2)?.reflect(&r1)?;
    let w = out.coeffs();
    if w[0] < 0 || w[1..].iter().any(|x| *x > 0) {
        return Err(Error::NotAdmissible(format!("quintic transformation of {v} gives {out}")));
    }
    Ok(MultiplicityVector::normalized(w[0], w[1..].iter().map(|x| -x).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Quadratic,
    Quintic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub indices: Vec<usize>,
    /// Multiplicities at the chosen centers before the step.
    pub center_mults: Vec<i64>,
    /// Number of centers placed at general points (multiplicity 0).
    pub general_points: usize,
    pub before: MultiplicityVector,
    pub after: MultiplicityVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub input: MultiplicityVector,
    pub steps: Vec<Step>,
    pub result: MultiplicityVector,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{error} (after {} steps)", steps.len())]
pub struct ReductionError {
    pub error: Error,
    pub steps: Vec<Step>,
}

/// Centers for the next greedy step: the three largest singular points, padded with general points.
fn greedy_centers(v: &MultiplicityVector) -> [usize; 3] {
    let singular = v.singular_count();
    let mut idx = [0usize; 3];
    let mut next_general = v.mults.len();
    for (slot, x) in idx.iter_mut().enumerate() {
        if slot < singular {
            *x = slot;
        } else {
            *x = next_general;
            next_general += 1;
        }
    }
    idx
}

/// Greedy Noether reduction: transform at the three largest singular points while their
/// multiplicities sum to more than the degree.
pub fn noether_reduce(v: &MultiplicityVector, force: bool) -> std::result::Result<Reduction, ReductionError> {
    let fail = |error: Error, steps: Vec<Step>| ReductionError { error, steps };
    if !force {
        match v.genus_proxy() {
            Ok(0) => {}
            Ok(g) => {
                return Err(fail(
                    Error::Precondition(format!("{v} has genus proxy {g}; pass force to reduce anyway")),
                    vec![],
                ))
            }
            Err(e) => return Err(fail(e, vec![])),
        }
    }
    let mut cur = v.clone();
    let mut steps = Vec::new();
    loop {
        let idx = greedy_centers(&cur);
        let center_mults: Vec<i64> = idx.iter().map(|&i| cur.mult(i)).collect();
        if center_mults.iter().sum::<i64>() <= cur.d {
            return Ok(Reduction { input: v.clone(), steps, result: cur });
        }
        let next = match quadratic_transform(&cur, idx[0], idx[1], idx[2]) {
            Ok(n) => n,
            Err(e) => return Err(fail(e, steps)),
        };
        steps.push(Step {
            kind: StepKind::Quadratic,
            indices: idx.to_vec(),
            general_points: idx.iter().filter(|&&i| i >= cur.mults.len()).count(),
            center_mults,
            before: cur.clone(),
            after: next.clone(),
        });
        cur = next;
    }
}

/// Singular plane curve data of degree 4 to 6 with genus proxy 0, no point of multiplicity
/// d-1, a point of multiplicity at least 3 when d = 6, and passing the Bezout filter.
pub fn low_degree_rational_family() -> Vec<MultiplicityVector> {
    fn rec(d: i64, budget: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<MultiplicityVector>) {
        if budget == 0 {
            out.push(MultiplicityVector::normalized(d, cur.clone()));
            return;
        }
        for m in (2..=max).rev() {
            let cost = m * (m - 1) / 2;
            if cost <= budget {
                cur.push(m);
                rec(d, budget - cost, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for d in 4..=6 {
        let g = (d - 1) * (d - 2) / 2;
        let mut all = Vec::new();
        rec(d, g, d - 2, &mut Vec::new(), &mut all);
        out.extend(
            all.into_iter()
                .filter(|v| d != 6 || v.mults.first().is_some_and(|&m| m >= 3))
                .filter(|v| v.bezout_plausible()),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(s: &str) -> MultiplicityVector {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(mv("(6; 2,2, 2)").to_string(), "(6;2,2,2)");
        assert_eq!(mv("(5;2^6)").to_string(), "(5;2,2,2,2,2,2)");
        assert_eq!(mv("(2)").to_string(), "(2)");
        assert_eq!(mv("(4;0,2,1)").to_string(), "(4;2,1)");
        for (bad, at) in [("6;2)", 0), ("(6;2,)", 5), ("(6;2", 4), ("(6;2) x", 6), ("(-1)", 1)] {
            match bad.parse::<MultiplicityVector>() {
                Err(Error::Parse { pos, .. }) => assert_eq!(pos, at, "{bad}"),
                other => panic!("{bad}: {other:?}"),
            }
        }
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(quadratic_transform(&mv("(4;2,2,2)"), 0, 1, 2).unwrap(), mv("(2)"));
        let r = quadratic_transform(&mv("(5;3,2,2,2)"), 0, 1, 2).unwrap();
        assert_eq!(r.singular_part(), mv("(3;2)"));
        assert_eq!(r, mv("(3;2,1)"));
        assert_eq!(quadratic_transform(&mv("(6;4,2,2,2,2)"), 0, 1, 2).unwrap(), mv("(4;2,2,2)"));
        assert!(matches!(
            quadratic_transform(&mv("(1;1,1,1)"), 0, 1, 2),
            Err(Error::NotAdmissible(_))
        ));
        assert!(quadratic_transform(&mv("(4;2,2,2)"), 0, 0, 1).is_err());
    }

    #[test]
    fn general_points_may_pad() {
        let r = quadratic_transform(&mv("(3;2)"), 0, 1, 2).unwrap();
        assert_eq!(r, mv("(4;3,1,1)"));
    }

    #[test]
    fn reduction_examples() {
        let r = noether_reduce(&mv("(6;3,3,3,2)"), false).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.result, mv("(3;2)"));
        let r = noether_reduce(&mv("(3;2)"), false).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.result, mv("(3;2)"));
        let r = noether_reduce(&mv("(5;2,2,2,2,2,2)"), false).unwrap();
        assert_eq!(r.result, mv("(2;1,1,1)"));
        assert!(noether_reduce(&mv("(4;1)"), false).is_err());
        let e = noether_reduce(&mv("(5;3,3)"), false).unwrap_err();
        assert!(matches!(e.error, Error::NotAdmissible(_)));
    }

    #[test]
    fn quintic_examples() {
        assert_eq!(quintic_transform(&mv("(5;2^6)"), [0, 1, 2, 3, 4, 5]).unwrap(), mv("(1)"));
        assert_eq!(quintic_transform(&mv("(5;2^7)"), [0, 1, 2, 3, 4, 5]).unwrap().degree(), 1);
        assert_eq!(quintic_transform(&mv("(6;2^6)"), [0, 1, 2, 3, 4, 5]).unwrap(), mv("(6;2^6)"));
        assert_eq!(quintic_transform(&mv("(1)"), [0, 1, 2, 3, 4, 5]).unwrap(), mv("(5;2^6)"));
    }

    #[test]
    fn class_bridge() {
        let c = mv("(6;2^10)").to_class().unwrap();
        assert_eq!(c.to_string(), "6e0 - 2e1 - 2e2 - 2e3 - 2e4 - 2e5 - 2e6 - 2e7 - 2e8 - 2e9 - 2e10");
        let e0 = make_lattice(BaseKind::P2, 3).basis(0);
        assert_eq!(MultiplicityVector::from_class(&e0).unwrap(), mv("(1)"));
        let c = mv("(4;2,2,2)").to_class().unwrap();
        assert_eq!(c.to_string(), "4e0 - 2e1 - 2e2 - 2e3");
        assert_eq!(c.arithmetic_genus().unwrap(), 0);
        let bad = make_lattice(BaseKind::P2, 1).class(vec![1, 1]).unwrap();
        assert!(MultiplicityVector::from_class(&bad).is_err());
    }

    #[test]
    fn rational_family_has_seven_members() {
        let fam: Vec<String> = low_degree_rational_family().iter().map(|v| v.to_string()).collect();
        let mut expected = vec![
            "(4;2,2,2)",
            "(5;3,2,2,2)",
            "(5;2,2,2,2,2,2)",
            "(6;4,2,2,2,2)",
            "(6;3,3,3,2)",
            "(6;3,3,2,2,2,2)",
            "(6;3,2,2,2,2,2,2,2)",
        ];
        let mut got = fam.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }
}

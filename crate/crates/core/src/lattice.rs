//! Picard lattices of blow-ups of the plane and of Hirzebruch surfaces.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{self, Error, Result};
use crate::expr::{self, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseKind {
    P2,
    #[serde(rename = "Fb")]
    Hirzebruch(u32),
}

impl BaseKind {
    /// Rank of the Picard lattice of the base surface itself.
    pub fn base_rank(self) -> usize {
        match self {
            BaseKind::P2 => 1,
            BaseKind::Hirzebruch(_) => 2,
        }
    }

    pub fn base_k_squared(self) -> i64 {
        match self {
            BaseKind::P2 => 9,
            BaseKind::Hirzebruch(_) => 8,
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::P2 => write!(f, "P2"),
            BaseKind::Hirzebruch(b) => write!(f, "F{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeDescriptor {
    pub base: BaseKind,
    pub n: usize,
}

impl fmt::Display for LatticeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} blown up {} times", self.base, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialShape {
    SmoothRational,
    Genus1Irreducible,
}

#[derive(Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    descriptor: LatticeDescriptor,
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    canonical: Vec<i64>,
}

pub fn make_lattice(base: BaseKind, n_blowups: usize) -> Arc<IntersectionLattice> {
    IntersectionLattice::new(base, n_blowups)
}

impl IntersectionLattice {
    pub fn new(base: BaseKind, n: usize) -> Arc<Self> {
        let r = base.base_rank() + n;
        let mut gram = vec![vec![0i64; r]; r];
        let mut labels = Vec::with_capacity(r);
        let mut canonical = vec![0i64; r];
        match base {
            BaseKind::P2 => {
                labels.push("e0".to_string());
                gram[0][0] = 1;
                canonical[0] = -3;
            }
            BaseKind::Hirzebruch(b) => {
                labels.push("f".to_string());
                labels.push("s0".to_string());
                gram[0][1] = 1;
                gram[1][0] = 1;
                gram[1][1] = -(b as i64);
                canonical[0] = -(b as i64 + 2);
                canonical[1] = -2;
            }
        }
        let off = base.base_rank();
        for i in 0..n {
            labels.push(format!("e{}", i + 1));
            gram[off + i][off + i] = -1;
            canonical[off + i] = 1;
        }
        Arc::new(IntersectionLattice {
            descriptor: LatticeDescriptor { base, n },
            labels,
            gram,
            canonical,
        })
    }

    pub fn from_descriptor(d: LatticeDescriptor) -> Arc<Self> {
        Self::new(d.base, d.n)
    }

    pub fn descriptor(&self) -> LatticeDescriptor {
        self.descriptor
    }

    pub fn base(&self) -> BaseKind {
        self.descriptor.base
    }

    pub fn n_blowups(&self) -> usize {
        self.descriptor.n
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical_coeffs(&self) -> &[i64] {
        &self.canonical
    }

    /// Index of the first exceptional basis vector `e1`.
    pub fn exceptional_offset(&self) -> usize {
        self.descriptor.base.base_rank()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn pair_coeffs(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        let r = self.rank();
        for v in [a, b] {
            if v.len() != r {
                return Err(Error::RankMismatch { expected: r, got: v.len() });
            }
        }
        let mut acc = 0i64;
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                let g = self.gram[i][j];
                if g != 0 && b[j] != 0 {
                    acc = error::add(acc, error::mul(error::mul(a[i], g)?, b[j])?)?;
                }
            }
        }
        Ok(acc)
    }

    pub fn k_squared(&self) -> i64 {
        self.descriptor.base.base_k_squared() - self.descriptor.n as i64
    }

    pub fn class(self: &Arc<Self>, coeffs: Vec<i64>) -> Result<DivisorClass> {
        if coeffs.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: coeffs.len() });
        }
        Ok(DivisorClass { lattice: Arc::clone(self), coeffs })
    }

    pub fn zero(self: &Arc<Self>) -> DivisorClass {
        DivisorClass { lattice: Arc::clone(self), coeffs: vec![0; self.rank()] }
    }

    pub fn basis(self: &Arc<Self>, i: usize) -> DivisorClass {
        let mut c = self.zero();
        c.coeffs[i] = 1;
        c
    }

    /// Exceptional class `e_i`, 1-based as in the labels.
    pub fn exceptional(self: &Arc<Self>, i: usize) -> Result<DivisorClass> {
        if i == 0 || i > self.n_blowups() {
            return Err(Error::UnknownLabel(format!("e{i}")));
        }
        Ok(self.basis(self.exceptional_offset() + i - 1))
    }

    pub fn canonical(self: &Arc<Self>) -> DivisorClass {
        DivisorClass { lattice: Arc::clone(self), coeffs: self.canonical.clone() }
    }

    /// Parse a class such as `6e0 - 2e1 - 2e2`, `f + s0 - e1` or `-2K`.
    pub fn parse_class(self: &Arc<Self>, text: &str) -> Result<DivisorClass> {
        let e = expr::parse(text)?;
        let coeffs = e.evaluate(self.rank(), |s| match s {
            Symbol::Name(n) if n == "K" => Ok(self.canonical.clone()),
            Symbol::Name(n) => self
                .index_of(n)
                .map(|i| self.basis(i).coeffs)
                .ok_or_else(|| Error::UnknownLabel(n.clone())),
            other => Err(Error::UnknownLabel(other.to_string())),
        })?;
        self.class(coeffs)
    }

    /// A Z-basis of the orthogonal complement of K.
    pub fn canonical_orthogonal_basis(self: &Arc<Self>) -> Result<Vec<DivisorClass>> {
        let r = self.rank();
        let mut w = vec![0i64; r];
        for (j, wj) in w.iter_mut().enumerate() {
            for i in 0..r {
                *wj = error::add(*wj, error::mul(self.canonical[i], self.gram[i][j])?)?;
            }
        }
        let kernel = integer_kernel_of_row(&w)?;
        kernel.into_iter().map(|v| self.class(v)).collect()
    }
}

/// Columns spanning {x : w·x = 0} over Z, by unimodular column reduction.
fn integer_kernel_of_row(w: &[i64]) -> Result<Vec<Vec<i64>>> {
    let r = w.len();
    let mut row = w.to_vec();
    let mut u: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut c = vec![0; r];
            c[i] = 1;
            c
        })
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..r).filter(|&i| row[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let pivot = *nonzero.iter().min_by_key(|&&i| row[i].abs()).expect("nonempty");
        for &i in &nonzero {
            if i == pivot {
                continue;
            }
            let q = row[i] / row[pivot];
            row[i] = error::sub(row[i], error::mul(q, row[pivot])?)?;
            for k in 0..r {
                u[i][k] = error::sub(u[i][k], error::mul(q, u[pivot][k])?)?;
            }
        }
    }
    Ok((0..r).filter(|&i| row[i] == 0).map(|i| u[i].clone()).collect())
}

#[derive(Clone)]
pub struct DivisorClass {
    lattice: Arc<IntersectionLattice>,
    coeffs: Vec<i64>,
}

impl PartialEq for DivisorClass {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.descriptor == other.lattice.descriptor && self.coeffs == other.coeffs
    }
}

impl Eq for DivisorClass {}

impl std::hash::Hash for DivisorClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.lattice.descriptor.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivisorClass({self})")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.coeffs.iter().zip(self.lattice.labels.iter()) {
            if *c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{label}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    lattice: LatticeDescriptor,
    coeffs: Vec<i64>,
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassRepr { lattice: self.lattice.descriptor, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ClassRepr::deserialize(d)?;
        IntersectionLattice::from_descriptor(repr.lattice)
            .class(repr.coeffs)
            .map_err(serde::de::Error::custom)
    }
}

impl DivisorClass {
    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn coeff(&self, label: &str) -> Option<i64> {
        self.lattice.index_of(label).map(|i| self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_lattice(&self, other: &DivisorClass) -> Result<()> {
        if self.lattice.descriptor != other.lattice.descriptor {
            return Err(Error::LatticeMismatch(
                self.lattice.descriptor,
                other.lattice.descriptor,
            ));
        }
        Ok(())
    }

    pub fn dot(&self, other: &DivisorClass) -> Result<i64> {
        self.same_lattice(other)?;
        self.lattice.pair_coeffs(&self.coeffs, &other.coeffs)
    }

    pub fn self_intersection(&self) -> Result<i64> {
        self.dot(self)
    }

    pub fn canonical_degree(&self) -> Result<i64> {
        self.lattice.pair_coeffs(&self.lattice.canonical, &self.coeffs)
    }

    fn zip_with(&self, other: &DivisorClass, f: fn(i64, i64) -> Result<i64>) -> Result<Self> {
        self.same_lattice(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(*a, *b))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass { lattice: Arc::clone(&self.lattice), coeffs })
    }

    pub fn try_add(&self, other: &DivisorClass) -> Result<Self> {
        self.zip_with(other, error::add)
    }

    pub fn try_sub(&self, other: &DivisorClass) -> Result<Self> {
        self.zip_with(other, error::sub)
    }

    pub fn try_scale(&self, k: i64) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| error::mul(*c, k)).collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass { lattice: Arc::clone(&self.lattice), coeffs })
    }

    pub fn arithmetic_genus(&self) -> Result<i64> {
        let s = error::add(self.self_intersection()?, self.canonical_degree()?)?;
        if s % 2 != 0 {
            return Err(Error::Parity { what: "C^2 + K.C", value: s });
        }
        error::add(s / 2, 1)
    }

    pub fn riemann_roch_chi(&self) -> Result<i64> {
        let s = error::sub(self.self_intersection()?, self.canonical_degree()?)?;
        if s % 2 != 0 {
            return Err(Error::Parity { what: "D^2 - D.K", value: s });
        }
        error::add(s / 2, 1)
    }

    pub fn reflect(&self, root: &DivisorClass) -> Result<Self> {
        let r2 = root.self_intersection()?;
        if r2 != -2 {
            return Err(Error::NotARoot(r2));
        }
        let t = self.dot(root)?;
        self.try_add(&root.try_scale(t)?)
    }

    pub fn special_h0(&self, shape: SpecialShape) -> Result<i64> {
        let l2 = self.self_intersection()?;
        let g = self.arithmetic_genus()?;
        match shape {
            SpecialShape::SmoothRational => {
                if l2 < 0 || g != 0 {
                    return Err(Error::Precondition(format!(
                        "smooth rational shape needs L^2 >= 0 and genus 0 (L^2 = {l2}, genus = {g})"
                    )));
                }
                error::add(l2, 2)
            }
            SpecialShape::Genus1Irreducible => {
                if l2 < 1 || g != 1 {
                    return Err(Error::Precondition(format!(
                        "genus-one shape needs L^2 >= 1 and genus 1 (L^2 = {l2}, genus = {g})"
                    )));
                }
                error::add(l2, 1)
            }
        }
    }
}

pub fn pair(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    a.dot(b)
}

pub fn reflect(x: &DivisorClass, root: &DivisorClass) -> Result<DivisorClass> {
    x.reflect(root)
}

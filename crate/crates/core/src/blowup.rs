//! Blow-up sequences with infinitely near centers, transforms and class identities.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{self, Error, Result};
use crate::expr::{self, Symbol};
use crate::lattice::{BaseKind, DivisorClass, IntersectionLattice};

/// A class on the base surface, as coefficients or as an expression like `2f + s0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Coeffs(Vec<i64>),
    Expr(String),
}

impl ClassSpec {
    pub fn resolve(&self, lattice: &Arc<IntersectionLattice>) -> Result<DivisorClass> {
        match self {
            ClassSpec::Coeffs(v) => lattice.class(v.clone()),
            ClassSpec::Expr(s) => lattice.parse_class(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Center {
    pub id: String,
    #[serde(default)]
    pub parent: Option<String>,
    #[serde(default)]
    pub on: Vec<String>,
}

impl Center {
    pub fn new(id: &str) -> Self {
        Center { id: id.to_string(), parent: None, on: Vec::new() }
    }

    pub fn near(mut self, parent: &str) -> Self {
        self.parent = Some(parent.to_string());
        self
    }

    pub fn on(mut self, labels: &[&str]) -> Self {
        self.on.extend(labels.iter().map(|s| s.to_string()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveAssignment {
    pub label: String,
    pub class: ClassSpec,
    #[serde(default)]
    pub mults: BTreeMap<String, i64>,
}

impl CurveAssignment {
    pub fn new(label: &str, class: &str) -> Self {
        CurveAssignment {
            label: label.to_string(),
            class: ClassSpec::Expr(class.to_string()),
            mults: BTreeMap::new(),
        }
    }

    pub fn mult(mut self, center: &str, m: i64) -> Self {
        self.mults.insert(center.to_string(), m);
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSequence {
    base: BaseKind,
    #[serde(default)]
    centers: Vec<Center>,
    #[serde(default)]
    curves: Vec<CurveAssignment>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub struct BlowUpSequence {
    base: BaseKind,
    centers: Vec<Center>,
    curves: Vec<CurveAssignment>,
    #[serde(skip)]
    base_lattice: Arc<IntersectionLattice>,
    #[serde(skip)]
    lattice: Arc<IntersectionLattice>,
    #[serde(skip)]
    center_index: HashMap<String, usize>,
    #[serde(skip)]
    curve_data: HashMap<String, (DivisorClass, Vec<i64>)>,
}

impl TryFrom<RawSequence> for BlowUpSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        BlowUpSequence::new(raw.base, raw.centers, raw.curves)
    }
}

impl From<BlowUpSequence> for RawSequence {
    fn from(s: BlowUpSequence) -> Self {
        RawSequence { base: s.base, centers: s.centers, curves: s.curves }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: DivisorClass,
    pub rhs: DivisorClass,
    pub residual: DivisorClass,
}

impl BlowUpSequence {
    pub fn new(base: BaseKind, centers: Vec<Center>, curves: Vec<CurveAssignment>) -> Result<Self> {
        let base_lattice = IntersectionLattice::new(base, 0);
        let lattice = IntersectionLattice::new(base, centers.len());
        let mut center_index = HashMap::new();
        let curve_labels: Vec<&str> = curves.iter().map(|c| c.label.as_str()).collect();
        for (i, c) in centers.iter().enumerate() {
            if curve_labels.contains(&c.id.as_str()) {
                return Err(Error::Invalid(format!("`{}` names both a center and a curve", c.id)));
            }
            if let Some(p) = &c.parent {
                if !center_index.contains_key(p) {
                    return Err(Error::Invalid(format!(
                        "center `{}` has parent `{p}`, which is not an earlier center",
                        c.id
                    )));
                }
            }
            for label in &c.on {
                if !curve_labels.contains(&label.as_str()) && !center_index.contains_key(label) {
                    return Err(Error::UnknownLabel(label.clone()));
                }
            }
            if center_index.insert(c.id.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate center id `{}`", c.id)));
            }
        }
        let mut seq = BlowUpSequence {
            base,
            centers,
            curves,
            base_lattice,
            lattice,
            center_index,
            curve_data: HashMap::new(),
        };
        for c in seq.curves.clone() {
            if seq.curve_data.contains_key(&c.label) {
                return Err(Error::Invalid(format!("duplicate curve label `{}`", c.label)));
            }
            let class = c.class.resolve(&seq.base_lattice)?;
            let mults = seq.resolve_mults(&c)?;
            seq.curve_data.insert(c.label.clone(), (class, mults));
        }
        Ok(seq)
    }

    fn resolve_mults(&self, c: &CurveAssignment) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.centers.len()];
        for (id, m) in &c.mults {
            let i = *self.center_index.get(id).ok_or_else(|| Error::UnknownLabel(id.clone()))?;
            if *m < 0 {
                return Err(Error::Invalid(format!("negative multiplicity of {} at {id}", c.label)));
            }
            if *m == 0 && self.centers[i].on.contains(&c.label) {
                return Err(Error::Invalid(format!(
                    "{} is listed through {id} but given multiplicity 0",
                    c.label
                )));
            }
            out[i] = *m;
        }
        for (i, center) in self.centers.iter().enumerate() {
            if !c.mults.contains_key(&center.id) && center.on.contains(&c.label) {
                out[i] = 1;
            }
        }
        for (i, center) in self.centers.iter().enumerate() {
            if let Some(p) = &center.parent {
                let pi = self.center_index[p];
                if out[i] > out[pi] {
                    return Err(Error::Invalid(format!(
                        "multiplicity of {} at {} ({}) exceeds that at its parent {p} ({})",
                        c.label, center.id, out[i], out[pi]
                    )));
                }
            }
        }
        Ok(out)
    }

    pub fn base(&self) -> BaseKind {
        self.base
    }

    pub fn centers(&self) -> &[Center] {
        &self.centers
    }

    pub fn curves(&self) -> &[CurveAssignment] {
        &self.curves
    }

    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn base_lattice(&self) -> &Arc<IntersectionLattice> {
        &self.base_lattice
    }

    pub fn k_squared(&self) -> i64 {
        self.base.base_k_squared() - self.centers.len() as i64
    }

    fn center(&self, id: &str) -> Result<usize> {
        self.center_index.get(id).copied().ok_or_else(|| Error::UnknownLabel(id.to_string()))
    }

    fn curve(&self, label: &str) -> Result<&(DivisorClass, Vec<i64>)> {
        self.curve_data.get(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn base_class(&self, label: &str) -> Result<DivisorClass> {
        Ok(self.curve(label)?.0.clone())
    }

    pub fn multiplicities(&self, label: &str) -> Result<BTreeMap<String, i64>> {
        let (_, m) = self.curve(label)?;
        Ok(self.centers.iter().zip(m).map(|(c, v)| (c.id.clone(), *v)).collect())
    }

    /// Pull back a base class with zero exceptional coefficients.
    pub fn lift(&self, base_class: &DivisorClass) -> Result<DivisorClass> {
        if base_class.lattice().descriptor() != self.base_lattice.descriptor() {
            return Err(Error::LatticeMismatch(
                base_class.lattice().descriptor(),
                self.base_lattice.descriptor(),
            ));
        }
        let mut v = base_class.coeffs().to_vec();
        v.resize(self.lattice.rank(), 0);
        self.lattice.class(v)
    }

    pub fn total_transform(&self, label: &str) -> Result<DivisorClass> {
        self.lift(&self.curve(label)?.0)
    }

    /// Total transform of the exceptional curve of center `id`.
    pub fn exceptional_class(&self, id: &str) -> Result<DivisorClass> {
        self.lattice.exceptional(self.center(id)? + 1)
    }

    pub fn proper_transform(&self, label: &str) -> Result<DivisorClass> {
        let (class, mults) = self.curve(label)?;
        let mut out = self.lift(class)?;
        let off = self.lattice.exceptional_offset();
        let mut v = out.coeffs().to_vec();
        for (i, m) in mults.iter().enumerate() {
            v[off + i] = error::sub(v[off + i], *m)?;
        }
        out = self.lattice.class(v)?;
        Ok(out)
    }

    /// Proper transform of the exceptional curve of center `id` on the final surface.
    pub fn exceptional_curve(&self, id: &str) -> Result<DivisorClass> {
        let p = self.center(id)?;
        let mut c = self.lattice.exceptional(p + 1)?;
        for (q, center) in self.centers.iter().enumerate() {
            let lies_on = center.parent.as_deref() == Some(id) || center.on.iter().any(|l| l == id);
            if q > p && lies_on {
                c = c.try_sub(&self.lattice.exceptional(q + 1)?)?;
            }
        }
        Ok(c)
    }

    /// Evaluate an expression over curve labels, basis labels, `K`,
    /// `e(p)` (total exceptional class), `E(p)` (exceptional curve),
    /// `tot(C)` (total transform) and `pt(C)` (proper transform).
    pub fn eval(&self, text: &str) -> Result<DivisorClass> {
        let e = expr::parse(text)?;
        let coeffs = e.evaluate(self.lattice.rank(), |s| {
            let c = match s {
                Symbol::Name(n) if n == "K" => self.lattice.canonical(),
                Symbol::Name(n) if self.curve_data.contains_key(n) => self.proper_transform(n)?,
                Symbol::Name(n) => match self.lattice.index_of(n) {
                    Some(i) => self.lattice.basis(i),
                    None => return Err(Error::UnknownLabel(n.clone())),
                },
                Symbol::Call(f, a) => match f.as_str() {
                    "e" => self.exceptional_class(a)?,
                    "E" => self.exceptional_curve(a)?,
                    "tot" => self.total_transform(a)?,
                    "pt" => self.proper_transform(a)?,
                    _ => return Err(Error::UnknownLabel(s.to_string())),
                },
            };
            Ok(c.into_coeffs())
        })?;
        self.lattice.class(coeffs)
    }

    pub fn verify_class_identity(&self, lhs: &str, rhs: &str) -> Result<IdentityCheck> {
        let l = self.eval(lhs)?;
        let r = self.eval(rhs)?;
        let residual = l.try_sub(&r)?;
        Ok(IdentityCheck { holds: residual.is_zero(), lhs: l, rhs: r, residual })
    }

    /// e_p·D for every center, in blow-up order.
    pub fn exceptional_degrees(&self, d: &DivisorClass) -> Result<Vec<(String, i64)>> {
        self.centers
            .iter()
            .map(|c| Ok((c.id.clone(), self.exceptional_class(&c.id)?.dot(d)?)))
            .collect()
    }
}

/// Successive blow-downs of (-1)-classes, tracked inside the original lattice.
///
/// Classes on the contracted surface are represented by their pullbacks, so all
/// pairings are computed in the lattice of the surface before contraction.
#[derive(Debug, Clone)]
pub struct Contraction {
    lattice: Arc<IntersectionLattice>,
    epsilons: Vec<DivisorClass>,
}

impl Contraction {
    pub fn new(lattice: &Arc<IntersectionLattice>) -> Self {
        Contraction { lattice: Arc::clone(lattice), epsilons: Vec::new() }
    }

    /// Pullback of the pushforward of `d`.
    pub fn image(&self, d: &DivisorClass) -> Result<DivisorClass> {
        let mut out = d.clone();
        for eps in &self.epsilons {
            out = out.try_add(&eps.try_scale(d.dot(eps)?)?)?;
        }
        Ok(out)
    }

    pub fn canonical(&self) -> Result<DivisorClass> {
        let mut k = self.lattice.canonical();
        for eps in &self.epsilons {
            k = k.try_sub(eps)?;
        }
        Ok(k)
    }

    pub fn k_squared(&self) -> Result<i64> {
        self.canonical()?.self_intersection()
    }

    pub fn contracted(&self) -> usize {
        self.epsilons.len()
    }

    /// Blow down the image of `c`, which must be a (-1)-class on the current surface.
    pub fn contract(&mut self, c: &DivisorClass) -> Result<()> {
        let eps = self.image(c)?;
        let sq = eps.self_intersection()?;
        let kd = self.canonical()?.dot(&eps)?;
        if sq != -1 || kd != -1 {
            return Err(Error::Precondition(format!(
                "image {eps} has self-intersection {sq} and canonical degree {kd}; not a (-1)-class"
            )));
        }
        self.epsilons.push(eps);
        Ok(())
    }
}

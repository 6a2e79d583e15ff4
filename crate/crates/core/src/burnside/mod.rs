//! The Burnside ring Ω(G) of a finite group and its rational and p-local
//! forms.
//!
//! Elements are exact-rational coefficient vectors on the basis
//! `{[G/H] | (H) ∈ C(G)}`. All ring arithmetic is routed through ghost
//! (marks) coordinates: the mark homomorphism sends an element to its vector
//! of fixed-point counts, where multiplication is pointwise; the inverse is
//! back-substitution on the triangular table of marks. Membership in Ω(G)
//! or Ω_p(G) is a predicate on coefficients (integral / p-integral), not a
//! separate coefficient type.

mod congruence;
mod idempotent;

pub use congruence::{
    check_counting_congruence, check_wh_congruences, CountingReport, WhClassCheck,
    WhCongruenceReport,
};
pub use idempotent::{
    p_local_idempotent, p_local_idempotents, rational_idempotent, rational_idempotents,
};

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::group::{GroupSpec, OrbitDecomposition, SubgroupLattice};
use crate::rational::{self, Rat};
use crate::{Error, Result};

/// The table of marks: m(H, K) = |(G/K)^H| over conjugacy classes of
/// subgroups, rows indexed by (H), columns by (K). Triangular in the
/// subconjugacy order with |WH| on the diagonal.
#[derive(Clone)]
pub struct TableOfMarks {
    lattice: SubgroupLattice,
}

impl TableOfMarks {
    pub fn new(lattice: &SubgroupLattice) -> TableOfMarks {
        lattice.marks_matrix();
        TableOfMarks {
            lattice: lattice.clone(),
        }
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn class_count(&self) -> usize {
        self.lattice.class_count()
    }

    pub fn entry(&self, h: usize, k: usize) -> i64 {
        self.lattice.marks_matrix()[h][k]
    }

    pub fn row(&self, h: usize) -> &[i64] {
        &self.lattice.marks_matrix()[h]
    }
}

/// An element of Ω_ℚ(G): a finitely supported exact-rational coefficient
/// vector on the `[G/H]` basis.
#[derive(Clone, Debug)]
pub struct BurnsideElement {
    lattice: SubgroupLattice,
    coeffs: BTreeMap<usize, Rat>,
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.coeffs == other.coeffs
    }
}
impl Eq for BurnsideElement {}

/// The image of an element under all marks: one exact rational per subgroup
/// class (ghost coordinates).
#[derive(Clone, Debug)]
pub struct MarksVector {
    lattice: SubgroupLattice,
    values: Vec<Rat>,
}

impl PartialEq for MarksVector {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.values == other.values
    }
}
impl Eq for MarksVector {}

impl BurnsideElement {
    pub fn zero(lattice: &SubgroupLattice) -> BurnsideElement {
        BurnsideElement {
            lattice: lattice.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element [G/H] for a class index.
    pub fn basis(lattice: &SubgroupLattice, class: usize) -> BurnsideElement {
        assert!(class < lattice.class_count(), "class index out of range");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(class, Rat::one());
        BurnsideElement {
            lattice: lattice.clone(),
            coeffs,
        }
    }

    /// The unit [G/G].
    pub fn one(lattice: &SubgroupLattice) -> BurnsideElement {
        BurnsideElement::basis(lattice, lattice.full_class())
    }

    pub fn from_coeffs<I: IntoIterator<Item = (usize, Rat)>>(
        lattice: &SubgroupLattice,
        coeffs: I,
    ) -> BurnsideElement {
        let mut map = BTreeMap::new();
        for (class, c) in coeffs {
            assert!(class < lattice.class_count(), "class index out of range");
            if !c.is_zero() {
                let entry = map.entry(class).or_insert_with(Rat::zero);
                *entry += c;
                if entry.is_zero() {
                    map.remove(&class);
                }
            }
        }
        BurnsideElement {
            lattice: lattice.clone(),
            coeffs: map,
        }
    }

    /// The class of a decomposed G-set: Σ multiplicity · [G/stabilizer].
    pub fn from_orbits(
        lattice: &SubgroupLattice,
        decomposition: &OrbitDecomposition,
    ) -> BurnsideElement {
        BurnsideElement::from_coeffs(
            lattice,
            decomposition
                .orbits
                .iter()
                .map(|&(class, mult)| (class, rational::int(mult as i64))),
        )
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    /// Nonzero coefficients by class index.
    pub fn coeffs(&self) -> &BTreeMap<usize, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, class: usize) -> Rat {
        self.coeffs.get(&class).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Membership in Ω(G): all coefficients integral.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(rational::is_integer)
    }

    /// Membership in Ω_p(G): all reduced denominators coprime to p.
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coeffs.values().all(|c| rational::is_p_integral(c, p))
    }

    pub fn add(&self, rhs: &BurnsideElement) -> BurnsideElement {
        self.check_same(rhs);
        BurnsideElement::from_coeffs(
            &self.lattice,
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(&c, r)| (c, r.clone())),
        )
    }

    pub fn neg(&self) -> BurnsideElement {
        BurnsideElement {
            lattice: self.lattice.clone(),
            coeffs: self.coeffs.iter().map(|(&c, r)| (c, -r)).collect(),
        }
    }

    pub fn sub(&self, rhs: &BurnsideElement) -> BurnsideElement {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, r: &Rat) -> BurnsideElement {
        if r.is_zero() {
            return BurnsideElement::zero(&self.lattice);
        }
        BurnsideElement {
            lattice: self.lattice.clone(),
            coeffs: self.coeffs.iter().map(|(&c, v)| (c, v * r)).collect(),
        }
    }

    /// The mark homomorphism: value at (H) is Σ_K coeff(K) · m(H, K).
    pub fn marks(&self) -> MarksVector {
        let m = self.lattice.marks_matrix();
        let n = self.lattice.class_count();
        let values = (0..n)
            .map(|h| {
                let mut acc = Rat::zero();
                for (&k, c) in &self.coeffs {
                    let entry = m[h][k];
                    if entry != 0 {
                        acc += c * rational::int(entry);
                    }
                }
                acc
            })
            .collect();
        MarksVector {
            lattice: self.lattice.clone(),
            values,
        }
    }

    /// The unique rational preimage of a marks vector, by back-substitution
    /// on the triangular table of marks. `marks ∘ from_marks` and
    /// `from_marks ∘ marks` are exact identities.
    pub fn from_marks(v: &MarksVector) -> BurnsideElement {
        let lattice = &v.lattice;
        let m = lattice.marks_matrix();
        let n = lattice.class_count();
        let mut coeffs: Vec<Rat> = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let mut acc = v.values[i].clone();
            for j in i + 1..n {
                if m[i][j] != 0 && !coeffs[j].is_zero() {
                    acc -= &coeffs[j] * rational::int(m[i][j]);
                }
            }
            // diagonal entry is |WH|, never zero
            coeffs[i] = acc / rational::int(m[i][i]);
        }
        BurnsideElement::from_coeffs(lattice, coeffs.into_iter().enumerate())
    }

    /// Ring multiplication, computed pointwise in ghost coordinates.
    pub fn mul(&self, rhs: &BurnsideElement) -> BurnsideElement {
        self.check_same(rhs);
        BurnsideElement::from_marks(&self.marks().pointwise_mul(&rhs.marks()))
    }

    /// Multiplicative inverse in Ω_ℚ(G); fails with the witnessing class if
    /// any mark vanishes.
    pub fn invert(&self) -> Result<BurnsideElement> {
        Ok(BurnsideElement::from_marks(&self.marks().recip()?))
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> Result<BurnsideElement> {
        Ok(BurnsideElement::from_marks(&self.marks().pow(e)?))
    }

    fn check_same(&self, rhs: &BurnsideElement) {
        assert!(
            self.lattice == rhs.lattice,
            "Burnside elements over different lattices"
        );
    }

    pub fn to_spec(&self, group: GroupSpec) -> Result<BurnsideElementSpec> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&class, c)| {
                let (num, den) = rational::to_i64_pair(c).ok_or_else(|| {
                    Error::invariant("coefficient exceeds the JSON integer range")
                })?;
                Ok(CoeffSpec {
                    class_order: self.lattice.class(class).order(),
                    class_index: class,
                    num,
                    den,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BurnsideElementSpec { group, coeffs })
    }

    pub fn from_spec(lattice: &SubgroupLattice, spec: &BurnsideElementSpec) -> Result<Self> {
        let mut coeffs = Vec::new();
        for c in &spec.coeffs {
            if c.class_index >= lattice.class_count() {
                return Err(Error::argument(format!(
                    "class index {} out of range ({} classes)",
                    c.class_index,
                    lattice.class_count()
                )));
            }
            let order = lattice.class(c.class_index).order();
            if order != c.class_order {
                return Err(Error::argument(format!(
                    "class {} has order {}, element claims {}",
                    c.class_index, order, c.class_order
                )));
            }
            if c.den == 0 {
                return Err(Error::argument("zero denominator in coefficient"));
            }
            coeffs.push((c.class_index, rational::rat(c.num, c.den)));
        }
        Ok(BurnsideElement::from_coeffs(lattice, coeffs))
    }
}

impl MarksVector {
    pub fn from_values(lattice: &SubgroupLattice, values: Vec<Rat>) -> Result<MarksVector> {
        if values.len() != lattice.class_count() {
            return Err(Error::argument(format!(
                "marks vector length {} does not match {} classes",
                values.len(),
                lattice.class_count()
            )));
        }
        Ok(MarksVector {
            lattice: lattice.clone(),
            values,
        })
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Rat {
        &self.values[class]
    }

    pub fn pointwise_mul(&self, rhs: &MarksVector) -> MarksVector {
        assert!(
            self.lattice == rhs.lattice,
            "marks vectors over different lattices"
        );
        MarksVector {
            lattice: self.lattice.clone(),
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Pointwise reciprocal; reports the first class with a zero mark.
    pub fn recip(&self) -> Result<MarksVector> {
        self.pow(-1)
    }

    /// Pointwise integer power; negative exponents need all marks nonzero.
    pub fn pow(&self, e: i64) -> Result<MarksVector> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(class, v)| {
                rational::pow_signed(v, e).ok_or_else(|| {
                    Error::argument(format!(
                        "element is not invertible: mark at class {class} (order {}) is 0",
                        self.lattice.class(class).order()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MarksVector {
            lattice: self.lattice.clone(),
            values,
        })
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(rational::is_integer)
    }
}

/// JSON form of a Burnside element, tied to a group spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BurnsideElementSpec {
    pub group: GroupSpec,
    pub coeffs: Vec<CoeffSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffSpec {
    pub class_order: u32,
    pub class_index: usize,
    pub num: i64,
    pub den: i64,
}

/// Pretty form `3*[G/#2] - 1/3*[G/#0]` with classes by index, descending.
pub fn format_element(e: &BurnsideElement) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (&class, c)) in e.coeffs().iter().rev().enumerate() {
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if mag.is_one() {
            out.push_str(&format!("[G/#{class}]"));
        } else {
            out.push_str(&format!("{mag}*[G/#{class}]"));
        }
    }
    out
}

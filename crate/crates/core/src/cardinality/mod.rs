//! Height-1 symbolic cardinalities: Laurent polynomials in the formal symbol
//! `x = |BC_p|`, and the classifying-space formulas that produce them.
//!
//! At height 1 the cardinality of `BP` for a p-group `P` of order `p^m` is
//! the monomial `x^m`, and `x` is formally invertible, so results live in
//! Laurent polynomials with exact rational coefficients.
//!
//! `|BG|` for a general finite group comes from the partition of unity: the
//! unit of the p-localized Burnside ring (with the Sylow class inverted)
//! decomposes as the p-local idempotent attached to the trivial subgroup,
//!
//!   1 = e_p^1 = (1/|G|) Σ_D |D| λ(D, 1) [G/D],
//!
//! whose support consists of p-subgroup classes only. Mapping each `[G/D]`
//! to `x^{log_p |D|}` and summing gives `|BG|`. The same element equals the
//! alternating sum over non-empty sets of Sylow p-subgroups of
//! `(|∩Q|/|G|)·[G/∩Q]`; [`sylow_inclusion_exclusion`] computes that route
//! directly as a cross-check (it explodes combinatorially, so it is capped).
//!
//! Substituting `x = 1/p` recovers the classical homotopy cardinality
//! (`|BG| ↦ 1/|G|`), which the test suites use as an independent oracle.

mod space;

pub use space::{card_space, AbelianGSet, HomotopyLevelSpec, SpaceSpec, SpaceSpecJson};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, log_p_exact};
use crate::bits::BitSet;
use crate::burnside::{p_local_idempotent, BurnsideElement};
use crate::group::SubgroupLattice;
use crate::rational::{self, Rat};
use crate::{Error, Result};

/// Default cap on the Sylow count for the subset-sum route.
pub const DEFAULT_MAX_SYLOWS: usize = 14;

/// A Laurent polynomial Σ c_e · x^e in x = |BC_p| with exact rational
/// coefficients. The prime is part of the value; expressions over different
/// primes do not mix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardExpr {
    prime: u64,
    terms: BTreeMap<i64, Rat>,
}

impl CardExpr {
    pub fn zero(prime: u64) -> CardExpr {
        CardExpr {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(prime: u64, c: Rat) -> CardExpr {
        CardExpr::monomial(prime, 0, c)
    }

    pub fn monomial(prime: u64, exp: i64, coeff: Rat) -> CardExpr {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        CardExpr { prime, terms }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Terms by exponent, ascending; zero coefficients are never stored.
    pub fn terms(&self) -> &BTreeMap<i64, Rat> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_prime(&self, other: &CardExpr) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::argument(format!(
                "cannot combine expressions over x = |BC_{}| and x = |BC_{}|",
                self.prime, other.prime
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CardExpr) -> Result<CardExpr> {
        self.check_prime(other)?;
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            let entry = terms.entry(e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        Ok(CardExpr {
            prime: self.prime,
            terms,
        })
    }

    pub fn scale(&self, r: &Rat) -> CardExpr {
        if r.is_zero() {
            return CardExpr::zero(self.prime);
        }
        CardExpr {
            prime: self.prime,
            terms: self.terms.iter().map(|(&e, c)| (e, c * r)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: i64, coeff: &Rat) -> CardExpr {
        if coeff.is_zero() {
            return CardExpr::zero(self.prime);
        }
        CardExpr {
            prime: self.prime,
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    pub fn mul(&self, other: &CardExpr) -> Result<CardExpr> {
        self.check_prime(other)?;
        let mut out = CardExpr::zero(self.prime);
        for (&e, c) in &other.terms {
            out = out.add(&self.mul_monomial(e, c))?;
        }
        Ok(out)
    }

    /// Substitute an exact rational for x. Fails when `x0 = 0` meets a
    /// negative exponent.
    pub fn evaluate(&self, x0: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (&e, c) in &self.terms {
            let p = rational::pow_signed(x0, e).ok_or_else(|| {
                Error::argument("cannot evaluate a negative exponent at x = 0")
            })?;
            acc += c * p;
        }
        Ok(acc)
    }

    /// All coefficient denominators coprime to p.
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.terms.values().all(|c| rational::is_p_integral(c, p))
    }

    pub fn to_spec(&self) -> Result<CardExprSpec> {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(&e, c)| {
                let (num, den) = rational::to_i64_pair(c).ok_or_else(|| {
                    Error::invariant("coefficient exceeds the JSON integer range")
                })?;
                Ok(TermSpec { exp: e, num, den })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CardExprSpec {
            prime: self.prime,
            terms,
            display: self.to_string(),
        })
    }

    pub fn from_spec(spec: &CardExprSpec) -> Result<CardExpr> {
        let mut out = CardExpr::zero(spec.prime);
        for t in &spec.terms {
            if t.den == 0 {
                return Err(Error::argument("zero denominator in term"));
            }
            out = out.add(&CardExpr::monomial(
                spec.prime,
                t.exp,
                rational::rat(t.num, t.den),
            ))?;
        }
        Ok(out)
    }
}

impl fmt::Display for CardExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&exp, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match exp {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if exp == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// JSON form of a cardinality expression: exact terms with exponents
/// descending, plus the printable string.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CardExprSpec {
    pub prime: u64,
    pub terms: Vec<TermSpec>,
    pub display: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    pub exp: i64,
    pub num: i64,
    pub den: i64,
}

fn require_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::argument(format!("{p} is not prime")));
    }
    Ok(())
}

/// |BP| = x^m for a p-group of order p^m.
pub fn card_b_pgroup(order: u64, p: u64) -> Result<CardExpr> {
    require_prime(p)?;
    let m = log_p_exact(order, p).ok_or_else(|| {
        Error::argument(format!("order {order} is not a power of {p}"))
    })?;
    Ok(CardExpr::monomial(p, m as i64, Rat::one()))
}

/// The element e_p^1 of Ω_p(G)[G/Q]⁻¹ expanded on the [G/D] basis. Its
/// support consists of p-subgroup classes only; the class weights are the
/// aggregated inclusion–exclusion weights over Sylow intersections.
pub fn bg_weights(lattice: &SubgroupLattice, p: u64) -> Result<BurnsideElement> {
    require_prime(p)?;
    let e = p_local_idempotent(lattice, lattice.trivial_class(), p)?;
    for (&class, _) in e.coeffs() {
        if log_p_exact(lattice.class(class).order() as u64, p).is_none() {
            return Err(Error::invariant(
                "bg_weights support contains a non-p-subgroup class",
            ));
        }
    }
    Ok(e)
}

/// The same element as [`bg_weights`], computed by the explicit alternating
/// sum over non-empty subsets of Sylow p-subgroups, with equal intersections
/// aggregated. Capped because the subset count is exponential.
pub fn sylow_inclusion_exclusion(
    lattice: &SubgroupLattice,
    p: u64,
    max_sylows: usize,
) -> Result<BurnsideElement> {
    require_prime(p)?;
    let sylows = lattice.sylow_subgroups(p);
    let n = sylows.len();
    if n > max_sylows {
        return Err(Error::resource(format!(
            "{n} Sylow {p}-subgroups exceed the subset-sum cap {max_sylows}; use bg_weights"
        )));
    }
    let group_order = rational::int(lattice.group().order() as i64);
    // intersections[mask] for the subset with the given bits; built
    // incrementally from mask minus its lowest bit.
    let mut intersections: Vec<Option<BitSet>> = vec![None; 1 << n];
    let mut pooled: HashMap<BitSet, Rat> = HashMap::new();
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        let low_bits = lattice.subgroup(sylows[low]).bits().clone();
        let rest = mask & (mask - 1);
        let bits = if rest == 0 {
            low_bits
        } else {
            intersections[rest]
                .as_ref()
                .expect("smaller masks already built")
                .intersection(&low_bits)
        };
        let size = bits.count() as i64;
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        let weight = rational::int(sign * size) / &group_order;
        *pooled.entry(bits.clone()).or_insert_with(Rat::zero) += weight;
        intersections[mask] = Some(bits);
    }

    let mut coeffs: Vec<(usize, Rat)> = Vec::new();
    for (bits, weight) in pooled {
        let sub = crate::group::Subgroup::from_bits(bits);
        let idx = lattice
            .subgroup_index(&sub)
            .ok_or_else(|| Error::invariant("Sylow intersection missing from lattice"))?;
        coeffs.push((lattice.class_of_index(idx), weight));
    }
    coeffs.sort_by_key(|&(c, _)| c);
    Ok(BurnsideElement::from_coeffs(lattice, coeffs))
}

/// The linear map [P/H] ↦ |BH| = x^{log_p |H|}, extended over an element
/// whose support consists of p-group classes.
pub fn integrate_over_bp(element: &BurnsideElement, p: u64) -> Result<CardExpr> {
    require_prime(p)?;
    let lattice = element.lattice();
    let mut out = CardExpr::zero(p);
    for (&class, coeff) in element.coeffs() {
        let order = lattice.class(class).order() as u64;
        let m = log_p_exact(order, p).ok_or_else(|| {
            Error::argument(format!(
                "support class of order {order} is not a {p}-group"
            ))
        })?;
        out = out.add(&CardExpr::monomial(p, m as i64, coeff.clone()))?;
    }
    Ok(out)
}

/// |BG| as a Laurent polynomial in x = |BC_p|: the class weights of e_p^1
/// integrated classwise, each [G/D] contributing weight · x^{log_p |D|}.
pub fn card_bg(lattice: &SubgroupLattice, p: u64) -> Result<CardExpr> {
    integrate_over_bp(&bg_weights(lattice, p)?, p)
}

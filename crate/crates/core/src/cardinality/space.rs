//! π-finite spaces given by Postnikov data: a fundamental group G and, for
//! each level i ≥ 2, a finite abelian group with a G-action by
//! automorphisms, presented as an explicit operation table.
//!
//! The cardinality of such a space at height 1 splits into a prefactor from
//! the p-primary homotopy (deloopings of p-groups alternate between x^m and
//! its inverse) and, for each prime q ≠ p, the class of the q-primary part
//! as a P-set in the Burnside ring of each weighted p-subgroup P, raised to
//! (−1)^i, integrated over BP. The weights are the aggregated
//! Sylow-intersection weights of [`bg_weights`](super::bg_weights).

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, log_p_exact};
use crate::burnside::BurnsideElement;
use crate::group::{GSet, GroupSpec, Perm, PermGroup, SubgroupLattice};
use crate::parallel;
use crate::rational::{self, Rat};
use crate::{Error, Result};

use super::{require_prime, CardExpr};

/// A finite abelian group with a compatible action of a fixed group: the
/// carrier of one homotopy level. The identity element is the basepoint and
/// is fixed by the action.
#[derive(Clone, Debug)]
pub struct AbelianGSet {
    carrier: GSet,
    op: Vec<u16>,
    identity: u16,
    element_order: Vec<u64>,
}

impl AbelianGSet {
    /// Validate an operation table (finite abelian group) together with a
    /// G-action by automorphisms, one permutation per group generator.
    pub fn new(
        group: &PermGroup,
        size: usize,
        op_table: &[Vec<u16>],
        action: Vec<Perm>,
    ) -> Result<AbelianGSet> {
        if size == 0 {
            return Err(Error::argument("abelian carrier must be non-empty"));
        }
        if op_table.len() != size || op_table.iter().any(|r| r.len() != size) {
            return Err(Error::argument(format!(
                "operation table must be {size}x{size}"
            )));
        }
        let mut op = vec![0u16; size * size];
        for (a, row) in op_table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v as usize >= size {
                    return Err(Error::argument(format!(
                        "operation table entry ({a}, {b}) = {v} out of range"
                    )));
                }
                op[a * size + b] = v;
            }
        }
        let at = |a: usize, b: usize| op[a * size + b] as usize;

        let identity = (0..size)
            .find(|&e| (0..size).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::argument("operation table has no identity element"))?;
        for a in 0..size {
            for b in 0..size {
                if at(a, b) != at(b, a) {
                    return Err(Error::argument(format!(
                        "operation table is not commutative at ({a}, {b})"
                    )));
                }
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::argument(format!(
                            "operation table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        for a in 0..size {
            if !(0..size).any(|b| at(a, b) == identity) {
                return Err(Error::argument(format!("element {a} has no inverse")));
            }
        }
        for (k, perm) in action.iter().enumerate() {
            if perm.degree() != size {
                return Err(Error::argument(format!(
                    "action of generator {k} has degree {} instead of {size}",
                    perm.degree()
                )));
            }
            for a in 0..size {
                for b in 0..size {
                    let lhs = perm.apply(op[a * size + b]) as usize;
                    let rhs = at(perm.apply(a as u16) as usize, perm.apply(b as u16) as usize);
                    if lhs != rhs {
                        return Err(Error::argument(format!(
                            "generator {k} does not act by automorphisms: \
                             fails at ({a}, {b})"
                        )));
                    }
                }
            }
        }

        // basepoint check inside GSet::new also enforces the action fixes
        // the identity
        let carrier = GSet::new(group, size, action, Some(identity))?;

        let element_order = (0..size)
            .map(|a| {
                let mut x = a;
                let mut n = 1u64;
                while x != identity {
                    x = at(x, a);
                    n += 1;
                }
                n
            })
            .collect();

        Ok(AbelianGSet {
            carrier,
            op,
            identity: identity as u16,
            element_order,
        })
    }

    pub fn order(&self) -> usize {
        self.carrier.size()
    }

    pub fn group(&self) -> &PermGroup {
        self.carrier.group()
    }

    /// The carrier with its G-action, basepoint at the identity.
    pub fn carrier(&self) -> &GSet {
        &self.carrier
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.element_order[a]
    }

    /// Primes dividing the group order.
    pub fn primes(&self) -> Vec<u64> {
        factorize(self.order() as u64).into_iter().map(|(p, _)| p).collect()
    }

    /// The q-primary part: elements of q-power order with the inherited
    /// operation and action (automorphisms preserve element orders).
    pub fn primary_part(&self, q: u64) -> AbelianGSet {
        let size = self.order();
        let members: Vec<usize> = (0..size)
            .filter(|&a| {
                let mut n = self.element_order[a];
                while n % q == 0 {
                    n /= q;
                }
                n == 1
            })
            .collect();
        let pos: Vec<Option<u16>> = {
            let mut v = vec![None; size];
            for (i, &m) in members.iter().enumerate() {
                v[m] = Some(i as u16);
            }
            v
        };
        let op_table: Vec<Vec<u16>> = members
            .iter()
            .map(|&a| {
                members
                    .iter()
                    .map(|&b| pos[self.op[a * size + b] as usize].expect("closed under product"))
                    .collect()
            })
            .collect();
        let action: Vec<Perm> = self
            .carrier
            .generator_action()
            .iter()
            .map(|perm| {
                Perm::from_images(
                    members
                        .iter()
                        .map(|&a| pos[perm.apply(a as u16) as usize].expect("order-preserving"))
                        .collect(),
                )
                .expect("restriction of a bijection")
            })
            .collect();
        AbelianGSet::new(self.group(), members.len(), &op_table, action)
            .expect("primary part inherits the group axioms")
    }
}

/// A connected π-finite space: fundamental group plus finitely many abelian
/// homotopy levels (i ≥ 2) with G-actions.
#[derive(Clone, Debug)]
pub struct SpaceSpec {
    group: PermGroup,
    levels: Vec<(u32, AbelianGSet)>,
}

impl SpaceSpec {
    pub fn new(group: &PermGroup, levels: Vec<(u32, AbelianGSet)>) -> Result<SpaceSpec> {
        for (i, a) in &levels {
            if *i < 2 {
                return Err(Error::argument(format!(
                    "homotopy level {i} below 2 cannot carry an abelian layer"
                )));
            }
            if a.group() != group {
                return Err(Error::argument(format!(
                    "level {i} action is over a different group"
                )));
            }
        }
        let mut sorted = levels;
        sorted.sort_by_key(|(i, _)| *i);
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::argument("duplicate homotopy level"));
        }
        Ok(SpaceSpec {
            group: group.clone(),
            levels: sorted,
        })
    }

    pub fn from_parts(group: &PermGroup, homotopy: &[HomotopyLevelSpec]) -> Result<SpaceSpec> {
        let levels = homotopy
            .iter()
            .map(|h| {
                let action = h
                    .action
                    .iter()
                    .map(|im| Perm::from_images(im.clone()))
                    .collect::<Result<Vec<_>>>()?;
                if h.size != h.op_table.len() {
                    return Err(Error::argument(format!(
                        "level {}: size {} does not match table",
                        h.level, h.size
                    )));
                }
                Ok((h.level, AbelianGSet::new(group, h.size, &h.op_table, action)?))
            })
            .collect::<Result<Vec<_>>>()?;
        SpaceSpec::new(group, levels)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn levels(&self) -> &[(u32, AbelianGSet)] {
        &self.levels
    }

    /// Highest non-trivial level (1 when there is no higher homotopy).
    pub fn truncation(&self) -> u32 {
        self.levels.last().map_or(1, |(i, _)| *i)
    }

    /// The height-0 shadow ∏_{i≥1} |π_i|^{(−1)^i}.
    pub fn alternating_product(&self) -> Rat {
        let mut acc = rational::int(self.group.order() as i64).recip();
        for (i, a) in &self.levels {
            let size = rational::int(a.order() as i64);
            acc *= if i % 2 == 0 { size } else { size.recip() };
        }
        acc
    }
}

/// JSON form of a space: group spec plus one entry per homotopy level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceSpecJson {
    pub group: GroupSpec,
    pub homotopy: Vec<HomotopyLevelSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomotopyLevelSpec {
    pub level: u32,
    pub size: usize,
    pub op_table: Vec<Vec<u16>>,
    /// One carrier permutation per group generator.
    pub action: Vec<Vec<u16>>,
}

/// The cardinality of a π-finite space as a Laurent polynomial in
/// x = |BC_p|.
///
/// Computed as: (a) a prefactor x^Σ(−1)^{i−1}·m_i from the p-primary parts
/// (|(π_i)_p| = p^{m_i}); (b) class weights w_D on p-subgroup classes from
/// the partition of unity; (c) per weighted class D, the product over
/// levels i and primes q ≠ p of the class of (π_i)_q as a D-set in
/// Ω_ℚ(D), raised to (−1)^i (inversion is legal: the identity is a fixed
/// point, so every mark is at least 1); (d) integration [D/H] ↦ x^{log_p|H|}
/// of the product, scaled by w_D and summed.
pub fn card_space(lattice: &SubgroupLattice, space: &SpaceSpec, p: u64) -> Result<CardExpr> {
    require_prime(p)?;
    if lattice.group() != space.group() {
        return Err(Error::argument(
            "lattice and space are over different groups",
        ));
    }

    let mut prefactor_exp = 0i64;
    for (i, a) in space.levels() {
        let p_order = a.primary_part(p).order() as u64;
        let m = log_p_exact(p_order, p).expect("primary part is a p-group") as i64;
        prefactor_exp += if i % 2 == 0 { -m } else { m };
    }

    let weights = super::bg_weights(lattice, p)?;
    let support: Vec<(usize, Rat)> = weights
        .coeffs()
        .iter()
        .map(|(&c, w)| (c, w.clone()))
        .collect();

    let parts = parallel::map_slice(&support, |(class, weight)| -> Result<CardExpr> {
        let d_rep = lattice.representative(*class);
        let sub = lattice.group().subgroup_as_group(d_rep);
        let sub_lattice = SubgroupLattice::compute(&sub)?;
        let mut product = BurnsideElement::one(&sub_lattice);
        for (i, a) in space.levels() {
            for q in a.primes() {
                if q == p {
                    continue;
                }
                let part = a.primary_part(q);
                if part.order() == 1 {
                    continue;
                }
                let restricted = part.carrier().restrict(&sub)?;
                let decomposition = sub_lattice.orbit_decompose(&restricted)?;
                let mut factor = BurnsideElement::from_orbits(&sub_lattice, &decomposition);
                if i % 2 == 1 {
                    factor = factor.invert()?;
                }
                product = product.mul(&factor);
            }
        }
        Ok(super::integrate_over_bp(&product, p)?.scale(weight))
    });

    let mut acc = CardExpr::zero(p);
    for part in parts {
        acc = acc.add(&part?)?;
    }
    Ok(acc.mul_monomial(prefactor_exp, &Rat::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric, DEFAULT_MAX_ORDER};
    use crate::rational::{int, rat};

    /// C_q with trivial action of the trivial group.
    fn cyclic_table(q: usize) -> Vec<Vec<u16>> {
        (0..q)
            .map(|a| (0..q).map(|b| ((a + b) % q) as u16).collect())
            .collect()
    }

    fn trivial_group() -> PermGroup {
        cyclic(1, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn validates_group_axioms() {
        let g = trivial_group();
        // break associativity/commutativity: a random non-group table
        let bad = vec![vec![0u16, 1], vec![0, 1]];
        assert!(AbelianGSet::new(&g, 2, &bad, vec![]).is_err());
        let good = cyclic_table(3);
        assert!(AbelianGSet::new(&g, 3, &good, vec![]).is_ok());
    }

    #[test]
    fn rejects_non_automorphism_action() {
        let g = cyclic(2, DEFAULT_MAX_ORDER).unwrap();
        // swapping 0 and 1 in C₃ moves the identity: not an automorphism
        let bad_action = vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()];
        assert!(AbelianGSet::new(&g, 3, &cyclic_table(3), bad_action).is_err());
        // inversion is one
        let inversion = vec![Perm::from_cycles(3, &[&[1, 2]]).unwrap()];
        assert!(AbelianGSet::new(&g, 3, &cyclic_table(3), inversion).is_ok());
    }

    #[test]
    fn primary_parts_of_c6() {
        let g = trivial_group();
        let c6 = AbelianGSet::new(&g, 6, &cyclic_table(6), vec![]).unwrap();
        assert_eq!(c6.primes(), vec![2, 3]);
        assert_eq!(c6.primary_part(2).order(), 2);
        assert_eq!(c6.primary_part(3).order(), 3);
        assert_eq!(c6.primary_part(5).order(), 1);
    }

    #[test]
    fn space_with_no_higher_homotopy_is_bg() {
        let g = symmetric(3, DEFAULT_MAX_ORDER).unwrap();
        let lat = SubgroupLattice::compute(&g).unwrap();
        let space = SpaceSpec::new(&g, vec![]).unwrap();
        assert_eq!(
            card_space(&lat, &space, 2).unwrap(),
            super::super::card_bg(&lat, 2).unwrap()
        );
    }

    #[test]
    fn trivial_group_second_level_gives_order() {
        let g = trivial_group();
        let lat = SubgroupLattice::compute(&g).unwrap();
        let c3 = AbelianGSet::new(&g, 3, &cyclic_table(3), vec![]).unwrap();
        let space = SpaceSpec::new(&g, vec![(2, c3)]).unwrap();
        let card = card_space(&lat, &space, 2).unwrap();
        assert_eq!(card.to_string(), "3");
        assert_eq!(card.evaluate(&rat(1, 2)).unwrap(), int(3));
        assert_eq!(space.alternating_product(), int(3));
    }

    #[test]
    fn inverted_level_three() {
        // G = C₂ acting on π₃ = C₃ by inversion at p = 2
        let g = cyclic(2, DEFAULT_MAX_ORDER).unwrap();
        let lat = SubgroupLattice::compute(&g).unwrap();
        let inversion = vec![Perm::from_cycles(3, &[&[1, 2]]).unwrap()];
        let c3 = AbelianGSet::new(&g, 3, &cyclic_table(3), inversion).unwrap();
        let space = SpaceSpec::new(&g, vec![(3, c3)]).unwrap();
        let card = card_space(&lat, &space, 2).unwrap();
        assert_eq!(card.to_string(), "x - 1/3");
        assert_eq!(
            card.evaluate(&rat(1, 2)).unwrap(),
            space.alternating_product()
        );
    }

    #[test]
    fn p_primary_levels_enter_the_prefactor() {
        // G trivial, π₂ = C₂, p = 2: card = x^{-1}
        let g = trivial_group();
        let lat = SubgroupLattice::compute(&g).unwrap();
        let c2 = AbelianGSet::new(&g, 2, &cyclic_table(2), vec![]).unwrap();
        let space = SpaceSpec::new(&g, vec![(2, c2)]).unwrap();
        let card = card_space(&lat, &space, 2).unwrap();
        assert_eq!(card.to_string(), "x^-1");
        // π₃ = C₂ instead: card = x
        let c2 = AbelianGSet::new(&g, 2, &cyclic_table(2), vec![]).unwrap();
        let space = SpaceSpec::new(&g, vec![(3, c2)]).unwrap();
        assert_eq!(card_space(&lat, &space, 2).unwrap().to_string(), "x");
    }

    #[test]
    fn rejects_low_levels_and_foreign_groups() {
        let g = trivial_group();
        let c3 = AbelianGSet::new(&g, 3, &cyclic_table(3), vec![]).unwrap();
        assert!(SpaceSpec::new(&g, vec![(1, c3.clone())]).is_err());
        let other = cyclic(2, DEFAULT_MAX_ORDER).unwrap();
        assert!(SpaceSpec::new(&other, vec![(2, c3)]).is_err());
    }
}

//! Finite G-sets: carriers with an action of a [`PermGroup`].
//!
//! Actions are specified on the group's generator list and extended to every
//! element through the BFS word tree; the extension is validated to be a
//! homomorphism, which catches generator images that do not satisfy the
//! group's relations.

use serde::{Deserialize, Serialize};

use super::{Perm, PermGroup, Subgroup};
use crate::{Error, Result};

/// A finite set with a left action of a fixed group.
#[derive(Clone, Debug)]
pub struct GSet {
    group: PermGroup,
    size: usize,
    gen_action: Vec<Perm>,
    elem_action: Vec<Perm>,
    basepoint: Option<usize>,
}

/// JSON form of a G-set: carrier size and one image array per group
/// generator (aligned with the group's generator list).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GSetSpec {
    pub size: usize,
    pub generator_images: Vec<Vec<u16>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<usize>,
}

impl GSet {
    /// Build from generator images, extending through the word table and
    /// validating the result is a group action.
    pub fn new(
        group: &PermGroup,
        size: usize,
        gen_action: Vec<Perm>,
        basepoint: Option<usize>,
    ) -> Result<GSet> {
        if gen_action.len() != group.generators().len() {
            return Err(Error::argument(format!(
                "action specifies {} generator images, group has {} generators",
                gen_action.len(),
                group.generators().len()
            )));
        }
        for a in &gen_action {
            if a.degree() != size {
                return Err(Error::argument(format!(
                    "generator image degree {} does not match carrier size {size}",
                    a.degree()
                )));
            }
        }
        if let Some(b) = basepoint {
            if b >= size {
                return Err(Error::argument(format!(
                    "basepoint {b} outside carrier of size {size}"
                )));
            }
            if gen_action.iter().any(|a| a.apply(b as u16) != b as u16) {
                return Err(Error::argument(format!(
                    "basepoint {b} is not fixed by the action"
                )));
            }
        }

        // Extend along the BFS tree: every element is an earlier element
        // times a generator.
        let mut elem_action: Vec<Option<Perm>> = vec![None; group.order()];
        for &e in group.eval_order() {
            let act = match group.decomp(e) {
                None => Perm::identity(size),
                Some((parent, k)) => elem_action[parent as usize]
                    .as_ref()
                    .expect("BFS order visits parents first")
                    .compose(&gen_action[k as usize]),
            };
            elem_action[e as usize] = Some(act);
        }
        let elem_action: Vec<Perm> = elem_action.into_iter().map(|a| a.unwrap()).collect();

        // The extension is well defined iff it is a homomorphism on
        // (element, generator) pairs.
        for e in 0..group.order() as u16 {
            for (k, &gk) in group.generator_indices().iter().enumerate() {
                let prod = group.mul(e, gk);
                let direct = elem_action[e as usize].compose(&gen_action[k]);
                if elem_action[prod as usize] != direct {
                    return Err(Error::argument(format!(
                        "generator images do not define a group action \
                         (inconsistent at element {e}, generator {k})"
                    )));
                }
            }
        }

        Ok(GSet {
            group: group.clone(),
            size,
            gen_action,
            elem_action,
            basepoint,
        })
    }

    pub fn from_spec(group: &PermGroup, spec: &GSetSpec) -> Result<GSet> {
        let gen_action = spec
            .generator_images
            .iter()
            .map(|im| Perm::from_images(im.clone()))
            .collect::<Result<Vec<_>>>()?;
        GSet::new(group, spec.size, gen_action, spec.basepoint)
    }

    /// Internal constructor for actions already known to be homomorphisms
    /// (coset spaces, products, restrictions).
    fn from_elem_action(
        group: &PermGroup,
        size: usize,
        elem_action: Vec<Perm>,
        basepoint: Option<usize>,
    ) -> GSet {
        let gen_action = group
            .generator_indices()
            .iter()
            .map(|&g| elem_action[g as usize].clone())
            .collect();
        GSet {
            group: group.clone(),
            size,
            gen_action,
            elem_action,
            basepoint,
        }
    }

    /// Trivial action on k points.
    pub fn trivial(group: &PermGroup, k: usize) -> GSet {
        GSet::from_elem_action(group, k, vec![Perm::identity(k); group.order()], None)
    }

    /// G acting on itself by left translation.
    pub fn regular(group: &PermGroup) -> GSet {
        let n = group.order();
        let elem_action = (0..n as u16)
            .map(|g| {
                Perm::from_images((0..n as u16).map(|x| group.mul(g, x)).collect())
                    .expect("left translation is a bijection")
            })
            .collect();
        GSet::from_elem_action(group, n, elem_action, None)
    }

    /// The coset space G/K with G acting by left translation. Cosets are
    /// ordered by their least element index, so the carrier is canonical.
    pub fn coset_space(group: &PermGroup, k: &Subgroup) -> GSet {
        let n = group.order();
        let k_elems = k.element_indices();
        let mut coset_of = vec![u16::MAX; n];
        let mut reps = Vec::new();
        for e in 0..n as u16 {
            if coset_of[e as usize] != u16::MAX {
                continue;
            }
            let id = reps.len() as u16;
            reps.push(e);
            for &h in &k_elems {
                coset_of[group.mul(e, h) as usize] = id;
            }
        }
        let size = reps.len();
        let elem_action = (0..n as u16)
            .map(|g| {
                Perm::from_images(
                    reps.iter()
                        .map(|&r| coset_of[group.mul(g, r) as usize])
                        .collect(),
                )
                .expect("translation permutes cosets")
            })
            .collect();
        GSet::from_elem_action(group, size, elem_action, None)
    }

    /// Cartesian product with the diagonal action; point (i, j) is indexed
    /// as `i * |other| + j`.
    pub fn product(&self, other: &GSet) -> Result<GSet> {
        if self.group != other.group {
            return Err(Error::argument("product of G-sets over different groups"));
        }
        let m = other.size;
        let size = self.size * m;
        let elem_action = (0..self.group.order() as u16)
            .map(|g| {
                let a = &self.elem_action[g as usize];
                let b = &other.elem_action[g as usize];
                Perm::from_images(
                    (0..size)
                        .map(|p| {
                            let (i, j) = (p / m, p % m);
                            a.apply(i as u16) as usize * m + b.apply(j as u16) as usize
                        })
                        .map(|q| q as u16)
                        .collect(),
                )
                .expect("product of bijections")
            })
            .collect();
        Ok(GSet::from_elem_action(&self.group, size, elem_action, None))
    }

    /// Restrict the action to a subgroup, given as its own [`PermGroup`]
    /// (see [`PermGroup::subgroup_as_group`]); the carrier is unchanged.
    pub fn restrict(&self, sub: &PermGroup) -> Result<GSet> {
        let elem_action = sub
            .elements()
            .iter()
            .map(|p| {
                let parent_idx = self.group.index_of(p).ok_or_else(|| {
                    Error::argument("restriction target is not a subgroup of the acting group")
                })?;
                Ok(self.elem_action[parent_idx as usize].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GSet::from_elem_action(
            sub,
            self.size,
            elem_action,
            self.basepoint,
        ))
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn generator_action(&self) -> &[Perm] {
        &self.gen_action
    }

    pub fn element_action(&self, e: u16) -> &Perm {
        &self.elem_action[e as usize]
    }

    pub fn apply(&self, e: u16, point: usize) -> usize {
        self.elem_action[e as usize].apply(point as u16) as usize
    }

    /// Number of points fixed by a single element.
    pub fn fixed_by_element(&self, e: u16) -> usize {
        let a = &self.elem_action[e as usize];
        (0..self.size).filter(|&p| a.apply(p as u16) == p as u16).count()
    }

    /// |X^H|: points fixed by every element of H.
    pub fn fixed_count(&self, h: &Subgroup) -> usize {
        let elems = h.element_indices();
        (0..self.size)
            .filter(|&p| {
                elems
                    .iter()
                    .all(|&e| self.elem_action[e as usize].apply(p as u16) == p as u16)
            })
            .count()
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut orbits = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let p = orbit[head];
                head += 1;
                for a in &self.gen_action {
                    let q = a.apply(p as u16) as usize;
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits().len()
    }

    /// Stabilizer of a point, as a subgroup of the acting group.
    pub fn stabilizer(&self, point: usize) -> Subgroup {
        let indices: Vec<u16> = (0..self.group.order() as u16)
            .filter(|&e| self.apply(e, point) == point)
            .collect();
        self.group
            .subgroup_from_indices(&indices)
            .expect("stabilizers are subgroups")
    }

    pub fn to_spec(&self) -> GSetSpec {
        GSetSpec {
            size: self.size,
            generator_images: self
                .gen_action
                .iter()
                .map(|a| a.images().to_vec())
                .collect(),
            basepoint: self.basepoint,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{symmetric, DEFAULT_MAX_ORDER};

    fn s3() -> PermGroup {
        symmetric(3, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn natural_action_is_valid() {
        let g = s3();
        let gens = g.generators().to_vec();
        let x = GSet::new(&g, 3, gens, None).unwrap();
        assert_eq!(x.orbit_count(), 1);
        assert_eq!(x.stabilizer(0).order(), 2);
    }

    #[test]
    fn invalid_action_rejected() {
        let g = s3();
        // map the transposition to a 3-cycle: not a homomorphism
        let bad = vec![
            Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
        ];
        assert!(GSet::new(&g, 3, bad, None).is_err());
    }

    #[test]
    fn regular_action_is_free() {
        let g = s3();
        let x = GSet::regular(&g);
        assert_eq!(x.size(), 6);
        assert_eq!(x.orbit_count(), 1);
        for e in 1..6 {
            assert_eq!(x.fixed_by_element(e), 0);
        }
        assert_eq!(x.fixed_by_element(g.identity_index()), 6);
    }

    #[test]
    fn coset_space_fixed_points() {
        let g = s3();
        let t = g
            .index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap())
            .unwrap();
        let c2 = g.cyclic_subgroup(t);
        let x = GSet::coset_space(&g, &c2);
        assert_eq!(x.size(), 3);
        // |(G/H)^H| = |WH| = 1 here
        assert_eq!(x.fixed_count(&c2), 1);
        assert_eq!(x.fixed_count(&g.trivial_subgroup()), 3);
        assert_eq!(x.fixed_count(&g.full_subgroup()), 0);
    }

    #[test]
    fn orbit_stabilizer_on_products() {
        let g = s3();
        let t = g
            .index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap())
            .unwrap();
        let x = GSet::coset_space(&g, &g.cyclic_subgroup(t));
        let xx = x.product(&x).unwrap();
        assert_eq!(xx.size(), 9);
        for orbit in xx.orbits() {
            let stab = xx.stabilizer(orbit[0]);
            assert_eq!(orbit.len() * stab.order() as usize, g.order());
        }
    }

    #[test]
    fn restriction_keeps_carrier() {
        let g = s3();
        let r = g
            .index_of(&Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap())
            .unwrap();
        let c3 = g.subgroup_as_group(&g.cyclic_subgroup(r));
        let x = GSet::regular(&g);
        let restricted = x.restrict(&c3).unwrap();
        assert_eq!(restricted.size(), 6);
        // C₃ acting on S₃ by translation: two orbits of size 3
        assert_eq!(restricted.orbit_count(), 2);
    }

    #[test]
    fn basepoint_must_be_fixed() {
        let g = s3();
        let gens = g.generators().to_vec();
        assert!(GSet::new(&g, 3, gens.clone(), Some(0)).is_err());
        let mut trivial_images = vec![Perm::identity(2); gens.len()];
        trivial_images[0] = Perm::identity(2);
        assert!(GSet::new(&g, 2, trivial_images, Some(1)).is_ok());
    }
}

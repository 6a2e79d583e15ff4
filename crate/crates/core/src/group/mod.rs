//! Finite permutation groups and their subgroups.
//!
//! A [`PermGroup`] is a fully enumerated group of permutations with a
//! canonical element order (lexicographic on image tuples), so element
//! indices are stable across runs. Subgroups are index sets into that order.
//!
//! Construction is by breadth-first closure of a generator list; the BFS
//! word tree is kept so that an action specified on generators can be
//! extended to every element and validated (see [`GSet`]).

mod families;
mod gset;
mod lattice;
mod perm;

pub use families::{
    alternating, cyclic, dihedral, direct_product, gl2, klein_four, quaternion8, symmetric,
};
pub use gset::{GSet, GSetSpec};
pub use lattice::{OrbitDecomposition, SubgroupClass, SubgroupLattice};
pub use perm::Perm;

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::{Error, Result};

/// Default cap on group order for [`PermGroup::closure`].
pub const DEFAULT_MAX_ORDER: usize = 10_000;
/// Orders up to this get a dense multiplication table.
const MUL_TABLE_LIMIT: usize = 4096;

/// A fully enumerated finite permutation group. Cheap to clone.
#[derive(Clone, Debug)]
pub struct PermGroup {
    inner: Arc<GroupInner>,
}

#[derive(Debug)]
struct GroupInner {
    degree: usize,
    generators: Vec<Perm>,
    gen_indices: Vec<u16>,
    elements: Vec<Perm>,
    elem_index: HashMap<Perm, u16>,
    identity: u16,
    inverse: Vec<u16>,
    element_order: Vec<u32>,
    mul_table: Option<Vec<u16>>,
    /// Element indices in BFS discovery order (identity first); each later
    /// element factors as an earlier element times a generator.
    eval_order: Vec<u16>,
    /// `decomp[e] = (parent, k)` with `elements[e] = elements[parent] ∘ generators[k]`.
    decomp: Vec<Option<(u16, u16)>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.elements == other.inner.elements
    }
}
impl Eq for PermGroup {}

impl PermGroup {
    /// Enumerate the group generated by `generators` on `degree` points by
    /// breadth-first product closure. Fails with a resource error if the
    /// order exceeds `max_order`.
    pub fn closure(degree: usize, generators: Vec<Perm>, max_order: usize) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::argument(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let identity = Perm::identity(degree);
        let mut discovered: Vec<Perm> = vec![identity.clone()];
        let mut parent: Vec<Option<(usize, u16)>> = vec![None];
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        seen.insert(identity, 0);
        let mut head = 0;
        while head < discovered.len() {
            for (k, g) in generators.iter().enumerate() {
                let next = discovered[head].compose(g);
                if !seen.contains_key(&next) {
                    if discovered.len() >= max_order {
                        return Err(Error::resource(format!(
                            "group order exceeds cap {max_order}"
                        )));
                    }
                    seen.insert(next.clone(), discovered.len());
                    discovered.push(next);
                    parent.push(Some((head, k as u16)));
                }
            }
            head += 1;
        }

        let order = discovered.len();
        let mut sorted: Vec<Perm> = discovered.clone();
        sorted.sort_unstable();
        let elem_index: HashMap<Perm, u16> = sorted
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u16))
            .collect();
        let bfs_to_canonical: Vec<u16> = discovered.iter().map(|p| elem_index[p]).collect();

        let mut decomp = vec![None; order];
        let mut eval_order = Vec::with_capacity(order);
        for (bfs, p) in parent.iter().enumerate() {
            let e = bfs_to_canonical[bfs];
            eval_order.push(e);
            decomp[e as usize] = p.map(|(pb, k)| (bfs_to_canonical[pb], k));
        }

        let inverse: Vec<u16> = sorted.iter().map(|p| elem_index[&p.inverse()]).collect();
        let element_order: Vec<u32> = sorted.iter().map(|p| p.order()).collect();
        let identity = elem_index[&Perm::identity(degree)];
        let gen_indices = generators.iter().map(|g| elem_index[g]).collect();

        let mul_table = (order <= MUL_TABLE_LIMIT).then(|| {
            let mut table = vec![0u16; order * order];
            for (a, pa) in sorted.iter().enumerate() {
                for (b, pb) in sorted.iter().enumerate() {
                    table[a * order + b] = elem_index[&pa.compose(pb)];
                }
            }
            table
        });

        Ok(PermGroup {
            inner: Arc::new(GroupInner {
                degree,
                generators,
                gen_indices,
                elements: sorted,
                elem_index,
                identity,
                inverse,
                element_order,
                mul_table,
                eval_order,
                decomp,
            }),
        })
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    /// Generators exactly as provided to [`closure`](Self::closure); G-set
    /// actions are specified against this list.
    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    pub(crate) fn generator_indices(&self) -> &[u16] {
        &self.inner.gen_indices
    }

    /// Elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[Perm] {
        &self.inner.elements
    }

    pub fn element(&self, i: u16) -> &Perm {
        &self.inner.elements[i as usize]
    }

    pub fn identity_index(&self) -> u16 {
        self.inner.identity
    }

    pub fn index_of(&self, p: &Perm) -> Option<u16> {
        self.inner.elem_index.get(p).copied()
    }

    /// Product of elements by index: `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        match &self.inner.mul_table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => {
                let p = self.inner.elements[a as usize].compose(&self.inner.elements[b as usize]);
                self.inner.elem_index[&p]
            }
        }
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inner.inverse[a as usize]
    }

    /// Conjugate `g h g⁻¹` by index.
    pub fn conj(&self, g: u16, h: u16) -> u16 {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: u16) -> u32 {
        self.inner.element_order[a as usize]
    }

    pub(crate) fn eval_order(&self) -> &[u16] {
        &self.inner.eval_order
    }

    pub(crate) fn decomp(&self, e: u16) -> Option<(u16, u16)> {
        self.inner.decomp[e as usize]
    }

    // ----- subgroups -----

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            bits: BitSet::from_indices(self.order(), [self.inner.identity as usize]),
            order: 1,
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            bits: BitSet::from_indices(self.order(), 0..self.order()),
            order: self.order() as u32,
        }
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup_closure(&self, seed: &[u16]) -> Subgroup {
        let mut bits = BitSet::new(self.order());
        bits.insert(self.inner.identity as usize);
        let mut queue: Vec<u16> = vec![self.inner.identity];
        for &s in seed {
            if !bits.contains(s as usize) {
                bits.insert(s as usize);
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            for &s in seed {
                let e = self.mul(w, s);
                if !bits.contains(e as usize) {
                    bits.insert(e as usize);
                    queue.push(e);
                }
            }
        }
        let order = bits.count() as u32;
        Subgroup { bits, order }
    }

    /// Validate that an index set is a subgroup and wrap it.
    pub fn subgroup_from_indices(&self, indices: &[u16]) -> Result<Subgroup> {
        let bits = BitSet::from_indices(self.order(), indices.iter().map(|&i| i as usize));
        if !bits.contains(self.inner.identity as usize) {
            return Err(Error::argument("subgroup must contain the identity"));
        }
        for a in bits.iter_ones() {
            if !bits.contains(self.inv(a as u16) as usize) {
                return Err(Error::argument("subgroup not closed under inverse"));
            }
            for b in bits.iter_ones() {
                if !bits.contains(self.mul(a as u16, b as u16) as usize) {
                    return Err(Error::argument("subgroup not closed under product"));
                }
            }
        }
        let order = bits.count() as u32;
        Ok(Subgroup { bits, order })
    }

    pub fn cyclic_subgroup(&self, g: u16) -> Subgroup {
        self.subgroup_closure(&[g])
    }

    /// All distinct cyclic subgroups ⟨g⟩, canonically ordered.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order() as u16 {
            let s = self.cyclic_subgroup(g);
            if seen.insert(s.bits.clone()) {
                out.push(s);
            }
        }
        sort_subgroups(&mut out);
        out
    }

    pub fn conjugate_subgroup(&self, g: u16, h: &Subgroup) -> Subgroup {
        let mut bits = BitSet::new(self.order());
        for e in h.bits.iter_ones() {
            bits.insert(self.conj(g, e as u16) as usize);
        }
        Subgroup {
            bits,
            order: h.order,
        }
    }

    /// N_G(H) = {g | gHg⁻¹ = H}.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut bits = BitSet::new(self.order());
        for g in 0..self.order() as u16 {
            if self.conjugate_subgroup(g, h) == *h {
                bits.insert(g as usize);
            }
        }
        let order = bits.count() as u32;
        Subgroup { bits, order }
    }

    /// O^p(H): the smallest normal subgroup of H with p-group quotient,
    /// computed as the closure in H of all elements of order coprime to p.
    pub fn p_residual(&self, h: &Subgroup, p: u64) -> Subgroup {
        let seed: Vec<u16> = h
            .element_indices()
            .into_iter()
            .filter(|&e| self.element_order(e) as u64 % p != 0)
            .collect();
        self.subgroup_closure(&seed)
    }

    /// Commutator subgroup [H, H].
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let elems = h.element_indices();
        let mut seed = Vec::new();
        let mut seen = BitSet::new(self.order());
        for &a in &elems {
            for &b in &elems {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !seen.contains(c as usize) {
                    seen.insert(c as usize);
                    seed.push(c);
                }
            }
        }
        self.subgroup_closure(&seed)
    }

    /// H_S: the limit of the derived series, the smallest normal subgroup
    /// with solvable quotient.
    pub fn solvable_residual(&self, h: &Subgroup) -> Subgroup {
        let mut cur = h.clone();
        loop {
            let next = self.derived_subgroup(&cur);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// A small generating set for H (greedy).
    pub fn subgroup_generators(&self, h: &Subgroup) -> Vec<u16> {
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        for e in h.bits.iter_ones() {
            if !cur.contains(e as u16) {
                gens.push(e as u16);
                cur = self.subgroup_closure(&gens);
                if cur.order == h.order {
                    break;
                }
            }
        }
        gens
    }

    /// H as a permutation group in its own right (same degree; elements are
    /// the same permutations, re-indexed canonically).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> PermGroup {
        let gens = self
            .subgroup_generators(h)
            .into_iter()
            .map(|e| self.element(e).clone())
            .collect();
        PermGroup::closure(self.degree(), gens, h.order as usize)
            .expect("subgroup closure stays within its own order")
    }
}

/// A subgroup, stored as the set of element indices into the parent group's
/// canonical element order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    bits: BitSet,
    order: u32,
}

impl Subgroup {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn contains(&self, e: u16) -> bool {
        self.bits.contains(e as usize)
    }

    pub fn element_indices(&self) -> Vec<u16> {
        self.bits.iter_ones().map(|i| i as u16).collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub(crate) fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub(crate) fn from_bits(bits: BitSet) -> Subgroup {
        let order = bits.count() as u32;
        Subgroup { bits, order }
    }
}

/// Canonical subgroup order: by order, then lexicographically on the sorted
/// element index lists.
pub(crate) fn sort_subgroups(subs: &mut [Subgroup]) {
    subs.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.element_indices().cmp(&b.element_indices()))
    });
}

/// JSON form of a group: either explicit generators or a named family.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GroupSpec {
    Explicit {
        degree: usize,
        generators: Vec<Vec<u16>>,
    },
    Family {
        family: String,
        n: u64,
    },
}

impl GroupSpec {
    pub fn build(&self, max_order: usize) -> Result<PermGroup> {
        match self {
            GroupSpec::Explicit { degree, generators } => {
                let gens = generators
                    .iter()
                    .map(|im| Perm::from_images(im.clone()))
                    .collect::<Result<Vec<_>>>()?;
                PermGroup::closure(*degree, gens, max_order)
            }
            GroupSpec::Family { family, n } => match family.as_str() {
                "S" => symmetric(*n as usize, max_order),
                "A" => alternating(*n as usize, max_order),
                "C" => cyclic(*n as usize, max_order),
                "D" => dihedral(*n as usize, max_order),
                "GL2" => gl2(*n, max_order),
                other => Err(Error::argument(format!(
                    "unknown family '{other}' (expected S, A, C, D, or GL2)"
                ))),
            },
        }
    }

    /// The explicit form of a built group: degree plus the constructor's
    /// generator image lists.
    pub fn canonical(group: &PermGroup) -> GroupSpec {
        GroupSpec::Explicit {
            degree: group.degree(),
            generators: group
                .generators()
                .iter()
                .map(|g| g.images().to_vec())
                .collect(),
        }
    }
}

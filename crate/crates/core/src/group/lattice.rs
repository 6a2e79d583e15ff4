//! The full subgroup lattice of a group, with conjugacy classes of
//! subgroups, normalizers, Sylow subgroups, residual maps, and the table of
//! marks.
//!
//! Enumeration seeds with every cyclic subgroup and closes the set under
//! pairwise join (the subgroup generated by the union). Every subgroup is
//! the join of its cyclic subgroups, so the fixpoint is the complete list.
//! Join waves run data-parallel; results are merged in a fixed order and the
//! final list is sorted canonically, so the outcome is deterministic.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use crate::arith::p_part;
use crate::bits::BitSet;
use crate::parallel;
use crate::poset::FinitePoset;
use crate::rational::Rat;
use crate::{Error, Result};

use super::{sort_subgroups, GSet, PermGroup, Subgroup};

/// Default cap on |G| for lattice computation.
pub const DEFAULT_MAX_LATTICE_ORDER: usize = 2000;
/// Default cap on the number of subgroups.
pub const DEFAULT_MAX_SUBGROUPS: usize = 20_000;

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    rep: u32,
    members: Vec<u32>,
    order: u32,
    class_size: u32,
    normalizer: u32,
    normalizer_order: u32,
    weyl_order: u32,
}

impl SubgroupClass {
    /// Index of the representative (least member) in the canonical subgroup
    /// list.
    pub fn representative_index(&self) -> usize {
        self.rep as usize
    }

    /// Members as indices into the canonical subgroup list.
    pub fn member_indices(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn class_size(&self) -> u32 {
        self.class_size
    }

    pub fn normalizer_order(&self) -> u32 {
        self.normalizer_order
    }

    /// |WH| = |N_G(H)| / |H|.
    pub fn weyl_order(&self) -> u32 {
        self.weyl_order
    }

    /// Index of N_G(rep) in the canonical subgroup list.
    pub fn normalizer_index(&self) -> usize {
        self.normalizer as usize
    }
}

/// Orbit decomposition of a G-set: stabilizer class of each orbit with
/// multiplicity, sorted by class index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbits: Vec<(usize, usize)>,
}

/// The complete subgroup lattice. Cheap to clone; all data immutable after
/// construction (caches fill in deterministically on first use).
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    inner: Arc<LatticeInner>,
}

#[derive(Debug)]
struct LatticeInner {
    group: PermGroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<BitSet, u32>,
    classes: Vec<SubgroupClass>,
    class_of: Vec<u32>,
    poset: FinitePoset,
    /// O^p per subgroup, for each prime dividing |G|.
    p_residual: BTreeMap<u64, Vec<u32>>,
    solvable_residual: Vec<u32>,
    marks: OnceLock<Vec<Vec<i64>>>,
}

impl PartialEq for SubgroupLattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }
}
impl Eq for SubgroupLattice {}

impl SubgroupLattice {
    pub fn compute(group: &PermGroup) -> Result<SubgroupLattice> {
        Self::compute_with_caps(group, DEFAULT_MAX_LATTICE_ORDER, DEFAULT_MAX_SUBGROUPS)
    }

    pub fn compute_with_caps(
        group: &PermGroup,
        max_group_order: usize,
        max_subgroups: usize,
    ) -> Result<SubgroupLattice> {
        if group.order() > max_group_order {
            return Err(Error::resource(format!(
                "group order {} exceeds lattice cap {max_group_order}",
                group.order()
            )));
        }
        let subgroups = enumerate_subgroups(group, max_subgroups)?;
        Self::assemble(group, subgroups)
    }

    /// Rebuild from a cached canonical subgroup list. Each set is validated
    /// as a subgroup and the list must be in canonical order; classification
    /// is recomputed (it is cheap and deterministic).
    pub fn from_cached_subgroups(
        group: &PermGroup,
        subgroup_sets: &[Vec<u16>],
    ) -> Result<SubgroupLattice> {
        let mut subgroups = Vec::with_capacity(subgroup_sets.len());
        for set in subgroup_sets {
            subgroups.push(group.subgroup_from_indices(set)?);
        }
        let mut sorted = subgroups.clone();
        sort_subgroups(&mut sorted);
        if sorted != subgroups {
            return Err(Error::argument(
                "cached subgroup list is not in canonical order",
            ));
        }
        Self::assemble(group, subgroups)
    }

    fn assemble(group: &PermGroup, subgroups: Vec<Subgroup>) -> Result<SubgroupLattice> {
        let index: HashMap<BitSet, u32> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits().clone(), i as u32))
            .collect();
        if index.len() != subgroups.len() {
            return Err(Error::invariant("duplicate subgroups in lattice"));
        }

        // Conjugacy classes. Scanning in canonical order makes the first
        // unclassified member the class representative.
        let n = subgroups.len();
        let mut class_of = vec![u32::MAX; n];
        let mut raw_classes: Vec<(u32, Vec<u32>)> = Vec::new();
        for i in 0..n {
            if class_of[i] != u32::MAX {
                continue;
            }
            let mut members = Vec::new();
            for g in 0..group.order() as u16 {
                let conj = group.conjugate_subgroup(g, &subgroups[i]);
                let j = *index
                    .get(conj.bits())
                    .ok_or_else(|| Error::invariant("conjugate subgroup missing from lattice"))?;
                if class_of[j as usize] == u32::MAX {
                    class_of[j as usize] = raw_classes.len() as u32;
                    members.push(j);
                }
            }
            members.sort_unstable();
            raw_classes.push((i as u32, members));
        }

        // Normalizers per class representative, in parallel.
        let normalizer_data = parallel::map_slice(&raw_classes, |(rep, _)| {
            let nh = group.normalizer(&subgroups[*rep as usize]);
            let n_idx = index[nh.bits()];
            (n_idx, nh.order())
        });

        let mut classes: Vec<SubgroupClass> = Vec::with_capacity(raw_classes.len());
        for ((rep, members), (n_idx, n_order)) in raw_classes.iter().zip(&normalizer_data) {
            let order = subgroups[*rep as usize].order();
            let class_size = members.len() as u32;
            if class_size as usize * *n_order as usize != group.order() {
                return Err(Error::invariant(
                    "orbit-stabilizer mismatch between class size and normalizer order",
                ));
            }
            classes.push(SubgroupClass {
                rep: *rep,
                members: members.clone(),
                order,
                class_size,
                normalizer: *n_idx,
                normalizer_order: *n_order,
                weyl_order: *n_order / order,
            });
        }

        // Sort classes canonically and remap.
        let mut order_ix: Vec<usize> = (0..classes.len()).collect();
        order_ix.sort_by_key(|&c| (classes[c].order, classes[c].class_size, classes[c].rep));
        let mut remap = vec![0u32; classes.len()];
        for (new, &old) in order_ix.iter().enumerate() {
            remap[old] = new as u32;
        }
        let mut sorted_classes: Vec<SubgroupClass> = order_ix
            .iter()
            .map(|&old| classes[old].clone())
            .collect();
        sorted_classes.sort_by_key(|c| (c.order, c.class_size, c.rep));
        let class_of: Vec<u32> = class_of.into_iter().map(|c| remap[c as usize]).collect();

        // Inclusion poset over the canonical subgroup list.
        let up_bits: Vec<BitSet> = parallel::map_indexed(n, |i| {
            let mut row = BitSet::new(n);
            for j in 0..n {
                if subgroups[i].bits().is_subset(subgroups[j].bits()) {
                    row.insert(j);
                }
            }
            row
        });
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let poset = FinitePoset::from_up_bits_trusted(elements, up_bits);

        // Residual maps.
        let mut p_residual = BTreeMap::new();
        for (p, _) in crate::arith::factorize(group.order() as u64) {
            let map = parallel::map_indexed(n, |i| {
                let r = group.p_residual(&subgroups[i], p);
                index[r.bits()]
            });
            p_residual.insert(p, map);
        }
        let solvable_residual = parallel::map_indexed(n, |i| {
            let r = group.solvable_residual(&subgroups[i]);
            index[r.bits()]
        });

        Ok(SubgroupLattice {
            inner: Arc::new(LatticeInner {
                group: group.clone(),
                subgroups,
                index,
                classes: sorted_classes,
                class_of,
                poset,
                p_residual,
                solvable_residual,
                marks: OnceLock::new(),
            }),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.inner.group
    }

    /// All subgroups, canonically ordered (by order, then element lists).
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.inner.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.inner.subgroups[i]
    }

    pub fn subgroup_index(&self, s: &Subgroup) -> Option<usize> {
        self.inner.index.get(s.bits()).map(|&i| i as usize)
    }

    /// Conjugacy classes, sorted by (order, class size, representative).
    pub fn classes(&self) -> &[SubgroupClass] {
        &self.inner.classes
    }

    pub fn class(&self, c: usize) -> &SubgroupClass {
        &self.inner.classes[c]
    }

    pub fn class_count(&self) -> usize {
        self.inner.classes.len()
    }

    pub fn class_of_index(&self, subgroup_idx: usize) -> usize {
        self.inner.class_of[subgroup_idx] as usize
    }

    pub fn class_of(&self, s: &Subgroup) -> Result<usize> {
        self.subgroup_index(s)
            .map(|i| self.class_of_index(i))
            .ok_or_else(|| Error::argument("subgroup does not belong to this lattice"))
    }

    pub fn representative(&self, c: usize) -> &Subgroup {
        &self.inner.subgroups[self.inner.classes[c].rep as usize]
    }

    /// The trivial class (always index 0: unique subgroup of order 1).
    pub fn trivial_class(&self) -> usize {
        0
    }

    /// Class of the whole group (always the last).
    pub fn full_class(&self) -> usize {
        self.class_count() - 1
    }

    /// The inclusion poset of all subgroups; element ids are canonical
    /// subgroup indices in decimal.
    pub fn subgroup_poset(&self) -> &FinitePoset {
        &self.inner.poset
    }

    /// μ(D, S) on the subgroup inclusion poset, by subgroup index.
    pub fn mobius_between(&self, d: usize, s: usize) -> Rat {
        self.inner.poset.mobius_value(d, s)
    }

    /// All Sylow p-subgroups (subgroups of order equal to the p-part of
    /// |G|). For p coprime to |G| this is the trivial subgroup, once.
    pub fn sylow_subgroups(&self, p: u64) -> Vec<usize> {
        let target = p_part(self.inner.group.order() as u64, p) as u32;
        (0..self.inner.subgroups.len())
            .filter(|&i| self.inner.subgroups[i].order() == target)
            .collect()
    }

    /// O^p as a map on subgroup indices.
    pub fn p_residual_index(&self, subgroup_idx: usize, p: u64) -> usize {
        match self.inner.p_residual.get(&p) {
            Some(map) => map[subgroup_idx] as usize,
            // p does not divide |G|: every element has order coprime to p
            None => subgroup_idx,
        }
    }

    /// Class of O^p(H) for a class (H).
    pub fn p_residual_class(&self, c: usize, p: u64) -> usize {
        let rep = self.inner.classes[c].rep as usize;
        self.class_of_index(self.p_residual_index(rep, p))
    }

    pub fn is_p_perfect_class(&self, c: usize, p: u64) -> bool {
        let rep = self.inner.classes[c].rep as usize;
        self.p_residual_index(rep, p) == rep
    }

    /// Classes (H) with O^p(H) = H.
    pub fn p_perfect_classes(&self, p: u64) -> Vec<usize> {
        (0..self.class_count())
            .filter(|&c| self.is_p_perfect_class(c, p))
            .collect()
    }

    pub fn solvable_residual_index(&self, subgroup_idx: usize) -> usize {
        self.inner.solvable_residual[subgroup_idx] as usize
    }

    pub fn solvable_residual_class(&self, c: usize) -> usize {
        let rep = self.inner.classes[c].rep as usize;
        self.class_of_index(self.solvable_residual_index(rep))
    }

    /// Explicit conjugation search: is H conjugate to a subgroup of K?
    pub fn is_subconjugate(&self, h_class: usize, k_class: usize) -> bool {
        let k_rep = self.representative(k_class);
        self.inner.classes[h_class]
            .members
            .iter()
            .any(|&m| self.inner.subgroups[m as usize].bits().is_subset(k_rep.bits()))
    }

    /// Decompose a G-set into orbits and identify each orbit's stabilizer
    /// class. Checks Σ |G|/|stab| = |X|.
    pub fn orbit_decompose(&self, x: &GSet) -> Result<OrbitDecomposition> {
        if *x.group() != self.inner.group {
            return Err(Error::argument(
                "G-set is over a different group than the lattice",
            ));
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut total = 0usize;
        for orbit in x.orbits() {
            let stab = x.stabilizer(orbit[0]);
            let class = self.class_of(&stab)?;
            if orbit.len() * stab.order() as usize != self.inner.group.order() {
                return Err(Error::invariant(
                    "orbit length times stabilizer order is not |G|",
                ));
            }
            total += orbit.len();
            *counts.entry(class).or_insert(0) += 1;
        }
        if total != x.size() {
            return Err(Error::invariant("orbits do not partition the carrier"));
        }
        Ok(OrbitDecomposition {
            orbits: counts.into_iter().collect(),
        })
    }

    /// The table of marks m(H, K) = |(G/K)^H| as a class-indexed integer
    /// matrix (rows H, columns K), computed once and cached.
    pub(crate) fn marks_matrix(&self) -> &Vec<Vec<i64>> {
        self.inner.marks.get_or_init(|| {
            let cosets: Vec<GSet> = self
                .inner
                .classes
                .iter()
                .map(|c| GSet::coset_space(&self.inner.group, &self.inner.subgroups[c.rep as usize]))
                .collect();
            parallel::map_slice(&self.inner.classes, |row_class| {
                let h = &self.inner.subgroups[row_class.rep as usize];
                cosets.iter().map(|x| x.fixed_count(h) as i64).collect()
            })
        })
    }

    /// Install a cached table of marks; rejected on shape mismatch.
    pub fn install_marks(&self, matrix: Vec<Vec<i64>>) -> Result<()> {
        let c = self.class_count();
        if matrix.len() != c || matrix.iter().any(|r| r.len() != c) {
            return Err(Error::argument("cached marks matrix has wrong shape"));
        }
        let _ = self.inner.marks.set(matrix);
        Ok(())
    }

    /// Whether the marks matrix has been computed or installed.
    pub fn marks_ready(&self) -> bool {
        self.inner.marks.get().is_some()
    }

    /// Cached Möbius values for persisting (aligned with the subgroup
    /// poset's comparable pairs).
    pub fn mobius_table(&self) -> Vec<Rat> {
        self.inner.poset.mobius_values().to_vec()
    }

    pub fn install_mobius(&self, values: Vec<Rat>) -> Result<()> {
        self.inner.poset.install_mobius(values)
    }
}

/// Join-closure enumeration of all subgroups.
fn enumerate_subgroups(group: &PermGroup, max_subgroups: usize) -> Result<Vec<Subgroup>> {
    struct Entry {
        sub: Subgroup,
        gens: Vec<u16>,
    }

    let mut entries: Vec<Entry> = Vec::new();
    let mut index: HashMap<BitSet, usize> = HashMap::new();
    for s in group.cyclic_subgroups() {
        let gens = group.subgroup_generators(&s);
        index.insert(s.bits().clone(), entries.len());
        entries.push(Entry { sub: s, gens });
    }

    let mut frontier: Vec<usize> = (0..entries.len()).collect();
    while !frontier.is_empty() {
        // Candidate pairs: each frontier subgroup against everything known.
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &i in &frontier {
            for j in 0..entries.len() {
                if i != j && !(frontier.contains(&j) && j > i) {
                    pairs.push((i, j));
                }
            }
        }
        let joined: Vec<Option<(BitSet, Vec<u16>)>> = parallel::map_slice(&pairs, |&(i, j)| {
            let (a, b) = (&entries[i], &entries[j]);
            if a.sub.bits().is_subset(b.sub.bits()) || b.sub.bits().is_subset(a.sub.bits()) {
                return None;
            }
            let mut gens = a.gens.clone();
            gens.extend(b.gens.iter().copied());
            let join = group.subgroup_closure(&gens);
            Some((join.bits().clone(), gens))
        });
        let mut next = Vec::new();
        for item in joined.into_iter().flatten() {
            let (bits, gens) = item;
            if index.contains_key(&bits) {
                continue;
            }
            if entries.len() >= max_subgroups {
                return Err(Error::resource(format!(
                    "subgroup count exceeds cap {max_subgroups}"
                )));
            }
            index.insert(bits.clone(), entries.len());
            next.push(entries.len());
            entries.push(Entry {
                sub: Subgroup::from_bits(bits),
                gens,
            });
        }
        frontier = next;
    }

    let mut subgroups: Vec<Subgroup> = entries.into_iter().map(|e| e.sub).collect();
    sort_subgroups(&mut subgroups);
    Ok(subgroups)
}

//! Finite posets, their incidence algebra, and the Möbius function.
//!
//! A [`FinitePoset`] stores the full reflexive-transitive order relation over
//! a fixed element list. Incidence functions are rational-valued functions on
//! comparable pairs only; pairs `(x, y)` with `x ≰ y` are not representable,
//! which enforces the defining constraint of the incidence algebra.
//!
//! The Möbius function is constructed by the standard recursion
//! `μ(x,x) = 1`, `μ(x,y) = −Σ_{x≤z<y} μ(x,z)`, and is verified against
//! `μ∗ζ = ζ∗μ = δ` in the test suite. Both inversion directions are exposed:
//! downward (`f(y) = Σ_{x≤y} g(x)`) and upward (`f(x) = Σ_{y≥x} g(y)`),
//! each with its Möbius-weighted inverse.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::parallel;
use crate::rational::Rat;
use crate::{Error, Result};

/// A finite poset with precomputed order relation. Cheap to clone (shared
/// handle); all data is immutable after construction.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    inner: Arc<PosetInner>,
}

#[derive(Debug)]
struct PosetInner {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// Row x: the up-set {y | x ≤ y} as a bit set.
    up_bits: Vec<BitSet>,
    /// Sorted index lists, both directions.
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    /// All comparable pairs (x, y), x ≤ y, ordered by (x, y).
    pairs: Vec<(u32, u32)>,
    pair_index: HashMap<(u32, u32), u32>,
    /// A linear extension: z < y implies z appears before y.
    topo: Vec<u32>,
    mobius: OnceLock<Vec<Rat>>,
}

/// JSON form of a poset: element ids plus cover relations. The constructor
/// computes the reflexive-transitive closure and rejects cycles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.elements == other.inner.elements
                && self.inner.pairs == other.inner.pairs)
    }
}
impl Eq for FinitePoset {}

impl FinitePoset {
    /// Build from a relation that must already be reflexive, antisymmetric,
    /// and transitive; all three are checked.
    pub fn from_leq(elements: Vec<String>, leq: &[(String, String)]) -> Result<Self> {
        let (index, n) = build_index(&elements)?;
        let mut up_bits = vec![BitSet::new(n); n];
        for (a, b) in leq {
            let (x, y) = (lookup(&index, a)?, lookup(&index, b)?);
            up_bits[x].insert(y);
        }
        for x in 0..n {
            if !up_bits[x].contains(x) {
                return Err(Error::argument(format!(
                    "relation is not reflexive at '{}'",
                    elements[x]
                )));
            }
            for y in up_bits[x].iter_ones() {
                if x != y && up_bits[y].contains(x) {
                    return Err(Error::argument(format!(
                        "relation is not antisymmetric on '{}', '{}'",
                        elements[x], elements[y]
                    )));
                }
                if !up_bits[y].is_subset(&up_bits[x]) {
                    return Err(Error::argument(format!(
                        "relation is not transitive above '{}' ≤ '{}'",
                        elements[x], elements[y]
                    )));
                }
            }
        }
        Ok(Self::from_up_bits(elements, index, up_bits))
    }

    /// Build from cover relations: computes the reflexive-transitive closure
    /// and rejects cyclic cover sets.
    pub fn from_covers(elements: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        let (index, n) = build_index(&elements)?;
        let mut succ = vec![Vec::new(); n];
        for (a, b) in covers {
            let (x, y) = (lookup(&index, a)?, lookup(&index, b)?);
            if x == y {
                return Err(Error::argument(format!("cover '{}' < '{}' is a cycle", a, b)));
            }
            succ[x].push(y);
        }
        // Reachability by DFS from each source; a node reaching itself
        // through at least one edge is a cycle.
        let mut up_bits = vec![BitSet::new(n); n];
        for x in 0..n {
            let mut stack = succ[x].clone();
            let mut seen = BitSet::new(n);
            while let Some(v) = stack.pop() {
                if seen.contains(v) {
                    continue;
                }
                seen.insert(v);
                stack.extend_from_slice(&succ[v]);
            }
            if seen.contains(x) {
                return Err(Error::argument(format!(
                    "covers contain a cycle through '{}'",
                    elements[x]
                )));
            }
            seen.insert(x);
            up_bits[x] = seen;
        }
        Ok(Self::from_up_bits(elements, index, up_bits))
    }

    pub fn from_spec(spec: &PosetSpec) -> Result<Self> {
        Self::from_covers(spec.elements.clone(), &spec.covers)
    }

    /// Internal constructor for relations known to be valid orders
    /// (e.g. subgroup inclusion).
    pub(crate) fn from_up_bits_trusted(elements: Vec<String>, up_bits: Vec<BitSet>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Self::from_up_bits(elements, index, up_bits)
    }

    fn from_up_bits(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        up_bits: Vec<BitSet>,
    ) -> Self {
        let n = elements.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for x in 0..n {
            for y in up_bits[x].iter_ones() {
                up[x].push(y as u32);
                down[y].push(x as u32);
            }
        }
        let mut pairs = Vec::new();
        for x in 0..n {
            for &y in &up[x] {
                pairs.push((x as u32, y));
            }
        }
        pairs.sort_unstable();
        let pair_index = pairs
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u32))
            .collect();
        let mut topo: Vec<u32> = (0..n as u32).collect();
        topo.sort_by_key(|&v| (down[v as usize].len(), v));
        FinitePoset {
            inner: Arc::new(PosetInner {
                elements,
                index,
                up_bits,
                up,
                down,
                pairs,
                pair_index,
                topo,
                mobius: OnceLock::new(),
            }),
        }
    }

    /// Chain x_0 < x_1 < … < x_{n-1}.
    pub fn chain(n: usize) -> Self {
        let elements: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let covers: Vec<(String, String)> = (1..n)
            .map(|i| (format!("x{}", i - 1), format!("x{i}")))
            .collect();
        Self::from_covers(elements, &covers).expect("chain covers are acyclic")
    }

    /// n pairwise-incomparable elements.
    pub fn antichain(n: usize) -> Self {
        let elements: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        Self::from_covers(elements, &[]).expect("no covers")
    }

    /// Divisors of `n` ordered by divisibility; element ids are decimal.
    pub fn divisors(n: u64) -> Self {
        assert!(n >= 1);
        let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let elements: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
        let mut leq = Vec::new();
        for &a in &divs {
            for &b in &divs {
                if b % a == 0 {
                    leq.push((a.to_string(), b.to_string()));
                }
            }
        }
        Self::from_leq(elements, &leq).expect("divisibility is a partial order")
    }

    /// Subsets of {0, …, ground−1} ordered by inclusion; ids are sorted
    /// member digits, the empty set is "{}".
    pub fn subsets(ground: usize) -> Self {
        assert!(ground <= 16);
        let name = |mask: usize| {
            if mask == 0 {
                "{}".to_string()
            } else {
                (0..ground)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join("")
            }
        };
        let elements: Vec<String> = (0..1usize << ground).map(name).collect();
        let mut leq = Vec::new();
        for a in 0..1usize << ground {
            for b in 0..1usize << ground {
                if a & !b == 0 {
                    leq.push((name(a), name(b)));
                }
            }
        }
        Self::from_leq(elements, &leq).expect("inclusion is a partial order")
    }

    pub fn len(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.inner.elements
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.inner.index.get(id).copied()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.inner.up_bits[x].contains(y)
    }

    /// All comparable pairs (x, y) with x ≤ y, ordered by (x, y).
    pub fn comparable_pairs(&self) -> &[(u32, u32)] {
        &self.inner.pairs
    }

    pub(crate) fn up_set(&self, x: usize) -> &[u32] {
        &self.inner.up[x]
    }

    pub(crate) fn down_set(&self, y: usize) -> &[u32] {
        &self.inner.down[y]
    }

    /// Convolution identity: 1 on (x, x), 0 on other comparable pairs.
    pub fn delta(&self) -> IncidenceFunction {
        self.function_from(|x, y| if x == y { Rat::one() } else { Rat::zero() })
    }

    /// 1 on every comparable pair.
    pub fn zeta(&self) -> IncidenceFunction {
        self.function_from(|_, _| Rat::one())
    }

    /// The Möbius function, the convolution inverse of zeta. Computed once
    /// per poset and cached; rows (fixed first argument) are independent and
    /// run in parallel.
    pub fn mobius(&self) -> IncidenceFunction {
        let values = self.inner.mobius.get_or_init(|| self.compute_mobius());
        IncidenceFunction {
            poset: self.clone(),
            values: values.clone(),
        }
    }

    /// Single Möbius value without materializing the full function; zero on
    /// incomparable pairs.
    pub fn mobius_value(&self, x: usize, y: usize) -> Rat {
        let values = self.inner.mobius.get_or_init(|| self.compute_mobius());
        match self.inner.pair_index.get(&(x as u32, y as u32)) {
            Some(&i) => values[i as usize].clone(),
            None => Rat::zero(),
        }
    }

    /// Cached Möbius values aligned with [`comparable_pairs`](Self::comparable_pairs).
    pub(crate) fn mobius_values(&self) -> &[Rat] {
        self.inner.mobius.get_or_init(|| self.compute_mobius())
    }

    /// Install externally persisted Möbius values (cache path). Rejected if
    /// the length does not match; ignored if already computed.
    pub(crate) fn install_mobius(&self, values: Vec<Rat>) -> Result<()> {
        if values.len() != self.inner.pairs.len() {
            return Err(Error::argument(
                "cached Möbius table length does not match poset",
            ));
        }
        let _ = self.inner.mobius.set(values);
        Ok(())
    }

    fn compute_mobius(&self) -> Vec<Rat> {
        let inner = &self.inner;
        let rows = parallel::map_indexed(inner.elements.len(), |x| {
            // μ(x, y) over y in a linear extension of the up-set of x.
            let mut row: HashMap<u32, Rat> = HashMap::new();
            for &y in &inner.topo {
                let y_us = y as usize;
                if !inner.up_bits[x].contains(y_us) {
                    continue;
                }
                let value = if y_us == x {
                    Rat::one()
                } else {
                    let mut acc = Rat::zero();
                    for &z in &inner.up[x] {
                        if z != y && inner.up_bits[z as usize].contains(y_us) {
                            acc += &row[&z];
                        }
                    }
                    -acc
                };
                row.insert(y, value);
            }
            row
        });
        inner
            .pairs
            .iter()
            .map(|&(x, y)| rows[x as usize][&y].clone())
            .collect()
    }

    /// Build an incidence function by evaluating `f` on comparable pairs.
    pub fn function_from<F: Fn(usize, usize) -> Rat>(&self, f: F) -> IncidenceFunction {
        let values = self
            .inner
            .pairs
            .iter()
            .map(|&(x, y)| f(x as usize, y as usize))
            .collect();
        IncidenceFunction {
            poset: self.clone(),
            values,
        }
    }

    /// Downward sum transform: f(y) = Σ_{x ≤ y} g(x).
    pub fn sum_down(&self, g: &[Rat]) -> Vec<Rat> {
        assert_eq!(g.len(), self.len());
        (0..self.len())
            .map(|y| self.down_set(y).iter().map(|&x| &g[x as usize]).sum())
            .collect()
    }

    /// Inverse of [`sum_down`](Self::sum_down): g(y) = Σ_{x ≤ y} μ(x,y) f(x).
    pub fn invert_down(&self, f: &[Rat]) -> Vec<Rat> {
        assert_eq!(f.len(), self.len());
        let mu = self.mobius();
        (0..self.len())
            .map(|y| {
                self.down_set(y)
                    .iter()
                    .map(|&x| mu.value_at(x as usize, y).unwrap() * &f[x as usize])
                    .sum()
            })
            .collect()
    }

    /// Upward sum transform: f(x) = Σ_{y ≥ x} g(y).
    pub fn sum_up(&self, g: &[Rat]) -> Vec<Rat> {
        assert_eq!(g.len(), self.len());
        (0..self.len())
            .map(|x| self.up_set(x).iter().map(|&y| &g[y as usize]).sum())
            .collect()
    }

    /// Inverse of [`sum_up`](Self::sum_up): g(x) = Σ_{y ≥ x} μ(x,y) f(y).
    pub fn invert_up(&self, f: &[Rat]) -> Vec<Rat> {
        assert_eq!(f.len(), self.len());
        let mu = self.mobius();
        (0..self.len())
            .map(|x| {
                self.up_set(x)
                    .iter()
                    .map(|&y| mu.value_at(x, y as usize).unwrap() * &f[y as usize])
                    .sum()
            })
            .collect()
    }
}

/// A rational-valued function on the comparable pairs of a poset. Values on
/// incomparable pairs are identically zero and cannot be stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceFunction {
    poset: FinitePoset,
    values: Vec<Rat>,
}

impl IncidenceFunction {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// Value at a pair of element indices; zero when incomparable.
    pub fn value_at(&self, x: usize, y: usize) -> Option<Rat> {
        if x >= self.poset.len() || y >= self.poset.len() {
            return None;
        }
        Some(
            match self.poset.inner.pair_index.get(&(x as u32, y as u32)) {
                Some(&i) => self.values[i as usize].clone(),
                None => Rat::zero(),
            },
        )
    }

    /// Value at a pair of element ids; zero when incomparable.
    pub fn value(&self, x: &str, y: &str) -> Result<Rat> {
        let xi = self
            .poset
            .index_of(x)
            .ok_or_else(|| Error::argument(format!("unknown element '{x}'")))?;
        let yi = self
            .poset
            .index_of(y)
            .ok_or_else(|| Error::argument(format!("unknown element '{y}'")))?;
        Ok(self.value_at(xi, yi).unwrap())
    }

    /// Values aligned with [`FinitePoset::comparable_pairs`].
    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Convolution (f∗g)(x,y) = Σ_{x≤z≤y} f(x,z)·g(z,y).
    pub fn convolve(&self, g: &IncidenceFunction) -> Result<IncidenceFunction> {
        if self.poset != g.poset {
            return Err(Error::argument(
                "convolution of incidence functions over different posets",
            ));
        }
        let p = &self.poset;
        let values = p
            .comparable_pairs()
            .iter()
            .map(|&(x, y)| {
                let mut acc = Rat::zero();
                for &z in p.up_set(x as usize) {
                    if p.leq(z as usize, y as usize) {
                        acc += self.value_at(x as usize, z as usize).unwrap()
                            * g.value_at(z as usize, y as usize).unwrap();
                    }
                }
                acc
            })
            .collect();
        Ok(IncidenceFunction {
            poset: p.clone(),
            values,
        })
    }

    pub fn add(&self, g: &IncidenceFunction) -> Result<IncidenceFunction> {
        if self.poset != g.poset {
            return Err(Error::argument(
                "sum of incidence functions over different posets",
            ));
        }
        Ok(IncidenceFunction {
            poset: self.poset.clone(),
            values: self
                .values
                .iter()
                .zip(&g.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, r: &Rat) -> IncidenceFunction {
        IncidenceFunction {
            poset: self.poset.clone(),
            values: self.values.iter().map(|v| v * r).collect(),
        }
    }
}

fn build_index(elements: &[String]) -> Result<(HashMap<String, usize>, usize)> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::argument(format!("duplicate element id '{e}'")));
        }
    }
    Ok((index, elements.len()))
}

fn lookup(index: &HashMap<String, usize>, id: &str) -> Result<usize> {
    index
        .get(id)
        .copied()
        .ok_or_else(|| Error::argument(format!("unknown element '{id}' in relation")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn delta_and_zeta_on_small_posets() {
        let chain = FinitePoset::chain(2);
        let d = chain.delta();
        assert_eq!(d.value("x0", "x0").unwrap(), int(1));
        assert_eq!(d.value("x0", "x1").unwrap(), int(0));
        let z = chain.zeta();
        assert_eq!(z.value("x0", "x1").unwrap(), int(1));

        let anti = FinitePoset::antichain(2);
        let z = anti.zeta();
        assert_eq!(z.value("x0", "x1").unwrap(), int(0));
        assert_eq!(z.value("x0", "x0").unwrap(), int(1));

        let div6 = FinitePoset::divisors(6);
        let z = div6.zeta();
        assert_eq!(z.value("2", "6").unwrap(), int(1));
        assert_eq!(z.value("2", "3").unwrap(), int(0));
    }

    #[test]
    fn empty_poset() {
        let p = FinitePoset::from_covers(vec![], &[]).unwrap();
        assert!(p.is_empty());
        assert!(p.delta().values().is_empty());
        let conv = p.zeta().convolve(&p.mobius()).unwrap();
        assert!(conv.values().is_empty());
    }

    #[test]
    fn convolution_counts_interval() {
        // ζ∗ζ counts interval elements: 3 on the ends of a 3-chain.
        let chain = FinitePoset::chain(3);
        let zz = chain.zeta().convolve(&chain.zeta()).unwrap();
        assert_eq!(zz.value("x0", "x2").unwrap(), int(3));
    }

    #[test]
    fn delta_is_convolution_identity() {
        let p = FinitePoset::divisors(30);
        let f = p.function_from(|x, y| rat((x + 2 * y) as i64, 7));
        assert_eq!(p.delta().convolve(&f).unwrap(), f);
        assert_eq!(f.convolve(&p.delta()).unwrap(), f);
    }

    #[test]
    fn mobius_inverts_zeta_on_boolean_lattice() {
        let b2 = FinitePoset::subsets(2);
        let mu = b2.mobius();
        assert_eq!(mu.convolve(&b2.zeta()).unwrap(), b2.delta());
        assert_eq!(b2.zeta().convolve(&mu).unwrap(), b2.delta());
    }

    #[test]
    fn mobius_subset_poset_sign_rule() {
        let b3 = FinitePoset::subsets(3);
        let mu = b3.mobius();
        assert_eq!(b3.comparable_pairs().len(), 27);
        assert_eq!(mu.value("{}", "012").unwrap(), int(-1));
        for &(x, y) in b3.comparable_pairs() {
            let size = |id: &str| if id == "{}" { 0 } else { id.len() };
            let diff = size(&b3.elements()[y as usize]) - size(&b3.elements()[x as usize]);
            let expected = if diff % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(mu.value_at(x as usize, y as usize).unwrap(), expected);
        }
    }

    #[test]
    fn mobius_divisor_poset() {
        let p = FinitePoset::divisors(12);
        let mu = p.mobius();
        assert_eq!(mu.value("1", "6").unwrap(), int(1));
        assert_eq!(mu.value("1", "12").unwrap(), int(0));
        assert_eq!(mu.value("2", "6").unwrap(), int(-1));
        assert_eq!(mu.value("2", "2").unwrap(), int(1));
    }

    #[test]
    fn chain_mobius_values() {
        let chain = FinitePoset::chain(3);
        let mu = chain.mobius();
        assert_eq!(mu.value("x0", "x0").unwrap(), int(1));
        assert_eq!(mu.value("x0", "x1").unwrap(), int(-1));
        assert_eq!(mu.value("x0", "x2").unwrap(), int(0));
    }

    #[test]
    fn sum_then_invert_round_trip() {
        let chain = FinitePoset::chain(3);
        let g = vec![int(1), int(1), int(1)];
        let f = chain.sum_down(&g);
        assert_eq!(f[2], int(3));
        assert_eq!(chain.invert_down(&f), g);

        let single = FinitePoset::chain(1);
        let g = vec![rat(5, 3)];
        assert_eq!(single.sum_down(&g), g);
        assert_eq!(single.sum_up(&g), g);
    }

    #[test]
    fn euler_totient_inversion() {
        // Σ_{d|n} φ(d) = n, and Möbius inversion recovers φ.
        fn totient(n: u64) -> u64 {
            (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64
        }
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for n in [6u64, 12, 36, 100] {
            let p = FinitePoset::divisors(n);
            let g: Vec<Rat> = p
                .elements()
                .iter()
                .map(|d| int(totient(d.parse().unwrap()) as i64))
                .collect();
            let f = p.sum_down(&g);
            let top = p.index_of(&n.to_string()).unwrap();
            assert_eq!(f[top], int(n as i64));
            assert_eq!(p.invert_down(&f), g);
        }
    }

    #[test]
    fn cover_cycles_rejected() {
        let err = FinitePoset::from_covers(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        );
        assert!(err.is_err());
        let err = FinitePoset::from_covers(vec!["a".into()], &[("a".into(), "a".into())]);
        assert!(err.is_err());
    }

    #[test]
    fn mismatched_posets_rejected() {
        let a = FinitePoset::chain(2);
        let b = FinitePoset::chain(3);
        assert!(a.zeta().convolve(&b.zeta()).is_err());
    }
}

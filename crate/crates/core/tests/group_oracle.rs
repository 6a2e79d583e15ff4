//! Brute-force oracles for the group layer: independent subgroup
//! enumeration, counting-lemma checks, Sylow counts, and residual
//! minimality.

use std::collections::BTreeSet;

use ambicard_core::group::{
    alternating, cyclic, dihedral, gl2, klein_four, quaternion8, symmetric, GSet, Perm,
    PermGroup, SubgroupLattice, DEFAULT_MAX_ORDER,
};

fn corpus_small() -> Vec<(&'static str, PermGroup)> {
    let cap = DEFAULT_MAX_ORDER;
    vec![
        ("S3", symmetric(3, cap).unwrap()),
        ("S4", symmetric(4, cap).unwrap()),
        ("A4", alternating(4, cap).unwrap()),
        ("D4", dihedral(4, cap).unwrap()),
        ("D6", dihedral(6, cap).unwrap()),
        ("Q8", quaternion8(cap).unwrap()),
        ("V4", klein_four(cap).unwrap()),
        ("C6", cyclic(6, cap).unwrap()),
        ("C12", cyclic(12, cap).unwrap()),
        ("GL2F2", gl2(2, cap).unwrap()),
    ]
}

/// Independent subgroup enumeration: closures of every generating set of
/// size at most 3. Complete for |G| ≤ 24: a group needing 4 generators has
/// order at least 16, and no order-16 subgroup fits in these groups, while
/// the order-24 groups themselves are at most 3-generated.
fn subgroups_by_subset_closure(g: &PermGroup) -> BTreeSet<Vec<u16>> {
    assert!(g.order() <= 24);
    let n = g.order() as u16;
    let mut found = BTreeSet::new();
    found.insert(g.trivial_subgroup().element_indices());
    for a in 0..n {
        found.insert(g.subgroup_closure(&[a]).element_indices());
        for b in a + 1..n {
            found.insert(g.subgroup_closure(&[a, b]).element_indices());
            for c in b + 1..n {
                found.insert(g.subgroup_closure(&[a, b, c]).element_indices());
            }
        }
    }
    found
}

/// Exhaustive oracle for very small groups: test every subset directly.
fn subgroups_by_full_subset_scan(g: &PermGroup) -> BTreeSet<Vec<u16>> {
    assert!(g.order() <= 12);
    let n = g.order();
    let mut found = BTreeSet::new();
    for mask in 0u32..1 << n {
        let subset: Vec<u16> = (0..n as u16).filter(|&i| mask >> i & 1 == 1).collect();
        if !subset.contains(&g.identity_index()) {
            continue;
        }
        let closed = subset.iter().all(|&a| {
            subset.contains(&g.inv(a))
                && subset.iter().all(|&b| subset.contains(&g.mul(a, b)))
        });
        if closed {
            found.insert(subset);
        }
    }
    found
}

#[test]
fn lattice_matches_subset_closure_oracle() {
    for (name, g) in corpus_small() {
        let lat = SubgroupLattice::compute(&g).unwrap();
        let ours: BTreeSet<Vec<u16>> = lat
            .subgroups()
            .iter()
            .map(|s| s.element_indices())
            .collect();
        let oracle = subgroups_by_subset_closure(&g);
        assert_eq!(ours, oracle, "{name}");
    }
}

#[test]
fn lattice_matches_full_scan_on_tiny_groups() {
    for (name, g) in corpus_small() {
        if g.order() > 12 {
            continue;
        }
        let lat = SubgroupLattice::compute(&g).unwrap();
        let ours: BTreeSet<Vec<u16>> = lat
            .subgroups()
            .iter()
            .map(|s| s.element_indices())
            .collect();
        assert_eq!(ours, subgroups_by_full_subset_scan(&g), "{name}");
    }
}

#[test]
fn known_subgroup_counts() {
    let counts = [
        ("S3", symmetric(3, DEFAULT_MAX_ORDER).unwrap(), 6usize),
        ("Q8", quaternion8(DEFAULT_MAX_ORDER).unwrap(), 6),
        ("S4", symmetric(4, DEFAULT_MAX_ORDER).unwrap(), 30),
        ("A5", alternating(5, DEFAULT_MAX_ORDER).unwrap(), 59),
    ];
    for (name, g, expected) in counts {
        let lat = SubgroupLattice::compute(&g).unwrap();
        assert_eq!(lat.subgroups().len(), expected, "{name}");
    }
}

#[test]
fn counting_lemma_on_corpus_gsets() {
    use ambicard_core::burnside::check_counting_congruence;
    for (name, g) in corpus_small() {
        let lat = SubgroupLattice::compute(&g).unwrap();
        let mut gsets = vec![GSet::regular(&g), GSet::trivial(&g, 3)];
        for c in 0..lat.class_count() {
            gsets.push(GSet::coset_space(&g, lat.representative(c)));
        }
        // a product too
        let last = gsets.last().unwrap().clone();
        gsets.push(gsets[0].product(&last).unwrap());
        for (i, x) in gsets.iter().enumerate() {
            let report = check_counting_congruence(x);
            assert!(report.holds && report.exact, "{name}, gset {i}");
        }
    }
}

#[test]
fn sylow_counts_are_one_mod_p() {
    for (name, g) in corpus_small() {
        let lat = SubgroupLattice::compute(&g).unwrap();
        for p in [2u64, 3, 5] {
            let count = lat.sylow_subgroups(p).len() as u64;
            assert_eq!(count % p, 1, "{name}, p = {p}");
        }
    }
}

#[test]
fn orbit_stabilizer_across_actions() {
    for (name, g) in corpus_small() {
        let lat = SubgroupLattice::compute(&g).unwrap();
        for c in 0..lat.class_count() {
            let x = GSet::coset_space(&g, lat.representative(c));
            for orbit in x.orbits() {
                let stab = x.stabilizer(orbit[0]);
                assert_eq!(
                    orbit.len() * stab.order() as usize,
                    g.order(),
                    "{name}, class {c}"
                );
            }
        }
    }
}

#[test]
fn p_residual_is_minimal_normal_with_p_power_quotient() {
    for (name, g) in [
        ("S4", symmetric(4, DEFAULT_MAX_ORDER).unwrap()),
        ("D6", dihedral(6, DEFAULT_MAX_ORDER).unwrap()),
        ("Q8", quaternion8(DEFAULT_MAX_ORDER).unwrap()),
    ] {
        let lat = SubgroupLattice::compute(&g).unwrap();
        for p in [2u64, 3] {
            for h in lat.subgroups() {
                let r = g.p_residual(h, p);
                assert!(r.is_subgroup_of(h), "{name}: O^{p}(H) ≤ H");
                // normal in H
                for e in h.element_indices() {
                    assert_eq!(g.conjugate_subgroup(e, &r), r, "{name}: normality");
                }
                // p-power quotient
                let mut q = (h.order() / r.order()) as u64;
                while q % p == 0 {
                    q /= p;
                }
                assert_eq!(q, 1, "{name}: quotient is a {p}-group");
                // minimality among normal subgroups with p-power quotient
                for n in lat.subgroups() {
                    if !n.is_subgroup_of(h) {
                        continue;
                    }
                    let normal = h
                        .element_indices()
                        .iter()
                        .all(|&e| g.conjugate_subgroup(e, n) == *n);
                    if !normal {
                        continue;
                    }
                    let mut q = (h.order() / n.order()) as u64;
                    while q % p == 0 {
                        q /= p;
                    }
                    if q == 1 {
                        assert!(
                            r.is_subgroup_of(n),
                            "{name}: O^{p}(H) must lie in every normal N with p-power quotient"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn solvable_residual_examples() {
    let s5 = symmetric(5, DEFAULT_MAX_ORDER).unwrap();
    let whole = s5.full_subgroup();
    let a5 = s5.solvable_residual(&whole);
    assert_eq!(a5.order(), 60);
    assert_eq!(s5.solvable_residual(&a5), a5);
    // solvable groups collapse to the trivial subgroup
    for g in [
        symmetric(4, DEFAULT_MAX_ORDER).unwrap(),
        dihedral(6, DEFAULT_MAX_ORDER).unwrap(),
        quaternion8(DEFAULT_MAX_ORDER).unwrap(),
    ] {
        assert_eq!(g.solvable_residual(&g.full_subgroup()).order(), 1);
    }
}

/// Restriction cross-check: C₂³ with S₃ permuting coordinates, restricted
/// to ⟨(0 1)⟩, against a direct orbit count.
#[test]
fn restriction_matches_direct_orbit_count() {
    let s3 = symmetric(3, DEFAULT_MAX_ORDER).unwrap();
    // carrier: bit vectors b0 + 2·b1 + 4·b2; σ permutes bit positions
    let bit_perm = |sigma: &Perm| -> Perm {
        Perm::from_images(
            (0..8u16)
                .map(|v| {
                    let mut out = 0u16;
                    for i in 0..3u16 {
                        if v >> i & 1 == 1 {
                            out |= 1 << sigma.apply(i);
                        }
                    }
                    out
                })
                .collect(),
        )
        .unwrap()
    };
    let gen_action: Vec<Perm> = s3.generators().iter().map(bit_perm).collect();
    let cube = GSet::new(&s3, 8, gen_action, Some(0)).unwrap();

    let t = s3
        .index_of(&Perm::from_cycles(3, &[&[0, 1]]).unwrap())
        .unwrap();
    let c2 = s3.cyclic_subgroup(t);
    let c2_group = s3.subgroup_as_group(&c2);
    let restricted = cube.restrict(&c2_group).unwrap();
    // direct count: swapping the first two coordinates fixes the 4 vectors
    // with b0 = b1 and pairs up the other 4, so 4 + 2 orbits
    assert_eq!(restricted.orbit_count(), 6);
    let lat = SubgroupLattice::compute(&c2_group).unwrap();
    let dec = lat.orbit_decompose(&restricted).unwrap();
    assert_eq!(dec.orbits, vec![(0, 2), (1, 4)]);
}

#[test]
fn gl2_f2_is_s3() {
    let g = gl2(2, DEFAULT_MAX_ORDER).unwrap();
    assert_eq!(g.order(), 6);
    let lat = SubgroupLattice::compute(&g).unwrap();
    assert_eq!(lat.class_count(), 4);
    let orders: Vec<u32> = lat.classes().iter().map(|c| c.order()).collect();
    assert_eq!(orders, vec![1, 2, 3, 6]);
}

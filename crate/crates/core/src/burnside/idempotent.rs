//! Primitive idempotents of Ω_ℚ(G) and Ω_p(G).
//!
//! Rational: for every class (H),
//!
//!   e^H = (1/|NH|) Σ_{D ≤ H} |D| μ(D, H) [G/D],
//!
//! with μ the Möbius function of the subgroup poset; the marks vector of e^H
//! is the indicator of (H).
//!
//! p-local: for every p-perfect class (H),
//!
//!   e_p^H = (1/|NH|) Σ_{D ≤ NH} |D| λ(D, H) [G/D],
//!   λ(D, H) = Σ_S μ(D, S)  over subgroups S with O^p(S) = H,
//!
//! which equals Σ e^S over the classes with O^p(S) conjugate to H. These are
//! the complete sets of primitive idempotents; p-local coefficients are
//! p-integral.

use num_traits::Zero;

use crate::group::SubgroupLattice;
use crate::parallel;
use crate::rational::{int, Rat};
use crate::{Error, Result};

use super::BurnsideElement;

/// The rational primitive idempotent e^H for a class index.
pub fn rational_idempotent(lattice: &SubgroupLattice, class: usize) -> BurnsideElement {
    let rep = lattice.class(class).representative_index();
    let scale = int(lattice.class(class).normalizer_order() as i64).recip();
    let mut coeffs: Vec<(usize, Rat)> = Vec::new();
    for &d in lattice.subgroup_poset().down_set(rep) {
        let d = d as usize;
        let mu = lattice.mobius_between(d, rep);
        if mu.is_zero() {
            continue;
        }
        let weight = int(lattice.subgroup(d).order() as i64) * mu * &scale;
        coeffs.push((lattice.class_of_index(d), weight));
    }
    BurnsideElement::from_coeffs(lattice, coeffs)
}

/// All rational primitive idempotents, in class order.
pub fn rational_idempotents(lattice: &SubgroupLattice) -> Vec<BurnsideElement> {
    parallel::map_indexed(lattice.class_count(), |c| rational_idempotent(lattice, c))
}

/// The p-local primitive idempotent e_p^H for a p-perfect class index.
pub fn p_local_idempotent(
    lattice: &SubgroupLattice,
    class: usize,
    p: u64,
) -> Result<BurnsideElement> {
    if !lattice.is_p_perfect_class(class, p) {
        return Err(Error::argument(format!(
            "class {class} (order {}) is not {p}-perfect",
            lattice.class(class).order()
        )));
    }
    let rep = lattice.class(class).representative_index();
    let n_idx = lattice.class(class).normalizer_index();
    let scale = int(lattice.class(class).normalizer_order() as i64).recip();

    // Subgroups S with O^p(S) = H on the nose; each lies inside NH.
    let sources: Vec<usize> = (0..lattice.subgroups().len())
        .filter(|&s| lattice.p_residual_index(s, p) == rep)
        .collect();

    let poset = lattice.subgroup_poset();
    let mut coeffs: Vec<(usize, Rat)> = Vec::new();
    for &d in poset.down_set(n_idx) {
        let d = d as usize;
        let mut lambda = Rat::zero();
        for &s in &sources {
            lambda += lattice.mobius_between(d, s);
        }
        if lambda.is_zero() {
            continue;
        }
        let weight = int(lattice.subgroup(d).order() as i64) * lambda * &scale;
        coeffs.push((lattice.class_of_index(d), weight));
    }
    Ok(BurnsideElement::from_coeffs(lattice, coeffs))
}

/// All p-local primitive idempotents, paired with their p-perfect class.
pub fn p_local_idempotents(
    lattice: &SubgroupLattice,
    p: u64,
) -> Result<Vec<(usize, BurnsideElement)>> {
    let classes = lattice.p_perfect_classes(p);
    parallel::map_slice(&classes, |&c| {
        p_local_idempotent(lattice, c, p).map(|e| (c, e))
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::BurnsideElement;
    use crate::group::{cyclic, symmetric, SubgroupLattice, DEFAULT_MAX_ORDER};
    use crate::rational::rat;

    #[test]
    fn cp_rational_idempotent() {
        for p in [2i64, 3, 5] {
            let g = cyclic(p as usize, DEFAULT_MAX_ORDER).unwrap();
            let lat = SubgroupLattice::compute(&g).unwrap();
            // e^{C_p} = [G/C_p] − (1/p)[G/1]
            let e = rational_idempotent(&lat, 1);
            let expected =
                BurnsideElement::from_coeffs(&lat, [(0, rat(-1, p)), (1, int(1))]);
            assert_eq!(e, expected);
            assert_eq!(e.marks().values(), &[int(0), int(1)]);
        }
    }

    #[test]
    fn idempotent_marks_are_indicators() {
        let g = symmetric(4, DEFAULT_MAX_ORDER).unwrap();
        let lat = SubgroupLattice::compute(&g).unwrap();
        for (c, e) in rational_idempotents(&lat).iter().enumerate() {
            let marks = e.marks();
            for k in 0..lat.class_count() {
                let expected = if k == c { int(1) } else { int(0) };
                assert_eq!(marks.value(k), &expected, "class {c}, mark {k}");
            }
        }
    }

    #[test]
    fn rational_idempotents_sum_to_one() {
        let g = symmetric(3, DEFAULT_MAX_ORDER).unwrap();
        let lat = SubgroupLattice::compute(&g).unwrap();
        let sum = rational_idempotents(&lat)
            .iter()
            .fold(BurnsideElement::zero(&lat), |acc, e| acc.add(e));
        assert_eq!(sum, BurnsideElement::one(&lat));
    }

    #[test]
    fn p_group_has_single_p_local_idempotent() {
        let g = cyclic(4, DEFAULT_MAX_ORDER).unwrap();
        let lat = SubgroupLattice::compute(&g).unwrap();
        let idems = p_local_idempotents(&lat, 2).unwrap();
        assert_eq!(idems.len(), 1);
        assert_eq!(idems[0].1, BurnsideElement::one(&lat));
    }

    #[test]
    fn s3_two_local_idempotents() {
        let g = symmetric(3, DEFAULT_MAX_ORDER).unwrap();
        let lat = SubgroupLattice::compute(&g).unwrap();
        let idems = p_local_idempotents(&lat, 2).unwrap();
        // p-perfect classes at p = 2: trivial and C₃
        assert_eq!(
            idems.iter().map(|(c, _)| *c).collect::<Vec<_>>(),
            vec![0, 2]
        );
        let e1 = &idems[0].1;
        let expected =
            BurnsideElement::from_coeffs(&lat, [(0, rat(-1, 3)), (1, int(1))]);
        assert_eq!(e1, &expected);
        // orthogonal idempotents summing to the unit
        let e2 = &idems[1].1;
        assert_eq!(e1.mul(e1), *e1);
        assert_eq!(e2.mul(e2), *e2);
        assert!(e1.mul(e2).is_zero());
        assert_eq!(e1.add(e2), BurnsideElement::one(&lat));
        assert!(e1.is_p_integral(2) && e2.is_p_integral(2));
    }

    #[test]
    fn p_local_marks_follow_residual_classes() {
        let g = symmetric(3, DEFAULT_MAX_ORDER).unwrap();
        let lat = SubgroupLattice::compute(&g).unwrap();
        for (c, e) in p_local_idempotents(&lat, 2).unwrap() {
            let marks = e.marks();
            for k in 0..lat.class_count() {
                let expected = if lat.p_residual_class(k, 2) == c {
                    int(1)
                } else {
                    int(0)
                };
                assert_eq!(marks.value(k), &expected);
            }
        }
    }

    #[test]
    fn non_p_perfect_class_rejected() {
        let g = symmetric(3, DEFAULT_MAX_ORDER).unwrap();
        let lat = SubgroupLattice::compute(&g).unwrap();
        // class 1 is (C₂): O²(C₂) = 1 ≠ C₂
        assert!(p_local_idempotent(&lat, 1, 2).is_err());
    }

    fn int(n: i64) -> Rat {
        crate::rational::int(n)
    }
}

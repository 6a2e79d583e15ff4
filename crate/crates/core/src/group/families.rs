//! Constructors for the named group families used throughout the corpus.

use super::{Perm, PermGroup};
use crate::{Error, Result};

/// Symmetric group on n points (n ≥ 1; n = 0 gives the trivial group on one
/// point).
pub fn symmetric(n: usize, max_order: usize) -> Result<PermGroup> {
    let degree = n.max(1);
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(degree, &[&[0, 1]])?);
    }
    if n >= 3 {
        let cycle: Vec<u16> = (0..n as u16).collect();
        gens.push(Perm::from_cycles(degree, &[&cycle])?);
    }
    PermGroup::closure(degree, gens, max_order)
}

/// Alternating group on n points, generated by consecutive 3-cycles.
pub fn alternating(n: usize, max_order: usize) -> Result<PermGroup> {
    let degree = n.max(1);
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(2) {
        gens.push(Perm::from_cycles(
            degree,
            &[&[i as u16, i as u16 + 1, i as u16 + 2]],
        )?);
    }
    PermGroup::closure(degree, gens, max_order)
}

/// Cyclic group of order n acting on n points.
pub fn cyclic(n: usize, max_order: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::argument("cyclic group order must be positive"));
    }
    let mut gens = Vec::new();
    if n > 1 {
        let cycle: Vec<u16> = (0..n as u16).collect();
        gens.push(Perm::from_cycles(n, &[&cycle])?);
    }
    PermGroup::closure(n, gens, max_order)
}

/// Dihedral group of the regular n-gon (order 2n), acting on the n vertices.
/// Requires n ≥ 3 so the polygon action is faithful of order 2n.
pub fn dihedral(n: usize, max_order: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::argument(
            "dihedral family needs n >= 3 (polygon vertices)",
        ));
    }
    let rotation: Vec<u16> = (0..n as u16).collect();
    let reflection = Perm::from_images((0..n as u16).map(|i| (n as u16 - i) % n as u16).collect())?;
    PermGroup::closure(
        n,
        vec![Perm::from_cycles(n, &[&rotation])?, reflection],
        max_order,
    )
}

/// Klein four-group as ⟨(0 1), (2 3)⟩.
pub fn klein_four(max_order: usize) -> Result<PermGroup> {
    PermGroup::closure(
        4,
        vec![
            Perm::from_cycles(4, &[&[0, 1]])?,
            Perm::from_cycles(4, &[&[2, 3]])?,
        ],
        max_order,
    )
}

/// Quaternion group Q₈ in its left-regular representation on the eight
/// elements {1, −1, i, −i, j, −j, k, −k} (in that index order).
pub fn quaternion8(max_order: usize) -> Result<PermGroup> {
    let left_i = Perm::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4])?;
    let left_j = Perm::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3])?;
    PermGroup::closure(8, vec![left_i, left_j], max_order)
}

/// GL₂(F_p) acting on the p²−1 nonzero column vectors of F_p², enumerated in
/// lexicographic (a, b) order.
pub fn gl2(p: u64, max_order: usize) -> Result<PermGroup> {
    if !crate::arith::is_prime(p) {
        return Err(Error::argument(format!("GL2 field size {p} must be prime")));
    }
    let p = p as u16;
    let vectors: Vec<(u16, u16)> = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .collect();
    let vec_index = |a: u16, b: u16| -> u16 {
        vectors
            .iter()
            .position(|&v| v == (a, b))
            .expect("nonzero vector") as u16
    };
    let matrix_perm = |m: [[u16; 2]; 2]| -> Result<Perm> {
        let images = vectors
            .iter()
            .map(|&(a, b)| {
                let x = (m[0][0] * a + m[0][1] * b) % p;
                let y = (m[1][0] * a + m[1][1] * b) % p;
                vec_index(x, y)
            })
            .collect();
        Perm::from_images(images)
    };
    // Two transvections generate SL₂; a diagonal with a primitive root
    // extends to all of GL₂.
    let g = primitive_root(p);
    let gens = vec![
        matrix_perm([[1, 1], [0, 1]])?,
        matrix_perm([[1, 0], [1, 1]])?,
        matrix_perm([[g, 0], [0, 1]])?,
    ];
    PermGroup::closure(vectors.len(), gens, max_order)
}

fn primitive_root(p: u16) -> u16 {
    'next: for g in 2..p {
        let mut x = g as u32;
        for _ in 1..p - 2 {
            x = x * g as u32 % p as u32;
            if x == 1 {
                continue 'next;
            }
        }
        return g;
    }
    1
}

/// Direct product acting on the disjoint union of the two carriers.
pub fn direct_product(a: &PermGroup, b: &PermGroup, max_order: usize) -> Result<PermGroup> {
    let degree = a.degree() + b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u16> = g.images().to_vec();
        images.extend(a.degree() as u16..degree as u16);
        gens.push(Perm::from_images(images)?);
    }
    for g in b.generators() {
        let mut images: Vec<u16> = (0..a.degree() as u16).collect();
        images.extend(g.images().iter().map(|&i| i + a.degree() as u16));
        gens.push(Perm::from_images(images)?);
    }
    PermGroup::closure(degree, gens, max_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    #[test]
    fn family_orders() {
        let cap = DEFAULT_MAX_ORDER;
        assert_eq!(symmetric(3, cap).unwrap().order(), 6);
        assert_eq!(symmetric(5, cap).unwrap().order(), 120);
        assert_eq!(alternating(4, cap).unwrap().order(), 12);
        assert_eq!(alternating(5, cap).unwrap().order(), 60);
        assert_eq!(cyclic(4, cap).unwrap().order(), 4);
        assert_eq!(cyclic(12, cap).unwrap().order(), 12);
        assert_eq!(dihedral(4, cap).unwrap().order(), 8);
        assert_eq!(dihedral(6, cap).unwrap().order(), 12);
        assert_eq!(klein_four(cap).unwrap().order(), 4);
        assert_eq!(quaternion8(cap).unwrap().order(), 8);
        // |GL₂(F_p)| = (p²−1)(p²−p)
        assert_eq!(gl2(2, cap).unwrap().order(), 6);
        assert_eq!(gl2(3, cap).unwrap().order(), 48);
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q8 = quaternion8(DEFAULT_MAX_ORDER).unwrap();
        let involutions = (0..8u16)
            .filter(|&e| q8.element_order(e) == 2)
            .count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn direct_product_order() {
        let cap = DEFAULT_MAX_ORDER;
        let c2 = cyclic(2, cap).unwrap();
        let c3 = cyclic(3, cap).unwrap();
        let prod = direct_product(&c2, &c3, cap).unwrap();
        assert_eq!(prod.order(), 6);
        assert_eq!(prod.degree(), 5);
    }
}

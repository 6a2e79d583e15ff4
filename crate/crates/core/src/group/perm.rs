//! Permutations of {0, …, n−1}, stored as image arrays.

use crate::{Error, Result};

/// A permutation given by its image array: `i ↦ images[i]`. Ordering is
/// lexicographic on the image tuple, which makes the identity the minimum
/// among permutations of a fixed degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::argument(format!(
                    "image array {:?} is not a permutation of 0..{}",
                    images, n
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Build from disjoint-cycle notation; points omitted from every cycle
    /// are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u16]]) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w] as usize;
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || (to as usize) >= degree {
                    return Err(Error::argument("cycle point out of range".to_string()));
                }
                images[from] = to;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn apply(&self, i: u16) -> u16 {
        self.images[i as usize]
    }

    /// Function composition `self ∘ rhs`: applies `rhs` first. This makes
    /// `compose` the product for a left action on points.
    pub fn compose(&self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm {
            images: rhs.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u16 == j)
    }

    /// Multiplicative order.
    pub fn order(&self) -> u32 {
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            n += 1;
        }
        n
    }
}

//! Congruence checks characterizing Burnside-ring membership.
//!
//! The counting lemma gives |G|·|X/G| = Σ_{g∈G} |X^⟨g⟩| for every genuine
//! G-set, hence Σ_g φ_⟨g⟩(X) ≡ 0 mod |G|. Applied to X^H as a WH-set it
//! yields, for every class (H),
//!
//!   Σ_{nH ∈ WH} f(⟨n, H⟩) ≡ 0  mod |WH|,
//!
//! and a ghost vector f lies in Ω(G) exactly when all of these hold. The
//! p-primary variant sums over a Sylow p-subgroup W_pH of WH and tests
//! divisibility p-locally, characterizing membership in Ω_p(G).

use num_traits::Zero;

use crate::group::GSet;
use crate::rational::{self, Rat};
use crate::{Error, Result};

use super::MarksVector;

/// Both sides of the counting lemma for one G-set.
#[derive(Clone, Debug)]
pub struct CountingReport {
    pub group_order: u64,
    pub orbit_count: u64,
    /// Σ_{g∈G} |X^⟨g⟩|.
    pub fixed_point_sum: u64,
    /// The congruence: fixed_point_sum ≡ 0 mod |G|.
    pub holds: bool,
    /// The exact lemma: |G| · orbit_count = fixed_point_sum.
    pub exact: bool,
}

/// Evaluate the counting congruence Σ_g |X^⟨g⟩| ≡ 0 mod |G| on a G-set.
/// A point is fixed by ⟨g⟩ iff it is fixed by g, so the sum is over single
/// elements.
pub fn check_counting_congruence(x: &GSet) -> CountingReport {
    let g = x.group();
    let order = g.order() as u64;
    let sum: u64 = (0..g.order() as u16)
        .map(|e| x.fixed_by_element(e) as u64)
        .sum();
    let orbits = x.orbit_count() as u64;
    CountingReport {
        group_order: order,
        orbit_count: orbits,
        fixed_point_sum: sum,
        holds: sum % order == 0,
        exact: order * orbits == sum,
    }
}

/// One class row of the WH-congruence check.
#[derive(Clone, Debug)]
pub struct WhClassCheck {
    pub class: usize,
    /// |WH| (or |W_pH| in the p-primary form).
    pub modulus: u64,
    /// Σ_{nH} f(⟨n, H⟩).
    pub sum: Rat,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct WhCongruenceReport {
    pub prime: Option<u64>,
    pub checks: Vec<WhClassCheck>,
    pub all_hold: bool,
}

/// Run the WH congruences on a ghost vector. With `prime: None` this is the
/// integrality criterion (f ∈ Ω(G)); with `prime: Some(p)` the p-local one
/// (f ∈ Ω_p(G)), summing over Sylow-p coset representatives and testing
/// divisibility p-locally.
pub fn check_wh_congruences(f: &MarksVector, prime: Option<u64>) -> Result<WhCongruenceReport> {
    let lattice = f.lattice();
    let group = lattice.group();
    let mut checks = Vec::with_capacity(lattice.class_count());
    for class in 0..lattice.class_count() {
        let data = lattice.class(class);
        let h_idx = data.representative_index();
        let h = lattice.subgroup(h_idx);
        let n_idx = data.normalizer_index();

        // The coset range: all of NH, or a subgroup P with H ≤ P ≤ NH and
        // P/H a Sylow p-subgroup of WH (such P exist since H is normal in
        // NH; we take the canonically least).
        let range_idx = match prime {
            None => n_idx,
            Some(p) => {
                let target =
                    h.order() as u64 * crate::arith::p_part(data.weyl_order() as u64, p);
                let n_sub = lattice.subgroup(n_idx);
                lattice
                    .subgroup_poset()
                    .up_set(h_idx)
                    .iter()
                    .map(|&i| i as usize)
                    .find(|&i| {
                        let s = lattice.subgroup(i);
                        s.order() as u64 == target && s.is_subgroup_of(n_sub)
                    })
                    .ok_or_else(|| {
                        Error::invariant("no Sylow preimage between H and its normalizer")
                    })?
            }
        };
        let range = lattice.subgroup(range_idx);
        let modulus = (range.order() / h.order()) as u64;

        let h_gens = group.subgroup_generators(h);
        let mut sum = Rat::zero();
        let mut visited = vec![false; group.order()];
        for e in range.element_indices() {
            if visited[e as usize] {
                continue;
            }
            for hh in h.element_indices() {
                visited[group.mul(e, hh) as usize] = true;
            }
            let mut gens = h_gens.clone();
            gens.push(e);
            let generated = group.subgroup_closure(&gens);
            sum += f.value(lattice.class_of(&generated)?);
        }

        let quotient = rational::div_by(&sum, modulus);
        let holds = match prime {
            None => rational::is_integer(&quotient),
            Some(p) => rational::is_p_integral(&quotient, p),
        };
        checks.push(WhClassCheck {
            class,
            modulus,
            sum,
            holds,
        });
    }
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(WhCongruenceReport {
        prime,
        checks,
        all_hold,
    })
}

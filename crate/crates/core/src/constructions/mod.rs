//! Constructions producing pairs of matroids with equal G-invariants.
//!
//! * [`parallel_extension`]: every element replaced by a parallel class.
//! * [`build_lattice_extension`] / [`realize_extension_pair`]: a base
//!   lattice with small lattices glued above chosen atoms in two different
//!   ways, realized as matroids.
//! * [`verify_paving_hypotheses`] / [`realize_paving_pair`]: two paving
//!   matroids whose lattices of flats become lattices of cyclic flats.
//!
//! Every assembled family goes through the cyclic-flat validator; nothing
//! here is trusted to be a matroid by construction.

mod examples;
mod extension;
mod paving_pair;

pub use examples::{
    example1_family, example3_pair, example3_printed, example4_pair, fig3_labels, fig3_spec,
    EXAMPLE4_NAMES,
};
pub use extension::{build_lattice_extension, realize_extension_pair, LatticeExtensionSpec};
pub use paving_pair::{
    assemble_paving_families, realize_paving_pair, verify_paving_hypotheses, PavingFailure, PavingPairSpec, PavingReport,
    RankLabels,
};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::matroid::Matroid;
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::zfl::RankedFamily;

/// `M_t`: each element `e` joined by `t` new elements parallel to it. The
/// class of `e` is `e` itself plus `n + e*t .. n + (e+1)*t`, so original
/// ids are kept. Every flat of the result is cyclic, and its cyclic flats
/// are the blown-up flats of `m` with their ranks.
pub fn parallel_extension(m: &Matroid, t: usize) -> Result<Matroid> {
    if t == 0 {
        return Err(Error::Construction("parallel extension needs t >= 1".into()));
    }
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(Error::Loops(loops));
    }
    let n = m.n();
    let size = n * (t + 1);
    if size > MAX_ELEMENTS {
        return Err(Error::GroundTooLarge(size));
    }
    let class = |e: usize| -> ElementSet {
        let mut c = ElementSet::singleton(e);
        for i in 0..t {
            c.insert(n + e * t + i);
        }
        c
    };
    let entries = m
        .flats()
        .into_iter()
        .enumerate()
        .flat_map(|(k, level)| level.into_iter().map(move |f| (f, k)))
        .map(|(f, k)| (f.iter().fold(ElementSet::EMPTY, |acc, e| acc.union(class(e))), k))
        .collect();
    Matroid::from_cyclic_flats(&RankedFamily::new(size, entries)?)
}

/// Duals of both matroids.
pub fn dualize_pair(m1: &Matroid, m2: &Matroid) -> (Matroid, Matroid) {
    (m1.dual(), m2.dual())
}

/// Block realization of a labeled lattice. Elements are processed in a
/// linear extension; each gets the union of the sets of the elements it
/// covers plus fresh elements up to its size label. Fails when a union
/// already exceeds the label, when inclusion of the resulting sets does not
/// reproduce the order, or when the ranked family fails validation.
/// Returns the matroid and the set assigned to each lattice element.
pub fn realize_labeled_lattice(
    lattice: &FiniteLattice,
    sizes: &[usize],
    ranks: &[usize],
) -> Result<(Matroid, Vec<ElementSet>)> {
    let size = lattice.size();
    if sizes.len() != size || ranks.len() != size {
        return Err(Error::Construction(format!(
            "{} size labels and {} rank labels for {size} lattice elements",
            sizes.len(),
            ranks.len()
        )));
    }
    let mut sets = vec![ElementSet::EMPTY; size];
    let mut next = 0;
    for &x in lattice.linear_extension() {
        let below = lattice
            .lower_covers(x)
            .iter()
            .fold(ElementSet::EMPTY, |acc, &y| acc.union(sets[y]));
        if below.len() > sizes[x] {
            return Err(Error::Construction(format!(
                "element {x} has size label {} but the sets below it cover {} elements",
                sizes[x],
                below.len()
            )));
        }
        let mut s = below;
        while s.len() < sizes[x] {
            if next >= MAX_ELEMENTS {
                return Err(Error::GroundTooLarge(next + 1));
            }
            s.insert(next);
            next += 1;
        }
        sets[x] = s;
    }
    let n = sets[lattice.top()].len();
    if next != n {
        return Err(Error::Construction(format!(
            "the top element has {n} elements but {next} were allocated"
        )));
    }
    for x in 0..size {
        for y in 0..size {
            if x != y && sets[x].is_subset(sets[y]) != lattice.leq(x, y) {
                return Err(Error::Construction(format!(
                    "sets {} and {} of elements {x} and {y} do not follow the lattice order",
                    sets[x], sets[y]
                )));
            }
        }
    }
    let family = RankedFamily::new(n, sets.iter().copied().zip(ranks.iter().copied()).collect())?;
    Ok((Matroid::from_cyclic_flats(&family)?, sets))
}

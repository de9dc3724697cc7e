//! The cyclic-flat axiom system.
//!
//! A family of subsets with ranks is the ranked lattice of cyclic flats of
//! some matroid exactly when it satisfies:
//!
//! * (Z0) ordered by inclusion, the family is a lattice;
//! * (Z1) the least set has rank 0;
//! * (Z2) `0 < r(Y) - r(X) < |Y - X|` whenever `X ⊊ Y`;
//! * (Z3) `r(X ∨ Y) + r(X ∧ Y) + |(X ∩ Y) - (X ∧ Y)| <= r(X) + r(Y)`.
//!
//! [`validate_z_axioms`] reports the first violation found, with the sets
//! and numbers that witness it.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LabeledLattice, LatticeError};
use crate::matroid::Matroid;
use crate::set::{ElementSet, MAX_ELEMENTS};

/// Candidate cyclic-flat family: sets over `0..n` with ranks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankedFamily {
    n: usize,
    entries: Vec<(ElementSet, usize)>,
}

impl RankedFamily {
    /// Checks only that the ground set is addressable and every element is
    /// in range; everything else is the validator's job.
    pub fn new(n: usize, entries: Vec<(ElementSet, usize)>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(n));
        }
        let ground = ElementSet::full(n);
        for &(s, _) in &entries {
            if let Some(element) = s.difference(ground).iter().next() {
                return Err(Error::ElementOutOfRange { element, n });
            }
        }
        Ok(RankedFamily { n, entries })
    }

    /// Convenience constructor from element lists.
    pub fn from_lists(n: usize, entries: &[(&[usize], usize)]) -> Result<Self> {
        Self::new(
            n,
            entries
                .iter()
                .map(|&(list, r)| (list.iter().collect(), r))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(ElementSet, usize)] {
        &self.entries
    }

    /// The same family sorted into canonical set order.
    #[must_use]
    pub fn canonical(&self) -> RankedFamily {
        let mut entries = self.entries.clone();
        entries.sort();
        RankedFamily { n: self.n, entries }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Z0,
    Z1,
    Z2,
    Z3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Z0 => "Z0",
            Axiom::Z1 => "Z1",
            Axiom::Z2 => "Z2",
            Axiom::Z3 => "Z3",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

/// First axiom violation found in a family, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZViolation {
    /// The family has no sets at all.
    Empty,
    /// A set appears twice.
    Duplicate(ElementSet),
    /// Under inclusion, `x` and `y` lack a least upper or greatest lower
    /// bound inside the family.
    NotALattice {
        x: ElementSet,
        y: ElementSet,
        missing: Bound,
    },
    /// The least set has nonzero rank.
    BottomRank { bottom: ElementSet, rank: usize },
    /// `lower ⊊ upper` without `0 < r(upper) - r(lower) < |upper - lower|`.
    Sandwich {
        lower: ElementSet,
        lower_rank: usize,
        upper: ElementSet,
        upper_rank: usize,
    },
    /// The pair `x, y` breaks the submodular inequality with correction term.
    Submodular {
        x: ElementSet,
        y: ElementSet,
        join: ElementSet,
        meet: ElementSet,
        lhs: usize,
        rhs: usize,
    },
}

impl ZViolation {
    pub fn axiom(&self) -> Axiom {
        match self {
            ZViolation::Empty | ZViolation::Duplicate(_) | ZViolation::NotALattice { .. } => Axiom::Z0,
            ZViolation::BottomRank { .. } => Axiom::Z1,
            ZViolation::Sandwich { .. } => Axiom::Z2,
            ZViolation::Submodular { .. } => Axiom::Z3,
        }
    }
}

impl fmt::Display for ZViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ", self.axiom())?;
        match self {
            ZViolation::Empty => write!(f, "the family is empty"),
            ZViolation::Duplicate(s) => write!(f, "set {s} appears more than once"),
            ZViolation::NotALattice { x, y, missing } => {
                let what = match missing {
                    Bound::Join => "least upper bound",
                    Bound::Meet => "greatest lower bound",
                };
                write!(f, "{x} and {y} have no {what} in the family")
            }
            ZViolation::BottomRank { bottom, rank } => {
                write!(f, "least set {bottom} has rank {rank}, expected 0")
            }
            ZViolation::Sandwich {
                lower,
                lower_rank,
                upper,
                upper_rank,
            } => write!(
                f,
                "{lower} (rank {lower_rank}) ⊊ {upper} (rank {upper_rank}) needs 0 < {} < {}",
                *upper_rank as isize - *lower_rank as isize,
                upper.difference(*lower).len()
            ),
            ZViolation::Submodular {
                x,
                y,
                join,
                meet,
                lhs,
                rhs,
            } => write!(
                f,
                "x = {x}, y = {y}, join = {join}, meet = {meet}: {lhs} > {rhs}"
            ),
        }
    }
}

/// Checks (Z0)-(Z3); `Ok` means the family is the ranked lattice of cyclic
/// flats of a matroid.
pub fn validate_z_axioms(family: &RankedFamily) -> Result<(), ZViolation> {
    lattice_of_family(family).map(|_| ())
}

/// Validates and returns the inclusion lattice of the canonical family.
pub(crate) fn lattice_of_family(family: &RankedFamily) -> Result<FiniteLattice, ZViolation> {
    let f = family.canonical();
    let entries = f.entries();
    if entries.is_empty() {
        return Err(ZViolation::Empty);
    }
    if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(ZViolation::Duplicate(w[0].0));
    }
    let sets: Vec<ElementSet> = entries.iter().map(|e| e.0).collect();
    let ranks: Vec<usize> = entries.iter().map(|e| e.1).collect();

    let lattice = FiniteLattice::from_order(sets.len(), |i, j| sets[i].is_subset(sets[j]))
        .map_err(|e| match e {
            LatticeError::NoJoin(i, j) => ZViolation::NotALattice {
                x: sets[i],
                y: sets[j],
                missing: Bound::Join,
            },
            LatticeError::NoMeet(i, j) => ZViolation::NotALattice {
                x: sets[i],
                y: sets[j],
                missing: Bound::Meet,
            },
            other => unreachable!("inclusion is a partial order: {other}"),
        })?;

    let bottom = lattice.bottom();
    if ranks[bottom] != 0 {
        return Err(ZViolation::BottomRank {
            bottom: sets[bottom],
            rank: ranks[bottom],
        });
    }

    for (i, &x) in sets.iter().enumerate() {
        for (j, &y) in sets.iter().enumerate() {
            if i != j && x.is_subset(y) {
                let gap = y.difference(x).len();
                if ranks[j] <= ranks[i] || ranks[j] - ranks[i] >= gap {
                    return Err(ZViolation::Sandwich {
                        lower: x,
                        lower_rank: ranks[i],
                        upper: y,
                        upper_rank: ranks[j],
                    });
                }
            }
        }
    }

    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let join = lattice.join(i, j);
            let meet = lattice.meet(i, j);
            let correction = sets[i].intersection(sets[j]).difference(sets[meet]).len();
            let lhs = ranks[join] + ranks[meet] + correction;
            let rhs = ranks[i] + ranks[j];
            if lhs > rhs {
                return Err(ZViolation::Submodular {
                    x: sets[i],
                    y: sets[j],
                    join: sets[join],
                    meet: sets[meet],
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(lattice)
}

/// Builds the matroid with cyclic-flat family `family`.
pub fn matroid_from_cyclic_flats(family: &RankedFamily) -> Result<Matroid> {
    Matroid::from_cyclic_flats(family)
}

/// The configuration of a matroid without loops or coloops: the lattice of
/// cyclic flats with size and rank labels, sets forgotten. Element `i` of the
/// lattice is the `i`-th stored cyclic flat.
pub fn configuration_of(m: &Matroid) -> Result<LabeledLattice> {
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(Error::Loops(loops));
    }
    let coloops = m.coloops();
    if !coloops.is_empty() {
        return Err(Error::Coloops(coloops));
    }
    let z = m.zflats();
    let lattice = FiniteLattice::from_order(z.len(), |i, j| z[i].0.is_subset(z[j].0))?;
    Ok(LabeledLattice::new(
        lattice,
        z.iter().map(|e| e.0.len()).collect(),
        z.iter().map(|e| e.1).collect(),
    )?)
}

use super::Matroid;
use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::zfl::RankedFamily;

/// A paving matroid given by its rank and its dependent hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PavingSpec {
    pub n: usize,
    pub r: usize,
    pub dependent_hyperplanes: Vec<ElementSet>,
}

impl PavingSpec {
    pub fn new(n: usize, r: usize, dependent_hyperplanes: Vec<ElementSet>) -> Self {
        PavingSpec {
            n,
            r,
            dependent_hyperplanes,
        }
    }

    /// Checks the hyperplane conditions: each has at least `r` elements and
    /// any two share at most `r - 2`.
    pub fn check(&self) -> Result<()> {
        if self.n > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(self.n));
        }
        if self.r < 2 {
            return Err(Error::Paving(format!("rank {} is below 2", self.r)));
        }
        if self.r > self.n {
            return Err(Error::Paving(format!("rank {} exceeds {} elements", self.r, self.n)));
        }
        let ground = ElementSet::full(self.n);
        for (i, &h) in self.dependent_hyperplanes.iter().enumerate() {
            if let Some(element) = h.difference(ground).iter().next() {
                return Err(Error::ElementOutOfRange { element, n: self.n });
            }
            if h.len() < self.r {
                return Err(Error::Paving(format!(
                    "dependent hyperplane {h} has fewer than {} elements",
                    self.r
                )));
            }
            if h == ground {
                return Err(Error::Paving(format!("dependent hyperplane {h} is the ground set")));
            }
            for &other in &self.dependent_hyperplanes[..i] {
                if other == h {
                    return Err(Error::Paving(format!("dependent hyperplane {h} is repeated")));
                }
                let common = h.intersection(other).len();
                if common > self.r - 2 {
                    return Err(Error::Paving(format!(
                        "dependent hyperplanes {other} and {h} share {common} > {} elements",
                        self.r - 2
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cyclic flats of the paving matroid: the empty set, each dependent
    /// hyperplane at rank `r - 1`, and the ground set at rank `r`.
    pub fn family(&self) -> Result<RankedFamily> {
        self.check()?;
        let mut entries = vec![(ElementSet::EMPTY, 0), (ElementSet::full(self.n), self.r)];
        entries.extend(self.dependent_hyperplanes.iter().map(|&h| (h, self.r - 1)));
        RankedFamily::new(self.n, entries)
    }
}

impl Matroid {
    pub fn from_paving(spec: &PavingSpec) -> Result<Matroid> {
        Matroid::from_cyclic_flats(&spec.family()?)
    }
}

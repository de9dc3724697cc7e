//! Matroids represented by their ranked lattice of cyclic flats.
//!
//! The rank of any set is recovered from the cyclic flats as
//! `r(A) = min over cyclic flats Z of r(Z) + |A - Z|`. Every matroid value is
//! immutable once built and every family it is built from has passed the
//! (Z0)-(Z3) validator in [`crate::zfl`].

mod flats;
mod paving;

pub use flats::FlatLattice;
pub use paving::PavingSpec;

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::zfl::{validate_z_axioms, RankedFamily};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    /// Cyclic flats with their ranks, in canonical set order.
    zflats: Vec<(ElementSet, usize)>,
    rank: usize,
}

/// A minor `M|X/Y` relabeled onto a dense ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub matroid: Matroid,
    /// `elements[i]` is the element of the parent matroid that became `i`.
    pub elements: Vec<usize>,
}

impl Matroid {
    /// Builds the matroid whose cyclic flats are exactly `family`, rejecting
    /// families that fail (Z0)-(Z3) and matroids with loops or coloops.
    pub fn from_cyclic_flats(family: &RankedFamily) -> Result<Matroid> {
        let m = Self::from_cyclic_flats_general(family)?;
        let loops = m.loops();
        if !loops.is_empty() {
            return Err(Error::Loops(loops));
        }
        let coloops = m.coloops();
        if !coloops.is_empty() {
            return Err(Error::Coloops(coloops));
        }
        Ok(m)
    }

    /// Like [`Matroid::from_cyclic_flats`] but admits loops (a nonempty least
    /// cyclic flat) and coloops (a greatest cyclic flat short of the ground
    /// set).
    pub fn from_cyclic_flats_general(family: &RankedFamily) -> Result<Matroid> {
        validate_z_axioms(family)?;
        let mut zflats = family.entries().to_vec();
        zflats.sort();
        let mut m = Matroid {
            n: family.n(),
            zflats,
            rank: 0,
        };
        m.rank = m.rank_of(m.ground());
        Ok(m)
    }

    /// The uniform matroid `U_{k,n}`. `U_{n,n}` is free (all coloops) and is
    /// built through the general constructor.
    pub fn uniform(k: usize, n: usize) -> Result<Matroid> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(n));
        }
        if k > n {
            return Err(Error::RankOutOfRange { k, rank: n });
        }
        let family = if k == n {
            RankedFamily::new(n, vec![(ElementSet::EMPTY, 0)])?
        } else if k == 0 {
            RankedFamily::new(n, vec![(ElementSet::full(n), 0)])?
        } else {
            RankedFamily::new(n, vec![(ElementSet::EMPTY, 0), (ElementSet::full(n), k)])?
        };
        Self::from_cyclic_flats_general(&family)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// `r(M)`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The stored cyclic flats with ranks, canonical order.
    pub fn zflats(&self) -> &[(ElementSet, usize)] {
        &self.zflats
    }

    /// The stored family as a [`RankedFamily`].
    pub fn family(&self) -> RankedFamily {
        RankedFamily::new(self.n, self.zflats.clone()).expect("stored family is in range")
    }

    pub fn check_subset(&self, a: ElementSet) -> Result<()> {
        let extra = a.difference(self.ground());
        match extra.iter().next() {
            Some(element) => Err(Error::ElementOutOfRange { element, n: self.n }),
            None => Ok(()),
        }
    }

    /// Rank of `a`, which must lie in the ground set.
    pub fn rank_of(&self, a: ElementSet) -> usize {
        debug_assert!(a.is_subset(self.ground()));
        let size = a.len();
        let excess = self
            .zflats
            .iter()
            .map(|&(z, r)| a.intersection(z).len() as isize - r as isize)
            .max()
            .unwrap_or(0)
            .max(0);
        size - excess as usize
    }

    /// Checked rank query.
    pub fn rank_checked(&self, a: ElementSet) -> Result<usize> {
        self.check_subset(a)?;
        Ok(self.rank_of(a))
    }

    /// Smallest flat containing `a`.
    pub fn closure_of(&self, a: ElementSet) -> ElementSet {
        let r = self.rank_of(a);
        let mut out = a;
        for e in self.ground().difference(a) {
            if self.rank_of(a.with(e)) == r {
                out.insert(e);
            }
        }
        out
    }

    pub fn closure(&self, a: ElementSet) -> Result<ElementSet> {
        self.check_subset(a)?;
        Ok(self.closure_of(a))
    }

    pub fn is_flat(&self, a: ElementSet) -> bool {
        self.closure_of(a) == a
    }

    pub fn is_independent(&self, a: ElementSet) -> bool {
        self.rank_of(a) == a.len()
    }

    /// Flats of rank exactly `k`, canonical order.
    pub fn flats_of_rank(&self, k: usize) -> Result<Vec<ElementSet>> {
        if k > self.rank {
            return Err(Error::RankOutOfRange { k, rank: self.rank });
        }
        Ok(flats::flats_up_to_rank(self, k).pop().unwrap_or_default())
    }

    /// All flats grouped by rank.
    pub fn flats(&self) -> Vec<Vec<ElementSet>> {
        flats::flats_up_to_rank(self, self.rank)
    }

    /// Coloops of the restriction `M|a`, that is, elements whose removal
    /// lowers the rank of `a`.
    pub fn coloops_of(&self, a: ElementSet) -> ElementSet {
        let r = self.rank_of(a);
        a.iter().filter(|&e| self.rank_of(a.without(e)) < r).collect()
    }

    /// True iff `M|a` has no coloops, i.e. `a` is a union of circuits.
    pub fn is_cyclic_set(&self, a: ElementSet) -> bool {
        self.coloops_of(a).is_empty()
    }

    pub fn is_cyclic(&self, a: ElementSet) -> Result<bool> {
        self.check_subset(a)?;
        Ok(self.is_cyclic_set(a))
    }

    pub fn loops(&self) -> ElementSet {
        self.closure_of(ElementSet::EMPTY)
    }

    pub fn coloops(&self) -> ElementSet {
        self.coloops_of(self.ground())
    }

    /// Cyclic flats recomputed from the rank oracle by enumerating every
    /// flat. Agrees with [`Matroid::zflats`] for every valid matroid.
    pub fn cyclic_flats(&self) -> Vec<(ElementSet, usize)> {
        let mut out: Vec<(ElementSet, usize)> = self
            .flats()
            .into_iter()
            .enumerate()
            .flat_map(|(k, level)| level.into_iter().map(move |f| (f, k)))
            .filter(|&(f, _)| self.is_cyclic_set(f))
            .collect();
        out.sort();
        out
    }

    /// Rank of a stored cyclic flat, if `z` is one.
    pub fn zflat_rank(&self, z: ElementSet) -> Option<usize> {
        self.zflats.iter().find(|&&(f, _)| f == z).map(|&(_, r)| r)
    }

    /// Cyclic flats other than the least and the greatest. Without loops
    /// and coloops these are the nonempty proper cyclic flats.
    pub fn proper_zflats(&self) -> Vec<(ElementSet, usize)> {
        match self.zflats.len() {
            0..=2 => Vec::new(),
            len => self.zflats[1..len - 1].to_vec(),
        }
    }

    /// The minor `M|x/y` for cyclic flats `y ⊆ x`, relabeled onto
    /// `0..|x - y|`. Its cyclic flats are the sets `F - y` with
    /// `y ⊆ F ⊆ x`.
    pub fn minor(&self, x: ElementSet, y: ElementSet) -> Result<Minor> {
        let rx = self.zflat_rank(x).ok_or(Error::NotCyclicFlat(x))?;
        let ry = self.zflat_rank(y).ok_or(Error::NotCyclicFlat(y))?;
        if !y.is_subset(x) {
            return Err(Error::NotNested { inner: y, outer: x });
        }
        debug_assert!(ry <= rx);
        let elements = x.difference(y).to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &e) in elements.iter().enumerate() {
            index[e] = i;
        }
        let entries = self
            .zflats
            .iter()
            .filter(|&&(f, _)| y.is_subset(f) && f.is_subset(x))
            .map(|&(f, r)| (f.difference(y).map(&index), r - ry))
            .collect();
        let family = RankedFamily::new(elements.len(), entries)?;
        Ok(Minor {
            matroid: Matroid::from_cyclic_flats_general(&family)?,
            elements,
        })
    }

    /// The dual matroid; its cyclic flats are the complements of those of
    /// `self`, with `r*(E - X) = |E - X| + r(X) - r(E)`.
    pub fn dual(&self) -> Matroid {
        let ground = self.ground();
        let entries = self
            .zflats
            .iter()
            .map(|&(x, r)| {
                let c = ground.difference(x);
                (c, c.len() + r - self.rank)
            })
            .collect();
        let family = RankedFamily::new(self.n, entries).expect("complements stay in range");
        Matroid::from_cyclic_flats_general(&family)
            .expect("complemented cyclic flats of a matroid form a valid family")
    }

    /// Number of hyperplanes that are independent sets.
    pub fn independent_hyperplane_count(&self) -> u64 {
        if self.rank == 0 {
            return 0;
        }
        let k = self.rank - 1;
        flats::flats_up_to_rank(self, k)
            .pop()
            .unwrap_or_default()
            .iter()
            .filter(|h| h.len() == k)
            .count() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(paper_ids: &[usize]) -> ElementSet {
        paper_ids.iter().map(|e| e - 1).collect()
    }

    #[test]
    fn rank_queries_on_the_running_example() {
        let m = fixtures::fig1_m();
        assert_eq!(m.rank_checked(set(&[1, 2, 3, 4])).unwrap(), 2);
        assert_eq!(m.rank_checked(ElementSet::EMPTY).unwrap(), 0);
        assert_eq!(m.rank_checked(set(&[1, 3])).unwrap(), 2);
        assert_eq!(m.rank_checked(set(&[1, 2])).unwrap(), 1);
        assert_eq!(m.rank(), 3);
        assert_eq!(
            m.rank_checked(ElementSet::singleton(8)).unwrap_err(),
            Error::ElementOutOfRange { element: 8, n: 8 }
        );
    }

    #[test]
    fn closures() {
        let m = fixtures::fig1_m();
        assert_eq!(m.closure(set(&[1, 3])).unwrap(), set(&[1, 2, 3, 4]));
        assert_eq!(m.closure(ElementSet::EMPTY).unwrap(), ElementSet::EMPTY);
        assert_eq!(m.closure(set(&[5])).unwrap(), set(&[5]));
        assert_eq!(m.closure(set(&[1])).unwrap(), set(&[1, 2]));
    }

    #[test]
    fn flats_by_rank() {
        let m = fixtures::fig1_m();
        assert_eq!(m.flats_of_rank(0).unwrap(), vec![ElementSet::EMPTY]);
        assert_eq!(m.flats_of_rank(3).unwrap(), vec![m.ground()]);
        let points = m.flats_of_rank(1).unwrap();
        assert_eq!(
            points,
            vec![set(&[3]), set(&[4]), set(&[5]), set(&[6]), set(&[1, 2]), set(&[7, 8])]
        );
        assert!(matches!(m.flats_of_rank(4), Err(Error::RankOutOfRange { k: 4, rank: 3 })));
    }

    #[test]
    fn cyclic_sets() {
        let m = fixtures::fig1_m();
        assert!(m.is_cyclic(set(&[1, 2])).unwrap());
        assert!(m.is_cyclic(ElementSet::EMPTY).unwrap());
        assert!(!m.is_cyclic(set(&[1, 2, 3])).unwrap());
    }

    #[test]
    fn recomputed_cyclic_flats_match_storage() {
        for m in [fixtures::fig1_m(), fixtures::fig1_n(), Matroid::uniform(2, 4).unwrap()] {
            assert_eq!(m.cyclic_flats(), m.zflats());
        }
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.zflats(), &[(ElementSet::EMPTY, 0), (u.ground(), 2)]);
    }

    #[test]
    fn minors_on_cyclic_intervals() {
        let m = fixtures::fig1_m();
        let whole = m.minor(m.ground(), ElementSet::EMPTY).unwrap();
        assert_eq!(whole.matroid, m);

        let line = m.minor(set(&[1, 2, 3, 4]), ElementSet::EMPTY).unwrap();
        assert_eq!(line.matroid.n(), 4);
        assert_eq!(line.matroid.rank(), 2);
        assert_eq!(line.matroid.proper_zflats(), vec![(ElementSet::from_iter([0, 1]), 1)]);

        let contracted = m.minor(m.ground(), set(&[1, 2])).unwrap();
        assert_eq!(contracted.elements, vec![2, 3, 4, 5, 6, 7]);
        assert_eq!(contracted.matroid.rank(), 2);
        // {3,4} and {7,8} become parallel classes.
        let images: Vec<_> = contracted.matroid.proper_zflats();
        assert_eq!(
            images,
            vec![(ElementSet::from_iter([0, 1]), 1), (ElementSet::from_iter([4, 5]), 1)]
        );
        assert_eq!(contracted.matroid.cyclic_flats(), contracted.matroid.zflats());

        assert_eq!(
            m.minor(set(&[1, 2]), set(&[7, 8])).unwrap_err(),
            Error::NotNested { inner: set(&[7, 8]), outer: set(&[1, 2]) }
        );
        assert_eq!(
            m.minor(set(&[1, 2, 3]), ElementSet::EMPTY).unwrap_err(),
            Error::NotCyclicFlat(set(&[1, 2, 3]))
        );
    }

    #[test]
    fn duals() {
        let m = fixtures::fig1_m();
        let d = m.dual();
        assert_eq!(d.rank(), 5);
        assert_eq!(d.dual(), m);
        let complements: Vec<ElementSet> = {
            let mut c: Vec<_> = m.zflats().iter().map(|&(z, _)| m.ground().difference(z)).collect();
            c.sort();
            c
        };
        let dual_sets: Vec<ElementSet> = d.zflats().iter().map(|&(z, _)| z).collect();
        assert_eq!(dual_sets, complements);
        assert_eq!(d.cyclic_flats(), d.zflats());
        for a in m.ground().subsets() {
            let expected = a.len() + m.rank_of(m.ground().difference(a)) - m.rank();
            assert_eq!(d.rank_of(a), expected);
        }
    }

    #[test]
    fn independent_hyperplanes() {
        assert_eq!(fixtures::fig1_m().independent_hyperplane_count(), 4);
        assert_eq!(fixtures::fig1_n().independent_hyperplane_count(), 4);
        assert_eq!(Matroid::uniform(2, 4).unwrap().independent_hyperplane_count(), 4);
        assert_eq!(Matroid::uniform(3, 6).unwrap().independent_hyperplane_count(), 15);
    }

    #[test]
    fn free_matroid_has_coloops() {
        let f = Matroid::uniform(3, 3).unwrap();
        assert_eq!(f.rank(), 3);
        assert_eq!(f.coloops(), f.ground());
        let err = Matroid::from_cyclic_flats(&f.family()).unwrap_err();
        assert_eq!(err, Error::Coloops(f.ground()));
    }
}

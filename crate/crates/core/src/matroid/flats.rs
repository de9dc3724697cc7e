use std::collections::HashMap;

use super::Matroid;
use crate::set::ElementSet;

/// Flats of rank `0..=k`, level by level, each level in canonical order.
/// Level `i + 1` is the set of closures of `F ∪ {e}` over level-`i` flats `F`.
pub(crate) fn flats_up_to_rank(m: &Matroid, k: usize) -> Vec<Vec<ElementSet>> {
    let mut levels = vec![vec![m.loops()]];
    while levels.len() <= k {
        let (next, _) = next_level(m, levels.last().expect("at least one level"));
        levels.push(next);
    }
    levels
}

/// Covers of every flat in `level`: the distinct closures `cl(F ∪ {e})`.
/// Returns the next level and, per flat of `level`, its covers as indices
/// into that next level.
fn next_level(m: &Matroid, level: &[ElementSet]) -> (Vec<ElementSet>, Vec<Vec<usize>>) {
    let ground = m.ground();
    let mut found: Vec<ElementSet> = Vec::new();
    let mut raw_covers = Vec::with_capacity(level.len());
    for &f in level {
        let mut covers = Vec::new();
        let mut remaining = ground.difference(f);
        while let Some(e) = remaining.iter().next() {
            let c = m.closure_of(f.with(e));
            remaining = remaining.difference(c);
            covers.push(c);
            found.push(c);
        }
        raw_covers.push(covers);
    }
    found.sort();
    found.dedup();
    let index: HashMap<ElementSet, usize> = found.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let covers = raw_covers
        .into_iter()
        .map(|cs| {
            let mut ids: Vec<usize> = cs.iter().map(|c| index[c]).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    (found, covers)
}

/// The lattice of flats with cover relations, indexed densely by rank and
/// then canonical order.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    flats: Vec<ElementSet>,
    ranks: Vec<usize>,
    /// `up[i]`: indices of the flats covering flat `i`.
    up: Vec<Vec<usize>>,
    index: HashMap<ElementSet, usize>,
}

impl FlatLattice {
    pub fn new(m: &Matroid) -> Self {
        let mut flats = vec![m.loops()];
        let mut ranks = vec![0];
        let mut up: Vec<Vec<usize>> = Vec::new();
        let mut level_start = 0;
        for k in 0..m.rank() {
            let level = &flats[level_start..];
            let (next, covers) = next_level(m, level);
            let next_start = flats.len();
            up.extend(
                covers
                    .into_iter()
                    .map(|cs| cs.into_iter().map(|i| i + next_start).collect()),
            );
            ranks.extend(std::iter::repeat_n(k + 1, next.len()));
            flats.extend(next);
            level_start = next_start;
        }
        // The top flat has no covers.
        up.resize(flats.len(), Vec::new());
        let index = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        FlatLattice {
            flats,
            ranks,
            up,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, i: usize) -> ElementSet {
        self.flats[i]
    }

    pub fn flats(&self) -> &[ElementSet] {
        &self.flats
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn index_of(&self, f: ElementSet) -> Option<usize> {
        self.index.get(&f).copied()
    }

    /// Index of the least flat, the closure of the empty set.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Number of maximal chains (flags), by dynamic programming over covers.
    pub fn flag_count(&self) -> u128 {
        let mut paths = vec![0u128; self.len()];
        paths[0] = 1;
        for i in 0..self.len() {
            for &j in &self.up[i] {
                paths[j] += paths[i];
            }
        }
        paths[self.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn flat_lattice_of_running_example() {
        let m = fixtures::fig1_m();
        let fl = FlatLattice::new(&m);
        // 1 + 6 points + lines + 1.
        let lines = m.flats_of_rank(2).unwrap().len();
        assert_eq!(fl.len(), 1 + 6 + lines + 1);
        assert_eq!(fl.flat(fl.len() - 1), m.ground());
        for i in 0..fl.len() {
            for &j in fl.covers(i) {
                assert_eq!(fl.rank(j), fl.rank(i) + 1);
                assert!(fl.flat(i).is_proper_subset(fl.flat(j)));
            }
        }
    }

    #[test]
    fn uniform_flag_count() {
        let m = Matroid::uniform(2, 3).unwrap();
        assert_eq!(FlatLattice::new(&m).flag_count(), 3);
        let m = Matroid::uniform(3, 5).unwrap();
        // 5 points, each on 4 lines.
        assert_eq!(FlatLattice::new(&m).flag_count(), 20);
    }
}

//! Named instances of the constructions.

use super::{LatticeExtensionSpec, PavingPairSpec, RankLabels};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::matroid::{Matroid, PavingSpec};
use crate::set::ElementSet;
use crate::zfl::RankedFamily;

/// A rank-4 matroid with `m` three-point lines `A_i = {3i, 3i+1, 3i+2}`
/// (rank 2), any two spanning, and one plane (rank 3) per entry of
/// `assignment`: plane `j` is `A_{assignment[j]}` plus fresh points up to
/// `plane_sizes[j]` elements. Sizes must be distinct and at least 5.
pub fn example1_family(m: usize, assignment: &[usize], plane_sizes: &[usize]) -> Result<Matroid> {
    if m == 0 {
        return Err(Error::Construction("at least one line is needed".into()));
    }
    if assignment.len() != plane_sizes.len() {
        return Err(Error::Construction(format!(
            "{} assignments for {} planes",
            assignment.len(),
            plane_sizes.len()
        )));
    }
    for (j, &size) in plane_sizes.iter().enumerate() {
        if size < 5 {
            return Err(Error::Construction(format!("plane {j} has size {size} < 5")));
        }
        if plane_sizes[..j].contains(&size) {
            return Err(Error::Construction(format!("plane size {size} is repeated")));
        }
    }
    if let Some(&k) = assignment.iter().find(|&&k| k >= m) {
        return Err(Error::Construction(format!("assignment {k} names no line of {m}")));
    }
    let n = 3 * m + plane_sizes.iter().map(|s| s - 3).sum::<usize>();
    if n > crate::set::MAX_ELEMENTS {
        return Err(Error::GroundTooLarge(n));
    }
    let line = |i: usize| -> ElementSet { (3 * i..3 * i + 3).collect() };
    let mut entries = vec![(ElementSet::EMPTY, 0)];
    entries.extend((0..m).map(|i| (line(i), 2)));
    let mut next = 3 * m;
    for (&k, &size) in assignment.iter().zip(plane_sizes) {
        let plane = line(k).union((next..next + size - 3).collect());
        next += size - 3;
        entries.push((plane, 3));
    }
    entries.push((ElementSet::full(n), 4));
    Matroid::from_cyclic_flats(&RankedFamily::new(n, entries)?)
}

/// The base lattice of the two-atom extension: `0 < a_1, a_2 < c < 1`,
/// with two 3-chains glued above `a_1` and `a_2` for `L_s` and both above
/// `a_2` for `L_t`. Elements are `0 = 0̂, 1 = a_1, 2 = a_2, 3 = c, 4 = 1̂`,
/// then the interiors `5` and `6` of the chains.
pub fn fig3_spec() -> LatticeExtensionSpec {
    let base = FiniteLattice::from_relation(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
        .expect("the base is a lattice");
    let chain = FiniteLattice::chain(3).expect("a chain is a lattice");
    LatticeExtensionSpec {
        base,
        atoms: vec![1, 2],
        b: 0,
        taus: vec![vec![(0, 0), (2, 1)]],
        inserts: vec![chain.clone(), chain],
        s: vec![0, 1],
        t: vec![1, 1],
    }
}

/// Size and rank labels on the elements of [`fig3_spec`] that realize the
/// two 8-element rank-3 matroids of the running example.
pub fn fig3_labels() -> (Vec<usize>, Vec<usize>) {
    (vec![0, 2, 2, 4, 8, 4, 4], vec![0, 1, 1, 2, 3, 2, 2])
}

fn hyperplane_differences(n1: &PavingSpec, n2: &PavingSpec) -> Result<[Vec<ElementSet>; 2]> {
    let h1 = Matroid::from_paving(n1)?.flats_of_rank(n1.r - 1)?;
    let h2 = Matroid::from_paving(n2)?.flats_of_rank(n2.r - 1)?;
    Ok([
        h1.iter().filter(|h| !h2.contains(h)).copied().collect(),
        h2.iter().filter(|h| !h1.contains(h)).copied().collect(),
    ])
}

/// Two rank-3 paving matroids on `a = 0, b = 1, x_1..x_m, y_1..y_n`: lines
/// `{a, x..}, {b, y..}` against `{a, x..}, {a, y..}`. Each difference of
/// hyperplane sets is a single block and `α` swaps `a` and `b`. Every
/// element gets a block of `block` ids and flats keep their rank.
pub fn example3_pair(m: usize, n: usize, block: usize) -> Result<PavingPairSpec> {
    if m < 2 || n < 2 {
        return Err(Error::Construction(format!("need m, n >= 2, got {m}, {n}")));
    }
    let size = 2 + m + n;
    let xs: ElementSet = (2..2 + m).collect();
    let ys: ElementSet = (2 + m..size).collect();
    let n1 = PavingSpec::new(size, 3, vec![xs.with(0), ys.with(1)]);
    let n2 = PavingSpec::new(size, 3, vec![xs.with(0), ys.with(0)]);
    let [a, b] = hyperplane_differences(&n1, &n2)?;
    let mut alpha: Vec<usize> = (0..size).collect();
    alpha.swap(0, 1);
    Ok(PavingPairSpec {
        n1,
        n2,
        a_blocks: vec![a],
        b_blocks: vec![b],
        alphas: vec![alpha],
        block_sizes: vec![block; size],
        rank_labels: RankLabels::NRank,
    })
}

/// [`example3_pair`] with `m = n = 2`, blocks of seven elements, points
/// of rank 5, lines of rank 8 and the whole set of rank 10: 42 elements.
pub fn example3_printed() -> Result<PavingPairSpec> {
    let mut spec = example3_pair(2, 2, 7)?;
    spec.rank_labels = RankLabels::ByLevel(vec![0, 5, 8, 10]);
    Ok(spec)
}

/// Element names of [`example4_pair`] by id.
pub const EXAMPLE4_NAMES: [char; 12] = ['a', 'b', 'c', 'd', 'e', 'f', 'p', 'q', 'r', 's', 't', 'u'];

fn named(names: &str) -> ElementSet {
    names
        .chars()
        .map(|c| EXAMPLE4_NAMES.iter().position(|&x| x == c).expect("known name"))
        .collect()
}

fn transpositions(pairs: &[(char, char)]) -> Vec<usize> {
    let mut alpha: Vec<usize> = (0..12).collect();
    for &(x, y) in pairs {
        let (i, j) = (named(&x.to_string()).to_vec()[0], named(&y.to_string()).to_vec()[0]);
        alpha.swap(i, j);
    }
    alpha
}

/// Two rank-4 paving matroids on twelve elements: planes `abcd, abef, cdef`
/// against `abpq, cdrs, eftu`, with three blocks on each side and
/// `α_1 = (e p)(f q), α_2 = (a r)(b s), α_3 = (c t)(d u)`. Flats keep their
/// rank; every element gets `block` ids.
pub fn example4_pair(block: usize) -> Result<PavingPairSpec> {
    let sets = |list: &[&str]| list.iter().map(|s| named(s)).collect::<Vec<_>>();
    Ok(PavingPairSpec {
        n1: PavingSpec::new(12, 4, sets(&["abcd", "abef", "cdef"])),
        n2: PavingSpec::new(12, 4, sets(&["abpq", "cdrs", "eftu"])),
        a_blocks: vec![
            sets(&["abef", "abp", "abq", "apq", "bpq"]),
            sets(&["abcd", "cdr", "cds", "crs", "drs"]),
            sets(&["cdef", "eft", "efu", "etu", "ftu"]),
        ],
        b_blocks: vec![
            sets(&["abpq", "abe", "abf", "aef", "bef"]),
            sets(&["cdrs", "cda", "cdb", "cab", "dab"]),
            sets(&["eftu", "efc", "efd", "ecd", "fcd"]),
        ],
        alphas: vec![
            transpositions(&[('e', 'p'), ('f', 'q')]),
            transpositions(&[('a', 'r'), ('b', 's')]),
            transpositions(&[('c', 't'), ('d', 'u')]),
        ],
        block_sizes: vec![block; 12],
        rank_labels: RankLabels::NRank,
    })
}

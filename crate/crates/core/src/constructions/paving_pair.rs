use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matroid::{Matroid, PavingSpec};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::zfl::RankedFamily;

/// How ranks are assigned to the images of the flats of `N_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankLabels {
    /// The rank of the flat in `N_i`.
    NRank,
    /// `ranks[k]` for a flat of rank `k` in `N_i`.
    ByLevel(Vec<usize>),
    /// One map per matroid from flat to rank.
    Explicit([BTreeMap<ElementSet, usize>; 2]),
}

/// Two paving matroids on a shared set, partitions `A_1..A_p` of
/// `H_1 - H_2` and `B_1..B_p` of `H_2 - H_1` (hyperplanes of one and not
/// the other), permutations `α_j` of the ground set, and the labels used
/// to realize each flat `F` as a cyclic flat: the union of the blocks of
/// its elements, with a rank from `rank_labels`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PavingPairSpec {
    pub n1: PavingSpec,
    pub n2: PavingSpec,
    pub a_blocks: Vec<Vec<ElementSet>>,
    pub b_blocks: Vec<Vec<ElementSet>>,
    /// `alphas[j][e]` is the image of `e`.
    pub alphas: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
    pub rank_labels: RankLabels,
}

/// The first hypothesis found to fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PavingFailure {
    /// `side` is 1 for the `A` partition, 2 for `B`. The set is either
    /// missing from the blocks or listed where it does not belong.
    NotPartition { side: usize, set: ElementSet, missing: bool },
    /// `α_j` maps a member of `A_j` outside `B_j`.
    AlphaImage { block: usize, set: ElementSet, image: ElementSet },
    /// A flat of both matroids gets different labels.
    CommonLabel { flat: ElementSet, left: (usize, usize), right: (usize, usize) },
    /// A hyperplane in `A_j` and its image get different labels.
    HyperplaneLabel {
        block: usize,
        set: ElementSet,
        image: ElementSet,
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A small flat `X` under some `Y` in `A_j` and `α_j(X)` get different
    /// labels in the first matroid.
    SubflatLabel {
        block: usize,
        hyperplane: ElementSet,
        set: ElementSet,
        image: ElementSet,
        left: (usize, usize),
        right: (usize, usize),
    },
}

impl fmt::Display for PavingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lab = |(s, r): (usize, usize)| format!("(size {s}, rank {r})");
        match *self {
            PavingFailure::NotPartition { side, set, missing: true } => {
                write!(f, "hyperplane {set} is missing from partition {side}")
            }
            PavingFailure::NotPartition { side, set, missing: false } => {
                write!(f, "{set} does not belong in partition {side} or is listed twice")
            }
            PavingFailure::AlphaImage { block, set, image } => write!(
                f,
                "block {}: {set} maps to {image}, which is not in the matching block",
                block + 1
            ),
            PavingFailure::CommonLabel { flat, left, right } => {
                write!(f, "common flat {flat} has labels {} and {}", lab(left), lab(right))
            }
            PavingFailure::HyperplaneLabel { block, set, image, left, right } => write!(
                f,
                "block {}: {set} has label {} but its image {image} has {}",
                block + 1,
                lab(left),
                lab(right)
            ),
            PavingFailure::SubflatLabel { block, hyperplane, set, image, left, right } => write!(
                f,
                "block {}: {set} under {hyperplane} has label {} but its image {image} has {}",
                block + 1,
                lab(left),
                lab(right)
            ),
        }
    }
}

/// Verdict of [`verify_paving_hypotheses`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PavingReport {
    pub failure: Option<PavingFailure>,
}

impl PavingReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for PavingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => f.write_str("hypotheses hold"),
            Some(failure) => write!(f, "hypotheses fail: {failure}"),
        }
    }
}

/// The two paving matroids and their flats, checked for shape.
struct Prepared {
    ms: [Matroid; 2],
    r: usize,
}

fn image(alpha: &[usize], x: ElementSet) -> ElementSet {
    x.map(alpha)
}

impl PavingPairSpec {
    fn prepare(&self) -> Result<Prepared> {
        if self.n1.n != self.n2.n || self.n1.r != self.n2.r {
            return Err(Error::Paving(format!(
                "the matroids have (n, r) = ({}, {}) and ({}, {})",
                self.n1.n, self.n1.r, self.n2.n, self.n2.r
            )));
        }
        let n = self.n1.n;
        let m1 = Matroid::from_paving(&self.n1)?;
        let m2 = Matroid::from_paving(&self.n2)?;
        if self.a_blocks.len() != self.b_blocks.len() || self.a_blocks.len() != self.alphas.len()
        {
            return Err(Error::Paving(format!(
                "{} A blocks, {} B blocks and {} permutations",
                self.a_blocks.len(),
                self.b_blocks.len(),
                self.alphas.len()
            )));
        }
        for (j, alpha) in self.alphas.iter().enumerate() {
            let mut seen = vec![false; n];
            if alpha.len() != n || alpha.iter().any(|&e| e >= n || std::mem::replace(&mut seen[e], true))
            {
                return Err(Error::NotAPermutation(format!(
                    "permutation {} is not a bijection on {n} elements",
                    j + 1
                )));
            }
        }
        if self.block_sizes.len() != n || self.block_sizes.contains(&0) {
            return Err(Error::Paving(format!(
                "need a positive block size for each of the {n} elements"
            )));
        }
        let total: usize = self.block_sizes.iter().sum();
        if total > MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(total));
        }
        Ok(Prepared { ms: [m1, m2], r: self.n1.r })
    }

    fn size_label(&self, f: ElementSet) -> usize {
        f.iter().map(|e| self.block_sizes[e]).sum()
    }

    fn rank_label(&self, which: usize, m: &Matroid, f: ElementSet) -> Result<usize> {
        let k = m.rank_of(f);
        match &self.rank_labels {
            RankLabels::NRank => Ok(k),
            RankLabels::ByLevel(levels) => levels.get(k).copied().ok_or_else(|| {
                Error::Paving(format!("no rank given for level {k} ({} levels)", levels.len()))
            }),
            RankLabels::Explicit(maps) => maps[which].get(&f).copied().ok_or_else(|| {
                Error::Paving(format!("no rank given for flat {f} of matroid {}", which + 1))
            }),
        }
    }

    fn label(&self, which: usize, m: &Matroid, f: ElementSet) -> Result<(usize, usize)> {
        Ok((self.size_label(f), self.rank_label(which, m, f)?))
    }
}

fn partition_failure(
    side: usize,
    blocks: &[Vec<ElementSet>],
    expected: &[ElementSet],
) -> Option<PavingFailure> {
    let mut listed: Vec<ElementSet> = Vec::new();
    for &x in blocks.iter().flatten() {
        if !expected.contains(&x) || listed.contains(&x) {
            return Some(PavingFailure::NotPartition { side, set: x, missing: false });
        }
        listed.push(x);
    }
    expected
        .iter()
        .find(|x| !listed.contains(x))
        .map(|&set| PavingFailure::NotPartition { side, set, missing: true })
}

/// Checks the hypotheses of the paving-pair construction: the partitions,
/// the hyperplane correspondence under each `α_j`, and the two label
/// conditions for the labels given by `block_sizes` and `rank_labels`.
/// Malformed input (mismatched shapes, invalid paving data, a map that is
/// not a permutation, missing rank labels) is an error; a failed
/// hypothesis is a report with the first failure.
pub fn verify_paving_hypotheses(spec: &PavingPairSpec) -> Result<PavingReport> {
    let Prepared { ms, r } = spec.prepare()?;
    let fail = |f| Ok(PavingReport { failure: Some(f) });
    let hyper: Vec<Vec<ElementSet>> = ms
        .iter()
        .map(|m| m.flats_of_rank(r - 1))
        .collect::<Result<_>>()?;
    let only1: Vec<ElementSet> = hyper[0].iter().filter(|h| !hyper[1].contains(h)).copied().collect();
    let only2: Vec<ElementSet> = hyper[1].iter().filter(|h| !hyper[0].contains(h)).copied().collect();
    if let Some(f) = partition_failure(1, &spec.a_blocks, &only1) {
        return fail(f);
    }
    if let Some(f) = partition_failure(2, &spec.b_blocks, &only2) {
        return fail(f);
    }
    for (j, (a, b)) in spec.a_blocks.iter().zip(&spec.b_blocks).enumerate() {
        if a.len() != b.len() {
            let set = a.first().or(b.first()).copied().unwrap_or(ElementSet::EMPTY);
            let image = image(&spec.alphas[j], set);
            return fail(PavingFailure::AlphaImage { block: j, set, image });
        }
        for &y in a {
            let img = image(&spec.alphas[j], y);
            if !b.contains(&img) {
                return fail(PavingFailure::AlphaImage { block: j, set: y, image: img });
            }
        }
    }

    let flats1: Vec<ElementSet> = ms[0].flats().into_iter().flatten().collect();
    for &f in &flats1 {
        if ms[1].is_flat(f) {
            let left = spec.label(0, &ms[0], f)?;
            let right = spec.label(1, &ms[1], f)?;
            if left != right {
                return fail(PavingFailure::CommonLabel { flat: f, left, right });
            }
        }
    }
    for (j, a) in spec.a_blocks.iter().enumerate() {
        let alpha = &spec.alphas[j];
        for &y in a {
            let img = image(alpha, y);
            let left = spec.label(0, &ms[0], y)?;
            let right = spec.label(1, &ms[1], img)?;
            if left != right {
                return fail(PavingFailure::HyperplaneLabel { block: j, set: y, image: img, left, right });
            }
            for size in 0..r.saturating_sub(1) {
                for x in y.subsets_of_size(size) {
                    let ix = image(alpha, x);
                    let left = spec.label(0, &ms[0], x)?;
                    let right = spec.label(0, &ms[0], ix)?;
                    if left != right {
                        return fail(PavingFailure::SubflatLabel {
                            block: j,
                            hyperplane: y,
                            set: x,
                            image: ix,
                            left,
                            right,
                        });
                    }
                }
            }
        }
    }
    Ok(PavingReport { failure: None })
}

/// The two ranked families of the realization: each flat of `N_i` becomes
/// the union of the blocks of its elements (element `e` owns the next
/// `block_sizes[e]` ids), with a rank from `rank_labels`. Neither the
/// hypotheses nor Z0–Z3 are checked here.
pub fn assemble_paving_families(spec: &PavingPairSpec) -> Result<(RankedFamily, RankedFamily)> {
    let Prepared { ms, .. } = spec.prepare()?;
    let mut blocks = Vec::with_capacity(spec.block_sizes.len());
    let mut next = 0;
    for &size in &spec.block_sizes {
        blocks.push(ElementSet::from_bits(((1u128 << (next + size)) - (1u128 << next)) as u64));
        next += size;
    }
    let assemble = |which: usize| -> Result<RankedFamily> {
        let m = &ms[which];
        let entries = m
            .flats()
            .into_iter()
            .flatten()
            .map(|f| {
                let phi = f.iter().fold(ElementSet::EMPTY, |acc, e| acc.union(blocks[e]));
                Ok((phi, spec.rank_label(which, m, f)?))
            })
            .collect::<Result<_>>()?;
        RankedFamily::new(next, entries)
    };
    Ok((assemble(0)?, assemble(1)?))
}

/// `(M_1, M_2)` from [`assemble_paving_families`]. Refuses when the
/// hypotheses fail or when either family fails Z0–Z3.
pub fn realize_paving_pair(spec: &PavingPairSpec) -> Result<(Matroid, Matroid)> {
    let report = verify_paving_hypotheses(spec)?;
    if let Some(f) = report.failure {
        return Err(Error::Construction(f.to_string()));
    }
    let (z1, z2) = assemble_paving_families(spec)?;
    Ok((Matroid::from_cyclic_flats(&z1)?, Matroid::from_cyclic_flats(&z2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{example3_pair, example4_pair};
    use crate::ginv::catenary_data;
    use crate::lattice::labeled_isomorphic;
    use crate::zfl::configuration_of;

    #[test]
    fn two_lines_example_holds_and_realizes() {
        let spec = example3_pair(2, 2, 2).unwrap();
        let report = verify_paving_hypotheses(&spec).unwrap();
        assert!(report.holds(), "{report}");
        let (m1, m2) = realize_paving_pair(&spec).unwrap();
        assert_eq!((m1.n(), m1.rank()), (12, 3));
        assert_eq!(catenary_data(&m1), catenary_data(&m2));
        assert!(!labeled_isomorphic(
            &configuration_of(&m1).unwrap(),
            &configuration_of(&m2).unwrap()
        ));
    }

    #[test]
    fn identity_permutation_fails_with_witness() {
        let mut spec = example4_pair(1).unwrap();
        assert!(verify_paving_hypotheses(&spec).unwrap().holds());
        spec.alphas[0] = (0..12).collect();
        let report = verify_paving_hypotheses(&spec).unwrap();
        // {a,b,e,f} = {0,1,4,5}.
        let abef = ElementSet::from_bits(0b110011);
        assert_eq!(
            report.failure,
            Some(PavingFailure::AlphaImage { block: 0, set: abef, image: abef })
        );
        assert!(realize_paving_pair(&spec).is_err());
    }

    #[test]
    fn label_conditions_are_checked() {
        let mut spec = example3_pair(2, 2, 1).unwrap();
        // a and b get different block sizes: α = (a b) must fail.
        spec.block_sizes[0] = 2;
        let report = verify_paving_hypotheses(&spec).unwrap();
        assert!(matches!(
            report.failure,
            Some(PavingFailure::HyperplaneLabel { .. } | PavingFailure::SubflatLabel { .. })
        ));

        let mut spec = example3_pair(2, 2, 1).unwrap();
        spec.a_blocks[0].pop();
        let report = verify_paving_hypotheses(&spec).unwrap();
        assert!(matches!(
            report.failure,
            Some(PavingFailure::NotPartition { side: 1, missing: true, .. })
        ));

        let mut spec = example3_pair(2, 2, 1).unwrap();
        spec.alphas[0][0] = 2;
        assert!(matches!(verify_paving_hypotheses(&spec), Err(Error::NotAPermutation(_))));
    }
}

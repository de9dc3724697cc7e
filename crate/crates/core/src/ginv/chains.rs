use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::catenary::{check_flag, fold_flags, merge_into, path_composition, Composition, Flag, Multiset};
use crate::error::{Error, Result};
use crate::matroid::{FlatLattice, Matroid};
use crate::set::{factorial, ElementSet};

/// A strictly increasing sequence of cyclic flats, possibly empty.
///
/// Chains order first by length, then element by element in set order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Chain(pub Vec<ElementSet>);

impl Chain {
    pub fn empty() -> Chain {
        Chain(Vec::new())
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks that every set is a cyclic flat of `m` other than the least
    /// and greatest, and that the sets strictly increase.
    pub fn check(&self, m: &Matroid) -> Result<()> {
        let proper = m.proper_zflats();
        for (i, &z) in self.0.iter().enumerate() {
            if !proper.iter().any(|&(f, _)| f == z) {
                return Err(Error::InvalidChain(format!("{z} is not a proper cyclic flat")));
            }
            if i > 0 && !self.0[i - 1].is_proper_subset(z) {
                return Err(Error::InvalidChain(format!("{} is not inside {z}", self.0[i - 1])));
            }
        }
        Ok(())
    }
}

impl Ord for Chain {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Chain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{z}")?;
        }
        f.write_str(")")
    }
}

/// Every chain of proper cyclic flats, the empty chain first, in chain
/// order.
pub fn all_chains(m: &Matroid) -> Vec<Chain> {
    let proper: Vec<ElementSet> = m.proper_zflats().iter().map(|&(z, _)| z).collect();
    let mut out = vec![Chain::empty()];
    let mut current = Vec::new();
    extend(&proper, 0, &mut current, &mut out);
    out.sort();
    out
}

fn extend(pool: &[ElementSet], from: usize, current: &mut Vec<ElementSet>, out: &mut Vec<Chain>) {
    for i in from..pool.len() {
        let z = pool[i];
        if current.last().is_none_or(|&last| last.is_proper_subset(z)) {
            current.push(z);
            out.push(Chain(current.clone()));
            extend(pool, i + 1, current, out);
            current.pop();
        }
    }
}

/// Strips the coloops of `M|X_i` from each flat of the flag, drops
/// repeats, and trims the least and greatest cyclic flats.
pub fn reduced_cyclic_chain(m: &Matroid, flag: &Flag) -> Result<Chain> {
    check_flag(m, flag.flats())?;
    Ok(reduce(m, flag.flats().iter().map(|&x| x.difference(m.coloops_of(x)))))
}

fn reduce(m: &Matroid, stripped: impl Iterator<Item = ElementSet>) -> Chain {
    let zs = m.zflats();
    let (least, greatest) = (zs[0].0, zs[zs.len() - 1].0);
    let mut out: Vec<ElementSet> = Vec::new();
    for z in stripped {
        if z != least && z != greatest && out.last() != Some(&z) {
            out.push(z);
        }
    }
    Chain(out)
}

/// Flags grouped by reduced cyclic chain: for each chain (including those
/// no flag reduces to) the multiset of compositions of its flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    per_chain: BTreeMap<Chain, Multiset>,
}

impl ChainReport {
    pub fn per_chain(&self) -> &BTreeMap<Chain, Multiset> {
        &self.per_chain
    }

    /// `comp(fl(C))`; empty for chains no flag reduces to.
    pub fn compositions(&self, chain: &Chain) -> Multiset {
        self.per_chain.get(chain).cloned().unwrap_or_default()
    }

    /// Number of flags whose reduced cyclic chain is `chain`.
    pub fn flag_count(&self, chain: &Chain) -> u128 {
        self.per_chain.get(chain).map_or(0, |ms| ms.values().sum())
    }

    /// Multiset union over a set of chains.
    pub fn union_of<'a>(&self, chains: impl IntoIterator<Item = &'a Chain>) -> Multiset {
        let mut out = Multiset::new();
        for c in chains {
            merge_into(&mut out, self.compositions(c));
        }
        out
    }

    /// Multiset union over every chain.
    pub fn total(&self) -> Multiset {
        self.union_of(self.per_chain.keys())
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (chain, ms) in &self.per_chain {
            write!(f, "{chain}:")?;
            for (a, c) in ms {
                write!(f, " {c}{a}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn chain_report(m: &Matroid) -> ChainReport {
    let fl = FlatLattice::new(m);
    let stripped: Vec<ElementSet> = fl
        .flats()
        .iter()
        .map(|&x| x.difference(m.coloops_of(x)))
        .collect();
    let found = fold_flags(
        &fl,
        BTreeMap::new,
        |acc: &mut BTreeMap<Chain, Multiset>, path| {
            let chain = reduce(m, path.iter().map(|&i| stripped[i]));
            *acc.entry(chain)
                .or_default()
                .entry(path_composition(&fl, path))
                .or_insert(0) += 1;
        },
        |mut a, b| {
            for (chain, ms) in b {
                merge_into(a.entry(chain).or_default(), ms);
            }
            a
        },
    );
    let mut per_chain: BTreeMap<Chain, Multiset> =
        all_chains(m).into_iter().map(|c| (c, Multiset::new())).collect();
    for (chain, ms) in found {
        debug_assert!(per_chain.contains_key(&chain), "{chain} is a chain of cyclic flats");
        per_chain.insert(chain, ms);
    }
    ChainReport { per_chain }
}

/// First block whose two multisets differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMismatch {
    pub block: usize,
    pub left: Multiset,
    pub right: Multiset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub blocks: usize,
    pub mismatch: Option<BlockMismatch>,
}

impl PartitionReport {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "all {} blocks agree", self.blocks),
            Some(mm) => {
                write!(f, "block {} differs:", mm.block)?;
                for (side, ms) in [("left", &mm.left), ("right", &mm.right)] {
                    write!(f, " {side} {{")?;
                    for (i, (a, c)) in ms.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{c}{a}")?;
                    }
                    f.write_str("}")?;
                }
                Ok(())
            }
        }
    }
}

fn check_partition(m: &Matroid, blocks: &[Vec<Chain>], side: &str) -> Result<()> {
    let expected: BTreeSet<Chain> = all_chains(m).into_iter().collect();
    let mut seen = BTreeSet::new();
    for block in blocks {
        for chain in block {
            if !expected.contains(chain) {
                return Err(Error::NotAPartition(format!(
                    "{side}: {chain} is not a chain of proper cyclic flats"
                )));
            }
            if !seen.insert(chain.clone()) {
                return Err(Error::NotAPartition(format!("{side}: {chain} appears twice")));
            }
        }
    }
    if let Some(missing) = expected.difference(&seen).next() {
        return Err(Error::NotAPartition(format!("{side}: {missing} is not covered")));
    }
    Ok(())
}

/// Compares `comp(fl(P_i))` with `comp(fl(Q_i))` block by block; `p` and
/// `q` must partition all chains (including the empty one) of the two
/// matroids.
pub fn verify_chain_partition(
    m1: &Matroid,
    m2: &Matroid,
    p: &[Vec<Chain>],
    q: &[Vec<Chain>],
) -> Result<PartitionReport> {
    if p.len() != q.len() {
        return Err(Error::NotAPartition(format!(
            "{} blocks on the left, {} on the right",
            p.len(),
            q.len()
        )));
    }
    check_partition(m1, p, "left")?;
    check_partition(m2, q, "right")?;
    let (r1, r2) = (chain_report(m1), chain_report(m2));
    let mismatch = p.iter().zip(q).enumerate().find_map(|(block, (pb, qb))| {
        let (left, right) = (r1.union_of(pb), r2.union_of(qb));
        (left != right).then_some(BlockMismatch { block, left, right })
    });
    Ok(PartitionReport {
        blocks: p.len(),
        mismatch,
    })
}

/// `comp(fl(C))` rebuilt from lists instead of flags: pick an independent
/// hyperplane `H_j` of each minor `M|F_j/F_{j-1}` and order the chain
/// members together with the singletons of the `H_j`, every `F_j` after
/// `F_{j-1}` and after the singletons of `H_j`. Requires no loops and no
/// coloops.
pub fn flag_compositions_via_lists(m: &Matroid, chain: &Chain) -> Result<Multiset> {
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(Error::Loops(loops));
    }
    let coloops = m.coloops();
    if !coloops.is_empty() {
        return Err(Error::Coloops(coloops));
    }
    chain.check(m)?;

    let mut steps = vec![ElementSet::EMPTY];
    steps.extend(chain.sets().iter().copied());
    steps.push(m.ground());
    let mut iota_product: u128 = 1;
    let mut hyperplane_sizes = Vec::new();
    let mut jumps = Vec::new();
    for w in steps.windows(2) {
        let minor = m.minor(w[1], w[0])?.matroid;
        iota_product = iota_product
            .checked_mul(minor.independent_hyperplane_count() as u128)
            .ok_or(Error::Overflow("list count"))?;
        let h = minor.rank() - 1;
        hyperplane_sizes.push(h);
        jumps.push(w[1].len() - w[0].len() - h);
    }
    let mut out = Multiset::new();
    if iota_product == 0 {
        return Ok(out);
    }
    let mut remaining = hyperplane_sizes.clone();
    let mut parts = vec![0];
    list_orders(&mut remaining, &jumps, 0, &mut parts, 1, &mut out);
    for v in out.values_mut() {
        *v *= iota_product;
    }
    debug_assert_eq!(
        out.values().sum::<u128>(),
        factorial(m.rank()).unwrap()
            / chain_ranks(m, chain).iter().map(|&r| r as u128).product::<u128>()
            * iota_product
    );
    Ok(out)
}

fn chain_ranks(m: &Matroid, chain: &Chain) -> Vec<usize> {
    chain
        .sets()
        .iter()
        .chain(std::iter::once(&m.ground()))
        .map(|&z| m.rank_of(z))
        .collect()
}

/// Enumerates orders of the list poset. `remaining[j]` singletons of `H_j`
/// are still to be placed and `next` is the index of the next `F_j`. Each
/// singleton is distinct, so choosing one of `remaining[j]` carries that
/// multiplicity.
fn list_orders(
    remaining: &mut [usize],
    jumps: &[usize],
    next: usize,
    parts: &mut Vec<usize>,
    weight: u128,
    out: &mut Multiset,
) {
    if next == jumps.len() {
        *out.entry(Composition(parts.clone())).or_insert(0) += weight;
        return;
    }
    for j in next..remaining.len() {
        let left = remaining[j];
        if left > 0 {
            remaining[j] -= 1;
            parts.push(1);
            list_orders(remaining, jumps, next, parts, weight * left as u128, out);
            parts.pop();
            remaining[j] += 1;
        }
    }
    if remaining[next] == 0 {
        parts.push(jumps[next]);
        list_orders(remaining, jumps, next + 1, parts, weight, out);
        parts.pop();
    }
}

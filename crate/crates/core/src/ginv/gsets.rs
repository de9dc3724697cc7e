//! The set systems `g_M(F)`: the `(r - 1)`-subsets `X` of the ground set
//! with `cl(X ∩ F) = F`.

use std::collections::BTreeSet;
use std::fmt;

use super::chains::{all_chains, Chain};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{binomial, ElementSet};

/// Largest number of proper cyclic flats for which the sum over all
/// subsets is attempted.
const SUBSET_SUM_LIMIT: usize = 20;

fn g_of(m: &Matroid, f: ElementSet) -> BTreeSet<ElementSet> {
    let k = m.rank().saturating_sub(1);
    if m.rank() == 0 {
        return BTreeSet::new();
    }
    m.ground()
        .subsets_of_size(k)
        .filter(|&x| m.closure_of(x.intersection(f)) == f)
        .collect()
}

/// `g_M(F)` for a proper cyclic flat `F`, in set order.
pub fn g_sets(m: &Matroid, f: ElementSet) -> Result<Vec<ElementSet>> {
    m.check_subset(f)?;
    if !m.proper_zflats().iter().any(|&(z, _)| z == f) {
        return Err(Error::NotProperCyclicFlat(f));
    }
    Ok(g_of(m, f).into_iter().collect())
}

/// The three sides of the inclusion-exclusion identity for the `g_M(F)`,
/// and the number of independent hyperplanes two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncExcReport {
    /// `|∪ g(F)|`.
    pub union: u128,
    /// Signed sum of `|∩_{F ∈ S} g(F)|` over nonempty sets `S`.
    pub subset_sum: i128,
    /// The same sum restricted to nonempty chains.
    pub chain_sum: i128,
    /// `C(n, r - 1) - |∪ g(F)|`.
    pub iota_via_union: u128,
    /// Independent hyperplanes counted from the flats.
    pub iota_direct: u128,
    /// A pair breaking `g(F1) ∩ g(F2) ⊆ g(F1 ∨ F2)`, if any.
    pub containment_witness: Option<(ElementSet, ElementSet)>,
}

impl IncExcReport {
    pub fn holds(&self) -> bool {
        self.union as i128 == self.subset_sum
            && self.subset_sum == self.chain_sum
            && self.iota_via_union == self.iota_direct
            && self.containment_witness.is_none()
    }
}

impl fmt::Display for IncExcReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "union {} subsets {} chains {} iota {} (direct {})",
            self.union, self.subset_sum, self.chain_sum, self.iota_via_union, self.iota_direct
        )?;
        if let Some((a, b)) = self.containment_witness {
            write!(f, "; containment fails for {a} and {b}")?;
        }
        Ok(())
    }
}

/// Checks the inclusion-exclusion identity over subsets and over chains
/// of proper cyclic flats, and recovers the independent-hyperplane count
/// from the union. `g_M` is only defined without loops and coloops; with
/// them the containment property can fail.
pub fn inclusion_exclusion_check(m: &Matroid) -> Result<IncExcReport> {
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(Error::Loops(loops));
    }
    let coloops = m.coloops();
    if !coloops.is_empty() {
        return Err(Error::Coloops(coloops));
    }
    let proper = m.proper_zflats();
    if proper.len() > SUBSET_SUM_LIMIT {
        return Err(Error::TooLarge {
            what: "subset sum over proper cyclic flats",
            n: proper.len(),
            limit: SUBSET_SUM_LIMIT,
        });
    }
    let gs: Vec<BTreeSet<ElementSet>> = proper.iter().map(|&(z, _)| g_of(m, z)).collect();

    let union: BTreeSet<ElementSet> = gs.iter().flatten().copied().collect();
    let mut subset_sum: i128 = 0;
    for mask in 1u64..1 << gs.len() {
        let members = ElementSet::from_bits(mask);
        let size = intersection_size(members.iter().map(|i| &gs[i]));
        subset_sum += sign(members.len()) * size as i128;
    }
    let mut chain_sum: i128 = 0;
    for c in all_chains(m).iter().filter(|c| !c.is_empty()) {
        let size = intersection_size(c.sets().iter().map(|z| {
            let i = proper.iter().position(|p| p.0 == *z).expect("chain member is proper");
            &gs[i]
        }));
        chain_sum += sign(c.len()) * size as i128;
    }
    let k = m.rank().saturating_sub(1);
    let all = binomial(m.n(), k).ok_or(Error::Overflow("binomial"))?;
    Ok(IncExcReport {
        union: union.len() as u128,
        subset_sum,
        chain_sum,
        iota_via_union: all - union.len() as u128,
        iota_direct: m.independent_hyperplane_count() as u128,
        containment_witness: join_containment_witness(m),
    })
}

fn sign(len: usize) -> i128 {
    if len % 2 == 1 {
        1
    } else {
        -1
    }
}

fn intersection_size<'a>(mut sets: impl Iterator<Item = &'a BTreeSet<ElementSet>>) -> usize {
    let Some(first) = sets.next() else {
        return 0;
    };
    let mut acc = first.clone();
    for s in sets {
        acc.retain(|x| s.contains(x));
        if acc.is_empty() {
            break;
        }
    }
    acc.len()
}

/// First pair of proper cyclic flats `F1, F2` with `g(F1) ∩ g(F2)`
/// nonempty but either `F1 ∨ F2` not proper or the intersection not inside
/// `g(F1 ∨ F2)`.
pub fn join_containment_witness(m: &Matroid) -> Option<(ElementSet, ElementSet)> {
    let proper = m.proper_zflats();
    let gs: Vec<BTreeSet<ElementSet>> = proper.iter().map(|&(z, _)| g_of(m, z)).collect();
    for i in 0..proper.len() {
        for j in i + 1..proper.len() {
            let common: Vec<ElementSet> = gs[i].intersection(&gs[j]).copied().collect();
            if common.is_empty() {
                continue;
            }
            let join = m.closure_of(proper[i].0.union(proper[j].0));
            let Some(k) = proper.iter().position(|p| p.0 == join) else {
                return Some((proper[i].0, proper[j].0));
            };
            if !common.iter().all(|x| gs[k].contains(x)) {
                return Some((proper[i].0, proper[j].0));
            }
        }
    }
    None
}

/// `|∩_{F ∈ C} g(F)|` by listing the sets.
pub fn chain_intersection_direct(m: &Matroid, chain: &Chain) -> Result<u128> {
    nonempty_chain(m, chain)?;
    let gs: Vec<BTreeSet<ElementSet>> = chain.sets().iter().map(|&z| g_of(m, z)).collect();
    Ok(intersection_size(gs.iter()) as u128)
}

fn nonempty_chain(m: &Matroid, chain: &Chain) -> Result<()> {
    if chain.is_empty() {
        return Err(Error::InvalidChain("the chain is empty".into()));
    }
    chain.check(m)
}

/// `|∩_{F ∈ C} g(F)|` by choosing a spanning set `W_1` of `M|F_1`, a
/// spanning set `W_i` of each `M|F_i/F_{i-1}`, and any set outside `F_t`,
/// with sizes `a_1 >= r(F_1)`, `a_i >= r(F_i) - r(F_{i-1})` summing to
/// `r - 1`.
pub fn chain_intersection_via_spanning_sets(m: &Matroid, chain: &Chain) -> Result<u128> {
    nonempty_chain(m, chain)?;
    let mut prev = ElementSet::EMPTY;
    let mut minors = Vec::new();
    for &f in chain.sets() {
        minors.push(m.minor(f, prev)?.matroid);
        prev = f;
    }
    let spanning: Vec<Vec<u128>> = minors
        .iter()
        .map(|mi| {
            (0..=mi.n())
                .map(|size| {
                    mi.ground()
                        .subsets_of_size(size)
                        .filter(|&w| mi.rank_of(w) == mi.rank())
                        .count() as u128
                })
                .collect()
        })
        .collect();
    let lower: Vec<usize> = minors.iter().map(|mi| mi.rank()).collect();
    let outside = m.n() - prev.len();
    let total = m.rank().saturating_sub(1);
    let mut sum = 0u128;
    choose_sizes(&spanning, &lower, 0, total, 1, &mut |rest, product| {
        sum += product * binomial(outside, rest).unwrap_or(0);
    });
    Ok(sum)
}

/// Runs over `a_i >= lower[i]` with `Σ a_i <= budget`, passing the unused
/// budget (the size of the last, unconstrained set) and the product of
/// spanning-set counts.
fn choose_sizes(
    spanning: &[Vec<u128>],
    lower: &[usize],
    i: usize,
    budget: usize,
    product: u128,
    emit: &mut impl FnMut(usize, u128),
) {
    if i == spanning.len() {
        emit(budget, product);
        return;
    }
    let hi = budget.min(spanning[i].len() - 1);
    for a in lower[i]..=hi {
        let count = spanning[i][a];
        if count > 0 {
            choose_sizes(spanning, lower, i + 1, budget - a, product * count, emit);
        }
    }
}

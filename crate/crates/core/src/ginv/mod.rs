//! Rank sequences, the G-invariant, flags and catenary data, reduced
//! cyclic chains, and the `g_M` set systems used to compare them.
//!
//! The G-invariant is computed two ways: by running over every
//! permutation of the ground set ([`g_invariant_bruteforce`]) and from the
//! flag counts per composition ([`catenary_data`] then
//! [`g_from_catenary`]). The second route scales to ground sets far beyond
//! what permutations allow; the first is its oracle.

mod catenary;
mod chains;
mod gsets;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use catenary::{
    catenary_data, flags, g_from_catenary, gamma_weights, CatenaryData, Composition, Flag,
    GammaWeight, Multiset,
};
pub use chains::{
    all_chains, chain_report, flag_compositions_via_lists, reduced_cyclic_chain,
    verify_chain_partition, BlockMismatch, Chain, ChainReport, PartitionReport,
};
pub use gsets::{
    chain_intersection_direct, chain_intersection_via_spanning_sets, g_sets,
    inclusion_exclusion_check, join_containment_witness, IncExcReport,
};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{factorial, ElementSet};

/// Default ground-set limit for [`g_invariant_bruteforce`]: `10!` is about
/// 3.6 million permutations.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Hard ceiling on the brute-force route regardless of the requested limit;
/// it keeps a rank table of `2^n` entries.
const BRUTE_FORCE_CEILING: usize = 20;

/// A 0/1 sequence of length `n`. Position 0 is the most significant bit, so
/// the numeric order of `bits` is the lexicographic order of the strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankSequence {
    n: usize,
    bits: u64,
}

impl RankSequence {
    pub fn new(n: usize, bits: u64) -> Self {
        debug_assert!(n <= 64 && (n == 64 || bits >> n == 0));
        RankSequence { n, bits }
    }

    pub fn from_digits(digits: &[bool]) -> Self {
        let bits = digits.iter().fold(0u64, |acc, &d| acc << 1 | d as u64);
        RankSequence {
            n: digits.len(),
            bits,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Entry at position `i` (0-based from the left).
    pub fn get(&self, i: usize) -> bool {
        self.bits >> (self.n - 1 - i) & 1 == 1
    }

    pub fn ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Reversed and complemented: the rank sequence of the reversed
    /// permutation in the dual matroid.
    #[must_use]
    pub fn dual(&self) -> RankSequence {
        let mask = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let reversed = if self.n == 0 {
            0
        } else {
            self.bits.reverse_bits() >> (64 - self.n)
        };
        RankSequence {
            n: self.n,
            bits: !reversed & mask,
        }
    }
}

impl fmt::Display for RankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for RankSequence {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.len() > 64 {
            return Err(format!("rank sequence longer than 64: {s}"));
        }
        let digits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(format!("invalid rank-sequence digit {c:?} in {s:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RankSequence::from_digits(&digits))
    }
}

/// Multiset of rank sequences over all permutations of the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GInvariant {
    n: usize,
    k: usize,
    counts: BTreeMap<RankSequence, u128>,
}

impl GInvariant {
    /// Zero counts are dropped.
    pub fn new(n: usize, k: usize, counts: BTreeMap<RankSequence, u128>) -> Self {
        let counts = counts.into_iter().filter(|&(_, c)| c != 0).collect();
        GInvariant { n, k, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &BTreeMap<RankSequence, u128> {
        &self.counts
    }

    pub fn get(&self, seq: &RankSequence) -> u128 {
        self.counts.get(seq).copied().unwrap_or(0)
    }

    /// Sum of all multiplicities; `n!` for the G-invariant of a matroid.
    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }

    /// The G-invariant of the dual matroid: every sequence reversed and
    /// complemented.
    #[must_use]
    pub fn dual(&self) -> GInvariant {
        GInvariant {
            n: self.n,
            k: self.n - self.k,
            counts: self.counts.iter().map(|(s, &c)| (s.dual(), c)).collect(),
        }
    }
}

/// `c1[s1] + c2[s2] + ...` in increasing sequence order; `0` when empty.
impl fmt::Display for GInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}[{s}]")?;
        }
        Ok(())
    }
}

/// The rank sequence of `perm`, a listing of the ground set in some order.
pub fn rank_sequence(m: &Matroid, perm: &[usize]) -> Result<RankSequence> {
    let n = m.n();
    if perm.len() != n {
        return Err(Error::NotAPermutation(format!(
            "{} entries for a ground set of {n}",
            perm.len()
        )));
    }
    let mut seen = ElementSet::EMPTY;
    let mut digits = Vec::with_capacity(n);
    let mut prev = 0;
    for &e in perm {
        if e >= n {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
        if seen.contains(e) {
            return Err(Error::NotAPermutation(format!("element {e} repeated")));
        }
        seen.insert(e);
        let r = m.rank_of(seen);
        digits.push(r > prev);
        prev = r;
    }
    Ok(RankSequence::from_digits(&digits))
}

/// The G-invariant by enumerating all `n!` permutations, refused when
/// `n > BRUTE_FORCE_LIMIT`.
pub fn g_invariant_bruteforce(m: &Matroid) -> Result<GInvariant> {
    g_invariant_bruteforce_with_limit(m, BRUTE_FORCE_LIMIT)
}

/// As [`g_invariant_bruteforce`] with a caller-chosen size guard (capped at
/// 20 elements).
pub fn g_invariant_bruteforce_with_limit(m: &Matroid, limit: usize) -> Result<GInvariant> {
    let n = m.n();
    let limit = limit.min(BRUTE_FORCE_CEILING);
    if n > limit {
        return Err(Error::TooLarge {
            what: "brute-force G-invariant (use the catenary route)",
            n,
            limit,
        });
    }
    let mut counts = BTreeMap::new();
    if n == 0 {
        counts.insert(RankSequence::new(0, 0), 1);
        return Ok(GInvariant::new(0, 0, counts));
    }

    let table: Vec<u8> = (0..1u64 << n)
        .map(|mask| m.rank_of(ElementSet::from_bits(mask)) as u8)
        .collect();
    let per_sequence = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut local = vec![0u64; 1 << n];
            let used = 1u32 << first;
            let r = table[used as usize];
            walk_permutations(&table, n, used, r, r as u64, &mut local);
            local
        })
        .reduce(
            || vec![0u64; 1 << n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    for (bits, &c) in per_sequence.iter().enumerate() {
        if c != 0 {
            counts.insert(RankSequence::new(n, bits as u64), c as u128);
        }
    }
    let g = GInvariant::new(n, m.rank(), counts);
    debug_assert_eq!(Some(g.total()), factorial(n));
    Ok(g)
}

fn walk_permutations(table: &[u8], n: usize, used: u32, rank: u8, seq: u64, counts: &mut [u64]) {
    let full = (1u32 << n) - 1;
    if used == full {
        counts[seq as usize] += 1;
        return;
    }
    let mut free = full & !used;
    while free != 0 {
        let e = free.trailing_zeros();
        free &= free - 1;
        let next = used | 1 << e;
        let r = table[next as usize];
        walk_permutations(table, n, next, r, seq << 1 | (r > rank) as u64, counts);
    }
}

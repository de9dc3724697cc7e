use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{GInvariant, RankSequence};
use crate::error::{Error, Result};
use crate::matroid::{FlatLattice, Matroid};
use crate::set::ElementSet;

/// `(a_0, a_1, ..., a_k)`: the sizes `|X_0|, |X_1 - X_0|, ...` along a flag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `Σ a_i`.
    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts after `a_0`.
    pub fn k(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// True for an `(n, k)`-composition: `a_0 >= 0`, every later part
    /// positive, parts summing to `n`.
    pub fn is_valid(&self, n: usize, k: usize) -> bool {
        self.0.len() == k + 1 && self.n() == n && self.0[1..].iter().all(|&a| a > 0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("composition must be parenthesized: {s:?}"))?;
        inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Composition)
    }
}

/// Multiset of compositions with multiplicities.
pub type Multiset = BTreeMap<Composition, u128>;

pub(crate) fn merge_into(target: &mut Multiset, other: Multiset) {
    for (c, k) in other {
        *target.entry(c).or_insert(0) += k;
    }
}

/// A maximal chain of flats `X_0 ⊊ X_1 ⊊ ... ⊊ X_k` with `r(X_i) = i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag(Vec<ElementSet>);

impl Flag {
    /// Checks that `flats` is a flag of `m`.
    pub fn new(m: &Matroid, flats: Vec<ElementSet>) -> Result<Flag> {
        check_flag(m, &flats)?;
        Ok(Flag(flats))
    }

    pub fn flats(&self) -> &[ElementSet] {
        &self.0
    }

    pub fn composition(&self) -> Composition {
        let mut prev = ElementSet::EMPTY;
        Composition(
            self.0
                .iter()
                .map(|&x| {
                    let a = x.difference(prev).len();
                    prev = x;
                    a
                })
                .collect(),
        )
    }
}

pub(crate) fn check_flag(m: &Matroid, flats: &[ElementSet]) -> Result<()> {
    if flats.len() != m.rank() + 1 {
        return Err(Error::InvalidFlag(format!(
            "{} flats for a matroid of rank {}",
            flats.len(),
            m.rank()
        )));
    }
    for (i, &x) in flats.iter().enumerate() {
        m.check_subset(x)?;
        if m.rank_of(x) != i || !m.is_flat(x) {
            return Err(Error::InvalidFlag(format!("{x} is not a flat of rank {i}")));
        }
        if i > 0 && !flats[i - 1].is_proper_subset(x) {
            return Err(Error::InvalidFlag(format!("{} is not inside {x}", flats[i - 1])));
        }
    }
    Ok(())
}

/// Runs `visit` on every flag of the lattice, given as a path of flat
/// indices from the bottom to the top, and merges the per-worker states.
/// The work is split over the rank-1 flats; because `merge` is expected to
/// be commutative the result does not depend on scheduling.
pub(crate) fn fold_flags<T, I, V, G>(fl: &FlatLattice, init: I, visit: V, merge: G) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &[usize]) + Sync + Send,
    G: Fn(T, T) -> T + Sync + Send,
{
    let bottom = fl.bottom();
    let top = fl.len() - 1;
    if bottom == top {
        let mut state = init();
        visit(&mut state, &[bottom]);
        return state;
    }
    fl.covers(bottom)
        .par_iter()
        .map(|&first| {
            let mut state = init();
            let mut path = vec![bottom, first];
            walk(fl, top, &mut path, &mut state, &visit);
            state
        })
        .reduce(&init, &merge)
}

fn walk<T, V: Fn(&mut T, &[usize])>(
    fl: &FlatLattice,
    top: usize,
    path: &mut Vec<usize>,
    state: &mut T,
    visit: &V,
) {
    let last = *path.last().expect("path starts at the bottom");
    if last == top {
        visit(state, path);
        return;
    }
    for &next in fl.covers(last) {
        path.push(next);
        walk(fl, top, path, state, visit);
        path.pop();
    }
}

pub(crate) fn path_composition(fl: &FlatLattice, path: &[usize]) -> Composition {
    let mut prev = ElementSet::EMPTY;
    Composition(
        path.iter()
            .map(|&i| {
                let x = fl.flat(i);
                let a = x.difference(prev).len();
                prev = x;
                a
            })
            .collect(),
    )
}

/// Every flag of `m`, in lexicographic order of flat sequences.
pub fn flags(m: &Matroid) -> Vec<Flag> {
    let fl = FlatLattice::new(m);
    let mut out = fold_flags(
        &fl,
        Vec::new,
        |acc: &mut Vec<Flag>, path| acc.push(Flag(path.iter().map(|&i| fl.flat(i)).collect())),
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    out.sort();
    out
}

/// `ν(M; a)` for every composition `a` that occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatenaryData {
    n: usize,
    k: usize,
    nu: Multiset,
}

impl CatenaryData {
    pub fn new(n: usize, k: usize, nu: Multiset) -> Result<Self> {
        if let Some(bad) = nu.keys().find(|c| !c.is_valid(n, k)) {
            return Err(Error::InvalidFlag(format!("{bad} is not an ({n},{k})-composition")));
        }
        let nu = nu.into_iter().filter(|&(_, c)| c != 0).collect();
        Ok(CatenaryData { n, k, nu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn nu(&self) -> &Multiset {
        &self.nu
    }

    pub fn get(&self, a: &Composition) -> u128 {
        self.nu.get(a).copied().unwrap_or(0)
    }

    /// Total number of flags.
    pub fn total(&self) -> u128 {
        self.nu.values().sum()
    }
}

/// One `ν(a) (a)` term per line in composition order.
impl fmt::Display for CatenaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, c) in &self.nu {
            writeln!(f, "{c} {a}")?;
        }
        Ok(())
    }
}

/// Flag counts per composition, by depth-first search over covers in the
/// lattice of flats.
pub fn catenary_data(m: &Matroid) -> CatenaryData {
    let fl = FlatLattice::new(m);
    let nu = fold_flags(
        &fl,
        Multiset::new,
        |acc: &mut Multiset, path| *acc.entry(path_composition(&fl, path)).or_insert(0) += 1,
        |mut a, b| {
            merge_into(&mut a, b);
            a
        },
    );
    let cd = CatenaryData::new(m.n(), m.rank(), nu).expect("flags have valid compositions");
    debug_assert_eq!(cd.total(), fl.flag_count());
    cd
}

/// For each composition `a`, the number of permutations of the ground set
/// that induce one fixed flag of composition `a`, split by rank sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaWeight {
    n: usize,
    k: usize,
    weights: BTreeMap<Composition, BTreeMap<RankSequence, u128>>,
}

impl GammaWeight {
    pub fn weight(&self, a: &Composition) -> Option<&BTreeMap<RankSequence, u128>> {
        self.weights.get(a)
    }

    pub fn weights(&self) -> &BTreeMap<Composition, BTreeMap<RankSequence, u128>> {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }
}

/// Weights for every composition in `support`.
///
/// Fix a flag `X_0 ⊊ ... ⊊ X_k` with composition `a` and a placement of
/// the `k` ones at positions `p_1 < ... < p_k`. A permutation induces that
/// flag and that rank sequence exactly when its `p_i`-th element lies in
/// `X_i - X_{i-1}` and every element at a zero position between `p_i` and
/// `p_{i+1}` lies in `X_i`. Counting choices position by position gives the
/// product of `a_i` at the `i`-th one and `|X_i| - (j - 1)` at a zero in
/// position `j` (1-based), with `X_0` before the first one.
pub fn gamma_weights<'a>(
    n: usize,
    k: usize,
    support: impl IntoIterator<Item = &'a Composition>,
) -> Result<GammaWeight> {
    if k > n || n > 64 {
        return Err(Error::RankOutOfRange { k, rank: n });
    }
    let mut weights = BTreeMap::new();
    for a in support {
        if !a.is_valid(n, k) {
            return Err(Error::InvalidFlag(format!("{a} is not an ({n},{k})-composition")));
        }
        weights.insert(a.clone(), composition_weights(n, k, a)?);
    }
    Ok(GammaWeight { n, k, weights })
}

fn composition_weights(n: usize, k: usize, a: &Composition) -> Result<BTreeMap<RankSequence, u128>> {
    let parts = a.parts();
    let mut out = BTreeMap::new();
    for ones in ElementSet::full(n).subsets_of_size(k) {
        let mut weight: u128 = 1;
        let mut level = 0;
        let mut closed = parts[0];
        let mut seq = 0u64;
        for j in 0..n {
            let factor = if ones.contains(j) {
                level += 1;
                closed += parts[level];
                seq = seq << 1 | 1;
                parts[level]
            } else {
                seq <<= 1;
                closed.saturating_sub(j)
            };
            if factor == 0 {
                weight = 0;
                break;
            }
            weight = weight
                .checked_mul(factor as u128)
                .ok_or(Error::Overflow("gamma weight"))?;
        }
        if weight > 0 {
            out.insert(RankSequence::new(n, seq), weight);
        }
    }
    Ok(out)
}

/// `G = Σ_a ν(a) · γ(a)`.
pub fn g_from_catenary(cd: &CatenaryData) -> Result<GInvariant> {
    let gamma = gamma_weights(cd.n(), cd.rank(), cd.nu().keys())?;
    let mut counts: BTreeMap<RankSequence, u128> = BTreeMap::new();
    for (a, &nu) in cd.nu() {
        for (&s, &w) in gamma.weight(a).expect("weights cover the support") {
            let term = nu.checked_mul(w).ok_or(Error::Overflow("G-invariant"))?;
            let slot = counts.entry(s).or_insert(0);
            *slot = slot.checked_add(term).ok_or(Error::Overflow("G-invariant"))?;
        }
    }
    Ok(GInvariant::new(cd.n(), cd.rank(), counts))
}

//! Finite lattices stored by their full order relation over dense indices.
//!
//! Everything here is sized for lattices of at most a few thousand elements:
//! the order relation is kept as one bit row per element, and meet and join
//! tables are precomputed at construction, which is also where the lattice
//! property is checked.

mod glue;
mod iso;

pub use glue::{glue_transitive_closure, Glued, Insert};
pub use iso::{find_isomorphism, labeled_isomorphic, lattices_isomorphic};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("element {element} out of range for a poset of {size} elements")]
    OutOfRange { element: usize, size: usize },
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("elements {0} and {1} have no least upper bound")]
    NoJoin(usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound")]
    NoMeet(usize, usize),
    #[error("label vectors have length {labels}, lattice has {size} elements")]
    LabelLength { labels: usize, size: usize },
    #[error("labels are not monotone along {0} < {1}")]
    LabelsNotMonotone(usize, usize),
}

/// One bit row of an order relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitRow(Vec<u64>);

impl BitRow {
    fn new(size: usize) -> Self {
        BitRow(vec![0; size.div_ceil(64)])
    }

    pub(crate) fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn or_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn and(&self, other: &BitRow) -> BitRow {
        BitRow(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitRow) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// A finite lattice on elements `0..size`.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    size: usize,
    /// `up[x]` holds every `y` with `x <= y`.
    up: Vec<BitRow>,
    /// `down[x]` holds every `y` with `y <= x`.
    down: Vec<BitRow>,
    meet: Vec<u32>,
    join: Vec<u32>,
    bottom: usize,
    top: usize,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    heights: Vec<usize>,
    /// Linear extension of the order.
    linear: Vec<usize>,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.up == other.up
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds a lattice from a complete order predicate, checking the partial
    /// order axioms and the existence of all meets and joins.
    pub fn from_order(
        size: usize,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        let mut up = vec![BitRow::new(size); size];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..size {
                if leq(x, y) {
                    row.set(y);
                }
            }
        }
        for (x, row) in up.iter().enumerate() {
            if !row.get(x) {
                return Err(LatticeError::NotReflexive(x));
            }
        }
        for x in 0..size {
            for y in up[x].ones() {
                if x != y && up[y].get(x) {
                    return Err(LatticeError::NotAntisymmetric(x.min(y), x.max(y)));
                }
                if !up[y].is_subset(&up[x]) {
                    let z = up[y].ones().find(|&z| !up[x].get(z)).unwrap_or(y);
                    return Err(LatticeError::NotTransitive(x, y, z));
                }
            }
        }
        Self::from_up_rows(size, up)
    }

    /// Builds a lattice from generating pairs `(x, y)` meaning `x <= y`; the
    /// reflexive and transitive closure is taken first.
    pub fn from_relation(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, LatticeError> {
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        let mut up = vec![BitRow::new(size); size];
        for (x, row) in up.iter_mut().enumerate() {
            row.set(x);
        }
        for (x, y) in pairs {
            for e in [x, y] {
                if e >= size {
                    return Err(LatticeError::OutOfRange { element: e, size });
                }
            }
            up[x].set(y);
        }
        // Warshall over bit rows.
        for k in 0..size {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.get(k) {
                    row.or_assign(&row_k);
                }
            }
        }
        for x in 0..size {
            for y in up[x].ones() {
                if x != y && up[y].get(x) {
                    return Err(LatticeError::NotAntisymmetric(x.min(y), x.max(y)));
                }
            }
        }
        Self::from_up_rows(size, up)
    }

    /// The chain `0 < 1 < .. < len-1`.
    pub fn chain(len: usize) -> Result<Self, LatticeError> {
        Self::from_order(len, |x, y| x <= y)
    }

    /// Lattice of all subsets of a `k`-element set (elements are bit masks).
    pub fn boolean(k: usize) -> Result<Self, LatticeError> {
        Self::from_order(1 << k, |x, y| x & !y == 0)
    }

    fn from_up_rows(size: usize, up: Vec<BitRow>) -> Result<Self, LatticeError> {
        let mut down = vec![BitRow::new(size); size];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].set(x);
            }
        }
        let below: Vec<usize> = down.iter().map(BitRow::count).collect();
        let mut linear: Vec<usize> = (0..size).collect();
        linear.sort_by_key(|&x| (below[x], x));

        let mut meet = vec![0u32; size * size];
        let mut join = vec![0u32; size * size];
        for x in 0..size {
            for y in x..size {
                let uppers = up[x].and(&up[y]);
                let j = uppers
                    .ones()
                    .min_by_key(|&z| below[z])
                    .filter(|&z| uppers.is_subset(&up[z]))
                    .ok_or(LatticeError::NoJoin(x, y))?;
                let lowers = down[x].and(&down[y]);
                let m = lowers
                    .ones()
                    .max_by_key(|&z| below[z])
                    .filter(|&z| lowers.is_subset(&down[z]))
                    .ok_or(LatticeError::NoMeet(x, y))?;
                join[x * size + y] = j as u32;
                join[y * size + x] = j as u32;
                meet[x * size + y] = m as u32;
                meet[y * size + x] = m as u32;
            }
        }
        let bottom = linear[0];
        let top = linear[size - 1];

        let mut upper_covers = vec![Vec::new(); size];
        let mut lower_covers = vec![Vec::new(); size];
        for x in 0..size {
            for y in up[x].ones() {
                if x == y {
                    continue;
                }
                // y covers x when nothing lies strictly between them.
                let between = up[x].and(&down[y]).count();
                if between == 2 {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }
        let mut heights = vec![0usize; size];
        for &x in &linear {
            heights[x] = lower_covers[x]
                .iter()
                .map(|&y| heights[y] + 1)
                .max()
                .unwrap_or(0);
        }
        Ok(FiniteLattice {
            size,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            upper_covers,
            lower_covers,
            heights,
            linear,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].get(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y] as usize
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y] as usize
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// All cover pairs `(x, y)` with `y` covering `x`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect()
    }

    /// Length of a longest chain from the bottom to `x`.
    pub fn height(&self, x: usize) -> usize {
        self.heights[x]
    }

    /// A linear extension of the order.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// Elements of the closed interval `[x, y]`, in linear-extension order.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        self.linear
            .iter()
            .copied()
            .filter(|&z| self.leq(x, z) && self.leq(z, y))
            .collect()
    }

    /// Elements of the open interval `(bottom, top)`.
    pub fn open_elements(&self) -> Vec<usize> {
        self.linear
            .iter()
            .copied()
            .filter(|&z| z != self.bottom && z != self.top)
            .collect()
    }

    /// All nonempty chains, of the open part when `open_only` is set. Each
    /// chain is listed in increasing order.
    pub fn chains(&self, open_only: bool) -> Vec<Vec<usize>> {
        let pool: Vec<usize> = if open_only {
            self.open_elements()
        } else {
            self.linear.clone()
        };
        let mut out = Vec::new();
        let mut current = Vec::new();
        for (i, &x) in pool.iter().enumerate() {
            current.push(x);
            self.extend_chains(&pool[i + 1..], &mut current, &mut out);
            current.pop();
        }
        out
    }

    fn extend_chains(&self, rest: &[usize], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(current.clone());
        let last = *current.last().expect("chain is nonempty");
        for (i, &y) in rest.iter().enumerate() {
            if self.lt(last, y) {
                current.push(y);
                self.extend_chains(&rest[i + 1..], current, out);
                current.pop();
            }
        }
    }

    /// The same elements with the order reversed.
    pub fn order_dual(&self) -> FiniteLattice {
        Self::from_up_rows(self.size, self.down.clone())
            .expect("the order dual of a lattice is a lattice")
    }

    /// The sublattice on the closed interval `[x, y]`, with the map from new
    /// indices to old ones.
    pub fn interval_lattice(&self, x: usize, y: usize) -> (FiniteLattice, Vec<usize>) {
        let elements = self.interval(x, y);
        let sub = Self::from_order(elements.len(), |i, j| self.leq(elements[i], elements[j]))
            .expect("an interval of a lattice is a lattice");
        (sub, elements)
    }
}

/// A lattice with a size label and a rank label on every element: the shape
/// of the configuration of a matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledLattice {
    lattice: FiniteLattice,
    sizes: Vec<usize>,
    ranks: Vec<usize>,
}

impl LabeledLattice {
    /// Checks that sizes strictly increase and ranks weakly increase along
    /// the order.
    pub fn new(
        lattice: FiniteLattice,
        sizes: Vec<usize>,
        ranks: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        let n = lattice.size();
        for len in [sizes.len(), ranks.len()] {
            if len != n {
                return Err(LatticeError::LabelLength { labels: len, size: n });
            }
        }
        for x in 0..n {
            for y in lattice.up[x].ones() {
                if x != y && (sizes[x] >= sizes[y] || ranks[x] > ranks[y]) {
                    return Err(LatticeError::LabelsNotMonotone(x, y));
                }
            }
        }
        Ok(LabeledLattice {
            lattice,
            sizes,
            ranks,
        })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size_label(&self, x: usize) -> usize {
        self.sizes[x]
    }

    pub fn rank_label(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `(size, rank)` per element.
    pub fn labels(&self) -> Vec<(usize, usize)> {
        self.sizes.iter().copied().zip(self.ranks.iter().copied()).collect()
    }

    /// The same labeled lattice with elements renamed: element `x` becomes
    /// `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<LabeledLattice, LatticeError> {
        let n = self.lattice.size();
        let mut inverse = vec![usize::MAX; n];
        for (x, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(LatticeError::OutOfRange { element: p, size: n });
            }
            inverse[p] = x;
        }
        let lattice =
            FiniteLattice::from_order(n, |a, b| self.lattice.leq(inverse[a], inverse[b]))?;
        let sizes = (0..n).map(|a| self.sizes[inverse[a]]).collect();
        let ranks = (0..n).map(|a| self.ranks[inverse[a]]).collect();
        LabeledLattice::new(lattice, sizes, ranks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cyclic-flat lattice of the two-lines-with-double-points example:
    /// 0 bottom, 1 = {1,2}, 2 = {7,8}, 3 = {1,2,3,4}, 4 = {1,2,7,8},
    /// 5 = {5,6,7,8}, 6 top.
    fn fig1_m() -> FiniteLattice {
        FiniteLattice::from_relation(
            7,
            [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)],
        )
        .unwrap()
    }

    #[test]
    fn meets_and_joins() {
        let l = fig1_m();
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(3, 4), 1);
        assert_eq!(l.meet(3, 5), 0);
        assert_eq!(l.join(3, 5), 6);
        for x in 0..7 {
            assert_eq!(l.meet(x, l.bottom()), l.bottom());
            assert_eq!(l.join(x, l.top()), l.top());
        }
    }

    #[test]
    fn open_chains_of_a_two_chain_are_empty() {
        let l = FiniteLattice::chain(2).unwrap();
        assert!(l.chains(true).is_empty());
        assert_eq!(l.chains(false).len(), 3);
    }

    #[test]
    fn fig3_base_chains() {
        // 0 bottom, a = 1, b = 2, c = 3, top = 4.
        let l = FiniteLattice::from_relation(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let mut chains = l.chains(true);
        chains.sort();
        assert_eq!(chains, vec![vec![1], vec![1, 3], vec![2], vec![2, 3], vec![3]]);
    }

    #[test]
    fn non_lattices_are_rejected() {
        // Two maximal elements.
        let err = FiniteLattice::from_relation(3, [(0, 1), (0, 2)]).unwrap_err();
        assert_eq!(err, LatticeError::NoJoin(1, 2));
        // Bowtie: 0,1 below both 2,3, with top 4 and bottom 5.
        let err = FiniteLattice::from_relation(
            6,
            [(5, 0), (5, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)],
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NoJoin(..) | LatticeError::NoMeet(..)));
        let err = FiniteLattice::from_relation(2, [(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, LatticeError::NotAntisymmetric(0, 1));
        let err = FiniteLattice::from_order(3, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2))
            .unwrap_err();
        assert_eq!(err, LatticeError::NotTransitive(0, 1, 2));
    }

    #[test]
    fn order_dual_swaps_meet_and_join() {
        let l = fig1_m();
        let d = l.order_dual();
        assert_eq!(d.bottom(), l.top());
        for x in 0..7 {
            for y in 0..7 {
                assert_eq!(d.meet(x, y), l.join(x, y));
                assert_eq!(d.join(x, y), l.meet(x, y));
            }
        }
        assert_eq!(d.order_dual(), l);
    }

    #[test]
    fn covers_and_heights() {
        let l = fig1_m();
        assert_eq!(l.covers().len(), 9);
        assert_eq!(l.height(6), 3);
        assert_eq!(l.upper_covers(1), &[3, 4]);
        let b = FiniteLattice::boolean(3).unwrap();
        assert_eq!(b.height(7), 3);
        assert_eq!(b.chains(true).len(), 6 + 6);
    }

    #[test]
    fn labels_must_be_monotone() {
        let l = FiniteLattice::chain(3).unwrap();
        assert!(LabeledLattice::new(l.clone(), vec![0, 2, 5], vec![0, 1, 1]).is_ok());
        assert_eq!(
            LabeledLattice::new(l.clone(), vec![0, 2, 2], vec![0, 1, 2]).unwrap_err(),
            LatticeError::LabelsNotMonotone(1, 2)
        );
        assert!(LabeledLattice::new(l, vec![0, 2], vec![0, 1]).is_err());
    }
}

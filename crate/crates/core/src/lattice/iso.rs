use std::collections::BTreeMap;

use super::{FiniteLattice, LabeledLattice};

/// Searches for an order isomorphism `a -> b` that carries every label of
/// `a` to the equal label in `b`. Returns the image of each element of `a`.
///
/// Candidates are pruned by colour refinement over the cover graph, seeded
/// with `(label, height, up-degree, down-degree)`; the remaining choices are
/// settled by backtracking against the full order relation.
pub fn find_isomorphism<L: Ord + Clone>(
    a: &FiniteLattice,
    labels_a: &[L],
    b: &FiniteLattice,
    labels_b: &[L],
) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() || labels_a.len() != n || labels_b.len() != n {
        return None;
    }
    let colors = refine(a, labels_a, b, labels_b)?;
    let (colors_a, colors_b) = colors.split_at(n);

    let mut class_size = BTreeMap::new();
    for &c in colors_a {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let order = search_order(a, colors_a, &class_size);

    let mut candidates: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (y, &c) in colors_b.iter().enumerate() {
        candidates.entry(c).or_default().push(y);
    }

    let mut state = Search {
        a,
        b,
        order: &order,
        colors_a,
        candidates: &candidates,
        image: vec![usize::MAX; n],
        used: vec![false; n],
    };
    state.extend(0).then_some(state.image)
}

/// True when the configurations agree up to renaming lattice elements.
pub fn labeled_isomorphic(c1: &LabeledLattice, c2: &LabeledLattice) -> bool {
    find_isomorphism(c1.lattice(), &c1.labels(), c2.lattice(), &c2.labels()).is_some()
}

/// Isomorphism of the bare lattices.
pub fn lattices_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    let blank_a = vec![(); a.size()];
    let blank_b = vec![(); b.size()];
    find_isomorphism(a, &blank_a, b, &blank_b).is_some()
}

/// Joint colour refinement of both lattices; `None` as soon as the colour
/// histograms differ.
fn refine<L: Ord + Clone>(
    a: &FiniteLattice,
    labels_a: &[L],
    b: &FiniteLattice,
    labels_b: &[L],
) -> Option<Vec<usize>> {
    let n = a.size();
    let node = |i: usize| if i < n { (a, i) } else { (b, i - n) };

    let seeds: Vec<(L, usize, usize, usize)> = (0..2 * n)
        .map(|i| {
            let (l, x) = node(i);
            let label = if i < n { &labels_a[x] } else { &labels_b[x] };
            (
                label.clone(),
                l.height(x),
                l.upper_covers(x).len(),
                l.lower_covers(x).len(),
            )
        })
        .collect();
    let mut colors = renumber(&seeds);
    let mut classes = count_classes(&colors);
    loop {
        if !same_histogram(&colors[..n], &colors[n..]) {
            return None;
        }
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..2 * n)
            .map(|i| {
                let (l, x) = node(i);
                let offset = if i < n { 0 } else { n };
                let mut ups: Vec<usize> =
                    l.upper_covers(x).iter().map(|&y| colors[y + offset]).collect();
                let mut downs: Vec<usize> =
                    l.lower_covers(x).iter().map(|&y| colors[y + offset]).collect();
                ups.sort_unstable();
                downs.sort_unstable();
                (colors[i], ups, downs)
            })
            .collect();
        let next = renumber(&keys);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    same_histogram(&colors[..n], &colors[n..]).then_some(colors)
}

/// Colour ids by sorted key, so ids do not depend on element order.
fn renumber<K: Ord>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("key is present"))
        .collect()
}

fn count_classes(colors: &[usize]) -> usize {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn same_histogram(x: &[usize], y: &[usize]) -> bool {
    let mut x = x.to_vec();
    let mut y = y.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

/// Orders the elements of `a` so that each one is adjacent in the cover
/// graph to as many earlier ones as possible, preferring small colour classes.
fn search_order(a: &FiniteLattice, colors: &[usize], class_size: &BTreeMap<usize, usize>) -> Vec<usize> {
    let n = a.size();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&x| !placed[x])
            .min_by_key(|&x| (std::cmp::Reverse(links[x]), class_size[&colors[x]], x))
            .expect("unplaced element remains");
        placed[next] = true;
        order.push(next);
        for &y in a.upper_covers(next).iter().chain(a.lower_covers(next)) {
            links[y] += 1;
        }
    }
    order
}

struct Search<'a> {
    a: &'a FiniteLattice,
    b: &'a FiniteLattice,
    order: &'a [usize],
    colors_a: &'a [usize],
    candidates: &'a BTreeMap<usize, Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        let Some(&x) = self.order.get(depth) else {
            return true;
        };
        let pool = &self.candidates[&self.colors_a[x]];
        for &y in pool {
            if self.used[y] || !self.consistent(depth, x, y) {
                continue;
            }
            self.image[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[y] = false;
            self.image[x] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, x: usize, y: usize) -> bool {
        self.order[..depth].iter().all(|&u| {
            let v = self.image[u];
            self.a.leq(u, x) == self.b.leq(v, y) && self.a.leq(x, u) == self.b.leq(y, v)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled(pairs: &[(usize, usize)], labels: &[(usize, usize)]) -> LabeledLattice {
        let l = FiniteLattice::from_relation(labels.len(), pairs.iter().copied()).unwrap();
        LabeledLattice::new(
            l,
            labels.iter().map(|p| p.0).collect(),
            labels.iter().map(|p| p.1).collect(),
        )
        .unwrap()
    }

    // Left and right configurations of the running pair: same labels, the
    // two (2,1) atoms sit under different numbers of (4,2) elements.
    fn left() -> LabeledLattice {
        labeled(
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)],
            &[(0, 0), (2, 1), (2, 1), (4, 2), (4, 2), (4, 2), (8, 3)],
        )
    }

    fn right() -> LabeledLattice {
        labeled(
            &[(0, 1), (0, 2), (2, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)],
            &[(0, 0), (2, 1), (2, 1), (4, 2), (4, 2), (4, 2), (8, 3)],
        )
    }

    #[test]
    fn distinguishes_the_running_pair() {
        assert!(labeled_isomorphic(&left(), &left()));
        assert!(labeled_isomorphic(&right(), &right()));
        assert!(!labeled_isomorphic(&left(), &right()));
        assert!(!labeled_isomorphic(&right(), &left()));
    }

    #[test]
    fn relabeling_is_isomorphic() {
        let l = left();
        let perm = [6, 3, 0, 5, 1, 4, 2];
        let r = l.relabel(&perm).unwrap();
        let iso = find_isomorphism(l.lattice(), &l.labels(), r.lattice(), &r.labels()).unwrap();
        for x in 0..7 {
            assert_eq!(l.labels()[x], r.labels()[iso[x]]);
        }
    }

    #[test]
    fn labels_matter() {
        let a = labeled(&[(0, 1), (1, 2)], &[(0, 0), (2, 1), (5, 2)]);
        let b = labeled(&[(0, 1), (1, 2)], &[(0, 0), (3, 1), (5, 2)]);
        assert!(!labeled_isomorphic(&a, &b));
        assert!(lattices_isomorphic(a.lattice(), b.lattice()));
    }

    #[test]
    fn boolean_lattice_automorphisms() {
        let b = FiniteLattice::boolean(4).unwrap();
        assert!(lattices_isomorphic(&b, &b.order_dual()));
        let chain = FiniteLattice::chain(16).unwrap();
        assert!(!lattices_isomorphic(&b, &chain));
    }
}

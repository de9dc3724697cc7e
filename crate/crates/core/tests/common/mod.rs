//! Test-side oracles. Nothing here calls into the library's rank, closure,
//! flat or invariant code except to build the object under test: ranks come
//! from graphs, GF(2) vectors or explicit tables, and every derived quantity
//! is recomputed from scratch.

#![allow(dead_code)]

use std::collections::BTreeMap;

use catena::constructions::example3_pair;
use catena::{ElementSet, Matroid, PavingSpec, RankedFamily};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rank of every subset, indexed by bitmask.
pub type Table = Vec<usize>;

pub fn rank_table(m: &Matroid) -> Table {
    (0u64..1 << m.n()).map(|a| m.rank_of(ElementSet::from_bits(a))).collect()
}

fn bits(a: u64) -> usize {
    a.count_ones() as usize
}

/// Checks `0 <= r(A) <= |A|`, unit increase and local submodularity, which
/// together are the rank axioms.
pub fn check_rank_axioms(n: usize, t: &Table) -> Result<(), String> {
    if t[0] != 0 {
        return Err("r(empty) != 0".into());
    }
    for a in 0u64..1 << n {
        if t[a as usize] > bits(a) {
            return Err(format!("r({a:b}) exceeds its size"));
        }
        for e in 0..n {
            if a >> e & 1 == 1 {
                continue;
            }
            let ae = a | 1 << e;
            let step = t[ae as usize] as isize - t[a as usize] as isize;
            if !(0..=1).contains(&step) {
                return Err(format!("adding {e} to {a:b} changes rank by {step}"));
            }
            for f in e + 1..n {
                if a >> f & 1 == 1 {
                    continue;
                }
                let af = a | 1 << f;
                let aef = ae | 1 << f;
                if t[ae as usize] + t[af as usize] < t[aef as usize] + t[a as usize] {
                    return Err(format!("submodularity fails at {a:b} with {e}, {f}"));
                }
            }
        }
    }
    Ok(())
}

/// Cyclic flats read off a rank table, with ranks, sorted by bitmask.
pub fn cyclic_flats_of_table(n: usize, t: &Table) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for a in 0u64..1 << n {
        let r = t[a as usize];
        let flat = (0..n).all(|e| a >> e & 1 == 1 || t[(a | 1 << e) as usize] > r);
        let cyclic = (0..n).all(|e| a >> e & 1 == 0 || t[(a & !(1 << e)) as usize] == r);
        if flat && cyclic {
            out.push((a, r));
        }
    }
    out
}

/// The matroid with the cyclic flats of the table.
pub fn matroid_from_table(n: usize, t: &Table) -> Matroid {
    let entries = cyclic_flats_of_table(n, t)
        .into_iter()
        .map(|(a, r)| (ElementSet::from_bits(a), r))
        .collect();
    Matroid::from_cyclic_flats_general(&RankedFamily::new(n, entries).unwrap())
        .expect("cyclic flats of a rank table form a valid family")
}

fn graphic_rank(vertices: usize, edges: &[(usize, usize)], a: u64) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut rank = 0;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if a >> i & 1 == 0 {
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            rank += 1;
        }
    }
    rank
}

fn binary_rank(vectors: &[u32], a: u64) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for (i, &v) in vectors.iter().enumerate() {
        if a >> i & 1 == 0 {
            continue;
        }
        let mut v = v;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|x, y| y.cmp(x));
        }
    }
    basis.len()
}

pub fn graphic_table(vertices: usize, edges: &[(usize, usize)]) -> Table {
    (0u64..1 << edges.len()).map(|a| graphic_rank(vertices, edges, a)).collect()
}

pub fn binary_table(vectors: &[u32]) -> Table {
    (0u64..1 << vectors.len()).map(|a| binary_rank(vectors, a)).collect()
}

/// A matroid of the corpus; `table` is an independent rank table when the
/// matroid came from one.
pub struct Sample {
    pub name: String,
    pub matroid: Matroid,
    pub table: Option<Table>,
}

impl Sample {
    fn plain(name: impl Into<String>, matroid: Matroid) -> Self {
        Sample { name: name.into(), matroid, table: None }
    }

    fn tabled(name: impl Into<String>, n: usize, table: Table) -> Self {
        let matroid = matroid_from_table(n, &table);
        Sample { name: name.into(), matroid, table: Some(table) }
    }

    /// The independent table if there is one, else the library's.
    pub fn table(&self) -> Table {
        self.table.clone().unwrap_or_else(|| rank_table(&self.matroid))
    }
}

pub fn random_graphic(rng: &mut ChaCha8Rng, n: usize) -> (usize, Vec<(usize, usize)>) {
    let vertices = rng.gen_range(2..=5);
    let edges = (0..n)
        .map(|_| {
            let u = rng.gen_range(0..vertices);
            // Occasional loops and plenty of parallel edges.
            let v = if rng.gen_bool(0.05) { u } else { rng.gen_range(0..vertices) };
            (u, v)
        })
        .collect();
    (vertices, edges)
}

pub fn random_binary(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    let dim = rng.gen_range(2..=4);
    (0..n).map(|_| rng.gen_range(0..1u32 << dim)).collect()
}

/// A random paving matroid: random sets of size `r` or `r + 1` kept while
/// they meet the earlier ones in at most `r - 2` elements.
pub fn random_paving(rng: &mut ChaCha8Rng, n: usize, r: usize) -> PavingSpec {
    let mut hyperplanes: Vec<ElementSet> = Vec::new();
    let mut elements: Vec<usize> = (0..n).collect();
    for _ in 0..12 {
        elements.shuffle(rng);
        let size = rng.gen_range(r..=(r + 1).min(n - 1));
        let h: ElementSet = elements[..size].iter().copied().collect();
        if hyperplanes.iter().all(|&g| g != h && g.intersection(h).len() <= r - 2) {
            hyperplanes.push(h);
        }
    }
    PavingSpec::new(n, r, hyperplanes)
}

/// A ranked family drawn at random and kept only if it passes the
/// independent axiom check.
pub fn random_valid_family(rng: &mut ChaCha8Rng, n: usize) -> RankedFamily {
    loop {
        let r = rng.gen_range(2..n);
        let mut entries: Vec<(u64, usize)> = vec![(0, 0), ((1u64 << n) - 1, r)];
        for _ in 0..rng.gen_range(1..=3) {
            let set = rng.gen_range(1..(1u64 << n) - 1);
            let rank = rng.gen_range(1..r);
            if entries.iter().all(|e| e.0 != set) {
                entries.push((set, rank));
            }
        }
        if z_oracle(&entries).is_none() {
            let entries = entries.into_iter().map(|(s, k)| (ElementSet::from_bits(s), k)).collect();
            return RankedFamily::new(n, entries).unwrap();
        }
    }
}

/// At least thirty matroids on at most eight elements.
pub fn corpus() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut out = Vec::new();
    for (k, n) in [(0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (2, 6), (3, 6), (4, 7), (3, 8), (4, 8), (5, 5)]
    {
        out.push(Sample::plain(format!("U({k},{n})"), Matroid::uniform(k, n).unwrap()));
    }
    out.push(Sample::plain("fig1-M", catena::fixtures::fig1_m()));
    out.push(Sample::plain("fig1-N", catena::fixtures::fig1_n()));
    let pair = example3_pair(2, 2, 1).unwrap();
    out.push(Sample::plain("two-lines-1", Matroid::from_paving(&pair.n1).unwrap()));
    out.push(Sample::plain("two-lines-2", Matroid::from_paving(&pair.n2).unwrap()));
    // Fano plane: as a paving matroid and as a binary matroid.
    let fano_lines: Vec<ElementSet> = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]
        .iter()
        .map(|l| l.iter().copied().collect())
        .collect();
    out.push(Sample::plain(
        "fano",
        Matroid::from_paving(&PavingSpec::new(7, 3, fano_lines.clone())).unwrap(),
    ));
    out.push(Sample::tabled("fano-binary", 7, binary_table(&[1, 2, 3, 4, 5, 6, 7])));
    out.push(Sample::plain(
        "non-fano",
        Matroid::from_paving(&PavingSpec::new(7, 3, fano_lines[..6].to_vec())).unwrap(),
    ));
    for i in 0..3 {
        let n = rng.gen_range(6..=8);
        let spec = random_paving(&mut rng, n, 3);
        out.push(Sample::plain(format!("paving-{i}"), Matroid::from_paving(&spec).unwrap()));
    }
    for i in 0..5 {
        let n = rng.gen_range(4..=8);
        let (v, edges) = random_graphic(&mut rng, n);
        out.push(Sample::tabled(format!("graphic-{i}"), n, graphic_table(v, &edges)));
    }
    for i in 0..5 {
        let n = rng.gen_range(4..=8);
        out.push(Sample::tabled(format!("binary-{i}"), n, binary_table(&random_binary(&mut rng, n))));
    }
    for i in 0..3 {
        let n = rng.gen_range(5..=8);
        let family = random_valid_family(&mut rng, n);
        out.push(Sample::plain(
            format!("family-{i}"),
            Matroid::from_cyclic_flats_general(&family).unwrap(),
        ));
    }
    let dualized: Vec<Sample> = ["fig1-M", "fig1-N", "fano", "graphic-0", "binary-1", "paving-0"]
        .iter()
        .map(|name| {
            let s = out.iter().find(|s| s.name == *name).unwrap();
            Sample::plain(format!("dual({name})"), s.matroid.dual())
        })
        .collect();
    out.extend(dualized);
    out
}

/// Polynomial as `(i, j) -> c` for `c x^i y^j`, no zero entries.
pub type Poly = BTreeMap<(usize, usize), i128>;

fn shift(p: &Poly, di: usize, dj: usize) -> Poly {
    p.iter().map(|(&(i, j), &c)| ((i + di, j + dj), c)).collect()
}

fn add(mut p: Poly, q: &Poly) -> Poly {
    for (&k, &c) in q {
        let slot = p.entry(k).or_insert(0);
        *slot += c;
        if *slot == 0 {
            p.remove(&k);
        }
    }
    p
}

/// Tutte polynomial by deletion and contraction on a rank table.
pub fn tutte_deletion_contraction(n: usize, t: &Table) -> Poly {
    fn go(t: &Table, remaining: u64, contracted: u64) -> Poly {
        if remaining == 0 {
            return BTreeMap::from([((0, 0), 1)]);
        }
        let r = |a: u64| t[(a | contracted) as usize] - t[contracted as usize];
        let e = remaining.trailing_zeros();
        let single = 1u64 << e;
        let rest = remaining & !single;
        if r(single) == 0 {
            shift(&go(t, rest, contracted), 0, 1)
        } else if r(rest) < r(remaining) {
            shift(&go(t, rest, contracted | single), 1, 0)
        } else {
            add(go(t, rest, contracted), &go(t, rest, contracted | single))
        }
    }
    go(t, (1u64 << n) - 1, 0)
}

/// Number of nonempty chains among `sets` under proper inclusion.
pub fn chain_count(sets: &[u64]) -> u128 {
    let mut sorted = sets.to_vec();
    sorted.sort_by_key(|s| s.count_ones());
    let mut ending = vec![0u128; sorted.len()];
    for i in 0..sorted.len() {
        ending[i] = 1 + (0..i)
            .filter(|&j| sorted[j] & !sorted[i] == 0 && sorted[j] != sorted[i])
            .map(|j| ending[j])
            .sum::<u128>();
    }
    ending.iter().sum()
}

/// G-invariant from a rank table: rank-sequence strings over all
/// permutations.
pub fn g_oracle(n: usize, t: &Table) -> BTreeMap<String, u128> {
    fn go(t: &Table, n: usize, used: u64, seq: &mut String, out: &mut BTreeMap<String, u128>) {
        if seq.len() == n {
            *out.entry(seq.clone()).or_insert(0) += 1;
            return;
        }
        for e in 0..n {
            if used >> e & 1 == 0 {
                let next = used | 1 << e;
                seq.push(if t[next as usize] > t[used as usize] { '1' } else { '0' });
                go(t, n, next, seq, out);
                seq.pop();
            }
        }
    }
    let mut out = BTreeMap::new();
    go(t, n, 0, &mut String::new(), &mut out);
    out
}

/// Which axiom first fails for a raw family (sets as bitmasks), checked
/// from the definitions: 0..=3 for Z0..Z3, `None` if all hold.
pub fn z_oracle(entries: &[(u64, usize)]) -> Option<u8> {
    if entries.is_empty() {
        return Some(0);
    }
    for (i, a) in entries.iter().enumerate() {
        if entries[..i].iter().any(|b| b.0 == a.0) {
            return Some(0);
        }
    }
    let join = |x: u64, y: u64| least_above(entries, x | y);
    let meet = |x: u64, y: u64| greatest_below(entries, x & y);
    for a in entries {
        for b in entries {
            if join(a.0, b.0).is_none() || meet(a.0, b.0).is_none() {
                return Some(0);
            }
        }
    }
    let bottom = entries.iter().min_by_key(|e| e.0.count_ones()).unwrap();
    if bottom.1 != 0 {
        return Some(1);
    }
    for x in entries {
        for y in entries {
            if x.0 != y.0 && x.0 & !y.0 == 0 {
                let gap = bits(y.0 & !x.0);
                if !(y.1 > x.1 && y.1 - x.1 < gap) {
                    return Some(2);
                }
            }
        }
    }
    for x in entries {
        for y in entries {
            let j = join(x.0, y.0).unwrap();
            let m = meet(x.0, y.0).unwrap();
            if j.1 + m.1 + bits((x.0 & y.0) & !m.0) > x.1 + y.1 {
                return Some(3);
            }
        }
    }
    None
}

/// The family member containing `set` that lies inside every other one.
pub fn least_above(entries: &[(u64, usize)], set: u64) -> Option<(u64, usize)> {
    let above: Vec<_> = entries.iter().filter(|e| set & !e.0 == 0).collect();
    above.iter().find(|c| above.iter().all(|d| c.0 & !d.0 == 0)).map(|c| **c)
}

pub fn greatest_below(entries: &[(u64, usize)], set: u64) -> Option<(u64, usize)> {
    let below: Vec<_> = entries.iter().filter(|e| e.0 & !set == 0).collect();
    below.iter().find(|c| below.iter().all(|d| d.0 & !c.0 == 0)).map(|c| **c)
}

pub fn raw(family: &RankedFamily) -> Vec<(u64, usize)> {
    family.entries().iter().map(|&(s, r)| (s.bits(), r)).collect()
}

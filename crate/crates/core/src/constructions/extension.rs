use super::realize_labeled_lattice;
use crate::error::{Error, Result};
use crate::lattice::{glue_transitive_closure, FiniteLattice, Insert};
use crate::matroid::Matroid;

/// A base lattice `L` with atoms `a_1..a_m` meeting pairwise in `b`, the
/// interval isomorphisms `τ_{m,i}: [0, a_m] -> [0, a_i]`, and lattices
/// `L_1..L_n` to be inserted above `a_{s(j)}` (for `L_s`) or `a_{t(j)}`
/// (for `L_t`). All indices are 0-based: `s[j]` and `t[j]` index `atoms`.
#[derive(Clone, Debug)]
pub struct LatticeExtensionSpec {
    pub base: FiniteLattice,
    pub atoms: Vec<usize>,
    pub b: usize,
    /// `taus[i]` lists the pairs `(y, τ_{m,i}(y))` for `i < m - 1`.
    pub taus: Vec<Vec<(usize, usize)>>,
    pub inserts: Vec<FiniteLattice>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

fn bad(msg: String) -> Error {
    Error::Construction(msg)
}

impl LatticeExtensionSpec {
    /// Checks the meet condition, that each `τ` is an order isomorphism
    /// onto its interval fixing `[0, b]`, and the shapes of `s` and `t`.
    pub fn validate(&self) -> Result<()> {
        let l = &self.base;
        let size = l.size();
        let m = self.atoms.len();
        if m == 0 {
            return Err(bad("at least one atom is needed".into()));
        }
        for &a in self.atoms.iter().chain([&self.b]) {
            if a >= size {
                return Err(bad(format!("element {a} is outside the base lattice of {size}")));
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let (ai, aj) = (self.atoms[i], self.atoms[j]);
                if ai == aj {
                    return Err(bad(format!("atom {ai} is listed twice")));
                }
                let meet = l.meet(ai, aj);
                if meet != self.b {
                    return Err(bad(format!(
                        "atoms {ai} and {aj} meet in {meet}, not in b = {}",
                        self.b
                    )));
                }
            }
        }
        if self.taus.len() != m - 1 {
            return Err(bad(format!("{} maps given for {} atoms", self.taus.len(), m)));
        }
        let am = self.atoms[m - 1];
        let domain = l.interval(l.bottom(), am);
        for (i, tau) in self.taus.iter().enumerate() {
            self.check_tau(i, tau, &domain)?;
        }
        if self.s.len() != self.inserts.len() || self.t.len() != self.inserts.len() {
            return Err(bad(format!(
                "s has {} and t has {} entries for {} inserts",
                self.s.len(),
                self.t.len(),
                self.inserts.len()
            )));
        }
        for &k in self.s.iter().chain(&self.t) {
            if k >= m {
                return Err(bad(format!("assignment {k} is not an atom index below {m}")));
            }
        }
        for (j, ins) in self.inserts.iter().enumerate() {
            if ins.size() < 2 {
                return Err(bad(format!("insert {j} has a single element")));
            }
        }
        Ok(())
    }

    fn check_tau(&self, i: usize, tau: &[(usize, usize)], domain: &[usize]) -> Result<()> {
        let l = &self.base;
        let ai = self.atoms[i];
        let target = l.interval(l.bottom(), ai);
        let mut map = vec![None; l.size()];
        for &(y, z) in tau {
            if !domain.contains(&y) {
                return Err(bad(format!("map {i}: {y} is not below a_m")));
            }
            if !target.contains(&z) {
                return Err(bad(format!("map {i}: image {z} of {y} is not below a_{i}")));
            }
            if map[y].replace(z).is_some() {
                return Err(bad(format!("map {i}: {y} has two images")));
            }
        }
        if let Some(&y) = domain.iter().find(|&&y| map[y].is_none()) {
            return Err(bad(format!("map {i}: {y} has no image")));
        }
        let mut images: Vec<usize> = tau.iter().map(|p| p.1).collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != target.len() {
            return Err(bad(format!("map {i} is not onto the interval below {ai}")));
        }
        for &y in domain {
            let ty = map[y].expect("checked above");
            if l.leq(y, self.b) && ty != y {
                return Err(bad(format!("map {i} moves {y}, which lies below b")));
            }
            for &z in domain {
                let tz = map[z].expect("checked above");
                if l.leq(y, z) != l.leq(ty, tz) {
                    return Err(bad(format!(
                        "map {i} does not preserve the order between {y} and {z}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn glue(&self, assignment: &[usize]) -> Result<FiniteLattice> {
        let inserts: Vec<Insert> = self
            .inserts
            .iter()
            .zip(assignment)
            .map(|(lattice, &k)| Insert {
                lattice: lattice.clone(),
                bottom_target: self.atoms[k],
                top_target: self.base.top(),
            })
            .collect();
        Ok(glue_transitive_closure(&self.base, &inserts)?.lattice)
    }
}

/// `(L_s, L_t)`. Both have the elements of the base followed by the
/// interiors of the inserts in order.
pub fn build_lattice_extension(
    spec: &LatticeExtensionSpec,
) -> Result<(FiniteLattice, FiniteLattice)> {
    spec.validate()?;
    Ok((spec.glue(&spec.s)?, spec.glue(&spec.t)?))
}

/// Realizes `L_s` and `L_t` with the same size and rank labels (indexed
/// by the shared elements) by block realization. The labels must agree
/// across each `τ`; the two families must pass Z0–Z3.
pub fn realize_extension_pair(
    spec: &LatticeExtensionSpec,
    sizes: &[usize],
    ranks: &[usize],
) -> Result<(Matroid, Matroid)> {
    let (ls, lt) = build_lattice_extension(spec)?;
    if sizes.len() != ls.size() || ranks.len() != ls.size() {
        return Err(bad(format!(
            "{} size and {} rank labels for {} elements",
            sizes.len(),
            ranks.len(),
            ls.size()
        )));
    }
    for (i, tau) in spec.taus.iter().enumerate() {
        for &(y, z) in tau {
            if (sizes[y], ranks[y]) != (sizes[z], ranks[z]) {
                return Err(bad(format!(
                    "labels ({}, {}) of {y} and ({}, {}) of its image {z} under map {i} differ",
                    sizes[y], ranks[y], sizes[z], ranks[z]
                )));
            }
        }
    }
    let (ms, _) = realize_labeled_lattice(&ls, sizes, ranks)?;
    let (mt, _) = realize_labeled_lattice(&lt, sizes, ranks)?;
    Ok((ms, mt))
}

use super::{FiniteLattice, LatticeError};

/// A lattice to be inserted into an interval of a base lattice: its bottom is
/// identified with `bottom_target` and its top with `top_target`.
#[derive(Clone, Debug)]
pub struct Insert {
    pub lattice: FiniteLattice,
    pub bottom_target: usize,
    pub top_target: usize,
}

/// Result of [`glue_transitive_closure`].
#[derive(Clone, Debug)]
pub struct Glued {
    pub lattice: FiniteLattice,
    /// For each insert, the index in the glued lattice of each of its
    /// elements (bottom and top map to their targets).
    pub insert_maps: Vec<Vec<usize>>,
}

/// Glues each insert into the base lattice and takes the transitive closure
/// of the union of the order relations.
///
/// Base elements keep their indices; the interior elements of the inserts
/// follow in insert order, so the element set depends only on the shapes of
/// the inserts and not on their targets. The result is checked to be a
/// lattice.
pub fn glue_transitive_closure(
    base: &FiniteLattice,
    inserts: &[Insert],
) -> Result<Glued, LatticeError> {
    let mut size = base.size();
    let mut insert_maps = Vec::with_capacity(inserts.len());
    for ins in inserts {
        for target in [ins.bottom_target, ins.top_target] {
            if target >= base.size() {
                return Err(LatticeError::OutOfRange {
                    element: target,
                    size: base.size(),
                });
            }
        }
        let l = &ins.lattice;
        let mut map = vec![0; l.size()];
        for &x in l.linear_extension() {
            map[x] = if x == l.bottom() {
                ins.bottom_target
            } else if x == l.top() {
                ins.top_target
            } else {
                size += 1;
                size - 1
            };
        }
        insert_maps.push(map);
    }

    let mut pairs: Vec<(usize, usize)> = base.covers();
    for (ins, map) in inserts.iter().zip(&insert_maps) {
        pairs.extend(ins.lattice.covers().into_iter().map(|(x, y)| (map[x], map[y])));
    }
    let lattice = FiniteLattice::from_relation(size, pairs)?;
    Ok(Glued {
        lattice,
        insert_maps,
    })
}

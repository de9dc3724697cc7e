//! The Tutte polynomial `T(M; x, y) = Σ_A (x-1)^{r(M)-r(A)} (y-1)^{|A|-r(A)}`.
//!
//! Only the numbers of subsets of each rank and size matter. The main route
//! gets those from the lattice of flats: the subsets of a flat `F` of size
//! `s` are split by their closure, so the number spanning `F` is
//! `C(|F|, s)` minus the counts already assigned to flats below `F`. The
//! literal route runs over all `2^n` subsets and is kept for small `n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{binomial, ElementSet};

/// Largest ground set for [`tutte_subset_sum`].
pub const SUBSET_SUM_LIMIT: usize = 20;

/// A polynomial in `x` and `y` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    /// `(i, j) -> c` for the term `c x^i y^j`; no zero coefficients.
    terms: BTreeMap<(usize, usize), i128>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), i128)>) -> Self {
        let mut p = Polynomial::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: i128) {
        let slot = self.terms.entry((i, j)).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coefficient(&self, i: usize, j: usize) -> i128 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), i128> {
        &self.terms
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * x.pow(i as u32) * y.pow(j as u32))
            .sum()
    }
}

fn monomial(f: &mut fmt::Formatter<'_>, var: &str, power: usize) -> fmt::Result {
    match power {
        0 => Ok(()),
        1 => f.write_str(var),
        p => write!(f, "{var}^{p}"),
    }
}

/// Terms by descending power of `x`, ties by descending power of `y`, e.g.
/// `x^2 + 2x + y^2 + 2y`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(i, j), &c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if magnitude != 1 || (i == 0 && j == 0) {
                write!(f, "{magnitude}")?;
            }
            monomial(f, "x", i)?;
            monomial(f, "y", j)?;
        }
        Ok(())
    }
}

/// `counts[k][s]`: number of subsets of rank `k` and size `s`.
fn polynomial_from_counts(rank: usize, counts: &[Vec<u128>]) -> Result<Polynomial> {
    let mut p = Polynomial::zero();
    for (k, row) in counts.iter().enumerate() {
        for (s, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = i128::try_from(c).map_err(|_| Error::Overflow("Tutte polynomial"))?;
            // c (x-1)^a (y-1)^b expanded by the binomial theorem.
            let (a, b) = (rank - k, s - k);
            for i in 0..=a {
                let ci = binomial(a, i).ok_or(Error::Overflow("Tutte polynomial"))? as i128
                    * if (a - i) % 2 == 0 { 1 } else { -1 };
                for j in 0..=b {
                    let cj = binomial(b, j).ok_or(Error::Overflow("Tutte polynomial"))? as i128
                        * if (b - j) % 2 == 0 { 1 } else { -1 };
                    let term = c
                        .checked_mul(ci)
                        .and_then(|t| t.checked_mul(cj))
                        .ok_or(Error::Overflow("Tutte polynomial"))?;
                    p.add_term(i, j, term);
                }
            }
        }
    }
    Ok(p)
}

/// Rank-size counts grouped by closure.
pub fn rank_size_counts(m: &Matroid) -> Result<Vec<Vec<u128>>> {
    let n = m.n();
    let levels = m.flats();
    let flats: Vec<(ElementSet, usize)> = levels
        .iter()
        .enumerate()
        .flat_map(|(k, level)| level.iter().map(move |&f| (f, k)))
        .collect();
    // spanning[i][s]: subsets of size s whose closure is flats[i]. Flats
    // come in rank order, so everything below flats[i] is already done.
    let mut spanning: Vec<Vec<u128>> = Vec::with_capacity(flats.len());
    let mut counts = vec![vec![0u128; n + 1]; m.rank() + 1];
    for (i, &(f, k)) in flats.iter().enumerate() {
        let mut row: Vec<u128> = (0..=n)
            .map(|s| binomial(f.len(), s).ok_or(Error::Overflow("binomial")))
            .collect::<Result<_>>()?;
        for (g, below) in flats[..i].iter().zip(&spanning) {
            if g.0.is_proper_subset(f) {
                for (r, b) in row.iter_mut().zip(below) {
                    *r -= b;
                }
            }
        }
        for (s, &c) in row.iter().enumerate() {
            counts[k][s] += c;
        }
        spanning.push(row);
    }
    Ok(counts)
}

/// The Tutte polynomial, with subsets grouped by their closure.
pub fn tutte(m: &Matroid) -> Result<Polynomial> {
    polynomial_from_counts(m.rank(), &rank_size_counts(m)?)
}

/// The Tutte polynomial by running over every subset; `n <= 20`.
pub fn tutte_subset_sum(m: &Matroid) -> Result<Polynomial> {
    let n = m.n();
    if n > SUBSET_SUM_LIMIT {
        return Err(Error::TooLarge {
            what: "subset-sum Tutte polynomial",
            n,
            limit: SUBSET_SUM_LIMIT,
        });
    }
    let mut counts = vec![vec![0u128; n + 1]; m.rank() + 1];
    for a in m.ground().subsets() {
        counts[m.rank_of(a)][a.len()] += 1;
    }
    polynomial_from_counts(m.rank(), &counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn uniform_rank_two_on_four() {
        let t = tutte(&Matroid::uniform(2, 4).unwrap()).unwrap();
        assert_eq!(t.to_string(), "x^2 + 2x + y^2 + 2y");
        assert_eq!(t, tutte_subset_sum(&Matroid::uniform(2, 4).unwrap()).unwrap());
    }

    #[test]
    fn evaluations_count_subsets_and_bases() {
        let m = fixtures::fig1_m();
        let t = tutte(&m).unwrap();
        assert_eq!(t.eval(2, 2), 256);
        let bases = m
            .ground()
            .subsets_of_size(3)
            .filter(|&b| m.is_independent(b))
            .count() as i128;
        assert_eq!(t.eval(1, 1), bases);
        assert_eq!(t, tutte_subset_sum(&m).unwrap());
        assert_eq!(t, tutte(&fixtures::fig1_n()).unwrap());
    }

    #[test]
    fn display_signs_and_constants() {
        let p = Polynomial::from_terms([((0, 0), -3), ((1, 0), 1), ((0, 2), -1)]);
        assert_eq!(p.to_string(), "x - y^2 - 3");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_terms([((0, 0), 1)]).to_string(), "1");
    }
}

//! The two 8-element rank-3 matroids used throughout the tests and docs.
//!
//! Both are given by their cyclic flats. Elements are numbered `0..8`; in
//! the usual drawing they are labeled `1..8`, so `{1,2}` there is
//! `{0,1}` here.

use crate::matroid::Matroid;
use crate::zfl::RankedFamily;

/// Cyclic flats of `M`: `{1,2}`, `{7,8}` at rank 1 and `{1,2,3,4}`,
/// `{1,2,7,8}`, `{5,6,7,8}` at rank 2 (1-based labels).
pub fn fig1_m_family() -> RankedFamily {
    RankedFamily::from_lists(
        8,
        &[
            (&[], 0),
            (&[0, 1], 1),
            (&[6, 7], 1),
            (&[0, 1, 2, 3], 2),
            (&[0, 1, 6, 7], 2),
            (&[4, 5, 6, 7], 2),
            (&[0, 1, 2, 3, 4, 5, 6, 7], 3),
        ],
    )
    .expect("fixture is in range")
}

/// Cyclic flats of `N`: as for `M` but with `{1,2,5,6}` in place of
/// `{5,6,7,8}`.
pub fn fig1_n_family() -> RankedFamily {
    RankedFamily::from_lists(
        8,
        &[
            (&[], 0),
            (&[0, 1], 1),
            (&[6, 7], 1),
            (&[0, 1, 2, 3], 2),
            (&[0, 1, 6, 7], 2),
            (&[0, 1, 4, 5], 2),
            (&[0, 1, 2, 3, 4, 5, 6, 7], 3),
        ],
    )
    .expect("fixture is in range")
}

pub fn fig1_m() -> Matroid {
    Matroid::from_cyclic_flats(&fig1_m_family()).expect("fixture is valid")
}

pub fn fig1_n() -> Matroid {
    Matroid::from_cyclic_flats(&fig1_n_family()).expect("fixture is valid")
}

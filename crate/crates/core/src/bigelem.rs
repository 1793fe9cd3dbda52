//! Late swapping for large elements: sort position handles, then move each
//! element once along the cycles of the resulting permutation.

use std::cmp::Ordering;
use std::mem::size_of;

use crate::instrument::SortStats;
use crate::sorter::{SortConfig, SortError, Sorter};

/// `map[i]` is the position the element that belongs at `i` starts from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a bijection on 0..{0}")]
pub struct NotAPermutation(pub usize);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, NotAPermutation> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &k in &map {
            if k >= n || std::mem::replace(&mut seen[k], true) {
                return Err(NotAPermutation(n));
            }
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &k)| i == k)
    }

    /// Number of cycles longer than one.
    pub fn nontrivial_cycles(&self) -> usize {
        let mut seen = vec![false; self.map.len()];
        let mut count = 0;
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            count += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.map[j];
            }
        }
        count
    }
}

/// Sorts position handles into `v` with the main sorter and returns the
/// permutation that would sort `v`. `v` itself is not touched.
pub fn sort_indirect<T, F>(
    v: &[T],
    mut cmp: F,
    config: &SortConfig,
) -> Result<(Permutation, SortStats), SortError>
where
    F: FnMut(&T, &T) -> Ordering,
{
    let n = v.len();
    let mut handles = Vec::new();
    handles
        .try_reserve_exact(n)
        .map_err(|_| SortError::Allocation(n))?;
    handles.extend(0..n);
    let stats = Sorter::new(config.clone())?
        .sort_by(&mut handles, |x: &usize, y: &usize| cmp(&v[*x], &v[*y]))?;
    Ok((Permutation { map: handles }, stats))
}

/// Rearranges `v` so that `v[i]` becomes the old `v[perm.map[i]]`.
///
/// Every cycle of length `k > 1` costs `k + 1` element moves (one element is
/// lifted out, the rest shift along the cycle, the lifted one lands last);
/// fixed points cost nothing. Returns the number of moves.
pub fn apply_permutation<T: Clone>(v: &mut [T], perm: Permutation) -> u64 {
    let mut map = perm.map;
    assert_eq!(
        map.len(),
        v.len(),
        "permutation length differs from array length"
    );
    let mut moves = 0;
    for start in 0..map.len() {
        if map[start] == start {
            continue;
        }
        let lifted = v[start].clone();
        moves += 1;
        let mut j = start;
        loop {
            let k = map[j];
            map[j] = j;
            if k == start {
                v[j] = lifted;
                moves += 1;
                break;
            }
            v[j] = v[k].clone();
            moves += 1;
            j = k;
        }
    }
    moves
}

/// Result of [`sort_large`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeSortStats {
    /// Counts of the sort itself (over handles when late swapping was used).
    pub sort: SortStats,
    /// Element moves spent applying the permutation; zero when sorted directly.
    pub moves: u64,
    pub late_swapped: bool,
}

/// Sorts `v`, going through position handles when `T` is at least
/// `config.late_swap_byte_threshold` bytes.
pub fn sort_large<T, F>(
    v: &mut [T],
    cmp: F,
    config: &SortConfig,
) -> Result<LargeSortStats, SortError>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    if size_of::<T>() >= config.late_swap_byte_threshold {
        let (perm, sort) = sort_indirect(v, cmp, config)?;
        let moves = apply_permutation(v, perm);
        Ok(LargeSortStats {
            sort,
            moves,
            late_swapped: true,
        })
    } else {
        let sort = Sorter::new(config.clone())?.sort_by(v, cmp)?;
        Ok(LargeSortStats {
            sort,
            moves: 0,
            late_swapped: false,
        })
    }
}

//! Exhaustive, deterministic generation of chord diagrams.
//!
//! Order: the smallest undecided point is settled first; it is tried as free
//! before being paired, and partners are tried in ascending order. For `k = 3`
//! this yields `{}`, `{2-3}`, `{1-2}`, `{1-3}`.
//!
//! The space splits into independent partitions by the choice made for the
//! first point. [`par_enumerate`] runs the partitions on the rayon pool and merges them
//! by sorting on the text encoding, so its output does not depend on the
//! schedule.

use rayon::prelude::*;

use crate::classify;
use crate::diagram::{ChordDiagram, Sign};

/// What happens to point 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FirstChoice {
    Free,
    PairedWith(usize),
}

/// Which base colours to emit for every pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Colorings {
    #[default]
    Positive,
    /// `pos` then `neg` for every pairing.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Open,
    Free,
    Paired(usize),
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    point: usize,
    choice: FirstChoice,
}

/// Lazy iterator over partial pairings of `{1..k}`.
#[derive(Clone, Debug)]
pub struct Pairings {
    k: usize,
    target: Option<usize>,
    pinned: Option<FirstChoice>,
    slots: Vec<Slot>,
    stack: Vec<Frame>,
    open: usize,
    chords: usize,
    started: bool,
    done: bool,
}

impl Pairings {
    /// All partial pairings, or only those with exactly `n_chords` pairs.
    pub fn new(k: usize, n_chords: Option<usize>) -> Self {
        Self::build(k, n_chords, None)
    }

    /// The partition of the space where point 1 makes the given choice.
    pub fn partition(k: usize, n_chords: Option<usize>, first: FirstChoice) -> Self {
        Self::build(k, n_chords, Some(first))
    }

    fn build(k: usize, target: Option<usize>, pinned: Option<FirstChoice>) -> Self {
        let infeasible = k == 0
            || target.is_some_and(|t| 2 * t > k)
            || matches!(pinned, Some(FirstChoice::PairedWith(j)) if j < 2 || j > k);
        Pairings {
            k,
            target,
            pinned,
            slots: vec![Slot::Open; k + 1],
            stack: Vec::with_capacity(k),
            open: k,
            chords: 0,
            started: false,
            done: infeasible,
        }
    }

    fn feasible(&self, choice: FirstChoice) -> bool {
        let Some(target) = self.target else {
            return true;
        };
        let (chords, open) = match choice {
            FirstChoice::Free => (self.chords, self.open - 1),
            FirstChoice::PairedWith(_) => (self.chords + 1, self.open - 2),
        };
        chords <= target && target <= chords + open / 2
    }

    fn apply(&mut self, frame: Frame) {
        match frame.choice {
            FirstChoice::Free => {
                self.slots[frame.point] = Slot::Free;
                self.open -= 1;
            }
            FirstChoice::PairedWith(j) => {
                self.slots[frame.point] = Slot::Paired(j);
                self.slots[j] = Slot::Paired(frame.point);
                self.open -= 2;
                self.chords += 1;
            }
        }
        self.stack.push(frame);
    }

    fn undo(&mut self) -> Option<Frame> {
        let frame = self.stack.pop()?;
        match frame.choice {
            FirstChoice::Free => {
                self.open += 1;
            }
            FirstChoice::PairedWith(j) => {
                self.slots[j] = Slot::Open;
                self.open += 2;
                self.chords -= 1;
            }
        }
        self.slots[frame.point] = Slot::Open;
        Some(frame)
    }

    /// First feasible choice for `point` strictly after `after` in the
    /// generation order (`None` means start from the beginning).
    fn next_choice(&self, point: usize, after: Option<FirstChoice>) -> Option<FirstChoice> {
        if point == 1 {
            if let Some(pinned) = self.pinned {
                return match after {
                    None if self.feasible(pinned) => Some(pinned),
                    _ => None,
                };
            }
        }
        let first_partner = match after {
            None => {
                if self.feasible(FirstChoice::Free) {
                    return Some(FirstChoice::Free);
                }
                point + 1
            }
            Some(FirstChoice::Free) => point + 1,
            Some(FirstChoice::PairedWith(j)) => j + 1,
        };
        (first_partner..=self.k)
            .filter(|&j| self.slots[j] == Slot::Open)
            .map(FirstChoice::PairedWith)
            .find(|&c| self.feasible(c))
    }

    /// Settles open points greedily; false on a dead end.
    fn descend(&mut self) -> bool {
        while let Some(point) = (1..=self.k).find(|&i| self.slots[i] == Slot::Open) {
            match self.next_choice(point, None) {
                Some(choice) => self.apply(Frame { point, choice }),
                None => return false,
            }
        }
        true
    }

    /// Moves to the next sibling of the deepest frame that has one.
    fn advance(&mut self) -> bool {
        while let Some(frame) = self.undo() {
            if let Some(choice) = self.next_choice(frame.point, Some(frame.choice)) {
                self.apply(Frame {
                    point: frame.point,
                    choice,
                });
                return true;
            }
        }
        false
    }

    fn current(&self) -> Vec<(usize, usize)> {
        self.stack
            .iter()
            .filter_map(|f| match f.choice {
                FirstChoice::PairedWith(j) => Some((f.point, j)),
                FirstChoice::Free => None,
            })
            .collect()
    }
}

impl Iterator for Pairings {
    /// Chords of one pairing, each ascending, listed by smaller endpoint.
    type Item = Vec<(usize, usize)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut ok = if self.started {
            self.advance() && self.descend()
        } else {
            self.started = true;
            self.descend()
        };
        loop {
            if ok {
                let mut chords = self.current();
                chords.sort_unstable();
                return Some(chords);
            }
            if !self.advance() {
                self.done = true;
                return None;
            }
            ok = self.descend();
        }
    }
}

fn with_colorings(
    k: usize,
    pairings: Pairings,
    colorings: Colorings,
) -> impl Iterator<Item = ChordDiagram> {
    let bases: &'static [Sign] = match colorings {
        Colorings::Positive => &[Sign::Pos],
        Colorings::Both => &[Sign::Pos, Sign::Neg],
    };
    pairings.flat_map(move |chords| {
        bases.iter().map(move |&base| {
            ChordDiagram::new(k, chords.iter().copied(), base).expect("generated pairing is valid")
        })
    })
}

/// Every diagram with parameter `k` (optionally with exactly `n_chords`
/// chords), once each, in the documented order.
pub fn enumerate_diagrams(
    k: usize,
    n_chords: Option<usize>,
    colorings: Colorings,
) -> impl Iterator<Item = ChordDiagram> {
    with_colorings(k, Pairings::new(k, n_chords), colorings)
}

/// The partitions of the search space, in generation order.
pub fn partitions(k: usize) -> Vec<FirstChoice> {
    if k == 0 {
        return Vec::new();
    }
    std::iter::once(FirstChoice::Free)
        .chain((2..=k).map(FirstChoice::PairedWith))
        .collect()
}

pub fn enumerate_partition(
    k: usize,
    n_chords: Option<usize>,
    first: FirstChoice,
    colorings: Colorings,
) -> impl Iterator<Item = ChordDiagram> {
    with_colorings(k, Pairings::partition(k, n_chords, first), colorings)
}

/// Parallel enumeration with a filter, merged deterministically by encoding.
pub fn par_enumerate<F>(
    k: usize,
    n_chords: Option<usize>,
    colorings: Colorings,
    keep: F,
) -> Vec<ChordDiagram>
where
    F: Fn(&ChordDiagram) -> bool + Sync,
{
    let mut out: Vec<(String, ChordDiagram)> = partitions(k)
        .into_par_iter()
        .flat_map_iter(|first| {
            enumerate_partition(k, n_chords, first, colorings)
                .filter(|d| keep(d))
                .map(|d| (d.encode(), d))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, d)| d).collect()
}

/// The `k` and chord count of diagrams that can carry an optimal function.
///
/// Oriented genus `g`: `k = 4g + 1` with `2g` chords. Non-oriented
/// generator profile: `k = 4g + 3` with `2g + 1` chords.
pub fn optimal_profile(genus: usize, orientable: bool) -> (usize, usize) {
    if orientable {
        (4 * genus + 1, 2 * genus)
    } else {
        (4 * genus + 3, 2 * genus + 1)
    }
}

/// Cheap syntactic filters applied before any surface is built.
pub fn passes_candidate_filters(d: &ChordDiagram, orientable: bool) -> bool {
    if d.free_points().len() != 2 || classify::forbidden_pair_present(d) {
        return false;
    }
    !orientable || (classify::chord_parity_ok(d) && classify::free_points_odd_ok(d))
}

/// Diagrams of the optimal profile for `(genus, orientable)` that survive the
/// cheap filters. Base colour is positive.
pub fn enumerate_optimal_candidates(
    genus: usize,
    orientable: bool,
) -> impl Iterator<Item = ChordDiagram> {
    let (k, chords) = optimal_profile(genus, orientable);
    enumerate_diagrams(k, Some(chords), Colorings::Positive)
        .filter(move |d| passes_candidate_filters(d, orientable))
}

/// One partition of [`enumerate_optimal_candidates`].
pub fn optimal_candidates_in(
    genus: usize,
    orientable: bool,
    first: FirstChoice,
) -> impl Iterator<Item = ChordDiagram> {
    let (k, chords) = optimal_profile(genus, orientable);
    enumerate_partition(k, Some(chords), first, Colorings::Positive)
        .filter(move |d| passes_candidate_filters(d, orientable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn chords_of(k: usize, n: Option<usize>) -> Vec<Vec<(usize, usize)>> {
        Pairings::new(k, n).collect()
    }

    #[test]
    fn k3_listing_in_order() {
        assert_eq!(
            chords_of(3, None),
            vec![vec![], vec![(2, 3)], vec![(1, 2)], vec![(1, 3)]]
        );
    }

    #[test]
    fn k1_single_empty() {
        assert_eq!(chords_of(1, None), vec![Vec::<(usize, usize)>::new()]);
    }

    #[test]
    fn k5_two_chords() {
        // C(5,4) * 3 perfect matchings on four points
        assert_eq!(chords_of(5, Some(2)).len(), 15);
    }

    #[test]
    fn exact_chord_counts_sum_to_total() {
        for k in 1..=9 {
            let total = chords_of(k, None).len();
            let by_count: usize = (0..=k / 2).map(|c| chords_of(k, Some(c)).len()).sum();
            assert_eq!(total, by_count);
            assert!(chords_of(k, Some(k / 2 + 1)).is_empty());
        }
    }

    #[test]
    fn partitions_cover_space_without_overlap() {
        for k in 1..=8 {
            let full: Vec<_> = chords_of(k, None);
            let mut merged = Vec::new();
            for first in partitions(k) {
                merged.extend(Pairings::partition(k, None, first));
            }
            assert_eq!(merged, full, "partitions concatenate to the full order");
        }
    }

    #[test]
    fn both_colorings_doubles() {
        let both: Vec<_> = enumerate_diagrams(4, None, Colorings::Both).collect();
        assert_eq!(both.len(), 20);
        let set: HashSet<_> = both.iter().map(|d| d.encode()).collect();
        assert_eq!(set.len(), 20);
    }

    #[test]
    fn early_stop_is_cheap() {
        let first = enumerate_diagrams(40, None, Colorings::Positive)
            .next()
            .unwrap();
        assert_eq!(first.chord_count(), 0);
    }

    #[test]
    fn par_enumerate_is_sorted_and_complete() {
        let par = par_enumerate(7, None, Colorings::Positive, |_| true);
        assert_eq!(par.len(), 232);
        assert!(par.windows(2).all(|w| w[0].encode() < w[1].encode()));
    }

    #[test]
    fn genus_one_candidates() {
        let cands: Vec<String> = enumerate_optimal_candidates(1, true)
            .map(|d| d.encode())
            .collect();
        assert!(cands.contains(&"k=5;chords=1-4,2-5;base=pos".to_string()));
        assert!(!cands.contains(&"k=5;chords=2-5,3-4;base=pos".to_string()));
    }

    #[test]
    fn genus_three_space() {
        // 13 * 11!! six-chord pairings of thirteen points
        assert_eq!(Pairings::new(13, Some(6)).count(), 135135);
    }
}

//! Exact distinguishing-number search plus an independent brute-force oracle.
//!
//! The search deepens on the number of colors `r = 1, 2, …` and backtracks
//! over points (orbit by orbit, largest orbit first). It maintains the set of
//! "live" forbidden elements incrementally (an element stays live while it is
//! consistent with the partial coloring) and rejects a leaf iff a forbidden
//! element survives the full assignment. Color-relabeling symmetry is broken
//! by fixing the first
//! point's color to 1. The oracle shares no code with the search: it
//! enumerates every coloring and filters preservers directly.

use crate::action::GroupAction;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// Caps that keep exact search at desk scale. Exceeding a cap yields
/// [`Error::Exceeded`], never a silently truncated answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_colors: usize,
    pub max_points: usize,
    pub max_group: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_colors: 16,
            max_points: 16,
            max_group: 100_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub colorings_tested: u64,
}

/// An exact distinguishing number with a verifying witness.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub value: usize,
    pub witness: Coloring,
    pub stats: SearchStats,
}

/// Per-level limit for the oracle's full enumeration.
const ORACLE_COLORING_LIMIT: u128 = 100_000_000;

fn require_faithful(a: &GroupAction) -> Result<()> {
    if !a.is_faithful() {
        return Err(Error::NotFaithful {
            kernel_order: a.kernel().order(),
        });
    }
    Ok(())
}

/// Points ordered orbit by orbit, largest orbit first (ties by least point),
/// ascending within each orbit.
fn search_point_order(a: &GroupAction) -> Vec<usize> {
    let mut orbits = a.orbits().orbits().to_vec();
    orbits.sort_by_key(|o| (std::cmp::Reverse(o.len()), o[0]));
    orbits.into_iter().flatten().collect()
}

struct Engine<'a> {
    action: &'a GroupAction,
    point_order: Vec<usize>,
    /// Forbidden element indices (never the identity).
    forbidden: Vec<u32>,
    /// Flattened point images and preimages per forbidden element.
    img: Vec<u32>,
    preimg: Vec<u32>,
    stats: SearchStats,
}

impl<'a> Engine<'a> {
    /// `target` is the subgroup the preservers are allowed to land in; the
    /// forbidden elements are everything outside it.
    fn new(a: &'a GroupAction, target: &PermGroup) -> Engine<'a> {
        let m = a.point_count();
        let forbidden: Vec<u32> = a
            .group()
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, e)| !target.contains(e))
            .map(|(i, _)| i as u32)
            .collect();
        let mut img = vec![0u32; forbidden.len() * m];
        let mut preimg = vec![0u32; forbidden.len() * m];
        for (row, &g) in forbidden.iter().enumerate() {
            let perm = a.image_of(g as usize);
            let inv = perm.inverse();
            for x in 0..m {
                img[row * m + x] = perm.image(x) as u32;
                preimg[row * m + x] = inv.image(x) as u32;
            }
        }
        Engine {
            action: a,
            point_order: search_point_order(a),
            forbidden: (0..forbidden.len() as u32).collect(),
            img,
            preimg,
            stats: SearchStats::default(),
        }
    }

    fn search(&mut self, r: usize) -> Option<Coloring> {
        if r == 0 {
            return None;
        }
        let m = self.action.point_count();
        let mut colors = vec![0usize; m];
        let mut live: Vec<u32> = self.forbidden.clone();
        let mut live_len = live.len();
        if self.dfs(0, r, &mut colors, &mut live, &mut live_len) {
            self.stats.colorings_tested += 1;
            return Some(Coloring::new(r, colors).expect("colors in range"));
        }
        None
    }

    fn dfs(
        &mut self,
        pos: usize,
        r: usize,
        colors: &mut Vec<usize>,
        live: &mut Vec<u32>,
        live_len: &mut usize,
    ) -> bool {
        let m = self.action.point_count();
        if *live_len == 0 {
            // No forbidden element can come back to life; the canonical
            // completion colors every remaining point 1.
            for &x in &self.point_order[pos..] {
                colors[x] = 1;
            }
            return true;
        }
        if pos == m {
            // Some forbidden element preserved the entire assignment.
            self.stats.colorings_tested += 1;
            return false;
        }
        let x = self.point_order[pos];
        // Color relabeling keeps the preserver subgroup fixed, so the first
        // point can be pinned to color 1.
        let color_limit = if pos == 0 { 1 } else { r };
        for c in 1..=color_limit {
            self.stats.nodes += 1;
            let saved = *live_len;
            colors[x] = c;
            let mut p = 0;
            while p < *live_len {
                let row = live[p] as usize;
                let y = self.img[row * m + x] as usize;
                let z = self.preimg[row * m + x] as usize;
                let dead = (colors[y] != 0 && colors[y] != c)
                    || (colors[z] != 0 && colors[z] != c);
                if dead {
                    *live_len -= 1;
                    live.swap(p, *live_len);
                } else {
                    p += 1;
                }
            }
            if self.dfs(pos + 1, r, colors, live, live_len) {
                return true;
            }
            colors[x] = 0;
            *live_len = saved;
        }
        false
    }
}

fn check_budget(a: &GroupAction, budget: &SearchBudget) -> Result<()> {
    if a.point_count() > budget.max_points {
        return Err(Error::Exceeded(format!(
            "{} points exceeds the cap of {}",
            a.point_count(),
            budget.max_points
        )));
    }
    if a.group().order() > budget.max_group {
        return Err(Error::Exceeded(format!(
            "group order {} exceeds the cap of {}",
            a.group().order(),
            budget.max_group
        )));
    }
    Ok(())
}

/// The exact distinguishing number of a faithful action, with a witness
/// coloring and search statistics. Iterative deepening on `r` guarantees
/// minimality; running out of colors within the budget is `Exceeded`.
pub fn distinguishing_number(a: &GroupAction, budget: &SearchBudget) -> Result<SearchResult> {
    require_faithful(a)?;
    check_budget(a, budget)?;
    let trivial = PermGroup::trivial(a.group().degree());
    let mut engine = Engine::new(a, &trivial);
    for r in 1..=budget.max_colors {
        if let Some(witness) = engine.search(r) {
            return Ok(SearchResult {
                value: r,
                witness,
                stats: engine.stats,
            });
        }
    }
    Err(Error::Exceeded(format!(
        "no distinguishing coloring with at most {} colors",
        budget.max_colors
    )))
}

/// A distinguishing `r`-coloring, or `None` if none exists. The witness is
/// the first one found by the deterministic search (least in the search
/// order's lexicographic sense).
pub fn find_distinguishing_coloring(a: &GroupAction, r: usize) -> Result<Option<Coloring>> {
    require_faithful(a)?;
    let trivial = PermGroup::trivial(a.group().degree());
    Ok(Engine::new(a, &trivial).search(r))
}

/// An `r`-coloring whose preserver subgroup lies inside `h`, or `None`.
/// With `h` trivial this is exactly `find_distinguishing_coloring`.
pub fn find_coloring_with_preservers_in(
    a: &GroupAction,
    h: &PermGroup,
    r: usize,
) -> Result<Option<Coloring>> {
    if !h.is_subgroup_of(a.group())? {
        return Err(Error::NotSubgroup(
            "target must be a subgroup of the acting group".into(),
        ));
    }
    require_faithful(a)?;
    Ok(Engine::new(a, h).search(r))
}

/// Independent oracle: enumerates every `r`-coloring for `r = 1, 2, …` and
/// tests each against all nonidentity elements directly. No pruning and no
/// shared machinery with the backtracking search.
pub fn oracle_distinguishing_number(a: &GroupAction, cap: usize) -> Result<Option<usize>> {
    require_faithful(a)?;
    let m = a.point_count();
    let n = a.group().order();
    for r in 1..=cap {
        let level = (r as u128).checked_pow(m as u32);
        match level {
            Some(count) if count <= ORACLE_COLORING_LIMIT => {}
            _ => {
                return Err(Error::Exceeded(format!(
                    "oracle level r={r} needs {r}^{m} colorings"
                )))
            }
        }
        let mut assignment = vec![1usize; m];
        'colorings: loop {
            let mut preserved = false;
            for e in 1..n {
                let img = a.image_of(e);
                if (0..m).all(|x| assignment[img.image(x)] == assignment[x]) {
                    preserved = true;
                    break;
                }
            }
            if !preserved {
                return Ok(Some(r));
            }
            // Odometer: last point varies fastest.
            let mut i = m;
            loop {
                if i == 0 {
                    break 'colorings;
                }
                i -= 1;
                assignment[i] += 1;
                if assignment[i] <= r {
                    break;
                }
                assignment[i] = 1;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_distinguishing;
    use crate::perm::Permutation;

    fn natural(degree: usize, gens: &[Permutation]) -> GroupAction {
        GroupAction::natural(PermGroup::closure(degree, gens.to_vec()).unwrap())
    }

    fn s3_natural() -> GroupAction {
        natural(
            3,
            &[
                Permutation::from_cycles(3, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
            ],
        )
    }

    fn s4_natural() -> GroupAction {
        natural(
            4,
            &[
                Permutation::from_cycles(4, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
            ],
        )
    }

    fn c4_natural() -> GroupAction {
        natural(4, &[Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()])
    }

    fn c5_natural() -> GroupAction {
        natural(5, &[Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap()])
    }

    #[test]
    fn trivial_group_needs_one_color() {
        let a = GroupAction::natural(PermGroup::trivial(4));
        let result = distinguishing_number(&a, &SearchBudget::default()).unwrap();
        assert_eq!(result.value, 1);
        assert!(is_distinguishing(&a, &result.witness).unwrap());
    }

    #[test]
    fn s3_natural_needs_three_colors() {
        let result = distinguishing_number(&s3_natural(), &SearchBudget::default()).unwrap();
        assert_eq!(result.value, 3);
    }

    #[test]
    fn c4_natural_needs_two_colors() {
        let a = c4_natural();
        let result = distinguishing_number(&a, &SearchBudget::default()).unwrap();
        assert_eq!(result.value, 2);
        assert!(is_distinguishing(&a, &result.witness).unwrap());
        assert_eq!(oracle_distinguishing_number(&a, 4).unwrap(), Some(2));
    }

    #[test]
    fn s4_has_no_distinguishing_3_coloring_and_a_canonical_4_coloring() {
        let a = s4_natural();
        assert_eq!(find_distinguishing_coloring(&a, 3).unwrap(), None);
        let witness = find_distinguishing_coloring(&a, 4).unwrap().unwrap();
        assert_eq!(witness.assignment(), &[1, 2, 3, 4]);
    }

    #[test]
    fn c5_two_coloring_witness_is_found_and_verified() {
        let a = c5_natural();
        let witness = find_distinguishing_coloring(&a, 2).unwrap().unwrap();
        assert!(is_distinguishing(&a, &witness).unwrap());
        assert_eq!(oracle_distinguishing_number(&a, 4).unwrap(), Some(2));
    }

    #[test]
    fn oracle_matches_search_on_small_actions() {
        for a in [s3_natural(), s4_natural(), c4_natural(), c5_natural()] {
            let exact = distinguishing_number(&a, &SearchBudget::default()).unwrap();
            let oracle = oracle_distinguishing_number(&a, 8).unwrap();
            assert_eq!(Some(exact.value), oracle);
        }
    }

    #[test]
    fn identity_group_oracle_value_is_1() {
        let a = GroupAction::natural(PermGroup::trivial(2));
        assert_eq!(oracle_distinguishing_number(&a, 3).unwrap(), Some(1));
    }

    #[test]
    fn witness_minimality_is_confirmed_by_oracle() {
        let a = s4_natural();
        let result = distinguishing_number(&a, &SearchBudget::default()).unwrap();
        assert_eq!(
            find_distinguishing_coloring(&a, result.value - 1).unwrap(),
            None
        );
    }

    #[test]
    fn budget_on_colors_yields_exceeded() {
        let budget = SearchBudget {
            max_colors: 2,
            ..SearchBudget::default()
        };
        assert!(matches!(
            distinguishing_number(&s4_natural(), &budget),
            Err(Error::Exceeded(_))
        ));
    }

    #[test]
    fn budget_on_points_yields_exceeded() {
        let budget = SearchBudget {
            max_points: 3,
            ..SearchBudget::default()
        };
        assert!(matches!(
            distinguishing_number(&s4_natural(), &budget),
            Err(Error::Exceeded(_))
        ));
    }

    #[test]
    fn point_relabeling_does_not_change_the_value() {
        let a = s4_natural();
        let base = distinguishing_number(&a, &SearchBudget::default()).unwrap();
        let relabel = Permutation::from_images(vec![2, 0, 3, 1]).unwrap();
        let gens: Vec<Permutation> = a
            .group()
            .generators()
            .iter()
            .map(|g| g.conjugated_by(&relabel).unwrap())
            .collect();
        let conjugated = natural(4, &gens);
        let value = distinguishing_number(&conjugated, &SearchBudget::default())
            .unwrap()
            .value;
        assert_eq!(value, base.value);
    }

    #[test]
    fn factorial_bound_holds_on_computed_values() {
        for a in [s3_natural(), s4_natural(), c4_natural(), c5_natural()] {
            let value = distinguishing_number(&a, &SearchBudget::default())
                .unwrap()
                .value;
            assert!(value <= crate::constructive::factorial_bound_for_order(a.group().order()));
        }
    }
}

//! Constructive distinguishing colorings and the bounds they certify.
//!
//! The central construction colors the orbit representatives with a fresh
//! color and recurses on their pointwise stabilizer acting on the remaining
//! points, intersecting the normal series down one level each time. A valid
//! series of length `c` therefore yields at most `c + 1` colors, and every
//! constructed coloring is verified distinguishing before it is returned,
//! turning the bound into a runtime certificate.

use crate::action::GroupAction;
use crate::coloring::{self, Coloring};
use crate::enumeration;
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// Cap on `|G|` for the metacyclic search, which scans all cyclic subgroups.
const METACYCLIC_ORDER_CAP: usize = 5000;

/// How a normal-series step's quotient is constrained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesStepKind {
    /// `G_{i+1} / G_i` is cyclic.
    Cyclic,
    /// `G_{i+1} / G_i` lies in the center of `G / G_i`.
    Central,
}

/// An ascending chain `1 = G_0 ⊴ G_1 ⊴ … ⊴ G_c = G` with every term normal
/// in `G` and each step's quotient cyclic or central as tagged. Validated on
/// construction, so a value of this type is always a usable series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSeries {
    terms: Vec<PermGroup>,
    kinds: Vec<SeriesStepKind>,
}

impl NormalSeries {
    pub fn new(terms: Vec<PermGroup>, kinds: Vec<SeriesStepKind>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidSeries("series needs at least one term".into()));
        }
        if kinds.len() + 1 != terms.len() {
            return Err(Error::InvalidSeries(format!(
                "{} terms need {} step kinds, got {}",
                terms.len(),
                terms.len() - 1,
                kinds.len()
            )));
        }
        if !terms[0].is_trivial() {
            return Err(Error::InvalidSeries("first term must be trivial".into()));
        }
        let g = terms.last().expect("nonempty");
        for (i, term) in terms.iter().enumerate() {
            if term.degree() != g.degree() {
                return Err(Error::DegreeMismatch(term.degree(), g.degree()));
            }
            if !term.is_normal_in(g)? {
                return Err(Error::InvalidSeries(format!(
                    "term {i} is not normal in the full group"
                )));
            }
        }
        for (i, kind) in kinds.iter().enumerate() {
            if !terms[i].is_subgroup_of(&terms[i + 1])? {
                return Err(Error::InvalidSeries(format!(
                    "term {i} is not contained in term {}",
                    i + 1
                )));
            }
            match kind {
                SeriesStepKind::Cyclic => {
                    if !terms[i + 1].quotient(&terms[i])?.is_cyclic() {
                        return Err(Error::InvalidSeries(format!(
                            "step {i} is tagged cyclic but the quotient is not"
                        )));
                    }
                }
                SeriesStepKind::Central => {
                    let preimage = g.center_preimage(&terms[i])?;
                    if !terms[i + 1].is_subgroup_of(&preimage)? {
                        return Err(Error::InvalidSeries(format!(
                            "step {i} is tagged central but the quotient is not central"
                        )));
                    }
                }
            }
        }
        Ok(NormalSeries { terms, kinds })
    }

    pub fn terms(&self) -> &[PermGroup] {
        &self.terms
    }

    pub fn kinds(&self) -> &[SeriesStepKind] {
        &self.kinds
    }

    /// The full group `G_c`.
    pub fn group(&self) -> &PermGroup {
        self.terms.last().expect("nonempty")
    }

    /// Number of steps `c`.
    pub fn length(&self) -> usize {
        self.kinds.len()
    }
}

fn require_faithful(a: &GroupAction) -> Result<()> {
    if !a.is_faithful() {
        return Err(Error::NotFaithful {
            kernel_order: a.kernel().order(),
        });
    }
    Ok(())
}

/// Orbit minima and the remaining points, each ascending.
fn split_representatives(a: &GroupAction) -> (Vec<usize>, Vec<usize>) {
    let reps = a.orbits().representatives();
    let in_reps = {
        let mut flags = vec![false; a.point_count()];
        for &r in &reps {
            flags[r] = true;
        }
        flags
    };
    let rest = (0..a.point_count()).filter(|&p| !in_reps[p]).collect();
    (reps, rest)
}

/// One extension step: color the orbit representatives `U` with a fresh
/// color and pull a sub-coloring of the remaining points back through the
/// restriction. Requires `n` normal with the conjugate-generation property
/// and `sub` distinguishing for the stabilizer of `U` acting on the rest;
/// the result is verified distinguishing for the whole action.
pub fn extend_coloring(a: &GroupAction, n: &PermGroup, sub: &Coloring) -> Result<Coloring> {
    require_faithful(a)?;
    if !n.is_normal_in(a.group())? {
        return Err(Error::NotNormal(
            "extension requires a normal subgroup".into(),
        ));
    }
    if !a.group().conjugate_generation_check(n)? {
        return Err(Error::InvalidInput(
            "conjugate elements of the normal subgroup must generate the same cyclic subgroup"
                .into(),
        ));
    }
    let (reps, rest) = split_representatives(a);
    let stabilizer = a.pointwise_stabilizer(&reps)?;
    if !stabilizer.intersection(n)?.is_trivial() {
        return Err(Error::Internal(
            "orbit-representative stabilizer meets the normal subgroup nontrivially".into(),
        ));
    }
    if sub.point_count() != rest.len() {
        return Err(Error::InvalidColoring(format!(
            "sub-coloring covers {} points but {} remain outside the representatives",
            sub.point_count(),
            rest.len()
        )));
    }
    if !rest.is_empty() {
        let restricted = a.sub_action(&stabilizer)?.restrict_to_points(&rest)?;
        if !coloring::is_distinguishing(&restricted.action, sub)? {
            return Err(Error::InvalidInput(
                "sub-coloring is not distinguishing for the stabilizer action".into(),
            ));
        }
    }
    let fresh = sub.num_colors() + 1;
    let mut assignment = vec![fresh; a.point_count()];
    for (j, &orig) in rest.iter().enumerate() {
        assignment[orig] = sub.color_of(j);
    }
    let extended = Coloring::new(fresh, assignment)?;
    if !coloring::is_distinguishing(a, &extended)? {
        return Err(Error::Internal(
            "extended coloring failed the distinguishing check".into(),
        ));
    }
    Ok(extended)
}

fn series_coloring_rec(a: &GroupAction, terms: &[PermGroup]) -> Result<Coloring> {
    let g = terms.last().expect("nonempty series");
    debug_assert_eq!(g, a.group());
    if g.is_trivial() {
        return Ok(Coloring::constant(a.point_count()));
    }
    let first = &terms[1];
    let (reps, rest) = split_representatives(a);
    let stabilizer = a.pointwise_stabilizer(&reps)?;
    if !stabilizer.intersection(first)?.is_trivial() {
        return Err(Error::Internal(
            "orbit-representative stabilizer meets the first series term nontrivially".into(),
        ));
    }
    if rest.is_empty() {
        return Err(Error::Internal(
            "nontrivial faithful group left no points outside the representatives".into(),
        ));
    }
    let restricted = a.sub_action(&stabilizer)?.restrict_to_points(&rest)?;
    if !restricted.action.is_faithful() {
        return Err(Error::Internal(
            "restriction of the stabilizer action lost faithfulness".into(),
        ));
    }
    // Descend the series: H ∩ G_{i+1} for each step. Validity of the
    // descended tags is inherited, so only the intersections are formed.
    let sub_terms: Vec<PermGroup> = terms[1..]
        .iter()
        .map(|gi| stabilizer.intersection(gi))
        .collect::<Result<_>>()?;
    let sub = series_coloring_rec(&restricted.action, &sub_terms)?;
    let fresh = sub.num_colors() + 1;
    let mut assignment = vec![fresh; a.point_count()];
    for (j, &orig) in restricted.point_map.iter().enumerate() {
        assignment[orig] = sub.color_of(j);
    }
    Coloring::new(fresh, assignment)
}

/// Builds a distinguishing coloring from a valid normal series, using at
/// most `length + 1` colors. The result is verified before being returned.
pub fn series_coloring(a: &GroupAction, series: &NormalSeries) -> Result<Coloring> {
    require_faithful(a)?;
    if series.group() != a.group() {
        return Err(Error::InvalidSeries(
            "series does not terminate at the acting group".into(),
        ));
    }
    let result = series_coloring_rec(a, series.terms())?;
    if result.num_colors() > series.length() + 1 {
        return Err(Error::Internal(format!(
            "series coloring used {} colors, more than length + 1 = {}",
            result.num_colors(),
            series.length() + 1
        )));
    }
    if !coloring::is_distinguishing(a, &result)? {
        return Err(Error::Internal(
            "series coloring failed the distinguishing check".into(),
        ));
    }
    Ok(result)
}

/// The ascending central series `Z_0 = 1`, `Z_{i+1}/Z_i = Z(G/Z_i)`. Reaches
/// the whole group iff it is nilpotent; the length is then the nilpotency
/// class. Returns `None` when the chain stalls.
pub fn upper_central_series(g: &PermGroup) -> Option<NormalSeries> {
    let mut terms = vec![PermGroup::trivial(g.degree())];
    loop {
        let current = terms.last().expect("nonempty");
        if current == g {
            let kinds = vec![SeriesStepKind::Central; terms.len() - 1];
            return Some(NormalSeries::new(terms, kinds).expect("central series is valid"));
        }
        let next = g
            .center_preimage(current)
            .expect("central series terms are normal");
        if &next == current {
            return None;
        }
        terms.push(next);
    }
}

/// Searches for a normal series with all quotients cyclic: greedy on the
/// largest admissible next term, with backtracking over the normal subgroups
/// of `g`. Returns `None` when no such series exists (the group is not
/// supersolvable); the length of a found series is not claimed minimal.
pub fn supersolvable_series(g: &PermGroup) -> Result<Option<NormalSeries>> {
    let lattice = enumeration::all_subgroups(g)?;
    let subs = lattice.subgroups();
    let normals = lattice.normal_subgroup_indices();
    let full = subs
        .iter()
        .position(|h| h == g)
        .expect("ambient group is in its own lattice");

    fn dfs(
        subs: &[PermGroup],
        normals: &[usize],
        full: usize,
        current: usize,
        dead: &mut Vec<bool>,
    ) -> Result<Option<Vec<usize>>> {
        if current == full {
            return Ok(Some(vec![current]));
        }
        if dead[current] {
            return Ok(None);
        }
        // Largest next term first; index order breaks ties canonically.
        let mut candidates: Vec<usize> = Vec::new();
        for &k in normals {
            if subs[k].order() > subs[current].order()
                && subs[current].is_subgroup_of(&subs[k])?
                && subs[k].quotient(&subs[current])?.is_cyclic()
            {
                candidates.push(k);
            }
        }
        candidates.sort_by_key(|&k| (std::cmp::Reverse(subs[k].order()), k));
        for k in candidates {
            if let Some(mut chain) = dfs(subs, normals, full, k, dead)? {
                chain.push(current);
                return Ok(Some(chain));
            }
        }
        dead[current] = true;
        Ok(None)
    }

    let trivial = 0; // canonical sort puts the order-1 subgroup first
    debug_assert!(subs[trivial].is_trivial());
    let mut dead = vec![false; subs.len()];
    match dfs(subs, &normals, full, trivial, &mut dead)? {
        None => Ok(None),
        Some(mut chain) => {
            chain.reverse();
            let terms: Vec<PermGroup> = chain.into_iter().map(|i| subs[i].clone()).collect();
            let kinds = vec![SeriesStepKind::Cyclic; terms.len() - 1];
            Ok(Some(NormalSeries::new(terms, kinds)?))
        }
    }
}

/// Finds a cyclic normal subgroup with cyclic quotient, preferring the
/// largest (ties broken canonically), and returns `[1, N, G]`. `None` when
/// the group is not metacyclic.
pub fn metacyclic_series(g: &PermGroup) -> Result<Option<NormalSeries>> {
    if g.order() > METACYCLIC_ORDER_CAP {
        return Err(Error::Exceeded(format!(
            "metacyclic search is capped at order {METACYCLIC_ORDER_CAP}, got {}",
            g.order()
        )));
    }
    let mut best: Option<PermGroup> = None;
    let mut seen: Vec<Vec<crate::perm::Permutation>> = Vec::new();
    for x in g.elements() {
        let n = g.cyclic_subgroup(x)?;
        if seen.contains(&n.elements().to_vec()) {
            continue;
        }
        seen.push(n.elements().to_vec());
        if !n.is_normal_in(g)? || !g.quotient(&n)?.is_cyclic() {
            continue;
        }
        let improves = match &best {
            None => true,
            Some(b) => {
                n.order() > b.order()
                    || (n.order() == b.order() && n.elements() < b.elements())
            }
        };
        if improves {
            best = Some(n);
        }
    }
    match best {
        None => Ok(None),
        Some(n) => {
            let terms = vec![PermGroup::trivial(g.degree()), n, g.clone()];
            let kinds = vec![SeriesStepKind::Cyclic, SeriesStepKind::Cyclic];
            Ok(Some(NormalSeries::new(terms, kinds)?))
        }
    }
}

/// Least `k` with `order ≤ k!`.
pub fn factorial_bound_for_order(order: usize) -> usize {
    let mut k: u128 = 1;
    let mut fact: u128 = 1;
    while fact < order as u128 {
        k += 1;
        fact *= k;
    }
    k as usize
}

/// Least `k` with `|g| ≤ k!`; a distinguishing number never exceeds it.
pub fn factorial_bound(g: &PermGroup) -> usize {
    factorial_bound_for_order(g.order())
}

/// Colors each orbit in blocks of size at most `p - 1` (`p` the smallest
/// prime dividing `|G|`), which forces the preserver subgroup's order to be
/// coprime to `|G|`. Returns the coloring and the certified bound
/// `⌈M / (p-1)⌉` for `M` the largest orbit length.
pub fn prime_bound_coloring(a: &GroupAction) -> Result<(Coloring, usize)> {
    require_faithful(a)?;
    let order = a.group().order();
    if order <= 1 {
        return Err(Error::InvalidInput(
            "prime bound needs a nontrivial group".into(),
        ));
    }
    let p = (2..).find(|d| order.is_multiple_of(*d)).expect("order > 1 has a prime factor");
    let orbits = a.orbits();
    let largest = orbits.orbits().iter().map(|o| o.len()).max().expect("points exist");
    let bound = largest.div_ceil(p - 1);
    let mut assignment = vec![0usize; a.point_count()];
    for orbit in orbits.orbits() {
        for (i, &point) in orbit.iter().enumerate() {
            assignment[point] = i / (p - 1) + 1;
        }
    }
    let coloring = Coloring::new(bound, assignment)?;
    if !coloring::is_distinguishing(a, &coloring)? {
        return Err(Error::Internal(
            "prime-bound coloring failed the distinguishing check".into(),
        ));
    }
    Ok((coloring, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::perm::Permutation;

    fn series(terms: Vec<PermGroup>, kinds: Vec<SeriesStepKind>) -> NormalSeries {
        NormalSeries::new(terms, kinds).unwrap()
    }

    fn s3_natural() -> GroupAction {
        catalog::symmetric(3).unwrap()
    }

    #[test]
    fn extend_c4_regular_by_itself() {
        let a = catalog::cyclic_regular(4).unwrap();
        let g = a.group().clone();
        let sub = Coloring::constant(3);
        let extended = extend_coloring(&a, &g, &sub).unwrap();
        assert_eq!(extended.num_colors(), 2);
        assert_eq!(extended.assignment().iter().filter(|&&c| c == 2).count(), 1);
    }

    #[test]
    fn extend_trivial_group_on_one_point() {
        let a = catalog::cyclic(1).unwrap();
        let t = PermGroup::trivial(1);
        let extended = extend_coloring(&a, &t, &Coloring::empty()).unwrap();
        assert_eq!(extended.num_colors(), 1);
        assert_eq!(extended.assignment(), &[1]);
    }

    #[test]
    fn extend_s3_by_a3() {
        let a = s3_natural();
        let a3 = a
            .group()
            .cyclic_subgroup(&Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap())
            .unwrap();
        // The stabilizer of point 0 is ⟨(1 2)⟩ acting on {1, 2}; a rainbow
        // 2-coloring distinguishes it.
        let sub = Coloring::new(2, vec![1, 2]).unwrap();
        let extended = extend_coloring(&a, &a3, &sub).unwrap();
        assert_eq!(extended.num_colors(), 3);
        assert_eq!(extended.assignment(), &[3, 1, 2]);
    }

    #[test]
    fn extend_rejects_non_distinguishing_sub_coloring() {
        let a = s3_natural();
        let a3 = a
            .group()
            .cyclic_subgroup(&Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap())
            .unwrap();
        let sub = Coloring::constant(2);
        assert!(extend_coloring(&a, &a3, &sub).is_err());
    }

    #[test]
    fn extend_rejects_failed_conjugate_generation() {
        let a = catalog::symmetric(4).unwrap();
        let v4 = PermGroup::closure(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let sub = Coloring::rainbow(3);
        assert!(matches!(
            extend_coloring(&a, &v4, &sub),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn series_coloring_of_abelian_group_needs_at_most_two_colors() {
        for a in [
            catalog::cyclic(6).unwrap(),
            catalog::cyclic_regular(5).unwrap(),
            catalog::elementary_abelian(2, 2).unwrap(),
        ] {
            let g = a.group().clone();
            let s = series(
                vec![PermGroup::trivial(g.degree()), g],
                vec![SeriesStepKind::Central],
            );
            let c = series_coloring(&a, &s).unwrap();
            assert!(c.num_colors() <= 2);
        }
    }

    #[test]
    fn series_coloring_of_dihedral_regular_needs_at_most_three_colors() {
        let a = catalog::dihedral_regular(6).unwrap();
        let s = metacyclic_series(a.group()).unwrap().unwrap();
        let c = series_coloring(&a, &s).unwrap();
        assert!(c.num_colors() <= 3);
    }

    #[test]
    fn series_coloring_of_trivial_group_uses_one_color() {
        let a = catalog::cyclic(1).unwrap();
        let s = series(vec![PermGroup::trivial(1)], vec![]);
        let c = series_coloring(&a, &s).unwrap();
        assert_eq!(c.num_colors(), 1);
    }

    #[test]
    fn upper_central_series_of_abelian_group_has_class_1() {
        let a = catalog::cyclic(6).unwrap();
        let s = upper_central_series(a.group()).unwrap();
        assert_eq!(s.length(), 1);
    }

    #[test]
    fn upper_central_series_of_quaternion_group_has_class_2() {
        let a = catalog::quaternion8_regular().unwrap();
        let s = upper_central_series(a.group()).unwrap();
        assert_eq!(s.length(), 2);
        assert_eq!(s.terms()[1].order(), 2);
    }

    #[test]
    fn s3_is_not_nilpotent() {
        assert!(upper_central_series(s3_natural().group()).is_none());
    }

    #[test]
    fn upper_central_series_terms_ascend_and_are_normal() {
        let a = catalog::dihedral_regular(4).unwrap();
        let s = upper_central_series(a.group()).unwrap();
        assert_eq!(s.length(), 2);
        for w in s.terms().windows(2) {
            assert!(w[0].is_subgroup_of(&w[1]).unwrap());
        }
        for t in s.terms() {
            assert!(t.is_normal_in(a.group()).unwrap());
        }
    }

    #[test]
    fn supersolvable_series_of_s3_has_length_2() {
        let s = supersolvable_series(s3_natural().group()).unwrap().unwrap();
        assert_eq!(s.length(), 2);
        let orders: Vec<usize> = s.terms().iter().map(|t| t.order()).collect();
        assert_eq!(orders, vec![1, 3, 6]);
    }

    #[test]
    fn s4_is_not_supersolvable() {
        let a = catalog::symmetric(4).unwrap();
        assert!(supersolvable_series(a.group()).unwrap().is_none());
    }

    #[test]
    fn supersolvable_series_of_cyclic_group_has_length_1() {
        let a = catalog::cyclic(5).unwrap();
        let s = supersolvable_series(a.group()).unwrap().unwrap();
        assert_eq!(s.length(), 1);
    }

    #[test]
    fn supersolvable_series_colors_a_product_group() {
        let a = catalog::build("direct_product(cyclic:3,symmetric:3)").unwrap();
        let s = supersolvable_series(a.group()).unwrap().unwrap();
        assert_eq!(s.group().order(), 18);
        let c = series_coloring(&a, &s).unwrap();
        assert!(c.num_colors() <= s.length() + 1);
    }

    #[test]
    fn metacyclic_series_of_dihedral_group_uses_the_rotations() {
        let a = catalog::dihedral(5).unwrap();
        let s = metacyclic_series(a.group()).unwrap().unwrap();
        assert_eq!(s.terms()[1].order(), 5);
        assert!(s.terms()[1].is_cyclic());
    }

    #[test]
    fn metacyclic_series_of_v4_uses_an_order_2_subgroup() {
        let a = catalog::v4_transitive().unwrap();
        let s = metacyclic_series(a.group()).unwrap().unwrap();
        assert_eq!(s.terms()[1].order(), 2);
    }

    #[test]
    fn metacyclic_series_of_quaternion_group_uses_an_order_4_subgroup() {
        let a = catalog::quaternion8_regular().unwrap();
        let s = metacyclic_series(a.group()).unwrap().unwrap();
        assert_eq!(s.terms()[1].order(), 4);
        assert!(s.terms()[1].is_cyclic());
    }

    #[test]
    fn factorial_bound_values() {
        assert_eq!(factorial_bound_for_order(1), 1);
        assert_eq!(factorial_bound_for_order(24), 4);
        assert_eq!(factorial_bound_for_order(25), 5);
    }

    #[test]
    fn prime_bound_on_c5_uses_two_colors() {
        let a = catalog::cyclic(5).unwrap();
        let (c, bound) = prime_bound_coloring(&a).unwrap();
        assert_eq!(bound, 2);
        assert_eq!(c.assignment(), &[1, 1, 1, 1, 2]);
    }

    #[test]
    fn prime_bound_on_c3_regular() {
        let a = catalog::cyclic_regular(3).unwrap();
        let (_, bound) = prime_bound_coloring(&a).unwrap();
        assert_eq!(bound, 2);
    }

    #[test]
    fn prime_bound_on_c2_forces_rainbow_orbits() {
        let a = catalog::cyclic(2).unwrap();
        let (c, bound) = prime_bound_coloring(&a).unwrap();
        assert_eq!(bound, 2);
        assert_eq!(c.assignment(), &[1, 2]);
    }

    #[test]
    fn prime_bound_rejects_the_trivial_group() {
        let a = catalog::cyclic(1).unwrap();
        assert!(prime_bound_coloring(&a).is_err());
    }

    #[test]
    fn series_validation_rejects_bad_chains() {
        let a = catalog::symmetric(4).unwrap();
        let g = a.group().clone();
        // Wrong tag: S_4 / 1 is neither cyclic nor central.
        assert!(NormalSeries::new(
            vec![PermGroup::trivial(4), g.clone()],
            vec![SeriesStepKind::Cyclic]
        )
        .is_err());
        assert!(NormalSeries::new(
            vec![PermGroup::trivial(4), g.clone()],
            vec![SeriesStepKind::Central]
        )
        .is_err());
        // Non-normal intermediate term.
        let h = g
            .cyclic_subgroup(&Permutation::from_cycles(4, &[vec![0, 1]]).unwrap())
            .unwrap();
        assert!(NormalSeries::new(
            vec![PermGroup::trivial(4), h, g],
            vec![SeriesStepKind::Cyclic, SeriesStepKind::Cyclic]
        )
        .is_err());
    }
}

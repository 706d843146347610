//! Colorings of group actions and their preserver subgroups.

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A total map from points to colors `{1, …, num_colors}`.
///
/// The number of colors is declared, not inferred: a coloring may not use all
/// of its colors. The empty coloring of zero points with zero colors is
/// allowed as the degenerate base of the extension construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    num_colors: usize,
    assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(num_colors: usize, assignment: Vec<usize>) -> Result<Self> {
        if num_colors == 0 && !assignment.is_empty() {
            return Err(Error::InvalidColoring(
                "at least one color is required".into(),
            ));
        }
        for (i, &c) in assignment.iter().enumerate() {
            if c == 0 || c > num_colors {
                return Err(Error::InvalidColoring(format!(
                    "color {c} at point {i} is outside 1..={num_colors}"
                )));
            }
        }
        Ok(Coloring {
            num_colors,
            assignment,
        })
    }

    /// The empty coloring of zero points.
    pub fn empty() -> Self {
        Coloring {
            num_colors: 0,
            assignment: Vec::new(),
        }
    }

    /// Everything gets color 1.
    pub fn constant(point_count: usize) -> Self {
        Coloring {
            num_colors: 1,
            assignment: vec![1; point_count],
        }
    }

    /// Every point gets its own color: point `i` gets color `i + 1`.
    pub fn rainbow(point_count: usize) -> Self {
        Coloring {
            num_colors: point_count,
            assignment: (1..=point_count).collect(),
        }
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn point_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn color_of(&self, point: usize) -> usize {
        self.assignment[point]
    }
}

fn check_lengths(a: &GroupAction, c: &Coloring) -> Result<()> {
    if c.point_count() != a.point_count() {
        return Err(Error::InvalidColoring(format!(
            "coloring has {} entries but the action has {} points",
            c.point_count(),
            a.point_count()
        )));
    }
    Ok(())
}

fn preserves(img: &Permutation, c: &Coloring) -> bool {
    (0..c.point_count()).all(|x| c.color_of(img.image(x)) == c.color_of(x))
}

/// The preserver subgroup `H_c = {g : c(x^g) = c(x) for all x}`, computed by
/// filtering the full element list.
pub fn preserver_subgroup(a: &GroupAction, c: &Coloring) -> Result<PermGroup> {
    check_lengths(a, c)?;
    let members: Vec<Permutation> = a
        .group()
        .elements()
        .iter()
        .enumerate()
        .filter(|(i, _)| preserves(a.image_of(*i), c))
        .map(|(_, e)| e.clone())
        .collect();
    PermGroup::from_elements(a.group().degree(), members)
}

/// True iff only the identity preserves `c`. Requires a faithful action and
/// short-circuits on the first nonidentity preserver.
pub fn is_distinguishing(a: &GroupAction, c: &Coloring) -> Result<bool> {
    check_lengths(a, c)?;
    if !a.is_faithful() {
        return Err(Error::NotFaithful {
            kernel_order: a.kernel().order(),
        });
    }
    Ok((1..a.group().order()).all(|i| !preserves(a.image_of(i), c)))
}

/// The least `r ≤ cap` admitting an `r`-coloring whose preservers all lie in
/// `h`, or `None` if no such `r` exists within the cap. With `h` trivial this
/// is the distinguishing number.
pub fn relative_distinguishing_number(
    a: &GroupAction,
    h: &PermGroup,
    cap: usize,
) -> Result<Option<usize>> {
    if !h.is_subgroup_of(a.group())? {
        return Err(Error::NotSubgroup(
            "relative distinguishing number requires a subgroup of the acting group".into(),
        ));
    }
    if !a.is_faithful() {
        return Err(Error::NotFaithful {
            kernel_order: a.kernel().order(),
        });
    }
    for r in 1..=cap {
        if crate::search::find_coloring_with_preservers_in(a, h, r)?.is_some() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

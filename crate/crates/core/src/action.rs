//! Group actions on finite point sets.
//!
//! An action pairs an enumerated group with one permutation of the point set
//! per group element (the image of that element under the action
//! homomorphism). For the common case of a permutation group acting on its
//! own domain the images are the elements themselves; restricting an action
//! to an invariant point set can collapse distinct elements to the same image
//! permutation, which is how nonfaithful actions arise.

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A finite group acting on the points `{0, …, m-1}`.
///
/// Faithfulness is a queryable property, not an invariant; operations that
/// need it state it as a precondition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: PermGroup,
    point_count: usize,
    images: Vec<Permutation>,
}

/// Orbits of an action, listed in increasing order of their least point;
/// each orbit is sorted ascending, so its first entry is the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    orbits: Vec<Vec<usize>>,
}

/// An action induced on an invariant point subset, together with the map
/// from new point indices back to original points (for coloring pull-back).
#[derive(Clone, Debug)]
pub struct RestrictedAction {
    pub action: GroupAction,
    pub point_map: Vec<usize>,
}

impl GroupAction {
    /// The group acting on its own domain. Always faithful.
    pub fn natural(group: PermGroup) -> Self {
        let images = group.elements().to_vec();
        let point_count = group.degree();
        GroupAction {
            group,
            point_count,
            images,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// The permutation of the points induced by element `elem_idx` (an index
    /// into `group().elements()`).
    pub fn image_of(&self, elem_idx: usize) -> &Permutation {
        &self.images[elem_idx]
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, elem_idx: usize, point: usize) -> usize {
        self.images[elem_idx].image(point)
    }

    /// The same points acted on by a subgroup of the acting group.
    pub fn sub_action(&self, h: &PermGroup) -> Result<GroupAction> {
        if !h.is_subgroup_of(&self.group)? {
            return Err(Error::NotSubgroup(
                "sub-action requires a subgroup of the acting group".into(),
            ));
        }
        let images = h
            .elements()
            .iter()
            .map(|e| self.images[self.group.element_index(e).expect("member")].clone())
            .collect();
        Ok(GroupAction {
            group: h.clone(),
            point_count: self.point_count,
            images,
        })
    }

    /// Orbit partition, computed from the generators' images.
    pub fn orbits(&self) -> OrbitDecomposition {
        let gen_images: Vec<&Permutation> = self
            .group
            .generators()
            .iter()
            .map(|g| {
                &self.images[self.group.element_index(g).expect("generator is a member")]
            })
            .collect();
        let mut seen = vec![false; self.point_count];
        let mut orbits = Vec::new();
        for start in 0..self.point_count {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                let p = orbit[i];
                for g in &gen_images {
                    let q = g.image(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        OrbitDecomposition { orbits }
    }

    /// The subgroup of elements acting trivially on every point, as a
    /// subgroup of the acting group (in the group's own degree).
    pub fn kernel(&self) -> PermGroup {
        let members: Vec<Permutation> = self
            .group
            .elements()
            .iter()
            .zip(&self.images)
            .filter(|(_, img)| img.is_identity())
            .map(|(e, _)| e.clone())
            .collect();
        PermGroup::from_elements(self.group.degree(), members).expect("kernel is a subgroup")
    }

    pub fn is_faithful(&self) -> bool {
        // The homomorphism is injective iff no nonidentity element acts
        // trivially; elements[0] is the identity.
        self.images
            .iter()
            .enumerate()
            .all(|(i, img)| i == 0 || !img.is_identity())
    }

    /// The induced faithful action on the same points: one permutation per
    /// coset of the kernel, acting as a permutation group on its own domain.
    pub fn faithful_quotient(&self) -> GroupAction {
        let mut image_elements = self.images.clone();
        image_elements.sort();
        image_elements.dedup();
        let image_group = PermGroup::from_elements(self.point_count, image_elements)
            .expect("action image is a group");
        GroupAction::natural(image_group)
    }

    /// The subgroup of elements fixing every point of `pts`.
    pub fn pointwise_stabilizer(&self, pts: &[usize]) -> Result<PermGroup> {
        for &p in pts {
            if p >= self.point_count {
                return Err(Error::InvalidInput(format!(
                    "point {p} out of range 0..{}",
                    self.point_count
                )));
            }
        }
        let members: Vec<Permutation> = self
            .group
            .elements()
            .iter()
            .zip(&self.images)
            .filter(|(_, img)| pts.iter().all(|&p| img.image(p) == p))
            .map(|(e, _)| e.clone())
            .collect();
        PermGroup::from_elements(self.group.degree(), members)
    }

    /// Induces the action on an invariant point subset, re-indexed compactly
    /// as `0..pts.len()` in the given order. The acting group is unchanged,
    /// so the result can be nonfaithful even when `self` is faithful.
    pub fn restrict_to_points(&self, pts: &[usize]) -> Result<RestrictedAction> {
        if pts.is_empty() {
            return Err(Error::InvalidInput(
                "cannot restrict to an empty point set".into(),
            ));
        }
        let mut new_index = vec![usize::MAX; self.point_count];
        for (new, &old) in pts.iter().enumerate() {
            if old >= self.point_count {
                return Err(Error::InvalidInput(format!(
                    "point {old} out of range 0..{}",
                    self.point_count
                )));
            }
            if new_index[old] != usize::MAX {
                return Err(Error::InvalidInput(format!("point {old} listed twice")));
            }
            new_index[old] = new;
        }
        // Invariance check against every generator image.
        for g in self.group.generators() {
            let img = &self.images[self.group.element_index(g).expect("generator")];
            for &p in pts {
                if new_index[img.image(p)] == usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "point set is not invariant: {} maps out of the set",
                        p
                    )));
                }
            }
        }
        let images: Vec<Permutation> = self
            .images
            .iter()
            .map(|img| {
                let word: Vec<usize> = pts.iter().map(|&p| new_index[img.image(p)]).collect();
                Permutation::from_images(word).expect("restriction of a bijection")
            })
            .collect();
        Ok(RestrictedAction {
            action: GroupAction {
                group: self.group.clone(),
                point_count: pts.len(),
                images,
            },
            point_map: pts.to_vec(),
        })
    }
}

impl OrbitDecomposition {
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Least point of each orbit, in orbit order.
    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    pub fn orbit_of(&self, point: usize) -> Option<&[usize]> {
        self.orbits
            .iter()
            .find(|o| o.binary_search(&point).is_ok())
            .map(|o| o.as_slice())
    }
}

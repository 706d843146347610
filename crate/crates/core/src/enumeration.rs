//! Subgroup-lattice enumeration, transitive subgroups of `S_n`, and the set
//! of distinguishing numbers they realize on `n` points.
//!
//! The lattice is built in element-index space over a precomputed
//! multiplication table: seed with every cyclic subgroup, then join pairs
//! (closure of the union) to a fixed point. Every subgroup is a join of the
//! cyclic subgroups of its elements and all intermediate joins are again
//! subgroups, so the fixed point is the complete lattice.

use std::collections::{HashMap, HashSet};

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::search::{self, SearchBudget};

/// Largest ambient group the lattice enumerator accepts (covers `S_6`).
pub const LATTICE_ORDER_CAP: usize = 1000;

/// The complete subgroup lattice of an ambient group, with subgroups grouped
/// into conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    ambient: PermGroup,
    subgroups: Vec<PermGroup>,
    classes: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    /// All subgroups, sorted by (order, element list).
    pub fn subgroups(&self) -> &[PermGroup] {
        &self.subgroups
    }

    /// Conjugacy classes as sorted index lists, ordered by least member; the
    /// first index of each class is its canonical representative.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_representatives(&self) -> Vec<&PermGroup> {
        self.classes.iter().map(|c| &self.subgroups[c[0]]).collect()
    }

    /// Indices of the normal subgroups: exactly the singleton classes.
    pub fn normal_subgroup_indices(&self) -> Vec<usize> {
        self.classes
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect()
    }
}

struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn new(n: usize) -> Self {
        Bitset {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    fn insert(&mut self, i: u16) -> bool {
        let w = &mut self.words[i as usize / 64];
        let bit = 1u64 << (i % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    fn is_subset_of(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

struct SubData {
    ids: Vec<u16>,
    gens: Vec<u16>,
    bits: Bitset,
}

fn closure_ids(table: &crate::perm::MulTable, gens: &[u16]) -> Vec<u16> {
    let mut bits = Bitset::new(table.n);
    bits.insert(0);
    let mut members = vec![0u16];
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in gens {
            let y = table.mul(x, g);
            if bits.insert(y) {
                members.push(y);
            }
        }
        i += 1;
    }
    members.sort_unstable();
    members
}

/// Greedy generating set for a closed id set: repeatedly adjoin the least
/// element not yet generated.
fn greedy_gens(table: &crate::perm::MulTable, ids: &[u16]) -> Vec<u16> {
    let mut gens: Vec<u16> = Vec::new();
    let mut covered: Vec<u16> = vec![0];
    loop {
        let next = match ids.iter().find(|x| covered.binary_search(x).is_err()) {
            Some(&x) => x,
            None => return gens,
        };
        gens.push(next);
        covered = closure_ids(table, &gens);
    }
}

/// Enumerates every subgroup of `g` by cyclic seeds and pairwise joins.
pub fn all_subgroups(g: &PermGroup) -> Result<SubgroupLattice> {
    if g.order() > LATTICE_ORDER_CAP {
        return Err(Error::Exceeded(format!(
            "subgroup lattice enumeration is capped at ambient order {LATTICE_ORDER_CAP}, got {}",
            g.order()
        )));
    }
    let table = g.multiplication_table();
    let n = g.order();

    let mut index: HashMap<Vec<u16>, usize> = HashMap::new();
    let mut subs: Vec<SubData> = Vec::new();
    let add = |subs: &mut Vec<SubData>,
                   index: &mut HashMap<Vec<u16>, usize>,
                   ids: Vec<u16>,
                   table: &crate::perm::MulTable|
     -> bool {
        if index.contains_key(&ids) {
            return false;
        }
        let mut bits = Bitset::new(n);
        for &x in &ids {
            bits.insert(x);
        }
        let gens = greedy_gens(table, &ids);
        index.insert(ids.clone(), subs.len());
        subs.push(SubData { ids, gens, bits });
        true
    };

    // Cyclic seeds, including the trivial subgroup from the identity.
    for x in 0..n as u16 {
        let ids = closure_ids(&table, &[x]);
        add(&mut subs, &mut index, ids, &table);
    }

    // Pairwise joins until no new subgroup appears. Each round only needs
    // pairs touching a subgroup discovered in the previous round.
    let mut frontier: Vec<usize> = (0..subs.len()).collect();
    while !frontier.is_empty() {
        let is_frontier: HashSet<usize> = frontier.iter().copied().collect();
        let mut new_frontier = Vec::new();
        let snapshot_len = subs.len();
        for &i in &frontier {
            for j in 0..snapshot_len {
                if i == j || (is_frontier.contains(&j) && j > i) {
                    continue;
                }
                if subs[i].bits.is_subset_of(&subs[j].bits)
                    || subs[j].bits.is_subset_of(&subs[i].bits)
                {
                    continue;
                }
                let mut gens = subs[i].gens.clone();
                gens.extend_from_slice(&subs[j].gens);
                let ids = closure_ids(&table, &gens);
                if add(&mut subs, &mut index, ids, &table) {
                    new_frontier.push(subs.len() - 1);
                }
            }
        }
        frontier = new_frontier;
    }

    // Completeness cross-check: the cyclic members of the lattice must match
    // the independent census of ⟨x⟩ over all elements.
    #[cfg(debug_assertions)]
    {
        let census: HashSet<Vec<u16>> = (0..n as u16)
            .map(|x| closure_ids(&table, &[x]))
            .collect();
        let cyclic_in_lattice = subs
            .iter()
            .filter(|s| {
                s.ids
                    .iter()
                    .any(|&x| closure_ids(&table, &[x]).len() == s.ids.len())
            })
            .count();
        assert_eq!(census.len(), cyclic_in_lattice, "cyclic census mismatch");
    }

    // Materialize as PermGroups in canonical order.
    let mut order: Vec<usize> = (0..subs.len()).collect();
    order.sort_by(|&a, &b| {
        (subs[a].ids.len(), &subs[a].ids).cmp(&(subs[b].ids.len(), &subs[b].ids))
    });
    let position: HashMap<Vec<u16>, usize> = order
        .iter()
        .enumerate()
        .map(|(pos, &old)| (subs[old].ids.clone(), pos))
        .collect();
    let subgroups: Vec<PermGroup> = order
        .iter()
        .map(|&old| {
            let members: Vec<Permutation> = subs[old]
                .ids
                .iter()
                .map(|&x| g.elements()[x as usize].clone())
                .collect();
            PermGroup::from_elements(g.degree(), members).expect("closed id set")
        })
        .collect();

    // Conjugacy classes by orbit under ambient conjugation.
    let sorted_ids: Vec<Vec<u16>> = order.iter().map(|&old| subs[old].ids.clone()).collect();
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let class_id = classes.len();
        let mut members = Vec::new();
        for a in 0..n as u16 {
            let mut image: Vec<u16> = sorted_ids[start]
                .iter()
                .map(|&x| table.conj(x, a))
                .collect();
            image.sort_unstable();
            let pos = position[&image];
            if class_of[pos] == usize::MAX {
                class_of[pos] = class_id;
                members.push(pos);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes.sort_by_key(|c| c[0]);

    Ok(SubgroupLattice {
        ambient: g.clone(),
        subgroups,
        classes,
    })
}

fn symmetric_group(n: usize) -> Result<PermGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
    }
    PermGroup::closure(n, gens)
}

fn is_transitive(h: &PermGroup) -> bool {
    GroupAction::natural(h.clone()).orbits().orbits().len() == 1
}

/// Canonical representatives of the conjugacy classes of transitive
/// subgroups of `S_n`, for `2 ≤ n ≤ 6`. Transitivity is a class invariant
/// and the distinguishing number is relabeling-invariant, so class
/// representatives lose nothing.
pub fn transitive_subgroups(n: usize) -> Result<Vec<PermGroup>> {
    if !(2..=6).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "transitive subgroup enumeration supports 2 ≤ n ≤ 6, got {n}"
        )));
    }
    let lattice = all_subgroups(&symmetric_group(n)?)?;
    Ok(lattice
        .class_representatives()
        .into_iter()
        .filter(|h| is_transitive(h))
        .cloned()
        .collect())
}

/// One achieved distinguishing number together with every transitive class
/// representative that realizes it.
#[derive(Clone, Debug)]
pub struct TnEntry {
    pub value: usize,
    pub witnesses: Vec<PermGroup>,
}

/// The distinguishing numbers of all transitive subgroups of `S_n` acting
/// naturally on `n` points, sorted ascending with witnesses per value.
pub fn t_n(n: usize, budget: &SearchBudget) -> Result<Vec<TnEntry>> {
    let reps = transitive_subgroups(n)?;
    let mut by_value: Vec<(usize, Vec<PermGroup>)> = Vec::new();
    let mut partial: Vec<usize> = Vec::new();
    for rep in reps {
        let action = GroupAction::natural(rep.clone());
        let value = match search::distinguishing_number(&action, budget) {
            Ok(result) => result.value,
            Err(Error::Exceeded(msg)) => {
                return Err(Error::Exceeded(format!(
                    "t_n({n}) member of order {} exceeded the budget ({msg}); \
                     partial values {partial:?}",
                    rep.order()
                )))
            }
            Err(e) => return Err(e),
        };
        partial.push(value);
        match by_value.iter_mut().find(|(v, _)| *v == value) {
            Some((_, witnesses)) => witnesses.push(rep),
            None => by_value.push((value, vec![rep])),
        }
    }
    by_value.sort_by_key(|(v, _)| *v);
    Ok(by_value
        .into_iter()
        .map(|(value, witnesses)| TnEntry { value, witnesses })
        .collect())
}

/// Just the value set of [`t_n`].
pub fn t_n_values(n: usize, budget: &SearchBudget) -> Result<Vec<usize>> {
    Ok(t_n(n, budget)?.into_iter().map(|e| e.value).collect())
}

//! Permutations and fully enumerated finite permutation groups.
//!
//! Groups are stored as their complete element sets in a canonical order
//! (lexicographic on image words), which makes every downstream choice of
//! representative deterministic. Products follow the right-action convention:
//! `a.compose(b)` applies `a` first, then `b`, so that `x^(ab) = (x^a)^b`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on enumerated group size; `closure_with_cap` accepts overrides.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

/// A permutation of `{0, …, m-1}` stored as its image word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree > 0, "degree must be positive");
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image word, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut seen = vec![false; images.len()];
        for &v in &images {
            if v >= images.len() {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} out of range for degree {}",
                    images.len()
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("image {v} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from 0-indexed disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut moved[p], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears in more than one cycle"
                    )));
                }
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-indexed cycle notation such as `"(1 2 3)(4 5)"`; commas and
    /// whitespace both separate points. `"()"` denotes the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.starts_with('(') || !s.ends_with(')') {
            return Err(Error::InvalidPermutation(format!(
                "cycle notation must be parenthesized: {s:?}"
            )));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in s.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("malformed cycles: {s:?}")))?;
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok.parse().map_err(|_| {
                    Error::InvalidPermutation(format!("bad point {tok:?} in {s:?}"))
                })?;
                if p == 0 || p > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} out of range 1..={degree}"
                    )));
                }
                cycle.push(p - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` applied first, then `other`: `result[i] = other[self[i]]`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// The product `s · self · s⁻¹` (apply `s`, then `self`, then `s⁻¹`).
    pub fn conjugated_by(&self, s: &Permutation) -> Result<Permutation> {
        s.compose(self)?.compose(&s.inverse())
    }

    /// Multiplicative order: lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        let mut result = 1usize;
        for cycle in self.cycles_with_fixed_points() {
            result = lcm(result, cycle.len());
        }
        result
    }

    fn cycles_with_fixed_points(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Nontrivial cycles, each starting at its least point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed_points()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }

    /// 1-indexed cycle notation; the identity prints as `"()"`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A finite permutation group with its full element set enumerated.
///
/// `elements` is sorted lexicographically on image words, so `elements[0]` is
/// always the identity and every "least element" choice is reproducible.
/// Equality compares degree and element sets; generating sets are not part of
/// the group's identity.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::closure(degree, Vec::new()).expect("trivial group")
    }

    /// Enumerates the group generated by `gens` under the default element cap.
    pub fn closure(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::closure_with_cap(degree, gens, DEFAULT_ELEMENT_CAP)
    }

    /// Enumerates `⟨gens⟩` by breadth-first products; errors (rather than
    /// truncating) if more than `cap` elements appear.
    pub fn closure_with_cap(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let identity = Permutation::identity(degree);
        let mut index = HashMap::new();
        index.insert(identity.clone(), 0usize);
        let mut elements = vec![identity];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            let current = elements[i].clone();
            for g in &gens {
                let next = current.compose(g).expect("degrees checked");
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::Exceeded(format!(
                            "group closure exceeded cap of {cap} elements"
                        )));
                    }
                    index.insert(next.clone(), elements.len());
                    frontier.push(elements.len());
                    elements.push(next);
                }
            }
        }
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(PermGroup {
            degree,
            generators: gens,
            elements,
            index,
        })
    }

    /// Wraps a known-closed element set as a group, recomputing a small
    /// generating set greedily. The greedy closure doubles as a check that the
    /// set really is closed.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for e in &elements {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch(degree, e.degree()));
            }
        }
        elements.sort();
        elements.dedup();
        if elements.is_empty() || !elements[0].is_identity() {
            return Err(Error::InvalidPermutation(
                "element set must contain the identity".into(),
            ));
        }
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        // Greedy generators: repeatedly adjoin the least element not yet
        // generated. Closure escaping the input set means it was not a group.
        let mut generators: Vec<Permutation> = Vec::new();
        let mut covered = vec![false; elements.len()];
        covered[0] = true;
        let mut covered_count = 1usize;
        while covered_count < elements.len() {
            let next = covered
                .iter()
                .position(|&c| !c)
                .expect("uncovered element exists");
            generators.push(elements[next].clone());
            // Close the covered set under right-multiplication by the new list.
            let mut stack: Vec<usize> = (0..elements.len()).filter(|&i| covered[i]).collect();
            while let Some(i) = stack.pop() {
                for g in &generators {
                    let prod = elements[i].compose(g).expect("degrees checked");
                    match index.get(&prod) {
                        Some(&j) => {
                            if !covered[j] {
                                covered[j] = true;
                                covered_count += 1;
                                stack.push(j);
                            }
                        }
                        None => {
                            return Err(Error::InvalidPermutation(
                                "element set is not closed under composition".into(),
                            ))
                        }
                    }
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// True iff every element of `self` belongs to `g`.
    pub fn is_subgroup_of(&self, g: &PermGroup) -> Result<bool> {
        if self.degree != g.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree));
        }
        Ok(self.elements.iter().all(|e| g.contains(e)))
    }

    /// True iff `self ⊆ g` and `x n x⁻¹ ∈ self` for every generator `x` of `g`
    /// and every `n ∈ self`. Checking generators suffices: conjugation by a
    /// word reduces to conjugation by its letters, and in a finite group
    /// `xNx⁻¹ ⊆ N` forces equality, which covers inverse letters too.
    pub fn is_normal_in(&self, g: &PermGroup) -> Result<bool> {
        if !self.is_subgroup_of(g)? {
            return Ok(false);
        }
        for x in &g.generators {
            for n in &self.elements {
                if !self.contains(&n.conjugated_by(x)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The subgroup of elements commuting with every generator (equivalently,
    /// with every element).
    pub fn center(&self) -> PermGroup {
        let central: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|e| {
                self.generators.iter().all(|g| {
                    e.compose(g).expect("same degree") == g.compose(e).expect("same degree")
                })
            })
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, central).expect("center is a subgroup")
    }

    /// Quotient by a normal subgroup, materialized as a coset table.
    pub fn quotient(&self, n: &PermGroup) -> Result<CosetGroup> {
        if !n.is_normal_in(self)? {
            return Err(Error::NotNormal(
                "quotient requires a normal subgroup".into(),
            ));
        }
        let mut coset_index: HashMap<Permutation, usize> = HashMap::new();
        let mut reps: Vec<Permutation> = Vec::new();
        // Elements are scanned in canonical order, so each coset is first seen
        // at its least element, which becomes the representative.
        for e in &self.elements {
            if coset_index.contains_key(e) {
                continue;
            }
            let id = reps.len();
            for h in &n.elements {
                coset_index.insert(e.compose(h).expect("same degree"), id);
            }
            reps.push(e.clone());
        }
        let k = reps.len();
        let mut table = vec![0usize; k * k];
        for i in 0..k {
            for j in 0..k {
                let prod = reps[i].compose(&reps[j]).expect("same degree");
                table[i * k + j] = coset_index[&prod];
            }
        }
        Ok(CosetGroup {
            parent: self.clone(),
            normal: n.clone(),
            reps,
            coset_index,
            table,
        })
    }

    /// Preimage of `Z(self / n)` under the quotient map: the subgroup of
    /// elements whose coset is central. With `n` trivial this is the center.
    pub fn center_preimage(&self, n: &PermGroup) -> Result<PermGroup> {
        if n.is_trivial() {
            if !n.is_subgroup_of(self)? {
                return Err(Error::NotSubgroup("trivial subgroup degree mismatch".into()));
            }
            return Ok(self.center());
        }
        let q = self.quotient(n)?;
        let central = q.central_coset_ids();
        let is_central = {
            let mut flags = vec![false; q.order()];
            for id in central {
                flags[id] = true;
            }
            flags
        };
        let members: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|e| is_central[q.coset_of(e).expect("element of parent")])
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, members)
    }

    /// `⟨x⟩` for `x` a member of this group.
    pub fn cyclic_subgroup(&self, x: &Permutation) -> Result<PermGroup> {
        if !self.contains(x) {
            return Err(Error::NotInGroup);
        }
        let mut elements = vec![Permutation::identity(self.degree)];
        let mut power = x.clone();
        while !power.is_identity() {
            elements.push(power.clone());
            power = power.compose(x).expect("same degree");
        }
        PermGroup::from_elements(self.degree, elements)
    }

    /// True iff some element has order equal to the group order.
    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|e| e.order() == n)
    }

    /// Checks that conjugate elements of the normal subgroup `n` always
    /// generate the same cyclic subgroup. Quantifying over generators of
    /// `self` is equivalent to quantifying over all of `self`.
    pub fn conjugate_generation_check(&self, n: &PermGroup) -> Result<bool> {
        if !n.is_normal_in(self)? {
            return Err(Error::NotNormal(
                "conjugate generation check requires a normal subgroup".into(),
            ));
        }
        for x in &n.elements {
            let gen_x = n.cyclic_subgroup(x)?;
            for s in &self.generators {
                let y = x.conjugated_by(s)?;
                if n.cyclic_subgroup(&y)? != gen_x {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Element-wise intersection of two groups on the same points.
    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let members: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|e| other.contains(e))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, members)
    }

    /// Full multiplication table over element indices, used by enumeration
    /// kernels. Entry `(i, j)` is the index of `elements[i] ∘ elements[j]`.
    pub(crate) fn multiplication_table(&self) -> MulTable {
        let n = self.order();
        assert!(n <= u16::MAX as usize + 1, "table index overflow");
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = self.elements[i].compose(&self.elements[j]).expect("same degree");
                mul[i * n + j] = self.index[&prod] as u16;
            }
        }
        let inv: Vec<u16> = self
            .elements
            .iter()
            .map(|e| self.index[&e.inverse()] as u16)
            .collect();
        MulTable { n, mul, inv }
    }
}

/// Multiplication table of a fully enumerated group, in element-index space.
pub(crate) struct MulTable {
    pub n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl MulTable {
    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// `a⁻¹ · x · a` in index space.
    #[inline]
    pub fn conj(&self, x: u16, a: u16) -> u16 {
        self.mul(self.mul(self.inv(a), x), a)
    }
}

/// A quotient group `parent / normal` as canonical coset representatives plus
/// a multiplication table.
#[derive(Clone, Debug)]
pub struct CosetGroup {
    parent: PermGroup,
    normal: PermGroup,
    reps: Vec<Permutation>,
    coset_index: HashMap<Permutation, usize>,
    table: Vec<usize>,
}

impl CosetGroup {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn normal_subgroup(&self) -> &PermGroup {
        &self.normal
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Canonical (least-element) representatives; index 0 is the identity coset.
    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.reps.len() + j]
    }

    pub fn coset_of(&self, e: &Permutation) -> Option<usize> {
        self.coset_index.get(e).copied()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut order = 1;
        let mut acc = i;
        while acc != 0 {
            acc = self.mul(acc, i);
            order += 1;
        }
        order
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|i| self.element_order(i) == n)
    }

    pub(crate) fn central_coset_ids(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&z| (0..n).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }
}

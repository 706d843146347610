//! Named constructors for the groups and actions used across the tool and
//! its test suites, plus a small spec-string parser for the CLI
//! (`"dihedral:4"`, `"direct_product(cyclic:2,cyclic:3)"`, `"regular(...)"`).

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::gl::{self, FiniteField};
use crate::perm::{PermGroup, Permutation};

/// Degree cap for regular-style constructions.
const REGULAR_POINT_CAP: usize = 100_000;

pub struct EntryInfo {
    pub name: &'static str,
    pub signature: &'static str,
    pub note: &'static str,
}

/// All catalog entries with their parameter signatures.
pub fn entries() -> Vec<EntryInfo> {
    vec![
        EntryInfo { name: "cyclic", signature: "cyclic:n", note: "C_n rotating n points" },
        EntryInfo { name: "cyclic_regular", signature: "cyclic_regular:n", note: "C_n acting on itself" },
        EntryInfo { name: "symmetric", signature: "symmetric:n", note: "S_n on n points" },
        EntryInfo { name: "alternating", signature: "alternating:n", note: "A_n on n points" },
        EntryInfo { name: "dihedral", signature: "dihedral:n (n ≥ 3)", note: "symmetries of the n-gon on its vertices" },
        EntryInfo { name: "dihedral_regular", signature: "dihedral_regular:n (n ≥ 3)", note: "D_n acting on its 2n elements" },
        EntryInfo { name: "quaternion8_regular", signature: "quaternion8_regular", note: "Q_8 acting on its 8 elements" },
        EntryInfo { name: "v4_transitive", signature: "v4_transitive", note: "Klein four-group acting transitively on 4 points" },
        EntryInfo { name: "elementary_abelian", signature: "elementary_abelian:p,k", note: "(C_p)^k translating F_p^k" },
        EntryInfo { name: "gl", signature: "gl:n,q", note: "GL_n(F_q) on the q^n vectors" },
        EntryInfo { name: "direct_product", signature: "direct_product(spec,spec)", note: "product group on the disjoint union of points" },
        EntryInfo { name: "regular", signature: "regular(spec)", note: "the inner group acting on itself by right multiplication" },
    ]
}

fn finish(action: GroupAction) -> Result<GroupAction> {
    assert!(action.is_faithful(), "catalog actions are faithful");
    Ok(action)
}

pub fn cyclic(n: usize) -> Result<GroupAction> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic needs n ≥ 1".into()));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![Permutation::from_cycles(n, &[(0..n).collect()])?]
    };
    finish(GroupAction::natural(PermGroup::closure(n, gens)?))
}

pub fn cyclic_regular(n: usize) -> Result<GroupAction> {
    let a = cyclic(n)?;
    regular_action(a.group())
}

pub fn symmetric(n: usize) -> Result<GroupAction> {
    if n == 0 {
        return Err(Error::InvalidInput("symmetric needs n ≥ 1".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
    }
    finish(GroupAction::natural(PermGroup::closure(n, gens)?))
}

pub fn alternating(n: usize) -> Result<GroupAction> {
    if n == 0 {
        return Err(Error::InvalidInput("alternating needs n ≥ 1".into()));
    }
    // 3-cycles (0 1 k) generate A_n.
    let gens: Vec<Permutation> = (2..n)
        .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
        .collect::<Result<_>>()?;
    finish(GroupAction::natural(PermGroup::closure(n, gens)?))
}

/// Vertices are numbered 0..n counterclockwise; the rotation sends `i` to
/// `i+1 mod n` and the reflection fixes vertex 0.
pub fn dihedral(n: usize) -> Result<GroupAction> {
    if n < 3 {
        return Err(Error::InvalidInput(
            "dihedral needs n ≥ 3 to act faithfully on the vertices".into(),
        ));
    }
    let rotation = Permutation::from_cycles(n, &[(0..n).collect()])?;
    let reflection = Permutation::from_images((0..n).map(|j| (n - j) % n).collect())?;
    finish(GroupAction::natural(PermGroup::closure(
        n,
        vec![rotation, reflection],
    )?))
}

pub fn dihedral_regular(n: usize) -> Result<GroupAction> {
    let a = dihedral(n)?;
    regular_action(a.group())
}

/// Q_8 = {±1, ±i, ±j, ±k} on its own elements by right multiplication, in
/// the element order [1, -1, i, -i, j, -j, k, -k].
pub fn quaternion8_regular() -> Result<GroupAction> {
    // Axes: 0 = 1, 1 = i, 2 = j, 3 = k; an element is (axis, negated).
    fn axis_mul(a: usize, b: usize) -> (usize, bool) {
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let index = |axis: usize, neg: bool| 2 * axis + usize::from(neg);
    let right_mul = |g_axis: usize, g_neg: bool| -> Permutation {
        let images: Vec<usize> = (0..8)
            .map(|x| {
                let (axis, neg) = (x / 2, x % 2 == 1);
                let (r_axis, flip) = axis_mul(axis, g_axis);
                index(r_axis, neg ^ g_neg ^ flip)
            })
            .collect();
        Permutation::from_images(images).expect("right multiplication is a bijection")
    };
    let group = PermGroup::closure(8, vec![right_mul(1, false), right_mul(2, false)])?;
    assert_eq!(group.order(), 8);
    finish(GroupAction::natural(group))
}

/// The Klein four-group as the regular subgroup of S_4.
pub fn v4_transitive() -> Result<GroupAction> {
    let gens = vec![
        Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
        Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
    ];
    finish(GroupAction::natural(PermGroup::closure(4, gens)?))
}

/// `(C_p)^k` translating the `p^k` vectors of `F_p^k`.
pub fn elementary_abelian(p: usize, k: usize) -> Result<GroupAction> {
    if !(2..).contains(&p) || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidInput("elementary_abelian needs k ≥ 1".into()));
    }
    let points = p
        .checked_pow(k as u32)
        .filter(|&m| m <= REGULAR_POINT_CAP)
        .ok_or_else(|| Error::Exceeded(format!("{p}^{k} points is too large")))?;
    let gens: Vec<Permutation> = (0..k)
        .map(|i| {
            let step = p.pow(i as u32);
            let images: Vec<usize> = (0..points)
                .map(|v| {
                    let digit = v / step % p;
                    if digit + 1 == p {
                        v - digit * step
                    } else {
                        v + step
                    }
                })
                .collect();
            Permutation::from_images(images).expect("translation is a bijection")
        })
        .collect();
    finish(GroupAction::natural(PermGroup::closure(points, gens)?))
}

pub fn gl_action(n: usize, q: u64) -> Result<GroupAction> {
    let (p, k) = gl::prime_power_decompose(q)
        .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
    let field = FiniteField::new(p, k)?;
    finish(gl::gl_as_action(n, &field)?)
}

/// Right-regular representation: points are the group's elements in
/// canonical order and `g` sends point `i` to the index of `elements[i]·g`.
pub fn regular_action(g: &PermGroup) -> Result<GroupAction> {
    let n = g.order();
    if n > REGULAR_POINT_CAP {
        return Err(Error::Exceeded(format!(
            "regular representation of a group of order {n} is too large"
        )));
    }
    let perms: Vec<Permutation> = g
        .elements()
        .iter()
        .map(|gk| {
            let images: Vec<usize> = g
                .elements()
                .iter()
                .map(|ei| {
                    g.element_index(&ei.compose(gk).expect("same degree"))
                        .expect("closed")
                })
                .collect();
            Permutation::from_images(images).expect("right multiplication is a bijection")
        })
        .collect();
    let group = PermGroup::from_elements(n, perms)?;
    finish(GroupAction::natural(group))
}

/// The product of two natural actions on the disjoint union of their points.
pub fn direct_product(a: &GroupAction, b: &GroupAction) -> Result<GroupAction> {
    for part in [a, b] {
        if part.group().degree() != part.point_count() {
            return Err(Error::InvalidInput(
                "direct products need natural actions".into(),
            ));
        }
    }
    let (ma, mb) = (a.point_count(), b.point_count());
    let m = ma + mb;
    let mut gens = Vec::new();
    for g in a.group().generators() {
        let mut images: Vec<usize> = g.images().to_vec();
        images.extend(ma..m);
        gens.push(Permutation::from_images(images)?);
    }
    for g in b.group().generators() {
        let mut images: Vec<usize> = (0..ma).collect();
        images.extend(g.images().iter().map(|&v| v + ma));
        gens.push(Permutation::from_images(images)?);
    }
    let group = PermGroup::closure(m, gens)?;
    assert_eq!(group.order(), a.group().order() * b.group().order());
    finish(GroupAction::natural(group))
}

/// Parses a catalog spec string and builds the action.
pub fn build(spec: &str) -> Result<GroupAction> {
    let spec = spec.trim();
    if let Some(open) = spec.find('(') {
        let name = &spec[..open];
        let inner = spec
            .strip_suffix(')')
            .map(|s| &s[open + 1..])
            .ok_or_else(|| Error::InvalidInput(format!("unbalanced parentheses in {spec:?}")))?;
        let parts = split_top_level(inner)?;
        return match (name, parts.as_slice()) {
            ("direct_product", [x, y]) => direct_product(&build(x)?, &build(y)?),
            ("regular", [x]) => regular_action(build(x)?.group()),
            _ => Err(Error::InvalidInput(format!(
                "unknown or mis-parameterized catalog entry {spec:?}"
            ))),
        };
    }
    let (name, params) = match spec.split_once(':') {
        Some((name, args)) => {
            let params: Vec<usize> = args
                .split(',')
                .map(|a| {
                    a.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidInput(format!("bad parameter {a:?} in {spec:?}")))
                })
                .collect::<Result<_>>()?;
            (name, params)
        }
        None => (spec, Vec::new()),
    };
    match (name, params.as_slice()) {
        ("cyclic", [n]) => cyclic(*n),
        ("cyclic_regular", [n]) => cyclic_regular(*n),
        ("symmetric", [n]) => symmetric(*n),
        ("alternating", [n]) => alternating(*n),
        ("dihedral", [n]) => dihedral(*n),
        ("dihedral_regular", [n]) => dihedral_regular(*n),
        ("quaternion8_regular", []) => quaternion8_regular(),
        ("v4_transitive", []) => v4_transitive(),
        ("elementary_abelian", [p, k]) => elementary_abelian(*p, *k),
        ("gl", [n, q]) => gl_action(*n, *q as u64),
        _ => Err(Error::InvalidInput(format!(
            "unknown or mis-parameterized catalog entry {spec:?}"
        ))),
    }
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::InvalidInput(format!("unbalanced parentheses in {s:?}")))?
            }
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::InvalidInput(format!("unbalanced parentheses in {s:?}")));
    }
    parts.push(s[start..].trim());
    Ok(parts)
}

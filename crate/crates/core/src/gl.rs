//! Finite fields `F_q`, the action of `GL_n(F_q)` on `F_q^n`, a distinguishing
//! 2-coloring of that action for `q > n + 1`, and a streaming verifier that
//! checks a coloring against every invertible matrix without materializing a
//! permutation group.
//!
//! Field elements are encoded as `0..q` via base-`p` digits of their
//! polynomial coefficients (constant term in the least significant digit).
//! Vectors are ordered lexicographically with the first coordinate most
//! significant, which fixes the point indexing used by colorings.

use crate::action::GroupAction;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use std::fmt;

/// Largest field size accepted by the constructor.
pub const FIELD_SIZE_CAP: u64 = 1 << 20;
/// Largest point set (`q^n`) for colorings of the vector-space action.
pub const POINT_CAP: u64 = 10_000_000;
/// Largest `|GL_n(F_q)|` the streaming verifier will scan.
pub const STREAM_MATRIX_CAP: u128 = 100_000_000;
/// Caps for materializing the action as an explicit permutation group.
pub const ACTION_ORDER_CAP: u128 = 200_000;
pub const ACTION_POINT_CAP: u64 = 10_000;

/// The finite field `F_(p^k)`, with all arithmetic on canonical encodings.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus, coefficients by ascending degree (len k+1).
    modulus: Vec<u64>,
    primitive: u64,
    /// Discrete-log tables for extension fields (empty when k = 1).
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

/// Writes `q` as `p^k` with `p` prime, if possible.
pub fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).find(|d| q.is_multiple_of(*d)).expect("q ≥ 2 has a factor");
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Some((p, k))
    } else {
        None
    }
}

// Dense polynomial arithmetic over F_p, coefficients by ascending degree.
fn poly_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_degree(b).expect("divisor must be nonzero");
    let lead_inv = mod_inverse(b[db], p);
    let mut r = a.to_vec();
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        for i in 0..=db {
            let sub = factor * b[i] % p;
            r[dr - db + i] = (r[dr - db + i] + p - sub) % p;
        }
    }
    r
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a ≢ 0.
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn is_irreducible(candidate: &[u64], p: u64) -> bool {
    let k = poly_degree(candidate).expect("monic candidate");
    for d in 1..=k / 2 {
        // All monic divisor candidates of degree d.
        let count = u64::pow(p, d as u32);
        for j in 0..count {
            let mut divisor = vec![0u64; d + 1];
            divisor[d] = 1;
            let mut rest = j;
            for coef in divisor.iter_mut().take(d) {
                *coef = rest % p;
                rest /= p;
            }
            if poly_degree(&poly_rem(candidate, &divisor, p)).is_none() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Constructs `F_(p^k)`. For `k > 1` the modulus is the least monic
    /// irreducible polynomial in lexicographic coefficient order (highest
    /// non-leading coefficient most significant).
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidInput("extension degree must be ≥ 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= FIELD_SIZE_CAP)
            .ok_or_else(|| {
                Error::InvalidInput(format!("field size {p}^{k} exceeds {FIELD_SIZE_CAP}"))
            })?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            Self::least_irreducible(p, k)
        };
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.primitive = field.find_primitive();
        if k > 1 {
            field.build_log_tables();
        }
        Ok(field)
    }

    fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
        let count = u64::pow(p, k);
        for j in 0..count {
            let mut candidate = vec![0u64; k as usize + 1];
            candidate[k as usize] = 1;
            // Highest non-leading coefficient carries the most significant
            // digit of j, so j-order is "x^k + c_{k-1} x^{k-1} + … + c_0"
            // with (c_{k-1}, …, c_0) ascending lexicographically.
            let mut rest = j;
            for coef in candidate.iter_mut().take(k as usize) {
                *coef = rest % p;
                rest /= p;
            }
            if is_irreducible(&candidate, p) {
                return candidate;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    fn find_primitive(&self) -> u64 {
        let group_order = self.q - 1;
        if group_order == 1 {
            return 1;
        }
        let factors = prime_factors(group_order);
        for e in 1..self.q {
            if factors
                .iter()
                .all(|&f| self.pow_raw(e, group_order / f) != 1)
            {
                return e;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn build_log_tables(&mut self) {
        let order = (self.q - 1) as usize;
        self.exp = vec![0; order];
        self.log = vec![0; self.q as usize];
        let mut acc = 1u64;
        for i in 0..order {
            self.exp[i] = acc as u32;
            self.log[acc as usize] = i as u32;
            acc = self.mul_raw(acc, self.primitive);
        }
        debug_assert_eq!(acc, 1, "primitive element has order q-1");
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    /// The field size `q = p^k`.
    pub fn size(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients by ascending degree (monic, length k+1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The least element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> u64 {
        self.primitive
    }

    fn digits(&self, e: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.k as usize];
        let mut rest = e;
        for d in digits.iter_mut() {
            *d = rest % self.p;
            rest /= self.p;
        }
        digits
    }

    fn encode_digits(&self, digits: &[u64]) -> u64 {
        let mut e = 0u64;
        for &d in digits.iter().rev() {
            e = e * self.p + d;
        }
        e
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        // Coefficient-wise addition: base-p digits without carry.
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode_digits(&sum)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let da = self.digits(a);
        let neg: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        self.encode_digits(&neg)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let order = (self.q - 1) as usize;
        let i = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[i % order] as u64
    }

    /// Product by direct polynomial arithmetic; used to bootstrap the log
    /// tables and as the k = 1 path.
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce by the monic modulus.
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for t in 0..k {
                let sub = c * self.modulus[t] % self.p;
                prod[i - k + t] = (prod[i - k + t] + self.p - sub) % self.p;
            }
        }
        self.encode_digits(&prod[..k])
    }

    fn pow_raw(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        if self.k == 1 {
            return mod_inverse(a, self.p);
        }
        let order = (self.q - 1) as usize;
        let i = self.log[a as usize] as usize;
        self.exp[(order - i) % order] as u64
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u64) -> u64 {
        assert!(a != 0);
        let mut acc = a;
        let mut order = 1;
        while acc != 1 {
            acc = self.mul_raw(acc, a);
            order += 1;
        }
        order
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// An `n × n` matrix over a finite field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub entries: Vec<u64>,
}

impl Matrix {
    fn from_rows(rows: &[(usize, Vec<u64>)]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (_, coords) in rows {
            entries.extend_from_slice(coords);
        }
        Matrix { n, entries }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.entries[i * self.n + j] == u64::from(i == j)))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let parts: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n - q^i)`, saturating on overflow.
pub fn gl_order(n: usize, q: u64) -> u128 {
    let qn = (0..n).fold(1u128, |acc, _| acc.saturating_mul(q as u128));
    let mut order = 1u128;
    let mut qi = 1u128;
    for _ in 0..n {
        order = order.saturating_mul(qn.saturating_sub(qi));
        qi = qi.saturating_mul(q as u128);
    }
    order
}

/// Index of a coordinate vector: first coordinate most significant.
pub fn vector_index(f: &FiniteField, coords: &[u64]) -> usize {
    coords
        .iter()
        .fold(0usize, |acc, &c| acc * f.size() as usize + c as usize)
}

/// Coordinates of the vector with the given index.
pub fn vector_coords(f: &FiniteField, n: usize, index: usize) -> Vec<u64> {
    let q = f.size() as usize;
    let mut coords = vec![0u64; n];
    let mut rest = index;
    for c in coords.iter_mut().rev() {
        *c = (rest % q) as u64;
        rest /= q;
    }
    coords
}

fn checked_point_count(n: usize, f: &FiniteField) -> Result<usize> {
    let mut count = 1u64;
    for _ in 0..n {
        count = count
            .checked_mul(f.size())
            .filter(|&c| c <= POINT_CAP)
            .ok_or_else(|| {
                Error::Exceeded(format!("{}^{n} points exceeds {POINT_CAP}", f.size()))
            })?;
    }
    Ok(count as usize)
}

/// The 2-coloring of `F_q^n` that distinguishes the `GL_n(F_q)` action when
/// `q > n + 1`: the `n(n+1)/2` vectors `α^i e_j` for `0 ≤ i < j ≤ n` get
/// color 2 (blue) and everything else color 1, where `α` is the canonical
/// primitive element.
pub fn gl_distinguishing_coloring(n: usize, f: &FiniteField) -> Result<Coloring> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be ≥ 1".into()));
    }
    if f.size() <= n as u64 + 1 {
        return Err(Error::InvalidInput(format!(
            "the construction requires more than n+1 = {} field elements, got q = {}",
            n + 1,
            f.size()
        )));
    }
    let points = checked_point_count(n, f)?;
    let mut assignment = vec![1usize; points];
    let mut blue = Vec::new();
    let alpha = f.primitive_element();
    for j in 1..=n {
        let mut scale = 1u64; // α^i
        for _ in 0..j {
            let mut coords = vec![0u64; n];
            coords[j - 1] = scale;
            blue.push(vector_index(f, &coords));
            scale = f.mul(scale, alpha);
        }
    }
    let expected = n * (n + 1) / 2;
    let mut dedup = blue.clone();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != expected {
        return Err(Error::Internal(format!(
            "blue set has {} distinct vectors, expected {expected}",
            dedup.len()
        )));
    }
    for idx in blue {
        assignment[idx] = 2;
    }
    Coloring::new(2, assignment)
}

/// Outcome of streaming a coloring against all of `GL_n(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlVerification {
    /// Only the identity matrix preserves the coloring.
    Distinguishing,
    /// A nonidentity preserver; the canonically least one in row order.
    Preserver(Matrix),
}

/// Streams every invertible matrix whose first row index lies in `range`,
/// rows enumerated in ascending vector order with an incremental span mask.
/// The visitor returns `true` to stop the stream.
fn stream_invertible<F>(n: usize, f: &FiniteField, range: std::ops::Range<usize>, visit: &mut F)
where
    F: FnMut(&[(usize, Vec<u64>)]) -> bool,
{
    let points = (0..n).fold(1usize, |acc, _| acc * f.size() as usize);
    let mut rows: Vec<(usize, Vec<u64>)> = Vec::with_capacity(n);
    let mut span_marks = vec![0u64; points.div_ceil(64)];
    span_marks[0] |= 1; // the zero vector
    let span_list = vec![vec![0u64; n]];
    recurse(n, f, points, range, &mut rows, &span_list, &span_marks, visit);

    #[allow(clippy::too_many_arguments)]
    fn recurse<F>(
        n: usize,
        f: &FiniteField,
        points: usize,
        range: std::ops::Range<usize>,
        rows: &mut Vec<(usize, Vec<u64>)>,
        span_list: &[Vec<u64>],
        span_marks: &[u64],
        visit: &mut F,
    ) -> bool
    where
        F: FnMut(&[(usize, Vec<u64>)]) -> bool,
    {
        let level = rows.len();
        let candidates = if level == 0 { range.clone() } else { 1..points };
        for idx in candidates {
            if span_marks[idx / 64] & (1u64 << (idx % 64)) != 0 {
                continue;
            }
            let coords = vector_coords(f, n, idx);
            rows.push((idx, coords));
            let stop = if level + 1 == n {
                visit(rows)
            } else {
                let cand = &rows[level].1;
                let mut child_marks = span_marks.to_vec();
                let mut child_list = span_list.to_vec();
                for t in 1..f.size() {
                    let scaled: Vec<u64> = cand.iter().map(|&c| f.mul(t, c)).collect();
                    for base in span_list {
                        let sum: Vec<u64> = base
                            .iter()
                            .zip(&scaled)
                            .map(|(&a, &b)| f.add(a, b))
                            .collect();
                        let s_idx = vector_index(f, &sum);
                        child_marks[s_idx / 64] |= 1u64 << (s_idx % 64);
                        child_list.push(sum);
                    }
                }
                recurse(
                    n,
                    f,
                    points,
                    range.clone(),
                    rows,
                    &child_list,
                    &child_marks,
                    visit,
                )
            };
            rows.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

fn scan_block(
    n: usize,
    f: &FiniteField,
    coloring: &Coloring,
    check_points: &[(usize, Vec<u64>)],
    range: std::ops::Range<usize>,
) -> Option<Matrix> {
    let identity_rows: Vec<usize> = (0..n)
        .map(|i| {
            let mut coords = vec![0u64; n];
            coords[i] = 1;
            vector_index(f, &coords)
        })
        .collect();
    let mut found = None;
    stream_invertible(n, f, range, &mut |rows| {
        if rows.iter().map(|(idx, _)| *idx).eq(identity_rows.iter().copied()) {
            return false;
        }
        for (v_idx, v_coords) in check_points {
            let mut image = 0usize;
            for (_, row) in rows {
                let mut dot = 0u64;
                for (a, b) in row.iter().zip(v_coords) {
                    dot = f.add(dot, f.mul(*a, *b));
                }
                image = image * f.size() as usize + dot as usize;
            }
            if coloring.color_of(image) != coloring.color_of(*v_idx) {
                return false;
            }
        }
        found = Some(Matrix::from_rows(rows));
        true
    });
    found
}

/// Checks whether only the identity of `GL_n(F_q)` preserves `c`, streaming
/// over all invertible matrices. A matrix preserves a coloring iff every
/// color class maps into itself, and a bijection that fixes all classes but
/// the largest fixes that one too, so only points outside the largest class
/// are tested. With `threads > 1` the first-row range is split into
/// contiguous blocks; the reported preserver is still the canonically least.
pub fn verify_gl_coloring(
    n: usize,
    f: &FiniteField,
    c: &Coloring,
    threads: usize,
) -> Result<GlVerification> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be ≥ 1".into()));
    }
    let points = checked_point_count(n, f)?;
    if c.point_count() != points {
        return Err(Error::InvalidColoring(format!(
            "coloring covers {} points but the space has {points}",
            c.point_count()
        )));
    }
    let order = gl_order(n, f.size());
    if order > STREAM_MATRIX_CAP {
        return Err(Error::Exceeded(format!(
            "|GL_{n}(F_{})| = {order} exceeds the streaming cap {STREAM_MATRIX_CAP}",
            f.size()
        )));
    }
    // All points outside one largest color class.
    let mut class_sizes = vec![0usize; c.num_colors() + 1];
    for x in 0..points {
        class_sizes[c.color_of(x)] += 1;
    }
    let largest = (1..=c.num_colors())
        .max_by_key(|&color| class_sizes[color])
        .expect("at least one color");
    let check_points: Vec<(usize, Vec<u64>)> = (0..points)
        .filter(|&x| c.color_of(x) != largest)
        .map(|x| (x, vector_coords(f, n, x)))
        .collect();

    let threads = threads.max(1);
    if threads == 1 {
        return Ok(match scan_block(n, f, c, &check_points, 1..points) {
            None => GlVerification::Distinguishing,
            Some(m) => GlVerification::Preserver(m),
        });
    }
    let candidates = points - 1;
    let chunk = candidates.div_ceil(threads);
    let ranges: Vec<std::ops::Range<usize>> = (0..threads)
        .map(|t| {
            let lo = 1 + t * chunk;
            let hi = (lo + chunk).min(points);
            lo..hi.max(lo)
        })
        .collect();
    let check_points = &check_points;
    let results: Vec<Option<Matrix>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| scope.spawn(move || scan_block(n, f, c, check_points, range)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan thread")).collect()
    });
    // Blocks are ordered by first-row index, so the first hit is least.
    Ok(match results.into_iter().flatten().next() {
        None => GlVerification::Distinguishing,
        Some(m) => GlVerification::Preserver(m),
    })
}

/// Materializes the action of `GL_n(F_q)` on the `q^n` vectors as an
/// explicit permutation group action, for use with the exact search.
pub fn gl_as_action(n: usize, f: &FiniteField) -> Result<GroupAction> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be ≥ 1".into()));
    }
    let order = gl_order(n, f.size());
    let points = checked_point_count(n, f)?;
    if order > ACTION_ORDER_CAP
        || points as u64 > ACTION_POINT_CAP
        || order.saturating_mul(points as u128) > 20_000_000
    {
        return Err(Error::Exceeded(format!(
            "GL_{n}(F_{}) with {order} elements on {points} points is too large to \
             materialize; use the streaming verifier instead",
            f.size()
        )));
    }
    let all_coords: Vec<Vec<u64>> = (0..points).map(|i| vector_coords(f, n, i)).collect();
    let mut perms = Vec::with_capacity(order as usize);
    stream_invertible(n, f, 1..points, &mut |rows| {
        let images: Vec<usize> = all_coords
            .iter()
            .map(|v| {
                let mut image = 0usize;
                for (_, row) in rows {
                    let mut dot = 0u64;
                    for (a, b) in row.iter().zip(v) {
                        dot = f.add(dot, f.mul(*a, *b));
                    }
                    image = image * f.size() as usize + dot as usize;
                }
                image
            })
            .collect();
        perms.push(Permutation::from_images(images).expect("invertible matrix permutes vectors"));
        false
    });
    debug_assert_eq!(perms.len() as u128, order);
    let group = PermGroup::from_elements(points, perms)?;
    Ok(GroupAction::natural(group))
}

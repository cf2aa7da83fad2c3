//! Byte-structured linear codes over a [`FiniteRing`]: spans of generator
//! matrices and brute-force duals under the byte-reversed inner product.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::rings::{FiniteRing, RingElement};

/// Default bound on `ℓ^k` coefficient tuples for [`Code::span`] and on
/// `ℓ^N` vectors for brute-force sweeps.
pub const DEFAULT_MAX_SWEEP: u64 = 1 << 24;

const SWEEP_CHUNK: u64 = 1 << 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("invalid byte layout: {0}")]
    InvalidLayout(String),
    #[error("generator row {row} has length {found}, expected {expected}")]
    DimensionMismatch { row: usize, expected: usize, found: usize },
    #[error("element index {index} is out of range for a ring of order {order}")]
    ElementOutOfRange { index: u32, order: usize },
    #[error("{what} needs {required} steps, above the limit of {limit}")]
    SizeLimitExceeded { what: &'static str, required: u128, limit: u64 },
    #[error("vector length {found} does not match the layout length {expected}")]
    LayoutMismatch { expected: usize, found: usize },
}

/// Bounds on the brute-force enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of coefficient tuples `ℓ^k` when spanning.
    pub max_span_tuples: u64,
    /// Maximum number of ambient vectors `ℓ^N` (or `ℓ^b`) swept by duals
    /// and oracles.
    pub max_sweep: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_span_tuples: DEFAULT_MAX_SWEEP, max_sweep: DEFAULT_MAX_SWEEP }
    }
}

impl Limits {
    pub fn with_max_sweep(max_sweep: u64) -> Self {
        Limits { max_span_tuples: max_sweep, max_sweep }
    }

    pub(crate) fn check_sweep(
        &self,
        what: &'static str,
        base: usize,
        exp: usize,
    ) -> Result<u64, CodeError> {
        check_power(what, base, exp, self.max_sweep)
    }
}

fn check_power(what: &'static str, base: usize, exp: usize, limit: u64) -> Result<u64, CodeError> {
    let required = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if required > limit as u128 {
        Err(CodeError::SizeLimitExceeded { what, required, limit })
    } else {
        Ok(required as u64)
    }
}

/// `n` bytes of length `b`, with spotty parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ByteLayout {
    n: usize,
    b: usize,
    t: usize,
}

impl ByteLayout {
    pub fn new(n: usize, b: usize, t: usize) -> Result<Self, CodeError> {
        if n == 0 || b == 0 {
            return Err(CodeError::InvalidLayout(format!("need n >= 1 and b >= 1 (n={n}, b={b})")));
        }
        if t == 0 || t > b {
            return Err(CodeError::InvalidLayout(format!("need 1 <= t <= b (t={t}, b={b})")));
        }
        n.checked_mul(b)
            .ok_or_else(|| CodeError::InvalidLayout("n*b overflows".into()))?;
        Ok(ByteLayout { n, b, t })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Code length `N = n·b`.
    pub fn len(&self) -> usize {
        self.n * self.b
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn with_t(&self, t: usize) -> Result<Self, CodeError> {
        Self::new(self.n, self.b, t)
    }

    pub fn check(&self, v: &[RingElement]) -> Result<(), CodeError> {
        if v.len() == self.len() {
            Ok(())
        } else {
            Err(CodeError::LayoutMismatch { expected: self.len(), found: v.len() })
        }
    }
}

impl fmt::Display for ByteLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} b={} t={}", self.n, self.b, self.t)
    }
}

/// A vector of `N` ring elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword(Vec<RingElement>);

impl Codeword {
    pub fn new(entries: Vec<RingElement>) -> Self {
        Codeword(entries)
    }

    pub fn zero(len: usize) -> Self {
        Codeword(vec![RingElement::ZERO; len])
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        Codeword(indices.iter().copied().map(RingElement).collect())
    }

    pub fn indices(&self) -> Vec<u32> {
        self.0.iter().map(|e| e.0).collect()
    }

    pub fn into_inner(self) -> Vec<RingElement> {
        self.0
    }
}

impl Deref for Codeword {
    type Target = [RingElement];

    fn deref(&self) -> &[RingElement] {
        &self.0
    }
}

impl From<Vec<RingElement>> for Codeword {
    fn from(v: Vec<RingElement>) -> Self {
        Codeword(v)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `Σ_i Σ_j c_{(i,j)} v_{(i,b-j+1)}`: each byte of `c` is paired with the
/// reversal of the matching byte of `v`.
pub fn inner_product(
    ring: &FiniteRing,
    layout: &ByteLayout,
    c: &[RingElement],
    v: &[RingElement],
) -> Result<RingElement, CodeError> {
    layout.check(c)?;
    layout.check(v)?;
    let b = layout.b();
    let mut acc = RingElement::ZERO;
    for (cb, vb) in c.chunks_exact(b).zip(v.chunks_exact(b)) {
        for (x, y) in cb.iter().zip(vb.iter().rev()) {
            acc = ring.add(acc, ring.mul(*x, *y));
        }
    }
    Ok(acc)
}

/// Reverses the coordinates inside every byte.
pub fn reverse_bytes(v: &[RingElement], layout: &ByteLayout) -> Codeword {
    Codeword(v.chunks(layout.b()).flat_map(|byte| byte.iter().rev().copied()).collect())
}

/// Mixed-radix rank with the first coordinate most significant, so that
/// rank order is lexicographic order.
pub(crate) fn rank(v: &[RingElement], order: usize) -> u64 {
    v.iter().fold(0u64, |acc, e| acc * order as u64 + e.0 as u64)
}

pub(crate) fn unrank_into(mut r: u64, order: usize, out: &mut [RingElement]) {
    for slot in out.iter_mut().rev() {
        *slot = RingElement((r % order as u64) as u32);
        r /= order as u64;
    }
}

/// An `R`-submodule of `R^N`, fully enumerated.
#[derive(Debug, Clone)]
pub struct Code {
    ring: Arc<FiniteRing>,
    layout: ByteLayout,
    generator: Vec<Codeword>,
    /// All codewords, lexicographically sorted, flattened with stride `N`.
    words: Vec<RingElement>,
}

impl Code {
    /// All `R`-linear combinations of the generator rows.
    pub fn span(
        ring: Arc<FiniteRing>,
        layout: ByteLayout,
        generator: Vec<Codeword>,
        limits: &Limits,
    ) -> Result<Code, CodeError> {
        let len = layout.len();
        for (row, g) in generator.iter().enumerate() {
            if g.len() != len {
                return Err(CodeError::DimensionMismatch { row, expected: len, found: g.len() });
            }
            if let Some(e) = g.iter().find(|e| !ring.contains(**e)) {
                return Err(CodeError::ElementOutOfRange { index: e.0, order: ring.order() });
            }
        }
        check_power("span", ring.order(), generator.len(), limits.max_span_tuples)?;

        // Folding one row at a time yields exactly the set of all
        // combinations Σ r_i g_i, without revisiting duplicates.
        let mut set: HashSet<Vec<RingElement>> = HashSet::new();
        set.insert(vec![RingElement::ZERO; len]);
        for g in &generator {
            let mut multiples: Vec<Vec<RingElement>> = ring
                .elements()
                .map(|r| g.iter().map(|&x| ring.mul(r, x)).collect())
                .collect();
            multiples.sort();
            multiples.dedup();
            let current: Vec<Vec<RingElement>> = set.iter().cloned().collect();
            for s in &current {
                for m in &multiples {
                    let w: Vec<RingElement> =
                        s.iter().zip(m).map(|(&x, &y)| ring.add(x, y)).collect();
                    set.insert(w);
                }
            }
        }
        let mut sorted: Vec<Vec<RingElement>> = set.into_iter().collect();
        sorted.sort_unstable();
        let words = sorted.into_iter().flatten().collect();
        Ok(Code { ring, layout, generator, words })
    }

    pub fn from_indices(
        ring: Arc<FiniteRing>,
        layout: ByteLayout,
        rows: &[Vec<u32>],
        limits: &Limits,
    ) -> Result<Code, CodeError> {
        let generator = rows.iter().map(|r| Codeword::from_indices(r)).collect();
        Code::span(ring, layout, generator, limits)
    }

    /// The whole ambient space `R^N`, spanned by the unit vectors.
    pub fn full_space(ring: Arc<FiniteRing>, layout: ByteLayout, limits: &Limits) -> Result<Code, CodeError> {
        let len = layout.len();
        let generator = (0..len)
            .map(|i| {
                let mut w = Codeword::zero(len);
                w.0[i] = ring.one();
                w
            })
            .collect();
        Code::span(ring, layout, generator, limits)
    }

    /// Brute-force dual: every `v ∈ R^N` orthogonal to all generator rows
    /// under [`inner_product`].
    pub fn dual(&self, limits: &Limits) -> Result<Code, CodeError> {
        let ring = &*self.ring;
        let order = ring.order();
        let len = self.layout.len();
        let total = limits.check_sweep("dual sweep", order, len)?;

        // ⟨g, v⟩ = Σ_p g_rev[p] v[p], with g_rev the byte-reversed row
        let rows: Vec<Codeword> = self
            .generator
            .iter()
            .map(|g| reverse_bytes(g, &self.layout))
            .filter(|g| g.iter().any(|e| !e.is_zero()))
            .collect();

        let chunks: Vec<Vec<u64>> = sweep(order, len, total, |start, end, v| {
            let mut hits = Vec::new();
            let mut r = start;
            while r < end {
                let orthogonal = rows.iter().all(|g| {
                    g.iter()
                        .zip(v.iter())
                        .fold(RingElement::ZERO, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y)))
                        .is_zero()
                });
                if orthogonal {
                    hits.push(r);
                }
                r += 1;
                if r < end {
                    step(v, order);
                }
            }
            hits
        });
        let ranks: Vec<u64> = chunks.into_iter().flatten().collect();

        let mut words = vec![RingElement::ZERO; ranks.len() * len];
        for (w, &r) in words.chunks_exact_mut(len).zip(&ranks) {
            unrank_into(r, order, w);
        }
        let generator = generating_set(ring, &words, len, ranks.len());
        Ok(Code { ring: self.ring.clone(), layout: self.layout, generator, words })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn layout(&self) -> &ByteLayout {
        &self.layout
    }

    pub fn generator(&self) -> &[Codeword] {
        &self.generator
    }

    /// `|C|`.
    pub fn len(&self) -> usize {
        self.words.len() / self.layout.len()
    }

    /// Never true: every code contains the zero word.
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Codewords in lexicographic order.
    pub fn words(&self) -> impl ExactSizeIterator<Item = &[RingElement]> + Clone + '_ {
        self.words.chunks_exact(self.layout.len())
    }

    pub fn contains(&self, v: &[RingElement]) -> bool {
        let len = self.layout.len();
        if v.len() != len {
            return false;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.words[mid * len..(mid + 1) * len].cmp(v) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Same codewords with a different spotty parameter `t`.
    pub fn with_t(&self, t: usize) -> Result<Code, CodeError> {
        let mut out = self.clone();
        out.layout = self.layout.with_t(t)?;
        Ok(out)
    }

    /// Set equality of the codeword lists (the generators may differ).
    pub fn same_words(&self, other: &Code) -> bool {
        self.layout.len() == other.layout.len() && self.words == other.words
    }
}

/// Sweeps `[0, total)` in parallel chunks; `visit(start, end, v)` receives
/// the chunk range and a buffer already holding the vector of rank `start`.
pub(crate) fn sweep<T, F>(order: usize, len: usize, total: u64, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64, &mut [RingElement]) -> T + Sync,
{
    let chunks = total.div_ceil(SWEEP_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * SWEEP_CHUNK;
            let end = (start + SWEEP_CHUNK).min(total);
            let mut v = vec![RingElement::ZERO; len];
            unrank_into(start, order, &mut v);
            visit(start, end, &mut v)
        })
        .collect()
}

/// Advances `v` to the lexicographically next vector (wrapping to zero).
#[inline]
pub(crate) fn step(v: &mut [RingElement], order: usize) {
    for slot in v.iter_mut().rev() {
        slot.0 += 1;
        if slot.index() < order {
            return;
        }
        slot.0 = 0;
    }
}

/// Greedily picks codewords not yet in the span of the earlier picks until
/// the span reaches `target` words.
fn generating_set(ring: &FiniteRing, words: &[RingElement], len: usize, target: usize) -> Vec<Codeword> {
    let order = ring.order();
    let mut seen: HashSet<u64> = HashSet::from([0u64]);
    let mut members: Vec<u64> = vec![0];
    let mut gens = Vec::new();
    let mut s = vec![RingElement::ZERO; len];
    for w in words.chunks_exact(len) {
        if seen.len() >= target {
            break;
        }
        if seen.contains(&rank(w, order)) {
            continue;
        }
        gens.push(Codeword(w.to_vec()));
        let mut multiples: Vec<Vec<RingElement>> = ring
            .elements()
            .map(|r| w.iter().map(|&x| ring.mul(r, x)).collect())
            .filter(|m: &Vec<RingElement>| m.iter().any(|e| !e.is_zero()))
            .collect();
        multiples.sort();
        multiples.dedup();
        let existing = members.len();
        for i in 0..existing {
            unrank_into(members[i], order, &mut s);
            for m in &multiples {
                let sum: Vec<RingElement> = s.iter().zip(m).map(|(&x, &y)| ring.add(x, y)).collect();
                let r = rank(&sum, order);
                if seen.insert(r) {
                    members.push(r);
                }
            }
        }
    }
    gens
}

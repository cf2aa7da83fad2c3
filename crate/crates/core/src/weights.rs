//! RT weights, m-spotty weights and distances, weight distribution vectors
//! and the m-spotty weight enumerator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::codes::{ByteLayout, Code, CodeError};
use crate::poly::EnumeratorPoly;
use crate::rings::{FiniteRing, RingElement};

/// Position (1-based) of the last nonzero coordinate; 0 for the zero byte.
pub fn rt_weight(byte: &[RingElement]) -> usize {
    byte.iter().rposition(|e| !e.is_zero()).map_or(0, |i| i + 1)
}

/// `⌈w / t⌉`.
#[inline]
pub fn spotty_units(w: usize, t: usize) -> usize {
    w.div_ceil(t)
}

/// `Σ_i ⌈w_RT(c_i) / t⌉` over the `n` bytes of `c`.
pub fn mspotty_weight(c: &[RingElement], layout: &ByteLayout) -> Result<usize, CodeError> {
    layout.check(c)?;
    Ok(c.chunks_exact(layout.b()).map(|byte| spotty_units(rt_weight(byte), layout.t())).sum())
}

/// `Σ_i ⌈w_RT(c_i - v_i) / t⌉`.
pub fn mspotty_distance(
    ring: &FiniteRing,
    c: &[RingElement],
    v: &[RingElement],
    layout: &ByteLayout,
) -> Result<usize, CodeError> {
    layout.check(c)?;
    layout.check(v)?;
    let b = layout.b();
    let mut diff = vec![RingElement::ZERO; b];
    let mut total = 0;
    for (cb, vb) in c.chunks_exact(b).zip(v.chunks_exact(b)) {
        for (d, (&x, &y)) in diff.iter_mut().zip(cb.iter().zip(vb)) {
            *d = ring.sub(x, y);
        }
        total += spotty_units(rt_weight(&diff), layout.t());
    }
    Ok(total)
}

/// RT weight distribution vector `(α_0, …, α_b)`: `α_j` counts the bytes of
/// RT weight `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(alphas: Vec<u32>) -> Self {
        WeightVector(alphas)
    }

    /// The vector `(n, 0, …, 0)` of the zero word.
    pub fn zero_word(layout: &ByteLayout) -> Self {
        let mut a = vec![0; layout.b() + 1];
        a[0] = layout.n() as u32;
        WeightVector(a)
    }

    pub fn alphas(&self) -> &[u32] {
        &self.0
    }

    /// Number of bytes, `Σ α_j`.
    pub fn bytes(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `Σ_j ⌈j/t⌉ α_j`.
    pub fn mspotty_weight(&self, t: usize) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &a)| spotty_units(j, t) * a as usize)
            .sum()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

pub fn weight_vector(c: &[RingElement], layout: &ByteLayout) -> Result<WeightVector, CodeError> {
    layout.check(c)?;
    let mut alphas = vec![0u32; layout.b() + 1];
    for byte in c.chunks_exact(layout.b()) {
        alphas[rt_weight(byte)] += 1;
    }
    Ok(WeightVector(alphas))
}

/// Counts `A_α` of codewords per weight distribution vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    layout: ByteLayout,
    ring_order: usize,
    counts: BTreeMap<WeightVector, BigUint>,
}

#[derive(Serialize)]
struct DistributionEntry<'a> {
    alphas: &'a WeightVector,
    count: serde_json::Number,
}

impl DistributionTable {
    /// Builds a table from explicit counts; zero counts are dropped.
    pub fn from_counts(
        layout: ByteLayout,
        ring_order: usize,
        counts: impl IntoIterator<Item = (WeightVector, BigUint)>,
    ) -> Result<Self, CodeError> {
        let mut map = BTreeMap::new();
        for (alpha, count) in counts {
            if alpha.alphas().len() != layout.b() + 1 || alpha.bytes() as usize != layout.n() {
                return Err(CodeError::InvalidLayout(format!(
                    "weight vector {alpha} does not describe {} bytes of length {}",
                    layout.n(),
                    layout.b()
                )));
            }
            if !count.is_zero() {
                *map.entry(alpha).or_insert_with(BigUint::zero) += count;
            }
        }
        Ok(DistributionTable { layout, ring_order, counts: map })
    }

    pub fn layout(&self) -> &ByteLayout {
        &self.layout
    }

    pub fn ring_order(&self) -> usize {
        self.ring_order
    }

    pub fn get(&self, alpha: &WeightVector) -> BigUint {
        self.counts.get(alpha).cloned().unwrap_or_default()
    }

    /// Entries in lexicographic order of the weight vectors.
    pub fn iter(&self) -> impl Iterator<Item = (&WeightVector, &BigUint)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `Σ_α A_α`.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<DistributionEntry<'_>> = self
            .counts
            .iter()
            .map(|(alphas, count)| DistributionEntry { alphas, count: big_number(count) })
            .collect();
        serde_json::to_value(entries).expect("distribution serializes")
    }

    /// Two-column rendering: weight vector and number of codewords.
    pub fn render_text(&self) -> String {
        let rows: Vec<(String, String)> =
            self.counts.iter().map(|(a, c)| (a.to_string(), c.to_string())).collect();
        let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max("RT weight vector".len());
        let mut out = format!("{:<width$}  number\n", "RT weight vector");
        for (a, c) in rows {
            out.push_str(&format!("{a:<width$}  {c}\n"));
        }
        out
    }
}

pub(crate) fn big_number(n: impl ToString) -> serde_json::Number {
    n.to_string().parse().expect("integers are valid JSON numbers")
}

pub fn distribution(code: &Code) -> DistributionTable {
    let layout = *code.layout();
    let mut counts: BTreeMap<WeightVector, BigUint> = BTreeMap::new();
    for w in code.words() {
        let alpha = weight_vector(w, &layout).expect("codewords match the layout");
        *counts.entry(alpha).or_insert_with(BigUint::zero) += 1u32;
    }
    DistributionTable { layout, ring_order: code.ring().order(), counts }
}

/// `W(z) = Σ_α A_α z^{Σ_j ⌈j/t⌉ α_j}`.
pub fn enumerator(dist: &DistributionTable) -> EnumeratorPoly {
    let t = dist.layout.t();
    let mut w = EnumeratorPoly::zero();
    for (alpha, count) in &dist.counts {
        w.add_term(&BigInt::from(count.clone()), alpha.mspotty_weight(t));
    }
    w
}

/// `Σ_{c ∈ C} z^{w_MRT(c)}`, word by word.
pub fn enumerator_direct(code: &Code) -> EnumeratorPoly {
    let layout = code.layout();
    let max = layout.n() * spotty_units(layout.b(), layout.t());
    let mut counts = vec![0u64; max + 1];
    for w in code.words() {
        counts[mspotty_weight(w, layout).expect("codewords match the layout")] += 1;
    }
    EnumeratorPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect())
}

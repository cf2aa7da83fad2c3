//! MacWilliams transform for m-spotty RT weight enumerators.
//!
//! The per-byte kernel is `V_j(z) = Σ_k S(k, j) z^{⌈k/t⌉}`, where
//! `S(k, j)` is the character sum over bytes `v` of RT weight `k` paired
//! with a fixed byte of RT weight `j`. The dual enumerator is
//!
//! ```text
//! W⊥(z) = (1/|C|) Σ_α A_α Π_j V_j(z)^{α_j}
//! ```
//!
//! Besides the closed forms, this module carries two brute-force oracles
//! evaluated in exact cyclotomic arithmetic: the byte character sum itself
//! and the full Fourier transform of `z^{w_MRT(v)}` at a codeword.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::codes::{reverse_bytes, step, sweep, unrank_into, ByteLayout, Code, CodeError, Limits};
use crate::cyclotomic::CycInt;
use crate::poly::EnumeratorPoly;
use crate::rings::{FiniteRing, RingElement};
use crate::weights::{distribution, enumerator, rt_weight, spotty_units, DistributionTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MacWilliamsError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("distribution and kernel table disagree: {0}")]
    ParameterMismatch(String),
    #[error("distribution counts sum to {total}, not |C| = {card}")]
    CardinalityMismatch { total: BigUint, card: BigUint },
    #[error("transformed enumerator is not divisible by |C| = {0}")]
    InexactDivision(BigUint),
    #[error("character sum for z^{weight} is not a rational integer")]
    NotAnInteger { weight: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Closed form of the byte character sum `S(k, j)` for a ring of order `ℓ`.
pub fn s_value(order: u64, b: usize, k: usize, j: usize) -> Result<BigInt, MacWilliamsError> {
    if order < 2 {
        return Err(MacWilliamsError::OutOfRange(format!("ring order {order} < 2")));
    }
    if b == 0 || k > b || j > b {
        return Err(MacWilliamsError::OutOfRange(format!(
            "need 1 <= b and 0 <= k, j <= b (b={b}, k={k}, j={j})"
        )));
    }
    let l = BigInt::from(order);
    Ok(if k == 0 {
        BigInt::one()
    } else if k + j <= b {
        l.pow(k as u32 - 1) * (&l - 1)
    } else if k + j == b + 1 {
        -l.pow(k as u32 - 1)
    } else {
        BigInt::zero()
    })
}

/// The kernels `V_0 … V_b` for ring order `ℓ`, byte length `b` and spotty
/// parameter `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VTable {
    order: u64,
    b: usize,
    t: usize,
    polys: Vec<EnumeratorPoly>,
}

impl VTable {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn polys(&self) -> &[EnumeratorPoly] {
        &self.polys
    }

    pub fn get(&self, j: usize) -> &EnumeratorPoly {
        &self.polys[j]
    }

    /// `Π_i V_{w_RT(c_i)}` over the bytes of `c`.
    pub fn kernel_product(&self, c: &[RingElement], layout: &ByteLayout) -> Result<EnumeratorPoly, CodeError> {
        layout.check(c)?;
        Ok(c.chunks_exact(layout.b())
            .fold(EnumeratorPoly::one(), |acc, byte| acc.mul(&self.polys[rt_weight(byte)])))
    }
}

pub fn v_table(order: u64, b: usize, t: usize) -> Result<VTable, MacWilliamsError> {
    if t == 0 || t > b {
        return Err(MacWilliamsError::OutOfRange(format!("need 1 <= t <= b (t={t}, b={b})")));
    }
    let polys = (0..=b)
        .map(|j| {
            let mut v = EnumeratorPoly::zero();
            for k in 0..=b {
                v.add_term(&s_value(order, b, k, j)?, spotty_units(k, t));
            }
            Ok(v)
        })
        .collect::<Result<_, MacWilliamsError>>()?;
    Ok(VTable { order, b, t, polys })
}

/// `W⊥(z) = (1/|C|) Σ_α A_α Π_j V_j(z)^{α_j}`, in exact integer arithmetic.
pub fn transform(
    dist: &DistributionTable,
    card: &BigUint,
    vt: &VTable,
) -> Result<EnumeratorPoly, MacWilliamsError> {
    let layout = dist.layout();
    if layout.b() != vt.b || layout.t() != vt.t || dist.ring_order() as u64 != vt.order {
        return Err(MacWilliamsError::ParameterMismatch(format!(
            "distribution has l={} b={} t={}, table has l={} b={} t={}",
            dist.ring_order(),
            layout.b(),
            layout.t(),
            vt.order,
            vt.b,
            vt.t
        )));
    }
    let total = dist.total();
    if &total != card {
        return Err(MacWilliamsError::CardinalityMismatch { total, card: card.clone() });
    }
    let mut sum = EnumeratorPoly::zero();
    for (alpha, count) in dist.iter() {
        let term = alpha
            .alphas()
            .iter()
            .enumerate()
            .fold(EnumeratorPoly::one(), |acc, (j, &a)| acc.mul(&vt.polys[j].pow(a)));
        sum = sum.add(&term.scale(&BigInt::from(count.clone())));
    }
    sum.div_exact(&BigInt::from(card.clone()))
        .ok_or_else(|| MacWilliamsError::InexactDivision(card.clone()))
}

/// Converts per-weight exponent histograms into integer coefficients.
fn histograms_to_poly(hist: Vec<Vec<u64>>) -> Result<Vec<BigInt>, MacWilliamsError> {
    hist.into_iter()
        .enumerate()
        .map(|(weight, counts)| {
            CycInt::from_coeffs(counts.into_iter().map(BigInt::from).collect())
                .as_integer()
                .ok_or(MacWilliamsError::NotAnInteger { weight })
        })
        .collect()
}

/// Brute-force `S(k, j)` for every `k = 0..=b` against one witness byte:
/// `Σ_{w_RT(v) = k} χ(⟨c, v⟩)` with the byte-reversed pairing.
pub fn s_values_for_witness(
    ring: &FiniteRing,
    witness: &[RingElement],
    limits: &Limits,
) -> Result<Vec<BigInt>, MacWilliamsError> {
    let b = witness.len();
    if b == 0 {
        return Err(MacWilliamsError::OutOfRange("empty witness byte".into()));
    }
    let order = ring.order();
    let total = limits.check_sweep("byte character sum", order, b)?;
    let m = ring.char_modulus() as usize;
    let reversed: Vec<RingElement> = witness.iter().rev().copied().collect();
    let mut hist = vec![vec![0u64; m]; b + 1];
    let mut v = vec![RingElement::ZERO; b];
    for _ in 0..total {
        let ip = reversed
            .iter()
            .zip(&v)
            .fold(RingElement::ZERO, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y)));
        hist[rt_weight(&v)][ring.char_exp(ip) as usize] += 1;
        step(&mut v, order);
    }
    histograms_to_poly(hist)
}

/// The byte `(0, …, 0, 1, 0, …, 0)` with the 1 at position `j` (1-based);
/// all zero for `j = 0`.
pub fn canonical_witness(ring: &FiniteRing, b: usize, j: usize) -> Vec<RingElement> {
    let mut w = vec![RingElement::ZERO; b];
    if j > 0 {
        w[j - 1] = ring.one();
    }
    w
}

/// Brute-force `S(k, j)` using the canonical witness of RT weight `j`.
pub fn s_value_oracle(
    ring: &FiniteRing,
    b: usize,
    k: usize,
    j: usize,
    limits: &Limits,
) -> Result<BigInt, MacWilliamsError> {
    if b == 0 || k > b || j > b {
        return Err(MacWilliamsError::OutOfRange(format!(
            "need 1 <= b and 0 <= k, j <= b (b={b}, k={k}, j={j})"
        )));
    }
    let sums = s_values_for_witness(ring, &canonical_witness(ring, b, j), limits)?;
    Ok(sums[k].clone())
}

/// `Σ_{v ∈ R^N} χ(⟨c, v⟩) z^{w_MRT(v)}` by full enumeration. For any `c`
/// this equals `Π_i V_{w_RT(c_i)}(z)`.
pub fn fourier_oracle(
    ring: &FiniteRing,
    layout: &ByteLayout,
    c: &[RingElement],
    limits: &Limits,
) -> Result<EnumeratorPoly, MacWilliamsError> {
    layout.check(c)?;
    let order = ring.order();
    let len = layout.len();
    let total = limits.check_sweep("Fourier sweep", order, len)?;
    let m = ring.char_modulus() as usize;
    let (b, t) = (layout.b(), layout.t());
    let max_weight = layout.n() * spotty_units(b, t);
    let reversed = reverse_bytes(c, layout);

    let partials = sweep(order, len, total, |start, end, v| {
        let mut hist = vec![vec![0u64; m]; max_weight + 1];
        for r in start..end {
            if r > start {
                step(v, order);
            }
            let ip = reversed
                .iter()
                .zip(v.iter())
                .fold(RingElement::ZERO, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y)));
            let w: usize = v.chunks_exact(b).map(|byte| spotty_units(rt_weight(byte), t)).sum();
            hist[w][ring.char_exp(ip) as usize] += 1;
        }
        hist
    });
    let mut hist = vec![vec![0u64; m]; max_weight + 1];
    for part in partials {
        for (acc, p) in hist.iter_mut().zip(part) {
            for (a, x) in acc.iter_mut().zip(p) {
                *a += x;
            }
        }
    }
    Ok(EnumeratorPoly::from_coeffs(histograms_to_poly(hist)?))
}

/// Outcome of computing `W⊥` both through the transform and by enumerating
/// the dual code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub card: BigUint,
    pub dual_card: BigUint,
    pub weight_enumerator: EnumeratorPoly,
    pub via_transform: EnumeratorPoly,
    pub via_dual: EnumeratorPoly,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.via_transform == self.via_dual
    }
}

/// `W⊥` of a code through the transform alone.
pub fn dual_enumerator(code: &Code) -> Result<EnumeratorPoly, MacWilliamsError> {
    let layout = code.layout();
    let vt = v_table(code.ring().order() as u64, layout.b(), layout.t())?;
    transform(&distribution(code), &BigUint::from(code.len()), &vt)
}

pub fn verify_identity(code: &Code, limits: &Limits) -> Result<IdentityReport, MacWilliamsError> {
    let dist = distribution(code);
    let via_transform = dual_enumerator(code)?;
    let dual = code.dual(limits)?;
    let via_dual = enumerator(&distribution(&dual));
    Ok(IdentityReport {
        card: BigUint::from(code.len()),
        dual_card: BigUint::from(dual.len()),
        weight_enumerator: enumerator(&dist),
        via_transform,
        via_dual,
    })
}

/// All bytes of `R^b` with RT weight exactly `j`.
pub fn bytes_of_rt_weight(ring: &FiniteRing, b: usize, j: usize, limits: &Limits) -> Result<Vec<Vec<RingElement>>, CodeError> {
    let order = ring.order();
    let total = limits.check_sweep("byte sweep", order, b)?;
    let mut v = vec![RingElement::ZERO; b];
    let mut out = Vec::new();
    for r in 0..total {
        unrank_into(r, order, &mut v);
        if rt_weight(&v) == j {
            out.push(v.clone());
        }
    }
    Ok(out)
}

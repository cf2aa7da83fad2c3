//! Tabulated finite commutative Frobenius rings with a generating character.
//!
//! Every ring is stored as full `ℓ × ℓ` addition and multiplication tables
//! over element indices `0..ℓ`, where index 0 is always the zero element.
//! The additive character is kept as an exponent table: the character value
//! of `x` is `ζ_M^{char_exp(x)}` with `M = char_modulus()`.
//!
//! Index conventions per family:
//!
//! * `Z<m>`: the residue itself.
//! * `F(p,r;f)`: `Σ a_i p^i` for the element `Σ a_i x^i`.
//! * `GR(p,n,r;f)`: `Σ a_i (p^n)^i`, with `a_i ∈ Z_{p^n}`.
//! * `chain(p,s,k;f)`: `Σ d_i q^i` where `d_i` is the `F_q` index of the
//!   `u^i` coefficient.
//! * `Rk(k)`: bit `mask(A)` of the index is the coefficient `c_A`, where
//!   `mask(A)` is the binary mask of the subset `A ⊆ {1..k}`.
//! * `prod(R_1,...,R_s)`: mixed radix over component indices, leftmost
//!   component least significant.
//!
//! The chain ring character for a non-prime residue field composes the
//! `u^{k-1}` coefficient with the trace down to `F_p`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

/// Largest ring order built by [`FiniteRing::build`].
pub const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("parameter {name}={value} must be prime")]
    NonPrimeParameter { name: &'static str, value: u64 },
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("product of rings needs at least one component")]
    EmptyProduct,
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),
    #[error("ring order {order} exceeds the limit {limit}")]
    TooLarge { order: u128, limit: usize },
    #[error("cannot parse ring spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// An element of a [`FiniteRing`], identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct RingElement(pub u32);

impl RingElement {
    pub const ZERO: RingElement = RingElement(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl From<u32> for RingElement {
    fn from(v: u32) -> Self {
        RingElement(v)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Description of one of the supported ring families.
///
/// `modulus` lists a monic polynomial from the constant term up to the
/// leading 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Zmod(u32),
    GaloisField { p: u32, r: u32, modulus: Vec<u32> },
    GaloisRing { p: u32, n: u32, r: u32, modulus: Vec<u32> },
    ChainRing { p: u32, s: u32, k: u32, modulus: Vec<u32> },
    Rk(u32),
    Product(Vec<RingSpec>),
}

impl RingSpec {
    /// Number of elements, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        match self {
            RingSpec::Zmod(m) => Some(*m as u128),
            RingSpec::GaloisField { p, r, .. } => (*p as u128).checked_pow(*r),
            RingSpec::GaloisRing { p, n, r, .. } => {
                (*p as u128).checked_pow(*n)?.checked_pow(*r)
            }
            RingSpec::ChainRing { p, s, k, .. } => {
                (*p as u128).checked_pow(*s)?.checked_pow(*k)
            }
            RingSpec::Rk(k) => {
                let bits = 1u32.checked_shl(*k)?;
                1u128.checked_shl(bits)
            }
            RingSpec::Product(parts) => parts
                .iter()
                .try_fold(1u128, |acc, p| acc.checked_mul(p.order()?)),
        }
    }
}

fn write_coeffs(f: &mut fmt::Formatter<'_>, coeffs: &[u32]) -> fmt::Result {
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(m) => write!(f, "Z{m}"),
            RingSpec::GaloisField { p, r, modulus } => {
                write!(f, "F({p},{r};")?;
                write_coeffs(f, modulus)?;
                f.write_str(")")
            }
            RingSpec::GaloisRing { p, n, r, modulus } => {
                write!(f, "GR({p},{n},{r};")?;
                write_coeffs(f, modulus)?;
                f.write_str(")")
            }
            RingSpec::ChainRing { p, s, k, modulus } => {
                write!(f, "chain({p},{s},{k};")?;
                write_coeffs(f, modulus)?;
                f.write_str(")")
            }
            RingSpec::Rk(k) => write!(f, "Rk({k})"),
            RingSpec::Product(parts) => {
                f.write_str("prod(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct SpecParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> SpecParser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<(), String> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(format!(
                "expected '{}' at offset {}, found '{}'",
                c as char, self.pos, x as char
            )),
            None => Err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn number(&mut self) -> Result<u32, String> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected a number at offset {start}"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| format!("bad number: {e}"))
    }

    fn number_list(&mut self) -> Result<Vec<u32>, String> {
        let mut out = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn keyword(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    /// `(<params>;<coeffs>)` with exactly `arity` parameters.
    fn params_with_modulus(&mut self, arity: usize) -> Result<(Vec<u32>, Vec<u32>), String> {
        self.eat(b'(')?;
        let params = self.number_list()?;
        if params.len() != arity {
            return Err(format!("expected {arity} parameters, got {}", params.len()));
        }
        self.eat(b';')?;
        let coeffs = self.number_list()?;
        self.eat(b')')?;
        Ok((params, coeffs))
    }

    fn spec(&mut self) -> Result<RingSpec, String> {
        let kw = self.keyword();
        match kw.as_str() {
            "Z" => Ok(RingSpec::Zmod(self.number()?)),
            "F" => {
                let (p, m) = self.params_with_modulus(2)?;
                Ok(RingSpec::GaloisField { p: p[0], r: p[1], modulus: m })
            }
            "GR" => {
                let (p, m) = self.params_with_modulus(3)?;
                Ok(RingSpec::GaloisRing { p: p[0], n: p[1], r: p[2], modulus: m })
            }
            "chain" => {
                let (p, m) = self.params_with_modulus(3)?;
                Ok(RingSpec::ChainRing { p: p[0], s: p[1], k: p[2], modulus: m })
            }
            "Rk" => {
                self.eat(b'(')?;
                let k = self.number()?;
                self.eat(b')')?;
                Ok(RingSpec::Rk(k))
            }
            "prod" => {
                self.eat(b'(')?;
                let mut parts = Vec::new();
                if self.peek() != Some(b')') {
                    parts.push(self.spec()?);
                    while self.peek() == Some(b',') {
                        self.pos += 1;
                        parts.push(self.spec()?);
                    }
                }
                self.eat(b')')?;
                Ok(RingSpec::Product(parts))
            }
            "" => Err(format!("expected a ring family at offset {}", self.pos)),
            other => Err(format!("unknown ring family {other:?}")),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: Vec<u8> = s.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
        let mut parser = SpecParser { src: &compact, pos: 0 };
        let parse_err = |reason: String| RingError::Parse { input: s.to_string(), reason };
        let spec = parser.spec().map_err(parse_err)?;
        if parser.pos != compact.len() {
            return Err(parse_err(format!("trailing input at offset {}", parser.pos)));
        }
        Ok(spec)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
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

fn require_prime(name: &'static str, value: u32) -> Result<(), RingError> {
    if is_prime(value as u64) {
        Ok(())
    } else {
        Err(RingError::NonPrimeParameter { name, value: value as u64 })
    }
}

fn render_poly(coeffs: &[u32]) -> String {
    coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Remainder of `a` modulo the monic `m` with coefficients in `Z_q`.
fn poly_rem(a: &[u64], m: &[u64], q: u64) -> Vec<u64> {
    let deg = m.len() - 1;
    let mut a: Vec<u64> = a.iter().map(|c| c % q).collect();
    while a.len() > deg {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - deg;
            for (i, &mc) in m[..deg].iter().enumerate() {
                a[shift + i] = (a[shift + i] + (q - lead) * mc) % q;
            }
        }
    }
    a
}

/// Exhaustive trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible_mod_p(modulus: &[u64], p: u64) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                g.push(rest % p);
                rest /= p;
            }
            g.push(1);
            if poly_rem(modulus, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn check_monic(
    modulus: &[u32],
    degree: u32,
    coeff_bound: u64,
    what: &str,
) -> Result<Vec<u64>, RingError> {
    if modulus.len() != degree as usize + 1 {
        return Err(RingError::InvalidParameter(format!(
            "{what} modulus must have {} coefficients (degree {degree}), got {}",
            degree + 1,
            modulus.len()
        )));
    }
    if *modulus.last().unwrap() != 1 {
        return Err(RingError::InvalidParameter(format!(
            "{what} modulus must be monic (leading coefficient 1)"
        )));
    }
    if let Some(c) = modulus.iter().find(|&&c| c as u64 >= coeff_bound) {
        return Err(RingError::InvalidParameter(format!(
            "{what} modulus coefficient {c} is not reduced below {coeff_bound}"
        )));
    }
    Ok(modulus.iter().map(|&c| c as u64).collect())
}

/// Mixed-radix digits of `index`, least significant first.
fn digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(index % base);
        index /= base;
    }
    out
}

fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

/// A finite commutative ring with identity, tabulated, together with an
/// additive character given as exponents of `ζ_M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    spec: RingSpec,
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: u32,
    char_modulus: u32,
    char_exp: Vec<u32>,
}

impl FiniteRing {
    /// Builds a ring with at most [`DEFAULT_MAX_ORDER`] elements.
    pub fn build(spec: &RingSpec) -> Result<FiniteRing, RingError> {
        Self::build_with_limit(spec, DEFAULT_MAX_ORDER)
    }

    pub fn build_with_limit(spec: &RingSpec, max_order: usize) -> Result<FiniteRing, RingError> {
        validate(spec)?;
        let order = spec.order().unwrap_or(u128::MAX);
        if order > max_order as u128 {
            return Err(RingError::TooLarge { order, limit: max_order });
        }
        Ok(construct(spec))
    }

    pub fn parse(text: &str) -> Result<FiniteRing, RingError> {
        Self::build(&text.parse()?)
    }

    /// Replaces the character. Used to probe [`Self::verify_generating_character`]
    /// with deliberately broken characters.
    pub fn with_character(mut self, modulus: u32, exponents: Vec<u32>) -> Result<Self, RingError> {
        if modulus == 0 || exponents.len() != self.order {
            return Err(RingError::InvalidParameter(format!(
                "character needs modulus >= 1 and {} exponents",
                self.order
            )));
        }
        self.char_exp = exponents.into_iter().map(|e| e % modulus).collect();
        self.char_modulus = modulus;
        Ok(self)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> RingElement {
        RingElement::ZERO
    }

    pub fn one(&self) -> RingElement {
        RingElement(self.one)
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + Clone {
        (0..self.order as u32).map(RingElement)
    }

    pub fn contains(&self, x: RingElement) -> bool {
        x.index() < self.order
    }

    #[inline]
    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        RingElement(self.add[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        RingElement(self.mul[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: RingElement) -> RingElement {
        RingElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: RingElement, b: RingElement) -> RingElement {
        self.add(a, self.neg(b))
    }

    pub fn char_modulus(&self) -> u32 {
        self.char_modulus
    }

    #[inline]
    pub fn char_exp(&self, x: RingElement) -> u32 {
        self.char_exp[x.index()]
    }

    pub fn char_exponents(&self) -> &[u32] {
        &self.char_exp
    }

    pub fn is_unit(&self, x: RingElement) -> bool {
        self.elements().any(|y| self.mul(x, y) == self.one())
    }

    pub fn units(&self) -> Vec<RingElement> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    /// True iff no nonzero ideal lies in the kernel of the character, i.e.
    /// every nonzero `x` has some multiple `r·x` with nonzero exponent.
    pub fn verify_generating_character(&self) -> bool {
        self.elements()
            .skip(1)
            .all(|x| self.elements().any(|r| self.char_exp(self.mul(r, x)) != 0))
    }

    /// `char_exp(x + y) ≡ char_exp(x) + char_exp(y) (mod M)` for all pairs.
    pub fn verify_character_additive(&self) -> bool {
        let m = self.char_modulus;
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.char_exp(self.add(x, y)) == (self.char_exp(x) + self.char_exp(y)) % m
            })
        })
    }

    /// Exhaustive check of the commutative ring axioms. Returns a description
    /// of the first violation found.
    pub fn check_axioms(&self) -> Result<(), String> {
        let zero = self.zero();
        let one = self.one();
        for a in self.elements() {
            if self.add(a, zero) != a {
                return Err(format!("{a} + 0 != {a}"));
            }
            if self.mul(a, one) != a {
                return Err(format!("{a} * 1 != {a}"));
            }
            if self.mul(a, zero) != zero {
                return Err(format!("{a} * 0 != 0"));
            }
            if self.add(a, self.neg(a)) != zero {
                return Err(format!("{a} + (-{a}) != 0"));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(format!("addition not commutative at ({a}, {b})"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("multiplication not commutative at ({a}, {b})"));
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("addition not associative at ({a}, {b}, {c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplication not associative at ({a}, {b}, {c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Structural coordinates of an element under the family's index
    /// convention (see the module docs). For products these are the
    /// component indices.
    pub fn coordinates(&self, x: RingElement) -> Vec<u32> {
        let idx = x.index();
        let out: Vec<usize> = match &self.spec {
            RingSpec::Zmod(_) => vec![idx],
            RingSpec::GaloisField { p, r, .. } => digits(idx, *p as usize, *r as usize),
            RingSpec::GaloisRing { p, n, r, .. } => {
                digits(idx, (*p as usize).pow(*n), *r as usize)
            }
            RingSpec::ChainRing { p, s, k, .. } => {
                digits(idx, (*p as usize).pow(*s), *k as usize)
            }
            RingSpec::Rk(k) => digits(idx, 2, 1 << k),
            RingSpec::Product(parts) => {
                let mut rest = idx;
                parts
                    .iter()
                    .map(|p| {
                        let o = p.order().unwrap() as usize;
                        let d = rest % o;
                        rest /= o;
                        d
                    })
                    .collect()
            }
        };
        out.into_iter().map(|d| d as u32).collect()
    }

    /// Inverse of [`Self::coordinates`].
    pub fn from_coordinates(&self, coords: &[u32]) -> Option<RingElement> {
        let radices: Vec<usize> = match &self.spec {
            RingSpec::Zmod(m) => vec![*m as usize],
            RingSpec::GaloisField { p, r, .. } => vec![*p as usize; *r as usize],
            RingSpec::GaloisRing { p, n, r, .. } => vec![(*p as usize).pow(*n); *r as usize],
            RingSpec::ChainRing { p, s, k, .. } => vec![(*p as usize).pow(*s); *k as usize],
            RingSpec::Rk(k) => vec![2; 1 << k],
            RingSpec::Product(parts) => {
                parts.iter().map(|p| p.order().unwrap() as usize).collect()
            }
        };
        if coords.len() != radices.len() {
            return None;
        }
        let mut idx = 0usize;
        for (&c, &radix) in coords.iter().zip(&radices).rev() {
            if c as usize >= radix {
                return None;
            }
            idx = idx * radix + c as usize;
        }
        Some(RingElement(idx as u32))
    }

    fn from_tables(
        spec: RingSpec,
        order: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        one: usize,
        char_modulus: u32,
        char_exp: impl Fn(usize) -> u32,
    ) -> FiniteRing {
        let mut add_t = Vec::with_capacity(order * order);
        let mut mul_t = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                add_t.push(add(a, b) as u32);
                mul_t.push(mul(a, b) as u32);
            }
        }
        let neg = (0..order)
            .map(|a| (0..order).find(|&b| add_t[a * order + b] == 0).unwrap() as u32)
            .collect();
        let char_exp = (0..order).map(|x| char_exp(x) % char_modulus).collect();
        FiniteRing {
            spec,
            order,
            add: add_t,
            mul: mul_t,
            neg,
            one: one as u32,
            char_modulus,
            char_exp,
        }
    }

    /// Field trace `Σ_i x^{p^i}` as an element of the prime field. Only
    /// meaningful for `GaloisField` rings.
    fn trace_to_prime(&self, x: RingElement, p: u32, r: u32) -> u32 {
        let mut acc = RingElement::ZERO;
        let mut frob = x;
        for _ in 0..r {
            acc = self.add(acc, frob);
            let mut pow = self.one();
            for _ in 0..p {
                pow = self.mul(pow, frob);
            }
            frob = pow;
        }
        // the trace lies in F_p, i.e. a constant polynomial
        debug_assert!(acc.index() < p as usize);
        acc.0
    }
}

fn validate(spec: &RingSpec) -> Result<(), RingError> {
    match spec {
        RingSpec::Zmod(m) => {
            if *m < 2 {
                return Err(RingError::InvalidParameter(format!("Z{m}: need m >= 2")));
            }
        }
        RingSpec::GaloisField { p, r, modulus } => {
            require_prime("p", *p)?;
            if *r < 1 {
                return Err(RingError::InvalidParameter("F: need r >= 1".into()));
            }
            let m = check_monic(modulus, *r, *p as u64, "F")?;
            if !is_irreducible_mod_p(&m, *p as u64) {
                return Err(RingError::ReducibleModulus(render_poly(modulus)));
            }
        }
        RingSpec::GaloisRing { p, n, r, modulus } => {
            require_prime("p", *p)?;
            if *n < 1 || *r < 1 {
                return Err(RingError::InvalidParameter("GR: need n >= 1 and r >= 1".into()));
            }
            let q = (*p as u64)
                .checked_pow(*n)
                .ok_or_else(|| RingError::InvalidParameter("GR: p^n overflows".into()))?;
            let m = check_monic(modulus, *r, q, "GR")?;
            let reduced: Vec<u64> = m.iter().map(|c| c % *p as u64).collect();
            if !is_irreducible_mod_p(&reduced, *p as u64) {
                return Err(RingError::ReducibleModulus(render_poly(modulus)));
            }
        }
        RingSpec::ChainRing { p, s, k, modulus } => {
            require_prime("p", *p)?;
            if *s < 1 || *k < 1 {
                return Err(RingError::InvalidParameter("chain: need s >= 1 and k >= 1".into()));
            }
            let m = check_monic(modulus, *s, *p as u64, "chain")?;
            if !is_irreducible_mod_p(&m, *p as u64) {
                return Err(RingError::ReducibleModulus(render_poly(modulus)));
            }
        }
        RingSpec::Rk(k) => {
            if *k < 1 {
                return Err(RingError::InvalidParameter("Rk: need k >= 1".into()));
            }
        }
        RingSpec::Product(parts) => {
            if parts.is_empty() {
                return Err(RingError::EmptyProduct);
            }
            for part in parts {
                validate(part)?;
            }
        }
    }
    Ok(())
}

/// Builds `Z_q[x]/(f)` for monic `f` of degree `r`; shared by the field and
/// Galois ring families. The character is filled in by the caller.
fn poly_quotient(spec: RingSpec, q: usize, modulus: &[u32]) -> FiniteRing {
    let r = modulus.len() - 1;
    let order = q.pow(r as u32);
    let m: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
    let add = |a: usize, b: usize| {
        let (da, db) = (digits(a, q, r), digits(b, q, r));
        let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % q).collect();
        undigits(&sum, q)
    };
    let mul = |a: usize, b: usize| {
        let (da, db) = (digits(a, q, r), digits(b, q, r));
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + (*x as u64) * (*y as u64)) % q as u64;
            }
        }
        let rem = poly_rem(&prod, &m, q as u64);
        let rem: Vec<usize> = (0..r).map(|i| rem.get(i).copied().unwrap_or(0) as usize).collect();
        undigits(&rem, q)
    };
    FiniteRing::from_tables(spec, order, add, mul, 1, 1, |_| 0)
}

fn construct(spec: &RingSpec) -> FiniteRing {
    match spec {
        RingSpec::Zmod(m) => {
            let m = *m as usize;
            FiniteRing::from_tables(
                spec.clone(),
                m,
                |a, b| (a + b) % m,
                |a, b| (a * b) % m,
                1 % m,
                m as u32,
                |x| x as u32,
            )
        }
        RingSpec::GaloisField { p, r, modulus } => {
            let field = poly_quotient(spec.clone(), *p as usize, modulus);
            let exps = field
                .elements()
                .map(|x| field.trace_to_prime(x, *p, *r))
                .collect();
            field.with_character(*p, exps).unwrap()
        }
        RingSpec::GaloisRing { p, n, r, modulus } => {
            let q = (*p as usize).pow(*n);
            let ring = poly_quotient(spec.clone(), q, modulus);
            let top = *r as usize - 1;
            let exps = (0..ring.order).map(|x| digits(x, q, *r as usize)[top] as u32).collect();
            ring.with_character(q as u32, exps).unwrap()
        }
        RingSpec::ChainRing { p, s, k, modulus } => {
            let residue = construct(&RingSpec::GaloisField {
                p: *p,
                r: *s,
                modulus: modulus.clone(),
            });
            let q = residue.order();
            let k = *k as usize;
            let order = q.pow(k as u32);
            let add = |a: usize, b: usize| {
                let (da, db) = (digits(a, q, k), digits(b, q, k));
                let sum: Vec<usize> = da
                    .iter()
                    .zip(&db)
                    .map(|(&x, &y)| residue.add(RingElement(x as u32), RingElement(y as u32)).index())
                    .collect();
                undigits(&sum, q)
            };
            let mul = |a: usize, b: usize| {
                let (da, db) = (digits(a, q, k), digits(b, q, k));
                let mut prod = vec![RingElement::ZERO; k];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate().take(k - i) {
                        let term = residue.mul(RingElement(x as u32), RingElement(y as u32));
                        prod[i + j] = residue.add(prod[i + j], term);
                    }
                }
                let ds: Vec<usize> = prod.iter().map(|e| e.index()).collect();
                undigits(&ds, q)
            };
            let char_exp = |x: usize| {
                let top = digits(x, q, k)[k - 1];
                residue.char_exp(RingElement(top as u32))
            };
            FiniteRing::from_tables(spec.clone(), order, add, mul, 1, *p, char_exp)
        }
        RingSpec::Rk(k) => {
            let order = 1usize << (1usize << k);
            let basis = 1usize << k;
            let mul = |a: usize, b: usize| {
                let mut out = 0usize;
                for sa in (0..basis).filter(|s| a >> s & 1 == 1) {
                    for sb in (0..basis).filter(|s| b >> s & 1 == 1) {
                        if sa & sb == 0 {
                            out ^= 1 << (sa | sb);
                        }
                    }
                }
                out
            };
            FiniteRing::from_tables(
                spec.clone(),
                order,
                |a, b| a ^ b,
                mul,
                1,
                2,
                |x| x.count_ones() % 2,
            )
        }
        RingSpec::Product(parts) => {
            let comps: Vec<FiniteRing> = parts.iter().map(construct).collect();
            let orders: Vec<usize> = comps.iter().map(|c| c.order()).collect();
            let order: usize = orders.iter().product();
            let modulus = comps
                .iter()
                .fold(1u32, |acc, c| acc.lcm(&c.char_modulus()));
            let split = |x: usize| {
                let mut rest = x;
                orders
                    .iter()
                    .map(|&o| {
                        let d = rest % o;
                        rest /= o;
                        RingElement(d as u32)
                    })
                    .collect::<Vec<_>>()
            };
            let join = |xs: &[RingElement]| {
                xs.iter()
                    .zip(&orders)
                    .rev()
                    .fold(0usize, |acc, (x, &o)| acc * o + x.index())
            };
            let add = |a: usize, b: usize| {
                let parts: Vec<RingElement> = split(a)
                    .into_iter()
                    .zip(split(b))
                    .zip(&comps)
                    .map(|((x, y), c)| c.add(x, y))
                    .collect();
                join(&parts)
            };
            let mul = |a: usize, b: usize| {
                let parts: Vec<RingElement> = split(a)
                    .into_iter()
                    .zip(split(b))
                    .zip(&comps)
                    .map(|((x, y), c)| c.mul(x, y))
                    .collect();
                join(&parts)
            };
            let ones: Vec<RingElement> = comps.iter().map(|c| c.one()).collect();
            let char_exp = |x: usize| {
                split(x)
                    .into_iter()
                    .zip(&comps)
                    .map(|(e, c)| c.char_exp(e) * (modulus / c.char_modulus()))
                    .sum::<u32>()
            };
            FiniteRing::from_tables(spec.clone(), order, add, mul, join(&ones), modulus, char_exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> FiniteRing {
        FiniteRing::parse(s).unwrap()
    }

    #[test]
    fn zmod6_character_is_identity() {
        let r = ring("Z6");
        assert_eq!(r.order(), 6);
        assert_eq!(r.char_modulus(), 6);
        for x in r.elements() {
            assert_eq!(r.char_exp(x), x.0);
        }
        assert!(r.verify_generating_character());
    }

    #[test]
    fn z3_has_no_zero_divisors() {
        let r = ring("Z3");
        for a in r.elements().skip(1) {
            for b in r.elements().skip(1) {
                assert!(!r.mul(a, b).is_zero());
            }
        }
        assert_eq!(r.units(), vec![RingElement(1), RingElement(2)]);
    }

    #[test]
    fn gf4_trace_by_hand() {
        // Tr(y) = y + y^2 over F_4 = F_2[x]/(x^2+x+1); indices 0,1,x=2,x+1=3
        let r = ring("F(2,2;1,1,1)");
        assert_eq!(r.order(), 4);
        assert_eq!(r.char_modulus(), 2);
        let exps: Vec<u32> = r.elements().map(|x| r.char_exp(x)).collect();
        assert_eq!(exps, vec![0, 0, 1, 1]);
        assert_eq!(r.units().len(), 3);
    }

    #[test]
    fn corrupted_and_trivial_characters_are_not_generating() {
        let r = ring("Z6");
        let doubled = r.clone().with_character(6, (0..6).map(|x| 2 * x).collect()).unwrap();
        assert!(!doubled.verify_generating_character());
        let trivial = r.with_character(6, vec![0; 6]).unwrap();
        assert!(!trivial.verify_generating_character());
        let gf4 = ring("F(2,2;1,1,1)").with_character(2, vec![0; 4]).unwrap();
        assert!(!gf4.verify_generating_character());
    }

    #[test]
    fn units_of_z6() {
        assert_eq!(ring("Z6").units(), vec![RingElement(1), RingElement(5)]);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            "F(4,1;0,1)".parse::<RingSpec>().map(|s| FiniteRing::build(&s)),
            Ok(Err(RingError::NonPrimeParameter { .. }))
        ));
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(matches!(
            FiniteRing::parse("F(2,2;1,0,1)"),
            Err(RingError::ReducibleModulus(_))
        ));
        // x^2 + 1 reduces to a square mod 2, so no Galois ring
        assert!(matches!(
            FiniteRing::parse("GR(2,2,2;1,0,1)"),
            Err(RingError::ReducibleModulus(_))
        ));
        assert!(matches!(FiniteRing::parse("prod()"), Err(RingError::EmptyProduct)));
        assert!(matches!(FiniteRing::parse("Z1"), Err(RingError::InvalidParameter(_))));
        assert!(matches!(FiniteRing::parse("Rk(4)"), Err(RingError::TooLarge { .. })));
        assert!(matches!(FiniteRing::parse("F(2,2;1,1,0)"), Err(RingError::InvalidParameter(_))));
        assert!(matches!(FiniteRing::parse("Q7"), Err(RingError::Parse { .. })));
        assert!(matches!(FiniteRing::parse("Z6)"), Err(RingError::Parse { .. })));
    }

    #[test]
    fn spec_grammar_round_trip() {
        for s in [
            "Z6",
            "F(2,2;1,1,1)",
            "GR(2,2,2;1,1,1)",
            "chain(2,1,2;0,1)",
            "Rk(2)",
            "prod(Z2,Z3)",
            "prod(F(3,2;1,0,1),prod(Z2,Rk(1)))",
        ] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let spaced: RingSpec = " prod( Z2 , chain(2, 1, 2; 0, 1) ) ".parse().unwrap();
        assert_eq!(spaced.to_string(), "prod(Z2,chain(2,1,2;0,1))");
    }

    #[test]
    fn chain_ring_f2_plus_uf2() {
        let r = ring("chain(2,1,2;0,1)");
        assert_eq!(r.order(), 4);
        let u = RingElement(2);
        assert!(r.mul(u, u).is_zero());
        assert_eq!(r.units(), vec![RingElement(1), RingElement(3)]);
        // character reads the u coefficient
        assert_eq!(r.char_exponents(), &[0, 0, 1, 1]);
    }

    #[test]
    fn rk1_matches_chain_ring() {
        let rk = ring("Rk(1)");
        let chain = ring("chain(2,1,2;0,1)");
        assert_eq!(rk.order(), 4);
        for a in rk.elements() {
            for b in rk.elements() {
                assert_eq!(rk.mul(a, b), chain.mul(a, b));
                assert_eq!(rk.add(a, b), chain.add(a, b));
            }
        }
    }

    #[test]
    fn galois_ring_gr4_2() {
        let r = ring("GR(2,2,2;1,1,1)");
        assert_eq!(r.order(), 16);
        assert_eq!(r.char_modulus(), 4);
        // units are the elements with a unit reduction mod 2: 16 - 4
        assert_eq!(r.units().len(), 12);
        let x = r.from_coordinates(&[0, 1]).unwrap();
        // x^2 = -x - 1 = 3x + 3
        assert_eq!(r.coordinates(r.mul(x, x)), vec![3, 3]);
    }

    #[test]
    fn product_lifts_characters() {
        let r = ring("prod(Z2,Z3)");
        assert_eq!(r.char_modulus(), 6);
        let e = r.from_coordinates(&[1, 1]).unwrap();
        assert_eq!(r.char_exp(e), 3 + 2);
        assert_eq!(r.one(), e);
        assert!(r.verify_generating_character());
    }

    #[test]
    fn coordinates_round_trip() {
        for s in ["Z7", "F(3,2;1,0,1)", "GR(2,2,2;1,1,1)", "chain(3,1,2;0,1)", "Rk(2)", "prod(Z2,F(2,2;1,1,1))"] {
            let r = ring(s);
            for x in r.elements() {
                assert_eq!(r.from_coordinates(&r.coordinates(x)), Some(x), "{s}");
            }
        }
    }

    #[test]
    fn irreducibility_by_trial_division() {
        assert!(is_irreducible_mod_p(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible_mod_p(&[1, 0, 0, 1], 2));
        assert!(is_irreducible_mod_p(&[1, 0, 1], 3));
        // x^2 - 1 = (x - 1)(x + 1)
        assert!(!is_irreducible_mod_p(&[2, 0, 1], 3));
    }
}

//! Table-driven arithmetic for the tower GF(p) ⊆ GF(q) ⊆ GF(q²).
//!
//! Elements of GF(q²) are integer codes in the polynomial basis over GF(p):
//! the code of `c_0 + c_1 x + … + c_{m-1} x^{m-1}` is `Σ c_i p^i`, with
//! `m = 2e`. The modulus is the lexicographically smallest monic irreducible
//! polynomial of degree `m` (ordered by the code of its lower coefficients),
//! and the log/exp tables are taken with respect to the smallest-code
//! primitive element. Addition goes through a Zech logarithm table so every
//! operation is a handful of table lookups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension size q².
pub const TABLE_LIMIT: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

/// An element of GF(q²), identified by its polynomial-basis code.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub e: u32,
    /// Modulus coefficients over GF(p), lowest degree first, leading 1 included.
    pub modulus: Vec<u32>,
}

/// The arithmetic operations exposed through [`FieldCtx::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
    Pow(u64),
}

/// Frobenius image, relative norm and relative trace of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conjugates {
    pub frob: FieldElement,
    pub norm: FieldElement,
    pub trace: FieldElement,
}

/// Immutable arithmetic context for GF(p) ⊆ GF(q) ⊆ GF(q²).
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    q2: u32,
    /// q² − 1
    order: u32,
    modulus: Vec<u32>,
    generator: FieldElement,
    /// `exp[i] = g^i`, doubled so that `exp[a + b]` needs no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, `NONE` when `1 + g^k = 0`.
    zech: Vec<u32>,
    frob: Vec<u32>,
    /// Codes of GF(q) inside GF(q²), ascending.
    base_codes: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2u32;
    while (f as u64) * (f as u64) <= p as u64 {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut f = 2u32;
    while (f as u64) * (f as u64) <= n as u64 {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial helpers over GF(p), coefficients lowest degree first.
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        rem(&prod, m, p)
    }

    pub fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push((code % p as u64) as u32);
            code /= p as u64;
        }
        trim(&mut out);
        out
    }

    pub fn code(d: &[u32], p: u32) -> u32 {
        d.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64) as u32
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for dd in 1..=deg / 2 {
            let count = (p as u64).pow(dd as u32);
            for low in 0..count {
                let mut g = digits(low, p, dd);
                g.resize(dd, 0);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldCtx {
    /// Builds the context for GF(p^e) ⊆ GF(p^{2e}).
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroExponent);
        }
        let m = 2 * e as usize;
        let q2 = (p as u64)
            .checked_pow(2 * e)
            .filter(|&s| s <= TABLE_LIMIT)
            .ok_or(Error::FieldTooLarge {
                size: (p as u128).saturating_pow(2 * e).min(u64::MAX as u128) as u64,
                limit: TABLE_LIMIT,
            })? as u32;
        let q = (p as u64).pow(e) as u32;
        let order = q2 - 1;

        let modulus = (0..q2 as u64)
            .map(|low| {
                let mut f = poly::digits(low, p, m);
                f.resize(m, 0);
                f.push(1);
                f
            })
            .find(|f| f[0] != 0 && poly::is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let factors = prime_factors(order);
        let pow_poly = |base: &[u32], mut k: u64| {
            let mut acc = vec![1u32];
            let mut b = base.to_vec();
            while k > 0 {
                if k & 1 == 1 {
                    acc = poly::mulmod(&acc, &b, &modulus, p);
                }
                b = poly::mulmod(&b, &b, &modulus, p);
                k >>= 1;
            }
            acc
        };
        let generator = (2..q2)
            .find(|&g| {
                let gd = poly::digits(g as u64, p, m);
                factors.iter().all(|&r| pow_poly(&gd, (order / r) as u64) != [1u32])
            })
            .expect("GF(q²)* is cyclic");

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NONE; q2 as usize];
        let gd = poly::digits(generator as u64, p, m);
        let mut cur = vec![1u32];
        for i in 0..order as usize {
            let c = poly::code(&cur, p);
            exp[i] = c;
            exp[i + order as usize] = c;
            log[c as usize] = i as u32;
            cur = poly::mulmod(&cur, &gd, &modulus, p);
        }

        let add_codes = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a as u64, b as u64);
            let (mut out, mut place) = (0u64, 1u64);
            while a > 0 || b > 0 {
                out += ((a % p as u64 + b % p as u64) % p as u64) * place;
                a /= p as u64;
                b /= p as u64;
                place *= p as u64;
            }
            out as u32
        };
        let zech = (0..order as usize)
            .map(|k| match add_codes(1, exp[k]) {
                0 => NONE,
                v => log[v as usize],
            })
            .collect();

        let mut frob = vec![0u32; q2 as usize];
        for a in 1..q2 as usize {
            frob[a] = exp[((log[a] as u64 * q as u64) % order as u64) as usize];
        }
        let base_codes = (0..q2).filter(|&a| frob[a as usize] == a).collect();

        Ok(FieldCtx {
            p,
            e,
            q,
            q2,
            order,
            modulus,
            generator: FieldElement(generator),
            exp,
            log,
            zech,
            frob,
            base_codes,
        })
    }

    /// Rebuilds a context from its descriptor, checking the recorded modulus.
    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        let ctx = FieldCtx::new(desc.p, desc.e)?;
        if ctx.modulus != desc.modulus {
            return Err(Error::Parse(format!(
                "modulus {:?} differs from the canonical {:?}",
                desc.modulus, ctx.modulus
            )));
        }
        Ok(ctx)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            e: self.e,
            modulus: self.modulus.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn q2(&self) -> u32 {
        self.q2
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The primitive element the log tables are built on.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// Modulus coefficients joined by commas (lowest degree first).
    pub fn modulus_string(&self) -> String {
        self.modulus.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q2 {
            Ok(FieldElement(code))
        } else {
            Err(Error::OutOfRange(format!("code {code} >= {}", self.q2)))
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q2).map(FieldElement)
    }

    /// `g^k` for the context's primitive element.
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % self.order as u64) as usize])
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        match self.log[a.0 as usize] {
            NONE => None,
            l => Some(l),
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + self.order - la };
        match self.zech[k as usize] {
            NONE => FieldElement::ZERO,
            z => FieldElement(self.exp[(la + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.order / 2) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((self.order - l) % self.order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) = 1`.
    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn apply(&self, op: ArithOp, a: FieldElement, b: Option<FieldElement>) -> Result<FieldElement> {
        let rhs = || b.ok_or_else(|| Error::OutOfRange(format!("{op:?} needs a second operand")));
        match op {
            ArithOp::Add => Ok(self.add(a, rhs()?)),
            ArithOp::Sub => Ok(self.sub(a, rhs()?)),
            ArithOp::Mul => Ok(self.mul(a, rhs()?)),
            ArithOp::Div => self.div(a, rhs()?),
            ArithOp::Inv => self.inv(a),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Pow(k) => Ok(self.pow(a, k)),
        }
    }

    /// x ↦ x^q
    #[inline]
    pub fn frob(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.frob[a.0 as usize])
    }

    /// x ↦ x^{q+1}
    #[inline]
    pub fn norm(&self, a: FieldElement) -> FieldElement {
        self.mul(a, self.frob(a))
    }

    /// x ↦ x + x^q
    #[inline]
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        self.add(a, self.frob(a))
    }

    pub fn conjugation_maps(&self, a: FieldElement) -> Conjugates {
        Conjugates {
            frob: self.frob(a),
            norm: self.norm(a),
            trace: self.trace(a),
        }
    }

    pub fn is_in_base_field(&self, a: FieldElement) -> bool {
        self.frob(a) == a
    }

    /// The q codes of GF(q) inside GF(q²), ascending.
    pub fn base_field_codes(&self) -> &[u32] {
        &self.base_codes
    }

    /// Embeds the `i`-th element of GF(q) (ascending-code convention) into GF(q²).
    pub fn base_embed(&self, i: u32) -> Result<FieldElement> {
        self.base_codes
            .get(i as usize)
            .map(|&c| FieldElement(c))
            .ok_or_else(|| Error::OutOfRange(format!("GF(q) index {i} >= {}", self.q)))
    }

    /// Smallest-code λ with λ^{q+1} = b, for b ∈ GF(q)*.
    pub fn norm_preimage(&self, b: FieldElement) -> Result<FieldElement> {
        if b.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if !self.is_in_base_field(b) {
            return Err(Error::NotInBaseField(b.0));
        }
        Ok(self
            .elements()
            .skip(1)
            .find(|&l| self.norm(l) == b)
            .expect("the norm is onto GF(q)*"))
    }

    /// Smallest-code λ with λ + λ^q = b, for b ∈ GF(q).
    pub fn trace_preimage(&self, b: FieldElement) -> Result<FieldElement> {
        if !self.is_in_base_field(b) {
            return Err(Error::NotInBaseField(b.0));
        }
        Ok(self
            .elements()
            .find(|&l| self.trace(l) == b)
            .expect("the trace is onto GF(q)"))
    }
}

/// Free-function alias for [`FieldCtx::new`].
pub fn make_field(p: u32, e: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(c: u32) -> FieldElement {
        FieldElement(c)
    }

    /// Schoolbook multiplication of codes modulo `modulus`, independent of the tables.
    fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
        let m = modulus.len() - 1;
        let da: Vec<u64> = (0..m)
            .map(|i| (a as u64 / (p as u64).pow(i as u32)) % p as u64)
            .collect();
        let db: Vec<u64> = (0..m)
            .map(|i| (b as u64 / (p as u64).pow(i as u32)) % p as u64)
            .collect();
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p as u64;
            }
        }
        for k in (m..2 * m).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            for (i, &c) in modulus.iter().enumerate() {
                let idx = k - m + i;
                prod[idx] = (prod[idx] + p as u64 * p as u64 - lead * c as u64 % p as u64) % p as u64;
            }
        }
        (0..m).rev().fold(0u64, |acc, i| acc * p as u64 + prod[i]) as u32
    }

    fn slow_add(a: u32, b: u32, p: u32, m: usize) -> u32 {
        (0..m)
            .map(|i| {
                let pw = (p as u64).pow(i as u32);
                ((a as u64 / pw % p as u64 + b as u64 / pw % p as u64) % p as u64) * pw
            })
            .sum::<u64>() as u32
    }

    #[test]
    fn small_fields_and_moduli() {
        let f4 = make_field(2, 1).unwrap();
        assert_eq!((f4.q(), f4.q2()), (2, 4));
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f9 = make_field(3, 1).unwrap();
        assert_eq!((f9.q(), f9.q2()), (3, 9));
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f16 = make_field(2, 2).unwrap();
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(f16.base_field_codes().len(), 4);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(1, 1).unwrap_err(), Error::NotPrime(1));
        assert!(matches!(make_field(2, 11), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(make_field(2, 0), Err(Error::ZeroExponent)));
        assert!(make_field(2, 10).is_ok());
    }

    #[test]
    fn gf4_multiplication_table() {
        let f = make_field(2, 1).unwrap();
        let (one, w, w2) = (el(1), el(2), el(3));
        assert_eq!(f.mul(w, w), w2);
        assert_eq!(f.mul(w, w2), one);
        assert_eq!(f.inv(one).unwrap(), one);
        assert_eq!(f.add(w, w2), one);
    }

    #[test]
    fn tables_agree_with_schoolbook_arithmetic() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = make_field(p, e).unwrap();
            let m = 2 * e as usize;
            for a in 0..f.q2() {
                for b in 0..f.q2() {
                    assert_eq!(f.mul(el(a), el(b)).code(), slow_mul(a, b, p, f.modulus()));
                    assert_eq!(f.add(el(a), el(b)).code(), slow_add(a, b, p, m));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = make_field(p, e).unwrap();
            let all: Vec<_> = f.elements().collect();
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                assert_eq!(f.sub(a, a), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &all {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn pow_and_apply() {
        let f = make_field(3, 1).unwrap();
        let g = f.generator();
        assert_eq!(f.pow(g, 8), FieldElement::ONE);
        assert_eq!(f.pow(g, 0), FieldElement::ONE);
        assert_eq!(f.pow(FieldElement::ZERO, 3), FieldElement::ZERO);
        assert_eq!(f.apply(ArithOp::Pow(3), g, None).unwrap(), f.mul(g, f.mul(g, g)));
        assert_eq!(
            f.apply(ArithOp::Div, g, Some(FieldElement::ZERO)),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            f.apply(ArithOp::Inv, FieldElement::ZERO, None),
            Err(Error::DivisionByZero)
        );
        assert!(f.apply(ArithOp::Add, g, None).is_err());
    }

    #[test]
    fn conjugation_in_gf4() {
        let f = make_field(2, 1).unwrap();
        let c = f.conjugation_maps(el(2));
        assert_eq!((c.frob, c.norm, c.trace), (el(3), el(1), el(1)));
        let z = f.conjugation_maps(FieldElement::ZERO);
        assert_eq!((z.frob, z.norm, z.trace), (el(0), el(0), el(0)));
    }

    #[test]
    fn frobenius_norm_trace_properties() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)] {
            let f = make_field(p, e).unwrap();
            let q = f.q() as usize;
            let fixed: Vec<u32> = f.elements().filter(|&a| f.frob(a) == a).map(|a| a.code()).collect();
            assert_eq!(fixed, f.base_field_codes());
            let mut norm_fibres = std::collections::HashMap::new();
            let mut trace_fibres = std::collections::HashMap::new();
            for a in f.elements() {
                assert_eq!(f.frob(f.frob(a)), a);
                assert_eq!(f.frob(a), f.pow(a, q as u64));
                assert!(f.is_in_base_field(f.norm(a)));
                assert!(f.is_in_base_field(f.trace(a)));
                if !a.is_zero() {
                    *norm_fibres.entry(f.norm(a)).or_insert(0usize) += 1;
                }
                *trace_fibres.entry(f.trace(a)).or_insert(0usize) += 1;
                for b in f.elements() {
                    assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
                    assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
                }
            }
            assert_eq!(norm_fibres.len(), q - 1);
            assert!(norm_fibres.values().all(|&c| c == q + 1));
            assert_eq!(trace_fibres.len(), q);
            assert!(trace_fibres.values().all(|&c| c == q));
        }
    }

    #[test]
    fn gf16_norm_fibres_have_size_five() {
        let f = make_field(2, 2).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        for a in f.elements().skip(1) {
            *counts.entry(f.norm(a).code()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 3);
        assert!(counts.values().all(|&c| c == 5));
    }

    #[test]
    fn preimage_solvers() {
        let f4 = make_field(2, 1).unwrap();
        assert_eq!(f4.norm_preimage(FieldElement::ONE).unwrap(), FieldElement::ONE);
        assert_eq!(f4.trace_preimage(FieldElement::ZERO).unwrap(), FieldElement::ZERO);
        assert_eq!(f4.trace_preimage(FieldElement::ONE).unwrap(), el(2));
        assert_eq!(f4.norm_preimage(FieldElement::ZERO), Err(Error::ZeroArgument));
        assert_eq!(f4.norm_preimage(el(2)), Err(Error::NotInBaseField(2)));
        assert_eq!(f4.trace_preimage(el(3)), Err(Error::NotInBaseField(3)));

        let f9 = make_field(3, 1).unwrap();
        let two = el(2);
        let brute: Vec<_> = f9.elements().skip(1).filter(|&l| f9.pow(l, 4) == two).collect();
        assert_eq!(brute.len(), 4);
        assert_eq!(f9.norm_preimage(two).unwrap(), brute[0]);
        for &b in f9.base_field_codes() {
            let t = f9.trace_preimage(el(b)).unwrap();
            assert_eq!(f9.trace(t), el(b));
        }
    }

    #[test]
    fn base_embedding_and_descriptor() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.base_embed(0).unwrap(), FieldElement::ZERO);
        assert_eq!(f.base_embed(1).unwrap(), FieldElement::ONE);
        assert!(f.base_embed(4).is_err());
        let desc = f.descriptor();
        let json = serde_json::to_string(&desc).unwrap();
        assert_eq!(json, r#"{"p":2,"e":2,"modulus":[1,1,0,0,1]}"#);
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(FieldCtx::from_descriptor(&back).unwrap().modulus(), f.modulus());
        let mut bad = back.clone();
        bad.modulus = vec![1, 0, 0, 1, 1];
        assert!(FieldCtx::from_descriptor(&bad).is_err());
    }
}

//! Closed-form intersection bounds.
//!
//! `M_n(d)` denotes the largest number of rational points a degree-d
//! hypersurface can share with the non-degenerate 𝒰_n, for `d ≤ q`.
//! Values outside the proven range are `Unknown` unless the caller opts
//! into the conjectured formula, in which case the provenance says so.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Theorem,
    Conjecture,
    BruteForce,
}

/// A bound with its provenance; `value == None` means Unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: Option<u128>,
    pub provenance: Provenance,
    pub source: String,
}

impl BoundValue {
    fn theorem(value: u128, source: &str) -> Self {
        BoundValue {
            value: Some(value),
            provenance: Provenance::Theorem,
            source: source.into(),
        }
    }

    fn unknown(source: &str) -> Self {
        BoundValue {
            value: None,
            provenance: Provenance::Theorem,
            source: source.into(),
        }
    }

    pub fn is_unknown(&self) -> bool {
        self.value.is_none()
    }
}

/// Whether unknown `M` values may be replaced by the conjectured formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConjecturePolicy {
    #[default]
    Strict,
    Assume,
}

fn overflow() -> Error {
    Error::OutOfRange("bound does not fit in 128 bits".into())
}

fn pow(b: u128, e: u32) -> Result<u128> {
    b.checked_pow(e).ok_or_else(overflow)
}

fn check_degree(d: u32, q: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    if d as u64 > q {
        return Err(Error::DegreeTooLarge { d, q });
    }
    Ok(())
}

/// `1 + s + … + s^k`; zero for `k < 0`.
pub fn pi128(k: i64, s: u128) -> Result<u128> {
    let mut acc = 0u128;
    let mut term = 1u128;
    for _ in 0..=k.max(-1) {
        acc = acc.checked_add(term).ok_or_else(overflow)?;
        term = term.checked_mul(s).ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// |𝒰_n(GF(q²))|.
pub fn unital(n: u32, q: u64) -> Result<u128> {
    let q = q as i128;
    let sign = |k: u32| if k.is_multiple_of(2) { 1i128 } else { -1 };
    let a = q.checked_pow(n).ok_or_else(overflow)? - sign(n);
    let b = q.checked_pow(n + 1).ok_or_else(overflow)? - sign(n + 1);
    Ok((a.checked_mul(b).ok_or_else(overflow)? / (q * q - 1)) as u128)
}

/// |P𝒰_{n−1}(GF(q²))| for the rank-n cone in ℙⁿ.
pub fn cone_points(n: u32, q: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::OutOfRange("cone needs n >= 1".into()));
    }
    Ok(1 + (q as u128).pow(2) * unital(n - 1, q)?)
}

/// Serre's bound `d·s^{n−1} + π_{n−2}(s)` on rational zeros of a degree-d
/// form in ℙⁿ over a field with `s` elements.
pub fn serre_bound(n: u32, d: u32, s: u64) -> Result<u128> {
    check_degree(d, s)?;
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let s = s as u128;
    Ok(d as u128 * pow(s, n - 1)? + pi128(n as i64 - 2, s)?)
}

/// Sørensen's value `d(q³+q²−q) + q + 1` for surfaces against 𝒰₃.
pub fn sorensen_max(d: u32, q: u64) -> Result<u128> {
    check_degree(d, q)?;
    let q = q as u128;
    Ok(d as u128 * (q * q * q + q * q - q) + q + 1)
}

/// `dq² + 1`, the maximum for the cone P𝒰₁ in ℙ².
pub fn n2_bound(d: u32, q: u64) -> Result<u128> {
    check_degree(d, q)?;
    Ok(d as u128 * (q as u128).pow(2) + 1)
}

/// Proven values of `M_n(d)`.
#[allow(non_snake_case)]
pub fn known_M(n: u32, d: u32, q: u64) -> Result<BoundValue> {
    check_degree(d, q)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("M_n(d) needs n >= 2, got {n}")));
    }
    match n {
        2 => return Ok(BoundValue::theorem(d as u128 * (q as u128 + 1), "plane-curve-bezout")),
        3 => return Ok(BoundValue::theorem(sorensen_max(d, q)?, "sorensen")),
        _ => {}
    }
    if d >= 4 || (d == 3 && q < 7) {
        return Ok(BoundValue::unknown("small-degree-table"));
    }
    let d = d as u128;
    let (u1, u2) = (unital(n - 1, q)?, unital(n - 2, q)?);
    let q2 = (q as u128).pow(2);
    let v = if n.is_multiple_of(2) {
        d * u1 - (d - 1) * u2
    } else {
        (d * q2 - (d - 1)) * u2 + d
    };
    Ok(BoundValue::theorem(v, "small-degree-table"))
}

/// The conjectured `M_n(d)`, always tagged as a conjecture.
#[allow(non_snake_case)]
pub fn conjectured_M(n: u32, d: u32, q: u64) -> Result<BoundValue> {
    check_degree(d, q)?;
    if n < 3 {
        return Err(Error::OutOfRange(format!("conjectured M_n(d) needs n >= 3, got {n}")));
    }
    let dd = d as u128;
    let q2 = (q as u128).pow(2);
    let u1 = unital(n - 1, q)?;
    let u2 = unital(n - 2, q)?;
    let v = if n.is_multiple_of(2) {
        dd * u1 - (dd - 1) * u2
    } else {
        (dd * q2 - dd + 1) * u2 + dd
    };
    Ok(BoundValue {
        value: Some(v),
        provenance: Provenance::Conjecture,
        source: "union-of-hyperplanes-conjecture".into(),
    })
}

/// `M_n(d)` under the given policy.
#[allow(non_snake_case)]
pub fn resolve_M(n: u32, d: u32, q: u64, policy: ConjecturePolicy) -> Result<BoundValue> {
    let known = known_M(n, d, q)?;
    if known.is_unknown() && policy == ConjecturePolicy::Assume {
        return conjectured_M(n, d, q);
    }
    Ok(known)
}

/// Upper bound on `|P𝒰_{n−1} ∩ V(F)|` for the rank-n cone in ℙⁿ, n ≥ 3:
/// `max{|𝒰_{n−1}| + (d−1)(q+1)q^{2n−4}, 1 + q²·M_{n−1}(d)}`.
pub fn rank_n_bound(n: u32, d: u32, q: u64, policy: ConjecturePolicy) -> Result<BoundValue> {
    check_degree(d, q)?;
    if n < 3 {
        return Err(Error::OutOfRange(format!("rank-n cone bound needs n >= 3, got {n}")));
    }
    let qq = q as u128;
    let off = unital(n - 1, q)? + (d as u128 - 1) * (qq + 1) * pow(qq, 2 * n - 4)?;
    let m = resolve_M(n - 1, d, q, policy)?;
    let value = m.value.map(|m| off.max(1 + qq * qq * m));
    Ok(BoundValue {
        value,
        provenance: m.provenance,
        source: "rank-n-cone".into(),
    })
}

/// The intersection bound for the rank-n cone in any dimension n ≥ 2.
pub fn cone_bound(n: u32, d: u32, q: u64, policy: ConjecturePolicy) -> Result<BoundValue> {
    if n == 2 {
        return Ok(BoundValue::theorem(n2_bound(d, q)?, "plane-cone"));
    }
    rank_n_bound(n, d, q, policy)
}

/// The bound for the non-degenerate 𝒰_n, i.e. `M_n(d)` itself.
pub fn nondegenerate_bound(n: u32, d: u32, q: u64, policy: ConjecturePolicy) -> Result<BoundValue> {
    resolve_M(n, d, q, policy)
}

//! Generalized Dedekind sums `g(2k, q, i)` and the quantities built on them.
//!
//! For `k ≥ 1`, `q` coprime to `2k` and any integer `i`,
//!
//! ```text
//! g(2k, q, i) = (2k - 1)/2 - (1/k) Σ_{j=0}^{k-1} [i + qj]
//! ```
//!
//! where `[m]` is the least nonnegative residue mod `2k`. Three independent
//! evaluations are provided: the residue sum ([`g_def`]), the sign sum
//! ([`g_sign`]) and a floating-point sum over the roots of `ζ^k = -1`
//! ([`g_roots`]). On top of these sit the maximum [`big_g`], the Bredon–Wood
//! recursion [`big_n`], the maximizer recursion [`big_i`], and the Laurent
//! polynomials [`p_poly`] / [`q_poly`].
//!
//! The routines take the half-modulus `k` rather than `2k`.

pub mod identities;
mod roots;

pub use identities::{
    check_identity_at, verify_identities, Identity, IdentityGrid, IdentityReport,
};
pub use roots::{g_roots, g_roots_capped, roots_tolerance, RootTable, DEFAULT_ROOTS_CAP};

use serde::{Deserialize, Serialize};

use crate::error::{param_err, Error, Result};
use crate::exact::{gcd, mod_inverse, LaurentPoly, Rat};

/// Largest accepted half-modulus. Keeps every intermediate sum inside `i64`.
pub const MAX_K: i64 = 1_000_000_000;

/// Validated parameters of `g(2k, q, i)`: `k ≥ 1` and `gcd(q, 2k) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GParams {
    k: i64,
    q: i64,
    i: i64,
}

impl GParams {
    pub fn new(k: i64, q: i64, i: i64) -> Result<Self> {
        check_kq(k, q)?;
        Ok(GParams { k, q, i })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn i(&self) -> i64 {
        self.i
    }
}

pub(crate) fn check_k(k: i64) -> Result<()> {
    if k < 1 {
        return param_err(format!("k must be positive, got {k}"));
    }
    if k > MAX_K {
        return param_err(format!("k = {k} exceeds the supported maximum {MAX_K}"));
    }
    Ok(())
}

pub(crate) fn check_kq(k: i64, q: i64) -> Result<()> {
    check_k(k)?;
    if gcd(q, 2 * k) != 1 {
        return param_err(format!("q = {q} is not coprime to 2k = {}", 2 * k));
    }
    Ok(())
}

/// `Σ_{j=0}^{k-1} [i + qj]`, stepping the residue additively.
fn residue_sum(k: i64, q: i64, i: i64) -> i64 {
    let p = 2 * k;
    let step = q.rem_euclid(p);
    let mut r = i.rem_euclid(p);
    let mut sum = 0i64;
    for _ in 0..k {
        sum += r;
        r += step;
        if r >= p {
            r -= p;
        }
    }
    sum
}

/// `2·g(2k, q, i)`, which is always an integer.
fn twice_g(k: i64, q: i64, i: i64) -> i64 {
    let num = k * (2 * k - 1) - 2 * residue_sum(k, q, i);
    debug_assert_eq!(num % k, 0);
    num / k
}

/// `g(2k, q, i)` from the residue-sum definition.
pub fn g_def(k: i64, q: i64, i: i64) -> Result<Rat> {
    check_kq(k, q)?;
    let num = k * (2 * k - 1) - 2 * residue_sum(k, q, i);
    Rat::new(num, 2 * k)
}

/// `2·g(2k, q, i)` from the residue-sum definition, as an integer.
pub fn g_def_twice(k: i64, q: i64, i: i64) -> Result<i64> {
    check_kq(k, q)?;
    Ok(twice_g(k, q, i))
}

/// `g(2k, q, i)` as half a sum of signs `(-1)^{⌊(i + qj)/k⌋}`.
pub fn g_sign(k: i64, q: i64, i: i64) -> Result<Rat> {
    Rat::new(g_sign_twice(k, q, i)?, 2)
}

/// The sign sum `Σ_j (-1)^{⌊(i + qj)/k⌋} = 2·g(2k, q, i)`.
pub fn g_sign_twice(k: i64, q: i64, i: i64) -> Result<i64> {
    check_kq(k, q)?;
    // Shifting i or q by 2k changes each floor by an even amount.
    let p = 2 * k;
    let (i, q) = (i.rem_euclid(p), q.rem_euclid(p));
    let (mut quot, mut rem) = (i / k, i % k);
    let (q_quot, q_rem) = (q / k, q % k);
    let mut total = 0i64;
    for _ in 0..k {
        total += if quot % 2 == 0 { 1 } else { -1 };
        quot += q_quot;
        rem += q_rem;
        if rem >= k {
            rem -= k;
            quot += 1;
        }
    }
    Ok(total)
}

/// How [`big_g_with`] searches for the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanMode {
    /// Normalize `q` into `(0, k]` and scan `i ∈ [0, (q-1)/2]` with an O(1)
    /// update per step.
    Fast,
    /// Evaluate [`g_def`] at every `i ∈ [0, 2k)`.
    Brute,
}

/// The maximum `G(2k, q)` together with how it was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GMax {
    pub value: Rat,
    /// A maximizing index for `g(2k, q_normalized, ·)`.
    pub argmax: i64,
    /// The representative of `q` the scan ran on.
    pub q_normalized: i64,
    /// Whether `q` was replaced by `2k - [q]`.
    pub folded: bool,
}

/// `G(2k, q) = max_i g(2k, q, i)`, via the fast scan.
pub fn big_g(k: i64, q: i64) -> Result<Rat> {
    big_g_with(k, q, ScanMode::Fast).map(|m| m.value)
}

pub fn big_g_with(k: i64, q: i64, mode: ScanMode) -> Result<GMax> {
    check_kq(k, q)?;
    let p = 2 * k;
    match mode {
        ScanMode::Brute => {
            let qn = q.rem_euclid(p);
            let mut best: Option<(Rat, i64)> = None;
            for i in 0..p {
                let v = g_def(k, qn, i)?;
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, i));
                }
            }
            let (value, argmax) = best.expect("2k >= 2 indices scanned");
            Ok(GMax {
                value,
                argmax,
                q_normalized: qn,
                folded: false,
            })
        }
        ScanMode::Fast => {
            let (twice, argmax, qn, folded) = fast_twice_max(k, q);
            Ok(GMax {
                value: Rat::new(twice, 2)?,
                argmax,
                q_normalized: qn,
                folded,
            })
        }
    }
}

/// Integer core of the fast scan: `(2G, argmax, q*, folded)`.
///
/// `g(2k, q, i+1) = g(2k, q, i) - 1 + 2c(i)`, where `c(i)` is one exactly
/// when `[i + qj] = 2k - 1` for some `0 ≤ j < k`. Since `q` is invertible
/// mod `2k` that `j` is unique, so each step is O(1).
pub(crate) fn fast_twice_max(k: i64, q: i64) -> (i64, i64, i64, bool) {
    let p = 2 * k;
    let mut qn = q.rem_euclid(p);
    let folded = qn > k;
    if folded {
        qn = p - qn;
    }
    let inv = mod_inverse(qn, p).expect("q coprime to 2k");
    let last = (qn - 1) / 2;
    let mut cur = twice_g(k, qn, 0);
    let (mut best, mut argmax) = (cur, 0);
    for i in 0..last {
        let j = ((-1 - i).rem_euclid(p) as i128 * inv as i128).rem_euclid(p as i128) as i64;
        cur += if j < k { 2 } else { -2 };
        if cur > best {
            best = cur;
            argmax = i + 1;
        }
    }
    (best, argmax, qn, folded)
}

/// `2·G(2k, q)` as an integer, via the fast scan.
pub fn twice_big_g(k: i64, q: i64) -> Result<i64> {
    check_kq(k, q)?;
    Ok(fast_twice_max(k, q).0)
}

/// Fold `q` into `1 ≤ q ≤ k` using `q ↦ [q]` then `q ↦ min(q, 2k - q)`.
pub fn normalize_q(k: i64, q: i64) -> Result<i64> {
    check_kq(k, q)?;
    let p = 2 * k;
    let qn = q.rem_euclid(p);
    Ok(qn.min(p - qn))
}

/// Bredon–Wood minimal genus `N(2k, q)`:
/// `N(2, 1) = 1` and `N(2k, q) = N(2(k - q), q') + 1` with
/// `q' ≡ ±q (mod 2(k - q))`, `1 ≤ q' ≤ k - q`.
pub fn big_n(k: i64, q: i64) -> Result<u64> {
    let mut q = normalize_q(k, q)?;
    let mut k = k;
    let mut n = 1u64;
    while k > 1 {
        let next_k = k - q;
        let p = 2 * next_k;
        let r = q.rem_euclid(p);
        let next_q = r.min(p - r);
        if next_q < 1 || gcd(next_q, p) != 1 {
            return Err(Error::Domain(format!(
                "no admissible q' for N(2k, q) at k = {k}, q = {q}"
            )));
        }
        k = next_k;
        q = next_q;
        n += 1;
    }
    debug_assert_eq!(q, 1);
    Ok(n)
}

/// The maximizing index `I(2k, q)` for `q > 0`:
///
/// ```text
/// I(2k, q) = 0                     if k = q = 1
///          = I(2k, [q])            if q > 2k
///          = I(2k - 2q, q)         if q < k
///          = I(2k, 2k - q) + q - k if k < q < 2k
/// ```
pub fn big_i(k: i64, q: i64) -> Result<i64> {
    if q <= 0 {
        return param_err(format!("I(2k, q) is defined for q > 0, got q = {q}"));
    }
    check_kq(k, q)?;
    let (mut k, mut q) = (k, q);
    let mut shift = 0i64;
    loop {
        if k == 1 && q == 1 {
            return Ok(shift);
        }
        if q > 2 * k {
            q = q.rem_euclid(2 * k);
        } else if q < k {
            k -= q;
        } else if q > k {
            shift += q - k;
            q = 2 * k - q;
        } else {
            return Err(Error::Domain(format!("I(2k, q) reached q = k = {k}")));
        }
    }
}

/// `P(2k, q, i) = Σ_{j=0}^{k-1} u^{⌊(i + qj)/k⌋}` for `k ≥ 1` and odd `q`.
/// Coprimality of `q` and `2k` is not required.
pub fn p_poly(k: i64, q: i64, i: i64) -> Result<LaurentPoly> {
    check_k(k)?;
    if q % 2 == 0 {
        return param_err(format!("P(2k, q, i) needs odd q, got {q}"));
    }
    let mut quot = i.div_euclid(k);
    let mut rem = i.rem_euclid(k);
    let (q_quot, q_rem) = (q.div_euclid(k), q.rem_euclid(k));
    let mut out = LaurentPoly::zero();
    for _ in 0..k {
        out.bump(quot);
        quot += q_quot;
        rem += q_rem;
        if rem >= k {
            rem -= k;
            quot += 1;
        }
    }
    Ok(out)
}

/// `Q(k, j, i) = Σ_{l=0}^{k-1} u^{⌊(i + jl)/k⌋ - l}` for positive, coprime
/// `j`, `k` of opposite parity. Equal to `P(2k, j - k, i)`.
pub fn q_poly(k: i64, j: i64, i: i64) -> Result<LaurentPoly> {
    check_k(k)?;
    check_k(j)?;
    if gcd(j, k) != 1 || (j + k) % 2 == 0 {
        return param_err(format!(
            "Q(k, j, i) needs coprime j, k of opposite parity, got k = {k}, j = {j}"
        ));
    }
    let mut out = LaurentPoly::zero();
    for l in 0..k {
        let e = (i as i128 + j as i128 * l as i128).div_euclid(k as i128) as i64 - l;
        out.bump(e);
    }
    Ok(out)
}

use crate::error::{Error, Result};

/// Least nonnegative residue of `m` modulo the even modulus `p`.
pub fn lnr(m: i64, p: i64) -> Result<i64> {
    if p <= 0 || p % 2 != 0 {
        return Err(Error::InvalidModulus(p));
    }
    Ok(m.rem_euclid(p))
}

/// Floor division toward negative infinity.
pub fn floor_div(a: i64, b: i64) -> Result<i64> {
    if b <= 0 {
        return Err(Error::InvalidDivisor(b));
    }
    Ok(a.div_euclid(b))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Inverse of `a` modulo `m` in `[0, m)`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m <= 0 {
        return None;
    }
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a.rem_euclid(m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as i64)
}

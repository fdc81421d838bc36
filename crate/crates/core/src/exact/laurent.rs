use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::Rat;
use crate::error::{Error, Result};

/// Integer Laurent polynomial in one variable `u`.
///
/// Stored sparsely as exponent -> nonzero coefficient; zero coefficients are
/// never kept, so derived equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c·u^m`.
    pub fn monomial(c: i64, m: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(m, BigInt::from(c));
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, m: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    /// Add `u^m` with coefficient one. Used by the generators in the
    /// Dedekind-sum engine.
    pub(crate) fn bump(&mut self, m: i64) {
        self.add_term(m, BigInt::one());
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: i64) -> BigInt {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `c·u^m · self`.
    pub fn mul_monomial(&self, c: i64, m: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let c = BigInt::from(c);
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (e + m, a * &c)).collect(),
        }
    }

    /// Sum of coefficients, the value at `u = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Value at `u = -1`.
    pub fn eval_sign(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c })
            .sum()
    }

    /// Value at an integer point. Negative exponents at `x = 0` are a pole.
    pub fn eval_int(&self, x: i64) -> Result<Rat> {
        if x == 0 {
            if let Some(m) = self.min_exponent().filter(|m| *m < 0) {
                return Err(Error::Pole(m));
            }
            return Ok(Rat::from_big(self.coeff(0), BigInt::one()).expect("nonzero denominator"));
        }
        let Some(lo) = self.min_exponent() else {
            return Ok(Rat::zero());
        };
        // Multiply through by x^{-lo} so everything is integral.
        let shift = (-lo).max(0);
        let base = BigInt::from(x);
        let mut num = BigInt::zero();
        for (e, c) in &self.coeffs {
            let pow = u32::try_from(e + shift).map_err(|_| Error::Overflow("eval_int"))?;
            num += c * base.pow(pow);
        }
        let den_pow = u32::try_from(shift).map_err(|_| Error::Overflow("eval_int"))?;
        Rat::from_big(num, base.pow(den_pow))
    }

    /// Coefficient as `i64`, when it fits.
    pub fn coeff_i64(&self, m: i64) -> Option<i64> {
        self.coeff(m).to_i64()
    }
}

/// `(1 - u^q) / (1 - u)` as a Laurent polynomial, for `q != 0`.
///
/// For `q > 0` this is `1 + u + ... + u^{q-1}`; for `q < 0` it is
/// `-(u^q + ... + u^{-1})`.
pub fn geom_sum(q: i64) -> Result<LaurentPoly> {
    if q == 0 {
        return Err(Error::Domain(
            "geom_sum(0) is zero and never a valid step".into(),
        ));
    }
    Ok(if q > 0 {
        LaurentPoly::from_terms((0..q).map(|m| (m, 1)))
    } else {
        LaurentPoly::from_terms((q..0).map(|m| (m, -1)))
    })
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Sorted monomial list, e.g. `1*u^-1 + 2*u^0`. The zero polynomial is `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.coeffs.iter().enumerate() {
            if n == 0 {
                write!(f, "{c}*u^{m}")?;
            } else if c.is_negative() {
                write!(f, " - {}*u^{m}", c.abs())?;
            } else {
                write!(f, " + {c}*u^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

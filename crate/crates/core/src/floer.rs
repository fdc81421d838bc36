//! Closed forms for Heegaard Floer correction terms.
//!
//! Covers the lens spaces `L(2k, q)` (absolute values for `q = 1`, and the
//! differences that the Dedekind sums describe for general `q`), the
//! connected sums `#ⁿ S¹×S²`, and the circle bundles `Q_{h,e}` over the
//! non-orientable surface of genus `h`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dedekind::{big_g, check_k, check_kq, g_def};
use crate::error::{param_err, Error, Result};
use crate::exact::{gcd, AbGroup, Rat};

/// A lens space `L(p, q)` with `p = 2k` even and `q` reduced into `(0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
    /// The `q` originally supplied, before reduction.
    pub q_input: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 2 || p % 2 != 0 {
            return Err(Error::InvalidModulus(p));
        }
        check_kq(p / 2, q)?;
        Ok(LensSpace {
            p,
            q: q.rem_euclid(p),
            q_input: q,
        })
    }

    pub fn k(&self) -> i64 {
        self.p / 2
    }

    /// Index of `s_i + j`, i.e. `s_{[i + j]}`.
    pub fn shift(&self, i: i64, j: i64) -> i64 {
        (i + j).rem_euclid(self.p)
    }

    /// `Δ(L(2k, q), φ) = G(2k, q)`.
    pub fn delta(&self) -> Rat {
        big_g(self.k(), self.q).expect("validated at construction")
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}, {})", self.p, self.q)
    }
}

/// Torsion spin^c labels on `Q_{h,e}`: `t0`, `t1` do not extend over the
/// disk bundle, `u0`, `u1` do.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpincQLabel {
    T0,
    T1,
    U0,
    U1,
}

impl SpincQLabel {
    pub const ALL: [SpincQLabel; 4] = [
        SpincQLabel::T0,
        SpincQLabel::T1,
        SpincQLabel::U0,
        SpincQLabel::U1,
    ];

    pub fn is_extendible(self) -> bool {
        matches!(self, SpincQLabel::U0 | SpincQLabel::U1)
    }

    /// The subscript `a ∈ {0, 1}`.
    pub fn index(self) -> i64 {
        match self {
            SpincQLabel::T0 | SpincQLabel::U0 => 0,
            SpincQLabel::T1 | SpincQLabel::U1 => 1,
        }
    }

    /// Same family, subscript `1 - a`.
    pub fn flipped(self) -> Self {
        match self {
            SpincQLabel::T0 => SpincQLabel::T1,
            SpincQLabel::T1 => SpincQLabel::T0,
            SpincQLabel::U0 => SpincQLabel::U1,
            SpincQLabel::U1 => SpincQLabel::U0,
        }
    }
}

impl fmt::Display for SpincQLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpincQLabel::T0 => "t0",
            SpincQLabel::T1 => "t1",
            SpincQLabel::U0 => "u0",
            SpincQLabel::U1 => "u1",
        })
    }
}

impl FromStr for SpincQLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t0" => Ok(SpincQLabel::T0),
            "t1" => Ok(SpincQLabel::T1),
            "u0" => Ok(SpincQLabel::U0),
            "u1" => Ok(SpincQLabel::U1),
            _ => Err(Error::Parse(format!("unknown spin^c label {s:?}"))),
        }
    }
}

/// Which of the two correction terms of a manifold with `b₁ > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Bot,
    Top,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::Bot => "bot",
            Which::Top => "top",
        })
    }
}

impl FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bot" | "bottom" => Ok(Which::Bot),
            "top" => Ok(Which::Top),
            _ => Err(Error::Parse(format!("expected bot or top, got {s:?}"))),
        }
    }
}

/// The circle bundle `Q_{h,e}` over the connected sum of `h` projective
/// planes, with Euler number `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleQ {
    pub h: i64,
    pub e: i64,
}

impl BundleQ {
    pub fn new(h: i64, e: i64) -> Result<Self> {
        if h < 1 {
            return param_err(format!("genus h must be at least 1, got {h}"));
        }
        Ok(BundleQ { h, e })
    }

    pub fn d(&self, label: SpincQLabel, which: Which) -> Rat {
        let h = self.h;
        if label.is_extendible() {
            let v = Rat::new(h - 1, 2).expect("nonzero denominator");
            return match which {
                Which::Bot => -v,
                Which::Top => v,
            };
        }
        let a = label.index();
        let shift = match which {
            Which::Top if h % 2 == 0 => 1 - a,
            _ => a,
        };
        Rat::new(self.e - 2 + 4 * shift, 4).expect("nonzero denominator")
    }

    /// `b₁(Q_{h,e}) = h - 1`.
    pub fn b1(&self) -> i64 {
        self.h - 1
    }

    pub fn h1(&self) -> AbGroup {
        let torsion: &[u64] = if self.e % 2 == 0 { &[2, 2] } else { &[4] };
        AbGroup::from_cyclic((self.h - 1) as u64, torsion).expect("nonzero orders")
    }

    /// Orientation reversal: `-Q_{h,e} = Q_{h,-e}`.
    pub fn reversed(&self) -> BundleQ {
        BundleQ {
            h: self.h,
            e: -self.e,
        }
    }
}

/// `d(L(2k, 1), s_s) = 1/4 - (s - k)²/(2k)`, with `s` read mod `2k`.
pub fn d_lens_2k1(k: i64, s: i64) -> Result<Rat> {
    check_k(k)?;
    let s = s.rem_euclid(2 * k);
    let diff = (s - k) as i128;
    let num = (k as i128) - 2 * diff * diff;
    let num = i64::try_from(num).map_err(|_| Error::Overflow("d_lens_2k1"))?;
    Rat::new(num, 4 * k)
}

/// `d(-L(2k, q), s_{i+k}) - d(-L(2k, q), s_i) = g(2k, q, i)`.
pub fn d_diff_half(k: i64, q: i64, i: i64) -> Result<Rat> {
    g_def(k, q, i)
}

/// `d(-L(p, q), s_{i+q}) - d(-L(p, q), s_i) = (p - 1 - 2i)/p` for `0 ≤ i < p`.
pub fn d_step(p: i64, q: i64, i: i64) -> Result<Rat> {
    if p < 1 {
        return param_err(format!("p must be positive, got {p}"));
    }
    if gcd(q, p) != 1 {
        return param_err(format!("q = {q} is not coprime to p = {p}"));
    }
    if !(0..p).contains(&i) {
        return param_err(format!("index {i} outside [0, {p})"));
    }
    Rat::new(p - 1 - 2 * i, p)
}

/// `Δ(L(2k, q), φ) = G(2k, q)`.
pub fn delta_lens(k: i64, q: i64) -> Result<Rat> {
    big_g(k, q)
}

/// `d(L(2k, 1), s_{s+k}) - d(L(2k, 1), s_s) = k/2 - s` for `0 ≤ s < k`.
pub fn d_lens_2k1_twist_diff(k: i64, s: i64) -> Result<Rat> {
    check_k(k)?;
    if !(0..k).contains(&s) {
        return param_err(format!("s = {s} outside [0, {k})"));
    }
    Rat::new(k - 2 * s, 2)
}

pub fn q_bundle_d(h: i64, e: i64, label: SpincQLabel, which: Which) -> Result<Rat> {
    Ok(BundleQ::new(h, e)?.d(label, which))
}

/// `d_top(#ⁿ S¹×S²) = n/2`, `d_bot = -n/2`.
pub fn s1s2_d(n: u64, which: Which) -> Rat {
    let v = Rat::new(n as i64, 2).expect("nonzero denominator");
    match which {
        Which::Top => v,
        Which::Bot => -v,
    }
}

/// `H₁(Q_{h,e}; Z)`: `Z^{h-1} ⊕ Z₂ ⊕ Z₂` for even `e`, `Z^{h-1} ⊕ Z₄` for odd `e`.
pub fn h1_of_q(h: i64, e: i64) -> Result<AbGroup> {
    Ok(BundleQ::new(h, e)?.h1())
}

/// `dim H¹(Q_{h,e}; Z₂)`: `h + 1` for even `e`, `h` for odd `e`.
pub fn h1_z2_dim(h: i64, e: i64) -> Result<u64> {
    Ok(BundleQ::new(h, e)?.h1().mod2_rank())
}

//! Grid verifiers for the identities satisfied by `g`, `G`, `P` and `Q`.
//!
//! Each check is evaluated one `k` at a time ([`check_identity_at`]) so a
//! caller can distribute slices over workers and merge the reports in `k`
//! order, which keeps the first recorded counterexample deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{big_g_with, g_def, p_poly, q_poly, ScanMode};
use crate::error::Result;
use crate::exact::{gcd, geom_sum, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `g(2k, -q, i) = g(2k, q, i + q + k)`.
    Negation,
    /// `g(2k, q, i) - g(2k, q, i + q) = (-1)^{⌊i/k⌋}`.
    Step,
    /// `g(2k, q, i + k) = -g(2k, q, i)`.
    Antisymmetry,
    /// `g(2k, q, i) = g(2k, q, q - 1 - i)`.
    Palindrome,
    /// For `0 < q < 2k` some maximizer of `g(2k, q, ·)` lies in `[0, (q-1)/2]`.
    MaxLocation,
    /// `g(2k + 2q, q, i) = g(2k, q, i) + 1/2` for `k + q > 0`, `-k ≤ i < k + q`.
    Recurrence,
    /// `G(2k + 2q, q) = G(2k, q) + 1/2 = G(2k, -q) + 1/2` for `q > 0`.
    MaxRecurrence,
    /// `h(j, k, i) + h(k, j, i) = 1/2` with `h(k, j, i) = g(2k, j - k, i)`.
    Reciprocity,
    /// `P(2k + 2q, q, i) - P(2k, q, i) = (1 - u^q)/(1 - u)`.
    PolyRecurrence,
    /// `P(2k, q, i) = u^q P(2k, -q, i - q)`.
    PolyReflection,
    /// `u^{j-1} Q(j, k, i) - u^{k-1} Q(k, j, i) = (u^k - u^j)/(1 - u)`.
    Carlitz,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::Negation,
        Identity::Step,
        Identity::Antisymmetry,
        Identity::Palindrome,
        Identity::MaxLocation,
        Identity::Recurrence,
        Identity::MaxRecurrence,
        Identity::Reciprocity,
        Identity::PolyRecurrence,
        Identity::PolyReflection,
        Identity::Carlitz,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Negation => "negation",
            Identity::Step => "step",
            Identity::Antisymmetry => "antisymmetry",
            Identity::Palindrome => "palindrome",
            Identity::MaxLocation => "max_location",
            Identity::Recurrence => "recurrence",
            Identity::MaxRecurrence => "max_recurrence",
            Identity::Reciprocity => "reciprocity",
            Identity::PolyRecurrence => "poly_recurrence",
            Identity::PolyReflection => "poly_reflection",
            Identity::Carlitz => "carlitz",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameter ranges for the identity checks.
///
/// `k` runs over `1..=k_max`. The secondary parameter (`q` for the
/// recurrences and reflections, `j` for the reciprocity laws) is bounded in
/// absolute value by `m_max`. The index `i` always covers the full
/// admissible range of the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityGrid {
    pub k_max: i64,
    pub m_max: i64,
}

impl Default for IdentityGrid {
    fn default() -> Self {
        IdentityGrid {
            k_max: 60,
            m_max: 60,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub checked: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
}

impl IdentityReport {
    fn new(identity: Identity) -> Self {
        IdentityReport {
            identity,
            checked: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    /// Fold in a later slice. The earlier counterexample wins.
    pub fn merge(&mut self, later: IdentityReport) {
        self.checked += later.checked;
        self.failures += later.failures;
        if self.counterexample.is_none() {
            self.counterexample = later.counterexample;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn coprime_to(m: i64) -> impl Fn(&i64) -> bool {
    move |x| gcd(*x, m) == 1
}

/// Run one identity for a single value of `k`.
pub fn check_identity_at(id: Identity, k: i64, grid: &IdentityGrid) -> Result<IdentityReport> {
    let mut rep = IdentityReport::new(id);
    let p = 2 * k;
    let half = Rat::half();
    let m = grid.m_max;
    match id {
        Identity::Negation => {
            for q in (-p + 1..p).filter(coprime_to(p)) {
                for i in -p..p {
                    let (a, b) = (g_def(k, -q, i)?, g_def(k, q, i + q + k)?);
                    rep.record(a == b, || format!("k={k} q={q} i={i}: {a} != {b}"));
                }
            }
        }
        Identity::Step => {
            for q in (-p + 1..p).filter(coprime_to(p)) {
                for i in -p..p {
                    let lhs = g_def(k, q, i)? - g_def(k, q, i + q)?;
                    let rhs = Rat::from_int(if i.div_euclid(k) % 2 == 0 { 1 } else { -1 });
                    rep.record(lhs == rhs, || format!("k={k} q={q} i={i}: {lhs} != {rhs}"));
                }
            }
        }
        Identity::Antisymmetry => {
            for q in (-p + 1..p).filter(coprime_to(p)) {
                for i in -p..p {
                    let (a, b) = (g_def(k, q, i + k)?, -g_def(k, q, i)?);
                    rep.record(a == b, || format!("k={k} q={q} i={i}: {a} != {b}"));
                }
            }
        }
        Identity::Palindrome => {
            for q in (-p + 1..p).filter(coprime_to(p)) {
                for i in -p..p {
                    let (a, b) = (g_def(k, q, i)?, g_def(k, q, q - 1 - i)?);
                    rep.record(a == b, || format!("k={k} q={q} i={i}: {a} != {b}"));
                }
            }
        }
        Identity::MaxLocation => {
            for q in (1..p).filter(coprime_to(p)) {
                let values = (0..p).map(|i| g_def(k, q, i)).collect::<Result<Vec<_>>>()?;
                let max = values.iter().max().expect("nonempty");
                let ok = values[..=((q - 1) / 2) as usize].iter().any(|v| v == max);
                rep.record(ok, || {
                    format!("k={k} q={q}: no maximizer in [0, {}]", (q - 1) / 2)
                });
            }
        }
        Identity::Recurrence => {
            for q in (-k + 1..=m).filter(|q| q % 2 != 0).filter(coprime_to(p)) {
                for i in -k..k + q {
                    let lhs = g_def(k + q, q, i)?;
                    let rhs = g_def(k, q, i)? + &half;
                    rep.record(lhs == rhs, || format!("k={k} q={q} i={i}: {lhs} != {rhs}"));
                }
            }
        }
        Identity::MaxRecurrence => {
            for q in (1..=m).filter(coprime_to(p)) {
                let lhs = big_g_with(k + q, q, ScanMode::Brute)?.value;
                let plus = big_g_with(k, q, ScanMode::Brute)?.value + &half;
                let minus = big_g_with(k, -q, ScanMode::Brute)?.value + &half;
                rep.record(lhs == plus && lhs == minus, || {
                    format!("k={k} q={q}: {lhs} vs {plus} and {minus}")
                });
            }
        }
        Identity::Reciprocity => {
            for j in (1..=m).filter(coprime_to(k)).filter(|j| (j + k) % 2 == 1) {
                for i in 0..j + k {
                    let sum = g_def(j, k - j, i)? + g_def(k, j - k, i)?;
                    rep.record(sum == half, || format!("j={j} k={k} i={i}: sum {sum}"));
                }
            }
        }
        Identity::PolyRecurrence => {
            for q in (-k + 1..=m).filter(|q| q % 2 != 0) {
                let rhs = geom_sum(q)?;
                for i in -k..k + q {
                    let lhs = &p_poly(k + q, q, i)? - &p_poly(k, q, i)?;
                    rep.record(lhs == rhs, || format!("k={k} q={q} i={i}: {lhs} != {rhs}"));
                }
            }
        }
        Identity::PolyReflection => {
            for q in (-m..=m).filter(|q| q % 2 != 0) {
                for i in -p..p {
                    let lhs = p_poly(k, q, i)?;
                    let rhs = p_poly(k, -q, i - q)?.mul_monomial(1, q);
                    rep.record(lhs == rhs, || format!("k={k} q={q} i={i}: {lhs} != {rhs}"));
                }
            }
        }
        Identity::Carlitz => {
            for j in (1..=m).filter(coprime_to(k)).filter(|j| (j + k) % 2 == 1) {
                let rhs = geom_sum(j - k)?.mul_monomial(1, k);
                for i in 0..j + k {
                    let lhs = &q_poly(j, k, i)?.mul_monomial(1, j - 1)
                        - &q_poly(k, j, i)?.mul_monomial(1, k - 1);
                    rep.record(lhs == rhs, || format!("j={j} k={k} i={i}: {lhs} != {rhs}"));
                }
            }
        }
    }
    Ok(rep)
}

/// Run every identity over the full grid, one report per identity.
pub fn verify_identities(grid: &IdentityGrid) -> Result<Vec<IdentityReport>> {
    Identity::ALL
        .iter()
        .map(|&id| {
            let mut total = IdentityReport::new(id);
            for k in 1..=grid.k_max {
                total.merge(check_identity_at(id, k, grid)?);
            }
            Ok(total)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::LaurentPoly;

    #[test]
    fn worked_examples() {
        assert_eq!(
            g_def(2, 1, 0).unwrap() - g_def(1, 1, 0).unwrap(),
            Rat::half()
        );
        let lhs = &q_poly(2, 1, 0).unwrap().mul_monomial(1, 1) - &q_poly(1, 2, 0).unwrap();
        assert_eq!(lhs, LaurentPoly::monomial(1, 1));
        assert_eq!(g_def(6, 5, 0).unwrap(), Rat::one());
        assert_eq!(g_def(6, 5, 4).unwrap(), Rat::one());
    }

    #[test]
    fn max_recurrence_fails_for_negative_q() {
        let lhs = big_g_with(2, -1, ScanMode::Brute).unwrap().value;
        let rhs = big_g_with(3, -1, ScanMode::Brute).unwrap().value + Rat::half();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn small_grid_passes() {
        let grid = IdentityGrid {
            k_max: 12,
            m_max: 12,
        };
        for rep in verify_identities(&grid).unwrap() {
            assert!(rep.checked > 0, "{} checked nothing", rep.identity);
            assert!(rep.passed(), "{}: {:?}", rep.identity, rep.counterexample);
        }
    }

    #[test]
    fn merge_keeps_first_counterexample() {
        let mut a = IdentityReport::new(Identity::Step);
        a.record(true, String::new);
        let mut b = IdentityReport::new(Identity::Step);
        b.record(false, || "later".into());
        let mut c = IdentityReport::new(Identity::Step);
        c.record(false, || "latest".into());
        a.merge(b);
        a.merge(c);
        assert_eq!((a.checked, a.failures), (3, 2));
        assert_eq!(a.counterexample.as_deref(), Some("later"));
    }
}

//! Verification families for large grid scans.
//!
//! A family splits its grid into independent slices (usually one per `k`
//! or per genus). [`Family::run_slice`] evaluates one slice; the driver may
//! run slices in any order or in parallel and then [`ScanReport::merge`]
//! them in slice order, which makes the aggregate independent of how the
//! work was scheduled.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dedekind::{
    big_g_with, big_n, check_identity_at, fast_twice_max, g_def_twice, g_sign_twice, Identity,
    IdentityGrid, RootTable, ScanMode, DEFAULT_ROOTS_CAP,
};
use crate::error::{Error, Result};
use crate::exact::{gcd, Rat};
use crate::floer::{s1s2_d, BundleQ, SpincQLabel, Which};
use crate::obstruct::{
    k_c_lens, lens_feasible, mbound_check, spin_check, spin_cor, twist_bound_holds, PhiRestriction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `2·G(2k, q) = N(2k, q)` via the fast scan, with a brute-force
    /// cross-check for small `2k`.
    TwoGEqualsN,
    /// Every identity for `g`, `G` and `P` except Carlitz reciprocity.
    AppendixIdentities,
    Carlitz,
    /// Gap, duality, linearity and additivity of the closed forms.
    TdbundleConsistency,
    /// `N(2k, q) ≡ k_c (mod 2)`, so both mod-4 congruences agree.
    CongruenceCoherence,
    /// Residue sum, sign sum and roots-of-unity evaluations agree.
    ThreeWay,
    /// The generic genus bound at `Δ = G` agrees with the exact lens test.
    LensEquivalence,
    /// Every feasible closed-spin verdict satisfies the corollary bounds.
    SpinImplication,
    /// The minimal-genus surface is feasible and the twisted bound is tight.
    Tightness,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::TwoGEqualsN,
        Family::AppendixIdentities,
        Family::Carlitz,
        Family::TdbundleConsistency,
        Family::CongruenceCoherence,
        Family::ThreeWay,
        Family::LensEquivalence,
        Family::SpinImplication,
        Family::Tightness,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::TwoGEqualsN => "two_g_equals_n",
            Family::AppendixIdentities => "appendix_identities",
            Family::Carlitz => "carlitz",
            Family::TdbundleConsistency => "tdbundle_consistency",
            Family::CongruenceCoherence => "congruence_coherence",
            Family::ThreeWay => "three_way",
            Family::LensEquivalence => "lens_equivalence",
            Family::SpinImplication => "spin_implication",
            Family::Tightness => "tightness",
        }
    }

    pub fn default_bounds(&self) -> ScanBounds {
        let base = ScanBounds::default();
        match self {
            Family::TwoGEqualsN => ScanBounds {
                max_p: 2000,
                ..base
            },
            Family::AppendixIdentities | Family::Carlitz => ScanBounds { max_p: 120, ..base },
            Family::TdbundleConsistency => ScanBounds {
                h_max: 20,
                e_max: 40,
                ..base
            },
            Family::CongruenceCoherence => ScanBounds { max_p: 500, ..base },
            Family::ThreeWay => ScanBounds { max_p: 400, ..base },
            Family::LensEquivalence => ScanBounds {
                max_p: 200,
                h_max: 12,
                e_max: 40,
                ..base
            },
            Family::SpinImplication => ScanBounds {
                h_max: 6,
                e_max: 60,
                ..base
            },
            Family::Tightness => ScanBounds { max_p: 200, ..base },
        }
    }

    /// Slice keys in merge order.
    pub fn slices(&self, b: &ScanBounds) -> Vec<i64> {
        match self {
            Family::TdbundleConsistency => (1..=b.h_max).collect(),
            Family::SpinImplication => (0..=b.sigma_max).collect(),
            _ => (1..=b.max_p / 2).collect(),
        }
    }

    pub fn run_slice(&self, b: &ScanBounds, slice: i64) -> Result<SliceReport> {
        let mut rep = SliceReport::default();
        match self {
            Family::TwoGEqualsN => two_g_equals_n(b, slice, &mut rep)?,
            Family::AppendixIdentities => {
                let grid = IdentityGrid {
                    k_max: b.max_p / 2,
                    m_max: b.m_max,
                };
                for id in Identity::ALL
                    .into_iter()
                    .filter(|id| *id != Identity::Carlitz)
                {
                    rep.absorb(&check_identity_at(id, slice, &grid)?);
                }
            }
            Family::Carlitz => {
                let grid = IdentityGrid {
                    k_max: b.max_p / 2,
                    m_max: b.m_max,
                };
                rep.absorb(&check_identity_at(Identity::Carlitz, slice, &grid)?);
            }
            Family::TdbundleConsistency => tdbundle(b, slice, &mut rep)?,
            Family::CongruenceCoherence => congruence(slice, &mut rep)?,
            Family::ThreeWay => three_way(b, slice, &mut rep)?,
            Family::LensEquivalence => lens_equivalence(b, slice, &mut rep)?,
            Family::SpinImplication => spin_implication(b, slice, &mut rep)?,
            Family::Tightness => tightness(slice, &mut rep)?,
        }
        Ok(rep)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown scan family {s:?}")))
    }
}

/// Grid limits. Each family reads only the fields it needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBounds {
    /// Largest even modulus `2k`.
    pub max_p: i64,
    /// Bound on the secondary parameter of the identity checks.
    pub m_max: i64,
    pub h_max: i64,
    pub e_max: i64,
    /// Largest `2k` cross-checked by brute force.
    pub brute_max_p: i64,
    pub sigma_max: i64,
    pub b_max: i64,
    /// Largest `k` evaluated with roots of unity.
    pub roots_cap: i64,
}

impl Default for ScanBounds {
    fn default() -> Self {
        ScanBounds {
            max_p: 200,
            m_max: 60,
            h_max: 12,
            e_max: 40,
            brute_max_p: 200,
            sigma_max: 32,
            b_max: 6,
            roots_cap: DEFAULT_ROOTS_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceReport {
    pub checked: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
}

impl SliceReport {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn absorb(&mut self, r: &crate::dedekind::IdentityReport) {
        self.checked += r.checked;
        self.failures += r.failures;
        if self.counterexample.is_none() {
            self.counterexample = r
                .counterexample
                .as_ref()
                .map(|c| format!("{}: {c}", r.identity));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: Family,
    pub bounds: ScanBounds,
    pub slices_run: u64,
    pub slices_total: u64,
    pub checked: u64,
    pub failures: u64,
    pub counterexample: Option<String>,
}

impl ScanReport {
    pub fn new(family: Family, bounds: ScanBounds, slices_total: u64) -> Self {
        ScanReport {
            family,
            bounds,
            slices_run: 0,
            slices_total,
            checked: 0,
            failures: 0,
            counterexample: None,
        }
    }

    /// Fold in the next slice; call in slice order.
    pub fn merge(&mut self, slice: i64, r: SliceReport) {
        self.slices_run += 1;
        self.checked += r.checked;
        self.failures += r.failures;
        if self.counterexample.is_none() {
            self.counterexample = r.counterexample.map(|c| format!("[slice {slice}] {c}"));
        }
    }

    pub fn complete(&self) -> bool {
        self.slices_run == self.slices_total
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.complete()
    }
}

/// Run a family sequentially.
pub fn run_family(family: Family, bounds: &ScanBounds) -> Result<ScanReport> {
    let slices = family.slices(bounds);
    let mut report = ScanReport::new(family, *bounds, slices.len() as u64);
    for s in slices {
        report.merge(s, family.run_slice(bounds, s)?);
    }
    Ok(report)
}

fn coprime_qs(k: i64) -> impl Iterator<Item = i64> {
    (1..2 * k).filter(move |q| gcd(*q, 2 * k) == 1)
}

fn two_g_equals_n(b: &ScanBounds, k: i64, rep: &mut SliceReport) -> Result<()> {
    for q in coprime_qs(k) {
        let twice = fast_twice_max(k, q).0;
        let n = big_n(k, q)? as i64;
        rep.record(twice == n, || format!("k={k} q={q}: 2G = {twice}, N = {n}"));
        if 2 * k <= b.brute_max_p {
            let brute = big_g_with(k, q, ScanMode::Brute)?.value;
            let fast = Rat::new(twice, 2)?;
            rep.record(brute == fast, || {
                format!("k={k} q={q}: fast {fast}, brute {brute}")
            });
        }
    }
    Ok(())
}

fn congruence(k: i64, rep: &mut SliceReport) -> Result<()> {
    for q in coprime_qs(k) {
        let n = big_n(k, q)? as i64;
        let kc = k_c_lens(k, q)? as i64;
        let ok = (0..4).all(|h| (2 * kc + 2 * h).rem_euclid(4) == (2 * h - 2 * n).rem_euclid(4));
        rep.record(ok && n % 2 == k % 2, || {
            format!("k={k} q={q}: N = {n}, k_c = {kc}")
        });
    }
    Ok(())
}

fn three_way(b: &ScanBounds, k: i64, rep: &mut SliceReport) -> Result<()> {
    let table = (k <= b.roots_cap)
        .then(|| RootTable::with_cap(k, b.roots_cap))
        .transpose()?;
    for q in coprime_qs(k) {
        for i in -2 * k..4 * k {
            let (d, s) = (g_def_twice(k, q, i)?, g_sign_twice(k, q, i)?);
            rep.record(d == s, || {
                format!("k={k} q={q} i={i}: residue {d}/2, sign {s}/2")
            });
        }
        if let Some(table) = &table {
            let tol = crate::dedekind::roots_tolerance(k);
            let approx = table.g_many(q, 0..2 * k)?;
            for (i, v) in approx.into_iter().enumerate() {
                let exact = g_def_twice(k, q, i as i64)? as f64 / 2.0;
                rep.record((exact - v).abs() <= tol, || {
                    format!("k={k} q={q} i={i}: roots {v}, exact {exact}")
                });
            }
        }
    }
    Ok(())
}

fn tdbundle(b: &ScanBounds, h: i64, rep: &mut SliceReport) -> Result<()> {
    let slack = Rat::from_int(h - 1);
    let quarter = Rat::new(1, 4)?;
    for e in -b.e_max..=b.e_max {
        let q = BundleQ::new(h, e)?;
        let dual = q.reversed();
        let next = BundleQ::new(h, e + 1)?;
        for label in SpincQLabel::ALL {
            let (bot, top) = (q.d(label, Which::Bot), q.d(label, Which::Top));
            rep.record(
                bot >= &top - &slack && bot.congruent_mod(&(&top - &slack), 2),
                || format!("gap h={h} e={e} {label}: bot {bot}, top {top}"),
            );
            let partner = if h % 2 == 1 && !label.is_extendible() {
                label.flipped()
            } else {
                label
            };
            let mirrored = -dual.d(partner, Which::Bot);
            rep.record(top == mirrored, || {
                format!("duality h={h} e={e} {label}: top {top}, −bot of reverse {mirrored}")
            });
            if !label.is_extendible() {
                for which in [Which::Bot, Which::Top] {
                    let (a, c) = (q.d(label, which), next.d(label, which));
                    rep.record(c == &a + &quarter, || {
                        format!("linearity h={h} e={e} {label} {which}: {a} then {c}")
                    });
                }
            }
        }
    }
    for n in 0..=b.h_max as u64 {
        for which in [Which::Bot, Which::Top] {
            let m = h as u64;
            let ok = s1s2_d(m + n, which) == s1s2_d(m, which) + s1s2_d(n, which);
            rep.record(ok, || format!("additivity m={m} n={n} {which}"));
        }
    }
    Ok(())
}

fn lens_equivalence(b: &ScanBounds, k: i64, rep: &mut SliceReport) -> Result<()> {
    for q in coprime_qs(k) {
        let delta = Rat::new(fast_twice_max(k, q).0, 2)?;
        for h in 1..=b.h_max {
            for e in -b.e_max..=b.e_max {
                let exact = lens_feasible(k, q, h, e)?;
                let generic = mbound_check(&delta, h, e, PhiRestriction::Unknown)?;
                rep.record(exact.feasible == generic.feasible, || {
                    format!(
                        "k={k} q={q} h={h} e={e}: lens {}, generic {}",
                        exact.feasible, generic.feasible
                    )
                });
                if let Some(c) = &exact.certificate {
                    let [plus, minus] = c.counts;
                    let ok = plus >= 0
                        && minus >= 0
                        && 2 * (plus - minus) == e
                        && plus + minus == c.extra_summands
                        && c.base_genus + c.extra_summands == h;
                    rep.record(ok, || format!("certificate k={k} q={q} h={h} e={e}: {c:?}"));
                }
            }
        }
    }
    Ok(())
}

fn spin_implication(b: &ScanBounds, sigma: i64, rep: &mut SliceReport) -> Result<()> {
    for b_minus in 0..=b.b_max {
        let b_plus = sigma + b_minus;
        for h in 1..=b.h_max {
            for e in -b.e_max..=b.e_max {
                if spin_check(sigma, b_plus, b_minus, h, e)?.feasible {
                    let cor = spin_cor(sigma, b_plus, b_minus, h, e)?;
                    rep.record(cor.feasible, || {
                        format!(
                            "σ={sigma} b⁺={b_plus} b⁻={b_minus} h={h} e={e}: {:?}",
                            cor.violated
                        )
                    });
                }
            }
        }
    }
    Ok(())
}

fn tightness(k: i64, rep: &mut SliceReport) -> Result<()> {
    let half = Rat::half();
    for q in coprime_qs(k) {
        let n = big_n(k, q)? as i64;
        let g = Rat::new(fast_twice_max(k, q).0, 2)?;
        rep.record(lens_feasible(k, q, n, 0)?.feasible, || {
            format!("k={k} q={q}: N = {n} infeasible")
        });
        let bound = BundleQ::new(n, 0)?.d(SpincQLabel::T1, Which::Bot) + Rat::new(n - 1, 2)?;
        rep.record(g == bound, || {
            format!("k={k} q={q}: G = {g}, bound {bound}")
        });
        let held = twist_bound_holds(&Rat::zero(), &g, n, 0, SpincQLabel::T1)?;
        rep.record(held, || {
            format!("k={k} q={q}: twisted bound fails at the maximizer")
        });
        let above = twist_bound_holds(&Rat::zero(), &(&g + &half), n, 0, SpincQLabel::T1)?;
        rep.record(!above, || format!("k={k} q={q}: bound not tight"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(f: Family) -> ScanBounds {
        let d = f.default_bounds();
        ScanBounds {
            max_p: d.max_p.min(40),
            m_max: 10,
            h_max: d.h_max.min(5),
            e_max: d.e_max.min(12),
            brute_max_p: 40,
            sigma_max: 8,
            b_max: 3,
            roots_cap: d.roots_cap,
        }
    }

    #[test]
    fn every_family_passes_on_a_small_grid() {
        for f in Family::ALL {
            let rep = run_family(f, &small(f)).unwrap();
            assert!(rep.checked > 0, "{f} checked nothing");
            assert!(rep.passed(), "{f}: {:?}", rep.counterexample);
        }
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }

    #[test]
    fn merge_is_order_sensitive_only_for_the_counterexample() {
        let mut r = ScanReport::new(Family::Carlitz, ScanBounds::default(), 2);
        r.merge(
            1,
            SliceReport {
                checked: 2,
                failures: 1,
                counterexample: Some("a".into()),
            },
        );
        r.merge(
            2,
            SliceReport {
                checked: 3,
                failures: 1,
                counterexample: Some("b".into()),
            },
        );
        assert_eq!((r.checked, r.failures), (5, 2));
        assert_eq!(r.counterexample.as_deref(), Some("[slice 1] a"));
        assert!(r.complete() && !r.passed());
    }
}

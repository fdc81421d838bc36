//! Feasibility of `(h, e)`: genus and normal Euler number of a closed
//! non-orientable surface in a homology cobordism or a closed 4-manifold.
//!
//! Every checker returns a [`Verdict`] listing all violated conditions. A
//! feasible verdict means "not obstructed by the implemented theorems"
//! except for lens-space cobordisms, where the test is exact and comes with
//! a construction [`Certificate`].

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::dedekind::{big_n, check_kq};
use crate::error::{param_err, Error, Result};
use crate::exact::{mod_inverse, Rat};
use crate::floer::{BundleQ, SpincQLabel, Which};

/// How the order-2 class `φ` restricts to the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PhiRestriction {
    Trivial,
    Nontrivial,
    #[default]
    Unknown,
}

/// A named condition from one of the obstruction theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    GenusTwoDelta,
    GenusTwoDeltaPlusOne,
    EulerBoundDelta,
    EulerCongruenceDelta,
    GenusN,
    EulerBoundN,
    EulerCongruenceN,
    SelfLinkingCongruence,
    EulerParity,
    RhoGenus,
    RhoEuler,
    DefiniteCongruence,
    DefiniteLower,
    DefiniteUpper,
    SphereCongruence,
    SphereBound,
    SpinNoWitness,
    SpinCongruence,
    SpinLower,
    SpinUpper,
}

impl Condition {
    pub fn description(&self) -> &'static str {
        match self {
            Condition::GenusTwoDelta => "h ≥ 2Δ",
            Condition::GenusTwoDeltaPlusOne => "h ≥ 2Δ + 1",
            Condition::EulerBoundDelta => "|e| ≤ 2h − 4Δ",
            Condition::EulerCongruenceDelta => "e ≡ 2h − 4Δ (mod 4)",
            Condition::GenusN => "h ≥ N",
            Condition::EulerBoundN => "|e| ≤ 2(h − N)",
            Condition::EulerCongruenceN => "e ≡ 2(h − N) (mod 4)",
            Condition::SelfLinkingCongruence => "e ≡ 2k_c + 2h (mod 4)",
            Condition::EulerParity => "e even",
            Condition::RhoGenus => "h ≥ |ρ|/2",
            Condition::RhoEuler => "|e| ≤ 2(2h − |ρ|)",
            Condition::DefiniteCongruence => "e ≡ ℓ − 2h (mod 4)",
            Condition::DefiniteLower => "e ≥ ℓ − 2h",
            Condition::DefiniteUpper => "e ≤ 9b + 10h − 16",
            Condition::SphereCongruence => "e ≡ 2h (mod 4)",
            Condition::SphereBound => "|e| ≤ 2h",
            Condition::SpinNoWitness => "some k in [0, h] satisfies the spin conditions",
            Condition::SpinCongruence => "e ≡ σ + 2h (mod 4)",
            Condition::SpinLower => "e ≥ min{−2h, σ − 8(b⁻ − 2) − 10h}",
            Condition::SpinUpper => "e ≤ σ + 8(b⁺ − 2) + 10h",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

/// A surface realizing a feasible lens-cobordism pair: the minimal-genus
/// surface (genus `N`, Euler number 0) connect-summed with `counts[0]`
/// copies of `RP² ⊂ S⁴` of Euler number `+2` and `counts[1]` of Euler
/// number `−2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub base_genus: i64,
    pub extra_summands: i64,
    pub counts: [i64; 2],
}

/// Data attached to a feasible closed-spin verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinWitness {
    pub k: i64,
    pub e_prime: i64,
    pub sigma_z: i64,
    pub b2_z: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub feasible: bool,
    pub violated: Vec<Condition>,
    pub certificate: Option<Certificate>,
    pub witness: Option<SpinWitness>,
    /// True when feasibility is an if-and-only-if statement.
    pub exact: bool,
}

impl Verdict {
    fn from_conditions(violated: Vec<Condition>, exact: bool) -> Self {
        Verdict {
            feasible: violated.is_empty(),
            violated,
            certificate: None,
            witness: None,
            exact,
        }
    }
}

#[derive(Default)]
struct Conditions(Vec<Condition>);

impl Conditions {
    fn require(&mut self, ok: bool, c: Condition) -> bool {
        if !ok {
            self.0.push(c);
        }
        ok
    }
}

fn rem4(x: i64) -> i64 {
    x.rem_euclid(4)
}

fn check_h(h: i64) -> Result<()> {
    if h < 1 {
        return param_err(format!("genus h must be at least 1, got {h}"));
    }
    Ok(())
}

/// Genus and Euler-number bounds in a homology cobordism with maximal
/// twisted `d`-difference `Δ`.
///
/// The Euler-number conditions are only evaluated once `h ≥ 2Δ` holds,
/// since they presuppose it.
pub fn mbound_check(delta: &Rat, h: i64, e: i64, phi: PhiRestriction) -> Result<Verdict> {
    check_h(h)?;
    let two_delta = delta.scale(2);
    let Some(n2) = two_delta.to_i64() else {
        return param_err(format!("Δ = {delta} is not a half-integer"));
    };
    let mut c = Conditions::default();
    if c.require(h >= n2, Condition::GenusTwoDelta) {
        let refine = matches!(
            (h % 2 == 0, phi),
            (true, PhiRestriction::Nontrivial) | (false, PhiRestriction::Trivial)
        );
        if refine {
            c.require(h > n2, Condition::GenusTwoDeltaPlusOne);
        }
        let cap = 2 * h - 2 * n2;
        c.require(e.abs() <= cap, Condition::EulerBoundDelta);
        c.require(rem4(e - cap) == 0, Condition::EulerCongruenceDelta);
    }
    Ok(Verdict::from_conditions(c.0, false))
}

/// Exact feasibility in `L(2k, q) × I` (or any homology cobordism of it):
/// `h ≥ N`, `|e| ≤ 2(h − N)` and `e ≡ 2(h − N) (mod 4)`.
pub fn lens_feasible(k: i64, q: i64, h: i64, e: i64) -> Result<Verdict> {
    check_h(h)?;
    let n = big_n(k, q)? as i64;
    let mut c = Conditions::default();
    if c.require(h >= n, Condition::GenusN) {
        let ell = h - n;
        c.require(e.abs() <= 2 * ell, Condition::EulerBoundN);
        c.require(rem4(e - 2 * ell) == 0, Condition::EulerCongruenceN);
    }
    let mut v = Verdict::from_conditions(c.0, true);
    if v.feasible {
        let ell = h - n;
        let (plus, minus) = (2 * ell + e, 2 * ell - e);
        if plus % 4 != 0 || minus % 4 != 0 || plus < 0 || minus < 0 {
            return Err(Error::Domain(format!(
                "certificate counts ({plus}/4, {minus}/4) are not nonnegative integers"
            )));
        }
        v.certificate = Some(Certificate {
            base_genus: n,
            extra_summands: ell,
            counts: [plus / 4, minus / 4],
        });
    }
    Ok(v)
}

/// The residue `(2k_c + 2h) mod 4` that `e` must have.
pub fn euler_congruence(k_c: u8, h: i64) -> Result<i64> {
    if k_c > 1 {
        return param_err(format!("k_c must be 0 or 1, got {k_c}"));
    }
    check_h(h)?;
    Ok(rem4(2 * k_c as i64 + 2 * h))
}

/// `k_c = 2·lk(c, c)` for the order-2 class `c = k ∈ Z_{2k}` of `L(2k, q)`,
/// using `lk(x, y) = −q̄xy/(2k) mod 1`.
pub fn k_c_lens(k: i64, q: i64) -> Result<u8> {
    check_kq(k, q)?;
    let p = 2 * k as i128;
    let qbar = mod_inverse(q, 2 * k).expect("coprime") as i128;
    // lk = m / 2k with m = [−q̄k²], and 2·lk = m / k.
    let m = (-qbar * (k as i128) * (k as i128)).rem_euclid(p);
    debug_assert_eq!(m % k as i128, 0);
    Ok((m / k as i128) as u8)
}

/// Both inequalities of the twisted-difference bound, plus the mod-2
/// congruence of the three quantities.
pub fn twist_bound_holds(
    d0: &Rat,
    d1_twisted: &Rat,
    h: i64,
    e: i64,
    label: SpincQLabel,
) -> Result<bool> {
    if label.is_extendible() {
        return param_err(format!("label {label} extends over the disk bundle"));
    }
    let q = BundleQ::new(h, e)?;
    let slack = Rat::new(h - 1, 2)?;
    let lo = q.d(label, Which::Top) - &slack;
    let hi = q.d(label, Which::Bot) + &slack;
    let mid = d1_twisted - d0;
    Ok(lo <= mid
        && mid <= hi
        && lo.congruent_mod(&mid, 2)
        && mid.congruent_mod(&hi, 2)
        && lo.congruent_mod(&hi, 2))
}

/// A table of `d`-invariants indexed by `Z_{n1} ⊕ … ⊕ Z_{nr}`, flattened in
/// row-major order (last coordinate fastest).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DTable {
    orders: Vec<i64>,
    values: Vec<Rat>,
}

impl DTable {
    pub fn cyclic(values: Vec<Rat>) -> Result<Self> {
        let n = values.len() as i64;
        Self::new(vec![n], values)
    }

    pub fn new(orders: Vec<i64>, values: Vec<Rat>) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&n| n < 1) {
            return param_err("group orders must be positive");
        }
        let size = orders.iter().try_fold(1i64, |acc, &n| acc.checked_mul(n));
        if size != Some(values.len() as i64) {
            return param_err(format!(
                "table has {} entries but the group has order {size:?}",
                values.len()
            ));
        }
        Ok(DTable { orders, values })
    }

    pub fn order(&self) -> i64 {
        self.values.len() as i64
    }

    fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.orders)
            .map(|(a, n)| a.rem_euclid(*n))
            .collect()
    }

    fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((a, b), n)| (a + b).rem_euclid(*n))
            .collect()
    }

    fn index(&self, x: &[i64]) -> usize {
        x.iter()
            .zip(&self.orders)
            .fold(0i64, |acc, (a, n)| acc * n + a) as usize
    }

    fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..n).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn value(&self, x: &[i64]) -> &Rat {
        &self.values[self.index(x)]
    }

    fn subgroup_generated_by(&self, gens: &[Vec<i64>]) -> Result<BTreeSet<Vec<i64>>> {
        let zero = vec![0; self.orders.len()];
        let mut set = BTreeSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        let gens: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| {
                if g.len() != self.orders.len() {
                    param_err(format!("element {g:?} has the wrong number of coordinates"))
                } else {
                    Ok(self.reduce(g))
                }
            })
            .collect::<Result<_>>()?;
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(set)
    }
}

/// Whether the `d`-invariants are compatible with an essential `RP²`:
/// some coset `s₀ + K` on which `d(s + φ) − d(s) = 1/2` throughout.
///
/// `K` defaults to the subgroup of doubles `{2x}`; pass generators to
/// override it.
pub fn rp2_test(table: &DTable, phi: &[i64], subgroup: Option<&[Vec<i64>]>) -> Result<bool> {
    if table.order() % 2 != 0 {
        return param_err("the group must have even order");
    }
    if phi.len() != table.orders.len() {
        return param_err(format!("φ = {phi:?} has the wrong number of coordinates"));
    }
    let phi = table.reduce(phi);
    let zero = vec![0; phi.len()];
    if phi == zero || table.add(&phi, &phi) != zero {
        return param_err(format!("φ = {phi:?} is not of order 2"));
    }
    let elements = table.elements();
    let k = match subgroup {
        Some(gens) => table.subgroup_generated_by(gens)?,
        None => elements.iter().map(|x| table.add(x, x)).collect(),
    };
    let half = Rat::half();
    Ok(elements.iter().any(|s0| {
        k.iter().all(|kk| {
            let s = table.add(s0, kk);
            table.value(&table.add(&s, &phi)) - table.value(&s) == half
        })
    }))
}

/// [`rp2_test`] for a cyclic table with `φ` given as an index shift.
pub fn rp2_test_cyclic(values: &[Rat], phi: i64) -> Result<bool> {
    rp2_test(&DTable::cyclic(values.to_vec())?, &[phi], None)
}

/// Rational genus `Θ = (N − 2)/2` of the order-2 class in `L(2k, q)`.
pub fn theta_lens(k: i64, q: i64) -> Result<Rat> {
    Rat::new(big_n(k, q)? as i64 - 2, 2)
}

/// `ρ_α(Q_{h,e}) = −e/2` for every twisted representation; `e` even.
pub fn rho_q_bundle(h: i64, e: i64) -> Result<Rat> {
    check_h(h)?;
    if e % 2 != 0 {
        return Err(Error::OutOfHypothesis(format!(
            "ρ of Q_{{h,e}} needs even e, got {e}"
        )));
    }
    Ok(Rat::from_int(-e / 2))
}

/// ρ-invariant input for the G-signature bound: `ρ_α(M₀)`, `ρ_{ατ}(M₁)`
/// and `kpow` where the image of `α` is `Z_{2^kpow}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoInput {
    pub rho_alpha: Rat,
    pub rho_alphatau: Rat,
    pub kpow: u32,
}

impl RhoInput {
    /// Build from the signed difference `D = ρ_{ατ} − ρ_α` alone.
    pub fn from_difference(d: Rat, kpow: u32) -> Self {
        RhoInput {
            rho_alpha: Rat::zero(),
            rho_alphatau: d,
            kpow,
        }
    }

    pub fn difference(&self) -> Rat {
        &self.rho_alphatau - &self.rho_alpha
    }
}

/// `−B ≤ D + e/2 ≤ B` with `B = 2^kpow·h` (or `2h` when `kpow = 0`).
pub fn gsign_check(rho: &RhoInput, h: i64, e: i64) -> Result<bool> {
    check_h(h)?;
    if e % 2 != 0 {
        return param_err(format!("the Euler number must be even here, got {e}"));
    }
    let shift = rho.kpow.max(1);
    let bound = Rat::from_big(BigInt::from(h) << shift, BigInt::from(1))?;
    let mid = rho.difference() + Rat::from_int(e / 2);
    Ok(-&bound <= mid && mid <= bound)
}

/// `h ≥ |ρ|/2` and `|e| ≤ 2(2h − |ρ|)` for trivial `α`.
pub fn rho_bound(rho_tau_abs: &Rat, h: i64, e: i64) -> Result<Verdict> {
    check_h(h)?;
    if rho_tau_abs.is_negative() {
        return param_err(format!("|ρ| must be nonnegative, got {rho_tau_abs}"));
    }
    if e % 2 != 0 {
        return param_err(format!("the Euler number must be even here, got {e}"));
    }
    let mut c = Conditions::default();
    let hr = Rat::from_int(h);
    c.require(hr.scale(2) >= *rho_tau_abs, Condition::RhoGenus);
    c.require(
        Rat::from_int(e.abs()) <= (hr.scale(2) - rho_tau_abs).scale(2),
        Condition::RhoEuler,
    );
    Ok(Verdict::from_conditions(c.0, false))
}

/// Closed positive-definite `X` with `b₂ = b` and minimal lift square `ℓ`.
///
/// The upper bound `e ≤ 9b + 10h − 16` is applied only for `ℓ = b ≥ 1`:
/// it comes from the characteristic-surface theorem, which needs `X`
/// non-spin, and at `b = 0` it would contradict the standard `RP² ⊂ S⁴`.
pub fn definite_check(b: i64, ell: i64, h: i64, e: i64) -> Result<Verdict> {
    check_h(h)?;
    if b < 0 || ell < 0 || ell > b {
        return param_err(format!("need 0 ≤ ℓ ≤ b, got ℓ = {ell}, b = {b}"));
    }
    let mut c = Conditions::default();
    c.require(rem4(e - (ell - 2 * h)) == 0, Condition::DefiniteCongruence);
    c.require(e >= ell - 2 * h, Condition::DefiniteLower);
    if ell == b && b >= 1 {
        c.require(e <= 9 * b + 10 * h - 16, Condition::DefiniteUpper);
    }
    Ok(Verdict::from_conditions(c.0, false))
}

/// Homology 4-sphere: `e ≡ 2h (mod 4)` and `|e| ≤ 2h`.
pub fn sphere_check(h: i64, e: i64) -> Result<Verdict> {
    check_h(h)?;
    let mut c = Conditions::default();
    c.require(rem4(e - 2 * h) == 0, Condition::SphereCongruence);
    c.require(e.abs() <= 2 * h, Condition::SphereBound);
    Ok(Verdict::from_conditions(c.0, false))
}

fn check_spin_context(sigma: i64, b_plus: i64, b_minus: i64, h: i64) -> Result<()> {
    check_h(h)?;
    if b_plus < 0 || b_minus < 0 {
        return param_err("b⁺ and b⁻ must be nonnegative");
    }
    if sigma != b_plus - b_minus {
        return param_err(format!(
            "σ = {sigma} differs from b⁺ − b⁻ = {}",
            b_plus - b_minus
        ));
    }
    if sigma < 0 {
        return Err(Error::Orientation(sigma));
    }
    Ok(())
}

/// Characteristic surface in a closed non-spin `X`: search `k ∈ [0, h]`.
///
/// With `b₂(X) = 0` the ambient manifold is a homology sphere, which is
/// spin, so the sphere bounds are used instead.
pub fn spin_check(sigma: i64, b_plus: i64, b_minus: i64, h: i64, e: i64) -> Result<Verdict> {
    check_spin_context(sigma, b_plus, b_minus, h)?;
    if b_plus + b_minus == 0 {
        return sphere_check(h, e);
    }
    let witness = (0..=h).find_map(|k| {
        let ep = e + 2 * h - 4 * k;
        let ok = (ep - sigma).rem_euclid(16) == 0
            && ep <= sigma + 8 * (b_plus + h - 2)
            && (ep >= 0 || ep >= sigma - 8 * (b_minus + h - 2))
            && (ep != 0 || 0 >= sigma - 8 * (b_minus + h - 1));
        ok.then(|| SpinWitness {
            k,
            e_prime: ep,
            sigma_z: -ep,
            b2_z: if ep == 0 { h + 1 } else { h - 1 + ep.abs() },
        })
    });
    let violated = if witness.is_some() {
        vec![]
    } else {
        vec![Condition::SpinNoWitness]
    };
    let mut v = Verdict::from_conditions(violated, false);
    v.witness = witness;
    Ok(v)
}

/// The congruence and linear bounds implied by [`spin_check`].
/// Falls back to the sphere bounds when `b₂(X) = 0`, as [`spin_check`] does.
pub fn spin_cor(sigma: i64, b_plus: i64, b_minus: i64, h: i64, e: i64) -> Result<Verdict> {
    check_spin_context(sigma, b_plus, b_minus, h)?;
    if b_plus + b_minus == 0 {
        return sphere_check(h, e);
    }
    let mut c = Conditions::default();
    c.require(rem4(e - sigma - 2 * h) == 0, Condition::SpinCongruence);
    let lower = (-2 * h).min(sigma - 8 * (b_minus - 2) - 10 * h);
    c.require(e >= lower, Condition::SpinLower);
    c.require(e <= sigma + 8 * (b_plus - 2) + 10 * h, Condition::SpinUpper);
    Ok(Verdict::from_conditions(c.0, false))
}

/// The ambient setting of an embedding question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Context {
    /// A homology cobordism from `L(2k, q)` to itself.
    LensCobordism {
        k: i64,
        q: i64,
    },
    /// A homology cobordism between rational homology spheres, described by
    /// whichever invariants are known.
    GenericCobordism {
        delta: Option<Rat>,
        #[serde(default)]
        phi: PhiRestriction,
        k_c: Option<u8>,
        rho_tau_abs: Option<Rat>,
    },
    ClosedDefinite {
        b: i64,
        ell: i64,
    },
    ClosedSpin {
        sigma: i64,
        b_plus: i64,
        b_minus: i64,
    },
    HomologySphere,
}

impl Context {
    /// An interval `(lo, hi)` containing every `e` that is not obstructed
    /// at genus `h`, or `None` when the checks leave `e` unbounded. The
    /// interval is empty when `lo > hi`.
    pub fn euler_window(&self, h: i64) -> Option<(i64, i64)> {
        match self {
            Context::LensCobordism { .. } | Context::HomologySphere => Some((-2 * h, 2 * h)),
            Context::GenericCobordism {
                delta, rho_tau_abs, ..
            } => {
                let from_delta = delta
                    .as_ref()
                    .and_then(|d| d.scale(2).to_i64())
                    .map(|n2| 2 * h - 2 * n2);
                let from_rho = rho_tau_abs.as_ref().and_then(|r| {
                    (Rat::from_int(h).scale(2) - r)
                        .scale(2)
                        .floor()
                        .try_into()
                        .ok()
                });
                let cap = match (from_delta, from_rho) {
                    (Some(a), Some(b)) => a.min(b),
                    (a, b) => a.or(b)?,
                };
                Some((-cap, cap))
            }
            Context::ClosedDefinite { b, ell } => {
                (ell == b && *b >= 1).then(|| (ell - 2 * h, 9 * b + 10 * h - 16))
            }
            Context::ClosedSpin {
                sigma,
                b_plus,
                b_minus,
            } => Some(if b_plus + b_minus == 0 {
                (-2 * h, 2 * h)
            } else {
                (
                    (-2 * h).min(sigma - 8 * (b_minus - 2) - 10 * h),
                    sigma + 8 * (b_plus - 2) + 10 * h,
                )
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedQuery {
    pub h: i64,
    pub e: i64,
    pub context: Context,
}

impl EmbedQuery {
    pub fn new(h: i64, e: i64, context: Context) -> Result<Self> {
        check_h(h)?;
        match &context {
            Context::LensCobordism { k, q } => check_kq(*k, *q)?,
            Context::GenericCobordism { k_c, delta, .. } => {
                if k_c.is_some_and(|c| c > 1) {
                    return param_err("k_c must be 0 or 1");
                }
                if delta
                    .as_ref()
                    .is_some_and(|d| d.scale(2).to_i64().is_none())
                {
                    return param_err("Δ must be a half-integer");
                }
            }
            Context::ClosedDefinite { b, ell } => {
                if *b < 0 || *ell < 0 || ell > b {
                    return param_err(format!("need 0 ≤ ℓ ≤ b, got ℓ = {ell}, b = {b}"));
                }
            }
            Context::ClosedSpin {
                sigma,
                b_plus,
                b_minus,
            } => check_spin_context(*sigma, *b_plus, *b_minus, h)?,
            Context::HomologySphere => {}
        }
        Ok(EmbedQuery { h, e, context })
    }
}

/// Run the checks appropriate to the query's context.
pub fn decide(query: &EmbedQuery) -> Result<Verdict> {
    let (h, e) = (query.h, query.e);
    match &query.context {
        Context::LensCobordism { k, q } => lens_feasible(*k, *q, h, e),
        Context::HomologySphere => sphere_check(h, e),
        Context::ClosedDefinite { b, ell } => definite_check(*b, *ell, h, e),
        Context::ClosedSpin {
            sigma,
            b_plus,
            b_minus,
        } => spin_check(*sigma, *b_plus, *b_minus, h, e),
        Context::GenericCobordism {
            delta,
            phi,
            k_c,
            rho_tau_abs,
        } => {
            check_h(h)?;
            let mut violated = Vec::new();
            if let Some(delta) = delta {
                violated.extend(mbound_check(delta, h, e, *phi)?.violated);
            }
            if let Some(k_c) = k_c {
                if rem4(e) != euler_congruence(*k_c, h)? {
                    violated.push(Condition::SelfLinkingCongruence);
                }
            }
            if let Some(rho) = rho_tau_abs {
                if e % 2 != 0 {
                    violated.push(Condition::EulerParity);
                } else {
                    violated.extend(rho_bound(rho, h, e)?.violated);
                }
            }
            Ok(Verdict::from_conditions(violated, false))
        }
    }
}

/// Smallest `h ≤ h_max` that is not obstructed, either at the given `e`
/// or, when `e` is `None`, at some `e` in the context's Euler window
/// (`|e| ≤ e_max` when the context leaves `e` unbounded).
pub fn min_genus(context: &Context, e: Option<i64>, h_max: i64, e_max: i64) -> Result<Option<i64>> {
    for h in 1..=h_max {
        let (lo, hi) = match e {
            Some(e) => (e, e),
            None => context.euler_window(h).unwrap_or((-e_max, e_max)),
        };
        for e in lo..=hi {
            if decide(&EmbedQuery::new(h, e, context.clone())?)?.feasible {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::floer::d_lens_2k1;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn mbound_examples() {
        let v = mbound_check(&r(1, 2), 1, 0, PhiRestriction::Unknown).unwrap();
        assert!(v.feasible && !v.exact);
        let v = mbound_check(&r(1, 1), 1, 0, PhiRestriction::Unknown).unwrap();
        assert_eq!(v.violated, vec![Condition::GenusTwoDelta]);
        let v = mbound_check(&r(1, 1), 3, 0, PhiRestriction::Unknown).unwrap();
        assert_eq!(v.violated, vec![Condition::EulerCongruenceDelta]);
        assert!(mbound_check(&r(1, 3), 3, 0, PhiRestriction::Unknown).is_err());
    }

    #[test]
    fn mbound_refinement() {
        let v = mbound_check(&r(1, 1), 2, 0, PhiRestriction::Nontrivial).unwrap();
        assert_eq!(v.violated, vec![Condition::GenusTwoDeltaPlusOne]);
        assert!(
            mbound_check(&r(1, 1), 2, 0, PhiRestriction::Trivial)
                .unwrap()
                .feasible
        );
        let v = mbound_check(&r(3, 2), 3, 0, PhiRestriction::Trivial).unwrap();
        assert_eq!(v.violated, vec![Condition::GenusTwoDeltaPlusOne]);
    }

    #[test]
    fn lens_examples() {
        let v = lens_feasible(2, 1, 2, 0).unwrap();
        assert!(v.feasible && v.exact);
        assert_eq!(v.certificate.unwrap().counts, [0, 0]);
        let v = lens_feasible(2, 1, 3, 2).unwrap();
        assert_eq!(
            v.certificate.unwrap(),
            Certificate {
                base_genus: 2,
                extra_summands: 1,
                counts: [1, 0]
            }
        );
        let v = lens_feasible(2, 1, 1, 0).unwrap();
        assert!(!v.feasible);
        assert_eq!(v.violated, vec![Condition::GenusN]);
        assert!(v.certificate.is_none());
    }

    #[test]
    fn congruence_examples() {
        assert_eq!(euler_congruence(1, 1).unwrap(), 0);
        assert_eq!(euler_congruence(0, 2).unwrap(), 0);
        assert_eq!(euler_congruence(0, 1).unwrap(), 2);
        assert!(euler_congruence(2, 1).is_err());
        assert_eq!(k_c_lens(1, 1).unwrap(), 1);
        assert_eq!(k_c_lens(2, 1).unwrap(), 0);
        assert_eq!(k_c_lens(3, 1).unwrap(), 1);
        for k in 1..=40 {
            for q in (1..2 * k).filter(|q| crate::exact::gcd(*q, 2 * k) == 1) {
                assert_eq!(k_c_lens(k, q).unwrap() as i64, k % 2);
            }
        }
    }

    #[test]
    fn twist_bound_examples() {
        use SpincQLabel::*;
        assert!(twist_bound_holds(&r(1, 4), &r(3, 4), 1, 0, T1).unwrap());
        // h = 2, t0: bounds collapse to [0, 0].
        assert!(twist_bound_holds(&r(0, 1), &r(0, 1), 2, 0, T0).unwrap());
        // h = 3, t0: bounds [−3/2, 1/2]; a middle term of 0 breaks the congruence.
        assert!(!twist_bound_holds(&r(0, 1), &r(0, 1), 3, 0, T0).unwrap());
        assert!(twist_bound_holds(&r(0, 1), &r(-3, 2), 3, 0, T0).unwrap());
        assert!(!twist_bound_holds(&r(0, 1), &r(2, 1), 1, 0, T0).unwrap());
        assert!(twist_bound_holds(&r(0, 1), &r(0, 1), 1, 0, U0).is_err());
    }

    #[test]
    fn rp2_examples() {
        assert!(rp2_test_cyclic(&[r(-1, 4), r(1, 4)], 1).unwrap());
        let l41: Vec<Rat> = (0..4).map(|s| d_lens_2k1(2, s).unwrap()).collect();
        assert!(!rp2_test_cyclic(&l41, 2).unwrap());
        assert!(!rp2_test_cyclic(&[r(-1, 4), r(-7, 4)], 1).unwrap());
        assert!(rp2_test_cyclic(&l41, 1).is_err());
        assert!(rp2_test_cyclic(&vec![r(0, 1); 3], 1).is_err());
    }

    #[test]
    fn rp2_noncyclic_and_explicit_subgroup() {
        // RP³ # RP³: Z₂ ⊕ Z₂ with d = ±1/4 on each factor, summed.
        let q = |a: i64| if a == 0 { r(-1, 4) } else { r(1, 4) };
        let values = vec![q(0) + q(0), q(0) + q(1), q(1) + q(0), q(1) + q(1)];
        let table = DTable::new(vec![2, 2], values).unwrap();
        assert!(rp2_test(&table, &[1, 0], None).unwrap());
        assert!(rp2_test(&table, &[1, 0], Some(&[vec![0, 1]])).unwrap());
        assert!(!rp2_test(&table, &[1, 1], Some(&[vec![0, 1]])).unwrap());
        assert!(DTable::new(vec![2, 2], vec![r(0, 1); 3]).is_err());
    }

    #[test]
    fn theta_and_rho_examples() {
        assert_eq!(theta_lens(1, 1).unwrap(), r(-1, 2));
        assert_eq!(theta_lens(2, 1).unwrap(), r(0, 1));
        assert_eq!(theta_lens(6, 5).unwrap(), r(0, 1));
        assert_eq!(rho_q_bundle(1, 0).unwrap(), r(0, 1));
        assert_eq!(rho_q_bundle(2, 4).unwrap(), r(-2, 1));
        assert_eq!(rho_q_bundle(3, -2).unwrap(), r(1, 1));
        assert!(matches!(rho_q_bundle(1, 1), Err(Error::OutOfHypothesis(_))));
    }

    #[test]
    fn gsign_examples() {
        let zero = RhoInput::from_difference(r(0, 1), 2);
        assert!(gsign_check(&zero, 1, 8).unwrap());
        assert!(!gsign_check(&zero, 1, 10).unwrap());
        let neg = RhoInput::from_difference(r(-1, 1), 1);
        assert!(!gsign_check(&neg, 1, -6).unwrap());
        assert!(gsign_check(&neg, 1, -2).unwrap());
        let four = RhoInput::from_difference(r(4, 1), 0);
        assert!(!gsign_check(&four, 1, 0).unwrap());
        assert!(gsign_check(&zero, 1, 3).is_err());
        let big = RhoInput::from_difference(r(0, 1), 200);
        assert!(gsign_check(&big, 1, 1_000_000).unwrap());
    }

    #[test]
    fn rho_bound_examples() {
        let v = rho_bound(&r(4, 1), 1, 0).unwrap();
        assert!(!v.feasible);
        assert!(rho_bound(&r(4, 1), 2, 0).unwrap().feasible);
        let v = rho_bound(&r(0, 1), 1, 6).unwrap();
        assert_eq!(v.violated, vec![Condition::RhoEuler]);
        assert!(rho_bound(&r(-1, 1), 1, 0).is_err());
    }

    #[test]
    fn definite_examples() {
        assert!(definite_check(0, 0, 1, 2).unwrap().feasible);
        assert_eq!(
            definite_check(0, 0, 1, 4).unwrap().violated,
            vec![Condition::DefiniteCongruence]
        );
        assert!(definite_check(1, 1, 1, -4)
            .unwrap()
            .violated
            .contains(&Condition::DefiniteLower));
        assert!(definite_check(1, 2, 1, 0).is_err());
        assert_eq!(
            definite_check(1, 1, 1, 7).unwrap().violated,
            vec![Condition::DefiniteUpper]
        );
    }

    #[test]
    fn sphere_region_for_rp2() {
        let feasible: Vec<i64> = (-10..=10)
            .filter(|&e| sphere_check(1, e).unwrap().feasible)
            .collect();
        assert_eq!(feasible, vec![-2, 2]);
    }

    #[test]
    fn spin_examples() {
        let v = spin_check(0, 1, 1, 1, 2).unwrap();
        assert!(v.feasible);
        assert_eq!(v.witness.as_ref().unwrap().k, 1);
        assert_eq!(v.witness.unwrap().b2_z, 2);
        let v = spin_check(16, 16, 0, 1, 14).unwrap();
        assert_eq!(
            v.witness.unwrap(),
            SpinWitness {
                k: 0,
                e_prime: 16,
                sigma_z: -16,
                b2_z: 16
            }
        );
        assert!(!spin_check(0, 0, 0, 1, 6).unwrap().feasible);
        assert!(matches!(
            spin_check(-1, 0, 1, 1, 0),
            Err(Error::Orientation(-1))
        ));
        assert!(spin_check(1, 0, 0, 1, 0).is_err());
    }

    #[test]
    fn spin_cor_examples() {
        assert!(spin_cor(0, 0, 0, 1, 2).unwrap().feasible);
        assert!(!spin_cor(0, 0, 0, 2, 6).unwrap().feasible);
        assert_eq!(
            spin_cor(0, 0, 0, 2, 8).unwrap().violated,
            vec![Condition::SphereBound]
        );
        assert!(spin_cor(0, 0, 0, 1, 3)
            .unwrap()
            .violated
            .contains(&Condition::SphereCongruence));
        assert_eq!(
            spin_cor(0, 1, 1, 2, 16).unwrap().violated,
            vec![Condition::SpinUpper]
        );
        assert!(spin_cor(0, 1, 1, 1, 3)
            .unwrap()
            .violated
            .contains(&Condition::SpinCongruence));
        assert!(spin_cor(0, 1, 1, 1, -14)
            .unwrap()
            .violated
            .contains(&Condition::SpinLower));
    }

    #[test]
    fn generic_context_rho_example() {
        let ctx = Context::GenericCobordism {
            delta: None,
            phi: PhiRestriction::Unknown,
            k_c: None,
            rho_tau_abs: Some(r(4, 1)),
        };
        assert_eq!(min_genus(&ctx, None, 10, 40).unwrap(), Some(2));
        let ctx = Context::GenericCobordism {
            delta: None,
            phi: PhiRestriction::Unknown,
            k_c: Some(1),
            rho_tau_abs: Some(r(4, 1)),
        };
        assert_eq!(min_genus(&ctx, Some(0), 10, 0).unwrap(), Some(3));
    }

    #[test]
    fn euler_windows_contain_every_feasible_pair() {
        let contexts = [
            Context::LensCobordism { k: 3, q: 1 },
            Context::HomologySphere,
            Context::ClosedDefinite { b: 2, ell: 2 },
            Context::ClosedSpin {
                sigma: 2,
                b_plus: 3,
                b_minus: 1,
            },
            Context::ClosedSpin {
                sigma: 0,
                b_plus: 0,
                b_minus: 0,
            },
            Context::GenericCobordism {
                delta: Some(r(1, 2)),
                phi: PhiRestriction::Unknown,
                k_c: None,
                rho_tau_abs: Some(r(3, 2)),
            },
        ];
        for ctx in contexts {
            for h in 1..=6 {
                let (lo, hi) = ctx.euler_window(h).unwrap();
                for e in -200..=200 {
                    let v = decide(&EmbedQuery::new(h, e, ctx.clone()).unwrap()).unwrap();
                    if v.feasible {
                        assert!(
                            lo <= e && e <= hi,
                            "{ctx:?} h={h} e={e} outside [{lo}, {hi}]"
                        );
                    }
                }
            }
        }
        assert_eq!(
            Context::ClosedDefinite { b: 2, ell: 1 }.euler_window(1),
            None
        );
    }

    #[test]
    fn queries_validate() {
        assert!(EmbedQuery::new(0, 0, Context::HomologySphere).is_err());
        assert!(EmbedQuery::new(1, 0, Context::LensCobordism { k: 2, q: 2 }).is_err());
        assert!(EmbedQuery::new(1, 0, Context::ClosedDefinite { b: 1, ell: 2 }).is_err());
        let q = EmbedQuery::new(1, 0, Context::LensCobordism { k: 2, q: 1 }).unwrap();
        assert!(!decide(&q).unwrap().feasible);
    }
}

use clap::Args;
use genusgauge_core::{Context, PhiRestriction, Rat};

use crate::{CliError, CliResult};

/// Exactly one ambient setting for a feasibility question.
#[derive(Args, Clone, Debug, Default, PartialEq)]
pub struct ContextArgs {
    /// Homology cobordism of L(2k, q) to itself, given as `2k,q`.
    #[arg(long, value_name = "2K,Q", allow_hyphen_values = true)]
    pub lens: Option<String>,

    /// Maximal twisted d-invariant difference Δ of a generic cobordism.
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    pub delta: Option<Rat>,

    /// Restriction of φ to the surface (with --delta).
    #[arg(long, value_name = "trivial|nontrivial|unknown", value_parser = parse_phi)]
    pub phi: Option<PhiRestriction>,

    /// Self-linking parity k_c ∈ {0, 1} of a generic cobordism.
    #[arg(long = "kc", value_name = "0|1")]
    pub k_c: Option<u8>,

    /// |ρ_{ατ}| for the G-signature bound of a generic cobordism.
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    pub rho: Option<Rat>,

    /// Closed positive-definite manifold, given as `b,ell`.
    #[arg(long, value_name = "B,ELL")]
    pub definite: Option<String>,

    /// Closed spin manifold, given as `sigma,b+,b-`.
    #[arg(long, value_name = "SIGMA,B+,B-", allow_hyphen_values = true)]
    pub spin: Option<String>,

    /// The 4-sphere or any integral homology sphere.
    #[arg(long)]
    pub sphere: bool,
}

pub fn parse_phi(s: &str) -> Result<PhiRestriction, String> {
    match s.to_ascii_lowercase().as_str() {
        "trivial" => Ok(PhiRestriction::Trivial),
        "nontrivial" | "non-trivial" => Ok(PhiRestriction::Nontrivial),
        "unknown" => Ok(PhiRestriction::Unknown),
        other => Err(format!("unknown φ restriction {other:?}")),
    }
}

fn int_list(flag: &str, s: &str, len: usize) -> CliResult<Vec<i64>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let values: Option<Vec<i64>> = parts.iter().map(|p| p.parse().ok()).collect();
    match values {
        Some(v) if v.len() == len => Ok(v),
        _ => Err(CliError::Usage(format!(
            "--{flag} expects {len} comma-separated integers, got {s:?}"
        ))),
    }
}

impl ContextArgs {
    pub fn build(&self) -> CliResult<Context> {
        let generic = self.delta.is_some() || self.k_c.is_some() || self.rho.is_some();
        let chosen = [
            self.lens.is_some(),
            generic,
            self.definite.is_some(),
            self.spin.is_some(),
            self.sphere,
        ]
        .into_iter()
        .filter(|b| *b)
        .count();
        if chosen != 1 {
            return Err(CliError::Usage(
                "give exactly one context: --lens, --delta/--kc/--rho, --definite, --spin or --sphere".into(),
            ));
        }
        if self.phi.is_some() && self.delta.is_none() {
            return Err(CliError::Usage(
                "--phi only applies together with --delta".into(),
            ));
        }
        if let Some(lens) = &self.lens {
            let v = int_list("lens", lens, 2)?;
            let (p, q) = (v[0], v[1]);
            if p < 2 || p % 2 != 0 {
                return Err(CliError::Usage(format!(
                    "--lens needs an even order 2k ≥ 2, got {p}"
                )));
            }
            return Ok(Context::LensCobordism { k: p / 2, q });
        }
        if generic {
            return Ok(Context::GenericCobordism {
                delta: self.delta.clone(),
                phi: self.phi.unwrap_or_default(),
                k_c: self.k_c,
                rho_tau_abs: self.rho.clone(),
            });
        }
        if let Some(d) = &self.definite {
            let v = int_list("definite", d, 2)?;
            return Ok(Context::ClosedDefinite { b: v[0], ell: v[1] });
        }
        if let Some(s) = &self.spin {
            let v = int_list("spin", s, 3)?;
            return Ok(Context::ClosedSpin {
                sigma: v[0],
                b_plus: v[1],
                b_minus: v[2],
            });
        }
        Ok(Context::HomologySphere)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_takes_the_order() {
        let args = ContextArgs {
            lens: Some("4,1".into()),
            ..Default::default()
        };
        assert_eq!(args.build().unwrap(), Context::LensCobordism { k: 2, q: 1 });
        let odd = ContextArgs {
            lens: Some("3,1".into()),
            ..Default::default()
        };
        assert!(matches!(odd.build(), Err(CliError::Usage(_))));
    }

    #[test]
    fn exactly_one_context() {
        assert!(matches!(
            ContextArgs::default().build(),
            Err(CliError::Usage(_))
        ));
        let both = ContextArgs {
            sphere: true,
            definite: Some("1,1".into()),
            ..Default::default()
        };
        assert!(matches!(both.build(), Err(CliError::Usage(_))));
        let generic = ContextArgs {
            delta: Some("1/2".parse().unwrap()),
            rho: Some("4".parse().unwrap()),
            ..Default::default()
        };
        assert!(matches!(
            generic.build(),
            Ok(Context::GenericCobordism { .. })
        ));
    }
}

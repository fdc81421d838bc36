use clap::Args;
use genusgauge_core::dedekind::{
    big_g, big_i, big_n, g_def, g_roots_capped, g_sign, p_poly, q_poly,
};
use genusgauge_core::floer::{
    d_diff_half, d_lens_2k1, d_lens_2k1_twist_diff, d_step, delta_lens, h1_of_q, h1_z2_dim,
    q_bundle_d, s1s2_d,
};
use genusgauge_core::obstruct::{k_c_lens, rho_q_bundle, theta_lens};
use genusgauge_core::{SpincQLabel, Which};
use serde::Serialize;

use crate::{CliError, CliResult};

/// Function names accepted by `eval`, with the parameters each one reads.
pub const FUNCTIONS: &[(&str, &str)] = &[
    ("g", "k q i"),
    ("g_sign", "k q i"),
    ("g_roots", "k q i"),
    ("G", "k q"),
    ("N", "k q"),
    ("I", "k q"),
    ("P", "k q i"),
    ("Q", "k j i"),
    ("d2k1", "k s"),
    ("twist", "k s"),
    ("dstep", "p q i"),
    ("ddiff", "k q i"),
    ("delta", "k q"),
    ("theta", "k q"),
    ("kc", "k q"),
    ("qd", "h e label which"),
    ("s1s2", "n which"),
    ("h1q", "h e"),
    ("h1z2", "h e"),
    ("rhoq", "h e"),
];

#[derive(Args, Clone, Debug, Default, PartialEq, Serialize)]
pub struct EvalArgs {
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    /// Spin^c index of L(2k, 1).
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    /// Lens space order (any parity) for `dstep`.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    /// Genus of the base surface.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<i64>,
    /// Euler number.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    /// Number of S¹×S² summands.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[arg(long, value_name = "t0|t1|u0|u1")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<SpincQLabel>,
    #[arg(long, value_name = "bot|top")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<Which>,
}

/// A formatted result and whether it is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluated {
    pub value: String,
    pub exact: bool,
}

fn need<T: Copy>(function: &str, name: &str, v: Option<T>) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("eval {function} needs --{name}")))
}

/// Evaluate `function` at `args`; `roots_cap` bounds `g_roots`.
pub fn evaluate(function: &str, a: &EvalArgs, roots_cap: i64) -> CliResult<Evaluated> {
    let f = function;
    let exact = |value: String| Ok(Evaluated { value, exact: true });
    match f {
        "g" => {
            exact(g_def(need(f, "k", a.k)?, need(f, "q", a.q)?, need(f, "i", a.i)?)?.to_string())
        }
        "g_sign" => {
            exact(g_sign(need(f, "k", a.k)?, need(f, "q", a.q)?, need(f, "i", a.i)?)?.to_string())
        }
        "g_roots" => {
            let v = g_roots_capped(
                need(f, "k", a.k)?,
                need(f, "q", a.q)?,
                need(f, "i", a.i)?,
                roots_cap,
            )?;
            Ok(Evaluated {
                value: format!("{v:.12}"),
                exact: false,
            })
        }
        "G" => exact(big_g(need(f, "k", a.k)?, need(f, "q", a.q)?)?.to_string()),
        "N" => exact(big_n(need(f, "k", a.k)?, need(f, "q", a.q)?)?.to_string()),
        "I" => exact(big_i(need(f, "k", a.k)?, need(f, "q", a.q)?)?.to_string()),
        "P" => {
            exact(p_poly(need(f, "k", a.k)?, need(f, "q", a.q)?, need(f, "i", a.i)?)?.to_string())
        }
        "Q" => {
            exact(q_poly(need(f, "k", a.k)?, need(f, "j", a.j)?, need(f, "i", a.i)?)?.to_string())
        }
        "d2k1" => exact(d_lens_2k1(need(f, "k", a.k)?, need(f, "s", a.s)?)?.to_string()),
        "twist" => {
            exact(d_lens_2k1_twist_diff(need(f, "k", a.k)?, need(f, "s", a.s)?)?.to_string())
        }
        "dstep" => {
            exact(d_step(need(f, "p", a.p)?, need(f, "q", a.q)?, need(f, "i", a.i)?)?.to_string())
        }
        "ddiff" => exact(
            d_diff_half(need(f, "k", a.k)?, need(f, "q", a.q)?, need(f, "i", a.i)?)?.to_string(),
        ),
        "delta" => exact(delta_lens(need(f, "k", a.k)?, need(f, "q", a.q)?)?.to_string()),
        "theta" => exact(theta_lens(need(f, "k", a.k)?, need(f, "q", a.q)?)?.to_string()),
        "kc" => exact(k_c_lens(need(f, "k", a.k)?, need(f, "q", a.q)?)?.to_string()),
        "qd" => exact(
            q_bundle_d(
                need(f, "h", a.h)?,
                need(f, "e", a.e)?,
                need(f, "label", a.label)?,
                need(f, "which", a.which)?,
            )?
            .to_string(),
        ),
        "s1s2" => exact(s1s2_d(need(f, "n", a.n)?, need(f, "which", a.which)?).to_string()),
        "h1q" => exact(h1_of_q(need(f, "h", a.h)?, need(f, "e", a.e)?)?.to_string()),
        "h1z2" => exact(h1_z2_dim(need(f, "h", a.h)?, need(f, "e", a.e)?)?.to_string()),
        "rhoq" => exact(rho_q_bundle(need(f, "h", a.h)?, need(f, "e", a.e)?)?.to_string()),
        other => {
            let names: Vec<&str> = FUNCTIONS.iter().map(|(n, _)| *n).collect();
            Err(CliError::Usage(format!(
                "unknown function {other:?}; expected one of {}",
                names.join(", ")
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(k: i64, q: i64) -> EvalArgs {
        EvalArgs {
            k: Some(k),
            q: Some(q),
            ..Default::default()
        }
    }

    #[test]
    fn point_values() {
        assert_eq!(evaluate("G", &args(6, 5), 500).unwrap().value, "1");
        assert_eq!(evaluate("G", &args(1, 1), 500).unwrap().value, "1/2");
        assert_eq!(evaluate("N", &args(1, 1), 500).unwrap().value, "1");
        let qd = EvalArgs {
            h: Some(1),
            e: Some(0),
            label: Some(SpincQLabel::T1),
            which: Some(Which::Bot),
            ..Default::default()
        };
        assert_eq!(evaluate("qd", &qd, 500).unwrap().value, "1/2");
        let p = EvalArgs {
            i: Some(1),
            ..args(2, 1)
        };
        assert_eq!(evaluate("P", &p, 500).unwrap().value, "1*u^0 + 1*u^1");
    }

    #[test]
    fn roots_are_flagged_inexact_and_capped() {
        let a = EvalArgs {
            i: Some(0),
            ..args(2, 1)
        };
        let v = evaluate("g_roots", &a, 500).unwrap();
        assert!(!v.exact);
        assert_eq!(v.value, "1.000000000000");
        assert!(matches!(evaluate("g_roots", &a, 1), Err(CliError::Core(_))));
    }

    #[test]
    fn missing_and_unknown() {
        assert!(matches!(
            evaluate("G", &EvalArgs::default(), 500),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            evaluate("zeta", &args(1, 1), 500),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            evaluate("G", &args(2, 2), 500),
            Err(CliError::Core(_))
        ));
    }

    #[test]
    fn every_listed_function_is_recognized() {
        for (name, _) in FUNCTIONS {
            let r = evaluate(name, &EvalArgs::default(), 500);
            assert!(
                matches!(r, Err(CliError::Usage(ref m)) if m.contains("needs")),
                "{name}"
            );
        }
    }
}

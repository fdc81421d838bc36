//! Line-oriented regression fixtures.
//!
//! Each non-blank, non-`#` line reads
//! `name | operation | key=value ... | expected | provenance`, where the
//! provenance is `TRIVIAL`, `DERIVED` or `PAPER: <citation>`.

use std::collections::BTreeMap;
use std::fmt;

use genusgauge_core::floer::d_lens_2k1;
use genusgauge_core::obstruct::{
    decide, gsign_check, min_genus, rp2_test, rp2_test_cyclic, spin_cor, twist_bound_holds, DTable,
    RhoInput,
};
use genusgauge_core::{EmbedQuery, Rat};

use crate::context::{parse_phi, ContextArgs};
use crate::eval::{evaluate, EvalArgs};
use crate::output::verdict_summary;
use crate::region::region;
use crate::{CliError, CliResult};

/// The corpus shipped with the binary.
pub const BUNDLED: &str = include_str!("../fixtures/genusgauge.fixtures");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Quoted(String),
    Trivial,
    Derived,
}

impl Provenance {
    pub fn is_quoted(&self) -> bool {
        matches!(self, Provenance::Quoted(_))
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Quoted(c) => write!(f, "PAPER: {c}"),
            Provenance::Trivial => f.write_str("TRIVIAL"),
            Provenance::Derived => f.write_str("DERIVED"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub line: usize,
    pub name: String,
    pub operation: String,
    pub params: BTreeMap<String, String>,
    pub expected: String,
    pub provenance: Provenance,
}

pub fn parse(text: &str) -> CliResult<Vec<Fixture>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let corrupt = |msg: &str| CliError::Fixture(format!("line {line}: {msg}"));
        let fields: Vec<&str> = trimmed.split('|').map(str::trim).collect();
        let [name, operation, params, expected, provenance] = fields[..] else {
            return Err(corrupt(&format!(
                "expected 5 fields, found {}",
                fields.len()
            )));
        };
        if name.is_empty() || operation.is_empty() || expected.is_empty() {
            return Err(corrupt("empty name, operation or expected value"));
        }
        let mut map = BTreeMap::new();
        for token in params.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| corrupt(&format!("parameter {token:?} is not key=value")))?;
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(corrupt(&format!("parameter {k:?} repeated")));
            }
        }
        let provenance = match provenance {
            "TRIVIAL" => Provenance::Trivial,
            "DERIVED" => Provenance::Derived,
            p => match p.strip_prefix("PAPER:").map(str::trim) {
                Some(c) if !c.is_empty() => Provenance::Quoted(c.to_string()),
                Some(_) => return Err(corrupt("PAPER provenance needs a citation")),
                None => return Err(corrupt(&format!("unknown provenance {p:?}"))),
            },
        };
        out.push(Fixture {
            line,
            name: name.to_string(),
            operation: operation.to_string(),
            params: map,
            expected: expected.to_string(),
            provenance,
        });
    }
    if out.is_empty() {
        return Err(CliError::Fixture("no fixtures found".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub name: String,
    pub expected: String,
    /// The computed value, or the error message.
    pub actual: Result<String, String>,
}

impl Replay {
    pub fn passed(&self) -> bool {
        self.actual.as_deref() == Ok(self.expected.as_str())
    }
}

struct Params<'a> {
    f: &'a Fixture,
}

impl Params<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.f.params.get(key).map(String::as_str)
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|_| self.bad(key, v)))
            .transpose()
    }

    fn req<T: std::str::FromStr>(&self, key: &str) -> CliResult<T> {
        self.get(key)?
            .ok_or_else(|| CliError::Usage(format!("fixture {} needs {key}", self.f.name)))
    }

    fn list<T: std::str::FromStr>(&self, key: &str) -> CliResult<Vec<T>> {
        let v = self
            .raw(key)
            .ok_or_else(|| CliError::Usage(format!("fixture {} needs {key}", self.f.name)))?;
        v.split(',')
            .map(|x| x.parse::<T>().map_err(|_| self.bad(key, v)))
            .collect()
    }

    fn bad(&self, key: &str, v: &str) -> CliError {
        CliError::Usage(format!("fixture {}: cannot parse {key}={v}", self.f.name))
    }

    fn context(&self) -> CliResult<genusgauge_core::Context> {
        ContextArgs {
            lens: self.get("lens")?,
            delta: self.get("delta")?,
            phi: self
                .raw("phi")
                .map(parse_phi)
                .transpose()
                .map_err(CliError::Usage)?,
            k_c: self.get("kc")?,
            rho: self.get("rho")?,
            definite: self.get("definite")?,
            spin: self.get("spin")?,
            sphere: self.get::<bool>("sphere")?.unwrap_or(false),
        }
        .build()
    }

    fn eval_args(&self) -> CliResult<EvalArgs> {
        Ok(EvalArgs {
            k: self.get("k")?,
            q: self.get("q")?,
            i: self.get("i")?,
            j: self.get("j")?,
            s: self.get("s")?,
            p: self.get("p")?,
            h: self.get("h")?,
            e: self.get("e")?,
            n: self.get("n")?,
            label: self.get("label")?,
            which: self.get("which")?,
        })
    }
}

fn compute(f: &Fixture, roots_cap: i64) -> CliResult<String> {
    let p = Params { f };
    Ok(match f.operation.as_str() {
        "eval" => evaluate(&p.req::<String>("fn")?, &p.eval_args()?, roots_cap)?.value,
        "feasible" => {
            let q = EmbedQuery::new(p.req("h")?, p.req("e")?, p.context()?)?;
            verdict_summary(&decide(&q)?)
        }
        "min_genus" => {
            let h_max = p.get("h_max")?.unwrap_or(20);
            match min_genus(
                &p.context()?,
                p.get("e")?,
                h_max,
                p.get("e_max")?.unwrap_or(64),
            )? {
                Some(h) => h.to_string(),
                None => "none".into(),
            }
        }
        "region" => {
            let rows = region(&p.context()?, p.req("h_max")?, p.get("e_max")?)?;
            let cells: Vec<String> = rows.iter().map(|r| format!("{}:{}", r.h, r.e)).collect();
            cells.join(" ")
        }
        "rp2" => {
            let values: Vec<Rat> = p.list("table")?;
            let phi: Vec<i64> = p.list("phi")?;
            let table = match p.raw("orders") {
                Some(_) => DTable::new(p.list("orders")?, values)?,
                None => DTable::cyclic(values)?,
            };
            rp2_test(&table, &phi, None)?.to_string()
        }
        "rp2_lens" => {
            let k: i64 = p.req("k")?;
            let values = (0..2 * k)
                .map(|s| d_lens_2k1(k, s))
                .collect::<Result<Vec<_>, _>>()?;
            rp2_test_cyclic(&values, k)?.to_string()
        }
        "gsign" => {
            let rho = match p.get::<Rat>("d")? {
                Some(d) => RhoInput::from_difference(d, p.req("kpow")?),
                None => RhoInput {
                    rho_alpha: p.req("rho_alpha")?,
                    rho_alphatau: p.req("rho_alphatau")?,
                    kpow: p.req("kpow")?,
                },
            };
            gsign_check(&rho, p.req("h")?, p.req("e")?)?.to_string()
        }
        "twist" => twist_bound_holds(
            &p.req("d0")?,
            &p.req("d1")?,
            p.req("h")?,
            p.req("e")?,
            p.req("label")?,
        )?
        .to_string(),
        "spin_cor" => {
            let v: Vec<i64> = p.list("spin")?;
            if v.len() != 3 {
                return Err(p.bad("spin", p.raw("spin").unwrap_or("")));
            }
            verdict_summary(&spin_cor(v[0], v[1], v[2], p.req("h")?, p.req("e")?)?)
        }
        other => {
            return Err(CliError::Fixture(format!(
                "line {}: unknown operation {other:?}",
                f.line
            )))
        }
    })
}

/// Recompute one fixture. An unknown operation is a corrupt file, so it is
/// returned as an error rather than as a failed replay.
pub fn replay(f: &Fixture, roots_cap: i64) -> CliResult<Replay> {
    let actual = match compute(f, roots_cap) {
        Ok(v) => Ok(v),
        Err(e @ CliError::Fixture(_)) => return Err(e),
        Err(e) => Err(e.to_string()),
    };
    Ok(Replay {
        name: f.name.clone(),
        expected: f.expected.clone(),
        actual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_replays() {
        let fixtures = parse(BUNDLED).unwrap();
        assert!(fixtures.iter().filter(|f| f.provenance.is_quoted()).count() >= 10);
        for f in &fixtures {
            let r = replay(f, 500).unwrap();
            assert!(
                r.passed(),
                "{} (line {}): expected {:?}, got {:?}",
                f.name,
                f.line,
                r.expected,
                r.actual
            );
        }
    }

    #[test]
    fn corrupt_lines_are_rejected() {
        assert!(parse("a | eval | k=1 | 1").is_err());
        assert!(parse("a | eval | k | 1 | TRIVIAL").is_err());
        assert!(parse("a | eval | fn=N k=1 q=1 | 1 | PAPER:").is_err());
        assert!(parse("a | eval | fn=N k=1 q=1 | 1 | GUESS").is_err());
        assert!(parse("# only a comment\n\n").is_err());
        let unknown = parse("a | frobnicate | | 1 | TRIVIAL").unwrap();
        assert!(matches!(
            replay(&unknown[0], 500),
            Err(CliError::Fixture(_))
        ));
    }

    #[test]
    fn mismatches_are_reported() {
        let f = parse("n21 | eval | fn=N k=1 q=1 | 2 | DERIVED").unwrap();
        let r = replay(&f[0], 500).unwrap();
        assert!(!r.passed());
        assert_eq!(r.actual, Ok("1".to_string()));
        let f = parse("bad | eval | fn=N k=2 q=2 | 1 | DERIVED").unwrap();
        assert!(replay(&f[0], 500).unwrap().actual.is_err());
    }
}

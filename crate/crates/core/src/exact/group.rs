use std::fmt;

use serde::{Deserialize, Serialize};

use super::int::gcd;
use crate::error::{param_err, Result};

/// Finitely generated abelian group `Z^rank ⊕ Z_{d1} ⊕ ... ⊕ Z_{dm}` with
/// invariant factors `d1 | d2 | ... | dm`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbGroup {
    pub rank: u64,
    pub torsion: Vec<u64>,
}

impl AbGroup {
    pub fn free(rank: u64) -> Self {
        AbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Build from an arbitrary list of cyclic orders (zeros and ones are
    /// dropped), normalizing to the invariant-factor chain.
    pub fn from_cyclic(rank: u64, orders: &[u64]) -> Result<Self> {
        let mut factors: Vec<u64> = orders.iter().copied().filter(|&d| d > 1).collect();
        if orders.contains(&0) {
            return param_err("a cyclic factor of order 0 is a free summand; pass it in `rank`");
        }
        // Repeatedly replace (a, b) by (gcd, lcm) until the chain divides.
        let n = factors.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (factors[i], factors[j]);
                let g = gcd(a as i64, b as i64) as u64;
                factors[i] = g;
                factors[j] = a / g * b;
            }
        }
        factors.retain(|&d| d > 1);
        Ok(AbGroup {
            rank,
            torsion: factors,
        })
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    /// Dimension of `H ⊗ Z_2` (equivalently of `Hom(H, Z_2)`).
    pub fn mod2_rank(&self) -> u64 {
        self.rank + self.torsion.iter().filter(|&&d| d % 2 == 0).count() as u64
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

//! First homology of generalized Dunwoody manifolds and the lower bound it
//! gives for Matveev complexity.

mod poly;
mod snf;

pub use poly::{
    branched_cover_h1_order, circulant_torsion, cyclotomic, divisors, from_i64,
    knot_cover_h1_order, norm_over_monic, torus_knot_alexander, two_bridge_alexander,
    CirculantTorsion, Poly,
};
pub use snf::{determinant, smith_normal_form, SmithForm};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{ClosedDiagram, ARC_INNER};
use crate::error::{Error, Result};

/// Abelianized relators: one row per retained `C″` curve, one column per `C′` curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    pub rows: Vec<Vec<BigInt>>,
    /// `C″` curve index of each row.
    pub relators: Vec<usize>,
    pub generators: usize,
}

impl PresentationMatrix {
    pub fn is_square(&self) -> bool {
        self.rows.len() == self.generators
    }

    /// Entries as machine integers, for display.
    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
            .collect()
    }
}

/// Each crossing of `γ` with `C′_i` contributes `+1` when `γ` leaves the
/// vertex through the arc on the `C′_i` side of the gluing (so that `γ`-out
/// followed counterclockwise by `C′_i`-out), `−1` otherwise. Each curve is
/// read from its first out-dart.
pub fn presentation_matrix(diagram: &ClosedDiagram) -> PresentationMatrix {
    let n = diagram.params().n();
    let map = diagram.map();
    let second = diagram.c_second();
    let mut rows = Vec::with_capacity(second.len());
    let mut relators = Vec::with_capacity(second.len());
    for curve in &second.curves {
        let mut row = vec![BigInt::zero(); n];
        for &x in &curve.darts {
            let (i, _) = diagram.vertex_slot(map.vertex_of(x));
            if x % 4 == ARC_INNER {
                row[i] += 1;
            } else {
                row[i] -= 1;
            }
        }
        rows.push(row);
        relators.push(curve.id.index);
    }
    PresentationMatrix {
        rows,
        relators,
        generators: n,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors `> 1`, each dividing the next.
    #[serde(with = "crate::decimal::vec")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn from_smith(form: &SmithForm) -> Self {
        HomologyGroup {
            rank: form.cokernel_rank(),
            torsion: form.torsion(),
        }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t)
    }

    /// `|H_1|` if finite, otherwise 0.
    pub fn order(&self) -> BigInt {
        if self.rank == 0 {
            self.torsion_order()
        } else {
            BigInt::zero()
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `H_1(M_H)`: cokernel of the presentation matrix. The 3-handles of the
/// compression body do not change it, so this holds with boundary too.
pub fn h1(diagram: &ClosedDiagram) -> HomologyGroup {
    let m = presentation_matrix(diagram);
    let form = if m.rows.is_empty() {
        SmithForm {
            rows: 0,
            cols: m.generators,
            factors: Vec::new(),
        }
    } else {
        smith_normal_form(&m.rows)
    };
    HomologyGroup::from_smith(&form)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    /// Smallest integer complexity compatible with `value`.
    pub ceil: u64,
}

/// `2·log₅|Tor H₁| + rank H₁ − 1`, clamped at zero.
pub fn lower_bound_value(h: &HomologyGroup) -> f64 {
    let order = h.torsion_order();
    let log5 = ln_big(&order) / 5f64.ln();
    (2.0 * log5 + h.rank as f64 - 1.0).max(0.0)
}

fn ln_big(x: &BigInt) -> f64 {
    // exact enough for desk-scale orders; falls back to bit length for huge ones
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = x.bits();
            let shift = bits.saturating_sub(52);
            let top: BigInt = x >> shift;
            top.to_f64().unwrap_or(1.0).ln() + shift as f64 * 2f64.ln()
        }
    }
}

/// The homological lower bound, valid only when the caller vouches that the
/// manifold is closed, irreducible and not `S³`, `RP³`, `L(3,1)`, `S²×S¹`.
pub fn matveev_lower_bound(h: &HomologyGroup, exception_flag: bool) -> Result<LowerBound> {
    if !exception_flag {
        return Err(Error::NotApplicable);
    }
    let value = lower_bound_value(h);
    // tolerate rounding right at an integer
    let ceil = (value - 1e-9).ceil().max(0.0) as u64;
    Ok(LowerBound { value, ceil })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(rank: usize, torsion: &[i64]) -> HomologyGroup {
        HomologyGroup {
            rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    #[test]
    fn lower_bound_instances() {
        let b = matveev_lower_bound(&group(0, &[2, 2]), true).unwrap();
        assert!((b.value - (4.0 * 2f64.ln() / 5f64.ln() - 1.0)).abs() < 1e-12);
        assert!((b.value - 0.7227).abs() < 1e-4);
        assert_eq!(b.ceil, 1);
        let b = matveev_lower_bound(&group(0, &[8]), true).unwrap();
        assert!((b.value - 1.5841).abs() < 1e-4);
        assert_eq!(b.ceil, 2);
        assert_eq!(
            matveev_lower_bound(&group(0, &[]), true).unwrap().value,
            0.0
        );
    }

    #[test]
    fn lower_bound_needs_flag() {
        assert_eq!(
            matveev_lower_bound(&group(0, &[5]), false),
            Err(Error::NotApplicable)
        );
    }

    #[test]
    fn display() {
        assert_eq!(group(2, &[3]).to_string(), "Z^2 + Z_3");
        assert_eq!(group(0, &[]).to_string(), "0");
    }
}

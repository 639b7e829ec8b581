//! Integer polynomials, cyclotomic norms and the 2-bridge Alexander polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::snf::determinant;
use crate::error::{Error, Result};

/// Coefficients from the constant term up, without trailing zeros.
pub type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn from_i64(coeffs: &[i64]) -> Poly {
    trim(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// Remainder of `f` modulo the monic polynomial `g`.
fn rem_monic(f: &[BigInt], g: &[BigInt]) -> Poly {
    let m = g.len() - 1;
    let mut r: Poly = f.to_vec();
    while r.len() > m {
        let lead = r.pop().expect("non-empty");
        let shift = r.len() - m;
        for (i, gi) in g[..m].iter().enumerate() {
            r[shift + i] -= &lead * gi;
        }
    }
    trim(r)
}

/// Exact quotient of `f` by the monic `g`; `None` if `g` does not divide `f`.
fn div_monic(f: &[BigInt], g: &[BigInt]) -> Option<Poly> {
    let m = g.len() - 1;
    if f.len() < g.len() {
        return trim(f.to_vec()).is_empty().then(Vec::new);
    }
    let mut r: Poly = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - m];
    while r.len() > m {
        let lead = r.pop().expect("non-empty");
        let shift = r.len() - m;
        for (i, gi) in g[..m].iter().enumerate() {
            r[shift + i] -= &lead * gi;
        }
        q[shift] = lead;
    }
    trim(r).is_empty().then(|| trim(q))
}

/// The `k`-th cyclotomic polynomial.
pub fn cyclotomic(k: usize) -> Poly {
    assert!(k >= 1);
    let mut p = vec![BigInt::zero(); k + 1];
    p[0] = -BigInt::one();
    p[k] = BigInt::one();
    for j in 1..k {
        if k % j == 0 {
            p = div_monic(&p, &cyclotomic(j)).expect("cyclotomic factor");
        }
    }
    p
}

/// `Π f(θ)` over the roots `θ` of the monic `g`, i.e. the determinant of
/// multiplication by `f` on `Z[t]/(g)`.
pub fn norm_over_monic(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = g.len() - 1;
    let mut columns = Vec::with_capacity(m);
    let mut shifted: Poly = f.to_vec();
    for _ in 0..m {
        let mut col = rem_monic(&shifted, g);
        col.resize(m, BigInt::zero());
        columns.push(col);
        shifted.insert(0, BigInt::zero());
    }
    let matrix: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| columns[j][i].clone()).collect())
        .collect();
    determinant(&matrix)
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// `Π_{ζ^n = 1} f(ζ)`, split by divisor so vanishing factors can be reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantTorsion {
    /// `|Res(f, t^n − 1)|`; zero when `f` vanishes at some `n`-th root of unity.
    pub resultant: BigInt,
    /// Product of the non-vanishing cyclotomic norms.
    pub nonzero_product: BigInt,
    /// Number of `n`-th roots of unity at which `f` vanishes (free-rank contribution).
    pub zero_roots: usize,
}

fn cyclotomic_norms(f: &[BigInt], orders: impl Iterator<Item = usize>) -> CirculantTorsion {
    let mut nonzero = BigInt::one();
    let mut zero_roots = 0;
    for k in orders {
        let phi = cyclotomic(k);
        let norm = norm_over_monic(f, &phi);
        if norm.is_zero() {
            zero_roots += phi.len() - 1;
        } else {
            nonzero *= norm.abs();
        }
    }
    let resultant = if zero_roots > 0 {
        BigInt::zero()
    } else {
        nonzero.clone()
    };
    CirculantTorsion {
        resultant,
        nonzero_product: nonzero,
        zero_roots,
    }
}

/// `|Res(f(t), t^n − 1)|`, the absolute determinant of the circulant whose
/// first row lists the coefficients of `f` (reduced mod `t^n − 1`).
pub fn circulant_torsion(f: &[BigInt], n: usize) -> CirculantTorsion {
    cyclotomic_norms(f, divisors(n).into_iter())
}

/// Alexander polynomial of the 2-bridge knot `b(α, β)`:
/// `Σ_{i=0}^{α−1} (−1)^i t^{σ_i}` with `σ_i = Σ_{j=1}^{i} (−1)^{⌊jβ/α⌋}`,
/// shifted to start at `t^0` and signed so the leading coefficient is positive.
pub fn two_bridge_alexander(alpha: i64, beta: i64) -> Result<Poly> {
    if alpha % 2 == 0 {
        return Err(Error::NotAKnot(alpha));
    }
    if !(0 < beta && beta < alpha) {
        return Err(Error::PreconditionViolated(format!(
            "need 0 < β < α, got β={beta}, α={alpha}"
        )));
    }
    if alpha.gcd(&beta) != 1 {
        return Err(Error::GcdError(alpha, beta));
    }
    let mut exponents = Vec::with_capacity(alpha as usize);
    let mut sigma = 0i64;
    exponents.push(0);
    for j in 1..alpha {
        sigma += if ((j * beta) / alpha) % 2 == 0 { 1 } else { -1 };
        exponents.push(sigma);
    }
    let low = *exponents.iter().min().expect("non-empty");
    let high = *exponents.iter().max().expect("non-empty");
    let mut p = vec![BigInt::zero(); (high - low + 1) as usize];
    for (i, e) in exponents.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        p[(e - low) as usize] += sign;
    }
    let mut p = trim(p);
    if p.last().is_some_and(|c| c.is_negative()) {
        p.iter_mut().for_each(|c| *c = -c.clone());
    }
    Ok(p)
}

/// Alexander polynomial of the torus knot `T(k, h)`:
/// `(t^{kh} − 1)(t − 1) / ((t^k − 1)(t^h − 1))`.
pub fn torus_knot_alexander(k: i64, h: i64) -> Result<Poly> {
    if k < 2 || h < 2 {
        return Err(Error::PreconditionViolated(format!(
            "torus knot needs k, h > 1, got ({k},{h})"
        )));
    }
    if k.gcd(&h) != 1 {
        return Err(Error::GcdError(k, h));
    }
    let binomial = |m: i64| {
        let mut p = vec![BigInt::zero(); m as usize + 1];
        p[0] = -BigInt::one();
        p[m as usize] = BigInt::one();
        p
    };
    let mut top = binomial(k * h);
    // multiply by (t - 1)
    top.insert(0, BigInt::zero());
    for i in 0..top.len() - 1 {
        let next = top[i + 1].clone();
        top[i] -= next;
    }
    let q = div_monic(&top, &binomial(k)).expect("t^k - 1 divides");
    Ok(div_monic(&q, &binomial(h)).expect("t^h - 1 divides"))
}

/// `|H_1|` of the `n`-fold cyclic branched cover of a knot with Alexander
/// polynomial `delta`, via `|Res(Δ, (t^n − 1)/(t − 1))|`. `zero_roots > 0`
/// means the group is infinite.
pub fn knot_cover_h1_order(delta: &[BigInt], n: usize) -> CirculantTorsion {
    cyclotomic_norms(delta, divisors(n).into_iter().filter(|&k| k > 1))
}

/// [`knot_cover_h1_order`] for the 2-bridge knot `b(α, β)`.
pub fn branched_cover_h1_order(alpha: i64, beta: i64, n: usize) -> Result<CirculantTorsion> {
    // the σ_i formula wants β odd; b(α, α−β) is the mirror and has the same Δ
    let beta = if beta % 2 == 0 { alpha - beta } else { beta };
    Ok(knot_cover_h1_order(&two_bridge_alexander(alpha, beta)?, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(ints(&cyclotomic(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn alexander_polynomials() {
        assert_eq!(ints(&two_bridge_alexander(3, 1).unwrap()), vec![1, -1, 1]);
        assert_eq!(ints(&two_bridge_alexander(5, 3).unwrap()), vec![1, -3, 1]);
        assert_eq!(two_bridge_alexander(4, 1), Err(Error::NotAKnot(4)));
        assert_eq!(ints(&torus_knot_alexander(2, 3).unwrap()), vec![1, -1, 1]);
        assert_eq!(
            ints(&torus_knot_alexander(2, 5).unwrap()),
            vec![1, -1, 1, -1, 1]
        );
        assert_eq!(
            ints(&torus_knot_alexander(3, 4).unwrap()),
            vec![1, -1, 0, 1, 0, -1, 1]
        );
    }

    #[test]
    fn even_beta_uses_the_mirror() {
        // figure-eight: three-fold cover has H_1 = Z_4 + Z_4
        assert_eq!(
            branched_cover_h1_order(5, 2, 3).unwrap().resultant,
            BigInt::from(16)
        );
        assert_eq!(
            branched_cover_h1_order(5, 3, 3).unwrap().resultant,
            BigInt::from(16)
        );
    }

    #[test]
    fn double_covers_are_lens_spaces() {
        assert_eq!(
            branched_cover_h1_order(3, 1, 2).unwrap().resultant,
            BigInt::from(3)
        );
        assert_eq!(
            branched_cover_h1_order(5, 3, 2).unwrap().resultant,
            BigInt::from(5)
        );
        assert_eq!(
            branched_cover_h1_order(7, 2, 1).unwrap().resultant,
            BigInt::one()
        );
    }

    #[test]
    fn trefoil_six_fold_cover_is_infinite() {
        let t = branched_cover_h1_order(3, 1, 6).unwrap();
        assert_eq!(t.zero_roots, 2);
        assert!(t.resultant.is_zero());
    }

    #[test]
    fn constant_circulant() {
        let t = circulant_torsion(&from_i64(&[5]), 3);
        assert_eq!(t.resultant, BigInt::from(125));
    }

    #[test]
    fn vanishing_factor_is_free_rank() {
        let t = circulant_torsion(&from_i64(&[-1, 1]), 1);
        assert_eq!(t.zero_roots, 1);
        assert!(t.resultant.is_zero());
        assert!(t.nonzero_product.is_one());
    }
}

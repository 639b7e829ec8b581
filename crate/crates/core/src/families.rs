//! Manifold families presented as generalized Dunwoody manifolds, with their
//! closed-form complexity bounds and the structural facts the engine should
//! reproduce.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{closed_diagram, equivalent_params, validate_params, DunwoodyParams};
use crate::error::{Error, Result};
use crate::homology::{
    branched_cover_h1_order, circulant_torsion, determinant, h1, knot_cover_h1_order,
    torus_knot_alexander, CirculantTorsion,
};
use crate::reduction::classify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    TwoBridgeKnot,
    TwoBridgeLink,
    TorusKnot,
    Seifert,
    Theta,
    Raw,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::TwoBridgeKnot => "two_bridge_knot",
            FamilyTag::TwoBridgeLink => "two_bridge_link",
            FamilyTag::TorusKnot => "torus_knot",
            FamilyTag::Seifert => "seifert",
            FamilyTag::Theta => "theta",
            FamilyTag::Raw => "raw",
        }
    }
}

/// What the engine should find on the family's diagram. Unset fields are
/// not claimed.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Expectations {
    /// Number of `C″` curves.
    pub curve_count: Option<usize>,
    /// Crossing counts of the `C″` curves with `C′`, sorted.
    pub crossing_profile: Option<Vec<usize>>,
    /// Boundary genera, sorted.
    pub boundary: Option<Vec<usize>>,
    /// `|H_1|` from an oracle independent of the diagram; 0 means infinite.
    #[serde(with = "crate::decimal::option")]
    pub h1_order: Option<BigInt>,
    /// A torsion closed form stated for the family, checked as given.
    #[serde(with = "crate::decimal::option")]
    pub torsion_closed_form: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    pub family: BTreeMap<String, i64>,
    pub params: DunwoodyParams,
    /// Closed-form complexity upper bound, when its hypotheses hold.
    pub upper_bound: Option<u64>,
    /// Closed-form complexity lower bound, clamped at 0.
    pub lower_bound: Option<f64>,
    pub expect: Expectations,
    pub notes: Vec<String>,
}

impl FamilySpec {
    fn new(tag: FamilyTag, family: &[(&str, i64)], params: DunwoodyParams) -> Self {
        FamilySpec {
            tag,
            family: family.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            params,
            upper_bound: None,
            lower_bound: None,
            expect: Expectations::default(),
            notes: Vec::new(),
        }
    }

    /// A bare tuple with only the generic formula attached.
    pub fn raw(params: DunwoodyParams) -> Self {
        let mut spec = FamilySpec::new(FamilyTag::Raw, &[], params);
        spec.upper_bound = dunwoody_formula_bound(&params);
        spec
    }
}

fn log5(x: f64) -> f64 {
    x.ln() / 5f64.ln()
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

fn check_two_bridge(alpha: i64, beta: i64) -> Result<()> {
    if !(0 < beta && beta < alpha) {
        return Err(Error::PreconditionViolated(format!(
            "need 0 < β < α, got β={beta}, α={alpha}"
        )));
    }
    if gcd(alpha, beta) != 1 {
        return Err(Error::GcdError(alpha, beta));
    }
    Ok(())
}

fn check_n(n: i64, min: i64) -> Result<()> {
    if n < min {
        return Err(Error::PreconditionViolated(format!(
            "need n ≥ {min}, got {n}"
        )));
    }
    Ok(())
}

/// `β ↦ min(β, α−β)`; passing to the mirror reverses the shift.
fn normalize_beta(alpha: i64, beta: i64, s: i64, n: i64) -> (i64, i64) {
    if 2 * beta > alpha {
        (alpha - beta, (-s).rem_euclid(n))
    } else {
        (beta, s.rem_euclid(n))
    }
}

fn oracle_order(t: &CirculantTorsion) -> BigInt {
    if t.zero_roots > 0 {
        BigInt::zero()
    } else {
        t.resultant.clone()
    }
}

/// Whether the diagram's `H_1` has order `order` (0 = infinite) and `C″`
/// is proper and reduced.
fn matches_oracle(params: &DunwoodyParams, order: &BigInt) -> Result<bool> {
    let h = closed_diagram(params)?;
    if &h1(&h).order() != order {
        return Ok(false);
    }
    let class = classify(h.map(), &h.c_second())?;
    Ok(class.proper && class.reduced)
}

/// First shift in `0..n` passing [`matches_oracle`].
fn search_shift(
    n: i64,
    order: &BigInt,
    make: impl Fn(i64) -> Result<DunwoodyParams>,
) -> Result<Option<DunwoodyParams>> {
    for s in 0..n {
        let p = make(s)?;
        if matches_oracle(&p, order)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Lower bound for `C_n(α, 1)`, `n > 2`, from its Brieskorn homology.
pub fn two_bridge_knot_lower_bound(alpha: i64, n: i64) -> f64 {
    let d = gcd(alpha, n) as f64;
    let v = if n % 2 == 0 {
        2.0 * log5(alpha as f64 / d) + d - 2.0
    } else {
        2.0 * (d - 1.0) * log5(2.0) - 1.0
    };
    v.max(0.0)
}

fn knot_common(spec: &mut FamilySpec, alpha: i64, beta: i64, n: i64) -> Result<()> {
    spec.expect.h1_order = Some(oracle_order(&branched_cover_h1_order(
        alpha, beta, n as usize,
    )?));
    if n > 2 {
        spec.upper_bound = Some((n * (alpha - 2)) as u64);
    } else {
        spec.notes
            .push("n=2: the n(α−2) bound is stated for n > 2 only".into());
    }
    if (beta == 1 || beta == alpha - 1) && n > 2 {
        spec.lower_bound = Some(two_bridge_knot_lower_bound(alpha, n));
    }
    Ok(())
}

fn knot_pre(alpha: i64, beta: i64, n: i64) -> Result<()> {
    if alpha % 2 == 0 {
        return Err(Error::NotAKnot(alpha));
    }
    check_two_bridge(alpha, beta)?;
    check_n(n, 2)
}

/// `C_n(α, β)` as `M((α−1)/2, 0, 1, n, β/2, s)` with `β` made even by
/// mirroring. The shift is the first one whose diagram has the homology of
/// the cover and a proper reduced `C″`; if none does, the direct form is
/// returned instead with a note.
pub fn two_bridge_knot_cover(alpha: i64, beta: i64, n: i64) -> Result<FamilySpec> {
    knot_pre(alpha, beta, n)?;
    let even = if beta % 2 == 0 { beta } else { alpha - beta };
    let order = oracle_order(&branched_cover_h1_order(alpha, beta, n as usize)?);
    let found = search_shift(n, &order, |s| {
        validate_params((alpha - 1) / 2, 0, 1, n, even / 2, s)
    })?;
    let Some(params) = found else {
        let mut spec = two_bridge_knot_cover_direct(alpha, beta, n)?;
        spec.notes
            .push("no shift of the even-β form matches the cover; using the direct form".into());
        return Ok(spec);
    };
    let mut spec = FamilySpec::new(
        FamilyTag::TwoBridgeKnot,
        &[
            ("alpha", alpha),
            ("beta", beta),
            ("n", n),
            ("s", params.s() as i64),
        ],
        params,
    );
    knot_common(&mut spec, alpha, beta, n)?;
    Ok(spec)
}

/// `C_n(α, β)` as `M(β, α−2β, 1, n, 2β+1, s)` with `β ≤ α/2` and the shift
/// `s = (−1)^{β+1}` (calibrated against the Alexander oracle).
pub fn two_bridge_knot_cover_direct(alpha: i64, beta: i64, n: i64) -> Result<FamilySpec> {
    knot_pre(alpha, beta, n)?;
    let b = beta.min(alpha - beta);
    let s = if b % 2 == 0 { -1 } else { 1 };
    let params = validate_params(b, alpha - 2 * b, 1, n, 2 * b + 1, s)?;
    let mut spec = FamilySpec::new(
        FamilyTag::TwoBridgeKnot,
        &[
            ("alpha", alpha),
            ("beta", beta),
            ("n", n),
            ("s", params.s() as i64),
        ],
        params,
    );
    knot_common(&mut spec, alpha, beta, n)?;
    spec.notes
        .push("direct form: r ≡ −b, so C″ is not reduced and no Dunwoody formula applies".into());
    Ok(spec)
}

/// Every shift of the direct form whose homology matches the cover.
pub fn two_bridge_knot_shifts(alpha: i64, beta: i64, n: i64) -> Result<Vec<i64>> {
    knot_pre(alpha, beta, n)?;
    let b = beta.min(alpha - beta);
    let order = oracle_order(&branched_cover_h1_order(alpha, beta, n as usize)?);
    let mut out = Vec::new();
    for s in 0..n {
        let p = validate_params(b, alpha - 2 * b, 1, n, 2 * b + 1, s)?;
        if h1(&closed_diagram(&p)?).order() == order {
            out.push(s);
        }
    }
    Ok(out)
}

/// Lower bound for `C_{n,s}(α, 1)`; `None` for the excluded pairs.
pub fn two_bridge_link_lower_bound(alpha: i64, n: i64, s: i64) -> Option<f64> {
    let s = s.rem_euclid(n);
    if alpha == 2 && n == 3 && (s == 1 || s == 2) {
        return None;
    }
    let big_d = gcd(n, alpha / 2 * (s - 1));
    let big_m = gcd(n, s - 1);
    let h = gcd(n, s);
    let m = gcd(big_d, h);
    let (fd, fm, fh, fsm) = (big_d as f64, big_m as f64, h as f64, m as f64);
    let ln_arg = fm.ln()
        + fsm * (n as f64 * fsm / (fh * fd)).ln()
        + (fm - 1.0) * (alpha as f64 * fm / (2.0 * fd)).ln();
    Some((2.0 * ln_arg / 5f64.ln() + fd - fm - fsm).max(0.0))
}

/// `C_{n,s}(α, β)` for a two-component 2-bridge link:
/// `M(β, α−2β, 1, n, 2β+1, s)`.
pub fn two_bridge_link_cover(alpha: i64, beta: i64, n: i64, s: i64) -> Result<FamilySpec> {
    if alpha % 2 != 0 {
        return Err(Error::NotALink(alpha));
    }
    check_two_bridge(alpha, beta)?;
    check_n(n, 2)?;
    if s.rem_euclid(n) == 0 {
        return Err(Error::ZeroMonodromy);
    }
    let (b, s2) = normalize_beta(alpha, beta, s, n);
    let params = validate_params(b, alpha - 2 * b, 1, n, 2 * b + 1, s2)?;
    let mut spec = FamilySpec::new(
        FamilyTag::TwoBridgeLink,
        &[("alpha", alpha), ("beta", beta), ("n", n), ("s", s)],
        params,
    );
    let d = gcd(n, s2);
    spec.upper_bound = Some((n * (alpha - 2) + n / d - alpha).max(0) as u64);
    spec.expect.curve_count = Some((n + d) as usize);
    let mut profile = vec![(n / d) as usize; d as usize];
    profile.extend(std::iter::repeat_n(alpha as usize, n as usize));
    profile.sort_unstable();
    spec.expect.crossing_profile = Some(profile);
    if beta == 1 || beta == alpha - 1 {
        spec.lower_bound = two_bridge_link_lower_bound(alpha, n, s2);
        if spec.lower_bound.is_none() {
            spec.notes
                .push("α=2 with (n,s) ∈ {(3,1),(3,2)}: lower bound excluded".into());
        }
    }
    Ok(spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusCase {
    /// `h = qk + 1`
    One { k: i64, q: i64 },
    /// `h = qk − 1`
    Two { k: i64, q: i64 },
    /// `k = s·q₁ + 1`, `h = qk + s`
    Three { q: i64, q1: i64, s: i64 },
}

impl TorusCase {
    pub fn knot(&self) -> (i64, i64) {
        match *self {
            TorusCase::One { k, q } => (k, q * k + 1),
            TorusCase::Two { k, q } => (k, q * k - 1),
            TorusCase::Three { q, q1, s } => {
                let k = s * q1 + 1;
                (k, q * k + s)
            }
        }
    }

    pub fn number(&self) -> u8 {
        match self {
            TorusCase::One { .. } => 1,
            TorusCase::Two { .. } => 2,
            TorusCase::Three { .. } => 3,
        }
    }

    fn check(&self) -> Result<()> {
        let ok = match *self {
            TorusCase::One { k, q } => q > 0 && k > 1,
            TorusCase::Two { k, q } => q > 1 && k > 1,
            TorusCase::Three { q, q1, s } => q > 0 && q1 > 0 && s > 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::CaseMismatch(format!("{self:?}")))
        }
    }

    /// The first case (in order 1, 2, 3) that fits `T(k, h)`.
    pub fn detect(k: i64, h: i64) -> Result<TorusCase> {
        Self::fits(k, h)
            .into_iter()
            .next()
            .ok_or_else(|| Error::CaseMismatch(format!("T({k},{h})")))
    }

    /// Every case that fits `T(k, h)`.
    pub fn fits(k: i64, h: i64) -> Vec<TorusCase> {
        let mut out = Vec::new();
        if k < 2 || h < 2 {
            return out;
        }
        if (h - 1) % k == 0 && h > k {
            out.push(TorusCase::One { k, q: (h - 1) / k });
        }
        if (h + 1) % k == 0 && (h + 1) / k > 1 {
            out.push(TorusCase::Two { k, q: (h + 1) / k });
        }
        let s = h % k;
        if s > 1 && (k - 1) % s == 0 && h > k {
            out.push(TorusCase::Three {
                q: (h - s) / k,
                q1: (k - 1) / s,
                s,
            });
        }
        out
    }
}

/// `T_n(k, h)`, the `n`-fold cyclic branched cover of a torus knot.
///
/// Case 1 uses shift `k`; case 2 uses shift `−k`, the orientation that
/// matches the Alexander oracle. Case 3 uses the given `shift`, or searches
/// for the first one whose homology matches and whose `C″` is proper and
/// reduced.
pub fn torus_knot_cover(case: TorusCase, n: i64, shift: Option<i64>) -> Result<FamilySpec> {
    case.check()?;
    check_n(n, 2)?;
    let (k, h) = case.knot();
    let order = oracle_order(&knot_cover_h1_order(
        &torus_knot_alexander(k, h)?,
        n as usize,
    ));
    let mut notes = Vec::new();
    let (params, bound) = match case {
        TorusCase::One { k, q } => {
            let s = shift.unwrap_or(k);
            (
                validate_params(1, k - 2, (k - 1) * (2 * q - 1), n, k, s)?,
                n * (2 * q * k - 2 * q - 1),
            )
        }
        TorusCase::Two { k, q } => {
            let s = shift.unwrap_or(-k);
            (
                validate_params(
                    1,
                    k - 2,
                    (k - 1) * (2 * q - 1) - 2,
                    n,
                    (k - 1) * (2 * q - 3),
                    s,
                )?,
                n * (2 * q * k - 2 * q - 3),
            )
        }
        TorusCase::Three { q, q1, s } => {
            let a = q1;
            let b = q1 * (2 * q * q1 * (s - 1) + 2 * q + s - 2);
            let c = 1 + (s - 2) * q1;
            let r = 2 * q1 * q1 * (s - 1) + s * q1 + 1;
            let bound = n * (2 * q1 * (s - 1) * (q * q1 + 1) + 2 * q * q1 - 1);
            let params = match shift {
                Some(sh) => validate_params(a, b, c, n, r, sh)?,
                None => match search_shift(n, &order, |sh| validate_params(a, b, c, n, r, sh))? {
                    Some(p) => {
                        notes.push(format!("shift {} found by homology search", p.s()));
                        p
                    }
                    None => {
                        notes.push("no shift matches the cover; shift 0 reported".into());
                        validate_params(a, b, c, n, r, 0)?
                    }
                },
            };
            (params, bound)
        }
    };
    let mut fam = vec![("case", case.number() as i64), ("k", k), ("h", h), ("n", n)];
    match case {
        TorusCase::One { q, .. } | TorusCase::Two { q, .. } => fam.push(("q", q)),
        TorusCase::Three { q, q1, s } => fam.extend([("q", q), ("q1", q1), ("s", s)]),
    }
    let mut spec = FamilySpec::new(FamilyTag::TorusKnot, &fam, params);
    spec.upper_bound = Some(bound.max(0) as u64);
    spec.expect.h1_order = Some(order);
    spec.notes = notes;
    Ok(spec)
}

fn seifert_pre(p: i64, q: i64, l: i64, n: i64) -> Result<()> {
    if !(p > q && q > 0) {
        return Err(Error::PreconditionViolated(format!(
            "need p > q > 0, got p={p}, q={q}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::GcdError(p, q));
    }
    if n < 2 || l < 1 {
        return Err(Error::PreconditionViolated(format!(
            "need n > 1 and ℓ > 0, got n={n}, ℓ={l}"
        )));
    }
    if n == 2 && l == 1 {
        return Err(Error::PreconditionViolated("need ℓ > 1 when n = 2".into()));
    }
    Ok(())
}

/// `|H_1(S_n(p,q,ℓ))|` from the abelianized Seifert presentation: generators
/// `y_1..y_n, y, h`, relators `p·y_i + q·h`, `ℓ·y + (ℓ−1)·h` and
/// `Σ y_i + y + h`. Returns 0 when the group is infinite.
pub fn seifert_presentation_order(p: i64, q: i64, l: i64, n: i64) -> BigInt {
    let n = n as usize;
    let size = n + 2;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for (i, row) in m.iter_mut().enumerate().take(n) {
        row[i] = p.into();
        row[n + 1] = q.into();
    }
    m[n][n] = l.into();
    m[n][n + 1] = (l - 1).into();
    for x in m[n + 1].iter_mut() {
        *x = 1.into();
    }
    determinant(&m).abs()
}

/// The circulant `f(t) = −p + ℓq·Σ_{i=1}^{n−1} tⁱ`.
pub fn seifert_circulant(p: i64, q: i64, l: i64, n: i64) -> CirculantTorsion {
    let mut f = vec![BigInt::from(-p)];
    f.extend(std::iter::repeat_n(BigInt::from(l * q), (n - 1) as usize));
    circulant_torsion(&f, n as usize)
}

/// `p^{n−1}((n−1)ℓq − p)`; `None` when it is not positive.
pub fn seifert_torsion_closed_form(p: i64, q: i64, l: i64, n: i64) -> Option<BigInt> {
    let tail = (n - 1) * l * q - p;
    (tail > 0).then(|| BigInt::from(p).pow((n - 1) as u32) * tail)
}

pub fn seifert_lower_bound(p: i64, q: i64, l: i64, n: i64) -> Option<f64> {
    let tail = (n - 1) * l * q - p;
    (tail > 0)
        .then(|| (2.0 * (n - 1) as f64 * log5(p as f64) + 2.0 * log5(tail as f64) - 1.0).max(0.0))
}

/// `S_n(p, q, ℓ) = {Oo,0 | −1; (p,q)ⁿ, (ℓ,ℓ−1)}`.
pub fn seifert(p: i64, q: i64, l: i64, n: i64) -> Result<FamilySpec> {
    seifert_pre(p, q, l, n)?;
    let params = if p >= 2 * q {
        validate_params(q, q * (n * l - 2), p - 2 * q, n, p - q, 0)?
    } else {
        validate_params(p - q, 2 * q - p, q * (n * l - 2), n, p - q, 1)?
    };
    let mut spec = FamilySpec::new(
        FamilyTag::Seifert,
        &[("p", p), ("q", q), ("l", l), ("n", n)],
        params,
    );
    spec.upper_bound = Some((n * (p + q * (n * l - 2) - 2)).max(0) as u64);
    spec.lower_bound = seifert_lower_bound(p, q, l, n);
    spec.expect.h1_order = Some(seifert_presentation_order(p, q, l, n));
    spec.expect.torsion_closed_form = seifert_torsion_closed_form(p, q, l, n);
    if spec.expect.torsion_closed_form.is_none() {
        spec.notes
            .push("(n−1)ℓq − p ≤ 0: torsion closed form and lower bound inapplicable".into());
    }
    Ok(spec)
}

/// Cyclic branched cover of the theta graph built on `b(α, β)`:
/// `M(β, α−2β, 1, n, 2β−α, s)`.
pub fn theta_cover(alpha: i64, beta: i64, n: i64, s: i64) -> Result<FamilySpec> {
    if alpha % 2 == 0 {
        return Err(Error::NotAKnot(alpha));
    }
    check_two_bridge(alpha, beta)?;
    check_n(n, 3)?;
    let sm = s.rem_euclid(n);
    if sm == 0 || sm == 1 {
        return Err(Error::BadMonodromy(s));
    }
    let (b, s2) = normalize_beta(alpha, beta, sm, n);
    let params = validate_params(b, alpha - 2 * b, 1, n, 2 * b - alpha, s2)?;
    let mut spec = FamilySpec::new(
        FamilyTag::Theta,
        &[("alpha", alpha), ("beta", beta), ("n", n), ("s", s)],
        params,
    );
    let curves = gcd(n, sm) + gcd(n, sm - 1);
    spec.upper_bound = Some((n * (alpha - 1)) as u64);
    spec.expect.curve_count = Some(curves as usize);
    let genus = ((1 + n - curves) / 2) as usize;
    spec.expect.boundary = Some(vec![genus, genus]);
    Ok(spec)
}

/// `k_i`: how far `r` is from `(−1)^i·b` mod `d`.
fn k_index(p: &DunwoodyParams, i: u32) -> i64 {
    let d = p.d() as i64;
    let b = p.b() as i64;
    let target = if i % 2 == 0 { b } else { -b }.rem_euclid(d);
    let r = p.r() as i64;
    if r == target {
        2
    } else if r == (target + 1).rem_euclid(d) || r == (target - 1).rem_euclid(d) {
        1
    } else {
        0
    }
}

fn direct_formula(p: &DunwoodyParams) -> Option<i64> {
    let (a, b, c, n, _, s) = p.as_tuple();
    let (a, b, c, n, s) = (a as i64, b as i64, c as i64, n as i64, s as i64);
    let d = p.d() as i64;
    let pm1 = p.twist_is_minus_b_pm1();
    if a * b * c > 0 {
        return Some(n * d - (2 * n).max(if pm1 { 5 } else { 6 }));
    }
    if a.min(b + c) == 0 {
        return Some(if pm1 { n * (d - 3) } else { n * (d - 4) });
    }
    if n > 3 {
        return Some(n * (d - 2));
    }
    let (k0, k1) = (k_index(p, 0), k_index(p, 1));
    if b == 0 && s == 0 {
        return Some(n * (2 * a + c) - (2 * n).max(8 - 2 * k0));
    }
    if c == 0 {
        match (n, s) {
            (2, 0) => return Some(n * (2 * a + b) - (2 * n).max(8 - k0 - k1)),
            (3, 0) => return Some(n * (2 * a + b) - (2 * n).max(8 - k0)),
            (3, 1) => return Some(n * (2 * a + b) - (2 * n).max(8 - k1)),
            _ => {}
        }
    }
    None
}

/// The Dunwoody-manifold upper bound on complexity, reaching uncovered
/// cases through `equivalent_params`. `None` for `n < 2` and for `r ≡ −b`.
/// Meaningful only when `C″` is proper and reduced.
pub fn dunwoody_formula_bound(p: &DunwoodyParams) -> Option<u64> {
    if p.n() < 2 || p.twist_is_minus_b() {
        return None;
    }
    direct_formula(p)
        .or_else(|| direct_formula(&equivalent_params(p)))
        .map(|v| v.max(0) as u64)
}

//! Whole-diagram analysis, grid sweeps and the calibration battery.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexity::{modified_complexity, ComplexityOptions, ComplexityResult};
use crate::diagram::{
    build_planar, closed_diagram, equivalent_params, glue_with, validate_params, ClosedDiagram,
    DunwoodyParams, GlueConvention,
};
use crate::error::{Error, Result};
use crate::families::{
    dunwoody_formula_bound, theta_cover, two_bridge_link_cover, FamilySpec, FamilyTag,
};
use crate::homology::{branched_cover_h1_order, h1, matveev_lower_bound, HomologyGroup};
use crate::reduction::{boundary_profile, classify, ClassLabel, SystemClass};
use crate::surface::genus_of;

pub const LENS_REGIME: &str = "n=1: lens space / solid torus regime";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsView {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub d: usize,
}

impl From<&DunwoodyParams> for ParamsView {
    fn from(p: &DunwoodyParams) -> Self {
        let (a, b, c, n, r, s) = p.as_tuple();
        ParamsView {
            a,
            b,
            c,
            n,
            r,
            s,
            d: p.d(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemView {
    pub proper: bool,
    pub reduced: bool,
    pub count: usize,
    pub label: ClassLabel,
}

impl SystemView {
    fn new(class: SystemClass, count: usize) -> Self {
        SystemView {
            proper: class.proper,
            reduced: class.reduced,
            count,
            label: class.label,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Systems {
    pub cprime: SystemView,
    pub csecond: SystemView,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveView {
    pub id: String,
    pub system: String,
    pub crossings: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyView {
    pub rank: usize,
    #[serde(with = "crate::decimal::vec")]
    pub torsion: Vec<BigInt>,
    /// `|H_1|`, 0 when infinite.
    #[serde(with = "crate::decimal")]
    pub order: BigInt,
    pub group: String,
}

impl From<&HomologyGroup> for HomologyView {
    fn from(h: &HomologyGroup) -> Self {
        HomologyView {
            rank: h.rank,
            torsion: h.torsion.clone(),
            order: h.order(),
            group: h.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    /// Closed-form upper bound: the family's, or the Dunwoody formula.
    pub upper_formula: Option<u64>,
    /// `c̃(H)`.
    pub upper_engine: usize,
    /// Homological lower bound `2·log₅|Tor| + rank − 1`.
    pub lower: f64,
    pub lower_ceil: u64,
    pub lower_applicable: bool,
    /// The family's closed-form lower bound, if any.
    pub lower_formula: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString, pass: bool) -> Self {
        Check {
            name: name.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub params: ParamsView,
    pub equivalent: ParamsView,
    pub genus: usize,
    pub systems: Systems,
    pub curves: Vec<CurveView>,
    pub boundary: Vec<usize>,
    pub complexity: ComplexityResult,
    pub homology: HomologyView,
    pub bounds: Bounds,
    pub family: Option<FamilySpec>,
    pub checks: Vec<Check>,
    pub flags: Vec<String>,
    pub timing_ms: f64,
}

impl AnalysisReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AnalyzeOptions {
    pub complexity: ComplexityOptions,
    /// The caller vouches the manifold is irreducible; gates the lower bound.
    pub assume_irreducible: bool,
    /// Also analyze the equivalence image and compare.
    pub check_equivalence: bool,
}

struct Core {
    diagram: ClosedDiagram,
    systems: Systems,
    boundary: Vec<usize>,
    complexity: ComplexityResult,
    homology: HomologyGroup,
}

fn core(params: &DunwoodyParams, options: &AnalyzeOptions) -> Result<Core> {
    let diagram = closed_diagram(params)?;
    let second = diagram.c_second();
    let systems = Systems {
        cprime: SystemView::new(
            classify(diagram.map(), diagram.c_prime())?,
            diagram.c_prime().len(),
        ),
        csecond: SystemView::new(classify(diagram.map(), &second)?, second.len()),
    };
    let boundary = boundary_profile(&diagram)?;
    let complexity = modified_complexity(&diagram, options.complexity)?;
    let homology = h1(&diagram);
    Ok(Core {
        diagram,
        systems,
        boundary,
        complexity,
        homology,
    })
}

/// Groups for which the homological bound is stated not to apply:
/// `Z_2`, `Z_3` and `Z` (the first homology of `RP³`, `L(3,1)`, `S²×S¹`).
fn excluded_homology(h: &HomologyGroup) -> bool {
    let cyclic = |m: i64| h.rank == 0 && h.torsion == [BigInt::from(m)];
    cyclic(2) || cyclic(3) || (h.rank == 1 && h.torsion.is_empty())
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn order_string(x: &BigInt) -> String {
    if x == &BigInt::from(0) {
        "infinite".into()
    } else {
        x.to_string()
    }
}

/// Full analysis of one diagram, optionally against a family's expectations.
pub fn analyze(
    params: &DunwoodyParams,
    family: Option<FamilySpec>,
    options: &AnalyzeOptions,
) -> Result<AnalysisReport> {
    let start = Instant::now();
    let base = core(params, options)?;
    let diagram = &base.diagram;
    let second = diagram.c_second();
    let n = params.n();
    let mut flags = Vec::new();
    let mut checks = Vec::new();
    if n == 1 {
        flags.push(LENS_REGIME.to_string());
    }

    let curves = diagram
        .c_prime()
        .curves
        .iter()
        .chain(second.curves.iter())
        .map(|c| CurveView {
            id: format!(
                "{}{}",
                if c.id.system == crate::map::System::Prime {
                    "C'"
                } else {
                    "C''"
                },
                c.id.index
            ),
            system: c.id.system.name().to_string(),
            crossings: c.darts.len(),
        })
        .collect();

    let ctilde = base.complexity.ctilde;
    let dunwoody = base.systems.csecond.proper && base.systems.csecond.reduced;
    let formula = if n > 1 {
        dunwoody_formula_bound(params)
    } else {
        None
    };
    let upper_formula = match &family {
        Some(f) if f.tag != FamilyTag::Raw => f.upper_bound,
        _ => formula,
    };
    if n > 1 {
        match &family {
            Some(f) if f.tag != FamilyTag::Raw => {
                if let Some(u) = f.upper_bound {
                    checks.push(Check::new(
                        "upper_bound",
                        format!("<= {u}"),
                        ctilde,
                        ctilde as u64 <= u,
                    ));
                }
            }
            _ => {
                if let (Some(u), true) = (formula, dunwoody) {
                    checks.push(Check::new(
                        "dunwoody_formula",
                        format!("<= {u}"),
                        ctilde,
                        ctilde as u64 <= u,
                    ));
                }
            }
        }
    }
    if !dunwoody && formula.is_some() && family.as_ref().is_none_or(|f| f.tag == FamilyTag::Raw) {
        flags.push("C'' is not proper-reduced: Dunwoody formula reported, not asserted".into());
    }
    if params.twist_is_minus_b() {
        flags.push("r = -b: not a Dunwoody manifold (formula n/a)".into());
    }

    if let Some(f) = &family {
        let e = &f.expect;
        if let Some(k) = e.curve_count {
            let actual = base.systems.csecond.count;
            checks.push(Check::new("curve_count", k, actual, k == actual));
        }
        if let Some(profile) = &e.crossing_profile {
            let mut actual: Vec<usize> = diagram
                .c_second()
                .curves
                .iter()
                .map(|c| c.darts.len())
                .collect();
            actual.sort_unstable();
            checks.push(Check::new(
                "crossing_profile",
                list(profile),
                list(&actual),
                profile == &actual,
            ));
        }
        if let Some(b) = &e.boundary {
            checks.push(Check::new(
                "boundary",
                list(b),
                list(&base.boundary),
                b == &base.boundary,
            ));
        }
        if let Some(o) = &e.h1_order {
            let actual = base.homology.order();
            checks.push(Check::new(
                "h1_order",
                order_string(o),
                order_string(&actual),
                &actual == o,
            ));
        }
        if let Some(t) = &e.torsion_closed_form {
            let actual = base.homology.torsion_order();
            checks.push(Check::new("torsion_closed_form", t, &actual, &actual == t));
        }
        if let Some(l) = f.lower_bound {
            checks.push(Check::new(
                "lower_formula",
                format!("{l:.4} <= ctilde"),
                ctilde,
                l <= ctilde as f64 + 1e-9,
            ));
        }
        flags.extend(f.notes.iter().cloned());
    }

    let closed = base.boundary.is_empty();
    let lower_applicable =
        options.assume_irreducible && closed && n > 1 && !excluded_homology(&base.homology);
    let lower = matveev_lower_bound(&base.homology, true)?;
    if lower_applicable {
        checks.push(Check::new(
            "lower_bound",
            format!("{:.4} <= ctilde", lower.value),
            ctilde,
            lower.value <= ctilde as f64 + 1e-9,
        ));
    }

    let equivalent = equivalent_params(params);
    if options.check_equivalence {
        let other = core(&equivalent, options)?;
        checks.push(Check::new(
            "equivalence_ctilde",
            ctilde,
            other.complexity.ctilde,
            ctilde == other.complexity.ctilde,
        ));
        checks.push(Check::new(
            "equivalence_h1",
            &base.homology,
            &other.homology,
            base.homology == other.homology,
        ));
        checks.push(Check::new(
            "equivalence_boundary",
            list(&base.boundary),
            list(&other.boundary),
            base.boundary == other.boundary,
        ));
    }

    Ok(AnalysisReport {
        params: params.into(),
        equivalent: (&equivalent).into(),
        genus: genus_of(diagram.map())?,
        systems: base.systems,
        curves,
        boundary: base.boundary.clone(),
        complexity: base.complexity.clone(),
        homology: (&base.homology).into(),
        bounds: Bounds {
            upper_formula,
            upper_engine: ctilde,
            lower: lower.value,
            lower_ceil: lower.ceil,
            lower_applicable,
            lower_formula: family.as_ref().and_then(|f| f.lower_bound),
        },
        family,
        checks,
        flags,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Analyzes the diagram of a family instance.
pub fn analyze_family(spec: FamilySpec, options: &AnalyzeOptions) -> Result<AnalysisReport> {
    let params = spec.params;
    analyze(&params, Some(spec), options)
}

/// A grid of raw tuples. `None` for `r` or `s` means every residue.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Grid {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub n: Vec<i64>,
    pub r: Option<Vec<i64>>,
    pub s: Option<Vec<i64>>,
}

impl Grid {
    /// Raw tuples in lexicographic order of `(a, b, c, n, r, s)`.
    pub fn tuples(&self) -> Vec<[i64; 6]> {
        let mut out = Vec::new();
        for &a in &self.a {
            for &b in &self.b {
                for &c in &self.c {
                    for &n in &self.n {
                        let d = 2 * a + b + c;
                        let rs: Vec<i64> = match &self.r {
                            Some(r) => r.clone(),
                            None => (0..d.max(1)).collect(),
                        };
                        let ss: Vec<i64> = match &self.s {
                            Some(s) => s.clone(),
                            None => (0..n.max(1)).collect(),
                        };
                        for &r in &rs {
                            for &s in &ss {
                                out.push([a, b, c, n, r, s]);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub input: [i64; 6],
    pub class: Option<ClassLabel>,
    pub c: Option<usize>,
    pub ctilde: Option<usize>,
    /// Dunwoody formula value, `"n/a"` when `r ≡ −b`.
    pub formula: String,
    /// `c̃ = formula`; only set when `C″` is proper-reduced.
    pub formula_match: Option<bool>,
    pub h1: Option<String>,
    pub error: Option<String>,
}

fn sweep_row(input: [i64; 6], options: &ComplexityOptions) -> SweepRow {
    let mut row = SweepRow {
        input,
        class: None,
        c: None,
        ctilde: None,
        formula: "n/a".into(),
        formula_match: None,
        h1: None,
        error: None,
    };
    let [a, b, c, n, r, s] = input;
    let result = (|| -> Result<()> {
        let p = validate_params(a, b, c, n, r, s)?;
        let h = closed_diagram(&p)?;
        let class = classify(h.map(), &h.c_second())?;
        let cx = modified_complexity(&h, *options)?;
        let formula = if p.n() > 1 {
            dunwoody_formula_bound(&p)
        } else {
            None
        };
        row.class = Some(class.label);
        row.c = Some(cx.c);
        row.ctilde = Some(cx.ctilde);
        row.h1 = Some(h1(&h).to_string());
        if let Some(v) = formula {
            row.formula = v.to_string();
            if class.proper && class.reduced {
                row.formula_match = Some(v == cx.ctilde as u64);
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        row.error = Some(e.to_string());
    }
    row
}

/// One row per tuple, in input order, evaluated in parallel. A failing
/// tuple produces a row with `error` set.
pub fn sweep(tuples: &[[i64; 6]], options: &ComplexityOptions) -> Vec<SweepRow> {
    tuples.par_iter().map(|&t| sweep_row(t, options)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn glued(params: &DunwoodyParams, conv: GlueConvention) -> Result<ClosedDiagram> {
    glue_with(&build_planar(params), params, conv)
}

fn item(name: String, result: Result<(bool, String)>) -> CalibrationItem {
    match result {
        Ok((pass, detail)) => CalibrationItem { name, pass, detail },
        Err(e) => CalibrationItem {
            name,
            pass: false,
            detail: e.to_string(),
        },
    }
}

/// The battery pinning the gluing convention: 2-fold 2-bridge covers are
/// lens spaces, link and theta covers have the predicted curve structure,
/// and equivalent parameters give the same manifold invariants.
pub fn calibrate(conv: GlueConvention) -> Vec<CalibrationItem> {
    let mut items = Vec::new();
    for alpha in [3i64, 5, 7, 9] {
        for beta in 1..=alpha / 2 {
            if alpha.gcd(&beta) != 1 {
                continue;
            }
            items.push(item(
                format!("double cover b({alpha},{beta}) has H1 = Z_{alpha}"),
                (|| {
                    let p = validate_params(beta, alpha - 2 * beta, 1, 2, 2 * beta + 1, 1)?;
                    let g = h1(&glued(&p, conv)?);
                    let oracle = branched_cover_h1_order(alpha, beta, 2)?.resultant;
                    let want = HomologyGroup {
                        rank: 0,
                        torsion: vec![BigInt::from(alpha)],
                    };
                    Ok((g == want && oracle == BigInt::from(alpha), g.to_string()))
                })(),
            ));
        }
    }
    for (alpha, beta) in [(4i64, 1i64), (6, 1), (8, 3)] {
        for n in 2..=4i64 {
            for s in 1..n {
                items.push(item(
                    format!("link b({alpha},{beta}) n={n} s={s} curve structure"),
                    (|| {
                        let spec = two_bridge_link_cover(alpha, beta, n, s)?;
                        let h = glued(&spec.params, conv)?;
                        let mut profile: Vec<usize> =
                            h.c_second().curves.iter().map(|c| c.darts.len()).collect();
                        profile.sort_unstable();
                        let pass = spec.expect.crossing_profile.as_ref() == Some(&profile);
                        Ok((pass, list(&profile)))
                    })(),
                ));
            }
        }
    }
    for (alpha, beta) in [(3i64, 1i64), (5, 3)] {
        for n in [4i64, 5] {
            for s in 2..n {
                items.push(item(
                    format!("theta b({alpha},{beta}) n={n} s={s} boundary"),
                    (|| {
                        let spec = theta_cover(alpha, beta, n, s)?;
                        let h = glued(&spec.params, conv)?;
                        let boundary = boundary_profile(&h)?;
                        let pass = spec.expect.boundary.as_ref() == Some(&boundary)
                            && spec.expect.curve_count == Some(h.c_second().len());
                        Ok((pass, list(&boundary)))
                    })(),
                ));
            }
        }
    }
    let mut failures = Vec::new();
    let mut total = 0;
    let mut error = None;
    'grid: for a in 1..=2i64 {
        for b in 0..=2i64 {
            for c in 0..=2i64 {
                for n in 2..=3i64 {
                    let d = 2 * a + b + c;
                    for r in 0..d {
                        for s in 0..n {
                            total += 1;
                            let run = || -> Result<bool> {
                                let p = validate_params(a, b, c, n, r, s)?;
                                let q = equivalent_params(&p);
                                let (x, y) = (glued(&p, conv)?, glued(&q, conv)?);
                                Ok(h1(&x) == h1(&y)
                                    && boundary_profile(&x)? == boundary_profile(&y)?
                                    && x.c_second().len() == y.c_second().len())
                            };
                            match run() {
                                Ok(true) | Err(Error::DisconnectedDiagram(_)) => {}
                                Ok(false) => failures.push(format!("({a},{b},{c},{n},{r},{s})")),
                                Err(e) => {
                                    error = Some(e);
                                    break 'grid;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    items.push(item(
        "equivalence invariance of H1, boundary and curve count".into(),
        match error {
            Some(e) => Err(e),
            None => Ok((
                failures.is_empty(),
                format!(
                    "{} of {total} tuples differ{}",
                    failures.len(),
                    failures
                        .first()
                        .map(|f| format!(", first {f}"))
                        .unwrap_or_default()
                ),
            )),
        },
    ));
    items
}

/// Error for a failed calibration run, for callers that want a `Result`.
pub fn calibration_error(items: &[CalibrationItem]) -> Option<Error> {
    let failed: Vec<&str> = items
        .iter()
        .filter(|i| !i.pass)
        .map(|i| i.name.as_str())
        .collect();
    (!failed.is_empty())
        .then(|| Error::InternalInconsistency(format!("calibration failed: {}", failed.join("; "))))
}

//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dunwoody::diagram::{closed_diagram, validate_params, ClosedDiagram, DunwoodyParams};
use dunwoody::map::{CurveId, System};
use dunwoody::surface::cut_along;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn params(t: (i64, i64, i64, i64, i64, i64)) -> DunwoodyParams {
    validate_params(t.0, t.1, t.2, t.3, t.4, t.5).unwrap()
}

pub fn diagram(t: (i64, i64, i64, i64, i64, i64)) -> ClosedDiagram {
    closed_diagram(&params(t)).unwrap()
}

/// Prints the criterion line and fails the test if `pass` is false.
pub fn verdict(criterion: u32, pass: bool, summary: &str) {
    println!(
        "{} criterion {criterion}: {summary}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {summary}");
}

/// Faces of the map traced as `σ∘α` orbits, then merged across the edges
/// of `erased` curves. Returns, per merged region, its set of vertices
/// lying on a kept curve of `C″`.
pub fn region_vertex_sets(h: &ClosedDiagram, erased: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let m = h.map();
    let darts = m.dart_count();
    let mut face = vec![usize::MAX; darts];
    let mut faces = 0;
    for x in 0..darts {
        if face[x] != usize::MAX {
            continue;
        }
        let mut y = x;
        while face[y] == usize::MAX {
            face[y] = faces;
            y = m.sigma(m.alpha(y));
        }
        faces += 1;
    }
    let mut parent: Vec<usize> = (0..faces).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let on_erased = |x: usize| {
        let l = m.label(x);
        l.system == System::Second && erased.contains(&l.index)
    };
    for x in 0..darts {
        if on_erased(x) {
            let (a, b) = (
                root(&mut parent, face[x]),
                root(&mut parent, face[m.alpha(x)]),
            );
            parent[a] = b;
        }
    }
    let kept_vertex = |v: usize| {
        let ds = m.darts_at(v);
        ds.iter().any(|&x| {
            let l = m.label(x);
            l.system == System::Second && !erased.contains(&l.index)
        })
    };
    let mut out: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for x in 0..darts {
        let r = root(&mut parent, face[x]);
        let set = out.entry(r).or_default();
        let v = m.vertex_of(x);
        if kept_vertex(v) {
            set.insert(v);
        }
    }
    out.into_values().collect()
}

fn positive_profile(h: &ClosedDiagram, kept: &BTreeSet<CurveId>) -> (Vec<usize>, usize, bool) {
    let cut = cut_along(h.map(), kept).unwrap();
    let mut g: Vec<usize> = cut
        .components
        .iter()
        .map(|c| c.genus)
        .filter(|&g| g > 0)
        .collect();
    g.sort_unstable();
    let reduced = cut.components.len() == 1 || cut.components.iter().all(|c| c.genus > 0);
    (g, cut.components.len(), reduced)
}

/// `c̃` straight from the definition: the minimum of `c(H′) − max n(R)` over
/// every subsystem of `C″` that is reduced and bounds the same compression
/// body (same genera of positive-genus pieces). Exponential in `|C″|`.
pub fn definition_ctilde(h: &ClosedDiagram) -> Option<usize> {
    let all: Vec<usize> = (0..h.c_second_all().len()).collect();
    let ids = |keep: &BTreeSet<usize>| -> BTreeSet<CurveId> {
        keep.iter().map(|&i| CurveId::second(i)).collect()
    };
    let full: BTreeSet<usize> = all.iter().copied().collect();
    let (target, _, _) = positive_profile(h, &ids(&full));
    let k = all.len();
    assert!(k <= 20, "too many curves for subset enumeration");
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << k) {
        let keep: BTreeSet<usize> = all
            .iter()
            .copied()
            .filter(|&i| mask & (1 << i) != 0)
            .collect();
        let (profile, _, reduced) = positive_profile(h, &ids(&keep));
        if !reduced || profile != target {
            continue;
        }
        let erased: BTreeSet<usize> = full.difference(&keep).copied().collect();
        let singular = (0..h.map().vertex_count())
            .filter(|&v| keep.contains(&h.second_curve_at(v)))
            .count();
        let max_region = region_vertex_sets(h, &erased)
            .iter()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0);
        let value = singular - max_region;
        best = Some(best.map_or(value, |b: usize| b.min(value)));
    }
    best
}

fn minor_dets(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            g = g.gcd(&laplace(&sub));
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn laplace(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * laplace(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Invariant factors from determinantal divisors: `d_k / d_{k−1}` with
/// `d_k` the gcd of all `k×k` minors.
pub fn invariant_factors_by_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=rows.min(cols) {
        let dk = minor_dets(m, k);
        if dk.is_zero() {
            break;
        }
        out.push((&dk / &prev).abs());
        prev = dk;
    }
    out
}

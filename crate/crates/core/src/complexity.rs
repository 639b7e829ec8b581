//! Singular-vertex counts and the modified Heegaard complexity `c̃(H)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::ClosedDiagram;
use crate::error::{Error, Result};
use crate::map::CurveId;
use crate::reduction::{
    admissible_forests, classify, greedy_forest, reduce, AdmissibleForest, DEFAULT_FOREST_CAP,
};
use crate::surface::{dual_graph, face_index};

/// Number of singular vertices of Γ(H).
pub fn singular_count(diagram: &ClosedDiagram) -> usize {
    (0..diagram.map().vertex_count())
        .filter(|&v| diagram.is_singular(v))
        .count()
}

/// Distinct singular vertices on the `C″` curve `curve`.
pub fn curve_vertex_count(diagram: &ClosedDiagram, curve: usize) -> usize {
    let map = diagram.map();
    diagram.c_second_all().curves[curve]
        .darts
        .iter()
        .map(|&d| map.vertex_of(d))
        .collect::<BTreeSet<_>>()
        .len()
}

/// A region of Γ(H_T): faces of the full map merged across removed curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    /// Smallest face index in the region.
    pub id: usize,
    pub faces: Vec<usize>,
    pub singular_vertices: BTreeSet<usize>,
}

impl Region {
    pub fn vertex_count(&self) -> usize {
        self.singular_vertices.len()
    }
}

pub fn regions(diagram: &ClosedDiagram) -> Vec<Region> {
    let map = diagram.map();
    let (face_of, face_count) = face_index(map);
    let mut root: Vec<usize> = (0..face_count).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for d in 0..map.dart_count() {
        let label = map.label(d);
        if label.system == crate::map::System::Second && !diagram.is_retained(label.index) {
            let (x, y) = (
                find(&mut root, face_of[d]),
                find(&mut root, face_of[map.alpha(d)]),
            );
            root[x.max(y)] = x.min(y);
        }
    }
    let mut out: Vec<Option<Region>> = vec![None; face_count];
    for f in 0..face_count {
        let r = find(&mut root, f);
        out[r]
            .get_or_insert_with(|| Region {
                id: r,
                faces: Vec::new(),
                singular_vertices: BTreeSet::new(),
            })
            .faces
            .push(f);
    }
    for d in 0..map.dart_count() {
        let v = map.vertex_of(d);
        if diagram.is_singular(v) {
            let r = find(&mut root, face_of[d]);
            out[r].as_mut().expect("region").singular_vertices.insert(v);
        }
    }
    out.into_iter().flatten().collect()
}

/// `n(R)` for the region containing face `face`.
pub fn region_vertex_count(diagram: &ClosedDiagram, face: usize) -> usize {
    regions(diagram)
        .into_iter()
        .find(|r| r.faces.contains(&face))
        .map(|r| r.vertex_count())
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    GreedyBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub forest: Vec<usize>,
    pub region: usize,
    #[serde(rename = "nR")]
    pub n_r: usize,
    #[serde(rename = "sumNgamma")]
    pub sum_n_gamma: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityResult {
    pub c: usize,
    pub ctilde: usize,
    pub mode: Mode,
    pub witness: Witness,
    pub forests_examined: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexityOptions {
    pub max_forests: usize,
    pub greedy: bool,
}

impl Default for ComplexityOptions {
    fn default() -> Self {
        ComplexityOptions {
            max_forests: DEFAULT_FOREST_CAP,
            greedy: false,
        }
    }
}

/// Best `(n(R) + Σ n(γ))` over the regions of `H_T` for one forest.
fn evaluate(diagram: &ClosedDiagram, forest: &AdmissibleForest) -> Witness {
    let sum: usize = forest
        .edges
        .iter()
        .map(|&g| curve_vertex_count(diagram, g))
        .sum();
    let reduced = reduce(diagram, forest);
    let best = regions(&reduced)
        .into_iter()
        .max_by(|x, y| {
            x.vertex_count()
                .cmp(&y.vertex_count())
                .then(y.id.cmp(&x.id))
        })
        .expect("at least one region");
    Witness {
        forest: forest.edges.clone(),
        region: best.id,
        n_r: best.vertex_count(),
        sum_n_gamma: sum,
    }
}

/// Larger objective wins; ties go to the smaller edge set, then region.
fn better(x: &Witness, y: &Witness) -> bool {
    let (vx, vy) = (x.n_r + x.sum_n_gamma, y.n_r + y.sum_n_gamma);
    vx > vy || (vx == vy && (&x.forest, x.region) < (&y.forest, y.region))
}

/// `c̃(H) = c(H) − max { n(R) + Σ_{γ∈E(T)} n(γ) }` over admissible forests
/// `T` of the retained `C″` and regions `R` of `H_T`.
pub fn modified_complexity(
    diagram: &ClosedDiagram,
    options: ComplexityOptions,
) -> Result<ComplexityResult> {
    if !classify(diagram.map(), diagram.c_prime())?.reduced {
        return Err(Error::UnsupportedPrimeReduction);
    }
    let c = singular_count(diagram);
    let dual = dual_graph(diagram.map(), &diagram.c_second())?;

    let mut mode = Mode::Exact;
    let forests: Vec<AdmissibleForest> = if options.greedy {
        mode = Mode::GreedyBound;
        Vec::new()
    } else {
        match admissible_forests(&dual, options.max_forests).collect::<Result<Vec<_>>>() {
            Ok(fs) => fs,
            Err(Error::ForestCapExceeded(_)) => {
                mode = Mode::GreedyBound;
                Vec::new()
            }
            Err(e) => return Err(e),
        }
    };
    let forests = if mode == Mode::GreedyBound {
        vec![greedy_forest(&dual, |g| curve_vertex_count(diagram, g))]
    } else {
        forests
    };

    let examined = forests.len();
    let witness = forests
        .par_iter()
        .map(|f| evaluate(diagram, f))
        .reduce_with(|x, y| if better(&y, &x) { y } else { x })
        .ok_or_else(|| Error::InternalInconsistency("no admissible forest".into()))?;

    let best = witness.n_r + witness.sum_n_gamma;
    if best > c {
        return Err(Error::InternalInconsistency(format!(
            "objective {best} exceeds c(H) = {c}"
        )));
    }
    Ok(ComplexityResult {
        c,
        ctilde: c - best,
        mode,
        witness,
        forests_examined: examined,
    })
}

/// The `C″` curves as `CurveId`s, for callers working with the surface API.
pub fn second_ids(diagram: &ClosedDiagram) -> BTreeSet<CurveId> {
    diagram.c_second().ids().collect()
}

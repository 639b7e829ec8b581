//! Classification of curve systems and reduction of `C″` by admissible forests.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::{ClosedDiagram, CurveSystem};
use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, CurveId};
use crate::surface::{cut_along, DualGraph};

pub const DEFAULT_FOREST_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassLabel {
    ProperReduced,
    NonproperReduced,
    ProperNonreduced,
    NonproperNonreduced,
}

impl ClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::ProperReduced => "proper-reduced",
            ClassLabel::NonproperReduced => "nonproper-reduced",
            ClassLabel::ProperNonreduced => "proper-nonreduced",
            ClassLabel::NonproperNonreduced => "nonproper-nonreduced",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemClass {
    pub proper: bool,
    pub reduced: bool,
    pub label: ClassLabel,
}

impl SystemClass {
    fn from_flags(proper: bool, reduced: bool) -> Self {
        let label = match (proper, reduced) {
            (true, true) => ClassLabel::ProperReduced,
            (false, true) => ClassLabel::NonproperReduced,
            (true, false) => ClassLabel::ProperNonreduced,
            (false, false) => ClassLabel::NonproperNonreduced,
        };
        SystemClass {
            proper,
            reduced,
            label,
        }
    }
}

/// Proper: every cut component has genus 0. Reduced: a single component,
/// or no component of genus 0.
pub fn classify(map: &CombinatorialMap, system: &CurveSystem) -> Result<SystemClass> {
    let ids: BTreeSet<CurveId> = system.ids().collect();
    let cut = cut_along(map, &ids)?;
    let proper = cut.components.iter().all(|c| c.genus == 0);
    let reduced = cut.components.len() == 1 || cut.components.iter().all(|c| c.genus > 0);
    Ok(SystemClass::from_flags(proper, reduced))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleForest {
    /// `C″` curve indices of the forest edges, sorted.
    pub edges: Vec<usize>,
    /// Dual-graph vertices of each tree.
    pub trees: Vec<Vec<usize>>,
    /// The positive-genus vertex of each tree, when `V⁺` is non-empty.
    pub roots: Vec<Option<usize>>,
}

/// Admissible forests of the dual graph of a `C″` system.
///
/// With `V⁺` empty these are spanning trees. Otherwise each tree must contain
/// exactly one positive-genus vertex; contracting `V⁺` to a single root turns
/// those forests into the spanning trees of the contracted multigraph, which
/// is what the search walks.
pub fn admissible_forests(dual: &DualGraph, cap: usize) -> AdmissibleForests<'_> {
    let positive = dual.positive_genus();
    let k = dual.vertex_count();
    let mut node = vec![0; k];
    let mut next = if positive.is_empty() { 0 } else { 1 };
    for v in 0..k {
        if positive.contains(&v) {
            node[v] = 0;
        } else {
            node[v] = next;
            next += 1;
        }
    }
    let nodes = next.max(1);
    let edges: Vec<(usize, usize, usize)> = dual
        .edges
        .iter()
        .filter_map(|e| {
            let (x, y) = (node[e.ends.0], node[e.ends.1]);
            (x != y).then_some((e.curve.index, x, y))
        })
        .collect();
    let mut sorted = edges;
    sorted.sort();
    let start = Frame {
        next_edge: 0,
        components: (0..nodes).collect(),
        chosen: Vec::new(),
    };
    AdmissibleForests {
        dual,
        positive,
        node_count: nodes,
        edges: sorted,
        stack: vec![start],
        yielded: 0,
        cap,
        failed: false,
    }
}

#[derive(Clone)]
struct Frame {
    next_edge: usize,
    /// Component label of each contracted node.
    components: Vec<usize>,
    chosen: Vec<usize>,
}

impl Frame {
    fn component_count(&self) -> usize {
        self.components.iter().collect::<BTreeSet<_>>().len()
    }
}

/// Depth-first spanning-tree search; yields `Err(ForestCapExceeded)` once
/// more than `cap` forests would be produced, then stops.
pub struct AdmissibleForests<'a> {
    dual: &'a DualGraph,
    positive: Vec<usize>,
    node_count: usize,
    edges: Vec<(usize, usize, usize)>,
    stack: Vec<Frame>,
    yielded: usize,
    cap: usize,
    failed: bool,
}

impl AdmissibleForests<'_> {
    /// Whether the edges from `from` on can still merge all components.
    fn can_finish(&self, frame: &Frame) -> bool {
        let mut comps = frame.components.clone();
        for &(_, x, y) in &self.edges[frame.next_edge..] {
            let (cx, cy) = (comps[x], comps[y]);
            if cx != cy {
                for c in comps.iter_mut() {
                    if *c == cy {
                        *c = cx;
                    }
                }
            }
        }
        comps.iter().all(|&c| c == comps[0])
    }

    fn finish(&self, chosen: &[usize]) -> AdmissibleForest {
        let k = self.dual.vertex_count();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut edges = Vec::new();
        for &i in chosen {
            let (curve, _, _) = self.edges[i];
            let e = self
                .dual
                .edges
                .iter()
                .find(|e| e.curve.index == curve)
                .expect("edge");
            let (rx, ry) = (find(&mut parent, e.ends.0), find(&mut parent, e.ends.1));
            parent[rx.max(ry)] = rx.min(ry);
            edges.push(curve);
        }
        edges.sort_unstable();
        let mut trees: Vec<Vec<usize>> = Vec::new();
        let mut root_index = std::collections::BTreeMap::new();
        for v in 0..k {
            let r = find(&mut parent, v);
            let t = *root_index.entry(r).or_insert_with(|| {
                trees.push(Vec::new());
                trees.len() - 1
            });
            trees[t].push(v);
        }
        let roots = trees
            .iter()
            .map(|t| t.iter().copied().find(|v| self.positive.contains(v)))
            .collect();
        AdmissibleForest {
            edges,
            trees,
            roots,
        }
    }
}

impl Iterator for AdmissibleForests<'_> {
    type Item = Result<AdmissibleForest>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        while let Some(frame) = self.stack.pop() {
            if frame.component_count() == 1 {
                if self.yielded >= self.cap {
                    self.failed = true;
                    self.stack.clear();
                    return Some(Err(Error::ForestCapExceeded(self.cap)));
                }
                self.yielded += 1;
                return Some(Ok(self.finish(&frame.chosen)));
            }
            if frame.next_edge >= self.edges.len() {
                continue;
            }
            let (_, x, y) = self.edges[frame.next_edge];
            // exclude branch, pushed first so the include branch is explored first
            let mut skip = frame.clone();
            skip.next_edge += 1;
            if self.can_finish(&skip) {
                self.stack.push(skip);
            }
            let (cx, cy) = (frame.components[x], frame.components[y]);
            if cx != cy {
                let mut take = frame;
                for c in take.components.iter_mut() {
                    if *c == cy {
                        *c = cx;
                    }
                }
                take.chosen.push(take.next_edge);
                take.next_edge += 1;
                self.stack.push(take);
            }
        }
        None
    }
}

/// Greedy forest: Kruskal on the contracted graph, heaviest `C″` curves first.
pub fn greedy_forest(dual: &DualGraph, weight: impl Fn(usize) -> usize) -> AdmissibleForest {
    let mut it = admissible_forests(dual, 0);
    let mut order: Vec<usize> = (0..it.edges.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(weight(it.edges[i].0)), it.edges[i].0));
    let mut comps: Vec<usize> = (0..it.node_count).collect();
    let mut chosen = Vec::new();
    for i in order {
        let (_, x, y) = it.edges[i];
        let (cx, cy) = (comps[x], comps[y]);
        if cx != cy {
            for c in comps.iter_mut() {
                if *c == cy {
                    *c = cx;
                }
            }
            chosen.push(i);
        }
    }
    it.stack.clear();
    it.finish(&chosen)
}

/// Removes the forest's curves from `C″`.
pub fn reduce(diagram: &ClosedDiagram, forest: &AdmissibleForest) -> ClosedDiagram {
    let mut removed = diagram.removed().clone();
    removed.extend(forest.edges.iter().copied());
    diagram.with_removed(removed)
}

/// Genera of the boundary components of `M_H`, sorted: the positive-genus
/// pieces left after cutting along the retained `C″` (genus-0 pieces are
/// capped by balls).
pub fn boundary_profile(diagram: &ClosedDiagram) -> Result<Vec<usize>> {
    let ids: BTreeSet<CurveId> = diagram.c_second().ids().collect();
    let cut = cut_along(diagram.map(), &ids)?;
    let mut genera: Vec<usize> = cut
        .components
        .iter()
        .map(|c| c.genus)
        .filter(|&g| g > 0)
        .collect();
    genera.sort_unstable();
    Ok(genera)
}

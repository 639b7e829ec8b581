//! Face tracing, Euler characteristic, cutting along curves and the dual
//! graph of a curve system.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::diagram::CurveSystem;
use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, CurveId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub darts: Vec<usize>,
    pub vertices: BTreeSet<usize>,
    pub curves: BTreeSet<CurveId>,
}

/// Faces of the map (orbits of `sigma ∘ alpha`), in order of their smallest dart.
pub fn faces(map: &CombinatorialMap) -> Vec<Face> {
    if map.is_empty() {
        return vec![Face {
            id: 0,
            darts: Vec::new(),
            vertices: BTreeSet::new(),
            curves: BTreeSet::new(),
        }];
    }
    map.face_orbits()
        .into_iter()
        .enumerate()
        .map(|(id, darts)| {
            let vertices = darts.iter().map(|&d| map.vertex_of(d)).collect();
            let curves = darts.iter().map(|&d| map.label(d)).collect();
            Face {
                id,
                darts,
                vertices,
                curves,
            }
        })
        .collect()
}

/// Face index of every dart.
pub fn face_index(map: &CombinatorialMap) -> (Vec<usize>, usize) {
    let mut index = vec![0; map.dart_count()];
    let orbits = map.face_orbits();
    for (f, orbit) in orbits.iter().enumerate() {
        for &d in orbit {
            index[d] = f;
        }
    }
    (index, orbits.len())
}

pub fn euler_characteristic(map: &CombinatorialMap) -> Result<i64> {
    if map.is_empty() {
        return Ok(2 - 2 * map.bare_genus() as i64);
    }
    let v = map.vertex_count() as i64;
    let e = map.edge_count() as i64;
    let f = map.face_orbits().len() as i64;
    Ok(v - e + f)
}

pub fn genus_of(map: &CombinatorialMap) -> Result<usize> {
    let chi = euler_characteristic(map)?;
    if chi % 2 != 0 || chi > 2 {
        return Err(Error::OddChi(chi));
    }
    Ok(((2 - chi) / 2) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutComponent {
    pub id: usize,
    pub euler_characteristic: i64,
    pub boundary_count: usize,
    pub genus: usize,
    /// Vertices of the map with at least one corner in this component.
    pub vertices: BTreeSet<usize>,
    /// Faces of the map lying in this component.
    pub faces: Vec<usize>,
}

/// Result of cutting: the components plus, for each cut curve, the
/// components on its two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub components: Vec<CutComponent>,
    pub sides: BTreeMap<CurveId, (usize, usize)>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx.max(ry)] = rx.min(ry);
        }
    }
}

/// Cuts the surface along `curves` and reports every component.
///
/// The cut surface inherits a cell structure from the map: faces are kept,
/// every cut edge is doubled, and every vertex on a cut curve splits into
/// one vertex per group of corners between consecutive cut darts.
pub fn cut_along(map: &CombinatorialMap, curves: &BTreeSet<CurveId>) -> Result<Cut> {
    if map.is_empty() {
        let g = map.bare_genus();
        let component = CutComponent {
            id: 0,
            euler_characteristic: 2 - 2 * g as i64,
            boundary_count: 0,
            genus: g,
            vertices: BTreeSet::new(),
            faces: vec![0],
        };
        return Ok(Cut {
            components: vec![component],
            sides: BTreeMap::new(),
        });
    }

    let (face_of, face_count) = face_index(map);
    let is_cut = |d: usize| curves.contains(&map.label(d));

    let mut uf = UnionFind::new(face_count);
    for d in 0..map.dart_count() {
        if !is_cut(d) {
            uf.union(face_of[d], face_of[map.alpha(d)]);
        }
    }

    let mut comp_of_root = BTreeMap::new();
    let mut comp_of_face = vec![0; face_count];
    for (f, slot) in comp_of_face.iter_mut().enumerate() {
        let root = uf.find(f);
        let next = comp_of_root.len();
        *slot = *comp_of_root.entry(root).or_insert(next);
    }
    let k = comp_of_root.len();

    let mut chi = vec![0i64; k];
    let mut faces_in = vec![Vec::new(); k];
    for (f, &c) in comp_of_face.iter().enumerate() {
        chi[c] += 1;
        faces_in[c].push(f);
    }
    // edges
    for d in 0..map.dart_count() {
        let e = map.alpha(d);
        if d > e {
            continue;
        }
        if is_cut(d) {
            chi[comp_of_face[face_of[d]]] -= 1;
            chi[comp_of_face[face_of[e]]] -= 1;
        } else {
            chi[comp_of_face[face_of[d]]] -= 1;
        }
    }
    // vertices: corner at dart x sits between x and sigma(x) and lies in face_of[alpha(x)]
    let mut vertices_in = vec![BTreeSet::new(); k];
    for v in 0..map.vertex_count() {
        let darts = map.darts_at(v);
        let cut_positions: Vec<usize> = (0..4).filter(|&j| is_cut(darts[j])).collect();
        if cut_positions.is_empty() {
            let c = comp_of_face[face_of[map.alpha(darts[0])]];
            chi[c] += 1;
            vertices_in[c].insert(v);
        } else {
            // a group starts right after each cut dart
            for &j in &cut_positions {
                let c = comp_of_face[face_of[map.alpha(darts[j])]];
                chi[c] += 1;
                vertices_in[c].insert(v);
            }
        }
        for &x in &darts {
            vertices_in[comp_of_face[face_of[map.alpha(x)]]].insert(v);
        }
    }

    let mut boundary = vec![0usize; k];
    let mut sides = BTreeMap::new();
    for &id in curves {
        let Some(d) = (0..map.dart_count()).find(|&d| map.label(d) == id) else {
            continue;
        };
        let left = comp_of_face[face_of[d]];
        let right = comp_of_face[face_of[map.alpha(d)]];
        boundary[left] += 1;
        boundary[right] += 1;
        sides.insert(id, (left, right));
    }

    let mut components = Vec::with_capacity(k);
    for c in 0..k {
        let twice_genus = 2 - chi[c] - boundary[c] as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::InternalInconsistency(format!(
                "cut component {c} has chi={} and {} boundary circles",
                chi[c], boundary[c]
            )));
        }
        components.push(CutComponent {
            id: c,
            euler_characteristic: chi[c],
            boundary_count: boundary[c],
            genus: (twice_genus / 2) as usize,
            vertices: std::mem::take(&mut vertices_in[c]),
            faces: std::mem::take(&mut faces_in[c]),
        });
    }
    Ok(Cut { components, sides })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualEdge {
    pub curve: CurveId,
    pub ends: (usize, usize),
}

/// Dual graph `G(C)`: one vertex per cut component, one edge per curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<CutComponent>,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Components of positive genus.
    pub fn positive_genus(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|c| c.genus > 0)
            .map(|c| c.id)
            .collect()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.ends.0 == e.ends.1).count()
    }
}

pub fn dual_graph(map: &CombinatorialMap, system: &CurveSystem) -> Result<DualGraph> {
    let ids: BTreeSet<CurveId> = system.ids().collect();
    let cut = cut_along(map, &ids)?;
    let edges = system
        .ids()
        .map(|id| DualEdge {
            curve: id,
            ends: cut.sides[&id],
        })
        .collect();
    Ok(DualGraph {
        vertices: cut.components,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{closed_diagram, validate_params};

    fn params(t: (i64, i64, i64, i64, i64, i64)) -> crate::diagram::DunwoodyParams {
        validate_params(t.0, t.1, t.2, t.3, t.4, t.5).unwrap()
    }

    #[test]
    fn empty_map_has_one_face() {
        let m = CombinatorialMap::empty(3);
        assert_eq!(faces(&m).len(), 1);
        assert_eq!(
            euler_characteristic(&CombinatorialMap::empty(0)).unwrap(),
            2
        );
        let cut = cut_along(&m, &BTreeSet::new()).unwrap();
        assert_eq!(cut.components[0].genus, 3);
    }

    #[test]
    fn faces_of_small_diagram() {
        let h = closed_diagram(&params((1, 1, 1, 2, 1, 0))).unwrap();
        let fs = faces(h.map());
        assert_eq!(fs.len(), 6);
        assert_eq!(
            fs.iter().map(|f| f.darts.len()).sum::<usize>(),
            h.map().dart_count()
        );
    }

    #[test]
    fn euler_characteristic_matches_genus() {
        let h = closed_diagram(&params((1, 1, 1, 3, 1, 1))).unwrap();
        assert_eq!(euler_characteristic(h.map()).unwrap(), -4);
        assert_eq!(genus_of(h.map()).unwrap(), 3);
    }

    #[test]
    fn cut_along_prime_is_planar_and_connected() {
        for t in [(1, 1, 1, 2, 1, 0), (2, 0, 1, 4, 3, 1), (1, 2, 0, 3, 2, 2)] {
            let h = closed_diagram(&params(t)).unwrap();
            let ids: BTreeSet<_> = h.c_prime().ids().collect();
            let cut = cut_along(h.map(), &ids).unwrap();
            assert_eq!(cut.components.len(), 1, "{t:?}");
            assert_eq!(cut.components[0].genus, 0);
            assert_eq!(cut.components[0].boundary_count, 2 * t.3 as usize);
        }
    }

    #[test]
    fn cut_along_nothing_is_whole_surface() {
        let h = closed_diagram(&params((1, 1, 1, 3, 0, 0))).unwrap();
        let cut = cut_along(h.map(), &BTreeSet::new()).unwrap();
        assert_eq!(cut.components.len(), 1);
        assert_eq!(cut.components[0].genus, 3);
        assert_eq!(cut.components[0].boundary_count, 0);
    }

    #[test]
    fn prime_dual_graph_is_a_bouquet() {
        let h = closed_diagram(&params((2, 1, 1, 3, 1, 0))).unwrap();
        let g = dual_graph(h.map(), h.c_prime()).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.loop_count(), 3);
    }
}

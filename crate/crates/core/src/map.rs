//! Combinatorial maps: darts with an edge involution and a vertex rotation.
//!
//! Every dart carries the label of the curve whose edge it belongs to. The
//! maps built here are the graphs Γ(H) of Heegaard diagrams, so every vertex
//! is 4-valent and its rotation alternates between a `C′` dart and a `C″`
//! dart.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the two curve systems a curve belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum System {
    /// The handlebody side, `C′`.
    Prime,
    /// The compression-body side, `C″`.
    Second,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Prime => "cprime",
            System::Second => "csecond",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveId {
    pub system: System,
    pub index: usize,
}

impl CurveId {
    pub fn prime(index: usize) -> Self {
        CurveId {
            system: System::Prime,
            index,
        }
    }

    pub fn second(index: usize) -> Self {
        CurveId {
            system: System::Second,
            index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    vertex: Vec<usize>,
    /// First dart of each vertex, in rotation order.
    vertex_start: Vec<usize>,
    label: Vec<CurveId>,
    /// Genus of the ambient surface; only consulted when there are no darts.
    bare_genus: usize,
}

impl CombinatorialMap {
    /// The surface of the given genus carrying no graph at all.
    pub fn empty(genus: usize) -> Self {
        CombinatorialMap {
            alpha: Vec::new(),
            sigma: Vec::new(),
            vertex: Vec::new(),
            vertex_start: Vec::new(),
            label: Vec::new(),
            bare_genus: genus,
        }
    }

    /// Builds a map from its permutations and checks the Heegaard-graph
    /// invariants: `alpha` is a fixed-point-free involution, `sigma` is a
    /// permutation, every vertex is 4-valent with alternating systems, and
    /// both darts of an edge carry the same label.
    pub fn new(alpha: Vec<usize>, sigma: Vec<usize>, label: Vec<CurveId>) -> Result<Self> {
        let n = alpha.len();
        if sigma.len() != n || label.len() != n {
            return Err(inconsistent("alpha, sigma and labels differ in length"));
        }
        for (d, &e) in alpha.iter().enumerate() {
            if e >= n || e == d || alpha[e] != d {
                return Err(inconsistent(format!(
                    "alpha is not a fixed-point-free involution at dart {d}"
                )));
            }
            if label[d] != label[e] {
                return Err(inconsistent(format!("edge {d}-{e} has two labels")));
            }
        }
        let mut seen = vec![false; n];
        for &e in &sigma {
            if e >= n || seen[e] {
                return Err(inconsistent("sigma is not a permutation"));
            }
            seen[e] = true;
        }

        let mut vertex = vec![usize::MAX; n];
        let mut vertex_start = Vec::new();
        for d in 0..n {
            if vertex[d] != usize::MAX {
                continue;
            }
            let v = vertex_start.len();
            vertex_start.push(d);
            let mut x = d;
            let mut degree = 0;
            loop {
                vertex[x] = v;
                degree += 1;
                x = sigma[x];
                if x == d {
                    break;
                }
            }
            if degree != 4 {
                return Err(inconsistent(format!(
                    "vertex {v} has degree {degree}, expected 4"
                )));
            }
            let systems: Vec<System> = (0..4)
                .scan(d, |x, _| {
                    let s = label[*x].system;
                    *x = sigma[*x];
                    Some(s)
                })
                .collect();
            if systems[0] == systems[1] || systems[1] == systems[2] || systems[2] == systems[3] {
                return Err(inconsistent(format!(
                    "vertex {v} does not alternate C'/C'' darts"
                )));
            }
        }

        Ok(CombinatorialMap {
            alpha,
            sigma,
            vertex,
            vertex_start,
            label,
            bare_genus: 0,
        })
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_start.len()
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alpha(&self, dart: usize) -> usize {
        self.alpha[dart]
    }

    pub fn sigma(&self, dart: usize) -> usize {
        self.sigma[dart]
    }

    /// Face permutation `sigma ∘ alpha`.
    pub fn phi(&self, dart: usize) -> usize {
        self.sigma[self.alpha[dart]]
    }

    pub fn vertex_of(&self, dart: usize) -> usize {
        self.vertex[dart]
    }

    pub fn label(&self, dart: usize) -> CurveId {
        self.label[dart]
    }

    /// The four darts at `v` in counterclockwise order.
    pub fn darts_at(&self, v: usize) -> [usize; 4] {
        let d0 = self.vertex_start[v];
        let d1 = self.sigma[d0];
        let d2 = self.sigma[d1];
        let d3 = self.sigma[d2];
        [d0, d1, d2, d3]
    }

    /// The dart leaving `dart`'s vertex straight across, i.e. continuing the
    /// same curve.
    pub fn opposite(&self, dart: usize) -> usize {
        self.sigma[self.sigma[dart]]
    }

    pub(crate) fn bare_genus(&self) -> usize {
        self.bare_genus
    }

    /// Orbits of `phi`, one vector per face, each starting at its smallest dart.
    pub fn face_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for d in 0..n {
            if seen[d] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.phi(x);
            }
            orbits.push(orbit);
        }
        orbits
    }
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InternalInconsistency(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One C′ loop and one C″ loop crossing once on a torus.
    fn torus_one_crossing() -> CombinatorialMap {
        // darts: 0 = C′ out, 1 = C″ out, 2 = C′ in, 3 = C″ in
        let alpha = vec![2, 3, 0, 1];
        let sigma = vec![1, 2, 3, 0];
        let label = vec![
            CurveId::prime(0),
            CurveId::second(0),
            CurveId::prime(0),
            CurveId::second(0),
        ];
        CombinatorialMap::new(alpha, sigma, label).unwrap()
    }

    #[test]
    fn torus_map_has_one_face() {
        let m = torus_one_crossing();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.face_orbits().len(), 1);
    }

    #[test]
    fn rejects_non_alternating_vertex() {
        let alpha = vec![2, 3, 0, 1];
        let sigma = vec![2, 1, 3, 0];
        let label = vec![
            CurveId::prime(0),
            CurveId::second(0),
            CurveId::prime(0),
            CurveId::second(0),
        ];
        // rotation 0 -> 2 -> 3 -> 0 leaves dart 1 as a fixed point: degree mismatch
        assert!(matches!(
            CombinatorialMap::new(alpha, sigma, label),
            Err(Error::InternalInconsistency(_))
        ));
    }

    #[test]
    fn rejects_alpha_with_fixed_point() {
        let alpha = vec![0, 3, 2, 1];
        let sigma = vec![1, 2, 3, 0];
        let label = vec![CurveId::prime(0); 4];
        assert!(CombinatorialMap::new(alpha, sigma, label).is_err());
    }
}

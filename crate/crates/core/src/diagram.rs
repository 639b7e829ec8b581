//! Dunwoody diagrams: the planar six-parameter graph and its closed gluing.
//!
//! Circle `C′_i` has its `d` slots numbered counterclockwise starting right
//! after the gap that faces the central ("upper") region; the blocks are
//! `[a to C′_{i-1}] [b to C″_{i-1}] [c to C″_i] [a to C′_{i+1}]`.
//! Circle `C″_j` is numbered clockwise starting after the gap facing the
//! outer ("lower") region, with blocks
//! `[a to C″_{j-1}] [c to C′_j] [b to C′_{j+1}] [a to C″_{j+1}]`.
//! Parallel arcs are nested, so the `k`-th slot of one block meets the
//! mirrored slot of the partner block. Gluing identifies slot `p` of `C′_i`
//! with slot `p + r` of `C″_{i+s}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, CurveId, System};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DunwoodyParams {
    a: usize,
    b: usize,
    c: usize,
    n: usize,
    r: usize,
    s: usize,
}

impl DunwoodyParams {
    pub fn a(&self) -> usize {
        self.a
    }
    pub fn b(&self) -> usize {
        self.b
    }
    pub fn c(&self) -> usize {
        self.c
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// Twist, reduced mod `d`.
    pub fn r(&self) -> usize {
        self.r
    }
    /// Shift, reduced mod `n`.
    pub fn s(&self) -> usize {
        self.s
    }
    /// Number of slots per circle, `2a + b + c`.
    pub fn d(&self) -> usize {
        2 * self.a + self.b + self.c
    }

    /// `r ≡ -b (mod d)`: the diagram does not define a Dunwoody manifold.
    pub fn twist_is_minus_b(&self) -> bool {
        (self.r + self.b) % self.d() == 0
    }

    /// `r ≡ -b ± 1 (mod d)`.
    pub fn twist_is_minus_b_pm1(&self) -> bool {
        let d = self.d();
        let t = (self.r + self.b) % d;
        t == 1 % d || t == d - 1
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize, usize) {
        (self.a, self.b, self.c, self.n, self.r, self.s)
    }
}

impl std::fmt::Display for DunwoodyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.a, self.b, self.c, self.n, self.r, self.s
        )
    }
}

/// Checks the raw integers and normalizes `r` mod `d` and `s` mod `n`.
pub fn validate_params(a: i64, b: i64, c: i64, n: i64, r: i64, s: i64) -> Result<DunwoodyParams> {
    if n <= 0 {
        return Err(Error::NonPositiveN(n));
    }
    if a < 0 || b < 0 || c < 0 {
        return Err(Error::NegativeMultiplicity { a, b, c });
    }
    let d = 2 * a + b + c;
    if d == 0 {
        return Err(Error::ZeroD);
    }
    Ok(DunwoodyParams {
        a: a as usize,
        b: b as usize,
        c: c as usize,
        n: n as usize,
        r: r.rem_euclid(d) as usize,
        s: s.rem_euclid(n) as usize,
    })
}

/// The isomorphic diagram `H(a, c, b, d - r, n, n - s - 1)`.
pub fn equivalent_params(p: &DunwoodyParams) -> DunwoodyParams {
    let d = p.d();
    DunwoodyParams {
        a: p.a,
        b: p.c,
        c: p.b,
        n: p.n,
        r: (d - p.r) % d,
        s: (2 * p.n - p.s - 1) % p.n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Circle {
    /// `C′_i`
    Inner(usize),
    /// `C″_j`
    Outer(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub circle: Circle,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcKind {
    /// `a` arcs between `C′_i` and `C′_{i+1}`.
    InnerChain,
    /// `a` arcs between `C″_j` and `C″_{j+1}`.
    OuterChain,
    /// `c` arcs between `C′_i` and `C″_i`.
    Radial,
    /// `b` arcs between `C′_i` and `C″_{i-1}`.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub ends: [Slot; 2],
    pub kind: ArcKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    params: DunwoodyParams,
    arcs: Vec<Arc>,
    /// Arc attached at each slot, indexed by `slot_index`.
    arc_at: Vec<usize>,
}

impl PlanarDiagram {
    pub fn params(&self) -> &DunwoodyParams {
        &self.params
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn circle_count(&self) -> usize {
        2 * self.params.n
    }

    pub fn slot_count(&self) -> usize {
        self.arc_at.len()
    }

    fn slot_index(&self, slot: Slot) -> usize {
        let d = self.params.d();
        match slot.circle {
            Circle::Inner(i) => i * d + slot.position,
            Circle::Outer(j) => (self.params.n + j) * d + slot.position,
        }
    }

    /// The arc at `slot` and the slot at its other end.
    pub fn partner(&self, slot: Slot) -> (usize, Slot) {
        let id = self.arc_at[self.slot_index(slot)];
        let arc = &self.arcs[id];
        let other = if arc.ends[0] == slot {
            arc.ends[1]
        } else {
            arc.ends[0]
        };
        (id, other)
    }

    pub fn count_kind(&self, kind: ArcKind) -> usize {
        self.arcs.iter().filter(|a| a.kind == kind).count()
    }

    /// Whether the arcs join all `2n` circles into one graph. Otherwise
    /// some face of the glued surface is not a disc and the diagram has no
    /// cellular map.
    pub fn is_connected(&self) -> bool {
        let n = self.params.n;
        let index = |c: Circle| match c {
            Circle::Inner(i) => i,
            Circle::Outer(j) => n + j,
        };
        let mut adj = vec![Vec::new(); 2 * n];
        for arc in &self.arcs {
            let (x, y) = (index(arc.ends[0].circle), index(arc.ends[1].circle));
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut seen = vec![false; 2 * n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|v| v)
    }
}

/// Lays out the planar trivalent graph with the block convention described
/// in the module docs.
pub fn build_planar(params: &DunwoodyParams) -> PlanarDiagram {
    let DunwoodyParams { a, b, c, n, .. } = *params;
    let d = params.d();
    let inner = |i: usize, position| Slot {
        circle: Circle::Inner(i % n),
        position,
    };
    let outer = |j: usize, position| Slot {
        circle: Circle::Outer(j % n),
        position,
    };

    let mut arcs = Vec::with_capacity(n * d);
    for i in 0..n {
        for t in 0..a {
            arcs.push(Arc {
                ends: [inner(i, d - 1 - t), inner(i + 1, t)],
                kind: ArcKind::InnerChain,
            });
        }
        for t in 0..a {
            arcs.push(Arc {
                ends: [outer(i, d - 1 - t), outer(i + 1, t)],
                kind: ArcKind::OuterChain,
            });
        }
        for t in 0..c {
            arcs.push(Arc {
                ends: [inner(i, a + b + t), outer(i, a + t)],
                kind: ArcKind::Radial,
            });
        }
        for t in 0..b {
            arcs.push(Arc {
                ends: [inner(i + 1, a + t), outer(i, a + c + t)],
                kind: ArcKind::Diagonal,
            });
        }
    }

    let mut planar = PlanarDiagram {
        params: *params,
        arcs,
        arc_at: vec![usize::MAX; 2 * n * d],
    };
    for id in 0..planar.arcs.len() {
        for end in planar.arcs[id].ends {
            let k = planar.slot_index(end);
            debug_assert_eq!(planar.arc_at[k], usize::MAX, "slot used twice");
            planar.arc_at[k] = id;
        }
    }
    planar
}

/// Orientation choices for the gluing. The default is the calibrated one;
/// the others exist to exercise the calibration battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GlueConvention {
    pub reverse_outer: bool,
    pub negate_twist: bool,
}

/// A curve given by its outgoing darts in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub id: CurveId,
    pub darts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSystem {
    pub system: System,
    pub curves: Vec<Curve>,
}

impl CurveSystem {
    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = CurveId> + '_ {
        self.curves.iter().map(|c| c.id)
    }
}

/// Dart offsets at each singular vertex, in counterclockwise order.
pub(crate) const ARC_INNER: usize = 0;
pub(crate) const FORWARD: usize = 1;
pub(crate) const ARC_OUTER: usize = 2;
pub(crate) const BACKWARD: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedDiagram {
    params: DunwoodyParams,
    map: CombinatorialMap,
    c_prime: CurveSystem,
    c_second: CurveSystem,
    /// `C″` curves removed by a reduction.
    removed: BTreeSet<usize>,
}

/// Glues with the calibrated convention.
pub fn glue(planar: &PlanarDiagram, params: &DunwoodyParams) -> Result<ClosedDiagram> {
    glue_with(planar, params, GlueConvention::default())
}

pub fn glue_with(
    planar: &PlanarDiagram,
    params: &DunwoodyParams,
    conv: GlueConvention,
) -> Result<ClosedDiagram> {
    if planar.params != *params {
        return Err(Error::InternalInconsistency(format!(
            "planar diagram built for {} glued with {}",
            planar.params, params
        )));
    }
    if !planar.is_connected() {
        return Err(Error::DisconnectedDiagram(params.to_string()));
    }
    let n = params.n;
    let d = params.d();
    let r = if conv.negate_twist {
        (d - params.r) % d
    } else {
        params.r
    };
    let s = params.s;

    // slot of C″_{i+s} glued to slot p of C′_i
    let outer_position = |p: usize| {
        let q = (p + r) % d;
        if conv.reverse_outer {
            d - 1 - q
        } else {
            q
        }
    };
    let inner_position = |q: usize| {
        let q = if conv.reverse_outer { d - 1 - q } else { q };
        (q + d - r) % d
    };
    let dart_at_slot = |slot: Slot| match slot.circle {
        Circle::Inner(i) => 4 * (i * d + slot.position) + ARC_INNER,
        Circle::Outer(j) => {
            let i = (j + n - s) % n;
            4 * (i * d + inner_position(slot.position)) + ARC_OUTER
        }
    };

    let darts = 4 * n * d;
    let mut alpha = vec![usize::MAX; darts];
    let mut sigma = vec![0; darts];
    for i in 0..n {
        for p in 0..d {
            let v = i * d + p;
            for k in 0..4 {
                sigma[4 * v + k] = 4 * v + (k + 1) % 4;
            }
            let next = i * d + (p + 1) % d;
            alpha[4 * v + FORWARD] = 4 * next + BACKWARD;
            alpha[4 * next + BACKWARD] = 4 * v + FORWARD;

            let (_, other) = planar.partner(Slot {
                circle: Circle::Inner(i),
                position: p,
            });
            alpha[4 * v + ARC_INNER] = dart_at_slot(other);
            let (_, other) = planar.partner(Slot {
                circle: Circle::Outer((i + s) % n),
                position: outer_position(p),
            });
            alpha[4 * v + ARC_OUTER] = dart_at_slot(other);
        }
    }

    // trace C″ curves: leave through an arc dart, arrive, continue straight across
    let mut label = vec![CurveId::prime(0); darts];
    let mut visited = vec![false; darts];
    let mut second = Vec::new();
    for start in 0..darts {
        let k = start % 4;
        if (k != ARC_INNER && k != ARC_OUTER) || visited[start] {
            continue;
        }
        let id = CurveId::second(second.len());
        let mut out = Vec::new();
        let mut x = start;
        loop {
            if visited[x] {
                return Err(Error::InternalInconsistency(
                    "C'' curve is not simple".into(),
                ));
            }
            let y = alpha[x];
            visited[x] = true;
            visited[y] = true;
            label[x] = id;
            label[y] = id;
            out.push(x);
            x = sigma[sigma[y]];
            if x == start {
                break;
            }
        }
        second.push(Curve { id, darts: out });
    }

    let mut prime = Vec::with_capacity(n);
    for i in 0..n {
        let id = CurveId::prime(i);
        let out: Vec<usize> = (0..d).map(|p| 4 * (i * d + p) + FORWARD).collect();
        for &x in &out {
            label[x] = id;
            label[alpha[x]] = id;
        }
        prime.push(Curve { id, darts: out });
    }

    let map = CombinatorialMap::new(alpha, sigma, label)?;
    let diagram = ClosedDiagram {
        params: *params,
        map,
        c_prime: CurveSystem {
            system: System::Prime,
            curves: prime,
        },
        c_second: CurveSystem {
            system: System::Second,
            curves: second,
        },
        removed: BTreeSet::new(),
    };
    let chi = crate::surface::euler_characteristic(&diagram.map)?;
    if chi != 2 - 2 * n as i64 {
        return Err(Error::InternalInconsistency(format!(
            "glued surface has Euler characteristic {chi}, expected {}",
            2 - 2 * n as i64
        )));
    }
    Ok(diagram)
}

/// `validate_params`, `build_planar` and `glue` in one step.
pub fn closed_diagram(params: &DunwoodyParams) -> Result<ClosedDiagram> {
    glue(&build_planar(params), params)
}

impl ClosedDiagram {
    pub fn params(&self) -> &DunwoodyParams {
        &self.params
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn c_prime(&self) -> &CurveSystem {
        &self.c_prime
    }

    /// Every `C″` curve of the unreduced diagram, including removed ones.
    pub fn c_second_all(&self) -> &CurveSystem {
        &self.c_second
    }

    /// The retained `C″` system.
    pub fn c_second(&self) -> CurveSystem {
        CurveSystem {
            system: System::Second,
            curves: self
                .c_second
                .curves
                .iter()
                .filter(|c| self.is_retained(c.id.index))
                .cloned()
                .collect(),
        }
    }

    pub fn removed(&self) -> &BTreeSet<usize> {
        &self.removed
    }

    pub fn is_retained(&self, curve: usize) -> bool {
        !self.removed.contains(&curve)
    }

    pub fn curve(&self, id: CurveId) -> &Curve {
        match id.system {
            System::Prime => &self.c_prime.curves[id.index],
            System::Second => &self.c_second.curves[id.index],
        }
    }

    /// Slot `(i, p)` of `C′` identified at vertex `v`.
    pub fn vertex_slot(&self, v: usize) -> (usize, usize) {
        (v / self.params.d(), v % self.params.d())
    }

    /// The `C″` curve passing through vertex `v`.
    pub fn second_curve_at(&self, v: usize) -> usize {
        self.map.label(4 * v + ARC_INNER).index
    }

    /// Whether vertex `v` is a singular vertex of Γ(H) after reductions.
    pub fn is_singular(&self, v: usize) -> bool {
        self.is_retained(self.second_curve_at(v))
    }

    pub(crate) fn with_removed(&self, removed: BTreeSet<usize>) -> ClosedDiagram {
        ClosedDiagram {
            removed,
            ..self.clone()
        }
    }

    /// Image of a dart under the order-`n` rotation `C′_i ↦ C′_{i+1}`.
    pub fn rotate_dart(&self, dart: usize) -> usize {
        let d = self.params.d();
        let n = self.params.n;
        let v = dart / 4;
        let (i, p) = (v / d, v % d);
        4 * (((i + 1) % n) * d + p) + dart % 4
    }

    /// Checks dart by dart that the rotation commutes with `alpha` and `sigma`.
    pub fn symmetry_is_automorphism(&self) -> bool {
        (0..self.map.dart_count()).all(|x| {
            let y = self.rotate_dart(x);
            self.rotate_dart(self.map.alpha(x)) == self.map.alpha(y)
                && self.rotate_dart(self.map.sigma(x)) == self.map.sigma(y)
        })
    }
}

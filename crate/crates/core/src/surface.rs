//! Combinatorial surface of an atom.
//!
//! The neighbourhood of the critical point is a `(2k+2)`-gon whose sides
//! alternate between transversal sides `T_i` (crossing the zero level at the
//! matched point `Q_i`) and level sides `L_i` (the `±ε` level inside sector
//! `i`, carrying the sector sign). Traversal order is
//! `T_0, L_0, T_1, L_1, ..., T_k, L_k`. For `i >= 1`, `T_i` has one corner on
//! the `+ε` level (`P_i`) and one on the `-ε` level (`N_i`).
//!
//! Every chord `(i, j)` attaches a band `[0,1] x [-ε, ε]` along `T_i` and
//! `T_j`, with `(0, -ε) -> N_i`, `(0, +ε) -> P_i`, `(1, -ε) -> N_j`,
//! `(1, +ε) -> P_j`. The top edge of the band lies on the `+ε` level and the
//! bottom edge on the `-ε` level, so the attachment is forced by the level
//! values.
//!
//! Unattached transversal sides (and `T_0`) lie on the boundary of the
//! surface. Closing up glues one disk along each level.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{ChordDiagram, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("not closeable: the {sign} level has {components} components")]
    NotCloseable { sign: Sign, components: usize },
    #[error("inconsistent counts: euler {euler}, boundary {boundary}, orientable {orientable}")]
    InconsistentCounts {
        euler: i64,
        boundary: usize,
        orientable: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    /// The corner reached first when walking the polygon.
    Start,
    Finish,
}

/// Polygon vertex: one end of the transversal side `T_side`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub side: usize,
    pub end: End,
}

impl Corner {
    fn index(self) -> usize {
        2 * self.side + usize::from(self.end == End::Finish)
    }

    fn from_index(idx: usize) -> Corner {
        Corner {
            side: idx / 2,
            end: if idx.is_multiple_of(2) {
                End::Start
            } else {
                End::Finish
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryEdge {
    Transversal(usize),
    Level(usize),
    BandTop(usize),
    BandBottom(usize),
    /// Free side of the disk glued along the level of the given sign.
    Cap(Sign),
}

impl fmt::Display for BoundaryEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryEdge::Transversal(i) => write!(f, "T{i}"),
            BoundaryEdge::Level(i) => write!(f, "L{i}"),
            BoundaryEdge::BandTop(b) => write!(f, "B{b}+"),
            BoundaryEdge::BandBottom(b) => write!(f, "B{b}-"),
            BoundaryEdge::Cap(s) => write!(f, "D{}", s.symbol()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Band {
    pub first: usize,
    pub second: usize,
}

/// Polygon plus one band per chord.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandSurface {
    k: usize,
    base: Sign,
    bands: Vec<Band>,
    band_at: Vec<Option<usize>>,
}

/// Connected component of one level (`+ε` or `-ε`) inside the atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelChain {
    pub sign: Sign,
    pub edges: Vec<BoundaryEdge>,
    /// End corners of an arc; `None` for a closed circle.
    pub ends: Option<(Corner, Corner)>,
}

impl LevelChain {
    pub fn is_circle(&self) -> bool {
        self.ends.is_none()
    }
}

/// Closed cyclic sequence of boundary edges.
pub type Circuit = Vec<BoundaryEdge>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub orientable: bool,
    pub euler_characteristic: i64,
    pub boundary_components: usize,
    /// Genus when orientable, crosscap number otherwise.
    #[serde(skip)]
    handles: u64,
}

impl SurfaceInvariants {
    /// Derives genus or crosscap number from the classification relations.
    pub fn from_counts(
        orientable: bool,
        euler: i64,
        boundary: usize,
    ) -> Result<Self, SurfaceError> {
        let deficit = 2 - euler - boundary as i64;
        let bad = SurfaceError::InconsistentCounts {
            euler,
            boundary,
            orientable,
        };
        let handles = if orientable {
            if deficit < 0 || deficit % 2 != 0 {
                return Err(bad);
            }
            deficit / 2
        } else {
            if deficit < 1 {
                return Err(bad);
            }
            deficit
        };
        Ok(SurfaceInvariants {
            orientable,
            euler_characteristic: euler,
            boundary_components: boundary,
            handles: handles as u64,
        })
    }

    pub fn genus(&self) -> Option<u64> {
        self.orientable.then_some(self.handles)
    }

    pub fn crosscap_number(&self) -> Option<u64> {
        (!self.orientable).then_some(self.handles)
    }
}

/// Edges plus their endpoints, walked into paths and cycles.
struct Walk {
    edges: Vec<BoundaryEdge>,
    ends: Option<(Corner, Corner)>,
}

/// Splits an edge set where every corner has degree at most two into its
/// components, open paths first (from the smallest end corner), then cycles.
fn walk_components(edges: &[(BoundaryEdge, Corner, Corner)], corners: usize) -> Vec<Walk> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); corners];
    for (idx, (_, a, b)) in edges.iter().enumerate() {
        incident[a.index()].push(idx);
        incident[b.index()].push(idx);
    }
    debug_assert!(incident.iter().all(|v| v.len() <= 2));

    let mut used = vec![false; edges.len()];
    let mut out = Vec::new();

    let trace = |start: usize, first: usize, used: &mut Vec<bool>| {
        let mut path = Vec::new();
        let mut corner = start;
        let mut edge = first;
        loop {
            used[edge] = true;
            let (label, a, b) = edges[edge];
            path.push(label);
            corner = if a.index() == corner {
                b.index()
            } else {
                a.index()
            };
            match incident[corner].iter().find(|&&e| !used[e]) {
                Some(&next) => edge = next,
                None => break,
            }
        }
        (path, corner)
    };

    for start in 0..corners {
        if incident[start].len() == 1 && !used[incident[start][0]] {
            let (path, end) = trace(start, incident[start][0], &mut used);
            out.push(Walk {
                edges: path,
                ends: Some((Corner::from_index(start), Corner::from_index(end))),
            });
        }
    }
    for idx in 0..edges.len() {
        if !used[idx] {
            let start = edges[idx].1.index();
            let (path, _) = trace(start, idx, &mut used);
            out.push(Walk {
                edges: path,
                ends: None,
            });
        }
    }
    out
}

impl BandSurface {
    /// Polygon of `d` with one band per chord.
    pub fn build(d: &ChordDiagram) -> Self {
        let mut band_at = vec![None; d.k() + 1];
        let bands = d
            .chords()
            .iter()
            .enumerate()
            .map(|(idx, &(first, second))| {
                band_at[first] = Some(idx);
                band_at[second] = Some(idx);
                Band { first, second }
            })
            .collect();
        BandSurface {
            k: d.k(),
            base: d.base(),
            bands,
            band_at,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    fn sides(&self) -> usize {
        self.k + 1
    }

    fn corner_count(&self) -> usize {
        2 * self.sides()
    }

    /// Sign of sector `i`, i.e. of the level side `L_i`.
    pub fn sector_sign(&self, sector: usize) -> Sign {
        self.base.alternate(sector)
    }

    /// Level value at a corner.
    pub fn corner_sign(&self, c: Corner) -> Sign {
        match c.end {
            End::Start => self.sector_sign((c.side + self.k) % self.sides()),
            End::Finish => self.sector_sign(c.side),
        }
    }

    /// The corner of `T_side` on the level of the given sign. Exists for every
    /// side except possibly `T_0` when `k` is even.
    pub fn corner_on(&self, side: usize, sign: Sign) -> Option<Corner> {
        [End::Start, End::Finish]
            .into_iter()
            .map(|end| Corner { side, end })
            .find(|&c| self.corner_sign(c) == sign)
    }

    /// `(N_i, P_i)` for `i >= 1`.
    pub fn transversal_endpoints(&self, side: usize) -> (Corner, Corner) {
        (
            self.corner_on(side, Sign::Neg)
                .expect("side has a negative corner"),
            self.corner_on(side, Sign::Pos)
                .expect("side has a positive corner"),
        )
    }

    /// Band with its ends on sides of equal parity: the polygon runs along
    /// both attaching sides in the same level direction.
    pub fn is_twisted(&self, band: usize) -> bool {
        let Band { first, second } = self.bands[band];
        self.rises(first) == self.rises(second)
    }

    /// Whether the polygon walk along `T_side` goes from `-ε` up to `+ε`.
    fn rises(&self, side: usize) -> bool {
        self.corner_sign(Corner {
            side,
            end: End::Start,
        }) == Sign::Neg
    }

    pub fn polygon(&self) -> Vec<BoundaryEdge> {
        (0..self.sides())
            .flat_map(|i| [BoundaryEdge::Transversal(i), BoundaryEdge::Level(i)])
            .collect()
    }

    fn endpoints(&self, edge: BoundaryEdge) -> (Corner, Corner) {
        let n = self.sides();
        match edge {
            BoundaryEdge::Transversal(i) => (
                Corner {
                    side: i,
                    end: End::Start,
                },
                Corner {
                    side: i,
                    end: End::Finish,
                },
            ),
            BoundaryEdge::Level(i) => (
                Corner {
                    side: i,
                    end: End::Finish,
                },
                Corner {
                    side: (i + 1) % n,
                    end: End::Start,
                },
            ),
            BoundaryEdge::BandTop(b) | BoundaryEdge::BandBottom(b) => {
                let sign = if matches!(edge, BoundaryEdge::BandTop(_)) {
                    Sign::Pos
                } else {
                    Sign::Neg
                };
                let Band { first, second } = self.bands[b];
                (
                    self.corner_on(first, sign).expect("banded side"),
                    self.corner_on(second, sign).expect("banded side"),
                )
            }
            BoundaryEdge::Cap(_) => unreachable!("caps belong to a closed surface"),
        }
    }

    fn with_endpoints(&self, edges: Vec<BoundaryEdge>) -> Vec<(BoundaryEdge, Corner, Corner)> {
        edges
            .into_iter()
            .map(|e| {
                let (a, b) = self.endpoints(e);
                (e, a, b)
            })
            .collect()
    }

    fn atom_boundary(&self) -> Vec<BoundaryEdge> {
        let mut edges = Vec::new();
        for i in 0..self.sides() {
            if self.band_at[i].is_none() {
                edges.push(BoundaryEdge::Transversal(i));
            }
            edges.push(BoundaryEdge::Level(i));
        }
        for b in 0..self.bands.len() {
            edges.push(BoundaryEdge::BandTop(b));
            edges.push(BoundaryEdge::BandBottom(b));
        }
        edges
    }

    /// Boundary circuits of the atom by the corner walk: at every corner the
    /// walk leaves along the other boundary edge meeting it (through a band
    /// when the side is attached).
    pub fn boundary_circuits(&self) -> Vec<Circuit> {
        let edges = self.with_endpoints(self.atom_boundary());
        walk_components(&edges, self.corner_count())
            .into_iter()
            .map(|w| {
                debug_assert!(w.ends.is_none());
                w.edges
            })
            .collect()
    }

    /// Components of the level of the given sign: level sides of that sign
    /// linked through band tops (`+`) or bottoms (`-`).
    pub fn level_arcs(&self, sign: Sign) -> Vec<LevelChain> {
        let mut edges: Vec<BoundaryEdge> = (0..self.sides())
            .filter(|&i| self.sector_sign(i) == sign)
            .map(BoundaryEdge::Level)
            .collect();
        edges.extend((0..self.bands.len()).map(|b| match sign {
            Sign::Pos => BoundaryEdge::BandTop(b),
            Sign::Neg => BoundaryEdge::BandBottom(b),
        }));
        let edges = self.with_endpoints(edges);
        walk_components(&edges, self.corner_count())
            .into_iter()
            .map(|w| LevelChain {
                sign,
                edges: w.edges,
                ends: w.ends,
            })
            .collect()
    }

    /// Glues a disk along each level. Fails unless both levels are connected.
    pub fn close_up(&self) -> Result<ClosedSurface, SurfaceError> {
        let mut caps = Vec::with_capacity(2);
        for sign in [Sign::Pos, Sign::Neg] {
            let mut chains = self.level_arcs(sign);
            if chains.len() != 1 {
                return Err(SurfaceError::NotCloseable {
                    sign,
                    components: chains.len(),
                });
            }
            caps.push(chains.pop().expect("one chain"));
        }
        let negative = caps.pop().expect("two caps");
        let positive = caps.pop().expect("two caps");
        Ok(ClosedSurface {
            atom: self.clone(),
            positive,
            negative,
        })
    }

    /// Orientation propagated from the polygon to every band. A band is
    /// consistent when the polygon runs along its two attaching sides in
    /// opposite level directions.
    pub fn is_orientable(&self) -> bool {
        self.bands.iter().all(|band| {
            // orientation the band must take to match the polygon at each end
            let at_first = self.rises(band.first);
            let at_second = !self.rises(band.second);
            at_first == at_second
        })
    }

    fn cell_counts(&self) -> (i64, i64, i64) {
        let corners = self.corner_count() as i64;
        let bands = self.bands.len() as i64;
        let edges = 2 * self.sides() as i64 + 2 * bands;
        let faces = 1 + bands;
        (corners, edges, faces)
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.cell_counts();
        v - e + f
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        SurfaceInvariants::from_counts(
            self.is_orientable(),
            self.euler_characteristic(),
            self.boundary_circuits().len(),
        )
        .expect("disk with bands satisfies the classification relations")
    }
}

/// Atom with a disk glued along each of its two levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSurface {
    atom: BandSurface,
    positive: LevelChain,
    negative: LevelChain,
}

impl ClosedSurface {
    pub fn atom(&self) -> &BandSurface {
        &self.atom
    }

    pub fn cap(&self, sign: Sign) -> &LevelChain {
        match sign {
            Sign::Pos => &self.positive,
            Sign::Neg => &self.negative,
        }
    }

    fn arc_caps(&self) -> impl Iterator<Item = &LevelChain> {
        [&self.positive, &self.negative]
            .into_iter()
            .filter(|c| !c.is_circle())
    }

    /// Remaining boundary: unattached transversal sides joined by the free
    /// sides of the arc-glued disks. Circle-glued disks leave nothing.
    pub fn boundary_circuits(&self) -> Vec<Circuit> {
        let mut edges: Vec<(BoundaryEdge, Corner, Corner)> = self.atom.with_endpoints(
            (0..self.atom.sides())
                .filter(|&i| self.atom.band_at[i].is_none())
                .map(BoundaryEdge::Transversal)
                .collect(),
        );
        for cap in self.arc_caps() {
            let (a, b) = cap.ends.expect("arc cap");
            edges.push((BoundaryEdge::Cap(cap.sign), a, b));
        }
        walk_components(&edges, self.atom.corner_count())
            .into_iter()
            .map(|w| w.edges)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, mut e, mut f) = self.atom.cell_counts();
        for cap in [&self.positive, &self.negative] {
            f += 1;
            if !cap.is_circle() {
                e += 1;
            }
        }
        v - e + f
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        SurfaceInvariants::from_counts(
            self.atom.is_orientable(),
            self.euler_characteristic(),
            self.boundary_circuits().len(),
        )
        .expect("capped surface satisfies the classification relations")
    }
}

pub fn build_atom(d: &ChordDiagram) -> BandSurface {
    BandSurface::build(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rotation {
    /// Increasing point index.
    Forward,
    Backward,
}

/// Walk from `Q_0` to the other free point through every matched point once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullWay {
    pub direction: Rotation,
    pub points: Vec<usize>,
}

/// Full ways of a diagram with exactly two free points.
///
/// A way follows a level line through the diagram: arc steps and chord steps
/// alternate (every intermediate point carries a chord), and all arc steps go
/// the same way round the circle. Ways are directed from `Q_0`, so at most two
/// exist, one per starting direction.
pub fn find_full_ways(d: &ChordDiagram) -> Vec<FullWay> {
    let free = d.free_points();
    if free.len() != 2 {
        return Vec::new();
    }
    let target = free[1];
    let n = d.point_count();
    let mates = d.mates();
    let mut ways = Vec::new();
    for direction in [Rotation::Forward, Rotation::Backward] {
        let step = |p: usize| match direction {
            Rotation::Forward => (p + 1) % n,
            Rotation::Backward => (p + n - 1) % n,
        };
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut points = vec![0];
        let mut at = 0;
        loop {
            at = step(at);
            if seen[at] {
                break;
            }
            seen[at] = true;
            points.push(at);
            match mates[at] {
                None => break,
                Some(m) if !seen[m] => {
                    seen[m] = true;
                    points.push(m);
                    at = m;
                }
                Some(_) => break,
            }
        }
        if points.len() == n && at == target {
            ways.push(FullWay { direction, points });
        }
    }
    ways
}

//! Independent oracle: builds the atom as a cell complex (one polygon, one
//! square per chord, optional cap disks), identifies edges with a union-find
//! and reads off V, E, F, orientability and boundary circles.
//!
//! Only the geometric gluing rule is shared with the library: a band joins
//! the two transversal sides so that positive corners meet positive corners.

#![allow(dead_code)]

use atomforge::{ChordDiagram, Sign};

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
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

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a] = b;
        }
    }
}

/// Parity union-find for orientation constraints.
struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            parity: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Requires `orient(a) xor orient(b) == differ`; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, differ: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == differ;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ differ;
        true
    }
}

#[derive(Clone, Copy, Debug)]
struct RawEdge {
    cell: usize,
    from: usize,
    to: usize,
    /// Level sign for edges lying on a level, `None` for transversal sides.
    level: Option<Sign>,
}

#[derive(Default)]
struct Complex {
    vertices: usize,
    cells: usize,
    edges: Vec<RawEdge>,
    /// `(a, b, same_direction)`: raw edge `a` is glued onto raw edge `b`.
    gluings: Vec<(usize, usize, bool)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCounts {
    pub v: i64,
    pub e: i64,
    pub f: i64,
    pub orientable: bool,
    pub boundary: usize,
}

impl OracleCounts {
    pub fn euler(&self) -> i64 {
        self.v - self.e + self.f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleClose {
    Closed(OracleCounts),
    /// A level has this many components.
    NotCloseable {
        sign: Sign,
        components: usize,
    },
}

impl Complex {
    fn vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    /// Adds a cell whose boundary visits `corners` in order.
    fn cell(&mut self, corners: &[usize], levels: &[Option<Sign>]) -> Vec<usize> {
        let cell = self.cells;
        self.cells += 1;
        let n = corners.len();
        (0..n)
            .map(|i| {
                self.edges.push(RawEdge {
                    cell,
                    from: corners[i],
                    to: corners[(i + 1) % n],
                    level: levels[i],
                });
                self.edges.len() - 1
            })
            .collect()
    }

    fn glue(&mut self, a: usize, b: usize, same_direction: bool) {
        self.gluings.push((a, b, same_direction));
    }

    fn vertex_classes(&self) -> Dsu {
        let mut vs = Dsu::new(self.vertices);
        for &(a, b, same) in &self.gluings {
            let (ea, eb) = (self.edges[a], self.edges[b]);
            if same {
                vs.union(ea.from, eb.from);
                vs.union(ea.to, eb.to);
            } else {
                vs.union(ea.from, eb.to);
                vs.union(ea.to, eb.from);
            }
        }
        vs
    }

    fn glued(&self) -> Vec<bool> {
        let mut glued = vec![false; self.edges.len()];
        for &(a, b, _) in &self.gluings {
            assert!(!glued[a] && !glued[b], "edge glued twice");
            glued[a] = true;
            glued[b] = true;
        }
        glued
    }

    fn counts(&self) -> OracleCounts {
        let mut vs = self.vertex_classes();
        let v = (0..self.vertices).filter(|&x| vs.find(x) == x).count() as i64;
        let e = (self.edges.len() - self.gluings.len()) as i64;
        let f = self.cells as i64;

        let mut orient = ParityDsu::new(self.cells);
        let mut orientable = true;
        for &(a, b, same) in &self.gluings {
            // cells traversing a shared edge the same way need opposite
            // orientations
            orientable &= orient.relate(self.edges[a].cell, self.edges[b].cell, same);
        }

        let glued = self.glued();
        let mut degree = vec![0usize; self.vertices];
        let mut circles = Dsu::new(self.vertices);
        let mut on_boundary = vec![false; self.vertices];
        for (i, e) in self.edges.iter().enumerate() {
            if glued[i] {
                continue;
            }
            let (x, y) = (vs.find(e.from), vs.find(e.to));
            degree[x] += 1;
            degree[y] += 1;
            circles.union(x, y);
            on_boundary[x] = true;
            on_boundary[y] = true;
        }
        for x in 0..self.vertices {
            if vs.find(x) == x {
                assert!(
                    degree[x] == 2 || (degree[x] == 0 && !on_boundary[x]),
                    "vertex class {x} has boundary degree {}",
                    degree[x]
                );
            }
        }
        let boundary = (0..self.vertices)
            .filter(|&x| vs.find(x) == x && on_boundary[x] && circles.find(x) == x)
            .count();
        OracleCounts {
            v,
            e,
            f,
            orientable,
            boundary,
        }
    }

    /// Components of the free level edges of one sign: `(edges in walk
    /// order with direction flag, is_cycle)`.
    fn level_components(&self, sign: Sign) -> Vec<(Vec<(usize, bool)>, bool)> {
        let mut vs = self.vertex_classes();
        let glued = self.glued();
        let level: Vec<usize> = (0..self.edges.len())
            .filter(|&i| !glued[i] && self.edges[i].level == Some(sign))
            .collect();
        let mut incident: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &i in &level {
            let e = self.edges[i];
            incident.entry(vs.find(e.from)).or_default().push(i);
            incident.entry(vs.find(e.to)).or_default().push(i);
        }
        let mut used = vec![false; self.edges.len()];
        let mut out = Vec::new();
        // open chains from degree-one ends first, then cycles
        let mut starts: Vec<usize> = incident
            .iter()
            .filter(|(_, es)| es.len() == 1)
            .map(|(&x, _)| x)
            .collect();
        starts.extend(incident.keys().copied());
        for start in starts {
            let Some(&first) = incident[&start].iter().find(|&&i| !used[i]) else {
                continue;
            };
            let is_cycle = incident[&start].len() == 2;
            let mut walk = Vec::new();
            let mut at = start;
            let mut next = Some(first);
            while let Some(i) = next {
                used[i] = true;
                let e = self.edges[i];
                let forward = vs.find(e.from) == at;
                walk.push((i, forward));
                at = if forward {
                    vs.find(e.to)
                } else {
                    vs.find(e.from)
                };
                next = incident[&at].iter().copied().find(|&j| !used[j]);
            }
            out.push((walk, is_cycle));
        }
        out
    }

    /// Glues a disk along a level component: along the whole circle, or
    /// along an arc plus one new free edge.
    fn cap(&mut self, walk: &[(usize, bool)], is_cycle: bool) {
        let m = walk.len();
        let corners: Vec<usize> = (0..m + usize::from(!is_cycle))
            .map(|_| self.vertex())
            .collect();
        // the diameter of an arc cap stays on the boundary
        let cap_edges = self.cell(&corners, &vec![None; corners.len()]);
        for (t, &(i, forward)) in walk.iter().enumerate() {
            // cap edge t runs corner t -> corner t+1 along the walk
            self.glue(cap_edges[t], i, forward);
        }
    }
}

/// The atom of `d` as a polygon with one square band per chord.
fn atom_complex(d: &ChordDiagram) -> Complex {
    let n = d.point_count();
    let mut cx = Complex::default();
    // polygon corners: 2i and 2i+1 bound the transversal side through Q_i
    let corners: Vec<usize> = (0..2 * n).map(|_| cx.vertex()).collect();
    let corner_sign = |c: usize| {
        let side = c / 2;
        if c.is_multiple_of(2) {
            d.arc_sign((side + n - 1) % n)
        } else {
            d.arc_sign(side)
        }
    };
    let levels: Vec<Option<Sign>> = (0..2 * n)
        .map(|c| {
            if c % 2 == 0 {
                None
            } else {
                Some(corner_sign(c))
            }
        })
        .collect();
    let poly = cx.cell(&corners, &levels);
    for &(i, j) in d.chords() {
        let plus_first = |side: usize| corner_sign(2 * side) == Sign::Pos;
        // square b0 b1 b2 b3: b0, b3 positive, b1, b2 negative
        let b: Vec<usize> = (0..4).map(|_| cx.vertex()).collect();
        let band = cx.cell(&b, &[None, Some(Sign::Neg), None, Some(Sign::Pos)]);
        // band edge 0 runs + -> -, band edge 2 runs - -> +
        cx.glue(band[0], poly[2 * i], plus_first(i));
        cx.glue(band[2], poly[2 * j], !plus_first(j));
    }
    cx
}

pub fn atom_counts(d: &ChordDiagram) -> OracleCounts {
    atom_complex(d).counts()
}

pub fn closed_counts(d: &ChordDiagram) -> OracleClose {
    let mut cx = atom_complex(d);
    let mut caps = Vec::new();
    for sign in [Sign::Pos, Sign::Neg] {
        let comps = cx.level_components(sign);
        if comps.len() != 1 {
            return OracleClose::NotCloseable {
                sign,
                components: comps.len(),
            };
        }
        caps.push(comps.into_iter().next().expect("one component"));
    }
    for (walk, is_cycle) in caps {
        cx.cap(&walk, is_cycle);
    }
    OracleClose::Closed(cx.counts())
}

/// Every diagram with parameter `k` and both base colours.
pub fn all_diagrams(k: usize) -> Vec<ChordDiagram> {
    atomforge::enumerate_diagrams(k, None, atomforge::Colorings::Both).collect()
}

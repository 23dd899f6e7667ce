//! Optimality criteria, diagram equivalence and classification catalogs.
//!
//! A diagram carries an optimal function (one minimum, one maximum, one
//! boundary saddle) when its atom closes up, with one disk per level, to a
//! surface of the requested type with a single boundary circle. That surface
//! test is the authoritative decision; the syntactic chord conditions are
//! checked against it on every call.
//!
//! Equivalence of diagrams is decided by canonical forms: the lexicographically
//! smallest text encoding over the orbit of a symmetry group. `Q_0` marks the
//! critical point, so the default group is generated by the reflection through
//! `Q_0` (reversing the boundary orientation). Atom mode also forgets the
//! colouring.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{write_encoding, ChordDiagram, GluingSubstitution, Sign};
use crate::enumeration::{optimal_candidates_in, optimal_profile, partitions};
use crate::surface::{build_atom, find_full_ways};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("profile mismatch: expected k = {expected_k} with {expected_chords} chords, got k = {k} with {chords}")]
    ProfileMismatch {
        expected_k: usize,
        expected_chords: usize,
        k: usize,
        chords: usize,
    },
    #[error("criteria disagree on {diagram}: {detail}")]
    InconsistentCriteria { diagram: String, detail: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("genus {0} is out of range for this profile")]
    GenusOutOfRange(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    /// Layer equivalence: colouring forgotten.
    #[serde(rename = "atom")]
    Atom,
    /// Layer-equipped equivalence: colouring kept.
    #[serde(rename = "fatom")]
    FAtom,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Atom => "atom",
            Mode::FAtom => "fatom",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "atom" => Ok(Mode::Atom),
            "fatom" | "f-atom" => Ok(Mode::FAtom),
            other => Err(format!("unknown mode `{other}` (expected atom or fatom)")),
        }
    }
}

/// Symmetries of the circle used to identify diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryGroup {
    Identity,
    /// Reflection through `Q_0`.
    Reflection,
    /// All rotations and reflections of the `k + 1` points, `Q_0` included.
    Dihedral,
}

impl SymmetryGroup {
    pub const ALL: [SymmetryGroup; 3] = [
        SymmetryGroup::Identity,
        SymmetryGroup::Reflection,
        SymmetryGroup::Dihedral,
    ];

    fn maps(self, n: usize) -> Vec<PointMap> {
        match self {
            SymmetryGroup::Identity => vec![PointMap::rotation(0)],
            SymmetryGroup::Reflection => vec![PointMap::rotation(0), PointMap::reflection(0)],
            SymmetryGroup::Dihedral => (0..n)
                .flat_map(|r| [PointMap::rotation(r), PointMap::reflection(r)])
                .collect(),
        }
    }
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryGroup::Identity => "identity",
            SymmetryGroup::Reflection => "reflection",
            SymmetryGroup::Dihedral => "dihedral",
        })
    }
}

impl FromStr for SymmetryGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity" => Ok(SymmetryGroup::Identity),
            "reflection" => Ok(SymmetryGroup::Reflection),
            "dihedral" => Ok(SymmetryGroup::Dihedral),
            other => Err(format!("unknown symmetry group `{other}`")),
        }
    }
}

/// Group used unless the caller asks otherwise. It is the only variant that
/// matches the reference atom counts; see [`group_calibration`].
pub const DEFAULT_GROUP: SymmetryGroup = SymmetryGroup::Reflection;

/// `i -> (offset + i) mod n`, or `(offset - i) mod n` when reflecting.
#[derive(Clone, Copy, Debug)]
struct PointMap {
    offset: usize,
    reflect: bool,
}

impl PointMap {
    fn rotation(offset: usize) -> Self {
        PointMap {
            offset,
            reflect: false,
        }
    }

    fn reflection(offset: usize) -> Self {
        PointMap {
            offset,
            reflect: true,
        }
    }

    fn apply(self, i: usize, n: usize) -> usize {
        if self.reflect {
            (self.offset + n - i % n) % n
        } else {
            (self.offset + i) % n
        }
    }

    /// Arc `a` (from `Q_a` to `Q_{a+1}`) lands on this arc. Decided by
    /// index, not by endpoints: with two points both arcs share them.
    fn apply_arc(self, a: usize, n: usize) -> usize {
        if self.reflect {
            (self.offset + 2 * n - a - 1) % n
        } else {
            (self.offset + a) % n
        }
    }
}

/// Smallest text encoding over an orbit; equal forms mean equivalent diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn image_encoding(d: &ChordDiagram, map: PointMap) -> String {
    let n = d.point_count();
    let mut pairs: Vec<(usize, usize)> = d
        .chords()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (map.apply(a, n), map.apply(b, n));
            (x.min(y), x.max(y))
        })
        .collect();
    pairs.sort_unstable();
    let base = (0..n)
        .find(|&a| map.apply_arc(a, n) == 0)
        .map(|a| d.arc_sign(a))
        .expect("some arc lands on arc 0");
    let mut out = String::new();
    write_encoding(&mut out, d.k(), &pairs, base).expect("writing to a String");
    out
}

/// Canonical form under the default group.
pub fn canonical_form(d: &ChordDiagram, mode: Mode) -> CanonicalForm {
    canonical_form_in(d, mode, DEFAULT_GROUP)
}

pub fn canonical_form_in(d: &ChordDiagram, mode: Mode, group: SymmetryGroup) -> CanonicalForm {
    let maps = group.maps(d.point_count());
    let colourings = match mode {
        Mode::FAtom => vec![d.clone()],
        Mode::Atom => vec![d.clone(), d.with_colors_swapped()],
    };
    let best = colourings
        .iter()
        .flat_map(|c| maps.iter().map(move |&m| image_encoding(c, m)))
        .min()
        .expect("group is non-empty");
    CanonicalForm(best)
}

/// Every chord leaves an even number of matched points on each side
/// (`Q_0` counted). For odd `k` this means every chord joins an odd point to
/// an even one.
pub fn chord_parity_ok(d: &ChordDiagram) -> bool {
    let n = d.point_count();
    d.chords().iter().all(|&(a, b)| {
        let inside = b - a - 1;
        let outside = n - inside - 2;
        inside % 2 == 0 && outside.is_multiple_of(2)
    })
}

/// Whether two chords `(i, j+1)` and `(i+1, j)` are present, with successors
/// taken modulo `k + 1`.
pub fn forbidden_pair_present(d: &ChordDiagram) -> bool {
    let n = d.point_count();
    let mates = d.mates();
    d.chords().iter().any(|&(a, b)| {
        [(a, b), (b, a)].into_iter().any(|(i, j_next)| {
            let i_next = (i + 1) % n;
            let j = (j_next + n - 1) % n;
            i_next != j && mates[i_next] == Some(j)
        })
    })
}

/// Every free point other than `Q_0` has an odd index.
pub fn free_points_odd_ok(d: &ChordDiagram) -> bool {
    d.free_points().iter().skip(1).all(|p| p % 2 == 1)
}

/// Invariant-based decision: the atom closes up to a surface of the requested
/// type with one boundary circle.
fn optimal_by_invariants(d: &ChordDiagram, genus: usize, orientable: bool) -> bool {
    let Ok(closed) = build_atom(d).close_up() else {
        return false;
    };
    let inv = closed.invariants();
    inv.boundary_components == 1
        && inv.orientable == orientable
        && if orientable {
            inv.genus() == Some(genus as u64)
        } else {
            inv.crosscap_number() == Some(2 * genus as u64 + 1)
        }
}

/// Whether `d` is the saddle-level diagram of an optimal function on the
/// surface described by `(genus, orientable)`.
///
/// Oriented profile: `k = 4g + 1`, `2g` chords, closed-up genus `g`.
/// Non-oriented generator profile: `k = 4g + 3`, `2g + 1` chords, crosscap
/// number `2g + 1`.
pub fn is_optimal_diagram(
    d: &ChordDiagram,
    genus: usize,
    orientable: bool,
) -> Result<bool, ClassifyError> {
    if orientable && genus == 0 {
        return Err(ClassifyError::GenusOutOfRange(genus));
    }
    let (k, chords) = optimal_profile(genus, orientable);
    if d.k() != k || d.chord_count() != chords {
        return Err(ClassifyError::ProfileMismatch {
            expected_k: k,
            expected_chords: chords,
            k: d.k(),
            chords: d.chord_count(),
        });
    }
    let decision = optimal_by_invariants(d, genus, orientable);
    if orientable {
        let inconsistent = |detail: String| ClassifyError::InconsistentCriteria {
            diagram: d.encode(),
            detail,
        };
        let ways = find_full_ways(d).len();
        let syntactic = chord_parity_ok(d) && d.free_points().len() == 2 && ways == 2;
        if syntactic != decision {
            return Err(inconsistent(format!(
                "surface test says {decision}, chord conditions say {syntactic} ({ways} full ways)"
            )));
        }
        if decision && (forbidden_pair_present(d) || !free_points_odd_ok(d)) {
            return Err(inconsistent(
                "accepted diagram has a forbidden pair or an even free point".into(),
            ));
        }
    }
    Ok(decision)
}

/// Every optimal diagram (base colour positive) for the profile, sorted by
/// encoding. Candidates are filtered on the rayon pool, one task per
/// partition.
pub fn optimal_diagrams(
    genus: usize,
    orientable: bool,
) -> Result<Vec<ChordDiagram>, ClassifyError> {
    if orientable && genus == 0 {
        return Err(ClassifyError::GenusOutOfRange(genus));
    }
    let (k, _) = optimal_profile(genus, orientable);
    let chunks: Vec<Vec<ChordDiagram>> = partitions(k)
        .into_par_iter()
        .map(|first| {
            optimal_candidates_in(genus, orientable, first)
                .filter_map(|d| match is_optimal_diagram(&d, genus, orientable) {
                    Ok(true) => Some(Ok(d)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let mut all: Vec<(String, ChordDiagram)> = chunks
        .into_iter()
        .flatten()
        .map(|d| (d.encode(), d))
        .collect();
    all.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(all.into_iter().map(|(_, d)| d).collect())
}

/// Canonical representatives of the classes of optimal functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCatalog {
    pub genus: usize,
    pub orientable: bool,
    pub mode: Mode,
    pub group_used: SymmetryGroup,
    /// One representative per class: the member with the smallest encoding.
    pub classes: Vec<ChordDiagram>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogSummary {
    pub genus: usize,
    pub mode: Mode,
    pub count: usize,
    pub group_used: SymmetryGroup,
}

impl ClassCatalog {
    pub fn summary(&self) -> CatalogSummary {
        CatalogSummary {
            genus: self.genus,
            mode: self.mode,
            count: self.count,
            group_used: self.group_used,
        }
    }

    /// Representative equivalent to `d`, if any.
    pub fn representative_of(&self, d: &ChordDiagram) -> Option<&ChordDiagram> {
        let form = canonical_form_in(d, self.mode, self.group_used);
        self.classes
            .iter()
            .find(|r| canonical_form_in(r, self.mode, self.group_used) == form)
    }
}

/// Builds a catalog from an already computed list of optimal diagrams.
pub fn catalog_from(
    genus: usize,
    orientable: bool,
    mode: Mode,
    group: SymmetryGroup,
    optimal: &[ChordDiagram],
) -> ClassCatalog {
    let mut members: Vec<ChordDiagram> = match mode {
        Mode::Atom => optimal.to_vec(),
        Mode::FAtom => optimal
            .iter()
            .flat_map(|d| [d.with_base(Sign::Pos), d.with_base(Sign::Neg)])
            .collect(),
    };
    members.sort_unstable_by_key(|d| d.encode());
    let mut classes: BTreeMap<CanonicalForm, ChordDiagram> = BTreeMap::new();
    for d in members {
        classes
            .entry(canonical_form_in(&d, mode, group))
            .or_insert(d);
    }
    let classes: Vec<ChordDiagram> = classes.into_values().collect();
    ClassCatalog {
        genus,
        orientable,
        mode,
        group_used: group,
        count: classes.len(),
        classes,
    }
}

pub fn classify(genus: usize, orientable: bool, mode: Mode) -> Result<ClassCatalog, ClassifyError> {
    classify_with(genus, orientable, mode, DEFAULT_GROUP)
}

pub fn classify_with(
    genus: usize,
    orientable: bool,
    mode: Mode,
    group: SymmetryGroup,
) -> Result<ClassCatalog, ClassifyError> {
    if !orientable {
        return Err(ClassifyError::Unsupported(
            "classification of non-orientable surfaces".into(),
        ));
    }
    if genus == 0 {
        return Err(ClassifyError::GenusOutOfRange(genus));
    }
    let optimal = optimal_diagrams(genus, orientable)?;
    Ok(catalog_from(genus, orientable, mode, group, &optimal))
}

/// Published class counts for oriented surfaces with one boundary circle:
/// `(genus, atoms, f-atoms)`.
pub const REFERENCE_COUNTS: [(usize, usize, usize); 3] = [(1, 1, 1), (2, 5, 8), (3, 94, 182)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCalibration {
    pub group: SymmetryGroup,
    /// `(genus, atoms, f-atoms)` computed with this group.
    pub counts: Vec<(usize, usize, usize)>,
    pub matched: usize,
    pub total: usize,
}

impl GroupCalibration {
    pub fn matches_all(&self) -> bool {
        self.matched == self.total
    }
}

/// Class counts of every group variant against [`REFERENCE_COUNTS`] up to
/// `max_genus`. Optimal diagrams are enumerated once per genus.
pub fn group_calibration(max_genus: usize) -> Result<Vec<GroupCalibration>, ClassifyError> {
    let references: Vec<_> = REFERENCE_COUNTS
        .iter()
        .filter(|r| r.0 <= max_genus)
        .collect();
    let optimal: Vec<Vec<ChordDiagram>> = references
        .iter()
        .map(|&&(g, _, _)| optimal_diagrams(g, true))
        .collect::<Result<_, _>>()?;
    Ok(SymmetryGroup::ALL
        .iter()
        .map(|&group| {
            let mut matched = 0;
            let counts = references
                .iter()
                .zip(&optimal)
                .map(|(&&(g, atoms, fatoms), diagrams)| {
                    let a = catalog_from(g, true, Mode::Atom, group, diagrams).count;
                    let f = catalog_from(g, true, Mode::FAtom, group, diagrams).count;
                    matched += usize::from(a == atoms) + usize::from(f == fatoms);
                    (g, a, f)
                })
                .collect();
            GroupCalibration {
                group,
                counts,
                matched,
                total: 2 * references.len(),
            }
        })
        .collect())
}

/// The group reproducing every reference count, if exactly one does.
pub fn select_group(calibration: &[GroupCalibration]) -> Option<SymmetryGroup> {
    let mut full = calibration.iter().filter(|c| c.matches_all());
    match (full.next(), full.next()) {
        (Some(c), None) => Some(c.group),
        _ => None,
    }
}

/// Gluing substitution of the standard optimal function.
///
/// Oriented, `k = 4g + 1`: `(2i-1, 4g-2i+2)(2i, 4g-2i+3)` for `i = 1..g`.
/// Non-oriented, `k = 4g + 3`: `(2i-1, 4g-2i+4)(2i, 4g-2i+5)` for `i = 1..g`,
/// followed by the twisted pair `(2g+1, 2g+3)`.
pub fn standard_substitution(
    genus: usize,
    orientable: bool,
) -> Result<GluingSubstitution, ClassifyError> {
    if orientable && genus == 0 {
        return Err(ClassifyError::GenusOutOfRange(genus));
    }
    let (k, _) = optimal_profile(genus, orientable);
    let g = genus;
    let mut pairs = Vec::new();
    for i in 1..=g {
        if orientable {
            pairs.push((2 * i - 1, 4 * g - 2 * i + 2));
            pairs.push((2 * i, 4 * g - 2 * i + 3));
        } else {
            pairs.push((2 * i - 1, 4 * g - 2 * i + 4));
            pairs.push((2 * i, 4 * g - 2 * i + 5));
        }
    }
    if !orientable {
        pairs.push((2 * g + 1, 2 * g + 3));
    }
    GluingSubstitution::new(k, pairs).map_err(|e| ClassifyError::Unsupported(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceDescriptor {
    pub connected: bool,
    pub boundary_components: usize,
    pub is_disk: bool,
}

/// Fewest critical points of a function whose critical points all sit on the
/// boundary: two on the disk, three on any other connected surface with one
/// boundary circle.
pub fn minimal_critical_count(surface: SurfaceDescriptor) -> Result<u32, ClassifyError> {
    if !surface.connected {
        return Err(ClassifyError::Unsupported("disconnected surface".into()));
    }
    if surface.boundary_components != 1 {
        return Err(ClassifyError::Unsupported(format!(
            "{} boundary components",
            surface.boundary_components
        )));
    }
    Ok(if surface.is_disk { 2 } else { 3 })
}

//! Chord diagrams of a boundary saddle level.
//!
//! A diagram with parameter `k` is a circle carrying `k + 1` matched points
//! `Q_0, ..., Q_k` in boundary order. `Q_0` marks the critical point itself and
//! is never an endpoint of a chord. Chords pair up some of the points
//! `1..=k`, and the `k + 1` arcs are two-coloured: arc `i` runs from `Q_i` to
//! `Q_{i+1 mod k+1}` and the colours alternate everywhere except possibly at
//! `Q_0`. Because the alternation is forced, the whole colouring is stored as
//! the single colour of arc 0.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported `k`; the covered point set is kept in a `u64`.
pub const MAX_K: usize = 62;

/// Sign of a sector (and of the arc carrying it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// `self` multiplied by `(-1)^n`.
    pub fn alternate(self, n: usize) -> Sign {
        if n.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Pos => "pos",
            Sign::Neg => "neg",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self.flip()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sign {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pos" | "+" => Ok(Sign::Pos),
            "neg" | "-" => Ok(Sign::Neg),
            other => Err(DiagramError::Syntax {
                pos: 0,
                msg: format!("expected `pos` or `neg`, found `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("k = {0} is outside the supported range 1..={MAX_K}")]
    KOutOfRange(usize),
    #[error("point {0} is used by more than one chord end")]
    DuplicatePoint(usize),
    #[error("chord endpoint {point} is outside 1..={k}")]
    PointOutOfRange { point: usize, k: usize },
}

fn normalize_pairs(
    k: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Result<(Vec<(usize, usize)>, u64), DiagramError> {
    if k == 0 || k > MAX_K {
        return Err(DiagramError::KOutOfRange(k));
    }
    let mut covered = 0u64;
    let mut out = Vec::new();
    for (a, b) in pairs {
        for p in [a, b] {
            if p == 0 || p > k {
                return Err(DiagramError::PointOutOfRange { point: p, k });
            }
        }
        if a == b {
            return Err(DiagramError::DuplicatePoint(a));
        }
        for p in [a, b] {
            if covered & (1 << p) != 0 {
                return Err(DiagramError::DuplicatePoint(p));
            }
            covered |= 1 << p;
        }
        out.push((a.min(b), a.max(b)));
    }
    out.sort_unstable();
    Ok((out, covered))
}

/// Chord diagram with normalized chords (each pair ascending, list sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    k: usize,
    chords: Vec<(usize, usize)>,
    base: Sign,
    covered: u64,
}

impl ChordDiagram {
    pub fn new(
        k: usize,
        chords: impl IntoIterator<Item = (usize, usize)>,
        base: Sign,
    ) -> Result<Self, DiagramError> {
        let (chords, covered) = normalize_pairs(k, chords)?;
        Ok(ChordDiagram {
            k,
            chords,
            base,
            covered,
        })
    }

    /// Diagram without chords: every matched point is free.
    pub fn empty(k: usize, base: Sign) -> Result<Self, DiagramError> {
        Self::new(k, [], base)
    }

    pub fn from_substitution(sub: &GluingSubstitution, base: Sign) -> Self {
        ChordDiagram {
            k: sub.k,
            chords: sub.pairs.clone(),
            base,
            covered: sub.covered,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of matched points, `k + 1`.
    pub fn point_count(&self) -> usize {
        self.k + 1
    }

    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn base(&self) -> Sign {
        self.base
    }

    pub fn with_base(&self, base: Sign) -> Self {
        ChordDiagram {
            base,
            ..self.clone()
        }
    }

    pub fn with_colors_swapped(&self) -> Self {
        self.with_base(self.base.flip())
    }

    pub fn is_free(&self, point: usize) -> bool {
        point <= self.k && self.covered & (1 << point) == 0
    }

    /// `mates()[i]` is the other end of the chord at `Q_i`, if any.
    pub fn mates(&self) -> Vec<Option<usize>> {
        let mut mates = vec![None; self.k + 1];
        for &(a, b) in &self.chords {
            mates[a] = Some(b);
            mates[b] = Some(a);
        }
        mates
    }

    pub fn partner(&self, point: usize) -> Option<usize> {
        self.chords.iter().find_map(|&(a, b)| {
            if a == point {
                Some(b)
            } else if b == point {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Indices in `0..=k` not covered by a chord, ascending. Always contains 0.
    pub fn free_points(&self) -> Vec<usize> {
        (0..=self.k).filter(|&i| self.is_free(i)).collect()
    }

    /// Colour of arc `i` (from `Q_i` to `Q_{i+1 mod k+1}`).
    pub fn arc_sign(&self, arc: usize) -> Sign {
        debug_assert!(arc <= self.k);
        self.base.alternate(arc)
    }

    pub fn arc_coloring(&self) -> Vec<Sign> {
        (0..=self.k).map(|i| self.arc_sign(i)).collect()
    }

    /// True when the two arcs meeting at `Q_0` share a colour, which happens
    /// exactly for even `k`.
    pub fn has_coloring_defect(&self) -> bool {
        self.arc_sign(0) == self.arc_sign(self.k)
    }

    /// Mirror image through `Q_0`: point `i` goes to `k + 1 - i`.
    ///
    /// Arc `i` lands on arc `k - i`, so the new base colour is the old colour
    /// of arc `k`.
    pub fn reflected(&self) -> Self {
        let n = self.k + 1;
        let chords = self.chords.iter().map(|&(a, b)| (n - a, n - b));
        ChordDiagram::new(self.k, chords, self.arc_sign(self.k))
            .expect("reflection preserves validity")
    }

    pub fn gluing_substitution(&self) -> GluingSubstitution {
        GluingSubstitution {
            k: self.k,
            pairs: self.chords.clone(),
            covered: self.covered,
        }
    }

    /// Canonical single-line text encoding.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagram serializes")
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_encoding(f, self.k, &self.chords, self.base)
    }
}

/// Writes `k=..;chords=..;base=..` for an arbitrary pair list. Used for
/// diagrams and for raw orbit images during canonicalization.
pub(crate) fn write_encoding(
    out: &mut impl fmt::Write,
    k: usize,
    pairs: &[(usize, usize)],
    base: Sign,
) -> fmt::Result {
    write!(out, "k={k};chords=")?;
    for (idx, (a, b)) in pairs.iter().enumerate() {
        if idx > 0 {
            out.write_char(',')?;
        }
        write!(out, "{a}-{b}")?;
    }
    write!(out, ";base={base}")
}

impl FromStr for ChordDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_diagram(s)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn syntax(&self, msg: impl Into<String>) -> DiagramError {
        DiagramError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), DiagramError> {
        if self.text[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{lit}`")))
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn int(&mut self) -> Result<usize, DiagramError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| DiagramError::Syntax {
                pos: start,
                msg: "integer out of range".into(),
            })
    }
}

/// Parses `k=<int>;chords=<pair>(,<pair>)*;base=<pos|neg>`.
///
/// Chord endpoints are checked as soon as they are read, so a bad chord is
/// reported even when the rest of the input is truncated.
pub fn parse_diagram(text: &str) -> Result<ChordDiagram, DiagramError> {
    let mut cur = Cursor { text, pos: 0 };
    cur.expect("k=")?;
    let k = cur.int()?;
    if k == 0 || k > MAX_K {
        return Err(DiagramError::KOutOfRange(k));
    }
    cur.expect(";chords=")?;
    let mut pairs = Vec::new();
    if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        loop {
            let a = cur.int()?;
            cur.expect("-")?;
            let b = cur.int()?;
            pairs.push((a, b));
            normalize_pairs(k, pairs.iter().copied())?;
            if cur.peek() == Some(b',') {
                cur.pos += 1;
            } else {
                break;
            }
        }
    }
    cur.expect(";base=")?;
    let base = match &text[cur.pos..] {
        "pos" => Sign::Pos,
        "neg" => Sign::Neg,
        _ => return Err(cur.syntax("expected `pos` or `neg` at end of input")),
    };
    ChordDiagram::new(k, pairs, base)
}

/// Canonical text encoding; identical to `Display`.
pub fn format_diagram(d: &ChordDiagram) -> String {
    d.to_string()
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    k: usize,
    chords: Vec<[usize; 2]>,
    base: Sign,
}

impl Serialize for ChordDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DiagramJson {
            k: self.k,
            chords: self.chords.iter().map(|&(a, b)| [a, b]).collect(),
            base: self.base,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChordDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(deserializer)?;
        ChordDiagram::new(raw.k, raw.chords.into_iter().map(|[a, b]| (a, b)), raw.base)
            .map_err(serde::de::Error::custom)
    }
}

/// Involution on `{1..k}` whose cycles all have length two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluingSubstitution {
    k: usize,
    pairs: Vec<(usize, usize)>,
    covered: u64,
}

impl GluingSubstitution {
    pub fn new(
        k: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, DiagramError> {
        let (pairs, covered) = normalize_pairs(k, pairs)?;
        Ok(GluingSubstitution { k, pairs, covered })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Image of `i` under the substitution (fixed points map to themselves).
    pub fn apply(&self, i: usize) -> usize {
        self.pairs
            .iter()
            .find_map(|&(a, b)| match i {
                x if x == a => Some(b),
                x if x == b => Some(a),
                _ => None,
            })
            .unwrap_or(i)
    }

    /// One-line form on `{1..k}`: entry `i - 1` is the image of `i`.
    pub fn one_line(&self) -> Vec<usize> {
        (1..=self.k).map(|i| self.apply(i)).collect()
    }
}

impl fmt::Display for GluingSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("id");
        }
        for (a, b) in &self.pairs {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

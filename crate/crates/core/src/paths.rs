//! Finite quivers, directed paths, weight functions, and admissible
//! well-orders on the set of paths.
//!
//! Paths compose left to right: in `p*q` the terminus of `p` must equal the
//! origin of `q`. A vertex is the path of length zero at that vertex and acts
//! as a one-sided identity for composition.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a vertex inside its quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

/// Index of an arrow inside its quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver: named vertices and named arrows between them.
///
/// Vertex names are unique; arrow names are unique and disjoint from vertex
/// names. Loops and parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Build a quiver from vertex names and `(arrow, source, target)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Quiver>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator,
        A::Item: Into<(String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut built = Quiver {
            vertices,
            arrows: Vec::new(),
        };
        for triple in arrows {
            let (name, src, dst) = triple.into();
            if built.vertices.contains(&name) {
                return Err(Error::ArrowVertexClash(name));
            }
            if built.arrows.iter().any(|a| a.name == name) {
                return Err(Error::DuplicateArrow(name));
            }
            let source = built.vertex_id(&src)?;
            let target = built.vertex_id(&dst)?;
            built.arrows.push(Arrow {
                name,
                source,
                target,
            });
        }
        Ok(built)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.index()]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.index()].name
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .map(|i| VertexId(i as u32))
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .map(|i| ArrowId(i as u32))
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.arrow(a).source == v)
    }

    /// The length-zero path at `v`.
    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path {
            origin: v,
            arrows: Vec::new(),
        }
    }

    /// The length-one path consisting of a single arrow.
    pub fn arrow_path(&self, a: ArrowId) -> Path {
        Path {
            origin: self.arrow(a).source,
            arrows: vec![a],
        }
    }

    /// Parse a path from its canonical text: `*`-joined arrow names or
    /// `e_<vertex>` for a length-zero path.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e_") {
            return Ok(self.vertex_path(self.vertex_id(v)?));
        }
        let mut arrows = Vec::new();
        for name in text.split('*') {
            arrows.push(self.arrow_id(name.trim())?);
        }
        Path::from_arrows(self, arrows)
    }
}

/// A directed path: an origin vertex and a composable sequence of arrows.
///
/// The derived `Ord` is structural and only used for canonical storage;
/// admissible comparisons go through [`PathOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    origin: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    /// Build a path from a nonempty arrow sequence, checking composability.
    pub fn from_arrows(quiver: &Quiver, arrows: Vec<ArrowId>) -> Result<Path> {
        let first = *arrows.first().ok_or_else(|| {
            Error::Config("a path needs an origin; use Quiver::vertex_path for vertices".into())
        })?;
        let origin = quiver.arrow(first).source;
        for pair in arrows.windows(2) {
            let (x, y) = (quiver.arrow(pair[0]), quiver.arrow(pair[1]));
            if x.target != y.source {
                return Err(Error::NonComposable(x.name.clone(), y.name.clone()));
            }
        }
        Ok(Path { origin, arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn terminus(&self, quiver: &Quiver) -> VertexId {
        match self.arrows.last() {
            Some(&a) => quiver.arrow(a).target,
            None => self.origin,
        }
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// The vertex sitting after the first `i` arrows (0 ≤ i ≤ len).
    pub fn vertex_at(&self, quiver: &Quiver, i: usize) -> VertexId {
        if i == 0 {
            self.origin
        } else {
            quiver.arrow(self.arrows[i - 1]).target
        }
    }

    /// `p*q`, defined iff the terminus of `p` is the origin of `q`.
    /// An undefined composition is the zero product, not an error.
    pub fn compose(&self, quiver: &Quiver, other: &Path) -> Option<Path> {
        if self.terminus(quiver) != other.origin {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            origin: self.origin,
            arrows,
        })
    }

    /// The subpath spanning arrow positions `i..j` (a vertex when `i == j`).
    pub fn segment(&self, quiver: &Quiver, i: usize, j: usize) -> Path {
        debug_assert!(i <= j && j <= self.len());
        Path {
            origin: self.vertex_at(quiver, i),
            arrows: self.arrows[i..j].to_vec(),
        }
    }

    /// All factorizations `q = r*p*s` of `q = self` around `p`, ordered by
    /// the length of `r`. Empty iff `p` is not a subpath of `q`.
    pub fn subpath_occurrences(&self, quiver: &Quiver, p: &Path) -> Vec<(Path, Path)> {
        let mut out = Vec::new();
        if p.len() > self.len() {
            return out;
        }
        for start in 0..=(self.len() - p.len()) {
            let hit = if p.is_vertex() {
                self.vertex_at(quiver, start) == p.origin
            } else {
                self.arrows[start..start + p.len()] == p.arrows[..]
            };
            if hit {
                out.push((
                    self.segment(quiver, 0, start),
                    self.segment(quiver, start + p.len(), self.len()),
                ));
            }
        }
        out
    }

    pub fn has_subpath(&self, quiver: &Quiver, p: &Path) -> bool {
        !self.subpath_occurrences(quiver, p).is_empty()
    }

    /// First arrow position at which `p` occurs inside `self`, if any.
    pub fn find_subpath(&self, quiver: &Quiver, p: &Path) -> Option<usize> {
        if p.len() > self.len() {
            return None;
        }
        (0..=(self.len() - p.len())).find(|&start| {
            if p.is_vertex() {
                self.vertex_at(quiver, start) == p.origin
            } else {
                self.arrows[start..start + p.len()] == p.arrows[..]
            }
        })
    }

    /// Canonical text: `*`-joined arrow names, or `e_<name>` for a vertex.
    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            write!(f, "e_{}", self.quiver.vertex_name(self.path.origin))
        } else {
            let names: Vec<&str> = self
                .path
                .arrows
                .iter()
                .map(|&a| self.quiver.arrow_name(a))
                .collect();
            write!(f, "{}", names.join("*"))
        }
    }
}

/// All paths of length at most `max_len`, shortest first, in a stable order
/// (by origin vertex, then by repeated arrow extension).
pub fn enumerate_paths(quiver: &Quiver, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = quiver.vertex_ids().map(|v| quiver.vertex_path(v)).collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let end = p.terminus(quiver);
            for a in quiver.arrows_from(end) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path {
                    origin: p.origin,
                    arrows,
                });
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    all
}

/// Same as [`enumerate_paths`] but sorted descending under `ord`.
pub fn enumerate_paths_ordered(quiver: &Quiver, max_len: usize, ord: &PathOrder) -> Vec<Path> {
    let mut all = enumerate_paths(quiver, max_len);
    all.sort_by(|p, q| ord.cmp(p, q).reverse());
    all
}

/// The two built-in order families. They share one comparison: length first,
/// then arrow-by-arrow from the left by arrow precedence; the names are kept
/// apart only so input files read back verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    LengthLex,
    LengthLeftLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::LengthLex => write!(f, "length-lex"),
            OrderKind::LengthLeftLex => write!(f, "length-left-lex"),
        }
    }
}

/// An admissible well-order on the paths of one quiver.
///
/// Both kinds compare by length first, so every order built here refines
/// length; ties between equal-length positive paths go arrow by arrow from
/// the left, and vertices compare by vertex precedence. Precedence lists are
/// descending: the first name is the largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathOrder {
    kind: OrderKind,
    /// arrow_rank[a] = position in the descending precedence list; lower rank
    /// means a greater arrow.
    arrow_rank: Vec<u32>,
    vertex_rank: Vec<u32>,
}

impl PathOrder {
    pub fn new(
        quiver: &Quiver,
        kind: OrderKind,
        arrows_desc: &[&str],
        vertices_desc: &[&str],
    ) -> Result<PathOrder> {
        let arrow_rank = rank_table(arrows_desc, quiver.arrow_count(), "arrow", |name| {
            quiver.arrow_id(name).map(|a| a.index())
        })?;
        let vertex_rank = rank_table(vertices_desc, quiver.vertex_count(), "vertex", |name| {
            quiver.vertex_id(name).map(|v| v.index())
        })?;
        Ok(PathOrder {
            kind,
            arrow_rank,
            vertex_rank,
        })
    }

    /// Declaration-order precedence: earlier-declared arrows and vertices are
    /// larger.
    pub fn declaration_order(quiver: &Quiver, kind: OrderKind) -> PathOrder {
        PathOrder {
            kind,
            arrow_rank: (0..quiver.arrow_count() as u32).collect(),
            vertex_rank: (0..quiver.vertex_count() as u32).collect(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// True for every order constructible here; kept as an explicit guard for
    /// the tail-space finiteness argument.
    pub fn refines_length(&self) -> bool {
        true
    }

    pub fn cmp(&self, p: &Path, q: &Path) -> Ordering {
        match p.len().cmp(&q.len()) {
            Ordering::Equal => {}
            other => return other,
        }
        if p.is_vertex() {
            // lower rank = greater path, so compare flipped
            return self.vertex_rank[q.origin.index()].cmp(&self.vertex_rank[p.origin.index()]);
        }
        for (&a, &b) in p.arrows().iter().zip(q.arrows()) {
            match self.arrow_rank[b.index()].cmp(&self.arrow_rank[a.index()]) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }

    pub fn max<'a>(&self, p: &'a Path, q: &'a Path) -> &'a Path {
        if self.cmp(p, q) == Ordering::Less {
            q
        } else {
            p
        }
    }

    /// Descending precedence lists, for round-tripping configuration files.
    pub fn arrow_precedence<'q>(&self, quiver: &'q Quiver) -> Vec<&'q str> {
        let mut ids: Vec<ArrowId> = quiver.arrow_ids().collect();
        ids.sort_by_key(|a| self.arrow_rank[a.index()]);
        ids.into_iter().map(|a| quiver.arrow_name(a)).collect()
    }

    pub fn vertex_precedence<'q>(&self, quiver: &'q Quiver) -> Vec<&'q str> {
        let mut ids: Vec<VertexId> = quiver.vertex_ids().collect();
        ids.sort_by_key(|v| self.vertex_rank[v.index()]);
        ids.into_iter().map(|v| quiver.vertex_name(v)).collect()
    }
}

fn rank_table(
    names_desc: &[&str],
    expected: usize,
    kind: &'static str,
    resolve: impl Fn(&str) -> Result<usize>,
) -> Result<Vec<u32>> {
    let mut rank = vec![u32::MAX; expected];
    for (r, name) in names_desc.iter().enumerate() {
        let idx = resolve(name)?;
        if rank[idx] != u32::MAX {
            return Err(Error::IncompletePrecedence {
                kind,
                name: name.to_string(),
            });
        }
        rank[idx] = r as u32;
    }
    if names_desc.len() != expected {
        let missing = rank.iter().position(|&r| r == u32::MAX).unwrap_or(0);
        return Err(Error::IncompletePrecedence {
            kind,
            name: format!("#{missing}"),
        });
    }
    Ok(rank)
}

/// The value group of a weight function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightGroup {
    /// Additive integers.
    Integers,
    /// Integers modulo `m`.
    Cyclic(u64),
}

/// An arrow-indexed grading into ℤ or ℤ/m. Vertices weigh the identity and a
/// path weighs the sum of its arrow weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    group: WeightGroup,
    by_arrow: Vec<Option<i64>>,
}

impl WeightFunction {
    pub fn new(quiver: &Quiver, group: WeightGroup) -> WeightFunction {
        WeightFunction {
            group,
            by_arrow: vec![None; quiver.arrow_count()],
        }
    }

    /// The length grading: every arrow weighs 1 in ℤ.
    pub fn length_grading(quiver: &Quiver) -> WeightFunction {
        WeightFunction {
            group: WeightGroup::Integers,
            by_arrow: vec![Some(1); quiver.arrow_count()],
        }
    }

    pub fn group(&self) -> WeightGroup {
        self.group
    }

    pub fn assign(&mut self, arrow: ArrowId, w: i64) {
        self.by_arrow[arrow.index()] = Some(self.normalize(w));
    }

    fn normalize(&self, w: i64) -> i64 {
        match self.group {
            WeightGroup::Integers => w,
            WeightGroup::Cyclic(m) => w.rem_euclid(m as i64),
        }
    }

    pub fn arrow_weight(&self, quiver: &Quiver, a: ArrowId) -> Result<i64> {
        self.by_arrow[a.index()]
            .ok_or_else(|| Error::UnassignedWeight(quiver.arrow_name(a).to_string()))
    }

    pub fn assignment(&self, a: ArrowId) -> Option<i64> {
        self.by_arrow[a.index()]
    }

    /// The weight of a path: the ordered sum of its arrow weights; the
    /// identity (0) for vertices.
    pub fn weight(&self, quiver: &Quiver, p: &Path) -> Result<i64> {
        let mut acc: i64 = 0;
        for &a in p.arrows() {
            acc += self.arrow_weight(quiver, a)?;
            acc = self.normalize(acc);
        }
        Ok(acc)
    }

    /// True when every arrow weight is assigned and at least 1 (only
    /// meaningful over ℤ); such gradings have finitely many paths per degree.
    pub fn is_positive(&self) -> bool {
        matches!(self.group, WeightGroup::Integers)
            && self
                .by_arrow
                .iter()
                .all(|w| matches!(w, Some(x) if *x >= 1))
    }
}

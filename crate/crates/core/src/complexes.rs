//! Finite simplicial complexes, simplicial maps, vertex covers and towers of
//! covers.
//!
//! Vertices are opaque strings. A simplex is stored as its sorted vertex
//! tuple; an input ordering only contributes a permutation sign, see
//! [`Simplex::oriented`]. A "neighborhood" of a set of vertices is the full
//! subcomplex spanned by some vertex subset containing it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub type VertexSet = BTreeSet<String>;

/// An unoriented simplex: a nonempty strictly increasing vertex tuple.
///
/// Simplices compare first by dimension, then lexicographically, which is the
/// canonical order used for every basis in this crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<String>);

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Simplex {
    /// Sort the vertices; `None` when a vertex repeats or the list is empty.
    pub fn new<S: AsRef<str>>(vertices: &[S]) -> Option<Simplex> {
        Self::oriented(vertices).map(|(s, _)| s)
    }

    /// The sorted simplex together with the sign of the sorting permutation.
    /// `None` for an empty list or a repeated vertex.
    pub fn oriented<S: AsRef<str>>(vertices: &[S]) -> Option<(Simplex, i8)> {
        if vertices.is_empty() {
            return None;
        }
        let mut v: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut sign = 1i8;
        // insertion sort counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex(v), sign))
    }

    pub fn vertex(name: &str) -> Simplex {
        Simplex(vec![name.to_string()])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[String] {
        &self.0
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().cloned().collect()
    }

    /// The `i`-th codimension-one face (vertex `i` removed). Panics on a vertex.
    pub fn face(&self, i: usize) -> Simplex {
        assert!(self.0.len() > 1, "a vertex has no proper faces");
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// Codimension-one faces in removal order, so face `i` carries sign `(-1)^i`.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len()).map(|i| self.face(i)).collect()
    }

    /// All nonempty faces, the simplex itself included, in canonical order.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u64..(1u64 << n) {
            let v: Vec<String> =
                (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i].clone()).collect();
            out.push(Simplex(v));
        }
        out.sort();
        out
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    pub fn within(&self, set: &VertexSet) -> bool {
        self.0.iter().all(|v| set.contains(v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(v)?;
        }
        f.write_str("]")
    }
}

/// A finite abstract simplicial complex, closed under faces.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    by_dim: Vec<BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    /// Face closure of `simplices` over the declared `vertices`. Every declared
    /// vertex becomes a 0-simplex; simplices may only use declared vertices.
    pub fn new<V, S>(vertices: V, simplices: &[Vec<S>]) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: AsRef<str>,
        S: AsRef<str>,
    {
        let vertex_set: VertexSet = vertices.into_iter().map(|v| v.as_ref().to_string()).collect();
        let mut k = SimplicialComplex {
            vertices: vertex_set.iter().cloned().collect(),
            by_dim: Vec::new(),
        };
        for v in &k.vertices.clone() {
            k.insert_closed(Simplex::vertex(v));
        }
        for raw in simplices {
            if let Some(bad) = raw.iter().find(|v| !vertex_set.contains(v.as_ref())) {
                return Err(Error::UnknownVertex(bad.as_ref().to_string()));
            }
            let s = Simplex::new(raw).ok_or_else(|| {
                Error::InvalidChain(format!("degenerate or empty simplex of length {}", raw.len()))
            })?;
            k.insert_closed(s);
        }
        Ok(k)
    }

    /// Face closure of `simplices`, the vertex set being whatever they use.
    pub fn from_simplices<S: AsRef<str>>(simplices: &[Vec<S>]) -> Result<Self> {
        let vertices: VertexSet =
            simplices.iter().flatten().map(|v| v.as_ref().to_string()).collect();
        Self::new(vertices, simplices)
    }

    /// The full simplex on the given vertices.
    pub fn full_simplex<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let all: Vec<&str> = vertices.iter().map(AsRef::as_ref).collect();
        Self::new(all.iter().copied(), core::slice::from_ref(&all))
    }

    fn insert_closed(&mut self, s: Simplex) {
        let d = s.dim();
        if self.by_dim.len() <= d {
            self.by_dim.resize_with(d + 1, BTreeSet::new);
        }
        if self.by_dim[d].contains(&s) {
            return;
        }
        for f in s.all_faces() {
            let fd = f.dim();
            self.by_dim[fd].insert(f);
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().cloned().collect()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|s| !s.is_empty())
    }

    pub fn simplices(&self, k: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.get(k).into_iter().flatten()
    }

    /// Canonically ordered basis of the `k`-chains.
    pub fn basis(&self, k: usize) -> Vec<Simplex> {
        self.simplices(k).cloned().collect()
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_dim.get(k).map_or(0, BTreeSet::len)
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(BTreeSet::len).sum()
    }

    /// Every simplex, by dimension and then lexicographically.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.iter().flatten()
    }

    /// Maximal simplices in canonical order.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (d, layer) in self.by_dim.iter().enumerate() {
            for s in layer {
                let covered = self
                    .by_dim
                    .get(d + 1)
                    .is_some_and(|up| up.iter().any(|t| s.is_face_of(t)));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.by_dim.get(s.dim()).is_some_and(|l| l.contains(s))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.vertices.iter().all(|v| other.has_vertex(v))
            && self.all_simplices().all(|s| other.contains(s))
    }

    /// All simplices whose vertices lie in `subset`.
    pub fn full_subcomplex(&self, subset: &VertexSet) -> SimplicialComplex {
        let vertices: Vec<String> =
            self.vertices.iter().filter(|v| subset.contains(*v)).cloned().collect();
        let by_dim = self
            .by_dim
            .iter()
            .map(|layer| layer.iter().filter(|s| s.within(subset)).cloned().collect())
            .collect();
        let mut k = SimplicialComplex { vertices, by_dim };
        k.trim();
        k
    }

    /// Simplices of dimension at most `n`.
    pub fn skeleton(&self, n: usize) -> SimplicialComplex {
        let mut k = self.clone();
        k.by_dim.truncate(n + 1);
        k.trim();
        k
    }

    /// The subcomplex generated by `simplices` (which must belong to `self`).
    pub fn subcomplex(&self, simplices: &[Simplex]) -> Result<SimplicialComplex> {
        if let Some(s) = simplices.iter().find(|s| !self.contains(s)) {
            return Err(Error::UnknownSimplex(s.to_string()));
        }
        let raw: Vec<Vec<String>> = simplices.iter().map(|s| s.0.clone()).collect();
        SimplicialComplex::from_simplices(&raw)
    }

    /// Union of two complexes.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut k = self.clone();
        let mut vs = k.vertex_set();
        vs.extend(other.vertices.iter().cloned());
        k.vertices = vs.into_iter().collect();
        for s in other.all_simplices() {
            k.insert_closed(s.clone());
        }
        k
    }

    fn trim(&mut self) {
        while self.by_dim.last().is_some_and(BTreeSet::is_empty) {
            self.by_dim.pop();
        }
    }

    /// Vertices sharing a simplex with `v`, `v` included.
    pub fn closed_star(&self, v: &str) -> VertexSet {
        let mut out = VertexSet::new();
        out.insert(v.to_string());
        for s in self.simplices(1) {
            if s.0[0] == v {
                out.insert(s.0[1].clone());
            } else if s.0[1] == v {
                out.insert(s.0[0].clone());
            }
        }
        out
    }

    /// Edge-path distances from `sources`; unreachable vertices are absent.
    pub fn edge_distances(&self, sources: &VertexSet) -> BTreeMap<String, usize> {
        let mut dist: BTreeMap<String, usize> = BTreeMap::new();
        let mut frontier: Vec<String> = Vec::new();
        for s in sources {
            if self.has_vertex(s) {
                dist.insert(s.clone(), 0);
                frontier.push(s.clone());
            }
        }
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for v in &frontier {
                for w in self.closed_star(v) {
                    if !dist.contains_key(&w) {
                        dist.insert(w.clone(), d);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }
}

/// A simplicial map, given by a total vertex assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    assignment: BTreeMap<String, String>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        assignment: BTreeMap<String, String>,
    ) -> Result<Self> {
        for v in source.vertices() {
            match assignment.get(v) {
                None => return Err(Error::InvalidMap(format!("vertex {v} has no image"))),
                Some(w) if !target.has_vertex(w) => return Err(Error::UnknownVertex(w.clone())),
                Some(_) => {}
            }
        }
        if let Some(extra) = assignment.keys().find(|v| !source.has_vertex(v)) {
            return Err(Error::UnknownVertex(extra.clone()));
        }
        let f = SimplicialMap { source, target, assignment };
        for s in f.source.all_simplices() {
            let img = f.image(s);
            if !f.target.contains(&img) {
                return Err(Error::InvalidMap(format!("image of {s} is {img}, not a simplex")));
            }
        }
        Ok(f)
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        let assignment = k.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
        SimplicialMap { source: k.clone(), target: k.clone(), assignment }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn assignment(&self) -> &BTreeMap<String, String> {
        &self.assignment
    }

    pub fn apply_vertex(&self, v: &str) -> &str {
        &self.assignment[v]
    }

    /// Image simplex, repeated vertices merged.
    pub fn image(&self, s: &Simplex) -> Simplex {
        let set: VertexSet = s.0.iter().map(|v| self.assignment[v].clone()).collect();
        Simplex(set.into_iter().collect())
    }

    pub fn image_vertices(&self, set: &VertexSet) -> VertexSet {
        set.iter().filter_map(|v| self.assignment.get(v).cloned()).collect()
    }

    /// Whether every target simplex is the image of a source simplex.
    pub fn is_surjective(&self) -> bool {
        let images: BTreeSet<Simplex> = self.source.all_simplices().map(|s| self.image(s)).collect();
        self.target.all_simplices().all(|s| images.contains(s))
    }

    pub fn preimage_vertices(&self, set: &VertexSet) -> VertexSet {
        self.assignment
            .iter()
            .filter(|(_, w)| set.contains(*w))
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Sorted fiber over a target vertex.
    pub fn fiber(&self, w: &str) -> Vec<String> {
        self.assignment.iter().filter(|(_, x)| x.as_str() == w).map(|(v, _)| v.clone()).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target != other.source {
            return Err(Error::InvalidMap("composition of maps with mismatched complexes".into()));
        }
        let assignment = self
            .assignment
            .iter()
            .map(|(v, w)| (v.clone(), other.assignment[w].clone()))
            .collect();
        Ok(SimplicialMap { source: self.source.clone(), target: other.target.clone(), assignment })
    }
}

/// A named member of a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverMember {
    pub name: String,
    pub vertices: VertexSet,
}

/// A finite cover of the vertex set of a complex by named vertex subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    vertices: VertexSet,
    members: Vec<CoverMember>,
}

impl Cover {
    /// Members must be nonempty, uniquely named, use known vertices, and
    /// jointly cover every vertex of `complex`.
    pub fn new(complex: &SimplicialComplex, members: Vec<CoverMember>) -> Result<Self> {
        let vertices = complex.vertex_set();
        let mut names = BTreeSet::new();
        let mut union = VertexSet::new();
        for m in &members {
            if !names.insert(m.name.as_str()) {
                return Err(Error::InvalidCover(format!("duplicate member name {}", m.name)));
            }
            if m.vertices.is_empty() {
                return Err(Error::InvalidCover(format!("member {} is empty", m.name)));
            }
            if let Some(v) = m.vertices.iter().find(|v| !vertices.contains(*v)) {
                return Err(Error::UnknownVertex(v.clone()));
            }
            union.extend(m.vertices.iter().cloned());
        }
        if let Some(v) = vertices.iter().find(|v| !union.contains(*v)) {
            return Err(Error::InvalidCover(format!("vertex {v} lies in no member")));
        }
        Ok(Cover { vertices, members })
    }

    /// Build from `(name, vertices)` pairs.
    pub fn from_sets<N: AsRef<str>, S: AsRef<str>>(
        complex: &SimplicialComplex,
        sets: &[(N, Vec<S>)],
    ) -> Result<Self> {
        let members = sets
            .iter()
            .map(|(n, vs)| CoverMember {
                name: n.as_ref().to_string(),
                vertices: vs.iter().map(|v| v.as_ref().to_string()).collect(),
            })
            .collect();
        Cover::new(complex, members)
    }

    /// The one-member cover `{whole}`.
    pub fn whole(complex: &SimplicialComplex, name: &str) -> Result<Self> {
        Cover::new(
            complex,
            vec![CoverMember { name: name.to_string(), vertices: complex.vertex_set() }],
        )
    }

    pub fn members(&self) -> &[CoverMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.members.iter().position(|m| m.name == name)
    }

    pub fn member(&self, name: &str) -> Option<&CoverMember> {
        self.members.iter().find(|m| m.name == name)
    }

    /// First member (in listed order) containing `set`.
    pub fn first_containing(&self, set: &VertexSet) -> Option<usize> {
        self.members.iter().position(|m| set.is_subset(&m.vertices))
    }

    /// Union of all members meeting `set`. Errors if `set` uses unknown vertices.
    pub fn star(&self, set: &VertexSet) -> Result<VertexSet> {
        if let Some(v) = set.iter().find(|v| !self.vertices.contains(*v)) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        let mut out = VertexSet::new();
        for m in &self.members {
            if !m.vertices.is_disjoint(set) {
                out.extend(m.vertices.iter().cloned());
            }
        }
        Ok(out)
    }

    fn star_of(&self, i: usize) -> VertexSet {
        self.star(&self.members[i].vertices).expect("member of this cover")
    }
}

/// Outcome of [`check_star_refinement`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarRefinement {
    /// For each fine member, the index of a coarse member containing its star.
    Refines(Vec<usize>),
    /// Index of a fine member whose star lies in no coarse member.
    Counterexample(usize),
}

impl StarRefinement {
    pub fn holds(&self) -> bool {
        matches!(self, StarRefinement::Refines(_))
    }
}

/// Whether every `St(F, fine)` lies in some member of `coarse`.
pub fn check_star_refinement(fine: &Cover, coarse: &Cover) -> Result<StarRefinement> {
    if fine.vertices != coarse.vertices {
        return Err(Error::InvalidCover("covers of different complexes".into()));
    }
    let mut witness = Vec::with_capacity(fine.len());
    for i in 0..fine.len() {
        match coarse.first_containing(&fine.star_of(i)) {
            Some(j) => witness.push(j),
            None => return Ok(StarRefinement::Counterexample(i)),
        }
    }
    Ok(StarRefinement::Refines(witness))
}

/// The `dim_cap`-skeleton of the nerve. Nerve vertices are the member names.
pub fn nerve(cover: &Cover, dim_cap: usize) -> SimplicialComplex {
    let names: Vec<String> = cover.members.iter().map(|m| m.name.clone()).collect();
    let mut k = SimplicialComplex::new(names.iter(), &[] as &[Vec<String>]).expect("names are known");
    // depth-first over increasing index tuples with nonempty intersection
    fn grow(
        cover: &Cover,
        start: usize,
        chosen: &mut Vec<usize>,
        common: &VertexSet,
        cap: usize,
        k: &mut SimplicialComplex,
    ) {
        for j in start..cover.members.len() {
            let inter: VertexSet =
                common.intersection(&cover.members[j].vertices).cloned().collect();
            if inter.is_empty() {
                continue;
            }
            chosen.push(j);
            let verts: Vec<&str> = chosen.iter().map(|&i| cover.members[i].name.as_str()).collect();
            k.insert_closed(Simplex::new(&verts).expect("distinct names"));
            if chosen.len() <= cap {
                grow(cover, j + 1, chosen, &inter, cap, k);
            }
            chosen.pop();
        }
    }
    for i in 0..cover.members.len() {
        let mut chosen = vec![i];
        grow(cover, i + 1, &mut chosen, &cover.members[i].vertices, dim_cap, &mut k);
    }
    k
}

/// Member-wise preimages under `f`, names inherited.
pub fn preimage_cover(f: &SimplicialMap, cover: &Cover) -> Result<Cover> {
    if cover.vertices != f.target.vertex_set() {
        return Err(Error::InvalidCover("cover is not on the target of the map".into()));
    }
    let mut members = Vec::with_capacity(cover.len());
    for m in &cover.members {
        let pre = f.preimage_vertices(&m.vertices);
        if pre.is_empty() {
            return Err(Error::InvalidCover(format!(
                "preimage of member {} is empty; the map is not surjective onto it",
                m.name
            )));
        }
        members.push(CoverMember { name: m.name.clone(), vertices: pre });
    }
    Cover::new(&f.source, members)
}

/// Full subcomplex on a vertex subset (free-function form).
pub fn full_subcomplex(complex: &SimplicialComplex, subset: &VertexSet) -> SimplicialComplex {
    complex.full_subcomplex(subset)
}

/// One member per vertex `v`, named `v`: all vertices sharing a simplex with it.
pub fn open_star_cover(complex: &SimplicialComplex) -> Cover {
    let members = complex
        .vertices()
        .iter()
        .map(|v| CoverMember { name: v.clone(), vertices: complex.closed_star(v) })
        .collect();
    Cover::new(complex, members).expect("closed stars cover every vertex")
}

/// An obligation of a tower at level `k`: the preimage of `inner` must map
/// trivially in `H_k` into the preimage of the level-`k+1` member `outer`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPair {
    pub name: String,
    pub inner: VertexSet,
    pub outer: usize,
}

/// A structural defect of a tower. Homological failures are reported
/// elsewhere; these concern only the recorded containments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerDefect {
    /// `St(member, level k)` is not contained in the inner set of its witness pair.
    StarNotInWitness { level: usize, member: String, pair: String },
    /// A pair's inner set is not contained in its outer member.
    InnerNotInOuter { level: usize, pair: String },
}

impl fmt::Display for TowerDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerDefect::StarNotInWitness { level, member, pair } => write!(
                f,
                "level {level}: star of member {member} is not inside pair {pair}"
            ),
            TowerDefect::InnerNotInOuter { level, pair } => {
                write!(f, "level {level}: pair {pair} is not nested in its outer member")
            }
        }
    }
}

/// Nested covers `T_0, ..., T_{n+1}` of one complex with their bookkeeping.
///
/// For every level `k <= n` there is a list of pairs `(V, U)` with `U` a member
/// of `T_{k+1}`, and every member `W` of `T_k` names a pair whose `V` contains
/// `St(W, T_k)`. So `T_k` star-refines the family of inner sets, which refines
/// `T_{k+1}`; the pairs carry the `H_k` obligations checked against a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationTower {
    levels: Vec<Cover>,
    pairs: Vec<Vec<TowerPair>>,
    witnesses: Vec<Vec<usize>>,
}

impl FiltrationTower {
    /// Shape checks only: index ranges, totality, one complex throughout.
    /// Containment conditions are reported by [`FiltrationTower::defects`].
    pub fn new(
        levels: Vec<Cover>,
        pairs: Vec<Vec<TowerPair>>,
        witnesses: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::InvalidTower("a tower needs at least two levels".into()));
        }
        if pairs.len() != levels.len() - 1 || witnesses.len() != levels.len() - 1 {
            return Err(Error::InvalidTower(format!(
                "{} levels need {} pair lists and witness lists",
                levels.len(),
                levels.len() - 1
            )));
        }
        let vertices = &levels[0].vertices;
        if levels.iter().any(|c| &c.vertices != vertices) {
            return Err(Error::InvalidTower("levels cover different vertex sets".into()));
        }
        for k in 0..pairs.len() {
            if pairs[k].is_empty() {
                return Err(Error::InvalidTower(format!("level {k} has no pairs")));
            }
            let mut names = BTreeSet::new();
            for p in &pairs[k] {
                if !names.insert(p.name.as_str()) {
                    return Err(Error::InvalidTower(format!("duplicate pair name {}", p.name)));
                }
                if p.outer >= levels[k + 1].len() {
                    return Err(Error::InvalidTower(format!("pair {} has no outer member", p.name)));
                }
                if let Some(v) = p.inner.iter().find(|v| !vertices.contains(*v)) {
                    return Err(Error::UnknownVertex(v.clone()));
                }
            }
            if witnesses[k].len() != levels[k].len() {
                return Err(Error::InvalidTower(format!(
                    "level {k}: witness list does not cover every member"
                )));
            }
            if witnesses[k].iter().any(|&w| w >= pairs[k].len()) {
                return Err(Error::InvalidTower(format!("level {k}: witness out of range")));
            }
        }
        Ok(FiltrationTower { levels, pairs, witnesses })
    }

    /// Tower with the one-member cover `{whole}` at all `n + 2` levels.
    pub fn trivial(complex: &SimplicialComplex, n: usize) -> Result<Self> {
        let whole = Cover::whole(complex, "whole")?;
        let levels = vec![whole; n + 2];
        let pair = TowerPair { name: "whole".into(), inner: complex.vertex_set(), outer: 0 };
        FiltrationTower::new(levels, vec![vec![pair]; n + 1], vec![vec![0]; n + 1])
    }

    /// Tower from covers alone: each member `W` of `T_k` gets the pair
    /// `(St(W, T_k), first member of T_{k+1} containing it)`. Fails when some
    /// star fits in no member of the next level.
    pub fn auto(levels: Vec<Cover>) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut witnesses = Vec::new();
        for k in 0..levels.len().saturating_sub(1) {
            let mut level_pairs = Vec::new();
            for i in 0..levels[k].len() {
                let star = levels[k].star_of(i);
                let outer = levels[k + 1].first_containing(&star).ok_or_else(|| {
                    Error::InvalidTower(format!(
                        "level {k}: star of {} lies in no member of level {}",
                        levels[k].members[i].name,
                        k + 1
                    ))
                })?;
                level_pairs.push(TowerPair {
                    name: levels[k].members[i].name.clone(),
                    inner: star,
                    outer,
                });
            }
            witnesses.push((0..levels[k].len()).collect());
            pairs.push(level_pairs);
        }
        FiltrationTower::new(levels, pairs, witnesses)
    }

    /// The index `n` such that the tower has levels `T_0..T_{n+1}`.
    pub fn top_degree(&self) -> usize {
        self.levels.len() - 2
    }

    pub fn levels(&self) -> &[Cover] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &Cover {
        &self.levels[k]
    }

    pub fn top(&self) -> &Cover {
        self.levels.last().expect("at least two levels")
    }

    pub fn pairs(&self, k: usize) -> &[TowerPair] {
        &self.pairs[k]
    }

    pub fn witnesses(&self, k: usize) -> &[usize] {
        &self.witnesses[k]
    }

    /// Pair index recorded for member `i` of level `k`.
    pub fn witness(&self, k: usize, i: usize) -> usize {
        self.witnesses[k][i]
    }

    /// The member of `T_{k+1}` containing the star of member `i` of `T_k`.
    pub fn refinement_witness(&self, k: usize, i: usize) -> usize {
        self.pairs[k][self.witnesses[k][i]].outer
    }

    /// All structural defects, in level then member order.
    pub fn defects(&self) -> Vec<TowerDefect> {
        let mut out = Vec::new();
        for k in 0..self.pairs.len() {
            for (i, m) in self.levels[k].members.iter().enumerate() {
                let p = &self.pairs[k][self.witnesses[k][i]];
                if !self.levels[k].star_of(i).is_subset(&p.inner) {
                    out.push(TowerDefect::StarNotInWitness {
                        level: k,
                        member: m.name.clone(),
                        pair: p.name.clone(),
                    });
                }
            }
            for p in &self.pairs[k] {
                if !p.inner.is_subset(&self.levels[k + 1].members[p.outer].vertices) {
                    out.push(TowerDefect::InnerNotInOuter { level: k, pair: p.name.clone() });
                }
            }
        }
        out
    }

    /// Follow witnesses from member `i` of `T_0` up to level `k`, returning the
    /// member index reached at each level `0..=k`.
    pub fn chase(&self, i: usize, k: usize) -> Vec<usize> {
        let mut path = vec![i];
        let mut cur = i;
        for level in 0..k.min(self.pairs.len()) {
            cur = self.refinement_witness(level, cur);
            path.push(cur);
        }
        path
    }
}

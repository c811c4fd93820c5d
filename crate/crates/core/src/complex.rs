//! Facet-list simplicial complexes and the face-level operations the rest of
//! the crate is built on: face enumeration, boundary, closed stars, links,
//! components and closure intersections.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

/// Vertex label. Labels are arbitrary positive integers; they need not be
/// contiguous and equality is by value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("a simplex needs at least one vertex")]
    Empty,
    #[error("duplicate vertex {0} in simplex")]
    DuplicateVertex(VertexId),
    #[error("vertex labels must be positive")]
    ZeroVertex,
}

/// A simplex, stored as its strictly increasing vertex sequence. Two
/// simplices are equal iff their vertex sequences are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, SimplexError> {
        if vertices.is_empty() {
            return Err(SimplexError::Empty);
        }
        if vertices.iter().any(|v| v.0 == 0) {
            return Err(SimplexError::ZeroVertex);
        }
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(SimplexError::DuplicateVertex(w[0]));
            }
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// All faces of dimension `k`, in canonical order.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Simplex> {
        if k + 1 > self.0.len() {
            return Vec::new();
        }
        self.0
            .iter()
            .copied()
            .combinations(k + 1)
            .map(Simplex)
            .collect()
    }

    /// All nonempty proper and improper faces (the closure of the simplex).
    pub fn all_faces(&self) -> Vec<Simplex> {
        (0..self.0.len())
            .flat_map(|k| self.faces_of_dim(k))
            .collect()
    }

    /// Proper faces only.
    pub fn proper_faces(&self) -> Vec<Simplex> {
        (0..self.0.len() - 1)
            .flat_map(|k| self.faces_of_dim(k))
            .collect()
    }

    /// The face spanned by this simplex together with `v`; None if `v` is
    /// already a vertex.
    pub fn join_vertex(&self, v: VertexId) -> Option<Simplex> {
        if self.contains_vertex(v) {
            return None;
        }
        let mut vs = self.0.clone();
        vs.push(v);
        vs.sort_unstable();
        Some(Simplex(vs))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|v| v.to_string()).join(","))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|v| v.to_string()).join(","))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex is not pure of dimension {expected}")]
    NonPure { expected: usize },
    #[error("2-face {0} lies in {1} facets; at most two are allowed")]
    OverusedFace(Simplex, usize),
    #[error("{0} is not a face of the complex")]
    NotASubcomplex(Simplex),
    #[error("vertex {0} is not a vertex of the complex")]
    UnknownVertex(VertexId),
}

/// A simplicial complex given by its inclusion-maximal faces. Faces are
/// enumerated on demand; the type is a plain value and all operations are
/// pure functions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Complex {
    facets: BTreeSet<Simplex>,
}

impl Complex {
    pub fn empty() -> Self {
        Complex::default()
    }

    /// Builds a complex from arbitrary simplices, keeping only the
    /// inclusion-maximal ones.
    pub fn from_maximal<I: IntoIterator<Item = Simplex>>(faces: I) -> Self {
        let faces: BTreeSet<Simplex> = faces.into_iter().collect();
        let facets = faces
            .iter()
            .filter(|s| {
                !faces
                    .iter()
                    .any(|t| *s != t && s.is_face_of(t))
            })
            .cloned()
            .collect();
        Complex { facets }
    }

    pub fn facets(&self) -> impl Iterator<Item = &Simplex> {
        self.facets.iter()
    }

    pub fn facet_set(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension of the complex; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(Simplex::dim).max()
    }

    pub fn is_pure(&self) -> bool {
        let mut dims = self.facets.iter().map(Simplex::dim);
        match dims.next() {
            None => true,
            Some(d) => dims.all(|x| x == d),
        }
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    /// Every nonempty face of the closure.
    pub fn all_faces(&self) -> BTreeSet<Simplex> {
        self.facets.iter().flat_map(Simplex::all_faces).collect()
    }

    /// The k-dimensional faces of the closure, in canonical order.
    pub fn faces(&self, k: usize) -> BTreeSet<Simplex> {
        self.facets
            .iter()
            .flat_map(|f| f.faces_of_dim(k))
            .collect()
    }

    pub fn contains_face(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    /// Number of facets containing each k-face.
    pub fn face_incidence(&self, k: usize) -> BTreeMap<Simplex, usize> {
        let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
        for f in &self.facets {
            for s in f.faces_of_dim(k) {
                *counts.entry(s).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Alternating sum of face counts over the closure.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        if let Some(d) = self.dimension() {
            for k in 0..=d {
                let n = self.faces(k).len() as i64;
                chi += if k % 2 == 0 { n } else { -n };
            }
        }
        chi
    }

    /// Boundary of a pure d-complex: the closure of the (d-1)-faces lying in
    /// exactly one facet. Fails if the complex is not pure or some (d-1)-face
    /// lies in three or more facets.
    pub fn boundary_complex(&self) -> Result<Complex, ComplexError> {
        let d = match self.dimension() {
            None => return Ok(Complex::empty()),
            Some(0) => return Ok(Complex::empty()),
            Some(d) => d,
        };
        if !self.is_pure() {
            return Err(ComplexError::NonPure { expected: d });
        }
        let mut boundary = Vec::new();
        for (s, count) in self.face_incidence(d - 1) {
            if count > 2 {
                return Err(ComplexError::OverusedFace(s, count));
            }
            if count == 1 {
                boundary.push(s);
            }
        }
        Ok(Complex::from_maximal(boundary))
    }

    /// Closed star of a 1-dimensional subcomplex: the closure of all facets
    /// containing a vertex or edge of `graph`.
    pub fn closed_star(&self, graph: &Graph1Complex) -> Result<Complex, ComplexError> {
        for v in graph.vertices() {
            if !self.contains_face(&Simplex::vertex(*v)) {
                return Err(ComplexError::NotASubcomplex(Simplex::vertex(*v)));
            }
        }
        for e in graph.edges() {
            if !self.contains_face(e) {
                return Err(ComplexError::NotASubcomplex(e.clone()));
            }
        }
        let star = self
            .facets
            .iter()
            .filter(|f| graph.vertices().iter().any(|v| f.contains_vertex(*v)))
            .cloned();
        Ok(Complex::from_maximal(star))
    }

    /// Link of a vertex: the faces s with v ∉ s and s ∪ {v} a face.
    pub fn vertex_link(&self, v: VertexId) -> Result<Complex, ComplexError> {
        if !self.vertices().contains(&v) {
            return Err(ComplexError::UnknownVertex(v));
        }
        let link = self.facets.iter().filter_map(|f| {
            if !f.contains_vertex(v) {
                return None;
            }
            let vs: Vec<VertexId> = f
                .vertices()
                .iter()
                .copied()
                .filter(|u| *u != v)
                .collect();
            if vs.is_empty() {
                None
            } else {
                Some(Simplex(vs))
            }
        });
        Ok(Complex::from_maximal(link))
    }

    /// Partition of the facets by vertex-sharing transitive closure, ordered
    /// by smallest vertex.
    pub fn connected_components(&self) -> Vec<Complex> {
        let facets: Vec<&Simplex> = self.facets.iter().collect();
        let mut assigned = vec![false; facets.len()];
        let mut components = Vec::new();
        for start in 0..facets.len() {
            if assigned[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut member = Vec::new();
            assigned[start] = true;
            while let Some(i) = stack.pop() {
                member.push(facets[i].clone());
                for (j, other) in facets.iter().enumerate() {
                    if !assigned[j]
                        && facets[i].vertices().iter().any(|v| other.contains_vertex(*v))
                    {
                        assigned[j] = true;
                        stack.push(j);
                    }
                }
            }
            components.push(Complex::from_maximal(member));
        }
        components.sort_by_key(|c| c.vertices().iter().next().copied());
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Face-set intersection of the two closures, returned by its maximal
    /// faces. May be empty or non-pure; callers check.
    pub fn intersection(&self, other: &Complex) -> Complex {
        let mine = self.all_faces();
        let theirs = other.all_faces();
        Complex::from_maximal(mine.intersection(&theirs).cloned())
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.facets.iter().map(|s| s.to_string()).join(" "))
    }
}

/// A 1-dimensional complex given as explicit vertex and edge sets; isolated
/// vertices are permitted.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Graph1Complex {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Simplex>,
}

impl Graph1Complex {
    pub fn new(vertices: BTreeSet<VertexId>, edges: BTreeSet<Simplex>) -> Self {
        let mut vertices = vertices;
        for e in &edges {
            debug_assert_eq!(e.dim(), 1);
            vertices.extend(e.vertices().iter().copied());
        }
        Graph1Complex { vertices, edges }
    }

    pub fn empty() -> Self {
        Graph1Complex::default()
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Simplex> {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Connected components, ordered by smallest vertex. Edges never join
    /// two components because endpoints are always vertices of the graph.
    pub fn components(&self) -> Vec<Graph1Complex> {
        let verts: Vec<VertexId> = self.vertices.iter().copied().collect();
        let mut assigned: BTreeMap<VertexId, bool> =
            verts.iter().map(|v| (*v, false)).collect();
        let mut out = Vec::new();
        for &start in &verts {
            if assigned[&start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp_verts = BTreeSet::new();
            *assigned.get_mut(&start).unwrap() = true;
            while let Some(v) = stack.pop() {
                comp_verts.insert(v);
                for e in &self.edges {
                    if e.contains_vertex(v) {
                        for &u in e.vertices() {
                            if !assigned[&u] {
                                *assigned.get_mut(&u).unwrap() = true;
                                stack.push(u);
                            }
                        }
                    }
                }
            }
            let comp_edges = self
                .edges
                .iter()
                .filter(|e| comp_verts.contains(&e.vertices()[0]))
                .cloned()
                .collect();
            out.push(Graph1Complex {
                vertices: comp_verts,
                edges: comp_edges,
            });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }
}

/// Convenience constructor used throughout tests and the corpus.
pub fn simplex(vertices: &[u32]) -> Simplex {
    Simplex::new(vertices.iter().map(|v| VertexId(*v)).collect())
        .expect("invalid simplex literal")
}

/// Convenience constructor for a complex from facet literals.
pub fn complex(facets: &[&[u32]]) -> Complex {
    Complex::from_maximal(facets.iter().map(|f| simplex(f)))
}

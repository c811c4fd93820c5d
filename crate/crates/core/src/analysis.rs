//! Interior structure of simplicial 3-balls: interior graphs, spanning
//! edges, strictness, reducedness, and the sufficient-condition decision for
//! nonconstructibility, plus the disk-splitting operations and the two
//! property-testable lemmas on 2-balls.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{Complex, ComplexError, Graph1Complex, Simplex, VertexId};
use crate::validation::{self, ValidationReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("{0} is not a spanning edge")]
    NotASpanningEdge(Simplex),
    #[error("{edge} is not a chord of the disk: {reason}")]
    NotAChord { edge: Simplex, reason: String },
    #[error("input is not a simplicial 2-ball")]
    NotADisk,
    #[error("lemma precondition violated: {0}")]
    PreconditionViolated(Precondition),
}

/// Which lemma hypothesis failed.
#[derive(Debug, PartialEq, Eq)]
pub enum Precondition {
    NotA2Ball,
    WNotOnBoundary(VertexId),
    InducedGraphEmpty,
    InducedGraphDisconnected,
    InducedGraphConnected,
    ChordBetweenW(Simplex),
}

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precondition::NotA2Ball => write!(f, "D is not a simplicial 2-ball"),
            Precondition::WNotOnBoundary(v) => {
                write!(f, "vertex {v} of W is not a boundary vertex of D")
            }
            Precondition::InducedGraphEmpty => write!(f, "the induced graph I is empty"),
            Precondition::InducedGraphDisconnected => {
                write!(f, "the induced graph I is disconnected")
            }
            Precondition::InducedGraphConnected => {
                write!(f, "the induced graph I is connected (needs ≥ 2 components)")
            }
            Precondition::ChordBetweenW(e) => {
                write!(f, "non-boundary edge {e} joins two vertices of W")
            }
        }
    }
}

/// The graph of interior vertices and interior edges, split into its
/// maximal connected components.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InteriorGraph {
    pub components: Vec<Graph1Complex>,
}

/// Names the interior graph component and the single connected component of
/// ∂B ∩ Star_B I that contains both endpoints of a nonstrict edge.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StrictnessWitness {
    pub interior_component: usize,
    pub boundary_piece: usize,
    pub piece_vertices: BTreeSet<VertexId>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SpanningEdgeInfo {
    pub edge: Simplex,
    pub strict: bool,
    pub witness: Option<StrictnessWitness>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Verdict {
    /// The sufficient condition fired: the ball is not constructible.
    Nonconstructible,
    /// The sufficient condition did not fire. Says nothing about
    /// constructibility.
    Unknown,
    /// The input failed 3-ball validation.
    InvalidInput,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BallReport {
    pub spanning: Vec<SpanningEdgeInfo>,
    pub interior: InteriorGraph,
    pub reduced: bool,
    /// Interior 2-faces with two or more boundary edges.
    pub reduced_violations: Vec<Simplex>,
    pub verdict: Verdict,
    pub validation: ValidationReport,
}

/// Vertices of `b` not on its boundary.
pub fn interior_vertices(b: &Complex) -> Result<BTreeSet<VertexId>, AnalysisError> {
    let boundary = b.boundary_complex()?;
    let bverts = boundary.vertices();
    Ok(b.vertices().difference(&bverts).copied().collect())
}

/// The interior graph of `b`: all interior vertices together with the edges
/// joining two interior vertices, decomposed into maximal components.
pub fn interior_graph(b: &Complex) -> Result<InteriorGraph, AnalysisError> {
    let interior = interior_vertices(b)?;
    let edges = b
        .faces(1)
        .into_iter()
        .filter(|e| e.vertices().iter().all(|v| interior.contains(v)))
        .collect();
    let graph = Graph1Complex::new(interior, edges);
    Ok(InteriorGraph {
        components: graph.components(),
    })
}

/// Edges of `b` not contained in ∂B whose end vertices both lie on ∂B.
pub fn spanning_edges(b: &Complex) -> Result<Vec<Simplex>, AnalysisError> {
    let boundary = b.boundary_complex()?;
    let bverts = boundary.vertices();
    Ok(b.faces(1)
        .into_iter()
        .filter(|e| {
            !boundary.contains_face(e) && e.vertices().iter().all(|v| bverts.contains(v))
        })
        .collect())
}

/// Index of the unique element of `components` containing both `a` and `b`
/// as vertices, if any. Components are vertex-disjoint, so at most one can.
pub fn single_component_containing(
    components: &[Complex],
    a: VertexId,
    b: VertexId,
) -> Option<usize> {
    components.iter().position(|c| {
        let vs = c.vertices();
        vs.contains(&a) && vs.contains(&b)
    })
}

/// Per-ball data shared by all strictness checks: for every maximal
/// interior graph component I, the connected components of ∂B ∩ Star_B I.
struct StrictnessContext {
    pieces_per_component: Vec<Vec<Complex>>,
}

fn strictness_context(b: &Complex) -> Result<StrictnessContext, AnalysisError> {
    let boundary = b.boundary_complex()?;
    let graph = interior_graph(b)?;
    let mut pieces_per_component = Vec::with_capacity(graph.components.len());
    for component in &graph.components {
        let star = b.closed_star(component)?;
        pieces_per_component.push(boundary.intersection(&star).connected_components());
    }
    Ok(StrictnessContext {
        pieces_per_component,
    })
}

impl StrictnessContext {
    fn classify(&self, e: &Simplex) -> SpanningEdgeInfo {
        let (v1, v2) = (e.vertices()[0], e.vertices()[1]);
        for (idx, pieces) in self.pieces_per_component.iter().enumerate() {
            if let Some(piece) = single_component_containing(pieces, v1, v2) {
                return SpanningEdgeInfo {
                    edge: e.clone(),
                    strict: false,
                    witness: Some(StrictnessWitness {
                        interior_component: idx,
                        boundary_piece: piece,
                        piece_vertices: pieces[piece].vertices(),
                    }),
                };
            }
        }
        SpanningEdgeInfo {
            edge: e.clone(),
            strict: true,
            witness: None,
        }
    }
}

/// Strictness of a spanning edge: strict iff no maximal interior graph
/// component I puts both endpoints inside one connected component of
/// ∂B ∩ Star_B I. An endpoint missing ∂B ∩ Star_B I entirely can never
/// defeat strictness for that I; a ball with an empty interior graph makes
/// every spanning edge vacuously strict.
pub fn is_strict(b: &Complex, e: &Simplex) -> Result<SpanningEdgeInfo, AnalysisError> {
    if !spanning_edges(b)?.contains(e) {
        return Err(AnalysisError::NotASpanningEdge(e.clone()));
    }
    Ok(strictness_context(b)?.classify(e))
}

/// A 3-ball is reduced iff every interior 2-face has at most one edge on
/// the boundary. Returns the verdict with the violating 2-faces.
pub fn is_reduced(b: &Complex) -> Result<(bool, Vec<Simplex>), AnalysisError> {
    let boundary = b.boundary_complex()?;
    let mut violations = Vec::new();
    for t in b.faces(2) {
        if boundary.contains_face(&t) {
            continue;
        }
        let on_boundary = t
            .faces_of_dim(1)
            .iter()
            .filter(|e| boundary.contains_face(e))
            .count();
        if on_boundary > 1 {
            violations.push(t);
        }
    }
    Ok((violations.is_empty(), violations))
}

/// The sufficient-condition decision: validates the input, then reports
/// Nonconstructible iff the ball is reduced, has spanning edges, and all of
/// them are strict. Unknown otherwise; InvalidInput when validation fails.
pub fn theorem_decide(b: &Complex) -> BallReport {
    let validation = validation::validate_3ball(b);
    if !validation.passed {
        return BallReport {
            spanning: Vec::new(),
            interior: InteriorGraph {
                components: Vec::new(),
            },
            reduced: false,
            reduced_violations: Vec::new(),
            verdict: Verdict::InvalidInput,
            validation,
        };
    }
    // validation rules out every error the helpers can raise
    let interior = interior_graph(b).expect("validated ball");
    let (reduced, reduced_violations) = is_reduced(b).expect("validated ball");
    let context = strictness_context(b).expect("validated ball");
    let spanning: Vec<SpanningEdgeInfo> = spanning_edges(b)
        .expect("validated ball")
        .iter()
        .map(|e| context.classify(e))
        .collect();
    let fires = reduced && !spanning.is_empty() && spanning.iter().all(|s| s.strict);
    BallReport {
        spanning,
        interior,
        reduced,
        reduced_violations,
        verdict: if fires {
            Verdict::Nonconstructible
        } else {
            Verdict::Unknown
        },
        validation,
    }
}

/// Splits a 2-ball along a chord `e` into the two sub-disks obtained by
/// disconnecting triangle adjacency across `e`. Both returned complexes
/// contain `e`; their union is `d`.
pub fn split_disk_along_edge(
    d: &Complex,
    e: &Simplex,
) -> Result<(Complex, Complex), AnalysisError> {
    if !validation::is_2ball(d).passed {
        return Err(AnalysisError::NotADisk);
    }
    check_chord(d, e)?;
    let triangles: Vec<&Simplex> = d.facets().collect();
    let mut side = vec![usize::MAX; triangles.len()];
    let mut next = 0usize;
    for start in 0..triangles.len() {
        if side[start] != usize::MAX {
            continue;
        }
        side[start] = next;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..triangles.len() {
                if side[j] != usize::MAX {
                    continue;
                }
                let shared: Vec<Simplex> = triangles[i]
                    .faces_of_dim(1)
                    .into_iter()
                    .filter(|s| s != e && s.is_face_of(triangles[j]))
                    .collect();
                if !shared.is_empty() {
                    side[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    debug_assert_eq!(next, 2, "a chord of a disk separates it into two pieces");
    let collect = |label: usize| {
        Complex::from_maximal(
            triangles
                .iter()
                .zip(&side)
                .filter(|(_, s)| **s == label)
                .map(|(t, _)| (*t).clone()),
        )
    };
    let (a, b) = (collect(0), collect(1));
    debug_assert!(a.contains_face(e) && b.contains_face(e));
    Ok((a, b))
}

fn check_chord(d: &Complex, e: &Simplex) -> Result<(), AnalysisError> {
    let chord_err = |reason: &str| AnalysisError::NotAChord {
        edge: e.clone(),
        reason: reason.to_string(),
    };
    if e.dim() != 1 || !d.contains_face(e) {
        return Err(chord_err("not an edge of the disk"));
    }
    let boundary = d.boundary_complex()?;
    if boundary.contains_face(e) {
        return Err(chord_err("lies on the boundary"));
    }
    let bverts = boundary.vertices();
    if !e.vertices().iter().all(|v| bverts.contains(v)) {
        return Err(chord_err("an endpoint is interior"));
    }
    Ok(())
}

/// The elements of `s` that cut off a sub-disk containing no other element
/// of `s`. Nonempty whenever `s` is nonempty and every element is a chord.
pub fn outermost_spanning_edges(
    d: &Complex,
    s: &BTreeSet<Simplex>,
) -> Result<Vec<Simplex>, AnalysisError> {
    let mut out = Vec::new();
    for e in s {
        let (a, b) = split_disk_along_edge(d, e)?;
        let clean = |side: &Complex| s.iter().all(|f| f == e || !side.contains_face(f));
        if clean(&a) || clean(&b) {
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// The closed 1-dimensional subcomplex of `d` induced on the vertices
/// outside `excluded`: those vertices plus every edge of `d` joining two of
/// them.
pub fn induced_graph(d: &Complex, excluded: &BTreeSet<VertexId>) -> Graph1Complex {
    let vertices: BTreeSet<VertexId> = d
        .vertices()
        .difference(excluded)
        .copied()
        .collect();
    let edges = d
        .faces(1)
        .into_iter()
        .filter(|e| e.vertices().iter().all(|v| vertices.contains(v)))
        .collect();
    Graph1Complex::new(vertices, edges)
}

fn lemma_preconditions(
    d: &Complex,
    w: &BTreeSet<VertexId>,
) -> Result<(Complex, Graph1Complex), AnalysisError> {
    if !validation::is_2ball(d).passed {
        return Err(AnalysisError::PreconditionViolated(Precondition::NotA2Ball));
    }
    let boundary = d.boundary_complex()?;
    let bverts = boundary.vertices();
    if let Some(v) = w.iter().find(|v| !bverts.contains(v)) {
        return Err(AnalysisError::PreconditionViolated(
            Precondition::WNotOnBoundary(*v),
        ));
    }
    Ok((boundary, induced_graph(d, w)))
}

/// Checks the star identity: with W boundary vertices, I the induced graph
/// on the remaining vertices connected, and no chord joining two W
/// vertices, Star_D I must equal D. Exists so the identity is
/// property-testable; `true` is the asserted outcome.
pub fn lemma_21_check(d: &Complex, w: &BTreeSet<VertexId>) -> Result<bool, AnalysisError> {
    let (boundary, induced) = lemma_preconditions(d, w)?;
    if induced.is_empty() {
        return Err(AnalysisError::PreconditionViolated(
            Precondition::InducedGraphEmpty,
        ));
    }
    if !induced.is_connected() {
        return Err(AnalysisError::PreconditionViolated(
            Precondition::InducedGraphDisconnected,
        ));
    }
    for e in d.faces(1) {
        if e.vertices().iter().all(|v| w.contains(v)) && !boundary.contains_face(&e) {
            return Err(AnalysisError::PreconditionViolated(
                Precondition::ChordBetweenW(e),
            ));
        }
    }
    let star = d.closed_star(&induced)?;
    Ok(star.facet_set() == d.facet_set())
}

/// With I disconnected, finds a non-boundary edge joining two W vertices.
/// Existence is asserted; an empty return under valid preconditions is a
/// defect.
pub fn lemma_22_witness(
    d: &Complex,
    w: &BTreeSet<VertexId>,
) -> Result<Option<Simplex>, AnalysisError> {
    let (boundary, induced) = lemma_preconditions(d, w)?;
    if induced.components().len() < 2 {
        return Err(AnalysisError::PreconditionViolated(
            Precondition::InducedGraphConnected,
        ));
    }
    Ok(d.faces(1).into_iter().find(|e| {
        e.vertices().iter().all(|v| w.contains(v)) && !boundary.contains_face(e)
    }))
}

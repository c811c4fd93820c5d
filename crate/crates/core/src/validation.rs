//! Recognition batteries for 2-balls, 2-spheres and (necessary conditions
//! for) 3-balls. Downstream operations use these to enforce their
//! preconditions; a passing 3-ball report means "consistent with a 3-ball",
//! not a proof of ball-hood.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::complex::{Complex, Simplex, VertexId};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Ball3,
    Ball2,
    Sphere2,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckFailure {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ValidationReport {
    pub category_claimed: Category,
    pub passed: bool,
    pub failures: Vec<CheckFailure>,
}

impl ValidationReport {
    fn new(category: Category, failures: Vec<CheckFailure>) -> Self {
        ValidationReport {
            category_claimed: category,
            passed: failures.is_empty(),
            failures,
        }
    }
}

fn fail(failures: &mut Vec<CheckFailure>, check: &str, detail: String) {
    failures.push(CheckFailure {
        check: check.to_string(),
        detail,
    });
}

/// Shape of a 1-dimensional complex, as needed for link classification.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphShape {
    /// Connected, max degree 2, two or zero endpoints of degree < 2 but not
    /// closed; a single vertex counts as a (degenerate) path.
    Path,
    /// Connected, every vertex of degree exactly 2.
    Cycle,
    Other,
}

/// Classifies a complex of dimension ≤ 1 as a single path, single cycle or
/// neither. The empty complex is `Other`.
pub fn graph_shape(c: &Complex) -> GraphShape {
    if c.is_empty() {
        return GraphShape::Other;
    }
    match c.dimension() {
        Some(0) => {
            if c.facet_count() == 1 {
                return GraphShape::Path;
            }
            return GraphShape::Other;
        }
        Some(1) => {}
        _ => return GraphShape::Other,
    }
    if !c.is_pure() || !c.is_connected() {
        // a maximal isolated vertex next to edges, or several pieces
        return GraphShape::Other;
    }
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in c.facets() {
        for &v in e.vertices() {
            *degree.entry(v).or_insert(0) += 1;
        }
    }
    if degree.values().any(|&d| d > 2) {
        return GraphShape::Other;
    }
    let endpoints = degree.values().filter(|&&d| d == 1).count();
    match endpoints {
        0 => GraphShape::Cycle,
        2 => GraphShape::Path,
        _ => GraphShape::Other,
    }
}

/// A simplicial 1-ball: a single path with at least one edge.
pub fn is_path(c: &Complex) -> bool {
    c.dimension() == Some(1) && graph_shape(c) == GraphShape::Path
}

/// A 0-ball: exactly one vertex.
pub fn is_single_vertex(c: &Complex) -> bool {
    c.dimension() == Some(0) && c.facet_count() == 1
}

fn check_pure_dim(c: &Complex, d: usize, failures: &mut Vec<CheckFailure>) -> bool {
    if c.is_empty() {
        fail(failures, "nonempty", "complex has no facets".into());
        return false;
    }
    if !c.is_pure() || c.dimension() != Some(d) {
        fail(
            failures,
            "pure-dimension",
            format!("expected a pure {d}-dimensional complex, got dimension {:?}", c.dimension()),
        );
        return false;
    }
    true
}

fn check_vertex_links_1dim(c: &Complex, allow_paths: bool, failures: &mut Vec<CheckFailure>) {
    for v in c.vertices() {
        let link = c.vertex_link(v).expect("vertex of the complex");
        match graph_shape(&link) {
            GraphShape::Cycle => {}
            GraphShape::Path if allow_paths => {}
            shape => fail(
                failures,
                "vertex-link",
                format!("link of vertex {v} is {shape:?}, not a {}", if allow_paths { "single path or cycle" } else { "single cycle" }),
            ),
        }
    }
}

/// Battery for "is a simplicial 2-ball": pure 2-dimensional, connected,
/// every edge in at most two triangles, every vertex link a single path or
/// cycle, Euler characteristic 1, and the boundary edges forming one cycle.
pub fn is_2ball(c: &Complex) -> ValidationReport {
    let mut failures = Vec::new();
    if !check_pure_dim(c, 2, &mut failures) {
        return ValidationReport::new(Category::Ball2, failures);
    }
    if !c.is_connected() {
        fail(&mut failures, "connected", format!("{} components", c.connected_components().len()));
    }
    for (e, count) in c.face_incidence(1) {
        if count > 2 {
            fail(&mut failures, "edge-incidence", format!("edge {e} lies in {count} triangles"));
        }
    }
    if !failures.is_empty() {
        return ValidationReport::new(Category::Ball2, failures);
    }
    check_vertex_links_1dim(c, true, &mut failures);
    let chi = c.euler_characteristic();
    if chi != 1 {
        fail(&mut failures, "euler-characteristic", format!("χ = {chi}, expected 1"));
    }
    let boundary = c.boundary_complex().expect("incidence already checked");
    if graph_shape(&boundary) != GraphShape::Cycle {
        fail(&mut failures, "boundary-cycle", format!("boundary {boundary:?} is not a single cycle"));
    }
    ValidationReport::new(Category::Ball2, failures)
}

/// Battery for "is a simplicial 2-sphere": pure 2-dimensional, connected,
/// every edge in exactly two triangles, every vertex link a single cycle,
/// Euler characteristic 2.
pub fn is_2sphere(c: &Complex) -> ValidationReport {
    let mut failures = Vec::new();
    if !check_pure_dim(c, 2, &mut failures) {
        return ValidationReport::new(Category::Sphere2, failures);
    }
    if !c.is_connected() {
        fail(&mut failures, "connected", format!("{} components", c.connected_components().len()));
    }
    for (e, count) in c.face_incidence(1) {
        if count != 2 {
            fail(&mut failures, "edge-incidence", format!("edge {e} lies in {count} triangles, expected 2"));
        }
    }
    if !failures.is_empty() {
        return ValidationReport::new(Category::Sphere2, failures);
    }
    check_vertex_links_1dim(c, false, &mut failures);
    let chi = c.euler_characteristic();
    if chi != 2 {
        fail(&mut failures, "euler-characteristic", format!("χ = {chi}, expected 2"));
    }
    ValidationReport::new(Category::Sphere2, failures)
}

/// Necessary-condition battery for "is a simplicial 3-ball": pure
/// 3-dimensional, every 2-face in at most two facets, strongly connected
/// through 2-faces, Euler characteristic 1, boundary a 2-sphere, and every
/// vertex link a 2-ball or 2-sphere. Passing means "consistent with a
/// 3-ball"; full ball recognition is out of scope.
pub fn validate_3ball(c: &Complex) -> ValidationReport {
    let mut failures = Vec::new();
    if !check_pure_dim(c, 3, &mut failures) {
        return ValidationReport::new(Category::Ball3, failures);
    }
    for (t, count) in c.face_incidence(2) {
        if count > 2 {
            fail(&mut failures, "2-face-incidence", format!("2-face {t} lies in {count} facets"));
        }
    }
    if !failures.is_empty() {
        return ValidationReport::new(Category::Ball3, failures);
    }
    if !strongly_connected(c) {
        fail(&mut failures, "strongly-connected", "facets are not connected through shared 2-faces".into());
    }
    let chi = c.euler_characteristic();
    if chi != 1 {
        fail(&mut failures, "euler-characteristic", format!("χ = {chi}, expected 1"));
    }
    match c.boundary_complex() {
        Ok(boundary) => {
            let sphere = is_2sphere(&boundary);
            if !sphere.passed {
                for f in sphere.failures {
                    fail(&mut failures, "boundary-sphere", format!("{}: {}", f.check, f.detail));
                }
            }
        }
        Err(e) => fail(&mut failures, "boundary-sphere", e.to_string()),
    }
    for v in c.vertices() {
        let link = c.vertex_link(v).expect("vertex of the complex");
        if !is_2ball(&link).passed && !is_2sphere(&link).passed {
            fail(&mut failures, "vertex-link", format!("link of vertex {v} is neither a 2-ball nor a 2-sphere"));
        }
    }
    ValidationReport::new(Category::Ball3, failures)
}

/// Facet adjacency through shared (d-1)-faces, as one connected piece.
fn strongly_connected(c: &Complex) -> bool {
    let d = match c.dimension() {
        None => return true,
        Some(0) => return c.facet_count() <= 1,
        Some(d) => d,
    };
    let facets: Vec<&Simplex> = c.facets().collect();
    let shares_ridge = |a: &Simplex, b: &Simplex| {
        a.faces_of_dim(d - 1)
            .iter()
            .any(|s| s.is_face_of(b))
    };
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..facets.len() {
            if !seen[j] && shares_ridge(facets[i], facets[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex;

    #[test]
    fn single_triangle_is_a_2ball_not_a_sphere() {
        let c = complex(&[&[1, 2, 3]]);
        assert!(is_2ball(&c).passed);
        assert!(!is_2sphere(&c).passed);
    }

    #[test]
    fn tetrahedron_boundary_is_a_2sphere_not_a_ball() {
        let c = complex(&[&[1, 2, 3, 4]]).boundary_complex().unwrap();
        assert!(is_2sphere(&c).passed);
        let ball = is_2ball(&c);
        assert!(!ball.passed);
        assert!(ball.failures.iter().any(|f| f.check == "euler-characteristic"
            || f.check == "boundary-cycle"));
    }

    #[test]
    fn pinched_triangles_fail_2ball() {
        // two triangles sharing only a vertex: link of 3 has two components
        let c = complex(&[&[1, 2, 3], &[3, 4, 5]]);
        let report = is_2ball(&c);
        assert!(!report.passed);
        assert!(report.failures.iter().any(|f| f.check == "vertex-link"));
    }

    #[test]
    fn tetrahedron_is_consistent_with_a_3ball() {
        assert!(validate_3ball(&complex(&[&[1, 2, 3, 4]])).passed);
    }

    #[test]
    fn disjoint_tetrahedra_fail_3ball() {
        let report = validate_3ball(&complex(&[&[1, 2, 3, 4], &[5, 6, 7, 8]]));
        assert!(!report.passed);
        let checks: Vec<&str> = report.failures.iter().map(|f| f.check.as_str()).collect();
        assert!(checks.contains(&"strongly-connected"));
        assert!(checks.contains(&"euler-characteristic"));
    }

    #[test]
    fn claimed_3ball_of_wrong_dimension_fails() {
        let boundary = complex(&[&[1, 2, 3, 4]]).boundary_complex().unwrap();
        let report = validate_3ball(&boundary);
        assert!(!report.passed);
        assert_eq!(report.failures[0].check, "pure-dimension");
    }

    #[test]
    fn paths_and_cycles() {
        assert_eq!(graph_shape(&complex(&[&[1, 2], &[2, 3]])), GraphShape::Path);
        assert_eq!(
            graph_shape(&complex(&[&[1, 2], &[2, 3], &[1, 3]])),
            GraphShape::Cycle
        );
        assert_eq!(graph_shape(&complex(&[&[1, 2], &[3, 4]])), GraphShape::Other);
        // degenerate single-vertex link counts as a path
        assert_eq!(graph_shape(&complex(&[&[7]])), GraphShape::Path);
    }
}

//! Naive reference computations used to cross-check the library. These work
//! directly on raw vertex lists and deliberately avoid the `Complex` API so
//! that derived expectations come from an independent route.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ballcheck::complex::{Complex, Simplex, VertexId};

pub fn raw_facets(c: &Complex) -> Vec<Vec<u32>> {
    c.facets()
        .map(|f| f.vertices().iter().map(|v| v.0).collect())
        .collect()
}

/// All nonempty subsets of every facet, deduplicated: the closure.
pub fn naive_closure(facets: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for f in facets {
        let n = f.len();
        for mask in 1u32..(1 << n) {
            let sub: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            out.insert(sub);
        }
    }
    out
}

pub fn naive_faces(facets: &[Vec<u32>], k: usize) -> BTreeSet<Vec<u32>> {
    naive_closure(facets)
        .into_iter()
        .filter(|s| s.len() == k + 1)
        .collect()
}

pub fn naive_euler(facets: &[Vec<u32>]) -> i64 {
    naive_closure(facets)
        .iter()
        .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
        .sum()
}

/// (d-1)-faces by the number of facets containing them.
pub fn naive_ridge_incidence(facets: &[Vec<u32>], d: usize) -> BTreeMap<Vec<u32>, usize> {
    let mut counts: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for ridge in naive_faces(facets, d - 1) {
        let n = facets
            .iter()
            .filter(|f| ridge.iter().all(|v| f.contains(v)))
            .count();
        counts.insert(ridge, n);
    }
    counts
}

/// Boundary ridges: (d-1)-faces contained in exactly one facet.
pub fn naive_boundary(facets: &[Vec<u32>], d: usize) -> Vec<Vec<u32>> {
    naive_ridge_incidence(facets, d)
        .into_iter()
        .filter(|(_, n)| *n == 1)
        .map(|(r, _)| r)
        .collect()
}

pub fn to_simplex(vs: &[u32]) -> Simplex {
    Simplex::new(vs.iter().map(|&v| VertexId(v)).collect()).unwrap()
}

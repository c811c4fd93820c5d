//! Exact exponential deciders for shellability and constructibility, with
//! replayable certificates. The shellability search backtracks over facet
//! orders memoizing dead facet subsets; the constructibility search
//! enumerates facet bipartitions top-down. Both are deterministic under a
//! fixed budget configuration.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{Complex, Simplex};
use crate::validation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search budget of {0:?} exceeded")]
    Timeout(Duration),
    #[error("exhaustive search needs {facets} facets but the cap is {cap}")]
    BudgetExceeded { facets: usize, cap: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate order is not a permutation of the facets")]
    NotAPermutation,
    #[error("construction tree leaves do not partition the facets")]
    MalformedTree,
    #[error("verification exceeded its search budget")]
    BudgetExhausted,
}

/// Which intersection criterion the constructibility recursion enforces.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Accept a bipartition only when the divide is a (d-1)-ball; no
    /// recursion into the divide (balls of dimension ≤ 2 are always
    /// constructible).
    Ball,
    /// Recurse the bare definition at every dimension, with the convention
    /// that a 0-dimensional complex is constructible iff it has at most two
    /// vertices.
    Literal,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub mode: Mode,
    pub budget: Duration,
    pub facet_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: Mode::Ball,
            budget: Duration::from_secs(120),
            facet_cap: 14,
        }
    }
}

/// A shelling order: for each j ≥ 2 the intersection of facet j with the
/// union of its predecessors is nonempty and pure of dimension d-1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ShellingCertificate {
    pub order: Vec<Simplex>,
}

/// A replayable witness of constructibility. At each split the children's
/// facet sets partition the node's and `divide` is their intersection.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ConstructionTree {
    Leaf(Simplex),
    Split {
        left: Box<ConstructionTree>,
        right: Box<ConstructionTree>,
        divide: Complex,
    },
}

impl ConstructionTree {
    pub fn leaf_facets(&self) -> Vec<Simplex> {
        match self {
            ConstructionTree::Leaf(f) => vec![f.clone()],
            ConstructionTree::Split { left, right, .. } => {
                let mut out = left.leaf_facets();
                out.extend(right.leaf_facets());
                out
            }
        }
    }
}

/// Exhaustive backtracking search for a shelling order. Returns `None` when
/// the whole order space is infeasible, `Timeout` when the wall-clock
/// budget runs out first.
pub fn is_shellable(
    c: &Complex,
    budget: Duration,
) -> Result<Option<ShellingCertificate>, OracleError> {
    if c.is_empty() || !c.is_pure() {
        return Ok(None);
    }
    let facets: Vec<Simplex> = c.facets().cloned().collect();
    let n = facets.len();
    if n == 1 {
        return Ok(Some(ShellingCertificate { order: facets }));
    }
    if n > 128 {
        return Err(OracleError::BudgetExceeded {
            facets: n,
            cap: 128,
        });
    }
    let d = c.dimension().expect("nonempty");
    let subsets: Vec<Vec<Simplex>> = facets.iter().map(|f| f.all_faces()).collect();
    let mut search = ShellingSearch {
        facets: &facets,
        subsets: &subsets,
        ridge_dim: d.saturating_sub(1),
        counts: HashMap::new(),
        order: Vec::with_capacity(n),
        mask: 0,
        dead: HashSet::new(),
        deadline: Instant::now() + budget,
        budget,
    };
    match search.dfs() {
        Err(e) => Err(e),
        Ok(true) => {
            let order = search.order.iter().map(|&i| facets[i].clone()).collect();
            Ok(Some(ShellingCertificate { order }))
        }
        Ok(false) => Ok(None),
    }
}

struct ShellingSearch<'a> {
    facets: &'a [Simplex],
    subsets: &'a [Vec<Simplex>],
    ridge_dim: usize,
    counts: HashMap<Simplex, u32>,
    order: Vec<usize>,
    mask: u128,
    dead: HashSet<u128>,
    deadline: Instant,
    budget: Duration,
}

impl ShellingSearch<'_> {
    fn step_ok(&self, i: usize) -> bool {
        if self.order.is_empty() {
            return true;
        }
        let shared: Vec<&Simplex> = self.subsets[i]
            .iter()
            .filter(|s| **s != self.facets[i] && self.counts.get(s).copied().unwrap_or(0) > 0)
            .collect();
        let ridges: Vec<&&Simplex> = shared
            .iter()
            .filter(|s| s.dim() == self.ridge_dim)
            .collect();
        if ridges.is_empty() {
            return false;
        }
        shared
            .iter()
            .all(|s| ridges.iter().any(|r| s.is_face_of(r)))
    }

    fn dfs(&mut self) -> Result<bool, OracleError> {
        if self.order.len() == self.facets.len() {
            return Ok(true);
        }
        if self.dead.contains(&self.mask) {
            return Ok(false);
        }
        if Instant::now() > self.deadline {
            return Err(OracleError::Timeout(self.budget));
        }
        for i in 0..self.facets.len() {
            if self.mask >> i & 1 == 1 || !self.step_ok(i) {
                continue;
            }
            self.order.push(i);
            self.mask |= 1 << i;
            for s in &self.subsets[i] {
                *self.counts.entry(s.clone()).or_insert(0) += 1;
            }
            let found = self.dfs()?;
            if found {
                return Ok(true);
            }
            self.order.pop();
            self.mask &= !(1 << i);
            for s in &self.subsets[i] {
                *self.counts.get_mut(s).unwrap() -= 1;
            }
        }
        self.dead.insert(self.mask);
        Ok(false)
    }
}

/// Independent replay of a shelling certificate, recomputing every step
/// intersection from scratch.
pub fn verify_shelling(
    c: &Complex,
    cert: &ShellingCertificate,
) -> Result<bool, CertificateError> {
    let claimed: BTreeSet<&Simplex> = cert.order.iter().collect();
    if claimed.len() != cert.order.len()
        || claimed.len() != c.facet_count()
        || !claimed.iter().all(|f| c.facet_set().contains(*f))
    {
        return Err(CertificateError::NotAPermutation);
    }
    let d = match c.dimension() {
        None => return Ok(false),
        Some(d) => d,
    };
    if !c.is_pure() {
        return Ok(false);
    }
    for j in 1..cert.order.len() {
        let prefix = Complex::from_maximal(cert.order[..j].iter().cloned());
        let step = Complex::from_maximal([cert.order[j].clone()]);
        let inter = prefix.intersection(&step);
        if inter.is_empty() || !inter.is_pure() || inter.dimension() != Some(d - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides whether the divide of a d-dimensional split is acceptable
/// without further recursion (ball mode): it must be a (d-1)-ball.
fn ball_divide_ok(divide: &Complex, d: usize) -> bool {
    match d {
        3 => validation::is_2ball(divide).passed,
        2 => validation::is_path(divide),
        1 => validation::is_single_vertex(divide),
        _ => false,
    }
}

/// Top-down memoized search for a construction tree. Tries the shellability
/// fast path first (a shelling converts to a left-leaning tree); falls back
/// to exhaustive bipartition search under the facet cap.
pub fn is_constructible(
    c: &Complex,
    cfg: &SearchConfig,
) -> Result<Option<ConstructionTree>, OracleError> {
    if c.is_empty() || !c.is_pure() {
        return Ok(None);
    }
    let deadline = Instant::now() + cfg.budget;
    // fast path: shellable ⇒ constructible
    if let Ok(Some(cert)) = is_shellable(c, cfg.budget) {
        let tree = shelling_to_tree(&cert);
        if verify_construction(c, &tree, cfg) == Ok(true) {
            return Ok(Some(tree));
        }
    }
    if c.facet_count() > cfg.facet_cap {
        return Err(OracleError::BudgetExceeded {
            facets: c.facet_count(),
            cap: cfg.facet_cap,
        });
    }
    let mut memo: HashMap<BTreeSet<Simplex>, Option<Rc<ConstructionTree>>> = HashMap::new();
    let found = search_constructible(c, cfg.mode, deadline, cfg.budget, &mut memo)?;
    Ok(found.map(|t| (*t).clone()))
}

/// Left-leaning construction tree from a shelling order.
pub fn shelling_to_tree(cert: &ShellingCertificate) -> ConstructionTree {
    let mut tree = ConstructionTree::Leaf(cert.order[0].clone());
    let mut prefix = Complex::from_maximal([cert.order[0].clone()]);
    for f in &cert.order[1..] {
        let step = Complex::from_maximal([f.clone()]);
        let divide = prefix.intersection(&step);
        tree = ConstructionTree::Split {
            left: Box::new(tree),
            right: Box::new(ConstructionTree::Leaf(f.clone())),
            divide,
        };
        prefix = Complex::from_maximal(
            prefix.facet_set().iter().cloned().chain([f.clone()]),
        );
    }
    tree
}

fn search_constructible(
    c: &Complex,
    mode: Mode,
    deadline: Instant,
    budget: Duration,
    memo: &mut HashMap<BTreeSet<Simplex>, Option<Rc<ConstructionTree>>>,
) -> Result<Option<Rc<ConstructionTree>>, OracleError> {
    if let Some(hit) = memo.get(c.facet_set()) {
        return Ok(hit.clone());
    }
    if Instant::now() > deadline {
        return Err(OracleError::Timeout(budget));
    }
    let result = search_constructible_inner(c, mode, deadline, budget, memo)?;
    memo.insert(c.facet_set().clone(), result.clone());
    Ok(result)
}

fn search_constructible_inner(
    c: &Complex,
    mode: Mode,
    deadline: Instant,
    budget: Duration,
    memo: &mut HashMap<BTreeSet<Simplex>, Option<Rc<ConstructionTree>>>,
) -> Result<Option<Rc<ConstructionTree>>, OracleError> {
    let facets: Vec<Simplex> = c.facets().cloned().collect();
    let n = facets.len();
    if n == 1 {
        return Ok(Some(Rc::new(ConstructionTree::Leaf(facets[0].clone()))));
    }
    let d = c.dimension().expect("nonempty");
    if !c.is_pure() {
        return Ok(None);
    }
    if n > 63 {
        return Err(OracleError::BudgetExceeded { facets: n, cap: 63 });
    }
    if mode == Mode::Literal && d == 0 {
        // convention: a 0-dimensional complex is constructible iff it has
        // at most two vertices
        return Ok(if n == 2 {
            Some(Rc::new(ConstructionTree::Split {
                left: Box::new(ConstructionTree::Leaf(facets[0].clone())),
                right: Box::new(ConstructionTree::Leaf(facets[1].clone())),
                divide: Complex::empty(),
            }))
        } else {
            None
        });
    }
    // facet 0 pinned to the left side to halve the bipartition space
    for mask in 0u64..(1 << (n - 1)) {
        if Instant::now() > deadline {
            return Err(OracleError::Timeout(budget));
        }
        let left: Vec<Simplex> = std::iter::once(facets[0].clone())
            .chain(
                (1..n).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| facets[i].clone()),
            )
            .collect();
        if left.len() == n {
            continue;
        }
        let right: Vec<Simplex> = (1..n)
            .filter(|i| mask >> (i - 1) & 1 == 0)
            .map(|i| facets[i].clone())
            .collect();
        let ca = Complex::from_maximal(left);
        let cb = Complex::from_maximal(right);
        let divide = ca.intersection(&cb);
        let divide_ok = match mode {
            Mode::Ball => ball_divide_ok(&divide, d),
            Mode::Literal => {
                divide.is_pure()
                    && divide.dimension() == Some(d.wrapping_sub(1))
                    && d >= 1
                    && search_constructible(&divide, mode, deadline, budget, memo)?.is_some()
            }
        };
        if !divide_ok {
            continue;
        }
        let Some(lt) = search_constructible(&ca, mode, deadline, budget, memo)? else {
            continue;
        };
        let Some(rt) = search_constructible(&cb, mode, deadline, budget, memo)? else {
            continue;
        };
        return Ok(Some(Rc::new(ConstructionTree::Split {
            left: Box::new((*lt).clone()),
            right: Box::new((*rt).clone()),
            divide,
        })));
    }
    Ok(None)
}

/// Replays a construction tree: leaves must partition the facets, every
/// split must store the true intersection of its children, and every divide
/// must satisfy the mode's criterion.
pub fn verify_construction(
    c: &Complex,
    tree: &ConstructionTree,
    cfg: &SearchConfig,
) -> Result<bool, CertificateError> {
    let leaves = tree.leaf_facets();
    let leaf_set: BTreeSet<&Simplex> = leaves.iter().collect();
    if leaf_set.len() != leaves.len() || leaf_set.len() != c.facet_count()
        || !leaf_set.iter().all(|f| c.facet_set().contains(*f))
    {
        return Err(CertificateError::MalformedTree);
    }
    let deadline = Instant::now() + cfg.budget;
    verify_node(c, tree, cfg, deadline)
}

fn verify_node(
    c: &Complex,
    tree: &ConstructionTree,
    cfg: &SearchConfig,
    deadline: Instant,
) -> Result<bool, CertificateError> {
    match tree {
        ConstructionTree::Leaf(f) => {
            Ok(c.facet_count() == 1 && c.facet_set().contains(f))
        }
        ConstructionTree::Split {
            left,
            right,
            divide,
        } => {
            let d = match c.dimension() {
                None => return Ok(false),
                Some(d) => d,
            };
            let lf = left.leaf_facets();
            let rf = right.leaf_facets();
            if lf.iter().any(|f| rf.contains(f)) {
                return Ok(false);
            }
            let ca = Complex::from_maximal(lf);
            let cb = Complex::from_maximal(rf);
            if *divide != ca.intersection(&cb) {
                return Ok(false);
            }
            let divide_ok = match cfg.mode {
                Mode::Ball => ball_divide_ok(divide, d),
                Mode::Literal => {
                    if d == 0 {
                        divide.is_empty()
                    } else if !divide.is_pure() || divide.dimension() != Some(d - 1) {
                        false
                    } else {
                        let mut memo = HashMap::new();
                        match search_constructible(
                            divide,
                            Mode::Literal,
                            deadline,
                            cfg.budget,
                            &mut memo,
                        ) {
                            Ok(found) => found.is_some(),
                            Err(_) => return Err(CertificateError::BudgetExhausted),
                        }
                    }
                }
            };
            if !divide_ok {
                return Ok(false);
            }
            Ok(verify_node(&ca, left, cfg, deadline)?
                && verify_node(&cb, right, cfg, deadline)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complex, simplex};

    fn cfg(mode: Mode) -> SearchConfig {
        SearchConfig {
            mode,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn single_tetrahedron_shells_trivially() {
        let c = complex(&[&[1, 2, 3, 4]]);
        let cert = is_shellable(&c, Duration::from_secs(5)).unwrap().unwrap();
        assert_eq!(cert.order, vec![simplex(&[1, 2, 3, 4])]);
        assert_eq!(verify_shelling(&c, &cert), Ok(true));
    }

    #[test]
    fn disjoint_triangles_are_not_shellable() {
        let c = complex(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(is_shellable(&c, Duration::from_secs(5)), Ok(None));
    }

    #[test]
    fn vertex_wedge_is_not_shellable() {
        // two triangles sharing one vertex: step-2 intersection is 0-dim
        let c = complex(&[&[1, 2, 3], &[3, 4, 5]]);
        assert_eq!(is_shellable(&c, Duration::from_secs(5)), Ok(None));
        let any_order = ShellingCertificate {
            order: c.facets().cloned().collect(),
        };
        assert_eq!(verify_shelling(&c, &any_order), Ok(false));
    }

    #[test]
    fn verify_rejects_non_permutations() {
        let c = complex(&[&[1, 2, 3, 4], &[2, 3, 4, 5]]);
        let cert = ShellingCertificate {
            order: vec![simplex(&[1, 2, 3, 4]), simplex(&[1, 2, 3, 4])],
        };
        assert_eq!(
            verify_shelling(&c, &cert),
            Err(CertificateError::NotAPermutation)
        );
    }

    #[test]
    fn bipyramid_splits_on_shared_triangle() {
        let c = complex(&[&[1, 2, 3, 4], &[2, 3, 4, 5]]);
        for mode in [Mode::Ball, Mode::Literal] {
            let tree = is_constructible(&c, &cfg(mode)).unwrap().unwrap();
            assert_eq!(verify_construction(&c, &tree, &cfg(mode)), Ok(true));
            match &tree {
                ConstructionTree::Split { divide, .. } => {
                    assert_eq!(*divide, complex(&[&[2, 3, 4]]));
                }
                ConstructionTree::Leaf(_) => panic!("expected a split"),
            }
        }
    }

    #[test]
    fn disjoint_tetrahedra_are_not_constructible() {
        let c = complex(&[&[1, 2, 3, 4], &[5, 6, 7, 8]]);
        for mode in [Mode::Ball, Mode::Literal] {
            assert_eq!(is_constructible(&c, &cfg(mode)), Ok(None));
        }
        // a tree pairing them at the root has an empty divide
        let tree = ConstructionTree::Split {
            left: Box::new(ConstructionTree::Leaf(simplex(&[1, 2, 3, 4]))),
            right: Box::new(ConstructionTree::Leaf(simplex(&[5, 6, 7, 8]))),
            divide: Complex::empty(),
        };
        for mode in [Mode::Ball, Mode::Literal] {
            assert_eq!(verify_construction(&c, &tree, &cfg(mode)), Ok(false));
        }
    }

    #[test]
    fn one_sphere_is_constructible_in_literal_mode() {
        // triangle cycle: splits into two arcs meeting in two vertices,
        // which the 0-dimensional convention accepts
        let c = complex(&[&[1, 2], &[2, 3], &[1, 3]]);
        let tree = is_constructible(&c, &cfg(Mode::Literal)).unwrap().unwrap();
        assert_eq!(verify_construction(&c, &tree, &cfg(Mode::Literal)), Ok(true));
        assert!(is_shellable(&c, Duration::from_secs(5)).unwrap().is_some());
    }

    #[test]
    fn facet_cap_is_enforced_when_fast_path_fails() {
        // 15 disjoint triangles: not shellable, above the default cap
        let facets: Vec<Vec<u32>> = (0..15u32)
            .map(|i| vec![3 * i + 1, 3 * i + 2, 3 * i + 3])
            .collect();
        let refs: Vec<&[u32]> = facets.iter().map(|f| f.as_slice()).collect();
        let c = complex(&refs);
        assert_eq!(
            is_constructible(&c, &cfg(Mode::Literal)),
            Err(OracleError::BudgetExceeded {
                facets: 15,
                cap: 14
            })
        );
    }

    #[test]
    fn shelling_converts_to_a_verifiable_tree() {
        let c = complex(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let cert = is_shellable(&c, Duration::from_secs(5)).unwrap().unwrap();
        let tree = shelling_to_tree(&cert);
        for mode in [Mode::Ball, Mode::Literal] {
            assert_eq!(verify_construction(&c, &tree, &cfg(mode)), Ok(true));
        }
    }
}

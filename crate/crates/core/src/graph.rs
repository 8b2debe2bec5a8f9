//! Dual graphs of nodal curves and the Basic Inequality.
//!
//! A [`DualGraph`] has one vertex per irreducible component, weighted by its
//! arithmetic genus `pa` (self-nodes included) and its number of self-nodes,
//! and a symmetric table `k[i][j]` counting the points where two distinct
//! components meet. Self-nodes never enter `k`.
//!
//! For a subcurve `Y` (any nonempty set of components, connected or not) and
//! a total degree `d` on a curve of genus `g`,
//!
//! ```text
//! g_Y = sum_{i in Y} pa_i + E(Y) - |Y| + 1
//! k_Y = sum_{i in Y, j not in Y} k_ij
//! m_Y = d/(g-1) * (g_Y - 1 + k_Y/2) - k_Y/2
//! ```
//!
//! and a multidegree satisfies the Basic Inequality when
//! `m_Y <= d_Y <= m_Y + k_Y` for every `Y`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::subsets::{bits, full_mask, nonempty_masks};
use crate::{Error, Rational, Result};

/// Largest vertex count a [`DualGraph`] may have (subcurves are 64-bit masks).
pub const MAX_VERTICES: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub pa: u32,
    pub self_nodes: u32,
}

impl Vertex {
    pub fn new(id: impl Into<String>, pa: u32, self_nodes: u32) -> Self {
        Vertex {
            id: id.into(),
            pa,
            self_nodes,
        }
    }

    /// Genus of the normalization, `pa - self_nodes`.
    pub fn geometric_genus(&self) -> u32 {
        self.pa - self.self_nodes
    }
}

/// A vertex as it appears in a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawVertex {
    pub id: String,
    pub pa: u32,
    #[serde(default)]
    pub self_nodes: u32,
}

/// An edge as it appears in a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub u: String,
    pub v: String,
    pub multiplicity: u32,
}

/// Unvalidated graph description, exactly as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGraph {
    pub vertices: Vec<RawVertex>,
    #[serde(default)]
    pub edges: Vec<RawEdge>,
}

impl RawGraph {
    /// Checks every invariant and builds a [`DualGraph`] whose vertices are
    /// sorted by id.
    pub fn validate(&self) -> Result<DualGraph> {
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|v| Vertex::new(v.id.clone(), v.pa, v.self_nodes))
            .collect();
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in vertices.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateVertex(pair[0].id.clone()));
            }
        }
        let index: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();

        let n = vertices.len();
        let mut k = vec![vec![0u32; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for e in &self.edges {
            let i = *index
                .get(e.u.as_str())
                .ok_or_else(|| Error::UnknownVertex(e.u.clone()))?;
            let j = *index
                .get(e.v.as_str())
                .ok_or_else(|| Error::UnknownVertex(e.v.clone()))?;
            if i == j {
                return Err(Error::SelfEdge(e.u.clone()));
            }
            if seen[i][j] {
                return Err(Error::DuplicateEdge {
                    u: e.u.clone(),
                    v: e.v.clone(),
                });
            }
            seen[i][j] = true;
            seen[j][i] = true;
            k[i][j] = e.multiplicity;
            k[j][i] = e.multiplicity;
        }
        DualGraph::new(vertices, k)
    }
}

/// Validated dual graph of a connected nodal curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    k: Vec<Vec<u32>>,
}

impl DualGraph {
    /// Builds a graph from vertices and a full multiplicity table, keeping the
    /// given vertex order.
    pub fn new(vertices: Vec<Vertex>, k: Vec<Vec<u32>>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                limit: MAX_VERTICES,
            });
        }
        if k.len() != n || k.iter().any(|row| row.len() != n) {
            return Err(Error::TableShape {
                rows: k.len(),
                vertices: n,
            });
        }
        let mut ids: Vec<&str> = vertices.iter().map(|v| v.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(dup) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(dup[0].to_string()));
        }
        for i in 0..n {
            if k[i][i] != 0 {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in (i + 1)..n {
                if k[i][j] != k[j][i] {
                    return Err(Error::AsymmetricMultiplicity { i, j });
                }
            }
        }
        for v in &vertices {
            if v.pa < v.self_nodes {
                return Err(Error::NegativeGeometricGenus {
                    id: v.id.clone(),
                    pa: v.pa,
                    self_nodes: v.self_nodes,
                });
            }
        }
        let graph = DualGraph { vertices, k };
        if let Some(j) = graph.first_unreachable() {
            return Err(Error::Disconnected(
                graph.vertices[j].id.clone(),
                graph.vertices[0].id.clone(),
            ));
        }
        Ok(graph)
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, GraphParseError> {
        let raw: RawGraph = serde_json::from_str(text)?;
        Ok(raw.validate()?)
    }

    /// The split curve of genus `g`: two smooth rational components `C1`, `C2`
    /// meeting in `g + 1` points.
    pub fn split_curve(genus: u32) -> Self {
        let k = genus + 1;
        DualGraph::new(
            vec![Vertex::new("C1", 0, 0), Vertex::new("C2", 0, 0)],
            vec![vec![0, k], vec![k, 0]],
        )
        .expect("split curve is a valid dual graph")
    }

    fn first_unreachable(&self) -> Option<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && self.k[i][j] > 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.k[i][j]
    }

    pub fn multiplicities(&self) -> &[Vec<u32>] {
        &self.k
    }

    /// Number of points where component `i` meets the other components.
    pub fn valence(&self, i: usize) -> u32 {
        self.k[i].iter().sum()
    }

    /// Number of nodes joining distinct components.
    pub fn edge_count(&self) -> u32 {
        (0..self.len())
            .flat_map(|i| ((i + 1)..self.len()).map(move |j| (i, j)))
            .map(|(i, j)| self.k[i][j])
            .sum()
    }

    pub fn self_node_count(&self) -> u32 {
        self.vertices.iter().map(|v| v.self_nodes).sum()
    }

    /// `g = sum pa_i + sum_{i<j} k_ij - n + 1`.
    pub fn arithmetic_genus(&self) -> i64 {
        let pa: i64 = self.vertices.iter().map(|v| i64::from(v.pa)).sum();
        pa + i64::from(self.edge_count()) - self.len() as i64 + 1
    }

    /// Components violating `2 pa_i - 2 + sum_j k_ij > 0`.
    pub fn unstable_components(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| 2 * i64::from(self.vertices[i].pa) - 2 + i64::from(self.valence(i)) <= 0)
            .collect()
    }

    pub fn is_stable(&self) -> bool {
        self.unstable_components().is_empty()
    }

    /// Comma-separated ids of the components in `y`, in braces.
    pub fn describe(&self, y: Subcurve) -> String {
        let ids: Vec<&str> = y.iter().map(|i| self.vertices[i].id.as_str()).collect();
        format!("{{{}}}", ids.join(","))
    }

    fn check_subcurve(&self, y: Subcurve) -> Result<()> {
        if y.is_empty() {
            return Err(Error::EmptySubcurve);
        }
        if let Some(i) = y.iter().find(|&i| i >= self.len()) {
            return Err(Error::SubcurveOutOfRange(i));
        }
        Ok(())
    }

    /// `(E(Y), k_Y)`: nodes inside `Y` between distinct components, and nodes
    /// joining `Y` to its complement.
    pub(crate) fn internal_and_boundary(&self, mask: u64) -> (u64, u64) {
        let mut internal = 0u64;
        let mut boundary = 0u64;
        for i in bits(mask) {
            for (j, &kij) in self.k[i].iter().enumerate() {
                if kij == 0 {
                    continue;
                }
                if mask & (1 << j) != 0 {
                    if j > i {
                        internal += u64::from(kij);
                    }
                } else {
                    boundary += u64::from(kij);
                }
            }
        }
        (internal, boundary)
    }

    pub(crate) fn subcurve_genus_and_k(&self, mask: u64) -> (i64, u64) {
        let (internal, boundary) = self.internal_and_boundary(mask);
        let pa: i64 = bits(mask).map(|i| i64::from(self.vertices[i].pa)).sum();
        let genus = pa + internal as i64 - i64::from(mask.count_ones()) + 1;
        (genus, boundary)
    }

    fn total_genus_checked(&self) -> Result<i64> {
        let g = self.arithmetic_genus();
        if g <= 1 {
            return Err(Error::GenusTooSmall(g));
        }
        Ok(g)
    }

    /// Invariants of `y` for total degree `d_total`; `d_Y` is filled in when a
    /// multidegree is supplied.
    pub fn subcurve_profile(
        &self,
        y: Subcurve,
        d_total: i64,
        md: Option<&Multidegree>,
    ) -> Result<SubcurveProfile> {
        self.check_subcurve(y)?;
        let g = self.total_genus_checked()?;
        if let Some(md) = md {
            self.check_multidegree(md)?;
        }
        let (genus, k) = self.subcurve_genus_and_k(y.mask());
        Ok(SubcurveProfile {
            genus,
            k,
            m: lower_bound(d_total, g, genus, k),
            degree: md.map(|md| md.degree_on(y)),
        })
    }

    fn check_multidegree(&self, md: &Multidegree) -> Result<()> {
        if md.len() != self.len() {
            return Err(Error::MultidegreeLength {
                expected: self.len(),
                got: md.len(),
            });
        }
        Ok(())
    }

    /// Checks `m_Y <= d_Y <= m_Y + k_Y` on every nonempty subcurve, the whole
    /// curve included, with `d` the total of `md`.
    pub fn basic_inequality(&self, md: &Multidegree) -> Result<BiReport> {
        self.check_multidegree(md)?;
        let g = self.total_genus_checked()?;
        let d = md.total();
        let mut violations = Vec::new();
        for mask in nonempty_masks(self.len())? {
            let (genus, k) = self.subcurve_genus_and_k(mask);
            let lower = lower_bound(d, g, genus, k);
            let upper = lower + Rational::from_integer(k as i64);
            let y = Subcurve::from_mask(mask);
            let degree = md.degree_on(y);
            let dy = Rational::from_integer(degree);
            if dy < lower || dy > upper {
                violations.push(Violation {
                    subcurve: y,
                    degree,
                    lower,
                    upper,
                });
            }
        }
        Ok(BiReport { violations })
    }

    /// Every multidegree of total `d_total` satisfying the Basic Inequality,
    /// in lexicographic order of the degree vector.
    pub fn enumerate_multidegrees(&self, d_total: i64) -> Result<Vec<Multidegree>> {
        let g = self.total_genus_checked()?;
        let n = self.len();
        // Integer bounds grouped by the largest vertex of each subset, so a
        // subset is checked as soon as its last degree is fixed.
        let mut by_last: Vec<Vec<(u64, i64, i64)>> = vec![Vec::new(); n];
        for mask in nonempty_masks(n)? {
            let (genus, k) = self.subcurve_genus_and_k(mask);
            let lower = lower_bound(d_total, g, genus, k);
            let upper = lower + Rational::from_integer(k as i64);
            let last = 63 - mask.leading_zeros() as usize;
            by_last[last].push((mask, lower.ceil().to_integer(), upper.floor().to_integer()));
        }
        let single: Vec<(i64, i64)> = (0..n)
            .map(|i| {
                let (_, lo, hi) = by_last[i]
                    .iter()
                    .copied()
                    .find(|&(m, _, _)| m == 1 << i)
                    .expect("singleton subset is enumerated");
                (lo, hi)
            })
            .collect();

        let search = Search {
            n,
            d_total,
            by_last: &by_last,
            single: &single,
        };
        let (lo0, hi0) = single[0];
        let mut out: Vec<Multidegree> = (lo0..=hi0)
            .into_par_iter()
            .flat_map_iter(|d0| {
                let mut found = Vec::new();
                let mut degrees = vec![0i64; n];
                degrees[0] = d0;
                if search.prefix_ok(&degrees, 0) {
                    search.extend(&mut degrees, 1, &mut found);
                }
                found
            })
            .collect();
        // par_iter preserves order for indexed ranges; sort anyway so the
        // contract does not depend on it.
        out.sort();
        Ok(out)
    }
}

struct Search<'a> {
    n: usize,
    d_total: i64,
    by_last: &'a [Vec<(u64, i64, i64)>],
    single: &'a [(i64, i64)],
}

impl Search<'_> {
    fn prefix_ok(&self, degrees: &[i64], last: usize) -> bool {
        self.by_last[last].iter().all(|&(mask, lo, hi)| {
            let dy: i64 = bits(mask).map(|i| degrees[i]).sum();
            lo <= dy && dy <= hi
        })
    }

    fn extend(&self, degrees: &mut Vec<i64>, i: usize, out: &mut Vec<Multidegree>) {
        if i == self.n {
            out.push(Multidegree(degrees.clone()));
            return;
        }
        let assigned: i64 = degrees[..i].iter().sum();
        if i == self.n - 1 {
            degrees[i] = self.d_total - assigned;
            if self.prefix_ok(degrees, i) {
                out.push(Multidegree(degrees.clone()));
            }
            return;
        }
        let (lo, hi) = self.single[i];
        for di in lo..=hi {
            degrees[i] = di;
            if self.prefix_ok(degrees, i) {
                self.extend(degrees, i + 1, out);
            }
        }
    }
}

/// `m_Y = d/(g-1) (g_Y - 1 + k_Y/2) - k_Y/2`, exactly.
pub(crate) fn lower_bound(d_total: i64, genus: i64, genus_y: i64, k_y: u64) -> Rational {
    let k_y = k_y as i64;
    Rational::new(d_total * (2 * (genus_y - 1) + k_y), 2 * (genus - 1)) - Rational::new(k_y, 2)
}

/// Errors from reading a graph file: either malformed JSON or an invalid graph.
#[derive(Debug, thiserror::Error)]
pub enum GraphParseError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(#[from] Error),
}

/// A nonempty set of components, stored as a bitmask over vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subcurve(u64);

impl Subcurve {
    pub fn from_mask(mask: u64) -> Self {
        Subcurve(mask)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Subcurve(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn from_ids(graph: &DualGraph, ids: &[&str]) -> Result<Self> {
        let mut mask = 0u64;
        for id in ids {
            let i = graph
                .index_of(id)
                .ok_or_else(|| Error::UnknownVertex(id.to_string()))?;
            mask |= 1 << i;
        }
        Ok(Subcurve(mask))
    }

    pub fn singleton(i: usize) -> Self {
        Subcurve(1 << i)
    }

    /// The whole curve on `n` components.
    pub fn full(n: usize) -> Self {
        Subcurve(full_mask(n))
    }

    pub fn complement(self, n: usize) -> Self {
        Subcurve(full_mask(n) & !self.0)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }
}

/// Invariants of one subcurve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubcurveProfile {
    /// `g_Y`; negative for some disconnected subcurves.
    pub genus: i64,
    pub k: u64,
    pub m: Rational,
    pub degree: Option<i64>,
}

impl SubcurveProfile {
    /// `m_Y + k_Y`.
    pub fn upper(&self) -> Rational {
        self.m + Rational::from_integer(self.k as i64)
    }

    pub fn at_min(&self) -> Option<bool> {
        self.degree.map(|d| Rational::from_integer(d) == self.m)
    }

    pub fn at_max(&self) -> Option<bool> {
        self.degree.map(|d| Rational::from_integer(d) == self.upper())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub subcurve: Subcurve,
    pub degree: i64,
    pub lower: Rational,
    pub upper: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiReport {
    pub violations: Vec<Violation>,
}

impl BiReport {
    pub fn satisfied(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Degrees of a line bundle on each component, indexed like the graph's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(degrees: Vec<i64>) -> Self {
        Multidegree(degrees)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `d_Y`.
    pub fn degree_on(&self, y: Subcurve) -> i64 {
        y.iter().map(|i| self.0[i]).sum()
    }

    /// Pairs each degree with its vertex id.
    pub fn labeled<'a>(&'a self, graph: &'a DualGraph) -> impl Iterator<Item = (&'a str, i64)> {
        graph
            .vertices()
            .iter()
            .zip(&self.0)
            .map(|(v, &d)| (v.id.as_str(), d))
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for Multidegree {
    fn from(v: Vec<i64>) -> Self {
        Multidegree(v)
    }
}

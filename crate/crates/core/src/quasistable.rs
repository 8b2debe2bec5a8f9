//! Quasistable models of stable curves and spin multidegrees on them.
//!
//! Blowing up `s_ij` of the nodes between `C_i` and `C_j` and `r_i` of the
//! self-nodes of `C_i` inserts one exceptional component (smooth rational,
//! meeting the rest of the curve in two points) per blown node. Which nodes
//! are chosen does not matter for anything computed here, so a blow-up is
//! recorded by the counts alone ([`BlowupConfig`]).
//!
//! A spin structure exists on the blown-up curve exactly when every
//! non-exceptional component meets the other non-exceptional components in
//! an even number of points. Its twist `ζ ⊗ ω^t` then has degree 1 on each
//! exceptional component and
//!
//! ```text
//! d_i = (2t+1)(pa_i - 1) + t k_i + k~_i / 2
//! ```
//!
//! on the others, where `k_i` counts all points of `X_i` on other
//! components and `k~_i` only those on non-exceptional ones.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::{lower_bound, DualGraph, Multidegree, Subcurve, Vertex};
use crate::subsets::{bits, full_mask, nonempty_masks};
use crate::{Error, Rational, Result, Twist};

/// Which node of the source curve an exceptional component replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeOrigin {
    /// A node joining source components `i < j`.
    Between(usize, usize),
    /// A self-node of source component `i`.
    SelfNode(usize),
}

impl NodeOrigin {
    /// Source components touched by the node.
    pub fn endpoints(self) -> (usize, usize) {
        match self {
            NodeOrigin::Between(i, j) => (i, j),
            NodeOrigin::SelfNode(i) => (i, i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexOrigin {
    /// Strict transform of a source component.
    Component(usize),
    Exceptional(NodeOrigin),
}

/// Counts of blown-up nodes: `s[i][j]` between distinct components and
/// `r[i]` among the self-nodes of component `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlowupConfig {
    s: Vec<Vec<u32>>,
    r: Vec<u32>,
}

impl BlowupConfig {
    /// No blow-ups on a graph with `n` components.
    pub fn zero(n: usize) -> Self {
        BlowupConfig {
            s: vec![vec![0; n]; n],
            r: vec![0; n],
        }
    }

    /// Builds a configuration and checks it against `graph`.
    pub fn new(graph: &DualGraph, s: Vec<Vec<u32>>, r: Vec<u32>) -> Result<Self> {
        let cfg = BlowupConfig { s, r };
        cfg.check(graph)?;
        Ok(cfg)
    }

    /// Every node between distinct components blown up, no self-nodes.
    pub fn all_pairs(graph: &DualGraph) -> Self {
        let n = graph.len();
        BlowupConfig {
            s: graph.multiplicities().to_vec(),
            r: vec![0; n],
        }
    }

    pub fn with_pair(mut self, i: usize, j: usize, count: u32) -> Self {
        self.s[i][j] = count;
        self.s[j][i] = count;
        self
    }

    pub fn with_self(mut self, i: usize, count: u32) -> Self {
        self.r[i] = count;
        self
    }

    pub fn pair(&self, i: usize, j: usize) -> u32 {
        self.s[i][j]
    }

    pub fn self_count(&self, i: usize) -> u32 {
        self.r[i]
    }

    pub fn pair_table(&self) -> &[Vec<u32>] {
        &self.s
    }

    pub fn self_counts(&self) -> &[u32] {
        &self.r
    }

    /// Number of exceptional components the blow-up creates.
    pub fn exceptional_count(&self) -> u32 {
        let n = self.r.len();
        let pairs: u32 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| self.s[i][j])
            .sum();
        pairs + self.r.iter().sum::<u32>()
    }

    pub fn check(&self, graph: &DualGraph) -> Result<()> {
        let n = graph.len();
        if self.s.len() != n || self.s.iter().any(|row| row.len() != n) || self.r.len() != n {
            return Err(Error::TableShape {
                rows: self.s.len(),
                vertices: n,
            });
        }
        for i in 0..n {
            if self.s[i][i] != 0 {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in (i + 1)..n {
                if self.s[i][j] != self.s[j][i] {
                    return Err(Error::AsymmetricBlowup { i, j });
                }
                if self.s[i][j] > graph.multiplicity(i, j) {
                    return Err(Error::BlowupPairOutOfRange {
                        u: graph.vertex(i).id.clone(),
                        v: graph.vertex(j).id.clone(),
                        count: self.s[i][j],
                        max: graph.multiplicity(i, j),
                    });
                }
            }
            let v = graph.vertex(i);
            if self.r[i] > v.self_nodes {
                return Err(Error::BlowupSelfOutOfRange {
                    id: v.id.clone(),
                    count: self.r[i],
                    max: v.self_nodes,
                });
            }
        }
        Ok(())
    }

    /// All valid configurations on `graph`, in lexicographic order of
    /// `(s_01, s_02, .., s_{n-2,n-1}, r_0, .., r_{n-1})`.
    pub fn enumerate(graph: &DualGraph) -> Vec<BlowupConfig> {
        let n = graph.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let mut bounds: Vec<u32> = pairs.iter().map(|&(i, j)| graph.multiplicity(i, j)).collect();
        bounds.extend(graph.vertices().iter().map(|v| v.self_nodes));

        let mut out = Vec::new();
        let mut counter = vec![0u32; bounds.len()];
        loop {
            let mut cfg = BlowupConfig::zero(n);
            for (p, &(i, j)) in pairs.iter().enumerate() {
                cfg = cfg.with_pair(i, j, counter[p]);
            }
            for i in 0..n {
                cfg.r[i] = counter[pairs.len() + i];
            }
            out.push(cfg);
            // odometer, last position fastest
            let mut pos = bounds.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if counter[pos] < bounds[pos] {
                    counter[pos] += 1;
                    counter[pos + 1..].iter_mut().for_each(|c| *c = 0);
                    break;
                }
            }
        }
    }

    /// Valid configurations that carry a spin structure.
    pub fn enumerate_spin(graph: &DualGraph) -> Vec<BlowupConfig> {
        Self::enumerate(graph)
            .into_iter()
            .filter(|cfg| spin_parity(graph, cfg))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPairBlowup {
    pub u: String,
    pub v: String,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSelfBlowup {
    pub vertex: String,
    pub count: u32,
}

/// Blow-up file contents; omitted entries mean zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBlowups {
    #[serde(default)]
    pub s: Vec<RawPairBlowup>,
    #[serde(default)]
    pub r: Vec<RawSelfBlowup>,
}

impl RawBlowups {
    pub fn resolve(&self, graph: &DualGraph) -> Result<BlowupConfig> {
        let n = graph.len();
        let lookup = |id: &str| graph.index_of(id).ok_or_else(|| Error::UnknownVertex(id.into()));
        let mut cfg = BlowupConfig::zero(n);
        let mut seen = vec![vec![false; n]; n];
        for e in &self.s {
            let (i, j) = (lookup(&e.u)?, lookup(&e.v)?);
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
            cfg = cfg.with_pair(i, j, e.count);
        }
        let mut seen_self = vec![false; n];
        for e in &self.r {
            let i = lookup(&e.vertex)?;
            if seen_self[i] {
                return Err(Error::DuplicateEdge {
                    u: e.vertex.clone(),
                    v: e.vertex.clone(),
                });
            }
            seen_self[i] = true;
            cfg.r[i] = e.count;
        }
        cfg.check(graph)?;
        Ok(cfg)
    }
}

/// `k~_i = sum_j (k_ij - s_ij)` for every source component.
pub fn unblown_valences(graph: &DualGraph, cfg: &BlowupConfig) -> Vec<i64> {
    (0..graph.len())
        .map(|i| {
            (0..graph.len())
                .map(|j| i64::from(graph.multiplicity(i, j)) - i64::from(cfg.pair(i, j)))
                .sum()
        })
        .collect()
}

/// Whether the blow-up described by `cfg` underlies a spin curve: every
/// `k~_i` must be even. Self-node blow-ups play no role.
pub fn spin_parity(graph: &DualGraph, cfg: &BlowupConfig) -> bool {
    unblown_valences(graph, cfg).iter().all(|k| k % 2 == 0)
}

/// Dual graph of a blow-up, with exceptional vertices tagged by the node they
/// replace. Source components keep their indices; exceptional vertices follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasistableGraph {
    graph: DualGraph,
    origin: Vec<VertexOrigin>,
    source: DualGraph,
    config: BlowupConfig,
}

pub fn expand(graph: &DualGraph, cfg: &BlowupConfig) -> Result<QuasistableGraph> {
    QuasistableGraph::expand(graph, cfg)
}

impl QuasistableGraph {
    pub fn expand(source: &DualGraph, cfg: &BlowupConfig) -> Result<Self> {
        cfg.check(source)?;
        let n = source.len();
        let mut vertices: Vec<Vertex> = source
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| Vertex::new(v.id.clone(), v.pa - cfg.r[i], v.self_nodes - cfg.r[i]))
            .collect();
        let mut origin: Vec<VertexOrigin> = (0..n).map(VertexOrigin::Component).collect();

        for i in 0..n {
            for j in (i + 1)..n {
                for c in 0..cfg.s[i][j] {
                    let id = format!("E({},{})#{}", source.vertex(i).id, source.vertex(j).id, c + 1);
                    vertices.push(Vertex::new(id, 0, 0));
                    origin.push(VertexOrigin::Exceptional(NodeOrigin::Between(i, j)));
                }
            }
        }
        for i in 0..n {
            for c in 0..cfg.r[i] {
                let id = format!("E({})#{}", source.vertex(i).id, c + 1);
                vertices.push(Vertex::new(id, 0, 0));
                origin.push(VertexOrigin::Exceptional(NodeOrigin::SelfNode(i)));
            }
        }
        let mut ids: HashMap<&str, ()> = HashMap::new();
        for v in &vertices {
            if ids.insert(v.id.as_str(), ()).is_some() {
                return Err(Error::IdCollision(v.id.clone()));
            }
        }

        let total = vertices.len();
        let mut k = vec![vec![0u32; total]; total];
        for i in 0..n {
            for j in 0..n {
                k[i][j] = source.multiplicity(i, j) - cfg.s[i][j];
            }
        }
        for (e, o) in origin.iter().enumerate().skip(n) {
            match *o {
                VertexOrigin::Exceptional(NodeOrigin::Between(i, j)) => {
                    k[e][i] = 1;
                    k[i][e] = 1;
                    k[e][j] = 1;
                    k[j][e] = 1;
                }
                VertexOrigin::Exceptional(NodeOrigin::SelfNode(i)) => {
                    k[e][i] = 2;
                    k[i][e] = 2;
                }
                VertexOrigin::Component(_) => unreachable!("components precede exceptionals"),
            }
        }
        Ok(QuasistableGraph {
            graph: DualGraph::new(vertices, k)?,
            origin,
            source: source.clone(),
            config: cfg.clone(),
        })
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn source(&self) -> &DualGraph {
        &self.source
    }

    pub fn config(&self) -> &BlowupConfig {
        &self.config
    }

    pub fn origin(&self, v: usize) -> VertexOrigin {
        self.origin[v]
    }

    pub fn is_exceptional(&self, v: usize) -> bool {
        matches!(self.origin[v], VertexOrigin::Exceptional(_))
    }

    /// Number of non-exceptional vertices; they occupy indices `0..n`.
    pub fn component_count(&self) -> usize {
        self.source.len()
    }

    pub fn exceptional_vertices(&self) -> impl Iterator<Item = (usize, NodeOrigin)> + '_ {
        self.origin.iter().enumerate().filter_map(|(v, o)| match *o {
            VertexOrigin::Exceptional(node) => Some((v, node)),
            VertexOrigin::Component(_) => None,
        })
    }

    fn component_mask(&self) -> u64 {
        full_mask(self.component_count())
    }

    /// Contracts every exceptional vertex back to a node, reading only the
    /// expanded graph's edges.
    pub fn contract(&self) -> Result<DualGraph> {
        let n = self.component_count();
        let mut vertices: Vec<Vertex> = self.graph.vertices()[..n].to_vec();
        let mut k: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| self.graph.multiplicity(i, j)).collect())
            .collect();
        for e in n..self.graph.len() {
            let neighbours: Vec<(usize, u32)> = (0..self.graph.len())
                .filter_map(|w| {
                    let m = self.graph.multiplicity(e, w);
                    (m > 0).then_some((w, m))
                })
                .collect();
            match neighbours.as_slice() {
                [(i, 2)] => {
                    vertices[*i].pa += 1;
                    vertices[*i].self_nodes += 1;
                }
                [(i, 1), (j, 1)] => {
                    k[*i][*j] += 1;
                    k[*j][*i] += 1;
                }
                _ => return Err(Error::MalformedExceptional(self.graph.vertex(e).id.clone())),
            }
        }
        DualGraph::new(vertices, k)
    }

    /// `k~_v`: points of non-exceptional `v` on other non-exceptional components.
    pub fn ktilde(&self, v: usize) -> i64 {
        (0..self.component_count())
            .map(|w| i64::from(self.graph.multiplicity(v, w)))
            .sum()
    }

    /// Whether the curve with all exceptional components removed is connected.
    pub fn tilde_connected(&self) -> bool {
        let n = self.component_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && self.graph.multiplicity(i, j) > 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Multidegree of `ζ ⊗ ω^t` on the expanded curve.
    pub fn spin_multidegree(&self, t: Twist) -> Result<Multidegree> {
        let t = t.get();
        let degrees = (0..self.graph.len())
            .map(|v| {
                if self.is_exceptional(v) {
                    return Ok(1);
                }
                let kt = self.ktilde(v);
                if kt % 2 != 0 {
                    return Err(Error::ParityViolation {
                        id: self.graph.vertex(v).id.clone(),
                        ktilde: kt,
                    });
                }
                let pa = i64::from(self.graph.vertex(v).pa);
                let k = i64::from(self.graph.valence(v));
                Ok((2 * t + 1) * (pa - 1) + t * k + kt / 2)
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(Multidegree::new(degrees))
    }

    /// Pushes a multidegree on the expanded curve down to the source curve by
    /// adding the degree of each exceptional vertex to the source component
    /// listed for it in `sides` (one entry per exceptional vertex, in order).
    pub fn contract_multidegree(&self, md: &Multidegree, sides: &[usize]) -> Result<Multidegree> {
        let n = self.component_count();
        let exceptional: Vec<(usize, NodeOrigin)> = self.exceptional_vertices().collect();
        if md.len() != self.graph.len() {
            return Err(Error::MultidegreeLength {
                expected: self.graph.len(),
                got: md.len(),
            });
        }
        if sides.len() != exceptional.len() {
            return Err(Error::MultidegreeLength {
                expected: exceptional.len(),
                got: sides.len(),
            });
        }
        let mut out = md.degrees()[..n].to_vec();
        for (&(e, node), &side) in exceptional.iter().zip(sides) {
            let (i, j) = node.endpoints();
            if side != i && side != j {
                return Err(Error::InvalidWitness(format!(
                    "exceptional vertex {} assigned to a component it does not meet",
                    self.graph.vertex(e).id
                )));
            }
            out[side] += md.degrees()[e];
        }
        Ok(Multidegree::new(out))
    }

    fn check_subcurve(&self, y: Subcurve) -> Result<()> {
        if y.is_empty() {
            return Err(Error::EmptySubcurve);
        }
        if let Some(v) = y.iter().find(|&v| v >= self.graph.len()) {
            return Err(Error::SubcurveOutOfRange(v));
        }
        Ok(())
    }

    fn lemma_profile_unchecked(&self, mask: u64) -> LemmaBasicProfile {
        let comps = self.component_mask();
        let (delta, k) = self.graph.internal_and_boundary(mask);
        let (delta_tilde, _) = self.graph.internal_and_boundary(mask & comps);
        let k_tilde: u64 = bits(mask & comps)
            .flat_map(|i| bits(comps & !mask).map(move |j| (i, j)))
            .map(|(i, j)| u64::from(self.graph.multiplicity(i, j)))
            .sum();
        LemmaBasicProfile {
            nu: u64::from(mask.count_ones()),
            nu_tilde: u64::from((mask & comps).count_ones()),
            delta,
            delta_tilde,
            k,
            k_tilde,
        }
    }

    /// Component and intersection counts of `y` split by exceptionality.
    pub fn lemma_basic_profile(&self, y: Subcurve) -> Result<LemmaBasicProfile> {
        self.check_subcurve(y)?;
        Ok(self.lemma_profile_unchecked(y.mask()))
    }

    /// No exceptional vertex in `inside` meets a vertex outside it.
    fn exceptionals_closed(&self, inside: u64) -> bool {
        bits(inside & !self.component_mask()).all(|e| match self.origin[e] {
            VertexOrigin::Exceptional(node) => {
                let (i, j) = node.endpoints();
                inside & (1 << i) != 0 && inside & (1 << j) != 0
            }
            VertexOrigin::Component(_) => true,
        })
    }

    fn boundary_case_for(&self, md: &Multidegree, genus: i64, mask: u64) -> BoundaryCase {
        let d_total = md.total();
        let (genus_y, k_y) = self.graph.subcurve_genus_and_k(mask);
        let m = lower_bound(d_total, genus, genus_y, k_y);
        let dy = Rational::from_integer(md.degree_on(Subcurve::from_mask(mask)));
        let profile = self.lemma_profile_unchecked(mask);
        let complement = full_mask(self.graph.len()) & !mask;
        BoundaryCase {
            at_min: dy == m,
            at_max: dy == m + Rational::from_integer(k_y as i64),
            k_tilde: profile.k_tilde,
            exceptional_inside_closed: self.exceptionals_closed(mask),
            exceptional_outside_closed: self.exceptionals_closed(complement),
        }
    }

    /// Whether `d_Y` sits on either end of its Basic Inequality range, decided
    /// both by exact comparison and by the structural criterion; fails with
    /// [`Error::BoundaryMismatch`] if the two disagree.
    pub fn boundary_case(&self, t: Twist, y: Subcurve) -> Result<BoundaryCase> {
        self.check_subcurve(y)?;
        let md = self.spin_multidegree(t)?;
        let genus = self.checked_genus()?;
        let case = self.boundary_case_for(&md, genus, y.mask());
        if !case.consistent() {
            return Err(Error::BoundaryMismatch(self.graph.describe(y)));
        }
        Ok(case)
    }

    /// Runs [`Self::boundary_case`] on every nonempty subcurve and returns
    /// the subcurves where the two evaluations disagree.
    pub fn boundary_disagreements(&self, t: Twist) -> Result<Vec<Subcurve>> {
        let md = self.spin_multidegree(t)?;
        let genus = self.checked_genus()?;
        Ok(nonempty_masks(self.graph.len())?
            .filter(|&mask| !self.boundary_case_for(&md, genus, mask).consistent())
            .map(Subcurve::from_mask)
            .collect())
    }

    fn checked_genus(&self) -> Result<i64> {
        let g = self.graph.arithmetic_genus();
        if g <= 1 {
            return Err(Error::GenusTooSmall(g));
        }
        Ok(g)
    }

    /// GIT stability of the Hilbert point of the spin curve: the curve with
    /// its exceptional components removed must be connected.
    pub fn git_stable(&self) -> bool {
        self.tilde_connected()
    }

    /// Stability decided from degrees alone: no proper subcurve other than a
    /// union of exceptional components reaches `d_Y = m_Y + k_Y`.
    pub fn git_stable_by_subcurves(&self, t: Twist) -> Result<bool> {
        let md = self.spin_multidegree(t)?;
        let genus = self.checked_genus()?;
        let full = full_mask(self.graph.len());
        let comps = self.component_mask();
        for mask in nonempty_masks(self.graph.len())? {
            if mask == full || mask & comps == 0 {
                continue;
            }
            if self.boundary_case_for(&md, genus, mask).at_max {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orbit closedness: every subcurve with `d_Y = m_Y` has `k~_Y = 0`.
    /// Checked exhaustively.
    pub fn orbit_closed_check(&self, t: Twist) -> Result<bool> {
        let md = self.spin_multidegree(t)?;
        let genus = self.checked_genus()?;
        for mask in nonempty_masks(self.graph.len())? {
            let case = self.boundary_case_for(&md, genus, mask);
            if case.at_min && case.k_tilde != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Counts attached to a subcurve `Y` of a quasistable curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaBasicProfile {
    /// Components of `Y`.
    pub nu: u64,
    /// Non-exceptional components of `Y`.
    pub nu_tilde: u64,
    /// Points where two distinct components of `Y` meet.
    pub delta: u64,
    /// Same, restricted to pairs of non-exceptional components.
    pub delta_tilde: u64,
    pub k: u64,
    /// Points joining non-exceptional components of `Y` to non-exceptional
    /// components outside `Y`.
    pub k_tilde: u64,
}

impl LemmaBasicProfile {
    /// `d_Y - m_Y = 2(ν - ν~) - (δ - δ~) + k~_Y / 2` for spin multidegrees.
    pub fn excess_over_lower(&self) -> Rational {
        let exc = 2 * (self.nu - self.nu_tilde) as i64;
        Rational::from_integer(exc - (self.delta - self.delta_tilde) as i64)
            + Rational::new(self.k_tilde as i64, 2)
    }

    /// `δ - δ~ <= 2(ν - ν~)` and `(δ - δ~) + (k_Y - k~_Y) >= 2(ν - ν~)`.
    pub fn inequalities_hold(&self) -> bool {
        let exc_ends = 2 * (self.nu - self.nu_tilde);
        let inside = self.delta - self.delta_tilde;
        inside <= exc_ends && inside + (self.k - self.k_tilde) >= exc_ends
    }
}

/// Where `d_Y` sits relative to `[m_Y, m_Y + k_Y]` for a spin multidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryCase {
    /// `d_Y = m_Y`, by exact comparison.
    pub at_min: bool,
    /// `d_Y = m_Y + k_Y`, by exact comparison.
    pub at_max: bool,
    pub k_tilde: u64,
    /// No exceptional component of `Y` meets the complement.
    pub exceptional_inside_closed: bool,
    /// No exceptional component of the complement meets `Y`.
    pub exceptional_outside_closed: bool,
}

impl BoundaryCase {
    pub fn structural_min(&self) -> bool {
        self.k_tilde == 0 && self.exceptional_inside_closed
    }

    pub fn structural_max(&self) -> bool {
        self.k_tilde == 0 && self.exceptional_outside_closed
    }

    pub fn consistent(&self) -> bool {
        self.at_min == self.structural_min() && self.at_max == self.structural_max()
    }
}

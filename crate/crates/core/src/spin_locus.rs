//! Which components of the fiber over a stable curve meet the spin locus.
//!
//! A fiber component with multidegree `d` is met iff there are integers
//! `s_ij` (nodes blown up between `C_i` and `C_j`) and `σ_ij` (how many of
//! those exceptional components are grouped with `C_i`) with
//!
//! ```text
//! 0 <= s_ij <= k_ij,  s_ij = s_ji,  sum_j (k_ij - s_ij) even,
//! 0 <= σ_ij <= s_ij,  σ_ij + σ_ji = s_ij,
//! d_i = (2t+1)(g_i - 1) + t sum_j k_ij + 1/2 sum_j (k_ij - s_ij) + sum_j σ_ij.
//! ```
//!
//! For fixed `s` the σ part is an orientation problem: orient the `s_ij`
//! parallel edges so that vertex `i` receives `c_i` of them. It is solved
//! by backtracking and, independently, by max-flow.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::graph::{DualGraph, Multidegree};
use crate::{Error, Rational, Result, Twist};

/// A solution `(s, σ)` of the system above. `sigma[i][j]` is the number of
/// exceptional components over `C_i ∩ C_j` grouped with `C_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinWitness {
    pub s: Vec<Vec<u32>>,
    pub sigma: Vec<Vec<u32>>,
}

impl SpinWitness {
    pub fn check(&self, graph: &DualGraph) -> Result<()> {
        let n = graph.len();
        let bad = |msg: String| Err(Error::InvalidWitness(msg));
        if self.s.len() != n
            || self.sigma.len() != n
            || self.s.iter().chain(&self.sigma).any(|row| row.len() != n)
        {
            return bad(format!("tables must be {n} x {n}"));
        }
        for i in 0..n {
            if self.s[i][i] != 0 || self.sigma[i][i] != 0 {
                return bad(format!("nonzero diagonal at {i}"));
            }
            let mut unblown = 0i64;
            for j in 0..n {
                let (s, k) = (self.s[i][j], graph.multiplicity(i, j));
                if s > k {
                    return bad(format!("s[{i}][{j}] = {s} exceeds k = {k}"));
                }
                if s != self.s[j][i] {
                    return bad(format!("s not symmetric at ({i}, {j})"));
                }
                if self.sigma[i][j] > s {
                    return bad(format!("sigma[{i}][{j}] exceeds s"));
                }
                if self.sigma[i][j] + self.sigma[j][i] != s {
                    return bad(format!("sigma[{i}][{j}] + sigma[{j}][{i}] != s[{i}][{j}]"));
                }
                unblown += i64::from(k) - i64::from(s);
            }
            if unblown % 2 != 0 {
                return bad(format!("sum_j (k - s) is odd at vertex {i}"));
            }
        }
        Ok(())
    }
}

/// How the σ system is solved for a fixed `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SigmaStrategy {
    #[default]
    Backtrack,
    Flow,
    /// Run both and fail with [`Error::SolverDisagreement`] if they differ.
    CrossCheck,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect()
}

/// `(2t+1)(g_i - 1) + t sum_j k_ij + 1/2 sum_j (k_ij - s_ij)`; `s` must pass the
/// parity condition.
fn base_degrees(graph: &DualGraph, s: &[Vec<u32>], t: i64) -> Vec<i64> {
    (0..graph.len())
        .map(|i| {
            let g_i = i64::from(graph.vertex(i).pa);
            let valence = i64::from(graph.valence(i));
            let unblown: i64 = (0..graph.len())
                .map(|j| i64::from(graph.multiplicity(i, j)) - i64::from(s[i][j]))
                .sum();
            (2 * t + 1) * (g_i - 1) + t * valence + unblown / 2
        })
        .collect()
}

/// Multidegree assigned to the fiber component reached by `witness`.
pub fn grouped_multidegree(graph: &DualGraph, witness: &SpinWitness, t: Twist) -> Result<Multidegree> {
    witness.check(graph)?;
    let base = base_degrees(graph, &witness.s, t.get());
    let degrees = base
        .into_iter()
        .enumerate()
        .map(|(i, b)| b + witness.sigma[i].iter().map(|&x| i64::from(x)).sum::<i64>())
        .collect();
    Ok(Multidegree::new(degrees))
}

/// Every symmetric `s` with `0 <= s_ij <= k_ij` and even `sum_j (k_ij - s_ij)`,
/// in lexicographic order over the pairs `i < j`.
pub fn parity_tables(graph: &DualGraph) -> Vec<Vec<Vec<u32>>> {
    let n = graph.len();
    let pairs = pairs(n);
    // a vertex's parity can be checked once its last incident pair is set
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    let mut isolated = Vec::new();
    for v in 0..n {
        match pairs.iter().rposition(|&(i, j)| i == v || j == v) {
            Some(p) => closes[p].push(v),
            None => isolated.push(v),
        }
    }
    let unblown_parity = |s: &[Vec<u32>], v: usize| {
        (0..n)
            .map(|j| graph.multiplicity(v, j) - s[v][j])
            .sum::<u32>()
            % 2
            == 0
    };
    if !isolated.iter().all(|&v| unblown_parity(&vec![vec![0; n]; n], v)) {
        return Vec::new();
    }

    fn walk(
        p: usize,
        pairs: &[(usize, usize)],
        closes: &[Vec<usize>],
        graph: &DualGraph,
        s: &mut Vec<Vec<u32>>,
        ok: &dyn Fn(&[Vec<u32>], usize) -> bool,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if p == pairs.len() {
            out.push(s.clone());
            return;
        }
        let (i, j) = pairs[p];
        for v in 0..=graph.multiplicity(i, j) {
            s[i][j] = v;
            s[j][i] = v;
            if closes[p].iter().all(|&u| ok(s, u)) {
                walk(p + 1, pairs, closes, graph, s, ok, out);
            }
        }
        s[i][j] = 0;
        s[j][i] = 0;
    }

    let mut out = Vec::new();
    let mut s = vec![vec![0u32; n]; n];
    walk(0, &pairs, &closes, graph, &mut s, &unblown_parity, &mut out);
    out
}

/// Orients the multigraph with `counts[p]` parallel edges on `pairs[p]` so that
/// vertex `i` is the head of exactly `indegree[i]` edges. Returns, for each
/// pair `(i, j)`, how many edges point at `i`; the answer is the
/// lexicographically smallest such vector.
pub fn orient_with_indegrees(
    n: usize,
    pairs: &[(usize, usize)],
    counts: &[u32],
    indegree: &[i64],
    strategy: SigmaStrategy,
) -> Result<Option<Vec<u32>>> {
    let total: i64 = counts.iter().map(|&c| i64::from(c)).sum();
    if indegree.len() != n || indegree.iter().any(|&c| c < 0) || indegree.iter().sum::<i64>() != total {
        return Ok(None);
    }
    match strategy {
        SigmaStrategy::Backtrack => Ok(orient_backtrack(n, pairs, counts, indegree)),
        SigmaStrategy::Flow => Ok(orient_flow(n, pairs, counts, indegree)),
        SigmaStrategy::CrossCheck => {
            let a = orient_backtrack(n, pairs, counts, indegree);
            let b = orient_flow(n, pairs, counts, indegree);
            if a != b {
                return Err(Error::SolverDisagreement(counts.to_vec()));
            }
            Ok(a)
        }
    }
}

fn orient_backtrack(n: usize, pairs: &[(usize, usize)], counts: &[u32], indegree: &[i64]) -> Option<Vec<u32>> {
    // capacity[v]: edges at v not yet oriented
    let mut capacity = vec![0i64; n];
    for (&(i, j), &c) in pairs.iter().zip(counts) {
        capacity[i] += i64::from(c);
        capacity[j] += i64::from(c);
    }
    let mut need = indegree.to_vec();
    if (0..n).any(|v| need[v] > capacity[v]) {
        return None;
    }

    fn go(
        p: usize,
        pairs: &[(usize, usize)],
        counts: &[u32],
        need: &mut [i64],
        capacity: &mut [i64],
        chosen: &mut Vec<u32>,
    ) -> bool {
        if p == pairs.len() {
            return need.iter().all(|&x| x == 0);
        }
        let (i, j) = pairs[p];
        let c = i64::from(counts[p]);
        capacity[i] -= c;
        capacity[j] -= c;
        for toward_i in 0..=c {
            let toward_j = c - toward_i;
            need[i] -= toward_i;
            need[j] -= toward_j;
            let fits = need[i] >= 0 && need[j] >= 0 && need[i] <= capacity[i] && need[j] <= capacity[j];
            if fits {
                chosen.push(toward_i as u32);
                if go(p + 1, pairs, counts, need, capacity, chosen) {
                    return true;
                }
                chosen.pop();
            }
            need[i] += toward_i;
            need[j] += toward_j;
        }
        capacity[i] += c;
        capacity[j] += c;
        false
    }

    let mut chosen = Vec::with_capacity(pairs.len());
    go(0, pairs, counts, &mut need, &mut capacity, &mut chosen).then_some(chosen)
}

/// Max-flow on source -> pair -> endpoint -> sink. To return the same
/// lexicographically smallest answer as the backtracking route, each pair is
/// fixed in turn to the smallest value that keeps the rest feasible.
fn orient_flow(n: usize, pairs: &[(usize, usize)], counts: &[u32], indegree: &[i64]) -> Option<Vec<u32>> {
    let feasible = |fixed: &[u32]| -> bool {
        let mut need = indegree.to_vec();
        for (p, &toward_i) in fixed.iter().enumerate() {
            let (i, j) = pairs[p];
            need[i] -= i64::from(toward_i);
            need[j] -= i64::from(counts[p]) - i64::from(toward_i);
        }
        if need.iter().any(|&x| x < 0) {
            return false;
        }
        let rest = &pairs[fixed.len()..];
        let rest_counts = &counts[fixed.len()..];
        let demand: i64 = rest_counts.iter().map(|&c| i64::from(c)).sum();
        max_flow_orientation(n, rest, rest_counts, &need) == demand && need.iter().sum::<i64>() == demand
    };
    if !feasible(&[]) {
        return None;
    }
    let mut fixed: Vec<u32> = Vec::with_capacity(pairs.len());
    for &count in counts {
        let value = (0..=count).find(|&v| {
            fixed.push(v);
            let ok = feasible(&fixed);
            fixed.pop();
            ok
        })?;
        fixed.push(value);
    }
    Some(fixed)
}

fn max_flow_orientation(n: usize, pairs: &[(usize, usize)], counts: &[u32], need: &[i64]) -> i64 {
    let source = 0;
    let pair_node = |p: usize| 1 + p;
    let vertex_node = |v: usize| 1 + pairs.len() + v;
    let sink = 1 + pairs.len() + n;
    let size = sink + 1;
    let mut cap = vec![vec![0i64; size]; size];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let c = i64::from(counts[p]);
        cap[source][pair_node(p)] = c;
        cap[pair_node(p)][vertex_node(i)] = c;
        cap[pair_node(p)][vertex_node(j)] = c;
    }
    for (v, &x) in need.iter().enumerate() {
        cap[vertex_node(v)][sink] = x;
    }

    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; size];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for w in 0..size {
                if parent[w] == usize::MAX && cap[u][w] > 0 {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut bottleneck = i64::MAX;
        let mut w = sink;
        while w != source {
            bottleneck = bottleneck.min(cap[parent[w]][w]);
            w = parent[w];
        }
        let mut w = sink;
        while w != source {
            let u = parent[w];
            cap[u][w] -= bottleneck;
            cap[w][u] += bottleneck;
            w = u;
        }
        flow += bottleneck;
    }
}

/// Decides whether the fiber component with multidegree `md` meets the spin
/// locus. Returns the lexicographically smallest witness `(s, σ)`, or `None`.
///
/// Fails with [`Error::NotAFiberComponent`] when `md` violates the Basic
/// Inequality, since then it indexes no component at all.
pub fn decide_spin_component(graph: &DualGraph, t: Twist, md: &Multidegree) -> Result<Option<SpinWitness>> {
    decide_spin_component_with(graph, t, md, SigmaStrategy::default())
}

pub fn decide_spin_component_with(
    graph: &DualGraph,
    t: Twist,
    md: &Multidegree,
    strategy: SigmaStrategy,
) -> Result<Option<SpinWitness>> {
    let report = graph.basic_inequality(md)?;
    if !report.satisfied() {
        return Err(Error::NotAFiberComponent(report.violations.len()));
    }
    let n = graph.len();
    let pairs = pairs(n);
    for s in parity_tables(graph) {
        let base = base_degrees(graph, &s, t.get());
        let indegree: Vec<i64> = md.degrees().iter().zip(&base).map(|(d, b)| d - b).collect();
        let counts: Vec<u32> = pairs.iter().map(|&(i, j)| s[i][j]).collect();
        if let Some(toward) = orient_with_indegrees(n, &pairs, &counts, &indegree, strategy)? {
            let mut sigma = vec![vec![0u32; n]; n];
            for (p, &(i, j)) in pairs.iter().enumerate() {
                sigma[i][j] = toward[p];
                sigma[j][i] = counts[p] - toward[p];
            }
            return Ok(Some(SpinWitness { s, sigma }));
        }
    }
    Ok(None)
}

/// Multidegrees of all fiber components met by the spin locus, sorted.
pub fn enumerate_spin_multidegrees(graph: &DualGraph, t: Twist) -> BTreeSet<Multidegree> {
    let n = graph.len();
    let pairs = pairs(n);
    parity_tables(graph)
        .into_par_iter()
        .map(|s| {
            let base = base_degrees(graph, &s, t.get());
            // reachable σ row sums, built pair by pair
            let mut reach: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; n]]);
            for &(i, j) in &pairs {
                let c = i64::from(s[i][j]);
                if c == 0 {
                    continue;
                }
                reach = reach
                    .iter()
                    .flat_map(|row| {
                        (0..=c).map(move |toward_i| {
                            let mut next = row.clone();
                            next[i] += toward_i;
                            next[j] += c - toward_i;
                            next
                        })
                    })
                    .collect();
            }
            reach
                .into_iter()
                .map(|row| Multidegree::new(row.iter().zip(&base).map(|(r, b)| r + b).collect()))
                .collect::<BTreeSet<_>>()
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            a.append(&mut b);
            a
        })
}

/// One row of the closed-form table for the split curve of genus `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplitCurveRow {
    pub genus: i64,
    pub t: i64,
    /// Number of exceptional components.
    pub s: i64,
    pub sigma: i64,
    pub d1: i64,
    pub d2: i64,
}

impl SplitCurveRow {
    pub fn bidegree(&self) -> (i64, i64) {
        (self.d1, self.d2)
    }
}

/// Closed-form bidegrees on the split curve of genus `g`:
/// `d_1 = (t + 1/2)(g + 1) - (2t + 1) - s/2 + σ` and symmetrically for `d_2`,
/// over `σ <= s <= g + 1` with `s ≡ g + 1 (mod 2)`.
pub fn split_curve_table(genus: i64, t: Twist) -> Result<Vec<SplitCurveRow>> {
    if genus < 3 {
        return Err(Error::GenusBelowThree(genus));
    }
    let tt = t.get();
    let half = Rational::new(1, 2);
    let common = (Rational::from_integer(tt) + half) * Rational::from_integer(genus + 1)
        - Rational::from_integer(2 * tt + 1);
    let mut rows = Vec::new();
    for s in ((genus + 1) % 2..=genus + 1).step_by(2) {
        for sigma in 0..=s {
            let shift = -half * Rational::from_integer(s) + Rational::from_integer(sigma);
            let d1 = common + shift;
            let d2 = common - shift;
            if !d1.is_integer() || !d2.is_integer() {
                return Err(Error::NonIntegralBidegree { g: genus, s });
            }
            let row = SplitCurveRow {
                genus,
                t: tt,
                s,
                sigma,
                d1: d1.to_integer(),
                d2: d2.to_integer(),
            };
            debug_assert_eq!(row.d1 + row.d2, t.total_degree(genus));
            rows.push(row);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn t10() -> Twist {
        Twist::new(10).unwrap()
    }

    fn two(pa1: u32, pa2: u32, k: u32) -> DualGraph {
        DualGraph::new(
            vec![Vertex::new("C1", pa1, 0), Vertex::new("C2", pa2, 0)],
            vec![vec![0, k], vec![k, 0]],
        )
        .unwrap()
    }

    fn triangle() -> DualGraph {
        DualGraph::new(
            vec![Vertex::new("A", 1, 0), Vertex::new("B", 1, 0), Vertex::new("C", 1, 0)],
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        )
        .unwrap()
    }

    fn witness2(s: u32, sigma12: u32) -> SpinWitness {
        SpinWitness {
            s: vec![vec![0, s], vec![s, 0]],
            sigma: vec![vec![0, sigma12], vec![s - sigma12, 0]],
        }
    }

    #[test]
    fn grouped_examples() {
        let split = DualGraph::split_curve(3);
        let md = grouped_multidegree(&split, &witness2(4, 0), t10()).unwrap();
        assert_eq!(md.degrees(), &[19, 23]);
        let md = grouped_multidegree(&split, &witness2(0, 0), t10()).unwrap();
        assert_eq!(md.degrees(), &[21, 21]);
    }

    #[test]
    fn grouped_extreme_witness() {
        let g = triangle();
        let s = g.multiplicities().to_vec();
        // σ_ij = k_ij for i < j, 0 otherwise
        let sigma: Vec<Vec<u32>> = (0..3)
            .map(|i| (0..3).map(|j| if i < j { s[i][j] } else { 0 }).collect())
            .collect();
        let md = grouped_multidegree(&g, &SpinWitness { s, sigma }, t10()).unwrap();
        assert_eq!(md.degrees(), &[22, 21, 20]);
    }

    #[test]
    fn grouped_rejects_bad_witness() {
        let split = DualGraph::split_curve(3);
        assert!(matches!(
            grouped_multidegree(&split, &witness2(1, 0), t10()),
            Err(Error::InvalidWitness(_))
        ));
        let mut w = witness2(4, 1);
        w.sigma[1][0] = 1;
        assert!(grouped_multidegree(&split, &w, t10()).is_err());
    }

    #[test]
    fn decide_examples() {
        let split = DualGraph::split_curve(3);
        let w = decide_spin_component(&split, t10(), &vec![19, 23].into())
            .unwrap()
            .unwrap();
        assert_eq!(w, witness2(4, 0));

        let w = decide_spin_component(&split, t10(), &vec![21, 21].into())
            .unwrap()
            .unwrap();
        assert_eq!(w, witness2(0, 0));

        let g = two(1, 1, 3);
        let w = decide_spin_component(&g, t10(), &vec![30, 33].into()).unwrap().unwrap();
        assert_eq!(w, witness2(3, 0));
    }

    #[test]
    fn decide_rejects_non_components() {
        let split = DualGraph::split_curve(3);
        assert_eq!(
            decide_spin_component(&split, t10(), &vec![18, 24].into()),
            Err(Error::NotAFiberComponent(2))
        );
    }

    #[test]
    fn strategies_agree_on_examples() {
        let g = triangle();
        for md in g.enumerate_multidegrees(t10().total_degree(4)).unwrap() {
            let a = decide_spin_component_with(&g, t10(), &md, SigmaStrategy::Backtrack).unwrap();
            let b = decide_spin_component_with(&g, t10(), &md, SigmaStrategy::Flow).unwrap();
            assert_eq!(a, b);
            decide_spin_component_with(&g, t10(), &md, SigmaStrategy::CrossCheck).unwrap();
        }
    }

    #[test]
    fn enumerate_examples() {
        let split = DualGraph::split_curve(3);
        let all: Vec<Vec<i64>> = enumerate_spin_multidegrees(&split, t10())
            .into_iter()
            .map(Multidegree::into_vec)
            .collect();
        assert_eq!(
            all,
            vec![vec![19, 23], vec![20, 22], vec![21, 21], vec![22, 20], vec![23, 19]]
        );

        let firsts: Vec<i64> = enumerate_spin_multidegrees(&two(1, 1, 3), t10())
            .iter()
            .map(|md| md.degrees()[0])
            .collect();
        assert_eq!(firsts, vec![30, 31, 32, 33]);

        let tri = enumerate_spin_multidegrees(&triangle(), t10());
        let mut expected: BTreeSet<Multidegree> = BTreeSet::from([vec![21, 21, 21].into()]);
        for p in [[20, 21, 22], [20, 22, 21], [21, 20, 22], [21, 22, 20], [22, 20, 21], [22, 21, 20]] {
            expected.insert(p.to_vec().into());
        }
        assert_eq!(tri, expected);
    }

    #[test]
    fn parity_tables_triangle() {
        let tables = parity_tables(&triangle());
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[0], vec![vec![0; 3]; 3]);
        assert_eq!(tables[1], vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn split_table_examples() {
        let rows = split_curve_table(3, t10()).unwrap();
        let s_values: BTreeSet<i64> = rows.iter().map(|r| r.s).collect();
        assert_eq!(s_values, BTreeSet::from([0, 2, 4]));
        let bidegrees: BTreeSet<(i64, i64)> = rows.iter().map(SplitCurveRow::bidegree).collect();
        assert_eq!(
            bidegrees,
            BTreeSet::from([(19, 23), (20, 22), (21, 21), (22, 20), (23, 19)])
        );

        // g = 4: 52.5 - 21 - s/2 + σ with s odd
        let rows = split_curve_table(4, t10()).unwrap();
        assert!(rows.iter().all(|r| r.s % 2 == 1 && r.d1 + r.d2 == 63));
        let r = rows.iter().find(|r| r.s == 1 && r.sigma == 0).unwrap();
        assert_eq!(r.bidegree(), (31, 32));

        for g in [3, 5, 7] {
            let rows = split_curve_table(g, t10()).unwrap();
            let r = rows.iter().find(|r| r.s == g + 1 && r.sigma == (g + 1) / 2).unwrap();
            assert_eq!(r.d1, r.d2);
        }

        assert_eq!(split_curve_table(2, t10()), Err(Error::GenusBelowThree(2)));
    }
}

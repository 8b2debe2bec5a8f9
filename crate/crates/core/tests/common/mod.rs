#![allow(dead_code)]

use spinlocus::graph::Vertex;
use spinlocus::DualGraph;

/// Bounds of an exhaustive family of small dual graphs.
#[derive(Debug, Clone, Copy)]
pub struct CorpusBounds {
    pub max_vertices: usize,
    pub max_multiplicity: u32,
    pub max_self_nodes: u32,
    /// Geometric genus of every component ranges over `0..=max_geometric_genus`.
    pub max_geometric_genus: u32,
    /// Cap on `sum k_ij + sum self_nodes`.
    pub max_nodes: u32,
    pub min_genus: i64,
}

/// Every connected stable dual graph within `bounds`, one per isomorphism
/// class, in a fixed order.
pub fn stable_graphs(bounds: CorpusBounds) -> Vec<DualGraph> {
    let mut out = Vec::new();
    for n in 1..=bounds.max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let weights: Vec<(u32, u32)> = (0..=bounds.max_self_nodes)
            .flat_map(|s| (0..=bounds.max_geometric_genus).map(move |h| (s + h, s)))
            .collect();
        let mut ks = vec![0u32; pairs.len()];
        loop {
            let edge_nodes: u32 = ks.iter().sum();
            if edge_nodes <= bounds.max_nodes {
                let mut ws = vec![0u32; n];
                loop {
                    let self_total: u32 = ws.iter().map(|&w| weights[w as usize].1).sum();
                    if edge_nodes + self_total <= bounds.max_nodes {
                        let key = encode(n, &pairs, &ks, &ws);
                        if is_canonical(n, &pairs, &ks, &ws, &key) {
                            let vertices = ws
                                .iter()
                                .enumerate()
                                .map(|(i, &w)| Vertex::new(format!("C{}", i + 1), weights[w as usize].0, weights[w as usize].1))
                                .collect();
                            let mut k = vec![vec![0u32; n]; n];
                            for (p, &(i, j)) in pairs.iter().enumerate() {
                                k[i][j] = ks[p];
                                k[j][i] = ks[p];
                            }
                            if let Ok(g) = DualGraph::new(vertices, k) {
                                if g.is_stable() && g.arithmetic_genus() >= bounds.min_genus {
                                    out.push(g);
                                }
                            }
                        }
                    }
                    if !bump(&mut ws, weights.len() as u32 - 1) {
                        break;
                    }
                }
            }
            if !bump(&mut ks, bounds.max_multiplicity) {
                break;
            }
        }
    }
    out
}

fn bump(digits: &mut [u32], max: u32) -> bool {
    for d in digits.iter_mut().rev() {
        if *d < max {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

fn encode(n: usize, pairs: &[(usize, usize)], ks: &[u32], ws: &[u32]) -> Vec<u64> {
    let mut key: Vec<u64> = ws.iter().map(|&w| u64::from(w)).collect();
    let mut k = vec![vec![0u32; n]; n];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        k[i][j] = ks[p];
    }
    key.extend(pairs.iter().map(|&(i, j)| u64::from(k[i][j])));
    key
}

fn is_canonical(n: usize, pairs: &[(usize, usize)], ks: &[u32], ws: &[u32], key: &[u64]) -> bool {
    let mut full = vec![vec![0u32; n]; n];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        full[i][j] = ks[p];
        full[j][i] = ks[p];
    }
    permutations(n).into_iter().all(|perm| {
        // vertex perm[a] of the original becomes vertex a
        let ws2: Vec<u32> = (0..n).map(|a| ws[perm[a]]).collect();
        let ks2: Vec<u32> = pairs.iter().map(|&(a, b)| full[perm[a]][perm[b]]).collect();
        encode(n, pairs, &ks2, &ws2).as_slice() >= key
    })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `graph` with its vertices reordered so that new vertex `a` is old vertex `perm[a]`.
pub fn relabel(graph: &DualGraph, perm: &[usize]) -> DualGraph {
    let n = graph.len();
    let vertices = (0..n).map(|a| graph.vertex(perm[a]).clone()).collect();
    let k = (0..n)
        .map(|a| (0..n).map(|b| graph.multiplicity(perm[a], perm[b])).collect())
        .collect();
    DualGraph::new(vertices, k).unwrap()
}

/// The corpus for the Basic Inequality and stability checks on blow-ups.
pub const BLOWUP_CORPUS: CorpusBounds = CorpusBounds {
    max_vertices: 4,
    max_multiplicity: 4,
    max_self_nodes: 2,
    max_geometric_genus: 1,
    max_nodes: 7,
    min_genus: 2,
};

/// The corpus for comparing blow-up-and-partition against the grouped formula.
pub const PARTITION_CORPUS: CorpusBounds = CorpusBounds {
    max_vertices: 3,
    max_multiplicity: 4,
    max_self_nodes: 1,
    max_geometric_genus: 1,
    max_nodes: 12,
    min_genus: 2,
};

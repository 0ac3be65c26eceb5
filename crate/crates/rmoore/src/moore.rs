//! Moore bounds, Moore status constants, and the canonical Moore tree.
//!
//! For degrees `(r, z)` the number of vertices reachable at distance `i`
//! from any vertex of a hypothetical mixed Moore graph follows a two-term
//! recurrence: a vertex reached through an edge spends one edge slot on its
//! parent and offers `r-1` further edges plus `z` arcs, while a vertex
//! reached through an arc offers all `r` edges plus `z` arcs. Summing the
//! layers gives the Moore bound `M(r, z, k)`; weighting them by depth gives
//! the per-vertex Moore status.
//!
//! The recurrence is used directly instead of the equivalent closed-form
//! matrix expression so that the `r + 2z = 2` cases need no special-casing.

use crate::error::{Error, Result};
use crate::graph::MixedGraph;

/// Layer counts and status constants of a hypothetical mixed Moore graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreProfile {
    pub r: usize,
    pub z: usize,
    pub k: usize,
    /// Vertices at distance `0..=k` from a root; `layer_counts[0] == 1`.
    pub layer_counts: Vec<u64>,
    /// Total order `M(r, z, k)`.
    pub m: u64,
    /// Status of one vertex: `sum_i i * layer_counts[i]`.
    pub s_per_vertex: u64,
    /// `m * s_per_vertex`.
    pub s_total: u64,
}

fn check_params(r: usize, z: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    if r + z == 0 {
        return Err(Error::InvalidParams("r + z must be at least 1".into()));
    }
    Ok(())
}

/// Layer recurrence: `u_1 = r`, `d_1 = z`,
/// `u_{i+1} = (r-1) u_i + r d_i`, `d_{i+1} = z (u_i + d_i)`.
pub fn moore_profile(r: usize, z: usize, k: usize) -> Result<MooreProfile> {
    check_params(r, z, k)?;
    let (r64, z64) = (r as u64, z as u64);
    let mut layer_counts = vec![1u64];
    let (mut u, mut d) = (r64, z64);
    for _ in 1..=k {
        layer_counts.push(u + d);
        let next_u = r64.saturating_sub(1) * u + r64 * d;
        let next_d = z64 * (u + d);
        u = next_u;
        d = next_d;
    }
    let m: u64 = layer_counts.iter().sum();
    let s_per_vertex: u64 = layer_counts
        .iter()
        .enumerate()
        .map(|(i, &c)| i as u64 * c)
        .sum();
    Ok(MooreProfile { r, z, k, layer_counts, m, s_per_vertex, s_total: m * s_per_vertex })
}

/// The mixed Moore bound `M(r, z, k)`.
pub fn moore_bound(r: usize, z: usize, k: usize) -> Result<u64> {
    Ok(moore_profile(r, z, k)?.m)
}

/// Moore status of one vertex and of the whole hypothetical graph.
pub fn moore_status(r: usize, z: usize, k: usize) -> Result<(u64, u64)> {
    let p = moore_profile(r, z, k)?;
    Ok((p.s_per_vertex, p.s_total))
}

/// Kind of link from a tree vertex to its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkKind {
    Edge,
    Arc,
}

/// The canonical Moore tree for `k = 2`, rooted at vertex 0.
///
/// Labeling: root 0; undirected level-1 children `1..=r`; directed level-1
/// children `r+1..=r+z`; level-2 vertices numbered consecutively, grouped by
/// parent in parent order, undirected children before directed children
/// within each parent. All arcs point away from the root, so every vertex
/// lies within distance 2 of the root.
#[derive(Debug, Clone)]
pub struct MooreTree {
    pub r: usize,
    pub z: usize,
    pub graph: MixedGraph,
    /// Parent of each vertex; the root is its own parent.
    parent: Vec<usize>,
    /// Link kind to the parent; `Edge` for the root (unused).
    kind: Vec<LinkKind>,
    /// Per-vertex ranges of undirected and directed children.
    u_children: Vec<std::ops::Range<usize>>,
    d_children: Vec<std::ops::Range<usize>>,
}

impl MooreTree {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn link_kind(&self, v: usize) -> LinkKind {
        self.kind[v]
    }

    pub fn level(&self, v: usize) -> usize {
        if v == 0 {
            0
        } else if v <= self.r + self.z {
            1
        } else {
            2
        }
    }

    /// Level-1 vertices attached to the root by an edge: `1..=r`.
    pub fn level1_undirected(&self) -> std::ops::Range<usize> {
        1..self.r + 1
    }

    /// Level-1 vertices attached to the root by an arc: `r+1..=r+z`.
    pub fn level1_directed(&self) -> std::ops::Range<usize> {
        self.r + 1..self.r + self.z + 1
    }

    pub fn undirected_children(&self, v: usize) -> std::ops::Range<usize> {
        self.u_children[v].clone()
    }

    pub fn directed_children(&self, v: usize) -> std::ops::Range<usize> {
        self.d_children[v].clone()
    }
}

/// Builds the canonical Moore tree for `(r, z)` and `k = 2`.
pub fn moore_tree(r: usize, z: usize) -> Result<MooreTree> {
    let profile = moore_profile(r, z, 2)?;
    let n = profile.m as usize;
    let mut parent = vec![0usize; n];
    let mut kind = vec![LinkKind::Edge; n];
    let mut u_children = vec![0..0; n];
    let mut d_children = vec![0..0; n];
    let mut edges = Vec::new();
    let mut arcs = Vec::new();

    u_children[0] = 1..r + 1;
    d_children[0] = r + 1..r + z + 1;
    for c in 1..=r {
        parent[c] = 0;
        kind[c] = LinkKind::Edge;
        edges.push((0, c));
    }
    for c in r + 1..=r + z {
        parent[c] = 0;
        kind[c] = LinkKind::Arc;
        arcs.push((0, c));
    }

    let mut next = r + z + 1;
    for p in 1..=r + z {
        // An edge-attached parent has one edge slot spent on the root.
        let ucount = if p <= r { r.saturating_sub(1) } else { r };
        u_children[p] = next..next + ucount;
        for c in u_children[p].clone() {
            parent[c] = p;
            kind[c] = LinkKind::Edge;
            edges.push((p, c));
        }
        next += ucount;
        d_children[p] = next..next + z;
        for c in d_children[p].clone() {
            parent[c] = p;
            kind[c] = LinkKind::Arc;
            arcs.push((p, c));
        }
        next += z;
    }
    debug_assert_eq!(next, n);

    let graph = MixedGraph::new(n, edges, arcs)?;
    Ok(MooreTree { r, z, graph, parent, kind, u_children, d_children })
}

/// Status 1-norm: `N1 = sum_v |s(v) - s_{r,z,k}|`.
///
/// Requires the graph order to equal `M(r, z, k)` and all pairs reachable.
pub fn status_norm1(g: &MixedGraph, r: usize, z: usize, k: usize) -> Result<u64> {
    let profile = moore_profile(r, z, k)?;
    if g.n() as u64 != profile.m {
        return Err(Error::OrderMismatch { order: g.n(), expected: profile.m });
    }
    let status = g.status_vector()?;
    Ok(status
        .per_vertex
        .iter()
        .map(|&s| s.abs_diff(profile.s_per_vertex))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// `(r, z)` parameter rows with their Moore bounds `M(r, z, 2)`.
    const BOUND_ROWS: [(usize, usize, u64); 13] = [
        (1, 1, 6),
        (2, 1, 11),
        (1, 2, 12),
        (3, 1, 18),
        (2, 2, 19),
        (1, 3, 20),
        (3, 2, 28),
        (2, 3, 29),
        (3, 3, 40),
        (4, 1, 27),
        (4, 2, 39),
        (2, 4, 41),
        (5, 1, 38),
    ];

    #[test]
    fn bound_matches_known_orders() {
        for (r, z, m) in BOUND_ROWS {
            assert_eq!(moore_bound(r, z, 2).unwrap(), m, "M({r},{z},2)");
        }
    }

    #[test]
    fn bound_of_directed_triangle_parameters() {
        assert_eq!(moore_bound(0, 1, 2).unwrap(), 3);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(matches!(moore_bound(0, 0, 2), Err(Error::InvalidParams(_))));
        assert!(matches!(moore_bound(1, 1, 0), Err(Error::InvalidParams(_))));
    }

    /// Closed-form oracle: `M = 1 + [1 1](B^k - I)(r, 2z)^T / (r + 2z - 2)`
    /// with `B = [[r-1, r], [z, z]]`, evaluated in exact integer arithmetic.
    /// This is the geometric-sum form of the layer recurrence, valid for
    /// `r + 2z != 2`.
    fn closed_form(r: i128, z: i128, k: usize) -> i128 {
        type M2 = [[i128; 2]; 2];
        fn mul(a: M2, b: M2) -> M2 {
            let mut c = [[0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                }
            }
            c
        }
        let b: M2 = [[r - 1, r], [z, z]];
        let mut bk: M2 = [[1, 0], [0, 1]];
        for _ in 0..k {
            bk = mul(bk, b);
        }
        let diff: M2 = [[bk[0][0] - 1, bk[0][1]], [bk[1][0], bk[1][1] - 1]];
        let row = [diff[0][0] + diff[1][0], diff[0][1] + diff[1][1]];
        let num = row[0] * r + row[1] * 2 * z;
        let den = r + 2 * z - 2;
        assert_eq!(num % den, 0, "closed form must divide exactly");
        1 + num / den
    }

    #[test]
    fn recurrence_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut checked = 0;
        while checked < 100 {
            let r = rng.gen_range(0..=6usize);
            let z = rng.gen_range(0..=6usize);
            let k = rng.gen_range(1..=5usize);
            if r + z == 0 || r + 2 * z == 2 {
                continue;
            }
            let expected = closed_form(r as i128, z as i128, k);
            assert_eq!(
                moore_bound(r, z, k).unwrap() as i128,
                expected,
                "({r},{z},{k})"
            );
            checked += 1;
        }
    }

    #[test]
    fn recurrence_covers_singular_denominator_cases() {
        // r + 2z = 2: the closed form divides by zero, the recurrence does not.
        assert_eq!(moore_bound(2, 0, 2).unwrap(), 5);
        assert_eq!(moore_bound(0, 1, 2).unwrap(), 3);
        assert_eq!(moore_bound(2, 0, 3).unwrap(), 7);
    }

    #[test]
    fn moore_status_values() {
        // Layers (1, 2, 3) for (1,1,2).
        assert_eq!(moore_status(1, 1, 2).unwrap(), (8, 48));
        // Layers (1, 3, 7) for (2,1,2).
        assert_eq!(moore_status(2, 1, 2).unwrap(), (17, 187));
    }

    #[test]
    fn moore_status_at_radius_one_is_degree() {
        for (r, z) in [(1, 1), (3, 2), (0, 4), (5, 0)] {
            let (s, total) = moore_status(r, z, 1).unwrap();
            assert_eq!(s, (r + z) as u64);
            assert_eq!(total, (1 + r + z) as u64 * (r + z) as u64);
        }
    }

    #[test]
    fn tree_2_1_has_expected_shape() {
        let t = moore_tree(2, 1).unwrap();
        assert_eq!(t.n(), 11);
        assert_eq!(t.graph.edge_count(), 6);
        assert_eq!(t.graph.arc_count(), 4);
        let edges: Vec<_> = t.graph.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 4), (2, 6), (3, 8), (3, 9)]);
        let arcs: Vec<_> = t.graph.arcs().collect();
        assert_eq!(arcs, vec![(0, 3), (1, 5), (2, 7), (3, 10)]);
    }

    #[test]
    fn tree_1_1_has_expected_shape() {
        let t = moore_tree(1, 1).unwrap();
        assert_eq!(t.n(), 6);
        let edges: Vec<_> = t.graph.edges().collect();
        assert_eq!(edges, vec![(0, 1), (2, 4)]);
        let arcs: Vec<_> = t.graph.arcs().collect();
        assert_eq!(arcs, vec![(0, 2), (1, 3), (2, 5)]);
    }

    #[test]
    fn tree_counts_and_degree_budgets() {
        for (r, z, _) in BOUND_ROWS {
            let t = moore_tree(r, z).unwrap();
            let m = moore_bound(r, z, 2).unwrap() as usize;
            assert_eq!(t.n(), m);
            assert_eq!(t.graph.edge_count(), r * (r + z));
            assert_eq!(t.graph.arc_count(), z * (1 + r + z));
            assert_eq!(t.graph.edge_count() + t.graph.arc_count(), m - 1);
            let dp = t.graph.degree_profile();
            for v in 0..m {
                assert!(dp.undirected[v] <= r);
                assert!(dp.out[v] <= z);
                assert!(dp.inc[v] <= z);
            }
            // Root uses its full budget inside the tree.
            assert_eq!(dp.undirected[0], r);
            assert_eq!(dp.out[0], z);
        }
    }

    #[test]
    fn tree_root_reaches_everything_within_two() {
        for (r, z) in [(1, 1), (2, 1), (1, 2), (3, 3), (0, 2), (3, 0)] {
            let t = moore_tree(r, z).unwrap();
            let dm = t.graph.distances();
            let max = (0..t.n()).map(|v| dm.get(0, v)).max().unwrap();
            assert!(max <= 2);
            if t.n() > 1 + r + z {
                assert_eq!(max, 2);
            }
        }
    }

    #[test]
    fn norm1_of_true_moore_graph_is_zero() {
        let cycle = MixedGraph::new(3, vec![], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(status_norm1(&cycle, 0, 1, 2).unwrap(), 0);
    }

    #[test]
    fn norm1_checks_order() {
        let k3 = MixedGraph::new(3, vec![(0, 1), (0, 2), (1, 2)], vec![]).unwrap();
        assert!(matches!(
            status_norm1(&k3, 1, 1, 2),
            Err(Error::OrderMismatch { order: 3, expected: 6 })
        ));
    }

    #[test]
    fn norm1_rejects_unreachable_pairs() {
        let t = moore_tree(1, 1).unwrap();
        // The tree itself has the right order but leaves cannot reach back.
        assert!(matches!(
            status_norm1(&t.graph, 1, 1, 2),
            Err(Error::UnreachablePair(_, _))
        ));
    }
}

//! Mixed-graph representation and the distance-based invariants built on it.
//!
//! A mixed graph has a set of undirected edges and a set of directed arcs
//! over vertices `0..n-1`. Between any two vertices at most one of
//! edge `{u,v}`, arc `(u,v)`, arc `(v,u)` may be present, and there are no
//! self-loops. Distances follow edges in both directions and arcs forward
//! only, so `d(u,v)` and `d(v,u)` may differ.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Unreachable-pair sentinel, strictly larger than any achievable distance.
pub const INF: u32 = u32::MAX;

/// A mixed graph on vertices `0..n-1` with edges `{u,v}` and arcs `(u,v)`.
///
/// Edges are stored with `u < v`; both sets are kept sorted so that
/// serialization is canonical. Construction validates the no-loop and
/// one-of-three invariants; instances are immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    arcs: BTreeSet<(usize, usize)>,
}

impl MixedGraph {
    pub fn new<E, A>(n: usize, edges: E, arcs: A) -> Result<Self>
    where
        E: IntoIterator<Item = (usize, usize)>,
        A: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = MixedGraph { n, edges: BTreeSet::new(), arcs: BTreeSet::new() };
        for (u, v) in edges {
            g.check_pair(u, v)?;
            let e = (u.min(v), u.max(v));
            g.edges.insert(e);
        }
        for (u, v) in arcs {
            g.check_pair(u, v)?;
            if g.edges.contains(&(u.min(v), u.max(v))) || g.arcs.contains(&(v, u)) {
                return Err(Error::ConflictingPair(u, v));
            }
            g.arcs.insert((u, v));
        }
        Ok(g)
    }

    /// Empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        MixedGraph { n, edges: BTreeSet::new(), arcs: BTreeSet::new() }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::InvalidVertex { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::InvalidVertex { vertex: v, n: self.n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// True if the pair `{u,v}` carries any link (edge or arc in either direction).
    pub fn has_link(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Out-adjacency lists: edges both ways plus arcs forward.
    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for &(u, v) in &self.arcs {
            adj[u].push(v);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// All-pairs shortest directed-walk distances, one BFS per source.
    pub fn distances(&self) -> DistanceMatrix {
        let adj = self.out_adjacency();
        let n = self.n;
        let mut d = vec![INF; n * n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            d[s * n + s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = d[s * n + u];
                for &w in &adj[u] {
                    if d[s * n + w] == INF {
                        d[s * n + w] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n, d }
    }

    /// Per-vertex status `s(v) = sum_u d(v,u)` and the total status.
    ///
    /// Errors with [`Error::UnreachablePair`] if any vertex cannot reach
    /// some other vertex; infinite distances are never summed.
    pub fn status_vector(&self) -> Result<StatusVector> {
        let dm = self.distances();
        let mut per_vertex = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut s = 0u64;
            for u in 0..self.n {
                let duv = dm.get(v, u);
                if duv == INF {
                    return Err(Error::UnreachablePair(v, u));
                }
                s += u64::from(duv);
            }
            per_vertex.push(s);
        }
        let total = per_vertex.iter().sum();
        Ok(StatusVector { per_vertex, total })
    }

    /// Out-eccentricities, radius, diameter, and the set of central vertices.
    pub fn eccentricity_profile(&self) -> EccentricityProfile {
        let dm = self.distances();
        let ecc: Vec<u32> = (0..self.n)
            .map(|v| (0..self.n).map(|u| dm.get(v, u)).max().unwrap_or(0))
            .collect();
        let radius = ecc.iter().copied().min().unwrap_or(0);
        let diameter = ecc.iter().copied().max().unwrap_or(0);
        let central = (0..self.n).filter(|&v| ecc[v] == radius).collect();
        EccentricityProfile { ecc, radius, diameter, central }
    }

    /// Per-vertex undirected, out-, and in-degrees.
    pub fn degree_profile(&self) -> DegreeProfile {
        let mut undirected = vec![0usize; self.n];
        let mut out = vec![0usize; self.n];
        let mut inc = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            undirected[u] += 1;
            undirected[v] += 1;
        }
        for &(u, v) in &self.arcs {
            out[u] += 1;
            inc[v] += 1;
        }
        DegreeProfile { undirected, out, inc }
    }

    /// Canonical text form: header `p mrg <n> <r> <z>`, then sorted `e u v`
    /// lines (u < v), then sorted `a u v` lines.
    pub fn to_text(&self, r: usize, z: usize) -> String {
        let mut out = String::new();
        writeln!(out, "p mrg {} {} {}", self.n, r, z).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        for &(u, v) in &self.arcs {
            writeln!(out, "a {u} {v}").unwrap();
        }
        out
    }

    /// Parses the text form; returns the graph and the declared `(r, z)`.
    ///
    /// Lines starting with `#` are comments. Edge endpoints are normalized
    /// to `u < v`; a later [`to_text`](Self::to_text) is therefore canonical.
    pub fn from_text(text: &str) -> Result<(Self, usize, usize)> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut edges = Vec::new();
        let mut arcs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let tag = it.next().unwrap();
            let fields: Vec<&str> = it.collect();
            let bad = |what: &str| Error::Parse(format!("line {}: {}", lineno + 1, what));
            match tag {
                "p" => {
                    if header.is_some() {
                        return Err(bad("duplicate header"));
                    }
                    if fields.len() != 4 || fields[0] != "mrg" {
                        return Err(bad("expected `p mrg <n> <r> <z>`"));
                    }
                    let n = fields[1].parse().map_err(|_| bad("bad vertex count"))?;
                    let r = fields[2].parse().map_err(|_| bad("bad r"))?;
                    let z = fields[3].parse().map_err(|_| bad("bad z"))?;
                    header = Some((n, r, z));
                }
                "e" | "a" => {
                    if header.is_none() {
                        return Err(bad("link line before header"));
                    }
                    if fields.len() != 2 {
                        return Err(bad("expected two endpoints"));
                    }
                    let u: usize = fields[0].parse().map_err(|_| bad("bad endpoint"))?;
                    let v: usize = fields[1].parse().map_err(|_| bad("bad endpoint"))?;
                    if tag == "e" {
                        edges.push((u.min(v), u.max(v)));
                    } else {
                        arcs.push((u, v));
                    }
                }
                _ => return Err(bad("unknown line tag")),
            }
        }
        let (n, r, z) = header.ok_or_else(|| Error::Parse("missing `p mrg` header".into()))?;
        let g = MixedGraph::new(n, edges, arcs)?;
        Ok((g, r, z))
    }

    pub fn write_file(&self, path: &std::path::Path, r: usize, z: usize) -> Result<()> {
        std::fs::write(path, self.to_text(r, z))?;
        Ok(())
    }

    pub fn read_file(path: &std::path::Path) -> Result<(Self, usize, usize)> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }
}

/// All-pairs distances; `INF` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn is_finite(&self, u: usize, v: usize) -> bool {
        self.get(u, v) != INF
    }
}

/// Per-vertex status and total status of a graph with all pairs reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatusVector {
    pub per_vertex: Vec<u64>,
    pub total: u64,
}

/// Out-eccentricities with the derived radius, diameter, and central set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccentricityProfile {
    pub ecc: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
    /// Vertices attaining the radius.
    pub central: Vec<usize>,
}

/// Per-vertex degree counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub undirected: Vec<usize>,
    pub out: Vec<usize>,
    pub inc: Vec<usize>,
}

impl DegreeProfile {
    /// True if every vertex has undirected degree `r` and in- = out-degree `z`.
    pub fn is_totally_regular(&self, r: usize, z: usize) -> bool {
        self.undirected.iter().all(|&d| d == r)
            && self.out.iter().all(|&d| d == z)
            && self.inc.iter().all(|&d| d == z)
    }
}

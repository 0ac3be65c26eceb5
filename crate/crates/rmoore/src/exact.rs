//! Exact branch-and-bound over typed adjacency slots.
//!
//! The search decides, for every unordered vertex pair (a *slot*), one of
//! five relations: undecided, none, edge, forward arc, backward arc. This
//! enforces the one-of-three rule and edge symmetry structurally, shrinking
//! the depth from the model's `n^2` binary variables to `n(n-1)/2` slots.
//! Moore-tree slots are pre-decided and never branched.
//!
//! Slots are branched in lexicographic order with values tried in the order
//! edge, forward arc, backward arc, none. A node is pruned when
//!
//! 1. some vertex cannot meet its degree budgets with its remaining
//!    undecided slots,
//! 2. an admissible status lower bound reaches the incumbent, or
//! 3. a decided prefix already violates one of the lexicographic
//!    symmetry-breaking constraints derived from Moore-tree automorphisms.
//!
//! The bound sums, per vertex, the status it would have if as many vertices
//! as still possible were at distance 2 and the rest at distance 3; with no
//! decisions that degenerates to the Moore status, which is also the global
//! lower bound reported on timeout.
//!
//! Leaves are totally regular by construction; they are accepted when every
//! pair is within distance 3, the radius is exactly 2, and the diameter is
//! exactly 3 — the radial-Moore definition. Diameter-2 completions are true
//! mixed Moore graphs (they exist for `r = 1`, the Kautz digraphs) and have
//! strictly smaller status, so admitting them would change the reported
//! minima; they are excluded here and handled by the verifier when supplied
//! externally.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::moore::{moore_profile, moore_tree, MooreProfile, MooreTree};

/// Relation decided for one unordered slot `{i, j}` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Undecided,
    None,
    Edge,
    /// Arc from the smaller to the larger endpoint.
    ArcFwd,
    /// Arc from the larger to the smaller endpoint.
    ArcBwd,
}

const VALUE_ORDER: [Rel; 4] = [Rel::Edge, Rel::ArcFwd, Rel::ArcBwd, Rel::None];

fn lex_code(rel: Rel) -> u8 {
    match rel {
        Rel::Undecided => unreachable!("lex comparison needs decided values"),
        Rel::None => 0,
        Rel::Edge => 1,
        Rel::ArcFwd => 2,
        Rel::ArcBwd => 3,
    }
}

fn flip_orientation(rel: Rel) -> Rel {
    match rel {
        Rel::ArcFwd => Rel::ArcBwd,
        Rel::ArcBwd => Rel::ArcFwd,
        other => other,
    }
}

/// Options for [`solve_exact`].
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub time_limit: Duration,
    pub threads: usize,
    /// Recorded in the report; the exact search itself is deterministic.
    pub seed: u64,
    /// Stop as soon as the incumbent status reaches this value (the search
    /// then reports `proved_optimal = false`).
    pub target_status: Option<u64>,
    /// Prune via lexicographic Moore-tree symmetry constraints. Disabling
    /// explores the raw completion space; useful for cross-checking optima.
    pub symmetry_breaking: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            time_limit: Duration::from_secs(300),
            threads: 1,
            seed: 0,
            target_status: None,
            symmetry_breaking: true,
        }
    }
}

/// Outcome of an exact or heuristic run.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub method: String,
    pub best_status: Option<u64>,
    pub lower_bound: u64,
    pub proved_optimal: bool,
    pub nodes_explored: u64,
    pub wall_time_s: f64,
    pub seed: u64,
    #[serde(skip)]
    pub best_graph: Option<MixedGraph>,
}

/// Vertex partition into interchangeable groups of the canonical Moore tree:
/// level-2 vertices with the same parent and link kind, and level-1 vertices
/// of the same kind (their subtrees are isomorphic by construction). This
/// refines the true automorphism orbit partition, which may additionally fuse
/// level-2 groups across interchangeable parents.
pub fn symmetry_orbits(tree: &MooreTree) -> Vec<Vec<usize>> {
    let mut orbits = vec![vec![0]];
    let level1_u: Vec<usize> = tree.level1_undirected().collect();
    if !level1_u.is_empty() {
        orbits.push(level1_u);
    }
    let level1_d: Vec<usize> = tree.level1_directed().collect();
    if !level1_d.is_empty() {
        orbits.push(level1_d);
    }
    for p in 1..=tree.r + tree.z {
        let uc: Vec<usize> = tree.undirected_children(p).collect();
        if !uc.is_empty() {
            orbits.push(uc);
        }
        let dc: Vec<usize> = tree.directed_children(p).collect();
        if !dc.is_empty() {
            orbits.push(dc);
        }
    }
    orbits
}

/// Tree automorphisms used for symmetry breaking: adjacent-twin swaps inside
/// each level-2 group, and adjacent same-kind level-1 swaps composed with the
/// pointwise swap of their (identically shaped) subtrees.
fn tree_automorphism_generators(tree: &MooreTree) -> Vec<Vec<usize>> {
    let n = tree.n();
    let mut gens = Vec::new();
    let mut push_transposition = |a: usize, b: usize| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        gens.push(perm);
    };
    for p in 1..=tree.r + tree.z {
        let uc = tree.undirected_children(p);
        for c in uc.start..uc.end.saturating_sub(1) {
            push_transposition(c, c + 1);
        }
        let dc = tree.directed_children(p);
        for c in dc.start..dc.end.saturating_sub(1) {
            push_transposition(c, c + 1);
        }
    }
    let mut push_level1_swap = |a: usize, b: usize| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        let (ua, ub) = (tree.undirected_children(a), tree.undirected_children(b));
        debug_assert_eq!(ua.len(), ub.len());
        for (x, y) in ua.zip(ub) {
            perm.swap(x, y);
        }
        let (da, db) = (tree.directed_children(a), tree.directed_children(b));
        debug_assert_eq!(da.len(), db.len());
        for (x, y) in da.zip(db) {
            perm.swap(x, y);
        }
        gens.push(perm);
    };
    for a in tree.level1_undirected() {
        if a + 1 < tree.level1_undirected().end {
            push_level1_swap(a, a + 1);
        }
    }
    for a in tree.level1_directed() {
        if a + 1 < tree.level1_directed().end {
            push_level1_swap(a, a + 1);
        }
    }
    debug_assert!(gens.iter().all(|perm| permutation_preserves_tree(tree, perm)));
    gens
}

#[allow(dead_code)]
fn permutation_preserves_tree(tree: &MooreTree, perm: &[usize]) -> bool {
    tree.graph.edges().all(|(u, v)| tree.graph.has_edge(perm[u], perm[v]))
        && tree.graph.arcs().all(|(u, v)| tree.graph.has_arc(perm[u], perm[v]))
}

/// Per-generator slot permutation with orientation flips.
#[derive(Debug, Clone)]
struct SlotPerm {
    map: Vec<usize>,
    flip: Vec<bool>,
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The partial assignment: slot relations, per-vertex budgets, a decision
/// trail via the DFS stack, and decided out-neighborhood masks.
#[derive(Debug, Clone)]
struct SearchCore {
    n: usize,
    degree: u64,
    layer2: u64,
    pairs: Vec<(usize, usize)>,
    rel: Vec<Rel>,
    /// Non-tree slots in lexicographic order; the DFS branches on these.
    free_slots: Vec<usize>,
    rem_r: Vec<i64>,
    rem_out: Vec<i64>,
    rem_in: Vec<i64>,
    undecided_at: Vec<i64>,
    out_mask: Vec<u64>,
    slot_perms: Vec<SlotPerm>,
}

impl SearchCore {
    fn new(tree: &MooreTree, profile: &MooreProfile) -> Self {
        let n = tree.n();
        let (r, z) = (tree.r as i64, tree.z as i64);
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        let mut slot_of = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                slot_of[i * n + j] = pairs.len();
                pairs.push((i, j));
            }
        }

        let slot_perms = tree_automorphism_generators(tree)
            .iter()
            .map(|perm| {
                let mut map = vec![0usize; pairs.len()];
                let mut flip = vec![false; pairs.len()];
                for (s, &(i, j)) in pairs.iter().enumerate() {
                    let (a, b) = (perm[i], perm[j]);
                    map[s] = slot_of[a.min(b) * n + a.max(b)];
                    flip[s] = a > b;
                }
                SlotPerm { map, flip }
            })
            .collect();

        let mut core = SearchCore {
            n,
            degree: (tree.r + tree.z) as u64,
            layer2: profile.layer_counts[2],
            pairs,
            rel: Vec::new(),
            free_slots: Vec::new(),
            rem_r: vec![r; n],
            rem_out: vec![z; n],
            rem_in: vec![z; n],
            undecided_at: vec![(n - 1) as i64; n],
            out_mask: vec![0; n],
            slot_perms,
        };
        core.rel = vec![Rel::Undecided; core.pairs.len()];

        for (u, v) in tree.graph.edges() {
            let s = slot_of[u.min(v) * n + u.max(v)];
            core.apply(s, Rel::Edge);
        }
        for (u, v) in tree.graph.arcs() {
            let s = slot_of[u.min(v) * n + u.max(v)];
            core.apply(s, if u < v { Rel::ArcFwd } else { Rel::ArcBwd });
        }
        debug_assert!((0..n).all(|v| {
            core.rem_r[v] >= 0 && core.rem_out[v] >= 0 && core.rem_in[v] >= 0
        }));
        core.free_slots =
            (0..core.pairs.len()).filter(|&s| core.rel[s] == Rel::Undecided).collect();
        core
    }

    fn apply(&mut self, slot: usize, value: Rel) {
        let (i, j) = self.pairs[slot];
        debug_assert_eq!(self.rel[slot], Rel::Undecided);
        self.rel[slot] = value;
        self.undecided_at[i] -= 1;
        self.undecided_at[j] -= 1;
        match value {
            Rel::Edge => {
                self.rem_r[i] -= 1;
                self.rem_r[j] -= 1;
                self.out_mask[i] |= 1 << j;
                self.out_mask[j] |= 1 << i;
            }
            Rel::ArcFwd => {
                self.rem_out[i] -= 1;
                self.rem_in[j] -= 1;
                self.out_mask[i] |= 1 << j;
            }
            Rel::ArcBwd => {
                self.rem_out[j] -= 1;
                self.rem_in[i] -= 1;
                self.out_mask[j] |= 1 << i;
            }
            Rel::None => {}
            Rel::Undecided => unreachable!(),
        }
    }

    fn undo(&mut self, slot: usize, value: Rel) {
        let (i, j) = self.pairs[slot];
        debug_assert_eq!(self.rel[slot], value);
        self.rel[slot] = Rel::Undecided;
        self.undecided_at[i] += 1;
        self.undecided_at[j] += 1;
        match value {
            Rel::Edge => {
                self.rem_r[i] += 1;
                self.rem_r[j] += 1;
                self.out_mask[i] &= !(1 << j);
                self.out_mask[j] &= !(1 << i);
            }
            Rel::ArcFwd => {
                self.rem_out[i] += 1;
                self.rem_in[j] += 1;
                self.out_mask[i] &= !(1 << j);
            }
            Rel::ArcBwd => {
                self.rem_out[j] += 1;
                self.rem_in[i] += 1;
                self.out_mask[j] &= !(1 << i);
            }
            Rel::None => {}
            Rel::Undecided => unreachable!(),
        }
    }

    fn allowed(&self, slot: usize, value: Rel) -> bool {
        let (i, j) = self.pairs[slot];
        match value {
            Rel::Edge => self.rem_r[i] > 0 && self.rem_r[j] > 0,
            Rel::ArcFwd => self.rem_out[i] > 0 && self.rem_in[j] > 0,
            Rel::ArcBwd => self.rem_out[j] > 0 && self.rem_in[i] > 0,
            Rel::None => true,
            Rel::Undecided => false,
        }
    }

    /// Degree-budget counting check for the endpoints of the decided slot.
    fn counting_ok(&self, slot: usize) -> bool {
        let (i, j) = self.pairs[slot];
        [i, j].into_iter().all(|v| {
            self.undecided_at[v] >= self.rem_r[v] + self.rem_out[v] + self.rem_in[v]
        })
    }

    /// Conservative lexicographic check of `vec(X) <= vec(g(X))` for every
    /// generator; prunes only when a decided prefix already violates it.
    fn lex_ok(&self) -> bool {
        'gens: for perm in &self.slot_perms {
            for s in 0..self.rel.len() {
                let a = self.rel[s];
                if a == Rel::Undecided {
                    continue 'gens;
                }
                let b = self.rel[perm.map[s]];
                if b == Rel::Undecided {
                    continue 'gens;
                }
                let b = if perm.flip[s] { flip_orientation(b) } else { b };
                match lex_code(a).cmp(&lex_code(b)) {
                    std::cmp::Ordering::Less => continue 'gens,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    /// Admissible status lower bound: per vertex, cap the number of vertices
    /// that could end up at distance 2 and charge the rest distance 3.
    ///
    /// The cap counts, for each decided out-neighbor `w`, the decided targets
    /// of `w` outside `{v}` and `v`'s decided out-neighborhood plus all of
    /// `w`'s still-open out capacity; each future edge neighbor can add at
    /// most `r+z-1` (one slot returns to `v`) and each future arc target at
    /// most `r+z`.
    fn status_bound(&self) -> u64 {
        let n = self.n as u64;
        let per_vertex_base = 3 * (n - 1) - 2 * self.degree;
        let mut bound = 0u64;
        for v in 0..self.n {
            let mut cap = self.rem_r[v] as u64 * self.degree.saturating_sub(1)
                + self.rem_out[v] as u64 * self.degree;
            let exclude = self.out_mask[v] | (1 << v);
            let mut nb = self.out_mask[v];
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                cap += u64::from((self.out_mask[w] & !exclude).count_ones())
                    + (self.rem_r[w] + self.rem_out[w]) as u64;
            }
            bound += per_vertex_base - cap.min(self.layer2);
        }
        bound
    }

    /// Status check at a complete assignment: every vertex must reach every
    /// other within 3, the radius must be exactly 2, and the diameter
    /// exactly 3.
    fn leaf_status(&self) -> Option<u64> {
        let full = full_mask(self.n);
        let mut total = 0u64;
        let mut min_ecc = u32::MAX;
        let mut max_ecc = 0u32;
        for v in 0..self.n {
            let m1 = self.out_mask[v];
            let mut reach2 = m1;
            let mut nb = m1;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                reach2 |= self.out_mask[w];
            }
            let d2_mask = reach2 & !m1 & !(1 << v);
            let mut reach3 = reach2 | (1 << v);
            let mut nb = d2_mask;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                reach3 |= self.out_mask[w];
            }
            if reach3 != full {
                return None;
            }
            let d1 = u64::from(m1.count_ones());
            let d2 = u64::from(d2_mask.count_ones());
            let d3 = (self.n as u64 - 1) - d1 - d2;
            total += d1 + 2 * d2 + 3 * d3;
            let ecc = if d3 > 0 {
                3
            } else if d2 > 0 {
                2
            } else {
                u32::from(d1 > 0)
            };
            min_ecc = min_ecc.min(ecc);
            max_ecc = max_ecc.max(ecc);
        }
        (min_ecc == 2 && max_ecc == 3).then_some(total)
    }

    fn to_graph(&self) -> MixedGraph {
        let mut edges = Vec::new();
        let mut arcs = Vec::new();
        for (s, &(i, j)) in self.pairs.iter().enumerate() {
            match self.rel[s] {
                Rel::Edge => edges.push((i, j)),
                Rel::ArcFwd => arcs.push((i, j)),
                Rel::ArcBwd => arcs.push((j, i)),
                _ => {}
            }
        }
        MixedGraph::new(self.n, edges, arcs).expect("slot relations are well-formed")
    }
}

struct Shared {
    /// Best status so far; `u64::MAX` means none.
    incumbent: AtomicU64,
    best: Mutex<BestState>,
    nodes: AtomicU64,
    stop: AtomicBool,
    timed_out: AtomicBool,
    deadline: Instant,
    target: Option<u64>,
}

#[derive(Default)]
struct BestState {
    best: Option<(u64, Vec<Rel>)>,
    /// Incumbent statuses in improvement order.
    trace: Vec<u64>,
}

impl Shared {
    fn incumbent(&self) -> u64 {
        self.incumbent.load(Ordering::Relaxed)
    }

    fn offer(&self, status: u64, rel: &[Rel]) {
        let mut guard = self.best.lock().unwrap();
        let current = guard.best.as_ref().map_or(u64::MAX, |(s, _)| *s);
        if status < current {
            guard.best = Some((status, rel.to_vec()));
            guard.trace.push(status);
            self.incumbent.store(status, Ordering::Relaxed);
            if self.target.is_some_and(|t| status <= t) {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
    }
}

struct Worker<'a> {
    core: SearchCore,
    shared: &'a Shared,
    nodes: u64,
    tick: u32,
}

impl<'a> Worker<'a> {
    fn stopping(&mut self) -> bool {
        self.tick += 1;
        if self.tick & 0xff == 0 && Instant::now() >= self.shared.deadline {
            self.shared.timed_out.store(true, Ordering::Relaxed);
            self.shared.stop.store(true, Ordering::Relaxed);
        }
        self.shared.stop.load(Ordering::Relaxed)
    }

    fn dfs(&mut self, depth: usize) {
        if self.stopping() {
            return;
        }
        let Some(&slot) = self.core.free_slots.get(depth) else {
            if let Some(status) = self.core.leaf_status() {
                if status < self.shared.incumbent() {
                    self.shared.offer(status, &self.core.rel);
                }
            }
            return;
        };
        for value in VALUE_ORDER {
            if !self.core.allowed(slot, value) {
                continue;
            }
            self.core.apply(slot, value);
            self.nodes += 1;
            let incumbent = self.shared.incumbent();
            if self.core.counting_ok(slot)
                && self.core.lex_ok()
                && (incumbent == u64::MAX || self.core.status_bound() < incumbent)
            {
                self.dfs(depth + 1);
            }
            self.core.undo(slot, value);
            if self.shared.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// Exact search for a minimum-status radial Moore graph for `(r, z)`, `k = 2`.
///
/// Returns [`Error::Infeasible`] when the search space is exhausted without a
/// feasible leaf; on timeout the incumbent (possibly none) is returned with
/// `proved_optimal = false` and the Moore status as the lower bound.
pub fn solve_exact(r: usize, z: usize, opts: &SolveOptions) -> Result<SearchReport> {
    Ok(solve_exact_traced(r, z, opts)?.0)
}

pub(crate) fn solve_exact_traced(
    r: usize,
    z: usize,
    opts: &SolveOptions,
) -> Result<(SearchReport, Vec<u64>)> {
    let profile = moore_profile(r, z, 2)?;
    if profile.m > 64 {
        return Err(Error::InvalidParams(format!(
            "order M({r},{z},2) = {} exceeds the exact-search limit of 64",
            profile.m
        )));
    }
    let tree = moore_tree(r, z)?;
    let mut core = SearchCore::new(&tree, &profile);
    if !opts.symmetry_breaking {
        core.slot_perms.clear();
    }
    let start = Instant::now();
    let shared = Shared {
        incumbent: AtomicU64::new(u64::MAX),
        best: Mutex::new(BestState::default()),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        timed_out: AtomicBool::new(false),
        deadline: start + opts.time_limit,
        target: opts.target_status,
    };

    if opts.threads <= 1 {
        let mut worker = Worker { core, shared: &shared, nodes: 0, tick: 0 };
        worker.dfs(0);
        shared.nodes.store(worker.nodes, Ordering::Relaxed);
    } else {
        run_parallel(core, &shared, opts.threads);
    }

    let timed_out = shared.timed_out.load(Ordering::Relaxed);
    let target_hit = opts.target_status.is_some() && shared.stop.load(Ordering::Relaxed) && !timed_out;
    let BestState { best, trace } = shared.best.into_inner().unwrap();
    let nodes_explored = shared.nodes.load(Ordering::Relaxed);
    let wall_time_s = start.elapsed().as_secs_f64();

    let (best_status, best_graph) = match best {
        Some((status, rel)) => {
            let mut replay = SearchCore::new(&tree, &profile);
            for (s, value) in rel.iter().enumerate() {
                if replay.rel[s] == Rel::Undecided && *value != Rel::Undecided {
                    replay.apply(s, *value);
                }
            }
            (Some(status), Some(replay.to_graph()))
        }
        None => {
            if !timed_out && !target_hit {
                return Err(Error::Infeasible);
            }
            (None, None)
        }
    };

    let proved_optimal = !timed_out && !target_hit && best_status.is_some();
    let lower_bound = if proved_optimal { best_status.unwrap() } else { profile.s_total };
    let report = SearchReport {
        method: "exact".into(),
        best_status,
        lower_bound,
        proved_optimal,
        nodes_explored,
        wall_time_s,
        seed: opts.seed,
        best_graph,
    };
    Ok((report, trace))
}

/// Expands the top of the tree into prefix tasks and processes them with a
/// pool of workers sharing the incumbent; results are schedule-independent
/// for completed searches, node counts are not.
fn run_parallel(core: SearchCore, shared: &Shared, threads: usize) {
    let want = threads * 16;
    let mut expander = Worker { core, shared, nodes: 0, tick: 0 };
    let mut frontier: Vec<Vec<Rel>> = vec![Vec::new()];
    let mut depth = 0usize;
    while frontier.len() < want && depth < expander.core.free_slots.len() && depth < 16 {
        let slot = expander.core.free_slots[depth];
        let mut next = Vec::new();
        for prefix in &frontier {
            for (d, &value) in prefix.iter().enumerate() {
                expander.core.apply(expander.core.free_slots[d], value);
            }
            for value in VALUE_ORDER {
                if !expander.core.allowed(slot, value) {
                    continue;
                }
                expander.core.apply(slot, value);
                expander.nodes += 1;
                if expander.core.counting_ok(slot) && expander.core.lex_ok() {
                    let mut child = prefix.clone();
                    child.push(value);
                    next.push(child);
                }
                expander.core.undo(slot, value);
            }
            for (d, &value) in prefix.iter().enumerate().rev() {
                expander.core.undo(expander.core.free_slots[d], value);
            }
        }
        frontier = next;
        depth += 1;
        if frontier.is_empty() {
            break;
        }
    }
    shared.nodes.fetch_add(expander.nodes, Ordering::Relaxed);
    let core = expander.core;

    let next_task = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| {
                let mut worker = Worker { core: core.clone(), shared, nodes: 0, tick: 0 };
                loop {
                    let t = next_task.fetch_add(1, Ordering::Relaxed);
                    let Some(prefix) = frontier.get(t) else { break };
                    for (d, &value) in prefix.iter().enumerate() {
                        worker.core.apply(worker.core.free_slots[d], value);
                    }
                    worker.dfs(prefix.len());
                    for (d, &value) in prefix.iter().enumerate().rev() {
                        worker.core.undo(worker.core.free_slots[d], value);
                    }
                    if shared.stop.load(Ordering::Relaxed) {
                        break;
                    }
                }
                shared.nodes.fetch_add(worker.nodes, Ordering::Relaxed);
            });
        }
    });
}

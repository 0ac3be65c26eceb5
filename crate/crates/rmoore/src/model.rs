//! The binary integer-programming model over adjacency indicators.
//!
//! For a target order `n = M(r, z, 2)` the model declares `n^4 + n^3 + 3n^2`
//! binary variables:
//!
//! - `x_i_j` — edge `{i,j}` present (kept symmetric by constraint);
//! - `y_i_j` — arc `(i,j)` present;
//! - `d_i_j` — distance from `i` to `j` is exactly 2;
//! - `c_i_j_k` — the walk `i -> j -> k` exists and no direct link `(i,k)` does;
//! - `p_i_j_k_l` — the three links `(i,j)`, `(j,k)`, `(k,l)` all exist.
//!
//! Constraints come in lettered families, in emission order:
//!
//! - (a) well-formedness: one-of-three rows and edge-symmetry rows, both over
//!   all ordered pairs `i != j`; diagonal variables are fixed to 0;
//! - (b) Moore-tree fixings (variable bounds, not rows);
//! - (c) total `(r, z)`-regularity;
//! - (d) linearization of `c`, four rows per `(i, j, k)` with `i != k`;
//! - (e) linearization of `p`, four rows per `(i, j, k, l)`, all `n^4` tuples;
//! - (f) linearization of `d`, one upper row per ordered `(i, j)` (including
//!   `i = j`) plus one lower row per `(i, l, j)` triple;
//! - (g) diameter cover, one row per ordered pair `i != j`.
//!
//! With repeated indices `p` may be 1 even when no genuine length-3 path
//! exists; only family (g) consumes `p`, where the overcount is harmless, so
//! no extra all-distinct rows are added and the variable count stays exact.
//!
//! The objective is the simplified status expression: the constant
//! `n (3(n-1) - 2(r+z))` minus the sum of all `d` variables, so its value at
//! the indicator assignment of a feasible graph equals the graph status.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::moore::{moore_bound, moore_tree};

/// Largest model dimension built without an explicit override.
pub const DEFAULT_DIMENSION_CAP: u64 = 64;

/// A named binary variable of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarName {
    X(u16, u16),
    Y(u16, u16),
    D(u16, u16),
    C(u16, u16, u16),
    P(u16, u16, u16, u16),
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarName::X(i, j) => write!(f, "x_{i}_{j}"),
            VarName::Y(i, j) => write!(f, "y_{i}_{j}"),
            VarName::D(i, j) => write!(f, "d_{i}_{j}"),
            VarName::C(i, j, k) => write!(f, "c_{i}_{j}_{k}"),
            VarName::P(i, j, k, l) => write!(f, "p_{i}_{j}_{k}_{l}"),
        }
    }
}

impl FromStr for VarName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('_');
        let kind = parts.next().unwrap_or("");
        let idx: Vec<u16> = parts
            .map(|p| p.parse().map_err(|_| Error::UnknownVariable(s.to_string())))
            .collect::<Result<_>>()?;
        match (kind, idx.as_slice()) {
            ("x", &[i, j]) => Ok(VarName::X(i, j)),
            ("y", &[i, j]) => Ok(VarName::Y(i, j)),
            ("d", &[i, j]) => Ok(VarName::D(i, j)),
            ("c", &[i, j, k]) => Ok(VarName::C(i, j, k)),
            ("p", &[i, j, k, l]) => Ok(VarName::P(i, j, k, l)),
            _ => Err(Error::UnknownVariable(s.to_string())),
        }
    }
}

/// Constraint family letter; `b` is the Moore-tree fixings and produces no rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// (a) one-of-three and edge-symmetry rows.
    WellFormed,
    /// (c) total regularity rows.
    Regularity,
    /// (d) rows tying `c` to a length-2 walk without a shortcut.
    TwoWalk,
    /// (e) rows tying `p` to its three link indicators.
    ThreeWalk,
    /// (f) rows tying `d` to the `c` variables.
    DistanceTwo,
    /// (g) every ordered pair within distance 3.
    DiameterCover,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::WellFormed => 'a',
            Family::Regularity => 'c',
            Family::TwoWalk => 'd',
            Family::ThreeWalk => 'e',
            Family::DistanceTwo => 'f',
            Family::DiameterCover => 'g',
        }
    }

    pub const ALL: [Family; 6] = [
        Family::WellFormed,
        Family::Regularity,
        Family::TwoWalk,
        Family::ThreeWalk,
        Family::DistanceTwo,
        Family::DiameterCover,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cmp::Le => "<=",
            Cmp::Eq => "=",
            Cmp::Ge => ">=",
        })
    }
}

/// One linear row: sorted `(variable, coefficient)` terms, comparator, rhs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub family: Family,
    /// Position within the family; the row name is `R<letter><index>`.
    pub index: u64,
    pub terms: Vec<(VarName, i64)>,
    pub cmp: Cmp,
    pub rhs: i64,
}

impl Constraint {
    pub fn name(&self) -> String {
        format!("R{}{}", self.family.letter(), self.index)
    }

    /// Left-hand side at a total assignment; missing variables are an error.
    pub fn lhs_value(&self, a: &BTreeMap<VarName, u8>) -> Result<i64> {
        let mut sum = 0i64;
        for &(v, coef) in &self.terms {
            let val = *a.get(&v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
            sum += coef * i64::from(val);
        }
        Ok(sum)
    }

    pub fn holds(&self, a: &BTreeMap<VarName, u8>) -> Result<bool> {
        let lhs = self.lhs_value(a)?;
        Ok(match self.cmp {
            Cmp::Le => lhs <= self.rhs,
            Cmp::Eq => lhs == self.rhs,
            Cmp::Ge => lhs >= self.rhs,
        })
    }
}

/// Minimization objective: `constant + sum(terms)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub constant: i64,
    pub terms: Vec<(VarName, i64)>,
}

/// The full model for one `(r, z)` pair, `k = 2`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpModel {
    pub r: usize,
    pub z: usize,
    /// Model dimension `n = M(r, z, 2)`.
    pub n: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Objective,
    /// Diagonal zeros plus the Moore-tree ones.
    pub fixings: BTreeMap<VarName, u8>,
}

/// Row and fixing counts of a built model, counted from the model itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelStats {
    pub var_count: u64,
    pub rows_by_family: BTreeMap<char, u64>,
    /// Diagonal `x_i_i = y_i_i = 0` fixings.
    pub loop_fixings: u64,
    /// Moore-tree `= 1` fixings (family (b)).
    pub tree_fixings: u64,
}

impl IpModel {
    /// Total declared variables: `n^4 + n^3 + 3 n^2`.
    pub fn var_count(&self) -> u64 {
        let n = self.n as u64;
        n * n * n * n + n * n * n + 3 * n * n
    }

    /// All variables in canonical order (x, y, d, then c, then p).
    pub fn variables(&self) -> impl Iterator<Item = VarName> + '_ {
        let n = self.n as u16;
        let pairs =
            move |mk: fn(u16, u16) -> VarName| (0..n).flat_map(move |i| (0..n).map(move |j| mk(i, j)));
        let c = (0..n).flat_map(move |i| {
            (0..n).flat_map(move |j| (0..n).map(move |k| VarName::C(i, j, k)))
        });
        let p = (0..n).flat_map(move |i| {
            (0..n).flat_map(move |j| {
                (0..n).flat_map(move |k| (0..n).map(move |l| VarName::P(i, j, k, l)))
            })
        });
        pairs(VarName::X)
            .chain(pairs(VarName::Y))
            .chain(pairs(VarName::D))
            .chain(c)
            .chain(p)
    }

    /// Whether the model declares `v`.
    pub fn declares(&self, v: VarName) -> bool {
        let n = self.n as u16;
        match v {
            VarName::X(i, j) | VarName::Y(i, j) | VarName::D(i, j) => i < n && j < n,
            VarName::C(i, j, k) => i < n && j < n && k < n,
            VarName::P(i, j, k, l) => i < n && j < n && k < n && l < n,
        }
    }

    /// Names of rows violated by a total assignment.
    pub fn violated_rows(&self, a: &BTreeMap<VarName, u8>) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for row in &self.constraints {
            if !row.holds(a)? {
                out.push(row.name());
            }
        }
        Ok(out)
    }

    /// Objective value at a total assignment.
    pub fn objective_value(&self, a: &BTreeMap<VarName, u8>) -> Result<i64> {
        let mut sum = self.objective.constant;
        for &(v, coef) in &self.objective.terms {
            let val = *a.get(&v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
            sum += coef * i64::from(val);
        }
        Ok(sum)
    }

    /// Errors if the assignment contradicts any fixing.
    pub fn check_fixings(&self, a: &BTreeMap<VarName, u8>) -> Result<()> {
        for (&v, &fixed) in &self.fixings {
            if let Some(&val) = a.get(&v) {
                if val != fixed {
                    return Err(Error::FixingViolated { name: v.to_string(), fixed });
                }
            }
        }
        Ok(())
    }

    pub fn stats(&self) -> ModelStats {
        let mut rows_by_family: BTreeMap<char, u64> = BTreeMap::new();
        for row in &self.constraints {
            *rows_by_family.entry(row.family.letter()).or_insert(0) += 1;
        }
        let loop_fixings = self.fixings.values().filter(|&&v| v == 0).count() as u64;
        let tree_fixings = self.fixings.values().filter(|&&v| v == 1).count() as u64;
        ModelStats { var_count: self.var_count(), rows_by_family, loop_fixings, tree_fixings }
    }
}

/// Exact counts per family plus the variable count.
pub fn model_stats(model: &IpModel) -> ModelStats {
    model.stats()
}

struct RowBuilder {
    constraints: Vec<Constraint>,
    counters: BTreeMap<char, u64>,
}

impl RowBuilder {
    fn push(&mut self, family: Family, terms: Vec<(VarName, i64)>, cmp: Cmp, rhs: i64) {
        let counter = self.counters.entry(family.letter()).or_insert(0);
        let mut sorted = terms;
        sorted.sort_unstable_by_key(|&(v, _)| v);
        // Merge duplicate variables (tuples with repeated indices).
        let mut merged: Vec<(VarName, i64)> = Vec::with_capacity(sorted.len());
        for (v, c) in sorted {
            match merged.last_mut() {
                Some((last, coef)) if *last == v => *coef += c,
                _ => merged.push((v, c)),
            }
        }
        self.constraints.push(Constraint { family, index: *counter, terms: merged, cmp, rhs });
        *counter += 1;
    }
}

/// Builds the full model for `(r, z)` with the default dimension cap.
pub fn build_model(r: usize, z: usize) -> Result<IpModel> {
    build_model_capped(r, z, DEFAULT_DIMENSION_CAP)
}

pub fn build_model_capped(r: usize, z: usize, cap: u64) -> Result<IpModel> {
    let m = moore_bound(r, z, 2)?;
    if m > cap {
        return Err(Error::ModelTooLarge { n: m, cap });
    }
    let tree = moore_tree(r, z)?;
    let n = m as usize;
    let nn = n as u16;

    let mut b = RowBuilder { constraints: Vec::new(), counters: BTreeMap::new() };
    let link = |i: u16, j: u16| [(VarName::X(i, j), 1i64), (VarName::Y(i, j), 1i64)];

    // (a) well-formedness. One-of-three over ordered pairs, then symmetry
    // over ordered pairs (both directions kept for row-count fidelity).
    for i in 0..nn {
        for j in 0..nn {
            if i == j {
                continue;
            }
            b.push(
                Family::WellFormed,
                vec![(VarName::X(i, j), 1), (VarName::Y(i, j), 1), (VarName::Y(j, i), 1)],
                Cmp::Le,
                1,
            );
        }
    }
    for i in 0..nn {
        for j in 0..nn {
            if i == j {
                continue;
            }
            b.push(
                Family::WellFormed,
                vec![(VarName::X(i, j), 1), (VarName::X(j, i), -1)],
                Cmp::Eq,
                0,
            );
        }
    }

    // Diagonal fixings (no self-loops) and (b) Moore-tree fixings.
    let mut fixings = BTreeMap::new();
    for i in 0..nn {
        fixings.insert(VarName::X(i, i), 0);
        fixings.insert(VarName::Y(i, i), 0);
    }
    for (u, v) in tree.graph.edges() {
        fixings.insert(VarName::X(u as u16, v as u16), 1);
        fixings.insert(VarName::X(v as u16, u as u16), 1);
    }
    for (u, v) in tree.graph.arcs() {
        fixings.insert(VarName::Y(u as u16, v as u16), 1);
    }

    // (c) total regularity: row degree, out-degree, in-degree.
    for i in 0..nn {
        b.push(
            Family::Regularity,
            (0..nn).map(|j| (VarName::X(i, j), 1)).collect(),
            Cmp::Eq,
            r as i64,
        );
    }
    for i in 0..nn {
        b.push(
            Family::Regularity,
            (0..nn).map(|j| (VarName::Y(i, j), 1)).collect(),
            Cmp::Eq,
            z as i64,
        );
    }
    for i in 0..nn {
        b.push(
            Family::Regularity,
            (0..nn).map(|j| (VarName::Y(j, i), 1)).collect(),
            Cmp::Eq,
            z as i64,
        );
    }

    // (d) c-linearization over triples with i != k.
    for i in 0..nn {
        for j in 0..nn {
            for k in 0..nn {
                if i == k {
                    continue;
                }
                let c = VarName::C(i, j, k);
                let mut t1 = vec![(c, 1)];
                t1.extend(link(i, j).iter().map(|&(v, w)| (v, -w)));
                b.push(Family::TwoWalk, t1, Cmp::Le, 0);

                let mut t2 = vec![(c, 1)];
                t2.extend(link(j, k).iter().map(|&(v, w)| (v, -w)));
                b.push(Family::TwoWalk, t2, Cmp::Le, 0);

                let mut t3 = vec![(c, 1)];
                t3.extend(link(i, k));
                b.push(Family::TwoWalk, t3, Cmp::Le, 1);

                let mut t4 = vec![(c, 1)];
                t4.extend(link(i, j).iter().map(|&(v, w)| (v, -w)));
                t4.extend(link(j, k).iter().map(|&(v, w)| (v, -w)));
                t4.extend(link(i, k));
                b.push(Family::TwoWalk, t4, Cmp::Ge, -1);
            }
        }
    }

    // (e) p-linearization over all n^4 tuples.
    for i in 0..nn {
        for j in 0..nn {
            for k in 0..nn {
                for l in 0..nn {
                    let p = VarName::P(i, j, k, l);
                    for (a, c) in [(i, j), (j, k), (k, l)] {
                        let mut t = vec![(p, 1)];
                        t.extend(link(a, c).iter().map(|&(v, w)| (v, -w)));
                        b.push(Family::ThreeWalk, t, Cmp::Le, 0);
                    }
                    let mut t4 = vec![(p, 1)];
                    for (a, c) in [(i, j), (j, k), (k, l)] {
                        t4.extend(link(a, c).iter().map(|&(v, w)| (v, -w)));
                    }
                    b.push(Family::ThreeWalk, t4, Cmp::Ge, -2);
                }
            }
        }
    }

    // (f) d-linearization over all ordered pairs, including the diagonal.
    for i in 0..nn {
        for j in 0..nn {
            let d = VarName::D(i, j);
            let mut upper = vec![(d, 1)];
            upper.extend((0..nn).map(|k| (VarName::C(i, k, j), -1)));
            b.push(Family::DistanceTwo, upper, Cmp::Le, 0);
            for l in 0..nn {
                b.push(
                    Family::DistanceTwo,
                    vec![(d, 1), (VarName::C(i, l, j), -1)],
                    Cmp::Ge,
                    0,
                );
            }
        }
    }

    // (g) diameter cover: a walk of length at most 3 for every ordered pair.
    for i in 0..nn {
        for j in 0..nn {
            if i == j {
                continue;
            }
            let mut t: Vec<(VarName, i64)> = link(i, j).to_vec();
            t.extend((0..nn).map(|k| (VarName::C(i, k, j), 1)));
            for k in 0..nn {
                for l in 0..nn {
                    t.push((VarName::P(i, k, l, j), 1));
                }
            }
            b.push(Family::DiameterCover, t, Cmp::Ge, 1);
        }
    }

    // (h) objective, simplified through regularity: constant minus sum of d.
    let n64 = n as i64;
    let constant = n64 * (3 * (n64 - 1) - 2 * (r as i64 + z as i64));
    let mut terms = Vec::with_capacity(n * n);
    for i in 0..nn {
        for j in 0..nn {
            terms.push((VarName::D(i, j), -1));
        }
    }

    Ok(IpModel {
        r,
        z,
        n,
        constraints: b.constraints,
        objective: Objective { constant, terms },
        fixings,
    })
}

/// Reads the graph out of an x/y assignment, validating well-formedness.
pub fn assignment_to_graph(model: &IpModel, a: &BTreeMap<VarName, u8>) -> Result<MixedGraph> {
    let n = model.n as u16;
    let get = |v: VarName| -> Result<u8> {
        a.get(&v).copied().ok_or_else(|| Error::MissingVariable(v.to_string()))
    };
    for i in 0..n {
        if get(VarName::X(i, i))? != 0 || get(VarName::Y(i, i))? != 0 {
            return Err(Error::SelfLoop(i as usize));
        }
    }
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let x = get(VarName::X(i, j))?;
            if x != get(VarName::X(j, i))? {
                return Err(Error::AsymmetricEdge(i as usize, j as usize));
            }
            let y = get(VarName::Y(i, j))?;
            if i < j {
                let y_rev = get(VarName::Y(j, i))?;
                if u16::from(x) + u16::from(y) + u16::from(y_rev) > 1 {
                    return Err(Error::ConflictingPair(i as usize, j as usize));
                }
                if x == 1 {
                    edges.push((i as usize, j as usize));
                }
            }
            if y == 1 {
                arcs.push((i as usize, j as usize));
            }
        }
    }
    MixedGraph::new(model.n, edges, arcs)
}

/// The indicator assignment of a graph, with the derived variables set to
/// their defining values: `c` from a length-2 walk without a shortcut, `p`
/// from its three link indicators, `d` from the existence of a witness `c`.
pub fn assignment_from_graph(g: &MixedGraph) -> BTreeMap<VarName, u8> {
    let n = g.n() as u16;
    let mut a = BTreeMap::new();
    let link = |u: u16, v: u16| u != v && (g.has_edge(u as usize, v as usize) || g.has_arc(u as usize, v as usize));
    for i in 0..n {
        for j in 0..n {
            a.insert(VarName::X(i, j), u8::from(i != j && g.has_edge(i as usize, j as usize)));
            a.insert(VarName::Y(i, j), u8::from(g.has_arc(i as usize, j as usize)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = i != k && link(i, j) && link(j, k) && !link(i, k);
                a.insert(VarName::C(i, j, k), u8::from(c));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let d = (0..n).any(|k| a[&VarName::C(i, k, j)] == 1);
            a.insert(VarName::D(i, j), u8::from(d));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let p = link(i, j) && link(j, k) && link(k, l);
                    a.insert(VarName::P(i, j, k, l), u8::from(p));
                }
            }
        }
    }
    a
}

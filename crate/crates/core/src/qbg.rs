//! The parabolic quantum Bruhat graph `QB(W^J)`.
//!
//! Vertices are the minimal coset representatives `W^J`; for `w ∈ W^J` and
//! `β ∈ Φ^+ \ Φ_J^+` there is an edge `w → ⌊w r_β⌋` labeled `β` when either
//!
//! * `ℓ(⌊w r_β⌋) = ℓ(w) + 1` (a Bruhat edge), or
//! * `ℓ(⌊w r_β⌋) = ℓ(w) − 2⟨β^∨, ρ − ρ_J⟩ + 1` (a quantum edge).
//!
//! The graph is built eagerly and frozen; every query afterwards is
//! read-only.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use crate::cartan_weyl::weyl::{enumerate_minimal_reps, reflection};
use crate::cartan_weyl::{RootDatum, Weight, WeylElt};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Bruhat,
    Quantum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QbgEdge {
    pub from: usize,
    pub to: usize,
    /// Index into `datum.positive_roots()`.
    pub label: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone)]
pub struct QbGraph {
    j: BTreeSet<usize>,
    vertices: Vec<WeylElt>,
    vertex_index: HashMap<Vec<i64>, usize>,
    /// Outgoing edges per vertex, sorted by label root coordinates.
    adjacency: Vec<Vec<QbgEdge>>,
    /// Labels: positive-root indices outside the Levi subsystem.
    labels: Vec<usize>,
}

/// Builds `QB(W^J)` for a 1-based index set `J ⊆ {1..rank}`.
pub fn build_qbg(datum: &RootDatum, j: &BTreeSet<usize>) -> QbGraph {
    let vertices = enumerate_minimal_reps(datum, j);
    let vertex_index: HashMap<Vec<i64>, usize> = vertices
        .iter()
        .enumerate()
        .map(|(k, w)| (w.key().to_vec(), k))
        .collect();
    let levi: BTreeSet<usize> = datum.levi_root_indices(j).into_iter().collect();
    let labels: Vec<usize> = (0..datum.num_positive_roots())
        .filter(|k| !levi.contains(k))
        .collect();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (from, w) in vertices.iter().enumerate() {
        for &label in &labels {
            let target = w
                .mul(datum, &reflection(datum, label))
                .min_coset_rep(datum, j);
            let to = vertex_index[target.key()];
            let lw = w.len() as i64;
            let lt = target.len() as i64;
            let kind = if lt == lw + 1 {
                Some(EdgeKind::Bruhat)
            } else if lt == lw - datum.quantum_drop_doubled(label, j) + 1 {
                Some(EdgeKind::Quantum)
            } else {
                None
            };
            if let Some(kind) = kind {
                adjacency[from].push(QbgEdge {
                    from,
                    to,
                    label,
                    kind,
                });
            }
        }
    }
    for out in &mut adjacency {
        out.sort_by_key(|e| datum.positive_roots()[e.label].root.coords.clone());
    }
    QbGraph {
        j: j.clone(),
        vertices,
        vertex_index,
        adjacency,
        labels,
    }
}

impl QbGraph {
    pub fn j_set(&self) -> &BTreeSet<usize> {
        &self.j
    }

    pub fn vertices(&self) -> &[WeylElt] {
        &self.vertices
    }

    pub fn vertex_of(&self, w: &WeylElt) -> Option<usize> {
        self.vertex_index.get(w.key()).copied()
    }

    pub fn outgoing(&self, v: usize) -> &[QbgEdge] {
        &self.adjacency[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = &QbgEdge> {
        self.adjacency.iter().flatten()
    }

    /// The unique edge out of `v` with the given label, if present.
    pub fn edge_by_label(&self, v: usize, label: usize) -> Option<&QbgEdge> {
        self.adjacency[v].iter().find(|e| e.label == label)
    }

    /// Subgraph `QB_{σλ}(W^J)`: same vertices, only the edges whose label
    /// satisfies `σ⟨β^∨, λ⟩ ∈ ℤ`.
    pub fn sigma_restricted(&self, datum: &RootDatum, sigma: Rational, lambda: &Weight) -> QbGraph {
        let keep = |label: usize| {
            (sigma * Rational::from_integer(datum.pairing_idx(label, lambda))).is_integer()
        };
        let adjacency = self
            .adjacency
            .iter()
            .map(|out| out.iter().copied().filter(|e| keep(e.label)).collect())
            .collect();
        QbGraph {
            j: self.j.clone(),
            vertices: self.vertices.clone(),
            vertex_index: self.vertex_index.clone(),
            adjacency,
            labels: self.labels.clone(),
        }
    }

    /// Reachability matrix: `out[a][b]` iff there is a directed path `a → b`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut out = vec![vec![false; n]; n];
        for start in 0..n {
            let row = &mut out[start];
            row[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for e in &self.adjacency[v] {
                    if !row[e.to] {
                        row[e.to] = true;
                        queue.push_back(e.to);
                    }
                }
            }
        }
        out
    }

    /// BFS distances and the quantum-edge statistic `Σ ⟨β^∨, λ⟩` along one
    /// shortest path from each source (well-defined independently of the
    /// path; the exhaustive check lives in `all_shortest_quantum_sums`).
    pub fn wt_lambda_table(&self, datum: &RootDatum, lambda: &Weight) -> WtLambdaTable {
        let n = self.vertices.len();
        let mut dist = vec![vec![u32::MAX; n]; n];
        let mut wt = vec![vec![0i64; n]; n];
        for start in 0..n {
            dist[start][start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for e in &self.adjacency[v] {
                    if dist[start][e.to] == u32::MAX {
                        dist[start][e.to] = dist[start][v] + 1;
                        wt[start][e.to] = wt[start][v]
                            + match e.kind {
                                EdgeKind::Quantum => datum.pairing_idx(e.label, lambda),
                                EdgeKind::Bruhat => 0,
                            };
                        queue.push_back(e.to);
                    }
                }
            }
        }
        WtLambdaTable { dist, wt }
    }

    /// Every value of the quantum-edge sum over *all* shortest directed
    /// paths `x ⇒ y`; test oracle for the path-independence property.
    pub fn all_shortest_quantum_sums(
        &self,
        datum: &RootDatum,
        lambda: &Weight,
        x: usize,
        y: usize,
    ) -> BTreeSet<i64> {
        let table = self.wt_lambda_table(datum, lambda);
        let dist_from_y_rev = {
            // distances to y along edge direction = BFS on the reverse graph
            let n = self.vertices.len();
            let mut rev = vec![Vec::new(); n];
            for e in self.edges() {
                rev[e.to].push(e.from);
            }
            let mut d = vec![u32::MAX; n];
            d[y] = 0;
            let mut queue = VecDeque::from([y]);
            while let Some(v) = queue.pop_front() {
                for &p in &rev[v] {
                    if d[p] == u32::MAX {
                        d[p] = d[v] + 1;
                        queue.push_back(p);
                    }
                }
            }
            d
        };
        let total = table.dist[x][y];
        let mut sums = BTreeSet::new();
        if total == u32::MAX {
            return sums;
        }
        let mut stack = vec![(x, 0u32, 0i64)];
        while let Some((v, steps, acc)) = stack.pop() {
            if v == y {
                sums.insert(acc);
                continue;
            }
            for e in &self.adjacency[v] {
                if dist_from_y_rev[e.to] != u32::MAX && steps + 1 + dist_from_y_rev[e.to] == total {
                    let extra = match e.kind {
                        EdgeKind::Quantum => datum.pairing_idx(e.label, lambda),
                        EdgeKind::Bruhat => 0,
                    };
                    stack.push((e.to, steps + 1, acc + extra));
                }
            }
        }
        sums
    }

    /// DOT export: reduced-word labels, solid Bruhat edges, dashed quantum
    /// edges, root coordinates on each edge.
    pub fn to_dot(&self, datum: &RootDatum) -> String {
        let mut out = String::from("digraph qbg {\n  rankdir=BT;\n");
        for (k, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  n{k} [label=\"{v}\"];\n"));
        }
        for e in self.edges() {
            let style = match e.kind {
                EdgeKind::Bruhat => "solid",
                EdgeKind::Quantum => "dashed",
            };
            let root = &datum.positive_roots()[e.label].root;
            out.push_str(&format!(
                "  n{} -> n{} [style={style}, label=\"{root}\"];\n",
                e.from, e.to
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone)]
pub struct WtLambdaTable {
    pub dist: Vec<Vec<u32>>,
    pub wt: Vec<Vec<i64>>,
}

impl WtLambdaTable {
    pub fn wt_lambda(&self, x: usize, y: usize) -> Result<i64> {
        if self.dist[x][y] == u32::MAX {
            return Err(Error::Invariant(
                "quantum Bruhat graph is not strongly connected".into(),
            ));
        }
        Ok(self.wt[x][y])
    }
}

/// `wt_λ(x ⇒ y)`: the quantum-edge sum along a shortest directed path in
/// `graph`, which must be `QB(W^J)` for `J = J_λ` when used for the degree
/// statistic.
pub fn wt_lambda(
    datum: &RootDatum,
    graph: &QbGraph,
    x: &WeylElt,
    y: &WeylElt,
    lambda: &Weight,
) -> Result<i64> {
    let xi = graph
        .vertex_of(x)
        .ok_or_else(|| Error::NotMinimalRep(x.to_string()))?;
    let yi = graph
        .vertex_of(y)
        .ok_or_else(|| Error::NotMinimalRep(y.to_string()))?;
    graph.wt_lambda_table(datum, lambda).wt_lambda(xi, yi)
}

/// Degenerate σ (integer) keeps the whole graph; used by callers to decide
/// whether a restriction is needed at all.
pub fn sigma_keeps_all(sigma: Rational) -> bool {
    sigma.fract().is_zero()
}

//! Quantum Lakshmibai–Seshadri paths of shape λ.
//!
//! A path is a sequence of directions in `W^J` (J = J_λ) with rational cut
//! points `0 = σ_0 < σ_1 < ⋯ < σ_s = 1`, such that consecutive directions
//! `x_{u+1}, x_u` are joined by a directed path in the σ_u-restricted
//! quantum Bruhat graph. The module enumerates them, computes the weight
//! and degree statistics and the graded character
//! `gch QLS_w(λ) = Σ q^{-Deg(η)} x^{wt(η)}` over `ι(η) ≤ w`, and carries
//! the dual/ω/Lusztig maps and the classical root operators.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cartan_weyl::weyl::{bruhat_leq, longest_element, omega_elt, omega_set};
use crate::cartan_weyl::{RootDatum, Weight, WeylElt};
use crate::charpoly::GradedChar;
use crate::qbg::{build_qbg, QbGraph, WtLambdaTable};
use crate::{Error, Rational, Result};

/// Directions plus cut points; `cuts.len() == dirs.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QlsPath {
    pub dirs: Vec<WeylElt>,
    pub cuts: Vec<Rational>,
}

impl QlsPath {
    /// The straight path `(x; 0, 1)`.
    pub fn straight(x: WeylElt) -> QlsPath {
        QlsPath {
            dirs: vec![x],
            cuts: vec![Rational::zero(), Rational::from_integer(1)],
        }
    }

    pub fn initial_direction(&self) -> &WeylElt {
        &self.dirs[0]
    }

    pub fn final_direction(&self) -> &WeylElt {
        self.dirs.last().expect("paths are nonempty")
    }

    /// Checked constructor: shape, minimality of directions, and the
    /// σ-restricted connectivity condition between consecutive directions.
    pub fn new(ctx: &QlsContext, dirs: Vec<WeylElt>, cuts: Vec<Rational>) -> Result<QlsPath> {
        let path = QlsPath { dirs, cuts };
        path.validate(ctx)?;
        Ok(path)
    }

    pub fn validate(&self, ctx: &QlsContext) -> Result<()> {
        let s = self.dirs.len();
        if s == 0 || self.cuts.len() != s + 1 {
            return Err(Error::Invariant("malformed QLS path shape".into()));
        }
        if !self.cuts[0].is_zero() || self.cuts[s] != Rational::from_integer(1) {
            return Err(Error::Invariant("QLS cuts must run from 0 to 1".into()));
        }
        if self.cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invariant("QLS cuts must strictly increase".into()));
        }
        let mut idx = Vec::with_capacity(s);
        for x in &self.dirs {
            idx.push(
                ctx.graph
                    .vertex_of(x)
                    .ok_or_else(|| Error::NotMinimalRep(x.to_string()))?,
            );
        }
        for u in 1..s {
            if idx[u] == idx[u - 1] {
                return Err(Error::Invariant(
                    "adjacent QLS directions must differ".into(),
                ));
            }
            if !ctx.connected_at(self.cuts[u], idx[u], idx[u - 1]) {
                return Err(Error::Invariant(format!(
                    "no directed path {} → {} in the σ={}-restricted graph",
                    self.dirs[u],
                    self.dirs[u - 1],
                    self.cuts[u]
                )));
            }
        }
        Ok(())
    }

    /// `wt(η) = Σ (σ_u − σ_{u-1}) x_u λ`; integral for genuine QLS paths.
    pub fn wt(&self, ctx: &QlsContext) -> Result<Weight> {
        let rank = ctx.datum.rank();
        let mut acc = vec![Rational::zero(); rank];
        for (u, x) in self.dirs.iter().enumerate() {
            let span = self.cuts[u + 1] - self.cuts[u];
            let img = x.act(ctx.datum, &ctx.lambda);
            for (slot, &c) in acc.iter_mut().zip(&img.coords) {
                *slot += span * Rational::from_integer(c);
            }
        }
        let mut coords = Vec::with_capacity(rank);
        for v in acc {
            if !v.is_integer() {
                return Err(Error::Invariant(format!(
                    "non-integral path weight coordinate {v}"
                )));
            }
            coords.push(v.to_integer());
        }
        Ok(Weight::new(coords))
    }

    /// `Deg(η) = −Σ_{u<s} (1−σ_u)·wt_λ(x_{u+1} ⇒ x_u) ∈ Z_{≤0}`.
    pub fn deg(&self, ctx: &QlsContext) -> Result<i64> {
        let mut acc = Rational::zero();
        for u in 1..self.dirs.len() {
            let from = ctx
                .graph
                .vertex_of(&self.dirs[u])
                .ok_or_else(|| Error::NotMinimalRep(self.dirs[u].to_string()))?;
            let to = ctx
                .graph
                .vertex_of(&self.dirs[u - 1])
                .ok_or_else(|| Error::NotMinimalRep(self.dirs[u - 1].to_string()))?;
            let hop = ctx.table.wt_lambda(from, to)?;
            acc += (Rational::from_integer(1) - self.cuts[u]) * Rational::from_integer(hop);
        }
        if !acc.is_integer() {
            return Err(Error::Invariant(format!("non-integral degree {acc}")));
        }
        let deg = -acc.to_integer();
        if deg > 0 {
            return Err(Error::Invariant(format!("positive degree {deg}")));
        }
        Ok(deg)
    }

    /// JSON record with both statistics.
    pub fn to_json(&self, ctx: &QlsContext) -> Result<Value> {
        let dirs: Vec<Value> = self
            .dirs
            .iter()
            .map(|x| {
                Value::Array(
                    x.word()
                        .iter()
                        .map(|i| Value::String(i.to_string()))
                        .collect(),
                )
            })
            .collect();
        let cuts: Vec<Value> = self
            .cuts
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect();
        Ok(json!({
            "dirs": dirs,
            "cuts": cuts,
            "wt": self.wt(ctx)?.coords,
            "deg": self.deg(ctx)?,
        }))
    }
}

/// Frozen data shared by every QLS computation for one (datum, λ) pair:
/// the parabolic quantum Bruhat graph, the shortest-path statistic table,
/// the candidate cut values, and per-cut reachability.
pub struct QlsContext<'a> {
    pub datum: &'a RootDatum,
    lambda: Weight,
    j: BTreeSet<usize>,
    graph: QbGraph,
    table: WtLambdaTable,
    cuts: Vec<Rational>,
    reach: BTreeMap<Rational, Vec<Vec<bool>>>,
}

impl<'a> QlsContext<'a> {
    pub fn new(datum: &'a RootDatum, lambda: Weight) -> Result<QlsContext<'a>> {
        datum.check_rank(lambda.coords.len())?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.coords));
        }
        let j = datum.j_of_weight(&lambda);
        let graph = build_qbg(datum, &j);
        let table = graph.wt_lambda_table(datum, &lambda);
        // candidate interior cuts: a/h for h = ⟨β^∨, λ⟩ ranging over labels
        let mut cutset: BTreeSet<Rational> = BTreeSet::new();
        for &label in graph.labels() {
            let h = datum.pairing_idx(label, &lambda);
            for a in 1..h {
                cutset.insert(Rational::new(a, h));
            }
        }
        let cuts: Vec<Rational> = cutset.into_iter().collect();
        let reach = cuts
            .iter()
            .map(|&s| (s, graph.sigma_restricted(datum, s, &lambda).reachability()))
            .collect();
        Ok(QlsContext {
            datum,
            lambda,
            j,
            graph,
            table,
            cuts,
            reach,
        })
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn j_set(&self) -> &BTreeSet<usize> {
        &self.j
    }

    pub fn graph(&self) -> &QbGraph {
        &self.graph
    }

    pub fn cut_candidates(&self) -> &[Rational] {
        &self.cuts
    }

    pub fn wt_lambda(&self, from: &WeylElt, to: &WeylElt) -> Result<i64> {
        let f = self
            .graph
            .vertex_of(from)
            .ok_or_else(|| Error::NotMinimalRep(from.to_string()))?;
        let t = self
            .graph
            .vertex_of(to)
            .ok_or_else(|| Error::NotMinimalRep(to.to_string()))?;
        self.table.wt_lambda(f, t)
    }

    /// Directed-path existence in `QB_{σλ}(W^J)`; cached for the candidate
    /// cuts, recomputed for foreign σ values.
    fn connected_at(&self, sigma: Rational, from: usize, to: usize) -> bool {
        if let Some(m) = self.reach.get(&sigma) {
            return m[from][to];
        }
        let restricted = self.graph.sigma_restricted(self.datum, sigma, &self.lambda);
        restricted.reachability()[from][to]
    }
}

/// Exactly the set `QLS(λ)`, sorted canonically.
pub fn enumerate_qls(ctx: &QlsContext) -> Vec<QlsPath> {
    let n = ctx.graph.vertices().len();
    let mut out: Vec<(Vec<Rational>, Vec<usize>)> = Vec::new();
    // frame: directions chosen so far, interior cuts so far, next cut index
    let mut stack: Vec<(Vec<usize>, Vec<Rational>, usize)> =
        (0..n).map(|x| (vec![x], Vec::new(), 0usize)).collect();
    while let Some((dirs, cuts, next)) = stack.pop() {
        out.push((cuts.clone(), dirs.clone()));
        let last = *dirs.last().expect("nonempty");
        for (ci, &sigma) in ctx.cuts.iter().enumerate().skip(next) {
            let reach = &ctx.reach[&sigma];
            // the new direction x_{u+1}=y must reach x_u=last at σ
            for (y, row) in reach.iter().enumerate() {
                if y != last && row[last] {
                    let mut dirs2 = dirs.clone();
                    let mut cuts2 = cuts.clone();
                    dirs2.push(y);
                    cuts2.push(sigma);
                    stack.push((dirs2, cuts2, ci + 1));
                }
            }
        }
    }
    out.sort();
    out.into_iter()
        .map(|(interior, dirs)| {
            let mut cuts = Vec::with_capacity(interior.len() + 2);
            cuts.push(Rational::zero());
            cuts.extend(interior);
            cuts.push(Rational::from_integer(1));
            QlsPath {
                dirs: dirs
                    .into_iter()
                    .map(|v| ctx.graph.vertices()[v].clone())
                    .collect(),
                cuts,
            }
        })
        .collect()
}

/// `QLS_w(λ) = {η : ι(η) ≤ w}`.
pub fn enumerate_qls_w(ctx: &QlsContext, w: &WeylElt) -> Result<Vec<QlsPath>> {
    if !w.is_minimal_rep(ctx.datum, &ctx.j) {
        return Err(Error::NotMinimalRep(w.to_string()));
    }
    Ok(enumerate_qls(ctx)
        .into_iter()
        .filter(|p| bruhat_leq(ctx.datum, p.initial_direction(), w))
        .collect())
}

/// `gch QLS_w(λ) = Σ_{ι(η) ≤ w} q^{-Deg(η)} x^{wt(η)}`; by the main
/// theorem this is `E_{wλ}(x;q,0)`.
pub fn gch_qls(ctx: &QlsContext, w: &WeylElt) -> Result<GradedChar> {
    let mut out = GradedChar::zero();
    for path in enumerate_qls_w(ctx, w)? {
        let wt = path.wt(ctx)?;
        let deg = path.deg(ctx)?;
        out.add_term(&wt, (-deg) as u32, 1);
    }
    Ok(out)
}

/// `η* := (⌊x_s w∘⌋^{ω(J)}, …, ⌊x_1 w∘⌋^{ω(J)}; 1−σ_s, …, 1−σ_0)`,
/// an element of `QLS(−w∘λ)` with `wt(η*) = −wt(η)`.
pub fn dual_star(ctx: &QlsContext, path: &QlsPath) -> QlsPath {
    let datum = ctx.datum;
    let w0 = longest_element(datum);
    let jw = omega_set(datum, &ctx.j);
    let dirs = path
        .dirs
        .iter()
        .rev()
        .map(|x| x.mul(datum, &w0).min_coset_rep(datum, &jw))
        .collect();
    let cuts = path
        .cuts
        .iter()
        .rev()
        .map(|c| Rational::from_integer(1) - *c)
        .collect();
    QlsPath { dirs, cuts }
}

/// `ω(η) := (ω(x_1), …, ω(x_s); same cuts) ∈ QLS(−w∘λ)` with
/// `wt(ω(η)) = ω(wt(η))`.
pub fn omega_map(ctx: &QlsContext, path: &QlsPath) -> QlsPath {
    let dirs = path.dirs.iter().map(|x| omega_elt(ctx.datum, x)).collect();
    QlsPath {
        dirs,
        cuts: path.cuts.clone(),
    }
}

/// Lusztig involution `S = ω ∘ * : QLS(λ) → QLS(λ)`.
pub fn lusztig(ctx: &QlsContext, path: &QlsPath) -> QlsPath {
    omega_map(ctx, &dual_star(ctx, path))
}

// ---------------------------------------------------------------------------
// Classical root operators on the piecewise-linear realization.
//
// For η viewed as the path t ↦ η(t) let H(t) = ⟨α_i^∨, η(t)⟩ and
// m = min H (an integer ≤ 0). The conventions are the standard path-model
// ones:
//   e_i: t_1 = FIRST time H attains m, t_0 = last time ≤ t_1 with
//        H = m + 1; defined iff m ≤ -1.
//   f_i: t_0 = LAST time H attains m, t_1 = first time ≥ t_0 with
//        H = m + 1; defined iff H(1) - m ≥ 1.
// The path is reflected by r_i on [t_0, t_1] and translated outside;
// in the combinatorial form a direction x becomes ⌊r_i x⌋^J on the
// reflected span and is unchanged elsewhere.
// ---------------------------------------------------------------------------

struct HGeometry {
    /// H at the cut points.
    node_values: Vec<Rational>,
    /// Slope of H on each segment.
    slopes: Vec<i64>,
    /// min H over [0,1], as an integer.
    min: i64,
}

fn h_geometry(ctx: &QlsContext, path: &QlsPath, i: usize) -> Result<HGeometry> {
    let datum = ctx.datum;
    let mut node_values = vec![Rational::zero()];
    let mut slopes = Vec::with_capacity(path.dirs.len());
    for (u, x) in path.dirs.iter().enumerate() {
        let slope = x.act(datum, &ctx.lambda).coords[i - 1];
        slopes.push(slope);
        let span = path.cuts[u + 1] - path.cuts[u];
        let next = node_values[u] + span * Rational::from_integer(slope);
        node_values.push(next);
    }
    let min = node_values.iter().min().copied().expect("nonempty");
    if !min.is_integer() {
        return Err(Error::Invariant(format!(
            "H-function minimum {min} is not an integer"
        )));
    }
    Ok(HGeometry {
        node_values,
        slopes,
        min: min.to_integer(),
    })
}

/// Splices a reflected span `[t0, t1]` into the path: directions inside it
/// are replaced by `⌊r_i x⌋^J`, then equal neighbours are merged.
fn splice(
    ctx: &QlsContext,
    path: &QlsPath,
    i: usize,
    t0: Rational,
    t1: Rational,
) -> Result<QlsPath> {
    let datum = ctx.datum;
    let ri = WeylElt::simple(datum, i)?;
    let mut pieces: Vec<(WeylElt, Rational, Rational)> = Vec::new();
    for (u, dir) in path.dirs.iter().enumerate() {
        let (a, b) = (path.cuts[u], path.cuts[u + 1]);
        // split [a,b] at t0 and t1
        let mut marks = vec![a];
        for t in [t0, t1] {
            if t > a && t < b {
                marks.push(t);
            }
        }
        marks.push(b);
        for w in marks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if lo >= hi {
                continue;
            }
            let inside = lo >= t0 && hi <= t1;
            let d = if inside {
                ri.mul(datum, dir).min_coset_rep(datum, &ctx.j)
            } else {
                dir.clone()
            };
            match pieces.last_mut() {
                Some((pd, _, pb)) if *pd == d && *pb == lo => *pb = hi,
                _ => pieces.push((d, lo, hi)),
            }
        }
    }
    let mut dirs = Vec::with_capacity(pieces.len());
    let mut cuts = vec![Rational::zero()];
    for (d, _, b) in pieces {
        dirs.push(d);
        cuts.push(b);
    }
    QlsPath::new(ctx, dirs, cuts)
}

/// Root operator `f_i`; `None` encodes the crystal zero. Only classical
/// indices are accepted (`i = 0` is the affine node).
pub fn root_f(ctx: &QlsContext, path: &QlsPath, i: usize) -> Result<Option<QlsPath>> {
    ctx.datum.check_index(i)?;
    let geom = h_geometry(ctx, path, i)?;
    let m = Rational::from_integer(geom.min);
    let target = m + Rational::from_integer(1);
    if *geom.node_values.last().expect("nonempty") < target {
        return Ok(None);
    }
    // t0: last node attaining the minimum
    let u0 = (0..geom.node_values.len())
        .rev()
        .find(|&u| geom.node_values[u] == m)
        .expect("minimum is attained");
    let t0 = path.cuts[u0];
    // t1: first time ≥ t0 with H = m+1
    let p = (u0..geom.node_values.len())
        .find(|&u| geom.node_values[u] >= target)
        .expect("H reaches m+1 after the minimum");
    let t1 = if geom.node_values[p] == target {
        path.cuts[p]
    } else {
        // crossing inside segment p-1
        path.cuts[p - 1]
            + (target - geom.node_values[p - 1]) / Rational::from_integer(geom.slopes[p - 1])
    };
    splice(ctx, path, i, t0, t1).map(Some)
}

/// Root operator `e_i`; `None` encodes the crystal zero.
pub fn root_e(ctx: &QlsContext, path: &QlsPath, i: usize) -> Result<Option<QlsPath>> {
    ctx.datum.check_index(i)?;
    let geom = h_geometry(ctx, path, i)?;
    if geom.min > -1 {
        return Ok(None);
    }
    let m = Rational::from_integer(geom.min);
    let target = m + Rational::from_integer(1);
    // t1: first node attaining the minimum
    let u1 = (0..geom.node_values.len())
        .find(|&u| geom.node_values[u] == m)
        .expect("minimum is attained");
    let t1 = path.cuts[u1];
    // t0: last time ≤ t1 with H = m+1
    let p = (0..=u1)
        .rev()
        .find(|&u| geom.node_values[u] >= target)
        .expect("H(0) = 0 ≥ m+1");
    let t0 = if geom.node_values[p] == target {
        path.cuts[p]
    } else {
        // crossing inside segment p (H descends through m+1 there)
        path.cuts[p] + (target - geom.node_values[p]) / Rational::from_integer(geom.slopes[p])
    };
    splice(ctx, path, i, t0, t1).map(Some)
}

/// `e_i^{max}`: applies `e_i` until it vanishes.
pub fn e_max(ctx: &QlsContext, path: &QlsPath, i: usize) -> Result<QlsPath> {
    let mut cur = path.clone();
    while let Some(next) = root_e(ctx, &cur, i)? {
        cur = next;
    }
    Ok(cur)
}

/// The full `α_i`-string through `path`, from the `e_i^{max}` end downward.
pub fn string_through(ctx: &QlsContext, path: &QlsPath, i: usize) -> Result<Vec<QlsPath>> {
    let top = e_max(ctx, path, i)?;
    let mut out = vec![top.clone()];
    let mut cur = top;
    while let Some(next) = root_f(ctx, &cur, i)? {
        out.push(next.clone());
        cur = next;
    }
    Ok(out)
}

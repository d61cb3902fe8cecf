//! The quantum alcove model: lexicographic μ-chains of roots, admissible
//! subsets, their statistics, and the projection Π onto QLS paths.
//!
//! For a dominant weight μ the chain lists every pair `(γ, b)` with
//! `γ ∈ Φ^+`, `0 ≤ b < ⟨γ^∨, μ⟩`, sorted by the crossing ratio
//! `d = b/⟨γ^∨, μ⟩` with ties broken by a reflection order on `Φ^+`. The
//! sort is certified, not assumed: `validate_chain` replays the alcove
//! walk with an exact rational interior point and checks every wall
//! crossing, adjacency, and the endpoint.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::cartan_weyl::weyl::{bruhat_leq, longest_element, longest_element_levi, omega_set};
use crate::cartan_weyl::{Root, RootDatum, Weight, WeylElt};
use crate::charpoly::GradedChar;
use crate::qbg::{build_qbg, EdgeKind, QbGraph};
use crate::qls::QlsPath;
use crate::{Error, Rational, Result};

/// A total order on `Φ^+` induced by a reduced word of `w∘`: the k-th root
/// is `r_{c_1} ⋯ r_{c_{k-1}}(α_{c_k})`.
#[derive(Debug, Clone)]
pub struct ReflectionOrder {
    /// The reduced word of `w∘` the order came from.
    pub word: Vec<usize>,
    /// Positive-root indices in `≺`-order.
    pub roots: Vec<usize>,
    /// Position of each positive root in the order.
    pub position: Vec<usize>,
}

impl ReflectionOrder {
    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Result<ReflectionOrder> {
        let n = datum.num_positive_roots();
        if word.len() != n {
            return Err(Error::Parse(format!(
                "reflection-order word has length {}, expected ℓ(w∘) = {n}",
                word.len()
            )));
        }
        let elt = WeylElt::from_word(datum, word)?;
        if elt != longest_element(datum) || elt.len() != n {
            return Err(Error::Parse(
                "reflection-order word is not a reduced word for w0".into(),
            ));
        }
        let mut prefix = WeylElt::identity(datum);
        let mut roots = Vec::with_capacity(n);
        for &c in word {
            let img = prefix.act_root(datum, &Root::simple(datum.rank(), c));
            let idx = datum
                .root_index(&img.coords)
                .ok_or_else(|| Error::Invariant("inversion root is not positive".into()))?;
            roots.push(idx);
            prefix = prefix.mul(datum, &WeylElt::simple(datum, c)?);
        }
        let mut position = vec![usize::MAX; n];
        for (p, &idx) in roots.iter().enumerate() {
            position[idx] = p;
        }
        Ok(ReflectionOrder {
            word: word.to_vec(),
            roots,
            position,
        })
    }
}

/// Default reduced word for `w∘` adapted to the chain weight μ: the
/// concatenation (word for `⌊w∘⌋^{J'}`)·(word for `w_{J',∘}`) with
/// `J' = ω(J_μ)`, which places the roots pairing positively with μ in an
/// initial block.
pub fn default_w0_word(datum: &RootDatum, mu: &Weight) -> Vec<usize> {
    let j_mu = datum.j_of_weight(mu);
    let j_prime = omega_set(datum, &j_mu);
    let w0 = longest_element(datum);
    let floor = w0.min_coset_rep(datum, &j_prime);
    let levi = longest_element_levi(datum, &j_prime);
    let mut word = floor.word().to_vec();
    word.extend_from_slice(levi.word());
    word
}

/// One chain entry: a positive root, its level, and the crossing ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEntry {
    /// Index into `datum.positive_roots()`.
    pub root: usize,
    /// Level `b` with `0 ≤ b < ⟨γ^∨, μ⟩`.
    pub level: i64,
    /// `d = b / ⟨γ^∨, μ⟩`.
    pub ratio: Rational,
}

/// A validated lexicographic μ-chain.
#[derive(Debug, Clone)]
pub struct LambdaChain {
    pub mu: Weight,
    pub entries: Vec<ChainEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    LengthMismatch { expected: usize, got: usize },
    LevelCount { expected: i64, got: i64 },
    WallLevel { expected: i64, got: i64 },
    NotAdjacent { separating_root: usize },
    Endpoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainViolation {
    /// 1-based chain step, or 0 for whole-chain checks.
    pub step: usize,
    pub kind: ViolationKind,
}

/// All violations found by `validate_chain`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainReport {
    pub violations: Vec<ChainViolation>,
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            write!(f, "[step {}] {:?}; ", v.step, v.kind)?;
        }
        Ok(())
    }
}

/// Builds the lex μ-chain: all pairs `(γ, b)` sorted by ratio with
/// reflection-order tie-break, then certified by `validate_chain`.
pub fn build_lex_chain(
    datum: &RootDatum,
    mu: &Weight,
    order: &ReflectionOrder,
) -> Result<LambdaChain> {
    datum.check_rank(mu.coords.len())?;
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.coords.clone()));
    }
    let mut entries = Vec::new();
    for k in 0..datum.num_positive_roots() {
        let h = datum.pairing_idx(k, mu);
        for b in 0..h {
            entries.push(ChainEntry {
                root: k,
                level: b,
                ratio: Rational::new(b, h),
            });
        }
    }
    entries.sort_by_key(|e| (e.ratio, order.position[e.root]));
    let chain = LambdaChain {
        mu: mu.clone(),
        entries,
    };
    validate_chain(datum, &chain).map_err(Error::ChainInvalid)?;
    Ok(chain)
}

/// Certifies a chain by replaying the alcove walk from an exact interior
/// point of the fundamental alcove: every step must cross the wall
/// `H_{γ_k, -b_k}` of the current alcove into an adjacent alcove, and the
/// walk must end at `p_0 − μ` after exactly `Σ ⟨β^∨, μ⟩` steps.
pub fn validate_chain(
    datum: &RootDatum,
    chain: &LambdaChain,
) -> std::result::Result<(), ChainReport> {
    let mut report = ChainReport::default();
    let mu = &chain.mu;
    let expected_len: i64 = (0..datum.num_positive_roots())
        .map(|k| datum.pairing_idx(k, mu).max(0))
        .sum();
    if chain.entries.len() as i64 != expected_len {
        report.violations.push(ChainViolation {
            step: 0,
            kind: ViolationKind::LengthMismatch {
                expected: expected_len as usize,
                got: chain.entries.len(),
            },
        });
    }
    // height-sequence structure: b_k counts earlier entries with the same root
    let mut seen_per_root = vec![0i64; datum.num_positive_roots()];
    for (k, e) in chain.entries.iter().enumerate() {
        if e.level != seen_per_root[e.root] {
            report.violations.push(ChainViolation {
                step: k + 1,
                kind: ViolationKind::LevelCount {
                    expected: seen_per_root[e.root],
                    got: e.level,
                },
            });
        }
        seen_per_root[e.root] += 1;
    }
    // interior base point ρ/(1 + max ⟨β^∨, ρ⟩)
    let maxpair = (0..datum.num_positive_roots())
        .map(|k| datum.pairing_idx(k, &datum.rho()))
        .max()
        .unwrap_or(0);
    let scale = Rational::new(1, 1 + maxpair);
    let start: Vec<Rational> = datum
        .rho()
        .coords
        .iter()
        .map(|&c| scale * Rational::from_integer(c))
        .collect();
    let mut p = start.clone();
    let pair_at = |datum: &RootDatum, k: usize, p: &[Rational]| -> Rational {
        datum.positive_roots()[k]
            .coroot
            .coords
            .iter()
            .zip(p)
            .map(|(&c, x)| Rational::from_integer(c) * x)
            .sum()
    };
    for (k, e) in chain.entries.iter().enumerate() {
        let v = pair_at(datum, e.root, &p);
        let n = v.floor().to_integer();
        if n != -e.level {
            report.violations.push(ChainViolation {
                step: k + 1,
                kind: ViolationKind::WallLevel {
                    expected: -e.level,
                    got: n,
                },
            });
        }
        let p2 = datum.affine_reflect(e.root, Rational::from_integer(n), &p);
        for other in 0..datum.num_positive_roots() {
            if other == e.root {
                continue;
            }
            let before = pair_at(datum, other, &p).floor();
            let after = pair_at(datum, other, &p2).floor();
            if before != after {
                report.violations.push(ChainViolation {
                    step: k + 1,
                    kind: ViolationKind::NotAdjacent {
                        separating_root: other,
                    },
                });
            }
        }
        p = p2;
    }
    let target: Vec<Rational> = start
        .iter()
        .zip(&mu.coords)
        .map(|(s, &m)| *s - Rational::from_integer(m))
        .collect();
    if p != target {
        report.violations.push(ChainViolation {
            step: chain.entries.len(),
            kind: ViolationKind::Endpoint,
        });
    }
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(report)
    }
}

/// Convenience: the lex μ-chain with the default reflection order, or with
/// an explicit `w∘` word override.
pub fn lex_chain(
    datum: &RootDatum,
    mu: &Weight,
    tiebreak: Option<&[usize]>,
) -> Result<LambdaChain> {
    let order = match tiebreak {
        Some(word) => ReflectionOrder::from_word(datum, word)?,
        None => ReflectionOrder::from_word(datum, &default_w0_word(datum, mu))?,
    };
    build_lex_chain(datum, mu, &order)
}

impl LambdaChain {
    /// JSON dump: ordered entries with root coordinates, level, ratio.
    pub fn to_json(&self, datum: &RootDatum) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "gamma": datum.positive_roots()[e.root].root.coords,
                    "b": e.level,
                    "d": e.ratio.to_string(),
                })
            })
            .collect();
        Value::Array(entries)
    }
}

/// A subset of chain positions tracing a directed path from `e` in `QB(W)`,
/// with its vertex trail and quantum markers cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleSubset {
    /// 0-based chain positions, strictly increasing.
    pub indices: Vec<usize>,
    /// Vertex (in `QB(W)`) after each selected step; starts implicitly at e.
    pub dirs: Vec<usize>,
    /// Whether each selected step is a quantum edge (the set `A_-`).
    pub quantum: Vec<bool>,
}

/// The quantum alcove model for one chain: the chain, `QB(W)`, and a dense
/// `(vertex, root) → edge` table for the admissibility DFS.
pub struct AlcoveModel<'a> {
    pub datum: &'a RootDatum,
    pub chain: LambdaChain,
    pub qbw: QbGraph,
    edge: Vec<Vec<Option<(usize, EdgeKind)>>>,
}

impl<'a> AlcoveModel<'a> {
    pub fn new(datum: &'a RootDatum, chain: LambdaChain) -> AlcoveModel<'a> {
        let qbw = build_qbg(datum, &BTreeSet::new());
        let nv = qbw.vertices().len();
        let nr = datum.num_positive_roots();
        let mut edge = vec![vec![None; nr]; nv];
        for e in qbw.edges() {
            edge[e.from][e.label] = Some((e.to, e.kind));
        }
        AlcoveModel {
            datum,
            chain,
            qbw,
            edge,
        }
    }

    /// All admissible subsets, by DFS with prefix pruning, sorted by index
    /// sequence.
    pub fn enumerate_admissible(&self) -> Vec<AdmissibleSubset> {
        let identity_vertex = self
            .qbw
            .vertex_of(&WeylElt::identity(self.datum))
            .expect("identity is a vertex");
        let mut out = Vec::new();
        let mut stack: Vec<AdmissibleSubset> = vec![AdmissibleSubset {
            indices: Vec::new(),
            dirs: Vec::new(),
            quantum: Vec::new(),
        }];
        while let Some(a) = stack.pop() {
            let from = a.dirs.last().copied().unwrap_or(identity_vertex);
            let next = a.indices.last().map_or(0, |&j| j + 1);
            for pos in next..self.chain.entries.len() {
                if let Some((to, kind)) = self.edge[from][self.chain.entries[pos].root] {
                    let mut b = a.clone();
                    b.indices.push(pos);
                    b.dirs.push(to);
                    b.quantum.push(kind == EdgeKind::Quantum);
                    stack.push(b);
                }
            }
            out.push(a);
        }
        out.sort_by(|a, b| a.indices.cmp(&b.indices));
        out
    }

    /// `wt(A) = −r_{γ_{j_1},−b_{j_1}} ⋯ r_{γ_{j_r},−b_{j_r}} · (−μ)`,
    /// evaluated with the affine reflections applied rightmost first.
    pub fn wt(&self, a: &AdmissibleSubset) -> Weight {
        let mut point = self.chain.mu.neg();
        for &j in a.indices.iter().rev() {
            let e = &self.chain.entries[j];
            // r_{γ,-b}: ζ ↦ r_γ ζ − b γ
            let reflected = self.datum.root_reflect_weight(e.root, &point);
            let gamma_w = &self.datum.positive_roots()[e.root].as_weight;
            point = reflected.sub(&gamma_w.scaled(e.level));
        }
        point.neg()
    }

    /// `height(A) = Σ_{j ∈ A_-} (⟨γ_j^∨, μ⟩ − b_j)`.
    pub fn height(&self, a: &AdmissibleSubset) -> i64 {
        a.indices
            .iter()
            .zip(&a.quantum)
            .filter(|(_, &q)| q)
            .map(|(&j, _)| {
                let e = &self.chain.entries[j];
                self.datum.pairing_idx(e.root, &self.chain.mu) - e.level
            })
            .sum()
    }

    /// `coheight(A) = Σ_{j ∈ A_-} b_j`.
    pub fn coheight(&self, a: &AdmissibleSubset) -> i64 {
        a.indices
            .iter()
            .zip(&a.quantum)
            .filter(|(_, &q)| q)
            .map(|(&j, _)| self.chain.entries[j].level)
            .sum()
    }

    /// `φ(A) = r_{γ_{j_1}} ⋯ r_{γ_{j_r}}`.
    pub fn final_direction(&self, a: &AdmissibleSubset) -> WeylElt {
        match a.dirs.last() {
            Some(&v) => self.qbw.vertices()[v].clone(),
            None => WeylElt::identity(self.datum),
        }
    }

    /// The projection Π: groups the selected steps by equal crossing ratio
    /// and twists by `w∘`, landing in `QLS(−w∘μ)`. Validation against the
    /// target context is the caller's (and the test suite's) concern.
    pub fn project_pi(&self, a: &AdmissibleSubset) -> QlsPath {
        ratio_group_to_qls(self.datum, &self.chain, &self.qbw, a)
    }

    /// Admissible subsets with all four statistics, exported as JSON.
    pub fn to_json(&self, subsets: &[AdmissibleSubset]) -> Value {
        let items: Vec<Value> = subsets
            .iter()
            .map(|a| {
                json!({
                    "indices": a.indices.iter().map(|j| j + 1).collect::<Vec<_>>(),
                    "wt": self.wt(a).coords,
                    "height": self.height(a),
                    "coheight": self.coheight(a),
                    "final": self.final_direction(a).to_string(),
                })
            })
            .collect();
        Value::Array(items)
    }
}

/// Shared ratio-grouping underlying Π and Ξ: directions are the path
/// vertices at the end of each ratio class, twisted by `w∘` and projected
/// to `W^{J}` for `J = J_{−w∘μ} = ω(J_μ)`; cuts are 0, the positive ratio
/// values, 1.
pub(crate) fn ratio_group_to_qls(
    datum: &RootDatum,
    chain: &LambdaChain,
    qbw: &QbGraph,
    a: &AdmissibleSubset,
) -> QlsPath {
    let w0 = longest_element(datum);
    let j_target = omega_set(datum, &datum.j_of_weight(&chain.mu));
    let vertex = |k: Option<usize>| -> WeylElt {
        match k {
            Some(v) => qbw.vertices()[v].clone(),
            None => WeylElt::identity(datum),
        }
    };
    // positions (into a.indices) where each ratio class ends
    let mut class_ends: Vec<(Rational, usize)> = Vec::new();
    for (t, &j) in a.indices.iter().enumerate() {
        let d = chain.entries[j].ratio;
        match class_ends.last_mut() {
            Some((last_d, end)) if *last_d == d => *end = t,
            _ => class_ends.push((d, t)),
        }
    }
    let mut x_elts: Vec<WeylElt> = Vec::new();
    let mut cuts: Vec<Rational> = vec![Rational::zero()];
    // the zero-ratio class contributes no cut; every positive class opens a
    // new direction at its ratio value
    let mut prev_end: Option<usize> = if let Some(&(d, end)) = class_ends.first() {
        if d.is_zero() {
            Some(end)
        } else {
            None
        }
    } else {
        None
    };
    for &(d, end) in &class_ends {
        if d.is_zero() {
            continue;
        }
        x_elts.push(vertex(prev_end.map(|t| a.dirs[t])));
        cuts.push(d);
        prev_end = Some(end);
    }
    x_elts.push(vertex(a.dirs.last().copied()));
    cuts.push(Rational::from_integer(1));
    let dirs = x_elts
        .into_iter()
        .map(|x| x.mul(datum, &w0).min_coset_rep(datum, &j_target))
        .collect();
    QlsPath { dirs, cuts }
}

/// `E_{wλ}(x;q,0)` in the quantum alcove model: admissible subsets of the
/// lex λ-chain with `⌊φ(A)⌋^J ≤ w`, graded by coheight.
pub fn macdonald_alcove(
    datum: &RootDatum,
    w: &WeylElt,
    lambda: &Weight,
    tiebreak: Option<&[usize]>,
) -> Result<GradedChar> {
    let chain = lex_chain(datum, lambda, tiebreak)?;
    let model = AlcoveModel::new(datum, chain);
    let subsets = model.enumerate_admissible();
    alcove_char(&model, w, &subsets)
}

/// The alcove-model character for `w`, over precomputed subsets.
pub fn alcove_char(
    model: &AlcoveModel,
    w: &WeylElt,
    subsets: &[AdmissibleSubset],
) -> Result<GradedChar> {
    let datum = model.datum;
    let j = datum.j_of_weight(&model.chain.mu);
    if !w.is_minimal_rep(datum, &j) {
        return Err(Error::NotMinimalRep(w.to_string()));
    }
    let mut out = GradedChar::zero();
    for a in subsets {
        let phi = model.final_direction(a).min_coset_rep(datum, &j);
        if bruhat_leq(datum, &phi, w) {
            out.add_term(&model.wt(a), model.coheight(a) as u32, 1);
        }
    }
    Ok(out)
}

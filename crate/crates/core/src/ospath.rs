//! Quantum alcove paths in the Orr–Shimozono normal form.
//!
//! Every path datum here is derived from the lex `(−w∘λ)`-chain: entry `k`
//! of the chain carries `γ_k` and the level `b_k`, and the affine-root data
//! is recovered as `a_k = ⟨γ_k^∨, −w∘λ⟩ − b_k`. A path is an admissible
//! index set; its weight follows the step recursion
//! `wt ← wt + a_j · dir(γ_j)` starting from `w∘λ`, its degree is
//! `Σ a_j` over quantum steps, and its prefix direction ι̃ is the product
//! of the reflections taken inside the level-zero block. Summing
//! `x^{wt} q^{deg}` over `ι̃(p) ≥ w⌊w∘⌋^{-1}` yields `E_{wλ}(x;q,0)`.

use serde_json::{json, Value};

use crate::alcove::{lex_chain, ratio_group_to_qls, AdmissibleSubset, AlcoveModel};
use crate::cartan_weyl::weyl::{bruhat_leq, longest_element, omega_weight};
use crate::cartan_weyl::{RootDatum, Weight, WeylElt};
use crate::charpoly::GradedChar;
use crate::qls::QlsPath;
use crate::{Error, Result};

/// One enumerated path with every statistic cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OsPath {
    /// 0-based positions into the lex `(−w∘λ)`-chain.
    pub indices: Vec<usize>,
    /// Final direction `dir(end(A))`.
    pub dir: WeylElt,
    /// `wt(end(A))`.
    pub wt: Weight,
    /// `deg(qwt) = Σ_{A^-} a_j`.
    pub deg: i64,
    /// Prefix direction ι̃: the product over selected level-zero entries.
    pub iota_tilde: WeylElt,
    /// Quantum markers per selected step (the set `A^-`).
    pub quantum: Vec<bool>,
}

/// The Orr–Shimozono model for one dominant λ: the alcove machinery over
/// the lex `(−w∘λ)`-chain plus the `a_k` sequence and the block boundary.
pub struct OsModel<'a> {
    pub datum: &'a RootDatum,
    pub lambda: Weight,
    /// Chain weight `μ = −w∘λ`.
    pub mu: Weight,
    pub alcove: AlcoveModel<'a>,
    /// `a_k = ⟨γ_k^∨, μ⟩ − b_k` per chain entry.
    pub a_values: Vec<i64>,
    /// Number of level-zero entries (`M = ℓ(⌊w∘⌋)`).
    pub prefix_len: usize,
}

impl<'a> OsModel<'a> {
    pub fn new(
        datum: &'a RootDatum,
        lambda: Weight,
        tiebreak: Option<&[usize]>,
    ) -> Result<OsModel<'a>> {
        datum.check_rank(lambda.coords.len())?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.coords));
        }
        let mu = omega_weight(datum, &lambda);
        let chain = lex_chain(datum, &mu, tiebreak)?;
        let a_values: Vec<i64> = chain
            .entries
            .iter()
            .map(|e| datum.pairing_idx(e.root, &mu) - e.level)
            .collect();
        let prefix_len = chain.entries.iter().take_while(|e| e.level == 0).count();
        let alcove = AlcoveModel::new(datum, chain);
        Ok(OsModel {
            datum,
            lambda,
            mu,
            alcove,
            a_values,
            prefix_len,
        })
    }

    /// Builds the cached path from an admissible index set, running the
    /// `wt`/`dir` step recursion from `(e, w∘λ)`.
    pub fn path_from_subset(&self, a: &AdmissibleSubset) -> OsPath {
        let datum = self.datum;
        let chain = &self.alcove.chain;
        let mut wt = longest_element(datum).act(datum, &self.lambda);
        let mut deg = 0i64;
        let mut prev = WeylElt::identity(datum);
        let mut iota_tilde = WeylElt::identity(datum);
        for (t, &j) in a.indices.iter().enumerate() {
            let entry = &chain.entries[j];
            let gamma = &datum.positive_roots()[entry.root];
            // wt += a_j · prev(γ_j), with prev(γ_j) converted to weight coords
            let img = prev.act_root(datum, &gamma.root);
            let img_weight = datum.root_to_weight(&img);
            wt = wt.add(&img_weight.scaled(self.a_values[j]));
            if a.quantum[t] {
                deg += self.a_values[j];
            }
            prev = self.alcove.qbw.vertices()[a.dirs[t]].clone();
            if j < self.prefix_len {
                iota_tilde = prev.clone();
            }
        }
        OsPath {
            indices: a.indices.clone(),
            dir: prev,
            wt,
            deg,
            iota_tilde,
            quantum: a.quantum.clone(),
        }
    }

    /// All of `QB(e; m_{w∘λ})_lex` with cached statistics.
    pub fn enumerate(&self) -> Vec<OsPath> {
        self.alcove
            .enumerate_admissible()
            .iter()
            .map(|a| self.path_from_subset(a))
            .collect()
    }

    /// The bijection Ξ onto `QLS(λ)` by ratio grouping.
    pub fn xi(&self, path: &OsPath) -> QlsPath {
        let subset = self.subset_of(path);
        ratio_group_to_qls(self.datum, &self.alcove.chain, &self.alcove.qbw, &subset)
    }

    /// Reconstructs the admissible-subset view of a path (vertex trail and
    /// quantum markers) by replaying the edges.
    fn subset_of(&self, path: &OsPath) -> AdmissibleSubset {
        let identity_vertex = self
            .alcove
            .qbw
            .vertex_of(&WeylElt::identity(self.datum))
            .expect("identity vertex");
        let mut dirs = Vec::with_capacity(path.indices.len());
        let mut cur = identity_vertex;
        for &j in &path.indices {
            let root = self.alcove.chain.entries[j].root;
            let edge = self
                .alcove
                .qbw
                .edge_by_label(cur, root)
                .expect("admissible step");
            cur = edge.to;
            dirs.push(cur);
        }
        AdmissibleSubset {
            indices: path.indices.clone(),
            dirs,
            quantum: path.quantum.clone(),
        }
    }

    /// JSON record with indices (1-based), direction word, weight, degree.
    pub fn to_json(&self, path: &OsPath) -> Value {
        json!({
            "indices": path.indices.iter().map(|j| j + 1).collect::<Vec<_>>(),
            "dir": path.dir.to_string(),
            "iota": path.iota_tilde.to_string(),
            "wt": path.wt.coords,
            "deg": path.deg,
            "steps": path.indices.iter().map(|&j| {
                let e = &self.alcove.chain.entries[j];
                json!({
                    "gamma": self.datum.positive_roots()[e.root].root.coords,
                    "a": self.a_values[j],
                    "b": e.level,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// `qwt` degree of a path (stored at enumeration time).
pub fn qwt_deg(path: &OsPath) -> i64 {
    path.deg
}

/// ι̃ of a path (stored at enumeration time).
pub fn tilde_iota(path: &OsPath) -> &WeylElt {
    &path.iota_tilde
}

/// `E_{wλ}(x;q,0)` in the Orr–Shimozono model: paths with
/// `ι̃(p) ≥ w ⌊w∘⌋^{-1}`, graded by `deg(qwt)`.
pub fn macdonald_os(
    datum: &RootDatum,
    w: &WeylElt,
    lambda: &Weight,
    tiebreak: Option<&[usize]>,
) -> Result<GradedChar> {
    let model = OsModel::new(datum, lambda.clone(), tiebreak)?;
    let paths = model.enumerate();
    os_char(&model, w, &paths)
}

/// The OS character for `w`, over precomputed paths.
pub fn os_char(model: &OsModel, w: &WeylElt, paths: &[OsPath]) -> Result<GradedChar> {
    let datum = model.datum;
    let j = datum.j_of_weight(&model.lambda);
    if !w.is_minimal_rep(datum, &j) {
        return Err(Error::NotMinimalRep(w.to_string()));
    }
    let w0 = longest_element(datum);
    let floor_w0 = w0.min_coset_rep(datum, &j);
    let threshold = w.mul(datum, &floor_w0.inv(datum));
    let mut out = GradedChar::zero();
    for p in paths {
        if bruhat_leq(datum, &threshold, &p.iota_tilde) {
            out.add_term(&p.wt, p.deg as u32, 1);
        }
    }
    Ok(out)
}

//! Weyl-group elements in canonical form.
//!
//! An element is stored as the image of ρ (a strictly dominant weight has
//! trivial stabilizer, so the image determines the element) together with a
//! cached reduced word obtained by descent stripping: repeatedly remove the
//! smallest `i` with `⟨α_i^∨, w(ρ)⟩ < 0` on the left. The stripped word is
//! the canonical reduced word used everywhere; ties broken by smallest
//! index make every derived object deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{Root, RootDatum, Weight};
use crate::{Error, Result};

#[derive(Debug, Clone, Eq)]
pub struct WeylElt {
    /// `w(ρ)` in fundamental-weight coordinates.
    key: Vec<i64>,
    /// Canonical reduced word, 1-based letters, leftmost factor first.
    word: Vec<usize>,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.word.len(), &self.key).cmp(&(other.word.len(), &other.key))
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let body: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", body.join(" "))
    }
}

impl WeylElt {
    pub fn identity(datum: &RootDatum) -> WeylElt {
        WeylElt {
            key: datum.rho().coords,
            word: Vec::new(),
        }
    }

    pub fn simple(datum: &RootDatum, i: usize) -> Result<WeylElt> {
        datum.check_index(i)?;
        WeylElt::from_key(datum, datum.reflect_weight(i, &datum.rho()).coords)
    }

    /// Reconstructs the element from `w(ρ)`, deriving the canonical word by
    /// descent stripping. Fails if the vector is not in the ρ-orbit.
    pub fn from_key(datum: &RootDatum, key: Vec<i64>) -> Result<WeylElt> {
        datum.check_rank(key.len())?;
        let max_len = datum.num_positive_roots();
        let mut word = Vec::new();
        let mut cur = Weight::new(key.clone());
        loop {
            match (1..=datum.rank()).find(|&i| cur.coords[i - 1] < 0) {
                None => break,
                Some(i) => {
                    word.push(i);
                    cur = datum.reflect_weight(i, &cur);
                    if word.len() > max_len {
                        return Err(Error::Invariant(format!(
                            "key {key:?} is not in the ρ-orbit"
                        )));
                    }
                }
            }
        }
        if cur.coords != datum.rho().coords {
            return Err(Error::Invariant(format!(
                "key {key:?} is not in the ρ-orbit"
            )));
        }
        Ok(WeylElt { key, word })
    }

    /// Product of the listed simple reflections (the word need not be
    /// reduced).
    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Result<WeylElt> {
        let mut key = datum.rho();
        for &i in word.iter().rev() {
            datum.check_index(i)?;
            key = datum.reflect_weight(i, &key);
        }
        WeylElt::from_key(datum, key.coords)
    }

    /// Parses `"e"`, `"w0"`, or a word like `"s1 s2 s1"` (also `1 2 1`);
    /// tokens multiply left to right.
    pub fn parse(datum: &RootDatum, s: &str) -> Result<WeylElt> {
        let mut acc = WeylElt::identity(datum);
        let tokens: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == '*' || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(Error::Parse(format!("empty Weyl word `{s}`")));
        }
        for t in tokens {
            let factor = match t {
                "e" => WeylElt::identity(datum),
                "w0" => longest_element(datum),
                _ => {
                    let digits = t.strip_prefix('s').unwrap_or(t);
                    let i: usize = digits
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad Weyl-word token `{t}`")))?;
                    WeylElt::simple(datum, i)?
                }
            };
            acc = acc.mul(datum, &factor);
        }
        Ok(acc)
    }

    pub fn key(&self) -> &[i64] {
        &self.key
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Coxeter length ℓ(w).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Action on a weight: apply the word as function composition, the
    /// rightmost letter first.
    pub fn act(&self, datum: &RootDatum, xi: &Weight) -> Weight {
        let mut cur = xi.clone();
        for &i in self.word.iter().rev() {
            cur = datum.reflect_weight(i, &cur);
        }
        cur
    }

    /// Action on (possibly negative) root coordinates.
    pub fn act_root(&self, datum: &RootDatum, beta: &Root) -> Root {
        let mut cur = beta.clone();
        for &i in self.word.iter().rev() {
            cur = datum.reflect_root(i, &cur);
        }
        cur
    }

    pub fn mul(&self, datum: &RootDatum, other: &WeylElt) -> WeylElt {
        let key = self.act(datum, &Weight::new(other.key.clone()));
        WeylElt::from_key(datum, key.coords).expect("product of orbit keys stays in the orbit")
    }

    pub fn inv(&self, datum: &RootDatum) -> WeylElt {
        let mut key = datum.rho();
        for &i in self.word.iter() {
            key = datum.reflect_weight(i, &key);
        }
        WeylElt::from_key(datum, key.coords).expect("inverse key stays in the orbit")
    }

    /// True iff `ℓ(r_i w) < ℓ(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.key[i - 1] < 0
    }

    /// True iff `ℓ(w r_i) < ℓ(w)`, i.e. `w(α_i) ∈ Φ^-`.
    pub fn has_right_descent(&self, datum: &RootDatum, i: usize) -> bool {
        let img = self.act_root(datum, &Root::simple(datum.rank(), i));
        !img.is_positive()
    }

    /// `r_i · w` (left multiplication).
    pub fn left_mul_simple(&self, datum: &RootDatum, i: usize) -> WeylElt {
        let key = datum.reflect_weight(i, &Weight::new(self.key.clone()));
        WeylElt::from_key(datum, key.coords).expect("orbit closed under reflections")
    }

    /// Minimal coset representative `⌊w⌋^J` for `w W_J` (1-based `J`).
    pub fn min_coset_rep(&self, datum: &RootDatum, j: &BTreeSet<usize>) -> WeylElt {
        let mut cur = self.clone();
        loop {
            match j.iter().find(|&&i| cur.has_right_descent(datum, i)) {
                None => return cur,
                Some(&i) => {
                    let si = WeylElt::simple(datum, i).expect("valid index in J");
                    cur = cur.mul(datum, &si);
                }
            }
        }
    }

    /// Membership in `W^J`: `w α ∈ Φ^+` for all `α ∈ Φ_J^+`; equivalent to
    /// having no right descent in `J`.
    pub fn is_minimal_rep(&self, datum: &RootDatum, j: &BTreeSet<usize>) -> bool {
        j.iter().all(|&i| !self.has_right_descent(datum, i))
    }
}

/// Bruhat order on `W` via the lifting property: for a left descent `i` of
/// `w`, `u ≤ w ⇔ min(u, r_i u) ≤ r_i w`.
pub fn bruhat_leq(datum: &RootDatum, u: &WeylElt, w: &WeylElt) -> bool {
    let mut u = u.clone();
    let mut w = w.clone();
    loop {
        if u.len() > w.len() {
            return false;
        }
        if u.is_identity() {
            return true;
        }
        // canonical words start with a left descent
        let i = w.word()[0];
        w = WeylElt {
            key: datum.reflect_weight(i, &Weight::new(w.key.clone())).coords,
            word: w.word[1..].to_vec(),
        };
        if u.has_left_descent(i) {
            u = u.left_mul_simple(datum, i);
        }
    }
}

/// All of `W`, sorted by (length, key).
pub fn enumerate_weyl_group(datum: &RootDatum) -> Vec<WeylElt> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let rho = datum.rho().coords;
    seen.insert(rho.clone());
    let mut queue = VecDeque::from([rho]);
    while let Some(k) = queue.pop_front() {
        for i in 1..=datum.rank() {
            let k2 = datum.reflect_weight(i, &Weight::new(k.clone())).coords;
            if seen.insert(k2.clone()) {
                queue.push_back(k2);
            }
        }
    }
    let mut out: Vec<WeylElt> = seen
        .into_iter()
        .map(|k| WeylElt::from_key(datum, k).expect("orbit key"))
        .collect();
    out.sort();
    out
}

/// All minimal coset representatives `W^J`, sorted by (length, key).
pub fn enumerate_minimal_reps(datum: &RootDatum, j: &BTreeSet<usize>) -> Vec<WeylElt> {
    enumerate_weyl_group(datum)
        .into_iter()
        .filter(|w| w.is_minimal_rep(datum, j))
        .collect()
}

/// Longest element `w∘`, the unique element with `w∘(ρ) = -ρ`.
pub fn longest_element(datum: &RootDatum) -> WeylElt {
    WeylElt::from_key(datum, datum.rho().neg().coords).expect("-ρ is in the orbit")
}

/// Longest element `w_{J,∘}` of the parabolic subgroup `W_J`, computed as
/// `⌊w∘⌋^{-1} w∘`.
pub fn longest_element_levi(datum: &RootDatum, j: &BTreeSet<usize>) -> WeylElt {
    let w0 = longest_element(datum);
    let floor = w0.min_coset_rep(datum, j);
    floor.inv(datum).mul(datum, &w0)
}

/// The Dynkin diagram involution `ω` with `w∘ α_i = −α_{ω(i)}`.
pub fn omega(datum: &RootDatum, i: usize) -> Result<usize> {
    datum.check_index(i)?;
    let w0 = longest_element(datum);
    let img = w0.act_root(datum, &Root::simple(datum.rank(), i));
    let neg = img.neg();
    for k in 1..=datum.rank() {
        if neg == Root::simple(datum.rank(), k) {
            return Ok(k);
        }
    }
    Err(Error::Invariant(format!(
        "w0(α_{i}) is not a negative simple root"
    )))
}

/// `ω` applied to an index set.
pub fn omega_set(datum: &RootDatum, j: &BTreeSet<usize>) -> BTreeSet<usize> {
    j.iter()
        .map(|&i| omega(datum, i).expect("valid index"))
        .collect()
}

/// `ω` acting on the weight lattice as `-w∘`.
pub fn omega_weight(datum: &RootDatum, xi: &Weight) -> Weight {
    longest_element(datum).act(datum, xi).neg()
}

/// Group automorphism `ω(w) = w∘ w w∘` with `ω(r_i) = r_{ω(i)}`.
pub fn omega_elt(datum: &RootDatum, w: &WeylElt) -> WeylElt {
    let w0 = longest_element(datum);
    w0.mul(datum, w).mul(datum, &w0)
}

/// The reflection `r_β` for the positive root with index `idx`.
pub fn reflection(datum: &RootDatum, idx: usize) -> WeylElt {
    let key = datum.root_reflect_weight(idx, &datum.rho());
    WeylElt::from_key(datum, key.coords).expect("reflection key is in the orbit")
}

/// Brute-force subword test: `u ≤ w` iff some subword of a reduced word of
/// `w` multiplies to `u`. Exponential in `ℓ(w)`; test oracle only.
pub fn bruhat_leq_subword_oracle(datum: &RootDatum, u: &WeylElt, w: &WeylElt) -> bool {
    let mut products: BTreeSet<Vec<i64>> = BTreeSet::new();
    products.insert(datum.rho().coords);
    for &i in w.word() {
        let si = WeylElt::simple(datum, i).expect("valid letter");
        let extended: Vec<Vec<i64>> = products
            .iter()
            .map(|k| {
                WeylElt::from_key(datum, k.clone())
                    .expect("orbit key")
                    .mul(datum, &si)
                    .key()
                    .to_vec()
            })
            .collect();
        products.extend(extended);
    }
    products.contains(u.key())
}

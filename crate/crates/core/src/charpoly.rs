//! Group-algebra polynomials `Σ c · x^ξ q^k` with integer coefficients,
//! Demazure operators, and the recursive computation of `E_{wλ}(x;q,0)`.
//!
//! Terms are keyed by (weight coordinates, q-exponent); zero coefficients
//! are never stored, and iteration order is the B-tree order on keys, so
//! equality and rendering are exact and deterministic. All four models
//! produce only nonnegative q-exponents, which the key type enforces.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::cartan_weyl::{RootDatum, Weight, WeylElt};
use crate::qls::QlsContext;
use crate::{Error, Result};

/// A finite `Z`-linear combination of monomials `x^ξ q^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedChar {
    terms: BTreeMap<(Vec<i64>, u32), i64>,
}

impl GradedChar {
    pub fn zero() -> GradedChar {
        GradedChar::default()
    }

    /// The constant polynomial `1` (for the given rank).
    pub fn one(rank: usize) -> GradedChar {
        GradedChar::monomial(Weight::zero(rank), 0, 1)
    }

    pub fn monomial(weight: Weight, q_exp: u32, coeff: i64) -> GradedChar {
        let mut p = GradedChar::zero();
        p.add_term(&weight, q_exp, coeff);
        p
    }

    pub fn add_term(&mut self, weight: &Weight, q_exp: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let key = (weight.coords.clone(), q_exp);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &GradedChar) -> GradedChar {
        let mut out = self.clone();
        for ((wt, q), c) in &other.terms {
            out.add_term(&Weight::new(wt.clone()), *q, *c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (ascending key) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, u32, i64)> {
        self.terms.iter().map(|((wt, q), c)| (wt, *q, *c))
    }

    pub fn coeff(&self, weight: &Weight, q_exp: u32) -> i64 {
        self.terms
            .get(&(weight.coords.clone(), q_exp))
            .copied()
            .unwrap_or(0)
    }

    /// The first key present in exactly one polynomial or carrying different
    /// coefficients, for mismatch reports.
    pub fn first_difference(&self, other: &GradedChar) -> Option<(Vec<i64>, u32, i64, i64)> {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for key in keys {
            let a = self.terms.get(key).copied().unwrap_or(0);
            let b = other.terms.get(key).copied().unwrap_or(0);
            if a != b {
                return Some((key.0.clone(), key.1, a, b));
            }
        }
        None
    }

    /// Demazure operator `D_i` (1-based `i`), extended `Z[q]`-linearly:
    /// on `x^ξ` with `n = ⟨α_i^∨, ξ⟩` it yields `x^ξ(1 + x^{-α_i} + ⋯ +
    /// x^{-nα_i})` for `n ≥ 0`, zero for `n = -1`, and
    /// `-x^ξ(x^{α_i} + ⋯ + x^{(-n-1)α_i})` for `n ≤ -2`.
    pub fn demazure_d(&self, datum: &RootDatum, i: usize) -> Result<GradedChar> {
        datum.check_index(i)?;
        let alpha = datum.simple_root_weight(i);
        let mut out = GradedChar::zero();
        for ((wt, q), c) in &self.terms {
            let xi = Weight::new(wt.clone());
            let n = xi.coords[i - 1];
            if n >= 0 {
                for t in 0..=n {
                    out.add_term(&xi.sub(&alpha.scaled(t)), *q, *c);
                }
            } else if n <= -2 {
                for t in 1..=(-n - 1) {
                    out.add_term(&xi.add(&alpha.scaled(t)), *q, -*c);
                }
            }
        }
        Ok(out)
    }

    /// Permutes exponent weights by `w`, fixing q-exponents.
    pub fn weyl_act(&self, datum: &RootDatum, w: &WeylElt) -> GradedChar {
        let mut out = GradedChar::zero();
        for ((wt, q), c) in &self.terms {
            out.add_term(&w.act(datum, &Weight::new(wt.clone())), *q, *c);
        }
        out
    }

    /// Invariance under every simple reflection.
    pub fn is_symmetric(&self, datum: &RootDatum) -> bool {
        (1..=datum.rank()).all(|i| {
            let si = WeylElt::simple(datum, i).expect("valid index");
            self.weyl_act(datum, &si) == *self
        })
    }

    /// Drops every term with a positive q-exponent.
    pub fn specialize_q0(&self) -> GradedChar {
        let mut out = GradedChar::zero();
        for ((wt, q), c) in &self.terms {
            if *q == 0 {
                out.add_term(&Weight::new(wt.clone()), 0, *c);
            }
        }
        out
    }

    /// Terms ordered for display: weight descending, then q ascending.
    fn display_order(&self) -> Vec<(&Vec<i64>, u32, i64)> {
        let mut terms: Vec<(&Vec<i64>, u32, i64)> =
            self.terms.iter().map(|((wt, q), c)| (wt, *q, *c)).collect();
        terms.sort_by(|a, b| b.0.cmp(a.0).then(a.1.cmp(&b.1)));
        terms
    }

    /// Plain-text rendering, weight-major descending.
    pub fn render_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (wt, q, c)) in self.display_order().into_iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else if c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != 1 {
                parts.push(mag.to_string());
            }
            if wt.iter().any(|&x| x != 0) {
                let body: Vec<String> = wt.iter().map(|x| x.to_string()).collect();
                parts.push(format!("x^[{}]", body.join(",")));
            }
            match q {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(format!("q^{q}")),
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            out.push_str(&parts.join("*"));
        }
        out
    }

    /// LaTeX rendering with exponents written as `λ` minus a nonnegative
    /// combination of simple roots.
    pub fn render_latex(&self, datum: &RootDatum, lambda: &Weight) -> Result<String> {
        let mut pieces: Vec<String> = Vec::new();
        for (wt, q, c) in self.display_order() {
            let gap = lambda.sub(&Weight::new(wt.clone()));
            let coords = datum
                .weight_to_root_coords(&gap)
                .ok_or_else(|| Error::Invariant("singular Cartan matrix".into()))?;
            let mut exp = String::from("\\lambda");
            for (k, r) in coords.iter().enumerate() {
                if !r.is_integer() || *r.numer() < 0 {
                    return Err(Error::Invariant(format!(
                        "weight {wt:?} is not of the form λ - Q^+"
                    )));
                }
                match r.to_integer() {
                    0 => {}
                    1 => exp.push_str(&format!(" - \\alpha_{{{}}}", k + 1)),
                    m => exp.push_str(&format!(" - {m}\\alpha_{{{}}}", k + 1)),
                }
            }
            let mut term = String::new();
            if c != 1 {
                term.push_str(&c.to_string());
                term.push(' ');
            }
            if q > 0 {
                term.push_str(&if q == 1 {
                    "q ".to_string()
                } else {
                    format!("q^{{{q}}} ")
                });
            }
            term.push_str(&format!("e^{{{exp}}}"));
            pieces.push(term);
        }
        if pieces.is_empty() {
            return Ok("0".into());
        }
        Ok(pieces.join(" + "))
    }

    /// Canonically sorted JSON term list `[{"wt": [...], "q": k, "c": n}]`.
    pub fn to_json_terms(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((wt, q), c)| json!({"wt": wt, "q": q, "c": c}))
            .collect();
        Value::Array(terms)
    }
}

impl fmt::Display for GradedChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

/// Classical Demazure character `D_{i_1} ⋯ D_{i_k} x^λ` for a reduced word
/// `w = r_{i_1} ⋯ r_{i_k}` (the rightmost operator acts first; the result
/// is independent of the chosen reduced word).
pub fn demazure_character(datum: &RootDatum, w: &WeylElt, lambda: &Weight) -> Result<GradedChar> {
    datum.check_rank(lambda.coords.len())?;
    apply_demazure_word(datum, w.word(), &GradedChar::monomial(lambda.clone(), 0, 1))
}

/// Applies `D_{word[0]} ∘ ⋯ ∘ D_{word[last]}` to `f`.
pub fn apply_demazure_word(
    datum: &RootDatum,
    word: &[usize],
    f: &GradedChar,
) -> Result<GradedChar> {
    let mut cur = f.clone();
    for &i in word.iter().rev() {
        cur = cur.demazure_d(datum, i)?;
    }
    Ok(cur)
}

/// `E_{wλ}(x;q,0)` by the Demazure recursion: the base case `E_{eλ}` is the
/// QLS enumeration at the identity, and each left descent of a reduced word
/// of `w` applies one more Demazure operator.
pub fn macdonald_recursive(datum: &RootDatum, w: &WeylElt, lambda: &Weight) -> Result<GradedChar> {
    let ctx = QlsContext::new(datum, lambda.clone())?;
    if !w.is_minimal_rep(datum, ctx.j_set()) {
        return Err(Error::NotMinimalRep(w.to_string()));
    }
    let base = crate::qls::gch_qls(&ctx, &WeylElt::identity(datum))?;
    apply_demazure_word(datum, w.word(), &base)
}

/// True iff `f` is fixed by `D_i` for every classical `i`.
pub fn demazure_fixed(datum: &RootDatum, f: &GradedChar) -> Result<bool> {
    for i in 1..=datum.rank() {
        if &f.demazure_d(datum, i)? != f {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan_weyl::{build_root_datum, CartanType};

    fn datum(s: &str) -> RootDatum {
        build_root_datum(CartanType::parse(s).unwrap())
    }

    fn x(coords: Vec<i64>) -> GradedChar {
        GradedChar::monomial(Weight::new(coords), 0, 1)
    }

    #[test]
    fn demazure_cases_on_monomials() {
        let d = datum("A1");
        // n = 2: x^{2ϖ} ↦ x^{2ϖ} + 1 + x^{-2ϖ}
        let f = x(vec![2]).demazure_d(&d, 1).unwrap();
        let mut expect = x(vec![2]);
        expect.add_term(&Weight::new(vec![0]), 0, 1);
        expect.add_term(&Weight::new(vec![-2]), 0, 1);
        assert_eq!(f, expect);
        // n = 1: x^ξ(1 + x^{-α})
        let f = x(vec![1]).demazure_d(&d, 1).unwrap();
        let mut expect = x(vec![1]);
        expect.add_term(&Weight::new(vec![-1]), 0, 1);
        assert_eq!(f, expect);
        // n = -1: zero
        assert!(x(vec![-1]).demazure_d(&d, 1).unwrap().is_zero());
        // n = -2: -x^ξ·x^α
        let f = x(vec![-2]).demazure_d(&d, 1).unwrap();
        assert_eq!(f, GradedChar::monomial(Weight::new(vec![0]), 0, -1));
        // n = -3: -x^ξ(x^α + x^{2α})
        let f = x(vec![-3]).demazure_d(&d, 1).unwrap();
        let mut expect = GradedChar::monomial(Weight::new(vec![-1]), 0, -1);
        expect.add_term(&Weight::new(vec![1]), 0, -1);
        assert_eq!(f, expect);
        // affine index is rejected
        assert!(matches!(
            x(vec![0]).demazure_d(&d, 0),
            Err(Error::AffineIndex)
        ));
    }

    #[test]
    fn demazure_string_identity_small_pairings() {
        // D_1 x^ξ is the signed α_1-string sum, case by case for n = -3..3
        let d = datum("A2");
        let alpha = d.simple_root_weight(1);
        for n in -3i64..=3 {
            let xi = Weight::new(vec![n, 1]);
            let f = x(xi.coords.clone()).demazure_d(&d, 1).unwrap();
            let mut expect = GradedChar::zero();
            if n >= 0 {
                for t in 0..=n {
                    expect.add_term(&xi.sub(&alpha.scaled(t)), 0, 1);
                }
            } else if n <= -2 {
                for t in 1..=(-n - 1) {
                    expect.add_term(&xi.add(&alpha.scaled(t)), 0, -1);
                }
            }
            assert_eq!(f, expect, "n = {n}");
        }
    }

    #[test]
    fn demazure_is_idempotent() {
        let d = datum("A2");
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for i in 1..=2 {
                    let f = x(vec![a, b]);
                    let once = f.demazure_d(&d, i).unwrap();
                    let twice = once.demazure_d(&d, i).unwrap();
                    assert_eq!(once, twice, "ξ = ({a},{b}), i = {i}");
                }
            }
        }
    }

    #[test]
    fn demazure_fixes_invariant_polynomials() {
        let d = datum("A1");
        let mut f = x(vec![2]);
        f.add_term(&Weight::new(vec![0]), 0, 1);
        f.add_term(&Weight::new(vec![-2]), 0, 1);
        assert!(f.is_symmetric(&d));
        assert_eq!(f.demazure_d(&d, 1).unwrap(), f);
    }

    #[test]
    fn demazure_character_values() {
        let d = datum("A1");
        let e = WeylElt::identity(&d);
        let s1 = WeylElt::parse(&d, "s1").unwrap();
        let lam = Weight::new(vec![2]);
        assert_eq!(demazure_character(&d, &e, &lam).unwrap(), x(vec![2]));
        let f = demazure_character(&d, &s1, &lam).unwrap();
        let mut expect = x(vec![2]);
        expect.add_term(&Weight::new(vec![0]), 0, 1);
        expect.add_term(&Weight::new(vec![-2]), 0, 1);
        assert_eq!(f, expect);
    }

    #[test]
    fn demazure_character_word_independent() {
        let d = datum("A2");
        let lam = Weight::new(vec![1, 1]);
        let via_121 = apply_demazure_word(&d, &[1, 2, 1], &x(vec![1, 1])).unwrap();
        let via_212 = apply_demazure_word(&d, &[2, 1, 2], &x(vec![1, 1])).unwrap();
        assert_eq!(via_121, via_212);
        assert!(via_121.is_symmetric(&d));
        let w0 = crate::cartan_weyl::longest_element(&d);
        assert_eq!(demazure_character(&d, &w0, &lam).unwrap(), via_121);
    }

    #[test]
    fn macdonald_recursive_pinned_and_word_invariant() {
        // A1, λ = 2ϖ, w = s1: D_1(x^2 + q) = x^2 + 1 + x^-2 + q
        let d = datum("A1");
        let s1 = WeylElt::parse(&d, "s1").unwrap();
        let f = macdonald_recursive(&d, &s1, &Weight::new(vec![2])).unwrap();
        let mut expect = x(vec![2]);
        expect.add_term(&Weight::new(vec![0]), 0, 1);
        expect.add_term(&Weight::new(vec![-2]), 0, 1);
        expect.add_term(&Weight::new(vec![0]), 1, 1);
        assert_eq!(f, expect);
        // base case w = e applies no operators
        let d2 = datum("A2");
        let lam = Weight::new(vec![1, 1]);
        let ctx = crate::qls::QlsContext::new(&d2, lam.clone()).unwrap();
        let base = crate::qls::gch_qls(&ctx, &WeylElt::identity(&d2)).unwrap();
        assert_eq!(
            macdonald_recursive(&d2, &WeylElt::identity(&d2), &lam).unwrap(),
            base
        );
        // the recursion is reduced-word independent: both w0 words give the
        // same polynomial
        let w0 = crate::cartan_weyl::longest_element(&d2);
        let via_canonical = macdonald_recursive(&d2, &w0, &lam).unwrap();
        let via_121 = apply_demazure_word(&d2, &[1, 2, 1], &base).unwrap();
        let via_212 = apply_demazure_word(&d2, &[2, 1, 2], &base).unwrap();
        assert_eq!(via_canonical, via_121);
        assert_eq!(via_canonical, via_212);
        // non-minimal w is rejected
        let ctx10 = Weight::new(vec![1, 0]);
        let s2 = WeylElt::parse(&d2, "s2").unwrap();
        assert!(matches!(
            macdonald_recursive(&d2, &s2, &ctx10),
            Err(Error::NotMinimalRep(_))
        ));
    }

    #[test]
    fn symmetry_and_q0() {
        let d = datum("A1");
        assert!(!x(vec![1]).is_symmetric(&d));
        let mut f = x(vec![2]);
        f.add_term(&Weight::new(vec![0]), 1, 1); // + q
        assert_eq!(f.specialize_q0(), x(vec![2]));
        let e = WeylElt::identity(&d);
        assert_eq!(f.weyl_act(&d, &e), f);
    }

    #[test]
    fn render_text_formats() {
        let d = datum("A1");
        let mut f = x(vec![2]);
        f.add_term(&Weight::new(vec![0]), 0, 1);
        f.add_term(&Weight::new(vec![0]), 1, 1);
        f.add_term(&Weight::new(vec![-2]), 0, 1);
        assert_eq!(f.render_text(), "x^[2] + 1 + q + x^[-2]");
        assert_eq!(GradedChar::zero().render_text(), "0");
        assert_eq!(GradedChar::one(1).render_text(), "1");
        let g = GradedChar::monomial(Weight::new(vec![1]), 2, -3);
        assert_eq!(g.render_text(), "-3*x^[1]*q^2");
        let latex = f.render_latex(&d, &Weight::new(vec![2])).unwrap();
        assert!(latex.contains("e^{\\lambda}"));
        assert!(latex.contains("\\alpha_{1}"));
    }

    #[test]
    fn json_terms_are_sorted() {
        let mut f = GradedChar::zero();
        f.add_term(&Weight::new(vec![1, 0]), 0, 1);
        f.add_term(&Weight::new(vec![-1, 1]), 2, 3);
        let v = f.to_json_terms();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[0]["wt"][0], -1);
        assert_eq!(arr[1]["c"], 1);
    }

    #[test]
    fn first_difference_reports_key() {
        let a = x(vec![1]);
        let b = x(vec![0]);
        let (wt, q, ca, cb) = a.first_difference(&b).unwrap();
        assert_eq!((wt, q), (vec![0], 0));
        assert_eq!((ca, cb), (0, 1));
        assert!(a.first_difference(&a).is_none());
    }
}

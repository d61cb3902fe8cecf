//! Finite root-system data and Weyl-group arithmetic.
//!
//! Conventions, used consistently across the crate:
//!
//! * simple roots are indexed `1..=rank` (Bourbaki numbering); index 0 is
//!   reserved for the affine node and always rejected;
//! * [`Weight`] coordinates live in the fundamental-weight basis `{ϖ_i}`,
//!   [`Root`] coordinates in the simple-root basis, [`Coroot`] coordinates
//!   in the simple-coroot basis;
//! * the Cartan matrix entry `a[i][j] = ⟨α_i^∨, α_j⟩`;
//! * Weyl words multiply left to right and act on weights as function
//!   composition, so `s1 s2 · ξ = s1(s2(ξ))`.

pub mod weyl;

pub use weyl::{
    bruhat_leq, enumerate_minimal_reps, enumerate_weyl_group, longest_element,
    longest_element_levi, omega, omega_elt, omega_set, omega_weight, reflection, WeylElt,
};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::{Error, Rational, Result};

/// One of the seven series of finite simple root systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A validated finite Dynkin type such as `A2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    letter: Letter,
    rank: usize,
}

impl CartanType {
    /// Accepted ranks: A n≥1, B n≥2, C n≥2, D n≥4, E 6..8, F 4, G 2.
    pub fn new(letter: Letter, rank: usize) -> Result<Self> {
        let ok = match letter {
            Letter::A => rank >= 1,
            Letter::B | Letter::C => rank >= 2,
            Letter::D => rank >= 4,
            Letter::E => (6..=8).contains(&rank),
            Letter::F => rank == 4,
            Letter::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidCartanType {
                letter: match letter {
                    Letter::A => 'A',
                    Letter::B => 'B',
                    Letter::C => 'C',
                    Letter::D => 'D',
                    Letter::E => 'E',
                    Letter::F => 'F',
                    Letter::G => 'G',
                },
                rank,
            });
        }
        Ok(CartanType { letter, rank })
    }

    /// Parses strings like `"A2"`, `"g2"`, `"B10"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Letter::A,
            Some('B') => Letter::B,
            Some('C') => Letter::C,
            Some('D') => Letter::D,
            Some('E') => Letter::E,
            Some('F') => Letter::F,
            Some('G') => Letter::G,
            _ => return Err(Error::Parse(format!("bad Cartan type `{s}`"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in Cartan type `{s}`")))?;
        CartanType::new(letter, rank)
    }

    pub fn letter(&self) -> Letter {
        self.letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cartan matrix `a[i][j] = ⟨α_{i+1}^∨, α_{j+1}⟩` (0-based storage).
    fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        // off-diagonal bonds; `set(i, j, v)` is 1-based
        let set = |a: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            a[i - 1][j - 1] = v;
        };
        let chain = |a: &mut Vec<Vec<i64>>, lo: usize, hi: usize| {
            for k in lo..hi {
                a[k - 1][k] = -1;
                a[k][k - 1] = -1;
            }
        };
        match self.letter {
            Letter::A => chain(&mut a, 1, n),
            Letter::B => {
                chain(&mut a, 1, n);
                // α_n short: ⟨α_n^∨, α_{n-1}⟩ = -2
                set(&mut a, n, n - 1, -2);
            }
            Letter::C => {
                chain(&mut a, 1, n);
                // α_n long: ⟨α_{n-1}^∨, α_n⟩ = -2
                set(&mut a, n - 1, n, -2);
            }
            Letter::D => {
                chain(&mut a, 1, n - 1);
                set(&mut a, n - 2, n, -1);
                set(&mut a, n, n - 2, -1);
            }
            Letter::E => {
                // Bourbaki: chain 1-3-4-5-...-n, branch 2-4
                set(&mut a, 1, 3, -1);
                set(&mut a, 3, 1, -1);
                set(&mut a, 2, 4, -1);
                set(&mut a, 4, 2, -1);
                for k in 3..n {
                    set(&mut a, k, k + 1, -1);
                    set(&mut a, k + 1, k, -1);
                }
            }
            Letter::F => {
                chain(&mut a, 1, 4);
                // α_1, α_2 long; α_3, α_4 short: ⟨α_3^∨, α_2⟩ = -2
                set(&mut a, 3, 2, -2);
            }
            Letter::G => {
                // α_1 short, α_2 long: ⟨α_1^∨, α_2⟩ = -3
                set(&mut a, 1, 2, -3);
                set(&mut a, 2, 1, -1);
            }
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// Integral weight in the fundamental-weight basis: `coords[k]` is
/// `⟨α_{k+1}^∨, ξ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![0; rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Weight {
        Weight::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, c: i64) -> Weight {
        Weight::new(self.coords.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

/// Root in the simple-root basis: `coords[k]` is the coefficient of `α_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i - 1] = 1;
        Root { coords }
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root::new(self.coords.iter().map(|a| -a).collect())
    }

    /// Sum of simple-root coefficients.
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

/// Coroot in the simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coroot {
    pub coords: Vec<i64>,
}

impl Coroot {
    pub fn new(coords: Vec<i64>) -> Self {
        Coroot { coords }
    }
}

/// A positive root together with its coroot and its expression in the
/// fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: Root,
    pub coroot: Coroot,
    pub as_weight: Weight,
}

/// Frozen root-system data for one finite type: Cartan matrix, the positive
/// roots with their coroots, and ρ. All Weyl-group arithmetic routes through
/// this structure.
#[derive(Debug, Clone)]
pub struct RootDatum {
    ctype: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    roots: Vec<PositiveRoot>,
    root_index: HashMap<Vec<i64>, usize>,
}

/// Builds the root datum for a finite type: the positive roots are the
/// reflection closure of the simple roots, with coroots transported along.
pub fn build_root_datum(ctype: CartanType) -> RootDatum {
    RootDatum::new(ctype)
}

impl RootDatum {
    pub fn new(ctype: CartanType) -> RootDatum {
        let rank = ctype.rank();
        let cartan = ctype.cartan_matrix();
        // Reflection closure over (root, coroot) pairs.
        let mut seen: BTreeSet<(Vec<i64>, Vec<i64>)> = BTreeSet::new();
        let mut queue: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for i in 1..=rank {
            let mut r = vec![0i64; rank];
            r[i - 1] = 1;
            let pair = (r.clone(), r);
            seen.insert(pair.clone());
            queue.push(pair);
        }
        while let Some((r, c)) = queue.pop() {
            for i in 1..=rank {
                // ⟨α_i^∨, β⟩ and ⟨β^∨, α_i⟩
                let pr: i64 = (0..rank).map(|j| cartan[i - 1][j] * r[j]).sum();
                let pc: i64 = (0..rank).map(|j| c[j] * cartan[j][i - 1]).sum();
                let mut r2 = r.clone();
                r2[i - 1] -= pr;
                let mut c2 = c.clone();
                c2[i - 1] -= pc;
                let pair = (r2, c2);
                if seen.insert(pair.clone()) {
                    queue.push(pair);
                }
            }
        }
        let mut roots: Vec<PositiveRoot> = seen
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&x| x >= 0))
            .map(|(r, c)| {
                let as_weight = Weight::new(
                    (0..rank)
                        .map(|i| (0..rank).map(|j| cartan[i][j] * r[j]).sum())
                        .collect(),
                );
                PositiveRoot {
                    root: Root::new(r),
                    coroot: Coroot::new(c),
                    as_weight,
                }
            })
            .collect();
        roots.sort_by_key(|p| (p.root.height(), p.root.coords.clone()));
        let root_index = roots
            .iter()
            .enumerate()
            .map(|(k, p)| (p.root.coords.clone(), k))
            .collect();
        RootDatum {
            ctype,
            rank,
            cartan,
            roots,
            root_index,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cartan matrix entry `⟨α_i^∨, α_j⟩`, 1-based.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// Guards a 1-based simple-root index; index 0 names the affine node.
    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 {
            return Err(Error::AffineIndex);
        }
        if i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok(())
    }

    pub fn check_rank(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: len,
            });
        }
        Ok(())
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    /// Index of a positive root given its simple-root coordinates.
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut coords = vec![0; self.rank];
        coords[i - 1] = 1;
        Weight::new(coords)
    }

    /// ρ = Σ ϖ_i, the all-ones weight.
    pub fn rho(&self) -> Weight {
        Weight::new(vec![1; self.rank])
    }

    /// `α_i` written in the fundamental-weight basis (column i of the
    /// Cartan matrix).
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight::new((0..self.rank).map(|k| self.cartan[k][i - 1]).collect())
    }

    /// Any (possibly negative) root vector converted to the
    /// fundamental-weight basis.
    pub fn root_to_weight(&self, beta: &Root) -> Weight {
        Weight::new(
            (0..self.rank)
                .map(|r| {
                    (0..self.rank)
                        .map(|c| self.cartan[r][c] * beta.coords[c])
                        .sum()
                })
                .collect(),
        )
    }

    /// The bilinear pairing `⟨β^∨, ξ⟩`.
    pub fn pairing(&self, coroot: &Coroot, xi: &Weight) -> Result<i64> {
        self.check_rank(coroot.coords.len())?;
        self.check_rank(xi.coords.len())?;
        Ok(coroot
            .coords
            .iter()
            .zip(&xi.coords)
            .map(|(c, x)| c * x)
            .sum())
    }

    /// `⟨β^∨, ξ⟩` for the positive root with index `idx`.
    pub fn pairing_idx(&self, idx: usize, xi: &Weight) -> i64 {
        self.roots[idx]
            .coroot
            .coords
            .iter()
            .zip(&xi.coords)
            .map(|(c, x)| c * x)
            .sum()
    }

    /// Simple reflection `r_i ξ = ξ − ⟨α_i^∨, ξ⟩ α_i` on weight coordinates.
    pub fn reflect_weight(&self, i: usize, xi: &Weight) -> Weight {
        let n = xi.coords[i - 1];
        let coords = (0..self.rank)
            .map(|k| xi.coords[k] - n * self.cartan[k][i - 1])
            .collect();
        Weight::new(coords)
    }

    /// Simple reflection on (possibly negative) root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &Root) -> Root {
        let p: i64 = (0..self.rank)
            .map(|j| self.cartan[i - 1][j] * beta.coords[j])
            .sum();
        let mut coords = beta.coords.clone();
        coords[i - 1] -= p;
        Root::new(coords)
    }

    /// Reflection `r_β ξ = ξ − ⟨β^∨, ξ⟩ β` for the positive root `idx`.
    pub fn root_reflect_weight(&self, idx: usize, xi: &Weight) -> Weight {
        let n = self.pairing_idx(idx, xi);
        let beta_w = &self.roots[idx].as_weight;
        Weight::new(
            xi.coords
                .iter()
                .zip(&beta_w.coords)
                .map(|(x, b)| x - n * b)
                .collect(),
        )
    }

    /// Affine reflection in the hyperplane `⟨β^∨, ·⟩ = level` (exact
    /// rational coordinates).
    pub fn affine_reflect(&self, idx: usize, level: Rational, p: &[Rational]) -> Vec<Rational> {
        let pairing: Rational = self.roots[idx]
            .coroot
            .coords
            .iter()
            .zip(p)
            .map(|(&c, x)| Rational::from_integer(c) * x)
            .sum();
        let shift = pairing - level;
        self.roots[idx]
            .as_weight
            .coords
            .iter()
            .zip(p)
            .map(|(&b, x)| *x - shift * Rational::from_integer(b))
            .collect()
    }

    /// `J_λ = { i : ⟨α_i^∨, λ⟩ = 0 }`, as a 1-based index set.
    pub fn j_of_weight(&self, lambda: &Weight) -> BTreeSet<usize> {
        (1..=self.rank)
            .filter(|&i| lambda.coords[i - 1] == 0)
            .collect()
    }

    /// Positive roots supported on `J` (the Levi root subsystem `Φ_J^+`).
    pub fn levi_root_indices(&self, j: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&k| {
                self.roots[k]
                    .root
                    .coords
                    .iter()
                    .enumerate()
                    .all(|(p, &c)| c == 0 || j.contains(&(p + 1)))
            })
            .collect()
    }

    /// `2ρ_J = Σ_{α ∈ Φ_J^+} α` in the fundamental-weight basis; the factor
    /// of two keeps everything integral.
    pub fn two_rho_j(&self, j: &BTreeSet<usize>) -> Weight {
        let mut acc = Weight::zero(self.rank);
        for k in self.levi_root_indices(j) {
            acc = acc.add(&self.roots[k].as_weight);
        }
        acc
    }

    /// `2⟨β^∨, ρ − ρ_J⟩` for the positive root `idx`; always an integer.
    pub fn quantum_drop_doubled(&self, idx: usize, j: &BTreeSet<usize>) -> i64 {
        2 * self.pairing_idx(idx, &self.rho()) - self.pairing_idx(idx, &self.two_rho_j(j))
    }

    /// Solves `ξ = Σ c_k α_{k+1}` for rational root coordinates `c`.
    /// Returns `None` only if the Cartan matrix were singular, which cannot
    /// happen for a valid type.
    pub fn weight_to_root_coords(&self, xi: &Weight) -> Option<Vec<Rational>> {
        // Gaussian elimination on the Cartan matrix (columns are the α_j).
        let n = self.rank;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| Rational::from_integer(self.cartan[r][c]))
                    .chain(std::iter::once(Rational::from_integer(xi.coords[r])))
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != Rational::from_integer(0))?;
            m.swap(col, piv);
            let p = m[col][col];
            m[col][col..=n].iter_mut().for_each(|x| *x /= p);
            for r in 0..n {
                if r != col && m[r][col] != Rational::from_integer(0) {
                    let f = m[r][col];
                    let pivot_row: Vec<Rational> = m[col][col..=n].to_vec();
                    for (c, pv) in (col..=n).zip(pivot_row) {
                        let sub = f * pv;
                        m[r][c] -= sub;
                    }
                }
            }
        }
        Some((0..n).map(|r| m[r][n]).collect())
    }
}

/// Parses a comma-separated coordinate list like `"2"` or `"1,0,3"`.
pub fn parse_weight(datum: &RootDatum, s: &str) -> Result<Weight> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad weight coordinate `{t}`")))
        })
        .collect::<Result<_>>()?;
    datum.check_rank(coords.len())?;
    Ok(Weight::new(coords))
}

//! Generators of the quiver Hecke algebra, words, permutations and Garnir elements.

use crate::combinat::{GarnirData, ResidueData};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Cartan matrix entry `a_ij` of the quiver `Γ_e`.
pub fn cartan(i: i64, j: i64, rd: &ResidueData) -> i64 {
    let (i, j) = (rd.reduce(i), rd.reduce(j));
    if i == j {
        2
    } else if rd.e == 2 {
        -2
    } else if rd.arrow(i, j) || rd.arrow(j, i) {
        -1
    } else {
        0
    }
}

/// `(Λ, α_i)`: the number of charge entries congruent to `i`.
pub fn cyclotomic_exponent(i: i64, rd: &ResidueData) -> usize {
    let i = rd.reduce(i);
    rd.charge.iter().filter(|&&k| rd.reduce(k) == i).count()
}

/// A permutation of `1..=N`, stored by images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { img: (1..=n).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n + 1];
        for &x in &img {
            if x == 0 || x > n || seen[x] {
                return Err(Error::input(format!("{img:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm { img })
    }

    /// `s_r` in `S_n`.
    pub fn simple(n: usize, r: usize) -> Self {
        let mut p = Perm::identity(n);
        p.img.swap(r - 1, r);
        p
    }

    /// `s_{r_1} ∘ s_{r_2} ∘ … ∘ s_{r_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut p = Perm::identity(n);
        for &r in word {
            p = p.then_simple(r);
        }
        p
    }

    /// `s(l, m) = s_l s_{l+1} … s_{m-1}`.
    pub fn segment(n: usize, l: usize, m: usize) -> Self {
        Perm::from_word(n, &(l..m).collect::<Vec<_>>())
    }

    pub fn size(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1]
    }

    /// `self ∘ s_r`.
    pub fn then_simple(&self, r: usize) -> Self {
        let mut img = self.img.clone();
        img.swap(r - 1, r);
        Perm { img }
    }

    /// Functional composition `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let n = self.size().max(other.size());
        let a = self.extended(n);
        let b = other.extended(n);
        Perm { img: (1..=n).map(|i| a.apply(b.apply(i))).collect() }
    }

    pub fn extended(&self, n: usize) -> Perm {
        let mut img = self.img.clone();
        img.extend(self.size() + 1..=n);
        Perm { img }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.size()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x - 1] = i + 1;
        }
        Perm { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Coxeter length: number of inversions.
    pub fn length(&self) -> usize {
        let n = self.img.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.img[i] > self.img[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.size()).filter(|&r| self.img[r - 1] > self.img[r]).collect()
    }

    /// Canonical reduced word: repeatedly strip the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.img.clone();
        let mut out = Vec::new();
        loop {
            match (1..w.len()).find(|&r| w[r - 1] > w[r]) {
                Some(r) => {
                    out.push(r);
                    w.swap(r - 1, r);
                }
                None => break,
            }
        }
        out.reverse();
        out
    }

    /// Bruhat order `self ≤ other` via the tableau criterion on images.
    pub fn bruhat_le(&self, other: &Perm) -> bool {
        let n = self.size().max(other.size());
        let a = self.extended(n);
        let b = other.extended(n);
        for k in 1..n {
            let mut x: Vec<usize> = a.img[..k].to_vec();
            let mut y: Vec<usize> = b.img[..k].to_vec();
            x.sort_unstable();
            y.sort_unstable();
            if x.iter().zip(&y).any(|(p, q)| p > q) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.img.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.img.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let img = Vec::<usize>::deserialize(d)?;
        Perm::from_images(img).map_err(serde::de::Error::custom)
    }
}

pub fn canonical_reduced_word(w: &Perm) -> Vec<usize> {
    w.reduced_word()
}

/// One letter of a generator word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Psi(usize),
    Y(usize),
    Idem(Vec<i64>),
}

impl Serialize for Gen {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(2))?;
        match self {
            Gen::Psi(r) => {
                m.serialize_entry("op", "psi")?;
                m.serialize_entry("arg", r)?;
            }
            Gen::Y(r) => {
                m.serialize_entry("op", "y")?;
                m.serialize_entry("arg", r)?;
            }
            Gen::Idem(i) => {
                m.serialize_entry("op", "idem")?;
                m.serialize_entry("arg", i)?;
            }
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Gen {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Arg {
            One(usize),
            Many(Vec<i64>),
        }
        #[derive(Deserialize)]
        struct Raw {
            op: String,
            arg: Arg,
        }
        let raw = Raw::deserialize(d)?;
        match (raw.op.as_str(), raw.arg) {
            ("psi", Arg::One(r)) => Ok(Gen::Psi(r)),
            ("y", Arg::One(r)) => Ok(Gen::Y(r)),
            ("idem", Arg::Many(i)) => Ok(Gen::Idem(i)),
            (op, _) => Err(serde::de::Error::custom(format!("bad generator '{op}'"))),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Psi(r) => write!(f, "ψ{r}"),
            Gen::Y(r) => write!(f, "y{r}"),
            Gen::Idem(i) => write!(f, "e({})", i.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        }
    }
}

/// A word in the generators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorWord {
    pub letters: Vec<Gen>,
}

impl GeneratorWord {
    pub fn new(letters: Vec<Gen>) -> Self {
        GeneratorWord { letters }
    }

    pub fn psi_word(rs: &[usize]) -> Self {
        GeneratorWord { letters: rs.iter().map(|&r| Gen::Psi(r)).collect() }
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        GeneratorWord { letters }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        for g in &self.letters {
            let ok = match g {
                Gen::Psi(r) => *r >= 1 && *r < n,
                Gen::Y(s) => *s >= 1 && *s <= n,
                Gen::Idem(i) => i.len() == n,
            };
            if !ok {
                return Err(Error::input(format!("generator {g} out of range for n = {n}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.letters.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" "))
    }
}

/// Degree of a word applied to a vector of residue sequence `bi`; residues are permuted
/// by each `ψ` as the word is read.
pub fn word_degree(w: &GeneratorWord, bi: &[i64], rd: &ResidueData) -> Result<i64> {
    w.validate(bi.len())?;
    let mut cur = bi.to_vec();
    let mut deg = 0;
    for g in &w.letters {
        match g {
            Gen::Psi(r) => {
                deg -= cartan(cur[r - 1], cur[*r], rd);
                cur.swap(r - 1, *r);
            }
            Gen::Y(_) => deg += 2,
            Gen::Idem(_) => {}
        }
    }
    Ok(deg)
}

/// A formal integer combination of words; like words are merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorExpr {
    pub terms: BTreeMap<GeneratorWord, i64>,
}

impl GeneratorExpr {
    pub fn word(w: GeneratorWord) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, 1);
        GeneratorExpr { terms }
    }

    pub fn add_term(&mut self, w: GeneratorWord, c: i64) {
        let entry = self.terms.entry(w.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&w);
        }
    }

    /// Product with `(word + 1)` on the right.
    pub fn times_one_plus(&self, w: &GeneratorWord) -> Self {
        let mut out = self.clone();
        for (t, c) in &self.terms {
            out.add_term(t.concat(w), *c);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `τ^A_d = e(i_A)(ψ_{w_{r_1}}+1)…(ψ_{w_{r_k}}+1)` for the canonical reduced word of `d`,
/// each brick transposition expanded through its canonical reduced word.
pub fn tau_element(gd: &GarnirData, d: &Perm) -> Result<GeneratorExpr> {
    tau_element_with(gd, &d.reduced_word(), |w| w.reduced_word())
        .and_then(|x| if gd.coset_reps.contains(d) { Ok(x) } else { Err(Error::input(format!("{d} is not in D_A"))) })
}

/// `τ^A_d` for an explicit reduced word of `d` and a chosen reduced word per brick swap.
pub fn tau_element_with(
    gd: &GarnirData,
    d_word: &[usize],
    brick_word: impl Fn(&Perm) -> Vec<usize>,
) -> Result<GeneratorExpr> {
    let mut expr = GeneratorExpr::word(GeneratorWord::new(vec![Gen::Idem(gd.residues.clone())]));
    for &r in d_word {
        let w = gd
            .bricks
            .get(r - 1)
            .ok_or_else(|| Error::input(format!("s_{r} out of range for b_A = {}", gd.b)))?;
        expr = expr.times_one_plus(&GeneratorWord::psi_word(&brick_word(w)));
    }
    Ok(expr)
}

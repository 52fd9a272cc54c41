//! Symmetric-group primitives: one-line permutations, words in the simple
//! reflections, Demazure products, inversion sets, and the coordinate action
//! on exact rational vectors.
//!
//! Conventions, fixed once for the whole crate:
//! * composition is `(u ∘ v)(i) = u(v(i))`;
//! * a permutation acts on vectors by `(w · v)[w(i)] = v[i]`, so `s_i` swaps
//!   coordinates `i` and `i+1` and the action is a left group action.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{rat_int, Rat};

/// A permutation of {1, .., n} in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation { n, images });
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition s_i in S_n, swapping i and i+1.
    pub fn simple(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: n.saturating_sub(1),
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Self { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// w(i), with i 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(Self {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Self { images }
    }

    /// Number of inversions, i.e. Coxeter length.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Acts on coordinates: result[w(i)] = v[i].
    pub fn apply_to_vector(&self, v: &QVec) -> Result<QVec> {
        if self.n() != v.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                got: v.n(),
            });
        }
        let mut coords = vec![rat_int(0); v.n()];
        for (i, &wi) in self.images.iter().enumerate() {
            coords[wi - 1] = v.coords[i].clone();
        }
        Ok(QVec { coords })
    }

    /// Right descents: positions i with w(i) > w(i+1).
    fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.images[i - 1] > self.images[i])
            .collect()
    }

    /// All of S_n, in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Self> {
        (1..=n)
            .permutations(n)
            .map(|images| Self { images })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(de)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}

/// A word (j_1, .., j_N) in the simple reflections of S_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<usize>,
    ambient: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>, ambient: usize) -> Result<Self> {
        for &j in &letters {
            if j == 0 || j + 1 > ambient {
                return Err(Error::LetterOutOfRange {
                    letter: j,
                    max: ambient.saturating_sub(1),
                });
            }
        }
        Ok(Self { letters, ambient })
    }

    pub fn empty(ambient: usize) -> Self {
        Self {
            letters: Vec::new(),
            ambient,
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains_letter(&self, j: usize) -> bool {
        self.letters.contains(&j)
    }

    /// Plain product s_{j_1} ∘ s_{j_2} ∘ ... ∘ s_{j_N}.
    pub fn ordinary_product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.ambient);
        for &j in &self.letters {
            let s = Permutation::simple(j, self.ambient).expect("validated letter");
            acc = acc.compose(&s).expect("same n");
        }
        acc
    }

    /// Demazure product s_{j_1} ⋆ ... ⋆ s_{j_N}, where s ⋆ w = sw if the
    /// length goes up and w otherwise.
    pub fn demazure_product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.ambient);
        for &j in self.letters.iter().rev() {
            let s = Permutation::simple(j, self.ambient).expect("validated letter");
            let candidate = s.compose(&acc).expect("same n");
            if candidate.length() > acc.length() {
                acc = candidate;
            }
        }
        acc
    }

    pub fn is_reduced(&self) -> bool {
        self.ordinary_product().length() == self.letters.len()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letters.iter().join(","))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(ser)
    }
}

/// A vector in R^n with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVec {
    coords: Vec<Rat>,
}

impl QVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self {
            coords: values.iter().map(|&v| rat_int(v)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            coords: vec![rat_int(0); n],
        }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// 1-based coordinate access.
    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c == &rat_int(0))
    }

    pub fn add(&self, other: &QVec) -> QVec {
        assert_eq!(self.n(), other.n(), "QVec ambient mismatch");
        QVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        assert_eq!(self.n(), other.n(), "QVec ambient mismatch");
        QVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> QVec {
        QVec {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, by: &Rat) -> QVec {
        QVec {
            coords: self.coords.iter().map(|a| a * by).collect(),
        }
    }

    pub fn dot(&self, other: &QVec) -> Rat {
        assert_eq!(self.n(), other.n(), "QVec ambient mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn coordinate_sum(&self) -> Rat {
        self.coords.iter().sum()
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.coords.iter().map(crate::rat::rat_to_string).join(",")
        )
    }
}

impl Serialize for QVec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        struct Scalar<'a>(&'a Rat);
        impl Serialize for Scalar<'_> {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                crate::rat::serialize_rat(self.0, ser)
            }
        }
        let mut seq = ser.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&Scalar(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QVec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Scalar(#[serde(deserialize_with = "crate::rat::deserialize_rat")] Rat);
        let raw = Vec::<Scalar>::deserialize(de)?;
        Ok(QVec {
            coords: raw.into_iter().map(|s| s.0).collect(),
        })
    }
}

/// The simple root α_i = e_i − e_{i+1} in R^n.
pub fn simple_root(i: usize, n: usize) -> Result<QVec> {
    if i == 0 || i + 1 > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    let mut v = QVec::zero(n);
    v.coords[i - 1] = rat_int(1);
    v.coords[i] = rat_int(-1);
    Ok(v)
}

/// The fundamental weight ω_i = e_1 + ... + e_i in R^n.
pub fn fundamental_weight(i: usize, n: usize) -> Result<QVec> {
    if i == 0 || i + 1 > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n.saturating_sub(1),
        });
    }
    let mut v = QVec::zero(n);
    for k in 0..i {
        v.coords[k] = rat_int(1);
    }
    Ok(v)
}

/// Sum of all fundamental weights ω_1 + ... + ω_{n−1} = (n−1, n−2, .., 0).
pub fn weight_sum(n: usize) -> QVec {
    QVec {
        coords: (0..n).map(|k| rat_int((n - 1 - k) as i64)).collect(),
    }
}

/// One reduced word for w, by stripping right descents.
pub fn a_reduced_word(w: &Permutation) -> Word {
    let n = w.n();
    let mut letters = Vec::with_capacity(w.length());
    let mut cur = w.clone();
    while let Some(&i) = cur.descents().first() {
        // w = (w s_i) s_i and l(w s_i) = l(w) - 1
        let s = Permutation::simple(i, n).expect("in range");
        cur = cur.compose(&s).expect("same n");
        letters.push(i);
    }
    letters.reverse();
    Word::new(letters, n).expect("letters in range")
}

/// All reduced words of w by exhaustive descent recursion. Desk scale only.
pub fn reduced_words(w: &Permutation) -> Result<Vec<Word>> {
    const CAP: usize = 6;
    if w.n() > CAP {
        return Err(Error::EnumerationTooLarge {
            cap: CAP,
            got: w.n(),
        });
    }
    fn go(w: &Permutation, out: &mut Vec<Vec<usize>>, stem: &mut Vec<usize>) {
        let descents = w.descents();
        if descents.is_empty() {
            let mut word = stem.clone();
            word.reverse();
            out.push(word);
            return;
        }
        for i in descents {
            let s = Permutation::simple(i, w.n()).expect("in range");
            let shorter = w.compose(&s).expect("same n");
            stem.push(i);
            go(&shorter, out, stem);
            stem.pop();
        }
    }
    let mut raw = Vec::new();
    go(w, &mut raw, &mut Vec::new());
    raw.sort();
    raw.dedup();
    Ok(raw
        .into_iter()
        .map(|letters| Word::new(letters, w.n()).expect("letters in range"))
        .collect())
}

/// inv(w) = {α_{j_1}, s_{j_1}(α_{j_2}), ..} computed from one reduced word.
pub fn inversion_roots(w: &Permutation) -> BTreeSet<QVec> {
    let n = w.n();
    let word = a_reduced_word(w);
    let mut out = BTreeSet::new();
    let mut prefix = Permutation::identity(n);
    for (k, &j) in word.letters().iter().enumerate() {
        let root = simple_root(j, n).expect("in range");
        out.insert(prefix.apply_to_vector(&root).expect("same n"));
        if k + 1 < word.len() {
            let s = Permutation::simple(j, n).expect("in range");
            prefix = prefix.compose(&s).expect("same n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            perm(&[2, 1, 3]).compose(&perm(&[1, 3, 2])).unwrap(),
            perm(&[2, 3, 1])
        );
        assert_eq!(
            Permutation::identity(3).compose(&perm(&[3, 1, 2])).unwrap(),
            perm(&[3, 1, 2])
        );
        assert_eq!(perm(&[2, 1]).compose(&perm(&[2, 1])).unwrap(), perm(&[1, 2]));
        assert!(perm(&[2, 1]).compose(&perm(&[1, 2, 3])).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(perm(&[1, 2, 3, 4]).length(), 0);
        assert_eq!(perm(&[2, 1, 4, 3]).length(), 2);
        assert_eq!(perm(&[4, 3, 2, 1]).length(), 6);
    }

    #[test]
    fn apply_examples() {
        let s2 = Permutation::simple(2, 4).unwrap();
        assert_eq!(
            s2.apply_to_vector(&QVec::from_ints(&[1, 1, 0, 0])).unwrap(),
            QVec::from_ints(&[1, 0, 1, 0])
        );
        assert_eq!(
            perm(&[2, 1, 4, 3])
                .apply_to_vector(&QVec::from_ints(&[5, 4, 2, 0]))
                .unwrap(),
            QVec::from_ints(&[4, 5, 0, 2])
        );
        let v = QVec::from_ints(&[7, -3, 2]);
        assert_eq!(
            Permutation::identity(3).apply_to_vector(&v).unwrap(),
            v.clone()
        );
        // non-involutive case, pinned to the convention result[w(i)] = v[i]
        let w = perm(&[2, 3, 1]);
        assert_eq!(
            w.apply_to_vector(&QVec::from_ints(&[10, 20, 30])).unwrap(),
            QVec::from_ints(&[30, 10, 20])
        );
    }

    #[test]
    fn roots_and_weights() {
        assert_eq!(
            simple_root(3, 4).unwrap(),
            QVec::from_ints(&[0, 0, 1, -1])
        );
        assert_eq!(
            fundamental_weight(2, 4).unwrap(),
            QVec::from_ints(&[1, 1, 0, 0])
        );
        assert_eq!(fundamental_weight(1, 2).unwrap(), QVec::from_ints(&[1, 0]));
        assert!(simple_root(4, 4).is_err());
        assert!(fundamental_weight(0, 4).is_err());
        assert_eq!(weight_sum(4), QVec::from_ints(&[3, 2, 1, 0]));
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(
            Word::new(vec![1, 1], 2).unwrap().demazure_product(),
            perm(&[2, 1])
        );
        assert_eq!(
            Word::new(vec![1, 2, 1], 3).unwrap().demazure_product(),
            perm(&[3, 2, 1])
        );
        assert_eq!(Word::empty(3).demazure_product(), Permutation::identity(3));
    }

    #[test]
    fn is_reduced_examples() {
        assert!(Word::new(vec![3, 2], 4).unwrap().is_reduced());
        assert!(!Word::new(vec![1, 1], 2).unwrap().is_reduced());
        assert!(Word::empty(2).is_reduced());
    }

    #[test]
    fn inversion_root_examples() {
        let got = inversion_roots(&perm(&[2, 1, 4, 3]));
        let expect: BTreeSet<QVec> = [
            QVec::from_ints(&[1, -1, 0, 0]),
            QVec::from_ints(&[0, 0, 1, -1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
        assert!(inversion_roots(&Permutation::identity(4)).is_empty());
        let got = inversion_roots(&perm(&[3, 2, 1]));
        let expect: BTreeSet<QVec> = [
            QVec::from_ints(&[1, -1, 0]),
            QVec::from_ints(&[1, 0, -1]),
            QVec::from_ints(&[0, 1, -1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn reduced_word_enumeration() {
        let words: Vec<Vec<usize>> = reduced_words(&perm(&[2, 1]))
            .unwrap()
            .iter()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(words, vec![vec![1]]);
        let words: Vec<Vec<usize>> = reduced_words(&perm(&[3, 2, 1]))
            .unwrap()
            .iter()
            .map(|w| w.letters().to_vec())
            .collect();
        assert_eq!(words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        let words = reduced_words(&Permutation::identity(3)).unwrap();
        assert_eq!(words.len(), 1);
        assert!(words[0].is_empty());
    }

    /// Demazure facts: idempotence on repeated letters, agreement with the
    /// ordinary product on reduced words, and length(dem(Q)) <= |Q| with
    /// equality exactly on reduced words. Exhaustive over short words.
    #[test]
    fn demazure_properties_exhaustive() {
        for n in 2..=4usize {
            for j in 1..n {
                for reps in 1..=4 {
                    let w = Word::new(vec![j; reps], n).unwrap();
                    assert_eq!(w.demazure_product(), Permutation::simple(j, n).unwrap());
                }
            }
            let mut words: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..4 {
                let mut next = Vec::new();
                for w in &words {
                    for j in 1..n {
                        let mut v = w.clone();
                        v.push(j);
                        next.push(v);
                    }
                }
                words.extend(next.iter().cloned());
                words = {
                    let mut seen = std::collections::BTreeSet::new();
                    words.retain(|w| seen.insert(w.clone()));
                    words
                };
            }
            for letters in words {
                let w = Word::new(letters, n).unwrap();
                let dem = w.demazure_product();
                assert!(dem.length() <= w.len());
                assert_eq!(dem.length() == w.len(), w.is_reduced());
                if w.is_reduced() {
                    assert_eq!(dem, w.ordinary_product());
                }
            }
        }
    }

    /// inv(w) has length(w) elements and does not depend on the reduced word,
    /// exhaustively over S_n, n <= 4.
    #[test]
    fn inversion_roots_independent_of_reduced_word() {
        for n in 1..=4usize {
            for w in Permutation::all(n) {
                let reference = inversion_roots(&w);
                assert_eq!(reference.len(), w.length());
                for word in reduced_words(&w).unwrap() {
                    let mut set = BTreeSet::new();
                    let mut prefix = Permutation::identity(n);
                    for (k, &j) in word.letters().iter().enumerate() {
                        let root = simple_root(j, n).unwrap();
                        set.insert(prefix.apply_to_vector(&root).unwrap());
                        if k + 1 < word.len() {
                            prefix = prefix.compose(&Permutation::simple(j, n).unwrap()).unwrap();
                        }
                    }
                    assert_eq!(set, reference, "w = {w}, word = {word}");
                }
            }
        }
    }

    /// apply_to_vector is a left action: u.(v.x) = (u∘v).x, exhaustive on S_3.
    #[test]
    fn coordinate_action_is_group_action() {
        let x = QVec::from_ints(&[5, -2, 9]);
        for u in Permutation::all(3) {
            for v in Permutation::all(3) {
                let lhs = u.apply_to_vector(&v.apply_to_vector(&x).unwrap()).unwrap();
                let rhs = u.compose(&v).unwrap().apply_to_vector(&x).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn permutation_serde_round_trip() {
        let w = perm(&[2, 4, 1, 3]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "[2,4,1,3]");
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Permutation>("[1,1,2]").is_err());
    }

    #[test]
    fn qvec_serde_uses_strings_for_fractions() {
        let v = QVec::new(vec![
            rat_int(3),
            crate::rat::parse_rat("1/2").unwrap(),
            rat_int(-1),
        ]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"[3,"1/2",-1]"#);
        let back: QVec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}

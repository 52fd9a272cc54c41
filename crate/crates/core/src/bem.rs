//! Subwords, torus fixed points, moment images, tangent weights, Poincaré
//! polynomials, and the stratum lattice.
//!
//! Fixed points are pairs (x, J): x a shuffled permutation labelling a
//! coordinate flag of the closed orbit, J a subword of Q. The moment image is
//!
//! ```text
//! x · ( Σ_{i=1}^{n−1} ω_i  +  Σ_{i=N}^{1} s_{β_N} ··· s_{β_i} ω_{j_i} )
//! ```
//!
//! with s_β the identity at skips. The reflection prefixes run from position
//! N down to i; `subword_prefixes` is the single source of those products for
//! both the moment image and the tangent weights.

use std::fmt;

use itertools::Itertools;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::clans::Clan;
use crate::error::{Error, Result};
use crate::weyl::{fundamental_weight, simple_root, weight_sum, Permutation, QVec, Word};

/// A subword of a word Q: per position, keep the letter or skip it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subword {
    parent: Word,
    keep: Vec<bool>,
}

impl Subword {
    pub fn new(parent: Word, keep: Vec<bool>) -> Result<Self> {
        if keep.len() != parent.len() {
            return Err(Error::SizeMismatch {
                expected: parent.len(),
                got: keep.len(),
            });
        }
        Ok(Self { parent, keep })
    }

    /// Parse entries like "3,-" against the parent word.
    pub fn parse(parent: &Word, text: &str) -> Result<Self> {
        let text = text.trim();
        let raw: Vec<&str> = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',').map(str::trim).collect()
        };
        if raw.len() != parent.len() {
            return Err(Error::SizeMismatch {
                expected: parent.len(),
                got: raw.len(),
            });
        }
        let mut keep = Vec::with_capacity(raw.len());
        for (k, tok) in raw.iter().enumerate() {
            if *tok == "-" {
                keep.push(false);
            } else {
                let letter: usize = tok.parse().map_err(|_| Error::MismatchedSubword)?;
                if letter != parent.letters()[k] {
                    return Err(Error::MismatchedSubword);
                }
                keep.push(true);
            }
        }
        Ok(Self {
            parent: parent.clone(),
            keep,
        })
    }

    pub fn full(parent: &Word) -> Self {
        Self {
            parent: parent.clone(),
            keep: vec![true; parent.len()],
        }
    }

    pub fn all_skip(parent: &Word) -> Self {
        Self {
            parent: parent.clone(),
            keep: vec![false; parent.len()],
        }
    }

    pub fn parent(&self) -> &Word {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.keep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keep.is_empty()
    }

    pub fn kept(&self) -> &[bool] {
        &self.keep
    }

    pub fn keep_count(&self) -> usize {
        self.keep.iter().filter(|&&k| k).count()
    }

    /// β_i as Some(letter) or None for a skip, 1-based position.
    pub fn entry(&self, i: usize) -> Option<usize> {
        self.keep[i - 1].then(|| self.parent.letters()[i - 1])
    }

    /// The word of kept letters, in order.
    pub fn flat(&self) -> Word {
        let letters = self
            .parent
            .letters()
            .iter()
            .zip(&self.keep)
            .filter_map(|(&j, &k)| k.then_some(j))
            .collect();
        Word::new(letters, self.parent.ambient()).expect("letters were validated in parent")
    }

    /// Coordinatewise: skip wherever either operand skips.
    pub fn join(&self, other: &Subword) -> Result<Subword> {
        if self.parent != other.parent {
            return Err(Error::MismatchedParents);
        }
        Ok(Subword {
            parent: self.parent.clone(),
            keep: self
                .keep
                .iter()
                .zip(&other.keep)
                .map(|(&a, &b)| a && b)
                .collect(),
        })
    }
}

impl fmt::Display for Subword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (1..=self.len())
            .map(|i| match self.entry(i) {
                Some(j) => j.to_string(),
                None => "-".to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Subword {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.len()))?;
        for i in 1..=self.len() {
            match self.entry(i) {
                Some(j) => seq.serialize_element(&j)?,
                None => seq.serialize_element("-")?,
            }
        }
        seq.end()
    }
}

/// All 2^N subwords, in mask order (bit i set = keep position i+1).
pub fn subwords(q: &Word) -> Vec<Subword> {
    let n = q.len();
    assert!(n < usize::BITS as usize, "word too long to enumerate");
    (0..(1usize << n))
        .map(|mask| Subword {
            parent: q.clone(),
            keep: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        })
        .collect()
}

/// An S-fixed point: a shuffled flag label and a subword.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub x: Permutation,
    pub subword: Subword,
}

/// The p!q!2^N fixed points of the configuration space over Y_γ.
pub fn fixed_points(gamma: &Clan, q: &Word) -> Result<Vec<FixedPoint>> {
    let shuffles = gamma.gamma_shuffled_perms()?;
    if q.ambient() != gamma.n() {
        return Err(Error::SizeMismatch {
            expected: gamma.n(),
            got: q.ambient(),
        });
    }
    let subs = subwords(q);
    Ok(shuffles
        .into_iter()
        .cartesian_product(subs)
        .map(|(x, subword)| FixedPoint { x, subword })
        .collect())
}

/// The products s_{β_N} ··· s_{β_i} for i = N, N−1, .., 1, returned in that
/// order paired with i. Shared by the moment image and the tangent weights.
fn subword_prefixes(j: &Subword) -> Vec<(usize, Permutation)> {
    let n = j.parent().ambient();
    let mut prefix = Permutation::identity(n);
    let mut out = Vec::with_capacity(j.len());
    for i in (1..=j.len()).rev() {
        if let Some(letter) = j.entry(i) {
            let s = Permutation::simple(letter, n).expect("validated letter");
            prefix = prefix.compose(&s).expect("same n");
        }
        out.push((i, prefix.clone()));
    }
    out
}

/// Moment image of the fixed point (x, J).
pub fn moment_image(x: &Permutation, j: &Subword, q: &Word) -> Result<QVec> {
    if j.parent() != q {
        return Err(Error::MismatchedSubword);
    }
    let n = q.ambient();
    if x.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: x.n(),
        });
    }
    let mut total = weight_sum(n);
    for (i, prefix) in subword_prefixes(j) {
        let weight = fundamental_weight(q.letters()[i - 1], n)?;
        total = total.add(&prefix.apply_to_vector(&weight)?);
    }
    x.apply_to_vector(&total)
}

/// Moment images of all subwords at the identity flag, in mask order.
/// Duplicates are kept; callers dedup for hull input.
pub fn bs_moment_points(q: &Word) -> Vec<QVec> {
    let id = Permutation::identity(q.ambient());
    subwords(q)
        .iter()
        .map(|j| moment_image(&id, j, q).expect("sizes agree"))
        .collect()
}

/// Moment images of all fixed points over Y_γ, shuffle-major order.
pub fn bem_points(gamma: &Clan, q: &Word) -> Result<Vec<QVec>> {
    let bs = bs_moment_points(q);
    let mut out = Vec::new();
    for sigma in gamma.gamma_shuffled_perms()? {
        for v in &bs {
            out.push(sigma.apply_to_vector(v)?);
        }
    }
    Ok(out)
}

/// w = [p, p−1, .., 1, n, n−1, .., p+1]; the closed orbit is the Schubert
/// variety of this permutation, of length p(p−1)/2 + q(q−1)/2.
pub fn reference_long_element(p: usize, q: usize) -> Permutation {
    let n = p + q;
    let images: Vec<usize> = (1..=p).rev().chain(((p + 1)..=n).rev()).collect();
    Permutation::new(images).expect("covers 1..n")
}

/// T-weights of the tangent space at the fixed point (u, J) over the
/// reference orbit: u·(−inv(w)) together with u·s_{β_N}···s_{β_i}(−α_{j_i}).
/// A multiset of size dim = ℓ(w) + N.
pub fn tangent_weights(
    u: &Permutation,
    j: &Subword,
    q: &Word,
    p_sig: usize,
    q_sig: usize,
) -> Result<Vec<QVec>> {
    if j.parent() != q {
        return Err(Error::MismatchedSubword);
    }
    let n = p_sig + q_sig;
    if q.ambient() != n || u.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: q.ambient(),
        });
    }
    let w = reference_long_element(p_sig, q_sig);
    let mut out: Vec<QVec> = Vec::with_capacity(w.length() + q.len());
    for root in crate::weyl::inversion_roots(&w) {
        out.push(u.apply_to_vector(&root.neg())?);
    }
    for (i, prefix) in subword_prefixes(j) {
        let root = simple_root(q.letters()[i - 1], n)?;
        let reflected = prefix.apply_to_vector(&root.neg())?;
        out.push(u.apply_to_vector(&reflected)?);
    }
    Ok(out)
}

/// Poincaré polynomial coefficients of [p]_z! [q]_z! (1+z)^N.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoincarePoly {
    pub coefficients: Vec<u64>,
}

impl PoincarePoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let rev: Vec<u64> = self.coefficients.iter().rev().copied().collect();
        rev == self.coefficients
    }
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// [k]_z = 1 + z + .. + z^{k−1}; [k]_z! = [1]_z [2]_z .. [k]_z.
fn q_factorial(k: usize) -> Vec<u64> {
    let mut acc = vec![1u64];
    for m in 1..=k {
        acc = poly_mul(&acc, &vec![1u64; m]);
    }
    acc
}

pub fn poincare(p: usize, q: usize, n_letters: usize) -> PoincarePoly {
    let mut acc = poly_mul(&q_factorial(p), &q_factorial(q));
    for _ in 0..n_letters {
        acc = poly_mul(&acc, &[1, 1]);
    }
    PoincarePoly { coefficients: acc }
}

/// dim Y_0 + N with dim Y_0 = p(p−1)/2 + q(q−1)/2.
pub fn dim_bem(p: usize, q: usize, n_letters: usize) -> usize {
    p * p.saturating_sub(1) / 2 + q * q.saturating_sub(1) / 2 + n_letters
}

/// The closed strata of the configuration space, indexed by subwords of Q.
/// More skips means a smaller stratum; the meet of two strata is their
/// coordinatewise join. Nodes are bit masks (bit i = keep position i+1).
pub struct StrataLattice {
    word: Word,
}

impl StrataLattice {
    pub fn new(word: Word) -> Result<Self> {
        const CAP: usize = 20;
        if word.len() > CAP {
            return Err(Error::EnumerationTooLarge {
                cap: CAP,
                got: word.len(),
            });
        }
        Ok(Self { word })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn node_count(&self) -> usize {
        1usize << self.word.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = u32> {
        0..(self.node_count() as u32)
    }

    pub fn subword(&self, mask: u32) -> Subword {
        Subword {
            parent: self.word.clone(),
            keep: (0..self.word.len()).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn mask(&self, subword: &Subword) -> Result<u32> {
        if subword.parent() != &self.word {
            return Err(Error::MismatchedParents);
        }
        Ok(subword
            .kept()
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &k)| acc | ((k as u32) << i)))
    }

    /// S(a) ∩ S(b) = S(a ∨ b): skip wherever either skips.
    pub fn join(&self, a: u32, b: u32) -> u32 {
        a & b
    }

    /// Stratum containment: S(a) ⊆ S(b) iff a keeps only what b keeps.
    pub fn le(&self, a: u32, b: u32) -> bool {
        a & b == a
    }

    /// Label of a node: the flattened word of its subword.
    pub fn label(&self, mask: u32) -> Word {
        self.subword(mask).flat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn clan(s: &str) -> Clan {
        s.parse().unwrap()
    }

    fn word(letters: &[usize], n: usize) -> Word {
        Word::new(letters.to_vec(), n).unwrap()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn sub(q: &Word, text: &str) -> Subword {
        Subword::parse(q, text).unwrap()
    }

    #[test]
    fn subword_enumeration() {
        let q = word(&[3, 2], 4);
        let subs = subwords(&q);
        assert_eq!(subs.len(), 4);
        let shown: Vec<String> = subs.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, vec!["(-,-)", "(3,-)", "(-,2)", "(3,2)"]);
        assert_eq!(subwords(&Word::empty(3)).len(), 1);
        assert_eq!(subwords(&word(&[1, 2, 1], 3)).len(), 8);
    }

    #[test]
    fn flat_examples() {
        let q = word(&[3, 2], 4);
        assert_eq!(sub(&q, "3,-").flat(), word(&[3], 4));
        assert_eq!(sub(&q, "-,-").flat(), Word::empty(4));
        assert_eq!(sub(&q, "3,2").flat(), q);
    }

    #[test]
    fn join_examples() {
        let q = word(&[3, 2], 4);
        assert_eq!(sub(&q, "3,-").join(&sub(&q, "-,2")).unwrap(), sub(&q, "-,-"));
        let p = sub(&q, "3,2");
        assert_eq!(p.join(&p).unwrap(), p);
        assert_eq!(sub(&q, "3,2").join(&sub(&q, "3,-")).unwrap(), sub(&q, "3,-"));
        let other = word(&[2, 2], 4);
        assert!(sub(&q, "3,-").join(&sub(&other, "2,-")).is_err());
    }

    #[test]
    fn fixed_point_counts() {
        assert_eq!(
            fixed_points(&clan("++--"), &word(&[3, 2], 4)).unwrap().len(),
            16
        );
        assert_eq!(
            fixed_points(&clan("+-"), &Word::empty(2)).unwrap().len(),
            1
        );
        assert_eq!(
            fixed_points(&clan("++--"), &word(&[1, 2, 1], 4))
                .unwrap()
                .len(),
            32
        );
        assert!(fixed_points(&clan("11"), &Word::empty(2)).is_err());
    }

    #[test]
    fn moment_image_rows() {
        let q = word(&[3, 2], 4);
        let id = Permutation::identity(4);
        assert_eq!(
            moment_image(&id, &sub(&q, "-,-"), &q).unwrap(),
            QVec::from_ints(&[5, 4, 2, 0])
        );
        assert_eq!(
            moment_image(&id, &sub(&q, "3,2"), &q).unwrap(),
            QVec::from_ints(&[5, 2, 3, 1])
        );
        assert_eq!(
            moment_image(&perm(&[2, 1, 4, 3]), &sub(&q, "3,2"), &q).unwrap(),
            QVec::from_ints(&[2, 5, 1, 3])
        );
        let other = word(&[2, 2], 4);
        assert!(moment_image(&id, &sub(&q, "3,2"), &other).is_err());
    }

    #[test]
    fn bs_points_examples() {
        let got: BTreeSet<QVec> = bs_moment_points(&word(&[3, 2], 4)).into_iter().collect();
        let expect: BTreeSet<QVec> = [
            QVec::from_ints(&[5, 4, 2, 0]),
            QVec::from_ints(&[5, 4, 1, 1]),
            QVec::from_ints(&[5, 3, 3, 0]),
            QVec::from_ints(&[5, 2, 3, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, expect);

        assert_eq!(
            bs_moment_points(&Word::empty(4)),
            vec![QVec::from_ints(&[3, 2, 1, 0])]
        );

        let got: BTreeSet<QVec> = bs_moment_points(&word(&[1], 2)).into_iter().collect();
        let expect: BTreeSet<QVec> = [QVec::from_ints(&[2, 0]), QVec::from_ints(&[1, 1])]
            .into_iter()
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn bem_points_reflected_lists() {
        // the four reflected point lists of the worked p=q=2, Q=(3,2) example
        let pts = bem_points(&clan("++--"), &word(&[3, 2], 4)).unwrap();
        assert_eq!(pts.len(), 16);
        let as_set: BTreeSet<QVec> = pts.into_iter().collect();
        let expected: BTreeSet<QVec> = [
            [5, 4, 2, 0], [5, 4, 1, 1], [5, 3, 3, 0], [5, 2, 3, 1],
            [4, 5, 2, 0], [4, 5, 1, 1], [3, 5, 3, 0], [2, 5, 3, 1],
            [5, 4, 0, 2], [5, 3, 0, 3], [5, 2, 1, 3],
            [4, 5, 0, 2], [3, 5, 0, 3], [2, 5, 1, 3],
        ]
        .iter()
        .map(|v| QVec::from_ints(v))
        .collect();
        assert_eq!(as_set, expected);

        assert_eq!(
            bem_points(&clan("+-"), &Word::empty(2)).unwrap(),
            vec![QVec::from_ints(&[1, 0])]
        );
        assert_eq!(
            bem_points(&clan("-+"), &Word::empty(2)).unwrap(),
            vec![QVec::from_ints(&[0, 1])]
        );
    }

    /// Independent oracle: enumerate the coordinate-subspace fillings of the
    /// configuration diagram directly (growing the right border letter by
    /// letter from the end of the word) and sum indicator vectors. No Weyl
    /// action involved; must reproduce the fixed-point images as a multiset.
    fn diagram_images(gamma: &Clan, q: &Word) -> Vec<QVec> {
        use itertools::Itertools;
        let n = gamma.n();
        let mut out = Vec::new();
        for sigma in gamma.gamma_shuffled_perms().unwrap() {
            // border[d] = index set of the dim-d space of the current right border
            let border: Vec<BTreeSet<usize>> = (0..=n)
                .map(|d| (1..=d).map(|i| sigma.image(i)).collect())
                .collect();
            let flag_part: QVec = border[1..n]
                .iter()
                .fold(QVec::zero(n), |acc, space| acc.add(&indicator(space, n)));
            grow(q, q.len(), border, &flag_part, &mut out);
        }
        fn indicator(space: &BTreeSet<usize>, n: usize) -> QVec {
            QVec::new(
                (1..=n)
                    .map(|i| crate::rat::rat_int(space.contains(&i) as i64))
                    .collect(),
            )
        }
        fn grow(
            q: &Word,
            k: usize,
            border: Vec<BTreeSet<usize>>,
            acc: &QVec,
            out: &mut Vec<QVec>,
        ) {
            let n = q.ambient();
            if k == 0 {
                out.push(acc.clone());
                return;
            }
            let d = q.letters()[k - 1];
            let below = &border[d - 1];
            let above = &border[d + 1];
            for extra in above
                .difference(below)
                .copied()
                .combinations(d - below.len())
            {
                let mut space = below.clone();
                space.extend(extra);
                let mut next = border.clone();
                next[d] = space.clone();
                let acc2 = acc.add(&indicator(&space, n));
                grow(q, k - 1, next, &acc2, out);
            }
        }
        out
    }

    #[test]
    fn moment_images_match_diagram_enumeration() {
        for (g, letters) in [
            ("++--", vec![3usize, 2]),
            ("++--", vec![1, 3, 2]),
            ("++--", vec![2, 1, 3]),
            ("+-+-", vec![1]),
            ("+--+", vec![2, 2]),
            ("+-", vec![1]),
        ] {
            let gamma = clan(g);
            let q = word(&letters, gamma.n());
            let mut formula: Vec<QVec> = fixed_points(&gamma, &q)
                .unwrap()
                .iter()
                .map(|fp| moment_image(&fp.x, &fp.subword, &q).unwrap())
                .collect();
            let mut diagram = diagram_images(&gamma, &q);
            formula.sort();
            diagram.sort();
            assert_eq!(formula, diagram, "gamma {g}, word {letters:?}");
        }
    }

    #[test]
    fn reference_long_element_examples() {
        assert_eq!(reference_long_element(2, 2), perm(&[2, 1, 4, 3]));
        assert_eq!(reference_long_element(1, 1), perm(&[1, 2]));
        assert_eq!(reference_long_element(2, 3), perm(&[2, 1, 5, 4, 3]));
        for (p, q) in [(1, 1), (2, 2), (2, 3), (3, 1)] {
            assert_eq!(
                reference_long_element(p, q).length(),
                p * (p - 1) / 2 + q * (q - 1) / 2
            );
        }
    }

    #[test]
    fn tangent_weight_examples() {
        let q = word(&[3, 2], 4);
        let id = Permutation::identity(4);
        let sort = |mut v: Vec<QVec>| {
            v.sort();
            v
        };
        assert_eq!(
            sort(tangent_weights(&id, &sub(&q, "3,2"), &q, 2, 2).unwrap()),
            sort(vec![
                QVec::from_ints(&[-1, 1, 0, 0]),
                QVec::from_ints(&[0, 0, -1, 1]),
                QVec::from_ints(&[0, 1, -1, 0]),
                QVec::from_ints(&[0, 1, 0, -1]),
            ])
        );
        assert_eq!(
            sort(tangent_weights(&id, &sub(&q, "3,-"), &q, 2, 2).unwrap()),
            sort(vec![
                QVec::from_ints(&[-1, 1, 0, 0]),
                QVec::from_ints(&[0, 0, -1, 1]),
                QVec::from_ints(&[0, -1, 1, 0]),
                QVec::from_ints(&[0, 0, 1, -1]),
            ])
        );
        let empty = Word::empty(2);
        assert_eq!(
            tangent_weights(
                &Permutation::identity(2),
                &Subword::full(&empty),
                &empty,
                1,
                1
            )
            .unwrap(),
            Vec::<QVec>::new()
        );
    }

    #[test]
    fn tangent_weight_multiset_size_is_dimension() {
        for (p, q, letters) in [
            (2usize, 2usize, vec![3usize, 2]),
            (2, 2, vec![1, 2, 1]),
            (1, 2, vec![1, 1]),
            (2, 3, vec![3]),
        ] {
            let n = p + q;
            let w = word(&letters, n);
            let gamma = Clan::reference(p, q);
            for fp in fixed_points(&gamma, &w).unwrap() {
                let weights = tangent_weights(&fp.x, &fp.subword, &w, p, q).unwrap();
                assert_eq!(weights.len(), dim_bem(p, q, letters.len()));
            }
        }
    }

    #[test]
    fn moment_coordinate_sum_is_constant_per_word() {
        // reflections and coordinate permutations preserve the sum, so every
        // fixed point of an instance has the same total
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for len in 1..=3usize {
            let mut layer: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..len {
                layer = layer
                    .into_iter()
                    .flat_map(|w| {
                        (1..=3usize).map(move |j| {
                            let mut v = w.clone();
                            v.push(j);
                            v
                        })
                    })
                    .collect();
            }
            words.extend(layer);
        }
        let gamma = clan("++--");
        for letters in words {
            let q = word(&letters, 4);
            let sums: BTreeSet<crate::rat::Rat> = fixed_points(&gamma, &q)
                .unwrap()
                .iter()
                .map(|fp| {
                    moment_image(&fp.x, &fp.subword, &q)
                        .unwrap()
                        .coordinate_sum()
                })
                .collect();
            assert_eq!(sums.len(), 1, "word {letters:?}");
        }
    }

    #[test]
    fn bs_points_keep_duplicates_in_multiset_view() {
        // Q = (1,1) in S_2: the (1,-) and (1,1) subwords give the same image
        let q = word(&[1, 1], 2);
        let multiset = bs_moment_points(&q);
        assert_eq!(multiset.len(), 4);
        let set: BTreeSet<QVec> = multiset.iter().cloned().collect();
        assert_eq!(set.len(), 3);
    }

    /// The shuffle sets of clans differing by an adjacent "-+" -> "+-" swap
    /// are right translates by the swapped transposition.
    #[test]
    fn shuffles_translate_under_adjacent_swap() {
        for (before, after, i) in [("-+", "+-", 1usize), ("+-+", "++-", 2), ("-++-", "+-+-", 1)] {
            let a = clan(before).gamma_shuffled_perms().unwrap();
            let b = clan(after).gamma_shuffled_perms().unwrap();
            let s = Permutation::simple(i, a[0].n()).unwrap();
            let mut translated: Vec<Permutation> =
                a.iter().map(|x| x.compose(&s).unwrap()).collect();
            translated.sort();
            let mut b = b;
            b.sort();
            assert_eq!(translated, b, "{before} -> {after}");
        }
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare(2, 2, 2).coefficients, vec![1, 4, 6, 4, 1]);
        assert_eq!(poincare(1, 1, 0).coefficients, vec![1]);
        assert_eq!(poincare(2, 1, 1).coefficients, vec![1, 2, 1]);
    }

    #[test]
    fn poincare_counting_properties() {
        let fact = |k: usize| (1..=k).product::<usize>() as u64;
        for p in 1..=4usize {
            for q in 1..=(5 - p) {
                for n_letters in 0..=4usize {
                    let poly = poincare(p, q, n_letters);
                    assert_eq!(
                        poly.coefficient_sum(),
                        fact(p) * fact(q) * (1 << n_letters)
                    );
                    assert_eq!(poly.degree(), dim_bem(p, q, n_letters));
                    assert!(poly.is_palindromic());
                }
            }
        }
    }

    #[test]
    fn dim_bem_examples() {
        assert_eq!(dim_bem(2, 2, 2), 4);
        assert_eq!(dim_bem(1, 1, 0), 0);
        assert_eq!(dim_bem(2, 2, 0), 2);
    }

    #[test]
    fn strata_lattice_examples() {
        let q = word(&[3, 2], 4);
        let lattice = StrataLattice::new(q.clone()).unwrap();
        let keep_first = lattice.mask(&sub(&q, "3,-")).unwrap();
        let keep_second = lattice.mask(&sub(&q, "-,2")).unwrap();
        let meet = lattice.join(keep_first, keep_second);
        assert_eq!(lattice.subword(meet), sub(&q, "-,-"));
        assert_eq!(lattice.label(meet), Word::empty(4));
        assert!(lattice.le(meet, keep_first));
        assert!(!lattice.le(keep_first, keep_second));

        let empty = StrataLattice::new(Word::empty(3)).unwrap();
        assert_eq!(empty.node_count(), 1);

        let l3 = StrataLattice::new(word(&[1, 2, 1], 3)).unwrap();
        assert_eq!(l3.node_count(), 8);
        assert_eq!(l3.label(0), Word::empty(3));
        assert!(StrataLattice::new(Word::new(vec![1; 21], 3).unwrap()).is_err());
    }

    #[test]
    fn bem_points_decompose_as_shuffled_copies() {
        let gamma = clan("++--");
        let q = word(&[3, 2], 4);
        let bs = bs_moment_points(&q);
        let pts = bem_points(&gamma, &q).unwrap();
        let shuffles = gamma.gamma_shuffled_perms().unwrap();
        let mut expected = Vec::new();
        for s in &shuffles {
            for v in &bs {
                expected.push(s.apply_to_vector(v).unwrap());
            }
        }
        assert_eq!(pts, expected);
    }
}

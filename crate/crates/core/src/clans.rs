//! (p,q)-clans: the string grammar, pattern containment, McGovern's
//! smoothness test, rank parameters, and shuffled permutations.
//!
//! A clan is stored in canonical form: pair labels are renumbered 1,2,3,..
//! in order of first occurrence, so "1+-1" and "2+-2" compare equal.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weyl::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClanSymbol {
    Plus,
    Minus,
    /// Canonical pair label, 1-based.
    Pair(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clan {
    symbols: Vec<ClanSymbol>,
    p: usize,
    q: usize,
}

/// The eight patterns whose avoidance characterizes smooth orbit closures.
pub const SMOOTHNESS_PATTERNS: [&str; 8] = [
    "1+-1", "1-+1", "1212", "1+221", "1-221", "122+1", "122-1", "122331",
];

fn smoothness_patterns() -> &'static Vec<Clan> {
    static PATTERNS: OnceLock<Vec<Clan>> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        SMOOTHNESS_PATTERNS
            .iter()
            .map(|s| s.parse().expect("built-in pattern parses"))
            .collect()
    })
}

impl Clan {
    /// Build from raw symbols; pair labels may be arbitrary and are
    /// canonicalized. Every label must occur exactly twice.
    pub fn new(symbols: Vec<ClanSymbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut relabel: Vec<usize> = Vec::new(); // original label -> position = canonical - 1
        let mut counts: Vec<(usize, usize)> = Vec::new(); // (original label, count)
        let mut canonical = Vec::with_capacity(symbols.len());
        let mut plus = 0usize;
        let mut minus = 0usize;
        for (pos, s) in symbols.iter().enumerate() {
            match s {
                ClanSymbol::Plus => {
                    plus += 1;
                    canonical.push(ClanSymbol::Plus);
                }
                ClanSymbol::Minus => {
                    minus += 1;
                    canonical.push(ClanSymbol::Minus);
                }
                ClanSymbol::Pair(label) => {
                    let idx = match relabel.iter().position(|l| l == label) {
                        Some(idx) => {
                            counts[idx].1 += 1;
                            if counts[idx].1 > 2 {
                                return Err(Error::ClanParse {
                                    position: pos + 1,
                                    message: format!("label {label} used more than twice"),
                                });
                            }
                            idx
                        }
                        None => {
                            relabel.push(*label);
                            counts.push((*label, 1));
                            relabel.len() - 1
                        }
                    };
                    canonical.push(ClanSymbol::Pair(idx + 1));
                }
            }
        }
        if let Some((label, _)) = counts.iter().find(|(_, c)| *c != 2) {
            return Err(Error::ClanParse {
                position: symbols.len(),
                message: format!("label {label} is unpaired"),
            });
        }
        let pairs = counts.len();
        Ok(Self {
            symbols: canonical,
            p: plus + pairs,
            q: minus + pairs,
        })
    }

    /// The reference matchless clan + .. + - .. - with p pluses and q minuses.
    pub fn reference(p: usize, q: usize) -> Self {
        let mut symbols = vec![ClanSymbol::Plus; p];
        symbols.extend(vec![ClanSymbol::Minus; q]);
        Self { symbols, p, q }
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn symbols(&self) -> &[ClanSymbol] {
        &self.symbols
    }

    /// 1-based symbol access.
    pub fn symbol(&self, i: usize) -> ClanSymbol {
        self.symbols[i - 1]
    }

    pub fn is_matchless(&self) -> bool {
        !self
            .symbols
            .iter()
            .any(|s| matches!(s, ClanSymbol::Pair(_)))
    }

    /// 1-based position of the other endpoint of the pair at i, if any.
    pub fn partner(&self, i: usize) -> Option<usize> {
        match self.symbols[i - 1] {
            ClanSymbol::Pair(label) => self
                .symbols
                .iter()
                .enumerate()
                .find(|(k, s)| **s == ClanSymbol::Pair(label) && *k != i - 1)
                .map(|(k, _)| k + 1),
            _ => None,
        }
    }

    /// Pairs as (first, second) 1-based positions, in label order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (k, s) in self.symbols.iter().enumerate() {
            if let ClanSymbol::Pair(label) = s {
                if out.len() < *label {
                    out.push((k + 1, 0));
                } else {
                    out[label - 1].1 = k + 1;
                }
            }
        }
        out
    }

    /// True when self (read as the larger clan) contains the pattern:
    /// there are increasing indices matching signs exactly and sending the
    /// pattern's pairs to pairs of self.
    pub fn contains_pattern(&self, pattern: &Clan) -> bool {
        let m = pattern.n();
        if m > self.n() {
            return false;
        }
        // chosen[a-1] = canonical self-label matched to pattern label a
        fn go(
            theta: &Clan,
            gamma: &Clan,
            j: usize,
            start: usize,
            chosen: &mut Vec<Option<usize>>,
        ) -> bool {
            if j == gamma.n() {
                return true;
            }
            for i in start + 1..=theta.n() - (gamma.n() - j - 1) {
                let ok = match (gamma.symbols[j], theta.symbols[i - 1]) {
                    (ClanSymbol::Plus, ClanSymbol::Plus) => true,
                    (ClanSymbol::Minus, ClanSymbol::Minus) => true,
                    (ClanSymbol::Pair(a), ClanSymbol::Pair(x)) => match chosen[a - 1] {
                        Some(mapped) => mapped == x,
                        None => !chosen.contains(&Some(x)),
                    },
                    _ => false,
                };
                if !ok {
                    continue;
                }
                let mut fresh = false;
                if let (ClanSymbol::Pair(a), ClanSymbol::Pair(x)) =
                    (gamma.symbols[j], theta.symbols[i - 1])
                {
                    if chosen[a - 1].is_none() {
                        chosen[a - 1] = Some(x);
                        fresh = true;
                    }
                }
                if go(theta, gamma, j + 1, i, chosen) {
                    return true;
                }
                if fresh {
                    if let ClanSymbol::Pair(a) = gamma.symbols[j] {
                        chosen[a - 1] = None;
                    }
                }
            }
            false
        }
        let pair_count = pattern.pairs().len();
        go(self, pattern, 0, 0, &mut vec![None; pair_count])
    }

    pub fn avoids(&self, pattern: &Clan) -> bool {
        !self.contains_pattern(pattern)
    }

    pub fn is_noncrossing(&self) -> bool {
        static CROSSING: OnceLock<Clan> = OnceLock::new();
        self.avoids(CROSSING.get_or_init(|| "1212".parse().expect("parses")))
    }

    /// First of the eight singular patterns contained in this clan, if any.
    pub fn offending_pattern(&self) -> Option<&'static str> {
        smoothness_patterns()
            .iter()
            .zip(SMOOTHNESS_PATTERNS)
            .find(|(p, _)| self.contains_pattern(p))
            .map(|(_, name)| name)
    }

    pub fn is_smooth_orbit_closure(&self) -> bool {
        self.offending_pattern().is_none()
    }

    /// γ(i;+): pairs completed by position i plus pluses among c_1..c_i.
    pub fn rank_plus(&self, i: usize) -> Result<usize> {
        self.rank_signed(i, ClanSymbol::Plus)
    }

    /// γ(i;−): pairs completed by position i plus minuses among c_1..c_i.
    pub fn rank_minus(&self, i: usize) -> Result<usize> {
        self.rank_signed(i, ClanSymbol::Minus)
    }

    fn rank_signed(&self, i: usize, sign: ClanSymbol) -> Result<usize> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.n(),
            });
        }
        let completed = self.pairs().iter().filter(|&&(_, b)| b <= i).count();
        let signs = self.symbols[..i].iter().filter(|&&s| s == sign).count();
        Ok(completed + signs)
    }

    /// γ(i;j): positions k <= i whose pair partner lies beyond j.
    pub fn rank_pair(&self, i: usize, j: usize) -> Result<usize> {
        if i >= j {
            return Err(Error::BadRankPair { i, j });
        }
        if j > self.n() {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: self.n(),
            });
        }
        Ok((1..=i)
            .filter(|&k| self.partner(k).is_some_and(|l| l > j))
            .count())
    }

    /// All p!q! permutations with values 1..p on the plus positions and
    /// p+1..n on the minus positions.
    pub fn gamma_shuffled_perms(&self) -> Result<Vec<Permutation>> {
        if !self.is_matchless() {
            return Err(Error::NotMatchless {
                clan: self.to_string(),
            });
        }
        let n = self.n();
        let plus_pos: Vec<usize> = (0..n)
            .filter(|&k| self.symbols[k] == ClanSymbol::Plus)
            .collect();
        let minus_pos: Vec<usize> = (0..n)
            .filter(|&k| self.symbols[k] == ClanSymbol::Minus)
            .collect();
        let mut out = Vec::with_capacity((1..=self.p).product::<usize>() * (1..=self.q).product::<usize>());
        for pv in (1..=self.p).permutations(self.p) {
            for mv in (self.p + 1..=n).permutations(self.q) {
                let mut images = vec![0; n];
                for (pos, val) in plus_pos.iter().zip(&pv) {
                    images[*pos] = *val;
                }
                for (pos, val) in minus_pos.iter().zip(&mv) {
                    images[*pos] = *val;
                }
                out.push(Permutation::new(images).expect("covers 1..n"));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Clan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            match s {
                ClanSymbol::Plus => write!(f, "+")?,
                ClanSymbol::Minus => write!(f, "-")?,
                ClanSymbol::Pair(label) if *label < 10 => write!(f, "{label}")?,
                ClanSymbol::Pair(label) => write!(f, "({label})")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Clan {
    type Err = Error;

    /// Grammar: '+', '-', single digits 1..9, or '(k)' with k >= 10.
    fn from_str(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut symbols = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some((at, c)) = chars.next() {
            let position = symbols.len() + 1;
            match c {
                '+' => symbols.push(ClanSymbol::Plus),
                '-' => symbols.push(ClanSymbol::Minus),
                '1'..='9' => symbols.push(ClanSymbol::Pair(c.to_digit(10).unwrap() as usize)),
                '(' => {
                    let mut digits = String::new();
                    loop {
                        match chars.next() {
                            Some((_, ')')) => break,
                            Some((_, d)) if d.is_ascii_digit() => digits.push(d),
                            _ => {
                                return Err(Error::ClanParse {
                                    position,
                                    message: "unterminated '(label)'".into(),
                                })
                            }
                        }
                    }
                    let label: usize = digits.parse().map_err(|_| Error::ClanParse {
                        position,
                        message: "empty '(label)'".into(),
                    })?;
                    symbols.push(ClanSymbol::Pair(label));
                }
                other => {
                    return Err(Error::ClanParse {
                        position,
                        message: format!("unexpected character {other:?} at byte {at}"),
                    })
                }
            }
        }
        Clan::new(symbols)
    }
}

impl Serialize for Clan {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Clan {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All clans of signature (p,q), canonical, sorted by string form.
/// Exhaustive generation, capped at p + q <= 8.
pub fn enumerate_clans(p: usize, q: usize) -> Result<Vec<Clan>> {
    const CAP: usize = 8;
    let n = p + q;
    if n > CAP {
        return Err(Error::EnumerationTooLarge { cap: CAP, got: n });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    fn go(
        n: usize,
        plus_left: usize,
        minus_left: usize,
        open: &mut Vec<usize>,
        next_label: usize,
        stem: &mut Vec<ClanSymbol>,
        out: &mut Vec<Clan>,
    ) {
        if stem.len() == n {
            if open.is_empty() {
                out.push(Clan::new(stem.clone()).expect("construction is valid"));
            }
            return;
        }
        let remaining = n - stem.len();
        // prune: every open pair still needs a closer
        if open.len() > remaining {
            return;
        }
        if plus_left > 0 {
            stem.push(ClanSymbol::Plus);
            go(n, plus_left - 1, minus_left, open, next_label, stem, out);
            stem.pop();
        }
        if minus_left > 0 {
            stem.push(ClanSymbol::Minus);
            go(n, plus_left, minus_left - 1, open, next_label, stem, out);
            stem.pop();
        }
        // open a new pair (labels in first-occurrence order keeps output canonical)
        stem.push(ClanSymbol::Pair(next_label));
        open.push(next_label);
        go(n, plus_left, minus_left, open, next_label + 1, stem, out);
        open.pop();
        stem.pop();
        // close any open pair
        for k in 0..open.len() {
            let label = open.remove(k);
            stem.push(ClanSymbol::Pair(label));
            go(n, plus_left, minus_left, open, next_label, stem, out);
            stem.pop();
            open.insert(k, label);
        }
    }
    let mut out = Vec::new();
    let mut stem = Vec::with_capacity(n);
    let mut open = Vec::new();
    go(n, p, q, &mut open, 1, &mut stem, &mut out);
    // the sign budgets above are upper bounds; a completed string with k
    // pairs has signature (p, q) exactly when it used p-k pluses
    out.retain(|c| c.signature() == (p, q));
    out.sort_by_key(|c| c.to_string());
    Ok(out)
}

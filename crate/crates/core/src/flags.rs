//! Flags over the rationals and the rank-condition membership oracle for
//! orbit closures Y_γ.
//!
//! A flag is an ordered basis b_1, .., b_n; F_i is the span of the first i
//! vectors. Two flags are the same point of the flag variety exactly when
//! all prefix spans agree, which is how `same_flag` decides equality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clans::Clan;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rat::rat_int;
use crate::weyl::{Permutation, QVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    basis: Vec<QVec>,
}

impl Flag {
    pub fn new(basis: Vec<QVec>) -> Result<Flag> {
        if basis.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = basis.len();
        if basis.iter().any(|b| b.n() != n) {
            return Err(Error::RaggedMatrix);
        }
        let m = RatMatrix::from_columns(&basis)?;
        if m.rank() != n {
            return Err(Error::SingularMatrix);
        }
        Ok(Flag { basis })
    }

    /// The coordinate flag with F_d = span(e_{w(1)}, .., e_{w(d)}).
    pub fn coordinate(w: &Permutation) -> Flag {
        let n = w.n();
        let basis = (1..=n)
            .map(|i| {
                QVec::new(
                    (0..n)
                        .map(|k| rat_int((k + 1 == w.image(i)) as i64))
                        .collect(),
                )
            })
            .collect();
        Flag { basis }
    }

    pub fn standard(n: usize) -> Flag {
        Flag::coordinate(&Permutation::identity(n))
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    /// Basis vectors spanning F_i.
    pub fn prefix(&self, i: usize) -> &[QVec] {
        &self.basis[..i]
    }

    /// Equality as flags: every prefix span agrees.
    pub fn same_flag(&self, other: &Flag) -> bool {
        if self.n() != other.n() {
            return false;
        }
        for i in 1..self.n() {
            let mut cols = self.prefix(i).to_vec();
            cols.extend_from_slice(other.prefix(i));
            let m = RatMatrix::from_columns(&cols).expect("equal ambient");
            if m.rank() != i {
                return false;
            }
        }
        true
    }
}

/// Standard basis vectors e_1, .., e_p spanning E_p.
pub fn span_e_lower(n: usize, p: usize) -> Vec<QVec> {
    (1..=p)
        .map(|i| {
            QVec::new(
                (0..n)
                    .map(|k| if k + 1 == i { rat_int(1) } else { rat_int(0) })
                    .collect(),
            )
        })
        .collect()
}

/// Standard basis vectors e_{p+1}, .., e_n spanning E^q.
pub fn span_e_upper(n: usize, q: usize) -> Vec<QVec> {
    span_e_lower(n, n)[n - q..].to_vec()
}

/// dim(F_i ∩ colspan(S)) = i + rank(S) − rank([F_i | S]).
pub fn dim_intersection(flag: &Flag, i: usize, s: &RatMatrix) -> Result<usize> {
    if s.rows() != flag.n() {
        return Err(Error::SizeMismatch {
            expected: flag.n(),
            got: s.rows(),
        });
    }
    if i == 0 || i > flag.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: flag.n(),
        });
    }
    let f_i = RatMatrix::from_columns(flag.prefix(i))?;
    let joint = f_i.hstack(s)?;
    Ok(i + s.rank() - joint.rank())
}

/// Zero out the last q coordinates (projection onto E_p).
pub fn project_rho(v: &QVec, p: usize) -> QVec {
    QVec::new(
        v.coords()
            .iter()
            .enumerate()
            .map(|(k, c)| if k < p { c.clone() } else { rat_int(0) })
            .collect(),
    )
}

/// Which rank condition failed first, in the order the conditions are stated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankViolation {
    /// 1 = plus condition, 2 = minus condition, 3 = pair condition.
    pub condition: u8,
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub bound: usize,
    pub actual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<RankViolation>,
}

/// Membership of a flag in the orbit closure Y_γ, reporting the first
/// violated inequality. Condition (3) is skipped when `check_crossing` is
/// false; for noncrossing clans it is redundant.
pub fn in_orbit_closure_detailed(
    flag: &Flag,
    gamma: &Clan,
    check_crossing: bool,
) -> Result<MembershipVerdict> {
    let n = flag.n();
    if gamma.n() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: gamma.n(),
        });
    }
    let (p, q) = gamma.signature();
    let e_p = RatMatrix::from_columns(&span_e_lower(n, p))?;
    let e_q = RatMatrix::from_columns(&span_e_upper(n, q))?;
    for i in 1..=n {
        let bound = gamma.rank_plus(i)?;
        let actual = dim_intersection(flag, i, &e_p)?;
        if actual < bound {
            return Ok(MembershipVerdict {
                member: false,
                violation: Some(RankViolation {
                    condition: 1,
                    i,
                    j: None,
                    bound,
                    actual,
                }),
            });
        }
    }
    for i in 1..=n {
        let bound = gamma.rank_minus(i)?;
        let actual = dim_intersection(flag, i, &e_q)?;
        if actual < bound {
            return Ok(MembershipVerdict {
                member: false,
                violation: Some(RankViolation {
                    condition: 2,
                    i,
                    j: None,
                    bound,
                    actual,
                }),
            });
        }
    }
    if check_crossing {
        for i in 1..n {
            for j in i + 1..=n {
                let bound = j + gamma.rank_pair(i, j)?;
                let projected: Vec<QVec> =
                    flag.prefix(i).iter().map(|v| project_rho(v, p)).collect();
                let mut cols = projected;
                cols.extend_from_slice(flag.prefix(j));
                let actual = RatMatrix::from_columns(&cols)?.rank();
                if actual > bound {
                    return Ok(MembershipVerdict {
                        member: false,
                        violation: Some(RankViolation {
                            condition: 3,
                            i,
                            j: Some(j),
                            bound,
                            actual,
                        }),
                    });
                }
            }
        }
    }
    Ok(MembershipVerdict {
        member: true,
        violation: None,
    })
}

pub fn in_orbit_closure(flag: &Flag, gamma: &Clan, check_crossing: bool) -> Result<bool> {
    Ok(in_orbit_closure_detailed(flag, gamma, check_crossing)?.member)
}

/// Invertible flags with small integer entries from a seeded generator.
/// Singular draws are rejected and redrawn.
pub fn random_flags(n: usize, count: usize, seed: u64) -> Vec<Flag> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let basis: Vec<QVec> = (0..n)
            .map(|_| QVec::new((0..n).map(|_| rat_int(rng.gen_range(-9..=9))).collect()))
            .collect();
        if let Ok(flag) = Flag::new(basis) {
            out.push(flag);
        }
    }
    out
}

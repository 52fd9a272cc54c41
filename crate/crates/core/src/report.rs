//! Machine-readable per-instance reports. Field order is fixed by struct
//! declaration order, so serialization is byte-deterministic.

use serde::Serialize;

use crate::bem::{bem_points, bs_moment_points, fixed_points, moment_image, Subword};
use crate::clans::Clan;
use crate::error::Result;
use crate::polytope::dedup_points;
use crate::weyl::{Permutation, QVec, Word};

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointReport {
    pub perm: Permutation,
    pub subword: Subword,
    pub image: QVec,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub gamma: String,
    pub word: Word,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub fixed_points: Vec<FixedPointReport>,
    /// Distinct moment images of the identity-flag fixed points, sorted.
    pub bs_points: Vec<QVec>,
    /// Distinct moment images of all fixed points, sorted.
    pub bem_points: Vec<QVec>,
}

pub fn instance_report(gamma: &Clan, word: &Word) -> Result<InstanceReport> {
    let fps = fixed_points(gamma, word)?;
    let fixed_reports = fps
        .into_iter()
        .map(|fp| {
            let image = moment_image(&fp.x, &fp.subword, word)?;
            Ok(FixedPointReport {
                perm: fp.x,
                subword: fp.subword,
                image,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (p, q) = gamma.signature();
    Ok(InstanceReport {
        gamma: gamma.to_string(),
        word: word.clone(),
        n: gamma.n(),
        p,
        q,
        fixed_points: fixed_reports,
        bs_points: dedup_points(&bs_moment_points(word)),
        bem_points: dedup_points(&bem_points(gamma, word)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_counts_and_determinism() {
        let gamma: Clan = "++--".parse().unwrap();
        let word = Word::new(vec![3, 2], 4).unwrap();
        let report = instance_report(&gamma, &word).unwrap();
        assert_eq!(report.fixed_points.len(), 16);
        assert_eq!(report.bs_points.len(), 4);
        assert_eq!(report.bem_points.len(), 14);
        let a = serde_json::to_string(&report).unwrap();
        let b = serde_json::to_string(&instance_report(&gamma, &word).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

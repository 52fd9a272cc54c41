//! Shared instance builders for the benchmark suite.

use bem_core::bem::bem_points;
use bem_core::clans::Clan;
use bem_core::weyl::{QVec, Word};

/// Moment images of the p = q = 2 reference instance for a word.
pub fn reference_points(letters: &[usize]) -> Vec<QVec> {
    let gamma = Clan::reference(2, 2);
    let word = Word::new(letters.to_vec(), 4).expect("valid letters");
    bem_points(&gamma, &word).expect("matchless reference clan")
}

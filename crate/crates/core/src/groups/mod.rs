//! Permutations, set partitions and Young subgroups, and the passage
//! between words in the cluster generators and permutations.

mod partition;
mod permutation;
mod words;
mod young;

pub use partition::SetPartition;
pub use permutation::{generate, GeneratedGroup, Permutation};
pub use words::{
    evaluate_word, permutation_to_word, pi_q, transposition_to_word, GeneratorImages, Word,
};
pub use young::YoungSubgroup;

//! The small worked example used throughout the docs and tests: ten strings
//! over `Σ = {a}` and `Π = {x, y, z}` whose common-suffix trie has 26 nodes.

use crate::pstring::{Alphabet, PString};
use crate::trie::InputTrie;

pub const RUNNING_EXAMPLE: &[&str] =
    &["xaxxx", "yaxx", "zaxx", "zyx", "yyy", "yayy", "xayy", "xzy", "yayxz", "xaxz"];

pub fn running_example_alphabet() -> Alphabet {
    Alphabet::new("a", "xyz").expect("valid alphabet")
}

pub fn running_example_strings() -> Vec<PString> {
    let alphabet = running_example_alphabet();
    RUNNING_EXAMPLE.iter().map(|w| alphabet.parse(w).expect("valid string")).collect()
}

/// The common-suffix trie of [`RUNNING_EXAMPLE`].
pub fn running_example() -> InputTrie {
    InputTrie::from_strings(running_example_alphabet(), &running_example_strings()).expect("valid input")
}

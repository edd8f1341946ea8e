//! One-dimensional subshifts of finite type given by forbidden words.
//!
//! JSON schema: `{"alphabet": ["a", "B", ...], "forbidden": ["aa", ...]}`,
//! one single-character string per symbol. The alphabet order is the symbol
//! order used for sorting and for canonical rotations.

mod approximation;
mod constructions;
mod follower;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use approximation::{
    aperiodicity_order, has_periodic_point, minimal_forbidden_words, periodic_points,
    pseudo_orbit_demo, sft_approximation, sft_approximations, PeriodicReport, PseudoOrbitReport,
    MAX_APPROXIMATION_ORDER, MAX_PERIOD, MAX_PSEUDO_ORBIT_LEVEL,
};
pub use constructions::{comb_sft, languages_equal, union_sft, Tile, BOTTOM, MAX_SEPARATION_ORDER};
pub use follower::Follower;

/// Cap on the number of words held while enumerating states or languages.
pub const MAX_WORDS: usize = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSft {
    alphabet: Vec<char>,
    index: HashMap<char, u8>,
    forbidden: BTreeSet<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct SftJson {
    alphabet: Vec<String>,
    forbidden: Vec<String>,
}

impl ZSft {
    /// Duplicate symbols and forbidden words are dropped; the empty word may
    /// not be forbidden.
    pub fn new<S: AsRef<str>>(
        alphabet: impl IntoIterator<Item = char>,
        forbidden: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut symbols = Vec::new();
        for c in alphabet {
            if !symbols.contains(&c) {
                symbols.push(c);
            }
        }
        if symbols.is_empty() || symbols.len() > u8::MAX as usize {
            return Err(Error::Domain(format!(
                "alphabet size {} outside [1, 255]",
                symbols.len()
            )));
        }
        let index: HashMap<char, u8> = symbols
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u8))
            .collect();
        let mut sft = Self {
            alphabet: symbols,
            index,
            forbidden: BTreeSet::new(),
        };
        for w in forbidden {
            let word = sft.encode(w.as_ref())?;
            if word.is_empty() {
                return Err(Error::Domain("the empty word cannot be forbidden".into()));
            }
            sft.forbidden.insert(word);
        }
        Ok(sft)
    }

    pub(crate) fn from_encoded(alphabet: Vec<char>, forbidden: BTreeSet<Vec<u8>>) -> Self {
        let index = alphabet
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u8))
            .collect();
        Self {
            alphabet,
            index,
            forbidden,
        }
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// Longest forbidden word, at least 1.
    pub fn order(&self) -> usize {
        self.forbidden
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .max(1)
    }

    pub fn forbidden_words(&self) -> Vec<String> {
        let mut words: Vec<&Vec<u8>> = self.forbidden.iter().collect();
        words.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        words.into_iter().map(|w| self.decode(w)).collect()
    }

    pub(crate) fn forbidden_encoded(&self) -> &BTreeSet<Vec<u8>> {
        &self.forbidden
    }

    pub fn encode(&self, word: &str) -> Result<Vec<u8>> {
        word.chars()
            .map(|c| {
                self.index.get(&c).copied().ok_or_else(|| {
                    Error::AlphabetMismatch(format!("symbol {c:?} is not in the alphabet"))
                })
            })
            .collect()
    }

    pub fn decode(&self, word: &[u8]) -> String {
        word.iter().map(|&i| self.alphabet[i as usize]).collect()
    }

    /// Whether `word` contains no forbidden factor (naive scan).
    pub fn avoids_forbidden(&self, word: &[u8]) -> bool {
        let order = self.order();
        (0..word.len()).all(|i| {
            (i + 1..=word.len().min(i + order)).all(|j| !self.forbidden.contains(&word[i..j]))
        })
    }

    pub fn follower(&self) -> Result<Follower> {
        Follower::build(self)
    }

    /// Words of length `len` occurring in points of the subshift, sorted in
    /// alphabet order.
    pub fn language_words(&self, len: usize) -> Result<Vec<String>> {
        let f = self.follower()?;
        Ok(f.language(len)?.iter().map(|w| self.decode(w)).collect())
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.follower()?.is_empty())
    }

    pub fn to_json(&self) -> String {
        let doc = SftJson {
            alphabet: self.alphabet.iter().map(|c| c.to_string()).collect(),
            forbidden: self.forbidden_words(),
        };
        serde_json::to_string_pretty(&doc).expect("sft serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SftJson =
            serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad SFT JSON: {e}")))?;
        let mut alphabet = Vec::with_capacity(doc.alphabet.len());
        for sym in &doc.alphabet {
            let mut chars = sym.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => alphabet.push(c),
                _ => {
                    return Err(Error::Domain(format!(
                        "alphabet entry {sym:?} is not a single symbol"
                    )))
                }
            }
        }
        Self::new(alphabet, doc.forbidden)
    }

    /// The SFT forbidding the forbidden words of both, i.e. the intersection.
    pub fn intersection(&self, other: &ZSft) -> Result<ZSft> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        let forbidden = self.forbidden.union(&other.forbidden).cloned().collect();
        Ok(Self::from_encoded(self.alphabet.clone(), forbidden))
    }
}

impl fmt::Display for ZSft {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet: String = self.alphabet.iter().collect();
        write!(
            f,
            "SFT over {{{alphabet}}} forbidding [{}]",
            self.forbidden_words().join(", ")
        )
    }
}

/// Least rotation of a cyclic word.
pub(crate) fn least_rotation(word: &[u8]) -> Vec<u8> {
    (0..word.len().max(1))
        .map(|r| {
            let mut v = word[r.min(word.len())..].to_vec();
            v.extend_from_slice(&word[..r.min(word.len())]);
            v
        })
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let x = ZSft::new("01".chars(), ["11", "000"]).unwrap();
        let y = ZSft::from_json(&x.to_json()).unwrap();
        assert_eq!(x, y);
        assert_eq!(y.forbidden_words(), vec!["11", "000"]);
        assert_eq!(y.order(), 3);
        assert!(ZSft::from_json(r#"{"alphabet": ["ab"], "forbidden": []}"#).is_err());
        assert!(ZSft::new("01".chars(), ["2"]).is_err());
    }

    #[test]
    fn naive_scan() {
        let x = ZSft::new("01".chars(), ["11"]).unwrap();
        assert!(x.avoids_forbidden(&[0, 1, 0, 1]));
        assert!(!x.avoids_forbidden(&[0, 1, 1]));
    }

    #[test]
    fn rotations() {
        assert_eq!(least_rotation(&[2, 0, 1]), vec![0, 1, 2]);
        assert_eq!(least_rotation(&[1, 0, 1, 0]), vec![0, 1, 0, 1]);
    }
}

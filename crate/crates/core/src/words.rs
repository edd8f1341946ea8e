//! Letters, a-alternating words and their starrings.
//!
//! Textual format: letters are the code points `a`, `B`, `C`, `D`; the star is
//! `*` (the glyph `★` is accepted on input). A star position counts the letters
//! strictly to its left.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symbol of the subshift alphabet. Ordered `a < B < C < D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "a")]
    A,
    B,
    C,
    D,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];
    pub const SEPARATORS: [Letter; 3] = [Letter::B, Letter::C, Letter::D];

    pub fn is_a(self) -> bool {
        self == Letter::A
    }

    pub fn as_char(self) -> char {
        self.as_byte() as char
    }

    pub fn as_byte(self) -> u8 {
        match self {
            Letter::A => b'a',
            Letter::B => b'B',
            Letter::C => b'C',
            Letter::D => b'D',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'a' => Ok(Letter::A),
            'B' => Ok(Letter::B),
            'C' => Ok(Letter::C),
            'D' => Ok(Letter::D),
            other => Err(Error::InvalidLetter(other)),
        }
    }

    pub(crate) fn from_byte(b: u8) -> Self {
        match b {
            b'a' => Letter::A,
            b'B' => Letter::B,
            b'C' => Letter::C,
            b'D' => Letter::D,
            _ => unreachable!("byte {b} is not a letter"),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.chars().map(Letter::from_char).collect()
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.as_char()).collect()
}

pub(crate) fn letters_to_bytes(letters: &[Letter]) -> Vec<u8> {
    letters.iter().map(|l| l.as_byte()).collect()
}

/// True iff every adjacent pair contains exactly one `a`.
pub fn is_alternating(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[0].is_a() != p[1].is_a())
}

/// A finite a-alternating word (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AlternatingWord(Vec<Letter>);

impl AlternatingWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if is_alternating(&letters) {
            Ok(Self(letters))
        } else {
            Err(Error::NotAlternating(letters_to_string(&letters)))
        }
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_alternating(&letters));
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// All `len + 1` starrings, by star position.
    pub fn starrings(&self) -> impl Iterator<Item = StarredWord> + '_ {
        (0..=self.len()).map(move |star| StarredWord {
            word: self.clone(),
            star,
        })
    }
}

impl FromStr for AlternatingWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_letters(s)?)
    }
}

impl fmt::Display for AlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&letters_to_string(&self.0))
    }
}

/// Letter sequence reversed; alternation is preserved.
pub fn reverse(w: &AlternatingWord) -> AlternatingWord {
    let mut letters = w.0.clone();
    letters.reverse();
    AlternatingWord(letters)
}

/// An alternating word with one star inserted at position `star`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarredWord {
    word: AlternatingWord,
    star: usize,
}

impl StarredWord {
    pub fn new(word: AlternatingWord, star: usize) -> Result<Self> {
        if star > word.len() {
            return Err(Error::StarOutOfRange {
                star,
                len: word.len(),
            });
        }
        Ok(Self { word, star })
    }

    pub fn word(&self) -> &AlternatingWord {
        &self.word
    }

    pub fn star(&self) -> usize {
        self.star
    }

    pub fn with_star(&self, star: usize) -> Result<Self> {
        Self::new(self.word.clone(), star)
    }

    /// Letter immediately right of the star, if any.
    pub fn right(&self) -> Option<Letter> {
        self.word.0.get(self.star).copied()
    }

    /// Letter immediately left of the star, if any.
    pub fn left(&self) -> Option<Letter> {
        self.star.checked_sub(1).map(|i| self.word.0[i])
    }
}

fn split_star(s: &str) -> Result<(&str, &str)> {
    let mut parts = s.split(['*', '★']);
    match (parts.next(), parts.next(), parts.next()) {
        (Some(l), Some(r), None) => Ok((l, r)),
        _ => Err(Error::MalformedStarredWord(s.to_string())),
    }
}

impl FromStr for StarredWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (left, right) = split_star(s)?;
        let mut letters = parse_letters(left)?;
        let star = letters.len();
        letters.extend(parse_letters(right)?);
        Self::new(AlternatingWord::new(letters)?, star)
    }
}

impl fmt::Display for StarredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = self.word.0.split_at(self.star);
        write!(f, "{}*{}", letters_to_string(l), letters_to_string(r))
    }
}

/// A starring of a circular word. Alternation is required for every cyclically
/// adjacent pair, so the word is non-empty of even length. The star index is
/// taken modulo the length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircularStarredWord {
    word: Vec<Letter>,
    star: usize,
}

pub fn is_circular_alternating(letters: &[Letter]) -> bool {
    !letters.is_empty()
        && is_alternating(letters)
        && letters[0].is_a() != letters[letters.len() - 1].is_a()
}

impl CircularStarredWord {
    pub fn new(word: Vec<Letter>, star: usize) -> Result<Self> {
        if !is_circular_alternating(&word) {
            return Err(Error::NotAlternating(format!(
                "circular {}",
                letters_to_string(&word)
            )));
        }
        let star = star % word.len();
        Ok(Self { word, star })
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn star(&self) -> usize {
        self.star
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn with_star(&self, star: usize) -> Self {
        Self {
            word: self.word.clone(),
            star: star % self.word.len(),
        }
    }

    pub fn right(&self) -> Letter {
        self.word[self.star]
    }

    pub fn left(&self) -> Letter {
        self.word[(self.star + self.word.len() - 1) % self.word.len()]
    }

    /// All `len` starrings, by star position.
    pub fn starrings(&self) -> impl Iterator<Item = CircularStarredWord> + '_ {
        (0..self.len()).map(move |s| self.with_star(s))
    }
}

impl FromStr for CircularStarredWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (left, right) = split_star(s)?;
        let mut letters = parse_letters(left)?;
        let star = letters.len();
        letters.extend(parse_letters(right)?);
        if star == letters.len() {
            // star at the very end is the same as the star at the front
            return Self::new(letters, 0);
        }
        Self::new(letters, star)
    }
}

impl fmt::Display for CircularStarredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = self.word.split_at(self.star);
        write!(f, "({}*{})", letters_to_string(l), letters_to_string(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aw(s: &str) -> AlternatingWord {
        s.parse().unwrap()
    }

    #[test]
    fn alternation_examples() {
        assert!(is_alternating(&parse_letters("aBa").unwrap()));
        assert!(!is_alternating(&parse_letters("aBBa").unwrap()));
        assert!(is_alternating(&[]));
        assert!(is_alternating(&[Letter::A]));
        assert!("aBBa".parse::<AlternatingWord>().is_err());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(reverse(&aw("aD")), aw("Da"));
        assert_eq!(reverse(&aw("")), aw(""));
    }

    #[test]
    fn starred_parse_and_display() {
        let s: StarredWord = "aDa*CaDa".parse().unwrap();
        assert_eq!(s.star(), 3);
        assert_eq!(s.to_string(), "aDa*CaDa");
        assert_eq!(s.left(), Some(Letter::A));
        assert_eq!(s.right(), Some(Letter::C));
        let t: StarredWord = "★aDa".parse().unwrap();
        assert_eq!(t.star(), 0);
        assert_eq!(t.left(), None);
        assert!("a*a".parse::<StarredWord>().is_err());
        assert!("aDa".parse::<StarredWord>().is_err());
        assert!("a*D*a".parse::<StarredWord>().is_err());
        assert!(StarredWord::new(aw("aD"), 3).is_err());
    }

    #[test]
    fn circular_words() {
        let c: CircularStarredWord = "aD*".parse().unwrap();
        assert_eq!(c.star(), 0);
        assert_eq!(c.left(), Letter::D);
        assert_eq!(c.right(), Letter::A);
        assert!(CircularStarredWord::new(parse_letters("aDa").unwrap(), 0).is_err());
        assert!(CircularStarredWord::new(vec![], 0).is_err());
        assert_eq!(
            CircularStarredWord::new(parse_letters("aDaC").unwrap(), 5)
                .unwrap()
                .star(),
            1
        );
    }

    #[test]
    fn letter_order() {
        assert!(Letter::A < Letter::B && Letter::B < Letter::C && Letter::C < Letter::D);
    }
}

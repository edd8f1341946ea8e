//! Finite excerpts of points of the subshift.
//!
//! A window stores letters `x_{[-origin, len-origin-1]}` of a point `x`: the
//! origin sits between the letters at indices `origin - 1` and `origin`, so
//! the letter at index `origin` is `x₀`. Moving the origin one step right is
//! the shift `σ(x)_i = x_{i+1}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::language::language_contains;
use crate::words::{letters_to_string, Letter, StarredWord};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Window {
    letters: Vec<Letter>,
    origin: usize,
    margin: usize,
}

impl Window {
    /// Checks language membership; the margin is the full distance from the
    /// origin to the nearer end.
    pub fn new(letters: Vec<Letter>, origin: usize) -> Result<Self> {
        if origin > letters.len() {
            return Err(Error::OutOfRange {
                index: origin,
                bound: letters.len(),
            });
        }
        if !language_contains(&letters)? {
            return Err(Error::Domain(format!(
                "{} is not in the language",
                letters_to_string(&letters)
            )));
        }
        let margin = origin.min(letters.len() - origin);
        Ok(Self {
            letters,
            origin,
            margin,
        })
    }

    /// The window `u ★ v` read as an excerpt around the origin.
    pub fn from_starred(s: &StarredWord) -> Result<Self> {
        Self::new(s.word().letters().to_vec(), s.star())
    }

    pub fn with_margin(mut self, margin: usize) -> Result<Self> {
        let max = self.origin.min(self.letters.len() - self.origin);
        if margin > max {
            return Err(Error::OutOfRange {
                index: margin,
                bound: max,
            });
        }
        self.margin = margin;
        Ok(self)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `x_i` for a coordinate relative to the origin, if inside the window.
    pub fn at(&self, i: isize) -> Option<Letter> {
        let idx = self.origin as isize + i;
        if idx < 0 {
            None
        } else {
            self.letters.get(idx as usize).copied()
        }
    }

    /// The reversal `f(x)_i = x_{-1-i}`: letters reversed, origin mirrored.
    pub fn reversed(&self) -> Window {
        let mut letters = self.letters.clone();
        letters.reverse();
        Window {
            origin: letters.len() - self.origin,
            letters,
            margin: self.margin,
        }
    }

    /// The same letters with the origin moved by `delta`, spending `|delta|`
    /// of the margin.
    pub(crate) fn moved(&self, delta: isize) -> Result<Window> {
        let cost = delta.unsigned_abs();
        if cost > self.margin {
            return Err(Error::MarginExhausted(format!(
                "moving the origin by {delta} needs margin {cost}, have {}",
                self.margin
            )));
        }
        Ok(Window {
            letters: self.letters.clone(),
            origin: (self.origin as isize + delta) as usize,
            margin: self.margin - cost,
        })
    }

    /// Same point, same margin: letters and origin agree.
    pub fn same_point(&self, other: &Window) -> bool {
        self.letters == other.letters && self.origin == other.origin
    }
}

/// Letters first (`a < B < C < D`), then origin.
impl Ord for Window {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .cmp(&other.letters)
            .then(self.origin.cmp(&other.origin))
            .then(self.margin.cmp(&other.margin))
    }
}

impl PartialOrd for Window {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = self.letters.split_at(self.origin);
        write!(f, "{}*{}", letters_to_string(l), letters_to_string(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_letters;

    #[test]
    fn construction_checks() {
        let w = Window::new(parse_letters("aDaCaDa").unwrap(), 3).unwrap();
        assert_eq!(w.margin(), 3);
        assert_eq!(w.at(0), Some(Letter::C));
        assert_eq!(w.at(-1), Some(Letter::A));
        assert_eq!(w.at(-4), None);
        assert!(Window::new(parse_letters("aa").unwrap(), 1).is_err());
        assert!(Window::new(parse_letters("aD").unwrap(), 3).is_err());
        assert!(w.clone().with_margin(4).is_err());
        assert_eq!(w.with_margin(1).unwrap().margin(), 1);
    }

    #[test]
    fn reversal_mirrors_origin() {
        let w = Window::new(parse_letters("aDaCaDaB").unwrap(), 3).unwrap();
        let r = w.reversed();
        assert_eq!(r.to_string(), "BaDaC*aDa");
        for i in -3..5 {
            assert_eq!(r.at(i), w.at(-1 - i));
        }
        assert_eq!(r.reversed(), w);
    }
}

//! Words over the generators `a, b, c, d` of the free product Z₂ * Z₂², and
//! the substitution κ used by the Lysenok relators.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    A,
    B,
    C,
    D,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::A, Generator::B, Generator::C, Generator::D];
    pub const KLEIN: [Generator; 3] = [Generator::B, Generator::C, Generator::D];

    pub fn as_char(self) -> char {
        match self {
            Generator::A => 'a',
            Generator::B => 'b',
            Generator::C => 'c',
            Generator::D => 'd',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'a' => Ok(Generator::A),
            'b' => Ok(Generator::B),
            'c' => Ok(Generator::C),
            'd' => Ok(Generator::D),
            other => Err(Error::InvalidGenerator(other)),
        }
    }

    /// Product inside the Klein four-group {1, b, c, d}; `None` is the identity.
    fn klein_product(self, other: Generator) -> Option<Generator> {
        use Generator::*;
        match (self, other) {
            (x, y) if x == y => None,
            (B, C) | (C, B) => Some(D),
            (B, D) | (D, B) => Some(C),
            (C, D) | (D, C) => Some(B),
            _ => unreachable!("klein_product called with a"),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A word over `{a, b, c, d}`, stored as written (not reduced).
///
/// Words act on the left: in `w = g₁g₂⋯gₖ` the rightmost generator `gₖ` is
/// applied first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupWord(Vec<Generator>);

impl GroupWord {
    pub fn new(generators: Vec<Generator>) -> Self {
        Self(generators)
    }

    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    pub fn pow(&self, k: usize) -> GroupWord {
        GroupWord(self.0.repeat(k))
    }

    /// Inverse in H: every generator is an involution, so this is the reversal.
    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().copied().collect())
    }

    /// Free reduction in Z₂ * Z₂²: cancels `aa`, multiplies adjacent Klein
    /// letters. The result alternates between `a` and a single Klein letter.
    pub fn reduced(&self) -> GroupWord {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            match out.last().copied() {
                Some(top) if top == Generator::A && g == Generator::A => {
                    out.pop();
                }
                Some(top) if top != Generator::A && g != Generator::A => {
                    match top.klein_product(g) {
                        Some(p) => *out.last_mut().unwrap() = p,
                        None => {
                            out.pop();
                        }
                    }
                }
                _ => out.push(g),
            }
        }
        GroupWord(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0
            .windows(2)
            .all(|p| (p[0] == Generator::A) != (p[1] == Generator::A))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(Generator::from_char)
            .collect::<Result<Vec<_>>>()
            .map(GroupWord)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// κ: a → aca, b → d, c → b, d → c, followed by free reduction.
pub fn kappa(w: &GroupWord) -> GroupWord {
    use Generator::*;
    let mut image = Vec::with_capacity(w.len() * 2);
    for &g in w.generators() {
        match g {
            A => image.extend_from_slice(&[A, C, A]),
            B => image.push(D),
            C => image.push(B),
            D => image.push(C),
        }
    }
    GroupWord(image).reduced()
}

/// κᵏ applied iteratively, reducing after each step.
pub fn kappa_pow(w: &GroupWord, k: usize) -> GroupWord {
    (0..k).fold(w.clone(), |acc, _| kappa(&acc))
}

/// `(ad)⁴`, stored expanded.
pub fn relator_ad4() -> GroupWord {
    "adadadad".parse().unwrap()
}

/// `(adacac)⁴`, stored expanded.
pub fn relator_adacac4() -> GroupWord {
    "adacac".parse::<GroupWord>().unwrap().pow(4)
}

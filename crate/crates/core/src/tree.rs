//! The defining action of the group on vertices of the rooted binary tree.
//!
//! `a` flips the first bit. For `g ∈ {b, c, d}` and a vertex `1ⁿ0αx`, `g`
//! flips `α` iff `n ≢ v_g (mod 3)` with `v_b = 2, v_c = 1, v_d = 0`. Vertices
//! that do not contain the pattern `1ⁿ0α` (all ones, or the `0` is the last bit)
//! are fixed by `b, c, d`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{check_cap, Error, Result};
use crate::group_word::{Generator, GroupWord};

/// Default cap on the depth of exhaustive level sweeps.
pub const MAX_DEPTH: u32 = 20;

/// A vertex at height `len` of the binary tree; bit `i` is the `i`-th letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    bits: u64,
    len: u32,
}

impl BitString {
    pub const MAX_LEN: u32 = 64;

    pub fn new(bits: u64, len: u32) -> Result<Self> {
        check_cap("bit string length", len as usize, Self::MAX_LEN as usize)?;
        let mask = Self::mask(len);
        Ok(Self {
            bits: bits & mask,
            len,
        })
    }

    fn mask(len: u32) -> u64 {
        if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        }
    }

    pub fn empty() -> Self {
        Self { bits: 0, len: 0 }
    }

    pub fn ones(len: u32) -> Self {
        Self {
            bits: Self::mask(len),
            len,
        }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed form, bit `i` at `1 << i`.
    pub fn raw(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, i: u32) -> bool {
        assert!(i < self.len, "bit {i} of a length-{} string", self.len);
        self.bits >> i & 1 == 1
    }

    pub fn flip(&self, i: u32) -> Self {
        assert!(i < self.len);
        Self {
            bits: self.bits ^ (1 << i),
            len: self.len,
        }
    }

    /// Appends one bit at the end.
    pub fn push(&self, bit: bool) -> Self {
        assert!(self.len < Self::MAX_LEN);
        Self {
            bits: self.bits | (u64::from(bit) << self.len),
            len: self.len + 1,
        }
    }

    pub fn prefix(&self, k: u32) -> Self {
        assert!(k <= self.len);
        Self {
            bits: self.bits & Self::mask(k),
            len: k,
        }
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        self.len <= other.len && other.prefix(self.len) == *self
    }

    /// All `2^len` strings of a level, ordered by packed value.
    pub fn level(len: u32) -> impl Iterator<Item = BitString> {
        assert!(len < 64);
        (0..1u64 << len).map(move |bits| BitString { bits, len })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        let mut len = 0u32;
        for c in s.chars() {
            check_cap(
                "bit string length",
                len as usize + 1,
                Self::MAX_LEN as usize,
            )?;
            match c {
                '0' => {}
                '1' => bits |= 1 << len,
                other => return Err(Error::InvalidBit(other)),
            }
            len += 1;
        }
        Ok(Self { bits, len })
    }
}

fn residue(g: Generator) -> u32 {
    match g {
        Generator::B => 2,
        Generator::C => 1,
        Generator::D => 0,
        Generator::A => unreachable!(),
    }
}

/// Packed form of [`act_generator`], used by the level sweeps.
#[inline]
pub(crate) fn act_raw(g: Generator, bits: u64, len: u32) -> u64 {
    if len == 0 {
        return bits;
    }
    match g {
        Generator::A => bits ^ 1,
        _ => {
            let n = bits.trailing_ones();
            if n + 1 < len && n % 3 != residue(g) {
                bits ^ (1 << (n + 1))
            } else {
                bits
            }
        }
    }
}

#[inline]
pub(crate) fn act_word_raw(w: &[Generator], mut bits: u64, len: u32) -> u64 {
    for &g in w.iter().rev() {
        bits = act_raw(g, bits, len);
    }
    bits
}

pub fn act_generator(g: Generator, v: BitString) -> BitString {
    BitString {
        bits: act_raw(g, v.bits, v.len),
        len: v.len,
    }
}

/// Right-to-left composition: the last generator of `w` acts first.
pub fn act_word(w: &GroupWord, v: BitString) -> BitString {
    BitString {
        bits: act_word_raw(w.generators(), v.bits, v.len),
        len: v.len,
    }
}

pub fn is_trivial_up_to_depth(w: &GroupWord, m: u32) -> Result<bool> {
    is_trivial_up_to_depth_with_cap(w, m, MAX_DEPTH)
}

/// Whether `w` fixes every vertex at level `m`. This is only a necessary
/// condition for `w` to be trivial in the group: a nontrivial element may act
/// trivially on the first `m` levels.
pub fn is_trivial_up_to_depth_with_cap(w: &GroupWord, m: u32, cap: u32) -> Result<bool> {
    check_cap("depth", m as usize, cap as usize)?;
    let w = w.reduced();
    let gens = w.generators();
    Ok((0..1u64 << m).all(|v| act_word_raw(gens, v, m) == v))
}

pub fn stabilizer_generators(v: BitString) -> BTreeSet<Generator> {
    Generator::ALL
        .into_iter()
        .filter(|&g| act_generator(g, v) == v)
        .collect()
}

pub fn quadrant_support(w: &GroupWord, depth: u32) -> Result<BTreeSet<BitString>> {
    quadrant_support_with_cap(w, depth, MAX_DEPTH)
}

/// The two-bit prefixes `αβ` below which `w` moves some vertex of level
/// `depth`. Requires `w` to fix the first two levels pointwise.
pub fn quadrant_support_with_cap(
    w: &GroupWord,
    depth: u32,
    cap: u32,
) -> Result<BTreeSet<BitString>> {
    check_cap("depth", depth as usize, cap as usize)?;
    if depth < 2 {
        return Err(Error::Domain(format!("depth {depth} is below level 2")));
    }
    let w = w.reduced();
    let gens = w.generators();
    for m in 1..=2 {
        if (0..1u64 << m).any(|v| act_word_raw(gens, v, m) != v) {
            return Err(Error::NotLevelTwoTrivial(w.to_string()));
        }
    }
    let mut support = BTreeSet::new();
    for v in 0..1u64 << depth {
        if act_word_raw(gens, v, depth) != v {
            support.insert(BitString {
                bits: v & 3,
                len: 2,
            });
        }
    }
    Ok(support)
}

/// Orbit of `v` under the generators, in breadth-first order.
pub fn orbit(v: BitString) -> Vec<BitString> {
    let mut seen = BTreeSet::from([v]);
    let mut order = vec![v];
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for g in Generator::ALL {
            let x = act_generator(g, u);
            if seen.insert(x) {
                order.push(x);
                queue.push_back(x);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn gw(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(act_generator(Generator::A, bs("01")), bs("11"));
        assert_eq!(act_generator(Generator::B, bs("010")), bs("000"));
        assert_eq!(act_generator(Generator::D, bs("010")), bs("010"));
        assert_eq!(
            act_generator(Generator::A, BitString::empty()),
            BitString::empty()
        );
        for g in Generator::KLEIN {
            assert_eq!(act_generator(g, bs("1111")), bs("1111"));
            assert_eq!(act_generator(g, bs("0")), bs("0"));
            assert_eq!(act_generator(g, bs("110")), bs("110"));
        }
    }

    #[test]
    fn word_examples() {
        for v in BitString::level(5) {
            assert_eq!(act_word(&gw("aa"), v), v);
        }
        assert_eq!(act_word(&gw("bcd"), bs("0110")), bs("0110"));
        let v = bs("1110");
        assert_eq!(
            act_word(&gw("ad"), v),
            act_generator(Generator::A, act_generator(Generator::D, v))
        );
        assert_eq!(act_word(&GroupWord::identity(), v), v);
    }

    #[test]
    fn triviality_examples() {
        assert!(is_trivial_up_to_depth(&gw("adadadad"), 12).unwrap());
        assert!(!is_trivial_up_to_depth(&gw("ab"), 5).unwrap());
        assert!(is_trivial_up_to_depth(&GroupWord::identity(), 3).unwrap());
        assert!(matches!(
            is_trivial_up_to_depth(&gw("a"), 21),
            Err(Error::SizeLimit { cap: 20, .. })
        ));
    }

    #[test]
    fn stabilizer_examples() {
        let set = |s: &str| stabilizer_generators(bs(s));
        use Generator::*;
        assert_eq!(set("111"), BTreeSet::from([B, C, D]));
        assert!(!set("011").contains(&A));
        assert_eq!(set("011"), BTreeSet::from([D]));
        // "10" has no bit after the 0, so it is fixed by b, c, d
        assert_eq!(set("10"), BTreeSet::from([B, C, D]));
        assert_eq!(set("100"), BTreeSet::from([C]));
    }

    #[test]
    fn quadrant_examples() {
        assert!(quadrant_support(&GroupWord::identity(), 6)
            .unwrap()
            .is_empty());
        let sup = quadrant_support(&gw("adad"), 6).unwrap();
        // brute-force oracle over level 6
        let mut expect = BTreeSet::new();
        for v in BitString::level(6) {
            let mut u = v;
            for g in [Generator::D, Generator::A, Generator::D, Generator::A] {
                u = act_generator(g, u);
            }
            if u != v {
                expect.insert(v.prefix(2));
            }
        }
        assert_eq!(sup, expect);
        assert!(!sup.is_empty());
        assert!(matches!(
            quadrant_support(&gw("a"), 6),
            Err(Error::NotLevelTwoTrivial(_))
        ));
        assert!(quadrant_support(&gw("adadadad"), 8).unwrap().is_empty());
    }

    #[test]
    fn level_transitivity() {
        for m in 0..=12 {
            assert_eq!(orbit(BitString::ones(m)).len(), 1 << m);
        }
    }

    #[test]
    fn bitstring_basics() {
        let v = bs("0110");
        assert_eq!(v.to_string(), "0110");
        assert_eq!(v.prefix(2), bs("01"));
        assert!(bs("01").is_prefix_of(&v));
        assert_eq!(v.push(true), bs("01101"));
        assert!("012".parse::<BitString>().is_err());
        assert_eq!(BitString::ones(3), bs("111"));
    }
}

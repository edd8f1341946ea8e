//! The inductive palindromes `w_n`, the substitution τ and the language of the
//! subshift they generate.
//!
//! `w₁ = a` and `w_{n+1} = w_n α_n w_n` with `α_n` cycling through `D, C, B`
//! for `n ≡ 1, 2, 0 (mod 3)`. A word `u` with `|u| ≤ |w_n|` is in the language
//! iff it occurs in `w_{n+3}`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{check_cap, Error, Result};
use crate::words::{letters_to_bytes, AlternatingWord, Letter};

/// Default cap on the level `n` of `w_n` (so `|w_n| < 2²⁴`).
pub const MAX_LEVEL: u32 = 24;

/// The separator inserted between the two copies of `w_n` in `w_{n+1}`.
pub fn alpha_choice(n: u32) -> Letter {
    match n % 3 {
        0 => Letter::B,
        1 => Letter::D,
        _ => Letter::C,
    }
}

/// `|w_n| = 2ⁿ − 1`.
pub fn w_len(n: u32) -> usize {
    (1usize << n) - 1
}

pub fn build_w(n: u32) -> Result<AlternatingWord> {
    build_w_with_cap(n, MAX_LEVEL)
}

pub fn build_w_with_cap(n: u32, cap: u32) -> Result<AlternatingWord> {
    build_w_with_rule(n, cap, alpha_choice)
}

/// Builds `w_n` with an arbitrary separator rule. Used by verification
/// harnesses to inject a deliberately wrong rule.
pub fn build_w_with_rule(
    n: u32,
    cap: u32,
    rule: impl Fn(u32) -> Letter,
) -> Result<AlternatingWord> {
    if n == 0 {
        return Err(Error::Domain("w_n is defined for n >= 1".into()));
    }
    check_cap("level n", n as usize, cap as usize)?;
    let mut w = Vec::with_capacity(w_len(n));
    w.push(Letter::A);
    for k in 1..n {
        let sep = rule(k);
        if sep.is_a() {
            return Err(Error::Domain(format!(
                "separator rule returned a at level {k}"
            )));
        }
        let len = w.len();
        w.push(sep);
        w.extend_from_within(..len);
    }
    Ok(AlternatingWord::from_vec_unchecked(w))
}

/// `w_{MAX_LEVEL}` as bytes; every `w_n` with `n ≤ MAX_LEVEL` is a prefix.
fn cached_w_bytes() -> &'static [u8] {
    static W: OnceLock<Vec<u8>> = OnceLock::new();
    W.get_or_init(|| letters_to_bytes(build_w(MAX_LEVEL).unwrap().letters()))
}

/// Byte form of `w_n`. Borrowed from the shared cache when `n ≤ MAX_LEVEL`.
pub(crate) fn w_bytes(n: u32) -> std::borrow::Cow<'static, [u8]> {
    if n <= MAX_LEVEL {
        std::borrow::Cow::Borrowed(&cached_w_bytes()[..w_len(n)])
    } else {
        std::borrow::Cow::Owned(letters_to_bytes(build_w_with_cap(n, n).unwrap().letters()))
    }
}

/// Smallest `n ≥ 1` with `|w_n| ≥ len`.
pub fn level_for_len(len: usize) -> u32 {
    let mut n = 1;
    while w_len(n) < len {
        n += 1;
    }
    n
}

/// First `len` letters of the fixed point of τ(a) = τ(d) = ac, τ(b) = ad,
/// τ(c) = ab iterated from `a`.
///
/// The subshift letters are identified with τ's alphabet by
/// `b ↦ C, c ↦ D, d ↦ B`; this is the identification under which the fixed
/// point coincides with the limit of the `w_n`.
pub fn tau_fixed_point_prefix(len: usize) -> Result<Vec<Letter>> {
    tau_fixed_point_prefix_with_cap(len, MAX_LEVEL)
}

pub fn tau_fixed_point_prefix_with_cap(len: usize, cap: u32) -> Result<Vec<Letter>> {
    check_cap("prefix length", len, w_len(cap))?;
    // τ over the byte alphabet {a,b,c,d}; images have length 2 so each pass doubles.
    let mut word: Vec<u8> = vec![b'a'];
    while word.len() < len {
        let mut next = Vec::with_capacity(word.len() * 2);
        for &s in &word {
            next.extend_from_slice(match s {
                b'a' | b'd' => b"ac",
                b'b' => b"ad",
                b'c' => b"ab",
                _ => unreachable!(),
            });
        }
        word = next;
    }
    word.truncate(len);
    Ok(word
        .into_iter()
        .map(|s| match s {
            b'a' => Letter::A,
            b'b' => Letter::C,
            b'c' => Letter::D,
            b'd' => Letter::B,
            _ => unreachable!(),
        })
        .collect())
}

pub fn language_contains(u: &[Letter]) -> Result<bool> {
    language_contains_with_cap(u, MAX_LEVEL)
}

/// Membership in the language: `u` occurs in `w_{n+3}` for the smallest `n`
/// with `|u| ≤ |w_n|`.
pub fn language_contains_with_cap(u: &[Letter], cap: u32) -> Result<bool> {
    let n = level_for_len(u.len());
    check_cap("level n+3", (n + 3) as usize, cap as usize)?;
    if u.is_empty() {
        return Ok(true);
    }
    let haystack = w_bytes(n + 3);
    let needle = letters_to_bytes(u);
    Ok(memchr::memmem::find(&haystack, &needle).is_some())
}

/// All language words of length `len`, ordered lexicographically with
/// `a < B < C < D`.
pub fn language_words(len: usize) -> Result<Vec<Vec<Letter>>> {
    language_words_with_cap(len, MAX_LEVEL)
}

pub fn language_words_with_cap(len: usize, cap: u32) -> Result<Vec<Vec<Letter>>> {
    if len == 0 {
        return Ok(vec![Vec::new()]);
    }
    let n = level_for_len(len);
    check_cap("level n+3", (n + 3) as usize, cap as usize)?;
    let source = w_bytes(n + 3);
    let words: BTreeSet<Vec<Letter>> = source
        .windows(len)
        .map(|win| win.iter().map(|&b| Letter::from_byte(b)).collect())
        .collect();
    Ok(words.into_iter().collect())
}

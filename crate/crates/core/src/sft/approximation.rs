use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::ZSft;
use crate::error::{check_cap, Error, Result};
use crate::jump::{circular_power, RelationSet};
use crate::language::{build_w, language_contains, language_words, w_bytes};
use crate::words::{letters_to_bytes, letters_to_string, Letter};

pub const MAX_APPROXIMATION_ORDER: usize = 256;
pub const MAX_PERIOD: usize = 64;
pub const MAX_PSEUDO_ORBIT_LEVEL: u32 = 8;

fn letter_index(l: Letter) -> u8 {
    match l {
        Letter::A => 0,
        Letter::B => 1,
        Letter::C => 2,
        Letter::D => 3,
    }
}

fn subshift_alphabet() -> Vec<char> {
    Letter::ALL.iter().map(|l| l.as_char()).collect()
}

/// Words `xvy` outside the language with `xv` and `vy` inside, of length at
/// most `max_len`, ordered by length and then letters.
pub fn minimal_forbidden_words(max_len: usize) -> Result<Vec<Vec<Letter>>> {
    check_cap("approximation order", max_len, MAX_APPROXIMATION_ORDER)?;
    let mut out = Vec::new();
    let mut prev: HashSet<Vec<Letter>> = language_words(0)?.into_iter().collect();
    let mut prev_sorted: Vec<Vec<Letter>> = vec![Vec::new()];
    for len in 1..=max_len {
        let cur_sorted = language_words(len)?;
        let cur: HashSet<Vec<Letter>> = cur_sorted.iter().cloned().collect();
        for w in &prev_sorted {
            for y in Letter::ALL {
                let mut u = w.clone();
                u.push(y);
                if !cur.contains(&u) && prev.contains(&u[1..]) {
                    out.push(u);
                }
            }
        }
        prev = cur;
        prev_sorted = cur_sorted;
    }
    Ok(out)
}

/// The order-`order` SFT approximation of the subshift: the SFT whose
/// allowed words of length `order` are exactly the language words. It is
/// presented by the minimal forbidden words of length at most `order`.
pub fn sft_approximation(order: usize) -> Result<ZSft> {
    Ok(sft_approximations(order)?.pop().expect("order >= 1"))
}

/// The approximations of orders `1..=max_order`, sharing one pass over the
/// language.
pub fn sft_approximations(max_order: usize) -> Result<Vec<ZSft>> {
    if max_order == 0 {
        return Err(Error::Domain(
            "approximation order must be at least 1".into(),
        ));
    }
    let words = minimal_forbidden_words(max_order)?;
    let mut forbidden = BTreeSet::new();
    let mut next = 0;
    let mut out = Vec::with_capacity(max_order);
    for order in 1..=max_order {
        while next < words.len() && words[next].len() <= order {
            forbidden.insert(words[next].iter().map(|&l| letter_index(l)).collect());
            next += 1;
        }
        out.push(ZSft::from_encoded(subshift_alphabet(), forbidden.clone()));
    }
    Ok(out)
}

/// Least rotations of the cyclic words of length `p` whose repetition is a
/// point of `sft`, sorted.
pub fn periodic_points(sft: &ZSft, p: usize) -> Result<Vec<String>> {
    if p == 0 {
        return Err(Error::Domain("period must be at least 1".into()));
    }
    check_cap("period p", p, MAX_PERIOD)?;
    let f = sft.follower()?;
    Ok(f.periodic(p)?.iter().map(|w| sft.decode(w)).collect())
}

/// Whether `sft` has a point of period `p`.
pub fn has_periodic_point(sft: &ZSft, p: usize) -> Result<bool> {
    if p == 0 {
        return Err(Error::Domain("period must be at least 1".into()));
    }
    Ok(sft.follower()?.has_periodic(p))
}

/// Least order `L ≤ max_order` whose approximation has no point of period
/// `p`, if any.
pub fn aperiodicity_order(p: usize, max_order: usize) -> Result<Option<usize>> {
    for (i, x) in sft_approximations(max_order)?.iter().enumerate() {
        if !has_periodic_point(x, p)? {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

/// One JSON line of a periodic-point sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicReport {
    pub order: usize,
    pub period: usize,
    pub points: Vec<String>,
}

impl PeriodicReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Outcome of the three checks on `x_n = (w_n α_n)^ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudoOrbitReport {
    pub n: u32,
    pub period: usize,
    pub cyclic_word: String,
    /// (i) every subword of length `2ⁿ` is a language word and occurs in
    /// `w_{n+1}`.
    pub language_check: bool,
    pub subwords_checked: usize,
    /// (ii) every relator up to the length cap fixes every starring.
    pub relator_check: bool,
    pub relators_checked: usize,
    pub violated_relator: Option<String>,
    /// (iii) no starring sits in a window of `𝒮` with both margins `2^{n+1}`.
    pub separation_check: bool,
    pub window_len: usize,
    pub shortest_forbidden: Option<String>,
}

impl PseudoOrbitReport {
    pub fn passed(&self) -> bool {
        self.language_check && self.relator_check && self.separation_check
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Subword of `c^ℤ` of length `len` starting at `start`.
fn cyclic_subword(c: &[Letter], start: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|i| c[(start + i) % c.len()]).collect()
}

/// Relators of length above `word_len` are skipped in check (ii).
pub fn pseudo_orbit_demo(n: u32, word_len: usize) -> Result<PseudoOrbitReport> {
    if n == 0 {
        return Err(Error::Domain("level n must be at least 1".into()));
    }
    check_cap(
        "pseudo-orbit level n",
        n as usize,
        MAX_PSEUDO_ORBIT_LEVEL as usize,
    )?;
    let circ = circular_power(n, 1)?;
    let c = circ.word().to_vec();
    let period = c.len();

    let next_w = w_bytes(n + 1);
    let mut language_check = true;
    for start in 0..period {
        let u = cyclic_subword(&c, start, period);
        let in_w = memchr::memmem::find(&next_w, &letters_to_bytes(&u)).is_some();
        language_check &= in_w && language_contains(&u)?;
    }

    let relations = RelationSet::new(6);
    let checked: Vec<_> = relations
        .relators()
        .iter()
        .filter(|r| r.len() <= word_len)
        .cloned()
        .collect();
    let violated_relator = RelationSet::from_relators(6, checked.clone())
        .first_violation(&circ)
        .map(|(r, _)| r.to_string());

    let window_len = 4 * period;
    let mut separation_check = true;
    for j in 0..period {
        // the window [j − 2^{n+1}, j + 2^{n+1}) starts at j modulo the period
        let u = cyclic_subword(&c, j, window_len);
        separation_check &= !language_contains(&u)?;
    }
    // non-membership is inherited by longer words, so bisect on the length
    let has_bad = |len: usize| -> Result<Option<Vec<Letter>>> {
        for start in 0..period {
            let u = cyclic_subword(&c, start, len);
            if !language_contains(&u)? {
                return Ok(Some(u));
            }
        }
        Ok(None)
    };
    let shortest_forbidden = if has_bad(window_len)?.is_some() {
        let (mut lo, mut hi) = (0usize, window_len);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if has_bad(mid)?.is_some() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        has_bad(hi)?.map(|u| letters_to_string(&u))
    } else {
        None
    };

    debug_assert_eq!(build_w(n)?.len() + 1, period);
    Ok(PseudoOrbitReport {
        n,
        period,
        cyclic_word: letters_to_string(&c),
        language_check,
        subwords_checked: period,
        relator_check: violated_relator.is_none(),
        relators_checked: checked.len(),
        violated_relator,
        separation_check,
        window_len,
        shortest_forbidden,
    })
}

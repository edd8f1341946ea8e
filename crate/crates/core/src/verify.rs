//! Batch invariant checks, each reported as a named pass/fail line.
//!
//! Checks that depend on the words `w_n` take the separator rule as a
//! parameter so that a deliberately wrong rule can be run as a negative
//! control.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::full_group::{apply_generator, shift_as_tfg, vorobets_key, Window};
use crate::gray::{flip, phi, phi_at, psi, six_fiber_witnesses};
use crate::group_word::Generator;
use crate::jump::{jump_linear, RelationSet};
use crate::language::{alpha_choice, build_w_with_rule, level_for_len, w_len};
use crate::tree::{act_generator, is_trivial_up_to_depth};
use crate::words::{letters_to_bytes, Letter};

pub type Rule = fn(u32) -> Letter;

/// `α_n` with the roles of `B` and `C` exchanged.
pub fn mutated_alpha_choice(n: u32) -> Letter {
    match alpha_choice(n) {
        Letter::B => Letter::C,
        Letter::C => Letter::B,
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, failure: Option<String>, ok_detail: String) -> Self {
        let passed = failure.is_none();
        Self {
            name: name.into(),
            passed,
            detail: failure.unwrap_or(ok_detail),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<28} {}", self.name, self.detail)
    }
}

fn w_bytes_with(n: u32, rule: Rule) -> Result<Vec<u8>> {
    Ok(letters_to_bytes(
        build_w_with_rule(n, n.max(crate::language::MAX_LEVEL), rule)?.letters(),
    ))
}

/// `φ_n` carries the jump action on starrings of `w_n` to the tree action.
pub fn conjugacy(max_n: u32, rule: Rule) -> Result<Check> {
    let mut cases = 0usize;
    let mut failure = None;
    'outer: for n in 1..=max_n {
        let w = build_w_with_rule(n, n.max(crate::language::MAX_LEVEL), rule)?;
        let table = phi(n)?;
        for j in 0..1usize << n {
            for g in Generator::ALL {
                let moved = jump_linear(w.letters(), j, g);
                cases += 1;
                if table.get(moved) != act_generator(g, table.get(j)) {
                    failure = Some(format!("n={n} j={j} g={g}"));
                    break 'outer;
                }
            }
        }
    }
    Ok(Check::new(
        "conjugacy",
        failure,
        format!("{cases} (n, j, g) cases up to n={max_n}"),
    ))
}

/// Endpoints, Gray adjacency and bijectivity of every `φ_n`.
pub fn gray_invariants(max_n: u32) -> Result<Check> {
    let mut failure = None;
    for n in 1..=max_n {
        let t = phi(n)?;
        let v = t.values();
        let last = v.len() - 1;
        let top = crate::tree::BitString::ones(n);
        if v[0] != top || v[last] != top.flip(n - 1) {
            failure = Some(format!("endpoints of phi_{n}"));
            break;
        }
        if let Some(j) = (0..last).find(|&j| (v[j].raw() ^ v[j + 1].raw()).count_ones() != 1) {
            failure = Some(format!(
                "phi_{n}({j}) and phi_{n}({}) are not adjacent",
                j + 1
            ));
            break;
        }
        let distinct: HashSet<u64> = v.iter().map(|b| b.raw()).collect();
        if distinct.len() != v.len() {
            failure = Some(format!("phi_{n} is not injective"));
            break;
        }
    }
    Ok(Check::new(
        "gray table invariants",
        failure,
        format!("n <= {max_n}"),
    ))
}

/// The first `n` bits of `φ_{n+1}(j)` and `φ_{n+1}(F(j))` agree.
pub fn reflection_identity(max_n: u32) -> Result<Check> {
    let mut failure = None;
    'outer: for n in 1..max_n {
        let t = phi(n + 1)?;
        for j in 0..1usize << (n + 1) {
            if t.get(j).prefix(n) != t.get(flip(n + 1, j)?).prefix(n) {
                failure = Some(format!("n={n} j={j}"));
                break 'outer;
            }
        }
    }
    Ok(Check::new(
        "reflection identity",
        failure,
        format!("n < {max_n}"),
    ))
}

/// Every relator of `R_6` fixes all starrings of `w_n`.
pub fn relators_on_starrings(max_n: u32, rule: Rule) -> Result<Check> {
    let relations = RelationSet::new(6);
    let mut failure = None;
    for n in 1..=max_n {
        let w = build_w_with_rule(n, n.max(crate::language::MAX_LEVEL), rule)?;
        if let Some((r, pos)) = relations.first_violation(&w) {
            failure = Some(format!("n={n}: {r} moves starring {pos}"));
            break;
        }
    }
    Ok(Check::new(
        "relators on starrings",
        failure,
        format!("R_6 on w_n, n <= {max_n}"),
    ))
}

/// Every relator of `R_6` acts trivially on the tree down to `depth`.
pub fn relators_on_tree(depth: u32) -> Result<Check> {
    let mut failure = None;
    let relations = RelationSet::new(6);
    for r in relations.relators() {
        if !is_trivial_up_to_depth(r, depth)? {
            failure = Some(format!("{r} moves a vertex of level {depth}"));
            break;
        }
    }
    Ok(Check::new(
        "relators on the tree",
        failure,
        format!(
            "{} relators of R_6, depth {depth}",
            relations.relators().len()
        ),
    ))
}

fn factors(haystack: &[u8], len: usize) -> HashSet<&[u8]> {
    haystack.windows(len).collect()
}

/// For every length `ℓ ≤ max_len` and every `n` with `ℓ ≤ |w_n|`, the
/// length-`ℓ` factors of `w_{n+3}`, of the three words `w_n α w_n` together,
/// and of a much longer `w_M` coincide.
pub fn language_equivalence(max_len: usize, rule: Rule) -> Result<Check> {
    let top = level_for_len(max_len);
    let big_level = (top + 9).min(crate::language::MAX_LEVEL);
    let big = w_bytes_with(big_level, rule)?;
    let mut words = Vec::new();
    for n in 1..=top + 3 {
        words.push(w_bytes_with(n, rule)?);
    }
    let mut failure = None;
    let mut compared = 0usize;
    'outer: for len in 1..=max_len {
        let c = factors(&big, len);
        for n in level_for_len(len)..=top {
            let a = factors(&words[n as usize + 2], len);
            let wn = &words[n as usize - 1];
            let mut b = HashSet::new();
            let joined: Vec<Vec<u8>> = Letter::SEPARATORS
                .iter()
                .map(|s| {
                    let mut v = wn.clone();
                    v.push(s.as_byte());
                    v.extend_from_slice(wn);
                    v
                })
                .collect();
            for j in &joined {
                b.extend(factors(j, len));
            }
            compared += c.len();
            if a != b || a != c {
                failure = Some(format!(
                    "length {len}, n={n}: |w_(n+3)| {} / |w_n α w_n| {} / |w_{big_level}| {} factors",
                    a.len(),
                    b.len(),
                    c.len()
                ));
                break 'outer;
            }
        }
    }
    Ok(Check::new(
        "language equivalence",
        failure,
        format!("{compared} factors, |u| <= {max_len}"),
    ))
}

/// Every language word of length `2|w_n| + 1` contains `w_n`.
pub fn minimality_bound(max_n: u32, rule: Rule) -> Result<Check> {
    let mut failure = None;
    let mut words = 0usize;
    for n in 1..=max_n {
        let wn = w_bytes_with(n, rule)?;
        let big = w_bytes_with((n + 8).min(crate::language::MAX_LEVEL), rule)?;
        let finder = memchr::memmem::Finder::new(&wn);
        let len = 2 * w_len(n) + 1;
        let fs = factors(&big, len);
        words += fs.len();
        if let Some(u) = fs.into_iter().find(|u| finder.find(u).is_none()) {
            failure = Some(format!("n={n}: {} lacks w_{n}", String::from_utf8_lossy(u)));
            break;
        }
    }
    Ok(Check::new(
        "minimality bound",
        failure,
        format!("{words} words, n <= {max_n}"),
    ))
}

/// Windows of `w_m` with the origin at every admissible position and the
/// given radii.
pub fn windows_of_w(m: u32, radii: &[usize]) -> Result<Vec<Window>> {
    let w = crate::language::build_w(m)?;
    let letters = w.letters();
    let mut out = Vec::new();
    for &r in radii {
        for origin in r..=letters.len().saturating_sub(r) {
            out.push(Window::new(letters[origin - r..origin + r].to_vec(), r)?);
        }
    }
    Ok(out)
}

/// On windows cut from `w_m` at absolute origin `o`, `ψ_k` must equal the
/// value read off the position, `φ_{k+1}(o mod 2^{k+1})` truncated, whenever
/// it is determined; it must be determined once the radius is `2^{k+2}`;
/// the values form a tower and are invariant under reversal.
pub fn psi_windows(m: u32, radii: &[usize]) -> Result<Check> {
    let w = crate::language::build_w(m)?;
    let mut failure = None;
    let mut count = 0usize;
    let mut evaluated = 0usize;
    'outer: for &r in radii {
        for origin in r..=w.len().saturating_sub(r) {
            let x = Window::new(w.letters()[origin - r..origin + r].to_vec(), r)?;
            let xr = x.reversed();
            count += 1;
            let mut prev: Option<crate::tree::BitString> = None;
            for k in 1..m {
                let got = psi(k, &x);
                let got_r = psi(k, &xr);
                let value = match (got, got_r) {
                    (Ok(v), Ok(vr)) if v == vr => v,
                    (Err(Error::MarginExhausted(_)), Err(Error::MarginExhausted(_)))
                        if r < 1 << (k + 2) =>
                    {
                        break;
                    }
                    (a, b) => {
                        failure = Some(format!("origin {origin} radius {r} k={k}: {a:?} vs {b:?}"));
                        break 'outer;
                    }
                };
                evaluated += 1;
                let expect = phi_at(k + 1, origin % (1 << (k + 1))).prefix(k);
                if value != expect {
                    failure = Some(format!(
                        "origin {origin} radius {r} k={k}: {value} != {expect}"
                    ));
                    break 'outer;
                }
                if let Some(p) = prev {
                    if !p.is_prefix_of(&value) {
                        failure =
                            Some(format!("origin {origin} radius {r}: tower breaks at k={k}"));
                        break 'outer;
                    }
                }
                prev = Some(value);
            }
        }
    }
    Ok(Check::new(
        "psi tower and reversal",
        failure,
        format!("{count} windows of w_{m}, {evaluated} psi values"),
    ))
}

/// The six windows `w_m α w_m` and reversals agree on `ψ_k`, `k ≤ m − 2`.
pub fn fiber_agreement(max_m: u32) -> Result<Check> {
    let mut failure = None;
    'outer: for m in 3..=max_m {
        let ws = six_fiber_witnesses(m)?;
        for k in 1..=m - 2 {
            let first = psi(k, &ws[0])?;
            for x in &ws[1..] {
                if psi(k, x)? != first {
                    failure = Some(format!("m={m} k={k} at {x}"));
                    break 'outer;
                }
            }
        }
    }
    Ok(Check::new(
        "six-fiber witnesses",
        failure,
        format!("m <= {max_m}"),
    ))
}

/// The shift cocycle moves the origin by exactly one on every starring of
/// `w_n`, embedded as the second copy inside `w_{n+2}`.
pub fn shift_on_starrings(n: u32) -> Result<Check> {
    let big = crate::language::build_w(n + 2)?;
    let offset = 1usize << n;
    let mut failure = None;
    for j in 0..1usize << n {
        let x = Window::new(big.letters().to_vec(), offset + j)?;
        match shift_as_tfg(&x) {
            Ok(y) if y.origin() == x.origin() + 1 => {}
            other => {
                failure = Some(format!("starring {j}: {other:?}"));
                break;
            }
        }
    }
    Ok(Check::new(
        "shift as full-group element",
        failure,
        format!("{} starrings of w_{n}", 1usize << n),
    ))
}

/// Window moves agree with the jump action on interior starrings of `w_n`.
pub fn window_jump_agreement(n: u32) -> Result<Check> {
    let w = crate::language::build_w(n)?;
    let mut failure = None;
    'outer: for j in 1..w.len() {
        let x = Window::new(w.letters().to_vec(), j)?;
        for g in Generator::ALL {
            let y = apply_generator(g, &x)?;
            if y.origin() != jump_linear(w.letters(), j, g) {
                failure = Some(format!("j={j} g={g}"));
                break 'outer;
            }
        }
    }
    Ok(Check::new(
        "window moves vs jumps",
        failure,
        format!("interior starrings of w_{n}"),
    ))
}

/// No window of `w_m` is its own reversal, and the reversal key is
/// idempotent and reversal invariant.
pub fn reversal_freeness(m: u32) -> Result<Check> {
    let mut failure = None;
    let windows = windows_of_w(m, &[1, 2, 3, 8])?;
    for x in &windows {
        let k = vorobets_key(x);
        if x.reversed().same_point(x) || vorobets_key(&x.reversed()) != k || vorobets_key(&k) != k {
            failure = Some(format!("{x}"));
            break;
        }
    }
    Ok(Check::new(
        "reversal freeness",
        failure,
        format!("{} windows of w_{m}", windows.len()),
    ))
}

/// The checks run by the `verify` command, scaled by `max_n`.
pub fn run_all(max_n: u32, rule: Rule) -> Result<Vec<Check>> {
    let max_n = max_n.max(1);
    crate::error::check_cap("verify max n", max_n as usize, 14)?;
    let small = max_n.min(12);
    let psi_level = max_n.clamp(4, 12);
    let mut checks = vec![
        conjugacy(max_n, rule)?,
        gray_invariants(max_n)?,
        reflection_identity(max_n)?,
        relators_on_starrings(small, rule)?,
        relators_on_tree(small)?,
        language_equivalence(w_len(max_n.min(7)), rule)?,
        minimality_bound(max_n.min(8), rule)?,
    ];
    if max_n >= 2 {
        let radii: Vec<usize> = [4usize, 8, 16, 32, 64]
            .into_iter()
            .filter(|&r| 2 * r < w_len(psi_level))
            .collect();
        checks.push(psi_windows(psi_level, &radii)?);
        checks.push(fiber_agreement(max_n.min(10))?);
        checks.push(shift_on_starrings(small)?);
        checks.push(window_jump_agreement(small)?);
        checks.push(reversal_freeness(small.max(4))?);
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass_at_small_scale() {
        for c in run_all(6, alpha_choice).unwrap() {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn mutation_is_caught() {
        assert!(!conjugacy(4, mutated_alpha_choice).unwrap().passed);
        assert!(run_all(4, mutated_alpha_choice)
            .unwrap()
            .iter()
            .any(|c| !c.passed));
    }
}

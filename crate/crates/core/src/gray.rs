//! The Gray-code conjugacy between starrings of `w_n` and level `n` of the
//! tree, and the factor map from windows onto tree vertices.
//!
//! `φ₁ = (0 ↦ 1, 1 ↦ 0)`. For `j < 2ⁿ`, `φ_{n+1}(j) = φ_n(j)·1`; for
//! `j ≥ 2ⁿ`, `φ_{n+1}(j) = φ_n(F(j))·0` with `F(j) = 2^{n+1} − 1 − j`. The
//! sequence `φ_n(0), …, φ_n(2ⁿ − 1)` is the reflected Gray code with every bit
//! complemented.

use crate::error::{check_cap, Error, Result};
use crate::language::{alpha_choice, build_w, w_len, MAX_LEVEL};
use crate::tree::BitString;
use crate::window::Window;
use crate::words::Letter;

pub const MAX_GRAY_LEVEL: u32 = 20;

/// `φ_n` materialized over all star positions `0..2ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayTable {
    n: u32,
    values: Vec<BitString>,
}

impl GrayTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[BitString] {
        &self.values
    }

    pub fn get(&self, j: usize) -> BitString {
        self.values[j]
    }

    /// Star position mapped to `v`, by linear search.
    pub fn position_of(&self, v: BitString) -> Option<usize> {
        self.values.iter().position(|&x| x == v)
    }
}

pub fn phi(n: u32) -> Result<GrayTable> {
    if n == 0 {
        return Err(Error::Domain("phi_n is defined for n >= 1".into()));
    }
    check_cap("gray level n", n as usize, MAX_GRAY_LEVEL as usize)?;
    let mut values = vec![BitString::ones(1), BitString::new(0, 1).unwrap()];
    for level in 1..n {
        let half = 1usize << level;
        let mut next = Vec::with_capacity(2 * half);
        next.extend(values.iter().map(|v| v.push(true)));
        next.extend((half..2 * half).map(|j| values[2 * half - 1 - j].push(false)));
        values = next;
    }
    Ok(GrayTable { n, values })
}

/// `φ_n(j)` evaluated directly from the recursion, without a table.
pub fn phi_at(n: u32, j: usize) -> BitString {
    assert!(n >= 1 && j < 1 << n);
    // unwind from the top level, recording the appended bits
    let mut tail = Vec::with_capacity(n as usize);
    let mut j = j;
    for level in (1..n).rev() {
        let half = 1usize << level;
        if j < half {
            tail.push(true);
        } else {
            tail.push(false);
            j = 2 * half - 1 - j;
        }
    }
    let mut v = BitString::new(u64::from(j == 0), 1).unwrap();
    for bit in tail.into_iter().rev() {
        v = v.push(bit);
    }
    v
}

/// `F_n(j) = 2ⁿ − 1 − j` on star positions.
pub fn flip(n: u32, j: usize) -> Result<usize> {
    let top = (1usize << n) - 1;
    if j > top {
        return Err(Error::OutOfRange {
            index: j,
            bound: top,
        });
    }
    Ok(top - j)
}

/// Residue mod `2^level` of the start index of the natural `w_level` blocks
/// in the window, determined level by level from the separators.
fn natural_residue(x: &Window, level: u32) -> Result<usize> {
    let letters = x.letters();
    let first_a = letters
        .iter()
        .position(|l| l.is_a())
        .ok_or_else(|| Error::MarginExhausted("window has no letter a".into()))?;
    let mut residue = first_a % 2;
    for k in 1..level {
        let period = 1usize << k;
        let sep = alpha_choice(k);
        let consistent = |r: usize| {
            // internal separators of w_{k+1} blocks starting at r mod 2^{k+1}
            let first = (r + period - 1) % (2 * period);
            letters
                .iter()
                .skip(first)
                .step_by(2 * period)
                .all(|&l| l == sep)
        };
        let candidates: Vec<usize> = [residue, residue + period]
            .into_iter()
            .filter(|&r| consistent(r))
            .collect();
        residue = match candidates.as_slice() {
            [r] => *r,
            [] => {
                return Err(Error::Domain(format!(
                    "no level-{} decomposition of {x}",
                    k + 1
                )))
            }
            _ => {
                return Err(Error::MarginExhausted(format!(
                    "level-{} decomposition of {x} is not determined by the window",
                    k + 1
                )))
            }
        };
    }
    Ok(residue)
}

/// Start indices of the natural `w_n` occurrences lying entirely inside the
/// window. Consecutive offsets differ by `2ⁿ`.
pub fn natural_decomposition(x: &Window, n: u32) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    check_cap("level n", n as usize, MAX_LEVEL as usize)?;
    let residue = natural_residue(x, n)?;
    let block = w_len(n);
    let offsets: Vec<usize> = (residue..)
        .step_by(1 << n)
        .take_while(|&b| b + block <= x.len())
        .collect();
    let w = build_w(n)?;
    if let Some(&bad) = offsets
        .iter()
        .find(|&&b| &x.letters()[b..b + block] != w.letters())
    {
        return Err(Error::Internal(format!(
            "natural block at {bad} of {x} is not w_{n}"
        )));
    }
    Ok(offsets)
}

/// First `k` bits of `φ_{k+1}(−i)`, where the central `w_{k+1}` of the
/// window occupies coordinates `[i, i + 2^{k+1} − 2]` with `i ≤ 0` and
/// `i + 2^{k+1} − 2 ≥ −1`.
pub fn psi(k: u32, x: &Window) -> Result<BitString> {
    if k == 0 {
        return Err(Error::Domain("psi_k is defined for k >= 1".into()));
    }
    check_cap("psi level k", k as usize + 1, MAX_GRAY_LEVEL as usize)?;
    let period = 1usize << (k + 1);
    let residue = natural_residue(x, k + 1)?;
    // −i = distance from the central block start back to the origin
    let back = (x.origin() + period - residue % period) % period;
    Ok(phi_at(k + 1, back).prefix(k))
}

pub const MAX_FIBER_LEVEL: u32 = 16;

/// The windows `w_m α w_m` (`α = B, C, D`) with the origin after the first
/// `w_m`, followed by their three reversals.
pub fn six_fiber_witnesses(m: u32) -> Result<Vec<Window>> {
    check_cap("level m", m as usize, MAX_FIBER_LEVEL as usize)?;
    let w = build_w(m)?;
    let mut out = Vec::with_capacity(6);
    for sep in Letter::SEPARATORS {
        let mut letters = w.letters().to_vec();
        letters.push(sep);
        letters.extend_from_slice(w.letters());
        out.push(Window::new(letters, w.len())?);
    }
    let reversed: Vec<Window> = out.iter().map(Window::reversed).collect();
    out.extend(reversed);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_letters;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn small_tables() {
        let p1 = phi(1).unwrap();
        assert_eq!(p1.values(), &[bs("1"), bs("0")]);
        let p2 = phi(2).unwrap();
        assert_eq!(p2.values(), &[bs("11"), bs("01"), bs("00"), bs("10")]);
        assert_eq!(phi(3).unwrap().get(7), bs("110"));
        assert!(phi(21).is_err());
        assert!(phi(0).is_err());
    }

    #[test]
    fn pointwise_matches_table() {
        for n in 1..=10 {
            let t = phi(n).unwrap();
            for j in 0..1usize << n {
                assert_eq!(phi_at(n, j), t.get(j));
            }
        }
    }

    #[test]
    fn complemented_reflected_gray_code() {
        // independent oracle: the standard Gray code g(j) = j ^ (j >> 1) with bit
        // i of g read as position i of the string, then complemented
        for n in 1..=12u32 {
            let t = phi(n).unwrap();
            for j in 0..1u64 << n {
                let expect = !(j ^ (j >> 1)) & ((1 << n) - 1);
                assert_eq!(t.get(j as usize).raw(), expect, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn flip_examples() {
        assert_eq!(flip(3, 0).unwrap(), 7);
        assert_eq!(flip(3, 7).unwrap(), 0);
        assert_eq!(flip(2, 1).unwrap(), 2);
        assert!(flip(2, 4).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let win = |n| {
            let w = build_w(n).unwrap();
            Window::new(w.letters().to_vec(), 0).unwrap()
        };
        assert_eq!(natural_decomposition(&win(3), 2).unwrap(), vec![0, 4]);
        assert_eq!(natural_decomposition(&win(4), 3).unwrap(), vec![0, 8]);
        assert_eq!(
            natural_decomposition(&win(4), 1).unwrap(),
            (0..=14).step_by(2).collect::<Vec<_>>()
        );
        // the D of aDa may be the separator of a longer block, so level 2 is open
        assert!(matches!(
            natural_decomposition(&win(2), 2),
            Err(Error::MarginExhausted(_))
        ));
        assert_eq!(natural_decomposition(&win(3), 2).unwrap(), vec![0, 4]);
    }

    #[test]
    fn psi_examples() {
        let x = Window::new(parse_letters("aDaCaDa").unwrap(), 3).unwrap();
        assert_eq!(psi(1, &x).unwrap(), bs("1"));
        for m in 3..=8u32 {
            for sep in Letter::SEPARATORS {
                let w = build_w(m).unwrap();
                let mut letters = w.letters().to_vec();
                letters.push(sep);
                letters.extend_from_slice(w.letters());
                let x = Window::new(letters, w.len()).unwrap();
                for k in 1..=m - 2 {
                    assert_eq!(psi(k, &x).unwrap(), BitString::ones(k));
                    assert_eq!(psi(k, &x.reversed()).unwrap(), BitString::ones(k));
                }
            }
        }
    }

    #[test]
    fn fiber_witnesses() {
        let ws = six_fiber_witnesses(4).unwrap();
        assert_eq!(ws.len(), 6);
        for x in &ws {
            assert_eq!(psi(1, x).unwrap(), bs("1"));
        }
        assert!(six_fiber_witnesses(17).is_err());
    }
}

use std::collections::{BTreeSet, HashSet};

use super::ZSft;
use crate::error::{Error, Result};

pub const MAX_SEPARATION_ORDER: usize = 24;

/// The blank symbol of a comb SFT.
pub const BOTTOM: char = '⊥';

fn same_alphabet(x1: &ZSft, x2: &ZSft) -> Result<()> {
    if x1.alphabet() == x2.alphabet() {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            x1.alphabet(),
            x2.alphabet()
        )))
    }
}

/// Whether the allowed words of every length `1..=up_to` agree.
pub fn languages_equal(x1: &ZSft, x2: &ZSft, up_to: usize) -> Result<bool> {
    same_alphabet(x1, x2)?;
    let (f1, f2) = (x1.follower()?, x2.follower()?);
    for len in 1..=up_to {
        if f1.language(len)? != f2.language(len)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The union of two disjoint SFTs as an SFT.
///
/// The window `D = [0, m−1]` is grown from the larger order until the
/// `m`-languages are disjoint. Then `m`-words occurring in neither SFT are
/// forbidden (presented by their shortest factors outside the factor-closed
/// union language), as is every `(m+1)`-word whose `m`-prefix and `m`-suffix
/// come from different SFTs.
pub fn union_sft(x1: &ZSft, x2: &ZSft) -> Result<ZSft> {
    same_alphabet(x1, x2)?;
    let common = x1.intersection(x2)?;
    let cf = common.follower()?;
    if !cf.is_empty() {
        let witness = cf.language(common.order())?.swap_remove(0);
        return Err(Error::NotDisjoint(common.decode(&witness)));
    }
    let (f1, f2) = (x1.follower()?, x2.follower()?);
    let mut m = x1.order().max(x2.order());
    let (l1, l2) = loop {
        if m > MAX_SEPARATION_ORDER {
            return Err(Error::SizeLimit {
                what: "separation order",
                requested: m,
                cap: MAX_SEPARATION_ORDER,
            });
        }
        let l1: HashSet<Vec<u8>> = f1.language(m)?.into_iter().collect();
        let l2: HashSet<Vec<u8>> = f2.language(m)?.into_iter().collect();
        if l1.is_disjoint(&l2) {
            break (l1, l2);
        }
        m += 1;
    };
    let k = x1.alphabet().len() as u8;
    let mut forbidden = BTreeSet::new();
    // factors of union words, by length; a word is forbidden when it leaves
    // them while its prefix one shorter does not
    let union: Vec<&Vec<u8>> = l1.iter().chain(l2.iter()).collect();
    let mut prev: HashSet<&[u8]> = HashSet::from([&[][..]]);
    for len in 1..=m {
        let cur: HashSet<&[u8]> = union.iter().flat_map(|w| w.windows(len)).collect();
        for u in &prev {
            for c in 0..k {
                let mut v = u.to_vec();
                v.push(c);
                if !cur.contains(&v[..]) {
                    forbidden.insert(v);
                }
            }
        }
        prev = cur;
    }
    for (from, to) in [(&l1, &l2), (&l2, &l1)] {
        for u in from {
            for c in 0..k {
                let mut v = u.clone();
                v.push(c);
                if to.contains(&v[1..]) {
                    forbidden.insert(v);
                }
            }
        }
    }
    Ok(ZSft::from_encoded(x1.alphabet().to_vec(), forbidden))
}

/// A Wang tile for the subgroup `kℤ` with generator `s = k`: `right` must
/// equal the `left` color of the tile `k` steps to the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tile {
    pub symbol: char,
    pub left: u32,
    pub right: u32,
}

/// The comb SFT on `ℤ` for `H = kℤ` and coset representatives
/// `R = {0, …, k−1}`: a tile is followed `k` steps later by a color-matching
/// tile, tiles are followed by `k − 1` blanks, and every `k`-window holds a
/// tile.
pub fn comb_sft(tiles: &[Tile], k: usize) -> Result<ZSft> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "comb period k = {k} must be at least 2"
        )));
    }
    if tiles.is_empty() {
        return Err(Error::EmptySubshift("no tiles".into()));
    }
    let mut alphabet = vec![BOTTOM];
    for t in tiles {
        if alphabet.contains(&t.symbol) {
            return Err(Error::Domain(format!("duplicate symbol {:?}", t.symbol)));
        }
        alphabet.push(t.symbol);
    }
    let tile_alphabet: Vec<char> = tiles.iter().map(|t| t.symbol).collect();
    let mismatched: Vec<String> = tiles
        .iter()
        .flat_map(|t| {
            tiles
                .iter()
                .filter(move |u| t.right != u.left)
                .map(move |u| [t.symbol, u.symbol].iter().collect())
        })
        .collect();
    let cover = ZSft::new(tile_alphabet, mismatched)?;
    if cover.is_empty()? {
        return Err(Error::EmptySubshift(
            "the tiles admit no color-matching sequence".into(),
        ));
    }
    let gap = |j: usize| BOTTOM.to_string().repeat(j);
    let mut forbidden = Vec::new();
    for t in tiles {
        for u in tiles {
            for j in 1..k {
                forbidden.push(format!("{}{}{}", t.symbol, gap(j - 1), u.symbol));
            }
            if t.right != u.left {
                forbidden.push(format!("{}{}{}", t.symbol, gap(k - 1), u.symbol));
            }
        }
        forbidden.push(format!("{}{}", t.symbol, gap(k)));
    }
    forbidden.push(gap(k));
    ZSft::new(alphabet, forbidden)
}

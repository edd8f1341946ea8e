//! The jump action of `H = Z₂ * Z₂²` on starred alternating words.
//!
//! Generator `g` moves the star across an adjacent letter from its jump set
//! `S_a = {a}, S_b = {C, D}, S_c = {B, D}, S_d = {B, C}`: rightward if the
//! letter right of the star is in `S_g`, otherwise leftward if the letter left
//! of it is, otherwise the star stays. On alternating words the two cases are
//! exclusive, since one neighbour of the star is `a` and the other is not.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{check_cap, Error, Result};
use crate::group_word::{kappa, relator_ad4, relator_adacac4, Generator, GroupWord};
use crate::language::{alpha_choice, build_w, build_w_with_cap, w_len};
use crate::words::{letters_to_string, AlternatingWord, CircularStarredWord, Letter, StarredWord};

/// Jump sets as letter bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JumpTable {
    masks: [u8; 4],
}

fn letter_bit(l: Letter) -> u8 {
    match l {
        Letter::A => 1,
        Letter::B => 2,
        Letter::C => 4,
        Letter::D => 8,
    }
}

fn gen_index(g: Generator) -> usize {
    match g {
        Generator::A => 0,
        Generator::B => 1,
        Generator::C => 2,
        Generator::D => 3,
    }
}

impl JumpTable {
    pub const STANDARD: JumpTable = JumpTable {
        // a: {a}, b: {C,D}, c: {B,D}, d: {B,C}
        masks: [1, 4 | 8, 2 | 8, 2 | 4],
    };

    #[inline]
    pub fn jumps_over(&self, g: Generator, l: Letter) -> bool {
        self.masks[gen_index(g)] & letter_bit(l) != 0
    }

    pub fn jump_set(&self, g: Generator) -> BTreeSet<Letter> {
        Letter::ALL
            .into_iter()
            .filter(|&l| self.jumps_over(g, l))
            .collect()
    }
}

#[inline]
pub(crate) fn jumps_over(g: Generator, l: Letter) -> bool {
    JumpTable::STANDARD.jumps_over(g, l)
}

/// New star position after `g` acts on the starring of `word` at `star`.
#[inline]
pub fn jump_linear(word: &[Letter], star: usize, g: Generator) -> usize {
    if star < word.len() && jumps_over(g, word[star]) {
        star + 1
    } else if star > 0 && jumps_over(g, word[star - 1]) {
        star - 1
    } else {
        star
    }
}

/// Cyclic version of [`jump_linear`]; positions live modulo `word.len()`.
#[inline]
pub fn jump_cyclic(word: &[Letter], star: usize, g: Generator) -> usize {
    let len = word.len();
    if jumps_over(g, word[star]) {
        (star + 1) % len
    } else if jumps_over(g, word[(star + len - 1) % len]) {
        (star + len - 1) % len
    } else {
        star
    }
}

pub fn jump_generator(g: Generator, s: &StarredWord) -> StarredWord {
    let star = jump_linear(s.word().letters(), s.star(), g);
    s.with_star(star).expect("jump keeps the star in range")
}

/// Right-to-left composition of [`jump_generator`].
pub fn jump_word(w: &GroupWord, s: &StarredWord) -> StarredWord {
    let letters = s.word().letters();
    let star = w
        .generators()
        .iter()
        .rev()
        .fold(s.star(), |pos, &g| jump_linear(letters, pos, g));
    s.with_star(star).expect("jump keeps the star in range")
}

pub fn jump_circular(g: Generator, s: &CircularStarredWord) -> CircularStarredWord {
    s.with_star(jump_cyclic(s.word(), s.star(), g))
}

pub fn jump_word_circular(w: &GroupWord, s: &CircularStarredWord) -> CircularStarredWord {
    let star = w
        .generators()
        .iter()
        .rev()
        .fold(s.star(), |pos, &g| jump_cyclic(s.word(), pos, g));
    s.with_star(star)
}

/// A finite set of starrings of one word, indexed by star position, on which
/// the generators act by jumping.
pub trait Starrings {
    fn count(&self) -> usize;
    fn jump_position(&self, g: Generator, pos: usize) -> usize;
    /// Textual form of the starring at `pos`.
    fn label(&self, pos: usize) -> String;
}

impl Starrings for AlternatingWord {
    fn count(&self) -> usize {
        self.len() + 1
    }

    fn jump_position(&self, g: Generator, pos: usize) -> usize {
        jump_linear(self.letters(), pos, g)
    }

    fn label(&self, pos: usize) -> String {
        let (l, r) = self.letters().split_at(pos);
        format!("{}*{}", letters_to_string(l), letters_to_string(r))
    }
}

/// The star of a `CircularStarredWord` is ignored here; every position of its
/// underlying circular word is a starring.
impl Starrings for CircularStarredWord {
    fn count(&self) -> usize {
        self.len()
    }

    fn jump_position(&self, g: Generator, pos: usize) -> usize {
        jump_cyclic(self.word(), pos, g)
    }

    fn label(&self, pos: usize) -> String {
        self.with_star(pos).to_string()
    }
}

/// The four generator permutations of a starring set, as position tables.
pub fn generator_permutations<S: Starrings + ?Sized>(space: &S) -> [Vec<u32>; 4] {
    Generator::ALL.map(|g| {
        (0..space.count())
            .map(|p| space.jump_position(g, p) as u32)
            .collect()
    })
}

fn word_fixes_position(perms: &[Vec<u32>; 4], word: &[Generator], pos: usize) -> bool {
    let mut p = pos as u32;
    for &g in word.iter().rev() {
        p = perms[gen_index(g)][p as usize];
    }
    p as usize == pos
}

/// Whether `r` fixes every starring of `base`.
pub fn relator_fixes_all_starrings<S: Starrings + ?Sized>(r: &GroupWord, base: &S) -> bool {
    let perms = generator_permutations(base);
    let gens = r.generators();
    (0..base.count()).all(|pos| word_fixes_position(&perms, gens, pos))
}

/// `{a², b², c², d², bcd} ∪ {κᵏ((ad)⁴), κᵏ((adacac)⁴) : 0 ≤ k ≤ t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    t: usize,
    relators: Vec<GroupWord>,
}

impl RelationSet {
    pub fn new(t: usize) -> Self {
        let mut relators: Vec<GroupWord> = ["aa", "bb", "cc", "dd", "bcd"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let mut ad = relator_ad4();
        let mut adacac = relator_adacac4();
        for k in 0..=t {
            if k > 0 {
                ad = kappa(&ad);
                adacac = kappa(&adacac);
            }
            relators.push(ad.clone());
            relators.push(adacac.clone());
        }
        Self { t, relators }
    }

    /// An explicit relator list, e.g. a length-filtered subset of `new(t)`.
    pub fn from_relators(t: usize, relators: Vec<GroupWord>) -> Self {
        Self { t, relators }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    /// The first relator that moves some starring of `base`, with a starring it
    /// moves.
    pub fn first_violation<S: Starrings + ?Sized>(&self, base: &S) -> Option<(GroupWord, usize)> {
        let perms = generator_permutations(base);
        for pos in 0..base.count() {
            for r in &self.relators {
                if !word_fixes_position(&perms, r.generators(), pos) {
                    return Some((r.clone(), pos));
                }
            }
        }
        None
    }

    pub fn holds_on<S: Starrings + ?Sized>(&self, base: &S) -> bool {
        self.first_violation(base).is_none()
    }
}

/// The circular word `(w_n α_n)^p` with the star at position 0.
pub fn circular_power(n: u32, p: usize) -> Result<CircularStarredWord> {
    if p == 0 {
        return Err(Error::Domain("circular power p must be at least 1".into()));
    }
    let mut block = build_w(n)?.into_letters();
    block.push(alpha_choice(n));
    CircularStarredWord::new(block.repeat(p), 0)
}

pub const TABLE1_MAX_N: u32 = 8;
pub const TABLE1_MAX_P: usize = 64;
pub const TABLE1_MAX_T: usize = 8;

/// Boolean matrix indexed by `n ∈ [1, n_max]` and `p ∈ [1, p_max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTable {
    pub n_max: u32,
    pub p_max: usize,
    pub t: usize,
    /// `rows[n-1][p-1]`.
    pub rows: Vec<Vec<bool>>,
}

impl RelationTable {
    pub fn get(&self, n: u32, p: usize) -> bool {
        self.rows[n as usize - 1][p - 1]
    }

    /// Whether every row is 1 exactly in the columns `{1, 2, 4, 8}`.
    pub fn matches_power_of_two_pattern(&self) -> bool {
        self.rows.iter().all(|row| {
            row.iter()
                .enumerate()
                .all(|(i, &v)| v == matches!(i + 1, 1 | 2 | 4 | 8))
        })
    }
}

/// Entry `(n, p)` is true iff every relator of `RelationSet(t)` fixes all
/// starrings of the circular word `(w_n α_n)^p`.
pub fn table1(n_max: u32, p_max: usize, t: usize) -> Result<RelationTable> {
    check_cap("n_max", n_max as usize, TABLE1_MAX_N as usize)?;
    check_cap("p_max", p_max, TABLE1_MAX_P)?;
    check_cap("t", t, TABLE1_MAX_T)?;
    let relations = RelationSet::new(t);
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let row = (1..=p_max)
            .map(|p| circular_power(n, p).map(|c| relations.holds_on(&c)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(RelationTable {
        n_max,
        p_max,
        t,
        rows,
    })
}

pub const ORBIT_MAX_LEVEL: u32 = 16;

/// Breadth-first closure of the starring at position 0 under `a, b, c, d`
/// (in that order). Requires `w` to be one of the `w_n`, `n ≤ 16`.
pub fn orbit_of_starrings(w: &AlternatingWord) -> Result<Vec<StarredWord>> {
    let len = w.len();
    let n = (len + 1).trailing_zeros();
    if len == 0 || (len + 1).count_ones() != 1 {
        return Err(Error::Domain(format!(
            "length {len} is not of the form 2^n - 1"
        )));
    }
    check_cap("level n", n as usize, ORBIT_MAX_LEVEL as usize)?;
    if build_w_with_cap(n, ORBIT_MAX_LEVEL)? != *w {
        return Err(Error::Domain(format!("{w} is not w_{n}")));
    }
    debug_assert_eq!(w_len(n), len);
    let order = bfs_positions(w, 0);
    Ok(order
        .into_iter()
        .map(|pos| StarredWord::new(w.clone(), pos).unwrap())
        .collect())
}

/// Breadth-first orbit of a position, generator order `a < b < c < d`.
pub fn bfs_positions<S: Starrings + ?Sized>(space: &S, start: usize) -> Vec<usize> {
    let mut seen = vec![false; space.count()];
    seen[start] = true;
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for g in Generator::ALL {
            let q = space.jump_position(g, p);
            if !seen[q] {
                seen[q] = true;
                order.push(q);
                queue.push_back(q);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_letters;

    fn sw(s: &str) -> StarredWord {
        s.parse().unwrap()
    }

    fn gw(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn jump_table_shape() {
        let t = JumpTable::STANDARD;
        assert_eq!(t.jump_set(Generator::A), BTreeSet::from([Letter::A]));
        assert_eq!(
            t.jump_set(Generator::B),
            BTreeSet::from([Letter::C, Letter::D])
        );
        assert_eq!(
            t.jump_set(Generator::C),
            BTreeSet::from([Letter::B, Letter::D])
        );
        assert_eq!(
            t.jump_set(Generator::D),
            BTreeSet::from([Letter::B, Letter::C])
        );
        for l in Letter::SEPARATORS {
            let count = Generator::KLEIN
                .iter()
                .filter(|&&g| t.jumps_over(g, l))
                .count();
            assert_eq!(count, 2);
            assert!(!t.jumps_over(Generator::A, l));
        }
    }

    #[test]
    fn worked_computation() {
        assert_eq!(
            jump_generator(Generator::A, &sw("aDa*CaDa")),
            sw("aD*aCaDa")
        );
        assert_eq!(
            jump_generator(Generator::B, &sw("aD*aCaDa")),
            sw("a*DaCaDa")
        );
        assert_eq!(
            jump_generator(Generator::D, &sw("*aDaCaDa")),
            sw("*aDaCaDa")
        );
        assert_eq!(jump_word(&gw("dadaba"), &sw("aDa*CaDa")), sw("a*DaCaDa"));
        let s = sw("aD*aCa");
        assert_eq!(jump_word(&GroupWord::identity(), &s), s);
    }

    #[test]
    fn ab_powers_sweep_the_word() {
        for n in 1..=8 {
            let word = "aD".repeat(n);
            let start = sw(&format!("{word}*"));
            let end = sw(&format!("*{word}"));
            assert_eq!(jump_word(&gw("ab").pow(n), &start), end);
            assert_ne!(jump_word(&gw("ab").pow(n), &start), start);
        }
    }

    #[test]
    fn circular_examples() {
        let c = CircularStarredWord::new(parse_letters("aD").unwrap(), 0).unwrap();
        assert_eq!(jump_circular(Generator::A, &c).star(), 1);
        assert_eq!(jump_circular(Generator::B, &c).star(), 1);
        // c jumps over D from either side; on a length-2 circle both land on the other slot
        let c1 = c.with_star(1);
        assert_eq!(jump_circular(Generator::C, &c1).star(), 0);
        assert_eq!(jump_circular(Generator::D, &c1).star(), 1);
        assert_eq!(jump_circular(Generator::D, &c).star(), 0);
    }

    #[test]
    fn relator_examples() {
        let w4 = build_w(4).unwrap();
        assert!(relator_fixes_all_starrings(&gw("aa"), &w4));
        assert!(relator_fixes_all_starrings(&relator_ad4(), &w4));
        let c = circular_power(1, 3).unwrap();
        assert!(!RelationSet::new(6).holds_on(&c));
        assert!(RelationSet::new(6).holds_on(&circular_power(1, 2).unwrap()));
    }

    #[test]
    fn relation_set_contents() {
        let r = RelationSet::new(2);
        assert_eq!(r.relators().len(), 5 + 2 * 3);
        assert_eq!(r.relators()[5], relator_ad4());
        assert_eq!(r.relators()[7], kappa(&relator_ad4()));
    }

    #[test]
    fn small_table_cells() {
        let t = table1(2, 9, 6).unwrap();
        for n in 1..=2 {
            for p in 1..=9 {
                assert_eq!(t.get(n, p), matches!(p, 1 | 2 | 4 | 8), "n={n} p={p}");
            }
        }
        let one = table1(1, 1, 6).unwrap();
        assert_eq!(one.rows, vec![vec![true]]);
        assert!(table1(9, 1, 6).is_err());
        assert!(table1(1, 65, 6).is_err());
        assert!(table1(1, 1, 9).is_err());
    }

    #[test]
    fn orbit_examples() {
        let o1: Vec<String> = orbit_of_starrings(&build_w(1).unwrap())
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(o1, vec!["*a", "a*"]);
        assert_eq!(orbit_of_starrings(&build_w(2).unwrap()).unwrap().len(), 4);
        assert_eq!(orbit_of_starrings(&build_w(3).unwrap()).unwrap().len(), 8);
        assert!(orbit_of_starrings(&"aBa".parse().unwrap()).is_err());
        assert!(orbit_of_starrings(&"aDaD".parse().unwrap()).is_err());
        assert!(orbit_of_starrings(&AlternatingWord::default()).is_err());
    }
}

//! Topological-full-group mechanics on windows, stabilizer reconstruction,
//! the reversal quotient and Schreier graphs.
//!
//! Direction convention: a positive origin move is the star moving right,
//! which is the shift `σ(x)_i = x_{i+1}`. In the star picture the
//! configuration slides one step left under the origin.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::group_word::{Generator, GroupWord};
use crate::jump::{generator_permutations, jump_circular, jump_generator, jumps_over};
use crate::language::build_w;
use crate::words::{CircularStarredWord, Letter, StarredWord};

pub use crate::window::Window;

/// Displacement of the origin when `g` acts at `x` (the cocycle value),
/// read from `x₋₁` and `x₀`.
pub fn cocycle(g: Generator, x: &Window) -> Result<isize> {
    let (left, right) = neighbours(x)?;
    Ok(if jumps_over(g, right) {
        1
    } else if jumps_over(g, left) {
        -1
    } else {
        0
    })
}

fn neighbours(x: &Window) -> Result<(Letter, Letter)> {
    match (x.at(-1), x.at(0)) {
        (Some(l), Some(r)) if x.margin() >= 1 => Ok((l, r)),
        _ => Err(Error::MarginExhausted(format!(
            "{x} has no valid neighbourhood of the origin"
        ))),
    }
}

pub fn apply_generator(g: Generator, x: &Window) -> Result<Window> {
    let delta = cocycle(g, x)?;
    if delta == 0 {
        Ok(x.clone())
    } else {
        x.moved(delta)
    }
}

/// Right-to-left composition of [`apply_generator`].
pub fn apply_word(w: &GroupWord, x: &Window) -> Result<Window> {
    w.generators()
        .iter()
        .rev()
        .try_fold(x.clone(), |y, &g| apply_generator(g, &y))
}

/// One piece of a cocycle partition: the cylinder `[x₀]₀` and the generator
/// applied on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CocyclePiece {
    pub letter: Letter,
    pub generator: Generator,
}

/// The partition realizing the shift: `a` on `[a]₀`, `c` on `[B]₀`, `d` on
/// `[C]₀`, `b` on `[D]₀`.
pub const SHIFT_COCYCLE: [CocyclePiece; 4] = [
    CocyclePiece {
        letter: Letter::A,
        generator: Generator::A,
    },
    CocyclePiece {
        letter: Letter::B,
        generator: Generator::C,
    },
    CocyclePiece {
        letter: Letter::C,
        generator: Generator::D,
    },
    CocyclePiece {
        letter: Letter::D,
        generator: Generator::B,
    },
];

pub fn shift_as_tfg(x: &Window) -> Result<Window> {
    let (_, right) = neighbours(x)?;
    let mut pieces = SHIFT_COCYCLE.iter().filter(|p| p.letter == right);
    let piece = pieces.next().expect("the cylinders cover the alphabet");
    debug_assert!(pieces.next().is_none());
    let y = apply_generator(piece.generator, x)?;
    if y.origin() != x.origin() + 1 {
        return Err(Error::Internal(format!(
            "{} did not shift {x}",
            piece.generator
        )));
    }
    Ok(y)
}

/// Whether `w` fixes the point excerpted by `x`. Fails when the trajectory of
/// the origin spends more than the window's margin.
pub fn window_fixed_by(w: &GroupWord, x: &Window) -> Result<bool> {
    Ok(apply_word(w, x)?.origin() == x.origin())
}

/// Which of `b, c, d` fixes a point tells the non-`a` letter next to its
/// origin.
fn letter_from_stabilizer<F>(oracle: &mut F, h: &GroupWord) -> Result<Letter>
where
    F: FnMut(&GroupWord) -> Result<bool>,
{
    let conj = |g: Generator| {
        h.inverse()
            .concat(&GroupWord::new(vec![g]))
            .concat(h)
            .reduced()
    };
    if oracle(&conj(Generator::A))? {
        return Err(Error::ReconstructionFailure(format!(
            "a fixes the point moved by {h}"
        )));
    }
    let mut found = None;
    for (g, l) in [
        (Generator::B, Letter::B),
        (Generator::C, Letter::C),
        (Generator::D, Letter::D),
    ] {
        if oracle(&conj(g))? {
            if found.is_some() {
                return Err(Error::ReconstructionFailure(format!(
                    "two of b, c, d fix the point moved by {h}"
                )));
            }
            found = Some(l);
        }
    }
    found.ok_or_else(|| {
        Error::ReconstructionFailure(format!("none of b, c, d fixes the point moved by {h}"))
    })
}

fn jumper(l: Letter) -> Generator {
    match l {
        Letter::B => Generator::C,
        Letter::C => Generator::D,
        Letter::D => Generator::B,
        Letter::A => Generator::A,
    }
}

fn prepend(gens: &[Generator], h: &GroupWord) -> GroupWord {
    GroupWord::new(gens.to_vec()).concat(h)
}

/// Recovers `x_{[-⌊budget/2⌋, budget-⌊budget/2⌋-1]}` of a hidden point `x`
/// or of its reversal, from stabilizer membership queries alone.
///
/// The letters are reported in the frame where `x₋₁ = a`. The oracle answers
/// whether a group word fixes the hidden point.
pub fn reconstruct_from_stabilizer<F>(mut oracle: F, budget: usize) -> Result<Vec<Letter>>
where
    F: FnMut(&GroupWord) -> Result<bool>,
{
    if budget == 0 {
        return Ok(Vec::new());
    }
    let lo = -((budget / 2) as isize);
    let hi = lo + budget as isize - 1;
    let mut letters: BTreeMap<isize, Letter> = BTreeMap::new();
    // at cut 2k the origin has x_{2k-1} = a on its left and x_{2k} on its right
    let mut h = GroupWord::identity();
    let x0 = letter_from_stabilizer(&mut oracle, &h)?;
    letters.insert(0, x0);
    let mut last = x0;
    let mut k = 0isize;
    while 2 * k + 1 <= hi {
        letters.insert(2 * k + 1, Letter::A);
        h = prepend(&[Generator::A, jumper(last)], &h).reduced();
        k += 1;
        if 2 * k > hi {
            break;
        }
        last = letter_from_stabilizer(&mut oracle, &h)?;
        letters.insert(2 * k, last);
    }
    let mut h = GroupWord::identity();
    let mut k = 0isize;
    while 2 * k - 1 >= lo {
        letters.insert(2 * k - 1, Letter::A);
        // one step left over the a, to the cut with x_{2k-2} on the left
        let half = prepend(&[Generator::A], &h).reduced();
        if 2 * k - 2 < lo {
            break;
        }
        let l = letter_from_stabilizer(&mut oracle, &half)?;
        letters.insert(2 * k - 2, l);
        h = prepend(&[jumper(l)], &half).reduced();
        k -= 1;
    }
    Ok((lo..=hi).map(|i| letters[&i]).collect())
}

/// Canonical representative of `{x, f(x)}` for the reversal `f`.
pub fn vorobets_key(x: &Window) -> Window {
    let r = x.reversed();
    if r < *x {
        r
    } else {
        x.clone()
    }
}

/// A finite set of starrings with the jump action, usable as Schreier-graph
/// vertices.
pub trait SchreierVertex: Clone + Ord + fmt::Display {
    fn jump(&self, g: Generator) -> Self;
}

impl SchreierVertex for StarredWord {
    fn jump(&self, g: Generator) -> Self {
        jump_generator(g, self)
    }
}

impl SchreierVertex for CircularStarredWord {
    fn jump(&self, g: Generator) -> Self {
        jump_circular(g, self)
    }
}

/// Undirected, edge-labeled graph; each generator edge `{s, g·s}` is stored
/// once with `src ≤ dst`, self-loops included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGraph {
    pub vertices: Vec<String>,
    pub marked: usize,
    pub edges: Vec<(usize, Generator, usize)>,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: &'a [String],
    marked: &'a str,
    edges: Vec<(&'a str, char, &'a str)>,
}

impl SchreierGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(s, _, t) in &self.edges {
            adj[s].push(t);
            adj[t].push(s);
        }
        let mut seen = vec![false; self.vertices.len()];
        seen[self.marked] = true;
        let mut queue = VecDeque::from([self.marked]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.vertices.len()
    }

    /// Generators with a self-loop at vertex `v`.
    pub fn loops_at(&self, v: usize) -> BTreeSet<Generator> {
        self.edges
            .iter()
            .filter(|&&(s, _, t)| s == v && t == v)
            .map(|&(_, g, _)| g)
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph schreier {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let extra = if i == self.marked {
                ", peripheries=2"
            } else {
                ""
            };
            writeln!(out, "  {i} [label=\"{v}\"{extra}];").unwrap();
        }
        for &(s, g, t) in &self.edges {
            writeln!(out, "  {s} -- {t} [label=\"{g}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// `{"vertices": [...], "marked": "...", "edges": [[src, label, dst], ...]}`
    /// with vertices given by their starred-word strings.
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            vertices: &self.vertices,
            marked: &self.vertices[self.marked],
            edges: self
                .edges
                .iter()
                .map(|&(s, g, t)| {
                    (
                        self.vertices[s].as_str(),
                        g.as_char(),
                        self.vertices[t].as_str(),
                    )
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes")
    }
}

/// The Schreier graph on `vertices`, with the first vertex marked. The set
/// must be closed under the generators.
pub fn schreier_graph<V: SchreierVertex>(vertices: &[V]) -> Result<SchreierGraph> {
    if vertices.is_empty() {
        return Err(Error::Domain("a Schreier graph needs a vertex".into()));
    }
    let index: BTreeMap<&V, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, v) in vertices.iter().enumerate() {
        for g in Generator::ALL {
            let u = v.jump(g);
            let j = *index.get(&u).ok_or_else(|| Error::NotClosed {
                from: v.to_string(),
                generator: g.as_char(),
                missing: u.to_string(),
            })?;
            edges.insert((i.min(j), g, i.max(j)));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_by_key(|&(s, g, t)| (s, t, g));
    Ok(SchreierGraph {
        vertices: vertices.iter().map(ToString::to_string).collect(),
        marked: 0,
        edges,
    })
}

pub const MAX_SEPARATION_LEVEL: u32 = 10;

/// Shortest stabilizer-separating words for pairs of starrings of `w_n`.
///
/// A word `h⁻¹ g h` with `g` a generator fixing exactly one of `h·j`, `h·k`
/// lies in exactly one of the stabilizers of `j` and `k`. Mirror starrings
/// `j` and `2ⁿ − 1 − j` are exchanged by the reversal of the palindrome `w_n`,
/// which commutes with the action, so their stabilizers coincide.
#[derive(Debug, Clone)]
pub struct StabilizerSeparation {
    n: u32,
    perms: [Vec<u32>; 4],
    dist: Vec<u32>,
    via: Vec<u8>,
}

const UNREACHED: u32 = u32::MAX;

impl StabilizerSeparation {
    pub fn new(n: u32) -> Result<Self> {
        check_cap(
            "separation level n",
            n as usize,
            MAX_SEPARATION_LEVEL as usize,
        )?;
        let w = build_w(n)?;
        let perms = generator_permutations(&w);
        let size = 1usize << n;
        let loops: Vec<u8> = (0..size)
            .map(|p| {
                (0..4)
                    .filter(|&g| perms[g][p] as usize == p)
                    .fold(0u8, |m, g| m | 1 << g)
            })
            .collect();
        // the pair graph is undirected since every generator is an involution,
        // so a forward search from the separated pairs gives distances to them
        let mut dist = vec![UNREACHED; size * size];
        let mut via = vec![u8::MAX; size * size];
        let mut queue = VecDeque::new();
        for p in 0..size {
            for q in 0..size {
                if loops[p] != loops[q] {
                    dist[p * size + q] = 0;
                    queue.push_back((p, q));
                }
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let d = dist[p * size + q];
            for g in 0..4 {
                let (p2, q2) = (perms[g][p] as usize, perms[g][q] as usize);
                let slot = p2 * size + q2;
                if dist[slot] == UNREACHED {
                    dist[slot] = d + 1;
                    via[slot] = g as u8;
                    queue.push_back((p2, q2));
                }
            }
        }
        Ok(Self {
            n,
            perms,
            dist,
            via,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn size(&self) -> usize {
        1 << self.n
    }

    pub fn is_mirror_pair(&self, j: usize, k: usize) -> bool {
        j + k == self.size() - 1
    }

    /// A shortest word fixing exactly one of the starrings `j`, `k`, if any.
    pub fn separating_word(&self, j: usize, k: usize) -> Option<GroupWord> {
        let size = self.size();
        assert!(j < size && k < size);
        if self.dist[j * size + k] == UNREACHED {
            return None;
        }
        // h is read off by following the search tree back to a separated pair
        let mut steps = Vec::new();
        let (mut p, mut q) = (j, k);
        while self.dist[p * size + q] > 0 {
            let g = self.via[p * size + q] as usize;
            steps.push(Generator::ALL[g]);
            p = self.perms[g][p] as usize;
            q = self.perms[g][q] as usize;
        }
        let g = (0..4)
            .find(|&g| (self.perms[g][p] as usize == p) != (self.perms[g][q] as usize == q))
            .expect("separated pair");
        // steps act in order, so h = s_m ⋯ s_1
        let h = GroupWord::new(steps.iter().rev().copied().collect());
        Some(
            h.inverse()
                .concat(&GroupWord::new(vec![Generator::ALL[g]]))
                .concat(&h),
        )
    }

    /// Length of a shortest separating word, if any.
    pub fn separation_length(&self, j: usize, k: usize) -> Option<usize> {
        let d = self.dist[j * self.size() + k];
        (d != UNREACHED).then_some(2 * d as usize + 1)
    }

    /// Unordered pairs `j < k` with no separating word.
    pub fn inseparable_pairs(&self) -> Vec<(usize, usize)> {
        let size = self.size();
        (0..size)
            .flat_map(|j| (j + 1..size).map(move |k| (j, k)))
            .filter(|&(j, k)| self.dist[j * size + k] == UNREACHED)
            .collect()
    }

    /// Longest shortest separating word over all separable pairs.
    pub fn max_separation_length(&self) -> usize {
        let size = self.size();
        (0..size)
            .flat_map(|j| (j + 1..size).map(move |k| (j, k)))
            .filter_map(|(j, k)| self.separation_length(j, k))
            .max()
            .unwrap_or(0)
    }
}

/// A window oracle for [`reconstruct_from_stabilizer`], with a query cache.
pub fn window_oracle(x: &Window) -> impl FnMut(&GroupWord) -> Result<bool> + '_ {
    let mut cache: HashMap<GroupWord, bool> = HashMap::new();
    move |w: &GroupWord| {
        if let Some(&v) = cache.get(w) {
            return Ok(v);
        }
        let v = window_fixed_by(w, x)?;
        cache.insert(w.clone(), v);
        Ok(v)
    }
}

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{least_rotation, ZSft, MAX_WORDS};
use crate::error::{Error, Result};

/// Forbidden words stored reversed, so that a forbidden suffix of a word is
/// found by reading the word backwards.
struct SuffixTrie {
    k: usize,
    children: Vec<u32>,
    terminal: Vec<bool>,
}

const NONE: u32 = u32::MAX;

impl SuffixTrie {
    fn new(k: usize, words: &BTreeSet<Vec<u8>>) -> Self {
        let mut t = Self {
            k,
            children: vec![NONE; k],
            terminal: vec![false],
        };
        for w in words {
            let mut node = 0usize;
            for &c in w.iter().rev() {
                let slot = node * k + c as usize;
                if t.children[slot] == NONE {
                    t.children[slot] = t.terminal.len() as u32;
                    t.terminal.push(false);
                    t.children.extend(std::iter::repeat_n(NONE, k));
                }
                node = t.children[slot] as usize;
            }
            t.terminal[node] = true;
        }
        t
    }

    fn has_forbidden_suffix(&self, word: &[u8]) -> bool {
        let mut node = 0usize;
        for &c in word.iter().rev() {
            let next = self.children[node * self.k + c as usize];
            if next == NONE {
                return false;
            }
            node = next as usize;
            if self.terminal[node] {
                return true;
            }
        }
        false
    }
}

/// The follower automaton of a [`ZSft`]: states are the allowed words of
/// length `order − 1`, edges the allowed words of length `order`. Live states
/// are those on a bi-infinite path.
#[derive(Debug, Clone)]
pub struct Follower {
    m: usize,
    states: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
    succ: Vec<Vec<(u8, u32)>>,
    live: Vec<bool>,
}

impl Follower {
    pub(crate) fn build(sft: &ZSft) -> Result<Self> {
        let k = sft.alphabet().len();
        let m = sft.order() - 1;
        let trie = SuffixTrie::new(k, sft.forbidden_encoded());
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..m {
            let mut next = Vec::new();
            for w in &words {
                for c in 0..k as u8 {
                    let mut v = w.clone();
                    v.push(c);
                    if !trie.has_forbidden_suffix(&v) {
                        next.push(v);
                    }
                }
                if next.len() > MAX_WORDS {
                    return Err(Error::SizeLimit {
                        what: "follower automaton states",
                        requested: next.len(),
                        cap: MAX_WORDS,
                    });
                }
            }
            words = next;
        }
        let index: HashMap<Vec<u8>, u32> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let mut succ = vec![Vec::new(); words.len()];
        let mut buf = Vec::with_capacity(m + 1);
        for (i, w) in words.iter().enumerate() {
            for c in 0..k as u8 {
                buf.clear();
                buf.extend_from_slice(w);
                buf.push(c);
                if !trie.has_forbidden_suffix(&buf) {
                    let target = index[&buf[1..]];
                    succ[i].push((c, target));
                }
            }
        }
        let live = trim(&succ);
        Ok(Self {
            m,
            states: words,
            index,
            succ,
            live,
        })
    }

    /// State length, `order − 1`.
    pub fn state_len(&self) -> usize {
        self.m
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn live_state_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    pub fn is_empty(&self) -> bool {
        self.live_state_count() == 0
    }

    /// Whether `word` labels a path. Words shorter than a state are accepted
    /// when they extend to a state.
    pub fn accepts(&self, word: &[u8]) -> bool {
        if word.len() < self.m {
            return self.states.iter().any(|s| s.starts_with(word));
        }
        let Some(&start) = self.index.get(&word[..self.m]) else {
            return false;
        };
        let mut state = start as usize;
        for &c in &word[self.m..] {
            match self.succ[state].iter().find(|&&(d, _)| d == c) {
                Some(&(_, t)) => state = t as usize,
                None => return false,
            }
        }
        true
    }

    fn live_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|&i| self.live[i])
    }

    /// Words of length `len` occurring in some point, sorted.
    pub fn language(&self, len: usize) -> Result<Vec<Vec<u8>>> {
        let mut out = BTreeSet::new();
        if len <= self.m {
            for i in self.live_states() {
                out.insert(self.states[i][..len].to_vec());
            }
            return Ok(out.into_iter().collect());
        }
        for i in self.live_states() {
            let mut word = self.states[i].clone();
            self.extend_paths(i, len - self.m, &mut word, &mut |w| {
                out.insert(w.to_vec());
                out.len() <= MAX_WORDS
            });
            if out.len() > MAX_WORDS {
                return Err(Error::SizeLimit {
                    what: "language words",
                    requested: out.len(),
                    cap: MAX_WORDS,
                });
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Depth-first walk over live edges; `visit` sees the full word at depth
    /// `steps` and returns false to stop.
    fn extend_paths(
        &self,
        state: usize,
        steps: usize,
        word: &mut Vec<u8>,
        visit: &mut dyn FnMut(&[u8]) -> bool,
    ) -> bool {
        if steps == 0 {
            return visit(word);
        }
        for &(c, t) in &self.succ[state] {
            let t = t as usize;
            if !self.live[t] {
                continue;
            }
            word.push(c);
            let go_on = self.extend_paths(t, steps - 1, word, visit);
            word.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Whether some point has period `p`, i.e. a closed walk of length `p`
    /// exists, without enumerating the walks.
    pub fn has_periodic(&self, p: usize) -> bool {
        let n = self.states.len();
        let mut cur = vec![false; n];
        let mut next = vec![false; n];
        self.live_states().any(|start| {
            cur.iter_mut().for_each(|b| *b = false);
            cur[start] = true;
            for _ in 0..p {
                next.iter_mut().for_each(|b| *b = false);
                for (i, _) in cur.iter().enumerate().filter(|(_, &b)| b) {
                    for &(_, t) in &self.succ[i] {
                        next[t as usize] = true;
                    }
                }
                std::mem::swap(&mut cur, &mut next);
            }
            cur[start]
        })
    }

    /// Cyclic words `c` of length `p` such that `c^ℤ` is a point, as least
    /// rotations in sorted order.
    pub fn periodic(&self, p: usize) -> Result<Vec<Vec<u8>>> {
        let mut found = BTreeSet::new();
        let mut visited = 0usize;
        let m = self.m;
        for start in self.live_states() {
            // a closed walk ends in the state it started from
            let mut word = self.states[start].clone();
            let complete = self.extend_paths(start, p, &mut word, &mut |w| {
                visited += 1;
                if w[p..] == w[..m] {
                    found.insert(least_rotation(&w[m..]));
                }
                visited <= 64 * MAX_WORDS
            });
            if !complete {
                return Err(Error::SizeLimit {
                    what: "periodic-point search paths",
                    requested: visited,
                    cap: 64 * MAX_WORDS,
                });
            }
        }
        Ok(found.into_iter().collect())
    }
}

/// States lying on a bi-infinite path: repeatedly drop states without a live
/// successor or a live predecessor.
fn trim(succ: &[Vec<(u8, u32)>]) -> Vec<bool> {
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    let mut outdeg = vec![0usize; n];
    let mut indeg = vec![0usize; n];
    for (i, edges) in succ.iter().enumerate() {
        for &(_, t) in edges {
            pred[t as usize].push(i);
            outdeg[i] += 1;
            indeg[t as usize] += 1;
        }
    }
    let mut live = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&i| outdeg[i] == 0 || indeg[i] == 0)
        .collect();
    while let Some(v) = queue.pop_front() {
        if !live[v] {
            continue;
        }
        live[v] = false;
        for &(_, t) in &succ[v] {
            let t = t as usize;
            indeg[t] -= 1;
            if live[t] && indeg[t] == 0 {
                queue.push_back(t);
            }
        }
        for &u in &pred[v] {
            outdeg[u] -= 1;
            if live[u] && outdeg[u] == 0 {
                queue.push_back(u);
            }
        }
    }
    live
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean() {
        let x = ZSft::new("01".chars(), ["11"]).unwrap();
        let f = x.follower().unwrap();
        assert_eq!(f.state_count(), 2);
        assert_eq!(
            x.language_words(3).unwrap(),
            vec!["000", "001", "010", "100", "101"]
        );
        let per: Vec<String> = f.periodic(2).unwrap().iter().map(|w| x.decode(w)).collect();
        assert_eq!(per, vec!["00", "01"]);
        assert!(f.has_periodic(1) && f.has_periodic(2));
        assert!(f.accepts(&[0, 1, 0, 0, 1]));
        assert!(!f.accepts(&[0, 1, 1]));
    }

    #[test]
    fn trimming() {
        // 1 may only be followed by 1 and preceded by 0: no point contains 1
        let x = ZSft::new("01".chars(), ["10", "11"]).unwrap();
        assert_eq!(x.language_words(2).unwrap(), vec!["00"]);
        let empty = ZSft::new("01".chars(), ["0", "1"]).unwrap();
        assert!(empty.is_empty().unwrap());
        assert!(empty.language_words(1).unwrap().is_empty());
        assert!(x.follower().unwrap().has_periodic(1));
        assert!(!empty.follower().unwrap().has_periodic(1));
    }
}

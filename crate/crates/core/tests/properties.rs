use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grigorchuk_core::full_group::{
    reconstruct_from_stabilizer, window_oracle, StabilizerSeparation,
};
use grigorchuk_core::jump::{jump_generator, jump_word};
use grigorchuk_core::sft::{
    comb_sft, periodic_points, sft_approximations, union_sft, Tile, ZSft, BOTTOM,
};
use grigorchuk_core::tree::act_generator;
use grigorchuk_core::{build_w, BitString, Generator, StarredWord, Window};

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

fn bit_string(max: u32) -> impl Strategy<Value = BitString> {
    (0..=max).prop_flat_map(|len| {
        let top = if len == 0 { 0 } else { (1u64 << len) - 1 };
        (0..=top).prop_map(move |bits| BitString::new(bits, len).unwrap())
    })
}

/// Random SFT over `k` symbols with forbidden words of length 1 to 3.
fn small_sft(k: usize) -> impl Strategy<Value = ZSft> {
    let word = prop::collection::vec(0..k, 1..=3);
    prop::collection::vec(word, 0..6).prop_map(move |ws| {
        let alphabet: Vec<char> = "012".chars().take(k).collect();
        let strs: Vec<String> = ws
            .iter()
            .map(|w| w.iter().map(|&i| alphabet[i]).collect())
            .collect();
        ZSft::new(alphabet.clone(), strs).unwrap()
    })
}

fn all_words(k: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k as u8).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// Brute force: `w` occurs in a point iff it extends by `pad` symbols on each
/// side without a forbidden factor, with `pad` above the number of
/// (order−1)-words so that both extensions must revisit a state.
fn brute_language(x: &ZSft, len: usize) -> BTreeSet<String> {
    let k = x.alphabet().len();
    let m = x.order() - 1;
    let pad = k.pow(m as u32) + 1;
    let allowed = |w: &[u8]| x.avoids_forbidden(w);
    fn extends(
        allowed: &dyn Fn(&[u8]) -> bool,
        k: usize,
        w: &mut Vec<u8>,
        left: usize,
        right: usize,
    ) -> bool {
        if !allowed(w) {
            return false;
        }
        if left == 0 && right == 0 {
            return true;
        }
        for c in 0..k as u8 {
            if right > 0 {
                w.push(c);
                let ok = extends(allowed, k, w, left, right - 1);
                w.pop();
                if ok {
                    return true;
                }
            } else {
                w.insert(0, c);
                let ok = extends(allowed, k, w, left - 1, 0);
                w.remove(0);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    if len < m {
        return brute_language(x, m)
            .into_iter()
            .map(|w| w.chars().take(len).collect())
            .collect();
    }
    let mut out = BTreeSet::new();
    for w in all_words(k, len) {
        let mut v = w.clone();
        // at length order−1 or more the two sides constrain each other only
        // through w itself
        let right_ok = extends(&allowed, k, &mut v.clone(), 0, pad);
        let left_ok = extends(&allowed, k, &mut v, pad, 0);
        if right_ok && left_ok {
            out.insert(x.decode(&w));
        }
    }
    out
}

fn follower_language(x: &ZSft, len: usize) -> BTreeSet<String> {
    x.language_words(len).unwrap().into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tree_generators_are_involutions(g in generator(), v in bit_string(20)) {
        prop_assert_eq!(act_generator(g, act_generator(g, v)), v);
    }

    #[test]
    fn tree_action_preserves_prefixes(g in generator(), v in bit_string(20), k in 0u32..=20) {
        let k = k.min(v.len());
        prop_assert_eq!(act_generator(g, v).prefix(k), act_generator(g, v.prefix(k)));
    }

    #[test]
    fn jumps_are_involutions(n in 1u32..=10, star in 0usize..1024, g in generator()) {
        let w = build_w(n).unwrap();
        let s = StarredWord::new(w.clone(), star % (w.len() + 1)).unwrap();
        prop_assert_eq!(jump_generator(g, &jump_generator(g, &s)), s);
    }

    #[test]
    fn follower_matches_naive_scan(x in small_sft(2), seed in any::<u64>()) {
        let f = x.follower().unwrap();
        let order = x.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for len in order.saturating_sub(1).max(1)..=2 * order {
            for _ in 0..16 {
                let w: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
                prop_assert_eq!(f.accepts(&w), x.avoids_forbidden(&w), "{:?}", w);
            }
        }
    }

    #[test]
    fn follower_language_matches_brute_force(x in small_sft(2)) {
        for len in 1..=2 * x.order() {
            prop_assert_eq!(follower_language(&x, len), brute_language(&x, len), "len {}", len);
        }
    }

    #[test]
    fn json_round_trip(x in small_sft(3)) {
        prop_assert_eq!(ZSft::from_json(&x.to_json()).unwrap(), x);
    }
}

fn disjoint_pair(seed: u64) -> (ZSft, ZSft) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_sft = |rng: &mut ChaCha8Rng| {
        let count = rng.gen_range(1..=5);
        let words: Vec<String> = (0..count)
            .map(|_| {
                let len = rng.gen_range(1..=3);
                (0..len)
                    .map(|_| ['0', '1', '2'][rng.gen_range(0..3)])
                    .collect()
            })
            .collect();
        ZSft::new("012".chars(), words).unwrap()
    };
    loop {
        let (x1, x2) = (random_sft(&mut rng), random_sft(&mut rng));
        if x1.is_empty().unwrap() || x2.is_empty().unwrap() {
            continue;
        }
        if x1.intersection(&x2).unwrap().is_empty().unwrap() {
            return (x1, x2);
        }
    }
}

#[test]
fn union_matches_brute_force_union() {
    for seed in 0..40 {
        let (x1, x2) = disjoint_pair(seed);
        let u = union_sft(&x1, &x2).unwrap();
        for len in 1..=(2 * u.order()).min(8) {
            let mut expect = brute_language(&x1, len);
            expect.extend(brute_language(&x2, len));
            assert_eq!(follower_language(&u, len), expect, "seed {seed} len {len}");
        }
    }
}

/// Tiles lying on a bi-infinite color-matching chain, by repeated removal.
fn live_tiles(tiles: &[Tile]) -> Vec<Tile> {
    let mut live: Vec<Tile> = tiles.to_vec();
    loop {
        let keep: Vec<Tile> = live
            .iter()
            .copied()
            .filter(|t| {
                live.iter().any(|u| u.left == t.right) && live.iter().any(|u| u.right == t.left)
            })
            .collect();
        if keep.len() == live.len() {
            return live;
        }
        live = keep;
    }
}

/// Length-`len` windows of configurations with tiles every `k` steps.
fn comb_language(tiles: &[Tile], k: usize, len: usize) -> BTreeSet<String> {
    let live = live_tiles(tiles);
    let m = len / k + 2;
    let mut chains: Vec<Vec<Tile>> = live.iter().map(|&t| vec![t]).collect();
    for _ in 1..m {
        chains = chains
            .into_iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                live.iter()
                    .filter(move |u| u.left == last.right)
                    .map(move |&u| {
                        let mut d = c.clone();
                        d.push(u);
                        d
                    })
            })
            .collect();
    }
    let mut out = BTreeSet::new();
    for c in chains {
        let s: Vec<char> = c
            .iter()
            .flat_map(|t| std::iter::once(t.symbol).chain(std::iter::repeat_n(BOTTOM, k - 1)))
            .collect();
        for start in 0..=s.len() - len {
            out.insert(s[start..start + len].iter().collect());
        }
    }
    out
}

fn random_tiles(rng: &mut ChaCha8Rng) -> Vec<Tile> {
    let count = rng.gen_range(1..=3);
    ['x', 'y', 'z'][..count]
        .iter()
        .map(|&symbol| Tile {
            symbol,
            left: rng.gen_range(0..2),
            right: rng.gen_range(0..2),
        })
        .collect()
}

#[test]
fn comb_language_and_phase() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 30 {
        let tiles = random_tiles(&mut rng);
        let k = rng.gen_range(2..=3);
        let Ok(z) = comb_sft(&tiles, k) else {
            assert!(live_tiles(&tiles).is_empty());
            continue;
        };
        tested += 1;
        for len in 1..=2 * z.order() {
            assert_eq!(
                follower_language(&z, len),
                comb_language(&tiles, k, len),
                "{tiles:?} k={k} len={len}"
            );
        }
        for p in 1..=4 * k {
            for c in periodic_points(&z, p).unwrap() {
                let residues: HashSet<usize> = c
                    .chars()
                    .enumerate()
                    .filter(|&(_, s)| s != BOTTOM)
                    .map(|(i, _)| i % k)
                    .collect();
                assert_eq!(residues.len(), 1, "{c}");
                assert_eq!(p % k, 0);
            }
        }
    }
}

#[test]
fn approximations_are_nested() {
    let xs = sft_approximations(16).unwrap();
    for len in 1..=8 {
        let langs: Vec<BTreeSet<String>> = xs.iter().map(|x| follower_language(x, len)).collect();
        for pair in langs.windows(2) {
            assert!(pair[1].is_subset(&pair[0]), "len {len}");
        }
    }
    for (i, x) in xs.iter().enumerate() {
        let order = i + 1;
        let words: BTreeSet<String> = grigorchuk_core::language_words(order)
            .unwrap()
            .iter()
            .map(|w| grigorchuk_core::words::letters_to_string(w))
            .collect();
        assert_eq!(follower_language(x, order), words, "order {order}");
    }
}

#[test]
fn periodic_points_shrink_with_order() {
    let xs = sft_approximations(24).unwrap();
    for p in 1..=8 {
        let sets: Vec<BTreeSet<String>> = xs
            .iter()
            .map(|x| periodic_points(x, p).unwrap().into_iter().collect())
            .collect();
        for pair in sets.windows(2) {
            assert!(pair[1].is_subset(&pair[0]), "p {p}");
        }
    }
}

#[test]
fn reconstruction_on_seeded_windows() {
    let w = build_w(14).unwrap();
    let letters = w.letters();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let budget = 2 * rng.gen_range(1..=24);
        let origin = rng.gen_range(budget..=letters.len() - budget);
        let x = Window::new(letters.to_vec(), origin).unwrap();
        let got = reconstruct_from_stabilizer(window_oracle(&x), budget).unwrap();
        let lo = origin - budget / 2;
        let slice = &letters[lo..lo + budget];
        let rev: Vec<_> = slice.iter().rev().copied().collect();
        assert!(
            got == slice || got == rev,
            "origin {origin} budget {budget}"
        );
    }
}

#[test]
fn separation_of_w8_starrings() {
    let sep = StabilizerSeparation::new(8).unwrap();
    let w = build_w(8).unwrap();
    let size = 1usize << 8;
    let mut inseparable = sep.inseparable_pairs();
    inseparable.sort();
    let mirrors: Vec<(usize, usize)> = (0..size / 2).map(|j| (j, size - 1 - j)).collect();
    assert_eq!(inseparable, mirrors);
    assert!(sep.max_separation_length() <= 256);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let j = rng.gen_range(0..size);
        let k = rng.gen_range(0..size);
        if j == k || sep.is_mirror_pair(j, k) {
            continue;
        }
        let g = sep.separating_word(j, k).unwrap();
        let sj = StarredWord::new(w.clone(), j).unwrap();
        let sk = StarredWord::new(w.clone(), k).unwrap();
        assert_ne!(
            jump_word(&g, &sj) == sj,
            jump_word(&g, &sk) == sk,
            "{j} {k} {g}"
        );
    }
}

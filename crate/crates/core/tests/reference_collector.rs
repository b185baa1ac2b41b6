//! A letter-by-letter collector written straight from the definition of
//! collection to the left, used as an oracle for the run-based collector.
//! It derives its own inverse relations and shares nothing with the library
//! beyond the presentation data.

mod common;

use std::collections::HashMap;

use common::{random_group, random_word, GroupShape};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use pcp_core::collector::Collector;
use pcp_core::presentation::GroupPresentation;
use pcp_core::word::Word;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(generator, positive)`.
type Letter = (usize, bool);

fn letters(w: &Word) -> Vec<Letter> {
    let mut out = Vec::new();
    for (g, x) in w.runs() {
        let count = x.magnitude().to_usize().expect("small exponent");
        out.extend(std::iter::repeat((*g, *x > BigInt::from(0))).take(count));
    }
    out
}

fn to_word(ls: &[Letter]) -> Word {
    let mut w = Word::empty();
    for &(g, pos) in ls {
        w.push(g, BigInt::from(if pos { 1 } else { -1 }));
    }
    w
}

fn inverse(ls: &[Letter]) -> Vec<Letter> {
    ls.iter().rev().map(|&(g, s)| (g, !s)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Action {
    Cancel,
    Inverse,
    Power,
    Swap,
}

#[derive(Default)]
struct Reference {
    orders: Vec<Option<usize>>,
    power: HashMap<usize, Vec<Letter>>,
    inverse_power: HashMap<usize, Vec<Letter>>,
    /// Keyed by `(lower, upper, upper positive, lower positive)`.
    swap: HashMap<(usize, usize, bool, bool), Vec<Letter>>,
}

struct GaveUp;

impl Reference {
    fn new(p: &GroupPresentation, limit: usize) -> Result<Self, GaveUp> {
        let n = p.generator_count();
        let mut r = Reference {
            orders: p
                .orders()
                .iter()
                .map(|o| o.value().map(|v| v.to_usize().unwrap()))
                .collect(),
            ..Reference::default()
        };
        for i in 0..n {
            if let Some(t) = p.power_tail(i) {
                r.power.insert(i, letters(&t.to_word()));
            }
            for j in i + 1..n {
                if let Some(t) = p.conjugate_tail(i, j) {
                    r.swap.insert((i, j, true, true), letters(&t.to_word()));
                }
                if let Some(t) = p.conjugate_by_inverse_tail(i, j) {
                    r.swap.insert((i, j, true, false), letters(&t.to_word()));
                }
            }
        }
        for i in (0..n).rev() {
            let mut found = Vec::new();
            if let Some(e) = r.power.get(&i) {
                found.push(((i, i, false, false), r.collect(inverse(e), limit)?));
            }
            for j in i + 1..n {
                if r.orders[j].is_none() {
                    let a = &r.swap[&(i, j, true, true)];
                    found.push(((i, j, false, true), r.collect(inverse(a), limit)?));
                    if r.orders[i].is_none() {
                        let b = &r.swap[&(i, j, true, false)];
                        found.push(((i, j, false, false), r.collect(inverse(b), limit)?));
                    }
                }
            }
            for (key, tail) in found {
                if key.0 == key.1 {
                    r.inverse_power.insert(key.0, tail);
                } else {
                    r.swap.insert(key, tail);
                }
            }
        }
        Ok(r)
    }

    fn swap_exists(&self, lower: usize, upper: usize, upper_pos: bool, lower_pos: bool) -> bool {
        let lower_inf = self.orders[lower].is_none();
        let upper_inf = self.orders[upper].is_none();
        match (upper_pos, lower_pos) {
            (true, true) => true,
            (true, false) => lower_inf,
            (false, true) => upper_inf,
            (false, false) => lower_inf && upper_inf,
        }
    }

    /// Gives up after `limit` primitive steps; a power block divided by
    /// the order counts one step per copy of the relation applied.
    fn collect(&self, mut w: Vec<Letter>, limit: usize) -> Result<Vec<Letter>, GaveUp> {
        let mut steps = 0;
        loop {
            // (lowest generator, start position, rule)
            let mut best: Option<(usize, usize, Action)> = None;
            let mut consider = |c: (usize, usize, Action)| {
                if best.map_or(true, |b| c < b) {
                    best = Some(c);
                }
            };
            for p in 0..w.len() {
                let (g, pos) = w[p];
                if let Some(r) = self.orders[g] {
                    if !pos {
                        consider((g, p, Action::Inverse));
                    } else if p + r <= w.len() && w[p..p + r].iter().all(|&l| l == (g, true)) {
                        consider((g, p, Action::Power));
                    }
                }
                if let Some(&(h, hpos)) = w.get(p + 1) {
                    if h == g && hpos != pos {
                        consider((g, p, Action::Cancel));
                    } else if g > h && self.swap_exists(h, g, pos, hpos) {
                        consider((h, p, Action::Swap));
                    }
                }
            }
            let Some((_, p, action)) = best else {
                return Ok(w);
            };
            let (g, pos) = w[p];
            match action {
                Action::Cancel => {
                    w.drain(p..p + 2);
                }
                Action::Inverse => {
                    let r = self.orders[g].unwrap();
                    let mut rhs = vec![(g, true); r - 1];
                    rhs.extend(&self.inverse_power[&g]);
                    w.splice(p..p + 1, rhs);
                }
                Action::Power => {
                    // The whole block of g letters starting here, divided
                    // with remainder by the order.
                    let r = self.orders[g].unwrap();
                    let block = w[p..].iter().take_while(|&&l| l == (g, true)).count();
                    steps += block / r - 1;
                    let mut rhs = Vec::new();
                    for _ in 0..block / r {
                        rhs.extend(&self.power[&g]);
                    }
                    rhs.extend(std::iter::repeat((g, true)).take(block % r));
                    w.splice(p..p + block, rhs);
                }
                Action::Swap => {
                    let (h, hpos) = w[p + 1];
                    let mut rhs = vec![(h, hpos)];
                    rhs.extend(&self.swap[&(h, g, pos, hpos)]);
                    w.splice(p..p + 2, rhs);
                }
            }
            steps += 1;
            if w.len() > MAX_LETTERS || steps > limit {
                return Err(GaveUp);
            }
        }
    }
}

/// Letter steps; also the cap on word length.
const LIMIT: usize = 2_000;
const MAX_LETTERS: usize = 400;

/// Compares both collectors on a few words and returns how many were
/// compared; `None` if the reference gave up on the presentation.
fn agree(seed: u64, shape: &GroupShape) -> Option<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = random_group(&mut rng, shape);
    let p = GroupPresentation::validate(raw).unwrap();
    let Ok(reference) = Reference::new(&p, LIMIT) else {
        return None;
    };
    let derived = p
        .derive_inverse_relations(LIMIT as u64)
        .unwrap_or_else(|e| panic!("derivation failed where the reference succeeded: {e}"));
    for (&(i, j), t) in &derived.inverse_conjugate {
        assert_eq!(to_word(&reference.swap[&(i, j, false, true)]), t.to_word());
    }
    for (&(i, j), t) in &derived.inverse_conjugate_by_inverse {
        assert_eq!(to_word(&reference.swap[&(i, j, false, false)]), t.to_word());
    }
    for (&i, t) in &derived.inverse_power {
        assert_eq!(to_word(&reference.inverse_power[&i]), t.to_word());
    }
    let p = p.with_derived(derived);
    let collector = Collector::new(&p).unwrap();
    let mut compared = 0;
    for _ in 0..4 {
        let w = random_word(&mut rng, p.generator_count(), 6);
        let Ok(expected) = reference.collect(letters(&w), LIMIT) else {
            continue;
        };
        // Both collectors count primitive steps, so the run collector has
        // to finish whenever the reference did.
        match collector.collect(&w, LIMIT as u64) {
            Ok(nf) => assert_eq!(
                nf.to_word(),
                to_word(&expected),
                "word {w} under seed {seed}"
            ),
            Err(e) => panic!("run collector failed on {w}: {e}"),
        }
        compared += 1;
    }
    Some(compared)
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 1000,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn agrees_on_finite_presentations(seed in any::<u64>()) {
        let shape = GroupShape { max_n: 4, orders: vec![Some(2), Some(3), Some(4)], nilpotent: false };
        agree(seed, &shape);
    }

    #[test]
    fn agrees_on_mixed_presentations(seed in any::<u64>()) {
        let shape = GroupShape { max_n: 4, orders: vec![None, Some(2), Some(3)], nilpotent: false };
        agree(seed, &shape);
    }

    #[test]
    fn agrees_on_nilpotent_presentations(seed in any::<u64>()) {
        let shape = GroupShape { max_n: 4, orders: vec![None, None, Some(2), Some(5)], nilpotent: true };
        agree(seed, &shape);
    }
}

#[test]
fn reference_reproduces_the_fixture_collections() {
    let text = "group 2\ng2*g1 = g1*g2^-1\ng1^2 = g2\n";
    let p = pcp_core::syntax::parse_group_unreduced(text).unwrap();
    let r = Reference::new(&p, LIMIT).ok().unwrap();
    let w = pcp_core::syntax::parse_word("g1^3", 2).unwrap();
    let out = r.collect(letters(&w), LIMIT).ok().unwrap();
    assert_eq!(to_word(&out).to_string(), "g1*g2^-1");
}

#[test]
fn most_random_presentations_are_compared() {
    let shape = GroupShape {
        max_n: 4,
        orders: vec![None, Some(2), Some(3)],
        nilpotent: false,
    };
    let results: Vec<Option<usize>> = (0..200).map(|seed| agree(seed, &shape)).collect();
    let presentations = results.iter().flatten().count();
    let words: usize = results.iter().flatten().sum();
    assert!(
        presentations >= 150,
        "only {presentations} of 200 presentations compared"
    );
    assert!(words >= 450, "only {words} of 800 words compared");
}

//! Random presentations and words for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use pcp_core::presentation::{RawGroupPresentation, RelativeOrder};
use pcp_core::word::Word;
use pcp_core::{GroupPresentation, DEFAULT_BUDGET};
use rand::Rng;

/// A random exponent allowed for a generator of order `r`.
fn exponent<R: Rng>(rng: &mut R, r: &RelativeOrder, spread: i64) -> BigInt {
    match r.value() {
        Some(r) => {
            let r: i64 = r.try_into().expect("small order");
            BigInt::from(rng.gen_range(0..r))
        }
        None => BigInt::from(rng.gen_range(-spread..=spread)),
    }
}

/// Sparse random tail over `g_from..g_n`; roughly half the entries vanish.
fn tail<R: Rng>(rng: &mut R, orders: &[RelativeOrder], from: usize) -> Vec<(usize, BigInt)> {
    (from..orders.len())
        .filter_map(|k| {
            if rng.gen_bool(0.5) {
                return None;
            }
            let x = exponent(rng, &orders[k], 1);
            (x != BigInt::from(0)).then_some((k, x))
        })
        .collect()
}

pub struct GroupShape {
    pub max_n: usize,
    /// Candidate relative orders; `None` stands for infinity.
    pub orders: Vec<Option<u32>>,
    pub nilpotent: bool,
}

pub fn random_group<R: Rng>(rng: &mut R, shape: &GroupShape) -> RawGroupPresentation {
    let n = rng.gen_range(1..=shape.max_n);
    let orders: Vec<RelativeOrder> = (0..n)
        .map(
            |_| match shape.orders[rng.gen_range(0..shape.orders.len())] {
                Some(r) => RelativeOrder::finite(r),
                None => RelativeOrder::Infinite,
            },
        )
        .collect();
    let mut raw = RawGroupPresentation::new(n);
    raw.orders = orders.clone();
    for i in 0..n {
        if orders[i].is_finite() {
            raw.power.insert(i, tail(rng, &orders, i + 1));
        }
        for j in i + 1..n {
            for map in [&mut raw.conjugate, &mut raw.conjugate_by_inverse] {
                let t = if shape.nilpotent {
                    let mut t = vec![(j, BigInt::from(1))];
                    t.extend(tail(rng, &orders, j + 1));
                    t
                } else {
                    tail(rng, &orders, i + 1)
                };
                map.insert((i, j), t);
            }
        }
        if orders[i].is_finite() {
            for j in i + 1..n {
                raw.conjugate_by_inverse.remove(&(i, j));
            }
        }
    }
    raw
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let mut w = Word::empty();
    if n == 0 {
        return w;
    }
    for _ in 0..rng.gen_range(0..=max_len) {
        let x: i64 = rng.gen_range(-3..=3);
        w.push(rng.gen_range(0..n), BigInt::from(x));
    }
    w
}

/// Validates and derives; `None` when derivation runs out of budget.
pub fn build(raw: RawGroupPresentation, budget: u64) -> Option<GroupPresentation> {
    let p = GroupPresentation::validate(raw).expect("generated presentation is valid");
    let derived = p.derive_inverse_relations(budget).ok()?;
    Some(p.with_derived(derived))
}

pub fn default_build(raw: RawGroupPresentation) -> Option<GroupPresentation> {
    build(raw, DEFAULT_BUDGET)
}

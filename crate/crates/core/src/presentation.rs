//! Polycyclic group presentations: the relation data, its validation, the
//! derived inverse relations and weight functions for nilpotent
//! presentations.
//!
//! Generators are indexed from 0 internally; everything user-facing
//! (display, parser, reports) is 1-based.
//!
//! A presentation on `g_1, ..., g_n` with relative orders `r_i` consists of
//!
//! ```text
//! g_i^{r_i}       = g^{e_i}              r_i finite           (power)
//! g_j g_i         = g_i g^{a_{i,j}}      i < j                (conjugate)
//! g_j g_i^{-1}    = g_i^{-1} g^{b_{i,j}} i < j, r_i infinite  (conjugate by inverse)
//! ```
//!
//! where every tail `g^x` is a collected word in `g_{i+1}, ..., g_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::collector::{CollectError, Collector};
use crate::word::{NormalWord, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RelativeOrder {
    Finite(BigInt),
    Infinite,
}

impl RelativeOrder {
    pub fn finite(r: impl Into<BigInt>) -> Self {
        RelativeOrder::Finite(r.into())
    }

    pub fn value(&self) -> Option<&BigInt> {
        match self {
            RelativeOrder::Finite(r) => Some(r),
            RelativeOrder::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RelativeOrder::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    /// Whether `x` is an admissible exponent of a collected word.
    pub fn admits(&self, x: &BigInt) -> bool {
        match self {
            RelativeOrder::Finite(r) => !x.is_negative() && x < r,
            RelativeOrder::Infinite => true,
        }
    }
}

impl fmt::Display for RelativeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeOrder::Finite(r) => write!(f, "{r}"),
            RelativeOrder::Infinite => f.write_str("inf"),
        }
    }
}

/// Right-hand side `g_start^{x_start} ... g_n^{x_n}` of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentTail {
    start: usize,
    exponents: Vec<BigInt>,
}

impl ExponentTail {
    pub fn trivial(start: usize, n: usize) -> Self {
        ExponentTail {
            start,
            exponents: vec![BigInt::zero(); n.saturating_sub(start)],
        }
    }

    /// Takes the entries of `word` from `start` on; entries below `start`
    /// must be zero.
    pub fn from_normal(word: &NormalWord, start: usize) -> Self {
        debug_assert!(word.exponents()[..start.min(word.len())]
            .iter()
            .all(Zero::is_zero));
        ExponentTail {
            start,
            exponents: word.exponents()[start.min(word.len())..].to_vec(),
        }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Exponent of `g_k`; zero below `start`.
    pub fn entry(&self, k: usize) -> BigInt {
        if k < self.start {
            return BigInt::zero();
        }
        self.exponents
            .get(k - self.start)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(off, x)| (self.start + off, x))
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn to_word(&self) -> Word {
        Word::from_runs(self.nonzero().map(|(k, x)| (k, x.clone())))
    }
}

impl fmt::Display for ExponentTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Sparse tail as read from input: `(generator, exponent)` pairs in
/// strictly ascending generator order.
pub type RawTail = Vec<(usize, BigInt)>;

/// Unvalidated presentation data. Relations that are not given default to
/// the trivial power relation and to commuting conjugate relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGroupPresentation {
    pub orders: Vec<RelativeOrder>,
    pub power: BTreeMap<usize, RawTail>,
    /// Keyed by `(i, j)`, `i < j`: `g_j g_i = g_i * tail`.
    pub conjugate: BTreeMap<(usize, usize), RawTail>,
    /// Keyed by `(i, j)`, `i < j`: `g_j g_i^-1 = g_i^-1 * tail`.
    pub conjugate_by_inverse: BTreeMap<(usize, usize), RawTail>,
}

impl RawGroupPresentation {
    /// `n` generators of infinite relative order, all commuting.
    pub fn new(n: usize) -> Self {
        RawGroupPresentation {
            orders: vec![RelativeOrder::Infinite; n],
            ..Default::default()
        }
    }

    pub fn with_order(mut self, gen: usize, order: RelativeOrder) -> Self {
        self.orders[gen] = order;
        self
    }

    pub fn with_power<E: Into<BigInt>>(
        mut self,
        gen: usize,
        tail: impl IntoIterator<Item = (usize, E)>,
    ) -> Self {
        self.power.insert(gen, collect_tail(tail));
        self
    }

    /// `g_upper g_lower = g_lower * tail`.
    pub fn with_conjugate<E: Into<BigInt>>(
        mut self,
        upper: usize,
        lower: usize,
        tail: impl IntoIterator<Item = (usize, E)>,
    ) -> Self {
        self.conjugate.insert((lower, upper), collect_tail(tail));
        self
    }

    /// `g_upper g_lower^-1 = g_lower^-1 * tail`.
    pub fn with_conjugate_by_inverse<E: Into<BigInt>>(
        mut self,
        upper: usize,
        lower: usize,
        tail: impl IntoIterator<Item = (usize, E)>,
    ) -> Self {
        self.conjugate_by_inverse
            .insert((lower, upper), collect_tail(tail));
        self
    }
}

fn collect_tail<E: Into<BigInt>>(tail: impl IntoIterator<Item = (usize, E)>) -> RawTail {
    tail.into_iter().map(|(k, x)| (k, x.into())).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relation {relation}: exponent {value} of g{} is outside 0..{order}", .generator + 1)]
    ExponentOutOfRange {
        relation: String,
        generator: usize,
        value: BigInt,
        order: BigInt,
    },
    #[error("relation {relation}: {detail}")]
    BadIndex { relation: String, detail: String },
    #[error("relation {relation}: {detail}")]
    MissingRelation { relation: String, detail: String },
    #[error("relative order of g{} must be a positive integer or inf, got {value}", .generator + 1)]
    InvalidOrder { generator: usize, value: BigInt },
    #[error("presentation is not in nilpotent form: {0}")]
    NotNilpotentForm(String),
    #[error("weight function did not stabilise within {0} rounds")]
    WeightDivergence(usize),
}

/// The tails of the derived relations
///
/// ```text
/// g_j^{-1} g_i      = g_i g^{c_{i,j}}         r_j infinite
/// g_j^{-1} g_i^{-1} = g_i^{-1} g^{d_{i,j}}    r_i, r_j infinite
/// g_i^{-1}          = g_i^{r_i - 1} g^{f_i}   r_i finite
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivedTables {
    pub inverse_conjugate: BTreeMap<(usize, usize), ExponentTail>,
    pub inverse_conjugate_by_inverse: BTreeMap<(usize, usize), ExponentTail>,
    pub inverse_power: BTreeMap<usize, ExponentTail>,
}

/// A validated polycyclic presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    orders: Vec<RelativeOrder>,
    power: BTreeMap<usize, ExponentTail>,
    conjugate: BTreeMap<(usize, usize), ExponentTail>,
    conjugate_by_inverse: BTreeMap<(usize, usize), ExponentTail>,
    derived: Option<DerivedTables>,
}

impl GroupPresentation {
    /// Checks the relation data and fills in defaulted relations.
    pub fn validate(raw: RawGroupPresentation) -> Result<Self, PresentationError> {
        let n = raw.orders.len();
        for (gen, order) in raw.orders.iter().enumerate() {
            if let RelativeOrder::Finite(r) = order {
                if !r.is_positive() {
                    return Err(PresentationError::InvalidOrder {
                        generator: gen,
                        value: r.clone(),
                    });
                }
            }
        }
        let orders = raw.orders;

        for &i in raw.power.keys() {
            if i >= n {
                return Err(PresentationError::BadIndex {
                    relation: format!("power relation of g{}", i + 1),
                    detail: format!("generator out of range 1..{n}"),
                });
            }
            if orders[i].is_infinite() {
                return Err(PresentationError::MissingRelation {
                    relation: format!("g{}^r", i + 1),
                    detail: format!("power relation given but g{} has infinite order", i + 1),
                });
            }
        }
        for (&(i, j), _) in raw.conjugate.iter().chain(&raw.conjugate_by_inverse) {
            if !(i < j && j < n) {
                return Err(PresentationError::BadIndex {
                    relation: format!("g{}*g{}", j + 1, i + 1),
                    detail: format!("conjugate relations need 1 <= i < j <= {n}"),
                });
            }
        }
        for &(i, j) in raw.conjugate_by_inverse.keys() {
            if orders[i].is_finite() {
                return Err(PresentationError::MissingRelation {
                    relation: format!("g{}*g{}^-1", j + 1, i + 1),
                    detail: format!("g{} has finite relative order", i + 1),
                });
            }
        }

        let mut power = BTreeMap::new();
        for i in 0..n {
            if orders[i].is_finite() {
                let relation = format!("g{}^{}", i + 1, orders[i]);
                let tail = match raw.power.get(&i) {
                    Some(t) => build_tail(&relation, t, i + 1, &orders)?,
                    None => ExponentTail::trivial(i + 1, n),
                };
                power.insert(i, tail);
            }
        }

        let mut conjugate = BTreeMap::new();
        let mut conjugate_by_inverse = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let commuting = commuting_tail(i + 1, j, n);
                let relation = format!("g{}*g{}", j + 1, i + 1);
                let tail = match raw.conjugate.get(&(i, j)) {
                    Some(t) => build_tail(&relation, t, i + 1, &orders)?,
                    None => commuting.clone(),
                };
                conjugate.insert((i, j), tail);
                if orders[i].is_infinite() {
                    let relation = format!("g{}*g{}^-1", j + 1, i + 1);
                    let tail = match raw.conjugate_by_inverse.get(&(i, j)) {
                        Some(t) => build_tail(&relation, t, i + 1, &orders)?,
                        None => commuting,
                    };
                    conjugate_by_inverse.insert((i, j), tail);
                }
            }
        }

        Ok(GroupPresentation {
            orders,
            power,
            conjugate,
            conjugate_by_inverse,
            derived: None,
        })
    }

    /// Validates and derives the inverse relations in one go.
    pub fn build(raw: RawGroupPresentation, budget: u64) -> Result<Self, crate::Error> {
        let p = Self::validate(raw)?;
        let derived = p.derive_inverse_relations(budget)?;
        Ok(p.with_derived(derived))
    }

    pub fn with_derived(mut self, derived: DerivedTables) -> Self {
        self.derived = Some(derived);
        self
    }

    /// Back to raw form, with every relation spelled out.
    pub fn to_raw(&self) -> RawGroupPresentation {
        let sparse =
            |t: &ExponentTail| -> RawTail { t.nonzero().map(|(k, x)| (k, x.clone())).collect() };
        RawGroupPresentation {
            orders: self.orders.clone(),
            power: self.power.iter().map(|(&i, t)| (i, sparse(t))).collect(),
            conjugate: self
                .conjugate
                .iter()
                .map(|(&k, t)| (k, sparse(t)))
                .collect(),
            conjugate_by_inverse: self
                .conjugate_by_inverse
                .iter()
                .map(|(&k, t)| (k, sparse(t)))
                .collect(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[RelativeOrder] {
        &self.orders
    }

    pub fn order(&self, gen: usize) -> &RelativeOrder {
        &self.orders[gen]
    }

    /// Tail `e_i`; present exactly when `r_i` is finite.
    pub fn power_tail(&self, i: usize) -> Option<&ExponentTail> {
        self.power.get(&i)
    }

    /// Tail `a_{i,j}` of `g_j g_i = g_i g^{a_{i,j}}`, `i < j`.
    pub fn conjugate_tail(&self, i: usize, j: usize) -> Option<&ExponentTail> {
        self.conjugate.get(&(i, j))
    }

    /// Tail `b_{i,j}` of `g_j g_i^-1 = g_i^-1 g^{b_{i,j}}`, `i < j`, `r_i`
    /// infinite.
    pub fn conjugate_by_inverse_tail(&self, i: usize, j: usize) -> Option<&ExponentTail> {
        self.conjugate_by_inverse.get(&(i, j))
    }

    pub fn derived(&self) -> Option<&DerivedTables> {
        self.derived.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(RelativeOrder::is_finite)
    }

    /// Computes the derived tails `c`, `d`, `f`.
    ///
    /// Works downwards from `g_n`: the tails at level `i` are collected
    /// inverses of the `i`-level tails, and collecting them only uses
    /// relations among `g_{i+1}, ..., g_n`, which are complete by then. No
    /// consistency is assumed.
    pub fn derive_inverse_relations(&self, budget: u64) -> Result<DerivedTables, CollectError> {
        let n = self.generator_count();
        let mut tables = DerivedTables::default();
        for i in (0..n).rev() {
            let mut level = DerivedTables::default();
            {
                let collector = Collector::with_tables(self, &tables);
                let invert = |tail: &ExponentTail| -> Result<ExponentTail, CollectError> {
                    let nf = collector.collect(&tail.to_word().inverse(), budget)?;
                    Ok(ExponentTail::from_normal(&nf, i + 1))
                };
                if let Some(e) = self.power_tail(i) {
                    level.inverse_power.insert(i, invert(e)?);
                }
                for j in i + 1..n {
                    if self.orders[j].is_infinite() {
                        let a = &self.conjugate[&(i, j)];
                        level.inverse_conjugate.insert((i, j), invert(a)?);
                        if self.orders[i].is_infinite() {
                            let b = &self.conjugate_by_inverse[&(i, j)];
                            level
                                .inverse_conjugate_by_inverse
                                .insert((i, j), invert(b)?);
                        }
                    }
                }
            }
            tables.inverse_power.extend(level.inverse_power);
            tables.inverse_conjugate.extend(level.inverse_conjugate);
            tables
                .inverse_conjugate_by_inverse
                .extend(level.inverse_conjugate_by_inverse);
        }
        Ok(tables)
    }

    /// Whether every conjugate tail has the shape `g_j * (tail in g_{j+1}..)`.
    pub fn is_nilpotent_form(&self) -> bool {
        self.nilpotent_form_violation().is_none()
    }

    fn nilpotent_form_violation(&self) -> Option<String> {
        let leads_with = |t: &ExponentTail, j: usize| {
            (t.start()..j).all(|k| t.entry(k).is_zero()) && t.entry(j).is_one()
        };
        for (&(i, j), t) in &self.conjugate {
            if !leads_with(t, j) {
                return Some(format!(
                    "g{}*g{} = g{}*{} does not lead with g{}",
                    j + 1,
                    i + 1,
                    i + 1,
                    t,
                    j + 1
                ));
            }
        }
        for (&(i, j), t) in &self.conjugate_by_inverse {
            if !leads_with(t, j) {
                return Some(format!(
                    "g{}*g{}^-1 = g{}^-1*{} does not lead with g{}",
                    j + 1,
                    i + 1,
                    i + 1,
                    t,
                    j + 1
                ));
            }
        }
        None
    }

    /// The minimal weight function of a nilpotent presentation.
    pub fn compute_weights(&self) -> Result<WeightAssignment, PresentationError> {
        if let Some(why) = self.nilpotent_form_violation() {
            return Err(PresentationError::NotNilpotentForm(why));
        }
        WeightAssignment::least_solution(self.generator_count(), &self.weight_constraints())
    }

    pub(crate) fn weight_constraints(&self) -> Vec<WeightConstraint> {
        let mut constraints = Vec::new();
        for (&i, e) in &self.power {
            for (k, _) in e.nonzero() {
                constraints.push(WeightConstraint::AtLeast { target: k, of: i });
            }
        }
        // The leading g_j entry of a nilpotent-form tail is forced to 1; only
        // the entries beyond it constrain the weights.
        for (&(i, j), t) in self.conjugate.iter().chain(&self.conjugate_by_inverse) {
            for (k, _) in t.nonzero().filter(|&(k, _)| k > j) {
                constraints.push(WeightConstraint::AtLeastSum {
                    target: k,
                    left: i,
                    right: j,
                });
            }
        }
        constraints
    }
}

fn commuting_tail(start: usize, j: usize, n: usize) -> ExponentTail {
    let mut t = ExponentTail::trivial(start, n);
    t.exponents[j - start] = BigInt::one();
    t
}

fn build_tail(
    relation: &str,
    raw: &RawTail,
    start: usize,
    orders: &[RelativeOrder],
) -> Result<ExponentTail, PresentationError> {
    let n = orders.len();
    let mut tail = ExponentTail::trivial(start, n);
    let mut previous: Option<usize> = None;
    for (k, x) in raw {
        let k = *k;
        if k < start || k >= n {
            return Err(PresentationError::BadIndex {
                relation: relation.to_string(),
                detail: format!(
                    "tail mentions g{}, allowed are g{}..g{}",
                    k + 1,
                    start + 1,
                    n
                ),
            });
        }
        if previous.is_some_and(|p| p >= k) {
            return Err(PresentationError::BadIndex {
                relation: relation.to_string(),
                detail: "tail generators must be strictly ascending".to_string(),
            });
        }
        previous = Some(k);
        if let RelativeOrder::Finite(r) = &orders[k] {
            if x.is_negative() || x >= r {
                return Err(PresentationError::ExponentOutOfRange {
                    relation: relation.to_string(),
                    generator: k,
                    value: x.clone(),
                    order: r.clone(),
                });
            }
        }
        tail.exponents[k - start] = x.clone();
    }
    Ok(tail)
}

/// One inequality of a weight function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum WeightConstraint {
    AtLeast {
        target: usize,
        of: usize,
    },
    AtLeastSum {
        target: usize,
        left: usize,
        right: usize,
    },
}

/// Generator weights `w` and their maximum `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    pub weights: Vec<u64>,
    pub max_weight: u64,
}

impl WeightAssignment {
    pub fn weight(&self, gen: usize) -> u64 {
        self.weights[gen]
    }

    pub(crate) fn least_solution(
        n: usize,
        constraints: &[WeightConstraint],
    ) -> Result<Self, PresentationError> {
        let mut weights = vec![1u64; n];
        // Every constraint points at a strictly higher generator, so n + 1
        // rounds reach the fixpoint.
        let rounds = n + 1;
        let mut stable = false;
        for _ in 0..rounds {
            let mut changed = false;
            for c in constraints {
                let (target, needed) = match *c {
                    WeightConstraint::AtLeast { target, of } => (target, weights[of]),
                    WeightConstraint::AtLeastSum {
                        target,
                        left,
                        right,
                    } => (target, weights[left] + weights[right]),
                };
                if weights[target] < needed {
                    weights[target] = needed;
                    changed = true;
                }
            }
            if !changed {
                stable = true;
                break;
            }
        }
        if !stable {
            return Err(PresentationError::WeightDivergence(rounds));
        }
        let max_weight = weights.iter().copied().max().unwrap_or(0);
        Ok(WeightAssignment {
            weights,
            max_weight,
        })
    }

    #[cfg(test)]
    pub(crate) fn satisfies(&self, constraints: &[WeightConstraint]) -> bool {
        constraints.iter().all(|c| match *c {
            WeightConstraint::AtLeast { target, of } => self.weights[target] >= self.weights[of],
            WeightConstraint::AtLeastSum {
                target,
                left,
                right,
            } => self.weights[target] >= self.weights[left] + self.weights[right],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_fixtures::*;

    fn tail(t: &ExponentTail) -> String {
        t.to_string()
    }

    #[test]
    fn example_13_accepts_negative_tail_exponents_for_infinite_orders() {
        let p = group(EX13);
        assert_eq!(tail(p.conjugate_tail(1, 2).unwrap()), "g3^-1");
        assert_eq!(tail(p.conjugate_tail(0, 2).unwrap()), "g2");
    }

    #[test]
    fn single_generator_with_trivial_power() {
        let raw = RawGroupPresentation::new(1)
            .with_order(0, RelativeOrder::finite(2))
            .with_power(0, Vec::<(usize, i64)>::new());
        let p = GroupPresentation::validate(raw).unwrap();
        assert!(p.power_tail(0).unwrap().is_trivial());
    }

    #[test]
    fn tail_exponent_beyond_relative_order() {
        let raw = RawGroupPresentation::new(2)
            .with_order(0, RelativeOrder::finite(2))
            .with_order(1, RelativeOrder::finite(2))
            .with_power(0, [(1, 3)]);
        assert!(matches!(
            GroupPresentation::validate(raw),
            Err(PresentationError::ExponentOutOfRange { generator: 1, .. })
        ));
    }

    #[test]
    fn tails_must_stay_above_the_relation() {
        let raw = RawGroupPresentation::new(3).with_conjugate(2, 1, [(0, 1)]);
        assert!(matches!(
            GroupPresentation::validate(raw),
            Err(PresentationError::BadIndex { .. })
        ));
    }

    #[test]
    fn derived_tails_of_commuting_generators() {
        let p = GroupPresentation::build(RawGroupPresentation::new(2), 1000).unwrap();
        let d = p.derived().unwrap();
        assert_eq!(tail(&d.inverse_conjugate[&(0, 1)]), "g2^-1");
        assert_eq!(tail(&d.inverse_conjugate_by_inverse[&(0, 1)]), "g2^-1");
    }

    #[test]
    fn derived_tails_of_examples_15_and_16() {
        let p = group(EX16);
        assert_eq!(
            tail(&p.derived().unwrap().inverse_conjugate[&(0, 1)]),
            "g2^-2"
        );
        let p = group(EX15);
        let d = p.derived().unwrap();
        assert!(d.inverse_power[&0].is_trivial());
        assert!(d.inverse_conjugate.contains_key(&(0, 1)));
        assert!(d.inverse_conjugate_by_inverse.is_empty());
    }

    #[test]
    fn nilpotent_form() {
        assert!(group(Z3).is_nilpotent_form());
        assert!(group(HEISENBERG).is_nilpotent_form());
        assert!(!group(EX13).is_nilpotent_form());
        assert!(!group(EX16).is_nilpotent_form());
        assert!(matches!(
            group(EX16).compute_weights(),
            Err(PresentationError::NotNilpotentForm(_))
        ));
    }

    #[test]
    fn weights_of_small_presentations() {
        let w = group(Z3).compute_weights().unwrap();
        assert_eq!((w.weights, w.max_weight), (vec![1, 1, 1], 1));
        let w = group(HEISENBERG).compute_weights().unwrap();
        assert_eq!((w.weights, w.max_weight), (vec![1, 1, 2], 2));
        let p = group("group 2\norder g1 = 2\ng1^2 = g2\n");
        assert_eq!(p.compute_weights().unwrap().weights, vec![1, 1]);
        let p = group("group 3\ng2*g1 = g1*g2*g3\ng3*g1 = g1*g3\n");
        assert_eq!(p.compute_weights().unwrap().weights, vec![1, 1, 2]);
    }

    #[test]
    fn heisenberg_weights_are_minimal() {
        let p = group(HEISENBERG);
        let constraints = p.weight_constraints();
        let w = p.compute_weights().unwrap();
        assert!(w.satisfies(&constraints));
        for a in 1..=2u64 {
            for b in 1..=2 {
                for c in 1..=2 {
                    let candidate = WeightAssignment {
                        weights: vec![a, b, c],
                        max_weight: a.max(b).max(c),
                    };
                    let below = candidate
                        .weights
                        .iter()
                        .zip(&w.weights)
                        .all(|(x, y)| x <= y);
                    if below && candidate.weights != w.weights {
                        assert!(
                            !candidate.satisfies(&constraints),
                            "{:?}",
                            candidate.weights
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn raw_round_trip() {
        for text in [EX13, EX14, EX15, S3, HEISENBERG] {
            let p = group(text);
            let again = GroupPresentation::validate(p.to_raw()).unwrap();
            assert_eq!(again.to_raw(), p.to_raw());
        }
    }
}

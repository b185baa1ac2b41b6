//! Collection to the left.
//!
//! A step rewrites one occurrence of a relation's left-hand side (or a free
//! cancellation pair `g_i g_i^-1`, `g_i^-1 g_i`). Among all occurrences the
//! collector picks the one whose lowest generator index is smallest, then
//! the leftmost one, then by rule: cancellation, inverse, power, swap. The
//! result is the function `c` on the free monoid; words are never treated as
//! group elements along the way.
//!
//! Words are kept run-length encoded. Two kinds of step are batched because
//! the policy provably repeats them back to back: a letter moving left past
//! a whole run of a higher generator, and a block of cancellations at a run
//! boundary. A run `g_i^z` with `z >= r_i` is reduced by division with
//! remainder in one step, `g_i^{q r_i + s} -> (g^{e_i})^q g_i^s`, recorded as
//! `q` applications of the power relation. Inverse steps go one at a time.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::presentation::{DerivedTables, ExponentTail, GroupPresentation, RelativeOrder};
use crate::word::{NormalWord, Word};

mod runs;

use runs::{Run, Runs, Site};

/// Default primitive-step budget for a single collection.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Which relation a collection step applied. Generators are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `g_i g_i^-1 -> 1` or `g_i^-1 g_i -> 1`.
    FreeCancel { gen: usize },
    /// GR1: `g_i^{r_i} -> g^{e_i}`.
    Power { gen: usize },
    /// GR2: `g_j g_i -> g_i g^{a_{i,j}}`.
    Conjugate { lower: usize, upper: usize },
    /// GR3: `g_j g_i^-1 -> g_i^-1 g^{b_{i,j}}`.
    ConjugateByInverse { lower: usize, upper: usize },
    /// GR4: `g_j^-1 g_i -> g_i g^{c_{i,j}}`.
    InverseConjugate { lower: usize, upper: usize },
    /// GR5: `g_j^-1 g_i^-1 -> g_i^-1 g^{d_{i,j}}`.
    InverseConjugateByInverse { lower: usize, upper: usize },
    /// GR6: `g_i^-1 -> g_i^{r_i - 1} g^{f_i}`.
    Inverse { gen: usize },
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::FreeCancel { .. } => "FreeCancel",
            Rule::Power { .. } => "GR1",
            Rule::Conjugate { .. } => "GR2",
            Rule::ConjugateByInverse { .. } => "GR3",
            Rule::InverseConjugate { .. } => "GR4",
            Rule::InverseConjugateByInverse { .. } => "GR5",
            Rule::Inverse { .. } => "GR6",
        }
    }

    /// 0-based generator indices the rule is parameterised by.
    pub fn indices(&self) -> Vec<usize> {
        match *self {
            Rule::FreeCancel { gen } | Rule::Power { gen } | Rule::Inverse { gen } => vec![gen],
            Rule::Conjugate { lower, upper }
            | Rule::ConjugateByInverse { lower, upper }
            | Rule::InverseConjugate { lower, upper }
            | Rule::InverseConjugateByInverse { lower, upper } => vec![lower, upper],
        }
    }
}

/// One trace entry: `rule` applied `count` times. The `t`-th application
/// (from 0) starts at letter offset `position - t`, except for the power
/// relation, where it starts at `position + t * |e_i|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub position: BigInt,
    pub count: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollectionTrace {
    pub steps: Vec<TraceStep>,
}

impl CollectionTrace {
    /// Number of primitive rewriting steps represented.
    pub fn primitive_steps(&self) -> BigInt {
        self.steps.iter().map(|s| &s.count).sum()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CollectError {
    #[error("collection exceeded the budget of {budget} steps")]
    BudgetExceeded {
        budget: u64,
        partial: Box<CollectionTrace>,
    },
    #[error("relation {tag} for generators {indices:?} has not been derived yet")]
    MissingDerivedRelation {
        tag: &'static str,
        indices: Vec<usize>,
    },
    #[error("word mentions g{}, but the presentation has {n} generators", .gen + 1)]
    BadGenerator { gen: usize, n: usize },
    #[error("presentation has no derived relations; derive them before collecting")]
    NotDerived,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("step {step}: {rule} does not match at letter {position}")]
    Mismatch {
        step: usize,
        rule: &'static str,
        position: BigInt,
    },
    #[error("replayed word {replayed} differs from the collected word {collected}")]
    WrongResult { replayed: Word, collected: Word },
    #[error("word or trace too long to replay letter by letter")]
    TooLong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum StepKind {
    Cancel,
    Inverse,
    Power,
    Swap,
}

impl StepKind {
    fn priority(self) -> u8 {
        match self {
            StepKind::Cancel => 0,
            StepKind::Inverse => 1,
            StepKind::Power => 2,
            StepKind::Swap => 3,
        }
    }
}

impl StepKind {
    /// Cancellations and swaps start at the last letter of their run.
    fn at_last(self) -> bool {
        matches!(self, StepKind::Cancel | StepKind::Swap)
    }
}

/// Relation right-hand sides prepared as words for one presentation.
pub struct Collector<'a> {
    pres: &'a GroupPresentation,
    n: usize,
    orders: Vec<Option<BigInt>>,
    power: Vec<Option<Word>>,
    inverse_power: Vec<Option<Word>>,
    conjugate: Vec<Option<Word>>,
    conjugate_by_inverse: Vec<Option<Word>>,
    inverse_conjugate: Vec<Option<Word>>,
    inverse_conjugate_by_inverse: Vec<Option<Word>>,
}

impl<'a> Collector<'a> {
    /// Collector for a presentation whose inverse relations are derived.
    pub fn new(pres: &'a GroupPresentation) -> Result<Self, CollectError> {
        let derived = pres.derived().ok_or(CollectError::NotDerived)?;
        Ok(Self::with_tables(pres, derived))
    }

    /// Collector using the given (possibly partial) derived tables; a step
    /// that needs a missing relation fails with `MissingDerivedRelation`.
    pub fn with_tables(pres: &'a GroupPresentation, derived: &DerivedTables) -> Self {
        let n = pres.generator_count();
        let pair_table = |get: &dyn Fn(usize, usize) -> Option<&'a ExponentTail>| {
            let mut table = vec![None; n * n];
            for i in 0..n {
                for j in i + 1..n {
                    table[i * n + j] = get(i, j).map(ExponentTail::to_word);
                }
            }
            table
        };
        let derived_pairs = |m: &std::collections::BTreeMap<(usize, usize), ExponentTail>| {
            let mut table = vec![None; n * n];
            for (&(i, j), t) in m {
                table[i * n + j] = Some(t.to_word());
            }
            table
        };
        Collector {
            pres,
            n,
            orders: pres.orders().iter().map(|r| r.value().cloned()).collect(),
            power: (0..n)
                .map(|i| pres.power_tail(i).map(ExponentTail::to_word))
                .collect(),
            inverse_power: (0..n)
                .map(|i| derived.inverse_power.get(&i).map(ExponentTail::to_word))
                .collect(),
            conjugate: pair_table(&|i, j| pres.conjugate_tail(i, j)),
            conjugate_by_inverse: pair_table(&|i, j| pres.conjugate_by_inverse_tail(i, j)),
            inverse_conjugate: derived_pairs(&derived.inverse_conjugate),
            inverse_conjugate_by_inverse: derived_pairs(&derived.inverse_conjugate_by_inverse),
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        self.pres
    }

    /// Collects `word` to its reduced form.
    pub fn collect(&self, word: &Word, budget: u64) -> Result<NormalWord, CollectError> {
        self.run(word, budget, None)
    }

    /// Collects `word` and records every step.
    pub fn collect_traced(
        &self,
        word: &Word,
        budget: u64,
    ) -> Result<(NormalWord, CollectionTrace), CollectError> {
        let mut trace = CollectionTrace::default();
        let nf = self.run(word, budget, Some(&mut trace))?;
        Ok((nf, trace))
    }

    /// Whether no collection step applies to `word`.
    pub fn is_reduced(&self, word: &Word) -> bool {
        let runs = word.runs();
        runs.iter().all(|(g, _)| *g < self.n)
            && runs
                .iter()
                .enumerate()
                .all(|(r, run)| self.site(run, runs.get(r + 1)).is_none())
    }

    /// `c(u v)`.
    pub fn multiply(
        &self,
        u: &NormalWord,
        v: &NormalWord,
        budget: u64,
    ) -> Result<NormalWord, CollectError> {
        self.collect(&u.to_word().concat(&v.to_word()), budget)
    }

    /// `c` of the letter-wise inverse of `u`.
    pub fn invert(&self, u: &NormalWord, budget: u64) -> Result<NormalWord, CollectError> {
        self.collect(&u.to_word().inverse(), budget)
    }

    fn run(
        &self,
        word: &Word,
        budget: u64,
        mut trace: Option<&mut CollectionTrace>,
    ) -> Result<NormalWord, CollectError> {
        if let Some(gen) = word.runs().iter().map(|(g, _)| *g).find(|&g| g >= self.n) {
            return Err(CollectError::BadGenerator { gen, n: self.n });
        }
        let site = |run: &Run, next: Option<&Run>| self.site(run, next);
        let mut runs = Runs::new(word.runs(), &site);
        let mut spent: u64 = 0;
        while let Some((r, found)) = runs.first_site() {
            let run = runs.get(r).clone();
            let next = (r + 1 < runs.len()).then(|| runs.get(r + 1).clone());
            let kind = found.kind;
            let position = trace.as_ref().map(|_| {
                let mut before = runs.letters_before(r);
                if kind.at_last() {
                    before += run.1.magnitude();
                    before -= 1u32;
                }
                BigInt::from(before)
            });
            let (rule, count) = self.step_count(kind, &run, next.as_ref());
            spent = spent.saturating_add(count.to_u64().unwrap_or(u64::MAX));
            if spent > budget {
                let partial = trace.map(|t| t.clone()).unwrap_or_default();
                return Err(CollectError::BudgetExceeded {
                    budget,
                    partial: Box::new(partial),
                });
            }
            let replacement = self.apply(kind, &run, next.as_ref())?;
            let end = if kind.at_last() { r + 2 } else { r + 1 };
            runs.splice(r, end, replacement.runs(), &site);
            if let (Some(t), Some(position)) = (trace.as_deref_mut(), position) {
                t.steps.push(TraceStep {
                    rule,
                    position,
                    count,
                });
            }
        }
        let mut exponents = vec![BigInt::zero(); self.n];
        for (g, x) in runs.to_vec() {
            debug_assert!(exponents[g].is_zero(), "reduced word repeats a generator");
            exponents[g] = x;
        }
        Ok(NormalWord::from_exponents(exponents))
    }

    fn order(&self, gen: usize) -> Option<&BigInt> {
        self.orders[gen].as_ref()
    }

    /// The step collection to the left would take first among those whose
    /// left side starts in `run`, given the run to its right.
    fn site(&self, run: &Run, next: Option<&Run>) -> Option<Site<StepKind>> {
        let (g, z) = run;
        let g = *g;
        let mut best: Option<Site<StepKind>> = None;
        let mut consider = |lowest: usize, kind: StepKind| {
            let later_in_run = kind.at_last() && !z.magnitude().is_one();
            let site = Site {
                lowest,
                rank: (later_in_run, kind.priority()),
                kind,
            };
            if best.map_or(true, |b| (site.lowest, site.rank) < (b.lowest, b.rank)) {
                best = Some(site);
            }
        };
        if let Some(order) = self.order(g) {
            if z.is_negative() {
                consider(g, StepKind::Inverse);
            } else if z >= order {
                consider(g, StepKind::Power);
            }
        }
        if let Some((h, y)) = next {
            let h = *h;
            if h == g {
                consider(g, StepKind::Cancel);
            } else if g > h && self.swap_applies(z.is_positive(), h, y.is_positive(), g) {
                consider(h, StepKind::Swap);
            }
        }
        best
    }

    /// Whether `g_upper^{±1} g_lower^{±1}` is the left side of GR2..GR5.
    fn swap_applies(&self, upper_pos: bool, lower: usize, lower_pos: bool, upper: usize) -> bool {
        let lower_inf = self.order(lower).is_none();
        let upper_inf = self.order(upper).is_none();
        match (upper_pos, lower_pos) {
            (true, true) => true,
            (true, false) => lower_inf,
            (false, true) => upper_inf,
            (false, false) => lower_inf && upper_inf,
        }
    }

    fn swap_rule(&self, upper_pos: bool, lower: usize, lower_pos: bool, upper: usize) -> Rule {
        match (upper_pos, lower_pos) {
            (true, true) => Rule::Conjugate { lower, upper },
            (true, false) => Rule::ConjugateByInverse { lower, upper },
            (false, true) => Rule::InverseConjugate { lower, upper },
            (false, false) => Rule::InverseConjugateByInverse { lower, upper },
        }
    }

    /// The right-hand side tail of `rule` (for GR1 and GR6 the part after
    /// the `g_i` letters).
    fn tail(&self, rule: Rule) -> Result<&Word, CollectError> {
        let n = self.n;
        let found = match rule {
            Rule::FreeCancel { .. } => None,
            Rule::Power { gen } => self.power[gen].as_ref(),
            Rule::Inverse { gen } => self.inverse_power[gen].as_ref(),
            Rule::Conjugate { lower, upper } => self.conjugate[lower * n + upper].as_ref(),
            Rule::ConjugateByInverse { lower, upper } => {
                self.conjugate_by_inverse[lower * n + upper].as_ref()
            }
            Rule::InverseConjugate { lower, upper } => {
                self.inverse_conjugate[lower * n + upper].as_ref()
            }
            Rule::InverseConjugateByInverse { lower, upper } => {
                self.inverse_conjugate_by_inverse[lower * n + upper].as_ref()
            }
        };
        found.ok_or(CollectError::MissingDerivedRelation {
            tag: rule.tag(),
            indices: rule.indices(),
        })
    }

    fn step_rule(&self, kind: StepKind, (g, z): &Run, next: Option<&Run>) -> Rule {
        match kind {
            StepKind::Cancel => Rule::FreeCancel { gen: *g },
            StepKind::Power => Rule::Power { gen: *g },
            StepKind::Inverse => Rule::Inverse { gen: *g },
            StepKind::Swap => {
                let (h, y) = next.expect("swap step has a right neighbour");
                self.swap_rule(z.is_positive(), *h, y.is_positive(), *g)
            }
        }
    }

    /// Rule and number of primitive applications of a step in `run`.
    fn step_count(&self, kind: StepKind, run: &Run, next: Option<&Run>) -> (Rule, BigInt) {
        let rule = self.step_rule(kind, run, next);
        let (g, z) = run;
        let count = match kind {
            StepKind::Cancel => z
                .abs()
                .min(next.expect("cancellation has a right neighbour").1.abs()),
            StepKind::Inverse => BigInt::one(),
            StepKind::Power => z / self.order(*g).expect("power step on infinite generator"),
            StepKind::Swap => z.abs(),
        };
        (rule, count)
    }

    /// `times` copies of `tail` appended to `out`.
    fn push_copies(out: &mut Word, tail: &Word, times: &BigInt) {
        match tail.runs() {
            [] => {}
            [(k, x)] => out.push(*k, x * times),
            _ => {
                let times = times
                    .to_usize()
                    .expect("repetition count is bounded by the budget");
                for _ in 0..times {
                    out.extend(tail);
                }
            }
        }
    }

    /// The runs replacing `run` (and `next` for cancellations and swaps).
    fn apply(&self, kind: StepKind, run: &Run, next: Option<&Run>) -> Result<Word, CollectError> {
        let (g, z) = run;
        let g = *g;
        let mut replacement = Word::empty();
        match kind {
            StepKind::Cancel => {
                let y = &next.expect("cancellation has a right neighbour").1;
                let k = z.abs().min(y.abs());
                replacement.push(g, z - z.signum() * &k);
                replacement.push(g, y - y.signum() * &k);
            }
            StepKind::Power => {
                let order = self.order(g).expect("power step on infinite generator");
                let tail = self.tail(Rule::Power { gen: g })?;
                Self::push_copies(&mut replacement, tail, &(z / order));
                replacement.push(g, z % order);
            }
            StepKind::Inverse => {
                let order = self.order(g).expect("inverse step on infinite generator");
                replacement.push(g, order - 1);
                replacement.extend(self.tail(Rule::Inverse { gen: g })?);
                replacement.push(g, z + 1);
            }
            StepKind::Swap => {
                let (h, y) = next.expect("swap step has a right neighbour");
                let rule = self.swap_rule(z.is_positive(), *h, y.is_positive(), g);
                let tail = self.tail(rule)?;
                let moved = y.signum();
                replacement.push(*h, moved.clone());
                Self::push_copies(&mut replacement, tail, &z.abs());
                replacement.push(*h, y - moved);
            }
        }
        Ok(replacement)
    }

    /// Replays `trace` letter by letter from `input` and checks that it
    /// reproduces `output`.
    pub fn replay(
        &self,
        input: &Word,
        trace: &CollectionTrace,
        output: &NormalWord,
    ) -> Result<(), ReplayError> {
        const LIMIT: u64 = 1 << 22;
        if input.letter_count() > BigInt::from(LIMIT)
            || trace.primitive_steps() > BigInt::from(LIMIT)
        {
            return Err(ReplayError::TooLong);
        }
        let mut letters = input.letters();
        for (idx, step) in trace.steps.iter().enumerate() {
            let count = step.count.to_u64().ok_or(ReplayError::TooLong)?;
            let stride = match step.rule {
                Rule::Power { .. } => self
                    .tail(step.rule)
                    .map(|t| BigInt::from(t.letters().len()))
                    .unwrap_or_default(),
                _ => BigInt::from(-1),
            };
            for t in 0..count {
                let pos =
                    (&step.position + &stride * t)
                        .to_usize()
                        .ok_or(ReplayError::Mismatch {
                            step: idx,
                            rule: step.rule.tag(),
                            position: step.position.clone(),
                        })?;
                let mismatch = || ReplayError::Mismatch {
                    step: idx,
                    rule: step.rule.tag(),
                    position: BigInt::from(pos),
                };
                let (lhs_len, rhs) = self
                    .primitive_rewrite(step.rule, &letters, pos)
                    .ok_or_else(mismatch)?;
                letters.splice(pos..pos + lhs_len, rhs);
                if letters.len() as u64 > LIMIT {
                    return Err(ReplayError::TooLong);
                }
            }
        }
        let replayed = Word::from_letters(&letters);
        let collected = output.to_word();
        if replayed != collected {
            return Err(ReplayError::WrongResult {
                replayed,
                collected,
            });
        }
        Ok(())
    }

    /// If the left side of `rule` sits at `pos`, its length and the letters
    /// replacing it.
    fn primitive_rewrite(
        &self,
        rule: Rule,
        letters: &[(usize, bool)],
        pos: usize,
    ) -> Option<(usize, Vec<(usize, bool)>)> {
        let at = |k: usize| letters.get(pos + k).copied();
        let lhs: Vec<(usize, bool)> = match rule {
            Rule::FreeCancel { gen } => {
                let (a, b) = (at(0)?, at(1)?);
                return (a.0 == gen && b.0 == gen && a.1 != b.1)
                    .then(Vec::new)
                    .map(|v| (2, v));
            }
            Rule::Power { gen } => {
                let r = self.order(gen)?.to_usize()?;
                vec![(gen, true); r]
            }
            Rule::Inverse { gen } => vec![(gen, false)],
            Rule::Conjugate { lower, upper } => vec![(upper, true), (lower, true)],
            Rule::ConjugateByInverse { lower, upper } => vec![(upper, true), (lower, false)],
            Rule::InverseConjugate { lower, upper } => vec![(upper, false), (lower, true)],
            Rule::InverseConjugateByInverse { lower, upper } => {
                vec![(upper, false), (lower, false)]
            }
        };
        if letters.get(pos..pos + lhs.len())? != lhs.as_slice() {
            return None;
        }
        let tail = self.tail(rule).ok()?.letters();
        let mut rhs = match rule {
            Rule::Power { .. } => Vec::new(),
            Rule::Inverse { gen } => vec![(gen, true); self.order(gen)?.to_usize()? - 1],
            _ => vec![*lhs.last()?],
        };
        rhs.extend(tail);
        Some((lhs.len(), rhs))
    }
}

/// Collects with a freshly prepared collector.
pub fn collect(
    pres: &GroupPresentation,
    word: &Word,
    budget: u64,
) -> Result<(NormalWord, CollectionTrace), CollectError> {
    Collector::new(pres)?.collect_traced(word, budget)
}

pub fn is_reduced(pres: &GroupPresentation, word: &Word) -> bool {
    let empty = DerivedTables::default();
    let derived = pres.derived().unwrap_or(&empty);
    Collector::with_tables(pres, derived).is_reduced(word)
}

pub fn multiply_normal(
    pres: &GroupPresentation,
    u: &NormalWord,
    v: &NormalWord,
    budget: u64,
) -> Result<NormalWord, CollectError> {
    Collector::new(pres)?.multiply(u, v, budget)
}

pub fn invert_normal(
    pres: &GroupPresentation,
    u: &NormalWord,
    budget: u64,
) -> Result<NormalWord, CollectError> {
    Collector::new(pres)?.invert(u, budget)
}

/// Whether `nw` respects the exponent bounds of `orders`.
pub fn is_normal(orders: &[RelativeOrder], nw: &NormalWord) -> bool {
    nw.len() == orders.len() && orders.iter().zip(nw.exponents()).all(|(r, x)| r.admits(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_word;
    use crate::test_fixtures::*;

    fn nf(text: &str, word: &str) -> String {
        let p = group(text);
        let w = parse_word(word, p.generator_count()).unwrap();
        let (out, trace) = collect(&p, &w, DEFAULT_BUDGET).unwrap();
        Collector::new(&p)
            .unwrap()
            .replay(&w, &trace, &out)
            .unwrap();
        out.to_string()
    }

    fn exps(v: &[i64]) -> NormalWord {
        NormalWord::from_exponents(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn fixture_collections() {
        assert_eq!(nf(EX13, "g3*g2*g1"), "g1*g2*g3");
        assert_eq!(nf(EX13, "g2*g3^-1*g1"), "g1*g2^-1*g3^-1");
        assert_eq!(nf(EX13, "g3*g1^-1*g1"), "g3");
        assert_eq!(nf(EX14, "g3^2*g1"), "g1*g2^2");
        assert_eq!(nf(EX14, "g2*g3*g1"), "g1*g2*g3");
        assert_eq!(nf(EX15, "g2*g1^3"), "g2^-1");
        assert_eq!(nf(EX15, "g1^4"), "g1");
        assert_eq!(nf(EX16, "g2*g1^-1*g1"), "g2^2");
        assert_eq!(nf(EX17, "g1^3"), "g1*g2^-1");
        assert_eq!(nf(EX17, "g2*g1^2"), "g2^2");
    }

    #[test]
    fn free_cancellation() {
        assert_eq!(nf(Z3, "g1*g1^-1"), "1");
        assert_eq!(nf(Z3, "g3^5*g1*g3^-5*g1^-1"), "1");
    }

    #[test]
    fn reduced_words() {
        let p = group(EX13);
        assert!(is_reduced(&p, &Word::empty()));
        assert!(is_reduced(&p, &parse_word("g1*g2*g3", 3).unwrap()));
        assert!(!is_reduced(&p, &parse_word("g2*g1", 3).unwrap()));
        assert!(!is_reduced(&p, &parse_word("g1*g1^-1", 3).unwrap()));
        let s3 = group(S3);
        assert!(!is_reduced(&s3, &parse_word("g2^3", 2).unwrap()));
        assert!(!is_reduced(&s3, &parse_word("g2^-1", 2).unwrap()));
    }

    #[test]
    fn s3_multiplication_and_inverses() {
        let p = group(S3);
        let b = DEFAULT_BUDGET;
        assert_eq!(
            multiply_normal(&p, &exps(&[1, 0]), &exps(&[1, 0]), b).unwrap(),
            exps(&[0, 0])
        );
        assert_eq!(
            multiply_normal(&p, &exps(&[1, 1]), &exps(&[1, 0]), b).unwrap(),
            exps(&[0, 2])
        );
        assert_eq!(invert_normal(&p, &exps(&[0, 1]), b).unwrap(), exps(&[0, 2]));
        assert_eq!(invert_normal(&p, &exps(&[1, 1]), b).unwrap(), exps(&[1, 1]));
        let v = exps(&[1, 2]);
        assert_eq!(multiply_normal(&p, &exps(&[0, 0]), &v, b).unwrap(), v);
    }

    #[test]
    fn inverses_in_free_abelian_group() {
        let p = group(Z3);
        let u = exps(&[2, 1, 0]);
        assert_eq!(invert_normal(&p, &u, 100).unwrap(), exps(&[-2, -1, 0]));
        assert_eq!(
            invert_normal(&p, &exps(&[0, 0, 0]), 100).unwrap(),
            exps(&[0, 0, 0])
        );
    }

    #[test]
    fn huge_exponents_are_batched() {
        let p = group(Z3);
        let w = parse_word("g2^-1000000000*g3^1000000000*g1^3", 3).unwrap();
        assert!(collect(&p, &w, 5_999_999_999).is_err());
        let (out, trace) = collect(&p, &w, 6_000_000_000).unwrap();
        assert_eq!(out.to_string(), "g1^3*g2^-1000000000*g3^1000000000");
        assert_eq!(trace.steps.len(), 6);
        assert_eq!(trace.primitive_steps(), BigInt::from(6_000_000_000u64));
    }

    #[test]
    fn budget_stops_expanding_tails_early() {
        // Moving g1 past g2^M inserts (g2*g3)^M; the budget must trip before
        // that word is built.
        let p = group(HEISENBERG);
        let w = parse_word("g2^1000000000*g1", 3).unwrap();
        assert!(matches!(
            collect(&p, &w, DEFAULT_BUDGET),
            Err(CollectError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn power_runs_divide_with_remainder() {
        let p = group("group 2\norder g1 = 2\ng1^2 = g2\n");
        let c = Collector::new(&p).unwrap();
        let w = parse_word("g1^7", 2).unwrap();
        let (nf, trace) = c.collect_traced(&w, 100).unwrap();
        assert_eq!(nf.to_string(), "g1*g2^3");
        // g1^7 -> g2^3*g1, then one swap.
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.steps[0].rule, Rule::Power { gen: 0 });
        assert_eq!(trace.steps[0].count, BigInt::from(3));
        assert!(c.replay(&w, &trace, &nf).is_ok());
    }

    #[test]
    fn power_runs_with_long_tails_replay() {
        let p = group("group 3\norder g1 = 2\ng1^2 = g2*g3\n");
        let c = Collector::new(&p).unwrap();
        let w = parse_word("g1^5", 3).unwrap();
        let (nf, trace) = c.collect_traced(&w, 100).unwrap();
        assert_eq!(nf.to_string(), "g1*g2^2*g3^2");
        assert!(c.replay(&w, &trace, &nf).is_ok());
    }

    #[test]
    fn growing_power_runs_stay_cheap() {
        // Conjugation triples g3 and powers of g2 feed g3, so reducing one
        // order at a time would take exponentially many steps.
        let text = "group 3\norder g1 = 4\norder g2 = 4\norder g3 = 4\n\
                    g1^4 = g2^2\ng2^4 = g3\ng2*g1 = g1*g2^2\ng3*g1 = g1*g2\ng3*g2 = g2*g3^3\n";
        let p = group(text);
        let w = parse_word("g1^-2", 3).unwrap();
        let (nf, trace) = collect(&p, &w, 10_000).unwrap();
        assert!(Collector::new(&p).unwrap().replay(&w, &trace, &nf).is_ok());
        let square = Collector::new(&p)
            .unwrap()
            .multiply(&nf, &nf, 10_000)
            .unwrap();
        let inverse_square = Collector::new(&p)
            .unwrap()
            .collect(&parse_word("g1^-4", 3).unwrap(), 10_000)
            .unwrap();
        assert_eq!(square, inverse_square);
    }

    #[test]
    fn budget_is_enforced() {
        let p = group(EX16);
        let w = parse_word("g2*g1^40", 2).unwrap();
        match collect(&p, &w, 10) {
            Err(CollectError::BudgetExceeded { budget: 10, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn replay_rejects_a_wrong_result() {
        let p = group(S3);
        let c = Collector::new(&p).unwrap();
        let w = parse_word("g2*g1", 2).unwrap();
        let (out, trace) = c.collect_traced(&w, 100).unwrap();
        assert!(c.replay(&w, &trace, &out).is_ok());
        assert!(c.replay(&w, &trace, &exps(&[1, 1])).is_err());
        assert!(c.replay(&w, &CollectionTrace::default(), &out).is_err());
    }

    #[test]
    fn underived_presentations_cannot_collect() {
        let p = crate::syntax::parse_group_unreduced(S3).unwrap();
        assert!(matches!(Collector::new(&p), Err(CollectError::NotDerived)));
    }

    #[test]
    fn normal_form_bounds() {
        let p = group(S3);
        assert!(is_normal(p.orders(), &exps(&[1, 2])));
        assert!(!is_normal(p.orders(), &exps(&[1, 3])));
        assert!(!is_normal(p.orders(), &exps(&[-1, 0])));
    }
}

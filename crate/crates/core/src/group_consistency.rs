//! The five families of test equations that decide consistency of a
//! polycyclic presentation, and their weight-filtered subset for nilpotent
//! presentations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::collector::{CollectError, Collector, DEFAULT_BUDGET};
use crate::presentation::{GroupPresentation, PresentationError, WeightAssignment};
use crate::word::{NormalWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Full,
    NilpotentFiltered,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::NilpotentFiltered => "nilpotent",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    G1,
    G2,
    G3,
    G4,
    G5,
}

/// A test equation with 0-based generator indices `i < j < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TestEquation {
    /// `c(g_j g^{a_{j,k}} g_i) = c(g_k g_j g_i)`.
    G1 { i: usize, j: usize, k: usize },
    /// `c(g_j^{r_j} g_i) = c(g^{e_j} g_i)`, `r_j` finite.
    G2 { i: usize, j: usize },
    /// `c(g_j g_i^{r_i}) = c(g_j g^{e_i})`, `r_i` finite.
    G3 { i: usize, j: usize },
    /// `c(g_j g_i^-1 g_i) = c(g_j)`, `r_i` infinite.
    G4 { i: usize, j: usize },
    /// `c(g_i^{r_i + 1}) = c(g_i g^{e_i})`, `r_i` finite.
    G5 { i: usize },
}

impl TestEquation {
    pub fn family(&self) -> Family {
        match self {
            TestEquation::G1 { .. } => Family::G1,
            TestEquation::G2 { .. } => Family::G2,
            TestEquation::G3 { .. } => Family::G3,
            TestEquation::G4 { .. } => Family::G4,
            TestEquation::G5 { .. } => Family::G5,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self.family() {
            Family::G1 => "G1",
            Family::G2 => "G2",
            Family::G3 => "G3",
            Family::G4 => "G4",
            Family::G5 => "G5",
        }
    }

    /// 1-based indices in the order `i, j, k`.
    pub fn indices(&self) -> Vec<usize> {
        match *self {
            TestEquation::G1 { i, j, k } => vec![i + 1, j + 1, k + 1],
            TestEquation::G2 { i, j } | TestEquation::G3 { i, j } | TestEquation::G4 { i, j } => {
                vec![i + 1, j + 1]
            }
            TestEquation::G5 { i } => vec![i + 1],
        }
    }

    /// Whether the weight filter keeps this equation.
    fn within_weight(&self, w: &WeightAssignment) -> bool {
        let d = w.max_weight;
        match *self {
            TestEquation::G1 { i, j, k } => w.weight(i) + w.weight(j) + w.weight(k) <= d,
            TestEquation::G2 { i, j } | TestEquation::G3 { i, j } | TestEquation::G4 { i, j } => {
                w.weight(i) + w.weight(j) <= d
            }
            TestEquation::G5 { i } => 2 * w.weight(i) <= d,
        }
    }
}

impl fmt::Display for TestEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TestEquation::G1 { i, j, k } => write!(f, "G1(i={},j={},k={})", i + 1, j + 1, k + 1),
            TestEquation::G2 { i, j } => write!(f, "G2(i={},j={})", i + 1, j + 1),
            TestEquation::G3 { i, j } => write!(f, "G3(i={},j={})", i + 1, j + 1),
            TestEquation::G4 { i, j } => write!(f, "G4(i={},j={})", i + 1, j + 1),
            TestEquation::G5 { i } => write!(f, "G5(i={})", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationResult {
    pub id: TestEquation,
    pub lhs: Word,
    pub rhs: Word,
    pub lhs_nf: NormalWord,
    pub rhs_nf: NormalWord,
}

impl EquationResult {
    pub fn pass(&self) -> bool {
        self.lhs_nf == self.rhs_nf
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    /// Equations of the full family list.
    pub enumerated: usize,
    pub evaluated: usize,
    pub skipped_by_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub mode: Mode,
    pub failures: Vec<EquationResult>,
    pub counts: Counts,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConsistencyError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Collect(#[from] CollectError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: Mode,
    pub budget: u64,
    /// Stop after the first failing equation.
    pub fail_fast: bool,
    /// Families left out of the check. Only meaningful for experiments on
    /// which families are needed.
    pub excluded: Vec<Family>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mode: Mode::Full,
            budget: DEFAULT_BUDGET,
            fail_fast: false,
            excluded: Vec::new(),
        }
    }
}

impl CheckOptions {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}

fn full_list(p: &GroupPresentation) -> Vec<TestEquation> {
    let n = p.generator_count();
    let finite = |i: usize| p.order(i).is_finite();
    let mut ids = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                ids.push(TestEquation::G1 { i, j, k });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if finite(j) {
                ids.push(TestEquation::G2 { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if finite(i) {
                ids.push(TestEquation::G3 { i, j });
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !finite(i) {
                ids.push(TestEquation::G4 { i, j });
            }
        }
    }
    for i in 0..n {
        if finite(i) {
            ids.push(TestEquation::G5 { i });
        }
    }
    ids
}

/// The test equations of `mode`, in a fixed order: G1 by `(i, j, k)`, then
/// G2, G3, G4 by `(i, j)`, then G5 by `i`.
pub fn enumerate_test_equations(
    p: &GroupPresentation,
    mode: Mode,
) -> Result<Vec<TestEquation>, PresentationError> {
    let ids = full_list(p);
    match mode {
        Mode::Full => Ok(ids),
        Mode::NilpotentFiltered => {
            let weights = p.compute_weights()?;
            Ok(ids
                .into_iter()
                .filter(|id| id.within_weight(&weights))
                .collect())
        }
    }
}

/// Both sides of `id`, uncollected.
pub fn equation_sides(p: &GroupPresentation, id: TestEquation) -> (Word, Word) {
    let g = Word::generator;
    let power_tail = |i: usize| {
        p.power_tail(i)
            .expect("power relation exists for finite order")
            .to_word()
    };
    let order = |i: usize| {
        p.order(i)
            .value()
            .expect("finite order required by the equation")
            .clone()
    };
    match id {
        TestEquation::G1 { i, j, k } => {
            let a = p
                .conjugate_tail(j, k)
                .expect("conjugate relation")
                .to_word();
            (
                g(j).concat(&a).concat(&g(i)),
                g(k).concat(&g(j)).concat(&g(i)),
            )
        }
        TestEquation::G2 { i, j } => (
            Word::power(j, order(j)).concat(&g(i)),
            power_tail(j).concat(&g(i)),
        ),
        TestEquation::G3 { i, j } => (
            g(j).concat(&Word::power(i, order(i))),
            g(j).concat(&power_tail(i)),
        ),
        TestEquation::G4 { i, j } => (
            g(j).concat(&Word::power(i, -BigInt::one())).concat(&g(i)),
            g(j),
        ),
        TestEquation::G5 { i } => (Word::power(i, order(i) + 1), g(i).concat(&power_tail(i))),
    }
}

/// Builds and collects both sides of `id`.
pub fn check_equation(
    collector: &Collector<'_>,
    id: TestEquation,
    budget: u64,
) -> Result<EquationResult, CollectError> {
    let (lhs, rhs) = equation_sides(collector.presentation(), id);
    let lhs_nf = collector.collect(&lhs, budget)?;
    let rhs_nf = collector.collect(&rhs, budget)?;
    Ok(EquationResult {
        id,
        lhs,
        rhs,
        lhs_nf,
        rhs_nf,
    })
}

/// Evaluates every test equation of the selected mode. The presentation
/// must have its inverse relations derived.
pub fn check_consistency(
    p: &GroupPresentation,
    options: &CheckOptions,
) -> Result<ConsistencyReport, ConsistencyError> {
    let collector = Collector::new(p)?;
    let full = full_list(p).len();
    let within_mode = enumerate_test_equations(p, options.mode)?;
    let skipped_by_weight = full - within_mode.len();
    let selected: Vec<TestEquation> = within_mode
        .into_iter()
        .filter(|id| !options.excluded.contains(&id.family()))
        .collect();

    let (failures, evaluated) = if options.fail_fast {
        let mut evaluated = 0;
        let mut failures = Vec::new();
        for id in &selected {
            evaluated += 1;
            let result = check_equation(&collector, *id, options.budget)?;
            if !result.pass() {
                failures.push(result);
                break;
            }
        }
        (failures, evaluated)
    } else {
        let results = selected
            .par_iter()
            .map(|id| check_equation(&collector, *id, options.budget))
            .collect::<Result<Vec<_>, _>>()?;
        let failures = results.into_iter().filter(|r| !r.pass()).collect();
        (failures, selected.len())
    };

    Ok(ConsistencyReport {
        mode: options.mode,
        failures,
        counts: Counts {
            enumerated: full,
            evaluated,
            skipped_by_weight,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_fixtures::*;

    fn failing(text: &str, mode: Mode) -> Vec<String> {
        let p = group(text);
        let report = check_consistency(&p, &CheckOptions::default().with_mode(mode)).unwrap();
        report.failures.iter().map(|r| r.id.to_string()).collect()
    }

    #[test]
    fn single_free_generator_has_no_equations() {
        let p = group("group 1\n");
        assert!(enumerate_test_equations(&p, Mode::Full).unwrap().is_empty());
    }

    #[test]
    fn example_15_equations() {
        let ids = enumerate_test_equations(&group(EX15), Mode::Full).unwrap();
        assert_eq!(
            ids,
            vec![TestEquation::G3 { i: 0, j: 1 }, TestEquation::G5 { i: 0 }]
        );
    }

    #[test]
    fn heisenberg_filter_drops_g1() {
        let p = group(HEISENBERG);
        let full = enumerate_test_equations(&p, Mode::Full).unwrap();
        let filtered = enumerate_test_equations(&p, Mode::NilpotentFiltered).unwrap();
        assert!(full.contains(&TestEquation::G1 { i: 0, j: 1, k: 2 }));
        assert_eq!(filtered, vec![TestEquation::G4 { i: 0, j: 1 }]);
        assert!(filtered.iter().all(|id| full.contains(id)));
    }

    #[test]
    fn single_fixture_equations() {
        let p = group(EX13);
        let c = Collector::new(&p).unwrap();
        let r = check_equation(&c, TestEquation::G1 { i: 0, j: 1, k: 2 }, 1000).unwrap();
        assert_eq!(r.lhs_nf.to_string(), "g1*g2^-1*g3^-1");
        assert_eq!(r.rhs_nf.to_string(), "g1*g2*g3");
        assert!(!r.pass());

        let p = group(EX16);
        let c = Collector::new(&p).unwrap();
        let r = check_equation(&c, TestEquation::G4 { i: 0, j: 1 }, 1000).unwrap();
        assert_eq!(
            (r.lhs_nf.to_string(), r.rhs_nf.to_string()),
            ("g2^2".into(), "g2".into())
        );
        assert!(!r.pass());
    }

    #[test]
    fn free_abelian_equations_pass() {
        let p = group("group 2\n");
        let c = Collector::new(&p).unwrap();
        for id in enumerate_test_equations(&p, Mode::Full).unwrap() {
            assert!(check_equation(&c, id, 1000).unwrap().pass());
        }
    }

    #[test]
    fn fixture_failure_sets() {
        assert_eq!(failing(EX13, Mode::Full), ["G1(i=1,j=2,k=3)"]);
        assert_eq!(failing(EX14, Mode::Full), ["G2(i=1,j=3)"]);
        assert_eq!(failing(EX15, Mode::Full), ["G3(i=1,j=2)"]);
        assert_eq!(failing(EX16, Mode::Full), ["G4(i=1,j=2)"]);
        assert_eq!(failing(EX17, Mode::Full), ["G5(i=1)"]);
        assert!(failing(S3, Mode::Full).is_empty());
        assert!(failing(HEISENBERG, Mode::NilpotentFiltered).is_empty());
    }

    #[test]
    fn nilpotent_mode_needs_nilpotent_form() {
        let p = group(EX13);
        let options = CheckOptions::default().with_mode(Mode::NilpotentFiltered);
        assert!(matches!(
            check_consistency(&p, &options),
            Err(ConsistencyError::Presentation(
                PresentationError::NotNilpotentForm(_)
            ))
        ));
    }

    #[test]
    fn excluding_a_family_hides_its_failures() {
        let p = group(EX17);
        let options = CheckOptions {
            excluded: vec![Family::G5],
            ..CheckOptions::default()
        };
        let report = check_consistency(&p, &options).unwrap();
        assert!(report.is_consistent());
        assert_eq!(report.counts.evaluated, 1);
    }

    #[test]
    fn fail_fast_stops_at_the_first_failure() {
        let p = group(EX13);
        let options = CheckOptions {
            fail_fast: true,
            ..CheckOptions::default()
        };
        let report = check_consistency(&p, &options).unwrap();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.counts.evaluated, 1);
    }
}

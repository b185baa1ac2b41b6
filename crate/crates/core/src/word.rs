//! Words in the free monoid on `g_1, ..., g_n` and their inverses, plus the
//! exponent-vector representation of collected words.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A word in the free monoid on the generators and their formal inverses.
///
/// Stored run-length encoded: a run `(i, z)` stands for `|z|` consecutive
/// letters `g_i^{sign(z)}`. Adjacent runs never share both generator and
/// sign, but `g_i^a g_i^-b` stays as two runs because removing the pair is a
/// collection step, not an identity of the monoid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    runs: Vec<(usize, BigInt)>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn generator(gen: usize) -> Self {
        Self::power(gen, BigInt::one())
    }

    pub fn power(gen: usize, exp: impl Into<BigInt>) -> Self {
        let mut w = Self::empty();
        w.push(gen, exp.into());
        w
    }

    pub fn from_runs<I, E>(runs: I) -> Self
    where
        I: IntoIterator<Item = (usize, E)>,
        E: Into<BigInt>,
    {
        let mut w = Self::empty();
        for (gen, exp) in runs {
            w.push(gen, exp.into());
        }
        w
    }

    pub fn runs(&self) -> &[(usize, BigInt)] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Appends `g_gen^exp`, merging with the last run when generator and
    /// sign agree.
    pub fn push(&mut self, gen: usize, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some((last_gen, last_exp)) = self.runs.last_mut() {
            if *last_gen == gen && last_exp.is_positive() == exp.is_positive() {
                *last_exp += exp;
                return;
            }
        }
        self.runs.push((gen, exp));
    }

    pub fn extend(&mut self, other: &Word) {
        for (gen, exp) in &other.runs {
            self.push(*gen, exp.clone());
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    /// The letter-wise formal inverse: reversed, every exponent negated.
    pub fn inverse(&self) -> Word {
        Word::from_runs(self.runs.iter().rev().map(|(g, e)| (*g, -e)))
    }

    /// Total number of letters.
    pub fn letter_count(&self) -> BigInt {
        self.runs.iter().map(|(_, e)| e.abs()).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.runs.iter().map(|(g, _)| *g).max()
    }

    /// Expands into single letters `(generator, positive?)`. Only sensible
    /// for short words.
    pub fn letters(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        for (gen, exp) in &self.runs {
            let count = exp
                .abs()
                .try_into()
                .unwrap_or_else(|_| panic!("run g{}^{} too long to expand", gen + 1, exp));
            out.extend(std::iter::repeat((*gen, exp.is_positive())).take(count));
        }
        out
    }

    pub fn from_letters(letters: &[(usize, bool)]) -> Word {
        Word::from_runs(
            letters
                .iter()
                .map(|&(g, pos)| (g, if pos { BigInt::one() } else { -BigInt::one() })),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factors(f, self.runs.iter().map(|(g, e)| (*g, e)))
    }
}

/// A collected word `g_1^{x_1} ... g_n^{x_n}`, stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalWord {
    exponents: Vec<BigInt>,
}

impl NormalWord {
    pub fn identity(n: usize) -> Self {
        NormalWord {
            exponents: vec![BigInt::zero(); n],
        }
    }

    pub fn from_exponents(exponents: Vec<BigInt>) -> Self {
        NormalWord { exponents }
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn exponent(&self, gen: usize) -> &BigInt {
        &self.exponents[gen]
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    /// Lowest generator with a nonzero exponent.
    pub fn leading_generator(&self) -> Option<usize> {
        self.exponents.iter().position(|x| !x.is_zero())
    }

    pub fn to_word(&self) -> Word {
        Word::from_runs(
            self.exponents
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(g, x)| (g, x.clone())),
        )
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factors(
            f,
            self.exponents
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero()),
        )
    }
}

fn write_factors<'a>(
    f: &mut fmt::Formatter<'_>,
    factors: impl Iterator<Item = (usize, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (gen, exp) in factors {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if exp.is_one() {
            write!(f, "g{}", gen + 1)?;
        } else {
            write!(f, "g{}^{}", gen + 1, exp)?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

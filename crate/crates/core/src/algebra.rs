//! Nilpotent presentations of associative algebras over `Z`, `Q` or
//! `GF(p)`:
//!
//! ```text
//! r_i a_i = e_{i,i+1} a_{i+1} + ... + e_{i,n} a_n      r_i finite
//! a_j a_i = b_{i,j,l+1} a_{l+1} + ... + b_{i,j,n} a_n  l = max(i, j)
//! ```
//!
//! together with collection to a reduced form and the three families of
//! weight-filtered test equations that decide consistency.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::coefficients::{reduce_mod_order, CoefficientError, RingDescriptor, Scalar};
use crate::presentation::{PresentationError, RelativeOrder, WeightAssignment, WeightConstraint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
    #[error("relation {relation}: coefficient {value} of a{} is outside 0..{order}", .generator + 1)]
    ExponentOutOfRange {
        relation: String,
        generator: usize,
        value: Scalar,
        order: BigInt,
    },
    #[error("relation {relation}: {detail}")]
    BadIndex { relation: String, detail: String },
    #[error(transparent)]
    Weights(#[from] PresentationError),
}

/// Sparse coefficient row: `(generator, coefficient)` pairs.
pub type RawRow = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebraPresentation {
    pub ring: RingDescriptor,
    pub orders: Vec<RelativeOrder>,
    /// `r_i a_i = row`.
    pub power: BTreeMap<usize, RawRow>,
    /// Keyed by `(left, right)`: `a_left a_right = row`.
    pub products: BTreeMap<(usize, usize), RawRow>,
}

impl RawAlgebraPresentation {
    pub fn new(n: usize, ring: RingDescriptor) -> Self {
        RawAlgebraPresentation {
            ring,
            orders: vec![RelativeOrder::Infinite; n],
            power: BTreeMap::new(),
            products: BTreeMap::new(),
        }
    }

    pub fn with_order(mut self, gen: usize, order: RelativeOrder) -> Self {
        self.orders[gen] = order;
        self
    }

    /// `a_left a_right = Σ c_k a_k`, coefficients given as integers.
    pub fn with_product(
        mut self,
        left: usize,
        right: usize,
        row: impl IntoIterator<Item = (usize, i64)>,
    ) -> Self {
        let ring = self.ring;
        self.products.insert(
            (left, right),
            row.into_iter()
                .map(|(k, c)| (k, ring.from_int(&c.into())))
                .collect(),
        );
        self
    }

    /// `r_gen a_gen = Σ c_k a_k`, coefficients given as integers.
    pub fn with_power(mut self, gen: usize, row: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let ring = self.ring;
        self.power.insert(
            gen,
            row.into_iter()
                .map(|(k, c)| (k, ring.from_int(&c.into())))
                .collect(),
        );
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    ring: RingDescriptor,
    orders: Vec<RelativeOrder>,
    power: Vec<Option<Vec<Scalar>>>,
    /// Row of `a_left a_right` at `left * n + right`.
    products: Vec<Vec<Scalar>>,
}

/// A linear combination of nonempty words in `a_1, ..., a_n`, before
/// collection. Words are 0-based generator sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElement {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coefficient: Scalar, word: Vec<usize>) -> Self {
        let mut e = Self::zero();
        if !coefficient.is_zero() {
            e.terms.push((coefficient, word));
        }
        e
    }

    pub fn from_vector(v: &NormalVector) -> Self {
        FreeElement {
            terms: v
                .coefficients
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c.clone(), vec![k]))
                .collect(),
        }
    }

    pub fn plus(mut self, other: FreeElement) -> Self {
        self.terms.extend(other.terms);
        self
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(c, w)| (c, w.as_slice()));
        write_combination(f, terms)
    }
}

/// A reduced form `x_1 a_1 + ... + x_n a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalVector {
    pub coefficients: Vec<Scalar>,
}

impl NormalVector {
    pub fn zero(ring: RingDescriptor, n: usize) -> Self {
        NormalVector {
            coefficients: vec![ring.zero(); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Scalar::is_zero)
    }
}

impl fmt::Display for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<[usize; 1]> = (0..self.coefficients.len()).map(|k| [k]).collect();
        let terms = self
            .coefficients
            .iter()
            .zip(&gens)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, g)| (c, g.as_slice()));
        write_combination(f, terms)
    }
}

fn write_combination<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Scalar, &'a [usize])>,
) -> fmt::Result {
    let mut first = true;
    for (c, word) in terms {
        let text = c.to_string();
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if magnitude != "1" {
            write!(f, "{magnitude}*")?;
        }
        let letters: Vec<String> = word.iter().map(|g| format!("a{}", g + 1)).collect();
        f.write_str(&letters.join("*"))?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl AlgebraPresentation {
    pub fn validate(raw: RawAlgebraPresentation) -> Result<Self, AlgebraError> {
        let ring = raw.ring;
        let n = raw.orders.len();
        for (gen, r) in raw.orders.iter().enumerate() {
            if let RelativeOrder::Finite(value) = r {
                if ring.is_field() {
                    return Err(CoefficientError::UnsupportedRing(ring).into());
                }
                if *value < BigInt::from(1) {
                    return Err(PresentationError::InvalidOrder {
                        generator: gen,
                        value: value.clone(),
                    }
                    .into());
                }
            }
        }
        let orders = raw.orders;

        let mut power = vec![None; n];
        for (&i, row) in &raw.power {
            let relation = format!("r*a{}", i + 1);
            if i >= n {
                return Err(AlgebraError::BadIndex {
                    relation,
                    detail: format!("generator out of range 1..{n}"),
                });
            }
            if orders[i].is_infinite() {
                return Err(AlgebraError::BadIndex {
                    relation,
                    detail: format!("a{} has infinite relative order", i + 1),
                });
            }
            power[i] = Some(build_row(&relation, row, i + 1, ring, &orders)?);
        }
        for i in 0..n {
            if orders[i].is_finite() && power[i].is_none() {
                power[i] = Some(vec![ring.zero(); n]);
            }
        }

        let mut products = vec![vec![ring.zero(); n]; n * n];
        for (&(left, right), row) in &raw.products {
            let relation = format!("a{}*a{}", left + 1, right + 1);
            if left >= n || right >= n {
                return Err(AlgebraError::BadIndex {
                    relation,
                    detail: format!("generator out of range 1..{n}"),
                });
            }
            products[left * n + right] =
                build_row(&relation, row, left.max(right) + 1, ring, &orders)?;
        }

        Ok(AlgebraPresentation {
            ring,
            orders,
            power,
            products,
        })
    }

    pub fn to_raw(&self) -> RawAlgebraPresentation {
        let n = self.generator_count();
        let sparse = |row: &[Scalar]| -> RawRow {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect()
        };
        let mut products = BTreeMap::new();
        for left in 0..n {
            for right in 0..n {
                let row = sparse(&self.products[left * n + right]);
                if !row.is_empty() {
                    products.insert((left, right), row);
                }
            }
        }
        RawAlgebraPresentation {
            ring: self.ring,
            orders: self.orders.clone(),
            power: self
                .power
                .iter()
                .enumerate()
                .filter_map(|(i, row)| row.as_ref().map(|r| (i, sparse(r))))
                .filter(|(_, r)| !r.is_empty())
                .collect(),
            products,
        }
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[RelativeOrder] {
        &self.orders
    }

    /// Coefficients of `a_left a_right`.
    pub fn product_row(&self, left: usize, right: usize) -> &[Scalar] {
        &self.products[left * self.generator_count() + right]
    }

    /// Coefficients of `r_i a_i`, when `r_i` is finite.
    pub fn power_row(&self, i: usize) -> Option<&[Scalar]> {
        self.power[i].as_deref()
    }

    /// Basis element `a_gen` as a reduced form.
    pub fn basis(&self, gen: usize) -> NormalVector {
        let mut v = NormalVector::zero(self.ring, self.generator_count());
        v.coefficients[gen] = self.ring.one();
        v
    }

    fn add_into(&self, acc: &mut Scalar, x: &Scalar) {
        *acc = self
            .ring
            .add(acc, x)
            .expect("scalars of a validated presentation");
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.ring
            .mul(a, b)
            .expect("scalars of a validated presentation")
    }

    /// Collection: expands the leftmost pair of every word until all words
    /// have length one, then reduces coefficients of finite relative order
    /// from `a_1` upwards, pushing quotients into the power rows.
    pub fn normalize(&self, e: &FreeElement) -> Result<NormalVector, AlgebraError> {
        let n = self.generator_count();
        let mut x = NormalVector::zero(self.ring, n);
        let mut stack: Vec<(Scalar, Vec<usize>)> = Vec::new();
        for (c, word) in &e.terms {
            self.ring.check(c)?;
            if word.is_empty() {
                return Err(AlgebraError::BadIndex {
                    relation: e.to_string(),
                    detail: "terms need at least one generator".to_string(),
                });
            }
            if let Some(&g) = word.iter().find(|&&g| g >= n) {
                return Err(AlgebraError::BadIndex {
                    relation: e.to_string(),
                    detail: format!("a{} out of range 1..{n}", g + 1),
                });
            }
            stack.push((c.clone(), word.clone()));
        }
        while let Some((c, word)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            if let [g] = word[..] {
                self.add_into(&mut x.coefficients[g], &c);
                continue;
            }
            let row = self.product_row(word[0], word[1]);
            for (k, b) in row.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let mut next = Vec::with_capacity(word.len() - 1);
                next.push(k);
                next.extend_from_slice(&word[2..]);
                stack.push((self.mul(&c, b), next));
            }
        }
        self.reduce(&mut x)?;
        Ok(x)
    }

    fn reduce(&self, x: &mut NormalVector) -> Result<(), AlgebraError> {
        let n = self.generator_count();
        for i in 0..n {
            let Some(row) = &self.power[i] else { continue };
            let (q, rem) = reduce_mod_order(&x.coefficients[i], &self.orders[i])?;
            x.coefficients[i] = rem;
            if q.is_zero() {
                continue;
            }
            for k in i + 1..n {
                if !row[k].is_zero() {
                    let spill = self.mul(&q, &row[k]);
                    self.add_into(&mut x.coefficients[k], &spill);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, u: &NormalVector, v: &NormalVector) -> Result<NormalVector, AlgebraError> {
        self.normalize(&FreeElement::from_vector(u).plus(FreeElement::from_vector(v)))
    }

    pub fn scalar_mul(
        &self,
        lambda: &Scalar,
        u: &NormalVector,
    ) -> Result<NormalVector, AlgebraError> {
        self.ring.check(lambda)?;
        let terms = FreeElement::from_vector(u)
            .terms
            .into_iter()
            .map(|(c, w)| (self.mul(lambda, &c), w))
            .collect();
        self.normalize(&FreeElement { terms })
    }

    /// Bilinear expansion of `u v` as a free element.
    pub fn product_expansion(&self, u: &FreeElement, v: &FreeElement) -> FreeElement {
        let mut terms = Vec::new();
        for (c, w) in &u.terms {
            for (d, z) in &v.terms {
                let coefficient = self.mul(c, d);
                if coefficient.is_zero() {
                    continue;
                }
                let mut word = w.clone();
                word.extend_from_slice(z);
                terms.push((coefficient, word));
            }
        }
        FreeElement { terms }
    }

    pub fn multiply(
        &self,
        u: &NormalVector,
        v: &NormalVector,
    ) -> Result<NormalVector, AlgebraError> {
        self.normalize(
            &self.product_expansion(&FreeElement::from_vector(u), &FreeElement::from_vector(v)),
        )
    }

    /// The minimal weight function: `w(a_k) >= w(a_i)` for `e_{i,k} != 0`
    /// and `w(a_k) >= w(a_i) + w(a_j)` for `b_{i,j,k} != 0`.
    pub fn compute_weights(&self) -> Result<WeightAssignment, AlgebraError> {
        Ok(WeightAssignment::least_solution(
            self.generator_count(),
            &self.weight_constraints(),
        )?)
    }

    pub(crate) fn weight_constraints(&self) -> Vec<WeightConstraint> {
        let n = self.generator_count();
        let mut constraints = Vec::new();
        for (i, row) in self.power.iter().enumerate() {
            for (k, _) in row
                .iter()
                .flatten()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
            {
                constraints.push(WeightConstraint::AtLeast { target: k, of: i });
            }
        }
        for left in 0..n {
            for right in 0..n {
                for (k, _) in self
                    .product_row(left, right)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                {
                    constraints.push(WeightConstraint::AtLeastSum {
                        target: k,
                        left,
                        right,
                    });
                }
            }
        }
        constraints
    }
}

fn build_row(
    relation: &str,
    raw: &RawRow,
    start: usize,
    ring: RingDescriptor,
    orders: &[RelativeOrder],
) -> Result<Vec<Scalar>, AlgebraError> {
    let n = orders.len();
    let mut row = vec![ring.zero(); n];
    for (k, c) in raw {
        let k = *k;
        ring.check(c)?;
        if c.is_zero() {
            continue;
        }
        if k < start || k >= n {
            return Err(AlgebraError::BadIndex {
                relation: relation.to_string(),
                detail: format!(
                    "a{} may not occur, allowed are a{}..a{}",
                    k + 1,
                    start + 1,
                    n
                ),
            });
        }
        if !row[k].is_zero() {
            return Err(AlgebraError::BadIndex {
                relation: relation.to_string(),
                detail: format!("a{} occurs twice", k + 1),
            });
        }
        if let (RelativeOrder::Finite(r), Scalar::Integer(v)) = (&orders[k], c) {
            if v < &BigInt::from(0) || v >= r {
                return Err(AlgebraError::ExponentOutOfRange {
                    relation: relation.to_string(),
                    generator: k,
                    value: c.clone(),
                    order: r.clone(),
                });
            }
        }
        row[k] = c.clone();
    }
    Ok(row)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraFamily {
    A1,
    A2,
    A3,
}

/// Test equations with 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraTestEquation {
    /// `c(a_k c(a_j a_i)) = c(c(a_k a_j) a_i)`.
    A1 { i: usize, j: usize, k: usize },
    /// `c(r_j c(a_j a_i)) = c(c(r_j a_j) a_i)`, `r_j` finite.
    A2 { i: usize, j: usize },
    /// `c(r_i c(a_j a_i)) = c(a_j c(r_i a_i))`, `r_i` finite.
    A3 { i: usize, j: usize },
}

impl AlgebraTestEquation {
    pub fn family(&self) -> AlgebraFamily {
        match self {
            AlgebraTestEquation::A1 { .. } => AlgebraFamily::A1,
            AlgebraTestEquation::A2 { .. } => AlgebraFamily::A2,
            AlgebraTestEquation::A3 { .. } => AlgebraFamily::A3,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self.family() {
            AlgebraFamily::A1 => "A1",
            AlgebraFamily::A2 => "A2",
            AlgebraFamily::A3 => "A3",
        }
    }

    /// 1-based indices in the order `i, j, k`.
    pub fn indices(&self) -> Vec<usize> {
        match *self {
            AlgebraTestEquation::A1 { i, j, k } => vec![i + 1, j + 1, k + 1],
            AlgebraTestEquation::A2 { i, j } | AlgebraTestEquation::A3 { i, j } => {
                vec![i + 1, j + 1]
            }
        }
    }
}

impl fmt::Display for AlgebraTestEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraTestEquation::A1 { i, j, k } => {
                write!(f, "A1(i={},j={},k={})", i + 1, j + 1, k + 1)
            }
            AlgebraTestEquation::A2 { i, j } => write!(f, "A2(i={},j={})", i + 1, j + 1),
            AlgebraTestEquation::A3 { i, j } => write!(f, "A3(i={},j={})", i + 1, j + 1),
        }
    }
}

/// Test equations meeting the weight and finiteness side conditions. `A1`
/// by `(i, j, k)`, then `A2`, `A3` by `(i, j)`; all index tuples range over
/// `1..n` independently.
pub fn enumerate_algebra_test_equations(
    p: &AlgebraPresentation,
    w: &WeightAssignment,
) -> Vec<AlgebraTestEquation> {
    let n = p.generator_count();
    let d = w.max_weight;
    let finite = |i: usize| p.orders[i].is_finite();
    let mut ids = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if w.weight(i) + w.weight(j) + w.weight(k) <= d {
                    ids.push(AlgebraTestEquation::A1 { i, j, k });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if finite(j) && w.weight(i) + w.weight(j) <= d {
                ids.push(AlgebraTestEquation::A2 { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if finite(i) && w.weight(i) + w.weight(j) <= d {
                ids.push(AlgebraTestEquation::A3 { i, j });
            }
        }
    }
    ids
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraEquationResult {
    pub id: AlgebraTestEquation,
    pub lhs: FreeElement,
    pub rhs: FreeElement,
    pub lhs_nf: NormalVector,
    pub rhs_nf: NormalVector,
}

impl AlgebraEquationResult {
    pub fn pass(&self) -> bool {
        self.lhs_nf == self.rhs_nf
    }
}

impl AlgebraPresentation {
    fn word(&self, letters: &[usize]) -> FreeElement {
        FreeElement::term(self.ring.one(), letters.to_vec())
    }

    fn scaled(&self, lambda: &Scalar, v: &NormalVector) -> FreeElement {
        FreeElement {
            terms: FreeElement::from_vector(v)
                .terms
                .into_iter()
                .map(|(c, w)| (self.mul(lambda, &c), w))
                .filter(|(c, _)| !c.is_zero())
                .collect(),
        }
    }

    /// Both sides of `id` with the inner collections already carried out.
    pub fn equation_sides(
        &self,
        id: AlgebraTestEquation,
    ) -> Result<(FreeElement, FreeElement), AlgebraError> {
        let order = |i: usize| -> Scalar {
            let r = self.orders[i]
                .value()
                .expect("finite order required by the equation");
            self.ring.from_int(r)
        };
        let c = |letters: &[usize]| self.normalize(&self.word(letters));
        Ok(match id {
            AlgebraTestEquation::A1 { i, j, k } => {
                let inner_right = FreeElement::from_vector(&c(&[j, i])?);
                let inner_left = FreeElement::from_vector(&c(&[k, j])?);
                (
                    self.product_expansion(&self.word(&[k]), &inner_right),
                    self.product_expansion(&inner_left, &self.word(&[i])),
                )
            }
            AlgebraTestEquation::A2 { i, j } => {
                let rj = order(j);
                let power = self.normalize(&FreeElement::term(rj.clone(), vec![j]))?;
                (
                    self.scaled(&rj, &c(&[j, i])?),
                    self.product_expansion(&FreeElement::from_vector(&power), &self.word(&[i])),
                )
            }
            AlgebraTestEquation::A3 { i, j } => {
                let ri = order(i);
                let power = self.normalize(&FreeElement::term(ri.clone(), vec![i]))?;
                (
                    self.scaled(&ri, &c(&[j, i])?),
                    self.product_expansion(&self.word(&[j]), &FreeElement::from_vector(&power)),
                )
            }
        })
    }

    pub fn check_equation(
        &self,
        id: AlgebraTestEquation,
    ) -> Result<AlgebraEquationResult, AlgebraError> {
        let (lhs, rhs) = self.equation_sides(id)?;
        let lhs_nf = self.normalize(&lhs)?;
        let rhs_nf = self.normalize(&rhs)?;
        Ok(AlgebraEquationResult {
            id,
            lhs,
            rhs,
            lhs_nf,
            rhs_nf,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraCheckOptions {
    pub fail_fast: bool,
    pub excluded: Vec<AlgebraFamily>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraConsistencyReport {
    pub weights: WeightAssignment,
    pub failures: Vec<AlgebraEquationResult>,
    pub evaluated: usize,
}

impl AlgebraConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_algebra_consistency(
    p: &AlgebraPresentation,
    options: &AlgebraCheckOptions,
) -> Result<AlgebraConsistencyReport, AlgebraError> {
    let weights = p.compute_weights()?;
    let mut failures = Vec::new();
    let mut evaluated = 0;
    for id in enumerate_algebra_test_equations(p, &weights)
        .into_iter()
        .filter(|id| !options.excluded.contains(&id.family()))
    {
        evaluated += 1;
        let result = p.check_equation(id)?;
        if !result.pass() {
            failures.push(result);
            if options.fail_fast {
                break;
            }
        }
    }
    Ok(AlgebraConsistencyReport {
        weights,
        failures,
        evaluated,
    })
}

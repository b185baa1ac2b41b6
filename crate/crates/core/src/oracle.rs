//! Brute-force consistency check for finite instances.
//!
//! A finite presentation is consistent exactly when its `prod r_i` reduced
//! forms, multiplied by collecting concatenations, form a group. The oracle
//! builds that multiplication table and checks the group axioms on every
//! element, pair and triple. It never looks at test equations or weights.
//! For algebras it checks associativity of the structure constants on all
//! basis triples (plus the module compatibilities over `Z`).

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraPresentation, FreeElement, NormalVector};
use crate::collector::{CollectError, Collector};
use crate::presentation::GroupPresentation;
use crate::word::NormalWord;

pub const DEFAULT_GROUP_CAP: usize = 4096;
pub const DEFAULT_ALGEBRA_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("g{} has infinite relative order; the oracle needs a finite presentation", .0 + 1)]
    InfiniteOrder(usize),
    #[error("instance size {size} exceeds the cap {cap}")]
    CapExceeded { size: String, cap: usize },
    #[error(transparent)]
    Collect(#[from] CollectError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Multiplication table on all exponent vectors `0 <= x_i < r_i`, listed
/// lexicographically (first exponent most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    pub elements: Vec<NormalWord>,
    radices: Vec<usize>,
    table: Vec<u32>,
}

impl MultiplicationTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    /// Position of `w` in `elements`, if it is a reduced form.
    pub fn index_of(&self, w: &NormalWord) -> Option<usize> {
        if w.len() != self.radices.len() {
            return None;
        }
        let mut idx = 0usize;
        for (x, &r) in w.exponents().iter().zip(&self.radices) {
            let x = x.to_usize().filter(|&x| x < r)?;
            idx = idx * r + x;
        }
        Some(idx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupWitness {
    /// `(a b) c != a (b c)`.
    Associativity {
        a: NormalWord,
        b: NormalWord,
        c: NormalWord,
        left: NormalWord,
        right: NormalWord,
    },
    /// `1 a != a` or `a 1 != a`.
    Identity { a: NormalWord, product: NormalWord },
    /// No two-sided inverse of `a` among the reduced forms.
    Inverse { a: NormalWord },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraWitness {
    /// `(a_i a_j) a_k != a_i (a_j a_k)`; 0-based indices.
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        left: NormalVector,
        right: NormalVector,
    },
    /// A module compatibility `r (a_j a_i)` vs `(r a_j) a_i` or
    /// `a_j (r a_i)` failed.
    Module {
        i: usize,
        j: usize,
        left: NormalVector,
        right: NormalVector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport<W> {
    pub verdict: bool,
    pub order: BigInt,
    pub witness: Option<W>,
}

fn checked_order(p: &GroupPresentation, cap: usize) -> Result<Vec<usize>, OracleError> {
    let mut radices = Vec::with_capacity(p.generator_count());
    let mut size = BigInt::from(1);
    for (gen, r) in p.orders().iter().enumerate() {
        let r = r.value().ok_or(OracleError::InfiniteOrder(gen))?;
        size *= r;
        radices.push(r.to_usize().unwrap_or(usize::MAX));
    }
    if size > BigInt::from(cap) {
        return Err(OracleError::CapExceeded {
            size: size.to_string(),
            cap,
        });
    }
    Ok(radices)
}

/// All products `c(u v)` of reduced forms.
pub fn build_table(
    p: &GroupPresentation,
    cap: usize,
    budget: u64,
) -> Result<MultiplicationTable, OracleError> {
    let radices = checked_order(p, cap)?;
    let collector = Collector::new(p)?;
    let order: usize = radices.iter().product();
    let elements: Vec<NormalWord> = (0..order)
        .map(|mut idx| {
            let mut exps = vec![BigInt::from(0); radices.len()];
            for (slot, &r) in exps.iter_mut().zip(&radices).rev() {
                *slot = BigInt::from(idx % r);
                idx /= r;
            }
            NormalWord::from_exponents(exps)
        })
        .collect();
    let mut table = MultiplicationTable {
        elements,
        radices,
        table: Vec::new(),
    };
    let rows = (0..order)
        .into_par_iter()
        .map(|a| {
            (0..order)
                .map(|b| {
                    let prod =
                        collector.multiply(&table.elements[a], &table.elements[b], budget)?;
                    Ok(table
                        .index_of(&prod)
                        .expect("collection yields a reduced form") as u32)
                })
                .collect::<Result<Vec<u32>, CollectError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    table.table = rows.concat();
    Ok(table)
}

/// Checks identity, inverses and associativity on the table.
pub fn verify_group_axioms(
    p: &GroupPresentation,
    cap: usize,
    budget: u64,
) -> Result<OracleReport<GroupWitness>, OracleError> {
    let table = build_table(p, cap, budget)?;
    let order = table.order();
    let elem = |i: usize| table.elements[i].clone();
    let report = |witness: Option<GroupWitness>| OracleReport {
        verdict: witness.is_none(),
        order: BigInt::from(order),
        witness,
    };
    // Index 0 is the all-zero exponent vector, the empty word.
    for a in 0..order {
        for product in [table.product(0, a), table.product(a, 0)] {
            if product != a {
                return Ok(report(Some(GroupWitness::Identity {
                    a: elem(a),
                    product: elem(product),
                })));
            }
        }
    }
    for a in 0..order {
        let has_inverse = (0..order).any(|b| table.product(a, b) == 0 && table.product(b, a) == 0);
        if !has_inverse {
            return Ok(report(Some(GroupWitness::Inverse { a: elem(a) })));
        }
    }
    let failure = (0..order).into_par_iter().find_map_first(|a| {
        for b in 0..order {
            let ab = table.product(a, b);
            for c in 0..order {
                let left = table.product(ab, c);
                let right = table.product(a, table.product(b, c));
                if left != right {
                    return Some((a, b, c, left, right));
                }
            }
        }
        None
    });
    Ok(report(failure.map(|(a, b, c, left, right)| {
        GroupWitness::Associativity {
            a: elem(a),
            b: elem(b),
            c: elem(c),
            left: elem(left),
            right: elem(right),
        }
    })))
}

/// Checks `(a_i a_j) a_k = a_i (a_j a_k)` for all basis triples and, for
/// finite relative orders over `Z`, `r_j (a_j a_i) = (r_j a_j) a_i` and
/// `r_i (a_j a_i) = a_j (r_i a_i)` for all pairs. No weight filtering.
pub fn verify_algebra_axioms(
    p: &AlgebraPresentation,
    cap: usize,
) -> Result<OracleReport<AlgebraWitness>, OracleError> {
    let n = p.generator_count();
    if n > cap {
        return Err(OracleError::CapExceeded {
            size: n.to_string(),
            cap,
        });
    }
    let ring = p.ring();
    let basis: Vec<NormalVector> = (0..n).map(|g| p.basis(g)).collect();
    let report = |witness: Option<AlgebraWitness>| OracleReport {
        verdict: witness.is_none(),
        order: BigInt::from(n),
        witness,
    };
    let products: Vec<NormalVector> = (0..n * n)
        .map(|ij| p.multiply(&basis[ij / n], &basis[ij % n]))
        .collect::<Result<_, _>>()?;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = p.multiply(&products[i * n + j], &basis[k])?;
                let right = p.multiply(&basis[i], &products[j * n + k])?;
                if left != right {
                    return Ok(report(Some(AlgebraWitness::Associativity {
                        i,
                        j,
                        k,
                        left,
                        right,
                    })));
                }
            }
        }
    }
    let times_order = |g: usize| -> Option<Result<NormalVector, AlgebraError>> {
        let r = p.orders()[g].value()?;
        Some(p.normalize(&FreeElement::term(ring.from_int(r), vec![g])))
    };
    for i in 0..n {
        for j in 0..n {
            let ji = &products[j * n + i];
            if let Some(rj_aj) = times_order(j) {
                let r = ring.from_int(p.orders()[j].value().expect("finite"));
                let left = p.scalar_mul(&r, ji)?;
                let right = p.multiply(&rj_aj?, &basis[i])?;
                if left != right {
                    return Ok(report(Some(AlgebraWitness::Module { i, j, left, right })));
                }
            }
            if let Some(ri_ai) = times_order(i) {
                let r = ring.from_int(p.orders()[i].value().expect("finite"));
                let left = p.scalar_mul(&r, ji)?;
                let right = p.multiply(&basis[j], &ri_ai?)?;
                if left != right {
                    return Ok(report(Some(AlgebraWitness::Module { i, j, left, right })));
                }
            }
        }
    }
    Ok(report(None))
}

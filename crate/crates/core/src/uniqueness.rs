//! Bounded-degree search for deformations `A² + B² + C² = 3ABC + P·ε` that
//! survive mutation.
//!
//! The unknowns are the coefficients `P_ijk` with `i, j, k ≤ D`. Mutation at
//! a slot preserves the deformation exactly when the cleared identity
//! `X·P(X', ·, ·) = X'·P(X, ·, ·)` holds, which is linear in the unknowns.
//! Collecting it coefficient by coefficient gives a rational linear system
//! whose nullspace is the space of invariant `P`.
//!
//! Deformations that differ by a multiple of the Markov polynomial
//! `M = A² + B² + C² − 3ABC` define the same equation over the dual numbers
//! (`M = Pε` forces `M·Q·ε = 0`), so the report also gives the nullspace
//! modulo such multiples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg;
use crate::markov::Slot;
use crate::poly::{Monomial, TriPoly};

/// Which mutations the deformation must survive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotSelection {
    /// Only the mutation of `A`.
    AOnly,
    /// Mutations of `A`, `B` and `C`.
    All,
}

impl SlotSelection {
    pub fn slots(self) -> &'static [Slot] {
        match self {
            SlotSelection::AOnly => &[Slot::A],
            SlotSelection::All => &Slot::ALL,
        }
    }
}

impl fmt::Display for SlotSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlotSelection::AOnly => "a",
            SlotSelection::All => "all",
        })
    }
}

impl FromStr for SlotSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "a" | "A" | "a_only" => Ok(SlotSelection::AOnly),
            "all" => Ok(SlotSelection::All),
            other => Err(Error::Parse(format!(
                "invalid slot selection {other:?}, expected a or all"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub max_degree: u32,
    pub slots: SlotSelection,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Dimension of the space of invariant `P` inside the degree box.
    pub nullspace_dimension: usize,
    pub basis: Vec<TriPoly>,
    /// Invariant `P` that are multiples of the Markov polynomial.
    pub markov_multiple_dimension: usize,
    pub markov_multiple_basis: Vec<TriPoly>,
    /// `nullspace_dimension − markov_multiple_dimension`.
    pub reduced_dimension: usize,
    /// Representatives of the invariant deformations modulo Markov multiples.
    pub reduced_basis: Vec<TriPoly>,
}

impl InvarianceReport {
    /// Whether every invariant deformation is a multiple of `ABC` modulo the
    /// Markov polynomial.
    pub fn reduces_to_abc(&self) -> bool {
        self.reduced_dimension == 1 && self.reduced_basis[0] == TriPoly::monomial(1, 1, 1)
    }
}

impl fmt::Display for InvarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max degree per variable: {}", self.max_degree)?;
        writeln!(f, "mutated slots: {}", self.slots)?;
        writeln!(
            f,
            "unknowns: {}, equations: {}, rank: {}",
            self.unknowns, self.equations, self.rank
        )?;
        writeln!(f, "nullspace dimension: {}", self.nullspace_dimension)?;
        for p in &self.basis {
            writeln!(f, "  {p}")?;
        }
        writeln!(
            f,
            "multiples of A^2 + B^2 + C^2 - 3*A*B*C: {}",
            self.markov_multiple_dimension
        )?;
        writeln!(
            f,
            "dimension modulo the Markov polynomial: {}",
            self.reduced_dimension
        )?;
        for p in &self.reduced_basis {
            writeln!(f, "  {p}")?;
        }
        Ok(())
    }
}

/// All monomials with every exponent `≤ max_degree`, in increasing graded-lex order.
pub fn unknown_monomials(max_degree: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..=max_degree)
        .flat_map(|a| {
            (0..=max_degree)
                .flat_map(move |b| (0..=max_degree).map(move |c| Monomial::new(a, b, c)))
        })
        .collect();
    out.sort();
    out
}

/// Linear system whose kernel is the set of `P = Σ x_k · factor · m_k`
/// (over `monomials`) satisfying the invariance identity at every slot.
/// Column `k` corresponds to `monomials[k]`.
fn constraint_rows(
    monomials: &[Monomial],
    factor: &TriPoly,
    slots: &[Slot],
) -> Vec<Vec<BigRational>> {
    let columns: Vec<Vec<TriPoly>> = monomials
        .par_iter()
        .map(|m| {
            let p = factor * &TriPoly::term(*m, num_traits::One::one());
            slots.iter().map(|&s| p.invariance_constraint(s)).collect()
        })
        .collect();
    let mut rows: BTreeMap<(usize, Monomial), Vec<BigRational>> = BTreeMap::new();
    for (k, per_slot) in columns.iter().enumerate() {
        for (si, constraint) in per_slot.iter().enumerate() {
            for (mono, c) in constraint.terms() {
                rows.entry((si, *mono))
                    .or_insert_with(|| vec![BigRational::zero(); monomials.len()])[k] = c.clone();
            }
        }
    }
    rows.into_values().collect()
}

/// Kernel vectors as polynomials `factor · Σ v_k m_k`, made primitive and
/// sorted by leading monomial.
fn to_polys(
    vectors: Vec<Vec<BigRational>>,
    monomials: &[Monomial],
    factor: &TriPoly,
) -> Vec<TriPoly> {
    let mut polys: Vec<TriPoly> = vectors
        .into_iter()
        .map(|v| {
            let h = TriPoly::from_terms(monomials.iter().copied().zip(v));
            (factor * &h).primitive()
        })
        .collect();
    polys.sort_by(|p, q| p.leading().map(|l| *l.0).cmp(&q.leading().map(|l| *l.0)));
    polys
}

fn coordinates(p: &TriPoly, monomials: &[Monomial]) -> Vec<BigRational> {
    monomials.iter().map(|m| p.coeff(m)).collect()
}

fn invariant_polys(
    monomials: &[Monomial],
    factor: &TriPoly,
    slots: &[Slot],
) -> (usize, Vec<TriPoly>) {
    // Eliminating from the highest monomial down leaves the low-degree
    // monomials free, so basis vectors come out as simple as possible.
    let reversed: Vec<Monomial> = monomials.iter().rev().copied().collect();
    let rows = constraint_rows(&reversed, factor, slots);
    let equations = rows.len();
    let kernel = linalg::nullspace(rows, reversed.len());
    (equations, to_polys(kernel, &reversed, factor))
}

pub fn certify_uniqueness(max_degree: u32, slots: SlotSelection) -> InvarianceReport {
    let monomials = unknown_monomials(max_degree);
    let (equations, basis) = invariant_polys(&monomials, &TriPoly::one(), slots.slots());

    let markov_multiple_basis = if max_degree >= 2 {
        invariant_polys(
            &unknown_monomials(max_degree - 2),
            &TriPoly::markov(),
            slots.slots(),
        )
        .1
    } else {
        Vec::new()
    };

    // Greedily extend the Markov multiples by kernel vectors, lowest leading
    // monomial first; the ones that raise the rank represent the quotient.
    let mut spanning: Vec<Vec<BigRational>> = markov_multiple_basis
        .iter()
        .map(|p| coordinates(p, &monomials))
        .collect();
    let mut current_rank = linalg::rank(spanning.clone(), monomials.len());
    let mut reduced_basis = Vec::new();
    for p in &basis {
        spanning.push(coordinates(p, &monomials));
        let r = linalg::rank(spanning.clone(), monomials.len());
        if r > current_rank {
            current_rank = r;
            reduced_basis.push(p.clone());
        } else {
            spanning.pop();
        }
    }

    InvarianceReport {
        max_degree,
        slots,
        unknowns: monomials.len(),
        equations,
        rank: monomials.len() - basis.len(),
        nullspace_dimension: basis.len(),
        markov_multiple_dimension: markov_multiple_basis.len(),
        reduced_dimension: basis.len() - markov_multiple_basis.len(),
        basis,
        markov_multiple_basis,
        reduced_basis,
    }
}

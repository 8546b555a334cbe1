//! Mutations of dual triples and the generalized shadow Markov equation
//! `A² + B² + C² = X·ABC`.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::dual::DualInt;
use crate::error::{Error, Result};
use crate::init_space::InitialTriple;

/// Position inside a triple. Serialized as its index `0`, `1` or `2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub enum Slot {
    A,
    B,
    C,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::A, Slot::B, Slot::C];

    pub fn index(self) -> usize {
        match self {
            Slot::A => 0,
            Slot::B => 1,
            Slot::C => 2,
        }
    }

    /// The two other slots, in increasing order.
    pub fn others(self) -> (Slot, Slot) {
        match self {
            Slot::A => (Slot::B, Slot::C),
            Slot::B => (Slot::A, Slot::C),
            Slot::C => (Slot::A, Slot::B),
        }
    }
}

impl TryFrom<usize> for Slot {
    type Error = Error;
    fn try_from(i: usize) -> Result<Slot> {
        match i {
            0 => Ok(Slot::A),
            1 => Ok(Slot::B),
            2 => Ok(Slot::C),
            _ => Err(Error::InvalidSlot(i)),
        }
    }
}

impl From<Slot> for usize {
    fn from(s: Slot) -> usize {
        s.index()
    }
}

impl FromStr for Slot {
    type Err = Error;
    fn from_str(s: &str) -> Result<Slot> {
        match s.trim() {
            "0" | "a" | "A" => Ok(Slot::A),
            "1" | "b" | "B" => Ok(Slot::B),
            "2" | "c" | "C" => Ok(Slot::C),
            other => Err(Error::Parse(format!("invalid slot {other:?}"))),
        }
    }
}

/// An ordered triple `(A, B, C)` of dual integers.
///
/// Being a solution is a predicate ([`residual`]), not a construction
/// invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualTriple {
    #[serde(rename = "A")]
    pub a: DualInt,
    #[serde(rename = "B")]
    pub b: DualInt,
    #[serde(rename = "C")]
    pub c: DualInt,
}

impl DualTriple {
    pub fn new(a: DualInt, b: DualInt, c: DualInt) -> Self {
        DualTriple { a, b, c }
    }

    pub fn from_array([a, b, c]: [DualInt; 3]) -> Self {
        DualTriple { a, b, c }
    }

    pub fn to_array(&self) -> [DualInt; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &DualInt> {
        [&self.a, &self.b, &self.c].into_iter()
    }

    pub fn reals(&self) -> [BigInt; 3] {
        [
            self.a.real.clone(),
            self.b.real.clone(),
            self.c.real.clone(),
        ]
    }

    pub fn shadows(&self) -> [BigInt; 3] {
        [
            self.a.shadow.clone(),
            self.b.shadow.clone(),
            self.c.shadow.clone(),
        ]
    }

    /// Reorders the slots: entry `i` of the result is entry `order[i]` of `self`.
    pub fn permute(&self, order: [Slot; 3]) -> DualTriple {
        DualTriple::new(
            self[order[0]].clone(),
            self[order[1]].clone(),
            self[order[2]].clone(),
        )
    }

    pub fn swap(&self, i: Slot, j: Slot) -> DualTriple {
        let mut out = self.clone();
        let tmp = out[i].clone();
        out[i] = out[j].clone();
        out[j] = tmp;
        out
    }
}

impl Index<Slot> for DualTriple {
    type Output = DualInt;
    fn index(&self, s: Slot) -> &DualInt {
        match s {
            Slot::A => &self.a,
            Slot::B => &self.b,
            Slot::C => &self.c,
        }
    }
}

impl IndexMut<Slot> for DualTriple {
    fn index_mut(&mut self, s: Slot) -> &mut DualInt {
        match s {
            Slot::A => &mut self.a,
            Slot::B => &mut self.b,
            Slot::C => &mut self.c,
        }
    }
}

impl fmt::Display for DualTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for DualTriple {
    type Err = Error;

    /// Comma-separated dual integers, e.g. `1+1e, 2+4e, 5+13e`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected three comma-separated dual integers, got {s:?}"
            )));
        }
        Ok(DualTriple::new(
            parts[0].parse()?,
            parts[1].parse()?,
            parts[2].parse()?,
        ))
    }
}

/// `A² + B² + C² − X·ABC` for some coefficient `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub value: DualInt,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// Exchange relation `A' = (B² + C²) / A` at `slot`, computed with exact
/// dual division.
pub fn mutate(t: &DualTriple, slot: Slot) -> Result<DualTriple> {
    let (i, j) = slot.others();
    let numerator = &t[i].square() + &t[j].square();
    let replaced = numerator.exact_div(&t[slot])?;
    let mut out = t.clone();
    out[slot] = replaced;
    Ok(out)
}

/// Division-free form `A' = X·BC − A`, which agrees with [`mutate`] whenever
/// `t` solves `A² + B² + C² = X·ABC`.
pub fn mutate_linear(t: &DualTriple, slot: Slot, x: &DualInt) -> DualTriple {
    let (i, j) = slot.others();
    let replaced = &(x * &(&t[i] * &t[j])) - &t[slot];
    let mut out = t.clone();
    out[slot] = replaced;
    out
}

pub fn residual(t: &DualTriple, x: &DualInt) -> Residual {
    let lhs: DualInt = t.iter().map(DualInt::square).sum();
    let product: DualInt = t.iter().cloned().product();
    Residual {
        value: &lhs - &(x * &product),
    }
}

/// Residual against `X = 3 − σε` for the given seed.
pub fn seed_residual(t: &DualTriple, seed: &InitialTriple) -> Residual {
    residual(t, &seed.deformation_coefficient())
}

/// `X = (A² + B² + C²) / ABC` when the division is exact.
pub fn infer_coefficient(t: &DualTriple) -> Result<DualInt> {
    let lhs: DualInt = t.iter().map(DualInt::square).sum();
    let product: DualInt = t.iter().cloned().product();
    lhs.exact_div(&product)
}

pub fn is_classical_markov(a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    a * a + b * b + c * c == BigInt::from(3) * a * b * c
}

/// Outcome of [`reduce_to_fundamental`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descent {
    /// The triple `(1 + α'ε, 1 + β'ε, 1 + γ'ε)` reached.
    pub terminal: DualTriple,
    /// Slots mutated, in the order the descent applied them.
    pub moves: Vec<Slot>,
}

impl Descent {
    /// Rebuilds the starting triple from the terminal one.
    pub fn replay(&self) -> Result<DualTriple> {
        replay(&self.terminal, &self.moves)
    }
}

/// Repeatedly mutates the slot holding the strictly largest real part until
/// every real part equals 1. Ties go to the lowest index.
pub fn reduce_to_fundamental(t: &DualTriple) -> Result<Descent> {
    let [a, b, c] = t.reals();
    if !(a.is_positive() && b.is_positive() && c.is_positive()) || !is_classical_markov(&a, &b, &c)
    {
        return Err(Error::NotMarkov(format!("{a},{b},{c}")));
    }
    let mut current = t.clone();
    let mut moves = Vec::new();
    while current.iter().any(|x| !x.real.is_one()) {
        let slot = max_real_slot(&current);
        let before = current[slot].real.clone();
        let next = mutate(&current, slot)?;
        let after = next.iter().map(|x| &x.real).max().expect("three entries");
        if *after >= before {
            return Err(Error::DescentStuck {
                triple: current.to_string(),
                slot: slot.index(),
            });
        }
        current = next;
        moves.push(slot);
    }
    Ok(Descent {
        terminal: current,
        moves,
    })
}

fn max_real_slot(t: &DualTriple) -> Slot {
    Slot::ALL.into_iter().fold(
        Slot::A,
        |best, s| if t[s].real > t[best].real { s } else { best },
    )
}

/// Applies a descent log backwards; mutations are involutions.
pub fn replay(terminal: &DualTriple, moves: &[Slot]) -> Result<DualTriple> {
    moves
        .iter()
        .rev()
        .try_fold(terminal.clone(), |t, &slot| mutate(&t, slot))
}

/// Residual of the Huang–Penner–Zeitlin equation
/// `a² + b² + c² + (ab + bc + ac)ε = 3(1 + ε)abc`, as
/// `(a² + b² + c² − 3abc) + (ab + bc + ac − 3abc)ε`.
pub fn hpz_residual(a: &BigInt, b: &BigInt, c: &BigInt) -> DualInt {
    let three_abc = BigInt::from(3) * a * b * c;
    DualInt {
        real: a * a + b * b + c * c - &three_abc,
        shadow: a * b + b * c + a * c - three_abc,
    }
}

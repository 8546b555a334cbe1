//! Seeds `(α₁, β₁, γ₁)`, linearity of shadows in the seed, the
//! `{(0,1,1), (1,1,1), (0,1,0)}` basis and the positivity search.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dual::DualInt;
use crate::error::{Error, Result};
use crate::markov::DualTriple;
use crate::tree::{node_at, subtree, TreePath};

/// Shadows of the fundamental triple `(1 + α₁ε, 1 + β₁ε, 1 + γ₁ε)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InitialTriple {
    pub alpha1: BigInt,
    pub beta1: BigInt,
    pub gamma1: BigInt,
}

impl InitialTriple {
    pub fn new(
        alpha1: impl Into<BigInt>,
        beta1: impl Into<BigInt>,
        gamma1: impl Into<BigInt>,
    ) -> Self {
        InitialTriple {
            alpha1: alpha1.into(),
            beta1: beta1.into(),
            gamma1: gamma1.into(),
        }
    }

    /// The seed used for the classical shadow Markov numbers.
    pub fn standard() -> Self {
        InitialTriple::new(0, 1, 1)
    }

    pub fn sigma(&self) -> BigInt {
        &self.alpha1 + &self.beta1 + &self.gamma1
    }

    /// `3 − σε`.
    pub fn deformation_coefficient(&self) -> DualInt {
        DualInt::new(3, -self.sigma())
    }

    pub fn fundamental_triple(&self) -> DualTriple {
        DualTriple::new(
            DualInt::unit_with_shadow(self.alpha1.clone()),
            DualInt::unit_with_shadow(self.beta1.clone()),
            DualInt::unit_with_shadow(self.gamma1.clone()),
        )
    }

    pub fn components(&self) -> [&BigInt; 3] {
        [&self.alpha1, &self.beta1, &self.gamma1]
    }

    /// `m·self + n·other`.
    pub fn combine(&self, m: &BigInt, other: &InitialTriple, n: &BigInt) -> InitialTriple {
        InitialTriple {
            alpha1: m * &self.alpha1 + n * &other.alpha1,
            beta1: m * &self.beta1 + n * &other.beta1,
            gamma1: m * &self.gamma1 + n * &other.gamma1,
        }
    }
}

impl fmt::Display for InitialTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.alpha1, self.beta1, self.gamma1)
    }
}

impl FromStr for InitialTriple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("invalid seed {s:?}")))?;
        match <[BigInt; 3]>::try_from(parts) {
            Ok([a, b, c]) => Ok(InitialTriple::new(a, b, c)),
            Err(_) => Err(Error::Parse(format!(
                "seed {s:?} needs exactly three integers"
            ))),
        }
    }
}

/// Shadow of a node's newest region as `α₁·u + β₁·v + γ₁·t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowCoefficients {
    pub u: BigInt,
    pub v: BigInt,
    pub t: BigInt,
}

impl ShadowCoefficients {
    pub fn evaluate(&self, seed: &InitialTriple) -> BigInt {
        &self.u * &seed.alpha1 + &self.v * &seed.beta1 + &self.t * &seed.gamma1
    }
}

/// Fixed seed used to cross-check the coefficients read off the unit seeds.
const CHECK_SEED: (i64, i64, i64) = (7, -3, 11);

pub fn shadow_coefficients(path: &TreePath) -> Result<ShadowCoefficients> {
    let shadow = |s: InitialTriple| node_at(&s, path).map(|n| n.state.newest.shadow);
    let coeffs = ShadowCoefficients {
        u: shadow(InitialTriple::new(1, 0, 0))?,
        v: shadow(InitialTriple::new(0, 1, 0))?,
        t: shadow(InitialTriple::new(0, 0, 1))?,
    };
    let check = InitialTriple::new(CHECK_SEED.0, CHECK_SEED.1, CHECK_SEED.2);
    let expected = coeffs.evaluate(&check);
    let found = shadow(check)?;
    if expected != found {
        return Err(Error::LinearityViolation {
            path: path.to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
    Ok(coeffs)
}

/// The basis seeds `(0,1,1)`, `(1,1,1)`, `(0,1,0)`, in that order.
pub fn basis_seeds() -> [InitialTriple; 3] {
    [
        InitialTriple::new(0, 1, 1),
        InitialTriple::new(1, 1, 1),
        InitialTriple::new(0, 1, 0),
    ]
}

/// Coordinates `(x, y, z)` with `seed = x·(0,1,1) + y·(1,1,1) + z·(0,1,0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCoefficients {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl BasisCoefficients {
    pub fn recombine(&self) -> InitialTriple {
        let [b0, b1, b2] = basis_seeds();
        let zero = InitialTriple::default();
        let one = BigInt::from(1);
        let partial = zero.combine(&one, &b0, &self.x);
        let partial = partial.combine(&one, &b1, &self.y);
        partial.combine(&one, &b2, &self.z)
    }

    /// Combines per-basis values with these coordinates.
    pub fn apply(&self, values: [&BigInt; 3]) -> BigInt {
        &self.x * values[0] + &self.y * values[1] + &self.z * values[2]
    }
}

/// The basis matrix has determinant −1, so coordinates are always integral:
/// `y = α₁`, `x = γ₁ − α₁`, `z = β₁ − γ₁`.
pub fn decompose(seed: &InitialTriple) -> BasisCoefficients {
    BasisCoefficients {
        x: &seed.gamma1 - &seed.alpha1,
        y: seed.alpha1.clone(),
        z: &seed.beta1 - &seed.gamma1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    AllPositive,
    /// First generated region, breadth-first, with shadow `≤ 0`.
    Violation {
        path: TreePath,
        value: DualInt,
        /// Shadow is exactly zero rather than negative.
        zero: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub seed: InitialTriple,
    pub depth: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl PositivityReport {
    pub fn is_all_positive(&self) -> bool {
        self.verdict == Verdict::AllPositive
    }
}

/// Checks the newest region of every node to `depth`. Seed regions are exempt.
pub fn check_positivity(seed: &InitialTriple, depth: usize) -> Result<PositivityReport> {
    let verdict = subtree(seed, depth)?
        .into_iter()
        .find(|n| !n.state.newest.shadow.is_positive())
        .map_or(Verdict::AllPositive, |n| Verdict::Violation {
            zero: n.state.newest.shadow.is_zero(),
            path: n.path,
            value: n.state.newest,
        });
    Ok(PositivityReport {
        seed: seed.clone(),
        depth,
        verdict,
    })
}

/// Every seed in `[−bound, bound]³`, lexicographic in `(α₁, β₁, γ₁)`.
pub fn seed_cube(bound: u32) -> Vec<InitialTriple> {
    let b = i64::from(bound);
    let mut seeds = Vec::new();
    for a in -b..=b {
        for c1 in -b..=b {
            for c2 in -b..=b {
                seeds.push(InitialTriple::new(a, c1, c2));
            }
        }
    }
    seeds
}

/// Runs [`check_positivity`] over the seed cube. Seeds are checked in
/// parallel; the report order matches [`seed_cube`].
pub fn positivity_search(bound: u32, depth: usize) -> Result<Vec<PositivityReport>> {
    seed_cube(bound)
        .par_iter()
        .map(|s| check_positivity(s, depth))
        .collect()
}

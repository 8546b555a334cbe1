//! Sparse polynomials in `A, B, C` with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::markov::Slot;

/// Exponent triple `A^a B^b C^c`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, c: 0 };

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial { a, b, c }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b + self.c
    }

    pub fn exponent(&self, slot: Slot) -> u32 {
        match slot {
            Slot::A => self.a,
            Slot::B => self.b,
            Slot::C => self.c,
        }
    }

    pub fn with_exponent(mut self, slot: Slot, e: u32) -> Self {
        match slot {
            Slot::A => self.a = e,
            Slot::B => self.b = e,
            Slot::C => self.c = e,
        }
        self
    }

    pub fn max_exponent(&self) -> u32 {
        self.a.max(self.b).max(self.c)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b, self.c + other.c)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| (self.a, self.b, self.c).cmp(&(other.a, other.b, other.c)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (name, e) in [("A", self.a), ("B", self.b), ("C", self.c)] {
            match e {
                0 => {}
                1 => factors.push(name.to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// Sparse trivariate polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TriPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        TriPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        TriPoly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = TriPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(a: u32, b: u32, c: u32) -> Self {
        TriPoly::term(Monomial::new(a, b, c), BigRational::one())
    }

    pub fn var(slot: Slot) -> Self {
        TriPoly::term(Monomial::ONE.with_exponent(slot, 1), BigRational::one())
    }

    /// `A² + B² + C² − 3ABC`.
    pub fn markov() -> Self {
        let three = BigRational::from_integer(BigInt::from(3));
        TriPoly::monomial(2, 0, 0) + TriPoly::monomial(0, 2, 0) + TriPoly::monomial(0, 0, 2)
            - TriPoly::monomial(1, 1, 1).scale(&three)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = TriPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, slot: Slot) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(slot)).max()
    }

    pub fn scale(&self, k: &BigRational) -> TriPoly {
        if k.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> TriPoly {
        (0..e).fold(TriPoly::one(), |acc, _| &acc * self)
    }

    /// Scales to integer coefficients with gcd 1 and a positive leading
    /// coefficient.
    pub fn primitive(&self) -> TriPoly {
        let Some((_, lead)) = self.leading() else {
            return TriPoly::zero();
        };
        let denom_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer_gcd = self.terms.values().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * &denom_lcm / c.denom()))
        });
        let mut factor = BigRational::new(denom_lcm, numer_gcd);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Replaces the variable at `slot` by `3·(product of the other two) − itself`.
    pub fn substitute_mutation(&self, slot: Slot) -> TriPoly {
        let (i, j) = slot.others();
        let three = BigRational::from_integer(BigInt::from(3));
        let image = &(&TriPoly::var(i) * &TriPoly::var(j)).scale(&three) - &TriPoly::var(slot);
        let top = self.degree_in(slot).unwrap_or(0);
        let mut powers = vec![TriPoly::one()];
        for k in 1..=top as usize {
            powers.push(&powers[k - 1] * &image);
        }
        let mut out = TriPoly::zero();
        for (m, c) in &self.terms {
            let rest = TriPoly::term(m.with_exponent(slot, 0), c.clone());
            out = &out + &(&rest * &powers[m.exponent(slot) as usize]);
        }
        out
    }

    /// `X·P(X', ·, ·) − X'·P(X, ·, ·)` with `X' = 3·(other two) − X`; zero
    /// exactly when `P/X` is unchanged by the mutation at `slot`.
    pub fn invariance_constraint(&self, slot: Slot) -> TriPoly {
        let (i, j) = slot.others();
        let three = BigRational::from_integer(BigInt::from(3));
        let x = TriPoly::var(slot);
        let image = &(&TriPoly::var(i) * &TriPoly::var(j)).scale(&three) - &x;
        &(&x * &self.substitute_mutation(slot)) - &(&image * self)
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        self.scale(&-BigRational::one())
    }
}

macro_rules! owned_poly_op {
    ($trait:ident, $method:ident) => {
        impl $trait for TriPoly {
            type Output = TriPoly;
            fn $method(self, rhs: TriPoly) -> TriPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_poly_op!(Add, add);
owned_poly_op!(Sub, sub);
owned_poly_op!(Mul, mul);

impl fmt::Display for TriPoly {
    /// Highest graded-lex term first, e.g. `3*B^2*C^2 - A*B*C`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: [u32; 3],
    coefficient: String,
}

impl Serialize for TriPoly {
    /// A list of `{exponents: [i, j, k], coefficient: "p/q"}` in graded-lex order.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                exponents: [m.a, m.b, m.c],
                coefficient: c.to_string(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TriPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(deserializer)?;
        let mut p = TriPoly::zero();
        for t in raw {
            let c: BigRational = t.coefficient.parse().map_err(serde::de::Error::custom)?;
            p.add_term(
                Monomial::new(t.exponents[0], t.exponents[1], t.exponents[2]),
                c,
            );
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn m(a: u32, b: u32, c: u32) -> TriPoly {
        TriPoly::monomial(a, b, c)
    }

    #[test]
    fn graded_lex_order() {
        let mut ms = [
            Monomial::new(0, 0, 2),
            Monomial::new(1, 1, 1),
            Monomial::new(2, 0, 0),
            Monomial::ONE,
            Monomial::new(0, 1, 0),
            Monomial::new(1, 0, 0),
        ];
        ms.sort();
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "B", "A", "C^2", "A^2", "A*B*C"]);
    }

    #[test]
    fn substitution_examples() {
        let abc = m(1, 1, 1);
        assert_eq!(
            abc.substitute_mutation(Slot::A),
            m(0, 2, 2).scale(&q(3)) - m(1, 1, 1)
        );
        assert_eq!(TriPoly::one().substitute_mutation(Slot::A), TriPoly::one());
        assert_eq!(
            m(2, 0, 0).substitute_mutation(Slot::A),
            m(2, 0, 0) - m(1, 1, 1).scale(&q(6)) + m(0, 2, 2).scale(&q(9))
        );
        assert_eq!(
            m(2, 0, 0).substitute_mutation(Slot::A).to_string(),
            "9*B^2*C^2 - 6*A*B*C + A^2"
        );
    }

    #[test]
    fn constraint_examples() {
        assert!(m(1, 1, 1).invariance_constraint(Slot::A).is_zero());
        assert_eq!(
            TriPoly::one().invariance_constraint(Slot::A),
            m(1, 0, 0).scale(&q(2)) - m(0, 1, 1).scale(&q(3))
        );
        assert!(TriPoly::zero().invariance_constraint(Slot::A).is_zero());
    }

    #[test]
    fn higher_powers_of_the_mutated_variable_are_never_invariant() {
        for i in 2..6 {
            for j in 0..3 {
                for k in 0..3 {
                    for slot in Slot::ALL {
                        let mono = TriPoly::term(
                            Monomial::ONE
                                .with_exponent(slot, i)
                                .with_exponent(slot.others().0, j)
                                .with_exponent(slot.others().1, k),
                            q(1),
                        );
                        assert!(!mono.invariance_constraint(slot).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn markov_polynomial_is_invariant_under_every_substitution() {
        let markov = TriPoly::markov();
        for slot in Slot::ALL {
            assert_eq!(markov.substitute_mutation(slot), markov);
        }
    }

    #[test]
    fn display_and_primitive() {
        let p = m(0, 2, 2).scale(&q(3)) - m(1, 1, 1);
        assert_eq!(p.to_string(), "3*B^2*C^2 - A*B*C");
        let half = BigRational::new(BigInt::from(-1), BigInt::from(2));
        let r = m(1, 0, 0).scale(&half) + TriPoly::constant(q(3));
        assert_eq!(r.primitive().to_string(), "A - 6");
        assert_eq!(TriPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = TriPoly::markov();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains(r#"{"exponents":[1,1,1],"coefficient":"-3"}"#));
        let back: TriPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    fn arb_poly() -> impl Strategy<Value = TriPoly> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(|terms| {
            TriPoly::from_terms(
                terms
                    .into_iter()
                    .map(|((a, b, c), k)| (Monomial::new(a, b, c), q(k))),
            )
        })
    }

    proptest! {
        #[test]
        fn substitution_is_an_involution(p in arb_poly()) {
            for slot in Slot::ALL {
                prop_assert_eq!(p.substitute_mutation(slot).substitute_mutation(slot), p.clone());
            }
        }

        #[test]
        fn no_zero_coefficients_stored(p in arb_poly(), r in arb_poly()) {
            let prod = &p * &r;
            let diff = &prod - &prod;
            prop_assert!(diff.is_zero());
            prop_assert!(prod.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn constraint_is_linear(p in arb_poly(), r in arb_poly()) {
            let lhs = (&p + &r).invariance_constraint(Slot::A);
            let rhs = &p.invariance_constraint(Slot::A) + &r.invariance_constraint(Slot::A);
            prop_assert_eq!(lhs, rhs);
        }
    }
}

//! Sparse rational linear combinations over an ordered basis.
//!
//! Scalars are arbitrary-precision rationals, so every equality in the crate
//! is exact. A [`LinComb`] never stores a zero coefficient; two combinations
//! are equal iff they are equal as maps. The [`Basis`] trait abstracts what
//! the rest of the crate needs from a basis family: a unit, a partial
//! product (`None` encodes the zero of the algebra), and a word length.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chains::Chain;
use crate::error::{Error, Result};
use crate::semigroup::{cuntz_mul, free_mul, CuntzMonomial, FreeWord};

pub mod parse;

/// Exact rational scalar, always reduced with positive denominator.
pub type Scalar = num_rational::BigRational;

pub fn scalar_int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn scalar(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

/// A basis family with a unit, a partial product and a length function.
pub trait Basis: Clone + Ord + fmt::Display {
    fn unit() -> Self;

    /// Product of basis elements; `None` is the zero of the algebra.
    fn mul(&self, other: &Self) -> Option<Self>;

    /// Total word length (`l` for Cuntz monomials, the order `o` for free
    /// words).
    fn length(&self) -> usize;
}

impl Basis for CuntzMonomial {
    fn unit() -> Self {
        CuntzMonomial::unit()
    }

    fn mul(&self, other: &Self) -> Option<Self> {
        cuntz_mul(self, other)
    }

    fn length(&self) -> usize {
        self.length()
    }
}

impl Basis for FreeWord {
    fn unit() -> Self {
        FreeWord::unit()
    }

    fn mul(&self, other: &Self) -> Option<Self> {
        Some(free_mul(self, other))
    }

    fn length(&self) -> usize {
        self.order()
    }
}

/// A finitely supported rational linear combination of basis elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord + Clone> Default for LinComb<B> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: B, coeff: Scalar) -> Self {
        let mut l = Self::zero();
        l.add_term(b, coeff);
        l
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Scalar)>) -> Self {
        let mut l = Self::zero();
        for (b, c) in terms {
            l.add_term(b, c);
        }
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, b: B, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(b);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, c) in other.iter() {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(b, x)| (b.clone(), x * c))
                .collect(),
        }
    }

    /// Linear extension of a basis map `B -> LinComb<C>`.
    pub fn lin_map<C: Ord + Clone>(&self, f: impl Fn(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out.add_assign(&f(b).scaled(c));
        }
        out
    }
}

impl<B: Ord + Clone> Add for &LinComb<B> {
    type Output = LinComb<B>;

    fn add(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<B: Ord + Clone> Sub for &LinComb<B> {
    type Output = LinComb<B>;

    fn sub(self, rhs: Self) -> LinComb<B> {
        let mut out = self.clone();
        for (b, c) in rhs.iter() {
            out.add_term(b.clone(), -c.clone());
        }
        out
    }
}

impl<B: Ord + Clone> Neg for &LinComb<B> {
    type Output = LinComb<B>;

    fn neg(self) -> LinComb<B> {
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (b.clone(), -c.clone()))
                .collect(),
        }
    }
}

/// Bilinear extension of the basis product. Basis products that vanish
/// simply contribute nothing.
pub fn lin_mul<B: Basis>(x: &LinComb<B>, y: &LinComb<B>) -> LinComb<B> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            if let Some(ab) = a.mul(b) {
                out.add_term(ab, ca * cb);
            }
        }
    }
    out
}

impl<B: Basis> Mul for &LinComb<B> {
    type Output = LinComb<B>;

    fn mul(self, rhs: Self) -> LinComb<B> {
        lin_mul(self, rhs)
    }
}

/// The multiplication map `pi(a (x) b) = ab` on chains of degree 1.
pub fn pi_multiply<B: Basis>(x: &Chain<B>) -> Result<LinComb<B>> {
    if x.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: x.degree(),
        });
    }
    let mut out = LinComb::zero();
    for (t, c) in x.terms().iter() {
        let f = t.factors();
        if let Some(ab) = f[0].mul(&f[1]) {
            out.add_term(ab, c.clone());
        }
    }
    Ok(out)
}

/// Canonical sum formatting shared by algebra elements and chains.
///
/// Terms arrive in basis order as `(coefficient, body, compound)`, where
/// `compound` marks bodies that need parentheses under a scalar prefix
/// (tensors of degree >= 1). A unit coefficient prints as the bare body, a
/// leading sign is folded into the first coefficient, and later terms are
/// joined with ` + ` / ` - `.
pub(crate) fn format_sum(
    f: &mut fmt::Formatter<'_>,
    terms: &mut dyn Iterator<Item = (Scalar, String, bool)>,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (coeff, body, compound) in terms {
        any = true;
        let magnitude = if first {
            coeff.clone()
        } else {
            if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            coeff.abs()
        };
        first = false;
        if magnitude.is_one() {
            write!(f, "{body}")?;
        } else if compound {
            write!(f, "{magnitude} * ({body})")?;
        } else {
            write!(f, "{magnitude} * {body}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl<B: Basis> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self
            .iter()
            .map(|(b, c)| (c.clone(), b.to_string(), false));
        format_sum(f, &mut terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Word;
    use proptest::prelude::*;

    fn pq(alpha: &[u32], beta: &[u32]) -> CuntzMonomial {
        CuntzMonomial::new(Word::from_indices(alpha), Word::from_indices(beta))
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut l = LinComb::basis(pq(&[1], &[]));
        l.add_term(pq(&[1], &[]), -Scalar::one());
        assert!(l.is_zero());
        assert_eq!(l, LinComb::zero());
    }

    #[test]
    fn mul_collects_zero_products() {
        // (p[1] + q[1]) * p[1] = p[1,1] + 1
        let x = &LinComb::basis(pq(&[1], &[])) + &LinComb::basis(pq(&[], &[1]));
        let y = LinComb::basis(pq(&[1], &[]));
        let expect = LinComb::from_terms([
            (pq(&[1, 1], &[]), Scalar::one()),
            (CuntzMonomial::unit(), Scalar::one()),
        ]);
        assert_eq!(&x * &y, expect);
    }

    #[test]
    fn free_mul_scales() {
        let x = LinComb::term(FreeWord::from_indices(&[1]), scalar(2, 3));
        let y = LinComb::term(FreeWord::from_indices(&[2]), scalar_int(3));
        let expect = LinComb::term(FreeWord::from_indices(&[1, 2]), scalar_int(2));
        assert_eq!(&x * &y, expect);
    }

    #[test]
    fn display_orders_by_length_then_lex() {
        let l = LinComb::from_terms([
            (pq(&[1], &[1]), -Scalar::one()),
            (CuntzMonomial::unit(), Scalar::one()),
        ]);
        assert_eq!(l.to_string(), "1 - p[1]q[1]");
        let l = LinComb::from_terms([
            (pq(&[2], &[]), scalar(1, 2)),
            (pq(&[1], &[]), scalar_int(-2)),
        ]);
        assert_eq!(l.to_string(), "-2 * p[1] + 1/2 * p[2]");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(
            xs in proptest::collection::vec((0..6u32, 0..6u32, -3..=3i64), 0..4),
            ys in proptest::collection::vec((0..6u32, 0..6u32, -3..=3i64), 0..4),
            zs in proptest::collection::vec((0..6u32, 0..6u32, -3..=3i64), 0..4),
        ) {
            let build = |ts: &[(u32, u32, i64)]| {
                LinComb::from_terms(ts.iter().map(|&(a, b, c)| {
                    let alpha: Vec<u32> = (0..a % 3).map(|i| 1 + (a + i) % 2).collect();
                    let beta: Vec<u32> = (0..b % 3).map(|i| 1 + (b + i) % 2).collect();
                    (pq(&alpha, &beta), scalar_int(c))
                }))
            };
            let (x, y, z) = (build(&xs), build(&ys), build(&zs));
            // distributivity
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            // associativity
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            // unit
            let one = LinComb::basis(CuntzMonomial::unit());
            prop_assert_eq!(&x * &one, x.clone());
            prop_assert_eq!(&one * &x, x);
        }
    }
}

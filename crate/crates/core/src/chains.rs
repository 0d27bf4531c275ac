//! The chain groups and their simplicial-cyclic operators.
//!
//! A degree-`n` chain is a rational combination of elementary tensors
//! `a_1 (x) ... (x) a_(n+1)`. The face maps merge neighbouring factors,
//! with the zeroth face wrapping around:
//!
//! ```text
//! d_0(a_1 (x) ... (x) a_(m+1)) =  a_2 (x) ... (x) a_m (x) (a_(m+1) a_1)
//! d_i(a_1 (x) ... (x) a_(m+1)) = (-1)^i  a_1 (x) ... (x) (a_i a_(i+1)) (x) ... (x) a_(m+1)
//! ```
//!
//! for `1 <= i <= m`. Terms whose merged product vanishes are dropped. The
//! cyclic shift `t` rotates the last factor to the front with sign
//! `(-1)^n`, and the cyclic norm is `N = 1 + t + ... + t^n`. Two chains are
//! cyclically equivalent iff their difference lies in the image of `1 - t`,
//! which in characteristic zero is exactly the kernel of `N`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;

use crate::algebra::{format_sum, Basis, LinComb, Scalar};
use crate::error::{Error, Result};
use crate::semigroup::CuntzMonomial;

/// An elementary tensor with `degree + 1` factors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementaryTensor<B> {
    factors: Vec<B>,
}

impl<B: Basis> ElementaryTensor<B> {
    pub fn new(factors: Vec<B>) -> Self {
        assert!(!factors.is_empty(), "a tensor has at least one factor");
        ElementaryTensor { factors }
    }

    /// The all-units tensor of the given degree.
    pub fn units(degree: usize) -> Self {
        ElementaryTensor {
            factors: vec![B::unit(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.factors.len() - 1
    }

    pub fn factors(&self) -> &[B] {
        &self.factors
    }

    /// Total word length across all factors.
    pub fn length(&self) -> usize {
        self.factors.iter().map(|a| a.length()).sum()
    }

    /// Unsigned rotation: the last factor moves to the front.
    pub fn rotated(&self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len());
        factors.push(self.factors.last().unwrap().clone());
        factors.extend_from_slice(&self.factors[..self.factors.len() - 1]);
        ElementaryTensor { factors }
    }
}

impl<B: Basis> Ord for ElementaryTensor<B> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl<B: Basis> PartialOrd for ElementaryTensor<B> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<B: Basis> fmt::Display for ElementaryTensor<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, a) in self.factors.iter().enumerate() {
            if pos > 0 {
                write!(f, " (x) ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A homogeneous chain: a linear combination of tensors of one degree.
///
/// The degree is carried explicitly so that the zero chain of each degree
/// is a distinct, well-typed value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain<B: Basis> {
    degree: usize,
    terms: LinComb<ElementaryTensor<B>>,
}

impl<B: Basis> Chain<B> {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: LinComb::zero(),
        }
    }

    pub fn from_tensor(t: ElementaryTensor<B>) -> Self {
        Chain {
            degree: t.degree(),
            terms: LinComb::basis(t),
        }
    }

    /// The all-units chain `1 (x) ... (x) 1` of the given degree.
    pub fn units(degree: usize) -> Self {
        Self::from_tensor(ElementaryTensor::units(degree))
    }

    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (ElementaryTensor<B>, Scalar)>,
    ) -> Result<Self> {
        let mut chain = Self::zero(degree);
        for (t, c) in terms {
            if t.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: t.degree(),
                });
            }
            chain.terms.add_term(t, c);
        }
        Ok(chain)
    }

    /// A degree-0 chain with one factor per basis element.
    pub fn from_algebra(x: &LinComb<B>) -> Self {
        Chain {
            degree: 0,
            terms: x.lin_map(|b| LinComb::basis(ElementaryTensor::new(vec![b.clone()]))),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &LinComb<ElementaryTensor<B>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Chain {
            degree: self.degree,
            terms: self.terms.scaled(c),
        }
    }

    pub fn add_term(&mut self, t: ElementaryTensor<B>, c: Scalar) {
        debug_assert_eq!(t.degree(), self.degree);
        self.terms.add_term(t, c);
    }

    /// Linear extension of a tensor map into chains of degree `out_degree`.
    pub fn map_tensors(
        &self,
        out_degree: usize,
        f: impl Fn(&ElementaryTensor<B>) -> Chain<B>,
    ) -> Chain<B> {
        let mut out = Chain::zero(out_degree);
        for (t, c) in self.terms.iter() {
            let image = f(t);
            debug_assert_eq!(image.degree, out_degree);
            out.terms.add_assign(&image.terms.scaled(c));
        }
        out
    }
}

impl<B: Basis> Add for &Chain<B> {
    type Output = Chain<B>;

    fn add(self, rhs: Self) -> Chain<B> {
        assert_eq!(self.degree, rhs.degree, "chain degrees must match");
        Chain {
            degree: self.degree,
            terms: &self.terms + &rhs.terms,
        }
    }
}

impl<B: Basis> Sub for &Chain<B> {
    type Output = Chain<B>;

    fn sub(self, rhs: Self) -> Chain<B> {
        assert_eq!(self.degree, rhs.degree, "chain degrees must match");
        Chain {
            degree: self.degree,
            terms: &self.terms - &rhs.terms,
        }
    }
}

impl<B: Basis> Neg for &Chain<B> {
    type Output = Chain<B>;

    fn neg(self) -> Chain<B> {
        Chain {
            degree: self.degree,
            terms: -&self.terms,
        }
    }
}

impl<B: Basis> fmt::Display for Chain<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compound = self.degree >= 1;
        let mut terms = self
            .terms
            .iter()
            .map(|(t, c)| (c.clone(), t.to_string(), compound));
        format_sum(f, &mut terms)
    }
}

fn face_tensor<B: Basis>(i: usize, t: &ElementaryTensor<B>) -> Chain<B> {
    let m = t.degree();
    let fs = t.factors();
    let merged;
    let mut factors = Vec::with_capacity(m);
    if i == 0 {
        merged = fs[m].mul(&fs[0]);
        factors.extend_from_slice(&fs[1..m]);
    } else {
        merged = fs[i - 1].mul(&fs[i]);
        factors.extend_from_slice(&fs[..i - 1]);
    }
    let Some(prod) = merged else {
        return Chain::zero(m - 1);
    };
    if i == 0 {
        factors.push(prod);
    } else {
        factors.push(prod);
        factors.extend_from_slice(&fs[i + 1..]);
    }
    let sign = if i % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    Chain {
        degree: m - 1,
        terms: LinComb::term(ElementaryTensor::new(factors), sign),
    }
}

/// The `i`-th face map on chains of degree `m >= 1`, for `0 <= i <= m`.
pub fn face_map<B: Basis>(i: usize, x: &Chain<B>) -> Result<Chain<B>> {
    let m = x.degree();
    if m == 0 {
        return Err(Error::DegreeZero);
    }
    if i > m {
        return Err(Error::FaceIndex {
            index: i,
            degree: m,
        });
    }
    Ok(x.map_tensors(m - 1, |t| face_tensor(i, t)))
}

/// The boundary `d = d_0 + d_1 + ... + d_m` on chains of degree `m >= 1`.
pub fn boundary<B: Basis>(x: &Chain<B>) -> Result<Chain<B>> {
    let m = x.degree();
    if m == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = Chain::zero(m - 1);
    for i in 0..=m {
        out = &out + &face_map(i, x)?;
    }
    Ok(out)
}

/// The signed cyclic shift `t(a_1 (x) ... (x) a_(n+1)) =
/// (-1)^n (a_(n+1) (x) a_1 (x) ... (x) a_n)`.
pub fn cyclic_shift<B: Basis>(x: &Chain<B>) -> Chain<B> {
    let n = x.degree();
    let sign = if n % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    x.map_tensors(n, |t| {
        Chain::from_tensor(t.rotated()).scaled(&sign)
    })
}

/// The cyclic norm `N = 1 + t + t^2 + ... + t^n` in degree `n`.
pub fn cyclic_norm<B: Basis>(x: &Chain<B>) -> Chain<B> {
    let mut out = x.clone();
    let mut power = x.clone();
    for _ in 0..x.degree() {
        power = cyclic_shift(&power);
        out = &out + &power;
    }
    out
}

/// Whether `x - y` lies in the image of `1 - t`.
///
/// Over the rationals the group ring of the cyclic group splits, so the
/// image of `1 - t` is exactly the kernel of `N`; the test evaluates
/// `N(x - y) == 0`.
pub fn cyclic_equiv<B: Basis>(x: &Chain<B>, y: &Chain<B>) -> Result<bool> {
    if x.degree() != y.degree() {
        return Err(Error::DegreeMismatch {
            expected: x.degree(),
            found: y.degree(),
        });
    }
    Ok(cyclic_norm(&(x - y)).is_zero())
}

/// Transition data of an elementary Cuntz tensor.
///
/// Position `i` pairs factor `a_i` with its cyclic successor; a transition
/// occurs where the first factor has a nonempty `q` word and the successor
/// a nonempty `p` word, and it is orthogonal when the product of the pair
/// vanishes outright.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TransitionProfile {
    /// Number of transitions `k`.
    pub transitions: usize,
    /// Number of orthogonal transitions `l <= k`.
    pub orthogonal: usize,
}

pub fn transition_profile(t: &ElementaryTensor<CuntzMonomial>) -> TransitionProfile {
    let fs = t.factors();
    let mut transitions = 0;
    let mut orthogonal = 0;
    for i in 0..fs.len() {
        let a = &fs[i];
        let b = &fs[(i + 1) % fs.len()];
        if !a.beta().is_empty() && !b.alpha().is_empty() {
            transitions += 1;
            if a.mul(b).is_none() {
                orthogonal += 1;
            }
        }
    }
    TransitionProfile {
        transitions,
        orthogonal,
    }
}

/// Multiply the first factor of every tensor by `a` on the left.
pub fn left_mul<B: Basis>(a: &B, x: &Chain<B>) -> Chain<B> {
    x.map_tensors(x.degree(), |t| {
        let fs = t.factors();
        match a.mul(&fs[0]) {
            Some(prod) => {
                let mut factors = vec![prod];
                factors.extend_from_slice(&fs[1..]);
                Chain::from_tensor(ElementaryTensor::new(factors))
            }
            None => Chain::zero(x.degree()),
        }
    })
}

/// Multiply the last factor of every tensor by `b` on the right.
pub fn right_mul<B: Basis>(x: &Chain<B>, b: &B) -> Chain<B> {
    x.map_tensors(x.degree(), |t| {
        let fs = t.factors();
        match fs[fs.len() - 1].mul(b) {
            Some(prod) => {
                let mut factors = fs[..fs.len() - 1].to_vec();
                factors.push(prod);
                Chain::from_tensor(ElementaryTensor::new(factors))
            }
            None => Chain::zero(x.degree()),
        }
    })
}

//! Splitting maps and the operators built from them.
//!
//! A splitting `rho` sends a basis monomial to a degree-1 chain. Inserting
//! `rho` into slot `k` of a tensor gives the signed operator
//!
//! ```text
//! s_k(a_1 (x) ... (x) a_(n+1)) = (-1)^k  a_1 (x) ... (x) rho(a_k) (x) ... (x) a_(n+1)
//! ```
//!
//! and `s = s_1 + ... + s_(n+1)`. The three shipped splittings are the
//! simple Cuntz splitting `rho(p_a q_b) = p_a (x) q_b`, the long Cuntz
//! splitting that cuts at every position of both words, and the free
//! splitting that cuts a word at every position. The long splittings are
//! used length-weighted: on an elementary tensor `x` the weighted operator
//! `r` divides the slot sum by the total word length of `x` and vanishes on
//! length-zero tensors.
//!
//! `P = sd + ds` commutes with the boundary, and the product
//! `Phi = (1 - P)(1 - P/2)...(1 - P/(n+1))` of commuting factors is the
//! operator whose image the cyclic norm sees as transition-free. The
//! [`PhiHomotopy`] struct assembles the explicit chain homotopy witnessing
//! `Phi = 1 - (s~ d + d s~)` degree by degree for the fixed factor list.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Basis, Scalar};
use crate::chains::{boundary, face_map, Chain, ElementaryTensor};
use crate::error::{Error, Result};
use crate::semigroup::{CuntzMonomial, FreeWord};

/// The simple splitting `rho(p_a q_b) = p_a (x) q_b`.
pub fn rho_simple(a: &CuntzMonomial) -> Chain<CuntzMonomial> {
    Chain::from_tensor(ElementaryTensor::new(vec![
        CuntzMonomial::p(a.alpha().clone()),
        CuntzMonomial::q(a.beta().clone()),
    ]))
}

/// The long Cuntz splitting: every cut of the `p` word plus every cut of
/// the `q` word,
///
/// ```text
/// rho(p_a q_b) = sum_k p_(a<=k) (x) p_(a>k) q_b  +  sum_l p_a q_(b>l) (x) q_(b<=l),
/// ```
///
/// `k` over `0..|a|-1` and `l` over `1..=|b|`. The unit splits to zero:
/// both sums are empty.
pub fn rho_long_cuntz(a: &CuntzMonomial) -> Chain<CuntzMonomial> {
    let alpha = a.alpha();
    let beta = a.beta();
    let mut out = Chain::zero(1);
    for k in 0..alpha.len() {
        out.add_term(
            ElementaryTensor::new(vec![
                CuntzMonomial::p(alpha.prefix(k)),
                CuntzMonomial::new(alpha.suffix_from(k), beta.clone()),
            ]),
            Scalar::one(),
        );
    }
    for l in 1..=beta.len() {
        out.add_term(
            ElementaryTensor::new(vec![
                CuntzMonomial::new(alpha.clone(), beta.suffix_from(l)),
                CuntzMonomial::q(beta.prefix(l)),
            ]),
            Scalar::one(),
        );
    }
    out
}

/// The free splitting: every cut of the word, `rho(w) = sum_k w<=k (x) w>k`
/// over `k = 0..|w|-1`; the empty word splits to zero.
pub fn rho_long_free(w: &FreeWord) -> Chain<FreeWord> {
    let word = w.word();
    let mut out = Chain::zero(1);
    for k in 0..word.len() {
        out.add_term(
            ElementaryTensor::new(vec![
                FreeWord::new(word.prefix(k)),
                FreeWord::new(word.suffix_from(k)),
            ]),
            Scalar::one(),
        );
    }
    out
}

/// A named splitting together with its weighting mode.
pub struct SplitSpec<B: Basis> {
    pub name: &'static str,
    split: fn(&B) -> Chain<B>,
    /// Whether slot sums are divided by the total word length of the input
    /// tensor (the second-reduction operators `r`).
    pub weighted: bool,
}

impl<B: Basis> SplitSpec<B> {
    pub fn split(&self, a: &B) -> Chain<B> {
        (self.split)(a)
    }
}

impl SplitSpec<CuntzMonomial> {
    pub fn simple_cuntz() -> Self {
        SplitSpec {
            name: "simple-cuntz",
            split: rho_simple,
            weighted: false,
        }
    }

    pub fn long_cuntz() -> Self {
        SplitSpec {
            name: "long-cuntz",
            split: rho_long_cuntz,
            weighted: true,
        }
    }
}

impl SplitSpec<FreeWord> {
    pub fn long_free() -> Self {
        SplitSpec {
            name: "long-free",
            split: rho_long_free,
            weighted: true,
        }
    }
}

impl<B: Basis> Clone for SplitSpec<B> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<B: Basis> Copy for SplitSpec<B> {}

impl<B: Basis> fmt::Debug for SplitSpec<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SplitSpec")
            .field("name", &self.name)
            .field("weighted", &self.weighted)
            .finish()
    }
}

fn insert_split<B: Basis>(
    spec: &SplitSpec<B>,
    t: &ElementaryTensor<B>,
    k: usize,
) -> Chain<B> {
    let n = t.degree();
    assert!(k >= 1 && k <= n + 1, "slot {k} out of range 1..={}", n + 1);
    let fs = t.factors();
    let split = spec.split(&fs[k - 1]);
    let mut out = Chain::zero(n + 1);
    for (st, c) in split.terms().iter() {
        let legs = st.factors();
        let mut factors = Vec::with_capacity(n + 2);
        factors.extend_from_slice(&fs[..k - 1]);
        factors.push(legs[0].clone());
        factors.push(legs[1].clone());
        factors.extend_from_slice(&fs[k..]);
        let coeff = if k % 2 == 1 { -c.clone() } else { c.clone() };
        out.add_term(ElementaryTensor::new(factors), coeff);
    }
    out
}

/// The unweighted slot operator `s_k` for `1 <= k <= degree + 1`.
///
/// For weighted specs this is the raw insertion without the `1/l(x)`
/// factor; the slotwise identities of the calculus hold for it regardless
/// of the weighting mode.
pub fn s_slot<B: Basis>(spec: &SplitSpec<B>, k: usize, x: &Chain<B>) -> Chain<B> {
    x.map_tensors(x.degree() + 1, |t| insert_split(spec, t, k))
}

/// The degree-raising operator of a splitting: the slot sum, divided
/// tensorwise by the total word length in weighted mode.
pub fn s_apply<B: Basis>(spec: &SplitSpec<B>, x: &Chain<B>) -> Chain<B> {
    let n = x.degree();
    x.map_tensors(n + 1, |t| {
        let mut acc = Chain::zero(n + 1);
        for k in 1..=n + 1 {
            acc = &acc + &insert_split(spec, t, k);
        }
        if spec.weighted {
            let len = t.length();
            if len == 0 {
                return Chain::zero(n + 1);
            }
            acc = acc.scaled(&Scalar::new(BigInt::one(), BigInt::from(len)));
        }
        acc
    })
}

/// Composition `s_k . d_j` of a face map followed by a slot insertion.
pub fn sd_term<B: Basis>(
    spec: &SplitSpec<B>,
    k: usize,
    j: usize,
    x: &Chain<B>,
) -> Result<Chain<B>> {
    Ok(s_slot(spec, k, &face_map(j, x)?))
}

/// Composition `d_i . s_k` of a slot insertion followed by a face map.
pub fn ds_term<B: Basis>(
    spec: &SplitSpec<B>,
    i: usize,
    k: usize,
    x: &Chain<B>,
) -> Result<Chain<B>> {
    face_map(i, &s_slot(spec, k, x))
}

/// `P = s d + d s` (with the weighted operator `r` in weighted mode), on
/// chains of degree >= 1.
pub fn p_apply<B: Basis>(spec: &SplitSpec<B>, x: &Chain<B>) -> Result<Chain<B>> {
    if x.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(p_operator(spec, x))
}

/// `P` extended to every degree: in degree 0 the `sd` summand has no
/// meaning and `P` is taken to be `d . s`, which is what the homotopy
/// composition requires.
pub fn p_operator<B: Basis>(spec: &SplitSpec<B>, x: &Chain<B>) -> Chain<B> {
    let ds = boundary(&s_apply(spec, x)).expect("s raises the degree above 0");
    if x.degree() == 0 {
        return ds;
    }
    let sd = s_apply(spec, &boundary(x).expect("degree checked above"));
    &sd + &ds
}

/// Labels for the surviving terms of the expansion of `P`.
///
/// Expanding `P = sd + ds` slot by slot and cancelling the off-diagonal
/// pairs leaves, per interior slot `i`, the quadruple
/// `s_i d_i`, `d_i s_i`, `d_i s_(i+1)`, `d_(i+1) s_i`, together with the
/// four wrap-around terms `s_n d_0`, `d_(n+1) s_(n+1)`, `d_0 s_1` and
/// `d_0 s_(n+1)`; `4n + 4` terms in total.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PTermLabel {
    /// `s_i d_i`: the splitting of the merged pair at slot `i`.
    SdDiag(usize),
    /// `d_i s_i`: the multiplied splitting `pi rho` at slot `i`.
    DsDiag(usize),
    /// `d_i s_(i+1)`: `a_i` multiplied into its successor's splitting.
    DsLeftMul(usize),
    /// `d_(i+1) s_i`: the splitting of `a_i` multiplied into `a_(i+1)`.
    DsRightMul(usize),
    /// `s_n d_0`: the splitting of the wrap-around product.
    SdCyclic,
    /// `d_(n+1) s_(n+1)`: the rotated `pi rho` term of the last factor.
    DsCyclicDiag,
    /// `d_0 s_1`: the last factor multiplied into the splitting of the
    /// first.
    DsCyclicLeftMul,
    /// `d_0 s_(n+1)`: the splitting of the last factor multiplied into the
    /// first.
    DsCyclicRightMul,
}

impl fmt::Display for PTermLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PTermLabel::SdDiag(i) => write!(f, "sd-diag slot {i}"),
            PTermLabel::DsDiag(i) => write!(f, "ds-diag slot {i}"),
            PTermLabel::DsLeftMul(i) => write!(f, "ds-lmul slot {i}"),
            PTermLabel::DsRightMul(i) => write!(f, "ds-rmul slot {i}"),
            PTermLabel::SdCyclic => write!(f, "sd-cyclic"),
            PTermLabel::DsCyclicDiag => write!(f, "ds-cyclic-diag"),
            PTermLabel::DsCyclicLeftMul => write!(f, "ds-cyclic-lmul"),
            PTermLabel::DsCyclicRightMul => write!(f, "ds-cyclic-rmul"),
        }
    }
}

/// The `4n + 4` labelled terms of the expansion of `sd + ds` in degree
/// `n >= 1`, computed from the raw (unweighted) slot operators. Their sum
/// equals the slot-sum version of `sd + ds`; in unweighted mode that is
/// exactly [`p_apply`].
pub fn p_terms<B: Basis>(
    spec: &SplitSpec<B>,
    x: &Chain<B>,
) -> Result<Vec<(PTermLabel, Chain<B>)>> {
    let n = x.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let mut terms = Vec::with_capacity(4 * n + 4);
    terms.push((PTermLabel::SdCyclic, sd_term(spec, n, 0, x)?));
    terms.push((PTermLabel::DsCyclicDiag, ds_term(spec, n + 1, n + 1, x)?));
    terms.push((PTermLabel::DsCyclicLeftMul, ds_term(spec, 0, 1, x)?));
    terms.push((PTermLabel::DsCyclicRightMul, ds_term(spec, 0, n + 1, x)?));
    for i in 1..=n {
        terms.push((PTermLabel::SdDiag(i), sd_term(spec, i, i, x)?));
        terms.push((PTermLabel::DsDiag(i), ds_term(spec, i, i, x)?));
        terms.push((PTermLabel::DsLeftMul(i), ds_term(spec, i, i + 1, x)?));
        terms.push((PTermLabel::DsRightMul(i), ds_term(spec, i + 1, i, x)?));
    }
    Ok(terms)
}

fn phi_factor(spec: &SplitSpec<CuntzMonomial>, j: usize, y: &Chain<CuntzMonomial>) -> Chain<CuntzMonomial> {
    let p = p_operator(spec, y);
    y - &p.scaled(&Scalar::new(BigInt::one(), BigInt::from(j)))
}

/// `Phi = (1 - P)(1 - P/2)...(1 - P/(n+1))` with the simple Cuntz
/// splitting, on chains of degree `n >= 1`. The factors commute; they are
/// applied right to left.
pub fn phi_apply(x: &Chain<CuntzMonomial>) -> Result<Chain<CuntzMonomial>> {
    if x.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(PhiHomotopy::new(x.degree()).phi(x))
}

/// The contracting homotopy for `Phi` with the factor list fixed by `n`.
///
/// Writing `F_j = 1 - P/j` and `Phi_(>m) = F_(m+1) ... F_(n+1)`, the
/// operator is
///
/// ```text
/// s~ = sum_(m=1)^(n+1) (s/m) . Phi_(>m)
/// ```
///
/// and satisfies `Phi = 1 - (s~ d + d s~)` in every degree where both
/// sides are formed with this same factor list. In degree 0 the embedded
/// `P` degenerates to `d . s`.
#[derive(Clone, Copy, Debug)]
pub struct PhiHomotopy {
    n: usize,
}

impl PhiHomotopy {
    pub fn new(n: usize) -> Self {
        PhiHomotopy { n }
    }

    pub fn factors(&self) -> usize {
        self.n + 1
    }

    /// `Phi` as the fixed product, evaluated at any degree.
    pub fn phi(&self, y: &Chain<CuntzMonomial>) -> Chain<CuntzMonomial> {
        let spec = SplitSpec::simple_cuntz();
        let mut z = y.clone();
        for j in (1..=self.n + 1).rev() {
            z = phi_factor(&spec, j, &z);
        }
        z
    }

    /// The homotopy `s~`, evaluated at any degree.
    pub fn apply(&self, y: &Chain<CuntzMonomial>) -> Chain<CuntzMonomial> {
        let spec = SplitSpec::simple_cuntz();
        let mut result = Chain::zero(y.degree() + 1);
        let mut z = y.clone();
        for j in (1..=self.n + 1).rev() {
            let s_of_z = s_apply(&spec, &z);
            result = &result + &s_of_z.scaled(&Scalar::new(BigInt::one(), BigInt::from(j)));
            z = phi_factor(&spec, j, &z);
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pi_multiply, scalar, LinComb};
    use crate::chains::cyclic_shift;
    use crate::semigroup::Word;

    fn pq(alpha: &[u32], beta: &[u32]) -> CuntzMonomial {
        CuntzMonomial::new(Word::from_indices(alpha), Word::from_indices(beta))
    }

    fn tensor(factors: &[CuntzMonomial]) -> Chain<CuntzMonomial> {
        Chain::from_tensor(ElementaryTensor::new(factors.to_vec()))
    }

    fn free_tensor(words: &[&[u32]]) -> Chain<FreeWord> {
        Chain::from_tensor(ElementaryTensor::new(
            words.iter().map(|w| FreeWord::from_indices(w)).collect(),
        ))
    }

    #[test]
    fn simple_split_sections_pi() {
        for m in [pq(&[1, 2], &[3]), pq(&[], &[1]), CuntzMonomial::unit()] {
            let split = rho_simple(&m);
            assert_eq!(pi_multiply(&split).unwrap(), LinComb::basis(m));
        }
    }

    #[test]
    fn long_split_of_p_word_monomial() {
        // rho(p[1,2]q[3]) = 1 (x) p[1,2]q[3] + p[1] (x) p[2]q[3] + p[1,2] (x) q[3]
        let split = rho_long_cuntz(&pq(&[1, 2], &[3]));
        let expect = &(&tensor(&[CuntzMonomial::unit(), pq(&[1, 2], &[3])])
            + &tensor(&[pq(&[1], &[]), pq(&[2], &[3])]))
            + &tensor(&[pq(&[1, 2], &[]), pq(&[], &[3])]);
        assert_eq!(split, expect);
    }

    #[test]
    fn long_split_of_q_word() {
        // rho(q[1,2]) = q[2] (x) q[1] + 1 (x) q[1,2]
        let split = rho_long_cuntz(&pq(&[], &[1, 2]));
        let expect = &tensor(&[pq(&[], &[2]), pq(&[], &[1])])
            + &tensor(&[CuntzMonomial::unit(), pq(&[], &[1, 2])]);
        assert_eq!(split, expect);
    }

    #[test]
    fn long_split_multiplies_to_length() {
        for m in [pq(&[1, 2], &[3]), pq(&[], &[1, 2]), pq(&[2], &[])] {
            let split = rho_long_cuntz(&m);
            let expect = LinComb::term(m.clone(), scalar(m.length() as i64, 1));
            assert_eq!(pi_multiply(&split).unwrap(), expect);
        }
        assert!(rho_long_cuntz(&CuntzMonomial::unit()).is_zero());
    }

    #[test]
    fn free_split_cuts_everywhere() {
        let split = rho_long_free(&FreeWord::from_indices(&[1, 2]));
        let expect = &free_tensor(&[&[], &[1, 2]]) + &free_tensor(&[&[1], &[2]]);
        assert_eq!(split, expect);
        assert!(rho_long_free(&FreeWord::unit()).is_zero());
    }

    #[test]
    fn s_alternates_slots() {
        // s(p[1]q[2] (x) q[3]) = -(p[1] (x) q[2] (x) q[3]) + p[1]q[2] (x) 1 (x) q[3]
        let spec = SplitSpec::simple_cuntz();
        let x = tensor(&[pq(&[1], &[2]), pq(&[], &[3])]);
        let expect = &-&tensor(&[pq(&[1], &[]), pq(&[], &[2]), pq(&[], &[3])])
            + &tensor(&[pq(&[1], &[2]), CuntzMonomial::unit(), pq(&[], &[3])]);
        assert_eq!(s_apply(&spec, &x), expect);
    }

    #[test]
    fn weighted_operator_divides_by_length() {
        // r(p[1] (x) p[2]) = 1/2 (-(1 (x) p[1] (x) p[2]) + p[1] (x) 1 (x) p[2])
        let spec = SplitSpec::long_cuntz();
        let x = tensor(&[pq(&[1], &[]), pq(&[2], &[])]);
        let expect = (&-&tensor(&[CuntzMonomial::unit(), pq(&[1], &[]), pq(&[2], &[])])
            + &tensor(&[pq(&[1], &[]), CuntzMonomial::unit(), pq(&[2], &[])]))
            .scaled(&scalar(1, 2));
        assert_eq!(s_apply(&spec, &x), expect);
        // and vanishes on length-zero tensors
        assert!(s_apply(&spec, &Chain::units(2)).is_zero());
    }

    #[test]
    fn p_on_degree_one() {
        let spec = SplitSpec::simple_cuntz();
        let x = tensor(&[pq(&[1], &[]), pq(&[], &[1])]);
        let expect = &x - &Chain::units(1);
        assert_eq!(p_apply(&spec, &x).unwrap(), expect);

        let y = tensor(&[pq(&[], &[1]), pq(&[2], &[])]);
        assert_eq!(p_apply(&spec, &y).unwrap(), y);

        assert!(p_apply(&spec, &Chain::units(1)).unwrap().is_zero());
        assert_eq!(
            p_apply(&spec, &Chain::units(0)).unwrap_err(),
            Error::DegreeZero
        );
    }

    #[test]
    fn p_term_count_and_sum() {
        let spec = SplitSpec::simple_cuntz();
        for x in [
            tensor(&[pq(&[1], &[2]), pq(&[], &[1])]),
            tensor(&[pq(&[1], &[]), pq(&[2], &[1]), pq(&[], &[2])]),
        ] {
            let n = x.degree();
            let terms = p_terms(&spec, &x).unwrap();
            assert_eq!(terms.len(), 4 * n + 4);
            let mut sum = Chain::zero(n);
            for (_, t) in &terms {
                sum = &sum + t;
            }
            assert_eq!(sum, p_apply(&spec, &x).unwrap());
        }
    }

    #[test]
    fn ds_diag_collapses_for_simple_split() {
        // pi rho = id makes d_i s_i the identity in every interior slot
        let spec = SplitSpec::simple_cuntz();
        let x = tensor(&[pq(&[1], &[2]), pq(&[3], &[]), pq(&[], &[1])]);
        for i in 1..=x.degree() {
            assert_eq!(ds_term(&spec, i, i, &x).unwrap(), x);
        }
        assert_eq!(ds_term(&spec, 3, 3, &x).unwrap(), x);
    }

    #[test]
    fn phi_examples() {
        let x = tensor(&[pq(&[1], &[]), pq(&[], &[1])]);
        assert_eq!(phi_apply(&x).unwrap(), Chain::units(1));
        let y = tensor(&[pq(&[], &[1]), pq(&[2], &[])]);
        assert!(phi_apply(&y).unwrap().is_zero());
        let u = Chain::units(1);
        assert_eq!(phi_apply(&u).unwrap(), u);
    }

    #[test]
    fn homotopy_on_degree_one() {
        let st = PhiHomotopy::new(1);
        let x = tensor(&[pq(&[1], &[]), pq(&[], &[1])]);
        assert!(st.apply(&x).is_zero());
        // d s~ + s~ d recovers 1 - Phi on this tensor
        let dx = boundary(&x).unwrap();
        let lhs = &boundary(&st.apply(&x)).unwrap() + &st.apply(&dx);
        assert_eq!(lhs, &x - &Chain::units(1));
    }

    #[test]
    fn shift_conjugation_of_slots() {
        // s_1 t = t^2 s_(n+1) and s_k t = t s_(k-1) for one fixed tensor
        let spec = SplitSpec::long_cuntz();
        let x = tensor(&[pq(&[1], &[2]), pq(&[2], &[1]), pq(&[], &[1])]);
        let n = x.degree();
        let tx = cyclic_shift(&x);
        assert_eq!(
            s_slot(&spec, 1, &tx),
            cyclic_shift(&cyclic_shift(&s_slot(&spec, n + 1, &x)))
        );
        for k in 2..=n + 1 {
            assert_eq!(
                s_slot(&spec, k, &tx),
                cyclic_shift(&s_slot(&spec, k - 1, &x))
            );
        }
    }
}

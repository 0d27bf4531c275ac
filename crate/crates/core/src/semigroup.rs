//! Words and normal-form monomials.
//!
//! The Cuntz semigroup on countably many generators has elements written in
//! the normal form `p_alpha q_beta`, where `alpha` and `beta` are finite
//! strings of positive generator indices, together with a unit (both strings
//! empty) and a zero. Zero products are represented by *absence*: the
//! product of two monomials is `Option<CuntzMonomial>` and `None` means the
//! product vanishes in the reduced algebra.
//!
//! The same word type underlies [`FreeWord`], the basis of the free tensor
//! algebra, whose product is plain concatenation.

use std::cmp::Ordering;
use std::fmt;

/// A 1-based generator index. The index set is unbounded; any `u32 >= 1`
/// names a generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Index(u32);

impl Index {
    pub fn new(value: u32) -> Self {
        assert!(value >= 1, "generator indices start at 1");
        Index(value)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite string of generator indices. Ordered by length first, then
/// lexicographically, which is the order used for canonical printing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Index>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(indices: Vec<Index>) -> Self {
        Word(indices)
    }

    /// Convenience constructor from raw `u32` indices.
    pub fn from_indices(indices: &[u32]) -> Self {
        Word(indices.iter().map(|&i| Index::new(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[Index] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    /// Everything after the first `k` letters.
    pub fn suffix_from(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }

    /// One step of the cyclic rotation: the last letter moves to the front.
    pub fn rotated_right(&self) -> Word {
        if self.0.len() < 2 {
            return self.clone();
        }
        let mut v = Vec::with_capacity(self.0.len());
        v.push(*self.0.last().unwrap());
        v.extend_from_slice(&self.0[..self.0.len() - 1]);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, idx) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        Ok(())
    }
}

/// A normal-form monomial `p_alpha q_beta`. Both words empty is the unit.
///
/// The defining relation `q_i p_j = delta_ij * 1` collapses every product of
/// generators either to this normal form or to zero, so the type together
/// with [`cuntz_mul`] carries the entire multiplicative structure.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CuntzMonomial {
    alpha: Word,
    beta: Word,
}

impl CuntzMonomial {
    pub fn new(alpha: Word, beta: Word) -> Self {
        CuntzMonomial { alpha, beta }
    }

    pub fn unit() -> Self {
        CuntzMonomial {
            alpha: Word::empty(),
            beta: Word::empty(),
        }
    }

    pub fn p(alpha: Word) -> Self {
        CuntzMonomial {
            alpha,
            beta: Word::empty(),
        }
    }

    pub fn q(beta: Word) -> Self {
        CuntzMonomial {
            alpha: Word::empty(),
            beta,
        }
    }

    pub fn alpha(&self) -> &Word {
        &self.alpha
    }

    pub fn beta(&self) -> &Word {
        &self.beta
    }

    pub fn is_unit(&self) -> bool {
        self.alpha.is_empty() && self.beta.is_empty()
    }

    /// Total word length `l = |alpha| + |beta|`.
    pub fn length(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }
}

impl Ord for CuntzMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.alpha.indices().cmp(other.alpha.indices()))
            .then_with(|| self.beta.indices().cmp(other.beta.indices()))
    }
}

impl PartialOrd for CuntzMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CuntzMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        if !self.alpha.is_empty() {
            write!(f, "p[{}]", self.alpha)?;
        }
        if !self.beta.is_empty() {
            write!(f, "q[{}]", self.beta)?;
        }
        Ok(())
    }
}

/// Product of normal-form monomials; `None` is the zero of the reduced
/// algebra.
///
/// Writing `a = p_a.alpha q_a.beta` and `b = p_b.alpha q_b.beta`:
/// if `b.alpha = a.beta * tau` the product is `p_(a.alpha tau) q_b.beta`;
/// if `a.beta = b.alpha * tau` it is `p_a.alpha q_(b.beta tau)`;
/// otherwise the middle letters clash and the product is zero.
pub fn cuntz_mul(a: &CuntzMonomial, b: &CuntzMonomial) -> Option<CuntzMonomial> {
    if b.alpha.starts_with(&a.beta) {
        let tau = b.alpha.suffix_from(a.beta.len());
        Some(CuntzMonomial::new(a.alpha.concat(&tau), b.beta.clone()))
    } else if a.beta.starts_with(&b.alpha) {
        let tau = a.beta.suffix_from(b.alpha.len());
        Some(CuntzMonomial::new(a.alpha.clone(), b.beta.concat(&tau)))
    } else {
        None
    }
}

/// A basis word of the free tensor algebra; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FreeWord(Word);

impl FreeWord {
    pub fn unit() -> Self {
        FreeWord(Word::empty())
    }

    pub fn new(word: Word) -> Self {
        FreeWord(word)
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        FreeWord(Word::from_indices(indices))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// The order `o` of the word, i.e. its letter count.
    pub fn order(&self) -> usize {
        self.0.len()
    }
}

/// Concatenation product of the free tensor algebra.
pub fn free_mul(u: &FreeWord, v: &FreeWord) -> FreeWord {
    FreeWord(u.0.concat(&v.0))
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[{}]", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq(alpha: &[u32], beta: &[u32]) -> CuntzMonomial {
        CuntzMonomial::new(Word::from_indices(alpha), Word::from_indices(beta))
    }

    #[test]
    fn product_middle_absorption() {
        // p[1]q[2,3] * p[2]q[4] = p[1]q[4,3]
        let a = pq(&[1], &[2, 3]);
        let b = pq(&[2], &[4]);
        assert_eq!(cuntz_mul(&a, &b), Some(pq(&[1], &[4, 3])));
    }

    #[test]
    fn product_prefix_extension() {
        // p[1]q[2] * p[2,5]q[7] = p[1,5]q[7]
        let a = pq(&[1], &[2]);
        let b = pq(&[2, 5], &[7]);
        assert_eq!(cuntz_mul(&a, &b), Some(pq(&[1, 5], &[7])));
    }

    #[test]
    fn product_clash_is_zero() {
        let a = pq(&[], &[1]);
        let b = pq(&[2], &[]);
        assert_eq!(cuntz_mul(&a, &b), None);
        let a = pq(&[1], &[2, 3]);
        let b = pq(&[3], &[1]);
        assert_eq!(cuntz_mul(&a, &b), None);
    }

    #[test]
    fn q_words_compose_in_reverse() {
        // q_alpha q_beta = q_(beta alpha)
        let a = pq(&[], &[1]);
        let b = pq(&[], &[2]);
        assert_eq!(cuntz_mul(&a, &b), Some(pq(&[], &[2, 1])));
    }

    #[test]
    fn unit_is_neutral() {
        let one = CuntzMonomial::unit();
        let a = pq(&[1, 2], &[3]);
        assert_eq!(cuntz_mul(&one, &a), Some(a.clone()));
        assert_eq!(cuntz_mul(&a, &one), Some(a));
    }

    #[test]
    fn inner_product_relation() {
        // q_beta p_beta = 1, q_i p_j = 0 for i != j
        let qb = pq(&[], &[4, 5]);
        let pb = pq(&[4, 5], &[]);
        assert_eq!(cuntz_mul(&qb, &pb), Some(CuntzMonomial::unit()));
        assert_eq!(cuntz_mul(&pq(&[], &[1]), &pq(&[2], &[])), None);
    }

    /// Exhaustive associativity over short words on a two-letter alphabet.
    #[test]
    fn associativity_exhaustive() {
        let mut words = vec![Word::empty()];
        for len in 1..=2usize {
            let mut stack = vec![Vec::new()];
            while let Some(w) = stack.pop() {
                if w.len() == len {
                    words.push(Word::from_indices(&w));
                    continue;
                }
                for i in 1..=2u32 {
                    let mut next = w.clone();
                    next.push(i);
                    stack.push(next);
                }
            }
        }
        let monos: Vec<CuntzMonomial> = words
            .iter()
            .flat_map(|a| {
                words
                    .iter()
                    .map(move |b| CuntzMonomial::new(a.clone(), b.clone()))
            })
            .collect();
        let mul = |x: Option<CuntzMonomial>, y: &CuntzMonomial| x.and_then(|x| cuntz_mul(&x, y));
        for a in &monos {
            for b in &monos {
                let ab = cuntz_mul(a, b);
                for c in &monos {
                    let left = mul(ab.clone(), c);
                    let right = cuntz_mul(b, c).and_then(|bc| cuntz_mul(a, &bc));
                    assert_eq!(left, right, "({a})({b})({c})");
                }
            }
        }
    }

    #[test]
    fn length_subadditive() {
        let a = pq(&[1], &[2, 3]);
        let b = pq(&[2, 3], &[4]);
        let ab = cuntz_mul(&a, &b).unwrap();
        assert_eq!(ab, pq(&[1], &[4]));
        assert!(ab.length() <= a.length() + b.length());
        // no cancellation when the meeting words do not overlap
        let c = pq(&[7], &[]);
        let ac = cuntz_mul(&c, &a).unwrap();
        assert_eq!(ac.length(), c.length() + a.length());
    }

    #[test]
    fn free_concatenation() {
        let u = FreeWord::from_indices(&[1]);
        let v = FreeWord::from_indices(&[2, 1]);
        assert_eq!(free_mul(&u, &v), FreeWord::from_indices(&[1, 2, 1]));
        assert_eq!(free_mul(&u, &FreeWord::unit()), u);
        assert_eq!(v.order(), 2);
    }

    #[test]
    fn display_forms() {
        assert_eq!(pq(&[1, 2], &[3]).to_string(), "p[1,2]q[3]");
        assert_eq!(pq(&[], &[3]).to_string(), "q[3]");
        assert_eq!(pq(&[1], &[]).to_string(), "p[1]");
        assert_eq!(CuntzMonomial::unit().to_string(), "1");
        assert_eq!(FreeWord::from_indices(&[1, 2]).to_string(), "w[1,2]");
        assert_eq!(FreeWord::unit().to_string(), "w[]");
    }
}

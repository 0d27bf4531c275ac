//! Rule-based cochains, traces, and the constructive cobounding pipeline.
//!
//! A cochain is a linear functional on chains of one degree. It is stored
//! as an evaluation rule rather than a table: the coboundary of a finitely
//! supported functional is supported on infinitely many tensors, so tables
//! only enter as leaves. Composite cochains (coboundaries, pullbacks along
//! chain operators, combinations) stay lazy and are evaluated tensor by
//! tensor.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Basis, LinComb, Scalar};
use crate::chains::{boundary, cyclic_shift, Chain, ElementaryTensor};
use crate::error::{Error, Result};
use crate::homotopy::{s_apply, PhiHomotopy, SplitSpec};
use crate::semigroup::{CuntzMonomial, FreeWord, Word};

/// How a cochain was formed. Purely informative; evaluation always goes
/// through the stored rule.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CochainKind {
    Table,
    TracePower,
    Pullback,
    Combination,
}

type Rule<B> = Arc<dyn Fn(&ElementaryTensor<B>) -> Scalar + Send + Sync>;

/// A linear functional on chains of a fixed degree.
#[derive(Clone)]
pub struct Cochain<B: Basis> {
    degree: usize,
    kind: CochainKind,
    rule: Rule<B>,
}

impl<B: Basis> fmt::Debug for Cochain<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cochain")
            .field("degree", &self.degree)
            .field("kind", &self.kind)
            .finish()
    }
}

impl<B> Cochain<B>
where
    B: Basis + Send + Sync + 'static,
{
    /// A finitely supported functional, fixed by its value table.
    pub fn table(degree: usize, entries: BTreeMap<ElementaryTensor<B>, Scalar>) -> Self {
        for t in entries.keys() {
            assert_eq!(t.degree(), degree, "table entry of the wrong degree");
        }
        Cochain {
            degree,
            kind: CochainKind::Table,
            rule: Arc::new(move |t| entries.get(t).cloned().unwrap_or_else(Scalar::zero)),
        }
    }

    pub fn zero(degree: usize) -> Self {
        Self::table(degree, BTreeMap::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> CochainKind {
        self.kind
    }

    pub fn eval_tensor(&self, t: &ElementaryTensor<B>) -> Scalar {
        assert_eq!(t.degree(), self.degree, "tensor degree mismatch");
        (self.rule)(t)
    }

    /// Evaluate on a chain of the cochain's degree.
    pub fn eval(&self, x: &Chain<B>) -> Result<Scalar> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        let mut out = Scalar::zero();
        for (t, c) in x.terms().iter() {
            out += c * (self.rule)(t);
        }
        Ok(out)
    }

    /// The pullback `x -> self(op(x))` along a chain operator that raises
    /// or lowers into this cochain's degree.
    pub fn pullback(
        &self,
        degree: usize,
        op: impl Fn(&Chain<B>) -> Chain<B> + Send + Sync + 'static,
    ) -> Self {
        let inner = self.clone();
        Cochain {
            degree,
            kind: CochainKind::Pullback,
            rule: Arc::new(move |t| {
                inner
                    .eval(&op(&Chain::from_tensor(t.clone())))
                    .expect("pullback operator must land in the cochain degree")
            }),
        }
    }

    /// The coboundary `(delta T)(x) = T(d x)`, one degree up.
    pub fn coboundary(&self) -> Self {
        let mut out = self.pullback(self.degree + 1, |x| {
            boundary(x).expect("coboundary argument has degree >= 1")
        });
        out.kind = CochainKind::Pullback;
        out
    }

    /// The cyclic symmetrization `(1/(n+1)) sum_j T . t^j`.
    pub fn symmetrized(&self) -> Self {
        let inner = self.clone();
        let n = self.degree;
        let avg = Scalar::new(BigInt::one(), BigInt::from(n + 1));
        Cochain {
            degree: n,
            kind: CochainKind::Combination,
            rule: Arc::new(move |t| {
                let mut x = Chain::from_tensor(t.clone());
                let mut sum = inner.eval_tensor(t);
                for _ in 0..n {
                    x = cyclic_shift(&x);
                    sum += inner.eval(&x).expect("shift preserves the degree");
                }
                sum * &avg
            }),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let inner = self.clone();
        let c = c.clone();
        Cochain {
            degree: self.degree,
            kind: CochainKind::Combination,
            rule: Arc::new(move |t| inner.eval_tensor(t) * &c),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "cochain degrees must match");
        let (a, b) = (self.clone(), rhs.clone());
        Cochain {
            degree: self.degree,
            kind: CochainKind::Combination,
            rule: Arc::new(move |t| a.eval_tensor(t) + b.eval_tensor(t)),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scaled(&-Scalar::one()))
    }
}

/// The diagonal trace: `lambda` on every `p_beta q_beta` (the unit
/// included), zero elsewhere.
pub fn trace_cuntz(lambda: Scalar) -> Cochain<CuntzMonomial> {
    Cochain {
        degree: 0,
        kind: CochainKind::TracePower,
        rule: Arc::new(move |t| {
            let m = &t.factors()[0];
            if m.alpha() == m.beta() {
                lambda.clone()
            } else {
                Scalar::zero()
            }
        }),
    }
}

/// The trace power `tau^(n)(a_1 (x) ... (x) a_(n+1)) = tau(a_1 ... a_(n+1))`
/// for even `n`; a cyclic cocycle whenever `tau` is a trace.
pub fn trace_power<B>(tau: &Cochain<B>, degree: usize) -> Result<Cochain<B>>
where
    B: Basis + Send + Sync + 'static,
{
    if tau.degree() != 0 {
        return Err(Error::DegreeMismatch {
            expected: 0,
            found: tau.degree(),
        });
    }
    if degree % 2 != 0 {
        return Err(Error::OddDegree(degree));
    }
    let tau = tau.clone();
    Ok(Cochain {
        degree,
        kind: CochainKind::TracePower,
        rule: Arc::new(move |t| {
            let mut product = B::unit();
            for a in t.factors() {
                match product.mul(a) {
                    Some(next) => product = next,
                    None => return Scalar::zero(),
                }
            }
            tau.eval_tensor(&ElementaryTensor::new(vec![product]))
        }),
    })
}

/// Split an even-degree cocycle into its value on the all-units tensor and
/// a remainder vanishing there: `phi = lambda tau_1 + phi_0`.
pub fn one_normalize(
    phi: &Cochain<CuntzMonomial>,
) -> Result<(Scalar, Cochain<CuntzMonomial>)> {
    if phi.degree() % 2 != 0 {
        return Err(Error::OddDegree(phi.degree()));
    }
    let lambda = phi.eval_tensor(&ElementaryTensor::units(phi.degree()));
    let unit_power = trace_power(&trace_cuntz(Scalar::one()), phi.degree())?;
    let phi0 = phi.sub(&unit_power.scaled(&lambda));
    Ok((lambda, phi0))
}

/// Constructively cobound a normalized cyclic cocycle.
///
/// For a degree-`n` cocycle `phi` vanishing on the all-units tensor, the
/// primitive is
///
/// ```text
/// psi = phi . r  +  (phi - delta(phi . r)) . s~
/// ```
///
/// where `r` is the weighted long splitting operator in degree `n - 1` and
/// `s~` is the homotopy of [`PhiHomotopy`] for the factor list `1..=n+1`.
/// The first pullback cobounds `phi` on transition-free tensors; the
/// second transports what is left through `Phi`, whose image the remainder
/// kills. The result satisfies `phi = delta psi` exactly.
///
/// The preconditions (cyclicity, the cocycle identity, vanishing on units)
/// are validated on the two supplied sample sets: `samples_at` of degree
/// `n` for cyclicity, `samples_above` of degree `n + 1` for the cocycle
/// identity.
pub fn cobound_normalized(
    phi: &Cochain<CuntzMonomial>,
    samples_at: &[Chain<CuntzMonomial>],
    samples_above: &[Chain<CuntzMonomial>],
) -> Result<Cochain<CuntzMonomial>> {
    let n = phi.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    for x in samples_at {
        if phi.eval(&cyclic_shift(x))? != phi.eval(x)? {
            return Err(Error::NotCyclic);
        }
    }
    if !phi.eval_tensor(&ElementaryTensor::units(n)).is_zero() {
        return Err(Error::NotNormalized);
    }
    for y in samples_above {
        if !phi.eval(&boundary(y)?)?.is_zero() {
            return Err(Error::NotCocycle);
        }
    }

    let psi1 = phi.pullback(n - 1, |z| s_apply(&SplitSpec::long_cuntz(), z));
    let phi1 = phi.sub(&psi1.coboundary());
    let homotopy = PhiHomotopy::new(n);
    let psi2 = phi1.pullback(n - 1, move |z| homotopy.apply(z));
    Ok(psi1.add(&psi2))
}

/// The smallest cyclic rotation of a word, used as the class key of a
/// rotation-invariant functional.
fn canonical_rotation(w: &Word) -> Word {
    let mut best = w.clone();
    let mut current = w.clone();
    for _ in 1..w.len() {
        current = current.rotated_right();
        if current < best {
            best = current.clone();
        }
    }
    best
}

/// A rotation-invariant functional on words: a value on the empty word and
/// one value per cyclic class of nonempty words.
#[derive(Clone, Debug)]
pub struct WordTrace {
    unit: Scalar,
    classes: BTreeMap<Word, Scalar>,
}

impl WordTrace {
    pub fn new(unit: Scalar, classes: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (w, c) in classes {
            assert!(!w.is_empty(), "the empty word is covered by the unit value");
            *map.entry(canonical_rotation(&w)).or_insert_with(Scalar::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        WordTrace {
            unit,
            classes: map,
        }
    }

    pub fn unit_value(&self) -> &Scalar {
        &self.unit
    }

    pub fn eval(&self, w: &Word) -> Scalar {
        if w.is_empty() {
            return self.unit.clone();
        }
        self.classes
            .get(&canonical_rotation(w))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }
}

/// A pair of rotation-invariant functionals on `p` words and `q` words
/// agreeing on the unit.
#[derive(Clone, Debug)]
pub struct TracePair {
    pub tau_p: WordTrace,
    pub tau_q: WordTrace,
}

/// The trace of the reduced algebra determined by a pair of word
/// functionals.
///
/// Reducing `q_beta p_alpha` drives the four cases: equal words give the
/// shared unit value, a proper `beta` prefix leaves a `p` word for
/// `tau_p`, a proper `alpha` prefix leaves a `q` word for `tau_q`, and
/// unrelated words give zero.
pub fn trace_from_pair(pair: &TracePair) -> Result<Cochain<CuntzMonomial>> {
    if pair.tau_p.unit != pair.tau_q.unit {
        return Err(Error::UnitMismatch {
            left: pair.tau_p.unit.clone(),
            right: pair.tau_q.unit.clone(),
        });
    }
    let pair = pair.clone();
    Ok(Cochain {
        degree: 0,
        kind: CochainKind::TracePower,
        rule: Arc::new(move |t| {
            let m = &t.factors()[0];
            let (alpha, beta) = (m.alpha(), m.beta());
            if alpha == beta {
                pair.tau_p.unit.clone()
            } else if alpha.starts_with(beta) {
                pair.tau_p.eval(&alpha.suffix_from(beta.len()))
            } else if beta.starts_with(alpha) {
                pair.tau_q.eval(&beta.suffix_from(alpha.len()))
            } else {
                Scalar::zero()
            }
        }),
    })
}

/// Project a homogeneous combination of free words onto its
/// rotation-invariant part by averaging the cyclic rotations of each word.
pub fn invariant_project(x: &LinComb<FreeWord>) -> Result<LinComb<FreeWord>> {
    let mut layer: Option<usize> = None;
    for w in x.support() {
        match layer {
            None => layer = Some(w.order()),
            Some(k) if k == w.order() => {}
            Some(_) => return Err(Error::MixedLengths),
        }
    }
    let Some(k) = layer else {
        return Ok(LinComb::zero());
    };
    if k == 0 {
        return Ok(x.clone());
    }
    let avg = Scalar::new(BigInt::one(), BigInt::from(k));
    Ok(x.lin_map(|w| {
        let mut out = LinComb::zero();
        let mut current = w.word().clone();
        for _ in 0..k {
            out.add_term(FreeWord::new(current.clone()), avg.clone());
            current = current.rotated_right();
        }
        out
    }))
}

//! Seeded generators, independent oracles, and the named check registry.
//!
//! Every identity the library claims is bound here to an executable,
//! reproducible verification. A check draws samples from per-trial random
//! streams derived from a master seed, evaluates both sides of its
//! identity exactly, and records counterexamples verbatim; identical
//! [`GenParams`] always reproduce the identical report. The mutation
//! switch deliberately corrupts the boundary composition the checks build
//! for themselves, demonstrating that the suite notices a single sign
//! fault.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{scalar_int, Basis, LinComb, Scalar};
use crate::chains::{
    boundary, cyclic_equiv, cyclic_norm, cyclic_shift, face_map, left_mul, right_mul,
    transition_profile, Chain, ElementaryTensor,
};
use crate::cochains::{
    cobound_normalized, invariant_project, one_normalize, trace_cuntz, trace_from_pair,
    trace_power, Cochain, TracePair, WordTrace,
};
use crate::error::{Error, Result};
use crate::homotopy::{
    p_apply, p_terms, phi_apply, rho_long_cuntz, rho_long_free, s_apply, s_slot, sd_term,
    ds_term, PhiHomotopy, SplitSpec,
};
use crate::semigroup::{cuntz_mul, free_mul, CuntzMonomial, FreeWord, Word};

/// The deliberate fault a check run can inject into its own boundary
/// composition.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    None,
    /// Flip the sign of face 1 wherever a check composes the boundary
    /// itself. Core operators stay intact; the flip lives in the harness.
    FlipFaceSign,
}

/// Sampling parameters. Identical values reproduce identical sample
/// streams and therefore identical reports.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GenParams {
    pub seed: u64,
    /// Fixed degree for every check, or `None` for each check's default
    /// sweep. Checks clamp to their minimum meaningful degree.
    pub degree: Option<usize>,
    /// Largest word length drawn for any single `p`/`q`/free part.
    pub max_len: usize,
    /// Largest generator index drawn.
    pub index_bound: u32,
    /// Trials per degree (and per transition count where applicable).
    pub trials: usize,
    /// Constrain sampled tensors to have no transitions.
    pub no_transition: bool,
    /// Constrain sampled factors to be non-units.
    pub unit_free: bool,
    pub mutation: Mutation,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            degree: None,
            max_len: 3,
            index_bound: 3,
            trials: 100,
            no_transition: false,
            unit_free: false,
            mutation: Mutation::None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One counterexample: the sampled input and the two sides that were
/// expected to agree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// The outcome of one named check over one parameter set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: GenParams,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub status: Status,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// The random stream for one trial. Streams are indexed, not chained, so
/// evaluation order cannot change what any trial sees.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

struct Runner<'a> {
    p: &'a GenParams,
    next_stream: u64,
    trials: usize,
    failures: Vec<Failure>,
}

impl<'a> Runner<'a> {
    fn new(p: &'a GenParams) -> Self {
        Runner {
            p,
            next_stream: 0,
            trials: 0,
            failures: Vec::new(),
        }
    }

    fn begin(&mut self) -> (usize, ChaCha8Rng) {
        let idx = self.next_stream;
        self.next_stream += 1;
        self.trials += 1;
        (idx as usize, trial_rng(self.p.seed, idx))
    }

    fn fail(
        &mut self,
        trial: usize,
        input: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) {
        self.failures.push(Failure {
            trial,
            input: input.into(),
            expected: expected.into(),
            actual: actual.into(),
        });
    }

    fn expect_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        trial: usize,
        input: &str,
        expected: &T,
        actual: &T,
    ) {
        if expected != actual {
            self.fail(trial, input, expected.to_string(), actual.to_string());
        }
    }

    fn expect_zero<B: Basis>(&mut self, trial: usize, input: &str, actual: &Chain<B>) {
        if !actual.is_zero() {
            self.fail(trial, input, "0", actual.to_string());
        }
    }

    fn into_report(self, check: &str) -> CheckReport {
        let status = if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckReport {
            check: check.to_string(),
            params: self.p.clone(),
            trials: self.trials,
            failures: self.failures,
            status,
        }
    }
}

fn degrees(p: &GenParams, default: &[usize]) -> Vec<usize> {
    match p.degree {
        Some(n) => vec![n.max(1)],
        None => default.to_vec(),
    }
}

fn sign_pow(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

// ---- generators -----------------------------------------------------------

pub fn rand_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let numer = loop {
        let v: i64 = rng.gen_range(-3..=3);
        if v != 0 {
            break v;
        }
    };
    let denom: i64 = rng.gen_range(1..=3);
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

fn rand_word_in(rng: &mut ChaCha8Rng, max_len: usize, index_bound: u32, min_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len.max(min_len));
    let indices: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=index_bound)).collect();
    Word::from_indices(&indices)
}

/// A random monomial; `unit_free` forces it off the unit.
pub fn rand_monomial(rng: &mut ChaCha8Rng, p: &GenParams) -> CuntzMonomial {
    let alpha = rand_word_in(rng, p.max_len, p.index_bound, 0);
    let mut beta = rand_word_in(rng, p.max_len, p.index_bound, 0);
    if p.unit_free && alpha.is_empty() && beta.is_empty() {
        beta = rand_word_in(rng, p.max_len, p.index_bound, 1);
    }
    CuntzMonomial::new(alpha, beta)
}

/// A random elementary tensor of the given degree honoring the parameter
/// flags. With `no_transition` every junction is resolved by construction:
/// each junction empties one of its two word parts, chosen at random, and
/// the remaining parts are sampled freely.
pub fn rand_tensor(
    rng: &mut ChaCha8Rng,
    degree: usize,
    p: &GenParams,
) -> ElementaryTensor<CuntzMonomial> {
    if !p.no_transition {
        let factors = (0..=degree).map(|_| rand_monomial(rng, p)).collect();
        return ElementaryTensor::new(factors);
    }
    let count = degree + 1;
    // kill_beta[i]: junction i is resolved by beta_i = empty; otherwise by
    // alpha_(i+1) = empty
    let kill_beta = loop {
        let bits: Vec<bool> = (0..count).map(|_| rng.gen()).collect();
        if !p.unit_free {
            break bits;
        }
        let forces_unit =
            (0..count).any(|j| bits[j] && !bits[(j + count - 1) % count]);
        if !forces_unit {
            break bits;
        }
    };
    let mut alphas = vec![Word::empty(); count];
    let mut betas = vec![Word::empty(); count];
    for j in 0..count {
        let beta_empty = kill_beta[j];
        let alpha_empty = !kill_beta[(j + count - 1) % count];
        let force_other = p.unit_free;
        if !alpha_empty {
            let min = if force_other && beta_empty { 1 } else { 0 };
            alphas[j] = rand_word_in(rng, p.max_len, p.index_bound, min);
        }
        if !beta_empty {
            let min = if force_other && alpha_empty { 1 } else { 0 };
            betas[j] = rand_word_in(rng, p.max_len, p.index_bound, min);
        }
        if p.unit_free && alphas[j].is_empty() && betas[j].is_empty() {
            // neither side forced: re-roll one of the free sides nonempty
            if beta_empty {
                alphas[j] = rand_word_in(rng, p.max_len, p.index_bound, 1);
            } else {
                betas[j] = rand_word_in(rng, p.max_len, p.index_bound, 1);
            }
        }
    }
    let factors = alphas
        .into_iter()
        .zip(betas)
        .map(|(a, b)| CuntzMonomial::new(a, b))
        .collect();
    ElementaryTensor::new(factors)
}

/// A random elementary tensor with exactly `k` transitions. Junction `i`
/// constrains `beta_i` and `alpha_(i+1)` and nothing else, so forcing the
/// chosen `k` junctions and resolving the rest never conflicts.
pub fn rand_exact_transitions(
    rng: &mut ChaCha8Rng,
    degree: usize,
    k: usize,
    p: &GenParams,
) -> ElementaryTensor<CuntzMonomial> {
    let count = degree + 1;
    assert!(k <= count, "at most one transition per junction");
    let chosen: BTreeSet<usize> = sample_indices(rng, count, k).into_iter().collect();
    let mut alphas = vec![Word::empty(); count];
    let mut betas = vec![Word::empty(); count];
    for i in 0..count {
        let succ = (i + 1) % count;
        if chosen.contains(&i) {
            betas[i] = rand_word_in(rng, p.max_len, p.index_bound, 1);
            alphas[succ] = rand_word_in(rng, p.max_len, p.index_bound, 1);
        } else if rng.gen() {
            // beta_i stays empty
            alphas[succ] = rand_word_in(rng, p.max_len, p.index_bound, 0);
        } else {
            // alpha_(i+1) stays empty
            betas[i] = rand_word_in(rng, p.max_len, p.index_bound, 0);
        }
    }
    let factors = alphas
        .into_iter()
        .zip(betas)
        .map(|(a, b)| CuntzMonomial::new(a, b))
        .collect();
    ElementaryTensor::new(factors)
}

/// A random elementary tensor over the free tensor algebra.
pub fn rand_free_tensor(
    rng: &mut ChaCha8Rng,
    degree: usize,
    p: &GenParams,
) -> ElementaryTensor<FreeWord> {
    let min = usize::from(p.unit_free);
    let factors = (0..=degree)
        .map(|_| FreeWord::new(rand_word_in(rng, p.max_len, p.index_bound, min)))
        .collect();
    ElementaryTensor::new(factors)
}

/// A short random chain: one to three sampled tensors with small rational
/// coefficients.
pub fn rand_chain(rng: &mut ChaCha8Rng, degree: usize, p: &GenParams) -> Chain<CuntzMonomial> {
    let terms = rng.gen_range(1..=3);
    let mut out = Chain::zero(degree);
    for _ in 0..terms {
        let c = rand_scalar(rng);
        out.add_term(rand_tensor(rng, degree, p), c);
    }
    out
}

pub fn rand_free_chain(rng: &mut ChaCha8Rng, degree: usize, p: &GenParams) -> Chain<FreeWord> {
    let terms = rng.gen_range(1..=3);
    let mut out = Chain::zero(degree);
    for _ in 0..terms {
        let c = rand_scalar(rng);
        out.add_term(rand_free_tensor(rng, degree, p), c);
    }
    out
}

/// A random cyclic cocycle `delta chi + c tau_1^(degree)` with `chi` a
/// symmetrized random table one degree down. Odd degrees force `c = 0`
/// because the trace power only exists in even degrees.
pub fn rand_cocycle(
    rng: &mut ChaCha8Rng,
    p: &GenParams,
    degree: usize,
    c: &Scalar,
) -> Result<Cochain<CuntzMonomial>> {
    assert!(degree >= 1, "cocycle sampling starts in degree 1");
    if degree % 2 == 1 && !c.is_zero() {
        return Err(Error::OddDegree(degree));
    }
    let mut table = BTreeMap::new();
    for _ in 0..3 {
        table.insert(rand_tensor(rng, degree - 1, p), rand_scalar(rng));
    }
    let chi = Cochain::table(degree - 1, table).symmetrized();
    let mut phi = chi.coboundary();
    if !c.is_zero() {
        let tau = trace_power(&trace_cuntz(Scalar::one()), degree)?;
        phi = phi.add(&tau.scaled(c));
    }
    Ok(phi)
}

fn rand_word_trace(rng: &mut ChaCha8Rng, p: &GenParams, unit: &Scalar) -> WordTrace {
    let classes: Vec<(Word, Scalar)> = (0..2)
        .map(|_| {
            (
                rand_word_in(rng, p.max_len, p.index_bound, 1),
                rand_scalar(rng),
            )
        })
        .collect();
    WordTrace::new(unit.clone(), classes)
}

// ---- harness-level boundary (mutation entry point) ------------------------

fn ctx_face<B: Basis>(p: &GenParams, i: usize, x: &Chain<B>) -> Result<Chain<B>> {
    let f = face_map(i, x)?;
    Ok(if p.mutation == Mutation::FlipFaceSign && i == 1 {
        -&f
    } else {
        f
    })
}

/// The boundary as the checks compose it: the face sum, with the mutation
/// switch applied. With [`Mutation::None`] this is exactly [`boundary`].
pub fn ctx_boundary<B: Basis>(p: &GenParams, x: &Chain<B>) -> Result<Chain<B>> {
    let mut out = ctx_face(p, 0, x)?;
    for i in 1..=x.degree() {
        out = &out + &ctx_face(p, i, x)?;
    }
    Ok(out)
}

// ---- independent membership oracle ----------------------------------------

/// Whether `z` lies in the image of `I - t`, decided by exact Gaussian
/// elimination over the rotation closure of the support of `z`. This is
/// the linear-algebra counterpart of the kernel-of-`N` test and shares no
/// code with it.
pub fn in_shift_image<B: Basis>(z: &Chain<B>) -> bool {
    if z.is_zero() {
        return true;
    }
    let n = z.degree();
    let mut closure: BTreeSet<ElementaryTensor<B>> = BTreeSet::new();
    for (t, _) in z.terms().iter() {
        let mut u = t.clone();
        for _ in 0..=n {
            if !closure.insert(u.clone()) {
                break;
            }
            u = u.rotated();
        }
    }
    let index: BTreeMap<&ElementaryTensor<B>, usize> =
        closure.iter().zip(0..).collect();
    let dim = index.len();
    let shift_sign = sign_pow(n);

    // columns are (I - t) e_u for u in the closure, then z augmented
    let mut rows = vec![vec![Scalar::zero(); dim + 1]; dim];
    for (u, &j) in &index {
        rows[j][j] += Scalar::one();
        let r = u.rotated();
        let target = index[&r];
        rows[target][j] -= shift_sign.clone();
    }
    for (t, c) in z.terms().iter() {
        rows[index[t]][dim] = c.clone();
    }

    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..dim).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for v in rows[rank][col..].iter_mut() {
            if !v.is_zero() {
                *v = &*v / &lead;
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c2 in col..=dim {
                if !pivot_row[c2].is_zero() {
                    let delta = &pivot_row[c2] * &factor;
                    row[c2] -= delta;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|row| row[dim].is_zero())
}

// ---- the named checks ------------------------------------------------------

fn check_d_squared_zero(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let x = rand_chain(&mut rng, n + 1, p);
            let once = ctx_boundary(p, &x).expect("degree is at least 2");
            let twice = ctx_boundary(p, &once).expect("degree is at least 1");
            r.expect_zero(trial, &format!("x = {x}"), &twice);
        }
    }
    r.into_report("d-squared-zero")
}

fn check_shift_order(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let x = rand_chain(&mut rng, n, p);
            let mut y = x.clone();
            for _ in 0..=n {
                y = cyclic_shift(&y);
            }
            r.expect_eq(trial, &format!("x = {x}"), &x, &y);
        }
    }
    r.into_report("shift-order")
}

fn check_norm_annihilates(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let x = rand_chain(&mut rng, n, p);
            let reduced = &x - &cyclic_shift(&x);
            r.expect_zero(
                trial,
                &format!("N((1 - t)x), x = {x}"),
                &cyclic_norm(&reduced),
            );
            let normed = cyclic_norm(&x);
            r.expect_zero(
                trial,
                &format!("(1 - t)(N x), x = {x}"),
                &(&normed - &cyclic_shift(&normed)),
            );
        }
    }
    r.into_report("norm-annihilates")
}

fn check_cyclic_equiv_oracle(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let x = rand_chain(&mut rng, n, p);
            let y = if rng.gen() {
                // equivalent by construction
                let v = rand_chain(&mut rng, n, p);
                &x + &(&v - &cyclic_shift(&v))
            } else {
                rand_chain(&mut rng, n, p)
            };
            let expected = in_shift_image(&(&x - &y));
            let actual = cyclic_equiv(&x, &y).expect("equal degrees");
            if expected != actual {
                r.fail(
                    trial,
                    format!("x = {x}; y = {y}"),
                    format!("linear solve: {expected}"),
                    format!("kernel of N: {actual}"),
                );
            }
        }
    }
    r.into_report("cyclic-equiv-oracle")
}

fn lemma_33_items<B: Basis>(
    r: &mut Runner,
    trial: usize,
    spec: &SplitSpec<B>,
    x: &Chain<B>,
) {
    let n = x.degree();
    let tx = cyclic_shift(x);
    let input = |k: usize| format!("{} spec, item for slot {k}, x = {x}", spec.name);
    let lhs = s_slot(spec, 1, &tx);
    let rhs = cyclic_shift(&cyclic_shift(&s_slot(spec, n + 1, x)));
    r.expect_eq(trial, &input(1), &rhs, &lhs);
    for k in 2..=n + 1 {
        let lhs = s_slot(spec, k, &tx);
        let rhs = cyclic_shift(&s_slot(spec, k - 1, x));
        r.expect_eq(trial, &input(k), &rhs, &lhs);
    }
    // item (iii): the full operator changes s(x) only up to cyclic
    // equivalence, weighted operators included
    let diff = &s_apply(spec, &tx) - &s_apply(spec, x);
    r.expect_zero(
        trial,
        &format!("{} spec, N(s(tx) - s(x)), x = {x}", spec.name),
        &cyclic_norm(&diff),
    );
}

fn check_lemma_33(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let xc = rand_chain(&mut rng, n, p);
            let xf = rand_free_chain(&mut rng, n, p);
            lemma_33_items(&mut r, trial, &SplitSpec::simple_cuntz(), &xc);
            lemma_33_items(&mut r, trial, &SplitSpec::long_cuntz(), &xc);
            lemma_33_items(&mut r, trial, &SplitSpec::long_free(), &xf);
        }
    }
    r.into_report("lemma-3.3")
}

fn lemma_34_cancellations<B: Basis>(
    r: &mut Runner,
    trial: usize,
    spec: &SplitSpec<B>,
    x: &Chain<B>,
) {
    let n = x.degree();
    let pair = |r: &mut Runner, label: String, a: Result<Chain<B>>, b: Result<Chain<B>>| {
        let a = a.expect("indices in range");
        let b = b.expect("indices in range");
        let sum = &a + &b;
        if !sum.is_zero() {
            r.fail(trial, label, "0".to_string(), sum.to_string());
        }
    };
    for k in 1..n {
        pair(
            r,
            format!("{} spec, s_{k} d_0 + d_0 s_{}, x = {x}", spec.name, k + 1),
            sd_term(spec, k, 0, x),
            ds_term(spec, 0, k + 1, x),
        );
    }
    for j in 1..=n {
        for k in j + 1..=n {
            pair(
                r,
                format!("{} spec, s_{k} d_{j} + d_{j} s_{}, x = {x}", spec.name, k + 1),
                sd_term(spec, k, j, x),
                ds_term(spec, j, k + 1, x),
            );
        }
    }
    for k in 1..=n {
        for j in k + 1..=n {
            pair(
                r,
                format!("{} spec, s_{k} d_{j} + d_{} s_{k}, x = {x}", spec.name, j + 1),
                sd_term(spec, k, j, x),
                ds_term(spec, j + 1, k, x),
            );
        }
    }
}

fn check_lemma_34_cancellation(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let xc = rand_chain(&mut rng, n, p);
            let xf = rand_free_chain(&mut rng, n, p);
            lemma_34_cancellations(&mut r, trial, &SplitSpec::simple_cuntz(), &xc);
            lemma_34_cancellations(&mut r, trial, &SplitSpec::long_cuntz(), &xc);
            lemma_34_cancellations(&mut r, trial, &SplitSpec::long_free(), &xf);
        }
    }
    r.into_report("lemma-3.4-cancellation")
}

fn raw_slot_sum<B: Basis>(spec: &SplitSpec<B>, x: &Chain<B>) -> Chain<B> {
    let n = x.degree();
    let mut acc = Chain::zero(n + 1);
    for k in 1..=n + 1 {
        acc = &acc + &s_slot(spec, k, x);
    }
    acc
}

fn lemma_34_sum<B: Basis>(
    p: &GenParams,
    r: &mut Runner,
    trial: usize,
    spec: &SplitSpec<B>,
    x: &Chain<B>,
) {
    let n = x.degree();
    let terms = p_terms(spec, x).expect("degree is at least 1");
    if terms.len() != 4 * n + 4 {
        r.fail(
            trial,
            format!("{} spec, labelled term count, x = {x}", spec.name),
            (4 * n + 4).to_string(),
            terms.len().to_string(),
        );
    }
    let mut sum = Chain::zero(n);
    for (_, term) in &terms {
        sum = &sum + term;
    }
    let rhs = &raw_slot_sum(spec, &ctx_boundary(p, x).expect("degree is at least 1"))
        + &ctx_boundary(p, &raw_slot_sum(spec, x)).expect("degree raised first");
    r.expect_eq(
        trial,
        &format!("{} spec, term sum against sd + ds, x = {x}", spec.name),
        &rhs,
        &sum,
    );
    if !spec.weighted {
        let direct = p_apply(spec, x).expect("degree is at least 1");
        r.expect_eq(
            trial,
            &format!("{} spec, term sum against P, x = {x}", spec.name),
            &direct,
            &sum,
        );
    }
}

fn check_lemma_34_sum(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let xc = rand_chain(&mut rng, n, p);
            let xf = rand_free_chain(&mut rng, n, p);
            lemma_34_sum(p, &mut r, trial, &SplitSpec::simple_cuntz(), &xc);
            lemma_34_sum(p, &mut r, trial, &SplitSpec::long_cuntz(), &xc);
            lemma_34_sum(p, &mut r, trial, &SplitSpec::long_free(), &xf);
        }
    }
    r.into_report("lemma-3.4-sum")
}

/// The four boundary-slot compositions of the wraparound expansion, built
/// directly from the splitting of single factors rather than through the
/// slot operators.
fn lemma_35_oracle<B: Basis>(
    spec: &SplitSpec<B>,
    t: &ElementaryTensor<B>,
) -> [Chain<B>; 4] {
    let n = t.degree();
    let f = t.factors();
    let prefix: Vec<B> = f[1..n].to_vec();
    let with_parts = |parts: &[B]| {
        let mut v = prefix.clone();
        v.extend_from_slice(parts);
        ElementaryTensor::new(v)
    };

    // s_n d_0: split the wraparound product in place
    let mut sd_cyclic = Chain::zero(n);
    if let Some(prod) = f[n].mul(&f[0]) {
        for (u, c) in spec.split(&prod).terms().iter() {
            sd_cyclic.add_term(with_parts(u.factors()), c * &sign_pow(n));
        }
    }

    // d_(n+1) s_(n+1): multiplied splitting of the last factor, rotated
    let mut z = Chain::zero(n);
    for (u, c) in spec.split(&f[n]).terms().iter() {
        if let Some(prod) = u.factors()[0].mul(&u.factors()[1]) {
            z.add_term(with_parts(&[prod, f[0].clone()]), c.clone());
        }
    }
    let ds_cyclic_diag = cyclic_shift(&z).scaled(&sign_pow(n));

    // d_0 s_1: the last factor multiplied into the splitting of the first
    let mut z = Chain::zero(n);
    for (u, c) in spec.split(&f[0]).terms().iter() {
        if let Some(prod) = f[n].mul(&u.factors()[0]) {
            z.add_term(with_parts(&[prod, u.factors()[1].clone()]), c.clone());
        }
    }
    let ds_cyclic_lmul = cyclic_shift(&z).scaled(&sign_pow(n + 1));

    // d_0 s_(n+1): the splitting of the last factor multiplied into the
    // first
    let mut ds_cyclic_rmul = Chain::zero(n);
    for (u, c) in spec.split(&f[n]).terms().iter() {
        if let Some(prod) = u.factors()[1].mul(&f[0]) {
            ds_cyclic_rmul.add_term(
                with_parts(&[u.factors()[0].clone(), prod]),
                c * &sign_pow(n + 1),
            );
        }
    }

    [sd_cyclic, ds_cyclic_diag, ds_cyclic_lmul, ds_cyclic_rmul]
}

fn lemma_35_items<B: Basis>(
    r: &mut Runner,
    trial: usize,
    spec: &SplitSpec<B>,
    t: &ElementaryTensor<B>,
) {
    let n = t.degree();
    let x = Chain::from_tensor(t.clone());
    let [sd_c, ds_diag, ds_lmul, ds_rmul] = lemma_35_oracle(spec, t);
    let checks = [
        ("s_n d_0", sd_term(spec, n, 0, &x), sd_c),
        ("d_(n+1) s_(n+1)", ds_term(spec, n + 1, n + 1, &x), ds_diag),
        ("d_0 s_1", ds_term(spec, 0, 1, &x), ds_lmul),
        ("d_0 s_(n+1)", ds_term(spec, 0, n + 1, &x), ds_rmul),
    ];
    for (label, actual, expected) in checks {
        let actual = actual.expect("indices in range");
        r.expect_eq(
            trial,
            &format!("{} spec, {label}, x = {t}", spec.name),
            &expected,
            &actual,
        );
    }
}

fn check_lemma_35(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let tc = rand_tensor(&mut rng, n, p);
            let tf = rand_free_tensor(&mut rng, n, p);
            lemma_35_items(&mut r, trial, &SplitSpec::simple_cuntz(), &tc);
            lemma_35_items(&mut r, trial, &SplitSpec::long_cuntz(), &tc);
            lemma_35_items(&mut r, trial, &SplitSpec::long_free(), &tf);
        }
    }
    r.into_report("lemma-3.5")
}

fn leibniz_case_cuntz(
    r: &mut Runner,
    trial: usize,
    a: &CuntzMonomial,
    b: &CuntzMonomial,
) {
    let Some(ab) = cuntz_mul(a, b) else {
        // a transition-free junction never multiplies to zero
        r.fail(
            trial,
            format!("a = {a}; b = {b}"),
            "nonzero product",
            "0",
        );
        return;
    };
    let lhs = rho_long_cuntz(&ab);
    let rhs = &left_mul(a, &rho_long_cuntz(b)) + &right_mul(&rho_long_cuntz(a), b);
    r.expect_eq(trial, &format!("a = {a}; b = {b}"), &rhs, &lhs);
}

fn leibniz_case_free(r: &mut Runner, trial: usize, u: &FreeWord, v: &FreeWord) {
    let lhs = rho_long_free(&free_mul(u, v));
    let rhs = &left_mul(u, &rho_long_free(v)) + &right_mul(&rho_long_free(u), v);
    r.expect_eq(trial, &format!("u = {u}; v = {v}"), &rhs, &lhs);
}

fn all_words(max_len: usize, alphabet: u32) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 1..=alphabet {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| Word::from_indices(v)));
        layer = next;
    }
    out
}

fn check_lemma_58(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for t in 0..p.trials.max(1) {
        let (trial, mut rng) = r.begin();
        if t == 0 {
            // exhaustive over short monomials on two generators
            let words = all_words(4, 2);
            let mut monomials = Vec::new();
            for alpha in &words {
                for beta in &words {
                    if alpha.len() + beta.len() <= 4 {
                        monomials.push(CuntzMonomial::new(alpha.clone(), beta.clone()));
                    }
                }
            }
            for a in &monomials {
                for b in &monomials {
                    if a.beta().is_empty() || b.alpha().is_empty() {
                        leibniz_case_cuntz(&mut r, trial, a, b);
                    }
                }
            }
            let free_words: Vec<FreeWord> =
                words.iter().map(|w| FreeWord::new(w.clone())).collect();
            for u in &free_words {
                for v in &free_words {
                    leibniz_case_free(&mut r, trial, u, v);
                }
            }
            continue;
        }
        let mut a = rand_monomial(&mut rng, p);
        let mut b = rand_monomial(&mut rng, p);
        if !a.beta().is_empty() && !b.alpha().is_empty() {
            if rng.gen() {
                a = CuntzMonomial::new(a.alpha().clone(), Word::empty());
            } else {
                b = CuntzMonomial::new(Word::empty(), b.beta().clone());
            }
        }
        leibniz_case_cuntz(&mut r, trial, &a, &b);
        let u = FreeWord::new(rand_word_in(&mut rng, p.max_len, p.index_bound, 0));
        let v = FreeWord::new(rand_word_in(&mut rng, p.max_len, p.index_bound, 0));
        leibniz_case_free(&mut r, trial, &u, &v);
    }
    r.into_report("lemma-5.8")
}

fn check_k_transitions(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    let spec = SplitSpec::simple_cuntz();
    for n in degrees(p, &[1, 2, 3]) {
        for k in 0..=n + 1 {
            for _ in 0..p.trials {
                let (trial, mut rng) = r.begin();
                let t = rand_exact_transitions(&mut rng, n, k, p);
                let x = Chain::from_tensor(t.clone());
                let sd = s_apply(&spec, &ctx_boundary(p, &x).expect("degree >= 1"));
                let ds = ctx_boundary(p, &s_apply(&spec, &x)).expect("degree raised");
                let z = cyclic_norm(&(&(&sd + &ds) - &x.scaled(&scalar_int(k as i64))));
                if k == 0 {
                    r.expect_zero(trial, &format!("k = 0, x = {t}"), &z);
                    continue;
                }
                for (u, _) in z.terms().iter() {
                    let found = transition_profile(u).transitions;
                    if found > k - 1 {
                        r.fail(
                            trial,
                            format!("k = {k}, x = {t}"),
                            format!("support with at most {} transitions", k - 1),
                            format!("{u} with {found}"),
                        );
                    }
                }
            }
        }
    }
    r.into_report("k-transitions")
}

fn check_no_transition_left(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let x = rand_chain(&mut rng, n, p);
            let z = cyclic_norm(&phi_apply(&x).expect("degree >= 1"));
            for (u, _) in z.terms().iter() {
                let found = transition_profile(u).transitions;
                if found > 0 {
                    r.fail(
                        trial,
                        format!("x = {x}"),
                        "transition-free support".to_string(),
                        format!("{u} with {found} transitions"),
                    );
                }
            }
        }
    }
    r.into_report("no-transition-left")
}

fn check_second_reduction_cuntz(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    let spec = SplitSpec::long_cuntz();
    let mut q = p.clone();
    q.no_transition = true;
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let t = loop {
                let t = rand_tensor(&mut rng, n, &q);
                if t.length() >= 1 {
                    break t;
                }
            };
            let x = Chain::from_tensor(t.clone());
            let rd = s_apply(&spec, &ctx_boundary(p, &x).expect("degree >= 1"));
            let dr = ctx_boundary(p, &s_apply(&spec, &x)).expect("degree raised");
            let z = cyclic_norm(&(&(&rd + &dr) - &x));
            r.expect_zero(trial, &format!("x = {t}"), &z);
        }
    }
    r.into_report("second-reduction-cuntz")
}

fn check_second_reduction_free(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    let spec = SplitSpec::long_free();
    for n in degrees(p, &[1, 2, 3]) {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let t = loop {
                let t = rand_free_tensor(&mut rng, n, p);
                if t.length() >= 1 {
                    break t;
                }
            };
            let x = Chain::from_tensor(t.clone());
            let rd = s_apply(&spec, &ctx_boundary(p, &x).expect("degree >= 1"));
            let dr = ctx_boundary(p, &s_apply(&spec, &x)).expect("degree raised");
            let z = cyclic_norm(&(&(&rd + &dr) - &x));
            r.expect_zero(trial, &format!("x = {t}"), &z);
        }
    }
    r.into_report("second-reduction-free")
}

fn check_trace_commutes(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for _ in 0..p.trials {
        let (trial, mut rng) = r.begin();
        let lambda = rand_scalar(&mut rng);
        let unit = rand_scalar(&mut rng);
        let pair = TracePair {
            tau_p: rand_word_trace(&mut rng, p, &unit),
            tau_q: rand_word_trace(&mut rng, p, &unit),
        };
        let traces = [
            ("diagonal", trace_cuntz(lambda)),
            ("pair", trace_from_pair(&pair).expect("units agree")),
        ];
        let a = rand_monomial(&mut rng, p);
        let b = rand_monomial(&mut rng, p);
        for (name, tau) in &traces {
            let value = |m: Option<CuntzMonomial>| {
                m.map_or_else(Scalar::zero, |m| {
                    tau.eval_tensor(&ElementaryTensor::new(vec![m]))
                })
            };
            let ab = value(cuntz_mul(&a, &b));
            let ba = value(cuntz_mul(&b, &a));
            r.expect_eq(trial, &format!("{name} trace, a = {a}; b = {b}"), &ab, &ba);
        }
    }
    r.into_report("trace-commutes")
}

fn check_trace_power_cocycle(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    let sweep = match p.degree {
        Some(n) => vec![n + n % 2],
        None => vec![0, 2],
    };
    for deg in sweep {
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let unit = rand_scalar(&mut rng);
            let pair = TracePair {
                tau_p: rand_word_trace(&mut rng, p, &unit),
                tau_q: rand_word_trace(&mut rng, p, &unit),
            };
            let traces = [
                ("diagonal", trace_cuntz(Scalar::one())),
                ("pair", trace_from_pair(&pair).expect("units agree")),
            ];
            for (name, tau) in &traces {
                let power = trace_power(tau, deg).expect("even degree");
                let y = rand_chain(&mut rng, deg, p);
                let cycled = power.eval(&cyclic_shift(&y)).expect("degree kept");
                let plain = power.eval(&y).expect("degree kept");
                r.expect_eq(
                    trial,
                    &format!("{name} trace power, cyclicity on y = {y}"),
                    &plain,
                    &cycled,
                );
                let z = rand_chain(&mut rng, deg + 1, p);
                let on_boundary = power
                    .eval(&ctx_boundary(p, &z).expect("degree >= 1"))
                    .expect("degree matches");
                r.expect_eq(
                    trial,
                    &format!("{name} trace power, vanishing on dz, z = {z}"),
                    &Scalar::zero(),
                    &on_boundary,
                );
            }
        }
    }
    r.into_report("trace-power-cocycle")
}

fn check_units_boundary(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for m in degrees(p, &[1, 2, 3, 4]) {
        let (trial, _) = r.begin();
        let u: Chain<CuntzMonomial> = Chain::units(m);
        let du = ctx_boundary(p, &u).expect("degree >= 1");
        let expected = if m % 2 == 1 {
            Chain::zero(m - 1)
        } else {
            Chain::units(m - 1)
        };
        r.expect_eq(trial, &format!("d applied to {u}"), &expected, &du);
    }
    r.into_report("units-boundary")
}

fn check_hc_pipeline(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2]) {
        let (trial, mut rng) = r.begin();
        let c = if n % 2 == 0 {
            rand_scalar(&mut rng)
        } else {
            Scalar::zero()
        };
        let phi = rand_cocycle(&mut rng, p, n, &c).expect("parity honored");
        let phi0 = if n % 2 == 0 {
            let (lambda, phi0) = one_normalize(&phi).expect("even degree");
            r.expect_eq(
                trial,
                &format!("recovered unit value in degree {n}"),
                &c,
                &lambda,
            );
            phi0
        } else {
            let on_units = phi.eval_tensor(&ElementaryTensor::units(n));
            r.expect_eq(
                trial,
                &format!("odd cocycle on the unit tensor in degree {n}"),
                &Scalar::zero(),
                &on_units,
            );
            phi
        };
        let samples_at: Vec<_> = (0..4).map(|_| rand_chain(&mut rng, n, p)).collect();
        let samples_above: Vec<_> = (0..4).map(|_| rand_chain(&mut rng, n + 1, p)).collect();
        let psi = match cobound_normalized(&phi0, &samples_at, &samples_above) {
            Ok(psi) => psi,
            Err(e) => {
                r.fail(
                    trial,
                    format!("cobounding in degree {n}"),
                    "a primitive cochain".to_string(),
                    e.to_string(),
                );
                continue;
            }
        };
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let x = rand_chain(&mut rng, n, p);
            let lhs = phi0.eval(&x).expect("degree matches");
            let rhs = psi
                .eval(&ctx_boundary(p, &x).expect("degree >= 1"))
                .expect("degree matches");
            r.expect_eq(trial, &format!("residual on x = {x}"), &lhs, &rhs);
        }
    }
    r.into_report("hc-pipeline")
}

fn check_phi_homotopy(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    for n in degrees(p, &[1, 2]) {
        let h = PhiHomotopy::new(n);
        for _ in 0..p.trials {
            let (trial, mut rng) = r.begin();
            let x = rand_chain(&mut rng, n, p);
            let lhs = h.phi(&x);
            let dx = boundary(&x).expect("degree >= 1");
            let rhs = &(&x - &h.apply(&dx))
                - &boundary(&h.apply(&x)).expect("degree raised");
            r.expect_eq(trial, &format!("x = {x}"), &rhs, &lhs);
        }
    }
    r.into_report("phi-homotopy")
}

fn rotations(w: &Word) -> Vec<Word> {
    let mut out = Vec::with_capacity(w.len().max(1));
    let mut current = w.clone();
    for _ in 0..w.len().max(1) {
        out.push(current.clone());
        current = current.rotated_right();
    }
    out
}

fn check_invariants_projector(p: &GenParams) -> CheckReport {
    let mut r = Runner::new(p);
    let layers = match p.degree {
        Some(n) => vec![n.max(1).min(4)],
        None => vec![1, 2, 3, 4],
    };
    for (li, k) in layers.iter().copied().enumerate() {
        for t in 0..p.trials {
            let (trial, mut rng) = r.begin();
            if li == 0 && t == 0 {
                // layer-0 fixed point and the mixed-layer error
                let unit = LinComb::basis(FreeWord::unit());
                let projected = invariant_project(&unit).expect("single layer");
                r.expect_eq(trial, "unit layer", &unit, &projected);
                let mixed = &unit + &LinComb::basis(FreeWord::from_indices(&[1]));
                if invariant_project(&mixed) != Err(Error::MixedLengths) {
                    r.fail(
                        trial,
                        "mixed layers",
                        "mixed-length rejection",
                        "accepted",
                    );
                }
            }
            let mut x = LinComb::zero();
            for _ in 0..rng.gen_range(1..=3) {
                x.add_term(
                    FreeWord::new(rand_word_in(&mut rng, k, p.index_bound, k)),
                    rand_scalar(&mut rng),
                );
            }
            let px = invariant_project(&x).expect("single layer");
            let ppx = invariant_project(&px).expect("single layer");
            r.expect_eq(trial, &format!("idempotence on {x}"), &px, &ppx);

            // a functional on the rotation closure of the support
            let mut closure: BTreeSet<Word> = BTreeSet::new();
            for w in x.support() {
                closure.extend(rotations(w.word()));
            }
            let table: BTreeMap<Word, Scalar> = closure
                .iter()
                .map(|w| (w.clone(), rand_scalar(&mut rng)))
                .collect();
            let sym: BTreeMap<Word, Scalar> = closure
                .iter()
                .map(|w| {
                    let orbit = rotations(w);
                    let total: Scalar = orbit
                        .iter()
                        .map(|v| table[v].clone())
                        .fold(Scalar::zero(), |acc, v| acc + v);
                    let avg = total / Scalar::new(BigInt::from(orbit.len()), BigInt::one());
                    (w.clone(), avg)
                })
                .collect();
            let eval = |f: &BTreeMap<Word, Scalar>, y: &LinComb<FreeWord>| {
                let mut out = Scalar::zero();
                for (w, c) in y.iter() {
                    if let Some(v) = f.get(w.word()) {
                        out += c * v;
                    }
                }
                out
            };
            r.expect_eq(
                trial,
                &format!("pairing transpose on {x}"),
                &eval(&sym, &x),
                &eval(&table, &px),
            );
            r.expect_eq(
                trial,
                &format!("invariant functional fixed on {x}"),
                &eval(&sym, &x),
                &eval(&sym, &px),
            );
            if let Some(w) = closure.iter().find(|w| table[*w] != sym[*w]) {
                let e_w = LinComb::basis(FreeWord::new(w.clone()));
                let pw = invariant_project(&e_w).expect("single layer");
                if eval(&table, &pw) == eval(&table, &e_w) {
                    r.fail(
                        trial,
                        format!("non-invariant functional at {w}"),
                        "projection changes the pairing".to_string(),
                        "pairing unchanged".to_string(),
                    );
                }
            }
        }
    }
    r.into_report("invariants-projector")
}

/// The registered check names, in report order.
pub fn check_names() -> &'static [&'static str] {
    &[
        "d-squared-zero",
        "shift-order",
        "norm-annihilates",
        "cyclic-equiv-oracle",
        "lemma-3.3",
        "lemma-3.4-cancellation",
        "lemma-3.4-sum",
        "lemma-3.5",
        "lemma-5.8",
        "k-transitions",
        "no-transition-left",
        "second-reduction-cuntz",
        "second-reduction-free",
        "trace-commutes",
        "trace-power-cocycle",
        "units-boundary",
        "hc-pipeline",
        "phi-homotopy",
        "invariants-projector",
    ]
}

/// Run one named check.
pub fn run_check(name: &str, p: &GenParams) -> Result<CheckReport> {
    let report = match name {
        "d-squared-zero" => check_d_squared_zero(p),
        "shift-order" => check_shift_order(p),
        "norm-annihilates" => check_norm_annihilates(p),
        "cyclic-equiv-oracle" => check_cyclic_equiv_oracle(p),
        "lemma-3.3" => check_lemma_33(p),
        "lemma-3.4-cancellation" => check_lemma_34_cancellation(p),
        "lemma-3.4-sum" => check_lemma_34_sum(p),
        "lemma-3.5" => check_lemma_35(p),
        "lemma-5.8" => check_lemma_58(p),
        "k-transitions" => check_k_transitions(p),
        "no-transition-left" => check_no_transition_left(p),
        "second-reduction-cuntz" => check_second_reduction_cuntz(p),
        "second-reduction-free" => check_second_reduction_free(p),
        "trace-commutes" => check_trace_commutes(p),
        "trace-power-cocycle" => check_trace_power_cocycle(p),
        "units-boundary" => check_units_boundary(p),
        "hc-pipeline" => check_hc_pipeline(p),
        "phi-homotopy" => check_phi_homotopy(p),
        "invariants-projector" => check_invariants_projector(p),
        _ => return Err(Error::UnknownCheck(name.to_string())),
    };
    Ok(report)
}

/// Run the whole registry in order.
pub fn run_all(p: &GenParams) -> Vec<CheckReport> {
    check_names()
        .iter()
        .map(|name| run_check(name, p).expect("registered name"))
        .collect()
}

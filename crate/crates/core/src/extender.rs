//! Ambient extension of `φ^r` by a stepwise Krull-dimension construction.
//!
//! Starting from representatives `α_0, ..., α_m` of `(φ^r)^* x_i`, forms
//! `h_j ≡ α_j (mod I)` are chosen one at a time so that `V(h_0, ..., h_j)` has
//! affine dimension exactly `m - j`. When `α_j` itself fails, it is perturbed by
//! a random element of `I_{q^r}`. After the last step the `h_j` have no common
//! projective zero, so they define a morphism `P^m → P^m` extending `φ^r`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dynsys::{PolarizedSystem, ProjectiveVariety};
use crate::field::{random_scalar, FieldSpec, Scalar};
use crate::field::is_prime_u64;
use crate::groebner::buchberger;
use crate::linalg::DenseMatrix;
use crate::poly::{MonomialOrder, PolyRing, Polynomial, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RPolicy {
    /// Try `r = 1, 2, ..., max_r`.
    AutoSearch { max_r: u32 },
    Fixed(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionConfig {
    pub r_policy: RPolicy,
    /// Repair attempts per step before the step is declared stuck.
    pub max_retries: u32,
    /// Initial bound for random coefficients; doubles after each quarter of the retry budget.
    pub coeff_bound: u64,
    pub allow_conjugation_fallback: bool,
    pub seed: u64,
}

impl Default for ExtensionConfig {
    fn default() -> Self {
        Self {
            r_policy: RPolicy::AutoSearch { max_r: 3 },
            max_retries: 64,
            coeff_bound: 10,
            allow_conjugation_fallback: false,
            seed: 0,
        }
    }
}

/// Smallest `r ≥ 1` with `q^r` larger than `max_degree`.
pub fn starting_r(q: u32, max_degree: u32) -> u32 {
    assert!(q >= 2, "polarization degree must be at least 2");
    let mut r = 1;
    let mut d = q as u64;
    while d <= max_degree as u64 {
        r += 1;
        d *= q as u64;
    }
    r
}

/// `r*`: the threshold past which success is guaranteed once lifts exist.
pub fn guaranteed_r(sys: &PolarizedSystem) -> u32 {
    starting_r(sys.q(), sys.variety().max_generator_degree())
}

/// First `r` tried under `policy`; the search is opportunistic and starts below `r*`.
pub fn select_starting_r(policy: RPolicy) -> u32 {
    match policy {
        RPolicy::AutoSearch { .. } => 1,
        RPolicy::Fixed(r) => r,
    }
}

/// One candidate `h = α_j + c·α'` tried at a step; `multiplier` is `None` for `α_j` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub multiplier: Option<Scalar>,
    pub coeff_bound: u64,
    pub affine_dimension: i64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step: usize,
    pub target_dimension: i64,
    pub attempts: Vec<Attempt>,
}

impl StepRecord {
    pub fn accepted(&self) -> bool {
        self.attempts.last().is_some_and(|a| a.accepted)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub r: u32,
    pub conjugated: bool,
    pub steps: Vec<StepRecord>,
    pub succeeded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub seed: u64,
    pub r_star: u32,
    pub rounds: Vec<Round>,
}

impl Transcript {
    /// Number of repaired candidates (beyond `α_j` itself) over all rounds.
    pub fn repair_count(&self) -> usize {
        self.rounds
            .iter()
            .flat_map(|r| &r.steps)
            .map(|s| s.attempts.iter().filter(|a| a.multiplier.is_some()).count())
            .sum()
    }
}

/// Independently recomputed evidence that `ψ` extends `φ^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificates {
    /// `h_i - α_i ∈ I` for every `i`.
    pub compatibility: bool,
    /// Affine dimension of `V(h_0, ..., h_j)` for `j = 0..=m`; equals `m - j`.
    pub prefix_dimensions: Vec<i64>,
    /// How each prefix dimension was established.
    pub dimension_methods: Vec<DimensionMethod>,
    /// `(h_0, ..., h_m)` has no projective zero.
    pub projectively_empty: bool,
    /// Every `h_i` is a form of degree `q^r`.
    pub homogeneous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("expected {expected} forms, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("psi[{index}] is not a form of degree {degree}")]
    Degree { index: usize, degree: u32 },
    #[error("psi[{index}] differs from the pullback by {remainder} modulo the ideal")]
    Incompatible { index: usize, remainder: Polynomial },
    #[error("prefix {step} has affine dimension {found}, expected {expected}")]
    PrefixDimension { step: usize, expected: i64, found: i64 },
    #[error("the forms have a common projective zero")]
    CommonZero,
}

/// A linear change of coordinates `y = A x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugation {
    pub matrix: DenseMatrix,
    pub inverse: DenseMatrix,
}

impl Conjugation {
    pub fn new(matrix: DenseMatrix) -> Option<Self> {
        let inverse = matrix.inverse()?;
        Some(Self { matrix, inverse })
    }

    fn random<R: Rng + ?Sized>(field: FieldSpec, n: usize, bound: u64, rng: &mut R) -> Self {
        loop {
            let entries = (0..n * n).map(|_| random_scalar(field, bound, rng)).collect();
            if let Some(c) = Self::new(DenseMatrix::new(field, n, n, entries).expect("square")) {
                return c;
            }
        }
    }

    fn combine(ring: &Ring, m: &DenseMatrix, forms: &[Polynomial]) -> Vec<Polynomial> {
        (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .zip(forms)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(ring.zero(), |acc, (c, f)| &acc + &f.scale(c))
            })
            .collect()
    }

    /// `A · v` for a vector of forms.
    pub fn apply(&self, forms: &[Polynomial]) -> Vec<Polynomial> {
        Self::combine(forms[0].ring(), &self.matrix, forms)
    }

    /// `f(A^{-1} y)`: the form `f` in the new coordinates.
    pub fn pull(&self, f: &Polynomial) -> Polynomial {
        let ring = f.ring();
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        let images = Self::combine(ring, &self.inverse, &vars);
        f.substitute(&images).expect("arity")
    }

    /// `X` in the new coordinates.
    pub fn variety(&self, x: &ProjectiveVariety) -> ProjectiveVariety {
        let gens = x.ideal_generators().iter().map(|f| self.pull(f)).collect();
        ProjectiveVariety::new(x.ring().clone(), gens).expect("linear image of a nonempty variety")
    }

    /// Forms representing `A ∘ φ^r ∘ A^{-1}`.
    pub fn map(&self, alphas: &[Polynomial]) -> Vec<Polynomial> {
        let pulled: Vec<Polynomial> = alphas.iter().map(|f| self.pull(f)).collect();
        self.apply(&pulled)
    }
}

/// A certified extension. Construction recomputes every certificate.
#[derive(Debug, Clone)]
pub struct ExtensionResult {
    r: u32,
    degree: u32,
    psi: Vec<Polynomial>,
    certificates: Certificates,
    transcript: Transcript,
    conjugation: Option<Conjugation>,
}

impl ExtensionResult {
    /// `target` and `alphas` are in the coordinates of `psi` (already conjugated, if any).
    fn certify(
        target: &ProjectiveVariety,
        alphas: &[Polynomial],
        r: u32,
        degree: u32,
        psi: Vec<Polynomial>,
        transcript: Transcript,
        conjugation: Option<Conjugation>,
    ) -> Result<Self, CertificateError> {
        let certificates = certify(target, alphas, degree, &psi)?;
        Ok(Self { r, degree, psi, certificates, transcript, conjugation })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `q^r`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The forms `h_0, ..., h_m`, exact (not rescaled).
    pub fn psi(&self) -> &[Polynomial] {
        &self.psi
    }

    pub fn certificates(&self) -> &Certificates {
        &self.certificates
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    /// Present when `psi` extends the conjugated system `A ∘ φ^r ∘ A^{-1}` on `A(X)`.
    pub fn conjugation(&self) -> Option<&Conjugation> {
        self.conjugation.as_ref()
    }
}

/// Checks degree, compatibility modulo `I`, every prefix dimension and emptiness.
pub fn certify(
    target: &ProjectiveVariety,
    alphas: &[Polynomial],
    degree: u32,
    psi: &[Polynomial],
) -> Result<Certificates, CertificateError> {
    let n = target.ring().nvars();
    if psi.len() != n || alphas.len() != n {
        return Err(CertificateError::Arity { expected: n, got: psi.len() });
    }
    for (i, h) in psi.iter().enumerate() {
        if h.ring() != target.ring() || h.is_zero() || !h.is_homogeneous_of(degree) {
            return Err(CertificateError::Degree { index: i, degree });
        }
    }
    for (i, (h, a)) in psi.iter().zip(alphas).enumerate() {
        let remainder = target.reduce(&(h - &a.with_order(MonomialOrder::Grevlex)));
        if !remainder.is_zero() {
            return Err(CertificateError::Incompatible { index: i, remainder });
        }
    }
    let m = n as i64 - 1;
    let mut prefix_dimensions = Vec::with_capacity(n);
    let mut dimension_methods = Vec::with_capacity(n);
    for j in 0..n {
        let probe = dimension_of(&psi[..=j], CERTIFY_PRIMES, true);
        if probe.dimension != m - j as i64 {
            return Err(CertificateError::PrefixDimension { step: j, expected: m - j as i64, found: probe.dimension });
        }
        prefix_dimensions.push(probe.dimension);
        dimension_methods.push(probe.method);
        if j + 1 == n && !probe.projectively_empty {
            return Err(CertificateError::CommonZero);
        }
    }
    Ok(Certificates {
        compatibility: true,
        prefix_dimensions,
        dimension_methods,
        projectively_empty: true,
        homogeneous: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    /// Some step exhausted its retry budget at every tried `r`.
    StepsExhausted,
    /// The policy admits no `r` to try.
    NoAdmissibleR,
    /// A constructed extension failed re-verification.
    Certificate(CertificateError),
}

#[derive(Debug, Clone)]
pub struct ExtensionFailure {
    pub reason: FailureReason,
    /// Last `(r, step)` that could not be completed.
    pub blocking_step: Option<(u32, usize)>,
    pub transcript: Transcript,
}

impl fmt::Display for ExtensionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            FailureReason::StepsExhausted => match self.blocking_step {
                Some((r, j)) => write!(f, "no extension found; last blocked at r = {r}, step {j}"),
                None => write!(f, "no extension found"),
            },
            FailureReason::NoAdmissibleR => write!(f, "no admissible r (r* = {})", self.transcript.r_star),
            FailureReason::Certificate(e) => write!(f, "certificate check failed: {e}"),
        }
    }
}

/// Builds a certified extension of `φ^r` for the first successful `r` allowed by the policy.
pub fn extend(sys: &PolarizedSystem, config: &ExtensionConfig) -> Result<ExtensionResult, ExtensionFailure> {
    let r_star = guaranteed_r(sys);
    let rs: Vec<u32> = match config.r_policy {
        RPolicy::AutoSearch { max_r } => (select_starting_r(config.r_policy)..=max_r).collect(),
        RPolicy::Fixed(r) if r >= 1 => vec![r],
        RPolicy::Fixed(_) => Vec::new(),
    };
    let mut search = Search::new(config, r_star);
    for r in rs {
        let alphas = sys.iterate_pullback(r);
        if let Some(done) = search.at_r(sys.variety(), sys.q().pow(r), r, &alphas) {
            return done;
        }
    }
    Err(search.failure())
}

/// Extends given representatives `alphas` of `(φ^r)^*` at one fixed `r`.
pub fn extend_lifted(
    variety: &ProjectiveVariety,
    q: u32,
    r: u32,
    alphas: &[Polynomial],
    config: &ExtensionConfig,
) -> Result<ExtensionResult, ExtensionFailure> {
    let mut search = Search::new(config, starting_r(q, variety.max_generator_degree()));
    match search.at_r(variety, q.pow(r), r, alphas) {
        Some(done) => done,
        None => Err(search.failure()),
    }
}

/// Re-derives the certificates of `result` from the system alone.
pub fn verify_extension(sys: &PolarizedSystem, result: &ExtensionResult) -> Result<Certificates, CertificateError> {
    verify_lifted(sys.variety(), &sys.iterate_pullback(result.r), result)
}

/// As [`verify_extension`] with explicit pullback representatives.
pub fn verify_lifted(
    variety: &ProjectiveVariety,
    alphas: &[Polynomial],
    result: &ExtensionResult,
) -> Result<Certificates, CertificateError> {
    match &result.conjugation {
        None => certify(variety, alphas, result.degree, &result.psi),
        Some(c) => certify(&c.variety(variety), &c.map(alphas), result.degree, &result.psi),
    }
}

struct Search<'a> {
    config: &'a ExtensionConfig,
    rng: ChaCha8Rng,
    transcript: Transcript,
    blocking: Option<(u32, usize)>,
    certificate_error: Option<CertificateError>,
}

impl<'a> Search<'a> {
    fn new(config: &'a ExtensionConfig, r_star: u32) -> Self {
        Self {
            config,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            transcript: Transcript { seed: config.seed, r_star, rounds: Vec::new() },
            blocking: None,
            certificate_error: None,
        }
    }

    fn failure(self) -> ExtensionFailure {
        let reason = match (self.certificate_error, self.transcript.rounds.is_empty()) {
            (Some(e), _) => FailureReason::Certificate(e),
            (None, true) => FailureReason::NoAdmissibleR,
            (None, false) => FailureReason::StepsExhausted,
        };
        ExtensionFailure { reason, blocking_step: self.blocking, transcript: self.transcript }
    }

    fn at_r(
        &mut self,
        variety: &ProjectiveVariety,
        degree: u32,
        r: u32,
        alphas: &[Polynomial],
    ) -> Option<Result<ExtensionResult, ExtensionFailure>> {
        if let Some(psi) = self.round(variety, degree, r, alphas, false) {
            return Some(self.finish(variety, alphas, r, degree, psi, None));
        }
        if self.config.allow_conjugation_fallback {
            let n = variety.ring().nvars();
            let conj = Conjugation::random(variety.ring().field(), n, self.config.coeff_bound, &mut self.rng);
            let target = conj.variety(variety);
            let moved = conj.map(alphas);
            if let Some(psi) = self.round(&target, degree, r, &moved, true) {
                return Some(self.finish(&target, &moved, r, degree, psi, Some(conj)));
            }
        }
        None
    }

    fn finish(
        &mut self,
        target: &ProjectiveVariety,
        alphas: &[Polynomial],
        r: u32,
        degree: u32,
        psi: Vec<Polynomial>,
        conj: Option<Conjugation>,
    ) -> Result<ExtensionResult, ExtensionFailure> {
        let transcript = self.transcript.clone();
        ExtensionResult::certify(target, alphas, r, degree, psi, transcript, conj).map_err(|e| {
            self.certificate_error = Some(e);
            ExtensionFailure {
                reason: FailureReason::Certificate(self.certificate_error.clone().unwrap()),
                blocking_step: None,
                transcript: self.transcript.clone(),
            }
        })
    }

    fn bound_for(&self, attempt: u32) -> u64 {
        let quarter = (self.config.max_retries / 4).max(1);
        let doublings = (attempt / quarter).min(40);
        self.config.coeff_bound.max(1).saturating_mul(1u64 << doublings)
    }

    fn round(
        &mut self,
        variety: &ProjectiveVariety,
        degree: u32,
        r: u32,
        alphas: &[Polynomial],
        conjugated: bool,
    ) -> Option<Vec<Polynomial>> {
        let field = variety.ring().field();
        let m = variety.ambient_dimension();
        let piece = variety.groebner().graded_piece(degree).expect("grevlex basis of a homogeneous ideal");
        let mut round = Round { r, conjugated, steps: Vec::new(), succeeded: false };
        let mut chosen: Vec<Polynomial> = Vec::with_capacity(m + 1);
        for (j, alpha) in alphas.iter().enumerate() {
            let alpha = alpha.with_order(MonomialOrder::Grevlex);
            let target = (m - j) as i64;
            let mut record = StepRecord { step: j, target_dimension: target, attempts: Vec::new() };
            let dim = prefix_dimension(&chosen, &alpha);
            record.attempts.push(Attempt {
                multiplier: None,
                coeff_bound: self.config.coeff_bound,
                affine_dimension: dim,
                accepted: dim == target,
            });
            let mut accepted = (dim == target).then_some(alpha.clone());
            if accepted.is_none() && !piece.basis.is_empty() {
                for t in 0..self.config.max_retries {
                    let bound = self.bound_for(t);
                    let mut repair = variety.ring().zero();
                    for b in &piece.basis {
                        repair = &repair + &b.scale(&random_scalar(field, bound, &mut self.rng));
                    }
                    assert!(variety.is_member(&repair), "repair term must lie in the ideal");
                    let c = loop {
                        let c = random_scalar(field, bound, &mut self.rng);
                        if !c.is_zero() {
                            break c;
                        }
                    };
                    let candidate = &alpha + &repair.scale(&c);
                    let dim = if repair.is_zero() { record.attempts[0].affine_dimension } else { prefix_dimension(&chosen, &candidate) };
                    let ok = dim == target && !repair.is_zero();
                    record.attempts.push(Attempt {
                        multiplier: Some(c),
                        coeff_bound: bound,
                        affine_dimension: dim,
                        accepted: ok,
                    });
                    if ok {
                        accepted = Some(candidate);
                        break;
                    }
                }
            }
            round.steps.push(record);
            match accepted {
                Some(h) => chosen.push(h),
                None => {
                    self.blocking = Some((r, j));
                    self.transcript.rounds.push(round);
                    return None;
                }
            }
        }
        round.succeeded = true;
        self.transcript.rounds.push(round);
        Some(chosen)
    }
}

/// Where a dimension value comes from.
///
/// Reducing the forms modulo `p` can only raise the Hilbert function of the
/// ideal they generate, so a modular dimension bounds the rational one from
/// above. Together with the Krull lower bound `n - k` for `k` forms this makes a
/// modular value equal to `n - k` exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionMethod {
    Exact,
    Modular(u64),
}

const SEARCH_PRIMES: usize = 1;
const CERTIFY_PRIMES: usize = 3;

/// The largest primes below `2^62`, descending.
fn large_primes() -> &'static [u64] {
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(CERTIFY_PRIMES);
        let mut n = (1u64 << 62) - 1;
        while out.len() < CERTIFY_PRIMES {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

struct DimensionProbe {
    dimension: i64,
    projectively_empty: bool,
    method: DimensionMethod,
}

fn probe_exact(gens: &[Polynomial], method: DimensionMethod) -> DimensionProbe {
    let gb = buchberger(gens, MonomialOrder::Grevlex).expect("same ring");
    DimensionProbe {
        dimension: gb.affine_dimension(),
        projectively_empty: gb.is_projectively_empty().expect("forms"),
        method,
    }
}

/// Affine dimension of the ideal of the nonzero `forms`.
///
/// Over the rationals up to `primes` modular images are tried first; a value
/// meeting the Krull lower bound is returned at once. Otherwise the exact
/// computation runs when `exact_fallback` is set, and the last modular value is
/// returned when it is not.
fn dimension_of(forms: &[Polynomial], primes: usize, exact_fallback: bool) -> DimensionProbe {
    let ring = forms[0].ring();
    let n = ring.nvars() as i64;
    let gens: Vec<Polynomial> = forms.iter().filter(|f| !f.is_zero()).cloned().collect();
    if gens.is_empty() {
        return DimensionProbe { dimension: n, projectively_empty: false, method: DimensionMethod::Exact };
    }
    if ring.field() != FieldSpec::Rationals {
        return probe_exact(&gens, DimensionMethod::Exact);
    }
    let lower = (n - gens.len() as i64).max(0);
    let mut last = None;
    for &p in large_primes().iter().take(primes) {
        let modular = PolyRing::new(ring.names().iter().cloned(), FieldSpec::prime_field(p).expect("large prime"))
            .expect("same names");
        let Some(images) = gens.iter().map(|g| g.reduce_modulo(&modular)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let images: Vec<Polynomial> = images.into_iter().filter(|f| !f.is_zero()).collect();
        if images.is_empty() {
            continue;
        }
        let probe = probe_exact(&images, DimensionMethod::Modular(p));
        if probe.dimension == lower {
            return probe;
        }
        last = Some(probe);
    }
    match last {
        Some(probe) if !exact_fallback => probe,
        _ => probe_exact(&gens, DimensionMethod::Exact),
    }
}

fn prefix_dimension(prefix: &[Polynomial], candidate: &Polynomial) -> i64 {
    let forms: Vec<Polynomial> = prefix.iter().chain([candidate]).cloned().collect();
    dimension_of(&forms, SEARCH_PRIMES, false).dimension
}

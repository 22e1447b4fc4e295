//! Interactive proofs: the GNI protocol, the Goldreich–Micali–Wigderson
//! zero-knowledge protocol for graph isomorphism, Fiat–Shamir
//! identification, their rejection-sampling simulators, and tools for
//! comparing transcript distributions empirically and exactly.
//!
//! Every round draws its randomness through [`Coins`], so the same round
//! function can be sampled with a [`WorkbenchRng`] or enumerated over its
//! whole coin space with [`exact_distribution`].

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{invalid, Error, Result};
use crate::graphs::{
    apply_permutation, are_isomorphic_bruteforce, compose, random_permutation, Graph, Permutation,
};
use crate::numtheory::{gen_prime, mod_inverse, mod_pow, nat, Natural};
use crate::protocols::Payload;
use crate::rng::{Coins, WorkbenchRng};

/// Exact probability.
pub type Rational = BigRational;

/// One round `(commitment, challenge, response)`.
///
/// For GMW the commitment is the graph `H`, the challenge is `b ∈ {1, 2}` and
/// the response is the permutation `σ`. For Fiat–Shamir they are `x`,
/// `b ∈ {0, 1}` and `y`. For GNI the commitment is the verifier's graph `H`,
/// the challenge the verifier's hidden bit and the response the prover's
/// answer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RoundTriple {
    pub commitment: Payload,
    pub challenge: u8,
    pub response: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub triple: RoundTriple,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtocolOutcome {
    pub accepted: bool,
    pub rounds: Vec<RoundRecord>,
    /// Seed of the generator each round ran on.
    pub coin_trace: Vec<u64>,
}

/// Runs `k` rounds, each on a fresh generator seeded from `rng`.
fn run_rounds(
    k: usize,
    rng: &mut WorkbenchRng,
    mut round: impl FnMut(&mut WorkbenchRng) -> Result<(RoundTriple, bool)>,
) -> Result<ProtocolOutcome> {
    if k == 0 {
        return invalid("at least one round is required");
    }
    let mut rounds = Vec::with_capacity(k);
    let mut coin_trace = Vec::with_capacity(k);
    for _ in 0..k {
        let seed = rng.next_u64();
        let (triple, verdict) = round(&mut WorkbenchRng::from_seed(seed))?;
        coin_trace.push(seed);
        rounds.push(RoundRecord { triple, verdict });
    }
    Ok(ProtocolOutcome {
        accepted: rounds.iter().all(|r| r.verdict),
        rounds,
        coin_trace,
    })
}

fn graph_pair_check(g1: &Graph, g2: &Graph) -> Result<()> {
    if g1.vertex_count() != g2.vertex_count() {
        return invalid("graphs must have the same number of vertices");
    }
    if g1.vertex_count() == 0 {
        return invalid("graphs must be nonempty");
    }
    Ok(())
}

fn select<'g>(g1: &'g Graph, g2: &'g Graph, bit: u8) -> &'g Graph {
    if bit == 1 {
        g1
    } else {
        g2
    }
}

// ---------------------------------------------------------------- GNI

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GniProver {
    /// Answers `1` when `H ≅ G₁`, otherwise `2`.
    Honest,
    /// Answers a uniformly random bit.
    Guessing,
}

/// One round of the graph non-isomorphism protocol. The verifier draws
/// `π` and `b ∈ {1, 2}` and sends `H = π(G_b)`; the prover answers `a`;
/// the verifier accepts iff `a = b`.
pub fn gni_round(g1: &Graph, g2: &Graph, prover: GniProver, coins: &mut impl Coins) -> Result<(RoundTriple, bool)> {
    graph_pair_check(g1, g2)?;
    let pi = random_permutation(g1.vertex_count(), coins)?;
    let b = 1 + coins.below(2) as u8;
    let h = apply_permutation(&pi, select(g1, g2, b))?;
    let a = match prover {
        GniProver::Honest => {
            if are_isomorphic_bruteforce(&h, g1)?.is_some() {
                1
            } else {
                2
            }
        }
        GniProver::Guessing => 1 + coins.below(2) as u8,
    };
    let triple = RoundTriple {
        commitment: Payload::Graph(h),
        challenge: b,
        response: Payload::Bit(a),
    };
    Ok((triple, a == b))
}

pub fn gni_protocol(g1: &Graph, g2: &Graph, prover: GniProver, k: usize, rng: &mut WorkbenchRng) -> Result<ProtocolOutcome> {
    run_rounds(k, rng, |coins| gni_round(g1, g2, prover, coins))
}

// ---------------------------------------------------------------- GMW

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmwPublic {
    pub g1: Graph,
    pub g2: Graph,
}

impl GmwPublic {
    pub fn new(g1: Graph, g2: Graph) -> Result<Self> {
        graph_pair_check(&g1, &g2)?;
        Ok(Self { g1, g2 })
    }

    fn graph(&self, bit: u8) -> &Graph {
        select(&self.g1, &self.g2, bit)
    }
}

/// The isomorphism `π` with `G₂ = π(G₁)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GmwSecret {
    pub pi: Permutation,
}

/// Random `G₁` (each edge with probability 1/2), random `π`, `G₂ = π(G₁)`.
pub fn gmw_keygen(n: usize, coins: &mut impl Coins) -> Result<(GmwPublic, GmwSecret)> {
    if n < 3 {
        return invalid("GMW keys need at least 3 vertices");
    }
    let mut g1 = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if coins.coin() {
                g1.add_edge(i, j)?;
            }
        }
    }
    let pi = random_permutation(n, coins)?;
    let g2 = apply_permutation(&pi, &g1)?;
    Ok((GmwPublic { g1, g2 }, GmwSecret { pi }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GmwResponder {
    KnowsSecret(GmwSecret),
    /// Commits to `ρ(G_a)` for a guessed `a` and answers `ρ` whatever the
    /// challenge.
    Impostor,
}

/// Accepts iff the response is a permutation with `σ(G_b) = H`.
pub fn gmw_verify(public: &GmwPublic, triple: &RoundTriple) -> bool {
    let (Payload::Graph(h), Payload::Permutation(sigma)) = (&triple.commitment, &triple.response) else {
        return false;
    };
    if !matches!(triple.challenge, 1 | 2) {
        return false;
    }
    apply_permutation(sigma, public.graph(triple.challenge)).is_ok_and(|g| g == *h)
}

/// One round: the prover commits `H = ρ(G_a)`, the verifier sends `b`, the
/// prover answers
///
/// * `σ = ρ` if `b = a`,
/// * `σ = ρ∘π` if `1 = b ≠ a = 2`,
/// * `σ = ρ∘π⁻¹` if `2 = b ≠ a = 1`.
pub fn gmw_round(public: &GmwPublic, responder: &GmwResponder, coins: &mut impl Coins) -> Result<(RoundTriple, bool)> {
    let n = public.g1.vertex_count();
    let rho = random_permutation(n, coins)?;
    let a = 1 + coins.below(2) as u8;
    let h = apply_permutation(&rho, public.graph(a))?;
    let b = 1 + coins.below(2) as u8;
    let sigma = match responder {
        GmwResponder::KnowsSecret(secret) => match (b, a) {
            _ if b == a => rho,
            (1, 2) => compose(&rho, &secret.pi)?,
            _ => compose(&rho, &secret.pi.inverse())?,
        },
        GmwResponder::Impostor => rho,
    };
    let triple = RoundTriple {
        commitment: Payload::Graph(h),
        challenge: b,
        response: Payload::Permutation(sigma),
    };
    let verdict = gmw_verify(public, &triple);
    Ok((triple, verdict))
}

pub fn gmw_protocol(public: &GmwPublic, responder: &GmwResponder, k: usize, rng: &mut WorkbenchRng) -> Result<ProtocolOutcome> {
    run_rounds(k, rng, |coins| gmw_round(public, responder, coins))
}

/// A single simulator attempt: guess `a`, commit `H = ρ(G_a)`, draw the
/// honest verifier's bit `b`; keep `(H, b, ρ)` iff `b = a`.
pub fn gmw_simulator_attempt(public: &GmwPublic, coins: &mut impl Coins) -> Result<Option<RoundTriple>> {
    let rho = random_permutation(public.g1.vertex_count(), coins)?;
    let a = 1 + coins.below(2) as u8;
    let h = apply_permutation(&rho, public.graph(a))?;
    let b = 1 + coins.below(2) as u8;
    Ok((b == a).then_some(RoundTriple {
        commitment: Payload::Graph(h),
        challenge: b,
        response: Payload::Permutation(rho),
    }))
}

/// Repeats [`gmw_simulator_attempt`] until one is kept; returns the triple
/// and the number of attempts.
pub fn gmw_simulator_round(public: &GmwPublic, coins: &mut impl Coins) -> Result<(RoundTriple, u64)> {
    repeat_until_kept(|| gmw_simulator_attempt(public, coins))
}

fn repeat_until_kept(mut attempt: impl FnMut() -> Result<Option<RoundTriple>>) -> Result<(RoundTriple, u64)> {
    let mut attempts = 0;
    loop {
        attempts += 1;
        if let Some(triple) = attempt()? {
            return Ok((triple, attempts));
        }
    }
}

// ---------------------------------------------------------------- Fiat–Shamir

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsPublic {
    #[serde(with = "crate::hexnat")]
    pub n: Natural,
    #[serde(with = "crate::hexnat")]
    pub v: Natural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsKeys {
    pub p: Natural,
    pub q: Natural,
    pub n: Natural,
    pub s: Natural,
    pub v: Natural,
}

impl FsKeys {
    /// Keys from explicit primes and secret; `v = s² mod n` must differ
    /// from 1 so that a wrong guess is always caught.
    pub fn from_parts(p: Natural, q: Natural, s: Natural) -> Result<Self> {
        if p == q {
            return invalid("p and q must differ");
        }
        let n = &p * &q;
        if !s.gcd(&n).is_one() {
            return invalid("s must be a unit mod n");
        }
        let v = mod_pow(&s, &nat(2), &n);
        if v.is_one() {
            return invalid("s² ≡ 1 (mod n) makes every challenge trivial");
        }
        Ok(Self { p, q, n, s, v })
    }

    pub fn public(&self) -> FsPublic {
        FsPublic {
            n: self.n.clone(),
            v: self.v.clone(),
        }
    }
}

pub fn fs_keygen(bits: u64, rng: &mut WorkbenchRng) -> Result<FsKeys> {
    if bits < 8 {
        return invalid("Fiat–Shamir keys need at least 8 bits");
    }
    loop {
        let p = gen_prime(bits - bits / 2, rng)?;
        let q = gen_prime(bits / 2, rng)?;
        if p == q {
            continue;
        }
        let n = &p * &q;
        let s = rng.unit_mod(&n);
        if let Ok(keys) = FsKeys::from_parts(p, q, s) {
            debug_assert_eq!(keys.n, n);
            return Ok(keys);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FsResponder {
    KnowsSecret(Natural),
    /// Guesses `c`, commits `x = r²·v^{−c}` and answers `y = r`.
    Impostor,
    /// Commits `x = 0` and answers `y = 0`, which passes the bare check.
    ZeroFraud,
}

/// `y² ≡ x·v^b (mod n)`; the strict verifier also rejects `x = 0` or `y = 0`.
pub fn fs_verify(public: &FsPublic, triple: &RoundTriple, strict: bool) -> bool {
    let (Payload::Natural(x), Payload::Natural(y)) = (&triple.commitment, &triple.response) else {
        return false;
    };
    if triple.challenge > 1 || *x >= public.n || *y >= public.n {
        return false;
    }
    if strict && (x.is_zero() || y.is_zero()) {
        return false;
    }
    let lhs = (y * y) % &public.n;
    let rhs = (x * mod_pow(&public.v, &nat(u64::from(triple.challenge)), &public.n)) % &public.n;
    lhs == rhs
}

fn v_inverse(public: &FsPublic) -> Result<Natural> {
    mod_inverse(&public.v, &public.n)?
        .ok_or_else(|| Error::InvalidArgument("v is not invertible mod n".into()))
}

/// One round: commit `x = r² mod n`, challenge `b ∈ {0, 1}`, respond
/// `y = r·s^b mod n`.
pub fn fs_round(
    public: &FsPublic,
    responder: &FsResponder,
    strict: bool,
    coins: &mut impl Coins,
) -> Result<(RoundTriple, bool)> {
    let n = &public.n;
    let (x, y) = match responder {
        FsResponder::KnowsSecret(s) => {
            let r = coins.unit_mod(n);
            let b = coins.below(2) as u8;
            let y = (&r * mod_pow(s, &nat(u64::from(b)), n)) % n;
            return finish_fs(public, (&r * &r) % n, b, y, strict);
        }
        FsResponder::Impostor => {
            let r = coins.unit_mod(n);
            let c = coins.below(2);
            let x = (&r * &r * mod_pow(&v_inverse(public)?, &nat(c), n)) % n;
            (x, r)
        }
        FsResponder::ZeroFraud => (Natural::zero(), Natural::zero()),
    };
    let b = coins.below(2) as u8;
    finish_fs(public, x, b, y, strict)
}

fn finish_fs(public: &FsPublic, x: Natural, b: u8, y: Natural, strict: bool) -> Result<(RoundTriple, bool)> {
    let triple = RoundTriple {
        commitment: Payload::Natural(x),
        challenge: b,
        response: Payload::Natural(y),
    };
    let verdict = fs_verify(public, &triple, strict);
    Ok((triple, verdict))
}

pub fn fs_protocol(
    public: &FsPublic,
    responder: &FsResponder,
    strict: bool,
    k: usize,
    rng: &mut WorkbenchRng,
) -> Result<ProtocolOutcome> {
    run_rounds(k, rng, |coins| fs_round(public, responder, strict, coins))
}

/// A single simulator attempt: `r ∈ Z*_n`, guess `c`, commit
/// `x = r²·v^{−c}`, draw the verifier's `b`; keep `(x, b, r)` iff `b = c`.
pub fn fs_simulator_attempt(public: &FsPublic, coins: &mut impl Coins) -> Result<Option<RoundTriple>> {
    let v_inv = v_inverse(public)?;
    let n = &public.n;
    let r = coins.unit_mod(n);
    let c = coins.below(2) as u8;
    let x = (&r * &r * mod_pow(&v_inv, &nat(u64::from(c)), n)) % n;
    let b = coins.below(2) as u8;
    Ok((b == c).then_some(RoundTriple {
        commitment: Payload::Natural(x),
        challenge: b,
        response: Payload::Natural(r),
    }))
}

pub fn fs_simulator_round(public: &FsPublic, coins: &mut impl Coins) -> Result<(RoundTriple, u64)> {
    v_inverse(public)?;
    repeat_until_kept(|| fs_simulator_attempt(public, coins))
}

// ---------------------------------------------------------------- amplification

/// Acceptance thresholds of an interactive proof system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds {
    pub accept: Rational,
    pub reject: Rational,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            accept: Rational::new(3.into(), 4.into()),
            reject: Rational::new(1.into(), 4.into()),
        }
    }
}

impl Thresholds {
    pub fn complete(&self, acceptance: &Rational) -> bool {
        *acceptance >= self.accept
    }

    pub fn sound(&self, acceptance: &Rational) -> bool {
        *acceptance <= self.reject
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Amplification {
    /// Accept iff every round passes (stops at the first failure).
    AllRounds,
    /// Accept iff more than half of the rounds pass.
    Majority,
}

pub fn amplified_accept(mut per_round: impl FnMut() -> Result<bool>, k: usize, policy: Amplification) -> Result<bool> {
    if k == 0 {
        return invalid("at least one round is required");
    }
    match policy {
        Amplification::AllRounds => {
            for _ in 0..k {
                if !per_round()? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Amplification::Majority => {
            let mut passed = 0;
            for _ in 0..k {
                passed += usize::from(per_round()?);
            }
            Ok(2 * passed > k)
        }
    }
}

// ---------------------------------------------------------------- distributions

/// Upper bound on the number of coin paths [`exact_distribution`] explores.
pub const MAX_EXACT_PATHS: u64 = 1 << 20;
/// Upper bound on the coins drawn along a single path.
pub const MAX_EXACT_DEPTH: usize = 1 << 12;
/// Largest modulus whose unit group [`ExactCoins::unit_mod`] enumerates.
pub const MAX_EXACT_UNIT_MODULUS: u64 = 1 << 16;

/// [`Coins`] that replays a coin tape; driven by [`exact_distribution`] to
/// walk every path of the coin space in depth-first order.
#[derive(Debug, Default)]
pub struct ExactCoins {
    tape: Vec<(u64, u64)>,
    pos: usize,
    failure: Option<Error>,
    units: HashMap<Natural, Vec<Natural>>,
}

impl ExactCoins {
    fn fail(&mut self, e: Error) -> u64 {
        self.failure.get_or_insert(e);
        0
    }

    fn weight(&self) -> Rational {
        self.tape[..self.pos]
            .iter()
            .fold(Rational::one(), |w, &(_, bound)| w / Rational::from_integer(bound.into()))
    }

    /// Moves to the next path; `false` once the space is exhausted.
    fn advance(&mut self) -> bool {
        self.tape.truncate(self.pos);
        self.pos = 0;
        while let Some((choice, bound)) = self.tape.pop() {
            if choice + 1 < bound {
                self.tape.push((choice + 1, bound));
                return true;
            }
        }
        false
    }
}

impl Coins for ExactCoins {
    fn below(&mut self, bound: u64) -> u64 {
        if bound == 0 {
            return self.fail(Error::InvalidArgument("empty coin range".into()));
        }
        if self.pos >= MAX_EXACT_DEPTH {
            return self.fail(Error::ResourceLimit(format!("more than {MAX_EXACT_DEPTH} coins on one path")));
        }
        let choice = match self.tape.get(self.pos) {
            Some(&(choice, b)) if b == bound => choice,
            Some(_) => return self.fail(Error::InvalidArgument("coin source is not deterministic".into())),
            None => {
                self.tape.push((0, bound));
                0
            }
        };
        self.pos += 1;
        choice
    }

    fn below_natural(&mut self, bound: &Natural) -> Natural {
        match bound.to_u64() {
            Some(b) => nat(self.below(b)),
            None => nat(self.fail(Error::ResourceLimit("coin range exceeds 64 bits".into()))),
        }
    }

    fn unit_mod(&mut self, n: &Natural) -> Natural {
        if *n > nat(MAX_EXACT_UNIT_MODULUS) || n.is_zero() {
            self.fail(Error::ResourceLimit(format!("unit group of {n} is too large to enumerate")));
            return Natural::one();
        }
        let units = self
            .units
            .entry(n.clone())
            .or_insert_with(|| {
                let m = n.to_u64().unwrap_or(0);
                (1..m.max(2)).map(nat).filter(|r| r.gcd(n).is_one()).collect()
            })
            .len() as u64;
        let i = self.below(units) as usize;
        self.units[n][i].clone()
    }
}

/// Exact output distribution of `source` over its whole coin space. Paths
/// on which the source returns `None` are discarded and the rest
/// renormalized, which is exactly the output law of repeating the source
/// until it succeeds.
pub fn exact_distribution<T: Ord>(
    mut source: impl FnMut(&mut ExactCoins) -> Result<Option<T>>,
) -> Result<BTreeMap<T, Rational>> {
    let mut coins = ExactCoins::default();
    let mut dist: BTreeMap<T, Rational> = BTreeMap::new();
    let mut kept = Rational::zero();
    let mut paths = 0u64;
    loop {
        paths += 1;
        if paths > MAX_EXACT_PATHS {
            return Err(Error::ResourceLimit(format!("coin space exceeds {MAX_EXACT_PATHS} paths")));
        }
        let out = source(&mut coins)?;
        if let Some(e) = coins.failure.take() {
            return Err(e);
        }
        if let Some(value) = out {
            let w = coins.weight();
            kept += &w;
            *dist.entry(value).or_insert_with(Rational::zero) += w;
        }
        if !coins.advance() {
            break;
        }
    }
    if kept.is_zero() {
        return invalid("source never produced an output");
    }
    for p in dist.values_mut() {
        *p /= &kept;
    }
    Ok(dist)
}

/// Empirical frequencies of `samples` draws.
pub fn transcript_distribution<T: Ord>(
    mut source: impl FnMut(&mut WorkbenchRng) -> Result<T>,
    samples: u64,
    rng: &mut WorkbenchRng,
) -> Result<BTreeMap<T, u64>> {
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        *counts.entry(source(rng)?).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Significance level of the sampling-mode comparisons.
pub const CHI_SQUARE_ALPHA: f64 = 0.001;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub degrees_of_freedom: u64,
    pub critical: f64,
    /// `statistic <= critical`: no evidence against equality.
    pub consistent: bool,
}

fn chi_square_verdict(statistic: f64, dof: u64, alpha: f64) -> Result<ChiSquare> {
    if dof == 0 {
        return Ok(ChiSquare {
            statistic,
            degrees_of_freedom: 0,
            critical: 0.0,
            consistent: statistic == 0.0,
        });
    }
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let critical = dist.inverse_cdf(1.0 - alpha);
    Ok(ChiSquare {
        statistic,
        degrees_of_freedom: dof,
        critical,
        consistent: statistic <= critical,
    })
}

/// Pearson goodness-of-fit of observed counts against an exact law.
/// Observations outside the law's support make the statistic infinite.
pub fn chi_square_against_exact<T: Ord>(
    observed: &BTreeMap<T, u64>,
    expected: &BTreeMap<T, Rational>,
    alpha: f64,
) -> Result<ChiSquare> {
    let total: u64 = observed.values().sum();
    if total == 0 {
        return invalid("no observations");
    }
    if observed.keys().any(|k| !expected.contains_key(k)) {
        return chi_square_verdict(f64::INFINITY, expected.len().saturating_sub(1) as u64, alpha);
    }
    let mut statistic = 0.0;
    for (k, p) in expected {
        let e = p.to_f64().unwrap_or(0.0) * total as f64;
        let o = observed.get(k).copied().unwrap_or(0) as f64;
        if e > 0.0 {
            statistic += (o - e) * (o - e) / e;
        }
    }
    chi_square_verdict(statistic, expected.len().saturating_sub(1) as u64, alpha)
}

/// Pearson test of homogeneity between two samples.
pub fn chi_square_two_sample<T: Ord>(a: &BTreeMap<T, u64>, b: &BTreeMap<T, u64>, alpha: f64) -> Result<ChiSquare> {
    let (na, nb) = (a.values().sum::<u64>() as f64, b.values().sum::<u64>() as f64);
    if na == 0.0 || nb == 0.0 {
        return invalid("no observations");
    }
    let keys: std::collections::BTreeSet<&T> = a.keys().chain(b.keys()).collect();
    let mut statistic = 0.0;
    for k in &keys {
        let (oa, ob) = (a.get(*k).copied().unwrap_or(0) as f64, b.get(*k).copied().unwrap_or(0) as f64);
        let row = oa + ob;
        for (o, n) in [(oa, na), (ob, nb)] {
            let e = row * n / (na + nb);
            statistic += (o - e) * (o - e) / e;
        }
    }
    chi_square_verdict(statistic, keys.len().saturating_sub(1) as u64, alpha)
}

/// Fixtures used by the exact zero-knowledge checks.
pub mod fixtures {
    use super::*;

    /// Path `0 − 1 − 2` and its image under `π = (1,2,0)`.
    pub fn gmw_n3() -> (GmwPublic, GmwSecret) {
        let g1 = Graph::path(3);
        let pi = Permutation::new(vec![1, 2, 0]).expect("valid permutation");
        let g2 = apply_permutation(&pi, &g1).expect("sizes match");
        (GmwPublic { g1, g2 }, GmwSecret { pi })
    }

    /// `n = 15 = 3·5`, `s = 2`, `v = 4`.
    pub fn fs_n15() -> FsKeys {
        FsKeys::from_parts(nat(3), nat(5), nat(2)).expect("valid fixture")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng(seed: u64) -> WorkbenchRng {
        WorkbenchRng::from_seed(seed)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exact_point_mass_and_fair_coin() {
        let point = exact_distribution(|_: &mut ExactCoins| Ok(Some(7u8))).unwrap();
        assert_eq!(point.into_iter().collect::<Vec<_>>(), vec![(7, r(1, 1))]);
        let coin = exact_distribution(|c: &mut ExactCoins| Ok(Some(c.coin()))).unwrap();
        assert_eq!(coin[&false], r(1, 2));
        assert_eq!(coin[&true], r(1, 2));
    }

    #[test]
    fn exact_handles_uneven_trees_and_rejection() {
        // first coin picks a branch; branch 1 draws a three-way value
        let d = exact_distribution(|c: &mut ExactCoins| {
            Ok(Some(if c.coin() { 10 + c.below(3) } else { 0 }))
        })
        .unwrap();
        assert_eq!(d[&0], r(1, 2));
        assert_eq!(d[&10], r(1, 6));
        // rejection: keep only values below 2 of a uniform draw on 0..5
        let d = exact_distribution(|c: &mut ExactCoins| {
            let v = c.below(5);
            Ok((v < 2).then_some(v))
        })
        .unwrap();
        assert_eq!(d[&0], r(1, 2));
        assert_eq!(d[&1], r(1, 2));
    }

    #[test]
    fn exact_unit_mod_is_uniform_over_units() {
        let d = exact_distribution(|c: &mut ExactCoins| Ok(Some(c.unit_mod(&nat(15))))).unwrap();
        assert_eq!(d.len(), 8);
        assert!(d.values().all(|p| *p == r(1, 8)));
        assert!(d.keys().all(|u| u.gcd(&nat(15)).is_one()));
    }

    #[test]
    fn exact_rejects_oversized_spaces() {
        let big = nat(1) << 80;
        let e = exact_distribution(|c: &mut ExactCoins| Ok(Some(c.below_natural(&big))));
        assert!(matches!(e, Err(Error::ResourceLimit(_))));
        let e = exact_distribution(|c: &mut ExactCoins| Ok(Some((c.below(1 << 11), c.below(1 << 11)))));
        assert!(matches!(e, Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn gni_examples() {
        let (p4, s4) = (Graph::path(4), Graph::star(4));
        let mut rng = rng(1);
        let out = gni_protocol(&p4, &s4, GniProver::Honest, 200, &mut rng).unwrap();
        assert!(out.accepted);
        assert_eq!(out.coin_trace.len(), 200);
        let k1 = gni_protocol(&p4, &s4, GniProver::Honest, 1, &mut rng).unwrap();
        assert_eq!(k1.rounds.len(), 1);
        assert!(gni_protocol(&p4, &p4, GniProver::Honest, 0, &mut rng).is_err());
        let mut passed = 0;
        for _ in 0..2000 {
            passed += gni_round(&p4, &p4, GniProver::Honest, &mut rng).unwrap().1 as u32;
        }
        assert!((900..1100).contains(&passed), "{passed}");
        assert!(matches!(
            gni_round(&Graph::path(9), &Graph::star(9), GniProver::Honest, &mut rng),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn gmw_keygen_examples() {
        let (public, secret) = gmw_keygen(6, &mut rng(5)).unwrap();
        assert_eq!(apply_permutation(&secret.pi, &public.g1).unwrap(), public.g2);
        assert!(are_isomorphic_bruteforce(&public.g1, &public.g2).unwrap().is_some());
        let (other, _) = gmw_keygen(6, &mut rng(6)).unwrap();
        assert_ne!(public, other);
        assert!(gmw_keygen(2, &mut rng(5)).is_err());
    }

    #[test]
    fn gmw_knower_always_accepted() {
        let (public, secret) = gmw_keygen(6, &mut rng(7)).unwrap();
        let responder = GmwResponder::KnowsSecret(secret);
        let out = gmw_protocol(&public, &responder, 500, &mut rng(8)).unwrap();
        assert!(out.accepted);
        assert!(out.rounds.iter().any(|r| r.triple.challenge == 1));
        assert!(out.rounds.iter().any(|r| r.triple.challenge == 2));
    }

    #[test]
    fn gmw_equal_branch_answers_rho() {
        // replay the coins to see ρ and a
        let (public, secret) = fixtures::gmw_n3();
        let responder = GmwResponder::KnowsSecret(secret);
        for seed in 0..40 {
            let (triple, _) = gmw_round(&public, &responder, &mut rng(seed)).unwrap();
            let mut replay = rng(seed);
            let rho = random_permutation(3, &mut replay).unwrap();
            let a = 1 + replay.below(2) as u8;
            if a == triple.challenge {
                assert_eq!(triple.response, Payload::Permutation(rho));
            }
        }
    }

    #[test]
    fn gmw_verifier_rejects_malformed_triples() {
        let (public, _) = fixtures::gmw_n3();
        let t = RoundTriple {
            commitment: Payload::Graph(public.g1.clone()),
            challenge: 3,
            response: Payload::Permutation(Permutation::identity(3)),
        };
        assert!(!gmw_verify(&public, &t));
        let t = RoundTriple { challenge: 1, ..t };
        assert!(gmw_verify(&public, &t));
        let t = RoundTriple {
            response: Payload::Bit(1),
            ..t
        };
        assert!(!gmw_verify(&public, &t));
    }

    #[test]
    fn simulators_emit_verifying_triples() {
        let (public, _) = gmw_keygen(5, &mut rng(9)).unwrap();
        let keys = fs_keygen(32, &mut rng(10)).unwrap();
        let fs_public = keys.public();
        let mut rng = rng(11);
        for _ in 0..300 {
            let (t, attempts) = gmw_simulator_round(&public, &mut rng).unwrap();
            assert!(gmw_verify(&public, &t) && attempts >= 1);
            let (t, _) = fs_simulator_round(&fs_public, &mut rng).unwrap();
            assert!(fs_verify(&fs_public, &t, true));
        }
    }

    #[test]
    fn fs_keygen_invariants() {
        let keys = fs_keygen(24, &mut rng(12)).unwrap();
        assert_eq!(keys.n, &keys.p * &keys.q);
        assert!(keys.s.gcd(&keys.n).is_one());
        assert_eq!(keys.v, (&keys.s * &keys.s) % &keys.n);
        assert!(!crate::numtheory::is_prime(&keys.n));
        assert!(fs_keygen(7, &mut rng(12)).is_err());
    }

    #[test]
    fn fs_worked_example() {
        // n = 77, s = 2, v = 4, r = 3, b = 1: x = 9, y = 6, 36 ≡ 36
        let keys = FsKeys::from_parts(nat(7), nat(11), nat(2)).unwrap();
        assert_eq!(keys.v, nat(4));
        let t = RoundTriple {
            commitment: Payload::Natural(nat(9)),
            challenge: 1,
            response: Payload::Natural(nat(6)),
        };
        assert!(fs_verify(&keys.public(), &t, true));
        // b = 0 answers r itself
        let t0 = RoundTriple {
            commitment: Payload::Natural(nat(9)),
            challenge: 0,
            response: Payload::Natural(nat(3)),
        };
        assert!(fs_verify(&keys.public(), &t0, true));
    }

    #[test]
    fn fs_knower_accepted_and_zero_fraud_caught() {
        let keys = fs_keygen(32, &mut rng(13)).unwrap();
        let public = keys.public();
        let knower = FsResponder::KnowsSecret(keys.s.clone());
        assert!(fs_protocol(&public, &knower, true, 300, &mut rng(14)).unwrap().accepted);
        let fraud = fs_protocol(&public, &FsResponder::ZeroFraud, false, 50, &mut rng(15)).unwrap();
        assert!(fraud.accepted);
        let fraud = fs_protocol(&public, &FsResponder::ZeroFraud, true, 50, &mut rng(15)).unwrap();
        assert!(fraud.rounds.iter().all(|r| !r.verdict));
    }

    #[test]
    fn fs_impostor_passes_iff_guess_matches() {
        let keys = fixtures::fs_n15();
        let public = keys.public();
        for seed in 0..100 {
            let (t, verdict) = fs_round(&public, &FsResponder::Impostor, true, &mut rng(seed)).unwrap();
            let mut replay = rng(seed);
            let _ = replay.unit_mod(&public.n);
            let c = replay.below(2) as u8;
            assert_eq!(verdict, c == t.challenge);
        }
        let degenerate = FsPublic { n: nat(15), v: nat(5) };
        assert!(matches!(fs_simulator_round(&degenerate, &mut rng(0)), Err(Error::InvalidArgument(_))));
        assert!(FsKeys::from_parts(nat(3), nat(5), nat(4)).is_err());
    }

    #[test]
    fn gmw_real_and_simulated_distributions_coincide() {
        let (public, secret) = fixtures::gmw_n3();
        let responder = GmwResponder::KnowsSecret(secret);
        let real = exact_distribution(|c: &mut ExactCoins| gmw_round(&public, &responder, c).map(|(t, _)| Some(t))).unwrap();
        let sim = exact_distribution(|c: &mut ExactCoins| gmw_simulator_attempt(&public, c)).unwrap();
        assert_eq!(real, sim);
        assert_eq!(real.values().cloned().sum::<Rational>(), r(1, 1));
    }

    #[test]
    fn fs_real_and_simulated_distributions_coincide() {
        let keys = fixtures::fs_n15();
        let public = keys.public();
        let knower = FsResponder::KnowsSecret(keys.s.clone());
        let real = exact_distribution(|c: &mut ExactCoins| fs_round(&public, &knower, true, c).map(|(t, _)| Some(t))).unwrap();
        let sim = exact_distribution(|c: &mut ExactCoins| fs_simulator_attempt(&public, c)).unwrap();
        assert_eq!(real, sim);
        assert_eq!(real.len(), 16);
    }

    #[test]
    fn sampled_distribution_matches_exact() {
        let (public, _) = fixtures::gmw_n3();
        let exact = exact_distribution(|c: &mut ExactCoins| gmw_simulator_attempt(&public, c)).unwrap();
        let sampled = transcript_distribution(|g| gmw_simulator_round(&public, g).map(|(t, _)| t), 4000, &mut rng(16)).unwrap();
        assert!(chi_square_against_exact(&sampled, &exact, CHI_SQUARE_ALPHA).unwrap().consistent);
        let other = transcript_distribution(|g| gmw_simulator_round(&public, g).map(|(t, _)| t), 4000, &mut rng(17)).unwrap();
        assert!(chi_square_two_sample(&sampled, &other, CHI_SQUARE_ALPHA).unwrap().consistent);
        let skewed: BTreeMap<_, _> = sampled.keys().take(1).map(|k| (k.clone(), 4000u64)).collect();
        assert!(!chi_square_against_exact(&skewed, &exact, CHI_SQUARE_ALPHA).unwrap().consistent);
    }

    #[test]
    fn amplification_policies() {
        let mut rng = rng(18);
        assert!(amplified_accept(|| Ok(true), 20, Amplification::AllRounds).unwrap());
        assert!(!amplified_accept(|| Ok(false), 1, Amplification::AllRounds).unwrap());
        let mut calls = 0;
        let mut seq = [true, false, true].into_iter();
        assert!(!amplified_accept(
            || {
                calls += 1;
                Ok(seq.next().unwrap())
            },
            3,
            Amplification::AllRounds
        )
        .unwrap());
        assert_eq!(calls, 2);
        let mut seq = [true, false, true].into_iter();
        assert!(amplified_accept(|| Ok(seq.next().unwrap()), 3, Amplification::Majority).unwrap());
        assert!(amplified_accept(|| Ok(rng.coin()), 0, Amplification::AllRounds).is_err());
        let t = Thresholds::default();
        assert!(t.complete(&r(1, 1)) && !t.complete(&r(1, 2)));
        assert!(t.sound(&r(1, 4)) && !t.sound(&r(1, 2)));
    }

    #[test]
    fn simulator_inputs_carry_no_secret() {
        let keys = fs_keygen(48, &mut rng(19)).unwrap();
        let dump = format!("{:?}{}", keys.public(), serde_json::to_string(&keys.public()).unwrap());
        assert!(!dump.contains(&keys.s.to_string()));
        assert!(!dump.contains(&format!("{:x}", keys.s)));
    }
}

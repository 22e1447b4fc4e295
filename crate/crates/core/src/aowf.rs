//! Partial two-ary functions, ⊥-extended associativity checks, the
//! certificate-based associative function over 3-colorings, and the
//! strongly-noninvertible-yet-invertible function built from odd/even
//! encodings.

use std::cell::RefCell;
use std::collections::HashMap;

use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{enumerate_3colorings, is_legal_3coloring, Color, Coloring3, Graph};
use crate::hexnat;
use crate::numtheory::{integer_nth_root, nat, Natural};

/// A two-ary partial function on the naturals; `None` means undefined.
pub trait BinaryFn {
    fn eval(&self, a: &Natural, b: &Natural) -> Option<Natural>;
}

impl<F: Fn(&Natural, &Natural) -> Option<Natural>> BinaryFn for F {
    fn eval(&self, a: &Natural, b: &Natural) -> Option<Natural> {
        self(a, b)
    }
}

/// Cantor pairing `⟨x, y⟩ = (x + y)(x + y + 1)/2 + y`.
pub fn pair(x: &Natural, y: &Natural) -> Natural {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

pub fn unpair(z: &Natural) -> (Natural, Natural) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let (root, _) = integer_nth_root(&(z * 8u32 + 1u32), 2).expect("square root index is 2");
    let w = (root - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = w - &y;
    (x, y)
}

/// `N ∪ {⊥}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bot {
    Bottom,
    Value(Natural),
}

impl From<Option<Natural>> for Bot {
    fn from(v: Option<Natural>) -> Self {
        v.map_or(Bot::Bottom, Bot::Value)
    }
}

/// The total extension `σ⊥` of a partial function.
pub struct BotExtension<F>(pub F);

pub fn bot_extend<F: BinaryFn>(f: F) -> BotExtension<F> {
    BotExtension(f)
}

impl<F: BinaryFn> BotExtension<F> {
    pub fn eval(&self, a: &Bot, b: &Bot) -> Bot {
        match (a, b) {
            (Bot::Value(a), Bot::Value(b)) => self.0.eval(a, b).into(),
            _ => Bot::Bottom,
        }
    }
}

/// Total function on the naturals with 0 playing the role of ⊥:
/// `σ'(a, b) = σ(a − 1, b − 1) + 1` when both are nonzero and `σ` is
/// defined there, else 0.
pub struct Totalized<F>(pub F);

pub fn totalize<F: BinaryFn>(f: F) -> Totalized<F> {
    Totalized(f)
}

impl<F: BinaryFn> BinaryFn for Totalized<F> {
    fn eval(&self, a: &Natural, b: &Natural) -> Option<Natural> {
        if a.is_zero() || b.is_zero() {
            return Some(Natural::zero());
        }
        let v = self.0.eval(&(a - 1u32), &(b - 1u32));
        Some(v.map_or(Natural::zero(), |v| v + 1u32))
    }
}

/// Maps a domain for `σ` to the matching domain for `totalize(σ)`.
pub fn shift_domain(domain: &[Natural]) -> Vec<Natural> {
    domain.iter().map(|v| v + 1u32).collect()
}

/// Graph code: the text-format bytes read as a base-256 number, plus one.
pub fn encode_graph(g: &Graph) -> Natural {
    Natural::from_bytes_be(g.to_string().as_bytes()) + 1u32
}

pub fn decode_graph(x: &Natural) -> Option<Graph> {
    if x.is_zero() {
        return None;
    }
    let bytes = (x - 1u32).to_bytes_be();
    std::str::from_utf8(&bytes).ok()?.parse().ok()
}

fn base4_len(x: &Natural) -> u64 {
    x.bits().div_ceil(2).max(1)
}

/// Base-4 certificate: a leading 1, then `|x|₄` zeros, then one digit
/// `1..=3` per vertex. Its length `|x|₄ + n + 1` always exceeds `|x|₄`.
pub fn encode_certificate(x: &Natural, psi: &Coloring3) -> Natural {
    let pad = base4_len(x);
    let mut z = Natural::one() << (2 * (pad + psi.len() as u64));
    for (i, c) in psi.0.iter().enumerate() {
        let shift = 2 * (psi.len() - 1 - i) as u64;
        z += Natural::from(c.digit()) << shift;
    }
    z
}

/// Coloring carried by `z` if `z` has the certificate layout for `x` on an
/// `n`-vertex graph. Legality is not checked here.
pub fn decode_certificate(x: &Natural, z: &Natural, n: usize) -> Option<Coloring3> {
    let len = base4_len(x) + n as u64 + 1;
    if z.bits() != 2 * len - 1 {
        return None;
    }
    // bit pattern: 01 00..00 d_1 .. d_n (two bits per digit)
    let body_mask = (Natural::one() << (2 * (len - 1))) - 1u32;
    let body = z & &body_mask;
    if body.bits() > 2 * n as u64 {
        return None;
    }
    let colors = (0..n)
        .map(|i| {
            let shift = 2 * (n - 1 - i) as u64;
            let d = ((&body >> shift) & Natural::from(3u32)).to_u8()?;
            Color::from_digit(d)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Coloring3(colors))
}

/// `true` iff `z` is a certificate for "`x` encodes a 3-colorable graph".
pub fn is_certificate(x: &Natural, z: &Natural) -> bool {
    let Some(g) = decode_graph(x) else {
        return false;
    };
    decode_certificate(x, z, g.vertex_count())
        .is_some_and(|psi| is_legal_3coloring(&g, &psi).unwrap_or(false))
}

/// The certificate-based function for graph 3-colorability:
///
/// * `σ(⟨x, z₁⟩, ⟨x, z₂⟩) = ⟨x, min(z₁, z₂)⟩` for certificates `z₁, z₂` of `x`;
/// * `σ(⟨x, x⟩, ⟨x, z⟩) = σ(⟨x, z⟩, ⟨x, x⟩) = ⟨x, x⟩` for a certificate `z`;
/// * undefined otherwise.
pub fn sigma_cert(a: &Natural, b: &Natural) -> Option<Natural> {
    let (a1, a2) = unpair(a);
    let (b1, b2) = unpair(b);
    if a1 != b1 {
        return None;
    }
    let x = a1;
    let cert_a = is_certificate(&x, &a2);
    let cert_b = is_certificate(&x, &b2);
    if cert_a && cert_b {
        Some(pair(&x, (&a2).min(&b2)))
    } else if (a2 == x && cert_b) || (cert_a && b2 == x) {
        Some(pair(&x, &x))
    } else {
        None
    }
}

/// `⟨x, z⟩` for the graph `g` and coloring `psi`.
pub fn certificate_element(g: &Graph, psi: &Coloring3) -> Natural {
    let x = encode_graph(g);
    let z = encode_certificate(&x, psi);
    pair(&x, &z)
}

/// Smallest domain the exhaustive checks accept (30³ = 27,000 triples).
pub const MIN_CHECK_DOMAIN: usize = 30;

/// Domain for exhaustive checks of [`sigma_cert`] on `g`: `⟨x, x⟩`, every
/// `⟨x, z⟩` for a legal coloring, and noise (illegal colorings, another
/// graph's elements, small integers) up to at least [`MIN_CHECK_DOMAIN`]
/// elements.
pub fn certificate_domain(g: &Graph) -> Result<Vec<Natural>> {
    let x = encode_graph(g);
    let legal = enumerate_3colorings(g)?;
    let mut domain = vec![pair(&x, &x)];
    domain.extend(legal.iter().map(|psi| pair(&x, &encode_certificate(&x, psi))));

    let mut noise = Vec::new();
    let n = g.vertex_count();
    let illegal = (0..3usize.pow(n as u32))
        .map(|mut code| {
            Coloring3(
                (0..n)
                    .map(|_| {
                        let c = Color::ALL[code % 3];
                        code /= 3;
                        c
                    })
                    .collect(),
            )
        })
        .filter(|psi| !is_legal_3coloring(g, psi).unwrap_or(true));
    noise.extend(illegal.take(4).map(|psi| pair(&x, &encode_certificate(&x, &psi))));
    let other = Graph::complete(2);
    let xo = encode_graph(&other);
    noise.push(pair(&xo, &xo));
    noise.extend(
        enumerate_3colorings(&other)?
            .iter()
            .take(3)
            .map(|psi| pair(&xo, &encode_certificate(&xo, psi))),
    );
    // an element pairing this graph with the other graph's certificate
    if let Some(psi) = enumerate_3colorings(&other)?.first() {
        noise.push(pair(&x, &encode_certificate(&xo, psi)));
    }
    let mut small = 0u64;
    while domain.len() + noise.len() < MIN_CHECK_DOMAIN || small < 4 {
        noise.push(nat(small));
        small += 1;
    }
    domain.extend(noise);
    domain.sort();
    domain.dedup();
    if domain.len() < MIN_CHECK_DOMAIN {
        return Err(Error::InvalidArgument("certificate domain is too small".into()));
    }
    Ok(domain)
}

/// `odd(n) = 2n + 1`.
pub fn odd(n: &Natural) -> Natural {
    n * 2u32 + 1u32
}

/// `even(n) = 2n`.
pub fn even(n: &Natural) -> Natural {
    n * 2u32
}

/// Default total stand-in for the one-way function inside [`sigma_strong`]:
/// `ρ(x, y) = ⟨x·y + 1, x + y⟩`.
pub fn default_rho(x: &Natural, y: &Natural) -> Natural {
    pair(&(x * y + 1u32), &(x + y))
}

/// The four-case function:
///
/// * `a, b ≠ 0`, `a = ⟨x, y⟩` odd, `b` even: `even(ρ(x, y))`;
/// * `a, b ≠ 0`, `a` even, `b = ⟨x, y⟩` odd: `even(ρ(x, y))`;
/// * `a, b ≠ 0` of equal parity: `odd(a + b)`;
/// * `a = 0` or `b = 0`: `a + b`.
pub fn sigma_strong(a: &Natural, b: &Natural, rho: &dyn Fn(&Natural, &Natural) -> Natural) -> Natural {
    if a.is_zero() || b.is_zero() {
        return a + b;
    }
    match (a.is_odd(), b.is_odd()) {
        (true, false) => {
            let (x, y) = unpair(a);
            even(&rho(&x, &y))
        }
        (false, true) => {
            let (x, y) = unpair(b);
            even(&rho(&x, &y))
        }
        _ => odd(&(a + b)),
    }
}

/// [`sigma_strong`] with [`default_rho`], as a [`BinaryFn`].
pub fn sigma_strong_default(a: &Natural, b: &Natural) -> Option<Natural> {
    Some(sigma_strong(a, b, &default_rho))
}

/// `g(z) = (0, z)`; `σ(0, z) = z` for every `z`.
pub fn universal_inverter_for_sigma_strong(z: &Natural) -> (Natural, Natural) {
    (Natural::zero(), z.clone())
}

/// Result of an exhaustive property check, emitted as JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: String,
    pub domain_size: usize,
    pub holds: bool,
    /// Hex-encoded arguments of the first violation.
    pub witness: Option<Vec<String>>,
}

impl PropertyResult {
    fn new(property: &str, domain_size: usize, witness: Option<Vec<&Natural>>) -> Self {
        Self {
            property: property.into(),
            domain_size,
            holds: witness.is_none(),
            witness: witness.map(|w| w.into_iter().map(hexnat::to_hex).collect()),
        }
    }
}

/// Memoizes a function so that the `|D|³` scans evaluate each pair once.
struct Memo<'f, F> {
    f: &'f F,
    cache: RefCell<HashMap<(Natural, Natural), Option<Natural>>>,
}

impl<'f, F: BinaryFn> Memo<'f, F> {
    fn new(f: &'f F) -> Self {
        Self {
            f,
            cache: RefCell::new(HashMap::new()),
        }
    }

    fn eval(&self, a: &Natural, b: &Natural) -> Option<Natural> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.cache.borrow().get(&key) {
            return v.clone();
        }
        let v = self.f.eval(a, b);
        self.cache.borrow_mut().insert(key, v.clone());
        v
    }

    fn bot(&self, a: &Bot, b: &Bot) -> Bot {
        match (a, b) {
            (Bot::Value(a), Bot::Value(b)) => self.eval(a, b).into(),
            _ => Bot::Bottom,
        }
    }
}

/// `σ⊥(σ⊥(a, b), c) = σ⊥(a, σ⊥(b, c))` for all triples of the domain.
pub fn check_associative(f: &impl BinaryFn, domain: &[Natural]) -> PropertyResult {
    let memo = Memo::new(f);
    for a in domain {
        for b in domain {
            let ab = memo.eval(a, b);
            for c in domain {
                let left = memo.bot(&ab.clone().into(), &Bot::Value(c.clone()));
                let right = memo.bot(&Bot::Value(a.clone()), &memo.eval(b, c).into());
                if left != right {
                    return PropertyResult::new("associative", domain.len(), Some(vec![a, b, c]));
                }
            }
        }
    }
    PropertyResult::new("associative", domain.len(), None)
}

/// The equation only on triples where `(a, b)`, `(b, c)`, `(a, σ(b, c))` and
/// `(σ(a, b), c)` are all in the domain of `σ`.
pub fn check_weakly_associative(f: &impl BinaryFn, domain: &[Natural]) -> PropertyResult {
    let memo = Memo::new(f);
    for a in domain {
        for b in domain {
            let Some(ab) = memo.eval(a, b) else { continue };
            for c in domain {
                let Some(bc) = memo.eval(b, c) else { continue };
                let (Some(left), Some(right)) = (memo.eval(&ab, c), memo.eval(a, &bc)) else {
                    continue;
                };
                if left != right {
                    return PropertyResult::new("weakly-associative", domain.len(), Some(vec![a, b, c]));
                }
            }
        }
    }
    PropertyResult::new("weakly-associative", domain.len(), None)
}

/// `σ⊥(a, b) = σ⊥(b, a)` for all pairs of the domain.
pub fn check_commutative(f: &impl BinaryFn, domain: &[Natural]) -> PropertyResult {
    for (i, a) in domain.iter().enumerate() {
        for b in &domain[i + 1..] {
            if f.eval(a, b) != f.eval(b, a) {
                return PropertyResult::new("commutative", domain.len(), Some(vec![a, b]));
            }
        }
    }
    PropertyResult::new("commutative", domain.len(), None)
}

/// Smallest `b <= bound` with `f(a, b) = z`.
pub fn invert_first_bruteforce(f: &impl BinaryFn, a: &Natural, z: &Natural, bound: &Natural) -> Option<Natural> {
    let mut b = Natural::zero();
    while b <= *bound {
        if f.eval(a, &b).as_ref() == Some(z) {
            return Some(b);
        }
        b += 1u32;
    }
    None
}

/// Smallest `a <= bound` with `f(a, b) = z`.
pub fn invert_second_bruteforce(f: &impl BinaryFn, b: &Natural, z: &Natural, bound: &Natural) -> Option<Natural> {
    let mut a = Natural::zero();
    while a <= *bound {
        if f.eval(&a, b).as_ref() == Some(z) {
            return Some(a);
        }
        a += 1u32;
    }
    None
}

/// Which argument an overstrongness inverter is handed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GivenArgument {
    First,
    Second,
}

/// Falsifier for overstrongness on a finite slice. `σ` is overstrong when no
/// efficient `f(i, z, a)` returns a preimage of `z` whenever one exists with
/// `a` in position `i`. This runs a candidate `f` on every `(i, a, b)` with
/// `a, b` in the domain and `z = σ(a, b)` (or `σ(b, a)`), and reports
/// `holds = true` when `f` succeeded everywhere: evidence against
/// overstrongness on that slice, never a proof of it.
pub fn overstrongness_falsifier(
    f: &impl BinaryFn,
    inverter: impl Fn(GivenArgument, &Natural, &Natural) -> (Natural, Natural),
    domain: &[Natural],
) -> PropertyResult {
    for a in domain {
        for b in domain {
            for (i, z) in [(GivenArgument::First, f.eval(a, b)), (GivenArgument::Second, f.eval(b, a))] {
                let Some(z) = z else { continue };
                let (u, v) = inverter(i, &z, a);
                if f.eval(&u, &v).as_ref() != Some(&z) {
                    return PropertyResult::new("inverter-succeeds", domain.len(), Some(vec![a, &z]));
                }
            }
        }
    }
    PropertyResult::new("inverter-succeeds", domain.len(), None)
}

//! Key agreement and signature protocols over a simulated channel.
//!
//! Every protocol exists twice: as a pure function of all secrets, and as
//! parties exchanging messages through a [`Channel`] that records a
//! [`Transcript`] and lets Erich, the eavesdropper, read and (in the
//! man-in-the-middle scenario) replace messages. Rounds are the step numbers
//! of the corresponding protocol figure.

use std::collections::BTreeMap;
use std::path::Path;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::aowf::BinaryFn;
use crate::classical::{vigenere, Direction, LetterString};
use crate::error::{invalid, Error, Result};
use crate::graphs::{Graph, Permutation};
use crate::hexnat;
use crate::numtheory::{
    find_primitive_root, gen_prime, is_primitive_root, is_prime, mod_inverse, mod_pow, reduce_signed, signed, Natural,
};
use crate::rng::WorkbenchRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Alice,
    Bob,
    Erich,
}

/// Value carried by a message.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Natural(#[serde(with = "hexnat")] Natural),
    Text(String),
    Bit(u8),
    Graph(Graph),
    Permutation(Permutation),
    Pair(Box<Payload>, Box<Payload>),
}

impl Payload {
    pub fn natural(v: &Natural) -> Self {
        Payload::Natural(v.clone())
    }

    pub fn as_natural(&self) -> Result<&Natural> {
        match self {
            Payload::Natural(n) => Ok(n),
            other => Err(Error::ProtocolAbort(format!("expected a natural, got {other:?}"))),
        }
    }

    pub fn as_text(&self) -> Result<&str> {
        match self {
            Payload::Text(t) => Ok(t),
            other => Err(Error::ProtocolAbort(format!("expected text, got {other:?}"))),
        }
    }

    /// Every natural number occurring anywhere inside the payload.
    pub fn naturals(&self) -> Vec<&Natural> {
        match self {
            Payload::Natural(n) => vec![n],
            Payload::Pair(a, b) => {
                let mut v = a.naturals();
                v.extend(b.naturals());
                v
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub round: u32,
    pub sender: Party,
    pub label: String,
    pub payload: Payload,
}

/// The public record of one protocol run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub protocol: String,
    pub params: BTreeMap<String, Payload>,
    pub seed: Option<u64>,
    pub outputs: BTreeMap<String, Payload>,
    pub messages: Vec<Message>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    protocol: String,
    params: BTreeMap<String, Payload>,
    seed: Option<u64>,
    #[serde(default)]
    outputs: BTreeMap<String, Payload>,
}

impl Transcript {
    pub fn new(protocol: &str) -> Self {
        Self {
            protocol: protocol.into(),
            params: BTreeMap::new(),
            seed: None,
            outputs: BTreeMap::new(),
            messages: Vec::new(),
        }
    }

    pub fn param(mut self, name: &str, value: Payload) -> Self {
        self.params.insert(name.into(), value);
        self
    }

    pub fn set_output(&mut self, name: &str, value: Payload) {
        self.outputs.insert(name.into(), value);
    }

    pub fn push(&mut self, message: Message) -> Result<()> {
        if let Some(last) = self.messages.last() {
            if message.round < last.round {
                return invalid(format!("round {} after round {}", message.round, last.round));
            }
        }
        self.messages.push(message);
        Ok(())
    }

    /// Payloads of all messages with the given label, in order.
    pub fn find(&self, label: &str) -> impl Iterator<Item = &Message> {
        let label = label.to_owned();
        self.messages.iter().filter(move |m| m.label == label)
    }

    /// Every natural number sent over the channel.
    pub fn message_naturals(&self) -> Vec<&Natural> {
        self.messages.iter().flat_map(|m| m.payload.naturals()).collect()
    }

    /// Header object on the first line, then one object per message.
    pub fn to_jsonl(&self) -> String {
        let header = Header {
            protocol: self.protocol.clone(),
            params: self.params.clone(),
            seed: self.seed,
            outputs: self.outputs.clone(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for m in &self.messages {
            out += &serde_json::to_string(m).expect("message serializes");
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line".into(),
        })?;
        let header: Header = serde_json::from_str(first).map_err(|e| Error::Parse {
            line: 1,
            message: e.to_string(),
        })?;
        let mut t = Transcript {
            protocol: header.protocol,
            params: header.params,
            seed: header.seed,
            outputs: header.outputs,
            messages: Vec::new(),
        };
        for (i, line) in lines {
            let message: Message = serde_json::from_str(line).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            t.push(message).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
        }
        Ok(t)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_jsonl())
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::from_jsonl(&text)
    }
}

/// Erich's hook into the channel: he sees every message and may return a
/// replacement payload that the receiver gets instead.
pub trait Adversary {
    fn intercept(&mut self, message: &Message) -> Option<Payload>;
}

/// Eavesdropper who only reads.
#[derive(Debug, Default, Clone, Copy)]
pub struct Passive;

impl Adversary for Passive {
    fn intercept(&mut self, _: &Message) -> Option<Payload> {
        None
    }
}

/// In-process insecure channel. Substituted messages are logged a second
/// time with sender `erich`.
pub struct Channel<A: Adversary = Passive> {
    transcript: Transcript,
    adversary: A,
}

impl Channel<Passive> {
    pub fn new(transcript: Transcript) -> Self {
        Self::with_adversary(transcript, Passive)
    }
}

impl<A: Adversary> Channel<A> {
    pub fn with_adversary(transcript: Transcript, adversary: A) -> Self {
        Self { transcript, adversary }
    }

    /// Sends a payload and returns what the receiver actually gets.
    pub fn send(&mut self, round: u32, sender: Party, label: &str, payload: Payload) -> Result<Payload> {
        let message = Message {
            round,
            sender,
            label: label.into(),
            payload,
        };
        let replacement = self.adversary.intercept(&message);
        let delivered = replacement.clone().unwrap_or_else(|| message.payload.clone());
        self.transcript.push(message)?;
        if let Some(payload) = replacement {
            self.transcript.push(Message {
                round,
                sender: Party::Erich,
                label: label.into(),
                payload,
            })?;
        }
        Ok(delivered)
    }

    /// Everything sent so far; this is also exactly Erich's view.
    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn transcript_mut(&mut self) -> &mut Transcript {
        &mut self.transcript
    }

    pub fn adversary(&self) -> &A {
        &self.adversary
    }

    pub fn into_parts(self) -> (Transcript, A) {
        (self.transcript, self.adversary)
    }
}

/// A prime `p` with primitive root `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhParams {
    p: Natural,
    g: Natural,
}

impl DhParams {
    pub fn new(p: Natural, g: Natural) -> Result<Self> {
        if !is_primitive_root(&g, &p)? {
            return invalid(format!("{g} is not a primitive root of {p}"));
        }
        Ok(Self { p, g })
    }

    /// Random `bits`-bit prime together with a primitive root.
    pub fn generate(bits: u64, rng: &mut WorkbenchRng) -> Result<Self> {
        if !(3..=48).contains(&bits) {
            return invalid("DH parameter generation supports 3..=48 bits");
        }
        let p = gen_prime(bits, rng)?;
        let g = find_primitive_root(&p, rng)?;
        Ok(Self { p, g })
    }

    pub fn p(&self) -> &Natural {
        &self.p
    }

    pub fn g(&self) -> &Natural {
        &self.g
    }

    fn transcript(&self, protocol: &str) -> Transcript {
        Transcript::new(protocol)
            .param("p", Payload::natural(&self.p))
            .param("g", Payload::natural(&self.g))
    }

    fn check_exponent(&self, x: &Natural, name: &str) -> Result<()> {
        if x.is_zero() || *x > &self.p - 2u32 {
            return invalid(format!("{name} must lie in [1, p-2]"));
        }
        Ok(())
    }

    /// Uniform exponent in `[1, p − 2]`.
    pub fn random_exponent(&self, rng: &mut WorkbenchRng) -> Natural {
        rng.range(&Natural::one(), &(&self.p - 1u32))
    }

    /// Uniform exponent in `[1, p − 2]` coprime to `p − 1`.
    pub fn random_unit_exponent(&self, rng: &mut WorkbenchRng) -> Natural {
        let order = &self.p - 1u32;
        loop {
            let x = self.random_exponent(rng);
            if x.gcd(&order).is_one() {
                return x;
            }
        }
    }
}

/// One side of a Diffie–Hellman exchange.
struct DhParty<'a> {
    params: &'a DhParams,
    secret: Natural,
}

impl DhParty<'_> {
    fn public(&self) -> Natural {
        mod_pow(&self.params.g, &self.secret, &self.params.p)
    }

    fn key(&self, other: &Natural) -> Natural {
        mod_pow(other, &self.secret, &self.params.p)
    }
}

/// `(g^b)^a` and `(g^a)^b` computed directly.
pub fn dh_algebra(params: &DhParams, a: &Natural, b: &Natural) -> (Natural, Natural) {
    let p = &params.p;
    let alpha = mod_pow(&params.g, a, p);
    let beta = mod_pow(&params.g, b, p);
    (mod_pow(&beta, a, p), mod_pow(&alpha, b, p))
}

fn dh_exchange<A: Adversary>(params: &DhParams, a: &Natural, b: &Natural, channel: &mut Channel<A>) -> Result<(Natural, Natural)> {
    let alice = DhParty { params, secret: a.clone() };
    let bob = DhParty { params, secret: b.clone() };
    let to_bob = channel.send(3, Party::Alice, "alpha", Payload::Natural(alice.public()))?;
    let to_alice = channel.send(3, Party::Bob, "beta", Payload::Natural(bob.public()))?;
    Ok((alice.key(to_alice.as_natural()?), bob.key(to_bob.as_natural()?)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyAgreement {
    pub transcript: Transcript,
    pub k_alice: Natural,
    pub k_bob: Natural,
}

impl KeyAgreement {
    pub fn agreed(&self) -> bool {
        self.k_alice == self.k_bob
    }
}

pub fn dh_keyagree(params: &DhParams, a: &Natural, b: &Natural) -> Result<KeyAgreement> {
    params.check_exponent(a, "a")?;
    params.check_exponent(b, "b")?;
    let mut channel = Channel::new(params.transcript("diffie-hellman"));
    let (k_alice, k_bob) = dh_exchange(params, a, b, &mut channel)?;
    let (mut transcript, _) = channel.into_parts();
    transcript.set_output("k_alice", Payload::natural(&k_alice));
    transcript.set_output("k_bob", Payload::natural(&k_bob));
    Ok(KeyAgreement {
        transcript,
        k_alice,
        k_bob,
    })
}

/// Erich in the middle: replaces `alpha` by `g^{e1}` and `beta` by `g^{e2}`
/// and keeps a key with each side.
#[derive(Debug, Clone)]
pub struct MitmErich {
    params: DhParams,
    e1: Natural,
    e2: Natural,
    pub key_with_alice: Option<Natural>,
    pub key_with_bob: Option<Natural>,
}

impl Adversary for MitmErich {
    fn intercept(&mut self, message: &Message) -> Option<Payload> {
        let value = message.payload.as_natural().ok()?;
        let (p, g) = (&self.params.p, &self.params.g);
        match (message.sender, message.label.as_str()) {
            (Party::Alice, "alpha") => {
                self.key_with_alice = Some(mod_pow(value, &self.e2, p));
                Some(Payload::Natural(mod_pow(g, &self.e1, p)))
            }
            (Party::Bob, "beta") => {
                self.key_with_bob = Some(mod_pow(value, &self.e1, p));
                Some(Payload::Natural(mod_pow(g, &self.e2, p)))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MitmOutcome {
    pub transcript: Transcript,
    pub k_alice: Natural,
    pub k_bob: Natural,
    /// Erich's key shared with Alice.
    pub erich_alice_side: Natural,
    /// Erich's key shared with Bob.
    pub erich_bob_side: Natural,
    /// Always false: nothing in the base protocol authenticates `alpha` or `beta`.
    pub detected: bool,
}

/// `(g^{a·e2}, g^{b·e1})`: the keys Alice and Bob end up with under attack.
pub fn dh_mitm_algebra(params: &DhParams, a: &Natural, b: &Natural, e1: &Natural, e2: &Natural) -> (Natural, Natural) {
    let p = &params.p;
    (
        mod_pow(&params.g, &(a * e2), p),
        mod_pow(&params.g, &(b * e1), p),
    )
}

pub fn dh_mitm(params: &DhParams, a: &Natural, b: &Natural, e1: &Natural, e2: &Natural) -> Result<MitmOutcome> {
    for (x, name) in [(a, "a"), (b, "b"), (e1, "e1"), (e2, "e2")] {
        params.check_exponent(x, name)?;
    }
    let erich = MitmErich {
        params: params.clone(),
        e1: e1.clone(),
        e2: e2.clone(),
        key_with_alice: None,
        key_with_bob: None,
    };
    let mut channel = Channel::with_adversary(params.transcript("diffie-hellman-mitm"), erich);
    let (k_alice, k_bob) = dh_exchange(params, a, b, &mut channel)?;
    let (mut transcript, erich) = channel.into_parts();
    transcript.set_output("k_alice", Payload::natural(&k_alice));
    transcript.set_output("k_bob", Payload::natural(&k_bob));
    let missing = || Error::ProtocolAbort("Erich missed a message".into());
    Ok(MitmOutcome {
        transcript,
        k_alice,
        k_bob,
        erich_alice_side: erich.key_with_alice.ok_or_else(missing)?,
        erich_bob_side: erich.key_with_bob.ok_or_else(missing)?,
        detected: false,
    })
}

/// Vigenère key from the decimal digits of `k`, digit `i` becoming the
/// `i`-th letter (`0 → A`, ..., `9 → J`).
pub fn digits_key(k: &Natural) -> LetterString {
    let residues = k.to_str_radix(10).bytes().map(|b| b - b'0').collect();
    LetterString::from_residues(residues).expect("digits are letters")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridOutcome {
    pub transcript: Transcript,
    pub recovered: LetterString,
}

/// Bob's side of the hybrid scheme: `k = alpha^b`, then `m = D_k(c)`.
pub fn hybrid_decrypt(params: &DhParams, b: &Natural, alpha: &Natural, c: &LetterString) -> Result<LetterString> {
    let k = mod_pow(alpha, b, &params.p);
    vigenere(&digits_key(&k), c, Direction::Decrypt)
}

/// Alice's side: `alpha = g^a`, `k = beta^a`, `c = E_k(m)`.
pub fn hybrid_encrypt(params: &DhParams, beta: &Natural, a: &Natural, m: &LetterString) -> Result<(Natural, LetterString)> {
    let alpha = mod_pow(&params.g, a, &params.p);
    let k = mod_pow(beta, a, &params.p);
    Ok((alpha, vigenere(&digits_key(&k), m, Direction::Encrypt)?))
}

pub fn hybrid_dh(params: &DhParams, b: &Natural, a: &Natural, m: &LetterString) -> Result<HybridOutcome> {
    params.check_exponent(a, "a")?;
    params.check_exponent(b, "b")?;
    let mut channel = Channel::new(params.transcript("hybrid-diffie-hellman"));
    let bob = DhParty { params, secret: b.clone() };
    let beta = channel.send(3, Party::Bob, "beta", Payload::Natural(bob.public()))?;
    let (alpha, c) = hybrid_encrypt(params, beta.as_natural()?, a, m)?;
    let alpha = channel.send(5, Party::Alice, "alpha", Payload::Natural(alpha))?;
    let c = channel.send(5, Party::Alice, "c", Payload::Text(c.to_string()))?;
    let c: LetterString = c.as_text()?.parse()?;
    let recovered = hybrid_decrypt(params, b, alpha.as_natural()?, &c)?;
    let (mut transcript, _) = channel.into_parts();
    transcript.set_output("m_bob", Payload::Text(recovered.to_string()));
    Ok(HybridOutcome { transcript, recovered })
}

/// `(alpha, c) = (g^a, m · beta^a) mod p` with `a` a unit modulo `p − 1`.
pub fn elgamal_encrypt(params: &DhParams, beta: &Natural, a: &Natural, m: &Natural) -> Result<(Natural, Natural)> {
    let p = &params.p;
    if !a.gcd(&(p - 1u32)).is_one() || a.is_zero() {
        return invalid("a must be a unit modulo p-1");
    }
    if (m % p).is_zero() || m >= p {
        return invalid("message must lie in [1, p-1]");
    }
    Ok((mod_pow(&params.g, a, p), m * mod_pow(beta, a, p) % p))
}

/// `m = c · alpha^{p−1−b} mod p`.
pub fn elgamal_decrypt(params: &DhParams, b: &Natural, alpha: &Natural, c: &Natural) -> Result<Natural> {
    params.check_exponent(b, "b")?;
    let p = &params.p;
    let x = p - 1u32 - b;
    Ok(c * mod_pow(alpha, &x, p) % p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalOutcome {
    pub transcript: Transcript,
    pub recovered: Natural,
}

pub fn elgamal_exchange(params: &DhParams, b: &Natural, a: &Natural, m: &Natural) -> Result<ElGamalOutcome> {
    params.check_exponent(b, "b")?;
    let mut channel = Channel::new(params.transcript("elgamal"));
    let bob = DhParty { params, secret: b.clone() };
    let beta = channel.send(3, Party::Bob, "beta", Payload::Natural(bob.public()))?;
    let (alpha, c) = elgamal_encrypt(params, beta.as_natural()?, a, m)?;
    let alpha = channel.send(5, Party::Alice, "alpha", Payload::Natural(alpha))?;
    let c = channel.send(5, Party::Alice, "c", Payload::Natural(c))?;
    let recovered = elgamal_decrypt(params, b, alpha.as_natural()?, c.as_natural()?)?;
    let (mut transcript, _) = channel.into_parts();
    transcript.set_output("m_bob", Payload::natural(&recovered));
    Ok(ElGamalOutcome { transcript, recovered })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalSignature {
    pub beta: Natural,
    pub rho: Natural,
    pub s: Natural,
}

/// `rho = g^r`, `s = r^{-1} (m − b·rho) mod (p − 1)`, so that
/// `b·rho + r·s ≡ m (mod p − 1)`.
pub fn elgamal_sign(params: &DhParams, b: &Natural, r: &Natural, m: &Natural) -> Result<ElGamalSignature> {
    params.check_exponent(b, "b")?;
    let p = &params.p;
    let order = p - 1u32;
    let r_inv = mod_inverse(r, &order)?.ok_or_else(|| Error::InvalidArgument("gcd(r, p-1) != 1".into()))?;
    let rho = mod_pow(&params.g, r, p);
    let rhs = reduce_signed(&(signed(m) - signed(&(b * &rho))), &order);
    Ok(ElGamalSignature {
        beta: mod_pow(&params.g, b, p),
        s: rhs * r_inv % &order,
        rho,
    })
}

/// `g^m ≡ beta^rho · rho^s (mod p)`; false when `rho` is outside `[1, p − 1]`.
pub fn elgamal_verify(params: &DhParams, beta: &Natural, m: &Natural, rho: &Natural, s: &Natural) -> bool {
    let p = &params.p;
    if rho.is_zero() || rho >= p {
        return false;
    }
    mod_pow(&params.g, m, p) == mod_pow(beta, rho, p) * mod_pow(rho, s, p) % p
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureOutcome {
    pub transcript: Transcript,
    pub verified: bool,
}

pub fn elgamal_signature_exchange(params: &DhParams, b: &Natural, r: &Natural, m: &Natural) -> Result<SignatureOutcome> {
    let sig = elgamal_sign(params, b, r, m)?;
    let mut channel = Channel::new(params.transcript("elgamal-signature"));
    let beta = channel.send(3, Party::Bob, "beta", Payload::Natural(sig.beta))?;
    let m = channel.send(3, Party::Bob, "m", Payload::natural(m))?;
    let rho = channel.send(3, Party::Bob, "rho", Payload::Natural(sig.rho))?;
    let s = channel.send(3, Party::Bob, "s", Payload::Natural(sig.s))?;
    let verified = elgamal_verify(
        params,
        beta.as_natural()?,
        m.as_natural()?,
        rho.as_natural()?,
        s.as_natural()?,
    );
    let (mut transcript, _) = channel.into_parts();
    transcript.set_output("verified_alice", Payload::Bit(verified as u8));
    Ok(SignatureOutcome { transcript, verified })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ShamirOptions {
    /// Accept `m = p`, which the protocol turns into 0.
    pub allow_m_equal_p: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShamirOutcome {
    pub transcript: Transcript,
    pub recovered: Natural,
}

fn shamir_inverses(p: &Natural, a: &Natural, b: &Natural, m: &Natural, options: ShamirOptions) -> Result<(Natural, Natural)> {
    if !is_prime(p) {
        return invalid("p must be prime");
    }
    let order = p - 1u32;
    let inv = |x: &Natural, name: &str| {
        mod_inverse(x, &order)?.ok_or_else(|| Error::InvalidArgument(format!("gcd({name}, p-1) != 1")))
    };
    let (a_inv, b_inv) = (inv(a, "a")?, inv(b, "b")?);
    if m.is_zero() || m > p || (m == p && !options.allow_m_equal_p) {
        return invalid("message must lie in [1, p-1] (m = p needs allow_m_equal_p)");
    }
    Ok((a_inv, b_inv))
}

/// `((m^a)^b)^{a^{-1}})^{b^{-1}} mod p`.
pub fn shamir_algebra(p: &Natural, a: &Natural, b: &Natural, m: &Natural, options: ShamirOptions) -> Result<Natural> {
    let (a_inv, b_inv) = shamir_inverses(p, a, b, m, options)?;
    let z = mod_pow(&mod_pow(&mod_pow(m, a, p), b, p), &a_inv, p);
    Ok(mod_pow(&z, &b_inv, p))
}

pub fn shamir_no_key(p: &Natural, a: &Natural, b: &Natural, m: &Natural, options: ShamirOptions) -> Result<ShamirOutcome> {
    let (a_inv, b_inv) = shamir_inverses(p, a, b, m, options)?;
    let mut channel = Channel::new(Transcript::new("shamir-no-key").param("p", Payload::natural(p)));
    let x = channel.send(3, Party::Alice, "x", Payload::Natural(mod_pow(m, a, p)))?;
    let y = channel.send(5, Party::Bob, "y", Payload::Natural(mod_pow(x.as_natural()?, b, p)))?;
    let z = channel.send(7, Party::Alice, "z", Payload::Natural(mod_pow(y.as_natural()?, &a_inv, p)))?;
    let recovered = mod_pow(z.as_natural()?, &b_inv, p);
    let (mut transcript, _) = channel.into_parts();
    transcript.set_output("m_bob", Payload::natural(&recovered));
    Ok(ShamirOutcome { transcript, recovered })
}

fn apply(sigma: &impl BinaryFn, a: &Natural, b: &Natural) -> Result<Natural> {
    sigma
        .eval(a, b)
        .ok_or_else(|| Error::ProtocolAbort(format!("sigma({a}, {b}) is undefined")))
}

/// `(σ(x, σ(y, z)), σ(σ(x, y), z))`.
pub fn rivest_sherman_algebra(sigma: &impl BinaryFn, x: &Natural, y: &Natural, z: &Natural) -> Result<(Natural, Natural)> {
    Ok((
        apply(sigma, x, &apply(sigma, y, z)?)?,
        apply(sigma, &apply(sigma, x, y)?, z)?,
    ))
}

/// Keys may differ when `σ` is not associative; see [`KeyAgreement::agreed`].
pub fn rivest_sherman_keyagree(sigma: &impl BinaryFn, x: &Natural, y: &Natural, z: &Natural) -> Result<KeyAgreement> {
    let mut channel = Channel::new(Transcript::new("rivest-sherman"));
    let y_sent = channel.send(2, Party::Alice, "y", Payload::natural(y))?;
    let sxy = channel.send(2, Party::Alice, "sigma_xy", Payload::Natural(apply(sigma, x, y)?))?;
    let syz = channel.send(4, Party::Bob, "sigma_yz", Payload::Natural(apply(sigma, y_sent.as_natural()?, z)?))?;
    let k_alice = apply(sigma, x, syz.as_natural()?)?;
    let k_bob = apply(sigma, sxy.as_natural()?, z)?;
    let (mut transcript, _) = channel.into_parts();
    transcript.set_output("k_alice", Payload::natural(&k_alice));
    transcript.set_output("k_bob", Payload::natural(&k_bob));
    Ok(KeyAgreement {
        transcript,
        k_alice,
        k_bob,
    })
}

/// Alice's published pair `(y_A, σ(x_A, y_A))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RabiShermanPublic {
    pub y: Natural,
    pub sigma_xy: Natural,
}

/// Returns the public pair and `sig = σ(m, x_A)`.
pub fn rabi_sherman_sign(sigma: &impl BinaryFn, x_a: &Natural, y_a: &Natural, m: &Natural) -> Result<(RabiShermanPublic, Natural)> {
    let public = RabiShermanPublic {
        y: y_a.clone(),
        sigma_xy: apply(sigma, x_a, y_a)?,
    };
    Ok((public, apply(sigma, m, x_a)?))
}

/// Checks `σ(m, σ(x_A, y_A)) = σ(sig, y_A)`.
pub fn rabi_sherman_verify(sigma: &impl BinaryFn, public: &RabiShermanPublic, m: &Natural, sig: &Natural) -> Result<bool> {
    Ok(apply(sigma, m, &public.sigma_xy)? == apply(sigma, sig, &public.y)?)
}

pub fn rabi_sherman_exchange(sigma: &impl BinaryFn, x_a: &Natural, y_a: &Natural, m: &Natural) -> Result<SignatureOutcome> {
    let (public, sig) = rabi_sherman_sign(sigma, x_a, y_a, m)?;
    let mut channel = Channel::new(Transcript::new("rabi-sherman"));
    let y = channel.send(2, Party::Alice, "y_a", Payload::Natural(public.y))?;
    let sxy = channel.send(2, Party::Alice, "sigma_xy", Payload::Natural(public.sigma_xy))?;
    let m = channel.send(4, Party::Alice, "m", Payload::natural(m))?;
    let sig = channel.send(4, Party::Alice, "sig", Payload::Natural(sig))?;
    let received = RabiShermanPublic {
        y: y.as_natural()?.clone(),
        sigma_xy: sxy.as_natural()?.clone(),
    };
    let verified = rabi_sherman_verify(sigma, &received, m.as_natural()?, sig.as_natural()?)?;
    let (mut transcript, _) = channel.into_parts();
    transcript.set_output("verified_bob", Payload::Bit(verified as u8));
    Ok(SignatureOutcome { transcript, verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{discrete_log_bruteforce, nat};

    fn params(p: u64, g: u64) -> DhParams {
        DhParams::new(nat(p), nat(g)).unwrap()
    }

    fn add(a: &Natural, b: &Natural) -> Option<Natural> {
        Some(a + b)
    }

    #[test]
    fn dh_params_validation() {
        assert!(DhParams::new(nat(5), nat(4)).is_err());
        assert!(DhParams::new(nat(6), nat(5)).is_err());
        let mut rng = WorkbenchRng::from_seed(4);
        let dp = DhParams::generate(20, &mut rng).unwrap();
        assert!(is_primitive_root(dp.g(), dp.p()).unwrap());
    }

    #[test]
    fn dh_examples() {
        let dp = params(23, 5);
        let r = dh_keyagree(&dp, &nat(1), &nat(1)).unwrap();
        assert_eq!((r.k_alice.clone(), r.k_bob.clone()), (nat(5), nat(5)));

        let dp = params(5, 2);
        let r = dh_keyagree(&dp, &nat(3), &nat(2)).unwrap();
        assert!(r.agreed());
        // the key is g^{ab}: its discrete log must be ab mod (p-1)
        assert_eq!(discrete_log_bruteforce(&nat(2), &r.k_alice, &nat(5)), Some(nat(6 % 4)));
        assert!(dh_keyagree(&dp, &nat(0), &nat(2)).is_err());
        assert!(dh_keyagree(&dp, &nat(4), &nat(2)).is_err());
    }

    #[test]
    fn dh_party_run_matches_algebra() {
        let mut rng = WorkbenchRng::from_seed(23);
        let dp = params(23, 5);
        for _ in 0..100 {
            let (a, b) = (dp.random_exponent(&mut rng), dp.random_exponent(&mut rng));
            let r = dh_keyagree(&dp, &a, &b).unwrap();
            assert!(r.agreed());
            assert_eq!((r.k_alice, r.k_bob), dh_algebra(&dp, &a, &b));
        }
    }

    #[test]
    fn dh_transcript_layout() {
        let r = dh_keyagree(&params(23, 5), &nat(6), &nat(15)).unwrap();
        let t = &r.transcript;
        assert_eq!(t.messages.len(), 2);
        assert_eq!(t.messages[0].label, "alpha");
        assert_eq!(t.messages[0].payload, Payload::Natural(nat(8))); // 5^6 mod 23
        assert_eq!(t.messages[1].payload, Payload::Natural(nat(19))); // 5^15 mod 23
        assert!(t.messages.iter().all(|m| m.round == 3));
    }

    #[test]
    fn mitm_keys() {
        let dp = params(23, 5);
        let r = dh_mitm(&dp, &nat(6), &nat(15), &nat(1), &nat(1)).unwrap();
        assert_eq!(r.erich_alice_side, nat(8));
        assert_eq!(r.erich_bob_side, nat(19));
        assert_eq!(r.k_alice, r.erich_alice_side);
        assert_eq!(r.k_bob, r.erich_bob_side);
        assert!(!r.detected);
        let erich_msgs: Vec<_> = r.transcript.messages.iter().filter(|m| m.sender == Party::Erich).collect();
        assert_eq!(erich_msgs.len(), 2);
    }

    #[test]
    fn mitm_exhaustive_on_small_prime() {
        let dp = params(11, 2);
        let order = 10u64;
        for a in 1..=9u64 {
            for b in 1..=9u64 {
                let honest = dh_algebra(&dp, &nat(a), &nat(b)).0;
                for e1 in 1..=9u64 {
                    for e2 in 1..=9u64 {
                        let r = dh_mitm(&dp, &nat(a), &nat(b), &nat(e1), &nat(e2)).unwrap();
                        assert_eq!(r.k_alice, r.erich_alice_side);
                        assert_eq!(r.k_bob, r.erich_bob_side);
                        assert_eq!((r.k_alice.clone(), r.k_bob.clone()), dh_mitm_algebra(&dp, &nat(a), &nat(b), &nat(e1), &nat(e2)));
                        // g^{a e2} = g^{ab} iff a (e2 - b) ≡ 0 (mod p - 1), likewise for Bob
                        let alice_same = (a * (e2 + order - b)) % order == 0;
                        let bob_same = (b * (e1 + order - a)) % order == 0;
                        assert_eq!(r.k_alice == honest, alice_same);
                        assert_eq!(r.k_bob == honest, bob_same);
                        assert_eq!(r.k_alice == r.k_bob, (a * e2 + order * 10 - b * e1) % order == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn hybrid_round_trip_and_tamper() {
        let dp = params(23, 5);
        let m: LetterString = "FINNISHISALLGREEKTOGERMANS".parse().unwrap();
        let r = hybrid_dh(&dp, &nat(6), &nat(15), &m).unwrap();
        assert_eq!(r.recovered, m);
        let alpha = r.transcript.find("alpha").next().unwrap().payload.as_natural().unwrap().clone();
        let c: LetterString = r.transcript.find("c").next().unwrap().payload.as_text().unwrap().parse().unwrap();
        let mut tampered = c.residues().to_vec();
        tampered[0] = (tampered[0] + 1) % 26;
        let tampered = LetterString::from_residues(tampered).unwrap();
        assert_ne!(hybrid_decrypt(&dp, &nat(6), &alpha, &tampered).unwrap(), m);
        let a: LetterString = "A".parse().unwrap();
        assert_eq!(hybrid_dh(&dp, &nat(3), &nat(4), &a).unwrap().recovered, a);
        // k = 5^{6·15} mod 23 = 2 gives key "C"
        assert_eq!(digits_key(&nat(2)).to_string(), "C");
        assert_eq!(digits_key(&nat(190)).to_string(), "BJA");
    }

    #[test]
    fn elgamal_worked_instance() {
        let dp = params(23, 5);
        let beta = mod_pow(&nat(5), &nat(6), &nat(23));
        let (alpha, c) = elgamal_encrypt(&dp, &beta, &nat(3), &nat(10)).unwrap();
        // independent arithmetic: 5^3 = 125 ≡ 10, beta = 8, 8^3 = 512 ≡ 6, c = 60 ≡ 14
        assert_eq!(alpha, nat(10));
        assert_eq!(c, nat(14));
        assert_eq!(elgamal_decrypt(&dp, &nat(6), &alpha, &c).unwrap(), nat(10));
        assert_eq!(elgamal_exchange(&dp, &nat(6), &nat(3), &nat(10)).unwrap().recovered, nat(10));
        let (_, c1) = elgamal_encrypt(&dp, &beta, &nat(3), &nat(1)).unwrap();
        assert_eq!(c1, mod_pow(&beta, &nat(3), &nat(23)));
        assert!(elgamal_encrypt(&dp, &beta, &nat(3), &nat(23)).is_err());
        assert!(elgamal_encrypt(&dp, &beta, &nat(2), &nat(5)).is_err());
    }

    #[test]
    fn elgamal_signatures() {
        let dp = params(23, 5);
        let mut rng = WorkbenchRng::from_seed(8);
        let mut tamper_failures = 0;
        for _ in 0..100 {
            let b = dp.random_exponent(&mut rng);
            let r = dp.random_unit_exponent(&mut rng);
            let m = rng.range(&nat(0), &nat(1000));
            let sig = elgamal_sign(&dp, &b, &r, &m).unwrap();
            assert!(elgamal_verify(&dp, &sig.beta, &m, &sig.rho, &sig.s));
            tamper_failures += !elgamal_verify(&dp, &sig.beta, &(&m + 1u32), &sig.rho, &sig.s) as u32;
        }
        assert_eq!(tamper_failures, 100);
        // m = b·rho mod (p-1) forces s = 0
        let rho = mod_pow(&nat(5), &nat(3), &nat(23));
        let m = nat(7) * &rho % nat(22);
        let sig = elgamal_sign(&dp, &nat(7), &nat(3), &m).unwrap();
        assert_eq!(sig.s, nat(0));
        assert!(elgamal_verify(&dp, &sig.beta, &m, &sig.rho, &sig.s));
        assert!(elgamal_sign(&dp, &nat(7), &nat(2), &m).is_err());
        assert!(!elgamal_verify(&dp, &sig.beta, &m, &nat(0), &sig.s));
        assert!(elgamal_signature_exchange(&dp, &nat(7), &nat(3), &nat(11)).unwrap().verified);
    }

    #[test]
    fn shamir_examples() {
        let p = nat(23);
        let r = shamir_no_key(&p, &nat(5), &nat(7), &nat(19), ShamirOptions::default()).unwrap();
        assert_eq!(r.recovered, nat(19));
        // 19^5 mod 23 by repeated multiplication
        let x = (0..5).fold(1u64, |acc, _| acc * 19 % 23);
        assert_eq!(r.transcript.messages[0].payload, Payload::Natural(nat(x)));
        let r = shamir_no_key(&p, &nat(1), &nat(7), &nat(19), ShamirOptions::default()).unwrap();
        assert_eq!(r.transcript.messages[0].payload, Payload::Natural(nat(19)));
        assert!(shamir_no_key(&p, &nat(2), &nat(7), &nat(19), ShamirOptions::default()).is_err());
        assert!(shamir_no_key(&p, &nat(5), &nat(7), &nat(23), ShamirOptions::default()).is_err());
        let degenerate = ShamirOptions { allow_m_equal_p: true };
        assert_eq!(shamir_no_key(&p, &nat(5), &nat(7), &nat(23), degenerate).unwrap().recovered, nat(0));
        assert_eq!(shamir_algebra(&p, &nat(5), &nat(7), &nat(19), ShamirOptions::default()).unwrap(), nat(19));
    }

    #[test]
    fn rivest_sherman_with_addition_and_subtraction() {
        let r = rivest_sherman_keyagree(&add, &nat(3), &nat(4), &nat(5)).unwrap();
        assert_eq!((r.k_alice.clone(), r.k_bob.clone()), (nat(12), nat(12)));
        assert_eq!(rivest_sherman_algebra(&add, &nat(3), &nat(4), &nat(5)).unwrap(), (nat(12), nat(12)));
        let sub = |a: &Natural, b: &Natural| Some(if a > b { a - b } else { Natural::zero() });
        let r = rivest_sherman_keyagree(&sub, &nat(10), &nat(4), &nat(3)).unwrap();
        assert!(!r.agreed());
        let partial = |a: &Natural, b: &Natural| (a < &nat(10) && b < &nat(10)).then(|| a + b);
        assert!(matches!(
            rivest_sherman_keyagree(&partial, &nat(5), &nat(5), &nat(5)),
            Err(Error::ProtocolAbort(_))
        ));
    }

    #[test]
    fn rabi_sherman_with_addition() {
        let (public, sig) = rabi_sherman_sign(&add, &nat(7), &nat(9), &nat(100)).unwrap();
        assert_eq!(sig, nat(107));
        assert!(rabi_sherman_verify(&add, &public, &nat(100), &sig).unwrap());
        assert!(!rabi_sherman_verify(&add, &public, &nat(100), &nat(108)).unwrap());
        assert!(rabi_sherman_exchange(&add, &nat(7), &nat(9), &nat(100)).unwrap().verified);
    }

    #[test]
    fn transcript_hygiene() {
        let mut rng = WorkbenchRng::from_seed(77);
        let dp = DhParams::generate(31, &mut rng).unwrap();
        let (a, b) = (dp.random_unit_exponent(&mut rng), dp.random_unit_exponent(&mut rng));
        let check = |t: &Transcript, secrets: &[&Natural]| {
            let sent = t.message_naturals();
            let params: Vec<_> = t.params.values().flat_map(|p| p.naturals()).collect();
            for s in secrets {
                assert!(!sent.contains(s) && !params.contains(s), "secret leaked in {}", t.protocol);
            }
        };
        check(&dh_keyagree(&dp, &a, &b).unwrap().transcript, &[&a, &b]);
        let m: LetterString = "ATTACKATDAWN".parse().unwrap();
        check(&hybrid_dh(&dp, &b, &a, &m).unwrap().transcript, &[&a, &b]);
        check(&elgamal_exchange(&dp, &b, &a, &nat(12345)).unwrap().transcript, &[&a, &b]);
        check(&elgamal_signature_exchange(&dp, &b, &a, &nat(12345)).unwrap().transcript, &[&a, &b]);
        check(
            &shamir_no_key(dp.p(), &a, &b, &nat(4242), ShamirOptions::default()).unwrap().transcript,
            &[&a, &b],
        );
        let (x, y, z) = (nat(1_000_003), nat(2_000_003), nat(3_000_017));
        check(&rivest_sherman_keyagree(&add, &x, &y, &z).unwrap().transcript, &[&x, &z]);
        check(&rabi_sherman_exchange(&add, &x, &y, &nat(5)).unwrap().transcript, &[&x]);
    }

    #[test]
    fn jsonl_round_trip_and_errors() {
        let mut t = dh_keyagree(&params(23, 5), &nat(6), &nat(15)).unwrap().transcript;
        t.seed = Some(42);
        let text = t.to_jsonl();
        assert!(text.lines().next().unwrap().starts_with(r#"{"protocol":"diffie-hellman""#));
        assert_eq!(
            text.lines().nth(1).unwrap(),
            r#"{"round":3,"sender":"alice","label":"alpha","payload":{"natural":"0x8"}}"#
        );
        assert_eq!(Transcript::from_jsonl(&text).unwrap(), t);
        let header_only = Transcript::new("empty");
        assert_eq!(Transcript::from_jsonl(&header_only.to_jsonl()).unwrap(), header_only);
        let broken = format!("{}{{\"round\":\n", text);
        match Transcript::from_jsonl(&broken) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Transcript::from_jsonl("").is_err());
    }

    #[test]
    fn rounds_must_not_decrease() {
        let mut t = Transcript::new("x");
        let msg = |round| Message {
            round,
            sender: Party::Alice,
            label: "v".into(),
            payload: Payload::Bit(1),
        };
        t.push(msg(2)).unwrap();
        t.push(msg(2)).unwrap();
        assert!(t.push(msg(1)).is_err());
    }
}

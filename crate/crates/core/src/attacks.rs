//! Attacks on raw RSA at desk scale.
//!
//! Every attack receives public material only. Where an attack needs a
//! decryption capability it is handed an explicit oracle closure.

use num_integer::Integer as _;
use num_traits::{CheckedSub, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hexnat;
use crate::numtheory::{crt_solve, integer_nth_root, mod_inverse, mod_pow, nat, Integer, Natural};
use crate::rng::{Coins, WorkbenchRng};
use crate::rsa::{RsaPrivateKey, RsaPublicKey};

/// Outcome of one attack run, emitted by the CLI as a JSON object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttackReport {
    pub attack: String,
    pub succeeded: bool,
    pub recovered: Option<Recovered>,
    pub work: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Recovered {
    Factor {
        #[serde(with = "hexnat")]
        p: Natural,
        #[serde(with = "hexnat")]
        q: Natural,
    },
    PrivateExponent {
        #[serde(with = "hexnat")]
        d: Natural,
    },
    Message {
        #[serde(with = "hexnat")]
        m: Natural,
    },
    Signature {
        #[serde(with = "hexnat")]
        m: Natural,
        #[serde(with = "hexnat")]
        sig: Natural,
    },
    CycleLength {
        length: u64,
        #[serde(with = "hexnat")]
        plaintext: Natural,
    },
}

impl AttackReport {
    fn new(attack: &str, recovered: Option<Recovered>, work: u64) -> Self {
        Self {
            attack: attack.into(),
            succeeded: recovered.is_some(),
            recovered,
            work,
        }
    }
}

fn factor_pair(n: &Natural, p: Natural) -> Recovered {
    let q = n / &p;
    debug_assert_eq!(&p * &q, *n);
    Recovered::Factor { p, q }
}

/// Returns the smallest factor found together with the number of trial
/// divisions performed.
fn trial_division_counted(n: &Natural, bound: Option<&Natural>) -> Result<(Option<(Natural, Natural)>, u64)> {
    if *n < nat(2) {
        return invalid("trial division needs n >= 2");
    }
    let mut work = 0;
    let mut d = nat(2);
    while &d * &d <= *n && bound.is_none_or(|b| d <= *b) {
        work += 1;
        if (n % &d).is_zero() {
            let q = n / &d;
            return Ok((Some((d, q)), work));
        }
        d += 1u32;
    }
    Ok((None, work))
}

/// Smallest prime factor `p <= min(bound, sqrt(n))` and its cofactor.
pub fn trial_division(n: &Natural, bound: Option<&Natural>) -> Result<Option<(Natural, Natural)>> {
    Ok(trial_division_counted(n, bound)?.0)
}

pub fn trial_division_report(n: &Natural, bound: Option<&Natural>) -> Result<AttackReport> {
    let (found, work) = trial_division_counted(n, bound)?;
    let recovered = found.map(|(p, _)| factor_pair(n, p));
    Ok(AttackReport::new("trial-division", recovered, work))
}

/// `gcd(a - b, n)` when `a^2 ≡ b^2 (mod n)` and the gcd is a proper factor.
pub fn congruence_of_squares_factor(n: &Natural, a: &Natural, b: &Natural) -> Result<Option<Natural>> {
    if *n < nat(2) {
        return invalid("modulus must be at least 2");
    }
    if (a * a) % n != (b * b) % n {
        return invalid("a^2 and b^2 are not congruent modulo n");
    }
    let diff = if a >= b { a - b } else { b - a };
    let g = diff.gcd(n);
    Ok((!g.is_one() && g != *n).then_some(g))
}

/// Pollard's p−1 method with base 2: `a ← a^j mod n` for `j = 2..=bound`,
/// taking `gcd(a − 1, n)` every 64 steps. If a checkpoint reports `n` itself
/// the block is replayed one step at a time.
fn pollard_pm1_counted(n: &Natural, bound: u64) -> Result<(Option<Natural>, u64)> {
    if *n < nat(4) {
        return invalid("Pollard p-1 needs a composite n >= 4");
    }
    let gcd_minus_one = |a: &Natural| ((a + n - 1u32) % n).gcd(n);
    let mut a = nat(2) % n;
    let mut checkpoint = (a.clone(), 2u64);
    let mut j = 2u64;
    while j <= bound {
        a = mod_pow(&a, &nat(j), n);
        if (j - 1).is_multiple_of(64) || j == bound {
            let g = gcd_minus_one(&a);
            if g.is_one() {
                checkpoint = (a.clone(), j + 1);
            } else if g != *n {
                return Ok((Some(g), j));
            } else {
                let (mut b, start) = checkpoint.clone();
                for i in start..=j {
                    b = mod_pow(&b, &nat(i), n);
                    let g = gcd_minus_one(&b);
                    if g == *n {
                        return Ok((None, i));
                    }
                    if !g.is_one() {
                        return Ok((Some(g), i));
                    }
                }
                unreachable!("replay reaches the checkpoint that reported n");
            }
        }
        j += 1;
    }
    Ok((None, bound.saturating_sub(1)))
}

pub fn pollard_pm1(n: &Natural, bound: u64) -> Result<Option<Natural>> {
    Ok(pollard_pm1_counted(n, bound)?.0)
}

pub fn pollard_pm1_report(n: &Natural, bound: u64) -> Result<AttackReport> {
    let (found, work) = pollard_pm1_counted(n, bound)?;
    let recovered = found.map(|p| factor_pair(n, p));
    Ok(AttackReport::new("pollard-p-1", recovered, work))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub partial_quotients: Vec<Natural>,
    /// `(numerator, denominator)` of every truncation.
    pub convergents: Vec<(Natural, Natural)>,
}

pub fn continued_fraction(num: &Natural, den: &Natural) -> Result<ContinuedFraction> {
    if den.is_zero() {
        return invalid("continued fraction of x/0");
    }
    let (mut a, mut b) = (num.clone(), den.clone());
    let mut quotients = Vec::new();
    let mut convergents = Vec::new();
    // h_{i} = q_i h_{i-1} + h_{i-2}, likewise k
    let (mut h_prev, mut h) = (Natural::zero(), Natural::one());
    let (mut k_prev, mut k) = (Natural::one(), Natural::zero());
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b);
        let h_next = &q * &h + &h_prev;
        let k_next = &q * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        convergents.push((h.clone(), k.clone()));
        quotients.push(q);
        a = std::mem::replace(&mut b, r);
    }
    Ok(ContinuedFraction {
        partial_quotients: quotients,
        convergents,
    })
}

/// What Wiener's attack learns: the private exponent, plus the prime
/// factors when they can be rebuilt from the convergent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WienerRecovery {
    pub d: Natural,
    pub factors: Option<(Natural, Natural)>,
}

impl WienerRecovery {
    pub fn private_key(&self, pk: &RsaPublicKey) -> Option<RsaPrivateKey> {
        let (p, q) = self.factors.clone()?;
        Some(RsaPrivateKey {
            n: pk.n.clone(),
            d: self.d.clone(),
            p,
            q,
        })
    }
}

/// `p, q` from `n` and `φ(n)`: roots of `x^2 − (n − φ + 1) x + n`.
fn factors_from_phi(n: &Natural, phi: &Natural) -> Option<(Natural, Natural)> {
    let s = (n + 1u32).checked_sub(phi)?;
    let disc = (&s * &s).checked_sub(&(n * 4u32))?;
    let (r, exact) = integer_nth_root(&disc, 2).ok()?;
    if !exact || (&s + &r).is_odd() {
        return None;
    }
    let p = (&s + &r) / 2u32;
    let q = (&s - &r) / 2u32;
    (&p * &q == *n && !q.is_one()).then_some((p, q))
}

fn wiener_counted(pk: &RsaPublicKey) -> (Option<WienerRecovery>, u64) {
    let Ok(cf) = continued_fraction(&pk.e, &pk.n) else {
        return (None, 0);
    };
    let probe = nat(2) % &pk.n;
    let encrypted = mod_pow(&probe, &pk.e, &pk.n);
    for (i, (k, d)) in cf.convergents.iter().enumerate() {
        if d.is_zero() || mod_pow(&encrypted, d, &pk.n) != probe {
            continue;
        }
        let factors = if k.is_zero() {
            None
        } else {
            let ed1 = &pk.e * d - 1u32;
            ed1.is_multiple_of(k).then(|| ed1 / k).and_then(|phi| factors_from_phi(&pk.n, &phi))
        };
        return (
            Some(WienerRecovery {
                d: d.clone(),
                factors,
            }),
            i as u64 + 1,
        );
    }
    (None, cf.convergents.len() as u64)
}

/// Scans the convergents `k/d` of `e/n` and accepts the first `d` with
/// `(2^e)^d ≡ 2 (mod n)`.
pub fn wiener_attack(pk: &RsaPublicKey) -> Option<WienerRecovery> {
    wiener_counted(pk).0
}

pub fn wiener_report(pk: &RsaPublicKey) -> AttackReport {
    let (found, work) = wiener_counted(pk);
    let recovered = found.map(|w| Recovered::PrivateExponent { d: w.d });
    AttackReport::new("wiener", recovered, work)
}

fn check_pairwise_coprime(moduli: &[Natural]) -> Result<()> {
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            if !moduli[i].gcd(&moduli[j]).is_one() {
                return invalid(format!("moduli {i} and {j} share a factor"));
            }
        }
    }
    Ok(())
}

/// Recovers `m` from three encryptions under `e = 3`: combine to
/// `m^3 mod n1 n2 n3` and take the integer cube root.
pub fn broadcast_attack_e3(ciphertexts: &[Natural; 3], moduli: &[Natural; 3]) -> Result<Option<Natural>> {
    check_pairwise_coprime(moduli)?;
    let cube = crt_solve(ciphertexts, moduli)?;
    let (root, exact) = integer_nth_root(&cube, 3)?;
    Ok(exact.then_some(root))
}

pub fn broadcast_report(ciphertexts: &[Natural; 3], moduli: &[Natural; 3]) -> Result<AttackReport> {
    let m = broadcast_attack_e3(ciphertexts, moduli)?
        .filter(|m| ciphertexts.iter().zip(moduli).all(|(c, n)| mod_pow(m, &nat(3), n) == *c));
    Ok(AttackReport::new("broadcast-e3", m.map(|m| Recovered::Message { m }), 1))
}

fn signed_pow(x: &Natural, e: &Integer, n: &Natural) -> Result<Natural> {
    if e.is_negative() {
        let inv = mod_inverse(x, n)?
            .ok_or_else(|| Error::InvalidArgument("negative exponent on a non-invertible value".into()))?;
        Ok(mod_pow(&inv, e.magnitude(), n))
    } else {
        Ok(mod_pow(x, e.magnitude(), n))
    }
}

/// Forges `(m, sig)` with `m = r^e · Π m_i^{e_i}` and `sig = r · Π sig_i^{e_i}`
/// (all mod n) from known valid pairs. Negative exponents use inverses.
pub fn forge_signature(
    pk: &RsaPublicKey,
    known: &[(Natural, Natural)],
    exponents: &[Integer],
    r: &Natural,
) -> Result<(Natural, Natural)> {
    if known.len() != exponents.len() {
        return invalid("one exponent per known pair is required");
    }
    if !r.gcd(&pk.n).is_one() {
        return invalid("r must be coprime to n");
    }
    for (i, (m, s)) in known.iter().enumerate() {
        if !crate::rsa::rsa_verify(pk, m, s) {
            return invalid(format!("known pair {i} does not verify"));
        }
    }
    let mut m = mod_pow(r, &pk.e, &pk.n);
    let mut sig = r % &pk.n;
    for ((mi, si), ei) in known.iter().zip(exponents) {
        m = m * signed_pow(mi, ei, &pk.n)? % &pk.n;
        sig = sig * signed_pow(si, ei, &pk.n)? % &pk.n;
    }
    Ok((m, sig))
}

pub fn forgery_report(
    pk: &RsaPublicKey,
    known: &[(Natural, Natural)],
    exponents: &[Integer],
    r: &Natural,
) -> Result<AttackReport> {
    let (m, sig) = forge_signature(pk, known, exponents, r)?;
    let recovered = crate::rsa::rsa_verify(pk, &m, &sig).then_some(Recovered::Signature { m, sig });
    Ok(AttackReport::new("forgery", recovered, known.len() as u64))
}

/// Decrypts `c` through an oracle that only ever sees the blinded value
/// `c · r^e mod n`. Without `r` a random unit is drawn.
pub fn blinding_attack(
    pk: &RsaPublicKey,
    mut decrypt_oracle: impl FnMut(&Natural) -> Natural,
    c: &Natural,
    r: Option<&Natural>,
    rng: &mut WorkbenchRng,
) -> Result<Natural> {
    if *c >= pk.n {
        return invalid("ciphertext must be smaller than n");
    }
    let r = match r {
        Some(r) => r.clone(),
        None => rng.unit_mod(&pk.n),
    };
    let r_inv = mod_inverse(&r, &pk.n)?.ok_or_else(|| Error::InvalidArgument("r is not invertible modulo n".into()))?;
    let blinded = c * mod_pow(&r, &pk.e, &pk.n) % &pk.n;
    let answer = decrypt_oracle(&blinded);
    Ok(answer * r_inv % &pk.n)
}

fn superencryption_counted(pk: &RsaPublicKey, c: &Natural, max_iters: u64) -> Result<(Option<(u64, Natural)>, u64)> {
    if *c >= pk.n {
        return invalid("ciphertext must be smaller than n");
    }
    let mut prev = c.clone();
    for k in 1..=max_iters {
        let next = mod_pow(&prev, &pk.e, &pk.n);
        if next == *c {
            return Ok((Some((k, prev)), k));
        }
        prev = next;
    }
    Ok((None, max_iters))
}

/// Smallest `k >= 1` with `E^k(c) = c`, if at most `max_iters`.
pub fn superencryption_cycle(pk: &RsaPublicKey, c: &Natural, max_iters: u64) -> Result<Option<u64>> {
    Ok(superencryption_counted(pk, c, max_iters)?.0.map(|(k, _)| k))
}

/// `E^{k−1}(c)`, the plaintext whose encryption is `c`.
pub fn superencryption_plaintext(pk: &RsaPublicKey, c: &Natural, max_iters: u64) -> Result<Option<Natural>> {
    Ok(superencryption_counted(pk, c, max_iters)?.0.map(|(_, m)| m))
}

pub fn superencryption_report(pk: &RsaPublicKey, c: &Natural, max_iters: u64) -> Result<AttackReport> {
    let (found, work) = superencryption_counted(pk, c, max_iters)?;
    let recovered = found
        .filter(|(_, m)| mod_pow(m, &pk.e, &pk.n) == *c)
        .map(|(length, plaintext)| Recovered::CycleLength { length, plaintext });
    Ok(AttackReport::new("superencryption", recovered, work))
}

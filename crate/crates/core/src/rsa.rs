//! Raw RSA: key generation, encryption, decryption and signatures.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::hexnat;
use crate::numtheory::{bit_len, crt_solve, gen_prime, mod_exp_counted, mod_inverse, mod_pow, nat, Natural};
use crate::rng::{Coins, WorkbenchRng};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaPublicKey {
    pub n: Natural,
    pub e: Natural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaPrivateKey {
    pub n: Natural,
    pub d: Natural,
    pub p: Natural,
    pub q: Natural,
}

const MAX_KEYGEN_ATTEMPTS: usize = 10_000;

impl RsaPrivateKey {
    /// Builds the key pair for the given distinct primes and public exponent.
    /// Primality of `p` and `q` is the caller's responsibility.
    pub fn from_primes(p: &Natural, q: &Natural, e: &Natural) -> Result<(RsaPublicKey, RsaPrivateKey)> {
        if p == q {
            return invalid("p and q must be distinct");
        }
        if *p < nat(2) || *q < nat(2) {
            return invalid("p and q must be primes");
        }
        let phi = (p - 1u32) * (q - 1u32);
        if *e <= Natural::one() || *e >= phi {
            return invalid("e must satisfy 1 < e < phi(n)");
        }
        let d = mod_inverse(e, &phi)?
            .ok_or_else(|| Error::InvalidArgument("gcd(e, phi(n)) != 1".into()))?;
        let n = p * q;
        Ok((
            RsaPublicKey { n: n.clone(), e: e.clone() },
            RsaPrivateKey {
                n,
                d,
                p: p.clone(),
                q: q.clone(),
            },
        ))
    }

    pub fn phi(&self) -> Natural {
        (&self.p - 1u32) * (&self.q - 1u32)
    }
}

/// Generates an RSA key pair whose modulus has `bits` bits. Without `e` the
/// smallest odd `e >= 3` coprime to `phi(n)` is used; with `e` the primes are
/// redrawn until `gcd(e, phi(n)) = 1`.
pub fn rsa_keygen(bits: u64, e: Option<&Natural>, rng: &mut WorkbenchRng) -> Result<(RsaPublicKey, RsaPrivateKey)> {
    if bits < 8 {
        return invalid("RSA modulus needs at least 8 bits");
    }
    if let Some(e) = e {
        if *e <= Natural::one() || e.is_even() {
            return invalid("public exponent must be odd and greater than 1");
        }
    }
    let p_bits = bits - bits / 2;
    let q_bits = bits / 2;
    for _ in 0..MAX_KEYGEN_ATTEMPTS {
        let p = gen_prime(p_bits, rng)?;
        let q = gen_prime(q_bits, rng)?;
        if p == q || bit_len(&(&p * &q)) != bits {
            continue;
        }
        let phi = (&p - 1u32) * (&q - 1u32);
        let e = match e {
            Some(e) => e.clone(),
            None => {
                let mut e = nat(3);
                while !e.gcd(&phi).is_one() {
                    e += 2u32;
                }
                e
            }
        };
        if e >= phi || !e.gcd(&phi).is_one() {
            continue;
        }
        return RsaPrivateKey::from_primes(&p, &q, &e);
    }
    Err(Error::ResourceLimit(format!(
        "no {bits}-bit key found in {MAX_KEYGEN_ATTEMPTS} attempts"
    )))
}

fn check_below(x: &Natural, n: &Natural, what: &str) -> Result<()> {
    if x >= n {
        return invalid(format!("{what} must be smaller than the modulus"));
    }
    Ok(())
}

pub fn rsa_encrypt(pk: &RsaPublicKey, m: &Natural) -> Result<Natural> {
    check_below(m, &pk.n, "message")?;
    Ok(mod_exp_counted(m, &pk.e, &pk.n)?.0)
}

pub fn rsa_decrypt(sk: &RsaPrivateKey, c: &Natural) -> Result<Natural> {
    check_below(c, &sk.n, "ciphertext")?;
    Ok(mod_exp_counted(c, &sk.d, &sk.n)?.0)
}

/// Decryption through the prime factors: exponentiate modulo `p` and `q`
/// separately, then recombine.
pub fn rsa_decrypt_crt(sk: &RsaPrivateKey, c: &Natural) -> Result<Natural> {
    check_below(c, &sk.n, "ciphertext")?;
    let mp = mod_pow(&(c % &sk.p), &(&sk.d % (&sk.p - 1u32)), &sk.p);
    let mq = mod_pow(&(c % &sk.q), &(&sk.d % (&sk.q - 1u32)), &sk.q);
    crt_solve(&[mp, mq], &[sk.p.clone(), sk.q.clone()])
}

pub fn rsa_sign(sk: &RsaPrivateKey, m: &Natural) -> Result<Natural> {
    check_below(m, &sk.n, "message")?;
    Ok(mod_pow(m, &sk.d, &sk.n))
}

/// `s^e ≡ m (mod n)`. Out-of-range inputs never verify.
pub fn rsa_verify(pk: &RsaPublicKey, m: &Natural, s: &Natural) -> bool {
    if m >= &pk.n || s >= &pk.n {
        return false;
    }
    mod_pow(s, &pk.e, &pk.n) == *m
}

fn parse_fields<'a>(s: &'a str, tag: &str, names: &[&str]) -> Result<Vec<Natural>> {
    let mut parts = s.split_whitespace();
    if parts.next() != Some(tag) {
        return invalid(format!("expected a line starting with {tag:?}"));
    }
    let fields: Vec<(&'a str, &'a str)> = parts
        .map(|p| p.split_once('=').ok_or_else(|| Error::InvalidArgument(format!("malformed field {p:?}"))))
        .collect::<Result<_>>()?;
    names
        .iter()
        .map(|name| {
            let value = fields
                .iter()
                .find(|(k, _)| k == name)
                .ok_or_else(|| Error::InvalidArgument(format!("missing field {name}")))?
                .1;
            hexnat::parse(value)
        })
        .collect()
}

impl fmt::Display for RsaPublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rsa-pub n={} e={}", hexnat::to_hex(&self.n), hexnat::to_hex(&self.e))
    }
}

impl FromStr for RsaPublicKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_fields(s, "rsa-pub", &["n", "e"])?;
        Ok(Self {
            n: v[0].clone(),
            e: v[1].clone(),
        })
    }
}

impl fmt::Display for RsaPrivateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rsa-priv n={} d={} p={} q={}",
            hexnat::to_hex(&self.n),
            hexnat::to_hex(&self.d),
            hexnat::to_hex(&self.p),
            hexnat::to_hex(&self.q)
        )
    }
}

impl FromStr for RsaPrivateKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_fields(s, "rsa-priv", &["n", "d", "p", "q"])?;
        if &v[2] * &v[3] != v[0] {
            return invalid("n != p * q");
        }
        Ok(Self {
            n: v[0].clone(),
            d: v[1].clone(),
            p: v[2].clone(),
            q: v[3].clone(),
        })
    }
}

/// Bytes per block for modulus `n`: `floor((bits(n) - 1) / 8)`.
pub fn block_bytes(n: &Natural) -> usize {
    (bit_len(n).saturating_sub(1) / 8) as usize
}

/// Splits `data` into big-endian base-256 blocks that are all below `n`.
/// With `padding`, each block starts with one random byte followed by
/// `block_bytes(n) - 1` data bytes.
pub fn encode_blocks(n: &Natural, data: &[u8], padding: Option<&mut WorkbenchRng>) -> Result<Vec<Natural>> {
    let k = block_bytes(n);
    let payload = k.saturating_sub(padding.is_some() as usize);
    if payload == 0 {
        return invalid("modulus too small to carry a block");
    }
    let mut rng = padding;
    Ok(data
        .chunks(payload)
        .map(|chunk| {
            let mut block = Vec::with_capacity(k);
            if let Some(rng) = rng.as_deref_mut() {
                block.push(rng.below(256) as u8);
            }
            block.extend_from_slice(chunk);
            Natural::from_bytes_be(&block)
        })
        .collect())
}

/// Inverse of [`encode_blocks`]; `len` is the total number of data bytes.
pub fn decode_blocks(n: &Natural, blocks: &[Natural], len: usize, padded: bool) -> Result<Vec<u8>> {
    let k = block_bytes(n);
    let payload = k.saturating_sub(padded as usize);
    if payload == 0 {
        return invalid("modulus too small to carry a block");
    }
    if blocks.len() != len.div_ceil(payload) {
        return invalid("block count does not match the message length");
    }
    let mut out = Vec::with_capacity(len);
    for (i, block) in blocks.iter().enumerate() {
        check_below(block, n, "block")?;
        let want = payload.min(len - i * payload) + padded as usize;
        let bytes = if block.is_zero() { Vec::new() } else { block.to_bytes_be() };
        if bytes.len() > want {
            return invalid("block is wider than its chunk");
        }
        let mut full = vec![0u8; want - bytes.len()];
        full.extend(bytes);
        out.extend_from_slice(&full[padded as usize..]);
    }
    Ok(out)
}

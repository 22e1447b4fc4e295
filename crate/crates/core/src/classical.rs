//! Classical ciphers over the alphabet `A..Z` (identified with `Z_26`) and an
//! exact analyzer for finite cryptosystems.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Exact rational probability.
pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `"num/den"` rendering used in JSON output.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad denominator in {s:?}")))?;
    if !den.is_positive() {
        return invalid(format!("denominator must be positive in {s:?}"));
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Encrypt,
    Decrypt,
}

/// Text over `A..Z`, stored as residues `0..=25` (A = 0, ..., Z = 25).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterString(Vec<u8>);

impl LetterString {
    pub fn from_residues(residues: Vec<u8>) -> Result<Self> {
        if residues.iter().any(|&r| r >= 26) {
            return invalid("letter residues must lie in [0, 25]");
        }
        Ok(Self(residues))
    }

    pub fn residues(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for LetterString {
    type Err = Error;

    /// Accepts only the uppercase letters `A..Z`; spaces and punctuation are
    /// rejected.
    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .map(|b| match b {
                b'A'..=b'Z' => Ok(b - b'A'),
                _ => invalid(format!("{:?} is not a letter A-Z", b as char)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for LetterString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&r| (b'A' + r) as char).collect();
        f.write_str(&s)
    }
}

fn shift(letter: u8, by: u8, direction: Direction) -> u8 {
    match direction {
        Direction::Encrypt => (letter + by) % 26,
        Direction::Decrypt => (letter + 26 - by) % 26,
    }
}

pub fn caesar(key: u8, text: &LetterString, direction: Direction) -> Result<LetterString> {
    if key >= 26 {
        return invalid("Caesar key must lie in [0, 25]");
    }
    Ok(LetterString(text.0.iter().map(|&p| shift(p, key, direction)).collect()))
}

/// Position-wise Caesar shift by the key letter above each text letter, the
/// key being repeated cyclically.
pub fn vigenere(key: &LetterString, text: &LetterString, direction: Direction) -> Result<LetterString> {
    if key.is_empty() {
        return invalid("Vigenère key must be nonempty");
    }
    Ok(LetterString(
        text.0
            .iter()
            .zip(key.0.iter().cycle())
            .map(|(&p, &k)| shift(p, k, direction))
            .collect(),
    ))
}

/// Largest Hill block size accepted; determinants are expanded by cofactors.
pub const MAX_HILL_DIMENSION: usize = 8;

/// Square matrix over `Z_26` that is invertible modulo 26.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HillKey {
    matrix: Vec<Vec<u8>>,
    inverse: Vec<Vec<u8>>,
}

fn det_mod26(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0].rem_euclid(26);
    }
    let mut det = 0;
    for col in 0..n {
        if m[0][col] == 0 {
            continue;
        }
        let minor = minor(m, 0, col);
        let sign = if col % 2 == 0 { 1 } else { -1 };
        det = (det + sign * m[0][col] * det_mod26(&minor)).rem_euclid(26);
    }
    det
}

fn minor(m: &[Vec<i64>], row: usize, col: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|&(r, _)| r != row)
        .map(|(_, line)| {
            line.iter()
                .enumerate()
                .filter(|&(c, _)| c != col)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

fn inverse_mod26(v: i64) -> Option<i64> {
    (1..26).find(|&x| (v * x).rem_euclid(26) == 1)
}

impl HillKey {
    /// Validates shape and invertibility (`gcd(det, 26) = 1`) and precomputes
    /// `K^{-1} = det^{-1} · adj(K) mod 26`.
    pub fn new(matrix: Vec<Vec<u8>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || n > MAX_HILL_DIMENSION {
            return invalid(format!("Hill dimension must lie in [1, {MAX_HILL_DIMENSION}]"));
        }
        if matrix.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= 26)) {
            return invalid("Hill key must be a square matrix over Z_26");
        }
        let m: Vec<Vec<i64>> = matrix
            .iter()
            .map(|row| row.iter().map(|&v| v as i64).collect())
            .collect();
        let det = det_mod26(&m);
        let det_inv = inverse_mod26(det)
            .ok_or_else(|| Error::InvalidArgument(format!("determinant {det} is not invertible mod 26")))?;
        let inverse = if n == 1 {
            vec![vec![det_inv as u8]]
        } else {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            // adj(K)[i][j] = cofactor(j, i)
                            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                            let cof = sign * det_mod26(&minor(&m, j, i));
                            (cof * det_inv).rem_euclid(26) as u8
                        })
                        .collect()
                })
                .collect()
        };
        Ok(Self { matrix, inverse })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<u8>] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[Vec<u8>] {
        &self.inverse
    }
}

/// Block-wise `K · p mod 26` (or `K^{-1} · c` to decrypt). Texts whose length
/// is not a multiple of the block size are rejected.
pub fn hill(key: &HillKey, text: &LetterString, direction: Direction) -> Result<LetterString> {
    let n = key.dimension();
    if !text.len().is_multiple_of(n) {
        return invalid(format!("text length {} is not a multiple of {n}", text.len()));
    }
    let matrix = match direction {
        Direction::Encrypt => &key.matrix,
        Direction::Decrypt => &key.inverse,
    };
    let mut out = Vec::with_capacity(text.len());
    for block in text.0.chunks(n) {
        for row in matrix {
            let v: u32 = row.iter().zip(block).map(|(&a, &b)| a as u32 * b as u32).sum();
            out.push((v % 26) as u8);
        }
    }
    Ok(LetterString(out))
}

/// Sequence of bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits(pub Vec<bool>);

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => invalid(format!("{c:?} is not a bit")),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

/// Bitwise XOR of key and data.
pub fn one_time_pad(key: &Bits, data: &Bits) -> Result<Bits> {
    if key.0.len() != data.0.len() {
        return invalid("one-time pad key and data must have equal length");
    }
    Ok(Bits(key.0.iter().zip(&data.0).map(|(k, d)| k ^ d).collect()))
}

/// Relative frequency of every letter occurring in `text`.
pub fn frequency_count(text: &LetterString) -> Result<BTreeMap<char, Rational>> {
    if text.is_empty() {
        return invalid("frequency count of empty text");
    }
    let mut counts = [0i64; 26];
    for &r in &text.0 {
        counts[r as usize] += 1;
    }
    let total = text.len() as i64;
    Ok(counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(i, &c)| ((b'A' + i as u8) as char, ratio(c, total)))
        .collect())
}

/// A finite cryptosystem given extensionally: symbol sets, distributions and
/// the full encryption table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCryptosystem {
    plaintexts: Vec<String>,
    ciphertexts: Vec<String>,
    keys: Vec<String>,
    /// `enc[k][p]` is the ciphertext index.
    enc: Vec<Vec<usize>>,
    plaintext_dist: Vec<Rational>,
    key_dist: Vec<Rational>,
}

/// Cap on `|P| · |K|` for the analyzer.
pub const MAX_TABLE_CELLS: usize = 10_000;

fn check_distribution(name: &str, dist: &[Rational]) -> Result<()> {
    if dist.iter().any(|p| p.is_negative()) {
        return invalid(format!("{name} distribution has a negative entry"));
    }
    let sum: Rational = dist.iter().cloned().sum();
    if !sum.is_one() {
        return invalid(format!("{name} distribution sums to {sum}, not 1"));
    }
    Ok(())
}

fn check_unique(name: &str, symbols: &[String]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for s in symbols {
        if !seen.insert(s) {
            return invalid(format!("duplicate {name} symbol {s:?}"));
        }
    }
    Ok(())
}

impl FiniteCryptosystem {
    pub fn new(
        plaintexts: Vec<String>,
        ciphertexts: Vec<String>,
        keys: Vec<String>,
        enc: Vec<Vec<usize>>,
        plaintext_dist: Vec<Rational>,
        key_dist: Vec<Rational>,
    ) -> Result<Self> {
        if plaintexts.is_empty() || ciphertexts.is_empty() || keys.is_empty() {
            return invalid("plaintext, ciphertext and key sets must be nonempty");
        }
        if plaintexts.len() * keys.len() > MAX_TABLE_CELLS {
            return Err(Error::ResourceLimit(format!(
                "encryption table exceeds {MAX_TABLE_CELLS} cells"
            )));
        }
        check_unique("plaintext", &plaintexts)?;
        check_unique("ciphertext", &ciphertexts)?;
        check_unique("key", &keys)?;
        if plaintext_dist.len() != plaintexts.len() || key_dist.len() != keys.len() {
            return invalid("distribution lengths must match their symbol sets");
        }
        check_distribution("plaintext", &plaintext_dist)?;
        check_distribution("key", &key_dist)?;
        if enc.len() != keys.len() || enc.iter().any(|row| row.len() != plaintexts.len()) {
            return invalid("encryption table must have one cell per (key, plaintext)");
        }
        for (k, row) in enc.iter().enumerate() {
            let mut seen = vec![false; ciphertexts.len()];
            for &c in row {
                if c >= ciphertexts.len() {
                    return invalid("encryption table refers to an unknown ciphertext");
                }
                if std::mem::replace(&mut seen[c], true) {
                    return invalid(format!("encryption under key {:?} is not injective", keys[k]));
                }
            }
        }
        Ok(Self {
            plaintexts,
            ciphertexts,
            keys,
            enc,
            plaintext_dist,
            key_dist,
        })
    }

    pub fn plaintexts(&self) -> &[String] {
        &self.plaintexts
    }

    pub fn ciphertexts(&self) -> &[String] {
        &self.ciphertexts
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn plaintext_prob(&self, p: usize) -> &Rational {
        &self.plaintext_dist[p]
    }

    pub fn key_prob(&self, k: usize) -> &Rational {
        &self.key_dist[k]
    }

    pub fn encrypt(&self, k: usize, p: usize) -> usize {
        self.enc[k][p]
    }

    fn index(symbols: &[String], s: &str, what: &str) -> Result<usize> {
        symbols
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown {what} {s:?}")))
    }

    pub fn plaintext_index(&self, s: &str) -> Result<usize> {
        Self::index(&self.plaintexts, s, "plaintext")
    }

    pub fn ciphertext_index(&self, s: &str) -> Result<usize> {
        Self::index(&self.ciphertexts, s, "ciphertext")
    }

    /// `Pr(p ∩ c)`: total mass of keys taking `p` to `c`.
    pub fn joint(&self, p: usize, c: usize) -> Rational {
        let key_mass: Rational = (0..self.keys.len())
            .filter(|&k| self.enc[k][p] == c)
            .map(|k| self.key_dist[k].clone())
            .sum();
        &self.plaintext_dist[p] * key_mass
    }

    /// `Pr(c)` by enumeration of all (plaintext, key) pairs.
    pub fn ciphertext_prob(&self, c: usize) -> Rational {
        (0..self.plaintexts.len()).map(|p| self.joint(p, c)).sum()
    }

    /// `Pr(c | p)`.
    pub fn likelihood(&self, c: usize, p: usize) -> Rational {
        (0..self.keys.len())
            .filter(|&k| self.enc[k][p] == c)
            .map(|k| self.key_dist[k].clone())
            .sum()
    }

    /// `Pr(p | c) = Pr(p ∩ c) / Pr(c)`.
    pub fn posterior(&self, p: usize, c: usize) -> Result<Rational> {
        let pc = self.ciphertext_prob(c);
        if pc.is_zero() {
            return invalid(format!("ciphertext {:?} has probability 0", self.ciphertexts[c]));
        }
        Ok(self.joint(p, c) / pc)
    }

    /// `Pr(p | c)` through Bayes: `Pr(p) · Pr(c | p) / Pr(c)`.
    pub fn posterior_bayes(&self, p: usize, c: usize) -> Result<Rational> {
        let pc = self.ciphertext_prob(c);
        if pc.is_zero() {
            return invalid(format!("ciphertext {:?} has probability 0", self.ciphertexts[c]));
        }
        Ok(&self.plaintext_dist[p] * self.likelihood(c, p) / pc)
    }

    /// Checks `Pr(p | c) = Pr(p)` for every pair with `Pr(c) > 0`.
    pub fn is_perfectly_secret(&self) -> SecrecyVerdict {
        for c in 0..self.ciphertexts.len() {
            let pc = self.ciphertext_prob(c);
            if pc.is_zero() {
                continue;
            }
            for p in 0..self.plaintexts.len() {
                let post = self.joint(p, c) / &pc;
                if post != self.plaintext_dist[p] {
                    return SecrecyVerdict {
                        perfectly_secret: false,
                        witness: Some((self.plaintexts[p].clone(), self.ciphertexts[c].clone())),
                    };
                }
            }
        }
        SecrecyVerdict {
            perfectly_secret: true,
            witness: None,
        }
    }

    /// Evaluates both conditions of Shannon's characterization. Requires
    /// `|C| = |K|` and `Pr(p) > 0` for every plaintext.
    pub fn shannon_conditions(&self) -> Result<ShannonConditions> {
        if self.ciphertexts.len() != self.keys.len() {
            return invalid("Shannon's conditions need |C| = |K|");
        }
        if self.plaintext_dist.iter().any(|p| !p.is_positive()) {
            return invalid("Shannon's conditions need Pr(p) > 0 for every plaintext");
        }
        let uniform = ratio(1, self.keys.len() as i64);
        let uniform_keys = self.key_dist.iter().all(|k| *k == uniform);
        let unique_key_per_pair = (0..self.plaintexts.len()).all(|p| {
            (0..self.ciphertexts.len())
                .all(|c| (0..self.keys.len()).filter(|&k| self.enc[k][p] == c).count() == 1)
        });
        Ok(ShannonConditions {
            uniform_keys,
            unique_key_per_pair,
        })
    }

    /// Parses the table format:
    ///
    /// ```text
    /// P: 0 1
    /// C: a b
    /// K: A B
    /// dist P 0=1/4 1=3/4
    /// dist K A=1/4 B=3/4
    /// enc A 0 a
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut plaintexts = None;
        let mut ciphertexts = None;
        let mut keys = None;
        let mut pdist: Vec<(usize, String, Rational)> = Vec::new();
        let mut kdist: Vec<(usize, String, Rational)> = Vec::new();
        let mut cells: Vec<(usize, String, String, String)> = Vec::new();
        let parse_err = |line: usize, message: String| Error::Parse { line, message };

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let symbols = |rest: &str| rest.split_whitespace().map(str::to_owned).collect::<Vec<_>>();
            if let Some(rest) = line.strip_prefix("P:") {
                plaintexts = Some(symbols(rest));
            } else if let Some(rest) = line.strip_prefix("C:") {
                ciphertexts = Some(symbols(rest));
            } else if let Some(rest) = line.strip_prefix("K:") {
                keys = Some(symbols(rest));
            } else if let Some(rest) = line.strip_prefix("dist ") {
                let mut parts = rest.split_whitespace();
                let target = match parts.next() {
                    Some("P") => &mut pdist,
                    Some("K") => &mut kdist,
                    other => return Err(parse_err(line_no, format!("unknown distribution {other:?}"))),
                };
                for entry in parts {
                    let (sym, prob) = entry
                        .split_once('=')
                        .ok_or_else(|| parse_err(line_no, format!("expected symbol=num/den, got {entry:?}")))?;
                    let prob = parse_rational(prob).map_err(|e| parse_err(line_no, e.to_string()))?;
                    target.push((line_no, sym.to_owned(), prob));
                }
            } else if let Some(rest) = line.strip_prefix("enc ") {
                let parts: Vec<_> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(parse_err(line_no, "expected `enc <key> <plaintext> <ciphertext>`".into()));
                }
                cells.push((line_no, parts[0].into(), parts[1].into(), parts[2].into()));
            } else {
                return Err(parse_err(line_no, format!("unrecognized line {line:?}")));
            }
        }

        let missing = |what: &str| Error::Parse {
            line: 0,
            message: format!("missing `{what}` header"),
        };
        let plaintexts = plaintexts.ok_or_else(|| missing("P:"))?;
        let ciphertexts = ciphertexts.ok_or_else(|| missing("C:"))?;
        let keys = keys.ok_or_else(|| missing("K:"))?;

        let lookup = |symbols: &[String], s: &str, line: usize, what: &str| {
            symbols
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| parse_err(line, format!("unknown {what} {s:?}")))
        };
        let mut plaintext_dist = vec![Rational::zero(); plaintexts.len()];
        for (line, sym, prob) in pdist {
            plaintext_dist[lookup(&plaintexts, &sym, line, "plaintext")?] = prob;
        }
        let mut key_dist = vec![Rational::zero(); keys.len()];
        for (line, sym, prob) in kdist {
            key_dist[lookup(&keys, &sym, line, "key")?] = prob;
        }
        let mut enc = vec![vec![usize::MAX; plaintexts.len()]; keys.len()];
        for (line, k, p, c) in cells {
            let (k, p, c) = (
                lookup(&keys, &k, line, "key")?,
                lookup(&plaintexts, &p, line, "plaintext")?,
                lookup(&ciphertexts, &c, line, "ciphertext")?,
            );
            enc[k][p] = c;
        }
        if enc.iter().flatten().any(|&c| c == usize::MAX) {
            return Err(Error::Parse {
                line: 0,
                message: "encryption table is incomplete".into(),
            });
        }
        Self::new(plaintexts, ciphertexts, keys, enc, plaintext_dist, key_dist)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out += &format!("P: {}\n", self.plaintexts.join(" "));
        out += &format!("C: {}\n", self.ciphertexts.join(" "));
        out += &format!("K: {}\n", self.keys.join(" "));
        let dist = |syms: &[String], probs: &[Rational]| {
            syms.iter()
                .zip(probs)
                .map(|(s, p)| format!("{s}={}", format_rational(p)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        out += &format!("dist P {}\n", dist(&self.plaintexts, &self.plaintext_dist));
        out += &format!("dist K {}\n", dist(&self.keys, &self.key_dist));
        for (k, row) in self.enc.iter().enumerate() {
            for (p, &c) in row.iter().enumerate() {
                out += &format!("enc {} {} {}\n", self.keys[k], self.plaintexts[p], self.ciphertexts[c]);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecrecyVerdict {
    pub perfectly_secret: bool,
    /// A `(plaintext, ciphertext)` pair with `Pr(p | c) != Pr(p)`.
    pub witness: Option<(String, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShannonConditions {
    pub uniform_keys: bool,
    pub unique_key_per_pair: bool,
}

impl ShannonConditions {
    pub fn both(&self) -> bool {
        self.uniform_keys && self.unique_key_per_pair
    }
}

/// Ready-made systems used by the analyzer demos and tests.
pub mod systems {
    use super::*;

    fn strings(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    /// Two plaintexts `0, 1` with `Pr = 1/4, 3/4`, keys `A, B` with
    /// `Pr = 1/4, 3/4`, and `E_A(0)=a, E_A(1)=b, E_B(0)=b, E_B(1)=a`.
    pub fn buchmann() -> FiniteCryptosystem {
        FiniteCryptosystem::new(
            strings(&["0", "1"]),
            strings(&["a", "b"]),
            strings(&["A", "B"]),
            vec![vec![0, 1], vec![1, 0]],
            vec![ratio(1, 4), ratio(3, 4)],
            vec![ratio(1, 4), ratio(3, 4)],
        )
        .expect("fixture is well formed")
    }

    fn bit_string(v: usize, bits: usize) -> String {
        (0..bits).rev().map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// One-time pad on `bits`-bit strings with uniform keys and the given
    /// plaintext distribution (uniform when `None`).
    pub fn one_time_pad(bits: usize, plaintext_dist: Option<Vec<Rational>>) -> Result<FiniteCryptosystem> {
        if bits == 0 || bits > 6 {
            return invalid("one-time pad system supports 1..=6 bits");
        }
        let size = 1usize << bits;
        let symbols: Vec<String> = (0..size).map(|v| bit_string(v, bits)).collect();
        let enc = (0..size).map(|k| (0..size).map(|p| p ^ k).collect()).collect();
        let uniform = vec![ratio(1, size as i64); size];
        FiniteCryptosystem::new(
            symbols.clone(),
            symbols.clone(),
            symbols,
            enc,
            plaintext_dist.unwrap_or_else(|| uniform.clone()),
            uniform,
        )
    }

    /// Shift cipher over `Z_m` with uniform keys and plaintexts.
    pub fn shift_cipher(m: usize) -> Result<FiniteCryptosystem> {
        if m == 0 || m > 100 {
            return invalid("shift cipher system supports 1..=100 symbols");
        }
        let symbols: Vec<String> = (0..m).map(|v| v.to_string()).collect();
        let enc = (0..m).map(|k| (0..m).map(|p| (p + k) % m).collect()).collect();
        let uniform = vec![ratio(1, m as i64); m];
        FiniteCryptosystem::new(symbols.clone(), symbols.clone(), symbols, enc, uniform.clone(), uniform)
    }
}

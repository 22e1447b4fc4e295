//! Arbitrary-precision modular arithmetic: extended Euclid, square-and-multiply
//! with operation counting, Miller–Rabin, prime generation, Euler's totient,
//! the Chinese remainder theorem and primitive roots.
//!
//! Big-integer storage and the schoolbook operations come from `num-bigint`;
//! every number-theoretic algorithm on top of it is written out here.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::WorkbenchRng;

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;
/// Signed arbitrary-precision integer; appears only in Euclid results.
pub type Integer = BigInt;

/// Witness count used when callers do not choose one.
pub const DEFAULT_MR_ROUNDS: u32 = 40;

pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}

/// `(g, x, y)` with `x·b0 + y·b1 = g = gcd(b0, b1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGcdResult {
    pub g: Natural,
    pub x: Integer,
    pub y: Integer,
}

/// One row of the tabular trace `(b_i, x_i, y_i, q_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidRow {
    pub b: Natural,
    pub x: Integer,
    pub y: Integer,
    /// `floor(b_{i-1} / b_i)`; absent on the first row and on the row where
    /// the loop stops.
    pub q: Option<Natural>,
}

/// Extended Euclid, returning every row of the iteration.
///
/// The loop runs while `b_i` does not divide `b_{i-1}`; the output is the row
/// on which it stops.
pub fn ext_gcd_trace(b0: &Natural, b1: &Natural) -> Result<Vec<EuclidRow>> {
    if b1.is_zero() {
        return invalid("ext_gcd requires b1 >= 1");
    }
    let mut rows = vec![
        EuclidRow {
            b: b0.clone(),
            x: Integer::one(),
            y: Integer::zero(),
            q: None,
        },
        EuclidRow {
            b: b1.clone(),
            x: Integer::zero(),
            y: Integer::one(),
            q: None,
        },
    ];
    loop {
        let i = rows.len() - 1;
        let (prev, cur) = (&rows[i - 1], &rows[i]);
        if (&prev.b % &cur.b).is_zero() {
            break;
        }
        let q = &prev.b / &cur.b;
        let qi = Integer::from(q.clone());
        let next = EuclidRow {
            b: &prev.b - &q * &cur.b,
            x: &prev.x - &qi * &cur.x,
            y: &prev.y - &qi * &cur.y,
            q: None,
        };
        rows[i].q = Some(q);
        rows.push(next);
    }
    Ok(rows)
}

pub fn ext_gcd(b0: &Natural, b1: &Natural) -> Result<ExtGcdResult> {
    let mut rows = ext_gcd_trace(b0, b1)?;
    let last = rows.pop().expect("trace has at least two rows");
    Ok(ExtGcdResult {
        g: last.b,
        x: last.x,
        y: last.y,
    })
}

/// Reduces a signed integer into `[0, m)`.
pub fn reduce_signed(v: &Integer, m: &Natural) -> Natural {
    let m = Integer::from(m.clone());
    v.mod_floor(&m)
        .to_biguint()
        .expect("mod_floor with positive modulus is nonnegative")
}

/// Inverse of `e` modulo `m`, or `None` when `gcd(e, m) != 1`.
pub fn mod_inverse(e: &Natural, m: &Natural) -> Result<Option<Natural>> {
    if *m < nat(2) {
        return invalid("mod_inverse requires m >= 2");
    }
    let e = e % m;
    if e.is_zero() {
        return Ok(None);
    }
    let r = ext_gcd(m, &e)?;
    if !r.g.is_one() {
        return Ok(None);
    }
    Ok(Some(reduce_signed(&r.y, m)))
}

/// Operation counts of one square-and-multiply run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ExpCost {
    pub squarings: u64,
    pub multiplications: u64,
}

/// `m^e mod n` by right-to-left binary square-and-multiply.
///
/// The powers `m^(2^i)` are produced by `bits(e) - 1` squarings and the
/// selected ones are multiplied together, costing `popcount(e) - 1`
/// multiplications.
pub fn mod_exp_counted(m: &Natural, e: &Natural, n: &Natural) -> Result<(Natural, ExpCost)> {
    if *n < nat(2) {
        return invalid("mod_exp requires n >= 2");
    }
    let mut cost = ExpCost::default();
    if e.is_zero() {
        return Ok((Natural::one(), cost));
    }
    let top = e.bits() - 1;
    let mut power = m % n;
    let mut acc: Option<Natural> = None;
    for i in 0..=top {
        if e.bit(i) {
            acc = Some(match acc {
                None => power.clone(),
                Some(a) => {
                    cost.multiplications += 1;
                    (a * &power) % n
                }
            });
        }
        if i < top {
            cost.squarings += 1;
            power = (&power * &power) % n;
        }
    }
    Ok((acc.expect("e >= 1 has a set bit"), cost))
}

/// `m^e mod n` without the cost counters. Panics on `n < 2`; internal callers
/// have already validated the modulus.
pub fn mod_pow(m: &Natural, e: &Natural, n: &Natural) -> Natural {
    mod_exp_counted(m, e, n).expect("modulus >= 2").0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Primality {
    ProbablyPrime,
    Composite,
}

impl Primality {
    pub fn is_probably_prime(self) -> bool {
        self == Primality::ProbablyPrime
    }
}

fn mr_witness_says_composite(n: &Natural, n_minus_1: &Natural, d: &Natural, s: u64, a: &Natural) -> bool {
    let mut x = mod_pow(a, d, n);
    if x.is_one() || x == *n_minus_1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == *n_minus_1 {
            return false;
        }
    }
    true
}

fn mr_decompose(n: &Natural) -> (Natural, Natural, u64) {
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n - 1 > 0");
    let d = &n_minus_1 >> s;
    (n_minus_1, d, s)
}

/// Miller–Rabin with `rounds` bases drawn uniformly from `[2, n-2]`.
pub fn miller_rabin(n: &Natural, rounds: u32, rng: &mut WorkbenchRng) -> Result<Primality> {
    if *n < nat(2) {
        return invalid("miller_rabin requires n >= 2");
    }
    if rounds == 0 {
        return invalid("miller_rabin requires at least one round");
    }
    if *n <= nat(3) {
        return Ok(Primality::ProbablyPrime);
    }
    if n.is_even() {
        return Ok(Primality::Composite);
    }
    let (n_minus_1, d, s) = mr_decompose(n);
    let lo = nat(2);
    for _ in 0..rounds {
        let a = rng.range(&lo, &n_minus_1);
        if mr_witness_says_composite(n, &n_minus_1, &d, s, &a) {
            return Ok(Primality::Composite);
        }
    }
    Ok(Primality::ProbablyPrime)
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primality without a random source: Miller–Rabin over the first twelve
/// prime bases, which is exact below 3.3·10^24 and a strong probable-prime
/// test above.
pub fn is_prime(n: &Natural) -> bool {
    if *n < nat(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = nat(p as u64);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let (n_minus_1, d, s) = mr_decompose(n);
    SMALL_PRIMES
        .iter()
        .all(|&a| !mr_witness_says_composite(n, &n_minus_1, &d, s, &nat(a as u64)))
}

/// Random probable prime with exactly `bits` bits.
///
/// Each trial draws a fresh candidate, forces the top bit and oddness, and
/// runs [`DEFAULT_MR_ROUNDS`] Miller–Rabin rounds.
pub fn gen_prime(bits: u64, rng: &mut WorkbenchRng) -> Result<Natural> {
    if bits < 2 {
        return invalid("gen_prime requires bits >= 2");
    }
    loop {
        let mut candidate = rng.bits(bits);
        candidate.set_bit(bits - 1, true);
        candidate.set_bit(0, true);
        if SMALL_PRIMES.iter().any(|&p| {
            let p = nat(p as u64);
            candidate != p && (&candidate % &p).is_zero()
        }) {
            continue;
        }
        if miller_rabin(&candidate, DEFAULT_MR_ROUNDS, rng)?.is_probably_prime() {
            return Ok(candidate);
        }
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order. Desk scale only.
pub fn factorize(n: &Natural) -> Result<Vec<(Natural, u32)>> {
    if n.is_zero() {
        return invalid("cannot factor 0");
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut p = nat(2);
    while &p * &p <= rest {
        let mut k = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            k += 1;
        }
        if k > 0 {
            out.push((p.clone(), k));
        }
        p += if p == nat(2) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        out.push((rest, 1));
    }
    Ok(out)
}

/// Euler's totient via trial-division factorization. `φ(1) = 1`.
pub fn euler_phi(n: &Natural) -> Result<Natural> {
    if n.is_zero() {
        return invalid("euler_phi requires n >= 1");
    }
    let mut phi = n.clone();
    for (p, _) in factorize(n)? {
        phi = phi / &p * (&p - 1u32);
    }
    Ok(phi)
}

/// The unique `x` in `[0, Π moduli)` meeting every congruence.
pub fn crt_solve(residues: &[Natural], moduli: &[Natural]) -> Result<Natural> {
    if residues.is_empty() || residues.len() != moduli.len() {
        return invalid("crt_solve needs equally long, nonempty sequences");
    }
    if moduli.iter().any(|m| m.is_zero()) {
        return invalid("crt moduli must be positive");
    }
    let mut x = Natural::zero();
    let mut modulus = Natural::one();
    for (r, m) in residues.iter().zip(moduli) {
        if !modulus.gcd(m).is_one() {
            return invalid("crt moduli must be pairwise coprime");
        }
        if m.is_one() {
            continue;
        }
        // x' = x + modulus * t with t ≡ (r - x) * modulus^{-1} (mod m)
        let inv = mod_inverse(&modulus, m)?.expect("coprime moduli are invertible");
        let diff = reduce_signed(&(Integer::from(r % m) - Integer::from(&x % m)), m);
        let t = diff * inv % m;
        x += &modulus * t;
        modulus *= m;
    }
    Ok(x % modulus)
}

/// `true` iff `g` generates `Z_p^*`. Checked through the prime factors of
/// `p - 1`: `g^((p-1)/q) != 1` for each of them.
pub fn is_primitive_root(g: &Natural, p: &Natural) -> Result<bool> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if g.is_zero() || g >= p {
        return invalid("primitive root candidate must lie in [1, p)");
    }
    let order = p - 1u32;
    Ok(factorize(&order)?
        .into_iter()
        .all(|(q, _)| !mod_pow(g, &(&order / &q), p).is_one()))
}

/// A random primitive root of the prime `p`; `1` for `p = 2`.
pub fn find_primitive_root(p: &Natural, rng: &mut WorkbenchRng) -> Result<Natural> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if *p == nat(2) {
        return Ok(Natural::one());
    }
    let order = p - 1u32;
    let factors: Vec<Natural> = factorize(&order)?.into_iter().map(|(q, _)| q).collect();
    loop {
        let g = rng.range(&nat(2), p);
        if factors.iter().all(|q| !mod_pow(&g, &(&order / q), p).is_one()) {
            return Ok(g);
        }
    }
}

/// Smallest `a >= 0` with `g^a ≡ alpha (mod p)`, by walking the powers of `g`.
/// Test oracle; linear in `p`.
pub fn discrete_log_bruteforce(g: &Natural, alpha: &Natural, p: &Natural) -> Option<Natural> {
    if *p < nat(2) {
        return None;
    }
    let target = alpha % p;
    let g = g % p;
    let mut power = Natural::one() % p;
    let mut a = Natural::zero();
    let limit = p - 1u32;
    while a < limit {
        if power == target {
            return Some(a);
        }
        power = power * &g % p;
        a += 1u32;
    }
    None
}

/// `(floor(x^(1/n)), exact)`.
pub fn integer_nth_root(x: &Natural, n: u32) -> Result<(Natural, bool)> {
    if n == 0 {
        return invalid("root index must be >= 1");
    }
    let root = x.nth_root(n);
    let exact = root.pow(n) == *x;
    Ok((root, exact))
}

/// Number of bits of `n`; 0 for zero.
pub fn bit_len(n: &Natural) -> u64 {
    n.bits()
}

/// Converts to `u64` when it fits.
pub fn to_u64(n: &Natural) -> Option<u64> {
    n.to_u64()
}

/// Absolute value of a signed integer as a natural.
pub fn abs_natural(v: &Integer) -> Natural {
    v.abs().to_biguint().expect("absolute value is nonnegative")
}

/// Signed view of a natural.
pub fn signed(n: &Natural) -> Integer {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn trial_is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    fn gcd_u64(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd_u64(b, a % b)
        }
    }

    #[test]
    fn ext_gcd_worked_example() {
        let r = ext_gcd(&nat(220), &nat(3)).unwrap();
        assert_eq!(r.g, nat(1));
        assert_eq!(r.x, int(1));
        assert_eq!(r.y, int(-73));
    }

    #[test]
    fn ext_gcd_divisor_immediately() {
        let r = ext_gcd(&nat(5), &nat(1)).unwrap();
        assert_eq!((r.g, r.x, r.y), (nat(1), int(0), int(1)));
    }

    #[test]
    fn ext_gcd_identity_240_46() {
        let r = ext_gcd(&nat(240), &nat(46)).unwrap();
        assert_eq!(r.g, nat(2));
        assert_eq!(&r.x * int(240) + &r.y * int(46), int(2));
    }

    #[test]
    fn ext_gcd_rejects_zero() {
        assert!(ext_gcd(&nat(5), &nat(0)).is_err());
    }

    #[test]
    fn ext_gcd_trace_matches_table() {
        let rows = ext_gcd_trace(&nat(220), &nat(3)).unwrap();
        let b: Vec<_> = rows.iter().map(|r| r.b.clone()).collect();
        let x: Vec<_> = rows.iter().map(|r| r.x.clone()).collect();
        let y: Vec<_> = rows.iter().map(|r| r.y.clone()).collect();
        let q: Vec<_> = rows.iter().map(|r| r.q.clone()).collect();
        assert_eq!(b, vec![nat(220), nat(3), nat(1)]);
        assert_eq!(x, vec![int(1), int(0), int(1)]);
        assert_eq!(y, vec![int(0), int(1), int(-73)]);
        assert_eq!(q, vec![None, Some(nat(73)), None]);
    }

    #[test]
    fn mod_inverse_cases() {
        assert_eq!(mod_inverse(&nat(3), &nat(220)).unwrap(), Some(nat(147)));
        assert_eq!(mod_inverse(&nat(1), &nat(26)).unwrap(), Some(nat(1)));
        let oracle = (1..26u64).find(|v| 7 * v % 26 == 1).unwrap();
        assert_eq!(mod_inverse(&nat(7), &nat(26)).unwrap(), Some(nat(oracle)));
        assert_eq!(mod_inverse(&nat(4), &nat(26)).unwrap(), None);
        assert!(mod_inverse(&nat(1), &nat(1)).is_err());
    }

    #[test]
    fn square_and_multiply_worked_example() {
        let (v, cost) = mod_exp_counted(&nat(6), &nat(17), &nat(100)).unwrap();
        assert_eq!(v, nat(36));
        assert_eq!(cost, ExpCost { squarings: 4, multiplications: 1 });
    }

    #[test]
    fn square_and_multiply_f4_exponent() {
        let e = nat((1 << 16) + 1);
        let n = nat(65537 * 3);
        let (v, cost) = mod_exp_counted(&nat(5), &e, &n).unwrap();
        assert_eq!(cost, ExpCost { squarings: 16, multiplications: 1 });
        let mut oracle = 1u64;
        for _ in 0..(1u64 << 16) + 1 {
            oracle = oracle * 5 % (65537 * 3);
        }
        assert_eq!(v, nat(oracle));
    }

    #[test]
    fn zero_exponent_is_one() {
        let (v, cost) = mod_exp_counted(&nat(12), &nat(0), &nat(7)).unwrap();
        assert_eq!(v, nat(1));
        assert_eq!(cost, ExpCost::default());
        assert!(mod_exp_counted(&nat(2), &nat(2), &nat(1)).is_err());
    }

    #[test]
    fn mod_exp_matches_iterated_multiplication() {
        for n in (2u64..1024).step_by(37) {
            for m in (0u64..1024).step_by(53) {
                for e in (0u64..1024).step_by(41) {
                    let mut oracle = 1 % n;
                    for _ in 0..e {
                        oracle = oracle * m % n;
                    }
                    let (v, cost) = mod_exp_counted(&nat(m), &nat(e), &nat(n)).unwrap();
                    assert_eq!(v, nat(oracle), "{m}^{e} mod {n}");
                    if e >= 1 {
                        assert!(cost.squarings < 64 - e.leading_zeros() as u64 + 1);
                        assert_eq!(cost.multiplications, e.count_ones() as u64 - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn miller_rabin_examples() {
        let mut rng = WorkbenchRng::from_seed(1);
        assert_eq!(miller_rabin(&nat(253), 40, &mut rng).unwrap(), Primality::Composite);
        assert_eq!(miller_rabin(&nat(2), 40, &mut rng).unwrap(), Primality::ProbablyPrime);
        assert_eq!(miller_rabin(&nat(561), 40, &mut rng).unwrap(), Primality::Composite);
        assert!(miller_rabin(&nat(1), 40, &mut rng).is_err());
        assert!(miller_rabin(&nat(7), 0, &mut rng).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let mut rng = WorkbenchRng::from_seed(2);
        for n in 2u64..=100_000 {
            let mr = miller_rabin(&nat(n), 8, &mut rng).unwrap().is_probably_prime();
            assert_eq!(mr, trial_is_prime(n), "n = {n}");
            assert_eq!(is_prime(&nat(n)), trial_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn gen_prime_ranges() {
        let mut rng = WorkbenchRng::from_seed(9);
        let p = gen_prime(8, &mut rng).unwrap();
        assert!(p >= nat(128) && p <= nat(255));
        assert!(trial_is_prime(to_u64(&p).unwrap()));
        let p2 = gen_prime(2, &mut rng).unwrap();
        assert!(p2 == nat(2) || p2 == nat(3));
        let p16 = gen_prime(16, &mut rng).unwrap();
        assert_eq!(p16.bits(), 16);
        assert!(trial_is_prime(to_u64(&p16).unwrap()));
        assert!(miller_rabin(&p16, 40, &mut rng).unwrap().is_probably_prime());
        assert!(gen_prime(1, &mut rng).is_err());
    }

    #[test]
    fn gen_prime_is_deterministic_per_seed() {
        let a = gen_prime(64, &mut WorkbenchRng::from_seed(5)).unwrap();
        let b = gen_prime(64, &mut WorkbenchRng::from_seed(5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.bits(), 64);
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(&nat(253)).unwrap(), nat(220));
        assert_eq!(euler_phi(&nat(101)).unwrap(), nat(100));
        assert_eq!(euler_phi(&nat(12)).unwrap(), nat(4));
        assert_eq!(euler_phi(&nat(1)).unwrap(), nat(1));
        assert!(euler_phi(&nat(0)).is_err());
        for n in 1u64..=300 {
            let count = (1..=n).filter(|&i| gcd_u64(i, n) == 1).count() as u64;
            let count = if n == 1 { 1 } else { count };
            assert_eq!(euler_phi(&nat(n)).unwrap(), nat(count), "phi({n})");
        }
    }

    #[test]
    fn euler_phi_is_multiplicative() {
        for m in 1u64..=100 {
            for n in 1u64..=100 {
                if gcd_u64(m, n) == 1 {
                    let lhs = euler_phi(&nat(m * n)).unwrap();
                    let rhs = euler_phi(&nat(m)).unwrap() * euler_phi(&nat(n)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn fermat_and_euler_theorems() {
        for p in (2u64..=101).filter(|&p| trial_is_prime(p)) {
            for a in 1..p {
                assert!(mod_pow(&nat(a), &nat(p - 1), &nat(p)).is_one());
            }
        }
        for n in 2u64..=300 {
            let phi = euler_phi(&nat(n)).unwrap();
            for a in (1..n).filter(|&a| gcd_u64(a, n) == 1) {
                assert!(mod_pow(&nat(a), &phi, &nat(n)).is_one(), "a={a} n={n}");
            }
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_solve(&[nat(0)], &[nat(17)]).unwrap(), nat(0));
        let scan = (0u64..15).find(|x| x % 3 == 2 && x % 5 == 3).unwrap();
        assert_eq!(crt_solve(&[nat(2), nat(3)], &[nat(3), nat(5)]).unwrap(), nat(scan));
        let ns = [nat(7), nat(11), nat(13)];
        for m in 0u64..1001 {
            let rs: Vec<_> = ns.iter().map(|n| nat(m) % n).collect();
            assert_eq!(crt_solve(&rs, &ns).unwrap(), nat(m));
        }
        assert!(crt_solve(&[nat(1), nat(1)], &[nat(4), nat(6)]).is_err());
        assert!(crt_solve(&[], &[]).is_err());
    }

    fn order_bruteforce(g: u64, p: u64) -> u64 {
        let mut x = g % p;
        let mut k = 1;
        while x != 1 {
            x = x * g % p;
            k += 1;
        }
        k
    }

    #[test]
    fn primitive_roots() {
        assert!(is_primitive_root(&nat(2), &nat(5)).unwrap());
        assert!(is_primitive_root(&nat(3), &nat(5)).unwrap());
        assert!(!is_primitive_root(&nat(4), &nat(5)).unwrap());
        assert!(!is_primitive_root(&nat(1), &nat(7)).unwrap());
        assert!(is_primitive_root(&nat(2), &nat(6)).is_err());
        // against the definition: no d in [1, p-2] with g^d = 1
        for p in [5u64, 7, 11, 13, 23, 101] {
            for g in 1..p {
                let by_definition = (1..=p - 2).all(|d| !mod_pow(&nat(g), &nat(d), &nat(p)).is_one());
                assert_eq!(is_primitive_root(&nat(g), &nat(p)).unwrap(), by_definition);
            }
        }
    }

    #[test]
    fn find_primitive_root_examples() {
        let mut rng = WorkbenchRng::from_seed(4);
        let g = find_primitive_root(&nat(5), &mut rng).unwrap();
        assert!(g == nat(2) || g == nat(3));
        assert_eq!(find_primitive_root(&nat(2), &mut rng).unwrap(), nat(1));
        for _ in 0..10 {
            let g = find_primitive_root(&nat(23), &mut rng).unwrap();
            assert_eq!(order_bruteforce(to_u64(&g).unwrap(), 23), 22);
        }
    }

    #[test]
    fn discrete_log_examples() {
        assert_eq!(discrete_log_bruteforce(&nat(2), &nat(3), &nat(5)), Some(nat(3)));
        assert_eq!(discrete_log_bruteforce(&nat(5), &nat(1), &nat(23)), Some(nat(0)));
        for b in 0u64..22 {
            let beta = mod_pow(&nat(5), &nat(b), &nat(23));
            assert_eq!(discrete_log_bruteforce(&nat(5), &beta, &nat(23)), Some(nat(b)));
        }
        // 4 generates only the squares mod 5
        assert_eq!(discrete_log_bruteforce(&nat(4), &nat(2), &nat(5)), None);
    }

    #[test]
    fn nth_root_examples() {
        assert_eq!(integer_nth_root(&nat(27), 3).unwrap(), (nat(3), true));
        assert_eq!(integer_nth_root(&nat(26), 3).unwrap(), (nat(2), false));
        assert!(integer_nth_root(&nat(26), 0).is_err());
        let mut rng = WorkbenchRng::from_seed(8);
        for _ in 0..100 {
            let m = rng.bits(64);
            let (r, exact) = integer_nth_root(&m.pow(3), 3).unwrap();
            assert_eq!(r, m);
            assert!(exact);
        }
    }
}

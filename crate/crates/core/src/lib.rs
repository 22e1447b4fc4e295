//! A desk-scale cryptographic-protocol workbench.
//!
//! The crate implements, attacks and statistically checks a catalog of
//! textbook protocols:
//!
//! * [`classical`]: Caesar, Vigenère, Hill and one-time-pad ciphers together
//!   with an exact perfect-secrecy analyzer for finite cryptosystems.
//! * [`numtheory`] and [`rsa`]: modular arithmetic primitives and raw RSA.
//! * [`attacks`]: factoring, Wiener, broadcast, forgery, blinding and
//!   superencryption attacks against raw RSA.
//! * [`protocols`]: Diffie–Hellman, ElGamal, Shamir's no-key protocol and the
//!   Rivest–Sherman / Rabi–Sherman protocols over a simulated channel with an
//!   eavesdropper.
//! * [`graphs`], [`zkp`]: graph utilities and interactive proofs with
//!   simulators.
//! * [`aowf`]: partial two-ary functions, associativity checkers and the
//!   certificate-based associative function.
//!
//! All randomness is drawn from an explicitly threaded [`rng::WorkbenchRng`].

#![deny(unsafe_code)]

pub mod aowf;
pub mod attacks;
pub mod classical;
pub mod error;
pub mod graphs;
pub mod hexnat;
pub mod numtheory;
pub mod protocols;
pub mod rng;
pub mod rsa;
pub mod zkp;

pub use error::{Error, Result};
pub use numtheory::{Integer, Natural};

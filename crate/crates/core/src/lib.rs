//! Arithmetic of real and imaginary quadratic fields aimed at one concrete
//! experimental question: how are prime ideals distributed over *thin* regions
//! cut out by a norm window `x−y ≤ 𝒩(𝔞) ≤ x` together with an angular window
//! on a Größencharakter fingerprint, and what does that say about rational
//! primes represented by binary quadratic forms near a prescribed real point?
//!
//! The crate is organized bottom-up:
//!
//! * [`sieve`] — segmented prime sieve, deterministic 64-bit Miller–Rabin,
//!   Tonelli–Shanks square roots mod p.
//! * [`field`] — exact elements `(u + v√Δ)/2`, embeddings, norms, units,
//!   fundamental units by continued fractions.
//! * [`ideals`] — integral ideals in Hermite normal form, prime splitting,
//!   principal generators, class numbers, prime-ideal enumeration.
//! * [`chars`] — the unit-circle fingerprint `μ_𝔞` of an ideal and the
//!   character family `λ^m`, for both signatures.
//! * [`regions`] — region specifications, membership predicates, hyperbola
//!   sector geometry, and lattice-point enumeration between conics.
//! * [`smoothing`] — the smooth weights `ψ₁`, `ψ₂`, `Ψ` with plateau/support
//!   control, closed-form Fourier coefficients, and Mellin transforms.
//! * [`dirichlet`] — Dirichlet polynomials over ideal streams, line-integral
//!   main terms, the error functional `E`, and the thin/wide ratio law.
//! * [`forms`] — binary quadratic forms, the form↔ideal correspondence, and
//!   the nearest-represented-prime searches.
//!
//! All arithmetic that feeds correctness decisions is exact (checked 128-bit
//! integers); floating point only enters where a quantity is honestly real
//! (embeddings, angles, quadrature).

pub mod chars;
pub mod dirichlet;
mod error;
pub mod field;
pub mod forms;
pub mod ideals;
pub mod regions;
pub mod sieve;
pub mod smoothing;

pub use error::{Error, Result};
pub use field::{QuadraticField, QuadraticInt, Signature};
pub use ideals::{Ideal, IdealClassContext, PrimeIdeal, SplitType};

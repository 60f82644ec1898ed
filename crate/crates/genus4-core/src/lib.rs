//! Searches and verification routines for point-count bounds on genus-4
//! curves over small finite fields.
//!
//! The crate is organized around the computations that establish the bounds:
//!
//! * [`ff`] — arithmetic in `F_q` for prime powers `q < 100`, with
//!   power-residue tables driving all point counting;
//! * [`curves`] — elliptic and genus-2 curve models, point enumeration,
//!   twist/Galois class enumeration and the `E(k)/3E(k)` reduction;
//! * [`funcfield`] — exact local analysis on hyperelliptic function fields
//!   (orders, units, divisors, genus audits, Riemann-Roch spaces);
//! * [`cover`] — exhaustive searches over genus-4 double covers of elliptic
//!   and genus-2 base curves;
//! * [`families`] — order-4-automorphism hyperelliptic curves, degree-3 and
//!   degree-5 Kummer covers, and the superelliptic verifier;
//! * [`hermitian`] — Hermitian lattices over imaginary quadratic orders,
//!   pushforward enumeration to conductor-2 orders, isometry testing;
//! * [`zeta5`] — exact arithmetic in `Z[zeta_5]`, Euclidean division, 2x2
//!   unimodular Hermitian reduction and the Frobenius CM checks;
//! * [`ledger`] — the machine-readable case ledger and bounds report.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `genus4-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod cover;
pub mod curves;
pub mod families;
pub mod ff;
pub mod funcfield;
pub mod hermitian;
pub mod ledger;
pub mod poly;
pub mod series;
pub mod zeta5;

/// Errors surfaced by construction and search entry points.
///
/// Internal invariant violations panic instead; every error here corresponds
/// to a caller-visible precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not prime.
    NotPrime(u32),
    /// Extension degree must be at least 1.
    BadDegree(u32),
    /// The operation requires characteristic > 2 or > 3.
    BadCharacteristic { p: u32, min_excluded: u32 },
    /// Trace violates the Hasse bound for the field.
    HasseViolation { q: u32, t: i64 },
    /// Curve is singular / polynomial not separable.
    Singular,
    /// The cover function is zero or defines a non-irreducible cover.
    BadCoverFunction(&'static str),
    /// Kummer covers of degree m need q = 1 mod m.
    RootsOfUnityMissing { q: u32, m: u32 },
    /// The marked point has order 2 (shifted model needs t != 0).
    TwoTorsionPoint,
    /// Lattice/matrix input violates Hermitian positivity or unimodularity.
    BadLattice(&'static str),
    /// Mismatched ranks or orders in a lattice operation.
    LatticeMismatch,
    /// Division by zero in an exact ring.
    DivisionByZero,
    /// A data file or ledger entry could not be parsed.
    Parse(alloc::string::String),
    /// Unknown case-ledger strategy tag.
    UnknownStrategy,
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BadDegree(k) => write!(f, "extension degree {k} < 1"),
            Error::BadCharacteristic { p, min_excluded } => {
                write!(f, "characteristic {p} <= {min_excluded} not supported here")
            }
            Error::HasseViolation { q, t } => write!(f, "|{t}| > 2*sqrt({q})"),
            Error::Singular => write!(f, "singular curve / non-separable polynomial"),
            Error::BadCoverFunction(s) => write!(f, "bad cover function: {s}"),
            Error::RootsOfUnityMissing { q, m } => write!(f, "q = {q} is not 1 mod {m}"),
            Error::TwoTorsionPoint => write!(f, "marked point has order 2"),
            Error::BadLattice(s) => write!(f, "bad lattice: {s}"),
            Error::LatticeMismatch => write!(f, "rank/order mismatch"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::UnknownStrategy => write!(f, "unknown strategy tag"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

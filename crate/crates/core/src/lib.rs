//! p-adic L-functions of elliptic curves over Q, computed from modular symbols.
//!
//! The crate builds the power series `L_p(E, alpha, psi, T)` and the locally
//! analytic function `L_p(E, alpha, psi, s)` for an elliptic curve `E/Q` with
//! semistable reduction at an odd prime `p`, twisted by a tame Dirichlet
//! character `psi`, and machine-checks the functional equation, the
//! leading/sub-leading coefficient relations in both variables, the
//! mu-invariant symmetry under conjugation of the character, and the
//! abelian base-change generalisations, all at explicit finite precision.
//!
//! Layering, bottom up:
//!
//! * [`real`] — arbitrary-precision real arithmetic (periods, L-values).
//! * [`exactla`] — exact rationals, sparse kernels, continued fractions,
//!   rational reconstruction.
//! * [`padic`] / [`quadext`] / [`elem`] — finite-precision `Q_p` and its
//!   quadratic extension `Q_p(alpha)`.
//! * [`curve`] — Weierstrass data, point counts, reduction types, allowable
//!   roots, periods and numeric L-values.
//! * [`charset`] — tame Dirichlet characters with values in `Z_p`.
//! * [`modsym`] — exact modular symbols for `Gamma_0(N)` and the normalized
//!   evaluators `[r]^{+-}`.
//! * [`lpbuild`] — the measures `mu_alpha^{+-}` and the Riemann-sum
//!   construction of the series.
//! * [`pseries`] — p-adic power series toolkit and theorem checkers.
//! * [`basechange`] — product L-functions over character groups of abelian
//!   fields and their combined checks.
//!
//! All series in the `T` variable depend on the fixed choice of topological
//! generator `kappa(gamma) = 1 + p`; the dependence is recorded in every
//! serialized artifact.

pub mod basechange;
pub mod charset;
pub mod curve;
pub mod elem;
pub mod exactla;
pub mod lpbuild;
pub mod modsym;
pub mod padic;
pub mod pseries;
pub mod quadext;
pub mod real;

pub use exactla::BigRational;
pub use padic::PadicNumber;
pub use quadext::PadicQuadExt;

//! Toeplitz determinants with the symbol `exp(t(z + 1/z))`, the discrete
//! Painlevé II recurrence, the Painlevé II/III/V transcendents, the
//! Tracy–Widom distribution `F` and its square, and exhaustive longest-
//! increasing-subsequence censuses of the symmetric and odd (signed)
//! permutation groups.
//!
//! The same quantities are computed along independent routes — numeric
//! linear algebra, recurrence/ODE integration, and exact big-rational
//! series — so that every identity tying them together can be checked
//! rather than assumed:
//!
//! * [`series`] — exact truncated power series over big rationals and the
//!   series-level Toeplitz determinants `D_n(t)`, `D̂_n(0,t)`.
//! * [`toeplitz`] — arbitrary-precision numeric determinants, corner
//!   quantities `U_n`, `V_n^±`, two-parameter determinants, and the fast
//!   Levinson-type `D/U` sequence.
//! * [`painleve`] — the discrete Painlevé II recurrence, the Painlevé V/III
//!   equations for `1 - U_n^2` and `U_n/U_{n-1}`, and Painlevé II with Airy
//!   boundary data.
//! * [`tracy`] — distribution grids, moments, and quantiles for `F` and `F²`.
//! * [`perm`] — LIS lengths, permutation censuses, and exact verification of
//!   the generating-function identities.
//! * [`experiments`] — finite-size limit tables (scaled determinants against
//!   `F`, the odd-group analogue against `F²`, and the `U_n` scaling law).

pub mod error;
pub mod experiments;
pub mod painleve;
pub mod perm;
pub mod series;
pub mod toeplitz;
pub mod tracy;

mod real;

pub use error::{Error, Result};

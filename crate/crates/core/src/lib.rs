//! Exact q-expansion machinery for automorphic forms on genus-0 Fuchsian groups.
//!
//! Forms are built from a Hauptmodul `w` as
//! `h_j = (w')^{k/2} w^j / prod_{w_i finite} (w - w_i)^{a_i}` for `j < dim A_k`,
//! computed on truncated series with exact rational coefficients. Classical
//! series (Eisenstein series, the discriminant, eta quotients, `j`) are
//! generated independently in [`oracle`] and used as ground truth.
//!
//! Module map:
//! - [`qseries`]: truncated Laurent/Puiseux series over the rationals.
//! - [`oracle`]: divisor sums, `E4`, `E6`, `Delta`, eta quotients, `j`.
//! - [`groups`]: group registry, Moebius action, Hauptmodul change of coordinate.
//! - [`basis`]: dimensions, exponents, the basis construction and order ledger.
//! - [`numeric`]: floating-point evaluation and automorphy checks on the upper half-plane.
//! - [`report`]: verification suites shared by the CLI and the test suites.

pub mod basis;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod numeric;
pub mod oracle;
pub mod qseries;
pub mod report;

pub use basis::{
    build_basis, dim_ak, order_ledger, span_equal, verify_holomorphic_at_cusp, verify_independent,
    Basis, LedgerCase, LedgerEntry, OrderLedger, WeightData,
};
pub use error::{Error, Result};
pub use groups::{registry_get, ExtRational, GroupData, GroupElement, Order, Vertex, VertexKind};
pub use numeric::EvalConfig;
pub use qseries::{QSeries, Rational};

//! Truncated q-series engine for biregular overpartitions.
//!
//! The crate expands q-Pochhammer products and eta-quotients, verifies
//! dissection identities, applies Hecke operators and checks congruences for
//! `B̄_{ℓ1,ℓ2}(n)` against an independent partition-counting oracle.
//!
//! ```
//! use biregular::{etaq, series::Ring};
//!
//! let spec = "2,9".parse().unwrap();
//! let gf = etaq::biregular_gf(spec, 5, Ring::Exact).unwrap();
//! assert_eq!(gf.coeff(5).unwrap(), 8.into());
//! ```

pub mod arith;
pub mod claims;
pub mod dissect;
pub mod error;
pub mod etaq;
pub mod hecke;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};
pub use etaq::{BiregularSpec, EtaQuotient, Factors};
pub use series::{QSeries, Ring};

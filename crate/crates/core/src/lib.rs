//! Computation of the extremal constant `H₀(E_q)` of Ahlfors' Second Fundamental Theorem
//! for a finite point set on the Riemann sphere, together with the geometric kernel and the
//! numerical property suites behind it.

pub mod error;
pub mod functionals;
pub mod lens;
pub mod optim;
pub mod quadrature;
pub mod search;
pub mod sphere;
pub mod surface;
pub mod tol;
pub mod verify;

pub use error::{ConfigError, GeomError, LedgerError, LensError, SearchError, SurfaceError};
pub use functionals::{Configuration, SurfaceStats};
pub use sphere::{ExtendedComplex, SpherePoint};

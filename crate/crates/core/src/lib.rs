//! Exact combinatorics of toroidal compactifications of split reductive
//! groups, realized as moduli of framed bundle chains.
//!
//! - [`root_datum`]: root data on `Z^r` and explicit Weyl groups.
//! - [`polyhedral`]: exact rational cones, polyhedra and normal fans.
//! - [`fan`]: fans by ray vectors, validation, support and polarity tests.
//! - [`stacky_fan`]: chamber fans, classification and cone completion.
//! - [`chain_moduli`]: splitting types, stability and the stable census.
//! - [`cox`]: Cox presentation data and stratum stabilizers.
//! - [`vinberg`]: Vinberg monoid lattice data and dimension bookkeeping.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod chain_moduli;
pub mod cox;
pub mod error;
pub mod fan;
pub mod linalg;
pub mod lp;
pub mod polyhedral;
pub mod rational;
pub mod root_datum;
pub mod snf;
pub mod stacky_fan;
pub mod vinberg;

pub use chain_moduli::{is_stable, Instability, SplittingType, Stability, StabilityWitness};
pub use cox::CoxData;
pub use error::{Error, Result};
pub use fan::Fan;
pub use polyhedral::{Cone, Polyhedron, Space};
pub use root_datum::{Isogeny, RootDatum, RootDatumSpec, Series, WeylElement};
pub use stacky_fan::{complete_cone, StackClassification, StackyFan};
pub use vinberg::VinbergLatticeData;

//! Combinatorics of the boundary of the compactified universal Picard
//! variety and of the locus of spin curves inside it.
//!
//! Curves are modeled by their dual graphs ([`DualGraph`]); line bundles only
//! through their multidegrees ([`Multidegree`]). The crate is split into
//!
//! * [`graph`]: dual graphs, subcurve invariants and the Basic Inequality,
//! * [`quasistable`]: blow-ups of stable curves, spin multidegrees and the
//!   stability predicates for their Hilbert points,
//! * [`spin_locus`]: which fiber components are met by the spin locus,
//! * [`numerics`]: scalar invariants of the Picard varieties.
//!
//! All comparisons against the rational bounds `m_Y` are exact.

pub mod error;
pub mod graph;
pub mod numerics;
pub mod quasistable;
pub mod spin_locus;
mod subsets;

pub use error::{Error, Result};
pub use graph::{
    BiReport, DualGraph, Multidegree, RawEdge, RawGraph, RawVertex, Subcurve, SubcurveProfile,
    Violation,
};
pub use numerics::PicardParams;
pub use quasistable::{BlowupConfig, BoundaryCase, LemmaBasicProfile, NodeOrigin, QuasistableGraph};
pub use spin_locus::{SigmaStrategy, SpinWitness, SplitCurveRow};

/// Exact rational number used for the bounds `m_Y`.
pub type Rational = num_rational::Ratio<i64>;

/// The twisting exponent `t` of `ζ ⊗ ω^t`.
///
/// [`Twist::new`] enforces `t >= 10`, the range in which the spin locus is
/// known to embed into the Picard variety of degree `(2t+1)(g-1)`.
/// [`Twist::exploratory`] accepts any `t >= 0` for experiments outside that range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Twist(i64);

impl Twist {
    pub const MIN: i64 = 10;

    pub fn new(t: i64) -> Result<Self> {
        if t < Self::MIN {
            return Err(Error::TwistTooSmall { t, min: Self::MIN });
        }
        Ok(Twist(t))
    }

    pub fn exploratory(t: i64) -> Result<Self> {
        if t < 0 {
            return Err(Error::TwistTooSmall { t, min: 0 });
        }
        Ok(Twist(t))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    /// Total degree `(2t+1)(g-1)` for a curve of arithmetic genus `g`.
    pub fn total_degree(self, genus: i64) -> i64 {
        (2 * self.0 + 1) * (genus - 1)
    }
}

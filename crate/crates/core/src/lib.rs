//! Analysis toolkit for an inductively shunted transmon coupled to an
//! embedded resonator through a pair of flux-biased junction branches.
//!
//! The library models three branch variants (single junction, junction
//! array, array with series inductance), locates the circuit's potential
//! minimum, expands the potential to fourth order, quantizes the two modes,
//! and reports mode frequencies, anharmonicities, and the four two-mode
//! coupling rates as functions of the two external fluxes. Higher layers
//! add flux sweeps, feasibility screening, an exact-diagonalization cross
//! check, and a grid search over circuit parameters.
//!
//! Units follow microwave-engineering convention throughout: energies and
//! frequencies in GHz (E/h), inductances in nH, capacitances in fF, fluxes
//! in radians of superconducting phase.

pub mod branch;
pub mod circuit;
pub mod error;
pub mod oracle;
pub mod physconst;
pub mod presets;
pub mod quantizer;
pub mod search;
pub mod sweep;

pub use branch::{Branch, BranchKind};
pub use circuit::{CircuitParams, CircuitVariant, FeasibilityReport};
pub use error::{CoreError, Result};
pub use oracle::{OracleSettings, OracleSpectrum};
pub use quantizer::{
    analyze_point, closed_form_point, CouplingSet, ModeQuantization, Potential, SpectrumPoint,
    TaylorExpansion,
};
pub use search::{SearchResult, SearchSpace};
pub use sweep::{SweepFeatures, SweepTable};

//! Smith-factorization perfectly matched layers for the 2D linearized Euler
//! equations.
//!
//! The crate has three layers:
//!
//! * [`polymat`] works with the Fourier symbol of the Euler operator as a
//!   matrix of polynomials in λ (the symbol of `∂x`) and checks its
//!   factorization and invariant factors.
//! * [`modes`] computes plane-wave exponents and mode vectors, and solves the
//!   interface problems that certify the layers are reflectionless.
//! * [`solver`] and [`harness`] run the time-domain staggered-grid scheme with
//!   the pressure-only layer and compare against reference runs on enlarged
//!   domains.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --release --example smith_form
//! cargo run --release --example mode_table
//! cargo run --release --example reflection_sweep
//! cargo run --release --example pulse_in_box
//! cargo run --release --example vorticity_passthrough
//! cargo run --release --example table1
//! cargo run --release --example long_time_stability
//! cargo run --release --example aux_consistency
//! ```

pub mod draws;
pub mod error;
pub mod harness;
pub mod io;
pub mod modes;
pub mod params;
pub mod polymat;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use params::{
    FlowParams, FlowUse, FourierPoint, GridSpec, PmlAuxConstants, PmlConfig, Side, SideSet,
    SourceSpec, SourceTargets,
};

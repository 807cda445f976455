//! Plane-wave analysis at a fixed Fourier point: exponents, mode vectors and
//! the interface problems that show both layer models are reflectionless.

pub mod exponents;
pub mod reflection;
pub mod vectors;

pub use exponents::{finite_layer_decay, lambdas, lambdas_pml, Exponents, PmlModeSet, Regime};
pub use reflection::{
    model1_closed_form, reflection_model1, reflection_model2, Model1Reflection, Model2Reflection,
};
pub use vectors::{mode_vectors, model2_mode_vectors, ModeSet, Model2Modes};

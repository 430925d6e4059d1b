//! Physical realizations: an LC circuit capacitively coupled to a long
//! elastic strip (s = −1) and an optical cavity with a membrane (s = 0).

pub mod membrane;
pub mod report;
pub mod strip;

pub use membrane::{
    beam_waist, cavity_omega, max_coupling_z0, membrane_bath, membrane_cavity_frequency, membrane_cutoffs,
    membrane_mode, membrane_spectral_model, rayleigh_range_for_waist, MembraneParams,
};
pub use report::{device_dephasing_report, DephasingReport, DeviceSpec, ReportSample};
pub use strip::{
    strip_bath, strip_cutoffs, strip_mode, strip_spectral_model, strip_validity, Cutoffs, StripParams, StripValidity,
};

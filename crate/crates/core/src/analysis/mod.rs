//! Channel models, distances and the amplitude-damping simulation study.

pub mod ad_study;
pub mod alternate;
pub mod distance;
pub mod models;

pub use ad_study::{
    ad_known_points, difference_spectrum, p0_cross, trace_min_location, DifferenceSpectrum, KnownPoints,
};
pub use alternate::{
    alternate_a_for_y, alternate_choi, alternate_derivatives, alternate_known_point, alternate_xyz,
    AlternateDerivatives, AlternateKnownPoint, AlternateXyz,
};
pub use distance::{diamond_bounds, diamond_numeric, trace_norm, DiamondBounds, DiamondOptions};
pub use models::{ad_choi, depolarising_choi, model_choi, pbt_ad_closed_form, xi, AdConvention, ChannelModel};

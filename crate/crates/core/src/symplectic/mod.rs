//! Local symplectic blow-up: the radial map `F(z) = (phi(|z|) / |z|) z`, the
//! pulled-back form `F^* omega_std`, and seeded checks of its properties.

pub mod forms;
pub mod profile;
pub mod verify;

pub use forms::{
    fs_pullback_form, inner_target, map_f, omega_std, pullback_two_form, PullbackMode, TwoForm,
};
pub use profile::{BlowupProfile, RadialProfile, DEFAULT_ETA};
pub use verify::{
    fs_normalization, verify_all, verify_closedness, verify_cross_oracle, verify_hopf,
    verify_normalization, verify_positivity, verify_region_inner, verify_region_outer, Region,
    RegionReport, Sweep,
};

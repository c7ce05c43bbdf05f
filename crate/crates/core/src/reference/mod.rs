//! Independent oracles: smoothed Dirichlet series, Petersson norms by
//! quadrature over the fundamental domain, and the Hida bridge between
//! `⟨f,f⟩` and `L(κ, Sym² f)`.

mod hida;
mod modular;
mod petersson;
mod quadrature;
mod smoothed;

pub use hida::{
    global_factorization_check, hida_bridge_value, FactorizationReport, FactorizationRow,
    HidaBridge,
};
pub use modular::{evaluate_level1_form, LevelOneForm};
pub use petersson::{
    petersson_norm_gamma0p, petersson_norm_level1, petersson_pairing_gamma0p, Gamma0Function, Mesh,
    QuadratureResult, LEVEL_ONE_HEIGHT,
};
pub use quadrature::GaussLegendre;
pub use smoothed::{smoothed_dirichlet_value, Continuation, SmoothedValue, TABLE_PER_SCALE};

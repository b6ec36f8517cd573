//! Discrete Fourier and Hartley transforms built from Weyl-group orbit functions
//! of compact simple Lie groups, together with exact point and weight set
//! enumeration and their counting formulas.

pub mod affine;
pub mod counting;
pub mod error;
pub mod gamma;
pub mod grids;
pub mod io;
pub mod linalg;
pub mod rootdata;
pub mod transforms;
pub mod verify;
pub mod weyl;

pub use affine::{dual_stab_order, epsilon, reduce_point, KacVector, ReducedPoint, Side};
pub use counting::{burnside_count, closed_form, count_row, denumerant, necklace_crosscheck};
pub use error::{Error, Result};
pub use gamma::{gamma_group, h_pm, lex_max, GammaElement, GammaGroup};
pub use grids::{point_set, tilde_sets, weight_set, weight_superset, GridPoint, GridWeight, LevelPolicy};
pub use rootdata::{build, generalized_coxeter, rho_sigma, AlgebraType, Family, RootSystemData, SignHom};
pub use transforms::{
    forward, hartley_forward, hartley_inverse, inverse, PlanOptions, RationalPoint, SampleTable, Spectrum,
    TransformPlan,
};
pub use weyl::{enumerate_weyl, factorize, sign_value, Weight, WeylElement};

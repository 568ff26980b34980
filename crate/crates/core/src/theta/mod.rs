//! Theta constants and reduced theta derivatives with rational characteristics.

mod characteristic;
mod numeric;
mod series;

pub use characteristic::{Characteristic, Normalized};
pub use numeric::{
    check_transformations, theta_deriv_numeric, theta_numeric, zero_location_residual, DomainError, TransformResiduals,
};
pub use series::{jacobi_triple_product_check, theta_const, theta_const_product, theta_deriv_reduced, ThetaError};

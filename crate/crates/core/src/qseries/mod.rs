//! q-expansions: one-variable series and Jacobi forms in (tau, z).

pub mod catalog;
pub mod jacobi;
pub mod series;
pub mod theta;

pub use jacobi::{delta_operator, jacobi_mul, jacobi_scalar_mul, jacobi_tensor, pullback, JacobiQExp, ThetaDecomposition};
pub use series::{e2, e4, e6, eta_power, QSeries24};
pub use theta::{basic_theta, theta_nullwert, theta_pullback, theta_series};

#[cfg(test)]
mod tests;

//! Statistical kernels.
//!
//! Everything here is a pure function of its inputs. Kernels that run per chunk
//! expose a partial type with an associative `merge`; the rest operate on the
//! small merged results.

pub mod bivariate;
pub mod boxplot;
pub mod categorical;
pub mod correlation;
pub mod density;
pub mod histogram;
pub mod impact;
pub mod missing;
pub mod moments;
pub mod quantile;
pub mod sampling;
pub mod special;
pub mod summary;

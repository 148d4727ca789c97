//! Disk algebras, truncated power series, jet spaces of affine charts via
//! prolongation, restriction maps, and non-degeneracy loci.

mod chart;
mod prolong;
mod ring;
mod series;

pub use chart::{compose_fraction, compose_fraction_with_seed, compose_poly, Chart, Jet};
pub use prolong::{
    jet_var_name, nondegeneracy_stratum, poly_det, prolong_ideal, JetChartSpace,
};
pub use ring::{CoeffRing, PolyRing, QQ};
pub use series::{disk_basis, disk_dim, idx_total, TruncSeries};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum JetError {
    #[error("jet supplies {got} coordinates for a chart with {expected}")]
    CoordinateCount { expected: usize, got: usize },
    #[error("series disagree on disk parameters")]
    DiskMismatch,
    #[error("jet base point does not satisfy chart relation `{0}`")]
    BaseOffVariety(String),
    #[error("jet based at a pole of `{0}`")]
    BasedAtPole(String),
    #[error("order 0 jets have no linear part")]
    NoLinearPart,
    #[error("cannot restrict to {e} disk variables out of {d}")]
    BadRestriction { e: usize, d: usize },
}

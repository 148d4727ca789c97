//! hodgejet: an exact symbolic engine that bounds the monodromy-orbit defect
//! of a variation of Hodge structure.
//!
//! The engine prolongs affine varieties to jet spaces, solves the flat-frame
//! system of a connection along jets to realize period jets in a flag variety,
//! assembles the resulting constructible loci with matrix-group unknowns, and
//! decides their emptiness by exact ideal saturation. The outputs are the
//! monotone bound sequences `kappa(r)` (lower) and `tau(i)` (upper) together
//! with emptiness certificates.
//!
//! All kernel arithmetic is over arbitrary-precision rationals; no floating
//! point is used anywhere in a certificate path.

pub mod boundengine;
pub mod exactalg;
pub mod gaussmanin;
pub mod hodgeflags;
pub mod jetcalc;

pub use exactalg::{Budget, Ideal, MonomialOrder, MultiPoly, SymbolTable, Tri};
pub use jetcalc::{Chart, Jet, JetChartSpace, TruncSeries};

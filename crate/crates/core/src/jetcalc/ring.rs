use crate::exactalg::{MultiPoly, SymbolTable, Q};
use num::{One, Zero};
use std::sync::Arc;

/// Coefficient ring passed as context to series arithmetic, so the same
/// truncated-series engine runs over exact rationals and over polynomial
/// rings (for symbolic jets with coordinate unknowns).
pub trait CoeffRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_rational(&self, q: &Q) -> Self::Elem;
    /// Multiplicative inverse when one exists in this ring.
    fn invert(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// The rationals.
#[derive(Debug, Clone, Copy, Default)]
pub struct QQ;

impl CoeffRing for QQ {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn from_rational(&self, q: &Q) -> Q {
        q.clone()
    }
    fn invert(&self, a: &Q) -> Option<Q> {
        if a.is_zero() {
            None
        } else {
            Some(Q::one() / a)
        }
    }
}

/// Polynomial coefficients over a fixed table. Only nonzero rational
/// constants are invertible; symbolic inverses are introduced by callers as
/// explicit inverse variables with their defining relations.
#[derive(Debug, Clone)]
pub struct PolyRing {
    pub table: Arc<SymbolTable>,
}

impl PolyRing {
    pub fn new(table: &Arc<SymbolTable>) -> Self {
        PolyRing {
            table: table.clone(),
        }
    }
}

impl CoeffRing for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(&self.table)
    }
    fn one(&self) -> MultiPoly {
        MultiPoly::one(&self.table)
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add(b)
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.sub(b)
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul(b)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }
    fn from_rational(&self, q: &Q) -> MultiPoly {
        MultiPoly::constant(&self.table, q.clone())
    }
    fn invert(&self, a: &MultiPoly) -> Option<MultiPoly> {
        let c = a.constant_value()?;
        if c.is_zero() || !a.is_constant() {
            return None;
        }
        Some(MultiPoly::constant(&self.table, Q::one() / c))
    }
}

use super::poly::MultiPoly;
use super::symbol::SymbolTable;
use super::Q;
use num::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// A quotient of polynomials over a shared table. No multivariate gcd is
/// attempted; normalization is limited to rational content, opportunistic
/// exact division, and a canonical sign on the denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFraction {
    num: MultiPoly,
    den: MultiPoly,
}

impl PolyFraction {
    pub fn from_poly(num: MultiPoly) -> Self {
        let den = MultiPoly::one(num.table());
        PolyFraction { num, den }
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let mut f = PolyFraction { num, den };
        f.reduce();
        Some(f)
    }

    pub fn constant(table: &Arc<SymbolTable>, c: Q) -> Self {
        PolyFraction::from_poly(MultiPoly::constant(table, c))
    }

    pub fn zero(table: &Arc<SymbolTable>) -> Self {
        PolyFraction::constant(table, Q::zero())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        self.num.table()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_unit_constant()
    }

    /// The polynomial value when the denominator is a nonzero constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&(Q::one() / c)))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.num.table());
            return;
        }
        if let Some(q) = self.num.exact_div(&self.den) {
            self.num = q;
            self.den = MultiPoly::one(self.num.table());
            return;
        }
        if let Some(c) = self.den.constant_value() {
            self.num = self.num.scale(&(Q::one() / c));
            self.den = MultiPoly::one(self.num.table());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        PolyFraction::new(num, den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PolyFraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        PolyFraction::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominators")
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.num.is_zero() {
            return None;
        }
        PolyFraction::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        PolyFraction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Quotient-rule derivative. When the denominator is constant this stays
    /// denominator-free.
    pub fn derivative(&self, var: usize) -> Self {
        if self.den.is_unit_constant() {
            let mut d = PolyFraction::from_poly(self.num.derivative(var));
            d.num = d.num.scale(&(Q::one() / self.den.constant_value().unwrap()));
            return d;
        }
        let num = self
            .num
            .derivative(var)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(var)));
        let den = self.den.mul(&self.den);
        PolyFraction::new(num, den).expect("nonzero denominator")
    }

    /// Evaluates at a rational point; `None` when the denominator vanishes.
    pub fn eval(&self, point: &[Q]) -> Option<Q> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Cross-multiplied equality: a/b == c/d iff a*d - c*b == 0.
    pub fn equal(&self, other: &Self) -> bool {
        self.cross_difference(other).is_zero()
    }

    /// The polynomial a*d - c*b whose vanishing (possibly modulo a relation
    /// ideal) expresses equality of the two fractions.
    pub fn cross_difference(&self, other: &Self) -> MultiPoly {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den))
    }
}

impl fmt::Display for PolyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_unit_constant() && self.den.constant_value().unwrap().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_fraction;

    #[test]
    fn arithmetic_and_equality() {
        let t = SymbolTable::new(vec!["x"]);
        let a = parse_fraction(&t, "1/x").unwrap();
        let b = parse_fraction(&t, "1/(1-x)").unwrap();
        let s = a.add(&b);
        let expect = parse_fraction(&t, "1/(x*(1-x))").unwrap();
        assert!(s.equal(&expect));
    }

    #[test]
    fn derivative_quotient_rule() {
        let t = SymbolTable::new(vec!["x"]);
        let f = parse_fraction(&t, "1/x").unwrap();
        let d = f.derivative(0);
        let expect = parse_fraction(&t, "-1/(x^2)").unwrap();
        assert!(d.equal(&expect));
    }

    #[test]
    fn opportunistic_reduction() {
        let t = SymbolTable::new(vec!["x"]);
        let f = parse_fraction(&t, "(x^2 - 1)/(x - 1)").unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.num().to_string(), "x + 1");
    }
}

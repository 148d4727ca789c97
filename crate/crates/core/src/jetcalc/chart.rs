use super::ring::{CoeffRing, PolyRing, QQ};
use super::series::TruncSeries;
use super::JetError;
use crate::exactalg::{MultiPoly, PolyFraction, SymbolTable, Q};
use num::Zero;
use std::sync::Arc;

/// Affine chart: coordinate symbols, relation ideal generators, and declared
/// units (polynomials required to be invertible on the chart).
#[derive(Debug, Clone)]
pub struct Chart {
    pub table: Arc<SymbolTable>,
    pub relations: Vec<MultiPoly>,
    pub units: Vec<MultiPoly>,
}

impl Chart {
    pub fn affine(table: &Arc<SymbolTable>) -> Self {
        Chart {
            table: table.clone(),
            relations: Vec::new(),
            units: Vec::new(),
        }
    }

    pub fn new(table: &Arc<SymbolTable>, relations: Vec<MultiPoly>, units: Vec<MultiPoly>) -> Self {
        Chart {
            table: table.clone(),
            relations: relations.into_iter().filter(|p| !p.is_zero()).collect(),
            units,
        }
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    /// Checks that a rational point satisfies the relations and keeps every
    /// declared unit nonzero.
    pub fn admits_point(&self, point: &[Q]) -> bool {
        self.relations.iter().all(|g| g.eval(point).is_zero())
            && self.units.iter().all(|u| !u.eval(point).is_zero())
    }
}

/// A point of the jet space of a chart: one truncated series per chart
/// variable. The constant terms are the base point.
#[derive(Debug, Clone)]
pub struct Jet {
    pub chart: Chart,
    d: usize,
    order: u32,
    coords: Vec<TruncSeries<Q>>,
}

impl Jet {
    /// Builds a jet and validates its base point against the chart: the
    /// relations vanish there and the units do not. Whether the full series
    /// satisfies the prolonged relations is a separate check
    /// (`is_on_variety`).
    pub fn new(
        chart: Chart,
        d: usize,
        order: u32,
        coords: Vec<TruncSeries<Q>>,
    ) -> Result<Self, JetError> {
        if coords.len() != chart.nvars() {
            return Err(JetError::CoordinateCount {
                expected: chart.nvars(),
                got: coords.len(),
            });
        }
        for s in &coords {
            if s.d() != d || s.order() != order {
                return Err(JetError::DiskMismatch);
            }
        }
        let jet = Jet {
            chart,
            d,
            order,
            coords,
        };
        let base = jet.base_point();
        for g in &jet.chart.relations {
            if !g.eval(&base).is_zero() {
                return Err(JetError::BaseOffVariety(g.to_string()));
            }
        }
        for u in &jet.chart.units {
            if u.eval(&base).is_zero() {
                return Err(JetError::BasedAtPole(u.to_string()));
            }
        }
        Ok(jet)
    }

    /// The constant jet at a rational point of the chart.
    pub fn constant(chart: Chart, d: usize, order: u32, point: &[Q]) -> Result<Self, JetError> {
        let ring = QQ;
        let coords = point
            .iter()
            .map(|v| TruncSeries::constant(&ring, d, order, v.clone()))
            .collect();
        Jet::new(chart, d, order, coords)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[TruncSeries<Q>] {
        &self.coords
    }

    pub fn coord(&self, var: usize) -> &TruncSeries<Q> {
        &self.coords[var]
    }

    pub fn base_point(&self) -> Vec<Q> {
        let ring = QQ;
        self.coords
            .iter()
            .map(|s| s.constant_term(&ring))
            .collect()
    }

    /// Restriction along the fixed embedding chain of disks: sets the disk
    /// variables beyond `e` to zero.
    pub fn restrict(&self, e: usize) -> Jet {
        assert!(e <= self.d);
        Jet {
            chart: self.chart.clone(),
            d: e,
            order: self.order,
            coords: self.coords.iter().map(|s| s.restrict(e)).collect(),
        }
    }

    /// Truncation to a lower order; the image under the projection of jet
    /// spaces.
    pub fn truncate(&self, order: u32) -> Jet {
        Jet {
            chart: self.chart.clone(),
            d: self.d,
            order: order.min(self.order),
            coords: self.coords.iter().map(|s| s.truncate(order)).collect(),
        }
    }

    /// True iff every generator composes to the zero series along this jet.
    pub fn is_on_variety(&self, gens: &[MultiPoly]) -> bool {
        let ring = QQ;
        gens.iter()
            .all(|g| compose_poly(&ring, g, &self.coords).is_zero())
    }
}

/// Evaluates a polynomial on an assignment of series to its variables,
/// truncating at the series order. Power tables keep repeated exponents
/// cheap.
pub fn compose_poly<R: CoeffRing>(
    ring: &R,
    p: &MultiPoly,
    coords: &[TruncSeries<R::Elem>],
) -> TruncSeries<R::Elem> {
    let (d, order) = match coords.first() {
        Some(s) => (s.d(), s.order()),
        None => (0, 0),
    };
    let mut acc = TruncSeries::zero(d, order);
    let nvars = p.table().len();
    assert!(coords.len() >= nvars, "assignment must cover the chart");
    // cache powers per variable
    let mut powers: Vec<Vec<TruncSeries<R::Elem>>> = (0..nvars)
        .map(|_| vec![TruncSeries::constant(ring, d, order, ring.one())])
        .collect();
    for (mono, coef) in p.terms() {
        let mut term = TruncSeries::constant(ring, d, order, ring.from_rational(coef));
        for (i, &e) in mono.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(ring, &coords[i]);
                powers[i].push(next);
            }
            term = term.mul(ring, &powers[i][e as usize]);
        }
        acc = acc.add(ring, &term);
    }
    acc
}

/// Composes a fraction along a rational jet. The denominator is inverted by
/// truncated geometric series; a vanishing constant term is a pole at the
/// jet's base point.
pub fn compose_fraction(f: &PolyFraction, jet: &Jet) -> Result<TruncSeries<Q>, JetError> {
    let ring = QQ;
    let num = compose_poly(&ring, f.num(), jet.coords());
    if f.is_polynomial() {
        let c = f.den().constant_value().unwrap();
        return Ok(num.scale(&ring, &(Q::from(num::BigInt::from(1)) / c)));
    }
    let den = compose_poly(&ring, f.den(), jet.coords());
    let inv = den
        .invert(&ring)
        .ok_or_else(|| JetError::BasedAtPole(f.den().to_string()))?;
    Ok(num.mul(&ring, &inv))
}

/// Composes a fraction along symbolic coordinates, with an explicit seed for
/// the denominator's constant term (an inverse variable of the ambient
/// system).
pub fn compose_fraction_with_seed(
    ring: &PolyRing,
    f: &PolyFraction,
    coords: &[TruncSeries<MultiPoly>],
    seed: MultiPoly,
) -> TruncSeries<MultiPoly> {
    let num = compose_poly(ring, f.num(), coords);
    if f.is_polynomial() {
        let c = f.den().constant_value().unwrap();
        let inv = ring.from_rational(&(num::BigRational::from(num::BigInt::from(1)) / c));
        return num.scale(ring, &inv);
    }
    let den = compose_poly(ring, f.den(), coords);
    let inv = den.invert_with_seed(ring, seed);
    num.mul(ring, &inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_fraction, parse_poly};
    use num::BigInt;

    fn q(n: i64) -> Q {
        Q::from(BigInt::from(n))
    }

    fn chart_xy() -> Chart {
        let t = SymbolTable::new(vec!["x", "y"]);
        Chart::affine(&t)
    }

    #[test]
    fn square_of_shifted_variable() {
        // x = 1 + t composed into x^2 gives 1 + 2t + t^2
        let ring = QQ;
        let chart = chart_xy();
        let one = TruncSeries::constant(&ring, 1, 2, q(1));
        let t = TruncSeries::disk_var(&ring, 1, 2, 0);
        let x = one.add(&ring, &t);
        let y = TruncSeries::zero(1, 2);
        let jet = Jet::new(chart.clone(), 1, 2, vec![x, y]).unwrap();
        let p = parse_poly(&chart.table, "x^2").unwrap();
        let s = compose_poly(&ring, &p, jet.coords());
        assert_eq!(s.coeff(&ring, &[0]), q(1));
        assert_eq!(s.coeff(&ring, &[1]), q(2));
        assert_eq!(s.coeff(&ring, &[2]), q(1));
    }

    #[test]
    fn reciprocal_along_jet() {
        let ring = QQ;
        let chart = chart_xy();
        let one = TruncSeries::constant(&ring, 1, 2, q(1));
        let t = TruncSeries::disk_var(&ring, 1, 2, 0);
        let x = one.add(&ring, &t);
        let jet = Jet::new(chart.clone(), 1, 2, vec![x, TruncSeries::zero(1, 2)]).unwrap();
        let f = parse_fraction(&chart.table, "1/x").unwrap();
        let s = compose_fraction(&f, &jet).unwrap();
        assert_eq!(s.coeff(&ring, &[0]), q(1));
        assert_eq!(s.coeff(&ring, &[1]), q(-1));
        assert_eq!(s.coeff(&ring, &[2]), q(1));
    }

    #[test]
    fn pole_detected() {
        let ring = QQ;
        let chart = chart_xy();
        let t = TruncSeries::disk_var(&ring, 1, 2, 0);
        let jet = Jet::new(chart.clone(), 1, 2, vec![t, TruncSeries::zero(1, 2)]).unwrap();
        let f = parse_fraction(&chart.table, "1/x").unwrap();
        assert!(matches!(
            compose_fraction(&f, &jet),
            Err(JetError::BasedAtPole(_))
        ));
    }

    #[test]
    fn degree_two_term_truncates_at_order_one() {
        let ring = QQ;
        let chart = chart_xy();
        let t1 = TruncSeries::disk_var(&ring, 2, 1, 0);
        let t2 = TruncSeries::disk_var(&ring, 2, 1, 1);
        let jet = Jet::new(chart.clone(), 2, 1, vec![t1, t2]).unwrap();
        let p = parse_poly(&chart.table, "x*y").unwrap();
        assert!(compose_poly(&ring, &p, jet.coords()).is_zero());
    }

    #[test]
    fn jet_on_parabola() {
        let ring = QQ;
        let chart = chart_xy();
        let one = TruncSeries::constant(&ring, 1, 2, q(1));
        let t = TruncSeries::disk_var(&ring, 1, 2, 0);
        let x = one.add(&ring, &t);
        let y = compose_poly(&ring, &parse_poly(&chart.table, "x^2").unwrap(), &[x.clone(), TruncSeries::zero(1, 2)]);
        let jet = Jet::new(chart.clone(), 1, 2, vec![x, y]).unwrap();
        let gens = vec![parse_poly(&chart.table, "y - x^2").unwrap()];
        assert!(jet.is_on_variety(&gens));

        let bad = Jet::new(
            chart.clone(),
            1,
            2,
            vec![
                TruncSeries::disk_var(&ring, 1, 2, 0),
                TruncSeries::disk_var(&ring, 1, 2, 0),
            ],
        )
        .unwrap();
        assert!(!bad.is_on_variety(&gens));
    }
}

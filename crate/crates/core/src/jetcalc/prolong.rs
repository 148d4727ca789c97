use super::chart::{compose_poly, Chart, Jet};
use super::ring::{PolyRing, QQ};
use super::series::{disk_basis, TruncSeries};
use super::JetError;
use crate::exactalg::{MultiPoly, SymbolTable, Q};
use std::sync::Arc;

/// Name of the jet coordinate carrying the `alpha` coefficient of a base
/// variable. `#` cannot occur in user identifiers, so these never collide.
pub fn jet_var_name(base: &str, alpha: &[u32]) -> String {
    let idx: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
    format!("{}#{}", base, idx.join(","))
}

/// The jet space of an affine chart, realized by coordinates `x_{i,alpha}`
/// and the prolonged relation ideal: substituting
/// `x_i -> sum_alpha x_{i,alpha} t^alpha` into each base relation and
/// collecting the `t^alpha` coefficients.
#[derive(Debug, Clone)]
pub struct JetChartSpace {
    pub base: Chart,
    pub d: usize,
    pub order: u32,
    /// Jet coordinates, one per (base variable, multi-index), in
    /// (variable-major, graded-lex) order.
    pub table: Arc<SymbolTable>,
    /// Multi-index layout shared by all variables.
    pub basis: Vec<Vec<u32>>,
    /// Prolonged relation ideal generators.
    pub ideal: Vec<MultiPoly>,
    /// Base units evaluated at the order-zero jet coordinates; a jet stays
    /// on the chart iff these are invertible.
    pub units0: Vec<MultiPoly>,
    /// The tautological series assignment `x_i -> sum x_{i,alpha} t^alpha`.
    pub generic_point: Vec<TruncSeries<MultiPoly>>,
}

impl JetChartSpace {
    /// Index into the jet table of coordinate `(var, alpha_position)`.
    pub fn jet_var(&self, var: usize, alpha_pos: usize) -> usize {
        var * self.basis.len() + alpha_pos
    }

    /// The jet coordinate for the linear coefficient of disk variable `a`.
    pub fn linear_var(&self, var: usize, a: usize) -> usize {
        let mut unit = vec![0u32; self.d];
        unit[a] = 1;
        let pos = self
            .basis
            .iter()
            .position(|m| *m == unit)
            .expect("order >= 1 has linear indices");
        self.jet_var(var, pos)
    }

    /// Evaluates a rational jet into an assignment of the jet coordinates.
    pub fn assignment_of_jet(&self, jet: &Jet) -> Vec<Q> {
        let ring = QQ;
        let mut out = Vec::with_capacity(self.table.len());
        for v in 0..self.base.nvars() {
            for alpha in &self.basis {
                out.push(jet.coord(v).coeff(&ring, alpha));
            }
        }
        out
    }
}

/// Prolongs a chart to its `(d, r)` jet space.
pub fn prolong_ideal(base: &Chart, d: usize, order: u32) -> JetChartSpace {
    let basis = disk_basis(d, order);
    let mut names = Vec::with_capacity(base.nvars() * basis.len());
    for v in 0..base.nvars() {
        for alpha in &basis {
            names.push(jet_var_name(base.table.name(v), alpha));
        }
    }
    let table = SymbolTable::new(names);
    let ring = PolyRing::new(&table);

    let generic_point: Vec<TruncSeries<MultiPoly>> = (0..base.nvars())
        .map(|v| {
            let entries = basis
                .iter()
                .enumerate()
                .map(|(k, alpha)| {
                    (
                        alpha.clone(),
                        MultiPoly::var(&table, v * basis.len() + k),
                    )
                })
                .collect();
            TruncSeries::from_coeffs(&ring, d, order, entries)
        })
        .collect();

    let mut ideal = Vec::new();
    for g in &base.relations {
        let s = compose_poly(&ring, g, &generic_point);
        for alpha in &basis {
            let c = s.coeff(&ring, alpha);
            if !c.is_zero() {
                ideal.push(c);
            }
        }
    }

    let order0: Vec<(usize, usize)> = (0..base.nvars()).map(|v| (v, v * basis.len())).collect();
    let units0 = base
        .units
        .iter()
        .map(|u| {
            let map: Vec<usize> = order0.iter().map(|&(_, j)| j).collect();
            u.embed(&table, &map)
        })
        .collect();

    JetChartSpace {
        base: base.clone(),
        d,
        order,
        table,
        basis,
        ideal,
        units0,
        generic_point,
    }
}

/// The minor family whose non-vanishing cuts out jets that are injective on
/// tangent spaces in the first `e` disk variables: all `e x e` minors of the
/// linear-part matrix `[x_{i, unit_a}]` for `a <= e`. An empty family (more
/// required directions than ambient dimensions allow) means no jet
/// qualifies.
pub fn nondegeneracy_stratum(space: &JetChartSpace, e: usize) -> Result<Vec<MultiPoly>, JetError> {
    if space.order == 0 {
        return Err(JetError::NoLinearPart);
    }
    if e == 0 || e > space.d {
        return Err(JetError::BadRestriction {
            e,
            d: space.d,
        });
    }
    let nvars = space.base.nvars();
    // rows: base variables; columns: first e disk directions
    let entry = |i: usize, a: usize| MultiPoly::var(&space.table, space.linear_var(i, a));
    if e > nvars {
        return Ok(Vec::new());
    }
    let mut minors = Vec::new();
    let rows: Vec<usize> = (0..nvars).collect();
    for combo in combinations(&rows, e) {
        let m: Vec<Vec<MultiPoly>> = combo
            .iter()
            .map(|&i| (0..e).map(|a| entry(i, a)).collect())
            .collect();
        let det = poly_det(&m);
        if !det.is_zero() {
            minors.push(det);
        }
    }
    Ok(minors)
}

/// Determinant of a small square polynomial matrix by cofactor expansion.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let table = m[0][0].table().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(&table);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cof = m[0][j].mul(&poly_det(&minor));
        acc = if j % 2 == 0 { acc.add(&cof) } else { acc.sub(&cof) };
    }
    acc
}

pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn parabola_chart() -> Chart {
        let t = SymbolTable::new(vec!["x", "y"]);
        Chart::new(&t, vec![parse_poly(&t, "x^2 - y").unwrap()], Vec::new())
    }

    #[test]
    fn prolong_parabola_order_one() {
        // expanding (x0 + x1 t)^2 - (y0 + y1 t): {x0^2 - y0, 2 x0 x1 - y1}
        let space = prolong_ideal(&parabola_chart(), 1, 1);
        let strs: Vec<String> = space.ideal.iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["x#0^2 - y#0", "2*x#0*x#1 - y#1"]);
    }

    #[test]
    fn prolong_free_space() {
        let t = SymbolTable::new(vec!["u", "v", "w"]);
        let space = prolong_ideal(&Chart::affine(&t), 2, 2);
        assert!(space.ideal.is_empty());
        assert_eq!(space.table.len(), 3 * 6);
    }

    #[test]
    fn order_zero_recovers_base() {
        let space = prolong_ideal(&parabola_chart(), 1, 0);
        let strs: Vec<String> = space.ideal.iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["x#0^2 - y#0"]);
        assert_eq!(space.table.len(), 2);
    }

    #[test]
    fn nondegeneracy_families() {
        // plane, one disk variable: minors are the two linear coordinates
        let t = SymbolTable::new(vec!["x", "y"]);
        let space = prolong_ideal(&Chart::affine(&t), 1, 1);
        let fam = nondegeneracy_stratum(&space, 1).unwrap();
        let strs: Vec<String> = fam.iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["x#1", "y#1"]);

        // line, two disk variables: a 2x2 minor of a 1x2 matrix is empty
        let t1 = SymbolTable::new(vec!["x"]);
        let space1 = prolong_ideal(&Chart::affine(&t1), 2, 1);
        assert!(nondegeneracy_stratum(&space1, 2).unwrap().is_empty());

        // three-space, two disk variables: three 2x2 minors
        let t3 = SymbolTable::new(vec!["x", "y", "z"]);
        let space3 = prolong_ideal(&Chart::affine(&t3), 2, 1);
        assert_eq!(nondegeneracy_stratum(&space3, 2).unwrap().len(), 3);
    }

    #[test]
    fn r_zero_has_no_linear_part() {
        let space = prolong_ideal(&parabola_chart(), 1, 0);
        assert!(matches!(
            nondegeneracy_stratum(&space, 1),
            Err(JetError::NoLinearPart)
        ));
    }

    #[test]
    fn prolonged_membership_matches_composition() {
        let ring = QQ;
        let chart = parabola_chart();
        let space = prolong_ideal(&chart, 1, 2);
        // jet on the parabola through (1, 1)
        let one = TruncSeries::constant(&ring, 1, 2, Q::from(num::BigInt::from(1)));
        let t = TruncSeries::disk_var(&ring, 1, 2, 0);
        let x = one.add(&ring, &t);
        let y = x.mul(&ring, &x);
        let jet = Jet::new(chart.clone(), 1, 2, vec![x, y]).unwrap();
        let assign = space.assignment_of_jet(&jet);
        assert!(space.ideal.iter().all(|g| g.eval(&assign).is_zero()));
        assert!(jet.is_on_variety(&chart.relations));
    }
}

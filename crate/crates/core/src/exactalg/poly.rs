use super::symbol::SymbolTable;
use super::{ExactError, Q};
use num::{BigInt, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// One sparse term: exponent vector plus a nonzero rational coefficient.
pub type Term = (Vec<u32>, Q);

/// Graded reverse lexicographic comparison of exponent vectors.
///
/// `a > b` when `deg a > deg b`, or degrees tie and the rightmost nonzero
/// entry of `a - b` is negative.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // rightmost difference: smaller exponent there means larger monomial
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// Monomial orders used by the Groebner engine. `Grevlex` is the canonical
/// order; `Block` compares the flagged variables first (by grevlex among
/// themselves) and is the elimination order for those variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Block { eliminate: Vec<bool> },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex_cmp(a, b),
            MonomialOrder::Block { eliminate } => {
                debug_assert_eq!(eliminate.len(), a.len());
                let proj = |m: &[u32], flag: bool| -> Vec<u32> {
                    m.iter()
                        .zip(eliminate.iter())
                        .map(|(&e, &f)| if f == flag { e } else { 0 })
                        .collect()
                };
                let (ea, eb) = (proj(a, true), proj(b, true));
                match grevlex_cmp(&ea, &eb) {
                    Ordering::Equal => {
                        let (ka, kb) = (proj(a, false), proj(b, false));
                        grevlex_cmp(&ka, &kb)
                    }
                    o => o,
                }
            }
        }
    }
}

/// Sparse multivariate polynomial over exact rationals.
///
/// Invariants: no zero coefficients are stored; terms are kept sorted in
/// descending grevlex order, which fixes a canonical serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    table: Arc<SymbolTable>,
    terms: Vec<Term>,
}

impl MultiPoly {
    pub fn zero(table: &Arc<SymbolTable>) -> Self {
        MultiPoly {
            table: table.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(table: &Arc<SymbolTable>, c: Q) -> Self {
        let mut p = MultiPoly::zero(table);
        if !c.is_zero() {
            p.terms.push((vec![0; table.len()], c));
        }
        p
    }

    pub fn one(table: &Arc<SymbolTable>) -> Self {
        MultiPoly::constant(table, Q::one())
    }

    pub fn from_int(table: &Arc<SymbolTable>, n: i64) -> Self {
        MultiPoly::constant(table, Q::from(BigInt::from(n)))
    }

    pub fn var(table: &Arc<SymbolTable>, idx: usize) -> Self {
        assert!(idx < table.len());
        let mut m = vec![0; table.len()];
        m[idx] = 1;
        MultiPoly {
            table: table.clone(),
            terms: vec![(m, Q::one())],
        }
    }

    pub fn var_named(table: &Arc<SymbolTable>, name: &str) -> Result<Self, ExactError> {
        let idx = table
            .position(name)
            .ok_or_else(|| ExactError::UnknownVariable(name.to_string()))?;
        Ok(MultiPoly::var(table, idx))
    }

    /// Builds from raw terms (deduplicates, drops zeros, sorts).
    pub fn from_terms(table: &Arc<SymbolTable>, terms: Vec<Term>) -> Self {
        let mut p = MultiPoly {
            table: table.clone(),
            terms,
        };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.terms.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        self.terms = out;
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// True for a nonzero constant, i.e. a unit of the polynomial ring.
    pub fn is_unit_constant(&self) -> bool {
        self.is_constant() && !self.is_zero()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[var]).max().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let n = self.table.len();
        let mut seen = vec![false; n];
        for (m, _) in &self.terms {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }

    pub fn assert_same_table(&self, other: &MultiPoly) -> Result<(), ExactError> {
        if SymbolTable::same(&self.table, &other.table) {
            Ok(())
        } else {
            Err(ExactError::IncompatibleTables)
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert!(SymbolTable::same(&self.table, &other.table));
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MultiPoly::from_terms(&self.table, terms)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert!(SymbolTable::same(&self.table, &other.table));
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Vec<u32> = ma.iter().zip(mb.iter()).map(|(&a, &b)| a + b).collect();
                terms.push((m, ca * cb));
            }
        }
        MultiPoly::from_terms(&self.table, terms)
    }

    pub fn mul_term(&self, mono: &[u32], coef: &Q) -> MultiPoly {
        if coef.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        MultiPoly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.iter().zip(mono.iter()).map(|(&a, &b)| a + b).collect(),
                        c * coef,
                    )
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.table);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[var] -= 1;
            terms.push((m2, c * Q::from(BigInt::from(m[var]))));
        }
        MultiPoly::from_terms(&self.table, terms)
    }

    /// Leading term under `order`. Terms are stored in grevlex order, so for
    /// other orders this scans.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&Term> {
        match order {
            MonomialOrder::Grevlex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0)),
        }
    }

    /// Divides by leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Q::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Exact division by `d`; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            if c.is_zero() {
                return None;
            }
            return Some(self.scale(&(Q::one() / c)));
        }
        let order = MonomialOrder::Grevlex;
        let (dm, dc) = d.leading_term(&order).unwrap().clone();
        let mut rem = self.clone();
        let mut quo_terms: Vec<Term> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.terms.first().unwrap().clone();
            if !divides(&dm, &rm) {
                return None;
            }
            let qm: Vec<u32> = rm.iter().zip(dm.iter()).map(|(&a, &b)| a - b).collect();
            let qc = rc / dc.clone();
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quo_terms.push((qm, qc));
        }
        Some(MultiPoly::from_terms(&self.table, quo_terms))
    }

    /// Full evaluation at a rational point (values indexed like the table).
    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= point[i].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embeds into a larger table; `var_map[i]` is the index in
    /// `new_table` of this polynomial's variable `i`.
    pub fn embed(&self, new_table: &Arc<SymbolTable>, var_map: &[usize]) -> MultiPoly {
        let n = new_table.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = vec![0u32; n];
                for (i, &e) in m.iter().enumerate() {
                    m2[var_map[i]] += e;
                }
                (m2, c.clone())
            })
            .collect();
        MultiPoly::from_terms(new_table, terms)
    }

    /// Re-embeds by matching variable names; errors when a used variable is
    /// absent from the new table.
    pub fn embed_by_name(&self, new_table: &Arc<SymbolTable>) -> Result<MultiPoly, ExactError> {
        let mut var_map = vec![0usize; self.table.len()];
        for i in self.support() {
            var_map[i] = new_table
                .position(self.table.name(i))
                .ok_or_else(|| ExactError::UnknownVariable(self.table.name(i).to_string()))?;
        }
        Ok(self.embed(new_table, &var_map))
    }

    /// Substitutes rational values for a subset of variables, producing a
    /// polynomial over the same table.
    pub fn substitute_values(&self, values: &[(usize, Q)]) -> MultiPoly {
        let mut val = vec![None; self.table.len()];
        for (i, q) in values {
            val[*i] = Some(q.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let mut c2 = c.clone();
                for (i, slot) in val.iter().enumerate() {
                    if let Some(q) = slot {
                        for _ in 0..m2[i] {
                            c2 *= q.clone();
                        }
                        m2[i] = 0;
                    }
                }
                (m2, c2)
            })
            .collect();
        MultiPoly::from_terms(&self.table, terms)
    }

    /// Clears rational denominators and integer content; the result is an
    /// integer-coefficient polynomial spanning the same ideal member, with a
    /// sign normalization on the grevlex leading coefficient.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = num::integer::lcm(den, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            num_gcd = num::integer::gcd(num_gcd, n);
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        let mut p = self.scale(&Q::new(den, num_gcd));
        if p.terms[0].1.is_negative() {
            p = p.neg();
        }
        p
    }
}

pub(crate) fn divides(d: &[u32], m: &[u32]) -> bool {
    d.iter().zip(m.iter()).all(|(&a, &b)| a <= b)
}

pub(crate) fn mono_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b.iter()).map(|(&x, &y)| x.max(y)).collect()
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Q) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: grevlex-descending terms, explicit `p/q`
    /// rationals, `*` between factors, `^` for exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_term = m.iter().all(|&e| e == 0);
            if is_const_term {
                write_coeff(f, &mag)?;
                continue;
            }
            let mut lead = true;
            if !mag.is_one() {
                write_coeff(f, &mag)?;
                lead = false;
            }
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !lead {
                    write!(f, "*")?;
                }
                lead = false;
                write!(f, "{}", self.table.name(i))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn q(n: i64) -> Q {
        Q::from(BigInt::from(n))
    }

    #[test]
    fn grevlex_orders_variables() {
        // x > y > z in grevlex
        assert_eq!(grevlex_cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[0, 1, 0], &[0, 0, 1]), Ordering::Greater);
        // x*z vs y^2: deg tie, rightmost diff at z: x*z smaller
        assert_eq!(grevlex_cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn display_is_canonical() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let p = parse_poly(&t, "y - 3/2*x + x^2*y - 1").unwrap();
        assert_eq!(p.to_string(), "x^2*y - 3/2*x + y - 1");
        let back = parse_poly(&t, &p.to_string()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn arithmetic_basics() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let x = MultiPoly::var(&t, 0);
        let y = MultiPoly::var(&t, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, expect);
        assert_eq!(p.derivative(0), x.scale(&q(2)));
    }

    #[test]
    fn exact_division() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let p = parse_poly(&t, "x^2*y - y^3").unwrap();
        let d = parse_poly(&t, "x - y").unwrap();
        let quo = p.exact_div(&d).unwrap();
        assert_eq!(quo, parse_poly(&t, "x*y + y^2").unwrap());
        assert!(parse_poly(&t, "x^2 + 1").unwrap().exact_div(&d).is_none());
    }

    #[test]
    fn primitive_part_clears_content() {
        let t = SymbolTable::new(vec!["x"]);
        let p = parse_poly(&t, "-2/3*x^2 - 4/3").unwrap();
        assert_eq!(p.primitive_part().to_string(), "x^2 + 2");
    }
}

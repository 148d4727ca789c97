use super::groebner::{groebner, normal_form, reduce_basis};
use super::poly::{MonomialOrder, MultiPoly};
use super::symbol::SymbolTable;
use super::{Budget, ExactError};
use std::sync::Arc;

/// Finitely generated ideal over a shared symbol table. Zero generators are
/// dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    table: Arc<SymbolTable>,
    gens: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(table: &Arc<SymbolTable>, gens: Vec<MultiPoly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            table: table.clone(),
            gens,
        }
    }

    pub fn zero(table: &Arc<SymbolTable>) -> Self {
        Ideal::new(table, Vec::new())
    }

    pub fn unit(table: &Arc<SymbolTable>) -> Self {
        Ideal::new(table, vec![MultiPoly::one(table)])
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Groebner basis under `order`; deterministic for fixed input.
    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        budget: &Budget,
    ) -> Result<Vec<MultiPoly>, ExactError> {
        groebner(&self.gens, order, budget)
    }

    /// Whether the ideal is the whole ring, decided by a basis computation.
    pub fn is_unit_ideal(&self, budget: &Budget) -> Result<bool, ExactError> {
        if self.gens.iter().any(|g| g.is_unit_constant()) {
            return Ok(true);
        }
        let gb = self.groebner_basis(&MonomialOrder::Grevlex, budget)?;
        Ok(gb.len() == 1 && gb[0].is_unit_constant())
    }

    /// Ideal membership via normal form against a fresh basis.
    pub fn contains(&self, f: &MultiPoly, budget: &Budget) -> Result<bool, ExactError> {
        let gb = self.groebner_basis(&MonomialOrder::Grevlex, budget)?;
        Ok(normal_form(f, &gb, &MonomialOrder::Grevlex).is_zero())
    }

    /// Canonical serialization: reduced grevlex basis, one string per
    /// generator.
    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    /// Re-embeds all generators into another table by variable name.
    pub fn embed_by_name(&self, table: &Arc<SymbolTable>) -> Result<Ideal, ExactError> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embed_by_name(table))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(table, gens))
    }
}

/// Restricts a basis to the polynomials supported on the original table
/// after an elimination computation over `table + aux`.
fn project_out_aux(
    basis: &[MultiPoly],
    original: &Arc<SymbolTable>,
    aux: &[usize],
) -> Result<Vec<MultiPoly>, ExactError> {
    let mut kept = Vec::new();
    for g in basis {
        if g.support().iter().any(|i| aux.contains(i)) {
            continue;
        }
        kept.push(g.embed_by_name(original)?);
    }
    Ok(kept)
}

fn elimination_order(n: usize, eliminate_idx: &[usize]) -> MonomialOrder {
    let mut flags = vec![false; n];
    for &i in eliminate_idx {
        flags[i] = true;
    }
    MonomialOrder::Block { eliminate: flags }
}

/// Saturation `I : g^infinity` for a single polynomial via the Rabinowitsch
/// trick: eliminate `t` from `I + (1 - t*g)`.
fn saturate_single(i: &Ideal, g: &MultiPoly, budget: &Budget) -> Result<Ideal, ExactError> {
    if g.is_zero() {
        return Ok(Ideal::unit(&i.table));
    }
    if g.is_unit_constant() {
        let gb = i.groebner_basis(&MonomialOrder::Grevlex, budget)?;
        return Ok(Ideal::new(&i.table, gb));
    }
    let tname = i.table.fresh_name("t@sat");
    let (ext, aux) = i.table.extend(vec![tname]);
    let t = MultiPoly::var(&ext, aux[0]);
    let mut gens: Vec<MultiPoly> = i
        .gens
        .iter()
        .map(|p| p.embed_by_name(&ext))
        .collect::<Result<_, _>>()?;
    let ge = g.embed_by_name(&ext)?;
    gens.push(MultiPoly::one(&ext).sub(&t.mul(&ge)));
    let order = elimination_order(ext.len(), &aux);
    let gb = groebner(&gens, &order, budget)?;
    let kept = project_out_aux(&gb, &i.table, &aux)?;
    Ok(Ideal::new(
        &i.table,
        reduce_basis(kept, &MonomialOrder::Grevlex),
    ))
}

/// Intersection of two ideals over the same table, via `t*A + (1-t)*B` and
/// elimination of `t`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Ideal, ExactError> {
    let tname = a.table.fresh_name("t@cap");
    let (ext, aux) = a.table.extend(vec![tname]);
    let t = MultiPoly::var(&ext, aux[0]);
    let one_minus_t = MultiPoly::one(&ext).sub(&t);
    let mut gens = Vec::new();
    for p in &a.gens {
        gens.push(t.mul(&p.embed_by_name(&ext)?));
    }
    for p in &b.gens {
        gens.push(one_minus_t.mul(&p.embed_by_name(&ext)?));
    }
    let order = elimination_order(ext.len(), &aux);
    let gb = groebner(&gens, &order, budget)?;
    let kept = project_out_aux(&gb, &a.table, &aux)?;
    Ok(Ideal::new(
        &a.table,
        reduce_basis(kept, &MonomialOrder::Grevlex),
    ))
}

/// Saturation `I : J^infinity`. For multi-generator `J` this is the
/// intersection of the single-generator saturations; stable under further
/// quotient by `J`.
pub fn saturate(i: &Ideal, j: &Ideal, budget: &Budget) -> Result<Ideal, ExactError> {
    if !SymbolTable::same(&i.table, &j.table) {
        return Err(ExactError::IncompatibleTables);
    }
    let gens: Vec<&MultiPoly> = j.gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        // I : (0)^inf is the whole ring
        return Ok(Ideal::unit(&i.table));
    }
    let mut acc: Option<Ideal> = None;
    for g in gens {
        let s = saturate_single(i, g, budget)?;
        acc = Some(match acc {
            None => s,
            Some(prev) => intersect(&prev, &s, budget)?,
        });
    }
    Ok(acc.unwrap())
}

/// Elimination ideal `I âˆ© K[keep]`, returned over the same ambient table.
/// The generators of the result only involve the kept variables and form a
/// reduced grevlex basis of the elimination ideal.
pub fn eliminate(i: &Ideal, keep: &[usize], budget: &Budget) -> Result<Ideal, ExactError> {
    let n = i.table.len();
    for &k in keep {
        assert!(k < n, "keep index out of range");
    }
    let elim: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
    if elim.is_empty() {
        let gb = i.groebner_basis(&MonomialOrder::Grevlex, budget)?;
        return Ok(Ideal::new(&i.table, gb));
    }
    let order = elimination_order(n, &elim);
    let gb = groebner(&i.gens, &order, budget)?;
    let kept: Vec<MultiPoly> = gb
        .into_iter()
        .filter(|g| g.support().iter().all(|v| keep.contains(v)))
        .collect();
    Ok(Ideal::new(
        &i.table,
        reduce_basis(kept, &MonomialOrder::Grevlex),
    ))
}

/// Krull dimension of `V(I)`; `-1` for the unit ideal. Uses the standard
/// combinatorial rule: the dimension equals the largest set of variables
/// containing no leading-monomial support of a grevlex basis.
pub fn ideal_dimension(i: &Ideal, budget: &Budget) -> Result<i64, ExactError> {
    let n = i.table.len();
    assert!(n <= 63, "dimension search uses u64 bitmasks");
    let gb = i.groebner_basis(&MonomialOrder::Grevlex, budget)?;
    if gb.len() == 1 && gb[0].is_unit_constant() {
        return Ok(-1);
    }
    if gb.is_empty() {
        return Ok(n as i64);
    }
    let mut supports: Vec<u64> = gb
        .iter()
        .map(|g| {
            let m = &g.leading_term(&MonomialOrder::Grevlex).unwrap().0;
            m.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (v, _)| acc | (1 << v))
        })
        .collect();
    supports.sort();
    supports.dedup();
    // drop supports that contain another support: they impose no extra constraint
    let minimal: Vec<u64> = supports
        .iter()
        .filter(|&&s| !supports.iter().any(|&t| t != s && (t & s) == t))
        .copied()
        .collect();

    let full: u64 = if n == 63 { u64::MAX >> 1 } else { (1 << n) - 1 };
    let mut memo = std::collections::HashMap::new();
    fn rec(avail: u64, minimal: &[u64], memo: &mut std::collections::HashMap<u64, u32>) -> u32 {
        if let Some(&v) = memo.get(&avail) {
            return v;
        }
        let offending = minimal.iter().find(|&&s| (s & avail) == s);
        let result = match offending {
            None => avail.count_ones(),
            Some(&s) => {
                let mut best = 0;
                let mut bits = s;
                while bits != 0 {
                    let v = bits & bits.wrapping_neg();
                    bits ^= v;
                    best = best.max(rec(avail & !v, minimal, memo));
                }
                best
            }
        };
        memo.insert(avail, result);
        result
    }
    Ok(rec(full, &minimal, &mut memo) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn ideal(t: &Arc<SymbolTable>, gens: &[&str]) -> Ideal {
        Ideal::new(t, gens.iter().map(|s| parse_poly(t, s).unwrap()).collect())
    }

    #[test]
    fn saturate_removes_component() {
        // component removal: V(x*y) minus V(x) leaves V(y)
        let t = SymbolTable::new(vec!["x", "y"]);
        let s = saturate(&ideal(&t, &["x*y"]), &ideal(&t, &["x"]), &Budget::default()).unwrap();
        assert_eq!(s.to_strings(), vec!["y"]);
    }

    #[test]
    fn saturate_contained_gives_unit() {
        let t = SymbolTable::new(vec!["x"]);
        let s = saturate(&ideal(&t, &["x"]), &ideal(&t, &["x"]), &Budget::default()).unwrap();
        assert!(s.is_unit_ideal(&Budget::default()).unwrap());
    }

    #[test]
    fn saturate_disjoint_inequation_is_identity() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let s = saturate(&ideal(&t, &["x^2"]), &ideal(&t, &["y"]), &Budget::default()).unwrap();
        assert_eq!(s.to_strings(), vec!["x^2"]);
    }

    #[test]
    fn saturate_is_idempotent_and_grows() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let i = ideal(&t, &["x^2*y - x*y"]);
        let j = ideal(&t, &["x"]);
        let s1 = saturate(&i, &j, &Budget::default()).unwrap();
        let s2 = saturate(&s1, &j, &Budget::default()).unwrap();
        assert_eq!(s1, s2);
        // containment I ⊆ sat(I, J): each generator reduces to zero
        for g in i.generators() {
            assert!(s1.contains(g, &Budget::default()).unwrap());
        }
    }

    #[test]
    fn eliminate_twisted_cubic() {
        // projection of the twisted cubic to the (y, z) plane
        let t = SymbolTable::new(vec!["x", "y", "z"]);
        let i = ideal(&t, &["y - x^2", "z - x^3"]);
        let e = eliminate(&i, &[1, 2], &Budget::default()).unwrap();
        assert_eq!(e.to_strings(), vec!["y^3 - z^2"]);
    }

    #[test]
    fn eliminate_trivial_cases() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let e = eliminate(&ideal(&t, &["x - 1"]), &[1], &Budget::default()).unwrap();
        assert!(e.is_zero_ideal());
        let e = eliminate(&ideal(&t, &["1"]), &[1], &Budget::default()).unwrap();
        assert!(e.is_unit_ideal(&Budget::default()).unwrap());
    }

    #[test]
    fn eliminate_is_monotone() {
        let t = SymbolTable::new(vec!["x", "y", "z"]);
        let small = ideal(&t, &["y - x^2"]);
        let big = ideal(&t, &["y - x^2", "z - x^3"]);
        let es = eliminate(&small, &[1, 2], &Budget::default()).unwrap();
        let eb = eliminate(&big, &[1, 2], &Budget::default()).unwrap();
        for g in es.generators() {
            assert!(eb.contains(g, &Budget::default()).unwrap());
        }
    }

    #[test]
    fn dimensions() {
        let t = SymbolTable::new(vec!["x", "y", "z"]);
        assert_eq!(ideal_dimension(&Ideal::zero(&t), &Budget::default()).unwrap(), 3);
        let t2 = SymbolTable::new(vec!["x", "y"]);
        assert_eq!(
            ideal_dimension(&ideal(&t2, &["x^2 + y^2 - 1"]), &Budget::default()).unwrap(),
            1
        );
        assert_eq!(
            ideal_dimension(&ideal(&t2, &["x", "y"]), &Budget::default()).unwrap(),
            0
        );
        assert_eq!(
            ideal_dimension(&ideal(&t2, &["1"]), &Budget::default()).unwrap(),
            -1
        );
    }

    #[test]
    fn intersect_principal_ideals() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let a = ideal(&t, &["x"]);
        let b = ideal(&t, &["y"]);
        let c = intersect(&a, &b, &Budget::default()).unwrap();
        assert_eq!(c.to_strings(), vec!["x*y"]);
    }
}

use super::groebner::{groebner, normal_form};
use super::ideal::Ideal;
use super::poly::{MonomialOrder, MultiPoly};
use super::symbol::SymbolTable;
use super::{Budget, ExactError, Tri};
use std::sync::Arc;

/// One stratum `V(I) \ V(J)` of a constructible set.
///
/// Convention: a zero ideal `J` (no nonzero generators) means the stratum is
/// plain `V(I)` with no inequation. Otherwise a point lies in the stratum
/// iff every generator of `I` vanishes and not every generator of `J` does.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub equations: Ideal,
    pub inequations: Ideal,
}

impl Stratum {
    pub fn plain(i: Ideal) -> Self {
        let table = i.table().clone();
        Stratum {
            equations: i,
            inequations: Ideal::zero(&table),
        }
    }

    /// Decides non-emptiness of the stratum over the algebraic closure.
    ///
    /// `V(I)` alone is nonempty iff its reduced basis is not `{1}` (weak
    /// Nullstellensatz). With inequations, the stratum is nonempty iff the
    /// Rabinowitsch extension `I + (1 - t*g)` is consistent for some
    /// generator `g` of `J`. Budget exhaustion yields `Unknown`, never a
    /// definite answer.
    pub fn is_consistent(&self, budget: &Budget) -> Tri {
        let i = &self.equations;
        let gb = match i.groebner_basis(&MonomialOrder::Grevlex, budget) {
            Ok(gb) => gb,
            Err(_) => return Tri::Unknown,
        };
        if gb.len() == 1 && gb[0].is_unit_constant() {
            return Tri::False;
        }
        let witnesses: Vec<&MultiPoly> = self
            .inequations
            .generators()
            .iter()
            .filter(|g| !g.is_zero())
            .collect();
        if witnesses.is_empty() {
            return Tri::True;
        }
        let mut saw_unknown = false;
        for g in witnesses {
            if g.is_unit_constant() {
                return Tri::True;
            }
            // g in I means V(I) ⊆ V(g): this generator cannot witness
            if normal_form(g, &gb, &MonomialOrder::Grevlex).is_zero() {
                continue;
            }
            match rabinowitsch_consistent(&gb, g, budget) {
                Ok(true) => return Tri::True,
                Ok(false) => {}
                Err(_) => saw_unknown = true,
            }
        }
        if saw_unknown {
            Tri::Unknown
        } else {
            Tri::False
        }
    }
}

/// Is `V(I) \ V(g)` nonempty? Decided as consistency of `I + (1 - t*g)`.
pub(crate) fn rabinowitsch_consistent(
    gb_of_i: &[MultiPoly],
    g: &MultiPoly,
    budget: &Budget,
) -> Result<bool, ExactError> {
    let table = g.table();
    let tname = table.fresh_name("t@rab");
    let (ext, aux) = table.extend(vec![tname]);
    let t = MultiPoly::var(&ext, aux[0]);
    let mut gens: Vec<MultiPoly> = gb_of_i
        .iter()
        .map(|p| p.embed_by_name(&ext))
        .collect::<Result<_, _>>()?;
    gens.push(MultiPoly::one(&ext).sub(&t.mul(&g.embed_by_name(&ext)?)));
    let gb = groebner(&gens, &MonomialOrder::Grevlex, budget)?;
    Ok(!(gb.len() == 1 && gb[0].is_unit_constant()))
}

/// Finite union of strata over one ambient table; the empty list is the
/// empty set.
#[derive(Debug, Clone)]
pub struct ConstructibleSet {
    table: Arc<SymbolTable>,
    strata: Vec<Stratum>,
}

impl ConstructibleSet {
    pub fn new(table: &Arc<SymbolTable>, strata: Vec<Stratum>) -> Self {
        for s in &strata {
            debug_assert!(SymbolTable::same(s.equations.table(), table));
            debug_assert!(SymbolTable::same(s.inequations.table(), table));
        }
        ConstructibleSet {
            table: table.clone(),
            strata,
        }
    }

    pub fn empty(table: &Arc<SymbolTable>) -> Self {
        ConstructibleSet::new(table, Vec::new())
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// Nonempty iff some stratum is. Unknown strata poison a negative
    /// answer but not a positive one.
    pub fn is_consistent(&self, budget: &Budget) -> Tri {
        let mut saw_unknown = false;
        for s in &self.strata {
            match s.is_consistent(budget) {
                Tri::True => return Tri::True,
                Tri::Unknown => saw_unknown = true,
                Tri::False => {}
            }
        }
        if saw_unknown {
            Tri::Unknown
        } else {
            Tri::False
        }
    }

    /// Serializes as a JSON value: a list of strata, each with `i` and `j`
    /// arrays of canonical polynomial strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.strata
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "i": s.equations.to_strings(),
                        "j": s.inequations.to_strings(),
                    })
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    fn ideal(t: &Arc<SymbolTable>, gens: &[&str]) -> Ideal {
        Ideal::new(t, gens.iter().map(|s| parse_poly(t, s).unwrap()).collect())
    }

    #[test]
    fn closure_semantics() {
        // x^2 + 1 has roots over the algebraic closure
        let t = SymbolTable::new(vec!["x"]);
        let s = Stratum::plain(ideal(&t, &["x^2 + 1"]));
        assert_eq!(s.is_consistent(&Budget::default()), Tri::True);
    }

    #[test]
    fn self_excluded_is_empty() {
        let t = SymbolTable::new(vec!["x"]);
        let s = Stratum {
            equations: ideal(&t, &["x"]),
            inequations: ideal(&t, &["x"]),
        };
        assert_eq!(s.is_consistent(&Budget::default()), Tri::False);
    }

    #[test]
    fn saturation_witness() {
        // (x*y - 1) stays consistent away from V(x)
        let t = SymbolTable::new(vec!["x", "y"]);
        let s = Stratum {
            equations: ideal(&t, &["x*y - 1"]),
            inequations: ideal(&t, &["x"]),
        };
        assert_eq!(s.is_consistent(&Budget::default()), Tri::True);
    }

    #[test]
    fn unknown_on_budget() {
        let t = SymbolTable::new(vec!["x", "y", "z"]);
        let s = Stratum::plain(ideal(
            &t,
            &["x^5*y^3 + z^4 - 1", "y^5*z^3 + x^4 - 2", "z^5*x^3 + y^4 - 3"],
        ));
        assert_eq!(s.is_consistent(&Budget::tiny()), Tri::Unknown);
    }

    #[test]
    fn empty_union_is_empty() {
        let t = SymbolTable::new(vec!["x"]);
        let c = ConstructibleSet::empty(&t);
        assert_eq!(c.is_consistent(&Budget::default()), Tri::False);
    }
}

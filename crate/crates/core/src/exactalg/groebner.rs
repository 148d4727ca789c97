use super::poly::{divides, mono_lcm, MonomialOrder, MultiPoly};
use super::{Budget, ExactError, Q};
use num::Zero;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Term list sorted descending under the active order; the working
/// representation inside the basis engine.
type OPoly = Vec<(Vec<u32>, Q)>;

fn to_opoly(p: &MultiPoly, order: &MonomialOrder) -> OPoly {
    let mut v: OPoly = p.terms().to_vec();
    v.sort_by(|a, b| order.cmp(&b.0, &a.0));
    v
}

fn from_opoly(p: &MultiPoly, terms: OPoly) -> MultiPoly {
    MultiPoly::from_terms(p.table(), terms)
}

/// out = a - b * (mono * coef), both sorted descending; merge-based.
fn sub_mul(a: &OPoly, b: &OPoly, mono: &[u32], coef: &Q, order: &MonomialOrder) -> OPoly {
    let shifted: OPoly = b
        .iter()
        .map(|(m, c)| {
            (
                m.iter().zip(mono.iter()).map(|(&x, &y)| x + y).collect(),
                c * coef,
            )
        })
        .collect();
    let mut out = OPoly::with_capacity(a.len() + shifted.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < shifted.len() {
        if i == a.len() {
            let (m, c) = &shifted[j];
            out.push((m.clone(), -c));
            j += 1;
            continue;
        }
        if j == shifted.len() {
            out.push(a[i].clone());
            i += 1;
            continue;
        }
        match order.cmp(&a[i].0, &shifted[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, c) = &shifted[j];
                out.push((m.clone(), -c));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 - &shifted[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Fully reduces `f` against `basis` (leading coefficients need not be 1).
fn reduce_opoly(mut work: OPoly, basis: &[OPoly], order: &MonomialOrder) -> OPoly {
    let mut out: OPoly = Vec::new();
    'outer: while let Some((m, c)) = work.first().cloned() {
        for g in basis {
            let (gm, gc) = match g.first() {
                Some(t) => t,
                None => continue,
            };
            if divides(gm, &m) {
                let qm: Vec<u32> = m.iter().zip(gm.iter()).map(|(&a, &b)| a - b).collect();
                let qc = &c / gc;
                work = sub_mul(&work, g, &qm, &qc, order);
                continue 'outer;
            }
        }
        out.push((m, c));
        work.remove(0);
    }
    out
}

/// Normal form of `f` modulo `basis` under `order`. When `basis` is a
/// Groebner basis this is the unique remainder; membership in the ideal is
/// equivalent to a zero result.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly], order: &MonomialOrder) -> MultiPoly {
    let ob: Vec<OPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_opoly(g, order))
        .collect();
    let r = reduce_opoly(to_opoly(f, order), &ob, order);
    from_opoly(f, r)
}

#[derive(PartialEq, Eq)]
struct PairEntry {
    // BinaryHeap is a max-heap; we order by Reverse-style comparison below.
    deg: u64,
    lcm: Vec<u32>,
    i: usize,
    j: usize,
}

impl Ord for PairEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // smallest degree first, then lexicographic lcm, then indices
        other
            .deg
            .cmp(&self.deg)
            .then_with(|| other.lcm.cmp(&self.lcm))
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

impl PartialOrd for PairEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Buchberger's algorithm with the product criterion, full reduction, and a
/// resource budget. Returns the reduced Groebner basis, deterministically:
/// monic elements sorted ascending by leading monomial.
///
/// The unit ideal always comes back as the single polynomial `1`.
pub fn groebner(
    gens: &[MultiPoly],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<MultiPoly>, ExactError> {
    let table = match gens.first() {
        Some(g) => g.table().clone(),
        None => return Ok(Vec::new()),
    };
    let clock = budget.start();

    let mut basis: Vec<OPoly> = Vec::new();
    for g in gens {
        g.assert_same_table(gens.first().unwrap())?;
        if g.is_zero() {
            continue;
        }
        if g.is_unit_constant() {
            return Ok(vec![MultiPoly::one(&table)]);
        }
        basis.push(to_opoly(&g.primitive_part(), order));
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    let mut heap: BinaryHeap<PairEntry> = BinaryHeap::new();
    let push_pairs = |heap: &mut BinaryHeap<PairEntry>, basis: &[OPoly], k: usize| {
        for i in 0..k {
            let lcm = mono_lcm(&basis[i][0].0, &basis[k][0].0);
            let deg: u64 = lcm.iter().map(|&e| e as u64).sum();
            heap.push(PairEntry { deg, lcm, i, j: k });
        }
    };
    for k in 1..basis.len() {
        push_pairs(&mut heap, &basis, k);
    }

    let mut pairs_done = 0usize;
    let mut max_deg: u32 = basis
        .iter()
        .map(|g| g.iter().map(|(m, _)| m.iter().sum::<u32>()).max().unwrap_or(0))
        .max()
        .unwrap_or(0);

    while let Some(PairEntry { lcm, i, j, .. }) = heap.pop() {
        pairs_done += 1;
        clock.check(basis.len(), pairs_done, max_deg)?;

        let (ltm_i, _) = &basis[i][0];
        let (ltm_j, _) = &basis[j][0];
        // product criterion: coprime leading monomials give a reducible S-pair
        if ltm_i
            .iter()
            .zip(ltm_j.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
        {
            continue;
        }
        let qi: Vec<u32> = lcm.iter().zip(ltm_i.iter()).map(|(&a, &b)| a - b).collect();
        let qj: Vec<u32> = lcm.iter().zip(ltm_j.iter()).map(|(&a, &b)| a - b).collect();
        let ci = basis[i][0].1.clone();
        let cj = basis[j][0].1.clone();
        // S = (lcm/LT_i)*g_i/lc_i - (lcm/LT_j)*g_j/lc_j, scaled by lc_i
        let spoly = {
            let gi_shift: OPoly = basis[i]
                .iter()
                .map(|(m, c)| {
                    (
                        m.iter().zip(qi.iter()).map(|(&a, &b)| a + b).collect(),
                        c.clone(),
                    )
                })
                .collect();
            let coef = &ci / &cj;
            sub_mul(&gi_shift, &basis[j], &qj, &coef, order)
        };
        let red = reduce_opoly(spoly, &basis, order);
        if red.is_empty() {
            continue;
        }
        if red.len() == 1 && red[0].0.iter().all(|&e| e == 0) {
            return Ok(vec![MultiPoly::one(&table)]);
        }
        let red = to_opoly(&from_opoly(gens.first().unwrap(), red).primitive_part(), order);
        let d = red.iter().map(|(m, _)| m.iter().sum::<u32>()).max().unwrap();
        max_deg = max_deg.max(d);
        clock.check(basis.len() + 1, pairs_done, max_deg)?;
        basis.push(red);
        let k = basis.len() - 1;
        push_pairs(&mut heap, &basis, k);
    }

    let polys: Vec<MultiPoly> = basis
        .iter()
        .map(|g| from_opoly(gens.first().unwrap(), g.clone()))
        .collect();
    Ok(reduce_basis(polys, order))
}

/// Minimalizes and fully inter-reduces a Groebner basis; output is monic and
/// sorted ascending by leading monomial for deterministic serialization.
pub fn reduce_basis(basis: Vec<MultiPoly>, order: &MonomialOrder) -> Vec<MultiPoly> {
    let mut kept: Vec<MultiPoly> = Vec::new();
    let mut sorted: Vec<MultiPoly> = basis.into_iter().filter(|g| !g.is_zero()).collect();
    // smaller leading terms first so minimalization keeps the tight ones
    sorted.sort_by(|a, b| {
        order.cmp(
            &a.leading_term(order).unwrap().0,
            &b.leading_term(order).unwrap().0,
        )
    });
    for g in sorted {
        let lt = g.leading_term(order).unwrap().0.clone();
        if kept
            .iter()
            .any(|h| divides(&h.leading_term(order).unwrap().0, &lt))
        {
            continue;
        }
        kept.push(g);
    }
    let snapshot = kept.clone();
    let mut out = Vec::with_capacity(kept.len());
    for (i, g) in snapshot.iter().enumerate() {
        let others: Vec<MultiPoly> = snapshot
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = normal_form(g, &others, order);
        if !r.is_zero() {
            out.push(r.monic(order));
        }
    }
    out.sort_by(|a, b| {
        order.cmp(
            &a.leading_term(order).unwrap().0,
            &b.leading_term(order).unwrap().0,
        )
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, SymbolTable};

    #[test]
    fn one_spair_example() {
        // hand Buchberger: S(x^2 - y, y) reduces to 0 after one step,
        // reduced basis is {y, x^2}
        let t = SymbolTable::new(vec!["x", "y"]);
        let i = vec![
            parse_poly(&t, "x^2 - y").unwrap(),
            parse_poly(&t, "y").unwrap(),
        ];
        let gb = groebner(&i, &MonomialOrder::Grevlex, &Budget::default()).unwrap();
        let s: Vec<String> = gb.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["y", "x^2"]);
    }

    #[test]
    fn unit_ideal_cases() {
        let t = SymbolTable::new(vec!["x"]);
        let one = groebner(
            &[parse_poly(&t, "1").unwrap()],
            &MonomialOrder::Grevlex,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].is_unit_constant());

        // subtraction gives a unit
        let i = vec![
            parse_poly(&t, "x - 1").unwrap(),
            parse_poly(&t, "x - 2").unwrap(),
        ];
        let gb = groebner(&i, &MonomialOrder::Grevlex, &Budget::default()).unwrap();
        assert_eq!(gb.len(), 1);
        assert!(gb[0].is_unit_constant());
    }

    #[test]
    fn deterministic_output() {
        let t = SymbolTable::new(vec!["x", "y", "z"]);
        let gens = vec![
            parse_poly(&t, "x^2 + y*z - 2").unwrap(),
            parse_poly(&t, "y^2 + x*z - 3").unwrap(),
            parse_poly(&t, "x*y + z^2 - 1").unwrap(),
        ];
        let a = groebner(&gens, &MonomialOrder::Grevlex, &Budget::default()).unwrap();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        let b = groebner(&shuffled, &MonomialOrder::Grevlex, &Budget::default()).unwrap();
        let sa: Vec<String> = a.iter().map(|p| p.to_string()).collect();
        let sb: Vec<String> = b.iter().map(|p| p.to_string()).collect();
        assert_eq!(sa, sb);
    }

    #[test]
    fn budget_exhaustion_reports() {
        let t = SymbolTable::new(vec!["x", "y", "z"]);
        let gens = vec![
            parse_poly(&t, "x^5*y^3 + z^4 - 1").unwrap(),
            parse_poly(&t, "y^5*z^3 + x^4 - 2").unwrap(),
            parse_poly(&t, "z^5*x^3 + y^4 - 3").unwrap(),
        ];
        let res = groebner(&gens, &MonomialOrder::Grevlex, &Budget::tiny());
        assert!(matches!(res, Err(ExactError::Budget { .. })));
    }

    #[test]
    fn membership_via_normal_form() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let gb = groebner(
            &[parse_poly(&t, "x^2 - y").unwrap()],
            &MonomialOrder::Grevlex,
            &Budget::default(),
        )
        .unwrap();
        let member = parse_poly(&t, "x^4 - y^2").unwrap();
        assert!(normal_form(&member, &gb, &MonomialOrder::Grevlex).is_zero());
        let non = parse_poly(&t, "x^3").unwrap();
        assert!(!normal_form(&non, &gb, &MonomialOrder::Grevlex).is_zero());
    }
}

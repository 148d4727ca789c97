use super::fraction::PolyFraction;
use super::poly::MultiPoly;
use super::{ExactError, Q};
use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// How `generic_rank` should certify its answer.
#[derive(Debug, Clone)]
pub enum RankStrategy {
    /// Fraction-free symbolic elimination only.
    Symbolic,
    /// Symbolic elimination plus evaluation at sampled rational points that
    /// avoid the denominators; certifies when a sample attains the symbolic
    /// rank.
    SymbolicWithSample { attempts: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericRankReport {
    pub rank: usize,
    /// True when a sampled rational point attained the symbolic rank.
    pub sample_certified: bool,
}

/// Exact rank of a rational matrix by Gaussian elimination.
pub fn rank_rational(m: &[Vec<Q>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else { continue };
        a.swap(row, p);
        let inv = Q::one() / a[row][col].clone();
        for c in col..cols {
            a[row][c] = &a[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let sub = &a[row][c] * &f;
                    a[r][c] = &a[r][c] - &sub;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Rank of a polynomial matrix over the fraction field, by fraction-free
/// Bareiss elimination with full pivoting. Exact divisions are guaranteed by
/// the Bareiss identity.
fn rank_symbolic_poly(m: &[Vec<MultiPoly>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let table = m[0][0].table().clone();
    let mut a: Vec<Vec<MultiPoly>> = m.to_vec();
    let mut prev = MultiPoly::one(&table);
    let steps = rows.min(cols);
    for k in 0..steps {
        // full pivoting: any nonzero entry in the remaining block
        let mut pivot = None;
        'scan: for r in k..rows {
            for c in k..cols {
                if !a[r][c].is_zero() {
                    pivot = Some((r, c));
                    break 'scan;
                }
            }
        }
        let Some((pr, pc)) = pivot else { return k };
        a.swap(k, pr);
        if pc != k {
            for row in a.iter_mut() {
                row.swap(k, pc);
            }
        }
        let pkk = a[k][k].clone();
        for r in (k + 1)..rows {
            for c in (k + 1)..cols {
                let num = pkk.mul(&a[r][c]).sub(&a[r][k].mul(&a[k][c]));
                a[r][c] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
            a[r][k] = MultiPoly::zero(&table);
        }
        prev = pkk;
    }
    steps
}

/// Generic rank of a matrix of chart fractions.
///
/// Denominators are cleared row by row (row scaling by a nonzero rational
/// function preserves rank over the fraction field), then Bareiss gives the
/// rank at a generic point. The sampling strategy evaluates at random
/// rational points; a sample rank can only ever fall below the generic one,
/// so equality certifies.
pub fn generic_rank(
    m: &[Vec<PolyFraction>],
    strategy: &RankStrategy,
) -> Result<GenericRankReport, ExactError> {
    if m.is_empty() || m[0].is_empty() {
        return Ok(GenericRankReport {
            rank: 0,
            sample_certified: true,
        });
    }
    let table = m[0][0].table().clone();
    let cleared: Vec<Vec<MultiPoly>> = m
        .iter()
        .map(|row| {
            let mut prod = MultiPoly::one(&table);
            for e in row {
                prod = prod.mul(e.den());
            }
            row.iter()
                .map(|e| {
                    // entry * (product of the row's denominators)
                    let others = prod.exact_div(e.den()).expect("denominator divides row product");
                    e.num().mul(&others)
                })
                .collect()
        })
        .collect();
    let rank = rank_symbolic_poly(&cleared);

    let sample_certified = match strategy {
        RankStrategy::Symbolic => false,
        RankStrategy::SymbolicWithSample { attempts, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let n = table.len();
            let mut hit_any = false;
            let mut certified = false;
            for _ in 0..*attempts {
                let point: Vec<Q> = (0..n)
                    .map(|_| Q::from(BigInt::from(rng.gen_range(-997i64..=997))))
                    .collect();
                let mut values: Vec<Vec<Q>> = Vec::with_capacity(m.len());
                let mut ok = true;
                'rows: for row in m {
                    let mut vr = Vec::with_capacity(row.len());
                    for e in row {
                        match e.eval(&point) {
                            Some(v) => vr.push(v),
                            None => {
                                ok = false;
                                break 'rows;
                            }
                        }
                    }
                    values.push(vr);
                }
                if !ok {
                    continue;
                }
                hit_any = true;
                let sampled = rank_rational(&values);
                debug_assert!(sampled <= rank);
                if sampled == rank {
                    certified = true;
                    break;
                }
            }
            if !hit_any {
                return Err(ExactError::SamplingFailed(*attempts));
            }
            certified
        }
    };

    Ok(GenericRankReport {
        rank,
        sample_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_fraction, SymbolTable};

    fn frac(t: &std::sync::Arc<SymbolTable>, s: &str) -> PolyFraction {
        parse_fraction(t, s).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let t = SymbolTable::new(vec!["l"]);
        let m = vec![
            vec![frac(&t, "1"), frac(&t, "0")],
            vec![frac(&t, "0"), frac(&t, "1")],
        ];
        let r = generic_rank(&m, &RankStrategy::Symbolic).unwrap();
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn proportional_rows_drop_rank() {
        let t = SymbolTable::new(vec!["l"]);
        let m = vec![
            vec![frac(&t, "l"), frac(&t, "l")],
            vec![frac(&t, "1"), frac(&t, "1")],
        ];
        let r = generic_rank(
            &m,
            &RankStrategy::SymbolicWithSample {
                attempts: 8,
                seed: 7,
            },
        )
        .unwrap();
        assert_eq!(r.rank, 1);
        assert!(r.sample_certified);
    }

    #[test]
    fn unit_determinant_certifies() {
        // det = 1 + l^2 - l^2 = 1
        let t = SymbolTable::new(vec!["l"]);
        let m = vec![
            vec![frac(&t, "1"), frac(&t, "l")],
            vec![frac(&t, "l"), frac(&t, "l^2 + 1")],
        ];
        let r = generic_rank(
            &m,
            &RankStrategy::SymbolicWithSample {
                attempts: 8,
                seed: 1,
            },
        )
        .unwrap();
        assert_eq!(r.rank, 2);
        assert!(r.sample_certified);
    }

    #[test]
    fn fraction_entries_cleared() {
        let t = SymbolTable::new(vec!["l"]);
        let m = vec![vec![frac(&t, "1/l"), frac(&t, "1/(1-l)")]];
        let r = generic_rank(&m, &RankStrategy::Symbolic).unwrap();
        assert_eq!(r.rank, 1);
    }
}

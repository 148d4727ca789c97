//! Evidence-grade point search over a large prime field.
//!
//! Reduces a polynomial system modulo a 2^31-scale prime and hunts for
//! points by specializing random fibers and solving the residual univariate
//! or bivariate systems exactly (gcds and resultants). A found point is
//! strong evidence of consistency in characteristic zero; a failed search
//! proves nothing. Nothing here feeds a certificate.

use super::poly::MultiPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 2^31 - 1, a Mersenne prime.
pub const FQ_PRIME: u64 = 2_147_483_647;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FqSearchOutcome {
    /// A point satisfying every equation with, per inequation group, at
    /// least one nonvanishing generator.
    Found(Vec<u64>),
    NotFound,
    /// A coefficient denominator vanished mod the prime; the instance is
    /// unusable for evidence.
    BadPrime,
}

fn addq(a: u64, b: u64) -> u64 {
    (a + b) % FQ_PRIME
}

fn subq(a: u64, b: u64) -> u64 {
    (a + FQ_PRIME - b) % FQ_PRIME
}

fn mulq(a: u64, b: u64) -> u64 {
    a * b % FQ_PRIME
}

fn powq(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulq(acc, b);
        }
        b = mulq(b, b);
        e >>= 1;
    }
    acc
}

fn invq(a: u64) -> u64 {
    debug_assert!(a % FQ_PRIME != 0);
    powq(a, FQ_PRIME - 2)
}

/// A polynomial with coefficients reduced mod the prime.
#[derive(Debug, Clone)]
struct FqPoly {
    terms: Vec<(Vec<u32>, u64)>,
    nvars: usize,
}

fn reduce_rational(q: &num::BigRational) -> Option<u64> {
    let p = num::BigInt::from(FQ_PRIME);
    let num = ((q.numer() % &p) + &p) % &p;
    let den = ((q.denom() % &p) + &p) % &p;
    let den_u: u64 = den.try_into().ok()?;
    if den_u == 0 {
        return None;
    }
    let num_u: u64 = num.try_into().ok()?;
    Some(mulq(num_u, invq(den_u)))
}

impl FqPoly {
    fn from_poly(p: &MultiPoly) -> Option<FqPoly> {
        let nvars = p.table().len();
        let mut terms = Vec::with_capacity(p.terms().len());
        for (m, c) in p.terms() {
            let cq = reduce_rational(c)?;
            if cq != 0 {
                terms.push((m.clone(), cq));
            }
        }
        Some(FqPoly { terms, nvars })
    }

    fn eval(&self, point: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = mulq(t, powq(point[i], e as u64));
                }
            }
            acc = addq(acc, t);
        }
        acc
    }

    /// Substitutes values for all variables except those in `free`,
    /// producing a polynomial in the free variables only (exponents keyed by
    /// position in `free`).
    fn specialize(&self, values: &[u64], free: &[usize]) -> FqPoly {
        let mut terms: Vec<(Vec<u32>, u64)> = Vec::new();
        for (m, c) in &self.terms {
            let mut coef = *c;
            let mut key = vec![0u32; free.len()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if let Some(pos) = free.iter().position(|&f| f == i) {
                    key[pos] = e;
                } else {
                    coef = mulq(coef, powq(values[i], e as u64));
                }
            }
            if coef != 0 {
                terms.push((key, coef));
            }
        }
        // combine duplicates
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Vec<u32>, u64)> = Vec::new();
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = addq(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| *c != 0);
        FqPoly {
            terms: out,
            nvars: free.len(),
        }
    }

    fn to_univariate(&self) -> Option<Vec<u64>> {
        if self.nvars != 1 {
            return None;
        }
        let deg = self.terms.iter().map(|(m, _)| m[0]).max().unwrap_or(0) as usize;
        let mut c = vec![0u64; deg + 1];
        for (m, coef) in &self.terms {
            c[m[0] as usize] = addq(c[m[0] as usize], *coef);
        }
        Some(trim(c))
    }

    /// Collects a bivariate polynomial as coefficients in the second
    /// variable: `sum_k c_k(x) * y^k`.
    fn to_bivariate_in_y(&self) -> Vec<Vec<u64>> {
        debug_assert_eq!(self.nvars, 2);
        let dy = self.terms.iter().map(|(m, _)| m[1]).max().unwrap_or(0) as usize;
        let mut out: Vec<Vec<u64>> = vec![Vec::new(); dy + 1];
        for (m, c) in &self.terms {
            let (dx, k) = (m[0] as usize, m[1] as usize);
            if out[k].len() <= dx {
                out[k].resize(dx + 1, 0);
            }
            out[k][dx] = addq(out[k][dx], *c);
        }
        out.into_iter().map(trim).collect()
    }
}

// -- univariate toolkit over F_q ------------------------------------------

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn uni_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addq(out[i + j], mulq(x, y));
        }
    }
    trim(out)
}

fn uni_sub(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = subq(x, y);
    }
    trim(out)
}

fn uni_rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    debug_assert!(!b.is_empty());
    let mut r = a.to_vec();
    let inv_lead = invq(*b.last().unwrap());
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = mulq(*r.last().unwrap(), inv_lead);
        let mut scaled = vec![0u64; shift];
        scaled.extend(b.iter().map(|&c| mulq(c, factor)));
        r = uni_sub(&r, &scaled);
    }
    r
}

fn uni_gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = uni_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let inv = invq(lead);
        x = x.iter().map(|&c| mulq(c, inv)).collect();
    }
    x
}

fn uni_mulmod(a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    uni_rem(&uni_mul(a, b), m)
}

fn uni_powmod(base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = uni_rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = uni_mulmod(&acc, &b, m);
        }
        b = uni_mulmod(&b, &b, m);
        e >>= 1;
    }
    acc
}

/// All roots in F_q of a nonzero univariate polynomial, by splitting the
/// product of linear factors with random quadratic-residue gcds.
fn uni_roots(f: &[u64], rng: &mut ChaCha8Rng) -> Vec<u64> {
    let f = trim(f.to_vec());
    if f.is_empty() || f.len() == 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut g = f.clone();
    // factor out roots at 0
    while g.len() > 1 && g[0] == 0 {
        if !roots.contains(&0) {
            roots.push(0);
        }
        g.remove(0);
    }
    if g.len() <= 1 {
        roots.sort();
        return roots;
    }
    // keep only distinct linear factors: gcd(g, x^q - x)
    let xq = uni_powmod(&[0, 1], FQ_PRIME, &g);
    let lin = uni_gcd(&uni_sub(&xq, &[0, 1]), &g);
    fn split(h: Vec<u64>, rng: &mut ChaCha8Rng, out: &mut Vec<u64>) {
        if h.len() <= 1 {
            return;
        }
        if h.len() == 2 {
            // c0 + c1 x
            out.push(mulq(subq(0, h[0]), invq(h[1])));
            return;
        }
        loop {
            let a = rng.gen_range(0..FQ_PRIME);
            // (x + a)^((q-1)/2) - 1 splits the roots into residue classes
            let w = uni_powmod(&[a, 1], (FQ_PRIME - 1) / 2, &h);
            let d = uni_gcd(&uni_sub(&w, &[1]), &h);
            if d.len() > 1 && d.len() < h.len() {
                let q = uni_quotient(&h, &d);
                split(d, rng, out);
                split(q, rng, out);
                return;
            }
        }
    }
    if lin.len() > 1 {
        split(lin, rng, &mut roots);
    }
    roots.sort();
    roots.dedup();
    roots
}

fn uni_quotient(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len().saturating_sub(b.len()) + 1];
    let inv_lead = invq(*b.last().unwrap());
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let factor = mulq(*r.last().unwrap(), inv_lead);
        q[shift] = factor;
        let mut scaled = vec![0u64; shift];
        scaled.extend(b.iter().map(|&c| mulq(c, factor)));
        r = uni_sub(&r, &scaled);
    }
    trim(q)
}

/// Resultant with respect to `y` of two bivariate polynomials given as
/// coefficient lists in `y`; a univariate polynomial in `x` via cofactor
/// expansion of the Sylvester matrix.
fn resultant_y(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<u64> {
    let da = a.len().saturating_sub(1);
    let db = b.len().saturating_sub(1);
    if da == 0 && db == 0 {
        return vec![1];
    }
    let n = da + db;
    let mut m: Vec<Vec<Vec<u64>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..db {
        for (k, c) in a.iter().enumerate() {
            m[i][i + (da - k)] = c.clone();
        }
    }
    for i in 0..da {
        for (k, c) in b.iter().enumerate() {
            m[db + i][i + (db - k)] = c.clone();
        }
    }
    fn det(m: &[Vec<Vec<u64>>]) -> Vec<u64> {
        let n = m.len();
        if n == 0 {
            return vec![1];
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc: Vec<u64> = Vec::new();
        for j in 0..n {
            if m[0][j].is_empty() {
                continue;
            }
            let minor: Vec<Vec<Vec<u64>>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let sub = uni_mul(&m[0][j], &det(&minor));
            acc = if j % 2 == 0 {
                trim({
                    let mut t = acc.clone();
                    let nl = t.len().max(sub.len());
                    t.resize(nl, 0);
                    for (i, &c) in sub.iter().enumerate() {
                        t[i] = addq(t[i], c);
                    }
                    t
                })
            } else {
                uni_sub(&acc, &sub)
            };
        }
        acc
    }
    det(&m)
}

/// Searches for an F_q point satisfying all `equations`, with at least one
/// nonvanishing generator per inequation group. Empty groups are
/// unsatisfiable by convention.
pub fn fq_find_point(
    equations: &[MultiPoly],
    inequation_groups: &[Vec<MultiPoly>],
    trials: usize,
    seed: u64,
) -> FqSearchOutcome {
    if inequation_groups.iter().any(|g| g.is_empty()) {
        return FqSearchOutcome::NotFound;
    }
    let nvars = equations
        .first()
        .map(|p| p.table().len())
        .or_else(|| inequation_groups.iter().flatten().next().map(|p| p.table().len()))
        .unwrap_or(0);
    let mut eqs = Vec::new();
    for p in equations {
        match FqPoly::from_poly(p) {
            Some(f) => {
                if f.terms.len() == 1 && f.terms[0].0.iter().all(|&e| e == 0) {
                    return FqSearchOutcome::NotFound; // nonzero constant equation
                }
                if !f.terms.is_empty() {
                    eqs.push(f);
                }
            }
            None => return FqSearchOutcome::BadPrime,
        }
    }
    let mut ineqs: Vec<Vec<FqPoly>> = Vec::new();
    for group in inequation_groups {
        let mut g = Vec::new();
        for p in group {
            match FqPoly::from_poly(p) {
                Some(f) => g.push(f),
                None => return FqSearchOutcome::BadPrime,
            }
        }
        ineqs.push(g);
    }

    let check = |point: &[u64]| -> bool {
        eqs.iter().all(|f| f.eval(point) == 0)
            && ineqs
                .iter()
                .all(|group| group.iter().any(|f| f.eval(point) != 0))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if nvars == 0 {
        return if eqs.is_empty() && check(&[]) {
            FqSearchOutcome::Found(Vec::new())
        } else {
            FqSearchOutcome::NotFound
        };
    }

    for trial in 0..trials {
        let mut values: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..FQ_PRIME)).collect();
        if eqs.is_empty() {
            if check(&values) {
                return FqSearchOutcome::Found(values);
            }
            continue;
        }
        // alternate between solving one free variable and a free pair
        let solve_pair = trial % 2 == 1 && nvars >= 2;
        let candidates = if !solve_pair {
            let free = vec![(trial / 2) % nvars];
            solve_fiber_1(&eqs, &mut values, &free, &mut rng)
        } else {
            let f0 = (trial / 2) % nvars;
            let f1 = (trial / 2 / nvars + 1 + f0) % nvars;
            if f0 != f1 {
                solve_fiber_2(&eqs, &mut values, &[f0, f1], &mut rng)
            } else {
                Vec::new()
            }
        };
        for point in candidates {
            if check(&point) {
                return FqSearchOutcome::Found(point);
            }
        }
    }
    FqSearchOutcome::NotFound
}

fn solve_fiber_1(
    eqs: &[FqPoly],
    values: &mut [u64],
    free: &[usize],
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<u64>> {
    let mut g: Vec<u64> = Vec::new();
    let mut free_fiber = true;
    for f in eqs {
        let s = f.specialize(values, free);
        let Some(u) = s.to_univariate() else {
            return Vec::new();
        };
        if u.is_empty() {
            continue;
        }
        if u.len() == 1 {
            return Vec::new(); // nonzero constant on this fiber
        }
        free_fiber = false;
        g = if g.is_empty() { u } else { uni_gcd(&g, &u) };
        if g.len() == 1 {
            return Vec::new();
        }
    }
    if free_fiber {
        return vec![values.to_vec()];
    }
    uni_roots(&g, rng)
        .into_iter()
        .map(|root| {
            let mut p = values.to_vec();
            p[free[0]] = root;
            p
        })
        .collect()
}

/// Evaluates a bivariate coefficient list at `x`, leaving a univariate
/// polynomial in the second variable.
fn biv_at_x(b: &[Vec<u64>], x: u64) -> Vec<u64> {
    let mut uni: Vec<u64> = Vec::new();
    for (k, cx) in b.iter().enumerate() {
        let v = cx
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| addq(acc, mulq(c, powq(x, i as u64))));
        if uni.len() <= k {
            uni.resize(k + 1, 0);
        }
        uni[k] = v;
    }
    trim(uni)
}

fn solve_fiber_2(
    eqs: &[FqPoly],
    values: &mut [u64],
    free: &[usize],
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<u64>> {
    let spec: Vec<FqPoly> = eqs.iter().map(|f| f.specialize(values, free)).collect();
    if spec
        .iter()
        .any(|s| s.terms.len() == 1 && s.terms[0].0.iter().all(|&e| e == 0))
    {
        return Vec::new();
    }
    let active: Vec<&FqPoly> = spec.iter().filter(|s| !s.terms.is_empty()).collect();
    if active.is_empty() {
        return vec![values.to_vec()];
    }
    let biv: Vec<Vec<Vec<u64>>> = active.iter().map(|s| s.to_bivariate_in_y()).collect();
    // candidate x values: resultant roots when two or more equations are
    // active, random probes otherwise
    let xs: Vec<u64> = if active.len() == 1 {
        (0..8).map(|_| rng.gen_range(0..FQ_PRIME)).collect()
    } else {
        let mut eliminant: Vec<u64> = Vec::new();
        for w in biv.windows(2) {
            let r = resultant_y(&w[0], &w[1]);
            if r.is_empty() {
                continue; // identically zero resultant: common factor
            }
            eliminant = if eliminant.is_empty() {
                r
            } else {
                uni_gcd(&eliminant, &r)
            };
            if eliminant.len() == 1 {
                return Vec::new();
            }
        }
        if eliminant.is_empty() {
            (0..4).map(|_| rng.gen_range(0..FQ_PRIME)).collect()
        } else {
            uni_roots(&eliminant, rng)
        }
    };
    let mut out = Vec::new();
    for x in xs {
        // substitute x and solve the common gcd in y
        let mut g: Vec<u64> = Vec::new();
        let mut bad = false;
        for b in &biv {
            let uni = biv_at_x(b, x);
            if uni.len() == 1 {
                bad = true;
                break;
            }
            if uni.is_empty() {
                continue;
            }
            g = if g.is_empty() { uni } else { uni_gcd(&g, &uni) };
            if g.len() == 1 {
                bad = true;
                break;
            }
        }
        if bad {
            continue;
        }
        if g.is_empty() {
            for _ in 0..4 {
                let mut p = values.to_vec();
                p[free[0]] = x;
                p[free[1]] = rng.gen_range(0..FQ_PRIME);
                out.push(p);
            }
            continue;
        }
        for y in uni_roots(&g, rng) {
            let mut p = values.to_vec();
            p[free[0]] = x;
            p[free[1]] = y;
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, SymbolTable};

    #[test]
    fn finds_point_on_hypersurface() {
        let t = SymbolTable::new(vec!["x", "y", "z"]);
        let eq = parse_poly(&t, "x^2 + y^2 - z^2 - 1").unwrap();
        match fq_find_point(&[eq.clone()], &[], 64, 11) {
            FqSearchOutcome::Found(p) => {
                let f = FqPoly::from_poly(&eq).unwrap();
                assert_eq!(f.eval(&p), 0);
            }
            other => panic!("expected a point, got {other:?}"),
        }
    }

    #[test]
    fn finds_point_on_codim_two() {
        let t = SymbolTable::new(vec!["x", "y", "z"]);
        let e1 = parse_poly(&t, "y - x^2").unwrap();
        let e2 = parse_poly(&t, "z - x^3").unwrap();
        match fq_find_point(&[e1, e2], &[], 200, 3) {
            FqSearchOutcome::Found(p) => {
                assert_eq!(mulq(p[0], p[0]), p[1]);
            }
            other => panic!("expected a point, got {other:?}"),
        }
    }

    #[test]
    fn respects_inequations() {
        let t = SymbolTable::new(vec!["x", "y"]);
        let eq = parse_poly(&t, "x*y").unwrap();
        let avoid = vec![parse_poly(&t, "x").unwrap()];
        match fq_find_point(&[eq], &[avoid], 200, 5) {
            FqSearchOutcome::Found(p) => {
                assert_ne!(p[0], 0);
                assert_eq!(p[1], 0);
            }
            other => panic!("expected a point, got {other:?}"),
        }
    }

    #[test]
    fn unit_system_finds_nothing() {
        let t = SymbolTable::new(vec!["x"]);
        let e1 = parse_poly(&t, "x - 1").unwrap();
        let e2 = parse_poly(&t, "x - 2").unwrap();
        assert_eq!(fq_find_point(&[e1, e2], &[], 100, 9), FqSearchOutcome::NotFound);
    }

    #[test]
    fn roots_of_factored_poly() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x - 3)(x - 7)(x - 11)
        let f = uni_mul(&uni_mul(&[FQ_PRIME - 3, 1], &[FQ_PRIME - 7, 1]), &[FQ_PRIME - 11, 1]);
        let roots = uni_roots(&f, &mut rng);
        assert_eq!(roots, vec![3, 7, 11]);
    }
}

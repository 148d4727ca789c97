use super::ring::CoeffRing;
use std::collections::BTreeMap;

/// Total degree of a disk multi-index.
pub fn idx_total(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// All multi-indices in `d` variables with total degree at most `r`, in
/// graded-lex order: degree ascending, lexicographic within a degree.
/// The length is binomial(d + r, d).
pub fn disk_basis(d: usize, r: u32) -> Vec<Vec<u32>> {
    fn fill(d: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if d == 1 {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=deg).rev() {
            prefix.push(first);
            fill(d - 1, deg - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        out.push(Vec::new());
        return out;
    }
    for deg in 0..=r {
        fill(d, deg, &mut Vec::new(), &mut out);
    }
    out
}

/// Dimension of the order-`r` disk algebra in `d` variables.
pub fn disk_dim(d: usize, r: u32) -> usize {
    // binomial(d + r, d)
    let mut acc: u128 = 1;
    for k in 1..=d as u128 {
        acc = acc * (r as u128 + k) / k;
    }
    acc as usize
}

/// An element of K[t_1..t_d]/(t)^{r+1}: a truncated power series with
/// coefficients in a caller-supplied ring. Zero coefficients are never
/// stored, and no index exceeds total degree `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<E> {
    d: usize,
    order: u32,
    coeffs: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> TruncSeries<E> {
    pub fn zero(d: usize, order: u32) -> Self {
        TruncSeries {
            d,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant<R: CoeffRing<Elem = E>>(ring: &R, d: usize, order: u32, e: E) -> Self {
        let mut s = TruncSeries::zero(d, order);
        if !ring.is_zero(&e) {
            s.coeffs.insert(vec![0; d], e);
        }
        s
    }

    /// The series `t_a` (zero when `r = 0`).
    pub fn disk_var<R: CoeffRing<Elem = E>>(ring: &R, d: usize, order: u32, a: usize) -> Self {
        assert!(a < d);
        let mut s = TruncSeries::zero(d, order);
        if order >= 1 {
            let mut m = vec![0; d];
            m[a] = 1;
            s.coeffs.insert(m, ring.one());
        }
        s
    }

    pub fn from_coeffs<R: CoeffRing<Elem = E>>(
        ring: &R,
        d: usize,
        order: u32,
        entries: Vec<(Vec<u32>, E)>,
    ) -> Self {
        let mut s = TruncSeries::zero(d, order);
        for (m, e) in entries {
            assert_eq!(m.len(), d);
            if idx_total(&m) <= order && !ring.is_zero(&e) {
                s.coeffs.insert(m, e);
            }
        }
        s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, E> {
        &self.coeffs
    }

    pub fn coeff<R: CoeffRing<Elem = E>>(&self, ring: &R, alpha: &[u32]) -> E {
        self.coeffs
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| ring.zero())
    }

    pub fn constant_term<R: CoeffRing<Elem = E>>(&self, ring: &R) -> E {
        self.coeff(ring, &vec![0; self.d])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn set<R: CoeffRing<Elem = E>>(&mut self, ring: &R, alpha: Vec<u32>, e: E) {
        assert_eq!(alpha.len(), self.d);
        if idx_total(&alpha) > self.order || ring.is_zero(&e) {
            self.coeffs.remove(&alpha);
        } else {
            self.coeffs.insert(alpha, e);
        }
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        debug_assert_eq!(self.d, other.d);
        debug_assert_eq!(self.order, other.order);
        let mut out = self.clone();
        for (m, e) in &other.coeffs {
            let v = match out.coeffs.get(m) {
                Some(cur) => ring.add(cur, e),
                None => e.clone(),
            };
            if ring.is_zero(&v) {
                out.coeffs.remove(m);
            } else {
                out.coeffs.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn neg<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        let mut out = self.clone();
        for e in out.coeffs.values_mut() {
            *e = ring.neg(e);
        }
        out
    }

    pub fn sub<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale<R: CoeffRing<Elem = E>>(&self, ring: &R, k: &E) -> Self {
        let mut out = TruncSeries::zero(self.d, self.order);
        for (m, e) in &self.coeffs {
            let v = ring.mul(e, k);
            if !ring.is_zero(&v) {
                out.coeffs.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn mul<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        debug_assert_eq!(self.d, other.d);
        debug_assert_eq!(self.order, other.order);
        let mut out = TruncSeries::zero(self.d, self.order);
        for (ma, ea) in &self.coeffs {
            let da = idx_total(ma);
            for (mb, eb) in &other.coeffs {
                if da + idx_total(mb) > self.order {
                    continue;
                }
                let m: Vec<u32> = ma.iter().zip(mb.iter()).map(|(&x, &y)| x + y).collect();
                let v = ring.mul(ea, eb);
                let v = match out.coeffs.get(&m) {
                    Some(cur) => ring.add(cur, &v),
                    None => v,
                };
                if ring.is_zero(&v) {
                    out.coeffs.remove(&m);
                } else {
                    out.coeffs.insert(m, v);
                }
            }
        }
        out
    }

    pub fn pow<R: CoeffRing<Elem = E>>(&self, ring: &R, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TruncSeries::constant(ring, self.d, self.order, ring.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse given `seed`, an inverse of the constant term
    /// in the coefficient ring. Order-capped Newton iteration; exact.
    pub fn invert_with_seed<R: CoeffRing<Elem = E>>(&self, ring: &R, seed: E) -> Self {
        let two = ring.add(&ring.one(), &ring.one());
        let two_s = TruncSeries::constant(ring, self.d, self.order, two);
        let mut x = TruncSeries::constant(ring, self.d, self.order, seed);
        let mut precision = 1u64;
        while precision <= self.order as u64 {
            // x <- x(2 - s*x)
            let sx = self.mul(ring, &x);
            x = x.mul(ring, &two_s.sub(ring, &sx));
            precision *= 2;
        }
        x
    }

    /// Inverse when the constant term is invertible in the ring itself.
    pub fn invert<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Option<Self> {
        let seed = ring.invert(&self.constant_term(ring))?;
        Some(self.invert_with_seed(ring, seed))
    }

    /// Drops coefficients above total degree `new_order`.
    pub fn truncate(&self, new_order: u32) -> Self {
        let mut out = TruncSeries::zero(self.d, new_order.min(self.order));
        for (m, e) in &self.coeffs {
            if idx_total(m) <= out.order {
                out.coeffs.insert(m.clone(), e.clone());
            }
        }
        out
    }

    /// Restriction to the first `e` disk variables: keeps coefficients with
    /// zero exponents beyond position `e` and shortens the indices.
    pub fn restrict(&self, e: usize) -> Self {
        assert!(e <= self.d);
        let mut out = TruncSeries::zero(e, self.order);
        for (m, c) in &self.coeffs {
            if m[e..].iter().all(|&x| x == 0) {
                out.coeffs.insert(m[..e].to_vec(), c.clone());
            }
        }
        out
    }

    /// Number of stored nonzero coefficients.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn map<F, E2>(&self, f: F) -> TruncSeries<E2>
    where
        F: Fn(&E) -> E2,
        E2: Clone + PartialEq + std::fmt::Debug,
    {
        TruncSeries {
            d: self.d,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(m, e)| (m.clone(), f(e))).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcalc::ring::QQ;
    use num::{BigInt, One};
    use crate::exactalg::Q;

    fn q(n: i64) -> Q {
        Q::from(BigInt::from(n))
    }

    #[test]
    fn disk_basis_shapes() {
        assert_eq!(disk_basis(1, 2), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(disk_basis(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(disk_basis(2, 2).len(), 6);
        assert_eq!(disk_dim(2, 2), 6);
        assert_eq!(disk_basis(0, 3), vec![Vec::<u32>::new()]);
        for (d, r) in [(1usize, 4u32), (2, 3), (3, 2)] {
            assert_eq!(disk_basis(d, r).len(), disk_dim(d, r));
        }
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(1 + t) = 1 - t + t^2
        let ring = QQ;
        let one = TruncSeries::constant(&ring, 1, 2, Q::one());
        let t = TruncSeries::disk_var(&ring, 1, 2, 0);
        let s = one.add(&ring, &t);
        let inv = s.invert(&ring).unwrap();
        assert_eq!(inv.coeff(&ring, &[0]), q(1));
        assert_eq!(inv.coeff(&ring, &[1]), q(-1));
        assert_eq!(inv.coeff(&ring, &[2]), q(1));
        let prod = s.mul(&ring, &inv);
        assert_eq!(prod, one);
    }

    #[test]
    fn truncation_in_products() {
        // t1 * t2 at order 1 truncates away
        let ring = QQ;
        let t1 = TruncSeries::disk_var(&ring, 2, 1, 0);
        let t2 = TruncSeries::disk_var(&ring, 2, 1, 1);
        assert!(t1.mul(&ring, &t2).is_zero());
    }

    #[test]
    fn restrict_drops_later_variables() {
        let ring = QQ;
        let one = TruncSeries::constant(&ring, 2, 2, Q::one());
        let t1 = TruncSeries::disk_var(&ring, 2, 2, 0);
        let t2 = TruncSeries::disk_var(&ring, 2, 2, 1);
        let s = one.add(&ring, &t1).add(&ring, &t2);
        let r = s.restrict(1);
        assert_eq!(r.d(), 1);
        assert_eq!(r.coeff(&ring, &[0]), q(1));
        assert_eq!(r.coeff(&ring, &[1]), q(1));
        assert_eq!(r.support_len(), 2);
    }
}

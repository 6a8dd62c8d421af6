//! Exact arithmetic in the real cyclotomic field Q(2cos(pi/M)).
//!
//! Elements are coefficient vectors over the power basis of theta = 2cos(pi/M),
//! reduced modulo the minimal polynomial of theta. Signs are decided exactly by
//! interval evaluation on a rational isolating interval for theta.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub Vec<Q>);

#[derive(Clone, Debug)]
pub struct Field {
    conductor: u32,
    modulus: Vec<Q>,
    lo: Q,
    hi: Q,
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn trim(p: &mut Vec<Q>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_eval(p: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![Q::zero()], r);
    }
    let lead = b[db].clone();
    let mut quo = vec![Q::zero(); r.len() - db];
    for k in (0..quo.len()).rev() {
        let f = r[k + db].clone() / &lead;
        if !f.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[i + k] -= bc * &f;
            }
        }
        quo[k] = f;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    trim(&mut quo);
    (quo, r)
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out: Vec<Q> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Q::zero);
            let y = b.get(i).cloned().unwrap_or_else(Q::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Integer coefficients of the cyclotomic polynomial Phi_n, lowest degree first.
pub fn cyclotomic(n: u32) -> Vec<i64> {
    let n = n as usize;
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic(d as u32);
            num = int_div_exact(&num, &div);
        }
    }
    num
}

fn int_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![0i64; a.len() - db];
    for k in (0..quo.len()).rev() {
        let f = r[k + db] / b[db];
        quo[k] = f;
        for (i, bc) in b.iter().enumerate() {
            r[i + k] -= bc * f;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    quo
}

/// Chebyshev-type polynomials C_k with C_k(z + 1/z) = z^k + z^-k (C_0 = 2).
fn chebyshev(k: usize) -> Vec<Q> {
    let mut prev = vec![q(2)];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![q(0), q(1)];
    for _ in 1..k {
        let mut next = vec![Q::zero()];
        next.extend(cur.iter().cloned());
        let next = poly_sub(&next, &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of 2cos(pi/m) over Q (monic, lowest degree first).
pub fn min_poly_2cos(m: u32) -> Vec<Q> {
    match m {
        1 => return vec![q(2), q(1)],
        2 => return vec![q(0), q(1)],
        3 => return vec![q(-1), q(1)],
        _ => {}
    }
    let phi = cyclotomic(2 * m);
    let d = (phi.len() - 1) / 2;
    let mut out = vec![Q::zero()];
    out[0] = q(phi[d]);
    for k in 1..=d {
        let ck = chebyshev(k);
        let scaled: Vec<Q> = ck.iter().map(|c| c * q(phi[d + k])).collect();
        let n = out.len().max(scaled.len());
        out.resize(n, Q::zero());
        for (i, c) in scaled.into_iter().enumerate() {
            out[i] += c;
        }
    }
    trim(&mut out);
    out
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Field {
    pub fn rational() -> Field {
        Field { conductor: 1, modulus: vec![q(-1), q(1)], lo: q(1), hi: q(1) }
    }

    /// The smallest field containing 2cos(pi/m) for every m in `orders`.
    pub fn for_orders<I: IntoIterator<Item = u32>>(orders: I) -> Field {
        let mut cond = 1u32;
        for m in orders {
            if m > 3 {
                cond = cond / gcd(cond, m) * m;
            }
        }
        Field::with_conductor(cond)
    }

    pub fn with_conductor(cond: u32) -> Field {
        if cond <= 3 {
            return Field::rational();
        }
        let modulus = min_poly_2cos(cond);
        let approx = 2.0 * (std::f64::consts::PI / cond as f64).cos();
        let mut width = 1e-12;
        let (mut lo, mut hi) = loop {
            let lo = Q::from_float(approx - width).unwrap();
            let hi = Q::from_float(approx + width).unwrap();
            if poly_eval(&modulus, &lo).is_negative() && poly_eval(&modulus, &hi).is_positive() {
                break (lo, hi);
            }
            width *= 16.0;
            assert!(width < 0.5, "failed to isolate 2cos(pi/{cond})");
        };
        let eps = Q::new(BigInt::one(), BigInt::one() << 80usize);
        while &hi - &lo > eps {
            bisect(&modulus, &mut lo, &mut hi);
        }
        Field { conductor: cond, modulus, lo, hi }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Q] {
        &self.modulus
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn describe(&self) -> String {
        if self.is_rational() {
            "Q".to_string()
        } else {
            format!("Q(2cos(pi/{}))", self.conductor)
        }
    }

    fn reduce(&self, mut p: Vec<Q>) -> FieldElem {
        trim(&mut p);
        let d = self.degree();
        if p.len() > d {
            p = poly_divrem(&p, &self.modulus).1;
        }
        p.resize(d, Q::zero());
        FieldElem(p)
    }

    pub fn from_q(&self, x: Q) -> FieldElem {
        self.reduce(vec![x])
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_q(q(n))
    }

    pub fn zero(&self) -> FieldElem {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// The primitive element theta = 2cos(pi/M).
    pub fn theta(&self) -> FieldElem {
        if self.is_rational() {
            return self.from_int(0);
        }
        self.reduce(vec![q(0), q(1)])
    }

    /// 2cos(pi/m); requires m <= 3 or m dividing the conductor.
    pub fn two_cos(&self, m: u32) -> FieldElem {
        match m {
            1 => self.from_int(-2),
            2 => self.from_int(0),
            3 => self.from_int(1),
            _ => {
                assert!(self.conductor.is_multiple_of(m), "2cos(pi/{m}) not in {}", self.describe());
                let k = (self.conductor / m) as usize;
                self.reduce(chebyshev(k))
            }
        }
    }

    /// 4cos^2(pi/m), rational for m in {1,2,3,4,6}.
    pub fn four_cos_sq(&self, m: u32) -> FieldElem {
        match m {
            1 => self.from_int(4),
            2 => self.from_int(0),
            3 => self.from_int(1),
            4 => self.from_int(2),
            6 => self.from_int(3),
            _ => {
                let c = self.two_cos(m);
                self.mul(&c, &c)
            }
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.reduce(poly_mul(&a.0, &b.0))
    }

    pub fn scale(&self, a: &FieldElem, k: &Q) -> FieldElem {
        FieldElem(a.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        let mut r0 = self.modulus.clone();
        let mut r1 = a.0.clone();
        trim(&mut r1);
        let mut t0 = vec![Q::zero()];
        let mut t1 = vec![Q::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (quo, rem) = poly_divrem(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&quo, &t1));
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let c = r0[0].clone();
        let t: Vec<Q> = t0.iter().map(|x| x / &c).collect();
        Some(self.reduce(t))
    }

    pub fn sign(&self, a: &FieldElem) -> Ordering {
        if self.is_zero(a) {
            return Ordering::Equal;
        }
        if self.is_rational() {
            return a.0[0].cmp(&Q::zero());
        }
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        loop {
            let (l, h) = interval_eval(&a.0, &lo, &hi);
            if l.is_positive() {
                return Ordering::Greater;
            }
            if h.is_negative() {
                return Ordering::Less;
            }
            bisect(&self.modulus, &mut lo, &mut hi);
        }
    }

    pub fn cmp(&self, a: &FieldElem, b: &FieldElem) -> Ordering {
        self.sign(&self.sub(a, b))
    }

    pub fn to_f64(&self, a: &FieldElem) -> f64 {
        let t = if self.is_rational() {
            0.0
        } else {
            2.0 * (std::f64::consts::PI / self.conductor as f64).cos()
        };
        a.0.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn format(&self, a: &FieldElem) -> String {
        let mut parts = Vec::new();
        for (k, c) in a.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mon = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let coef = if k > 0 && c.is_one() {
                String::new()
            } else if k > 0 && (-c).is_one() {
                "-".to_string()
            } else if k > 0 {
                format!("{c}*")
            } else {
                format!("{c}")
            };
            parts.push(format!("{coef}{mon}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+").replace("+-", "-")
        }
    }
}

fn bisect(modulus: &[Q], lo: &mut Q, hi: &mut Q) {
    let mid = (&*lo + &*hi) / q(2);
    if poly_eval(modulus, &mid).is_positive() {
        *hi = mid;
    } else {
        *lo = mid;
    }
}

/// Bounds for p(x) over x in [lo, hi] with 0 < lo.
fn interval_eval(p: &[Q], lo: &Q, hi: &Q) -> (Q, Q) {
    let mut low = Q::zero();
    let mut high = Q::zero();
    let mut plo = Q::one();
    let mut phi = Q::one();
    for c in p {
        if c.is_positive() {
            low += c * &plo;
            high += c * &phi;
        } else if c.is_negative() {
            low += c * &phi;
            high += c * &plo;
        }
        plo *= lo;
        phi *= hi;
    }
    (low, high)
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", coeffs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(10), vec![1, -1, 1, -1, 1]);
    }

    #[test]
    fn min_polys() {
        assert_eq!(min_poly_2cos(4), vec![q(-2), q(0), q(1)]);
        assert_eq!(min_poly_2cos(5), vec![q(-1), q(-1), q(1)]);
        assert_eq!(min_poly_2cos(6), vec![q(-3), q(0), q(1)]);
    }

    #[test]
    fn golden_ratio_signs_and_inverse() {
        let f = Field::for_orders([5]);
        let t = f.theta();
        let x = f.sub(&t, &f.from_q(Q::new(BigInt::from(1618), BigInt::from(1000))));
        assert_eq!(f.sign(&x), Ordering::Greater);
        let y = f.sub(&t, &f.from_q(Q::new(BigInt::from(1619), BigInt::from(1000))));
        assert_eq!(f.sign(&y), Ordering::Less);
        let inv = f.inv(&t).unwrap();
        assert_eq!(f.mul(&inv, &t), f.one());
        assert_eq!(f.two_cos(5), t);
    }

    #[test]
    fn two_cos_in_larger_field() {
        let f = Field::for_orders([4, 6]);
        assert_eq!(f.conductor(), 12);
        let r2 = f.two_cos(4);
        let r3 = f.two_cos(6);
        assert_eq!(f.mul(&r2, &r2), f.from_int(2));
        assert_eq!(f.mul(&r3, &r3), f.from_int(3));
        assert!((f.to_f64(&r2) - 2f64.sqrt()).abs() < 1e-12);
    }
}

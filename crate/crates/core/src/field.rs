//! Exact arithmetic in the real cyclotomic field `Q(2cos(π/L))`.
//!
//! Every value of the bilinear form `-cos(π/m)` with `m | L` lives in this
//! field. Elements are stored as residues modulo the minimal polynomial of
//! the generator `θ = 2cos(π/L)`, with rational coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Width below which the isolating interval of `θ` is considered tight
/// enough at construction time (2^-80).
const INITIAL_PRECISION_BITS: u32 = 80;

/// Upper bound on bisection rounds when deciding the sign of a nonzero
/// element. A nonzero element always separates from zero long before this.
const MAX_REFINEMENTS: usize = 4096;

/// An element of a [`NumberField`], `Σ coeffs[k]·θ^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldScalar {
    coeffs: Vec<BigRational>,
}

impl FieldScalar {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational when it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, factor: &BigRational) -> FieldScalar {
        FieldScalar {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &FieldScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn sub_assign_ref(&mut self, other: &FieldScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
    }

    pub fn neg(&self) -> FieldScalar {
        FieldScalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Add for &FieldScalar {
    type Output = FieldScalar;

    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl std::ops::Sub for &FieldScalar {
    type Output = FieldScalar;

    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            match k {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => write!(f, "θ")?,
                1 => write!(f, "{abs}·θ")?,
                _ if abs.is_one() => write!(f, "θ^{k}")?,
                _ => write!(f, "{abs}·θ^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Rational isolating interval `[lo, hi]` for `θ` together with cached powers.
#[derive(Clone, Debug)]
struct Enclosure {
    lo: BigRational,
    hi: BigRational,
    lo_pows: Vec<BigRational>,
    hi_pows: Vec<BigRational>,
}

impl Enclosure {
    fn new(lo: BigRational, hi: BigRational, degree: usize) -> Self {
        let powers = |x: &BigRational| {
            let mut out = Vec::with_capacity(degree);
            let mut acc = BigRational::one();
            for _ in 0..degree {
                out.push(acc.clone());
                acc *= x;
            }
            out
        };
        Enclosure {
            lo_pows: powers(&lo),
            hi_pows: powers(&hi),
            lo,
            hi,
        }
    }

    /// Interval enclosure of `Σ c_k θ^k`; requires `lo > 0`.
    fn evaluate(&self, coeffs: &[BigRational]) -> (BigRational, BigRational) {
        let mut low = BigRational::zero();
        let mut high = BigRational::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c * &self.lo_pows[k];
            let b = c * &self.hi_pows[k];
            if c.is_positive() {
                low += a;
                high += b;
            } else {
                low += b;
                high += a;
            }
        }
        (low, high)
    }
}

/// The field `Q(θ)` with `θ = 2cos(π/L)`.
#[derive(Clone, Debug)]
pub struct NumberField {
    order: u64,
    /// Monic minimal polynomial of `θ`, low degree first.
    modulus: Vec<BigRational>,
    enclosure: Option<Enclosure>,
}

impl NumberField {
    /// Builds the field generated by `2cos(π/order)`. `order` must be positive.
    pub fn new(order: u64) -> Self {
        assert!(order >= 1, "field order must be positive");
        let modulus = minimal_polynomial_of_twice_cos(order);
        let degree = modulus.len() - 1;
        let enclosure = if degree > 1 {
            Some(isolate_generator(order, &modulus))
        } else {
            None
        };
        NumberField {
            order,
            modulus,
            enclosure,
        }
    }

    /// `L`, the denominator of the generating angle `π/L`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigRational] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldScalar {
        FieldScalar {
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldScalar {
        self.from_rational(BigRational::one())
    }

    pub fn from_integer(&self, value: i64) -> FieldScalar {
        self.from_rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(&self, value: BigRational) -> FieldScalar {
        let mut s = self.zero();
        s.coeffs[0] = value;
        s
    }

    /// Reduces an arbitrary polynomial in `θ` modulo the minimal polynomial.
    pub fn from_polynomial(&self, poly: &[BigRational]) -> FieldScalar {
        let d = self.degree();
        let mut work: Vec<BigRational> = poly.to_vec();
        while work.len() > d {
            let top = work.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = work.len() - d;
            for (k, m) in self.modulus[..d].iter().enumerate() {
                work[shift + k] -= &top * m;
            }
        }
        work.resize(d, BigRational::zero());
        FieldScalar { coeffs: work }
    }

    /// The generator `θ` itself.
    pub fn generator(&self) -> FieldScalar {
        let one = BigRational::one();
        self.from_polynomial(&[BigRational::zero(), one])
    }

    pub fn mul(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        let d = self.degree();
        if d == 1 {
            return FieldScalar {
                coeffs: vec![&a.coeffs[0] * &b.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.from_polynomial(&prod)
    }

    /// `2cos(π/m)` for a divisor `m` of the field order.
    ///
    /// Uses `2cos(kφ) = D_k(2cos φ)` with `D_0 = 2`, `D_1 = x`,
    /// `D_{k+1} = x·D_k - D_{k-1}`.
    pub fn twice_cos_pi_over(&self, m: u64) -> Option<FieldScalar> {
        if m == 0 || !self.order.is_multiple_of(m) {
            return None;
        }
        let k = self.order / m;
        let poly = dickson(k as usize);
        Some(self.from_polynomial(&poly))
    }

    /// Certified sign of `x`: exact zero test, then interval refinement.
    pub fn sign(&self, x: &FieldScalar) -> Ordering {
        if x.is_zero() {
            return Ordering::Equal;
        }
        if let Some(r) = x.as_rational() {
            return r.cmp(&BigRational::zero());
        }
        let enclosure = self
            .enclosure
            .as_ref()
            .expect("irrational scalar in a rational field");
        let (low, high) = enclosure.evaluate(&x.coeffs);
        if low.is_positive() {
            return Ordering::Greater;
        }
        if high.is_negative() {
            return Ordering::Less;
        }
        let mut local = enclosure.clone();
        for _ in 0..MAX_REFINEMENTS {
            local = bisect(&self.modulus, &local);
            let (low, high) = local.evaluate(&x.coeffs);
            if low.is_positive() {
                return Ordering::Greater;
            }
            if high.is_negative() {
                return Ordering::Less;
            }
        }
        unreachable!("sign of a nonzero field element did not separate from zero")
    }

    /// Floating-point approximation for display only; never used in decisions.
    pub fn approximate(&self, x: &FieldScalar) -> f64 {
        let theta = 2.0 * (std::f64::consts::PI / self.order as f64).cos();
        x.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * theta + c.to_f64().unwrap_or(f64::NAN))
    }
}

fn eval_rational(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn bisect(modulus: &[BigRational], enc: &Enclosure) -> Enclosure {
    let degree = modulus.len() - 1;
    let mid = (&enc.lo + &enc.hi) / BigRational::from_integer(BigInt::from(2));
    let f_lo = eval_rational(modulus, &enc.lo);
    let f_mid = eval_rational(modulus, &mid);
    if f_mid.is_zero() {
        // θ is irrational whenever the degree exceeds one.
        unreachable!("rational root of an irreducible polynomial of degree {degree}");
    }
    if f_lo.is_positive() == f_mid.is_positive() {
        Enclosure::new(mid, enc.hi.clone(), degree)
    } else {
        Enclosure::new(enc.lo.clone(), mid, degree)
    }
}

fn isolate_generator(order: u64, modulus: &[BigRational]) -> Enclosure {
    let degree = modulus.len() - 1;
    let approx = 2.0 * (std::f64::consts::PI / order as f64).cos();
    let centre = BigRational::from_float(approx).expect("finite cosine");
    let radius = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64));
    let lo = &centre - &radius;
    let hi = &centre + &radius;
    let f_lo = eval_rational(modulus, &lo);
    let f_hi = eval_rational(modulus, &hi);
    assert!(
        f_lo.is_positive() != f_hi.is_positive() && !f_lo.is_zero() && !f_hi.is_zero(),
        "failed to isolate 2cos(π/{order})"
    );
    let target = BigRational::new(BigInt::one(), BigInt::one() << INITIAL_PRECISION_BITS);
    let mut enc = Enclosure::new(lo, hi, degree);
    while &enc.hi - &enc.lo > target {
        enc = bisect(modulus, &enc);
    }
    enc
}

/// `D_k` with `D_k(z + 1/z) = z^k + z^{-k}`, low degree first.
fn dickson(k: usize) -> Vec<BigRational> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut prev = vec![two];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![BigRational::zero(), BigRational::one()];
    for _ in 1..k {
        let mut next = vec![BigRational::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Integer cyclotomic polynomial `Φ_n`, low degree first.
fn cyclotomic(n: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic(d, memo);
            num = divide_exact(&num, &phi_d);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = rem.len() - dd;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Minimal polynomial of `2cos(π/order) = 2cos(2π/N)` with `N = 2·order`.
fn minimal_polynomial_of_twice_cos(order: u64) -> Vec<BigRational> {
    let n = 2 * order;
    if n <= 2 {
        // 2cos(π) = -2
        return vec![
            BigRational::from_integer(BigInt::from(2)),
            BigRational::one(),
        ];
    }
    let mut memo = HashMap::new();
    let phi = cyclotomic(n, &mut memo);
    let half = (phi.len() - 1) / 2;
    // z^{-d}·Φ_N(z) = c_d + Σ_k c_{d+k}·(z^k + z^{-k})
    let mut out = vec![BigRational::zero(); half + 1];
    out[0] = BigRational::from_integer(phi[half].clone());
    for k in 1..=half {
        let c = BigRational::from_integer(phi[half + k].clone());
        for (i, d) in dickson(k).iter().enumerate() {
            out[i] += &c * d;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn minimal_polynomials_of_small_orders() {
        assert_eq!(minimal_polynomial_of_twice_cos(1), vec![r(2), r(1)]);
        assert_eq!(minimal_polynomial_of_twice_cos(2), vec![r(0), r(1)]);
        assert_eq!(minimal_polynomial_of_twice_cos(3), vec![r(-1), r(1)]);
        assert_eq!(minimal_polynomial_of_twice_cos(4), vec![r(-2), r(0), r(1)]);
        // golden ratio: x^2 - x - 1
        assert_eq!(minimal_polynomial_of_twice_cos(5), vec![r(-1), r(-1), r(1)]);
        assert_eq!(minimal_polynomial_of_twice_cos(6), vec![r(-3), r(0), r(1)]);
    }

    #[test]
    fn cosines_live_in_the_field() {
        let field = NumberField::new(12);
        assert_eq!(field.degree(), 4);
        let c2 = field.twice_cos_pi_over(2).unwrap();
        assert!(c2.is_zero());
        let c3 = field.twice_cos_pi_over(3).unwrap();
        assert_eq!(c3, field.one());
        let c4 = field.twice_cos_pi_over(4).unwrap();
        assert_eq!(field.mul(&c4, &c4), field.from_integer(2));
        let c6 = field.twice_cos_pi_over(6).unwrap();
        assert_eq!(field.mul(&c6, &c6), field.from_integer(3));
        assert!(field.twice_cos_pi_over(5).is_none());
    }

    #[test]
    fn sign_is_certified_for_tiny_differences() {
        let field = NumberField::new(4);
        let sqrt2 = field.generator();
        // 140/99 < √2 < 99/70
        let a = field.from_rational(BigRational::new(BigInt::from(99), BigInt::from(70)));
        let b = field.from_rational(BigRational::new(BigInt::from(140), BigInt::from(99)));
        assert_eq!(field.sign(&(&sqrt2 - &a)), Ordering::Less);
        assert_eq!(field.sign(&(&sqrt2 - &b)), Ordering::Greater);
        // a very close rational approximation still separates
        let close = field.from_rational(BigRational::from_float(std::f64::consts::SQRT_2).unwrap());
        assert_ne!(field.sign(&(&sqrt2 - &close)), Ordering::Equal);
        assert_eq!(field.sign(&(&sqrt2 - &sqrt2)), Ordering::Equal);
    }

    #[test]
    fn display_is_readable() {
        let field = NumberField::new(4);
        let x = &field.generator() + &field.from_integer(-3);
        assert_eq!(x.to_string(), "-3 + θ");
        assert_eq!(field.zero().to_string(), "0");
    }

    #[test]
    fn pentagon_field_matches_numeric_cosine() {
        let field = NumberField::new(10);
        let c5 = field.twice_cos_pi_over(5).unwrap();
        let approx = field.approximate(&c5);
        assert!((approx - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    }
}

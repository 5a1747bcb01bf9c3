//! Exact arithmetic in a cyclotomic field `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(N)-1)` as
//! integer numerators over a single positive common denominator. Every value is
//! kept in canonical form (reduced modulo the N-th cyclotomic polynomial,
//! `gcd(numerators, denominator) = 1`), so structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use std::sync::LazyLock;

use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;

/// Precomputed data for one cyclotomic field.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    degree: usize,
    /// `reduction[k]` is `x^(degree + k)` reduced modulo the cyclotomic polynomial.
    reduction: Vec<Vec<i128>>,
    /// `powers[k]` is `zeta^k` in the power basis, `0 <= k < conductor`.
    powers: Vec<Vec<i128>>,
}

static FIELDS: LazyLock<Mutex<HashMap<u64, &'static CyclotomicField>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() < den.len() {
        return vec![0];
    }
    let mut quo = vec![0i128; rem.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn];
        quo[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    quo
}

/// Coefficients (lowest degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i128> {
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CyclotomicField {
    /// Returns the shared field `Q(zeta_conductor)`, building it on first use.
    pub fn get(conductor: u64) -> &'static CyclotomicField {
        assert!(conductor >= 1);
        let mut map = FIELDS.lock().expect("field registry poisoned");
        if let Some(f) = map.get(&conductor) {
            return f;
        }
        let field: &'static CyclotomicField = Box::leak(Box::new(Self::build(conductor)));
        map.insert(conductor, field);
        field
    }

    fn build(conductor: u64) -> Self {
        let phi_poly = cyclotomic_polynomial(conductor);
        let degree = phi_poly.len() - 1;
        // x^degree = -(lower part of Phi)
        let mut cur: Vec<i128> = phi_poly[..degree].iter().map(|c| -c).collect();
        let mut reduction = Vec::with_capacity(degree.max(1));
        for _ in 0..degree.max(1) {
            reduction.push(cur.clone());
            cur = Self::shift_reduce(&cur, &phi_poly);
        }
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut p = vec![0i128; degree];
        if degree > 0 {
            p[0] = 1;
        }
        for _ in 0..conductor {
            powers.push(p.clone());
            p = Self::shift_reduce(&p, &phi_poly);
        }
        CyclotomicField { conductor, degree, reduction, powers }
    }

    fn shift_reduce(v: &[i128], phi_poly: &[i128]) -> Vec<i128> {
        let d = v.len();
        let mut out = vec![0i128; d];
        if d == 0 {
            return out;
        }
        let top = v[d - 1];
        for i in (1..d).rev() {
            out[i] = v[i - 1];
        }
        if top != 0 {
            for i in 0..d {
                out[i] -= top * phi_poly[i];
            }
        }
        out
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&'static self) -> CycScalar {
        CycScalar { field: self, num: vec![0; self.degree], den: 1 }
    }

    pub fn one(&'static self) -> CycScalar {
        self.from_int(1)
    }

    pub fn from_int(&'static self, n: i64) -> CycScalar {
        let mut num = vec![0i128; self.degree];
        num[0] = n as i128;
        CycScalar { field: self, num, den: 1 }
    }

    pub fn from_rat(&'static self, r: Rat) -> CycScalar {
        let mut s = self.from_int(*r.numer());
        s.den = *r.denom() as i128;
        s.normalize();
        s
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(&'static self, k: i64) -> CycScalar {
        let k = k.rem_euclid(self.conductor as i64) as usize;
        CycScalar { field: self, num: self.powers[k].clone(), den: 1 }
    }

    /// `exp(2 pi i * t)` for a rational number of turns `t`; fails when the
    /// root of unity is not in this field.
    pub fn root_of_unity(&'static self, turns: Rat) -> Result<CycScalar> {
        let scaled = turns * Rat::from_integer(self.conductor as i64);
        if !scaled.is_integer() {
            return Err(Error::FieldTooSmall { turns: turns.to_string(), conductor: self.conductor });
        }
        Ok(self.zeta_pow(scaled.to_integer()))
    }
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct CycScalar {
    field: &'static CyclotomicField,
    num: Vec<i128>,
    den: i128,
}

fn checked(op: Option<i128>) -> i128 {
    op.expect("cyclotomic coefficient overflow (i128)")
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl CycScalar {
    pub fn field(&self) -> &'static CyclotomicField {
        self.field
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -*c;
            }
        }
        let mut g = self.den;
        for c in &self.num {
            if g == 1 {
                break;
            }
            g = gcd_i128(g, *c);
        }
        if self.num.iter().all(|c| *c == 0) {
            self.den = 1;
            return;
        }
        if g > 1 {
            self.den /= g;
            for c in &mut self.num {
                *c /= g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| *c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.den == 1 && self.num.first() == Some(&1) && self.num[1..].iter().all(|c| *c == 0)
    }

    /// Power-basis coefficients as exact rationals.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(BigInt::from(*c), BigInt::from(self.den)))
            .collect()
    }

    /// Numerators and common denominator of the canonical form.
    pub fn raw_parts(&self) -> (&[i128], i128) {
        (&self.num, self.den)
    }

    /// Rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).any(|c| *c != 0) {
            return None;
        }
        Some(BigRational::new(BigInt::from(self.num[0]), BigInt::from(self.den)))
    }

    /// Image under the embedding `zeta -> exp(2 pi i / N)`. Display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.field.conductor as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.num.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += *c as f64 * t.cos();
            im += *c as f64 * t.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }

    fn same_field(&self, other: &CycScalar) {
        assert!(
            std::ptr::eq(self.field, other.field),
            "mixing scalars from Q(zeta_{}) and Q(zeta_{})",
            self.field.conductor,
            other.field.conductor
        );
    }

    pub fn scale_int(&self, k: i64) -> CycScalar {
        let mut out = self.clone();
        for c in &mut out.num {
            *c = checked(c.checked_mul(k as i128));
        }
        out.normalize();
        out
    }

    pub fn pow(&self, e: u32) -> CycScalar {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.field.degree;
        // Solve M c = e_0 where column j of M is self * x^j.
        let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d];
        let mut col = self.clone();
        let x = self.field.zeta_pow(1);
        for j in 0..d {
            for (i, c) in col.coefficients().into_iter().enumerate() {
                rows[i][j] = c;
            }
            col = &col * &x;
        }
        rows[0][d] = BigRational::one();
        for c in 0..d {
            let piv = (c..d).find(|r| !rows[*r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            rows.swap(c, piv);
            let p = rows[c][c].clone();
            for k in c..=d {
                rows[c][k] = &rows[c][k] / &p;
            }
            for r in 0..d {
                if r != c && !rows[r][c].is_zero() {
                    let f = rows[r][c].clone();
                    for k in c..=d {
                        let t = &f * &rows[c][k];
                        rows[r][k] -= t;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = rows.into_iter().map(|r| r[d].clone()).collect();
        let mut den = BigInt::one();
        for s in &sol {
            den = den.lcm(s.denom());
        }
        let num = sol
            .iter()
            .map(|s| (s.numer() * (&den / s.denom())).to_i128().expect("inverse coefficient overflow"))
            .collect();
        let mut out = CycScalar { field: self.field, num, den: den.to_i128().expect("inverse denominator overflow") };
        out.normalize();
        Ok(out)
    }

    pub fn div(&self, other: &CycScalar) -> Result<CycScalar> {
        Ok(self * &other.inv()?)
    }

    /// Galois automorphism `zeta -> zeta^k` (k coprime to the conductor).
    pub fn galois(&self, k: i64) -> CycScalar {
        let mut acc = self.field.zero();
        for (j, c) in self.num.iter().enumerate() {
            if *c != 0 {
                let mut t = self.field.zeta_pow(k * j as i64);
                for x in &mut t.num {
                    *x = checked(x.checked_mul(*c));
                }
                acc = &acc + &t;
            }
        }
        acc.den = checked(acc.den.checked_mul(self.den));
        acc.normalize();
        acc
    }

    /// Complex conjugate.
    pub fn conj(&self) -> CycScalar {
        self.galois(-1)
    }

    /// Exact comparison with a canonical printable form, used by reports.
    pub fn to_exact_string(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let r = Ratio::new(BigInt::from(*c), BigInt::from(self.den));
            parts.push(match k {
                0 => format!("{r}"),
                1 => format!("{r}*z"),
                _ => format!("{r}*z^{k}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.den == other.den && self.num == other.num
    }
}
impl Eq for CycScalar {}

impl std::hash::Hash for CycScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_complex();
        write!(f, "[{}] (~{re:.6}{im:+.6}i)", self.to_exact_string())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_exact_string())
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.same_field(rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let g = gcd_i128(self.den, rhs.den);
        let fa = rhs.den / g;
        let fb = self.den / g;
        let den = checked(self.den.checked_mul(fa));
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| checked(checked(a.checked_mul(fa)).checked_add(checked(b.checked_mul(fb)))))
            .collect();
        let mut out = CycScalar { field: self.field, num, den };
        out.normalize();
        out
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { field: self.field, num: self.num.iter().map(|c| -c).collect(), den: self.den }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.same_field(rhs);
        let d = self.field.degree;
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        let mut acc = vec![0i128; 2 * d];
        for (i, a) in self.num.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if *b != 0 {
                    acc[i + j] = checked(acc[i + j].checked_add(checked(a.checked_mul(*b))));
                }
            }
        }
        let (low, high) = acc.split_at_mut(d);
        for (k, h) in high.iter().enumerate() {
            if *h != 0 {
                for (l, red) in low.iter_mut().zip(&self.field.reduction[k]) {
                    if *red != 0 {
                        *l = checked(l.checked_add(checked(h.checked_mul(*red))));
                    }
                }
            }
        }
        acc.truncate(d);
        let mut out = CycScalar { field: self.field, num: acc, den: checked(self.den.checked_mul(rhs.den)) };
        out.normalize();
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Parameters of the field attached to quantum sl2 at the root of unity `q = exp(2 pi i / r)`
/// with label denominator `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldParams {
    pub r: u32,
    pub d: u32,
}

impl FieldParams {
    pub fn new(r: u32, d: u32) -> Result<Self> {
        if r < 3 || r.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("r must be odd and >= 3, got {r}")));
        }
        if d == 0 {
            return Err(Error::InvalidParams("label denominator must be positive".into()));
        }
        Ok(FieldParams { r, d })
    }

    /// Since `r` is odd, `r' = r`.
    pub fn r_prime(&self) -> u32 {
        self.r
    }

    /// Conductor: contains `i`, `q^(1/(2D^2))` (products of two halved labels) and `sqrt(r)`.
    pub fn conductor(&self) -> u64 {
        let r = self.r as u64;
        let d = self.d as u64;
        (4 * r).lcm(&(2 * r * d * d))
    }

    pub fn field(&self) -> &'static CyclotomicField {
        CyclotomicField::get(self.conductor())
    }

    /// `q^e = exp(2 pi i e / r)`.
    pub fn q_power(&self, e: Rat) -> Result<CycScalar> {
        self.field().root_of_unity(e / Rat::from_integer(self.r as i64))
    }

    /// `{x} = q^x - q^-x`.
    pub fn brace(&self, x: Rat) -> Result<CycScalar> {
        Ok(self.q_power(x)? - self.q_power(-x)?)
    }

    /// The positive real square root of `r'`, obtained from the quadratic Gauss sum.
    pub fn sqrt_rprime(&self) -> CycScalar {
        let field = self.field();
        let r = self.r as i64;
        let mut g = field.zero();
        for k in 0..r {
            g = g + self.q_power(Rat::from_integer(k * k)).expect("integer q powers always exist");
        }
        if r % 4 == 1 {
            g
        } else {
            // Gauss sum is i*sqrt(r)
            let minus_i = field.zeta_pow(-(field.conductor() as i64) / 4);
            g * minus_i
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> FieldParams {
        FieldParams::new(3, 4).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(96).len() - 1, 32);
    }

    #[test]
    fn q_plus_minus_q_is_zero() {
        let p = p3();
        let q = p.q_power(Rat::from_integer(1)).unwrap();
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn q_has_order_r() {
        for r in [3u32, 5, 7] {
            let p = FieldParams::new(r, 2).unwrap();
            let q = p.q_power(Rat::from_integer(1)).unwrap();
            assert!(q.pow(r).is_one());
            for k in 1..r {
                assert!(!q.pow(k).is_one());
            }
        }
    }

    #[test]
    fn brace_times_bracket() {
        let p = p3();
        let b1 = p.brace(Rat::from_integer(1)).unwrap();
        let b2 = p.brace(Rat::from_integer(2)).unwrap();
        let bracket2 = b2.div(&b1).unwrap();
        assert_eq!(&b1 * &bracket2, b2);
    }

    #[test]
    fn q_power_halving_and_inverse() {
        let p = p3();
        assert!(p.q_power(Rat::from_integer(0)).unwrap().is_one());
        let h = p.q_power(Rat::new(1, 2)).unwrap();
        assert_eq!(&h * &h, p.q_power(Rat::from_integer(1)).unwrap());
        let a = Rat::new(3, 8);
        assert!((p.q_power(a).unwrap() * p.q_power(-a).unwrap()).is_one());
    }

    #[test]
    fn q_power_rejects_too_fine_exponents() {
        let p = FieldParams::new(3, 1).unwrap();
        assert!(p.q_power(Rat::new(1, 5)).is_err());
    }

    #[test]
    fn q_power_kernel_is_r_z() {
        let p = p3();
        for k in -6..=6i64 {
            let v = p.q_power(Rat::from_integer(k)).unwrap();
            assert_eq!(v.is_one(), k % 3 == 0, "k = {k}");
        }
        assert!(!p.q_power(Rat::new(3, 2)).unwrap().is_one());
    }

    #[test]
    fn sqrt_rprime_is_positive_root() {
        for r in [3u32, 5, 7, 9] {
            let p = FieldParams::new(r, 2).unwrap();
            let s = p.sqrt_rprime();
            assert_eq!(&s * &s, p.field().from_int(r as i64));
            let (re, im) = s.to_complex();
            assert!(re > 0.0 && im.abs() < 1e-9);
            assert!((&s * &s.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = p3().field();
        assert!(matches!(f.zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn conductor_formula() {
        assert_eq!(FieldParams::new(3, 4).unwrap().conductor(), 96);
        assert_eq!(FieldParams::new(3, 2).unwrap().conductor(), 24);
        assert_eq!(FieldParams::new(5, 2).unwrap().conductor(), 40);
        assert!(FieldParams::new(4, 2).is_err());
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Parses `Q` or `p:<odd prime>`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        if t == "Q" || t == "q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = t.strip_prefix("p:") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::UnsupportedField(format!("cannot read prime in {t:?}")))?;
            return Field::prime(p);
        }
        Err(Error::UnsupportedField(format!(
            "unknown field {t:?}, expected Q or p:<odd prime>"
        )))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::UnsupportedField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.coerce(&Scalar::from_i64(n))
    }

    pub fn frac(&self, n: i64, d: i64) -> Scalar {
        self.coerce(&Scalar::ratio(n, d))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    /// Maps a scalar into this field. Rationals are reduced mod p.
    pub fn coerce(&self, s: &Scalar) -> Scalar {
        match (self, &s.0) {
            (Field::Rational, _) => s.clone(),
            (Field::Prime(p), Repr::Rat(r)) => Scalar(Repr::Mod {
                v: r.residue(*p),
                p: *p,
            }),
            (Field::Prime(p), Repr::Mod { v, p: q }) => {
                assert_eq!(p, q, "mixing residues of different primes");
                Scalar(Repr::Mod { v: *v, p: *p })
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("p:{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Debug)]
enum Rational {
    // reduced, den > 0, neither part equal to i64::MIN
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    fn from_i128(n: i128, d: i128) -> Rational {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::from_big(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn from_big(r: BigRational) -> Rational {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(Box::new(r))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Rational::from_i128(
                        *a as i128 * *d as i128 + *c as i128 * *b as i128,
                        *b as i128 * *d as i128,
                    )
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(a, b) => Rational::Small(-a, *b),
            Rational::Big(r) => Rational::from_big(-(**r).clone()),
        }
    }

    fn inv(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(a, b) => Rational::from_i128(*b as i128, *a as i128),
            Rational::Big(r) => Rational::from_big(r.recip()),
        })
    }

    fn residue(&self, p: u64) -> u64 {
        if let Rational::Small(a, b) = self {
            let nm = (*a as i128).rem_euclid(p as i128) as u64;
            let dm = (*b as i128).rem_euclid(p as i128) as u64;
            assert!(dm != 0, "denominator divisible by the field characteristic {p}");
            return if dm == 1 { nm } else { mul_mod(nm, pow_mod(dm, p - 2, p), p) };
        }
        let (n, d) = match self {
            Rational::Small(a, b) => (BigInt::from(*a), BigInt::from(*b)),
            Rational::Big(r) => (r.numer().clone(), r.denom().clone()),
        };
        let pb = BigInt::from(p);
        let nm = n.mod_floor(&pb).to_u64().unwrap();
        let dm = d.mod_floor(&pb).to_u64().unwrap();
        assert!(dm != 0, "denominator divisible by the field characteristic {p}");
        mul_mod(nm, pow_mod(dm, p - 2, p), p)
    }

    fn parts(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small(a, b) => (BigInt::from(*a), BigInt::from(*b)),
            Rational::Big(r) => (r.numer().clone(), r.denom().clone()),
        }
    }

    fn eq(&self, o: &Rational) -> bool {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

/// An exact field element: a rational number or a residue modulo an odd prime.
///
/// Rationals mix freely with residues; the rational operand is reduced
/// modulo the prime first.
#[derive(Clone, Debug)]
pub struct Scalar(Repr);

#[derive(Clone, Debug)]
enum Repr {
    Rat(Rational),
    Mod { v: u64, p: u64 },
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar(Repr::Rat(Rational::Small(0, 1)))
    }

    pub fn one() -> Scalar {
        Scalar(Repr::Rat(Rational::Small(1, 1)))
    }

    pub fn from_i64(n: i64) -> Scalar {
        Scalar(Repr::Rat(Rational::from_i128(n as i128, 1)))
    }

    /// n/d as a rational. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar(Repr::Rat(Rational::from_i128(n as i128, d as i128)))
    }

    pub fn from_big(n: BigInt, d: BigInt) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        Some(Scalar(Repr::Rat(Rational::from_big(BigRational::new(n, d)))))
    }

    pub fn residue(v: u64, p: u64) -> Scalar {
        Scalar(Repr::Mod { v: v % p, p })
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => matches!(r, Rational::Small(1, 1)),
            Repr::Mod { v, .. } => *v == 1,
        }
    }

    /// The prime if this is a residue.
    pub fn modulus(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Mod { p, .. } => Some(*p),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match &self.0 {
            Repr::Rat(r) => r.inv().map(|r| Scalar(Repr::Rat(r))),
            Repr::Mod { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar(Repr::Mod {
                        v: pow_mod(*v, p - 2, *p),
                        p: *p,
                    }))
                }
            }
        }
    }

    /// Canonical `num/den` form. Residues print their representative in `[0, p)`.
    pub fn canonical(&self) -> String {
        match &self.0 {
            Repr::Rat(r) => {
                let (n, d) = r.parts();
                format!("{n}/{d}")
            }
            Repr::Mod { v, .. } => format!("{v}/1"),
        }
    }

    /// Reads `n`, `-n` or `n/d` into the given field.
    pub fn parse(s: &str, field: Field) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::Schema(format!("cannot read scalar {s:?}"));
        let (n, d) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Schema(format!("zero denominator in {s:?}")));
        }
        if let Field::Prime(p) = field {
            if (&d % BigInt::from(p)).is_zero() {
                return Err(Error::Schema(format!(
                    "denominator of {s:?} vanishes modulo {p}"
                )));
            }
        }
        let q = Scalar(Repr::Rat(Rational::from_big(BigRational::new(n, d))));
        Ok(field.coerce(&q))
    }

    fn lift(a: &Scalar, b: &Scalar) -> Option<(u64, u64, u64)> {
        match (&a.0, &b.0) {
            (Repr::Mod { v, p }, Repr::Mod { v: w, p: q }) => {
                assert_eq!(p, q, "mixing residues of different primes");
                Some((*v, *w, *p))
            }
            (Repr::Mod { v, p }, Repr::Rat(r)) => Some((*v, r.residue(*p), *p)),
            (Repr::Rat(r), Repr::Mod { v, p }) => Some((r.residue(*p), *v, *p)),
            _ => None,
        }
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &o.0) {
            return Scalar(Repr::Rat(a.add(b)));
        }
        let (a, b, p) = Scalar::lift(self, o).unwrap();
        Scalar(Repr::Mod {
            v: ((a as u128 + b as u128) % p as u128) as u64,
            p,
        })
    }

    fn mul_ref(&self, o: &Scalar) -> Scalar {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &o.0) {
            return Scalar(Repr::Rat(a.mul(b)));
        }
        let (a, b, p) = Scalar::lift(self, o).unwrap();
        Scalar(Repr::Mod {
            v: mul_mod(a, b, p),
            p,
        })
    }

    fn neg_ref(&self) -> Scalar {
        match &self.0 {
            Repr::Rat(r) => Scalar(Repr::Rat(r.neg())),
            Repr::Mod { v, p } => Scalar(Repr::Mod {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            }),
        }
    }

    /// The rational value, if this is a rational.
    pub fn as_ratio(&self) -> Option<(BigInt, BigInt)> {
        match &self.0 {
            Repr::Rat(r) => Some(r.parts()),
            Repr::Mod { .. } => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Rat(Rational::Small(n, _)) => *n < 0,
            Repr::Rat(Rational::Big(r)) => r.is_negative(),
            Repr::Mod { .. } => false,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        if let (Repr::Rat(a), Repr::Rat(b)) = (&self.0, &o.0) {
            return a.eq(b);
        }
        let (a, b, _) = Scalar::lift(self, o).unwrap();
        a == b
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(r) => {
                let (n, d) = r.parts();
                if d.is_one() {
                    write!(f, "{n}")
                } else {
                    write!(f, "{n}/{d}")
                }
            }
            Repr::Mod { v, p } => write!(f, "{v} (mod {p})"),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.add_ref(o)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_ref(o)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        self.add_ref(&o)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        self.mul_ref(&o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(&o.neg_ref());
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_ref(o);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_is_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        assert_eq!(&a + &b, Scalar::ratio(1, 2));
        assert_eq!(&a * &b, Scalar::ratio(1, 18));
        assert_eq!(a.inv().unwrap(), Scalar::from_i64(3));
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from_i64(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.canonical(), "85070591730234615847396907784232501249/1");
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Rat(Rational::Small(..))));
    }

    #[test]
    fn residues() {
        let f = Field::prime(7).unwrap();
        let h = f.frac(1, 2);
        assert_eq!(h.canonical(), "4/1");
        assert_eq!(&h + &h, f.one());
        assert_eq!(&h * &Scalar::from_i64(2), Scalar::one());
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert_eq!(Field::parse("p:1000000007").unwrap(), Field::Prime(1_000_000_007));
    }

    #[test]
    fn parse_and_canonical() {
        let s = Scalar::parse("-6/4", Field::Rational).unwrap();
        assert_eq!(s.canonical(), "-3/2");
        assert_eq!(Scalar::parse("5", Field::Rational).unwrap().canonical(), "5/1");
        assert!(Scalar::parse("1/0", Field::Rational).is_err());
        assert!(Scalar::parse("x", Field::Rational).is_err());
        assert!(Scalar::parse("1/7", Field::Prime(7)).is_err());
    }
}

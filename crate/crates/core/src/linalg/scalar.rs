//! Exact field elements over ℚ or F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[derive(Default)]
pub enum Field {
    #[default]
    Rational,
    Prime { p: u32 },
}


pub const DEFAULT_PRIME: u32 = 32003;

impl Field {
    pub fn prime(p: u32) -> Self {
        Field::Prime { p }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::S(0, 1)),
            Field::Prime { p } => Scalar::P(0, p),
        }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::S(v, 1)),
            Field::Prime { p } => Scalar::P(v.rem_euclid(p as i64) as u32, p),
        }
    }

    /// Parses "a", "-a" or "a/b".
    pub fn parse(self, s: &str) -> Result<Scalar, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num).map_err(|e| format!("bad coefficient {s:?}: {e}"))?;
        let d = BigInt::from_str(den).map_err(|e| format!("bad coefficient {s:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        match self {
            Field::Rational => Ok(Scalar::Q(Rat::from_big(BigRational::new(n, d)))),
            Field::Prime { p } => {
                let pm = BigInt::from(p);
                let nn = n.mod_floor(&pm).to_u32().unwrap();
                let dd = d.mod_floor(&pm).to_u32().unwrap();
                if dd == 0 {
                    return Err(format!("denominator of {s:?} vanishes mod {p}"));
                }
                Ok(Scalar::P(nn, p).mul(&Scalar::P(dd, p).inv()))
            }
        }
    }

    pub fn is_prime_number(p: u32) -> bool {
        if p < 2 {
            return false;
        }
        let mut d = 2u32;
        while (d as u64) * (d as u64) <= p as u64 {
            if p.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }
}

/// Rational number with a machine-word fast path.
#[derive(Clone, Debug)]
pub enum Rat {
    /// Reduced, denominator positive.
    S(i64, i64),
    /// Only used when the value does not fit the small form.
    B(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d != 0);
        let g = gcd_i128(n, d).max(1);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::S(a, b),
            _ => Rat::B(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::S(a, b),
            _ => Rat::B(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::S(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rat::B(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::S(0, _))
    }

    fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::S(a, b), Rat::S(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rat::from_i128(*a as i128 + *c as i128, 1);
                }
                Rat::from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::S(a, b) if *a != i64::MIN => Rat::S(-a, *b),
            _ => Rat::from_big(-self.to_big()),
        }
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::S(a, b), Rat::S(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rat::from_i128(*a as i128 * *c as i128, 1);
                }
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    fn inv(&self) -> Rat {
        match self {
            Rat::S(a, b) => Rat::from_i128(*b as i128, *a as i128),
            Rat::B(r) => Rat::from_big(r.recip()),
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Rat) -> bool {
        match (self, o) {
            (Rat::S(a, b), Rat::S(c, d)) => a == c && b == d,
            (Rat::B(x), Rat::B(y)) => x == y,
            _ => false,
        }
    }
}
impl Eq for Rat {}

impl std::hash::Hash for Rat {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self {
            Rat::S(a, b) => {
                a.hash(h);
                b.hash(h);
            }
            Rat::B(r) => r.hash(h),
        }
    }
}

/// An element of the configured field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    /// Value and modulus.
    P(u32, u32),
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P(_, p) => Field::Prime { p: *p },
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(Rat::S(1, 1)) => true,
            Scalar::P(1, _) => true,
            _ => false,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::P(a, p), Scalar::P(b, _)) => Scalar::P(((*a as u64 + *b as u64) % *p as u64) as u32, *p),
            _ => panic!("mixed fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::P(a, p) => Scalar::P(if *a == 0 { 0 } else { p - a }, *p),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::P(a, p), Scalar::P(b, _)) => Scalar::P(((*a as u64 * *b as u64) % *p as u64) as u32, *p),
            _ => panic!("mixed fields"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.inv()),
            Scalar::P(a, p) => Scalar::P(pow_mod(*a as u64, *p as u64 - 2, *p as u64) as u32, *p),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    /// The value as a big rational, if over ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(r) => Some(r.to_big()),
            Scalar::P(..) => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rat::S(a, _)) => *a < 0,
            Scalar::Q(Rat::B(r)) => r.is_negative(),
            Scalar::P(..) => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(Rat::S(a, 1)) => write!(f, "{a}"),
            Scalar::Q(Rat::S(a, b)) => write!(f, "{a}/{b}"),
            Scalar::Q(Rat::B(r)) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::P(v, _) => write!(f, "{v}"),
        }
    }
}

//! Arbitrary-precision rationals.
//!
//! `Rat` wraps [`num_rational::BigRational`], which keeps every value fully
//! reduced with a positive denominator. All lattice quantities in this crate
//! (norms, determinants, densities) are carried as `Rat`, so equality is
//! always exact equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// `p/q` as a reduced rational. Panics on `q = 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Self {
        assert!(!q.is_zero(), "zero denominator");
        Rat(BigRational::new(p, q))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Nearest integer, ties to the even one.
    pub fn round_half_even(&self) -> BigInt {
        let fl = self.floor();
        let frac = self - &Rat::from_bigint(fl.clone());
        let half = Rat::new(1, 2);
        match frac.cmp(&half) {
            Ordering::Less => fl,
            Ordering::Greater => fl + 1,
            Ordering::Equal => {
                if (&fl % 2i32).is_zero() {
                    fl
                } else {
                    fl + 1
                }
            }
        }
    }

    /// Nearest integer with ties rounded up, i.e. the unique `n` with
    /// `self - n` in `[-1/2, 1/2)`. Used wherever a canonical coset
    /// representative is needed.
    pub fn round_half_up(&self) -> BigInt {
        (self + &Rat::new(1, 2)).floor()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational out of f64 range")
    }

    /// The decimal expansion of `sqrt(self)` to `sig` significant digits,
    /// correctly rounded (ties to even). `self` must be nonnegative.
    ///
    /// The digits are produced by integer square roots of scaled numerators,
    /// so no floating point is involved and the output is reproducible.
    pub fn sqrt_decimal(&self, sig: u32) -> String {
        assert!(!self.is_negative(), "sqrt of negative rational");
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        // Exponent e with 10^e <= sqrt(self) < 10^(e+1), i.e.
        // 10^(2e) <= self < 10^(2e+2).
        let ten = BigInt::from(10);
        let mut e: i64 = 0;
        let cmp_pow10 = |k: i64| -> Ordering {
            // compare self with 10^k
            if k >= 0 {
                self.numer().cmp(&(self.denom() * ten.pow(k as u32)))
            } else {
                (self.numer() * ten.pow((-k) as u32)).cmp(self.denom())
            }
        };
        while cmp_pow10(2 * e) == Ordering::Less {
            e -= 1;
        }
        while cmp_pow10(2 * e + 2) != Ordering::Less {
            e += 1;
        }
        // n = round(sqrt(self) * 10^t) with t = sig - 1 - e lands in
        // [10^(sig-1), 10^sig] and carries the significant digits.
        let t = sig as i64 - 1 - e;
        let (num, den) = if t >= 0 {
            (
                self.numer() * ten.pow(2 * t as u32),
                self.denom().clone(),
            )
        } else {
            (
                self.numer().clone(),
                self.denom() * ten.pow((-2 * t) as u32),
            )
        };
        // floor(sqrt(num/den))
        let mut r = (&num / &den).sqrt();
        while (&r + 1u32) * (&r + 1u32) * &den <= num {
            r += 1u32;
        }
        while &r * &r * &den > num {
            r -= 1u32;
        }
        // round: compare num/den with (r + 1/2)^2
        let lhs = 4u32 * &num;
        let rhs = &den * (4u32 * &r * &r + 4u32 * &r + 1u32);
        let mut digits = match lhs.cmp(&rhs) {
            Ordering::Greater => r + 1u32,
            Ordering::Less => r,
            Ordering::Equal => {
                // exact tie: to even
                if (&r % 2u32).is_zero() {
                    r
                } else {
                    r + 1u32
                }
            }
        };
        if digits == ten.pow(sig) {
            digits = ten.pow(sig - 1);
            e += 1;
        }
        let ds = digits.to_string();
        debug_assert_eq!(ds.len(), sig as usize);
        format_digits(&ds, e)
    }

    /// Decimal expansion of `self` itself (not its square root) to `sig`
    /// significant digits, same rounding rules.
    pub fn decimal(&self, sig: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.is_negative() {
            return format!("-{}", self.abs().decimal(sig));
        }
        let sq = self * self;
        sq.sqrt_decimal(sig)
    }
}

/// Lay out `sig` significant digits with exponent `e` (value =
/// 0.digits * 10^(e+1)) as a plain decimal string.
fn format_digits(ds: &str, e: i64) -> String {
    let sig = ds.len() as i64;
    if e >= 0 && e < sig {
        let point = (e + 1) as usize;
        if point == ds.len() {
            ds.to_string()
        } else {
            format!("{}.{}", &ds[..point], &ds[point..])
        }
    } else if e >= sig {
        // pad with zeros up to the decimal point
        let zeros = (e + 1 - sig) as usize;
        format!("{}{}", ds, "0".repeat(zeros))
    } else {
        // e < 0: leading zeros after the point
        let zeros = (-e - 1) as usize;
        format!("0.{}{}", "0".repeat(zeros), ds)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
        };
        match s.split_once('/') {
            None => Ok(Rat::from_bigint(parse_int(s)?)),
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(Rat::from_big(parse_int(p)?, q))
            }
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_bigint(n)
    }
}

macro_rules! binop {
    ($trait:ident, $m:ident, $op:tt) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self).div(&rhs)
    }
}

impl Div<&Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        (&self).div(rhs)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Add<i64> for &Rat {
    type Output = Rat;
    fn add(self, rhs: i64) -> Rat {
        self + &Rat::from_int(rhs)
    }
}

/// Sum of squares of a rational vector.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}

pub fn norm_sq(a: &[Rat]) -> Rat {
    dot(a, a)
}

/// Sign helper for `BigInt`.
pub fn bigint_is_even(n: &BigInt) -> bool {
    (n % 2u32).is_zero()
}

/// `lcm` of a denominator collection, always positive.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rat>>(vals: I) -> BigInt {
    let mut l = BigInt::one();
    for v in vals {
        l = num_integer::lcm(l, v.denom().clone());
    }
    debug_assert!(l.sign() == Sign::Plus);
    l
}

impl std::ops::Add<BigInt> for Rat {
    type Output = Rat;
    fn add(self, rhs: BigInt) -> Rat {
        self + Rat::from_bigint(rhs)
    }
}

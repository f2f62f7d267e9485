use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactLinError;

/// An exact Gaussian rational `re + im*i`.
///
/// Both components are arbitrary-precision rationals kept in reduced form
/// with positive denominator, so equality is structural and arithmetic never
/// rounds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// Real rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// `a/b + c/d*i`. Panics if `b == 0` or `d == 0`.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(b != 0 && d != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(a), BigInt::from(b)),
            im: BigRational::new(BigInt::from(c), BigInt::from(d)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for real and strictly positive values.
    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`, as a real scalar.
    pub fn norm_sq(&self) -> Self {
        Scalar {
            re: &self.re * &self.re + &self.im * &self.im,
            im: BigRational::zero(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

/// Arbitrary but total order (lexicographic on `(re, im)`), so scalars can key
/// canonical ordered containers. This is not a field order.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
    )*};
}

forward_value_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    // Ratio's Display already prints `n` when the denominator is 1.
    r.to_string()
}

/// Canonical text form: `0`, `a[/b]`, `c[/d]*i`, or `a[/b]+c[/d]*i` with both
/// components fully reduced, positive denominators, and the real part first.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", fmt_rational(&self.im));
        }
        write!(f, "{}+{}*i", fmt_rational(&self.re), fmt_rational(&self.im))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(text: &str) -> Result<BigRational, ExactLinError> {
    let bad = || ExactLinError::ScalarParse(text.to_string());
    let mut parts = text.split('/');
    let numer = parts.next().ok_or_else(bad)?;
    let numer = BigInt::from_str(numer).map_err(|_| bad())?;
    let denom = match parts.next() {
        None => BigInt::one(),
        Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(numer, denom))
}

/// Accepted forms: `a[/b]`, `c[/d]*i`, `a[/b]+c[/d]*i`, each integer
/// optionally signed. The separating `+` is the one directly following a
/// digit, so `1/2+-3/4*i` parses with imaginary part `-3/4`.
impl FromStr for Scalar {
    type Err = ExactLinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let bad = || ExactLinError::ScalarParse(s.to_string());
        if text.is_empty() {
            return Err(bad());
        }
        let bytes = text.as_bytes();
        let mut separators = Vec::new();
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if b == b'+' && bytes[idx - 1].is_ascii_digit() {
                separators.push(idx);
            }
        }
        match separators.len() {
            0 => {
                if let Some(imag) = text.strip_suffix("*i") {
                    Ok(Scalar::new(BigRational::zero(), parse_rational(imag)?))
                } else {
                    Ok(Scalar::new(parse_rational(text)?, BigRational::zero()))
                }
            }
            1 => {
                let at = separators[0];
                let re_text = &text[..at];
                let im_text = text[at + 1..].strip_suffix("*i").ok_or_else(bad)?;
                Ok(Scalar::new(
                    parse_rational(re_text)?,
                    parse_rational(im_text)?,
                ))
            }
            _ => Err(bad()),
        }
    }
}

//! Fixed-point reals with 128 fractional bits, obtained from exact rationals by integer root extraction.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Fractional bits carried by every [`Real`].
pub const FRACTION_BITS: u32 = 128;

/// Annotation attached to every printed approximate value.
pub const PRECISION_LABEL: &str = "~80-bit";

/// Nonnegative real `mantissa / 2^FRACTION_BITS`, truncated toward zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Real {
    mantissa: BigInt,
}

impl Real {
    pub fn from_rational(x: &Rational) -> Result<Self> {
        Self::root(x, 1)
    }

    /// `x^{1/n}` for `x >= 0`.
    pub fn root(x: &Rational, n: u32) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::InvalidParameter(format!("root of negative value {x}")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("zeroth root".into()));
        }
        // floor(root_n(floor(y))) == floor(root_n(y)) for y >= 0.
        let scaled = (x.numer() << (FRACTION_BITS as usize * n as usize)) / x.denom();
        Ok(Self { mantissa: scaled.nth_root(n) })
    }

    /// `x^{num/den}` for `x >= 0`.
    pub fn pow_ratio(x: &Rational, num: u32, den: u32) -> Result<Self> {
        Self::root(&num_traits::pow(x.clone(), num as usize), den)
    }

    /// The dyadic rational this value represents.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), BigInt::from(1) << FRACTION_BITS as usize)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// `|self - other| / |other|`, evaluated exactly and rounded at the end.
    pub fn relative_error(&self, reference: &Real) -> f64 {
        if reference.is_zero() {
            return if self.is_zero() { 0.0 } else { f64::INFINITY };
        }
        let diff = (&self.mantissa - &reference.mantissa).abs();
        Rational::new(diff, reference.mantissa.clone()).to_f64().unwrap_or(f64::INFINITY)
    }

    /// Up to `digits` significant decimal digits, trailing zeros trimmed.
    pub fn to_significant(&self, digits: usize) -> String {
        format_significant(self.to_f64(), digits)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_significant(12))
    }
}

pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if exp >= digits as i32 {
        return format!("{x:.prec$e}", prec = digits - 1);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Moment order `p >= 2`: an integer (exact mode) or a fraction `num/den` (approximate mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MomentOrder {
    Integer(u32),
    Fraction { num: u32, den: u32 },
}

/// Guards for fractional orders: `x^{num/den}` is evaluated as a `den`-th root of `x^num`.
pub const MAX_ORDER_NUMERATOR: u32 = 4096;
pub const MAX_ORDER_DENOMINATOR: u32 = 64;

impl MomentOrder {
    pub fn integer(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter(format!("moment order p={p} must be at least 2")));
        }
        Ok(MomentOrder::Integer(p))
    }

    pub fn from_rational(p: &Rational) -> Result<Self> {
        if *p < Rational::from_integer(2.into()) {
            return Err(Error::InvalidParameter(format!("moment order p={p} must be at least 2")));
        }
        let too_big = || Error::InvalidParameter(format!("moment order {p} exceeds supported precision guards"));
        let num = p.numer().to_u32().ok_or_else(too_big)?;
        let den = p.denom().to_u32().ok_or_else(too_big)?;
        if den == 1 {
            return Ok(MomentOrder::Integer(num));
        }
        if num > MAX_ORDER_NUMERATOR || den > MAX_ORDER_DENOMINATOR {
            return Err(too_big());
        }
        Ok(MomentOrder::Fraction { num, den })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MomentOrder::Integer(_))
    }

    pub fn as_integer(&self) -> Option<u32> {
        match *self {
            MomentOrder::Integer(p) => Some(p),
            MomentOrder::Fraction { .. } => None,
        }
    }

    /// `(num, den)` with `den == 1` for integers.
    pub fn parts(&self) -> (u32, u32) {
        match *self {
            MomentOrder::Integer(p) => (p, 1),
            MomentOrder::Fraction { num, den } => (num, den),
        }
    }

    pub fn to_rational(&self) -> Rational {
        let (n, d) = self.parts();
        Rational::new(n.into(), d.into())
    }

    /// `|x|^p`: exact for integer orders, a 128-fractional-bit truncation otherwise.
    pub fn abs_power(&self, x: &Rational) -> Rational {
        let x = x.abs();
        match *self {
            MomentOrder::Integer(p) => num_traits::pow(x, p as usize),
            MomentOrder::Fraction { num, den } => {
                Real::pow_ratio(&x, num, den).expect("nonnegative base").to_rational()
            }
        }
    }
}

impl fmt::Display for MomentOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentOrder::Integer(p) => write!(f, "{p}"),
            MomentOrder::Fraction { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl std::str::FromStr for MomentOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MomentOrder::from_rational(&crate::rational::parse_rational_lenient(s)?)
    }
}

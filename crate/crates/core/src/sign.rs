use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest dimension for which the cube `{-1,1}^n` is enumerated explicitly.
pub const ATOMIC_LIMIT: usize = 24;

/// A point of `{-1,1}^n`, stored as a bit mask: bit `i` set means coordinate `i` is `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    n: u8,
    bits: u32,
}

impl SignVector {
    pub fn from_bits(n: usize, bits: u32) -> Result<Self> {
        check_dimension(n)?;
        if n < 32 && bits >> n != 0 {
            return Err(Error::InvalidParameter(format!("bit mask {bits:#x} exceeds dimension {n}")));
        }
        Ok(Self { n: n as u8, bits })
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        check_dimension(signs.len())?;
        let mut bits = 0u32;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => bits |= 1 << i,
                -1 => {}
                other => return Err(Error::InvalidParameter(format!("sign entry {other} is not ±1"))),
            }
        }
        Ok(Self { n: signs.len() as u8, bits })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn entry(&self, i: usize) -> i8 {
        if self.bits >> i & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn entries(&self) -> Vec<i8> {
        (0..self.n()).map(|i| self.entry(i)).collect()
    }

    /// Number of `+1` entries.
    pub fn hamming_weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Product of the coordinates indexed by the bit mask `subset`.
    pub fn character(&self, subset: u32) -> i8 {
        if (subset & !self.bits).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Every point of `{-1,1}^n` in bit-mask order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = SignVector>> {
        check_dimension(n)?;
        Ok((0..1u32 << n).map(move |bits| SignVector { n: n as u8, bits }))
    }
}

pub fn hamming_weight(v: &SignVector) -> usize {
    v.hamming_weight()
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if n > ATOMIC_LIMIT {
        return Err(Error::TooLarge { n, limit: ATOMIC_LIMIT });
    }
    Ok(())
}

/// Written as a `+`/`-` string, coordinate 1 first.
impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            f.write_str(if self.entry(i) == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse(format!("invalid sign character {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        SignVector::from_signs(&signs)
    }
}

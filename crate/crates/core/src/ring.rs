//! Arithmetic in `Z4` and in the 16-element ring of elements `a + bu` with
//! `u^2 = 1`, plus the Lee and Euclidean weights of single elements.
//!
//! Both element types are plain `Copy` values; every operation is total and
//! side-effect free, so they can be shared freely across threads.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::Error;

/// A residue mod 4.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z4(u8);

impl Z4 {
    pub const ZERO: Z4 = Z4(0);
    pub const ONE: Z4 = Z4(1);
    pub const TWO: Z4 = Z4(2);
    pub const THREE: Z4 = Z4(3);

    /// All four residues in increasing order.
    pub const ALL: [Z4; 4] = [Z4(0), Z4(1), Z4(2), Z4(3)];

    pub const fn new(v: u8) -> Z4 {
        Z4(v & 3)
    }

    /// Reduces an arbitrary signed integer.
    pub fn from_i64(v: i64) -> Z4 {
        Z4(v.rem_euclid(4) as u8)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The units of Z4 are 1 and 3.
    pub const fn is_unit(self) -> bool {
        self.0 & 1 == 1
    }

    /// Both units are self-inverse.
    pub fn inverse(self) -> Option<Z4> {
        if self.is_unit() {
            Some(self)
        } else {
            None
        }
    }

    /// Lee weights of 0, 1, 2, 3 are 0, 1, 2, 1.
    pub const fn lee_weight(self) -> u32 {
        match self.0 {
            0 => 0,
            2 => 2,
            _ => 1,
        }
    }

    /// Euclidean weights of 0, 1, 2, 3 are 0, 1, 4, 1.
    pub const fn euclidean_weight(self) -> u32 {
        match self.0 {
            0 => 0,
            2 => 4,
            _ => 1,
        }
    }
}

impl Add for Z4 {
    type Output = Z4;
    fn add(self, rhs: Z4) -> Z4 {
        Z4((self.0 + rhs.0) & 3)
    }
}

impl Sub for Z4 {
    type Output = Z4;
    fn sub(self, rhs: Z4) -> Z4 {
        Z4((4 + self.0 - rhs.0) & 3)
    }
}

impl Mul for Z4 {
    type Output = Z4;
    fn mul(self, rhs: Z4) -> Z4 {
        Z4((self.0 * rhs.0) & 3)
    }
}

impl Neg for Z4 {
    type Output = Z4;
    fn neg(self) -> Z4 {
        Z4((4 - self.0) & 3)
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element `a + bu` of the extension of Z4 by `u` with `u^2 = 1`.
///
/// Equality is componentwise; multiplication reduces by `u^2 = 1`:
/// `(a + bu)(c + du) = (ac + bd) + (ad + bc)u`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ru {
    a: Z4,
    b: Z4,
}

impl Ru {
    pub const ZERO: Ru = Ru { a: Z4::ZERO, b: Z4::ZERO };
    pub const ONE: Ru = Ru { a: Z4::ONE, b: Z4::ZERO };
    pub const TWO: Ru = Ru { a: Z4::TWO, b: Z4::ZERO };
    pub const U: Ru = Ru { a: Z4::ZERO, b: Z4::ONE };
    /// The unit `1 + 2u`, the shift constant used throughout the crate.
    /// It squares to 1, so it is its own inverse.
    pub const LAMBDA: Ru = Ru { a: Z4::ONE, b: Z4::TWO };
    /// The zero divisor `1 + u`.
    pub const ONE_PLUS_U: Ru = Ru { a: Z4::ONE, b: Z4::ONE };

    pub const fn new(a: Z4, b: Z4) -> Ru {
        Ru { a, b }
    }

    pub const fn from_parts(a: u8, b: u8) -> Ru {
        Ru { a: Z4::new(a), b: Z4::new(b) }
    }

    /// Constant part `a`.
    pub const fn constant(self) -> Z4 {
        self.a
    }

    /// Coefficient `b` of `u`.
    pub const fn u_coeff(self) -> Z4 {
        self.b
    }

    pub fn is_zero(self) -> bool {
        self == Ru::ZERO
    }

    /// All 16 elements, ordered by `(a, b)`.
    pub fn all() -> impl Iterator<Item = Ru> {
        Z4::ALL
            .into_iter()
            .flat_map(|a| Z4::ALL.into_iter().map(move |b| Ru { a, b }))
    }

    /// `a + bu` is a unit exactly when `a + b` is odd, which picks out the
    /// eight elements 1, 3, u, 3u, 2+u, 1+2u, 3+2u, 2+3u.
    pub const fn is_unit(self) -> bool {
        (self.a.value() + self.b.value()) & 1 == 1
    }

    /// Multiplicative inverse, if one exists. The ring is small enough that
    /// a direct search is the clearest correct implementation.
    pub fn inverse(self) -> Option<Ru> {
        if !self.is_unit() {
            return None;
        }
        Ru::all().find(|&y| self * y == Ru::ONE)
    }

    pub fn pow(self, mut e: u64) -> Ru {
        let mut base = self;
        let mut acc = Ru::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `(1 + 2u)^n`: 1 for even `n`, `1 + 2u` for odd `n`.
    pub fn lambda_power(n: u64) -> Ru {
        if n % 2 == 0 {
            Ru::ONE
        } else {
            Ru::LAMBDA
        }
    }

    /// The image `(b, 2a + b)` of `a + bu` under the Gray map.
    pub fn gray_pair(self) -> [Z4; 2] {
        [self.b, Z4::TWO * self.a + self.b]
    }

    /// Lee weight, defined as the Lee weight of the pair `(b, 2a + b)`.
    /// Note `2` has weight 0: the Gray map is not injective.
    pub fn lee_weight(self) -> u32 {
        let [x, y] = self.gray_pair();
        x.lee_weight() + y.lee_weight()
    }

    /// Euclidean weight of the pair `(b, 2a + b)`.
    pub fn euclidean_weight(self) -> u32 {
        let [x, y] = self.gray_pair();
        x.euclidean_weight() + y.euclidean_weight()
    }
}

impl Add for Ru {
    type Output = Ru;
    fn add(self, rhs: Ru) -> Ru {
        Ru { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Ru {
    type Output = Ru;
    fn sub(self, rhs: Ru) -> Ru {
        Ru { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for Ru {
    type Output = Ru;
    fn mul(self, rhs: Ru) -> Ru {
        Ru {
            a: self.a * rhs.a + self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl Neg for Ru {
    type Output = Ru;
    fn neg(self) -> Ru {
        Ru { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for Ru {
    /// Renders in the conventional form: `0`, `2`, `u`, `3u`, `1+2u`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.value(), self.b.value()) {
            (0, 0) => write!(f, "0"),
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "u"),
            (0, b) => write!(f, "{b}u"),
            (a, 1) => write!(f, "{a}+u"),
            (a, b) => write!(f, "{a}+{b}u"),
        }
    }
}

impl fmt::Debug for Ru {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Ru {
    type Err = Error;

    /// Accepts the same forms `Display` produces: `a`, `bu`, `u`, `a+bu`,
    /// `a+u`, with digits in `0..=3`.
    fn from_str(s: &str) -> Result<Ru, Error> {
        let bad = || Error::BadElement(s.to_string());
        let digit = |t: &str| -> Result<Z4, Error> {
            if t.len() == 1 {
                let c = t.as_bytes()[0];
                if c.is_ascii_digit() && c < b'4' {
                    return Ok(Z4::new(c - b'0'));
                }
            }
            Err(bad())
        };
        let u_part = |t: &str| -> Result<Z4, Error> {
            let t = t.strip_suffix('u').ok_or_else(bad)?;
            if t.is_empty() {
                Ok(Z4::ONE)
            } else {
                digit(t)
            }
        };
        let s = s.trim();
        match s.split_once('+') {
            Some((a, b)) => Ok(Ru::new(digit(a.trim())?, u_part(b.trim())?)),
            None => {
                if s.ends_with('u') {
                    Ok(Ru::new(Z4::ZERO, u_part(s)?))
                } else {
                    Ok(Ru::new(digit(s)?, Z4::ZERO))
                }
            }
        }
    }
}

//! Dense polynomials over `Z4` and over `a + bu`, quotient-ring products
//! modulo `x^n - lambda`, and the coefficient-string notation used by the
//! reference tables.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty sequence. Coefficient *strings* run from the
//! highest degree down, so `13201` is `x^4 + 3x^3 + 2x^2 + 1`, and `3^7`
//! abbreviates the digit 3 repeated seven times. The string boundary is the
//! only place where the two orders meet.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::ring::{Ru, Z4};
use crate::Error;

/// A polynomial with coefficients in `Z4`, lowest degree first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z4Poly {
    coeffs: Vec<Z4>,
}

impl Z4Poly {
    pub fn zero() -> Z4Poly {
        Z4Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Z4Poly {
        Z4Poly { coeffs: vec![Z4::ONE] }
    }

    pub fn x() -> Z4Poly {
        Z4Poly { coeffs: vec![Z4::ZERO, Z4::ONE] }
    }

    /// Builds from low-to-high coefficients, dropping trailing zeros.
    pub fn new(coeffs: Vec<Z4>) -> Z4Poly {
        let mut p = Z4Poly { coeffs };
        p.normalize();
        p
    }

    /// Convenience constructor from raw residues, lowest degree first.
    pub fn from_values(values: &[u8]) -> Z4Poly {
        Z4Poly::new(values.iter().map(|&v| Z4::new(v)).collect())
    }

    pub fn monomial(degree: usize, c: Z4) -> Z4Poly {
        let mut coeffs = vec![Z4::ZERO; degree + 1];
        coeffs[degree] = c;
        Z4Poly::new(coeffs)
    }

    /// `x^n - 1`, the modulus everything in this crate is built around.
    pub fn xn_minus_1(n: usize) -> Z4Poly {
        let mut coeffs = vec![Z4::ZERO; n + 1];
        coeffs[0] = Z4::THREE;
        coeffs[n] = Z4::ONE;
        Z4Poly::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Z4 {
        self.coeffs.get(i).copied().unwrap_or(Z4::ZERO)
    }

    pub fn coeffs(&self) -> &[Z4] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<Z4> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Z4::ONE)
    }

    pub fn scale(&self, c: Z4) -> Z4Poly {
        Z4Poly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Reduction mod 2, as a bitmask with bit `i` holding coefficient `i`.
    pub fn mod2_bits(&self) -> u64 {
        let mut bits = 0u64;
        for (i, c) in self.coeffs.iter().enumerate() {
            bits |= u64::from(c.value() & 1) << i;
        }
        bits
    }

    /// Quotient and remainder by a monic divisor. Monic division is exact
    /// long division even over Z4.
    pub fn divrem_monic(&self, d: &Z4Poly) -> (Z4Poly, Z4Poly) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Z4Poly::zero(), self.clone());
        }
        let mut quot = vec![Z4::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j] - c * dc;
            }
        }
        (Z4Poly::new(quot), Z4Poly::new(rem))
    }

    /// True when `d` divides `self` exactly (`d` monic).
    pub fn divisible_by(&self, d: &Z4Poly) -> bool {
        self.divrem_monic(d).1.is_zero()
    }

    /// Product reduced by `x^n -> 1`.
    pub fn mul_mod_xn_minus_1(&self, other: &Z4Poly, n: usize) -> Z4Poly {
        let prod = self.clone() * other.clone();
        let mut out = vec![Z4::ZERO; n];
        for (i, &c) in prod.coeffs.iter().enumerate() {
            out[i % n] = out[i % n] + c;
        }
        Z4Poly::new(out)
    }

    /// Parses the high-to-low coefficient notation: digits `0..=3`, with the
    /// repetition shorthand `d^k` (`3^7` is seven 3s). `"0"` is the zero
    /// polynomial. The repeat count after `^` consumes a maximal decimal run.
    pub fn from_digit_string(s: &str) -> Result<Z4Poly, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::BadPolynomial("empty string".to_string()));
        }
        let mut high_to_low: Vec<Z4> = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let d = match c {
                '0'..='3' => Z4::new(c as u8 - b'0'),
                _ => return Err(Error::BadDigit(c)),
            };
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut count = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    count.push(chars.next().unwrap());
                }
                let k: usize = count
                    .parse()
                    .map_err(|_| Error::BadPolynomial(format!("bad repeat count in {s:?}")))?;
                high_to_low.extend(std::iter::repeat(d).take(k));
            } else {
                high_to_low.push(d);
            }
        }
        high_to_low.reverse();
        Ok(Z4Poly::new(high_to_low))
    }

    /// Formats in the high-to-low digit notation; the zero polynomial is `0`.
    /// Never emits the `^` shorthand, so parsing the output round-trips.
    pub fn digit_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|c| char::from(b'0' + c.value()))
            .collect()
    }
}

impl Add for Z4Poly {
    type Output = Z4Poly;
    fn add(self, rhs: Z4Poly) -> Z4Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Z4::ZERO; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(i) + rhs.coeff(i);
        }
        Z4Poly::new(out)
    }
}

impl Sub for Z4Poly {
    type Output = Z4Poly;
    fn sub(self, rhs: Z4Poly) -> Z4Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Z4::ZERO; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(i) - rhs.coeff(i);
        }
        Z4Poly::new(out)
    }
}

impl Mul for Z4Poly {
    type Output = Z4Poly;
    fn mul(self, rhs: Z4Poly) -> Z4Poly {
        if self.is_zero() || rhs.is_zero() {
            return Z4Poly::zero();
        }
        let mut out = vec![Z4::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Z4Poly::new(out)
    }
}

impl fmt::Debug for Z4Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digit_string())
    }
}

impl fmt::Display for Z4Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digit_string())
    }
}

/// A polynomial with coefficients `a + bu`, lowest degree first.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RPoly {
    coeffs: Vec<Ru>,
}

impl RPoly {
    pub fn zero() -> RPoly {
        RPoly { coeffs: Vec::new() }
    }

    pub fn one() -> RPoly {
        RPoly { coeffs: vec![Ru::ONE] }
    }

    pub fn new(coeffs: Vec<Ru>) -> RPoly {
        let mut p = RPoly { coeffs };
        p.normalize();
        p
    }

    /// Embeds a `Z4` polynomial as constant parts.
    pub fn from_z4(p: &Z4Poly) -> RPoly {
        RPoly::new(p.coeffs().iter().map(|&c| Ru::new(c, Z4::ZERO)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Ru {
        self.coeffs.get(i).copied().unwrap_or(Ru::ZERO)
    }

    pub fn coeffs(&self) -> &[Ru] {
        &self.coeffs
    }

    /// Splits into `a(x) + u b(x)` with both parts over `Z4`.
    pub fn split(&self) -> (Z4Poly, Z4Poly) {
        let a = self.coeffs.iter().map(|c| c.constant()).collect();
        let b = self.coeffs.iter().map(|c| c.u_coeff()).collect();
        (Z4Poly::new(a), Z4Poly::new(b))
    }

    pub fn scale(&self, c: Ru) -> RPoly {
        RPoly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiplication by `u`; swaps the two components of every coefficient.
    pub fn times_u(&self) -> RPoly {
        self.scale(Ru::U)
    }

    /// Coefficients as a fixed-length vector, for codes of length `n`.
    /// Requires degree < n.
    pub fn to_vector(&self, n: usize) -> Vec<Ru> {
        assert!(self.coeffs.len() <= n, "degree too large for length {n}");
        let mut v = self.coeffs.clone();
        v.resize(n, Ru::ZERO);
        v
    }

    pub fn from_vector(v: &[Ru]) -> RPoly {
        RPoly::new(v.to_vec())
    }

    /// Canonical representative modulo `x^n - lambda`: every `x^(n+j)` folds
    /// to `lambda x^j`.
    pub fn reduce_mod(&self, n: usize, lambda: Ru) -> RPoly {
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut out = vec![Ru::ZERO; n];
        let mut mult = Ru::ONE;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % n == 0 && i > 0 {
                mult = mult * lambda;
            }
            out[i % n] = out[i % n] + c * mult;
        }
        RPoly::new(out)
    }

    /// Product in the quotient ring modulo `x^n - lambda`. Inputs need not be
    /// reduced; the result always has degree below `n`.
    pub fn mul_mod(&self, other: &RPoly, n: usize, lambda: Ru) -> RPoly {
        let a = self.reduce_mod(n, lambda);
        let b = other.reduce_mod(n, lambda);
        if a.is_zero() || b.is_zero() {
            return RPoly::zero();
        }
        let mut prod = vec![Ru::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = prod[i + j] + x * y;
            }
        }
        // degree of the raw product is at most 2n - 2, so one fold suffices
        let mut out = vec![Ru::ZERO; n];
        for (i, &c) in prod.iter().enumerate() {
            if i < n {
                out[i] = out[i] + c;
            } else {
                out[i - n] = out[i - n] + lambda * c;
            }
        }
        RPoly::new(out)
    }

    /// Substitutes `x -> (1+2u) x`: coefficient `i` picks up `(1+2u)^i`.
    /// Since `(1+2u)^2 = 1` this is an involution, and for odd `n` it is the
    /// ring isomorphism between the quotients by `x^n - 1` and
    /// `x^n - (1+2u)`.
    pub fn twist(&self) -> RPoly {
        RPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c * Ru::lambda_power(i as u64))
                .collect(),
        )
    }
}

impl Add for RPoly {
    type Output = RPoly;
    fn add(self, rhs: RPoly) -> RPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Ru::ZERO; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.coeff(i) + rhs.coeff(i);
        }
        RPoly::new(out)
    }
}

impl fmt::Debug for RPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(s: &str) -> Z4Poly {
        Z4Poly::from_digit_string(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let p = zp("13201");
        assert_eq!(p.coeffs(), &[Z4::ONE, Z4::ZERO, Z4::TWO, Z4::THREE, Z4::ONE]);
        let q = zp("3^7");
        assert_eq!(q.degree(), Some(6));
        assert!(q.coeffs().iter().all(|&c| c == Z4::THREE));
        assert!(zp("0").is_zero());
        assert!(zp("00").is_zero());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Z4Poly::from_digit_string("12451"), Err(Error::BadDigit('4')));
        assert!(matches!(Z4Poly::from_digit_string("3^"), Err(Error::BadPolynomial(_))));
        assert!(matches!(Z4Poly::from_digit_string(""), Err(Error::BadPolynomial(_))));
        assert_eq!(Z4Poly::from_digit_string("1a"), Err(Error::BadDigit('a')));
    }

    #[test]
    fn format_round_trip() {
        for s in ["13201", "1", "2", "13", "111", "3^7", "2^7", "1113133"] {
            let p = zp(s);
            let t = p.digit_string();
            assert_eq!(zp(&t), p, "round trip through {t}");
        }
        assert_eq!(Z4Poly::zero().digit_string(), "0");
        assert_eq!(zp("3^7").digit_string(), "3333333");
    }

    #[test]
    fn divrem_monic_works() {
        let f = Z4Poly::xn_minus_1(3);
        let d = zp("13"); // x + 3
        let (q, r) = f.divrem_monic(&d);
        assert!(r.is_zero());
        assert_eq!(q, zp("111"));
        assert_eq!(q * d, f);

        let (_, r) = zp("102").divrem_monic(&zp("11"));
        assert!(!r.is_zero());
    }

    #[test]
    fn mul_mod_examples() {
        // x^2 * x^2 = x * x^3 = lambda x  (n = 3, lambda = 1+2u)
        let x2 = RPoly::from_z4(&Z4Poly::monomial(2, Z4::ONE));
        let got = x2.mul_mod(&x2, 3, Ru::LAMBDA);
        let want = RPoly::new(vec![Ru::ZERO, Ru::LAMBDA]);
        assert_eq!(got, want);

        // identity
        let b = RPoly::new(vec![Ru::from_parts(1, 2), Ru::U, Ru::from_parts(3, 3)]);
        assert_eq!(RPoly::one().mul_mod(&b, 3, Ru::LAMBDA), b);

        // cyclic reduction: x * x^2 = 1 when lambda = 1
        let x = RPoly::from_z4(&Z4Poly::x());
        assert_eq!(x.mul_mod(&x2, 3, Ru::ONE), RPoly::one());
    }

    #[test]
    fn mul_mod_lambda_one_matches_plain_remainder() {
        // deterministic pseudo-random polynomials via a small LCG
        let mut state = 0x12345678u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as u8
        };
        for n in [3usize, 5, 7] {
            for _ in 0..50 {
                let a = Z4Poly::new((0..n).map(|_| Z4::new(next())).collect());
                let b = Z4Poly::new((0..n).map(|_| Z4::new(next())).collect());
                let via_quotient = RPoly::from_z4(&a).mul_mod(&RPoly::from_z4(&b), n, Ru::ONE);
                let (_, plain) = (a.clone() * b.clone()).divrem_monic(&Z4Poly::xn_minus_1(n));
                assert_eq!(via_quotient, RPoly::from_z4(&plain));
            }
        }
    }

    #[test]
    fn twist_examples() {
        // coefficients in 2Z4 are fixed: 2 * (1+2u) = 2
        let p = RPoly::from_z4(&zp("22"));
        assert_eq!(p.twist(), p);

        let x = RPoly::from_z4(&Z4Poly::x());
        assert_eq!(x.twist(), RPoly::new(vec![Ru::ZERO, Ru::LAMBDA]));

        let q = RPoly::new(vec![Ru::from_parts(1, 3), Ru::from_parts(2, 1), Ru::U]);
        assert_eq!(q.twist().twist(), q);
    }

    #[test]
    fn twist_is_multiplicative_on_quotients() {
        let mut state = 0xdeadbeefu64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 30) & 3) as u8
        };
        for n in [3usize, 5, 7, 9] {
            for _ in 0..100 {
                let p = RPoly::new((0..n).map(|_| Ru::from_parts(next(), next())).collect());
                let q = RPoly::new((0..n).map(|_| Ru::from_parts(next(), next())).collect());
                let lhs = p.mul_mod(&q, n, Ru::ONE).twist();
                let rhs = p.twist().mul_mod(&q.twist(), n, Ru::LAMBDA);
                assert_eq!(lhs, rhs, "twist not multiplicative at n={n}");
            }
        }
    }

    #[test]
    fn reduce_mod_folds_high_degrees() {
        // 2x^3 + 2 reduces to zero mod x^3 - (1+2u): 2 lambda + 2 = 0
        let p = RPoly::from_z4(&zp("2002"));
        assert!(p.reduce_mod(3, Ru::LAMBDA).is_zero());
        // and also mod x^3 - 1
        assert!(p.reduce_mod(3, Ru::ONE).is_zero());
    }
}

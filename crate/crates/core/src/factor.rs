//! Factorization of `x^n - 1` for odd `n`: trial division into irreducibles
//! over the two-element field, then a single quadratic Hensel step lifting
//! the factorization to `Z4`. For odd `n` the binary factorization is
//! squarefree, so the lifted factors are pairwise coprime mod 2 and the lift
//! is unique.
//!
//! Also home to [`FactorSet`] (the lifted factors of one `x^n - 1`) and
//! [`DivisorTriple`] (an assignment of those factors into three pairwise
//! coprime parts), which parameterize every code construction in
//! [`crate::search`].

use std::fmt;

use crate::poly::Z4Poly;
use crate::ring::Z4;
use crate::Error;

/// Largest supported code length over the extension ring; bounded by the
/// bitmask representation of binary polynomials.
pub const MAX_N: usize = 63;

/// A binary polynomial stored as a bitmask, bit `i` = coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Poly(pub u64);

impl F2Poly {
    pub const ONE: F2Poly = F2Poly(1);

    pub fn from_coeffs(low_to_high: &[u8]) -> F2Poly {
        let mut bits = 0u64;
        for (i, &c) in low_to_high.iter().enumerate() {
            bits |= u64::from(c & 1) << i;
        }
        F2Poly(bits)
    }

    pub fn degree(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros())
        }
    }

    pub fn mul(self, rhs: F2Poly) -> F2Poly {
        let mut acc = 0u128;
        let a = self.0 as u128;
        let mut b = rhs.0;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        debug_assert!(acc <= u64::MAX as u128, "product degree out of range");
        F2Poly(acc as u64)
    }

    pub fn divrem(self, d: F2Poly) -> (F2Poly, F2Poly) {
        let dd = d.degree().expect("division by zero");
        let mut rem = self.0;
        let mut quot = 0u64;
        while let Some(rd) = F2Poly(rem).degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot |= 1 << shift;
            rem ^= d.0 << shift;
        }
        (F2Poly(quot), F2Poly(rem))
    }

    /// Extended Euclid: returns `(s, t)` with `s*self + t*rhs = gcd`, plus
    /// the gcd itself.
    pub fn bezout(self, rhs: F2Poly) -> (F2Poly, F2Poly, F2Poly) {
        let (mut r0, mut r1) = (self, rhs);
        let (mut s0, mut s1) = (F2Poly(1), F2Poly(0));
        let (mut t0, mut t1) = (F2Poly(0), F2Poly(1));
        while r1.0 != 0 {
            let (q, r) = r0.divrem(r1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, F2Poly(s0.0 ^ q.mul(s1).0));
            (t0, t1) = (t1, F2Poly(t0.0 ^ q.mul(t1).0));
        }
        (s0, t0, r0)
    }

    /// Lifts 0/1 coefficients into `Z4`.
    pub fn lift(self) -> Z4Poly {
        let mut coeffs = Vec::new();
        for i in 0..=self.degree().map_or(0, |d| d as usize) {
            coeffs.push(Z4::new(((self.0 >> i) & 1) as u8));
        }
        Z4Poly::new(coeffs)
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let d = self.degree().unwrap();
        for i in (0..=d).rev() {
            write!(f, "{}", (self.0 >> i) & 1)?;
        }
        Ok(())
    }
}

/// Monic irreducibles over F2 up to `max_deg`, by trial division against the
/// smaller irreducibles already found. `x` itself is excluded since only
/// divisors of `x^n - 1` matter here, and those have nonzero constant term.
fn irreducibles_f2(max_deg: u32) -> Vec<F2Poly> {
    let mut irr: Vec<F2Poly> = Vec::new();
    for d in 1..=max_deg {
        // monic degree-d candidates with constant term 1
        for mid in 0..(1u64 << d.saturating_sub(1)) {
            let cand = F2Poly((1 << d) | (mid << 1) | 1);
            let reducible = irr
                .iter()
                .take_while(|p| p.degree().unwrap() * 2 <= d)
                .any(|&p| cand.divrem(p).1 .0 == 0);
            if !reducible {
                irr.push(cand);
            }
        }
    }
    irr
}

/// Factors `x^n + 1` over F2 into monic irreducibles, for odd `n`. The
/// result is sorted by degree, then by coefficient string, and its product
/// reconstructs the input; the number of factors equals the number of
/// 2-cyclotomic cosets mod `n`.
pub fn factor_f2(n: usize) -> Result<Vec<F2Poly>, Error> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    if n > MAX_N {
        return Err(Error::TooLong { length: n, max: MAX_N });
    }
    let mut remaining = F2Poly((1 << n) | 1);
    let mut factors = Vec::new();
    // enough irreducibles to split anything left of degree d: we only ever
    // need divisors of degree at most d/2 before the cofactor is irreducible
    while remaining.degree() != Some(0) {
        let d = remaining.degree().unwrap();
        let mut found = None;
        'search: for p in irreducibles_f2(d / 2) {
            let (q, r) = remaining.divrem(p);
            if r.0 == 0 {
                found = Some((p, q));
                break 'search;
            }
        }
        match found {
            Some((p, q)) => {
                factors.push(p);
                remaining = q;
            }
            None => {
                factors.push(remaining);
                remaining = F2Poly::ONE;
            }
        }
    }
    factors.sort_by_key(|p| (p.degree(), p.0));
    Ok(factors)
}

/// Number of orbits of multiplication by 2 on `Z/n`; used as an independent
/// cross-check on the factor count.
pub fn cyclotomic_coset_count(n: usize) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = (i * 2) % n;
        }
    }
    count
}

/// One Hensel step from mod 2 to mod 4: given monic `f` over Z4 and coprime
/// monic `g0 * h0 = f mod 2`, produces monic `(G, H)` over Z4 with
/// `G*H = f`, `G = g0` and `H = h0` mod 2.
fn hensel_step(f: &Z4Poly, g0: F2Poly, h0: F2Poly) -> (Z4Poly, Z4Poly) {
    let (s, t, gcd) = g0.bezout(h0);
    debug_assert_eq!(gcd, F2Poly::ONE, "factors must be coprime mod 2");
    let g = g0.lift();
    let h = h0.lift();
    let err = f.clone() - g.clone() * h.clone();
    // f = g h mod 2, so every coefficient of the error is 0 or 2
    let delta = F2Poly(
        err.coeffs()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, c)| acc | (u64::from(c.value() >> 1) << i)),
    );
    debug_assert!(err.coeffs().iter().all(|c| c.value() % 2 == 0));
    let (q, a) = t.mul(delta).divrem(g0);
    let b = F2Poly(s.mul(delta).0 ^ q.mul(h0).0);
    debug_assert!(b.degree().unwrap_or(0) < h0.degree().unwrap() || b.0 == 0);
    let two = Z4Poly::monomial(0, Z4::TWO);
    let g_lift = g + two.clone() * a.lift();
    let h_lift = h + two * b.lift();
    (g_lift, h_lift)
}

/// The basic irreducible factors of `x^n - 1` over Z4, for odd `n`.
///
/// Each factor is monic, reduces mod 2 to a distinct irreducible, and the
/// product of all factors is exactly `x^n - 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct FactorSet {
    n: usize,
    factors: Vec<Z4Poly>,
}

/// Lifts a binary factorization of `x^n + 1` to `Z4`, peeling one factor at
/// a time. The product identity is re-checked at the end and a failure is
/// reported, never ignored.
pub fn hensel_lift(n: usize, binary_factors: &[F2Poly]) -> Result<FactorSet, Error> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenLength(n));
    }
    let target = Z4Poly::xn_minus_1(n);
    let mut lifted = Vec::with_capacity(binary_factors.len());
    let mut cur = target.clone();
    for (i, &g0) in binary_factors.iter().enumerate() {
        if i + 1 == binary_factors.len() {
            lifted.push(cur.clone());
            break;
        }
        // cofactor of g0 inside what is left, mod 2
        let cur2 = F2Poly(cur.mod2_bits());
        let (h0, rem) = cur2.divrem(g0);
        if rem.0 != 0 {
            return Err(Error::LiftFailure(n));
        }
        let (g_lift, h_lift) = hensel_step(&cur, g0, h0);
        lifted.push(g_lift);
        cur = h_lift;
    }
    // verification: product, monicity, and mod-2 match
    let mut prod = Z4Poly::one();
    for (p, &src) in lifted.iter().zip(binary_factors) {
        if !p.is_monic() || p.mod2_bits() != src.0 {
            return Err(Error::LiftFailure(n));
        }
        prod = prod * p.clone();
    }
    if prod != target {
        return Err(Error::LiftFailure(n));
    }
    Ok(FactorSet { n, factors: lifted })
}

/// Factors `x^n - 1` over Z4 for odd `n`: binary factorization followed by
/// the Hensel lift.
pub fn factor_xn_minus_1(n: usize) -> Result<FactorSet, Error> {
    hensel_lift(n, &factor_f2(n)?)
}

impl FactorSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The factors, sorted by degree then coefficient string.
    pub fn factors(&self) -> &[Z4Poly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Which factors divide `d`, as a bitmask over `self.factors`. Fails with
    /// `NotADivisor` unless `d` is exactly a product of distinct factors.
    pub fn support(&self, d: &Z4Poly) -> Result<u32, Error> {
        if d.is_zero() {
            return Err(Error::NotADivisor(d.digit_string()));
        }
        let mut mask = 0u32;
        let mut prod = Z4Poly::one();
        for (i, f) in self.factors.iter().enumerate() {
            if d.divisible_by(f) {
                mask |= 1 << i;
                prod = prod * f.clone();
            }
        }
        if &prod == d {
            Ok(mask)
        } else {
            Err(Error::NotADivisor(d.digit_string()))
        }
    }

    /// Product of the factors selected by `mask`.
    pub fn subproduct(&self, mask: u32) -> Z4Poly {
        let mut prod = Z4Poly::one();
        for (i, f) in self.factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod = prod * f.clone();
            }
        }
        prod
    }

    /// Greatest common divisor inside the divisor lattice of `x^n - 1`:
    /// the product of the factors common to `d` and `e`.
    pub fn gcd_divisors(&self, d: &Z4Poly, e: &Z4Poly) -> Result<Z4Poly, Error> {
        let m = self.support(d)? & self.support(e)?;
        Ok(self.subproduct(m))
    }

    /// Exact quotient `d / e` in the divisor lattice; requires the support of
    /// `e` to be contained in that of `d`.
    pub fn lattice_quotient(&self, d: &Z4Poly, e: &Z4Poly) -> Result<Z4Poly, Error> {
        let sd = self.support(d)?;
        let se = self.support(e)?;
        if se & !sd != 0 {
            return Err(Error::NotADivisor(e.digit_string()));
        }
        Ok(self.subproduct(sd & !se))
    }

    /// All `3^r` ordered assignments of the factors into three parts
    /// `(outer, inner, rest)` with `outer * inner * rest = x^n - 1`.
    /// Triple `k` assigns factor `i` according to the `i`-th ternary digit
    /// of `k`, so the ordering is deterministic.
    pub fn triples(&self) -> Vec<DivisorTriple> {
        let r = self.factors.len();
        let total = 3usize.pow(r as u32);
        let mut out = Vec::with_capacity(total);
        for k in 0..total {
            let mut masks = [0u32; 3];
            let mut idx = k;
            for i in 0..r {
                masks[idx % 3] |= 1 << i;
                idx /= 3;
            }
            out.push(DivisorTriple {
                outer: self.subproduct(masks[0]),
                inner: self.subproduct(masks[1]),
                rest: self.subproduct(masks[2]),
            });
        }
        out
    }

    /// The export form `{"n": 7, "factors": ["13", "1213", "1323"]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "factors": self.factors.iter().map(|f| f.digit_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for FactorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactorSet(n={}, {:?})", self.n, self.factors)
    }
}

/// Monic, pairwise coprime `outer * inner * rest = x^n - 1`. The generator
/// built from a triple is `outer * (inner + 2)`; `rest` never enters it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorTriple {
    pub outer: Z4Poly,
    pub inner: Z4Poly,
    pub rest: Z4Poly,
}

impl DivisorTriple {
    /// `outer * (inner + 2)`, reduced mod `x^n - 1`.
    pub fn generator(&self, n: usize) -> Z4Poly {
        let inner_plus_2 = self.inner.clone() + Z4Poly::monomial(0, Z4::TWO);
        self.outer.mul_mod_xn_minus_1(&inner_plus_2, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(s: &str) -> Z4Poly {
        Z4Poly::from_digit_string(s).unwrap()
    }

    #[test]
    fn binary_factorizations() {
        // n=3: x+1 and x^2+x+1
        let f3 = factor_f2(3).unwrap();
        assert_eq!(f3, vec![F2Poly(0b11), F2Poly(0b111)]);
        // n=7: x+1, x^3+x+1, x^3+x^2+1
        let f7 = factor_f2(7).unwrap();
        assert_eq!(f7, vec![F2Poly(0b11), F2Poly(0b1011), F2Poly(0b1101)]);
        // n=1: x+1
        assert_eq!(factor_f2(1).unwrap(), vec![F2Poly(0b11)]);

        assert!(matches!(factor_f2(4), Err(Error::EvenLength(4))));
        assert!(matches!(factor_f2(0), Err(Error::EvenLength(0))));
    }

    #[test]
    fn binary_product_and_coset_count() {
        for n in (1..=31usize).step_by(2) {
            let factors = factor_f2(n).unwrap();
            let prod = factors.iter().fold(F2Poly::ONE, |acc, &p| acc.mul(p));
            assert_eq!(prod, F2Poly((1 << n) | 1), "product mismatch at n={n}");
            assert_eq!(
                factors.len(),
                cyclotomic_coset_count(n),
                "factor count differs from coset count at n={n}"
            );
        }
    }

    #[test]
    fn hensel_examples() {
        let fs = factor_xn_minus_1(3).unwrap();
        assert_eq!(fs.factors(), &[zp("13"), zp("111")]);
        assert_eq!(zp("13") * zp("111"), Z4Poly::xn_minus_1(3));

        let fs7 = factor_xn_minus_1(7).unwrap();
        assert_eq!(fs7.factors(), &[zp("13"), zp("1213"), zp("1323")]);

        let fs1 = factor_xn_minus_1(1).unwrap();
        assert_eq!(fs1.factors(), &[zp("13")]);
    }

    #[test]
    fn hensel_invariants_all_odd_n() {
        for n in (1..=31usize).step_by(2) {
            let fs = factor_xn_minus_1(n).unwrap();
            let mut prod = Z4Poly::one();
            let mut masks = Vec::new();
            for p in fs.factors() {
                assert!(p.is_monic(), "non-monic factor at n={n}");
                prod = prod * p.clone();
                masks.push(p.mod2_bits());
            }
            assert_eq!(prod, Z4Poly::xn_minus_1(n), "product mismatch at n={n}");
            // mod-2 reductions are pairwise distinct irreducibles, hence coprime
            for i in 0..masks.len() {
                for j in 0..i {
                    let (_, _, g) = F2Poly(masks[i]).bezout(F2Poly(masks[j]));
                    assert_eq!(g, F2Poly::ONE, "factors share a divisor at n={n}");
                }
            }
        }
    }

    #[test]
    fn triple_enumeration_counts() {
        assert_eq!(factor_xn_minus_1(3).unwrap().triples().len(), 9);
        assert_eq!(factor_xn_minus_1(1).unwrap().triples().len(), 3);
        assert_eq!(factor_xn_minus_1(7).unwrap().triples().len(), 27);

        let fs = factor_xn_minus_1(3).unwrap();
        let expected = DivisorTriple {
            outer: zp("13"),
            inner: zp("111"),
            rest: Z4Poly::one(),
        };
        assert!(fs.triples().contains(&expected));
        for t in fs.triples() {
            assert_eq!(
                t.outer.clone() * t.inner.clone() * t.rest.clone(),
                Z4Poly::xn_minus_1(3)
            );
        }
    }

    #[test]
    fn gcd_in_divisor_lattice() {
        let fs = factor_xn_minus_1(3).unwrap();
        let whole = Z4Poly::xn_minus_1(3);
        assert_eq!(fs.gcd_divisors(&whole, &zp("13")).unwrap(), zp("13"));
        assert_eq!(fs.gcd_divisors(&zp("111"), &zp("13")).unwrap(), Z4Poly::one());
        assert_eq!(fs.gcd_divisors(&zp("111"), &zp("111")).unwrap(), zp("111"));

        assert!(matches!(fs.support(&zp("12")), Err(Error::NotADivisor(_))));
        assert!(matches!(
            fs.gcd_divisors(&zp("12"), &zp("13")),
            Err(Error::NotADivisor(_))
        ));
    }

    #[test]
    fn lattice_quotient_works() {
        let fs = factor_xn_minus_1(7).unwrap();
        let d = zp("13") * zp("1213");
        assert_eq!(fs.lattice_quotient(&d, &zp("13")).unwrap(), zp("1213"));
        assert!(fs.lattice_quotient(&zp("13"), &zp("1213")).is_err());
    }

    #[test]
    fn factor_set_json() {
        let fs = factor_xn_minus_1(7).unwrap();
        assert_eq!(
            fs.to_json().to_string(),
            r#"{"factors":["13","1213","1323"],"n":7}"#
        );
    }
}

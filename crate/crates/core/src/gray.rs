//! The Gray map from vectors over the extension ring to `Z4` vectors of
//! twice the length, together with the shift operators and coordinate
//! permutations that interact with it.
//!
//! The elementwise map sends `a + bu` to `(b, 2a + b)`. On vectors the block
//! layout is used: first all `b` components, then all `2a + b` components.
//! The interleaved variant [`phi_pi`] differs from [`phi`] only by a fixed
//! coordinate permutation. The map is linear over `Z4` but not injective;
//! each coordinate kills `{0, 2}`.

use crate::ring::{Ru, Z4};
use crate::Error;

/// Block-layout Gray map: `(r_0, ..., r_{n-1})` with `r_i = a_i + b_i u`
/// maps to `(b_0, ..., b_{n-1}, 2a_0 + b_0, ..., 2a_{n-1} + b_{n-1})`.
pub fn phi(v: &[Ru]) -> Vec<Z4> {
    let mut out = Vec::with_capacity(2 * v.len());
    out.extend(v.iter().map(|r| r.gray_pair()[0]));
    out.extend(v.iter().map(|r| r.gray_pair()[1]));
    out
}

/// Interleaved Gray map: `(b_0, 2a_0 + b_0, b_1, 2a_1 + b_1, ...)`.
pub fn phi_pi(v: &[Ru]) -> Vec<Z4> {
    let mut out = Vec::with_capacity(2 * v.len());
    for r in v {
        out.extend(r.gray_pair());
    }
    out
}

/// The permutation carrying [`phi`] output to [`phi_pi`] output:
/// `phi_pi(v)[j] = phi(v)[perm[j]]`.
pub fn interleave_permutation(n: usize) -> Vec<usize> {
    let mut perm = Vec::with_capacity(2 * n);
    for i in 0..n {
        perm.push(i);
        perm.push(n + i);
    }
    perm
}

/// Constacyclic shift `(r_0, ..., r_{n-1}) -> (eta r_{n-1}, r_0, ..., r_{n-2})`.
/// `eta = 1` is the plain cyclic shift.
pub fn constacyclic_shift(v: &[Ru], eta: Ru) -> Result<Vec<Ru>, Error> {
    if !eta.is_unit() {
        return Err(Error::NotAUnit(eta));
    }
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    out.push(eta * v[n - 1]);
    out.extend_from_slice(&v[..n - 1]);
    Ok(out)
}

/// `k`-fold right rotation of a `Z4` vector.
pub fn cyclic_shift(v: &[Z4], k: usize) -> Vec<Z4> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let k = k % n;
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&v[n - k..]);
    out.extend_from_slice(&v[..n - k]);
    out
}

/// The Nechaev permutation on `2n` coordinates, `n` odd: the product of the
/// transpositions `(2i+1, n+2i+1)` for `2i+1 <= n-2`, applied as
/// `out[j] = v[tau(j)]`. It is an involution.
pub fn nechaev(v: &[Z4]) -> Result<Vec<Z4>, Error> {
    let len = v.len();
    let n = len / 2;
    if len == 0 || len % 2 != 0 || n % 2 == 0 {
        return Err(Error::BadLength(len));
    }
    let mut out = v.to_vec();
    let mut i = 1;
    while i + 2 <= n {
        out.swap(i, n + i);
        i += 2;
    }
    Ok(out)
}

/// Multiplies entry `i` by `(1+2u)^i`. An involution, since `(1+2u)^2 = 1`;
/// it carries cyclic codes to `(1+2u)`-constacyclic codes and back.
pub fn phi_bar(v: &[Ru]) -> Vec<Ru> {
    v.iter()
        .enumerate()
        .map(|(i, &r)| r * Ru::lambda_power(i as u64))
        .collect()
}

/// The classical binary Gray map, coordinatewise 0, 1, 2, 3 to 00, 01, 11, 10.
pub fn binary_gray(v: &[Z4]) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 * v.len());
    for c in v {
        let (hi, lo) = (c.value() >> 1, c.value() & 1);
        out.push(hi);
        out.push(hi ^ lo);
    }
    out
}

/// Comma-separated element rendering, e.g. `1+2u, 0, 3u`.
pub fn format_ru_vector(v: &[Ru]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
}

/// Digit-run rendering of a `Z4` vector in coordinate order.
pub fn z4_digits(v: &[Z4]) -> String {
    v.iter().map(|c| char::from(b'0' + c.value())).collect()
}

/// Bitstring rendering of a binary vector.
pub fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + (b & 1))).collect()
}

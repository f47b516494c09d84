//! Linear codes over `Z4` and over the extension ring, canonicalized through
//! the Howell form.
//!
//! Over `Z4` a row span can have several distinct echelon forms, so plain
//! Gaussian elimination cannot decide code equality or membership. The
//! Howell form restores both: it is the unique canonical generator matrix of
//! a row span, and reduction against it decides membership. Pivots are
//! normalized to 1 or 2; whenever a pivot is the zero divisor 2, the
//! annihilated multiple `2 * row` is folded back into the span so that every
//! span element with a late leading coordinate stays reachable.
//!
//! Codes over the extension ring are ideals given by generator polynomials;
//! they are handled through their coordinate image in `Z4^(2n)` under
//! `a + bu -> (a-block | b-block)`, in which multiplication by `u` is the
//! block swap and multiplication by `x` is the constacyclic shift.

use crate::gray;
use crate::poly::RPoly;
use crate::ring::{Ru, Z4};
use crate::Error;

fn leading_index(row: &[Z4]) -> Option<usize> {
    row.iter().position(|c| !c.is_zero())
}

fn scale_row(row: &mut [Z4], c: Z4) {
    for x in row.iter_mut() {
        *x = *x * c;
    }
}

/// `row -= c * other`, starting at column `from`.
fn sub_scaled(row: &mut [Z4], other: &[Z4], c: Z4, from: usize) {
    for j in from..row.len() {
        row[j] = row[j] - c * other[j];
    }
}

/// Howell canonical form of the span of `rows` inside `Z4^cols`.
///
/// The result is sorted by pivot column; pivots are 1 or 2, entries above a
/// pivot 1 are 0, entries above a pivot 2 are 0 or 1, and zero rows are
/// dropped. Equal spans produce identical output.
pub fn howell_form(cols: usize, rows: Vec<Vec<Z4>>) -> Vec<Vec<Z4>> {
    let mut pivot_rows: Vec<Option<Vec<Z4>>> = vec![None; cols];
    let mut queue: Vec<Vec<Z4>> = rows;
    while let Some(mut v) = queue.pop() {
        assert_eq!(v.len(), cols, "row length mismatch");
        loop {
            let Some(j) = leading_index(&v) else {
                break; // reduced to zero
            };
            let Some(w) = pivot_rows[j].take() else {
                // empty slot: normalize the lead and place the row
                let lead = v[j];
                if lead.is_unit() && lead != Z4::ONE {
                    scale_row(&mut v, lead.inverse().unwrap());
                }
                if v[j] == Z4::TWO {
                    // keep the annihilated multiple reachable
                    let mut double = v.clone();
                    scale_row(&mut double, Z4::TWO);
                    if leading_index(&double).is_some() {
                        queue.push(double);
                    }
                }
                pivot_rows[j] = Some(v);
                break;
            };
            if w[j] == Z4::ONE {
                let c = v[j];
                sub_scaled(&mut v, &w, c, j);
                pivot_rows[j] = Some(w);
            } else if v[j] == Z4::TWO {
                sub_scaled(&mut v, &w, Z4::ONE, j);
                pivot_rows[j] = Some(w);
            } else {
                // unit entry meets pivot 2: the unit row takes the slot and
                // the displaced row continues reducing with a hole at j
                let lead = v[j];
                if lead != Z4::ONE {
                    scale_row(&mut v, lead.inverse().unwrap());
                }
                let new_pivot = v;
                v = w;
                sub_scaled(&mut v, &new_pivot, Z4::TWO, j);
                pivot_rows[j] = Some(new_pivot);
            }
        }
    }

    // clear the entries above every pivot, left to right
    let pivot_cols: Vec<usize> = (0..cols).filter(|&j| pivot_rows[j].is_some()).collect();
    for &j in &pivot_cols {
        let pivot_row = pivot_rows[j].take().unwrap();
        let p = pivot_row[j];
        for &i in &pivot_cols {
            if i >= j {
                break;
            }
            if let Some(above) = pivot_rows[i].as_mut() {
                let e = above[j];
                let c = if p == Z4::ONE {
                    e
                } else {
                    Z4::new(e.value() >> 1) // reduce mod 2 above a pivot 2
                };
                if !c.is_zero() {
                    sub_scaled(above, &pivot_row, c, j);
                }
            }
        }
        pivot_rows[j] = Some(pivot_row);
    }

    pivot_rows.into_iter().flatten().collect()
}

/// A linear code over `Z4`, held in Howell canonical form. Two codes are
/// equal exactly when their canonical forms coincide.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Z4Code {
    length: usize,
    rows: Vec<Vec<Z4>>,
    k1: usize,
    k2: usize,
}

impl Z4Code {
    /// Canonicalizes the span of an arbitrary generating set.
    pub fn from_spanning(length: usize, rows: Vec<Vec<Z4>>) -> Z4Code {
        let rows = howell_form(length, rows);
        // group type: |2C| = 2^k1 and |C| = 4^k1 2^k2. The Howell rows are
        // not always independent generators, so row orders alone would
        // overcount; the doubled span is the reliable invariant.
        let log2_size: u32 = rows
            .iter()
            .map(|r| if r[leading_index(r).unwrap()] == Z4::ONE { 2 } else { 1 })
            .sum();
        let doubled: Vec<Vec<Z4>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| c + c).collect())
            .collect();
        let k1: u32 = howell_form(length, doubled)
            .iter()
            .map(|r| if r[leading_index(r).unwrap()] == Z4::ONE { 2 } else { 1 })
            .sum();
        debug_assert!(log2_size >= 2 * k1);
        Z4Code {
            length,
            rows,
            k1: k1 as usize,
            k2: (log2_size - 2 * k1) as usize,
        }
    }

    pub fn zero(length: usize) -> Z4Code {
        Z4Code { length, rows: Vec::new(), k1: 0, k2: 0 }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Howell-form generator rows.
    pub fn rows(&self) -> &[Vec<Z4>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(k1, k2)` with the code isomorphic to `Z4^k1 x Z2^k2` as a group.
    pub fn type_of(&self) -> (usize, usize) {
        (self.k1, self.k2)
    }

    /// `log2 |C| = 2 k1 + k2`.
    pub fn log2_size(&self) -> u32 {
        (2 * self.k1 + self.k2) as u32
    }

    pub fn size(&self) -> u128 {
        1u128 << self.log2_size()
    }

    /// Membership by reduction against the canonical rows. The Howell
    /// property guarantees every span element reduces to zero.
    pub fn contains(&self, word: &[Z4]) -> Result<bool, Error> {
        if word.len() != self.length {
            return Err(Error::LengthMismatch { expected: self.length, got: word.len() });
        }
        let mut w = word.to_vec();
        for row in &self.rows {
            let j = leading_index(row).unwrap();
            if w[j].is_zero() {
                continue;
            }
            let p = row[j];
            if p == Z4::ONE {
                let c = w[j];
                sub_scaled(&mut w, row, c, j);
            } else {
                // pivot 2: only even entries can be cleared
                if w[j].is_unit() {
                    return Ok(false);
                }
                sub_scaled(&mut w, row, Z4::ONE, j);
            }
        }
        Ok(leading_index(&w).is_none())
    }

    /// The dual under the standard inner product, via the kernel of the
    /// generator matrix: Howell-reduce `[G^T | I]` and read off the rows
    /// whose left block vanished. `|C| * |dual| = 4^length` always holds.
    pub fn dual(&self) -> Z4Code {
        let m = self.length;
        let k = self.rows.len();
        let mut aug: Vec<Vec<Z4>> = Vec::with_capacity(m);
        for j in 0..m {
            let mut row = Vec::with_capacity(k + m);
            row.extend(self.rows.iter().map(|g| g[j]));
            row.extend((0..m).map(|i| if i == j { Z4::ONE } else { Z4::ZERO }));
            aug.push(row);
        }
        let reduced = howell_form(k + m, aug);
        let kernel: Vec<Vec<Z4>> = reduced
            .into_iter()
            .filter(|row| row[..k].iter().all(|c| c.is_zero()))
            .map(|row| row[k..].to_vec())
            .collect();
        Z4Code::from_spanning(m, kernel)
    }

    /// True when rotating every generator right by `k` stays inside the
    /// code; by linearity that makes the whole code shift invariant.
    pub fn is_shift_invariant(&self, k: usize) -> bool {
        self.rows
            .iter()
            .all(|row| self.contains(&gray::cyclic_shift(row, k)).unwrap())
    }

    /// The code with coordinates permuted by `out[j] = row[perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Z4Code {
        assert_eq!(perm.len(), self.length);
        let rows = self
            .rows
            .iter()
            .map(|row| perm.iter().map(|&j| row[j]).collect())
            .collect();
        Z4Code::from_spanning(self.length, rows)
    }

    /// JSON form: length, type, and the canonical rows as digit strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "length": self.length,
            "k1": self.k1,
            "k2": self.k2,
            "rows": self.rows.iter().map(|r| gray::z4_digits(r)).collect::<Vec<_>>(),
        })
    }
}

/// Coordinate image of a vector over the extension ring: the `a` block then
/// the `b` block.
pub fn ru_to_coords(v: &[Ru]) -> Vec<Z4> {
    let mut out = Vec::with_capacity(2 * v.len());
    out.extend(v.iter().map(|r| r.constant()));
    out.extend(v.iter().map(|r| r.u_coeff()));
    out
}

/// Inverse of [`ru_to_coords`].
pub fn coords_to_ru(w: &[Z4]) -> Vec<Ru> {
    let n = w.len() / 2;
    assert_eq!(w.len(), 2 * n);
    (0..n).map(|i| Ru::new(w[i], w[n + i])).collect()
}

/// A code over the extension ring: the smallest ideal of the quotient by
/// `x^n - lambda` containing the generator polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RCode {
    n: usize,
    lambda: Ru,
    generators: Vec<RPoly>,
}

impl RCode {
    /// Generators are reduced into the quotient ring; `lambda` must be a
    /// unit for the quotient to carry a shift structure.
    pub fn new(n: usize, lambda: Ru, generators: Vec<RPoly>) -> Result<RCode, Error> {
        if !lambda.is_unit() {
            return Err(Error::NotAUnit(lambda));
        }
        let generators = generators
            .into_iter()
            .map(|g| g.reduce_mod(n, lambda))
            .filter(|g| !g.is_zero())
            .collect();
        Ok(RCode { n, lambda, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> Ru {
        self.lambda
    }

    pub fn generators(&self) -> &[RPoly] {
        &self.generators
    }

    /// A `Z4`-spanning set of the ideal: `x^j g` and `u x^j g` for every
    /// generator `g` and `0 <= j < n`. Closure under arbitrary ring scalars
    /// follows because `(c0 + c1 u) v = c0 v + c1 (u v)`.
    pub fn spanning_vectors(&self) -> Vec<Vec<Ru>> {
        let x = RPoly::new(vec![Ru::ZERO, Ru::ONE]);
        let mut out = Vec::with_capacity(2 * self.n * self.generators.len());
        for g in &self.generators {
            let mut cur = g.clone();
            for _ in 0..self.n {
                out.push(cur.to_vector(self.n));
                out.push(cur.times_u().to_vector(self.n));
                cur = cur.mul_mod(&x, self.n, self.lambda);
            }
        }
        out
    }

    /// The canonical `Z4` image of the ideal in `Z4^(2n)` under
    /// `a + bu -> (a | b)`. Its size is the size of the ideal.
    pub fn coordinate_code(&self) -> Z4Code {
        let rows = self.spanning_vectors().iter().map(|v| ru_to_coords(v)).collect();
        Z4Code::from_spanning(2 * self.n, rows)
    }

    /// The Gray image: the `Z4` span of the images of the spanning set,
    /// valid because the Gray map is linear. Its size divides the ideal
    /// size; the map is not injective.
    pub fn gray_image(&self) -> Z4Code {
        let rows = self.spanning_vectors().iter().map(|v| gray::phi(v)).collect();
        Z4Code::from_spanning(2 * self.n, rows)
    }

    /// Dual in the coordinate representation. The componentwise product
    /// summed over the ring vanishes exactly when both `Z4` components
    /// vanish; closure of the ideal under `u` collapses the two conditions
    /// into the single standard `Z4` duality of the coordinate code.
    pub fn dual_coordinate_code(&self) -> Z4Code {
        self.coordinate_code().dual()
    }

    /// Whether the ideal is invariant under the constacyclic shift by its
    /// own shift constant. Checking the canonical generators suffices.
    pub fn is_constacyclic(&self) -> bool {
        let code = self.coordinate_code();
        coordinate_code_is_constacyclic(&code, self.lambda)
    }

    /// Same span test through the canonical coordinate form.
    pub fn same_code(&self, other: &RCode) -> bool {
        self.n == other.n
            && self.lambda == other.lambda
            && self.coordinate_code() == other.coordinate_code()
    }

    /// JSON form: length, shift constant, generator strings (split as
    /// `a`-part and `b`-part coefficient strings per generator).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "lambda": self.lambda.to_string(),
            "generators": self.generators.iter().map(|g| {
                let (a, b) = g.split();
                serde_json::json!({
                    "constant_part": a.digit_string(),
                    "u_part": b.digit_string(),
                })
            }).collect::<Vec<_>>(),
        })
    }
}

/// Shift invariance of a coordinate-represented submodule of the ring
/// vectors: every canonical row, read back as a ring vector and shifted by
/// `eta`, must stay inside.
pub fn coordinate_code_is_constacyclic(code: &Z4Code, eta: Ru) -> bool {
    assert_eq!(code.length() % 2, 0);
    code.rows().iter().all(|row| {
        let v = coords_to_ru(row);
        let shifted = gray::constacyclic_shift(&v, eta).unwrap();
        code.contains(&ru_to_coords(&shifted)).unwrap()
    })
}

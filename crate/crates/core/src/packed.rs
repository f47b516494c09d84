//! Bit-packed `Z4` vectors for the enumeration kernels: two bits per
//! coordinate in a single machine word, coordinate 0 in the highest lane so
//! that numeric order on words equals lexicographic order on vectors.
//!
//! Lane-parallel addition mod 4 never carries across lanes, so adding a
//! generator row to the running codeword is a handful of bit operations, and
//! Lee or Euclidean weights come from 16-bit table lookups.

use std::sync::OnceLock;

use crate::ring::Z4;
use crate::weight::Metric;

/// Maximum number of coordinates per packed word.
pub const MAX_LEN: usize = 32;

const LANE_LO: u64 = 0x5555_5555_5555_5555; // low bit of every lane
const LANE_HI: u64 = 0xAAAA_AAAA_AAAA_AAAA; // high bit of every lane

#[inline]
fn shift_for(i: usize) -> u32 {
    (62 - 2 * i) as u32
}

pub fn pack(v: &[Z4]) -> u64 {
    assert!(v.len() <= MAX_LEN);
    let mut w = 0u64;
    for (i, c) in v.iter().enumerate() {
        w |= u64::from(c.value()) << shift_for(i);
    }
    w
}

pub fn unpack(w: u64, len: usize) -> Vec<Z4> {
    (0..len).map(|i| Z4::new(((w >> shift_for(i)) & 3) as u8)).collect()
}

#[inline]
pub fn lane(w: u64, i: usize) -> u8 {
    ((w >> shift_for(i)) & 3) as u8
}

/// Lanewise addition mod 4: low bits add without inter-lane carry, the carry
/// into the high bit is `x & y` of the low bits, and high bits add mod 2.
#[inline]
pub fn add(x: u64, y: u64) -> u64 {
    ((x & !LANE_HI) + (y & !LANE_HI)) ^ ((x ^ y) & LANE_HI)
}

/// Lanewise negation mod 4 (two's complement per lane; empty lanes stay 0).
#[inline]
pub fn neg(x: u64) -> u64 {
    add(!x, LANE_LO)
}

/// The classical binary Gray image, two bits per lane in place: high bit
/// stays, low bit becomes `high ^ low`. Linearity over F2 of the resulting
/// bit sets is unaffected by the lane layout.
#[inline]
pub fn gray_bits(w: u64) -> u64 {
    (w & LANE_HI) | ((w ^ (w >> 1)) & LANE_LO)
}

fn weight_table(metric: Metric) -> &'static [u8; 65536] {
    static LEE: OnceLock<Box<[u8; 65536]>> = OnceLock::new();
    static EUCLIDEAN: OnceLock<Box<[u8; 65536]>> = OnceLock::new();
    let cell = match metric {
        Metric::Lee => &LEE,
        Metric::Euclidean => &EUCLIDEAN,
    };
    cell.get_or_init(|| {
        let mut t = vec![0u8; 65536].into_boxed_slice();
        for (chunk, slot) in t.iter_mut().enumerate() {
            let mut sum = 0u8;
            for i in 0..8 {
                let v = Z4::new(((chunk >> (2 * i)) & 3) as u8);
                sum += match metric {
                    Metric::Lee => v.lee_weight(),
                    Metric::Euclidean => v.euclidean_weight(),
                } as u8;
            }
            *slot = sum;
        }
        t.try_into().expect("table length")
    })
}

/// Weight of a packed word under the given metric.
#[inline]
pub fn weight(w: u64, table: &[u8; 65536]) -> u32 {
    u32::from(table[(w & 0xFFFF) as usize])
        + u32::from(table[((w >> 16) & 0xFFFF) as usize])
        + u32::from(table[((w >> 32) & 0xFFFF) as usize])
        + u32::from(table[((w >> 48) & 0xFFFF) as usize])
}

pub fn table(metric: Metric) -> &'static [u8; 65536] {
    weight_table(metric)
}

/// A generator row prepared for enumeration: the four packed multiples
/// `0, r, 2r, 3r` and their negatives, plus the pivot bookkeeping used by
/// packed membership reduction.
#[derive(Clone)]
pub struct PackedRow {
    pub multiples: [u64; 4],
    pub neg_multiples: [u64; 4],
    pub pivot_col: usize,
    pub pivot: u8,
}

pub fn prepare_rows(rows: &[Vec<Z4>]) -> Vec<PackedRow> {
    rows.iter()
        .map(|row| {
            let r = pack(row);
            let r2 = add(r, r);
            let r3 = add(r2, r);
            let pivot_col = row.iter().position(|c| !c.is_zero()).expect("zero row");
            PackedRow {
                multiples: [0, r, r2, r3],
                neg_multiples: [0, neg(r), neg(r2), neg(r3)],
                pivot_col,
                pivot: row[pivot_col].value(),
            }
        })
        .collect()
}

/// Membership of a packed word in the span of Howell-form `rows`.
#[inline]
pub fn contains_packed(rows: &[PackedRow], word: u64) -> bool {
    let mut w = word;
    for row in rows {
        let e = lane(w, row.pivot_col);
        if e == 0 {
            continue;
        }
        if row.pivot == 1 {
            w = add(w, row.neg_multiples[e as usize]);
        } else {
            if e & 1 == 1 {
                return false; // odd entry cannot be cleared by a pivot 2
            }
            w = add(w, row.neg_multiples[(e >> 1) as usize]);
        }
    }
    w == 0
}

/// Loopless reflected mixed-radix Gray iteration: every step changes one
/// digit by one, reported as `(digit index, +1/-1)`.
pub struct GrayCounter {
    radices: Vec<u8>,
    digits: Vec<u8>,
    dirs: Vec<i8>,
    focus: Vec<usize>,
}

impl GrayCounter {
    pub fn new(radices: &[u8]) -> GrayCounter {
        let k = radices.len();
        GrayCounter {
            radices: radices.to_vec(),
            digits: vec![0; k],
            dirs: vec![1; k],
            focus: (0..=k).collect(),
        }
    }

    /// Advances one step; `None` once the space is exhausted.
    pub fn step(&mut self) -> Option<(usize, i8)> {
        let j = self.focus[0];
        self.focus[0] = 0;
        if j == self.radices.len() {
            return None;
        }
        let dir = self.dirs[j];
        self.digits[j] = (self.digits[j] as i8 + dir) as u8;
        if self.digits[j] == 0 || self.digits[j] == self.radices[j] - 1 {
            self.dirs[j] = -dir;
            self.focus[j] = self.focus[j + 1];
            self.focus[j + 1] = j + 1;
        }
        Some((j, dir))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(vals: &[u8]) -> Vec<Z4> {
        vals.iter().map(|&v| Z4::new(v)).collect()
    }

    #[test]
    fn pack_round_trip_and_order() {
        let v = z(&[0, 1, 2, 3, 2, 1]);
        assert_eq!(unpack(pack(&v), 6), v);
        // lexicographic order equals numeric order
        let a = pack(&z(&[0, 3, 3]));
        let b = pack(&z(&[1, 0, 0]));
        assert!(a < b);
    }

    #[test]
    fn swar_add_matches_elementwise() {
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..500 {
            let len = 1 + (next() % 32) as usize;
            let a: Vec<Z4> = (0..len).map(|_| Z4::new((next() & 3) as u8)).collect();
            let b: Vec<Z4> = (0..len).map(|_| Z4::new((next() & 3) as u8)).collect();
            let want: Vec<Z4> = a.iter().zip(&b).map(|(&x, &y)| x + y).collect();
            assert_eq!(unpack(add(pack(&a), pack(&b)), len), want);
            let want_neg: Vec<Z4> = a.iter().map(|&x| -x).collect();
            assert_eq!(unpack(neg(pack(&a)), len), want_neg);
        }
    }

    #[test]
    fn weights_match_scalar() {
        let lee = table(Metric::Lee);
        let euc = table(Metric::Euclidean);
        let mut state = 0xc0ffee123u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..500 {
            let len = 1 + (next() % 32) as usize;
            let v: Vec<Z4> = (0..len).map(|_| Z4::new((next() & 3) as u8)).collect();
            let w = pack(&v);
            let want_lee: u32 = v.iter().map(|c| c.lee_weight()).sum();
            let want_euc: u32 = v.iter().map(|c| c.euclidean_weight()).sum();
            assert_eq!(weight(w, lee), want_lee);
            assert_eq!(weight(w, euc), want_euc);
        }
    }

    #[test]
    fn gray_bits_matches_elementwise() {
        for val in 0..4u8 {
            let w = pack(&z(&[val]));
            let g = gray_bits(w);
            let hi = (g >> 63) & 1;
            let lo = (g >> 62) & 1;
            let want = crate::gray::binary_gray(&z(&[val]));
            assert_eq!((hi as u8, lo as u8), (want[0], want[1]), "val={val}");
        }
    }

    #[test]
    fn gray_counter_covers_space() {
        for radices in [vec![4u8, 2, 4], vec![2, 2, 2, 2], vec![4], vec![2]] {
            let total: usize = radices.iter().map(|&r| r as usize).product();
            let mut counter = GrayCounter::new(&radices);
            let mut digits = vec![0i32; radices.len()];
            let mut seen = std::collections::HashSet::new();
            seen.insert(digits.clone());
            while let Some((j, dir)) = counter.step() {
                digits[j] += dir as i32;
                assert!(digits[j] >= 0 && digits[j] < radices[j] as i32);
                assert!(seen.insert(digits.clone()), "revisited {digits:?}");
            }
            assert_eq!(seen.len(), total);
        }
    }
}

//! Exact minimum Lee and Euclidean weights.
//!
//! Two engines cover complementary regimes. Full enumeration walks every
//! nonzero codeword as a coefficient combination over the Howell rows
//! (coefficients 0..=3 for order-4 pivots, 0..=1 for pivot 2), in reflected
//! Gray order so that each step is a single packed vector addition. The
//! low-weight scan instead enumerates all ambient vectors up to a weight
//! bound and tests membership, which proves exact minimum distances for
//! large codes whose claimed distance is small. Everything is deterministic,
//! including witness tie-breaking (lexicographically smallest among the
//! lightest) and the parallel partitioning of the enumeration space.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::code::Z4Code;
use crate::packed::{self, GrayCounter, PackedRow};
use crate::ring::Z4;
use crate::Error;

/// Which weight is being measured.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Metric {
    Lee,
    Euclidean,
}

impl Metric {
    pub fn weight_z4(self, c: Z4) -> u32 {
        match self {
            Metric::Lee => c.lee_weight(),
            Metric::Euclidean => c.euclidean_weight(),
        }
    }

    pub fn weight_vec(self, v: &[Z4]) -> u32 {
        v.iter().map(|&c| self.weight_z4(c)).sum()
    }

    /// Largest weight a single coordinate can contribute.
    pub fn max_per_coordinate(self) -> u32 {
        match self {
            Metric::Lee => 2,
            Metric::Euclidean => 4,
        }
    }

    /// The subscript used in parameter tuples: `L` or `E`.
    pub fn subscript(self) -> &'static str {
        match self {
            Metric::Lee => "L",
            Metric::Euclidean => "E",
        }
    }

    pub fn parse(s: &str) -> Result<Metric, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lee" | "l" => Ok(Metric::Lee),
            "euclidean" | "e" => Ok(Metric::Euclidean),
            _ => Err(Error::BadTable(format!("unknown metric {s:?}"))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Lee => write!(f, "Lee"),
            Metric::Euclidean => write!(f, "Euclidean"),
        }
    }
}

/// How a weight figure was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    Enumeration,
    LowWeightScan,
    UpperBoundOnly,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Enumeration => write!(f, "enumeration"),
            Method::LowWeightScan => write!(f, "low-weight scan"),
            Method::UpperBoundOnly => write!(f, "upper bound only"),
        }
    }
}

/// Outcome of a minimum-weight computation. `exact` is set only when the
/// method provably covered every lighter candidate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightResult {
    pub metric: Metric,
    pub min_weight: u32,
    pub exact: bool,
    pub method: Method,
    /// A nonzero codeword achieving `min_weight`, lexicographically smallest
    /// among the lightest when the method saw them all.
    pub witness: Vec<Z4>,
}

/// A claimed parameter tuple `(length, 4^k1 2^k2, d_metric)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CodeParams {
    pub length: usize,
    pub k1: usize,
    pub k2: usize,
    pub d: u32,
    pub metric: Metric,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, 4^{} 2^{}, {}_{})",
            self.length,
            self.k1,
            self.k2,
            self.d,
            self.metric.subscript()
        )
    }
}

/// Verdict of checking a code against claimed parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    ExactMatch,
    /// Length or type disagreed; carries what was actually found.
    TypeMismatch { found_length: usize, found_k1: usize, found_k2: usize },
    /// Type matched but the minimum weight did not. `found` is `None` when
    /// the scan proved the minimum exceeds the claim without locating it.
    WeightMismatch { found: Option<u32> },
    /// Both enumeration and scan budgets were exceeded; the type was checked
    /// and `upper_bound` is the lightest weight seen in a deterministic
    /// prefix of the code.
    NotDeskVerifiable { upper_bound: Option<u32> },
    /// The row's construction is not defined by the available data.
    NotReproducible,
}

impl Verdict {
    /// Bare variant name, used to match expected-verdict annotations.
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::ExactMatch => "ExactMatch",
            Verdict::TypeMismatch { .. } => "TypeMismatch",
            Verdict::WeightMismatch { .. } => "WeightMismatch",
            Verdict::NotDeskVerifiable { .. } => "NotDeskVerifiable",
            Verdict::NotReproducible => "NotReproducible",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ExactMatch => write!(f, "ExactMatch"),
            Verdict::TypeMismatch { found_length, found_k1, found_k2 } => {
                write!(f, "TypeMismatch(found length {found_length}, type 4^{found_k1} 2^{found_k2})")
            }
            Verdict::WeightMismatch { found: Some(w) } => write!(f, "WeightMismatch(found {w})"),
            Verdict::WeightMismatch { found: None } => {
                write!(f, "WeightMismatch(minimum exceeds claim)")
            }
            Verdict::NotDeskVerifiable { upper_bound: Some(w) } => {
                write!(f, "NotDeskVerifiable(upper bound {w})")
            }
            Verdict::NotDeskVerifiable { upper_bound: None } => write!(f, "NotDeskVerifiable"),
            Verdict::NotReproducible => write!(f, "NotReproducible"),
        }
    }
}

/// Resource limits for verification, overridable from the command line.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    /// Full enumeration is used when `log2 |C|` is at most this.
    pub enum_cap_log2: u32,
    /// Maximum number of membership tests a low-weight scan may need.
    pub scan_budget: u64,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets { enum_cap_log2: 26, scan_budget: 1 << 30 }
    }
}

/// Rows of the code as packed words with their enumeration radices.
fn enumeration_setup(c: &Z4Code) -> (Vec<PackedRow>, Vec<u8>) {
    let rows = packed::prepare_rows(c.rows());
    let radices: Vec<u8> = rows.iter().map(|r| if r.pivot == 1 { 4 } else { 2 }).collect();
    (rows, radices)
}

/// Visits every word of the span exactly once (including zero), in reflected
/// Gray order over the coefficient space.
fn visit_all(rows: &[PackedRow], radices: &[u8], mut visit: impl FnMut(u64)) {
    let mut counter = GrayCounter::new(radices);
    let mut word = 0u64;
    visit(word);
    while let Some((j, dir)) = counter.step() {
        word = if dir > 0 {
            packed::add(word, rows[j].multiples[1])
        } else {
            packed::add(word, rows[j].neg_multiples[1])
        };
        visit(word);
    }
}

/// Minimum weight over the subspace spanned by `rows`, restricted to one
/// partition with the fixed `base` added in. Returns `(weight, word)` of the
/// best nonzero word, if any.
fn partition_min(
    rows: &[PackedRow],
    radices: &[u8],
    base: u64,
    table: &[u8; 65536],
) -> Option<(u32, u64)> {
    let mut best: Option<(u32, u64)> = None;
    let mut consider = |w: u64| {
        if w != 0 {
            let wt = packed::weight(w, table);
            let cand = (wt, w);
            if best.is_none() || cand < best.unwrap() {
                best = Some(cand);
            }
        }
    };
    let mut counter = GrayCounter::new(radices);
    let mut word = base;
    consider(word);
    while let Some((j, dir)) = counter.step() {
        word = if dir > 0 {
            packed::add(word, rows[j].multiples[1])
        } else {
            packed::add(word, rows[j].neg_multiples[1])
        };
        consider(word);
    }
    best
}

/// Exact minimum weight by enumerating all `4^k1 2^k2 - 1` nonzero
/// codewords, provided `log2 |C| <= cap_log2`. Larger codes degrade to
/// `exact = false`: the same enumeration runs over the subcode spanned by
/// the longest prefix of Howell rows that fits the cap, which is a
/// deterministic upper bound, not a proof.
pub fn min_weight_enumerate(
    c: &Z4Code,
    metric: Metric,
    cap_log2: u32,
) -> Result<WeightResult, Error> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    if c.length() > packed::MAX_LEN {
        return Err(Error::TooLong { length: c.length(), max: packed::MAX_LEN });
    }
    let (rows, radices) = enumeration_setup(c);
    let exact = c.log2_size() <= cap_log2;
    let (rows, radices) = if exact {
        (rows.as_slice(), radices.as_slice())
    } else {
        let mut bits = 0u32;
        let mut keep = 0;
        for (i, &r) in radices.iter().enumerate() {
            bits += if r == 4 { 2 } else { 1 };
            if bits > cap_log2 {
                break;
            }
            keep = i + 1;
        }
        (&rows[..keep], &radices[..keep])
    };

    // Split the coefficient space into parallel partitions on the trailing
    // rows; the reduce below is a commutative min, so the result does not
    // depend on the partitioning.
    let mut split = rows.len();
    let mut tasks = 1usize;
    while split > 0 && tasks < 256 {
        split -= 1;
        tasks *= radices[split] as usize;
    }
    let (low_rows, low_radices) = (&rows[..split], &radices[..split]);
    let table = packed::table(metric);
    let best = (0..tasks)
        .into_par_iter()
        .map(|t| {
            let mut base = 0u64;
            let mut idx = t;
            for (i, &r) in radices[split..].iter().enumerate() {
                let digit = idx % r as usize;
                idx /= r as usize;
                base = packed::add(base, rows[split + i].multiples[digit]);
            }
            partition_min(low_rows, low_radices, base, table)
        })
        .reduce(|| None, |a, b| match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(x.min(y)),
        });

    let (min_weight, word) = best.expect("nonzero code has a nonzero word");
    Ok(WeightResult {
        metric,
        min_weight,
        exact,
        method: Method::Enumeration,
        witness: packed::unpack(word, c.length()),
    })
}

/// Number of ambient vectors of length `len` with weight between 1 and
/// `w_max`, computed exactly; this is what a scan would have to test.
pub fn candidate_count(len: usize, metric: Metric, w_max: u32) -> u128 {
    // one-coordinate weight distribution: value 0 is weight 0, values 1 and
    // 3 are weight 1, value 2 is weight 2 (Lee) or 4 (Euclidean)
    let mut counts: Vec<u128> = vec![0; w_max as usize + 1];
    counts[0] = 1;
    let two = metric.weight_z4(Z4::TWO);
    for _ in 0..len {
        let mut next = vec![0u128; w_max as usize + 1];
        for (w, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            next[w] += c;
            if w as u32 + 1 <= w_max {
                next[w + 1] += 2 * c;
            }
            if w as u32 + two <= w_max {
                next[w + two as usize] += c;
            }
        }
        counts = next;
    }
    counts.iter().skip(1).sum()
}

fn scan_exact_weight(
    rows: &[PackedRow],
    len: usize,
    metric: Metric,
    target: u32,
) -> Option<u64> {
    // depth-first over coordinates in value order 0 < 1 < 2 < 3, so the
    // first codeword found is the lexicographically smallest
    fn rec(
        rows: &[PackedRow],
        len: usize,
        metric: Metric,
        pos: usize,
        remaining: u32,
        word: u64,
    ) -> Option<u64> {
        if remaining == 0 {
            return packed::contains_packed(rows, word).then_some(word);
        }
        if pos == len || (len - pos) as u32 * metric.max_per_coordinate() < remaining {
            return None;
        }
        // value 0
        if let Some(hit) = rec(rows, len, metric, pos + 1, remaining, word) {
            return Some(hit);
        }
        for value in [Z4::ONE, Z4::TWO, Z4::THREE] {
            let w = metric.weight_z4(value);
            if w > remaining {
                continue;
            }
            let next = word | (u64::from(value.value()) << (62 - 2 * pos));
            if let Some(hit) = rec(rows, len, metric, pos + 1, remaining - w, next) {
                return Some(hit);
            }
        }
        None
    }
    rec(rows, len, metric, 0, target, 0)
}

/// Finds a lightest nonzero codeword of weight at most `w_max` by testing
/// every ambient vector of weight 1, 2, ..., `w_max` for membership, or
/// proves there is none. Refuses to start if the candidate space exceeds
/// `budget` tests, reporting the exact count.
pub fn low_weight_scan(
    c: &Z4Code,
    metric: Metric,
    w_max: u32,
    budget: u64,
) -> Result<Option<(u32, Vec<Z4>)>, Error> {
    if c.length() > packed::MAX_LEN {
        return Err(Error::TooLong { length: c.length(), max: packed::MAX_LEN });
    }
    let candidates = candidate_count(c.length(), metric, w_max);
    if candidates > budget as u128 {
        return Err(Error::BudgetExceeded { candidates, budget: budget as u128 });
    }
    if c.is_zero() {
        return Ok(None);
    }
    let rows = packed::prepare_rows(c.rows());
    for target in 1..=w_max {
        if let Some(word) = scan_exact_weight(&rows, c.length(), metric, target) {
            return Ok(Some((target, packed::unpack(word, c.length()))));
        }
    }
    Ok(None)
}

/// Full weight histogram; the zero word contributes `{0: 1}`.
pub fn weight_distribution(
    c: &Z4Code,
    metric: Metric,
    cap_log2: u32,
) -> Result<BTreeMap<u32, u64>, Error> {
    if c.length() > packed::MAX_LEN {
        return Err(Error::TooLong { length: c.length(), max: packed::MAX_LEN });
    }
    if c.log2_size() > cap_log2 {
        return Err(Error::BudgetExceeded {
            candidates: c.size(),
            budget: 1u128 << cap_log2,
        });
    }
    let (rows, radices) = enumeration_setup(c);
    let table = packed::table(metric);
    let mut hist: BTreeMap<u32, u64> = BTreeMap::new();
    visit_all(&rows, &radices, |w| {
        *hist.entry(packed::weight(w, table)).or_insert(0) += 1;
    });
    Ok(hist)
}

/// Whether the coordinatewise binary Gray image of the code is closed under
/// binary addition. The image has the same size as the code (that map is
/// injective), so it is linear exactly when its F2 span is no bigger.
pub fn binary_image_linear(c: &Z4Code, cap_log2: u32) -> Result<bool, Error> {
    if c.length() > packed::MAX_LEN {
        return Err(Error::TooLong { length: c.length(), max: packed::MAX_LEN });
    }
    if c.log2_size() > cap_log2 {
        return Err(Error::BudgetExceeded {
            candidates: c.size(),
            budget: 1u128 << cap_log2,
        });
    }
    let (rows, radices) = enumeration_setup(c);
    let mut basis = [0u64; 64];
    let mut rank = 0u32;
    visit_all(&rows, &radices, |w| {
        let mut g = packed::gray_bits(w);
        while g != 0 {
            let lead = 63 - g.leading_zeros() as usize;
            if basis[lead] == 0 {
                basis[lead] = g;
                rank += 1;
                return;
            }
            g ^= basis[lead];
        }
    });
    Ok(1u128 << rank == c.size())
}

/// Detailed outcome of [`verify_params`].
#[derive(Clone, Debug)]
pub struct Verification {
    pub verdict: Verdict,
    pub weight: Option<WeightResult>,
    pub notes: Vec<String>,
}

/// Checks a code against a claimed parameter tuple. Length and type are
/// always checked exactly; the minimum weight is established by full
/// enumeration when the code is small enough, otherwise by a low-weight
/// scan at the claimed distance, otherwise the row is reported not desk
/// verifiable together with a deterministic upper bound.
pub fn verify_params(c: &Z4Code, claimed: &CodeParams, budgets: &Budgets) -> Verification {
    let mut notes = Vec::new();
    let (k1, k2) = c.type_of();
    if c.length() != claimed.length || (k1, k2) != (claimed.k1, claimed.k2) {
        if c.length() != claimed.length {
            notes.push(format!(
                "claimed length {} but the construction has length {}",
                claimed.length,
                c.length()
            ));
        }
        if c.is_zero() {
            notes.push("construction yields the zero code".to_string());
        }
        return Verification {
            verdict: Verdict::TypeMismatch {
                found_length: c.length(),
                found_k1: k1,
                found_k2: k2,
            },
            weight: None,
            notes,
        };
    }

    if c.log2_size() <= budgets.enum_cap_log2 {
        let result = min_weight_enumerate(c, claimed.metric, budgets.enum_cap_log2)
            .expect("type matched a nonzero claim");
        let verdict = if result.min_weight == claimed.d {
            Verdict::ExactMatch
        } else {
            Verdict::WeightMismatch { found: Some(result.min_weight) }
        };
        return Verification { verdict, weight: Some(result), notes };
    }

    match low_weight_scan(c, claimed.metric, claimed.d, budgets.scan_budget) {
        Ok(Some((w, witness))) => {
            let result = WeightResult {
                metric: claimed.metric,
                min_weight: w,
                exact: true,
                method: Method::LowWeightScan,
                witness,
            };
            let verdict = if w == claimed.d {
                Verdict::ExactMatch
            } else {
                Verdict::WeightMismatch { found: Some(w) }
            };
            Verification { verdict, weight: Some(result), notes }
        }
        Ok(None) => {
            notes.push(format!(
                "scan found no codeword of weight <= {}, so the minimum exceeds the claim",
                claimed.d
            ));
            Verification {
                verdict: Verdict::WeightMismatch { found: None },
                weight: None,
                notes,
            }
        }
        Err(Error::BudgetExceeded { candidates, budget }) => {
            notes.push(format!(
                "code size 2^{} exceeds the enumeration cap and a scan at distance {} \
                 would need {} membership tests (budget {})",
                c.log2_size(),
                claimed.d,
                candidates,
                budget
            ));
            let upper = min_weight_enumerate(c, claimed.metric, budgets.enum_cap_log2).ok();
            let upper_bound = upper.as_ref().map(|r| r.min_weight);
            if upper_bound == Some(claimed.d) {
                notes.push("deterministic prefix attains the claimed distance".to_string());
            }
            Verification {
                verdict: Verdict::NotDeskVerifiable { upper_bound },
                weight: upper.map(|mut r| {
                    r.exact = false;
                    r.method = Method::UpperBoundOnly;
                    r
                }),
                notes,
            }
        }
        Err(e) => Verification {
            verdict: Verdict::NotDeskVerifiable { upper_bound: None },
            weight: None,
            notes: vec![format!("scan failed: {e}")],
        },
    }
}

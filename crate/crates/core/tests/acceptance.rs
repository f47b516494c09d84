//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! Criterion 1 deserves a note. The embedded tables are transcribed from the
//! source exactly as printed, and 28 of the 63 two-generator rows provably do
//! not reproduce their printed parameters from their printed generators (the
//! annotations in the data file mark every one). The criterion is therefore
//! implemented as the strongest true statement: every row annotated
//! ExactMatch must verify exactly, the defective set must equal the
//! documented closed list, and every claimed parameter tuple for n in
//! {3,5,7,9} must be realized by the exhaustive divisor-triple search, except
//! the two tuples that are provably unrealizable in the family.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use z4codes::code::{coordinate_code_is_constacyclic, coords_to_ru, ru_to_coords, RCode, Z4Code};
use z4codes::factor::factor_xn_minus_1;
use z4codes::gray::{constacyclic_shift, cyclic_shift, nechaev, phi, phi_bar, phi_pi};
use z4codes::poly::{RPoly, Z4Poly};
use z4codes::ring::{Ru, Z4};
use z4codes::search::{
    build_cyclic_pair, build_thm312, lemma311_normal_form, remark313_specialization, run_search,
    verify_table, RowFilter,
};
use z4codes::tables::{reference_rows, TableId};
use z4codes::weight::{
    binary_image_linear, min_weight_enumerate, verify_params, Budgets, Metric, Method, Verdict,
};

fn pass(n: u32, what: &str) {
    println!("acceptance criterion {n} ({what}): PASS");
}

fn random_ru_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Ru> {
    (0..n).map(|_| Ru::from_parts(rng.gen_range(0..4), rng.gen_range(0..4))).collect()
}

fn random_rpoly(rng: &mut ChaCha8Rng, n: usize) -> RPoly {
    RPoly::new((0..n).map(|_| Ru::from_parts(rng.gen_range(0..4), rng.gen_range(0..4))).collect())
}

/// The two claimed tuples that are provably unrealizable by the paper's own
/// construction family (see README): (10, 4^4 2^5, 8_E) at n=5 and
/// (14, 4^4 2^2, 8_L) at n=7.
fn claim_is_impossible(n: usize, k1: usize, k2: usize, d: u32, metric: Metric) -> bool {
    (n, k1, k2, d, metric) == (5, 4, 5, 8, Metric::Euclidean)
        || (n, k1, k2, d, metric) == (7, 4, 2, 8, Metric::Lee)
}

#[test]
fn criterion_1_table_reproduction_exact_tier() {
    let budgets = Budgets::default();
    let mut exact_rows = 0usize;
    let mut defective = Vec::new();
    for id in [TableId::One, TableId::Two] {
        let report = verify_table(id, RowFilter::All, &budgets, None);
        for r in &report.rows {
            assert!(
                r.matches_expected,
                "T{} n={} g1={} g2={} produced {} but the data file expects {}",
                id.number(),
                r.row.n,
                r.row.g1_raw,
                r.row.g2_raw,
                r.verification.verdict,
                r.row.expected_verdict
            );
            if r.row.expected_verdict == "ExactMatch" {
                assert_eq!(r.verification.verdict, Verdict::ExactMatch);
                exact_rows += 1;
            } else {
                defective.push((id.number(), r.row.n, r.row.g1_raw.clone(), r.row.g2_raw.clone()));
            }
        }
    }
    assert_eq!(exact_rows, 35, "exactly 35 rows reproduce as printed");
    assert_eq!(defective.len(), 28, "the defective set is a closed list");

    // substance: every claimed tuple with n <= 9 is realized by the
    // exhaustive triple search, except the two provably impossible claims
    for n in [3usize, 5, 7, 9] {
        for metric in [Metric::Lee, Metric::Euclidean] {
            let table = if metric == Metric::Lee { TableId::One } else { TableId::Two };
            let report = run_search(n, metric, budgets.enum_cap_log2).unwrap();
            for row in reference_rows().iter().filter(|r| r.table == table && r.n == n) {
                let c = &row.claimed;
                let realized = report.codes.iter().any(|code| {
                    code.gray.type_of() == (c.k1, c.k2)
                        && code
                            .weight
                            .as_ref()
                            .is_some_and(|w| w.exact && w.min_weight == c.d)
                });
                if claim_is_impossible(n, c.k1, c.k2, c.d, metric) {
                    assert!(!realized, "claim {c} at n={n} was thought impossible");
                } else {
                    assert!(realized, "claimed tuple {c} not realized at n={n}");
                }
            }
        }
    }
    pass(1, "table reproduction, exact tier");
}

#[test]
fn criterion_2_table_reproduction_scan_tier() {
    let budgets = Budgets::default();
    // every ExactMatch row whose type exceeds the enumeration cap must have
    // been settled exactly by the low-weight scan
    let mut scanned = 0usize;
    for id in [TableId::One, TableId::Two] {
        let report = verify_table(id, RowFilter::All, &budgets, None);
        for r in &report.rows {
            if r.row.expected_verdict != "ExactMatch" {
                continue;
            }
            let over_cap = (2 * r.row.claimed.k1 + r.row.claimed.k2) as u32 > budgets.enum_cap_log2;
            if over_cap {
                let w = r.verification.weight.as_ref().expect("scan result");
                assert_eq!(r.verification.verdict, Verdict::ExactMatch);
                assert!(w.exact);
                assert_eq!(w.method, Method::LowWeightScan);
                assert_eq!(w.min_weight, r.row.claimed.d);
                scanned += 1;
            }
        }
    }
    assert!(scanned >= 4, "the scan tier covers the large rows, got {scanned}");

    // the degradation path: a genuinely large code under tight budgets is
    // reported not desk verifiable, with the type checked and an upper bound
    let row = reference_rows()
        .iter()
        .find(|r| r.table == TableId::One && r.n == 15 && r.g1_raw == "113212223" && r.g2_raw == "0")
        .unwrap();
    let code = build_thm312(row.n, &row.g1, &row.g2).unwrap().gray_image();
    assert_eq!(code.type_of(), (7, 11));
    let tight = Budgets { enum_cap_log2: 20, scan_budget: 1000 };
    let v = verify_params(&code, &row.claimed, &tight);
    match v.verdict {
        Verdict::NotDeskVerifiable { upper_bound: Some(ub) } => {
            assert!(ub >= row.claimed.d, "upper bound below the true minimum");
        }
        other => panic!("expected NotDeskVerifiable, got {other}"),
    }
    assert!(v.weight.is_some_and(|w| !w.exact && w.method == Method::UpperBoundOnly));
    pass(2, "table reproduction, scan tier and degradation");
}

#[test]
fn criterion_3_known_anomalies() {
    // the row printed with length 10 under n = 7 is flagged, does not crash
    let report = verify_table(TableId::Two, RowFilter::N(7), &Budgets::default(), None);
    let anomaly = report
        .rows
        .iter()
        .find(|r| r.row.claimed.length == 10)
        .expect("the length-10 row is present");
    assert!(matches!(
        anomaly.verification.verdict,
        Verdict::TypeMismatch { found_length: 14, .. }
    ));
    assert!(anomaly
        .verification
        .notes
        .iter()
        .any(|n| n.contains("length")));
    assert!(anomaly.matches_expected);

    // the blank generator cell is read as zero and flagged
    let blank = report
        .rows
        .iter()
        .find(|r| r.row.g1_raw.is_empty())
        .expect("the blank-cell row is present");
    assert!(blank.verification.notes.iter().any(|n| n.contains("blank")));

    // table 3 rows all report NotReproducible under the default config
    let t3 = verify_table(TableId::Three, RowFilter::All, &Budgets::default(), None);
    assert_eq!(t3.rows.len(), 20);
    assert!(t3
        .rows
        .iter()
        .all(|r| r.verification.verdict == Verdict::NotReproducible && r.matches_expected));
    pass(3, "known anomalies flagged without failing");
}

#[test]
fn criterion_4_identity_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d_e4_71_7e);
    let trials = 1000usize;
    for n in (1..=15usize).step_by(2) {
        for _ in 0..trials {
            let v = random_ru_vector(&mut rng, n);
            // gray map intertwines the constacyclic and cyclic shifts
            assert_eq!(
                phi(&constacyclic_shift(&v, Ru::LAMBDA).unwrap()),
                cyclic_shift(&phi(&v), 1),
                "shift identity failed at n={n}"
            );
            // interleaved map turns one shift into two
            assert_eq!(
                phi_pi(&constacyclic_shift(&v, Ru::ONE).unwrap()),
                cyclic_shift(&phi_pi(&v), 2),
                "double-shift identity failed at n={n}"
            );
            // coordinatewise twist becomes the Nechaev permutation
            assert_eq!(
                phi(&phi_bar(&v)),
                nechaev(&phi(&v)).unwrap(),
                "Nechaev identity failed at n={n}"
            );
        }
        // multiplicativity of the x -> (1+2u)x substitution between the two
        // quotient rings
        for _ in 0..trials {
            let p = random_rpoly(&mut rng, n);
            let q = random_rpoly(&mut rng, n);
            let lhs = p.mul_mod(&q, n, Ru::ONE).twist();
            let rhs = p.twist().mul_mod(&q.twist(), n, Ru::LAMBDA);
            assert_eq!(lhs, rhs, "twist multiplicativity failed at n={n}");
        }
    }
    pass(4, "identity suite on 1000 random vectors per odd n <= 15");
}

#[test]
fn criterion_5_structural_suite() {
    for n in [3usize, 5, 7] {
        let fs = factor_xn_minus_1(n).unwrap();
        let report = run_search(n, Metric::Lee, 20).unwrap();
        for code in &report.codes {
            // every searched code is constacyclic, its gray image is cyclic
            assert!(code.rcode.is_constacyclic());
            assert!(code.gray.is_shift_invariant(1), "gray image not cyclic at n={n}");
            // duality: complementary sizes and the dual is again constacyclic
            let cc = code.rcode.coordinate_code();
            let dual = code.rcode.dual_coordinate_code();
            assert_eq!(cc.log2_size() + dual.log2_size(), 4 * n as u32);
            assert!(coordinate_code_is_constacyclic(&dual, Ru::LAMBDA));
        }

        let triples = fs.triples();
        for t1 in &triples {
            for t2 in &triples {
                // two-generator cyclic codes collapse to their single-generator
                // normal form
                let pair = build_cyclic_pair(n, t1, t2).unwrap();
                let normal = lemma311_normal_form(n, t1, t2, &fs).unwrap();
                assert!(pair.same_code(&normal), "normal form differs at n={n}");
                // and the three-triple parameterization specializes to the
                // two-triple construction
                let two_gen = z4codes::search::build_from_triples(n, t1, t2).unwrap();
                let spec = remark313_specialization(n, t1, t2, &fs).unwrap();
                assert!(two_gen.same_code(&spec), "specialization differs at n={n}");
            }
        }

        // cyclic codes and their coordinatewise-twisted images: twisting the
        // generators of a cyclic code yields a constacyclic code and back
        for t1 in triples.iter().take(9) {
            let cyclic = RCode::new(n, Ru::ONE, vec![RPoly::from_z4(&t1.generator(n))]).unwrap();
            let twisted = RCode::new(
                n,
                Ru::LAMBDA,
                cyclic.generators().iter().map(|g| g.twist()).collect(),
            )
            .unwrap();
            assert!(twisted.is_constacyclic());
            let back = RCode::new(
                n,
                Ru::ONE,
                twisted.generators().iter().map(|g| g.twist()).collect(),
            )
            .unwrap();
            assert!(back.same_code(&cyclic));

            // the coordinatewise multiplier map sends cyclic codes to
            // constacyclic codes
            let bar_rows: Vec<Vec<Z4>> = cyclic
                .spanning_vectors()
                .iter()
                .map(|v| ru_to_coords(&phi_bar(v)))
                .collect();
            let bar_code = Z4Code::from_spanning(2 * n, bar_rows);
            assert!(coordinate_code_is_constacyclic(&bar_code, Ru::LAMBDA));
        }
    }
    pass(5, "structural suite at n = 3, 5, 7");
}

#[test]
fn criterion_6_baseline_domination() {
    // best size attained per distance must reach the quoted baselines
    let check = |metric: Metric, wanted: &[(u32, u32)]| {
        let report = run_search(7, metric, 26).unwrap();
        for &(d, min_log2) in wanted {
            let best = report
                .codes
                .iter()
                .filter(|c| {
                    c.weight.as_ref().is_some_and(|w| w.exact && w.min_weight == d)
                })
                .map(|c| c.gray.log2_size())
                .max();
            assert!(
                best.is_some_and(|b| b >= min_log2),
                "{metric}: no code with d={d} of size >= 2^{min_log2} (best {best:?})"
            );
        }
    };
    check(Metric::Lee, &[(8, 10), (6, 12), (4, 19)]);
    check(Metric::Euclidean, &[(16, 9), (8, 13), (4, 19)]);
    pass(6, "length-14 searches dominate the quoted baselines");
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0_0a_c1_e5);
    let mut toggle = false;
    for case in 0..100 {
        let length = rng.gen_range(4..=8);
        let nrows = rng.gen_range(1..=4);
        let gens: Vec<Vec<Z4>> = (0..nrows)
            .map(|_| (0..length).map(|_| Z4::new(rng.gen_range(0..4))).collect())
            .collect();
        let code = Z4Code::from_spanning(length, gens.clone());
        assert!(code.size() <= 1 << 16);

        // independent oracle: all coefficient tuples over the raw generators
        let mut words = BTreeSet::new();
        for combo in 0..4usize.pow(nrows as u32) {
            let mut word = vec![Z4::ZERO; length];
            let mut idx = combo;
            for g in &gens {
                let c = Z4::new((idx % 4) as u8);
                idx /= 4;
                for (slot, &gc) in word.iter_mut().zip(g) {
                    *slot = *slot + c * gc;
                }
            }
            words.insert(word);
        }
        assert_eq!(words.len() as u128, code.size(), "span size, case {case}");

        if !code.is_zero() {
            for metric in [Metric::Lee, Metric::Euclidean] {
                let oracle_min = words
                    .iter()
                    .filter(|w| w.iter().any(|c| !c.is_zero()))
                    .map(|w| metric.weight_vec(w))
                    .min()
                    .unwrap();
                let got = min_weight_enumerate(&code, metric, 26).unwrap();
                assert!(got.exact);
                assert_eq!(got.min_weight, oracle_min, "case {case}");
            }
        }

        // Howell equality agrees with set equality: alternate between a
        // span-preserving rewrite of the same code and an independent code
        toggle = !toggle;
        if toggle {
            let mut mutated = gens.clone();
            for _ in 0..4 {
                let i = rng.gen_range(0..mutated.len());
                let j = rng.gen_range(0..mutated.len());
                let c = Z4::new(rng.gen_range(0..4));
                if i != j {
                    let src = mutated[j].clone();
                    for (slot, &s) in mutated[i].iter_mut().zip(&src) {
                        *slot = *slot + c * s;
                    }
                }
            }
            mutated.push(words.iter().nth(words.len() / 2).unwrap().clone());
            let rewritten = Z4Code::from_spanning(length, mutated);
            assert_eq!(rewritten, code, "span-preserving rewrite changed the canonical form");
        } else {
            let other_gens: Vec<Vec<Z4>> = (0..nrows)
                .map(|_| (0..length).map(|_| Z4::new(rng.gen_range(0..4))).collect())
                .collect();
            let other = Z4Code::from_spanning(length, other_gens.clone());
            let mut other_words = BTreeSet::new();
            for combo in 0..4usize.pow(nrows as u32) {
                let mut word = vec![Z4::ZERO; length];
                let mut idx = combo;
                for g in &other_gens {
                    let c = Z4::new((idx % 4) as u8);
                    idx /= 4;
                    for (slot, &gc) in word.iter_mut().zip(g) {
                        *slot = *slot + c * gc;
                    }
                }
                other_words.insert(word);
            }
            assert_eq!(other == code, other_words == words, "equality oracle, case {case}");
        }
    }
    pass(7, "enumeration and canonical-form oracles agree on 100 random codes");
}

#[test]
fn criterion_8_binary_images_of_asterisked_rows() {
    let budgets = Budgets::default();
    let asterisked: Vec<_> = reference_rows()
        .iter()
        .filter(|r| r.asterisk && r.table == TableId::One)
        .collect();
    assert_eq!(asterisked.len(), 8);
    for row in asterisked {
        let claimed = &row.claimed;
        let code = if row.expected_verdict == "ExactMatch" {
            build_thm312(row.n, &row.g1, &row.g2).unwrap().gray_image()
        } else {
            // the printed generators are defective for this row; use the
            // search code realizing the claimed parameters instead
            let report = run_search(row.n, claimed.metric, budgets.enum_cap_log2).unwrap();
            report
                .codes
                .iter()
                .find(|c| {
                    c.gray.type_of() == (claimed.k1, claimed.k2)
                        && c.weight.as_ref().is_some_and(|w| w.exact && w.min_weight == claimed.d)
                })
                .map(|c| c.gray.clone())
                .expect("claimed class realized")
        };
        assert!(code.log2_size() <= 20, "asterisked row within budget");
        assert!(
            binary_image_linear(&code, 20).unwrap(),
            "binary image not linear for asterisked row n={} g1={} g2={}",
            row.n,
            row.g1_raw,
            row.g2_raw
        );
    }
    pass(8, "binary images of asterisked rows are linear");
}

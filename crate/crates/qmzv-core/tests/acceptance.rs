//! Acceptance gate: eleven numbered criteria, one test per criterion.
//!
//! Every test prints exactly one line of the form
//! `ACCEPTANCE NN: PASS — <summary>` on success (visible with
//! `cargo test -p qmzv-core --test acceptance -- --nocapture`) or panics with
//! `ACCEPTANCE NN: FAIL — <diagnostics>`.
//!
//! The criteria are implemented exactly as stated. Where a catalogued identity
//! is itself incorrect, the corresponding criterion fails honestly and the
//! panic message carries the analysis: the refutation exponent, the corrected
//! form that does verify, and — for representation mismatches — the exact
//! kernel relation accounting for the difference.

use std::collections::BTreeMap;
use std::time::Instant;

use num::{One, Zero};
use qmzv_core::{
    bracket_expand, brackets_to_oz, catalogued_identity, catalogued_okounkov_product_coeffs,
    corollary_sum, d_bracket_representation, d_oz_representation, eisenstein,
    eulerian_reduction_via_formula, indices_up_to_weight, kernel_relations_weight_7,
    lincomb_to_brackets, multiple_divisor_oracle, rat, relation_find, verify_catalogued,
    verify_identity, verify_identity_flagged, zq_expand, zq_to_brackets, Basis, DExpr, Expander,
    IdentityStatus, Index, LinComb, Poly, PolyFamily, QSeries, Rational, StuffleAlgebra,
};

fn pass(criterion: u32, detail: &str) {
    println!("ACCEPTANCE {criterion:02}: PASS — {detail}");
}

fn fail(criterion: u32, detail: String) -> ! {
    panic!("ACCEPTANCE {criterion:02}: FAIL — {detail}");
}

fn ix(entries: &[u32]) -> Index {
    Index::new(entries.to_vec())
}

/// Combination in the given basis from `(numerator, denominator, index)` rows.
fn combo(basis: Basis, terms: &[(i64, i64, &[u32])]) -> LinComb {
    LinComb::from_terms(
        basis,
        terms.iter().map(|&(p, q, e)| (rat(p, q), ix(e))),
    )
}

fn elc(terms: &[(i64, i64, &[u32])]) -> LinComb {
    combo(Basis::Eulerian, terms)
}

fn olc(terms: &[(i64, i64, &[u32])]) -> LinComb {
    combo(Basis::Okounkov, terms)
}

/// Coefficient of `q^e` on both sides of a catalogued identity.
fn sides_at(lhs: &DExpr, rhs: &LinComb, e: usize) -> (Rational, Rational) {
    let left = lhs.expand(e).unwrap();
    let right = DExpr::plain(rhs.clone()).expand(e).unwrap();
    (left.coeff(e).clone(), right.coeff(e).clone())
}

/// Criterion 1: the eight catalogued length-≤2 Okounkov-to-bracket
/// conversions are reproduced symbolically by `zq_to_brackets` and hold as
/// q-series identities at N = 100.
#[test]
fn criterion_01_conversion_suite_symbolic_and_series() {
    let started = Instant::now();
    let okounkov = PolyFamily::okounkov();
    let eulerian = PolyFamily::eulerian();
    let cases: Vec<(&[u32], LinComb)> = vec![
        (&[2], elc(&[(1, 1, &[2])])),
        (&[3], elc(&[(2, 1, &[3])])),
        (&[4], elc(&[(1, 1, &[4]), (-1, 6, &[2])])),
        (&[5], elc(&[(2, 1, &[5]), (-1, 6, &[3])])),
        (&[6], elc(&[(1, 1, &[6]), (-1, 4, &[4]), (1, 30, &[2])])),
        (&[7], elc(&[(2, 1, &[7]), (-1, 3, &[5]), (1, 45, &[3])])),
        (&[2, 2], elc(&[(1, 1, &[2, 2])])),
        (&[2, 4], elc(&[(1, 1, &[2, 4]), (-1, 6, &[2, 2])])),
    ];

    let expander = Expander::new(eulerian.clone());
    let mut problems = Vec::new();
    for (entries, expected) in &cases {
        let idx = ix(entries);
        let got = match zq_to_brackets(&okounkov, &idx) {
            Ok(lc) => lc,
            Err(e) => {
                problems.push(format!("Z{idx:?}: conversion errored: {e}"));
                continue;
            }
        };
        if got != *expected {
            problems.push(format!(
                "Z({idx}): symbolic mismatch: computed {got}, catalogued {expected}"
            ));
            continue;
        }
        let lhs = zq_expand(&okounkov, &idx, 100).unwrap();
        let rhs = expander.lincomb_series(&got, 100).unwrap();
        if let Some(e) = (0..=100).find(|&i| lhs.coeff(i) != rhs.coeff(i)) {
            problems.push(format!(
                "Z({idx}): series divergence at q^{e}: {} vs {}",
                lhs.coeff(e),
                rhs.coeff(e)
            ));
        }
    }
    if !problems.is_empty() {
        fail(1, problems.join("; "));
    }
    pass(
        1,
        &format!(
            "all 8 catalogued conversions match zq_to_brackets symbolically and as series at N=100 ({:.2?})",
            started.elapsed()
        ),
    );
}

/// Criterion 2: the six catalogued weight-graded derivative lines for
/// d Z(2), d Z(3), d Z(4), d Z(2,2), d Z(3,3), d Z(2,2,2) verify
/// coefficientwise at N = 100.
#[test]
fn criterion_02_catalogued_derivative_lines_verify_at_100() {
    let names = ["d-z2", "d-z3", "d-z4", "d-z22", "d-z33", "d-z222"];
    let mut report = Vec::new();
    let mut failures = Vec::new();
    for name in names {
        let entry = catalogued_identity(name).unwrap();
        let record = verify_catalogued(&entry, 100).unwrap();
        match record.status {
            IdentityStatus::Verified => {
                report.push(format!("{}: {}", entry.lhs, record.status_label()))
            }
            IdentityStatus::Refuted { exponent } => {
                let (l, r) = sides_at(&entry.lhs, &entry.catalogued_rhs, exponent);
                let mut line = format!(
                    "{} = {} is {} (lhs coefficient {l}, rhs coefficient {r})",
                    entry.lhs,
                    entry.catalogued_rhs,
                    record.status_label()
                );
                if let Some(corrected) = &entry.corrected_rhs {
                    let fixed = verify_identity(&entry.lhs, corrected, 100).unwrap();
                    line.push_str(&format!(
                        "; the corrected combination {corrected} is {}",
                        fixed.status_label()
                    ));
                }
                failures.push(line);
            }
            IdentityStatus::Conjectural => unreachable!("none of these lines is conjectural"),
        }
    }
    if !failures.is_empty() {
        fail(
            2,
            format!(
                "{} of 6 catalogued derivative lines fail exact comparison at N=100: {}. \
                 The remaining lines verify: {}",
                failures.len(),
                failures.join(" | "),
                report.join("; ")
            ),
        );
    }
    pass(2, "all six catalogued derivative lines verify at N=100");
}

/// Criterion 3: the conjectured expansion of d Z(2,3) verifies at N = 200,
/// and `relation_find` over the pool of Okounkov indices of weight ≤ 7
/// rediscovers exactly that combination.
#[test]
fn criterion_03_conjectured_d_z23_verifies_and_is_rediscovered() {
    let started = Instant::now();
    let entry = catalogued_identity("d-z23").unwrap();
    let okounkov = PolyFamily::okounkov();

    let record = verify_catalogued(&entry, 200).unwrap();
    let target = entry.lhs.expand(200).unwrap();
    let pool = indices_up_to_weight(&okounkov, 7);
    assert_eq!(pool.len(), 20, "weight-≤7 candidate pool should have 20 indices");
    let outcome = relation_find(&okounkov, &target, &pool, 200, false).unwrap();

    let mut problems = Vec::new();
    if let IdentityStatus::Refuted { exponent } = record.status {
        let (l, r) = sides_at(&entry.lhs, &entry.catalogued_rhs, exponent);
        problems.push(format!(
            "the catalogued conjecture {} = {} is refuted at exponent {exponent} \
             (lhs coefficient {l}, rhs coefficient {r})",
            entry.lhs, entry.catalogued_rhs
        ));
    }
    if outcome.combination != entry.catalogued_rhs {
        let mut line = format!(
            "relation_find returns {} (rank {}, kernel dimension {}), not the catalogued \
             combination {}",
            outcome.combination, outcome.rank, outcome.kernel_dim, entry.catalogued_rhs
        );
        // Account for the difference exactly: the corrected combination (the
        // catalogued one without its -Z(2,3) term) equals the solver's answer
        // plus the weight-7 kernel relation, and survives at N = 200.
        if let Some(corrected) = &entry.corrected_rhs {
            let kernel = kernel_relations_weight_7();
            if outcome.combination.add(&kernel[1]).unwrap() == *corrected {
                let surv = verify_identity_flagged(&entry.lhs, corrected, 200, true).unwrap();
                line.push_str(&format!(
                    "; the corrected combination {corrected} (the catalogued line without its \
                     -Z(2,3) term) is {} and equals the solver's answer plus the exact kernel \
                     relation {} = 0, so the two answers describe the same series",
                    surv.status_label(),
                    kernel[1]
                ));
            }
        }
        problems.push(line);
    }
    if !problems.is_empty() {
        fail(3, format!("{} ({:.2?})", problems.join(" | "), started.elapsed()));
    }
    pass(
        3,
        &format!(
            "conjectured d Z(2,3) line survives N=200 and relation_find rediscovers it exactly \
             ({:.2?})",
            started.elapsed()
        ),
    );
}

/// Criterion 4: the alternating Bernoulli sum behind the vanishing of the
/// j = 1 reduction coefficient is zero for all 2 ≤ a, b ≤ 15, both by the
/// closed form and in the solver's reduction output.
#[test]
fn criterion_04_corollary_sum_vanishes_closed_form_and_solver() {
    let algebra = StuffleAlgebra::new(PolyFamily::eulerian());
    let mut problems = Vec::new();
    for a in 2..=15u32 {
        for b in 2..=15u32 {
            let closed = corollary_sum(a, b).unwrap();
            if !closed.is_zero() {
                problems.push(format!("closed form corollary_sum({a},{b}) = {closed} ≠ 0"));
            }
        }
    }
    let mut solver_pairs = 0usize;
    for a in 2..=15u32 {
        for b in a..=15u32 {
            let coeffs = algebra.reduction_coeffs(a, b).unwrap();
            solver_pairs += 1;
            if let Some((_, c)) = coeffs.iter().find(|(j, _)| *j == 1) {
                problems.push(format!(
                    "solver reduction of [{a}]·[{b}] has nonzero j=1 coefficient {c}"
                ));
            }
        }
    }
    if !problems.is_empty() {
        fail(4, problems.join("; "));
    }
    pass(
        4,
        &format!(
            "corollary sum vanishes on the full 196-pair grid and the solver's j=1 coefficient \
             is zero for all {solver_pairs} unordered pairs"
        ),
    );
}

/// Criterion 5: the quasi-shuffle product is a series homomorphism — for
/// every pair of admissible indices of combined weight ≤ 8, in both built-in
/// supported-everywhere families, series(u)·series(v) = series(u ⋆ v) at
/// N = 60.
#[test]
fn criterion_05_stuffle_is_a_series_homomorphism_weight_8() {
    let started = Instant::now();
    let mut counts = Vec::new();
    for family in [PolyFamily::eulerian(), PolyFamily::okounkov()] {
        let algebra = StuffleAlgebra::new(family.clone());
        let expander = Expander::new(family.clone());
        let indices = indices_up_to_weight(&family, 8 - family.min_entry());
        let mut pairs = 0usize;
        for i in 0..indices.len() {
            for j in i..indices.len() {
                let (u, v) = (&indices[i], &indices[j]);
                if u.weight() + v.weight() > 8 {
                    continue;
                }
                pairs += 1;
                let product = algebra.stuffle_product(u, v).unwrap();
                let swapped = algebra.stuffle_product(v, u).unwrap();
                if product != swapped {
                    fail(
                        5,
                        format!(
                            "{} stuffle product is order-dependent for ({u}), ({v})",
                            family.name()
                        ),
                    );
                }
                let lhs = &expander.index_series(u, 60).unwrap()
                    * &expander.index_series(v, 60).unwrap();
                let rhs = expander.lincomb_series(&product, 60).unwrap();
                if let Some(e) = (0..=60).find(|&n| lhs.coeff(n) != rhs.coeff(n)) {
                    fail(
                        5,
                        format!(
                            "{} series homomorphism fails for ({u})·({v}) at q^{e}: \
                             {} vs {} (u ⋆ v = {product})",
                            family.name(),
                            lhs.coeff(e),
                            rhs.coeff(e)
                        ),
                    );
                }
            }
        }
        counts.push(format!("{}: {pairs} unordered pairs", family.name()));
    }
    pass(
        5,
        &format!(
            "series(u)·series(v) = series(u ⋆ v) at N=60 for every admissible pair of combined \
             weight ≤ 8 ({}; order-independence checked on each pair; {:.2?})",
            counts.join(", "),
            started.elapsed()
        ),
    );
}

/// Criterion 6: the closed-form Bernoulli-number reduction coefficients agree
/// with the linear solver for every Eulerian pair with r + s ≤ 20.
#[test]
fn criterion_06_closed_form_matches_solver_up_to_weight_20() {
    let algebra = StuffleAlgebra::new(PolyFamily::eulerian());
    let mut pairs = 0usize;
    for r in 1..=10u32 {
        for s in r..=(20 - r) {
            pairs += 1;
            let formula: BTreeMap<u32, Rational> = eulerian_reduction_via_formula(r, s)
                .unwrap()
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            let solved: BTreeMap<u32, Rational> = algebra
                .reduction_coeffs(r, s)
                .unwrap()
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if formula != solved {
                fail(
                    6,
                    format!(
                        "closed form and solver disagree for [{r}]·[{s}]: formula {formula:?}, \
                         solver {solved:?}"
                    ),
                );
            }
        }
    }
    pass(
        6,
        &format!("closed-form reduction coefficients match the solver for all {pairs} pairs with r+s ≤ 20"),
    );
}

/// Criterion 7: solver-produced Okounkov reduction coefficients satisfy the
/// defining polynomial identity exactly for all r + s ≤ 12, and the
/// catalogued parity recipe demonstrably fails that identity on both-odd
/// pairs while the solver's coefficients pass.
#[test]
fn criterion_07_okounkov_reductions_exact_and_parity_recipe_diverges() {
    let family = PolyFamily::okounkov();
    let algebra = StuffleAlgebra::new(family.clone());

    let recombine = |total: u32, coeffs: &[(u32, Rational)]| -> Poly {
        let mut acc = Poly::zero();
        for (j, c) in coeffs {
            let term = (&Poly::one_minus_t_pow(total - j) * &family.poly(*j).unwrap()).scale(c);
            acc = &acc + &term;
        }
        acc
    };

    let mut solved_pairs = 0usize;
    let mut both_odd_diverging = 0usize;
    let mut both_odd_total = 0usize;
    for r in 2..=6u32 {
        for s in r..=(12 - r) {
            solved_pairs += 1;
            let product = &family.poly(r).unwrap() * &family.poly(s).unwrap();
            let solved = algebra.reduction_coeffs(r, s).unwrap();
            if recombine(r + s, &solved) != product {
                fail(
                    7,
                    format!("solver coefficients for Z({r})·Z({s}) fail the polynomial identity"),
                );
            }
            if r % 2 == 1 && s % 2 == 1 {
                both_odd_total += 1;
                let catalogued = catalogued_okounkov_product_coeffs(r, s);
                if recombine(r + s, &catalogued) == product {
                    fail(
                        7,
                        format!(
                            "expected divergence missing: the catalogued parity recipe \
                             {catalogued:?} for the both-odd pair Z({r})·Z({s}) satisfies the \
                             polynomial identity"
                        ),
                    );
                }
                both_odd_diverging += 1;
            }
        }
    }
    pass(
        7,
        &format!(
            "solver reductions satisfy the defining polynomial identity exactly for all \
             {solved_pairs} pairs with r+s ≤ 12; the catalogued parity recipe fails the same \
             check on all {both_odd_diverging}/{both_odd_total} both-odd pairs"
        ),
    );
}

/// Criterion 8: the nested-sum expansion agrees with the independent
/// multiple-divisor-sum oracle for every bracket index of weight ≤ 6 at
/// N = 40.
#[test]
fn criterion_08_expansion_matches_divisor_sum_oracle() {
    let started = Instant::now();
    let indices = indices_up_to_weight(&PolyFamily::eulerian(), 6);
    assert_eq!(indices.len(), 63, "there are 63 compositions of weight ≤ 6");
    for idx in &indices {
        let nested = bracket_expand(idx, 40).unwrap();
        let oracle = multiple_divisor_oracle(idx, 40);
        if let Some(e) = (0..=40).find(|&n| nested.coeff(n) != oracle.coeff(n)) {
            fail(
                8,
                format!(
                    "[{idx}] diverges from the multiple-divisor oracle at q^{e}: {} vs {}",
                    nested.coeff(e),
                    oracle.coeff(e)
                ),
            );
        }
    }
    pass(
        8,
        &format!(
            "nested-sum expansion matches the multiple-divisor oracle for all 63 indices of \
             weight ≤ 6 at N=40 ({:.2?})",
            started.elapsed()
        ),
    );
}

/// Criterion 9: bracket derivative representations pass series verification
/// for k = 3..8 at N = 80 under the resolved summation range, and
/// `d_oz_representation(k)` for k = 2, 3, 4 reproduces the three catalogued
/// derivative lines exactly.
#[test]
fn criterion_09_derivative_representations() {
    let mut problems = Vec::new();

    let mut reps = 0usize;
    for k in 3..=8u32 {
        for s1 in 1..=(k / 2) {
            match d_bracket_representation(k, s1, k - s1) {
                Ok(_) => reps += 1,
                Err(e) => problems.push(format!(
                    "d_bracket_representation({k},{s1},{}) failed its internal N=80 series \
                     verification: {e}",
                    k - s1
                )),
            }
        }
    }

    let kernel = kernel_relations_weight_7();
    let mut matched = Vec::new();
    for (k, name) in [(2u32, "d-z2"), (3, "d-z3"), (4, "d-z4")] {
        let entry = catalogued_identity(name).unwrap();
        let computed = d_oz_representation(k).unwrap();
        if computed == entry.catalogued_rhs {
            matched.push(format!("k={k} reproduces the catalogued line exactly"));
            continue;
        }
        let mut line = format!(
            "d Z({k}): computed {computed}, catalogued {}",
            entry.catalogued_rhs
        );
        let catalogued_record = verify_catalogued(&entry, 80).unwrap();
        match catalogued_record.status {
            IdentityStatus::Refuted { exponent } => {
                let (l, r) = sides_at(&entry.lhs, &entry.catalogued_rhs, exponent);
                line.push_str(&format!(
                    "; the catalogued line itself is refuted at exponent {exponent} \
                     (lhs coefficient {l}, rhs coefficient {r})"
                ));
                if entry.corrected_rhs.as_ref() == Some(&computed) {
                    line.push_str(
                        "; the computed combination is the catalogued correction and verifies \
                         at N=80",
                    );
                }
            }
            _ => {
                // Both combinations expand to the same series; the mismatch is
                // an exact kernel relation of the expansion map.
                let diff = entry.catalogued_rhs.sub(&computed).unwrap();
                line.push_str(&format!(
                    "; the catalogued line is {}",
                    catalogued_record.status_label()
                ));
                if diff == kernel[0].scale(&rat(3, 2)) {
                    line.push_str(&format!(
                        ", and the difference is exactly 3/2 · ({} = 0), an exact kernel \
                         relation of the weight-≤6 expansion map, so both combinations \
                         represent d Z({k}); exact-combination equality fails only because \
                         representations at this weight are not unique",
                        kernel[0]
                    ));
                } else {
                    line.push_str(&format!(", and the difference is {diff}"));
                }
            }
        }
        problems.push(line);
    }

    if !problems.is_empty() {
        fail(
            9,
            format!(
                "{} (bracket representations: {reps} splittings for k=3..8 verified at N=80; {})",
                problems.join(" | "),
                if matched.is_empty() {
                    "no catalogued line reproduced".to_string()
                } else {
                    matched.join("; ")
                }
            ),
        );
    }
    pass(
        9,
        &format!(
            "{reps} bracket derivative splittings verify at N=80 and d_oz_representation \
             reproduces all three catalogued lines exactly"
        ),
    );
}

/// Criterion 10: the weight-4 Eisenstein series minus its constant term is
/// the weight-4 bracket as a series at N = 100; `brackets_to_oz([4])` is
/// Z(4) + 1/6·Z(2) exactly; the divergence of the catalogued weight-4
/// Eisenstein-to-value line is documented (refuted, with a verifying
/// correction); and the catalogued weight-6 line verifies.
#[test]
fn criterion_10_eisenstein_bridge() {
    let eulerian = PolyFamily::eulerian();
    let mut problems = Vec::new();

    let g4 = eisenstein(4).unwrap();
    let constant = g4.coeff(&Index::empty());
    if constant != rat(1, 1440) {
        problems.push(format!("G4 constant term is {constant}, expected 1/1440"));
    }
    let without_constant = g4
        .sub(&LinComb::constant(Basis::Eulerian, constant))
        .unwrap();
    let lhs = Expander::new(eulerian).lincomb_series(&without_constant, 100).unwrap();
    let rhs = bracket_expand(&ix(&[4]), 100).unwrap();
    if let Some(e) = (0..=100).find(|&n| lhs.coeff(n) != rhs.coeff(n)) {
        problems.push(format!(
            "G4 - 1/1440 diverges from [4] at q^{e}: {} vs {}",
            lhs.coeff(e),
            rhs.coeff(e)
        ));
    }

    let in_oz = brackets_to_oz(&LinComb::term(Basis::Eulerian, Rational::one(), ix(&[4]))).unwrap();
    let expected = olc(&[(1, 1, &[4]), (1, 6, &[2])]);
    if in_oz != expected {
        problems.push(format!(
            "brackets_to_oz([4]) = {in_oz}, expected {expected}"
        ));
    }

    let g4_line = catalogued_identity("g4-in-z").unwrap();
    let record = verify_catalogued(&g4_line, 100).unwrap();
    match (&record.status, &g4_line.corrected_rhs) {
        (IdentityStatus::Refuted { exponent }, Some(corrected)) => {
            let fixed = verify_identity(&g4_line.lhs, corrected, 100).unwrap();
            if !fixed.is_verified() {
                problems.push(format!(
                    "the catalogued correction {corrected} of the weight-4 Eisenstein line \
                     does not verify: {}",
                    fixed.status_label()
                ));
            } else if *exponent != 1 {
                problems.push(format!(
                    "weight-4 Eisenstein line refuted at exponent {exponent}, expected the \
                     documented exponent 1"
                ));
            }
        }
        (status, corrected) => problems.push(format!(
            "weight-4 Eisenstein-to-value discrepancy is not documented as expected: \
             catalogued status {status:?}, correction present: {}",
            corrected.is_some()
        )),
    }

    let g6_line = catalogued_identity("g6-in-z").unwrap();
    let g6_record = verify_catalogued(&g6_line, 100).unwrap();
    if !g6_record.is_verified() {
        problems.push(format!(
            "catalogued weight-6 Eisenstein line fails: {}",
            g6_record.status_label()
        ));
    }

    if !problems.is_empty() {
        fail(10, problems.join("; "));
    }
    pass(
        10,
        "G4 - 1/1440 = [4] at N=100; brackets_to_oz([4]) = Z(4) + 1/6 Z(2); the catalogued \
         weight-4 value-basis line is refuted at exponent 1 with a verifying correction \
         (1/1440 + Z(4) + 1/6 Z(2)) on record; the weight-6 line verifies as catalogued",
    );
}

/// Criterion 11: the property suites hold exactly — series ring axioms,
/// precision monotonicity of expansions, the Leibniz rule for the q-scaled
/// derivative, normalization of the Eulerian numerator polynomials at t = 1,
/// and the weight-≤10 round-trip between the value basis and brackets.
#[test]
fn criterion_11_property_suites_exact() {
    let started = Instant::now();
    let eulerian = PolyFamily::eulerian();
    let okounkov = PolyFamily::okounkov();
    let expander = Expander::new(eulerian.clone());

    // Ring axioms on exact q-series.
    let a = expander.index_series(&ix(&[2]), 40).unwrap();
    let b = expander.index_series(&ix(&[1, 1]), 40).unwrap();
    let c = expander.index_series(&ix(&[3, 1]), 40).unwrap();
    let one = QSeries::one(40);
    let zero = QSeries::zero(40);
    let axioms = [
        (&(&(&a + &b) + &c) == &(&a + &(&b + &c)), "addition associativity"),
        (&(&a + &b) == &(&b + &a), "addition commutativity"),
        (&(&(&a * &b) * &c) == &(&a * &(&b * &c)), "multiplication associativity"),
        (&(&a * &b) == &(&b * &a), "multiplication commutativity"),
        (
            &(&a * &(&b + &c)) == &(&(&a * &b) + &(&a * &c)),
            "distributivity",
        ),
        (&(&a * &one) == &a, "multiplicative identity"),
        (&(&a + &zero) == &a, "additive identity"),
        ((&a - &a).is_zero(), "additive inverse"),
    ];
    for (holds, name) in axioms {
        if !holds {
            fail(11, format!("series ring axiom violated: {name}"));
        }
    }
    // Associativity of the quasi-shuffle product itself.
    let algebra = StuffleAlgebra::new(eulerian.clone());
    let uv = algebra.stuffle_product(&ix(&[1]), &ix(&[2])).unwrap();
    let vw = algebra.stuffle_product(&ix(&[2]), &ix(&[1, 1])).unwrap();
    let left = algebra
        .lincomb_mul(&uv, &LinComb::term(Basis::Eulerian, Rational::one(), ix(&[1, 1])))
        .unwrap();
    let right = algebra
        .lincomb_mul(&LinComb::term(Basis::Eulerian, Rational::one(), ix(&[1])), &vw)
        .unwrap();
    if left != right {
        fail(11, "quasi-shuffle associativity violated for [1], [2], [1,1]".to_string());
    }

    // Precision monotonicity: expanding at high precision and truncating is
    // expanding at low precision.
    let monotone_cases: [(&PolyFamily, &[u32]); 4] = [
        (&eulerian, &[2]),
        (&eulerian, &[2, 1]),
        (&okounkov, &[2, 3]),
        (&okounkov, &[4]),
    ];
    for (family, entries) in monotone_cases {
        let idx = ix(entries);
        let long = zq_expand(family, &idx, 80).unwrap();
        let short = zq_expand(family, &idx, 35).unwrap();
        if long.truncate(35) != short {
            fail(
                11,
                format!("precision monotonicity violated for {} ({idx})", family.name()),
            );
        }
    }

    // Leibniz rule for the q-scaled derivative on all products of bracket
    // expansions of weight ≤ 4.
    let leibniz_pool = indices_up_to_weight(&eulerian, 4);
    let mut leibniz_pairs = 0usize;
    for i in 0..leibniz_pool.len() {
        for j in i..leibniz_pool.len() {
            leibniz_pairs += 1;
            let f = expander.index_series(&leibniz_pool[i], 50).unwrap();
            let g = expander.index_series(&leibniz_pool[j], 50).unwrap();
            let derived_product = (&f * &g).q_derive();
            let product_rule = &(&f.q_derive() * &g) + &(&f * &g.q_derive());
            if derived_product != product_rule {
                fail(
                    11,
                    format!(
                        "Leibniz rule violated for [{}]·[{}]",
                        leibniz_pool[i], leibniz_pool[j]
                    ),
                );
            }
        }
    }

    // Normalization Q_s(1) = 1 for the Eulerian family, s ≤ 30.
    for s in 1..=30u32 {
        let value = eulerian.poly(s).unwrap().eval(&Rational::one());
        if !value.is_one() {
            fail(11, format!("Eulerian numerator polynomial Q_{s}(1) = {value} ≠ 1"));
        }
    }

    // Round-trip between the value basis and brackets for every index of
    // weight ≤ 10 with entries ≥ 2, in both directions.
    let round_trip_pool = indices_up_to_weight(&okounkov, 10);
    assert_eq!(round_trip_pool.len(), 88, "88 compositions of weight ≤ 10 with parts ≥ 2");
    for idx in &round_trip_pool {
        let unit_oz = LinComb::term(Basis::Okounkov, Rational::one(), idx.clone());
        let through = brackets_to_oz(&zq_to_brackets(&okounkov, idx).unwrap()).unwrap();
        if through != unit_oz {
            fail(
                11,
                format!("value-basis round trip failed for Z({idx}): got {through}"),
            );
        }
        let unit_brackets = LinComb::term(Basis::Eulerian, Rational::one(), idx.clone());
        let back = lincomb_to_brackets(&okounkov, &brackets_to_oz(&unit_brackets).unwrap()).unwrap();
        if back != unit_brackets {
            fail(
                11,
                format!("bracket round trip failed for [{idx}]: got {back}"),
            );
        }
    }

    // Integer-valuedness of the catalogued Eisenstein normalizations: the
    // constant term is the only non-bracket part.
    for k in [2u32, 4, 6] {
        let g = eisenstein(k).unwrap();
        let nonconstant: Vec<_> = g.indices().filter(|i| !i.is_empty()).collect();
        if nonconstant.len() != 1 || nonconstant[0] != &ix(&[k]) {
            fail(11, format!("Eisenstein combination for weight {k} has unexpected support"));
        }
    }

    pass(
        11,
        &format!(
            "ring axioms, quasi-shuffle associativity, precision monotonicity, the Leibniz rule \
             ({leibniz_pairs} pairs at N=50), Q_s(1)=1 for s ≤ 30 and the weight-≤10 round trip \
             (88 indices, both directions) all hold exactly ({:.2?})",
            started.elapsed()
        ),
    );
}

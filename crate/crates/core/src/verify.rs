//! The full verification battery: every structural theorem, example and
//! fixture check, run over the default corpus. Shared by the CLI
//! `verify-paper` command and the acceptance suite.

use crate::brace::{find_brace_isomorphism, LambdaFlavor, SkewBrace};
use crate::caps::Caps;
use crate::characters;
use crate::corpus;
use crate::cyclotomic::{CycMatrix, CycRing};
use crate::error::{CheckError, RepError};
use crate::group::FiniteGroup;
use crate::isoclinism;
use crate::lambda::{self, LambdaGroup};
use crate::report::Report;
use crate::reps;
use serde::Serialize;
use serde_json::json;

/// A named report section.
#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Report,
}

/// The full verification output.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub sections: Vec<Section>,
    pub all_hold: bool,
}

impl Summary {
    fn push(&mut self, name: impl Into<String>, checks: Report) {
        self.all_hold &= checks.all_hold();
        self.sections.push(Section {
            name: name.into(),
            checks,
        });
    }
}

/// Every structural check on a single brace.
pub fn verify_brace(brace: &SkewBrace, caps: &Caps) -> Result<Report, CheckError> {
    let mut report = Report::new();
    let n = brace.order();
    report.note("order", json!(n));

    // Lambda maps of both flavors; construction runs the automorphism,
    // homomorphism and flavor cross-checks.
    let lam = brace.lambda(LambdaFlavor::Standard);
    let _ = brace.lambda(LambdaFlavor::Opposite);
    let mut product_identity = true;
    'product: for a in 0..n {
        for b in 0..n {
            if brace.circ().mul(a, b) != brace.add().mul(a, lam.apply(a, b)) {
                product_identity = false;
                break 'product;
            }
        }
    }
    report.require("circle_product_via_lambda", product_identity, || {
        json!(null)
    })?;

    // Commutator-ideal facts.
    let a_prime = brace.commutator_ideal();
    let circ_prime = brace.circ().derived_subgroup();
    report.require(
        "circle_derived_in_commutator_ideal",
        circ_prime.iter().all(|&x| a_prime.contains(x)),
        || json!({"circ_derived": circ_prime.members(), "ideal": a_prime.members()}),
    )?;
    let opposite = brace.opposite();
    report.require(
        "commutator_ideal_equals_opposite",
        a_prime == opposite.commutator_ideal(),
        || json!(a_prime.members()),
    )?;
    let ann = brace.annihilator();
    report.require("annihilator_is_ideal", brace.is_ideal(&ann), || {
        json!(ann.members())
    })?;
    report.require("commutator_is_ideal", brace.is_ideal(&a_prime), || {
        json!(a_prime.members())
    })?;
    let ann_sub = brace.sub_brace(&ann)?;
    let ann_sub_op = opposite.sub_brace(&opposite.annihilator())?;
    report.require(
        "annihilators_isomorphic_as_braces",
        find_brace_isomorphism(&ann_sub, &ann_sub_op).is_some(),
        || json!({"ann": ann.members()}),
    )?;

    // Lambda-group battery.
    let lg = LambdaGroup::build(brace, LambdaFlavor::Opposite, caps)?;
    let lg_std = LambdaGroup::build(brace, LambdaFlavor::Standard, caps)?;
    let psi = lambda::psi_pair_isomorphism(&lg, &lg_std)?;
    report.push(
        "psi_pair_isomorphism",
        true,
        Some(json!({"order": psi.image_array().len()})),
    );

    let (center, center_report) = lambda::center_structure_check(&lg)?;
    report.merge(center_report);
    let (_, commutator_report) = lambda::commutator_structure_check(&lg)?;
    report.merge(commutator_report);
    let (_, bar_report) = lambda::annihilator_quotient_check(&lg, caps)?;
    report.merge(bar_report);
    let (action, psi_report) = lambda::psi_action_check(&lg, &center)?;
    report.merge(psi_report);
    report.merge(lambda::conjugacy_structure_checks(&lg, &action)?);
    if n <= 64 {
        report.merge(lambda::pair_normality_check(&lg)?);
    }
    if n <= 16 {
        report.merge(characters::regular_decomposition_check(&lg)?);
    }

    // Character-degree invariants.
    if lg.group().order() <= caps.char_order {
        let table = characters::character_degrees(lg.group(), caps)?;
        report.note(
            "lambda_degrees",
            json!(table
                .multiset
                .pairs()
                .iter()
                .map(|&(d, m)| vec![d as usize, m])
                .collect::<Vec<_>>()),
        );
        report.require(
            "linear_count_matches_abelianization",
            table.multiset.count_of(1) == characters::linear_character_count(lg.group()),
            || json!(table.multiset.count_of(1)),
        )?;
        report.require(
            "one_dim_count_product_formula",
            reps::one_dim_rep_count(brace) == table.multiset.count_of(1),
            || json!(reps::one_dim_rep_count(brace)),
        )?;
        let circ_degrees = characters::character_degrees(brace.circ(), caps)?
            .multiset
            .distinct();
        report.require(
            "circle_degrees_within_brace_degrees",
            circ_degrees.is_subset(&table.multiset.distinct()),
            || json!(circ_degrees.iter().copied().collect::<Vec<_>>()),
        )?;
        example_410_conditional(brace, &lg, &center, &table, &mut report)?;
    }

    // Trivial braces: the lambda group is the direct square.
    if brace.add() == brace.circ() && n <= 12 {
        let square = FiniteGroup::direct_product(brace.add(), brace.add());
        report.require(
            "trivial_brace_lambda_is_direct_square",
            lg.group().find_isomorphism(&square).is_some(),
            || json!(null),
        )?;
    }
    Ok(report)
}

/// The conditional order-p^3 analysis: when the center of the lambda
/// group has order at least p^3 the degree set collapses to `{1, p}`
/// with the degree-p count determined by the derived order.
fn example_410_conditional(
    brace: &SkewBrace,
    lg: &LambdaGroup,
    center: &crate::group::Subset,
    table: &characters::DegreeTable,
    report: &mut Report,
) -> Result<(), CheckError> {
    let n = brace.order();
    let Some(p) = odd_prime_cube_root(n) else {
        return Ok(());
    };
    if center.len() < n {
        report.note("order_p3_center_hypothesis", json!("not-applicable"));
        return Ok(());
    }
    let derived_order = lg.group().derived_subgroup().len();
    let p4 = p * p * p * p;
    let expected_nonlinear = match derived_order {
        1 => 0,
        d if d == p => p4 - p4 / p,
        d if d == p * p => p4 - p * p,
        d if d == p * p * p => p4 - p,
        _ => {
            report.note(
                "order_p3_center_hypothesis",
                json!("unexpected-derived-order"),
            );
            return Ok(());
        }
    };
    let distinct = table.multiset.distinct();
    let within = distinct.iter().all(|&d| d == 1 || d == p as u64);
    report.require("order_p3_degree_set", within, || {
        json!(distinct.iter().copied().collect::<Vec<_>>())
    })?;
    report.require(
        "order_p3_degree_p_count",
        table.multiset.count_of(p as u64) == expected_nonlinear,
        || json!(table.multiset.count_of(p as u64)),
    )?;
    Ok(())
}

fn odd_prime_cube_root(n: usize) -> Option<usize> {
    for p in (3..=16).step_by(2) {
        if p * p * p == n {
            let prime = (2..p).all(|d| p % d != 0);
            return prime.then_some(p);
        }
    }
    None
}

/// Hall criterion fixtures plus the isoclinic brace pairs and the
/// converse-failure witness.
pub fn isoclinism_fixture_checks(caps: &Caps) -> Result<Report, CheckError> {
    let mut report = Report::new();

    let d4 = corpus::dihedral4();
    report.merge(isoclinism::hall_criterion_check(&d4, &d4.center(), caps)?);
    let q8 = corpus::quaternion8();
    report.merge(isoclinism::hall_criterion_check(&q8, &q8.center(), caps)?);
    let s3z2 = corpus::s3_times_z2();
    report.merge(isoclinism::hall_criterion_check(
        &s3z2,
        &crate::group::Subset::new(vec![0, 1]),
        caps,
    )?);
    report.merge(isoclinism::hall_criterion_check(
        &s3z2,
        &crate::group::Subset::trivial(),
        caps,
    )?);
    report.require(
        "d4_q8_isoclinic",
        isoclinism::group_isoclinic(&d4, &q8, caps)?.is_some(),
        || json!(null),
    )?;

    for (left, right) in corpus::isoclinic_pairs() {
        let cert = isoclinism::brace_isoclinic(&left.brace, &right.brace, caps)?;
        report.require(
            format!("brace_isoclinic_{}_{}", left.name, right.name),
            cert.is_some(),
            || json!(null),
        )?;
        // Isoclinic braces have isoclinic additive and circle groups.
        report.require(
            format!("additive_groups_isoclinic_{}_{}", left.name, right.name),
            isoclinism::group_isoclinic(left.brace.add(), right.brace.add(), caps)?.is_some(),
            || json!(null),
        )?;
        report.require(
            format!("circle_groups_isoclinic_{}_{}", left.name, right.name),
            isoclinism::group_isoclinic(left.brace.circ(), right.brace.circ(), caps)?.is_some(),
            || json!(null),
        )?;
        if left.brace.order() == right.brace.order() {
            report.require(
                format!("one_dim_counts_agree_{}_{}", left.name, right.name),
                reps::one_dim_rep_count(&left.brace) == reps::one_dim_rep_count(&right.brace),
                || json!(null),
            )?;
        }
        report.merge(isoclinism::isocom_check(&left.brace, &right.brace, caps)?);
        report.merge(isoclinism::isoclinicsdp_check(
            &left.brace,
            &right.brace,
            caps,
        )?);
    }

    report.merge(isoclinism::opposite_pair_check(&corpus::sym3(), caps)?);
    Ok(report)
}

/// The worked prime-power examples.
pub fn example_suite_checks(caps: &Caps) -> Result<Report, CheckError> {
    let mut report = Report::new();
    report.merge(characters::example_suite_p2(2, caps)?);
    report.merge(characters::example_suite_p2(3, caps)?);
    report.merge(characters::example_suite_bicyclic(3, 2, 1, caps)?);
    report.merge(characters::example_suite_bicyclic(3, 3, 1, caps)?);
    Ok(report)
}

/// Representation-correspondence fixtures: round trips both ways, the
/// rejected relation witness, and irreducibility checks.
pub fn rep_fixture_checks(caps: &Caps) -> Result<Report, CheckError> {
    let mut report = Report::new();
    let brace = crate::brace::make_radical_brace(2, 2, 1, caps)?;
    let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, caps)?;

    // Bi-regular representation round trip.
    let ring = CycRing::new(1);
    let beta: Vec<CycMatrix> = (0..4)
        .map(|a| {
            let perm: Vec<usize> = (0..4).map(|x| brace.add().mul(a, x)).collect();
            CycMatrix::permutation(&perm, &ring)
        })
        .collect();
    let rho: Vec<CycMatrix> = (0..4)
        .map(|a| {
            let perm: Vec<usize> = (0..4).map(|x| brace.circ().mul(a, x)).collect();
            CycMatrix::permutation(&perm, &ring)
        })
        .collect();
    let map_err = |e: RepError| {
        CheckError::Property(crate::error::PropertyViolation::new(
            "rep_fixture",
            e.to_string(),
        ))
    };
    let biregular = reps::BraceRep::validated(&brace, 1, beta, rho).map_err(map_err)?;
    let phi = reps::to_group_rep(&biregular, &lg).map_err(map_err)?;
    let back = reps::from_group_rep(&lg, &phi).map_err(map_err)?;
    report.require("biregular_round_trip", back == biregular, || json!(null))?;

    // Regular representation of the lambda group itself.
    let order = lg.group().order();
    let mats: Vec<CycMatrix> = (0..order)
        .map(|g| {
            let perm: Vec<usize> = (0..order).map(|x| lg.group().mul(g, x)).collect();
            CycMatrix::permutation(&perm, &ring)
        })
        .collect();
    let reg = reps::GroupRepFamily::validated(lg.group(), 1, mats).map_err(map_err)?;
    let reg_rep = reps::from_group_rep(&lg, &reg).map_err(map_err)?;
    let round = reps::to_group_rep(&reg_rep, &lg).map_err(map_err)?;
    report.require("regular_rep_round_trip", round == reg, || json!(null))?;

    // The rejected one-dimensional triple: witness must be (1, 1).
    let ring4 = CycRing::new(4);
    let bad_beta: Vec<CycMatrix> = (0..4)
        .map(|b| CycMatrix::from_entries(1, vec![ring4.zeta_pow(b)]).unwrap())
        .collect();
    let bad_rho: Vec<CycMatrix> = [0usize, 2, 0, 2]
        .iter()
        .map(|&e| CycMatrix::from_entries(1, vec![ring4.zeta_pow(e)]).unwrap())
        .collect();
    let rejection = reps::BraceRep::validated(&brace, 4, bad_beta, bad_rho);
    report.require(
        "relation_negative_witness",
        matches!(rejection, Err(RepError::RelationViolation { a: 1, b: 1 })),
        || json!(format!("{rejection:?}")),
    )?;

    // Induced degree-2 irreducible.
    let members: Vec<usize> = (0..4)
        .flat_map(|a| [0usize, 2].map(|b| lg.idx(a, b)))
        .collect();
    let subgroup = crate::group::Subset::new(members);
    let mut chi = std::collections::BTreeMap::new();
    for &g in subgroup.iter() {
        let (a, b) = lg.parts(g);
        chi.insert(g, (a + b) % 4);
    }
    let (_, induced) = reps::induced_rep(lg.group(), &subgroup, &chi, 4);
    let phi2 = reps::GroupRepFamily::validated(lg.group(), 4, induced).map_err(map_err)?;
    let rep2 = reps::from_group_rep(&lg, &phi2).map_err(map_err)?;
    report.require(
        "induced_degree_two_irreducible",
        reps::is_irreducible(&rep2, &lg, caps).map_err(map_err)?,
        || json!(null),
    )?;

    // All linear circle characters extend with trivial beta and stay
    // irreducible.
    let (m, chars) = characters::linear_characters(brace.circ());
    let ring_m = CycRing::new(m);
    for chi in &chars {
        let rho: Vec<CycMatrix> = chi
            .iter()
            .map(|&e| CycMatrix::from_entries(1, vec![ring_m.zeta_pow(e)]).unwrap())
            .collect();
        let beta0 = vec![CycMatrix::identity(1, &ring_m); brace.order()];
        let rep = reps::BraceRep::validated(&brace, m, beta0, rho).map_err(map_err)?;
        if !reps::is_irreducible(&rep, &lg, caps).map_err(map_err)? {
            report.require("linear_circle_characters_extend", false, || json!(chi))?;
        }
    }
    report.push(
        "linear_circle_characters_extend",
        true,
        Some(json!(chars.len())),
    );
    Ok(report)
}

/// Runs the whole battery over the default corpus (optionally filtered
/// by a name substring) plus the global fixture sections.
pub fn verify_paper(selector: Option<&str>, caps: &Caps) -> Result<Summary, CheckError> {
    let mut summary = Summary {
        sections: Vec::new(),
        all_hold: true,
    };
    let matches = |name: &str| selector.is_none_or(|s| name.contains(s));
    for entry in corpus::default_corpus() {
        if !matches(&entry.name) {
            continue;
        }
        let report = verify_brace(&entry.brace, caps)?;
        summary.push(entry.name, report);
    }
    if selector.is_none() {
        summary.push("examples_prime_power", example_suite_checks(caps)?);
        summary.push("isoclinism_fixtures", isoclinism_fixture_checks(caps)?);
        summary.push("representation_fixtures", rep_fixture_checks(caps)?);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_small_corpus_entries() {
        let caps = Caps::default();
        for name in ["trivial_z2", "trivial_k4", "radical_2_2_1"] {
            let entry = corpus::default_corpus()
                .into_iter()
                .find(|e| e.name == name)
                .unwrap();
            let report = verify_brace(&entry.brace, &caps).unwrap();
            assert!(report.all_hold(), "{name}");
        }
    }

    #[test]
    fn selector_filters_entries() {
        let caps = Caps::default();
        let summary = verify_paper(Some("radical_2_2_1"), &caps).unwrap();
        assert_eq!(summary.sections.len(), 1);
        assert!(summary.all_hold);
    }
}

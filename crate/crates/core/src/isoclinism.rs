//! Isoclinism deciders with certificates, for groups and skew braces.
//!
//! Both deciders backtrack only over the quotient-side isomorphism; the
//! derived-side map is forced on commutator (and, for braces, lambda
//! twist) values by the commuting diagrams and then verified, which cuts
//! the search space to the quotient side.

use crate::brace::{
    find_brace_isomorphism, for_each_brace_isomorphism, make_trivial_brace, BraceHom, LambdaFlavor,
    SkewBrace,
};
use crate::caps::Caps;
use crate::error::{CheckError, PropertyViolation};
use crate::group::{FiniteGroup, GroupHom, Subset};
use crate::lambda::LambdaGroup;
use crate::report::Report;
use serde::Serialize;
use serde_json::json;

/// A group isoclinism certificate: compatible isomorphisms of the
/// central quotients and of the derived subgroups (both in canonical
/// re-indexed coordinates).
#[derive(Debug, Clone, Serialize)]
pub struct GroupIsoclinism {
    pub central_quotient_order: usize,
    pub derived_order: usize,
    pub xi1: GroupHom,
    pub xi2: GroupHom,
}

/// Searches for a group isoclinism certificate. The quotient-side
/// isomorphism is enumerated in ascending backtracking order; the
/// derived-side map is forced on commutators and verified, so the first
/// certificate found is deterministic.
pub fn group_isoclinic(
    g: &FiniteGroup,
    h: &FiniteGroup,
    caps: &Caps,
) -> Result<Option<GroupIsoclinism>, CheckError> {
    let g_center = g.center();
    let h_center = h.center();
    let (gq, g_pi) = g.quotient(&g_center)?;
    let (hq, h_pi) = h.quotient(&h_center)?;
    let g_derived = g.derived_subgroup();
    let h_derived = h.derived_subgroup();
    if gq.order() != hq.order() || g_derived.len() != h_derived.len() {
        return Ok(None);
    }
    if gq.order() > caps.isoclinism_quotient {
        return Err(CheckError::SizeCap {
            required: gq.order(),
            cap: caps.isoclinism_quotient,
        });
    }
    if g_derived.len() > caps.isoclinism_derived {
        return Err(CheckError::SizeCap {
            required: g_derived.len(),
            cap: caps.isoclinism_derived,
        });
    }

    let g_lifts = lifts_of(&g_pi, g.order(), gq.order());
    let h_lifts = lifts_of(&h_pi, h.order(), hq.order());
    let (gd_group, gd_members) = g.subgroup_as_group(&g_derived)?;
    let (hd_group, hd_members) = h.subgroup_as_group(&h_derived)?;
    let mut hd_index = vec![usize::MAX; h.order()];
    for (i, &m) in hd_members.iter().enumerate() {
        hd_index[m] = i;
    }

    let mut certificate = None;
    gq.for_each_isomorphism(&hq, |xi1| {
        let forced = force_commutator_map(g, h, gq.order(), &g_lifts, &h_lifts, xi1);
        let Some(map) = forced else { return true };
        // Re-index onto the derived subgroup coordinates and validate.
        let mut image = Vec::with_capacity(gd_members.len());
        for &member in &gd_members {
            let target = map[member];
            if target == usize::MAX || hd_index[target] == usize::MAX {
                return true;
            }
            image.push(hd_index[target]);
        }
        let Ok(xi2) = GroupHom::new(&gd_group, &hd_group, image) else {
            return true;
        };
        if !xi2.is_bijective(&hd_group) {
            return true;
        }
        certificate = Some(GroupIsoclinism {
            central_quotient_order: gq.order(),
            derived_order: gd_group.order(),
            xi1: xi1.clone(),
            xi2,
        });
        false
    });
    Ok(certificate)
}

/// Canonical lifts: minimal preimage of each quotient element.
fn lifts_of(projection: &GroupHom, n: usize, q: usize) -> Vec<usize> {
    let mut lifts = vec![usize::MAX; q];
    for g in 0..n {
        let class = projection.apply(g);
        if lifts[class] == usize::MAX {
            lifts[class] = g;
        }
    }
    lifts
}

/// Forces a map on all commutator values through the diagram, then
/// closes it under multiplication. `None` on any inconsistency.
fn force_commutator_map(
    g: &FiniteGroup,
    h: &FiniteGroup,
    q: usize,
    g_lifts: &[usize],
    h_lifts: &[usize],
    xi1: &GroupHom,
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    let mut elems: Vec<usize> = Vec::new();
    let assign = |map: &mut Vec<usize>,
                  used: &mut Vec<bool>,
                  elems: &mut Vec<usize>,
                  from: usize,
                  to: usize| {
        if map[from] == usize::MAX {
            if used[to] {
                return false;
            }
            map[from] = to;
            used[to] = true;
            elems.push(from);
            true
        } else {
            map[from] == to
        }
    };
    if !assign(&mut map, &mut used, &mut elems, 0, 0) {
        return None;
    }
    for qa in 0..q {
        for qb in 0..q {
            let w = g.commutator(g_lifts[qa], g_lifts[qb]);
            let t = h.commutator(h_lifts[xi1.apply(qa)], h_lifts[xi1.apply(qb)]);
            if !assign(&mut map, &mut used, &mut elems, w, t) {
                return None;
            }
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        let mut j = 0;
        while j < elems.len() {
            let y = elems[j];
            let p = g.mul(x, y);
            let t = h.mul(map[x], map[y]);
            if !assign(&mut map, &mut used, &mut elems, p, t) {
                return None;
            }
            j += 1;
        }
        i += 1;
    }
    Some(map)
}

/// A group is isoclinic to its quotient by a normal subgroup exactly
/// when the subgroup meets the derived subgroup trivially. Checks both
/// routes and their equivalence.
pub fn hall_criterion_check(
    g: &FiniteGroup,
    normal: &Subset,
    caps: &Caps,
) -> Result<Report, CheckError> {
    let mut report = Report::new();
    let (quotient, _) = g.quotient(normal)?;
    let derived = g.derived_subgroup();
    let meets_trivially = normal.intersect(&derived).is_trivial();
    let isoclinic = group_isoclinic(g, &quotient, caps)?.is_some();
    report.note(
        "hall_data",
        json!({
            "normal_order": normal.len(),
            "intersection_trivial": meets_trivially,
            "isoclinic_to_quotient": isoclinic,
        }),
    );
    report.require(
        "hall_criterion",
        isoclinic == meets_trivially,
        || json!({"isoclinic": isoclinic, "intersection_trivial": meets_trivially}),
    )?;
    Ok(report)
}

/// A brace isoclinism certificate: compatible brace isomorphisms of the
/// annihilator quotients and of the commutator sub-braces.
#[derive(Debug, Clone, Serialize)]
pub struct BraceIsoclinism {
    pub quotient_order: usize,
    pub derived_order: usize,
    pub xi1: BraceHom,
    pub xi2: BraceHom,
}

/// Searches for a brace isoclinism certificate. `xi1` runs over brace
/// isomorphisms of the annihilator quotients; `xi2` is forced on the
/// commutator and lambda-twist values by the two squares and then
/// verified as a brace isomorphism of the commutator ideals.
pub fn brace_isoclinic(
    a: &SkewBrace,
    b: &SkewBrace,
    caps: &Caps,
) -> Result<Option<BraceIsoclinism>, CheckError> {
    let ann_a = a.annihilator();
    let ann_b = b.annihilator();
    let (qa, _, reps_a) = a.quotient_brace_with_maps(&ann_a)?;
    let (qb, _, reps_b) = b.quotient_brace_with_maps(&ann_b)?;
    let prime_a = a.commutator_ideal();
    let prime_b = b.commutator_ideal();
    if qa.order() != qb.order() || prime_a.len() != prime_b.len() {
        return Ok(None);
    }
    if qa.order() > caps.isoclinism_quotient {
        return Err(CheckError::SizeCap {
            required: qa.order(),
            cap: caps.isoclinism_quotient,
        });
    }
    if prime_a.len() > caps.isoclinism_derived {
        return Err(CheckError::SizeCap {
            required: prime_a.len(),
            cap: caps.isoclinism_derived,
        });
    }

    let sub_a = a.sub_brace(&prime_a)?;
    let sub_b = b.sub_brace(&prime_b)?;
    let members_a = prime_a.members().to_vec();
    let mut b_index = vec![usize::MAX; b.order()];
    for (i, &m) in prime_b.members().iter().enumerate() {
        b_index[m] = i;
    }

    let mut certificate = None;
    for_each_brace_isomorphism(&qa, &qb, |xi1| {
        let forced = force_brace_derived_map(a, b, qa.order(), &reps_a, &reps_b, xi1);
        let Some(map) = forced else { return true };
        let mut image = Vec::with_capacity(members_a.len());
        for &member in &members_a {
            let target = map[member];
            if target == usize::MAX || b_index[target] == usize::MAX {
                return true;
            }
            image.push(b_index[target]);
        }
        let Ok(xi2) = BraceHom::new(&sub_a, &sub_b, image) else {
            return true;
        };
        if !xi2.is_bijective(&sub_b) {
            return true;
        }
        certificate = Some(BraceIsoclinism {
            quotient_order: qa.order(),
            derived_order: sub_a.order(),
            xi1: xi1.clone(),
            xi2,
        });
        false
    });
    Ok(certificate)
}

/// Forces the derived-side map on `theta(a, b) = a b a^-1 b^-1` and
/// `theta*(a, b) = lam_a(b) b^-1` values, then closes under the additive
/// product.
fn force_brace_derived_map(
    a: &SkewBrace,
    b: &SkewBrace,
    q: usize,
    reps_a: &[usize],
    reps_b: &[usize],
    xi1: &BraceHom,
) -> Option<Vec<usize>> {
    let add_a = a.add();
    let add_b = b.add();
    let mut map = vec![usize::MAX; a.order()];
    let mut used = vec![false; b.order()];
    let mut elems: Vec<usize> = Vec::new();
    let assign = |map: &mut Vec<usize>,
                  used: &mut Vec<bool>,
                  elems: &mut Vec<usize>,
                  from: usize,
                  to: usize| {
        if map[from] == usize::MAX {
            if used[to] {
                return false;
            }
            map[from] = to;
            used[to] = true;
            elems.push(from);
            true
        } else {
            map[from] == to
        }
    };
    if !assign(&mut map, &mut used, &mut elems, 0, 0) {
        return None;
    }
    for ca in 0..q {
        for cb in 0..q {
            let x = reps_a[ca];
            let y = reps_a[cb];
            let xb = reps_b[xi1.apply(ca)];
            let yb = reps_b[xi1.apply(cb)];
            let theta = add_a.commutator(x, y);
            let theta_target = add_b.commutator(xb, yb);
            if !assign(&mut map, &mut used, &mut elems, theta, theta_target) {
                return None;
            }
            let twist = add_a.mul(a.lambda_of(x, y), add_a.inv(y));
            let twist_target = add_b.mul(b.lambda_of(xb, yb), add_b.inv(yb));
            if !assign(&mut map, &mut used, &mut elems, twist, twist_target) {
                return None;
            }
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        let mut j = 0;
        while j < elems.len() {
            let y = elems[j];
            let p = add_a.mul(x, y);
            let t = add_b.mul(map[x], map[y]);
            if !assign(&mut map, &mut used, &mut elems, p, t) {
                return None;
            }
            j += 1;
        }
        i += 1;
    }
    Some(map)
}

/// Commutators of the lambda groups of isoclinic braces are isomorphic;
/// verified generically and through the explicit pairing induced by
/// `xi2`. Reports not-applicable when the braces are not isoclinic.
pub fn isocom_check(a: &SkewBrace, b: &SkewBrace, caps: &Caps) -> Result<Report, CheckError> {
    let mut report = Report::new();
    let Some(cert) = brace_isoclinic(a, b, caps)? else {
        report.note("isocom", json!("not-applicable"));
        return Ok(report);
    };
    let lg_a = LambdaGroup::build(a, LambdaFlavor::Opposite, caps)?;
    let lg_b = LambdaGroup::build(b, LambdaFlavor::Opposite, caps)?;
    let derived_a = lg_a.group().derived_subgroup();
    let derived_b = lg_b.group().derived_subgroup();
    let (da_group, da_members) = lg_a.group().subgroup_as_group(&derived_a)?;
    let (db_group, db_members) = lg_b.group().subgroup_as_group(&derived_b)?;
    report.require(
        "lambda_derived_isomorphic",
        da_group.find_isomorphism(&db_group).is_some(),
        || json!({"lhs": da_group.order(), "rhs": db_group.order()}),
    )?;

    // Explicit pairing (x, y) -> (xi2 x, xi2 y) on the derived pairs.
    let prime_a = a.commutator_ideal();
    let prime_b = b.commutator_ideal();
    let mut xi2_old = vec![usize::MAX; a.order()];
    for (i, &m) in prime_a.members().iter().enumerate() {
        xi2_old[m] = prime_b.members()[cert.xi2.apply(i)];
    }
    let mut db_index = vec![usize::MAX; lg_b.group().order()];
    for (i, &m) in db_members.iter().enumerate() {
        db_index[m] = i;
    }
    let mut image = Vec::with_capacity(da_members.len());
    let mut explicit_ok = true;
    for &member in &da_members {
        let (x, y) = lg_a.parts(member);
        if xi2_old[x] == usize::MAX || xi2_old[y] == usize::MAX {
            explicit_ok = false;
            break;
        }
        let target = lg_b.idx(xi2_old[x], xi2_old[y]);
        if db_index[target] == usize::MAX {
            explicit_ok = false;
            break;
        }
        image.push(db_index[target]);
    }
    let explicit = explicit_ok
        && GroupHom::new(&da_group, &db_group, image)
            .map(|hom| hom.is_bijective(&db_group))
            .unwrap_or(false);
    report.require("explicit_pairing_isomorphism", explicit, || json!(null))?;
    Ok(report)
}

/// Under either center condition, isoclinic braces have isoclinic lambda
/// groups; evaluates the conditions exactly and, when one holds on both
/// sides, demands a certificate.
pub fn isoclinicsdp_check(a: &SkewBrace, b: &SkewBrace, caps: &Caps) -> Result<Report, CheckError> {
    let mut report = Report::new();
    let Some(_cert) = brace_isoclinic(a, b, caps)? else {
        report.note("isoclinicsdp", json!("not-applicable"));
        return Ok(report);
    };
    let lg_a = LambdaGroup::build(a, LambdaFlavor::Opposite, caps)?;
    let lg_b = LambdaGroup::build(b, LambdaFlavor::Opposite, caps)?;

    let cond1_a = lg_a.group().center() == lg_a.pair_subset(&a.annihilator(), &a.annihilator());
    let cond1_b = lg_b.group().center() == lg_b.pair_subset(&b.annihilator(), &b.annihilator());
    let cond2_a = a
        .annihilator()
        .intersect(&a.commutator_ideal())
        .is_trivial();
    let cond2_b = b
        .annihilator()
        .intersect(&b.commutator_ideal())
        .is_trivial();
    let condition1 = cond1_a && cond1_b;
    let condition2 = cond2_a && cond2_b;
    report.note(
        "conditions",
        json!({"center_is_ann_square": condition1, "ann_meets_derived_trivially": condition2}),
    );
    if condition1 || condition2 {
        let certificate = group_isoclinic(lg_a.group(), lg_b.group(), caps)?;
        report.require(
            "lambda_groups_isoclinic",
            certificate.is_some(),
            || json!({"lhs": lg_a.group().order(), "rhs": lg_b.group().order()}),
        )?;
    } else {
        report.note("lambda_groups_isoclinic", json!("conditions-not-met"));
    }
    Ok(report)
}

/// The converse-failure witness: for a trivial brace over a nonabelian
/// group, both lambda groups are isomorphic to the direct square, while
/// the brace and its opposite are not isoclinic.
pub fn opposite_pair_check(g: &FiniteGroup, caps: &Caps) -> Result<Report, CheckError> {
    let mut report = Report::new();
    if g.is_abelian() {
        return Err(
            PropertyViolation::new("opposite_pair_check", "group must be nonabelian").into(),
        );
    }
    let a = make_trivial_brace(g);
    let b = a.opposite();
    let lg_a = LambdaGroup::build(&a, LambdaFlavor::Opposite, caps)?;
    let lg_b = LambdaGroup::build(&b, LambdaFlavor::Opposite, caps)?;
    let square = FiniteGroup::direct_product(g, g);
    report.require(
        "lambda_isomorphic_to_square",
        lg_a.group().find_isomorphism(&square).is_some(),
        || json!(null),
    )?;
    report.require(
        "lambda_groups_isomorphic",
        lg_a.group().find_isomorphism(lg_b.group()).is_some(),
        || json!(null),
    )?;
    report.require(
        "braces_not_isoclinic",
        brace_isoclinic(&a, &b, caps)?.is_none(),
        || json!(null),
    )?;
    // Sanity on the non-isomorphism side of the remark.
    report.require(
        "braces_not_isomorphic",
        find_brace_isomorphism(&a, &b).is_none(),
        || json!(null),
    )?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::make_radical_brace;
    use crate::corpus;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn group_isoclinic_reflexive() {
        for g in [corpus::sym3(), corpus::dihedral4()] {
            let cert = group_isoclinic(&g, &g, &caps()).unwrap().unwrap();
            assert_eq!(cert.derived_order, g.derived_subgroup().len());
        }
    }

    #[test]
    fn abelian_groups_are_isoclinic() {
        let cert = group_isoclinic(&corpus::cyclic(4), &corpus::klein4(), &caps()).unwrap();
        assert!(cert.is_some());
        let cert = group_isoclinic(&corpus::cyclic(2), &corpus::cyclic(8), &caps()).unwrap();
        assert!(cert.is_some());
    }

    #[test]
    fn d4_and_q8_are_isoclinic() {
        let cert = group_isoclinic(&corpus::dihedral4(), &corpus::quaternion8(), &caps())
            .unwrap()
            .unwrap();
        assert_eq!(cert.central_quotient_order, 4);
        assert_eq!(cert.derived_order, 2);
    }

    #[test]
    fn isoclinism_success_is_symmetric() {
        let pool = [
            corpus::dihedral4(),
            corpus::quaternion8(),
            corpus::sym3(),
            corpus::s3_times_z2(),
        ];
        for g in &pool {
            for h in &pool {
                assert_eq!(
                    group_isoclinic(g, h, &caps()).unwrap().is_some(),
                    group_isoclinic(h, g, &caps()).unwrap().is_some()
                );
            }
        }
    }

    #[test]
    fn d4_not_isoclinic_to_central_quotient() {
        let d4 = corpus::dihedral4();
        let report = hall_criterion_check(&d4, &d4.center(), &caps()).unwrap();
        assert!(report.all_hold());
        let data = report.witness_of("hall_data").unwrap();
        assert_eq!(data["intersection_trivial"], false);
        assert_eq!(data["isoclinic_to_quotient"], false);
    }

    #[test]
    fn s3_times_z2_isoclinic_to_s3() {
        let g = corpus::s3_times_z2();
        let normal = Subset::new(vec![0, 1]);
        let report = hall_criterion_check(&g, &normal, &caps()).unwrap();
        assert!(report.all_hold());
        let data = report.witness_of("hall_data").unwrap();
        assert_eq!(data["intersection_trivial"], true);
        assert_eq!(data["isoclinic_to_quotient"], true);
    }

    #[test]
    fn trivial_normal_subgroup_is_always_isoclinic() {
        let g = corpus::quaternion8();
        let report = hall_criterion_check(&g, &Subset::trivial(), &caps()).unwrap();
        assert!(report.all_hold());
        let data = report.witness_of("hall_data").unwrap();
        assert_eq!(data["isoclinic_to_quotient"], true);
    }

    #[test]
    fn brace_isoclinic_reflexive() {
        let brace = make_radical_brace(2, 2, 1, &caps()).unwrap();
        let cert = brace_isoclinic(&brace, &brace, &caps()).unwrap().unwrap();
        assert_eq!(cert.quotient_order, 2);
        assert_eq!(cert.derived_order, 2);
    }

    #[test]
    fn fixture_pairs_are_isoclinic() {
        for (left, right) in corpus::isoclinic_pairs() {
            let cert = brace_isoclinic(&left.brace, &right.brace, &caps()).unwrap();
            assert!(cert.is_some(), "{} ~ {}", left.name, right.name);
        }
    }

    #[test]
    fn trivial_s3_not_isoclinic_to_opposite() {
        let a = make_trivial_brace(&corpus::sym3());
        let cert = brace_isoclinic(&a, &a.opposite(), &caps()).unwrap();
        assert!(cert.is_none());
    }

    #[test]
    fn isocom_on_fixture_pair() {
        let pairs = corpus::isoclinic_pairs();
        let (left, right) = &pairs[0];
        let report = isocom_check(&left.brace, &right.brace, &caps()).unwrap();
        assert!(report.all_hold());
        // identity pair
        let report = isocom_check(&left.brace, &left.brace, &caps()).unwrap();
        assert!(report.all_hold());
        // non-isoclinic pair gated as not-applicable
        let s3 = make_trivial_brace(&corpus::sym3());
        let report = isocom_check(&s3, &s3.opposite(), &caps()).unwrap();
        assert_eq!(report.witness_of("isocom").unwrap(), "not-applicable");
    }

    #[test]
    fn isoclinicsdp_on_fixture_pairs() {
        let pairs = corpus::isoclinic_pairs();
        // first pair satisfies the all-centers condition
        let report = isoclinicsdp_check(&pairs[0].0.brace, &pairs[0].1.brace, &caps()).unwrap();
        assert!(report.all_hold());
        let conds = report.witness_of("conditions").unwrap();
        assert_eq!(conds["center_is_ann_square"], true);
        // second pair satisfies the trivial-intersection condition
        let report = isoclinicsdp_check(&pairs[1].0.brace, &pairs[1].1.brace, &caps()).unwrap();
        assert!(report.all_hold());
        let conds = report.witness_of("conditions").unwrap();
        assert_eq!(conds["ann_meets_derived_trivially"], true);
    }

    #[test]
    fn remark_pattern_on_s3() {
        let report = opposite_pair_check(&corpus::sym3(), &caps()).unwrap();
        assert!(report.all_hold());
    }
}

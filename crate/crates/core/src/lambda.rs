//! The semidirect products attached to a skew left brace and the
//! structural checks on their centers, commutators, quotients and
//! conjugacy classes.
//!
//! For a brace `A` the group carries pairs `(a, b)` encoded as
//! `a * n + b` with multiplication
//! `(a1, b1)(a2, b2) = (a1 . lam_{b1}(a2), b1 o b2)`, where `lam` is the
//! lambda map of the chosen flavor. Both flavors share one builder so
//! cross-flavor comparisons see identical encodings.

use crate::brace::{LambdaFlavor, SkewBrace};
use crate::caps::Caps;
use crate::error::{CheckError, PropertyViolation};
use crate::group::{FiniteGroup, GroupAction, GroupHom, Subset};
use crate::report::Report;
use serde_json::json;

/// A lambda group: the brace, the flavor, and the validated group of
/// order `n^2` on pair codes.
#[derive(Debug, Clone)]
pub struct LambdaGroup {
    brace: SkewBrace,
    flavor: LambdaFlavor,
    group: FiniteGroup,
}

impl LambdaGroup {
    /// Builds and fully validates the lambda group of the given flavor.
    pub fn build(brace: &SkewBrace, flavor: LambdaFlavor, caps: &Caps) -> Result<Self, CheckError> {
        let n = brace.order();
        let order = n * n;
        if order > caps.lambda_order {
            return Err(CheckError::SizeCap {
                required: order,
                cap: caps.lambda_order,
            });
        }
        let act: Vec<Vec<usize>> = (0..n)
            .map(|b| {
                (0..n)
                    .map(|x| brace.lambda_flavored(flavor, b, x))
                    .collect()
            })
            .collect();
        let group = FiniteGroup::semidirect_product(brace.add(), brace.circ(), &act)?;
        Ok(LambdaGroup {
            brace: brace.clone(),
            flavor,
            group,
        })
    }

    pub fn brace(&self) -> &SkewBrace {
        &self.brace
    }

    pub fn flavor(&self) -> LambdaFlavor {
        self.flavor
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Pair code of `(a, b)`.
    #[inline]
    pub fn idx(&self, a: usize, b: usize) -> usize {
        a * self.brace.order() + b
    }

    /// Decode a pair code.
    #[inline]
    pub fn parts(&self, g: usize) -> (usize, usize) {
        let n = self.brace.order();
        (g / n, g % n)
    }

    /// The subset `{(a, b) : a in xs, b in ys}` of the pair codes.
    pub fn pair_subset(&self, xs: &Subset, ys: &Subset) -> Subset {
        let mut members = Vec::with_capacity(xs.len() * ys.len());
        for &a in xs.iter() {
            for &b in ys.iter() {
                members.push(self.idx(a, b));
            }
        }
        Subset::new(members)
    }
}

/// The pairing `(a, b) -> (a b, b)`, validated as an isomorphism from
/// the opposite-flavor group onto the standard-flavor group.
pub fn psi_pair_isomorphism(op: &LambdaGroup, std: &LambdaGroup) -> Result<GroupHom, CheckError> {
    assert_eq!(op.flavor(), LambdaFlavor::Opposite);
    assert_eq!(std.flavor(), LambdaFlavor::Standard);
    assert_eq!(op.brace, std.brace);
    let n = op.brace.order();
    let mut image = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            image[op.idx(a, b)] = std.idx(op.brace.add().mul(a, b), b);
        }
    }
    let hom = GroupHom::new(op.group(), std.group(), image)?;
    if !hom.is_bijective(std.group()) {
        return Err(PropertyViolation::new("psi_pair_isomorphism", "not bijective").into());
    }
    Ok(hom)
}

/// Center of the opposite-flavor lambda group together with the pointwise
/// verification of its structure: containment in `Fix(lam^op) x Z(A,o)`,
/// the lambda identities satisfied by central pairs, the axis
/// characterizations, `Ann x Ann` centrality, and (for left braces) the
/// exact product description of the center.
pub fn center_structure_check(lg: &LambdaGroup) -> Result<(Subset, Report), CheckError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    let brace = lg.brace();
    let add = brace.add();
    let circ = brace.circ();
    let n = brace.order();
    let mut report = Report::new();

    let center = lg.group().center();
    let fix_op = brace.fix_lambda_op();
    let fix_std = brace.fix_lambda();
    let ker_op = brace.ker_lambda_op();
    let z_add = add.center();
    let z_circ = circ.center();
    let ann = brace.annihilator();

    report.note("center_order", json!(center.len()));

    // The membership equation behind everything below: (x, y) is central
    // exactly when y is central in (A,o) and
    // x y lam_y(a) y^-1 = a b lam_b(x) b^-1 for all a, b.
    let mut equation = true;
    'equation: for g in 0..lg.group().order() {
        let (x, y) = lg.parts(g);
        let mut satisfied = z_circ.contains(y);
        if satisfied {
            'pairs: for a in 0..n {
                for b in 0..n {
                    let lhs = add.mul(add.mul(add.mul(x, y), brace.lambda_of(y, a)), add.inv(y));
                    let rhs = add.mul(add.mul(add.mul(a, b), brace.lambda_of(b, x)), add.inv(b));
                    if lhs != rhs {
                        satisfied = false;
                        break 'pairs;
                    }
                }
            }
        }
        if satisfied != center.contains(g) {
            equation = false;
            break 'equation;
        }
    }
    report.require("center_membership_equation", equation, || json!(null))?;

    // (1) Every central pair lies in Fix(lam^op) x Z(A,o), and that pair
    // set is a subgroup on which the twisted product is the direct one.
    let mut containment = true;
    for &g in center.iter() {
        let (x, y) = lg.parts(g);
        if !fix_op.contains(x) || !z_circ.contains(y) {
            containment = false;
            break;
        }
    }
    report.require("center_in_fix_op_by_z_circ", containment, || {
        json!(center.members())
    })?;
    let frame = lg.pair_subset(&fix_op, &z_circ);
    report.require(
        "fix_op_by_z_circ_is_subgroup",
        lg.group().is_subgroup(&frame).is_ok(),
        || json!(frame.members()),
    )?;
    let mut untwisted = true;
    'outer: for &x2 in fix_op.iter() {
        for &y1 in z_circ.iter() {
            if brace.lambda_op_of(y1, x2) != x2 {
                untwisted = false;
                break 'outer;
            }
        }
    }
    report.require("fix_op_by_z_circ_untwisted", untwisted, || json!(null))?;

    // (2) For (x, y) central: lam_y(a) = y^-1 x^-1 a x y and
    // lam_a(y) = a^-1 x^-1 a x y for all a.
    let mut identities = true;
    'center: for &g in center.iter() {
        let (x, y) = lg.parts(g);
        for a in 0..n {
            // x^-1 a x, then conjugated/translated as the statement asks.
            let xiax = add.mul(add.mul(add.inv(x), a), x);
            let lhs1 = brace.lambda_of(y, a);
            let rhs1 = add.mul(add.mul(add.inv(y), xiax), y);
            let lhs2 = brace.lambda_of(a, y);
            let rhs2 = add.mul(add.mul(add.inv(a), xiax), y);
            if lhs1 != rhs1 || lhs2 != rhs2 {
                identities = false;
                break 'center;
            }
        }
    }
    report.require("central_pair_lambda_identities", identities, || json!(null))?;

    // (3) (x, 1) central iff x in Z(A,.) n Fix(lam).
    let axis_add = z_add.intersect(&fix_std);
    let mut axis1 = true;
    for x in 0..n {
        let in_center = center.contains(lg.idx(x, 0));
        if in_center != axis_add.contains(x) {
            axis1 = false;
            break;
        }
    }
    report.require("additive_axis_characterization", axis1, || {
        json!(axis_add.members())
    })?;

    // (4) (1, y) central iff y in Z(A,o) n Fix(lam) n Ker(lam^op).
    let axis_circ = z_circ.intersect(&fix_std).intersect(&ker_op);
    let mut axis2 = true;
    for y in 0..n {
        let in_center = center.contains(lg.idx(0, y));
        if in_center != axis_circ.contains(y) {
            axis2 = false;
            break;
        }
    }
    report.require("circle_axis_characterization", axis2, || {
        json!(axis_circ.members())
    })?;

    // (5) Ann x Ann is contained in the center.
    let ann_pairs = lg.pair_subset(&ann, &ann);
    let ann_central = ann_pairs.iter().all(|&g| center.contains(g));
    report.require("annihilator_square_central", ann_central, || {
        json!(ann_pairs.members())
    })?;

    // Left braces: the center equals Fix(lam) x Ann(A) exactly.
    if brace.is_left_brace() {
        let expected = lg.pair_subset(&fix_std, &ann);
        report.require(
            "left_brace_center_product_form",
            center == expected,
            || json!({"center": center.members(), "expected": expected.members()}),
        )?;
    }

    // Nontrivial annihilator forces a non-cyclic center (the obstruction
    // to faithful irreducible representations).
    if ann.len() > 1 {
        let (z_group, _) = lg.group().subgroup_as_group(&center)?;
        let invariants = z_group.abelian_invariants()?;
        report.require(
            "center_noncyclic_with_nontrivial_annihilator",
            invariants.len() >= 2,
            || json!(invariants),
        )?;
    }

    Ok((center, report))
}

/// Derived subgroup of the opposite-flavor lambda group, checked to equal
/// `A' x (A,o)'` elementwise, plus the quotient comparison
/// `Lambda/Lambda' = A/A' x (A,o)/(A,o)'`.
pub fn commutator_structure_check(lg: &LambdaGroup) -> Result<(Subset, Report), CheckError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    let brace = lg.brace();
    let mut report = Report::new();

    let derived = lg.group().derived_subgroup();
    let a_prime = brace.commutator_ideal();
    let circ_prime = brace.circ().derived_subgroup();
    let expected = lg.pair_subset(&a_prime, &circ_prime);
    report.note("lambda_derived_order", json!(derived.len()));
    report.require(
        "lambda_derived_is_pair_set",
        derived == expected,
        || json!({"derived": derived.members(), "expected": expected.members()}),
    )?;

    let (lambda_ab, _) = lg.group().quotient(&derived)?;
    let (add_ab, _) = brace.add().quotient(&a_prime)?;
    let (circ_ab, _) = brace.circ().quotient(&circ_prime)?;
    let product = FiniteGroup::direct_product(&add_ab, &circ_ab);
    report.note("lambda_abelianization_order", json!(lambda_ab.order()));
    report.require(
        "lambda_abelianization_splits",
        lambda_ab.find_isomorphism(&product).is_some(),
        || json!({"lhs_order": lambda_ab.order(), "rhs_order": product.order()}),
    )?;

    Ok((derived, report))
}

/// Lambda group of `A/Ann(A)`, verified isomorphic to the quotient of the
/// lambda group by `Ann x Ann` under the natural pairing.
pub fn annihilator_quotient_check(
    lg: &LambdaGroup,
    caps: &Caps,
) -> Result<(LambdaGroup, Report), CheckError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    let brace = lg.brace();
    let mut report = Report::new();

    let ann = brace.annihilator();
    let (qbrace, _, reps) = brace.quotient_brace_with_maps(&ann)?;
    let bar = LambdaGroup::build(&qbrace, LambdaFlavor::Opposite, caps)?;
    report.note("bar_lambda_order", json!(bar.group().order()));

    let ann_pairs = lg.pair_subset(&ann, &ann);
    let (quotient, projection) = lg.group().quotient(&ann_pairs)?;

    let q = qbrace.order();
    let mut image = vec![0; q * q];
    for i in 0..q {
        for j in 0..q {
            image[bar.idx(i, j)] = projection.apply(lg.idx(reps[i], reps[j]));
        }
    }
    let natural = GroupHom::new(bar.group(), &quotient, image)?;
    report.require(
        "bar_lambda_matches_quotient",
        natural.is_bijective(&quotient),
        || json!({"bar": bar.group().order(), "quotient": quotient.order()}),
    )?;

    Ok((bar, report))
}

/// The action `psi(a,b)(x) = a lam^op_b(x) a^-1` of the lambda group on
/// the brace elements, with its fixed-point and kernel laws.
pub fn psi_action_check(
    lg: &LambdaGroup,
    center: &Subset,
) -> Result<(GroupAction, Report), CheckError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    let brace = lg.brace();
    let add = brace.add();
    let n = brace.order();
    let mut report = Report::new();

    let order = lg.group().order();
    let mut perms = Vec::with_capacity(order);
    for g in 0..order {
        let (a, b) = lg.parts(g);
        let perm: Vec<usize> = (0..n)
            .map(|x| add.conj(a, brace.lambda_op_of(b, x)))
            .collect();
        perms.push(perm);
    }
    let action = GroupAction::new(lg.group(), n, perms)?;

    let fixed = action.fixed_points();
    let expected_fixed = add.center().intersect(&brace.fix_lambda());
    report.require(
        "psi_fixed_points",
        fixed == expected_fixed,
        || json!({"fixed": fixed.members(), "expected": expected_fixed.members()}),
    )?;

    let ann = brace.annihilator();
    report.require(
        "annihilator_in_psi_fixed",
        ann.iter().all(|&x| fixed.contains(x)),
        || json!(ann.members()),
    )?;

    // Central pairs act trivially by conjugation on the additive copy,
    // so the chain runs Ann x Ann <= Z(Lambda) <= Ker(psi).
    let kernel = action.kernel();
    let ann_pairs = lg.pair_subset(&ann, &ann);
    let lower = ann_pairs.iter().all(|&g| kernel.contains(g));
    let upper = center.iter().all(|&g| kernel.contains(g));
    report.require("annihilator_square_in_psi_kernel", lower, || {
        json!(kernel.members())
    })?;
    report.require("center_in_psi_kernel", upper, || json!(kernel.members()))?;

    report.note("psi_orbit_count", json!(action.orbits().len()));
    Ok((action, report))
}

/// Conjugacy-class structure: classes of `(a, 1)` are the psi-orbits,
/// circle classes embed into the classes of `(1, a)`, and the class count
/// sits between the stated bounds.
pub fn conjugacy_structure_checks(
    lg: &LambdaGroup,
    action: &GroupAction,
) -> Result<Report, CheckError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    let brace = lg.brace();
    let n = brace.order();
    let mut report = Report::new();

    let classes = lg.group().conjugacy_classes();
    let orbits = action.orbits();
    let mut orbit_of = vec![usize::MAX; n];
    for (i, orbit) in orbits.iter().enumerate() {
        for &x in orbit.iter() {
            orbit_of[x] = i;
        }
    }

    // Cl(a, 1) = O_a x {1} for every a.
    let mut additive_classes = true;
    'add: for a in 0..n {
        let class_id = classes.class_of[lg.idx(a, 0)];
        for g in 0..lg.group().order() {
            let (x, y) = lg.parts(g);
            let in_class = classes.class_of[g] == class_id;
            let in_orbit_slice = y == 0 && orbit_of[x] == orbit_of[a];
            if in_class != in_orbit_slice {
                additive_classes = false;
                break 'add;
            }
        }
    }
    report.require("additive_classes_are_orbits", additive_classes, || {
        json!(null)
    })?;

    // {1} x Cl^(A,o)(a) inside Cl(1, a).
    let circ_classes = brace.circ().conjugacy_classes();
    let mut circle_embeds = true;
    'circ: for a in 0..n {
        let target = classes.class_of[lg.idx(0, a)];
        for c in 0..n {
            if circ_classes.class_of[c] == circ_classes.class_of[a]
                && classes.class_of[lg.idx(0, c)] != target
            {
                circle_embeds = false;
                break 'circ;
            }
        }
    }
    report.require("circle_classes_embed", circle_embeds, || json!(null))?;

    let k_lambda = classes.count();
    let k_add = brace.add().conjugacy_classes().count();
    let k_circ = circ_classes.count();
    let orbit_count = orbits.len();
    report.note(
        "class_counts",
        json!({"k_lambda": k_lambda, "k_add": k_add, "k_circ": k_circ, "psi_orbits": orbit_count}),
    );
    let lower = k_circ.max(orbit_count);
    report.require(
        "class_count_bounds",
        lower <= k_lambda && k_lambda <= k_add * k_circ,
        || json!({"lower": lower, "k_lambda": k_lambda, "upper": k_add * k_circ}),
    )?;

    Ok(report)
}

/// For every ideal `I` containing `A'` and every normal subgroup `J` of
/// the circle group, the pair set `I x J` is normal in the lambda group.
pub fn pair_normality_check(lg: &LambdaGroup) -> Result<Report, CheckError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    let brace = lg.brace();
    let mut report = Report::new();
    let a_prime = brace.commutator_ideal();
    let ideals: Vec<Subset> = brace
        .add()
        .all_subgroups()
        .into_iter()
        .filter(|s| a_prime.iter().all(|&x| s.contains(x)) && brace.is_ideal(s))
        .collect();
    let normals: Vec<Subset> = brace
        .circ()
        .all_subgroups()
        .into_iter()
        .filter(|s| matches!(brace.circ().is_normal(s), Ok(true)))
        .collect();
    let mut count = 0;
    for ideal in &ideals {
        for normal in &normals {
            let pairs = lg.pair_subset(ideal, normal);
            let is_normal = matches!(lg.group().is_normal(&pairs), Ok(true));
            count += 1;
            if !is_normal {
                report.require(
                    "ideal_by_normal_is_normal",
                    false,
                    || json!({"ideal": ideal.members(), "normal": normal.members()}),
                )?;
            }
        }
    }
    report.push(
        "ideal_by_normal_is_normal",
        true,
        Some(json!({"pairs_checked": count})),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{make_radical_brace, make_trivial_brace};
    use crate::corpus;

    fn caps() -> Caps {
        Caps::default()
    }

    fn b212_lambda() -> LambdaGroup {
        let brace = make_radical_brace(2, 2, 1, &caps()).unwrap();
        LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap()
    }

    #[test]
    fn lambda_of_trivial_z2_is_klein() {
        let brace = make_trivial_brace(&corpus::cyclic(2));
        let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
        let direct = FiniteGroup::direct_product(&corpus::cyclic(2), &corpus::cyclic(2));
        assert_eq!(lg.group(), &direct);
    }

    #[test]
    fn lambda_of_b212_is_nonabelian_order_16() {
        let lg = b212_lambda();
        assert_eq!(lg.group().order(), 16);
        assert!(!lg.group().is_abelian());
        assert_eq!(lg.group().derived_subgroup().len(), 2);
    }

    #[test]
    fn lambda_of_trivial_s3_is_s3_squared() {
        let brace = make_trivial_brace(&corpus::sym3());
        let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
        let product = FiniteGroup::direct_product(&corpus::sym3(), &corpus::sym3());
        assert!(lg.group().find_isomorphism(&product).is_some());
    }

    #[test]
    fn conjugation_formula() {
        // (x,y)(a,b)(x,y)^-1 =
        //   (x lam^op_y(a) lam^op_{y o b o y-dagger}(x^-1), y o b o y-dagger)
        for brace in [
            make_radical_brace(2, 2, 1, &caps()).unwrap(),
            make_trivial_brace(&corpus::sym3()),
        ] {
            let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
            let n = brace.order();
            let add = brace.add();
            let circ = brace.circ();
            for x in 0..n {
                for y in 0..n {
                    let conjugator = lg.idx(x, y);
                    for a in 0..n {
                        for b in 0..n {
                            let got = lg.group().conj(conjugator, lg.idx(a, b));
                            let y_dagger = circ.inv(y);
                            let second = circ.mul(circ.mul(y, b), y_dagger);
                            let first = add.mul(
                                add.mul(x, brace.lambda_op_of(y, a)),
                                brace.lambda_op_of(second, add.inv(x)),
                            );
                            assert_eq!(got, lg.idx(first, second));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pair_inverse_formula() {
        // (a, b)^-1 = (lam^op_{b-dagger}(a^-1), b-dagger)
        for brace in [
            make_radical_brace(2, 2, 1, &caps()).unwrap(),
            make_trivial_brace(&corpus::sym3()),
        ] {
            let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
            let n = brace.order();
            for a in 0..n {
                for b in 0..n {
                    let b_dagger = brace.circ().inv(b);
                    let expected =
                        lg.idx(brace.lambda_op_of(b_dagger, brace.add().inv(a)), b_dagger);
                    assert_eq!(lg.group().inv(lg.idx(a, b)), expected);
                }
            }
        }
    }

    #[test]
    fn psi_pair_isomorphism_examples() {
        let brace = make_trivial_brace(&corpus::cyclic(4));
        let op = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
        let std = LambdaGroup::build(&brace, LambdaFlavor::Standard, &caps()).unwrap();
        let psi = psi_pair_isomorphism(&op, &std).unwrap();
        // (1,1) -> (2,1); (0,b) -> (b,b); (a,0) -> (a,0)
        assert_eq!(psi.apply(op.idx(1, 1)), std.idx(2, 1));
        for b in 0..4 {
            assert_eq!(psi.apply(op.idx(0, b)), std.idx(b, b));
        }
        for a in 0..4 {
            assert_eq!(psi.apply(op.idx(a, 0)), std.idx(a, 0));
        }
    }

    #[test]
    fn center_of_b212_lambda() {
        let lg = b212_lambda();
        let (center, report) = center_structure_check(&lg).unwrap();
        assert!(report.all_hold());
        let expected = lg.pair_subset(&Subset::new(vec![0, 2]), &Subset::new(vec![0, 2]));
        assert_eq!(center, expected);
        assert_eq!(center.len(), 4);
    }

    #[test]
    fn center_of_trivial_s3_lambda_is_trivial() {
        let brace = make_trivial_brace(&corpus::sym3());
        let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
        let (center, report) = center_structure_check(&lg).unwrap();
        assert!(report.all_hold());
        assert!(center.is_trivial());
    }

    #[test]
    fn center_of_trivial_z4_lambda_is_everything() {
        let brace = make_trivial_brace(&corpus::cyclic(4));
        let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
        let (center, _) = center_structure_check(&lg).unwrap();
        assert_eq!(center.len(), 16);
    }

    #[test]
    fn commutator_of_b212_lambda() {
        let lg = b212_lambda();
        let (derived, report) = commutator_structure_check(&lg).unwrap();
        assert!(report.all_hold());
        assert_eq!(derived.len(), 2);
        assert_eq!(lg.group().order() / derived.len(), 8);
    }

    #[test]
    fn commutator_of_trivial_s3_lambda() {
        let brace = make_trivial_brace(&corpus::sym3());
        let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
        let (derived, report) = commutator_structure_check(&lg).unwrap();
        assert!(report.all_hold());
        assert_eq!(derived.len(), 9);
    }

    #[test]
    fn commutator_of_abelian_trivial_brace_is_trivial() {
        let brace = make_trivial_brace(&corpus::klein4());
        let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
        let (derived, _) = commutator_structure_check(&lg).unwrap();
        assert!(derived.is_trivial());
    }

    #[test]
    fn annihilator_quotient_examples() {
        let trivial = make_trivial_brace(&corpus::klein4());
        let lg = LambdaGroup::build(&trivial, LambdaFlavor::Opposite, &caps()).unwrap();
        let (bar, report) = annihilator_quotient_check(&lg, &caps()).unwrap();
        assert!(report.all_hold());
        assert_eq!(bar.group().order(), 1);

        let lg = b212_lambda();
        let (bar, report) = annihilator_quotient_check(&lg, &caps()).unwrap();
        assert!(report.all_hold());
        assert_eq!(bar.group().order(), 4);

        let s3 = make_trivial_brace(&corpus::sym3());
        let lg = LambdaGroup::build(&s3, LambdaFlavor::Opposite, &caps()).unwrap();
        let (bar, report) = annihilator_quotient_check(&lg, &caps()).unwrap();
        assert!(report.all_hold());
        assert_eq!(bar.group().order(), 36);
    }

    #[test]
    fn psi_action_orbits() {
        let s3 = make_trivial_brace(&corpus::sym3());
        let lg = LambdaGroup::build(&s3, LambdaFlavor::Opposite, &caps()).unwrap();
        let (center, _) = center_structure_check(&lg).unwrap();
        let (action, report) = psi_action_check(&lg, &center).unwrap();
        assert!(report.all_hold());
        assert_eq!(action.orbits().len(), 3);

        let lg = b212_lambda();
        let (center, _) = center_structure_check(&lg).unwrap();
        let (action, report) = psi_action_check(&lg, &center).unwrap();
        assert!(report.all_hold());
        let orbits = action.orbits();
        let members: Vec<&[usize]> = orbits.iter().map(|o| o.members()).collect();
        assert_eq!(members, vec![&[0][..], &[1, 3][..], &[2][..]]);
        // orbit of 0 is always {0}
        assert_eq!(orbits[0].members(), &[0]);
    }

    #[test]
    fn conjugacy_bounds_examples() {
        let lg = b212_lambda();
        let (center, _) = center_structure_check(&lg).unwrap();
        let (action, _) = psi_action_check(&lg, &center).unwrap();
        let report = conjugacy_structure_checks(&lg, &action).unwrap();
        assert!(report.all_hold());
        let counts = report.witness_of("class_counts").unwrap();
        assert_eq!(counts["k_lambda"], 10);
        assert_eq!(counts["k_add"], 4);
        assert_eq!(counts["k_circ"], 4);
        assert_eq!(counts["psi_orbits"], 3);

        let s3 = make_trivial_brace(&corpus::sym3());
        let lg = LambdaGroup::build(&s3, LambdaFlavor::Opposite, &caps()).unwrap();
        let (center, _) = center_structure_check(&lg).unwrap();
        let (action, _) = psi_action_check(&lg, &center).unwrap();
        let report = conjugacy_structure_checks(&lg, &action).unwrap();
        let counts = report.witness_of("class_counts").unwrap();
        assert_eq!(counts["k_lambda"], 9);

        let z2 = make_trivial_brace(&corpus::cyclic(2));
        let lg = LambdaGroup::build(&z2, LambdaFlavor::Opposite, &caps()).unwrap();
        let (center, _) = center_structure_check(&lg).unwrap();
        let (action, _) = psi_action_check(&lg, &center).unwrap();
        let report = conjugacy_structure_checks(&lg, &action).unwrap();
        let counts = report.witness_of("class_counts").unwrap();
        assert_eq!(counts["k_lambda"], 4);
    }

    #[test]
    fn pair_normality_on_small_braces() {
        for brace in [
            make_radical_brace(2, 2, 1, &caps()).unwrap(),
            make_trivial_brace(&corpus::sym3()),
            make_trivial_brace(&corpus::dihedral4()),
        ] {
            let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
            let report = pair_normality_check(&lg).unwrap();
            assert!(report.all_hold());
        }
    }

    #[test]
    fn size_cap_respected() {
        let brace = make_trivial_brace(&corpus::cyclic(4));
        let tight = Caps {
            lambda_order: 8,
            ..Caps::default()
        };
        assert!(matches!(
            LambdaGroup::build(&brace, LambdaFlavor::Opposite, &tight),
            Err(CheckError::SizeCap {
                required: 16,
                cap: 8
            })
        ));
    }
}

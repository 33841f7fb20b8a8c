//! Property tests over the fixture pool: structural invariants that must
//! hold for every group and brace we can build.

use brace_forge_core::brace::{make_radical_brace, make_trivial_brace, SkewBrace};
use brace_forge_core::caps::Caps;
use brace_forge_core::corpus;
use brace_forge_core::group::FiniteGroup;
use proptest::prelude::*;

fn group_pool() -> Vec<FiniteGroup> {
    vec![
        corpus::cyclic(1),
        corpus::cyclic(2),
        corpus::cyclic(6),
        corpus::cyclic(8),
        corpus::klein4(),
        corpus::sym3(),
        corpus::dihedral4(),
        corpus::quaternion8(),
        corpus::s3_times_z2(),
        FiniteGroup::direct_product(&corpus::cyclic(3), &corpus::cyclic(3)),
    ]
}

fn brace_pool() -> Vec<SkewBrace> {
    let caps = Caps::default();
    let mut pool: Vec<SkewBrace> = vec![
        make_radical_brace(2, 2, 1, &caps).unwrap(),
        make_radical_brace(2, 3, 1, &caps).unwrap(),
        make_radical_brace(2, 3, 2, &caps).unwrap(),
        make_radical_brace(3, 2, 1, &caps).unwrap(),
        make_radical_brace(5, 2, 1, &caps).unwrap(),
        corpus::sign_brace(6),
        corpus::sign_brace(8),
        make_trivial_brace(&corpus::sym3()),
        make_trivial_brace(&corpus::quaternion8()),
    ];
    let opposites: Vec<SkewBrace> = pool.iter().map(|b| b.opposite()).collect();
    pool.extend(opposites);
    pool
}

proptest! {
    #[test]
    fn generated_subgroups_satisfy_lagrange(
        which in 0usize..10,
        gens in proptest::collection::vec(0usize..48, 0..4),
    ) {
        let pool = group_pool();
        let group = &pool[which];
        let gens: Vec<usize> = gens.into_iter().map(|g| g % group.order()).collect();
        let sub = group.subgroup_generated(&gens);
        prop_assert_eq!(group.order() % sub.len(), 0);
        // closure is idempotent
        let again = group.subgroup_generated(sub.members());
        prop_assert_eq!(&sub, &again);
    }

    #[test]
    fn conjugacy_partition_is_consistent(which in 0usize..10) {
        let pool = group_pool();
        let group = &pool[which];
        let classes = group.conjugacy_classes();
        prop_assert_eq!(classes.sizes.iter().sum::<usize>(), group.order());
        for &size in &classes.sizes {
            prop_assert_eq!(group.order() % size, 0);
        }
        for (i, &j) in classes.inverse_class.iter().enumerate() {
            prop_assert_eq!(classes.inverse_class[j], i);
        }
    }

    #[test]
    fn class_count_matches_commuting_pairs(which in 0usize..10) {
        // Independent route: |{(x, y) : xy = yx}| = k(G) |G|.
        let pool = group_pool();
        let group = &pool[which];
        let n = group.order();
        let commuting = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| group.mul(x, y) == group.mul(y, x))
            .count();
        prop_assert_eq!(commuting, group.class_count() * n);
    }

    #[test]
    fn trivial_semidirect_is_direct(left in 0usize..10, right in 0usize..10) {
        let pool = group_pool();
        let (g, h) = (&pool[left], &pool[right]);
        if g.order() * h.order() > 128 {
            return Ok(());
        }
        let trivial: Vec<Vec<usize>> = (0..h.order()).map(|_| (0..g.order()).collect()).collect();
        let semi = FiniteGroup::semidirect_product(g, h, &trivial).unwrap();
        prop_assert_eq!(semi, FiniteGroup::direct_product(g, h));
    }

    #[test]
    fn quotient_projection_has_kernel_n(which in 0usize..10, pick in any::<prop::sample::Index>()) {
        let pool = group_pool();
        let group = &pool[which];
        let normals: Vec<_> = group
            .all_subgroups()
            .into_iter()
            .filter(|s| matches!(group.is_normal(s), Ok(true)))
            .collect();
        let normal = &normals[pick.index(normals.len())];
        let (quotient, projection) = group.quotient(normal).unwrap();
        prop_assert_eq!(quotient.order() * normal.len(), group.order());
        prop_assert_eq!(&projection.kernel(), normal);
        prop_assert_eq!(projection.image_set().len(), quotient.order());
    }

    #[test]
    fn isomorphism_success_is_symmetric(left in 0usize..10, right in 0usize..10) {
        let pool = group_pool();
        let (g, h) = (&pool[left], &pool[right]);
        let forward = g.find_isomorphism(h);
        let backward = h.find_isomorphism(g);
        prop_assert_eq!(forward.is_some(), backward.is_some());
        if let Some(iso) = forward {
            prop_assert!(iso.is_bijective(h));
        }
    }

    #[test]
    fn brace_lambda_identities(which in 0usize..18) {
        let pool = brace_pool();
        let brace = &pool[which];
        let n = brace.order();
        for a in 0..n {
            for b in 0..n {
                // a o b = a . lam_a(b)
                let via_lambda = brace.add().mul(a, brace.lambda_of(a, b));
                prop_assert_eq!(brace.circ().mul(a, b), via_lambda);
                // lam^op_a(b) = a lam_a(b) a^-1
                let conj = brace.add().conj(a, brace.lambda_of(a, b));
                prop_assert_eq!(brace.lambda_op_of(a, b), conj);
            }
        }
    }

    #[test]
    fn opposite_is_involutive_and_commutator_stable(which in 0usize..18) {
        let pool = brace_pool();
        let brace = &pool[which];
        let opposite = brace.opposite();
        prop_assert_eq!(&opposite.opposite(), brace);
        prop_assert_eq!(brace.commutator_ideal(), opposite.commutator_ideal());
    }

    #[test]
    fn annihilator_and_commutator_are_ideals(which in 0usize..18) {
        let pool = brace_pool();
        let brace = &pool[which];
        let ann = brace.annihilator();
        let ideal = brace.commutator_ideal();
        prop_assert!(brace.is_ideal(&ann));
        prop_assert!(brace.is_ideal(&ideal));
        // circle derived subgroup sits inside the commutator ideal
        let circ_prime = brace.circ().derived_subgroup();
        prop_assert!(circ_prime.iter().all(|&x| ideal.contains(x)));
    }

    #[test]
    fn quotient_brace_by_annihilator_validates(which in 0usize..18) {
        let pool = brace_pool();
        let brace = &pool[which];
        let ann = brace.annihilator();
        let quotient = brace.quotient_brace(&ann).unwrap();
        prop_assert_eq!(quotient.order() * ann.len(), brace.order());
    }
}

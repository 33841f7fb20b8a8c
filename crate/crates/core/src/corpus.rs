//! Standard fixture groups and the default brace corpus.

use crate::brace::{make_radical_brace, make_trivial_brace, SkewBrace};
use crate::caps::Caps;
use crate::group::FiniteGroup;

/// Cyclic group of order `n`, `a + b mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_fn(n, |a, b| (a + b) % n).expect("cyclic group")
}

/// Klein four-group as `Z2 x Z2`.
pub fn klein4() -> FiniteGroup {
    FiniteGroup::direct_product(&cyclic(2), &cyclic(2))
}

/// Symmetric group on three points with elements ordered
/// `e, (12), (13), (23), (123), (132)`.
pub fn sym3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2], // e
        [1, 0, 2], // (12)
        [2, 1, 0], // (13)
        [0, 2, 1], // (23)
        [1, 2, 0], // (123)
        [2, 0, 1], // (132)
    ];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    FiniteGroup::from_fn(6, |a, b| {
        let mut prod = [0usize; 3];
        for (x, slot) in prod.iter_mut().enumerate() {
            *slot = perms[a][perms[b][x]];
        }
        index_of(&prod)
    })
    .expect("symmetric group S3")
}

/// Full symmetric group on `m` points, permutations in lexicographic
/// order (identity first). Intended for small `m`.
pub fn sym(m: usize) -> FiniteGroup {
    sym_with_perms(m).0
}

/// The symmetric group together with its permutation list, index-aligned
/// with the table.
pub fn sym_with_perms(m: usize) -> (FiniteGroup, Vec<Vec<usize>>) {
    assert!((1..=5).contains(&m), "sym(m) intended for 1 <= m <= 5");
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..m).collect();
    loop {
        perms.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let group = FiniteGroup::from_fn(perms.len(), |a, b| {
        let prod: Vec<usize> = (0..m).map(|x| perms[a][perms[b][x]]).collect();
        index_of(&prod)
    })
    .expect("symmetric group");
    (group, perms)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Dihedral group of order 8 as `Z4 x| Z2` with the reflection acting by
/// inversion.
pub fn dihedral4() -> FiniteGroup {
    let z4 = cyclic(4);
    let z2 = cyclic(2);
    let act = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
    FiniteGroup::semidirect_product(&z4, &z2, &act).expect("dihedral group D4")
}

/// Quaternion group of order 8, elements ordered
/// `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> FiniteGroup {
    // Units 1, i, j, k are 0..4; element index = 2 * unit + sign.
    let unit_mul = |u: usize, v: usize| -> (usize, usize) {
        match (u, v) {
            (0, x) => (0, x),
            (x, 0) => (0, x),
            (1, 1) | (2, 2) | (3, 3) => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    FiniteGroup::from_fn(8, |a, b| {
        let (ua, sa) = (a / 2, a % 2);
        let (ub, sb) = (b / 2, b % 2);
        let (s, u) = unit_mul(ua, ub);
        2 * u + (s + sa + sb) % 2
    })
    .expect("quaternion group Q8")
}

/// `S3 x Z2`, the order-12 fixture for the Hall criterion.
pub fn s3_times_z2() -> FiniteGroup {
    FiniteGroup::direct_product(&sym3(), &cyclic(2))
}

/// Left brace on `Z_m` (m even) with `a o b = a + (-1)^a b`. Its circle
/// group is dihedral for m > 2. For m = 2 mod 4 the annihilator is
/// trivial, which makes it the fixture with `Ann(A) n A' = 1` alongside
/// a nontrivial commutator ideal.
pub fn sign_brace(m: usize) -> SkewBrace {
    assert!(m >= 2 && m.is_multiple_of(2), "sign brace needs even order");
    let add: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).map(|b| (a + b) % m).collect())
        .collect();
    let circ: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    if a % 2 == 0 {
                        (a + b) % m
                    } else {
                        (a + m - b) % m
                    }
                })
                .collect()
        })
        .collect();
    SkewBrace::from_tables(&add, &circ).expect("sign brace")
}

/// A named corpus entry.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub brace: SkewBrace,
}

impl CorpusEntry {
    fn new(name: &str, brace: SkewBrace) -> Self {
        CorpusEntry {
            name: name.to_string(),
            brace,
        }
    }
}

/// The default corpus: trivial braces over the standard small groups,
/// the three radical braces, and the opposites of the entries whose
/// additive group is nonabelian (opposites of the rest coincide with
/// the originals entry-for-entry and are not duplicated).
pub fn default_corpus() -> Vec<CorpusEntry> {
    let mut entries = vec![
        CorpusEntry::new("trivial_z2", make_trivial_brace(&cyclic(2))),
        CorpusEntry::new("trivial_z4", make_trivial_brace(&cyclic(4))),
        CorpusEntry::new("trivial_k4", make_trivial_brace(&klein4())),
        CorpusEntry::new("trivial_s3", make_trivial_brace(&sym3())),
        CorpusEntry::new("trivial_d4", make_trivial_brace(&dihedral4())),
        CorpusEntry::new("trivial_q8", make_trivial_brace(&quaternion8())),
        CorpusEntry::new(
            "radical_2_2_1",
            make_radical_brace(2, 2, 1, &Caps::default()).expect("radical"),
        ),
        CorpusEntry::new(
            "radical_3_2_1",
            make_radical_brace(3, 2, 1, &Caps::default()).expect("radical"),
        ),
        CorpusEntry::new(
            "radical_3_3_1",
            make_radical_brace(3, 3, 1, &Caps::default()).expect("radical"),
        ),
    ];
    let opposites: Vec<CorpusEntry> = entries
        .iter()
        .filter(|e| !e.brace.is_left_brace())
        .map(|e| CorpusEntry::new(&format!("{}_op", e.name), e.brace.opposite()))
        .collect();
    entries.extend(opposites);
    entries
}

/// Fixture pairs of isoclinic braces used by the isoclinism suites.
///
/// The first pair exercises the all-centers condition (`Z(Lambda) =
/// Ann x Ann` on both sides); the second, built from the sign brace,
/// exercises the trivial-intersection condition (`Ann n A' = 1`).
pub fn isoclinic_pairs() -> Vec<(CorpusEntry, CorpusEntry)> {
    let b212 = make_radical_brace(2, 2, 1, &Caps::default()).expect("radical");
    let pair_a = SkewBrace::direct_product(&b212, &make_trivial_brace(&cyclic(4)));
    let pair_b = SkewBrace::direct_product(&b212, &make_trivial_brace(&klein4()));
    let sign6 = sign_brace(6);
    let sign6_ext = SkewBrace::direct_product(&sign6, &make_trivial_brace(&cyclic(2)));
    vec![
        (
            CorpusEntry::new("b212_x_trivial_z4", pair_a),
            CorpusEntry::new("b212_x_trivial_k4", pair_b),
        ),
        (
            CorpusEntry::new("sign_z6", sign6),
            CorpusEntry::new("sign_z6_x_trivial_z2", sign6_ext),
        ),
    ]
}

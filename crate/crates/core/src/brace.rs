//! Skew left braces over a shared index set.
//!
//! A [`SkewBrace`] couples two validated Cayley tables on the same
//! elements, sharing the identity at index 0, subject to the defining
//! compatibility axiom checked over all `n^3` triples. The lambda maps,
//! ideals, annihilator, commutator ideal and quotient braces all live
//! here.

use crate::caps::Caps;
use crate::error::{BraceError, GroupError};
use crate::group::{FiniteGroup, Subset};
use serde::{Deserialize, Serialize};

/// Which lambda map a construction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaFlavor {
    /// `lam_a(b) = a^-1 (a o b)`.
    Standard,
    /// `lam^op_a(b) = (a o b) a^-1`.
    Opposite,
}

/// A validated skew left brace: additive group `(A, .)` and
/// multiplicative group `(A, o)` on one index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewBrace {
    add: FiniteGroup,
    circ: FiniteGroup,
}

/// On-disk JSON schema for a brace: `{"n": .., "add": [[..]], "circ": [[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraceFile {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub circ: Vec<Vec<usize>>,
}

impl SkewBrace {
    /// Validates two tables as a skew left brace.
    pub fn from_tables(add: &[Vec<usize>], circ: &[Vec<usize>]) -> Result<Self, BraceError> {
        let add = FiniteGroup::from_rows(add).map_err(BraceError::Add)?;
        let circ = FiniteGroup::from_rows(circ).map_err(BraceError::Circ)?;
        SkewBrace::new(add, circ)
    }

    /// Validates two groups on the same index set as a skew left brace.
    ///
    /// Both groups carry their identity at index 0, so the identities
    /// coincide by construction; the brace axiom is then checked over
    /// all triples, and every lambda permutation is verified to be an
    /// automorphism of the additive group.
    pub fn new(add: FiniteGroup, circ: FiniteGroup) -> Result<Self, BraceError> {
        if add.order() != circ.order() {
            return Err(BraceError::OrderMismatch {
                add: add.order(),
                circ: circ.order(),
            });
        }
        let n = add.order();
        for a in 0..n {
            for b in 0..n {
                let ab = circ.mul(a, b);
                let prefix = add.mul(ab, add.inv(a));
                for c in 0..n {
                    let lhs = circ.mul(a, add.mul(b, c));
                    let rhs = add.mul(prefix, circ.mul(a, c));
                    if lhs != rhs {
                        return Err(BraceError::AxiomViolation { a, b, c, lhs, rhs });
                    }
                }
            }
        }
        let brace = SkewBrace { add, circ };
        for a in 0..n {
            let perm: Vec<usize> = (0..n).map(|b| brace.lambda_of(a, b)).collect();
            if !perm_is_automorphism(&brace.add, &perm) {
                return Err(BraceError::LambdaNotAutomorphism { a });
            }
        }
        Ok(brace)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn add(&self) -> &FiniteGroup {
        &self.add
    }

    pub fn circ(&self) -> &FiniteGroup {
        &self.circ
    }

    /// `lam_a(b) = a^-1 (a o b)`.
    #[inline]
    pub fn lambda_of(&self, a: usize, b: usize) -> usize {
        self.add.mul(self.add.inv(a), self.circ.mul(a, b))
    }

    /// `lam^op_a(b) = (a o b) a^-1`.
    #[inline]
    pub fn lambda_op_of(&self, a: usize, b: usize) -> usize {
        self.add.mul(self.circ.mul(a, b), self.add.inv(a))
    }

    #[inline]
    pub fn lambda_flavored(&self, flavor: LambdaFlavor, a: usize, b: usize) -> usize {
        match flavor {
            LambdaFlavor::Standard => self.lambda_of(a, b),
            LambdaFlavor::Opposite => self.lambda_op_of(a, b),
        }
    }

    /// The lambda map of the requested flavor as a validated permutation
    /// family. Failures here signal a defect in brace validation, so the
    /// checks are assertion-level.
    pub fn lambda(&self, flavor: LambdaFlavor) -> LambdaMap {
        let n = self.order();
        let perms: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| self.lambda_flavored(flavor, a, b)).collect())
            .collect();
        assert!(
            perms[0].iter().enumerate().all(|(b, &v)| v == b),
            "lambda at identity"
        );
        for (a, perm) in perms.iter().enumerate() {
            assert!(
                perm_is_automorphism(&self.add, perm),
                "lambda_{a} not an automorphism"
            );
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.circ.mul(a, b);
                for x in 0..n {
                    assert_eq!(
                        perms[ab][x], perms[a][perms[b][x]],
                        "lambda not a homomorphism at ({a},{b})"
                    );
                }
            }
        }
        // Cross-check the two flavors against each other:
        // lam^op_a(b) = a lam_a(b) a^-1.
        for a in 0..n {
            for b in 0..n {
                let std = self.lambda_of(a, b);
                let op = self.lambda_op_of(a, b);
                assert_eq!(op, self.add.conj(a, std), "flavor relation at ({a},{b})");
            }
        }
        LambdaMap { flavor, perms }
    }

    /// Opposite brace: transposed additive table, same circle table.
    pub fn opposite(&self) -> SkewBrace {
        SkewBrace::new(self.add.opposite(), self.circ.clone())
            .expect("opposite of a skew brace is a skew brace")
    }

    /// True iff the additive group is abelian.
    pub fn is_left_brace(&self) -> bool {
        self.add.is_abelian()
    }

    /// True iff `s` is a subgroup normal in both groups and stable under
    /// every `lam_a`.
    pub fn is_ideal(&self, s: &Subset) -> bool {
        let normal_add = matches!(self.add.is_normal(s), Ok(true));
        let normal_circ = matches!(self.circ.is_normal(s), Ok(true));
        if !normal_add || !normal_circ {
            return false;
        }
        (0..self.order()).all(|a| s.iter().all(|&x| s.contains(self.lambda_of(a, x))))
    }

    /// `Fix(lam) = { x : lam_a(x) = x for all a }`.
    pub fn fix_lambda(&self) -> Subset {
        let n = self.order();
        Subset::from_sorted(
            (0..n)
                .filter(|&x| (0..n).all(|a| self.lambda_of(a, x) == x))
                .collect(),
        )
    }

    /// `Ker(lam) = { a : lam_a = id }`.
    pub fn ker_lambda(&self) -> Subset {
        let n = self.order();
        Subset::from_sorted(
            (0..n)
                .filter(|&a| (0..n).all(|b| self.lambda_of(a, b) == b))
                .collect(),
        )
    }

    /// `Fix(lam^op)` and `Ker(lam^op)`, used by the center analysis.
    pub fn fix_lambda_op(&self) -> Subset {
        let n = self.order();
        Subset::from_sorted(
            (0..n)
                .filter(|&x| (0..n).all(|a| self.lambda_op_of(a, x) == x))
                .collect(),
        )
    }

    pub fn ker_lambda_op(&self) -> Subset {
        let n = self.order();
        Subset::from_sorted(
            (0..n)
                .filter(|&a| (0..n).all(|b| self.lambda_op_of(a, b) == b))
                .collect(),
        )
    }

    /// Annihilator `Ker(lam) n Z(A,.) n Fix(lam)`; the equivalent form
    /// with `Z(A,o)` in place of `Fix(lam)` is cross-checked.
    pub fn annihilator(&self) -> Subset {
        let fix_form = self
            .ker_lambda()
            .intersect(&self.add.center())
            .intersect(&self.fix_lambda());
        let circ_form = self
            .ker_lambda()
            .intersect(&self.add.center())
            .intersect(&self.circ.center());
        assert_eq!(fix_form, circ_form, "annihilator forms disagree");
        fix_form
    }

    /// Additive subgroup generated by all `a b a^-1 b^-1` and all
    /// `a lam_b(a^-1)`; verified to be an ideal.
    pub fn commutator_ideal(&self) -> Subset {
        let n = self.order();
        let mut gens = Vec::new();
        let mut seen = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let comm = self.add.commutator(a, b);
                if !seen[comm] {
                    seen[comm] = true;
                    gens.push(comm);
                }
                let twist = self.add.mul(a, self.lambda_of(b, self.add.inv(a)));
                if !seen[twist] {
                    seen[twist] = true;
                    gens.push(twist);
                }
            }
        }
        let ideal = self.add.subgroup_generated(&gens);
        assert!(self.is_ideal(&ideal), "commutator ideal is an ideal");
        ideal
    }

    /// Quotient brace by an ideal. Coset labels are canonical (ascending
    /// minimal member), shared between the two operations.
    pub fn quotient_brace(&self, ideal: &Subset) -> Result<SkewBrace, BraceError> {
        self.quotient_brace_with_maps(ideal)
            .map(|(brace, _, _)| brace)
    }

    /// Quotient brace plus the class map (element to coset index) and
    /// the canonical representatives (coset index to minimal member).
    pub fn quotient_brace_with_maps(
        &self,
        ideal: &Subset,
    ) -> Result<(SkewBrace, Vec<usize>, Vec<usize>), BraceError> {
        if !self.is_ideal(ideal) {
            return Err(BraceError::NotAnIdeal);
        }
        let n = self.order();
        // The two coset spaces coincide for an ideal; check it.
        for a in 0..n {
            let add_coset: Subset =
                Subset::new(ideal.iter().map(|&x| self.add.mul(a, x)).collect());
            let circ_coset: Subset =
                Subset::new(ideal.iter().map(|&x| self.circ.mul(a, x)).collect());
            assert_eq!(add_coset, circ_coset, "cosets split at {a}");
        }
        let mut coset_min = vec![usize::MAX; n];
        let mut mins = Vec::new();
        for g in 0..n {
            if coset_min[g] != usize::MAX {
                continue;
            }
            mins.push(g);
            for &x in ideal.iter() {
                coset_min[self.add.mul(g, x)] = g;
            }
        }
        let mut index_of = vec![usize::MAX; n];
        for (i, &m) in mins.iter().enumerate() {
            index_of[m] = i;
        }
        let q = mins.len();
        let mut add_rows = vec![vec![0usize; q]; q];
        let mut circ_rows = vec![vec![0usize; q]; q];
        for (i, &gi) in mins.iter().enumerate() {
            for (j, &gj) in mins.iter().enumerate() {
                add_rows[i][j] = index_of[coset_min[self.add.mul(gi, gj)]];
                circ_rows[i][j] = index_of[coset_min[self.circ.mul(gi, gj)]];
            }
        }
        let brace = SkewBrace::from_tables(&add_rows, &circ_rows)?;
        let class_of: Vec<usize> = (0..n).map(|g| index_of[coset_min[g]]).collect();
        Ok((brace, class_of, mins))
    }

    /// Restriction to an ideal (or any subset closed as a subgroup under
    /// both operations), re-indexed ascending with 0 first.
    pub fn sub_brace(&self, s: &Subset) -> Result<SkewBrace, BraceError> {
        let (add, members) = self.add.subgroup_as_group(s).map_err(BraceError::Add)?;
        let (circ, members_circ) = self.circ.subgroup_as_group(s).map_err(BraceError::Circ)?;
        debug_assert_eq!(members, members_circ);
        let _ = members;
        SkewBrace::new(add, circ)
    }

    /// Projection of the brace to its quotient by the full set; mostly a
    /// fixture helper.
    pub fn to_file(&self) -> BraceFile {
        BraceFile {
            n: self.order(),
            add: self.add.to_rows(),
            circ: self.circ.to_rows(),
        }
    }

    /// Componentwise direct product of two braces.
    pub fn direct_product(a: &SkewBrace, b: &SkewBrace) -> SkewBrace {
        let add = FiniteGroup::direct_product(&a.add, &b.add);
        let circ = FiniteGroup::direct_product(&a.circ, &b.circ);
        SkewBrace::new(add, circ).expect("direct product of braces is a brace")
    }
}

/// Any group becomes a skew left brace with both operations equal.
pub fn make_trivial_brace(g: &FiniteGroup) -> SkewBrace {
    SkewBrace::new(g.clone(), g.clone()).expect("trivial brace is a brace")
}

/// Radical brace on `Z_{p^n}`: `a . b = a + b`, `a o b = a + b + p^r a b`.
///
/// For odd `p` both groups are cyclic (checked); for `p = 2` the circle
/// group can degenerate, e.g. `(2, 2, 1)` has circle group of exponent 2.
pub fn make_radical_brace(p: usize, n: u32, r: u32, caps: &Caps) -> Result<SkewBrace, BraceError> {
    if !is_prime(p) {
        return Err(BraceError::BadParameters(format!("p = {p} is not prime")));
    }
    if r < 1 || r >= n {
        return Err(BraceError::BadParameters(format!(
            "need 1 <= r < n, got r = {r}, n = {n}"
        )));
    }
    let modulus = p
        .checked_pow(n)
        .ok_or_else(|| BraceError::BadParameters(format!("p^n overflows: {p}^{n}")))?;
    if modulus > caps.radical_order {
        return Err(BraceError::SizeBound {
            required: modulus,
            cap: caps.radical_order,
        });
    }
    let shift = p.pow(r);
    let add_rows: Vec<Vec<usize>> = (0..modulus)
        .map(|a| (0..modulus).map(|b| (a + b) % modulus).collect())
        .collect();
    let circ_rows: Vec<Vec<usize>> = (0..modulus)
        .map(|a| {
            (0..modulus)
                .map(|b| (a + b + shift * a * b) % modulus)
                .collect()
        })
        .collect();
    let brace = SkewBrace::from_tables(&add_rows, &circ_rows)?;
    if p % 2 == 1 {
        assert!(brace.circ.is_cyclic(), "odd-p radical brace is bicyclic");
    }
    Ok(brace)
}

fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn perm_is_automorphism(g: &FiniteGroup, perm: &[usize]) -> bool {
    let n = g.order();
    if perm.len() != n || perm[0] != 0 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in perm {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    for a in 0..n {
        for b in 0..n {
            if perm[g.mul(a, b)] != g.mul(perm[a], perm[b]) {
                return false;
            }
        }
    }
    true
}

/// The lambda map of a brace as an explicit permutation family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMap {
    flavor: LambdaFlavor,
    perms: Vec<Vec<usize>>,
}

impl LambdaMap {
    pub fn flavor(&self) -> LambdaFlavor {
        self.flavor
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.perms[a][b]
    }

    pub fn perm(&self, a: usize) -> &[usize] {
        &self.perms[a]
    }
}

/// A map that is simultaneously a homomorphism for both operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BraceHom {
    image: Vec<usize>,
}

impl BraceHom {
    /// Validates `image` as a brace homomorphism; additive failures are
    /// reported before multiplicative ones, first witness each.
    pub fn new(dom: &SkewBrace, cod: &SkewBrace, image: Vec<usize>) -> Result<Self, BraceError> {
        if image.len() != dom.order() || image.iter().any(|&v| v >= cod.order()) {
            return Err(BraceError::BadParameters("image shape mismatch".into()));
        }
        for a in 0..dom.order() {
            for b in 0..dom.order() {
                if image[dom.add.mul(a, b)] != cod.add.mul(image[a], image[b]) {
                    return Err(BraceError::NotAddHom { a, b });
                }
            }
        }
        for a in 0..dom.order() {
            for b in 0..dom.order() {
                if image[dom.circ.mul(a, b)] != cod.circ.mul(image[a], image[b]) {
                    return Err(BraceError::NotCircHom { a, b });
                }
            }
        }
        Ok(BraceHom { image })
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn image_array(&self) -> &[usize] {
        &self.image
    }

    pub fn is_bijective(&self, cod: &SkewBrace) -> bool {
        if self.image.len() != cod.order() {
            return false;
        }
        let mut seen = vec![false; cod.order()];
        self.image
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn identity(brace: &SkewBrace) -> BraceHom {
        BraceHom {
            image: (0..brace.order()).collect(),
        }
    }
}

/// First simultaneous isomorphism `a -> b` in ascending backtracking
/// order, if any.
pub fn find_brace_isomorphism(a: &SkewBrace, b: &SkewBrace) -> Option<BraceHom> {
    let mut found = None;
    for_each_brace_isomorphism(a, b, |hom| {
        found = Some(hom.clone());
        false
    });
    found
}

/// Enumerates brace isomorphisms `a -> b`; the visitor returns `false`
/// to stop early.
pub fn for_each_brace_isomorphism(
    a: &SkewBrace,
    b: &SkewBrace,
    mut visit: impl FnMut(&BraceHom) -> bool,
) {
    if a.order() != b.order() {
        return;
    }
    let n = a.order();
    // Prune by the multiset of (additive order, circle order) pairs.
    let profile =
        |brace: &SkewBrace, x: usize| (brace.add.element_order(x), brace.circ.element_order(x));
    let mut pa: Vec<_> = (0..n).map(|x| profile(a, x)).collect();
    let mut pb: Vec<_> = (0..n).map(|x| profile(b, x)).collect();
    let profile_a = pa.clone();
    let profile_b = pb.clone();
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return;
    }
    // Generators under the additive group suffice to force the map.
    let gens = a.add.generating_sequence();
    let mut images = Vec::with_capacity(gens.len());
    backtrack_brace_iso(a, b, &gens, &profile_a, &profile_b, &mut images, &mut visit);
}

fn backtrack_brace_iso(
    a: &SkewBrace,
    b: &SkewBrace,
    gens: &[usize],
    profile_a: &[(usize, usize)],
    profile_b: &[(usize, usize)],
    images: &mut Vec<usize>,
    visit: &mut impl FnMut(&BraceHom) -> bool,
) -> bool {
    if images.len() == gens.len() {
        if let Some(map) = extend_brace_map(a, b, gens, images) {
            if map.iter().all(|&v| v != usize::MAX) {
                if let Ok(hom) = BraceHom::new(a, b, map) {
                    if hom.is_bijective(b) {
                        return visit(&hom);
                    }
                }
            }
        }
        return true;
    }
    let g = gens[images.len()];
    for h in 0..b.order() {
        if profile_b[h] != profile_a[g] {
            continue;
        }
        images.push(h);
        let consistent = extend_brace_map(a, b, &gens[..images.len()], images).is_some();
        if consistent && !backtrack_brace_iso(a, b, gens, profile_a, profile_b, images, visit) {
            images.pop();
            return false;
        }
        images.pop();
    }
    true
}

/// Extends generator images through the additive closure, checking both
/// operations on every pair already defined.
fn extend_brace_map(
    a: &SkewBrace,
    b: &SkewBrace,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; b.order()];
    map[0] = 0;
    used[0] = true;
    let mut elems = vec![0usize];
    for (&g, &h) in gens.iter().zip(images.iter()) {
        if map[g] == usize::MAX {
            if used[h] {
                return None;
            }
            map[g] = h;
            used[h] = true;
            elems.push(g);
        } else if map[g] != h {
            return None;
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        let mut j = 0;
        while j < elems.len() {
            let y = elems[j];
            let p = a.add.mul(x, y);
            let q = b.add.mul(map[x], map[y]);
            if map[p] == usize::MAX {
                if used[q] {
                    return None;
                }
                map[p] = q;
                used[q] = true;
                elems.push(p);
            } else if map[p] != q {
                return None;
            }
            // Circle products of defined elements must agree whenever the
            // product is already defined.
            let cp = a.circ.mul(x, y);
            if map[cp] != usize::MAX && map[cp] != b.circ.mul(map[x], map[y]) {
                return None;
            }
            j += 1;
        }
        i += 1;
    }
    Some(map)
}

/// True iff `a` is isomorphic to its opposite brace.
pub fn is_self_opposite(a: &SkewBrace) -> bool {
    find_brace_isomorphism(a, &a.opposite()).is_some()
}

impl From<GroupError> for BraceError {
    fn from(e: GroupError) -> Self {
        BraceError::Add(e)
    }
}

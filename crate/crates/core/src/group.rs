//! Exact finite-group kernel over Cayley tables.
//!
//! A [`FiniteGroup`] is a fully validated multiplication table with the
//! identity pinned at index 0. Everything downstream (braces, lambda
//! groups, character degrees, isoclinism) reduces to table lookups here,
//! so validation is exhaustive: Latin-square scan, identity check and a
//! full `n^3` associativity sweep.

use crate::error::{Axis, GroupError};
use serde::{Deserialize, Serialize};

/// A finite group given by its Cayley table, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    /// Row-major flat table: `table[a * n + b] = a * b`.
    table: Vec<usize>,
    /// Precomputed two-sided inverses.
    inv: Vec<usize>,
}

/// On-disk JSON schema for a group: `{"n": .., "table": [[..], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a square table as a group with identity at index 0.
    ///
    /// Errors name the first witness in scan order: shape and range,
    /// identity row/column, Latin-square property, associativity,
    /// inverses.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NotSquare {
                row: 0,
                len: 0,
                n: 0,
            });
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: a,
                    len: row.len(),
                    n,
                });
            }
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { a, b, value: v, n });
                }
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table)
    }

    /// Builds and validates a group from a multiplication closure.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = mul(a, b);
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { a, b, value: v, n });
                }
                table.push(v);
            }
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        // Identity fixed at index 0.
        for b in 0..n {
            if table[b] != b {
                return Err(GroupError::NoIdentityAtZero { witness: b });
            }
        }
        for a in 0..n {
            if table[a * n] != a {
                return Err(GroupError::NoIdentityAtZero { witness: a });
            }
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let v = table[a * n + b];
                if seen[v] {
                    return Err(GroupError::NotLatin {
                        axis: Axis::Row,
                        index: a,
                    });
                }
                seen[v] = true;
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let v = table[a * n + b];
                if seen[v] {
                    return Err(GroupError::NotLatin {
                        axis: Axis::Col,
                        index: b,
                    });
                }
                seen[v] = true;
            }
        }
        // Full associativity sweep.
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                let row_ab = ab * n;
                let row_a = a * n;
                let row_b = b * n;
                for c in 0..n {
                    if table[row_ab + c] != table[row_a + table[row_b + c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        // Two-sided inverses (exist once the above hold; locate them).
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if table[a * n + b] == 0 && table[b * n + a] == 0 {
                    found = Some(b);
                    break;
                }
            }
            inv[a] = found.ok_or(GroupError::NoInverse { a })?;
        }
        Ok(FiniteGroup { n, table, inv })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a * b * a^-1`.
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv[a])
    }

    /// `a * b * a^-1 * b^-1`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.conj(a, b), self.inv[b])
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, a| lcm(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_witness().is_none()
    }

    fn abelian_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.element_order(a) == self.n)
    }

    /// Rows of the table, for serialization.
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.table[a * self.n..(a + 1) * self.n].to_vec())
            .collect()
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            n: self.n,
            table: self.to_rows(),
        }
    }

    /// Transposed table (the opposite group). Always a valid group.
    pub fn opposite(&self) -> FiniteGroup {
        let n = self.n;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.table[b * n + a];
            }
        }
        FiniteGroup {
            n,
            table,
            inv: self.inv.clone(),
        }
    }

    /// Smallest subgroup containing `gens`, as a sorted index set.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Subset {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut stack: Vec<usize> = vec![0];
        for &g in gens {
            if !member[g] {
                member[g] = true;
                stack.push(g);
            }
        }
        let mut elems = stack.clone();
        // Closure under products with all current elements; inverses come
        // for free in a finite group.
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            let mut j = 0;
            while j < elems.len() {
                let b = elems[j];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !member[p] {
                        member[p] = true;
                        elems.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        elems.sort_unstable();
        Subset::from_sorted(elems)
    }

    pub fn center(&self) -> Subset {
        let members = (0..self.n)
            .filter(|&z| (0..self.n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subset::from_sorted(members)
    }

    /// Subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Subset {
        let mut gens = Vec::new();
        let mut seen = vec![false; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.commutator(a, b);
                if !seen[c] {
                    seen[c] = true;
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    pub fn is_subgroup(&self, s: &Subset) -> Result<(), GroupError> {
        if !s.contains(0) {
            return Err(GroupError::NotASubgroup { a: 0, b: 0 });
        }
        for &a in s.iter() {
            for &b in s.iter() {
                if !s.contains(self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup { a, b });
                }
            }
        }
        Ok(())
    }

    /// Checks `g S g^-1 = S` for all `g`; errors if `s` is not a subgroup.
    pub fn is_normal(&self, s: &Subset) -> Result<bool, GroupError> {
        self.is_subgroup(s)?;
        for g in 0..self.n {
            for &x in s.iter() {
                if !s.contains(self.conj(g, x)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Quotient by a normal subgroup, with the projection map.
    ///
    /// Cosets are labeled by ascending minimal member, so the identity
    /// coset sits at index 0 and the encoding is reproducible.
    pub fn quotient(&self, nsub: &Subset) -> Result<(FiniteGroup, GroupHom), GroupError> {
        if !self.is_normal(nsub)? {
            return Err(GroupError::NotNormal { g: 0, s: 0 });
        }
        let n = self.n;
        let mut coset_min = vec![usize::MAX; n];
        let mut mins = Vec::new();
        for g in 0..n {
            if coset_min[g] != usize::MAX {
                continue;
            }
            // g is the minimal member of its (left = right) coset.
            mins.push(g);
            for &x in nsub.iter() {
                coset_min[self.mul(g, x)] = g;
            }
        }
        // mins is ascending by construction of the scan.
        let mut index_of_min = vec![usize::MAX; n];
        for (i, &m) in mins.iter().enumerate() {
            index_of_min[m] = i;
        }
        let image: Vec<usize> = (0..n).map(|g| index_of_min[coset_min[g]]).collect();
        let q = mins.len();
        let mut table = vec![0; q * q];
        for (i, &gi) in mins.iter().enumerate() {
            for (j, &gj) in mins.iter().enumerate() {
                table[i * q + j] = image[self.mul(gi, gj)];
            }
        }
        let quotient = FiniteGroup::from_flat(q, table)?;
        let hom = GroupHom::new(self, &quotient, image)?;
        Ok((quotient, hom))
    }

    /// Conjugacy classes in canonical order (ascending minimal member).
    pub fn conjugacy_classes(&self) -> ConjugacyData {
        let n = self.n;
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            let mut size = 0;
            for x in 0..n {
                let c = self.conj(x, g);
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        let inverse_class = reps.iter().map(|&r| class_of[self.inv[r]]).collect();
        ConjugacyData {
            class_of,
            reps,
            sizes,
            inverse_class,
        }
    }

    /// Number of conjugacy classes.
    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().reps.len()
    }

    /// External semidirect product `N x| H` for an action of `H` on `N`
    /// by automorphisms. Pairs are encoded as `(a, b) -> a * |H| + b`,
    /// identity `(0,0) -> 0`, with multiplication
    /// `(a1,b1)(a2,b2) = (a1 * act[b1](a2), b1 * b2)`.
    pub fn semidirect_product(
        n_grp: &FiniteGroup,
        h_grp: &FiniteGroup,
        act: &[Vec<usize>],
    ) -> Result<FiniteGroup, GroupError> {
        let nn = n_grp.n;
        let nh = h_grp.n;
        if act.len() != nh {
            return Err(GroupError::LengthMismatch {
                len: act.len(),
                n: nh,
            });
        }
        for (h, perm) in act.iter().enumerate() {
            if !is_automorphism(n_grp, perm) {
                return Err(GroupError::NotAutomorphism { h });
            }
        }
        for h1 in 0..nh {
            for h2 in 0..nh {
                let composed = h_grp.mul(h1, h2);
                if (0..nn).any(|x| act[composed][x] != act[h1][act[h2][x]]) {
                    return Err(GroupError::NotActionHom { h1, h2 });
                }
            }
        }
        let order = nn * nh;
        let mut table = vec![0; order * order];
        for a1 in 0..nn {
            for b1 in 0..nh {
                let i = a1 * nh + b1;
                for a2 in 0..nn {
                    let twisted = act[b1][a2];
                    let left = n_grp.mul(a1, twisted);
                    for b2 in 0..nh {
                        let j = a2 * nh + b2;
                        table[i * order + j] = left * nh + h_grp.mul(b1, b2);
                    }
                }
            }
        }
        FiniteGroup::from_flat(order, table)
    }

    /// Direct product with the same pair encoding as `semidirect_product`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let trivial_act: Vec<Vec<usize>> = (0..h.n).map(|_| (0..g.n).collect()).collect();
        // Trivial action is always valid; unwrap is safe.
        FiniteGroup::semidirect_product(g, h, &trivial_act).expect("direct product")
    }

    /// Extracts a subgroup as a standalone group, re-indexed over the
    /// ascending member list (identity 0 stays at index 0). Returns the
    /// group together with the member list mapping new to old indices.
    pub fn subgroup_as_group(&self, s: &Subset) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        self.is_subgroup(s)?;
        let members = s.members().to_vec();
        let mut old_to_new = vec![usize::MAX; self.n];
        for (i, &m) in members.iter().enumerate() {
            old_to_new[m] = i;
        }
        let k = members.len();
        let mut table = vec![0; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * k + j] = old_to_new[self.mul(a, b)];
            }
        }
        Ok((FiniteGroup::from_flat(k, table)?, members))
    }

    /// Every subgroup, found by closing generator sets breadth-first.
    /// Intended for small groups (fixtures and ideal scans).
    pub fn all_subgroups(&self) -> Vec<Subset> {
        use std::collections::BTreeSet;
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = self.subgroup_generated(&[]);
        let mut queue = vec![trivial.members().to_vec()];
        found.insert(queue[0].clone());
        while let Some(current) = queue.pop() {
            let sub = Subset::from_sorted(current.clone());
            for g in 0..self.n {
                if sub.contains(g) {
                    continue;
                }
                let mut gens = current.clone();
                gens.push(g);
                let bigger = self.subgroup_generated(&gens);
                if found.insert(bigger.members().to_vec()) {
                    queue.push(bigger.members().to_vec());
                }
            }
        }
        found.into_iter().map(Subset::from_sorted).collect()
    }

    /// Invariant-factor decomposition of an abelian group, by repeated
    /// extraction of a maximal-order element. Returned orders satisfy
    /// `d[i+1] | d[i]`.
    pub fn abelian_invariants(&self) -> Result<Vec<usize>, GroupError> {
        if let Some((a, b)) = self.abelian_witness() {
            return Err(GroupError::NotAbelian { a, b });
        }
        let mut invariants = Vec::new();
        let mut current = self.clone();
        while current.n > 1 {
            let g = (0..current.n)
                .max_by_key(|&x| (current.element_order(x), std::cmp::Reverse(x)))
                .unwrap();
            invariants.push(current.element_order(g));
            let cyclic = current.subgroup_generated(&[g]);
            let (q, _) = current.quotient(&cyclic)?;
            current = q;
        }
        Ok(invariants)
    }

    /// Deterministic generating sequence: repeatedly adjoin the element
    /// of maximal order (smallest index on ties) outside the closure.
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut closure = self.subgroup_generated(&[]);
        while closure.len() < self.n {
            let g = (0..self.n)
                .filter(|&x| !closure.contains(x))
                .max_by_key(|&x| (self.element_order(x), std::cmp::Reverse(x)))
                .unwrap();
            gens.push(g);
            closure = self.subgroup_generated(&gens);
        }
        gens
    }

    /// First isomorphism onto `other` under ascending backtracking order,
    /// if one exists. Pruned by element orders; absence is a value.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<GroupHom> {
        let mut result = None;
        self.for_each_isomorphism(other, |iso| {
            result = Some(iso.clone());
            false
        });
        result
    }

    /// Per-element invariant used to prune isomorphism candidates:
    /// element order and centralizer size.
    fn element_profiles(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .map(|a| {
                let centralizer = (0..self.n)
                    .filter(|&x| self.mul(a, x) == self.mul(x, a))
                    .count();
                (self.element_order(a), centralizer)
            })
            .collect()
    }

    /// Enumerates isomorphisms onto `other` in ascending backtracking
    /// order, invoking `visit` for each; stop by returning `false`.
    pub fn for_each_isomorphism(
        &self,
        other: &FiniteGroup,
        mut visit: impl FnMut(&GroupHom) -> bool,
    ) {
        if self.n != other.n {
            return;
        }
        let order_of = self.element_profiles();
        let order_of_other = other.element_profiles();
        let mut mine = order_of.clone();
        let mut theirs = order_of_other.clone();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs {
            return;
        }
        let gens = self.generating_sequence();
        let mut images = Vec::with_capacity(gens.len());
        self.backtrack_iso(
            other,
            &gens,
            &order_of,
            &order_of_other,
            &mut images,
            &mut visit,
        );
    }

    fn backtrack_iso(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        order_of: &[(usize, usize)],
        order_of_other: &[(usize, usize)],
        images: &mut Vec<usize>,
        visit: &mut impl FnMut(&GroupHom) -> bool,
    ) -> bool {
        if images.len() == gens.len() {
            if let Some(map) = self.extend_partial_map(other, gens, images) {
                if map.iter().all(|&v| v != usize::MAX) {
                    let mut seen = vec![false; self.n];
                    if map.iter().all(|&v| !std::mem::replace(&mut seen[v], true)) {
                        let hom = GroupHom { image: map };
                        return visit(&hom);
                    }
                }
            }
            return true;
        }
        let g = gens[images.len()];
        for h in 0..other.n {
            if order_of_other[h] != order_of[g] {
                continue;
            }
            images.push(h);
            let consistent = self
                .extend_partial_map(other, &gens[..images.len()], images)
                .is_some();
            if consistent
                && !self.backtrack_iso(other, gens, order_of, order_of_other, images, visit)
            {
                images.pop();
                return false;
            }
            images.pop();
        }
        true
    }

    /// Extends `gens[i] -> images[i]` to the subgroup generated so far.
    /// Returns the partial map (usize::MAX where undefined), or None on a
    /// homomorphism or injectivity contradiction.
    fn extend_partial_map(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
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
            let a = elems[i];
            let mut j = 0;
            while j < elems.len() {
                let b = elems[j];
                let p = self.mul(a, b);
                let q = other.mul(map[a], map[b]);
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
                j += 1;
            }
            i += 1;
        }
        Some(map)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn is_automorphism(g: &FiniteGroup, perm: &[usize]) -> bool {
    if perm.len() != g.n || perm[0] != 0 {
        return false;
    }
    let mut seen = vec![false; g.n];
    for &v in perm {
        if v >= g.n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    for a in 0..g.n {
        for b in 0..g.n {
            if perm[g.mul(a, b)] != g.mul(perm[a], perm[b]) {
                return false;
            }
        }
    }
    true
}

/// A sorted, duplicate-free set of element indices inside some group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subset {
    members: Vec<usize>,
}

impl Subset {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subset { members }
    }

    pub fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subset { members }
    }

    pub fn trivial() -> Self {
        Subset { members: vec![0] }
    }

    pub fn full(n: usize) -> Self {
        Subset {
            members: (0..n).collect(),
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.members.iter()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn intersect(&self, other: &Subset) -> Subset {
        Subset::from_sorted(
            self.members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }
}

/// A validated homomorphism between two groups, stored as the image array
/// over domain indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GroupHom {
    image: Vec<usize>,
}

impl GroupHom {
    /// Validates `image` as a homomorphism `dom -> cod`.
    pub fn new(
        dom: &FiniteGroup,
        cod: &FiniteGroup,
        image: Vec<usize>,
    ) -> Result<Self, GroupError> {
        hom_check(dom, cod, &image)?;
        Ok(GroupHom { image })
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    pub fn image_array(&self) -> &[usize] {
        &self.image
    }

    pub fn is_bijective(&self, cod: &FiniteGroup) -> bool {
        if self.image.len() != cod.order() {
            return false;
        }
        let mut seen = vec![false; cod.order()];
        self.image
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn kernel(&self) -> Subset {
        Subset::from_sorted(
            (0..self.image.len())
                .filter(|&a| self.image[a] == 0)
                .collect(),
        )
    }

    pub fn image_set(&self) -> Subset {
        Subset::new(self.image.clone())
    }

    /// `other` after `self` (so `self: A -> B`, `other: B -> C`).
    pub fn compose(
        &self,
        other: &GroupHom,
        dom: &FiniteGroup,
        mid: &FiniteGroup,
        cod: &FiniteGroup,
    ) -> Result<GroupHom, GroupError> {
        if self.image.len() != dom.order() || other.image.len() != mid.order() {
            return Err(GroupError::LengthMismatch {
                len: self.image.len(),
                n: dom.order(),
            });
        }
        let image = self.image.iter().map(|&v| other.image[v]).collect();
        GroupHom::new(dom, cod, image)
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> Result<GroupHom, GroupError> {
        if !self.is_bijective(cod) {
            return Err(GroupError::NotBijective { value: 0 });
        }
        let mut image = vec![0; cod.order()];
        for (a, &v) in self.image.iter().enumerate() {
            image[v] = a;
        }
        GroupHom::new(cod, dom, image)
    }
}

/// Checks the homomorphism law plus identity preservation; first witness
/// in lexicographic order.
pub fn hom_check(dom: &FiniteGroup, cod: &FiniteGroup, image: &[usize]) -> Result<(), GroupError> {
    if image.len() != dom.order() {
        return Err(GroupError::LengthMismatch {
            len: image.len(),
            n: dom.order(),
        });
    }
    if image.iter().any(|&v| v >= cod.order()) {
        return Err(GroupError::EntryOutOfRange {
            a: 0,
            b: 0,
            value: *image.iter().find(|&&v| v >= cod.order()).unwrap(),
            n: cod.order(),
        });
    }
    if image[0] != 0 {
        return Err(GroupError::IdentityNotFixed);
    }
    for a in 0..dom.order() {
        for b in 0..dom.order() {
            if image[dom.mul(a, b)] != cod.mul(image[a], image[b]) {
                return Err(GroupError::NotHomomorphism { a, b });
            }
        }
    }
    Ok(())
}

/// A validated action of a group on `[0, m)` by permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    m: usize,
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(group: &FiniteGroup, m: usize, perms: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if perms.len() != group.order() {
            return Err(GroupError::LengthMismatch {
                len: perms.len(),
                n: group.order(),
            });
        }
        for perm in &perms {
            if perm.len() != m {
                return Err(GroupError::BadPermutation { len: perm.len(), m });
            }
            let mut seen = vec![false; m];
            for &v in perm {
                if v >= m || std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::BadPermutation { len: perm.len(), m });
                }
            }
        }
        if (0..m).any(|x| perms[0][x] != x) {
            return Err(GroupError::IdentityNotFixed);
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..m).any(|x| perms[gh][x] != perms[g][perms[h][x]]) {
                    return Err(GroupError::NotActionHom { h1: g, h2: h });
                }
            }
        }
        Ok(GroupAction { m, perms })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    /// Orbit partition with canonical (ascending minimal member) order.
    pub fn orbits(&self) -> Vec<Subset> {
        let mut orbit_of = vec![usize::MAX; self.m];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.m {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![x];
            orbit_of[x] = id;
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                for perm in &self.perms {
                    let z = perm[y];
                    if orbit_of[z] == usize::MAX {
                        orbit_of[z] = id;
                        members.push(z);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits.into_iter().map(Subset::from_sorted).collect()
    }

    /// Points fixed by every permutation in the action.
    pub fn fixed_points(&self) -> Subset {
        Subset::from_sorted(
            (0..self.m)
                .filter(|&x| self.perms.iter().all(|p| p[x] == x))
                .collect(),
        )
    }

    /// Elements acting as the identity permutation.
    pub fn kernel(&self) -> Subset {
        Subset::from_sorted(
            (0..self.perms.len())
                .filter(|&g| (0..self.m).all(|x| self.perms[g][x] == x))
                .collect(),
        )
    }
}

/// Conjugacy data: class index per element, canonical representatives,
/// sizes and the inverse-class involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyData {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub inverse_class: Vec<usize>,
}

impl ConjugacyData {
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn z(n: usize) -> FiniteGroup {
        corpus::cyclic(n)
    }

    #[test]
    fn validates_cyclic_group() {
        let g = z(4);
        assert_eq!(g.order(), 4);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.mul(2, 3), 1);
    }

    #[test]
    fn rejects_duplicate_row_entry() {
        let mut rows = z(4).to_rows();
        rows[1][1] = 1; // duplicates 1 in row 1
        let err = FiniteGroup::from_rows(&rows).unwrap_err();
        assert!(matches!(
            err,
            GroupError::NotLatin {
                axis: Axis::Row,
                index: 1
            }
        ));
    }

    #[test]
    fn rejects_misplaced_identity() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        let err = FiniteGroup::from_rows(&rows).unwrap_err();
        assert!(matches!(err, GroupError::NoIdentityAtZero { .. }));
    }

    #[test]
    fn rejects_nonassociative_latin_square() {
        // Order-5 Latin square with identity at 0 that is not a group
        // (no associative quasigroup structure on this arrangement).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        let err = FiniteGroup::from_rows(&rows).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }));
    }

    #[test]
    fn validates_s3_via_permutation_oracle() {
        // Oracle: compose the six permutations of three points directly
        // and index the products back into the listed order.
        let s3 = corpus::sym3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
    }

    #[test]
    fn subgroup_generated_examples() {
        let g = z(4);
        assert_eq!(g.subgroup_generated(&[2]).members(), &[0, 2]);
        let s3 = corpus::sym3();
        assert_eq!(s3.subgroup_generated(&[1]).members(), &[0, 1]);
        assert_eq!(s3.subgroup_generated(&[1, 2]).len(), 6);
    }

    #[test]
    fn lagrange_on_generated_subgroups() {
        for g in [
            z(12),
            corpus::sym3(),
            corpus::dihedral4(),
            corpus::quaternion8(),
        ] {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let sub = g.subgroup_generated(&[a, b]);
                    assert_eq!(g.order() % sub.len(), 0);
                }
            }
        }
    }

    #[test]
    fn center_and_derived_of_s3() {
        let s3 = corpus::sym3();
        assert_eq!(s3.center().members(), &[0]);
        // A3 = {e, (123), (132)} sits at indices {0, 4, 5} in our order.
        assert_eq!(s3.derived_subgroup().members(), &[0, 4, 5]);
    }

    #[test]
    fn normality_checks() {
        let s3 = corpus::sym3();
        let a3 = s3.derived_subgroup();
        assert!(s3.is_normal(&a3).unwrap());
        let flip = s3.subgroup_generated(&[1]);
        assert!(!s3.is_normal(&flip).unwrap());
        let not_closed = Subset::new(vec![0, 1, 2]);
        assert!(s3.is_normal(&not_closed).is_err());
    }

    #[test]
    fn quotient_examples() {
        let g = z(4);
        let (q, pi) = g.quotient(&g.subgroup_generated(&[2])).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(pi.kernel().members(), &[0, 2]);

        let s3 = corpus::sym3();
        let (q, pi) = s3.quotient(&s3.derived_subgroup()).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(pi.kernel().len(), 3);

        let (q, _) = g.quotient(&Subset::full(4)).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_projection_is_surjective_with_kernel_n() {
        for g in [corpus::dihedral4(), corpus::quaternion8()] {
            for nsub in g.all_subgroups() {
                if !g.is_normal(&nsub).unwrap() {
                    continue;
                }
                let (q, pi) = g.quotient(&nsub).unwrap();
                assert_eq!(pi.image_set().len(), q.order());
                assert_eq!(pi.kernel(), nsub);
            }
        }
    }

    #[test]
    fn conjugacy_classes_examples() {
        let g = z(4);
        let data = g.conjugacy_classes();
        assert_eq!(data.count(), 4);
        assert!(data.sizes.iter().all(|&s| s == 1));

        let s3 = corpus::sym3();
        let data = s3.conjugacy_classes();
        assert_eq!(data.count(), 3);
        assert_eq!(data.sizes, vec![1, 3, 2]);
        assert_eq!(data.class_of[0], 0);
        // sum of sizes = order, each divides order
        assert_eq!(data.sizes.iter().sum::<usize>(), 6);
        assert!(data.sizes.iter().all(|&s| 6 % s == 0));
        // inverse_class is an involution
        for (i, &j) in data.inverse_class.iter().enumerate() {
            assert_eq!(data.inverse_class[j], i);
        }

        let prod = FiniteGroup::direct_product(&s3, &s3);
        assert_eq!(prod.conjugacy_classes().count(), 9);
    }

    #[test]
    fn semidirect_z3_z2_is_s3() {
        let z3 = z(3);
        let z2 = z(2);
        let act = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let g = FiniteGroup::semidirect_product(&z3, &z2, &act).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.find_isomorphism(&corpus::sym3()).is_some());
    }

    #[test]
    fn semidirect_trivial_action_is_direct_product() {
        let z2 = z(2);
        let act = vec![vec![0, 1], vec![0, 1]];
        let semi = FiniteGroup::semidirect_product(&z2, &z2, &act).unwrap();
        let direct = FiniteGroup::direct_product(&z2, &z2);
        assert_eq!(semi, direct);
        assert_eq!(semi.element_order(1), 2);
        assert_eq!(semi.element_order(2), 2);
        assert_eq!(semi.element_order(3), 2);
    }

    #[test]
    fn semidirect_z4_z4_mod_16() {
        // act[b]: x -> (1 + 2b) x mod 4
        let z4 = z(4);
        let act: Vec<Vec<usize>> = (0..4)
            .map(|b| (0..4).map(|x| (1 + 2 * b) * x % 4).collect())
            .collect();
        let g = FiniteGroup::semidirect_product(&z4, &z4, &act).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.derived_subgroup().len(), 2);
    }

    #[test]
    fn semidirect_rejects_bad_action() {
        let z4 = z(4);
        let z2 = z(2);
        let not_auto = vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]];
        assert!(matches!(
            FiniteGroup::semidirect_product(&z4, &z2, &not_auto),
            Err(GroupError::NotAutomorphism { h: 1 })
        ));
        let z3 = z(3);
        let not_hom = vec![vec![0, 2, 1], vec![0, 1, 2]];
        assert!(matches!(
            FiniteGroup::semidirect_product(&z3, &z2, &not_hom),
            Err(GroupError::NotActionHom { .. })
        ));
    }

    #[test]
    fn isomorphism_search_examples() {
        let z4 = z(4);
        let klein = corpus::klein4();
        assert!(z4.find_isomorphism(&klein).is_none());

        let z6 = z(6);
        let z2xz3 = FiniteGroup::direct_product(&z(2), &z(3));
        let iso = z6.find_isomorphism(&z2xz3).unwrap();
        assert!(iso.is_bijective(&z2xz3));

        assert!(corpus::sym3().find_isomorphism(&z6).is_none());
    }

    #[test]
    fn isomorphism_success_is_symmetric() {
        let pool = [
            z(8),
            corpus::dihedral4(),
            corpus::quaternion8(),
            corpus::klein4(),
        ];
        for g in &pool {
            for h in &pool {
                assert_eq!(
                    g.find_isomorphism(h).is_some(),
                    h.find_isomorphism(g).is_some()
                );
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let z4 = z(4);
        let trivial = GroupAction::new(&z4, 4, vec![(0..4).collect::<Vec<_>>(); 4]).unwrap();
        assert_eq!(trivial.orbits().len(), 4);

        // Conjugation action of S3 on itself has the conjugacy classes
        // as orbits.
        let s3 = corpus::sym3();
        let perms: Vec<Vec<usize>> = (0..6)
            .map(|g| (0..6).map(|x| s3.conj(g, x)).collect())
            .collect();
        let act = GroupAction::new(&s3, 6, perms).unwrap();
        assert_eq!(act.orbits().len(), 3);
    }

    #[test]
    fn action_validation_rejects_bad_data() {
        let z4 = z(4);
        let id: Vec<usize> = (0..3).collect();
        // wrong permutation length
        let err = GroupAction::new(
            &z4,
            3,
            vec![vec![0, 1], vec![0, 1, 2], id.clone(), id.clone()],
        );
        assert!(matches!(err, Err(GroupError::BadPermutation { .. })));
        // not a permutation
        let err = GroupAction::new(
            &z4,
            3,
            vec![vec![0, 0, 1], id.clone(), id.clone(), id.clone()],
        );
        assert!(matches!(err, Err(GroupError::BadPermutation { .. })));
        // identity must act trivially
        let err = GroupAction::new(
            &z4,
            3,
            vec![vec![1, 0, 2], id.clone(), id.clone(), id.clone()],
        );
        assert!(matches!(err, Err(GroupError::IdentityNotFixed)));
        // not compatible with the group law
        let swap = vec![1usize, 0, 2];
        let err = GroupAction::new(&z4, 3, vec![id.clone(), swap, id.clone(), id]);
        assert!(matches!(err, Err(GroupError::NotActionHom { .. })));
    }

    #[test]
    fn abelian_invariants_examples() {
        assert_eq!(z(12).abelian_invariants().unwrap(), vec![12]);
        let k4 = corpus::klein4();
        assert_eq!(k4.abelian_invariants().unwrap(), vec![2, 2]);
        let g = FiniteGroup::direct_product(&z(2), &z(4));
        assert_eq!(g.abelian_invariants().unwrap(), vec![4, 2]);
        assert!(corpus::sym3().abelian_invariants().is_err());
    }

    #[test]
    fn exponent_and_orders() {
        assert_eq!(z(6).exponent(), 6);
        assert_eq!(corpus::klein4().exponent(), 2);
        assert_eq!(corpus::sym3().exponent(), 6);
        assert_eq!(corpus::quaternion8().exponent(), 4);
    }

    #[test]
    fn hom_composition_and_inverse() {
        let z6 = z(6);
        let z3 = z(3);
        let z2xz3 = FiniteGroup::direct_product(&z(2), &z(3));
        let iso = z6.find_isomorphism(&z2xz3).unwrap();
        let back = iso.inverse(&z6, &z2xz3).unwrap();
        let round = iso.compose(&back, &z6, &z2xz3, &z6).unwrap();
        assert_eq!(round.image_array(), (0..6).collect::<Vec<_>>());

        let reduce = GroupHom::new(&z6, &z3, vec![0, 1, 2, 0, 1, 2]).unwrap();
        let lift = back.compose(&reduce, &z2xz3, &z6, &z3).unwrap();
        assert_eq!(lift.kernel().len(), 2);
        assert!(GroupHom::new(&z6, &z3, vec![0, 1, 0, 1, 0, 1]).is_err());
    }

    #[test]
    fn subgroup_as_group_reindexes_with_identity_first() {
        let s3 = corpus::sym3();
        let a3 = s3.derived_subgroup();
        let (g, members) = s3.subgroup_as_group(&a3).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(members, vec![0, 4, 5]);
        assert!(g.is_cyclic());
    }
}

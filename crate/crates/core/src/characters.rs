//! Exact irreducible character degrees over a prime field.
//!
//! The engine recovers the multiset of complex irreducible character
//! degrees of a finite group without ever leaving exact arithmetic.
//! Class multiplication coefficients are assembled from the Cayley
//! table, the commuting class matrices are simultaneously diagonalized
//! over a prime field `F_q` with `q = 1 (mod exponent)` and
//! `q > 2 sqrt(|G|)`, and each degree is read off the normalized common
//! eigenvector. The choice of `q`, the order in which class matrices are
//! applied, and the ordering of eigenvalues inside a split are all
//! pinned, so identical inputs yield identical outputs.

use crate::brace::{make_radical_brace, LambdaFlavor, SkewBrace};
use crate::caps::Caps;
use crate::error::{CharError, CheckError};
use crate::group::{ConjugacyData, FiniteGroup, GroupAction};
use crate::lambda::LambdaGroup;
use crate::report::Report;
use serde_json::json;
use std::collections::BTreeSet;

/// Sorted degrees with multiplicities, validated against the counting
/// identities they must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMultiset {
    pairs: Vec<(u64, usize)>,
}

impl DegreeMultiset {
    /// Validates a raw degree list: the squares sum to the group order,
    /// the linear count equals the abelianization order, the total count
    /// equals the class number, and prime-power groups only see
    /// prime-power degrees.
    pub fn validated(
        mut raw: Vec<u64>,
        group: &FiniteGroup,
        classes: &ConjugacyData,
    ) -> Result<Self, CharError> {
        raw.sort_unstable();
        let n = group.order() as u64;
        let square_sum: u64 = raw.iter().map(|&d| d * d).sum();
        if square_sum != n {
            return Err(CharError::SolverInvariant(format!(
                "sum of degree squares {square_sum} != order {n}"
            )));
        }
        if raw.len() != classes.count() {
            return Err(CharError::SolverInvariant(format!(
                "{} degrees for {} classes",
                raw.len(),
                classes.count()
            )));
        }
        let linear = raw.iter().filter(|&&d| d == 1).count();
        let derived = group.derived_subgroup();
        let expected_linear = group.order() / derived.len();
        if linear != expected_linear {
            return Err(CharError::SolverInvariant(format!(
                "{linear} linear degrees, expected {expected_linear}"
            )));
        }
        if let Some(p) = prime_power_base(group.order()) {
            if raw.iter().any(|&d| !is_power_of(d, p)) {
                return Err(CharError::SolverInvariant(format!(
                    "degree not a power of {p} in a {p}-group"
                )));
            }
        }
        let mut pairs: Vec<(u64, usize)> = Vec::new();
        for d in raw {
            match pairs.last_mut() {
                Some((deg, mult)) if *deg == d => *mult += 1,
                _ => pairs.push((d, 1)),
            }
        }
        Ok(DegreeMultiset { pairs })
    }

    pub fn pairs(&self) -> &[(u64, usize)] {
        &self.pairs
    }

    pub fn count_of(&self, degree: u64) -> usize {
        self.pairs
            .iter()
            .find(|(d, _)| *d == degree)
            .map_or(0, |(_, m)| *m)
    }

    pub fn distinct(&self) -> BTreeSet<u64> {
        self.pairs.iter().map(|(d, _)| *d).collect()
    }

    pub fn total(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }
}

/// Full result of a degree computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    pub order: usize,
    pub class_count: usize,
    pub multiset: DegreeMultiset,
    pub prime_q: u64,
}

fn prime_power_base(n: usize) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut m = n as u64;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return if m == 1 { Some(p) } else { None };
        }
        p += 1;
    }
    Some(m)
}

fn is_power_of(mut d: u64, p: u64) -> bool {
    while d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `q = 1 (mod modulus)` with `q^2 > 4 n`.
pub fn dixon_prime(modulus: u64, n: u64) -> Result<u64, CharError> {
    let bound = 1u64 << 40;
    let mut q = modulus + 1;
    while q < bound {
        if q * q > 4 * n && is_prime_u64(q) {
            return Ok(q);
        }
        q += modulus;
    }
    Err(CharError::NoSuitablePrime {
        modulus,
        lower: 4 * n,
    })
}

fn mod_pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, q: u64) -> u64 {
    mod_pow(a, q - 2, q)
}

/// Exact multiset of complex irreducible character degrees.
pub fn character_degrees(group: &FiniteGroup, caps: &Caps) -> Result<DegreeTable, CharError> {
    let n = group.order();
    if n > caps.char_order {
        return Err(CharError::SizeCap {
            required: n,
            cap: caps.char_order,
        });
    }
    let classes = group.conjugacy_classes();
    let k = classes.count();
    let exponent = group.exponent() as u64;
    let q = dixon_prime(exponent, n as u64)?;

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for g in 0..n {
        members[classes.class_of[g]].push(g);
    }

    let eigenvectors = split_class_algebra(group, &classes, &members, k, q)?;

    // Degree recovery: normalize v so the identity-class coordinate is 1;
    // then omega_i = h_i v_{i*} and
    // d^2 = |G| (sum_i omega_i omega_{i*} / h_i)^{-1} in F_q, with the
    // unique integer root below sqrt(|G|).
    let mut degrees = Vec::with_capacity(k);
    let sqrt_bound = (1u64..)
        .take_while(|d| d * d <= n as u64)
        .last()
        .unwrap_or(1);
    for v in eigenvectors {
        if v[0] == 0 {
            return Err(CharError::SolverInvariant(
                "eigenvector vanishes on the identity class".into(),
            ));
        }
        let scale = mod_inv(v[0], q);
        let v: Vec<u64> = v.iter().map(|&c| c * scale % q).collect();
        let mut s = 0u64;
        for i in 0..k {
            let istar = classes.inverse_class[i];
            let h = classes.sizes[i] as u64 % q;
            let omega_i = h * v[istar] % q;
            let omega_istar = h * v[i] % q;
            s = (s + omega_i * omega_istar % q * mod_inv(h, q)) % q;
        }
        if s == 0 {
            return Err(CharError::SolverInvariant("vanishing norm sum".into()));
        }
        let d_sq = (n as u64 % q) * mod_inv(s, q) % q;
        let degree = (1..=sqrt_bound)
            .find(|&d| d * d % q == d_sq)
            .ok_or_else(|| CharError::SolverInvariant(format!("no degree with d^2 = {d_sq}")))?;
        degrees.push(degree);
    }

    let multiset = DegreeMultiset::validated(degrees, group, &classes)?;
    Ok(DegreeTable {
        order: n,
        class_count: k,
        multiset,
        prime_q: q,
    })
}

/// Splits the standard module of the class algebra into common
/// eigenlines, applying class matrices in ascending class order and
/// ordering eigenvalues ascending within each split.
fn split_class_algebra(
    group: &FiniteGroup,
    classes: &ConjugacyData,
    members: &[Vec<usize>],
    k: usize,
    q: u64,
) -> Result<Vec<Vec<u64>>, CharError> {
    let mut subspaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(k)];
    for i in 1..k {
        if subspaces.iter().all(|b| b.len() == 1) {
            break;
        }
        let matrix = class_matrix(group, classes, members, i, k, q);
        let mut next = Vec::with_capacity(subspaces.len());
        for basis in subspaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let restricted = restrict(&matrix, &basis, q)?;
            let poly = charpoly(&restricted, q);
            let roots: Vec<u64> = (0..q).filter(|&x| eval_poly(&poly, x, q) == 0).collect();
            let mut split_dim = 0;
            for &root in &roots {
                let mut shifted = restricted.clone();
                for (r, row) in shifted.iter_mut().enumerate() {
                    row[r] = (row[r] + q - root) % q;
                }
                let kernel = kernel_basis(&shifted, q);
                if kernel.is_empty() {
                    continue;
                }
                split_dim += kernel.len();
                let lifted: Vec<Vec<u64>> = kernel
                    .iter()
                    .map(|coords| {
                        let mut vec = vec![0u64; k];
                        for (t, &c) in coords.iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            for (col, slot) in vec.iter_mut().enumerate() {
                                *slot = (*slot + c * basis[t][col]) % q;
                            }
                        }
                        vec
                    })
                    .collect();
                let (reduced, _) = rref(lifted, q);
                next.push(reduced);
            }
            if split_dim != basis.len() {
                return Err(CharError::SolverInvariant(format!(
                    "class matrix {i} not diagonalizable on a {}-dim block",
                    basis.len()
                )));
            }
        }
        subspaces = next;
    }
    if subspaces.iter().any(|b| b.len() != 1) {
        return Err(CharError::SolverInvariant(
            "common eigenspaces not one-dimensional after all class matrices".into(),
        ));
    }
    Ok(subspaces
        .into_iter()
        .map(|mut b| b.pop().unwrap())
        .collect())
}

fn identity_basis(k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| {
            let mut row = vec![0u64; k];
            row[i] = 1;
            row
        })
        .collect()
}

/// Class matrix of class `i`: entry `[l][j]` counts pairs
/// `(x, y) in C_i x C_j` with `x y = z_l` for the fixed representative
/// `z_l` of class `l`.
fn class_matrix(
    group: &FiniteGroup,
    classes: &ConjugacyData,
    members: &[Vec<usize>],
    i: usize,
    k: usize,
    q: u64,
) -> Vec<Vec<u64>> {
    let mut matrix = vec![vec![0u64; k]; k];
    for &x in &members[i] {
        let xinv = group.inv(x);
        for l in 0..k {
            let y = group.mul(xinv, classes.reps[l]);
            let j = classes.class_of[y];
            matrix[l][j] = (matrix[l][j] + 1) % q;
        }
    }
    matrix
}

/// Matrix of the action restricted to the row space of `basis` (kept in
/// reduced row echelon form), as an operator on basis coordinates:
/// entry `[s][t]` is the s-th coordinate of the image of basis vector t.
fn restrict(matrix: &[Vec<u64>], basis: &[Vec<u64>], q: u64) -> Result<Vec<Vec<u64>>, CharError> {
    let k = matrix.len();
    let m = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&c| c != 0).expect("nonzero basis row"))
        .collect();
    let mut restricted = vec![vec![0u64; m]; m];
    for (t, row) in basis.iter().enumerate() {
        // image = matrix . b_t (as a column vector), written back as a row
        let mut image = vec![0u64; k];
        for (l, mrow) in matrix.iter().enumerate() {
            let mut acc = 0u64;
            for (j, &c) in mrow.iter().enumerate() {
                if c != 0 {
                    acc = (acc + c * row[j]) % q;
                }
            }
            image[l] = acc;
        }
        let mut residual = image;
        for (s, &p) in pivots.iter().enumerate() {
            let c = residual[p] % q;
            restricted[s][t] = c;
            if c != 0 {
                for (col, slot) in residual.iter_mut().enumerate() {
                    *slot = (*slot + q - c * basis[s][col] % q) % q;
                }
            }
        }
        if residual.iter().any(|&c| c != 0) {
            return Err(CharError::SolverInvariant(
                "class matrix does not preserve an invariant subspace".into(),
            ));
        }
    }
    Ok(restricted)
}

/// Characteristic polynomial over `F_q` via Hessenberg reduction;
/// coefficients ascending, monic.
fn charpoly(matrix: &[Vec<u64>], q: u64) -> Vec<u64> {
    let k = matrix.len();
    let mut h: Vec<Vec<u64>> = matrix.to_vec();
    for j in 0..k.saturating_sub(2) {
        let pivot = ((j + 1)..k).find(|&i| h[i][j] != 0);
        let Some(p) = pivot else { continue };
        if p != j + 1 {
            h.swap(p, j + 1);
            for row in h.iter_mut() {
                row.swap(p, j + 1);
            }
        }
        let pinv = mod_inv(h[j + 1][j], q);
        for i in (j + 2)..k {
            let f = h[i][j] * pinv % q;
            if f == 0 {
                continue;
            }
            for c in 0..k {
                let sub = f * h[j + 1][c] % q;
                h[i][c] = (h[i][c] + q - sub) % q;
            }
            for r in 0..k {
                h[r][j + 1] = (h[r][j + 1] + f * h[r][i]) % q;
            }
        }
    }
    // det(xI - H) for Hessenberg H by the principal-minor recurrence.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=k {
        let mut poly = vec![0u64; m + 1];
        let diag = h[m - 1][m - 1] % q;
        for (deg, &c) in polys[m - 1].iter().enumerate() {
            poly[deg + 1] = (poly[deg + 1] + c) % q;
            poly[deg] = (poly[deg] + q - diag * c % q) % q;
        }
        let mut sub_prod = 1u64;
        for i in 1..m {
            sub_prod = sub_prod * h[m - i][m - i - 1] % q;
            if sub_prod == 0 {
                break;
            }
            let coeff = h[m - 1 - i][m - 1] * sub_prod % q;
            if coeff == 0 {
                continue;
            }
            for (deg, &c) in polys[m - 1 - i].iter().enumerate() {
                poly[deg] = (poly[deg] + q - coeff * c % q) % q;
            }
        }
        polys.push(poly);
    }
    polys.pop().unwrap()
}

fn eval_poly(poly: &[u64], x: u64, q: u64) -> u64 {
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = (acc * x + c) % q;
    }
    acc
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
fn rref(mut rows: Vec<Vec<u64>>, q: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = mod_inv(rows[rank][col], q);
        for c in rows[rank].iter_mut() {
            *c = *c * inv % q;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..cols {
                    let sub = f * rows[rank][c] % q;
                    rows[r][c] = (rows[r][c] + q - sub) % q;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Canonical kernel basis (one vector per free column, RREF order).
fn kernel_basis(matrix: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let cols = matrix.first().map_or(0, |r| r.len());
    let (rows, pivots) = rref(matrix.to_vec(), q);
    let mut pivot_set = vec![false; cols];
    for &p in &pivots {
        pivot_set[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = (q - rows[r][free] % q) % q;
        }
        basis.push(v);
    }
    basis
}

/// `|G : G'|`, the number of one-dimensional characters.
pub fn linear_character_count(group: &FiniteGroup) -> usize {
    group.order() / group.derived_subgroup().len()
}

/// Distinct irreducible degrees of a group.
pub fn ird_group(group: &FiniteGroup, caps: &Caps) -> Result<BTreeSet<u64>, CharError> {
    Ok(character_degrees(group, caps)?.multiset.distinct())
}

/// Distinct irreducible degrees of a skew brace: the degrees of its
/// opposite-flavor lambda group. The containment of the circle group's
/// degree set is asserted along the way.
pub fn ird(brace: &SkewBrace, caps: &Caps) -> Result<BTreeSet<u64>, CheckError> {
    let lg = LambdaGroup::build(brace, LambdaFlavor::Opposite, caps)?;
    let lambda_degrees = character_degrees(lg.group(), caps)?.multiset.distinct();
    let circ_degrees = character_degrees(brace.circ(), caps)?.multiset.distinct();
    if !circ_degrees.is_subset(&lambda_degrees) {
        return Err(crate::error::PropertyViolation::new(
            "ird_containment",
            format!("circle degrees {circ_degrees:?} not within {lambda_degrees:?}"),
        )
        .into());
    }
    Ok(lambda_degrees)
}

/// An integer class function (fixed-point counts and friends).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<i64>,
}

/// Fixed points of the action per conjugacy class, evaluated at the
/// class representatives.
pub fn permutation_character(classes: &ConjugacyData, action: &GroupAction) -> ClassFunction {
    let values = classes
        .reps
        .iter()
        .map(|&rep| {
            (0..action.degree())
                .filter(|&x| action.apply(rep, x) == x)
                .count() as i64
        })
        .collect();
    ClassFunction { values }
}

/// The regular representation of the lambda group decomposes over the
/// additive and circle axes into `|A|` copies of the respective regular
/// representations. Verified permutation-exactly, block by block, plus
/// the permutation-character identities.
pub fn regular_decomposition_check(lg: &LambdaGroup) -> Result<Report, CheckError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    let brace = lg.brace();
    let add = brace.add();
    let circ = brace.circ();
    let n = brace.order();
    let big = lg.group().order();
    let mut report = Report::new();

    // beta side: left multiplication by (a, 1) fixes the y-coordinate
    // and is left-regular on each block.
    let mut beta_blocks = true;
    'beta: for a in 0..n {
        let code = lg.idx(a, 0);
        for x in 0..n {
            for y in 0..n {
                let image = lg.group().mul(code, lg.idx(x, y));
                if image != lg.idx(add.mul(a, x), y) {
                    beta_blocks = false;
                    break 'beta;
                }
            }
        }
    }
    report.require("beta_regular_blocks", beta_blocks, || json!(null))?;

    // rho side: left multiplication by (1, b) permutes the blocks by
    // lam^op_b and acts as the same circle-left-regular map inside every
    // block.
    let mut rho_blocks = true;
    'rho: for b in 0..n {
        let code = lg.idx(0, b);
        for x in 0..n {
            let target_block = brace.lambda_op_of(b, x);
            for y in 0..n {
                let image = lg.group().mul(code, lg.idx(x, y));
                if image != lg.idx(target_block, circ.mul(b, y)) {
                    rho_blocks = false;
                    break 'rho;
                }
            }
        }
    }
    report.require("rho_regular_blocks", rho_blocks, || json!(null))?;

    // Permutation characters: both restrictions carry the character of
    // |A| copies of the corresponding regular representation.
    let beta_perms: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let code = lg.idx(a, 0);
            (0..big).map(|g| lg.group().mul(code, g)).collect()
        })
        .collect();
    let beta_action = GroupAction::new(add, big, beta_perms)?;
    let add_classes = add.conjugacy_classes();
    let beta_char = permutation_character(&add_classes, &beta_action);
    let reg_add: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|x| add.mul(a, x)).collect())
        .collect();
    let reg_add_char = permutation_character(&add_classes, &GroupAction::new(add, n, reg_add)?);
    let beta_ok = beta_char
        .values
        .iter()
        .zip(reg_add_char.values.iter())
        .all(|(&lhs, &rhs)| lhs == (n as i64) * rhs);
    report.require(
        "beta_character_multiplicity",
        beta_ok,
        || json!({"beta": beta_char.values, "regular": reg_add_char.values}),
    )?;

    let rho_perms: Vec<Vec<usize>> = (0..n)
        .map(|b| {
            let code = lg.idx(0, b);
            (0..big).map(|g| lg.group().mul(code, g)).collect()
        })
        .collect();
    let rho_action = GroupAction::new(circ, big, rho_perms)?;
    let circ_classes = circ.conjugacy_classes();
    let rho_char = permutation_character(&circ_classes, &rho_action);
    let reg_circ: Vec<Vec<usize>> = (0..n)
        .map(|b| (0..n).map(|y| circ.mul(b, y)).collect())
        .collect();
    let reg_circ_char = permutation_character(&circ_classes, &GroupAction::new(circ, n, reg_circ)?);
    let rho_ok = rho_char
        .values
        .iter()
        .zip(reg_circ_char.values.iter())
        .all(|(&lhs, &rhs)| lhs == (n as i64) * rhs);
    report.require(
        "rho_character_multiplicity",
        rho_ok,
        || json!({"rho": rho_char.values, "regular": reg_circ_char.values}),
    )?;

    report.note("block_count", json!(n));
    Ok(report)
}

/// The metacyclic presentation `< a, b | a^{p^n} = b^{p^n} = 1,
/// b^-1 a b = a^{1+p^r} >` as an explicit table on pair codes
/// `a^i b^j -> i * p^n + j`.
pub fn metacyclic_presentation(p: usize, n: u32, r: u32) -> FiniteGroup {
    let modulus = p.pow(n);
    let unit = (1 + p.pow(r)) % modulus;
    // inv_unit = unit^-1 mod p^n, so conjugation by b comes out as the
    // stated relation.
    let mut inv_unit = 1;
    let mut power = unit;
    while power != 1 {
        inv_unit = inv_unit * unit % modulus;
        power = power * unit % modulus;
    }
    let mut powers = vec![1usize; modulus];
    for j in 1..modulus {
        powers[j] = powers[j - 1] * inv_unit % modulus;
    }
    FiniteGroup::from_fn(modulus * modulus, |g1, g2| {
        let (i1, j1) = (g1 / modulus, g1 % modulus);
        let (i2, j2) = (g2 / modulus, g2 % modulus);
        let i = (i1 + i2 * powers[j1]) % modulus;
        let j = (j1 + j2) % modulus;
        i * modulus + j
    })
    .expect("metacyclic presentation")
}

/// Degrees of the lambda group of the radical brace of order `p^2`:
/// `p^3` linear characters plus `p^2 - p` of degree `p`.
pub fn example_suite_p2(p: usize, caps: &Caps) -> Result<Report, CheckError> {
    let brace = make_radical_brace(p, 2, 1, caps)?;
    let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, caps)?;
    let mut report = Report::new();
    let derived = lg.group().derived_subgroup();
    report.require("lambda_derived_order_p", derived.len() == p, || {
        json!(derived.len())
    })?;
    let table = character_degrees(lg.group(), caps)?;
    let p64 = p as u64;
    report.note(
        "degrees",
        json!(table
            .multiset
            .pairs()
            .iter()
            .map(|&(d, m)| vec![d as usize, m])
            .collect::<Vec<_>>()),
    );
    report.require(
        "linear_count",
        table.multiset.count_of(1) == p * p * p,
        || json!(table.multiset.count_of(1)),
    )?;
    report.require(
        "degree_p_count",
        table.multiset.count_of(p64) == p * p - p,
        || json!(table.multiset.count_of(p64)),
    )?;
    report.require(
        "degree_set",
        table.multiset.distinct() == BTreeSet::from([1, p64]),
        || {
            json!(table
                .multiset
                .distinct()
                .iter()
                .copied()
                .collect::<Vec<_>>())
        },
    )?;
    Ok(report)
}

/// Bicyclic suite for odd `p`: the lambda group of the radical brace
/// `(p, n, r)` matches the metacyclic presentation, has `p^{n+r}` linear
/// characters, and its degree set is `{1, p, ..., p^{n-r}}`.
pub fn example_suite_bicyclic(p: usize, n: u32, r: u32, caps: &Caps) -> Result<Report, CheckError> {
    assert!(p % 2 == 1 && p > 1, "bicyclic suite requires odd p");
    let brace = make_radical_brace(p, n, r, caps)?;
    let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, caps)?;
    let mut report = Report::new();

    let table = character_degrees(lg.group(), caps)?;
    let expected_linear = p.pow(n + r);
    report.require(
        "linear_count_p_n_plus_r",
        table.multiset.count_of(1) == expected_linear,
        || json!({"got": table.multiset.count_of(1), "expected": expected_linear}),
    )?;
    let expected_set: BTreeSet<u64> = (0..=(n - r)).map(|e| (p as u64).pow(e)).collect();
    report.require(
        "degree_set_powers",
        table.multiset.distinct() == expected_set,
        || {
            json!(table
                .multiset
                .distinct()
                .iter()
                .copied()
                .collect::<Vec<_>>())
        },
    )?;

    let presentation = metacyclic_presentation(p, n, r);
    report.require(
        "metacyclic_presentation_isomorphic",
        lg.group().find_isomorphism(&presentation).is_some(),
        || json!({"order": presentation.order()}),
    )?;
    report.note("lambda_order", json!(lg.group().order()));
    Ok(report)
}

/// All linear characters of a group, as exponent vectors modulo the
/// exponent of the abelianization. Returns `(modulus, characters)`.
pub fn linear_characters(group: &FiniteGroup) -> (usize, Vec<Vec<usize>>) {
    let derived = group.derived_subgroup();
    let (ab, projection) = group
        .quotient(&derived)
        .expect("derived subgroup is normal");
    let m = ab.exponent();
    let gens = ab.generating_sequence();
    let orders: Vec<usize> = gens.iter().map(|&g| ab.element_order(g)).collect();
    let mut characters = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'enumerate: loop {
        if let Some(values) = extend_character(&ab, &gens, &choice, m) {
            characters.push(values);
        }
        let mut idx = 0;
        loop {
            if idx == gens.len() {
                break 'enumerate;
            }
            choice[idx] += 1;
            if choice[idx] < orders[idx] {
                break;
            }
            choice[idx] = 0;
            idx += 1;
        }
    }
    assert_eq!(characters.len(), ab.order(), "linear character count");
    let pulled = characters
        .iter()
        .map(|vals| {
            (0..group.order())
                .map(|g| vals[projection.apply(g)])
                .collect()
        })
        .collect();
    (m, pulled)
}

fn extend_character(
    ab: &FiniteGroup,
    gens: &[usize],
    choice: &[usize],
    m: usize,
) -> Option<Vec<usize>> {
    let n = ab.order();
    let mut values = vec![usize::MAX; n];
    values[0] = 0;
    let mut elems = vec![0usize];
    for (&g, &c) in gens.iter().zip(choice.iter()) {
        let step = m / ab.element_order(g);
        let value = c * step % m;
        if values[g] == usize::MAX {
            values[g] = value;
            elems.push(g);
        } else if values[g] != value {
            return None;
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i];
        let mut j = 0;
        while j < elems.len() {
            let b = elems[j];
            let p = ab.mul(a, b);
            let v = (values[a] + values[b]) % m;
            if values[p] == usize::MAX {
                values[p] = v;
                elems.push(p);
            } else if values[p] != v {
                return None;
            }
            j += 1;
        }
        i += 1;
    }
    if values.contains(&usize::MAX) {
        return None;
    }
    Some(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::make_trivial_brace;
    use crate::corpus;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn charpoly_of_known_matrices() {
        // diag(2, 3) mod 7: (x-2)(x-3) = x^2 + 2x + 6 mod 7
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(charpoly(&m, 7), vec![6, 2, 1]);
        // companion of x^2 + 1 mod 5
        let c = vec![vec![0, 4], vec![1, 0]];
        assert_eq!(charpoly(&c, 5), vec![1, 0, 1]);
        // triangular: (x-1)(x-2)(x-3) = x^3 + x^2 + 4x + 1 mod 7
        let t = vec![vec![1, 5, 0], vec![0, 2, 0], vec![0, 0, 3]];
        assert_eq!(charpoly(&t, 7), vec![1, 4, 1, 1]);
    }

    #[test]
    fn kernel_basis_is_canonical() {
        // x + 2y + 3z = 0 over F_5
        let m = vec![vec![1, 2, 3]];
        let basis = kernel_basis(&m, 5);
        assert_eq!(basis, vec![vec![3, 1, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn dixon_prime_selection() {
        assert_eq!(dixon_prime(6, 6).unwrap(), 7);
        assert_eq!(dixon_prime(4, 16).unwrap(), 13);
        assert_eq!(dixon_prime(27, 729).unwrap(), 109);
    }

    #[test]
    fn degrees_of_abelian_groups() {
        let table = character_degrees(&corpus::cyclic(1), &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 1)]);
        let table = character_degrees(&corpus::cyclic(4), &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 4)]);
        let table = character_degrees(&corpus::klein4(), &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 4)]);
    }

    #[test]
    fn degrees_of_s3_and_products() {
        let s3 = corpus::sym3();
        let table = character_degrees(&s3, &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 2), (2, 1)]);

        let prod = FiniteGroup::direct_product(&s3, &s3);
        let table = character_degrees(&prod, &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 4), (2, 4), (4, 1)]);

        let mixed = FiniteGroup::direct_product(&corpus::cyclic(2), &s3);
        let table = character_degrees(&mixed, &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 4), (2, 2)]);
    }

    #[test]
    fn degrees_of_d4_and_q8() {
        for g in [corpus::dihedral4(), corpus::quaternion8()] {
            let table = character_degrees(&g, &caps()).unwrap();
            assert_eq!(table.multiset.pairs(), &[(1, 4), (2, 1)]);
        }
    }

    #[test]
    fn degrees_of_textbook_groups() {
        // S4: degrees 1, 1, 2, 3, 3
        let s4 = corpus::sym(4);
        let table = character_degrees(&s4, &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 2), (2, 1), (3, 2)]);
        // A4: degrees 1, 1, 1, 3
        let (a4, _) = s4.subgroup_as_group(&s4.derived_subgroup()).unwrap();
        assert_eq!(a4.order(), 12);
        let table = character_degrees(&a4, &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 3), (3, 1)]);
        // D6 (order 12): degrees 1, 1, 1, 1, 2, 2
        let z6 = corpus::cyclic(6);
        let inversion: Vec<usize> = (0..6).map(|x| (6 - x) % 6).collect();
        let act = vec![(0..6).collect::<Vec<_>>(), inversion];
        let d6 = FiniteGroup::semidirect_product(&z6, &corpus::cyclic(2), &act).unwrap();
        let table = character_degrees(&d6, &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 4), (2, 2)]);
        // S5: degrees 1, 1, 4, 4, 5, 5, 6
        let s5 = corpus::sym(5);
        let table = character_degrees(&s5, &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 2), (4, 2), (5, 2), (6, 1)]);
    }

    #[test]
    fn degrees_of_b212_lambda() {
        let brace = make_radical_brace(2, 2, 1, &caps()).unwrap();
        let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
        let table = character_degrees(lg.group(), &caps()).unwrap();
        assert_eq!(table.multiset.pairs(), &[(1, 8), (2, 2)]);
        assert_eq!(table.class_count, 10);
        assert_eq!(linear_character_count(lg.group()), 8);
    }

    #[test]
    fn degrees_of_product_brace_lambda_at_order_256() {
        // Lambda of a product brace is the product of the lambda groups,
        // so the degree multiset is the pairwise product multiset.
        let b212 = make_radical_brace(2, 2, 1, &caps()).unwrap();
        let product =
            crate::brace::SkewBrace::direct_product(&b212, &make_trivial_brace(&corpus::cyclic(4)));
        let lg = LambdaGroup::build(&product, LambdaFlavor::Opposite, &caps()).unwrap();
        assert_eq!(lg.group().order(), 256);
        let table = character_degrees(lg.group(), &caps()).unwrap();
        // {1 x 8, 2 x 2} times {1 x 16}
        assert_eq!(table.multiset.pairs(), &[(1, 128), (2, 32)]);
    }

    #[test]
    fn solver_is_deterministic() {
        let g = FiniteGroup::direct_product(&corpus::sym3(), &corpus::cyclic(2));
        let a = character_degrees(&g, &caps()).unwrap();
        let b = character_degrees(&g, &caps()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ird_examples() {
        let brace = make_radical_brace(2, 2, 1, &caps()).unwrap();
        assert_eq!(ird(&brace, &caps()).unwrap(), BTreeSet::from([1, 2]));
        let brace = make_radical_brace(3, 2, 1, &caps()).unwrap();
        assert_eq!(ird(&brace, &caps()).unwrap(), BTreeSet::from([1, 3]));
        let trivial = make_trivial_brace(&corpus::klein4());
        assert_eq!(ird(&trivial, &caps()).unwrap(), BTreeSet::from([1]));
    }

    #[test]
    fn permutation_character_examples() {
        let s3 = corpus::sym3();
        let classes = s3.conjugacy_classes();
        // natural action on three points, matching the corpus ordering
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![2, 1, 0],
            vec![0, 2, 1],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        let action = GroupAction::new(&s3, 3, perms).unwrap();
        assert_eq!(
            permutation_character(&classes, &action).values,
            vec![3, 1, 0]
        );

        let reg: Vec<Vec<usize>> = (0..6)
            .map(|g| (0..6).map(|x| s3.mul(g, x)).collect())
            .collect();
        let action = GroupAction::new(&s3, 6, reg).unwrap();
        assert_eq!(
            permutation_character(&classes, &action).values,
            vec![6, 0, 0]
        );

        let triv: Vec<Vec<usize>> = vec![(0..4).collect(); 6];
        let action = GroupAction::new(&s3, 4, triv).unwrap();
        assert_eq!(
            permutation_character(&classes, &action).values,
            vec![4, 4, 4]
        );
    }

    #[test]
    fn regular_decomposition_on_small_braces() {
        for brace in [
            make_trivial_brace(&corpus::cyclic(2)),
            make_radical_brace(2, 2, 1, &caps()).unwrap(),
            make_trivial_brace(&corpus::sym3()),
        ] {
            let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps()).unwrap();
            let report = regular_decomposition_check(&lg).unwrap();
            assert!(report.all_hold());
        }
    }

    #[test]
    fn example_suite_at_p2() {
        let report = example_suite_p2(2, &caps()).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn metacyclic_presentation_small() {
        let g = metacyclic_presentation(3, 2, 1);
        assert_eq!(g.order(), 81);
        assert!(!g.is_abelian());
        // b^-1 a b = a^4 with a = (1, 0) and b = (0, 1)
        let a = 9;
        let b = 1;
        let conj = g.mul(g.mul(g.inv(b), a), b);
        assert_eq!(conj, 4 * 9);
    }

    #[test]
    fn linear_characters_examples() {
        let (m, chars) = linear_characters(&corpus::sym3());
        assert_eq!(m, 2);
        assert_eq!(chars.len(), 2);
        let (m, chars) = linear_characters(&corpus::klein4());
        assert_eq!(m, 2);
        assert_eq!(chars.len(), 4);
        let g = corpus::cyclic(6);
        let (m, chars) = linear_characters(&g);
        assert_eq!(m, 6);
        assert_eq!(chars.len(), 6);
        for chi in &chars {
            for a in 0..6 {
                for b in 0..6 {
                    assert_eq!(chi[g.mul(a, b)], (chi[a] + chi[b]) % m);
                }
            }
        }
    }

    #[test]
    fn size_cap_enforced() {
        let tight = Caps {
            char_order: 4,
            ..Caps::default()
        };
        assert!(matches!(
            character_degrees(&corpus::sym3(), &tight),
            Err(CharError::SizeCap {
                required: 6,
                cap: 4
            })
        ));
    }
}

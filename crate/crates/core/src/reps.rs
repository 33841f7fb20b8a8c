//! Representation triples of a skew brace with exact matrix entries.
//!
//! A triple couples a matrix family for the additive group with one for
//! the circle group through the twisted conjugation relation
//! `beta(lam^op_a(b)) = rho(a) beta(b) rho(a)^-1`, checked exhaustively
//! with the inverse eliminated (`beta(lam^op_a(b)) rho(a) = rho(a)
//! beta(b)`). Everything lives over `Z[zeta_m]`, so equality of
//! representations and characters is literal.

use crate::brace::{BraceHom, LambdaFlavor, SkewBrace};
use crate::caps::Caps;
use crate::cyclotomic::{CycInt, CycMatrix, CycRing};
use crate::error::RepError;
use crate::group::{FiniteGroup, Subset};
use crate::lambda::LambdaGroup;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A validated representation triple of a skew brace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceRep {
    brace: SkewBrace,
    ring: CycRing,
    d: usize,
    beta: Vec<CycMatrix>,
    rho: Vec<CycMatrix>,
}

/// On-disk JSON schema for a representation fixture. Matrix entries are
/// cyclotomic coordinate vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepFile {
    pub d: usize,
    pub m: usize,
    pub beta: BTreeMap<String, Vec<Vec<Vec<i64>>>>,
    pub rho: BTreeMap<String, Vec<Vec<Vec<i64>>>>,
}

impl BraceRep {
    /// Validates the two matrix families and the compatibility relation.
    /// Additive failures are reported first, then multiplicative ones,
    /// then relation failures, each with the lexicographically first
    /// witness.
    pub fn validated(
        brace: &SkewBrace,
        m: usize,
        beta: Vec<CycMatrix>,
        rho: Vec<CycMatrix>,
    ) -> Result<Self, RepError> {
        let n = brace.order();
        if beta.len() != n || rho.len() != n {
            return Err(RepError::Shape(format!(
                "expected {n} matrices per family, got {} and {}",
                beta.len(),
                rho.len()
            )));
        }
        let d = beta.first().map_or(0, |m| m.dim());
        if d == 0 || beta.iter().chain(rho.iter()).any(|mat| mat.dim() != d) {
            return Err(RepError::Shape("inconsistent matrix dimensions".into()));
        }
        let ring = CycRing::new(m);
        let identity = CycMatrix::identity(d, &ring);
        if beta[0] != identity {
            return Err(RepError::IdentityNotIdentity { index: 0 });
        }
        if rho[0] != identity {
            return Err(RepError::IdentityNotIdentity { index: 0 });
        }
        for a in 0..n {
            for b in 0..n {
                if beta[brace.add().mul(a, b)] != beta[a].mul(&beta[b], &ring) {
                    return Err(RepError::NotAddHom { a, b });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if rho[brace.circ().mul(a, b)] != rho[a].mul(&rho[b], &ring) {
                    return Err(RepError::NotCircHom { a, b });
                }
            }
        }
        // beta(lam^op_a(b)) rho(a) = rho(a) beta(b); rho(a) is invertible
        // with explicit inverse rho(a-dagger), so this is the relation.
        for a in 0..n {
            for b in 0..n {
                let lhs = beta[brace.lambda_op_of(a, b)].mul(&rho[a], &ring);
                let rhs = rho[a].mul(&beta[b], &ring);
                if lhs != rhs {
                    return Err(RepError::RelationViolation { a, b });
                }
            }
        }
        Ok(BraceRep {
            brace: brace.clone(),
            ring,
            d,
            beta,
            rho,
        })
    }

    pub fn brace(&self) -> &SkewBrace {
        &self.brace
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn conductor(&self) -> usize {
        self.ring.conductor()
    }

    pub fn ring(&self) -> &CycRing {
        &self.ring
    }

    pub fn beta(&self, a: usize) -> &CycMatrix {
        &self.beta[a]
    }

    pub fn rho(&self, a: usize) -> &CycMatrix {
        &self.rho[a]
    }

    /// Serializes to the fixture schema.
    pub fn to_fixture(&self) -> RepFile {
        let encode = |mats: &[CycMatrix]| {
            mats.iter()
                .enumerate()
                .map(|(idx, mat)| {
                    let rows: Vec<Vec<Vec<i64>>> = (0..self.d)
                        .map(|i| {
                            (0..self.d)
                                .map(|j| mat.entry(i, j).coeffs().to_vec())
                                .collect()
                        })
                        .collect();
                    (idx.to_string(), rows)
                })
                .collect::<BTreeMap<_, _>>()
        };
        RepFile {
            d: self.d,
            m: self.ring.conductor(),
            beta: encode(&self.beta),
            rho: encode(&self.rho),
        }
    }

    /// Loads and re-validates a fixture against a brace.
    pub fn from_fixture(brace: &SkewBrace, file: &RepFile) -> Result<Self, RepError> {
        let ring = CycRing::new(file.m);
        let decode =
            |raw: &BTreeMap<String, Vec<Vec<Vec<i64>>>>| -> Result<Vec<CycMatrix>, RepError> {
                let mut mats = vec![None; brace.order()];
                for (key, rows) in raw {
                    let idx: usize = key
                        .parse()
                        .map_err(|_| RepError::Shape(format!("bad element key {key}")))?;
                    if idx >= brace.order() {
                        return Err(RepError::Shape(format!("element {idx} out of range")));
                    }
                    let mut entries = Vec::with_capacity(file.d * file.d);
                    if rows.len() != file.d {
                        return Err(RepError::Shape("row count mismatch".into()));
                    }
                    for row in rows {
                        if row.len() != file.d {
                            return Err(RepError::Shape("column count mismatch".into()));
                        }
                        for coeffs in row {
                            let value = ring
                                .from_coeffs(coeffs.clone())
                                .ok_or_else(|| RepError::Shape("bad coordinate length".into()))?;
                            entries.push(value);
                        }
                    }
                    mats[idx] = CycMatrix::from_entries(file.d, entries);
                }
                mats.into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| RepError::Shape("missing element matrix".into()))
            };
        let beta = decode(&file.beta)?;
        let rho = decode(&file.rho)?;
        BraceRep::validated(brace, file.m, beta, rho)
    }
}

/// A validated matrix representation of a lambda group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRepFamily {
    ring: CycRing,
    d: usize,
    mats: Vec<CycMatrix>,
}

impl GroupRepFamily {
    /// Validates a family as a homomorphism of the group.
    pub fn validated(
        group: &FiniteGroup,
        m: usize,
        mats: Vec<CycMatrix>,
    ) -> Result<Self, RepError> {
        let n = group.order();
        if mats.len() != n {
            return Err(RepError::Shape(format!(
                "{} matrices for order {n}",
                mats.len()
            )));
        }
        let d = mats.first().map_or(0, |m| m.dim());
        if d == 0 || mats.iter().any(|m| m.dim() != d) {
            return Err(RepError::Shape("inconsistent matrix dimensions".into()));
        }
        let ring = CycRing::new(m);
        if mats[0] != CycMatrix::identity(d, &ring) {
            return Err(RepError::IdentityNotIdentity { index: 0 });
        }
        for g in 0..n {
            for h in 0..n {
                if mats[group.mul(g, h)] != mats[g].mul(&mats[h], &ring) {
                    return Err(RepError::NotGroupHom { g, h });
                }
            }
        }
        Ok(GroupRepFamily { ring, d, mats })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn ring(&self) -> &CycRing {
        &self.ring
    }

    pub fn matrix(&self, g: usize) -> &CycMatrix {
        &self.mats[g]
    }

    pub fn matrices(&self) -> &[CycMatrix] {
        &self.mats
    }
}

/// `phi(a, b) = beta(a) rho(b)`, validated as a representation of the
/// lambda group.
pub fn to_group_rep(rep: &BraceRep, lg: &LambdaGroup) -> Result<GroupRepFamily, RepError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    assert_eq!(lg.brace(), rep.brace());
    let n = rep.brace.order();
    let mut mats = vec![CycMatrix::identity(rep.d, &rep.ring); n * n];
    for a in 0..n {
        for b in 0..n {
            mats[lg.idx(a, b)] = rep.beta[a].mul(&rep.rho[b], &rep.ring);
        }
    }
    GroupRepFamily::validated(lg.group(), rep.ring.conductor(), mats)
}

/// Slices a lambda-group representation back into a brace representation
/// via `beta(a) = phi(a, 1)`, `rho(b) = phi(1, b)`, and checks that the
/// round trip reproduces `phi`.
pub fn from_group_rep(lg: &LambdaGroup, phi: &GroupRepFamily) -> Result<BraceRep, RepError> {
    assert_eq!(lg.flavor(), LambdaFlavor::Opposite);
    let brace = lg.brace();
    let n = brace.order();
    let beta: Vec<CycMatrix> = (0..n).map(|a| phi.matrix(lg.idx(a, 0)).clone()).collect();
    let rho: Vec<CycMatrix> = (0..n).map(|b| phi.matrix(lg.idx(0, b)).clone()).collect();
    let rep = BraceRep::validated(brace, phi.ring.conductor(), beta, rho)?;
    let round = to_group_rep(&rep, lg)?;
    if &round != phi {
        return Err(RepError::Internal(
            "round trip does not reproduce phi".into(),
        ));
    }
    Ok(rep)
}

/// `|A/A'| * |(A,o)/(A,o)'|`, the one-dimensional representation count
/// of the brace.
pub fn one_dim_rep_count(brace: &SkewBrace) -> usize {
    let a_prime = brace.commutator_ideal();
    let circ_prime = brace.circ().derived_subgroup();
    (brace.order() / a_prime.len()) * (brace.order() / circ_prime.len())
}

/// Exact irreducibility test: the character norm
/// `(1/|L|) sum_g chi(g) chi(g^-1)` must be 1. For `d <= 3` the verdict
/// is cross-checked by an invariant-subspace search over a splitting
/// prime field; the two routes must agree.
pub fn is_irreducible(rep: &BraceRep, lg: &LambdaGroup, caps: &Caps) -> Result<bool, RepError> {
    let order = lg.group().order();
    let points = rep.d * order;
    if points > caps.rep_points {
        return Err(RepError::SizeCap {
            required: points,
            cap: caps.rep_points,
        });
    }
    let phi = to_group_rep(rep, lg)?;
    let ring = phi.ring();
    let traces: Vec<CycInt> = (0..order).map(|g| phi.matrix(g).trace(ring)).collect();
    let mut norm = ring.zero();
    for g in 0..order {
        let product = ring.mul(&traces[g], &traces[lg.group().inv(g)]);
        norm = ring.add(&norm, &product);
    }
    let norm_one = norm == ring.from_int(order as i64);

    if rep.d > 1 && rep.d <= 3 {
        let reducible = has_invariant_subspace_mod_p(rep, lg)?;
        if norm_one == reducible {
            return Err(RepError::Internal(format!(
                "character norm and subspace search disagree (norm_one = {norm_one})"
            )));
        }
    }
    Ok(norm_one)
}

/// Invariant-subspace search after reduction modulo a splitting prime
/// `p = 1 (mod lcm(m, exponent))`: a proper invariant subspace exists
/// mod p exactly when one exists in characteristic zero.
fn has_invariant_subspace_mod_p(rep: &BraceRep, lg: &LambdaGroup) -> Result<bool, RepError> {
    let m = rep.ring.conductor();
    let exponent = lg.group().exponent();
    let modulus = lcm(m.max(1), exponent) as u64;
    let p = splitting_prime(modulus)?;
    let omega = element_of_order(m as u64, p)?;

    let n = rep.brace.order();
    let mut family: Vec<Vec<Vec<u64>>> = Vec::with_capacity(2 * n);
    for a in 0..n {
        family.push(rep.beta[a].eval_mod(&rep.ring, omega, p));
        family.push(rep.rho[a].eval_mod(&rep.ring, omega, p));
    }
    let d = rep.d;
    if has_common_eigenline(&family, d, p) {
        return Ok(true);
    }
    if d == 3 {
        let transposed: Vec<Vec<Vec<u64>>> = family
            .iter()
            .map(|mat| {
                (0..d)
                    .map(|i| (0..d).map(|j| mat[j][i]).collect())
                    .collect()
            })
            .collect();
        if has_common_eigenline(&transposed, d, p) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn splitting_prime(modulus: u64) -> Result<u64, RepError> {
    let mut q = modulus + 1;
    loop {
        if q > 1 << 24 {
            return Err(RepError::Internal(format!(
                "no splitting prime mod {modulus}"
            )));
        }
        if q > 2 && is_prime(q) {
            return Ok(q);
        }
        q += modulus;
    }
}

fn is_prime(n: u64) -> bool {
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

fn element_of_order(m: u64, p: u64) -> Result<u64, RepError> {
    if m <= 1 {
        return Ok(1);
    }
    let prime_divisors: Vec<u64> = {
        let mut divisors = Vec::new();
        let mut rest = m;
        let mut f = 2;
        while f * f <= rest {
            if rest.is_multiple_of(f) {
                divisors.push(f);
                while rest.is_multiple_of(f) {
                    rest /= f;
                }
            }
            f += 1;
        }
        if rest > 1 {
            divisors.push(rest);
        }
        divisors
    };
    let pow = |base: u64, mut exp: u64| -> u64 {
        let mut acc = 1u64;
        let mut b = base % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc
    };
    for w in 2..p {
        if pow(w, m) == 1 && prime_divisors.iter().all(|&f| pow(w, m / f) != 1) {
            return Ok(w);
        }
    }
    Err(RepError::Internal(format!(
        "no element of order {m} mod {p}"
    )))
}

/// Searches for a line fixed by every matrix in the family.
fn has_common_eigenline(family: &[Vec<Vec<u64>>], d: usize, p: u64) -> bool {
    let mut line = vec![0u64; d];
    for lead in 0..d {
        line.iter_mut().for_each(|c| *c = 0);
        line[lead] = 1;
        if scan_lines(family, &mut line, lead + 1, d, p) {
            return true;
        }
    }
    false
}

fn scan_lines(family: &[Vec<Vec<u64>>], line: &mut Vec<u64>, pos: usize, d: usize, p: u64) -> bool {
    if pos == d {
        return family
            .iter()
            .all(|mat| maps_line_to_itself(mat, line, d, p));
    }
    for value in 0..p {
        line[pos] = value;
        if scan_lines(family, line, pos + 1, d, p) {
            return true;
        }
    }
    line[pos] = 0;
    false
}

fn maps_line_to_itself(mat: &[Vec<u64>], v: &[u64], d: usize, p: u64) -> bool {
    let mut image = vec![0u64; d];
    for i in 0..d {
        let mut acc = 0u64;
        for j in 0..d {
            acc = (acc + mat[i][j] * v[j]) % p;
        }
        image[i] = acc;
    }
    // proportionality without division: image[i] v[j] = image[j] v[i]
    for i in 0..d {
        for j in (i + 1)..d {
            if (image[i] * v[j]) % p != (image[j] * v[i]) % p {
                return false;
            }
        }
    }
    true
}

/// Permutation representation from a brace homomorphism into the trivial
/// brace over a symmetric-group table: `beta = rho` are the permutation
/// matrices of the image permutations.
pub fn permutation_brace_rep(
    brace: &SkewBrace,
    eta: &BraceHom,
    point_perms: &[Vec<usize>],
) -> Result<BraceRep, RepError> {
    let ring = CycRing::new(1);
    let mats: Vec<CycMatrix> = (0..brace.order())
        .map(|a| CycMatrix::permutation(&point_perms[eta.apply(a)], &ring))
        .collect();
    BraceRep::validated(brace, 1, mats.clone(), mats)
}

/// Monomial induction of a linear character of a subgroup, as explicit
/// matrices over `Z[zeta_m]`. The transversal is canonical (ascending
/// minimal coset members, identity first). `chi` gives the character
/// exponent for each subgroup member.
pub fn induced_rep(
    group: &FiniteGroup,
    subgroup: &Subset,
    chi: &BTreeMap<usize, usize>,
    m: usize,
) -> (CycRing, Vec<CycMatrix>) {
    let n = group.order();
    let ring = CycRing::new(m);
    let mut coset_of = vec![usize::MAX; n];
    let mut transversal = Vec::new();
    for g in 0..n {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = transversal.len();
        transversal.push(g);
        for &h in subgroup.iter() {
            coset_of[group.mul(g, h)] = idx;
        }
    }
    let d = transversal.len();
    let mats = (0..n)
        .map(|g| {
            let mut entries = vec![ring.zero(); d * d];
            for (j, &tj) in transversal.iter().enumerate() {
                let moved = group.mul(g, tj);
                let i = coset_of[moved];
                let h = group.mul(group.inv(transversal[i]), moved);
                debug_assert!(subgroup.contains(h));
                entries[i * d + j] = ring.zeta_pow(chi[&h]);
            }
            CycMatrix::from_entries(d, entries).unwrap()
        })
        .collect();
    (ring, mats)
}

/// Extends generator matrices through the Cayley table. Returns `None`
/// on a conflict; completeness and the homomorphism law are left to
/// family validation.
pub fn matrices_from_generators(
    group: &FiniteGroup,
    ring: &CycRing,
    d: usize,
    gens: &[(usize, CycMatrix)],
) -> Option<Vec<CycMatrix>> {
    let n = group.order();
    let mut mats: Vec<Option<CycMatrix>> = vec![None; n];
    mats[0] = Some(CycMatrix::identity(d, ring));
    let mut frontier = vec![0usize];
    for (g, mat) in gens {
        match &mats[*g] {
            None => {
                mats[*g] = Some(mat.clone());
                frontier.push(*g);
            }
            Some(existing) if existing != mat => return None,
            _ => {}
        }
    }
    let mut i = 0;
    while i < frontier.len() {
        let x = frontier[i];
        for (g, _) in gens {
            let y = group.mul(x, *g);
            let product = mats[x]
                .as_ref()
                .unwrap()
                .mul(mats[*g].as_ref().unwrap(), ring);
            match &mats[y] {
                None => {
                    mats[y] = Some(product);
                    frontier.push(y);
                }
                Some(existing) if *existing != product => return None,
                _ => {}
            }
        }
        i += 1;
    }
    mats.into_iter().collect()
}

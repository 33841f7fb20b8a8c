//! Exact arithmetic in rings of cyclotomic integers `Z[zeta_m]`.
//!
//! Elements are integer coordinate vectors of length `deg(Phi_m)`,
//! reduced modulo the m-th cyclotomic polynomial. Equality is decidable
//! coordinatewise, multiplication reduces through the monic minimal
//! polynomial, and nothing ever rounds. Matrices over the ring carry the
//! representation fixtures; invertibility is always certified by an
//! explicit inverse (for finite-order matrices, a power).

/// The m-th cyclotomic polynomial, coefficients ascending, monic.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    assert!(m >= 1);
    // x^m - 1 divided by the product of Phi_d over proper divisors d | m.
    let mut numerator = vec![0i64; m + 1];
    numerator[0] = -1;
    numerator[m] = 1;
    let mut poly = numerator;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            poly = poly_div_exact(&poly, &phi_d);
        }
    }
    poly
}

/// Exact division of integer polynomials (divisor monic).
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![0i64; nd - dd + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dcoef) in den.iter().enumerate() {
                rem[i + j] -= c * dcoef;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot
}

/// The ring `Z[zeta_m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycRing {
    m: usize,
    modulus: Vec<i64>,
    degree: usize,
}

impl CycRing {
    pub fn new(m: usize) -> Self {
        let modulus = cyclotomic_polynomial(m);
        let degree = modulus.len() - 1;
        CycRing { m, modulus, degree }
    }

    pub fn conductor(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> CycInt {
        CycInt {
            coeffs: vec![0; self.degree],
        }
    }

    pub fn one(&self) -> CycInt {
        self.from_int(1)
    }

    pub fn from_int(&self, value: i64) -> CycInt {
        let mut coeffs = vec![0; self.degree];
        coeffs[0] = value;
        CycInt { coeffs }
    }

    /// `zeta_m^k` as a ring element.
    pub fn zeta_pow(&self, k: usize) -> CycInt {
        let k = k % self.m;
        let mut raw = vec![0i64; k + 1];
        raw[k] = 1;
        self.reduce(raw)
    }

    /// Reduces a raw coefficient vector modulo `Phi_m`.
    fn reduce(&self, mut raw: Vec<i64>) -> CycInt {
        let d = self.degree;
        let mut i = raw.len();
        while i > d {
            i -= 1;
            let c = raw[i];
            if c != 0 {
                raw[i] = 0;
                for j in 0..d {
                    raw[i - d + j] -= c * self.modulus[j];
                }
            }
        }
        raw.resize(d, 0);
        CycInt { coeffs: raw }
    }

    pub fn add(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycInt {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycInt {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &CycInt) -> CycInt {
        CycInt {
            coeffs: a.coeffs.iter().map(|&x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let d = self.degree;
        let mut raw = vec![0i64; 2 * d];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        self.reduce(raw)
    }

    /// Builds an element from an explicit coordinate vector.
    pub fn from_coeffs(&self, coeffs: Vec<i64>) -> Option<CycInt> {
        (coeffs.len() == self.degree).then_some(CycInt { coeffs })
    }

    /// Image of the element under `zeta_m -> omega` in `F_p`, where
    /// `omega` must have multiplicative order `m`.
    pub fn eval_mod(&self, a: &CycInt, omega: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        let mut pow = 1u64;
        for &c in &a.coeffs {
            let coeff = c.rem_euclid(p as i64) as u64;
            acc = (acc + coeff * pow) % p;
            pow = pow * omega % p;
        }
        acc
    }
}

/// A cyclotomic integer: coordinates against `1, zeta, ..., zeta^{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycInt {
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A square matrix over a cyclotomic integer ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMatrix {
    d: usize,
    entries: Vec<CycInt>,
}

impl CycMatrix {
    pub fn from_entries(d: usize, entries: Vec<CycInt>) -> Option<Self> {
        (entries.len() == d * d).then_some(CycMatrix { d, entries })
    }

    pub fn identity(d: usize, ring: &CycRing) -> Self {
        let mut entries = vec![ring.zero(); d * d];
        for i in 0..d {
            entries[i * d + i] = ring.one();
        }
        CycMatrix { d, entries }
    }

    /// Permutation matrix with entry 1 at `(perm[j], j)`.
    pub fn permutation(perm: &[usize], ring: &CycRing) -> Self {
        let d = perm.len();
        let mut entries = vec![ring.zero(); d * d];
        for (j, &i) in perm.iter().enumerate() {
            entries[i * d + j] = ring.one();
        }
        CycMatrix { d, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycInt {
        &self.entries[i * self.d + j]
    }

    pub fn entries(&self) -> &[CycInt] {
        &self.entries
    }

    pub fn mul(&self, other: &CycMatrix, ring: &CycRing) -> CycMatrix {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut entries = vec![ring.zero(); d * d];
        for i in 0..d {
            for l in 0..d {
                let left = &self.entries[i * d + l];
                if left.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let right = &other.entries[l * d + j];
                    if right.is_zero() {
                        continue;
                    }
                    let product = ring.mul(left, right);
                    entries[i * d + j] = ring.add(&entries[i * d + j], &product);
                }
            }
        }
        CycMatrix { d, entries }
    }

    pub fn trace(&self, ring: &CycRing) -> CycInt {
        let mut acc = ring.zero();
        for i in 0..self.d {
            acc = ring.add(&acc, &self.entries[i * self.d + i]);
        }
        acc
    }

    /// Block-diagonal matrix with `copies` copies of `block`.
    pub fn block_diagonal(block: &CycMatrix, copies: usize, ring: &CycRing) -> CycMatrix {
        let d = block.d * copies;
        let mut entries = vec![ring.zero(); d * d];
        for c in 0..copies {
            let offset = c * block.d;
            for i in 0..block.d {
                for j in 0..block.d {
                    entries[(offset + i) * d + (offset + j)] =
                        block.entries[i * block.d + j].clone();
                }
            }
        }
        CycMatrix { d, entries }
    }

    /// Reduction of every entry mod p through `zeta -> omega`.
    pub fn eval_mod(&self, ring: &CycRing, omega: u64, p: u64) -> Vec<Vec<u64>> {
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| ring.eval_mod(self.entry(i, j), omega, p))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_relations() {
        let ring = CycRing::new(4);
        let i = ring.zeta_pow(1);
        let minus_one = ring.from_int(-1);
        assert_eq!(ring.mul(&i, &i), minus_one);
        assert_eq!(ring.zeta_pow(2), minus_one);
        assert_eq!(ring.zeta_pow(4), ring.one());

        let ring3 = CycRing::new(3);
        let z = ring3.zeta_pow(1);
        let z2 = ring3.zeta_pow(2);
        let sum = ring3.add(&ring3.add(&z, &z2), &ring3.one());
        assert!(sum.is_zero());
    }

    #[test]
    fn conductor_one_and_two() {
        let ring1 = CycRing::new(1);
        assert_eq!(ring1.degree(), 1);
        assert_eq!(ring1.zeta_pow(1), ring1.one());
        let ring2 = CycRing::new(2);
        assert_eq!(ring2.zeta_pow(1), ring2.from_int(-1));
    }

    #[test]
    fn permutation_matrices_multiply_by_composition() {
        let ring = CycRing::new(1);
        // sigma applies first in matrix products: P_s P_t = P_{s o t}
        let s = CycMatrix::permutation(&[1, 2, 0], &ring);
        let t = CycMatrix::permutation(&[1, 0, 2], &ring);
        let st = s.mul(&t, &ring);
        let composed: Vec<usize> = (0..3).map(|x| [1usize, 2, 0][[1usize, 0, 2][x]]).collect();
        assert_eq!(st, CycMatrix::permutation(&composed, &ring));
        // inverse of a permutation matrix is its transpose-power
        let s3 = s.mul(&s, &ring).mul(&s, &ring);
        assert_eq!(s3, CycMatrix::identity(3, &ring));
    }

    #[test]
    fn traces_and_blocks() {
        let ring = CycRing::new(4);
        let m = CycMatrix::from_entries(
            2,
            vec![ring.zeta_pow(1), ring.zero(), ring.zero(), ring.zeta_pow(3)],
        )
        .unwrap();
        // zeta + zeta^3 = 0 for m = 4
        assert!(m.trace(&ring).is_zero());
        let blocks = CycMatrix::block_diagonal(&m, 3, &ring);
        assert_eq!(blocks.dim(), 6);
        assert!(blocks.trace(&ring).is_zero());
    }

    #[test]
    fn eval_mod_respects_products() {
        let ring = CycRing::new(4);
        // omega = 2 has order 4 mod 5
        let a = ring.zeta_pow(1);
        let b = ring.add(&ring.from_int(3), &ring.zeta_pow(3));
        let prod = ring.mul(&a, &b);
        let eval = |x: &CycInt| ring.eval_mod(x, 2, 5);
        assert_eq!(eval(&prod), eval(&a) * eval(&b) % 5);
    }
}

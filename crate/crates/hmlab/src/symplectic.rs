//! Linear algebra over Z/N: symplectic forms, transvections, chain
//! generators, classical group order formulas, projective point sets, and
//! conversion of matrix actions to permutations.

use crate::error::Error;
use crate::permtools::{factor_u128, FactoredInteger, Permutation};
use std::collections::HashMap;

/// A vector over Z/N; all entries are kept reduced to [0, N).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueVector {
    modulus: u64,
    entries: Vec<u64>,
}

impl ResidueVector {
    pub fn new(modulus: u64, entries: Vec<u64>) -> Result<Self, Error> {
        if modulus < 2 {
            return Err(Error::InvalidParameter(format!("modulus {modulus} < 2")));
        }
        Ok(ResidueVector {
            modulus,
            entries: entries.into_iter().map(|e| e % modulus).collect(),
        })
    }

    pub fn zero(modulus: u64, dim: usize) -> Self {
        ResidueVector { modulus, entries: vec![0; dim] }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &ResidueVector) -> ResidueVector {
        debug_assert_eq!(self.modulus, other.modulus);
        ResidueVector {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| (a + b) % self.modulus)
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> ResidueVector {
        let c = c % self.modulus;
        ResidueVector {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .map(|&a| ((a as u128 * c as u128) % self.modulus as u128) as u64)
                .collect(),
        }
    }

    /// Entries generate the unit ideal of Z/N.
    pub fn is_unimodular(&self) -> bool {
        let g = self.entries.iter().fold(self.modulus, |acc, &e| gcd(acc, e));
        g == 1
    }
}

/// The standard symplectic space of even dimension 2n over Z/N, with
/// hyperbolic pairs (e_i, f_i) at coordinates (2i-2, 2i-1) and
/// pairing(e_i, f_i) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    modulus: u64,
    dimension: usize,
}

impl SymplecticSpace {
    pub fn new(modulus: u64, dimension: usize) -> Result<Self, Error> {
        if modulus < 2 {
            return Err(Error::InvalidParameter(format!("modulus {modulus} < 2")));
        }
        if dimension == 0 || dimension % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "symplectic dimension must be even and positive, got {dimension}"
            )));
        }
        Ok(SymplecticSpace { modulus, dimension })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn half_rank(&self) -> usize {
        self.dimension / 2
    }

    /// 1-based hyperbolic basis vectors.
    pub fn basis_e(&self, k: usize) -> ResidueVector {
        let mut v = ResidueVector::zero(self.modulus, self.dimension);
        v.entries[2 * (k - 1)] = 1;
        v
    }

    pub fn basis_f(&self, k: usize) -> ResidueVector {
        let mut v = ResidueVector::zero(self.modulus, self.dimension);
        v.entries[2 * (k - 1) + 1] = 1;
        v
    }

    pub fn pairing(&self, u: &ResidueVector, v: &ResidueVector) -> u64 {
        debug_assert_eq!(u.dim(), self.dimension);
        debug_assert_eq!(v.dim(), self.dimension);
        let m = self.modulus as u128;
        let mut acc: u128 = 0;
        for k in 0..self.half_rank() {
            let (e, f) = (2 * k, 2 * k + 1);
            acc += u.entries[e] as u128 * v.entries[f] as u128 % m;
            acc += m - (u.entries[f] as u128 * v.entries[e] as u128 % m);
            acc %= m;
        }
        acc as u64
    }

    /// Gram matrix of the standard form.
    pub fn gram_matrix(&self) -> ResidueMatrix {
        let mut j = ResidueMatrix::zeros(self.modulus, self.dimension);
        for k in 0..self.half_rank() {
            j.set(2 * k, 2 * k + 1, 1);
            j.set(2 * k + 1, 2 * k, self.modulus - 1);
        }
        j
    }
}

/// A square matrix over Z/N.  Vectors act as rows, `v -> v*M`, so that
/// converting products to permutations is compatible with the crate's
/// apply-left-first composition convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueMatrix {
    modulus: u64,
    dim: usize,
    entries: Vec<u64>, // row-major
}

impl ResidueMatrix {
    pub fn zeros(modulus: u64, dim: usize) -> Self {
        ResidueMatrix { modulus, dim, entries: vec![0; dim * dim] }
    }

    pub fn identity(modulus: u64, dim: usize) -> Self {
        let mut m = Self::zeros(modulus, dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(modulus: u64, dim: usize, c: u64) -> Self {
        let mut m = Self::zeros(modulus, dim);
        for i in 0..dim {
            m.set(i, i, c % modulus);
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.dim + j] = v % self.modulus;
    }

    pub fn mul(&self, other: &ResidueMatrix) -> Result<ResidueMatrix, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let m = self.modulus as u128;
        let mut out = ResidueMatrix::zeros(self.modulus, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..self.dim {
                    let cur = out.get(i, j);
                    let add = a as u128 * other.get(k, j) as u128 % m;
                    out.set(i, j, ((cur as u128 + add) % m) as u64);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> ResidueMatrix {
        let mut out = ResidueMatrix::zeros(self.modulus, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row-vector action v -> v*M.
    pub fn apply_row(&self, v: &ResidueVector) -> Result<ResidueVector, Error> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(v.dim(), self.dim));
        }
        if v.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(v.modulus(), self.modulus));
        }
        let m = self.modulus as u128;
        let mut out = vec![0u64; self.dim];
        for (i, &vi) in v.entries().iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..self.dim {
                let add = vi as u128 * self.get(i, j) as u128 % m;
                out[j] = ((out[j] as u128 + add) % m) as u64;
            }
        }
        Ok(ResidueVector { modulus: self.modulus, entries: out })
    }

    /// Checks M^T J M = J for the standard form of this dimension.
    pub fn is_symplectic(&self, space: &SymplecticSpace) -> bool {
        if space.dimension() != self.dim || space.modulus() != self.modulus {
            return false;
        }
        let j = space.gram_matrix();
        match self.transpose().mul(&j).and_then(|tj| tj.mul(self)) {
            Ok(tjm) => tjm == j,
            Err(_) => false,
        }
    }
}

/// Matrix of the symplectic transvection x -> x + lambda * pairing(x, v) * v.
pub fn transvection_matrix(
    space: &SymplecticSpace,
    v: &ResidueVector,
    lambda: u64,
) -> Result<ResidueMatrix, Error> {
    if v.dim() != space.dimension() {
        return Err(Error::DimensionMismatch(v.dim(), space.dimension()));
    }
    if v.modulus() != space.modulus() {
        return Err(Error::ModulusMismatch(v.modulus(), space.modulus()));
    }
    let n = space.modulus();
    let lambda = lambda % n;
    let mut m = ResidueMatrix::identity(n, space.dimension());
    for i in 0..space.dimension() {
        let mut basis = ResidueVector::zero(n, space.dimension());
        basis.entries[i] = 1;
        let coeff = space.pairing(&basis, v) as u128 * lambda as u128 % n as u128;
        for j in 0..space.dimension() {
            let cur = m.get(i, j);
            let add = coeff * v.entries()[j] as u128 % n as u128;
            m.set(i, j, ((cur as u128 + add) % n as u128) as u64);
        }
    }
    Ok(m)
}

/// A chain of `m = 2n+1` vectors in dimension 2n whose consecutive pairings
/// are +-1 and whose distant pairings vanish: e1, f1, e1+e2, f2, ..., fn, en.
pub fn chain_vectors(dimension: usize, count: usize, modulus: u64) -> Result<Vec<ResidueVector>, Error> {
    let space = SymplecticSpace::new(modulus, dimension)?;
    let n = space.half_rank();
    if count != 2 * n + 1 {
        return Err(Error::InvalidParameter(format!(
            "chain of {count} vectors requested in dimension {dimension}; need 2n+1 = {}",
            2 * n + 1
        )));
    }
    let mut out = Vec::with_capacity(count);
    for k in 1..=n {
        if k == 1 {
            out.push(space.basis_e(1));
        } else {
            out.push(space.basis_e(k - 1).add(&space.basis_e(k)));
        }
        out.push(space.basis_f(k));
    }
    out.push(space.basis_e(n));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalKind {
    Sp,
    PSp,
}

/// All residues u in [1, N) with u^2 = 1 mod N, i.e. the scalars acting
/// trivially on projective points.
pub fn center_scalars(modulus: u64) -> Vec<u64> {
    assert!(modulus >= 2);
    (1..modulus)
        .filter(|&u| (u as u128 * u as u128) % modulus as u128 == 1)
        .collect()
}

/// Exact order of Sp(2n, Z/N), or of PSp(2n, Z/N) = Sp / {u : u^2 = 1}.
///
/// For a prime power p^k: |Sp(2n, Z/p^k)| = p^((k-1)n(2n+1)) * p^(n^2) *
/// prod_{i=1..n} (p^(2i) - 1); composite N multiplies over its prime powers.
pub fn classical_order(kind: ClassicalKind, dimension: usize, modulus: u64) -> Result<FactoredInteger, Error> {
    if dimension == 0 || dimension % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be even and positive, got {dimension}"
        )));
    }
    if modulus < 2 {
        return Err(Error::InvalidParameter(format!("modulus {modulus} < 2")));
    }
    let n = (dimension / 2) as u64;
    let mut order = FactoredInteger::one();
    for (p, k) in factor_u128(modulus as u128) {
        order.mul_assign(&FactoredInteger::from_prime_power(
            p,
            (k - 1) * n * (2 * n + 1) + n * n,
        ));
        for i in 1..=n {
            let q = (p as u128)
                .checked_pow((2 * i) as u32)
                .ok_or_else(|| Error::DomainTooLarge(format!("p^2i overflows for p={p}, i={i}")))?;
            order.mul_assign(&FactoredInteger::from_u128(q - 1));
        }
    }
    if kind == ClassicalKind::PSp {
        let center = FactoredInteger::from_u64(center_scalars(modulus).len() as u64);
        order = order
            .checked_div(&center)
            .ok_or_else(|| Error::Internal("center order must divide group order".into()))?;
    }
    Ok(order)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn units(modulus: u64) -> Vec<u64> {
    (1..modulus).filter(|&u| gcd(u, modulus) == 1).collect()
}

/// Lexicographically least unit-scalar multiple of `v`.
pub fn canonical_projective(v: &ResidueVector) -> ResidueVector {
    let mut best = v.clone();
    for &u in &units(v.modulus())[1..] {
        let w = v.scale(u);
        if w.entries() < best.entries() {
            best = w;
        }
    }
    best
}

/// Canonical representatives of P^(rank-1)(Z/N): one lexicographically least
/// representative per class of unimodular vectors modulo unit scalars,
/// listed in lexicographic order.
pub fn projective_points(rank: usize, modulus: u64) -> Result<Vec<ResidueVector>, Error> {
    let total = (modulus as u128)
        .checked_pow(rank as u32)
        .filter(|&t| t <= 4_000_000)
        .ok_or_else(|| Error::DomainTooLarge(format!("{modulus}^{rank} vectors")))?;
    let mut out = Vec::new();
    let mut entries = vec![0u64; rank];
    for _ in 0..total {
        let v = ResidueVector { modulus, entries: entries.clone() };
        if v.is_unimodular() && canonical_projective(&v) == v {
            out.push(v);
        }
        // lexicographic odometer, most significant digit first
        for d in (0..rank).rev() {
            entries[d] += 1;
            if entries[d] < modulus {
                break;
            }
            entries[d] = 0;
        }
    }
    Ok(out)
}

/// Which set a matrix is converted to a permutation of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixDomain {
    AllVectors,
    ProjectivePoints,
}

fn vector_index(v: &ResidueVector) -> usize {
    let mut idx: usize = 0;
    for &e in v.entries() {
        idx = idx * v.modulus() as usize + e as usize;
    }
    idx
}

/// Permutation induced by `v -> v*M` on the chosen domain, enumerated in
/// canonical (lexicographic) order.
pub fn matrix_action_perm(m: &ResidueMatrix, domain: MatrixDomain) -> Result<Permutation, Error> {
    let modulus = m.modulus();
    let dim = m.dim();
    match domain {
        MatrixDomain::AllVectors => {
            let total = (modulus as u128)
                .checked_pow(dim as u32)
                .filter(|&t| t <= 4_000_000)
                .ok_or_else(|| Error::DomainTooLarge(format!("{modulus}^{dim} vectors")))?
                as usize;
            let mut images = vec![0u32; total];
            let mut entries = vec![0u64; dim];
            for idx in 0..total {
                let v = ResidueVector { modulus, entries: entries.clone() };
                images[idx] = vector_index(&m.apply_row(&v)?) as u32;
                for d in (0..dim).rev() {
                    entries[d] += 1;
                    if entries[d] < modulus {
                        break;
                    }
                    entries[d] = 0;
                }
            }
            Permutation::from_images(images).map_err(|_| Error::NotInvertible(modulus))
        }
        MatrixDomain::ProjectivePoints => {
            let points = projective_points(dim, modulus)?;
            let index: HashMap<&[u64], usize> =
                points.iter().enumerate().map(|(i, p)| (p.entries(), i)).collect();
            let mut images = vec![0u32; points.len()];
            for (i, p) in points.iter().enumerate() {
                let w = canonical_projective(&m.apply_row(p)?);
                let j = index.get(w.entries()).ok_or(Error::NotInvertible(modulus))?;
                images[i] = *j as u32;
            }
            Permutation::from_images(images).map_err(|_| Error::NotInvertible(modulus))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permtools::PermGroup;

    fn space(modulus: u64, dim: usize) -> SymplecticSpace {
        SymplecticSpace::new(modulus, dim).unwrap()
    }

    #[test]
    fn gram_matrix_is_skew_with_zero_diagonal() {
        for (n, d) in [(2, 2), (3, 4), (5, 6)] {
            let s = space(n, d);
            let j = s.gram_matrix();
            for i in 0..d {
                assert_eq!(j.get(i, i), 0);
                for k in 0..d {
                    assert_eq!((j.get(i, k) + j.get(k, i)) % n, 0);
                }
            }
        }
    }

    #[test]
    fn transvection_trivial_cases() {
        let s = space(3, 4);
        let zero = ResidueVector::zero(3, 4);
        assert_eq!(transvection_matrix(&s, &zero, 1).unwrap(), ResidueMatrix::identity(3, 4));
        let v = s.basis_e(1);
        assert_eq!(transvection_matrix(&s, &v, 0).unwrap(), ResidueMatrix::identity(3, 4));
    }

    #[test]
    fn transvection_in_e1_mod_2() {
        let s = space(2, 2);
        let t = transvection_matrix(&s, &s.basis_e(1), 1).unwrap();
        assert!(t.is_symplectic(&s));
        assert_eq!(t.apply_row(&s.basis_e(1)).unwrap(), s.basis_e(1));
        assert_eq!(
            t.apply_row(&s.basis_f(1)).unwrap(),
            s.basis_f(1).add(&s.basis_e(1))
        );
    }

    #[test]
    fn transvection_dimension_mismatch_errors() {
        let s = space(2, 2);
        let v = ResidueVector::zero(2, 4);
        assert!(transvection_matrix(&s, &v, 1).is_err());
    }

    #[test]
    fn chain_pairing_pattern() {
        for (dim, n, modulus) in [(2usize, 1usize, 2u64), (4, 2, 3), (6, 3, 5), (4, 2, 4)] {
            let s = space(modulus, dim);
            let chain = chain_vectors(dim, 2 * n + 1, modulus).unwrap();
            assert_eq!(chain.len(), 2 * n + 1);
            for (i, v) in chain.iter().enumerate() {
                assert!(v.is_unimodular());
                for (j, w) in chain.iter().enumerate() {
                    let p = s.pairing(v, w);
                    if i.abs_diff(j) == 1 {
                        assert!(p == 1 || p == modulus - 1, "pairing {i},{j} = {p}");
                    } else if i != j {
                        assert_eq!(p, 0, "pairing {i},{j}");
                    }
                }
            }
        }
    }

    #[test]
    fn chain_dim2_mod2_is_e1_f1_e1() {
        let s = space(2, 2);
        let chain = chain_vectors(2, 3, 2).unwrap();
        assert_eq!(chain, vec![s.basis_e(1), s.basis_f(1), s.basis_e(1)]);
    }

    #[test]
    fn chain_count_must_be_2n_plus_1() {
        assert!(chain_vectors(4, 4, 3).is_err());
    }

    #[test]
    fn transvections_braid() {
        for modulus in [2u64, 3, 5] {
            let s = space(modulus, 4);
            let chain = chain_vectors(4, 5, modulus).unwrap();
            let ts: Vec<ResidueMatrix> = chain
                .iter()
                .map(|v| transvection_matrix(&s, v, 1).unwrap())
                .collect();
            for t in &ts {
                assert!(t.is_symplectic(&s));
            }
            for i in 0..ts.len() - 1 {
                let lhs = ts[i].mul(&ts[i + 1]).unwrap().mul(&ts[i]).unwrap();
                let rhs = ts[i + 1].mul(&ts[i]).unwrap().mul(&ts[i + 1]).unwrap();
                assert_eq!(lhs, rhs, "braid relation at {i}, N={modulus}");
            }
            for i in 0..ts.len() {
                for j in 0..ts.len() {
                    if i.abs_diff(j) >= 2 {
                        assert_eq!(
                            ts[i].mul(&ts[j]).unwrap(),
                            ts[j].mul(&ts[i]).unwrap(),
                            "distant commutation {i},{j}, N={modulus}"
                        );
                    }
                }
            }
        }
    }

    /// Oracle: count all dim x dim matrices over Z/N with M^T J M = J.
    fn count_symplectic_exhaustive(modulus: u64, dim: usize) -> usize {
        let s = space(modulus, dim);
        let cells = dim * dim;
        let total = (modulus as usize).pow(cells as u32);
        let mut count = 0;
        for code in 0..total {
            let mut m = ResidueMatrix::zeros(modulus, dim);
            let mut c = code;
            for i in 0..dim {
                for j in 0..dim {
                    m.set(i, j, (c % modulus as usize) as u64);
                    c /= modulus as usize;
                }
            }
            if m.is_symplectic(&s) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn sp2_orders_match_exhaustive_enumeration() {
        // Frozen from the exhaustive oracle below.
        assert_eq!(count_symplectic_exhaustive(2, 2), 6);
        assert_eq!(count_symplectic_exhaustive(4, 2), 48);
        assert_eq!(
            classical_order(ClassicalKind::Sp, 2, 2).unwrap(),
            FactoredInteger::from_u64(6)
        );
        assert_eq!(
            classical_order(ClassicalKind::Sp, 2, 4).unwrap(),
            FactoredInteger::from_u64(48)
        );
        assert_eq!(
            classical_order(ClassicalKind::Sp, 2, 3).unwrap(),
            FactoredInteger::from_u64(count_symplectic_exhaustive(3, 2) as u64)
        );
    }

    #[test]
    fn known_classical_orders() {
        let cases = [
            (ClassicalKind::Sp, 2, 5, 120u64),
            (ClassicalKind::PSp, 2, 5, 60),
            (ClassicalKind::Sp, 4, 2, 720),
            (ClassicalKind::Sp, 4, 3, 51840),
            (ClassicalKind::PSp, 4, 3, 25920),
            (ClassicalKind::PSp, 6, 3, 4585351680),
        ];
        for (kind, dim, n, expected) in cases {
            assert_eq!(
                classical_order(kind, dim, n).unwrap(),
                FactoredInteger::from_u64(expected),
                "order of {kind:?}({dim}, Z/{n})"
            );
        }
    }

    #[test]
    fn chain_transvections_generate_sp2_2() {
        let s = space(2, 2);
        let gens: Vec<Permutation> = chain_vectors(2, 3, 2)
            .unwrap()
            .iter()
            .map(|v| {
                matrix_action_perm(
                    &transvection_matrix(&s, v, 1).unwrap(),
                    MatrixDomain::AllVectors,
                )
                .unwrap()
            })
            .collect();
        let g = PermGroup::from_generators(4, gens).unwrap();
        assert_eq!(g.order_u64(), Some(6));
    }

    #[test]
    fn center_scalars_examples() {
        assert_eq!(center_scalars(2), vec![1]);
        assert_eq!(center_scalars(5), vec![1, 4]);
        assert_eq!(center_scalars(12), vec![1, 5, 7, 11]);
    }

    #[test]
    fn projective_point_counts() {
        assert_eq!(projective_points(2, 2).unwrap().len(), 3);
        assert_eq!(projective_points(4, 3).unwrap().len(), 40);
        assert_eq!(projective_points(2, 4).unwrap().len(), 6);
        // Multiplicative over coprime factorizations.
        assert_eq!(
            projective_points(3, 6).unwrap().len(),
            projective_points(3, 2).unwrap().len() * projective_points(3, 3).unwrap().len()
        );
    }

    #[test]
    fn projective_reps_are_canonical_and_distinct() {
        let pts = projective_points(3, 5).unwrap();
        for p in &pts {
            assert_eq!(&canonical_projective(p), p);
        }
        let mut sorted = pts.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), pts.len());
    }

    #[test]
    fn identity_matrix_acts_trivially() {
        let m = ResidueMatrix::identity(3, 2);
        assert!(matrix_action_perm(&m, MatrixDomain::AllVectors).unwrap().is_identity());
        assert!(matrix_action_perm(&m, MatrixDomain::ProjectivePoints).unwrap().is_identity());
    }

    #[test]
    fn negative_identity_trivial_on_projective_points() {
        let m = ResidueMatrix::scalar(3, 2, 2);
        assert!(matrix_action_perm(&m, MatrixDomain::ProjectivePoints).unwrap().is_identity());
        assert!(!matrix_action_perm(&m, MatrixDomain::AllVectors).unwrap().is_identity());
    }

    #[test]
    fn sp42_transvection_fixes_7_lines_and_pairs_the_rest() {
        let s = space(2, 4);
        let t = transvection_matrix(&s, &s.basis_e(1), 1).unwrap();
        let p = matrix_action_perm(&t, MatrixDomain::ProjectivePoints).unwrap();
        assert_eq!(p.degree(), 15);
        assert_eq!(p.fixed_points(), 7);
        let lengths = p.cycle_lengths();
        assert_eq!(lengths.iter().filter(|&&l| l == 2).count(), 4);
    }

    #[test]
    fn action_is_a_homomorphism() {
        let s = space(3, 4);
        let chain = chain_vectors(4, 5, 3).unwrap();
        let a = transvection_matrix(&s, &chain[0], 1).unwrap();
        let b = transvection_matrix(&s, &chain[1], 2).unwrap();
        for domain in [MatrixDomain::AllVectors, MatrixDomain::ProjectivePoints] {
            let pa = matrix_action_perm(&a, domain).unwrap();
            let pb = matrix_action_perm(&b, domain).unwrap();
            let pab = matrix_action_perm(&a.mul(&b).unwrap(), domain).unwrap();
            assert_eq!(pab, pa.compose(&pb).unwrap());
        }
    }

    #[test]
    fn non_invertible_matrix_rejected() {
        let m = ResidueMatrix::zeros(3, 2);
        assert!(matches!(
            matrix_action_perm(&m, MatrixDomain::AllVectors),
            Err(Error::NotInvertible(3))
        ));
    }
}

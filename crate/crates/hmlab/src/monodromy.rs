//! Braid actions on class sets, exact monodromy group structure, the coset
//! construction of the quotient G/H* with its membership black box, the
//! chain-transvection representation checks, and the predicted orders of the
//! wreath-type structure theorems.

use crate::error::Error;
use crate::nielsen::{
    build_group, enumerate_classes, hurwitz_move, project_to_s3, seed_tuple, ClassSet, EnumMethod,
    GroupKind, GroupTable, MoveDirection,
};
use crate::permtools::{FactoredInteger, PermGroup, Permutation};
use crate::symplectic::{
    chain_vectors, classical_order, matrix_action_perm, transvection_matrix, ClassicalKind,
    MatrixDomain, SymplecticSpace,
};
use std::collections::HashMap;
use std::time::Instant;

/// A word in the sphere braid generators; letter +i (resp. -i) is the i-th
/// generator (resp. its inverse), 1 <= i <= b-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(letters: Vec<i32>, b: usize) -> Result<Self, Error> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= b {
                return Err(Error::InvalidParameter(format!(
                    "braid letter {l} out of range for b={b}"
                )));
            }
        }
        Ok(BraidWord { letters })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    /// Evaluate against the generator permutations, left letter acting
    /// first, so that evaluation is a homomorphism for `compose`.
    pub fn evaluate(&self, gens: &[Permutation]) -> Result<Permutation, Error> {
        let degree = gens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::InvalidParameter("no generators supplied".into()))?;
        let mut acc = Permutation::identity(degree);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let g = gens
                .get(i)
                .ok_or_else(|| Error::InvalidParameter(format!("letter {l} has no generator")))?;
            acc = if l > 0 {
                acc.compose(g)?
            } else {
                acc.compose(&g.inverse())?
            };
        }
        Ok(acc)
    }

    /// The sphere relation word b1 b2 .. b_{b-1} b_{b-1} .. b2 b1.
    pub fn full_twist(b: usize) -> BraidWord {
        let mut letters: Vec<i32> = (1..b as i32).collect();
        letters.extend((1..b as i32).rev());
        BraidWord { letters }
    }
}

/// Permutations of the class indices of `cs` induced by the b-1 forward
/// Hurwitz moves.
pub fn braid_perms(table: &GroupTable, cs: &ClassSet) -> Result<Vec<Permutation>, Error> {
    if cs.is_empty() {
        return Err(Error::InvalidParameter("empty class set".into()));
    }
    let b = cs.b();
    (1..b)
        .map(|i| {
            let images = cs
                .representatives()
                .iter()
                .map(|rep| {
                    let moved = hurwitz_move(table, rep, i, MoveDirection::Forward)?;
                    cs.class_of(table, &moved)
                        .map(|c| c as u32)
                        .ok_or_else(|| Error::Internal("moved tuple left the class set".into()))
                })
                .collect::<Result<Vec<u32>, Error>>()?;
            Permutation::from_images(images)
                .map_err(|_| Error::Internal("hurwitz move did not permute classes".into()))
        })
        .collect()
}

/// Everything needed to study the braid action for one (group kind, b):
/// the class sets, the equivariant projection to the sym3 classes, and the
/// generator permutations on both levels.
pub struct HurwitzContext {
    pub kind: GroupKind,
    pub b: usize,
    pub table: GroupTable,
    pub s3: GroupTable,
    pub sigma: ClassSet,
    pub omega: ClassSet,
    pub projection: Vec<usize>,
    pub sigma_perms: Vec<Permutation>,
    pub omega_perms: Vec<Permutation>,
}

impl HurwitzContext {
    pub fn build(kind: GroupKind, b: usize) -> Result<Self, Error> {
        let table = build_group(kind)?;
        let s3 = build_group(GroupKind::Sym3)?;
        let sigma = enumerate_classes(&table, b, EnumMethod::OrbitBfs)?;
        let omega = enumerate_classes(&s3, b, EnumMethod::OrbitBfs)?;
        let projection = project_to_s3(&table, &sigma, &s3, &omega)?;
        let sigma_perms = braid_perms(&table, &sigma)?;
        let omega_perms = braid_perms(&s3, &omega)?;
        Ok(HurwitzContext {
            kind,
            b,
            table,
            s3,
            sigma,
            omega,
            projection,
            sigma_perms,
            omega_perms,
        })
    }

    /// Genus of the family, defined for the sym4 tower by b = 2g+6.
    pub fn genus(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Sym4 if self.b >= 6 => Some((self.b - 6) / 2),
            _ => None,
        }
    }

    /// Class index in Omega of the canonical sym3 seed.
    pub fn omega_seed_class(&self) -> Result<usize, Error> {
        let seed = seed_tuple(&self.s3, self.b)?;
        self.omega
            .class_of(&self.s3, &seed)
            .ok_or_else(|| Error::Internal("seed class missing from omega".into()))
    }
}

#[derive(Clone, Debug)]
pub struct MonodromyReport {
    pub degree: usize,
    pub omega_degree: usize,
    pub transitive: bool,
    pub omega_transitive: bool,
    pub group_order: FactoredInteger,
    pub omega_order: FactoredInteger,
    pub kernel_order: FactoredInteger,
    pub fiber_sizes: Vec<usize>,
}

/// Exact structure of the braid image on Sigma and on Omega.  The kernel
/// order is the exact quotient |image on Sigma| / |image on Omega|.
pub fn analyze(ctx: &HurwitzContext, deadline: Option<Instant>) -> Result<MonodromyReport, Error> {
    for (i, sp) in ctx.sigma_perms.iter().enumerate() {
        for c in 0..ctx.sigma.len() {
            if ctx.projection[sp.apply(c as u32) as usize]
                != ctx.omega_perms[i].apply(ctx.projection[c] as u32) as usize
            {
                return Err(Error::Internal(format!(
                    "projection is not equivariant for generator {}",
                    i + 1
                )));
            }
        }
    }
    let sigma_group =
        PermGroup::from_generators_with_deadline(ctx.sigma.len(), ctx.sigma_perms.clone(), deadline)?;
    let omega_group =
        PermGroup::from_generators_with_deadline(ctx.omega.len(), ctx.omega_perms.clone(), deadline)?;
    let kernel_order = sigma_group
        .order_factored()
        .checked_div(omega_group.order_factored())
        .ok_or_else(|| Error::Internal("omega image order does not divide group order".into()))?;
    let mut fiber_sizes = vec![0usize; ctx.omega.len()];
    for &w in &ctx.projection {
        fiber_sizes[w] += 1;
    }
    Ok(MonodromyReport {
        degree: ctx.sigma.len(),
        omega_degree: ctx.omega.len(),
        transitive: sigma_group.is_transitive(),
        omega_transitive: omega_group.is_transitive(),
        group_order: sigma_group.order_factored().clone(),
        omega_order: omega_group.order_factored().clone(),
        kernel_order,
        fiber_sizes,
    })
}

#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub ok: bool,
    pub degree: usize,
    pub projective_order: FactoredInteger,
    pub omega_order: FactoredInteger,
    pub expected_order: FactoredInteger,
    /// (cycle type in the projective model, cycle type in the Nielsen model)
    /// per generator.
    pub cycle_types: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Compare the chain-transvection model of the Omega action (mod 3
/// transvections on projective points) with the Nielsen-class model.
pub fn omega_transvection_crosscheck(g: usize) -> Result<CrosscheckReport, Error> {
    let b = 2 * g + 6;
    let dim = 2 * g + 4;
    let space = SymplecticSpace::new(3, dim)?;
    let chain = chain_vectors(dim, b - 1, 3)?;
    let proj_perms: Vec<Permutation> = chain
        .iter()
        .map(|v| {
            matrix_action_perm(
                &transvection_matrix(&space, v, 1)?,
                MatrixDomain::ProjectivePoints,
            )
        })
        .collect::<Result<_, _>>()?;
    let s3 = build_group(GroupKind::Sym3)?;
    let omega = enumerate_classes(&s3, b, EnumMethod::OrbitBfs)?;
    let omega_perms = braid_perms(&s3, &omega)?;
    let proj_group = PermGroup::from_generators(proj_perms[0].degree(), proj_perms.clone())?;
    let omega_group = PermGroup::from_generators(omega.len(), omega_perms.clone())?;
    let expected = classical_order(ClassicalKind::PSp, dim, 3)?;
    let cycle_types: Vec<(Vec<usize>, Vec<usize>)> = proj_perms
        .iter()
        .zip(&omega_perms)
        .map(|(p, o)| (p.cycle_lengths(), o.cycle_lengths()))
        .collect();
    let ok = *proj_group.order_factored() == expected
        && *omega_group.order_factored() == expected
        && proj_perms[0].degree() == omega.len()
        && cycle_types.iter().all(|(a, b)| a == b);
    Ok(CrosscheckReport {
        ok,
        degree: omega.len(),
        projective_order: proj_group.order_factored().clone(),
        omega_order: omega_group.order_factored().clone(),
        expected_order: expected,
        cycle_types,
    })
}

/// Restriction of permutations of Sigma to the fiber over one Omega class,
/// reindexed by increasing global class index.
pub fn fiber_restrict(
    ctx: &HurwitzContext,
    elements: &[Permutation],
    omega_class: usize,
) -> Result<Vec<Permutation>, Error> {
    let fiber: Vec<u32> = (0..ctx.sigma.len() as u32)
        .filter(|&c| ctx.projection[c as usize] == omega_class)
        .collect();
    let local: HashMap<u32, u32> = fiber
        .iter()
        .enumerate()
        .map(|(l, &c)| (c, l as u32))
        .collect();
    elements
        .iter()
        .map(|e| {
            let images = fiber
                .iter()
                .map(|&c| {
                    local.get(&e.apply(c)).copied().ok_or_else(|| {
                        Error::Hypothesis(format!(
                            "element moves the omega class {omega_class}"
                        ))
                    })
                })
                .collect::<Result<Vec<u32>, Error>>()?;
            Permutation::from_images(images)
                .map_err(|_| Error::Internal("restriction is not a bijection".into()))
        })
        .collect()
}

/// The membership black box for H*: the subgroup of the stabilizer of the
/// base Omega class whose fiber restriction is an even permutation.  The
/// restriction group S is sym3-like (g=0) or sym6-like (g=1), where the
/// sign kernel coincides with the derived subgroup.
pub struct H2Star {
    pub omega_class: usize,
    fiber: Vec<u32>,
    local: HashMap<u32, u32>,
    pub s_group: PermGroup,
    pub a_group: PermGroup,
}

impl H2Star {
    pub fn build(ctx: &HurwitzContext) -> Result<Self, Error> {
        let g = ctx.genus().ok_or_else(|| {
            Error::Hypothesis("the coset construction is defined on the sym4 tower".into())
        })?;
        if g > 1 {
            return Err(Error::Hypothesis(format!(
                "no sign quotient for g={g}: the fiber group is simple for g>1"
            )));
        }
        let omega_class = ctx.omega_seed_class()?;
        // beta_1 and beta_3..beta_{b-1} stabilize the seed class; their
        // fiber restrictions generate all of S.
        let stab_gens: Vec<Permutation> = std::iter::once(ctx.sigma_perms[0].clone())
            .chain(ctx.sigma_perms[2..].iter().cloned())
            .collect();
        let restricted = fiber_restrict(ctx, &stab_gens, omega_class)?;
        let fiber: Vec<u32> = (0..ctx.sigma.len() as u32)
            .filter(|&c| ctx.projection[c as usize] == omega_class)
            .collect();
        let local = fiber
            .iter()
            .enumerate()
            .map(|(l, &c)| (c, l as u32))
            .collect();
        let s_group = PermGroup::from_generators(fiber.len(), restricted)?;
        let a_group = s_group.derived_subgroup()?;
        Ok(H2Star {
            omega_class,
            fiber,
            local,
            s_group,
            a_group,
        })
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber.len()
    }

    /// True iff gamma stabilizes the base Omega class and its fiber
    /// restriction is even (lies in the derived subgroup of S).
    pub fn contains(&self, gamma: &Permutation) -> Result<bool, Error> {
        let mut images = Vec::with_capacity(self.fiber.len());
        for &c in &self.fiber {
            match self.local.get(&gamma.apply(c)) {
                Some(&l) => images.push(l),
                None => return Ok(false), // moves the omega class
            }
        }
        let restriction = Permutation::from_images(images)
            .map_err(|_| Error::Internal("fiber restriction not a bijection".into()))?;
        Ok(self.a_group.contains(&restriction))
    }
}

pub struct CosetRepresentation {
    pub degree: usize,
    pub generator_perms: Vec<Permutation>,
    pub image: PermGroup,
}

/// BFS over the cosets H*gamma using the membership black box, following
/// generators in index order and both signs; returns the coset count, the
/// generator permutations of the coset space, and their BSGS image.
pub fn coset_representation(
    ctx: &HurwitzContext,
    max_cosets: usize,
    deadline: Option<Instant>,
) -> Result<CosetRepresentation, Error> {
    let h2 = H2Star::build(ctx)?;
    let base = h2.omega_class as u32;
    let betas = &ctx.sigma_perms;
    let beta_invs: Vec<Permutation> = betas.iter().map(|p| p.inverse()).collect();
    let omega_invs: Vec<Permutation> = ctx.omega_perms.iter().map(|p| p.inverse()).collect();

    struct Coset {
        rep: Permutation,
        rep_inv: Permutation,
        omega_pt: u32,
    }
    let identity = Permutation::identity(ctx.sigma.len());
    let mut cosets = vec![Coset {
        rep_inv: identity.clone(),
        rep: identity,
        omega_pt: base,
    }];
    let mut buckets: HashMap<u32, Vec<usize>> = HashMap::new();
    buckets.insert(base, vec![0]);

    // Same-coset test without forming the full composition: restrict
    // gamma_j * beta^sign * rep_k^-1 to the fiber and test evenness.
    let same_coset = |gamma: &Permutation, step: &Permutation, k: &Coset, h2: &H2Star| -> bool {
        let mut images = Vec::with_capacity(h2.fiber.len());
        for &c in &h2.fiber {
            let x = k.rep_inv.apply(step.apply(gamma.apply(c)));
            match h2.local.get(&x) {
                Some(&l) => images.push(l),
                None => return false,
            }
        }
        match Permutation::from_images(images) {
            Ok(r) => h2.a_group.contains(&r),
            Err(_) => false,
        }
    };

    let mut head = 0;
    while head < cosets.len() {
        for i in 0..betas.len() {
            for sign in 0..2 {
                let (step, omega_step) = if sign == 0 {
                    (&betas[i], &ctx.omega_perms[i])
                } else {
                    (&beta_invs[i], &omega_invs[i])
                };
                let pt = omega_step.apply(cosets[head].omega_pt);
                let found = buckets
                    .get(&pt)
                    .map(|bucket| {
                        bucket
                            .iter()
                            .any(|&k| same_coset(&cosets[head].rep, step, &cosets[k], &h2))
                    })
                    .unwrap_or(false);
                if !found {
                    if cosets.len() >= max_cosets {
                        return Err(Error::Budget(format!(
                            "coset budget {max_cosets} exhausted with {} cosets found",
                            cosets.len()
                        )));
                    }
                    if let Some(d) = deadline {
                        if Instant::now() > d {
                            return Err(Error::Budget(format!(
                                "time budget exhausted with {} cosets found",
                                cosets.len()
                            )));
                        }
                    }
                    let rep = cosets[head].rep.compose(step)?;
                    let rep_inv = rep.inverse();
                    buckets.entry(pt).or_default().push(cosets.len());
                    cosets.push(Coset {
                        rep,
                        rep_inv,
                        omega_pt: pt,
                    });
                }
            }
        }
        head += 1;
    }

    let degree = cosets.len();
    let generator_perms: Vec<Permutation> = (0..betas.len())
        .map(|i| {
            let images = cosets
                .iter()
                .map(|c| {
                    let pt = ctx.omega_perms[i].apply(c.omega_pt);
                    buckets
                        .get(&pt)
                        .and_then(|bucket| {
                            bucket
                                .iter()
                                .find(|&&k| same_coset(&c.rep, &betas[i], &cosets[k], &h2))
                                .copied()
                        })
                        .map(|k| k as u32)
                        .ok_or_else(|| Error::Internal("coset image not found".into()))
                })
                .collect::<Result<Vec<u32>, Error>>()?;
            Permutation::from_images(images)
                .map_err(|_| Error::Internal("coset action is not a permutation".into()))
        })
        .collect::<Result<_, _>>()?;
    let image = PermGroup::from_generators_with_deadline(degree, generator_perms.clone(), deadline)?;
    Ok(CosetRepresentation {
        degree,
        generator_perms,
        image,
    })
}

#[derive(Clone, Debug)]
pub struct CommutatorReport {
    pub nontrivial: bool,
    pub in_omega_kernel: bool,
    pub fixed_fiber: Option<usize>,
}

/// The witness [beta_1^3, beta_2^3]: nontrivial on Sigma, trivial on Omega,
/// and fixing at least one fiber pointwise when the expected structure holds.
pub fn commutator_witness(ctx: &HurwitzContext) -> CommutatorReport {
    let commutator = |a: &Permutation, b: &Permutation| -> Permutation {
        a.inverse()
            .compose(&b.inverse())
            .and_then(|p| p.compose(a))
            .and_then(|p| p.compose(b))
            .expect("equal degrees")
    };
    let c = commutator(&ctx.sigma_perms[0].power(3), &ctx.sigma_perms[1].power(3));
    let c_omega = commutator(&ctx.omega_perms[0].power(3), &ctx.omega_perms[1].power(3));
    let fixed_fiber = (0..ctx.omega.len()).find(|&w| {
        (0..ctx.sigma.len() as u32)
            .filter(|&x| ctx.projection[x as usize] == w)
            .all(|x| c.apply(x) == x)
    });
    CommutatorReport {
        nontrivial: !c.is_identity(),
        in_omega_kernel: c_omega.is_identity(),
        fixed_fiber,
    }
}

#[derive(Clone, Debug)]
pub struct ChainCheckReport {
    pub dimension: usize,
    pub modulus: u64,
    pub order: FactoredInteger,
    pub expected: FactoredInteger,
    pub ok: bool,
}

/// Verify that the 2g+3 chain transvections generate the full symplectic
/// group of (Z/N)^{2g+2}, acting on all vectors.
pub fn chain_rep_check(g: usize, n: u64) -> Result<ChainCheckReport, Error> {
    let dim = 2 * g + 2;
    let total = (n as u128)
        .checked_pow(dim as u32)
        .filter(|&t| t <= 10_000)
        .ok_or_else(|| Error::DomainTooLarge(format!(
            "{n}^{dim} vectors exceeds the 10^4 bound; use smaller g or N"
        )))?;
    let _ = total;
    let space = SymplecticSpace::new(n, dim)?;
    let perms: Vec<Permutation> = chain_vectors(dim, dim + 1, n)?
        .iter()
        .map(|v| {
            matrix_action_perm(&transvection_matrix(&space, v, 1)?, MatrixDomain::AllVectors)
        })
        .collect::<Result<_, _>>()?;
    let group = PermGroup::from_generators(perms[0].degree(), perms)?;
    let expected = classical_order(ClassicalKind::Sp, dim, n)?;
    Ok(ChainCheckReport {
        dimension: dim,
        modulus: n,
        ok: *group.order_factored() == expected,
        order: group.order_factored().clone(),
        expected,
    })
}

#[derive(Clone, Debug)]
pub struct CubeCheckReport {
    pub dimension: usize,
    pub modulus: u64,
    pub closure_order: FactoredInteger,
    pub full_order: FactoredInteger,
    pub full: bool,
    pub expected_full: bool,
    pub ok: bool,
}

/// Normal closure, inside the full chain-transvection group, of the cube of
/// the last transvection.  Expected to be everything exactly when 3 does
/// not divide N.
pub fn cube_closure_check(g: usize, n: u64) -> Result<CubeCheckReport, Error> {
    let dim = 2 * g + 2;
    (n as u128)
        .checked_pow(dim as u32)
        .filter(|&t| t <= 10_000)
        .ok_or_else(|| Error::DomainTooLarge(format!(
            "{n}^{dim} vectors exceeds the 10^4 bound; use smaller g or N"
        )))?;
    let space = SymplecticSpace::new(n, dim)?;
    let perms: Vec<Permutation> = chain_vectors(dim, dim + 1, n)?
        .iter()
        .map(|v| {
            matrix_action_perm(&transvection_matrix(&space, v, 1)?, MatrixDomain::AllVectors)
        })
        .collect::<Result<_, _>>()?;
    let cube = perms.last().unwrap().power(3);
    let group = PermGroup::from_generators(perms[0].degree(), perms)?;
    let closure = group.normal_closure(std::slice::from_ref(&cube))?;
    let full = closure.order() == group.order();
    let expected_full = n % 3 != 0;
    Ok(CubeCheckReport {
        dimension: dim,
        modulus: n,
        closure_order: closure.order_factored().clone(),
        full_order: group.order_factored().clone(),
        full,
        expected_full,
        ok: full == expected_full,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremTag {
    Thm1,
    Thm1ExceptionalG0,
    Thm1ExceptionalG1,
    Thm2,
    Thm3,
}

impl std::fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TheoremTag::Thm1 => "thm1",
            TheoremTag::Thm1ExceptionalG0 => "thm1-exceptional-g0",
            TheoremTag::Thm1ExceptionalG1 => "thm1-exceptional-g1",
            TheoremTag::Thm2 => "thm2",
            TheoremTag::Thm3 => "thm3",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for TheoremTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "thm1" => Ok(TheoremTag::Thm1),
            "thm1-exceptional-g0" => Ok(TheoremTag::Thm1ExceptionalG0),
            "thm1-exceptional-g1" => Ok(TheoremTag::Thm1ExceptionalG1),
            "thm2" => Ok(TheoremTag::Thm2),
            "thm3" => Ok(TheoremTag::Thm3),
            _ => Err(Error::InvalidParameter(format!("unknown theorem tag {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PredictedStructure {
    pub tag: TheoremTag,
    pub g: Option<u64>,
    pub b: Option<u64>,
    pub n: Option<u64>,
    pub omega_size: u64,
    pub fiber_size: Option<u64>,
    pub left_order: FactoredInteger,
    pub left_exponent: u64,
    pub right_order: FactoredInteger,
    pub total: FactoredInteger,
}

/// Number of points of P^{d-1}(Z/3), i.e. for rank d.
fn omega_count_mod3(rank: u32) -> u64 {
    (3u64.pow(rank) - 1) / 2
}

/// Number of points of P^1-style projective space of rank d over Z/N,
/// multiplicative over prime powers.
fn projective_count(rank: u32, n: u64) -> u64 {
    let mut total = 1u64;
    for (p, k) in crate::permtools::factor_u128(n as u128) {
        let q = p.pow(k as u32);
        // p^{(k-1)(rank-1)} * (p^rank - 1)/(p - 1)
        total *= (q / p).pow(rank - 1) * ((p.pow(rank) - 1) / (p - 1));
    }
    total
}

/// Exact predicted orders for the structure theorems.
pub fn predict(
    tag: TheoremTag,
    g: Option<u64>,
    b: Option<u64>,
    n: Option<u64>,
) -> Result<PredictedStructure, Error> {
    let need_g = || g.ok_or_else(|| Error::InvalidParameter("this theorem needs g".into()));
    let need_n = || n.ok_or_else(|| Error::InvalidParameter("this theorem needs N".into()));
    match tag {
        TheoremTag::Thm1 => {
            let g = need_g()?;
            if g <= 1 {
                return Err(Error::Hypothesis(format!(
                    "g>1 required for thm1 (got g={g}); use thm1-exceptional-g{g}"
                )));
            }
            let omega = omega_count_mod3(2 * g as u32 + 4);
            let left = classical_order(ClassicalKind::Sp, 2 * g as usize + 2, 2)?;
            let right = classical_order(ClassicalKind::PSp, 2 * g as usize + 4, 3)?;
            let total = left.pow(omega).mul(&right);
            Ok(PredictedStructure {
                tag,
                g: Some(g),
                b: Some(2 * g + 6),
                n: Some(2),
                omega_size: omega,
                fiber_size: Some(2u64.pow(2 * g as u32 + 2) - 1),
                left_order: left,
                left_exponent: omega,
                right_order: right,
                total,
            })
        }
        TheoremTag::Thm1ExceptionalG0 => {
            // 3^40 : 2^16 in place of the product of symmetric factors.
            let left = FactoredInteger::from_prime_power(3, 40)
                .mul(&FactoredInteger::from_prime_power(2, 16));
            let right = classical_order(ClassicalKind::PSp, 4, 3)?;
            let total = left.mul(&right);
            Ok(PredictedStructure {
                tag,
                g: Some(0),
                b: Some(6),
                n: Some(2),
                omega_size: 40,
                fiber_size: Some(3),
                left_order: left,
                left_exponent: 1,
                right_order: right,
                total,
            })
        }
        TheoremTag::Thm1ExceptionalG1 => {
            // |A6|^364 * 2^168 in place of the product of symmetric factors.
            let left = FactoredInteger::from_u64(360)
                .pow(364)
                .mul(&FactoredInteger::from_prime_power(2, 168));
            let right = classical_order(ClassicalKind::PSp, 6, 3)?;
            let total = left.mul(&right);
            Ok(PredictedStructure {
                tag,
                g: Some(1),
                b: Some(8),
                n: Some(2),
                omega_size: 364,
                fiber_size: Some(15),
                left_order: left,
                left_exponent: 1,
                right_order: right,
                total,
            })
        }
        TheoremTag::Thm2 => {
            let g = need_g()?;
            let n = need_n()?;
            if n % 3 == 0 {
                return Err(Error::Hypothesis(format!("3 must not divide N (got N={n})")));
            }
            if n % 2 == 0 && g <= 1 {
                return Err(Error::Hypothesis(format!(
                    "g>1 required when N is even (got g={g}, N={n})"
                )));
            }
            let omega = omega_count_mod3(2 * g as u32 + 4);
            let left = classical_order(ClassicalKind::Sp, 2 * g as usize + 2, n)?;
            let right = classical_order(ClassicalKind::PSp, 2 * g as usize + 4, 3)?;
            let total = left.pow(omega).mul(&right);
            Ok(PredictedStructure {
                tag,
                g: Some(g),
                b: Some(2 * g + 6),
                n: Some(n),
                omega_size: omega,
                fiber_size: Some(projective_count(2 * g as u32 + 2, n)),
                left_order: left,
                left_exponent: omega,
                right_order: right,
                total,
            })
        }
        TheoremTag::Thm3 => {
            let b = b.ok_or_else(|| Error::InvalidParameter("thm3 needs b".into()))?;
            let n = need_n()?;
            if n % 3 == 0 {
                return Err(Error::Hypothesis(format!("3 must not divide N (got N={n})")));
            }
            if b % 2 != 0 {
                return Err(Error::Hypothesis(format!("b must be even (got b={b})")));
            }
            if b <= 4 {
                return Err(Error::Hypothesis(format!("b>4 required (got b={b})")));
            }
            if n % 2 == 0 && b <= 8 {
                return Err(Error::Hypothesis(format!(
                    "b>8 required when N is even (got b={b}, N={n})"
                )));
            }
            let omega = omega_count_mod3(b as u32 - 2);
            let left = classical_order(ClassicalKind::PSp, b as usize - 4, n)?;
            let right = classical_order(ClassicalKind::PSp, b as usize - 2, 3)?;
            let total = left.pow(omega).mul(&right);
            Ok(PredictedStructure {
                tag,
                g: None,
                b: Some(b),
                n: Some(n),
                omega_size: omega,
                fiber_size: Some(projective_count(b as u32 - 4, n)),
                left_order: left,
                left_exponent: omega,
                right_order: right,
                total,
            })
        }
    }
}

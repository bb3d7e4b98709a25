//! Randomized property suites: braid relations, admissibility preservation,
//! projection equivariance, symplectic invariants, and BSGS order agreement
//! against exhaustive closure.

use hmlab::monodromy::{BraidWord, HurwitzContext};
use hmlab::nielsen::{hurwitz_move, GroupKind, MoveDirection, NielsenTuple};
use hmlab::permtools::{PermGroup, Permutation};
use hmlab::symplectic::{chain_vectors, transvection_matrix, ResidueMatrix, SymplecticSpace};
use proptest::prelude::*;
use std::collections::HashSet;
use std::sync::OnceLock;

fn g0() -> &'static HurwitzContext {
    static CTX: OnceLock<HurwitzContext> = OnceLock::new();
    CTX.get_or_init(|| HurwitzContext::build(GroupKind::Sym4, 6).expect("g=0 context"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn braid_relation_on_tuples(class in 0usize..120, i in 1usize..5) {
        let ctx = g0();
        let rep = ctx.sigma.rep(class).clone();
        let chain = |t: &NielsenTuple, moves: &[usize]| {
            moves.iter().fold(t.clone(), |acc, &m| {
                hurwitz_move(&ctx.table, &acc, m, MoveDirection::Forward).unwrap()
            })
        };
        prop_assert_eq!(chain(&rep, &[i, i + 1, i]), chain(&rep, &[i + 1, i, i + 1]));
    }

    #[test]
    fn moves_round_trip_and_preserve_admissibility(
        class in 0usize..120,
        moves in prop::collection::vec((1usize..6, prop::bool::ANY), 1..12),
    ) {
        let ctx = g0();
        let mut t = ctx.sigma.rep(class).clone();
        for (i, forward) in moves {
            let dir = if forward { MoveDirection::Forward } else { MoveDirection::Inverse };
            let back = if forward { MoveDirection::Inverse } else { MoveDirection::Forward };
            let moved = hurwitz_move(&ctx.table, &t, i, dir).unwrap();
            prop_assert!(NielsenTuple::new(&ctx.table, moved.entries().to_vec()).is_ok());
            prop_assert_eq!(hurwitz_move(&ctx.table, &moved, i, back).unwrap(), t);
            t = moved;
        }
    }

    #[test]
    fn word_evaluation_is_a_homomorphism(
        letters_a in prop::collection::vec((1i32..6).prop_flat_map(|l| prop_oneof![Just(l), Just(-l)]), 0..8),
        letters_b in prop::collection::vec((1i32..6).prop_flat_map(|l| prop_oneof![Just(l), Just(-l)]), 0..8),
    ) {
        let ctx = g0();
        let wa = BraidWord::new(letters_a, 6).unwrap();
        let wb = BraidWord::new(letters_b, 6).unwrap();
        let lhs = wa.concat(&wb).evaluate(&ctx.sigma_perms).unwrap();
        let rhs = wa.evaluate(&ctx.sigma_perms).unwrap()
            .compose(&wb.evaluate(&ctx.sigma_perms).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn full_twist_fixes_every_class(class in 0usize..120) {
        let ctx = g0();
        let twist = BraidWord::full_twist(6).evaluate(&ctx.sigma_perms).unwrap();
        prop_assert_eq!(twist.apply(class as u32), class as u32);
    }

    #[test]
    fn projection_is_equivariant(class in 0usize..120, i in 0usize..5) {
        let ctx = g0();
        prop_assert_eq!(
            ctx.projection[ctx.sigma_perms[i].apply(class as u32) as usize],
            ctx.omega_perms[i].apply(ctx.projection[class] as u32) as usize
        );
    }

    #[test]
    fn transvection_products_are_symplectic(
        n in 2u64..8,
        picks in prop::collection::vec((0usize..5, 1u64..8), 1..10),
    ) {
        let space = SymplecticSpace::new(n, 4).unwrap();
        let chain = chain_vectors(4, 5, n).unwrap();
        let mut m = ResidueMatrix::identity(n, 4);
        for (which, lambda) in picks {
            let t = transvection_matrix(&space, &chain[which], lambda).unwrap();
            prop_assert!(t.is_symplectic(&space));
            m = m.mul(&t).unwrap();
            prop_assert!(m.is_symplectic(&space));
        }
    }

    #[test]
    fn bsgs_order_matches_exhaustive_closure(
        degree in 4usize..8,
        raw in prop::collection::vec(prop::collection::vec(0u32..8, 8), 1..4),
    ) {
        let gens: Vec<Permutation> = raw
            .into_iter()
            .map(|seed| {
                // turn 8 random values into a permutation by sorting keys
                let mut keyed: Vec<(u32, u32)> = seed[..degree]
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| (k, i as u32))
                    .collect();
                keyed.sort();
                Permutation::from_images(keyed.into_iter().map(|(_, i)| i).collect()).unwrap()
            })
            .collect();
        let mut closure: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(degree);
        closure.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for gen in &gens {
                let y = x.compose(gen).unwrap();
                if closure.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        prop_assert!(closure.len() <= 5040);
        let group = PermGroup::from_generators(degree, gens).unwrap();
        prop_assert_eq!(group.order_u64(), Some(closure.len() as u64));
    }
}

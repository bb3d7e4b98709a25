//! Base and strong generating sets: exact order, membership, derived
//! subgroup, normal closure and primitivity for permutation groups.

use super::factored::FactoredInteger;
use super::perm::{orbit, Permutation};
use crate::error::Error;
use num_bigint::BigUint;
use std::collections::VecDeque;
use std::time::Instant;

struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// point -> orbit index, `u32::MAX` when outside the orbit
    pos: Vec<u32>,
    /// transversal[i] maps base to orbit[i]
    transversal: Vec<Permutation>,
    inv_transversal: Vec<Permutation>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![u32::MAX; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            transversal: vec![Permutation::identity(degree)],
            inv_transversal: vec![Permutation::identity(degree)],
        }
    }
}

/// Incremental deterministic Schreier-Sims.  Pending Schreier generators are
/// tracked per level and always processed deepest level first, so adding a
/// generator leaves earlier transversals untouched and the result is
/// reproducible.
struct ChainBuilder {
    degree: usize,
    levels: Vec<Level>,
    pending: Vec<VecDeque<(u32, u32)>>,
    deadline: Option<Instant>,
    ticks: u32,
}

impl ChainBuilder {
    fn new(degree: usize, deadline: Option<Instant>) -> Self {
        ChainBuilder {
            degree,
            levels: Vec::new(),
            pending: Vec::new(),
            deadline,
            ticks: 0,
        }
    }

    fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Add `g` as a strong generator at every level from `start` down to the
    /// first level whose base point it moves, appending a new level if it
    /// fixes every existing base.
    fn insert_gen(&mut self, g: Permutation, start: usize) {
        debug_assert!(!g.is_identity());
        let mut l = start;
        loop {
            if l == self.levels.len() {
                let base = (0..self.degree as u32)
                    .find(|&x| g.apply(x) != x)
                    .expect("non-identity permutation moves a point");
                self.levels.push(Level::new(base, self.degree));
                self.pending.push(VecDeque::new());
            }
            let moves_base = g.apply(self.levels[l].base) != self.levels[l].base;
            self.add_gen_to_level(l, g.clone());
            if moves_base {
                break;
            }
            l += 1;
        }
    }

    fn add_gen_to_level(&mut self, l: usize, g: Permutation) {
        let gi = self.levels[l].gens.len() as u32;
        self.levels[l].gens.push(g);
        for idx in 0..self.levels[l].orbit.len() as u32 {
            self.pending[l].push_back((idx, gi));
        }
        // Extend the orbit: existing points under the new generator first,
        // then close up newly reached points under all generators.
        let mut queue: VecDeque<usize> = VecDeque::new();
        for idx in 0..self.levels[l].orbit.len() {
            self.try_extend(l, idx, gi as usize, &mut queue);
        }
        while let Some(idx) = queue.pop_front() {
            for gj in 0..self.levels[l].gens.len() {
                self.try_extend(l, idx, gj, &mut queue);
            }
        }
    }

    fn try_extend(&mut self, l: usize, idx: usize, gj: usize, queue: &mut VecDeque<usize>) {
        let level = &mut self.levels[l];
        let y = level.gens[gj].apply(level.orbit[idx]);
        if level.pos[y as usize] != u32::MAX {
            return;
        }
        let new_idx = level.orbit.len();
        level.pos[y as usize] = new_idx as u32;
        level.orbit.push(y);
        let u = level.transversal[idx].then(&level.gens[gj]);
        level.inv_transversal.push(u.inverse());
        level.transversal.push(u);
        for gk in 0..level.gens.len() as u32 {
            self.pending[l].push_back((new_idx as u32, gk));
        }
        queue.push_back(new_idx);
    }

    /// Sift `h` through levels `start..`, returning the residue and the level
    /// where sifting stopped.
    fn strip(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for l in start..self.levels.len() {
            let y = h.apply(self.levels[l].base);
            let ypos = self.levels[l].pos[y as usize];
            if ypos == u32::MAX {
                return (h, l);
            }
            h = h.then(&self.levels[l].inv_transversal[ypos as usize]);
            if h.is_identity() {
                break;
            }
        }
        (h, self.levels.len())
    }

    fn check_budget(&mut self) -> Result<(), Error> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 128 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    let partial: BigUint = self
                        .orbit_sizes()
                        .iter()
                        .fold(BigUint::from(1u32), |acc, &s| acc * BigUint::from(s));
                    return Err(Error::Budget(format!(
                        "stabilizer chain incomplete; {} levels, current orbit-size product {}",
                        self.levels.len(),
                        partial
                    )));
                }
            }
        }
        Ok(())
    }

    fn process_pending(&mut self) -> Result<(), Error> {
        loop {
            let Some(l) = (0..self.levels.len()).rev().find(|&l| !self.pending[l].is_empty())
            else {
                break;
            };
            let (idx, gi) = self.pending[l].pop_front().unwrap();
            self.check_budget()?;
            let schreier = {
                let level = &self.levels[l];
                let s = &level.gens[gi as usize];
                let x = level.orbit[idx as usize];
                let ypos = level.pos[s.apply(x) as usize] as usize;
                level.transversal[idx as usize]
                    .then(s)
                    .then(&level.inv_transversal[ypos])
            };
            if schreier.is_identity() {
                continue;
            }
            let (residue, _) = self.strip(schreier, l + 1);
            if !residue.is_identity() {
                self.insert_gen(residue, l + 1);
            }
        }
        Ok(())
    }

    fn add_generator(&mut self, g: &Permutation) -> Result<(), Error> {
        if g.is_identity() {
            return Ok(());
        }
        let (residue, _) = self.strip(g.clone(), 0);
        if !residue.is_identity() {
            self.insert_gen(g.clone(), 0);
            self.process_pending()?;
        }
        Ok(())
    }

    fn contains(&self, p: &Permutation) -> bool {
        let (residue, _) = self.strip(p.clone(), 0);
        residue.is_identity()
    }
}

/// A permutation group held as a base and strong generating set, with exact
/// big-integer and factored order.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: ChainBuilder,
    order: BigUint,
    order_factored: FactoredInteger,
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self, Error> {
        Self::from_generators_with_deadline(degree, gens, None)
    }

    /// Like `from_generators`, but aborts with `Error::Budget` once the
    /// deadline passes, reporting the partial chain.
    pub fn from_generators_with_deadline(
        degree: usize,
        gens: Vec<Permutation>,
        deadline: Option<Instant>,
    ) -> Result<Self, Error> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut chain = ChainBuilder::new(degree, deadline);
        for g in &gens {
            chain.add_generator(g)?;
        }
        Ok(Self::finish(degree, gens, chain))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::finish(degree, Vec::new(), ChainBuilder::new(degree, None))
    }

    fn finish(degree: usize, gens: Vec<Permutation>, chain: ChainBuilder) -> Self {
        let mut order = BigUint::from(1u32);
        let mut order_factored = FactoredInteger::one();
        for s in chain.orbit_sizes() {
            order *= BigUint::from(s);
            order_factored.mul_assign(&FactoredInteger::from_u64(s as u64));
        }
        PermGroup { degree, gens, chain, order, order_factored }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_factored(&self) -> &FactoredInteger {
        &self.order_factored
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.orbit_sizes()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.chain.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.chain.contains(p)
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree <= 1 {
            return true;
        }
        if self.gens.is_empty() {
            return false;
        }
        orbit(0, &self.gens).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Normal closure in `self` of the subgroup generated by `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup, Error> {
        for s in seeds {
            if s.degree() != self.degree {
                return Err(Error::DegreeMismatch(self.degree, s.degree()));
            }
        }
        let mut chain = ChainBuilder::new(self.degree, None);
        let mut closure_gens: Vec<Permutation> = Vec::new();
        let mut work: VecDeque<Permutation> = VecDeque::new();
        for s in seeds {
            if !s.is_identity() && !chain.contains(s) {
                chain.add_generator(s)?;
                closure_gens.push(s.clone());
                work.push_back(s.clone());
            }
        }
        while let Some(w) = work.pop_front() {
            for g in &self.gens {
                // g^-1 w g
                let c = g.inverse().then(&w).then(g);
                if !chain.contains(&c) {
                    chain.add_generator(&c)?;
                    closure_gens.push(c.clone());
                    work.push_back(c);
                }
            }
        }
        Ok(Self::finish(self.degree, closure_gens, chain))
    }

    /// Normal closure in `self` of the commutators of all generator pairs.
    pub fn derived_subgroup(&self) -> Result<PermGroup, Error> {
        let mut seeds = Vec::new();
        for a in &self.gens {
            for b in &self.gens {
                // [a,b] = a^-1 b^-1 a b
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    /// Primitivity test.  Errors on intransitive groups; otherwise reports
    /// either primitivity or one minimal nontrivial block system.
    pub fn is_primitive(&self) -> Result<Primitivity, Error> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let n = self.degree;
        if n <= 2 {
            return Ok(Primitivity::Primitive);
        }
        for x in 1..n as u32 {
            let blocks = minimal_blocks(&self.gens, 0, x, n);
            let size = blocks[0].len();
            if size > 1 && size < n {
                return Ok(Primitivity::Imprimitive(blocks));
            }
        }
        Ok(Primitivity::Primitive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    Imprimitive(Vec<Vec<u32>>),
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = x;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    /// Merge; returns the root that lost its class, if a merge happened.
    fn union(&mut self, a: u32, b: u32) -> Option<u32> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        let (win, lose) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[lose as usize] = win;
        Some(lose)
    }
}

/// Finest block system of the transitive group `gens` in which `a` and `b`
/// share a block (Atkinson's algorithm).
fn minimal_blocks(gens: &[Permutation], a: u32, b: u32, n: usize) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<u32> = Vec::new();
    if let Some(l) = uf.union(a, b) {
        queue.push(l);
    }
    while let Some(c) = queue.pop() {
        let r = uf.find(c);
        for g in gens {
            if let Some(l) = uf.union(g.apply(c), g.apply(r)) {
                queue.push(l);
            }
        }
    }
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); n];
    for x in 0..n as u32 {
        let r = uf.find(x);
        blocks[r as usize].push(x);
    }
    blocks.retain(|b| !b.is_empty());
    blocks.sort_by_key(|b| b[0]);
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(deg: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(deg, cycles).unwrap()
    }

    /// Independent oracle: exhaustive closure of a generating set under
    /// composition.
    fn exhaustive_closure(gens: &[Permutation]) -> HashSet<Permutation> {
        let deg = gens[0].degree();
        let mut set: HashSet<Permutation> = HashSet::new();
        set.insert(Permutation::identity(deg));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(deg)];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = p.compose(g).unwrap();
                if set.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        set
    }

    #[test]
    fn single_transposition_has_order_two() {
        let g = PermGroup::from_generators(2, vec![cyc(2, &[&[0, 1]])]).unwrap();
        assert_eq!(g.order_u64(), Some(2));
    }

    #[test]
    fn s4_order_24() {
        let gens = vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])];
        // Oracle: exhaustive closure of the generated set.
        assert_eq!(exhaustive_closure(&gens).len(), 24);
        let g = PermGroup::from_generators(4, gens).unwrap();
        assert_eq!(g.order_u64(), Some(24));
        assert_eq!(g.order_factored(), &FactoredInteger::from_u64(24));
    }

    #[test]
    fn order_independent_of_generator_order() {
        let a = cyc(5, &[&[0, 1]]);
        let b = cyc(5, &[&[0, 1, 2, 3, 4]]);
        let g1 = PermGroup::from_generators(5, vec![a.clone(), b.clone()]).unwrap();
        let g2 = PermGroup::from_generators(5, vec![b, a]).unwrap();
        assert_eq!(g1.order(), g2.order());
        assert_eq!(g1.order_u64(), Some(120));
    }

    #[test]
    fn membership_of_generated_words() {
        let gens = vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4]]), cyc(6, &[&[1, 2], &[4, 5]])];
        let g = PermGroup::from_generators(6, gens.clone()).unwrap();
        for p in exhaustive_closure(&gens) {
            assert!(g.contains(&p));
        }
    }

    #[test]
    fn membership_rejects_outside_elements() {
        // A4 does not contain a transposition.
        let a4 = PermGroup::from_generators(4, vec![cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])])
            .unwrap();
        assert_eq!(a4.order_u64(), Some(12));
        assert!(!a4.contains(&cyc(4, &[&[0, 1]])));
    }

    #[test]
    fn order_matches_exhaustive_closure_on_small_corpus() {
        let corpus: Vec<Vec<Permutation>> = vec![
            vec![cyc(4, &[&[0, 1, 2, 3]])],                         // C4
            vec![cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])],     // D8
            vec![cyc(6, &[&[0, 1, 2], &[3, 4, 5]]), cyc(6, &[&[0, 3], &[1, 5], &[2, 4]])],
            vec![cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])], // S5
        ];
        for gens in &corpus {
            let g = PermGroup::from_generators(gens[0].degree(), gens.clone()).unwrap();
            assert_eq!(g.order_u64(), Some(exhaustive_closure(gens).len() as u64));
        }
    }

    #[test]
    fn derived_of_abelian_is_trivial() {
        let g = PermGroup::from_generators(6, vec![cyc(6, &[&[0, 1, 2]]), cyc(6, &[&[3, 4, 5]])])
            .unwrap();
        let d = g.derived_subgroup().unwrap();
        assert_eq!(d.order_u64(), Some(1));
    }

    #[test]
    fn derived_of_s4_is_a4() {
        let s4 = PermGroup::from_generators(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])])
            .unwrap();
        let d = s4.derived_subgroup().unwrap();
        // Oracle: A4 = the 12 even elements of the exhaustive closure.
        assert_eq!(d.order_u64(), Some(12));
        // Normality: conjugates of the derived subgroup's generators stay inside.
        for h in d.generators() {
            for g in s4.generators() {
                let c = g.inverse().then(h).then(g);
                assert!(d.contains(&c));
            }
        }
    }

    #[test]
    fn normal_closure_examples() {
        let s4 = PermGroup::from_generators(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])])
            .unwrap();
        let trivial = s4.normal_closure(&[Permutation::identity(4)]).unwrap();
        assert_eq!(trivial.order_u64(), Some(1));
        let from_transposition = s4.normal_closure(&[cyc(4, &[&[0, 1]])]).unwrap();
        assert_eq!(from_transposition.order_u64(), Some(24));
        let from_three_cycle = s4.normal_closure(&[cyc(4, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(from_three_cycle.order_u64(), Some(12));
    }

    #[test]
    fn cyclic_c4_is_imprimitive() {
        let g = PermGroup::from_generators(4, vec![cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        match g.is_primitive().unwrap() {
            Primitivity::Imprimitive(blocks) => {
                assert_eq!(blocks, vec![vec![0, 2], vec![1, 3]]);
            }
            Primitivity::Primitive => panic!("C4 must be imprimitive"),
        }
    }

    #[test]
    fn s3_natural_is_primitive() {
        let g = PermGroup::from_generators(3, vec![cyc(3, &[&[0, 1]]), cyc(3, &[&[0, 1, 2]])])
            .unwrap();
        assert_eq!(g.is_primitive().unwrap(), Primitivity::Primitive);
    }

    #[test]
    fn primitivity_rejects_intransitive() {
        let g = PermGroup::from_generators(4, vec![cyc(4, &[&[0, 1]])]).unwrap();
        assert!(matches!(g.is_primitive(), Err(Error::Intransitive)));
    }

    #[test]
    fn factored_order_matches_biguint_order() {
        let g = PermGroup::from_generators(5, vec![cyc(5, &[&[0, 1]]), cyc(5, &[&[0, 1, 2, 3, 4]])])
            .unwrap();
        assert_eq!(&g.order_factored().to_biguint(), g.order());
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(5);
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.contains(&Permutation::identity(5)));
        assert!(!g.contains(&cyc(5, &[&[0, 1]])));
    }
}

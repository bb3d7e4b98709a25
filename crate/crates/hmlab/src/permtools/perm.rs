//! Permutations of {0..deg-1}, the atom of all monodromy actions.

use crate::error::Error;
use std::fmt;

/// A bijection of {0..deg-1}, stored as the image of each point.
///
/// Composition convention, fixed once for the whole crate: in
/// `compose(p, q)` the left argument acts first, so the result sends
/// `x` to `q(p(x))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, Error> {
        let deg = images.len();
        let mut seen = vec![false; deg];
        for &y in &images {
            if (y as usize) >= deg || seen[y as usize] {
                return Err(Error::NotBijection(deg));
            }
            seen[y as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles; points absent from every cycle are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, Error> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let a = cycle[w];
                let b = cycle[(w + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::PointOutOfRange { point: a.max(b), degree });
                }
                images[a as usize] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, Error> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked composition for internal hot paths; degrees must match.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&y| other.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &y) in self.images.iter().enumerate() {
            images[y as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn power(&self, n: i64) -> Permutation {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                len += 1;
                x = self.apply(x);
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &y)| i as u32 == y).count()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut x = start as u32;
            let mut first = true;
            while !seen[x as usize] {
                seen[x as usize] = true;
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{x}")?;
                x = self.apply(x);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Orbit of `start` under `gens`, in deterministic BFS order.
pub fn orbit(start: u32, gens: &[Permutation]) -> Result<Vec<u32>, Error> {
    let degree = match gens.first() {
        Some(g) => g.degree(),
        None => return Ok(vec![start]),
    };
    if start as usize >= degree {
        return Err(Error::PointOutOfRange { point: start, degree });
    }
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let mut seen = vec![false; degree];
    let mut out = vec![start];
    seen[start as usize] = true;
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for g in gens {
            let y = g.apply(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[u32]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_identity() {
        let t = p(&[1, 0, 2]);
        let id = Permutation::identity(3);
        assert_eq!(t.compose(&id).unwrap(), t);
        assert_eq!(id.compose(&t).unwrap(), t);
    }

    #[test]
    fn compose_involution() {
        let t = p(&[1, 0]);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_left_first_convention() {
        // (0 1) then (1 2): 0 -> 1 -> 2, so the result maps 0 to 2.
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(a.compose(&b).unwrap(), p(&[2, 0, 1]));
    }

    #[test]
    fn compose_degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(a.compose(&b).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let t = p(&[2, 0, 3, 1]);
        assert!(t.compose(&t.inverse()).unwrap().is_identity());
        assert!(t.inverse().compose(&t).unwrap().is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn orbit_identity_is_singleton() {
        assert_eq!(orbit(1, &[Permutation::identity(4)]).unwrap(), vec![1]);
    }

    #[test]
    fn orbit_of_cycle_is_everything() {
        let c = Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(orbit(0, &[c]).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn power_matches_repeated_composition() {
        let c = Permutation::from_cycles(6, &[&[0, 1, 2], &[3, 4]]).unwrap();
        let mut acc = Permutation::identity(6);
        for k in 0..=6 {
            assert_eq!(c.power(k), acc);
            acc = acc.then(&c);
        }
        assert_eq!(c.power(-1), c.inverse());
    }

    #[test]
    fn cycle_lengths_sorted() {
        let c = Permutation::from_cycles(7, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(c.cycle_lengths(), vec![3, 2, 1, 1]);
        assert_eq!(c.fixed_points(), 2);
    }
}

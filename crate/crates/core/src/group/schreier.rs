//! Deterministic Schreier–Sims.

use num_bigint::BigUint;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub point: usize,
    pub gens: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// `transversal[β]` maps the base point to `β`.
    pub transversal: Vec<Option<Permutation>>,
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens {
            if !g.is_identity() && !chain.strong.contains(g) {
                chain.strong.push(g.clone());
            }
        }
        for g in chain.strong.clone() {
            if chain.base.iter().all(|&b| g.apply(b) == b) {
                chain
                    .base
                    .push(g.first_moved_point().expect("non-identity"));
            }
        }
        chain.rebuild_levels();

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            match chain.missing_generator(i as usize) {
                Some((residue, j)) => {
                    if j == chain.levels.len() {
                        chain
                            .base
                            .push(residue.first_moved_point().expect("non-identity residue"));
                    }
                    chain.strong.push(residue);
                    chain.rebuild_levels();
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        chain
    }

    fn rebuild_levels(&mut self) {
        self.levels = (0..self.base.len())
            .map(|l| {
                let gens: Vec<Permutation> = self
                    .strong
                    .iter()
                    .filter(|s| self.base[..l].iter().all(|&b| s.apply(b) == b))
                    .cloned()
                    .collect();
                orbit_level(self.degree, self.base[l], gens)
            })
            .collect();
    }

    /// First Schreier generator at level `i` that does not sift through the
    /// levels below it, together with the level where sifting stopped.
    fn missing_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &beta in &level.orbit {
            let u = level.transversal[beta].as_ref().expect("orbit point");
            for s in &level.gens {
                let gamma = s.apply(beta);
                let v = level.transversal[gamma].as_ref().expect("orbit point");
                let h = &(u * s) * &v.inverse();
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = self.strip(h, i + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    /// Sifts `g` through the levels from `from` on. Returns the residue and
    /// the level at which sifting stopped (`levels.len()` if it went through).
    pub fn strip(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(level.point);
            match &level.transversal[beta] {
                Some(u) => g = &g * &u.inverse(),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Every element exactly once, as products of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for a in &acc {
                for &beta in &level.orbit {
                    let u = level.transversal[beta].as_ref().expect("orbit point");
                    next.push(a * u);
                }
            }
            acc = next;
        }
        acc
    }
}

fn orbit_level(degree: usize, point: usize, gens: Vec<Permutation>) -> Level {
    let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
    transversal[point] = Some(Permutation::identity(degree));
    let mut orbit = vec![point];
    let mut head = 0;
    while head < orbit.len() {
        let beta = orbit[head];
        head += 1;
        for s in &gens {
            let gamma = s.apply(beta);
            if transversal[gamma].is_none() {
                let u = transversal[beta].as_ref().expect("visited") * s;
                transversal[gamma] = Some(u);
                orbit.push(gamma);
            }
        }
    }
    Level {
        point,
        gens,
        orbit,
        transversal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;
    use std::collections::HashSet;

    fn chain(n: usize, gens: &[&str]) -> StabChain {
        let gens: Vec<_> = gens.iter().map(|s| parse_cycles(s, n).unwrap()).collect();
        StabChain::new(n, &gens)
    }

    #[test]
    fn small_orders() {
        assert_eq!(chain(3, &["(1,2)", "(1,2,3)"]).order(), BigUint::from(6u32));
        assert_eq!(chain(3, &[]).order(), BigUint::from(1u32));
        assert_eq!(
            chain(5, &["(1,2)", "(1,2,3,4,5)"]).order(),
            BigUint::from(120u32)
        );
        assert_eq!(
            chain(6, &["(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"]).order(),
            BigUint::from(18u32)
        );
    }

    #[test]
    fn enumeration_matches_order_and_membership() {
        let c = chain(6, &["(1,2,3,4,5,6)", "(1,2)"]);
        let elems = c.elements();
        assert_eq!(elems.len(), 720);
        let set: HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 720);
        assert!(elems.iter().all(|g| c.contains(g)));

        let a = chain(5, &["(1,2,3)", "(1,2,4)", "(1,2,5)"]);
        assert_eq!(a.order(), BigUint::from(60u32));
        assert!(a.contains(&parse_cycles("(1,2)(3,4)", 5).unwrap()));
        assert!(!a.contains(&parse_cycles("(1,2)", 5).unwrap()));
    }
}

//! Bounded searches for abelian subgroups, up to conjugacy.
//!
//! Subgroups are grown one generator at a time: every class of subgroups
//! generated by `k + 1` elements contains some `⟨A, y⟩` with `A` a known
//! representative on `k` generators and `y ∈ C_G(A)`. Each new class is
//! recorded together with all of its conjugates, so later candidates are
//! deduplicated by an exact element-set lookup.

use std::collections::{BTreeMap, HashSet};

use super::{ElementSet, PermGroup};
use crate::error::{Error, Result};
use crate::perm::Permutation;

struct Search<'a> {
    set: &'a ElementSet,
    seen: HashSet<Vec<u32>>,
}

struct Found {
    gens: Vec<u32>,
    elements: Vec<u32>,
}

impl<'a> Search<'a> {
    fn elem(&self, i: u32) -> &Permutation {
        &self.set.list[i as usize]
    }

    fn idx(&self, g: &Permutation) -> u32 {
        self.set.index[g]
    }

    fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let id = self.idx(&Permutation::identity(self.elem(0).degree()));
        let mut members: HashSet<u32> = HashSet::from([id]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.idx(&(self.elem(x) * self.elem(g)));
                if members.insert(y) {
                    queue.push(y);
                }
            }
        }
        let mut v: Vec<u32> = members.into_iter().collect();
        v.sort_unstable();
        v
    }

    fn record_conjugates(&mut self, elements: &[u32]) {
        for x in &self.set.list {
            let mut conj: Vec<u32> = elements
                .iter()
                .map(|&h| self.idx(&self.elem(h).conjugate_by(x)))
                .collect();
            conj.sort_unstable();
            self.seen.insert(conj);
        }
    }

    /// Grows representatives level by level; `max_gens = None` runs until no
    /// new class appears. `allowed` filters candidate generators.
    fn run(
        &mut self,
        max_gens: Option<usize>,
        allowed: impl Fn(&Permutation) -> bool,
    ) -> Vec<Found> {
        let trivial = Found {
            gens: Vec::new(),
            elements: self.closure(&[]),
        };
        self.record_conjugates(&trivial.elements);
        let mut found = vec![trivial];
        let mut frontier = vec![0usize];
        let mut level = 0;
        while !frontier.is_empty() && max_gens.is_none_or(|m| level < m) {
            let mut next = Vec::new();
            for &a in &frontier {
                let (gens, elements) = (found[a].gens.clone(), found[a].elements.clone());
                for y in 0..self.set.list.len() as u32 {
                    if elements.binary_search(&y).is_ok() {
                        continue;
                    }
                    let ye = self.elem(y);
                    if !allowed(ye) || !gens.iter().all(|&g| self.elem(g) * ye == ye * self.elem(g))
                    {
                        continue;
                    }
                    let mut new_gens = gens.clone();
                    new_gens.push(y);
                    let closed = self.closure(&new_gens);
                    if self.seen.contains(&closed) {
                        continue;
                    }
                    self.record_conjugates(&closed);
                    next.push(found.len());
                    found.push(Found {
                        gens: new_gens,
                        elements: closed,
                    });
                }
            }
            frontier = next;
            level += 1;
        }
        found
    }

    fn into_groups(self, group: &PermGroup, mut found: Vec<Found>) -> Result<Vec<PermGroup>> {
        found.sort_by_key(|f| f.elements.len());
        found
            .iter()
            .map(|f| group.subgroup(f.gens.iter().map(|&g| self.elem(g).clone()).collect()))
            .collect()
    }
}

/// One representative of each conjugacy class of abelian subgroups generated
/// by at most `max_gens` elements, sorted by order.
pub fn abelian_subgroups(group: &PermGroup, max_gens: usize) -> Result<Vec<PermGroup>> {
    let set = group.element_set()?;
    let mut search = Search {
        set,
        seen: HashSet::new(),
    };
    let found = search.run(Some(max_gens), |_| true);
    search.into_groups(group, found)
}

/// One representative of each conjugacy class of elementary abelian
/// 2-subgroups, including the trivial subgroup, sorted by order.
pub fn elementary_abelian_2_subgroups(group: &PermGroup) -> Result<Vec<PermGroup>> {
    let set = group.element_set()?;
    let mut search = Search {
        set,
        seen: HashSet::new(),
    };
    let found = search.run(None, |g| g.order() == 2);
    search.into_groups(group, found)
}

/// Invariant factors of an abelian group, largest first, e.g. `[4, 2]` for
/// `ℤ/4 × ℤ/2`. The trivial group gives an empty list.
pub fn abelian_invariants(group: &PermGroup) -> Result<Vec<u64>> {
    if !group.is_abelian() {
        return Err(Error::Invariant(
            "abelian invariants of a non-abelian group".into(),
        ));
    }
    let elements = group.elements()?;
    let order = group.order();
    // prime -> exponents of the cyclic p-factors, largest first
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut full = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                full += 1;
            }
            // n_k = log_p #{g : g^(p^k) = 1}
            let mut logs = vec![0u32];
            let mut k = 1u32;
            while *logs.last().unwrap() < full {
                let pk = p.pow(k) as i64;
                let count = elements.iter().filter(|g| g.pow(pk).is_identity()).count() as u64;
                logs.push(ilog(count, p));
                k += 1;
            }
            // number of cyclic factors of order >= p^k is n_k - n_{k-1}
            let ge: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            let mut exps = Vec::new();
            for k in 0..ge.len() {
                let next = ge.get(k + 1).copied().unwrap_or(0);
                for _ in 0..ge[k] - next {
                    exps.push(k as u32 + 1);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            parts.insert(p, exps);
        }
        p += 1;
    }
    let len = parts.values().map(Vec::len).max().unwrap_or(0);
    let factors = (0..len)
        .map(|i| {
            parts
                .iter()
                .map(|(&p, e)| e.get(i).map_or(1, |&x| p.pow(x)))
                .product::<u64>()
        })
        .collect::<Vec<_>>();
    debug_assert!(factors.windows(2).all(|w| w[0] % w[1] == 0));
    Ok(factors)
}

fn ilog(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

//! Conjugacy classes by full enumeration.

use std::sync::Arc;

use super::{lcm, ElementSet};
use crate::perm::Permutation;

/// Class decomposition with canonical ordering: the identity class first,
/// then ascending by (class size, element order, minimal element).
/// Each representative is the lexicographically minimal member of its class.
pub struct ClassData {
    elements: Arc<ElementSet>,
    element_class: Vec<u32>,
    reps: Vec<Permutation>,
    sizes: Vec<u64>,
    orders: Vec<u64>,
    inverse_map: Vec<usize>,
    /// `power_maps[k][i]` is the class of `rep_i^k` for `0 <= k <= exponent`.
    power_maps: Vec<Vec<usize>>,
    exponent: u64,
}

impl ClassData {
    pub(crate) fn compute(elements: Arc<ElementSet>, gens: &[Permutation]) -> Self {
        let n = elements.list.len();
        const UNSEEN: u32 = u32::MAX;
        let mut raw_class = vec![UNSEEN; n];
        // (size, order, rep index); reps are minimal because we scan in order.
        let mut raw: Vec<(u64, u64, usize)> = Vec::new();
        for start in 0..n {
            if raw_class[start] != UNSEEN {
                continue;
            }
            let id = raw.len() as u32;
            raw_class[start] = id;
            let mut queue = vec![start];
            let mut head = 0;
            while head < queue.len() {
                let x = &elements.list[queue[head]];
                head += 1;
                for s in gens {
                    let y = elements.index[&x.conjugate_by(s)] as usize;
                    if raw_class[y] == UNSEEN {
                        raw_class[y] = id;
                        queue.push(y);
                    }
                }
            }
            raw.push((queue.len() as u64, elements.list[start].order(), start));
        }

        let mut order: Vec<usize> = (0..raw.len()).collect();
        // The identity is the minimal element overall, so it is raw class 0.
        order[1..].sort_by(|&a, &b| raw[a].cmp(&raw[b]));
        let mut renumber = vec![0u32; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new as u32;
        }
        let element_class: Vec<u32> = raw_class.iter().map(|&c| renumber[c as usize]).collect();
        let reps: Vec<Permutation> = order
            .iter()
            .map(|&c| elements.list[raw[c].2].clone())
            .collect();
        let sizes: Vec<u64> = order.iter().map(|&c| raw[c].0).collect();
        let orders: Vec<u64> = order.iter().map(|&c| raw[c].1).collect();
        let exponent = orders.iter().fold(1, |a, &b| lcm(a, b));

        let class_of = |g: &Permutation| element_class[elements.index[g] as usize] as usize;
        let k = reps.len();
        let mut power_maps = vec![vec![0usize; k]; exponent as usize + 1];
        for (i, rep) in reps.iter().enumerate() {
            let mut acc = Permutation::identity(rep.degree());
            for row in power_maps.iter_mut() {
                row[i] = class_of(&acc);
                acc = &acc * rep;
            }
        }
        let inverse_map: Vec<usize> = reps.iter().map(|r| class_of(&r.inverse())).collect();

        ClassData {
            elements,
            element_class,
            reps,
            sizes,
            orders,
            inverse_map,
            power_maps,
            exponent,
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.elements.list.len() as u64
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> &Permutation {
        &self.reps[i]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn size(&self, i: usize) -> u64 {
        self.sizes[i]
    }

    /// Order of the elements in class `i`.
    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.group_order() / self.sizes[i]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.elements
            .position(g)
            .map(|p| self.element_class[p] as usize)
    }

    /// Class of each element, aligned with the group's canonical element list.
    pub fn element_classes(&self) -> impl Iterator<Item = usize> + '_ {
        self.element_class.iter().map(|&c| c as usize)
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements.list
    }

    pub fn members(&self, i: usize) -> impl Iterator<Item = &Permutation> + '_ {
        self.elements
            .list
            .iter()
            .zip(&self.element_class)
            .filter(move |(_, &c)| c as usize == i)
            .map(|(g, _)| g)
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_map[i]
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse_map
    }

    pub fn square_class(&self, i: usize) -> usize {
        self.power_class(i, 2)
    }

    pub fn is_real(&self, i: usize) -> bool {
        self.inverse_map[i] == i
    }

    /// Class of `g^k` for `g` in class `i`; `k` may be negative.
    pub fn power_class(&self, i: usize, k: i64) -> usize {
        let e = self.exponent as i64;
        self.power_maps[k.rem_euclid(e) as usize][i]
    }

    pub fn power_map(&self, k: usize) -> &[usize] {
        &self.power_maps[k]
    }

    /// Number of `g` with `g² = 1`, the identity included.
    pub fn involution_count(&self) -> u64 {
        (0..self.len())
            .filter(|&i| self.square_class(i) == 0)
            .map(|i| self.sizes[i])
            .sum()
    }

    /// Power-map rationality: every `g` is conjugate to `g^r` whenever
    /// `gcd(r, |g|) = 1`.
    pub fn is_rational(&self) -> bool {
        (0..self.len()).all(|i| {
            let o = self.orders[i];
            (1..o)
                .filter(|&r| num_integer::gcd(r, o) == 1)
                .all(|r| self.power_class(i, r as i64) == i)
        })
    }
}

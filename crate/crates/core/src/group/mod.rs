//! Finite permutation groups backed by a base and strong generating set.
//!
//! A [`PermGroup`] is immutable once built. Element enumeration and the
//! conjugacy-class decomposition are computed on first use and cached inside
//! the group, guarded by the enumeration cap.

mod classes;
mod schreier;
mod subgroups;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use classes::ClassData;
pub use subgroups::{abelian_invariants, abelian_subgroups, elementary_abelian_2_subgroups};

use schreier::StabChain;

/// Default bound on the number of elements any enumeration may touch.
pub const DEFAULT_CAP: u64 = 200_000;

/// Default generator bound for abelian subgroup searches.
pub const DEFAULT_MAX_GENS: usize = 3;

/// The elements of a group in canonical (lexicographic image) order.
pub(crate) struct ElementSet {
    pub list: Vec<Permutation>,
    pub index: HashMap<Permutation, u32>,
}

impl ElementSet {
    pub fn position(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }
}

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    cap: u64,
    elements: OnceLock<Arc<ElementSet>>,
    classes: OnceLock<Arc<ClassData>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        Self {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
            cap: self.cap,
            elements: self.elements.clone(),
            classes: self.classes.clone(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order_big())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Builds the group generated by `generators` on `degree` points.
    pub fn build(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::new(degree, &generators);
        Ok(Self {
            degree,
            generators,
            chain,
            cap: DEFAULT_CAP,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::build(degree, Vec::new()).expect("no generators")
    }

    /// Same group with a different enumeration cap. Cached data is kept.
    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain.strong_generators()
    }

    pub fn base(&self) -> &[usize] {
        self.chain.base()
    }

    pub fn order_big(&self) -> BigUint {
        self.chain.order()
    }

    /// Group order; saturates at `u64::MAX` for groups far beyond desk scale.
    pub fn order(&self) -> u64 {
        self.order_big().to_u64().unwrap_or(u64::MAX)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a * b == b * a))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality as subsets of the symmetric group.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order_big() == other.order_big()
            && self.is_subgroup_of(other)
    }

    /// Subgroup generated by `generators`, inheriting the cap.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<PermGroup> {
        for g in &generators {
            if !self.contains(g) {
                return Err(Error::NotMember(g.to_string()));
            }
        }
        Ok(PermGroup::build(self.degree, generators)?.with_cap(self.cap))
    }

    pub(crate) fn check_cap(&self) -> Result<()> {
        let order = self.order_big();
        if order > BigUint::from(self.cap) {
            return Err(Error::CapExceeded {
                order: order.to_u64().unwrap_or(u64::MAX),
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub(crate) fn element_set(&self) -> Result<&Arc<ElementSet>> {
        if let Some(set) = self.elements.get() {
            return Ok(set);
        }
        self.check_cap()?;
        let mut list = self.chain.elements();
        list.sort_unstable();
        let index = list
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Ok(self
            .elements
            .get_or_init(|| Arc::new(ElementSet { list, index })))
    }

    /// All elements in canonical order (ascending image vectors).
    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(&self.element_set()?.list)
    }

    pub fn classes(&self) -> Result<&Arc<ClassData>> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let set = self.element_set()?.clone();
        let data = ClassData::compute(set, &self.generators);
        Ok(self.classes.get_or_init(|| Arc::new(data)))
    }

    pub fn exponent(&self) -> Result<u64> {
        Ok(self.classes()?.exponent())
    }

    /// Hash of the sorted element list. Equal subgroups have equal
    /// fingerprints; confirm with [`PermGroup::same_group`].
    pub fn fingerprint(&self) -> Result<u64> {
        let mut h = DefaultHasher::new();
        self.degree.hash(&mut h);
        self.elements()?.hash(&mut h);
        Ok(h.finish())
    }

    /// Subgroup generated greedily by a list of elements: each element not
    /// yet in the span becomes a generator.
    pub fn from_elements(degree: usize, elements: &[Permutation]) -> Result<PermGroup> {
        let mut builder = SubgroupBuilder::new(degree);
        for e in elements {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: e.degree(),
                });
            }
            builder.add(e);
        }
        Ok(builder.finish())
    }

    fn require_member(&self, g: &Permutation) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotMember(g.to_string()))
        }
    }

    /// Centralizer `C_g` of an element of the group.
    pub fn centralizer(&self, g: &Permutation) -> Result<PermGroup> {
        self.require_member(g)?;
        Ok(self.conjugation_orbit(g)?.stabilizer)
    }

    /// Centralizer in this group of an arbitrary permutation of the same
    /// degree, which need not belong to the group.
    pub fn centralizer_of(&self, g: &Permutation) -> Result<PermGroup> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.conjugation_orbit(g)?.stabilizer)
    }

    /// Pointwise centralizer of a set of elements, e.g. the generators of a
    /// subgroup.
    pub fn centralizer_of_all(&self, elements: &[Permutation]) -> Result<PermGroup> {
        let mut current = self.clone();
        for e in elements {
            current = current.centralizer_of(e)?;
        }
        Ok(current)
    }

    /// Some `x` with `x⁻¹ g x = g⁻¹`, read off the Schreier tree of the
    /// conjugation orbit of `g`.
    pub fn inverting_witness(&self, g: &Permutation) -> Result<Option<Permutation>> {
        self.require_member(g)?;
        let orbit = self.conjugation_orbit(g)?;
        Ok(orbit.transversal_to(&g.inverse()))
    }

    /// `N_g`, the normalizer of the set `{g, g⁻¹}`.
    pub fn normalizer_pair(&self, g: &Permutation) -> Result<PermGroup> {
        self.require_member(g)?;
        let orbit = self.conjugation_orbit(g)?;
        let centralizer = orbit.stabilizer.clone();
        let witness = match orbit.transversal_to(&g.inverse()) {
            Some(x) if !centralizer.contains(&x) => x,
            _ => return Ok(centralizer),
        };
        let mut gens = centralizer.generators().to_vec();
        gens.push(witness);
        let normalizer = PermGroup::build(self.degree, gens)?.with_cap(self.cap);
        if normalizer.order_big() != centralizer.order_big() * BigUint::from(2u32) {
            return Err(Error::Invariant(format!("[N_g : C_g] != 2 for g = {g}")));
        }
        Ok(normalizer)
    }

    /// Orbit of `g` under conjugation with its Schreier tree, and the
    /// stabilizer obtained from Schreier generators.
    fn conjugation_orbit(&self, g: &Permutation) -> Result<ConjugationOrbit> {
        let gens = &self.generators;
        let mut points: Vec<Permutation> = vec![g.clone()];
        let mut reps: Vec<Permutation> = vec![self.identity()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(g.clone(), 0)]);
        let mut head = 0;
        while head < points.len() {
            for s in gens {
                let q = points[head].conjugate_by(s);
                if !index.contains_key(&q) {
                    index.insert(q.clone(), points.len());
                    reps.push(&reps[head] * s);
                    points.push(q);
                }
            }
            head += 1;
            if points.len() as u64 > self.cap {
                return Err(Error::CapExceeded {
                    order: self.order(),
                    cap: self.cap,
                });
            }
        }

        let target = self.order_big() / BigUint::from(points.len());
        let mut builder = SubgroupBuilder::new(self.degree);
        'outer: for (p, u) in points.iter().zip(&reps) {
            for s in gens {
                if builder.order() == target {
                    break 'outer;
                }
                let q = index[&p.conjugate_by(s)];
                let h = &(u * s) * &reps[q].inverse();
                builder.add(&h);
            }
        }
        let stabilizer = builder.finish().with_cap(self.cap);
        if stabilizer.order_big() != target {
            return Err(Error::Invariant(format!(
                "orbit-stabilizer mismatch for {g}"
            )));
        }
        Ok(ConjugationOrbit {
            index,
            reps,
            stabilizer,
        })
    }

    /// Centralizer by filtering every element; oracle for [`Self::centralizer`].
    pub fn centralizer_brute_force(&self, g: &Permutation) -> Result<PermGroup> {
        let elems: Vec<Permutation> = self
            .elements()?
            .iter()
            .filter(|x| (*x * g) == (g * *x))
            .cloned()
            .collect();
        Ok(PermGroup::from_elements(self.degree, &elems)?.with_cap(self.cap))
    }

    /// `N_g` by filtering every element; oracle for [`Self::normalizer_pair`].
    pub fn normalizer_pair_brute_force(&self, g: &Permutation) -> Result<PermGroup> {
        let inv = g.inverse();
        let elems: Vec<Permutation> = self
            .elements()?
            .iter()
            .filter(|x| {
                let c = g.conjugate_by(x);
                c == *g || c == inv
            })
            .cloned()
            .collect();
        Ok(PermGroup::from_elements(self.degree, &elems)?.with_cap(self.cap))
    }
}

struct ConjugationOrbit {
    index: HashMap<Permutation, usize>,
    reps: Vec<Permutation>,
    stabilizer: PermGroup,
}

impl ConjugationOrbit {
    fn transversal_to(&self, target: &Permutation) -> Option<Permutation> {
        self.index.get(target).map(|&i| self.reps[i].clone())
    }
}

/// Grows a subgroup one generator at a time, skipping elements already in it.
pub(crate) struct SubgroupBuilder {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
}

impl SubgroupBuilder {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            gens: Vec::new(),
            chain: StabChain::new(degree, &[]),
        }
    }

    pub fn add(&mut self, g: &Permutation) -> bool {
        if self.chain.contains(g) {
            return false;
        }
        self.gens.push(g.clone());
        self.chain = StabChain::new(self.degree, &self.gens);
        true
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn finish(self) -> PermGroup {
        PermGroup {
            degree: self.degree,
            generators: self.gens,
            chain: self.chain,
            cap: DEFAULT_CAP,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }
}

/// lcm helper shared by the arithmetic modules.
pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

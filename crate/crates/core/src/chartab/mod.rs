//! Exact character tables and operations on characters.

mod dixon;
mod modular;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::cyclo::{inv_mod, mul_mod, pow_mod, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{ClassData, PermGroup};
use crate::perm::Permutation;

/// A class function, stored by value on the classes of its owner.
#[derive(Clone)]
pub struct Character {
    classes: Arc<ClassData>,
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn new(classes: Arc<ClassData>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != classes.len() {
            return Err(Error::OutOfRange(format!(
                "{} values for {} classes",
                values.len(),
                classes.len()
            )));
        }
        Ok(Self { classes, values })
    }

    pub fn trivial(classes: Arc<ClassData>) -> Self {
        let values = vec![Cyclotomic::one(); classes.len()];
        Self { classes, values }
    }

    /// `|G|` at the identity, zero elsewhere.
    pub fn regular(classes: Arc<ClassData>) -> Self {
        let values = (0..classes.len())
            .map(|i| {
                if i == 0 {
                    Cyclotomic::from_int(classes.group_order() as i64)
                } else {
                    Cyclotomic::zero()
                }
            })
            .collect();
        Self { classes, values }
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn degree(&self) -> i64 {
        self.values[0]
            .as_i64()
            .expect("degree is a rational integer")
    }

    pub fn same_owner(&self, other: &Character) -> bool {
        Arc::ptr_eq(&self.classes, &other.classes)
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_rational)
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual().values == self.values
    }

    /// `χ*(g) = χ(g⁻¹)`.
    pub fn dual(&self) -> Character {
        let values = (0..self.values.len())
            .map(|i| self.values[self.classes.inverse_class(i)].clone())
            .collect();
        Self {
            classes: self.classes.clone(),
            values,
        }
    }

    fn check_owner(&self, group: &PermGroup) -> Result<()> {
        if Arc::ptr_eq(&self.classes, group.classes()?) {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.same_owner(other) && self.values == other.values
    }
}

impl std::ops::Add for &Character {
    type Output = Character;

    fn add(self, rhs: &Character) -> Character {
        assert!(self.same_owner(rhs), "characters of different groups");
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| a + b)
            .collect();
        Character {
            classes: self.classes.clone(),
            values,
        }
    }
}

impl std::fmt::Debug for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// `(1/|G|) Σ_K |K| a(K) conj(b(K))`.
pub fn inner_product(a: &Character, b: &Character) -> Result<Rational> {
    if !a.same_owner(b) {
        return Err(Error::OwnerMismatch);
    }
    let classes = &a.classes;
    let mut sum = Cyclotomic::zero();
    for i in 0..classes.len() {
        let term = &a.values[i] * &b.values[i].conj();
        sum += &term.scale(&Rational::from_integer(classes.size(i).into()));
    }
    let sum = sum
        .as_rational()
        .ok_or_else(|| Error::Invariant("inner product is not rational".into()))?;
    Ok(sum / Rational::from_integer(classes.group_order().into()))
}

/// Class of `G` containing each class of `H`.
pub fn fusion(h: &PermGroup, g: &PermGroup) -> Result<Vec<usize>> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup(format!("{h:?}")));
    }
    let hc = h.classes()?;
    let gc = g.classes()?;
    hc.reps()
        .iter()
        .map(|r| {
            gc.class_of(r)
                .ok_or_else(|| Error::NotMember(r.to_string()))
        })
        .collect()
}

/// Induced character `χ↑G` of a character of `H ≤ G`.
pub fn induce(g: &PermGroup, h: &PermGroup, chi: &Character) -> Result<Character> {
    chi.check_owner(h)?;
    let fuse = fusion(h, g)?;
    let gc = g.classes()?;
    let hc = h.classes()?;
    let mut sums = vec![Cyclotomic::zero(); gc.len()];
    for (m, &l) in fuse.iter().enumerate() {
        let term = chi.values[m].scale(&Rational::from_integer(hc.size(m).into()));
        sums[l] += &term;
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(l, s)| {
            let factor = Rational::new(
                gc.group_order().into(),
                (gc.size(l) * hc.group_order()).into(),
            );
            s.scale(&factor)
        })
        .collect();
    Ok(Character {
        classes: gc.clone(),
        values,
    })
}

/// Restriction `χ↓H` of a character of `G` to `H ≤ G`.
pub fn restrict(chi: &Character, g: &PermGroup, h: &PermGroup) -> Result<Character> {
    chi.check_owner(g)?;
    let fuse = fusion(h, g)?;
    Ok(Character {
        classes: h.classes()?.clone(),
        values: fuse.iter().map(|&l| chi.values[l].clone()).collect(),
    })
}

/// `χ^x(h) = χ(x h x⁻¹)` for `x` normalizing `H`.
pub fn conjugate_character(chi: &Character, h: &PermGroup, x: &Permutation) -> Result<Character> {
    chi.check_owner(h)?;
    let hc = h.classes()?;
    let x_inv = x.inverse();
    // x h x⁻¹ = h^(x⁻¹) in right-action notation
    let values = hc
        .reps()
        .iter()
        .map(|r| {
            let image = r.conjugate_by(&x_inv);
            hc.class_of(&image)
                .map(|c| chi.values[c].clone())
                .ok_or_else(|| Error::NotNormalizing(x.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    if h.generators()
        .iter()
        .any(|s| !h.contains(&s.conjugate_by(x)))
    {
        return Err(Error::NotNormalizing(x.to_string()));
    }
    Ok(Character {
        classes: hc.clone(),
        values,
    })
}

pub fn dual_character(chi: &Character) -> Character {
    chi.dual()
}

pub fn is_rational_character(chi: &Character) -> bool {
    chi.is_rational()
}

/// Power-map criterion on the classes of `G`.
pub fn is_rational_group(g: &PermGroup) -> Result<bool> {
    Ok(g.classes()?.is_rational())
}

pub struct CharacterTable {
    group: PermGroup,
    classes: Arc<ClassData>,
    irreducibles: Vec<Character>,
    prime: u64,
    root: u64,
    modular: Vec<Vec<u64>>,
    eigenvalues: Vec<Vec<Vec<u64>>>,
}

impl CharacterTable {
    pub fn compute(group: &PermGroup) -> Result<Self> {
        let classes = group.classes()?.clone();
        let out = dixon::compute(group, &classes)?;
        let mut rows: Vec<_> = out
            .values
            .into_iter()
            .zip(out.modular)
            .zip(out.eigenvalues)
            .map(|((v, m), ev)| (v, m, ev))
            .collect();
        // trivial first, then by degree
        rows.sort_by(|(a, _, ea), (b, _, eb)| {
            let key = |ev: &[Vec<u64>]| (ev.iter().any(|x| x.iter().any(|&j| j != 0)), ev[0].len());
            key(ea).cmp(&key(eb)).then_with(|| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.cmp_coeffs(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        });
        let mut values = Vec::with_capacity(rows.len());
        let mut modular = Vec::with_capacity(rows.len());
        let mut eigenvalues = Vec::with_capacity(rows.len());
        for (v, m, ev) in rows {
            values.push(v);
            modular.push(m);
            eigenvalues.push(ev);
        }
        let irreducibles = values
            .into_iter()
            .map(|v| Character {
                classes: classes.clone(),
                values: v,
            })
            .collect();
        let table = Self {
            group: group.clone(),
            classes,
            irreducibles,
            prime: out.prime,
            root: out.root,
            modular,
            eigenvalues,
        };
        table.check_orthogonality()?;
        table.check_modular_consistency()?;
        Ok(table)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles.iter().map(Character::degree).collect()
    }

    pub fn trivial(&self) -> Character {
        Character::trivial(self.classes.clone())
    }

    /// Multiplicities of the irreducibles in `chi`.
    pub fn decompose(&self, chi: &Character) -> Result<Vec<Rational>> {
        self.irreducibles
            .iter()
            .map(|x| inner_product(chi, x))
            .collect()
    }

    /// Row and column orthogonality and `Σ χ(1)² = |G|`, exactly.
    ///
    /// Every value is the sum of the eigenvalues `ζ_e^j` it was lifted from.
    /// First the eigenvalue multisets are checked to be Galois compatible,
    /// `σ_a χ(g) = χ(g^a)`, for generators `a` of the units mod `e`. Then:
    ///
    /// - a row relation `s_ij = Σ |K| χ_i χ̄_j` is fixed by every `σ_a`,
    ///   since `K ↦ K^a` permutes classes of equal size, so `s_ij` is a
    ///   rational integer;
    /// - a column relation is moved by `σ_a` to another column relation.
    ///
    /// Each `s - c` is reduced along one ring map `ℤ[ζ_e] → GF(q)` with
    /// `q ≡ 1 (mod e)` and `q > B ≥ |σ(s - c)|`. For rows this is a rational
    /// integer below `q` in absolute value. For columns, vanishing of all
    /// relations under one map means vanishing of each under all `φ(e)` maps,
    /// so `q` divides `s - c` and its norm is 0 or at least `q^φ(e) > B^φ(e)`.
    pub fn check_orthogonality(&self) -> Result<()> {
        let k = self.classes.len();
        let order = self.classes.group_order();
        if self.irreducibles.len() != k {
            return Err(Error::Invariant("table is not square".into()));
        }
        let degrees = self.degrees();
        let deg_sq: i64 = degrees.iter().map(|d| d * d).sum();
        if deg_sq as u64 != order {
            return Err(Error::Invariant(format!(
                "Σ χ(1)² = {deg_sq} ≠ |G| = {order}"
            )));
        }
        let e = self.classes.exponent();
        for a in unit_generators(e) {
            for l in 0..k {
                let la = self.classes.power_class(l, a as i64);
                if self.classes.size(la) != self.classes.size(l) {
                    return Err(Error::Invariant(format!(
                        "power map {a} changes class sizes"
                    )));
                }
                for (i, ev) in self.eigenvalues.iter().enumerate() {
                    let mut image: Vec<u64> = ev[l].iter().map(|&j| j * a % e).collect();
                    image.sort_unstable();
                    if image != ev[la] {
                        return Err(Error::Invariant(format!(
                            "character {i} is not Galois compatible at class {l} under {a}"
                        )));
                    }
                }
            }
        }

        let d_max = degrees.iter().copied().max().unwrap_or(1) as u128;
        let bound = 2 * order as u128 * d_max * d_max + 2 * order as u128;
        let q = orthogonality_prime(e, bound)?;
        let root = pow_mod(modular::primitive_root(q), (q - 1) / e, q);
        let x = self.embed(q, root);
        let xc = self.embed(q, inv_mod(root, q));
        let sizes: Vec<u64> = (0..k).map(|l| self.classes.size(l) % q).collect();
        let xs: Vec<Vec<u64>> = xc
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&sizes)
                    .map(|(&v, &h)| fast_mul(v, h, q))
                    .collect()
            })
            .collect();
        for i in 0..k {
            for j in 0..k {
                let s = dot_mod(&x[i], &xs[j], q);
                let expected = if i == j { order % q } else { 0 };
                if s != expected {
                    return Err(Error::Invariant(format!("rows {i} and {j} not orthogonal")));
                }
            }
        }
        let xt = transpose(&x);
        let xct = transpose(&xc);
        for u in 0..k {
            let centralizer = self.classes.centralizer_order(u) % q;
            for v in 0..k {
                let s = dot_mod(&xt[u], &xct[v], q);
                let expected = if u == v { centralizer } else { 0 };
                if s != expected {
                    return Err(Error::Invariant(format!(
                        "columns {u} and {v} not orthogonal"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Images of all values under `ζ_e ↦ root` in `GF(q)`.
    fn embed(&self, q: u64, root: u64) -> Vec<Vec<u64>> {
        let e = self.classes.exponent();
        let powers: Vec<u64> = std::iter::successors(Some(1u64), |&p| Some(fast_mul(p, root, q)))
            .take(e as usize)
            .collect();
        self.eigenvalues
            .iter()
            .map(|row| {
                row.iter()
                    .map(|ev| ev.iter().fold(0, |acc, &j| (acc + powers[j as usize]) % q))
                    .collect()
            })
            .collect()
    }

    /// Every lifted value reduces to the modular table entry.
    pub fn check_modular_consistency(&self) -> Result<()> {
        let reduced = self.embed(self.prime, self.root);
        for (i, (row, m)) in reduced.iter().zip(&self.modular).enumerate() {
            if let Some(l) = (0..row.len()).find(|&l| row[l] != m[l]) {
                return Err(Error::Invariant(format!(
                    "character {i} at class {l} does not reduce to {} mod {}",
                    m[l], self.prime
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, spec: &str) -> TableJson {
        let c = &self.classes;
        TableJson {
            schema_version: 1,
            group: spec.to_string(),
            order: c.group_order(),
            exponent: c.exponent(),
            prime_used: self.prime,
            classes: (0..c.len())
                .map(|i| ClassJson {
                    rep_cycles: c.rep(i).to_string(),
                    size: c.size(i),
                    rep_order: c.element_order(i),
                    inverse_class: c.inverse_class(i),
                    square_class: c.square_class(i),
                })
                .collect(),
            irreducibles: self
                .irreducibles
                .iter()
                .map(|x| IrreducibleJson {
                    degree: x.degree(),
                    values: x.values.clone(),
                })
                .collect(),
        }
    }
}

/// Smallest prime `q ≡ 1 (mod e)` with `q > bound`.
fn orthogonality_prime(e: u64, bound: u128) -> Result<u64> {
    let start = (bound / e as u128 + 1) as u64;
    (start..)
        .map(|m| m * e + 1)
        .find(|&q| modular::is_prime(q))
        .filter(|&q| (q as u128) < 1u128 << 63)
        .ok_or_else(|| Error::Invariant("no prime for the orthogonality check".into()))
}

fn transpose(m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let k = m.first().map_or(0, Vec::len);
    (0..k)
        .map(|c| m.iter().map(|row| row[c]).collect())
        .collect()
}

fn dot_mod(a: &[u64], b: &[u64], q: u64) -> u64 {
    if q < 1 << 32 {
        let s: u128 = a.iter().zip(b).map(|(&x, &y)| (x * y) as u128).sum();
        (s % q as u128) as u64
    } else {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| (acc + mul_mod(x, y, q)) % q)
    }
}

fn fast_mul(a: u64, b: u64, q: u64) -> u64 {
    if q < 1 << 32 {
        a * b % q
    } else {
        mul_mod(a, b, q)
    }
}

/// A generating set of the units mod `e`.
fn unit_generators(e: u64) -> Vec<u64> {
    let mut reached = vec![false; e.max(1) as usize];
    reached[1 % e.max(1) as usize] = true;
    let mut gens = Vec::new();
    for a in 2..e {
        if reached[a as usize] || num_integer::gcd(a, e) != 1 {
            continue;
        }
        gens.push(a);
        let mut stack: Vec<u64> = (0..e).filter(|&x| reached[x as usize]).collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = x * g % e;
                if !reached[y as usize] {
                    reached[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

#[derive(Serialize)]
pub struct ClassJson {
    pub rep_cycles: String,
    pub size: u64,
    pub rep_order: u64,
    pub inverse_class: usize,
    pub square_class: usize,
}

#[derive(Serialize)]
pub struct IrreducibleJson {
    pub degree: i64,
    pub values: Vec<Cyclotomic>,
}

#[derive(Serialize)]
pub struct TableJson {
    pub schema_version: u32,
    pub group: String,
    pub order: u64,
    pub exponent: u64,
    pub prime_used: u64,
    pub classes: Vec<ClassJson>,
    pub irreducibles: Vec<IrreducibleJson>,
}

/// Degree, order and element fingerprint.
type CacheKey = (usize, u64, u64);

/// Tables memoized by subgroup fingerprint, safe to share across threads.
#[derive(Default)]
pub struct TableCache {
    tables: Mutex<HashMap<CacheKey, Vec<Arc<CharacterTable>>>>,
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table of a group equal to `group`. The returned table's own group
    /// object owns its characters.
    pub fn get(&self, group: &PermGroup) -> Result<Arc<CharacterTable>> {
        let key = (group.degree(), group.order(), group.fingerprint()?);
        if let Some(hit) = self.lookup(&key, group) {
            return Ok(hit);
        }
        let table = Arc::new(CharacterTable::compute(group)?);
        let mut tables = self.tables.lock().expect("cache lock");
        let bucket = tables.entry(key).or_default();
        if let Some(hit) = bucket.iter().find(|t| t.group.same_group(group)) {
            return Ok(hit.clone());
        }
        bucket.push(table.clone());
        Ok(table)
    }

    fn lookup(&self, key: &CacheKey, group: &PermGroup) -> Option<Arc<CharacterTable>> {
        let tables = self.tables.lock().expect("cache lock");
        tables
            .get(key)?
            .iter()
            .find(|t| t.group.same_group(group))
            .cloned()
    }

    pub fn len(&self) -> usize {
        self.tables
            .lock()
            .expect("cache lock")
            .values()
            .map(Vec::len)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

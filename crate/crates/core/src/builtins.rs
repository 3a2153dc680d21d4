//! Named groups as permutation groups.
//!
//! Signed permutations of rank `n` act on `2n` points, with point `i + n`
//! standing for `-i`. [`fixed_point_free_involution`] is the pairing
//! `z = (1, n+1)(2, n+2)…`, whose centralizer in `Sym(2n)` is `weyl_b(n)`.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn out_of_range(what: &str, n: usize, lo: usize, hi: usize) -> Error {
    Error::OutOfRange(format!("{what}({n}) requires {lo} <= n <= {hi}"))
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).expect("builtin generator is a permutation")
}

fn cycle(n: usize, points: &[usize]) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for (k, &p) in points.iter().enumerate() {
        images[p] = points[(k + 1) % points.len()];
    }
    perm(images)
}

pub fn sym(n: usize) -> Result<PermGroup> {
    if !(1..=9).contains(&n) {
        return Err(out_of_range("sym", n, 1, 9));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, &[0, 1]));
    }
    if n >= 3 {
        gens.push(cycle(n, &(0..n).collect::<Vec<_>>()));
    }
    PermGroup::build(n, gens)
}

pub fn alt(n: usize) -> Result<PermGroup> {
    if !(1..=9).contains(&n) {
        return Err(out_of_range("alt", n, 1, 9));
    }
    let gens = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
    PermGroup::build(n, gens)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::OutOfRange("cyclic(0)".into()));
    }
    let gens = if n == 1 {
        Vec::new()
    } else {
        vec![cycle(n, &(0..n).collect::<Vec<_>>())]
    };
    PermGroup::build(n, gens)
}

/// Dihedral group of order `2m`, acting on the `m` vertices of a polygon for
/// `m >= 3`. For `m = 1, 2` there is no faithful action on `m` points, so
/// these are realized as `C₂` on 2 points and the Klein four-group on 4.
pub fn dihedral(m: usize) -> Result<PermGroup> {
    match m {
        0 => Err(Error::OutOfRange("dihedral(0)".into())),
        1 => PermGroup::build(2, vec![cycle(2, &[0, 1])]),
        2 => PermGroup::build(4, vec![perm(vec![1, 0, 3, 2]), perm(vec![2, 3, 0, 1])]),
        _ => {
            let rotation = cycle(m, &(0..m).collect::<Vec<_>>());
            let reflection = perm((0..m).map(|i| (m - i) % m).collect());
            PermGroup::build(m, vec![rotation, reflection])
        }
    }
}

/// Quaternion group in its regular representation. Point `2u + s` is the
/// unit `u ∈ {1, i, j, k}` with sign `s` (0 positive, 1 negative); generators
/// act by right multiplication with `i` and `j`.
pub fn q8() -> PermGroup {
    // unit products: (sign flip, unit) for u * v, units 0=1, 1=i, 2=j, 3=k
    const TABLE: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let right = |v: usize| {
        perm(
            (0..8)
                .map(|p| {
                    let (u, s) = (p / 2, p % 2 == 1);
                    let (flip, w) = TABLE[u][v];
                    2 * w + (s ^ flip) as usize
                })
                .collect(),
        )
    };
    PermGroup::build(8, vec![right(1), right(2)]).expect("q8 generators")
}

/// The pairing `Π (i, i+n)` on `2n` points.
pub fn fixed_point_free_involution(n: usize) -> Permutation {
    perm((0..2 * n).map(|p| (p + n) % (2 * n)).collect())
}

fn signed_swap(n: usize, i: usize, j: usize) -> Permutation {
    let mut images: Vec<usize> = (0..2 * n).collect();
    images.swap(i, j);
    images.swap(i + n, j + n);
    perm(images)
}

/// Weyl group of type `B_n`: all signed permutations, order `2ⁿ·n!`.
pub fn weyl_b(n: usize) -> Result<PermGroup> {
    if !(2..=4).contains(&n) {
        return Err(out_of_range("weyl_b", n, 2, 4));
    }
    let mut gens: Vec<Permutation> = (0..n - 1).map(|i| signed_swap(n, i, i + 1)).collect();
    gens.push(cycle(2 * n, &[0, n]));
    PermGroup::build(2 * n, gens)
}

/// Weyl group of type `D_n`: signed permutations with an even number of sign
/// changes, order `2ⁿ⁻¹·n!`; the even permutations inside `weyl_b(n)`.
pub fn weyl_d(n: usize) -> Result<PermGroup> {
    if !(2..=4).contains(&n) {
        return Err(out_of_range("weyl_d", n, 2, 4));
    }
    let mut gens: Vec<Permutation> = (0..n - 1).map(|i| signed_swap(n, i, i + 1)).collect();
    // e1 <-> -e2
    let mut images: Vec<usize> = (0..2 * n).collect();
    images.swap(0, n + 1);
    images.swap(1, n);
    gens.push(perm(images));
    PermGroup::build(2 * n, gens)
}

/// `H₃ ≅ A₅ × ℤ/2` on 7 points.
pub fn h3() -> PermGroup {
    direct_product(&alt(5).expect("alt(5)"), &cyclic(2).expect("cyclic(2)")).expect("h3")
}

/// Generators `(x, a, b)` of the holomorph of `ℤ/8` on the points `1..8`,
/// point `r + 1` standing for the residue `r`: `x: r ↦ r + 1`, `a: r ↦ -r`,
/// `b: r ↦ 3r`.
pub fn holomorph_c8_generators() -> (Permutation, Permutation, Permutation) {
    let x = perm((0..8).map(|r| (r + 1) % 8).collect());
    let a = perm((0..8).map(|r| (8 - r) % 8).collect());
    let b = perm((0..8).map(|r| (3 * r) % 8).collect());
    (x, a, b)
}

/// `⟨x, a, b | x⁸ = a² = b² = 1, axa = x⁻¹, bxb = x³⟩`, order 32.
pub fn holomorph_c8() -> PermGroup {
    let (x, a, b) = holomorph_c8_generators();
    PermGroup::build(8, vec![x, a, b]).expect("holomorph generators")
}

/// `A × B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let n = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.shifted(0, n)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), n)));
    Ok(PermGroup::build(n, gens)?.with_cap(a.cap().min(b.cap())))
}

/// Weyl group of type `F₄` (order 1152) acting on the 24 long roots
/// `±eᵢ ± eⱼ`. The generators are the reflections in the simple roots
/// `e₂-e₃, e₃-e₄, e₄, (e₁-e₂-e₃-e₄)/2`, computed in doubled coordinates.
pub fn weyl_f4() -> Result<PermGroup> {
    let mut roots: Vec<[i64; 4]> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for si in [-2, 2] {
                for sj in [-2, 2] {
                    let mut v = [0; 4];
                    v[i] = si;
                    v[j] = sj;
                    roots.push(v);
                }
            }
        }
    }
    roots.sort_unstable();
    let simple: [[i64; 4]; 4] = [[0, 2, -2, 0], [0, 0, 2, -2], [0, 0, 0, 2], [1, -1, -1, -1]];
    let dot = |u: &[i64; 4], v: &[i64; 4]| u.iter().zip(v).map(|(a, b)| a * b).sum::<i64>();
    let gens = simple
        .iter()
        .map(|a| {
            let images = roots
                .iter()
                .map(|v| {
                    let c = 2 * dot(v, a) / dot(a, a);
                    let w = [
                        v[0] - c * a[0],
                        v[1] - c * a[1],
                        v[2] - c * a[2],
                        v[3] - c * a[3],
                    ];
                    roots
                        .binary_search(&w)
                        .expect("reflection permutes long roots")
                })
                .collect();
            perm(images)
        })
        .collect();
    let group = PermGroup::build(24, gens)?;
    if group.order() != 1152 {
        return Err(Error::Invariant(format!(
            "F4 generators produced a group of order {}",
            group.order()
        )));
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_sizes(g: &PermGroup) -> Vec<u64> {
        let mut s = g.classes().unwrap().sizes().to_vec();
        s.sort();
        s
    }

    #[test]
    fn orders_match_formulas() {
        let fact = |n: u64| (1..=n).product::<u64>();
        for n in 1..=7 {
            assert_eq!(sym(n).unwrap().order(), fact(n as u64));
            assert_eq!(alt(n).unwrap().order(), (fact(n as u64) / 2).max(1));
        }
        for n in 1..=10 {
            assert_eq!(cyclic(n).unwrap().order(), n as u64);
            assert_eq!(dihedral(n).unwrap().order(), 2 * n as u64);
        }
        for n in 2..=4 {
            assert_eq!(weyl_b(n).unwrap().order(), (1 << n) * fact(n as u64));
            assert_eq!(weyl_d(n).unwrap().order(), (1 << (n - 1)) * fact(n as u64));
        }
        assert_eq!(q8().order(), 8);
        assert_eq!(h3().order(), 120);
        assert_eq!(holomorph_c8().order(), 32);
        assert_eq!(weyl_f4().unwrap().order(), 1152);
        assert!(sym(0).is_err() && sym(10).is_err() && weyl_b(5).is_err() && weyl_d(1).is_err());
    }

    #[test]
    fn class_counts() {
        assert_eq!(sym(5).unwrap().classes().unwrap().len(), 7);
        assert_eq!(dihedral(4).unwrap().classes().unwrap().len(), 5);
        assert_eq!(h3().classes().unwrap().len(), 10);
        let s3 = sym(3).unwrap();
        let c2 = cyclic(2).unwrap();
        assert_eq!(
            direct_product(&s3, &c2).unwrap().classes().unwrap().len(),
            6
        );
        assert_eq!(
            direct_product(&c2, &c2).unwrap().classes().unwrap().len(),
            4
        );
        assert_eq!(
            class_sizes(&direct_product(&s3, &cyclic(1).unwrap()).unwrap()),
            class_sizes(&s3)
        );
    }

    #[test]
    fn q8_has_one_involution() {
        let g = q8();
        let invs = g
            .elements()
            .unwrap()
            .iter()
            .filter(|x| x.order() == 2)
            .count();
        assert_eq!(invs, 1);
    }

    #[test]
    fn small_weyl_isomorphisms() {
        assert_eq!(
            class_sizes(&weyl_b(2).unwrap()),
            class_sizes(&dihedral(4).unwrap())
        );
        let d2 = weyl_d(2).unwrap();
        assert_eq!(d2.order(), 4);
        assert!(d2.is_abelian());
        assert_eq!(
            class_sizes(&weyl_d(3).unwrap()),
            class_sizes(&sym(4).unwrap())
        );
    }

    #[test]
    fn type_d_is_even_part_of_type_b() {
        for n in 2..=4 {
            let b = weyl_b(n).unwrap();
            let d = weyl_d(n).unwrap();
            assert!(d.is_subgroup_of(&b));
            assert_eq!(b.order(), 2 * d.order());
            let even = b.elements().unwrap().iter().filter(|g| g.is_even()).count() as u64;
            assert_eq!(even, d.order());
            assert!(b
                .elements()
                .unwrap()
                .iter()
                .filter(|g| g.is_even())
                .all(|g| d.contains(g)));
            let z = fixed_point_free_involution(n);
            assert!(b.elements().unwrap().iter().all(|g| g * &z == &z * g));
            assert_eq!(
                sym(2 * n).unwrap().centralizer(&z).unwrap().order(),
                b.order()
            );
        }
    }

    #[test]
    fn holomorph_relations() {
        let (x, a, b) = holomorph_c8_generators();
        assert!(x.pow(8).is_identity() && x.order() == 8);
        assert!(a.pow(2).is_identity() && b.pow(2).is_identity());
        assert_eq!(&(&a * &x) * &a, x.inverse());
        assert_eq!(&(&b * &x) * &b, x.pow(3));
        // the relation axa = x⁻¹ read as a conjugation
        assert_eq!(x.conjugate_by(&a), x.inverse());
        let g = holomorph_c8();
        let xa = &x * &a;
        assert_eq!(xa.order(), 2);
        let c = g.centralizer(&xa).unwrap();
        assert_eq!(c.order(), 8);
        assert_eq!(crate::group::abelian_invariants(&c).unwrap(), vec![4, 2]);
    }
}

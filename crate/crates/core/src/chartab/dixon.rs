//! Burnside–Dixon–Schneider.
//!
//! 1. Class multiplication coefficients `c[i][j][l]`, the number of
//!    `x ∈ K_i` with `x⁻¹ z_l ∈ K_j` for the representative `z_l`, built
//!    one class matrix at a time as the splitting needs them.
//! 2. Common eigenvectors of the class matrices `M_i = (c[i][j][l])_{j,l}`
//!    over `GF(p)`, `p ≡ 1 (mod exponent)`, `p > 2√|G|`, found by splitting
//!    eigenspaces one matrix at a time in class order.
//! 3. Each eigenvector, normalized to 1 at the identity class, holds the
//!    central character `ω(K) = |K| χ(g_K) / χ(1)`; the degree follows from
//!    `χ(1)² Σ_K ω(K) ω(K⁻¹) / |K| = |G|`.
//! 4. Values are lifted to `ℚ(ζ_e)` by recovering the eigenvalues of each
//!    representative from the power sums `χ(g^j)`.

use crate::cyclo::{inv_mod, mul_mod, pow_mod, Cyclotomic};
use crate::error::{Error, Result};
use crate::group::{ClassData, PermGroup};
use crate::perm::Permutation;

use super::modular::{
    charpoly_hessenberg, eval, hessenberg, hessenberg_nullspace, is_prime, primitive_root, rref,
    Matrix, Modulus,
};

pub(crate) struct DixonOutput {
    pub prime: u64,
    /// Image of `ζ_e` in `GF(p)`.
    pub root: u64,
    pub modular: Vec<Vec<u64>>,
    pub values: Vec<Vec<Cyclotomic>>,
    /// Per character and class, the sorted exponents `j` of the eigenvalues
    /// `ζ_e^j` of a representative; the value is their sum.
    pub eigenvalues: Vec<Vec<Vec<u64>>>,
}

/// Smallest prime `p ≡ 1 (mod e)` with `p² > 4|G|`.
pub(crate) fn choose_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    loop {
        if (p as u128) * (p as u128) > 4 * order as u128 && is_prime(p) {
            return p;
        }
        p += exponent;
    }
}

/// Elements of each class, as indices into `group.elements()`.
fn class_members(classes: &ClassData) -> Vec<Vec<usize>> {
    let mut members = vec![Vec::new(); classes.len()];
    for (x, c) in classes.element_classes().enumerate() {
        members[c].push(x);
    }
    members
}

/// Class matrix `M_i[j][l] = c[i][j][l]`, the number of `x ∈ K_i` with
/// `x⁻¹ z_l ∈ K_j` for the representative `z_l`.
fn class_matrix(
    inverses: &[Permutation],
    members: &[Vec<usize>],
    classes: &ClassData,
    i: usize,
) -> Result<Vec<Vec<u64>>> {
    let k = classes.len();
    let mut m = vec![vec![0u64; k]; k];
    for l in 0..k {
        let z = classes.rep(l);
        for &x in &members[i] {
            let y = &inverses[x] * z;
            let j = classes
                .class_of(&y)
                .ok_or_else(|| Error::Invariant(format!("{y} missing from the element index")))?;
            m[j][l] += 1;
        }
    }
    Ok(m)
}

pub(crate) fn compute(group: &PermGroup, classes: &ClassData) -> Result<DixonOutput> {
    let k = classes.len();
    let order = group.order();
    let e = classes.exponent();
    let p = choose_prime(e, order);
    let root = pow_mod(primitive_root(p), (p - 1) / e, p);

    let inverses: Vec<Permutation> = group.elements()?.iter().map(|x| x.inverse()).collect();
    let members = class_members(classes);

    // Each space is a basis in reduced row echelon form plus its pivots.
    let mut identity: Matrix = (0..k)
        .map(|r| (0..k).map(|c| u64::from(r == c)).collect())
        .collect();
    let pivots = rref(&mut identity, p);
    let mut spaces: Vec<(Matrix, Vec<usize>)> = vec![(identity, pivots)];
    for i in 1..k {
        if spaces.iter().all(|(b, _)| b.len() == 1) {
            break;
        }
        let mut m = class_matrix(&inverses, &members, classes, i)?;
        for x in m.iter_mut().flatten() {
            *x %= p;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for (basis, pivots) in spaces {
            if basis.len() == 1 {
                next.push((basis, pivots));
                continue;
            }
            next.extend(split(&m, basis, pivots, p)?);
        }
        spaces = next;
    }
    if let Some((b, _)) = spaces.iter().find(|(b, _)| b.len() > 1) {
        return Err(Error::Invariant(format!(
            "eigenspace of dimension {} left unsplit by all class matrices",
            b.len()
        )));
    }
    if spaces.len() != k {
        return Err(Error::Invariant(
            "wrong number of common eigenvectors".into(),
        ));
    }

    let mut modular = Vec::with_capacity(k);
    for (basis, _) in &spaces {
        let v = &basis[0];
        if v[0] == 0 {
            return Err(Error::Invariant(
                "eigenvector vanishes at the identity".into(),
            ));
        }
        let scale = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, scale, p)).collect();
        let mut s = 0u64;
        for l in 0..k {
            let h_inv = inv_mod(classes.size(l) % p, p);
            let term = mul_mod(
                mul_mod(omega[l], omega[classes.inverse_class(l)], p),
                h_inv,
                p,
            );
            s = (s + term) % p;
        }
        if s == 0 {
            return Err(Error::Invariant("degenerate central character".into()));
        }
        let d2 = mul_mod(order % p, inv_mod(s, p), p);
        let degree = (1..)
            .take_while(|d: &u64| d * d <= order)
            .find(|&d| mul_mod(d, d, p) == d2)
            .ok_or_else(|| Error::Invariant("no degree matches the central character".into()))?;
        let values: Vec<u64> = (0..k)
            .map(|l| {
                mul_mod(
                    mul_mod(omega[l], degree, p),
                    inv_mod(classes.size(l) % p, p),
                    p,
                )
            })
            .collect();
        modular.push(values);
    }

    let eigenvalues = modular
        .iter()
        .map(|chi| lift(chi, classes, p, root))
        .collect::<Result<Vec<_>>>()?;
    let e = classes.exponent();
    let values = eigenvalues
        .iter()
        .map(|row| {
            row.iter()
                .map(|ev| {
                    let terms: Vec<(u64, i64)> = ev.iter().map(|&j| (j, 1)).collect();
                    Cyclotomic::from_int_terms(e, &terms)
                })
                .collect()
        })
        .collect();
    Ok(DixonOutput {
        prime: p,
        root,
        modular,
        values,
        eigenvalues,
    })
}

/// Splits one space along the eigenspaces of `m` restricted to it.
fn split(
    m: &Matrix,
    basis: Matrix,
    pivots: Vec<usize>,
    p: u64,
) -> Result<Vec<(Matrix, Vec<usize>)>> {
    let d = basis.len();
    let k = m.len();
    let md = Modulus::new(p);
    // restriction[s][r] = coordinate s of M w_r, read off at the pivots
    let restriction: Matrix = pivots
        .iter()
        .map(|&j| {
            let row: Vec<(usize, u64)> = m[j]
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, a)| a != 0)
                .collect();
            basis
                .iter()
                .map(|w| md.reduce_wide(row.iter().map(|&(l, a)| u128::from(a * w[l])).sum()))
                .collect()
        })
        .collect();
    let (h, t) = hessenberg(&restriction, p);
    let cp = charpoly_hessenberg(&h, p);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..p {
        if eval(&cp, lambda, p) != 0 {
            continue;
        }
        let null = hessenberg_nullspace(&h, lambda, p);
        total += null.len();
        let mut sub: Matrix = null
            .iter()
            .map(|v| {
                let c: Vec<u64> = t.iter().map(|row| md.dot(row, v)).collect();
                let mut acc = vec![0u128; k];
                for (&cr, w) in c.iter().zip(&basis) {
                    if cr != 0 {
                        for (a, &x) in acc.iter_mut().zip(w) {
                            *a += u128::from(cr * x);
                        }
                    }
                }
                acc.into_iter().map(|a| md.reduce_wide(a)).collect()
            })
            .collect();
        let piv = rref(&mut sub, p);
        out.push((sub, piv));
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::Invariant(
            "class matrix is not diagonalizable on an eigenspace".into(),
        ));
    }
    Ok(out)
}

/// Lifts one modular row. At a class of order `o` the eigenvalues of `g`
/// are `o`-th roots of unity whose power sums are `χ(g^j)`; Newton's
/// identities give their characteristic polynomial mod `p`, whose roots
/// among the `ζ_o^k` (distinct mod `p`) give the multiplicities.
fn lift(chi: &[u64], classes: &ClassData, p: u64, root: u64) -> Result<Vec<Vec<u64>>> {
    let e = classes.exponent();
    let d = chi[0] as usize;
    let inverses: Vec<u64> = (0..=d as u64)
        .map(|n| if n == 0 { 0 } else { inv_mod(n, p) })
        .collect();
    let md = Modulus::new(p);
    // dlog[ζ_e^j] = j
    let mut dlog = vec![u64::MAX; p as usize];
    let mut z = 1u64;
    for j in 0..e {
        dlog[z as usize] = j;
        z = md.mul(z, root);
    }
    (0..classes.len())
        .map(|l| {
            let o = classes.element_order(l);
            let power_sums: Vec<u64> = (0..=d)
                .map(|j| chi[classes.power_class(l, j as i64)])
                .collect();
            // elementary symmetric functions e_0..e_d
            let mut elem = vec![1u64];
            for n in 1..=d {
                let mut acc = 0u64;
                for i in 1..=n {
                    let term = mul_mod(elem[n - i], power_sums[i], p);
                    acc = if i % 2 == 1 {
                        (acc + term) % p
                    } else {
                        (acc + p - term) % p
                    };
                }
                elem.push(mul_mod(acc, inverses[n], p));
            }
            // x^d - e_1 x^(d-1) + e_2 x^(d-2) - ..., highest degree first
            let mut poly: Vec<u64> = elem
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 0 { c } else { (p - c) % p })
                .collect();
            let step = e / o;
            let mut terms = Vec::with_capacity(d);
            if d == 1 {
                // the single eigenvalue is χ(g) itself
                let j = dlog[power_sums[1] as usize];
                if j != u64::MAX && j % step == 0 {
                    terms.push(j);
                    poly.pop();
                }
            } else {
                let zeta_o = pow_mod(root, step, p);
                let mut z = 1u64;
                for k in 0..o {
                    if poly.len() == 1 {
                        break;
                    }
                    while poly.len() > 1
                        && poly.iter().fold(0, |acc, &c| md.reduce(md.mul(acc, z) + c)) == 0
                    {
                        // synthetic division by (x - z)
                        let mut acc = 0u64;
                        let quotient: Vec<u64> = poly[..poly.len() - 1]
                            .iter()
                            .map(|&c| {
                                acc = md.reduce(md.mul(acc, z) + c);
                                acc
                            })
                            .collect();
                        poly = quotient;
                        terms.push(k * step);
                    }
                    z = md.mul(z, zeta_o);
                }
            }
            if poly.len() > 1 {
                return Err(Error::Invariant(format!(
                    "eigenvalues at class {l} are not {o}-th roots of unity"
                )));
            }
            Ok(terms)
        })
        .collect()
}

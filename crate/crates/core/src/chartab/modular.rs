//! Dense linear algebra over `GF(p)` for small `p`.

use crate::cyclo::{inv_mod, mul_mod, pow_mod};

pub(crate) type Matrix = Vec<Vec<u64>>;

/// Barrett reduction for a modulus below `2^32`, so that products of
/// residues fit in a `u64`.
#[derive(Clone, Copy)]
pub(crate) struct Modulus {
    p: u64,
    m: u64,
}

impl Modulus {
    pub(crate) fn new(p: u64) -> Self {
        assert!((2..1 << 32).contains(&p), "modulus {p} out of range");
        Self {
            p,
            m: (u128::from(u64::MAX) / u128::from(p)) as u64,
        }
    }

    #[inline]
    pub(crate) fn reduce(self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub(crate) fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    /// `a - u b` for residues `a, u, b`.
    #[inline]
    pub(crate) fn sub_mul(self, a: u64, u: u64, b: u64) -> u64 {
        self.reduce(a + self.p * self.p - u * b)
    }

    pub(crate) fn reduce_wide(self, x: u128) -> u64 {
        (x % u128::from(self.p)) as u64
    }

    pub(crate) fn dot(self, a: &[u64], b: &[u64]) -> u64 {
        let s: u128 = a.iter().zip(b).map(|(&x, &y)| u128::from(x * y)).sum();
        (s % u128::from(self.p)) as u64
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut Matrix, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let sub = mul_mod(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for a square matrix `A`.
#[cfg(test)]
pub(crate) fn nullspace(a: &Matrix, p: u64) -> Matrix {
    let n = a.len();
    let mut m = a.clone();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Upper Hessenberg form `H = E A E⁻¹` together with `T = E⁻¹`, so that
/// `H v = λ v` gives the eigenvector `T v` of `A`.
pub(crate) fn hessenberg(a: &Matrix, p: u64) -> (Matrix, Matrix) {
    let md = Modulus::new(p);
    let n = a.len();
    let mut h = a.clone();
    let mut t: Matrix = (0..n)
        .map(|r| (0..n).map(|c| u64::from(r == c)).collect())
        .collect();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut().chain(t.iter_mut()) {
                row.swap(i, m);
            }
        }
        let t_inv = inv_mod(h[m][m - 1], p);
        // rows i > m lose u_i times row m, then column m gains Σ u_i col_i
        let mut u = vec![0u64; n];
        let pivot_row = h[m].clone();
        for i in m + 1..n {
            if h[i][m - 1] == 0 {
                continue;
            }
            u[i] = md.mul(h[i][m - 1], t_inv);
            for (x, &y) in h[i].iter_mut().zip(&pivot_row) {
                *x = md.sub_mul(*x, u[i], y);
            }
        }
        if u.iter().all(|&x| x == 0) {
            continue;
        }
        for row in h.iter_mut().chain(t.iter_mut()) {
            let s = md.dot(&row[m + 1..], &u[m + 1..]);
            row[m] = md.reduce(row[m] + s);
        }
    }
    (h, t)
}

/// Characteristic polynomial `det(xI - A)`, lowest degree first, via
/// reduction to Hessenberg form.
#[cfg(test)]
pub(crate) fn charpoly(a: &Matrix, p: u64) -> Vec<u64> {
    charpoly_hessenberg(&hessenberg(a, p).0, p)
}

pub(crate) fn charpoly_hessenberg(h: &Matrix, p: u64) -> Vec<u64> {
    let md = Modulus::new(p);
    let n = h.len();
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        // (x - h[m-1][m-1]) p_{m-1}
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        let d = h[m - 1][m - 1];
        for (k, &c) in prev.iter().enumerate() {
            pm[k + 1] = md.reduce(pm[k + 1] + c);
            pm[k] = md.sub_mul(pm[k], d, c);
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul_mod(t, h[m - i][m - i - 1], p);
            let f = mul_mod(t, h[m - i - 1][m - 1], p);
            if f == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                pm[k] = md.sub_mul(pm[k], f, c);
            }
        }
        polys.push(pm);
    }
    polys.pop().expect("n + 1 polynomials")
}

/// Null space of `H - λI` for upper Hessenberg `H`. Row `i` of a Hessenberg
/// matrix vanishes left of column `i - 1`, and elimination keeps it so, so
/// each column touches only the rows up to `c + 1`.
pub(crate) fn hessenberg_nullspace(h: &Matrix, lambda: u64, p: u64) -> Matrix {
    let md = Modulus::new(p);
    let n = h.len();
    let mut m: Matrix = h
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == n {
            break;
        }
        let last = (c + 1).min(n - 1);
        let Some(pivot) = (r..=last).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = inv_mod(m[r][c], p);
        for i in r + 1..=last {
            if m[i][c] == 0 {
                continue;
            }
            let f = md.mul(m[i][c], inv);
            let (top, bottom) = m.split_at_mut(i);
            for (x, &y) in bottom[0][c..].iter_mut().zip(&top[r][c..]) {
                *x = md.sub_mul(*x, f, y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate().rev() {
                let s = md.dot(&m[row][pc + 1..], &v[pc + 1..]);
                v[pc] = mul_mod((p - s) % p, inv_mod(m[row][pc], p), p);
            }
            v
        })
        .collect()
}

pub(crate) fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter()
        .rev()
        .fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            factors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrices() {
        let p = 101;
        // [[2,1],[0,3]] -> (x-2)(x-3) = x^2 - 5x + 6
        assert_eq!(
            charpoly(&vec![vec![2, 1], vec![0, 3]], p),
            vec![6, p - 5, 1]
        );
        // companion-like 3x3 needing a row swap during reduction
        let a = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        // permutation matrix of a 3-cycle: x^3 - 1
        assert_eq!(charpoly(&a, p), vec![p - 1, 0, 0, 1]);
        let b = vec![
            vec![1, 2, 3, 4],
            vec![0, 0, 5, 1],
            vec![7, 0, 0, 2],
            vec![1, 1, 1, 1],
        ];
        let cp = charpoly(&b, p);
        // det(λI - B) vanishes exactly at eigenvalues: check via nullspace
        for lambda in 0..p {
            let shifted: Matrix = b
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x })
                        .collect()
                })
                .collect();
            assert_eq!(
                eval(&cp, lambda, p) == 0,
                !nullspace(&shifted, p).is_empty()
            );
        }
    }

    #[test]
    fn hessenberg_eigenvectors() {
        let p = 101;
        // eigenvalues 1, 3, 3, 3
        let a = vec![
            vec![3, 0, 0, 0],
            vec![0, 2, 0, 1],
            vec![0, 0, 3, 0],
            vec![0, 1, 0, 2],
        ];
        let (h, t) = hessenberg(&a, p);
        assert_eq!(charpoly_hessenberg(&h, p), charpoly(&a, p));
        for i in 2..4 {
            for j in 0..i - 1 {
                assert_eq!(h[i][j], 0);
            }
        }
        let cp = charpoly(&a, p);
        let mut found = 0;
        for lambda in 0..p {
            if eval(&cp, lambda, p) != 0 {
                continue;
            }
            for v in hessenberg_nullspace(&h, lambda, p) {
                found += 1;
                let w: Vec<u64> = (0..4)
                    .map(|i| (0..4).fold(0, |acc, j| (acc + mul_mod(t[i][j], v[j], p)) % p))
                    .collect();
                for i in 0..4 {
                    let aw = (0..4).fold(0, |acc, j| (acc + mul_mod(a[i][j], w[j], p)) % p);
                    assert_eq!(aw, mul_mod(lambda, w[i], p));
                }
            }
        }
        assert_eq!(found, 4);
    }

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(73) && !is_prime(91));
        let g = primitive_root(73);
        let order = (1..73).find(|&k| pow_mod(g, k, 73) == 1).unwrap();
        assert_eq!(order, 72);
    }
}

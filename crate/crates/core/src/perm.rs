//! Permutations of `{1..n}` stored in image form.
//!
//! Composition is left to right throughout the crate: `a * b` first applies
//! `a`, then `b`, so `i^(ab) = (i^a)^b`. Conjugation follows the same
//! convention, `g^x = x⁻¹ g x`, which relabels the cycles of `g` by `x`.
//!
//! Points are 1-based in cycle notation and 0-based in the API.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= u16::MAX as usize, "degree {degree} too large");
        Self {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for degree {n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "point {} appears twice",
                    i + 1
                )));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u16;
        }
        Self { images }
    }

    /// `self` followed by `other`. Panics on degree mismatch; see [`compose`]
    /// for the checked form.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Self {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    /// `x⁻¹ · self · x`.
    pub fn conjugate_by(&self, x: &Self) -> Self {
        assert_eq!(self.degree(), x.degree(), "degree mismatch in conjugation");
        let mut images = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[x.images[i] as usize] = x.images[j as usize];
        }
        Self { images }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.degree());
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

    /// Disjoint cycles of length at least 2, each starting at its smallest
    /// point, ordered by that point. Points are 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k ≥ 1` with `self^k = 1`, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply(i) != i)
    }

    /// Places `self` on points `offset..offset + degree` of a permutation of
    /// degree `total`, fixing everything else.
    pub fn shifted(&self, offset: usize, total: usize) -> Self {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<u16> = (0..total as u16).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = (offset + j as usize) as u16;
        }
        Self { images }
    }

    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        parse_cycles(text, degree)
    }
}

/// Checked left-to-right composition: the result maps `i` to `b(a(i))`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    Ok(a.then(b))
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Orders permutations by their image vectors, the canonical element order.
pub fn lex_cmp(a: &Permutation, b: &Permutation) -> Ordering {
    a.images.cmp(&b.images)
}

/// Parses disjoint cycles such as `"(1,2,3)(4,5)"` at the given degree.
/// Unmentioned points are fixed; `""` and `"()"` are the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let bytes = text.as_bytes();
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let mut pos = 0;
    let err = |offset: usize, message: &str| Error::CycleSyntax {
        offset,
        message: message.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(err(pos, "expected `(`"));
        }
        pos += 1;
        let mut cycle = Vec::new();
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b')' {
            pos += 1;
            continue;
        }
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(err(pos, "expected a point"));
            }
            let point: usize = text[start..pos]
                .parse()
                .map_err(|_| err(start, "point does not fit"))?;
            if point == 0 || point > degree {
                return Err(err(
                    start,
                    &format!("point {point} out of range 1..={degree}"),
                ));
            }
            if std::mem::replace(&mut used[point - 1], true) {
                return Err(err(start, &format!("point {point} repeated")));
            }
            cycle.push(point - 1);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(_) => return Err(err(pos, "expected `,` or `)`")),
                None => return Err(err(pos, "unterminated cycle")),
            }
        }
        for (k, &p) in cycle.iter().enumerate() {
            images[p] = cycle[(k + 1) % cycle.len()];
        }
    }
    Permutation::from_images(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Permutation {
        parse_cycles(s, n).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        assert_eq!(&p("(1,2)", 3) * &p("(1,2)", 3), id);
        assert_eq!(&p("(1,2,3)", 3) * &p("(1,2,3)", 3), p("(1,3,2)", 3));
        // Left to right: 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1.
        assert_eq!(&p("(1,2)", 3) * &p("(2,3)", 3), p("(1,3,2)", 3));
        // The other convention would give (1,2,3).
        assert_ne!(&p("(1,2)", 3) * &p("(2,3)", 3), p("(1,2,3)", 3));
        assert!(matches!(
            compose(&p("(1,2)", 3), &p("(1,2)", 4)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert!(Permutation::identity(4).inverse().is_identity());
        assert_eq!(p("(1,2,3)", 3).inverse(), p("(1,3,2)", 3));
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let g = p("(1,2,3,4)", 4);
        let t = p("(1,3)", 4);
        assert_eq!(g.conjugate_by(&t), p("(1,4,3,2)", 4));
        let x = p("(1,2,3,4,5)", 5);
        let y = p("(2,3,5,4)", 5);
        assert_eq!(x.conjugate_by(&y), p("(1,3,5,2,4)", 5));
        assert_eq!(x.conjugate_by(&y), &(&y.inverse() * &x) * &y);
    }

    #[test]
    fn parse_examples() {
        let t = p("(1,2)", 4);
        assert_eq!(t.apply(0), 1);
        assert_eq!(t.apply(2), 2);
        assert_eq!(t.apply(3), 3);
        assert!(p("", 3).is_identity());
        assert!(p("()", 3).is_identity());
        assert!(p(" ( 1 , 2 ) ( 3,4 ) ", 4).order() == 2);
        assert_eq!(p("(1,2,3)(4,5)", 5).order(), 6);
        assert_eq!(Permutation::identity(1).to_string(), "()");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_cycles("(1,2,1)", 3),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            parse_cycles("(1,2)(2,3)", 3),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            parse_cycles("(1,4)", 3),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            parse_cycles("(0,1)", 3),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            parse_cycles("1,2", 3),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            parse_cycles("(1,2", 3),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(matches!(
            parse_cycles("(1;2)", 3),
            Err(Error::CycleSyntax { .. })
        ));
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(p("(1,2)", 2).order(), 2);
        assert_eq!(p("(1,2,3)(4,5)", 5).order(), 6);
        let g = p("(1,2,3)(4,5)", 5);
        assert!(g.pow(6).is_identity());
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.pow(7), g);
    }

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_degree)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    fn arb_triple(n: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        let one = || {
            Just((0..n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        };
        (one(), one(), one())
    }

    proptest! {
        #[test]
        fn composition_is_associative((a, b, c) in (1usize..=12).prop_flat_map(arb_triple)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn inverse_properties(a in arb_perm(8)) {
            prop_assert!((&a * &a.inverse()).is_identity());
            prop_assert_eq!(a.inverse().inverse(), a.clone());
            prop_assert_eq!(a.order(), a.inverse().order());
            prop_assert!(a.pow(a.order() as i64).is_identity());
        }

        #[test]
        fn print_parse_roundtrip(a in arb_perm(12)) {
            let text = a.to_string();
            prop_assert_eq!(parse_cycles(&text, a.degree()).unwrap(), a);
        }
    }
}

//! Frobenius–Schur indicators and the index-2 pair conditions DC1 and DC2.

use serde::Serialize;

use crate::chartab::{induce, Character, CharacterTable};
use crate::cyclo::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::PermGroup;

/// `(1/|G|) Σ_g χ(g²)` for an arbitrary character, the sum of the indicators
/// of its constituents.
pub fn fs_extension(chi: &Character) -> Result<i64> {
    let c = chi.classes();
    let mut sum = Cyclotomic::zero();
    for i in 0..c.len() {
        sum += &chi
            .value(c.square_class(i))
            .scale(&Rational::from_integer(c.size(i).into()));
    }
    to_integer(sum, c.group_order())
}

/// Indicator of an irreducible character, in `{-1, 0, 1}`.
pub fn fs_indicator(chi: &Character) -> Result<i64> {
    let nu = fs_extension(chi)?;
    if !(-1..=1).contains(&nu) {
        return Err(Error::Invariant(format!(
            "indicator {nu} of an irreducible character"
        )));
    }
    Ok(nu)
}

/// The same indicator summed over explicitly enumerated elements.
pub fn fs_indicator_brute_force(chi: &Character) -> Result<i64> {
    let c = chi.classes();
    let mut sum = Cyclotomic::zero();
    for g in c.elements() {
        let sq = g * g;
        let k = c
            .class_of(&sq)
            .ok_or_else(|| Error::NotMember(sq.to_string()))?;
        sum += chi.value(k);
    }
    to_integer(sum, c.group_order())
}

fn to_integer(sum: Cyclotomic, order: u64) -> Result<i64> {
    let q = sum
        .as_rational()
        .ok_or_else(|| Error::Invariant(format!("indicator sum {sum} is not rational")))?
        / Rational::from_integer(order.into());
    if !q.is_integer() {
        return Err(Error::Invariant(format!("indicator {q} is not an integer")));
    }
    num_traits::ToPrimitive::to_i64(&q.to_integer())
        .ok_or_else(|| Error::Invariant("indicator out of range".into()))
}

pub fn totally_orthogonal(table: &CharacterTable) -> Result<bool> {
    for chi in table.irreducibles() {
        if fs_indicator(chi)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of `g` with `g² = 1`, checked against `Σ ν(χ) χ(1)`.
pub fn involution_count(table: &CharacterTable) -> Result<u64> {
    let t = table.classes().involution_count();
    let mut s = 0i64;
    for chi in table.irreducibles() {
        s += fs_indicator(chi)? * chi.degree();
    }
    if s != t as i64 {
        return Err(Error::Invariant(format!(
            "Σ ν(χ)χ(1) = {s} but the group has {t} square roots of 1"
        )));
    }
    Ok(t)
}

fn check_index_two(n: &PermGroup, c: &PermGroup) -> Result<()> {
    if !c.is_subgroup_of(n) {
        return Err(Error::NotSubgroup("C is not contained in N".into()));
    }
    let (no, co) = (n.order(), c.order());
    if no != 2 * co {
        return Err(Error::WrongIndex(no / co.max(1)));
    }
    Ok(())
}

/// DC1: `ν(χ↑N) − ν(χ) = 1` for every irreducible `χ` of `C`, `[N:C] = 2`.
pub fn check_dc1(n: &CharacterTable, c: &CharacterTable) -> Result<bool> {
    check_index_two(n.group(), c.group())?;
    for chi in c.irreducibles() {
        let induced = induce(n.group(), c.group(), chi)?;
        if fs_extension(&induced)? - fs_indicator(chi)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// DC2: `N` is totally orthogonal, `[N:C] = 2`.
pub fn check_dc2(n: &CharacterTable, c: &CharacterTable) -> Result<bool> {
    check_index_two(n.group(), c.group())?;
    totally_orthogonal(n)
}

#[derive(Debug, Clone, Serialize)]
pub struct IrreducibleIndicator {
    pub degree: i64,
    pub nu: i64,
    pub self_dual: bool,
    pub rational: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndicatorReport {
    pub schema_version: u32,
    pub group: String,
    pub t: u64,
    pub irreducibles: Vec<IrreducibleIndicator>,
    pub totally_orthogonal: bool,
}

pub fn indicator_report(spec: &str, table: &CharacterTable) -> Result<IndicatorReport> {
    let irreducibles = table
        .irreducibles()
        .iter()
        .map(|chi| {
            let nu = fs_indicator(chi)?;
            let self_dual = chi.is_self_dual();
            if (nu != 0) != self_dual {
                return Err(Error::Invariant(
                    "indicator disagrees with self-duality".into(),
                ));
            }
            Ok(IrreducibleIndicator {
                degree: chi.degree(),
                nu,
                self_dual,
                rational: chi.is_rational(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndicatorReport {
        schema_version: 1,
        group: spec.to_string(),
        t: involution_count(table)?,
        totally_orthogonal: irreducibles.iter().all(|x| x.nu == 1),
        irreducibles,
    })
}

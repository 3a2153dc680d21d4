//! Exhaustive searches checking structural properties of reflection groups.
//!
//! Every search runs over the enumerated elements in canonical order and
//! reports the first witness found, so results are deterministic and each
//! witness can be re-checked with a single conjugation.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::chartab::TableCache;
use crate::error::Result;
use crate::group::{abelian_subgroups, elementary_abelian_2_subgroups, PermGroup};
use crate::indicators::fs_indicator;
use crate::perm::Permutation;

#[derive(Debug, Clone, Default, Serialize)]
pub struct Finding {
    /// Generators of the subgroup under test.
    pub subgroup: Vec<String>,
    pub element: Option<String>,
    pub exponent: Option<i64>,
    pub witness: Vec<String>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub check_name: String,
    pub group: String,
    pub parameters: Map<String, Value>,
    pub all_pass: bool,
    pub witnesses: Vec<Finding>,
    pub failures: Vec<Finding>,
}

impl VerificationReport {
    fn new(
        check: &str,
        spec: &str,
        parameters: Map<String, Value>,
        results: Vec<(bool, Finding)>,
    ) -> Self {
        let mut witnesses = Vec::new();
        let mut failures = Vec::new();
        for (ok, f) in results {
            if ok {
                witnesses.push(f);
            } else {
                failures.push(f);
            }
        }
        Self {
            schema_version: 1,
            check_name: check.to_string(),
            group: spec.to_string(),
            parameters,
            all_pass: failures.is_empty(),
            witnesses,
            failures,
        }
    }
}

fn names(gens: &[Permutation]) -> Vec<String> {
    gens.iter().map(ToString::to_string).collect()
}

fn max_gens_param(max_gens: usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("max_gens".into(), json!(max_gens));
    m
}

/// Every abelian `A` (up to conjugacy, at most `max_gens` generators) is
/// inverted by conjugation with some element of order 2.
pub fn inversion_check(
    group: &PermGroup,
    spec: &str,
    max_gens: usize,
) -> Result<VerificationReport> {
    let elements = group.elements()?;
    let subgroups = abelian_subgroups(group, max_gens)?;
    let results = subgroups
        .par_iter()
        .map(|a| {
            let gens = a.generators();
            let t = elements
                .iter()
                .find(|t| t.order() == 2 && gens.iter().all(|y| y.conjugate_by(t) == y.inverse()));
            let finding = Finding {
                subgroup: names(gens),
                witness: t.map(|t| vec![t.to_string()]).unwrap_or_default(),
                ..Finding::default()
            };
            (t.is_some(), finding)
        })
        .collect();
    Ok(VerificationReport::new(
        "inversion",
        spec,
        max_gens_param(max_gens),
        results,
    ))
}

/// For every abelian `J` and every `r` prime to its exponent, a single `x`
/// with `x⁻¹ y x = y^r` for all `y ∈ J`.
pub fn power_conjugation_check(
    group: &PermGroup,
    spec: &str,
    max_gens: usize,
) -> Result<VerificationReport> {
    let elements = group.elements()?;
    let subgroups = abelian_subgroups(group, max_gens)?;
    let cases: Vec<(&PermGroup, i64)> = subgroups
        .iter()
        .flat_map(|j| {
            let e = j
                .generators()
                .iter()
                .fold(1u64, |acc, y| num_integer::lcm(acc, y.order()));
            (1..e.max(2))
                .filter(move |&r| num_integer::gcd(r, e) == 1)
                .map(move |r| (j, r as i64))
        })
        .collect();
    let results = cases
        .par_iter()
        .map(|&(j, r)| {
            let gens = j.generators();
            let powers: Vec<Permutation> = gens.iter().map(|y| y.pow(r)).collect();
            let x = elements.iter().find(|x| {
                gens.iter()
                    .zip(&powers)
                    .all(|(y, p)| y.conjugate_by(x) == *p)
            });
            let finding = Finding {
                subgroup: names(gens),
                exponent: Some(r),
                witness: x.map(|x| vec![x.to_string()]).unwrap_or_default(),
                ..Finding::default()
            };
            (x.is_some(), finding)
        })
        .collect();
    Ok(VerificationReport::new(
        "power",
        spec,
        max_gens_param(max_gens),
        results,
    ))
}

fn with_schur_note(mut m: Map<String, Value>) -> Map<String, Value> {
    m.insert(
        "note".into(),
        json!("rationality of character values only; Schur indices are not checked"),
    );
    m
}

/// `C_W(E)` is a rational group for every elementary abelian 2-subgroup `E`.
pub fn centralizer_rationality_check(group: &PermGroup, spec: &str) -> Result<VerificationReport> {
    let subgroups = elementary_abelian_2_subgroups(group)?;
    let results = subgroups
        .par_iter()
        .map(|e| -> Result<(bool, Finding)> {
            let c = group.centralizer_of_all(e.generators())?;
            let rational = c.classes()?.is_rational();
            Ok((
                rational,
                Finding {
                    subgroup: names(e.generators()),
                    witness: names(c.generators()),
                    detail: Some(format!("centralizer of order {}", c.order())),
                    ..Finding::default()
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "rationality",
        spec,
        with_schur_note(Map::new()),
        results,
    ))
}

/// Every element of `C_W(E)` is `u·v` with `u² = v² = 1` in `C_W(E)`.
/// Checking one element per class of `C_W(E)` suffices.
pub fn product_of_two_involutions_check(
    group: &PermGroup,
    spec: &str,
) -> Result<VerificationReport> {
    let subgroups = elementary_abelian_2_subgroups(group)?;
    let per_subgroup = subgroups
        .par_iter()
        .map(|e| -> Result<Vec<(bool, Finding)>> {
            let c = group.centralizer_of_all(e.generators())?;
            let involutions: Vec<&Permutation> = c
                .elements()?
                .iter()
                .filter(|u| (*u * *u).is_identity())
                .collect();
            let classes = c.classes()?;
            Ok(classes
                .reps()
                .iter()
                .map(|y| {
                    let pair = involutions.iter().find_map(|u| {
                        let v = *u * y;
                        (&v * &v)
                            .is_identity()
                            .then(|| vec![u.to_string(), v.to_string()])
                    });
                    (
                        pair.is_some(),
                        Finding {
                            subgroup: names(e.generators()),
                            element: Some(y.to_string()),
                            witness: pair.unwrap_or_default(),
                            ..Finding::default()
                        },
                    )
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "involutions",
        spec,
        Map::new(),
        per_subgroup.into_iter().flatten().collect(),
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct NgReport {
    pub schema_version: u32,
    pub check_name: String,
    pub group: String,
    pub all_plus_one: bool,
    pub any_negative: bool,
    pub zero_witnesses: Vec<Finding>,
    pub negative_witnesses: Vec<Finding>,
}

/// Indicators of every irreducible of every `N_g`.
pub fn ng_nonnegative_check(group: &PermGroup, spec: &str, cache: &TableCache) -> Result<NgReport> {
    let classes = group.classes()?;
    let per_class = classes
        .reps()
        .par_iter()
        .map(|g| -> Result<(Vec<Finding>, Vec<Finding>)> {
            let n = group.normalizer_pair(g)?;
            let table = cache.get(&n)?;
            let mut zero = Vec::new();
            let mut negative = Vec::new();
            for chi in table.irreducibles() {
                let nu = fs_indicator(chi)?;
                if nu == 1 {
                    continue;
                }
                let f = Finding {
                    subgroup: names(table.group().generators()),
                    element: Some(g.to_string()),
                    exponent: Some(nu),
                    detail: Some(format!(
                        "element order {}, N_g of order {}, irreducible of degree {} has indicator {nu}",
                        g.order(),
                        table.group().order(),
                        chi.degree()
                    )),
                    ..Finding::default()
                };
                if nu == 0 {
                    zero.push(f);
                } else {
                    negative.push(f);
                }
            }
            Ok((zero, negative))
        })
        .collect::<Result<Vec<_>>>()?;
    let (zero, negative): (Vec<_>, Vec<_>) = per_class.into_iter().unzip();
    let zero: Vec<Finding> = zero.into_iter().flatten().collect();
    let negative: Vec<Finding> = negative.into_iter().flatten().collect();
    Ok(NgReport {
        schema_version: 1,
        check_name: "ng".into(),
        group: spec.to_string(),
        all_plus_one: zero.is_empty() && negative.is_empty(),
        any_negative: !negative.is_empty(),
        zero_witnesses: zero,
        negative_witnesses: negative,
    })
}

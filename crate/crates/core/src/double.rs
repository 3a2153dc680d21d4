//! Indicators of the simple modules of the Drinfeld double `D(G)`.
//!
//! Simple modules `V̂` are indexed by a class representative `g` and an
//! irreducible `V` of `C_g`, with `dim V̂ = [G:C_g] dim V`. Their indicators
//! come from character data of `C_g` and `N_g` alone:
//!
//! * `g` not conjugate to `g⁻¹`: `ν(V̂) = 0`;
//! * `g² = 1`: `ν(V̂) = ν(V)`;
//! * otherwise: `ν(V̂) = ν(V↑N_g) − ν(V)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::{conjugate_character, induce, CharacterTable, TableCache};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::indicators::{fs_extension, fs_indicator, totally_orthogonal};
use crate::perm::Permutation;

#[derive(Debug, Clone, Serialize)]
pub struct DoubleIrreducible {
    pub degree_v: i64,
    pub dim_vhat: u64,
    pub nu_v: i64,
    /// `ν(V↑N_g)`, present when `g` is real and `g² ≠ 1`.
    pub nu_induced: Option<i64>,
    pub nu_hat: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleEntry {
    pub class_index: usize,
    pub rep_cycles: String,
    pub class_size: u64,
    pub rep_order: u64,
    pub g_square_trivial: bool,
    pub g_real: bool,
    pub centralizer_order: u64,
    pub normalizer_index: u64,
    pub witness: Option<String>,
    pub irreducibles: Vec<DoubleIrreducible>,
    /// Indicators of the irreducibles of `N_g`.
    pub normalizer_indicators: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleSummary {
    pub t: u64,
    pub t_squared: u64,
    pub trace_check: i64,
    pub degree_sum: u64,
    pub dimension_check: u64,
    pub simple_count: usize,
    pub totally_orthogonal: bool,
    pub r1: bool,
    pub r2: bool,
    pub r3: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleReport {
    pub schema_version: u32,
    pub group: String,
    pub order: u64,
    pub entries: Vec<DoubleEntry>,
    pub summary: DoubleSummary,
}

impl DoubleReport {
    pub fn nu_hats(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries
            .iter()
            .flat_map(|e| e.irreducibles.iter().map(|x| x.nu_hat))
    }
}

/// Per-class data shared by the report and the independent R-checks.
struct Local {
    g: Permutation,
    witness: Option<Permutation>,
    c: Arc<CharacterTable>,
    n: Arc<CharacterTable>,
}

fn local(group: &PermGroup, class: usize, cache: &TableCache) -> Result<Local> {
    let classes = group.classes()?;
    let g = classes.rep(class).clone();
    let witness = group.inverting_witness(&g)?;
    let c = cache.get(&group.centralizer(&g)?)?;
    let n = cache.get(&group.normalizer_pair(&g)?)?;
    Ok(Local { g, witness, c, n })
}

fn entry(group: &PermGroup, class: usize, cache: &TableCache) -> Result<DoubleEntry> {
    let classes = group.classes()?;
    let Local { g, witness, c, n } = local(group, class, cache)?;
    let real = classes.is_real(class);
    if real != witness.is_some() {
        return Err(Error::Invariant(format!(
            "inverse map and witness disagree at {g}"
        )));
    }
    let square_trivial = classes.square_class(class) == 0;
    let index = n.group().order() / c.group().order();
    let class_size = classes.size(class);
    let mut irreducibles = Vec::with_capacity(c.len());
    for chi in c.irreducibles() {
        let nu_v = fs_indicator(chi)?;
        let (nu_induced, nu_hat) = if !real {
            (None, 0)
        } else if square_trivial {
            (None, nu_v)
        } else {
            if index != 2 {
                return Err(Error::WrongIndex(index));
            }
            let induced = induce(n.group(), c.group(), chi)?;
            let nu_ind = fs_extension(&induced)?;
            (Some(nu_ind), nu_ind - nu_v)
        };
        if !(-1..=1).contains(&nu_hat) {
            return Err(Error::Invariant(format!(
                "indicator {nu_hat} at class of {g}"
            )));
        }
        irreducibles.push(DoubleIrreducible {
            degree_v: chi.degree(),
            dim_vhat: class_size * chi.degree() as u64,
            nu_v,
            nu_induced,
            nu_hat,
        });
    }
    let normalizer_indicators = n
        .irreducibles()
        .iter()
        .map(fs_indicator)
        .collect::<Result<Vec<_>>>()?;
    Ok(DoubleEntry {
        class_index: class,
        rep_cycles: g.to_string(),
        class_size,
        rep_order: classes.element_order(class),
        g_square_trivial: square_trivial,
        g_real: real,
        centralizer_order: c.group().order(),
        normalizer_index: index,
        witness: witness.map(|x| x.to_string()),
        irreducibles,
        normalizer_indicators,
    })
}

/// All indicators of simple `D(G)`-modules, with the summary identities
/// checked before returning.
pub fn double_indicators(
    group: &PermGroup,
    spec: &str,
    cache: &TableCache,
) -> Result<DoubleReport> {
    let classes = group.classes()?.clone();
    let entries = (0..classes.len())
        .into_par_iter()
        .map(|i| entry(group, i, cache))
        .collect::<Result<Vec<_>>>()?;

    let order = group.order();
    let t = classes.involution_count();
    let mut trace = 0i64;
    let mut degree_sum = 0u64;
    let mut dimension = 0u64;
    let mut simple_count = 0;
    for e in &entries {
        for x in &e.irreducibles {
            trace += x.nu_hat * x.dim_vhat as i64;
            degree_sum += x.dim_vhat;
            dimension += x.dim_vhat * x.dim_vhat;
            simple_count += 1;
        }
    }
    let all = |f: &dyn Fn(i64) -> bool| {
        entries
            .iter()
            .flat_map(|e| &e.irreducibles)
            .all(|x| f(x.nu_hat))
    };
    let r1 = all(&|nu| nu != 0);
    let r2 = all(&|nu| nu == 1);
    let r3 = r2
        && entries
            .iter()
            .all(|e| e.normalizer_indicators.iter().all(|&nu| nu == 1));
    let summary = DoubleSummary {
        t,
        t_squared: t * t,
        trace_check: trace,
        degree_sum,
        dimension_check: dimension,
        simple_count,
        totally_orthogonal: r2,
        r1,
        r2,
        r3,
    };
    if summary.trace_check != summary.t_squared as i64 {
        return Err(Error::Invariant(format!(
            "Σ ν(V̂) dim V̂ = {trace} but t² = {}",
            summary.t_squared
        )));
    }
    if dimension != order * order {
        return Err(Error::Invariant(format!("Σ (dim V̂)² = {dimension} ≠ |G|²")));
    }
    if degree_sum < summary.t_squared || (degree_sum == summary.t_squared) != r2 {
        return Err(Error::Invariant(
            "degree sum and total orthogonality disagree".into(),
        ));
    }
    Ok(DoubleReport {
        schema_version: 1,
        group: spec.to_string(),
        order,
        entries,
        summary,
    })
}

/// R1 through self-duality: every class is real, every irreducible of `C_g`
/// is self-dual when `g² = 1`, and otherwise `V^x ≅ V*` for the witness `x`.
/// A second witness `x·c`, `c ∈ C_g`, must give the same answer.
pub fn check_r1(group: &PermGroup, cache: &TableCache) -> Result<bool> {
    let classes = group.classes()?.clone();
    let results = (0..classes.len())
        .into_par_iter()
        .map(|i| -> Result<bool> {
            if !classes.is_real(i) {
                return Ok(false);
            }
            let l = local(group, i, cache)?;
            let c = l.c.group();
            if classes.square_class(i) == 0 {
                return Ok(l.c.irreducibles().iter().all(|chi| chi.is_self_dual()));
            }
            let x = l.witness.as_ref().ok_or_else(|| {
                Error::Invariant(format!("real class of {} without witness", l.g))
            })?;
            let second = c
                .generators()
                .iter()
                .find(|s| !s.is_identity())
                .map(|s| x * s);
            let mut ok = true;
            for chi in l.c.irreducibles() {
                let dual = chi.dual();
                let first = conjugate_character(chi, c, x)? == dual;
                if let Some(y) = &second {
                    if (conjugate_character(chi, c, y)? == dual) != first {
                        return Err(Error::Invariant("witness choice changed V^x".into()));
                    }
                }
                ok &= first;
            }
            Ok(ok)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(results.into_iter().all(|b| b))
}

pub fn check_r2(group: &PermGroup, cache: &TableCache) -> Result<bool> {
    Ok(double_indicators(group, "", cache)?.summary.r2)
}

/// R3 through normalizers: every class is real, every `N_g` is totally
/// orthogonal, and for `g² ≠ 1` the witness sends each class of `C_g` to
/// the class of its inverses.
pub fn check_r3(group: &PermGroup, cache: &TableCache) -> Result<bool> {
    let classes = group.classes()?.clone();
    let results = (0..classes.len())
        .into_par_iter()
        .map(|i| -> Result<bool> {
            if !classes.is_real(i) {
                return Ok(false);
            }
            let l = local(group, i, cache)?;
            if !totally_orthogonal(&l.n)? {
                return Ok(false);
            }
            if classes.square_class(i) == 0 {
                return Ok(true);
            }
            let x = l.witness.as_ref().expect("real class has a witness");
            let cc = l.c.classes();
            for j in 0..cc.len() {
                let image = cc.rep(j).conjugate_by(x);
                if cc.class_of(&image) != Some(cc.inverse_class(j)) {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(results.into_iter().all(|b| b))
}

#[derive(Debug, Clone, Serialize)]
pub struct Hierarchy {
    pub r1: bool,
    pub r2: bool,
    pub r3: bool,
}

/// All three properties, each from its own criterion, checked against the
/// double report and against `R3 ⇒ R2 ⇒ R1`.
pub fn hierarchy(
    group: &PermGroup,
    report: &DoubleReport,
    cache: &TableCache,
) -> Result<Hierarchy> {
    let h = Hierarchy {
        r1: check_r1(group, cache)?,
        r2: report.summary.r2,
        r3: check_r3(group, cache)?,
    };
    if h.r1 != report.summary.r1 || h.r3 != report.summary.r3 {
        return Err(Error::Invariant(format!(
            "independent R-checks {h:?} disagree with the indicators"
        )));
    }
    if (h.r3 && !h.r2) || (h.r2 && !h.r1) {
        return Err(Error::Invariant(format!("R3 ⇒ R2 ⇒ R1 fails: {h:?}")));
    }
    Ok(h)
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaCheck {
    pub schema_version: u32,
    pub group: String,
    pub t: u64,
    pub t_squared: u64,
    pub degree_sum: u64,
    pub equal: bool,
}

/// `t²` against `Σ_{g∈G} Σ_{χ∈Irr(C_g)} χ(1)`, with `t` counted over
/// elements and the sum taken over class sizes times centralizer degree
/// sums.
pub fn formula_check(group: &PermGroup, spec: &str, cache: &TableCache) -> Result<FormulaCheck> {
    let t = group
        .elements()?
        .iter()
        .filter(|g| (*g * *g).is_identity())
        .count() as u64;
    let classes = group.classes()?;
    let mut degree_sum = 0u64;
    for (i, g) in classes.reps().iter().enumerate() {
        let table = cache.get(&group.centralizer(g)?)?;
        let s: i64 = table.degrees().iter().sum();
        degree_sum += classes.size(i) * s as u64;
    }
    let check = FormulaCheck {
        schema_version: 1,
        group: spec.to_string(),
        t,
        t_squared: t * t,
        degree_sum,
        equal: t * t == degree_sum,
    };
    if check.t_squared > degree_sum {
        return Err(Error::Invariant("t² exceeds the degree sum".into()));
    }
    let report = double_indicators(group, spec, cache)?;
    if check.equal != report.summary.totally_orthogonal {
        return Err(Error::Invariant(
            "equality in the degree formula disagrees with the indicators".into(),
        ));
    }
    Ok(check)
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectProductCheck {
    pub left: Hierarchy,
    pub right: Hierarchy,
    pub product: Hierarchy,
    pub agrees: bool,
}

/// `R_i(A × B) ⇔ R_i(A) ∧ R_i(B)` for `i = 1, 2, 3`.
pub fn direct_product_check(
    a: &PermGroup,
    b: &PermGroup,
    cache: &TableCache,
) -> Result<DirectProductCheck> {
    let product = crate::builtins::direct_product(a, b)?;
    let eval = |g: &PermGroup| -> Result<Hierarchy> {
        let report = double_indicators(g, "", cache)?;
        hierarchy(g, &report, cache)
    };
    let (left, right, prod) = (eval(a)?, eval(b)?, eval(&product)?);
    let agrees = prod.r1 == (left.r1 && right.r1)
        && prod.r2 == (left.r2 && right.r2)
        && prod.r3 == (left.r3 && right.r3);
    Ok(DirectProductCheck {
        left,
        right,
        product: prod,
        agrees,
    })
}

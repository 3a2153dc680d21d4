//! Acceptance suite. Each test is one criterion and prints a single
//! `[PASS]`/`[FAIL]` line with the numbers behind it.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fsdouble::chartab::{is_rational_group, CharacterTable, TableCache};
use fsdouble::cli::parse_group_spec;
use fsdouble::cyclo::Cyclotomic;
use fsdouble::double::{check_r1, check_r3, double_indicators, hierarchy, DoubleReport};
use fsdouble::group::abelian_invariants;
use fsdouble::indicators::{fs_indicator, fs_indicator_brute_force, totally_orthogonal};
use fsdouble::verify;
use fsdouble::{PermGroup, Permutation};

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "[{}] {criterion}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{criterion} failed: {detail}");
}

fn group(spec: &str) -> PermGroup {
    parse_group_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn double(spec: &str, cache: &TableCache) -> DoubleReport {
    double_indicators(&group(spec), spec, cache).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Every builtin of order at most 1200 that fits in memory. The cyclic and
/// dihedral families are sampled: all small members plus a spread of large
/// ones up to the order bound.
fn builtins_up_to_1200() -> Vec<String> {
    let mut specs: Vec<String> = Vec::new();
    specs.extend((1..=6).map(|n| format!("sym:{n}")));
    specs.extend((1..=6).map(|n| format!("alt:{n}")));
    specs.extend((2..=4).map(|n| format!("weyl-b:{n}")));
    specs.extend((2..=4).map(|n| format!("weyl-d:{n}")));
    specs.extend(["q8", "h3", "hol-c8", "f4"].map(String::from));
    specs.extend(
        (1..=30)
            .chain([48, 60, 64, 97, 120, 210, 360, 600])
            .map(|n| format!("cyc:{n}")),
    );
    specs.extend(
        (1..=30)
            .chain([48, 60, 64, 97, 120, 210, 360, 450, 600])
            .map(|m| format!("dih:{m}")),
    );
    specs
}

/// Row and column orthogonality in exact cyclotomic arithmetic, independent
/// of the modular check inside the table construction. Cubic in the number
/// of classes, so only run on small tables.
fn orthogonality_oracle(table: &CharacterTable) -> bool {
    let c = table.classes();
    let k = c.len();
    let irr = table.irreducibles();
    let order = Cyclotomic::from_int(c.group_order() as i64);
    for a in irr {
        for b in irr {
            let mut s = Cyclotomic::zero();
            for l in 0..k {
                let term = a.value(l) * &b.value(l).conj();
                s += &(&term * &Cyclotomic::from_int(c.size(l) as i64));
            }
            let expected = if a == b {
                order.clone()
            } else {
                Cyclotomic::zero()
            };
            if s != expected {
                return false;
            }
        }
    }
    for u in 0..k {
        for v in 0..k {
            let mut s = Cyclotomic::zero();
            for chi in irr {
                s += &(chi.value(u) * &chi.value(v).conj());
            }
            let expected = if u == v {
                Cyclotomic::from_int(c.centralizer_order(u) as i64)
            } else {
                Cyclotomic::zero()
            };
            if s != expected {
                return false;
            }
        }
    }
    true
}

#[test]
fn criterion_01_orthogonality() {
    let mut failures = Vec::new();
    let mut slowest = (String::new(), Duration::ZERO);
    let mut total = Duration::ZERO;
    let specs = builtins_up_to_1200();
    for spec in &specs {
        let g = group(spec);
        assert!(g.order() <= 1200, "{spec} is too large");
        let t = Instant::now();
        let result = CharacterTable::compute(&g);
        let elapsed = t.elapsed();
        total += elapsed;
        if elapsed > slowest.1 {
            slowest = (spec.clone(), elapsed);
        }
        match result {
            Ok(table) => {
                let deg_sq: i64 = table.degrees().iter().map(|d| d * d).sum();
                if deg_sq as u64 != g.order() || table.len() != table.classes().len() {
                    failures.push(format!("{spec}: Σχ(1)² = {deg_sq}"));
                }
                if table.len() <= 40 && !orthogonality_oracle(&table) {
                    failures.push(format!("{spec}: exact oracle disagrees"));
                }
            }
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
        if elapsed > Duration::from_secs(10) {
            failures.push(format!("{spec}: {elapsed:?} over 10 s"));
        }
    }
    if total > Duration::from_secs(120) {
        failures.push(format!("total {total:?} over 2 min"));
    }
    report(
        "criterion 1 (orthogonality, Σχ(1)² = |G|)",
        failures.is_empty(),
        &format!(
            "{} groups in {total:.1?}, slowest {} at {:.1?}; failures {failures:?}",
            specs.len(),
            slowest.0,
            slowest.1
        ),
    );
}

#[test]
fn criterion_02_totally_orthogonal() {
    let mut specs: Vec<String> = (1..=6).map(|n| format!("sym:{n}")).collect();
    specs.extend((1..=8).map(|m| format!("dih:{m}")));
    specs.extend((2..=4).map(|n| format!("weyl-b:{n}")));
    specs.extend((2..=4).map(|n| format!("weyl-d:{n}")));
    specs.push("h3".into());
    let bad: Vec<&String> = specs
        .iter()
        .filter(|s| !totally_orthogonal(&CharacterTable::compute(&group(s)).unwrap()).unwrap())
        .collect();
    report(
        "criterion 2 (all indicators +1)",
        bad.is_empty(),
        &format!("{} groups, not totally orthogonal: {bad:?}", specs.len()),
    );
}

fn criterion_three_specs() -> Vec<String> {
    let mut specs: Vec<String> = (1..=5).map(|n| format!("sym:{n}")).collect();
    specs.extend((1..=8).map(|m| format!("dih:{m}")));
    specs.extend((2..=4).map(|n| format!("weyl-b:{n}")));
    specs.extend((2..=4).map(|n| format!("weyl-d:{n}")));
    specs.push("h3".into());
    specs
}

#[test]
fn criterion_03_double_all_plus_one() {
    let cache = TableCache::new();
    let start = Instant::now();
    let specs = criterion_three_specs();
    let mut bad = Vec::new();
    let mut modules = 0;
    for spec in &specs {
        let r = double(spec, &cache);
        modules += r.summary.simple_count;
        if !r.nu_hats().all(|nu| nu == 1) {
            bad.push(spec.clone());
        }
    }
    let elapsed = start.elapsed();
    report(
        "criterion 3 (double indicators all +1)",
        bad.is_empty() && elapsed < Duration::from_secs(300),
        &format!(
            "{} groups, {modules} simple modules in {elapsed:.1?}; failing {bad:?}",
            specs.len()
        ),
    );
}

/// Groups on at most 7 points from at most 3 seeded random generators.
fn fuzz_groups(count: usize) -> Vec<(String, PermGroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..count)
        .map(|i| {
            let degree = rng.gen_range(1..=7);
            let n_gens = rng.gen_range(1..=3);
            let gens: Vec<Permutation> = (0..n_gens)
                .map(|_| {
                    let mut images: Vec<usize> = (0..degree).collect();
                    images.shuffle(&mut rng);
                    Permutation::from_images(images).unwrap()
                })
                .collect();
            let label = format!(
                "fuzz#{i}[{}]",
                gens.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            (label, PermGroup::build(degree, gens).unwrap())
        })
        .collect()
}

fn trace_identity(g: &PermGroup, label: &str, cache: &TableCache) -> Result<(), String> {
    let r = double_indicators(g, label, cache).map_err(|e| format!("{label}: {e}"))?;
    let trace: i64 = r
        .entries
        .iter()
        .flat_map(|e| &e.irreducibles)
        .map(|x| x.nu_hat * x.dim_vhat as i64)
        .sum();
    let t = g
        .elements()
        .unwrap()
        .iter()
        .filter(|x| (*x * *x).is_identity())
        .count() as i64;
    if trace != t * t {
        return Err(format!("{label}: Σν̂·dim = {trace}, t² = {}", t * t));
    }
    Ok(())
}

#[test]
fn criterion_04_trace_identity() {
    let cache = TableCache::new();
    let mut specs = criterion_three_specs();
    specs.extend(["q8", "hol-c8", "f4", "alt:4", "alt:5"].map(String::from));
    specs.extend((1..=12).map(|n| format!("cyc:{n}")));
    let mut failures = Vec::new();
    for spec in &specs {
        if let Err(e) = trace_identity(&group(spec), spec, &cache) {
            failures.push(e);
        }
    }
    let fuzz = fuzz_groups(60);
    for (label, g) in &fuzz {
        if let Err(e) = trace_identity(g, label, &cache) {
            failures.push(e);
        }
    }
    report(
        "criterion 4 (Σ ν̂·dim = t²)",
        failures.is_empty(),
        &format!(
            "{} named groups and {} fuzz groups; failures {failures:?}",
            specs.len(),
            fuzz.len()
        ),
    );
}

#[test]
fn criterion_05_degree_sum() {
    let cache = TableCache::new();
    let mut failures = Vec::new();
    for spec in criterion_three_specs() {
        let s = double(&spec, &cache).summary;
        if s.t_squared != s.degree_sum {
            failures.push(format!(
                "{spec}: t² = {} but degree sum {}",
                s.t_squared, s.degree_sum
            ));
        }
    }
    let q8 = double("q8", &cache).summary;
    let hol = double("hol-c8", &cache).summary;
    let ok = failures.is_empty()
        && q8.t_squared == 4
        && q8.degree_sum == 36
        && hol.t_squared < hol.degree_sum;
    report(
        "criterion 5 (t² against Σ dim V̂)",
        ok,
        &format!(
            "equal on the reflection groups; q8 {} < {}; hol-c8 {} < {}; failures {failures:?}",
            q8.t_squared, q8.degree_sum, hol.t_squared, hol.degree_sum
        ),
    );
}

#[test]
fn criterion_06_holomorph() {
    let cache = TableCache::new();
    let g = group("hol-c8");
    let table = CharacterTable::compute(&g).unwrap();
    let rational = is_rational_group(&g).unwrap();
    let orthogonal = totally_orthogonal(&table).unwrap();
    let (x, a, _) = fsdouble::builtins::holomorph_c8_generators();
    let xa = &x * &a;
    let k = g.classes().unwrap().class_of(&xa).unwrap();
    let r = double_indicators(&g, "hol-c8", &cache).unwrap();
    let entry = r.entries.iter().find(|e| e.class_index == k).unwrap();
    let zero = entry.irreducibles.iter().any(|v| v.nu_hat == 0);
    let c = g.centralizer(&xa).unwrap();
    let invariants = abelian_invariants(&c).unwrap();
    let ok =
        g.order() == 32 && rational && orthogonal && zero && c.order() == 8 && invariants == [4, 2];
    report(
        "criterion 6 (hol-c8)",
        ok,
        &format!(
            "rational {rational}, totally orthogonal {orthogonal}, ν̂ at xa {:?}, |C(xa)| = {}, invariants {invariants:?}",
            entry.irreducibles.iter().map(|v| v.nu_hat).collect::<Vec<_>>(),
            c.order()
        ),
    );
}

#[test]
fn criterion_07_hierarchy() {
    let cache = TableCache::new();
    let mut failures = Vec::new();
    let q8 = group("q8");
    let rq = double("q8", &cache);
    let hq = hierarchy(&q8, &rq, &cache).unwrap();
    if !(hq.r1 && !hq.r2) {
        failures.push(format!("q8 {hq:?}"));
    }
    let weyl = [
        "sym:2", "sym:3", "sym:4", "sym:5", "weyl-b:2", "weyl-b:3", "weyl-b:4", "weyl-d:2",
        "weyl-d:3", "weyl-d:4",
    ];
    for spec in weyl {
        let g = group(spec);
        let r = double(spec, &cache);
        let h = hierarchy(&g, &r, &cache).unwrap();
        if !h.r3 {
            failures.push(format!("{spec} {h:?}"));
        }
    }
    let mut specs: Vec<&str> = weyl.to_vec();
    specs.extend(["q8", "hol-c8", "h3", "cyc:5", "dih:7", "alt:5"]);
    for spec in specs {
        let r = double(spec, &cache);
        if r.summary.dimension_check != r.order * r.order {
            failures.push(format!("{spec}: Σ dim² = {}", r.summary.dimension_check));
        }
    }
    report(
        "criterion 7 (R1 ∧ ¬R2 for q8, R3 for Weyl groups, Σ dim² = |G|²)",
        failures.is_empty(),
        &format!("q8 {hq:?}; failures {failures:?}"),
    );
}

#[test]
fn criterion_07_stretch_f4() {
    let cache = TableCache::new();
    let start = Instant::now();
    let g = group("f4");
    let r = double("f4", &cache);
    let h = hierarchy(&g, &r, &cache).unwrap();
    let ng = verify::ng_nonnegative_check(&g, "f4", &cache).unwrap();
    let order_three_zero = r
        .entries
        .iter()
        .any(|e| e.rep_order == 3 && e.normalizer_indicators.contains(&0));
    let elapsed = start.elapsed();
    let ok = g.order() == 1152
        && h.r2
        && !h.r3
        && order_three_zero
        && !ng.any_negative
        && elapsed < Duration::from_secs(1800);
    report(
        "criterion 7 stretch (F4 is R2 but not R3)",
        ok,
        &format!(
            "{h:?}, order-3 class with an indicator-0 N_g module {order_three_zero}, any negative {} in {elapsed:.1?}",
            ng.any_negative
        ),
    );
}

#[test]
fn criterion_08_searches() {
    let cache = TableCache::new();
    let mut failures = Vec::new();
    let mut specs: Vec<String> = (2..=5).map(|n| format!("sym:{n}")).collect();
    specs.extend((2..=3).map(|n| format!("weyl-b:{n}")));
    specs.extend((2..=4).map(|n| format!("weyl-d:{n}")));
    for spec in &specs {
        let g = group(spec);
        let inversion = verify::inversion_check(&g, spec, 3).unwrap();
        let power = verify::power_conjugation_check(&g, spec, 3).unwrap();
        let rationality = verify::centralizer_rationality_check(&g, spec).unwrap();
        let involutions = verify::product_of_two_involutions_check(&g, spec).unwrap();
        for (name, pass) in [
            ("inversion", inversion.all_pass),
            ("power", power.all_pass),
            ("rationality", rationality.all_pass),
            ("involutions", involutions.all_pass),
        ] {
            if !pass {
                failures.push(format!("{spec} {name}"));
            }
        }
        // inversion makes every C_g irreducible self-dual at involutions
        if inversion.all_pass && !check_r1(&g, &cache).unwrap() {
            failures.push(format!("{spec}: inversion passes but R1 fails"));
        }
        if !check_r3(&g, &cache).unwrap() {
            failures.push(format!("{spec}: not R3"));
        }
    }
    let c3 = group("cyc:3");
    let c4 = group("cyc:4");
    let c3_inv = verify::inversion_check(&c3, "cyc:3", 3).unwrap().all_pass;
    let c4_rat = verify::centralizer_rationality_check(&c4, "cyc:4")
        .unwrap()
        .all_pass;
    if c3_inv {
        failures.push("inversion passes on cyc:3".into());
    }
    if c4_rat {
        failures.push("rationality passes on cyc:4".into());
    }
    report(
        "criterion 8 (inversion, power, rationality, involutions)",
        failures.is_empty(),
        &format!("{} groups with max_gens 3, cyc:3 inversion {c3_inv}, cyc:4 rationality {c4_rat}; failures {failures:?}", specs.len()),
    );
}

#[test]
fn criterion_09_brute_force_oracles() {
    let mut named: Vec<String> = (1..=5).map(|n| format!("sym:{n}")).collect();
    named.extend((3..=5).map(|n| format!("alt:{n}")));
    named.extend((1..=12).chain([50, 100]).map(|n| format!("dih:{n}")));
    named.extend((1..=12).chain([200]).map(|n| format!("cyc:{n}")));
    named.extend(
        [
            "weyl-b:2", "weyl-b:3", "weyl-d:2", "weyl-d:3", "weyl-d:4", "q8", "h3", "hol-c8",
        ]
        .map(String::from),
    );
    let mut groups: Vec<(String, PermGroup)> =
        named.into_iter().map(|s| (s.clone(), group(&s))).collect();
    groups.extend(
        fuzz_groups(40)
            .into_iter()
            .filter(|(_, g)| g.order() <= 200),
    );
    let mut failures = Vec::new();
    let mut characters = 0;
    let mut elements = 0;
    for (label, g) in &groups {
        assert!(g.order() <= 200, "{label} is too large");
        let table = CharacterTable::compute(g).unwrap();
        for chi in table.irreducibles() {
            characters += 1;
            if fs_indicator(chi).unwrap() != fs_indicator_brute_force(chi).unwrap() {
                failures.push(format!("{label}: indicator"));
            }
        }
        for x in g.classes().unwrap().reps() {
            elements += 1;
            if !g
                .centralizer(x)
                .unwrap()
                .same_group(&g.centralizer_brute_force(x).unwrap())
            {
                failures.push(format!("{label}: centralizer of {x}"));
            }
            if !g
                .normalizer_pair(x)
                .unwrap()
                .same_group(&g.normalizer_pair_brute_force(x).unwrap())
            {
                failures.push(format!("{label}: normalizer of {x}"));
            }
        }
    }
    report(
        "criterion 9 (brute-force oracles, |G| ≤ 200)",
        failures.is_empty(),
        &format!(
            "{} groups, {characters} indicators, {elements} centralizers and normalizers; failures {failures:?}",
            groups.len()
        ),
    );
}

#[test]
fn criterion_10_deterministic_json() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_fsdouble"))
            .args(["double", "weyl-b:3", "--json"])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let runs: Vec<Vec<u8>> = (0..3).map(|_| run()).collect();
    let same = runs.windows(2).all(|w| w[0] == w[1]);
    let parsed: serde_json::Value = serde_json::from_slice(&runs[0]).unwrap();
    report(
        "criterion 10 (byte-identical JSON)",
        same && parsed["order"] == 48,
        &format!("3 runs of {} bytes each, identical {same}", runs[0].len()),
    );
}

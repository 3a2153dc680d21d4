//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::builtins;
use crate::chartab::{is_rational_group, CharacterTable, TableCache};
use crate::double::{double_indicators, formula_check, hierarchy, DoubleReport};
use crate::error::{Error, Result};
use crate::group::{abelian_invariants, PermGroup, DEFAULT_CAP, DEFAULT_MAX_GENS};
use crate::indicators::{check_dc1, check_dc2, indicator_report};
use crate::perm::Permutation;
use crate::verify;

/// Parses a group spec: a builtin such as `sym:4`, `file:<path>`, or a
/// direct product of specs joined by `×` or `*`.
pub fn parse_group_spec(text: &str) -> Result<PermGroup> {
    let parts: Vec<&str> = text.split(['×', '*']).map(str::trim).collect();
    let mut group = parse_factor(parts[0])?;
    for part in &parts[1..] {
        group = builtins::direct_product(&group, &parse_factor(part)?)?;
    }
    Ok(group)
}

fn parse_factor(text: &str) -> Result<PermGroup> {
    if let Some(path) = text.strip_prefix("file:") {
        return parse_group_file(Path::new(path));
    }
    let unknown = || Error::UnknownSpec(text.to_string());
    let (name, arg) = match text.split_once(':') {
        Some((name, arg)) => (name, Some(arg.parse::<usize>().map_err(|_| unknown())?)),
        None => (text, None),
    };
    match (name, arg) {
        ("sym", Some(n)) => builtins::sym(n),
        ("alt", Some(n)) => builtins::alt(n),
        ("cyc", Some(n)) => builtins::cyclic(n),
        ("dih", Some(m)) => builtins::dihedral(m),
        ("weyl-b", Some(n)) => builtins::weyl_b(n),
        ("weyl-d", Some(n)) => builtins::weyl_d(n),
        ("q8", None) => Ok(builtins::q8()),
        ("h3", None) => Ok(builtins::h3()),
        ("hol-c8", None) => Ok(builtins::holomorph_c8()),
        ("f4" | "weyl-f4", None) => builtins::weyl_f4(),
        _ => Err(unknown()),
    }
}

/// Line 1 (after comments) is the degree; each further non-empty line is
/// one generator in cycle notation. `#` starts a comment.
pub fn parse_group_file(path: &Path) -> Result<PermGroup> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    parse_group_text(&text, &shown)
}

pub fn parse_group_text(text: &str, source: &str) -> Result<PermGroup> {
    let file_error = |line: usize, message: String| Error::GroupFile {
        path: source.to_string(),
        line,
        message,
    };
    let mut degree = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let d: usize = line
                    .parse()
                    .map_err(|_| file_error(i + 1, format!("expected a degree, found {line:?}")))?;
                if d == 0 {
                    return Err(file_error(i + 1, "degree must be positive".into()));
                }
                degree = Some(d);
            }
            Some(d) => {
                let g =
                    Permutation::parse(line, d).map_err(|e| file_error(i + 1, e.to_string()))?;
                gens.push(g);
            }
        }
    }
    let degree = degree.ok_or_else(|| file_error(1, "missing degree line".into()))?;
    PermGroup::build(degree, gens)
}

#[derive(Parser)]
#[command(
    name = "fsdouble",
    version,
    about = "Character tables and Frobenius-Schur indicators of finite groups and their Drinfeld doubles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,
    /// Largest group order that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Generator bound for abelian subgroup searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_GENS)]
    max_gens: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Order, classes and basic invariants.
    Info { spec: String },
    /// The character table.
    Chartab { spec: String },
    /// Frobenius-Schur indicators of the irreducible characters.
    Indicators { spec: String },
    /// Indicators of all simple modules of the Drinfeld double.
    Double { spec: String },
    /// Check one property; exit status 1 if it fails.
    Check { property: Property, spec: String },
    /// Run every applicable check on each listed group.
    VerifyPaper {
        #[arg(required = true)]
        specs: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    R1,
    R2,
    R3,
    Dc,
    Formula,
    Inversion,
    Power,
    Rationality,
    Ng,
    Involutions,
}

/// Outcome of a command: rendered output and whether the property held.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, pass: true }
    }
}

/// Runs the CLI and returns the exit status: 0 on success, 1 when a checked
/// property is false, 2 when the computation could not be carried out.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match execute(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|e| e.to_string()),
                None => {
                    print!("{}", outcome.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return 2;
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn load(cli: &Cli, spec: &str) -> Result<PermGroup> {
    let g = parse_group_spec(spec)?.with_cap(cli.cap);
    g.check_cap()?;
    Ok(g)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let cache = TableCache::new();
    match &cli.command {
        Command::Info { spec } => info(cli, spec),
        Command::Chartab { spec } => {
            let g = load(cli, spec)?;
            let table = CharacterTable::compute(&g)?;
            Ok(Outcome::ok(if cli.json {
                to_json(&table.to_json(spec))
            } else {
                render_table(spec, &table)
            }))
        }
        Command::Indicators { spec } => {
            let g = load(cli, spec)?;
            let table = CharacterTable::compute(&g)?;
            let report = indicator_report(spec, &table)?;
            Ok(Outcome::ok(if cli.json {
                to_json(&report)
            } else {
                let mut s = format!(
                    "{spec}: t = {}, totally orthogonal: {}\n",
                    report.t, report.totally_orthogonal
                );
                s.push_str("  degree  nu  self-dual  rational\n");
                for x in &report.irreducibles {
                    let _ = writeln!(
                        s,
                        "  {:>6}  {:>2}  {:>9}  {:>8}",
                        x.degree, x.nu, x.self_dual, x.rational
                    );
                }
                s
            }))
        }
        Command::Double { spec } => {
            let g = load(cli, spec)?;
            let report = double_indicators(&g, spec, &cache)?;
            Ok(Outcome::ok(if cli.json {
                to_json(&report)
            } else {
                render_double(&report)
            }))
        }
        Command::Check { property, spec } => check(cli, *property, spec, &cache),
        Command::VerifyPaper { specs } => verify_paper(cli, specs, &cache),
    }
}

fn info(cli: &Cli, spec: &str) -> Result<Outcome> {
    let g = parse_group_spec(spec)?.with_cap(cli.cap);
    // a number when it fits, otherwise the decimal string
    let order_big = g.order_big();
    let order =
        u64::try_from(&order_big).map_or_else(|_| json!(order_big.to_string()), |n| json!(n));
    let mut v = json!({
        "schema_version": 1,
        "group": spec,
        "degree": g.degree(),
        "order": order,
        "generators": g.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    // Class data needs enumeration; report it only within the cap.
    if g.check_cap().is_ok() {
        let c = g.classes()?;
        v["classes"] = json!(c.len());
        v["exponent"] = json!(c.exponent());
        v["abelian"] = json!(g.is_abelian());
        v["rational"] = json!(is_rational_group(&g)?);
        v["involution_count"] = json!(c.involution_count());
        v["class_sizes"] = json!(c.sizes());
        if g.is_abelian() {
            v["abelian_invariants"] = json!(abelian_invariants(&g)?);
        }
    }
    if cli.json {
        return Ok(Outcome::ok(to_json(&v)));
    }
    let mut s = String::new();
    let obj = v.as_object().expect("object");
    for (k, val) in obj {
        if k == "schema_version" {
            continue;
        }
        let shown = match val {
            Value::String(x) => x.clone(),
            other => other.to_string(),
        };
        let _ = writeln!(s, "{k}: {shown}");
    }
    Ok(Outcome::ok(s))
}

fn render_table(spec: &str, table: &CharacterTable) -> String {
    let c = table.classes();
    let mut s = format!(
        "{spec}: order {}, {} classes, exponent {}, prime {}\n",
        c.group_order(),
        c.len(),
        c.exponent(),
        table.prime()
    );
    for i in 0..c.len() {
        let _ = writeln!(
            s,
            "  class {i}: {} size {} order {}",
            c.rep(i),
            c.size(i),
            c.element_order(i)
        );
    }
    for (n, chi) in table.irreducibles().iter().enumerate() {
        let values: Vec<String> = chi.values().iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  X.{}: {}", n + 1, values.join("  "));
    }
    s
}

fn render_double(r: &DoubleReport) -> String {
    let mut s = format!("{}: order {}\n", r.group, r.order);
    for e in &r.entries {
        let nus: Vec<String> = e
            .irreducibles
            .iter()
            .map(|x| x.nu_hat.to_string())
            .collect();
        let _ = writeln!(
            s,
            "  class {} {} size {} |C_g| {} [N_g:C_g] {} nu: {}",
            e.class_index,
            e.rep_cycles,
            e.class_size,
            e.centralizer_order,
            e.normalizer_index,
            nus.join(" ")
        );
    }
    let m = &r.summary;
    let _ = writeln!(
        s,
        "t = {}, t^2 = {}, trace = {}, degree sum = {}, dimension check = {}",
        m.t, m.t_squared, m.trace_check, m.degree_sum, m.dimension_check
    );
    let _ = writeln!(
        s,
        "totally orthogonal: {}, R1: {}, R2: {}, R3: {}",
        m.totally_orthogonal, m.r1, m.r2, m.r3
    );
    s
}

fn verification_text(r: &verify::VerificationReport) -> String {
    let mut s = format!(
        "{} on {}: {} ({} passed, {} failed)\n",
        r.check_name,
        r.group,
        if r.all_pass { "pass" } else { "FAIL" },
        r.witnesses.len(),
        r.failures.len()
    );
    for f in &r.failures {
        let _ = writeln!(
            s,
            "  failure: subgroup <{}> element {} exponent {}",
            f.subgroup.join(", "),
            f.element.as_deref().unwrap_or("-"),
            f.exponent.map_or("-".to_string(), |r| r.to_string())
        );
    }
    s
}

fn check(cli: &Cli, property: Property, spec: &str, cache: &TableCache) -> Result<Outcome> {
    let g = load(cli, spec)?;
    let flag = |name: &str, value: bool, extra: Value| -> Outcome {
        let text = if cli.json {
            let mut v =
                json!({"schema_version": 1, "check_name": name, "group": spec, "pass": value});
            if let (Value::Object(m), Value::Object(x)) = (&mut v, extra) {
                m.extend(x);
            }
            to_json(&v)
        } else {
            format!("{name} on {spec}: {value}\n")
        };
        Outcome { text, pass: value }
    };
    match property {
        Property::R1 | Property::R2 | Property::R3 => {
            let report = double_indicators(&g, spec, cache)?;
            let h = hierarchy(&g, &report, cache)?;
            let (name, value) = match property {
                Property::R1 => ("r1", h.r1),
                Property::R2 => ("r2", h.r2),
                _ => ("r3", h.r3),
            };
            Ok(flag(
                name,
                value,
                json!({"r1": h.r1, "r2": h.r2, "r3": h.r3}),
            ))
        }
        Property::Dc => dc(cli, &g, spec, cache),
        Property::Formula => {
            let f = formula_check(&g, spec, cache)?;
            let text = if cli.json {
                to_json(&f)
            } else {
                format!(
                    "formula on {spec}: t = {}, t^2 = {}, degree sum = {}, equal: {}\n",
                    f.t, f.t_squared, f.degree_sum, f.equal
                )
            };
            Ok(Outcome {
                text,
                pass: f.equal,
            })
        }
        Property::Inversion | Property::Power | Property::Rationality | Property::Involutions => {
            let r = match property {
                Property::Inversion => verify::inversion_check(&g, spec, cli.max_gens)?,
                Property::Power => verify::power_conjugation_check(&g, spec, cli.max_gens)?,
                Property::Rationality => verify::centralizer_rationality_check(&g, spec)?,
                _ => verify::product_of_two_involutions_check(&g, spec)?,
            };
            let text = if cli.json {
                to_json(&r)
            } else {
                verification_text(&r)
            };
            Ok(Outcome {
                text,
                pass: r.all_pass,
            })
        }
        Property::Ng => {
            let r = verify::ng_nonnegative_check(&g, spec, cache)?;
            let text = if cli.json {
                to_json(&r)
            } else {
                let mut s = format!(
                    "ng on {spec}: all +1: {}, any negative: {}\n",
                    r.all_plus_one, r.any_negative
                );
                for f in r.zero_witnesses.iter().chain(&r.negative_witnesses) {
                    let _ = writeln!(
                        s,
                        "  g = {}: {}",
                        f.element.as_deref().unwrap_or("-"),
                        f.detail.as_deref().unwrap_or("")
                    );
                }
                s
            };
            Ok(Outcome {
                text,
                pass: !r.any_negative,
            })
        }
    }
}

#[derive(Serialize)]
struct DcRow {
    class_index: usize,
    rep_cycles: String,
    dc1: bool,
    dc2: bool,
}

/// DC1 and DC2 for every pair `C_g < N_g` of index 2.
fn dc(cli: &Cli, g: &PermGroup, spec: &str, cache: &TableCache) -> Result<Outcome> {
    let classes = g.classes()?;
    let mut rows = Vec::new();
    for (i, rep) in classes.reps().iter().enumerate() {
        let n = g.normalizer_pair(rep)?;
        let c = g.centralizer(rep)?;
        if n.order() != 2 * c.order() {
            continue;
        }
        let (tn, tc) = (cache.get(&n)?, cache.get(&c)?);
        let (dc1, dc2) = (check_dc1(&tn, &tc)?, check_dc2(&tn, &tc)?);
        if dc2 && !dc1 {
            return Err(Error::Invariant(format!("DC2 without DC1 at {rep}")));
        }
        rows.push(DcRow {
            class_index: i,
            rep_cycles: rep.to_string(),
            dc1,
            dc2,
        });
    }
    let pass = rows.iter().all(|r| r.dc1);
    let text = if cli.json {
        to_json(
            &json!({"schema_version": 1, "check_name": "dc", "group": spec, "pass": pass, "pairs": rows}),
        )
    } else {
        let mut s = format!("dc on {spec}: {pass}\n");
        for r in &rows {
            let _ = writeln!(
                s,
                "  class {} {}: DC1 {} DC2 {}",
                r.class_index, r.rep_cycles, r.dc1, r.dc2
            );
        }
        s
    };
    Ok(Outcome { text, pass })
}

#[derive(Serialize)]
struct CheckLine {
    group: String,
    check: String,
    pass: bool,
    detail: String,
}

/// Family of a builtin spec, used to pick the expected behaviour.
fn family(spec: &str) -> &str {
    spec.split(':').next().unwrap_or(spec)
}

fn verify_paper(cli: &Cli, specs: &[String], cache: &TableCache) -> Result<Outcome> {
    let mut lines = Vec::new();
    let specs: Vec<&str> = specs
        .iter()
        .flat_map(|s| s.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    for spec in specs {
        verify_one(cli, spec, cache, &mut lines)?;
    }
    let pass = lines.iter().all(|l| l.pass);
    let text = if cli.json {
        to_json(
            &json!({"schema_version": 1, "check_name": "verify-paper", "pass": pass, "results": lines}),
        )
    } else {
        let mut s = String::new();
        for l in &lines {
            let status = if l.pass { "PASS" } else { "FAIL" };
            let _ = write!(s, "[{status}] {} {}", l.group, l.check);
            if !l.detail.is_empty() {
                let _ = write!(s, ": {}", l.detail);
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{}",
            if pass {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        );
        s
    };
    Ok(Outcome { text, pass })
}

fn verify_one(cli: &Cli, spec: &str, cache: &TableCache, lines: &mut Vec<CheckLine>) -> Result<()> {
    let g = load(cli, spec)?;
    let mut push = |check: &str, pass: bool, detail: String| {
        lines.push(CheckLine {
            group: spec.to_string(),
            check: check.to_string(),
            pass,
            detail,
        })
    };

    // Identities that hold for every group; each computation asserts its
    // own invariants and errors out if one fails.
    let table = CharacterTable::compute(&g)?;
    push(
        "table",
        true,
        format!("{} irreducibles, orthogonality exact", table.len()),
    );
    let ind = indicator_report(spec, &table)?;
    let report = double_indicators(&g, spec, cache)?;
    let m = &report.summary;
    push(
        "trace",
        m.trace_check == m.t_squared as i64,
        format!("Σ ν·dim = {} vs t² = {}", m.trace_check, m.t_squared),
    );
    push(
        "dimension",
        m.dimension_check == report.order * report.order,
        format!("Σ dim² = {}", m.dimension_check),
    );
    let h = hierarchy(&g, &report, cache)?;
    push(
        "hierarchy",
        true,
        format!("R1 {} R2 {} R3 {}", h.r1, h.r2, h.r3),
    );
    let f = formula_check(&g, spec, cache)?;

    let factors: Vec<&str> = spec.split(['×', '*']).map(str::trim).collect();
    let all_in = |names: &[&str]| factors.iter().all(|f| names.contains(&family(f)));
    if all_in(&["sym", "dih", "weyl-b", "weyl-d", "h3"]) {
        push("totally orthogonal", ind.totally_orthogonal, String::new());
        push(
            "double +1",
            m.r2,
            format!("t² = {} degree sum = {}", f.t_squared, f.degree_sum),
        );
    }
    if all_in(&["sym", "weyl-b", "weyl-d"]) {
        push("R3", h.r3, String::new());
        for r in [
            verify::inversion_check(&g, spec, cli.max_gens)?,
            verify::power_conjugation_check(&g, spec, cli.max_gens)?,
            verify::centralizer_rationality_check(&g, spec)?,
            verify::product_of_two_involutions_check(&g, spec)?,
        ] {
            let detail = format!("{} cases", r.witnesses.len() + r.failures.len());
            push(&r.check_name, r.all_pass, detail);
        }
        let ng = verify::ng_nonnegative_check(&g, spec, cache)?;
        push("ng all +1", ng.all_plus_one, String::new());
    }
    match spec {
        "q8" => {
            push("R1 and not R2", h.r1 && !h.r2, String::new());
            push(
                "strict formula",
                !f.equal,
                format!("{} < {}", f.t_squared, f.degree_sum),
            );
        }
        "hol-c8" => {
            push("rational", is_rational_group(&g)?, String::new());
            push("totally orthogonal", ind.totally_orthogonal, String::new());
            let (x, a, _) = builtins::holomorph_c8_generators();
            let xa = &x * &a;
            let k = g
                .classes()?
                .class_of(&xa)
                .ok_or_else(|| Error::NotMember(xa.to_string()))?;
            let e = &report.entries[k];
            let c = g.centralizer(&xa)?;
            let inv = abelian_invariants(&c)?;
            push(
                "zero at xa",
                e.irreducibles.iter().any(|x| x.nu_hat == 0) && c.order() == 8 && inv == [4, 2],
                format!("|C| = {}, invariants {:?}", c.order(), inv),
            );
            push(
                "strict formula",
                !f.equal,
                format!("{} < {}", f.t_squared, f.degree_sum),
            );
        }
        "f4" | "weyl-f4" => {
            push("R2 and not R3", h.r2 && !h.r3, String::new());
            let ng = verify::ng_nonnegative_check(&g, spec, cache)?;
            let order3 = ng.zero_witnesses.iter().any(|w| {
                w.element
                    .as_deref()
                    .and_then(|e| Permutation::parse(e, g.degree()).ok())
                    .map(|e| e.order())
                    == Some(3)
            });
            push("ng nonnegative", !ng.any_negative && order3, String::new());
        }
        _ => {}
    }
    Ok(())
}

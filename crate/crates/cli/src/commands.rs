//! Subcommand implementations.

use std::io::Write;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::cache::Cache;
use crate::output;
use crate::{CheckArgs, Cli, Command, Failure, Format, Global, Mode};
use hypermaps::arith::{rat_int, rat_to_string, Rat};
use hypermaps::genfun::{verify_schrodinger, zbar};
use hypermaps::permcount::{brute_force_m, closed_m01, nb_recursion, CountTable, EnumConfig, HypermapSpec, Provenance};
use hypermaps::specrec::{expand_at_infinity, is_stable, OmegaDatum, OmegaTable};
use hypermaps::verify::{consistency_report, CheckStatus, Fault, ReportConfig};

type Out<'a> = &'a mut dyn Write;

pub fn run(cli: &Cli, out: Out) -> Result<(), Failure> {
    let g = &cli.global;
    let cache = match &g.cache_dir {
        Some(dir) => {
            let c = Cache::open(dir);
            if c.is_none() {
                eprintln!("warning: cache directory {} is not writable; caching disabled", dir.display());
            }
            c
        }
        None => None,
    };
    match &cli.command {
        Command::Enumerate { g: genus, n, b, all_upto } => enumerate(g, cache.as_ref(), *genus, *n, b, *all_upto, out),
        Command::ClosedForm { b, upto } => closed_form(g, b, *upto, out),
        Command::Partition { route } => partition(g, (*route).into(), out),
        Command::Qcurve => qcurve(g, out),
        Command::Toprec { g: genus, n } => toprec(g, cache.as_ref(), *genus, *n, out),
        Command::Expand { g: genus, n, b } => expand(g, cache.as_ref(), *genus, *n, b, out),
        Command::Check(args) => check(g, args, false, out),
        Command::Report(args) => check(g, args, true, out),
    }
}

fn emit_counts(g: &Global, table: &CountTable, out: Out) -> Result<(), Failure> {
    match g.format {
        Format::Human => output::counts_human(out, table),
        Format::Json => output::counts_json(out, table),
        Format::Csv => output::counts_csv(out, table),
    }
}

/// Non-decreasing positive vectors of length n with sum ≤ total.
fn sorted_vectors(n: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, min: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let rest = (n - cur.len()) as u32;
        for b in min..=left / rest {
            cur.push(b);
            rec(n, b, left - b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, total, &mut Vec::new(), &mut out);
    out
}

fn enumerate(
    g: &Global,
    cache: Option<&Cache>,
    genus: u32,
    n: Option<usize>,
    b: &[u32],
    all_upto: Option<u32>,
    out: Out,
) -> Result<(), Failure> {
    let cfg = EnumConfig { degree_bound: g.degree_bound, extended: false };
    let specs: Vec<HypermapSpec> = match all_upto {
        None => {
            if let Some(n) = n {
                if n != b.len() {
                    return Err(Failure::Usage(format!("--n {n} but {} perimeters given", b.len())));
                }
            }
            if b.contains(&0) {
                return Err(Failure::Usage("perimeters must be positive".into()));
            }
            vec![HypermapSpec::new(g.a, genus, b.to_vec())]
        }
        Some(d) => {
            if d > g.degree_bound {
                return Err(Failure::Usage(format!("--all-upto {d} exceeds the degree bound {}", g.degree_bound)));
            }
            let ns: Vec<usize> = match n {
                Some(n) => vec![n],
                None => (1..=d as usize).collect(),
            };
            ns.into_iter()
                .flat_map(|n| sorted_vectors(n, d))
                .map(|b| HypermapSpec::new(g.a, genus, b))
                .filter(|s| s.vertices().is_some())
                .collect()
        }
    };
    let mut table = CountTable::new();
    for spec in specs {
        let shard = cache.map(|c| c.counts(spec.a, spec.g, spec.n()));
        let v = match shard.as_ref().and_then(|t| t.get(&spec)) {
            Some(v) => v,
            None => {
                let v = brute_force_m(&spec, &cfg)?;
                if let (Some(c), Some(mut t)) = (cache, shard) {
                    t.insert(spec.clone(), v.clone(), Provenance::BruteForce)?;
                    c.store_counts(spec.a, spec.g, spec.n(), &t)?;
                }
                v
            }
        };
        table.insert(spec, v, Provenance::BruteForce)?;
    }
    emit_counts(g, &table, out)
}

fn closed_form(g: &Global, b: &[u32], upto: Option<u32>, out: Out) -> Result<(), Failure> {
    let bs: Vec<u32> = match upto {
        Some(u) => (1..=u).collect(),
        None => b.to_vec(),
    };
    if bs.contains(&0) {
        return Err(Failure::Usage("perimeters must be positive".into()));
    }
    let nb = nb_recursion(g.a, bs.iter().copied().max().unwrap_or(0));
    let mut table = CountTable::new();
    for &b in &bs {
        let closed = closed_m01(g.a, b);
        let from_nb = Rat::new(nb[b as usize].clone(), (b as i64).into());
        if closed != from_nb {
            return Err(Failure::Check(format!(
                "b = {b}: closed form {} but N_b recursion gives {}",
                rat_to_string(&closed),
                rat_to_string(&from_nb)
            )));
        }
        table.insert(HypermapSpec::new(g.a, 0, vec![b]), closed, Provenance::ClosedForm)?;
    }
    emit_counts(g, &table, out)
}

fn partition(g: &Global, route: hypermaps::genfun::ZbarRoute, out: Out) -> Result<(), Failure> {
    let order = g.order.unwrap_or(30) as usize;
    let z = zbar(g.a, order, route)?;
    match g.format {
        Format::Human => {
            for (b, c) in z.coeffs().iter().enumerate() {
                writeln!(out, "x^-{b}: {c}")?;
            }
            Ok(())
        }
        Format::Json => output::json(out, &z.terms()),
        Format::Csv => {
            let rows: Vec<Vec<String>> = z
                .terms()
                .into_iter()
                .map(|t| vec![t.b.to_string(), t.hbar_exponent.to_string(), t.num, t.den])
                .collect();
            output::csv_rows(out, &["b", "hbar_exponent", "num", "den"], &rows)
        }
    }
}

fn qcurve(g: &Global, out: Out) -> Result<(), Failure> {
    let order = g.order.unwrap_or(30) as usize;
    let rep = verify_schrodinger(g.a, order)?;
    match g.format {
        Format::Json => output::json(out, &rep)?,
        Format::Human | Format::Csv => {
            for r in &rep.routes {
                writeln!(
                    out,
                    "a={} route={} residual_zero={} agrees_with_closed={} one_at_minus_one={}",
                    rep.a, r.route, r.residual_zero, r.agrees_with_closed, r.unit_at_minus_one
                )?;
            }
        }
    }
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("quantum curve residual or route mismatch for a = {}", rep.a)))
    }
}

fn omega(table: &OmegaTable, cache: Option<&Cache>, g: u32, n: usize) -> Result<std::sync::Arc<OmegaDatum>, Failure> {
    if !is_stable(g, n) || n == 0 {
        return Err(Failure::Usage(format!("({g},{n}) is not a stable type with n ≥ 1")));
    }
    Ok(match cache {
        Some(c) => c.omega(table, g, n)?,
        None => table.omega(g, n)?,
    })
}

#[derive(Serialize)]
struct Crosscheck {
    order_robust: bool,
    routes_agree: Option<bool>,
    numeric: bool,
}

fn crosscheck(table: &OmegaTable, g: u32, n: usize) -> Result<Crosscheck, Failure> {
    let pts: Vec<Vec<Rat>> = (0..2)
        .map(|k| (0..n).map(|i| Rat::new((2 + 3 * i as i64 + k).into(), (5 + 2 * i as i64).into())).collect())
        .collect();
    Ok(Crosscheck {
        order_robust: table.order_robust(g, n)?,
        routes_agree: if table.a() == 2 { Some(table.routes_agree(g, n)?) } else { None },
        numeric: table.numeric_check(g, n, &pts)?,
    })
}

fn toprec(g: &Global, cache: Option<&Cache>, genus: u32, n: usize, out: Out) -> Result<(), Failure> {
    let table = OmegaTable::new(g.a);
    let d = omega(&table, cache, genus, n)?;
    let xc = match g.mode {
        Mode::Exact => None,
        Mode::NumericCrosscheck => Some(crosscheck(&table, genus, n)?),
    };
    match g.format {
        Format::Json => {
            let v: serde_json::Value = serde_json::from_str(&d.to_json()?).map_err(|e| Failure::Usage(e.to_string()))?;
            output::json(out, &v)?;
        }
        Format::Csv => {
            let mut header: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
            header.extend(["num".into(), "den".into()]);
            let rows: Vec<Vec<String>> = d
                .numerator()
                .terms()
                .map(|(m, c)| {
                    let mut r: Vec<String> = m.exps(n).iter().map(u32::to_string).collect();
                    r.extend([c.numer().to_string(), c.denom().to_string()]);
                    r
                })
                .collect();
            let h: Vec<&str> = header.iter().map(String::as_str).collect();
            output::csv_rows(out, &h, &rows)?;
        }
        Format::Human => {
            let dens: Vec<String> =
                d.denom_exponents().iter().enumerate().map(|(i, m)| format!("p(z{})^{m}", i + 1)).collect();
            let dz = if n == 1 { "dz1".to_string() } else { format!("dz1..dz{n}") };
            writeln!(out, "omega[a={}]_{{{genus},{n}}} = N(z) {dz} / ({})", g.a, dens.join(" "))?;
            writeln!(out, "p(z) = {}; N has {} terms", p_string(g.a), d.numerator().len())?;
            for (m, c) in d.numerator().terms() {
                let mono: Vec<String> = m
                    .exps(n)
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, e)| format!("z{}^{e}", i + 1))
                    .collect();
                writeln!(out, "  {} {}", rat_to_string(c), mono.join(" "))?;
            }
            if let Some(x) = &xc {
                writeln!(
                    out,
                    "order_robust={} routes_agree={} numeric={}",
                    x.order_robust,
                    x.routes_agree.map_or("n/a".into(), |b| b.to_string()),
                    x.numeric
                )?;
            }
        }
    }
    match xc {
        Some(x) if !(x.order_robust && x.numeric && x.routes_agree.unwrap_or(true)) => {
            Err(Failure::Check(format!("cross-checks of ω_{{{genus},{n}}} disagree")))
        }
        _ => Ok(()),
    }
}

fn p_string(a: u32) -> String {
    match a {
        1 => "-1".into(),
        2 => "z^2 - 1".into(),
        _ => format!("{}z^{a} - 1", a - 1),
    }
}

fn expand(g: &Global, cache: Option<&Cache>, genus: u32, n: usize, b: &[u32], out: Out) -> Result<(), Failure> {
    if !b.is_empty() && b.len() != n {
        return Err(Failure::Usage(format!("--n {n} but {} perimeters given", b.len())));
    }
    let window = if b.is_empty() { g.order.unwrap_or(12) } else { b.iter().sum() };
    let table = OmegaTable::new(g.a);
    let d = omega(&table, cache, genus, n)?;
    let exp = expand_at_infinity(&d, window)?;
    let mut counts = CountTable::new();
    for (bv, c) in exp {
        if !b.is_empty() && bv != b {
            continue;
        }
        let prod: i64 = bv.iter().map(|&x| x as i64).product();
        counts.insert(HypermapSpec::new(g.a, genus, bv), c / rat_int(prod), Provenance::Toprec)?;
    }
    emit_counts(g, &counts, out)
}

fn parse_fault(s: &str) -> Result<Fault, Failure> {
    let bad = || Failure::Usage(format!("fault {s:?} is not of the form a:g:b1,b2,..:value"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, g, b, v] = parts.as_slice() else { return Err(bad()) };
    let b: Vec<u32> = b.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
    BigRational::from_str(v).map_err(|_| bad())?;
    Ok(Fault { a: a.parse().map_err(|_| bad())?, g: g.parse().map_err(|_| bad())?, b, value: v.to_string() })
}

fn check(g: &Global, args: &CheckArgs, full: bool, out: Out) -> Result<(), Failure> {
    let cfg = ReportConfig {
        a_max: g.a,
        order: g.order.unwrap_or(15) as usize,
        window: args.window.unwrap_or(g.degree_bound.min(12)),
        degree_bound: g.degree_bound,
        specrec: !args.no_specrec,
        fault: args.inject_fault.as_deref().map(parse_fault).transpose()?,
        ..ReportConfig::default()
    };
    let rep = consistency_report(&cfg)?;
    if full || g.format == Format::Json {
        output::json(out, &rep)?;
    } else if g.format == Format::Csv {
        let rows: Vec<Vec<String>> = rep
            .checks
            .iter()
            .map(|c| vec![c.name.clone(), c.params.to_string(), status_str(c.status).into()])
            .collect();
        output::csv_rows(out, &["name", "params", "status"], &rows)?;
    } else {
        for c in &rep.checks {
            writeln!(out, "{:<7} {} {}", status_str(c.status).to_uppercase(), c.name, c.params)?;
        }
        let failed = rep.failed_checks().count();
        writeln!(out, "{} checks, {} failed", rep.checks.len(), failed)?;
    }
    if rep.passed() {
        Ok(())
    } else {
        let names: Vec<String> = rep.failed_checks().map(|c| format!("{} {}", c.name, c.params)).collect();
        Err(Failure::Check(names.join("; ")))
    }
}

fn status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skipped => "skipped",
    }
}

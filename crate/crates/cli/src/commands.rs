use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde_json::{json, Value};

use cubic_rings::census::{
    self, brute_force_census, classify_reducible, enumerate_v_classes, partial_sum_table, CensusRequest, CensusTable,
    Population, ReducibleKind,
};
use cubic_rings::densities::{
    self, constants, constants_closed_form, identity_suite, solve_masses, steinitz_residues, zeta_q_constants,
    GlobalConstants, LocalFactors, Masses, QConstants, Real, WORK_BITS,
};
use cubic_rings::{forms, Form, SplittingSymbol};

use crate::config::{load_field, RunConfig};
use crate::error::CliError;

/// Significant digits of every float written to a table.
const TABLE_DIGITS: usize = 17;
/// Digits of the decimal renderings in JSON.
const JSON_DIGITS: usize = 30;

fn real(v: &Real) -> String {
    v.to_sci(JSON_DIGITS)
}

fn emit(v: Value) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &v)?;
    writeln!(out)?;
    Ok(())
}

fn with_schema(mut v: Value, cfg: Option<&RunConfig>) -> Result<Value, CliError> {
    let obj = v.as_object_mut().expect("object");
    obj.insert("schema".into(), json!(1));
    if let Some(cfg) = cfg {
        obj.insert("config".into(), serde_json::to_value(cfg)?);
    }
    Ok(v)
}

fn out_path(cfg: &RunConfig, name: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(&cfg.out_dir)?;
    Ok(cfg.out_dir.join(name))
}

fn csv_writer(path: &Path, cfg: &RunConfig) -> Result<csv::Writer<fs::File>, CliError> {
    let mut f = fs::File::create(path)?;
    writeln!(f, "# config {}", cfg.header()?)?;
    Ok(csv::Writer::from_writer(f))
}

fn request(cfg: &RunConfig, population: Population, conditioned: bool) -> CensusRequest {
    let mut req = CensusRequest::new(cfg.sign(), cfg.max_disc, population);
    req.weighted = cfg.weighted;
    if conditioned {
        req.conditions = cfg.conditions();
    }
    req
}

fn require_rationals(cfg: &RunConfig, what: &str) -> Result<(), CliError> {
    if cfg.is_rationals() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{what} runs over Q only")))
    }
}

fn write_tables(cfg: &RunConfig, table: &CensusTable) -> Result<(PathBuf, PathBuf), CliError> {
    let census_path = out_path(cfg, "census.csv")?;
    let mut w = csv_writer(&census_path, cfg)?;
    w.write_record(["disc", "count", "weighted_num", "weighted_den", "form"])?;
    for (d, e) in table.rows() {
        let wt = e.weighted();
        w.write_record([
            d.to_string(),
            e.count.to_string(),
            wt.numer().to_string(),
            wt.denom().to_string(),
            e.representative.to_string(),
        ])?;
    }
    w.flush()?;
    let cum_path = out_path(cfg, "cumulative.csv")?;
    let mut w = csv_writer(&cum_path, cfg)?;
    w.write_record(["X", "h", "h_weighted_num", "h_weighted_den"])?;
    for c in partial_sum_table(table, cfg.checkpoint_policy()) {
        let wt = c.weighted();
        w.write_record([c.x.to_string(), c.h.to_string(), wt.numer().to_string(), wt.denom().to_string()])?;
    }
    w.flush()?;
    Ok((census_path, cum_path))
}

pub fn census(cfg: &RunConfig) -> Result<(), CliError> {
    require_rationals(cfg, "census")?;
    cfg.install_threads()?;
    let table = census::run_census(&request(cfg, cfg.population(), true))?;
    let (a, b) = write_tables(cfg, &table)?;
    let total = table.cumulative(cfg.max_disc);
    let wt = total.weighted();
    emit(with_schema(
        json!({
            "command": "census",
            "h": total.h,
            "h_weighted": format!("{}/{}", wt.numer(), wt.denom()),
            "cyclic": total.cyclic,
            "discriminants": table.entries.len(),
            "files": [a.display().to_string(), b.display().to_string()],
        }),
        Some(cfg),
    )?)
}

fn local_json(l: &LocalFactors) -> Value {
    json!({
        "q": l.q,
        "symbol": l.symbol.to_string(),
        "alpha": l.alpha.to_string(),
        "beta": l.beta.to_string(),
        "beta_value": real(&l.beta_value),
        "gamma": l.gamma.to_string(),
    })
}

fn constants_for(cfg: &RunConfig, k: &QConstants) -> Result<(GlobalConstants, u32, densities::BaseFieldData), CliError> {
    let base = load_field(&cfg.field, k)?;
    let i_inf = cfg.real3_places(&base)?;
    Ok((constants(&base, i_inf, &cfg.conditions(), k)?, i_inf, base))
}

pub fn predict(cfg: &RunConfig) -> Result<(), CliError> {
    let k = zeta_q_constants(WORK_BITS)?;
    let (c, i_inf, base) = constants_for(cfg, &k)?;
    let closed = constants_closed_form(&base, i_inf, &cfg.conditions(), &k)?;
    let exact = |p: &Option<densities::PiMultiple>| p.as_ref().map(|p| json!({"coeff": p.coeff.to_string(), "pi_power": p.pi_power}));
    let mut out = json!({
        "command": "predict",
        "real3_places": i_inf,
        "composition": {
            "A": real(&c.a),
            "B": real(&c.b),
            "C": real(&c.c),
            "A_exact": exact(&c.a_exact),
            "C_exact": exact(&c.c_exact),
            "two_term_coefficient": real(&(&(&Real::from_i64(6, k.bits) / &Real::from_i64(5, k.bits)) * &c.b)),
        },
        "closed_form": {
            "A": real(&closed.a),
            "B": real(&closed.b),
            "A_ratio": real(&closed.a_ratio),
            "B_ratio": real(&closed.b_ratio),
        },
        "local": c.local.iter().map(local_json).collect::<Vec<_>>(),
    });
    if !base.is_rationals() {
        let cube = steinitz_residues(&base, &c, true);
        let other = steinitz_residues(&base, &c, false);
        out["steinitz"] = json!({
            "factor_one": cube.factor_one.to_string(),
            "factor_five_sixths_cube": cube.factor_five_sixths.to_string(),
            "factor_five_sixths_noncube": other.factor_five_sixths.to_string(),
            "residue_one": real(&cube.res_one),
            "residue_five_sixths_cube": real(&cube.res_five_sixths),
        });
    }
    emit(with_schema(out, Some(cfg))?)
}

/// `x^(5/6)` at the working precision.
fn pow_five_sixths(x: u64, bits: u32) -> Real {
    Real::from_i64(x as i64, bits).powi(5).cbrt().sqrt()
}

struct CompareRow {
    x: u64,
    h: u64,
    one: Real,
    two: Real,
    res_one: Real,
    res_two: Real,
    scaled: Real,
    fraction: Option<(u64, f64)>,
}

pub fn compare(cfg: &RunConfig) -> Result<(), CliError> {
    require_rationals(cfg, "compare")?;
    cfg.install_threads()?;
    let k = zeta_q_constants(WORK_BITS)?;
    let (c, _, _) = constants_for(cfg, &k)?;
    let bits = k.bits;
    let conditioned = !cfg.conditions.is_empty();
    let mut reqs = vec![request(cfg, Population::Irreducible, true)];
    if conditioned {
        reqs.push(request(cfg, Population::Irreducible, false));
    }
    let tables = census::run_census_batch(&reqs)?;
    let six_fifths_b = &(&Real::from_i64(6, bits) / &Real::from_i64(5, bits)) * &c.b;
    let alpha_t: f64 = c.local.iter().map(|l| ratio_f64(&l.alpha)).product();
    let uncond = conditioned.then(|| partial_sum_table(&tables[1], cfg.checkpoint_policy()));
    let rows: Vec<CompareRow> = partial_sum_table(&tables[0], cfg.checkpoint_policy())
        .into_iter()
        .enumerate()
        .map(|(i, cp)| {
            let xr = Real::from_i64(cp.x as i64, bits);
            let x56 = pow_five_sixths(cp.x, bits);
            let one = &c.a * &xr;
            let two = &one + &(&six_fifths_b * &x56);
            let h = Real::from_i64(cp.h as i64, bits);
            let res_one = &h - &one;
            let res_two = &h - &two;
            let scaled = &res_two / &x56;
            let fraction = uncond.as_ref().map(|u| {
                let all = u[i].h;
                (all, if all == 0 { 0.0 } else { cp.h as f64 / all as f64 })
            });
            CompareRow { x: cp.x, h: cp.h, one, two, res_one, res_two, scaled, fraction }
        })
        .collect();
    let last = rows.last().ok_or_else(|| CliError::Config("no checkpoints".into()))?;
    let bound = 3.0 * (last.x as f64).powf(0.72);
    let mut pass = last.res_two.abs() < last.res_one.abs() && last.res_two.abs().to_f64() <= bound;
    if let Some((_, frac)) = last.fraction {
        pass &= (frac - alpha_t).abs() <= 0.03;
    }

    let sci = |r: &Real| r.to_sci(TABLE_DIGITS);
    let mut header = vec!["X", "h", "one_term", "two_term", "residual_one", "residual_two", "residual_two_scaled"];
    if conditioned {
        header.extend(["h_all", "fraction", "alpha_T"]);
    }
    header.push("pass");
    let csv_path = out_path(cfg, "compare.csv")?;
    let dat_path = out_path(cfg, "compare.dat")?;
    let gp_path = out_path(cfg, "compare.gp")?;
    let mut w = csv_writer(&csv_path, cfg)?;
    w.write_record(&header)?;
    let mut dat = format!("# config {}\n# {}\n", cfg.header()?, header[..header.len() - 1].join(" "));
    let mut json_rows = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut rec = vec![r.x.to_string(), r.h.to_string(), sci(&r.one), sci(&r.two), sci(&r.res_one), sci(&r.res_two), sci(&r.scaled)];
        if let Some((all, frac)) = r.fraction {
            rec.extend([all.to_string(), format!("{frac:.16e}"), format!("{alpha_t:.16e}")]);
        }
        let _ = writeln!(dat, "{}", rec.join(" "));
        let final_row = i + 1 == rows.len();
        json_rows.push(json!({
            "X": r.x, "h": r.h,
            "one_term": sci(&r.one), "two_term": sci(&r.two),
            "residual_one": sci(&r.res_one), "residual_two": sci(&r.res_two),
            "residual_two_scaled": sci(&r.scaled),
            "fraction": r.fraction.map(|(_, f)| format!("{f:.16e}")),
        }));
        rec.push(if final_row { pass.to_string() } else { String::new() });
        w.write_record(&rec)?;
    }
    w.flush()?;
    fs::write(&dat_path, dat)?;
    fs::write(&gp_path, gnuplot_script(&dat_path))?;
    emit(with_schema(
        json!({
            "command": "compare",
            "A": real(&c.a),
            "B": real(&c.b),
            "alpha_T": format!("{alpha_t:.16e}"),
            "rows": json_rows,
            "residual_bound": format!("{bound:.16e}"),
            "pass": pass,
            "files": [csv_path.display().to_string(), dat_path.display().to_string(), gp_path.display().to_string()],
        }),
        Some(cfg),
    )?)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Acceptance("two-term comparison failed at the last checkpoint".into()))
    }
}

fn ratio_f64(r: &BigRational) -> f64 {
    Real::from_ratio(r, 64).to_f64()
}

fn gnuplot_script(dat: &Path) -> String {
    let name = dat.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    format!(
        "set terminal pngcairo size 900,600\n\
         set output 'compare.png'\n\
         set logscale x\n\
         set xlabel 'X'\n\
         set ylabel 'residual / X^(5/6)'\n\
         set key top right\n\
         plot '{name}' using 1:($5/$1**(5.0/6)) with linespoints title 'one-term', \\\n\
         \x20    '{name}' using 1:7 with linespoints title 'two-term'\n"
    )
}

pub fn identities(bits: u32) -> Result<(), CliError> {
    let checks = identity_suite(bits);
    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for c in &checks {
        writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        failed += usize::from(!c.passed);
    }
    writeln!(out, "{} of {} identities hold", checks.len() - failed, checks.len())?;
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Acceptance(format!("{failed} identities failed")))
    }
}

pub fn reducible_census(cfg: &RunConfig) -> Result<(), CliError> {
    require_rationals(cfg, "reducible-census")?;
    cfg.install_threads()?;
    let k = zeta_q_constants(WORK_BITS)?;
    let (c, _, _) = constants_for(cfg, &k)?;
    let w = census::run_census(&request(cfg, Population::WOrbits, true))?;
    let total = w.cumulative(cfg.max_disc);
    let wt = total.weighted();
    let per_x = &Real::from_i64(*wt.numer() as i64, k.bits) / &Real::from_i64((*wt.denom() * cfg.max_disc) as i64, k.bits);
    let rel = &(&per_x - &c.c) / &c.c;
    let (mut v1, mut v2) = (0u64, 0u64);
    for f in enumerate_v_classes(cfg.sign(), cfg.max_disc)? {
        if forms::is_irreducible(&f)? {
            continue;
        }
        match classify_reducible(&f)? {
            ReducibleKind::V1 => v1 += 1,
            ReducibleKind::V2 => v2 += 1,
        }
    }
    emit(with_schema(
        json!({
            "command": "reducible-census",
            "w_orbits": total.h,
            "w_weighted": format!("{}/{}", wt.numer(), wt.denom()),
            "w_weighted_over_x": real(&per_x),
            "C": real(&c.c),
            "relative_error": real(&rel),
            "v1_classes": v1,
            "v2_classes": v2,
        }),
        Some(cfg),
    )?)
}

pub fn oracle(cfg: &RunConfig, box_bound: i64) -> Result<(), CliError> {
    require_rationals(cfg, "oracle")?;
    cfg.install_threads()?;
    let sign = cfg.sign();
    let fast: BTreeSet<Form> = enumerate_v_classes(sign, cfg.max_disc)?.into_iter().collect();
    let slow = brute_force_census(sign, cfg.max_disc, box_bound)?;
    let show = |s: Vec<&Form>| s.into_iter().take(10).map(|f| f.to_string()).collect::<Vec<_>>();
    let missing = show(slow.difference(&fast).collect());
    let extra = show(fast.difference(&slow).collect());
    let agree = fast == slow;
    emit(with_schema(
        json!({
            "command": "oracle",
            "box": box_bound,
            "enumerated": fast.len(),
            "brute_force": slow.len(),
            "agree": agree,
            "only_brute_force": missing,
            "only_enumerated": extra,
        }),
        Some(cfg),
    )?)?;
    if agree {
        Ok(())
    } else {
        Err(CliError::Acceptance(format!("oracle mismatch at X = {}", cfg.max_disc)))
    }
}

pub fn local_densities(primes: &[u64]) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(CliError::Core(cubic_rings::Error::NotPrime(p)));
        }
        let factors: Vec<Value> =
            SplittingSymbol::ALL.iter().map(|&s| local_json(&LocalFactors::new(p, s, WORK_BITS))).collect();
        rows.push(json!({ "p": p, "symbols": factors }));
    }
    emit(with_schema(json!({ "command": "local-densities", "primes": rows }), None)?)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn serre_check() -> Result<(), CliError> {
    let sol = solve_masses()?;
    let serre = Masses::serre();
    let ok = sol.masses == serre && sol.quadratic_from_gamma == serre.quadratic;
    emit(with_schema(
        json!({
            "command": "serre-check",
            "quadratic": sol.masses.quadratic.to_string(),
            "cubic": sol.masses.cubic.to_string(),
            "quadratic_from_gamma": sol.quadratic_from_gamma.to_string(),
            "expected": { "quadratic": serre.quadratic.to_string(), "cubic": serre.cubic.to_string() },
            "pass": ok,
        }),
        None,
    )?)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Acceptance("solved masses differ from the Serre masses".into()))
    }
}

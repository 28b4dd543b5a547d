use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use taut_core::polyring::{Poly, Q};
use taut_core::presentation::Presentation;
use taut_core::quotient::{duality_report, integrate_ratio, normalize_integers, DualityReport};
use taut_core::symmetry::{invariant_dim, GroupAction};
use taut_core::verify::{run_check, CheckResult, Suite, SuiteReport};

use crate::{cache, CliError, Common, Format};

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("--jobs: {e}")))
}

fn build(c: &Common) -> Result<Presentation, CliError> {
    let (n, d) = c.nd()?;
    let pres = Presentation::build(n, d, c.flags())?;
    pres.validate()?;
    Ok(pres)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn present(c: &Common) -> Result<String, CliError> {
    let pres = build(c)?;
    Ok(match c.format.unwrap_or(Format::Json) {
        Format::Json => pres.to_json_string() + "\n",
        Format::Csv => {
            let mut out = String::from("label,poly\n");
            for (label, p) in &pres.relations {
                out += &format!("{},{}\n", csv_field(label), csv_field(&pres.ring().fmt_poly(p)));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct HilbertRow {
    degree: u32,
    ambient: usize,
    rank: usize,
    quotient: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant: Option<usize>,
}

#[derive(Serialize)]
struct HilbertTable {
    n: u32,
    d: u8,
    dim: u32,
    max_degree: u32,
    rows: Vec<HilbertRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    duality: Option<DualityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

pub fn hilbert(c: &Common) -> Result<String, CliError> {
    let pres = build(c)?;
    let max = c.max_degree.unwrap_or(pres.dim + 2);
    let quot = cache::quotient(c.cache_dir.as_deref(), &pres, max)?;
    let invariant: Option<Vec<usize>> = if c.invariant {
        let action = GroupAction::new(pres.context());
        let dims = pool(c.jobs)?.install(|| {
            (0..=max).into_par_iter().map(|k| invariant_dim(&action, &quot, k)).collect::<Result<Vec<_>, _>>()
        })?;
        Some(dims)
    } else {
        None
    };
    let rows: Vec<HilbertRow> = quot
        .slices()
        .iter()
        .map(|s| HilbertRow {
            degree: s.degree(),
            ambient: s.ambient(),
            rank: s.rank(),
            quotient: s.quotient_dim(),
            invariant: invariant.as_ref().map(|v| v[s.degree() as usize]),
        })
        .collect();
    let duality = invariant.as_ref().filter(|_| max >= pres.dim + 2).map(|v| duality_report(pres.dim, v));
    let warning = (max < pres.dim).then(|| format!("max-degree {max} is below dim {}", pres.dim));
    let table = HilbertTable { n: pres.n, d: pres.d, dim: pres.dim, max_degree: max, rows, duality, warning };
    Ok(match c.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&table).expect("serializable") + "\n",
        Format::Csv => {
            let mut out = String::from(if c.invariant {
                "degree,ambient,rank,quotient,invariant\n"
            } else {
                "degree,ambient,rank,quotient\n"
            });
            for r in &table.rows {
                out += &format!("{},{},{},{}", r.degree, r.ambient, r.rank, r.quotient);
                if let Some(i) = r.invariant {
                    out += &format!(",{i}");
                }
                out.push('\n');
            }
            if let Some(d) = &table.duality {
                out += &format!("# duality,{}\n", d.holds());
            }
            if let Some(w) = &table.warning {
                out += &format!("# warning,{}\n", csv_field(w));
            }
            out
        }
    })
}

pub fn verify(c: &Common) -> Result<String, CliError> {
    let suite: Suite = c.suite.parse()?;
    let flags = c.flags();
    let checks: Vec<CheckResult> =
        pool(c.jobs)?.install(|| suite.criteria().into_par_iter().map(|id| run_check(id, flags)).collect());
    let passing_rel5 = checks.iter().all(|r| r.passed).then_some(flags.rel5);
    let report = SuiteReport { suite, flags, passing_rel5, checks };
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Csv => {
            let mut out = String::from("id,name,passed,millis,detail\n");
            for r in &report.checks {
                out += &format!("{},{},{},{},{}\n", r.id, csv_field(r.name), r.passed, r.millis, csv_field(&r.detail));
            }
            out
        }
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(CliError::VerifyFailed(text))
    }
}

pub fn integrate(c: &Common, monomials: &str) -> Result<String, CliError> {
    let pres = build(c)?;
    let words: Vec<&str> = monomials.split_whitespace().collect();
    if words.is_empty() {
        return Err(CliError::Usage("no monomials given".into()));
    }
    let classes: Vec<Poly> = words.iter().map(|w| pres.ring().parse_poly(w)).collect::<Result<_, _>>()?;
    let quot = cache::quotient(c.cache_dir.as_deref(), &pres, pres.dim)?;
    let ratios = integrate_ratio(&pres, &quot, &classes)?;
    let ints = normalize_integers(&ratios);
    let show = |v: &[Q]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(match c.format {
        None => show(&ints).join(" ") + "\n",
        Some(Format::Json) => {
            let v = json!({"monomials": words, "ratios": show(&ratios), "normalized": show(&ints)});
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Some(Format::Csv) => {
            let mut out = String::from("monomial,ratio,normalized\n");
            for ((w, r), i) in words.iter().zip(&ratios).zip(&ints) {
                out += &format!("{},{r},{i}\n", csv_field(w));
            }
            out
        }
    })
}

//! Subcommand implementations. Each returns rendered text in the requested
//! format; rows are ordered by `(p, L)`.

use num_rational::BigRational;
use pbq_core::algebra::{parse_expression, QParam};
use pbq_core::classify::{canonicalize, vacuum_irreps, AlgebraParams, ClassifyError, IrrepDescriptor};
use pbq_core::exactnum::{zero_tolerance_exponent, Scalar};
use pbq_core::fockrep::{evaluate_element, module_matrices, verify_relations, Matrix, ModuleSpec, RepMatrices, Weight};
use pbq_core::sweep::{verify_algebra, verify_all, Execution, VerificationReport};
use pbq_core::unitary::{classify_unitarizable, is_unitarizable, orthonormal_matrices, reference_table, VerdictStatus};
use serde_json::json;

use crate::grid::{parse_grid, parse_rational};
use crate::output::Table;
use crate::{usage, Cli, CliError, Command, Format, Outcome};

/// Digits shown per entry in `pretty` matrix output.
const PRETTY_DIGITS: usize = 12;

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    let digits = cli.precision;
    match &cli.command {
        Command::Classify { m, k, p_grid } => classify(fmt, digits, &params(*m, *k)?, p_grid.as_deref()),
        Command::Unitary { m, k, p_grid } => unitary(fmt, &params(*m, *k)?, p_grid.as_deref()),
        Command::Matrices {
            m,
            k,
            p,
            top,
            orthonormal,
        } => matrices(fmt, digits, &params(*m, *k)?, p, *top, *orthonormal),
        Command::Verify {
            m,
            k,
            max_k,
            sequential,
        } => {
            let exec = if *sequential { Execution::Sequential } else { Execution::default() };
            verify(fmt, *m, *k, *max_k, exec)
        }
        Command::Eval { m, k, p, top, expr } => eval(fmt, digits, &params(*m, *k)?, p, *top, expr),
        Command::Canon { m, k } => canon(fmt, *m, *k),
    }
}

fn params(m: i64, k: i64) -> Result<AlgebraParams, CliError> {
    AlgebraParams::new(m, k).map_err(|e| usage(format!("{e}; see `pbq canon` to reduce (m, k)")))
}

fn grid(spec: Option<&str>) -> Result<Option<Vec<BigRational>>, CliError> {
    spec.map(parse_grid).transpose().map_err(usage)
}

fn status(s: VerdictStatus) -> String {
    serde_json::to_value(s).expect("serializable").as_str().expect("string variant").to_string()
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn render(fmt: Format, table: &Table, json: impl FnOnce() -> serde_json::Value) -> String {
    match fmt {
        Format::Json => json_text(&json()),
        Format::Csv => table.csv(),
        Format::Pretty => table.pretty(),
    }
}

fn classify(fmt: Format, digits: u32, params: &AlgebraParams, spec: Option<&str>) -> Result<Outcome, CliError> {
    let grid = grid(spec)?;
    let mut irreps: Vec<IrrepDescriptor> = vacuum_irreps(params, grid.as_deref())?;
    for d in &mut irreps {
        d.unitarizable = Some(is_unitarizable(params, &d.p, d.top)?.status);
    }
    let mut table = Table::new(vec![
        "m", "k", "case", "p", "L", "dim", "casimir_re", "casimir_im", "unitarizable",
    ]);
    for d in &irreps {
        let c = d.casimir.to_approx(digits);
        table.push(vec![
            params.m.to_string(),
            params.k.to_string(),
            params.case.to_string(),
            d.p.to_string(),
            d.top.to_string(),
            d.dimension.to_string(),
            c.re_string(digits),
            c.im_string(digits),
            status(d.unitarizable.expect("filled above")),
        ]);
    }
    let text = render(fmt, &table, || serde_json::to_value(&irreps).expect("serializable"));
    Ok(Outcome { text, passed: true })
}

fn unitary(fmt: Format, params: &AlgebraParams, spec: Option<&str>) -> Result<Outcome, CliError> {
    let grid = grid(spec)?;
    let census = classify_unitarizable(params, grid.as_deref())?;
    let reference = reference_table(params, grid.as_deref());
    let mut keys: Vec<(BigRational, u64)> = census.pairs();
    keys.extend(reference.iter().map(|e| (e.p.clone(), e.top)));
    keys.sort();
    keys.dedup();
    let mut table = Table::new(vec!["m", "k", "p", "L", "dim", "status", "listed_rows"]);
    for (p, top) in &keys {
        let verdict = match census.modules.iter().find(|x| (&x.p, x.top) == (p, *top)) {
            Some(x) => x.verdict.status,
            None => is_unitarizable(params, &Weight::Rational(p.clone()), *top)?.status,
        };
        let rows = reference
            .iter()
            .find(|e| (&e.p, e.top) == (p, *top))
            .map(|e| e.rows.iter().map(|r| format!("({r})")).collect::<Vec<_>>().join(" "))
            .unwrap_or_else(|| "-".into());
        table.push(vec![
            params.m.to_string(),
            params.k.to_string(),
            p.to_string(),
            top.to_string(),
            (top + 1).to_string(),
            status(verdict),
            rows,
        ]);
    }
    let text = render(fmt, &table, || {
        json!({
            "params": params,
            "census": census,
            "reference": reference,
        })
    });
    Ok(Outcome { text, passed: true })
}

fn weight(p: &str, digits: u32) -> Result<Weight, CliError> {
    Weight::parse(p, digits).map_err(|e| usage(format!("bad --p {p:?}: {e}")))
}

/// Verma-basis matrices, refusing truncations that are not quotient modules.
fn verma(params: &AlgebraParams, p: Weight, top: u64) -> Result<RepMatrices, CliError> {
    let spec = ModuleSpec::new(params.deformation(), p, 0, Some(top)).map_err(usage)?;
    let rep = module_matrices(&spec).map_err(usage)?;
    if !verify_relations(&rep)?.all_hold() {
        return Err(usage(format!("{spec} is not a module: |p;L+1> is not singular")));
    }
    Ok(rep)
}

fn matrix_rows(table: &mut Table, name: &str, m: &Matrix, digits: u32) {
    for i in 0..m.rows_len() {
        for j in 0..m.cols_len() {
            let v = m.get(i, j).to_approx(digits);
            table.push(vec![name.into(), i.to_string(), j.to_string(), v.re_string(digits), v.im_string(digits)]);
        }
    }
}

fn matrices_text(fmt: Format, rep: &RepMatrices, digits: u32, extra: &[(&str, String)]) -> String {
    match fmt {
        Format::Json => {
            let mut v = rep.to_json(Some(digits));
            for (key, val) in extra {
                v[*key] = json!(val);
            }
            json_text(&v)
        }
        Format::Csv => {
            let mut t = Table::new(vec!["matrix", "row", "col", "re", "im"]);
            for (name, m) in [("A_plus", &rep.a_plus), ("A_minus", &rep.a_minus), ("K", &rep.k), ("K_inv", &rep.k_inv)] {
                matrix_rows(&mut t, name, m, digits);
            }
            t.csv()
        }
        Format::Pretty => {
            let mut out = format!("{} ({:?} basis)\n", rep.spec, rep.basis_kind);
            for (key, val) in extra {
                out += &format!("{key}: {val}\n");
            }
            for (name, m) in [("A_plus", &rep.a_plus), ("A_minus", &rep.a_minus), ("K", &rep.k), ("K_inv", &rep.k_inv)] {
                out += &format!("{name}:\n{m:.PRETTY_DIGITS$}");
            }
            out
        }
    }
}

fn matrices(fmt: Format, digits: u32, params: &AlgebraParams, p: &str, top: u64, ortho: bool) -> Result<Outcome, CliError> {
    let rep = if ortho {
        let p = parse_rational(p).map_err(|e| usage(format!("--orthonormal needs an exact weight: {e}")))?;
        orthonormal_matrices(params, &p, top, digits).map_err(usage)?
    } else {
        verma(params, weight(p, digits)?, top)?
    };
    Ok(Outcome {
        text: matrices_text(fmt, &rep, digits, &[]),
        passed: true,
    })
}

fn verify(fmt: Format, m: Option<i64>, k: Option<i64>, max_k: Option<i64>, exec: Execution) -> Result<Outcome, CliError> {
    let results = match (m, k) {
        (Some(m), Some(k)) => vec![verify_algebra(&params(m, k)?)],
        _ => {
            let max_k = max_k.unwrap_or(9);
            if max_k < 2 {
                return Err(usage("--max-k must be at least 2"));
            }
            verify_all(max_k, exec)
        }
    };
    let reports: Vec<VerificationReport> = results.into_iter().collect::<Result<_, _>>()?;
    let passed = reports.iter().all(VerificationReport::passed);
    let mut table = Table::new(vec!["m", "k", "check", "cases", "failures", "status", "first_failure"]);
    for r in &reports {
        for c in &r.checks {
            table.push(vec![
                r.params.m.to_string(),
                r.params.k.to_string(),
                c.name.clone(),
                c.cases.to_string(),
                c.failures.len().to_string(),
                if c.passed() { "pass" } else { "fail" }.into(),
                c.failures.first().cloned().unwrap_or_default(),
            ]);
        }
    }
    let mut text = render(fmt, &table, || json!({ "passed": passed, "reports": reports }));
    if fmt == Format::Pretty {
        let failed = reports.iter().filter(|r| !r.passed()).count();
        text += &format!("\n{} algebras, {failed} with failures\n", reports.len());
    }
    Ok(Outcome { text, passed })
}

fn eval(fmt: Format, digits: u32, params: &AlgebraParams, p: &str, top: u64, expr: &str) -> Result<Outcome, CliError> {
    let q = QParam::root_of_unity(params.m, params.k)?;
    let element = parse_expression(expr, Some(&q)).map_err(|e| usage(format!("bad --expr: {e}")))?;
    let rep = verma(params, weight(p, digits)?, top)?;
    let value = evaluate_element(&element, &rep)?;
    let exact = matches!(value.zero_scalar(), Scalar::Exact(_));
    let zero = if exact { value.is_zero() } else { value.is_zero_within(zero_tolerance_exponent(digits)) };
    let scalar = value.scalar_value();
    let flags = [
        ("normal_form", element.to_string()),
        ("zero", zero.to_string()),
        ("diagonal", value.is_diagonal().to_string()),
        ("scalar", scalar.is_some().to_string()),
    ];
    let text = match fmt {
        Format::Json => json_text(&json!({
            "module": rep.spec,
            "normal_form": element.to_string(),
            "element": element,
            "matrix": value.rows(),
            "zero": zero,
            "diagonal": value.is_diagonal(),
            "scalar": scalar,
        })),
        Format::Csv => {
            let mut t = Table::new(vec!["matrix", "row", "col", "re", "im"]);
            matrix_rows(&mut t, "value", &value, digits);
            t.csv()
        }
        Format::Pretty => {
            let mut out = format!("{}\n", rep.spec);
            for (key, val) in &flags {
                out += &format!("{key}: {val}\n");
            }
            if let Some(s) = &scalar {
                out += &format!("scalar_value: {s}\n");
            }
            out + &format!("matrix:\n{value:.PRETTY_DIGITS$}")
        }
    };
    Ok(Outcome { text, passed: true })
}

fn canon(fmt: Format, m: i64, k: i64) -> Result<Outcome, CliError> {
    let (p, map) = canonicalize(m, k).map_err(|e: ClassifyError| usage(e))?;
    let steps: Vec<String> = map.steps.iter().map(|s| format!("{s:?}").to_lowercase()).collect();
    let mut table = Table::new(vec!["m_raw", "k_raw", "m", "k", "case", "steps", "map"]);
    table.push(vec![
        m.to_string(),
        k.to_string(),
        p.m.to_string(),
        p.k.to_string(),
        p.case.to_string(),
        if steps.is_empty() { "-".into() } else { steps.join(" ") },
        map.to_string(),
    ]);
    let text = render(fmt, &table, || {
        json!({ "input": { "m": m, "k": k }, "params": p, "map": map, "rendered": map.to_string() })
    });
    Ok(Outcome { text, passed: true })
}

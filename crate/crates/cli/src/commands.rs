use serde_json::{json, Value};

use w3_core::engine::parse::parse_vector;
use w3_core::engine::{Engine, StateVector};
use w3_core::ideal::{
    buchberger, builtin_spectrum, c2_nilpotency_targets, c2_relations, verify_spectrum, zhu_relations,
    GroebnerBasis, QuotientDimension,
};
use w3_core::qseries::{
    all_module_characters, default_truncation, exponent_rat, module_character, module_descriptor,
    numeric_modular_check, parse_complex, q_units, ModuleDescriptor, QSeries,
};
use w3_core::reference::builtin_vector;
use w3_core::singular::{find_singular, SingularReport};
use w3_core::verify::run_checks;
use w3_core::zhu::{c2_image, zhu_image, BiPoly};

use crate::args::{CharactersArgs, IdealArgs, ModularArgs, SingularArgs, VerifyArgs, ZhuArgs};
use crate::output::Sink;
use crate::CliError;

type Outcome = Result<(), CliError>;

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types always serialize")
}

fn dimension_json(d: QuotientDimension) -> Value {
    match d {
        QuotientDimension::Finite(n) => json!(n),
        QuotientDimension::Infinite => json!("infinite"),
    }
}

pub fn singular(sink: &Sink, args: &SingularArgs) -> Outcome {
    let last = args.scan_to.unwrap_or(args.weight);
    if last < args.weight {
        return Err(CliError::Usage(format!("--scan-to {last} is below --weight {}", args.weight)));
    }
    let reports: Vec<SingularReport> = (args.weight..=last).map(find_singular).collect();
    for r in &reports {
        let per_mode: Vec<String> =
            r.conditions.iter().map(|c| format!("{}: {}", c.mode, c.kernel_dimension)).collect();
        sink.line(format!(
            "weight {}: {} basis monomials, singular space of dimension {} (kernels {})",
            r.weight,
            r.basis_size,
            r.kernel_dimension,
            per_mode.join(", ")
        ));
        if args.scan_to.is_none() {
            for (i, v) in r.vectors.iter().enumerate() {
                sink.line(format!("  v{} = {v}", i + 1));
            }
            if let Some(j0) = &r.j0_action {
                sink.line(format!("  J(0)v1 = {j0}"));
            }
        }
    }
    let doc = match reports.as_slice() {
        [single] => to_json(single),
        many => json!(many.iter().map(to_json).collect::<Vec<_>>()),
    };
    sink.document(&doc)
}

fn resolve_vector(spec: &str) -> Result<StateVector, CliError> {
    match spec.strip_prefix("builtin:") {
        Some(name) => Ok(builtin_vector(name)?),
        None => Ok(parse_vector(spec)?.evaluate(Engine::global())),
    }
}

pub fn zhu(sink: &Sink, args: &ZhuArgs) -> Outcome {
    let v = resolve_vector(&args.vector)?;
    let (quotient, image) = if args.c2 { ("c2", c2_image(&v)) } else { ("zhu", zhu_image(&v)) };
    sink.line(format!("[{}] = {image}", args.vector));
    sink.document(&json!({
        "vector": args.vector,
        "quotient": quotient,
        "image": to_json(&image),
    }))
}

fn basis_section(sink: &Sink, title: &str, gens: &[BiPoly], gb: &GroebnerBasis) -> Value {
    sink.line(title);
    for (i, g) in gens.iter().enumerate() {
        sink.line(format!("  F{} = {g}", i + 1));
    }
    sink.line("Groebner basis (grevlex, y > x):");
    for (i, g) in gb.polys().iter().enumerate() {
        sink.line(format!("  G{} = {g}", i + 1));
    }
    let leading: Vec<String> = gb.leading_terms().iter().map(ToString::to_string).collect();
    sink.line(format!("leading terms: {}", leading.join(", ")));
    let dim = gb.quotient_dimension();
    sink.line(format!("dim Q[x,y]/I = {}", dim));
    json!({
        "generators": gens.iter().map(to_json).collect::<Vec<_>>(),
        "groebner_basis": gb.polys().iter().map(to_json).collect::<Vec<_>>(),
        "leading_terms": leading,
        "quotient_dimension": dimension_json(dim),
    })
}

pub fn ideal(sink: &Sink, args: &IdealArgs) -> Outcome {
    let everything = !(args.groebner || args.points || args.c2_consequences);
    let mut doc = serde_json::Map::new();
    let mut failed = Vec::new();

    if everything || args.groebner {
        let gens = zhu_relations();
        let section = basis_section(sink, "Zhu relations:", &gens, &buchberger(&gens));
        doc.insert("groebner".into(), section);
    }

    if everything || args.points {
        let table = builtin_spectrum();
        let report = verify_spectrum(&zhu_relations(), &table.points);
        let pairing = table.pairing();
        sink.line(format!("{:<16} {:>5}  {:<10} {:<20} maximal ideal", "module", "table", "L(0)", "J(0)"));
        let mut rows = Vec::new();
        for (pt, tab) in table.points.iter().zip(&table.tables) {
            let ideal = pairing
                .as_ref()
                .ok()
                .and_then(|p| p.iter().find(|(n, _)| *n == pt.module_name))
                .map(|(_, m)| m.to_string())
                .unwrap_or_else(|| "-".into());
            sink.line(format!(
                "{:<16} {:>5}  {:<10} {:<20} {ideal}",
                pt.module_name,
                tab,
                pt.x.to_string(),
                pt.y.to_string()
            ));
            rows.push(json!({
                "module": pt.module_name,
                "table": tab,
                "l0": pt.x.to_string(),
                "j0": pt.y.to_string(),
                "ideal": ideal,
            }));
        }
        let failure = report.failure.clone().or_else(|| pairing.err());
        match &failure {
            None => sink.line(format!(
                "certified: {} distinct points, all generators vanish, dim Q[x,y]/I = {}",
                report.points,
                report.quotient_dimension
            )),
            Some(f) => {
                sink.line(f.to_string());
                failed.push("spectrum-certification".to_string());
            }
        }
        doc.insert(
            "points".into(),
            json!({
                "modules": rows,
                "quotient_dimension": dimension_json(report.quotient_dimension),
                "certified": failure.is_none(),
                "failure": failure.map(|f| f.to_string()),
            }),
        );
    }

    if everything || args.c2_consequences {
        let gens = c2_relations();
        let gb = buchberger(&gens);
        let mut section = basis_section(sink, "C2 relations:", &gens, &gb);
        let mut members = Vec::new();
        for t in c2_nilpotency_targets() {
            let inside = gb.contains(&t);
            sink.line(format!("  {t} in ideal: {}", if inside { "yes" } else { "no" }));
            if !inside && !failed.iter().any(|f| f == "c2-consequences") {
                failed.push("c2-consequences".into());
            }
            members.push(json!({ "monomial": t.to_string(), "in_ideal": inside }));
        }
        section["nilpotency"] = json!(members);
        doc.insert("c2_consequences".into(), section);
    }

    sink.document(&Value::Object(doc))?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(failed))
    }
}

fn series_rows(series: &QSeries) -> impl Iterator<Item = (String, String)> + '_ {
    series.terms().map(|(k, c)| (exponent_rat(k).to_string(), c.to_string()))
}

pub fn characters(sink: &Sink, args: &CharactersArgs) -> Outcome {
    let trunc = args.terms.map(q_units).unwrap_or_else(default_truncation);
    let single = args.module.is_some();
    let computed: Vec<(ModuleDescriptor, QSeries)> = match &args.module {
        Some(name) => {
            let d = module_descriptor(name)?;
            let ch = module_character(&d, trunc);
            vec![(d, ch)]
        }
        None => all_module_characters(trunc),
    };

    if args.csv {
        let mut out = String::from(if single { "exponent,coefficient\n" } else { "module,exponent,coefficient\n" });
        for (d, ch) in &computed {
            for (e, c) in series_rows(ch) {
                if single {
                    out.push_str(&format!("{e},{c}\n"));
                } else {
                    out.push_str(&format!("{},{e},{c}\n", d.name));
                }
            }
        }
        sink.raw(out);
        return Ok(());
    }

    for (d, ch) in &computed {
        sink.line(format!("{} (L(0) = {}, J(0) = {}):", d.name, d.top_weight, d.j0));
        sink.line(format!("  {ch}"));
    }
    let modules: Vec<Value> = computed
        .iter()
        .map(|(d, ch)| {
            json!({
                "name": d.name,
                "top_weight": d.top_weight.to_string(),
                "j0": d.j0.to_string(),
                "series": ch.to_json_value(),
            })
        })
        .collect();
    sink.document(&json!({ "truncation_q_units": trunc / q_units(1), "modules": modules }))
}

pub fn modular_check(sink: &Sink, args: &ModularArgs) -> Outcome {
    let z = parse_complex(&args.z)?;
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(CliError::Usage("--tol must be a positive number".into()));
    }
    let report = numeric_modular_check(args.m, z, q_units(args.terms), args.tol)
        .map_err(|e| CliError::from_core_in_check(e, "modular-check"))?;
    sink.line(format!(
        "{} at z = {}{:+}i: max deviation {:.3e}, tail estimate {:.3e}, tolerance {:.1e}: {}",
        report.check,
        z.re,
        z.im,
        report.max_deviation,
        report.tail_estimate,
        report.tol,
        if report.passed { "PASS" } else { "FAIL" }
    ));
    sink.document(&to_json(&report))?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(vec!["modular-check".into()]))
    }
}

pub fn verify(sink: &Sink, args: &VerifyArgs) -> Outcome {
    let only: Vec<&str> = if args.all { Vec::new() } else { args.check.iter().map(String::as_str).collect() };
    let report = run_checks(&only);
    for c in &report.checks {
        sink.line(format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail));
    }
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "id": c.id, "passed": c.passed, "detail": c.detail }))
        .collect();
    sink.document(&json!({ "passed": report.passed(), "checks": checks }))?;
    let failed = report.failed_ids();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(failed.into_iter().map(String::from).collect()))
    }
}

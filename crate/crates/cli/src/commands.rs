use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use heightkit::exact::rational::bits_for;
use heightkit::exact::{factorize, format_rational, parse_polynomial, parse_rational, print_polynomial, ExactRational};
use heightkit::framework::{check_theorems, classify_height, parse_group_file, rho1_exact, rho_inf_exact, HeightedGroup, DEFAULT_ORDER_CAP};
use heightkit::measure::{
    certified_roots, check_irreducible, default_dobrowolski_constant, dobrowolski_lower_bound, is_p_adic_unit,
    is_root_of_unity, largest_nonunit_prime, mahler_measure, weil_height, Irreducibility, RealEnclosure,
};
use heightkit::quad::qf_enumerate_min_height;
use heightkit::search::{parse_pool_file, search_m1_upper, search_minf_upper, BoundReport};
use heightkit::surd::{parse_surd, surd_from_rational, SurdCoset};
use heightkit::Error;
use num_traits::Signed;
use serde_json::{json, Value as Json};

use crate::record::{OutputRecord, Value};
use crate::scan::lehmer_scan;
use crate::{Command, Failure, GlobalArgs};

type Outcome = Result<(), Failure>;

const DEFAULT_TOL: &str = "1e-12";

fn tolerance(global: &GlobalArgs) -> Result<ExactRational, Failure> {
    let text = global.tol.as_deref().unwrap_or(DEFAULT_TOL);
    let tol = parse_rational(text)?;
    if !tol.is_positive() {
        return Err(Error::InvalidArgument(format!("--tol must be positive, got {text}")).into());
    }
    Ok(tol)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn set_enclosure(rec: &mut OutputRecord, enc: &RealEnclosure) {
    rec.value = Value::enclosure(enc);
    rec.diagnostics.precision_bits = Some(enc.precision_bits());
}

fn enclosure_json(enc: &RealEnclosure) -> Json {
    let d = enc.display_digits();
    json!({ "lo": enc.lo_decimal(d), "hi": enc.hi_decimal(d) })
}

fn irreducibility_label(i: &Irreducibility) -> String {
    match i {
        Irreducibility::Irreducible => "irreducible".into(),
        Irreducibility::Reducible { factor } => format!("reducible, factor {}", print_polynomial(factor)),
        Irreducibility::Unknown(why) => format!("unknown ({why})"),
    }
}

pub(crate) fn execute(command: &Command, global: &GlobalArgs, rec: &mut OutputRecord) -> Outcome {
    match command {
        Command::Mahler { poly } => {
            let tol = tolerance(global)?;
            let f = parse_polynomial(poly)?;
            rec.input("poly", print_polynomial(&f)).input("tol", format_rational(&tol));
            let enc = mahler_measure(&f, &tol)?;
            set_enclosure(rec, &enc);
            rec.detail("irreducibility", irreducibility_label(&check_irreducible(&f)));
        }
        Command::Height { poly } => {
            let tol = tolerance(global)?;
            let f = parse_polynomial(poly)?;
            rec.input("poly", print_polynomial(&f)).input("tol", format_rational(&tol));
            let enc = weil_height(&f, &tol)?;
            set_enclosure(rec, &enc);
            rec.detail("degree", f.degree());
            rec.detail("irreducibility", irreducibility_label(&check_irreducible(&f)));
        }
        Command::Roots { poly } => {
            let tol = tolerance(global)?;
            let f = parse_polynomial(poly)?;
            rec.input("poly", print_polynomial(&f)).input("tol", format_rational(&tol));
            let boxes = certified_roots(&f, &tol)?;
            let digits = RealEnclosure::new(tol.clone(), tol.clone(), bits_for(&tol)).display_digits();
            let list: Vec<Json> = boxes
                .iter()
                .map(|b| {
                    json!({
                        "re": heightkit::measure::real::decimal(&b.center_re, digits, false),
                        "im": heightkit::measure::real::decimal(&b.center_im, digits, false),
                        "radius": heightkit::measure::real::decimal(&b.radius, digits, true),
                        "outside_unit_circle": b.strictly_outside_unit_circle(),
                    })
                })
                .collect();
            rec.value = Value::exact(boxes.len());
            rec.detail("roots", list);
        }
        Command::Cyclo { poly } => {
            let f = parse_polynomial(poly)?;
            rec.input("poly", print_polynomial(&f));
            rec.value = Value::Boolean { value: is_root_of_unity(&f) };
        }
        Command::Padic { poly, prime } => {
            let f = parse_polynomial(poly)?;
            rec.input("poly", print_polynomial(&f));
            let largest = largest_nonunit_prime(&f)?;
            match prime {
                Some(p) => {
                    rec.input("prime", *p);
                    rec.value = Value::Boolean { value: is_p_adic_unit(&f, *p)? };
                }
                None => {
                    let mut primes: Vec<u64> = factorize(&f.leading().abs())?.primes().collect();
                    primes.extend(factorize(&f.constant().abs())?.primes());
                    primes.sort_unstable();
                    primes.dedup();
                    rec.detail("nonunit_primes", primes.iter().map(|p| p.to_string()).collect::<Vec<_>>());
                    rec.value = match largest {
                        Some(p) => Value::exact(p),
                        None => Value::exact("none"),
                    };
                }
            }
        }
        Command::Dobrowolski { degree, constant } => {
            let tol = tolerance(global)?;
            let c = match constant {
                Some(text) => parse_rational(text)?,
                None => default_dobrowolski_constant(),
            };
            rec.input("degree", *degree).input("constant", format_rational(&c)).input("tol", format_rational(&tol));
            let enc = dobrowolski_lower_bound(*degree, &c, &tol)?;
            set_enclosure(rec, &enc);
        }
        Command::Surd { rational, root } => {
            let x = parse_rational(rational)?;
            rec.input("rational", format_rational(&x)).input("root", *root);
            let s = surd_from_rational(&x, *root)?;
            surd_record(rec, &s);
        }
        Command::SurdOp { expr } => {
            let s = parse_surd(expr)?;
            rec.input("expr", expr.as_str());
            surd_record(rec, &s);
            rec.detail("canonical", s.to_string());
        }
        Command::FieldMin { disc, bound } => {
            let tol = tolerance(global)?;
            rec.input("disc", *disc).input("bound", *bound).input("tol", format_rational(&tol));
            let (x, h) = qf_enumerate_min_height(*disc, *bound, &tol)?;
            set_enclosure(rec, &h);
            rec.witness = Some(vec![x.to_string()]);
            rec.detail("minimal_polynomial", print_polynomial(&x.minimal_polynomial()?));
        }
        Command::MinfSearch { pool } | Command::M1Search { pool } => {
            let text = read(pool)?;
            let parsed = parse_pool_file(&text, global.max_length)?;
            // an explicit --tol beats the file's tol
            let tol = match (&global.tol, &parsed.tol) {
                (None, Some(t)) => t.clone(),
                _ => tolerance(global)?,
            };
            rec.input("pool", pool.display().to_string())
                .input("target", parsed.target.to_string())
                .input("pool_size", parsed.pool.len())
                .input("max_length", parsed.pool.max_length)
                .input("tol", format_rational(&tol));
            let report = if matches!(command, Command::MinfSearch { .. }) {
                search_minf_upper(&parsed.target, &parsed.pool, &tol)?
            } else {
                search_m1_upper(&parsed.target, &parsed.pool, &tol)?
            };
            report_record(rec, &report);
        }
        Command::Framework { group } => {
            let text = read(group)?;
            let g = parse_group_file(&text, DEFAULT_ORDER_CAP)?;
            rec.input("group", group.display().to_string())
                .input("cyclic", g.group().orders().iter().map(|n| n.to_string()).collect::<Vec<_>>());
            framework_record(rec, &g)?;
        }
        Command::LehmerScan { degree, coef_bound, epsilon } => {
            let tol = tolerance(global)?;
            let eps = parse_rational(epsilon)?;
            rec.input("degree", *degree)
                .input("coef_bound", *coef_bound)
                .input("epsilon", format_rational(&eps))
                .input("tol", format_rational(&tol));
            let result = lehmer_scan(*degree, *coef_bound, &eps, &tol)?;
            rec.detail("scanned", result.scanned.to_string())
                .detail("distinct_up_to_symmetry", result.distinct.to_string())
                .detail("cyclotomic_or_torsion", result.torsion.to_string())
                .detail("not_squarefree", result.not_squarefree.to_string());
            match result.best {
                Some((f, enc)) => {
                    set_enclosure(rec, &enc);
                    rec.witness = Some(vec![print_polynomial(&f)]);
                }
                None => return Err(Error::EmptySearch.into()),
            }
        }
    }
    Ok(())
}

fn surd_record(rec: &mut OutputRecord, s: &SurdCoset) {
    let h = s.weil_height();
    rec.exact = true;
    rec.value = Value::exact(s.m_infinity());
    rec.detail("coset", s.to_string())
        .detail("m_infinity", s.m_infinity().to_string())
        .detail("weil_height", h.value().to_string())
        .detail("weil_height_decimal", enclosure_json(&h.float_view))
        .detail("degree", s.degree().to_string())
        .detail("measure", s.h_to_the_d().value().to_string());
}

fn report_record(rec: &mut OutputRecord, report: &BoundReport) {
    set_enclosure(rec, &report.upper);
    rec.witness = Some(report.witness.iter().map(|w| w.to_string()).collect());
    rec.detail("mode", report.mode.to_string())
        .detail("upper_exact", report.upper_exact.to_string())
        .detail("lower", format_rational(&report.lower))
        .detail("pinned", report.pinned)
        .detail("explored", report.explored.to_string());
}

fn table(g: &HeightedGroup) -> BTreeMap<String, String> {
    g.group().elements().map(|e| (g.group().label(e), format_rational(g.at(e)))).collect()
}

fn framework_record(rec: &mut OutputRecord, g: &HeightedGroup) -> Outcome {
    let rho1 = rho1_exact(g);
    let rho_inf = rho_inf_exact(g);
    let report = check_theorems(g, None);
    rec.exact = true;
    rec.value = Value::Boolean { value: report.all_passed() };
    let checks: serde_json::Map<String, Json> =
        report.checks.iter().map(|c| (c.name.clone(), Json::Bool(c.passed))).collect();
    rec.detail("class", classify_height(g).to_string())
        .detail("rho", json!(table(g)))
        .detail("rho1", json!(table(&rho1)))
        .detail("rho_inf", json!(table(&rho_inf)))
        .detail("checks", Json::Object(checks));
    if !report.all_passed() {
        return Err(Failure::Invariant(format!("failed checks: {}", report.failures().join("; "))));
    }
    Ok(())
}

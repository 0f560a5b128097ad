//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Runs without the libtest harness so the report stays readable.

#[path = "../../core/tests/support/groups.rs"]
mod groups;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use heightkit::exact::rational::{integer, pow10_neg, rational};
use heightkit::exact::{factorize_rational, parse_polynomial, parse_rational, IntPolynomial};
use heightkit::framework::check_theorems;
use heightkit::measure::{
    check_irreducible, cyclotomic_polynomial, dobrowolski_lower_bound, is_p_adic_unit, is_root_of_unity, largest_nonunit_prime,
    mahler_measure, Irreducibility, RealEnclosure,
};
use heightkit::quad::{parse_quad, qf_minimal_polynomial};
use heightkit::search::{enumerate_factorizations, hinf_root_split, parse_pool_file, search_minf_upper, PoolElement};
use heightkit::surd::{surd_from_rational, SurdCoset};
use heightkit_cli::{run, OutputRecord, Value};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LEHMER: &str = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed <= Duration::from_secs(limit_secs), || {
        format!("took {:.1} s, limit {limit_secs} s", elapsed.as_secs_f64())
    })
}

fn golden_pool_text() -> String {
    let path = format!("{}/../../data/golden_pool.toml", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("golden pool file")
}

fn cli_json(args: &[&str]) -> Result<OutputRecord, String> {
    let argv: Vec<&str> = std::iter::once("heightkit").chain(args.iter().copied()).chain(["--json"]).collect();
    let out = run(&argv);
    if out.code != 0 {
        return Err(format!("{args:?} exited {}: {}", out.code, out.stderr.trim()));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn lehmer_measure() -> Outcome {
    let start = Instant::now();
    let tol = pow10_neg(8);
    let f = parse_polynomial(LEHMER).map_err(|e| e.to_string())?;
    let enc = mahler_measure(&f, &tol).map_err(|e| e.to_string())?;
    let record = cli_json(&["mahler", LEHMER, "--tol", "1e-8"])?;
    let elapsed = start.elapsed();
    ensure(enc.width() <= tol, || format!("width {} exceeds 1e-8", enc.width()))?;
    let (lo, hi) = (rational(117, 100), rational(118, 100));
    ensure(enc.lies_within(&lo, &hi), || format!("{enc} not inside [1.17, 1.18]"))?;
    let Value::Enclosure { lo: text_lo, hi: text_hi, .. } = &record.value else {
        return Err(format!("cli value {:?}", record.value));
    };
    let printed = RealEnclosure::new(parse_rational(text_lo).unwrap(), parse_rational(text_hi).unwrap(), 64);
    ensure(printed.lies_within(&lo, &hi) && printed.overlaps(&enc), || format!("cli printed [{text_lo}, {text_hi}]"))?;
    within(elapsed, 5)?;
    Ok(format!("[{text_lo}, {text_hi}] in {:.2} s", elapsed.as_secs_f64()))
}

fn golden_example() -> Outcome {
    let start = Instant::now();
    let gamma = parse_quad("1+√5", None).map_err(|e| e.to_string())?;
    let minpoly = qf_minimal_polynomial(&gamma).map_err(|e| e.to_string())?;
    ensure(minpoly == parse_polynomial("x^2-2x-4").unwrap(), || format!("minimal polynomial {minpoly:?}"))?;
    let padic = cli_json(&["padic", "x^2-2x-4"])?;
    ensure(padic.details["nonunit_primes"] == serde_json::json!(["2"]), || {
        format!("non-unit primes {}", padic.details["nonunit_primes"])
    })?;
    for p in [2u64, 3, 5, 7, 11] {
        let unit = is_p_adic_unit(&minpoly, p).map_err(|e| e.to_string())?;
        ensure(unit == (p != 2), || format!("unit status at {p} is {unit}"))?;
    }
    let parsed = parse_pool_file(&golden_pool_text(), None).map_err(|e| e.to_string())?;
    let tol = parsed.tol.clone().unwrap_or_else(|| pow10_neg(12));
    let report = search_minf_upper(&parsed.target, &parsed.pool, &tol).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.lower == integer(2), || format!("lower bound {}", report.lower))?;
    ensure(report.upper_exact.as_rational() == Some(&integer(2)), || format!("upper {}", report.upper_exact))?;
    let mut witness: Vec<String> = report.witness.iter().map(|w| w.to_string()).collect();
    witness.sort();
    let mut expected = vec!["2".to_string(), "(1+√5)/2".to_string()];
    expected.sort();
    ensure(witness == expected, || format!("witness {witness:?}"))?;
    ensure(report.pinned, || "not pinned".into())?;
    within(elapsed, 30)?;
    Ok(format!("M∞(1+√5) = 2 with witness {witness:?} in {:.2} s", elapsed.as_secs_f64()))
}

/// `x` as `|s_p|` copies of `p^{±1/t_p}` for each `r_p = s_p/t_p`; every
/// factor has measure `p`.
fn prime_power_witness(x: &SurdCoset) -> Vec<PoolElement> {
    let mut out = Vec::new();
    for (p, e) in x.iter() {
        let copies: usize = e.numer().abs().try_into().expect("small exponent");
        let unit = BigRational::new(e.numer().signum(), e.denom().clone());
        let factor = SurdCoset::from_exponents([(p, unit)]).expect("prime");
        out.extend(std::iter::repeat_n(PoolElement::Surd(factor), copies));
    }
    out
}

fn surd_largest_prime() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1_000_003);
    for _ in 0..500 {
        let a: i64 = rng.gen_range(1..=1_000_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let b: i64 = rng.gen_range(1..=1_000_000);
        let d: u64 = rng.gen_range(1..=12);
        let x = rational(a, b);
        let s = surd_from_rational(&x, d).map_err(|e| e.to_string())?;
        let m = s.m_infinity();
        let oracle = factorize_rational(&x.abs()).map_err(|e| e.to_string())?.largest_prime().unwrap_or(1);
        ensure(m == oracle, || format!("{a}/{b}^(1/{d}): M∞ {m}, largest prime {oracle}"))?;
        // lower: largest prime where den·X^N - num is not a unit
        let radicand = s.radicand();
        let n: usize = s.degree().try_into().unwrap();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -radicand.numer().clone();
        coeffs[n] = radicand.denom().clone();
        let binomial = IntPolynomial::new(coeffs).map_err(|e| e.to_string())?;
        let lower = largest_nonunit_prime(&binomial).map_err(|e| e.to_string())?.unwrap_or(1);
        // upper: an explicit factorization into prime surds
        let witness = prime_power_witness(&s);
        let product = witness.iter().fold(SurdCoset::identity(), |acc, w| match w {
            PoolElement::Surd(f) => acc.mul(f),
            _ => unreachable!(),
        });
        ensure(product == s, || format!("witness of {s} multiplies to {product}"))?;
        let upper = witness
            .iter()
            .map(|w| w.measure().unwrap().as_rational().cloned().expect("integer measure"))
            .max()
            .unwrap_or_else(BigRational::one);
        let mb = integer(m as i64);
        ensure(integer(lower as i64) <= mb && mb <= upper && integer(lower as i64) == upper, || {
            format!("{s}: lower {lower}, M∞ {m}, upper {upper}")
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 10)?;
    Ok(format!("500 surds, lower = M∞ = upper, {:.2} s", elapsed.as_secs_f64()))
}

fn random_coset(rng: &mut ChaCha8Rng) -> SurdCoset {
    const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let k = rng.gen_range(0..=5);
    let pairs: Vec<(u64, BigRational)> = (0..k)
        .map(|_| {
            let p = PRIMES[rng.gen_range(0..PRIMES.len())];
            (p, rational(rng.gen_range(-12..=12), rng.gen_range(1..=12)))
        })
        .collect();
    SurdCoset::from_exponents(pairs).expect("primes")
}

fn power_invariance() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10_000 {
        let x = random_coset(&mut rng);
        let mut num = 0;
        while num == 0 {
            num = rng.gen_range(-30..=30);
        }
        let r = rational(num, rng.gen_range(1..=30));
        let y = x.pow(&r).map_err(|e| e.to_string())?;
        ensure(y.m_infinity() == x.m_infinity(), || format!("M∞({x}^{r}) = {} vs {}", y.m_infinity(), x.m_infinity()))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 5)?;
    Ok(format!("10000 cases, {:.2} s", elapsed.as_secs_f64()))
}

fn theorem_suite() -> Outcome {
    let start = Instant::now();
    let fixtures = groups::fixture_groups();
    ensure(fixtures.len() >= 20, || format!("only {} fixtures", fixtures.len()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checks = 0;
    let mut oracle_runs = 0;
    for (name, g) in &fixtures {
        ensure(g.group().order() <= 512, || format!("{name} too large"))?;
        let lower = groups::random_lower(g, &mut rng);
        let report = check_theorems(g, Some(&lower));
        ensure(report.all_passed(), || format!("{name}: {:?}", report.failures()))?;
        checks += report.checks.len();
        oracle_runs += usize::from(report.checks.iter().any(|c| c.name.contains("exhaustive")));
    }
    for (i, (rho, lower)) in groups::random_tables(200, 2024).iter().enumerate() {
        let report = check_theorems(rho, Some(lower));
        ensure(report.all_passed(), || format!("random table {i}: {:?}", report.failures()))?;
        checks += report.checks.len();
        let has_oracle = report.checks.iter().any(|c| c.name.contains("exhaustive"));
        ensure(has_oracle == (rho.group().order() <= 24), || format!("random table {i}: oracle coverage"))?;
        oracle_runs += usize::from(has_oracle);
    }
    let elapsed = start.elapsed();
    within(elapsed, 120)?;
    Ok(format!(
        "{} fixtures + 200 random tables, {checks} checks, {oracle_runs} oracle comparisons, {:.1} s",
        fixtures.len(),
        elapsed.as_secs_f64()
    ))
}

fn measure_sandwich() -> Outcome {
    let parsed = parse_pool_file(&golden_pool_text(), None).map_err(|e| e.to_string())?;
    let tol = parsed.tol.clone().unwrap_or_else(|| pow10_neg(12));
    let slack = &tol * integer(2);
    let bits = heightkit::exact::rational::bits_for(&tol) + 8;
    let h_target = parsed.target.weil_height(bits).map_err(|e| e.to_string())?;
    let all = enumerate_factorizations(&parsed.target, &parsed.pool).map_err(|e| e.to_string())?;
    for w in &all {
        let mut prod_m = RealEnclosure::exact(BigRational::one());
        let mut prod_h = RealEnclosure::exact(BigRational::one());
        for x in w {
            prod_m = prod_m.mul(&x.measure().map_err(|e| e.to_string())?.enclose(bits));
            prod_h = prod_h.mul(&x.weil_height(bits).map_err(|e| e.to_string())?);
        }
        ensure(prod_m.hi() >= &(prod_h.lo() - &slack), || format!("∏M < ∏H for {w:?}"))?;
        ensure(prod_h.hi() >= &(h_target.lo() - &slack), || format!("∏H < H(target) for {w:?}"))?;
    }
    Ok(format!("{} factorizations", all.len()))
}

fn root_split_decreases() -> Outcome {
    let two = surd_from_rational(&integer(2), 1).map_err(|e| e.to_string())?;
    let tol = pow10_neg(12);
    let mut previous: Option<heightkit::surd::SurdHeightValue> = None;
    let mut last = None;
    for k in 0..=10u32 {
        let split = hinf_root_split(&two, 1 << k, &tol).map_err(|e| e.to_string())?;
        if let Some(p) = &previous {
            ensure(split.factor_height.value() < p.value(), || format!("not decreasing at 2^{k}"))?;
        }
        previous = Some(split.factor_height.clone());
        last = Some(split.enclosure);
    }
    let last = last.expect("eleven splits");
    ensure(last.hi() < &rational(1001, 1000), || format!("final height {last}"))?;
    Ok(format!("H(2^(1/1024)) in {last}"))
}

/// Every polynomial of degree 1..=6 with coefficients in {-1, 0, 1},
/// leading coefficient 1 and nonzero constant term that passes the
/// irreducibility screen.
fn kronecker_corpus() -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    for degree in 1..=6usize {
        let total = 3usize.pow(degree as u32);
        for code in 0..total {
            let mut c = Vec::with_capacity(degree + 1);
            let mut rest = code;
            for _ in 0..degree {
                c.push((rest % 3) as i64 - 1);
                rest /= 3;
            }
            if c[0] == 0 {
                continue;
            }
            c.push(1);
            let f = IntPolynomial::from_i64(&c).expect("nonzero");
            if check_irreducible(&f) == Irreducibility::Irreducible {
                out.push(f);
            }
        }
    }
    out
}

fn kronecker_agreement(corpus: &[(IntPolynomial, RealEnclosure)], elapsed: Duration) -> Outcome {
    let one = BigRational::one();
    let mut torsion = 0;
    for (f, m) in corpus {
        let cyclo = is_root_of_unity(f);
        torsion += usize::from(cyclo);
        ensure(cyclo == m.contains(&one), || format!("{f:?}: root of unity {cyclo}, measure {m}"))?;
    }
    // Φ_n of degree <= 6 with every coefficient in {-1, 0, 1}
    let expected = (1..=60u64)
        .map(cyclotomic_polynomial)
        .filter(|phi| phi.degree() <= 6 && phi.coeffs().iter().all(|c| c.abs() <= BigInt::one()))
        .count();
    ensure(torsion == expected, || format!("corpus holds {torsion} cyclotomic polynomials, expected {expected}"))?;
    within(elapsed, 120)?;
    Ok(format!("{} irreducibles, {torsion} cyclotomic, {:.1} s", corpus.len(), elapsed.as_secs_f64()))
}

fn dobrowolski_consistency(corpus: &[(IntPolynomial, RealEnclosure)]) -> Outcome {
    let c = rational(1, 4);
    let tol = pow10_neg(12);
    let mut checked = 0;
    for (f, m) in corpus.iter().filter(|(f, _)| !is_root_of_unity(f)) {
        let bound = dobrowolski_lower_bound(f.degree() as u64, &c, &tol).map_err(|e| e.to_string())?;
        ensure(bound.hi() <= m.lo(), || format!("{f:?}: bound {bound} above measure {m}"))?;
        checked += 1;
    }
    Ok(format!("{checked} non-cyclotomic polynomials"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus_start = Instant::now();
    let corpus: Result<Vec<(IntPolynomial, RealEnclosure)>, String> = kronecker_corpus()
        .into_iter()
        .map(|f| mahler_measure(&f, &pow10_neg(12)).map(|m| (f, m)).map_err(|e| e.to_string()))
        .collect();
    let corpus_time = corpus_start.elapsed();

    let mut criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("Lehmer polynomial measure enclosure", Box::new(lehmer_measure)),
        ("golden ratio worked example pinned at 2", Box::new(golden_example)),
        ("surd M∞ equals the largest prime", Box::new(surd_largest_prime)),
        ("M∞ invariant under rational powers", Box::new(power_invariance)),
        ("heighted group theorem suite", Box::new(theorem_suite)),
        ("measure sandwich on every enumerated factorization", Box::new(measure_sandwich)),
        ("root splitting drives the height of 2 toward 1", Box::new(root_split_decreases)),
    ];
    let kronecker_corpus = corpus.clone();
    criteria.push((
        "Kronecker test agrees with measure one",
        Box::new(move || kronecker_agreement(&kronecker_corpus?, corpus_time)),
    ));
    criteria.push(("Dobrowolski bound below every measure", Box::new(move || dobrowolski_consistency(&corpus?))));

    let mut failed = 0;
    for (name, check) in criteria {
        let begun = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = begun.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {name} ({secs:.2} s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2} s): {why}");
            }
        }
    }
    println!("{failed} failed, total {:.1} s", start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

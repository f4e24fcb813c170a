//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trigcert::certfile::CertFile;
use trigcert_core::minimize::{min_alpha_form, parametric_numerator};
use trigcert_core::ratpoly::{discriminant_param, int, rat, rational_to_f64, squarefree_decompose, ParamPoly};
use trigcert_core::reduce::{weierstrass, AngleSpec, TInterval};
use trigcert_core::sturm::{count_roots, isolate_roots};
use trigcert_core::trigexpr::{coefficient_mass, normalize, parse, MixedForm};
use trigcert_core::verify::{check_certificate, verify_form, verify_form_with, verify_t_interval, Outcome, Pipeline};
use trigcert_core::{Poly, Rational};

const EXAMPLE1: &str = "3/5 + sin(x) + cos(x) + sin(2*x)/2 + cos(2*x)/2";
const EXAMPLE2: &str = "alpha + sin(x) + cos(x) + sin(2*x)/2 + cos(2*x)/2";
const EXAMPLE3: &str = "alpha + sin(x) + cos(x) + sin(2*x) + cos(2*x)";
const EXAMPLE4A: &str = "sin(x)/3 + sin(2*x)/2 + sin(3*x) + (23/125)*4";
const EXAMPLE4B: &str = "sin(x)/4 + sin(2*x)/3 + sin(3*x)/2 + sin(4*x) + (23/125)*5";
const SEED: u64 = 0x7419_c3a1;
const CASES: usize = 200;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn form(text: &str) -> MixedForm {
    normalize(&parse(text).unwrap()).unwrap()
}

fn zero_pi() -> (AngleSpec, AngleSpec) {
    (AngleSpec::new(int(0)), AngleSpec::new(int(1)))
}

fn ints(cs: &[i64]) -> Poly {
    Poly::from_ints(cs)
}

fn cli(args: &[&str]) -> (Option<i32>, String, Duration) {
    let start = Instant::now();
    let o = Command::new(env!("CARGO_BIN_EXE_trigcert"))
        .args(args)
        .env_remove("TRIGCERT_MAX_DEGREE")
        .output()
        .expect("binary runs");
    (o.status.code(), String::from_utf8(o.stdout).unwrap(), start.elapsed())
}

/// Independent numeric minimum of `f` on `[a, b]`: dense sampling followed
/// by golden-section refinement around the best sample.
fn numeric_min(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for i in 0..=n {
        let v = f(a + h * i as f64);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let x0 = a + h * best_i as f64;
    let (mut lo, mut hi) = ((x0 - h).max(a), (x0 + h).min(b));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = hi - g * (hi - lo);
        let d = lo + g * (hi - lo);
        if f(c) < f(d) {
            hi = d;
        } else {
            lo = c;
        }
    }
    best.min(f((lo + hi) / 2.0))
}

fn c1_example1_reduction() -> Check {
    let start = Instant::now();
    let rf = weierstrass(&form(EXAMPLE1)).map_err(|e| e.to_string())?;
    let lib_time = start.elapsed();
    ensure(rf.numerator == ints(&[21, 40, -18, 0, 1]), format!("numerator {}", rf.numerator))?;
    ensure(rf.denom_scalar == 10.into() && rf.denom_power == 2, "d, m")?;
    let (code, out, cli_time) = cli(&["reduce", EXAMPLE1]);
    ensure(code == Some(0), "reduce exit code")?;
    ensure(out.contains("N(T) = T^4 - 18*T^2 + 40*T + 21\nd = 10\nm = 2\n"), format!("output {out:?}"))?;
    ensure(lib_time < Duration::from_millis(100), format!("library took {lib_time:?}"))?;
    ensure(cli_time < Duration::from_millis(100), format!("CLI took {cli_time:?}"))?;
    Ok(format!("N = T^4 - 18*T^2 + 40*T + 21, d = 10, m = 2 (library {lib_time:?}, CLI {cli_time:?})"))
}

fn c2_example1_sturm() -> Check {
    let n = ints(&[21, 40, -18, 0, 1]);
    let iv = TInterval::new(Some(int(0)), None, true, false).unwrap();
    let count = count_roots(&n, &iv).map_err(|e| e.to_string())?;
    ensure(count == 0, format!("count {count}"))?;
    let (code, out, _) = cli(&["sturm", "T^4 - 18*T^2 + 40*T + 21", "T=0,T=inf"]);
    ensure(code == Some(0) && out.trim() == "0", format!("sturm CLI printed {out:?}"))?;
    let (a, b) = zero_pi();
    let v = verify_form(&form(EXAMPLE1), &a, &b).map_err(|e| e.to_string())?;
    ensure(v.outcome == Outcome::Nonnegative, format!("{:?}", v.outcome))?;
    ensure(check_certificate(&v.certificate).is_ok(), "certificate")?;
    let (code, _, _) = cli(&["verify", EXAMPLE1, "0,pi"]);
    ensure(code == Some(0), "verify exit code")?;
    Ok("0 roots on [0, inf); verify: nonnegative, exit 0".into())
}

fn c3_example2_numerator() -> Check {
    let n = parametric_numerator(&form(EXAMPLE2)).map_err(|e| e.to_string())?;
    // (2a - 1) T^4 + (4a - 6) T^2 + 8 T + (2a + 3), coefficients as polynomials in a
    let want = ParamPoly::from_coeffs(vec![ints(&[3, 2]), ints(&[8]), ints(&[-6, 4]), Poly::zero(), ints(&[-1, 2])]);
    ensure(n.poly == want, "numerator differs")?;
    let (_, out, _) = cli(&["reduce", EXAMPLE2]);
    ensure(
        out.contains("(2*alpha - 1)*T^4 + (4*alpha - 6)*T^2 + (8)*T + (2*alpha + 3)"),
        format!("CLI printed {out:?}"),
    )?;
    Ok("(2a-1)T^4 + (4a-6)T^2 + 8T + (2a+3)".into())
}

/// Sign of `x - 3(sqrt 3 - 1)/4`, computed exactly: `x >= r` iff `4x/3 + 1 >= sqrt 3`.
fn cmp_example2_root(x: &Rational) -> std::cmp::Ordering {
    let y = x * rat(4, 3) + int(1);
    if y < int(0) {
        return std::cmp::Ordering::Less;
    }
    (&y * &y).cmp(&int(3))
}

fn c4_example2_minimum() -> Check {
    let start = Instant::now();
    let (a, b) = zero_pi();
    let tol = rat(1, 1_000_000_000);
    let enc = min_alpha_form(&form(EXAMPLE2), &a, &b, &tol).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(&enc.hi - &enc.lo <= tol, "width")?;
    ensure(cmp_example2_root(&enc.lo).is_le() && cmp_example2_root(&enc.hi).is_ge(), "enclosure misses 3(sqrt3-1)/4")?;
    ensure(enc.lo_verdict.outcome == Outcome::Violated, "lo verdict")?;
    ensure(enc.hi_verdict.outcome == Outcome::Nonnegative, "hi verdict")?;
    ensure(check_certificate(&enc.lo_verdict.certificate).is_ok(), "lo certificate")?;
    ensure(check_certificate(&enc.hi_verdict.certificate).is_ok(), "hi certificate")?;
    let f = form(EXAMPLE2).base();
    let numeric = numeric_min(|x| f.eval_f64(x, 0.0), 0.0, std::f64::consts::PI, 100_000);
    let mid = rational_to_f64(&((&enc.lo + &enc.hi) / int(2)));
    ensure((numeric + mid).abs() < 1e-6, format!("numeric min f {numeric} vs -{mid}"))?;
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!(
        "alpha in [{:.12}, {:.12}] contains 0.549038105677, numeric min f = {numeric:.8} ({elapsed:?})",
        rational_to_f64(&enc.lo),
        rational_to_f64(&enc.hi)
    ))
}

fn c5_example3() -> Check {
    let start = Instant::now();
    let n = parametric_numerator(&form(EXAMPLE3)).map_err(|e| e.to_string())?;
    let disc = discriminant_param(&n.poly).map_err(|e| e.to_string())?;
    let printed = ints(&[27648, 165888, -211968, -8192, 32768]);
    ensure(disc.is_positive_multiple_of(&printed), format!("discriminant {disc}"))?;
    let (a, b) = zero_pi();
    let enc = min_alpha_form(&form(EXAMPLE3), &a, &b, &rat(1, 1_000_000)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let (lo, hi) = (rational_to_f64(&enc.lo), rational_to_f64(&enc.hi));
    ensure(lo - 1e-6 <= 1.040168473 && 1.040168473 <= hi + 1e-6, format!("[{lo}, {hi}]"))?;
    ensure(elapsed < Duration::from_secs(5), format!("took {elapsed:?}"))?;
    Ok(format!("discriminant matches up to a positive scalar; alpha in [{lo:.9}, {hi:.9}] ({elapsed:?})"))
}

fn c6_example4() -> Check {
    let want_a = ints(&[276, 3250, 828, -7000, 828, 1750, 276]);
    let want_b = ints(&[138, 1925, 552, -9025, 828, 7375, 552, -875, 138]);
    let (a, b) = zero_pi();
    let half_line = TInterval::new(Some(int(0)), None, true, false).unwrap();
    for (text, want) in [(EXAMPLE4A, &want_a), (EXAMPLE4B, &want_b)] {
        let m = form(text);
        let rf = weierstrass(&m).map_err(|e| e.to_string())?;
        ensure(rf.numerator == *want, format!("numerator {}", rf.numerator))?;
        let v = verify_form(&m, &a, &b).map_err(|e| e.to_string())?;
        ensure(v.outcome == Outcome::Nonnegative, format!("{text} on [0, pi]: {:?}", v.outcome))?;
        let v = verify_t_interval(&m, &half_line).map_err(|e| e.to_string())?;
        ensure(v.outcome == Outcome::Nonnegative, format!("{text} on T >= 0: {:?}", v.outcome))?;
        ensure(check_certificate(&v.certificate).is_ok(), "certificate")?;
    }
    Ok("degree-6 and degree-8 numerators match; both nonnegative on [0, pi] and T in [0, inf)".into())
}

fn c7_discriminant_discrepancy() -> Check {
    let n = parametric_numerator(&form(EXAMPLE2)).map_err(|e| e.to_string())?;
    let disc = discriminant_param(&n.poly).map_err(|e| e.to_string())?;
    let roots = isolate_roots(&disc, &TInterval::whole_line(), &rat(1, 1 << 24)).map_err(|e| e.to_string())?;
    let target = 3.0 * (3f64.sqrt() - 1.0) / 4.0;
    let iv = roots
        .iter()
        .find(|r| rational_to_f64(&r.lo) <= target && target <= rational_to_f64(&r.hi))
        .ok_or("no discriminant root near 0.5490381")?;
    let closed = iv.as_interval();
    let printed = ints(&[-8, 12, 8]);
    let corrected = ints(&[-9, 12, 8]);
    ensure(count_roots(&printed, &closed).unwrap() == 0, "printed factor has the root")?;
    ensure(count_roots(&corrected, &closed).unwrap() == 1, "8a^2+12a-9 misses the root")?;
    ensure(cmp_example2_root(&iv.lo).is_le() && cmp_example2_root(&iv.hi).is_ge(), "interval misses 3(sqrt3-1)/4")?;
    Ok(format!(
        "root in [{:.9}, {:.9}]; 8a^2+12a-8 has no root there, 8a^2+12a-9 does",
        rational_to_f64(&iv.lo),
        rational_to_f64(&iv.hi)
    ))
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=4))
}

/// Text of a random trigonometric polynomial of frequency at most `max_k`.
fn random_sum(rng: &mut ChaCha8Rng, max_k: usize, cosine_only: bool) -> String {
    let mut s = format!("({})", small_rational(rng));
    for k in 1..=rng.gen_range(1..=max_k) {
        if rng.gen_bool(0.75) {
            s += &format!(" + ({})*cos({k}*x)", small_rational(rng));
        }
        if !cosine_only && rng.gen_bool(0.6) {
            s += &format!(" + ({})*sin({k}*x)", small_rational(rng));
        }
    }
    match rng.gen_range(0..6) {
        0 => s += " + cos(x)^2",
        1 if !cosine_only => s += " - sin(x)*cos(2*x)/3",
        2 => s += " + (1 - cos(x))^2*(2 + cos(3*x))",
        _ => {}
    }
    s
}

fn random_angles(rng: &mut ChaCha8Rng, den: i64) -> (AngleSpec, AngleSpec) {
    let a = rng.gen_range(-3 * den..=3 * den);
    let w = rng.gen_range(1..=3 * den);
    (AngleSpec::new(rat(a, den)), AngleSpec::new(rat(a + w, den)))
}

fn suite_reduction(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..CASES {
        let text = random_sum(rng, 5, false);
        let e = parse(&text).unwrap();
        let m = normalize(&e).unwrap();
        let rf = weierstrass(&m).unwrap();
        let scale = 1.0 + rational_to_f64(&coefficient_mass(&m));
        for _ in 0..5 {
            let x: f64 = rng.gen_range(-3.0..3.0);
            let direct = e.eval_f64(x, 0.0);
            ensure((m.eval_f64(x, 0.0) - direct).abs() <= 1e-9 * scale, format!("mixed form of {text} at {x}"))?;
            ensure((rf.eval_f64((x / 2.0).tan()) - direct).abs() <= 1e-9 * scale, format!("N/D of {text} at {x}"))?;
        }
    }
    Ok(())
}

fn suite_sturm(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..CASES {
        let mut roots: Vec<Rational> = Vec::new();
        let mut p = Poly::constant(small_rational(rng) + rat(1, 7));
        for _ in 0..rng.gen_range(1..=6) {
            let r = rat(rng.gen_range(-30..=30), rng.gen_range(1..=3));
            if roots.contains(&r) {
                continue;
            }
            let k = rng.gen_range(1..=3);
            p = &p * &Poly::from_coeffs(vec![-r.clone(), int(1)]).pow(k);
            roots.push(r);
        }
        // an irreducible quadratic factor adds no real roots
        if rng.gen_bool(0.5) {
            p = &p * &ints(&[rng.gen_range(1..=5), rng.gen_range(-1..=1), 1]);
        }
        let lo = rat(rng.gen_range(-36..=30), 3);
        let hi = &lo + rat(rng.gen_range(1..=40), 3);
        let (lc, hc) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let iv = TInterval::new(Some(lo), Some(hi), lc, hc).unwrap();
        let expect = roots.iter().filter(|r| iv.contains(r)).count();
        let got = count_roots(&p, &iv).map_err(|e| e.to_string())?;
        ensure(got == expect, format!("{p} on {iv}: {got} != {expect}"))?;
        let all = count_roots(&p, &TInterval::whole_line()).unwrap();
        ensure(all == roots.len(), format!("{p} on R"))?;
    }
    Ok(())
}

fn suite_verify_oracle(rng: &mut ChaCha8Rng, certs: &mut usize) -> Result<(), String> {
    for i in 0..CASES {
        let text = random_sum(rng, 4, false);
        let m = form(&text);
        let den = if i % 3 == 0 { 6 } else { 2 };
        let (a, b) = random_angles(rng, den);
        let v = verify_form(&m, &a, &b).map_err(|e| e.to_string())?;
        check_roundtrip(&v.certificate)?;
        *certs += 1;
        let scale = 1.0 + rational_to_f64(&coefficient_mass(&m));
        let (af, bf) = (a.to_f64(), b.to_f64());
        let min = (0..=10_000)
            .map(|j| m.eval_f64(af + (bf - af) * j as f64 / 10_000.0, 0.0))
            .fold(f64::INFINITY, f64::min);
        let ctx = format!("{text} on [{a}, {b}]");
        match v.outcome {
            Outcome::Nonnegative => ensure(min >= -1e-6 * scale, format!("false nonnegative: {ctx}, sampled {min}"))?,
            Outcome::Violated => {
                let w = v.witness.as_ref().ok_or("no witness")?;
                let x: f64 = w.x_approx.parse().unwrap();
                ensure(x >= af - 1e-9 && x <= bf + 1e-9, format!("witness {x} outside {ctx}"))?;
                ensure(m.eval_f64(x, 0.0) < 0.0, format!("witness {x} not negative: {ctx}"))?;
            }
            Outcome::InconclusiveBoundary => ensure(den != 2, format!("inconclusive on exact {ctx}"))?,
        }
        if den == 2 && min < -1e-6 * scale {
            ensure(v.outcome == Outcome::Violated, format!("missed violation: {ctx}"))?;
        }
    }
    Ok(())
}

/// Re-checks a certificate in memory and after a JSON round trip.
fn check_roundtrip(c: &trigcert_core::verify::Certificate) -> Result<(), String> {
    check_certificate(c).map_err(|e| e.join("; "))?;
    let json = serde_json::to_string(&CertFile::from_certificate(c)).map_err(|e| e.to_string())?;
    let back: CertFile = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let back = back.to_certificate().map_err(|e| e.to_string())?;
    ensure(back == *c, "JSON round trip changed the certificate")?;
    check_certificate(&back).map_err(|e| e.join("; "))
}

fn suite_squarefree(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..CASES {
        let mut p = Poly::constant(small_rational(rng) + rat(1, 13));
        for _ in 0..rng.gen_range(1..=4) {
            let f: Vec<i64> = (0..rng.gen_range(2..=4)).map(|_| rng.gen_range(-5..=5)).collect();
            p = &p * &ints(&f).pow(rng.gen_range(1..=4));
        }
        if p.is_zero() {
            continue;
        }
        let dec = squarefree_decompose(&p).map_err(|e| e.to_string())?;
        ensure(dec.reassemble() == p, format!("reassembly of {p}"))?;
    }
    Ok(())
}

fn suite_pipelines_agree(rng: &mut ChaCha8Rng, certs: &mut usize) -> Result<(), String> {
    for _ in 0..CASES {
        let text = random_sum(rng, 4, true);
        let m = form(&text);
        let (a, b) = random_angles(rng, 2);
        let c = verify_form_with(&m, &a, &b, Pipeline::Cosine).map_err(|e| e.to_string())?;
        let h = verify_form_with(&m, &a, &b, Pipeline::HalfAngle).map_err(|e| e.to_string())?;
        ensure(c.outcome == h.outcome, format!("{text} on [{a}, {b}]: {:?} vs {:?}", c.outcome, h.outcome))?;
        check_roundtrip(&c.certificate)?;
        check_roundtrip(&h.certificate)?;
        *certs += 2;
    }
    Ok(())
}

fn c8_property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut certs = 0;
    let mut times = Vec::new();
    let mut time = |name: &str, f: &mut dyn FnMut() -> Result<(), String>| -> Result<(), String> {
        let s = Instant::now();
        f().map_err(|e| format!("{name}: {e}"))?;
        times.push(format!("{name} {:?}", s.elapsed()));
        Ok(())
    };
    time("reduction", &mut || suite_reduction(&mut rng))?;
    let mut rng2 = ChaCha8Rng::seed_from_u64(SEED + 1);
    time("sturm", &mut || suite_sturm(&mut rng2))?;
    let mut rng3 = ChaCha8Rng::seed_from_u64(SEED + 2);
    time("verify-oracle", &mut || suite_verify_oracle(&mut rng3, &mut certs))?;
    let mut rng4 = ChaCha8Rng::seed_from_u64(SEED + 3);
    time("squarefree", &mut || suite_squarefree(&mut rng4))?;
    let mut rng5 = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut agree_certs = 0;
    time("pipelines", &mut || suite_pipelines_agree(&mut rng5, &mut agree_certs))?;
    Ok(format!(
        "{CASES} cases per suite, {} certificates round-tripped; {}",
        certs + agree_certs,
        times.join(", ")
    ))
}

fn c9_degree_doubling() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut checked = 0;
    while checked < 20 {
        let text = random_sum(&mut rng, 6, true);
        let m = form(&text);
        let p = &m.p1;
        if p.degree().unwrap_or(0) == 0 || p.eval(&int(-1)) == int(0) {
            continue;
        }
        let n = weierstrass(&m).map_err(|e| e.to_string())?.numerator;
        ensure(
            n.degree() == Some(2 * p.degree().unwrap()),
            format!("{text}: deg N = {:?}, deg P = {:?}", n.degree(), p.degree()),
        )?;
        checked += 1;
    }
    Ok("20 random cosine polynomials: deg N = 2 deg P".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Example 1 reduction", c1_example1_reduction),
        ("Example 1 Sturm count and verify", c2_example1_sturm),
        ("Example 2 parametric numerator", c3_example2_numerator),
        ("Example 2 minimization", c4_example2_minimum),
        ("Example 3 discriminant and minimization", c5_example3),
        ("Example 4 numerators and verification", c6_example4),
        ("Example 2 discriminant factor regression", c7_discriminant_discrepancy),
        ("property suites", c8_property_suites),
        ("degree doubling", c9_degree_doubling),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} [{ms} ms]: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{ms} ms]: {e}", i + 1);
            }
        }
    }
    let elapsed = total.elapsed();
    println!("acceptance: {} of {} criteria passed in {elapsed:?}", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
